//! Deformed ground states `Σ_w t^{A(w)} |w⟩`, their normalization, and the
//! entanglement across a cut.
//!
//! Two routes are provided for the entanglement spectrum. The dense route
//! builds the amplitude matrix across the cut and diagonalizes it. The stack
//! route uses the fact that, across cut `z`, the state decomposes into
//! orthogonal blocks labelled by the stack of open colors, and that all
//! `j^h` stacks of height `h` carry the same Schmidt weight
//! `L_h(z) R_h(z) / N²`. The second route is polynomial in `n`.

use std::fmt;
use std::collections::{BTreeMap, BTreeSet};

use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::{Deformation, LogFloat, Mode, Monomial, Scalar, Semiring};
use crate::error::{Error, Result};
use crate::transfer::{self, dispatch};
use crate::walks::{enumerate_walks, Model, Walk, DEFAULT_WALK_CAP};

/// Model parameters shared by every state of a given chain.
#[derive(Clone, Debug, PartialEq)]
pub struct StateParams {
    pub n: usize,
    pub colors: u8,
    pub model: Model,
    pub t: Deformation,
}

impl StateParams {
    pub fn new(n: usize, colors: u8, model: Model, t: Deformation) -> Result<Self> {
        if n == 0 || colors == 0 {
            return Err(Error::InvalidParameter("need n >= 1 and colors >= 1".into()));
        }
        t.check_nonnegative()?;
        Ok(StateParams {
            n,
            colors,
            model,
            t,
        })
    }

    /// Chain length `2n`.
    pub fn chain_len(&self) -> usize {
        2 * self.n
    }

    pub fn mode(&self) -> Mode {
        self.t.mode()
    }

    fn same_chain(&self, other: &StateParams) -> bool {
        self.n == other.n && self.colors == other.colors && self.model == other.model
    }
}

/// An amplitude in the state's arithmetic mode.
#[derive(Clone, Debug, PartialEq)]
pub enum Amplitude {
    Exact(Monomial),
    Float(LogFloat),
}

impl fmt::Display for Amplitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Amplitude::Exact(m) => write!(f, "{m}"),
            Amplitude::Float(v) => write!(f, "{}", v.to_f64()),
        }
    }
}

impl Amplitude {
    pub fn is_zero(&self) -> bool {
        match self {
            Amplitude::Exact(m) => m.coeff.is_zero(),
            Amplitude::Float(l) => l.is_nil(),
        }
    }

    pub fn to_log(&self, t: &Deformation) -> LogFloat {
        match self {
            Amplitude::Exact(m) => m.to_log(t),
            Amplitude::Float(l) => *l,
        }
    }

    fn square(&self, t: &Deformation) -> Scalar {
        match (self, t) {
            (Amplitude::Exact(m), Deformation::Exact(r)) => Scalar::Exact(m.sq_at(r)),
            _ => {
                let l = self.to_log(t);
                Scalar::Float(l.mul(&l))
            }
        }
    }
}

fn scalar_add(a: &Scalar, b: &Scalar) -> Scalar {
    match (a, b) {
        (Scalar::Exact(x), Scalar::Exact(y)) => Scalar::Exact(x + y),
        _ => Scalar::Float(LogFloat::from_ln(a.ln()).add(&LogFloat::from_ln(b.ln()))),
    }
}

/// A sparse state over walks.
///
/// Exact-mode states keep their unnormalized monomials and record the exact
/// squared norm; every numeric view divides by it when the state is flagged
/// normalized. Float-mode normalization rescales the stored amplitudes.
#[derive(Clone, Debug)]
pub struct GroundState {
    params: StateParams,
    amplitudes: BTreeMap<Walk, Amplitude>,
    norm_sq: Scalar,
    normalized: bool,
}

impl GroundState {
    /// Assembles a state from amplitudes. Zero amplitudes are dropped; every
    /// key must be a valid walk of the chain.
    pub fn from_amplitudes(
        params: StateParams,
        amplitudes: impl IntoIterator<Item = (Walk, Amplitude)>,
        normalize: bool,
    ) -> Result<GroundState> {
        let mut map = BTreeMap::new();
        let zero = match params.mode() {
            Mode::Exact => Scalar::Exact(BigRational::zero()),
            Mode::Float => Scalar::Float(LogFloat::ZERO),
        };
        let mut norm_sq = zero;
        for (walk, amp) in amplitudes {
            if walk.len() != params.chain_len()
                || walk.colors() != params.colors
                || walk.model() != params.model
                || !walk.is_valid()
            {
                return Err(Error::InvalidWalk(format!("{walk} does not belong to this chain")));
            }
            if matches!(
                (&amp, params.mode()),
                (Amplitude::Exact(_), Mode::Float) | (Amplitude::Float(_), Mode::Exact)
            ) {
                return Err(Error::InvalidParameter("amplitude mode differs from t".into()));
            }
            if amp.is_zero() {
                continue;
            }
            norm_sq = scalar_add(&norm_sq, &amp.square(&params.t));
            map.insert(walk, amp);
        }
        let mut state = GroundState {
            params,
            amplitudes: map,
            norm_sq,
            normalized: false,
        };
        if normalize {
            state = state.normalized();
        }
        Ok(state)
    }

    pub fn normalized(mut self) -> GroundState {
        if self.normalized {
            return self;
        }
        if let Scalar::Float(n2) = self.norm_sq {
            if !n2.is_nil() {
                let n = n2.sqrt();
                for a in self.amplitudes.values_mut() {
                    if let Amplitude::Float(l) = a {
                        *l = l.div(&n);
                    }
                }
                self.norm_sq = Scalar::Float(LogFloat::unit());
            }
        }
        self.normalized = true;
        self
    }

    pub fn params(&self) -> &StateParams {
        &self.params
    }

    pub fn mode(&self) -> Mode {
        self.params.mode()
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Σ |stored amplitude|².
    pub fn norm_sq(&self) -> &Scalar {
        &self.norm_sq
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Walk, &Amplitude)> {
        self.amplitudes.iter()
    }

    pub fn walks(&self) -> impl Iterator<Item = &Walk> {
        self.amplitudes.keys()
    }

    pub fn contains(&self, walk: &Walk) -> bool {
        self.amplitudes.contains_key(walk)
    }

    /// Stored amplitude, or an exact zero for walks outside the support.
    pub fn amplitude(&self, walk: &Walk) -> Amplitude {
        match self.amplitudes.get(walk) {
            Some(a) => a.clone(),
            None => match self.mode() {
                Mode::Exact => Amplitude::Exact(Monomial {
                    coeff: BigRational::zero(),
                    power: 0,
                }),
                Mode::Float => Amplitude::Float(LogFloat::ZERO),
            },
        }
    }

    /// Numeric amplitude, divided by the norm when the state is normalized.
    pub fn value(&self, walk: &Walk) -> f64 {
        let Some(a) = self.amplitudes.get(walk) else {
            return 0.0;
        };
        let l = a.to_log(&self.params.t);
        if self.normalized {
            LogFloat {
                sign: l.sign,
                ln_abs: l.ln_abs - 0.5 * self.norm_sq.ln(),
            }
            .to_f64()
        } else {
            l.to_f64()
        }
    }

    /// Born probability `|a_w|² / Σ|a|²`, independent of the normalized flag.
    pub fn probability(&self, walk: &Walk) -> f64 {
        match self.amplitudes.get(walk) {
            None => 0.0,
            Some(a) => (a.square(&self.params.t).ln() - self.norm_sq.ln()).exp(),
        }
    }

    /// Exact Born probability, available in exact mode.
    pub fn probability_exact(&self, walk: &Walk) -> Option<BigRational> {
        let Scalar::Exact(n2) = &self.norm_sq else {
            return None;
        };
        if n2.is_zero() {
            return None;
        }
        match self.amplitudes.get(walk) {
            None => Some(BigRational::zero()),
            Some(a) => match a.square(&self.params.t) {
                Scalar::Exact(sq) => Some(sq / n2),
                Scalar::Float(_) => None,
            },
        }
    }

    /// Keeps the walks accepted by `keep`, at their original weights.
    pub fn restrict(&self, keep: impl Fn(&Walk) -> bool, normalize: bool) -> Result<GroundState> {
        GroundState::from_amplitudes(
            self.params.clone(),
            self.amplitudes
                .iter()
                .filter(|(w, _)| keep(w))
                .map(|(w, a)| (w.clone(), a.clone())),
            normalize,
        )
    }
}

/// Ground state of the deformed chain: amplitude `t^{A(w)} = x^{2A(w)}` for
/// every valid walk.
pub fn build_ground_state(
    n: usize,
    colors: u8,
    model: Model,
    t: Deformation,
    normalize: bool,
) -> Result<GroundState> {
    build_ground_state_capped(n, colors, model, t, normalize, DEFAULT_WALK_CAP)
}

pub fn build_ground_state_capped(
    n: usize,
    colors: u8,
    model: Model,
    t: Deformation,
    normalize: bool,
    cap: u64,
) -> Result<GroundState> {
    let params = StateParams::new(n, colors, model, t)?;
    let t_zero = params.t.is_zero();
    if t_zero && model == Model::Fredkin {
        return Err(Error::InvalidParameter(
            "t = 0 is degenerate for the Fredkin chain".into(),
        ));
    }
    let ln_t = params.t.ln();
    let mode = params.mode();
    let mut amps = Vec::new();
    for walk in enumerate_walks(n, colors, model, cap)? {
        let area = walk.area()?;
        if t_zero && area > 0 {
            continue;
        }
        let power = u32::try_from(2 * area)
            .map_err(|_| Error::InvalidParameter("area too large".into()))?;
        let amp = match mode {
            Mode::Exact => Amplitude::Exact(Monomial::unit(power)),
            Mode::Float if area == 0 => Amplitude::Float(LogFloat::unit()),
            Mode::Float => Amplitude::Float(LogFloat::from_ln(area as f64 * ln_t)),
        };
        amps.push((walk, amp));
    }
    GroundState::from_amplitudes(params, amps, normalize)
}

/// `N² = Σ_w t^{2A(w)}` by the height recursion. Exact for rational `t`,
/// log-domain otherwise, so it never overflows.
pub fn norm_sq(n: usize, colors: u8, model: Model, t: &Deformation) -> Result<Scalar> {
    StateParams::new(n, colors, model, t.clone())?;
    Ok(transfer::total(n, colors, model, t))
}

/// Distribution of the stack height across one cut.
#[derive(Clone, Debug, PartialEq)]
pub struct CutSpectrum {
    pub z: usize,
    pub colors: u8,
    /// `P_h` for `h = 0..=min(z, 2n - z)`.
    pub probabilities: Vec<f64>,
    pub exact: Option<Vec<BigRational>>,
}

impl CutSpectrum {
    /// Schmidt weight of each individual stack of height `h`.
    pub fn per_stack(&self, h: usize) -> f64 {
        self.probabilities[h] / f64::from(self.colors).powi(h as i32)
    }

    pub fn mean_height(&self) -> f64 {
        self.probabilities
            .iter()
            .enumerate()
            .map(|(h, p)| h as f64 * p)
            .sum()
    }

    /// Von Neumann entropy in nats: `H(P) + ⟨h⟩ ln j`.
    pub fn entropy(&self) -> f64 {
        let shannon: f64 = self
            .probabilities
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| -p * p.ln())
            .sum();
        shannon + self.mean_height() * f64::from(self.colors).ln()
    }

    /// The full Schmidt spectrum (each height repeated `j^h` times), descending.
    pub fn schmidt_values(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for h in 0..self.probabilities.len() {
            if self.probabilities[h] > 0.0 {
                let mult = usize::from(self.colors).pow(h as u32);
                out.extend(std::iter::repeat_n(self.per_stack(h), mult));
            }
        }
        out.sort_by(|a, b| b.total_cmp(a));
        out
    }
}

fn check_cut(n: usize, z: usize) -> Result<()> {
    if z == 0 || z >= 2 * n {
        return Err(Error::CutOutOfRange { z, max: 2 * n - 1 });
    }
    Ok(())
}

pub fn cut_distribution(
    n: usize,
    colors: u8,
    model: Model,
    t: &Deformation,
    z: usize,
) -> Result<CutSpectrum> {
    StateParams::new(n, colors, model, t.clone())?;
    check_cut(n, z)?;
    let hmax = z.min(2 * n - z);
    let spectrum = dispatch(
        n,
        colors,
        model,
        t,
        |tr| {
            let l = tr.left(z);
            let r = tr.right(z);
            let joint: Vec<BigRational> = (0..=hmax).map(|h| &l[h] * &r[h]).collect();
            let total: BigRational = joint.iter().sum();
            let exact: Vec<BigRational> = joint.into_iter().map(|x| x / &total).collect();
            CutSpectrum {
                z,
                colors,
                probabilities: exact.iter().map(crate::arith::rational_to_f64).collect(),
                exact: Some(exact),
            }
        },
        |tr| {
            let l = tr.left(z);
            let r = tr.right(z);
            let joint: Vec<LogFloat> = (0..=hmax).map(|h| l[h].mul(&r[h])).collect();
            let total = joint.iter().fold(LogFloat::ZERO, |a, b| a.add(b));
            CutSpectrum {
                z,
                colors,
                probabilities: joint.iter().map(|x| x.div(&total).to_f64()).collect(),
                exact: None,
            }
        },
    );
    Ok(spectrum)
}

pub fn entanglement_entropy(
    n: usize,
    colors: u8,
    model: Model,
    t: &Deformation,
    z: usize,
) -> Result<f64> {
    Ok(cut_distribution(n, colors, model, t, z)?.entropy())
}

/// Default cap on `(local dim)^{2n}` for dense oracles.
pub const DEFAULT_DENSE_CAP: f64 = 5.0e7;

/// Eigenvalues of the reduced density matrix of sites `1..=z`, descending,
/// from the dense amplitude matrix restricted to its nonzero rows and columns.
pub fn schmidt_spectrum_dense(state: &GroundState, z: usize, cap: f64) -> Result<Vec<f64>> {
    let p = state.params();
    check_cut(p.n, z)?;
    let dim = (p.model.local_dim(p.colors) as f64).powi(p.chain_len() as i32);
    if dim > cap {
        return Err(Error::cap("dense Schmidt spectrum", dim, cap));
    }
    if state.is_empty() {
        return Err(Error::InvalidParameter("empty state".into()));
    }
    let lefts: BTreeSet<_> = state.walks().map(|w| &w.steps()[..z]).collect();
    let rights: BTreeSet<_> = state.walks().map(|w| &w.steps()[z..]).collect();
    let li: BTreeMap<_, _> = lefts.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let ri: BTreeMap<_, _> = rights.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let mut m = DMatrix::<f64>::zeros(li.len(), ri.len());
    let norm = 0.5 * state.norm_sq().ln();
    for (w, a) in state.iter() {
        let l = a.to_log(&p.t);
        let v = LogFloat {
            sign: l.sign,
            ln_abs: l.ln_abs - norm,
        };
        m[(li[&w.steps()[..z]], ri[&w.steps()[z..]])] = v.to_f64();
    }
    let gram = if m.nrows() <= m.ncols() {
        &m * m.transpose()
    } else {
        m.transpose() * &m
    };
    let mut eig: Vec<f64> = gram
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .map(|&e| e.max(0.0))
        .collect();
    eig.sort_by(|a, b| b.total_cmp(a));
    Ok(eig)
}

/// Von Neumann entropy (nats) of a probability spectrum.
pub fn spectrum_entropy(eigenvalues: &[f64]) -> f64 {
    eigenvalues
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.ln())
        .sum()
}

/// `|⟨a|b⟩|²` after normalizing both states.
pub fn fidelity(a: &GroundState, b: &GroundState) -> Result<f64> {
    if !a.params().same_chain(b.params()) {
        return Err(Error::DimensionMismatch {
            expected: format!(
                "n={} j={} {}",
                a.params().n,
                a.params().colors,
                a.params().model
            ),
            found: format!(
                "n={} j={} {}",
                b.params().n,
                b.params().colors,
                b.params().model
            ),
        });
    }
    if a.is_empty() || b.is_empty() {
        return Ok(0.0);
    }
    let na = 0.5 * a.norm_sq().ln();
    let nb = 0.5 * b.norm_sq().ln();
    let mut overlap = 0.0;
    for (w, amp) in a.iter() {
        if let Some(bmp) = b.amplitudes.get(w) {
            let la = amp.to_log(&a.params().t);
            let lb = bmp.to_log(&b.params().t);
            let s = f64::from(la.sign * lb.sign);
            overlap += s * (la.ln_abs - na + lb.ln_abs - nb).exp();
        }
    }
    Ok((overlap * overlap).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walks::Walk;

    fn exact(p: i64, q: i64) -> Deformation {
        Deformation::exact(p, q)
    }

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn small_state_by_hand() {
        let s = build_ground_state(1, 2, Model::Motzkin, exact(3, 1), false).unwrap();
        let w = |t| Walk::parse(t, Model::Motzkin, 2).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.amplitude(&w("F F")), Amplitude::Exact(Monomial::unit(0)));
        assert_eq!(s.amplitude(&w("U1 D1")), Amplitude::Exact(Monomial::unit(2)));
        assert_eq!(s.amplitude(&w("U2 D2")), Amplitude::Exact(Monomial::unit(2)));
        assert!((s.value(&w("U2 D2")) - 3.0).abs() < 1e-14);
        assert_eq!(s.norm_sq(), &Scalar::Exact(rat(19, 1)));
    }

    #[test]
    fn t_zero() {
        let s = build_ground_state(1, 1, Model::Motzkin, exact(0, 1), true).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s.contains(&Walk::parse("F F", Model::Motzkin, 1).unwrap()));
        assert!(build_ground_state(1, 1, Model::Fredkin, exact(0, 1), false).is_err());
        assert!(build_ground_state(1, 1, Model::Motzkin, Deformation::Float(-1.0), false).is_err());
    }

    #[test]
    fn t_one_is_uniform() {
        let s = build_ground_state(2, 1, Model::Motzkin, exact(1, 1), true).unwrap();
        assert_eq!(s.len(), 9);
        for w in s.walks() {
            assert_eq!(s.probability_exact(w).unwrap(), rat(1, 9));
        }
    }

    #[test]
    fn amplitude_lookup() {
        let s = build_ground_state(2, 1, Model::Motzkin, exact(2, 1), false).unwrap();
        let w = |t| Walk::parse(t, Model::Motzkin, 1).unwrap();
        assert_eq!(s.amplitude(&w("U1 U1 D1 D1")), Amplitude::Exact(Monomial::unit(8)));
        assert!(s.amplitude(&w("D1 U1 F F")).is_zero());
        assert_eq!(s.amplitude(&w("F F F F")), Amplitude::Exact(Monomial::unit(0)));
    }

    #[test]
    fn norms_by_hand() {
        let t = exact(3, 2);
        let t2 = rat(9, 4);
        assert_eq!(
            norm_sq(1, 2, Model::Motzkin, &t).unwrap(),
            Scalar::Exact(rat(1, 1) + rat(2, 1) * &t2)
        );
        assert_eq!(norm_sq(1, 1, Model::Fredkin, &t).unwrap(), Scalar::Exact(t2));
        assert_eq!(
            norm_sq(2, 1, Model::Motzkin, &exact(1, 1)).unwrap(),
            Scalar::Exact(rat(9, 1))
        );
    }

    #[test]
    fn cut_spectra_by_hand() {
        let t = exact(2, 1);
        let c = cut_distribution(1, 2, Model::Motzkin, &t, 1).unwrap();
        // 1/(1+2t²), 2t²/(1+2t²) at t = 2
        assert_eq!(c.exact.as_ref().unwrap(), &vec![rat(1, 9), rat(8, 9)]);
        let c = cut_distribution(1, 1, Model::Fredkin, &Deformation::Float(0.7), 1).unwrap();
        assert!((c.probabilities[1] - 1.0).abs() < 1e-15);
        assert_eq!(c.entropy(), 0.0);
        let c = cut_distribution(4, 2, Model::Motzkin, &exact(1, 1000), 4).unwrap();
        assert!(c.probabilities[0] > 0.9999);
        assert!(cut_distribution(2, 1, Model::Motzkin, &t, 4).is_err());
    }

    #[test]
    fn entropy_three_walks() {
        let s = entanglement_entropy(1, 2, Model::Motzkin, &exact(1, 1), 1).unwrap();
        assert!((s - 3f64.ln()).abs() < 1e-14);
        let st = build_ground_state(1, 2, Model::Motzkin, exact(1, 1), true).unwrap();
        let eig = schmidt_spectrum_dense(&st, 1, DEFAULT_DENSE_CAP).unwrap();
        for e in &eig {
            assert!((e - 1.0 / 3.0).abs() < 1e-14);
        }
    }

    #[test]
    fn product_state_spectrum() {
        let st = build_ground_state(2, 2, Model::Motzkin, exact(0, 1), true).unwrap();
        let eig = schmidt_spectrum_dense(&st, 2, DEFAULT_DENSE_CAP).unwrap();
        assert_eq!(eig, vec![1.0]);
    }

    #[test]
    fn dense_cap() {
        let st = build_ground_state(2, 2, Model::Motzkin, exact(1, 1), true).unwrap();
        assert!(matches!(
            schmidt_spectrum_dense(&st, 2, 10.0),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn fidelities() {
        let a = build_ground_state(2, 2, Model::Motzkin, Deformation::Float(0.1), true).unwrap();
        assert!((fidelity(&a, &a).unwrap() - 1.0).abs() < 1e-14);
        let flat = a
            .restrict(|w| w.steps().iter().all(|s| *s == crate::walks::Step::Flat), true)
            .unwrap();
        let f = fidelity(&a, &flat).unwrap();
        assert!(f < 1.0 && f > 0.9);
        let peaks = a.restrict(|w| w.max_height() > 0, true).unwrap();
        assert_eq!(fidelity(&flat, &peaks).unwrap(), 0.0);
        let other = build_ground_state(1, 2, Model::Motzkin, Deformation::Float(0.1), true).unwrap();
        assert!(matches!(fidelity(&a, &other), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn float_normalization() {
        let s = build_ground_state(3, 2, Model::Motzkin, Deformation::Float(1.7), true).unwrap();
        let total: f64 = s.walks().map(|w| s.value(w).powi(2)).sum();
        assert!((total - 1.0).abs() < 1e-12);
        let e = build_ground_state(3, 2, Model::Motzkin, exact(17, 10), true).unwrap();
        let total: f64 = e.walks().map(|w| e.value(w).powi(2)).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }
}
