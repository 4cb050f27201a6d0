//! The area-deformed colored Motzkin Hamiltonian.
//!
//! `H` is a sum of rank-one projectors on one or two neighboring sites:
//! boundary penalties `|d^k⟩⟨d^k|` on the first site and `|u^k⟩⟨u^k|` on the
//! last, the bulk moves `Φ^k ∝ |u^k 0⟩ − t|0 u^k⟩`, `Ψ^k ∝ |0 d^k⟩ − t|d^k 0⟩`,
//! `Θ^k ∝ |u^k d^k⟩ − t|00⟩` (each normalized by `1/√(1+t²)`), and the
//! color-mismatch penalties `|u^k d^{k'}⟩⟨u^k d^{k'}|` for `k ≠ k'`.
//!
//! Basis states are indexed with site 1 as the most significant digit.
//! `H` conserves `#u^k − #d^k` for every color, so spectra are computed
//! sector by sector.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{rational_to_f64, Deformation, Semiring};
use crate::error::{Error, Result};
use crate::state::{Amplitude, GroundState};
use crate::walks::{Model, Step};

/// Local states `u¹..u^j, 0, d¹..d^j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalBasis {
    pub colors: u8,
}

impl LocalBasis {
    pub fn new(colors: u8) -> LocalBasis {
        LocalBasis { colors }
    }

    pub fn dim(&self) -> usize {
        2 * usize::from(self.colors) + 1
    }

    pub fn index(&self, step: Step) -> usize {
        let j = usize::from(self.colors);
        match step {
            Step::Up(c) => usize::from(c) - 1,
            Step::Flat => j,
            Step::Down(c) => j + usize::from(c),
        }
    }

    pub fn step(&self, index: usize) -> Step {
        let j = usize::from(self.colors);
        if index < j {
            Step::Up(index as u8 + 1)
        } else if index == j {
            Step::Flat
        } else {
            Step::Down((index - j) as u8)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TermKind {
    Boundary,
    Bulk,
    Cross,
}

/// A projector `|v⟩⟨v|` with `v` supported on `sites` (1-based, adjacent).
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub kind: TermKind,
    pub label: String,
    pub sites: Vec<usize>,
    /// Entries of `v` keyed by local configuration on `sites`.
    pub vector: Vec<(Vec<Step>, BigRational)>,
    /// `⟨v|v⟩`; the projector is `|v⟩⟨v| / norm`.
    pub norm: BigRational,
}

/// Default cap on the Hilbert-space dimension.
pub const DEFAULT_DIM_CAP: usize = 2_000_000;

/// Sectors up to this size are diagonalized densely.
pub const DENSE_SECTOR_LIMIT: usize = 2000;

/// Eigenvalues below this count towards the kernel.
pub const KERNEL_THRESHOLD: f64 = 1e-9;

/// Row-compressed symmetric operator together with its term list.
#[derive(Clone, Debug)]
pub struct SparseHamiltonian {
    pub n: usize,
    pub colors: u8,
    pub t: Deformation,
    dim: usize,
    terms: Vec<Term>,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

/// The coefficient `t` as an exact rational, or its float value converted
/// exactly.
fn exact_t(t: &Deformation) -> Result<BigRational> {
    match t {
        Deformation::Exact(r) => Ok(r.clone()),
        Deformation::Float(f) => BigRational::from_float(*f)
            .ok_or_else(|| Error::InvalidParameter(format!("t = {f} is not finite"))),
    }
}

fn local_terms(n: usize, colors: u8, t: &BigRational) -> Vec<Term> {
    let len = 2 * n;
    let one = BigRational::one();
    let norm = &one + t * t;
    let mut terms = Vec::new();
    let mut push = |kind, label: String, sites: Vec<usize>, vector, norm: &BigRational| {
        terms.push(Term {
            kind,
            label,
            sites,
            vector,
            norm: norm.clone(),
        })
    };
    for k in 1..=colors {
        push(
            TermKind::Boundary,
            format!("d{k}@1"),
            vec![1],
            vec![(vec![Step::Down(k)], one.clone())],
            &one,
        );
        push(
            TermKind::Boundary,
            format!("u{k}@{len}"),
            vec![len],
            vec![(vec![Step::Up(k)], one.clone())],
            &one,
        );
    }
    for s in 1..len {
        let sites = vec![s, s + 1];
        for k in 1..=colors {
            let (u, d, f) = (Step::Up(k), Step::Down(k), Step::Flat);
            let mut pair = |name: &str, a: [Step; 2], b: [Step; 2]| {
                let mut vector = vec![(a.to_vec(), one.clone())];
                if !t.is_zero() {
                    vector.push((b.to_vec(), -t.clone()));
                }
                push(
                    TermKind::Bulk,
                    format!("{name}{k}@{s}"),
                    sites.clone(),
                    vector,
                    &norm,
                );
            };
            pair("phi", [u, f], [f, u]);
            pair("psi", [f, d], [d, f]);
            pair("theta", [u, d], [f, f]);
        }
        for k in 1..=colors {
            for k2 in (1..=colors).filter(|&c| c != k) {
                push(
                    TermKind::Cross,
                    format!("u{k}d{k2}@{s}"),
                    sites.clone(),
                    vec![(vec![Step::Up(k), Step::Down(k2)], one.clone())],
                    &one,
                );
            }
        }
    }
    terms
}

/// Assembles `H` for a chain of `2n` sites with `colors` colors.
pub fn build_hamiltonian(n: usize, colors: u8, t: &Deformation) -> Result<SparseHamiltonian> {
    build_hamiltonian_capped(n, colors, t, DEFAULT_DIM_CAP)
}

pub fn build_hamiltonian_capped(
    n: usize,
    colors: u8,
    t: &Deformation,
    cap: usize,
) -> Result<SparseHamiltonian> {
    if n == 0 || colors == 0 {
        return Err(Error::InvalidParameter("need n >= 1 and colors >= 1".into()));
    }
    t.check_nonnegative()?;
    let basis = LocalBasis::new(colors);
    let dim = (basis.dim() as u128).pow(2 * n as u32);
    if dim > cap as u128 {
        return Err(Error::cap("Hamiltonian dimension", dim, cap));
    }
    let dim = dim as usize;
    let terms = local_terms(n, colors, &exact_t(t)?);
    let ops: Vec<LocalOp> = terms.iter().map(|term| LocalOp::new(term, n, basis)).collect();
    let rows: Vec<Vec<(usize, f64)>> = (0..dim)
        .into_par_iter()
        .map(|r| {
            let mut acc: BTreeMap<usize, f64> = BTreeMap::new();
            for op in &ops {
                op.row(r, &mut acc);
            }
            acc.into_iter().filter(|(_, v)| *v != 0.0).collect()
        })
        .collect();
    let mut row_ptr = Vec::with_capacity(dim + 1);
    let mut cols = Vec::new();
    let mut vals = Vec::new();
    row_ptr.push(0);
    for row in rows {
        for (c, v) in row {
            cols.push(c);
            vals.push(v);
        }
        row_ptr.push(cols.len());
    }
    Ok(SparseHamiltonian {
        n,
        colors,
        t: t.clone(),
        dim,
        terms,
        row_ptr,
        cols,
        vals,
    })
}

/// A term resolved to global digit positions.
struct LocalOp {
    /// Place value of each site the term acts on.
    strides: Vec<usize>,
    local_dim: usize,
    /// `(local digits, coefficient / √norm)`
    entries: Vec<(Vec<usize>, f64)>,
}

impl LocalOp {
    fn new(term: &Term, n: usize, basis: LocalBasis) -> LocalOp {
        let d = basis.dim();
        let scale = rational_to_f64(&term.norm).sqrt();
        LocalOp {
            strides: term
                .sites
                .iter()
                .map(|&s| d.pow((2 * n - s) as u32))
                .collect(),
            local_dim: d,
            entries: term
                .vector
                .iter()
                .map(|(cfg, c)| {
                    (
                        cfg.iter().map(|s| basis.index(*s)).collect(),
                        rational_to_f64(c) / scale,
                    )
                })
                .collect(),
        }
    }

    fn digits(&self, index: usize) -> Vec<usize> {
        self.strides
            .iter()
            .map(|s| (index / s) % self.local_dim)
            .collect()
    }

    fn replace(&self, index: usize, from: &[usize], to: &[usize]) -> usize {
        let mut out = index;
        for ((s, a), b) in self.strides.iter().zip(from).zip(to) {
            out = out - a * s + b * s;
        }
        out
    }

    fn row(&self, r: usize, acc: &mut BTreeMap<usize, f64>) {
        let here = self.digits(r);
        let Some((_, a)) = self.entries.iter().find(|(cfg, _)| *cfg == here) else {
            return;
        };
        for (cfg, b) in &self.entries {
            *acc.entry(self.replace(r, &here, cfg)).or_insert(0.0) += a * b;
        }
    }
}

impl SparseHamiltonian {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn term_counts(&self) -> BTreeMap<TermKind, usize> {
        let mut out = BTreeMap::new();
        for t in &self.terms {
            *out.entry(t.kind).or_insert(0) += 1;
        }
        out
    }

    pub fn basis(&self) -> LocalBasis {
        LocalBasis::new(self.colors)
    }

    /// Matrix entry `H[r][c]`.
    pub fn get(&self, r: usize, c: usize) -> f64 {
        let row = &self.cols[self.row_ptr[r]..self.row_ptr[r + 1]];
        match row.binary_search(&c) {
            Ok(i) => self.vals[self.row_ptr[r] + i],
            Err(_) => 0.0,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|r| {
            (self.row_ptr[r]..self.row_ptr[r + 1]).all(|i| self.get(self.cols[i], r) == self.vals[i])
        })
    }

    /// `H v`.
    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim.to_string(),
                found: v.len().to_string(),
            });
        }
        Ok((0..self.dim)
            .into_par_iter()
            .map(|r| {
                (self.row_ptr[r]..self.row_ptr[r + 1])
                    .map(|i| self.vals[i] * v[self.cols[i]])
                    .sum()
            })
            .collect())
    }

    /// `H v` in exact arithmetic for a sparse vector; needs rational `t`.
    pub fn apply_exact(
        &self,
        v: &BTreeMap<usize, BigRational>,
    ) -> Result<BTreeMap<usize, BigRational>> {
        let basis = self.basis();
        let mut out: BTreeMap<usize, BigRational> = BTreeMap::new();
        for term in &self.terms {
            let op = LocalOp::new(term, self.n, basis);
            let entries: Vec<(Vec<usize>, &BigRational)> = term
                .vector
                .iter()
                .map(|(cfg, c)| (cfg.iter().map(|s| basis.index(*s)).collect(), c))
                .collect();
            for (&r, x) in v {
                if r >= self.dim {
                    return Err(Error::DimensionMismatch {
                        expected: format!("index < {}", self.dim),
                        found: r.to_string(),
                    });
                }
                let here = op.digits(r);
                let Some((_, a)) = entries.iter().find(|(cfg, _)| *cfg == here) else {
                    continue;
                };
                for (cfg, b) in &entries {
                    let c = op.replace(r, &here, cfg);
                    let add = x * *a * *b / &term.norm;
                    let slot = out.entry(c).or_insert_with(BigRational::zero);
                    *slot += add;
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    /// Index of the basis state spelled by `steps`.
    pub fn index_of(&self, steps: &[Step]) -> Result<usize> {
        if steps.len() != 2 * self.n {
            return Err(Error::DimensionMismatch {
                expected: (2 * self.n).to_string(),
                found: steps.len().to_string(),
            });
        }
        let basis = self.basis();
        let mut idx = 0;
        for s in steps {
            if s.color().is_some_and(|c| c > self.colors) {
                return Err(Error::ColorOutOfRange {
                    color: u32::from(s.color().unwrap_or(0)),
                    colors: self.colors,
                });
            }
            idx = idx * basis.dim() + basis.index(*s);
        }
        Ok(idx)
    }

    /// Per-color charges `#u^k − #d^k` of a basis state.
    pub fn charges(&self, index: usize) -> Vec<i32> {
        let basis = self.basis();
        let d = basis.dim();
        let mut q = vec![0i32; usize::from(self.colors)];
        let mut r = index;
        for _ in 0..2 * self.n {
            match basis.step(r % d) {
                Step::Up(c) => q[usize::from(c) - 1] += 1,
                Step::Down(c) => q[usize::from(c) - 1] -= 1,
                Step::Flat => {}
            }
            r /= d;
        }
        q
    }

    /// Basis indices grouped by conserved charges.
    pub fn sectors(&self) -> BTreeMap<Vec<i32>, Vec<usize>> {
        let mut out: BTreeMap<Vec<i32>, Vec<usize>> = BTreeMap::new();
        for i in 0..self.dim {
            out.entry(self.charges(i)).or_default().push(i);
        }
        out
    }

    /// Coordinate-format text: a `dim nnz` header, then `row col value` lines.
    pub fn to_coordinate_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "% n={} colors={} t={}", self.n, self.colors, self.t);
        let _ = writeln!(s, "{} {} {}", self.dim, self.dim, self.nnz());
        for r in 0..self.dim {
            for i in self.row_ptr[r]..self.row_ptr[r + 1] {
                let _ = writeln!(s, "{} {} {:e}", r, self.cols[i], self.vals[i]);
            }
        }
        s
    }

    fn sector_matrix(&self, idx: &[usize]) -> DMatrix<f64> {
        let pos: HashMap<usize, usize> = idx.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let mut m = DMatrix::zeros(idx.len(), idx.len());
        for (i, &r) in idx.iter().enumerate() {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                if let Some(&j) = pos.get(&self.cols[k]) {
                    m[(i, j)] = self.vals[k];
                }
            }
        }
        m
    }

    fn sector_apply(&self, idx: &[usize], pos: &HashMap<usize, usize>, v: &[f64]) -> Vec<f64> {
        idx.par_iter()
            .map(|&r| {
                (self.row_ptr[r]..self.row_ptr[r + 1])
                    .filter_map(|k| pos.get(&self.cols[k]).map(|&j| self.vals[k] * v[j]))
                    .sum()
            })
            .collect()
    }

    /// Lowest eigenvalues of one sector: all of them for small sectors,
    /// otherwise those below the kernel threshold plus the next one.
    fn sector_low_spectrum(&self, idx: &[usize]) -> Result<Vec<f64>> {
        if idx.len() <= DENSE_SECTOR_LIMIT {
            let mut ev: Vec<f64> = SymmetricEigen::new(self.sector_matrix(idx))
                .eigenvalues
                .iter()
                .copied()
                .collect();
            ev.sort_by(f64::total_cmp);
            return Ok(ev);
        }
        let pos: HashMap<usize, usize> = idx.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let op = |v: &[f64]| self.sector_apply(idx, &pos, v);
        let mut found: Vec<Vec<f64>> = Vec::new();
        let mut values = Vec::new();
        loop {
            let (lambda, vec) = lanczos_lowest(&op, idx.len(), &found)?;
            values.push(lambda);
            if lambda >= KERNEL_THRESHOLD || found.len() + 1 >= idx.len() || found.len() >= 16 {
                break;
            }
            found.push(vec);
        }
        Ok(values)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn orthogonalize(v: &mut [f64], against: &[Vec<f64>]) {
    for _ in 0..2 {
        for q in against {
            let c = dot(v, q);
            v.iter_mut().zip(q).for_each(|(x, y)| *x -= c * y);
        }
    }
}

/// Smallest eigenpair of `op` on the complement of `deflate`, by fully
/// reorthogonalized Lanczos with restarts from the current Ritz vector.
fn lanczos_lowest(
    op: &dyn Fn(&[f64]) -> Vec<f64>,
    dim: usize,
    deflate: &[Vec<f64>],
) -> Result<(f64, Vec<f64>)> {
    const MAX_KRYLOV: usize = 200;
    const RESTARTS: usize = 30;
    let mut start: Vec<f64> = (0..dim).map(|i| 1.0 + ((i * 7919) % 101) as f64 / 101.0).collect();
    for _ in 0..RESTARTS {
        orthogonalize(&mut start, deflate);
        let nrm = dot(&start, &start).sqrt();
        start.iter_mut().for_each(|x| *x /= nrm);
        let mut q: Vec<Vec<f64>> = vec![start.clone()];
        let mut alpha = Vec::new();
        let mut beta: Vec<f64> = Vec::new();
        let limit = MAX_KRYLOV.min(dim - deflate.len());
        let mut best: Option<(f64, Vec<f64>, f64)> = None;
        for k in 0..limit {
            let mut w = op(&q[k]);
            alpha.push(dot(&w, &q[k]));
            orthogonalize(&mut w, deflate);
            orthogonalize(&mut w, &q);
            let b = dot(&w, &w).sqrt();
            let m = alpha.len();
            let tri = DMatrix::from_fn(m, m, |i, j| {
                if i == j {
                    alpha[i]
                } else if i + 1 == j {
                    beta[i]
                } else if j + 1 == i {
                    beta[j]
                } else {
                    0.0
                }
            });
            let eig = SymmetricEigen::new(tri);
            let (imin, lambda) = eig
                .eigenvalues
                .iter()
                .copied()
                .enumerate()
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap_or((0, 0.0));
            let y = eig.eigenvectors.column(imin).into_owned();
            let residual = (b * y[m - 1]).abs();
            best = Some((lambda, y.as_slice().to_vec(), residual));
            if residual < 1e-12 || b < 1e-14 || k + 1 == limit {
                break;
            }
            beta.push(b);
            q.push(w.iter().map(|x| x / b).collect());
        }
        let (lambda, y, residual) =
            best.ok_or_else(|| Error::NoConvergence("empty Krylov space".into()))?;
        let mut ritz = vec![0.0; dim];
        for (c, qk) in y.iter().zip(&q) {
            ritz.iter_mut().zip(qk).for_each(|(r, x)| *r += c * x);
        }
        if residual < 1e-11 || q.len() >= dim - deflate.len() {
            return Ok((lambda, ritz));
        }
        start = ritz;
    }
    Err(Error::NoConvergence(format!(
        "Lanczos on a sector of dimension {dim} after {RESTARTS} restarts"
    )))
}

/// Lowest eigenvalue and numerical kernel dimension of `H`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroundReport {
    pub lambda_min: f64,
    pub kernel_dim: usize,
    /// Sector charges holding the lowest eigenvalue.
    pub sector: Vec<i32>,
}

fn low_spectra(h: &SparseHamiltonian) -> Result<Vec<(Vec<i32>, Vec<f64>)>> {
    h.sectors()
        .into_iter()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(q, idx)| Ok((q, h.sector_low_spectrum(&idx)?)))
        .collect()
}

pub fn ground_energy_and_kernel(h: &SparseHamiltonian) -> Result<GroundReport> {
    let spectra = low_spectra(h)?;
    let mut report = GroundReport {
        lambda_min: f64::INFINITY,
        kernel_dim: 0,
        sector: Vec::new(),
    };
    for (q, ev) in spectra {
        report.kernel_dim += ev.iter().filter(|&&e| e < KERNEL_THRESHOLD).count();
        if ev[0] < report.lambda_min {
            report.lambda_min = ev[0];
            report.sector = q;
        }
    }
    Ok(report)
}

/// Second-smallest eigenvalue of `H` (counting multiplicity).
pub fn spectral_gap(h: &SparseHamiltonian) -> Result<f64> {
    let mut all: Vec<f64> = low_spectra(h)?
        .into_iter()
        .flat_map(|(_, ev)| ev.into_iter().take(2))
        .collect();
    all.sort_by(f64::total_cmp);
    all.get(1)
        .copied()
        .ok_or_else(|| Error::InvalidParameter("spectrum has a single eigenvalue".into()))
}

/// Dense, normalized vector of a Motzkin state in the Hamiltonian basis.
pub fn state_vector(h: &SparseHamiltonian, state: &GroundState) -> Result<Vec<f64>> {
    check_state(h, state)?;
    let mut v = vec![0.0; h.dim];
    for w in state.walks() {
        v[h.index_of(w.steps())?] = state.value(w);
    }
    let nrm = dot(&v, &v).sqrt();
    if nrm > 0.0 {
        v.iter_mut().for_each(|x| *x /= nrm);
    }
    Ok(v)
}

/// Exact sparse vector of an exact-mode state (unnormalized).
pub fn state_vector_exact(
    h: &SparseHamiltonian,
    state: &GroundState,
) -> Result<BTreeMap<usize, BigRational>> {
    check_state(h, state)?;
    let Deformation::Exact(t) = &state.params().t else {
        return Err(Error::Unsupported("exact vector needs a rational t".into()));
    };
    let mut out = BTreeMap::new();
    for (w, a) in state.iter() {
        let Amplitude::Exact(m) = a else {
            return Err(Error::Unsupported("exact vector needs an exact-mode state".into()));
        };
        if m.power % 2 != 0 {
            return Err(Error::Unsupported(format!("{w} has an irrational amplitude")));
        }
        out.insert(h.index_of(w.steps())?, &m.coeff * Semiring::pow(t, m.power / 2));
    }
    Ok(out)
}

fn check_state(h: &SparseHamiltonian, state: &GroundState) -> Result<()> {
    let p = state.params();
    if p.model != Model::Motzkin {
        return Err(Error::Unsupported(
            "the Hamiltonian is defined for the Motzkin chain only".into(),
        ));
    }
    if p.n != h.n || p.colors != h.colors {
        return Err(Error::DimensionMismatch {
            expected: format!("n={} colors={}", h.n, h.colors),
            found: format!("n={} colors={}", p.n, p.colors),
        });
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct TermResidual {
    pub kind: TermKind,
    pub label: String,
    pub value: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FrustrationReport {
    pub terms: Vec<TermResidual>,
    pub max_residual: f64,
    /// `‖H v‖`.
    pub residual_norm: f64,
}

impl FrustrationReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_residual <= tol && self.residual_norm <= tol
    }
}

/// `⟨v|P|v⟩` for every projector `P` of `H`, for a normalized dense `v`.
pub fn verify_frustration_free(h: &SparseHamiltonian, v: &[f64]) -> Result<FrustrationReport> {
    let hv = h.apply(v)?;
    let basis = h.basis();
    let terms: Vec<TermResidual> = h
        .terms
        .par_iter()
        .map(|term| {
            let op = LocalOp::new(term, h.n, basis);
            let mut overlaps: HashMap<usize, f64> = HashMap::new();
            for (r, x) in v.iter().enumerate() {
                if *x == 0.0 {
                    continue;
                }
                let here = op.digits(r);
                if let Some((cfg, a)) = op.entries.iter().find(|(cfg, _)| *cfg == here) {
                    let rest = op.replace(r, cfg, &vec![0; cfg.len()]);
                    *overlaps.entry(rest).or_insert(0.0) += a * x;
                }
            }
            TermResidual {
                kind: term.kind,
                label: term.label.clone(),
                value: overlaps.values().map(|o| o * o).sum(),
            }
        })
        .collect();
    Ok(FrustrationReport {
        max_residual: terms.iter().map(|t| t.value).fold(0.0, f64::max),
        residual_norm: dot(&hv, &hv).sqrt(),
        terms,
    })
}

/// Dense eigenvalues of the whole matrix, ascending. Small chains only.
pub fn dense_spectrum(h: &SparseHamiltonian) -> Result<Vec<f64>> {
    if h.dim > DENSE_SECTOR_LIMIT {
        return Err(Error::cap("dense spectrum", h.dim, DENSE_SECTOR_LIMIT));
    }
    let all: Vec<usize> = (0..h.dim).collect();
    let mut ev: Vec<f64> = SymmetricEigen::new(h.sector_matrix(&all))
        .eigenvalues
        .iter()
        .copied()
        .collect();
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

/// Lowest eigenvector of the whole matrix by dense diagonalization.
pub fn dense_ground_vector(h: &SparseHamiltonian) -> Result<Vec<f64>> {
    if h.dim > DENSE_SECTOR_LIMIT {
        return Err(Error::cap("dense spectrum", h.dim, DENSE_SECTOR_LIMIT));
    }
    let all: Vec<usize> = (0..h.dim).collect();
    let eig = SymmetricEigen::new(h.sector_matrix(&all));
    let (i, _) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .ok_or_else(|| Error::InvalidParameter("empty matrix".into()))?;
    let v: DVector<f64> = eig.eigenvectors.column(i).into_owned();
    Ok(v.as_slice().to_vec())
}
