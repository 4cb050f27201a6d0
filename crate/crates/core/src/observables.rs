//! Color correlations, area deficits, truncated approximants and entropy
//! sweeps.

use std::collections::BTreeMap;
use std::io::Write;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{Deformation, LogFloat, Mode, Scalar};
use crate::error::{Error, Result};
use crate::state::{build_ground_state, entanglement_entropy, fidelity, GroundState, StateParams};
use crate::transfer::dispatch;
use crate::walks::{enumerate_walks, Model, Step, DEFAULT_WALK_CAP};

/// Eigenvalue of the single-site color operator: color 1 (red) is `−1`,
/// color 2 (blue) is `+1`, flat is `0`. Defined for two colors only.
pub fn color_value(step: Step) -> i32 {
    match step.color() {
        None => 0,
        Some(1) => -1,
        Some(_) => 1,
    }
}

fn check_color_operator(p: &StateParams) -> Result<()> {
    if p.colors != 2 {
        return Err(Error::Unsupported(format!(
            "the color operator is defined for two colors, not {}",
            p.colors
        )));
    }
    Ok(())
}

fn check_site(p: &StateParams, x: usize) -> Result<()> {
    if x == 0 || x > p.chain_len() {
        return Err(Error::InvalidParameter(format!(
            "site {x} outside 1..={}",
            p.chain_len()
        )));
    }
    Ok(())
}

/// `Σ_w |a_w|² f(w)` over the state, exact when the state is exact.
fn expectation(state: &GroundState, f: impl Fn(&[Step]) -> i32) -> Result<Scalar> {
    if let Some(first) = state.walks().next() {
        if state.probability_exact(first).is_some() {
            let mut acc = BigRational::zero();
            for w in state.walks() {
                let v = f(w.steps());
                if v != 0 {
                    let p = state.probability_exact(w).unwrap_or_default();
                    acc += p * BigRational::from_integer(v.into());
                }
            }
            return Ok(Scalar::Exact(acc));
        }
    }
    let sum: f64 = state
        .walks()
        .map(|w| f64::from(f(w.steps())) * state.probability(w))
        .sum();
    Ok(Scalar::Float(LogFloat::from_f64(sum)))
}

/// `⟨C_x⟩` over the state.
pub fn expectation_c(state: &GroundState, x: usize) -> Result<Scalar> {
    let p = state.params();
    check_color_operator(p)?;
    check_site(p, x)?;
    expectation(state, |s| color_value(s[x - 1]))
}

/// `G = ⟨C_{x1} C_{x2}⟩ − ⟨C_{x1}⟩⟨C_{x2}⟩`.
pub fn correlation_g(state: &GroundState, x1: usize, x2: usize) -> Result<Scalar> {
    let p = state.params();
    check_color_operator(p)?;
    check_site(p, x1)?;
    check_site(p, x2)?;
    if x1 >= x2 {
        return Err(Error::InvalidParameter(format!("need x1 < x2, got {x1}, {x2}")));
    }
    let cc = expectation(state, |s| color_value(s[x1 - 1]) * color_value(s[x2 - 1]))?;
    let c1 = expectation_c(state, x1)?;
    let c2 = expectation_c(state, x2)?;
    Ok(match (cc, c1, c2) {
        (Scalar::Exact(a), Scalar::Exact(b), Scalar::Exact(c)) => Scalar::Exact(a - b * c),
        (a, b, c) => Scalar::Float(LogFloat::from_f64(a.to_f64() - b.to_f64() * c.to_f64())),
    })
}

/// Probability that the up step at `x1` is matched with the down step at
/// `x2`, under the Born weights of the deformed state.
pub fn matched_probability(
    n: usize,
    colors: u8,
    model: Model,
    t: &Deformation,
    x1: usize,
    x2: usize,
) -> Result<Scalar> {
    let p = StateParams::new(n, colors, model, t.clone())?;
    check_site(&p, x1)?;
    check_site(&p, x2)?;
    if x1 >= x2 {
        return Err(Error::InvalidParameter(format!("need x1 < x2, got {x1}, {x2}")));
    }
    Ok(dispatch(
        n,
        colors,
        model,
        t,
        |tr| Scalar::Exact(tr.matched(x1, x2) / tr.total()),
        |tr| Scalar::Float(tr.matched(x1, x2).div(&tr.total())),
    ))
}

/// `A_max − max{A(w) : (x1, x2) matched in w}`, or `None` if no walk matches
/// the pair. Brute force over uncolored shapes.
pub fn max_area_deficit(n: usize, model: Model, x1: usize, x2: usize) -> Result<Option<u64>> {
    if x1 == 0 || x1 >= x2 || x2 > 2 * n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= x1 < x2 <= {}, got {x1}, {x2}",
            2 * n
        )));
    }
    Ok(deficit_table(n, model)?.remove(&(x1, x2)).flatten())
}

/// Deficits of every pair `x1 < x2` in one pass.
pub fn deficit_table(n: usize, model: Model) -> Result<BTreeMap<(usize, usize), Option<u64>>> {
    let a_max = (n * n) as u64;
    let mut best: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for w in enumerate_walks(n, 1, model, DEFAULT_WALK_CAP)? {
        let area = w.area()?;
        for pair in w.matched_pairs()? {
            let slot = best.entry((pair.x, pair.y)).or_insert(0);
            *slot = (*slot).max(area);
        }
    }
    let mut out = BTreeMap::new();
    for x1 in 1..2 * n {
        for x2 in x1 + 1..=2 * n {
            out.insert((x1, x2), best.get(&(x1, x2)).map(|a| a_max - a));
        }
    }
    Ok(out)
}

/// Middle-centered coordinate `x − (2n+1)/2`.
pub fn centered(n: usize, x: usize) -> f64 {
    x as f64 - (2 * n + 1) as f64 / 2.0
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeficitRow {
    pub x1: usize,
    pub x2: usize,
    pub deficit: u64,
    pub predicted: f64,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeficitLawReport {
    pub n: usize,
    pub rows: Vec<DeficitRow>,
    pub exceptions: usize,
}

/// Compares brute-force deficits against `|x̃₁² − x̃₂²|` for every matchable
/// Motzkin pair with even separation.
pub fn deficit_law_check(n: usize) -> Result<DeficitLawReport> {
    let rows: Vec<DeficitRow> = deficit_table(n, Model::Motzkin)?
        .into_iter()
        .filter(|((x1, x2), _)| (x2 - x1) % 2 == 0)
        .filter_map(|((x1, x2), d)| {
            let deficit = d?;
            let predicted = (centered(n, x1).powi(2) - centered(n, x2).powi(2)).abs();
            Some(DeficitRow {
                x1,
                x2,
                deficit,
                predicted,
                matches: (deficit as f64 - predicted).abs() < 1e-9,
            })
        })
        .collect();
    Ok(DeficitLawReport {
        n,
        exceptions: rows.iter().filter(|r| !r.matches).count(),
        rows,
    })
}

/// `−ln G / ln t` with `G` the matched-pair probability of the two-color
/// Motzkin state.
pub fn exponent_fit(n: usize, colors: u8, t: &Deformation, x1: usize, x2: usize) -> Result<f64> {
    let ln_t = t.ln();
    if !(ln_t.is_finite() && ln_t != 0.0) {
        return Err(Error::InvalidParameter(format!("exponent fit needs t > 0, t != 1, got {t}")));
    }
    let g = matched_probability(n, colors, Model::Motzkin, t, x1, x2)?;
    let ln_g = g.ln();
    if !ln_g.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "G vanishes for the pair ({x1}, {x2})"
        )));
    }
    Ok(-ln_g / ln_t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Window {
    /// Flat walk plus all area-1 walks.
    SmallT,
    /// Walks of area `n²` and `n² − 1`.
    LargeT,
}

impl std::str::FromStr for Window {
    type Err = Error;
    fn from_str(s: &str) -> Result<Window> {
        match s {
            "small_t" | "small-t" | "small" => Ok(Window::SmallT),
            "large_t" | "large-t" | "large" => Ok(Window::LargeT),
            _ => Err(Error::InvalidParameter(format!("unknown window `{s}`"))),
        }
    }
}

impl std::fmt::Display for Window {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Window::SmallT => "small_t",
            Window::LargeT => "large_t",
        })
    }
}

fn keep_area(n: usize, window: Window, area: u64) -> bool {
    let top = (n * n) as u64;
    match window {
        Window::SmallT => area <= 1,
        Window::LargeT => area + 1 >= top,
    }
}

/// Ground state restricted to the window's walks, normalized, with the
/// original weights.
pub fn truncated_state(
    n: usize,
    colors: u8,
    model: Model,
    t: &Deformation,
    window: Window,
) -> Result<GroundState> {
    if model != Model::Motzkin {
        return Err(Error::Unsupported("truncations are defined for the Motzkin chain".into()));
    }
    let full = build_ground_state(n, colors, model, t.clone(), false)?;
    full.restrict(|w| w.area().is_ok_and(|a| keep_area(n, window, a)), true)
}

pub fn truncation_fidelity(n: usize, colors: u8, t: &Deformation, window: Window) -> Result<f64> {
    let full = build_ground_state(n, colors, Model::Motzkin, t.clone(), true)?;
    let cut = truncated_state(n, colors, Model::Motzkin, t, window)?;
    fidelity(&full, &cut)
}

/// Which cuts an entropy sweep evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutRule {
    Half,
    At(usize),
    All,
}

impl std::str::FromStr for CutRule {
    type Err = Error;
    fn from_str(s: &str) -> Result<CutRule> {
        match s {
            "half" => Ok(CutRule::Half),
            "all" => Ok(CutRule::All),
            _ => s
                .parse()
                .map(CutRule::At)
                .map_err(|_| Error::InvalidParameter(format!("bad cut `{s}`"))),
        }
    }
}

impl CutRule {
    pub fn cuts(self, n: usize) -> Vec<usize> {
        match self {
            CutRule::Half => vec![n],
            CutRule::At(z) => vec![z],
            CutRule::All => (1..2 * n).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepPoint {
    pub model: Model,
    pub n: usize,
    pub colors: u8,
    pub t: Deformation,
}

/// One row of a sweep table. Failed points carry `quantity = "error"` and
/// the message in place of a value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub model: Model,
    pub n: usize,
    pub j: u8,
    pub t: String,
    pub cut: String,
    pub quantity: String,
    pub value: String,
    pub mode: Mode,
}

impl SweepRow {
    pub fn numeric(&self) -> Option<f64> {
        self.value.parse().ok()
    }
}

/// Half-chain (or other) entropy at each grid point, in input order.
pub fn entropy_sweep(grid: &[SweepPoint], cut: CutRule) -> Vec<SweepRow> {
    grid.par_iter()
        .map(|p| {
            let row = |cut: String, outcome: Result<f64>| {
                let (quantity, value) = match outcome {
                    Ok(s) => ("entropy".to_string(), format!("{s:.15e}")),
                    Err(e) => ("error".to_string(), e.to_string()),
                };
                SweepRow {
                    model: p.model,
                    n: p.n,
                    j: p.colors,
                    t: p.t.to_string(),
                    cut,
                    quantity,
                    value,
                    mode: p.t.mode(),
                }
            };
            if let Err(e) = StateParams::new(p.n, p.colors, p.model, p.t.clone()) {
                return vec![row(String::new(), Err(e))];
            }
            cut.cuts(p.n)
                .into_iter()
                .map(|z| row(z.to_string(), entanglement_entropy(p.n, p.colors, p.model, &p.t, z)))
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct CorrelationRecord {
    pub x1: usize,
    pub x2: usize,
    pub g: f64,
    pub g_exact: Option<String>,
    pub matched_probability: f64,
    pub deficit: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorrelationReport {
    pub schema: u32,
    pub model: Model,
    pub n: usize,
    pub j: u8,
    pub t: String,
    pub mode: Mode,
    pub records: Vec<CorrelationRecord>,
}

/// `G` for every pair of the chain, with matched probabilities and deficits.
pub fn correlation_report(n: usize, model: Model, t: &Deformation) -> Result<CorrelationReport> {
    let state = build_ground_state(n, 2, model, t.clone(), true)?;
    let deficits = deficit_table(n, model)?;
    let mut records = Vec::new();
    for x1 in 1..2 * n {
        for x2 in x1 + 1..=2 * n {
            let g = correlation_g(&state, x1, x2)?;
            records.push(CorrelationRecord {
                x1,
                x2,
                g: g.to_f64(),
                g_exact: g.as_exact().map(|r| r.to_string()),
                matched_probability: matched_probability(n, 2, model, t, x1, x2)?.to_f64(),
                deficit: deficits[&(x1, x2)],
            });
        }
    }
    Ok(CorrelationReport {
        schema: 1,
        model,
        n,
        j: 2,
        t: t.to_string(),
        mode: t.mode(),
        records,
    })
}

/// `|a − b|` for two scalars, exact when both are.
pub fn scalar_distance(a: &Scalar, b: &Scalar) -> f64 {
    match (a, b) {
        (Scalar::Exact(x), Scalar::Exact(y)) => crate::arith::rational_to_f64(&(x - y).abs()),
        _ => (a.to_f64() - b.to_f64()).abs(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn expectation_vanishes_exactly() {
        let t = Deformation::exact(3, 2);
        let s = build_ground_state(3, 2, Model::Motzkin, t, true).unwrap();
        for x in 1..=6 {
            assert_eq!(expectation_c(&s, x).unwrap(), Scalar::Exact(BigRational::zero()));
        }
        let one = build_ground_state(2, 1, Model::Motzkin, Deformation::exact(1, 1), true).unwrap();
        assert!(expectation_c(&one, 1).is_err());
    }

    #[test]
    fn three_walk_correlation() {
        for (p, q) in [(1, 2), (1, 1), (3, 1)] {
            let t = Deformation::exact(p, q);
            let s = build_ground_state(1, 2, Model::Motzkin, t.clone(), true).unwrap();
            let tt = r(p, q) * r(p, q);
            let expected = &tt * r(2, 1) / (r(1, 1) + &tt * r(2, 1));
            assert_eq!(correlation_g(&s, 1, 2).unwrap(), Scalar::Exact(expected.clone()));
            assert_eq!(
                matched_probability(1, 2, Model::Motzkin, &t, 1, 2).unwrap(),
                Scalar::Exact(expected)
            );
        }
    }

    #[test]
    fn small_deficits() {
        assert_eq!(max_area_deficit(2, Model::Motzkin, 1, 4).unwrap(), Some(0));
        assert_eq!(max_area_deficit(2, Model::Motzkin, 1, 3).unwrap(), Some(2));
        assert_eq!(max_area_deficit(2, Model::Motzkin, 2, 4).unwrap(), Some(2));
        assert_eq!(max_area_deficit(2, Model::Fredkin, 1, 3).unwrap(), None);
        let law = deficit_law_check(2).unwrap();
        assert_eq!(law.exceptions, 0);
    }

    #[test]
    fn truncation_windows() {
        let t = Deformation::exact(1, 2);
        let names = |w| {
            let s = truncated_state(2, 1, Model::Motzkin, &t, w).unwrap();
            s.walks().map(|w| w.to_string().replace(' ', "")).collect::<Vec<_>>()
        };
        let mut small = names(Window::SmallT);
        small.sort();
        assert_eq!(small, vec!["FFFF", "FFU1D1", "FU1D1F", "U1D1FF"]);
        let mut large = names(Window::LargeT);
        large.sort();
        assert_eq!(large, vec!["U1FFD1", "U1U1D1D1"]);
        let f = truncation_fidelity(2, 1, &Deformation::exact(0, 1), Window::SmallT).unwrap();
        assert!((f - 1.0).abs() < 1e-14);
    }

    #[test]
    fn sweep_keeps_order_and_errors() {
        let grid = vec![
            SweepPoint { model: Model::Motzkin, n: 3, colors: 2, t: Deformation::exact(1, 1) },
            SweepPoint { model: Model::Motzkin, n: 0, colors: 2, t: Deformation::exact(1, 1) },
            SweepPoint { model: Model::Fredkin, n: 2, colors: 1, t: Deformation::Float(0.5) },
        ];
        let rows = entropy_sweep(&grid, CutRule::Half);
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0].quantity, "entropy");
        assert_eq!(rows[1].quantity, "error");
        assert_eq!(rows[2].model, Model::Fredkin);
        let mut buf = Vec::new();
        write_sweep_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("model,n,j,t,cut,quantity,value,mode\n"));
        assert_eq!(entropy_sweep(&grid, CutRule::All).len(), 5 + 1 + 3);
    }

    #[test]
    fn reflection_symmetry() {
        let t = Deformation::exact(2, 1);
        for x1 in 1..6 {
            for x2 in x1 + 1..=6 {
                let a = matched_probability(3, 2, Model::Motzkin, &t, x1, x2).unwrap();
                let b = matched_probability(3, 2, Model::Motzkin, &t, 7 - x2, 7 - x1).unwrap();
                assert_eq!(a, b);
            }
        }
    }
}
