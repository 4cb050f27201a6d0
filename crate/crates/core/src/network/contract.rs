//! Exact contraction of the rainbow network, column by column.
//!
//! A column of bulk tensors is contracted internally (summing over its
//! vertical bonds with the top leg fixed to `ω` and the bottom leg left
//! physical), giving a map from the incoming horizontal bond vector to
//! (physical value, outgoing bond vector, weight) triples. The sweep then
//! carries, for every bond vector on the current cut, the amplitudes of all
//! physical prefixes that reach it. Bond vectors are restricted to stack
//! form (colors on top, `ω` below), which is all the tiles can produce.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_rational::BigRational;
use serde::Serialize;

use super::geometry::PyramidGeometry;
use super::tiles::{EdgeValue, TileSet};
use crate::arith::{Deformation, LogFloat, Mode, Semiring, XPoly};
use crate::error::{Error, Result};
use crate::state::{Amplitude, GroundState, StateParams};
use crate::walks::{Model, StackLabel, Step, Walk};

/// One way of filling a column for a given incoming bond vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnConfig {
    pub physical: Step,
    pub right: Vec<EdgeValue>,
    pub power: u32,
}

/// All fillings of column `z` compatible with `left` (bond vector of cut
/// `z - 1`, top to bottom).
pub fn column_configs(
    set: &TileSet,
    geometry: &PyramidGeometry,
    z: usize,
    left: &[EdgeValue],
) -> Vec<ColumnConfig> {
    let n = geometry.n();
    let bottom = geometry.bottom(z);
    let left_rows = geometry.bond_rows(z - 1);
    let right_rows = geometry.bond_rows(z);
    let left_at = |y: usize| {
        left_rows
            .iter()
            .position(|&r| r == y)
            .map_or(EdgeValue::Omega, |i| left[i])
    };
    let mut out = Vec::new();
    let mut right = vec![EdgeValue::Omega; right_rows.len()];
    fill_column(
        set,
        geometry,
        z,
        n,
        bottom,
        EdgeValue::Omega,
        0,
        &left_at,
        &mut right,
        &mut out,
    );
    out
}

#[allow(clippy::too_many_arguments)]
fn fill_column(
    set: &TileSet,
    g: &PyramidGeometry,
    z: usize,
    y: usize,
    bottom: usize,
    top: EdgeValue,
    power: u32,
    left_at: &dyn Fn(usize) -> EdgeValue,
    right: &mut Vec<EdgeValue>,
    out: &mut Vec<ColumnConfig>,
) {
    let right_open = g.contains(z + 1, y);
    for tile in set.matching(left_at(y), top) {
        if !right_open && tile.right != EdgeValue::Omega {
            continue;
        }
        if right_open {
            right[g.n() - y] = tile.right;
        }
        let power = power + tile.weight;
        if y == bottom {
            if let Some(physical) = tile.bottom.to_step() {
                out.push(ColumnConfig {
                    physical,
                    right: right.clone(),
                    power,
                });
            }
        } else {
            fill_column(set, g, z, y - 1, bottom, tile.bottom, power, left_at, right, out);
        }
    }
    if right_open {
        right[g.n() - y] = EdgeValue::Omega;
    }
}

/// Reads a bond vector as a stack, or `None` if it is not of stack form.
pub fn bond_to_stack(bond: &[EdgeValue]) -> Option<StackLabel> {
    let h = bond
        .iter()
        .position(|e| *e == EdgeValue::Omega)
        .unwrap_or(bond.len());
    let mut colors = Vec::with_capacity(h);
    for e in &bond[..h] {
        match e {
            EdgeValue::Plus(c) => colors.push(*c),
            _ => return None,
        }
    }
    if bond[h..].iter().any(|e| *e != EdgeValue::Omega) {
        return None;
    }
    Some(StackLabel { colors })
}

pub fn stack_to_bond(stack: &StackLabel, width: usize) -> Vec<EdgeValue> {
    let mut v: Vec<EdgeValue> = stack.colors.iter().map(|&c| EdgeValue::Plus(c)).collect();
    v.resize(width, EdgeValue::Omega);
    v
}

/// Default cap on live (bond, prefix) entries during a sweep.
pub const DEFAULT_CONTRACT_CAP: usize = 4_000_000;

fn sweep<W: Semiring>(
    n: usize,
    colors: u8,
    model: Model,
    max_stack: Option<usize>,
    weigh: impl Fn(u32) -> W,
    cap: usize,
) -> Result<BTreeMap<Vec<Step>, W>> {
    if n == 0 || colors == 0 {
        return Err(Error::InvalidParameter("need n >= 1 and colors >= 1".into()));
    }
    let set = TileSet::new(model, colors);
    let g = PyramidGeometry::new(n);
    let mut live: BTreeMap<Vec<EdgeValue>, BTreeMap<Vec<Step>, W>> = BTreeMap::new();
    live.entry(Vec::new()).or_default().insert(Vec::new(), W::unit());
    for z in 1..=g.columns() {
        let mut next: BTreeMap<Vec<EdgeValue>, BTreeMap<Vec<Step>, W>> = BTreeMap::new();
        let mut entries = 0usize;
        for (bond, prefixes) in &live {
            for cfg in column_configs(&set, &g, z, bond) {
                let Some(stack) = bond_to_stack(&cfg.right) else {
                    continue;
                };
                if max_stack.is_some_and(|h| stack.height() > h) {
                    continue;
                }
                let w = weigh(cfg.power);
                if w.is_nil() {
                    continue;
                }
                let slot = next.entry(cfg.right.clone()).or_default();
                for (prefix, amp) in prefixes {
                    let mut p = prefix.clone();
                    p.push(cfg.physical);
                    let v = amp.mul(&w);
                    match slot.get_mut(&p) {
                        Some(acc) => *acc = acc.add(&v),
                        None => {
                            slot.insert(p, v);
                            entries += 1;
                        }
                    }
                }
            }
        }
        if entries > cap {
            return Err(Error::cap("network contraction", entries, cap));
        }
        live = next;
    }
    Ok(live
        .remove(&Vec::new())
        .unwrap_or_default()
        .into_iter()
        .filter(|(_, w)| !w.is_nil())
        .collect())
}

/// Contracts the full network symbolically: each physical configuration gets
/// a polynomial in `x = √t`.
pub fn contract_symbolic(
    n: usize,
    colors: u8,
    model: Model,
    cap: usize,
) -> Result<BTreeMap<Walk, XPoly>> {
    contract_symbolic_truncated(n, colors, model, None, cap)
}

fn contract_symbolic_truncated(
    n: usize,
    colors: u8,
    model: Model,
    max_stack: Option<usize>,
    cap: usize,
) -> Result<BTreeMap<Walk, XPoly>> {
    sweep(n, colors, model, max_stack, XPoly::x_pow, cap)?
        .into_iter()
        .map(|(steps, p)| Ok((Walk::new(steps, model, colors)?, p)))
        .collect()
}

fn to_state(
    n: usize,
    colors: u8,
    model: Model,
    t: &Deformation,
    mode: Mode,
    max_stack: Option<usize>,
    cap: usize,
) -> Result<GroundState> {
    let t = t.in_mode(mode)?;
    let params = StateParams::new(n, colors, model, t.clone())?;
    if t.is_zero() && model == Model::Fredkin {
        return Err(Error::InvalidParameter(
            "t = 0 is degenerate for the Fredkin chain".into(),
        ));
    }
    let amps: Vec<(Walk, Amplitude)> = match mode {
        Mode::Exact => {
            let t_zero = t.is_zero();
            contract_symbolic_truncated(n, colors, model, max_stack, cap)?
                .into_iter()
                .map(|(walk, poly)| {
                    let m = poly.as_monomial().ok_or_else(|| Error::NonMonomial {
                        walk: walk.to_string(),
                        poly: poly.to_string(),
                    })?;
                    Ok((walk, m))
                })
                .filter(|r| !(t_zero && matches!(r, Ok((_, m)) if m.power > 0)))
                .map(|r| r.map(|(w, m)| (w, Amplitude::Exact(m))))
                .collect::<Result<_>>()?
        }
        Mode::Float => {
            let ln_x = 0.5 * t.ln();
            let weigh = |k: u32| {
                if k == 0 {
                    LogFloat::unit()
                } else {
                    LogFloat::from_ln(f64::from(k) * ln_x)
                }
            };
            sweep(n, colors, model, max_stack, weigh, cap)?
                .into_iter()
                .map(|(steps, a)| Ok((Walk::new(steps, model, colors)?, Amplitude::Float(a))))
                .collect::<Result<_>>()?
        }
    };
    GroundState::from_amplitudes(params, amps, false)
}

/// The unnormalized state represented by the network.
pub fn contract(
    n: usize,
    colors: u8,
    model: Model,
    t: &Deformation,
    mode: Mode,
) -> Result<GroundState> {
    to_state(n, colors, model, t, mode, None, DEFAULT_CONTRACT_CAP)
}

/// Contraction with every horizontal bond restricted to stacks of height at
/// most `max_height`; keeps exactly the walks that never exceed that height.
pub fn contract_truncated(
    n: usize,
    colors: u8,
    model: Model,
    t: &Deformation,
    max_height: usize,
) -> Result<GroundState> {
    to_state(
        n,
        colors,
        model,
        t,
        t.mode(),
        Some(max_height),
        DEFAULT_CONTRACT_CAP,
    )
}

/// Stack basis of one cut: all color sequences of height
/// `0..=max_height`, ordered by height and then lexicographically.
pub fn stack_basis(colors: u8, max_height: usize) -> Vec<StackLabel> {
    let mut out = vec![StackLabel::default()];
    let mut layer = vec![StackLabel::default()];
    for _ in 0..max_height {
        layer = layer
            .iter()
            .flat_map(|s| {
                (1..=colors).map(move |c| {
                    let mut colors = s.colors.clone();
                    colors.push(c);
                    StackLabel { colors }
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Site tensor of the column-fused network.
#[derive(Clone, Debug, PartialEq)]
pub struct SiteTensor {
    pub left_dim: usize,
    pub right_dim: usize,
    /// Nonzero entries `(left index, physical step, right index) → weight`.
    pub entries: BTreeMap<(usize, Step, usize), XPoly>,
}

/// Matrix product state obtained by contracting each column of the network.
/// Entries are polynomials in `x = √t`, so one MPS serves every `t`.
#[derive(Clone, Debug)]
pub struct Mps {
    pub n: usize,
    pub colors: u8,
    pub model: Model,
    /// Stack basis of cuts `0..=2n`.
    pub bases: Vec<Vec<StackLabel>>,
    pub sites: Vec<SiteTensor>,
}

impl Mps {
    /// Bond dimensions of cuts `0..=2n` (the outer two are 1).
    pub fn bond_dims(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    /// Multiplies out all site tensors.
    pub fn expand(&self) -> Result<BTreeMap<Walk, XPoly>> {
        let mut acc: BTreeMap<(Vec<Step>, usize), XPoly> = BTreeMap::new();
        acc.insert((Vec::new(), 0), XPoly::unit());
        for site in &self.sites {
            let mut next: BTreeMap<(Vec<Step>, usize), XPoly> = BTreeMap::new();
            for ((prefix, l), amp) in &acc {
                for ((el, step, r), w) in site.entries.range((*l, Step::Up(0), 0)..) {
                    if el != l {
                        break;
                    }
                    let mut p = prefix.clone();
                    p.push(*step);
                    let slot = next.entry((p, *r)).or_insert_with(XPoly::nil);
                    *slot = slot.add(&amp.mul(w));
                }
            }
            acc = next;
        }
        acc.into_iter()
            .filter(|(_, p)| !p.is_nil())
            .map(|((steps, _), p)| Ok((Walk::new(steps, self.model, self.colors)?, p)))
            .collect()
    }
}

/// Default cap on `Σ_z bond_dim(z)` for MPS export.
pub const DEFAULT_MPS_CAP: u64 = 2_000_000;

pub fn contract_to_mps(n: usize, colors: u8, model: Model, cap: u64) -> Result<Mps> {
    if n == 0 || colors == 0 {
        return Err(Error::InvalidParameter("need n >= 1 and colors >= 1".into()));
    }
    let g = PyramidGeometry::new(n);
    let total: BigUint = (0..=g.columns())
        .map(|z| {
            (0..=g.bond_count(z) as u32)
                .map(|h| BigUint::from(colors).pow(h))
                .sum::<BigUint>()
        })
        .sum();
    if total > BigUint::from(cap) {
        return Err(Error::cap("MPS bond space", total, cap));
    }
    let set = TileSet::new(model, colors);
    let bases: Vec<Vec<StackLabel>> = (0..=g.columns())
        .map(|z| stack_basis(colors, g.bond_count(z)))
        .collect();
    let mut sites = Vec::with_capacity(g.columns());
    for z in 1..=g.columns() {
        let left_basis = &bases[z - 1];
        let right_index: HashMap<&StackLabel, usize> =
            bases[z].iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut entries: BTreeMap<(usize, Step, usize), XPoly> = BTreeMap::new();
        for (li, stack) in left_basis.iter().enumerate() {
            let bond = stack_to_bond(stack, g.bond_count(z - 1));
            for cfg in column_configs(&set, &g, z, &bond) {
                let Some(rs) = bond_to_stack(&cfg.right) else {
                    continue;
                };
                let ri = right_index[&rs];
                let slot = entries
                    .entry((li, cfg.physical, ri))
                    .or_insert_with(XPoly::nil);
                *slot = slot.add(&XPoly::x_pow(cfg.power));
            }
        }
        sites.push(SiteTensor {
            left_dim: left_basis.len(),
            right_dim: bases[z].len(),
            entries,
        });
    }
    Ok(Mps {
        n,
        colors,
        model,
        bases,
        sites,
    })
}

/// JSON description of the network for rendering.
#[derive(Clone, Debug, Serialize)]
pub struct NetworkSnapshot {
    pub schema: u32,
    pub n: usize,
    pub model: Model,
    pub colors: u8,
    pub cells: Vec<[usize; 2]>,
    /// Tile table: kind, color, edges (left, right, top, bottom), power of x.
    pub tiles: Vec<TileRow>,
    pub bond_counts: Vec<usize>,
    pub bond_dims: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TileRow {
    pub kind: String,
    pub color: Option<u8>,
    pub edges: [String; 4],
    pub power: u32,
}

pub fn network_snapshot(n: usize, colors: u8, model: Model) -> NetworkSnapshot {
    let g = PyramidGeometry::new(n);
    let set = TileSet::new(model, colors);
    NetworkSnapshot {
        schema: 1,
        n,
        model,
        colors,
        cells: g.cells().into_iter().map(|c| [c.z, c.y]).collect(),
        tiles: set
            .tiles()
            .iter()
            .map(|t| TileRow {
                kind: t.kind.name().to_string(),
                color: t.color,
                edges: t.edges().map(|e| e.to_string()),
                power: t.weight,
            })
            .collect(),
        bond_counts: (0..=g.columns()).map(|z| g.bond_count(z)).collect(),
        bond_dims: (0..=g.columns())
            .map(|z| {
                (0..=g.bond_count(z) as u32)
                    .map(|h| usize::from(colors).pow(h))
                    .sum()
            })
            .collect(),
    }
}

/// Evaluates a symbolic contraction at a rational `t`.
pub fn evaluate_exact(poly: &XPoly, t: &BigRational) -> Option<BigRational> {
    let mut acc = BigRational::nil();
    for (p, c) in poly.terms() {
        if p % 2 != 0 {
            return None;
        }
        acc = acc.add(&c.mul(&t.pow((p / 2) as i32)));
    }
    Some(acc)
}
