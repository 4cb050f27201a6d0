//! Height-indexed transfer recursions over uncolored walk shapes.
//!
//! Colors are accounted for by a factor `j` on every up step, and the area
//! weight by a factor `t²ʰ` for every step that ends at height `h`. With
//! these two rules the total weight of a walk shape is `j^{#pairs} t^{2A}`,
//! i.e. the summed squared amplitude of all its colorings.

use crate::arith::{Deformation, LogFloat, Scalar, Semiring};
use crate::walks::Model;
use num_rational::BigRational;

pub(crate) struct Transfer<W> {
    model: Model,
    len: usize,
    max_h: usize,
    j: W,
    /// `t2[h] = t^{2h}`
    t2: Vec<W>,
}

impl<W: Semiring> Transfer<W> {
    pub fn new(n: usize, colors: u8, model: Model, t: W) -> Self {
        let tt = t.mul(&t);
        let mut t2 = Vec::with_capacity(n + 1);
        let mut acc = W::unit();
        for _ in 0..=n {
            t2.push(acc.clone());
            acc = acc.mul(&tt);
        }
        Transfer {
            model,
            len: 2 * n,
            max_h: n,
            j: W::from_count(u64::from(colors)),
            t2,
        }
    }

    pub fn unit(&self, h: usize) -> Vec<W> {
        let mut v = vec![W::nil(); self.max_h + 1];
        v[h] = W::unit();
        v
    }

    /// Advances a height vector by `steps` steps, never dropping below `floor`.
    pub fn sweep(&self, mut v: Vec<W>, steps: usize, floor: usize) -> Vec<W> {
        for _ in 0..steps {
            let mut next = vec![W::nil(); self.max_h + 1];
            for (h, w) in v.iter().enumerate() {
                if w.is_nil() || h < floor {
                    continue;
                }
                if h < self.max_h {
                    let add = w.mul(&self.j).mul(&self.t2[h + 1]);
                    next[h + 1] = next[h + 1].add(&add);
                }
                if self.model.has_flat() {
                    next[h] = next[h].add(&w.mul(&self.t2[h]));
                }
                if h > floor {
                    next[h - 1] = next[h - 1].add(&w.mul(&self.t2[h - 1]));
                }
            }
            v = next;
        }
        v
    }

    /// Forward weights after `z` steps from height 0.
    pub fn left(&self, z: usize) -> Vec<W> {
        self.sweep(self.unit(0), z, 0)
    }

    /// Weights of completing the walk from each height at position `z`.
    /// Every step of the suffix carries its own `t²ʰ` factor.
    pub fn right(&self, z: usize) -> Vec<W> {
        let mut v = self.unit(0);
        for _ in z..self.len {
            let mut prev = vec![W::nil(); self.max_h + 1];
            for (h, slot) in prev.iter_mut().enumerate() {
                let mut acc = W::nil();
                if h < self.max_h && !v[h + 1].is_nil() {
                    acc = acc.add(&self.j.mul(&self.t2[h + 1]).mul(&v[h + 1]));
                }
                if self.model.has_flat() && !v[h].is_nil() {
                    acc = acc.add(&self.t2[h].mul(&v[h]));
                }
                if h > 0 && !v[h - 1].is_nil() {
                    acc = acc.add(&self.t2[h - 1].mul(&v[h - 1]));
                }
                *slot = acc;
            }
            v = prev;
        }
        v
    }

    pub fn total(&self) -> W {
        self.left(self.len)[0].clone()
    }

    /// Summed weight of walks in which the up step at `x1` is matched with
    /// the down step at `x2` (1-based, `x1 < x2`).
    pub fn matched(&self, x1: usize, x2: usize) -> W {
        let left = self.left(x1 - 1);
        let right = self.right(x2);
        let mut total = W::nil();
        for h in 0..self.max_h {
            if left[h].is_nil() || right[h].is_nil() {
                continue;
            }
            let inner = self.sweep(self.unit(h + 1), x2 - 1 - x1, h + 1)[h + 1].clone();
            if inner.is_nil() {
                continue;
            }
            let w = left[h]
                .mul(&self.j)
                .mul(&self.t2[h + 1])
                .mul(&inner)
                .mul(&self.t2[h])
                .mul(&right[h]);
            total = total.add(&w);
        }
        total
    }
}

/// Runs `exact` for rational `t` and `float` (log-domain) otherwise.
pub(crate) fn dispatch<R>(
    n: usize,
    colors: u8,
    model: Model,
    t: &Deformation,
    exact: impl FnOnce(&Transfer<BigRational>) -> R,
    float: impl FnOnce(&Transfer<LogFloat>) -> R,
) -> R {
    match t {
        Deformation::Exact(r) => exact(&Transfer::new(n, colors, model, r.clone())),
        Deformation::Float(_) => float(&Transfer::new(n, colors, model, t.as_log())),
    }
}

pub(crate) fn total(n: usize, colors: u8, model: Model, t: &Deformation) -> Scalar {
    dispatch(
        n,
        colors,
        model,
        t,
        |tr| Scalar::Exact(tr.total()),
        |tr| Scalar::Float(tr.total()),
    )
}
