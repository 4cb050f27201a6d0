//! Colored Motzkin and Fredkin walks.
//!
//! A walk of length `2n` is a sequence of up, flat and down steps that
//! starts and ends at height zero and never goes below it. Every up step
//! carries a color in `1..=j`, and every down step must repeat the color of
//! the up step it closes. Fredkin walks have no flat steps.
//!
//! The Fredkin model is parameterized by the same color count `j`, giving
//! local dimension `2j`; the half-integer spin `j/2` only appears in the
//! physical labelling, never in code.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Motzkin,
    Fredkin,
}

impl Model {
    pub fn has_flat(self) -> bool {
        matches!(self, Model::Motzkin)
    }

    /// Local Hilbert space dimension for `j` colors.
    pub fn local_dim(self, colors: u8) -> usize {
        let j = usize::from(colors);
        match self {
            Model::Motzkin => 2 * j + 1,
            Model::Fredkin => 2 * j,
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Motzkin => "motzkin",
            Model::Fredkin => "fredkin",
        })
    }
}

impl FromStr for Model {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "motzkin" => Ok(Model::Motzkin),
            "fredkin" => Ok(Model::Fredkin),
            other => Err(Error::InvalidParameter(format!("unknown model `{other}`"))),
        }
    }
}

/// One step of a walk. The derived order (`Up < Flat < Down`, colors
/// ascending) is the enumeration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    Up(u8),
    Flat,
    Down(u8),
}

impl Step {
    pub fn delta(self) -> i64 {
        match self {
            Step::Up(_) => 1,
            Step::Flat => 0,
            Step::Down(_) => -1,
        }
    }

    pub fn color(self) -> Option<u8> {
        match self {
            Step::Up(c) | Step::Down(c) => Some(c),
            Step::Flat => None,
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Up(c) => write!(f, "U{c}"),
            Step::Flat => write!(f, "F"),
            Step::Down(c) => write!(f, "D{c}"),
        }
    }
}

fn parse_step(token: &str, colors: u8) -> Result<Step> {
    let malformed = || Error::MalformedToken(token.to_string());
    let mut chars = token.chars();
    let kind = chars.next().ok_or_else(malformed)?;
    let rest = chars.as_str();
    match kind {
        'F' if rest.is_empty() => Ok(Step::Flat),
        'U' | 'D' => {
            if rest.is_empty() || !rest.chars().all(|c| c.is_ascii_digit()) {
                return Err(malformed());
            }
            let color: u32 = rest.parse().map_err(|_| malformed())?;
            if color == 0 || color > u32::from(colors) {
                return Err(Error::ColorOutOfRange { color, colors });
            }
            let c = color as u8;
            Ok(if kind == 'U' { Step::Up(c) } else { Step::Down(c) })
        }
        _ => Err(malformed()),
    }
}

/// A walk together with its model and declared color count.
///
/// Construction does not enforce the walk constraints; see [`Walk::validate`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Walk {
    steps: Vec<Step>,
    model: Model,
    colors: u8,
}

/// Colors of the open pairs crossing a cut, outermost (earliest) first.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StackLabel {
    pub colors: Vec<u8>,
}

impl StackLabel {
    pub fn height(&self) -> usize {
        self.colors.len()
    }
}

/// An up step at `x` closed by the down step at `y` (1-based sites).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MatchedPair {
    pub x: usize,
    pub y: usize,
    pub color: u8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Height dropped below zero after this (1-based) step.
    NegativeHeight { step: usize },
    NonzeroEndpoint { height: i64 },
    ColorMismatch { step: usize, expected: u8, found: u8 },
    FlatInFredkin { step: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NegativeHeight { step } => write!(f, "negative height after step {step}"),
            Violation::NonzeroEndpoint { height } => write!(f, "walk ends at height {height}"),
            Violation::ColorMismatch {
                step,
                expected,
                found,
            } => write!(
                f,
                "step {step}: down color {found} does not match most recent up color {expected}"
            ),
            Violation::FlatInFredkin { step } => write!(f, "flat step {step} in a Fredkin walk"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidityReport {
    pub violations: Vec<Violation>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl Walk {
    /// Builds a walk after checking only the local token-level rules
    /// (color range and even length).
    pub fn new(steps: Vec<Step>, model: Model, colors: u8) -> Result<Walk> {
        if colors == 0 {
            return Err(Error::InvalidParameter("colors must be >= 1".into()));
        }
        if !steps.len().is_multiple_of(2) {
            return Err(Error::OddLength(steps.len()));
        }
        for s in &steps {
            if let Some(c) = s.color() {
                if c == 0 || c > colors {
                    return Err(Error::ColorOutOfRange {
                        color: u32::from(c),
                        colors,
                    });
                }
            }
        }
        Ok(Walk {
            steps,
            model,
            colors,
        })
    }

    /// Parses whitespace-separated `U<k>`, `D<k>` and `F` tokens.
    pub fn parse(text: &str, model: Model, colors: u8) -> Result<Walk> {
        let steps = text
            .split_whitespace()
            .map(|tok| parse_step(tok, colors))
            .collect::<Result<Vec<_>>>()?;
        Walk::new(steps, model, colors)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn colors(&self) -> u8 {
        self.colors
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Half-length `n`.
    pub fn half_len(&self) -> usize {
        self.steps.len() / 2
    }

    pub fn validate(&self) -> ValidityReport {
        let mut violations = Vec::new();
        let mut stack: Vec<u8> = Vec::new();
        let mut height: i64 = 0;
        for (i, step) in self.steps.iter().enumerate() {
            let site = i + 1;
            match *step {
                Step::Up(c) => stack.push(c),
                Step::Flat => {
                    if self.model == Model::Fredkin {
                        violations.push(Violation::FlatInFredkin { step: site });
                    }
                }
                Step::Down(c) => {
                    if let Some(open) = stack.pop() {
                        if open != c {
                            violations.push(Violation::ColorMismatch {
                                step: site,
                                expected: open,
                                found: c,
                            });
                        }
                    }
                }
            }
            height += step.delta();
            if height < 0 {
                violations.push(Violation::NegativeHeight { step: site });
            }
        }
        if height != 0 {
            violations.push(Violation::NonzeroEndpoint { height });
        }
        ValidityReport { violations }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    pub fn require_valid(&self) -> Result<()> {
        let report = self.validate();
        match report.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidWalk(format!("{self}: {v}"))),
        }
    }

    /// Heights `h_1..h_{2n}` after each step. Not validated.
    pub fn height_profile(&self) -> Vec<i64> {
        self.steps
            .iter()
            .scan(0i64, |h, s| {
                *h += s.delta();
                Some(*h)
            })
            .collect()
    }

    /// Sum of the heights at the interior cuts, which is the area under the path.
    pub fn area(&self) -> Result<u64> {
        self.require_valid()?;
        Ok(self.height_profile().iter().map(|&h| h as u64).sum())
    }

    pub fn max_height(&self) -> u64 {
        self.height_profile().into_iter().max().unwrap_or(0).max(0) as u64
    }

    /// Open-pair colors across the cut between sites `z` and `z + 1`.
    pub fn stack_at(&self, z: usize) -> Result<StackLabel> {
        let max = self.steps.len().saturating_sub(1);
        if z == 0 || z > max {
            return Err(Error::CutOutOfRange { z, max });
        }
        self.require_valid()?;
        let mut colors = Vec::new();
        for step in &self.steps[..z] {
            match *step {
                Step::Up(c) => colors.push(c),
                Step::Down(_) => {
                    colors.pop();
                }
                Step::Flat => {}
            }
        }
        Ok(StackLabel { colors })
    }

    /// The up/down matching induced by the stack discipline, ordered by `x`.
    pub fn matched_pairs(&self) -> Result<Vec<MatchedPair>> {
        self.require_valid()?;
        let mut open: Vec<(usize, u8)> = Vec::new();
        let mut pairs = Vec::new();
        for (i, step) in self.steps.iter().enumerate() {
            match *step {
                Step::Up(c) => open.push((i + 1, c)),
                Step::Down(_) => {
                    let (x, color) = open.pop().expect("validated");
                    pairs.push(MatchedPair { x, y: i + 1, color });
                }
                Step::Flat => {}
            }
        }
        pairs.sort();
        Ok(pairs)
    }

    pub fn pair_count(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s, Step::Up(_))).count()
    }

    /// The walk read right to left with ups and downs exchanged.
    pub fn reversed(&self) -> Walk {
        let steps = self
            .steps
            .iter()
            .rev()
            .map(|s| match *s {
                Step::Up(c) => Step::Down(c),
                Step::Down(c) => Step::Up(c),
                Step::Flat => Step::Flat,
            })
            .collect();
        Walk {
            steps,
            model: self.model,
            colors: self.colors,
        }
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self.steps.iter().map(Step::to_string).collect();
        f.pad(&text.join(" "))
    }
}

/// Number of valid walks of length `2n` with `j` colors, by a height recursion
/// where every up step contributes a factor `j`.
pub fn count_walks(n: usize, colors: u8, model: Model) -> BigUint {
    let len = 2 * n;
    let j = BigUint::from(colors);
    let mut row = vec![BigUint::zero(); n + 2];
    row[0] = BigUint::one();
    for pos in 0..len {
        let remaining = len - pos - 1;
        let mut next = vec![BigUint::zero(); n + 2];
        for (h, w) in row.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            if h < remaining {
                next[h + 1] += w * &j;
            }
            if model.has_flat() && h <= remaining {
                next[h] += w;
            }
            if h > 0 {
                next[h - 1] += w;
            }
        }
        row = next;
    }
    row[0].clone()
}

/// Lazy depth-first enumeration in lexicographic step order.
pub struct WalkIter {
    len: usize,
    colors: u8,
    model: Model,
    steps: Vec<Step>,
    open: Vec<u8>,
    started: bool,
    done: bool,
}

impl WalkIter {
    fn options(&self, pos: usize) -> Vec<Step> {
        let h = self.open.len();
        let remaining = self.len - pos - 1;
        let mut opts = Vec::new();
        if h < remaining {
            opts.extend((1..=self.colors).map(Step::Up));
        }
        if self.model.has_flat() && h <= remaining {
            opts.push(Step::Flat);
        }
        if let Some(&c) = self.open.last() {
            opts.push(Step::Down(c));
        }
        opts
    }

    fn push(&mut self, s: Step) {
        match s {
            Step::Up(c) => self.open.push(c),
            Step::Down(_) => {
                self.open.pop();
            }
            Step::Flat => {}
        }
        self.steps.push(s);
    }

    fn pop(&mut self) -> Option<Step> {
        let s = self.steps.pop()?;
        match s {
            Step::Up(_) => {
                self.open.pop();
            }
            Step::Down(c) => self.open.push(c),
            Step::Flat => {}
        }
        Some(s)
    }

    fn fill(&mut self) {
        while self.steps.len() < self.len {
            let first = self.options(self.steps.len())[0];
            self.push(first);
        }
    }
}

impl Iterator for WalkIter {
    type Item = Walk;

    fn next(&mut self) -> Option<Walk> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.fill();
        } else {
            loop {
                let Some(last) = self.pop() else {
                    self.done = true;
                    return None;
                };
                let opts = self.options(self.steps.len());
                let idx = opts.iter().position(|o| *o == last).expect("current option");
                if let Some(&next) = opts.get(idx + 1) {
                    self.push(next);
                    self.fill();
                    break;
                }
            }
        }
        Some(Walk {
            steps: self.steps.clone(),
            model: self.model,
            colors: self.colors,
        })
    }
}

/// Streams every valid walk once, in lexicographic order. Fails when the
/// total count exceeds `cap`.
pub fn enumerate_walks(n: usize, colors: u8, model: Model, cap: u64) -> Result<WalkIter> {
    if n == 0 || colors == 0 {
        return Err(Error::InvalidParameter("need n >= 1 and colors >= 1".into()));
    }
    let count = count_walks(n, colors, model);
    if count > BigUint::from(cap) {
        return Err(Error::cap("walk enumeration", count, cap));
    }
    Ok(WalkIter {
        len: 2 * n,
        colors,
        model,
        steps: Vec::with_capacity(2 * n),
        open: Vec::new(),
        started: false,
        done: false,
    })
}

/// Default cap on enumerated walks.
pub const DEFAULT_WALK_CAP: u64 = 5_000_000;
