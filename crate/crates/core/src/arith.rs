//! Weights used throughout the crate.
//!
//! Amplitudes of the deformed ground state are powers of `x = √t`. Two
//! arithmetic modes are supported and always chosen explicitly: exact
//! (rational coefficients, symbolic powers of `x`) and a signed log-domain
//! float that does not overflow for long chains.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Commutative semiring used by the transfer recursions and contractions.
pub trait Semiring: Clone + fmt::Debug {
    fn nil() -> Self;
    fn unit() -> Self;
    fn is_nil(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn from_count(k: u64) -> Self;

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::unit();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl Semiring for BigRational {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn from_count(k: u64) -> Self {
        BigRational::from_integer(BigInt::from(k))
    }
}

impl Semiring for f64 {
    fn nil() -> Self {
        0.0
    }
    fn unit() -> Self {
        1.0
    }
    fn is_nil(&self) -> bool {
        *self == 0.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn from_count(k: u64) -> Self {
        k as f64
    }
}

/// Signed number stored as `sign · exp(ln_abs)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogFloat {
    pub sign: i8,
    pub ln_abs: f64,
}

impl LogFloat {
    pub const ZERO: LogFloat = LogFloat {
        sign: 0,
        ln_abs: f64::NEG_INFINITY,
    };

    pub fn from_ln(ln_abs: f64) -> Self {
        if ln_abs == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            LogFloat { sign: 1, ln_abs }
        }
    }

    pub fn from_f64(v: f64) -> Self {
        if v == 0.0 {
            Self::ZERO
        } else {
            LogFloat {
                sign: if v > 0.0 { 1 } else { -1 },
                ln_abs: v.abs().ln(),
            }
        }
    }

    pub fn to_f64(self) -> f64 {
        match self.sign {
            0 => 0.0,
            s => f64::from(s) * self.ln_abs.exp(),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(other.sign != 0, "division by zero");
        if self.sign == 0 {
            return Self::ZERO;
        }
        LogFloat {
            sign: self.sign * other.sign,
            ln_abs: self.ln_abs - other.ln_abs,
        }
    }

    pub fn sqrt(&self) -> Self {
        assert!(self.sign >= 0, "sqrt of negative");
        if self.sign == 0 {
            return Self::ZERO;
        }
        LogFloat {
            sign: 1,
            ln_abs: 0.5 * self.ln_abs,
        }
    }

    pub fn abs(&self) -> Self {
        LogFloat {
            sign: self.sign.abs(),
            ln_abs: self.ln_abs,
        }
    }
}

impl Semiring for LogFloat {
    fn nil() -> Self {
        Self::ZERO
    }
    fn unit() -> Self {
        LogFloat {
            sign: 1,
            ln_abs: 0.0,
        }
    }
    fn is_nil(&self) -> bool {
        self.sign == 0
    }
    fn add(&self, other: &Self) -> Self {
        if self.sign == 0 {
            return *other;
        }
        if other.sign == 0 {
            return *self;
        }
        let (hi, lo) = if self.ln_abs >= other.ln_abs {
            (self, other)
        } else {
            (other, self)
        };
        let gap = lo.ln_abs - hi.ln_abs;
        if hi.sign == lo.sign {
            LogFloat {
                sign: hi.sign,
                ln_abs: hi.ln_abs + gap.exp().ln_1p(),
            }
        } else if gap == 0.0 {
            Self::ZERO
        } else {
            LogFloat {
                sign: hi.sign,
                ln_abs: hi.ln_abs + (-gap.exp()).ln_1p(),
            }
        }
    }
    fn mul(&self, other: &Self) -> Self {
        if self.sign == 0 || other.sign == 0 {
            return Self::ZERO;
        }
        LogFloat {
            sign: self.sign * other.sign,
            ln_abs: self.ln_abs + other.ln_abs,
        }
    }
    fn from_count(k: u64) -> Self {
        LogFloat::from_f64(k as f64)
    }
    fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return Self::unit();
        }
        if self.sign == 0 {
            return Self::ZERO;
        }
        LogFloat {
            sign: if self.sign < 0 && e % 2 == 1 { -1 } else { 1 },
            ln_abs: self.ln_abs * f64::from(e),
        }
    }
}

/// Natural log of a nonnegative big integer, accurate for any size.
pub fn ln_biguint(n: &BigUint) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().expect("finite").ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().expect("finite");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural log of |r|.
pub fn ln_abs_rational(r: &BigRational) -> f64 {
    ln_biguint(r.numer().magnitude()) - ln_biguint(r.denom().magnitude())
}

/// Converts a rational to f64 without intermediate overflow.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    sign * ln_abs_rational(r).exp()
}

fn rational_to_log(r: &BigRational) -> LogFloat {
    if r.is_zero() {
        return LogFloat::ZERO;
    }
    LogFloat {
        sign: if r.is_negative() { -1 } else { 1 },
        ln_abs: ln_abs_rational(r),
    }
}

/// `coeff · x^power` with `x = √t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub coeff: BigRational,
    pub power: u32,
}

impl Monomial {
    pub fn unit(power: u32) -> Self {
        Monomial {
            coeff: BigRational::one(),
            power,
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            coeff: &self.coeff * &other.coeff,
            power: self.power + other.power,
        }
    }

    /// `|value|²` at rational `t`, which is always rational.
    pub fn sq_at(&self, t: &BigRational) -> BigRational {
        &self.coeff * &self.coeff * Semiring::pow(t, self.power)
    }

    pub fn to_log(&self, t: &Deformation) -> LogFloat {
        let c = rational_to_log(&self.coeff);
        if c.is_nil() {
            return c;
        }
        if self.power == 0 {
            return c;
        }
        let ln_t = t.ln();
        if ln_t == f64::NEG_INFINITY {
            return LogFloat::ZERO;
        }
        LogFloat {
            sign: c.sign,
            ln_abs: c.ln_abs + 0.5 * f64::from(self.power) * ln_t,
        }
    }

    pub fn eval(&self, t: &Deformation) -> f64 {
        self.to_log(t).to_f64()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = self.coeff.is_one();
        match (one, self.power) {
            (_, 0) => write!(f, "{}", self.coeff),
            (true, 1) => write!(f, "x"),
            (true, p) => write!(f, "x^{p}"),
            (false, 1) => write!(f, "{}*x", self.coeff),
            (false, p) => write!(f, "{}*x^{p}", self.coeff),
        }
    }
}

/// Polynomial in `x = √t` with rational coefficients; zero terms are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct XPoly {
    terms: BTreeMap<u32, BigRational>,
}

impl XPoly {
    pub fn monomial(coeff: BigRational, power: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(power, coeff);
        }
        XPoly { terms }
    }

    pub fn x_pow(power: u32) -> Self {
        Self::monomial(BigRational::one(), power)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigRational)> {
        self.terms.iter().map(|(p, c)| (*p, c))
    }

    pub fn as_monomial(&self) -> Option<Monomial> {
        if self.terms.len() != 1 {
            return None;
        }
        let (p, c) = self.terms.iter().next()?;
        Some(Monomial {
            coeff: c.clone(),
            power: *p,
        })
    }

    pub fn eval(&self, t: &Deformation) -> LogFloat {
        self.terms
            .iter()
            .map(|(p, c)| {
                Monomial {
                    coeff: c.clone(),
                    power: *p,
                }
                .to_log(t)
            })
            .fold(LogFloat::ZERO, |acc, v| acc.add(&v))
    }
}

impl Semiring for XPoly {
    fn nil() -> Self {
        XPoly::default()
    }
    fn unit() -> Self {
        XPoly::x_pow(0)
    }
    fn is_nil(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (p, c) in &other.terms {
            let e = terms.entry(*p).or_insert_with(BigRational::zero);
            *e += c;
            if e.is_zero() {
                terms.remove(p);
            }
        }
        XPoly { terms }
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = XPoly::default();
        for (pa, ca) in &self.terms {
            for (pb, cb) in &other.terms {
                out = out.add(&XPoly::monomial(ca * cb, pa + pb));
            }
        }
        out
    }
    fn from_count(k: u64) -> Self {
        XPoly::monomial(BigRational::from_count(k), 0)
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.pad("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(p, c)| {
                Monomial {
                    coeff: c.clone(),
                    power: *p,
                }
                .to_string()
            })
            .collect();
        f.pad(&parts.join(" + "))
    }
}

/// Arithmetic mode of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(Error::InvalidParameter(format!("unknown mode `{other}`"))),
        }
    }
}

/// The deformation parameter `t`: rational (exact mode) or float.
#[derive(Clone, Debug, PartialEq)]
pub enum Deformation {
    Exact(BigRational),
    Float(f64),
}

impl Deformation {
    pub fn exact(numer: i64, denom: i64) -> Self {
        Deformation::Exact(BigRational::new(numer.into(), denom.into()))
    }

    pub fn mode(&self) -> Mode {
        match self {
            Deformation::Exact(_) => Mode::Exact,
            Deformation::Float(_) => Mode::Float,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Deformation::Exact(r) => rational_to_f64(r),
            Deformation::Float(v) => *v,
        }
    }

    pub fn ln(&self) -> f64 {
        match self {
            Deformation::Exact(r) => ln_abs_rational(r),
            Deformation::Float(v) => v.ln(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.to_f64() == 0.0
    }

    pub fn check_nonnegative(&self) -> Result<()> {
        let ok = match self {
            Deformation::Exact(r) => !r.is_negative(),
            Deformation::Float(v) => v.is_finite() && *v >= 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("t must be >= 0, got {self}")))
        }
    }

    /// Same value in the requested mode. Exact from float uses the decimal
    /// representation of the float.
    pub fn in_mode(&self, mode: Mode) -> Result<Deformation> {
        match (self, mode) {
            (Deformation::Exact(_), Mode::Exact) | (Deformation::Float(_), Mode::Float) => {
                Ok(self.clone())
            }
            (Deformation::Exact(r), Mode::Float) => Ok(Deformation::Float(rational_to_f64(r))),
            (Deformation::Float(v), Mode::Exact) => parse_decimal_exact(&v.to_string())
                .map(Deformation::Exact)
                .ok_or_else(|| Error::InvalidParameter(format!("t = {v} has no exact form"))),
        }
    }

    /// `t` as an element of the log-domain semiring.
    pub fn as_log(&self) -> LogFloat {
        match self {
            Deformation::Exact(r) => rational_to_log(r),
            Deformation::Float(v) => LogFloat::from_f64(*v),
        }
    }
}

impl fmt::Display for Deformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Deformation::Exact(r) => write!(f, "{r}"),
            Deformation::Float(v) => write!(f, "{v}"),
        }
    }
}

/// Parses a plain decimal literal (`0.05`, `-1.25`, `3`) into an exact rational.
pub fn parse_decimal_exact(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((a, b)) => (a, b),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().ok()?
    };
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    let r = BigRational::new(numer, denom);
    Some(if neg { -r } else { r })
}

impl FromStr for Deformation {
    type Err = Error;

    /// `p/q` or an integer literal gives exact mode; anything else parsed as
    /// a float gives float mode.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidParameter(format!("cannot parse t from `{s}`"));
        let t = if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Deformation::Exact(BigRational::new(p, q))
        } else if let Ok(i) = s.parse::<BigInt>() {
            Deformation::Exact(BigRational::from_integer(i))
        } else {
            let v: f64 = s.parse().map_err(|_| bad())?;
            Deformation::Float(v)
        };
        t.check_nonnegative()?;
        Ok(t)
    }
}

/// A scalar result in the mode it was computed in.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(BigRational),
    Float(LogFloat),
}

impl Scalar {
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => rational_to_f64(r),
            Scalar::Float(l) => l.to_f64(),
        }
    }

    /// ln|value|, finite even where `to_f64` would overflow.
    pub fn ln(&self) -> f64 {
        match self {
            Scalar::Exact(r) => ln_abs_rational(r),
            Scalar::Float(l) => {
                if l.sign == 0 {
                    f64::NEG_INFINITY
                } else {
                    l.ln_abs
                }
            }
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Exact(_) => Mode::Exact,
            Scalar::Float(_) => Mode::Float,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{r}"),
            Scalar::Float(l) => write!(f, "{}", l.to_f64()),
        }
    }
}
