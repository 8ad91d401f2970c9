//! Exact sparse multivariate polynomials over the rationals.
//!
//! The distinguished variable `q` may carry negative exponents; every other
//! variable is a spectral parameter and must stay nonnegative. Coefficients
//! are arbitrary-precision rationals, so no operation can overflow.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Variable families in canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    Q,
    X,
    Y,
    W,
    Z,
    Generic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct VarId {
    pub family: Family,
    pub index: u32,
}

impl VarId {
    pub const Q: VarId = VarId {
        family: Family::Q,
        index: 0,
    };

    pub fn new(family: Family, index: u32) -> Self {
        let index = if family == Family::Q { 0 } else { index };
        VarId { family, index }
    }
    pub fn x(i: u32) -> Self {
        Self::new(Family::X, i)
    }
    pub fn y(i: u32) -> Self {
        Self::new(Family::Y, i)
    }
    pub fn w(i: u32) -> Self {
        Self::new(Family::W, i)
    }
    pub fn z(i: u32) -> Self {
        Self::new(Family::Z, i)
    }
    pub fn generic(i: u32) -> Self {
        Self::new(Family::Generic, i)
    }

    pub fn is_q(&self) -> bool {
        self.family == Family::Q
    }

    pub fn name(&self) -> String {
        let prefix = match self.family {
            Family::Q => return "q".to_string(),
            Family::X => "x",
            Family::Y => "y",
            Family::W => "w",
            Family::Z => "z",
            Family::Generic => "g",
        };
        format!("{prefix}{}", self.index)
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl From<VarId> for String {
    fn from(v: VarId) -> String {
        v.name()
    }
}

impl TryFrom<String> for VarId {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl FromStr for VarId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "q" {
            return Ok(VarId::Q);
        }
        let mut chars = s.chars();
        let family = match chars.next() {
            Some('x') => Family::X,
            Some('y') => Family::Y,
            Some('w') => Family::W,
            Some('z') => Family::Z,
            Some('g') => Family::Generic,
            _ => return Err(Error::BadVariable(s.to_string())),
        };
        let rest = chars.as_str();
        if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::BadVariable(s.to_string()));
        }
        let index = rest
            .parse::<u32>()
            .map_err(|_| Error::BadVariable(s.to_string()))?;
        Ok(VarId::new(family, index))
    }
}

/// A monomial: sorted `(variable, exponent)` pairs with no zero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(VarId, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: VarId, e: i32) -> Result<Self> {
        Self::from_pairs([(v, e)])
    }

    pub fn q_pow(e: i32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(VarId::Q, e)])
        }
    }

    /// Builds a monomial, merging repeated variables. Rejects negative
    /// exponents on anything other than `q`.
    pub fn from_pairs<I: IntoIterator<Item = (VarId, i32)>>(pairs: I) -> Result<Self> {
        let mut map: BTreeMap<VarId, i32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        let mut out = Vec::with_capacity(map.len());
        for (v, e) in map {
            if e == 0 {
                continue;
            }
            if e < 0 && !v.is_q() {
                return Err(Error::NegativeExponent(v.name()));
            }
            out.push((v, e));
        }
        Ok(Monomial(out))
    }

    pub fn pairs(&self) -> &[(VarId, i32)] {
        &self.0
    }

    pub fn exponent(&self, v: VarId) -> i32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn q_exp(&self) -> i32 {
        self.exponent(VarId::Q)
    }

    /// Total degree in the spectral (non-`q`) variables.
    pub fn spectral_degree(&self) -> u64 {
        self.0
            .iter()
            .filter(|(v, _)| !v.is_q())
            .map(|&(_, e)| e as u64)
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }
}

impl Ord for Monomial {
    /// Lexicographic comparison of exponent vectors in canonical variable
    /// order, treating absent variables as exponent zero.
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, e)), None) => return e.cmp(&0),
                (None, Some(&(_, e))) => return 0.cmp(&e),
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return ea.cmp(&0),
                    Ordering::Greater => return 0.cmp(&eb),
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Exact polynomial: a finite map from monomials to nonzero rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn term(c: BigRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn var(v: VarId) -> Self {
        Self::term(BigRational::one(), Monomial(vec![(v, 1)]))
    }

    pub fn q() -> Self {
        Self::var(VarId::Q)
    }

    pub fn q_pow(e: i32) -> Self {
        Self::term(BigRational::one(), Monomial::q_pow(e))
    }

    /// `c * q^qe * v^ve`, the shape of every lattice vertex weight.
    pub fn scaled_q_var(c: i64, qe: i32, v: VarId, ve: u32) -> Self {
        let mut pairs = vec![(VarId::Q, qe)];
        if ve > 0 {
            pairs.push((v, ve as i32));
        }
        let m = Monomial::from_pairs(pairs).expect("nonnegative spectral exponent");
        Self::term(rat(c), m)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(it: I) -> Self {
        let mut p = MPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.is_one() && c.is_one())
                .unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scalar_mul(&self, c: &BigRational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, c: &BigRational, m: &Monomial) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(mm, k)| (mm.mul(m), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Largest spectral degree among the terms (0 for the zero polynomial).
    pub fn spectral_degree(&self) -> u64 {
        self.terms
            .keys()
            .map(Monomial::spectral_degree)
            .max()
            .unwrap_or(0)
    }

    /// Drops every term whose total spectral degree exceeds `bound`.
    pub fn truncate(&self, bound: u64) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.spectral_degree() <= bound)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Product truncated to spectral degree `bound`, skipping the discarded
    /// cross terms instead of computing them.
    pub fn mul_truncated(&self, other: &MPoly, bound: u64) -> MPoly {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            let da = ma.spectral_degree();
            if da > bound {
                continue;
            }
            for (mb, cb) in &other.terms {
                if da + mb.spectral_degree() > bound {
                    continue;
                }
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// Simultaneous substitution. Variables missing from `assignment` are
    /// left untouched. A negative power of `q` is only substitutable when the
    /// image of `q` is a single term, and the result must again have
    /// nonnegative spectral exponents.
    pub fn specialize(&self, assignment: &BTreeMap<VarId, MPoly>) -> Result<MPoly> {
        let mut cache: BTreeMap<(VarId, i32), MPoly> = BTreeMap::new();
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut acc = MPoly::constant(c.clone());
            for &(v, e) in m.pairs() {
                let factor = match assignment.get(&v) {
                    None => MPoly::term(BigRational::one(), Monomial(vec![(v, e)])),
                    Some(image) => match cache.get(&(v, e)) {
                        Some(p) => p.clone(),
                        None => {
                            let p = power_of(image, e, v)?;
                            cache.insert((v, e), p.clone());
                            p
                        }
                    },
                };
                acc = &acc * &factor;
                if acc.is_zero() {
                    break;
                }
            }
            out = out + acc;
        }
        Ok(out)
    }

    /// `q -> q^{-1}`.
    pub fn invert_q(&self) -> MPoly {
        MPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let pairs = m
                .pairs()
                .iter()
                .map(|&(v, e)| if v.is_q() { (v, -e) } else { (v, e) })
                .collect();
            (Monomial(pairs), c.clone())
        }))
    }

    /// Renames variables by a map; unmapped variables stay.
    pub fn rename(&self, map: &BTreeMap<VarId, VarId>) -> MPoly {
        MPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let pairs = m
                .pairs()
                .iter()
                .map(|&(v, e)| (*map.get(&v).unwrap_or(&v), e));
            (
                Monomial::from_pairs(pairs).expect("renaming keeps exponents"),
                c.clone(),
            )
        }))
    }

    /// Every variable occurring in the polynomial.
    pub fn variables(&self) -> Vec<VarId> {
        let mut vs: Vec<VarId> = self
            .terms
            .keys()
            .flat_map(|m| m.pairs().iter().map(|&(v, _)| v))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Canonical JSON: a sorted array of `{coeff: "p/q", exps: [[var, e], ...]}`.
    pub fn to_json_value(&self) -> serde_json::Value {
        let arr: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let exps: Vec<serde_json::Value> = m
                    .pairs()
                    .iter()
                    .map(|(v, e)| serde_json::json!([v.name(), e]))
                    .collect();
                serde_json::json!({ "coeff": format!("{}/{}", c.numer(), c.denom()), "exps": exps })
            })
            .collect();
        serde_json::Value::Array(arr)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("json serialization")
    }

    pub fn from_json_value(value: &serde_json::Value) -> Result<MPoly> {
        let arr = value
            .as_array()
            .ok_or_else(|| Error::Parse("polynomial JSON must be an array".into()))?;
        let mut p = MPoly::zero();
        for t in arr {
            let coeff = t
                .get("coeff")
                .and_then(|c| c.as_str())
                .ok_or_else(|| Error::Parse("term needs a string coeff".into()))?;
            let c = parse_rational(coeff)?;
            let exps = t
                .get("exps")
                .and_then(|e| e.as_array())
                .ok_or_else(|| Error::Parse("term needs an exps array".into()))?;
            let mut pairs = Vec::with_capacity(exps.len());
            for e in exps {
                let name = e.get(0).and_then(|v| v.as_str());
                let exp = e.get(1).and_then(|v| v.as_i64());
                match (name, exp) {
                    (Some(name), Some(exp)) => {
                        let exp = i32::try_from(exp)
                            .map_err(|_| Error::Parse(format!("exponent {exp} out of range")))?;
                        pairs.push((name.parse::<VarId>()?, exp));
                    }
                    _ => return Err(Error::Parse(format!("bad exponent entry {e}"))),
                }
            }
            p.add_term(Monomial::from_pairs(pairs)?, c);
        }
        Ok(p)
    }

    pub fn from_json(s: &str) -> Result<MPoly> {
        let v: serde_json::Value = serde_json::from_str(s)?;
        Self::from_json_value(&v)
    }
}

fn power_of(image: &MPoly, e: i32, v: VarId) -> Result<MPoly> {
    if e >= 0 {
        return Ok(image.pow(e as u32));
    }
    if image.len() != 1 {
        return Err(Error::InvalidArgument(format!(
            "cannot raise the image of {v} to a negative power: it is not a single term"
        )));
    }
    let (m, c) = image.terms().next().expect("one term");
    let inv_pairs: Vec<(VarId, i32)> = m.pairs().iter().map(|&(w, k)| (w, -k)).collect();
    let inv = MPoly::term(c.recip(), Monomial::from_pairs(inv_pairs)?);
    Ok(inv.pow((-e) as u32))
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

impl fmt::Display for MPoly {
    /// Human-readable form, highest terms first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(mut self, rhs: MPoly) -> MPoly {
        if self.terms.len() < rhs.terms.len() {
            let mut r = rhs;
            r += &self;
            return r;
        }
        self += &rhs;
        self
    }
}

impl AddAssign<&MPoly> for MPoly {
    fn add_assign(&mut self, rhs: &MPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        &self - &rhs
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}

/// Sign inside a binomial factor `1 ± q^{2t} u v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FactorSign {
    Plus,
    Minus,
}

/// Whether the factor multiplies or divides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FactorPlace {
    Numerator,
    Denominator,
}

/// `prod_{t=0}^{n-1} (1 ± q^{2t} u v)^{±1}` as a truncated series in which
/// the power of the product `u v` never exceeds `bound`. Denominator
/// factors are expanded as geometric series.
pub fn expand_product_factor(
    sign: FactorSign,
    place: FactorPlace,
    u: VarId,
    v: VarId,
    n: usize,
    bound: i64,
) -> Result<MPoly> {
    if bound < 0 {
        return Err(Error::InvalidArgument(format!("negative truncation bound {bound}")));
    }
    if u == v || u.is_q() || v.is_q() {
        return Err(Error::InvalidArgument(
            "product factor needs two distinct spectral variables".into(),
        ));
    }
    let bound = bound as u32;
    let s: i64 = match sign {
        FactorSign::Plus => 1,
        FactorSign::Minus => -1,
    };
    let uv_power = |k: u32| -> Monomial {
        Monomial::from_pairs([(u, k as i32), (v, k as i32)]).expect("nonnegative")
    };
    let degree_cap = 2 * bound as u64;
    let mut acc = MPoly::one();
    for t in 0..n {
        let t = t as i32;
        let factor = match place {
            FactorPlace::Numerator => {
                let mut f = MPoly::one();
                if bound >= 1 {
                    f.add_term(uv_power(1).mul(&Monomial::q_pow(2 * t)), rat(s));
                }
                f
            }
            FactorPlace::Denominator => {
                // 1/(1 ± a) = sum_k (∓a)^k
                let mut f = MPoly::zero();
                for k in 0..=bound {
                    let c = if s == 1 && k % 2 == 1 { -1 } else { 1 };
                    f.add_term(uv_power(k).mul(&Monomial::q_pow(2 * t * k as i32)), rat(c));
                }
                f
            }
        };
        acc = acc.mul_truncated(&factor, degree_cap);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x1() -> MPoly {
        MPoly::var(VarId::x(1))
    }

    #[test]
    fn additive_inverse_cancels() {
        let p = &(&x1() + &MPoly::q()) + &(-MPoly::q());
        assert_eq!(p, x1());
    }

    #[test]
    fn difference_of_squares() {
        let a = &MPoly::one() - &(&MPoly::q_pow(2) * &x1());
        let b = &MPoly::one() + &(&MPoly::q_pow(2) * &x1());
        let expected = &MPoly::one() - &(&MPoly::q_pow(4) * &x1().pow(2));
        assert_eq!(&a * &b, expected);
    }

    #[test]
    fn laurent_shift() {
        let p = &MPoly::q_pow(-1) * &(&MPoly::q_pow(3) + &MPoly::q());
        assert_eq!(p, &MPoly::q_pow(2) + &MPoly::one());
    }

    #[test]
    fn negative_spectral_exponent_rejected() {
        assert!(Monomial::var(VarId::x(1), -1).is_err());
        assert!(Monomial::var(VarId::Q, -3).is_ok());
    }

    #[test]
    fn truncation_examples() {
        let p = &(&MPoly::one() + &x1()) + &x1().pow(2);
        assert_eq!(p.truncate(1), &MPoly::one() + &x1());
        let at_bound = &(&MPoly::q_pow(5) * &x1()) * &MPoly::var(VarId::w(1));
        assert_eq!(at_bound.truncate(2), at_bound);
        let above = &(&x1() * &MPoly::var(VarId::y(1))) * &MPoly::var(VarId::z(1));
        assert!(above.truncate(2).is_zero());
    }

    #[test]
    fn geometric_series_factor() {
        let got = expand_product_factor(
            FactorSign::Minus,
            FactorPlace::Denominator,
            VarId::x(1),
            VarId::w(1),
            1,
            2,
        )
        .unwrap();
        let xw = &x1() * &MPoly::var(VarId::w(1));
        let expected = &(&MPoly::one() + &xw) + &xw.pow(2);
        assert_eq!(got, expected);
    }

    #[test]
    fn numerator_factor_n2() {
        let got = expand_product_factor(
            FactorSign::Plus,
            FactorPlace::Numerator,
            VarId::x(1),
            VarId::y(1),
            2,
            2,
        )
        .unwrap();
        let xy = &x1() * &MPoly::var(VarId::y(1));
        let one_plus_q2 = &MPoly::one() + &MPoly::q_pow(2);
        let expected = &(&MPoly::one() + &(&one_plus_q2 * &xy)) + &(&MPoly::q_pow(2) * &xy.pow(2));
        assert_eq!(got, expected);
    }

    #[test]
    fn negative_bound_rejected() {
        assert!(expand_product_factor(
            FactorSign::Plus,
            FactorPlace::Numerator,
            VarId::x(1),
            VarId::y(1),
            1,
            -1
        )
        .is_err());
    }

    #[test]
    fn specialize_examples() {
        let p = &x1() * &MPoly::q_pow(2);
        let mut a = BTreeMap::new();
        a.insert(VarId::x(1), MPoly::zero());
        assert!(p.specialize(&a).unwrap().is_zero());

        let s = &MPoly::q_pow(2) + &MPoly::q_pow(-2);
        let mut inv = BTreeMap::new();
        inv.insert(VarId::Q, MPoly::q_pow(-1));
        assert_eq!(s.specialize(&inv).unwrap(), s);
        assert_eq!(s.invert_q(), s);
    }

    #[test]
    fn specialize_rejects_negative_spectral() {
        // q^{-1} with q -> x1 would need x1^{-1}.
        let p = MPoly::q_pow(-1);
        let mut a = BTreeMap::new();
        a.insert(VarId::Q, x1());
        assert!(p.specialize(&a).is_err());
    }

    #[test]
    fn json_round_trip_and_order() {
        let p = &(&MPoly::q_pow(-2) * &x1()) - &MPoly::constant(BigRational::new(3.into(), 4.into()));
        let s = p.to_json();
        assert_eq!(
            s,
            r#"[{"coeff":"1/1","exps":[["q",-2],["x1",1]]},{"coeff":"-3/4","exps":[]}]"#
        );
        assert_eq!(MPoly::from_json(&s).unwrap(), p);
    }

    #[test]
    fn var_names_round_trip() {
        for v in [VarId::Q, VarId::x(3), VarId::y(1), VarId::w(12), VarId::z(2), VarId::generic(0)] {
            assert_eq!(v.name().parse::<VarId>().unwrap(), v);
        }
        assert!("x".parse::<VarId>().is_err());
        assert!("t1".parse::<VarId>().is_err());
    }

    #[test]
    fn display_is_readable() {
        let p = &(&MPoly::q_pow(3) * &x1().pow(2)) - &MPoly::int(2);
        assert_eq!(p.to_string(), "q^3*x1^2 - 2");
    }
}
