//! Fock space spanned by partitions, with the four strip operators.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{rat, MPoly};
use crate::shapes::{add_strips, remove_strips, Partition, ShapeCap, SkewShape, StripMode};
use crate::tableaux::{AlphabetOrder, LetterKind};

/// A finite linear combination of basis vectors `|λ⟩`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FockVector {
    terms: BTreeMap<Partition, MPoly>,
}

impl FockVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(p: Partition) -> Self {
        let mut v = Self::zero();
        v.add(p, &MPoly::one());
        v
    }

    pub fn add(&mut self, p: Partition, c: &MPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &FockVector, c: &MPoly) {
        for (p, v) in &other.terms {
            self.add(p.clone(), &(v * c));
        }
    }

    /// `⟨self, λ⟩`.
    pub fn coeff(&self, p: &Partition) -> MPoly {
        self.terms.get(p).cloned().unwrap_or_else(MPoly::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &MPoly)> {
        self.terms.iter()
    }

    pub fn sub(&self, other: &FockVector) -> FockVector {
        let mut out = self.clone();
        out.add_scaled(other, &MPoly::int(-1));
        out
    }

    /// Largest first part and length among the basis vectors present.
    pub fn extent(&self) -> (u32, usize) {
        self.terms
            .keys()
            .fold((0, 0), |(a, b), p| (a.max(p.first()), b.max(p.len())))
    }

    /// Keeps only basis vectors satisfying `keep`.
    pub fn retain<F: FnMut(&Partition) -> bool>(&mut self, mut keep: F) {
        self.terms.retain(|p, _| keep(p));
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(p, c)| format!("({c})|{p}⟩")).collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Operator {
    /// Adds a horizontal strip.
    U,
    /// Removes a horizontal strip.
    D,
    /// Adds a vertical strip.
    UTilde,
    /// Removes a vertical strip.
    DTilde,
}

impl Operator {
    fn mode(self) -> StripMode {
        match self {
            Operator::U | Operator::D => StripMode::Horizontal,
            Operator::UTilde | Operator::DTilde => StripMode::Vertical,
        }
    }
}

/// Applies the `k`-ribbon strip operator. `U`/`Ũ` add strips, `D`/`D̃`
/// remove them; each resulting basis vector picks up `q^spin`. Results
/// outside `cap` are an error, never a silent truncation.
pub fn apply_operator(op: Operator, k: u32, v: &FockVector, n: u32, cap: Option<ShapeCap>) -> Result<FockVector> {
    let mut out = FockVector::zero();
    for (p, c) in v.terms() {
        let results = match op {
            Operator::U | Operator::UTilde => add_strips(p, n, k, op.mode(), None)?,
            Operator::D | Operator::DTilde => remove_strips(p, n, k, op.mode())?,
        };
        for r in results {
            if let Some(cap) = cap {
                if !cap.admits(&r.shape) {
                    return Err(Error::CapExceeded(format!(
                        "{:?}_{k} reached {} beyond max part {} / length {}",
                        op, r.shape, cap.max_part, cap.max_len
                    )));
                }
            }
            out.add(r.shape, &(c * &MPoly::q_pow(r.spin as i32)));
        }
    }
    Ok(out)
}

/// `U`/`Ũ` restricted to results inside `outer`, pruning the search early.
fn add_within(op: Operator, k: u32, v: &FockVector, n: u32, outer: &Partition) -> Result<FockVector> {
    let cap = ShapeCap {
        max_part: outer.first(),
        max_len: outer.len(),
    };
    let mut out = FockVector::zero();
    for (p, c) in v.terms() {
        for r in add_strips(p, n, k, op.mode(), Some(cap))? {
            if outer.contains(&r.shape) {
                out.add(r.shape, &(c * &MPoly::q_pow(r.spin as i32)));
            }
        }
    }
    Ok(out)
}

/// `κ(h_j)` and `κ(e_j)` for `j = 0..=j_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaValues {
    pub n: u32,
    pub h: Vec<MPoly>,
    pub e: Vec<MPoly>,
}

/// `a_k = 1 + q^{2k} + … + q^{2k(n−1)}`.
pub fn heisenberg_a(n: u32, k: u32) -> MPoly {
    (0..n).fold(MPoly::zero(), |acc, t| acc + MPoly::q_pow((2 * k * t) as i32))
}

fn z_lambda(p: &Partition) -> BigRational {
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    for &x in p.parts() {
        *counts.entry(x).or_insert(0) += 1;
    }
    let mut z = BigRational::one();
    for (part, m) in counts {
        for i in 1..=m {
            z *= rat(part as i64) * rat(i as i64);
        }
    }
    z
}

/// Evaluates `κ` on `h_j` and `e_j` through the power-sum expansions.
pub fn kappa(n: u32, j_max: u32) -> Result<KappaValues> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let mut h = Vec::new();
    let mut e = Vec::new();
    for j in 0..=j_max {
        let mut hj = MPoly::zero();
        let mut ej = MPoly::zero();
        for p in Partition::all_of_size(j) {
            let prod = p
                .parts()
                .iter()
                .fold(MPoly::one(), |acc, &k| &acc * &heisenberg_a(n, k));
            let term = prod.scalar_mul(&z_lambda(&p).recip());
            hj += &term;
            let sign = if (j as usize + p.len()) % 2 == 0 { 1 } else { -1 };
            ej += &term.scalar_mul(&rat(sign));
        }
        for poly in [&hj, &ej] {
            if poly.terms().any(|(_, c)| !c.is_integer()) {
                return Err(Error::InvalidArgument(format!(
                    "kappa value at j = {j} is not integral: {poly}"
                )));
            }
        }
        h.push(hj);
        e.push(ej);
    }
    Ok(KappaValues { n, h, e })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CommutationPair {
    /// `D_b U_a`
    DU,
    /// `D̃_b Ũ_a`
    DTildeUTilde,
    /// `D̃_b U_a`
    DTildeU,
    /// `D_b Ũ_a`
    DUTilde,
}

impl CommutationPair {
    pub const ALL: [CommutationPair; 4] = [
        CommutationPair::DU,
        CommutationPair::DTildeUTilde,
        CommutationPair::DTildeU,
        CommutationPair::DUTilde,
    ];

    fn ops(self) -> (Operator, Operator) {
        match self {
            CommutationPair::DU => (Operator::D, Operator::U),
            CommutationPair::DTildeUTilde => (Operator::DTilde, Operator::UTilde),
            CommutationPair::DTildeU => (Operator::DTilde, Operator::U),
            CommutationPair::DUTilde => (Operator::D, Operator::UTilde),
        }
    }

    fn uses_h(self) -> bool {
        matches!(self, CommutationPair::DU | CommutationPair::DTildeUTilde)
    }
}

impl fmt::Display for CommutationPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CommutationPair::DU => "DU",
            CommutationPair::DTildeUTilde => "D~U~",
            CommutationPair::DTildeU => "D~U",
            CommutationPair::DUTilde => "DU~",
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CommutationEntry {
    pub shape: Partition,
    pub pair: String,
    pub a: u32,
    pub b: u32,
    pub residual: serde_json::Value,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CommutationReport {
    pub n: u32,
    pub entries: Vec<CommutationEntry>,
    pub failures: usize,
}

impl CommutationReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Checks `D_b U_a = Σ_j κ_j U_{a−j} D_{b−j}` (and the other three pairs)
/// on each basis vector of `domain`.
pub fn verify_commutation(
    n: u32,
    a: u32,
    b: u32,
    pair: CommutationPair,
    domain: &[Partition],
) -> Result<CommutationReport> {
    let kap = kappa(n, a.min(b))?;
    let (down, up) = pair.ops();
    let mut entries = Vec::new();
    let mut failures = 0;
    for mu in domain {
        let start = FockVector::basis(mu.clone());
        let lhs = apply_operator(down, b, &apply_operator(up, a, &start, n, None)?, n, None)?;
        let mut rhs = FockVector::zero();
        for j in 0..=a.min(b) {
            let k = if pair.uses_h() { &kap.h[j as usize] } else { &kap.e[j as usize] };
            let moved = apply_operator(up, a - j, &apply_operator(down, b - j, &start, n, None)?, n, None)?;
            rhs.add_scaled(&moved, k);
        }
        let diff = lhs.sub(&rhs);
        let residual = if diff.is_zero() {
            serde_json::Value::String("0".into())
        } else {
            failures += 1;
            serde_json::Value::String(diff.to_string())
        };
        entries.push(CommutationEntry {
            shape: mu.clone(),
            pair: pair.to_string(),
            a,
            b,
            residual,
        });
    }
    Ok(CommutationReport { n, entries, failures })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GeneratingKind {
    /// Add strips to the inner shape, letters in increasing order.
    F,
    /// Remove strips from the outer shape, letters in decreasing order.
    G,
}

/// The super LLT polynomial assembled from operator actions. Basis vectors
/// that can no longer reach the target are discarded after every step.
pub fn operator_polynomial(kind: GeneratingKind, s: &SkewShape, n: u32, order: &AlphabetOrder) -> Result<MPoly> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if s.size() % n != 0 {
        return Ok(MPoly::zero());
    }
    let max_k = s.size() / n;
    let (start, target) = match kind {
        GeneratingKind::F => (&s.inner, &s.outer),
        GeneratingKind::G => (&s.outer, &s.inner),
    };
    let mut v = FockVector::basis(start.clone());
    let letters: Vec<_> = match kind {
        GeneratingKind::F => order.letters.iter().collect(),
        GeneratingKind::G => order.letters.iter().rev().collect(),
    };
    for l in letters {
        let op = match (kind, l.kind) {
            (GeneratingKind::F, LetterKind::Horizontal) => Operator::U,
            (GeneratingKind::F, LetterKind::Vertical) => Operator::UTilde,
            (GeneratingKind::G, LetterKind::Horizontal) => Operator::D,
            (GeneratingKind::G, LetterKind::Vertical) => Operator::DTilde,
        };
        let mut next = FockVector::zero();
        for k in 0..=max_k {
            let moved = match kind {
                GeneratingKind::F => add_within(op, k, &v, n, &s.outer)?,
                GeneratingKind::G => apply_operator(op, k, &v, n, None)?,
            };
            next.add_scaled(&moved, &l.weight(k));
        }
        match kind {
            GeneratingKind::F => next.retain(|p| s.outer.contains(p)),
            GeneratingKind::G => next.retain(|p| p.contains(&s.inner)),
        }
        v = next;
    }
    Ok(v.coeff(target))
}

/// Convenience used by the Cauchy checks: `κ(h_j)` of the alphabet
/// `1, q², …, q^{2(n−1)}` by direct monomial expansion.
pub fn complete_homogeneous_in_q(n: u32, j: u32) -> MPoly {
    fn rec(start: u32, n: u32, left: u32, exp: i32, acc: &mut MPoly) {
        if left == 0 {
            acc.add_term(crate::poly::Monomial::q_pow(exp), BigRational::one());
            return;
        }
        for t in start..n {
            rec(t, n, left - 1, exp + 2 * t as i32, acc);
        }
    }
    let mut acc = MPoly::zero();
    rec(0, n, j, 0, &mut acc);
    acc
}

/// Elementary symmetric counterpart of [`complete_homogeneous_in_q`].
pub fn elementary_in_q(n: u32, j: u32) -> MPoly {
    fn rec(start: u32, n: u32, left: u32, exp: i32, acc: &mut MPoly) {
        if left == 0 {
            acc.add_term(crate::poly::Monomial::q_pow(exp), BigRational::one());
            return;
        }
        for t in start..n {
            rec(t + 1, n, left - 1, exp + 2 * t as i32, acc);
        }
    }
    let mut acc = MPoly::zero();
    rec(0, n, j, 0, &mut acc);
    if acc.is_zero() && j == 0 {
        return MPoly::one();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn kappa_small_values() {
        let k = kappa(2, 2).unwrap();
        assert!(k.h[0].is_one() && k.e[0].is_one());
        assert_eq!(k.h[1], &MPoly::one() + &MPoly::q_pow(2));
        assert_eq!(k.e[2], MPoly::q_pow(2));
        let k3 = kappa(3, 1).unwrap();
        assert_eq!(k3.h[1], heisenberg_a(3, 1));
    }

    #[test]
    fn u_zero_is_identity() {
        let v = FockVector::basis(p("2,1"));
        assert_eq!(apply_operator(Operator::U, 0, &v, 2, None).unwrap(), v);
    }

    #[test]
    fn u3_reaches_three_three_with_q_cubed() {
        let v = apply_operator(Operator::U, 3, &FockVector::basis(Partition::empty()), 2, None).unwrap();
        assert_eq!(v.coeff(&p("3,3")), MPoly::q_pow(3));
    }

    #[test]
    fn cap_is_enforced() {
        let cap = ShapeCap { max_part: 2, max_len: 2 };
        let r = apply_operator(Operator::U, 2, &FockVector::basis(Partition::empty()), 2, Some(cap));
        assert!(matches!(r, Err(Error::CapExceeded(_))));
    }

    #[test]
    fn commutation_small_cases() {
        let r = verify_commutation(1, 1, 1, CommutationPair::DU, &[Partition::empty()]).unwrap();
        assert!(r.passed());
        let r = verify_commutation(2, 1, 1, CommutationPair::DU, &[Partition::empty()]).unwrap();
        assert!(r.passed());
        let r = verify_commutation(2, 2, 1, CommutationPair::DTildeU, &[p("2")]).unwrap();
        assert!(r.passed());
    }
}
