//! Super n-ribbon tableaux and their generating polynomial.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{rat, MPoly, Monomial, VarId};
use crate::shapes::{strip_spin, Partition, SkewShape, StripMode};

/// Whether a letter adds a horizontal or a vertical strip.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LetterKind {
    Horizontal,
    Vertical,
}

impl LetterKind {
    pub fn strip_mode(self) -> StripMode {
        match self {
            LetterKind::Horizontal => StripMode::Horizontal,
            LetterKind::Vertical => StripMode::Vertical,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub name: String,
    pub kind: LetterKind,
    pub var: VarId,
}

impl Letter {
    /// Contribution of `k` ribbons carrying this letter: `x^k` or `(−y)^k`.
    pub fn weight(&self, k: u32) -> MPoly {
        let sign = if self.kind == LetterKind::Vertical && k % 2 == 1 { -1 } else { 1 };
        let m = Monomial::from_pairs([(self.var, k as i32)]).expect("nonnegative exponent");
        MPoly::term(rat(sign), m)
    }
}

/// A total order on the union of a horizontal and a vertical alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlphabetOrder {
    pub letters: Vec<Letter>,
}

impl AlphabetOrder {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        let order = AlphabetOrder { letters };
        order.validate()?;
        Ok(order)
    }

    /// Horizontal letters `1..=nx` followed by vertical letters `1'..=ny'`.
    pub fn standard(nx: u32, ny: u32) -> Self {
        let mut letters: Vec<Letter> = (1..=nx).map(horizontal).collect();
        letters.extend((1..=ny).map(vertical));
        AlphabetOrder { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn validate(&self) -> Result<()> {
        let mut last: BTreeMap<LetterKind, VarId> = BTreeMap::new();
        let mut seen = std::collections::BTreeSet::new();
        for l in &self.letters {
            if !seen.insert(l.var) {
                return Err(Error::InvalidArgument(format!("letter {} repeated", l.name)));
            }
            if let Some(prev) = last.get(&l.kind) {
                if prev.index >= l.var.index {
                    return Err(Error::InvalidArgument(format!(
                        "letters of one alphabet must appear in increasing order (at {})",
                        l.name
                    )));
                }
            }
            last.insert(l.kind, l.var);
        }
        Ok(())
    }

    /// The sub-order of letters `range`.
    pub fn slice(&self, range: std::ops::Range<usize>) -> AlphabetOrder {
        AlphabetOrder {
            letters: self.letters[range].to_vec(),
        }
    }

    /// Same letters with their spectral variables renamed.
    pub fn with_vars(&self, map: &BTreeMap<VarId, VarId>) -> AlphabetOrder {
        AlphabetOrder {
            letters: self
                .letters
                .iter()
                .map(|l| Letter {
                    var: *map.get(&l.var).unwrap_or(&l.var),
                    ..l.clone()
                })
                .collect(),
        }
    }

    /// Swaps the strip kind of every letter, keeping positions and variables,
    /// so the `x` letters become vertical and the `y` letters horizontal.
    pub fn flipped(&self) -> AlphabetOrder {
        AlphabetOrder {
            letters: self
                .letters
                .iter()
                .map(|l| Letter {
                    kind: match l.kind {
                        LetterKind::Horizontal => LetterKind::Vertical,
                        LetterKind::Vertical => LetterKind::Horizontal,
                    },
                    ..l.clone()
                })
                .collect(),
        }
    }
}

pub fn horizontal(i: u32) -> Letter {
    Letter {
        name: i.to_string(),
        kind: LetterKind::Horizontal,
        var: VarId::x(i),
    }
}

pub fn vertical(i: u32) -> Letter {
    Letter {
        name: format!("{i}'"),
        kind: LetterKind::Vertical,
        var: VarId::y(i),
    }
}

impl FromStr for AlphabetOrder {
    type Err = Error;

    /// Parses `1,1',2`: plain numbers are horizontal letters with `x_i`,
    /// primed numbers are vertical letters with `y_i`.
    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (num, kind) = match tok.strip_suffix('\'').or_else(|| tok.strip_suffix('′')) {
                Some(n) => (n, LetterKind::Vertical),
                None => (tok, LetterKind::Horizontal),
            };
            let i: u32 = num
                .parse()
                .map_err(|_| Error::Parse(format!("bad letter {tok:?} in order {s:?}")))?;
            letters.push(match kind {
                LetterKind::Horizontal => horizontal(i),
                LetterKind::Vertical => vertical(i),
            });
        }
        AlphabetOrder::new(letters)
    }
}

impl fmt::Display for AlphabetOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.letters.iter().map(|l| l.name.as_str()).collect();
        f.write_str(&names.join(","))
    }
}

/// A chain of partitions, one strip per letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SuperTableau {
    pub chain: Vec<Partition>,
    pub spins: Vec<u32>,
    pub counts: Vec<u32>,
}

impl SuperTableau {
    pub fn spin(&self) -> u32 {
        self.spins.iter().sum()
    }

    pub fn weight(&self, order: &AlphabetOrder) -> MPoly {
        let mut w = MPoly::q_pow(self.spin() as i32);
        for (l, &k) in order.letters.iter().zip(&self.counts) {
            if k > 0 {
                w = &w * &l.weight(k);
            }
        }
        w
    }
}

/// Memoized single-strip lookups between shapes of a fixed interval.
pub(crate) struct StripCache {
    n: u32,
    table: HashMap<(Partition, Partition, StripMode), Option<u32>>,
}

impl StripCache {
    pub(crate) fn new(n: u32) -> Self {
        StripCache {
            n,
            table: HashMap::new(),
        }
    }

    pub(crate) fn spin(&mut self, inner: &Partition, outer: &Partition, mode: StripMode) -> Result<Option<u32>> {
        let key = (inner.clone(), outer.clone(), mode);
        if let Some(v) = self.table.get(&key) {
            return Ok(*v);
        }
        let v = if !outer.contains(inner) || (outer.size() - inner.size()) % self.n != 0 {
            None
        } else if inner == outer {
            Some(0)
        } else {
            strip_spin(&SkewShape::new(outer.clone(), inner.clone())?, self.n, mode)?
        };
        self.table.insert(key, v);
        Ok(v)
    }
}

fn steps(s: &SkewShape, n: u32) -> Vec<Partition> {
    let base = s.inner.size();
    s.inner
        .interval(&s.outer)
        .into_iter()
        .filter(|p| (p.size() - base) % n == 0)
        .collect()
}

/// Every super n-ribbon tableau of shape `s`, letters taken in increasing order.
pub fn enumerate_tableaux(s: &SkewShape, n: u32, order: &AlphabetOrder) -> Result<Vec<SuperTableau>> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if s.size() % n != 0 {
        return Ok(Vec::new());
    }
    let shapes = steps(s, n);
    let mut cache = StripCache::new(n);
    let mut out = Vec::new();
    let mut chain = vec![s.inner.clone()];
    let mut spins = Vec::new();
    let mut counts = Vec::new();
    rec_tableaux(s, n, order, &shapes, &mut cache, &mut chain, &mut spins, &mut counts, &mut out)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn rec_tableaux(
    s: &SkewShape,
    n: u32,
    order: &AlphabetOrder,
    shapes: &[Partition],
    cache: &mut StripCache,
    chain: &mut Vec<Partition>,
    spins: &mut Vec<u32>,
    counts: &mut Vec<u32>,
    out: &mut Vec<SuperTableau>,
) -> Result<()> {
    let i = spins.len();
    let cur = chain.last().expect("chain starts at the inner shape").clone();
    if i == order.len() {
        if cur == s.outer {
            out.push(SuperTableau {
                chain: chain.clone(),
                spins: spins.clone(),
                counts: counts.clone(),
            });
        }
        return Ok(());
    }
    let mode = order.letters[i].kind.strip_mode();
    for next in shapes {
        if let Some(spin) = cache.spin(&cur, next, mode)? {
            chain.push(next.clone());
            spins.push(spin);
            counts.push((next.size() - cur.size()) / n);
            rec_tableaux(s, n, order, shapes, cache, chain, spins, counts, out)?;
            chain.pop();
            spins.pop();
            counts.pop();
        }
    }
    Ok(())
}

/// The super LLT polynomial `Σ_T q^spin(T) x^wt(T) (−y)^wt'(T)`, summed
/// shape by shape instead of tableau by tableau.
pub fn super_llt(s: &SkewShape, n: u32, order: &AlphabetOrder) -> Result<MPoly> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if s.size() % n != 0 {
        return Ok(MPoly::zero());
    }
    let shapes = steps(s, n);
    let mut cache = StripCache::new(n);
    let mut layer: BTreeMap<Partition, MPoly> = BTreeMap::new();
    layer.insert(s.inner.clone(), MPoly::one());
    for letter in &order.letters {
        let mode = letter.kind.strip_mode();
        let mut next: BTreeMap<Partition, MPoly> = BTreeMap::new();
        for (cur, coeff) in &layer {
            for target in shapes.iter().filter(|t| t.contains(cur)) {
                if let Some(spin) = cache.spin(cur, target, mode)? {
                    let k = (target.size() - cur.size()) / n;
                    let w = &(coeff * &letter.weight(k)) * &MPoly::q_pow(spin as i32);
                    let slot = next.entry(target.clone()).or_insert_with(MPoly::zero);
                    *slot += &w;
                }
            }
        }
        next.retain(|_, v| !v.is_zero());
        layer = next;
    }
    Ok(layer.remove(&s.outer).unwrap_or_else(MPoly::zero))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn parse_order() {
        let o: AlphabetOrder = "1,1',2".parse().unwrap();
        assert_eq!(o.letters[1].kind, LetterKind::Vertical);
        assert_eq!(o.letters[2].var, VarId::x(2));
        assert!("2,1".parse::<AlphabetOrder>().is_err());
        assert!("1,1".parse::<AlphabetOrder>().is_err());
        assert_eq!(o.to_string(), "1,1',2");
    }

    #[test]
    fn empty_shape_has_one_tableau() {
        let s = SkewShape::new(p("2,1"), p("2,1")).unwrap();
        let o = AlphabetOrder::standard(2, 1);
        assert_eq!(enumerate_tableaux(&s, 2, &o).unwrap().len(), 1);
        assert!(super_llt(&s, 2, &o).unwrap().is_one());
    }

    #[test]
    fn fifteen_super_tableaux() {
        let s = SkewShape::straight(p("3,3"));
        let o: AlphabetOrder = "1,1',2".parse().unwrap();
        let t = enumerate_tableaux(&s, 2, &o).unwrap();
        assert_eq!(t.len(), 15);
        let summed = t.iter().fold(MPoly::zero(), |acc, t| acc + t.weight(&o));
        assert_eq!(summed, super_llt(&s, 2, &o).unwrap());
    }
}
