//! Partitions, skew shapes, β-sets and n-ribbon strip tilings.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer partition. Trailing zeros are stripped on construction, so
/// structural equality is partition equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidShape(format!(
                "parts {parts:?} are not weakly decreasing"
            )));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidShape(format!("interior zero part in {parts:?}")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Builds from parts already known to be a partition (zeros allowed at the end).
    pub(crate) fn from_sorted(mut parts: Vec<u32>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn first(&self) -> u32 {
        self.part(0)
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().enumerate().all(|(i, &p)| p <= self.0[i])
    }

    pub fn has_cell(&self, row: usize, col: u32) -> bool {
        col < self.part(row)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.first() as usize;
        let mut out = vec![0u32; width];
        for &p in &self.0 {
            for c in out.iter_mut().take(p as usize) {
                *c += 1;
            }
        }
        Partition(out)
    }

    /// β-set with `r` entries: `λ_i + r − i + 1` for `i = 1..r`.
    pub fn to_beta(&self, r: usize) -> Result<BetaSet> {
        if r < self.len() {
            return Err(Error::InvalidShape(format!(
                "{self} has {} parts, more than r = {r}",
                self.len()
            )));
        }
        let offsets = (0..r).map(|i| self.part(i) + (r - i) as u32).collect();
        Ok(BetaSet { offsets })
    }

    pub fn from_beta(beta: &BetaSet) -> Result<Partition> {
        let r = beta.offsets.len();
        if beta.offsets.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidShape(format!(
                "β-set {:?} is not strictly decreasing",
                beta.offsets
            )));
        }
        let mut parts = Vec::with_capacity(r);
        for (i, &b) in beta.offsets.iter().enumerate() {
            let shift = (r - i) as u32;
            if b < shift {
                return Err(Error::InvalidShape(format!(
                    "β-set {:?} has an entry below its position",
                    beta.offsets
                )));
            }
            parts.push(b - shift);
        }
        Ok(Partition::from_sorted(parts))
    }

    /// Column mask of the β-set: bit `c − 1` is set when column `c` holds a particle.
    pub fn mask(&self, r: usize) -> Result<u128> {
        let beta = self.to_beta(r)?;
        let mut m = 0u128;
        for &b in &beta.offsets {
            if b > 128 {
                return Err(Error::CapExceeded(format!("column {b} exceeds 128")));
            }
            m |= 1u128 << (b - 1);
        }
        Ok(m)
    }

    pub fn from_mask(mask: u128) -> Partition {
        let mut cols: Vec<u32> = (0..128u32).filter(|&j| mask >> j & 1 == 1).map(|j| j + 1).collect();
        cols.reverse();
        let r = cols.len();
        let parts = cols
            .iter()
            .enumerate()
            .map(|(i, &b)| b - (r - i) as u32)
            .collect();
        Partition::from_sorted(parts)
    }

    /// All partitions `ν` with `self ⊆ ν ⊆ outer`.
    pub fn interval(&self, outer: &Partition) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; outer.len()];
        fn rec(i: usize, lo: &Partition, hi: &Partition, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if i == cur.len() {
                out.push(Partition::from_sorted(cur.clone()));
                return;
            }
            let cap = if i == 0 { hi.part(0) } else { cur[i - 1].min(hi.part(i)) };
            for v in lo.part(i)..=cap {
                cur[i] = v;
                rec(i + 1, lo, hi, cur, out);
            }
        }
        if outer.contains(self) {
            rec(0, self, outer, &mut cur, &mut out);
        }
        out
    }

    /// Every partition of `k`, in reverse lexicographic order.
    pub fn all_of_size(k: u32) -> Vec<Partition> {
        fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(k, k, &mut Vec::new(), &mut out);
        out
    }

    /// Partitions of size at most `k`, grouped by size.
    pub fn all_up_to(k: u32) -> Vec<Partition> {
        (0..=k).flat_map(Partition::all_of_size).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("∅");
        }
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses a comma list such as `3,3` or `(4,1)`. Empty input and `0` give ∅.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let t = t.trim();
        if t.is_empty() || t == "∅" {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad partition {s:?}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        Partition::new(parts)
    }
}

/// `λ + ρ` for a fixed number of particles.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BetaSet {
    pub offsets: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SkewShape {
    pub outer: Partition,
    pub inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        if !outer.contains(&inner) {
            return Err(Error::InvalidShape(format!("{inner} is not contained in {outer}")));
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn straight(outer: Partition) -> Self {
        SkewShape {
            outer,
            inner: Partition::empty(),
        }
    }

    pub fn size(&self) -> u32 {
        self.outer.size() - self.inner.size()
    }

    pub fn has_cell(&self, row: usize, col: u32) -> bool {
        self.outer.has_cell(row, col) && !self.inner.has_cell(row, col)
    }

    pub fn conjugate(&self) -> SkewShape {
        SkewShape {
            outer: self.outer.conjugate(),
            inner: self.inner.conjugate(),
        }
    }

    pub fn cells(&self) -> Vec<(usize, u32)> {
        let mut out = Vec::new();
        for r in 0..self.outer.len() {
            for c in self.inner.part(r)..self.outer.part(r) {
                out.push((r, c));
            }
        }
        out
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.outer, self.inner)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StripMode {
    Horizontal,
    Vertical,
    Any,
}

impl fmt::Display for StripMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StripMode::Horizontal => "horizontal",
            StripMode::Vertical => "vertical",
            StripMode::Any => "any",
        })
    }
}

/// A ribbon as a sorted list of `(row, col)` cells, 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ribbon {
    pub cells: Vec<(usize, u32)>,
}

impl Ribbon {
    pub fn height(&self) -> u32 {
        let first = self.cells.first().map(|c| c.0).unwrap_or(0);
        let last = self.cells.last().map(|c| c.0).unwrap_or(0);
        (last - first + 1) as u32
    }

    pub fn spin(&self) -> u32 {
        self.height() - 1
    }

    /// Top-right cell.
    pub fn head(&self) -> (usize, u32) {
        let top = self.cells[0].0;
        *self.cells.iter().rfind(|c| c.0 == top).expect("nonempty ribbon")
    }

    /// Bottom-left cell.
    pub fn tail(&self) -> (usize, u32) {
        let bottom = self.cells.last().expect("nonempty ribbon").0;
        *self.cells.iter().find(|c| c.0 == bottom).expect("nonempty ribbon")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tiling {
    pub ribbons: Vec<Ribbon>,
    pub spin: u32,
}

fn ribbon_allowed(r: &Ribbon, s: &SkewShape, mode: StripMode) -> bool {
    match mode {
        StripMode::Any => true,
        StripMode::Horizontal => {
            let (row, col) = r.head();
            row == 0 || !s.has_cell(row - 1, col)
        }
        StripMode::Vertical => {
            let (row, col) = r.tail();
            col == 0 || !s.has_cell(row, col - 1)
        }
    }
}

/// Partitions obtained by removing one n-ribbon from `lam`, paired with the ribbon.
pub fn removable_ribbons(lam: &Partition, n: u32) -> Vec<(Partition, Ribbon)> {
    let r = lam.len();
    if r == 0 {
        return Vec::new();
    }
    let beta: Vec<u32> = (0..r).map(|i| lam.part(i) + (r - 1 - i) as u32).collect();
    let occupied: BTreeSet<u32> = beta.iter().copied().collect();
    let mut out = Vec::new();
    for &b in &beta {
        if b < n || occupied.contains(&(b - n)) {
            continue;
        }
        let mut nb: Vec<u32> = beta.iter().map(|&x| if x == b { b - n } else { x }).collect();
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<u32> = nb.iter().enumerate().map(|(i, &x)| x - (r - 1 - i) as u32).collect();
        let smaller = Partition::from_sorted(parts);
        let cells = SkewShape {
            outer: lam.clone(),
            inner: smaller.clone(),
        }
        .cells();
        out.push((smaller, Ribbon { cells }));
    }
    out
}

/// All tilings of `s` by n-ribbons that can be peeled off one at a time
/// (each intermediate shape a partition), filtered by strip mode.
pub fn ribbon_tilings(s: &SkewShape, n: u32, mode: StripMode) -> Vec<Tiling> {
    if n == 0 || s.size() % n != 0 {
        return Vec::new();
    }
    let mut memo: HashMap<Partition, Vec<BTreeSet<Ribbon>>> = HashMap::new();
    let sets = tilings_rec(&s.outer, s, n, mode, &mut memo);
    let mut out: Vec<Tiling> = sets
        .into_iter()
        .map(|set| {
            let ribbons: Vec<Ribbon> = set.into_iter().collect();
            let spin = ribbons.iter().map(Ribbon::spin).sum();
            Tiling { ribbons, spin }
        })
        .collect();
    out.sort();
    out
}

fn tilings_rec(
    cur: &Partition,
    s: &SkewShape,
    n: u32,
    mode: StripMode,
    memo: &mut HashMap<Partition, Vec<BTreeSet<Ribbon>>>,
) -> Vec<BTreeSet<Ribbon>> {
    if *cur == s.inner {
        return vec![BTreeSet::new()];
    }
    if let Some(v) = memo.get(cur) {
        return v.clone();
    }
    let mut found: BTreeSet<BTreeSet<Ribbon>> = BTreeSet::new();
    for (smaller, ribbon) in removable_ribbons(cur, n) {
        if !smaller.contains(&s.inner) || !ribbon_allowed(&ribbon, s, mode) {
            continue;
        }
        for mut rest in tilings_rec(&smaller, s, n, mode, memo) {
            rest.insert(ribbon.clone());
            found.insert(rest);
        }
    }
    let v: Vec<BTreeSet<Ribbon>> = found.into_iter().collect();
    memo.insert(cur.clone(), v.clone());
    v
}

/// Spin of the unique `mode` strip tiling of `s`, `None` if there is none.
/// More than one tiling is reported as an error rather than silently chosen.
pub fn strip_spin(s: &SkewShape, n: u32, mode: StripMode) -> Result<Option<u32>> {
    let t = ribbon_tilings(s, n, mode);
    match t.len() {
        0 => Ok(None),
        1 => Ok(Some(t[0].spin)),
        count => Err(Error::NonUniqueTiling {
            outer: s.outer.to_string(),
            inner: s.inner.to_string(),
            n: n as usize,
            mode: mode.to_string(),
            count,
        }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StripResult {
    pub shape: Partition,
    pub spin: u32,
}

/// Bounds on the shapes a search may visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeCap {
    pub max_part: u32,
    pub max_len: usize,
}

impl ShapeCap {
    pub fn admits(&self, p: &Partition) -> bool {
        p.first() <= self.max_part && p.len() <= self.max_len
    }
}

/// Every `λ ⊇ μ` reachable by a single `mode` strip of `k` n-ribbons.
pub fn add_strips(
    mu: &Partition,
    n: u32,
    k: u32,
    mode: StripMode,
    cap: Option<ShapeCap>,
) -> Result<Vec<StripResult>> {
    if k == 0 {
        return Ok(vec![StripResult {
            shape: mu.clone(),
            spin: 0,
        }]);
    }
    // k single-ribbon additions reach every candidate; the tiler then decides.
    let mut frontier: BTreeSet<Partition> = BTreeSet::new();
    frontier.insert(mu.clone());
    for _ in 0..k {
        let mut next = BTreeSet::new();
        for p in &frontier {
            for big in addable_ribbons(p, n) {
                if cap.map_or(true, |c| c.admits(&big)) {
                    next.insert(big);
                }
            }
        }
        frontier = next;
    }
    let mut out = Vec::new();
    for lam in frontier {
        let s = SkewShape {
            outer: lam.clone(),
            inner: mu.clone(),
        };
        if let Some(spin) = strip_spin(&s, n, mode)? {
            out.push(StripResult { shape: lam, spin });
        }
    }
    Ok(out)
}

/// Every `ν ⊆ λ` with `λ/ν` a single `mode` strip of `k` n-ribbons, found by
/// scanning sub-partitions of the right size.
pub fn remove_strips(lam: &Partition, n: u32, k: u32, mode: StripMode) -> Result<Vec<StripResult>> {
    if k == 0 {
        return Ok(vec![StripResult {
            shape: lam.clone(),
            spin: 0,
        }]);
    }
    let removed = n * k;
    if removed > lam.size() {
        return Ok(Vec::new());
    }
    let target = lam.size() - removed;
    let mut out = Vec::new();
    for nu in Partition::empty().interval(lam) {
        if nu.size() != target {
            continue;
        }
        let s = SkewShape {
            outer: lam.clone(),
            inner: nu.clone(),
        };
        if let Some(spin) = strip_spin(&s, n, mode)? {
            out.push(StripResult { shape: nu, spin });
        }
    }
    out.sort();
    Ok(out)
}

fn addable_ribbons(p: &Partition, n: u32) -> Vec<Partition> {
    // Pad with n empty rows so that tall ribbons fit below the last part.
    let r = p.len() + n as usize;
    let beta: Vec<u32> = (0..r).map(|i| p.part(i) + (r - 1 - i) as u32).collect();
    let occupied: BTreeSet<u32> = beta.iter().copied().collect();
    let mut out = Vec::new();
    for &b in &beta {
        if occupied.contains(&(b + n)) {
            continue;
        }
        let mut nb: Vec<u32> = beta.iter().map(|&x| if x == b { b + n } else { x }).collect();
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let parts = nb.iter().enumerate().map(|(i, &x)| x - (r - 1 - i) as u32).collect();
        out.push(Partition::from_sorted(parts));
    }
    out
}

/// Removes n-ribbons until none remain removable.
pub fn n_core(lam: &Partition, n: u32) -> Partition {
    n_core_with(lam, n, |_| 0)
}

/// As [`n_core`], letting `choose` pick which removable ribbon goes next
/// (it receives the number of options and returns an index).
pub fn n_core_with<F: FnMut(usize) -> usize>(lam: &Partition, n: u32, mut choose: F) -> Partition {
    let mut cur = lam.clone();
    if n == 0 {
        return cur;
    }
    loop {
        let opts = removable_ribbons(&cur, n);
        if opts.is_empty() {
            return cur;
        }
        let i = choose(opts.len()) % opts.len();
        cur = opts[i].0.clone();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p("3,3").conjugate(), p("2,2,2"));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p("4,2,1").conjugate(), p("3,2,1,1"));
    }

    #[test]
    fn beta_examples() {
        assert_eq!(p("3,3").to_beta(2).unwrap().offsets, vec![5, 4]);
        assert_eq!(Partition::empty().to_beta(3).unwrap().offsets, vec![3, 2, 1]);
        assert!(p("1,1,1").to_beta(2).is_err());
        let b = p("8,6,4,3").to_beta(4).unwrap();
        assert_eq!(b.offsets, vec![12, 9, 6, 4]);
        assert_eq!(Partition::from_beta(&b).unwrap(), p("8,6,4,3"));
    }

    #[test]
    fn mask_round_trip() {
        let lam = p("4,1");
        let m = lam.mask(4).unwrap();
        assert_eq!(m, 0b1000_1011);
        assert_eq!(Partition::from_mask(m), lam);
    }

    #[test]
    fn three_cell_ribbons_have_expected_spins() {
        // column, two L-shapes and a row: spins 2, 1, 1, 0
        let cases = [("1,1,1", "", 2), ("2,1", "", 1), ("2,2", "1", 1), ("3", "", 0)];
        for (o, i, spin) in cases {
            let s = SkewShape::new(p(o), p(i)).unwrap();
            let t = ribbon_tilings(&s, 3, StripMode::Any);
            assert_eq!(t.len(), 1, "{s}");
            assert_eq!(t[0].spin, spin, "{s}");
        }
    }

    #[test]
    fn two_by_three_dominoes() {
        let s = SkewShape::straight(p("3,3"));
        let h = ribbon_tilings(&s, 2, StripMode::Horizontal);
        assert_eq!(h.len(), 1);
        assert_eq!(h[0].spin, 3);
        assert_eq!(ribbon_tilings(&s, 2, StripMode::Any).len(), 3);
    }

    #[test]
    fn six_ribbon_example() {
        let s = SkewShape::new(p("4,4,1"), p("3")).unwrap();
        let t = ribbon_tilings(&s, 6, StripMode::Any);
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].spin, 2);
        let adds = add_strips(&p("3"), 6, 1, StripMode::Horizontal, None).unwrap();
        assert!(adds.contains(&StripResult { shape: p("4,4,1"), spin: 2 }));
    }

    #[test]
    fn add_strips_single_entry_per_shape() {
        let adds = add_strips(&Partition::empty(), 2, 3, StripMode::Horizontal, None).unwrap();
        let hits: Vec<_> = adds.iter().filter(|r| r.shape == p("3,3")).collect();
        assert_eq!(hits, vec![&StripResult { shape: p("3,3"), spin: 3 }]);
        assert_eq!(
            add_strips(&p("2,1"), 3, 0, StripMode::Vertical, None).unwrap(),
            vec![StripResult { shape: p("2,1"), spin: 0 }]
        );
    }

    #[test]
    fn core_examples() {
        assert_eq!(n_core(&p("3,3"), 2), Partition::empty());
        assert_eq!(n_core(&p("1"), 2), p("1"));
        assert_eq!(n_core(&p("2,1"), 2), p("2,1"));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(p("(4,1)"), p("4,1"));
        assert_eq!(p("0"), Partition::empty());
        assert!("1,2".parse::<Partition>().is_err());
    }
}
