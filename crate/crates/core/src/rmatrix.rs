//! Diagonal R-vertices that swap two rows, their weights for every pair of
//! row kinds, and an exhaustive Yang-Baxter verifier.
//!
//! An R-vertex on n strands is a tuple of single-strand crossings. Each
//! crossing has four ends, NE `I`, SE `J`, SW `K` and NW `L`; the strands
//! run `K → I` and `L → J`. An end label is 1 for a left arrow.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{local_weight, render_tuple, LatticeSystem, Mono, RowKind};
use crate::poly::{MPoly, VarId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RType {
    N,
    SS,
    W,
    E,
    NN,
    S,
}

impl RType {
    pub const ALL: [RType; 6] = [RType::N, RType::SS, RType::W, RType::E, RType::NN, RType::S];

    pub fn name(self) -> &'static str {
        match self {
            RType::N => "N",
            RType::SS => "SS",
            RType::W => "W",
            RType::E => "E",
            RType::NN => "NN",
            RType::S => "S",
        }
    }
}

impl FromStr for RType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RType::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown crossing type {s:?}")))
    }
}

impl fmt::Display for RType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One single-strand crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct R1Config {
    pub i: bool,
    pub j: bool,
    pub k: bool,
    pub l: bool,
}

impl R1Config {
    pub fn from_bits(i: u32, j: u32, k: u32, l: u32) -> Self {
        R1Config {
            i: i == 1,
            j: j == 1,
            k: k == 1,
            l: l == 1,
        }
    }

    /// As many left arrows leave as enter.
    pub fn is_admissible(self) -> bool {
        (self.i as u8 + self.j as u8) == (self.k as u8 + self.l as u8)
    }

    pub fn all_admissible() -> Vec<R1Config> {
        let mut out = Vec::new();
        for bits in 0..16u32 {
            let c = R1Config::from_bits(bits >> 3 & 1, bits >> 2 & 1, bits >> 1 & 1, bits & 1);
            if c.is_admissible() {
                out.push(c);
            }
        }
        out
    }

    /// `"IJKL"` with `1` for a left arrow.
    pub fn key(self) -> String {
        [self.i, self.j, self.k, self.l]
            .iter()
            .map(|b| if *b { '1' } else { '0' })
            .collect()
    }

    pub fn from_key(s: &str) -> Result<Self> {
        let b: Vec<u32> = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::Parse(format!("bad crossing key {s:?}"))),
            })
            .collect::<Result<_>>()?;
        if b.len() != 4 {
            return Err(Error::Parse(format!("bad crossing key {s:?}")));
        }
        Ok(R1Config::from_bits(b[0], b[1], b[2], b[3]))
    }
}

/// Which crossing type each admissible single-strand configuration has.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RTypeAssignment {
    pub map: BTreeMap<R1Config, RType>,
}

pub const FIXTURE_ENV: &str = "SUPERLLT_RTYPES_FIXTURE";
const FIXTURE_FORMAT: &str = "superllt-rtypes";
const FIXTURE_VERSION: u32 = 1;
const BUNDLED_FIXTURE: &str = include_str!("../fixtures/rtypes.json");

#[derive(Serialize, Deserialize)]
struct FixtureFile {
    format: String,
    version: u32,
    types: BTreeMap<String, String>,
}

impl RTypeAssignment {
    fn fixed_pair() -> [(R1Config, RType); 2] {
        [
            (R1Config::from_bits(0, 0, 0, 0), RType::E),
            (R1Config::from_bits(1, 1, 1, 1), RType::W),
        ]
    }

    /// The four admissible configurations other than all-right and all-left.
    pub fn free_configs() -> Vec<R1Config> {
        let fixed = Self::fixed_pair();
        R1Config::all_admissible()
            .into_iter()
            .filter(|c| fixed.iter().all(|(f, _)| f != c))
            .collect()
    }

    pub fn from_free(types: [RType; 4]) -> Self {
        let mut map: BTreeMap<R1Config, RType> = Self::fixed_pair().into_iter().collect();
        for (c, t) in Self::free_configs().into_iter().zip(types) {
            map.insert(c, t);
        }
        RTypeAssignment { map }
    }

    pub fn get(&self, c: R1Config) -> Option<RType> {
        self.map.get(&c).copied()
    }

    /// The canonical fixture text (sorted keys, trailing newline).
    pub fn to_fixture_json(&self) -> String {
        let file = FixtureFile {
            format: FIXTURE_FORMAT.into(),
            version: FIXTURE_VERSION,
            types: self.map.iter().map(|(c, t)| (c.key(), t.name().to_string())).collect(),
        };
        let mut s = serde_json::to_string_pretty(&file).expect("fixture serialization");
        s.push('\n');
        s
    }

    pub fn from_fixture_json(text: &str) -> Result<Self> {
        let file: FixtureFile = serde_json::from_str(text)?;
        if file.format != FIXTURE_FORMAT || file.version != FIXTURE_VERSION {
            return Err(Error::Fixture(format!(
                "unsupported fixture {} v{}",
                file.format, file.version
            )));
        }
        let mut map = BTreeMap::new();
        for (k, v) in file.types {
            let c = R1Config::from_key(&k)?;
            if !c.is_admissible() {
                return Err(Error::Fixture(format!("configuration {k} is not admissible")));
            }
            map.insert(c, v.parse()?);
        }
        if map.len() != 6 || map.values().collect::<std::collections::BTreeSet<_>>().len() != 6 {
            return Err(Error::Fixture("fixture must map the six configurations bijectively".into()));
        }
        Ok(RTypeAssignment { map })
    }

    /// The fixture at `$SUPERLLT_RTYPES_FIXTURE` if set, otherwise the bundled one.
    pub fn load() -> Result<Self> {
        match std::env::var_os(FIXTURE_ENV) {
            Some(p) => Self::load_from(Path::new(&p)),
            None => Self::from_fixture_json(BUNDLED_FIXTURE),
        }
    }

    pub fn load_from(path: &Path) -> Result<Self> {
        Self::from_fixture_json(&std::fs::read_to_string(path)?)
    }

    pub fn bundled() -> Self {
        Self::from_fixture_json(BUNDLED_FIXTURE).expect("bundled fixture is valid")
    }
}

/// Path of the fixture in the source tree.
pub fn bundled_fixture_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join("rtypes.json")
}

/// Which two row kinds an R-vertex swaps: row `i` first, row `j` second.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PairKind {
    HH,
    VV,
    HV,
    #[serde(rename = "V~H")]
    VtH,
    #[serde(rename = "H~H")]
    HtH,
    #[serde(rename = "H~V")]
    HtV,
    #[serde(rename = "V~V")]
    VtV,
    #[serde(rename = "HH~")]
    HHt,
    #[serde(rename = "HV~")]
    HVt,
    #[serde(rename = "VH~")]
    VHt,
    #[serde(rename = "VV~")]
    VVt,
}

impl PairKind {
    pub const ORIGINAL: [PairKind; 3] = [PairKind::HH, PairKind::VV, PairKind::HV];
    pub const MIXED: [PairKind; 8] = [
        PairKind::VtH,
        PairKind::HtH,
        PairKind::HtV,
        PairKind::VtV,
        PairKind::HHt,
        PairKind::HVt,
        PairKind::VHt,
        PairKind::VVt,
    ];

    pub fn all() -> Vec<PairKind> {
        Self::ORIGINAL.iter().chain(Self::MIXED.iter()).copied().collect()
    }

    pub fn rows(self) -> (RowKind, RowKind) {
        use RowKind::*;
        match self {
            PairKind::HH => (H, H),
            PairKind::VV => (V, V),
            PairKind::HV => (H, V),
            PairKind::VtH => (VTilde, H),
            PairKind::HtH => (HTilde, H),
            PairKind::HtV => (HTilde, V),
            PairKind::VtV => (VTilde, V),
            PairKind::HHt => (H, HTilde),
            PairKind::HVt => (H, VTilde),
            PairKind::VHt => (V, HTilde),
            PairKind::VVt => (V, VTilde),
        }
    }

    pub fn from_rows(i: RowKind, j: RowKind) -> Option<PairKind> {
        Self::all().into_iter().find(|k| k.rows() == (i, j))
    }

    /// Alternate row on top of an original row.
    pub fn alternate_first(self) -> bool {
        matches!(self, PairKind::VtH | PairKind::HtH | PairKind::HtV | PairKind::VtV)
    }

    pub fn is_mixed(self) -> bool {
        self.rows().0.is_alternate() != self.rows().1.is_alternate()
    }

    pub fn name(self) -> &'static str {
        match self {
            PairKind::HH => "HH",
            PairKind::VV => "VV",
            PairKind::HV => "HV",
            PairKind::VtH => "V~H",
            PairKind::HtH => "H~H",
            PairKind::HtV => "H~V",
            PairKind::VtV => "V~V",
            PairKind::HHt => "HH~",
            PairKind::HVt => "HV~",
            PairKind::VHt => "VH~",
            PairKind::VVt => "VV~",
        }
    }

    /// Default spectral variables for rows `i` and `j`.
    pub fn default_vars(self) -> (VarId, VarId) {
        let (a, b) = self.rows();
        let fam = |k: RowKind, idx: u32| match k {
            RowKind::H => VarId::x(idx),
            RowKind::V => VarId::y(idx),
            RowKind::HTilde => VarId::w(idx),
            RowKind::VTilde => VarId::z(idx),
        };
        if a == b {
            (fam(a, 1), fam(b, 2))
        } else {
            (fam(a, 1), fam(b, 1))
        }
    }
}

impl fmt::Display for PairKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PairKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.replace(['t', '̃'], "~");
        Self::all()
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(&norm) || k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown R-vertex kind {s:?}")))
    }
}

/// Which weight table to use for the mixed kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightVariant {
    /// The table that satisfies the Yang-Baxter equation.
    Corrected,
    /// The mixed-kind table exactly as typeset, kept for comparison.
    Printed,
}

/// Which tuple position the first crossing of the product reads.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StrandOrder {
    /// Crossing 1 reads tuple entry n (the default).
    TopFirst,
    /// Crossing 1 reads tuple entry 1.
    BottomFirst,
}

impl StrandOrder {
    fn position(self, k: usize, n: usize) -> usize {
        match self {
            StrandOrder::TopFirst => n - 1 - k,
            StrandOrder::BottomFirst => k,
        }
    }
}

fn qp(e: i32) -> MPoly {
    MPoly::q_pow(e)
}

fn count(list: &[RType], t: RType) -> i32 {
    list.iter().filter(|&&x| x == t).count() as i32
}

struct Counts<'a> {
    above: &'a [RType],
    below: &'a [RType],
}

impl Counts<'_> {
    fn a(&self, t: RType) -> i32 {
        count(self.above, t)
    }
    fn b(&self, t: RType) -> i32 {
        count(self.below, t)
    }
    fn o(&self, t: RType) -> i32 {
        self.a(t) + self.b(t)
    }
}

/// Weight of the crossing at position `k` (0 = first) in a non-mixed kind.
fn original_entry(kind: PairKind, t: RType, c: &Counts, n: i32, ui: &MPoly, uj: &MPoly) -> MPoly {
    use RType::*;
    match kind {
        PairKind::HH => {
            let th = 2 * c.b(S);
            let sg = c.b(SS) + c.a(NN) + c.o(W);
            match t {
                N => MPoly::zero(),
                SS | W => uj.clone(),
                E | NN => ui.clone(),
                S => &(&(&qp(th) * ui) - uj) * &qp(-(th + sg)),
            }
        }
        PairKind::VV => {
            let th = 2 * c.b(N);
            let sg = c.a(SS) + c.b(NN) + c.o(W);
            match t {
                N => &qp(sg) * &(uj - &(&qp(th) * ui)),
                SS | E => uj.clone(),
                W | NN => ui.clone(),
                S => MPoly::zero(),
            }
        }
        PairKind::HV => {
            let th = 2 * c.b(E);
            let sg = c.a(SS) + c.b(NN) + c.o(S);
            match t {
                N | SS => -(&qp(sg) * uj),
                W => MPoly::zero(),
                E => &(&(&qp(2 * (n - 1)) * ui) - &(&qp(th) * uj)) * &qp(-th),
                NN | S => &qp(sg) * ui,
            }
        }
        _ => unreachable!("mixed kinds use mixed_entry"),
    }
}

/// `1 − q^e·xy`
fn one_minus(e: i32, xy: &MPoly) -> MPoly {
    &MPoly::one() - &(&qp(e) * xy)
}

/// Weight of an ordinary crossing in a mixed kind.
fn mixed_entry(kind: PairKind, t: RType, c: &Counts, n: i32, xy: &MPoly, variant: WeightVariant) -> MPoly {
    use RType::*;
    let tau = c.b(SS) + c.a(NN);
    let kap = c.a(SS) + c.b(NN);
    let (ns, nw, ne, nn) = (c.o(S), c.o(W), c.o(E), c.o(N));
    let printed = variant == WeightVariant::Printed;
    match kind {
        PairKind::VtH => match t {
            W => &one_minus(2 * c.b(W), xy) * &qp(tau),
            S => MPoly::one(),
            SS => -(xy * &qp(c.b(SS) + nw)),
            NN => qp(c.a(NN) + nw),
            N => -qp(n - 1 - ns),
            E => qp(tau + nw),
        },
        PairKind::HtH => match t {
            W => qp(tau),
            S => one_minus(2 * n - 2 - 2 * c.b(S), xy),
            SS => &qp(n - 1 - ns) * xy,
            NN => qp(n - 1 - ns),
            N => -qp(n - 1 - ns),
            E if printed => qp(tau - nw),
            E => qp(tau + nw),
        },
        PairKind::HtV => match t {
            W => qp(tau),
            S => MPoly::one(),
            SS => -(xy * &qp(c.b(SS) + ne)),
            NN => qp(c.a(NN) + ne),
            N => -qp(n - 1 - ns),
            E => &one_minus(2 * c.b(E), xy) * &qp(tau + nw),
        },
        PairKind::VtV => match t {
            W => qp(tau),
            S => MPoly::one(),
            SS => xy.clone(),
            NN => MPoly::one(),
            N => &(xy - &qp(2 * c.b(N))) * &qp(nw + ne),
            E => qp(tau + nw),
        },
        PairKind::HHt => match t {
            W => qp(-tau),
            S => {
                let v = &qp(1 - n + 2 * kap) * &(&(&qp(2 * n - 2 + 2 * c.b(S)) * xy) - &MPoly::one());
                if printed {
                    -v
                } else {
                    v
                }
            }
            SS => qp(n - 1 - c.a(NN)),
            NN => xy * &qp(n - 1 - c.b(SS)),
            N => qp(kap - tau + ns),
            E => qp(-tau - nw),
        },
        PairKind::HVt => match t {
            W => qp(kap - ne),
            S => -qp(1 - n + 2 * kap + nn),
            SS => qp(c.a(SS)),
            NN => -(xy * &qp(c.b(NN))),
            N => qp(2 * kap),
            E => &one_minus(2 * n - 2 - 2 * c.b(E), xy) * &qp(-tau),
        },
        PairKind::VHt => match t {
            W => &one_minus(2 * n - 2 - 2 * c.b(W), xy) * &qp(-tau),
            S => -qp(1 - n + 2 * kap + nn),
            SS => qp(c.a(SS)),
            NN => -(xy * &qp(c.b(NN))),
            N => qp(2 * kap),
            E => qp(kap - nw),
        },
        PairKind::VVt => match t {
            W => qp(-tau),
            S => -qp(1 - n + kap + nn - tau),
            SS => qp(-c.a(NN)),
            NN => xy * &qp(-c.b(SS)),
            N => &one_minus(2 * c.b(N), xy) * &qp(2 * kap),
            E if printed => qp(tau - nw),
            E => qp(-tau - nw),
        },
        _ => unreachable!("original kinds use original_entry"),
    }
}

/// The position pair that merges into one combined crossing, if any: for
/// alternate-first kinds the topmost NN and the first SS below it, for
/// original-first kinds the topmost SS and the first NN below it.
pub fn fused_pair(kind: PairKind, types: &[RType]) -> Option<(usize, usize)> {
    if !kind.is_mixed() {
        return None;
    }
    let (first, second) = if kind.alternate_first() {
        (RType::NN, RType::SS)
    } else {
        (RType::SS, RType::NN)
    };
    let f = types.iter().position(|&t| t == first)?;
    let g = types[f + 1..].iter().position(|&t| t == second)? + f + 1;
    Some((f, g))
}

fn fused_corrected(kind: PairKind, types: &[RType], f: usize, g: usize, n: i32, xy: &MPoly) -> MPoly {
    use RType::*;
    let above = &types[..f];
    let between = &types[f + 1..g];
    let below = &types[g + 1..];
    let other = |t: RType| count(above, t) + count(between, t) + count(below, t);
    let (ns, nw, ne, nn) = (other(S), other(W), other(E), other(N));
    let one = MPoly::one();
    if kind.alternate_first() {
        let big_t = 1 + count(between, NN) + count(below, SS);
        let to = count(below, SS);
        match kind {
            PairKind::VtH => &qp(to) * &(&(&qp(2 * big_t) - &(&qp(2 * big_t + 2 * nw) * xy)) - &one),
            PairKind::HtH => &(&(&qp(2 * n - 2 - 2 * ns) * xy) + &qp(2 * big_t)) - &one,
            PairKind::HtV => &qp(to) * &(&(&qp(2 * big_t) - &(&qp(2 * big_t + 2 * ne) * xy)) - &one),
            PairKind::VtV => &(xy + &qp(2 * big_t + 2 * nn)) - &qp(2 * nn),
            _ => unreachable!(),
        }
    } else {
        let k = 1 + count(between, SS) + count(below, NN);
        let to = count(below, SS) + count(above, NN);
        let kb = count(below, NN);
        match kind {
            PairKind::HHt => {
                &qp(-to) * &(&(&(&qp(2 * n - 2 + 2 * k) * xy) - &qp(2 * k - 2 * ns)) + &qp(-2 * ns))
            }
            PairKind::HVt | PairKind::VHt => {
                let m = (n - 2) - if kind == PairKind::HVt { ne } else { nw };
                let inner = &(&(&qp(2 * k) * xy) + &qp(4 * k - 2 - 2 * m)) - &qp(2 * k - 2 - 2 * m);
                -(&qp(kb) * &inner)
            }
            PairKind::VVt => &qp(-to) * &(&(&(&qp(2 * k) * xy) - &qp(2 * k - 2 * nn)) + &qp(-2 * nn)),
            _ => unreachable!(),
        }
    }
}

fn fused_printed(kind: PairKind, types: &[RType], f: usize, g: usize, n: i32, xy: &MPoly) -> MPoly {
    use RType::*;
    let above: Vec<RType> = types[..f].to_vec();
    let below: Vec<RType> = types[f + 1..]
        .iter()
        .enumerate()
        .filter(|(i, _)| i + f + 1 != g)
        .map(|(_, t)| *t)
        .collect();
    let c = Counts {
        above: &above,
        below: &below,
    };
    let tau = c.b(SS) + c.a(NN);
    let kap = c.a(SS) + c.b(NN);
    let (ns, nw, ne, nn) = (c.o(S), c.o(W), c.o(E), c.o(N));
    let one_term = |e: i32| qp(e);
    match kind {
        PairKind::VtH => &(&one_term(3 * tau) - &(&qp(3 * tau + 2 * nw) * xy)) - &qp(tau),
        PairKind::HtH => &(&(-(&qp(2 * n - 2) * xy)) + &qp(2 * tau + 2 * ns)) - &qp(2 * ns),
        PairKind::HtV => &(&(&qp(3 * kap) * xy) - &qp(3 * tau + 2 * ne)) - &qp(tau),
        PairKind::VtV => &(xy + &qp(2 * tau + 2 * nn)) - &qp(2 * nn),
        PairKind::HHt => {
            &(&(&(&qp(2 * n - 2 + 2 * kap) * xy) - &qp(2 * kap - 2 * ns)) + &qp(-2 * ns)) * &qp(n - 1 - tau)
        }
        PairKind::HVt | PairKind::VHt => {
            let cnt = if kind == PairKind::HVt { ne } else { nw };
            let base = 2 * (cnt - (n - 1));
            &(&(-(&qp(3 * kap) * xy)) - &qp(base + 5 * kap)) + &qp(base + 3 * kap)
        }
        PairKind::VVt => &(&(&(&qp(2 * kap) * xy) - &qp(2 * kap - 2 * nn)) + &qp(-2 * nn)) * &qp(-tau),
        _ => unreachable!(),
    }
}

/// Weight of an R-vertex whose crossings, first to last, have `types`.
pub fn r_weight(kind: PairKind, types: &[RType], ui: VarId, uj: VarId, variant: WeightVariant) -> MPoly {
    let n = types.len() as i32;
    let (pi, pj) = (MPoly::var(ui), MPoly::var(uj));
    let xy = &pi * &pj;
    let fused = fused_pair(kind, types);
    let mut w = MPoly::one();
    for (k, &t) in types.iter().enumerate() {
        if let Some((f, g)) = fused {
            if k == f || k == g {
                continue;
            }
        }
        let c = Counts {
            above: &types[..k],
            below: &types[k + 1..],
        };
        let e = if kind.is_mixed() {
            mixed_entry(kind, t, &c, n, &xy, variant)
        } else {
            original_entry(kind, t, &c, n, &pi, &pj)
        };
        if e.is_zero() {
            return MPoly::zero();
        }
        w = &w * &e;
    }
    if let Some((f, g)) = fused {
        let e = match variant {
            WeightVariant::Corrected => fused_corrected(kind, types, f, g, n, &xy),
            WeightVariant::Printed => fused_printed(kind, types, f, g, n, &xy),
        };
        w = &w * &e;
    }
    w
}

/// Crossing types of an R-vertex with end tuples `(I, J, K, L)`, or `None`
/// if some strand is inadmissible.
pub fn tuple_types(
    assignment: &RTypeAssignment,
    order: StrandOrder,
    n: usize,
    i: u32,
    j: u32,
    k: u32,
    l: u32,
) -> Option<Vec<RType>> {
    (0..n)
        .map(|pos| {
            let m = order.position(pos, n);
            let bit = |t: u32| t >> m & 1;
            assignment.get(R1Config::from_bits(bit(i), bit(j), bit(k), bit(l)))
        })
        .collect()
}

/// Options shared by the verifiers.
#[derive(Clone, Debug)]
pub struct YbeOptions {
    pub variant: WeightVariant,
    pub strand_order: StrandOrder,
    /// Give up after this many boundaries.
    pub max_boundaries: Option<u64>,
    pub deadline: Option<Instant>,
    /// Stop at the first failing boundary.
    pub stop_at_first: bool,
}

impl Default for YbeOptions {
    fn default() -> Self {
        YbeOptions {
            variant: WeightVariant::Corrected,
            strand_order: StrandOrder::TopFirst,
            max_boundaries: None,
            deadline: None,
            stop_at_first: false,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct YbeFailure {
    pub boundary: String,
    pub lhs: serde_json::Value,
    pub rhs: serde_json::Value,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct YbeReport {
    pub kind: String,
    pub n: usize,
    pub variant: WeightVariant,
    pub boundaries_checked: u64,
    /// Boundaries whose sums used a merged NN/SS crossing.
    pub prefusion_boundaries: u64,
    /// Boundaries whose sums used both NN and SS without merging them.
    pub nontrigger_boundaries: u64,
    pub failures: Vec<YbeFailure>,
}

impl YbeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Precomputed R weights for every end tuple, with fusion flags.
struct RTable {
    n: usize,
    weights: Vec<MPoly>,
    fused: Vec<bool>,
    nontrigger: Vec<bool>,
}

impl RTable {
    fn new(kind: PairKind, n: usize, ui: VarId, uj: VarId, assignment: &RTypeAssignment, opts: &YbeOptions) -> Self {
        let size = 1usize << (4 * n);
        let mut weights = Vec::with_capacity(size);
        let mut fused = Vec::with_capacity(size);
        let mut nontrigger = Vec::with_capacity(size);
        for idx in 0..size {
            let (i, j, k, l) = Self::unpack(idx, n);
            match tuple_types(assignment, opts.strand_order, n, i, j, k, l) {
                Some(types) => {
                    let f = fused_pair(kind, &types).is_some();
                    let both = types.contains(&RType::NN) && types.contains(&RType::SS);
                    weights.push(r_weight(kind, &types, ui, uj, opts.variant));
                    fused.push(f);
                    nontrigger.push(kind.is_mixed() && both && !f);
                }
                None => {
                    weights.push(MPoly::zero());
                    fused.push(false);
                    nontrigger.push(false);
                }
            }
        }
        RTable {
            n,
            weights,
            fused,
            nontrigger,
        }
    }

    fn unpack(idx: usize, n: usize) -> (u32, u32, u32, u32) {
        let mask = (1usize << n) - 1;
        (
            (idx & mask) as u32,
            (idx >> n & mask) as u32,
            (idx >> (2 * n) & mask) as u32,
            (idx >> (3 * n) & mask) as u32,
        )
    }

    fn index(&self, i: u32, j: u32, k: u32, l: u32) -> usize {
        let n = self.n;
        i as usize | (j as usize) << n | (k as usize) << (2 * n) | (l as usize) << (3 * n)
    }
}

struct SideSum {
    poly: MPoly,
    fused: bool,
    nontrigger: bool,
}

fn mono_poly(m: Mono, v: VarId) -> MPoly {
    m.to_poly(v)
}

/// Sums one side of the star-triangle relation for a fixed boundary.
#[allow(clippy::too_many_arguments)]
fn side_sum(
    rows: (RowKind, RowKind),
    vars: (VarId, VarId),
    table: &RTable,
    n: u32,
    boundary: (u32, u32, u32, u32, u32, u32),
    r_on_left: bool,
) -> SideSum {
    let (ki, kj) = rows;
    let (ui, uj) = vars;
    let (a, alpha, b, c, gamma, beta) = boundary;
    let tuples = 1u32 << n;
    let mut poly = MPoly::zero();
    let mut fused = false;
    let mut nontrigger = false;
    for x in 0..=1u32 {
        for p in 0..tuples {
            for qv in 0..tuples {
                let (w1, w2, idx) = if r_on_left {
                    // rows i (top) then j, fed by the R-vertex on the left
                    let w1 = local_weight(ki, n, x, a, p, gamma);
                    if w1.coeff == 0 {
                        continue;
                    }
                    let w2 = local_weight(kj, n, alpha, x, qv, beta);
                    (w1, w2, table.index(p, qv, c, b))
                } else {
                    // rows j (top) then i, feeding the R-vertex on the right
                    let w1 = local_weight(kj, n, x, a, b, p);
                    if w1.coeff == 0 {
                        continue;
                    }
                    let w2 = local_weight(ki, n, alpha, x, c, qv);
                    (w1, w2, table.index(gamma, beta, qv, p))
                };
                if w2.coeff == 0 {
                    continue;
                }
                let r = &table.weights[idx];
                if r.is_zero() {
                    continue;
                }
                fused |= table.fused[idx];
                nontrigger |= table.nontrigger[idx];
                let (v1, v2) = if r_on_left { (ui, uj) } else { (uj, ui) };
                let term = &(&mono_poly(w1, v1) * &mono_poly(w2, v2)) * r;
                poly += &term;
            }
        }
    }
    SideSum {
        poly,
        fused,
        nontrigger,
    }
}

fn describe_boundary(n: u32, bd: (u32, u32, u32, u32, u32, u32)) -> String {
    let arrow = |v: u32| if v == 1 { '∧' } else { '∨' };
    format!(
        "a={} α={} b={} c={} γ={} β={}",
        arrow(bd.0),
        arrow(bd.1),
        render_tuple(bd.2, n),
        render_tuple(bd.3, n),
        render_tuple(bd.4, n),
        render_tuple(bd.5, n)
    )
}

/// Checks the star-triangle relation for every boundary: the two row
/// vertices with the R-vertex attached on the left against the swapped
/// rows with the R-vertex on the right, summed over internal edges.
pub fn verify_ybe(kind: PairKind, n: usize, assignment: &RTypeAssignment, opts: &YbeOptions) -> Result<YbeReport> {
    if n == 0 || n > 4 {
        return Err(Error::InvalidArgument(format!("n = {n} outside 1..=4")));
    }
    let total: u64 = 1u64 << (4 * n + 2);
    if let Some(max) = opts.max_boundaries {
        if total > max {
            return Err(Error::BudgetExceeded(format!(
                "{kind} at n = {n} needs {total} boundaries, budget is {max}"
            )));
        }
    }
    let vars = kind.default_vars();
    let table = RTable::new(kind, n, vars.0, vars.1, assignment, opts);
    let nn = n as u32;
    let mask = (1u64 << n) - 1;
    let decode = |id: u64| -> (u32, u32, u32, u32, u32, u32) {
        (
            (id & 1) as u32,
            (id >> 1 & 1) as u32,
            (id >> 2 & mask) as u32,
            (id >> (2 + n) & mask) as u32,
            (id >> (2 + 2 * n) & mask) as u32,
            (id >> (2 + 3 * n) & mask) as u32,
        )
    };
    let stop = std::sync::atomic::AtomicBool::new(false);
    let timed_out = std::sync::atomic::AtomicBool::new(false);
    let results: Vec<(u64, Option<YbeFailure>, bool, bool)> = (0..total)
        .into_par_iter()
        .filter_map(|id| {
            if stop.load(std::sync::atomic::Ordering::Relaxed) {
                return None;
            }
            if let Some(d) = opts.deadline {
                if Instant::now() > d {
                    timed_out.store(true, std::sync::atomic::Ordering::Relaxed);
                    stop.store(true, std::sync::atomic::Ordering::Relaxed);
                    return None;
                }
            }
            let bd = decode(id);
            let lhs = side_sum(kind.rows(), vars, &table, nn, bd, true);
            let rhs = side_sum(kind.rows(), vars, &table, nn, bd, false);
            let fused = lhs.fused || rhs.fused;
            let nontrig = lhs.nontrigger || rhs.nontrigger;
            let failure = (lhs.poly != rhs.poly).then(|| YbeFailure {
                boundary: describe_boundary(nn, bd),
                lhs: lhs.poly.to_json_value(),
                rhs: rhs.poly.to_json_value(),
            });
            if failure.is_some() && opts.stop_at_first {
                stop.store(true, std::sync::atomic::Ordering::Relaxed);
            }
            Some((id, failure, fused, nontrig))
        })
        .collect();
    if timed_out.load(std::sync::atomic::Ordering::Relaxed) {
        return Err(Error::BudgetExceeded(format!("{kind} at n = {n} ran past the time budget")));
    }
    let mut results = results;
    results.sort_by_key(|r| r.0);
    let mut failures = Vec::new();
    let (mut pf, mut nt) = (0, 0);
    for (_, f, fused, nontrig) in &results {
        pf += *fused as u64;
        nt += *nontrig as u64;
        if let Some(f) = f {
            failures.push(f.clone());
        }
    }
    if opts.stop_at_first {
        failures.truncate(1);
    }
    Ok(YbeReport {
        kind: kind.name().to_string(),
        n,
        variant: opts.variant,
        boundaries_checked: results.len() as u64,
        prefusion_boundaries: pf,
        nontrigger_boundaries: nt,
        failures,
    })
}

/// Tries every assignment of the four free configurations and returns the
/// unique one under which the single-strand relation holds for `kinds`.
pub fn search_type_assignment(kinds: &[PairKind]) -> Result<(RTypeAssignment, usize)> {
    let free = [RType::N, RType::SS, RType::NN, RType::S];
    let mut passing = Vec::new();
    let opts = YbeOptions {
        stop_at_first: true,
        ..YbeOptions::default()
    };
    for perm in permutations(&free) {
        let cand = RTypeAssignment::from_free([perm[0], perm[1], perm[2], perm[3]]);
        let mut ok = true;
        for &k in kinds {
            if !verify_ybe(k, 1, &cand, &opts)?.passed() {
                ok = false;
                break;
            }
        }
        if ok {
            passing.push(cand);
        }
    }
    let count = passing.len();
    if count != 1 {
        return Err(Error::AssignmentNotUnique(count));
    }
    Ok((passing.pop().expect("one candidate"), 24))
}

/// The assignment pinned by the original kinds HH, VV and HV.
pub fn pin_type_assignment() -> Result<RTypeAssignment> {
    search_type_assignment(&PairKind::ORIGINAL).map(|(a, _)| a)
}

fn permutations(items: &[RType]) -> Vec<Vec<RType>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrainReport {
    pub kind: String,
    pub rows: (usize, usize),
    /// R-vertex attached on the left, summed against the original rows.
    pub lhs: serde_json::Value,
    /// Swapped rows, summed against the R-vertex on the right.
    pub rhs: serde_json::Value,
    pub passed: bool,
}

/// Drags an R-vertex through rows `i` and `i + 1` of `sys`. The rows must
/// form a known pair kind in one of the two orders; the returned sides are
/// the partition function with the vertex attached on the left and on the
/// right of the swapped system.
pub fn train_argument_demo(sys: &LatticeSystem, i: usize, assignment: &RTypeAssignment) -> Result<TrainReport> {
    train_with(sys, i, assignment, WeightVariant::Corrected)
}

pub fn train_with(sys: &LatticeSystem, i: usize, assignment: &RTypeAssignment, variant: WeightVariant) -> Result<TrainReport> {
    if i + 1 >= sys.rows.len() {
        return Err(Error::InvalidArgument(format!("rows {i} and {} do not exist", i + 1)));
    }
    let (upper, lower) = (sys.rows[i].kind, sys.rows[i + 1].kind);
    let (kind, base) = match (PairKind::from_rows(upper, lower), PairKind::from_rows(lower, upper)) {
        (Some(k), _) => (k, sys.clone()),
        (None, Some(k)) => (k, sys.swap_rows(i)),
        (None, None) => {
            return Err(Error::InvalidArgument(format!("no R-vertex swaps {upper} and {lower}")))
        }
    };
    let n = sys.n as usize;
    let ui = base.rows[i].spectral;
    let uj = base.rows[i + 1].spectral;
    let weight = |ti: u32, tj: u32, tk: u32, tl: u32| -> MPoly {
        match tuple_types(assignment, StrandOrder::TopFirst, n, ti, tj, tk, tl) {
            Some(types) => r_weight(kind, &types, ui, uj, variant),
            None => MPoly::zero(),
        }
    };
    let tuples = 1u32 << n;
    // outer labels: row i's line enters at the lower left, row j's at the upper left
    let c = base.west[i];
    let b = base.west[i + 1];
    let gamma = base.east[i];
    let beta = base.east[i + 1];
    let mut lhs = MPoly::zero();
    for p in 0..tuples {
        for qv in 0..tuples {
            let r = weight(p, qv, c, b);
            if r.is_zero() {
                continue;
            }
            let mut s = base.clone();
            s.west[i] = p;
            s.west[i + 1] = qv;
            lhs += &(&r * &s.partition_function());
        }
    }
    let mut swapped = base.swap_rows(i);
    swapped.west[i] = b;
    swapped.west[i + 1] = c;
    let mut rhs = MPoly::zero();
    for p in 0..tuples {
        for qv in 0..tuples {
            let r = weight(gamma, beta, qv, p);
            if r.is_zero() {
                continue;
            }
            let mut s = swapped.clone();
            s.east[i] = p;
            s.east[i + 1] = qv;
            rhs += &(&s.partition_function() * &r);
        }
    }
    let passed = lhs == rhs;
    Ok(TrainReport {
        kind: kind.name().to_string(),
        rows: (i, i + 1),
        lhs: lhs.to_json_value(),
        rhs: rhs.to_json_value(),
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_admissible_crossings() {
        assert_eq!(R1Config::all_admissible().len(), 6);
        assert_eq!(RTypeAssignment::free_configs().len(), 4);
    }

    /// An alternate row counts holes where an original row counts particles,
    /// so for crossings with the alternate row first particle conservation
    /// reads (1−K)+J = (1−I)+L, which is the same condition I+J = K+L.
    #[test]
    fn only_conserving_crossings_carry_weight() {
        let a = RTypeAssignment::bundled();
        for bits in 0..16u32 {
            let c = R1Config::from_bits(bits >> 3 & 1, bits >> 2 & 1, bits >> 1 & 1, bits & 1);
            let (i, j, k, l) = (c.i as i32, c.j as i32, c.k as i32, c.l as i32);
            assert_eq!((1 - k) + j == (1 - i) + l, c.is_admissible());
            let typed = tuple_types(&a, StrandOrder::TopFirst, 1, c.i as u32, c.j as u32, c.k as u32, c.l as u32);
            assert_eq!(typed.is_some(), c.is_admissible(), "{}", c.key());
        }
    }

    #[test]
    fn all_e_weight_is_power_of_first_parameter() {
        for n in 1..=3 {
            let types = vec![RType::E; n];
            let w = r_weight(PairKind::HH, &types, VarId::x(1), VarId::x(2), WeightVariant::Corrected);
            assert_eq!(w, MPoly::var(VarId::x(1)).pow(n as u32));
        }
    }

    #[test]
    fn single_s_crossing() {
        let w = r_weight(PairKind::HH, &[RType::S], VarId::x(1), VarId::x(2), WeightVariant::Corrected);
        assert_eq!(w, &MPoly::var(VarId::x(1)) - &MPoly::var(VarId::x(2)));
    }

    #[test]
    fn mixed_w_crossing_at_one_strand() {
        let (z, x) = (VarId::z(1), VarId::x(1));
        let w = r_weight(PairKind::VtH, &[RType::W], z, x, WeightVariant::Corrected);
        assert_eq!(w, &MPoly::one() - &(&MPoly::var(z) * &MPoly::var(x)));
    }

    #[test]
    fn fusion_trigger_depends_on_order() {
        use RType::*;
        assert_eq!(fused_pair(PairKind::VtH, &[NN, SS]), Some((0, 1)));
        assert_eq!(fused_pair(PairKind::VtH, &[SS, NN]), None);
        assert_eq!(fused_pair(PairKind::HHt, &[SS, NN]), Some((0, 1)));
        assert_eq!(fused_pair(PairKind::HHt, &[NN, SS]), None);
        assert_eq!(fused_pair(PairKind::HH, &[NN, SS]), None);
        assert_eq!(fused_pair(PairKind::VtV, &[SS, NN, E, SS]), Some((1, 3)));
    }

    #[test]
    fn kind_names_round_trip() {
        for k in PairKind::all() {
            assert_eq!(k.name().parse::<PairKind>().unwrap(), k);
        }
        assert_eq!("VtH".parse::<PairKind>().unwrap(), PairKind::VtH);
    }
}
