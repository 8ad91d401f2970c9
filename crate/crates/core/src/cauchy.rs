//! Cauchy-type identities for super LLT polynomials, checked either exactly
//! or as truncated power series, and the two-model Cauchy lattice window.
//!
//! Truncation counts total spectral degree: a degree bound `D` keeps terms
//! with at most `D` ribbons on each side, i.e. spectral degree `≤ 2D`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{operator_polynomial, GeneratingKind};
use crate::lattice::{LatticeSystem, RowKind, RowSpec};
use crate::poly::{expand_product_factor, FactorPlace, FactorSign, MPoly, VarId};
use crate::rmatrix::{r_weight, tuple_types, PairKind, RTypeAssignment, StrandOrder, WeightVariant};
use crate::shapes::{n_core, Partition, SkewShape};
use crate::tableaux::{super_llt, AlphabetOrder, LetterKind};

/// Alphabet sizes, core and truncation for the series identities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CauchySpec {
    pub n: u32,
    pub core: Partition,
    pub nx: u32,
    pub ny: u32,
    pub nw: u32,
    pub nz: u32,
    /// Ribbons per side kept by the truncation.
    pub degree: u32,
}

impl CauchySpec {
    pub fn new(n: u32, core: Partition, counts: [u32; 4], degree: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        if n_core(&core, n) != core {
            return Err(Error::InvalidArgument(format!("{core} is not a {n}-core")));
        }
        let [nx, ny, nw, nz] = counts;
        Ok(CauchySpec {
            n,
            core,
            nx,
            ny,
            nw,
            nz,
            degree,
        })
    }

    /// `x` letters then `y′` letters.
    pub fn first_order(&self) -> AlphabetOrder {
        AlphabetOrder::standard(self.nx, self.ny)
    }

    /// `w` letters then `z′` letters.
    pub fn second_order(&self) -> AlphabetOrder {
        second_alphabet(self.nw, self.nz)
    }

    fn bound(&self) -> u64 {
        2 * self.degree as u64
    }
}

/// Horizontal letters on `w` variables followed by vertical letters on `z`.
pub fn second_alphabet(nw: u32, nz: u32) -> AlphabetOrder {
    let mut map = BTreeMap::new();
    for i in 1..=nw {
        map.insert(VarId::x(i), VarId::w(i));
    }
    for j in 1..=nz {
        map.insert(VarId::y(j), VarId::z(j));
    }
    AlphabetOrder::standard(nw, nz).with_vars(&map)
}

/// Horizontal letters carrying `y` variables, used by the dual identity.
fn horizontal_on_y(ny: u32) -> AlphabetOrder {
    let map = (1..=ny).map(|j| (VarId::x(j), VarId::y(j))).collect();
    AlphabetOrder::standard(ny, 0).with_vars(&map)
}

/// Outcome of one identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: String,
    pub n: u32,
    /// `None` for exact polynomial identities.
    pub degree_bound: Option<u64>,
    /// Number of shapes summed on the left.
    pub shapes: usize,
    pub lhs: serde_json::Value,
    pub rhs: serde_json::Value,
    pub residual: serde_json::Value,
    pub passed: bool,
}

impl IdentityReport {
    fn new(identity: &str, n: u32, degree_bound: Option<u64>, shapes: usize, lhs: MPoly, rhs: MPoly) -> Self {
        let residual = &lhs - &rhs;
        IdentityReport {
            identity: identity.to_string(),
            n,
            degree_bound,
            shapes,
            passed: residual.is_zero(),
            lhs: lhs.to_json_value(),
            rhs: rhs.to_json_value(),
            residual: residual.to_json_value(),
        }
    }
}

/// Super LLT polynomial, zero when `inner ⊄ outer`.
fn llt(outer: &Partition, inner: &Partition, n: u32, order: &AlphabetOrder) -> Result<MPoly> {
    if !outer.contains(inner) {
        return Ok(MPoly::zero());
    }
    super_llt(&SkewShape::new(outer.clone(), inner.clone())?, n, order)
}

/// One factor of a product kernel: `∏_t (1 ± q^{2t}·u·v)^{±1}`.
type KernelFactor = (FactorSign, FactorPlace, VarId, VarId);

/// Multiplies the factors; `bound` truncates to spectral degree `2·bound`.
fn kernel(factors: &[KernelFactor], n: u32, bound: Option<u32>) -> Result<MPoly> {
    let mut acc = MPoly::one();
    for &(sign, place, u, v) in factors {
        match bound {
            Some(b) => {
                let f = expand_product_factor(sign, place, u, v, n as usize, b as i64)?;
                acc = acc.mul_truncated(&f, 2 * b as u64);
            }
            None => {
                if place == FactorPlace::Denominator {
                    return Err(Error::InvalidArgument("a denominator needs a truncation".into()));
                }
                let f = expand_product_factor(sign, place, u, v, n as usize, n as i64)?;
                acc = &acc * &f;
            }
        }
    }
    Ok(acc)
}

fn pairs(a: impl Fn(u32) -> VarId, na: u32, b: impl Fn(u32) -> VarId, nb: u32) -> Vec<(VarId, VarId)> {
    let mut out = Vec::new();
    for i in 1..=na {
        for k in 1..=nb {
            out.push((a(i), b(k)));
        }
    }
    out
}

fn push_factors(out: &mut Vec<KernelFactor>, sign: FactorSign, place: FactorPlace, ps: Vec<(VarId, VarId)>) {
    out.extend(ps.into_iter().map(|(u, v)| (sign, place, u, v)));
}

/// `∏ (1−q^{2t}xz)(1−q^{2t}yw) / ((1−q^{2t}xw)(1−q^{2t}yz))`, truncated.
pub fn cauchy_kernel(n: u32, counts: [u32; 4], degree: u32) -> Result<MPoly> {
    let [nx, ny, nw, nz] = counts;
    let mut f = Vec::new();
    use FactorPlace::*;
    use FactorSign::Minus;
    push_factors(&mut f, Minus, Numerator, pairs(VarId::x, nx, VarId::z, nz));
    push_factors(&mut f, Minus, Numerator, pairs(VarId::y, ny, VarId::w, nw));
    push_factors(&mut f, Minus, Denominator, pairs(VarId::x, nx, VarId::w, nw));
    push_factors(&mut f, Minus, Denominator, pairs(VarId::y, ny, VarId::z, nz));
    kernel(&f, n, Some(degree))
}

/// `∏ (1+q^{2t}xw)(1+q^{2t}yz) / ((1+q^{2t}xz)(1+q^{2t}yw))`; exact when
/// `ny = nz = 0`, otherwise truncated.
pub fn dual_kernel(n: u32, counts: [u32; 4], degree: Option<u32>) -> Result<MPoly> {
    let [nx, ny, nw, nz] = counts;
    let mut f = Vec::new();
    use FactorPlace::*;
    use FactorSign::Plus;
    push_factors(&mut f, Plus, Numerator, pairs(VarId::x, nx, VarId::w, nw));
    push_factors(&mut f, Plus, Numerator, pairs(VarId::y, ny, VarId::z, nz));
    push_factors(&mut f, Plus, Denominator, pairs(VarId::x, nx, VarId::z, nz));
    push_factors(&mut f, Plus, Denominator, pairs(VarId::y, ny, VarId::w, nw));
    kernel(&f, n, degree)
}

/// Partitions with n-core `core` made of at most `max_ribbons` ribbons,
/// each with its ribbon count.
pub fn shapes_with_core(core: &Partition, n: u32, max_ribbons: u32) -> Vec<(Partition, u32)> {
    let base = core.size();
    let mut out = Vec::new();
    for m in 0..=max_ribbons {
        for lam in Partition::all_of_size(base + n * m) {
            if lam.contains(core) && n_core(&lam, n) == *core {
                out.push((lam, m));
            }
        }
    }
    out
}

/// `Σ_λ G_{λ/δ}(X/Y) G_{λ/δ}(W/Z)` against the Cauchy kernel, truncated.
pub fn verify_cauchy(spec: &CauchySpec) -> Result<IdentityReport> {
    let (n, bound) = (spec.n, spec.bound());
    let (a, b) = (spec.first_order(), spec.second_order());
    let shapes = shapes_with_core(&spec.core, n, spec.degree);
    let mut lhs = MPoly::zero();
    for (lam, _) in &shapes {
        let g1 = llt(lam, &spec.core, n, &a)?;
        if g1.is_zero() {
            continue;
        }
        let g2 = llt(lam, &spec.core, n, &b)?;
        lhs += &g1.mul_truncated(&g2, bound);
    }
    let rhs = cauchy_kernel(n, [spec.nx, spec.ny, spec.nw, spec.nz], spec.degree)?;
    Ok(IdentityReport::new("cauchy", n, Some(bound), shapes.len(), lhs, rhs))
}

/// The dual identity `Σ q^{(n−1)m} G_{λ/δ}(X/Y;q) G_{λ'/δ'}(W/Z;q^{-1})`
/// against the dual kernel. Without `Y` and `Z` both sides are polynomials
/// and the check is exact (the sum is taken one ribbon past the largest
/// possible contribution); otherwise it is truncated at `2·degree`.
pub fn verify_dual_cauchy(spec: &CauchySpec) -> Result<IdentityReport> {
    let n = spec.n;
    let exact = spec.ny == 0 && spec.nz == 0;
    let (max_m, bound) = if exact {
        (n * spec.nx * spec.nw + 1, None)
    } else {
        (spec.degree, Some(spec.bound()))
    };
    let (a, b) = (spec.first_order(), spec.second_order());
    let core_c = spec.core.conjugate();
    let shapes = shapes_with_core(&spec.core, n, max_m);
    let mut lhs = MPoly::zero();
    for (lam, m) in &shapes {
        let g1 = llt(lam, &spec.core, n, &a)?;
        if g1.is_zero() {
            continue;
        }
        let g2 = llt(&lam.conjugate(), &core_c, n, &b)?.invert_q();
        let term = &(&MPoly::q_pow(((n - 1) * m) as i32) * &g1) * &g2;
        lhs += &match bound {
            Some(d) => term.truncate(d),
            None => term,
        };
    }
    let counts = [spec.nx, spec.ny, spec.nw, spec.nz];
    let rhs = dual_kernel(n, counts, if exact { None } else { Some(spec.degree) })?;
    Ok(IdentityReport::new("dual-cauchy", n, bound, shapes.len(), lhs, rhs))
}

/// The finite dual identity for `nx` variables `x` and `ny` variables `y`,
/// in both of its forms: with conjugate shapes and `q^{-1}`, and with the
/// vertical alphabet `−Y`. Both must equal `∏ (1 + q^{2t} x_i y_j)`.
pub fn verify_dual_llt(n: u32, core: &Partition, nx: u32, ny: u32) -> Result<[IdentityReport; 2]> {
    if n_core(core, n) != *core {
        return Err(Error::InvalidArgument(format!("{core} is not a {n}-core")));
    }
    let max_m = n * nx * ny + 1;
    let shapes = shapes_with_core(core, n, max_m);
    let xs = AlphabetOrder::standard(nx, 0);
    let ys_h = horizontal_on_y(ny);
    let ys_v = AlphabetOrder::standard(0, ny);
    let neg_y: BTreeMap<VarId, MPoly> = (1..=ny).map(|j| (VarId::y(j), -MPoly::var(VarId::y(j)))).collect();
    let core_c = core.conjugate();
    let (mut conj, mut signed) = (MPoly::zero(), MPoly::zero());
    for (lam, m) in &shapes {
        let gx = llt(lam, core, n, &xs)?;
        if gx.is_zero() {
            continue;
        }
        let gy = llt(&lam.conjugate(), &core_c, n, &ys_h)?.invert_q();
        conj += &(&(&MPoly::q_pow(((n - 1) * m) as i32) * &gx) * &gy);
        let gv = llt(lam, core, n, &ys_v)?.specialize(&neg_y)?;
        signed += &(&gx * &gv);
    }
    let mut f = Vec::new();
    push_factors(&mut f, FactorSign::Plus, FactorPlace::Numerator, pairs(VarId::x, nx, VarId::y, ny));
    let rhs = kernel(&f, n, None)?;
    Ok([
        IdentityReport::new("dual-llt-conjugate", n, None, shapes.len(), conj, rhs.clone()),
        IdentityReport::new("dual-llt-signed", n, None, shapes.len(), signed, rhs),
    ])
}

/// `Σ_λ F_{λ/μ}(X/Y) G_{λ/ν}(W/Z) = K · Σ_κ F_{ν/κ}(X/Y) G_{μ/κ}(W/Z)`
/// with `K` the Cauchy kernel, both sides truncated at `2·degree`.
pub fn verify_general_cauchy(mu: &Partition, nu: &Partition, spec: &CauchySpec) -> Result<IdentityReport> {
    let (n, bound) = (spec.n, spec.bound());
    let (a, b) = (spec.first_order(), spec.second_order());
    let poly = |kind: GeneratingKind, outer: &Partition, inner: &Partition, order: &AlphabetOrder| -> Result<MPoly> {
        if !outer.contains(inner) {
            return Ok(MPoly::zero());
        }
        operator_polynomial(kind, &SkewShape::new(outer.clone(), inner.clone())?, n, order)
    };
    // total degree (2|λ| − |μ| − |ν|)/n ≤ 2·degree
    let max_size = (2 * n * spec.degree + mu.size() + nu.size()) / 2;
    let mut lhs = MPoly::zero();
    let mut count = 0;
    for lam in Partition::all_up_to(max_size) {
        if !lam.contains(mu) || !lam.contains(nu) {
            continue;
        }
        count += 1;
        let f = poly(GeneratingKind::F, &lam, mu, &a)?;
        if f.is_zero() {
            continue;
        }
        let g = poly(GeneratingKind::G, &lam, nu, &b)?;
        lhs += &f.mul_truncated(&g, bound);
    }
    let mut finite = MPoly::zero();
    for kap in Partition::all_up_to(mu.size().min(nu.size())) {
        if !mu.contains(&kap) || !nu.contains(&kap) {
            continue;
        }
        let f = poly(GeneratingKind::F, nu, &kap, &a)?;
        if f.is_zero() {
            continue;
        }
        finite += &(&f * &poly(GeneratingKind::G, mu, &kap, &b)?);
    }
    let k = cauchy_kernel(n, [spec.nx, spec.ny, spec.nw, spec.nz], spec.degree)?;
    let rhs = k.mul_truncated(&finite, bound);
    Ok(IdentityReport::new("general-cauchy", n, Some(bound), count, lhs.truncate(bound), rhs))
}

/// Which model occupies the upper rows of a Cauchy window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WindowOrder {
    /// Original rows above: the window sums over common outer shapes and is
    /// an infinite series.
    OriginalAbove,
    /// Alternate rows above: the window sums over common inner shapes and
    /// is a polynomial.
    AlternateAbove,
}

/// A finite window of the two-model Cauchy lattice. Columns left of the
/// window are treated as filled and those right of it as empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CauchyWindow {
    pub n: u32,
    pub mu: Partition,
    pub nu: Partition,
    pub order: WindowOrder,
    /// Letters of the original-model rows.
    pub original: AlphabetOrder,
    /// Letters of the alternate-model rows.
    pub alternate: AlphabetOrder,
    pub particles: usize,
    pub columns: u32,
}

impl CauchyWindow {
    /// A window just large enough for its boundary shapes; for
    /// [`WindowOrder::OriginalAbove`] it also fits every outer shape with
    /// at most `degree` ribbons over `μ`.
    pub fn sized(
        n: u32,
        mu: Partition,
        nu: Partition,
        order: WindowOrder,
        original: AlphabetOrder,
        alternate: AlphabetOrder,
        degree: u32,
    ) -> Self {
        let grow = match order {
            WindowOrder::OriginalAbove => n * degree,
            WindowOrder::AlternateAbove => 0,
        };
        let particles = mu.len().max(nu.len()) + grow as usize;
        let columns = mu.first().max(nu.first()) + grow + particles as u32;
        CauchyWindow {
            n,
            mu,
            nu,
            order,
            original,
            alternate,
            particles,
            columns,
        }
    }

    pub fn widened(&self, extra: u32) -> Self {
        CauchyWindow {
            particles: self.particles + extra as usize,
            columns: self.columns + 2 * extra,
            ..self.clone()
        }
    }

    /// Row specifications from top to bottom.
    pub fn rows(&self) -> Vec<RowSpec> {
        let orig = self.original.letters.iter().map(|l| RowSpec {
            kind: match l.kind {
                LetterKind::Horizontal => RowKind::H,
                LetterKind::Vertical => RowKind::V,
            },
            spectral: l.var,
        });
        let alt = self.alternate.letters.iter().map(|l| RowSpec {
            kind: match l.kind {
                LetterKind::Horizontal => RowKind::HTilde,
                LetterKind::Vertical => RowKind::VTilde,
            },
            spectral: l.var,
        });
        match self.order {
            WindowOrder::OriginalAbove => orig.chain(alt).collect(),
            WindowOrder::AlternateAbove => alt.chain(orig).collect(),
        }
    }

    pub fn system(&self) -> Result<LatticeSystem> {
        LatticeSystem::with_rows(
            self.n,
            self.columns,
            self.rows(),
            self.mu.mask(self.particles)?,
            self.nu.mask(self.particles)?,
        )
    }

    /// Total spectral degree reached by outer shapes with `degree` ribbons
    /// over `μ`.
    fn series_bound(&self, degree: u32) -> Option<u64> {
        let top = self.mu.size() as i64 + 2 * (self.n * degree) as i64 - self.nu.size() as i64;
        (top >= 0).then(|| (top / self.n as i64) as u64)
    }

    fn fits(&self, lam: &Partition) -> bool {
        lam.len() <= self.particles && lam.first() as usize + self.particles <= self.columns as usize
    }
}

pub fn window_partition_function(w: &CauchyWindow) -> Result<MPoly> {
    Ok(w.system()?.partition_function())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowReport {
    pub order: WindowOrder,
    pub n: u32,
    pub mu: Partition,
    pub nu: Partition,
    pub particles: usize,
    pub columns: u32,
    pub degree_bound: Option<u64>,
    pub shapes: usize,
    pub z: serde_json::Value,
    pub expected: serde_json::Value,
    pub residual: serde_json::Value,
    /// The partition function is unchanged when the window is widened.
    pub margin_ok: bool,
    pub passed: bool,
}

/// Compares the window's partition function with the sum over intermediate
/// shapes: exact when the alternate rows are above, truncated to the
/// shapes with at most `degree` ribbons over `μ` otherwise. Fails with an
/// error if the window cannot hold those shapes.
pub fn verify_window(w: &CauchyWindow, degree: u32) -> Result<WindowReport> {
    let n = w.n;
    let bound = match w.order {
        WindowOrder::AlternateAbove => None,
        WindowOrder::OriginalAbove => w.series_bound(degree),
    };
    let mut expected = MPoly::zero();
    let mut shapes = 0;
    match w.order {
        WindowOrder::AlternateAbove => {
            if !w.fits(&w.mu) || !w.fits(&w.nu) {
                return Err(Error::InvalidArgument("window too small for its boundary shapes".into()));
            }
            for kap in Partition::all_up_to(w.mu.size().min(w.nu.size())) {
                if !w.mu.contains(&kap) || !w.nu.contains(&kap) {
                    continue;
                }
                shapes += 1;
                let g = llt(&w.mu, &kap, n, &w.alternate)?;
                if !g.is_zero() {
                    expected += &(&g * &llt(&w.nu, &kap, n, &w.original)?);
                }
            }
        }
        WindowOrder::OriginalAbove => {
            let max_size = w.mu.size() + n * degree;
            for lam in Partition::all_up_to(max_size) {
                if !lam.contains(&w.mu) || !lam.contains(&w.nu) {
                    continue;
                }
                if !w.fits(&lam) {
                    return Err(Error::InvalidArgument(format!(
                        "window too small: {lam} does not fit in {} columns with {} particles",
                        w.columns, w.particles
                    )));
                }
                shapes += 1;
                let g = llt(&lam, &w.mu, n, &w.original)?;
                if !g.is_zero() {
                    expected += &(&g * &llt(&lam, &w.nu, n, &w.alternate)?);
                }
            }
        }
    }
    let z_of = |win: &CauchyWindow| -> Result<MPoly> {
        let sys = win.system()?;
        Ok(match bound {
            Some(b) => sys.partition_function_truncated(Some(b)),
            None => sys.partition_function(),
        })
    };
    let z = z_of(w)?;
    let expected = match bound {
        Some(b) => expected.truncate(b),
        None if w.order == WindowOrder::OriginalAbove => MPoly::zero(),
        None => expected,
    };
    let margin_ok = z_of(&w.widened(n))? == z;
    let residual = &z - &expected;
    Ok(WindowReport {
        order: w.order,
        n,
        mu: w.mu.clone(),
        nu: w.nu.clone(),
        particles: w.particles,
        columns: w.columns,
        degree_bound: bound,
        shapes,
        passed: residual.is_zero() && margin_ok,
        z: z.to_json_value(),
        expected: expected.to_json_value(),
        residual: residual.to_json_value(),
        margin_ok,
    })
}

/// Horizontal original rows on `x` above vertical alternate rows on `z`
/// with empty boundary shapes. The window is a polynomial and must equal
/// `∏ (1 − q^{2t} x_i z_l)`.
pub fn verify_dual_window(n: u32, nx: u32, nz: u32) -> Result<WindowReport> {
    let degree = n * nx * nz;
    let zs = second_alphabet(0, nz);
    let w = CauchyWindow::sized(
        n,
        Partition::empty(),
        Partition::empty(),
        WindowOrder::OriginalAbove,
        AlphabetOrder::standard(nx, 0),
        zs,
        degree,
    );
    let z = window_partition_function(&w)?;
    let mut f = Vec::new();
    push_factors(&mut f, FactorSign::Minus, FactorPlace::Numerator, pairs(VarId::x, nx, VarId::z, nz));
    let expected = kernel(&f, n, None)?;
    let margin_ok = window_partition_function(&w.widened(n))? == z;
    let residual = &z - &expected;
    Ok(WindowReport {
        order: w.order,
        n,
        mu: w.mu.clone(),
        nu: w.nu.clone(),
        particles: w.particles,
        columns: w.columns,
        degree_bound: None,
        shapes: 0,
        passed: residual.is_zero() && margin_ok,
        z: z.to_json_value(),
        expected: expected.to_json_value(),
        residual: residual.to_json_value(),
        margin_ok,
    })
}

/// Result of a braid experiment. There is no pass/fail: the residual is
/// only reported.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidExperiment {
    pub case: String,
    pub degree_bound: u64,
    pub lhs: serde_json::Value,
    pub rhs: serde_json::Value,
    pub residual: serde_json::Value,
}

/// Attaches one R-vertex to a window with a single original row and a
/// single alternate row and compares the result with the predicted
/// product form, truncated at total degree `2·degree`.
///
/// With the alternate row above, the vertex sits on the right with exits
/// right (original line) and left (alternate line); the prediction is the
/// Cauchy kernel without its `yz` factors times the finite inner sum. With
/// the original row above, the vertex sits on the left with entries right
/// (original line) and left (alternate line); the prediction is the `yz`
/// factors times the outer sum.
#[allow(clippy::too_many_arguments)]
pub fn braid_experiment(
    n: u32,
    original: RowSpec,
    alternate: RowSpec,
    mu: &Partition,
    nu: &Partition,
    order: WindowOrder,
    degree: u32,
    assignment: &RTypeAssignment,
) -> Result<BraidExperiment> {
    if original.kind.is_alternate() || !alternate.kind.is_alternate() {
        return Err(Error::InvalidArgument("need one original and one alternate row".into()));
    }
    let kind = PairKind::from_rows(original.kind, alternate.kind)
        .ok_or_else(|| Error::InvalidArgument("no R-vertex for these rows".into()))?;
    let letter = |r: &RowSpec| -> Result<AlphabetOrder> {
        let l = match r.kind {
            RowKind::H | RowKind::HTilde => crate::tableaux::Letter {
                name: r.spectral.name(),
                kind: LetterKind::Horizontal,
                var: r.spectral,
            },
            RowKind::V | RowKind::VTilde => crate::tableaux::Letter {
                name: r.spectral.name(),
                kind: LetterKind::Vertical,
                var: r.spectral,
            },
        };
        AlphabetOrder::new(vec![l])
    };
    let w = CauchyWindow::sized(n, mu.clone(), nu.clone(), order, letter(&original)?, letter(&alternate)?, degree);
    let bound = 2 * degree as u64;
    let sys = w.system()?;
    let nn = n as usize;
    let tuples = 1u32 << n;
    let all_left = tuples - 1;
    let weight = |i: u32, j: u32, k: u32, l: u32| -> MPoly {
        match tuple_types(assignment, StrandOrder::TopFirst, nn, i, j, k, l) {
            Some(t) => r_weight(kind, &t, original.spectral, alternate.spectral, WeightVariant::Corrected),
            None => MPoly::zero(),
        }
    };
    let mut lhs = MPoly::zero();
    for a in 0..tuples {
        for b in 0..tuples {
            let mut s = sys.clone();
            let r = match order {
                WindowOrder::AlternateAbove => {
                    s.east[0] = b;
                    s.east[1] = a;
                    weight(0, all_left, a, b)
                }
                WindowOrder::OriginalAbove => {
                    s.west[0] = a;
                    s.west[1] = b;
                    weight(a, b, 0, all_left)
                }
            };
            if r.is_zero() {
                continue;
            }
            lhs += &s.partition_function_truncated(Some(bound)).mul_truncated(&r, bound);
        }
    }
    let fam = |k: RowKind| matches!(k, RowKind::H | RowKind::HTilde);
    let (u, v) = (original.spectral, alternate.spectral);
    let mut factors = Vec::new();
    use FactorPlace::*;
    use FactorSign::Minus;
    match order {
        WindowOrder::AlternateAbove => {
            match (fam(original.kind), fam(alternate.kind)) {
                (true, false) | (false, true) => factors.push((Minus, Numerator, u, v)),
                (true, true) => factors.push((Minus, Denominator, u, v)),
                (false, false) => {}
            }
        }
        WindowOrder::OriginalAbove => {
            if !fam(original.kind) && !fam(alternate.kind) {
                factors.push((Minus, Numerator, u, v));
            }
        }
    }
    let k = kernel(&factors, n, Some(degree))?;
    let mut sum = MPoly::zero();
    match order {
        WindowOrder::AlternateAbove => {
            for kap in Partition::all_up_to(mu.size().min(nu.size())) {
                if mu.contains(&kap) && nu.contains(&kap) {
                    sum += &(&llt(mu, &kap, n, &w.alternate)? * &llt(nu, &kap, n, &w.original)?);
                }
            }
        }
        WindowOrder::OriginalAbove => {
            for lam in Partition::all_up_to(mu.size() + n * degree) {
                if lam.contains(mu) && lam.contains(nu) {
                    sum += &(&llt(&lam, mu, n, &w.original)? * &llt(&lam, nu, n, &w.alternate)?);
                }
            }
        }
    }
    let rhs = k.mul_truncated(&sum, bound);
    let lhs = lhs.truncate(bound);
    let residual = &lhs - &rhs;
    let case = format!(
        "{} braid, {} above, n={n}, rows {}({}) / {}({}), {}/{}",
        if order == WindowOrder::AlternateAbove { "right" } else { "left" },
        if order == WindowOrder::AlternateAbove { "alternate" } else { "original" },
        original.kind.name(),
        original.spectral,
        alternate.kind.name(),
        alternate.spectral,
        mu,
        nu
    );
    Ok(BraidExperiment {
        case,
        degree_bound: bound,
        lhs: lhs.to_json_value(),
        rhs: rhs.to_json_value(),
        residual: residual.to_json_value(),
    })
}
