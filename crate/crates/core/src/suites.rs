//! Instance grids and the cross-route, symmetry, conjugation, train and
//! branching suites run over them.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{operator_polynomial, GeneratingKind};
use crate::lattice::{verify_branching, LatticeSystem};
use crate::poly::{MPoly, VarId};
use crate::rmatrix::{train_argument_demo, PairKind, RTypeAssignment};
use crate::shapes::{ribbon_tilings, Partition, SkewShape, StripMode};
use crate::tableaux::{horizontal, super_llt, vertical, AlphabetOrder, LetterKind};

/// A shape, ribbon length and letter order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub shape: SkewShape,
    pub n: u32,
    pub order: AlphabetOrder,
}

impl Instance {
    pub fn label(&self) -> String {
        format!("{} n={} order={}", self.shape, self.n, self.order)
    }
}

/// Every letter order with `k` letters: bit i of the mask makes letter i
/// vertical; letters of each kind are numbered in order.
pub fn orders_with(k: usize) -> Vec<AlphabetOrder> {
    (0..1u32 << k)
        .map(|mask| {
            let (mut h, mut v) = (0, 0);
            let letters = (0..k)
                .map(|i| {
                    if mask >> i & 1 == 1 {
                        v += 1;
                        vertical(v)
                    } else {
                        h += 1;
                        horizontal(h)
                    }
                })
                .collect();
            AlphabetOrder::new(letters).expect("well-formed order")
        })
        .collect()
}

/// Nonempty n-tileable skew shapes `λ/μ` with `|λ| ≤ max_size`.
pub fn tileable_shapes(n: u32, max_size: u32) -> Vec<SkewShape> {
    let mut out = Vec::new();
    for outer in Partition::all_up_to(max_size) {
        for inner in Partition::empty().interval(&outer) {
            let s = match SkewShape::new(outer.clone(), inner) {
                Ok(s) => s,
                Err(_) => continue,
            };
            if s.size() == 0 || s.size() % n != 0 {
                continue;
            }
            if !ribbon_tilings(&s, n, StripMode::Any).is_empty() {
                out.push(s);
            }
        }
    }
    out
}

/// The instance grid: every tileable shape for each `n`, paired with every
/// order of `1..=max_letters` letters.
pub fn instance_grid(ns: &[u32], max_size: u32, max_letters: usize) -> Vec<Instance> {
    let orders: Vec<AlphabetOrder> = (1..=max_letters).flat_map(orders_with).collect();
    let mut out = Vec::new();
    for &n in ns {
        for shape in tileable_shapes(n, max_size) {
            for order in &orders {
                out.push(Instance {
                    shape: shape.clone(),
                    n,
                    order: order.clone(),
                });
            }
        }
    }
    out
}

/// A reproducible sample of `count` grid instances.
pub fn sample(mut grid: Vec<Instance>, count: usize, seed: u64) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    grid.shuffle(&mut rng);
    grid.truncate(count);
    grid
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteFailure {
    pub case: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checked: usize,
    pub failures: Vec<SuiteFailure>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn collect(suite: &str, outcomes: Vec<Result<Vec<SuiteFailure>>>) -> Result<Self> {
        let checked = outcomes.len();
        let mut failures = Vec::new();
        for o in outcomes {
            failures.extend(o?);
        }
        Ok(SuiteReport {
            suite: suite.to_string(),
            checked,
            failures,
        })
    }
}

fn check_deadline(deadline: Option<Instant>) -> Result<()> {
    match deadline {
        Some(d) if Instant::now() > d => Err(Error::BudgetExceeded("time budget exhausted".into())),
        _ => Ok(()),
    }
}

/// The polynomial of one instance by every route, keyed by route name.
pub fn all_routes(inst: &Instance) -> Result<BTreeMap<&'static str, MPoly>> {
    let (s, n, o) = (&inst.shape, inst.n, &inst.order);
    let mut out = BTreeMap::new();
    out.insert("tableaux", super_llt(s, n, o)?);
    out.insert("lattice", LatticeSystem::original(s, n, o)?.partition_function());
    out.insert("lattice-alt", LatticeSystem::alternate(s, n, o)?.partition_function());
    out.insert("operators", operator_polynomial(GeneratingKind::F, s, n, o)?);
    out.insert("operators-down", operator_polynomial(GeneratingKind::G, s, n, o)?);
    Ok(out)
}

/// Tableaux, both lattice models and both operator constructions agree.
pub fn verify_routes(instances: &[Instance], deadline: Option<Instant>) -> Result<SuiteReport> {
    let outcomes = instances
        .par_iter()
        .map(|inst| {
            check_deadline(deadline)?;
            let routes = all_routes(inst)?;
            let reference = &routes["tableaux"];
            Ok(routes
                .iter()
                .filter(|(_, p)| *p != reference)
                .map(|(name, p)| SuiteFailure {
                    case: inst.label(),
                    detail: format!("{name} gave {p}, tableaux gave {reference}"),
                })
                .collect())
        })
        .collect();
    SuiteReport::collect("routes", outcomes)
}

fn swap_vars(a: VarId, b: VarId) -> BTreeMap<VarId, VarId> {
    [(a, b), (b, a)].into_iter().collect()
}

/// Invariance under adjacent swaps of same-kind variables and under
/// reordering the letters (compared against all horizontal letters first).
pub fn verify_symmetry(instances: &[Instance], deadline: Option<Instant>) -> Result<SuiteReport> {
    let outcomes = instances
        .par_iter()
        .map(|inst| {
            check_deadline(deadline)?;
            let (s, n) = (&inst.shape, inst.n);
            let g = super_llt(s, n, &inst.order)?;
            let mut fails = Vec::new();
            let nx = inst.order.letters.iter().filter(|l| l.kind == LetterKind::Horizontal).count() as u32;
            let ny = inst.order.len() as u32 - nx;
            for (fam, count) in [(VarId::x as fn(u32) -> VarId, nx), (VarId::y as fn(u32) -> VarId, ny)] {
                for i in 1..count {
                    let swapped = g.rename(&swap_vars(fam(i), fam(i + 1)));
                    if swapped != g {
                        fails.push(SuiteFailure {
                            case: inst.label(),
                            detail: format!("not symmetric in {} and {}", fam(i), fam(i + 1)),
                        });
                    }
                }
            }
            let standard = AlphabetOrder::standard(nx, ny);
            if standard != inst.order && super_llt(s, n, &standard)? != g {
                fails.push(SuiteFailure {
                    case: inst.label(),
                    detail: format!("differs from order {standard}"),
                });
            }
            Ok(fails)
        })
        .collect();
    SuiteReport::collect("symmetry", outcomes)
}

/// `G_{λ/μ}(X/Y;q) = (−1)^m q^{(n−1)m} G_{λ'/μ'}(Y/X;q^{-1})` with `m` the
/// number of ribbons.
pub fn conjugation_residual(inst: &Instance) -> Result<MPoly> {
    let (s, n) = (&inst.shape, inst.n);
    let g = super_llt(s, n, &inst.order)?;
    let m = s.size() / n;
    let conj = super_llt(&s.conjugate(), n, &inst.order.flipped())?.invert_q();
    let sign = if m % 2 == 1 { -MPoly::one() } else { MPoly::one() };
    let rhs = &(&sign * &MPoly::q_pow(((n - 1) * m) as i32)) * &conj;
    Ok(&g - &rhs)
}

pub fn verify_conjugation(instances: &[Instance], deadline: Option<Instant>) -> Result<SuiteReport> {
    let outcomes = instances
        .par_iter()
        .map(|inst| {
            check_deadline(deadline)?;
            let r = conjugation_residual(inst)?;
            Ok(if r.is_zero() {
                Vec::new()
            } else {
                vec![SuiteFailure {
                    case: inst.label(),
                    detail: format!("residual {r}"),
                }]
            })
        })
        .collect();
    SuiteReport::collect("conjugation", outcomes)
}

/// The train argument on every adjacent row pair, in either lattice model,
/// that some R-vertex can swap.
pub fn verify_train(instances: &[Instance], assignment: &RTypeAssignment, deadline: Option<Instant>) -> Result<SuiteReport> {
    let cases: Vec<(String, LatticeSystem, usize)> = instances
        .iter()
        .filter(|i| i.order.len() >= 2)
        .flat_map(|inst| {
            let systems = [
                ("original", LatticeSystem::original(&inst.shape, inst.n, &inst.order)),
                ("alternate", LatticeSystem::alternate(&inst.shape, inst.n, &inst.order)),
            ];
            systems
                .into_iter()
                .filter_map(|(name, s)| s.ok().map(|s| (name, s)))
                .flat_map(move |(name, sys)| {
                    let label = format!("{} {name}", inst.label());
                    (0..sys.rows.len() - 1)
                        .filter(|&i| {
                            let (a, b) = (sys.rows[i].kind, sys.rows[i + 1].kind);
                            PairKind::from_rows(a, b).or(PairKind::from_rows(b, a)).is_some()
                        })
                        .map(|i| (format!("{label} rows {i},{}", i + 1), sys.clone(), i))
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let outcomes = cases
        .par_iter()
        .map(|(label, sys, i)| {
            check_deadline(deadline)?;
            let r = train_argument_demo(sys, *i, assignment)?;
            Ok(if r.passed {
                Vec::new()
            } else {
                vec![SuiteFailure {
                    case: label.clone(),
                    detail: format!("{} sides differ", r.kind),
                }]
            })
        })
        .collect();
    SuiteReport::collect("train", outcomes)
}

/// Branching at every cut of every instance with at least two letters.
pub fn verify_branching_grid(instances: &[Instance], deadline: Option<Instant>) -> Result<SuiteReport> {
    let cases: Vec<(&Instance, usize)> = instances
        .iter()
        .flat_map(|i| (1..i.order.len()).map(move |c| (i, c)))
        .collect();
    let outcomes = cases
        .par_iter()
        .map(|(inst, cut)| {
            check_deadline(deadline)?;
            let r = verify_branching(&inst.shape, inst.n, &inst.order, *cut)?;
            Ok(if r.passed {
                Vec::new()
            } else {
                vec![SuiteFailure {
                    case: format!("{} cut {cut}", inst.label()),
                    detail: format!("structural {} residual {}", r.structural_ok, r.residual),
                }]
            })
        })
        .collect();
    SuiteReport::collect("branching", outcomes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fourteen_orders_up_to_three_letters() {
        let total: usize = (1..=3).map(|k| orders_with(k).len()).sum();
        assert_eq!(total, 14);
        assert_eq!(orders_with(2)[1].to_string(), "1',1");
    }

    #[test]
    fn sampling_is_reproducible() {
        let g = instance_grid(&[2], 4, 2);
        assert_eq!(sample(g.clone(), 10, 7), sample(g, 10, 7));
    }

    #[test]
    fn tileable_shapes_of_size_two() {
        let shapes = tileable_shapes(2, 2);
        let names: Vec<String> = shapes.iter().map(|s| s.to_string()).collect();
        assert_eq!(names.len(), 2);
        assert!(names.iter().all(|s| s.ends_with("/∅")));
    }
}
