//! Command-line front end. [`run`] parses arguments, dispatches, writes the
//! report to stdout and returns the process exit code:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success, every check passed |
//! | 1 | a check failed (nonzero residual, routes disagree) |
//! | 2 | invalid input |
//! | 3 | state or time budget exceeded |
//! | 4 | I/O, fixture or internal error |

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cauchy::{
    braid_experiment, verify_cauchy, verify_dual_cauchy, verify_dual_llt, verify_dual_window,
    verify_general_cauchy, verify_window, CauchySpec, CauchyWindow, WindowOrder,
};
use crate::error::{Error, Result};
use crate::fock::{verify_commutation, CommutationPair};
use crate::lattice::{LatticeSystem, RowKind, RowSpec};
use crate::poly::{MPoly, VarId};
use crate::rmatrix::{
    bundled_fixture_path, pin_type_assignment, search_type_assignment, verify_ybe, PairKind, RTypeAssignment,
    WeightVariant, YbeOptions,
};
use crate::shapes::{ribbon_tilings, Partition, SkewShape, StripMode};
use crate::suites::{
    all_routes, instance_grid, sample, verify_branching_grid, verify_conjugation, verify_routes, verify_symmetry,
    verify_train, Instance, SuiteReport,
};
use crate::tableaux::AlphabetOrder;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "superllt", version, about = "Supersymmetric LLT polynomials: compute and verify")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    pub format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Cap on enumerated states, boundaries or instances.
    #[arg(long, global = true)]
    pub budget_states: Option<u64>,
    /// Wall-clock cap in seconds.
    #[arg(long, global = true)]
    pub budget_seconds: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pretty,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute a super LLT polynomial.
    Compute(ComputeArgs),
    /// List the lattice states of a shape.
    States(StatesArgs),
    /// Run a verification suite.
    #[command(subcommand)]
    Verify(Suite),
    /// Manage the crossing-type fixture.
    #[command(subcommand)]
    Fixture(FixtureCmd),
}

#[derive(Args, Debug, Clone)]
pub struct ShapeArgs {
    #[arg(long)]
    pub n: u32,
    /// Outer shape, e.g. `3,3`.
    #[arg(long)]
    pub outer: Partition,
    /// Inner shape (default empty).
    #[arg(long, default_value = "")]
    pub inner: Partition,
    /// Number of horizontal letters (used when --order is absent).
    #[arg(long, default_value_t = 0)]
    pub x: u32,
    /// Number of vertical letters (used when --order is absent).
    #[arg(long, default_value_t = 0)]
    pub y: u32,
    /// Letter order such as `1,1',2`; overrides --x/--y.
    #[arg(long)]
    pub order: Option<AlphabetOrder>,
}

impl ShapeArgs {
    fn shape(&self) -> Result<SkewShape> {
        SkewShape::new(self.outer.clone(), self.inner.clone())
    }

    fn order(&self) -> AlphabetOrder {
        self.order.clone().unwrap_or_else(|| AlphabetOrder::standard(self.x, self.y))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Tableaux,
    Lattice,
    LatticeAlt,
    Operators,
    All,
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,
    #[arg(long, value_enum, default_value_t = Route::Tableaux)]
    pub route: Route,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Original,
    Alternate,
}

#[derive(Args, Debug)]
pub struct StatesArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,
    #[arg(long, value_enum, default_value_t = Model::Original)]
    pub model: Model,
    /// Particle count (default: number of parts of the outer shape).
    #[arg(long)]
    pub particles: Option<usize>,
    /// Also list admissible states of weight zero.
    #[arg(long)]
    pub include_zero: bool,
}

#[derive(Args, Debug, Clone)]
pub struct Alphabets {
    #[arg(long, default_value_t = 1)]
    pub x: u32,
    #[arg(long, default_value_t = 1)]
    pub y: u32,
    #[arg(long, default_value_t = 1)]
    pub w: u32,
    #[arg(long, default_value_t = 1)]
    pub z: u32,
}

impl Alphabets {
    fn counts(&self) -> [u32; 4] {
        [self.x, self.y, self.w, self.z]
    }
}

#[derive(Args, Debug, Clone)]
pub struct GridArgs {
    /// Ribbon lengths to cover.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    pub n: Vec<u32>,
    #[arg(long, default_value_t = 9)]
    pub max_size: u32,
    #[arg(long, default_value_t = 3)]
    pub max_letters: usize,
    /// Check a reproducible random sample of this many instances instead of
    /// the whole grid.
    #[arg(long)]
    pub sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Corrected,
    Printed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WindowOrderArg {
    OriginalAbove,
    AlternateAbove,
}

#[derive(Subcommand, Debug)]
pub enum Suite {
    /// Star-triangle relation for one R-vertex kind (or `all`).
    Ybe {
        #[arg(long, default_value = "all")]
        kind: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, value_enum, default_value_t = VariantArg::Corrected)]
        variant: VariantArg,
    },
    /// Commutation relations between strip operators.
    Commutation {
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        n: Vec<u32>,
        #[arg(long, default_value_t = 3)]
        max_a: u32,
        #[arg(long, default_value_t = 3)]
        max_b: u32,
        #[arg(long, default_value_t = 6)]
        max_size: u32,
    },
    /// Cauchy identity as a truncated series.
    Cauchy {
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long = "D", default_value_t = 4)]
        degree: u32,
        #[arg(long, default_value = "")]
        core: Partition,
        #[command(flatten)]
        alphabets: Alphabets,
    },
    /// Dual Cauchy identities: the finite x/y form exactly, and the
    /// four-alphabet form when --w or --z is positive.
    Dual {
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long = "D", default_value_t = 3)]
        degree: u32,
        #[arg(long, default_value = "")]
        core: Partition,
        #[arg(long, default_value_t = 1)]
        x: u32,
        #[arg(long, default_value_t = 1)]
        y: u32,
        #[arg(long, default_value_t = 0)]
        w: u32,
        #[arg(long, default_value_t = 0)]
        z: u32,
    },
    /// Cauchy identity for two skew boundaries.
    GeneralCauchy {
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long = "D", default_value_t = 3)]
        degree: u32,
        #[arg(long, default_value = "1")]
        mu: Partition,
        #[arg(long, default_value = "1")]
        nu: Partition,
        #[command(flatten)]
        alphabets: Alphabets,
    },
    /// Branching of the lattice at every cut.
    Branching(GridArgs),
    /// Variable-swap and order invariance, plus the train argument.
    Symmetry(GridArgs),
    /// Conjugation relation.
    Conjugation(GridArgs),
    /// Agreement of every computation route.
    Routes(GridArgs),
    /// Finite Cauchy lattice windows.
    Window {
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long, default_value = "")]
        mu: Partition,
        #[arg(long, default_value = "")]
        nu: Partition,
        #[arg(long, value_enum, default_value_t = WindowOrderArg::AlternateAbove)]
        order: WindowOrderArg,
        /// Letters of the original rows, e.g. `1,1'`.
        #[arg(long, default_value = "1")]
        original: AlphabetOrder,
        /// Letters of the alternate rows; they carry `w`/`z` variables.
        #[arg(long, default_value = "1")]
        alternate: AlphabetOrder,
        #[arg(long = "D", default_value_t = 2)]
        degree: u32,
        /// Also run the braid experiments (reported, never gating).
        #[arg(long)]
        experiments: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum FixtureCmd {
    /// Search the crossing-type assignment and print (or write) the fixture.
    PinRtypes {
        /// Write the fixture found by the search to this path.
        #[arg(long)]
        write: Option<PathBuf>,
        /// Fail unless the file at this path matches the search result.
        #[arg(long)]
        check: Option<PathBuf>,
    },
}

struct Ctx {
    format: Format,
    deadline: Option<Instant>,
    budget_states: Option<u64>,
}

/// Output of one command: the JSON document, its pretty rendering and
/// whether every gated check passed.
struct Outcome {
    json: Value,
    pretty: String,
    passed: bool,
}

fn code_for(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded(_) | Error::CapExceeded(_) => EXIT_BUDGET,
        Error::Io(_) | Error::Fixture(_) | Error::Json(_) | Error::AssignmentNotUnique(_) => EXIT_INTERNAL,
        _ => EXIT_INPUT,
    }
}

/// Parses `args` (including the program name), runs the command and writes
/// its report to `out`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if code == EXIT_OK { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    if let Some(t) = cli.threads {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let ctx = Ctx {
        format: cli.format,
        deadline: cli.budget_seconds.map(|s| Instant::now() + Duration::from_secs_f64(s.max(0.0))),
        budget_states: cli.budget_states,
    };
    match dispatch(&cli.command, &ctx) {
        Ok(o) => {
            let text = match ctx.format {
                Format::Json => serde_json::to_string_pretty(&o.json).expect("report serializes"),
                Format::Pretty => o.pretty.trim_end().to_string(),
            };
            let _ = writeln!(out, "{text}");
            if o.passed {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            code_for(&e)
        }
    }
}

/// Entry point used by the binary.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn dispatch(cmd: &Command, ctx: &Ctx) -> Result<Outcome> {
    match cmd {
        Command::Compute(a) => compute(a),
        Command::States(a) => states(a, ctx),
        Command::Verify(s) => verify(s, ctx),
        Command::Fixture(FixtureCmd::PinRtypes { write, check }) => pin(write.as_ref(), check.as_ref()),
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

fn compute(a: &ComputeArgs) -> Result<Outcome> {
    let s = a.shape.shape()?;
    let n = a.shape.n;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let order = a.shape.order();
    let inst = Instance {
        shape: s.clone(),
        n,
        order: order.clone(),
    };
    let tileable = s.size() % n == 0 && !ribbon_tilings(&s, n, StripMode::Any).is_empty();
    let note = (!tileable).then(|| format!("zero polynomial (not n-tileable, n = {n})"));
    let header = json!({"shape": s.to_string(), "n": n, "order": order.to_string(), "note": note});
    let mut pretty = String::new();
    let (json, passed) = if a.route == Route::All {
        let routes = all_routes(&inst)?;
        let reference = &routes["tableaux"];
        let agree = routes.values().all(|p| p == reference);
        for (name, p) in &routes {
            pretty.push_str(&format!("{name:>15}: {p}\n"));
        }
        pretty.push_str(&format!("routes {}\n", if agree { "agree" } else { "DISAGREE" }));
        let rj: serde_json::Map<String, Value> = routes.iter().map(|(k, p)| (k.to_string(), p.to_json_value())).collect();
        let mut j = header;
        j["routes"] = Value::Object(rj);
        j["agree"] = json!(agree);
        (j, agree)
    } else {
        let p = match a.route {
            Route::Tableaux => crate::tableaux::super_llt(&s, n, &order)?,
            Route::Lattice => LatticeSystem::original(&s, n, &order)?.partition_function(),
            Route::LatticeAlt => LatticeSystem::alternate(&s, n, &order)?.partition_function(),
            Route::Operators => crate::fock::operator_polynomial(crate::fock::GeneratingKind::F, &s, n, &order)?,
            Route::All => unreachable!(),
        };
        pretty.push_str(&format!("{p}\n"));
        let mut j = header;
        j["route"] = json!(format!("{:?}", a.route).to_lowercase());
        j["polynomial"] = p.to_json_value();
        (j, true)
    };
    if let Some(n) = note {
        pretty.push_str(&format!("note: {n}\n"));
    }
    Ok(Outcome { json, pretty, passed })
}

fn states(a: &StatesArgs, ctx: &Ctx) -> Result<Outcome> {
    let s = a.shape.shape()?;
    let order = a.shape.order();
    let r = a.particles.unwrap_or(s.outer.len());
    let sys = match a.model {
        Model::Original => LatticeSystem::original_with_particles(&s, a.shape.n, &order, r)?,
        Model::Alternate => LatticeSystem::alternate_with_particles(&s, a.shape.n, &order, r)?,
    };
    let list = sys.enumerate_states(a.include_zero);
    if let Some(b) = ctx.budget_states {
        if list.len() as u64 > b {
            return Err(Error::BudgetExceeded(format!("{} states exceed the budget of {b}", list.len())));
        }
    }
    let z = sys.partition_function();
    let mut pretty = String::new();
    for (i, st) in list.iter().enumerate() {
        pretty.push_str(&format!("state {} weight {}\n{}\n", i + 1, st.weight, st.render(sys.n)));
    }
    pretty.push_str(&format!("{} states, Z = {z}\n", list.len()));
    let json = json!({
        "system": sys.to_json(),
        "states": list.iter().map(|st| st.to_json(sys.n, sys.columns)).collect::<Vec<_>>(),
        "partitionFunction": z.to_json_value(),
    });
    Ok(Outcome {
        json,
        pretty,
        passed: true,
    })
}

fn grid(g: &GridArgs, ctx: &Ctx) -> Result<Vec<Instance>> {
    let all = instance_grid(&g.n, g.max_size, g.max_letters);
    let chosen = match g.sample {
        Some(c) => sample(all, c, g.seed),
        None => all,
    };
    if let Some(b) = ctx.budget_states {
        if chosen.len() as u64 > b {
            return Err(Error::BudgetExceeded(format!(
                "{} instances exceed the budget of {b}",
                chosen.len()
            )));
        }
    }
    Ok(chosen)
}

fn suite_outcome(reports: Vec<SuiteReport>) -> Outcome {
    let mut pretty = String::new();
    for r in &reports {
        pretty.push_str(&format!(
            "{}: {} checked, {} failures\n",
            r.suite,
            r.checked,
            r.failures.len()
        ));
        for f in r.failures.iter().take(20) {
            pretty.push_str(&format!("  {}: {}\n", f.case, f.detail));
        }
    }
    Outcome {
        passed: reports.iter().all(SuiteReport::passed),
        json: to_json(&reports),
        pretty,
    }
}

fn pass_word(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn verify(s: &Suite, ctx: &Ctx) -> Result<Outcome> {
    match s {
        Suite::Ybe { kind, n, variant } => {
            let kinds = if kind == "all" {
                PairKind::all()
            } else {
                vec![kind.parse::<PairKind>()?]
            };
            let assignment = RTypeAssignment::load()?;
            let opts = YbeOptions {
                variant: match variant {
                    VariantArg::Corrected => WeightVariant::Corrected,
                    VariantArg::Printed => WeightVariant::Printed,
                },
                max_boundaries: ctx.budget_states,
                deadline: ctx.deadline,
                ..YbeOptions::default()
            };
            let mut reports = Vec::new();
            let mut pretty = String::new();
            for k in kinds {
                let r = verify_ybe(k, *n, &assignment, &opts)?;
                pretty.push_str(&format!(
                    "{:<4} n={} {:?}: {} boundaries, {} failures, {} with merged crossings, {} unmerged NN+SS: {}\n",
                    r.kind,
                    r.n,
                    r.variant,
                    r.boundaries_checked,
                    r.failures.len(),
                    r.prefusion_boundaries,
                    r.nontrigger_boundaries,
                    pass_word(r.passed())
                ));
                for f in r.failures.iter().take(5) {
                    pretty.push_str(&format!("  {}\n", f.boundary));
                }
                reports.push(r);
            }
            Ok(Outcome {
                passed: reports.iter().all(|r| r.passed()),
                json: to_json(&reports),
                pretty,
            })
        }
        Suite::Commutation {
            n,
            max_a,
            max_b,
            max_size,
        } => {
            let domain = Partition::all_up_to(*max_size);
            let mut rows = Vec::new();
            let mut pretty = String::new();
            let mut ok = true;
            for &nn in n {
                for pair in CommutationPair::ALL {
                    let mut failures = 0;
                    let mut checked = 0;
                    for a in 0..=*max_a {
                        for b in 0..=*max_b {
                            if let Some(d) = ctx.deadline {
                                if Instant::now() > d {
                                    return Err(Error::BudgetExceeded("time budget exhausted".into()));
                                }
                            }
                            let r = verify_commutation(nn, a, b, pair, &domain)?;
                            failures += r.failures;
                            checked += r.entries.len();
                        }
                    }
                    ok &= failures == 0;
                    pretty.push_str(&format!("n={nn} {pair}: {checked} checks, {failures} failures\n"));
                    rows.push(json!({"n": nn, "pair": pair.to_string(), "checked": checked, "failures": failures}));
                }
            }
            Ok(Outcome {
                json: Value::Array(rows),
                pretty,
                passed: ok,
            })
        }
        Suite::Cauchy {
            n,
            degree,
            core,
            alphabets,
        } => {
            let spec = CauchySpec::new(*n, core.clone(), alphabets.counts(), *degree)?;
            let r = verify_cauchy(&spec)?;
            Ok(identity_outcome(vec![r]))
        }
        Suite::Dual {
            n,
            degree,
            core,
            x,
            y,
            w,
            z,
        } => {
            let mut reports: Vec<_> = verify_dual_llt(*n, core, *x, *y)?.into_iter().collect();
            if *w > 0 || *z > 0 {
                let spec = CauchySpec::new(*n, core.clone(), [*x, *y, *w, *z], *degree)?;
                reports.push(verify_dual_cauchy(&spec)?);
            }
            Ok(identity_outcome(reports))
        }
        Suite::GeneralCauchy {
            n,
            degree,
            mu,
            nu,
            alphabets,
        } => {
            let spec = CauchySpec::new(*n, Partition::empty(), alphabets.counts(), *degree)?;
            Ok(identity_outcome(vec![verify_general_cauchy(mu, nu, &spec)?]))
        }
        Suite::Branching(g) => Ok(suite_outcome(vec![verify_branching_grid(&grid(g, ctx)?, ctx.deadline)?])),
        Suite::Symmetry(g) => {
            let inst = grid(g, ctx)?;
            let sym = verify_symmetry(&inst, ctx.deadline)?;
            let train = verify_train(&inst, &RTypeAssignment::load()?, ctx.deadline)?;
            Ok(suite_outcome(vec![sym, train]))
        }
        Suite::Conjugation(g) => Ok(suite_outcome(vec![verify_conjugation(&grid(g, ctx)?, ctx.deadline)?])),
        Suite::Routes(g) => Ok(suite_outcome(vec![verify_routes(&grid(g, ctx)?, ctx.deadline)?])),
        Suite::Window {
            n,
            mu,
            nu,
            order,
            original,
            alternate,
            degree,
            experiments,
        } => window(*n, mu, nu, *order, original, alternate, *degree, *experiments),
    }
}

fn identity_outcome(reports: Vec<crate::cauchy::IdentityReport>) -> Outcome {
    let mut pretty = String::new();
    for r in &reports {
        let bound = r.degree_bound.map_or("exact".to_string(), |b| format!("degree ≤ {b}"));
        pretty.push_str(&format!(
            "{} n={} ({bound}, {} shapes): {}\n",
            r.identity,
            r.n,
            r.shapes,
            pass_word(r.passed)
        ));
        if !r.passed {
            let res = MPoly::from_json_value(&r.residual).map(|p| p.to_string()).unwrap_or_default();
            pretty.push_str(&format!("  residual {res}\n"));
        }
    }
    Outcome {
        passed: reports.iter().all(|r| r.passed),
        json: to_json(&reports),
        pretty,
    }
}

/// Rewrites `x`/`y` letter variables to `w`/`z`.
fn to_second(order: &AlphabetOrder) -> AlphabetOrder {
    let map = order
        .letters
        .iter()
        .map(|l| {
            let v = if l.var.family == crate::poly::Family::X {
                VarId::w(l.var.index)
            } else {
                VarId::z(l.var.index)
            };
            (l.var, v)
        })
        .collect();
    order.with_vars(&map)
}

#[allow(clippy::too_many_arguments)]
fn window(
    n: u32,
    mu: &Partition,
    nu: &Partition,
    order: WindowOrderArg,
    original: &AlphabetOrder,
    alternate: &AlphabetOrder,
    degree: u32,
    experiments: bool,
) -> Result<Outcome> {
    let order = match order {
        WindowOrderArg::OriginalAbove => WindowOrder::OriginalAbove,
        WindowOrderArg::AlternateAbove => WindowOrder::AlternateAbove,
    };
    let w = CauchyWindow::sized(n, mu.clone(), nu.clone(), order, original.clone(), to_second(alternate), degree);
    let r = verify_window(&w, degree)?;
    let mut pretty = format!(
        "window {:?} n={n} {}/{}: {} particles, {} columns, {} shapes, margin {}: {}\n",
        r.order,
        r.mu,
        r.nu,
        r.particles,
        r.columns,
        r.shapes,
        if r.margin_ok { "ok" } else { "CHANGED" },
        pass_word(r.passed)
    );
    let dual = verify_dual_window(n, 1, 1)?;
    pretty.push_str(&format!(
        "dual window n={n} (one x, one z): {}\n",
        pass_word(dual.passed)
    ));
    let mut json = json!({"window": to_json(&r), "dualWindow": to_json(&dual)});
    if experiments {
        let assignment = RTypeAssignment::load()?;
        let mut exps = Vec::new();
        for (ok, ov) in [(RowKind::H, VarId::x(1)), (RowKind::V, VarId::y(1))] {
            for (ak, av) in [(RowKind::HTilde, VarId::w(1)), (RowKind::VTilde, VarId::z(1))] {
                for ord in [WindowOrder::AlternateAbove, WindowOrder::OriginalAbove] {
                    let e = braid_experiment(
                        n,
                        RowSpec { kind: ok, spectral: ov },
                        RowSpec { kind: ak, spectral: av },
                        mu,
                        nu,
                        ord,
                        degree,
                        &assignment,
                    )?;
                    let res = MPoly::from_json_value(&e.residual)?;
                    pretty.push_str(&format!("experiment {}: residual {res}\n", e.case));
                    exps.push(e);
                }
            }
        }
        json["experiments"] = to_json(&exps);
    }
    Ok(Outcome {
        passed: r.passed && dual.passed,
        json,
        pretty,
    })
}

fn pin(write: Option<&PathBuf>, check: Option<&PathBuf>) -> Result<Outcome> {
    let a = pin_type_assignment()?;
    let text = a.to_fixture_json();
    let mixed_ok = matches!(search_type_assignment(&PairKind::MIXED), Ok((ref m, _)) if *m == a);
    let mut passed = mixed_ok;
    let mut pretty = text.clone();
    pretty.push_str(&format!(
        "mixed kinds select the same assignment: {}\n",
        if mixed_ok { "yes" } else { "no" }
    ));
    if let Some(p) = write {
        std::fs::write(p, &text)?;
        pretty.push_str(&format!("wrote {}\n", p.display()));
    }
    if let Some(p) = check {
        let same = std::fs::read_to_string(p)? == text;
        passed &= same;
        pretty.push_str(&format!(
            "{} {}\n",
            p.display(),
            if same { "matches" } else { "DIFFERS" }
        ));
    }
    let json = json!({
        "fixture": serde_json::from_str::<Value>(&text)?,
        "mixedKindsAgree": mixed_ok,
        "bundledPath": bundled_fixture_path().display().to_string(),
    });
    Ok(Outcome { json, pretty, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_with(std::iter::once("superllt").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap() + &String::from_utf8(err).unwrap())
    }

    #[test]
    fn compute_example() {
        let (code, out) = run_capture(&["compute", "--n", "2", "--outer", "3,3", "--x", "2"]);
        assert_eq!(code, 0);
        assert!(out.contains("q^3*x1^3"));
    }

    #[test]
    fn non_tileable_note() {
        let (code, out) = run_capture(&["compute", "--n", "3", "--outer", "2,2", "--x", "1"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("0\n"));
        assert!(out.contains("zero polynomial (not n-tileable"));
    }

    #[test]
    fn bad_input_exit_code() {
        assert_eq!(run_capture(&["compute", "--n", "2", "--outer", "1,3"]).0, EXIT_INPUT);
        assert_eq!(run_capture(&["verify", "ybe", "--kind", "XY"]).0, EXIT_INPUT);
    }

    #[test]
    fn budget_exit_code() {
        let (code, _) = run_capture(&["--budget-states", "10", "verify", "ybe", "--kind", "HH", "--n", "2"]);
        assert_eq!(code, EXIT_BUDGET);
    }
}
