//! Command-line front end. `run` parses argv, dispatches, and returns the
//! report and exit code instead of printing, so tests can drive it directly.
//!
//! Exit codes: 0 success (or an expected absence), 1 a property violation or
//! counterexample, 2 a usage or input-format error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::boundary::{self, BoundaryError, GridLabel};
use crate::constructions::{self, ConstructionError, ConstructionParams, Kind};
use crate::format::g9;
use crate::search::{self, EnumerationOptions, Objective};
use crate::template::{read_template, to_canonical_json, write_template, ColouringTemplate, FormatError};
use crate::verifier::{self, VerifierError};

/// Rainbow triangles listed by `check` unless `--all` is given.
const TRIANGLE_CAP: usize = 20;

#[derive(Debug)]
pub struct CommandResult {
    pub code: i32,
    pub report: String,
    /// Files written by the command.
    pub outputs: Vec<PathBuf>,
}

impl CommandResult {
    fn ok(report: String) -> Self {
        CommandResult { code: 0, report, outputs: Vec::new() }
    }

    fn usage(message: impl std::fmt::Display) -> Self {
        CommandResult { code: 2, report: format!("error: {message}\n"), outputs: Vec::new() }
    }

    fn with_code(mut self, code: i32) -> Self {
        self.code = code;
        self
    }

    fn wrote(mut self, path: &Path) -> Self {
        self.outputs.push(path.to_path_buf());
        self
    }
}

#[derive(Parser, Debug)]
#[command(name = "gallai", version, about = "Rainbow-triangle-free colouring templates: constructions, regions, certificates and search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum KindArg {
    F,
    H,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ObjectiveArg {
    Sum,
    Min,
    Geomean,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build an F or H template with parts of sizes a, b, c.
    Construct {
        #[arg(long, value_enum, ignore_case = true)]
        kind: KindArg,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long, default_value_t = 0)]
        c: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report class sizes, densities, rainbow triangles and g for a template.
    Check {
        file: PathBuf,
        /// List every rainbow triangle instead of the first 20.
        #[arg(long)]
        all: bool,
    },
    /// Region label, canonical representation and forcing α3 of (α1, α2).
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        a1: f64,
        #[arg(long, allow_hyphen_values = true)]
        a2: f64,
    },
    /// Write the region grid as CSV.
    Boundary {
        #[arg(long, default_value_t = 200)]
        resolution: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Certify k(d) > 0 on [0, 1] by a Lipschitz grid bound.
    VerifyAppendix {
        #[arg(long, default_value_t = verifier::APPENDIX_GRID)]
        grid: usize,
    },
    /// Search for a partition profile violating the easy-case inequalities.
    Lemma28 {
        #[arg(long, allow_hyphen_values = true)]
        a1: f64,
        #[arg(long, allow_hyphen_values = true)]
        a2: f64,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        /// Upper bound on a12 + a13 + a23 (d takes the rest).
        #[arg(long, default_value_t = 1.0)]
        sum_bound: f64,
    },
    /// Exhaustive enumeration (small n) or hill climbing.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "sum")]
        objective: ObjectiveArg,
        #[arg(long)]
        exhaustive: bool,
        /// Prune partial assignments as they complete a rainbow triangle;
        /// required for n = 5.
        #[arg(long)]
        prune: bool,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Starting template for hill climbing (default: no edges).
        #[arg(long)]
        init: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the hard-case cleaning pipeline.
    Normalize {
        file: PathBuf,
        #[arg(long, default_value_t = search::DEFAULT_C)]
        c: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Replace every vertex by k copies.
    Blowup {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Non-forcing witness for (α1, α2, α3), or the extremal template for
    /// (α1, α2) when α3 is omitted.
    Witness {
        #[arg(long, allow_hyphen_values = true)]
        a1: f64,
        #[arg(long, allow_hyphen_values = true)]
        a2: f64,
        #[arg(long, allow_hyphen_values = true)]
        a3: Option<f64>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return CommandResult { code, report: e.render().to_string(), outputs: Vec::new() };
        }
    };
    match cli.command {
        Command::Construct { kind, a, b, c, out } => construct(kind, ConstructionParams::new(a, b, c), out),
        Command::Check { file, all } => check(&file, all),
        Command::Classify { a1, a2 } => classify(a1, a2),
        Command::Boundary { resolution, out } => boundary_csv(resolution, &out),
        Command::VerifyAppendix { grid } => verify_appendix(grid),
        Command::Lemma28 { a1, a2, step, sum_bound } => lemma28(a1, a2, step, sum_bound),
        Command::Search { n, objective, exhaustive, prune, budget, seed, init, out } => {
            search_cmd(n, objective, exhaustive, prune, budget, seed, init, out)
        }
        Command::Normalize { file, c, out, trace } => normalize(&file, c, out, trace),
        Command::Blowup { file, k, out } => blowup(&file, k, out),
        Command::Witness { a1, a2, a3, n, out } => witness(a1, a2, a3, n, out),
    }
}

fn sizes_line(t: &ColouringTemplate) -> String {
    let [s1, s2, s3] = t.class_sizes();
    format!("{s1} {s2} {s3}")
}

fn density_line(t: &ColouringTemplate) -> String {
    let rho = t.density_vector().rho;
    format!("{} {} {}", g9(rho[0]), g9(rho[1]), g9(rho[2]))
}

/// Write `t` to `out` if given, or append its JSON to the report.
fn emit_template(t: &ColouringTemplate, out: Option<PathBuf>, mut report: String) -> CommandResult {
    match out {
        Some(path) => match write_template(t, &path) {
            Ok(()) => {
                let _ = writeln!(report, "wrote: {}", path.display());
                CommandResult::ok(report).wrote(&path)
            }
            Err(e) => CommandResult::usage(e),
        },
        None => {
            report.push_str(&to_canonical_json(t));
            CommandResult::ok(report)
        }
    }
}

fn load(path: &Path) -> Result<ColouringTemplate, CommandResult> {
    read_template(path).map_err(|e: FormatError| CommandResult::usage(e))
}

fn construct(kind: KindArg, p: ConstructionParams, out: Option<PathBuf>) -> CommandResult {
    let kind = match kind {
        KindArg::F => Kind::F,
        KindArg::H => Kind::H,
    };
    let t = constructions::build(kind, p);
    let mut r = String::new();
    let _ = writeln!(r, "kind: {kind}{p}");
    let _ = writeln!(r, "n: {}", t.n());
    let _ = writeln!(r, "sizes: {}", sizes_line(&t));
    let _ = writeln!(r, "density: {}", density_line(&t));
    let _ = writeln!(r, "gallai: {}", t.is_gallai());
    emit_template(&t, out, r)
}

fn check(path: &Path, all: bool) -> CommandResult {
    let t = match load(path) {
        Ok(t) => t,
        Err(e) => return e,
    };
    let triangles = t.rainbow_triangles();
    let gallai = triangles.is_empty();
    let mut r = String::new();
    let _ = writeln!(r, "n: {}", t.n());
    let _ = writeln!(r, "sizes: {}", sizes_line(&t));
    let _ = writeln!(r, "density: {}", density_line(&t));
    let _ = writeln!(r, "rainbow_pairs: {}", t.rainbow_edges().len());
    let _ = writeln!(r, "bichromatic_pairs: {}", t.bichromatic_edges().len());
    let _ = writeln!(r, "gallai: {gallai}");
    let _ = writeln!(r, "rainbow_triangles: {}", triangles.len());
    let shown = if all { triangles.len() } else { triangles.len().min(TRIANGLE_CAP) };
    for [a, b, c] in &triangles[..shown] {
        let _ = writeln!(r, "  {a} {b} {c}");
    }
    if shown < triangles.len() {
        let _ = writeln!(r, "  ... {} more (use --all)", triangles.len() - shown);
    }
    let _ = writeln!(r, "g: {}", g9(t.g_value()));
    CommandResult::ok(r).with_code(if gallai { 0 } else { 1 })
}

fn boundary_failure(e: BoundaryError) -> CommandResult {
    CommandResult::usage(e)
}

fn classify(a1: f64, a2: f64) -> CommandResult {
    let c = match boundary::classify(a1, a2) {
        Ok(c) => c,
        Err(e) => return boundary_failure(e),
    };
    let mut r = String::new();
    match c.alpha3() {
        Some(a3) => {
            let _ = writeln!(r, "{}, alpha3={}", c.label.as_str(), g9(a3));
        }
        None => {
            let _ = writeln!(r, "{}", c.label.as_str());
        }
    }
    if c.on_shared_curve {
        let _ = writeln!(r, "on_shared_curve: true");
    }
    if let Some(rep) = c.canonical {
        let _ = writeln!(r, "canonical: x={} y={} z={}", g9(rep.x), g9(rep.y), g9(rep.z));
    }
    CommandResult::ok(r)
}

fn boundary_csv(resolution: usize, out: &Path) -> CommandResult {
    if resolution < 2 {
        return CommandResult::usage("resolution must be at least 2");
    }
    let rows = boundary::boundary_grid(resolution);
    let mut csv = String::from("alpha1,alpha2,label,alpha3\n");
    let mut counts = [0usize; 6];
    for row in &rows {
        let a3 = row.alpha3.map(g9).unwrap_or_default();
        let _ = writeln!(csv, "{},{},{},{}", g9(row.alpha1), g9(row.alpha2), row.label.as_str(), a3);
        let slot = match row.label {
            GridLabel::Region(boundary::RegionLabel::R1Prime) => 0,
            GridLabel::Region(boundary::RegionLabel::R1MinusR1Prime) => 1,
            GridLabel::Region(boundary::RegionLabel::R2) => 2,
            GridLabel::Region(boundary::RegionLabel::Outside) => 3,
            GridLabel::Shared => 4,
            GridLabel::Invalid => 5,
        };
        counts[slot] += 1;
    }
    if let Err(e) = std::fs::write(out, csv) {
        return CommandResult::usage(format!("cannot write {}: {e}", out.display()));
    }
    let mut r = String::new();
    let _ = writeln!(r, "rows: {}", rows.len());
    for (name, k) in ["R1prime", "R1_minus_R1prime", "R2", "outside", "R1prime_R2", "invalid"]
        .iter()
        .zip(counts)
    {
        let _ = writeln!(r, "{name}: {k}");
    }
    let _ = writeln!(r, "wrote: {}", out.display());
    CommandResult::ok(r).wrote(out)
}

fn verifier_failure(e: VerifierError) -> CommandResult {
    match e {
        VerifierError::CertificationFailed(_) => CommandResult {
            code: 1,
            report: format!("certification failed: {e}\n"),
            outputs: Vec::new(),
        },
        other => CommandResult::usage(other),
    }
}

fn verify_appendix(grid: usize) -> CommandResult {
    let cert = match verifier::verify_appendix(grid) {
        Ok(c) => c,
        Err(e) => return verifier_failure(e),
    };
    let mut r = String::new();
    let _ = writeln!(r, "interval: [{}, {}]", g9(cert.a), g9(cert.b));
    let _ = writeln!(r, "grid_count: {}", cert.grid_count);
    let _ = writeln!(r, "lipschitz_bound: {}", g9(cert.lipschitz_bound));
    let _ = writeln!(r, "spacing: {}", g9(cert.spacing));
    let _ = writeln!(r, "grid_min: {}", g9(cert.grid_min));
    let _ = writeln!(r, "grid_argmin: {}", g9(cert.grid_argmin));
    let _ = writeln!(r, "certified_lower_bound: {}", g9(cert.certified_lower_bound));
    let _ = writeln!(r, "success: {}", cert.success);
    CommandResult::ok(r).with_code(if cert.success { 0 } else { 1 })
}

fn lemma28(a1: f64, a2: f64, step: f64, sum_bound: f64) -> CommandResult {
    let rep = match verifier::lemma28_search(a1, a2, step, sum_bound) {
        Ok(r) => r,
        Err(e) => return verifier_failure(e),
    };
    let profile = |p: &verifier::PartitionProfile| {
        format!("a12={} a13={} a23={} d={}", g9(p.a12), g9(p.a13), g9(p.a23), g9(p.d))
    };
    let mut r = String::new();
    let _ = writeln!(r, "canonical: x={} y={} z={}", g9(rep.rep.x), g9(rep.rep.y), g9(rep.rep.z));
    let _ = writeln!(r, "points_evaluated: {}", rep.points_evaluated);
    let _ = writeln!(r, "best_violation: {}", g9(rep.best_violation));
    let _ = writeln!(r, "best_profile: {}", profile(&rep.best_profile));
    match &rep.found {
        Some(p) => {
            let _ = writeln!(r, "counterexample: {}", profile(p));
        }
        None => {
            let _ = writeln!(r, "counterexample: absent");
        }
    }
    if let Some(p) = &rep.found_relaxed_7 {
        let _ = writeln!(r, "without inequality 7: {}", profile(p));
    }
    CommandResult::ok(r).with_code(if rep.found.is_some() { 1 } else { 0 })
}

#[allow(clippy::too_many_arguments)]
fn search_cmd(
    n: usize,
    objective: ObjectiveArg,
    exhaustive: bool,
    prune: bool,
    budget: u64,
    seed: u64,
    init: Option<PathBuf>,
    out: Option<PathBuf>,
) -> CommandResult {
    let objective = match objective {
        ObjectiveArg::Sum => Objective::Sum,
        ObjectiveArg::Min => Objective::MinClass,
        ObjectiveArg::Geomean => Objective::GeometricMean,
    };
    let result = if exhaustive {
        search::enumerate_gallai(n, objective, EnumerationOptions { prune, limit: 4 })
    } else {
        let start = match init {
            Some(path) => match load(&path) {
                Ok(t) => t,
                Err(e) => return e,
            },
            None => ColouringTemplate::empty(n),
        };
        search::local_search(n, objective, &start, budget, seed)
    };
    let res = match result {
        Ok(r) => r,
        Err(e) => return CommandResult::usage(e),
    };
    let mut r = String::new();
    let _ = writeln!(r, "objective: {}", res.objective);
    let _ = writeln!(r, "value: {}", g9(res.value));
    let _ = writeln!(r, "sizes: {}", sizes_line(&res.best));
    let _ = writeln!(r, "exhaustive: {}", res.exhaustive);
    if res.exhaustive {
        let _ = writeln!(r, "templates_visited: {}", res.templates_visited);
        let _ = writeln!(r, "gallai_count: {}", res.gallai_count);
    } else {
        let _ = writeln!(r, "initial_value: {}", g9(res.initial_value.unwrap_or(f64::NAN)));
        let _ = writeln!(r, "steps: {}", res.templates_visited);
        let _ = writeln!(r, "accepted_moves: {}", res.accepted_moves);
        let _ = writeln!(r, "seed: {seed}");
    }
    emit_template(&res.best, out, r)
}

fn normalize(path: &Path, c: f64, out: Option<PathBuf>, trace: Option<PathBuf>) -> CommandResult {
    let t = match load(path) {
        Ok(t) => t,
        Err(e) => return e,
    };
    let (cleaned, tr) = match search::normalize_hard_case(&t, c) {
        Ok(x) => x,
        Err(search::NormalizeError::InvalidConstant(c)) => {
            return CommandResult::usage(format!("--c must exceed 5 (got {c})"))
        }
        Err(e) => {
            return CommandResult { code: 1, report: format!("precondition violated: {e}\n"), outputs: Vec::new() }
        }
    };
    let n = t.n();
    let p = &tr.partition;
    let mut r = String::new();
    let _ = writeln!(
        r,
        "partition: |M12|={} |M13|={} |D|={}",
        p.m12.len(),
        p.m13.len(),
        p.d.len()
    );
    let [e12, e13, e] = tr.aux_counts;
    let _ = writeln!(r, "auxiliary: e12={e12} e13={e13} e={e}");
    let _ = writeln!(r, "threshold: {}", g9(tr.threshold));
    let _ = writeln!(r, "g_before: {}", g9(tr.g_before));
    let _ = writeln!(r, "g_after: {}", g9(tr.g_after));
    let _ = writeln!(r, "hypothesis g >= C*N: {}", tr.hypothesis_met);
    let _ = writeln!(r, "moves: {}", tr.records.len());
    let _ = writeln!(r, "early_exit: {}", tr.early_exit);
    let mut code = 0;
    if tr.early_exit {
        let ok = cleaned.g_value() <= 2.0 * n as f64;
        let _ = writeln!(r, "g <= 2N: {ok}");
        if !ok {
            code = 1;
        }
    } else {
        match search::hard_case_bound_check(&cleaned, p) {
            Ok(ok) => {
                let _ = writeln!(r, "structure_property: true");
                let _ = writeln!(r, "g <= 3N: {ok}");
                if !ok {
                    code = 1;
                }
            }
            Err(e) => {
                let _ = writeln!(r, "{e}");
                code = 1;
            }
        }
    }
    for d in &tr.diagnostics {
        let _ = writeln!(r, "diagnostic: {d}");
    }
    let mut written = Vec::new();
    if let Some(tp) = &trace {
        if let Err(e) = std::fs::write(tp, tr.to_csv()) {
            return CommandResult::usage(format!("cannot write {}: {e}", tp.display()));
        }
        let _ = writeln!(r, "trace: {}", tp.display());
        written.push(tp.clone());
    }
    let mut res = emit_template(&cleaned, out, r);
    if res.code == 0 {
        res.code = code;
    }
    res.outputs.extend(written);
    res
}

fn blowup(path: &Path, k: usize, out: Option<PathBuf>) -> CommandResult {
    let t = match load(path) {
        Ok(t) => t,
        Err(e) => return e,
    };
    let b = match t.blow_up(k) {
        Ok(b) => b,
        Err(e) => return CommandResult::usage(e),
    };
    let mut r = String::new();
    let _ = writeln!(r, "n: {}", b.n());
    let _ = writeln!(r, "sizes: {}", sizes_line(&b));
    let _ = writeln!(r, "density: {}", density_line(&b));
    let _ = writeln!(r, "gallai: {}", b.is_gallai());
    emit_template(&b, out, r)
}

fn witness(a1: f64, a2: f64, a3: Option<f64>, n: usize, out: Option<PathBuf>) -> CommandResult {
    let mut r = String::new();
    let t = match a3 {
        Some(a3) => match constructions::witness_non_forcing(a1, a2, a3, n) {
            Ok(w) => {
                let _ = writeln!(r, "case: {}", w.case);
                let _ = writeln!(r, "params: F{}", w.params);
                if let Some(eps) = w.epsilon {
                    let _ = writeln!(r, "epsilon: {}", g9(eps));
                }
                let _ = writeln!(r, "sizes: {}", sizes_line(&w.template));
                let _ = writeln!(r, "dominates: {}", w.dominates);
                w.template
            }
            Err(ConstructionError::NoCaseApplies(..)) => {
                let _ = writeln!(r, "case: none (no trivial non-forcing case applies)");
                return CommandResult::ok(r).with_code(1);
            }
            Err(e) => return CommandResult::usage(e),
        },
        None => match constructions::theorem_witness(a1, a2, n) {
            Ok(w) => {
                let _ = writeln!(r, "kind: {}{}", w.kind, w.params);
                let _ = writeln!(r, "alpha3: {}", g9(w.alphas[2]));
                let _ = writeln!(r, "sizes: {}", sizes_line(&w.template));
                let _ = writeln!(r, "deficit_constant: {}", g9(w.deficit_constant));
                w.template
            }
            Err(e) => return CommandResult::usage(e),
        },
    };
    emit_template(&t, out, r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_prints_label_and_alpha3() {
        let r = run(["gallai", "classify", "--a1", "0.9", "--a2", "0.5"]);
        assert_eq!(r.code, 0);
        assert!(r.report.starts_with("R2, alpha3=0.185786438\n"), "{}", r.report);
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(["gallai", "frobnicate"]).code, 2);
        assert_eq!(run(["gallai", "construct", "--kind", "G", "--a", "1", "--b", "1"]).code, 2);
        assert_eq!(run(["gallai", "check", "/nonexistent/file.json"]).code, 2);
        assert_eq!(run(["gallai", "--help"]).code, 0);
    }

    #[test]
    fn construct_prints_json_without_out() {
        let r = run(["gallai", "construct", "--kind", "F", "--a", "2", "--b", "2", "--c", "2"]);
        assert_eq!(r.code, 0);
        assert!(r.report.contains("sizes: 2 2 14"));
        assert!(r.report.contains("\"classes\""));
    }

    #[test]
    fn exhaustive_search_reports_optimum() {
        let r = run(["gallai", "search", "--n", "3", "--objective", "sum", "--exhaustive"]);
        assert_eq!(r.code, 0);
        assert!(r.report.contains("value: 6\n"), "{}", r.report);
        assert_eq!(run(["gallai", "search", "--n", "5", "--exhaustive"]).code, 2);
    }
}
