//! The `lieposet` command line: argument definitions and report assembly.
//!
//! Every command prints one JSON report. Exit codes: 0 success,
//! 1 verification failure, 2 input error, 3 guard violation.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::cohomology::{coboundary_matrix, cohomology_dim_guarded, CohomologyError, Guards};
use crate::exactla::serde_rat;
use crate::indexfrob::{
    frobenius_functional, index, normalize_to_phi, principal_element, spectrum, IndexError,
    IndexOptions,
};
use crate::liealg::{LieAlg, Variant};
use crate::poset::{enumerate_height_one, parse_poset, Poset};
use crate::suites::{self, derive_seed, pattern_rows, Suite};

pub const SCHEMA: &str = "lieposet-report/1";
pub const MAX_ENUMERATE: usize = 7;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "lieposet", version, about = "Exact computations on Lie poset algebras")]
pub struct Cli {
    /// Indent the JSON report.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Gl,
    Sl,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Gl => Variant::Gl,
            VariantArg::Sl => Variant::Sl,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Figures,
    Rigidity,
    Classification,
    Eq1,
    Spectrum,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Figures => Suite::Figures,
            SuiteArg::Rigidity => Suite::Rigidity,
            SuiteArg::Classification => Suite::Classification,
            SuiteArg::Eq1 => Suite::Eq1,
            SuiteArg::Spectrum => Suite::Spectrum,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FilterArg {
    All,
    Frobenius,
}

#[derive(Debug, Args)]
pub struct RandomArgs {
    /// Seed for the randomized index computation.
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 3)]
    pub trials: usize,
    /// Random functional coordinates are drawn from [-bound, bound].
    #[arg(long, default_value_t = 1_000_000)]
    pub bound: i64,
}

impl RandomArgs {
    fn options(&self) -> IndexOptions {
        IndexOptions {
            trials: self.trials,
            entry_bound: self.bound,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the Lie poset algebra of a poset file.
    Build {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "gl")]
        variant: VariantArg,
        /// Include labels and structure constants.
        #[arg(long)]
        dump_algebra: bool,
    },
    /// Index certificate, and for Frobenius algebras the principal element and spectrum.
    Index {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "sl")]
        variant: VariantArg,
        #[command(flatten)]
        random: RandomArgs,
    },
    /// Dimensions of cochains, cocycles, coboundaries and cohomology in one degree.
    Cohomology {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "gl")]
        variant: VariantArg,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = 12)]
        max_dim: usize,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        /// Write the adjacent coboundary matrices as triplet text files.
        #[arg(long)]
        dump_complex: Option<PathBuf>,
    },
    /// Solvability class, Frobenius certificate and normalization to Phi_n.
    Classify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "sl")]
        variant: VariantArg,
        #[command(flatten)]
        random: RandomArgs,
    },
    /// Run a built-in verification suite.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[arg(long)]
        seed: u64,
    },
    /// Connected height-one posets up to isomorphism.
    Enumerate {
        #[arg(long)]
        size: usize,
        #[arg(long, value_enum, default_value = "all")]
        filter: FilterArg,
        #[arg(long, value_enum, default_value = "sl")]
        variant: VariantArg,
        #[command(flatten)]
        random: RandomArgs,
    },
}

/// Result of a command: the exit code and the JSON report.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub report: Value,
}

struct Failure {
    code: i32,
    kind: String,
    message: String,
}

impl Failure {
    fn input(kind: &str, message: impl ToString) -> Self {
        Self {
            code: EXIT_INPUT,
            kind: kind.into(),
            message: message.to_string(),
        }
    }

    fn guard(kind: &str, message: impl ToString) -> Self {
        Self {
            code: EXIT_GUARD,
            kind: kind.into(),
            message: message.to_string(),
        }
    }
}

struct Input {
    path: String,
    sha256: String,
    poset: Poset,
}

fn read_input(path: &Path) -> Result<Input, Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::input("io", e))?;
    let text = String::from_utf8(bytes.clone()).map_err(|e| Failure::input("malformed", e))?;
    let poset = parse_poset(&text).map_err(|e| Failure::input(e.kind(), e))?;
    let report = poset.validate_family();
    if !report.is_ok() {
        let v = &report.violations[0];
        return Err(Failure::input("family", format!("condition {}: {}", v.condition, v.detail)));
    }
    Ok(Input {
        path: path.display().to_string(),
        sha256: hex::encode(Sha256::digest(&bytes)),
        poset,
    })
}

fn build_algebra(input: &Input, variant: VariantArg) -> Result<LieAlg, Failure> {
    LieAlg::build(&input.poset, variant.into()).map_err(|e| Failure::input("build", e))
}

fn input_json(input: &Input) -> Value {
    json!({ "path": input.path, "sha256": input.sha256 })
}

#[derive(Serialize)]
struct Vector<'a>(#[serde(serialize_with = "serde_rat::vec")] &'a [crate::exactla::Rat]);

fn echo(command: &Command) -> Value {
    match command {
        Command::Build { file, variant, dump_algebra } => json!({
            "name": "build", "file": file, "variant": format!("{variant:?}").to_lowercase(),
            "dump_algebra": dump_algebra,
        }),
        Command::Index { file, variant, random } => json!({
            "name": "index", "file": file, "variant": format!("{variant:?}").to_lowercase(),
            "seed": random.seed, "trials": random.trials, "bound": random.bound,
        }),
        Command::Cohomology { file, variant, degree, max_dim, max_degree, dump_complex } => json!({
            "name": "cohomology", "file": file, "variant": format!("{variant:?}").to_lowercase(),
            "degree": degree, "max_dim": max_dim, "max_degree": max_degree, "dump_complex": dump_complex,
        }),
        Command::Classify { file, variant, random } => json!({
            "name": "classify", "file": file, "variant": format!("{variant:?}").to_lowercase(),
            "seed": random.seed, "trials": random.trials, "bound": random.bound,
        }),
        Command::Verify { suite, seed } => json!({
            "name": "verify", "suite": Suite::from(*suite).to_string(), "seed": seed,
        }),
        Command::Enumerate { size, filter, variant, random } => json!({
            "name": "enumerate", "size": size, "filter": format!("{filter:?}").to_lowercase(),
            "variant": format!("{variant:?}").to_lowercase(),
            "seed": random.seed, "trials": random.trials, "bound": random.bound,
        }),
    }
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Outcome {
    let start = Instant::now();
    let result = match &cli.command {
        Command::Build { file, variant, dump_algebra } => cmd_build(file, *variant, *dump_algebra),
        Command::Index { file, variant, random } => cmd_index(file, *variant, &random.options()),
        Command::Cohomology { file, variant, degree, max_dim, max_degree, dump_complex } => {
            let guards = Guards { max_degree: *max_degree, max_dim: *max_dim };
            cmd_cohomology(file, *variant, *degree, &guards, dump_complex.as_deref())
        }
        Command::Classify { file, variant, random } => cmd_classify(file, *variant, &random.options()),
        Command::Verify { suite, seed } => cmd_verify((*suite).into(), *seed),
        Command::Enumerate { size, filter, variant, random } => {
            cmd_enumerate(*size, *filter, *variant, &random.options())
        }
    };
    let mut report = json!({ "schema": SCHEMA, "command": echo(&cli.command) });
    let code = match result {
        Ok((code, input, results)) => {
            report["input"] = input;
            report["results"] = results;
            code
        }
        Err(f) => {
            report["error"] = json!({ "kind": f.kind, "message": f.message });
            f.code
        }
    };
    report["wall_time_ms"] = json!(start.elapsed().as_millis() as u64);
    Outcome { code, report }
}

pub fn render(report: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(report).expect("serializable")
    } else {
        serde_json::to_string(report).expect("serializable")
    }
}

type CmdResult = Result<(i32, Value, Value), Failure>;

fn index_failure(e: IndexError) -> Failure {
    Failure::input("index", e)
}

fn cmd_build(file: &Path, variant: VariantArg, dump: bool) -> CmdResult {
    let input = read_input(file)?;
    let g = build_algebra(&input, variant)?;
    let real = g.realization().expect("built from a poset");
    let series = g.derived_series();
    let mut results = json!({
        "family": input.poset.family().to_string(),
        "variant": g_variant(&input.poset, variant),
        "dim": g.dim(),
        "cartan_count": g.cartan_count(),
        "root_count": g.root_count(),
        "index_labels": real.index_labels,
        "sparsity_pattern": pattern_rows(&g.sparsity_pattern().expect("realized")),
        "derived_series": series,
        "jacobi": g.check_jacobi().is_ok(),
    });
    if dump {
        results["algebra"] = json!(g.dump());
    }
    Ok((EXIT_OK, input_json(&input), results))
}

/// The variant only matters for family A.
fn g_variant(p: &Poset, v: VariantArg) -> Value {
    if p.family() == crate::poset::Family::A {
        json!(Variant::from(v).to_string())
    } else {
        Value::Null
    }
}

fn frobenius_record(g: &LieAlg, opts: &IndexOptions) -> Result<Value, Failure> {
    let Some(f) = frobenius_functional(g, opts).map_err(index_failure)? else {
        return Ok(Value::Null);
    };
    let p = principal_element(g, &f).map_err(index_failure)?;
    let s = spectrum(g, &f).map_err(index_failure)?;
    Ok(json!({
        "functional": f,
        "principal_element": Vector(&p),
        "spectrum": s,
    }))
}

fn cmd_index(file: &Path, variant: VariantArg, opts: &IndexOptions) -> CmdResult {
    let input = read_input(file)?;
    let g = build_algebra(&input, variant)?;
    let cert = index(&g, opts).map_err(index_failure)?;
    let frob = if cert.certified_frobenius { frobenius_record(&g, opts)? } else { Value::Null };
    let results = json!({
        "variant": g_variant(&input.poset, variant),
        "dim": g.dim(),
        "certificate": cert,
        "frobenius": frob,
    });
    Ok((EXIT_OK, input_json(&input), results))
}

fn cmd_cohomology(
    file: &Path,
    variant: VariantArg,
    degree: usize,
    guards: &Guards,
    dump: Option<&Path>,
) -> CmdResult {
    let input = read_input(file)?;
    let g = build_algebra(&input, variant)?;
    let dims = cohomology_dim_guarded(&g, degree, guards).map_err(|e| match e {
        CohomologyError::DegreeGuard { .. } => Failure::guard("degree_guard", e),
        CohomologyError::DimensionGuard { .. } => Failure::guard("dimension_guard", e),
        other => Failure::input("degree", other),
    })?;
    let mut results = json!({
        "variant": g_variant(&input.poset, variant),
        "dim": g.dim(),
        "dims": dims,
    });
    if let Some(dir) = dump {
        fs::create_dir_all(dir).map_err(|e| Failure::input("io", e))?;
        let mut files = Vec::new();
        let lo = degree.saturating_sub(1);
        for n in lo..=degree.min(g.dim()) {
            let m = coboundary_matrix(&g, n).expect("degree checked").matrix;
            let path = dir.join(format!("delta{n}.txt"));
            fs::write(&path, m.to_triplet_text()).map_err(|e| Failure::input("io", e))?;
            files.push(json!({ "degree": n, "path": path, "rows": m.n_rows(), "cols": m.n_cols(), "nnz": m.nnz() }));
        }
        results["complex"] = json!(files);
    }
    Ok((EXIT_OK, input_json(&input), results))
}

fn cmd_classify(file: &Path, variant: VariantArg, opts: &IndexOptions) -> CmdResult {
    let input = read_input(file)?;
    let g = build_algebra(&input, variant)?;
    let series = g.derived_series();
    let cert = index(&g, opts).map_err(index_failure)?;
    let classification = if !series.is_two_step() {
        json!({ "applicable": false, "reason": format!("{}-step solvable", series.k_step) })
    } else if !cert.certified_frobenius {
        json!({ "applicable": false, "reason": "not Frobenius" })
    } else {
        match normalize_to_phi(&g, opts) {
            Ok(n) => {
                let columns: Vec<Vec<String>> = (0..n.change_of_basis.n_cols())
                    .map(|c| n.change_of_basis.column(c).iter().map(crate::exactla::fmt_rat).collect())
                    .collect();
                json!({
                    "applicable": true,
                    "normal_form": format!("Phi_{}", n.n),
                    "n": n.n,
                    "change_of_basis_columns": columns,
                    "verified": n.verified,
                })
            }
            Err(e) => json!({ "applicable": false, "reason": e.to_string() }),
        }
    };
    let verified = classification["verified"].as_bool().unwrap_or(true);
    let results = json!({
        "variant": g_variant(&input.poset, variant),
        "dim": g.dim(),
        "derived_series": series,
        "certificate": cert,
        "classification": classification,
    });
    let code = if verified { EXIT_OK } else { EXIT_VERIFY };
    Ok((code, input_json(&input), results))
}

fn cmd_verify(suite: Suite, seed: u64) -> CmdResult {
    let report = suites::run(suite, seed);
    let code = if report.passed { EXIT_OK } else { EXIT_VERIFY };
    Ok((code, Value::Null, json!(report)))
}

fn cmd_enumerate(size: usize, filter: FilterArg, variant: VariantArg, opts: &IndexOptions) -> CmdResult {
    if size == 0 {
        return Err(Failure::input("size", "size must be positive"));
    }
    if size > MAX_ENUMERATE {
        return Err(Failure::guard("size_guard", format!("size {size} exceeds {MAX_ENUMERATE}")));
    }
    let posets = enumerate_height_one(size).map_err(|e| Failure::input(e.kind(), e))?;
    use rayon::prelude::*;
    let entries: Vec<Result<Value, Failure>> = posets
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            let g = LieAlg::build(p, variant.into()).map_err(|e| Failure::input("build", e))?;
            let case_opts = IndexOptions {
                seed: derive_seed(opts.seed, &format!("enumerate/{size}/{i}")),
                ..*opts
            };
            let cert = index(&g, &case_opts).map_err(index_failure)?;
            let hasse = p.hasse_graph_properties();
            Ok(json!({
                "hasse": p.hasse().into_iter().map(|(a, b)| [a, b]).collect::<Vec<_>>(),
                "tree": hasse.acyclic,
                "dim": g.dim(),
                "index": cert.index,
                "certified_frobenius": cert.certified_frobenius,
                "failure_bound": cert.failure_bound,
                "seed": case_opts.seed,
            }))
        })
        .collect();
    let entries: Vec<Value> = entries.into_iter().collect::<Result<_, _>>()?;
    let frobenius = entries.iter().filter(|e| e["certified_frobenius"] == json!(true)).count();
    let listed: Vec<&Value> = match filter {
        FilterArg::All => entries.iter().collect(),
        FilterArg::Frobenius => entries.iter().filter(|e| e["certified_frobenius"] == json!(true)).collect(),
    };
    let results = json!({
        "size": size,
        "variant": Variant::from(variant).to_string(),
        "count": entries.len(),
        "frobenius_count": frobenius,
        "lower_bound": suites::remark_bound(size),
        "posets": listed,
    });
    Ok((EXIT_OK, Value::Null, results))
}
