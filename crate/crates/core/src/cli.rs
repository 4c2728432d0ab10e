//! Command-line front end: `enumerate`, `verify`, `matrices`, `all`.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::coset_enum::{self, EnumerationReport};
use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, MatrixJson};
use crate::expected;
use crate::gf2::{self, reduce_mod2};
use crate::matrix_reps::{
    dn_structure_check, evaluate_word, dihedral_centralizer_check, ones_vector_check, perm_matrix,
    verify_representation, Representation,
};
use crate::oracles::{self, a_oracle_map, d_oracle_map};
use crate::progenitor::{dn_canonical, random_word, Family, FamilySpec, DEFAULT_SEED};
use crate::report::VerificationReport;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_CAP_EXCEEDED: i32 = 2;
pub const EXIT_BAD_CONFIG: i32 = 3;

/// Random words per oracle comparison in `all`.
pub const ORACLE_TRIALS: usize = 500;

#[derive(Parser, Debug)]
#[command(
    name = "symgen",
    version,
    about = "Symmetric presentations of simply laced Weyl groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Enumerate cosets and double cosets of S_n.
    Enumerate(RunArgs),
    /// Check the matrix representation (and its mod-2 reduction with --mod2).
    Verify(RunArgs),
    /// Write generator and control matrices.
    Matrices(RunArgs),
    /// verify, enumerate and the seeded oracle comparisons.
    All(RunArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    #[arg(long)]
    pub family: Family,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub cap: Option<usize>,
    #[arg(long)]
    pub mod2: bool,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Allow family members outside the finite range; requires --cap.
    #[arg(long)]
    pub experimental: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Enumerate,
    Verify,
    Matrices,
    All,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: CommandKind,
    pub spec: FamilySpec,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub cap: usize,
    pub mod2: bool,
    pub seed: u64,
}

impl RunConfig {
    pub fn from_command(command: &Command) -> Result<RunConfig> {
        let (kind, a) = match command {
            Command::Enumerate(a) => (CommandKind::Enumerate, a),
            Command::Verify(a) => (CommandKind::Verify, a),
            Command::Matrices(a) => (CommandKind::Matrices, a),
            Command::All(a) => (CommandKind::All, a),
        };
        let spec = if a.experimental {
            if a.cap.is_none() {
                return Err(Error::Config("--experimental requires --cap".into()));
            }
            FamilySpec::new(a.family, a.n).or_else(|_| FamilySpec::experimental(a.family, a.n))?
        } else {
            FamilySpec::new(a.family, a.n)?
        };
        let cap = match a.cap {
            Some(0) => return Err(Error::Config("--cap must be positive".into())),
            Some(c) => c,
            None => coset_enum::default_cap(&spec)
                .ok_or_else(|| Error::Config(format!("no default cap for {}", spec.name())))?,
        };
        Ok(RunConfig {
            command: kind,
            spec,
            format: a.format,
            out: a.out.clone(),
            cap,
            mod2: a.mod2,
            seed: a.seed,
        })
    }
}

/// What a command produced: both renderings plus the verdict.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub text: String,
    pub json: serde_json::Value,
    pub passed: bool,
}

impl Outcome {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json value");
                s.push('\n');
                s
            }
        }
    }
}

fn report_outcome(r: VerificationReport) -> Outcome {
    Outcome {
        text: r.to_string(),
        passed: r.all_passed(),
        json: serde_json::to_value(&r).expect("report serializes"),
    }
}

/// Compares an enumeration against the expected values, when known.
pub fn enumeration_checks(
    report: &EnumerationReport,
    spec: &FamilySpec,
) -> Result<VerificationReport> {
    let mut r = VerificationReport::new(format!("{} enumeration", spec.name()));
    let sizes = report.sizes();
    let nf = report.control_order;
    r.push(
        "sizes sum to the index",
        sizes.iter().sum::<u64>() == report.index,
        format!("{}", report.index),
    );
    r.push(
        "size x stabilizer order = n!",
        report
            .records
            .iter()
            .all(|x| x.size * x.stabilizer_order == nf),
        "",
    );
    if let Some(e) = expected::expected(spec) {
        r.push(
            "index",
            report.index == e.index,
            format!("{} (expected {})", report.index, e.index),
        );
        r.push(
            "rank",
            report.rank == e.rank,
            format!("{} (expected {})", report.rank, e.rank),
        );
        r.push(
            "group order",
            report.group_order == e.group_order,
            format!("{} (expected {})", report.group_order, e.group_order),
        );
        if let Some(want) = &e.sizes {
            r.push("double coset sizes", &sizes == want, format!("{sizes:?}"));
        }
        if let Some(want) = &e.stabilizers {
            let got = report.stabilizer_orders();
            r.push("stabilizer orders", &got == want, format!("{got:?}"));
        }
    } else {
        r.warnings
            .push(format!("no expected values for {}", spec.name()));
    }
    if spec.family() == Family::D {
        let mut ok = true;
        for rec in &report.records {
            ok &= dn_canonical(&rec.rep_word, spec)? == rec.rep_word;
        }
        r.push("representatives are t12 t34 ... forms", ok, "");
    }
    Ok(r)
}

pub fn cmd_enumerate(cfg: &RunConfig) -> Result<Outcome> {
    let report = coset_enum::enumerate(&cfg.spec, cfg.cap)?;
    let checks = enumeration_checks(&report, &cfg.spec)?;
    Ok(Outcome {
        text: format!("{}\n{}", report.render_table(), checks),
        passed: checks.all_passed(),
        json: json!({ "report": report, "checks": checks }),
    })
}

pub fn verification_report(cfg: &RunConfig) -> Result<VerificationReport> {
    let spec = &cfg.spec;
    let mut r = verify_representation(spec)?;
    match spec.family() {
        Family::A => {}
        Family::D => {
            if spec.n() <= 8 {
                r.extend(dn_structure_check(spec)?);
            } else {
                r.warnings
                    .push("D_n identity checks run for n <= 8 only".into());
            }
        }
        Family::E => {
            let w = ones_vector_check(spec)?;
            r.push(
                "neither <1^n> nor its complement is invariant",
                w.decomposition_broken(),
                format!(
                    "t 1^T = ({}), 1 t = ({})",
                    w.column_image_of_ones.join(","),
                    w.row_image_of_ones.join(",")
                ),
            );
        }
    }
    let rep = Representation::new(spec)?;
    let gens = spec.generators();
    if gens.len() >= 2 && spec.n() <= 8 {
        let d = dihedral_centralizer_check(&rep, &gens[0], &gens[1])?;
        r.push(
            format!(
                "<t{}, t{}> meets N inside the centralizer",
                gens[0], gens[1]
            ),
            d.contained,
            format!("dihedral order {}", d.dihedral_order),
        );
    }
    if cfg.mod2 {
        let cap = coset_enum::default_cap(spec).unwrap_or(cfg.cap);
        r.extend(gf2::mod2_suite(spec, cap)?);
    }
    Ok(r)
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<Outcome> {
    Ok(report_outcome(verification_report(cfg)?))
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LabelledMatrix {
    pub label: String,
    pub matrix: MatrixJson,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Mod2Matrix {
    pub label: String,
    pub rows: Vec<String>,
}

/// The `matrices` document.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MatricesFile {
    pub family: Family,
    pub n: usize,
    pub dim: usize,
    pub generators: Vec<LabelledMatrix>,
    pub control: Vec<LabelledMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mod2: Option<Vec<Mod2Matrix>>,
}

impl MatricesFile {
    pub fn generator_matrices(&self) -> Result<Vec<ExactMatrix>> {
        self.generators
            .iter()
            .map(|g| ExactMatrix::from_json(&g.matrix))
            .collect()
    }

    pub fn load(path: &Path) -> Result<MatricesFile> {
        Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
    }
}

pub fn matrices_file(spec: &FamilySpec, mod2: bool) -> Result<MatricesFile> {
    let rep = Representation::new(spec)?;
    let generators = spec
        .generators()
        .iter()
        .zip(rep.generator_images())
        .map(|(s, m)| LabelledMatrix {
            label: format!("t{s}"),
            matrix: m.to_json(),
        })
        .collect();
    let control = rep
        .control_generators()
        .iter()
        .map(|(p, m)| LabelledMatrix {
            label: p.to_string(),
            matrix: m.to_json(),
        })
        .collect();
    let mod2 = if mod2 {
        Some(
            gf2::reduced_matrices(&rep)?
                .into_iter()
                .map(|(label, m)| Mod2Matrix {
                    label,
                    rows: m.row_strings(),
                })
                .collect(),
        )
    } else {
        None
    };
    Ok(MatricesFile {
        family: spec.family(),
        n: spec.n(),
        dim: spec.dim(),
        generators,
        control,
        mod2,
    })
}

pub fn cmd_matrices(cfg: &RunConfig) -> Result<Outcome> {
    let file = matrices_file(&cfg.spec, cfg.mod2)?;
    let mut text = format!("{} (dimension {})\n", cfg.spec.name(), file.dim);
    for g in file.generators.iter().chain(&file.control) {
        text.push_str(&format!(
            "\n{}\n{}",
            g.label,
            ExactMatrix::from_json(&g.matrix)?
        ));
    }
    if let Some(m2) = &file.mod2 {
        text.push_str("\nmod 2\n");
        for g in m2 {
            text.push_str(&format!("\n{}\n{}\n", g.label, g.rows.join("\n")));
        }
    }
    Ok(Outcome {
        text,
        passed: true,
        json: serde_json::to_value(&file)?,
    })
}

/// Seeded comparisons of the matrix image against the oracles (A, D) or
/// of mod-2 reduction against products (E).
pub fn oracle_report(spec: &FamilySpec, seed: u64, trials: usize) -> Result<VerificationReport> {
    let rep = Representation::new(spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = VerificationReport::new(format!("{} oracles (seed {seed:#x})", spec.name()));
    let dim = spec.dim();
    let mut agree = 0;
    for _ in 0..trials {
        let w = random_word(spec, 10, &mut rng);
        let m = evaluate_word(&w, &rep)?;
        let ok = match spec.family() {
            Family::A => perm_matrix(&a_oracle_map(&w, spec)?, dim)? == m,
            Family::D => {
                let s = d_oracle_map(&w, spec)?;
                m.as_signed_permutation() == Some((s.perm.clone(), s.signs.clone())) && s.is_even()
            }
            Family::E => {
                let v = random_word(spec, 10, &mut rng);
                let mv = evaluate_word(&v, &rep)?;
                reduce_mod2(&(&m * &mv))? == reduce_mod2(&m)?.multiply(&reduce_mod2(&mv)?)?
            }
        };
        agree += usize::from(ok);
    }
    let what = match spec.family() {
        Family::A => "matrix image equals the S_(n+1) oracle",
        Family::D => "matrix image equals the even signed permutation oracle",
        Family::E => "mod-2 reduction is multiplicative",
    };
    r.push(
        what,
        agree == trials,
        format!("{agree}/{trials} random words"),
    );
    let order = oracles::oracle_group_order(spec.family(), spec.n())?;
    if let Some(e) = expected::expected(spec) {
        r.push(
            "oracle group order",
            order == e.group_order,
            format!("{order}"),
        );
    }
    if spec.family() == Family::D && spec.n() == 4 {
        r.push(
            "D4 matrix group is the 192 even signed permutations",
            oracles::d_group_matches_even_signed(4)?,
            "",
        );
    }
    Ok(r)
}

pub fn cmd_all(cfg: &RunConfig) -> Result<Outcome> {
    let mut vcfg = cfg.clone();
    vcfg.mod2 = cfg.mod2 || cfg.spec.family() == Family::E;
    let verify = verification_report(&vcfg)?;
    let enumerate = cmd_enumerate(cfg)?;
    let oracle = oracle_report(&cfg.spec, cfg.seed, ORACLE_TRIALS)?;
    let passed = verify.all_passed() && enumerate.passed && oracle.all_passed();
    Ok(Outcome {
        text: format!("{verify}\n{}\n{oracle}", enumerate.text),
        passed,
        json: json!({
            "verify": verify,
            "enumerate": enumerate.json,
            "oracles": oracle,
            "passed": passed,
        }),
    })
}

pub fn execute(cfg: &RunConfig) -> Result<Outcome> {
    match cfg.command {
        CommandKind::Enumerate => cmd_enumerate(cfg),
        CommandKind::Verify => cmd_verify(cfg),
        CommandKind::Matrices => cmd_matrices(cfg),
        CommandKind::All => cmd_all(cfg),
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => EXIT_CAP_EXCEEDED,
        Error::Config(_)
        | Error::OutOfScope { .. }
        | Error::WrongFamily { .. }
        | Error::CardinalityOutOfRange { .. } => EXIT_BAD_CONFIG,
        _ => EXIT_CHECK_FAILED,
    }
}

/// Runs a parsed command line; returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let cfg = match RunConfig::from_command(&cli.command) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("symgen: {e}");
            return exit_code(&e);
        }
    };
    let outcome = match crate::bfs::with_pool(|| execute(&cfg)) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("symgen: {e}");
            return exit_code(&e);
        }
    };
    let rendered = outcome.render(cfg.format);
    match &cfg.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &rendered) {
                eprintln!("symgen: cannot write {}: {e}", path.display());
                return EXIT_CHECK_FAILED;
            }
        }
        None => print!("{rendered}"),
    }
    if outcome.passed {
        EXIT_OK
    } else {
        eprintln!("symgen: checks failed");
        EXIT_CHECK_FAILED
    }
}
