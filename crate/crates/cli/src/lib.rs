//! Command-line front end for `matalg`.
//!
//! Exit codes: 0 true/success, 1 property false, 2 input error,
//! 3 indeterminate (or no eigenvalue numbering).

pub mod doc;
pub mod report;

use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use matalg::maps::{self, MapOptions};
use matalg::numerics::ToleranceConfig;
use matalg::property_l::{self, DEFAULT_KL_TRIALS};
use matalg::triangularization::{self as tri, Criterion};
use matalg::{fixtures, generate_algebra, algebra, MatrixSet, Numbering, Verdict};
use serde_json::{json, Value};

use doc::{read_json, to_canonical_json, MapDocument, SetDocument};

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INDETERMINATE: i32 = 3;

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Input(String),
    Indeterminate(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "input error: {msg}"),
            CliError::Indeterminate(msg) => write!(f, "indeterminate: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Indeterminate(_) => EXIT_INDETERMINATE,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "matalg", version, about = "Structure tests for matrix sets and linear maps")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Relative singular-value cutoff for numerical rank.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol_rank: f64,
    /// Relative threshold for zero tests.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol_zero: f64,
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Cap on the number of words any enumeration may produce.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub max_words: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generated algebra, radical, defect and triangularizability of a set.
    Analyze { set: PathBuf },
    /// Randomized Property kL check.
    CheckKl {
        set: PathBuf,
        /// Coefficient size, or `auto` for defect + 3.
        #[arg(long, default_value = "auto")]
        k: KArg,
        #[arg(long, default_value_t = DEFAULT_KL_TRIALS)]
        trials: usize,
    },
    /// Invertibility preservation and homomorphism tests for a linear map.
    CheckMap {
        map: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        k_list: Vec<usize>,
        /// Largest power in the trace identities (default h + n).
        #[arg(long)]
        m_max: Option<usize>,
        #[arg(long, default_value_t = maps::DEFAULT_TRIALS)]
        trials: usize,
    },
    /// Computes a common invariant flag.
    Triangularize {
        set: PathBuf,
        /// Where to write the flag basis.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Writes the built-in example documents to a directory.
    ExportCorpus { dir: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KArg {
    Auto,
    Fixed(usize),
}

impl std::str::FromStr for KArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "auto" {
            return Ok(KArg::Auto);
        }
        match s.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(KArg::Fixed(k)),
            _ => Err(format!("expected a positive integer or `auto`, got `{s}`")),
        }
    }
}

/// What a command prints and how it exits.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub json: Value,
    pub text: String,
}

impl Outcome {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_canonical_json(&self.json),
            Format::Text => self.text.clone(),
        }
    }
}

impl GlobalOpts {
    pub fn config(&self) -> Result<ToleranceConfig, CliError> {
        let mut cfg = ToleranceConfig::new(self.tol_rank, self.tol_zero, self.seed)?;
        cfg.word_cap = self.max_words;
        Ok(cfg)
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let cfg = cli.global.config()?;
    match &cli.command {
        Command::Analyze { set } => cmd_analyze(set, &cfg),
        Command::CheckKl { set, k, trials } => cmd_check_kl(set, *k, *trials, &cfg),
        Command::CheckMap {
            map,
            k_list,
            m_max,
            trials,
        } => {
            let opts = MapOptions {
                k_list: k_list.clone(),
                m_max: *m_max,
                trials: *trials,
            };
            cmd_check_map(map, &opts, &cfg)
        }
        Command::Triangularize { set, out } => cmd_triangularize(set, out.as_deref(), &cfg),
        Command::ExportCorpus { dir } => cmd_export_corpus(dir),
    }
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::True => EXIT_TRUE,
        Verdict::False => EXIT_FALSE,
        Verdict::Indeterminate => EXIT_INDETERMINATE,
    }
}

fn load_set(path: &Path) -> Result<(SetDocument, MatrixSet), CliError> {
    let doc: SetDocument = read_json(path)?;
    let set = doc.to_set()?;
    Ok((doc, set))
}

fn matrix_text(m: &matalg::Matrix) -> String {
    let mut s = String::new();
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols())
            .map(|j| {
                let z = m[(i, j)];
                format!("{:+.6}{:+.6}i", z.re, z.im)
            })
            .collect();
        s.push_str(&format!("  {}\n", row.join("  ")));
    }
    s
}

fn fmt_residual(r: f64) -> String {
    format!("{r:.3e}")
}

pub fn cmd_analyze(path: &Path, cfg: &ToleranceConfig) -> Result<Outcome, CliError> {
    let (_, set) = load_set(path)?;
    let alg = generate_algebra(&set, cfg)?;
    let (comm, comm_worst) = algebra::commutative_mod_radical(&set, &alg, cfg)?;

    let mut reports = vec![
        tri::mccoy_trace_check(&set, cfg)?,
        tri::triangularize_report(&set, cfg)?,
    ];
    let mats = set.matrices();
    if mats.len() == 2 {
        let (x, y) = (&mats[0], &mats[1]);
        match set.n() {
            2 => {
                reports.push(tri::pair2_check(x, y, cfg)?);
                reports.push(tri::friedland_check(x, y, cfg)?);
            }
            3 => reports.push(tri::pair3_check(x, y, cfg)?),
            _ => {}
        }
    }

    // the trace criterion and the constructive builder decide; the
    // specialized pair criteria are reported alongside
    let (mccoy, constructive) = (reports[0].verdict, reports[1].verdict);
    let triangularizable = match (mccoy, constructive) {
        (a, b) if a == b => a,
        (Verdict::Indeterminate, b) => b,
        (a, Verdict::Indeterminate) => a,
        _ => Verdict::Indeterminate,
    };
    let any_indeterminate = comm == Verdict::Indeterminate
        || triangularizable == Verdict::Indeterminate
        || reports.iter().any(|r| r.verdict == Verdict::Indeterminate);

    let mut out = json!({
        "n": set.n(),
        "generators": set.names(),
        "dim_generating_space": alg.generating_dim(),
        "filtration_dims": alg.filtration_dims,
        "dim_algebra": alg.dim(),
        "dim_radical": alg.radical_dim(),
        "dim_semisimple": alg.semisimple_dim(),
        "semisimple_defect": alg.defect,
        "commutative_mod_radical": comm.as_str(),
        "triangularizable": triangularizable.as_str(),
        "criteria": reports.iter().map(|r| report::triang(&set, r)).collect::<Vec<_>>(),
    });
    if let Some((i, j, r)) = comm_worst.filter(|_| comm != Verdict::True) {
        let names = set.names();
        out["commutator_witness"] = json!({
            "pair": [names[i], names[j]],
            "residual": report::num(r),
        });
    }
    if triangularizable == Verdict::False {
        if let Some(r) = reports.iter().find(|r| r.verdict == Verdict::False) {
            let (w, res) = r.witness.as_ref().expect("false verdicts carry a witness");
            out["witness"] = report::witness(&set, w, *res);
        }
    }

    let mut text = format!(
        "n: {}\ndim L: {}\nfiltration dims: {:?}\ndim B: {}\ndim J: {}\nsemisimple defect: {}\n\
         commutative mod radical: {}\n",
        set.n(),
        alg.generating_dim(),
        alg.filtration_dims,
        alg.dim(),
        alg.radical_dim(),
        alg.defect,
        comm
    );
    for r in &reports {
        text.push_str(&format!(
            "{}: {} (max residual {})",
            r.criterion,
            r.verdict,
            fmt_residual(r.max_residual)
        ));
        if r.verdict != Verdict::True {
            if let Some((w, res)) = &r.witness {
                text.push_str(&format!("; witness {w} at {}", fmt_residual(*res)));
            }
        }
        text.push('\n');
    }
    text.push_str(&format!("triangularizable: {triangularizable}\n"));

    let code = if any_indeterminate { EXIT_INDETERMINATE } else { EXIT_TRUE };
    Ok(Outcome { code, json: out, text })
}

pub fn cmd_check_kl(
    path: &Path,
    k: KArg,
    trials: usize,
    cfg: &ToleranceConfig,
) -> Result<Outcome, CliError> {
    let (doc, set) = load_set(path)?;
    let k = match k {
        KArg::Fixed(k) => k,
        KArg::Auto => generate_algebra(&set, cfg)?.defect + 3,
    };
    let (numbering, source) = match doc.to_numbering()? {
        Some(num) => (Some(num), "document"),
        None => (property_l::find_set_numbering(&set, cfg)?, "search"),
    };
    let Some(numbering): Option<Numbering> = numbering else {
        let out = json!({
            "k": k,
            "verdict": Verdict::Indeterminate.as_str(),
            "numbering": Value::Null,
            "note": "no simultaneous eigenvalue numbering found",
        });
        let text = format!("k: {k}\nno simultaneous eigenvalue numbering found\n");
        return Ok(Outcome {
            code: EXIT_INDETERMINATE,
            json: out,
            text,
        });
    };
    let r = property_l::check_property_kL(&set, &numbering, k, trials, cfg)?;
    let mut out = report::kl_report(&r);
    out["numbering"] = report::numbering(&set, &numbering);
    out["numbering_source"] = json!(source);

    let mut text = format!(
        "k: {}\nproperty kL: {} ({} trials, seed {}, max residual {})\n",
        r.k,
        r.verdict,
        r.trials,
        r.seed,
        fmt_residual(r.max_residual)
    );
    if r.verdict != Verdict::True {
        if let Some(w) = &r.witness {
            text.push_str(&format!(
                "witness: trial {} ({} form), residual {}\n",
                w.trial,
                w.form.as_str(),
                fmt_residual(w.residual)
            ));
        }
    }
    Ok(Outcome {
        code: verdict_code(r.verdict),
        json: out,
        text,
    })
}

pub fn cmd_check_map(
    path: &Path,
    opts: &MapOptions,
    cfg: &ToleranceConfig,
) -> Result<Outcome, CliError> {
    let doc: MapDocument = read_json(path)?;
    let map = doc.to_map(cfg)?;
    if opts.k_list.iter().any(|&k| k == 0) {
        return Err(CliError::Input("k-list entries must be positive".into()));
    }
    let r = maps::analyze_map(&map, opts, cfg)?;

    let verdicts: Vec<Verdict> = [r.invertibility_preserving.verdict]
        .into_iter()
        .chain(r.k_results.iter().map(|k| k.verdict))
        .chain([r.hom_mod_radical.verdict, r.jordan_mod_radical.verdict])
        .collect();
    let overall = verdicts.iter().fold(Verdict::True, |acc, v| acc.and(*v));

    let mut out = json!({
        "h": map.h(),
        "n": map.n(),
        "dim_domain": map.dim(),
        "image_dim": r.image_dim,
        "algebra_dim": r.algebra_dim,
        "radical_dim": r.radical_dim,
        "semisimple_defect": r.defect,
        "invertibility_preserving": report::invertibility(&r.invertibility_preserving),
        "k_invertibility": r.k_results.iter().map(report::k_invertibility).collect::<Vec<_>>(),
        "hom_mod_radical": report::hom("hom-mod-radical", &r.hom_mod_radical),
        "jordan_mod_radical": report::hom("jordan-mod-radical", &r.jordan_mod_radical),
        "verdict": overall.as_str(),
    });
    let first_false = std::iter::once(&out["invertibility_preserving"])
        .chain(out["k_invertibility"].as_array().into_iter().flatten())
        .chain([&out["hom_mod_radical"], &out["jordan_mod_radical"]])
        .find(|v| v["verdict"] == "false")
        .and_then(|v| v.get("witness"))
        .cloned();
    if let Some(w) = first_false {
        out["witness"] = w;
    }

    let inv = &r.invertibility_preserving;
    let mut text = format!(
        "h: {}\nn: {}\nimage dim: {}\nimage algebra dim: {}\nradical dim: {}\nsemisimple defect: {}\n\
         invertibility preserving: {} (m <= {}, {} trials, seed {}, max residual {}; {})\n",
        map.h(),
        map.n(),
        r.image_dim,
        r.algebra_dim,
        r.radical_dim,
        r.defect,
        inv.verdict,
        inv.m_max,
        inv.trials,
        inv.seed,
        fmt_residual(inv.max_residual),
        maps::InvertibilityReport::NOTE
    );
    for k in &r.k_results {
        text.push_str(&format!(
            "{}-invertibility preserving: {} (max residual {}",
            k.k,
            k.verdict,
            fmt_residual(k.max_residual)
        ));
        if let (false, Some(w)) = (k.verdict.is_true(), &k.witness) {
            text.push_str(&format!("; {} witness, trial {}, m = {}", w.source, w.trial, w.m));
        }
        text.push_str(")\n");
    }
    for (label, h) in [
        ("hom mod radical", &r.hom_mod_radical),
        ("jordan mod radical", &r.jordan_mod_radical),
    ] {
        text.push_str(&format!("{label}: {}", h.verdict));
        if let (false, Some((i, j, res))) = (h.verdict.is_true(), h.witness) {
            text.push_str(&format!(" (basis pair ({i}, {j}), residual {})", fmt_residual(res)));
        }
        text.push('\n');
    }
    Ok(Outcome {
        code: verdict_code(overall),
        json: out,
        text,
    })
}

pub fn cmd_triangularize(
    path: &Path,
    out_path: Option<&Path>,
    cfg: &ToleranceConfig,
) -> Result<Outcome, CliError> {
    let (_, set) = load_set(path)?;
    let r = tri::triangularize_report(&set, cfg)?;
    let mut out = report::triang(&set, &r);
    let mut text = format!("triangularizable: {} (residual {})\n", r.verdict, fmt_residual(r.max_residual));
    match (&r.verdict, &r.flag_basis) {
        (Verdict::True, Some(basis)) => {
            let flag = json!({ "n": set.n(), "flag_basis": report::matrix(basis) });
            if let Some(p) = out_path {
                std::fs::write(p, to_canonical_json(&flag))
                    .map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
                text.push_str(&format!("flag basis written to {}\n", p.display()));
            } else {
                text.push_str("flag basis (columns):\n");
                text.push_str(&matrix_text(basis));
            }
            out["flag_basis"] = flag["flag_basis"].clone();
        }
        _ => {
            if let Some((w, res)) = &r.witness {
                text.push_str(&format!("witness: {w} (residual {})\n", fmt_residual(*res)));
            }
            if let Some(note) = &r.note {
                text.push_str(&format!("note: {note}\n"));
            }
        }
    }
    debug_assert_eq!(r.criterion, Criterion::Constructive);
    Ok(Outcome {
        code: verdict_code(r.verdict),
        json: out,
        text,
    })
}

/// File name and canonical JSON of every corpus document.
pub fn corpus() -> Vec<(String, String)> {
    let cfg = ToleranceConfig::default();
    let set = |s: &MatrixSet, num: Option<&Numbering>| to_canonical_json(&SetDocument::from_set(s, num));
    let map = |m: &matalg::LinearMatrixMap| to_canonical_json(&MapDocument::from_map(m));

    let diagonal = fixtures::diagonal_set();
    let diagonal_numbering = Numbering {
        roots: diagonal
            .matrices()
            .iter()
            .map(|m| m.diagonal().iter().copied().collect())
            .collect(),
    };
    let identity = MatrixSet::new(3, vec![("I".into(), matalg::numerics::identity(3))])
        .expect("valid set");
    let transpose = maps::transposition(2, &cfg).expect("valid map");

    vec![
        ("wielandt_3_1.json".into(), set(&fixtures::wielandt_3_1(), None)),
        ("example_2_9.json".into(), set(&fixtures::example_2_9(), None)),
        ("friedland_pair_smoke.json".into(), set(&fixtures::friedland_pair_smoke(), None)),
        ("diagonal_3.json".into(), set(&diagonal, Some(&diagonal_numbering))),
        ("conjugated_triangular.json".into(), set(&fixtures::conjugated_triangular_set(7, 3, 3), None)),
        ("identity_3.json".into(), set(&identity, None)),
        ("example_4_3a.json".into(), map(&fixtures::example_4_3a())),
        ("example_4_3b.json".into(), map(&fixtures::example_4_3b())),
        ("example_4_3c.json".into(), map(&fixtures::example_4_3c())),
        ("transpose_m2.json".into(), map(&transpose)),
    ]
}

pub fn cmd_export_corpus(dir: &Path) -> Result<Outcome, CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
    let files = corpus();
    for (name, body) in &files {
        let p = dir.join(name);
        std::fs::write(&p, body).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
    }
    let names: Vec<&str> = files.iter().map(|(n, _)| n.as_str()).collect();
    Ok(Outcome {
        code: EXIT_TRUE,
        json: json!({ "written": names }),
        text: format!("wrote {} files to {}\n", names.len(), dir.display()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_arg_parsing() {
        assert_eq!("auto".parse::<KArg>().unwrap(), KArg::Auto);
        assert_eq!("3".parse::<KArg>().unwrap(), KArg::Fixed(3));
        assert!("0".parse::<KArg>().is_err());
        assert!("x".parse::<KArg>().is_err());
    }

    #[test]
    fn global_flags_anywhere() {
        let cli = Cli::try_parse_from([
            "matalg", "check-map", "m.json", "--k-list", "1,3", "--seed", "9", "--format", "json",
        ])
        .unwrap();
        assert_eq!(cli.global.seed, 9);
        assert_eq!(cli.global.format, Format::Json);
        match cli.command {
            Command::CheckMap { k_list, .. } => assert_eq!(k_list, vec![1, 3]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_tolerance_is_input_error() {
        let cli = Cli::try_parse_from(["matalg", "--tol-zero", "2", "analyze", "x.json"]).unwrap();
        assert_eq!(run(&cli).unwrap_err().exit_code(), EXIT_INPUT);
    }

    #[test]
    fn corpus_documents_parse() {
        let cfg = ToleranceConfig::default();
        for (name, body) in corpus() {
            if let Ok(d) = serde_json::from_str::<SetDocument>(&body) {
                d.to_set().unwrap();
            } else {
                let d: MapDocument = serde_json::from_str(&body).unwrap();
                d.to_map(&cfg).unwrap_or_else(|e| panic!("{name}: {e}"));
            }
        }
    }
}
