//! Command-line front end. Every subcommand wraps one library routine.
//!
//! Exit codes: 0 success, 1 a verification reported a failure, 2 bad usage or
//! input outside an operation's domain.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::counting::{
    census, kesten_moment, s_count, verify_x_to_q, CensusOptions, MomentTable, DEFAULT_BUDGET,
};
use crate::freegroup::{
    cyclic_reduce, good_rotations, linear_reduce, reduction_profile, stabilization_bound,
    standard_decomposition, Word,
};
use crate::pairing::{
    admissible_half_pairing, enumerate_half_pairings, from_dots, is_w_admissible, is_w_pairing,
    standard_cyclic_reduction, to_dots, DotDiagram, HalfPairing,
};
use crate::poly::{p_from_recurrence, p_from_triangle, verify_q_identity, IntPolynomial, R1Choice};
use crate::rmt::{diagonalization_from_samples, moment_checks, sample_traces, SimConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "cyclelemma",
    version,
    about = "Cyclic reduction in free groups, admissible half-pairings, word counts and random-matrix checks",
    after_help = "Words are written with a..z for generators and A..Z for their inverses, or as JSON \
                  signed-integer arrays such as [1,-2]. Rotation offset r turns l_1..l_n into \
                  l_{r+1}..l_n l_1..l_r. The identity is printed as e."
)]
pub struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Linear reduction.
    Reduce(WordArgs),
    /// Canonical cyclic reduction.
    CyclicReduce(WordArgs),
    /// Rotation offsets with good reduction.
    GoodRotations(WordArgs),
    /// Prefix-reduction profile of the periodic word w w w ...
    Profile {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Split w as x . core . y.
    Decompose(WordArgs),
    /// The admissible half-pairing of a word, or a check of a given pairing.
    Pairing {
        #[command(flatten)]
        word: WordArgs,
        /// Pairing in JSON form {"n":..,"pairs":[[r,s],..],"singletons":[..]} to test instead.
        #[arg(long)]
        check: Option<String>,
    },
    /// Dot diagram of a word's admissible half-pairing, or decode a diagram.
    Dots {
        /// Word to encode (omit with --decode).
        word: Option<String>,
        #[arg(long, alias = "n")]
        gens: Option<usize>,
        /// B/W string to turn back into a half-pairing.
        #[arg(long, conflicts_with = "word")]
        decode: Option<String>,
    },
    /// All half-pairings on n points with k through strings.
    EnumeratePairings {
        #[arg(long, alias = "n")]
        len: usize,
        #[arg(long)]
        k: usize,
    },
    /// Number of length-n words with a given standard cyclic reduction of length k.
    Count {
        #[arg(long, alias = "n")]
        len: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        gens: usize,
    },
    /// Tally every word of length n by standard cyclic reduction.
    Census {
        #[command(flatten)]
        size: SizeArgs,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Number of length-n words reducible to 1.
    Kesten {
        #[command(flatten)]
        size: SizeArgs,
        /// Write the whole triangle s[j][k], j <= n, to this CSV file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Check the expansion of x^n into Q_k against a census.
    VerifyXtoq {
        #[command(flatten)]
        size: SizeArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// The polynomial P_n.
    Poly {
        #[command(flatten)]
        size: SizeArgs,
        #[command(flatten)]
        choice: PolyArgs,
    },
    /// Check that the standard reduction of P_n(x) is Q_n.
    VerifyPoly {
        #[command(flatten)]
        size: SizeArgs,
        #[command(flatten)]
        choice: PolyArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Haar-unitary Monte Carlo: moments and fluctuation covariances.
    Rmt(RmtArgs),
}

#[derive(Debug, Args)]
pub struct WordArgs {
    pub word: String,
    /// Alphabet size; inferred from the word when omitted.
    #[arg(long, alias = "n")]
    pub gens: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SizeArgs {
    #[arg(long, alias = "n")]
    pub len: usize,
    #[arg(long)]
    pub gens: usize,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Cap on (2N)^n * n word-steps.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Worker threads; 0 lets the runtime choose.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

impl RunArgs {
    fn options(&self) -> CensusOptions {
        CensusOptions { budget: self.budget, threads: self.threads }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Triangle,
    Recurrence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum R1Arg {
    DegreeConsistent,
    AsPrinted,
}

#[derive(Debug, Args)]
pub struct PolyArgs {
    #[arg(long, value_enum, default_value_t = Method::Triangle)]
    pub method: Method,
    /// Initial value R_1 for the recurrence.
    #[arg(long, value_enum, default_value_t = R1Arg::DegreeConsistent)]
    pub r1: R1Arg,
}

impl PolyArgs {
    fn build(&self, n: usize, gens: usize) -> IntPolynomial {
        match self.method {
            Method::Triangle => p_from_triangle(n, gens),
            Method::Recurrence => p_from_recurrence(n, gens, self.r1_choice()),
        }
    }

    fn r1_choice(&self) -> R1Choice {
        match self.r1 {
            R1Arg::DegreeConsistent => R1Choice::DegreeConsistent,
            R1Arg::AsPrinted => R1Choice::AsPrinted,
        }
    }
}

#[derive(Debug, Args)]
pub struct RmtArgs {
    /// JSON file with SimConfig fields; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Matrix size m.
    #[arg(long)]
    pub size: Option<usize>,
    #[arg(long)]
    pub gens: Option<usize>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub max_power: Option<usize>,
    /// Generated and printed when omitted.
    #[arg(long)]
    pub seed: Option<u64>,
    /// |z| threshold for covariance checks.
    #[arg(long)]
    pub z_threshold: Option<f64>,
    #[arg(long)]
    pub bias_allowance: Option<f64>,
    #[arg(long)]
    pub threads: Option<usize>,
    /// Number of standard errors allowed on normalized moments.
    #[arg(long, default_value_t = 3.0)]
    pub moment_z: f64,
    /// Largest polynomial degree in the covariance matrices (default min(4, max power)).
    #[arg(long)]
    pub k_max: Option<usize>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

/// Outcome of one subcommand before printing.
struct Outcome {
    text: String,
    json: Value,
    ok: bool,
}

impl Outcome {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Outcome { text: text.into(), json, ok: true }
    }
}

type CmdResult = Result<Outcome, String>;

/// Parses `args` (program name first), runs the command and writes its output
/// to `out`. Errors go to standard error. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(outcome) => {
            let written = if cli.json {
                writeln!(out, "{}", outcome.json)
            } else {
                write!(out, "{}", outcome.text).and_then(|_| {
                    if outcome.text.ends_with('\n') {
                        Ok(())
                    } else {
                        writeln!(out)
                    }
                })
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
            if outcome.ok {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Text form of a word; the identity is `e`.
fn show(w: &Word) -> String {
    if w.is_empty() {
        "e".to_string()
    } else {
        w.to_string()
    }
}

fn parse_word(text: &str, gens: Option<usize>) -> Result<Word, String> {
    if let Some(g) = gens {
        return Word::parse(text, g).map_err(err);
    }
    let wide = Word::parse(text, i32::MAX as usize).map_err(err)?;
    let g = wide.letters().iter().map(|l| l.generator()).max().unwrap_or(1);
    Word::new(g, wide.letters().to_vec()).map_err(err)
}

fn write_file(path: &Path, contents: &str) -> Result<(), String> {
    std::fs::write(path, contents).map_err(|e| format!("{}: {e}", path.display()))
}

fn execute(cmd: &Command) -> CmdResult {
    match cmd {
        Command::Reduce(a) => {
            let w = parse_word(&a.word, a.gens)?;
            let r = linear_reduce(&w);
            Ok(Outcome::ok(show(&r), json!({ "word": w, "reduced": r, "length": r.len() })))
        }
        Command::CyclicReduce(a) => {
            let w = parse_word(&a.word, a.gens)?;
            let r = cyclic_reduce(&w);
            Ok(Outcome::ok(show(&r), json!({ "word": w, "cyclic_reduction": r, "k": r.len() })))
        }
        Command::GoodRotations(a) => {
            let w = parse_word(&a.word, a.gens)?;
            let rots = good_rotations(&w).map_err(err)?;
            let list = rots.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",");
            Ok(Outcome::ok(
                format!("k={} rotations=[{list}]", rots.len()),
                json!({ "word": w, "k": rots.len(), "rotations": rots }),
            ))
        }
        Command::Profile { word, horizon } => {
            let w = parse_word(&word.word, word.gens)?;
            let p = reduction_profile(&w, *horizon).map_err(err)?;
            let bound = stabilization_bound(w.len(), p.shift);
            let values = p.values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
            let text = format!(
                "n={} k={} bound={bound} horizon={} period_start={}\nt: {values}",
                w.len(),
                p.shift,
                p.horizon(),
                p.period_start
            );
            let mut value = serde_json::to_value(&p).map_err(err)?;
            value["bound"] = json!(bound);
            Ok(Outcome::ok(text, value))
        }
        Command::Decompose(a) => {
            let w = parse_word(&a.word, a.gens)?;
            let d = standard_decomposition(&w);
            let text = format!("x={} core={} y={}", show(&d.x), show(&d.core), show(&d.y));
            Ok(Outcome::ok(text, serde_json::to_value(&d).map_err(err)?))
        }
        Command::Pairing { word, check } => {
            let w = parse_word(&word.word, word.gens)?;
            match check {
                Some(src) => {
                    let p: HalfPairing = serde_json::from_str(src).map_err(err)?;
                    let pairing = is_w_pairing(&w, &p).map_err(err)?;
                    let admissible = is_w_admissible(&w, &p).map_err(err)?;
                    Ok(Outcome {
                        text: format!("w-pairing={pairing} admissible={admissible}"),
                        json: json!({ "pairing": p, "w_pairing": pairing, "admissible": admissible }),
                        ok: admissible,
                    })
                }
                None => {
                    let p = admissible_half_pairing(&w).map_err(err)?;
                    let hat = standard_cyclic_reduction(&w);
                    let text = format!(
                        "{}\ndots: {}\nstandard reduction: {}",
                        p.render_ascii(),
                        to_dots(&p),
                        show(&hat)
                    );
                    let value = json!({
                        "pairing": p,
                        "dots": to_dots(&p).to_string(),
                        "standard_reduction": hat,
                    });
                    Ok(Outcome::ok(text, value))
                }
            }
        }
        Command::Dots { word, gens, decode } => match (word, decode) {
            (_, Some(d)) => {
                let diagram: DotDiagram = d.parse().map_err(err)?;
                let p = from_dots(&diagram).map_err(err)?;
                Ok(Outcome::ok(p.render_ascii(), json!({ "dots": diagram.to_string(), "pairing": p })))
            }
            (Some(text), None) => {
                let w = parse_word(text, *gens)?;
                let p = admissible_half_pairing(&w).map_err(err)?;
                let dots = to_dots(&p).to_string();
                Ok(Outcome::ok(dots.clone(), json!({ "word": w, "dots": dots, "pairing": p })))
            }
            (None, None) => Err("give a word or --decode".to_string()),
        },
        Command::EnumeratePairings { len, k } => {
            let all = enumerate_half_pairings(*len, *k).map_err(err)?;
            let mut text = String::new();
            for p in &all {
                let _ = writeln!(text, "{}  {}", to_dots(p), p.render_ascii());
            }
            let _ = write!(text, "total={}", all.len());
            Ok(Outcome::ok(text, json!({ "n": len, "k": k, "total": all.len(), "pairings": all })))
        }
        Command::Count { len, k, gens } => {
            let c = s_count(*len, *k, *gens).map_err(err)?;
            Ok(Outcome::ok(c.to_string(), json!({ "n": len, "k": k, "gens": gens, "count": c.to_string() })))
        }
        Command::Census { size, run, csv } => {
            let c = census(size.len, size.gens, run.options()).map_err(err)?;
            if let Some(path) = csv {
                write_file(path, &c.to_csv())?;
            }
            let mut text = format!("len={} gens={} total={}\n", c.len, c.gens, c.total());
            for (w, n) in &c.counts {
                let _ = writeln!(text, "{} {n}", show(w));
            }
            Ok(Outcome::ok(text, c.to_json()))
        }
        Command::Kesten { size, csv } => {
            if size.gens == 0 {
                return Err("alphabet size must be at least 1".to_string());
            }
            if let Some(path) = csv {
                let table = MomentTable::build(size.len, size.gens).map_err(err)?;
                write_file(path, &table.to_csv())?;
            }
            let m = kesten_moment(size.len, size.gens);
            Ok(Outcome::ok(
                m.to_string(),
                json!({ "n": size.len, "gens": size.gens, "moment": m.to_string() }),
            ))
        }
        Command::VerifyXtoq { size, run } => {
            let report = verify_x_to_q(size.len, size.gens, run.options()).map_err(err)?;
            let mut text = format!(
                "{} n={} gens={} total={} identity={} kesten={}\n",
                if report.passed() { "PASS" } else { "FAIL" },
                report.n,
                report.gens,
                report.total,
                report.identity_count,
                report.kesten
            );
            for c in &report.classes {
                let _ = writeln!(
                    text,
                    "k={} words={} seen={} expected={} min={} max={}",
                    c.k, c.reduced_words, c.classes_seen, c.expected_each, c.min_count, c.max_count
                );
            }
            for v in &report.violations {
                let _ = writeln!(text, "violation: {v}");
            }
            Ok(Outcome { text, json: serde_json::to_value(&report).map_err(err)?, ok: report.passed() })
        }
        Command::Poly { size, choice } => {
            if size.len == 0 {
                return Err("n must be at least 1".to_string());
            }
            let p = choice.build(size.len, size.gens);
            Ok(Outcome::ok(p.to_string(), json!({ "n": size.len, "gens": size.gens, "coefficients": p })))
        }
        Command::VerifyPoly { size, choice, run } => {
            if size.len == 0 {
                return Err("n must be at least 1".to_string());
            }
            let p = choice.build(size.len, size.gens);
            let report = verify_q_identity(&p, size.len, size.gens, run.options()).map_err(err)?;
            let ok = match choice.method {
                Method::Triangle => report.exact,
                Method::Recurrence => report.matches_up_to_constant,
            };
            let mut text = format!(
                "{} P={} exact={} up_to_constant={} constant={}\n",
                if ok { "PASS" } else { "FAIL" },
                report.polynomial,
                report.exact,
                report.matches_up_to_constant,
                report.identity_constant
            );
            for v in &report.violations {
                let _ = writeln!(text, "violation: {v}");
            }
            Ok(Outcome { text, json: serde_json::to_value(&report).map_err(err)?, ok })
        }
        Command::Rmt(a) => run_rmt(a),
    }
}

fn rmt_config(a: &RmtArgs) -> Result<SimConfig, String> {
    let mut cfg = match &a.config {
        Some(path) => {
            let src = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            serde_json::from_str::<SimConfig>(&src).map_err(err)?
        }
        None => SimConfig { seed: rand::random(), ..SimConfig::default() },
    };
    let set = |slot: &mut usize, v: Option<usize>| {
        if let Some(v) = v {
            *slot = v;
        }
    };
    set(&mut cfg.matrix_size, a.size);
    set(&mut cfg.gens, a.gens);
    set(&mut cfg.trials, a.trials);
    set(&mut cfg.max_power, a.max_power);
    set(&mut cfg.threads, a.threads);
    if let Some(s) = a.seed {
        cfg.seed = s;
    }
    if let Some(z) = a.z_threshold {
        cfg.z_threshold = z;
    }
    if let Some(b) = a.bias_allowance {
        cfg.bias_allowance = b;
    }
    cfg.validate().map_err(err)?;
    Ok(cfg)
}

fn run_rmt(a: &RmtArgs) -> CmdResult {
    let cfg = rmt_config(a)?;
    let k_max = a.k_max.unwrap_or(cfg.max_power.min(4));
    if k_max == 0 || k_max > cfg.max_power {
        return Err(format!("k-max must lie in 1..={}", cfg.max_power));
    }
    let samples = sample_traces(&cfg).map_err(err)?;
    let moments = moment_checks(&samples, a.moment_z).map_err(err)?;
    let diag = if k_max >= 2 { Some(diagonalization_from_samples(&samples, k_max).map_err(err)?) } else { None };
    let hermitian = samples.max_hermiticity_error <= 1e-10;
    let ok = hermitian
        && moments.iter().all(|m| m.passed)
        && diag.as_ref().is_none_or(|d| d.passed());

    let mut text = format!(
        "seed={}\nm={} gens={} trials={} max_power={} hermiticity={:.1e} max|eig|={:.4}\n",
        cfg.seed,
        cfg.matrix_size,
        cfg.gens,
        cfg.trials,
        cfg.max_power,
        samples.max_hermiticity_error,
        samples.max_abs_eigenvalue
    );
    for m in &moments {
        let _ = writeln!(
            text,
            "moment p={} mean={:.6} se={:.6} kesten={} z={:+.2} {}",
            m.p,
            m.estimate.value,
            m.estimate.std_err,
            m.kesten,
            m.z,
            if m.passed { "PASS" } else { "FAIL" }
        );
    }
    let mut csv = String::from("kind,i,j,estimate,std_err,z,target\n");
    for m in &moments {
        let _ = writeln!(csv, "moment,{},,{},{},{},{}", m.p, m.estimate.value, m.estimate.std_err, m.z, m.kesten);
    }
    if let Some(d) = &diag {
        for (name, mat) in [("p_basis", &d.p_basis), ("monomial", &d.monomial_basis)] {
            let _ = writeln!(
                text,
                "{name} max off-diagonal |z|={:.2} (threshold {})",
                mat.max_off_diagonal_abs_z, d.z_threshold
            );
            for (i, row) in mat.entries.iter().enumerate() {
                let cells: Vec<String> =
                    row.iter().map(|e| format!("{:>10.3}±{:<8.3}", e.value, e.std_err)).collect();
                let _ = writeln!(text, "  {:<16} {}", mat.basis[i], cells.join(" "));
                for (j, e) in row.iter().enumerate() {
                    let _ = writeln!(csv, "{name},{},{},{},{},{},", i + 1, j + 1, e.value, e.std_err, mat.z[i][j]);
                }
            }
        }
        let _ = writeln!(text, "diagonalization {}", if d.passed() { "PASS" } else { "FAIL" });
    }
    let _ = write!(text, "{}", if ok { "PASS" } else { "FAIL" });
    if let Some(path) = &a.csv {
        write_file(path, &csv)?;
    }
    let value = json!({
        "seed": cfg.seed,
        "config": cfg,
        "max_hermiticity_error": samples.max_hermiticity_error,
        "max_abs_eigenvalue": samples.max_abs_eigenvalue,
        "moments": moments,
        "diagonalization": diag,
        "passed": ok,
    });
    Ok(Outcome { text, json: value, ok })
}
