//! `sumcat`: table emission and verification suites.
//!
//! Exit codes: 0 when every check passes, 1 when a verification fails (the
//! reports go to stderr or `--out`), 2 on usage errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use sumcat::algebra::{
    check_algebra_axioms, check_braided_functor, check_intertwiners, check_mu_cocycle_condition,
    check_quotient_identification, check_rep_axioms, induce, is_local, lattice_algebra, Mode,
};
use sumcat::lattice_voa::{associator_via_chain, compare_tables, rep0_simples, rep0_tables, verify_tables_coherence};
use sumcat::monoidal_completion::{check_completion_coherence, CompletionAxiom};
use sumcat::pointed_base::{
    check_base_coherence, cyclic_data, heisenberg_data, lattice_reference_data, BaseAxiom, BaseLabel, PointedData,
    Scope,
};
use sumcat::sum_completion::Window;
use sumcat::{Error, Report};

const OUT_DIR_ENV: &str = "SUMCAT_OUT_DIR";

#[derive(Parser)]
#[command(name = "sumcat", version, about = "Direct-sum completions, lattice algebras and their module tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Clone, Copy, ValueEnum)]
enum BaseKind {
    LatticeReference,
    Heisenberg,
    Cyclic,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Symbolic,
    Window,
}

/// `r` for `[−r, r]`, or `lo:hi`.
#[derive(Clone, Copy, Debug)]
struct WindowArg(Window);

impl FromStr for WindowArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("expected a radius or lo:hi, got {s:?}");
        let w = match s.split_once(':') {
            Some((lo, hi)) => Window::new(lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?),
            None => {
                let r: i64 = s.trim().parse().map_err(|_| bad())?;
                if r < 0 {
                    return Err(bad());
                }
                Window::symmetric(r)
            }
        };
        if w.lo > w.hi {
            return Err(format!("empty window {s:?}"));
        }
        Ok(WindowArg(w))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit the Rep0 tables of the lattice algebra.
    Tables {
        #[arg(long = "N", value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Output file (json, markdown) or directory (csv).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Brute-force coherence of a pointed base.
    VerifyBase {
        #[arg(long = "N", value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        d: u64,
        /// One axiom name, or all of them when omitted.
        #[arg(long)]
        axiom: Option<String>,
        /// Needed for the Heisenberg base, whose grading group is infinite.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<WindowArg>,
        #[arg(long, value_enum, default_value = "lattice-reference")]
        base: BaseKind,
        /// Install the base's alternative twist (only the lattice reference has one).
        #[arg(long = "alt-twist")]
        alt_twist: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded randomized laws of the completion over a finite base.
    VerifyCompletion {
        /// `cyclic:<n>` or `lattice-reference:<N>`.
        #[arg(long, default_value = "cyclic:3")]
        base: String,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long = "max-size", default_value_t = 4)]
        max_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Algebra axioms of V_L and the cocycle condition on its multiplication.
    VerifyAlgebra {
        #[arg(long = "N", value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        d: u64,
        #[arg(long, value_enum, default_value = "symbolic")]
        mode: ModeArg,
        #[arg(long, default_value = "3", allow_hyphen_values = true)]
        window: WindowArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Induced modules F(F_m), m in 0..2Nd, with their locality.
    Rep0 {
        #[arg(long = "N", value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        d: u64,
    },
    /// Every check on the induced modules and the output category.
    VerifyRep0 {
        #[arg(long = "N", value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, default_value = "3", allow_hyphen_values = true)]
        window: WindowArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pipeline tables against the reference lattice category.
    Compare {
        #[arg(long = "N", value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotConstantOnWindow(_) | Error::NotLocal(_) | Error::NotMonomial(_) => Failure::Check(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn io_usage(path: &Path, e: std::io::Error) -> Failure {
    Failure::Usage(format!("{}: {e}", path.display()))
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

/// Prints the reports; on failure also dumps them to `out` or stderr.
fn finish(reports: Vec<Report>, out: Option<&Path>) -> Result<bool, Failure> {
    let passed = reports.iter().all(Report::passed);
    let summary: Vec<_> = reports
        .iter()
        .map(|r| json!({"axiom": r.axiom, "mode": r.mode, "tuples_checked": r.tuples_checked, "failures": r.failures.len(), "passed": r.passed()}))
        .collect();
    println!("{}", pretty(&json!({"passed": passed, "reports": summary})));
    if !passed {
        let dump = pretty(&json!(reports));
        match out {
            Some(p) => fs::write(p, dump + "\n").map_err(|e| io_usage(p, e))?,
            None => eprintln!("{dump}"),
        }
    }
    Ok(passed)
}

fn base_data(kind: BaseKind, n: u64, d: u64) -> PointedData {
    match kind {
        BaseKind::LatticeReference => lattice_reference_data(n),
        BaseKind::Heisenberg => heisenberg_data(n, d),
        BaseKind::Cyclic => cyclic_data(n),
    }
}

fn parse_base(s: &str) -> Result<PointedData, Failure> {
    let bad = || Failure::Usage(format!("unknown base {s:?}; expected cyclic:<n> or lattice-reference:<N>"));
    let (kind, n) = s.split_once(':').ok_or_else(bad)?;
    let n: u64 = n.parse().map_err(|_| bad())?;
    if n == 0 {
        return Err(bad());
    }
    match kind {
        "cyclic" => Ok(cyclic_data(n)),
        "lattice-reference" => Ok(lattice_reference_data(n)),
        _ => Err(bad()),
    }
}

fn parse_axioms<A: FromStr<Err = Error> + Copy>(name: Option<&str>, all: &[A]) -> Result<Vec<A>, Failure> {
    match name {
        None | Some("all") => Ok(all.to_vec()),
        Some(s) => Ok(vec![s.parse()?]),
    }
}

fn tables(n: u64, format: Format, out: Option<PathBuf>) -> Result<bool, Failure> {
    let t = rep0_tables(n)?;
    let single = |body: String| -> Result<bool, Failure> {
        match &out {
            Some(p) => fs::write(p, body).map_err(|e| io_usage(p, e))?,
            None => print!("{body}"),
        }
        Ok(true)
    };
    match format {
        Format::Json => single(t.to_json() + "\n"),
        Format::Markdown => single(t.to_markdown()),
        Format::Csv => {
            let dir = out
                .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
                .ok_or_else(|| Failure::Usage(format!("csv output needs --out <dir> or {OUT_DIR_ENV}")))?;
            fs::create_dir_all(&dir).map_err(|e| io_usage(&dir, e))?;
            for (name, body) in t.to_csv() {
                let p = dir.join(name);
                fs::write(&p, body).map_err(|e| io_usage(&p, e))?;
                println!("{}", p.display());
            }
            Ok(true)
        }
    }
}

fn verify_rep0(n: u64, w: Window) -> Result<Vec<Report>, Failure> {
    let alg = lattice_algebra(n, 1);
    let size = 2 * n as i64;
    let mode = Mode::Window(w);
    let mut modules = Report::new("rep0_modules", mode.describe());
    for (a, m) in (0..size).zip(rep0_simples(n)?) {
        modules.absorb(check_rep_axioms(&alg, &m, &Mode::Symbolic)?);
        modules.absorb(check_rep_axioms(&alg, &m, &mode)?);
        let local = is_local(&alg, &m, &mode)?;
        modules.check(local, || json!({"not_local_on_window": a}));
    }
    let mut quotient = Report::new("quotient_and_functor", mode.describe());
    let mut chain = Report::new("associator_chain", mode.describe());
    for x in 0..size {
        for y in 0..size {
            quotient.absorb(check_quotient_identification(n, 1, x, y, &w)?);
            quotient.absorb(check_braided_functor(&alg, x, y, &Mode::Symbolic)?);
            quotient.absorb(check_braided_functor(&alg, x, y, &mode)?);
            quotient.absorb(check_intertwiners(&alg, x, y, alg.grain().lattice_unit())?);
            for z in 0..size {
                let ok = associator_via_chain(n, x, y, z, &w).is_ok();
                chain.check(ok, || json!({"not_constant": [x, y, z]}));
            }
        }
    }
    let tables = rep0_tables(n)?;
    Ok(vec![modules, quotient, chain, verify_tables_coherence(&tables)?, compare_tables(&tables)])
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Tables { n, format, out } => tables(n, format, out),
        Command::VerifyBase {
            n,
            d,
            axiom,
            window,
            base,
            alt_twist,
            out,
        } => {
            let mut data = base_data(base, n, d);
            if alt_twist {
                data = data
                    .using_alt_twist()
                    .ok_or_else(|| Failure::Usage("this base has no alternative twist".into()))?;
            }
            let scope = match window {
                Some(WindowArg(w)) => Scope::Window { lo: w.lo, hi: w.hi },
                None => Scope::Full,
            };
            let reports = parse_axioms(axiom.as_deref(), &BaseAxiom::ALL)?
                .into_iter()
                .map(|ax| check_base_coherence(&data, ax, &scope))
                .collect::<Result<Vec<_>, _>>()?;
            finish(reports, out.as_deref())
        }
        Command::VerifyCompletion {
            base,
            trials,
            max_size,
            seed,
            out,
        } => {
            let data = parse_base(&base)?;
            if max_size == 0 {
                return Err(Failure::Usage("--max-size must be at least 1".into()));
            }
            let reports = CompletionAxiom::ALL
                .into_iter()
                .enumerate()
                .map(|(i, ax)| check_completion_coherence(ax, &data, trials as usize, max_size, seed.wrapping_add(i as u64)))
                .collect();
            finish(reports, out.as_deref())
        }
        Command::VerifyAlgebra { n, d, mode, window, out } => {
            let alg = lattice_algebra(n, d);
            let mode = match mode {
                ModeArg::Symbolic => Mode::Symbolic,
                ModeArg::Window => Mode::Window(window.0),
            };
            let reports = vec![
                check_algebra_axioms(&alg, &mode)?,
                check_mu_cocycle_condition(n, d, &window.0)?,
            ];
            finish(reports, out.as_deref())
        }
        Command::Rep0 { n, d } => {
            let alg = lattice_algebra(n, d);
            let rows = (0..2 * (n * d) as i64)
                .map(|m| {
                    let module = induce(&alg, &BaseLabel::scalar(m))?;
                    let local = is_local(&alg, &module, &Mode::Symbolic)?;
                    Ok(json!({"label": m, "local": local, "object": module.object}))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            println!("{}", pretty(&json!({"N": n, "d": d, "modules": rows})));
            Ok(true)
        }
        Command::VerifyRep0 { n, window, out } => finish(verify_rep0(n, window.0)?, out.as_deref()),
        Command::Compare { n, out } => {
            let t = rep0_tables(n)?;
            let report = compare_tables(&t);
            for note in &report.notes {
                println!("note: {note}");
            }
            finish(vec![report], out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
