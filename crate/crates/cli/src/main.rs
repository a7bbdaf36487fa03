use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cyclosum::exact::cyc_context;
use cyclosum::identities::{run_campaign, to_csv, to_jsonl, to_table, CampaignConfig, IdentityId, Verdict};
use cyclosum::matrices::{
    build_bs_diagonal, build_cp_matrix, build_sun_matrix, delete_rows_cols, derangement_sums, det_exact, matmul,
    permanent_ryser, Caps, ExactMatrix, MatrixFile,
};
use cyclosum::spectral::{
    charpoly_lagrange, cp_herm, cp_spectrum_closed_form, herm_eigen, liu_spectrum_check, minor_det_closed_form,
};
use cyclosum::Error;

const USAGE: u8 = 2;
const CAP: u8 = 3;

#[derive(Parser)]
#[command(name = "cyclosum", version, about = "Exact checks of permanent, determinant and spectral identities over cyclotomic fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification campaign and write one report per item.
    Verify(VerifyArgs),
    /// Exact determinant, permanent or derangement sums of a matrix file.
    Compute {
        kind: ComputeKind,
        file: PathBuf,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Numerical spectrum against its closed form.
    Spectrum {
        target: SpectrumTarget,
        #[arg(long)]
        n: u32,
        /// Allowed deviation [default: 1e-8, or 1e-7 for liu]
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Write one of the structured matrices in the matrix file format.
    Matrix {
        target: MatrixTarget,
        #[arg(long)]
        n: u32,
        /// 1-based indices to delete, comma separated (minor defaults to n)
        #[arg(long, value_delimiter = ',')]
        delete: Vec<usize>,
        /// Use entries 1/(1 - zeta^(k-j)) instead of 1/(1 - zeta^(j-k))
        #[arg(long)]
        transpose: bool,
        /// Scaling index s of diag(1 - zeta^(i s)) for liu
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        s: i64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CapArgs {
    /// Largest dimension for Ryser permanents
    #[arg(long, default_value_t = 16)]
    perm_cap: usize,
    /// Largest dimension for derangement enumeration
    #[arg(long, default_value_t = 11)]
    enum_cap: usize,
}

impl CapArgs {
    fn caps(&self) -> Caps {
        Caps {
            permanent_dim: self.perm_cap,
            enumeration_dim: self.enum_cap,
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated identity ids, `thm3_1` for both parities, or `all`
    #[arg(long, value_delimiter = ',', default_value = "all")]
    identities: Vec<String>,
    /// Inclusive range `a..b`, or a single value
    #[arg(long, default_value = "2..8")]
    n: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Seeded trials per n for randomized identities
    #[arg(long, default_value_t = 1)]
    trials: u32,
    #[command(flatten)]
    caps: CapArgs,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Jsonl)]
    format: Format,
    /// Worker threads [default: available parallelism]
    #[arg(long, env = "CYCLOSUM_JOBS")]
    jobs: Option<usize>,
    /// Record measured times instead of 0
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Jsonl,
    Csv,
    #[value(alias = "pretty-table")]
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum ComputeKind {
    Det,
    Per,
    DerangementSums,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpectrumTarget {
    Cp,
    Minor,
    Liu,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixTarget {
    Sun,
    Cp,
    Minor,
    Liu,
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let parse = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("invalid n range {s:?}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if a > b {
        return Err(format!("empty n range {s:?}"));
    }
    Ok((a, b))
}

fn parse_identities(items: &[String]) -> Result<Vec<IdentityId>, String> {
    let mut out = Vec::new();
    for item in items {
        match item.trim() {
            "all" => out.extend(IdentityId::ALL),
            "thm3_1" => out.extend([IdentityId::Thm3_1Odd, IdentityId::Thm3_1Even]),
            other => out.push(other.parse().map_err(|e: Error| e.to_string())?),
        }
    }
    Ok(out)
}

fn emit(output: Option<&PathBuf>, text: &str) -> io::Result<()> {
    match output {
        Some(path) => fs::write(path, text),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}

fn cmd_verify(args: &VerifyArgs) -> ExitCode {
    let (n_min, n_max) = match parse_range(&args.n) {
        Ok(r) => r,
        Err(e) => return fail(USAGE, e),
    };
    let identities = match parse_identities(&args.identities) {
        Ok(ids) => ids,
        Err(e) => return fail(USAGE, e),
    };
    let config = CampaignConfig {
        identities,
        n_min,
        n_max,
        seed: args.seed,
        trials: args.trials,
        caps: args.caps.caps(),
        tol: args.tol,
        jobs: args.jobs,
        timings: args.timings,
    };
    let reports = match run_campaign(&config) {
        Ok(r) => r,
        Err(e) => return fail(USAGE, e),
    };
    let text = match args.format {
        Format::Jsonl => to_jsonl(&reports),
        Format::Csv => to_csv(&reports),
        Format::Table => to_table(&reports),
    };
    if let Err(e) = emit(args.output.as_ref(), &text) {
        return fail(USAGE, format!("cannot write output: {e}"));
    }
    if reports.iter().any(|r| r.verdict == Verdict::Fail) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::CapExceeded { .. } => CAP,
        _ => USAGE,
    }
}

fn cmd_compute(kind: ComputeKind, file: &PathBuf, caps: Caps) -> ExitCode {
    let text = match fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => return fail(USAGE, format!("cannot read {}: {e}", file.display())),
    };
    let m = match MatrixFile::parse_json(&text) {
        Ok(m) => m,
        Err(e) => return fail(USAGE, e),
    };
    let out = match kind {
        ComputeKind::Det => Ok(det_exact(&m).to_exact_string()),
        ComputeKind::Per => permanent_ryser(&m, caps.permanent_dim).map(|p| p.to_exact_string()),
        ComputeKind::DerangementSums => derangement_sums(&m, &caps).map(|s| {
            format!(
                "total: {}\neven_class: {}\nodd_class: {}\nsigned: {}",
                s.total.to_exact_string(),
                s.even_class.to_exact_string(),
                s.odd_class.to_exact_string(),
                s.signed.to_exact_string()
            )
        }),
    };
    match out {
        Ok(s) => {
            println!("{s}");
            ExitCode::SUCCESS
        }
        Err(e) => fail(exit_for(&e), e),
    }
}

fn list(values: impl IntoIterator<Item = String>) -> String {
    format!("[{}]", values.into_iter().collect::<Vec<_>>().join(", "))
}

struct SpectrumOutcome {
    computed: Vec<f64>,
    expected: Vec<String>,
    deviation: f64,
    extra: Vec<(String, String)>,
    exact_ok: bool,
}

fn spectrum(target: SpectrumTarget, n: u32) -> Result<SpectrumOutcome, Error> {
    match target {
        SpectrumTarget::Cp => {
            let computed = herm_eigen(&cp_herm(n)?)?.eigenvalues;
            let expected = cp_spectrum_closed_form(n)?.eigenvalues;
            let deviation = computed
                .iter()
                .zip(&expected)
                .map(|(a, &b)| (a - b as f64).abs())
                .fold(0.0, f64::max);
            Ok(SpectrumOutcome {
                computed,
                expected: expected.iter().map(ToString::to_string).collect(),
                deviation,
                extra: Vec::new(),
                exact_ok: true,
            })
        }
        SpectrumTarget::Minor => {
            if n < 2 {
                return Err(Error::InvalidArgument(format!("n must be at least 2, got {n}")));
            }
            let computed = herm_eigen(&cp_herm(n)?.minor(n as usize)?)?.eigenvalues;
            let expected: Vec<f64> = charpoly_lagrange(n)?.roots()?.iter().map(|z| z.re).collect();
            let deviation = computed
                .iter()
                .zip(&expected)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            let mut extra = Vec::new();
            if n % 2 == 1 {
                let closed = minor_det_closed_form(n)?;
                let product: f64 = computed.iter().product();
                extra.push(("determinant".to_string(), product.to_string()));
                extra.push(("closed_form_determinant".to_string(), closed.to_string()));
            }
            Ok(SpectrumOutcome {
                computed,
                expected: expected.iter().map(ToString::to_string).collect(),
                deviation,
                extra,
                exact_ok: true,
            })
        }
        SpectrumTarget::Liu => {
            let c = liu_spectrum_check(n)?;
            let max_imag = c.eigenvalues.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
            Ok(SpectrumOutcome {
                computed: c.eigenvalues.iter().map(|z| z.re).collect(),
                expected: c.expected.iter().map(ToString::to_string).collect(),
                deviation: c.max_deviation,
                extra: vec![
                    ("max_imaginary_part".to_string(), max_imag.to_string()),
                    ("determinant".to_string(), c.det.to_exact_string()),
                    ("closed_form_determinant".to_string(), c.det_expected.to_string()),
                ],
                exact_ok: c.det_matches(),
            })
        }
    }
}

fn cmd_spectrum(target: SpectrumTarget, n: u32, tol: Option<f64>) -> ExitCode {
    let tol = tol.unwrap_or(match target {
        SpectrumTarget::Liu => 1e-7,
        _ => 1e-8,
    });
    if !(tol > 0.0) {
        return fail(USAGE, "tolerance must be positive");
    }
    let outcome = match spectrum(target, n) {
        Ok(o) => o,
        Err(e) => return fail(exit_for(&e), e),
    };
    println!("eigenvalues: {}", list(outcome.computed.iter().map(ToString::to_string)));
    println!("expected: {}", list(outcome.expected));
    println!("max_deviation: {:e}", outcome.deviation);
    for (k, v) in &outcome.extra {
        println!("{k}: {v}");
    }
    if outcome.deviation <= tol && outcome.exact_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn build_matrix(target: MatrixTarget, n: u32, delete: &[usize], transpose: bool, s: i64) -> Result<ExactMatrix, Error> {
    let ctx = cyc_context(n)?;
    let m = match target {
        MatrixTarget::Sun => build_sun_matrix(&ctx, transpose),
        MatrixTarget::Cp => build_cp_matrix(&ctx),
        MatrixTarget::Minor => {
            let sun = build_sun_matrix(&ctx, transpose);
            return if delete.is_empty() {
                delete_rows_cols(&sun, &[n as usize])
            } else {
                delete_rows_cols(&sun, delete)
            };
        }
        MatrixTarget::Liu => {
            let minor = delete_rows_cols(&build_sun_matrix(&ctx, false), &[n as usize])?;
            return matmul(&minor, &build_bs_diagonal(&ctx, s)?);
        }
    };
    delete_rows_cols(&m, delete)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Compute { kind, file, caps } => cmd_compute(*kind, file, caps.caps()),
        Command::Spectrum { target, n, tol } => cmd_spectrum(*target, *n, *tol),
        Command::Matrix {
            target,
            n,
            delete,
            transpose,
            s,
            output,
        } => match build_matrix(*target, *n, delete, *transpose, *s) {
            Ok(m) => match emit(output.as_ref(), &(MatrixFile::to_json(&m) + "\n")) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(USAGE, format!("cannot write output: {e}")),
            },
            Err(e) => fail(USAGE, e),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..10"), Ok((2, 10)));
        assert_eq!(parse_range("2..=10"), Ok((2, 10)));
        assert_eq!(parse_range("7"), Ok((7, 7)));
        assert!(parse_range("10..2").is_err());
        assert!(parse_range("a..2").is_err());
    }

    #[test]
    fn identity_lists() {
        assert_eq!(parse_identities(&["all".into()]).unwrap().len(), 11);
        assert_eq!(
            parse_identities(&["thm3_1".into(), "eei".into()]).unwrap(),
            vec![IdentityId::Thm3_1Odd, IdentityId::Thm3_1Even, IdentityId::Eei]
        );
        assert!(parse_identities(&["eq9".into()]).is_err());
    }
}
