use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mvsp_core::curve::{h_exponent, CurveInstance, EnumBounds};
use mvsp_core::mvsp::{Profile, ProfileRecord};
use mvsp_core::report::{
    certify, field_for, sweep, sweep_csv, CertifyOptions, ProfileSet, Verdict,
};

const EXIT_INVALID: u8 = 1;
const EXIT_FAILED_CHECK: u8 = 3;

#[derive(Parser)]
#[command(
    name = "mvsp",
    version,
    about = "Construct and certify minimal value set polynomial curves"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the profile record and the polynomials f, u, v.
    Construct(InstanceArgs),
    /// Run every applicable check on one instance.
    Certify {
        #[command(flatten)]
        inst: InstanceArgs,
        /// Enumeration bound; overrides MVSP_MAX_ENUM.
        #[arg(long)]
        max_enum: Option<u64>,
        #[arg(long, value_enum, default_value_t = CertOut::Json)]
        out: CertOut,
    },
    /// Tabulate many instances as CSV.
    Sweep {
        /// Comma-separated prime powers.
        #[arg(long, value_delimiter = ',', required = true)]
        q_list: Vec<u64>,
        /// Inclusive range such as 3..5 or 3-5, or a single value.
        #[arg(long, value_parser = parse_range)]
        n_range: (u32, u32),
        #[arg(long, value_enum, default_value_t = Profiles::HFamily)]
        profiles: Profiles,
        #[arg(long)]
        max_enum: Option<u64>,
        #[arg(long, value_enum, default_value_t = SweepOut::Csv)]
        out: SweepOut,
    },
}

#[derive(Args)]
#[group(id = "instance")]
struct InstanceArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    n: u32,
    /// Comma-separated r_0 < r_1 < ... starting at 0.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        conflicts_with = "h_family",
        required_unless_present = "h_family"
    )]
    r_tuple: Option<Vec<u32>>,
    /// Use the tuple (0, r) with r the least integer above n/2 prime to n.
    #[arg(long)]
    h_family: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum CertOut {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepOut {
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Profiles {
    All,
    HFamily,
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let parts: Vec<&str> = if let Some((a, b)) = s.split_once("..") {
        vec![a, b.trim_start_matches('=')]
    } else if let Some((a, b)) = s.split_once('-') {
        vec![a, b]
    } else {
        vec![s, s]
    };
    let lo = parts[0]
        .trim()
        .parse::<u32>()
        .map_err(|e| format!("{s}: {e}"))?;
    let hi = parts[1]
        .trim()
        .parse::<u32>()
        .map_err(|e| format!("{s}: {e}"))?;
    Ok((lo, hi))
}

fn bounds(flag: Option<u64>) -> Result<EnumBounds, String> {
    let max = match flag {
        Some(m) => Some(m),
        None => match std::env::var("MVSP_MAX_ENUM") {
            Ok(v) => Some(
                v.trim()
                    .parse::<u64>()
                    .map_err(|e| format!("MVSP_MAX_ENUM={v}: {e}"))?,
            ),
            Err(_) => None,
        },
    };
    Ok(max.map_or_else(EnumBounds::default, EnumBounds::from_max_enum))
}

fn instance(a: &InstanceArgs) -> mvsp_core::Result<CurveInstance> {
    let field = field_for(a.q, a.n)?;
    let r_list = match &a.r_tuple {
        Some(r) => r.clone(),
        None => vec![0, h_exponent(a.n)?],
    };
    Ok(CurveInstance::new(Profile::new(a.n, &r_list, &field)?))
}

fn invalid(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_INVALID)
}

fn main() -> ExitCode {
    match Cli::parse().cmd {
        Cmd::Construct(a) => {
            let c = match instance(&a) {
                Ok(c) => c,
                Err(e) => return invalid(e),
            };
            let rec = ProfileRecord::new(c.profile());
            println!(
                "{}",
                serde_json::to_string(&rec).expect("record serializes")
            );
            println!("f = {}", c.f());
            println!("u = {}", c.u());
            println!("v = {}", c.v());
            ExitCode::SUCCESS
        }
        Cmd::Certify {
            inst,
            max_enum,
            out,
        } => {
            let bounds = match bounds(max_enum) {
                Ok(b) => b,
                Err(e) => return invalid(e),
            };
            let c = match instance(&inst) {
                Ok(c) => c,
                Err(e) => return invalid(e),
            };
            let rep = certify(
                &c,
                &CertifyOptions {
                    bounds,
                    ..Default::default()
                },
            );
            match out {
                CertOut::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&rep).expect("report serializes")
                ),
                CertOut::Text => print!("{}", rep.render_text()),
            }
            match rep.verdict {
                Verdict::Pass => ExitCode::SUCCESS,
                Verdict::Incomplete => {
                    for ch in rep.checks.iter().filter(|c| !c.passed()) {
                        eprintln!("skipped {}: {}", ch.name, ch.detail);
                    }
                    ExitCode::from(EXIT_INVALID)
                }
                Verdict::Fail => {
                    for ch in rep.failures() {
                        eprintln!("failed {}: {}", ch.name, ch.detail);
                    }
                    ExitCode::from(EXIT_FAILED_CHECK)
                }
            }
        }
        Cmd::Sweep {
            q_list,
            n_range,
            profiles,
            max_enum,
            out: SweepOut::Csv,
        } => {
            let bounds = match bounds(max_enum) {
                Ok(b) => b,
                Err(e) => return invalid(e),
            };
            let ns: Vec<u32> = (n_range.0..=n_range.1).collect();
            let set = match profiles {
                Profiles::All => ProfileSet::All,
                Profiles::HFamily => ProfileSet::HFamily,
            };
            let rows = match sweep(&q_list, &ns, set, &bounds) {
                Ok(r) => r,
                Err(e) => return invalid(e),
            };
            for row in &rows {
                for reason in &row.skipped {
                    eprintln!(
                        "q={} n={} r={:?}: skipped {reason}",
                        row.q, row.n, row.r_list
                    );
                }
            }
            print!("{}", sweep_csv(&rows));
            ExitCode::SUCCESS
        }
    }
}
