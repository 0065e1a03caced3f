//! Command-line front end: build and inspect zero tables, evaluate the
//! derived functions, and run the comparison harnesses.
//!
//! Output conventions: every command emits machine-readable rows — CSV with
//! a header for tabular results, a bare value where the result is a single
//! number, JSON for the bundled report. Floating-point values are printed
//! with 12 significant digits so reruns diff cleanly.
//!
//! Exit codes: 0 success, 2 usage, 3 cache trouble, 4 an accuracy budget
//! could not be met, 5 a verification check failed.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::integrals::{self, MomentTable};
use crate::report::{self, sig};
use crate::zerofinder::{self, ZeroTable};
use crate::zetacore::{self, ComplexPoint};
use crate::{asymptotics, gfun, sfuncs};

#[derive(Parser)]
#[command(
    name = "zetaord",
    version,
    about = "Zeta zero ordinates and the functions built on them"
)]
struct Cli {
    /// Cache directory for zero tables (default: $ZETAORD_CACHE, then
    /// ./.zetaord-cache).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    /// Zero-table height for commands without their own --to. Commands that
    /// need a taller table than this raise it to their requirement.
    #[arg(long, global = true, default_value_t = 3000.0)]
    height: f64,

    /// Cap on worker threads for table construction.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build, inspect, and count zero ordinates.
    Zeros {
        #[command(subcommand)]
        cmd: ZerosCmd,
    },
    /// Evaluate a derived function at a point.
    Eval {
        #[command(subcommand)]
        cmd: EvalCmd,
    },
    /// Truncated multiple sums over ordinates vs their main terms (CSV).
    Thm2 {
        /// Tuple length of the sum (1 or 2).
        #[arg(long)]
        n: u32,
        /// Comma-separated list of X values.
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<f64>,
    },
    /// Mean square ∫₁ᵀ|G(σ+it)|²dt of the ordinate zeta function.
    Meansq {
        #[arg(long)]
        sigma: f64,
        /// Upper endpoint T (the table is raised to height 2T).
        #[arg(long)]
        to: f64,
    },
    /// Zero-weighted integrals and sums up to a height (CSV).
    Integrals {
        #[arg(value_enum)]
        name: IntegralName,
        /// Upper endpoint T.
        #[arg(long)]
        to: f64,
        /// Shift in mean-gap units (gonek only).
        #[arg(long, allow_negative_numbers = true)]
        alpha: Option<f64>,
    },
    /// Run the bundled verification suite and print a JSON summary.
    Report {
        #[arg(value_enum)]
        what: ReportWhat,
        /// Table height the suite runs against.
        #[arg(long)]
        to: f64,
    },
}

#[derive(Subcommand)]
enum ZerosCmd {
    /// Scan from scratch, certify the count, and save the table.
    Scan {
        /// Height to scan to.
        #[arg(long)]
        to: f64,
        /// Output file (default: the cache location for this height).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print one ordinate by 1-based index.
    Show {
        #[arg(long)]
        index: usize,
    },
    /// Certified count of ordinates with γ ≤ T.
    Count {
        #[arg(long)]
        to: f64,
    },
}

#[derive(Subcommand)]
enum EvalCmd {
    /// G(s) = Σ γ^{−s} over positive ordinates, analytically continued.
    G {
        #[arg(long, allow_negative_numbers = true)]
        sigma: f64,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[arg(long, value_enum, default_value_t = RouteArg::Hybrid)]
        route: RouteArg,
    },
    /// R(s) = Σ_ρ |ρ|^{−s} over both zero halves.
    R {
        #[arg(long, allow_negative_numbers = true)]
        sigma: f64,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
    },
    /// Argument function S(t), reconstructed from the certified count.
    S {
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
    },
    /// Second-moment error term E(t).
    E {
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
    },
    /// Phase function ϑ(t).
    Theta {
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
    },
}

/// Which continuation of G to evaluate.
#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    /// Partial sum over the table plus an integral tail.
    Hybrid,
    /// Pole terms + constant + weighted argument-function integral.
    Cont14,
    /// The once-more-integrated continuation (valid into σ > −1).
    Cont15,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportWhat {
    /// The complete check suite.
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum IntegralName {
    /// ∫₀ᵀ S(t)|ζ(½+it)|² dt.
    SZeta2,
    /// ∫₀ᵀ S²(t)|ζ(½+it)|² dt.
    S2Zeta2,
    /// ∫₁ᵀ |ζ(½+it)|² dS(t), by parts and in Stieltjes form.
    Zeta2Ds,
    /// Σ_{γ≤T} |ζ(½+iγ)|².
    ZeroSum,
    /// Σ_{γ≤T} E(γ).
    ESum,
    /// Σ_{γ≤T} |ζ(½ + i(γ+α/L))|², α in mean-gap units (needs --alpha).
    Gonek,
    /// S-moment growth report, first power.
    Thm3R1,
    /// S-moment growth report, second power.
    Thm3R2,
}

/// Entry point for the binary; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // --help/--version arrive here too; they exit 0.
            let code = if e.exit_code() == 0 { 0 } else { 2 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_)
        | Error::AlphaOutOfRange { .. }
        | Error::PoleAtOne
        | Error::ChiSingular { .. } => 2,
        Error::CorruptFile(_) | Error::VersionMismatch { .. } | Error::Io(_) => 3,
        Error::BudgetExceeded(_)
        | Error::TailDominates { .. }
        | Error::RemainderTooLarge { .. }
        | Error::MaxDepthExceeded { .. }
        | Error::TableTooShort { .. }
        | Error::HeightExceeded { .. }
        | Error::HeightCap { .. }
        | Error::StepTooSmall { .. }
        | Error::InsufficientLaurentOrder { .. } => 4,
        Error::VerificationFailed { .. }
        | Error::LossOfBracket { .. }
        | Error::NoSignChange { .. }
        | Error::BranchAmbiguity { .. } => 5,
    }
}

fn threads(cli: &Cli) -> usize {
    cli.threads
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
        .max(1)
}

fn cache_file(cli: &Cli, height: f64) -> PathBuf {
    let dir = cli
        .cache
        .clone()
        .unwrap_or_else(zerofinder::cache_dir);
    dir.join(format!("zeros-{:.0}.zord", height))
}

/// The table for `height`: loaded from the cache when a valid file is
/// there, built and cached otherwise. A corrupt or unreadable cache file is
/// an error rather than a silent rebuild — stale bytes should be looked at,
/// not papered over.
fn acquire_table(cli: &Cli, height: f64) -> Result<ZeroTable> {
    let height = height.ceil().max(20.0);
    let path = cache_file(cli, height);
    if path.exists() {
        let table = zerofinder::load_table(&path)?;
        if table.height() >= height {
            return Ok(table);
        }
        // A shorter table under this name means the naming convention was
        // broken externally; rebuild below and overwrite.
    }
    let table = ZeroTable::build(height, threads(cli))?;
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)?;
        }
    }
    zerofinder::save_table(&table, &path)?;
    Ok(table)
}

fn dispatch(cli: &Cli) -> Result<i32> {
    match &cli.cmd {
        Cmd::Zeros { cmd } => zeros(cli, cmd),
        Cmd::Eval { cmd } => eval(cli, cmd),
        Cmd::Thm2 { n, x } => thm2(cli, *n, x),
        Cmd::Meansq { sigma, to } => meansq(cli, *sigma, *to),
        Cmd::Integrals { name, to, alpha } => integrals_cmd(cli, *name, *to, *alpha),
        Cmd::Report { what: ReportWhat::All, to } => report_all(cli, *to),
    }
}

fn zeros(cli: &Cli, cmd: &ZerosCmd) -> Result<i32> {
    match cmd {
        ZerosCmd::Scan { to, out } => {
            let table = ZeroTable::build(to.ceil(), threads(cli))?;
            let rep = zerofinder::verify_count(&table, table.height())?;
            let path = out.clone().unwrap_or_else(|| cache_file(cli, table.height()));
            if let Some(dir) = path.parent() {
                if !dir.as_os_str().is_empty() {
                    std::fs::create_dir_all(dir)?;
                }
            }
            zerofinder::save_table(&table, &path)?;
            println!("height,count,expected,residual,windows,file");
            println!(
                "{},{},{},{},{},{}",
                sig(table.height()),
                rep.count,
                sig(rep.expected),
                sig(rep.residual),
                rep.windows_checked,
                path.display()
            );
            Ok(0)
        }
        ZerosCmd::Show { index } => {
            let table = acquire_table(cli, cli.height)?;
            if *index == 0 || *index > table.count() {
                return Err(Error::InvalidInput(format!(
                    "index {index} outside 1..={} (height {}; raise --height for more)",
                    table.count(),
                    table.height()
                )));
            }
            let z = table.ordinates()[index - 1];
            println!("index,gamma,err");
            println!("{},{},{}", index, sig(z.gamma), sig(z.err));
            Ok(0)
        }
        ZerosCmd::Count { to } => {
            let table = acquire_table(cli, *to)?;
            let rep = zerofinder::verify_count(&table, *to)?;
            println!("{}", rep.count);
            Ok(0)
        }
    }
}

fn eval(cli: &Cli, cmd: &EvalCmd) -> Result<i32> {
    match cmd {
        EvalCmd::G { sigma, t, route } => {
            let table = acquire_table(cli, cli.height)?;
            let s = ComplexPoint::new(*sigma, *t)?;
            let v = match route {
                RouteArg::Hybrid => gfun::g_hybrid_default(s, &table)?,
                RouteArg::Cont14 => gfun::g_cont(s, &table)?,
                RouteArg::Cont15 => gfun::g_cont2(s, &table)?,
            };
            println!("sigma,t,route,re,im,err");
            println!(
                "{sigma},{t},{},{},{},{}",
                v.route,
                sig(v.value.re),
                sig(v.value.im),
                sig(v.err)
            );
            Ok(0)
        }
        EvalCmd::R { sigma, t } => {
            let table = acquire_table(cli, cli.height)?;
            let v = gfun::r_of(ComplexPoint::new(*sigma, *t)?, &table)?;
            println!("sigma,t,re,im,err");
            println!(
                "{sigma},{t},{},{},{}",
                sig(v.value.re),
                sig(v.value.im),
                sig(v.err)
            );
            Ok(0)
        }
        EvalCmd::S { t } => {
            let table = acquire_table(cli, cli.height.max(*t))?;
            let v = sfuncs::s_of(*t, &table)?;
            println!("t,s");
            println!("{t},{}", sig(v));
            Ok(0)
        }
        EvalCmd::E { t } => {
            let v = sfuncs::e_of(*t)?;
            println!("t,e");
            println!("{t},{}", sig(v));
            Ok(0)
        }
        EvalCmd::Theta { t } => {
            if !(*t >= 0.0) {
                return Err(Error::InvalidInput(format!("t = {t} must be ≥ 0")));
            }
            println!("t,theta");
            println!("{t},{}", sig(zetacore::theta(*t)));
            Ok(0)
        }
    }
}

fn thm2(cli: &Cli, n: u32, xs: &[f64]) -> Result<i32> {
    let table = acquire_table(cli, cli.height)?;
    let reports = asymptotics::verify_thm2(n, xs, &table)?;
    println!("{}", asymptotics::Thm2Report::csv_header());
    for r in reports {
        println!(
            "{},{},{},{},{},{}",
            r.n,
            r.x,
            sig(r.lhs),
            sig(r.main),
            sig(r.const_term),
            sig(r.residual)
        );
    }
    Ok(0)
}

fn meansq(cli: &Cli, sigma: f64, to: f64) -> Result<i32> {
    // The evaluator needs the resonant region inside the table.
    let table = acquire_table(cli, cli.height.max(2.0 * to))?;
    let q = integrals::meansq_g(sigma, to, &table)?;
    println!("sigma,T,value,err,panels");
    println!("{sigma},{to},{},{},{}", sig(q.value), sig(q.err), q.panels);
    Ok(0)
}

fn integrals_cmd(cli: &Cli, name: IntegralName, to: f64, alpha: Option<f64>) -> Result<i32> {
    let table = acquire_table(cli, cli.height.max(to))?;
    let moments = || MomentTable::build(to, &table);
    match name {
        IntegralName::SZeta2 => {
            let q = integrals::int_s_zeta2_from_zero(to, &moments()?)?;
            println!("T,value,err");
            println!("{to},{},{}", sig(q.value), sig(q.err));
        }
        IntegralName::S2Zeta2 => {
            let q = integrals::int_s2_zeta2_from_zero(to, &moments()?)?;
            println!("T,value,err");
            println!("{to},{},{}", sig(q.value), sig(q.err));
        }
        IntegralName::Zeta2Ds => {
            let mt = moments()?;
            let a = integrals::int_zeta2_ds_stieltjes(to, &mt)?;
            let b = integrals::int_zeta2_ds_parts(to, &table)?;
            println!("T,method,value,err");
            println!("{to},stieltjes,{},{}", sig(a.value), sig(a.err));
            println!("{to},parts,{},{}", sig(b.value), sig(b.err));
        }
        IntegralName::ZeroSum => {
            let v = integrals::sum_zeta2_at_zeros(to, &moments()?)?;
            println!("T,value");
            println!("{to},{}", sig(v));
        }
        IntegralName::ESum => {
            let v = integrals::sum_e_at_zeros(to, &moments()?)?;
            println!("T,value");
            println!("{to},{}", sig(v));
        }
        IntegralName::Gonek => {
            let alpha = alpha.ok_or_else(|| {
                Error::InvalidInput("gonek needs --alpha (shift in mean-gap units)".into())
            })?;
            let v = integrals::gonek_sum(to, alpha, &table)?;
            let main = integrals::gonek_main_term(to, alpha);
            println!("T,alpha,value,main");
            println!("{to},{alpha},{},{}", sig(v), sig(main));
        }
        IntegralName::Thm3R1 | IntegralName::Thm3R2 => {
            let r = if matches!(name, IntegralName::Thm3R1) { 1 } else { 2 };
            let rep = integrals::verify_thm3(r, to, &moments()?)?;
            println!("{}", integrals::Thm3Report::csv_header());
            println!(
                "{},{},{},{},{},{}",
                rep.r,
                rep.t,
                sig(rep.lhs),
                sig(rep.bound_poly),
                sig(rep.bound_integral),
                sig(rep.ratio)
            );
        }
    }
    Ok(0)
}

fn report_all(cli: &Cli, to: f64) -> Result<i32> {
    let table = acquire_table(cli, to)?;
    let checks = report::run_all(&table);
    println!("{}", report::summary_json(table.height(), &checks));
    let failed = checks
        .iter()
        .filter(|c| c.status == report::Status::Fail)
        .count();
    if failed > 0 {
        eprintln!("error: {failed} check(s) failed");
        Ok(5)
    } else {
        Ok(0)
    }
}
