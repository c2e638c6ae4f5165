//! Command-line surface: ideal file parsing, Betti-grid rendering,
//! link/verify/crosscheck commands and machine-readable reports.
//!
//! Exit codes: 0 clean, 1 violations found, 2 usage or parse error,
//! 3 degenerate realization.

mod parse;
mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use liaison::bounds::{
    diagram_verdict, profile_verdict, sweep, Family, OracleConfig, SweepConfig,
};
use liaison::linkage::{realize, CIType, LinkSpec};
use liaison::resolution::{betti, free_resolution, hilbert_degree, minimalize};
use liaison::{Error, Ideal, DEFAULT_PRIME};

use parse::parse_ideal_file;
use render::{json_betti, json_int, json_sweep, json_verdict, render_betti, report};

#[derive(Parser)]
#[command(
    name = "liaison",
    about = "Graded free resolutions of linked zero-schemes and degree-bound verification over GF(p)",
    version
)]
struct Cli {
    /// Emit a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FileArg {
    /// Ideal file: `ring <p> <nvars>` then `ideal <poly>, <poly>, ...`.
    file: String,
}

#[derive(Args)]
struct LinkArgs {
    /// Ambient complete-intersection type, e.g. 2,2,6.
    #[arg(long, value_name = "d1,..,dn")]
    ci: String,
    /// Collinear residual of this degree.
    #[arg(long, value_name = "T")]
    collinear_t: Option<u32>,
    /// Three non-collinear points as the residual.
    #[arg(long)]
    three_points: bool,
    /// Complete-intersection residual of this type inside X.
    #[arg(long, value_name = "e1,..,en")]
    sub_ci: Option<String>,
    #[arg(long, default_value_t = DEFAULT_PRIME)]
    prime: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Family: collinear | three-points | lemmas | one-point.
    family: String,
    /// Range of n, e.g. 3..7.
    #[arg(long, value_name = "A..B")]
    n: String,
    #[arg(long)]
    dmax: u32,
    /// Realize every k-th instance as an oracle cross-check (omit for
    /// pure-arithmetic sweeps).
    #[arg(long, value_name = "K")]
    oracle_density: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_PRIME)]
    prime: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct CrosscheckArgs {
    /// Family: collinear | three-points | one-point.
    family: String,
    #[arg(long, value_name = "A..B")]
    n: String,
    #[arg(long)]
    dmax: u32,
    /// Realize every k-th instance (1 = all).
    #[arg(long, default_value_t = 1)]
    density: u32,
    #[arg(long, default_value_t = DEFAULT_PRIME)]
    prime: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced Gröbner basis of the ideal in a file.
    Gb(FileArg),
    /// Free resolution of R/I (minimal unless --nonminimal).
    Res {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        nonminimal: bool,
    },
    /// Betti diagram of the (minimal unless --nonminimal) resolution.
    Betti {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        nonminimal: bool,
    },
    /// Hilbert numerator, dimension and degree.
    Degree(FileArg),
    /// Realize a linked instance and compare kernel against predictions.
    Link(LinkArgs),
    /// Exhaustive inequality sweep over a degree grid.
    Verify(VerifyArgs),
    /// Oracle-only sweep: realize instances and cross-check the kernel.
    Crosscheck(CrosscheckArgs),
}

fn main() -> ExitCode {
    if let Ok(v) = std::env::var("LIAISON_THREADS") {
        match v.parse::<usize>() {
            Ok(n) => liaison::parallel::set_threads(n),
            Err(_) => {
                eprintln!("LIAISON_THREADS must be an integer (0 = auto)");
                return ExitCode::from(2);
            }
        }
    }
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::Gb(f) => with_ideal(f, cli.json, cmd_gb),
        Command::Res { file, nonminimal } => {
            let nm = *nonminimal;
            with_ideal(file, cli.json, move |i, j| cmd_res(i, j, nm))
        }
        Command::Betti { file, nonminimal } => {
            let nm = *nonminimal;
            with_ideal(file, cli.json, move |i, j| cmd_betti(i, j, nm))
        }
        Command::Degree(f) => with_ideal(f, cli.json, cmd_degree),
        Command::Link(args) => cmd_link(args, cli.json),
        Command::Verify(args) => cmd_verify(args, cli.json),
        Command::Crosscheck(args) => cmd_crosscheck(args, cli.json),
    };
    ExitCode::from(code)
}

fn with_ideal(f: &FileArg, json: bool, run: impl FnOnce(Ideal, bool) -> u8) -> u8 {
    let text = match std::fs::read_to_string(&f.file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("{}: {e}", f.file);
            return 2;
        }
    };
    match parse_ideal_file(&text) {
        Ok(ideal) => run(ideal, json),
        Err(e) => {
            eprintln!("{}: {e}", f.file);
            2
        }
    }
}

fn cmd_gb(ideal: Ideal, json: bool) -> u8 {
    let gb = ideal.gb();
    if json {
        let payload = json!({
            "prime": json_int(ideal.prime() as i128),
            "nvars": ideal.nvars(),
            "basis": gb.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        });
        println!("{}", report("gb", payload, 0));
    } else {
        println!("ring GF({})[x0..x{}]", ideal.prime(), ideal.nvars() - 1);
        println!("reduced basis ({} elements):", gb.len());
        for g in gb {
            println!("  {g}");
        }
    }
    0
}

fn cmd_res(ideal: Ideal, json: bool, nonminimal: bool) -> u8 {
    let res = free_resolution(&ideal);
    let res = if nonminimal { res } else { minimalize(&res) };
    let diagram = betti(&res);
    if json {
        let stages: Vec<serde_json::Value> = (0..=res.length())
            .map(|i| json!({ "rank": res.module_shifts(i).len(), "shifts": res.module_shifts(i) }))
            .collect();
        let payload = json!({
            "minimal": !nonminimal,
            "length": res.length(),
            "stages": stages,
            "betti": json_betti(&diagram),
        });
        println!("{}", report("res", payload, 0));
    } else {
        println!(
            "{} resolution of R/I, length {}:",
            if nonminimal { "free" } else { "minimal free" },
            res.length()
        );
        for i in 0..=res.length() {
            let shifts: Vec<String> = res
                .module_shifts(i)
                .iter()
                .map(|s| format!("R(-{s})"))
                .collect();
            println!("  F_{i} = {}", shifts.join(" + "));
        }
        print!("{}", render_betti(&diagram));
    }
    0
}

fn cmd_betti(ideal: Ideal, json: bool, nonminimal: bool) -> u8 {
    let res = free_resolution(&ideal);
    let res = if nonminimal { res } else { minimalize(&res) };
    let diagram = betti(&res);
    if json {
        println!(
            "{}",
            report(
                "betti",
                json!({ "minimal": !nonminimal, "betti": json_betti(&diagram) }),
                0
            )
        );
    } else {
        print!("{}", render_betti(&diagram));
    }
    0
}

fn cmd_degree(ideal: Ideal, json: bool) -> u8 {
    let h = hilbert_degree(&ideal);
    if json {
        let payload = json!({
            "degree": json_int(h.degree as i128),
            "dimension": h.dimension,
            "numerator": h.numerator,
            "unit_ideal": h.unit_ideal,
        });
        println!("{}", report("degree", payload, 0));
    } else {
        println!("degree {}", h.degree);
        println!("dimension {}", h.dimension);
        let terms: Vec<String> = h
            .numerator
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(k, c)| format!("{c}t^{k}"))
            .collect();
        println!("numerator {}", if terms.is_empty() { "0".into() } else { terms.join(" + ") });
        if h.unit_ideal {
            println!("warning: unit ideal, degree 0 by convention");
        }
    }
    0
}

fn parse_tuple(s: &str) -> Result<Vec<u32>, String> {
    s.split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|e| format!("bad degree '{x}': {e}")))
        .collect()
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let parts: Vec<&str> = s.split("..").collect();
    match parts.as_slice() {
        [a, b] => {
            let a = a.parse().map_err(|e| format!("bad range start: {e}"))?;
            let b = b.parse().map_err(|e| format!("bad range end: {e}"))?;
            if a > b {
                return Err("empty range".into());
            }
            Ok((a, b))
        }
        [a] => {
            let a: usize = a.parse().map_err(|e| format!("bad range: {e}"))?;
            Ok((a, a))
        }
        _ => Err("expected A..B".into()),
    }
}

fn cmd_link(args: &LinkArgs, json: bool) -> u8 {
    let spec = match build_spec(args) {
        Ok(s) => s,
        Err(msg) => {
            eprintln!("{msg}");
            return 2;
        }
    };
    let inst = match realize(&spec, args.prime, args.seed) {
        Ok(i) => i,
        Err(Error::DegenerateRealization { seed, attempts, detail }) => {
            eprintln!("degenerate realization (seed {seed}, {attempts} attempts): {detail}");
            return 3;
        }
        Err(e) => {
            eprintln!("{e}");
            return 2;
        }
    };

    let cone = match inst.cone_resolution() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("cone construction failed: {e}");
            return 1;
        }
    };
    let cone_diag = betti(&cone);
    let min_diag = betti(&minimalize(&cone));
    let degree = hilbert_degree(&inst.iy).degree;
    let n = spec.ci.n();
    let verdict = diagram_verdict(&min_diag, degree, n).expect("columns populated");

    let profiles = inst.profiles().unwrap_or_default();
    let matching: Vec<String> = profiles
        .iter()
        .filter(|p| p.matches(&min_diag))
        .map(|p| p.scenario.clone())
        .collect();
    let degree_ok = degree == spec.predicted_degree();
    let profile_ok = profiles.is_empty() || !matching.is_empty();
    let ok = degree_ok && profile_ok && verdict.both_hold();

    if json {
        let scenario_verdicts: Vec<serde_json::Value> = profiles
            .iter()
            .map(|p| {
                let v = profile_verdict(p).expect("profile verdict");
                json!({
                    "scenario": p.scenario,
                    "min_shifts": p.min_shifts,
                    "max_shifts": p.max_shifts,
                    "verdict": json_verdict(&v),
                })
            })
            .collect();
        let payload = json!({
            "spec": {
                "ci": spec.ci.degrees(),
                "residual": format!("{:?}", spec.residual),
                "prime": json_int(args.prime as i128),
                "seed": json_int(args.seed as i128),
            },
            "ix": inst.ix.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "iz": inst.iz.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "iy": inst.iy.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "degree": json_int(degree as i128),
            "predicted_degree": json_int(spec.predicted_degree() as i128),
            "cone_betti": json_betti(&cone_diag),
            "minimal_betti": json_betti(&min_diag),
            "matching_scenarios": matching,
            "verdict": json_verdict(&verdict),
            "scenarios": scenario_verdicts,
        });
        println!("{}", report("link", payload, u8::from(!ok) as i32));
    } else {
        let print_ideal = |name: &str, ideal: &Ideal| {
            println!("{name}:");
            for g in ideal.generators() {
                println!("  {g}");
            }
        };
        print_ideal("I_X", &inst.ix);
        print_ideal("I_Z", &inst.iz);
        print_ideal("I_Y = I_X : I_Z", &inst.iy);
        println!("degree(I_Y) = {degree} (predicted {})", spec.predicted_degree());
        println!("mapping cone (nonminimal):");
        print!("{}", render_betti(&cone_diag));
        println!("minimal resolution:");
        print!("{}", render_betti(&min_diag));
        if profiles.is_empty() {
            println!("profiles: none for this residual kind");
        } else if matching.is_empty() {
            println!("profiles: NO scenario matches the minimal extremes");
        } else {
            println!("profiles: matches {}", matching.join(", "));
        }
        println!(
            "bounds: {} <= {} <= {} : {}",
            verdict.lower_value,
            degree,
            verdict.upper_value,
            if verdict.both_hold() { "hold" } else { "VIOLATED" }
        );
    }
    u8::from(!ok)
}

fn build_spec(args: &LinkArgs) -> Result<LinkSpec, String> {
    let degrees = parse_tuple(&args.ci)?;
    let ci = CIType::new(degrees).map_err(|e| e.to_string())?;
    let picked = u8::from(args.collinear_t.is_some())
        + u8::from(args.three_points)
        + u8::from(args.sub_ci.is_some());
    if picked != 1 {
        return Err(
            "choose exactly one of --collinear-t, --three-points, --sub-ci".into(),
        );
    }
    if let Some(t) = args.collinear_t {
        return LinkSpec::collinear(ci, t).map_err(|e| e.to_string());
    }
    if args.three_points {
        return Ok(LinkSpec::three_points(ci));
    }
    let e = parse_tuple(args.sub_ci.as_ref().unwrap())?;
    LinkSpec::custom_ci(ci, e).map_err(|e| e.to_string())
}

fn run_sweep(
    command: &str,
    family: Family,
    n: &str,
    dmax: u32,
    oracle: Option<OracleConfig>,
    json: bool,
) -> u8 {
    let (n_min, n_max) = match parse_range(n) {
        Ok(r) => r,
        Err(msg) => {
            eprintln!("--n: {msg}");
            return 2;
        }
    };
    if n_min < 3 {
        eprintln!("--n: sweeps need n >= 3");
        return 2;
    }
    let config = SweepConfig { family, n_min, n_max, dmax, oracle, parallel: true };
    let r = sweep(&config);
    let exit = u8::from(!r.clean());
    if json {
        println!("{}", report(command, json_sweep(&r), exit as i32));
    } else {
        println!("family {}", r.family);
        println!("grid {}", r.grid);
        println!(
            "tuples {} scenarios {} branch checks {} [{} ms]",
            r.tuples_checked, r.scenarios_checked, r.branches_checked, r.wall_ms
        );
        if r.oracle_instances > 0 || r.degenerate_retries > 0 {
            println!(
                "oracle instances {} (degenerate retries {})",
                r.oracle_instances, r.degenerate_retries
            );
        }
        if let Some(w) = &r.min_lower_slack {
            println!(
                "min lower slack {} at d={:?} t={:?} [{}]",
                w.slack, w.degrees, w.t, w.scenario
            );
        }
        if let Some(w) = &r.min_upper_slack {
            println!(
                "min upper slack {} at d={:?} t={:?} [{}]",
                w.slack, w.degrees, w.t, w.scenario
            );
        }
        for e in r.equality_witnesses.iter().take(20) {
            println!("equality: {e}");
        }
        if r.equality_witnesses.len() > 20 {
            println!("... and {} more equalities", r.equality_witnesses.len() - 20);
        }
        if r.clean() {
            println!("violations: none");
        } else {
            println!("violations: {}", r.violations.len());
            for v in &r.violations {
                println!("  {:?} t={:?} {}: {}", v.degrees, v.t, v.label, v.detail);
            }
        }
    }
    exit
}

fn cmd_verify(args: &VerifyArgs, json: bool) -> u8 {
    let family = match Family::parse(&args.family) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("{e}");
            return 2;
        }
    };
    let oracle = args.oracle_density.map(|density| OracleConfig {
        prime: args.prime,
        seed: args.seed,
        density: density.max(1),
    });
    run_sweep("verify", family, &args.n, args.dmax, oracle, json)
}

fn cmd_crosscheck(args: &CrosscheckArgs, json: bool) -> u8 {
    let family = match Family::parse(&args.family) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("{e}");
            return 2;
        }
    };
    if family == Family::Lemmas {
        eprintln!("crosscheck needs a realizable family: collinear | three-points | one-point");
        return 2;
    }
    let oracle = Some(OracleConfig {
        prime: args.prime,
        seed: args.seed,
        density: args.density.max(1),
    });
    run_sweep("crosscheck", family, &args.n, args.dmax, oracle, json)
}
