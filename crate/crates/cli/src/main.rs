use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rhlab::harmonics::SpectralField;
use rhlab::invariants::{
    char_poly, moments_analytic, reduced_invariants, same_h_orbit_deg1, same_h_orbit_deg2, same_o3_orbit,
    solve_polysys, verify_abcde_system, Deg1Coeffs, E2Coeffs,
};
use rhlab::lab::{
    exp_orbit_traversal, exp_rearrangement_bound, exp_rh_exactness, exp_stability, ExperimentConfig, Group, Report,
};
use rhlab::orbit::{dist_polar_orbit, dist_so3_orbit};
use rhlab::C64;

/// Rossby–Haurwitz stability laboratory on the rotating sphere.
#[derive(Parser)]
#[command(name = "rhlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct RunArgs {
    /// key=value config file ('#' comments).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override a config key; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    /// CSV destination; defaults to the config's `output`, else stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Write the final field in spectral text format.
    #[arg(long)]
    snapshot: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    Polar,
    So3,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve an RH state and compare with its closed form.
    RhVerify(RunArgs),
    /// Perturbation sweep; distance to the polar or SO(3) orbit over time.
    Stability {
        #[command(flatten)]
        run: RunArgs,
        /// Overrides the config's `group`.
        #[arg(long, value_enum)]
        group: Option<GroupArg>,
    },
    /// Distance from an α-shifted RH state to one fixed orbit member.
    Traversal(RunArgs),
    /// Transport by a fixed stream; e_deg2 against its maximum.
    Rearrange(RunArgs),
    /// Print a,u,v,w,p1,p0,I2..I7 and check the moment identities and inversion.
    Invariants {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        /// Degree-2 coordinates a,b,c,d,e.
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Decide whether two Y lie on the same symmetry orbit.
    Classify {
        /// Five degree-2 coordinates or a degree-1 triple c10,Re c11,Im c11.
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, allow_hyphen_values = true)]
        other: String,
    },
    /// Distance from a field to the orbit of a target (spectral text files).
    OrbitDist {
        #[arg(long)]
        field: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long, value_enum, default_value = "polar")]
        group: GroupArg,
        /// Also minimize over longitude reflections (polar only).
        #[arg(long)]
        reflect: bool,
    },
}

fn load_config(args: &RunArgs) -> Result<ExperimentConfig> {
    let mut cfg = match &args.config {
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            ExperimentConfig::parse(&text)?
        }
        None => ExperimentConfig::default(),
    };
    for o in &args.overrides {
        cfg.set_pair(o)?;
    }
    if let Some(out) = &args.output {
        cfg.output = Some(out.clone());
    }
    cfg.validate()?;
    Ok(cfg)
}

fn emit(rep: &Report, cfg: &ExperimentConfig, args: &RunArgs) -> Result<bool> {
    match &cfg.output {
        Some(path) => rep.write(path)?,
        None => print!("{}", rep.to_csv()),
    }
    if let (Some(path), Some(z)) = (&args.snapshot, &rep.final_state) {
        fs::write(path, z.to_text())?;
    }
    for c in &rep.checks {
        eprintln!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    Ok(rep.passed())
}

fn numbers(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|x| x.trim().parse::<f64>().with_context(|| format!("bad number {x:?}")))
        .collect()
}

fn e2(s: &str) -> Result<E2Coeffs> {
    match numbers(s)?.as_slice() {
        &[a, b, c, d, e] => Ok(E2Coeffs { a, b, c, d, e }),
        v => bail!("expected 5 numbers, got {}", v.len()),
    }
}

fn read_field(p: &PathBuf) -> Result<SpectralField> {
    let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
    Ok(SpectralField::from_text(&text)?)
}

fn join(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:e}")).collect::<Vec<_>>().join(",")
}

fn invariants(alpha: f64, y: &E2Coeffs) -> Result<bool> {
    let r = reduced_invariants(y);
    let (p1, p0) = char_poly(y);
    let ms = moments_analytic(alpha, y);
    let mut row = r.to_array().to_vec();
    row.extend([p1, p0]);
    row.extend(ms.i);
    println!("a,u,v,w,p1,p0,I2,I3,I4,I5,I6,I7");
    println!("{}", join(&row));
    if alpha == 0.0 {
        eprintln!("alpha = 0: moment identities and inversion need alpha != 0, nothing to check");
        return Ok(true);
    }
    let residual = verify_abcde_system(alpha, y)?.max_relative();
    let system_ok = residual < 1e-9;
    eprintln!("{} moment identities: max relative residual {residual:e}", tag(system_ok));
    let b = ms.b.context("moment right-hand sides need alpha != 0")?;
    let sol = solve_polysys(alpha, &b)?;
    let x = r.to_array();
    let recovered = sol
        .solutions
        .iter()
        .any(|s| (0..4).all(|k| (s[k] - x[k]).abs() < 1e-8 * x[k].abs().max(1.0)));
    eprintln!(
        "{} inversion: {} solution(s) on the {:?} branch",
        tag(recovered),
        sol.solutions.len(),
        sol.branch
    );
    if let Some(rep) = &sol.report {
        eprintln!("  {rep}");
    }
    Ok(system_ok && recovered)
}

fn tag(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn classify(y: &str, other: &str) -> Result<()> {
    let (a, b) = (numbers(y)?, numbers(other)?);
    match (a.as_slice(), b.as_slice()) {
        ([_, _, _, _, _], [_, _, _, _, _]) => {
            let (p, q) = (e2(y)?, e2(other)?);
            println!("same_h_orbit={}", same_h_orbit_deg2(&p, &q));
            println!("same_o3_orbit={}", same_o3_orbit(&p, &q));
        }
        (&[a0, ar, ai], &[b0, br, bi]) => {
            let mk = |a: f64, re: f64, im: f64| {
                let b = C64::new(re, im);
                Deg1Coeffs { a, b, c: -b.conj() }
            };
            println!("same_h_orbit={}", same_h_orbit_deg1(&mk(a0, ar, ai), &mk(b0, br, bi))?);
        }
        _ => bail!("both arguments need 5 (degree 2) or 3 (degree 1) numbers"),
    }
    Ok(())
}

fn orbit_dist(field: &PathBuf, target: &PathBuf, p: f64, group: GroupArg, reflect: bool) -> Result<()> {
    let f = read_field(field)?;
    let t = read_field(target)?;
    match group {
        GroupArg::Polar => {
            let r = dist_polar_orbit(&f, &t, p, reflect)?;
            println!("distance,beta_star,reflected");
            println!("{:e},{:e},{}", r.distance, r.beta_star, r.reflected);
        }
        GroupArg::So3 => {
            let r = dist_so3_orbit(&f, &t, p)?;
            let (a, b, g) = r.euler_star;
            println!("distance,euler_alpha,euler_beta,euler_gamma,degenerate_frame");
            println!("{:e},{a:e},{b:e},{g:e},{}", r.distance, r.degenerate_frame);
            if r.degenerate_frame {
                eprintln!("warning: repeated quadratic-form eigenvalues; distance is an upper bound only");
            }
        }
    }
    Ok(())
}

fn dispatch(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::RhVerify(args) => {
            let cfg = load_config(&args)?;
            emit(&exp_rh_exactness(&cfg)?, &cfg, &args)
        }
        Command::Stability { run, group } => {
            let cfg = load_config(&run)?;
            let g = match group {
                Some(GroupArg::Polar) => Group::Polar,
                Some(GroupArg::So3) => Group::So3,
                None => cfg.group,
            };
            emit(&exp_stability(&cfg, g)?, &cfg, &run)
        }
        Command::Traversal(args) => {
            let cfg = load_config(&args)?;
            emit(&exp_orbit_traversal(&cfg)?, &cfg, &args)
        }
        Command::Rearrange(args) => {
            let cfg = load_config(&args)?;
            emit(&exp_rearrangement_bound(&cfg)?, &cfg, &args)
        }
        Command::Invariants { alpha, y } => invariants(alpha, &e2(&y)?),
        Command::Classify { y, other } => classify(&y, &other).map(|_| true),
        Command::OrbitDist { field, target, p, group, reflect } => {
            orbit_dist(&field, &target, p, group, reflect).map(|_| true)
        }
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
