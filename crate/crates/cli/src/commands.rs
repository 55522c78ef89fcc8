//! Arguments and implementations of the subcommands. Each `cmd_*` returns a
//! [`JobReport`] whose `outputs` field is the JSON written by `--out`.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use serde_json::json;

use tccore::chern_weil::{mapping_degree, Chern2Report, Derivatives, Example, GridSize, QuadratureGrid};
use tccore::generators::{decompose_with, power_map, torus_power_map, DecomposeOptions};
use tccore::polyring::Polynomial;
use tccore::quotient::{ideal_for_group, ideal_for_group_cached, IdealSpec};
use tccore::weyl::{GroupKind, GroupSpec};

use crate::checks::{run_checks, VerifyConfig};
use crate::report::{read_input, Check, JobReport};
use crate::CliError;

/// Largest `a + b` or verification degree accepted.
pub const MAX_DEGREE: u32 = 12;
pub const MIN_GRID: usize = 16;
pub const MAX_GRID: usize = 256;

/// Job settings shared by every command but not part of its inputs.
#[derive(Clone, Debug, Default)]
pub struct Context {
    /// Directory for cached Gröbner bases.
    pub cache_dir: Option<PathBuf>,
}

impl Context {
    pub fn from_env() -> Self {
        Context { cache_dir: std::env::var_os("TC_CACHE_DIR").filter(|v| !v.is_empty()).map(PathBuf::from) }
    }

    fn ideal(&self, spec: &GroupSpec) -> Result<std::sync::Arc<IdealSpec>, CliError> {
        Ok(match &self.cache_dir {
            Some(dir) => {
                std::fs::create_dir_all(dir)?;
                ideal_for_group_cached(spec, dir)?
            }
            None => ideal_for_group(spec)?,
        })
    }
}

#[derive(Args, Clone, Debug)]
pub struct GroupArgs {
    /// Lie group: U, SU or Sp.
    #[arg(long, value_parser = parse_group_kind)]
    pub group: GroupKind,
    #[arg(long)]
    pub rank: usize,
}

fn parse_group_kind(s: &str) -> Result<GroupKind, String> {
    GroupKind::parse(s).ok_or_else(|| format!("unknown group {s:?}; expected U, SU or Sp"))
}

impl GroupArgs {
    pub fn spec(&self) -> Result<GroupSpec, CliError> {
        let cap = self.group.default_cap();
        if self.rank == 0 || self.rank > cap {
            return Err(CliError::Usage(format!("rank {} outside 1..={cap} for {}", self.rank, self.group.name())));
        }
        Ok(GroupSpec::new(self.group, self.rank))
    }

    fn echo(&self) -> Vec<String> {
        vec!["--group".into(), self.group.name().into(), "--rank".into(), self.rank.to_string()]
    }
}

#[derive(Args, Clone, Debug)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    #[arg(long)]
    pub a: u32,
    #[arg(long)]
    pub b: u32,
    /// Largest a+b accepted for Sp(n) [default: 2·max(n, 2)].
    #[arg(long)]
    pub sp_max_degree: Option<u32>,
}

pub fn cmd_decompose(args: &DecomposeArgs, ctx: &Context) -> Result<JobReport, CliError> {
    let start = Instant::now();
    let spec = args.group.spec()?;
    if args.a + args.b > MAX_DEGREE || args.sp_max_degree.is_some_and(|d| d > MAX_DEGREE) {
        return Err(CliError::Usage(format!("degrees above {MAX_DEGREE} are not supported")));
    }
    ctx.ideal(&spec)?;
    let options = DecomposeOptions { sp_max_degree: args.sp_max_degree };
    let result = decompose_with(&spec, args.a, args.b, &options)?;
    let mut command = vec!["decompose".to_string()];
    command.extend(args.group.echo());
    command.extend(["--a".into(), args.a.to_string(), "--b".into(), args.b.to_string()]);
    if let Some(d) = args.sp_max_degree {
        command.extend(["--sp-max-degree".into(), d.to_string()]);
    }
    let inputs = json!({ "group": spec, "a": args.a, "b": args.b, "sp_max_degree": options.max_degree(&spec) });
    Ok(JobReport::new(command, inputs, serde_json::to_value(&result)?, result.certified, start.elapsed()))
}

#[derive(Args, Clone, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    #[arg(long)]
    pub max_degree: u32,
    /// Random cases per randomized property.
    #[arg(long, default_value_t = 100)]
    pub cases: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub sp_max_degree: Option<u32>,
}

pub fn cmd_verify(args: &VerifyArgs, ctx: &Context) -> Result<JobReport, CliError> {
    let start = Instant::now();
    let spec = args.group.spec()?;
    if args.max_degree == 0 || args.max_degree > MAX_DEGREE {
        return Err(CliError::Usage(format!("max degree must lie in 1..={MAX_DEGREE}")));
    }
    ctx.ideal(&spec)?;
    let cfg = VerifyConfig {
        spec,
        max_degree: args.max_degree,
        cases: args.cases,
        seed: args.seed,
        options: DecomposeOptions { sp_max_degree: args.sp_max_degree },
    };
    let checks = run_checks(&cfg)?;
    let passed = checks.iter().all(|c| c.passed);
    let mut command = vec!["verify".to_string()];
    command.extend(args.group.echo());
    command.extend([
        "--max-degree".into(),
        args.max_degree.to_string(),
        "--cases".into(),
        args.cases.to_string(),
        "--seed".into(),
        args.seed.to_string(),
    ]);
    if let Some(d) = args.sp_max_degree {
        command.extend(["--sp-max-degree".into(), d.to_string()]);
    }
    let inputs = json!({ "group": spec, "max_degree": args.max_degree, "cases": args.cases, "seed": args.seed });
    let outputs = json!({ "passed": passed, "checks": checks });
    Ok(JobReport::new(command, inputs, outputs, passed, start.elapsed()).with_checks(checks))
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivativeMode {
    Central,
    Analytic,
}

#[derive(Args, Clone, Debug)]
pub struct Chern2Args {
    /// paper, paper-trivial, constant or qpow:<d>.
    #[arg(long)]
    pub example: String,
    /// Nodes per axis: one number for all three, or alpha,beta,r.
    #[arg(long, default_value = "64", value_parser = parse_grid)]
    pub grid: GridSize,
    #[arg(long, value_enum, default_value_t = DerivativeMode::Central)]
    pub derivatives: DerivativeMode,
    /// Central-difference step.
    #[arg(long, default_value_t = 1e-5)]
    pub step: f64,
}

fn parse_grid(s: &str) -> Result<GridSize, String> {
    let parts: Vec<usize> = s.split(',').map(|p| p.trim().parse().map_err(|_| format!("bad grid {s:?}"))).collect::<Result<_, _>>()?;
    match parts[..] {
        [n] => Ok(GridSize::cube(n)),
        [alpha, beta, r] => Ok(GridSize { alpha, beta, r }),
        _ => Err(format!("grid {s:?} must be N or A,B,R")),
    }
}

pub fn cmd_chern2(args: &Chern2Args, _ctx: &Context) -> Result<JobReport, CliError> {
    let start = Instant::now();
    let example = Example::parse(&args.example)?;
    let g = args.grid;
    if [g.alpha, g.beta, g.r].iter().any(|&n| !(MIN_GRID..=MAX_GRID).contains(&n)) {
        return Err(CliError::Usage(format!("grid sizes must lie in {MIN_GRID}..={MAX_GRID}")));
    }
    if !(args.step > 0.0 && args.step < 1e-2) {
        return Err(CliError::Usage("step must lie in (0, 0.01)".into()));
    }
    let mode = match args.derivatives {
        DerivativeMode::Central => Derivatives::Central { step: args.step },
        DerivativeMode::Analytic => Derivatives::Analytic,
    };
    let report = Chern2Report::compute(example, g, mode)?;
    let mut checks = vec![Check::new("converged", report.converged, 2)
        .with_detail(format!("c2 = {} at half grid", report.c2_half_grid.unwrap_or(f64::NAN)))];
    if let Example::QuaternionPower(_) = example {
        let degree = mapping_degree(&example.clutching()?, &QuadratureGrid::new(g)?, mode)?;
        let agree = (report.c2.abs() - degree.abs()).abs() <= 0.02 * degree.abs().max(1.0);
        checks.push(Check::new("mapping-degree", agree, 1).with_detail(format!("degree {degree}")));
    }
    let certified = checks.iter().all(|c| c.passed);
    let mut command = vec!["chern2".to_string(), "--example".into(), example.to_string()];
    command.extend(["--grid".into(), format!("{},{},{}", g.alpha, g.beta, g.r)]);
    let derivatives = match args.derivatives {
        DerivativeMode::Central => "central",
        DerivativeMode::Analytic => "analytic",
    };
    command.extend(["--derivatives".into(), derivatives.into(), "--step".into(), args.step.to_string()]);
    let inputs = json!({ "example": example.to_string(), "grid": g, "derivatives": derivatives, "step": args.step });
    Ok(JobReport::new(command, inputs, serde_json::to_value(&report)?, certified, start.elapsed()).with_checks(checks))
}

fn read_polynomial(path: &str) -> Result<Polynomial, CliError> {
    Ok(serde_json::from_str(&read_input(path)?)?)
}

#[derive(Args, Clone, Debug)]
pub struct PowerMapArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub k: i64,
    /// Polynomial JSON file, or - for standard input.
    #[arg(long)]
    pub input: String,
    /// Scale every variable (the torus map ψ^k) instead of y only.
    #[arg(long)]
    pub torus: bool,
}

pub fn cmd_powermap(args: &PowerMapArgs, _ctx: &Context) -> Result<JobReport, CliError> {
    let start = Instant::now();
    let p = read_polynomial(&args.input)?;
    let image = if args.torus { torus_power_map(args.k, &p)? } else { power_map(args.k, &p)? };
    let mut command = vec!["powermap".to_string(), "--k".into(), args.k.to_string(), "--input".into(), args.input.clone()];
    if args.torus {
        command.push("--torus".into());
    }
    let inputs = json!({ "k": args.k, "torus": args.torus, "polynomial": p });
    Ok(JobReport::new(command, inputs, serde_json::to_value(&image)?, true, start.elapsed()))
}

#[derive(Args, Clone, Debug)]
pub struct NormalFormArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Polynomial JSON file, or - for standard input.
    #[arg(long)]
    pub input: String,
}

pub fn cmd_normalform(args: &NormalFormArgs, ctx: &Context) -> Result<JobReport, CliError> {
    let start = Instant::now();
    let spec = args.group.spec()?;
    let p = read_polynomial(&args.input)?;
    let nf = ctx.ideal(&spec)?.normal_form(&p)?;
    let mut command = vec!["normalform".to_string()];
    command.extend(args.group.echo());
    command.extend(["--input".into(), args.input.clone()]);
    let inputs = json!({ "group": spec, "polynomial": p });
    Ok(JobReport::new(command, inputs, serde_json::to_value(&nf)?, true, start.elapsed()))
}
