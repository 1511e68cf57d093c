use clap::{Parser, ValueEnum};
use serde::Serialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Verify,
    Table,
    Sweep,
    Sphfun,
    Decompose,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Command-line flags.  Grids over `xi` and `eta` are inclusive linspaces with
/// `steps` points; weight grids run from min to max with stride `steps`.
#[derive(Debug, Clone, Parser)]
#[command(name = "sl2cb", version, about = "Spherical functions and cb-norm bounds for SL(2,R)")]
pub struct Args {
    #[arg(long, value_enum)]
    pub command: Command,

    #[arg(long, default_value_t = -0.45, allow_negative_numbers = true)]
    pub xi_min: f64,
    #[arg(long, default_value_t = -0.05, allow_negative_numbers = true)]
    pub xi_max: f64,
    #[arg(long, default_value_t = 5)]
    pub xi_steps: usize,

    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub eta_min: f64,
    #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
    pub eta_max: f64,
    #[arg(long, default_value_t = 11)]
    pub eta_steps: usize,

    /// Defaults to -6 (epsilon 0) or -5 (epsilon 1).
    #[arg(long, allow_negative_numbers = true)]
    pub mu_min: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub mu_max: Option<i64>,
    #[arg(long, default_value_t = 2)]
    pub mu_steps: i64,

    /// Defaults to the weight grid of mu.
    #[arg(long, allow_negative_numbers = true)]
    pub nu_min: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub nu_max: Option<i64>,
    #[arg(long, default_value_t = 2)]
    pub nu_steps: i64,

    #[arg(long, default_value_t = 0)]
    pub epsilon: u8,

    /// verify: pass threshold applied to every suite.  sphfun: quadrature tolerance.
    #[arg(long)]
    pub tol: Option<f64>,

    /// Initial quadrature nodes (power of two, at least 16).
    #[arg(long, default_value_t = 64)]
    pub nodes: usize,

    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    #[arg(long, default_value_t = 42)]
    pub seed: u64,

    /// sphfun: spectral parameter and weights.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub xi: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub eta: f64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub mu: i64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub nu: i64,
    /// sphfun: outer rotation angles of `k_theta a_s k_psi`.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub psi: f64,
    #[arg(long, default_value_t = 4.0)]
    pub s_max: f64,
    #[arg(long, default_value_t = 31)]
    pub s_steps: usize,

    /// decompose: matrix entries `a,b,c,d` (row-major).
    #[arg(long, allow_negative_numbers = true)]
    pub matrix: Option<String>,
}

/// Validated configuration, echoed into JSON output.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub xi_grid: Vec<f64>,
    pub eta_grid: Vec<f64>,
    pub mu_grid: Vec<i64>,
    pub nu_grid: Vec<i64>,
    /// True when a nu range was given explicitly.
    pub off_diagonal: bool,
    pub epsilon: u8,
    pub tol: Option<f64>,
    pub nodes: usize,
    pub format: Format,
    pub seed: u64,
    pub xi: f64,
    pub eta: f64,
    pub mu: i64,
    pub nu: i64,
    pub theta: f64,
    pub psi: f64,
    pub s_max: f64,
    pub s_steps: usize,
    pub matrix: Option<[f64; 4]>,
    #[serde(skip)]
    pub out: Option<std::path::PathBuf>,
}

fn linspace(lo: f64, hi: f64, n: usize, name: &str) -> Result<Vec<f64>, CliError> {
    if n == 0 || !lo.is_finite() || !hi.is_finite() || lo > hi {
        return Err(CliError::Config(format!("bad {name} range [{lo}, {hi}] with {n} steps")));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    // endpoints exact so range validation sees the values actually used
    Ok((0..n).map(|j| if j == n - 1 { hi } else { lo + (hi - lo) * j as f64 / (n - 1) as f64 }).collect())
}

fn weights(lo: i64, hi: i64, stride: i64, name: &str, epsilon: u8) -> Result<Vec<i64>, CliError> {
    if stride <= 0 || lo > hi {
        return Err(CliError::Config(format!("bad {name} range [{lo}, {hi}] with stride {stride}")));
    }
    let grid: Vec<i64> = (lo..=hi).step_by(stride as usize).collect();
    if let Some(bad) = grid.iter().find(|m| m.rem_euclid(2) != epsilon as i64) {
        return Err(CliError::Config(format!("{name} = {bad} does not have the parity of epsilon = {epsilon}")));
    }
    Ok(grid)
}

fn strip(x: f64, name: &str) -> Result<(), CliError> {
    if x.abs() < 0.5 {
        Ok(())
    } else {
        Err(CliError::Config(format!("{name} = {x} outside |xi| < 1/2")))
    }
}

impl RunConfig {
    pub fn from_args(a: &Args) -> Result<Self, CliError> {
        if a.epsilon > 1 {
            return Err(CliError::Config(format!("epsilon must be 0 or 1, got {}", a.epsilon)));
        }
        let xi_grid = linspace(a.xi_min, a.xi_max, a.xi_steps, "xi")?;
        for &x in &xi_grid {
            strip(x, "xi")?;
        }
        strip(a.xi, "xi")?;
        let eta_grid = linspace(a.eta_min, a.eta_max, a.eta_steps, "eta")?;
        let (d_lo, d_hi) = if a.epsilon == 0 { (-6, 6) } else { (-5, 5) };
        let mu_lo = a.mu_min.unwrap_or(d_lo);
        let mu_hi = a.mu_max.unwrap_or(d_hi);
        let mu_grid = weights(mu_lo, mu_hi, a.mu_steps, "mu", a.epsilon)?;
        let off_diagonal = a.nu_min.is_some() || a.nu_max.is_some();
        let nu_grid = weights(a.nu_min.unwrap_or(mu_lo), a.nu_max.unwrap_or(mu_hi), a.nu_steps, "nu", a.epsilon)?;
        if let Some(t) = a.tol {
            if !(t > 0.0) || !t.is_finite() {
                return Err(CliError::Config(format!("tol must be positive, got {t}")));
            }
        }
        if a.nodes < 16 || !a.nodes.is_power_of_two() {
            return Err(CliError::Config(format!("nodes must be a power of two >= 16, got {}", a.nodes)));
        }
        if a.command == Command::Sphfun {
            for (name, w) in [("mu", a.mu), ("nu", a.nu)] {
                if w.rem_euclid(2) != a.epsilon as i64 {
                    return Err(CliError::Config(format!("{name} = {w} does not have the parity of epsilon")));
                }
            }
            if !(a.s_max >= 1.0) || !a.s_max.is_finite() || a.s_steps == 0 {
                return Err(CliError::Config("need s_max >= 1 and s_steps >= 1".into()));
            }
            if let Some(t) = a.tol {
                if t < 1e-14 {
                    return Err(CliError::Config(format!("quadrature tolerance must be >= 1e-14, got {t}")));
                }
            }
        }
        let matrix = match (&a.matrix, a.command) {
            (Some(m), _) => Some(parse_matrix(m)?),
            (None, Command::Decompose) => return Err(CliError::Config("decompose needs --matrix a,b,c,d".into())),
            (None, _) => None,
        };
        Ok(Self {
            command: a.command,
            xi_grid,
            eta_grid,
            mu_grid,
            nu_grid,
            off_diagonal,
            epsilon: a.epsilon,
            tol: a.tol,
            nodes: a.nodes,
            format: a.format,
            seed: a.seed,
            xi: a.xi,
            eta: a.eta,
            mu: a.mu,
            nu: a.nu,
            theta: a.theta,
            psi: a.psi,
            s_max: a.s_max,
            s_steps: a.s_steps,
            matrix,
            out: a.out.clone(),
        })
    }
}

fn parse_matrix(s: &str) -> Result<[f64; 4], CliError> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Config(format!("bad matrix {s:?}: {e}")))?;
    <[f64; 4]>::try_from(v).map_err(|_| CliError::Config(format!("matrix needs four entries, got {s:?}")))
}
