use rayon::prelude::*;
use serde_json::{Map, Value};

use sl2cb::norms::{cb_upper, sweep_row, SweepRow};
use sl2cb::quadrature::QuadratureSpec;
use sl2cb::sl2::{bruhat, cartan, iwasawa, BruhatCell, GroupElement};
use sl2cb::spherical::{phi, SphericalQuery};
use sl2cb::{Complex64 as C, Parity, SpectralParam};

use crate::config::RunConfig;
use crate::suites;
use crate::table::{emit, Cell, Table};
use crate::CliError;

fn parity(cfg: &RunConfig) -> Parity {
    if cfg.epsilon == 0 {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// Runs every suite; `Ok(false)` when at least one failed.
pub fn run_verify(cfg: &RunConfig) -> Result<bool, CliError> {
    let outcomes = suites::run_all(cfg);
    let mut t = Table::new(vec!["suite", "samples", "max_defect", "threshold", "passed", "error"]);
    for o in &outcomes {
        t.push(vec![
            o.name.into(),
            Cell::Int(o.samples as i64),
            o.max_defect.into(),
            o.threshold.into(),
            o.passed.into(),
            o.error.as_deref().map_or(Cell::Missing, Cell::from),
        ]);
    }
    let failing: Vec<&str> = outcomes.iter().filter(|o| !o.passed).map(|o| o.name).collect();
    let mut extra = Map::new();
    extra.insert("failing".into(), Value::from(failing.clone()));
    emit(cfg, &t.render(cfg, extra)?)?;
    if failing.is_empty() {
        eprintln!("verify: {} suites passed", outcomes.len());
    } else {
        eprintln!("verify: failing suites: {}", failing.join(", "));
    }
    Ok(failing.is_empty())
}

const SWEEP_COLUMNS: [&str; 13] = [
    "xi", "eta", "epsilon", "mu", "nu", "cb_exact_diag", "cb_upper", "sec_bound", "steenstrup",
    "steenstrup_defect", "bound_margin", "constant_ratio", "within_bound",
];

fn sweep_cells(r: &SweepRow<f64>) -> Vec<Cell> {
    let p = r.params;
    let steen_defect = match (r.cb_exact, r.steenstrup) {
        (Some(a), Some(b)) => Some((a - b).abs()),
        _ => None,
    };
    vec![
        p.xi.into(),
        p.eta.into(),
        Cell::Int(p.parity.as_i64()),
        Cell::Int(p.mu),
        Cell::Int(p.nu),
        r.cb_exact.into(),
        r.cb_upper.into(),
        r.sec_bound.into(),
        r.steenstrup.into(),
        steen_defect.into(),
        (r.sec_bound - r.cb_exact.unwrap_or(r.cb_upper)).into(),
        r.constant_ratio.into(),
        r.within_bound.into(),
    ]
}

fn sweep_table(cfg: &RunConfig, pairs: &[(i64, i64)]) -> Result<(Table, bool), CliError> {
    let eps = parity(cfg);
    let mut points = Vec::new();
    for &xi in &cfg.xi_grid {
        for &eta in &cfg.eta_grid {
            for &(mu, nu) in pairs {
                points.push((xi, eta, mu, nu));
            }
        }
    }
    let rows = points
        .par_iter()
        .map(|&(xi, eta, mu, nu)| sweep_row(xi, eta, eps, mu, nu))
        .collect::<sl2cb::Result<Vec<_>>>()?;
    let mut t = Table::new(SWEEP_COLUMNS.to_vec());
    let ok = rows.iter().all(|r| r.within_bound);
    for r in &rows {
        t.push(sweep_cells(r));
    }
    Ok((t, ok))
}

/// Diagonal rows `nu = mu` unless a `nu` range was given.
pub fn table_rows(cfg: &RunConfig) -> Result<(Table, bool), CliError> {
    let pairs: Vec<(i64, i64)> = if cfg.off_diagonal {
        cfg.mu_grid.iter().flat_map(|&m| cfg.nu_grid.iter().map(move |&n| (m, n))).collect()
    } else {
        cfg.mu_grid.iter().map(|&m| (m, m)).collect()
    };
    sweep_table(cfg, &pairs)
}

pub fn run_table(cfg: &RunConfig) -> Result<bool, CliError> {
    let (t, ok) = table_rows(cfg)?;
    emit(cfg, &t.render(cfg, Map::new())?)?;
    Ok(ok)
}

/// Full `(mu, nu)` grid; reports the largest off-diagonal constant on stderr.
pub fn run_sweep(cfg: &RunConfig) -> Result<bool, CliError> {
    let pairs: Vec<(i64, i64)> =
        cfg.mu_grid.iter().flat_map(|&m| cfg.nu_grid.iter().map(move |&n| (m, n))).collect();
    let (t, ok) = sweep_table(cfg, &pairs)?;
    let j = SWEEP_COLUMNS.iter().position(|c| *c == "constant_ratio").expect("column present");
    let sup = t.rows.iter().filter_map(|r| if let Cell::Float(v) = r[j] { Some(v) } else { None }).fold(0.0, f64::max);
    let mut extra = Map::new();
    extra.insert("sup_constant_ratio".into(), serde_json::json!(sup));
    emit(cfg, &t.render(cfg, extra)?)?;
    eprintln!("sweep: sup constant_ratio = {sup:.6e}");
    Ok(ok)
}

pub fn sphfun_rows(cfg: &RunConfig) -> Result<(Table, f64), CliError> {
    let zeta = C::new(cfg.xi, cfg.eta);
    let p = SpectralParam::new(zeta, parity(cfg));
    let mut spec = QuadratureSpec { initial_nodes: cfg.nodes, ..QuadratureSpec::default() };
    if let Some(t) = cfg.tol {
        spec.tolerance = t;
    }
    let bound = cb_upper(zeta, p.parity, cfg.mu, cfg.nu)?;
    let n = cfg.s_steps;
    let grid: Vec<f64> =
        (0..n).map(|j| if n == 1 { 1.0 } else { 1.0 + (cfg.s_max - 1.0) * j as f64 / (n - 1) as f64 }).collect();
    let rows = grid
        .par_iter()
        .map(|&s| -> Result<Vec<Cell>, CliError> {
            let x = GroupElement::k(cfg.theta) * GroupElement::a(s)? * GroupElement::k(cfg.psi);
            let q = SphericalQuery::new(p, cfg.mu, cfg.nu, x, spec)?;
            let v = phi(&q)?;
            let dual = phi(&q.with_zeta(zeta.conj()).with_weights(-cfg.mu, -cfg.nu))?;
            Ok(vec![s.into(), v.re.into(), v.im.into(), v.norm().into(), (dual - v.conj()).norm().into()])
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = Table::new(vec!["s", "re_phi", "im_phi", "abs_phi", "conjugation_defect"]);
    for r in rows {
        t.push(r);
    }
    Ok((t, bound))
}

pub fn run_sphfun(cfg: &RunConfig) -> Result<bool, CliError> {
    let (t, bound) = sphfun_rows(cfg)?;
    let within = t.rows.iter().all(|r| matches!(r[3], Cell::Float(v) if v <= bound + 1e-6));
    let body = match cfg.format {
        crate::config::Format::Csv => format!("# cb_upper={bound:.16e}\n{}", t.to_csv()),
        crate::config::Format::Json => {
            let mut extra = Map::new();
            extra.insert("cb_upper".into(), serde_json::json!(bound));
            t.to_json(cfg, extra)?
        }
    };
    emit(cfg, &body)?;
    Ok(within)
}

pub fn run_decompose(cfg: &RunConfig) -> Result<bool, CliError> {
    let [a, b, c, d] = cfg.matrix.ok_or_else(|| CliError::Config("decompose needs --matrix".into()))?;
    let x = GroupElement::new(a, b, c, d).map_err(|e| CliError::Config(e.to_string()))?;
    let mut t = Table::new(vec!["factorization", "t", "s", "theta", "psi", "sign", "u", "reconstruction_error"]);
    let iw = iwasawa(&x);
    t.push(vec![
        "iwasawa".into(),
        iw.t.into(),
        iw.s.into(),
        iw.theta.into(),
        Cell::Missing,
        Cell::Missing,
        Cell::Missing,
        iw.compose().max_abs_diff(&x).into(),
    ]);
    let ca = cartan(&x);
    t.push(vec![
        "cartan".into(),
        Cell::Missing,
        ca.s.into(),
        ca.theta.into(),
        ca.psi.into(),
        Cell::Missing,
        Cell::Missing,
        ca.compose().max_abs_diff(&x).into(),
    ]);
    let br = bruhat(&x);
    let err = br.compose().max_abs_diff(&x);
    let (name, t_, s, positive, u) = match br {
        BruhatCell::Small { t, s, positive } => ("bruhat_small", t, s, positive, None),
        BruhatCell::Big { t, s, positive, u } => ("bruhat_big", t, s, positive, Some(u)),
    };
    t.push(vec![
        name.into(),
        t_.into(),
        s.into(),
        Cell::Missing,
        Cell::Missing,
        Cell::Int(if positive { 1 } else { -1 }),
        u.into(),
        err.into(),
    ]);
    emit(cfg, &t.render(cfg, Map::new())?)?;
    Ok(true)
}
