//! Identity suites run by `--command verify`.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use sl2cb::cgamma::{dougall_closed, dougall_series, gamma, gamma_ratio_half, DougallParams};
use sl2cb::intertwine::{b_eigen, d_eigen, sine_integral_closed, IntertwineConstants};
use sl2cb::norms::{cb_exact_diag, cb_upper, jnorm_report, jnorm_sq_closed, sec_bound, steenstrup};
use sl2cb::quadrature::{b_double_integral, singular_sine_integral, QuadratureSpec};
use sl2cb::repn::{act_basis, pairing, WeightIndex};
use sl2cb::sl2::{bruhat, cartan, iwasawa, GroupElement};
use sl2cb::spherical::{phi, phi_equivariance_defect, phi_symmetry_checks, SphericalQuery};
use sl2cb::{CirclePoint, Complex64 as C, Parity, SpectralParam};

use crate::config::RunConfig;

type G = GroupElement<f64>;

pub struct SuiteOutcome {
    pub name: &'static str,
    pub samples: usize,
    pub max_defect: f64,
    pub threshold: f64,
    pub passed: bool,
    /// Set when the suite could not be evaluated at all.
    pub error: Option<String>,
}

type SuiteFn = fn(&RunConfig, &mut ChaCha8Rng) -> sl2cb::Result<(usize, f64)>;

/// Suite name, default pass threshold, body.  Bodies return `(samples, max_defect)`.
pub const SUITES: &[(&str, f64, SuiteFn)] = &[
    ("gamma_reflection", 1e-10, gamma_reflection),
    ("gamma_duplication", 1e-10, gamma_duplication),
    ("gamma_conjugation", 1e-10, gamma_conjugation),
    ("gamma_ratio_sign", 1e-10, gamma_ratio_sign),
    ("gamma_ratio_asymptotics", 0.02, gamma_ratio_asymptotics),
    ("dougall_series", 1e-4, dougall),
    ("decomposition_reconstruction", 1e-12, decompositions),
    ("sine_integral_closed_form", 1e-8, sine_integral),
    ("intertwiner_chain", 1e-10, intertwiner_chain),
    ("intertwiner_inverse", 1e-10, intertwiner_inverse),
    ("b_double_integral", 1e-8, b_quadrature),
    ("representation_homomorphism", 1e-10, representation_law),
    ("pairing_invariance", 1e-9, pairing_invariance),
    ("spherical_equivariance", 1e-8, spherical_equivariance),
    ("spherical_identity_value", 1e-10, spherical_identity),
    ("spherical_symmetries", 1e-8, spherical_symmetries),
    ("spherical_cb_domination", 1e-6, spherical_domination),
    ("steenstrup_agreement", 1e-9, steenstrup_agreement),
    ("diagonal_sec_bound", 1e-9, diagonal_bound),
    ("odd_eta_limit", 1e-6, odd_limit),
    ("parseval_oracle", 1e-6, parseval),
];

pub fn run_all(cfg: &RunConfig) -> Vec<SuiteOutcome> {
    SUITES
        .par_iter()
        .enumerate()
        .map(|(j, (name, default_tol, body))| {
            // one stream per suite so results do not depend on scheduling
            let mut rng = <ChaCha8Rng as rand::SeedableRng>::seed_from_u64(cfg.seed);
            rng.set_stream(j as u64);
            let threshold = cfg.tol.unwrap_or(*default_tol);
            match body(cfg, &mut rng) {
                Ok((samples, max_defect)) => SuiteOutcome {
                    name,
                    samples,
                    max_defect,
                    threshold,
                    passed: max_defect.is_finite() && max_defect <= threshold,
                    error: None,
                },
                Err(e) => SuiteOutcome {
                    name,
                    samples: 0,
                    max_defect: f64::NAN,
                    threshold,
                    passed: false,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect()
}

fn rel(a: C, b: C) -> f64 {
    (a - b).norm() / b.norm()
}

fn away_from_integers(rng: &mut ChaCha8Rng) -> C {
    loop {
        let z = C::new(rng.gen_range(-8.0..8.0), rng.gen_range(-6.0..6.0));
        if C::new(z.re - z.re.round(), z.im).norm() > 0.05 {
            return z;
        }
    }
}

fn spec(cfg: &RunConfig) -> QuadratureSpec<f64> {
    QuadratureSpec { initial_nodes: cfg.nodes, ..QuadratureSpec::default() }
}

fn random_element(rng: &mut ChaCha8Rng, max_log_s: f64) -> G {
    let s = rng.gen_range(0.0..max_log_s).exp();
    G::k(rng.gen_range(-3.2..3.2)) * G::a(s).expect("positive s") * G::k(rng.gen_range(-3.2..3.2))
}

fn parity_weight(rng: &mut ChaCha8Rng, parity: Parity, half: i64) -> i64 {
    2 * rng.gen_range(-half..=half) + parity.as_i64()
}

fn gamma_reflection(_: &RunConfig, rng: &mut ChaCha8Rng) -> sl2cb::Result<(usize, f64)> {
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let z = away_from_integers(rng);
        let lhs = gamma(z)? * gamma(C::new(1.0, 0.0) - z)?;
        worst = worst.max(rel(lhs, std::f64::consts::PI / (z * std::f64::consts::PI).sin()));
    }
    Ok((1000, worst))
}

fn gamma_duplication(_: &RunConfig, rng: &mut ChaCha8Rng) -> sl2cb::Result<(usize, f64)> {
    let mut worst = 0.0f64;
    let sqrt_pi = std::f64::consts::PI.sqrt();
    for _ in 0..1000 {
        let z = C::new(rng.gen_range(0.05..20.0), rng.gen_range(-5.0..5.0));
        let lhs = gamma(z)? * gamma(z + 0.5)?;
        let rhs = gamma(z * 2.0)? * sqrt_pi * C::new(2.0, 0.0).powc(C::new(1.0, 0.0) - z * 2.0);
        worst = worst.max(rel(lhs, rhs));
    }
    Ok((1000, worst))
}

fn gamma_conjugation(_: &RunConfig, rng: &mut ChaCha8Rng) -> sl2cb::Result<(usize, f64)> {
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let z = away_from_integers(rng);
        worst = worst.max(rel(gamma(z.conj())?, gamma(z)?.conj()));
    }
    Ok((1000, worst))
}

fn gamma_ratio_sign(_: &RunConfig, rng: &mut ChaCha8Rng) -> sl2cb::Result<(usize, f64)> {
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let z = C::new(rng.gen_range(-0.45..0.45), rng.gen_range(-2.0..2.0));
        let k: i64 = rng.gen_range(-40..=40);
        let b = 0.5 + k as f64 / 2.0;
        let direct = gamma(z + b)? / gamma(-z + b)?;
        worst = worst.max(rel(gamma_ratio_half(z, k)?, direct));
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        worst = worst.max(rel(gamma_ratio_half(z, -k)? * sign, direct));
    }
    Ok((500, worst))
}

fn gamma_ratio_asymptotics(_: &RunConfig, rng: &mut ChaCha8Rng) -> sl2cb::Result<(usize, f64)> {
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let z = C::new(rng.gen_range(-0.45..0.45), rng.gen_range(-1.0..1.0));
        let r = gamma_ratio_half(z, 400)?.norm() / 200f64.powf(2.0 * z.re);
        worst = worst.max((r - 1.0).abs());
    }
    Ok((200, worst))
}

fn dougall(_: &RunConfig, _: &mut ChaCha8Rng) -> sl2cb::Result<(usize, f64)> {
    let h = C::new(0.5, 0.0);
    let two = C::new(2.0, 0.0);
    let p = DougallParams::new(h, h, two, two)?;
    let closed = dougall_closed(&p)?;
    let series = dougall_series(&p, 10_000)?;
    Ok((1, rel(series, closed)))
}

fn decompositions(_: &RunConfig, rng: &mut ChaCha8Rng) -> sl2cb::Result<(usize, f64)> {
    let mut worst = 0.0f64;
    for _ in 0..2000 {
        let x = random_element(rng, 1.5);
        worst = worst
            .max(iwasawa(&x).compose().max_abs_diff(&x))
            .max(cartan(&x).compose().max_abs_diff(&x))
            .max(bruhat(&x).compose().max_abs_diff(&x));
    }
    let n1 = iwasawa(&G::n(1.0));
    let expect = [0.5, std::f64::consts::FRAC_1_SQRT_2, -std::f64::consts::FRAC_PI_4];
    for (got, want) in [n1.t, n1.s, n1.theta].into_iter().zip(expect) {
        worst = worst.max((got - want).abs());
    }
    Ok((2001, worst))
}

fn sine_integral(cfg: &RunConfig, _: &mut ChaCha8Rng) -> sl2cb::Result<(usize, f64)> {
    let spec = spec(cfg);
    let mut worst = 0.0f64;
    let mut n = 0;
    for alpha in [-0.9, -0.5, -0.1, 0.4] {
        for p in [Parity::Even, Parity::Odd] {
            for kappa in -12i64..=12 {
                let a = C::new(alpha, 0.0);
                let q = singular_sine_integral(a, p, kappa, &spec)?;
                let closed = sine_integral_closed(a, p, kappa)?;
                n += 1;
                worst = worst.max(if closed.norm() == 0.0 { q.norm() } else { rel(q, closed) });
            }
        }
    }
    Ok((n, worst))
}

fn strip_grid(cfg: &RunConfig) -> Vec<(C, Parity, i64)> {
    let mut out = Vec::new();
    let parity = if cfg.epsilon == 0 { Parity::Even } else { Parity::Odd };
    for &xi in &cfg.xi_grid {
        for &eta in &cfg.eta_grid {
            for &mu in &cfg.mu_grid {
                out.push((C::new(xi, eta), parity, mu));
            }
        }
    }
    out
}

fn intertwiner_chain(cfg: &RunConfig, _: &mut ChaCha8Rng) -> sl2cb::Result<(usize, f64)> {
    let grid = strip_grid(cfg);
    let mut worst = 0.0f64;
    for &(z, p, mu) in &grid {
        worst = worst.max(IntertwineConstants::compute(z, p, mu)?.chain_defect());
    }
    Ok((grid.len(), worst))
}

fn intertwiner_inverse(cfg: &RunConfig, _: &mut ChaCha8Rng) -> sl2cb::Result<(usize, f64)> {
    let grid = strip_grid(cfg);
    let mut worst = 0.0f64;
    for &(z, p, mu) in &grid {
        worst = worst.max((d_eigen(z, p, mu)? * d_eigen(-z, p, mu)? - 1.0).norm());
    }
    Ok((grid.len(), worst))
}

fn b_quadrature(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> sl2cb::Result<(usize, f64)> {
    let spec = spec(cfg);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let z = C::new(rng.gen_range(-0.45..-0.05), rng.gen_range(-3.0..3.0));
        let p = if rng.gen_bool(0.5) { Parity::Even } else { Parity::Odd };
        let mu = parity_weight(rng, p, 4);
        worst = worst.max(rel(b_double_integral(z, p, mu, &spec)?, b_eigen(z, p, mu)?));
    }
    Ok((20, worst))
}

fn random_param(rng: &mut ChaCha8Rng) -> SpectralParam<f64> {
    let p = if rng.gen_bool(0.5) { Parity::Even } else { Parity::Odd };
    SpectralParam::new(C::new(rng.gen_range(-0.45..0.45), rng.gen_range(-2.0..2.0)), p)
}

fn representation_law(_: &RunConfig, rng: &mut ChaCha8Rng) -> sl2cb::Result<(usize, f64)> {
    use sl2cb::repn::act_point;
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let p = random_param(rng);
        let x = random_element(rng, 1.0);
        let y = random_element(rng, 1.0);
        let th = CirclePoint::new(rng.gen_range(-3.0..3.0));
        let (fxy, pxy) = act_point(&p, &(x * y), th);
        let (fx, px) = act_point(&p, &x, th);
        let (fy, py) = act_point(&p, &y, px);
        worst = worst.max((fxy - fx * fy).norm() / fxy.norm()).max(
            sl2cb::sl2::wrap_angle(pxy.angle() - py.angle()).abs(),
        );
    }
    Ok((200, worst))
}

fn pairing_invariance(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> sl2cb::Result<(usize, f64)> {
    let spec = spec(cfg);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let p = random_param(rng);
        let dual = p.dual();
        let x = random_element(rng, 0.8);
        let mu = WeightIndex(parity_weight(rng, p.parity, 2));
        let nu = WeightIndex(parity_weight(rng, p.parity, 2));
        let lhs = pairing(
            |t| act_basis(&p, &x, mu, CirclePoint::new(t)).expect("weight parity"),
            |t| act_basis(&dual, &x, nu, CirclePoint::new(t)).expect("weight parity"),
            &spec,
        )?;
        let rhs = if mu.0 + nu.0 == 0 { 1.0 } else { 0.0 };
        worst = worst.max((lhs - rhs).norm());
    }
    Ok((20, worst))
}

fn random_query(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> sl2cb::Result<SphericalQuery<f64>> {
    let p = random_param(rng);
    let mu = parity_weight(rng, p.parity, 3);
    let nu = parity_weight(rng, p.parity, 3);
    SphericalQuery::new(p, mu, nu, random_element(rng, 1.2), spec(cfg))
}

const QUERIES: usize = 40;

fn spherical_equivariance(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> sl2cb::Result<(usize, f64)> {
    let mut worst = 0.0f64;
    for _ in 0..QUERIES {
        let q = random_query(cfg, rng)?;
        worst = worst.max(phi_equivariance_defect(&q, rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0))?);
    }
    Ok((QUERIES, worst))
}

fn spherical_identity(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> sl2cb::Result<(usize, f64)> {
    let mut worst = 0.0f64;
    for _ in 0..QUERIES {
        let q = random_query(cfg, rng)?;
        let v = phi(&q.with_x(G::identity()))?;
        let delta = if q.mu == q.nu { 1.0 } else { 0.0 };
        worst = worst.max((v - delta).norm());
    }
    Ok((QUERIES, worst))
}

fn spherical_symmetries(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> sl2cb::Result<(usize, f64)> {
    let mut worst = 0.0f64;
    for _ in 0..QUERIES {
        for r in phi_symmetry_checks(&random_query(cfg, rng)?)? {
            worst = worst.max(r.abs_defect);
        }
    }
    Ok((QUERIES, worst))
}

/// Defect is the amount by which `|phi|` exceeds the bound.
fn spherical_domination(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> sl2cb::Result<(usize, f64)> {
    let mut worst = 0.0f64;
    for _ in 0..QUERIES {
        let q = random_query(cfg, rng)?;
        let bound = cb_upper(q.p.zeta, q.p.parity, q.mu.0, q.nu.0)?;
        worst = worst.max(phi(&q)?.norm() - bound);
    }
    Ok((QUERIES, worst))
}

fn steenstrup_agreement(cfg: &RunConfig, _: &mut ChaCha8Rng) -> sl2cb::Result<(usize, f64)> {
    let mut worst = 0.0f64;
    let mut n = 0;
    for &xi in &cfg.xi_grid {
        for &eta in &cfg.eta_grid {
            worst = worst.max((cb_exact_diag(C::new(xi, eta), Parity::Even, 0)? - steenstrup(xi, eta)?).abs());
            n += 1;
        }
    }
    Ok((n, worst))
}

/// Defect is the excess of the exact diagonal norm over `sec(pi xi)`.
fn diagonal_bound(cfg: &RunConfig, _: &mut ChaCha8Rng) -> sl2cb::Result<(usize, f64)> {
    let mut worst = 0.0f64;
    let mut n = 0;
    for &xi in &cfg.xi_grid {
        for &eta in &cfg.eta_grid {
            for mu in [0i64, 2, -2, 4, -4, 6, -6, 10, -10] {
                let v = cb_exact_diag(C::new(xi, eta), Parity::Even, mu)?;
                worst = worst.max(v - sec_bound(xi.abs()));
                n += 1;
            }
        }
    }
    Ok((n, worst))
}

fn odd_limit(cfg: &RunConfig, _: &mut ChaCha8Rng) -> sl2cb::Result<(usize, f64)> {
    let mut worst = 0.0f64;
    let mut n = 0;
    for &xi in &cfg.xi_grid {
        if xi == 0.0 {
            continue;
        }
        for mu in [1i64, -1, 3, -3, 5, -5] {
            let a = jnorm_sq_closed(xi, 0.0, mu)?;
            let b = jnorm_sq_closed(xi, 1e-4, mu)?;
            worst = worst.max((a - b).abs());
            n += 1;
        }
    }
    Ok((n, worst))
}

fn parseval(cfg: &RunConfig, _: &mut ChaCha8Rng) -> sl2cb::Result<(usize, f64)> {
    let mut cases = Vec::new();
    for &xi in &cfg.xi_grid {
        if xi == 0.0 {
            continue;
        }
        for &eta in &cfg.eta_grid {
            for mu in [0i64, 2, -4, 1, -3] {
                cases.push((xi, eta, mu));
            }
        }
    }
    let defects = cases
        .par_iter()
        .map(|&(xi, eta, mu)| jnorm_report(xi, eta, Parity::of(mu), mu, 4000).map(|r| r.rel_defect))
        .collect::<sl2cb::Result<Vec<f64>>>()?;
    Ok((cases.len(), defects.into_iter().fold(0.0, f64::max)))
}
