//! Acceptance criteria, one PASS/FAIL line each.  Runs without the libtest
//! harness so the lines always reach the console.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use sl2cb::cgamma::{dougall_closed, dougall_series, gamma, gamma_ratio_half, DougallParams};
use sl2cb::intertwine::{b_eigen, d_eigen, sine_integral_closed, IntertwineConstants};
use sl2cb::norms::{cb_exact_diag, cb_upper, jnorm_report, sec_bound, steenstrup};
use sl2cb::quadrature::{b_double_integral, singular_sine_integral, QuadratureSpec};
use sl2cb::sl2::{bruhat, cartan, iwasawa, GroupElement};
use sl2cb::spherical::{phi, phi_equivariance_defect, phi_symmetry_checks, SphericalQuery};
use sl2cb::{Complex64 as C, Parity, SpectralParam};

type G = GroupElement<f64>;

const XI: [f64; 5] = [-0.45, -0.35, -0.25, -0.15, -0.05];
const ETA_EVEN: [f64; 7] = [0.0, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0];
const MU_EVEN: [i64; 9] = [0, 2, -2, 4, -4, 6, -6, 10, -10];
const ETA_ODD: [f64; 5] = [0.0, 0.01, 0.1, 1.0, 10.0];
const MU_ODD: [i64; 6] = [1, -1, 3, -3, 5, -5];
const SEED: u64 = 42;

struct Outcome {
    passed: bool,
    detail: String,
}

fn rel(a: C, b: C) -> f64 {
    (a - b).norm() / b.norm()
}

/// Every `(zeta, eps, mu)` of criteria 1-3.
fn strip_grid() -> Vec<(C, Parity, i64)> {
    let mut out = Vec::new();
    for xi in XI {
        for eta in ETA_EVEN {
            for mu in MU_EVEN {
                out.push((C::new(xi, eta), Parity::Even, mu));
            }
        }
        for eta in ETA_ODD {
            for mu in MU_ODD {
                out.push((C::new(xi, eta), Parity::Odd, mu));
            }
        }
    }
    out
}

fn timed(budget: Option<Duration>, body: impl FnOnce() -> sl2cb::Result<Outcome>) -> Outcome {
    let start = Instant::now();
    let res = body();
    let elapsed = start.elapsed();
    let mut o = res.unwrap_or_else(|e| Outcome { passed: false, detail: format!("error: {e}") });
    o.detail = format!("{}; {:.3}s", o.detail, elapsed.as_secs_f64());
    if let Some(b) = budget {
        if elapsed > b {
            o.passed = false;
            o.detail = format!("{} over budget {:.0}s", o.detail, b.as_secs_f64());
        }
    }
    o
}

fn steenstrup_agreement() -> sl2cb::Result<Outcome> {
    let mut worst = 0.0f64;
    for xi in XI {
        for eta in ETA_EVEN {
            worst = worst.max((cb_exact_diag(C::new(xi, eta), Parity::Even, 0)? - steenstrup(xi, eta)?).abs());
        }
    }
    Ok(Outcome { passed: worst < 1e-9, detail: format!("max |cb - steenstrup| = {worst:.3e}") })
}

fn diagonal_bound() -> sl2cb::Result<Outcome> {
    let mut worst = f64::NEG_INFINITY;
    for xi in XI {
        for eta in ETA_EVEN {
            for mu in MU_EVEN {
                worst = worst.max(cb_exact_diag(C::new(xi, eta), Parity::Even, mu)? - sec_bound(xi.abs()));
            }
        }
    }
    Ok(Outcome { passed: worst <= 1e-9, detail: format!("max cb - sec = {worst:.3e}") })
}

fn odd_finiteness() -> sl2cb::Result<Outcome> {
    let mut sup = 0.0f64;
    let mut limit_gap = 0.0f64;
    for xi in XI {
        for mu in MU_ODD {
            for eta in ETA_ODD {
                sup = sup.max(cb_exact_diag(C::new(xi, eta), Parity::Odd, mu)?);
            }
            let at_zero = cb_exact_diag(C::new(xi, 0.0), Parity::Odd, mu)?;
            let near = cb_exact_diag(C::new(xi, 1e-4), Parity::Odd, mu)?;
            limit_gap = limit_gap.max((at_zero - near).abs());
        }
    }
    Ok(Outcome {
        passed: sup.is_finite() && limit_gap < 1e-6,
        detail: format!("sup cb = {sup:.6}, |eta=0 - eta=1e-4| = {limit_gap:.3e}"),
    })
}

fn parseval_oracle() -> sl2cb::Result<Outcome> {
    let grid = strip_grid();
    let defects = grid
        .par_iter()
        .map(|&(z, p, mu)| jnorm_report(z.re, z.im, p, mu, 4000).map(|r| r.rel_defect))
        .collect::<sl2cb::Result<Vec<f64>>>()?;
    let worst = defects.into_iter().fold(0.0, f64::max);
    Ok(Outcome { passed: worst < 1e-6, detail: format!("{} points, max rel defect = {worst:.3e}", grid.len()) })
}

fn intertwiner_chain() -> sl2cb::Result<Outcome> {
    let mut chain = 0.0f64;
    let mut inverse = 0.0f64;
    for (z, p, mu) in strip_grid() {
        let k = IntertwineConstants::compute(z, p, mu)?;
        chain = chain.max(k.chain_defect());
        inverse = inverse.max((k.d * d_eigen(-z, p, mu)? - 1.0).norm());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let spec = QuadratureSpec::default();
    let mut quad = 0.0f64;
    for _ in 0..20 {
        let z = C::new(rng.gen_range(-0.45..-0.05), rng.gen_range(-3.0..3.0));
        let p = if rng.gen_bool(0.5) { Parity::Even } else { Parity::Odd };
        let mu = 2 * rng.gen_range(-4i64..=4) + p.as_i64();
        quad = quad.max(rel(b_double_integral(z, p, mu, &spec)?, b_eigen(z, p, mu)?));
    }
    Ok(Outcome {
        passed: chain < 1e-10 && inverse < 1e-10 && quad < 1e-8,
        detail: format!("chain {chain:.3e}, inverse {inverse:.3e}, quadrature {quad:.3e}"),
    })
}

fn gamma_suite() -> sl2cb::Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut refl, mut dup, mut conj) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..1000 {
        let z = loop {
            let z = C::new(rng.gen_range(-8.0..8.0), rng.gen_range(-6.0..6.0));
            if C::new(z.re - z.re.round(), z.im).norm() > 0.05 {
                break z;
            }
        };
        refl = refl.max(rel(gamma(z)? * gamma(1.0 - z)?, PI / (z * PI).sin()));
        conj = conj.max(rel(gamma(z.conj())?, gamma(z)?.conj()));
        let w = C::new(rng.gen_range(0.05..20.0), rng.gen_range(-5.0..5.0));
        let rhs = gamma(w * 2.0)? * PI.sqrt() * C::new(2.0, 0.0).powc(1.0 - w * 2.0);
        dup = dup.max(rel(gamma(w)? * gamma(w + 0.5)?, rhs));
    }
    let h = C::new(0.5, 0.0);
    let two = C::new(2.0, 0.0);
    let p = DougallParams::new(h, h, two, two)?;
    let closed = dougall_closed(&p)?;
    let dougall = rel(dougall_series(&p, 10_000)?, closed);
    let closed_is_16 = (closed - 16.0).norm() < 1e-12;
    let mut asym = 0.0f64;
    for _ in 0..200 {
        let z = C::new(rng.gen_range(-0.45..0.45), rng.gen_range(-1.0..1.0));
        asym = asym.max((gamma_ratio_half(z, 400)?.norm() / 200f64.powf(2.0 * z.re) - 1.0).abs());
    }
    Ok(Outcome {
        passed: refl < 1e-10 && dup < 1e-10 && conj < 1e-10 && dougall < 1e-4 && closed_is_16 && asym < 0.02,
        detail: format!(
            "reflection {refl:.3e}, duplication {dup:.3e}, conjugation {conj:.3e}, dougall {dougall:.3e}, ratio asymptotics {asym:.3e}"
        ),
    })
}

fn spherical_identities() -> sl2cb::Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut queries = Vec::new();
    for _ in 0..100 {
        let p = if rng.gen_bool(0.5) { Parity::Even } else { Parity::Odd };
        let zeta = C::new(rng.gen_range(-0.45..0.45), rng.gen_range(-2.0..2.0));
        let mu = 2 * rng.gen_range(-3i64..=3) + p.as_i64();
        let nu = 2 * rng.gen_range(-3i64..=3) + p.as_i64();
        let x = G::k(rng.gen_range(-PI..PI)) * G::a(rng.gen_range(0.0f64..1.5).exp())? * G::k(rng.gen_range(-PI..PI));
        let (th, ps) = (rng.gen_range(-PI..PI), rng.gen_range(-PI..PI));
        queries.push((SphericalQuery::new(SpectralParam::new(zeta, p), mu, nu, x, QuadratureSpec::default())?, th, ps));
    }
    let per_query = queries
        .par_iter()
        .map(|(q, th, ps)| -> sl2cb::Result<[f64; 4]> {
            let equi = phi_equivariance_defect(q, *th, *ps)?;
            let delta = if q.mu == q.nu { 1.0 } else { 0.0 };
            let ident = (phi(&q.with_x(G::identity()))? - delta).norm();
            let sym = phi_symmetry_checks(q)?.iter().map(|r| r.abs_defect).fold(0.0, f64::max);
            let excess = phi(q)?.norm() - cb_upper(q.p.zeta, q.p.parity, q.mu.0, q.nu.0)?;
            Ok([equi, ident, sym, excess])
        })
        .collect::<sl2cb::Result<Vec<_>>>()?;
    let mut worst = [0.0f64, 0.0, 0.0, f64::NEG_INFINITY];
    for d in per_query {
        for j in 0..4 {
            worst[j] = worst[j].max(d[j]);
        }
    }
    let [equi, ident, sym, excess] = worst;
    Ok(Outcome {
        passed: equi < 1e-8 && ident < 1e-8 && sym < 1e-8 && excess <= 1e-6,
        detail: format!(
            "equivariance {equi:.3e}, identity {ident:.3e}, symmetries {sym:.3e}, max |phi| - cb_upper {excess:.3e}"
        ),
    })
}

fn decompositions() -> sl2cb::Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut iw, mut ca, mut br) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..10_000 {
        let s = rng.gen_range(0.0f64..2.0).exp();
        let x = G::k(rng.gen_range(-PI..PI)) * G::a(s)? * G::k(rng.gen_range(-PI..PI));
        iw = iw.max(iwasawa(&x).compose().max_abs_diff(&x));
        ca = ca.max(cartan(&x).compose().max_abs_diff(&x));
        br = br.max(bruhat(&x).compose().max_abs_diff(&x));
    }
    let f = iwasawa(&G::n(1.0));
    let n1 = (f.t - 0.5).abs().max((f.s - FRAC_1_SQRT_2).abs()).max((f.theta + FRAC_PI_4).abs());
    Ok(Outcome {
        passed: iw <= 1e-12 && ca <= 1e-12 && br <= 1e-12 && n1 <= 1e-12,
        detail: format!("iwasawa {iw:.3e}, cartan {ca:.3e}, bruhat {br:.3e}, n1 factors {n1:.3e}"),
    })
}

fn sine_integral() -> sl2cb::Result<Outcome> {
    let spec = QuadratureSpec::default();
    let mut worst = 0.0f64;
    let mut zeros_exact = true;
    for alpha in [-0.9, -0.5, -0.1, 0.4] {
        let a = C::new(alpha, 0.0);
        for p in [Parity::Even, Parity::Odd] {
            for kappa in -12i64..=12 {
                let q = singular_sine_integral(a, p, kappa, &spec)?;
                let closed = sine_integral_closed(a, p, kappa)?;
                if (kappa + p.as_i64()).rem_euclid(2) == 1 {
                    zeros_exact &= q == C::new(0.0, 0.0) && closed == C::new(0.0, 0.0);
                } else {
                    worst = worst.max(rel(q, closed));
                }
            }
        }
    }
    Ok(Outcome {
        passed: worst < 1e-8 && zeros_exact,
        detail: format!("max rel defect {worst:.3e}, parity zeros exact: {zeros_exact}"),
    })
}

fn determinism() -> sl2cb::Result<Outcome> {
    let dir = tempfile::tempdir().expect("temp dir");
    let mut files = Vec::new();
    for fmt in ["csv", "json"] {
        for run in 0..2 {
            let path = dir.path().join(format!("table_{run}.{fmt}"));
            let args = ["sl2cb", "--command", "table", "--format", fmt, "--out", path.to_str().expect("utf-8 path")];
            let code = sl2cb_cli::run(args);
            if code != 0 {
                return Ok(Outcome { passed: false, detail: format!("table run exited {code}") });
            }
            files.push(std::fs::read(&path).expect("table written"));
        }
    }
    let same = files[0] == files[1] && files[2] == files[3];
    Ok(Outcome {
        passed: same && !files[0].is_empty(),
        detail: format!("csv {} bytes, json {} bytes, identical: {same}", files[0].len(), files[2].len()),
    })
}

/// Name, runtime budget in seconds, body.
type Criterion = (&'static str, Option<u64>, fn() -> sl2cb::Result<Outcome>);

fn main() {
    let criteria: [Criterion; 10] = [
        ("steenstrup agreement", Some(1), steenstrup_agreement),
        ("diagonal sec bound", Some(1), diagonal_bound),
        ("odd parity finiteness and eta limit", None, odd_finiteness),
        ("closed form vs parseval oracle", Some(10), parseval_oracle),
        ("intertwiner chain", None, intertwiner_chain),
        ("gamma identity suite", None, gamma_suite),
        ("spherical identities", None, spherical_identities),
        ("decomposition reconstruction", None, decompositions),
        ("sine integral closed form", None, sine_integral),
        ("table determinism", None, determinism),
    ];
    let mut failed = 0;
    for (j, (name, budget, body)) in criteria.into_iter().enumerate() {
        let o = timed(budget.map(Duration::from_secs), body);
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {tag} {name}: {}", j + 1, o.detail);
        failed += usize::from(!o.passed);
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
