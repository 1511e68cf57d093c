//! Squared norms of the regularised weight vectors, the diagonal cb norms,
//! the off-diagonal upper bounds, and the rank-one reference formula.
//!
//! All closed forms are stated for `-1/2 < xi < 0`; positive `xi` is reduced
//! to the negative side through the intertwining relation
//! `phi_zeta = d(zeta,mu)/d(zeta,nu) phi_{-zeta}`.

use num_complex::Complex;

use crate::cgamma::{digamma, gamma_ratio_half, log_gamma};
use crate::error::{domain, Error, Result};
use crate::intertwine::{c_norm, d_eigen, h_tilde, m_tilde};
use crate::quadrature::richardson;
use crate::repn::Parity;
use crate::scalar::{int, lit, to_f64, Real};

fn check_xi<T: Real>(xi: T) -> Result<()> {
    if xi > lit(-0.5) && xi < T::zero() {
        Ok(())
    } else {
        Err(domain(format!("need -1/2 < xi < 0, got {xi}")))
    }
}

fn check_strip<T: Real>(zeta: Complex<T>) -> Result<()> {
    if zeta.re.abs() < lit(0.5) && zeta.im.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("need |Re zeta| < 1/2, got {}", zeta.re)))
    }
}

fn pow2<T: Real>(x: T) -> T {
    (x * T::LN_2()).exp()
}

fn positive<T: Real>(v: T, what: &str, xi: T, eta: T, mu: i64) -> Result<T> {
    if v > T::zero() && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Consistency(format!("{what} = {v} at xi={xi}, eta={eta}, mu={mu}")))
    }
}

/// Odd-weight squared norm at `eta = 0`, as the limit `eta -> 0` of the
/// `coth` form: `2^{2 xi} G0 (1 + tan(pi xi) (psi(a) - psi(b)) / pi)` with
/// `a = 1/2 + xi + mu/2`, `b = 1/2 - xi + mu/2`, `G0 = Gamma(a)/Gamma(b)`.
pub fn jnorm_sq_odd_limit<T: Real>(xi: T, mu: i64) -> Result<T> {
    check_xi(xi)?;
    Parity::Odd.check(mu)?;
    let x = Complex::from(xi);
    let base = lit::<T>(0.5) + int::<T>(mu) * lit(0.5);
    let (a, b) = (x + base, -x + base);
    let g0 = gamma_ratio_half(x, mu)?.re;
    let dpsi = (digamma(a)? - digamma(b)?).re;
    let v = pow2(xi + xi) * g0 * (T::one() + (T::PI() * xi).tan() * dpsi / T::PI());
    positive(v, "odd limit", xi, T::zero(), mu)
}

/// Closed-form squared `L^2` norm of the regularised weight vector:
/// `2^{2 xi} Re(G (1 + i tan(pi xi) h(pi eta)))` with
/// `G = Gamma(1/2 + conj(zeta) + mu/2) / Gamma(1/2 - zeta + mu/2)` and `h = tanh`
/// for even `mu`, `coth` for odd.  Odd `mu` at `eta = 0` uses [`jnorm_sq_odd_limit`].
pub fn jnorm_sq_closed<T: Real>(xi: T, eta: T, mu: i64) -> Result<T> {
    check_xi(xi)?;
    let odd = Parity::of(mu) == Parity::Odd;
    if odd && eta == T::zero() {
        return jnorm_sq_odd_limit(xi, mu);
    }
    let zeta = Complex::new(xi, eta);
    let base = lit::<T>(0.5) + int::<T>(mu) * lit(0.5);
    let g = (log_gamma(zeta.conj() + base)? - log_gamma(-zeta + base)?).exp();
    let pe = T::PI() * eta;
    let hyper = if odd { pe.tanh().recip() } else { pe.tanh() };
    let factor = Complex::new(T::one(), (T::PI() * xi).tan() * hyper);
    let v = pow2(xi + xi) * (g * factor).re;
    positive(v, "squared norm", xi, eta, mu)
}

/// Parseval-series evaluation of the same squared norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParsevalSum<T> {
    /// Tail-extrapolated value.
    pub value: T,
    /// Plain truncated sum over `|kappa| <= K`.
    pub raw: T,
    /// `|value - raw|`, the estimated truncation tail.
    pub tail: T,
}

/// `(pi / c(xi, 0)) sum_{|kappa| <= K, kappa even} |m~(kappa)|^2 h~(kappa)`.
///
/// Terms decay like `kappa^{2 xi - 2}`, so the tail after `K` behaves like
/// `K^{2 xi - 1}`.  For `K >= 64` the partial sums at `K/8, K/4, K/2, K` are
/// extrapolated with exponents `1 - 2 xi`, `2 - 2 xi`, `3 - 2 xi`.
pub fn jnorm_sq_series<T: Real>(xi: T, eta: T, parity: Parity, mu: i64, terms: u32) -> Result<ParsevalSum<T>> {
    check_xi(xi)?;
    parity.check(mu)?;
    if terms == 0 {
        return Err(domain("need at least one term"));
    }
    let k_max = terms as i64;
    let scale = T::PI() / c_norm(Complex::from(xi), Parity::Even)?.re;
    let cutoffs = [k_max / 8, k_max / 4, k_max / 2, k_max];
    let mut partial = [T::zero(); 4];
    let mut acc = T::zero();
    let term = |kappa: i64| -> Result<T> { Ok(m_tilde(parity, mu, eta, kappa)?.norm_sqr() * h_tilde(xi, kappa)?) };
    let mut kappa = 0i64;
    let mut next = 0usize;
    while kappa <= k_max {
        acc = acc + if kappa == 0 { term(0)? } else { term(kappa)? + term(-kappa)? };
        kappa += 2;
        while next < 4 && kappa > cutoffs[next] {
            partial[next] = acc * scale;
            next += 1;
        }
    }
    let raw = acc * scale;
    if terms < 64 {
        return Ok(ParsevalSum { value: raw, raw, tail: T::zero() });
    }
    let p = T::one() - xi - xi;
    let exps = [p, p + T::one(), p + lit(2.0)].map(Complex::from);
    let ks = cutoffs.map(int::<T>);
    let sums = partial.map(Complex::from);
    let value = richardson(&ks, &sums, &exps)?.re;
    Ok(ParsevalSum { value, raw, tail: (value - raw).abs() })
}

/// Reduces `zeta` to `Re zeta <= 0`; returns the reduced value.
fn canonical<T: Real>(zeta: Complex<T>) -> Complex<T> {
    if zeta.re > T::zero() {
        -zeta
    } else {
        zeta
    }
}

/// Exact cb norm of the diagonal function `phi^{mu,mu}_{zeta,eps}`:
/// `|d(zeta, eps, -mu)|^{-1} ||J f_{zeta,mu}||^2`, evaluated at `-|Re zeta|`.
/// Equals 1 on the unitary axis `Re zeta = 0`.
pub fn cb_exact_diag<T: Real>(zeta: Complex<T>, parity: Parity, mu: i64) -> Result<T> {
    check_strip(zeta)?;
    parity.check(mu)?;
    if zeta.re == T::zero() {
        return Ok(T::one());
    }
    let z = canonical(zeta);
    let j2 = jnorm_sq_closed(z.re, z.im, mu)?;
    Ok(j2 / d_eigen(z, parity, -mu)?.norm())
}

/// Upper bound for the cb norm of `phi^{mu,nu}_{zeta,eps}`.
///
/// For `eps = 0`: `sec(pi xi) |ratio(zeta, mu)|^{1/2} / |ratio(zeta, nu)|^{1/2}` where
/// `ratio(z, k) = Gamma(1/2 + z + k/2)/Gamma(1/2 - z + k/2)`; for `eps = 1` the same
/// times `coth(pi |eta|)`.  At `eps = 1, eta = 0` the `coth` form is infinite and the
/// norm-product bound `|d(zeta,-nu)|^{-1} (||J f_mu||^2 ||J f_nu||^2)^{1/2}` with the
/// odd-weight limit is used instead.  Positive `Re zeta` picks up the factor
/// `|d(zeta,mu)/d(zeta,nu)|`; `Re zeta = 0` gives 1.
pub fn cb_upper<T: Real>(zeta: Complex<T>, parity: Parity, mu: i64, nu: i64) -> Result<T> {
    check_strip(zeta)?;
    parity.check(mu)?;
    parity.check(nu)?;
    if zeta.re == T::zero() {
        return Ok(T::one());
    }
    if zeta.re > T::zero() {
        let scale = (d_eigen(zeta, parity, mu)? / d_eigen(zeta, parity, nu)?).norm();
        return Ok(scale * cb_upper(-zeta, parity, mu, nu)?);
    }
    let (xi, eta) = (zeta.re, zeta.im);
    if parity == Parity::Odd && eta == T::zero() {
        let jm = jnorm_sq_closed(xi, eta, mu)?;
        let jn = jnorm_sq_closed(xi, eta, nu)?;
        return Ok((jm * jn).sqrt() / d_eigen(zeta, parity, -nu)?.norm());
    }
    let sec = (T::PI() * xi).cos().recip();
    let rm = gamma_ratio_half(zeta, mu)?.norm();
    let rn = gamma_ratio_half(zeta, nu)?.norm();
    let mut bound = sec * (rm / rn).sqrt();
    if parity == Parity::Odd {
        bound = bound / (T::PI() * eta.abs()).tanh();
    }
    Ok(bound)
}

/// `sec(pi |xi|)`.
pub fn sec_bound<T: Real>(xi: T) -> T {
    (T::PI() * xi.abs()).cos().recip()
}

/// `((1 + sec^2(pi xi) sinh^2(pi eta)) / (1 + sinh^2(pi eta)))^{1/2}`, written as
/// `(sech^2 + sec^2 tanh^2)^{1/2}` so large `eta` cannot overflow.
pub fn steenstrup<T: Real>(xi: T, eta: T) -> Result<T> {
    if !(xi.abs() < lit(0.5)) || !eta.is_finite() {
        return Err(domain(format!("need |xi| < 1/2 and finite eta, got ({xi}, {eta})")));
    }
    let pe = T::PI() * eta;
    let sech = pe.cosh().recip();
    let th = pe.tanh();
    let sec = (T::PI() * xi).cos().recip();
    Ok((sech * sech + sec * sec * th * th).sqrt())
}

/// Parameters of one norm computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormParams<T> {
    pub xi: T,
    pub eta: T,
    pub parity: Parity,
    pub mu: i64,
    pub nu: i64,
}

/// A closed-form value next to an independent oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormReport<T> {
    pub params: NormParams<T>,
    pub closed_form: T,
    pub oracle: Option<T>,
    pub abs_defect: T,
    pub rel_defect: T,
}

impl<T: Real> NormReport<T> {
    pub fn new(params: NormParams<T>, closed_form: T, oracle: Option<T>) -> Self {
        let abs_defect = oracle.map_or(T::zero(), |o| (closed_form - o).abs());
        let rel_defect = if closed_form == T::zero() { abs_defect } else { abs_defect / closed_form.abs() };
        Self { params, closed_form, oracle, abs_defect, rel_defect }
    }
}

/// Closed form against the Parseval oracle with `terms` series terms.
pub fn jnorm_report<T: Real>(xi: T, eta: T, parity: Parity, mu: i64, terms: u32) -> Result<NormReport<T>> {
    let closed = jnorm_sq_closed(xi, eta, mu)?;
    let series = jnorm_sq_series(xi, eta, parity, mu, terms)?;
    Ok(NormReport::new(NormParams { xi, eta, parity, mu, nu: mu }, closed, Some(series.value)))
}

/// One row of the cb-norm table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow<T> {
    pub params: NormParams<T>,
    /// Exact norm, diagonal rows only.
    pub cb_exact: Option<T>,
    pub cb_upper: T,
    pub sec_bound: T,
    /// Reference value for `eps = 0, mu = nu = 0`.
    pub steenstrup: Option<T>,
    /// `cb_upper / ((|mu| + 1)/(|nu| + 1))^xi`, the empirical off-diagonal constant.
    pub constant_ratio: T,
    /// Diagonal: `cb_exact <= sec + 1e-9` for `eps = 0`, finite for `eps = 1`.
    /// Off-diagonal: `cb_upper` finite.
    pub within_bound: bool,
}

/// Slack allowed above `sec(pi xi)` on diagonal rows.
pub const BOUND_SLACK: f64 = 1e-9;

pub fn sweep_row<T: Real>(xi: T, eta: T, parity: Parity, mu: i64, nu: i64) -> Result<SweepRow<T>> {
    let zeta = Complex::new(xi, eta);
    let upper = cb_upper(zeta, parity, mu, nu)?;
    let sec = sec_bound(xi);
    let cb_exact = if mu == nu { Some(cb_exact_diag(zeta, parity, mu)?) } else { None };
    let steen = if parity == Parity::Even && mu == 0 && nu == 0 { Some(steenstrup(xi, eta)?) } else { None };
    let weight_ratio = int::<T>(mu.abs() + 1) / int::<T>(nu.abs() + 1);
    let within_bound = match (cb_exact, parity) {
        (Some(v), Parity::Even) => v <= sec + lit(BOUND_SLACK),
        (Some(v), Parity::Odd) => v.is_finite(),
        (None, _) => upper.is_finite(),
    };
    Ok(SweepRow {
        params: NormParams { xi, eta, parity, mu, nu },
        cb_exact,
        cb_upper: upper,
        sec_bound: sec,
        steenstrup: steen,
        constant_ratio: upper / weight_ratio.powf(xi),
        within_bound,
    })
}

/// Diagonal rows over the grid, in `(xi, eta, mu)` order.
pub fn diagonal_sweep<T: Real>(xi_grid: &[T], eta_grid: &[T], mu_list: &[i64], parity: Parity) -> Result<Vec<SweepRow<T>>> {
    let mut rows = Vec::with_capacity(xi_grid.len() * eta_grid.len() * mu_list.len());
    for &xi in xi_grid {
        if !(xi.abs() < lit(0.5)) {
            return Err(domain(format!("xi = {} outside the strip", to_f64(xi))));
        }
        for &eta in eta_grid {
            for &mu in mu_list {
                rows.push(sweep_row(xi, eta, parity, mu, mu)?);
            }
        }
    }
    Ok(rows)
}
