//! Deterministic integration kernels.
//!
//! Smooth periodic integrands use the trapezoid rule with node doubling.
//! Integrals against `|sin|^alpha` use a tanh-sinh (double exponential)
//! rule on `[0, pi]`, evaluated in log space so that endpoint weights never
//! underflow, plus an analytic correction for the truncated endpoint tails.

use num_complex::Complex;

use crate::error::{domain, Error, Result};
use crate::repn::Parity;
use crate::scalar::{int, lit, to_f64, Real};

/// Node-count and tolerance policy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec<T> {
    pub initial_nodes: usize,
    pub tolerance: T,
    pub max_doublings: u32,
}

impl<T: Real> QuadratureSpec<T> {
    pub fn new(initial_nodes: usize, tolerance: T, max_doublings: u32) -> Result<Self> {
        let spec = Self { initial_nodes, tolerance, max_doublings };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.initial_nodes < 16 || !self.initial_nodes.is_power_of_two() {
            return Err(domain(format!(
                "initial_nodes must be a power of two >= 16, got {}",
                self.initial_nodes
            )));
        }
        if !(self.tolerance >= lit(1e-14)) {
            return Err(domain(format!("tolerance must be >= 1e-14, got {}", self.tolerance)));
        }
        if self.max_doublings == 0 {
            return Err(domain("max_doublings must be positive"));
        }
        Ok(())
    }

    fn converged(&self, new: Complex<T>, old: Complex<T>) -> bool {
        (new - old).norm() < self.tolerance * (T::one() + new.norm())
    }
}

impl<T: Real> Default for QuadratureSpec<T> {
    fn default() -> Self {
        Self { initial_nodes: 64, tolerance: lit(1e-10), max_doublings: 14 }
    }
}

/// Trapezoid rule for a 2pi-periodic integrand over `[-pi, pi)`.
pub fn periodic_integral<T, F>(f: F, spec: &QuadratureSpec<T>) -> Result<Complex<T>>
where
    T: Real,
    F: Fn(T) -> Complex<T>,
{
    spec.validate()?;
    let two_pi = T::PI() + T::PI();
    let mut n = spec.initial_nodes;
    let mut sum = Complex::from(T::zero());
    for j in 0..n {
        sum = sum + f(-T::PI() + two_pi * int::<T>(j as i64) / int::<T>(n as i64));
    }
    let mut estimate = sum * (two_pi / int::<T>(n as i64));
    let mut last_change = T::infinity();
    for _ in 0..spec.max_doublings {
        let h = two_pi / int::<T>(n as i64);
        let mut mid = Complex::from(T::zero());
        for j in 0..n {
            mid = mid + f(-T::PI() + h * (int::<T>(j as i64) + lit(0.5)));
        }
        sum = sum + mid;
        n *= 2;
        let next = sum * (two_pi / int::<T>(n as i64));
        if spec.converged(next, estimate) {
            return Ok(next);
        }
        last_change = (next - estimate).norm();
        estimate = next;
    }
    Err(Error::NoConvergence { doublings: spec.max_doublings, last_change: to_f64(last_change) })
}

/// Smallest abscissa cutoff of the tanh-sinh rule.  The cutoff grows as
/// `Re alpha -> -1` so that the truncated integrand is below `e^-45`.
const T_MAX_MIN: f64 = 6.5;

/// One tanh-sinh node on `[0, pi]` folded onto its mirror image.
///
/// Returns `(delta, ln(delta), ln(weight))` where `delta` is the distance of
/// both nodes `delta` and `pi - delta` to the nearest endpoint.
fn tanh_sinh_node<T: Real>(t: T) -> (T, T, T) {
    let pi = T::PI();
    let half_pi = T::FRAC_PI_2();
    let sh = t.sinh();
    let x = pi * sh;
    // delta = pi / (1 + e^x); ln(1 + e^x) = x + ln(1 + e^-x)
    let ln_one_plus = x + (-x).exp().ln_1p();
    let ln_delta = pi.ln() - ln_one_plus;
    let delta = ln_delta.exp();
    // weight = (pi/2) (pi/2) cosh(t) sech^2(u), u = (pi/2) sinh t
    let u = half_pi * sh;
    let ln_sech = -u + T::LN_2() - (-(u + u)).exp().ln_1p();
    let ln_w = (half_pi * half_pi * t.cosh()).ln() + ln_sech + ln_sech;
    (delta, ln_delta, ln_w)
}

/// `ln sin(delta)` for `0 < delta <= pi/2`, accurate at tiny `delta`.
fn ln_sin_small<T: Real>(delta: T, ln_delta: T) -> T {
    if delta < lit(1e-4) {
        // sin d / d = 1 - d^2/6 + ...
        ln_delta + (-delta * delta / lit(6.0)).ln_1p()
    } else {
        delta.sin().ln()
    }
}

/// `int_0^pi sin(theta)^alpha g(theta) dtheta` for smooth `g`, `Re alpha > -1`.
pub fn sine_power_integral<T, G>(alpha: Complex<T>, g: G, spec: &QuadratureSpec<T>) -> Result<Complex<T>>
where
    T: Real,
    G: Fn(T) -> Complex<T>,
{
    spec.validate()?;
    if !(alpha.re > -T::one()) {
        return Err(domain(format!("need Re alpha > -1, got {}", alpha.re)));
    }
    let pi = T::PI();
    let decay = lit::<T>(45.0) / (T::PI() * (alpha.re + T::one()));
    let t_max = lit::<T>(T_MAX_MIN).max(decay.asinh());
    // symmetric pair at +-t: nodes delta and pi - delta
    let pair = |t: T| -> Complex<T> {
        let (delta, ln_delta, ln_w) = tanh_sinh_node(t);
        let ln_s = ln_sin_small(delta, ln_delta);
        let mag = (alpha * ln_s + ln_w).exp();
        mag * (g(delta) + g(pi - delta))
    };
    let (_, ln_d_end, _) = tanh_sinh_node(t_max);
    // int_0^d s^alpha ds at each end, with g frozen at the endpoint
    let a1 = alpha + T::one();
    let tail = ((a1 * ln_d_end).exp() / a1) * (g(T::zero()) + g(pi));

    let mut h = t_max / int::<T>((spec.initial_nodes / 2) as i64);
    let (_, ln_d0, ln_w0) = tanh_sinh_node(T::zero());
    let centre = (alpha * ln_d0.exp().sin().ln() + ln_w0).exp() * g(T::FRAC_PI_2());
    let mut sum = centre;
    let mut steps = spec.initial_nodes / 2;
    for j in 1..=steps {
        sum = sum + pair(h * int::<T>(j as i64));
    }
    let mut estimate = sum * h + tail;
    let mut last_change = T::infinity();
    for _ in 0..spec.max_doublings {
        h = h / lit(2.0);
        for j in 0..steps {
            sum = sum + pair(h * int::<T>(2 * j as i64 + 1));
        }
        steps *= 2;
        let next = sum * h + tail;
        if spec.converged(next, estimate) {
            return Ok(next);
        }
        last_change = (next - estimate).norm();
        estimate = next;
    }
    Err(Error::NoConvergence { doublings: spec.max_doublings, last_change: to_f64(last_change) })
}

/// `int_{-pi}^{pi} e^{i kappa theta} sgn(sin theta)^eps |sin theta|^alpha dtheta`.
///
/// The integrand on `[-pi, 0]` is folded onto `[0, pi]`; the result vanishes
/// identically when `kappa + eps` is odd and is returned as an exact zero.
pub fn singular_sine_integral<T: Real>(
    alpha: Complex<T>,
    parity: Parity,
    kappa: i64,
    spec: &QuadratureSpec<T>,
) -> Result<Complex<T>> {
    if !(alpha.re > -T::one()) {
        return Err(domain(format!("need Re alpha > -1, got {}", alpha.re)));
    }
    spec.validate()?;
    if (kappa + parity.as_i64()).rem_euclid(2) == 1 {
        return Ok(Complex::from(T::zero()));
    }
    let k = int::<T>(kappa);
    let two = lit::<T>(2.0);
    match parity {
        Parity::Even => sine_power_integral(alpha, |th| Complex::from(two * (k * th).cos()), spec),
        Parity::Odd => sine_power_integral(alpha, |th| Complex::new(T::zero(), two * (k * th).sin()), spec),
    }
}

/// Oracle for the intertwiner eigenvalue on weight `mu`.
///
/// The double integral over the torus of
/// `e^{i mu theta} e^{-i mu phi} sgn(sin(theta - phi))^eps |sin(theta - phi)|^{-1-2 zeta}`
/// divided by `4 pi` collapses, with `psi = theta - phi`, to half of
/// [`singular_sine_integral`] at `alpha = -1 - 2 zeta`, `kappa = mu`.
pub fn b_double_integral<T: Real>(
    zeta: Complex<T>,
    parity: Parity,
    mu: i64,
    spec: &QuadratureSpec<T>,
) -> Result<Complex<T>> {
    if !(zeta.re > lit(-0.5) && zeta.re < T::zero()) {
        return Err(domain(format!("need -1/2 < Re zeta < 0, got {}", zeta.re)));
    }
    let alpha = -(zeta + zeta) - T::one();
    Ok(singular_sine_integral(alpha, parity, mu, spec)? * lit::<T>(0.5))
}

/// Richardson extrapolation of partial sums with a known algebraic tail.
///
/// Fits `S(K) = S + sum_j c_j K^{-p_j}` through the given `(K, S(K))` pairs
/// (one more pair than exponents) and returns `S`.
pub fn richardson<T: Real>(ks: &[T], sums: &[Complex<T>], exponents: &[Complex<T>]) -> Result<Complex<T>> {
    let n = ks.len();
    if sums.len() != n || exponents.len() + 1 != n {
        return Err(domain("richardson needs one more sample than exponents"));
    }
    let mut m: Vec<Vec<Complex<T>>> = ks
        .iter()
        .zip(sums)
        .map(|(&k, &s)| {
            let mut row = vec![Complex::from(T::one())];
            let lk = k.ln();
            row.extend(exponents.iter().map(|&p| (-p * lk).exp()));
            row.push(s);
            row
        })
        .collect();
    // Gaussian elimination with partial pivoting on the augmented matrix.
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[i][col].norm().partial_cmp(&m[j][col].norm()).unwrap_or(std::cmp::Ordering::Equal))
            .unwrap_or(col);
        m.swap(col, piv);
        let p = m[col][col];
        if p.norm() == T::zero() {
            return Err(Error::Consistency("singular extrapolation system".into()));
        }
        let (top, rest) = m.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in rest.iter_mut() {
            let f = row[col] / p;
            for (dst, &src) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *dst = *dst - f * src;
            }
        }
    }
    let mut x = vec![Complex::from(T::zero()); n];
    for r in (0..n).rev() {
        let mut acc = m[r][n];
        for c in r + 1..n {
            acc = acc - m[r][c] * x[c];
        }
        x[r] = acc / m[r][r];
    }
    Ok(x[0])
}
