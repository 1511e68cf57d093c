//! Complex gamma, digamma and the gamma-ratio toolkit.
//!
//! The backbone is a Lanczos approximation (g = 607/128, 15 terms) on
//! `Re z >= 1/2`, extended to the left half-plane by reflection.  The
//! logarithm of `sin(pi z)` used by the reflection is computed from
//! `exp(2 pi i z)` on the side where that exponential is bounded, so large
//! imaginary parts never overflow.

use num_complex::Complex;

use crate::error::{Error, PoleSite, Result};
use crate::scalar::{int, lit, to_f64, Real};

/// Distance to a nonpositive integer below which an argument counts as a pole.
pub const POLE_THRESHOLD: f64 = 1e-9;

const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_8e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_6e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];

/// Bernoulli numbers B_2 .. B_14 for the digamma asymptotic series.
const BERNOULLI: [f64; 7] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
];

fn pole_error<T: Real>(site: PoleSite, z: Complex<T>) -> Error {
    Error::Pole { site, re: to_f64(z.re), im: to_f64(z.im) }
}

/// True when `z` lies within [`POLE_THRESHOLD`] of `0, -1, -2, ...`.
pub fn is_pole<T: Real>(z: Complex<T>) -> bool {
    let n = z.re.round();
    n <= T::zero() && (z - n).norm() < lit(POLE_THRESHOLD)
}

/// `ln Gamma(z)` for `Re z >= 1/2`.
fn lanczos_ln_gamma<T: Real>(z: Complex<T>) -> Complex<T> {
    let half = lit::<T>(0.5);
    let mut ser = Complex::from(lit::<T>(LANCZOS[0]));
    for (j, &c) in LANCZOS.iter().enumerate().skip(1) {
        ser = ser + Complex::from(lit::<T>(c)) / (z + int::<T>(j as i64));
    }
    let tmp = z + lit::<T>(LANCZOS_G) + half;
    let sqrt_2pi = (T::PI() + T::PI()).sqrt();
    (z + half) * tmp.ln() - tmp + (ser * sqrt_2pi).ln() - z.ln()
}

/// `ln sin(pi z)` on a branch that is continuous off the real axis.
///
/// Uses `sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 pi i z})` for `Im z >= 0` and
/// conjugation otherwise.  Returns `-inf` real part at integers.
pub(crate) fn ln_sin_pi<T: Real>(z: Complex<T>) -> Complex<T> {
    if z.im < T::zero() {
        return ln_sin_pi(z.conj()).conj();
    }
    let pi = T::PI();
    let reduced = Complex::new(z.re - z.re.round(), z.im);
    let e = (Complex::<T>::i() * reduced * (pi + pi)).exp();
    let one = Complex::from(T::one());
    Complex::new(-T::LN_2(), T::FRAC_PI_2()) - Complex::<T>::i() * z * pi + (one - e).ln()
}

/// `pi cot(pi z)`, overflow-safe for large `|Im z|`.
fn pi_cot_pi<T: Real>(z: Complex<T>) -> Complex<T> {
    if z.im < T::zero() {
        return pi_cot_pi(z.conj()).conj();
    }
    let pi = T::PI();
    let reduced = Complex::new(z.re - z.re.round(), z.im);
    let e = (Complex::<T>::i() * reduced * (pi + pi)).exp();
    let one = Complex::from(T::one());
    Complex::<T>::i() * (e + one) / (e - one) * pi
}

/// Logarithm of the gamma function.
///
/// The imaginary part follows the usual continuous branch on `Re z >= 1/2`
/// and the reflection branch to the left; only `exp` of the result is
/// canonical.
pub fn log_gamma<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    if is_pole(z) {
        return Err(pole_error(PoleSite::Gamma, z));
    }
    if z.re >= lit(0.5) {
        return Ok(lanczos_ln_gamma(z));
    }
    let one = Complex::from(T::one());
    Ok(Complex::from(T::PI().ln()) - ln_sin_pi(z) - lanczos_ln_gamma(one - z))
}

pub fn gamma<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    log_gamma(z).map(Complex::exp)
}

/// `1/Gamma(z)`, exactly zero at the poles of `Gamma`.
pub fn rgamma<T: Real>(z: Complex<T>) -> Complex<T> {
    match log_gamma(z) {
        Ok(l) => (-l).exp(),
        Err(_) => Complex::from(T::zero()),
    }
}

pub fn digamma<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    if is_pole(z) {
        return Err(pole_error(PoleSite::Gamma, z));
    }
    let one = Complex::from(T::one());
    if z.re < lit(0.5) {
        return Ok(digamma(one - z)? - pi_cot_pi(z));
    }
    let mut w = z;
    let mut acc = Complex::from(T::zero());
    while w.norm() < lit(10.0) {
        acc = acc - one / w;
        w = w + one;
    }
    let w2inv = one / (w * w);
    let mut pow = w2inv;
    let mut series = Complex::from(T::zero());
    for (k, &b) in BERNOULLI.iter().enumerate() {
        let two_k = int::<T>(2 * (k as i64 + 1));
        series = series + pow * (lit::<T>(b) / two_k);
        pow = pow * w2inv;
    }
    Ok(acc + w.ln() - one / (w + w) - series)
}

/// `Gamma(1/2 + z + k/2) / Gamma(1/2 - z + k/2)` via log-gamma differences.
///
/// Negative `k` is folded onto `|k|` with the exact identity
/// `ratio(z, k) = (-1)^k ratio(z, -k)`, which also resolves the removable
/// singularity at `z = 0` for odd negative `k` (the limit there is `-1`).
pub fn gamma_ratio_half<T: Real>(z: Complex<T>, k: i64) -> Result<Complex<T>> {
    if k < 0 {
        let r = gamma_ratio_half(z, -k)?;
        return Ok(if k % 2 == 0 { r } else { -r });
    }
    if z.re == T::zero() && z.im == T::zero() {
        return Ok(Complex::from(T::one()));
    }
    let base = lit::<T>(0.5) + int::<T>(k) * lit(0.5);
    let num = z + base;
    let den = -z + base;
    let ln_num = log_gamma(num).map_err(|_| pole_error(PoleSite::Numerator, num))?;
    let ln_den = log_gamma(den).map_err(|_| pole_error(PoleSite::Denominator, den))?;
    Ok((ln_num - ln_den).exp())
}

/// Parameters of the bilateral sum `sum_k Gamma(a+k)Gamma(b+k) / (Gamma(c+k)Gamma(d+k))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DougallParams<T> {
    pub a: Complex<T>,
    pub b: Complex<T>,
    pub c: Complex<T>,
    pub d: Complex<T>,
}

impl<T: Real> DougallParams<T> {
    pub fn new(a: Complex<T>, b: Complex<T>, c: Complex<T>, d: Complex<T>) -> Result<Self> {
        let p = Self { a, b, c, d };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("a", self.a), ("b", self.b)] {
            if (v - v.re.round()).norm() <= lit(POLE_THRESHOLD) {
                return Err(crate::error::domain(format!("{name} must not be an integer")));
            }
        }
        if (self.a + self.b - self.c - self.d).re >= -T::one() {
            return Err(crate::error::domain("need Re(a + b - c - d) < -1"));
        }
        Ok(())
    }

    /// Exponent `p` with tail `sum_{|k| > K} ~ K^{-p}`.
    pub fn tail_exponent(&self) -> Complex<T> {
        self.c + self.d - self.a - self.b - T::one()
    }
}

/// Closed form of the bilateral sum.
pub fn dougall_closed<T: Real>(p: &DougallParams<T>) -> Result<Complex<T>> {
    p.validate()?;
    let one = Complex::from(T::one());
    let top = p.c + p.d - p.a - p.b - one;
    let ln_top = log_gamma(top).map_err(|_| pole_error(PoleSite::Numerator, top))?;
    let mut ln = Complex::from(lit::<T>(2.0) * T::PI().ln()) - ln_sin_pi(p.a) - ln_sin_pi(p.b)
        + ln_top;
    for w in [p.c - p.a, p.d - p.a, p.c - p.b, p.d - p.b] {
        match log_gamma(w) {
            Ok(l) => ln = ln - l,
            Err(_) => return Ok(Complex::from(T::zero())),
        }
    }
    Ok(ln.exp())
}

fn dougall_term<T: Real>(p: &DougallParams<T>, k: i64) -> Complex<T> {
    let kk = int::<T>(k);
    let (c, d) = (p.c + kk, p.d + kk);
    if is_pole(c) || is_pole(d) {
        return Complex::from(T::zero());
    }
    // a + k and b + k are never poles: a, b are validated off the integers.
    let ln = ln_gamma_or_zero_exp(p.a + kk) + ln_gamma_or_zero_exp(p.b + kk)
        - ln_gamma_or_zero_exp(c)
        - ln_gamma_or_zero_exp(d);
    ln.exp()
}

fn ln_gamma_or_zero_exp<T: Real>(z: Complex<T>) -> Complex<T> {
    log_gamma(z).unwrap_or_else(|_| Complex::new(T::neg_infinity(), T::zero()))
}

/// Truncated bilateral sum over `k = -K ..= K`.
pub fn dougall_series<T: Real>(p: &DougallParams<T>, terms: u32) -> Result<Complex<T>> {
    p.validate()?;
    Ok(dougall_partial_sums(p, &[terms])[0])
}

/// Partial sums of the bilateral series at each requested truncation, in one pass.
pub fn dougall_partial_sums<T: Real>(p: &DougallParams<T>, cutoffs: &[u32]) -> Vec<Complex<T>> {
    let max = cutoffs.iter().copied().max().unwrap_or(0) as i64;
    let mut running = dougall_term(p, 0);
    let mut at = vec![Complex::from(T::zero()); max as usize + 1];
    at[0] = running;
    for k in 1..=max {
        running = running + dougall_term(p, k) + dougall_term(p, -k);
        at[k as usize] = running;
    }
    cutoffs.iter().map(|&k| at[k as usize]).collect()
}

/// Series value with the algebraic tail removed by Richardson extrapolation.
pub fn dougall_series_extrapolated<T: Real>(
    p: &DougallParams<T>,
    terms: u32,
) -> Result<Complex<T>> {
    p.validate()?;
    let cutoffs = [terms / 8, terms / 4, terms / 2, terms];
    if terms < 64 {
        return dougall_series(p, terms);
    }
    let sums = dougall_partial_sums(p, &cutoffs);
    let e = p.tail_exponent();
    let one = Complex::from(T::one());
    let exps = [e, e + one, e + one + one];
    let ks: Vec<T> = cutoffs.iter().map(|&k| int(k as i64)).collect();
    crate::quadrature::richardson(&ks, &sums, &exps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn log_gamma_trivial_values() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-15);
        assert_relative_eq!(log_gamma(c(0.5, 0.0)).unwrap().re, 0.5723649429247001, epsilon = 1e-14);
        assert_relative_eq!(gamma(c(0.5, 0.0)).unwrap().re, 1.7724538509055159, epsilon = 1e-14);
    }

    #[test]
    fn gamma_integers_and_negative_axis() {
        let mut f = 1.0;
        for n in 1..20 {
            let g = gamma(c(n as f64, 0.0)).unwrap();
            assert_relative_eq!(g.re, f, max_relative = 1e-13);
            assert!(g.im.abs() < 1e-13 * f);
            f *= n as f64;
        }
        // Gamma(-1/2) = -2 sqrt(pi)
        let g = gamma(c(-0.5, 0.0)).unwrap();
        assert_relative_eq!(g.re, -3.5449077018110318, max_relative = 1e-13);
        assert!(g.im.abs() < 1e-13);
        // Gamma(-3.5) = 16 sqrt(pi) / 105
        let g = gamma(c(-3.5, 0.0)).unwrap();
        assert_relative_eq!(g.re, 0.2700882058522691, max_relative = 1e-13);
    }

    #[test]
    fn poles_are_reported() {
        for n in 0..5 {
            assert!(matches!(
                log_gamma(c(-(n as f64), 0.0)),
                Err(Error::Pole { site: PoleSite::Gamma, .. })
            ));
        }
        assert!(log_gamma(c(-2.0 + 1e-6, 0.0)).is_ok());
        assert_eq!(rgamma(c(-3.0, 0.0)), C::new(0.0, 0.0));
    }

    #[test]
    fn large_imaginary_part_does_not_overflow() {
        let l = log_gamma(c(0.3, 300.0)).unwrap();
        assert!(l.re.is_finite() && l.im.is_finite());
        let l = log_gamma(c(-4.7, -300.0)).unwrap();
        assert!(l.re.is_finite() && l.im.is_finite());
        // |Gamma(1/2 + iy)|^2 = pi / cosh(pi y)
        let y = 40.0f64;
        let m = log_gamma(c(0.5, y)).unwrap().re * 2.0;
        let expect = std::f64::consts::PI.ln() - (std::f64::consts::PI * y) + std::f64::consts::LN_2
            - (1.0 + (-2.0 * std::f64::consts::PI * y).exp()).ln();
        assert_relative_eq!(m, expect, max_relative = 1e-13);
    }

    #[test]
    fn reflection_example() {
        let lhs = gamma(c(0.3, 0.0)).unwrap() * gamma(c(0.7, 0.0)).unwrap();
        assert_relative_eq!(lhs.re, 3.8832220774509327, max_relative = 1e-13);
    }

    #[test]
    fn duplication_example() {
        let lhs = gamma(c(1.3, 0.0)).unwrap() * gamma(c(0.8, 0.0)).unwrap();
        let rhs = gamma(c(1.6, 0.0)).unwrap() * 2f64.powf(1.0 - 1.6) * std::f64::consts::PI.sqrt();
        assert_relative_eq!(lhs.re, rhs.re, max_relative = 1e-13);
    }

    #[test]
    fn digamma_values() {
        assert_relative_eq!(digamma(c(1.0, 0.0)).unwrap().re, -0.5772156649015329, epsilon = 1e-14);
        assert_relative_eq!(digamma(c(2.0, 0.0)).unwrap().re, 0.42278433509846713, epsilon = 1e-14);
        assert_relative_eq!(digamma(c(0.5, 0.0)).unwrap().re, -1.9635100260214235, epsilon = 1e-14);
        // psi(-1/2) = psi(1/2) + 2
        assert_relative_eq!(digamma(c(-0.5, 0.0)).unwrap().re, 0.03648997397857652, epsilon = 1e-13);
        // Im psi(1/2 + iy) = (pi/2) tanh(pi y)
        let y = 1.3;
        assert_relative_eq!(
            digamma(c(0.5, y)).unwrap().im,
            std::f64::consts::FRAC_PI_2 * (std::f64::consts::PI * y).tanh(),
            epsilon = 1e-14
        );
        assert!(digamma(c(-2.0, 0.0)).is_err());
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(gamma_ratio_half(c(0.0, 0.0), 7).unwrap(), C::new(1.0, 0.0));
        assert_relative_eq!(gamma_ratio_half(c(-0.25, 0.0), 0).unwrap().re, 2.958675119, epsilon = 1e-8);
        let z = c(-0.25, 1.0);
        let d = gamma_ratio_half(z, 6).unwrap() - gamma_ratio_half(z, -6).unwrap();
        assert!(d.norm() < 1e-13 * gamma_ratio_half(z, 6).unwrap().norm());
        // removable singularity: Gamma(z)/Gamma(-z) -> -1 as z -> 0
        let r = gamma_ratio_half(c(1e-7, 0.0), -1).unwrap();
        assert_relative_eq!(r.re, -1.0, epsilon = 1e-6);
    }

    #[test]
    fn ratio_pole_sites() {
        // numerator 1/2 + z = 0
        assert!(matches!(
            gamma_ratio_half(c(-0.5, 0.0), 0),
            Err(Error::Pole { site: PoleSite::Numerator, .. })
        ));
        assert!(matches!(
            gamma_ratio_half(c(1.5, 0.0), 0),
            Err(Error::Pole { site: PoleSite::Denominator, .. })
        ));
    }

    #[test]
    fn dougall_examples() {
        let h = c(0.5, 0.0);
        let two = c(2.0, 0.0);
        let p = DougallParams::new(h, h, two, two).unwrap();
        assert_relative_eq!(dougall_closed(&p).unwrap().re, 16.0, max_relative = 1e-13);
        let pi = std::f64::consts::PI;
        assert_relative_eq!(dougall_series(&p, 0).unwrap().re, pi, max_relative = 1e-14);
        assert_relative_eq!(dougall_series(&p, 1).unwrap().re, pi + 4.0 * pi + pi / 16.0, max_relative = 1e-14);
        assert_relative_eq!(dougall_series(&p, 10_000).unwrap().re, 16.0, max_relative = 1e-4);
        assert_relative_eq!(dougall_series_extrapolated(&p, 4000).unwrap().re, 16.0, max_relative = 1e-10);
    }

    #[test]
    fn dougall_rejects_bad_params() {
        let two = c(2.0, 0.0);
        assert!(DougallParams::new(c(1.0, 0.0), c(0.5, 0.0), two, two).is_err());
        assert!(DougallParams::new(c(0.5, 0.0), c(0.5, 0.0), c(1.0, 0.0), c(0.5, 0.0)).is_err());
    }

    #[test]
    fn f32_smoke() {
        let g = gamma(Complex::<f32>::new(4.0, 0.0)).unwrap();
        assert!((g.re - 6.0).abs() < 1e-4);
        let p = digamma(Complex::<f32>::new(1.0, 0.0)).unwrap();
        assert!((p.re + 0.5772157).abs() < 1e-5);
    }
}
