//! Scalar constants of the intertwining operators and the Fourier
//! coefficients that feed the norm computations.

use num_complex::Complex;

use crate::cgamma::{gamma_ratio_half, ln_sin_pi, log_gamma, rgamma};
use crate::error::{domain, Result};
use crate::repn::Parity;
use crate::scalar::{int, lit, Real};

/// `(1 - eps) cos(kappa pi/2) + i eps sin(kappa pi/2)`, exact.
pub fn sigma<T: Real>(kappa: i64, parity: Parity) -> Complex<T> {
    let (one, zero) = (T::one(), T::zero());
    match (parity, kappa.rem_euclid(4)) {
        (Parity::Even, 0) => Complex::new(one, zero),
        (Parity::Even, 2) => Complex::new(-one, zero),
        (Parity::Odd, 1) => Complex::new(zero, one),
        (Parity::Odd, 3) => Complex::new(zero, -one),
        _ => Complex::new(zero, zero),
    }
}

fn i_pow<T: Real>(parity: Parity) -> Complex<T> {
    match parity {
        Parity::Even => Complex::from(T::one()),
        Parity::Odd => Complex::i(),
    }
}

fn pow2<T: Real>(z: Complex<T>) -> Complex<T> {
    (z * T::LN_2()).exp()
}

/// Normalising constant `c(zeta, eps) = i^eps sqrt(pi) 2^{-2 zeta} Gamma(eps/2 - zeta) / Gamma(1/2 + eps/2 + zeta)`.
pub fn c_norm<T: Real>(zeta: Complex<T>, parity: Parity) -> Result<Complex<T>> {
    let e = int::<T>(parity.as_i64()) * lit(0.5);
    let num = log_gamma(-zeta + e)?;
    let den = log_gamma(zeta + e + lit::<T>(0.5))?;
    Ok(i_pow::<T>(parity) * pow2(-(zeta + zeta)) * (num - den).exp() * T::PI().sqrt())
}

fn check_parity(parity: Parity, mu: i64) -> Result<()> {
    parity.check(mu)
}

/// Eigenvalue of the unnormalised intertwiner on weight `mu`, for `-1/2 < Re zeta < 0`.
pub fn b_eigen<T: Real>(zeta: Complex<T>, parity: Parity, mu: i64) -> Result<Complex<T>> {
    if !(zeta.re > lit(-0.5) && zeta.re < T::zero()) {
        return Err(domain(format!("need -1/2 < Re zeta < 0, got {}", zeta.re)));
    }
    check_parity(parity, mu)?;
    let half = lit::<T>(0.5);
    let m = int::<T>(mu) * half;
    let g = log_gamma(-(zeta + zeta))?.exp();
    let r = rgamma(-zeta + half + m) * rgamma(-zeta + half - m);
    Ok(sigma::<T>(mu, parity) * pow2(zeta + zeta + T::one()) * g * r * T::PI())
}

/// Closed form of [`crate::quadrature::singular_sine_integral`]:
/// `2 pi sigma(kappa, eps) 2^{-alpha} Gamma(alpha + 1) / (Gamma(1 + (alpha + kappa)/2) Gamma(1 + (alpha - kappa)/2))`
/// for `Re alpha > -1`.
pub fn sine_integral_closed<T: Real>(alpha: Complex<T>, parity: Parity, kappa: i64) -> Result<Complex<T>> {
    if !(alpha.re > -T::one()) {
        return Err(domain(format!("need Re alpha > -1, got {}", alpha.re)));
    }
    let s = sigma::<T>(kappa, parity);
    if s == Complex::from(T::zero()) {
        return Ok(s);
    }
    let half = lit::<T>(0.5);
    let k = int::<T>(kappa) * half;
    let one = Complex::from(T::one());
    let g = log_gamma(alpha + one)?.exp();
    let r = rgamma(one + alpha * half + k) * rgamma(one + alpha * half - k);
    Ok(s * pow2(-alpha) * g * r * (T::PI() + T::PI()))
}

/// Eigenvalue `d(zeta, eps, mu) = 2^{2 zeta} Gamma(1/2 + zeta + mu/2) / Gamma(1/2 - zeta + mu/2)`
/// of the normalised intertwiner.
///
/// At `zeta = 0` this is `1` except for odd negative `mu`, where the
/// continuous value is `-1`.
pub fn d_eigen<T: Real>(zeta: Complex<T>, parity: Parity, mu: i64) -> Result<Complex<T>> {
    if !(zeta.re.abs() < lit(0.5)) {
        return Err(domain(format!("need |Re zeta| < 1/2, got {}", zeta.re)));
    }
    check_parity(parity, mu)?;
    Ok(pow2(zeta + zeta) * gamma_ratio_half(zeta, mu)?)
}

/// `sigma`, `b`, `c` and `d` for one `(zeta, eps, mu)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntertwineConstants<T> {
    pub sigma: Complex<T>,
    pub b: Complex<T>,
    pub c: Complex<T>,
    pub d: Complex<T>,
}

impl<T: Real> IntertwineConstants<T> {
    pub fn compute(zeta: Complex<T>, parity: Parity, mu: i64) -> Result<Self> {
        Ok(Self {
            sigma: sigma(mu, parity),
            b: b_eigen(zeta, parity, mu)?,
            c: c_norm(zeta, parity)?,
            d: d_eigen(zeta, parity, mu)?,
        })
    }

    /// `|b - c d| / |b|`.
    pub fn chain_defect(&self) -> T {
        (self.b - self.c * self.d).norm() / self.b.norm()
    }
}

fn check_xi<T: Real>(xi: T) -> Result<()> {
    if xi > lit(-0.5) && xi < T::zero() {
        Ok(())
    } else {
        Err(domain(format!("need -1/2 < xi < 0, got {xi}")))
    }
}

/// Fourier coefficient of `|sin|^{-1-2 xi} / (2 pi)`:
/// `pi^{-1/2} Gamma(-xi) / Gamma(1/2 + xi) * Gamma(1/2 + xi + kappa/2) / Gamma(1/2 - xi + kappa/2)`
/// for even `kappa`, zero for odd.
pub fn h_tilde<T: Real>(xi: T, kappa: i64) -> Result<T> {
    check_xi(xi)?;
    if kappa.rem_euclid(2) == 1 {
        return Ok(T::zero());
    }
    let x = Complex::from(xi);
    let pre = (log_gamma(-x)? - log_gamma(x + lit::<T>(0.5))?).exp().re;
    let ratio = gamma_ratio_half(x, kappa)?.re;
    Ok(pre * ratio / T::PI().sqrt())
}

/// The same coefficient from the unsimplified form
/// `2^{1+2 xi} cos(kappa pi/2) Gamma(-2 xi) / (Gamma(1/2 - xi + kappa/2) Gamma(1/2 - xi - kappa/2))`,
/// which is `b(xi, kappa) / pi`.
pub fn h_tilde_unsimplified<T: Real>(xi: T, kappa: i64) -> Result<T> {
    check_xi(xi)?;
    let x = Complex::from(xi);
    let half = lit::<T>(0.5);
    let k = int::<T>(kappa) * half;
    let v = sigma::<T>(kappa, Parity::Even)
        * pow2(x + x + T::one())
        * log_gamma(-(x + x))?.exp()
        * rgamma(-x + half + k)
        * rgamma(-x + half - k);
    Ok(v.re)
}

/// Fourier coefficient `m~(kappa)` of the unimodular factor, `kappa` even:
/// `2^{2 i eta} Gamma(1 - 2 i eta) / (Gamma(1 - i eta + n) Gamma(1 - i eta - n))`, `n = (kappa - mu)/2`.
///
/// Evaluated in log space through reflection so large `eta` and `|kappa|`
/// neither overflow nor lose the sine factor.
pub fn m_tilde<T: Real>(parity: Parity, mu: i64, eta: T, kappa: i64) -> Result<Complex<T>> {
    parity.check(mu)?;
    if kappa.rem_euclid(2) != 0 {
        return Err(domain(format!("kappa must be even, got {kappa}")));
    }
    let twice_n = (kappa - mu).abs();
    let n = int::<T>(twice_n) * lit(0.5);
    let ie = Complex::new(T::zero(), eta);
    let one = Complex::from(T::one());
    if eta == T::zero() {
        if twice_n == 0 {
            return Ok(one);
        }
        if twice_n % 2 == 0 {
            return Ok(Complex::from(T::zero()));
        }
        // sin(pi n) / (pi n) at half-integer n
        let s = if (twice_n / 2) % 2 == 0 { T::one() } else { -T::one() };
        return Ok(Complex::from(s / (T::PI() * n)));
    }
    let base = ie * (T::LN_2() + T::LN_2()) + log_gamma(one - ie - ie)?;
    let ln = if twice_n == 0 {
        base - log_gamma(one - ie)? - log_gamma(one - ie)?
    } else {
        // 1/Gamma(1 - w) = sin(pi w) Gamma(w) / pi with w = i eta + n
        let w = ie + n;
        base + ln_sin_pi(w) + log_gamma(w)? - log_gamma(one - ie + n)? - T::PI().ln()
    };
    Ok(ln.exp())
}

/// `|sin(pi(i eta - mu/2))|^2 / (sinh(pi eta) cosh(pi eta))`: `tanh(pi eta)` for
/// even `mu`, `coth(pi eta)` for odd.
pub fn gamma_factor<T: Real>(eta: T, mu: i64) -> Result<T> {
    if eta == T::zero() || !eta.is_finite() {
        return Err(domain(format!("gamma factor needs finite nonzero eta, got {eta}")));
    }
    let odd = mu.rem_euclid(2) == 1;
    let x = T::PI() * eta;
    if eta.abs() <= lit(5.0) {
        let sh = x.sinh();
        let num = if odd { T::one() + sh * sh } else { sh * sh };
        return Ok(num / (sh * x.cosh()));
    }
    // tanh(x) + [odd] 2 / sinh(2x), with sinh written via e^{-2|x|}
    let e = (-(x.abs() + x.abs())).exp();
    let extra = if odd { lit::<T>(4.0) * e / (T::one() - e * e) * x.signum() } else { T::zero() };
    Ok(x.tanh() + extra)
}

/// The coefficient families for one `(xi, eta, eps, mu)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierCoefficients<T> {
    pub xi: T,
    pub eta: T,
    pub parity: Parity,
    pub mu: i64,
}

impl<T: Real> FourierCoefficients<T> {
    pub fn new(xi: T, eta: T, parity: Parity, mu: i64) -> Result<Self> {
        check_xi(xi)?;
        parity.check(mu)?;
        Ok(Self { xi, eta, parity, mu })
    }

    pub fn h_tilde(&self, kappa: i64) -> Result<T> {
        h_tilde(self.xi, kappa)
    }

    pub fn m_tilde(&self, kappa: i64) -> Result<Complex<T>> {
        m_tilde(self.parity, self.mu, self.eta, kappa)
    }

    pub fn gamma_factor(&self) -> Result<T> {
        gamma_factor(self.eta, self.mu)
    }
}
