//! Principal-series weight vectors, the invariant pairing, and the pointwise
//! action in the compact picture.

use num_complex::Complex;

use crate::error::{domain, Error, Result};
use crate::quadrature::{periodic_integral, QuadratureSpec};
use crate::scalar::{int, lit, Real};
use crate::sl2::{mobius, wrap_angle, GroupElement, LinePoint};

/// The parity label `eps` in `{0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_u8(eps: u8) -> Result<Self> {
        match eps {
            0 => Ok(Parity::Even),
            1 => Ok(Parity::Odd),
            _ => Err(domain(format!("epsilon must be 0 or 1, got {eps}"))),
        }
    }

    /// Parity of an integer weight.
    pub fn of(mu: i64) -> Self {
        if mu.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn as_u8(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn as_i64(self) -> i64 {
        self.as_u8() as i64
    }

    /// Checks `mu = eps (mod 2)`.
    pub fn check(self, mu: i64) -> Result<()> {
        if Parity::of(mu) == self {
            Ok(())
        } else {
            Err(Error::Parity { weight: mu, epsilon: self.as_u8() })
        }
    }
}

/// A principal-series label `(zeta, eps)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralParam<T> {
    pub zeta: Complex<T>,
    pub parity: Parity,
}

impl<T: Real> SpectralParam<T> {
    pub fn new(zeta: Complex<T>, parity: Parity) -> Self {
        Self { zeta, parity }
    }

    /// The parameter with `zeta` negated, same parity.
    pub fn dual(&self) -> Self {
        Self { zeta: -self.zeta, parity: self.parity }
    }

    /// Requires `|Re zeta| < 1/2`.
    pub fn check_strip(&self) -> Result<()> {
        if self.zeta.re.abs() < lit(0.5) && self.zeta.im.is_finite() {
            Ok(())
        } else {
            Err(domain(format!("need |Re zeta| < 1/2, got {}", self.zeta.re)))
        }
    }
}

/// An integer weight; compatible with a [`SpectralParam`] when it has the same parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightIndex(pub i64);

impl WeightIndex {
    pub fn checked<T>(mu: i64, p: &SpectralParam<T>) -> Result<Self> {
        p.parity.check(mu)?;
        Ok(Self(mu))
    }
}

/// An angle normalised to `(-pi, pi]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct CirclePoint<T>(T);

impl<T: Real> CirclePoint<T> {
    pub fn new(theta: T) -> Self {
        Self(wrap_angle(theta))
    }

    pub fn angle(self) -> T {
        self.0
    }
}

fn inv_sqrt_pi<T: Real>() -> T {
    T::PI().sqrt().recip()
}

/// `f_{zeta,mu}` on the unit circle: `pi^{-1/2} e^{i mu theta}`.
pub fn basis_circle<T: Real>(p: &SpectralParam<T>, mu: WeightIndex, theta: CirclePoint<T>) -> Result<Complex<T>> {
    p.parity.check(mu.0)?;
    Ok(Complex::from_polar(inv_sqrt_pi(), int::<T>(mu.0) * theta.0))
}

/// `f_{zeta,mu}(1, t) = pi^{-1/2} (1 + i t)^{zeta - 1/2 + mu/2} (1 - i t)^{zeta - 1/2 - mu/2}`,
/// principal branches.
pub fn basis_line<T: Real>(p: &SpectralParam<T>, mu: WeightIndex, t: T) -> Result<Complex<T>> {
    p.parity.check(mu.0)?;
    let half = lit::<T>(0.5);
    let m = int::<T>(mu.0) * half;
    let lp = Complex::new(T::one(), t).ln();
    let lm = Complex::new(T::one(), -t).ln();
    let e = (p.zeta - half + m) * lp + (p.zeta - half - m) * lm;
    Ok(e.exp() * inv_sqrt_pi::<T>())
}

/// Pointwise action on the circle.
///
/// With `v = (cos theta, sin theta)` and `r = |v x|`, returns `r^{2 zeta - 1}`
/// and the angle of `v x`, so that
/// `(pi(x) f)(theta) = r^{2 zeta - 1} f(omega)` for `f` of parity `eps`.
pub fn act_point<T: Real>(p: &SpectralParam<T>, x: &GroupElement<T>, theta: CirclePoint<T>) -> (Complex<T>, CirclePoint<T>) {
    let (s, c) = theta.0.sin_cos();
    let [u, v] = x.apply_row([c, s]);
    let r = u.hypot(v);
    let factor = ((p.zeta + p.zeta - T::one()) * r.ln()).exp();
    (factor, CirclePoint::new(v.atan2(u)))
}

/// Pointwise action on the line: `sgn(a + t c)^eps |a + t c|^{2 zeta - 1}` and
/// the image point `x . t` under the right Mobius action.
///
/// With this ordering `(pi(x) pi(y) f)(t) = (pi(x y) f)(t)`.
pub fn act_line<T: Real>(p: &SpectralParam<T>, x: &GroupElement<T>, t: T) -> (Complex<T>, LinePoint<T>) {
    let lead = x.a + t * x.c;
    let mag = ((p.zeta + p.zeta - T::one()) * lead.abs().ln()).exp();
    let factor = if p.parity == Parity::Odd && lead < T::zero() { -mag } else { mag };
    (factor, mobius(x, LinePoint::Finite(t)))
}

/// `(pi(x) f_{zeta,mu})(theta)`.
pub fn act_basis<T: Real>(p: &SpectralParam<T>, x: &GroupElement<T>, mu: WeightIndex, theta: CirclePoint<T>) -> Result<Complex<T>> {
    let (factor, omega) = act_point(p, x, theta);
    Ok(factor * basis_circle(p, mu, omega)?)
}

/// The invariant pairing `(f, g) = (1/2) int_{-pi}^{pi} f g`.
pub fn pairing<T, F, G>(f: F, g: G, spec: &QuadratureSpec<T>) -> Result<Complex<T>>
where
    T: Real,
    F: Fn(T) -> Complex<T>,
    G: Fn(T) -> Complex<T>,
{
    Ok(periodic_integral(|t| f(t) * g(t), spec)? * lit::<T>(0.5))
}
