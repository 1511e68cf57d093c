//! SL(2,R) elements, one-parameter subgroups and their decompositions.
//!
//! Conventions: `k_t = [[cos t, sin t], [-sin t, cos t]]`, `a_s = diag(s, 1/s)`,
//! `nbar_t = [[1, t], [0, 1]]`, `n_t = [[1, 0], [t, 1]]`, and `w = k_{pi/2}`.
//! The group acts on row vectors from the right.

use std::ops::Mul;

use crate::error::{domain, Result};
use crate::scalar::{lit, Real};

/// Tolerance on `|det - 1|` accepted by [`GroupElement::new`].
pub const DET_TOLERANCE: f64 = 1e-12;

/// Drift above which products are renormalised back onto the group.
const DET_DRIFT: f64 = 1e-13;

/// A real 2x2 matrix of determinant one, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

/// Reduces an angle to `(-pi, pi]`.
pub fn wrap_angle<T: Real>(theta: T) -> T {
    let two_pi = T::PI() + T::PI();
    let mut r = theta - two_pi * (theta / two_pi).round();
    if r <= -T::PI() {
        r = r + two_pi;
    } else if r > T::PI() {
        r = r - two_pi;
    }
    r
}

impl<T: Real> GroupElement<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Result<Self> {
        let x = Self { a, b, c, d };
        let det = x.det();
        let tol = lit::<T>(DET_TOLERANCE).max(lit::<T>(64.0) * T::epsilon());
        if !det.is_finite() || (det - T::one()).abs() > tol {
            return Err(domain(format!("determinant {det} is not 1")));
        }
        Ok(x)
    }

    pub fn identity() -> Self {
        Self { a: T::one(), b: T::zero(), c: T::zero(), d: T::one() }
    }

    pub fn k(theta: T) -> Self {
        let (s, c) = theta.sin_cos();
        Self { a: c, b: s, c: -s, d: c }
    }

    pub fn a(s: T) -> Result<Self> {
        if !(s > T::zero()) || !s.is_finite() {
            return Err(domain(format!("a_s needs s > 0, got {s}")));
        }
        Ok(Self { a: s, b: T::zero(), c: T::zero(), d: s.recip() })
    }

    pub fn nbar(t: T) -> Self {
        Self { a: T::one(), b: t, c: T::zero(), d: T::one() }
    }

    pub fn n(t: T) -> Self {
        Self { a: T::one(), b: T::zero(), c: t, d: T::one() }
    }

    /// The rotation `k_{pi/2}`, with exact entries.
    pub fn w() -> Self {
        Self { a: T::zero(), b: T::one(), c: -T::one(), d: T::zero() }
    }

    /// `-identity` (or the identity for `positive`).
    pub fn m(positive: bool) -> Self {
        if positive {
            Self::identity()
        } else {
            Self { a: -T::one(), b: T::zero(), c: T::zero(), d: -T::one() }
        }
    }

    pub fn det(&self) -> T {
        self.a * self.d - self.b * self.c
    }

    pub fn inv(&self) -> Self {
        Self { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn mul(&self, y: &Self) -> Self {
        let p = Self {
            a: self.a * y.a + self.b * y.c,
            b: self.a * y.b + self.b * y.d,
            c: self.c * y.a + self.d * y.c,
            d: self.c * y.b + self.d * y.d,
        };
        let det = p.det();
        if (det - T::one()).abs() > lit(DET_DRIFT) && det > T::zero() {
            let r = det.sqrt().recip();
            Self { a: p.a * r, b: p.b * r, c: p.c * r, d: p.d * r }
        } else {
            p
        }
    }

    /// Largest entrywise difference.
    pub fn max_abs_diff(&self, y: &Self) -> T {
        (self.a - y.a)
            .abs()
            .max((self.b - y.b).abs())
            .max((self.c - y.c).abs())
            .max((self.d - y.d).abs())
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: [T; 2]) -> [T; 2] {
        [v[0] * self.a + v[1] * self.c, v[0] * self.b + v[1] * self.d]
    }

    /// Largest singular value.
    pub fn operator_norm(&self) -> T {
        let f2 = self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d;
        // singular values s, 1/s with s^2 + s^-2 = f2
        let disc = (f2 * f2 - lit(4.0)).max(T::zero()).sqrt();
        ((f2 + disc) / lit(2.0)).sqrt()
    }
}

impl<T: Real> Mul for GroupElement<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        GroupElement::mul(&self, &rhs)
    }
}

/// `x = nbar_t a_s k_theta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IwasawaFactors<T> {
    pub t: T,
    pub s: T,
    pub theta: T,
}

impl<T: Real> IwasawaFactors<T> {
    pub fn compose(&self) -> GroupElement<T> {
        GroupElement::nbar(self.t) * GroupElement { a: self.s, b: T::zero(), c: T::zero(), d: self.s.recip() }
            * GroupElement::k(self.theta)
    }
}

pub fn iwasawa<T: Real>(x: &GroupElement<T>) -> IwasawaFactors<T> {
    let r = x.c.hypot(x.d);
    let s = r.recip();
    let theta = (-x.c).atan2(x.d);
    let (sn, cs) = theta.sin_cos();
    let t = s * (-x.a * sn + x.b * cs);
    IwasawaFactors { t, s, theta: wrap_angle(theta) }
}

/// `x = k_theta a_s k_psi` with `s >= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CartanFactors<T> {
    pub theta: T,
    pub s: T,
    pub psi: T,
}

impl<T: Real> CartanFactors<T> {
    pub fn compose(&self) -> GroupElement<T> {
        GroupElement::k(self.theta)
            * GroupElement { a: self.s, b: T::zero(), c: T::zero(), d: self.s.recip() }
            * GroupElement::k(self.psi)
    }
}

/// Polar decomposition.  When `s > 1`, `theta` is in `(-pi/2, pi/2]`; for a
/// rotation, `s = 1`, `psi = 0` and `theta` is the rotation angle.
pub fn cartan<T: Real>(x: &GroupElement<T>) -> CartanFactors<T> {
    let p11 = x.a * x.a + x.b * x.b;
    let p22 = x.c * x.c + x.d * x.d;
    let p12 = x.a * x.c + x.b * x.d;
    let tr = p11 + p22;
    let diff = p11 - p22;
    let disc = (diff * diff + lit::<T>(4.0) * p12 * p12).sqrt();
    if disc <= lit::<T>(4.0) * T::epsilon() * tr {
        let theta = x.b.atan2(x.a);
        return CartanFactors { theta: wrap_angle(theta), s: T::one(), psi: T::zero() };
    }
    let two = lit::<T>(2.0);
    let mut theta = (-(two * p12)).atan2(diff) / two;
    if theta <= -T::FRAC_PI_2() {
        theta = theta + T::PI();
    }
    let s = ((tr + disc) / two).sqrt();
    // k_psi = a_{1/s} k_{-theta} x
    let m = GroupElement { a: s.recip(), b: T::zero(), c: T::zero(), d: s } * GroupElement::k(-theta) * *x;
    let psi = m.b.atan2(m.a);
    CartanFactors { theta, s, psi: wrap_angle(psi) }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BruhatCell<T> {
    /// `x = nbar_t a_s m`, with `m = +-identity` as given by `positive`.
    Small { t: T, s: T, positive: bool },
    /// `x = nbar_t a_s m w nbar_u`.
    Big { t: T, s: T, positive: bool, u: T },
}

impl<T: Real> BruhatCell<T> {
    pub fn is_small(&self) -> bool {
        matches!(self, BruhatCell::Small { .. })
    }

    pub fn compose(&self) -> GroupElement<T> {
        let a = |s: T| GroupElement { a: s, b: T::zero(), c: T::zero(), d: s.recip() };
        match *self {
            BruhatCell::Small { t, s, positive } => {
                GroupElement::nbar(t) * a(s) * GroupElement::m(positive)
            }
            BruhatCell::Big { t, s, positive, u } => {
                GroupElement::nbar(t) * a(s) * GroupElement::m(positive) * GroupElement::w()
                    * GroupElement::nbar(u)
            }
        }
    }
}

/// Relative size of the lower-left entry below which `x` is put in the small cell.
pub const BRUHAT_SMALL_CELL_TOLERANCE: f64 = 1e-13;

pub fn bruhat<T: Real>(x: &GroupElement<T>) -> BruhatCell<T> {
    let scale = x.a.abs().max(x.b.abs()).max(x.c.abs()).max(x.d.abs());
    if x.c.abs() <= lit::<T>(BRUHAT_SMALL_CELL_TOLERANCE) * scale {
        let positive = x.a > T::zero();
        let sign = if positive { T::one() } else { -T::one() };
        let s = x.a.abs();
        return BruhatCell::Small { t: sign * x.b * s, s, positive };
    }
    // x = sigma [[-t/s, s - t u / s], [-1/s, -u/s]]
    let positive = x.c < T::zero();
    let sigma = if positive { T::one() } else { -T::one() };
    let s = x.c.abs().recip();
    BruhatCell::Big { t: -sigma * x.a * s, s, positive, u: -sigma * x.d * s }
}

/// A point of the real projective line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LinePoint<T> {
    Finite(T),
    Infinity,
}

/// Fractional-linear right action `t -> (b + d t) / (a + c t)`.
///
/// This is the projectivisation of `(1, t) -> (1, t) x`, so
/// `mobius(x y, t) = mobius(y, mobius(x, t))`.
pub fn mobius<T: Real>(x: &GroupElement<T>, t: LinePoint<T>) -> LinePoint<T> {
    let (num, den) = match t {
        LinePoint::Finite(t) => (x.b + x.d * t, x.a + x.c * t),
        LinePoint::Infinity => (x.d, x.c),
    };
    if den == T::zero() {
        LinePoint::Infinity
    } else {
        LinePoint::Finite(num / den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};

    type G = GroupElement<f64>;

    fn close(x: &G, y: &G, tol: f64) -> bool {
        x.max_abs_diff(y) <= tol
    }

    #[test]
    fn generators() {
        let w = G::k(FRAC_PI_2);
        assert!(close(&w, &G::w(), 1e-16));
        let nb = G::nbar(1.0);
        assert!(close(&(nb * nb.inv()), &G::identity(), 0.0));
        assert!(close(&(G::a(2.0).unwrap() * G::a(3.0).unwrap()), &G::a(6.0).unwrap(), 1e-15));
        assert!(G::a(0.0).is_err());
        assert!(G::a(-1.0).is_err());
        assert!(G::new(1.0, 1.0, 0.0, 2.0).is_err());
    }

    #[test]
    fn iwasawa_examples() {
        let f = iwasawa(&G::w());
        assert!(f.t.abs() < 1e-15 && (f.s - 1.0).abs() < 1e-15 && (f.theta - FRAC_PI_2).abs() < 1e-15);
        let f = iwasawa(&G::n(1.0));
        assert!((f.t - 0.5).abs() < 1e-15);
        assert!((f.s - 1.0 / SQRT_2).abs() < 1e-15);
        assert!((f.theta + FRAC_PI_4).abs() < 1e-15);
        let f = iwasawa(&G::a(3.0).unwrap());
        assert_eq!((f.t, f.s, f.theta), (0.0, 3.0, 0.0));
    }

    #[test]
    fn cartan_examples() {
        let f = cartan(&G::a(2.0).unwrap());
        assert!(f.theta.abs() < 1e-15 && (f.s - 2.0).abs() < 1e-15 && f.psi.abs() < 1e-15);
        let f = cartan(&G::n(1.0));
        assert!((f.s - 1.618_033_988_749_895).abs() < 1e-14);
        assert!(close(&f.compose(), &G::n(1.0), 1e-14));
        let f = cartan(&G::k(0.3));
        assert_eq!(f.s, 1.0);
        assert!((f.theta + f.psi - 0.3).abs() < 1e-15);
    }

    #[test]
    fn bruhat_examples() {
        let x = G::nbar(2.0) * G::a(3.0).unwrap();
        match bruhat(&x) {
            BruhatCell::Small { t, s, positive } => {
                assert!((t - 2.0).abs() < 1e-15 && (s - 3.0).abs() < 1e-15 && positive)
            }
            other => panic!("expected small cell, got {other:?}"),
        }
        assert!(!bruhat(&G::w()).is_small());
        match bruhat(&G::m(false)) {
            BruhatCell::Small { positive, .. } => assert!(!positive),
            other => panic!("expected small cell, got {other:?}"),
        }
        let x = G::n(0.7) * G::a(1.3).unwrap() * G::k(2.0);
        assert!(close(&bruhat(&x).compose(), &x, 1e-14));
    }

    #[test]
    fn mobius_examples() {
        use LinePoint::*;
        assert_eq!(mobius(&G::identity(), Finite(0.4)), Finite(0.4));
        assert_eq!(mobius(&G::nbar(1.5), Finite(0.25)), Finite(1.75));
        assert_eq!(mobius(&G::w(), Finite(0.0)), Infinity);
        assert_eq!(mobius(&G::w(), Infinity), Finite(0.0));
        assert_eq!(mobius(&G::nbar(2.0), Infinity), Infinity);
    }

    #[test]
    fn wrap_angle_range() {
        assert_eq!(wrap_angle(std::f64::consts::PI), std::f64::consts::PI);
        assert_eq!(wrap_angle(-std::f64::consts::PI), std::f64::consts::PI);
        assert!((wrap_angle(7.0) - (7.0 - 2.0 * std::f64::consts::PI)).abs() < 1e-15);
    }

    #[test]
    fn f32_decompositions() {
        let x = GroupElement::<f32>::n(1.0);
        let f = iwasawa(&x);
        assert!(f.compose().max_abs_diff(&x) < 1e-5);
        assert!(cartan(&x).compose().max_abs_diff(&x) < 1e-5);
    }
}
