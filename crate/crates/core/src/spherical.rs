//! Generalised spherical functions `phi^{mu,nu}_{zeta,eps}(x) = (pi(x) f_{zeta,mu}, f_{-zeta,-nu})`,
//! evaluated in the compact picture.

use num_complex::Complex;

use crate::error::Result;
use crate::intertwine::d_eigen;
use crate::quadrature::{periodic_integral, QuadratureSpec};
use crate::repn::{act_point, CirclePoint, SpectralParam, WeightIndex};
use crate::scalar::{int, Real};
use crate::sl2::GroupElement;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalQuery<T> {
    pub p: SpectralParam<T>,
    pub mu: WeightIndex,
    pub nu: WeightIndex,
    pub x: GroupElement<T>,
    pub spec: QuadratureSpec<T>,
}

impl<T: Real> SphericalQuery<T> {
    pub fn new(p: SpectralParam<T>, mu: i64, nu: i64, x: GroupElement<T>, spec: QuadratureSpec<T>) -> Result<Self> {
        let q = Self { p, mu: WeightIndex(mu), nu: WeightIndex(nu), x, spec };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        self.p.parity.check(self.mu.0)?;
        self.p.parity.check(self.nu.0)?;
        self.spec.validate()
    }

    pub fn with_x(&self, x: GroupElement<T>) -> Self {
        Self { x, ..*self }
    }

    pub fn with_zeta(&self, zeta: Complex<T>) -> Self {
        Self { p: SpectralParam { zeta, ..self.p }, ..*self }
    }

    pub fn with_weights(&self, mu: i64, nu: i64) -> Self {
        Self { mu: WeightIndex(mu), nu: WeightIndex(nu), ..*self }
    }
}

/// `(1/2pi) int r^{2 zeta - 1} e^{i mu omega} e^{-i nu theta} dtheta`.
pub fn phi<T: Real>(q: &SphericalQuery<T>) -> Result<Complex<T>> {
    q.validate()?;
    let mu = int::<T>(q.mu.0);
    let nu = int::<T>(q.nu.0);
    let integrand = |theta: T| {
        let (factor, omega) = act_point(&q.p, &q.x, CirclePoint::new(theta));
        factor * Complex::from_polar(T::one(), mu * omega.angle() - nu * theta)
    };
    let two_pi = T::PI() + T::PI();
    Ok(periodic_integral(integrand, &q.spec)? / two_pi)
}

/// `|phi(k_theta x k_psi) - e^{i nu theta} e^{i mu psi} phi(x)|`.
pub fn phi_equivariance_defect<T: Real>(q: &SphericalQuery<T>, theta: T, psi: T) -> Result<T> {
    let moved = q.with_x(GroupElement::k(theta) * q.x * GroupElement::k(psi));
    let lhs = phi(&moved)?;
    let phase = Complex::from_polar(T::one(), int::<T>(q.nu.0) * theta + int::<T>(q.mu.0) * psi);
    Ok((lhs - phase * phi(q)?).norm())
}

/// One side-by-side evaluation of a symmetry identity.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryReport<T> {
    pub identity: &'static str,
    pub lhs: Complex<T>,
    pub rhs: Complex<T>,
    pub abs_defect: T,
}

impl<T: Real> SymmetryReport<T> {
    fn new(identity: &'static str, lhs: Complex<T>, rhs: Complex<T>) -> Self {
        Self { identity, lhs, rhs, abs_defect: (lhs - rhs).norm() }
    }
}

/// Conjugation, inversion and intertwining identities at `q`:
///
/// - `conj phi_zeta^{mu,nu}(x) = phi_{conj zeta}^{-mu,-nu}(x)`
/// - `phi_zeta^{mu,nu}(x^{-1}) = phi_{-zeta}^{-nu,-mu}(x)`
/// - `phi_zeta^{mu,nu}(x) = d(zeta,mu)/d(zeta,nu) phi_{-zeta}^{mu,nu}(x)`
pub fn phi_symmetry_checks<T: Real>(q: &SphericalQuery<T>) -> Result<Vec<SymmetryReport<T>>> {
    q.p.check_strip()?;
    let (mu, nu) = (q.mu.0, q.nu.0);
    let zeta = q.p.zeta;
    let base = phi(q)?;

    let conj = phi(&q.with_zeta(zeta.conj()).with_weights(-mu, -nu))?;
    let inverse_lhs = phi(&q.with_x(q.x.inv()))?;
    let inverse_rhs = phi(&q.with_zeta(-zeta).with_weights(-nu, -mu))?;
    let dual = phi(&q.with_zeta(-zeta))?;
    let ratio = d_eigen(zeta, q.p.parity, mu)? / d_eigen(zeta, q.p.parity, nu)?;

    Ok(vec![
        SymmetryReport::new("conjugation", base.conj(), conj),
        SymmetryReport::new("inversion", inverse_lhs, inverse_rhs),
        SymmetryReport::new("intertwining", base, ratio * dual),
    ])
}
