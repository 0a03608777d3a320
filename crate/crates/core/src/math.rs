//! Small numeric helpers shared by the model modules.

use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

pub(crate) use core::f64::consts::{PI, SQRT_2, TAU};

/// Clamping window for arccos arguments.
pub(crate) const ACOS_TOLERANCE: f64 = 1e-12;

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[inline]
pub(crate) fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub(crate) fn asin(x: f64) -> f64 {
    libm::asin(x)
}

#[inline]
pub(crate) fn atan2(y: f64, x: f64) -> f64 {
    libm::atan2(y, x)
}

#[inline]
pub(crate) fn powf(x: f64, e: f64) -> f64 {
    libm::pow(x, e)
}

#[inline]
pub(crate) fn acos_clamped(x: f64) -> f64 {
    libm::acos(x.clamp(-1.0, 1.0))
}

/// arccos that tolerates rounding just outside [-1, 1] and rejects anything
/// further out.
pub(crate) fn acos_checked(x: f64) -> Result<f64> {
    if !x.is_finite() || x > 1.0 + ACOS_TOLERANCE || x < -1.0 - ACOS_TOLERANCE {
        return Err(Error::ArccosRange(x));
    }
    Ok(acos_clamped(x))
}

/// Central difference of `f` on `(0, 1)` at `x`, checked against a halved step.
///
/// Returns the Richardson-extrapolated estimate. The step stays well inside
/// the interval so both ends are usable. Fails when the two step sizes
/// disagree by more than `1e-3` (relative to `max(1, |f'|)`), which flags kinks.
pub(crate) fn checked_derivative<F>(f: F, x: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let h = 1e-3f64.min(0.5 * x).min(0.5 * (1.0 - x));
    if !(h > 0.0) {
        return Err(Error::Domain {
            quantity: "z_tilde",
            value: x,
            expected: "0 < z_tilde < 1 for a central difference",
        });
    }
    let coarse = (f(x + h)? - f(x - h)?) / (2.0 * h);
    let fine = (f(x + h / 2.0)? - f(x - h / 2.0)?) / h;
    if (coarse - fine).abs() > 1e-3 * fine.abs().max(1.0) {
        return Err(Error::Consistency(alloc::format!(
            "finite-difference derivative unstable at {x}: {coarse} vs {fine}"
        )));
    }
    Ok((4.0 * fine - coarse) / 3.0)
}

/// A point or direction in 3D space.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    /// x component.
    pub x: f64,
    /// y component.
    pub y: f64,
    /// z component (cylinder axis).
    pub z: f64,
}

impl Vec3 {
    /// Builds a vector from its components.
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    /// Point on a cylinder of radius `r` at polar angle `beta` and height `z`.
    pub fn cylindrical(r: f64, beta: f64, z: f64) -> Self {
        Self::new(r * cos(beta), r * sin(beta), z)
    }

    /// Dot product.
    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Cross product.
    pub fn cross(self, other: Self) -> Self {
        Self::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    /// Euclidean length.
    pub fn norm(self) -> f64 {
        sqrt(self.dot(self))
    }

    /// Distance to another point.
    pub fn distance(self, other: Self) -> f64 {
        (self - other).norm()
    }

    /// Midpoint of two points.
    pub fn midpoint(self, other: Self) -> Self {
        (self + other) * 0.5
    }

    /// Mean of a set of points.
    pub fn centroid(points: &[Self]) -> Self {
        let sum = points.iter().fold(Self::default(), |acc, &p| acc + p);
        sum * (1.0 / points.len() as f64)
    }

    /// Polar angle of the projection onto the xy-plane.
    pub fn azimuth(self) -> f64 {
        atan2(self.y, self.x)
    }
}

impl Add for Vec3 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }
}

/// `pi - angle(p, vertex, q)`: the dihedral-style folding angle measured at
/// `vertex` between the rays towards `p` and `q`.
///
/// Uses `atan2(|u x v|, -u.v)` so that nearly straight configurations keep
/// full absolute precision.
pub(crate) fn supplement_angle(p: Vec3, vertex: Vec3, q: Vec3) -> Result<f64> {
    let u = p - vertex;
    let v = q - vertex;
    let scale = u.norm().max(v.norm()).max(1.0);
    if u.norm() <= 1e-14 * scale || v.norm() <= 1e-14 * scale {
        return Err(Error::Degenerate("zero-length ray in folding-angle construction"));
    }
    Ok(atan2(u.cross(v).norm(), -u.dot(v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn acos_clamps_only_within_tolerance() {
        assert_eq!(acos_checked(1.0 + 1e-13).unwrap(), 0.0);
        assert!((acos_checked(-1.0 - 1e-13).unwrap() - PI).abs() < 1e-15);
        assert_eq!(acos_checked(1.0 + 1e-9), Err(Error::ArccosRange(1.0 + 1e-9)));
        assert!(acos_checked(f64::NAN).is_err());
    }

    #[test]
    fn checked_derivative_of_sine() {
        let d = checked_derivative(|x| Ok(sin(x)), 0.7).unwrap();
        assert!((d - cos(0.7)).abs() < 1e-10);
    }

    #[test]
    fn checked_derivative_rejects_kinks() {
        let r = checked_derivative(|x: f64| Ok(if x > 0.5 { 1.0 } else { 0.0 }), 0.5);
        assert!(matches!(r, Err(Error::Consistency(_))));
    }

    #[test]
    fn supplement_angle_of_straight_line_is_zero() {
        let a = Vec3::new(1.0, 0.0, 0.0);
        let o = Vec3::default();
        assert_eq!(supplement_angle(a, o, -a).unwrap(), 0.0);
        let b = Vec3::new(0.0, 1.0, 0.0);
        assert!((supplement_angle(a, o, b).unwrap() - PI / 2.0).abs() < 1e-15);
        assert!(supplement_angle(o, o, b).is_err());
    }
}
