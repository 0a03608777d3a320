//! Ejection distance of a payload launched by a compressed spring.
//!
//! Energy balance: the stored compression energy `k_c z0^2 / 2` is spent on
//! sliding friction of the spring over `z0` and of the payload over
//! `x_ej`, giving `x_ej = z0 (k_c z0 - mu M g) / (2 mu m g)`.
//!
//! Units: lengths in mm, `k_c` in N/mm, masses in kg, `g` in m/s^2.

use crate::error::{domain, Error, Result};
use crate::geometry::SpringSpec;
use crate::mechanics::MechanicalParams;
use crate::reference::GRAVITY;

/// A spring loaded against a payload; friction is supplied per evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ejector {
    z0: f64,
    k_c: f64,
    spring_mass: f64,
    payload_mass: f64,
    gravity: f64,
}

impl Ejector {
    /// Explicit scenario; `z0` in mm, `k_c` in N/mm, masses in kg.
    pub fn new(z0: f64, k_c: f64, spring_mass: f64, payload_mass: f64) -> Result<Self> {
        for (name, v) in [
            ("z0", z0),
            ("k_c", k_c),
            ("spring mass", spring_mass),
            ("payload mass", payload_mass),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(domain(name, v, "positive"));
            }
        }
        Ok(Self {
            z0,
            k_c,
            spring_mass,
            payload_mass,
            gravity: GRAVITY,
        })
    }

    /// Scenario for a spring compressed from its free extension to closure.
    pub fn for_spring(
        spec: &SpringSpec,
        params: &MechanicalParams,
        spring_mass: f64,
        payload_mass: f64,
    ) -> Result<Self> {
        Self::new(
            params.z_tilde_0 * spec.helix_length(),
            params.k_c,
            spring_mass,
            payload_mass,
        )
    }

    /// Overrides the gravitational acceleration.
    pub fn with_gravity(mut self, gravity: f64) -> Result<Self> {
        if !(gravity.is_finite() && gravity > 0.0) {
            return Err(domain("g", gravity, "positive"));
        }
        self.gravity = gravity;
        Ok(self)
    }

    /// Compressed travel, mm.
    pub fn z0(&self) -> f64 {
        self.z0
    }

    /// Peak spring force `k_c z0`, N.
    pub fn peak_force(&self) -> f64 {
        self.k_c * self.z0
    }
}

/// Ejection distance in mm, floored at zero when friction wins.
pub fn ejection_distance(ejector: &Ejector, mu: f64) -> Result<f64> {
    if !(mu.is_finite() && mu > 0.0) {
        return Err(domain("mu", mu, "positive friction coefficient"));
    }
    let e = ejector;
    let numerator = e.peak_force() - mu * e.spring_mass * e.gravity;
    Ok((e.z0 * numerator / (2.0 * mu * e.payload_mass * e.gravity)).max(0.0))
}

/// Friction coefficient that reproduces an observed ejection distance.
pub fn calibrate_friction(ejector: &Ejector, observed: f64) -> Result<f64> {
    if !(observed.is_finite() && observed > 0.0) {
        return Err(Error::Calibration("observed distance must be positive"));
    }
    let e = ejector;
    let mu = e.peak_force() * e.z0
        / (e.gravity * (2.0 * e.payload_mass * observed + e.spring_mass * e.z0));
    if mu.is_finite() && mu > 0.0 {
        Ok(mu)
    } else {
        Err(Error::Calibration("no positive friction coefficient"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{FacetFamily, Variant};
    use crate::reference::{spring_mass_g, HEXAGRAM_MASS_G};

    fn rios4() -> Ejector {
        let spec = SpringSpec::new(FacetFamily::Square4, Variant::Rios, 10.0, 8).unwrap();
        let params = MechanicalParams::published(&spec).unwrap();
        Ejector::for_spring(
            &spec,
            &params,
            spring_mass_g(FacetFamily::Square4) * 1e-3,
            HEXAGRAM_MASS_G * 1e-3,
        )
        .unwrap()
    }

    #[test]
    fn balanced_friction_gives_zero() {
        let e = Ejector::new(100.0, 0.01, 0.001, 0.001).unwrap();
        let mu = e.peak_force() / (0.001 * GRAVITY);
        assert!(ejection_distance(&e, mu).unwrap().abs() < 1e-9);
        assert_eq!(ejection_distance(&e, 10.0 * mu).unwrap(), 0.0);
    }

    #[test]
    fn doubling_payload_halves_distance() {
        let a = Ejector::new(100.0, 0.01, 0.0004, 0.0003).unwrap();
        let b = Ejector::new(100.0, 0.01, 0.0004, 0.0006).unwrap();
        let (xa, xb) = (ejection_distance(&a, 0.5).unwrap(), ejection_distance(&b, 0.5).unwrap());
        assert!((xa - 2.0 * xb).abs() < 1e-9 * xa);
    }

    #[test]
    fn rios4_scale() {
        let e = rios4();
        assert!((e.z0() - 104.97).abs() < 0.01, "{}", e.z0());
        let mu = 0.5;
        let x_mu = ejection_distance(&e, mu).unwrap() * mu;
        // mu * x_ej tends to k_c z0^2 / (2 m g) as mu -> 0
        assert!((x_mu - 1.40e4).abs() / 1.40e4 < 0.01, "{x_mu}");
    }

    #[test]
    fn calibration_round_trip() {
        let e = rios4();
        let x = ejection_distance(&e, 0.5).unwrap();
        assert!((calibrate_friction(&e, x).unwrap() - 0.5).abs() < 1e-9);
        assert!(calibrate_friction(&e, 1e12).unwrap() < 1e-6);
        assert!(calibrate_friction(&e, 0.0).is_err());
    }

    #[test]
    fn invalid_inputs() {
        let e = rios4();
        assert!(ejection_distance(&e, 0.0).is_err());
        assert!(Ejector::new(1.0, 1.0, 1.0, 0.0).is_err());
        assert!(e.with_gravity(-1.0).is_err());
    }
}
