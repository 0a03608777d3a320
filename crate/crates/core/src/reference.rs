//! Published constants: fitted mechanical parameters and specimen masses.
//!
//! Values for springs with `r0 = 10 mm` and eight unit cells. The `lambda`
//! coefficients live on [`FacetFamily::default_lambda`].

use crate::geometry::{FacetFamily, Variant};

/// Fitted mechanical constants of one spring type as printed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PublishedParams {
    /// Free extension ratio.
    pub z_tilde_0: f64,
    /// Printed folding exponent.
    pub xi_f: f64,
    /// Printed buckling exponent (IOS only).
    pub xi_b: Option<f64>,
    /// Compression constant, N/mm.
    pub k_c: f64,
    /// Folding stiffness, N/rad.
    pub k_f: f64,
    /// Buckling stiffness, N/rad (IOS only).
    pub k_b: Option<f64>,
}

/// Circumradius of the reference specimens, mm.
pub const SPECIMEN_R0: f64 = 10.0;
/// Unit cells of the reference specimens.
pub const SPECIMEN_CELLS: u32 = 8;

/// Published constants for a family/variant pair.
pub const fn published(family: FacetFamily, variant: Variant) -> PublishedParams {
    use FacetFamily::*;
    use Variant::*;
    let (z_tilde_0, xi_f, xi_b, k_c, k_f, k_b) = match (family, variant) {
        (Square4, Ios) => (0.242, -2.031, Some(-2.062), 0.013, 2.045, Some(1.363)),
        (Square4, Rios) => (0.385, -2.110, None, 0.009, 0.4508, None),
        (Hexagon6, Ios) => (0.241, -2.030, Some(-1.997), 0.016, 3.091, Some(1.476)),
        (Hexagon6, Rios) => (0.319, -2.081, None, 0.012, 1.092, None),
        (Octagon8, Ios) => (0.239, -2.030, Some(-1.942), 0.020, 4.577, Some(1.488)),
        (Octagon8, Rios) => (0.302, -2.080, None, 0.015, 1.100, None),
    };
    PublishedParams {
        z_tilde_0,
        xi_f,
        xi_b,
        k_c,
        k_f,
        k_b,
    }
}

/// Mass of an IOS or RIOS specimen in grams (both variants weigh the same).
pub const fn spring_mass_g(family: FacetFamily) -> f64 {
    match family {
        FacetFamily::Square4 => 0.398,
        FacetFamily::Hexagon6 => 0.795,
        FacetFamily::Octagon8 => 1.075,
    }
}

/// Mass of the parallel-ribbon control spring, g.
pub const POS_MASS_G: f64 = 0.198;

/// Mass of the ejected origami hexagram, g.
pub const HEXAGRAM_MASS_G: f64 = 0.362;

/// Default gravitational acceleration, m/s^2.
pub const GRAVITY: f64 = 9.81;
