//! Energy and force laws.
//!
//! Compression below the free extension `z0` is linear,
//! `F = k_c (z - z0)`. Above it the spring stores folding energy in the
//! primary creases, buckling energy in IOS facets and folding energy in RIOS
//! secondary creases:
//!
//! ```text
//! E_F1 = 1/2 k_F z^xi_F * 2 a n n_pr * omega1^2
//! E_B  = 1/2 k_B z^xi_B * 4 r0 n n_pr * 2 omega_B^2        (IOS)
//! E_F2 = 1/2 k_F z^xi_F * 4 r0 n n_pr * omega2^2           (RIOS)
//! ```
//!
//! Per unit primary-crease length this is
//! `E~ = 1/2 z^xi_F k_F (omega1^2 + c_2 omega2^2) + 1/2 z^xi_B k_B c_B omega_B^2`
//! with `c_B = 4 r0 / a` and `c_2 = 2 r0 / a` ([`CorrelationCoefficients`]).
//! The normalized force is `dE~/dz~ / (lambda l_f|n=1)`, which expands into
//! the correlation terms `A1, A2, B1, B2, C1, C2`.

use crate::error::{domain, Error, Result};
use crate::geometry::{
    folding_angle_buckle, folding_angle_primary, folding_angle_primary_rate,
    folding_angle_secondary, ExtensionRatio, FacetFamily, SpringSpec, Variant,
};
use crate::math::{checked_derivative, powf};
use crate::reference;

/// Free extension, exponents and stiffness constants of one spring.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MechanicalParams {
    /// Free extension ratio `z0`.
    pub z_tilde_0: f64,
    /// Folding stiffness exponent.
    pub xi_f: f64,
    /// Buckling stiffness exponent (IOS only).
    pub xi_b: Option<f64>,
    /// Compression constant, N/mm.
    pub k_c: f64,
    /// Folding stiffness, N/rad.
    pub k_f: f64,
    /// Buckling stiffness, N/rad (IOS only).
    pub k_b: Option<f64>,
}

impl MechanicalParams {
    /// Builds parameters whose exponents are derived from `z_tilde_0`, so the
    /// tension force vanishes at the free extension.
    pub fn with_derived_exponents(
        spec: &SpringSpec,
        z_tilde_0: f64,
        k_c: f64,
        k_f: f64,
        k_b: Option<f64>,
    ) -> Result<Self> {
        let exps = derive_exponents(spec.family(), spec.variant(), z_tilde_0, spec.r0())?;
        let params = Self {
            z_tilde_0,
            xi_f: exps.xi_f,
            xi_b: exps.xi_b,
            k_c,
            k_f,
            k_b,
        };
        params.check(spec.variant())?;
        Ok(params)
    }

    /// Published constants for the spring's family and variant, with derived
    /// exponents.
    pub fn published(spec: &SpringSpec) -> Result<Self> {
        let p = reference::published(spec.family(), spec.variant());
        Self::with_derived_exponents(spec, p.z_tilde_0, p.k_c, p.k_f, p.k_b)
    }

    /// Checks ranges and that buckling terms are present exactly for IOS.
    pub fn check(&self, variant: Variant) -> Result<()> {
        if !(self.z_tilde_0 > 0.0 && self.z_tilde_0 < 1.0) {
            return Err(domain("z_tilde_0", self.z_tilde_0, "0 < z_tilde_0 < 1"));
        }
        for (name, k) in [("k_c", self.k_c), ("k_F", self.k_f), ("k_B", self.k_b.unwrap_or(0.0))] {
            if !(k.is_finite() && k >= 0.0) {
                return Err(domain(name, k, "non-negative stiffness"));
            }
        }
        if !self.xi_f.is_finite() || self.xi_b.is_some_and(|x| !x.is_finite()) {
            return Err(Error::Configuration("exponents must be finite"));
        }
        match (variant, self.xi_b.is_some(), self.k_b.is_some()) {
            (Variant::Ios, true, true) | (Variant::Rios, false, false) => Ok(()),
            (Variant::Ios, _, _) => Err(Error::Configuration("IOS requires xi_B and k_B")),
            (Variant::Rios, _, _) => Err(Error::Configuration(
                "RIOS facets do not buckle; xi_B and k_B must be absent",
            )),
        }
    }
}

/// Total primary and secondary crease lengths, in mm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CreaseLengths {
    /// `2 a n n_pr`.
    pub primary: f64,
    /// `4 r0 n n_pr`.
    pub secondary: f64,
}

impl CreaseLengths {
    /// Lengths for an arbitrary cell count, including zero.
    pub fn new(family: FacetFamily, r0: f64, cells: u32) -> Self {
        let scale = f64::from(cells) * family.ribbon_count() as f64;
        Self {
            primary: 2.0 * family.side_ratio() * r0 * scale,
            secondary: 4.0 * r0 * scale,
        }
    }
}

/// Crease lengths of a spring.
pub fn crease_lengths(spec: &SpringSpec) -> CreaseLengths {
    CreaseLengths::new(spec.family(), spec.r0(), spec.cells())
}

/// Scale factors of the buckling and secondary-crease energies relative to
/// the primary-crease energy, per unit primary-crease length.
///
/// `B1 = buckle * omega_B omega_B'`, `B2 = buckle/2 * omega_B^2 / z`, and
/// likewise `C1`, `C2` with `secondary`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationCoefficients {
    /// `4 r0 / a`: `2 sqrt 2`, `4`, `4 / sqrt(2 - sqrt 2)`.
    pub buckle: f64,
    /// `2 r0 / a`: `sqrt 2`, `2`, `2 / sqrt(2 - sqrt 2)`.
    pub secondary: f64,
}

/// Coefficient table for a family.
pub fn correlation_coefficients(family: FacetFamily) -> CorrelationCoefficients {
    let r0_over_a = 1.0 / family.side_ratio();
    CorrelationCoefficients {
        buckle: 4.0 * r0_over_a,
        secondary: 2.0 * r0_over_a,
    }
}

/// Geometric correlation terms at one extension ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeomCorrelation {
    /// `omega1 * omega1'`.
    pub a1: f64,
    /// `omega1^2 / (2 z)`.
    pub a2: f64,
    /// Buckling rate term (IOS).
    pub b1: Option<f64>,
    /// Buckling exponent term (IOS).
    pub b2: Option<f64>,
    /// Secondary-crease rate term (RIOS).
    pub c1: Option<f64>,
    /// Secondary-crease exponent term (RIOS).
    pub c2: Option<f64>,
}

fn positive_ratio(z: ExtensionRatio) -> Result<f64> {
    if z.get() > 0.0 {
        Ok(z.get())
    } else {
        Err(domain("z_tilde", z.get(), "z_tilde > 0"))
    }
}

/// `(A1, A2)` from the analytic derivative of `phi + phi'`.
pub fn primary_terms(family: FacetFamily, z: ExtensionRatio) -> Result<(f64, f64)> {
    let zt = positive_ratio(z)?;
    let w = folding_angle_primary(family, z);
    Ok((w * folding_angle_primary_rate(family, z), w * w / (2.0 * zt)))
}

fn coordinate_terms<F>(angle: F, coefficient: f64, z: ExtensionRatio) -> Result<(f64, f64)>
where
    F: Fn(ExtensionRatio) -> Result<f64>,
{
    let zt = positive_ratio(z)?;
    let w = angle(z)?;
    let rate = checked_derivative(|t| angle(ExtensionRatio::new(t)?), zt)?;
    Ok((coefficient * w * rate, 0.5 * coefficient * w * w / zt))
}

/// `(B1, B2)`; only defined for IOS.
pub fn buckle_terms(
    family: FacetFamily,
    variant: Variant,
    z: ExtensionRatio,
    r0: f64,
) -> Result<(f64, f64)> {
    if variant == Variant::Rios {
        return Err(Error::Configuration("RIOS facets do not buckle (E_B = 0)"));
    }
    let coefficient = correlation_coefficients(family).buckle;
    coordinate_terms(|t| folding_angle_buckle(family, t, r0), coefficient, z)
}

/// `(C1, C2)`; only defined for RIOS.
pub fn secondary_terms(
    family: FacetFamily,
    variant: Variant,
    z: ExtensionRatio,
    r0: f64,
) -> Result<(f64, f64)> {
    if variant == Variant::Ios {
        return Err(Error::Configuration("IOS has no secondary creases (E_F2 = 0)"));
    }
    let coefficient = correlation_coefficients(family).secondary;
    coordinate_terms(|t| folding_angle_secondary(family, t, r0), coefficient, z)
}

/// All correlation terms applicable to the variant.
pub fn geom_correlation(
    family: FacetFamily,
    variant: Variant,
    z: ExtensionRatio,
    r0: f64,
) -> Result<GeomCorrelation> {
    let (a1, a2) = primary_terms(family, z)?;
    let mut g = GeomCorrelation {
        a1,
        a2,
        b1: None,
        b2: None,
        c1: None,
        c2: None,
    };
    match variant {
        Variant::Ios => {
            let (b1, b2) = buckle_terms(family, variant, z, r0)?;
            g.b1 = Some(b1);
            g.b2 = Some(b2);
        }
        Variant::Rios => {
            let (c1, c2) = secondary_terms(family, variant, z, r0)?;
            g.c1 = Some(c1);
            g.c2 = Some(c2);
        }
    }
    Ok(g)
}

/// Stiffness exponents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponents {
    /// Folding exponent.
    pub xi_f: f64,
    /// Buckling exponent (IOS only).
    pub xi_b: Option<f64>,
}

fn ratio(num: f64, den: f64) -> Result<f64> {
    if den == 0.0 || !den.is_finite() {
        return Err(Error::Degenerate("zero denominator in exponent derivation"));
    }
    Ok(-num / den)
}

/// Exponents that make the tension force vanish at `z_tilde_0`.
pub fn derive_exponents(
    family: FacetFamily,
    variant: Variant,
    z_tilde_0: f64,
    r0: f64,
) -> Result<Exponents> {
    if !(z_tilde_0 > 0.0 && z_tilde_0 < 1.0) {
        return Err(domain("z_tilde_0", z_tilde_0, "0 < z_tilde_0 < 1"));
    }
    let g = geom_correlation(family, variant, ExtensionRatio::new(z_tilde_0)?, r0)?;
    match (g.b1.zip(g.b2), g.c1.zip(g.c2)) {
        (Some((b1, b2)), _) => Ok(Exponents {
            xi_f: ratio(g.a1, g.a2)?,
            xi_b: Some(ratio(b1, b2)?),
        }),
        (None, Some((c1, c2))) => Ok(Exponents {
            xi_f: ratio(g.a1 + c1, g.a2 + c2)?,
            xi_b: None,
        }),
        (None, None) => unreachable!("geom_correlation fills one family of terms"),
    }
}

/// Energy partition at one extension, in N*mm; `e_tilde` in N.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyBreakdown {
    /// Primary-crease folding energy.
    pub e_f1: f64,
    /// Facet buckling energy (zero for RIOS).
    pub e_b: f64,
    /// Secondary-crease folding energy (zero for IOS).
    pub e_f2: f64,
    /// Total energy per unit primary-crease length.
    pub e_tilde: f64,
}

impl EnergyBreakdown {
    /// `E_F1 + E_B + E_F2`.
    pub fn total(&self) -> f64 {
        self.e_f1 + self.e_b + self.e_f2
    }
}

/// Shape-morphing energy of the whole spring.
pub fn shape_energy(
    spec: &SpringSpec,
    z: ExtensionRatio,
    params: &MechanicalParams,
) -> Result<EnergyBreakdown> {
    params.check(spec.variant())?;
    let zt = positive_ratio(z)?;
    let lengths = crease_lengths(spec);
    let stiffness_f = params.k_f * powf(zt, params.xi_f);
    let w1 = folding_angle_primary(spec.family(), z);
    let e_f1 = 0.5 * stiffness_f * lengths.primary * w1 * w1;
    let (e_b, e_f2) = match (spec.variant(), params.k_b.zip(params.xi_b)) {
        (Variant::Ios, Some((k_b, xi_b))) => {
            let wb = folding_angle_buckle(spec.family(), z, spec.r0())?;
            (0.5 * k_b * powf(zt, xi_b) * lengths.secondary * 2.0 * wb * wb, 0.0)
        }
        (Variant::Rios, _) => {
            let w2 = folding_angle_secondary(spec.family(), z, spec.r0())?;
            (0.0, 0.5 * stiffness_f * lengths.secondary * w2 * w2)
        }
        (Variant::Ios, None) => unreachable!("checked above"),
    };
    Ok(EnergyBreakdown {
        e_f1,
        e_b,
        e_f2,
        e_tilde: (e_f1 + e_b + e_f2) / lengths.primary,
    })
}

/// Tension force split into the parts multiplying `k_F` and `k_B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TensionBasis {
    /// `z^xi_F (A1 + A2 xi_F [+ C1 + C2 xi_F]) / (lambda l_f|n=1)`.
    pub folding: f64,
    /// `z^xi_B (B1 + B2 xi_B) / (lambda l_f|n=1)` for IOS.
    pub buckling: Option<f64>,
}

/// Basis functions of the tension model; the force is linear in `k_F`, `k_B`.
pub fn tension_basis(
    spec: &SpringSpec,
    z: ExtensionRatio,
    exponents: &Exponents,
) -> Result<TensionBasis> {
    let zt = positive_ratio(z)?;
    let g = geom_correlation(spec.family(), spec.variant(), z, spec.r0())?;
    let prefactor = 1.0 / (spec.lambda() * spec.cell_full_extension());
    let xi_f = exponents.xi_f;
    let mut folding = g.a1 + g.a2 * xi_f;
    if let (Some(c1), Some(c2)) = (g.c1, g.c2) {
        folding += c1 + c2 * xi_f;
    }
    let buckling = match (g.b1.zip(g.b2), exponents.xi_b) {
        (Some((b1, b2)), Some(xi_b)) => Some(prefactor * powf(zt, xi_b) * (b1 + b2 * xi_b)),
        (Some(_), None) => return Err(Error::Configuration("IOS requires xi_B")),
        (None, _) => None,
    };
    Ok(TensionBasis {
        folding: prefactor * powf(zt, xi_f) * folding,
        buckling,
    })
}

/// Normalized tension force `F~` in N/mm.
///
/// Equals `n / (2 a n n_pr)` times `dE/dz` of the whole spring, i.e. the
/// derivative of `E~` with respect to the extension of a single cell.
pub fn tension_force(
    spec: &SpringSpec,
    z: ExtensionRatio,
    params: &MechanicalParams,
) -> Result<f64> {
    params.check(spec.variant())?;
    let exponents = Exponents {
        xi_f: params.xi_f,
        xi_b: params.xi_b,
    };
    let basis = tension_basis(spec, z, &exponents)?;
    Ok(params.k_f * basis.folding + params.k_b.unwrap_or(0.0) * basis.buckling.unwrap_or(0.0))
}

/// Normalized compression force `k_c (z - z0)` for `z <= z0`.
pub fn compression_force(params: &MechanicalParams, z: ExtensionRatio) -> Result<f64> {
    if z.get() > params.z_tilde_0 {
        return Err(Error::Region {
            z_tilde: z.get(),
            z_tilde_0: params.z_tilde_0,
        });
    }
    Ok(params.k_c * (z.get() - params.z_tilde_0))
}

/// Which law governs a point of the force-extension curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// `z <= z0`.
    Compression,
    /// `z > z0`.
    Tension,
}

impl Region {
    /// Lower-case label.
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Compression => "compression",
            Self::Tension => "tension",
        }
    }
}

/// Piecewise force: compression law up to `z0`, tension law beyond.
pub fn force(
    spec: &SpringSpec,
    z: ExtensionRatio,
    params: &MechanicalParams,
) -> Result<(f64, Region)> {
    if z.get() <= params.z_tilde_0 {
        Ok((compression_force(params, z)?, Region::Compression))
    } else {
        Ok((tension_force(spec, z, params)?, Region::Tension))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::SQRT_2;

    fn z(v: f64) -> ExtensionRatio {
        ExtensionRatio::new(v).unwrap()
    }

    fn spec(f: FacetFamily, v: Variant) -> SpringSpec {
        SpringSpec::new(f, v, 10.0, 8).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn crease_length_examples() {
        let l = crease_lengths(&spec(FacetFamily::Square4, Variant::Ios));
        assert!((l.primary - 2.0 * 14.142135623730951 * 16.0).abs() < 1e-9);
        assert!((l.primary - 452.55).abs() < 5e-3);
        let l = crease_lengths(&spec(FacetFamily::Hexagon6, Variant::Rios));
        assert_eq!(l.secondary, 960.0);
        let zero = CreaseLengths::new(FacetFamily::Octagon8, 10.0, 0);
        assert_eq!((zero.primary, zero.secondary), (0.0, 0.0));
    }

    #[test]
    fn coefficients_match_printed_square_and_hexagon_rows() {
        let sq = correlation_coefficients(FacetFamily::Square4);
        assert!((sq.buckle - 2.0 * SQRT_2).abs() < 1e-15);
        assert!((sq.secondary - SQRT_2).abs() < 1e-15);
        let hx = correlation_coefficients(FacetFamily::Hexagon6);
        assert_eq!((hx.buckle, hx.secondary), (4.0, 2.0));
    }

    #[test]
    fn primary_correlation_example() {
        let g = geom_correlation(FacetFamily::Square4, Variant::Ios, z(0.242), 10.0).unwrap();
        assert!((g.a1 - 0.44389075981826526).abs() < 1e-12);
        assert!((g.a2 - 0.21847661710789876).abs() < 1e-12);
        assert!(g.b1.is_some() && g.c1.is_none());
        assert!(geom_correlation(FacetFamily::Square4, Variant::Ios, z(0.0), 10.0).is_err());
    }

    #[test]
    fn buckle_terms_rejected_for_rios() {
        let r = buckle_terms(FacetFamily::Square4, Variant::Rios, z(0.3), 10.0);
        assert!(matches!(r, Err(Error::Configuration(_))));
        let r = secondary_terms(FacetFamily::Square4, Variant::Ios, z(0.3), 10.0);
        assert!(matches!(r, Err(Error::Configuration(_))));
    }

    #[test]
    fn square_exponents_match_published() {
        let e = derive_exponents(FacetFamily::Square4, Variant::Ios, 0.242, 10.0).unwrap();
        assert!(rel(e.xi_f, -2.031) < 0.01, "{e:?}");
        assert!(rel(e.xi_b.unwrap(), -2.062) < 0.01, "{e:?}");
        let e = derive_exponents(FacetFamily::Square4, Variant::Rios, 0.385, 10.0).unwrap();
        assert!(rel(e.xi_f, -2.110) < 0.01, "{e:?}");
        assert!(e.xi_b.is_none());
        assert!(derive_exponents(FacetFamily::Square4, Variant::Ios, 0.0, 10.0).is_err());
        assert!(derive_exponents(FacetFamily::Square4, Variant::Ios, 1.0, 10.0).is_err());
    }

    #[test]
    fn params_variant_consistency() {
        let s = spec(FacetFamily::Square4, Variant::Rios);
        let mut p = MechanicalParams::published(&s).unwrap();
        p.k_b = Some(1.0);
        p.xi_b = Some(-2.0);
        assert!(matches!(shape_energy(&s, z(0.5), &p), Err(Error::Configuration(_))));
        let ios = spec(FacetFamily::Square4, Variant::Ios);
        let mut p = MechanicalParams::published(&ios).unwrap();
        p.k_b = None;
        assert!(tension_force(&ios, z(0.5), &p).is_err());
    }

    #[test]
    fn zero_stiffness_gives_zero_energy() {
        for v in Variant::ALL {
            let s = spec(FacetFamily::Hexagon6, v);
            let mut p = MechanicalParams::published(&s).unwrap();
            p.k_f = 0.0;
            p.k_b = p.k_b.map(|_| 0.0);
            let e = shape_energy(&s, z(0.5), &p).unwrap();
            assert_eq!((e.e_f1, e.e_b, e.e_f2, e.e_tilde), (0.0, 0.0, 0.0, 0.0));
        }
    }

    #[test]
    fn energy_partition_by_variant() {
        let s = spec(FacetFamily::Square4, Variant::Rios);
        let e = shape_energy(&s, z(0.5), &MechanicalParams::published(&s).unwrap()).unwrap();
        assert_eq!(e.e_b, 0.0);
        assert!(e.e_f2 > 0.0);
        let s = spec(FacetFamily::Square4, Variant::Ios);
        let e = shape_energy(&s, z(0.5), &MechanicalParams::published(&s).unwrap()).unwrap();
        assert_eq!(e.e_f2, 0.0);
        assert!(e.e_tilde > 0.0 && e.e_tilde.is_finite());
        let lp = crease_lengths(&s).primary;
        assert!((e.e_tilde - e.total() / lp).abs() < 1e-15);
        // regression value for the published IOS-4 constants
        assert!((e.e_tilde - 2.513023202503579).abs() < 1e-9, "{}", e.e_tilde);
    }

    #[test]
    fn force_vanishes_at_free_extension() {
        for f in FacetFamily::ALL {
            for v in Variant::ALL {
                let s = spec(f, v);
                let p = MechanicalParams::published(&s).unwrap();
                let at = z(p.z_tilde_0);
                assert!(tension_force(&s, at, &p).unwrap().abs() < 1e-10);
                assert_eq!(compression_force(&p, at).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn compression_examples() {
        let s = spec(FacetFamily::Square4, Variant::Ios);
        let p = MechanicalParams::published(&s).unwrap();
        let f = compression_force(&p, z(0.1)).unwrap();
        assert!((f - (-0.001846)).abs() < 1e-12);
        assert!(matches!(compression_force(&p, z(0.3)), Err(Error::Region { .. })));
    }

    #[test]
    fn piecewise_force_labels_regions() {
        let s = spec(FacetFamily::Square4, Variant::Ios);
        let p = MechanicalParams::published(&s).unwrap();
        assert_eq!(force(&s, z(0.1), &p).unwrap().1, Region::Compression);
        assert_eq!(force(&s, z(p.z_tilde_0), &p).unwrap(), (0.0, Region::Compression));
        let (f, region) = force(&s, z(0.6), &p).unwrap();
        assert_eq!(region, Region::Tension);
        assert!(f > 0.0);
        assert!(tension_force(&s, z(0.0), &p).is_err());
    }
}
