//! Recovery of `z0`, `k_c`, `k_F` and `k_B` from force-extension data.
//!
//! The exponents are not fitted: they follow from `z0`, after which the
//! tension force is linear in the stiffness constants. Compression and tension
//! points are weighted equally.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::{ExtensionRatio, SpringSpec, Variant};
use crate::lstsq;
use crate::math::sqrt;
use crate::mechanics::{derive_exponents, force, tension_basis, Exponents, MechanicalParams};

/// One raw sample: extension in mm, force in N.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measurement {
    /// Extension from the fully folded state, mm.
    pub z: f64,
    /// Axial force, N (negative in compression).
    pub force: f64,
}

/// A measured force-extension curve for one spring.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementSeries {
    spec: SpringSpec,
    points: Vec<Measurement>,
}

/// Minimum number of samples in any series.
pub const MIN_POINTS: usize = 4;

impl MeasurementSeries {
    /// Validates ordering and finiteness.
    pub fn new(spec: SpringSpec, points: Vec<Measurement>) -> Result<Self> {
        if points.len() < MIN_POINTS {
            return Err(Error::InsufficientData {
                region: "series",
                needed: MIN_POINTS,
                found: points.len(),
            });
        }
        for (i, p) in points.iter().enumerate() {
            if !(p.z.is_finite() && p.force.is_finite()) {
                return Err(Error::Series(format!("row {i}: non-finite value")));
            }
            if p.z < 0.0 {
                return Err(Error::Series(format!("row {i}: negative extension {}", p.z)));
            }
        }
        if let Some(i) = points.windows(2).position(|w| w[1].z <= w[0].z) {
            return Err(Error::Series(format!(
                "row {}: extension {} does not increase",
                i + 1,
                points[i + 1].z
            )));
        }
        Ok(Self { spec, points })
    }

    /// The spring the data belongs to.
    pub fn spec(&self) -> &SpringSpec {
        &self.spec
    }

    /// Raw samples in order.
    pub fn points(&self) -> &[Measurement] {
        &self.points
    }
}

/// Samples the forward model at the given extension ratios as a measurement
/// series in mm and N.
pub fn synthesize(
    spec: &SpringSpec,
    params: &MechanicalParams,
    z_tilde: &[f64],
) -> Result<MeasurementSeries> {
    let limit = spec.helix_length();
    let primary = crate::mechanics::crease_lengths(spec).primary;
    let points = z_tilde
        .iter()
        .map(|&z| {
            let (f, _) = force(spec, ExtensionRatio::new(z)?, params)?;
            Ok(Measurement {
                z: z * limit,
                force: f * primary,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    MeasurementSeries::new(*spec, points)
}

/// A normalized sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizedPoint {
    /// Extension ratio.
    pub z_tilde: f64,
    /// Force per unit primary-crease length, N/mm.
    pub f_tilde: f64,
}

/// `z~ = z / (lambda l_f)`, `F~ = F / (2 a n n_pr)`.
pub fn normalize_series(series: &MeasurementSeries) -> Result<Vec<NormalizedPoint>> {
    let spec = series.spec();
    let limit = spec.helix_length();
    let primary = crate::mechanics::crease_lengths(spec).primary;
    series
        .points()
        .iter()
        .enumerate()
        .map(|(row, p)| {
            if p.z >= limit {
                return Err(Error::RowOutOfRange { row, z: p.z, limit });
            }
            Ok(NormalizedPoint {
                z_tilde: p.z / limit,
                f_tilde: p.force / primary,
            })
        })
        .collect()
}

/// Free extension from the first negative-to-non-negative force crossing,
/// interpolated linearly between the bracketing samples.
pub fn estimate_free_extension(points: &[NormalizedPoint]) -> Result<f64> {
    for w in points.windows(2) {
        let (a, b) = (w[0], w[1]);
        if a.f_tilde < 0.0 && b.f_tilde >= 0.0 {
            if b.f_tilde == 0.0 {
                return Ok(b.z_tilde);
            }
            let t = -a.f_tilde / (b.f_tilde - a.f_tilde);
            return Ok(a.z_tilde + t * (b.z_tilde - a.z_tilde));
        }
    }
    Err(Error::NoZeroCrossing)
}

/// Least-squares `(slope, offset)` of `F~` against `z~`.
fn line(points: &[&NormalizedPoint]) -> (f64, f64) {
    let n = points.len() as f64;
    let mean_z = points.iter().map(|p| p.z_tilde).sum::<f64>() / n;
    let mean_f = points.iter().map(|p| p.f_tilde).sum::<f64>() / n;
    let (sxy, sxx) = points.iter().fold((0.0, 0.0), |(sxy, sxx), p| {
        let dz = p.z_tilde - mean_z;
        (sxy + dz * (p.f_tilde - mean_f), sxx + dz * dz)
    });
    let slope = sxy / sxx;
    (slope, mean_f - slope * mean_z)
}

/// Zero of the least-squares line (with intercept) through `points`.
fn line_zero(points: &[&NormalizedPoint]) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::InsufficientData {
            region: "compression",
            needed: 2,
            found: points.len(),
        });
    }
    let (slope, offset) = line(points);
    if !(slope > 0.0) {
        return Err(Error::Series("compression samples do not rise towards zero force".into()));
    }
    let z0 = -offset / slope;
    if !(z0 > 0.0 && z0 < 1.0) {
        return Err(Error::Series(format!("compression line crosses zero at z_tilde = {z0}")));
    }
    Ok(z0)
}

/// Free extension as the zero of a straight line fitted, with intercept, to
/// the samples at or below the current estimate, starting from `seed`.
/// Repeats until the set of samples stops changing.
pub fn compression_intercept(points: &[NormalizedPoint], seed: f64) -> Result<f64> {
    let mut z0 = seed;
    let mut used = usize::MAX;
    for _ in 0..16 {
        let below: Vec<_> = points.iter().filter(|p| p.z_tilde <= z0).collect();
        if below.len() == used {
            break;
        }
        used = below.len();
        z0 = line_zero(&below)?;
    }
    Ok(z0)
}

/// Free extension from the compression branch found as a linear prefix.
///
/// Samples are added in order while each new one lies within three residual
/// standard deviations of the line through the samples before it; the zero of
/// the final line is returned.
pub fn linear_prefix_intercept(points: &[NormalizedPoint]) -> Result<f64> {
    let mut k = 3.min(points.len());
    while k < points.len() {
        let prefix: Vec<_> = points[..k].iter().collect();
        let (slope, offset) = line(&prefix);
        let residual = |p: &NormalizedPoint| p.f_tilde - (offset + slope * p.z_tilde);
        let sigma = sqrt(prefix.iter().map(|p| { let r = residual(p); r * r }).sum::<f64>() / (k - 2) as f64);
        let scale = prefix.iter().map(|p| p.f_tilde.abs()).fold(0.0, f64::max);
        if residual(&points[k]).abs() > 3.0 * sigma + 1e-9 * scale {
            break;
        }
        k += 1;
    }
    line_zero(&points[..k].iter().collect::<Vec<_>>())
}

/// A stiffness estimate after clamping at zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    /// `max(raw, 0)`.
    pub value: f64,
    /// The unconstrained solution was negative.
    pub clamped: bool,
}

impl Estimate {
    fn from_raw(raw: f64) -> Self {
        Self {
            value: raw.max(0.0),
            clamped: raw < 0.0,
        }
    }
}

/// Slope of `F~` against `z~ - z0` through the origin, over points below `z0`.
pub fn fit_compression(points: &[NormalizedPoint], z_tilde_0: f64) -> Result<Estimate> {
    let below: Vec<_> = points.iter().filter(|p| p.z_tilde < z_tilde_0).collect();
    if below.len() < 2 {
        return Err(Error::InsufficientData {
            region: "compression",
            needed: 2,
            found: below.len(),
        });
    }
    let (sxy, sxx) = below.iter().fold((0.0, 0.0), |(sxy, sxx), p| {
        let x = p.z_tilde - z_tilde_0;
        (sxy + x * p.f_tilde, sxx + x * x)
    });
    Ok(Estimate::from_raw(sxy / sxx))
}

/// Extension-ratio window used for the tension fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TensionRange {
    /// Gap above `z0` before the first accepted point.
    pub offset_above_free: f64,
    /// Largest accepted extension ratio.
    pub upper: f64,
}

impl Default for TensionRange {
    fn default() -> Self {
        Self {
            offset_above_free: 0.02,
            upper: 0.95,
        }
    }
}

impl TensionRange {
    /// Whether `z` lies in `[z0 + offset, upper]`.
    pub fn contains(&self, z: f64, z_tilde_0: f64) -> bool {
        z >= z_tilde_0 + self.offset_above_free && z <= self.upper
    }
}

/// Tension stiffness estimates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TensionFit {
    /// Exponents derived from `z0`.
    pub exponents: Exponents,
    /// Folding stiffness.
    pub k_f: Estimate,
    /// Buckling stiffness (IOS only).
    pub k_b: Option<Estimate>,
    /// Points used.
    pub used: usize,
}

/// Linear least squares of `F~` on the tension basis functions.
pub fn fit_tension(
    points: &[NormalizedPoint],
    spec: &SpringSpec,
    z_tilde_0: f64,
    range: TensionRange,
) -> Result<TensionFit> {
    let exponents = derive_exponents(spec.family(), spec.variant(), z_tilde_0, spec.r0())?;
    let selected: Vec<_> = points
        .iter()
        .filter(|p| range.contains(p.z_tilde, z_tilde_0))
        .collect();
    let needed = match spec.variant() {
        Variant::Ios => 2,
        Variant::Rios => 1,
    };
    if selected.len() < needed {
        return Err(Error::InsufficientData {
            region: "tension",
            needed,
            found: selected.len(),
        });
    }
    let mut folding = Vec::with_capacity(selected.len());
    let mut buckling = Vec::with_capacity(selected.len());
    let mut rhs = Vec::with_capacity(selected.len());
    for p in &selected {
        let basis = tension_basis(spec, ExtensionRatio::new(p.z_tilde)?, &exponents)?;
        folding.push(basis.folding);
        if let Some(b) = basis.buckling {
            buckling.push(b);
        }
        rhs.push(p.f_tilde);
    }
    let (k_f, k_b) = if spec.variant() == Variant::Ios {
        let x = lstsq::solve(&[folding, buckling], &["folding", "buckling"], &rhs)?;
        (x[0], Some(x[1]))
    } else {
        (lstsq::solve(&[folding], &["folding"], &rhs)?[0], None)
    };
    Ok(TensionFit {
        exponents,
        k_f: Estimate::from_raw(k_f),
        k_b: k_b.map(Estimate::from_raw),
        used: selected.len(),
    })
}

/// How [`fit_series`] locates the free extension.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum FreeExtension {
    /// Interpolated zero crossing ([`estimate_free_extension`]).
    Crossing,
    /// Intercept of a compression line fitted with free offset
    /// ([`compression_intercept`]), seeded by the leading linear run
    /// ([`linear_prefix_intercept`]). Near-zero tension samples that noise
    /// pushes below zero do not pull the seed past the true crossing.
    #[default]
    CompressionIntercept,
    /// A known value.
    Fixed(f64),
}

/// Options for [`fit_series`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FitOptions {
    /// Tension window.
    pub tension_range: TensionRange,
    /// Free-extension estimator.
    pub free_extension: FreeExtension,
}

/// Outcome of a full fit.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    /// Fitted constants with derived exponents.
    pub params: MechanicalParams,
    /// RMS of `F~` residuals over the points used, N/mm.
    pub residual_rms: f64,
    /// Points used in the compression and tension fits.
    pub region_counts: (usize, usize),
    /// Names of constants whose unconstrained estimate was negative.
    pub clamped: Vec<&'static str>,
}

/// Normalizes, locates `z0`, then fits compression and tension.
pub fn fit_series(series: &MeasurementSeries, options: &FitOptions) -> Result<FitResult> {
    let spec = series.spec();
    let points = normalize_series(series)?;
    let z_tilde_0 = match options.free_extension {
        FreeExtension::Fixed(z0) => z0,
        FreeExtension::Crossing => estimate_free_extension(&points)?,
        FreeExtension::CompressionIntercept => {
            compression_intercept(&points, linear_prefix_intercept(&points)?)?
        }
    };
    fit_at(spec, &points, z_tilde_0, options.tension_range)
}

fn fit_at(
    spec: &SpringSpec,
    points: &[NormalizedPoint],
    z_tilde_0: f64,
    range: TensionRange,
) -> Result<FitResult> {
    let k_c = fit_compression(points, z_tilde_0)?;
    let tension = fit_tension(points, spec, z_tilde_0, range)?;
    let params = MechanicalParams {
        z_tilde_0,
        xi_f: tension.exponents.xi_f,
        xi_b: tension.exponents.xi_b,
        k_c: k_c.value,
        k_f: tension.k_f.value,
        k_b: tension.k_b.map(|e| e.value),
    };
    let mut clamped = Vec::new();
    for (name, est) in [("k_c", Some(k_c)), ("k_F", Some(tension.k_f)), ("k_B", tension.k_b)] {
        if est.is_some_and(|e| e.clamped) {
            clamped.push(name);
        }
    }
    let used: Vec<_> = points
        .iter()
        .filter(|p| p.z_tilde < z_tilde_0 || range.contains(p.z_tilde, z_tilde_0))
        .collect();
    let mut sum_sq = 0.0;
    for p in &used {
        let (model, _) = force(spec, ExtensionRatio::new(p.z_tilde)?, &params)?;
        sum_sq += (model - p.f_tilde) * (model - p.f_tilde);
    }
    let n_compression = points.iter().filter(|p| p.z_tilde < z_tilde_0).count();
    Ok(FitResult {
        params,
        residual_rms: sqrt(sum_sq / used.len() as f64),
        region_counts: (n_compression, tension.used),
        clamped,
    })
}
