//! Continuum shape-morphing model.
//!
//! An origami spring is replaced by a cylinder carrying large-pitch and
//! small-pitch helices. Every polygon side keeps its length `a`, every
//! vertex sits on a helix, and all unit cells share one configuration, so
//! the state of the spring is a single scalar: the extension ratio
//! `z_tilde = sin(phi)`, where `phi` is the large-pitch helix angle.
//!
//! Going around one facet, the vertices split into a large-pitch run
//! (`A -> B -> ...`, turning by `-alpha_L` per side) and a small-pitch run
//! (`A -> last -> ...`, turning by `+alpha_S` per side). The projected arcs
//! close the circle:
//!
//! ```text
//! n_L * alpha_L + n_S * alpha_S = 2 pi,   cos(alpha) = 1 - (a cos(helix))^2 / (2 r^2)
//! ```
//!
//! with `(n_L, n_S)` = (1, 3), (2, 4), (3, 5) for squares, hexagons and
//! octagons. `P = cos(alpha_L)` and `Q = cos(alpha_S)` have closed forms;
//! [`radius_oracle`] solves the same closure numerically instead.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{domain, Error, Result};
use crate::math::{
    acos_checked, acos_clamped, asin, cos, sqrt, supplement_angle, Vec3, SQRT_2, TAU,
};

/// Shape of the polygon facets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FacetFamily {
    /// Square facets, two ribbons (IOS-4).
    Square4,
    /// Regular hexagon facets, three ribbons (IOS-6).
    Hexagon6,
    /// Regular octagon facets, four ribbons (IOS-8).
    Octagon8,
}

impl FacetFamily {
    /// All families in ascending edge count.
    pub const ALL: [FacetFamily; 3] = [Self::Square4, Self::Hexagon6, Self::Octagon8];

    /// Looks a family up by its polygon edge count.
    pub fn from_edge_count(edges: usize) -> Option<Self> {
        match edges {
            4 => Some(Self::Square4),
            6 => Some(Self::Hexagon6),
            8 => Some(Self::Octagon8),
            _ => None,
        }
    }

    /// Number of polygon sides.
    pub const fn edge_count(self) -> usize {
        match self {
            Self::Square4 => 4,
            Self::Hexagon6 => 6,
            Self::Octagon8 => 8,
        }
    }

    /// Number of paper ribbons `n_pr` interleaved in the spring.
    pub const fn ribbon_count(self) -> usize {
        self.edge_count() / 2
    }

    /// Ratio `a / r0` of side length to circumradius.
    pub fn side_ratio(self) -> f64 {
        match self {
            Self::Square4 => SQRT_2,
            Self::Hexagon6 => 1.0,
            Self::Octagon8 => sqrt(2.0 - SQRT_2),
        }
    }

    /// Ratio `l_f / (a n)` of the full extension to side length times cells.
    ///
    /// This is twice the facet width across flats, in units of `a`.
    pub fn full_extension_ratio(self) -> f64 {
        match self {
            Self::Square4 => 2.0,
            Self::Hexagon6 => 2.0 * sqrt(3.0),
            Self::Octagon8 => 2.0 * (SQRT_2 + 1.0),
        }
    }

    /// Published large-pitch length coefficient `lambda`.
    pub const fn default_lambda(self) -> f64 {
        match self {
            Self::Square4 => 1.205,
            Self::Hexagon6 => 1.110,
            Self::Octagon8 => 1.007,
        }
    }

    /// `sin(phi') / sin(phi)`.
    pub fn pitch_ratio(self) -> f64 {
        match self {
            Self::Square4 => 1.0 / 3.0,
            Self::Hexagon6 => 0.5,
            Self::Octagon8 => 0.6,
        }
    }

    /// Sides of one facet lying on the large-pitch helix.
    pub const fn large_pitch_sides(self) -> usize {
        self.edge_count() / 2 - 1
    }

    /// Sides of one facet lying on the small-pitch helix.
    pub const fn small_pitch_sides(self) -> usize {
        self.edge_count() / 2 + 1
    }
}

impl fmt::Display for FacetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.edge_count())
    }
}

/// Plain interleaved spring, or rigidized with secondary diagonal creases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// Facets buckle along their diagonals.
    Ios,
    /// Secondary creases replace facet buckling.
    Rios,
}

impl Variant {
    /// Both variants.
    pub const ALL: [Variant; 2] = [Self::Ios, Self::Rios];
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Ios => "IOS",
            Self::Rios => "RIOS",
        })
    }
}

/// Identity and dimensions of one spring.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpringSpec {
    family: FacetFamily,
    variant: Variant,
    r0: f64,
    cells: u32,
    lambda: f64,
}

impl SpringSpec {
    /// A spring with the published `lambda` for its family.
    pub fn new(family: FacetFamily, variant: Variant, r0: f64, cells: u32) -> Result<Self> {
        check_r0(r0)?;
        if cells == 0 {
            return Err(domain("cells", 0.0, "at least one unit cell"));
        }
        Ok(Self {
            family,
            variant,
            r0,
            cells,
            lambda: family.default_lambda(),
        })
    }

    /// Overrides `lambda`.
    pub fn with_lambda(mut self, lambda: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda >= 1.0) {
            return Err(domain("lambda", lambda, "lambda >= 1"));
        }
        self.lambda = lambda;
        Ok(self)
    }

    /// Facet family.
    pub fn family(&self) -> FacetFamily {
        self.family
    }

    /// IOS or RIOS.
    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Facet circumradius in mm.
    pub fn r0(&self) -> f64 {
        self.r0
    }

    /// Number of unit cells.
    pub fn cells(&self) -> u32 {
        self.cells
    }

    /// Large-pitch length coefficient.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Polygon side length `a` in mm.
    pub fn side_length(&self) -> f64 {
        self.family.side_ratio() * self.r0
    }

    /// Full extension `l_f` in mm (all cells).
    pub fn full_extension(&self) -> f64 {
        self.cell_full_extension() * f64::from(self.cells)
    }

    /// Full extension of a single cell, `l_f` at `n = 1`.
    pub fn cell_full_extension(&self) -> f64 {
        self.family.full_extension_ratio() * self.side_length()
    }

    /// Large-pitch helix length `lambda * l_f` in mm.
    pub fn helix_length(&self) -> f64 {
        self.lambda * self.full_extension()
    }
}

fn check_r0(r0: f64) -> Result<()> {
    if r0.is_finite() && r0 > 0.0 {
        Ok(())
    } else {
        Err(domain("r0", r0, "positive circumradius"))
    }
}

/// Extension ratio `z_tilde` in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ExtensionRatio(f64);

impl ExtensionRatio {
    /// Closed configuration.
    pub const CLOSED: Self = Self(0.0);

    /// Validates `0 <= z < 1`.
    pub fn new(z: f64) -> Result<Self> {
        if (0.0..1.0).contains(&z) {
            Ok(Self(z))
        } else {
            Err(domain("z_tilde", z, "0 <= z_tilde < 1"))
        }
    }

    /// Raw value.
    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for ExtensionRatio {
    type Error = Error;
    fn try_from(z: f64) -> Result<Self> {
        Self::new(z)
    }
}

/// Polygon side length for circumradius `r0`.
pub fn side_length(family: FacetFamily, r0: f64) -> Result<f64> {
    check_r0(r0)?;
    Ok(family.side_ratio() * r0)
}

/// Large- and small-pitch helix angles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelixAngles {
    /// Large-pitch helix angle `phi = asin(z_tilde)`.
    pub phi: f64,
    /// Small-pitch helix angle `phi'`.
    pub phi_prime: f64,
}

/// Helix angles at extension `z`.
pub fn helix_angles(family: FacetFamily, z: ExtensionRatio) -> HelixAngles {
    HelixAngles {
        phi: asin(z.0),
        phi_prime: asin(family.pitch_ratio() * z.0),
    }
}

/// Closed-form intermediates `M`, `N`, `P`, `Q` (and `l_MN`, `s_MN` for
/// octagons).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuxiliaryQuantities {
    /// `M`.
    pub m: f64,
    /// `N`.
    pub n: f64,
    /// Cosine of the projected arc angle of one large-pitch side.
    pub p: f64,
    /// Cosine of the projected arc angle of one small-pitch side.
    pub q: f64,
    /// `M / N` (octagon only).
    pub l_mn: Option<f64>,
    /// Octagon closure term.
    pub s_mn: Option<f64>,
}

/// Evaluates the family's closed-form intermediates.
pub fn auxiliary(family: FacetFamily, z: ExtensionRatio) -> AuxiliaryQuantities {
    let z2 = z.0 * z.0;
    match family {
        FacetFamily::Square4 => {
            let m = sqrt(1.0 - z2);
            let n = sqrt(9.0 - z2);
            let mn = m + n;
            AuxiliaryQuantities {
                m,
                n,
                p: 1.0 - 108.0 * m * m / (n * n * n * mn),
                q: 1.0 - 12.0 / (n * mn),
                l_mn: None,
                s_mn: None,
            }
        }
        FacetFamily::Hexagon6 => {
            let m = sqrt(3.0 - 3.0 * z2);
            let n = sqrt(3.0 - z2);
            let k = n * (m + 2.0 * n) - 1.0;
            AuxiliaryQuantities {
                m,
                n,
                p: 1.0 - 4.0 * m * m / (3.0 * k),
                q: 1.0 - (n * n + 1.0) / k,
                l_mn: None,
                s_mn: None,
            }
        }
        FacetFamily::Octagon8 => {
            let m = 5.0 * sqrt(1.0 - z2);
            let n = sqrt(25.0 - 9.0 * z2);
            let l = m / n;
            let s = octagon_closure(l);
            AuxiliaryQuantities {
                m,
                n,
                p: 1.0 - l * l * s / 4.0,
                q: 1.0 - s / 4.0,
                l_mn: Some(l),
                s_mn: Some(s),
            }
        }
    }
}

fn octagon_closure(l: f64) -> f64 {
    5.0 - l * l * l - (1.0 + l - l * l) * sqrt(5.0 + 2.0 * l + l * l)
}

/// Projected arc angles of one large-pitch and one small-pitch side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectedArcs {
    /// `alpha_L = acos(P)`.
    pub large: f64,
    /// `alpha_S = acos(Q)`.
    pub small: f64,
}

/// Projected arc angles from the closed-form `P`, `Q`.
pub fn projected_arcs(family: FacetFamily, z: ExtensionRatio) -> Result<ProjectedArcs> {
    let aux = auxiliary(family, z);
    Ok(ProjectedArcs {
        large: acos_checked(aux.p)?,
        small: acos_checked(aux.q)?,
    })
}

/// Closed-form cylinder radius `r / r0`.
pub fn radius_ratio(family: FacetFamily, z: ExtensionRatio) -> f64 {
    let aux = auxiliary(family, z);
    match family {
        FacetFamily::Square4 => aux.n / 6.0 * sqrt(aux.n * (aux.m + aux.n) / 3.0),
        FacetFamily::Hexagon6 => 0.5 * sqrt((aux.n * (aux.m + 2.0 * aux.n) - 1.0) / 2.0),
        FacetFamily::Octagon8 => {
            let s = aux.s_mn.unwrap_or_else(|| octagon_closure(aux.m / aux.n));
            aux.n / 5.0 * sqrt(2.0 * (2.0 - SQRT_2) / s)
        }
    }
}

/// Closure residual of the projected arcs at radius ratio `rho`.
///
/// Decreasing in `rho`; zero at the cylinder radius. Chords longer than the
/// diameter count as half-turns.
pub fn arc_closure_residual(family: FacetFamily, z: ExtensionRatio, rho: f64) -> f64 {
    let helix = helix_angles(family, z);
    let side = family.side_ratio();
    let arc = |incline: f64| {
        let chord = side * cos(incline);
        acos_clamped(1.0 - chord * chord / (2.0 * rho * rho))
    };
    family.large_pitch_sides() as f64 * arc(helix.phi)
        + family.small_pitch_sides() as f64 * arc(helix.phi_prime)
        - TAU
}

/// Cylinder radius `r / r0` by bisection on the projected-arc closure.
///
/// Independent of the closed forms: it only uses the helix angles.
pub fn radius_oracle(family: FacetFamily, z: ExtensionRatio) -> Result<f64> {
    const MAX_ITERATIONS: usize = 200;
    const TOLERANCE: f64 = 1e-12;
    let f = |rho| arc_closure_residual(family, z, rho);
    let (mut lo, mut hi) = (1e-6, 2.0);
    let (f_lo, f_hi) = (f(lo), f(hi));
    if !(f_lo > 0.0 && f_hi < 0.0) {
        return Err(Error::Consistency(alloc::format!(
            "radius root not bracketed in (1e-6, 2]: residuals {f_lo}, {f_hi}"
        )));
    }
    for _ in 0..MAX_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < TOLERANCE {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Twisting angle of one unit cell, `c * acos(PQ + sqrt(1-P^2) sqrt(1-Q^2))`
/// with `c` the edge count.
///
/// Evaluated as `c * |acos Q - acos P|`, the same quantity without the
/// cancellation of arccos near 1.
pub fn twist_per_cell(family: FacetFamily, z: ExtensionRatio) -> Result<f64> {
    let arcs = projected_arcs(family, z)?;
    Ok(family.edge_count() as f64 * (arcs.small - arcs.large).abs())
}

/// Twist of the whole spring, `n * theta_tilde`.
pub fn total_twist(spec: &SpringSpec, z: ExtensionRatio) -> Result<f64> {
    Ok(f64::from(spec.cells) * twist_per_cell(spec.family, z)?)
}

/// Physical extension in mm to extension ratio, `z / (lambda l_f)`.
pub fn extension_to_ratio(spec: &SpringSpec, z_mm: f64) -> Result<ExtensionRatio> {
    let limit = spec.helix_length();
    if !(z_mm >= 0.0 && z_mm < limit) {
        return Err(domain("z", z_mm, "0 <= z < lambda * l_f"));
    }
    ExtensionRatio::new(z_mm / limit)
}

/// Inverse of [`extension_to_ratio`].
pub fn ratio_to_extension(spec: &SpringSpec, z: ExtensionRatio) -> f64 {
    z.0 * spec.helix_length()
}

/// A labelled vertex of the unit cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellVertex {
    /// `'A'`, `'B'`, ...
    pub label: char,
    /// Position in mm.
    pub position: Vec3,
}

/// Vertex coordinates of one facet on the equivalent cylinder.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitCellFrame {
    /// Cylinder radius in mm.
    pub r: f64,
    /// Side length in mm.
    pub a: f64,
    /// Vertices in boundary order, starting at `A = (r, 0, 0)`.
    pub vertices: Vec<CellVertex>,
}

impl UnitCellFrame {
    /// Position of the vertex with the given label.
    pub fn vertex(&self, label: char) -> Option<Vec3> {
        self.vertices
            .iter()
            .find(|v| v.label == label)
            .map(|v| v.position)
    }

    fn at(&self, label: char) -> Vec3 {
        // labels are generated together with the frame
        self.vertex(label).expect("unit cell label")
    }

    /// Polygon sides as `(from, to, length)`, closing back to `A`.
    pub fn edges(&self) -> impl Iterator<Item = (char, char, f64)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| {
            let (p, q) = (self.vertices[i], self.vertices[(i + 1) % n]);
            (p.label, q.label, p.position.distance(q.position))
        })
    }
}

/// Unit-cell vertex coordinates at extension `z` for circumradius `r0`.
///
/// The large-pitch run `B, C, ...` sits at polar angles `2 pi - k alpha_L`
/// and heights `k a z`; the remaining vertices are reached from `A` backwards
/// along the small-pitch helix at `m alpha_S` and heights `m a sin(phi')`.
pub fn unit_cell_vertices(
    family: FacetFamily,
    z: ExtensionRatio,
    r0: f64,
) -> Result<UnitCellFrame> {
    let a = side_length(family, r0)?;
    let r = radius_ratio(family, z) * r0;
    let arcs = projected_arcs(family, z)?;
    let edges = family.edge_count();
    let large = family.large_pitch_sides();
    let rise_large = a * z.0;
    let rise_small = a * z.0 * family.pitch_ratio();

    let vertices = (0..edges)
        .map(|i| {
            let position = if i <= large {
                let k = i as f64;
                Vec3::cylindrical(r, if i == 0 { 0.0 } else { TAU - k * arcs.large }, k * rise_large)
            } else {
                let m = (edges - i) as f64;
                Vec3::cylindrical(r, m * arcs.small, m * rise_small)
            };
            CellVertex {
                label: char::from(b'A' + i as u8),
                position,
            }
        })
        .collect();

    let frame = UnitCellFrame { r, a, vertices };
    for (p, q, len) in frame.edges() {
        if (len - a).abs() > 1e-9 * a {
            return Err(Error::Consistency(alloc::format!(
                "edge {p}{q} has length {len}, expected {a}"
            )));
        }
    }
    Ok(frame)
}

/// Folding angle of the primary creases, `phi + phi'`.
pub fn folding_angle_primary(family: FacetFamily, z: ExtensionRatio) -> f64 {
    let h = helix_angles(family, z);
    h.phi + h.phi_prime
}

/// Analytic `d(phi + phi') / d z_tilde`.
pub fn folding_angle_primary_rate(family: FacetFamily, z: ExtensionRatio) -> f64 {
    let k = family.pitch_ratio();
    let z = z.0;
    1.0 / sqrt(1.0 - z * z) + k / sqrt(1.0 - k * k * z * z)
}

/// The two diagonal rays whose angle at the facet centre defines the
/// buckling angle.
fn buckle_construction(family: FacetFamily) -> ([char; 4], (char, char)) {
    match family {
        FacetFamily::Square4 => (['A', 'B', 'C', 'D'], ('A', 'C')),
        FacetFamily::Hexagon6 => (['A', 'C', 'D', 'F'], ('A', 'D')),
        FacetFamily::Octagon8 => (['A', 'D', 'E', 'H'], ('A', 'E')),
    }
}

/// Buckling angle `omega_B` of a facet: `pi` minus the angle between two
/// opposite corners seen from the centre of a four-vertex sub-polygon.
pub fn folding_angle_buckle(family: FacetFamily, z: ExtensionRatio, r0: f64) -> Result<f64> {
    let frame = unit_cell_vertices(family, z, r0)?;
    buckle_from_frame(&frame, family)
}

fn buckle_from_frame(frame: &UnitCellFrame, family: FacetFamily) -> Result<f64> {
    let (quad, (p, q)) = buckle_construction(family);
    let corners = quad.map(|l| frame.at(l));
    let centre = Vec3::centroid(&corners);
    supplement_angle(frame.at(p), centre, frame.at(q))
}

/// The second diagonal of the buckling construction, which yields the same
/// angle by symmetry (`B O D` for squares, `C O F`, `D O H`).
pub fn folding_angle_buckle_alternate(
    family: FacetFamily,
    z: ExtensionRatio,
    r0: f64,
) -> Result<f64> {
    let frame = unit_cell_vertices(family, z, r0)?;
    let (quad, _) = buckle_construction(family);
    let centre = Vec3::centroid(&quad.map(|l| frame.at(l)));
    let (p, q) = match family {
        FacetFamily::Square4 => ('B', 'D'),
        FacetFamily::Hexagon6 => ('C', 'F'),
        FacetFamily::Octagon8 => ('D', 'H'),
    };
    supplement_angle(frame.at(p), centre, frame.at(q))
}

/// Folding angle `omega_2` along the secondary crease of a rigidized facet.
///
/// Squares fold along `AC` (angle `B O_AC D`), hexagons along `AD`
/// (angle `O_BC O_AD O_EF`), octagons along `AE` (angle `C O_AE G`).
pub fn folding_angle_secondary(family: FacetFamily, z: ExtensionRatio, r0: f64) -> Result<f64> {
    let frame = unit_cell_vertices(family, z, r0)?;
    secondary_from_frame(&frame, family)
}

fn secondary_from_frame(frame: &UnitCellFrame, family: FacetFamily) -> Result<f64> {
    let v = |l| frame.at(l);
    match family {
        FacetFamily::Square4 => supplement_angle(v('B'), v('A').midpoint(v('C')), v('D')),
        FacetFamily::Hexagon6 => supplement_angle(
            v('B').midpoint(v('C')),
            v('A').midpoint(v('D')),
            v('E').midpoint(v('F')),
        ),
        FacetFamily::Octagon8 => supplement_angle(v('C'), v('A').midpoint(v('E')), v('G')),
    }
}

/// Every kinematic quantity at one extension ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometrySample {
    /// Extension ratio.
    pub z_tilde: f64,
    /// Large-pitch helix angle.
    pub phi: f64,
    /// Small-pitch helix angle.
    pub phi_prime: f64,
    /// `r / r0`.
    pub r_ratio: f64,
    /// Twist per cell.
    pub theta_cell: f64,
    /// Primary folding angle.
    pub omega1: f64,
    /// Facet buckling angle.
    pub omega_b: f64,
    /// Secondary folding angle.
    pub omega2: f64,
}

/// Evaluates the whole kinematic state. The angles do not depend on `r0`.
pub fn sample(family: FacetFamily, z: ExtensionRatio) -> Result<GeometrySample> {
    let helix = helix_angles(family, z);
    let frame = unit_cell_vertices(family, z, 1.0)?;
    Ok(GeometrySample {
        z_tilde: z.0,
        phi: helix.phi,
        phi_prime: helix.phi_prime,
        r_ratio: radius_ratio(family, z),
        theta_cell: twist_per_cell(family, z)?,
        omega1: helix.phi + helix.phi_prime,
        omega_b: buckle_from_frame(&frame, family)?,
        omega2: secondary_from_frame(&frame, family)?,
    })
}
