//! Flat crease patterns for the paper ribbons of a spring.
//!
//! A ribbon is a chain of regular polygons sharing opposite sides along the
//! x axis: one anchor facet, where the ribbons overlap at the spring's end,
//! followed by two facets per unit cell. The shared sides are the primary
//! creases, folded alternately mountain and valley. RIOS facets additionally
//! carry one long diagonal as a secondary crease.

use alloc::vec::Vec;

use crate::error::{domain, Result};
use crate::geometry::{side_length, FacetFamily, SpringSpec, Variant};
use crate::math::{cos, sin, sqrt, PI};

/// Fold direction of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Assignment {
    /// Mountain fold.
    Mountain,
    /// Valley fold.
    Valley,
    /// Paper outline.
    Border,
}

impl Assignment {
    /// Single-letter code used by FOLD files.
    pub fn code(self) -> char {
        match self {
            Self::Mountain => 'M',
            Self::Valley => 'V',
            Self::Border => 'B',
        }
    }

    /// Inverse of [`Assignment::code`].
    pub fn from_code(c: char) -> Option<Self> {
        match c {
            'M' => Some(Self::Mountain),
            'V' => Some(Self::Valley),
            'B' => Some(Self::Border),
            _ => None,
        }
    }
}

/// Structural role of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    /// Shared side of neighbouring facets.
    Primary,
    /// Facet diagonal (RIOS).
    Secondary,
    /// Outline.
    Border,
}

/// Handedness of the folded spring; left-handed patterns are mirror images.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Chirality {
    /// Default handedness.
    #[default]
    Right,
    /// Mirror image.
    Left,
}

/// A point of the flat sheet, mm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2 {
    /// Abscissa.
    pub x: f64,
    /// Ordinate.
    pub y: f64,
}

impl Point2 {
    /// Euclidean distance.
    pub fn distance(self, other: Self) -> f64 {
        sqrt((self.x - other.x) * (self.x - other.x) + (self.y - other.y) * (self.y - other.y))
    }
}

/// An edge of the crease graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    /// Indices into the vertex list.
    pub vertices: [usize; 2],
    /// Fold direction.
    pub assignment: Assignment,
    /// Structural role.
    pub kind: EdgeKind,
    /// Ribbon the edge belongs to.
    pub ribbon: usize,
}

/// Vertices and edges of one or more ribbons, with the spring they fold into.
#[derive(Debug, Clone, PartialEq)]
pub struct CreasePattern {
    /// Facet shape.
    pub family: FacetFamily,
    /// IOS or RIOS.
    pub variant: Variant,
    /// Facet circumradius, mm.
    pub r0: f64,
    /// Unit cells per ribbon.
    pub cells: u32,
    /// Handedness.
    pub chirality: Chirality,
    /// Assembly angle of each ribbon about the spring axis, degrees.
    pub ribbon_angles: Vec<f64>,
    /// Vertex coordinates.
    pub vertices: Vec<Point2>,
    /// Edges in generation order; primaries appear in chain order.
    pub edges: Vec<Edge>,
}

impl CreasePattern {
    /// Length of one edge.
    pub fn edge_length(&self, edge: &Edge) -> f64 {
        self.vertices[edge.vertices[0]].distance(self.vertices[edge.vertices[1]])
    }

    /// Summed drawn length of edges of one kind.
    pub fn length_of(&self, kind: EdgeKind) -> f64 {
        self.edges
            .iter()
            .filter(|e| e.kind == kind)
            .map(|e| self.edge_length(e))
            .sum()
    }

    /// Secondary length as counted by the energy model: `2 r0` per diagonal.
    pub fn secondary_bookkeeping_length(&self) -> f64 {
        self.count_kind(EdgeKind::Secondary) as f64 * 2.0 * self.r0
    }

    /// Number of edges of one kind.
    pub fn count_kind(&self, kind: EdgeKind) -> usize {
        self.edges.iter().filter(|e| e.kind == kind).count()
    }

    /// Number of edges with an assignment.
    pub fn count_assignment(&self, assignment: Assignment) -> usize {
        self.edges.iter().filter(|e| e.assignment == assignment).count()
    }

    /// Number of ribbons.
    pub fn ribbon_count(&self) -> usize {
        self.ribbon_angles.len()
    }
}

/// Vertex indices `(i, j)` of the secondary diagonal of a facet whose corner
/// `k` sits at angle `pi/E + 2 pi k / E`.
///
/// Both choices join opposite corners, so the crease passes through the facet
/// centre like the line across which the secondary folding angle is measured.
pub fn secondary_diagonal(family: FacetFamily, chirality: Chirality) -> (usize, usize) {
    let e = family.edge_count();
    match chirality {
        Chirality::Right => (0, e / 2),
        Chirality::Left => (e / 2 - 1, e - 1),
    }
}

fn corner(family: FacetFamily, r0: f64, centre_x: f64, k: usize) -> Point2 {
    let e = family.edge_count() as f64;
    let angle = PI / e + 2.0 * PI * k as f64 / e;
    Point2 {
        x: centre_x + r0 * cos(angle),
        y: r0 * sin(angle),
    }
}

fn check_inputs(r0: f64, cells: u32) -> Result<()> {
    if cells == 0 {
        return Err(domain("cells", 0.0, "at least one cell"));
    }
    if !(r0.is_finite() && r0 > 0.0) {
        return Err(domain("r0", r0, "positive radius"));
    }
    Ok(())
}

/// One ribbon of `2 n + 1` facets with `2 n` alternating primary creases.
pub fn build_ribbon(
    family: FacetFamily,
    variant: Variant,
    r0: f64,
    cells: u32,
    chirality: Chirality,
) -> Result<CreasePattern> {
    check_inputs(r0, cells)?;
    let e = family.edge_count();
    let pitch = 2.0 * r0 * cos(PI / e as f64);
    let facets = 2 * cells as usize + 1;
    let diagonal = secondary_diagonal(family, Chirality::Right);
    // left side of a facet: corners e/2 - 1 (top) and e/2 (bottom);
    // right side: corners 0 (top) and e - 1 (bottom)
    let (left_top, left_bottom) = (e / 2 - 1, e / 2);

    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut previous_right: Option<(usize, usize)> = None;
    let add = |edges: &mut Vec<Edge>, a: usize, b: usize, assignment, kind| {
        edges.push(Edge {
            vertices: [a, b],
            assignment,
            kind,
            ribbon: 0,
        })
    };

    for facet in 0..facets {
        let cx = facet as f64 * pitch;
        let mut ids = alloc::vec![usize::MAX; e];
        if let Some((top, bottom)) = previous_right {
            ids[left_top] = top;
            ids[left_bottom] = bottom;
        }
        for (k, id) in ids.iter_mut().enumerate() {
            if *id == usize::MAX {
                *id = vertices.len();
                vertices.push(corner(family, r0, cx, k));
            }
        }
        if facet == 0 {
            add(&mut edges, ids[left_top], ids[left_bottom], Assignment::Border, EdgeKind::Border);
        }
        // upper and lower outline, walking from the left side to the right side
        for k in (0..left_top).rev() {
            add(&mut edges, ids[k + 1], ids[k], Assignment::Border, EdgeKind::Border);
        }
        for k in left_bottom..e - 1 {
            add(&mut edges, ids[k], ids[k + 1], Assignment::Border, EdgeKind::Border);
        }
        let crease = if facet % 2 == 0 {
            Assignment::Mountain
        } else {
            Assignment::Valley
        };
        if facet + 1 < facets {
            add(&mut edges, ids[0], ids[e - 1], crease, EdgeKind::Primary);
        } else {
            add(&mut edges, ids[0], ids[e - 1], Assignment::Border, EdgeKind::Border);
        }
        if variant == Variant::Rios && facet > 0 {
            // opposite sense to the crease on the facet's left side
            add(&mut edges, ids[diagonal.0], ids[diagonal.1], crease, EdgeKind::Secondary);
        }
        previous_right = Some((ids[0], ids[e - 1]));
    }

    if chirality == Chirality::Left {
        for v in &mut vertices {
            v.y = -v.y;
        }
    }
    Ok(CreasePattern {
        family,
        variant,
        r0,
        cells,
        chirality,
        ribbon_angles: alloc::vec![0.0],
        vertices,
        edges,
    })
}

/// All `n_pr` ribbons of a spring, laid out side by side without overlap.
///
/// Ribbon `k` is assembled at `k * 180 / n_pr` degrees about the spring axis.
pub fn build_spring_pattern(spec: &SpringSpec, chirality: Chirality) -> Result<CreasePattern> {
    let ribbon = build_ribbon(spec.family(), spec.variant(), spec.r0(), spec.cells(), chirality)?;
    let count = spec.family().ribbon_count();
    let spacing = 2.5 * spec.r0();
    let mut out = CreasePattern {
        ribbon_angles: (0..count).map(|k| k as f64 * 180.0 / count as f64).collect(),
        vertices: Vec::with_capacity(ribbon.vertices.len() * count),
        edges: Vec::with_capacity(ribbon.edges.len() * count),
        ..ribbon.clone()
    };
    for k in 0..count {
        let offset = out.vertices.len();
        let dy = k as f64 * spacing;
        out.vertices
            .extend(ribbon.vertices.iter().map(|p| Point2 { x: p.x, y: p.y + dy }));
        out.edges.extend(ribbon.edges.iter().map(|e| Edge {
            vertices: [e.vertices[0] + offset, e.vertices[1] + offset],
            ribbon: k,
            ..*e
        }));
    }
    Ok(out)
}

/// A broken pattern invariant.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// Edge refers to a vertex that does not exist, or to one vertex twice.
    BadEdge {
        /// Edge index.
        edge: usize,
    },
    /// Two vertices closer than the tolerance.
    DuplicateVertex {
        /// First vertex index.
        first: usize,
        /// Second vertex index.
        second: usize,
    },
    /// Two edges cross or overlap away from a shared vertex.
    Intersection {
        /// First edge index.
        first: usize,
        /// Second edge index.
        second: usize,
    },
    /// Consecutive primary creases of a ribbon share a fold direction, or a
    /// primary crease is not a fold.
    AlternationBreak {
        /// Ribbon index.
        ribbon: usize,
        /// Edge index of the offending crease.
        edge: usize,
    },
    /// Summed crease length differs from the spring geometry.
    LengthMismatch {
        /// Edge kind checked.
        kind: EdgeKind,
        /// `2 a n n_pr` or `4 r0 n n_pr` for the ribbons present.
        expected: f64,
        /// Measured on the pattern.
        actual: f64,
    },
}

/// Distance under which two vertices count as coincident, mm.
pub const VERTEX_TOLERANCE: f64 = 1e-9;

/// Lists every invariant violation; an empty list means the pattern is valid.
pub fn validate_pattern(pattern: &CreasePattern) -> Vec<Violation> {
    let mut out = Vec::new();
    let nv = pattern.vertices.len();
    let mut edges_ok = true;
    for (i, e) in pattern.edges.iter().enumerate() {
        if e.vertices[0] >= nv || e.vertices[1] >= nv || e.vertices[0] == e.vertices[1] {
            out.push(Violation::BadEdge { edge: i });
            edges_ok = false;
        }
    }
    for i in 0..nv {
        for j in i + 1..nv {
            if pattern.vertices[i].distance(pattern.vertices[j]) < VERTEX_TOLERANCE {
                out.push(Violation::DuplicateVertex { first: i, second: j });
            }
        }
    }
    if !edges_ok {
        return out;
    }
    let seg = |e: &Edge| (pattern.vertices[e.vertices[0]], pattern.vertices[e.vertices[1]]);
    for i in 0..pattern.edges.len() {
        for j in i + 1..pattern.edges.len() {
            let (a, b) = (&pattern.edges[i], &pattern.edges[j]);
            let shared = a.vertices.iter().filter(|v| b.vertices.contains(v)).count();
            if shared == 2 || segments_conflict(seg(a), seg(b), shared == 1) {
                out.push(Violation::Intersection { first: i, second: j });
            }
        }
    }
    for ribbon in 0..pattern.ribbon_count() {
        let mut last: Option<Assignment> = None;
        for (i, e) in pattern.edges.iter().enumerate() {
            if e.ribbon != ribbon || e.kind != EdgeKind::Primary {
                continue;
            }
            if e.assignment == Assignment::Border || last == Some(e.assignment) {
                out.push(Violation::AlternationBreak { ribbon, edge: i });
            }
            last = Some(e.assignment);
        }
    }
    if let Ok(a) = side_length(pattern.family, pattern.r0) {
        let per_ribbon = pattern.ribbon_count() as f64 * f64::from(pattern.cells);
        let expected_secondary = match pattern.variant {
            Variant::Ios => 0.0,
            Variant::Rios => 4.0 * pattern.r0 * per_ribbon,
        };
        for (kind, expected, actual) in [
            (EdgeKind::Primary, 2.0 * a * per_ribbon, pattern.length_of(EdgeKind::Primary)),
            (EdgeKind::Secondary, expected_secondary, pattern.secondary_bookkeeping_length()),
        ] {
            if (expected - actual).abs() > 1e-9 * expected.max(1.0) {
                out.push(Violation::LengthMismatch { kind, expected, actual });
            }
        }
    }
    out
}

fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

fn on_segment(p: Point2, (a, b): (Point2, Point2)) -> bool {
    let tol = VERTEX_TOLERANCE * (1.0 + a.distance(b));
    orient(a, b, p).abs() <= tol * a.distance(b)
        && p.x >= a.x.min(b.x) - tol
        && p.x <= a.x.max(b.x) + tol
        && p.y >= a.y.min(b.y) - tol
        && p.y <= a.y.max(b.y) + tol
}

/// Whether two segments touch anywhere other than one shared endpoint.
fn segments_conflict(s: (Point2, Point2), t: (Point2, Point2), share_endpoint: bool) -> bool {
    if share_endpoint {
        // adjacent edges conflict only when collinear and overlapping
        let collinear = orient(s.0, s.1, t.0).abs() <= VERTEX_TOLERANCE * s.0.distance(s.1)
            && orient(s.0, s.1, t.1).abs() <= VERTEX_TOLERANCE * s.0.distance(s.1);
        if !collinear {
            return false;
        }
        let (sd, td) = (s.1.distance(s.0), t.1.distance(t.0));
        let dot = (s.1.x - s.0.x) * (t.1.x - t.0.x) + (s.1.y - s.0.y) * (t.1.y - t.0.y);
        // pointing away from each other through the shared vertex is fine
        let s_from = if s.0 == t.0 || s.0 == t.1 { 1.0 } else { -1.0 };
        let t_from = if t.0 == s.0 || t.0 == s.1 { 1.0 } else { -1.0 };
        return s_from * t_from * dot > 0.0 && sd > 0.0 && td > 0.0;
    }
    let d1 = orient(t.0, t.1, s.0);
    let d2 = orient(t.0, t.1, s.1);
    let d3 = orient(s.0, s.1, t.0);
    let d4 = orient(s.0, s.1, t.1);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    on_segment(s.0, t) || on_segment(s.1, t) || on_segment(t.0, s) || on_segment(t.1, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ribbon(f: FacetFamily, v: Variant, n: u32) -> CreasePattern {
        build_ribbon(f, v, 10.0, n, Chirality::Right).unwrap()
    }

    #[test]
    fn square_single_cell() {
        let p = ribbon(FacetFamily::Square4, Variant::Ios, 1);
        assert_eq!(p.count_kind(EdgeKind::Primary), 2);
        for e in p.edges.iter().filter(|e| e.kind == EdgeKind::Primary) {
            assert!((p.edge_length(e) - 14.1421).abs() < 1e-4);
        }
        assert_eq!(p.count_kind(EdgeKind::Secondary), 0);
        assert_eq!(p.vertices.len(), 8);
    }

    #[test]
    fn rios_square_adds_diagonals() {
        let p = ribbon(FacetFamily::Square4, Variant::Rios, 1);
        let diagonals: Vec<_> = p.edges.iter().filter(|e| e.kind == EdgeKind::Secondary).collect();
        assert_eq!(diagonals.len(), 2);
        for d in diagonals {
            assert!((p.edge_length(d) - 20.0).abs() < 1e-12);
        }
    }

    #[test]
    fn octagon_sides_equal() {
        let p = ribbon(FacetFamily::Octagon8, Variant::Ios, 2);
        for e in p.edges.iter().filter(|e| e.kind != EdgeKind::Secondary) {
            assert!((p.edge_length(e) - 7.6537).abs() < 1e-4);
        }
    }

    #[test]
    fn generated_ribbons_are_valid() {
        for f in FacetFamily::ALL {
            for v in Variant::ALL {
                for n in [1, 2, 4, 8] {
                    for c in [Chirality::Right, Chirality::Left] {
                        let p = build_ribbon(f, v, 10.0, n, c).unwrap();
                        assert_eq!(validate_pattern(&p), [], "{f} {v} {n} {c:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn zero_cells_rejected() {
        assert!(build_ribbon(FacetFamily::Square4, Variant::Ios, 10.0, 0, Chirality::Right).is_err());
    }

    #[test]
    fn duplicate_vertex_reported() {
        let mut p = ribbon(FacetFamily::Square4, Variant::Ios, 1);
        let v = p.vertices[0];
        p.vertices.push(v);
        assert!(validate_pattern(&p)
            .iter()
            .any(|x| matches!(x, Violation::DuplicateVertex { .. })));
    }

    #[test]
    fn alternation_break_reported() {
        let mut p = ribbon(FacetFamily::Square4, Variant::Ios, 1);
        for e in p.edges.iter_mut().filter(|e| e.kind == EdgeKind::Primary) {
            e.assignment = Assignment::Mountain;
        }
        assert!(validate_pattern(&p)
            .iter()
            .any(|x| matches!(x, Violation::AlternationBreak { .. })));
    }

    #[test]
    fn crossing_edges_reported() {
        let mut p = ribbon(FacetFamily::Square4, Variant::Ios, 1);
        // both diagonals of the anchor facet, crossing at its centre
        let (a, b) = secondary_diagonal(FacetFamily::Square4, Chirality::Right);
        let (c, d) = secondary_diagonal(FacetFamily::Square4, Chirality::Left);
        for (i, j) in [(a, b), (c, d)] {
            p.edges.push(Edge {
                vertices: [i, j],
                assignment: Assignment::Valley,
                kind: EdgeKind::Border,
                ribbon: 0,
            });
        }
        assert!(validate_pattern(&p)
            .iter()
            .any(|x| matches!(x, Violation::Intersection { .. })));
    }

    #[test]
    fn spring_pattern_ribbons_and_lengths() {
        for (f, angle) in [
            (FacetFamily::Square4, 90.0),
            (FacetFamily::Hexagon6, 60.0),
            (FacetFamily::Octagon8, 45.0),
        ] {
            let spec = SpringSpec::new(f, Variant::Rios, 10.0, 8).unwrap();
            let p = build_spring_pattern(&spec, Chirality::Right).unwrap();
            assert_eq!(p.ribbon_count(), f.ribbon_count());
            assert_eq!(p.ribbon_angles[1], angle);
            let lengths = crate::mechanics::crease_lengths(&spec);
            assert!((p.length_of(EdgeKind::Primary) - lengths.primary).abs() < 1e-9);
            assert!((p.secondary_bookkeeping_length() - lengths.secondary).abs() < 1e-9);
            assert!((p.length_of(EdgeKind::Secondary) - lengths.secondary).abs() < 1e-9);
            assert_eq!(validate_pattern(&p), []);
        }
    }

    #[test]
    fn chirality_mirrors() {
        let r = ribbon(FacetFamily::Hexagon6, Variant::Rios, 2);
        let l = build_ribbon(FacetFamily::Hexagon6, Variant::Rios, 10.0, 2, Chirality::Left).unwrap();
        assert_eq!(r.edges, l.edges);
        for (a, b) in r.vertices.iter().zip(&l.vertices) {
            assert_eq!((a.x, a.y), (b.x, -b.y));
        }
    }
}
