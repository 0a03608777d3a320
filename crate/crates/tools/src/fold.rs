//! FOLD 1.1 export and import.
//!
//! Standard keys carry the flat geometry and M/V/B assignments. Keys under the
//! `ospring:` namespace carry what FOLD has no slot for: edge kinds, ribbon
//! indices and the spring the pattern folds into.

use origami_spring::pattern::{Assignment, Chirality, CreasePattern, Edge, EdgeKind, Point2};
use origami_spring::{FacetFamily, Variant};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Serialize, Deserialize)]
struct FoldDocument {
    file_spec: f64,
    file_creator: String,
    file_classes: Vec<String>,
    frame_classes: Vec<String>,
    frame_unit: String,
    vertices_coords: Vec<[f64; 2]>,
    edges_vertices: Vec<[usize; 2]>,
    edges_assignment: Vec<String>,
    #[serde(rename = "ospring:edges_kind")]
    edges_kind: Vec<String>,
    #[serde(rename = "ospring:edges_ribbon")]
    edges_ribbon: Vec<usize>,
    #[serde(rename = "ospring:spring", default, skip_serializing_if = "Option::is_none")]
    spring: Option<SpringMeta>,
}

#[derive(Debug, Serialize, Deserialize)]
struct SpringMeta {
    family: usize,
    variant: String,
    r0: f64,
    cells: u32,
    chirality: String,
    ribbon_angles_deg: Vec<f64>,
}

fn kind_name(kind: EdgeKind) -> &'static str {
    match kind {
        EdgeKind::Primary => "primary",
        EdgeKind::Secondary => "secondary",
        EdgeKind::Border => "border",
    }
}

fn kind_from(name: &str) -> Option<EdgeKind> {
    match name {
        "primary" => Some(EdgeKind::Primary),
        "secondary" => Some(EdgeKind::Secondary),
        "border" => Some(EdgeKind::Border),
        _ => None,
    }
}

/// One FOLD document holding every pattern; vertex and ribbon indices of
/// later patterns are shifted past earlier ones. Spring metadata is taken
/// from the first pattern.
pub fn export_fold(patterns: &[CreasePattern]) -> String {
    let mut doc = FoldDocument {
        file_spec: 1.1,
        file_creator: "ospring".into(),
        file_classes: vec!["singleModel".into()],
        frame_classes: vec!["creasePattern".into()],
        frame_unit: "mm".into(),
        vertices_coords: Vec::new(),
        edges_vertices: Vec::new(),
        edges_assignment: Vec::new(),
        edges_kind: Vec::new(),
        edges_ribbon: Vec::new(),
        spring: None,
    };
    let mut angles = Vec::new();
    for p in patterns {
        let (v0, r0) = (doc.vertices_coords.len(), angles.len());
        doc.vertices_coords.extend(p.vertices.iter().map(|v| [v.x, v.y]));
        for e in &p.edges {
            doc.edges_vertices.push([e.vertices[0] + v0, e.vertices[1] + v0]);
            doc.edges_assignment.push(e.assignment.code().to_string());
            doc.edges_kind.push(kind_name(e.kind).into());
            doc.edges_ribbon.push(e.ribbon + r0);
        }
        angles.extend_from_slice(&p.ribbon_angles);
    }
    if let Some(first) = patterns.first() {
        doc.spring = Some(SpringMeta {
            family: first.family.edge_count(),
            variant: first.variant.to_string(),
            r0: first.r0,
            cells: first.cells,
            chirality: match first.chirality {
                Chirality::Right => "right",
                Chirality::Left => "left",
            }
            .into(),
            ribbon_angles_deg: angles,
        });
    }
    let mut text = serde_json::to_string_pretty(&doc).expect("FOLD document serializes");
    text.push('\n');
    text
}

/// Reads a document written by [`export_fold`].
pub fn parse_fold(text: &str) -> Result<CreasePattern> {
    let doc: FoldDocument = serde_json::from_str(text)?;
    let invalid = |m: String| CliError::Data(format!("FOLD: {m}"));
    let meta = doc
        .spring
        .ok_or_else(|| invalid("missing `ospring:spring` metadata".into()))?;
    let n = doc.edges_vertices.len();
    if doc.edges_assignment.len() != n || doc.edges_kind.len() != n || doc.edges_ribbon.len() != n
    {
        return Err(invalid("per-edge arrays differ in length".into()));
    }
    let family = FacetFamily::from_edge_count(meta.family)
        .ok_or_else(|| invalid(format!("unknown family {}", meta.family)))?;
    let variant = match meta.variant.as_str() {
        "IOS" => Variant::Ios,
        "RIOS" => Variant::Rios,
        other => return Err(invalid(format!("unknown variant `{other}`"))),
    };
    let chirality = match meta.chirality.as_str() {
        "right" => Chirality::Right,
        "left" => Chirality::Left,
        other => return Err(invalid(format!("unknown chirality `{other}`"))),
    };
    let mut edges = Vec::with_capacity(n);
    for i in 0..n {
        let code = &doc.edges_assignment[i];
        let assignment = code
            .chars()
            .next()
            .filter(|_| code.len() == 1)
            .and_then(Assignment::from_code)
            .ok_or_else(|| invalid(format!("edge {i}: unsupported assignment `{code}`")))?;
        let kind = kind_from(&doc.edges_kind[i])
            .ok_or_else(|| invalid(format!("edge {i}: unknown kind `{}`", doc.edges_kind[i])))?;
        edges.push(Edge {
            vertices: doc.edges_vertices[i],
            assignment,
            kind,
            ribbon: doc.edges_ribbon[i],
        });
    }
    Ok(CreasePattern {
        family,
        variant,
        r0: meta.r0,
        cells: meta.cells,
        chirality,
        ribbon_angles: meta.ribbon_angles_deg,
        vertices: doc
            .vertices_coords
            .iter()
            .map(|&[x, y]| Point2 { x, y })
            .collect(),
        edges,
    })
}
