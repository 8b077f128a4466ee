//! Dimer models on a disk: the data, its validation, and an indexed view used
//! by strand extraction and the path oracle.

mod strands;

pub use strands::{
    consistency_check, decorated_permutation, strand_sets, strands, BadConfiguration, Strand, StrandDiagram,
    StrandEnd, StrandRef, StrandSets,
};

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = usize;
pub type ArrowId = usize;

/// Orientation class of a face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    /// counter-clockwise
    Cc,
    /// clockwise
    Cl,
}

impl Phase {
    pub fn other(self) -> Phase {
        match self {
            Phase::Cc => Phase::Cl,
            Phase::Cl => Phase::Cc,
        }
    }
    fn slot(self) -> usize {
        self as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub id: ArrowId,
    pub src: VertexId,
    pub dst: VertexId,
}

/// A quiver with faces. `boundary` lists the boundary vertices clockwise,
/// starting at boundary vertex 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimerModel {
    pub boundary: Vec<VertexId>,
    pub vertices: Vec<VertexId>,
    pub arrows: Vec<Arrow>,
    pub faces_cc: Vec<Vec<ArrowId>>,
    pub faces_cl: Vec<Vec<ArrowId>>,
}

impl DimerModel {
    pub fn n(&self) -> usize {
        self.boundary.len()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serialises");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, DimerError> {
        serde_json::from_str(text).map_err(|e| DimerError::Json(e.to_string()))
    }

    fn faces(&self) -> impl Iterator<Item = (Phase, usize, &Vec<ArrowId>)> {
        let cc = self.faces_cc.iter().enumerate().map(|(i, f)| (Phase::Cc, i, f));
        cc.chain(self.faces_cl.iter().enumerate().map(|(i, f)| (Phase::Cl, i, f)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Violation {
    DuplicateVertex(VertexId),
    DuplicateArrow(ArrowId),
    UnknownVertex { arrow: ArrowId, vertex: VertexId },
    UnknownBoundaryVertex(VertexId),
    DuplicateBoundaryVertex(VertexId),
    TooFewBoundaryVertices(usize),
    UnknownArrow { phase: Phase, face: usize, arrow: ArrowId },
    Loop(ArrowId),
    FaceNotCycle { phase: Phase, face: usize },
    /// An arrow must lie in one face (boundary) or two (internal).
    ArrowFaceCount { arrow: ArrowId, count: usize },
    /// An internal arrow must lie in one face of each orientation.
    InternalArrowFaceSides(ArrowId),
    IncidenceDisconnected(VertexId),
    NotADisk { euler: i64 },
    /// A one-face arrow whose ends are not neighbouring boundary vertices, or
    /// whose face lies on the wrong side of the boundary.
    BoundaryArrowMisplaced(ArrowId),
    /// Boundary vertices `i` and `i + 1` need exactly one boundary arrow between them.
    BoundaryArrowCount { i: usize, count: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DimerError {
    #[error("invalid dimer model: {0:?}")]
    Invalid(Vec<Violation>),
    #[error("strand from arrow {0} does not terminate")]
    NonterminatingStrand(ArrowId),
    #[error("bad configurations: {0:?}")]
    Bad(Vec<BadConfiguration>),
    #[error("strand diagram has {0} interior closed cycles")]
    InteriorCycles(usize),
    #[error("vertex {0} is not in [n]")]
    VertexOutOfRange(usize),
    #[error("source and target coincide at {0}")]
    EqualVertices(usize),
    #[error("malformed model JSON: {0}")]
    Json(String),
}

/// Checks every clause of the definition, collecting all failures.
pub fn validate_model(m: &DimerModel) -> Result<(), Vec<Violation>> {
    let mut v = Vec::new();
    let mut vertex_set = HashSet::new();
    for &x in &m.vertices {
        if !vertex_set.insert(x) {
            v.push(Violation::DuplicateVertex(x));
        }
    }
    let mut seen = HashSet::new();
    for &b in &m.boundary {
        if !vertex_set.contains(&b) {
            v.push(Violation::UnknownBoundaryVertex(b));
        }
        if !seen.insert(b) {
            v.push(Violation::DuplicateBoundaryVertex(b));
        }
    }
    if m.n() < 2 {
        v.push(Violation::TooFewBoundaryVertices(m.n()));
    }
    let mut arrows: HashMap<ArrowId, &Arrow> = HashMap::new();
    for a in &m.arrows {
        if arrows.insert(a.id, a).is_some() {
            v.push(Violation::DuplicateArrow(a.id));
        }
        for x in [a.src, a.dst] {
            if !vertex_set.contains(&x) {
                v.push(Violation::UnknownVertex { arrow: a.id, vertex: x });
            }
        }
        if a.src == a.dst {
            v.push(Violation::Loop(a.id));
        }
    }

    let mut sides: HashMap<ArrowId, Vec<Phase>> = HashMap::new();
    for (phase, fi, face) in m.faces() {
        let mut ok = !face.is_empty();
        for &id in face {
            if arrows.contains_key(&id) {
                sides.entry(id).or_default().push(phase);
            } else {
                v.push(Violation::UnknownArrow { phase, face: fi, arrow: id });
                ok = false;
            }
        }
        if ok {
            let composes = (0..face.len()).all(|i| arrows[&face[i]].dst == arrows[&face[(i + 1) % face.len()]].src);
            if !composes {
                ok = false;
            }
        }
        if !ok {
            v.push(Violation::FaceNotCycle { phase, face: fi });
        }
    }

    let label: HashMap<VertexId, usize> = m.boundary.iter().enumerate().map(|(i, &b)| (b, i + 1)).collect();
    let n = m.n();
    let mut per_gap = vec![0usize; n + 1];
    for a in &m.arrows {
        let s = sides.get(&a.id).map_or(&[][..], |s| &s[..]);
        match s.len() {
            1 => match boundary_gap(&label, n, a, s[0]) {
                Some(j) => per_gap[j] += 1,
                None => v.push(Violation::BoundaryArrowMisplaced(a.id)),
            },
            2 if s[0] == s[1] => v.push(Violation::InternalArrowFaceSides(a.id)),
            2 => {}
            c => v.push(Violation::ArrowFaceCount { arrow: a.id, count: c }),
        }
    }
    if n >= 2 {
        for (j, &count) in per_gap.iter().enumerate().skip(1) {
            if count != 1 {
                v.push(Violation::BoundaryArrowCount { i: j, count });
            }
        }
    }

    let euler = m.vertices.len() as i64 - m.arrows.len() as i64 + (m.faces_cc.len() + m.faces_cl.len()) as i64;
    if euler != 1 {
        v.push(Violation::NotADisk { euler });
    }

    if v.is_empty() {
        for &x in &m.vertices {
            if !incidence_connected(m, &arrows, x) {
                v.push(Violation::IncidenceDisconnected(x));
            }
        }
    }
    if v.is_empty() {
        Ok(())
    } else {
        Err(v)
    }
}

/// The gap `j` (between boundary vertices `j` and `j + 1`) a one-face arrow
/// sits in. Walking clockwise along the boundary the disk lies to the right,
/// so an arrow `j -> j+1` borders a clockwise face and `j+1 -> j` a
/// counter-clockwise one.
fn boundary_gap(label: &HashMap<VertexId, usize>, n: usize, a: &Arrow, phase: Phase) -> Option<usize> {
    let (s, t) = (*label.get(&a.src)?, *label.get(&a.dst)?);
    let j = match phase {
        Phase::Cl => s,
        Phase::Cc => t,
    };
    let other = match phase {
        Phase::Cl => t,
        Phase::Cc => s,
    };
    (crate::perm::cyc(j + 1, n) == other).then_some(j)
}

fn incidence_connected(m: &DimerModel, arrows: &HashMap<ArrowId, &Arrow>, x: VertexId) -> bool {
    let incident: Vec<ArrowId> = m.arrows.iter().filter(|a| a.src == x || a.dst == x).map(|a| a.id).collect();
    if incident.is_empty() {
        return false;
    }
    let pos: HashMap<ArrowId, usize> = incident.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let mut adj = vec![Vec::new(); incident.len()];
    for (_, _, face) in m.faces() {
        for i in 0..face.len() {
            let (a, b) = (face[i], face[(i + 1) % face.len()]);
            if arrows[&a].dst == x {
                let (pa, pb) = (pos[&a], pos[&b]);
                adj[pa].push(pb);
                adj[pb].push(pa);
            }
        }
    }
    let mut seen = vec![false; incident.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for &j in &adj[i] {
            if !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub phase: Phase,
    /// Dense arrow indices in path order.
    pub arrows: Vec<usize>,
}

/// Dense, validated view of a model. Vertices and arrows are addressed by
/// their position in the model's lists.
#[derive(Clone, Debug)]
pub struct Topology {
    pub n: usize,
    pub vertex_ids: Vec<VertexId>,
    pub arrow_ids: Vec<ArrowId>,
    pub src: Vec<usize>,
    pub dst: Vec<usize>,
    pub faces: Vec<Face>,
    /// Per arrow, `(face, position)` indexed by phase slot.
    pub arrow_faces: Vec<[Option<(usize, usize)>; 2]>,
    /// `boundary[j - 1]`: dense index of boundary vertex `j`.
    pub boundary: Vec<usize>,
    /// Boundary label of each dense vertex.
    pub boundary_label: Vec<Option<usize>>,
    /// `boundary_arrow[j - 1]`: the arrow between boundary vertices `j` and `j + 1`.
    pub boundary_arrow: Vec<usize>,
    pub out_arrows: Vec<Vec<usize>>,
    vertex_index: HashMap<VertexId, usize>,
    arrow_index: HashMap<ArrowId, usize>,
}

impl Topology {
    pub fn new(m: &DimerModel) -> Result<Self, DimerError> {
        validate_model(m).map_err(DimerError::Invalid)?;
        let vertex_index: HashMap<VertexId, usize> = m.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let arrow_index: HashMap<ArrowId, usize> = m.arrows.iter().enumerate().map(|(i, a)| (a.id, i)).collect();
        let src: Vec<usize> = m.arrows.iter().map(|a| vertex_index[&a.src]).collect();
        let dst: Vec<usize> = m.arrows.iter().map(|a| vertex_index[&a.dst]).collect();
        let mut arrow_faces = vec![[None; 2]; m.arrows.len()];
        let mut faces = Vec::new();
        for (phase, _, face) in m.faces() {
            let arrows: Vec<usize> = face.iter().map(|id| arrow_index[id]).collect();
            for (pos, &a) in arrows.iter().enumerate() {
                arrow_faces[a][phase.slot()] = Some((faces.len(), pos));
            }
            faces.push(Face { phase, arrows });
        }
        let n = m.n();
        let boundary: Vec<usize> = m.boundary.iter().map(|b| vertex_index[b]).collect();
        let mut boundary_label = vec![None; m.vertices.len()];
        for (j, &b) in boundary.iter().enumerate() {
            boundary_label[b] = Some(j + 1);
        }
        let label: HashMap<VertexId, usize> = m.boundary.iter().enumerate().map(|(i, &b)| (b, i + 1)).collect();
        let mut boundary_arrow = vec![usize::MAX; n];
        for (i, a) in m.arrows.iter().enumerate() {
            let slots = arrow_faces[i];
            if let [Some(_), None] | [None, Some(_)] = slots {
                let phase = if slots[0].is_some() { Phase::Cc } else { Phase::Cl };
                let j = boundary_gap(&label, n, a, phase).expect("validated");
                boundary_arrow[j - 1] = i;
            }
        }
        let mut out_arrows = vec![Vec::new(); m.vertices.len()];
        for (i, &s) in src.iter().enumerate() {
            out_arrows[s].push(i);
        }
        Ok(Topology {
            n,
            vertex_ids: m.vertices.clone(),
            arrow_ids: m.arrows.iter().map(|a| a.id).collect(),
            src,
            dst,
            faces,
            arrow_faces,
            boundary,
            boundary_label,
            boundary_arrow,
            out_arrows,
            vertex_index,
            arrow_index,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_ids.len()
    }
    pub fn arrow_count(&self) -> usize {
        self.arrow_ids.len()
    }
    pub fn vertex(&self, id: VertexId) -> Option<usize> {
        self.vertex_index.get(&id).copied()
    }
    pub fn arrow(&self, id: ArrowId) -> Option<usize> {
        self.arrow_index.get(&id).copied()
    }

    /// Dense index of boundary vertex `j` (1-based).
    pub fn boundary_vertex(&self, j: usize) -> usize {
        self.boundary[j - 1]
    }

    pub fn face_of(&self, arrow: usize, phase: Phase) -> Option<(usize, usize)> {
        self.arrow_faces[arrow][phase.slot()]
    }

    pub fn is_internal(&self, arrow: usize) -> bool {
        self.arrow_faces[arrow].iter().all(Option::is_some)
    }

    /// Phase of the only face of a boundary arrow.
    pub fn boundary_phase(&self, arrow: usize) -> Phase {
        if self.arrow_faces[arrow][0].is_some() {
            Phase::Cc
        } else {
            Phase::Cl
        }
    }

    /// The arrow before `arrow` in its face of the given phase.
    pub fn pred(&self, arrow: usize, phase: Phase) -> Option<usize> {
        let (f, pos) = self.face_of(arrow, phase)?;
        let face = &self.faces[f].arrows;
        Some(face[(pos + face.len() - 1) % face.len()])
    }

    /// The arrow after `arrow` in its face of the given phase.
    pub fn succ(&self, arrow: usize, phase: Phase) -> Option<usize> {
        let (f, pos) = self.face_of(arrow, phase)?;
        let face = &self.faces[f].arrows;
        Some(face[(pos + 1) % face.len()])
    }

    /// The rest of the face through `arrow`, as a path from its head back to its tail.
    pub fn return_path(&self, arrow: usize, phase: Phase) -> Option<Vec<usize>> {
        let (f, pos) = self.face_of(arrow, phase)?;
        let face = &self.faces[f].arrows;
        Some((1..face.len()).map(|d| face[(pos + d) % face.len()]).collect())
    }
}

#[cfg(test)]
pub(crate) mod fixtures;
#[cfg(test)]
mod tests;
