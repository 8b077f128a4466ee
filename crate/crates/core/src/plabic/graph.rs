//! Plabic graphs: construction from bridges, simplification, trips, and the dual dimer model.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::bridges::BridgeDecomposition;
use super::PlabicError;
use crate::dimer::{Arrow, DimerModel};
use crate::perm::{cyc, Decoration, DecoratedPermutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Colour {
    Black,
    White,
}

/// A planar bicoloured graph in a disk. Vertices `1..=n` are the boundary
/// vertices in clockwise order; internal vertices follow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlabicGraph {
    pub n: usize,
    /// Colour of internal vertex `n + 1 + i` at index `i`.
    pub colours: Vec<Colour>,
    pub edges: Vec<(usize, usize)>,
    /// Incident edge indices of vertex `v` in clockwise order, at index `v - 1`.
    pub rotation: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct PlabicJson {
    black: Vec<usize>,
    white: Vec<usize>,
    edges: Vec<[usize; 2]>,
    rotation: BTreeMap<usize, Vec<usize>>,
}

impl PlabicGraph {
    pub fn vertex_count(&self) -> usize {
        self.n + self.colours.len()
    }

    pub fn colour(&self, v: usize) -> Option<Colour> {
        (v > self.n).then(|| self.colours[v - self.n - 1])
    }

    fn other_end(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn to_json(&self) -> String {
        let ids = |c: Colour| (self.n + 1..=self.vertex_count()).filter(|&v| self.colour(v) == Some(c)).collect();
        let j = PlabicJson {
            black: ids(Colour::Black),
            white: ids(Colour::White),
            edges: self.edges.iter().map(|&(a, b)| [a, b]).collect(),
            rotation: self.rotation.iter().enumerate().map(|(i, r)| (i + 1, r.clone())).collect(),
        };
        let mut s = serde_json::to_string_pretty(&j).expect("plain data serialises");
        s.push('\n');
        s
    }

    /// Internal faces plus boundary faces: the regions of the disk.
    pub fn face_count(&self) -> usize {
        self.edges.len() - self.colours.len() + 1
    }

    /// Follows the trip from each boundary vertex: turn to the next edge
    /// clockwise at a white vertex and counter-clockwise at a black one.
    pub fn trip_permutation(&self) -> Result<DecoratedPermutation, PlabicError> {
        let n = self.n;
        let limit = 2 * self.edges.len() + 2;
        let mut image = vec![0; n];
        let mut decoration = vec![None; n];
        for i in 1..=n {
            let [leg] = self.rotation[i - 1][..] else { return Err(PlabicError::BoundaryDegree(i)) };
            let (mut at, mut via) = (self.other_end(leg, i), leg);
            let mut last_colour = None;
            let mut steps = 0;
            while at > n {
                let rot = &self.rotation[at - 1];
                let pos = rot.iter().position(|&e| e == via).expect("edge is incident");
                let colour = self.colour(at).expect("internal vertex");
                let next = match colour {
                    Colour::White => rot[(pos + 1) % rot.len()],
                    Colour::Black => rot[(pos + rot.len() - 1) % rot.len()],
                };
                last_colour = Some(colour);
                at = self.other_end(next, at);
                via = next;
                steps += 1;
                if steps > limit {
                    return Err(PlabicError::TripDoesNotEnd(i));
                }
            }
            image[i - 1] = at;
            if at == i {
                decoration[i - 1] = Some(match last_colour {
                    Some(Colour::White) => Decoration::Loop,
                    _ => Decoration::Coloop,
                });
            }
        }
        DecoratedPermutation::new(image, decoration).map_err(|e| PlabicError::Trip(e.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    East,
    West,
}

/// Editable graph; removed vertices and edges stay as tombstones.
struct Draft {
    n: usize,
    colour: Vec<Option<Colour>>,
    alive: Vec<bool>,
    edges: Vec<Option<(usize, usize)>>,
    rot: Vec<Vec<usize>>,
}

impl Draft {
    fn other_end(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e].expect("live edge");
        if a == v {
            b
        } else {
            a
        }
    }

    /// Merges `w` into `v` across the edge `e`; `w`'s other edges take the
    /// place of `e` in `v`'s rotation, keeping the clockwise order.
    fn contract(&mut self, e: usize) -> Result<(), PlabicError> {
        let (v, w) = self.edges[e].expect("live edge");
        let wr = &self.rot[w];
        let pos = wr.iter().position(|&x| x == e).expect("incident");
        let tail: Vec<usize> = (1..wr.len()).map(|d| wr[(pos + d) % wr.len()]).collect();
        for &x in &tail {
            let (a, b) = self.edges[x].expect("live edge");
            if (a == v && b == w) || (a == w && b == v) {
                return Err(PlabicError::ParallelContraction);
            }
            self.edges[x] = Some(if a == w { (v, b) } else { (a, v) });
        }
        let vr = &mut self.rot[v];
        let at = vr.iter().position(|&x| x == e).expect("incident");
        vr.splice(at..=at, tail);
        self.rot[w].clear();
        self.alive[w] = false;
        self.edges[e] = None;
        Ok(())
    }

    /// Replaces the degree-two vertex `v` and its edges by a single edge.
    fn smooth(&mut self, v: usize) {
        let (e1, e2) = (self.rot[v][0], self.rot[v][1]);
        let a = self.other_end(e1, v);
        let b = self.other_end(e2, v);
        let (x, y) = self.edges[e1].expect("live edge");
        self.edges[e1] = Some(if x == v { (b, y) } else { (x, b) });
        for slot in self.rot[b].iter_mut() {
            if *slot == e2 {
                *slot = e1;
            }
        }
        let _ = a;
        self.edges[e2] = None;
        self.rot[v].clear();
        self.alive[v] = false;
    }

    fn simplify(&mut self) -> Result<(), PlabicError> {
        loop {
            let mut changed = false;
            for e in 0..self.edges.len() {
                if let Some((a, b)) = self.edges[e] {
                    if a >= self.n && b >= self.n && self.colour[a] == self.colour[b] {
                        self.contract(e)?;
                        changed = true;
                    }
                }
            }
            for v in self.n..self.colour.len() {
                if !self.alive[v] {
                    continue;
                }
                match self.rot[v].len() {
                    1 => {
                        let e = self.rot[v][0];
                        let u = self.other_end(e, v);
                        if u >= self.n {
                            self.rot[u].retain(|&x| x != e);
                            self.edges[e] = None;
                            self.rot[v].clear();
                            self.alive[v] = false;
                            changed = true;
                        }
                    }
                    2 => {
                        let ends = [self.other_end(self.rot[v][0], v), self.other_end(self.rot[v][1], v)];
                        if (ends[0] >= self.n || ends[1] >= self.n) && ends[0] != ends[1] {
                            self.smooth(v);
                            changed = true;
                        }
                    }
                    _ => {}
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }

    fn finish(self) -> PlabicGraph {
        let n = self.n;
        let mut new_id = vec![0; self.colour.len()];
        let mut colours = Vec::new();
        for v in 0..self.colour.len() {
            if v < n {
                new_id[v] = v + 1;
            } else if self.alive[v] {
                colours.push(self.colour[v].expect("internal"));
                new_id[v] = n + colours.len();
            }
        }
        let mut edge_id = vec![usize::MAX; self.edges.len()];
        let mut edges = Vec::new();
        for (e, ends) in self.edges.iter().enumerate() {
            if let Some((a, b)) = *ends {
                edge_id[e] = edges.len();
                edges.push((new_id[a], new_id[b]));
            }
        }
        let mut rotation = vec![Vec::new(); n + colours.len()];
        for v in 0..self.colour.len() {
            if v < n || self.alive[v] {
                rotation[new_id[v] - 1] = self.rot[v].iter().map(|&e| edge_id[e]).collect();
            }
        }
        PlabicGraph { n, colours, edges, rotation }
    }
}

/// Legs hang from each boundary vertex; bridge `t` joins a black vertex on
/// its left leg to a white vertex on its right leg at depth `t`. Fixed points
/// of the permutation get a lollipop (white for a loop, black for a coloop).
pub fn plabic_from_bridges(p: &DecoratedPermutation, d: &BridgeDecomposition) -> Result<PlabicGraph, PlabicError> {
    let n = p.n();
    struct Node {
        north: Option<usize>,
        south: Option<usize>,
        side: Option<(usize, Side)>,
    }
    let mut colour: Vec<Option<Colour>> = vec![None; n];
    let mut nodes: Vec<Node> = (0..n).map(|_| Node { north: None, south: None, side: None }).collect();
    let mut edges: Vec<Option<(usize, usize)>> = Vec::new();
    let mut bottom: Vec<usize> = (0..n).collect();

    let mut hang = |leg: usize, c: Colour, colour: &mut Vec<Option<Colour>>, nodes: &mut Vec<Node>, edges: &mut Vec<Option<(usize, usize)>>| {
        let v = colour.len();
        colour.push(Some(c));
        let e = edges.len();
        edges.push(Some((bottom[leg], v)));
        nodes[bottom[leg]].south = Some(e);
        nodes.push(Node { north: Some(e), south: None, side: None });
        bottom[leg] = v;
        v
    };
    for b in &d.bridges {
        let l = hang(b.left - 1, Colour::Black, &mut colour, &mut nodes, &mut edges);
        let r = hang(b.right - 1, Colour::White, &mut colour, &mut nodes, &mut edges);
        let e = edges.len();
        edges.push(Some((l, r)));
        nodes[l].side = Some((e, Side::East));
        nodes[r].side = Some((e, Side::West));
    }
    for i in p.fixed_points() {
        let c = match p.decoration(i) {
            Some(Decoration::Loop) => Colour::White,
            _ => Colour::Black,
        };
        hang(i - 1, c, &mut colour, &mut nodes, &mut edges);
    }
    for i in 0..n {
        if nodes[i].south.is_none() {
            return Err(PlabicError::BoundaryDegree(i + 1));
        }
    }
    let rot = nodes
        .iter()
        .map(|x| {
            let (north, south) = (x.north.into_iter(), x.south.into_iter());
            match x.side {
                Some((e, Side::East)) => north.chain([e]).chain(south).collect(),
                Some((e, Side::West)) => north.chain(south).chain([e]).collect(),
                None => north.chain(south).collect(),
            }
        })
        .collect();
    let alive = vec![true; colour.len()];
    let mut draft = Draft { n, colour, alive, edges, rot };
    draft.simplify()?;
    Ok(draft.finish())
}

/// The dual quiver with faces. Quiver vertices are the regions of the disk,
/// with boundary vertex `i` the region between boundary vertices `i - 1` and
/// `i` of the graph. Each edge gives an arrow crossing it with the white end
/// on its left; a boundary end counts as the opposite colour of its neighbour.
/// The arrows around a white vertex form a counter-clockwise face, those
/// around a black vertex a clockwise one.
pub fn dimer_from_plabic(g: &PlabicGraph) -> Result<DimerModel, PlabicError> {
    let n = g.n;
    let m = g.edges.len();
    // Boundary segment `i` (index m + i - 1) joins boundary vertices i and i + 1.
    let seg = |i: usize| m + i - 1;
    let mut ends: Vec<(usize, usize)> = g.edges.clone();
    for i in 1..=n {
        ends.push((i, cyc(i + 1, n)));
    }
    let mut rot: Vec<Vec<usize>> = g.rotation.clone();
    for i in 1..=n {
        let [leg] = g.rotation[i - 1][..] else { return Err(PlabicError::BoundaryDegree(i)) };
        rot[i - 1] = vec![seg(i), leg, seg(cyc(i + n - 1, n))];
    }
    // Dart 2e runs from ends[e].0 to ends[e].1, dart 2e + 1 back.
    let dart_to = |d: usize| if d % 2 == 0 { ends[d / 2].1 } else { ends[d / 2].0 };
    let dart = |e: usize, from: usize| if ends[e].0 == from { 2 * e } else { 2 * e + 1 };
    let mut face_of_dart = vec![usize::MAX; 2 * ends.len()];
    let mut face_total = 0;
    for start in 0..2 * ends.len() {
        if face_of_dart[start] != usize::MAX {
            continue;
        }
        let mut d = start;
        loop {
            face_of_dart[d] = face_total;
            let v = dart_to(d);
            let r = &rot[v - 1];
            let pos = r.iter().position(|&e| e == d / 2).expect("incident");
            let e = r[(pos + r.len() - 1) % r.len()];
            d = dart(e, v);
            if d == start {
                break;
            }
        }
        face_total += 1;
    }
    // Region to the right of a dart.
    let right = |d: usize| face_of_dart[d];
    let outer = right(dart(seg(1), cyc(2, n)));
    let mut label = vec![0usize; face_total];
    for i in 1..=n {
        let f = right(dart(seg(cyc(i + n - 1, n)), cyc(i + n - 1, n)));
        if label[f] != 0 || f == outer {
            return Err(PlabicError::Degenerate("boundary regions coincide".into()));
        }
        label[f] = i;
    }
    let mut next = n;
    for f in 0..face_total {
        if f != outer && label[f] == 0 {
            next += 1;
            label[f] = next;
        }
    }
    let colour_at = |v: usize, other: usize| -> Colour {
        match g.colour(v) {
            Some(c) => c,
            None => match g.colour(other) {
                Some(Colour::Black) => Colour::White,
                _ => Colour::Black,
            },
        }
    };
    let mut arrows = Vec::with_capacity(m);
    for (e, &(a, b)) in g.edges.iter().enumerate() {
        let (black, white) = match (colour_at(a, b), colour_at(b, a)) {
            (Colour::Black, Colour::White) => (a, b),
            (Colour::White, Colour::Black) => (b, a),
            _ => return Err(PlabicError::Degenerate(format!("edge {e} joins equal colours"))),
        };
        let bw = dart(e, black);
        let wb = dart(e, white);
        arrows.push(Arrow { id: e + 1, src: label[right(bw)], dst: label[right(wb)] });
    }
    let mut faces_cc = Vec::new();
    let mut faces_cl = Vec::new();
    for v in n + 1..=g.vertex_count() {
        let r = &g.rotation[v - 1];
        match g.colour(v).expect("internal") {
            Colour::White => faces_cl.push(r.iter().map(|&e| e + 1).collect::<Vec<_>>()),
            Colour::Black => faces_cc.push(r.iter().rev().map(|&e| e + 1).collect::<Vec<_>>()),
        }
    }
    Ok(DimerModel {
        boundary: (1..=n).collect(),
        vertices: (1..=next).collect(),
        arrows,
        faces_cc,
        faces_cl,
    })
}
