//! Path equivalence in the dimer algebra by explicit rewriting: basic morphs,
//! face stripping, c-values and minimal rightmost representatives.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::dimer::{DimerError, DimerModel, Phase, Topology};
use crate::perm::{cyc, offset};
use crate::presentation::{ArrowDatum, GabrielQuiver, PathSymbolWord, Relation, Symbol};

pub const DEFAULT_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error(transparent)]
    Dimer(#[from] DimerError),
    #[error("arrow {arrow} has no {phase:?} face")]
    NoSuchFaceSide { arrow: usize, phase: Phase },
    #[error("equivalence class exceeded {0} paths")]
    CapExceeded(usize),
    #[error("no member of the minimal class is rightmost")]
    NoRightmostMember,
    #[error("source and target coincide at {0}")]
    EqualVertices(usize),
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("no path from {from} to {to}")]
    NoPath { from: usize, to: usize },
    #[error("arrows do not compose")]
    NotComposable,
    #[error("{0} is not realised by an arrow-defining path")]
    SymbolNotRealizable(Symbol),
}

/// A path given by its start vertex and arrows, all as dense indices of the host model.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathWord {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl PathWord {
    pub fn constant(v: usize) -> Self {
        PathWord { start: v, arrows: Vec::new() }
    }
    pub fn len(&self) -> usize {
        self.arrows.len()
    }
    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MorphDirection {
    /// clockwise return path replaced by the counter-clockwise one
    Right,
    Left,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morph {
    pub position: usize,
    pub direction: MorphDirection,
    /// The internal arrow whose two return paths are exchanged.
    pub arrow: usize,
    pub path: PathWord,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub minimal_rightmost: PathWord,
    pub c_value: usize,
}

/// Oracle verdict for an ordered pair of boundary vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PairVerdict {
    pub from: usize,
    pub to: usize,
    pub arrow_defining: bool,
    pub x: usize,
    pub y: usize,
}

struct Rewrite {
    arrow: usize,
    direction: MorphDirection,
    from: Vec<usize>,
    to: Vec<usize>,
}

pub struct PathEngine {
    t: Topology,
    cap: usize,
    /// Rewrites indexed by the first arrow of the subword they replace.
    rewrites: Vec<Vec<Rewrite>>,
    /// Face rotations indexed by their first arrow, as (face, offset).
    rotations: Vec<Vec<(usize, usize)>>,
    minimal: Mutex<HashMap<(usize, usize), PathWord>>,
}

impl fmt::Debug for PathEngine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PathEngine").field("n", &self.t.n).field("cap", &self.cap).finish()
    }
}

impl PathEngine {
    pub fn new(m: &DimerModel) -> Result<Self, RewriteError> {
        Ok(Self::from_topology(Topology::new(m)?))
    }

    pub fn from_topology(t: Topology) -> Self {
        let mut rewrites: Vec<Vec<Rewrite>> = (0..t.arrow_count()).map(|_| Vec::new()).collect();
        for direction in [MorphDirection::Right, MorphDirection::Left] {
            let (from, to) = match direction {
                MorphDirection::Right => (Phase::Cl, Phase::Cc),
                MorphDirection::Left => (Phase::Cc, Phase::Cl),
            };
            for a in (0..t.arrow_count()).filter(|&a| t.is_internal(a)) {
                let from = t.return_path(a, from).expect("internal arrow");
                let to = t.return_path(a, to).expect("internal arrow");
                rewrites[from[0]].push(Rewrite { arrow: a, direction, from, to });
            }
        }
        let mut rotations = vec![Vec::new(); t.arrow_count()];
        for (f, face) in t.faces.iter().enumerate() {
            for (o, &a) in face.arrows.iter().enumerate() {
                rotations[a].push((f, o));
            }
        }
        PathEngine { t, cap: DEFAULT_CAP, rewrites, rotations, minimal: Mutex::new(HashMap::new()) }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn topology(&self) -> &Topology {
        &self.t
    }

    pub fn n(&self) -> usize {
        self.t.n
    }

    pub fn end(&self, p: &PathWord) -> usize {
        p.arrows.last().map_or(p.start, |&a| self.t.dst[a])
    }

    /// Checks that the arrows compose head to tail.
    pub fn path(&self, start: usize, arrows: Vec<usize>) -> Result<PathWord, RewriteError> {
        if start >= self.t.vertex_count() {
            return Err(RewriteError::VertexOutOfRange(start));
        }
        let mut at = start;
        for &a in &arrows {
            if a >= self.t.arrow_count() || self.t.src[a] != at {
                return Err(RewriteError::NotComposable);
            }
            at = self.t.dst[a];
        }
        Ok(PathWord { start, arrows })
    }

    /// A path from arrow ids of the model.
    pub fn path_from_ids(&self, start: usize, ids: &[usize]) -> Result<PathWord, RewriteError> {
        let arrows = ids.iter().map(|&id| self.t.arrow(id).ok_or(RewriteError::NotComposable)).collect::<Result<_, _>>()?;
        self.path(self.t.vertex(start).ok_or(RewriteError::VertexOutOfRange(start))?, arrows)
    }

    pub fn concat(&self, p: &PathWord, q: &PathWord) -> Result<PathWord, RewriteError> {
        if self.end(p) != q.start {
            return Err(RewriteError::NotComposable);
        }
        let mut arrows = p.arrows.clone();
        arrows.extend_from_slice(&q.arrows);
        Ok(PathWord { start: p.start, arrows })
    }

    /// Arrow ids joined by dots, or `e<vertex id>` for a constant path.
    pub fn describe(&self, p: &PathWord) -> String {
        if p.arrows.is_empty() {
            return format!("e{}", self.t.vertex_ids[p.start]);
        }
        p.arrows.iter().map(|&a| self.t.arrow_ids[a].to_string()).collect::<Vec<_>>().join("·")
    }

    pub fn return_path(&self, arrow: usize, phase: Phase) -> Result<PathWord, RewriteError> {
        let rest = self.t.return_path(arrow, phase).ok_or(RewriteError::NoSuchFaceSide { arrow: self.t.arrow_ids[arrow], phase })?;
        Ok(PathWord { start: self.t.dst[arrow], arrows: rest })
    }

    /// One-step morphs, scanned left to right, right morphs first at each position.
    pub fn morph_neighbors(&self, p: &PathWord) -> Vec<Morph> {
        let mut out = Vec::new();
        for i in 0..p.arrows.len() {
            for r in &self.rewrites[p.arrows[i]] {
                if p.arrows[i..].starts_with(&r.from) {
                    let mut arrows = p.arrows[..i].to_vec();
                    arrows.extend_from_slice(&r.to);
                    arrows.extend_from_slice(&p.arrows[i + r.from.len()..]);
                    out.push(Morph { position: i, direction: r.direction, arrow: r.arrow, path: PathWord { start: p.start, arrows } });
                }
            }
        }
        out
    }

    fn has_morph(&self, p: &PathWord, direction: MorphDirection) -> bool {
        (0..p.arrows.len()).any(|i| {
            self.rewrites[p.arrows[i]].iter().any(|r| r.direction == direction && p.arrows[i..].starts_with(&r.from))
        })
    }

    pub fn is_rightmost(&self, p: &PathWord) -> bool {
        !self.has_morph(p, MorphDirection::Right)
    }

    pub fn is_leftmost(&self, p: &PathWord) -> bool {
        !self.has_morph(p, MorphDirection::Left)
    }

    /// Leftmost contiguous face cycle as `(position, length)`.
    pub fn face_cycle(&self, p: &PathWord) -> Option<(usize, usize)> {
        for i in 0..p.arrows.len() {
            for &(f, o) in &self.rotations[p.arrows[i]] {
                let face = &self.t.faces[f].arrows;
                let len = face.len();
                if i + len <= p.arrows.len() && (0..len).all(|d| p.arrows[i + d] == face[(o + d) % len]) {
                    return Some((i, len));
                }
            }
        }
        None
    }

    /// BFS closure under morphs, in discovery order. With `stop` set, returns
    /// as soon as a member containing a face cycle is discovered.
    fn explore(&self, p: &PathWord, stop: bool) -> Result<Vec<PathWord>, RewriteError> {
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut order = vec![p.clone()];
        seen.insert(p.arrows.clone());
        if stop && self.face_cycle(p).is_some() {
            return Ok(order);
        }
        let mut queue = VecDeque::from([0usize]);
        while let Some(idx) = queue.pop_front() {
            for m in self.morph_neighbors(&order[idx]) {
                if seen.contains(&m.path.arrows) {
                    continue;
                }
                if seen.len() >= self.cap {
                    return Err(RewriteError::CapExceeded(self.cap));
                }
                seen.insert(m.path.arrows.clone());
                let found = stop && self.face_cycle(&m.path).is_some();
                order.push(m.path);
                if found {
                    return Ok(order);
                }
                queue.push_back(order.len() - 1);
            }
        }
        Ok(order)
    }

    pub fn equivalence_class(&self, p: &PathWord) -> Result<Vec<PathWord>, RewriteError> {
        self.explore(p, false)
    }

    /// The class of the minimal path `r` with `[p] = [r f^c]`, and `c`.
    pub fn minimal_class(&self, p: &PathWord) -> Result<(Vec<PathWord>, usize), RewriteError> {
        let mut cur = p.clone();
        let mut c = 0;
        loop {
            let class = self.explore(&cur, true)?;
            let last = class.last().expect("class contains its seed");
            match self.face_cycle(last) {
                Some((i, len)) => {
                    let mut arrows = last.arrows[..i].to_vec();
                    arrows.extend_from_slice(&last.arrows[i + len..]);
                    cur = PathWord { start: last.start, arrows };
                    c += 1;
                }
                None => return Ok((class, c)),
            }
        }
    }

    pub fn normalize(&self, p: &PathWord) -> Result<NormalForm, RewriteError> {
        let (class, c_value) = self.minimal_class(p)?;
        let minimal_rightmost = class.into_iter().find(|q| self.is_rightmost(q)).ok_or(RewriteError::NoRightmostMember)?;
        Ok(NormalForm { minimal_rightmost, c_value })
    }

    pub fn c_value(&self, p: &PathWord) -> Result<usize, RewriteError> {
        Ok(self.minimal_class(p)?.1)
    }

    pub fn equivalent(&self, p: &PathWord, q: &PathWord) -> Result<bool, RewriteError> {
        if p.start != q.start || self.end(p) != self.end(q) {
            return Ok(false);
        }
        Ok(self.normalize(p)? == self.normalize(q)?)
    }

    /// The minimal rightmost path between two vertices (dense indices).
    pub fn minimal_path(&self, from: usize, to: usize) -> Result<PathWord, RewriteError> {
        if let Some(p) = self.minimal.lock().expect("cache").get(&(from, to)) {
            return Ok(p.clone());
        }
        let p = self.shortest_path(from, to)?;
        let r = self.normalize(&p)?.minimal_rightmost;
        self.minimal.lock().expect("cache").insert((from, to), r.clone());
        Ok(r)
    }

    fn shortest_path(&self, from: usize, to: usize) -> Result<PathWord, RewriteError> {
        let count = self.t.vertex_count();
        for v in [from, to] {
            if v >= count {
                return Err(RewriteError::VertexOutOfRange(v));
            }
        }
        let mut via: Vec<Option<usize>> = vec![None; count];
        let mut seen = vec![false; count];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                break;
            }
            for &a in &self.t.out_arrows[v] {
                let w = self.t.dst[a];
                if !seen[w] {
                    seen[w] = true;
                    via[w] = Some(a);
                    queue.push_back(w);
                }
            }
        }
        if !seen[to] {
            return Err(RewriteError::NoPath { from: self.t.vertex_ids[from], to: self.t.vertex_ids[to] });
        }
        let mut arrows = Vec::new();
        let mut at = to;
        while at != from {
            let a = via[at].expect("reached");
            arrows.push(a);
            at = self.t.src[a];
        }
        arrows.reverse();
        Ok(PathWord { start: from, arrows })
    }

    /// No interior vertex of the path is a boundary vertex.
    pub fn is_direct(&self, p: &PathWord) -> bool {
        let n = p.arrows.len();
        p.arrows.iter().take(n.saturating_sub(1)).all(|&a| self.t.boundary_label[self.t.dst[a]].is_none())
    }

    fn check_pair(&self, v1: usize, v2: usize) -> Result<(), RewriteError> {
        for v in [v1, v2] {
            if v == 0 || v > self.t.n {
                return Err(RewriteError::VertexOutOfRange(v));
            }
        }
        if v1 == v2 {
            return Err(RewriteError::EqualVertices(v1));
        }
        Ok(())
    }

    /// Minimal rightmost path between boundary vertices, by label.
    pub fn boundary_minimal_path(&self, v1: usize, v2: usize) -> Result<PathWord, RewriteError> {
        for v in [v1, v2] {
            if v == 0 || v > self.t.n {
                return Err(RewriteError::VertexOutOfRange(v));
            }
        }
        self.minimal_path(self.t.boundary_vertex(v1), self.t.boundary_vertex(v2))
    }

    /// Every path equivalent to the minimal path from `v1` to `v2` is direct.
    pub fn oracle_arrow_defining(&self, v1: usize, v2: usize) -> Result<bool, RewriteError> {
        self.check_pair(v1, v2)?;
        let p = self.boundary_minimal_path(v1, v2)?;
        Ok(self.equivalence_class(&p)?.iter().all(|q| self.is_direct(q)))
    }

    /// `(X, Y)`: c-values of the x-word and the y-word from `v1` to `v2`.
    pub fn oracle_relation_numbers(&self, v1: usize, v2: usize) -> Result<(usize, usize), RewriteError> {
        self.check_pair(v1, v2)?;
        let n = self.t.n;
        let x = self.c_value(&self.x_word(v1, offset(v1, v2, n)))?;
        let y = self.c_value(&self.y_word(v1, offset(v2, v1, n)))?;
        Ok((x, y))
    }

    pub fn verdict(&self, v1: usize, v2: usize) -> Result<PairVerdict, RewriteError> {
        let arrow_defining = self.oracle_arrow_defining(v1, v2)?;
        let (x, y) = self.oracle_relation_numbers(v1, v2)?;
        Ok(PairVerdict { from: v1, to: v2, arrow_defining, x, y })
    }

    /// Verdicts for all ordered pairs, sorted by `(from, to)`.
    pub fn all_verdicts(&self) -> Result<Vec<PairVerdict>, RewriteError> {
        let n = self.t.n;
        let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|a| (1..=n).filter(move |&b| b != a).map(move |b| (a, b))).collect();
        pairs.par_iter().map(|&(a, b)| self.verdict(a, b)).collect()
    }

    /// The boundary algebra's quiver read off the model. `k` comes from the
    /// c-value of the full x-cycle, which is `n - k`.
    pub fn oracle_quiver(&self) -> Result<GabrielQuiver, RewriteError> {
        let n = self.t.n;
        let verdicts = self.all_verdicts()?;
        let get = |a: usize, b: usize| verdicts.iter().find(|v| v.from == a && v.to == b).expect("all pairs");
        let adjacent_x = (1..=n).map(|i| get(i, cyc(i + 1, n)).arrow_defining).collect();
        let adjacent_y = (1..=n).map(|i| get(cyc(i + 1, n), i).arrow_defining).collect();
        let nonadjacent = verdicts
            .iter()
            .filter(|v| v.arrow_defining && (2..=n - 2).contains(&offset(v.from, v.to, n)))
            .map(|v| ArrowDatum {
                from: v.from,
                to: v.to,
                reach_x: offset(v.from, v.to, n),
                reach_y: offset(v.to, v.from, n),
                x: v.x,
                y: v.y,
                adjacent: false,
            })
            .collect();
        let k = n - self.c_value(&self.x_word(1, n))?;
        Ok(GabrielQuiver { n, k, adjacent_x, adjacent_y, nonadjacent })
    }

    /// `x_i`: the boundary arrow from `i` to `i + 1`, or the return path of the arrow the other way.
    pub fn x_path(&self, i: usize) -> PathWord {
        let a = self.t.boundary_arrow[i - 1];
        if self.t.src[a] == self.t.boundary_vertex(i) {
            PathWord { start: self.t.src[a], arrows: vec![a] }
        } else {
            self.return_path(a, self.t.boundary_phase(a)).expect("boundary arrow has a face")
        }
    }

    /// `y_i`: from `i + 1` to `i`.
    pub fn y_path(&self, i: usize) -> PathWord {
        let a = self.t.boundary_arrow[i - 1];
        if self.t.src[a] == self.t.boundary_vertex(i) {
            self.return_path(a, self.t.boundary_phase(a)).expect("boundary arrow has a face")
        } else {
            PathWord { start: self.t.src[a], arrows: vec![a] }
        }
    }

    /// `m` steps clockwise from boundary vertex `v`.
    pub fn x_word(&self, v: usize, m: usize) -> PathWord {
        let n = self.t.n;
        let mut p = PathWord::constant(self.t.boundary_vertex(v));
        for d in 0..m {
            p.arrows.extend(self.x_path(cyc(v + d, n)).arrows);
        }
        p
    }

    /// `m` steps counter-clockwise from boundary vertex `v`.
    pub fn y_word(&self, v: usize, m: usize) -> PathWord {
        let n = self.t.n;
        let mut p = PathWord::constant(self.t.boundary_vertex(v));
        for d in 1..=m {
            p.arrows.extend(self.y_path(cyc(v + n * m - d, n)).arrows);
        }
        p
    }

    /// A word in boundary generators as a path; nonadjacent symbols become
    /// minimal paths, which must be arrow-defining.
    pub fn expand(&self, w: &PathSymbolWord) -> Result<PathWord, RewriteError> {
        let mut p = PathWord::constant(self.t.boundary_vertex(w.source()));
        for &s in w.symbols() {
            let piece = match s {
                Symbol::X(i) => self.x_path(i),
                Symbol::Y(i) => self.y_path(i),
                Symbol::A(a, b) => {
                    if !self.oracle_arrow_defining(a, b)? {
                        return Err(RewriteError::SymbolNotRealizable(s));
                    }
                    self.boundary_minimal_path(a, b)?
                }
            };
            p.arrows.extend(piece.arrows);
        }
        Ok(p)
    }

    pub fn verify_relation(&self, rel: &Relation) -> Result<bool, RewriteError> {
        self.equivalent(&self.expand(&rel.lhs)?, &self.expand(&rel.rhs)?)
    }
}
