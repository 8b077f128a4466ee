//! Gabriel quiver and relations of the boundary algebra, read off a
//! decorated permutation or its Grassmann necklace.

mod export;
mod words;

pub use export::{export_presentation, ExportFormat, PresentationJson};
pub use words::{PathSymbolWord, Relation, RelationKind, Symbol};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::necklace::{GrassmannNecklace, Subset};
use crate::perm::{cyc, offset, CyclicInterval, DecoratedPermutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("permutation is not connected")]
    NotConnected,
    #[error("source and target coincide at {0}")]
    EqualVertices(usize),
    #[error("vertex {0} is not in [n]")]
    VertexOutOfRange(usize),
    #[error("no expression found for missing generator {0}")]
    SubstitutionNotFound(Symbol),
    #[error("relation {0} has a side of length at most one")]
    NotAdmissible(String),
    #[error("word {0} does not compose")]
    NotComposable(String),
    #[error("empty symbol word")]
    EmptyWord,
    #[error("malformed symbol {0:?}")]
    MalformedSymbol(String),
    #[error("invalid necklace: {0}")]
    InvalidNecklace(String),
}

/// A boundary arrow `from -> to` of the extended quiver with its relation numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ArrowDatum {
    pub from: usize,
    pub to: usize,
    pub reach_x: usize,
    pub reach_y: usize,
    pub x: usize,
    pub y: usize,
    pub adjacent: bool,
}

impl ArrowDatum {
    fn new(n: usize, from: usize, to: usize, x: usize, y: usize) -> Self {
        let reach_x = offset(from, to, n);
        let reach_y = offset(to, from, n);
        ArrowDatum { from, to, reach_x, reach_y, x, y, adjacent: reach_x == 1 || reach_y == 1 }
    }

    pub fn symbol(&self) -> Symbol {
        Symbol::A(self.from, self.to)
    }
}

/// Relation numbers of a pair, flagged by whether the pair is arrow-defining.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationNumbers {
    pub x: usize,
    pub y: usize,
    /// The counts are only relation numbers of an arrow when this is set.
    pub interpreted: bool,
}

fn check_pair(n: usize, v1: usize, v2: usize) -> Result<(), PresentationError> {
    for v in [v1, v2] {
        if v == 0 || v > n {
            return Err(PresentationError::VertexOutOfRange(v));
        }
    }
    if v1 == v2 {
        return Err(PresentationError::EqualVertices(v1));
    }
    Ok(())
}

fn check_connected(p: &DecoratedPermutation) -> Result<(), PresentationError> {
    if p.is_connected() {
        Ok(())
    } else {
        Err(PresentationError::NotConnected)
    }
}

/// Whether the minimal path `v1 -> v2` is arrow-defining, decided from the permutation.
pub fn is_arrow_defining(p: &DecoratedPermutation, v1: usize, v2: usize) -> Result<bool, PresentationError> {
    check_pair(p.n(), v1, v2)?;
    check_connected(p)?;
    Ok(arrow_defining_unchecked(p, v1, v2))
}

fn arrow_defining_unchecked(p: &DecoratedPermutation, v1: usize, v2: usize) -> bool {
    let n = p.n();
    let first = CyclicInterval::open(v2, v1, n).iter().all(|w| {
        CyclicInterval::closed(v2, w + n - 1, n)
            .iter()
            .any(|j| CyclicInterval::closed(w, v1 + n - 1, n).contains(p.image(j)))
    });
    first
        && CyclicInterval::open(v1, v2, n).iter().all(|w| {
            CyclicInterval::closed(w, v2 + n - 1, n)
                .iter()
                .any(|j| CyclicInterval::closed(v1, w + n - 1, n).contains(p.image(j)))
        })
}

/// The same predicate phrased through necklace containments.
pub fn is_arrow_defining_necklace(nk: &GrassmannNecklace, v1: usize, v2: usize) -> Result<bool, PresentationError> {
    check_pair(nk.n(), v1, v2)?;
    check_necklace(nk)?;
    let n = nk.n();
    let (a, b) = (nk.term(v1), nk.term(v2));
    let meet = a.intersection(b);
    let join = a.union(b);
    Ok(CyclicInterval::open(v2, v1, n).iter().all(|w| !meet.is_subset(nk.term(w)))
        && CyclicInterval::open(v1, v2, n).iter().all(|w| !nk.term(w).is_subset(join)))
}

fn check_necklace(nk: &GrassmannNecklace) -> Result<(), PresentationError> {
    let p = crate::necklace::permutation_from_necklace(nk)
        .map_err(|e| PresentationError::InvalidNecklace(e.to_string()))?;
    check_connected(&p)
}

/// Counts of strands with both ends in `[v2, v1 - 1]` running clockwise (`y`)
/// and with both ends in `[v1, v2 - 1]` running counter-clockwise (`x`).
pub fn relation_numbers(p: &DecoratedPermutation, v1: usize, v2: usize) -> Result<RelationNumbers, PresentationError> {
    check_pair(p.n(), v1, v2)?;
    let (x, y) = relation_counts(p, v1, v2);
    let interpreted = p.is_connected() && arrow_defining_unchecked(p, v1, v2);
    Ok(RelationNumbers { x, y, interpreted })
}

fn relation_counts(p: &DecoratedPermutation, v1: usize, v2: usize) -> (usize, usize) {
    let n = p.n();
    let y_span = offset(v2, cyc(v1 + n - 1, n), n);
    let x_span = offset(v1, cyc(v2 + n - 1, n), n);
    let mut x = 0;
    let mut y = 0;
    for i in 1..=n {
        let t = p.image(i);
        let (oi, ot) = (offset(v2, i, n), offset(v2, t, n));
        if oi < ot && ot <= y_span {
            y += 1;
        }
        let (oi, ot) = (offset(v1, i, n), offset(v1, t, n));
        if ot < oi && oi <= x_span {
            x += 1;
        }
    }
    (x, y)
}

/// `(X, Y) = (|[v1, v2) \ (I_v1 ∪ I_v2)|, |[v2, v1) ∩ I_v1 ∩ I_v2|)`.
pub fn relation_numbers_necklace(nk: &GrassmannNecklace, v1: usize, v2: usize) -> Result<(usize, usize), PresentationError> {
    check_pair(nk.n(), v1, v2)?;
    let n = nk.n();
    let (a, b) = (nk.term(v1), nk.term(v2));
    let y = Subset::of_interval(CyclicInterval::closed_open(v2, v1, n)).intersection(a.intersection(b));
    let x = Subset::of_interval(CyclicInterval::closed_open(v1, v2, n)).difference(a.union(b));
    Ok((x.len(), y.len()))
}

/// Vertices, adjacent arrows and nonadjacent arrows of the boundary algebra's quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GabrielQuiver {
    pub n: usize,
    pub k: usize,
    /// `adjacent_x[i - 1]`: whether `x_i` is an arrow.
    pub adjacent_x: Vec<bool>,
    pub adjacent_y: Vec<bool>,
    /// Sorted by `(from, to)`.
    pub nonadjacent: Vec<ArrowDatum>,
}

impl GabrielQuiver {
    pub fn has(&self, s: Symbol) -> bool {
        match s {
            Symbol::X(i) => self.adjacent_x[i - 1],
            Symbol::Y(i) => self.adjacent_y[i - 1],
            Symbol::A(a, b) => self.nonadjacent.iter().any(|d| d.from == a && d.to == b),
        }
    }

    /// Adjacent generators that are not arrows.
    pub fn missing(&self) -> Vec<Symbol> {
        let xs = (1..=self.n).map(Symbol::X);
        let ys = (1..=self.n).map(Symbol::Y);
        xs.chain(ys).filter(|&s| !self.has(s)).collect()
    }

    pub fn arrow_count(&self) -> usize {
        self.adjacent_x.iter().chain(&self.adjacent_y).filter(|&&b| b).count() + self.nonadjacent.len()
    }
}

pub fn gabriel_quiver(p: &DecoratedPermutation) -> Result<GabrielQuiver, PresentationError> {
    check_connected(p)?;
    let n = p.n();
    let adjacent_x = (1..=n).map(|i| arrow_defining_unchecked(p, i, cyc(i + 1, n))).collect();
    let adjacent_y = (1..=n).map(|i| arrow_defining_unchecked(p, cyc(i + 1, n), i)).collect();
    let mut nonadjacent = Vec::new();
    for v1 in 1..=n {
        for v2 in 1..=n {
            let d = offset(v1, v2, n);
            if d < 2 || d > n - 2 || !arrow_defining_unchecked(p, v1, v2) {
                continue;
            }
            let (x, y) = relation_counts(p, v1, v2);
            nonadjacent.push(ArrowDatum::new(n, v1, v2, x, y));
        }
    }
    Ok(GabrielQuiver { n, k: p.noninversion_count(), adjacent_x, adjacent_y, nonadjacent })
}

/// Commutation and Grassmannian relations at every vertex, then for each
/// nonadjacent arrow its defining relation and both cyclic families.
pub fn relations_circ(p: &DecoratedPermutation) -> Result<Vec<Relation>, PresentationError> {
    let q = gabriel_quiver(p)?;
    Ok(relations_for(&q))
}

fn relations_for(q: &GabrielQuiver) -> Vec<Relation> {
    let (n, k) = (q.n, q.k);
    let mut out = Vec::new();
    for i in 1..=n {
        let prev = cyc(i + n - 1, n);
        let lhs = PathSymbolWord::new(n, vec![Symbol::X(i), Symbol::Y(i)]).expect("x_i y_i composes");
        let rhs = PathSymbolWord::new(n, vec![Symbol::Y(prev), Symbol::X(prev)]).expect("y x composes");
        out.push(Relation::new(RelationKind::Commutation, lhs, rhs));
    }
    for i in 1..=n {
        let prev = cyc(i + n - 1, n);
        let lhs = PathSymbolWord::x_power(i, k, n);
        let rhs = PathSymbolWord::y_power(prev, n - k, n);
        out.push(Relation::new(RelationKind::Grassmannian, lhs, rhs));
    }
    for d in &q.nonadjacent {
        let (t, h) = (d.from, d.to);
        let arrow = PathSymbolWord::symbol(n, d.symbol());
        let lhs = PathSymbolWord::y_power(cyc(t + n - 1, n), d.reach_y, n);
        let rhs = arrow.then(&PathSymbolWord::xy_power(h, d.y));
        out.push(Relation::new(RelationKind::Nonadjacent, lhs, rhs));
        for m in 0..=d.y {
            let lhs = PathSymbolWord::y_power(cyc(t + 2 * n - 1 - m, n), d.reach_y - d.y, n);
            let before = PathSymbolWord::x_power(cyc(t + n - m, n), m, n);
            let after = PathSymbolWord::x_power(h, d.y - m, n);
            out.push(Relation::new(RelationKind::CyclicY, lhs, before.then(&arrow).then(&after)));
        }
        for m in 0..=d.x {
            let lhs = PathSymbolWord::x_power(cyc(t + m, n), d.reach_x - d.x, n);
            let before = PathSymbolWord::y_power(cyc(t + m + n - 1, n), m, n);
            let after = PathSymbolWord::y_power(cyc(h + n - 1, n), d.x - m, n);
            out.push(Relation::new(RelationKind::CyclicX, lhs, before.then(&arrow).then(&after)));
        }
    }
    out
}

/// A missing adjacent generator and the word of arrows replacing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    pub symbol: Symbol,
    pub word: PathSymbolWord,
}

/// Relations rewritten over the Gabriel quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleRelations {
    pub substitutions: Vec<Substitution>,
    pub relations: Vec<Relation>,
}

pub fn relations_admissible(p: &DecoratedPermutation) -> Result<AdmissibleRelations, PresentationError> {
    let q = gabriel_quiver(p)?;
    admissible_for(&q, &relations_for(&q))
}

fn admissible_for(q: &GabrielQuiver, circ: &[Relation]) -> Result<AdmissibleRelations, PresentationError> {
    let n = q.n;
    let mut substitutions: Vec<Substitution> = Vec::new();
    for s in q.missing() {
        let word = resolve(q, circ, s, &mut Vec::new()).or_else(|e| graded_path(q, s).ok_or(e))?;
        substitutions.push(Substitution { symbol: s, word });
    }
    let rewrite = |w: &PathSymbolWord| -> PathSymbolWord {
        let mut symbols = Vec::new();
        for &s in w.symbols() {
            match substitutions.iter().find(|sub| sub.symbol == s) {
                Some(sub) => symbols.extend_from_slice(sub.word.symbols()),
                None => symbols.push(s),
            }
        }
        PathSymbolWord::new(n, symbols).expect("substitution preserves endpoints")
    };
    let mut relations: Vec<Relation> = Vec::new();
    for r in circ {
        let (lhs, rhs) = (rewrite(&r.lhs), rewrite(&r.rhs));
        if lhs == rhs || relations.iter().any(|o| o.lhs == lhs && o.rhs == rhs) {
            continue;
        }
        let rel = Relation::new(r.kind, lhs, rhs);
        if rel.lhs.len() <= 1 || rel.rhs.len() <= 1 {
            return Err(PresentationError::NotAdmissible(rel.to_string()));
        }
        relations.push(rel);
    }
    Ok(AdmissibleRelations { substitutions, relations })
}

/// Expression for a missing generator over the arrows of the quiver.
///
/// First choice is a relation with the generator alone on one side. Failing
/// that, a relation `[s t] = [w]` (or `[t s] = [w]`) whose resolved right side
/// ends (starts) with the resolved `t` gives `[s] = [w / t]` by cancellation.
/// Missing generators inside an expression are resolved in turn.
fn resolve(
    q: &GabrielQuiver,
    circ: &[Relation],
    s: Symbol,
    stack: &mut Vec<Symbol>,
) -> Result<PathSymbolWord, PresentationError> {
    if q.has(s) {
        return Ok(PathSymbolWord::symbol(q.n, s));
    }
    if stack.contains(&s) {
        return Err(PresentationError::SubstitutionNotFound(s));
    }
    stack.push(s);
    let found = resolve_single(q, circ, s, stack).or_else(|| resolve_by_cancelling(q, circ, s, stack));
    stack.pop();
    let symbols = found.ok_or(PresentationError::SubstitutionNotFound(s))?;
    PathSymbolWord::new(q.n, symbols)
}

fn sides(r: &Relation) -> [(&PathSymbolWord, &PathSymbolWord); 2] {
    [(&r.lhs, &r.rhs), (&r.rhs, &r.lhs)]
}

fn resolve_single(q: &GabrielQuiver, circ: &[Relation], s: Symbol, stack: &mut Vec<Symbol>) -> Option<Vec<Symbol>> {
    for r in circ {
        for (one, other) in sides(r) {
            if one.symbols() == [s] && other.len() >= 2 && !other.symbols().contains(&s) {
                if let Some(w) = resolve_all(q, circ, other.symbols(), stack) {
                    return Some(w);
                }
            }
        }
    }
    None
}

fn resolve_by_cancelling(
    q: &GabrielQuiver,
    circ: &[Relation],
    s: Symbol,
    stack: &mut Vec<Symbol>,
) -> Option<Vec<Symbol>> {
    for r in circ {
        for (one, other) in sides(r) {
            let syms = one.symbols();
            if syms.len() < 2 || other.symbols().contains(&s) {
                continue;
            }
            let Some(w) = resolve_all(q, circ, other.symbols(), stack) else { continue };
            if syms[0] == s && !syms[1..].contains(&s) {
                if let Some(t) = resolve_all(q, circ, &syms[1..], stack) {
                    if w.len() > t.len() && w.ends_with(&t) {
                        return Some(w[..w.len() - t.len()].to_vec());
                    }
                }
            }
            let last = syms.len() - 1;
            if syms[last] == s && !syms[..last].contains(&s) {
                if let Some(t) = resolve_all(q, circ, &syms[..last], stack) {
                    if w.len() > t.len() && w.starts_with(&t) {
                        return Some(w[t.len()..].to_vec());
                    }
                }
            }
        }
    }
    None
}

fn resolve_all(q: &GabrielQuiver, circ: &[Relation], syms: &[Symbol], stack: &mut Vec<Symbol>) -> Option<Vec<Symbol>> {
    let mut out = Vec::new();
    for &t in syms {
        out.extend_from_slice(resolve(q, circ, t, stack).ok()?.symbols());
    }
    Some(out)
}

impl GabrielQuiver {
    /// Degree of a generator in the grading with `deg x = n - k`, `deg y = k`,
    /// under which every relation is homogeneous.
    pub fn degree(&self, s: Symbol) -> i64 {
        let (n, k) = (self.n as i64, self.k as i64);
        match s {
            Symbol::X(_) => n - k,
            Symbol::Y(_) => k,
            Symbol::A(a, b) => {
                let y = self.nonadjacent.iter().find(|d| d.from == a && d.to == b).map_or(0, |d| d.y) as i64;
                k * offset(b, a, self.n) as i64 - n * y
            }
        }
    }

    fn arrows(&self) -> Vec<Symbol> {
        let xs = (1..=self.n).map(Symbol::X);
        let ys = (1..=self.n).map(Symbol::Y);
        xs.chain(ys).filter(|&s| self.has(s)).chain(self.nonadjacent.iter().map(ArrowDatum::symbol)).collect()
    }
}

/// Shortest path of arrows parallel to `s` and of the same degree. Paths
/// between two vertices differ by powers of the central element, so such a
/// path equals `s`.
fn graded_path(q: &GabrielQuiver, s: Symbol) -> Option<PathSymbolWord> {
    let n = q.n;
    let goal = q.degree(s);
    let arrows: Vec<(Symbol, i64)> = q.arrows().into_iter().map(|a| (a, q.degree(a))).collect();
    let window = (n * n) as i64;
    let start = (s.source(n), 0i64);
    let mut prev: std::collections::HashMap<(usize, i64), ((usize, i64), Symbol)> = Default::default();
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some((v, d)) = queue.pop_front() {
        if (v, d) == (s.target(n), goal) && (v, d) != start {
            let mut symbols = Vec::new();
            let mut at = (v, d);
            while at != start {
                let (back, a) = prev[&at];
                symbols.push(a);
                at = back;
            }
            symbols.reverse();
            return PathSymbolWord::new(n, symbols).ok();
        }
        for &(a, da) in &arrows {
            let next = (a.target(n), d + da);
            if a.source(n) == v && (next.1 - goal).abs() <= window && next != start && !prev.contains_key(&next) {
                prev.insert(next, ((v, d), a));
                queue.push_back(next);
            }
        }
    }
    None
}

/// Everything the boundary algebra presentation consists of.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverPresentation {
    pub quiver: GabrielQuiver,
    pub relations_circ: Vec<Relation>,
    pub substitutions: Vec<Substitution>,
    pub relations_admissible: Vec<Relation>,
    /// The listed relations generate the ideal only after cancellative closure.
    pub closure: bool,
}

pub fn presentation(p: &DecoratedPermutation) -> Result<QuiverPresentation, PresentationError> {
    let quiver = gabriel_quiver(p)?;
    presentation_of_quiver(quiver)
}

/// Assembles relations from an already computed quiver.
pub fn presentation_of_quiver(quiver: GabrielQuiver) -> Result<QuiverPresentation, PresentationError> {
    let relations_circ = relations_for(&quiver);
    let adm = admissible_for(&quiver, &relations_circ)?;
    Ok(QuiverPresentation {
        quiver,
        relations_circ,
        substitutions: adm.substitutions,
        relations_admissible: adm.relations,
        closure: true,
    })
}
