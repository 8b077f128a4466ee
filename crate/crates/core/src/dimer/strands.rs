//! Strands of a dimer model, its decorated permutation, and bad configurations.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{ArrowId, DimerError, DimerModel, Phase, Topology};
use crate::perm::{cyc, offset, CyclicInterval, Decoration, DecoratedPermutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StrandEnd {
    /// Strand-vertex label in `[n]`.
    Boundary(usize),
    Interior,
}

/// A strand as the arrows it crosses, in order. The phase of a step is the
/// face the strand runs into after the arrow; for a boundary arrow it is the
/// arrow's only face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Strand {
    pub steps: Vec<(ArrowId, Phase)>,
    pub start: StrandEnd,
    pub end: StrandEnd,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrandDiagram {
    /// `strands[j - 1]` starts at strand-vertex `j`.
    pub strands: Vec<Strand>,
    /// Closed strands not reached from the boundary.
    pub cycles: Vec<Strand>,
}

impl StrandDiagram {
    /// End label of every boundary strand, indexed by start label.
    pub fn endpoints(&self) -> Vec<usize> {
        self.strands
            .iter()
            .map(|s| match s.end {
                StrandEnd::Boundary(j) => j,
                StrandEnd::Interior => unreachable!("boundary strands end on the boundary"),
            })
            .collect()
    }
}

pub fn strands(m: &DimerModel) -> Result<StrandDiagram, DimerError> {
    strands_of(&Topology::new(m)?)
}

/// Walks every strand. From an arrow the strand moves to the next arrow of the
/// face it is running through, then crosses into that arrow's other face.
pub fn strands_of(t: &Topology) -> Result<StrandDiagram, DimerError> {
    let label_of: HashMap<usize, usize> = t.boundary_arrow.iter().enumerate().map(|(j, &a)| (a, j + 1)).collect();
    let limit = 2 * t.arrow_count() + 1;
    let mut seen = vec![[false; 2]; t.arrow_count()];
    let mut out = Vec::with_capacity(t.n);
    for j in 1..=t.n {
        let first = t.boundary_arrow[j - 1];
        let mut phase = t.boundary_phase(first);
        let mut steps = vec![(t.arrow_ids[first], phase)];
        seen[first][phase as usize] = true;
        let mut at = first;
        let end = loop {
            let next = t.succ(at, phase).expect("strand runs through a face of the arrow");
            if !t.is_internal(next) {
                steps.push((t.arrow_ids[next], t.boundary_phase(next)));
                break label_of[&next];
            }
            phase = phase.other();
            if steps.len() > limit {
                return Err(DimerError::NonterminatingStrand(t.arrow_ids[first]));
            }
            seen[next][phase as usize] = true;
            steps.push((t.arrow_ids[next], phase));
            at = next;
        };
        out.push(Strand { steps, start: StrandEnd::Boundary(j), end: StrandEnd::Boundary(end) });
    }
    let mut cycles = Vec::new();
    for a in 0..t.arrow_count() {
        if !t.is_internal(a) {
            continue;
        }
        for phase in [Phase::Cc, Phase::Cl] {
            if seen[a][phase as usize] {
                continue;
            }
            let mut steps = Vec::new();
            let (mut at, mut ph) = (a, phase);
            while !seen[at][ph as usize] {
                seen[at][ph as usize] = true;
                steps.push((t.arrow_ids[at], ph));
                at = t.succ(at, ph).expect("internal arrows have both faces");
                ph = ph.other();
            }
            cycles.push(Strand { steps, start: StrandEnd::Interior, end: StrandEnd::Interior });
        }
    }
    Ok(StrandDiagram { strands: out, cycles })
}

/// Strand endpoints as a decorated permutation. A strand returning to its own
/// strand-vertex is a coloop when the boundary arrow there runs
/// counter-clockwise, which leaves every boundary vertex on its right.
pub fn decorated_permutation(m: &DimerModel) -> Result<DecoratedPermutation, DimerError> {
    let t = Topology::new(m)?;
    let d = strands_of(&t)?;
    if !d.cycles.is_empty() {
        return Err(DimerError::InteriorCycles(d.cycles.len()));
    }
    Ok(permutation_of(&t, &d))
}

pub(crate) fn permutation_of(t: &Topology, d: &StrandDiagram) -> DecoratedPermutation {
    let image = d.endpoints();
    let decoration = (1..=t.n)
        .map(|j| {
            (image[j - 1] == j).then(|| {
                let a = t.boundary_arrow[j - 1];
                if t.dst[a] == t.boundary_vertex(j) {
                    Decoration::Coloop
                } else {
                    Decoration::Loop
                }
            })
        })
        .collect();
    DecoratedPermutation::new(image, decoration).expect("strand endpoints form a permutation")
}

/// A strand is a boundary strand (by start label) or an interior cycle (by index).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StrandRef {
    Boundary(usize),
    Cycle(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BadConfiguration {
    SelfIntersection { strand: StrandRef, arrow: ArrowId },
    ClosedCycle { cycle: usize, arrows: Vec<ArrowId> },
    /// Both strands cross `first` before `second`.
    BadLens { strands: (StrandRef, StrandRef), first: ArrowId, second: ArrowId },
}

/// Reports self-intersections, closed cycles and bad lenses of the strand diagram.
pub fn consistency_check(m: &DimerModel) -> Result<(), DimerError> {
    let t = Topology::new(m)?;
    let d = strands_of(&t)?;
    let bad = bad_configurations(&t, &d);
    if bad.is_empty() {
        Ok(())
    } else {
        Err(DimerError::Bad(bad))
    }
}

pub(crate) fn bad_configurations(t: &Topology, d: &StrandDiagram) -> Vec<BadConfiguration> {
    let mut bad = Vec::new();
    let all = d
        .strands
        .iter()
        .enumerate()
        .map(|(i, s)| (StrandRef::Boundary(i + 1), s))
        .chain(d.cycles.iter().enumerate().map(|(i, s)| (StrandRef::Cycle(i), s)));
    let mut passages: HashMap<ArrowId, Vec<(StrandRef, usize)>> = HashMap::new();
    for (r, s) in all {
        for (pos, &(a, _)) in s.steps.iter().enumerate() {
            if t.is_internal(t.arrow(a).expect("known arrow")) {
                passages.entry(a).or_default().push((r, pos));
            }
        }
    }
    let mut arrows: Vec<ArrowId> = passages.keys().copied().collect();
    arrows.sort_unstable();
    let mut shared: HashMap<(StrandRef, StrandRef), Vec<(usize, usize, ArrowId)>> = HashMap::new();
    for a in arrows {
        let p = &passages[&a];
        if let [(r1, p1), (r2, p2)] = p[..] {
            if r1 == r2 {
                bad.push(BadConfiguration::SelfIntersection { strand: r1, arrow: a });
            } else {
                let (key, val) = if r1 < r2 { ((r1, r2), (p1, p2, a)) } else { ((r2, r1), (p2, p1, a)) };
                shared.entry(key).or_default().push(val);
            }
        }
    }
    for (i, c) in d.cycles.iter().enumerate() {
        bad.push(BadConfiguration::ClosedCycle { cycle: i, arrows: c.steps.iter().map(|s| s.0).collect() });
    }
    let mut pairs: Vec<_> = shared.into_iter().collect();
    pairs.sort_by_key(|(k, _)| *k);
    for ((r1, r2), mut crossings) in pairs {
        crossings.sort_unstable();
        'pair: for x in 0..crossings.len() {
            for y in x + 1..crossings.len() {
                if crossings[x].1 < crossings[y].1 {
                    bad.push(BadConfiguration::BadLens {
                        strands: (r1, r2),
                        first: crossings[x].2,
                        second: crossings[y].2,
                    });
                    break 'pair;
                }
            }
        }
    }
    bad
}

impl PartialOrd for StrandRef {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for StrandRef {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let key = |r: &StrandRef| match *r {
            StrandRef::Boundary(j) => (0, j),
            StrandRef::Cycle(i) => (1, i),
        };
        key(self).cmp(&key(other))
    }
}

/// Clockwise strands between `v2` and `v1` (both ends in the strand-vertex arc
/// `[v2, v1 - 1]`, start before end) and counter-clockwise ones (both ends in
/// `[v1, v2 - 1]`, end before start).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrandSets {
    pub clockwise: Vec<usize>,
    pub counter_clockwise: Vec<usize>,
}

impl StrandSets {
    pub fn cl_count(&self) -> usize {
        self.clockwise.len()
    }
    pub fn cc_count(&self) -> usize {
        self.counter_clockwise.len()
    }
}

pub fn strand_sets(p: &DecoratedPermutation, v1: usize, v2: usize) -> Result<StrandSets, DimerError> {
    let n = p.n();
    for v in [v1, v2] {
        if v == 0 || v > n {
            return Err(DimerError::VertexOutOfRange(v));
        }
    }
    if v1 == v2 {
        return Err(DimerError::EqualVertices(v1));
    }
    let cl_arc = CyclicInterval::closed(v2, cyc(v1 + n - 1, n), n);
    let cc_arc = CyclicInterval::closed(v1, cyc(v2 + n - 1, n), n);
    let clockwise = cl_arc.iter().filter(|&j| cl_arc.contains(p.image(j)) && offset(v2, j, n) < offset(v2, p.image(j), n)).collect();
    let counter_clockwise =
        cc_arc.iter().filter(|&j| cc_arc.contains(p.image(j)) && offset(v1, p.image(j), n) < offset(v1, j, n)).collect();
    Ok(StrandSets { clockwise, counter_clockwise })
}
