//! Grassmann necklaces and their correspondence with decorated permutations.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{cyc, CyclicInterval, Decoration, DecoratedPermutation, PermError, MAX_N};

/// A subset of `[n]` stored as a bitmask (bit `i - 1` for element `i`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(pub u64);

impl Subset {
    pub fn from_elems<I: IntoIterator<Item = usize>>(elems: I) -> Self {
        Subset(elems.into_iter().fold(0, |m, i| m | 1 << (i - 1)))
    }
    pub fn contains(self, i: usize) -> bool {
        self.0 >> (i - 1) & 1 == 1
    }
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << (i - 1);
    }
    pub fn remove(self, i: usize) -> Self {
        Subset(self.0 & !(1 << (i - 1)))
    }
    pub fn union(self, o: Self) -> Self {
        Subset(self.0 | o.0)
    }
    pub fn intersection(self, o: Self) -> Self {
        Subset(self.0 & o.0)
    }
    pub fn difference(self, o: Self) -> Self {
        Subset(self.0 & !o.0)
    }
    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (1..=64).filter(move |&i| self.contains(i))
    }
    pub fn of_interval(iv: CyclicInterval) -> Self {
        Subset::from_elems(iv.iter())
    }
    /// Digits run together (`123`) when every element is a single digit.
    pub fn compact(self) -> String {
        if self.iter().all(|i| i <= 9) {
            self.iter().map(|i| i.to_string()).collect()
        } else {
            self.to_string()
        }
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NecklaceError {
    #[error("necklace cannot be realised by a decorated permutation: {0}")]
    NotRealizable(String),
    #[error("{0} terms for n = {1}")]
    WrongLength(usize, usize),
    #[error("element {0} outside [n]")]
    OutOfRange(usize),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// First axiom failure found by [`validate_necklace`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NecklaceViolation {
    /// `|I_i| != k`
    WrongCardinality(usize),
    /// `I_{i+1}` does not contain `I_i \ {i}`
    ExchangeAxiomFailed(usize),
}

/// `(I_1, .., I_n)`, with `terms[i - 1] = I_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GrassmannNecklace {
    n: usize,
    k: usize,
    terms: Vec<Subset>,
}

impl GrassmannNecklace {
    /// Wraps terms without checking the axioms; see [`validate_necklace`].
    pub fn new(n: usize, k: usize, terms: Vec<Subset>) -> Result<Self, NecklaceError> {
        if n < 3 {
            return Err(PermError::SizeTooSmall(n).into());
        }
        if n > MAX_N {
            return Err(PermError::SizeTooLarge(n).into());
        }
        if terms.len() != n {
            return Err(NecklaceError::WrongLength(terms.len(), n));
        }
        if let Some(bad) = terms.iter().flat_map(|t| t.iter()).find(|&i| i > n) {
            return Err(NecklaceError::OutOfRange(bad));
        }
        Ok(Self { n, k, terms })
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn k(&self) -> usize {
        self.k
    }
    /// `I_i`, with the index read modulo `n`.
    pub fn term(&self, i: usize) -> Subset {
        self.terms[cyc(i, self.n) - 1]
    }
    pub fn terms(&self) -> &[Subset] {
        &self.terms
    }
}

impl fmt::Display for GrassmannNecklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| if self.n <= 9 { t.compact() } else { t.to_string() })
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// JSON wire form `{"n", "k", "terms"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NecklaceJson {
    pub n: usize,
    pub k: usize,
    pub terms: Vec<Vec<usize>>,
}

impl From<&GrassmannNecklace> for NecklaceJson {
    fn from(nk: &GrassmannNecklace) -> Self {
        NecklaceJson { n: nk.n, k: nk.k, terms: nk.terms.iter().map(|t| t.iter().collect()).collect() }
    }
}

impl TryFrom<NecklaceJson> for GrassmannNecklace {
    type Error = NecklaceError;
    fn try_from(j: NecklaceJson) -> Result<Self, Self::Error> {
        if let Some(&bad) = j.terms.iter().flatten().find(|&&i| i == 0 || i > j.n) {
            return Err(NecklaceError::OutOfRange(bad));
        }
        let terms = j.terms.into_iter().map(Subset::from_elems).collect();
        GrassmannNecklace::new(j.n, j.k, terms)
    }
}

impl Serialize for GrassmannNecklace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        NecklaceJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for GrassmannNecklace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = NecklaceJson::deserialize(d)?;
        GrassmannNecklace::try_from(j).map_err(serde::de::Error::custom)
    }
}

/// `I_i` is the set of strands that have boundary vertex `i` on their right.
pub fn necklace_from_permutation(p: &DecoratedPermutation) -> GrassmannNecklace {
    let n = p.n();
    let terms = (1..=n)
        .map(|i| Subset::from_elems((1..=n).filter(|&j| !p.left_of_strand(j, i))))
        .collect();
    GrassmannNecklace { n, k: p.noninversion_count(), terms }
}

/// Checks `|I_i| = k` and `I_{i+1} ⊇ I_i \ {i}`, reporting the first failure.
pub fn validate_necklace(nk: &GrassmannNecklace) -> Result<(), NecklaceViolation> {
    for i in 1..=nk.n {
        if nk.term(i).len() != nk.k {
            return Err(NecklaceViolation::WrongCardinality(i));
        }
        if !nk.term(i).remove(i).is_subset(nk.term(i + 1)) {
            return Err(NecklaceViolation::ExchangeAxiomFailed(i));
        }
    }
    Ok(())
}

/// Inverse of [`necklace_from_permutation`].
pub fn permutation_from_necklace(nk: &GrassmannNecklace) -> Result<DecoratedPermutation, NecklaceError> {
    validate_necklace(nk).map_err(|v| NecklaceError::NotRealizable(format!("{v:?}")))?;
    let n = nk.n;
    let mut image = vec![0usize; n];
    let mut decoration = vec![None; n];
    for v in 1..=n {
        let (cur, next) = (nk.term(v), nk.term(v + 1));
        if cur == next {
            if image[v - 1] != 0 {
                return Err(NecklaceError::NotRealizable(format!("{v} is both fixed and moved")));
            }
            image[v - 1] = v;
            decoration[v - 1] = Some(if cur.contains(v) { Decoration::Coloop } else { Decoration::Loop });
            continue;
        }
        let entering = next.difference(cur);
        if entering.len() != 1 {
            return Err(NecklaceError::NotRealizable(format!(
                "I_{} \\ I_{} has {} elements",
                cyc(v + 1, n),
                v,
                entering.len()
            )));
        }
        let e = entering.iter().next().unwrap_or(0);
        if image[e - 1] != 0 {
            return Err(NecklaceError::NotRealizable(format!("{e} enters twice")));
        }
        image[e - 1] = v;
    }
    DecoratedPermutation::new(image, decoration)
        .map_err(|e| NecklaceError::NotRealizable(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{connected_permutations, parse_permutation};
    use proptest::prelude::*;

    fn terms(nk: &GrassmannNecklace) -> Vec<String> {
        nk.terms().iter().map(|t| t.compact()).collect()
    }

    fn nk_of(n: usize, k: usize, ts: &[&[usize]]) -> GrassmannNecklace {
        GrassmannNecklace::new(n, k, ts.iter().map(|t| Subset::from_elems(t.iter().copied())).collect())
            .unwrap()
    }

    #[test]
    fn golden_necklace() {
        let p = parse_permutation("2 5 6 1 3 4").unwrap();
        let nk = necklace_from_permutation(&p);
        assert_eq!(nk.k(), 3);
        assert_eq!(terms(&nk), ["123", "234", "134", "145", "156", "126"]);
        assert_eq!(nk.to_string(), "(123, 234, 134, 145, 156, 126)");
        assert_eq!(validate_necklace(&nk), Ok(()));
        assert_eq!(permutation_from_necklace(&nk).unwrap(), p);
    }

    #[test]
    fn coloop_in_every_term() {
        let p = parse_permutation("1+ 3 4 2").unwrap();
        let nk = necklace_from_permutation(&p);
        assert!(nk.terms().iter().all(|t| t.contains(1)));
        assert_eq!(permutation_from_necklace(&nk).unwrap(), p);
        let q = parse_permutation("1- 3 4 2").unwrap();
        let nq = necklace_from_permutation(&q);
        assert!(nq.terms().iter().all(|t| !t.contains(1)));
        assert_eq!(permutation_from_necklace(&nq).unwrap(), q);
    }

    #[test]
    fn final_example_necklace() {
        let p = parse_permutation("4 5 8 2 9 1 6 7 3").unwrap();
        let nk = necklace_from_permutation(&p);
        assert_eq!(nk.k(), 4);
        assert_eq!(validate_necklace(&nk), Ok(()));
        // Axioms rechecked by hand-rolled loops, independent of validate_necklace.
        for i in 1..=9 {
            assert_eq!(nk.term(i).len(), 4);
            for x in nk.term(i).iter().filter(|&x| x != i) {
                assert!(nk.term(i + 1).contains(x));
            }
            assert_ne!(nk.term(i), nk.term(i + 1));
        }
        assert_eq!(
            terms(&nk),
            ["1235", "2356", "3456", "4569", "1569", "1269", "1279", "1289", "1239"]
        );
    }

    #[test]
    fn small_necklaces() {
        let u23 = nk_of(3, 2, &[&[1, 2], &[2, 3], &[1, 3]]);
        assert_eq!(validate_necklace(&u23), Ok(()));
        let u24 = nk_of(4, 2, &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]]);
        assert_eq!(
            permutation_from_necklace(&u24).unwrap(),
            DecoratedPermutation::uniform(2, 4).unwrap()
        );
        assert!(GrassmannNecklace::new(2, 2, vec![Subset(3), Subset(3)]).is_err());
    }

    #[test]
    fn violations() {
        let bad_card = nk_of(3, 2, &[&[1, 2], &[2], &[1, 3]]);
        assert_eq!(validate_necklace(&bad_card), Err(NecklaceViolation::WrongCardinality(2)));
        let bad_exchange = nk_of(3, 2, &[&[1, 2], &[1, 3], &[1, 3]]);
        assert_eq!(validate_necklace(&bad_exchange), Err(NecklaceViolation::ExchangeAxiomFailed(1)));
        assert!(matches!(permutation_from_necklace(&bad_exchange), Err(NecklaceError::NotRealizable(_))));
    }

    #[test]
    fn constant_necklace_gives_lollipops() {
        // I_v = {2} for all v: 2 is a coloop, everything else a loop.
        let nk = nk_of(3, 1, &[&[2], &[2], &[2]]);
        let p = permutation_from_necklace(&nk).unwrap();
        assert_eq!(p.decoration(2), Some(Decoration::Coloop));
        assert_eq!(p.decoration(1), Some(Decoration::Loop));
        assert_eq!(p.decoration(3), Some(Decoration::Loop));
    }

    #[test]
    fn exhaustive_roundtrip() {
        for n in 3..=7 {
            for p in connected_permutations(n) {
                let nk = necklace_from_permutation(&p);
                assert_eq!(validate_necklace(&nk), Ok(()));
                for v in 1..=n {
                    assert_eq!(nk.term(v).len(), p.noninversion_count());
                    assert_ne!(nk.term(v), nk.term(v + 1));
                    // entering element is the strand ending at v
                    let entering = nk.term(v + 1).difference(nk.term(v));
                    assert_eq!(entering.iter().collect::<Vec<_>>(), vec![p.inverse().image(v)]);
                }
                assert_eq!(permutation_from_necklace(&nk).unwrap(), p);
            }
        }
    }

    #[test]
    fn json_roundtrip() {
        let nk = necklace_from_permutation(&parse_permutation("2 5 6 1 3 4").unwrap());
        let s = serde_json::to_string(&nk).unwrap();
        assert!(s.starts_with(r#"{"n":6,"k":3,"terms":[[1,2,3],[2,3,4]"#));
        let back: GrassmannNecklace = serde_json::from_str(&s).unwrap();
        assert_eq!(back, nk);
    }

    proptest! {
        #[test]
        fn rotation_shifts_necklace(idx in 0usize..206) {
            let p = &connected_permutations(6)[idx];
            let a = necklace_from_permutation(p);
            let b = necklace_from_permutation(&p.rotate());
            for i in 1..=6 {
                let shifted = Subset::from_elems(a.term(i).iter().map(|x| cyc(x + 1, 6)));
                prop_assert_eq!(b.term(i + 1), shifted);
            }
        }

        #[test]
        fn decorated_roundtrip(q in crate::perm::tests::arb_perm()) {
            let nk = necklace_from_permutation(&q);
            prop_assert_eq!(validate_necklace(&nk), Ok(()));
            prop_assert_eq!(permutation_from_necklace(&nk).unwrap(), q);
        }
    }
}
