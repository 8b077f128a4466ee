//! Decorated permutations and cyclic intervals on `[n] = {1, .., n}`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Decoration carried by a fixed point.
///
/// A coloop strand winds clockwise and has every boundary vertex on its
/// right; a loop strand winds counter-clockwise and has all of them on its
/// left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Decoration {
    Coloop,
    Loop,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("not a bijection of [n]: {0}")]
    NotABijection(String),
    #[error("fixed point {0} carries no decoration (append + or -)")]
    UndecoratedFixedPoint(usize),
    #[error("{0} is not a fixed point but carries a decoration")]
    DecoratedNonFixedPoint(usize),
    #[error("n = {0} is too small (need n >= 3)")]
    SizeTooSmall(usize),
    #[error("n = {0} exceeds the supported maximum of 64")]
    SizeTooLarge(usize),
    #[error("malformed token {0:?}")]
    MalformedToken(String),
}

/// A permutation of `[n]` whose fixed points are coloured loop or coloop.
///
/// Values are 1-based throughout: `image(i)` is `pi(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DecoratedPermutation {
    image: Vec<usize>,
    decoration: Vec<Option<Decoration>>,
}

pub const MAX_N: usize = 64;

impl DecoratedPermutation {
    /// Builds a permutation from its images and a decoration for each fixed point.
    pub fn new(image: Vec<usize>, decoration: Vec<Option<Decoration>>) -> Result<Self, PermError> {
        let n = image.len();
        if n < 3 {
            return Err(PermError::SizeTooSmall(n));
        }
        if n > MAX_N {
            return Err(PermError::SizeTooLarge(n));
        }
        if decoration.len() != n {
            return Err(PermError::NotABijection(format!(
                "{} decorations for {} points",
                decoration.len(),
                n
            )));
        }
        let mut seen = vec![false; n + 1];
        for (idx, &v) in image.iter().enumerate() {
            if v == 0 || v > n {
                return Err(PermError::NotABijection(format!(
                    "image of {} is {} outside 1..={}",
                    idx + 1,
                    v,
                    n
                )));
            }
            if seen[v] {
                return Err(PermError::NotABijection(format!("value {v} repeated")));
            }
            seen[v] = true;
        }
        for (idx, (&v, d)) in image.iter().zip(&decoration).enumerate() {
            let i = idx + 1;
            match (v == i, d.is_some()) {
                (true, false) => return Err(PermError::UndecoratedFixedPoint(i)),
                (false, true) => return Err(PermError::DecoratedNonFixedPoint(i)),
                _ => {}
            }
        }
        Ok(Self { image, decoration })
    }

    /// A permutation without fixed points.
    pub fn from_images(image: Vec<usize>) -> Result<Self, PermError> {
        let n = image.len();
        Self::new(image, vec![None; n])
    }

    /// The uniform permutation `j -> j - k (mod n)`.
    pub fn uniform(k: usize, n: usize) -> Result<Self, PermError> {
        if n < 3 {
            return Err(PermError::SizeTooSmall(n));
        }
        let k = k % n;
        let image = (1..=n).map(|j| (j + n - 1 - k) % n + 1).collect();
        if k == 0 {
            let deco = vec![Some(Decoration::Loop); n];
            return Self::new(image, deco);
        }
        Self::from_images(image)
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    /// `pi(i)` for `i` in `1..=n`.
    pub fn image(&self, i: usize) -> usize {
        self.image[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    pub fn decoration(&self, i: usize) -> Option<Decoration> {
        self.decoration[i - 1]
    }

    pub fn is_fixed(&self, i: usize) -> bool {
        self.image(i) == i
    }

    pub fn fixed_points(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.n()).filter(move |&i| self.is_fixed(i))
    }

    pub fn inverse(&self) -> Self {
        let n = self.n();
        let mut inv = vec![0; n];
        for i in 1..=n {
            inv[self.image(i) - 1] = i;
        }
        Self { image: inv, decoration: self.decoration.clone() }
    }

    /// Conjugate by the relabelling `i -> i + 1 (mod n)`.
    pub fn rotate(&self) -> Self {
        let n = self.n();
        let mut image = vec![0; n];
        let mut decoration = vec![None; n];
        for i in 1..=n {
            let j = cyc(i + 1, n);
            image[j - 1] = cyc(self.image(i) + 1, n);
            decoration[j - 1] = self.decoration(i);
        }
        Self { image, decoration }
    }

    /// True iff no proper cyclic interval is mapped onto itself.
    pub fn is_connected(&self) -> bool {
        let n = self.n();
        for start in 1..=n {
            for len in 1..n {
                let stable = (0..len).all(|d| {
                    let i = cyc(start + d, n);
                    offset(start, self.image(i), n) < len
                });
                if stable {
                    return false;
                }
            }
        }
        true
    }

    /// Number of `i` with `pi(i) > i`, plus the coloops.
    pub fn noninversion_count(&self) -> usize {
        (1..=self.n())
            .filter(|&i| {
                let v = self.image(i);
                v > i || (v == i && self.decoration(i) == Some(Decoration::Coloop))
            })
            .count()
    }

    /// Whether boundary vertex `w` lies strictly left of the strand starting at `j`.
    pub fn left_of_strand(&self, j: usize, w: usize) -> bool {
        match self.decoration(j) {
            Some(Decoration::Coloop) => false,
            Some(Decoration::Loop) => true,
            None => CyclicInterval::open_closed(j, self.image(j), self.n()).contains(w),
        }
    }

    /// Compact form `256134`; only unambiguous when `n <= 9` and undecorated.
    pub fn compact(&self) -> String {
        if self.n() <= 9 {
            let mut s = String::new();
            for i in 1..=self.n() {
                s.push_str(&self.image(i).to_string());
                s.push_str(suffix(self.decoration(i)));
            }
            s
        } else {
            self.to_string()
        }
    }
}

fn suffix(d: Option<Decoration>) -> &'static str {
    match d {
        Some(Decoration::Coloop) => "+",
        Some(Decoration::Loop) => "-",
        None => "",
    }
}

impl fmt::Display for DecoratedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.n() {
            if i > 1 {
                f.write_str(" ")?;
            }
            write!(f, "{}{}", self.image(i), suffix(self.decoration(i)))?;
        }
        Ok(())
    }
}

/// Parses whitespace separated one-line notation, e.g. `"2 5 6 1 3 4"` or `"1+ 3 2"`.
pub fn parse_permutation(text: &str) -> Result<DecoratedPermutation, PermError> {
    let mut image = Vec::new();
    let mut decoration = Vec::new();
    for tok in text.split_whitespace() {
        let (digits, deco) = match tok.as_bytes().last() {
            Some(b'+') => (&tok[..tok.len() - 1], Some(Decoration::Coloop)),
            Some(b'-') => (&tok[..tok.len() - 1], Some(Decoration::Loop)),
            _ => (tok, None),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(PermError::MalformedToken(tok.to_string()));
        }
        let v: usize = digits.parse().map_err(|_| PermError::MalformedToken(tok.to_string()))?;
        image.push(v);
        decoration.push(deco);
    }
    DecoratedPermutation::new(image, decoration)
}

impl FromStr for DecoratedPermutation {
    type Err = PermError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_permutation(s)
    }
}

/// JSON wire form `{"n", "image", "coloops", "loops"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutationJson {
    pub n: usize,
    pub image: Vec<usize>,
    pub coloops: Vec<usize>,
    pub loops: Vec<usize>,
}

impl From<&DecoratedPermutation> for PermutationJson {
    fn from(p: &DecoratedPermutation) -> Self {
        let with = |d| (1..=p.n()).filter(|&i| p.decoration(i) == Some(d)).collect();
        PermutationJson {
            n: p.n(),
            image: p.image.clone(),
            coloops: with(Decoration::Coloop),
            loops: with(Decoration::Loop),
        }
    }
}

impl TryFrom<PermutationJson> for DecoratedPermutation {
    type Error = PermError;
    fn try_from(j: PermutationJson) -> Result<Self, Self::Error> {
        if j.image.len() != j.n {
            return Err(PermError::NotABijection(format!(
                "n = {} but {} images",
                j.n,
                j.image.len()
            )));
        }
        let mut decoration = vec![None; j.n];
        for (list, d) in [(&j.coloops, Decoration::Coloop), (&j.loops, Decoration::Loop)] {
            for &i in list {
                if i == 0 || i > j.n || decoration[i - 1].is_some() {
                    return Err(PermError::DecoratedNonFixedPoint(i));
                }
                decoration[i - 1] = Some(d);
            }
        }
        DecoratedPermutation::new(j.image, decoration)
    }
}

impl Serialize for DecoratedPermutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PermutationJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for DecoratedPermutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = PermutationJson::deserialize(d)?;
        DecoratedPermutation::try_from(j).map_err(serde::de::Error::custom)
    }
}

/// Reduce any integer representative to `1..=n`.
pub fn cyc(i: usize, n: usize) -> usize {
    (i + n - 1) % n + 1
}

/// Signed-free cyclic label arithmetic: `i + d (mod n)` in `1..=n`.
pub fn cyc_add(i: usize, d: isize, n: usize) -> usize {
    let n_i = n as isize;
    ((i as isize - 1 + d).rem_euclid(n_i) + 1) as usize
}

/// Clockwise distance from `a` to `b`, in `0..n`.
pub fn offset(a: usize, b: usize, n: usize) -> usize {
    (b + n - a) % n
}

/// An interval of `[n]` read clockwise from `start` to `end`.
///
/// When `start == end` the closed interval is `{start}` and every other
/// variant is empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CyclicInterval {
    pub start: usize,
    pub end: usize,
    pub include_start: bool,
    pub include_end: bool,
    pub n: usize,
}

impl CyclicInterval {
    pub fn new(start: usize, end: usize, include_start: bool, include_end: bool, n: usize) -> Self {
        Self { start: cyc(start, n), end: cyc(end, n), include_start, include_end, n }
    }
    /// `[a, b]`
    pub fn closed(a: usize, b: usize, n: usize) -> Self {
        Self::new(a, b, true, true, n)
    }
    /// `(a, b)`
    pub fn open(a: usize, b: usize, n: usize) -> Self {
        Self::new(a, b, false, false, n)
    }
    /// `[a, b)`
    pub fn closed_open(a: usize, b: usize, n: usize) -> Self {
        Self::new(a, b, true, false, n)
    }
    /// `(a, b]`
    pub fn open_closed(a: usize, b: usize, n: usize) -> Self {
        Self::new(a, b, false, true, n)
    }

    pub fn contains(&self, x: usize) -> bool {
        let off = offset(self.start, cyc(x, self.n), self.n);
        let span = offset(self.start, self.end, self.n);
        if self.start == self.end {
            return off == 0 && self.include_start && self.include_end;
        }
        (off > 0 || self.include_start) && (off < span || (off == span && self.include_end))
    }

    /// Members in clockwise order from `start`.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).map(move |d| cyc(self.start + d, self.n)).filter(move |&x| self.contains(x))
    }

    pub fn len(&self) -> usize {
        self.iter().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// All connected decorated permutations of `[n]`, in lexicographic order of images.
///
/// A fixed point is always a stable interval, so none of these carry decorations.
pub fn connected_permutations(n: usize) -> Vec<DecoratedPermutation> {
    use itertools::Itertools;
    (1..=n)
        .permutations(n)
        .filter(|img| img.iter().enumerate().all(|(i, &v)| v != i + 1))
        .filter_map(|img| DecoratedPermutation::from_images(img).ok())
        .filter(|p| p.is_connected())
        .collect()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> DecoratedPermutation {
        parse_permutation(s).unwrap()
    }

    #[test]
    fn parses_golden_examples() {
        let a = p("2 5 6 1 3 4");
        assert_eq!(a.images(), &[2, 5, 6, 1, 3, 4]);
        let b = p("4 5 8 2 9 1 6 7 3");
        assert_eq!(b.fixed_points().count(), 0);
        assert_eq!(parse_permutation("1 3 2"), Err(PermError::UndecoratedFixedPoint(1)));
        let c = p("1+ 3 2");
        assert_eq!(c.decoration(1), Some(Decoration::Coloop));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_permutation("2 1"), Err(PermError::SizeTooSmall(2))));
        assert!(matches!(parse_permutation("2 2 1"), Err(PermError::NotABijection(_))));
        assert!(matches!(parse_permutation("2 3 4"), Err(PermError::NotABijection(_))));
        assert_eq!(parse_permutation("2+ 3 1"), Err(PermError::DecoratedNonFixedPoint(1)));
        assert!(matches!(parse_permutation("2 x 1"), Err(PermError::MalformedToken(_))));
        assert!(matches!(parse_permutation("2 +3 1"), Err(PermError::MalformedToken(_))));
        assert!(matches!(parse_permutation("2 3- 1 4"), Err(PermError::DecoratedNonFixedPoint(2))));
    }

    #[test]
    fn connectivity_examples() {
        assert!(p("2 5 6 1 3 4").is_connected());
        assert!(!p("2 1 4 3").is_connected());
        assert!(p("4 5 8 2 9 1 6 7 3").is_connected());
        assert!(!p("1+ 3 2").is_connected());
        assert!(!p("2 3 1 4-").is_connected());
    }

    #[test]
    fn noninversions() {
        assert_eq!(p("2 5 6 1 3 4").noninversion_count(), 3);
        assert_eq!(p("4 5 8 2 9 1 6 7 3").noninversion_count(), 4);
        assert_eq!(p("1+ 3 4 2").noninversion_count(), 3);
        assert_eq!(p("1- 3 4 2").noninversion_count(), 2);
        for n in 3..9 {
            for k in 1..n {
                assert_eq!(DecoratedPermutation::uniform(k, n).unwrap().noninversion_count(), k);
            }
        }
    }

    #[test]
    fn strand_sides() {
        let a = p("2 5 6 1 3 4");
        assert!(a.left_of_strand(3, 5));
        assert!(!a.left_of_strand(3, 1));
        let c = p("1+ 3 4 2");
        assert!((1..=4).all(|w| !c.left_of_strand(1, w)));
        let l = p("1- 3 4 2");
        assert!((1..=4).all(|w| l.left_of_strand(1, w)));
    }

    #[test]
    fn intervals() {
        let n = 6;
        let members = |iv: CyclicInterval| iv.iter().collect::<Vec<_>>();
        assert_eq!(members(CyclicInterval::open_closed(3, 6, n)), vec![4, 5, 6]);
        assert_eq!(members(CyclicInterval::open_closed(5, 3, n)), vec![6, 1, 2, 3]);
        assert_eq!(members(CyclicInterval::closed_open(3, 1, n)), vec![3, 4, 5, 6]);
        assert_eq!(members(CyclicInterval::open(2, 2, n)), Vec::<usize>::new());
        assert_eq!(members(CyclicInterval::closed(2, 2, n)), vec![2]);
        assert_eq!(members(CyclicInterval::open(1, 2, n)), Vec::<usize>::new());
        assert_eq!(members(CyclicInterval::closed(6, 1, n)), vec![6, 1]);
    }

    #[test]
    fn json_form() {
        let c = p("1+ 3 4 2");
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"n":4,"image":[1,3,4,2],"coloops":[1],"loops":[]}"#);
        let back: DecoratedPermutation = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn connected_counts() {
        for n in 3..=7 {
            let fast = connected_permutations(n).len();
            let slow = brute_connected(n);
            assert_eq!(fast, slow, "n = {n}");
        }
        assert_eq!(connected_permutations(3).len(), 2);
        assert_eq!(connected_permutations(4).len(), 7);
        assert_eq!(connected_permutations(5).len(), 34);
        assert_eq!(connected_permutations(6).len(), 206);
    }

    // Independent count: a permutation is disconnected iff some proper
    // cyclic interval S (given as a bitmask) satisfies pi(S) = S.
    fn brute_connected(n: usize) -> usize {
        use itertools::Itertools;
        let intervals: Vec<u64> = (0..n)
            .flat_map(|s| (1..n).map(move |len| (0..len).fold(0u64, |m, d| m | 1 << ((s + d) % n))))
            .collect();
        (0..n)
            .permutations(n)
            .filter(|img| {
                intervals.iter().all(|&m| {
                    let image = (0..n).filter(|i| m >> i & 1 == 1).fold(0u64, |acc, i| acc | 1 << img[i]);
                    image != m
                })
            })
            .count()
    }

    pub fn arb_perm() -> impl Strategy<Value = DecoratedPermutation> {
        (3usize..10)
            .prop_flat_map(|n| {
                let ids: Vec<usize> = (1..=n).collect();
                (Just(ids).prop_shuffle(), proptest::collection::vec(any::<bool>(), n))
            })
            .prop_map(|(img, colours)| {
                let deco = img
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| (v == i + 1).then_some(if colours[i] { Decoration::Coloop } else { Decoration::Loop }))
                    .collect();
                DecoratedPermutation::new(img, deco).unwrap()
            })
    }

    proptest! {
        #[test]
        fn format_parse_roundtrip(q in arb_perm()) {
            prop_assert_eq!(parse_permutation(&q.to_string()).unwrap(), q);
        }

        #[test]
        fn connectivity_symmetries(q in arb_perm()) {
            prop_assert_eq!(q.is_connected(), q.inverse().is_connected());
            prop_assert_eq!(q.is_connected(), q.rotate().is_connected());
        }

        #[test]
        fn noninversions_rotation_invariant(q in arb_perm()) {
            prop_assert_eq!(q.noninversion_count(), q.rotate().noninversion_count());
        }

        #[test]
        fn right_side_count_is_k(q in arb_perm()) {
            let k = q.noninversion_count();
            for v in 1..=q.n() {
                let right = (1..=q.n()).filter(|&j| !q.left_of_strand(j, v)).count();
                prop_assert_eq!(right, k);
            }
        }
    }
}
