//! Bounded affine permutations and their bridge decompositions.

use rand::seq::SliceRandom;
use rand::SeedableRng;

use crate::perm::{Decoration, DecoratedPermutation};

/// `f : Z -> Z` with `f(i + n) = f(i) + n` and `i <= f(i) <= i + n`, stored on `[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffinePermutation {
    values: Vec<i64>,
}

impl AffinePermutation {
    /// Built from the inverse of the strand permutation: a strand ending at
    /// `i` from `j` gives `f(i) = j` lifted above `i`. Loops sit at `i`, coloops at `i + n`.
    pub fn from_decorated(p: &DecoratedPermutation) -> Self {
        let n = p.n() as i64;
        let inv = p.inverse();
        let values = (1..=p.n())
            .map(|i| {
                let (i64i, g) = (i as i64, inv.image(i) as i64);
                match inv.decoration(i) {
                    Some(Decoration::Loop) => i64i,
                    Some(Decoration::Coloop) => i64i + n,
                    None if g > i64i => g,
                    None => g + n,
                }
            })
            .collect();
        AffinePermutation { values }
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// `f(i)` for any integer `i`.
    pub fn at(&self, i: i64) -> i64 {
        let n = self.n() as i64;
        let r = (i - 1).rem_euclid(n);
        self.values[r as usize] + (i - 1 - r)
    }

    pub fn k(&self) -> usize {
        let total: i64 = self.values.iter().enumerate().map(|(i, &f)| f - (i as i64 + 1)).sum();
        (total / self.n() as i64) as usize
    }

    /// Inversions `(i, j)` with `i` in `[n]`, `i < j` and `f(i) > f(j)`.
    pub fn length(&self) -> usize {
        let n = self.n() as i64;
        let mut count = 0;
        for i in 1..=n {
            for j in i + 1..i + 2 * n {
                if self.at(i) > self.at(j) {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn is_dead(&self, i: usize) -> bool {
        let f = self.values[i - 1];
        f == i as i64 || f == (i + self.n()) as i64
    }

    fn is_bounded(&self) -> bool {
        self.values.iter().enumerate().all(|(i, &f)| (i as i64 + 1..=i as i64 + 1 + self.n() as i64).contains(&f))
    }

    /// Positroid dimension `k(n - k) - length`.
    pub fn dimension(&self) -> usize {
        let k = self.k();
        k * (self.n() - k) - self.length()
    }

    /// Exchanges the values at `a` and at the lift of `c` above `a`.
    fn swapped(&self, a: usize, c: usize) -> Self {
        let n = self.n() as i64;
        let lift = if c > a { c as i64 } else { c as i64 + n };
        let (fa, fc) = (self.at(a as i64), self.at(lift));
        let mut values = self.values.clone();
        values[a - 1] = fc;
        values[c - 1] = fa - (lift - c as i64);
        AffinePermutation { values }
    }
}

/// A bridge between boundary legs `left` and `right`, the next live leg
/// clockwise of `left`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Bridge {
    pub left: usize,
    pub right: usize,
}

/// Which admissible bridge to peel when several are available.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BridgeOrder {
    Least,
    Greatest,
    Seeded(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgeDecomposition {
    /// Outermost first.
    pub bridges: Vec<Bridge>,
    pub start: AffinePermutation,
}

/// Peels bridges until every point is a loop or coloop. Each peel raises the
/// length by exactly one, so there are as many bridges as the dimension.
pub fn bridge_decomposition(p: &DecoratedPermutation, order: BridgeOrder) -> Option<BridgeDecomposition> {
    let start = AffinePermutation::from_decorated(p);
    let n = start.n();
    let mut rng = match order {
        BridgeOrder::Seeded(s) => Some(rand::rngs::StdRng::seed_from_u64(s)),
        _ => None,
    };
    let mut f = start.clone();
    let mut length = f.length();
    let mut bridges = Vec::new();
    loop {
        let live: Vec<usize> = (1..=n).filter(|&i| !f.is_dead(i)).collect();
        if live.is_empty() {
            return Some(BridgeDecomposition { bridges, start });
        }
        let mut options = Vec::new();
        for (idx, &a) in live.iter().enumerate() {
            let c = live[(idx + 1) % live.len()];
            if c == a {
                continue;
            }
            let g = f.swapped(a, c);
            if g.is_bounded() && g.length() == length + 1 {
                options.push((Bridge { left: a, right: c }, g));
            }
        }
        let pick = match (order, rng.as_mut()) {
            (BridgeOrder::Least, _) => options.into_iter().next(),
            (BridgeOrder::Greatest, _) => options.into_iter().last(),
            (_, Some(r)) => options.choose(r).cloned(),
            (_, None) => unreachable!(),
        }?;
        bridges.push(pick.0);
        f = pick.1;
        length += 1;
    }
}
