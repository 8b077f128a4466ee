//! Generator symbols, words over them, and relations.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::PresentationError;
use crate::perm::cyc;

/// A generator of the extended boundary quiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    /// `x_i : i -> i+1`
    X(usize),
    /// `y_i : i+1 -> i`
    Y(usize),
    /// nonadjacent arrow from the first vertex to the second
    A(usize, usize),
}

impl Symbol {
    pub fn source(self, n: usize) -> usize {
        match self {
            Symbol::X(i) => i,
            Symbol::Y(i) => cyc(i + 1, n),
            Symbol::A(a, _) => a,
        }
    }
    pub fn target(self, n: usize) -> usize {
        match self {
            Symbol::X(i) => cyc(i + 1, n),
            Symbol::Y(i) => i,
            Symbol::A(_, b) => b,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::X(i) => write!(f, "x{i}"),
            Symbol::Y(i) => write!(f, "y{i}"),
            Symbol::A(a, b) => write!(f, "A({a},{b})"),
        }
    }
}

impl FromStr for Symbol {
    type Err = PresentationError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PresentationError::MalformedSymbol(s.to_string());
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        if let Some(rest) = s.strip_prefix('x') {
            return Ok(Symbol::X(num(rest)?));
        }
        if let Some(rest) = s.strip_prefix('y') {
            return Ok(Symbol::Y(num(rest)?));
        }
        let inner = s.strip_prefix("A(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let (a, b) = inner.split_once(',').ok_or_else(bad)?;
        Ok(Symbol::A(num(a)?, num(b)?))
    }
}

impl Serialize for Symbol {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Symbol {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A composable word of symbols, read left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathSymbolWord {
    source: usize,
    target: usize,
    symbols: Vec<Symbol>,
}

impl PathSymbolWord {
    pub fn new(n: usize, symbols: Vec<Symbol>) -> Result<Self, PresentationError> {
        let first = symbols.first().ok_or(PresentationError::EmptyWord)?;
        let source = first.source(n);
        let mut at = source;
        for s in &symbols {
            if s.source(n) != at {
                return Err(PresentationError::NotComposable(format_symbols(&symbols)));
            }
            at = s.target(n);
        }
        Ok(Self { source, target: at, symbols })
    }

    pub fn constant(v: usize) -> Self {
        Self { source: v, target: v, symbols: Vec::new() }
    }

    pub fn source(&self) -> usize {
        self.source
    }
    pub fn target(&self) -> usize {
        self.target
    }
    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }
    pub fn len(&self) -> usize {
        self.symbols.len()
    }
    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Concatenation; panics if the words do not compose.
    pub fn then(&self, other: &PathSymbolWord) -> PathSymbolWord {
        assert_eq!(self.target, other.source, "{self} does not compose with {other}");
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        PathSymbolWord { source: self.source, target: other.target, symbols }
    }

    /// `x_i x_{i+1} .. x_{i+m-1}`
    pub fn x_power(i: usize, m: usize, n: usize) -> Self {
        let symbols = (0..m).map(|d| Symbol::X(cyc(i + d, n))).collect();
        Self { source: cyc(i, n), target: cyc(i + m, n), symbols }
    }

    /// `y_i y_{i-1} .. y_{i-m+1}`, starting at `i + 1`.
    pub fn y_power(i: usize, m: usize, n: usize) -> Self {
        let symbols = (0..m).map(|d| Symbol::Y(cyc(i + n * m - d, n))).collect();
        Self { source: cyc(i + 1, n), target: cyc(i + 1 + n * m - m, n), symbols }
    }

    /// `(x_v y_v)^m` at vertex `v`.
    pub fn xy_power(v: usize, m: usize) -> Self {
        let symbols = (0..m).flat_map(|_| [Symbol::X(v), Symbol::Y(v)]).collect();
        Self { source: v, target: v, symbols }
    }

    pub fn symbol(n: usize, s: Symbol) -> Self {
        Self { source: s.source(n), target: s.target(n), symbols: vec![s] }
    }
}

fn format_symbols(symbols: &[Symbol]) -> String {
    if symbols.is_empty() {
        return "e".to_string();
    }
    symbols.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("·")
}

impl fmt::Display for PathSymbolWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.symbols.is_empty() {
            write!(f, "e{}", self.source)
        } else {
            f.write_str(&format_symbols(&self.symbols))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationKind {
    /// `x_i y_i = y_{i-1} x_{i-1}`
    Commutation,
    /// `x_i^k = y_{i-1}^{n-k}`
    Grassmannian,
    /// `y^{reach_y} = A (xy)^Y`
    Nonadjacent,
    CyclicX,
    CyclicY,
}

/// `lhs = rhs` between parallel words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub kind: RelationKind,
    pub lhs: PathSymbolWord,
    pub rhs: PathSymbolWord,
}

impl Relation {
    pub fn new(kind: RelationKind, lhs: PathSymbolWord, rhs: PathSymbolWord) -> Self {
        debug_assert_eq!((lhs.source, lhs.target), (rhs.source, rhs.target), "{lhs} vs {rhs}");
        Relation { kind, lhs, rhs }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] = [{}]", self.lhs, self.rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powers_have_expected_endpoints() {
        let n = 6;
        let x = PathSymbolWord::x_power(5, 3, n);
        assert_eq!(x.symbols(), &[Symbol::X(5), Symbol::X(6), Symbol::X(1)]);
        assert_eq!((x.source(), x.target()), (5, 2));
        let y = PathSymbolWord::y_power(2, 3, n);
        assert_eq!(y.symbols(), &[Symbol::Y(2), Symbol::Y(1), Symbol::Y(6)]);
        assert_eq!((y.source(), y.target()), (3, 6));
        let y0 = PathSymbolWord::y_power(2, 0, n);
        assert_eq!((y0.source(), y0.target()), (3, 3));
        for w in [x, y] {
            assert_eq!(PathSymbolWord::new(n, w.symbols().to_vec()).unwrap(), w);
        }
    }

    #[test]
    fn composability_is_checked() {
        assert!(PathSymbolWord::new(6, vec![Symbol::X(1), Symbol::X(3)]).is_err());
        let w = PathSymbolWord::new(6, vec![Symbol::X(2), Symbol::A(3, 1)]).unwrap();
        assert_eq!((w.source(), w.target()), (2, 1));
        assert_eq!(w.to_string(), "x2·A(3,1)");
    }

    #[test]
    fn symbol_text_roundtrip() {
        for s in [Symbol::X(3), Symbol::Y(12), Symbol::A(6, 9)] {
            assert_eq!(s.to_string().parse::<Symbol>().unwrap(), s);
        }
        assert!("z1".parse::<Symbol>().is_err());
        assert!("A(1)".parse::<Symbol>().is_err());
    }
}
