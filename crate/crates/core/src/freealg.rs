//! The free associative algebra K{x_1, ..., x_n}.
//!
//! Generators are 0-based letters internally; the text grammar uses the
//! presentation's generator names. Words are ordered deglex: shorter first,
//! then lexicographically by letter index.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::scalar::{FieldKind, Scalar, ScalarError};

/// Largest coordinate space a degree slice may span.
pub const MAX_SLICE_DIM: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeAlgError {
    #[error("generator count mismatch: {0} vs {1}")]
    GeneratorCountMismatch(usize, usize),
    #[error("polynomial is not homogeneous of degree {0}")]
    NotHomogeneous(usize),
    #[error("slice F_{degree} over {n} generators has dimension {n}^{degree} > {max}; lower the degree bound")]
    SliceTooLarge { n: usize, degree: usize, max: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at column {column}: {message}")]
pub struct ParseError {
    pub column: usize,
    pub message: String,
    /// Set when the failure is an identifier that is neither a generator nor a parameter.
    pub unknown_name: Option<String>,
}

/// A monomial of the free algebra. The empty word is the unit.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(i: u8) -> Self {
        Word(vec![i])
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Concatenation `left · self · right`.
    pub fn wrap(&self, left: &Word, right: &Word) -> Word {
        let mut v = Vec::with_capacity(left.0.len() + self.0.len() + right.0.len());
        v.extend_from_slice(&left.0);
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&right.0);
        Word(v)
    }

    pub fn max_letter(&self) -> Option<u8> {
        self.0.iter().copied().max()
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0.iter().map(|&l| names[l as usize].as_str()).collect::<Vec<_>>().join("*")
    }

    /// All words of length `d` over `n` letters, in deglex (= slice index) order.
    pub fn all(n: usize, d: usize) -> impl Iterator<Item = Word> {
        let total = n.checked_pow(d as u32).unwrap_or(usize::MAX);
        (0..total).map(move |i| Word::from_index(i, n, d))
    }

    fn from_index(mut idx: usize, n: usize, d: usize) -> Word {
        let mut v = vec![0u8; d];
        for slot in v.iter_mut().rev() {
            *slot = (idx % n) as u8;
            idx /= n;
        }
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Deglex comparison of two words.
pub fn deglex_cmp(u: &Word, v: &Word) -> Ordering {
    u.cmp(v)
}

/// A sparse linear combination of words with no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<Word, Scalar>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly { n, terms: BTreeMap::new() }
    }

    pub fn monomial(n: usize, word: Word, coef: Scalar) -> Self {
        let mut p = Poly::zero(n);
        p.add_term(word, coef);
        p
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut p = Poly::zero(n);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn n_generators(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, w: &Word) -> Option<&Scalar> {
        self.terms.get(w)
    }

    pub fn add_term(&mut self, word: Word, coef: Scalar) {
        if coef.is_zero() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(c) => {
                let s = &*c + &coef;
                if s.is_zero() {
                    self.terms.remove(&word);
                } else {
                    *c = s;
                }
            }
            None => {
                self.terms.insert(word, coef);
            }
        }
    }

    /// Largest word under deglex with its coefficient.
    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<usize> {
        self.leading().map(|(w, _)| w.degree())
    }

    pub fn field(&self) -> Option<FieldKind> {
        self.terms.values().next().map(Scalar::kind)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys();
        match it.next() {
            None => true,
            Some(w) => it.all(|v| v.degree() == w.degree()),
        }
    }

    /// Sum of the terms of exact word-degree `d`.
    pub fn homogeneous_component(&self, d: usize) -> Poly {
        Poly {
            n: self.n,
            terms: self.terms.iter().filter(|(w, _)| w.degree() == d).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    /// Degrees that carry at least one term, ascending.
    pub fn component_degrees(&self) -> Vec<usize> {
        let mut ds: Vec<usize> = self.terms.keys().map(Word::degree).collect();
        ds.dedup();
        ds
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n);
        }
        Poly { n: self.n, terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect() }
    }

    pub fn neg(&self) -> Poly {
        Poly { n: self.n, terms: self.terms.iter().map(|(w, v)| (w.clone(), -v)).collect() }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly, FreeAlgError> {
        self.check_n(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly, FreeAlgError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly, FreeAlgError> {
        self.check_n(other)?;
        let mut out = Poly::zero(self.n);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a * b);
            }
        }
        Ok(out)
    }

    /// `left · self · right` for words `left`, `right`.
    pub fn wrap(&self, left: &Word, right: &Word) -> Poly {
        Poly { n: self.n, terms: self.terms.iter().map(|(w, c)| (w.wrap(left, right), c.clone())).collect() }
    }

    /// Makes the leading coefficient 1.
    pub fn monic(&self) -> Result<Poly, ScalarError> {
        match self.leading() {
            None => Ok(self.clone()),
            Some((_, c)) => Ok(self.scale(&c.inv()?)),
        }
    }

    fn check_n(&self, other: &Poly) -> Result<(), FreeAlgError> {
        if self.n != other.n {
            return Err(FreeAlgError::GeneratorCountMismatch(self.n, other.n));
        }
        Ok(())
    }

    /// Renders in the text grammar, terms in descending deglex order.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let word_empty = w.degree() == 0;
            if abs.is_one() {
                out.push_str(&w.render(names));
            } else if word_empty {
                out.push_str(&abs.to_string());
            } else {
                out.push_str(&format!("{}*{}", abs, w.render(names)));
            }
        }
        out
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.n).map(|i| format!("x{}", i + 1)).collect();
        write!(f, "{}", self.render(&names))
    }
}

/// The homogeneous slice F_d with the deglex-consistent coordinate index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DegreeSlice {
    pub n: usize,
    pub degree: usize,
    dim: usize,
}

/// Sparse coordinate vector: (index, nonzero value), indices ascending.
pub type SparseVec = Vec<(u32, Scalar)>;

impl DegreeSlice {
    pub fn new(n: usize, degree: usize) -> Result<Self, FreeAlgError> {
        let too_large = FreeAlgError::SliceTooLarge { n, degree, max: MAX_SLICE_DIM };
        let dim = n.checked_pow(degree as u32).ok_or(too_large.clone())?;
        if dim > MAX_SLICE_DIM {
            return Err(too_large);
        }
        Ok(DegreeSlice { n, degree, dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn index(&self, w: &Word) -> usize {
        debug_assert_eq!(w.degree(), self.degree);
        w.letters().iter().fold(0usize, |acc, &l| acc * self.n + l as usize)
    }

    pub fn word(&self, idx: usize) -> Word {
        Word::from_index(idx, self.n, self.degree)
    }

    pub fn words(&self) -> impl Iterator<Item = Word> {
        Word::all(self.n, self.degree)
    }

    pub fn to_vector(&self, f: &Poly) -> Result<SparseVec, FreeAlgError> {
        if f.n != self.n {
            return Err(FreeAlgError::GeneratorCountMismatch(f.n, self.n));
        }
        if f.terms.keys().any(|w| w.degree() != self.degree) {
            return Err(FreeAlgError::NotHomogeneous(self.degree));
        }
        // deglex order on equal-length words agrees with index order
        Ok(f.terms.iter().map(|(w, c)| (self.index(w) as u32, c.clone())).collect())
    }

    pub fn from_vector(&self, v: &[(u32, Scalar)]) -> Poly {
        Poly::from_terms(self.n, v.iter().map(|(i, c)| (self.word(*i as usize), c.clone())))
    }
}

/// Resolves names in the polynomial grammar.
pub trait NameScope {
    fn generator(&self, name: &str) -> Option<u8>;
    fn parameter(&self, name: &str) -> Option<Scalar>;
    fn field(&self) -> FieldKind;
    fn n_generators(&self) -> usize;
}

/// Parses `-2*x*y + y*x`, `x^2 - q*x*y`, `3/2*z`. Coefficients may be
/// integers, fractions `a/b` or bound parameter names.
pub fn parse_poly(text: &str, scope: &dyn NameScope) -> Result<Poly, ParseError> {
    Parser { src: text.as_bytes(), pos: 0, scope }.poly()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    scope: &'a dyn NameScope,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { column: self.pos + 1, message: message.into(), unknown_name: None })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn poly(&mut self) -> Result<Poly, ParseError> {
        let n = self.scope.n_generators();
        let mut out = Poly::zero(n);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                None if first => return self.err("empty expression"),
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                Some(_) if first => 1,
                Some(c) => return self.err(format!("expected `+` or `-`, found `{}`", c as char)),
            };
            first = false;
            let (word, coef) = self.term()?;
            let coef = if sign < 0 { -coef } else { coef };
            out.add_term(word, coef);
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Word, Scalar), ParseError> {
        let field = self.scope.field();
        let mut coef = field.one();
        let mut letters = Vec::new();
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let start = self.pos;
                    while self.pos < self.src.len()
                        && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'/')
                    {
                        self.pos += 1;
                    }
                    let lit = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    let v = match field.parse(lit) {
                        Ok(v) => v,
                        Err(e) => {
                            self.pos = start;
                            return self.err(e.to_string());
                        }
                    };
                    coef = &coef * &v;
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let start = self.pos;
                    while self.pos < self.src.len()
                        && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                    {
                        self.pos += 1;
                    }
                    let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    let power = self.power()?;
                    if let Some(g) = self.scope.generator(name) {
                        letters.extend(std::iter::repeat_n(g, power));
                    } else if let Some(v) = self.scope.parameter(name) {
                        for _ in 0..power {
                            coef = &coef * &v;
                        }
                    } else {
                        self.pos = start;
                        let mut e = self.err::<()>(format!("unknown generator `{name}`")).unwrap_err();
                        e.unknown_name = Some(name.to_string());
                        return Err(e);
                    }
                }
                Some(c) => return self.err(format!("expected a factor, found `{}`", c as char)),
                None => return self.err("expected a factor, found end of input"),
            }
            match self.peek() {
                Some(b'*') => self.pos += 1,
                _ => break,
            }
        }
        Ok((Word::new(letters), coef))
    }

    fn power(&mut self) -> Result<usize, ParseError> {
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        match std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse::<usize>() {
            Ok(p) if p >= 1 => Ok(p),
            _ => self.err("expected a positive exponent after `^`"),
        }
    }
}

/// A plain name scope: generator names plus parameter bindings.
pub struct Names<'a> {
    pub generators: &'a [String],
    pub params: &'a BTreeMap<String, Scalar>,
    pub field: FieldKind,
}

impl NameScope for Names<'_> {
    fn generator(&self, name: &str) -> Option<u8> {
        self.generators.iter().position(|g| g == name).map(|i| i as u8)
    }
    fn parameter(&self, name: &str) -> Option<Scalar> {
        self.params.get(name).cloned()
    }
    fn field(&self) -> FieldKind {
        self.field
    }
    fn n_generators(&self) -> usize {
        self.generators.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    fn parse(text: &str, gens: &[&str]) -> Poly {
        let g = names(gens);
        let params = BTreeMap::from([("q".to_string(), FieldKind::Rationals.from_i64(2))]);
        parse_poly(text, &Names { generators: &g, params: &params, field: FieldKind::Rationals }).unwrap()
    }

    #[test]
    fn multiplication() {
        let xy = ["x", "y"];
        assert_eq!(parse("x + y", &xy).mul(&parse("x", &xy)).unwrap(), parse("x*x + y*x", &xy));
        assert_eq!(parse("y*x - 2*x*y", &xy).mul(&parse("y", &xy)).unwrap(), parse("y*x*y - 2*x*y*y", &xy));
        assert!(Poly::zero(2).mul(&parse("x*y", &xy)).unwrap().is_zero());
        assert!(matches!(Poly::zero(3).mul(&parse("x", &xy)), Err(FreeAlgError::GeneratorCountMismatch(3, 2))));
    }

    #[test]
    fn components() {
        let f = parse("x*y - y*x - z", &["x", "y", "z"]);
        assert_eq!(f.homogeneous_component(2), parse("x*y - y*x", &["x", "y", "z"]));
        assert_eq!(f.homogeneous_component(1), parse("-z", &["x", "y", "z"]));
        let g = parse("x^2 - x*y", &["x", "y"]);
        assert_eq!(g.homogeneous_component(2), g);
        let h = parse("x*y - x", &["x", "y"]);
        assert_eq!(h.homogeneous_component(1), parse("-x", &["x", "y"]));
    }

    #[test]
    fn coordinates() {
        let s1 = DegreeSlice::new(2, 1).unwrap();
        assert_eq!(s1.to_vector(&parse("x", &["x", "y"])).unwrap(), vec![(0, FieldKind::Rationals.one())]);
        assert_eq!(s1.to_vector(&parse("y", &["x", "y"])).unwrap(), vec![(1, FieldKind::Rationals.one())]);
        let s2 = DegreeSlice::new(2, 2).unwrap();
        let v = s2.to_vector(&parse("y*x - 2*x*y", &["x", "y"])).unwrap();
        let q = FieldKind::Rationals;
        // index(xy) = 1, index(yx) = 2
        assert_eq!(v, vec![(1, q.from_i64(-2)), (2, q.one())]);
        assert_eq!(s2.to_vector(&parse("x", &["x", "y"])), Err(FreeAlgError::NotHomogeneous(2)));
        assert!(matches!(DegreeSlice::new(2, 17), Err(FreeAlgError::SliceTooLarge { .. })));
    }

    #[test]
    fn deglex_examples() {
        let x = Word::letter(0);
        let y = Word::letter(1);
        let xx = Word::new(vec![0, 0]);
        let xy = Word::new(vec![0, 1]);
        let yx = Word::new(vec![1, 0]);
        assert!(x < y && y < xx);
        assert!(xy < yx);
        assert!(xy.wrap(&x, &y) < yx.wrap(&x, &y));
    }

    #[test]
    fn grammar() {
        let xy = ["x", "y"];
        assert_eq!(parse("y*x - q*x*y", &xy), parse("y*x - 2*x*y", &xy));
        assert_eq!(parse("x^2", &xy), parse("x*x", &xy));
        let g = names(&xy);
        let params = BTreeMap::new();
        let scope = Names { generators: &g, params: &params, field: FieldKind::Rationals };
        assert!(parse_poly("x*", &scope).is_err());
        assert!(parse_poly("x*w", &scope).is_err());
        assert!(parse_poly("", &scope).is_err());
        assert!(parse_poly("x y", &scope).is_err());
        assert_eq!(parse("-3/2*x*y + 1", &xy).render(&g), "-3/2*x*y + 1");
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((prop::collection::vec(0u8..2, 0..4), -3i64..4), 0..6).prop_map(|ts| {
            Poly::from_terms(2, ts.into_iter().map(|(w, c)| (Word::new(w), FieldKind::Rationals.from_i64(c))))
        })
    }

    proptest! {
        #[test]
        fn mul_associative(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        }

        #[test]
        fn components_sum_to_whole(f in arb_poly()) {
            let mut sum = Poly::zero(2);
            for d in 0..5 {
                sum = sum.add(&f.homogeneous_component(d)).unwrap();
            }
            prop_assert_eq!(sum, f.clone());
            let g = names(&["x", "y"]);
            let params = BTreeMap::new();
            let scope = Names { generators: &g, params: &params, field: FieldKind::Rationals };
            prop_assert_eq!(parse_poly(&f.render(&g), &scope).unwrap(), f);
        }

        #[test]
        fn vector_round_trip(f in arb_poly(), d in 0usize..4) {
            let h = f.homogeneous_component(d);
            let s = DegreeSlice::new(2, d).unwrap();
            prop_assert_eq!(s.from_vector(&s.to_vector(&h).unwrap()), h);
        }

        #[test]
        fn deglex_compatible(u in prop::collection::vec(0u8..3, 0..4), v in prop::collection::vec(0u8..3, 0..4),
                             a in prop::collection::vec(0u8..3, 0..3), b in prop::collection::vec(0u8..3, 0..3)) {
            let (u, v, a, b) = (Word::new(u), Word::new(v), Word::new(a), Word::new(b));
            prop_assert_eq!(deglex_cmp(&u, &v), deglex_cmp(&u.wrap(&a, &b), &v.wrap(&a, &b)));
        }
    }
}
