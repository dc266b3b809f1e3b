//! Truncated Hilbert series of the filtration `F_{≤d}(B)`.
//!
//! The presentation is homogenized with a central letter z, completed up to a
//! weighted degree bound, and the z-free normal words of each degree are
//! counted. Monomials are compared by weighted degree, then by the weight
//! carried by non-z letters (so lower-order terms never lead), then by
//! length, then lexicographically with z largest. Whenever a reduced
//! polynomial has a leading word containing z, it is divisible by z and is
//! divided out; this keeps the completed ideal z-saturated, which is what
//! makes normal-word counts equal to the filtered dimensions.

use std::collections::{BTreeMap, HashMap, VecDeque};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::freealg::{Poly, Word};
use crate::koszul::{ideal_component, wrap_subspace, KoszulError};
use crate::presentation::{pbw_shape, Presentation};
use crate::scalar::Scalar;
use crate::subspace::Subspace;

/// Default bound on the number of rules created during completion.
pub const DEFAULT_RULE_CAP: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HilbertError {
    #[error("series with constant term {0} has no inverse")]
    NotInvertible(String),
    #[error("relation {0} is not homogeneous for the grading weights")]
    NotHomogeneous(usize),
    #[error("completion created more than {0} rules; lower --degree")]
    RuleCap(usize),
    #[error("at most 254 generators can be homogenized")]
    TooManyGenerators,
    #[error(transparent)]
    Koszul(#[from] KoszulError),
}

/// Integer power series known through degree `bound`.
#[derive(Clone, PartialEq, Eq)]
pub struct PowerSeriesTrunc {
    coeffs: Vec<BigInt>,
}

impl PowerSeriesTrunc {
    /// Coefficients c_0..c_D; an empty list is read as the zero series through degree 0.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        PowerSeriesTrunc { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(bound: usize) -> Self {
        Self::new(vec![BigInt::zero(); bound + 1])
    }

    pub fn one(bound: usize) -> Self {
        let mut s = Self::zero(bound);
        s.coeffs[0] = BigInt::one();
        s
    }

    pub fn bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Option<&BigInt> {
        self.coeffs.get(j)
    }

    /// Coefficients as i64 when they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }

    pub fn truncate(&self, bound: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(bound + 1, BigInt::zero());
        Self::new(c)
    }

    /// Product, known through the smaller of the two bounds.
    pub fn mul(&self, other: &Self) -> Self {
        let d = self.bound().min(other.bound());
        let mut out = vec![BigInt::zero(); d + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(d + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(d + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Multiplicative inverse; needs c_0 = ±1 to stay integral.
    pub fn inverse(&self) -> Result<Self, HilbertError> {
        let c0 = &self.coeffs[0];
        if !c0.abs().is_one() {
            return Err(HilbertError::NotInvertible(c0.to_string()));
        }
        let d = self.bound();
        let mut out = vec![BigInt::zero(); d + 1];
        out[0] = c0.clone();
        for k in 1..=d {
            let mut acc = BigInt::zero();
            for i in 1..=k {
                acc += &self.coeffs[i] * &out[k - i];
            }
            out[k] = -acc * c0;
        }
        Ok(Self::new(out))
    }

    /// The substitution t ↦ −t.
    pub fn eval_neg(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Coefficientwise equality through the smaller bound.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let d = self.bound().min(other.bound());
        self.coeffs[..=d] == other.coeffs[..=d]
    }
}

impl fmt::Debug for PowerSeriesTrunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(BigInt::to_string).collect();
        write!(f, "[{}; O(t^{})]", parts.join(", "), self.coeffs.len())
    }
}

impl Serialize for PowerSeriesTrunc {
    /// A JSON list; coefficients beyond i64 are written as strings.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let vals: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|c| c.to_i64().map_or_else(|| serde_json::Value::String(c.to_string()), serde_json::Value::from))
            .collect();
        vals.serialize(s)
    }
}

pub fn eq(a: &PowerSeriesTrunc, b: &PowerSeriesTrunc) -> bool {
    a == b
}

pub fn mul(a: &PowerSeriesTrunc, b: &PowerSeriesTrunc) -> PowerSeriesTrunc {
    a.mul(b)
}

pub fn eval_neg(a: &PowerSeriesTrunc) -> PowerSeriesTrunc {
    a.eval_neg()
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `1/(1 − t)^n` through degree `bound`.
pub fn one_over_one_minus_t_pow(n: usize, bound: usize) -> PowerSeriesTrunc {
    if n == 0 {
        return PowerSeriesTrunc::one(bound);
    }
    PowerSeriesTrunc::new((0..=bound as u64).map(|j| binomial(n as u64 + j - 1, j)).collect())
}

/// `(1 + t)^n` through degree `bound`.
pub fn one_plus_t_pow(n: usize, bound: usize) -> PowerSeriesTrunc {
    PowerSeriesTrunc::new(
        (0..=bound as u64).map(|j| if j as usize <= n { binomial(n as u64, j) } else { BigInt::zero() }).collect(),
    )
}

/// `Π_i 1/(1 − t^{w_i})` through degree `bound`.
pub fn one_over_weighted(weights: &[u32], bound: usize) -> PowerSeriesTrunc {
    let mut acc = PowerSeriesTrunc::one(bound);
    for &w in weights {
        let mut c = vec![BigInt::zero(); bound + 1];
        for k in (0..=bound).step_by(w.max(1) as usize) {
            c[k] = BigInt::one();
        }
        acc = acc.mul(&PowerSeriesTrunc::new(c));
    }
    acc
}

fn weighted_degree(w: &Word, weights: &[u32]) -> u32 {
    w.letters().iter().map(|&l| weights[l as usize]).sum()
}

/// Adds a new last generator z, commuting with everything, and pads every
/// weighted-degree component of each relation with powers of z up to the
/// relation's top weighted degree.
pub fn homogenize(p: &Presentation) -> Result<Presentation, HilbertError> {
    let n = p.n();
    if n > 254 {
        return Err(HilbertError::TooManyGenerators);
    }
    let mut name = "h_".to_string();
    while p.generators.contains(&name) {
        name.push('_');
    }
    let weights = p.weights_or_ones();
    let z = n as u8;
    let one = p.kind().one();
    let mut relations = Vec::with_capacity(p.relations.len() + n);
    for r in &p.relations {
        let top = r.terms().map(|(w, _)| weighted_degree(w, &weights)).max().unwrap_or(0);
        let terms = r.terms().map(|(w, c)| {
            let pad = Word::new(vec![z; (top - weighted_degree(w, &weights)) as usize]);
            (w.concat(&pad), c.clone())
        });
        relations.push(Poly::from_terms(n + 1, terms));
    }
    for i in 0..n as u8 {
        let zx = Word::new(vec![z, i]);
        let xz = Word::new(vec![i, z]);
        relations.push(Poly::from_terms(n + 1, [(zx, one.clone()), (xz, -&one)]));
    }
    let mut generators = p.generators.clone();
    generators.push(name);
    let mut w = weights;
    w.push(1);
    Ok(Presentation {
        name: format!("hom({})", p.name),
        generators,
        relations,
        field: p.field.clone(),
        weights: Some(w),
        connected: p.connected,
    })
}

/// Monomial key: weighted degree, weight outside the homogenizer, length, letters.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Mono {
    wdeg: u32,
    xw: u32,
    len: u32,
    letters: Vec<u8>,
}

struct Order {
    weights: Vec<u32>,
    z: Option<u8>,
}

impl Order {
    fn mono(&self, letters: Vec<u8>) -> Mono {
        let mut wdeg = 0;
        let mut xw = 0;
        for &l in &letters {
            let w = self.weights[l as usize];
            wdeg += w;
            if Some(l) != self.z {
                xw += w;
            }
        }
        Mono { wdeg, xw, len: letters.len() as u32, letters }
    }

    fn poly(&self, f: &Poly) -> Terms {
        f.terms().map(|(w, c)| (self.mono(w.letters().to_vec()), c.clone())).collect()
    }
}

type Terms = BTreeMap<Mono, Scalar>;

fn add_into(acc: &mut Terms, m: Mono, c: Scalar) {
    match acc.get_mut(&m) {
        Some(v) => {
            let s = &*v + &c;
            if s.is_zero() {
                acc.remove(&m);
            } else {
                *v = s;
            }
        }
        None => {
            if !c.is_zero() {
                acc.insert(m, c);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    /// Leading word; rewritten to `rhs`, whose words are all smaller.
    pub lead: Word,
    pub rhs: Poly,
}

/// Rewriting rules resolving every overlap up to `complete_to`.
#[derive(Debug, Clone)]
pub struct RewriteSystem {
    pub n_generators: usize,
    pub weights: Vec<u32>,
    /// The homogenizing letter, if any.
    pub homogenizer: Option<u8>,
    pub rules: Vec<Rule>,
    pub complete_to: usize,
    pub overlaps_processed: usize,
}

type Tail = Vec<(Vec<u8>, Scalar)>;

/// Live rules indexed by leading word.
struct Reducer<'a> {
    order: &'a Order,
    one: Scalar,
    rules: Vec<Option<(Mono, Tail)>>,
    index: HashMap<Vec<u8>, usize>,
    max_lead: usize,
}

impl<'a> Reducer<'a> {
    fn new(order: &'a Order, one: Scalar) -> Self {
        Reducer { order, one, rules: Vec::new(), index: HashMap::new(), max_lead: 0 }
    }

    fn find(&self, w: &[u8]) -> Option<(usize, usize)> {
        for start in 0..w.len() {
            for end in start + 1..=w.len().min(start + self.max_lead) {
                if let Some(&r) = self.index.get(&w[start..end]) {
                    return Some((r, start));
                }
            }
        }
        None
    }

    fn reduce(&self, mut f: Terms) -> Terms {
        let mut out = Terms::new();
        while let Some((m, c)) = f.pop_last() {
            let Some((r, start)) = self.find(&m.letters) else {
                out.insert(m, c);
                continue;
            };
            let (lead, tail) = self.rules[r].as_ref().expect("indexed rule is live");
            let (u, v) = (&m.letters[..start], &m.letters[start + lead.letters.len()..]);
            for (w, a) in tail {
                add_into(&mut f, self.order.mono([u, w, v].concat()), &c * a);
            }
        }
        out
    }

    fn insert(&mut self, lead: Mono, tail: Tail) -> usize {
        let id = self.rules.len();
        self.max_lead = self.max_lead.max(lead.letters.len());
        self.index.insert(lead.letters.clone(), id);
        self.rules.push(Some((lead, tail)));
        id
    }

    /// Removes a rule and returns it as the polynomial `lead − tail`.
    fn retire(&mut self, r: usize) -> (Mono, Terms) {
        let (lead, tail) = self.rules[r].take().expect("live rule");
        self.index.remove(&lead.letters);
        let mut t: Terms = tail.into_iter().map(|(w, c)| (self.order.mono(w), -&c)).collect();
        t.insert(lead.clone(), self.one.clone());
        (lead, t)
    }

    fn live(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.index.values().copied().collect();
        v.sort_unstable();
        v
    }

    /// S-polynomials `tail_a · v − u · tail_b` for every overlap `a·v = u·b`
    /// of weighted degree at most `bound`.
    fn overlaps(&self, a: usize, b: usize, bound: usize) -> Vec<(Mono, Terms)> {
        let (la, ta) = self.rules[a].as_ref().expect("live");
        let (lb, tb) = self.rules[b].as_ref().expect("live");
        let (wa, wb) = (&la.letters, &lb.letters);
        let mut out = Vec::new();
        for k in 1..wa.len().min(wb.len()) {
            if wa[wa.len() - k..] != wb[..k] {
                continue;
            }
            let (u, v) = (&wa[..wa.len() - k], &wb[k..]);
            let word = self.order.mono([wa.as_slice(), v].concat());
            if word.wdeg as usize > bound {
                continue;
            }
            let mut s = Terms::new();
            for (w, c) in ta {
                add_into(&mut s, self.order.mono([w.as_slice(), v].concat()), c.clone());
            }
            for (w, c) in tb {
                add_into(&mut s, self.order.mono([u, w.as_slice()].concat()), -c);
            }
            out.push((word, s));
        }
        out
    }
}

/// Strips one trailing z from every word while the leading word contains z.
/// Under the monomial order such a polynomial has z in every word, and
/// after reduction by `z x → x z` every z sits at the right end.
fn saturate(mut f: Terms, order: &Order) -> Terms {
    let Some(z) = order.z else { return f };
    while f.last_key_value().is_some_and(|(m, _)| m.letters.contains(&z)) {
        f = f
            .into_iter()
            .map(|(m, c)| {
                let mut l = m.letters;
                let last = l.pop();
                assert_eq!(last, Some(z), "normal words keep z at the right end");
                (order.mono(l), c)
            })
            .collect();
    }
    f
}

fn complete(p: &Presentation, bound: usize, z: Option<u8>, cap: usize) -> Result<RewriteSystem, HilbertError> {
    let n = p.n();
    let weights = p.weights_or_ones();
    let order = Order { weights: weights.clone(), z };
    let mut red = Reducer::new(&order, p.kind().one());
    // Pending polynomials keyed by their ambiguity word, FIFO within equal words.
    let mut queue: BTreeMap<(Mono, u64), Terms> = BTreeMap::new();
    let mut seq = 0u64;
    let mut push = |queue: &mut BTreeMap<(Mono, u64), Terms>, key: Mono, t: Terms| {
        queue.insert((key, seq), t);
        seq += 1;
    };
    // `z x → x z` goes in first so that every reduced word keeps z at the right end.
    if let Some(z) = z {
        for i in (0..n as u8).filter(|&i| i != z) {
            red.insert(order.mono(vec![z, i]), vec![(vec![i, z], p.kind().one())]);
        }
    }
    for r in &p.relations {
        let t = order.poly(r);
        if let Some(m) = t.keys().next_back().cloned() {
            if m.wdeg as usize <= bound {
                push(&mut queue, m, t);
            }
        }
    }
    let mut processed = 0;
    while let Some((_, item)) = queue.pop_first() {
        processed += 1;
        let reduced = saturate(red.reduce(item), &order);
        let Some((lead, lc)) = reduced.last_key_value() else { continue };
        if lead.letters.is_empty() {
            // 1 lies in the ideal: the quotient is zero.
            red = Reducer::new(&order, p.kind().one());
            red.insert(lead.clone(), Vec::new());
            break;
        }
        let inv = lc.inv().expect("leading coefficients are nonzero");
        let lead = lead.clone();
        let tail: Tail = reduced.iter().rev().skip(1).map(|(m, c)| (m.letters.clone(), -&(c * &inv))).collect();
        if red.index.len() >= cap {
            return Err(HilbertError::RuleCap(cap));
        }
        let contains =
            |big: &[u8]| big.len() > lead.letters.len() && big.windows(lead.letters.len()).any(|w| w == lead.letters);
        let mut retired: Vec<usize> = red.index.iter().filter(|(l, _)| contains(l)).map(|(_, &r)| r).collect();
        retired.sort_unstable();
        for r in retired {
            let (key, t) = red.retire(r);
            push(&mut queue, key, t);
        }
        let id = red.insert(lead, tail);
        for other in red.live() {
            let mut found = red.overlaps(id, other, bound);
            if other != id {
                found.extend(red.overlaps(other, id, bound));
            }
            for (key, s) in found {
                push(&mut queue, key, s);
            }
        }
    }
    let rules = red
        .rules
        .into_iter()
        .flatten()
        .map(|(m, tail)| Rule {
            lead: Word::new(m.letters),
            rhs: Poly::from_terms(n, tail.into_iter().map(|(w, c)| (Word::new(w), c))),
        })
        .collect();
    Ok(RewriteSystem {
        n_generators: n,
        weights,
        homogenizer: z,
        rules,
        complete_to: bound,
        overlaps_processed: processed,
    })
}

impl RewriteSystem {
    /// Fully reduces `f` modulo the rules.
    pub fn normal_form(&self, f: &Poly) -> Poly {
        let order = Order { weights: self.weights.clone(), z: self.homogenizer };
        let one = match f.field() {
            Some(k) => k.one(),
            None => return f.clone(),
        };
        let mut red = Reducer::new(&order, one);
        for r in &self.rules {
            red.insert(
                order.mono(r.lead.letters().to_vec()),
                r.rhs.terms().map(|(w, c)| (w.letters().to_vec(), c.clone())).collect(),
            );
        }
        if self.rules.iter().any(|r| r.lead.degree() == 0) {
            return Poly::zero(f.n_generators());
        }
        let out = red.reduce(order.poly(f));
        Poly::from_terms(f.n_generators(), out.into_iter().map(|(m, c)| (Word::new(m.letters), c)))
    }

    /// Number of normal words avoiding the homogenizer, per weighted degree
    /// 0..=bound (capped at `complete_to`).
    pub fn normal_word_counts(&self, bound: usize) -> PowerSeriesTrunc {
        let bound = bound.min(self.complete_to);
        if self.rules.iter().any(|r| r.lead.degree() == 0) {
            return PowerSeriesTrunc::zero(bound);
        }
        let alphabet: Vec<u8> = (0..self.n_generators as u8).filter(|&l| Some(l) != self.homogenizer).collect();
        let leads: Vec<&[u8]> = self
            .rules
            .iter()
            .map(|r| r.lead.letters())
            .filter(|l| self.homogenizer.is_none_or(|z| !l.contains(&z)))
            .collect();
        let ac = Automaton::build(&leads, self.n_generators);
        let states = ac.next.len();
        let mut counts = vec![vec![BigInt::zero(); states]; bound + 1];
        counts[0][0] = BigInt::one();
        for d in 0..=bound {
            for s in 0..states {
                if counts[d][s].is_zero() {
                    continue;
                }
                let c = counts[d][s].clone();
                for &a in &alphabet {
                    let e = d + self.weights[a as usize] as usize;
                    let t = ac.next[s][a as usize];
                    if e <= bound && !ac.terminal[t] {
                        counts[e][t] += &c;
                    }
                }
            }
        }
        PowerSeriesTrunc::new(counts.into_iter().map(|row| row.into_iter().sum()).collect())
    }
}

/// Aho–Corasick automaton over a set of forbidden words.
struct Automaton {
    next: Vec<Vec<usize>>,
    terminal: Vec<bool>,
}

impl Automaton {
    fn build(words: &[&[u8]], n: usize) -> Self {
        let mut children: Vec<Vec<Option<usize>>> = vec![vec![None; n]];
        let mut terminal = vec![false];
        for w in words {
            let mut s = 0;
            for &a in *w {
                s = match children[s][a as usize] {
                    Some(t) => t,
                    None => {
                        children.push(vec![None; n]);
                        terminal.push(false);
                        let t = children.len() - 1;
                        children[s][a as usize] = Some(t);
                        t
                    }
                };
            }
            terminal[s] = true;
        }
        let mut next = vec![vec![0; n]; children.len()];
        let mut fail = vec![0; children.len()];
        let mut bfs = VecDeque::new();
        for a in 0..n {
            if let Some(t) = children[0][a] {
                next[0][a] = t;
                bfs.push_back(t);
            }
        }
        while let Some(s) = bfs.pop_front() {
            terminal[s] |= terminal[fail[s]];
            for a in 0..n {
                match children[s][a] {
                    Some(t) => {
                        fail[t] = next[fail[s]][a];
                        next[s][a] = t;
                        bfs.push_back(t);
                    }
                    None => next[s][a] = next[fail[s]][a],
                }
            }
        }
        Automaton { next, terminal }
    }
}

/// Completes a presentation whose relations are homogeneous for its weights.
pub fn truncated_completion(p: &Presentation, bound: usize) -> Result<RewriteSystem, HilbertError> {
    let weights = p.weights_or_ones();
    for (i, r) in p.relations.iter().enumerate() {
        let mut degs = r.terms().map(|(w, _)| weighted_degree(w, &weights));
        if let Some(d) = degs.next() {
            if degs.any(|e| e != d) {
                return Err(HilbertError::NotHomogeneous(i + 1));
            }
        }
    }
    complete(p, bound, None, DEFAULT_RULE_CAP)
}

/// Homogenizes `p` and completes it with z-saturation through `bound`.
pub fn homogenized_completion(p: &Presentation, bound: usize, cap: usize) -> Result<RewriteSystem, HilbertError> {
    let h = homogenize(p)?;
    complete(&h, bound, Some(p.n() as u8), cap)
}

/// Coefficient j is dim F_{≤j}(B) − dim F_{≤j−1}(B) for the filtration by
/// the presentation's weights.
pub fn hilbert_series(p: &Presentation, bound: usize) -> Result<PowerSeriesTrunc, HilbertError> {
    Ok(homogenized_completion(p, bound, DEFAULT_RULE_CAP)?.normal_word_counts(bound))
}

#[derive(Debug, Clone, Serialize)]
pub struct PoincareCheck {
    pub n: usize,
    pub bound: usize,
    pub pbw_shape: bool,
    pub hilbert: PowerSeriesTrunc,
    /// The predicted Poincaré series `(1 + t)^n`.
    pub poincare: PowerSeriesTrunc,
    /// `h(t) · P(−t)`, which is 1 exactly when the identity holds.
    pub product: PowerSeriesTrunc,
    pub holds: bool,
    pub prediction: String,
    pub note: String,
}

/// Checks `h(t) · (1 − t)^n = 1` through `bound`.
pub fn numerical_koszul_check(p: &Presentation, n: usize, bound: usize) -> Result<PoincareCheck, HilbertError> {
    let hilbert = hilbert_series(p, bound)?;
    let poincare = one_plus_t_pow(n, bound);
    let product = hilbert.mul(&poincare.eval_neg());
    Ok(PoincareCheck {
        n,
        bound,
        pbw_shape: pbw_shape(p).is_some(),
        holds: product.is_one(),
        hilbert,
        poincare,
        product,
        prediction: format!("(1+t)^{n}"),
        note: "conditional on the Ext algebra being generated in degree one".into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorCounts {
    pub tor0: usize,
    pub tor1: usize,
    /// Entry g: dim I_g − dim(F_1 I_{g−1} + I_{g−1} F_1), the minimal relations of degree g.
    pub tor2_by_degree: Vec<usize>,
}

impl TorCounts {
    pub fn tor2_total(&self) -> usize {
        self.tor2_by_degree.iter().sum()
    }
}

pub fn tor_low_counts(p: &Presentation, bound: usize) -> Result<TorCounts, HilbertError> {
    let mut tor2 = vec![0; bound + 1];
    let mut prev: Option<Subspace> = None;
    for (g, slot) in tor2.iter_mut().enumerate().skip(1) {
        let ig = ideal_component(p, g)?.space;
        let lower = match &prev {
            None => 0,
            Some(x) => wrap_subspace(x, 1, 0)?.sum(&wrap_subspace(x, 0, 1)?).expect("both lie in F_g").dim(),
        };
        *slot = ig.dim() - lower;
        prev = Some(ig);
    }
    Ok(TorCounts { tor0: 1, tor1: p.n(), tor2_by_degree: tor2 })
}
