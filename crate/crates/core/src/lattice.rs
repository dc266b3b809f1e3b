//! Sublattices of L(F_d) generated by finitely many subspaces, their
//! distributivity, and adapted-basis certificates.
//!
//! Elements are identified by insertion index; meets and joins are memoized
//! per index pair, so every lattice operation is computed at most once.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::freealg::{DegreeSlice, Poly, SparseVec};
use crate::scalar::FieldKind;
use crate::subspace::Subspace;

pub const DEFAULT_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("lattice closure exceeded {0} elements; raise --cap or work over a prime field")]
    CapExceeded(usize),
    #[error("adapted bases exist only for distributive lattices")]
    NotDistributiveInput,
    #[error("generators must be nonempty and share one slice")]
    BadGenerators,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Distributive,
    NotDistributive,
    CapExceeded,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct WorkStats {
    pub meets: usize,
    pub joins: usize,
    pub triples_checked: usize,
}

#[derive(Debug, Clone)]
pub struct DistributivityReport {
    pub verdict: Verdict,
    /// `(X, Y, Z)` with `X ∩ (Y + Z) ≠ (X ∩ Y) + (X ∩ Z)`.
    pub witness: Option<[Subspace; 3]>,
    pub certificate: Option<Vec<Poly>>,
    pub lattice_size: usize,
    pub stats: WorkStats,
}

/// A finite set of subspaces closed under sum and intersection.
#[derive(Debug, Clone)]
pub struct SubspaceLattice {
    slice: DegreeSlice,
    elements: Vec<Subspace>,
    generators: Vec<usize>,
    meets: HashMap<(usize, usize), usize>,
    joins: HashMap<(usize, usize), usize>,
}

impl SubspaceLattice {
    pub fn slice(&self) -> DegreeSlice {
        self.slice
    }

    pub fn elements(&self) -> &[Subspace] {
        &self.elements
    }

    pub fn generators(&self) -> Vec<&Subspace> {
        self.generators.iter().map(|&i| &self.elements[i]).collect()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        if a == b {
            return a;
        }
        self.meets[&key(a, b)]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        if a == b {
            return a;
        }
        self.joins[&key(a, b)]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.meet(a, b) == a
    }
}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

struct Closure {
    slice: DegreeSlice,
    elements: Vec<Subspace>,
    index: HashMap<Subspace, usize>,
    meets: HashMap<(usize, usize), usize>,
    joins: HashMap<(usize, usize), usize>,
    cap: usize,
    stats: WorkStats,
}

impl Closure {
    fn new(generators: &[Subspace], cap: usize) -> Result<(Self, Vec<usize>), LatticeError> {
        let slice = generators.first().ok_or(LatticeError::BadGenerators)?.slice();
        if generators.iter().any(|g| g.slice() != slice) || cap == 0 {
            return Err(LatticeError::BadGenerators);
        }
        let mut c = Closure {
            slice,
            elements: Vec::new(),
            index: HashMap::new(),
            meets: HashMap::new(),
            joins: HashMap::new(),
            cap,
            stats: WorkStats::default(),
        };
        let ids = generators.iter().map(|g| c.insert(g.clone())).collect::<Result<Vec<_>, _>>()?;
        Ok((c, ids))
    }

    fn insert(&mut self, s: Subspace) -> Result<usize, LatticeError> {
        if let Some(&i) = self.index.get(&s) {
            return Ok(i);
        }
        if self.elements.len() >= self.cap {
            return Err(LatticeError::CapExceeded(self.cap));
        }
        let i = self.elements.len();
        self.index.insert(s.clone(), i);
        self.elements.push(s);
        Ok(i)
    }

    fn pair(&mut self, a: usize, b: usize) -> Result<(), LatticeError> {
        let k = key(a, b);
        if self.meets.contains_key(&k) {
            return Ok(());
        }
        let (sum, meet) = self.elements[a].sum_and_intersection(&self.elements[b]).expect("same slice");
        self.stats.meets += 1;
        self.stats.joins += 1;
        let m = self.insert(meet)?;
        let j = self.insert(sum)?;
        self.meets.insert(k, m);
        self.joins.insert(k, j);
        Ok(())
    }

    fn meet(&mut self, a: usize, b: usize) -> Result<usize, LatticeError> {
        if a == b {
            return Ok(a);
        }
        self.pair(a, b)?;
        Ok(self.meets[&key(a, b)])
    }

    fn join(&mut self, a: usize, b: usize) -> Result<usize, LatticeError> {
        if a == b {
            return Ok(a);
        }
        self.pair(a, b)?;
        Ok(self.joins[&key(a, b)])
    }

    fn process(&mut self, k: usize) -> Result<(), LatticeError> {
        for i in 0..k {
            self.pair(i, k)?;
        }
        Ok(())
    }

    fn comparable(&mut self, a: usize, b: usize) -> Result<bool, LatticeError> {
        let m = self.meet(a, b)?;
        Ok(m == a || m == b)
    }

    /// Checks `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)`; comparable pairs satisfy it
    /// by the modular law and are skipped.
    fn violates(&mut self, a: usize, b: usize, c: usize) -> Result<bool, LatticeError> {
        if self.comparable(a, b)? || self.comparable(a, c)? || self.comparable(b, c)? {
            return Ok(false);
        }
        self.stats.triples_checked += 1;
        let bc = self.join(b, c)?;
        let lhs = self.meet(a, bc)?;
        let ab = self.meet(a, b)?;
        let ac = self.meet(a, c)?;
        let rhs = self.join(ab, ac)?;
        Ok(lhs != rhs)
    }

    fn finish(self, generators: Vec<usize>) -> SubspaceLattice {
        SubspaceLattice { slice: self.slice, elements: self.elements, generators, meets: self.meets, joins: self.joins }
    }
}

/// The sublattice generated by `generators` (worklist closure).
pub fn close(generators: &[Subspace], cap: usize) -> Result<SubspaceLattice, LatticeError> {
    let (mut c, ids) = Closure::new(generators, cap)?;
    let mut k = 0;
    while k < c.elements.len() {
        c.process(k)?;
        k += 1;
    }
    Ok(c.finish(ids))
}

/// Decides distributivity of a closed lattice by the triple identity.
/// Triples are scanned in parallel; the reported witness is the first one in
/// lexicographic index order.
pub fn is_distributive(lattice: &SubspaceLattice) -> DistributivityReport {
    let n = lattice.len();
    let checked = std::sync::atomic::AtomicUsize::new(0);
    let witness = (0..n).into_par_iter().find_map_first(|a| {
        for b in 0..n {
            if b == a || lattice.leq(a, b) || lattice.leq(b, a) {
                continue;
            }
            for c in (b + 1)..n {
                if c == a || lattice.leq(a, c) || lattice.leq(c, a) || lattice.leq(b, c) || lattice.leq(c, b) {
                    continue;
                }
                checked.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                let lhs = lattice.meet(a, lattice.join(b, c));
                let rhs = lattice.join(lattice.meet(a, b), lattice.meet(a, c));
                if lhs != rhs {
                    return Some((a, b, c));
                }
            }
        }
        None
    });
    let stats = WorkStats { triples_checked: checked.into_inner(), ..WorkStats::default() };
    match witness {
        Some((a, b, c)) => DistributivityReport {
            verdict: Verdict::NotDistributive,
            witness: Some([a, b, c].map(|i| lattice.elements[i].clone())),
            certificate: None,
            lattice_size: n,
            stats,
        },
        None => DistributivityReport {
            verdict: Verdict::Distributive,
            witness: None,
            certificate: find_adapted_basis(lattice).ok(),
            lattice_size: n,
            stats,
        },
    }
}

/// Closure fused with the triple check: after element `k` is processed,
/// every triple whose largest index is `k` is tested, so a violation is
/// reported as soon as it exists among the elements built so far.
pub fn check_during_closure(generators: &[Subspace], cap: usize) -> Result<DistributivityReport, LatticeError> {
    let (mut c, ids) = match Closure::new(generators, cap) {
        Err(LatticeError::CapExceeded(_)) => {
            return Ok(DistributivityReport {
                verdict: Verdict::CapExceeded,
                witness: None,
                certificate: None,
                lattice_size: cap,
                stats: WorkStats::default(),
            })
        }
        other => other?,
    };
    let cap_report = |c: &Closure| DistributivityReport {
        verdict: Verdict::CapExceeded,
        witness: None,
        certificate: None,
        lattice_size: c.elements.len(),
        stats: c.stats.clone(),
    };
    let mut k = 0;
    while k < c.elements.len() {
        if c.process(k).is_err() {
            return Ok(cap_report(&c));
        }
        match first_violation_at(&mut c, k) {
            Err(_) => return Ok(cap_report(&c)),
            Ok(Some((a, b, cc))) => {
                return Ok(DistributivityReport {
                    verdict: Verdict::NotDistributive,
                    witness: Some([a, b, cc].map(|i| c.elements[i].clone())),
                    certificate: None,
                    lattice_size: c.elements.len(),
                    stats: c.stats.clone(),
                })
            }
            Ok(None) => {}
        }
        k += 1;
    }
    let stats = c.stats.clone();
    let lattice = c.finish(ids);
    let certificate = find_adapted_basis(&lattice).ok();
    Ok(DistributivityReport {
        verdict: Verdict::Distributive,
        witness: None,
        certificate,
        lattice_size: lattice.len(),
        stats,
    })
}

fn first_violation_at(c: &mut Closure, k: usize) -> Result<Option<(usize, usize, usize)>, LatticeError> {
    // a = k with b < c < k, then a < k with k among {b, c}
    for b in 0..k {
        for cc in (b + 1)..k {
            if c.violates(k, b, cc)? {
                return Ok(Some((k, b, cc)));
            }
        }
    }
    for a in 0..k {
        for b in 0..k {
            if b != a && c.violates(a, b, k)? {
                return Ok(Some((a, b, k)));
            }
        }
    }
    Ok(None)
}

/// An adapted basis of the ambient slice: every lattice element is spanned
/// by the basis vectors it contains.
///
/// For each join-irreducible `J` (with `J_*` the join of everything strictly
/// below it), a complement of `J_*` in `J` is collected; together with a
/// basis of the bottom element this spans every element, and the remainder is
/// completed by words.
pub fn find_adapted_basis(lattice: &SubspaceLattice) -> Result<Vec<Poly>, LatticeError> {
    let n = lattice.len();
    if n == 0 {
        return Err(LatticeError::BadGenerators);
    }
    let bottom = (1..n).fold(0, |acc, i| lattice.meet(acc, i));
    let mut chosen: Vec<SparseVec> = lattice.elements[bottom].rows().to_vec();
    for j in 0..n {
        if j == bottom {
            continue;
        }
        let below: Vec<usize> = (0..n).filter(|&i| i != j && lattice.leq(i, j)).collect();
        let lower = below.iter().fold(bottom, |acc, &i| lattice.join(acc, i));
        if lower == j {
            continue;
        }
        let lower_space = &lattice.elements[lower];
        let mut ext = Subspace::zero(lattice.slice);
        for row in lattice.elements[j].rows() {
            if lower_space.contains_vector(row) {
                continue;
            }
            let grown = ext.sum(&Subspace::from_vectors(lattice.slice, [row])).expect("same slice");
            if lower_space.sum(&grown).expect("same slice").dim() > lower_space.dim() + ext.dim() {
                chosen.push(row.clone());
                ext = grown;
            }
        }
    }
    let one = lattice
        .elements
        .iter()
        .flat_map(|e| e.rows().iter())
        .flat_map(|r| r.iter())
        .next()
        .map(|(_, c)| c.one_like())
        // Every element is 0, so nothing records the field; the word basis
        // is adapted over any field and is written over Q.
        .unwrap_or_else(|| FieldKind::Rationals.one());
    let span = Subspace::from_vectors(lattice.slice, &chosen);
    if span.dim() != chosen.len() {
        return Err(LatticeError::NotDistributiveInput);
    }
    let mut basis: Vec<Poly> = chosen.iter().map(|r| lattice.slice.from_vector(r)).collect();
    let mut acc = span;
    for idx in 0..lattice.slice.dim() as u32 {
        if acc.dim() == lattice.slice.dim() {
            break;
        }
        let e = vec![(idx, one.clone())];
        if !acc.contains_vector(&e) {
            acc = acc.sum(&Subspace::from_vectors(lattice.slice, [&e])).expect("same slice");
            basis.push(lattice.slice.from_vector(&e));
        }
    }
    if !verify_adapted_basis(&basis, lattice.elements()) {
        return Err(LatticeError::NotDistributiveInput);
    }
    Ok(basis)
}

/// True iff `basis` is a basis of the slice and each subspace is spanned by
/// the basis vectors it contains.
pub fn verify_adapted_basis(basis: &[Poly], subspaces: &[Subspace]) -> bool {
    let Some(slice) = subspaces.first().map(Subspace::slice) else {
        return true;
    };
    let vecs: Option<Vec<SparseVec>> = basis.iter().map(|p| slice.to_vector(p).ok()).collect();
    let Some(vecs) = vecs else { return false };
    if vecs.len() != slice.dim() || Subspace::from_vectors(slice, &vecs).dim() != slice.dim() {
        return false;
    }
    subspaces.iter().all(|x| {
        if x.slice() != slice {
            return false;
        }
        let inside: Vec<&SparseVec> = vecs.iter().filter(|v| x.contains_vector(v)).collect();
        Subspace::from_vectors(slice, inside).dim() == x.dim()
    })
}
