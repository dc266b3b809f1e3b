//! Subspaces of a degree slice F_d in canonical reduced row echelon form.
//!
//! Rows are sparse; pivots are the leftmost nonzero column of each row
//! under the deglex slice index, normalized to 1 and cleared from every
//! other row. Two subspaces are equal iff their row lists are equal.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::freealg::{DegreeSlice, FreeAlgError, Poly, SparseVec};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubspaceError {
    #[error("subspaces live in different slices")]
    SliceMismatch,
    #[error("spanning vectors have mixed degrees")]
    MixedDegrees,
    #[error(transparent)]
    FreeAlg(#[from] FreeAlgError),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    slice: DegreeSlice,
    rows: Vec<SparseVec>,
}

/// Hashes the pivot pattern only; equal subspaces share it, and `Eq`
/// separates the rare collisions.
impl std::hash::Hash for Subspace {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.slice.hash(state);
        self.rows.len().hash(state);
        for r in &self.rows {
            r[0].0.hash(state);
            r.len().hash(state);
        }
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.basis()).finish()
    }
}

/// Incremental echelon builder. Pivot rows are kept monic; rows are only
/// semi-reduced until `finish` back-substitutes.
struct Echelon {
    pivots: BTreeMap<u32, SparseVec>,
}

impl Echelon {
    fn new() -> Self {
        Echelon { pivots: BTreeMap::new() }
    }

    fn from_rref(rows: &[SparseVec]) -> Self {
        Echelon { pivots: rows.iter().map(|r| (r[0].0, r.clone())).collect() }
    }

    /// Reduces `v` against the current pivots; inserts it if nonzero.
    /// Returns the new pivot column, if any.
    fn insert(&mut self, v: &[(u32, Scalar)]) -> Option<u32> {
        let mut acc: BTreeMap<u32, Scalar> = v.iter().filter(|(_, c)| !c.is_zero()).cloned().collect();
        let mut cursor = 0u32;
        loop {
            let next = acc.range(cursor..).map(|(k, _)| *k).find(|k| self.pivots.contains_key(k));
            let Some(col) = next else { break };
            let coef = acc.remove(&col).expect("present");
            for (c, val) in self.pivots[&col].iter().skip(1) {
                let delta = -&(&coef * val);
                add_into(&mut acc, *c, delta);
            }
            cursor = col + 1;
        }
        let (&lead, lead_val) = acc.iter().next()?;
        let inv = lead_val.inv().expect("nonzero pivot");
        let row: SparseVec = acc.iter().map(|(k, c)| (*k, c * &inv)).collect();
        self.pivots.insert(lead, row);
        Some(lead)
    }

    fn finish(self) -> Vec<SparseVec> {
        let mut done: BTreeMap<u32, SparseVec> = BTreeMap::new();
        for (col, row) in self.pivots.into_iter().rev() {
            let mut acc: BTreeMap<u32, Scalar> = row.into_iter().collect();
            let others: Vec<u32> = acc.keys().copied().filter(|k| *k != col && done.contains_key(k)).collect();
            for k in others {
                let coef = acc.remove(&k).expect("present");
                for (c, val) in done[&k].iter().skip(1) {
                    add_into(&mut acc, *c, -&(&coef * val));
                }
            }
            done.insert(col, acc.into_iter().collect());
        }
        done.into_values().collect()
    }
}

fn add_into(acc: &mut BTreeMap<u32, Scalar>, col: u32, delta: Scalar) {
    if delta.is_zero() {
        return;
    }
    match acc.get_mut(&col) {
        Some(v) => {
            let s = &*v + &delta;
            if s.is_zero() {
                acc.remove(&col);
            } else {
                *v = s;
            }
        }
        None => {
            acc.insert(col, delta);
        }
    }
}

impl Subspace {
    pub fn zero(slice: DegreeSlice) -> Self {
        Subspace { slice, rows: Vec::new() }
    }

    /// The whole slice F_d, spanned by its words.
    pub fn full(slice: DegreeSlice, one: &Scalar) -> Self {
        let rows = (0..slice.dim() as u32).map(|i| vec![(i, one.clone())]).collect();
        Subspace { slice, rows }
    }

    pub fn from_vectors<'a>(slice: DegreeSlice, vectors: impl IntoIterator<Item = &'a SparseVec>) -> Self {
        let mut ech = Echelon::new();
        for v in vectors {
            ech.insert(v);
        }
        Subspace { slice, rows: ech.finish() }
    }

    /// Span of homogeneous polynomials of the slice degree.
    pub fn span(slice: DegreeSlice, polys: &[Poly]) -> Result<Self, SubspaceError> {
        let degrees: Vec<usize> = polys.iter().filter_map(Poly::degree).collect();
        if polys.iter().any(|p| !p.is_homogeneous()) || degrees.windows(2).any(|w| w[0] != w[1]) {
            return Err(SubspaceError::MixedDegrees);
        }
        let vecs = polys.iter().map(|p| slice.to_vector(p)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_vectors(slice, &vecs))
    }

    pub fn slice(&self) -> DegreeSlice {
        self.slice
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = u32> + '_ {
        self.rows.iter().map(|r| r[0].0)
    }

    pub fn basis(&self) -> Vec<Poly> {
        self.rows.iter().map(|r| self.slice.from_vector(r)).collect()
    }

    fn check(&self, other: &Subspace) -> Result<(), SubspaceError> {
        if self.slice != other.slice {
            return Err(SubspaceError::SliceMismatch);
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, SubspaceError> {
        self.check(other)?;
        let (big, small) = if self.dim() >= other.dim() { (self, other) } else { (other, self) };
        let mut ech = Echelon::from_rref(&big.rows);
        for r in &small.rows {
            ech.insert(r);
        }
        Ok(Subspace { slice: self.slice, rows: ech.finish() })
    }

    /// Intersection by the Zassenhaus algorithm on `[x | x]`, `[y | 0]`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, SubspaceError> {
        Ok(self.sum_and_intersection(other)?.1)
    }

    /// Returns `(X + Y, X ∩ Y)` from one Zassenhaus elimination.
    pub fn sum_and_intersection(&self, other: &Subspace) -> Result<(Subspace, Subspace), SubspaceError> {
        self.check(other)?;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok((self.sum(other)?, Subspace::zero(self.slice)));
        }
        let (big, small) = if self.dim() >= other.dim() { (self, other) } else { (other, self) };
        if small.rows.iter().all(|r| big.contains_vector(r)) {
            return Ok((big.clone(), small.clone()));
        }
        let shift = self.slice.dim() as u32;
        let mut ech = Echelon::new();
        for r in &self.rows {
            let mut v = r.clone();
            v.extend(r.iter().map(|(c, x)| (c + shift, x.clone())));
            ech.insert(&v);
        }
        for r in &other.rows {
            ech.insert(r);
        }
        let mut sum_rows = Vec::new();
        let mut meet_rows = Vec::new();
        for (col, row) in ech.pivots {
            if col < shift {
                sum_rows.push(row.into_iter().filter(|(c, _)| *c < shift).collect::<SparseVec>());
            } else {
                meet_rows.push(row.into_iter().map(|(c, x)| (c - shift, x)).collect::<SparseVec>());
            }
        }
        let sum = Subspace::from_vectors(self.slice, &sum_rows);
        let meet = Subspace::from_vectors(self.slice, &meet_rows);
        debug_assert_eq!(self.dim() + other.dim(), sum.dim() + meet.dim());
        Ok((sum, meet))
    }

    /// Reduces a coordinate vector against the basis; zero iff it is a member.
    pub fn residue(&self, v: &[(u32, Scalar)]) -> SparseVec {
        let mut acc: BTreeMap<u32, Scalar> = v.iter().filter(|(_, c)| !c.is_zero()).cloned().collect();
        let mut cursor = 0u32;
        loop {
            let next = acc
                .range(cursor..)
                .find_map(|(k, _)| self.rows.binary_search_by_key(k, |r| r[0].0).ok().map(|i| (*k, i)));
            let Some((col, i)) = next else { break };
            let coef = acc.remove(&col).expect("present");
            for (c, val) in self.rows[i].iter().skip(1) {
                add_into(&mut acc, *c, -&(&coef * val));
            }
            cursor = col + 1;
        }
        acc.into_iter().collect()
    }

    pub fn contains_vector(&self, v: &[(u32, Scalar)]) -> bool {
        self.residue(v).is_empty()
    }

    pub fn contains(&self, f: &Poly) -> Result<bool, SubspaceError> {
        let v = self.slice.to_vector(f).map_err(|e| match e {
            FreeAlgError::NotHomogeneous(_) => SubspaceError::SliceMismatch,
            other => other.into(),
        })?;
        Ok(self.contains_vector(&v))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.slice == other.slice && self.dim() <= other.dim() && self.rows.iter().all(|r| other.contains_vector(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{parse_poly, Names};
    use crate::scalar::FieldKind;
    use proptest::prelude::*;

    fn polys(texts: &[&str], n: usize) -> Vec<Poly> {
        let names: Vec<String> = ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect();
        let params = Default::default();
        let scope = Names { generators: &names, params: &params, field: FieldKind::Rationals };
        texts.iter().map(|t| parse_poly(t, &scope).unwrap()).collect()
    }

    fn span(texts: &[&str], n: usize, d: usize) -> Subspace {
        Subspace::span(DegreeSlice::new(n, d).unwrap(), &polys(texts, n)).unwrap()
    }

    #[test]
    fn span_dimensions() {
        assert_eq!(span(&["x", "2*x"], 2, 1).dim(), 1);
        assert_eq!(span(&["x^2 - x*y", "y*x"], 2, 2).dim(), 2);
        assert_eq!(span(&["x^3 - x*y*x", "x^2*y - x*y^2", "y*x^2", "y*x*y"], 2, 3).dim(), 4);
        assert_eq!(span(&[], 2, 2).dim(), 0);
        let slice = DegreeSlice::new(2, 2).unwrap();
        assert_eq!(Subspace::span(slice, &polys(&["x*y", "x"], 2)), Err(SubspaceError::MixedDegrees));
    }

    #[test]
    fn lattice_operations() {
        let x = span(&["x"], 2, 1);
        let y = span(&["y"], 2, 1);
        let xy = span(&["x + y"], 2, 1);
        let zero = Subspace::zero(x.slice());
        assert_eq!(x.intersect(&x).unwrap(), x);
        assert_eq!(x.sum(&zero).unwrap(), x);
        assert_eq!(x.intersect(&y).unwrap().dim(), 0);
        assert_eq!(x.sum(&y).unwrap(), Subspace::full(x.slice(), &FieldKind::Rationals.one()));
        let (s, m) = x.sum_and_intersection(&xy).unwrap();
        assert_eq!((s.dim(), m.dim()), (2, 0));
        let other = span(&["x*y"], 2, 2);
        assert_eq!(x.sum(&other), Err(SubspaceError::SliceMismatch));
    }

    #[test]
    fn membership_and_equality() {
        let i2 = span(&["x^2 - x*y", "y*x"], 2, 2);
        assert!(i2.contains(&polys(&["x^2 - x*y"], 2)[0]).unwrap());
        assert!(!i2.contains(&polys(&["y^2"], 2)[0]).unwrap());
        assert_eq!(span(&["x", "y"], 2, 1), span(&["x + y", "y"], 2, 1));
    }

    fn arb_subspace(n_vecs: usize) -> impl Strategy<Value = Subspace> {
        // F_2 over 2 generators: 4 coordinates over Q with small entries
        prop::collection::vec(prop::collection::vec(-2i64..3, 4), 0..=n_vecs).prop_map(|vs| {
            let slice = DegreeSlice::new(2, 2).unwrap();
            let vecs: Vec<SparseVec> = vs
                .iter()
                .map(|v| {
                    v.iter()
                        .enumerate()
                        .filter(|(_, c)| **c != 0)
                        .map(|(i, c)| (i as u32, FieldKind::Rationals.from_i64(*c)))
                        .collect()
                })
                .collect();
            Subspace::from_vectors(slice, &vecs)
        })
    }

    proptest! {
        #[test]
        fn dimension_formula(x in arb_subspace(3), y in arb_subspace(3)) {
            let (s, m) = x.sum_and_intersection(&y).unwrap();
            prop_assert_eq!(x.dim() + y.dim(), s.dim() + m.dim());
            prop_assert!(m.is_subspace_of(&x) && m.is_subspace_of(&y));
            prop_assert!(x.is_subspace_of(&s) && y.is_subspace_of(&s));
        }

        #[test]
        fn canonical_idempotent(x in arb_subspace(4)) {
            prop_assert_eq!(Subspace::span(x.slice(), &x.basis()).unwrap(), x);
        }

        #[test]
        fn modular_law(x in arb_subspace(2), y in arb_subspace(2), z0 in arb_subspace(2)) {
            let z = z0.sum(&x).unwrap();
            let lhs = x.sum(&y.intersect(&z).unwrap()).unwrap();
            let rhs = x.sum(&y).unwrap().intersect(&z).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
