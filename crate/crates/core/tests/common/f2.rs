//! Exhaustive sublattice oracle over F_2. A subspace of F_2^k (k ≤ 4) is the
//! set of its members, stored as a bitmask over the 2^k vectors, so sums,
//! meets and closure need no linear algebra.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sgk::freealg::{DegreeSlice, SparseVec};
use sgk::lattice::{
    check_during_closure, close, find_adapted_basis, is_distributive, verify_adapted_basis, Verdict, DEFAULT_CAP,
};
use sgk::scalar::FieldKind;
use sgk::subspace::Subspace;

pub type Set = u16;

pub fn span(vectors: impl IntoIterator<Item = u8>) -> Set {
    let mut members: Set = 1;
    for v in vectors {
        let mut next = members;
        for m in 0..16u8 {
            if members >> m & 1 == 1 {
                next |= 1 << (m ^ v);
            }
        }
        members = next;
    }
    members
}

pub fn join(a: Set, b: Set) -> Set {
    span((0..16u8).filter(|m| (a | b) >> m & 1 == 1))
}

pub fn closure(gens: &[Set]) -> Vec<Set> {
    let mut elems: Vec<Set> = Vec::new();
    for g in gens {
        if !elems.contains(g) {
            elems.push(*g);
        }
    }
    loop {
        let mut fresh = Vec::new();
        for &a in &elems {
            for &b in &elems {
                for c in [a & b, join(a, b)] {
                    if !elems.contains(&c) && !fresh.contains(&c) {
                        fresh.push(c);
                    }
                }
            }
        }
        if fresh.is_empty() {
            return elems;
        }
        elems.extend(fresh);
    }
}

pub fn distributive(elems: &[Set]) -> bool {
    elems.iter().all(|&x| elems.iter().all(|&y| elems.iter().all(|&z| x & join(y, z) == join(x & y, x & z))))
}

pub fn row_mask(row: &SparseVec) -> u8 {
    row.iter().filter(|(_, c)| !c.is_zero()).fold(0u8, |m, (col, _)| m | 1 << col)
}

pub fn to_set(s: &Subspace) -> Set {
    span(s.rows().iter().map(row_mask))
}

pub fn vector(mask: u8) -> SparseVec {
    let one = FieldKind::PrimeField(2).one();
    (0..8u32).filter(|i| mask >> i & 1 == 1).map(|i| (i, one.clone())).collect()
}

pub struct Instance {
    pub slice: DegreeSlice,
    pub dim: u32,
    pub gens: Vec<Vec<u8>>,
}

impl Instance {
    pub fn random(rng: &mut ChaCha8Rng) -> Self {
        let (n, d) = [(2, 1), (3, 1), (2, 2), (2, 2)][rng.gen_range(0..4)];
        let slice = DegreeSlice::new(n, d).unwrap();
        let dim = slice.dim() as u32;
        // Two subspaces always generate a distributive lattice, so three
        // proper subspaces are drawn most of the time.
        let count = if rng.gen_bool(0.8) { 3 } else { rng.gen_range(1..=2) };
        let gens = (0..count)
            .map(|_| {
                let k = if rng.gen_bool(0.9) { rng.gen_range(1..dim) } else { rng.gen_range(0..=dim.min(3)) };
                (0..k).map(|_| rng.gen_range(0..1u8 << dim)).collect()
            })
            .collect();
        Instance { slice, dim, gens }
    }

    pub fn subspaces(&self) -> Vec<Subspace> {
        self.gens
            .iter()
            .map(|g| Subspace::from_vectors(self.slice, &g.iter().map(|m| vector(*m)).collect::<Vec<_>>()))
            .collect()
    }
}

#[derive(Debug, Default)]
pub struct Tally {
    pub distributive: usize,
    pub not_distributive: usize,
    pub certificates: usize,
}

/// Runs `count` random instances, comparing closure, both verdicts,
/// certificates and witnesses with the oracle.
pub fn run(count: usize, seed: u64) -> Result<Tally, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::default();
    for case in 0..count {
        let inst = Instance::random(&mut rng);
        let subs = inst.subspaces();
        let sets: Vec<Set> = inst.gens.iter().map(|g| span(g.iter().copied())).collect();
        if subs.iter().map(to_set).collect::<Vec<_>>() != sets {
            return Err(format!("case {case}: generator spans differ"));
        }
        let mut want = closure(&sets);
        let expected = distributive(&want);

        let lat = close(&subs, DEFAULT_CAP).map_err(|e| format!("case {case}: {e}"))?;
        let mut got: Vec<Set> = lat.elements().iter().map(to_set).collect();
        got.sort_unstable();
        want.sort_unstable();
        if got != want {
            return Err(format!("case {case}: closure {got:?} vs oracle {want:?}"));
        }

        let verdict = if expected { Verdict::Distributive } else { Verdict::NotDistributive };
        let full = is_distributive(&lat);
        let early = check_during_closure(&subs, DEFAULT_CAP).map_err(|e| format!("case {case}: {e}"))?;
        if full.verdict != verdict || early.verdict != verdict {
            return Err(format!("case {case}: oracle {verdict:?}, got {:?} / {:?}", full.verdict, early.verdict));
        }

        if expected {
            tally.distributive += 1;
            let basis = find_adapted_basis(&lat).map_err(|e| format!("case {case}: {e}"))?;
            if !verify_adapted_basis(&basis, lat.elements()) {
                return Err(format!("case {case}: certificate rejected by verify_adapted_basis"));
            }
            let masks: Vec<u8> = basis.iter().map(|b| row_mask(&inst.slice.to_vector(b).unwrap())).collect();
            if masks.len() as u32 != inst.dim || span(masks.iter().copied()).count_ones() != 1 << inst.dim {
                return Err(format!("case {case}: certificate is not a basis"));
            }
            for &e in &want {
                if span(masks.iter().copied().filter(|m| e >> m & 1 == 1)) != e {
                    return Err(format!("case {case}: element {e:016b} not spanned by the basis vectors inside it"));
                }
            }
            tally.certificates += 1;
        } else {
            tally.not_distributive += 1;
            for report in [&full, &early] {
                let w = report.witness.as_ref().ok_or_else(|| format!("case {case}: missing witness"))?;
                let [x, y, z] = [&w[0], &w[1], &w[2]].map(to_set);
                if x & join(y, z) == join(x & y, x & z) {
                    return Err(format!("case {case}: witness satisfies the distributive law"));
                }
            }
        }
    }
    Ok(tally)
}
