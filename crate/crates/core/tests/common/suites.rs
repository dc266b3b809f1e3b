//! Seeded randomized suites shared by the property tests and the acceptance
//! harness.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sgk::freealg::{DegreeSlice, SparseVec};
use sgk::koszul::sk_check;
use sgk::lattice::DEFAULT_CAP;
use sgk::presentation::Presentation;
use sgk::scalar::FieldKind;
use sgk::subspace::Subspace;

use super::load;

fn random_subspace(rng: &mut ChaCha8Rng, kind: FieldKind, slice: DegreeSlice) -> Subspace {
    let count = rng.gen_range(0..=5);
    let rows: Vec<SparseVec> = (0..count)
        .map(|_| {
            let mut cols: Vec<u32> = (0..slice.dim() as u32).collect();
            cols.shuffle(rng);
            let mut row: SparseVec = cols[..rng.gen_range(1..=3)]
                .iter()
                .map(|&c| (c, kind.from_i64(rng.gen_range(-3..=3))))
                .filter(|(_, x)| !x.is_zero())
                .collect();
            row.sort_by_key(|(c, _)| *c);
            row
        })
        .collect();
    Subspace::from_vectors(slice, &rows)
}

/// Dimension formula and modular law on `count` random pairs in F_3 of two
/// letters, alternating between Q and F_5.
pub fn subspace_pairs(count: usize, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let slice = DegreeSlice::new(2, 3).unwrap();
    for case in 0..count {
        let kind = if case % 2 == 0 { FieldKind::Rationals } else { FieldKind::PrimeField(5) };
        let x = random_subspace(&mut rng, kind, slice);
        let y = random_subspace(&mut rng, kind, slice);
        let (s, i) = x.sum_and_intersection(&y).map_err(|e| e.to_string())?;
        if s.dim() + i.dim() != x.dim() + y.dim() {
            return Err(format!("pair {case}: dim(X+Y) + dim(X∩Y) != dim X + dim Y"));
        }
        let z = x.sum(&random_subspace(&mut rng, kind, slice)).unwrap();
        let left = x.sum(&y.intersect(&z).unwrap()).unwrap();
        let right = x.sum(&y).unwrap().intersect(&z).unwrap();
        if left != right {
            return Err(format!("pair {case}: modular law fails"));
        }
    }
    Ok(())
}

pub const INVARIANCE_POOL: &[&str] = &[
    "quantum_plane",
    "jordan_plane",
    "non_sk_example",
    "monomial_quadratic",
    "phan_5",
    "cassidy_12",
    "rogalski_cubic",
    "polynomial_3",
    "heisenberg",
    "skew3_2",
    "sridharan_6",
    "pbw_tail_3",
];

pub fn jmax(p: &Presentation) -> usize {
    if p.n() == 2 {
        4
    } else {
        3
    }
}

pub fn shuffled(p: &Presentation, rng: &mut ChaCha8Rng) -> Presentation {
    let mut rels = p.relations.clone();
    rels.shuffle(rng);
    let rels = rels
        .into_iter()
        .map(|r| {
            let mut num = 0;
            while num == 0 {
                num = rng.gen_range(-7i64..=7);
            }
            let den = rng.gen_range(1i64..=5);
            r.scale(&FieldKind::Rationals.parse(&format!("{num}/{den}")).unwrap())
        })
        .collect();
    p.with_relations(format!("{}_shuffled", p.name), rels)
}

/// sk_check on a presentation and on a shuffled, rescaled copy must agree
/// degree by degree.
pub fn invariance_trials(count: usize, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..count {
        let name = INVARIANCE_POOL[trial % INVARIANCE_POOL.len()];
        let p = load(name, &[]);
        let q = shuffled(&p, &mut rng);
        let j = jmax(&p);
        let a = sk_check(&p, j, DEFAULT_CAP, false).map_err(|e| e.to_string())?;
        let b = sk_check(&q, j, DEFAULT_CAP, false).map_err(|e| e.to_string())?;
        if a.overall != b.overall {
            return Err(format!("trial {trial} ({name}): {:?} vs {:?}", a.overall, b.overall));
        }
        for (x, y) in a.degrees.iter().zip(&b.degrees) {
            if x.dims != y.dims || x.verdict() != y.verdict() {
                return Err(format!("trial {trial} ({name}) differs at j = {}", x.j));
            }
        }
    }
    Ok(())
}
