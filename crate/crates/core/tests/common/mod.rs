//! Helpers shared by the integration suites. Everything arithmetic here is
//! written against plain integers so it can serve as an oracle for the
//! library's own elimination and rewriting code.
#![allow(dead_code)]

pub mod f2;
pub mod suites;

use std::collections::{BTreeMap, HashMap};

use sgk::cli::{self, Overrides};
use sgk::freealg::Poly;
use sgk::presentation::Presentation;

pub const P: u64 = 32003;

pub fn load(name: &str, params: &[(&str, &str)]) -> Presentation {
    let ov = Overrides {
        params: params.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
        ..Overrides::default()
    };
    cli::resolve(name, &ov).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn load_mod_p(name: &str) -> Presentation {
    let ov = Overrides { field: Some(format!("Fp:{P}")), ..Overrides::default() };
    cli::resolve(name, &ov).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// All words of length exactly `d` over `n` letters, lexicographic.
pub fn words(n: usize, d: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..n as u8).map(move |c| {
                    let mut w = w.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

/// Coefficients of a polynomial over F_P as residues.
/// A polynomial as (word letters, residue) pairs.
pub type Residues = Vec<(Vec<u8>, u64)>;

pub fn residues(f: &Poly) -> Residues {
    f.terms()
        .map(|(w, c)| {
            let v: u64 = c.to_string().parse().expect("coefficient is a residue");
            (w.letters().to_vec(), v)
        })
        .collect()
}

pub fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64) -> u64 {
    assert!(!a.is_multiple_of(P));
    pow_mod(a, P - 2)
}

/// Incremental row echelon form over F_P. Rows are sparse maps keyed by
/// column; the pivot of a row is its smallest column.
#[derive(Default)]
pub struct ModEchelon {
    pivots: HashMap<usize, BTreeMap<usize, u64>>,
}

impl ModEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a row and returns its pivot column if it was independent.
    pub fn insert(&mut self, row: impl IntoIterator<Item = (usize, u64)>) -> Option<usize> {
        let mut r: BTreeMap<usize, u64> = BTreeMap::new();
        for (c, v) in row {
            let e = r.entry(c).or_insert(0);
            *e = (*e + v) % P;
        }
        r.retain(|_, v| *v != 0);
        while let Some((&c, &v)) = r.iter().next() {
            match self.pivots.get(&c) {
                None => {
                    let s = inv_mod(v);
                    for x in r.values_mut() {
                        *x = *x * s % P;
                    }
                    self.pivots.insert(c, r);
                    return Some(c);
                }
                Some(piv) => {
                    for (&pc, &pv) in piv {
                        let e = r.entry(pc).or_insert(0);
                        *e = (*e + P - v * pv % P) % P;
                        if *e == 0 {
                            r.remove(&pc);
                        }
                    }
                }
            }
        }
        None
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }
}
