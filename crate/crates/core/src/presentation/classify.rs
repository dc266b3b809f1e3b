use serde::Serialize;

use super::{Presentation, PresentationError};
use crate::freealg::Word;
use crate::scalar::Scalar;

/// One relation normalized to `x_j x_i = c x_i x_j + Σ_k a_k x_k + d` (i < j).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairRelation {
    pub i: usize,
    pub j: usize,
    pub relation: usize,
    pub c: Scalar,
    pub linear: Vec<Scalar>,
    pub constant: Scalar,
}

/// The parameters of a skew-PBW-shaped presentation, one entry per pair i < j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PbwShape {
    pub pairs: Vec<PairRelation>,
}

impl PbwShape {
    pub fn pair(&self, i: usize, j: usize) -> Option<&PairRelation> {
        self.pairs.iter().find(|p| p.i == i && p.j == j)
    }

    pub fn has_linear_terms(&self) -> bool {
        self.pairs.iter().any(|p| p.linear.iter().any(|a| !a.is_zero()))
    }

    pub fn has_constants(&self) -> bool {
        self.pairs.iter().any(|p| !p.constant.is_zero())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationFlags {
    pub pbw_shape: bool,
    pub constant: bool,
    pub bijective: bool,
    pub pre_commutative: bool,
    pub quasi_commutative: bool,
    pub semi_commutative: bool,
    pub fsg_algebra: bool,
    pub notes: Vec<String>,
}

fn normalize(p: &Presentation, idx: usize) -> Option<PairRelation> {
    let r = &p.relations[idx];
    if r.degree() != Some(2) {
        return None;
    }
    let q = r.homogeneous_component(2);
    let words: Vec<&Word> = q.terms().map(|(w, _)| w).collect();
    if words.len() != 2 {
        return None;
    }
    let (a, b) = (words[0].letters()[0], words[0].letters()[1]);
    if a == b || words[1].letters() != [b, a] {
        return None;
    }
    let (i, j) = (a.min(b), a.max(b));
    let alpha = q.coefficient(&Word::new(vec![j, i]))?.clone();
    let beta = q.coefficient(&Word::new(vec![i, j]))?;
    let scale = |s: &Scalar| -s.div(&alpha).expect("alpha is nonzero");
    let linear =
        (0..p.n()).map(|k| r.coefficient(&Word::letter(k as u8)).map_or_else(|| p.kind().zero(), scale)).collect();
    let constant = r.coefficient(&Word::empty()).map_or_else(|| p.kind().zero(), scale);
    Some(PairRelation { i: i as usize, j: j as usize, relation: idx, c: scale(beta), linear, constant })
}

/// The relation-shape parameters when the relations biject with the pairs
/// i < j, each of the form `x_j x_i − c x_i x_j − Σ a_k x_k − d` with c ≠ 0.
pub fn pbw_shape(p: &Presentation) -> Option<PbwShape> {
    let n = p.n();
    if p.relations.len() != n * n.saturating_sub(1) / 2 {
        return None;
    }
    let mut pairs = (0..p.relations.len()).map(|k| normalize(p, k)).collect::<Option<Vec<_>>>()?;
    pairs.sort_by_key(|r| (r.i, r.j));
    if pairs.windows(2).any(|w| (w[0].i, w[0].j) == (w[1].i, w[1].j)) {
        return None;
    }
    Some(PbwShape { pairs })
}

pub fn classify(p: &Presentation) -> ClassificationFlags {
    match pbw_shape(p) {
        Some(shape) => {
            let pre = !shape.has_constants();
            let qc = pre && !shape.has_linear_terms();
            ClassificationFlags {
                pbw_shape: true,
                constant: true,
                bijective: true,
                pre_commutative: pre,
                quasi_commutative: qc,
                semi_commutative: qc,
                fsg_algebra: pre,
                notes: vec![
                    "constant: automatic, scalars of the base field are central".into(),
                    "bijective: automatic, every c_ij is a nonzero field element".into(),
                    "pbw_shape is syntactic; the standard-monomial basis is certified by the Hilbert series".into(),
                ],
            }
        }
        None => ClassificationFlags {
            pbw_shape: false,
            constant: false,
            bijective: false,
            pre_commutative: false,
            quasi_commutative: false,
            semi_commutative: false,
            fsg_algebra: p.connected && p.relations_in_positive_degree(),
            notes: vec![
                "not of skew PBW shape; fsg_algebra is a syntactic check of connectedness and b_i in F_{>=1}".into()
            ],
        },
    }
}

/// Replaces each relation by its quadratic part `x_j x_i − c_ij x_i x_j`.
pub fn associated_graded(p: &Presentation) -> Result<Presentation, PresentationError> {
    pbw_shape(p).ok_or(PresentationError::NotPbwShape)?;
    let relations = p.relations.iter().map(|r| r.homogeneous_component(2)).collect();
    Ok(p.with_relations(format!("gr({})", p.name), relations))
}
