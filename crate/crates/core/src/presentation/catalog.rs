use std::collections::BTreeMap;

use super::{FieldDoc, Presentation, PresentationDoc, PresentationError};

/// A built-in presentation. Relations may mention parameters, whose default
/// bindings are listed in `params` and can be overridden by the caller.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub generators: &'static [&'static str],
    pub relations: &'static [&'static str],
    pub params: &'static [(&'static str, &'static str)],
    /// True for generic relation templates whose constants are user-bound.
    pub template: bool,
}

impl CatalogEntry {
    pub fn doc(&self) -> PresentationDoc {
        PresentationDoc {
            name: self.name.to_string(),
            generators: self.generators.iter().map(|s| s.to_string()).collect(),
            field: FieldDoc::Q,
            params: self.params.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect::<BTreeMap<_, _>>(),
            relations: self.relations.iter().map(|s| s.to_string()).collect(),
            weights: None,
            connected: true,
        }
    }
}

const XYZ: &[&str] = &["x", "y", "z"];
const XY: &[&str] = &["x", "y"];

macro_rules! entry {
    ($name:expr, $desc:expr, $gens:expr, [$($rel:expr),* $(,)?]) => {
        entry!($name, $desc, $gens, [$($rel),*], [])
    };
    ($name:expr, $desc:expr, $gens:expr, [$($rel:expr),* $(,)?], [$(($k:expr, $v:expr)),* $(,)?]) => {
        CatalogEntry {
            name: $name,
            description: $desc,
            generators: $gens,
            relations: &[$($rel),*],
            params: &[$(($k, $v)),*],
            template: false,
        }
    };
}

static ENTRIES: &[CatalogEntry] = &[
    entry!("free_2", "free algebra on two generators", XY, []),
    entry!("polynomial_3", "classical polynomial algebra K[x,y,z]", XYZ, ["y*x - x*y", "z*x - x*z", "z*y - y*z"]),
    entry!("quantum_plane", "quantum plane yx = q xy", XY, ["y*x - q*x*y"], [("q", "2")]),
    entry!("jordan_plane", "Jordan plane yx = xy + x^2", XY, ["y*x - x*y - x^2"]),
    entry!(
        "rogalski_quadratic",
        "graded algebra z^2 = xy + yx with z central (Rogalski)",
        XYZ,
        ["z^2 - x*y - y*x", "z*x - x*z", "z*y - y*z"]
    ),
    entry!(
        "rogalski_cubic",
        "graded algebra with cubic relations yx^2 = x^2y, y^2x = xy^2 (Rogalski)",
        XY,
        ["y*x^2 - x^2*y", "y^2*x - x*y^2"]
    ),
    entry!(
        "sklyanin_special",
        "Artin-Schelter regular Sklyanin algebra yx = xy + z^2, zy = yz + x^2, zx = xz + y^2",
        XYZ,
        ["y*x - x*y - z^2", "z*y - y*z - x^2", "z*x - x*z - y^2"]
    ),
    entry!(
        "sklyanin",
        "Sklyanin algebra a yx + b xy + c z^2 and cyclic",
        XYZ,
        ["a*y*x + b*x*y + c*z^2", "a*z*y + b*y*z + c*x^2", "a*x*z + b*z*x + c*y^2"],
        [("a", "1"), ("b", "-1"), ("c", "-1")]
    ),
    entry!("weyl", "first Weyl algebra xt - tx = 1", &["t", "x"], ["x*t - t*x - 1"]),
    entry!("xy_minus_x", "K{x,y}/<xy - x>", XY, ["x*y - x"]),
    entry!(
        "heisenberg",
        "enveloping algebra of the Heisenberg Lie algebra [x,y] = z",
        XYZ,
        ["x*y - y*x - z", "x*z - z*x", "y*z - z*y"]
    ),
    // 3-dimensional skew polynomial algebras
    entry!(
        "skew3_1",
        "skew polynomial, |{alpha,beta,gamma}| = 3: yz = alpha zy, zx = beta xz, xy = gamma yx",
        XYZ,
        ["y*z - alpha*z*y", "z*x - beta*x*z", "x*y - gamma*y*x"],
        [("alpha", "2"), ("beta", "3"), ("gamma", "5")]
    ),
    entry!(
        "skew3_2",
        "skew polynomial: yz - zy = z, zx - beta xz = y, xy - yx = x",
        XYZ,
        ["y*z - z*y - z", "z*x - beta*x*z - y", "x*y - y*x - x"],
        [("beta", "2")]
    ),
    entry!(
        "skew3_3",
        "skew polynomial: yz - zy = z, zx - beta xz = b, xy - yx = x",
        XYZ,
        ["y*z - z*y - z", "z*x - beta*x*z - b", "x*y - y*x - x"],
        [("beta", "2"), ("b", "1")]
    ),
    entry!(
        "skew3_4",
        "skew polynomial: yz - zy = 0, zx - beta xz = y, xy - yx = 0",
        XYZ,
        ["y*z - z*y", "z*x - beta*x*z - y", "x*y - y*x"],
        [("beta", "2")]
    ),
    entry!(
        "skew3_5",
        "skew polynomial: yz - zy = 0, zx - beta xz = b, xy - yx = 0",
        XYZ,
        ["y*z - z*y", "z*x - beta*x*z - b", "x*y - y*x"],
        [("beta", "2"), ("b", "1")]
    ),
    entry!(
        "skew3_6",
        "skew polynomial: yz - zy = az, zx - beta xz = 0, xy - yx = x",
        XYZ,
        ["y*z - z*y - a*z", "z*x - beta*x*z", "x*y - y*x - x"],
        [("beta", "2"), ("a", "1")]
    ),
    entry!(
        "skew3_7",
        "skew polynomial: yz - zy = z, zx - beta xz = 0, xy - yx = 0",
        XYZ,
        ["y*z - z*y - z", "z*x - beta*x*z", "x*y - y*x"],
        [("beta", "2")]
    ),
    entry!(
        "skew3_8",
        "skew polynomial: yz - alpha zy = 0, zx - beta xz = y + b, xy - alpha yx = 0",
        XYZ,
        ["y*z - alpha*z*y", "z*x - beta*x*z - y - b", "x*y - alpha*y*x"],
        [("alpha", "2"), ("beta", "3"), ("b", "1")]
    ),
    entry!(
        "skew3_9",
        "skew polynomial: yz - alpha zy = 0, zx - beta xz = b, xy - alpha yx = 0",
        XYZ,
        ["y*z - alpha*z*y", "z*x - beta*x*z - b", "x*y - alpha*y*x"],
        [("alpha", "2"), ("beta", "3"), ("b", "1")]
    ),
    entry!(
        "skew3_10",
        "skew polynomial: yz - alpha zy = a1 x + b1, zx - alpha xz = a2 y + b2, xy - alpha yx = a3 z + b3",
        XYZ,
        ["y*z - alpha*z*y - a1*x - b1", "z*x - alpha*x*z - a2*y - b2", "x*y - alpha*y*x - a3*z - b3"],
        [("alpha", "2"), ("a1", "1"), ("a2", "1"), ("a3", "1"), ("b1", "1"), ("b2", "1"), ("b3", "1")]
    ),
    entry!(
        "skew3_11",
        "skew polynomial: yz - zy = x, zx - xz = y, xy - yx = z",
        XYZ,
        ["y*z - z*y - x", "z*x - x*z - y", "x*y - y*x - z"]
    ),
    entry!(
        "skew3_12",
        "skew polynomial: yz - zy = 0, zx - xz = 0, xy - yx = z",
        XYZ,
        ["y*z - z*y", "z*x - x*z", "x*y - y*x - z"]
    ),
    entry!(
        "skew3_13",
        "skew polynomial: yz - zy = 0, zx - xz = 0, xy - yx = b",
        XYZ,
        ["y*z - z*y", "z*x - x*z", "x*y - y*x - b"],
        [("b", "1")]
    ),
    entry!(
        "skew3_14",
        "skew polynomial: yz - zy = -y, zx - xz = x + y, xy - yx = 0",
        XYZ,
        ["y*z - z*y + y", "z*x - x*z - x - y", "x*y - y*x"]
    ),
    entry!(
        "skew3_15",
        "skew polynomial: yz - zy = az, zx - xz = x, xy - yx = 0 (standard monomials form a basis only for a = 0)",
        XYZ,
        ["y*z - z*y - a*z", "z*x - x*z - x", "x*y - y*x"],
        [("a", "0")]
    ),
    // Sridharan enveloping algebras: xy - yx = [x,y], yz - zy = [y,z], zx - xz = [z,x]
    entry!(
        "sridharan_1",
        "Sridharan type 1: [x,y] = 0, [y,z] = 0, [z,x] = 0",
        XYZ,
        ["x*y - y*x", "y*z - z*y", "z*x - x*z"]
    ),
    entry!(
        "sridharan_2",
        "Sridharan type 2: [x,y] = 0, [y,z] = x, [z,x] = 0",
        XYZ,
        ["x*y - y*x", "y*z - z*y - x", "z*x - x*z"]
    ),
    entry!(
        "sridharan_3",
        "Sridharan type 3: [x,y] = x, [y,z] = 0, [z,x] = 0",
        XYZ,
        ["x*y - y*x - x", "y*z - z*y", "z*x - x*z"]
    ),
    entry!(
        "sridharan_4",
        "Sridharan type 4: [x,y] = 0, [y,z] = alpha y, [z,x] = -x",
        XYZ,
        ["x*y - y*x", "y*z - z*y - alpha*y", "z*x - x*z + x"],
        [("alpha", "2")]
    ),
    entry!(
        "sridharan_5",
        "Sridharan type 5: [x,y] = 0, [y,z] = y, [z,x] = -(x + y)",
        XYZ,
        ["x*y - y*x", "y*z - z*y - y", "z*x - x*z + x + y"]
    ),
    entry!(
        "sridharan_6",
        "Sridharan type 6: [x,y] = z, [y,z] = -2y, [z,x] = -2x",
        XYZ,
        ["x*y - y*x - z", "y*z - z*y + 2*y", "z*x - x*z + 2*x"]
    ),
    entry!(
        "sridharan_7",
        "Sridharan type 7: [x,y] = 1, [y,z] = 0, [z,x] = 0",
        XYZ,
        ["x*y - y*x - 1", "y*z - z*y", "z*x - x*z"]
    ),
    entry!(
        "sridharan_8",
        "Sridharan type 8: [x,y] = 1, [y,z] = x, [z,x] = 0",
        XYZ,
        ["x*y - y*x - 1", "y*z - z*y - x", "z*x - x*z"]
    ),
    entry!(
        "sridharan_9",
        "Sridharan type 9: [x,y] = x, [y,z] = 1, [z,x] = 0",
        XYZ,
        ["x*y - y*x - x", "y*z - z*y - 1", "z*x - x*z"]
    ),
    entry!(
        "sridharan_10",
        "Sridharan type 10: [x,y] = 1, [y,z] = y, [z,x] = x",
        XYZ,
        ["x*y - y*x - 1", "y*z - z*y - y", "z*x - x*z - x"]
    ),
    // FSG algebras that are not skew PBW extensions
    entry!("monomial_quadratic", "monomial quadratic algebra K{x,y}/<xy, y^2>", XY, ["x*y", "y^2"]),
    entry!("phan_4", "K{w,x,y,u}/<yu, ux - xu, uw> (Phan)", &["w", "x", "y", "u"], ["y*u", "u*x - x*u", "u*w"]),
    entry!("phan_5", "K{x,y}/<x^2y, y^2x> (Phan)", XY, ["x^2*y", "y^2*x"]),
    entry!(
        "non_sk_example",
        "K{x,y}/<x^2 - xy, yx, y^3>: FSG, not semi-graded Koszul (Cassidy)",
        XY,
        ["x^2 - x*y", "y*x", "y^3"]
    ),
    entry!(
        "cassidy_7",
        "K{w,x,y,z}/<z^2y^2, y^3x^2, x^2w, zy^3x> (Cassidy)",
        &["w", "x", "y", "z"],
        ["z^2*y^2", "y^3*x^2", "x^2*w", "z*y^3*x"]
    ),
    entry!("cassidy_8", "K{x,y,z}/<x^4, yx^3, x^3z> (Cassidy)", XYZ, ["x^4", "y*x^3", "x^3*z"]),
    entry!(
        "cassidy_9",
        "K{x,y,z}/<xz - zx, yz - zy, x^3z, y^4 + xz^3> (Cassidy)",
        XYZ,
        ["x*z - z*x", "y*z - z*y", "x^3*z", "y^4 + x*z^3"]
    ),
    entry!(
        "cassidy_10",
        "K{x,y,z,w,g}/<y^2z, zx^2 + gw^2, y^2w^2, g central> (Cassidy)",
        &["x", "y", "z", "w", "g"],
        ["y^2*z", "z*x^2 + g*w^2", "y^2*w^2", "x*g - g*x", "y*g - g*y", "w*g - g*w", "z*g - g*z"]
    ),
    entry!("cassidy_11", "K{x,y}/<x^2y - yx^2, xy^3 - y^3x> (Cassidy)", XY, ["x^2*y - y*x^2", "x*y^3 - y^3*x"]),
    entry!("cassidy_12", "K{x,y}/<xyx, xy^2x, y^3> (Cassidy)", XY, ["x*y*x", "x*y^2*x", "y^3"]),
    // generic templates with user-bound constants
    CatalogEntry {
        name: "pbw_qc_3",
        description: "quasi-commutative template x_j x_i = c_ij x_i x_j on three generators",
        generators: XYZ,
        relations: &["y*x - c12*x*y", "z*x - c13*x*z", "z*y - c23*y*z"],
        params: &[("c12", "2"), ("c13", "3"), ("c23", "5")],
        template: true,
    },
    CatalogEntry {
        name: "pbw_tail_3",
        description: "template x_j x_i = c_ij x_i x_j + a_ij x_k with {i,j,k} = {1,2,3}; defaults give U(so(3))",
        generators: XYZ,
        relations: &["y*x - c12*x*y - a12*z", "z*x - c13*x*z - a13*y", "z*y - c23*y*z - a23*x"],
        params: &[("c12", "1"), ("c13", "1"), ("c23", "1"), ("a12", "-1"), ("a13", "1"), ("a23", "-1")],
        template: true,
    },
];

pub fn catalog_entries() -> &'static [CatalogEntry] {
    ENTRIES
}

pub fn catalog_list() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.name).collect()
}

fn find(name: &str) -> Result<&'static CatalogEntry, PresentationError> {
    ENTRIES.iter().find(|e| e.name == name).ok_or_else(|| PresentationError::UnknownCatalogEntry(name.to_string()))
}

/// The entry with its default parameter bindings, over Q.
pub fn catalog(name: &str) -> Result<Presentation, PresentationError> {
    find(name)?.doc().build()
}

pub fn catalog_doc(name: &str) -> Result<PresentationDoc, PresentationError> {
    Ok(find(name)?.doc())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::classify;

    #[test]
    fn named_entries() {
        assert_eq!(catalog("non_sk_example").unwrap().render_relations(), vec!["-x*y + x*x", "y*x", "y*y*y"]);
        assert_eq!(catalog("jordan_plane").unwrap().render_relations(), vec!["y*x - x*y - x*x"]);
        assert!(catalog("free_2").unwrap().relations.is_empty());
        assert_eq!(catalog("nope").unwrap_err(), PresentationError::UnknownCatalogEntry("nope".into()));
    }

    #[test]
    fn every_entry_builds_and_round_trips() {
        let mut names = std::collections::BTreeSet::new();
        for e in catalog_entries() {
            assert!(names.insert(e.name), "duplicate {}", e.name);
            let p = catalog(e.name).unwrap();
            let again = p.to_doc().build().unwrap();
            assert_eq!(again.relations, p.relations, "{}", e.name);
            assert_eq!(again.fingerprint(), p.fingerprint());
            let json = serde_json::to_string(&p.to_doc()).unwrap();
            assert_eq!(PresentationDoc::from_json(&json).unwrap().build().unwrap(), again);
        }
    }

    #[test]
    fn graded_parts_are_quasi_commutative() {
        for e in catalog_entries() {
            let p = catalog(e.name).unwrap();
            if let Ok(g) = classify::associated_graded(&p) {
                assert!(classify::classify(&g).quasi_commutative, "{}", e.name);
            }
        }
    }

    #[test]
    fn sklyanin_defaults_match_special_case() {
        let general = catalog("sklyanin").unwrap();
        assert!(!classify::classify(&general).pbw_shape);
        assert!(!classify::classify(&catalog("sklyanin_special").unwrap()).pbw_shape);
    }
}
