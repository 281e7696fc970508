//! Verification suites over the built-in corpus. Each case records whether
//! it passed together with the computed values it was judged on.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::cohomology::{cohomology_dim, verify_eq1, z2_shape_check_phi};
use crate::exactla::{fmt_rat, Poly};
use crate::indexfrob::{
    compose_normalizations, frobenius_functional, index, normalize_to_phi, spectrum, Functional,
    IndexOptions, PhiNormalization,
};
use crate::liealg::{is_isomorphism, LieAlg, Variant};
use crate::nerve::simplicial_cohomology_dim;
use crate::poset::{enumerate_height_one, example_tree_poset, example_type_c_poset, Poset};

/// Starred pattern of the gl algebra of `1 < 2 < 3, 4`.
pub const TREE_PATTERN: [&str; 4] = ["****", "0***", "00*0", "000*"];

/// Starred pattern of the type-C example, rows and columns `-3..-1, 1..3`.
pub const TYPE_C_PATTERN: [&str; 6] = ["*00**0", "0*0*0*", "00*0**", "000*00", "0000*0", "00000*"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Figures,
    Rigidity,
    Classification,
    Eq1,
    Spectrum,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Figures,
        Suite::Rigidity,
        Suite::Classification,
        Suite::Eq1,
        Suite::Spectrum,
    ];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Figures => "figures",
            Suite::Rigidity => "rigidity",
            Suite::Classification => "classification",
            Suite::Eq1 => "eq1",
            Suite::Spectrum => "spectrum",
        };
        f.write_str(s)
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.to_string() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Case {
    pub name: String,
    pub passed: bool,
    pub details: Value,
}

impl Case {
    fn new(name: impl Into<String>, passed: bool, details: Value) -> Self {
        Self {
            name: name.into(),
            passed,
            details,
        }
    }

    fn error(name: impl Into<String>, err: impl fmt::Display) -> Self {
        Self::new(name, false, json!({ "error": err.to_string() }))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub passed: bool,
    pub cases: Vec<Case>,
}

/// Seed for case `case` of a run seeded with `seed`.
pub fn derive_seed(seed: u64, case: &str) -> u64 {
    let digest = Sha256::new()
        .chain_update(seed.to_le_bytes())
        .chain_update(case.as_bytes())
        .finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("8 bytes"))
}

pub fn pattern_rows(grid: &[Vec<bool>]) -> Vec<String> {
    grid.iter()
        .map(|r| r.iter().map(|&b| if b { '*' } else { '0' }).collect())
        .collect()
}

pub fn run(suite: Suite, seed: u64) -> SuiteReport {
    let cases = match suite {
        Suite::Figures => figures(),
        Suite::Rigidity => rigidity(),
        Suite::Classification => classification(seed, 6),
        Suite::Eq1 => eq1(),
        Suite::Spectrum => spectra(),
    };
    SuiteReport {
        suite,
        seed,
        passed: cases.iter().all(|c| c.passed),
        cases,
    }
}

fn figure_case(name: &str, p: &Poset, dim: usize, expected: &[&str]) -> Case {
    match LieAlg::build(p, Variant::Gl) {
        Ok(g) => {
            let rows = g.sparsity_pattern().map(|grid| pattern_rows(&grid)).unwrap_or_default();
            let passed = g.dim() == dim && rows == expected && g.check_jacobi().is_ok();
            Case::new(name, passed, json!({ "dim": g.dim(), "pattern": rows, "expected": expected }))
        }
        Err(e) => Case::error(name, e),
    }
}

pub fn figures() -> Vec<Case> {
    vec![
        figure_case("tree poset, gl", &example_tree_poset(), 9, &TREE_PATTERN),
        figure_case("type C example", &example_type_c_poset(), 6, &TYPE_C_PATTERN),
    ]
}

pub fn rigidity() -> Vec<Case> {
    let mut cases: Vec<Case> = (1..=4)
        .into_par_iter()
        .map(|n| {
            let name = format!("H2(Phi_{n}) = 0");
            match LieAlg::phi(n).map_err(|e| e.to_string()).and_then(|g| {
                cohomology_dim(&g, 2).map_err(|e| e.to_string())
            }) {
                Ok(d) => Case::new(name, d.cohomology == 0, json!(d)),
                Err(e) => Case::error(name, e),
            }
        })
        .collect();
    for n in 1..=3 {
        let name = format!("cocycle shape, Phi_{n}");
        cases.push(match z2_shape_check_phi(n) {
            Ok(r) => Case::new(name, r.holds, json!(r)),
            Err(e) => Case::error(name, e),
        });
    }
    cases
}

#[derive(Clone, Debug)]
struct Classified {
    poset: Poset,
    dim: usize,
    index: usize,
    certified: bool,
    normalization: Option<PhiNormalization>,
    error: Option<String>,
}

fn classify_one(p: &Poset, seed: u64) -> Classified {
    let mut out = Classified {
        poset: p.clone(),
        dim: 0,
        index: 0,
        certified: false,
        normalization: None,
        error: None,
    };
    let g = match LieAlg::build(p, Variant::Sl) {
        Ok(g) => g,
        Err(e) => {
            out.error = Some(e.to_string());
            return out;
        }
    };
    out.dim = g.dim();
    match index(&g, &IndexOptions::with_seed(seed)) {
        Ok(c) => {
            out.index = c.index;
            out.certified = c.certified_frobenius;
        }
        Err(e) => out.error = Some(e.to_string()),
    }
    if out.certified {
        match normalize_to_phi(&g, &IndexOptions::with_seed(seed)) {
            Ok(n) => out.normalization = Some(n),
            Err(e) => out.error = Some(e.to_string()),
        }
    }
    out
}

fn relations_json(p: &Poset) -> Value {
    json!(p.hasse().into_iter().map(|(a, b)| [a, b]).collect::<Vec<_>>())
}

/// Every connected height-one poset on `2..=max_size` elements: Frobenius
/// ones normalize to `Phi_n`, and equal-dimension pairs compose.
pub fn classification(seed: u64, max_size: usize) -> Vec<Case> {
    let mut cases = Vec::new();
    let mut frobenius: Vec<(Poset, LieAlg, PhiNormalization)> = Vec::new();
    for size in 2..=max_size {
        let posets = match enumerate_height_one(size) {
            Ok(p) => p,
            Err(e) => {
                cases.push(Case::error(format!("enumerate {size}"), e));
                continue;
            }
        };
        let results: Vec<Classified> = posets
            .par_iter()
            .enumerate()
            .map(|(i, p)| classify_one(p, derive_seed(seed, &format!("classify/{size}/{i}"))))
            .collect();
        for (i, r) in results.into_iter().enumerate() {
            let name = format!("size {size} #{i}");
            let mut details = json!({
                "hasse": relations_json(&r.poset),
                "dim": r.dim,
                "index": r.index,
                "certified_frobenius": r.certified,
            });
            let passed = if let Some(e) = &r.error {
                details["error"] = json!(e);
                false
            } else if r.certified {
                let norm = r.normalization.expect("set when certified");
                details["phi_n"] = json!(norm.n);
                details["verified"] = json!(norm.verified);
                let ok = r.dim % 2 == 0 && norm.n * 2 == r.dim && norm.verified;
                let g = LieAlg::build(&r.poset, Variant::Sl).expect("built above");
                frobenius.push((r.poset.clone(), g, norm));
                ok
            } else {
                true
            };
            cases.push(Case::new(name, passed, details));
        }
    }
    // pairwise isomorphisms between Frobenius instances of equal dimension
    let mut pairs = 0usize;
    let mut failures = Vec::new();
    for (i, (p, g, ng)) in frobenius.iter().enumerate() {
        for (q, h, nh) in &frobenius[i + 1..] {
            if g.dim() != h.dim() {
                continue;
            }
            pairs += 1;
            let ok = compose_normalizations(ng, nh).is_some_and(|m| is_isomorphism(g, h, &m));
            if !ok {
                failures.push(json!([relations_json(p), relations_json(q)]));
            }
        }
    }
    cases.push(Case::new(
        "pairwise isomorphisms",
        failures.is_empty(),
        json!({ "pairs": pairs, "failures": failures }),
    ));
    cases
}

/// Height-one posets whose Hasse diagram is a tree are Frobenius, and the
/// number of Frobenius classes meets `floor(n^(n-2) / n!)`.
pub fn tree_frobenius(seed: u64, max_size: usize) -> Vec<Case> {
    let mut cases = Vec::new();
    for size in 2..=max_size {
        let posets = match enumerate_height_one(size) {
            Ok(p) => p,
            Err(e) => {
                cases.push(Case::error(format!("enumerate {size}"), e));
                continue;
            }
        };
        let results: Vec<(bool, bool)> = posets
            .par_iter()
            .enumerate()
            .map(|(i, p)| {
                let tree = p.hasse_graph_properties().acyclic;
                let g = LieAlg::build(p, Variant::Sl).expect("family A");
                let opts = IndexOptions::with_seed(derive_seed(seed, &format!("tree/{size}/{i}")));
                (tree, index(&g, &opts).expect("trials > 0").index == 0)
            })
            .collect();
        let trees = results.iter().filter(|r| r.0).count();
        let tree_frobenius = results.iter().filter(|r| r.0 && r.1).count();
        let frobenius = results.iter().filter(|r| r.1).count();
        let bound = remark_bound(size);
        cases.push(Case::new(
            format!("size {size}"),
            trees == tree_frobenius && frobenius >= bound,
            json!({
                "posets": posets.len(),
                "trees": trees,
                "trees_frobenius": tree_frobenius,
                "frobenius": frobenius,
                "lower_bound": bound,
            }),
        ));
    }
    cases
}

/// `floor(n^(n-2) / n!)`.
pub fn remark_bound(n: usize) -> usize {
    if n < 2 {
        return 0;
    }
    let num = (n as u128).pow(n as u32 - 2);
    let den: u128 = (1..=n as u128).product();
    (num / den) as usize
}

pub fn eq1() -> Vec<Case> {
    let corpus = [
        ("chain 2", Poset::chain(2).expect("n > 0")),
        ("chain 3", Poset::chain(3).expect("n > 0")),
        ("chain 4", Poset::chain(4).expect("n > 0")),
        ("tree poset", example_tree_poset()),
    ];
    let mut cases: Vec<Case> = corpus
        .par_iter()
        .map(|(name, p)| {
            let gl = verify_eq1(p, Variant::Gl);
            let sl = verify_eq1(p, Variant::Sl);
            match (gl, sl) {
                (Ok(gl), Ok(sl)) => Case::new(*name, gl.matched, json!({ "gl": gl, "sl": sl })),
                (Err(e), _) | (_, Err(e)) => Case::error(*name, e),
            }
        })
        .collect();
    let p = example_type_c_poset();
    let h1 = simplicial_cohomology_dim(&p, 1).expect("degree in range");
    cases.push(match verify_eq1(&p, Variant::Gl) {
        Ok(r) => Case::new(
            "type C example (expected mismatch)",
            !r.matched && r.lhs == 0 && h1 == 1,
            json!({ "report": r, "nerve_h1": h1 }),
        ),
        Err(e) => Case::error("type C example", e),
    });
    cases
}

fn spectrum_case(name: String, g: &LieAlg, f: &Functional, expect: &Poly, p_expect: Option<&[i64]>) -> Case {
    match spectrum(g, f) {
        Ok(s) => {
            let p_ok = p_expect.is_none_or(|want| {
                s.principal_element.iter().map(fmt_rat).collect::<Vec<_>>()
                    == want.iter().map(|x| x.to_string()).collect::<Vec<_>>()
            });
            Case::new(name, &s.char_poly == expect && s.binary && p_ok, json!(s))
        }
        Err(e) => Case::error(name, e),
    }
}

pub fn spectra() -> Vec<Case> {
    let mut cases = Vec::new();
    for n in 1..=5 {
        let g = LieAlg::phi(n).expect("n > 0");
        let mut p: Vec<i64> = vec![1; n];
        p.extend(vec![0; n]);
        cases.push(spectrum_case(
            format!("Phi_{n}"),
            &g,
            &Functional::root_sum(&g),
            &Poly::binary(n, n),
            Some(&p),
        ));
    }
    let g = LieAlg::build(&example_type_c_poset(), Variant::Gl).expect("valid");
    cases.push(match frobenius_functional(&g, &IndexOptions::default()) {
        Ok(Some(f)) => spectrum_case("type C example".into(), &g, &f, &Poly::binary(3, 3), None),
        Ok(None) => Case::new("type C example", false, json!({ "error": "not Frobenius" })),
        Err(e) => Case::error("type C example", e),
    });
    cases
}
