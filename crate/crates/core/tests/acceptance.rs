//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each
//! and exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use lieposet_core::cohomology::{coboundary_matrix, cohomology_dim, verify_eq1, z2_shape_check_phi};
use lieposet_core::exactla::{int, rank, Poly, Rat};
use lieposet_core::indexfrob::{
    commutator_matrix, eval_kirillov, frobenius_functional, index, spectrum, Functional, IndexOptions,
};
use lieposet_core::liealg::{LieAlg, Variant};
use lieposet_core::nerve::{simplicial_cohomology_dim, SimplicialCochainComplex};
use lieposet_core::poset::{enumerate_height_one, example_tree_poset, example_type_c_poset, Family, Poset};
use lieposet_core::suites::{self, pattern_rows, TREE_PATTERN, TYPE_C_PATTERN};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn criterion_1() -> Outcome {
    let g = LieAlg::build(&example_tree_poset(), Variant::Gl).map_err(|e| e.to_string())?;
    let rows = pattern_rows(&g.sparsity_pattern().ok_or("no realization")?);
    ensure(g.dim() == 9, format!("tree dim {}", g.dim()))?;
    ensure(rows == TREE_PATTERN, format!("tree pattern {rows:?}"))?;
    let c = LieAlg::build(&example_type_c_poset(), Variant::Gl).map_err(|e| e.to_string())?;
    let rows = pattern_rows(&c.sparsity_pattern().ok_or("no realization")?);
    ensure(c.dim() == 6, format!("type C dim {}", c.dim()))?;
    ensure(rows == TYPE_C_PATTERN, format!("type C pattern {rows:?}"))?;
    Ok("dims 9 and 6, patterns exact".into())
}

fn criterion_2() -> Outcome {
    let p = example_type_c_poset();
    let g = LieAlg::build(&p, Variant::Gl).map_err(|e| e.to_string())?;
    ensure(g.derived_series().is_two_step(), "not two-step solvable")?;
    let cert = index(&g, &IndexOptions::with_seed(2024)).map_err(|e| e.to_string())?;
    ensure(cert.index == 0 && cert.certified_frobenius, format!("index {}", cert.index))?;
    // the certificate is exact: the witness gives a nonsingular Kirillov matrix
    let w = cert.witness.ok_or("no witness")?;
    let m = eval_kirillov(&commutator_matrix(&g), &w).map_err(|e| e.to_string())?;
    ensure(rank(&m) == g.dim(), "witness is degenerate")?;
    let h2 = cohomology_dim(&g, 2).map_err(|e| e.to_string())?.cohomology;
    ensure(h2 == 0, format!("H2 = {h2}"))?;
    let h1 = simplicial_cohomology_dim(&p, 1).map_err(|e| e.to_string())?;
    ensure(h1 == 1, format!("nerve H1 = {h1}"))?;
    let r = verify_eq1(&p, Variant::Gl).map_err(|e| e.to_string())?;
    ensure(!r.matched, "eq1 unexpectedly matched")?;
    Ok(format!("index 0 certified, H2 = 0, nerve H1 = 1, eq1 lhs {} vs rhs {}", r.lhs, r.rhs))
}

fn criterion_3() -> Outcome {
    let mut dims = Vec::new();
    for n in 1..=4 {
        let g = LieAlg::phi(n).map_err(|e| e.to_string())?;
        let d = cohomology_dim(&g, 2).map_err(|e| e.to_string())?;
        ensure(d.cohomology == 0, format!("H2(Phi_{n}) = {}", d.cohomology))?;
        dims.push(format!("Z2={} B2={}", d.cocycle, d.coboundary));
    }
    for n in 1..=3 {
        let r = z2_shape_check_phi(n).map_err(|e| e.to_string())?;
        ensure(r.holds, format!("shape check n = {n}: {:?}", r.reason))?;
    }
    Ok(format!("H2(Phi_n) = 0 for n = 1..4 ({}); cocycle shapes hold for n <= 3", dims.join(", ")))
}

fn criterion_4() -> Outcome {
    let cases = suites::classification(4242, 6);
    let failed: Vec<_> = cases.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
    ensure(failed.is_empty(), format!("failed: {failed:?}"))?;
    let frobenius = cases.iter().filter(|c| c.details.get("phi_n").is_some()).count();
    ensure(frobenius > 0, "no Frobenius instances")?;
    let pairs = &cases.last().expect("pairwise case").details["pairs"];
    Ok(format!(
        "{} posets, {frobenius} Frobenius, all normalized; {pairs} equal-dimension pairs composed",
        cases.len() - 1
    ))
}

fn criterion_5() -> Outcome {
    let cases = suites::tree_frobenius(77, 6);
    let mut summary = Vec::new();
    for c in &cases {
        ensure(c.passed, format!("{}: {}", c.name, c.details))?;
        ensure(c.details["trees"].as_u64().unwrap_or(0) > 0, format!("{}: no trees", c.name))?;
        summary.push(format!(
            "n={} {}>={}",
            c.name.trim_start_matches("size "),
            c.details["frobenius"],
            c.details["lower_bound"]
        ));
    }
    Ok(format!("tree posets Frobenius; counts {}", summary.join(" ")))
}

fn criterion_6() -> Outcome {
    for n in 1..=5 {
        let g = LieAlg::phi(n).map_err(|e| e.to_string())?;
        let s = spectrum(&g, &Functional::root_sum(&g)).map_err(|e| e.to_string())?;
        ensure(s.char_poly == Poly::binary(n, n), format!("Phi_{n}: {}", s.char_poly))?;
        let expect: Vec<Rat> = (0..2 * n).map(|i| if i < n { Rat::one() } else { Rat::zero() }).collect();
        ensure(s.principal_element == expect, format!("Phi_{n} principal element"))?;
    }
    let g = LieAlg::build(&example_type_c_poset(), Variant::Gl).map_err(|e| e.to_string())?;
    let f = frobenius_functional(&g, &IndexOptions::with_seed(6))
        .map_err(|e| e.to_string())?
        .ok_or("type C example not Frobenius")?;
    let s = spectrum(&g, &f).map_err(|e| e.to_string())?;
    ensure(s.char_poly == Poly::binary(3, 3), format!("type C: {}", s.char_poly))?;
    Ok("x^n(x-1)^n with principal element sum d_i for n = 1..5; type C x^3(x-1)^3".into())
}

fn criterion_7() -> Outcome {
    let corpus = [
        ("chain 2", Poset::chain(2).unwrap(), 1),
        ("chain 3", Poset::chain(3).unwrap(), 3),
        ("chain 4", Poset::chain(4).unwrap(), 6),
        ("tree", example_tree_poset(), 6),
    ];
    let mut values = Vec::new();
    for (name, p, golden) in corpus {
        let r = verify_eq1(&p, Variant::Gl).map_err(|e| e.to_string())?;
        ensure(r.matched, format!("{name}: lhs {} rhs {}", r.lhs, r.rhs))?;
        ensure(r.lhs == golden, format!("{name}: lhs {} differs from frozen {golden}", r.lhs))?;
        values.push(r.lhs.to_string());
    }
    Ok(format!("lhs = rhs = {}", values.join(", ")))
}

/// Every algebra the suite knows how to construct at desk scale.
fn corpus() -> Vec<(String, LieAlg)> {
    let mut out = Vec::new();
    let mut push = |name: String, g: LieAlg| out.push((name, g));
    for n in 1..=5 {
        push(format!("Phi_{n}"), LieAlg::phi(n).unwrap());
    }
    let named = [
        ("tree", example_tree_poset()),
        ("type C", example_type_c_poset()),
        ("antichain 3", Poset::antichain(3).unwrap()),
        ("type B", Poset::new(Family::B, [-2, -1, 0, 1, 2], [(-2, -1), (1, 2)]).unwrap()),
        ("type D", Poset::new(Family::D, [-2, -1, 1, 2], [(-2, 1), (-1, 2)]).unwrap()),
    ];
    for (name, p) in named {
        push(name.to_string(), LieAlg::build(&p, Variant::Gl).unwrap());
    }
    for n in 1..=4 {
        for v in [Variant::Gl, Variant::Sl] {
            push(format!("chain {n} {v}"), LieAlg::build(&Poset::chain(n).unwrap(), v).unwrap());
        }
    }
    for size in 2..=6 {
        for (i, p) in enumerate_height_one(size).unwrap().iter().enumerate() {
            for v in [Variant::Gl, Variant::Sl] {
                push(format!("height one {size}#{i} {v}"), LieAlg::build(p, v).unwrap());
            }
        }
    }
    out
}

fn criterion_8() -> Outcome {
    let corpus = corpus();
    let mut complexes = 0;
    for (name, g) in &corpus {
        ensure(g.check_jacobi().is_ok(), format!("{name}: Jacobi fails"))?;
        if g.dim() <= 12 {
            let h0 = cohomology_dim(g, 0).map_err(|e| e.to_string())?.cohomology;
            ensure(h0 == g.center().dim(), format!("{name}: H0 {h0} vs center"))?;
        }
        if g.dim() <= 12 {
            let top = g.dim().min(3);
            let maps: Vec<_> = (0..top).map(|n| coboundary_matrix(g, n).unwrap().matrix).collect();
            for w in maps.windows(2) {
                ensure(w[1].mul(&w[0]).unwrap().is_zero(), format!("{name}: dd != 0"))?;
                complexes += 1;
            }
        }
        let t = commutator_matrix(g);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..3 {
            let f = Functional::new((0..g.dim()).map(|_| int(rng.random_range(-50..=50))).collect());
            let m = eval_kirillov(&t, &f).unwrap();
            ensure(m.is_skew_symmetric() && rank(&m) % 2 == 0, format!("{name}: Kirillov rank odd"))?;
        }
        let certs: Vec<_> = [1u64, 2, 3, 4, 5]
            .iter()
            .map(|&s| {
                let c = index(g, &IndexOptions::with_seed(s)).unwrap();
                (c.index, c.certified_frobenius)
            })
            .collect();
        ensure(certs.windows(2).all(|w| w[0] == w[1]), format!("{name}: index varies with seed {certs:?}"))?;
    }
    let posets = [example_tree_poset(), example_type_c_poset(), Poset::chain(5).unwrap(), Poset::antichain(4).unwrap()];
    for p in &posets {
        let c = SimplicialCochainComplex::new(p);
        for w in c.coboundaries.windows(2) {
            ensure(w[1].mul(&w[0]).unwrap().is_zero(), "nerve dd != 0")?;
            complexes += 1;
        }
    }
    Ok(format!("{} algebras, {complexes} complex compositions checked", corpus.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 8] = [
        ("1 figure fidelity", criterion_1, Duration::from_secs(1)),
        ("2 type C example end to end", criterion_2, Duration::from_secs(10)),
        ("3 rigidity of Phi_n", criterion_3, Duration::from_secs(60)),
        ("4 classification", criterion_4, Duration::from_secs(300)),
        ("5 tree posets and lower bound", criterion_5, Duration::from_secs(300)),
        ("6 binary spectra", criterion_6, Duration::from_secs(10)),
        ("7 cohomology cross-validation", criterion_7, Duration::from_secs(120)),
        ("8 property suites", criterion_8, Duration::from_secs(300)),
    ];
    let mut all = true;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let line = match result {
            Ok(msg) if took <= limit => format!("PASS criterion {name} ({took:.2?}): {msg}"),
            Ok(msg) => format!("FAIL criterion {name} ({took:.2?} > {limit:?}): {msg}"),
            Err(msg) => format!("FAIL criterion {name} ({took:.2?}): {msg}"),
        };
        all &= line.starts_with("PASS");
        println!("{line}");
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
