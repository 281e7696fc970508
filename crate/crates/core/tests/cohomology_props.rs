use lieposet_core::cohomology::{coboundary_matrix, cohomology_dim, verify_eq1};
use lieposet_core::exactla::{rank, Rat};
use lieposet_core::liealg::{LieAlg, Variant};
use lieposet_core::poset::{example_tree_poset, example_type_c_poset, Family, Poset};
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Dense structure constants `c[a][b][k]`.
fn structure(g: &LieAlg) -> Vec<Vec<Vec<Rat>>> {
    let n = g.dim();
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let mut v = vec![Rat::zero(); n];
                    for (&k, c) in g.basis_bracket(a, b) {
                        v[k] = c.clone();
                    }
                    v
                })
                .collect()
        })
        .collect()
}

/// Plain dense Gaussian elimination, independent of the library's sparse code.
fn dense_rank(mut rows: Vec<Vec<Rat>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rat::one() / &rows[r][c];
        let pivot: Vec<Rat> = rows[r].iter().map(|x| x * &inv).collect();
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for j in c..cols {
                if !pivot[j].is_zero() {
                    rows[i][j] -= &f * &pivot[j];
                }
            }
        }
        rows[r] = pivot;
        r += 1;
    }
    r
}

/// `dim H^2(g, g)` with cochains stored as full (not only alternating)
/// bilinear tensors. Z^2 is cut out by antisymmetry plus the cocycle
/// equation on triples; B^2 is the span of `dF` over a basis of `C^1`.
fn oracle_h2(g: &LieAlg) -> usize {
    let n = g.dim();
    let c = structure(g);
    let var = |x: usize, y: usize, t: usize| (x * n + y) * n + t;
    let nvars = n * n * n;
    let mut eqs: Vec<Vec<Rat>> = Vec::new();
    for x in 0..n {
        for y in x..n {
            for t in 0..n {
                let mut row = vec![Rat::zero(); nvars];
                row[var(x, y, t)] += Rat::one();
                row[var(y, x, t)] += Rat::one();
                eqs.push(row);
            }
        }
    }
    // [x,F(y,z)] - [y,F(x,z)] + [z,F(x,y)] - F([x,y],z) + F([x,z],y) - F([y,z],x)
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                for t in 0..n {
                    let mut row = vec![Rat::zero(); nvars];
                    for m in 0..n {
                        for (sign, a, p, q) in [(1, x, y, z), (-1, y, x, z), (1, z, x, y)] {
                            let k = &c[a][m][t];
                            if !k.is_zero() {
                                row[var(p, q, m)] += Rat::from_integer(sign.into()) * k;
                            }
                        }
                        for (sign, a, b, r) in [(-1, x, y, z), (1, x, z, y), (-1, y, z, x)] {
                            let k = &c[a][b][m];
                            if !k.is_zero() {
                                row[var(m, r, t)] += Rat::from_integer(sign.into()) * k;
                            }
                        }
                    }
                    if row.iter().any(|v| !v.is_zero()) {
                        eqs.push(row);
                    }
                }
            }
        }
    }
    let z2 = nvars - dense_rank(eqs);
    // dF(x, y) = [x, F(y)] - [y, F(x)] - F([x, y]) for F = (u -> x_v if u == w)
    let mut images = Vec::new();
    for w in 0..n {
        for v in 0..n {
            let mut img = vec![Rat::zero(); nvars];
            for x in 0..n {
                for y in 0..n {
                    for t in 0..n {
                        let mut val = Rat::zero();
                        if y == w {
                            val += &c[x][v][t];
                        }
                        if x == w {
                            val -= &c[y][v][t];
                        }
                        if t == v {
                            val -= &c[x][y][w];
                        }
                        img[var(x, y, t)] = val;
                    }
                }
            }
            images.push(img);
        }
    }
    z2 - dense_rank(images)
}

fn oracle_center_dim(g: &LieAlg) -> usize {
    let n = g.dim();
    let c = structure(g);
    let mut rows = Vec::new();
    for b in 0..n {
        for t in 0..n {
            rows.push((0..n).map(|x| c[x][b][t].clone()).collect());
        }
    }
    n - dense_rank(rows)
}

#[test]
fn eq1_golden_values_match_dense_oracle() {
    let corpus = [
        (Poset::chain(2).unwrap(), 1),
        (Poset::chain(3).unwrap(), 3),
        (Poset::chain(4).unwrap(), 6),
        (example_tree_poset(), 6),
    ];
    for (p, golden) in corpus {
        let g = LieAlg::build(&p, Variant::Gl).unwrap();
        let h2 = oracle_h2(&g);
        assert_eq!(h2, golden, "{p:?}");
        let center = oracle_center_dim(&g);
        // every corpus nerve is a cone, so only the center term survives
        let h = g.cartan_count();
        assert_eq!(h * (h - 1) / 2 * center, golden);
        let r = verify_eq1(&p, Variant::Gl).unwrap();
        assert_eq!((r.lhs, r.rhs), (golden, golden));
    }
}

#[test]
fn type_c_example_rigid_by_oracle() {
    let g = LieAlg::build(&example_type_c_poset(), Variant::Gl).unwrap();
    assert_eq!(oracle_h2(&g), 0);
    assert_eq!(cohomology_dim(&g, 2).unwrap().cohomology, 0);
}

#[test]
fn phi_rigidity_matches_oracle() {
    for n in 1..=3 {
        let g = LieAlg::phi(n).unwrap();
        assert_eq!(oracle_h2(&g), 0);
        assert_eq!(cohomology_dim(&g, 2).unwrap().cohomology, 0);
    }
}

fn small_family_a() -> impl Strategy<Value = Poset> {
    (1usize..=4).prop_flat_map(|n| {
        prop::collection::vec((1..=n as i32, 1..=n as i32), 0..6).prop_map(move |raw| {
            Poset::new(Family::A, 1..=n as i32, raw.into_iter().filter(|(a, b)| a < b)).unwrap()
        })
    })
}

fn small_algebra() -> impl Strategy<Value = LieAlg> {
    (small_family_a(), any::<bool>())
        .prop_filter_map("dimension within the guard", |(p, sl)| {
            let v = if sl { Variant::Sl } else { Variant::Gl };
            LieAlg::build(&p, v).ok().filter(|g| g.dim() <= 7 && g.dim() > 0)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn coboundary_squares_to_zero(g in small_algebra()) {
        for n in 0..g.dim().min(3) {
            let d0 = coboundary_matrix(&g, n).unwrap().matrix;
            let d1 = coboundary_matrix(&g, n + 1).unwrap().matrix;
            prop_assert!(d1.mul(&d0).unwrap().is_zero());
        }
    }

    #[test]
    fn h0_is_center(g in small_algebra()) {
        let h0 = cohomology_dim(&g, 0).unwrap();
        prop_assert_eq!(h0.cohomology, g.center().dim());
        prop_assert_eq!(rank(&coboundary_matrix(&g, 0).unwrap().matrix), g.dim() - g.center().dim());
    }

    #[test]
    fn cohomology_is_basis_order_independent(g in small_algebra(), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..g.dim()).collect();
        let mut s = seed;
        for i in (1..perm.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let h = g.permuted(&perm).unwrap();
        for n in 0..=2.min(g.dim()) {
            prop_assert_eq!(
                cohomology_dim(&g, n).unwrap().cohomology,
                cohomology_dim(&h, n).unwrap().cohomology
            );
        }
    }
}
