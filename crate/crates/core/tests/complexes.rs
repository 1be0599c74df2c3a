use std::collections::HashMap;

use num_traits::Zero;
use prop_homology_core::complexes::*;
use prop_homology_core::exactlin::{check_chain_map, homology, SparseMatrix};
use prop_homology_core::freealg::{left_normed, LiePoly, SymLiePoly, TensorLiePoly};
use prop_homology_core::rational::int;
use prop_homology_core::symgrp::{factorial, multinomial, ordered_set_partitions, Permutation};
use prop_homology_core::Rational;

const ZN_RANGE: [(usize, usize); 6] = [(1, 0), (1, 1), (2, 0), (1, 2), (2, 1), (3, 0)];

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn chevalley_betti_numbers() {
    let h = homology(&build_chevalley_wedge(1).unwrap()).unwrap();
    assert_eq!(h.complete_betti(), vec![(0, 1)]);
    for z in 2..=5 {
        let h = homology(&build_chevalley_wedge(z).unwrap()).unwrap();
        assert!(h.degrees.iter().all(|d| d.complete && d.betti == 0), "z={z}: {:?}", h.complete_betti());
    }
}

#[test]
fn chevalley_dims_are_stirling_sums() {
    // dim (∧^k L_z)_{[1,z]} = c(z, k), and Σ_k c(z, k) = z!
    for z in 1..=5 {
        let dims = build_chevalley_wedge(z).unwrap().dims();
        assert_eq!(dims.iter().sum::<usize>() as u128, factorial(z));
        assert_eq!(dims[0] as u128, factorial(z - 1));
        assert_eq!(dims[z - 1], 1);
    }
}

#[test]
fn assoc_wedge_matches_chevalley() {
    let h = homology(&build_assoc_wedge(1).unwrap()).unwrap();
    assert_eq!(h.complete_betti(), vec![(0, 1)]);
    for z in 1..=4 {
        let c = build_chevalley_wedge(z).unwrap();
        let a = build_assoc_wedge(z).unwrap();
        let iso = assoc_wedge_iso(z).unwrap();
        assert!(iso.iter().all(|m| m.rows() == m.cols() && m.rank() == m.rows()));
        assert!(check_chain_map(&iso, &c, &a).unwrap(), "z={z}");
        assert_eq!(homology(&c).unwrap().degrees, homology(&a).unwrap().degrees);
    }
}

#[test]
fn koszul_positive_degrees_vanish() {
    for n in 1..=5 {
        let w = build_koszul_multilinear(n).unwrap();
        let dims = w.dims();
        for (k, &d) in dims.iter().enumerate() {
            assert_eq!(d, binomial(n, k));
        }
        let h = homology(&w).unwrap();
        assert!(h.degrees.iter().filter(|d| d.p > 0).all(|d| d.betti == 0), "n={n}");
    }
    let euler: i64 = build_koszul_multilinear(3)
        .unwrap()
        .dims()
        .iter()
        .enumerate()
        .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
        .sum();
    assert_eq!(euler, 0);
}

fn lambda_closed_form(eps: u8, epsp: u8, p: usize) -> Rational {
    let odd = i64::from(p % 2 == 1);
    let alt = if p % 2 == 0 { 1 } else { -1 };
    int(odd - i64::from(eps) + i64::from(epsp) * alt)
}

#[test]
fn elementary_windows_to_ten() {
    for (e, f) in [(0u8, 1u8), (1, 0), (0, 0), (1, 1)] {
        let s = build_elementary(e, f, 9).unwrap();
        for (p, l) in s.lambdas.iter().enumerate() {
            assert_eq!(*l, lambda_closed_form(e, f, p), "({e},{f}) λ_{p}");
        }
        assert!(s.squares_to_zero());
        let h = homology(&s.window(10).unwrap()).unwrap();
        let betti: Vec<usize> = h.complete_degrees().map(|d| d.betti).collect();
        assert_eq!(betti.len(), 10);
        if e == f {
            assert_eq!(betti[0], 1);
            assert!(betti[1..].iter().all(|&b| b == 0));
        } else {
            assert!(betti.iter().all(|&b| b == 0));
        }
    }
}

#[test]
fn elementary_scalars_match_orbit_coordinates() {
    // E^p_{ε,ε'} is the σ-block of A_{1,0}-type words in x's only; compare
    // λ_p with the orbit-basis construction of A_σ for (z, N) = (1, 0)
    let a = build_a(1, 0, PWindow::upto(5)).unwrap();
    let s = build_elementary(0, 1, 4).unwrap();
    for p in 0..5 {
        assert_eq!(a.maps[p], SparseMatrix::from_triplets(1, 1, [(0, 0, s.lambdas[p].clone())]).unwrap());
    }
}

#[test]
fn graded_formulas() {
    let g01 = build_poisson_graded(0, 1, 7).unwrap();
    let g10 = build_poisson_graded(1, 0, 7).unwrap();
    let g00 = build_poisson_graded(0, 0, 7).unwrap();
    let g11 = build_poisson_graded(1, 1, 7).unwrap();
    for m in 0..=3 {
        assert_eq!(g01.scalars[2 * m], int(1), "gr d_01 p_{}", 2 * m);
        assert_eq!(g01.pair_scalars[2 * m], int(1));
        assert_eq!(g10.scalars[2 * m], int(-1));
    }
    for u in 1..=3usize {
        assert_eq!(g00.pair_scalars[2 * u - 1], int(u as i64), "u={u}");
        assert_eq!(g11.pair_scalars[2 * u - 1], int(-(u as i64)), "u={u}");
        // with the shuffle normalization p_{2u} carries an extra factor u
        assert_eq!(g00.scalars[2 * u - 1], int(1), "u={u}");
        assert_eq!(g11.scalars[2 * u - 1], int(-1), "u={u}");
    }
}

#[test]
fn pair_counted_p4_by_enumeration() {
    // the three pair partitions of {1,2,3,4}
    let mut p4 = sym_pair_product(&[[1, 2], [3, 4]]);
    p4.add_scaled(&sym_pair_product(&[[1, 3], [2, 4]]), &int(-1)).unwrap();
    p4.add_scaled(&sym_pair_product(&[[1, 4], [2, 3]]), &int(1)).unwrap();
    assert_eq!(p_element_pairs(4).unwrap(), p4);
    let d = gr_differential(&p_element_pairs(3).unwrap(), 0, 0, 3).unwrap();
    assert_eq!(d, p4.scale(&int(2)));
}

fn sym_pair_product(pairs: &[[u32; 2]]) -> SymLiePoly {
    let factors: Vec<LiePoly> = pairs.iter().map(|&[a, b]| left_normed(&[a, b])).collect();
    SymLiePoly::product_of(&factors).unwrap()
}

#[test]
fn graded_pair_term_on_p3_by_hand() {
    // p_3 = x1{x2,x3} - x2{x1,x3} + x3{x1,x2}; the x{{,},} terms of
    // gr d_{0,0}(p_3) cancel by Jacobi, and the {,}{,} terms give
    // 2{12}{34} - 2{13}{24} + 2{14}{23}, which is also p_4
    let mut p4 = sym_pair_product(&[[1, 2], [3, 4]]).scale(&int(2));
    p4.add_scaled(&sym_pair_product(&[[1, 3], [2, 4]]), &int(-2)).unwrap();
    p4.add_scaled(&sym_pair_product(&[[1, 4], [2, 3]]), &int(2)).unwrap();
    assert_eq!(p_element(4).unwrap(), p4);
    let d = gr_differential(&p_element(3).unwrap(), 0, 0, 3).unwrap();
    assert_eq!(d, p4);
}

#[test]
fn grading_support_lemma() {
    for n in 0..=7 {
        let m = sign_multiplicities(n).unwrap();
        for (u, k) in &m {
            assert_eq!(*k, u64::from(*u == n.div_ceil(2)), "n={n} u={u}");
        }
    }
    assert!(build_poisson_graded(0, 0, 7).unwrap().grading_lemma_holds());
}

#[test]
fn pbw_filtration() {
    for (e, f) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        let r = pbw_filtration_check(e, f, 6).unwrap();
        assert_eq!(r.degrees.len(), 6);
        for d in &r.degrees {
            assert!(d.filtration_ok && d.symbol_ok, "({e},{f}) p={}: {d:?}", d.p);
            assert_eq!(d.u, Some(d.p.div_ceil(2)));
        }
    }
}

#[test]
fn a_and_c_are_acyclic_and_dynkin_isomorphic() {
    for (z, n) in ZN_RANGE {
        let w = PWindow::upto(4);
        let a = build_a(z, n, w).unwrap();
        let c = build_c(z, n, 1, w).unwrap();
        let ha = homology(&a).unwrap();
        let hc = homology(&c).unwrap();
        assert!(ha.is_acyclic() && hc.is_acyclic(), "(z,N)=({z},{n})");
        assert_eq!(ha.complete_betti(), hc.complete_betti());
        let r = dynkin_compare(z, n, w).unwrap();
        assert!(r.holds(), "(z,N)=({z},{n}): {r:?}");
    }
}

#[test]
fn dynkin_examples() {
    assert!(dynkin_compare(1, 0, PWindow::upto(2)).unwrap().holds());
    assert!(dynkin_compare(1, 1, PWindow::upto(3)).unwrap().holds());
    assert!(dynkin_compare(2, 1, PWindow::upto(2)).unwrap().holds());
}

#[test]
fn sigma_decomposition_and_factorization() {
    for (z, n) in ZN_RANGE {
        let w = PWindow::upto(4);
        let total = build_a(z, n, w).unwrap().dims();
        let parts = sigma_split(z, n, w).unwrap();
        assert_eq!(parts.len() as u128, factorial(z + n - 1));
        let mut sum = vec![0; total.len()];
        for (s, part) in &parts {
            part.check_complex().unwrap();
            for (p, d) in part.dims().into_iter().enumerate() {
                assert_eq!(d, binomial(p + z + n - 1, z + n - 1), "stars and bars");
                sum[p] += d;
            }
            let eps = epsilon_sequence(s, z, n).unwrap();
            assert!(eps.zero_one_pair().is_some());
            assert!(verify_a_sigma_factorization(z, n, s, w).unwrap(), "(z,N)=({z},{n}) σ={s}");
        }
        assert_eq!(sum, total);
    }
}

#[test]
fn epsilon_invariants() {
    for (z, n) in ZN_RANGE {
        for s in sigma_orders(z, n) {
            let bits = epsilon_sequence(&s, z, n).unwrap().bits().to_vec();
            assert_eq!(bits.len(), z + n + 1);
            assert_eq!(bits[0], 0);
            assert_eq!(*bits.last().unwrap(), 1);
            assert_eq!(bits[1..z + n].iter().filter(|&&b| b == 1).count(), z - 1);
        }
    }
}

#[test]
fn kunneth_for_q_two() {
    for (z, n, q) in [(1, 0, 2), (1, 1, 2), (2, 1, 2)] {
        let r = verify_kunneth_c(z, n, q, PWindow::upto(2)).unwrap();
        assert!(r.holds(), "({z},{n},{q}): {r:?}");
    }
}

#[test]
fn built_dims_match_predictions() {
    for (z, n) in ZN_RANGE {
        let a = build_a(z, n, PWindow::upto(4)).unwrap().dims();
        let c = build_c(z, n, 1, PWindow::upto(4)).unwrap().dims();
        for p in 0..=4 {
            assert_eq!(a[p] as u128, dim_predict("A_degree", &[z, n, p]).unwrap());
            assert_eq!(c[p] as u128, dim_predict("C_degree", &[z, n, 1, p]).unwrap());
        }
    }
    for (z, n) in [(1, 0), (1, 1), (2, 1)] {
        let c = build_c(z, n, 2, PWindow::upto(2)).unwrap().dims();
        for (p, &d) in c.iter().enumerate() {
            assert_eq!(d as u128, dim_predict("C_degree", &[z, n, 2, p]).unwrap(), "({z},{n},2) p={p}");
        }
    }
}

/// Rank of a set of vectors given as sparse maps over arbitrary keys.
fn span_dim<K: std::hash::Hash + Eq + Clone>(vectors: Vec<Vec<(K, Rational)>>) -> usize {
    let mut index: HashMap<K, usize> = HashMap::new();
    let mut columns = Vec::new();
    for v in vectors {
        let mut col: Vec<(usize, Rational)> = v
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let next = index.len();
                (*index.entry(k).or_insert(next), c)
            })
            .collect();
        col.sort_by_key(|(i, _)| *i);
        columns.push(col);
    }
    SparseMatrix::from_columns(index.len(), columns).unwrap().rank()
}

#[test]
fn lie_dimension_by_spanning_brackets() {
    for z in 1..=6usize {
        let letters: Vec<u32> = (1..=z as u32).collect();
        let vectors = Permutation::all(z)
            .iter()
            .map(|s| {
                let order: Vec<u32> = s.one_line().iter().map(|&i| letters[i - 1]).collect();
                left_normed(&order).expand().terms().iter().map(|(w, c)| (w.clone(), c.clone())).collect()
            })
            .collect();
        assert_eq!(span_dim(vectors) as u128, dim_predict("lie_multilinear", &[z]).unwrap(), "z={z}");
    }
    for z in 1..=7 {
        let basis = build_chevalley_wedge(z).unwrap().dims()[0];
        assert_eq!(basis as u128, dim_predict("lie_multilinear", &[z]).unwrap());
    }
}

#[test]
fn tensor_power_dimension_by_spanning() {
    for z in 1..=5usize {
        let letters: Vec<u32> = (1..=z as u32).collect();
        for m in 1..=3 {
            let mut vectors = Vec::new();
            for part in ordered_set_partitions(&letters, m, false) {
                let orders: Vec<Vec<Vec<u32>>> = part
                    .blocks()
                    .iter()
                    .map(|b| Permutation::all(b.len()).iter().map(|s| s.one_line().iter().map(|&i| b[i - 1]).collect()).collect())
                    .collect();
                let mut acc: Vec<Vec<LiePoly>> = vec![Vec::new()];
                for os in &orders {
                    acc = acc
                        .into_iter()
                        .flat_map(|t| {
                            os.iter().map(move |o| {
                                let mut t = t.clone();
                                t.push(left_normed(o));
                                t
                            })
                        })
                        .collect();
                }
                for factors in acc {
                    let t = TensorLiePoly::tensor(&factors).unwrap();
                    vectors.push(t.terms().iter().map(|(k, c)| (k.clone(), c.clone())).collect());
                }
            }
            let predicted = dim_predict("la_Tz_Tm", &[z, m]).unwrap();
            assert_eq!(span_dim(vectors) as u128, predicted, "z={z} m={m}");
        }
    }
    assert_eq!(dim_predict("la_Tz_Tm", &[6, 1]).unwrap(), 120);
}

#[test]
fn c_degree_q_two_by_direct_sum() {
    // independent count: distribute a's with multinomials, q = 1 factors
    let one = |n: usize, p: usize| dim_predict("C_degree", &[n, 0, 1, p]).unwrap();
    let (z, n, p) = (2usize, 1usize, 2usize);
    let mut total = 0u128;
    for i in 0..=z {
        for j in 0..=n {
            for p1 in 0..=p {
                let w = multinomial(&[i, z - i]) * multinomial(&[j, n - j]);
                total += w * one(i + j, p1) * one(z - i + n - j, p - p1);
            }
        }
    }
    assert_eq!(dim_predict("C_degree", &[z, n, 2, p]).unwrap(), total);
}

#[test]
fn small_case_examples() {
    assert_eq!(build_c(1, 0, 1, PWindow::upto(0)).unwrap().dims(), vec![1]);
    assert_eq!(build_a(1, 1, PWindow::new(1, 1).unwrap()).unwrap().dims(), vec![2]);
    build_c(2, 1, 1, PWindow::upto(3)).unwrap().check_complex().unwrap();
    let parts = sigma_split(1, 1, PWindow::upto(3)).unwrap();
    assert_eq!(parts.len(), 1);
    assert_eq!(parts.values().next().unwrap().dims(), vec![1, 2, 3, 4]);
    assert!(verify_a_sigma_factorization(1, 1, &Permutation::identity(1), PWindow::upto(3)).unwrap());
    let r = verify_kunneth_c(1, 0, 2, PWindow::upto(2)).unwrap();
    assert_eq!(r.lhs_dims, r.rhs_dims);
}

#[test]
fn window_edges_are_flagged() {
    let h = homology(&build_a(1, 1, PWindow::new(1, 3).unwrap()).unwrap()).unwrap();
    assert!(!h.degrees[0].complete);
    assert!(h.degrees[1].complete);
    assert!(!h.degrees[2].complete);
}

#[test]
fn tensor_with_acyclic_factor_is_acyclic() {
    let e = build_elementary(0, 1, 3).unwrap().window(4).unwrap();
    let f = build_elementary(0, 0, 3).unwrap().window(4).unwrap();
    let t = tensor_complexes(&[e, f]).unwrap().truncate(0, 4);
    let h = homology(&t).unwrap();
    assert!(h.is_acyclic());
    assert_eq!(t.dims(), vec![1, 2, 3, 4, 5]);
}

#[test]
fn generic_differential_is_a_differential_on_tensors() {
    // d∘d = 0 on a single non-antiinvariant tensor, through substitution only
    let f = TensorLiePoly::tensor(&[LiePoly::generator(1), left_normed(&[2, 3])]).unwrap();
    let d1 = c_differential_generic(&f, 1, 0, 2).unwrap();
    let d2 = c_differential_generic(&d1, 1, 0, 3).unwrap();
    assert!(!d1.is_zero());
    assert!(d2.is_zero(), "{} terms survive", d2.len());
}
