//! Cross-module invariants on randomized inputs: determinant agreement,
//! series identities, quotient structure, splitting partitions, and
//! L-function functoriality.

mod common;

use common::{random_edge_free_action, random_gog, rng};
use ihara::covering::Covering;
use ihara::gog::GraphOfGroups;
use ihara::graph::{Graph, HalfEdgePath};
use ihara::lfunction::{l_euler_verify, l_function_three_term, l_function_two_term, Representation};
use ihara::matrix::{det_complex, det_int, traces_up_to, Mat};
use ihara::poly::{
    divides, euler_product_truncation, series_reciprocal, ComplexPoly, IntPoly, EPS_DET,
};
use ihara::zeta::{zeta_gog_three_term, zeta_gog_two_term, zeta_graph};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::Rng;

fn int_poly_strategy(max_degree: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-bound..=bound, 0..=max_degree + 1).prop_map(|v| IntPoly::from_i64(&v))
}

proptest! {
    /// Exact and floating determinants agree on random 6x6 matrices with
    /// degree <= 2 entries and coefficients in [-3, 3].
    #[test]
    fn determinants_agree(seed in prop::collection::vec(-3i64..=3, 6 * 6 * 3)) {
        let entries: Vec<IntPoly> = seed
            .chunks(3)
            .map(IntPoly::from_i64)
            .collect();
        let m = Mat::new(6, 6, entries);
        let exact = det_int(&m).unwrap();
        let float = det_complex(&m.map(|e| ComplexPoly::from(e))).unwrap();
        prop_assert!(
            float.approx_eq(&ComplexPoly::from(&exact), EPS_DET),
            "exact {exact} vs float {float}"
        );
    }

    /// Block-triangular determinants factor through the diagonal blocks.
    #[test]
    fn block_triangular_det(
        a in prop::collection::vec(-3i64..=3, 2 * 2 * 2),
        b in prop::collection::vec(-3i64..=3, 3 * 3 * 2),
        c in prop::collection::vec(-3i64..=3, 2 * 3 * 2),
    ) {
        let block = |v: &[i64], rows: usize, cols: usize| {
            Mat::new(rows, cols, v.chunks(2).map(IntPoly::from_i64).collect())
        };
        let upper_left = block(&a, 2, 2);
        let lower_right = block(&b, 3, 3);
        let upper_right = block(&c, 2, 3);
        let combined = Mat::from_fn(5, 5, |i, j| {
            if i < 2 && j < 2 {
                upper_left.at(i, j).clone()
            } else if i >= 2 && j >= 2 {
                lower_right.at(i - 2, j - 2).clone()
            } else if i < 2 {
                upper_right.at(i, j - 2).clone()
            } else {
                IntPoly::zero()
            }
        });
        let expect = det_int(&upper_left).unwrap().mul(&det_int(&lower_right).unwrap());
        prop_assert_eq!(det_int(&combined).unwrap(), expect);
    }

    /// The reciprocal series convolved with the polynomial is 1.
    #[test]
    fn series_reciprocal_inverts(p in int_poly_strategy(6, 5), order in 0usize..10) {
        prop_assume!(!p.coeff(0).is_zero());
        let s = series_reciprocal(&p, order).unwrap();
        for n in 0..=order {
            let mut acc = BigRational::zero();
            for i in 0..=n {
                acc += BigRational::from_integer(p.coeff(i)) * &s[n - i];
            }
            let expect = if n == 0 {
                BigRational::from_integer(BigInt::one())
            } else {
                BigRational::zero()
            };
            prop_assert_eq!(acc, expect);
        }
    }

    /// A successful division re-multiplies exactly; products always divide.
    #[test]
    fn divides_round_trip(a in int_poly_strategy(4, 6), q in int_poly_strategy(4, 6)) {
        prop_assume!(!a.is_zero());
        let b = a.mul(&q);
        let recovered = divides(&a, &b).unwrap().expect("a*q is divisible by a");
        prop_assert_eq!(&recovered, &q);
        prop_assert_eq!(a.mul(&recovered), b);
    }

    /// Display/parse round trip for the polynomial text form.
    #[test]
    fn poly_text_round_trip(p in int_poly_strategy(8, 100)) {
        let shown = p.to_string();
        prop_assert_eq!(ihara::poly::parse_int_poly(&shown).unwrap(), p);
    }

    /// Euler products over explicit length lists match the counted form.
    #[test]
    fn euler_product_empty_is_one(order in 0usize..8) {
        let series = euler_product_truncation(&[], order);
        prop_assert_eq!(series[0].clone(), BigRational::from_integer(BigInt::one()));
        for c in &series[1..] {
            prop_assert!(c.is_zero());
        }
    }
}

#[test]
fn k4_euler_product_from_enumerated_prime_multiset() {
    // The multiset route: feed the explicit lengths of all enumerated K4
    // primes through u^10 into the product and compare with the reciprocal
    // series of the determinant formula.
    let k4 = Graph::complete(4);
    let lengths: Vec<usize> = k4
        .enumerate_primes(10, false)
        .unwrap()
        .iter()
        .map(|p| p.length())
        .collect();
    let product = euler_product_truncation(&lengths, 10);
    let series = series_reciprocal(&zeta_graph(&k4).unwrap(), 10).unwrap();
    assert_eq!(product, series);
}

#[test]
fn quotient_legs_decompose_into_leg_and_flip_orbits() {
    // Legs of the quotient arise from leg orbits of the cover plus orbits of
    // flipped edges; edges of the quotient account for the rest.
    let mut r = rng(0x1e95);
    for _ in 0..10 {
        let action = random_edge_free_action(&mut r);
        let y = action.graph();
        let q = action.quotient_graph().unwrap();
        let mut seen = std::collections::BTreeSet::new();
        let (mut leg_orbits, mut flip_orbits) = (0usize, 0usize);
        for h in 0..y.half_edge_count() {
            if !seen.insert(q.hproj[h]) {
                continue;
            }
            if q.quotient.is_leg(q.hproj[h]) {
                if y.is_leg(h) {
                    leg_orbits += 1;
                } else {
                    flip_orbits += 1;
                }
            }
        }
        assert_eq!(q.quotient.leg_count(), leg_orbits + flip_orbits);
        assert_eq!(q.quotient.half_edge_count(), seen.len());
    }
}

/// A random unimodular matrix with exact integer inverse, as a product of
/// elementary row operations.
fn random_unimodular(
    r: &mut rand_chacha::ChaCha8Rng,
    dim: usize,
) -> (Mat<num_complex::Complex64>, Mat<num_complex::Complex64>) {
    use num_complex::Complex64;
    let mut m = vec![vec![0i64; dim]; dim];
    let mut inv = vec![vec![0i64; dim]; dim];
    for i in 0..dim {
        m[i][i] = 1;
        inv[i][i] = 1;
    }
    for _ in 0..6 {
        let i = r.random_range(0..dim);
        let mut j = r.random_range(0..dim);
        if i == j {
            j = (j + 1) % dim;
        }
        let c = r.random_range(-2i64..=2);
        // m += c * E_ij; inverse gets -c on the other side.
        for t in 0..dim {
            m[i][t] += c * m[j][t];
        }
        for t in 0..dim {
            inv[t][j] -= c * inv[t][i];
        }
    }
    let to_mat = |v: &Vec<Vec<i64>>| {
        Mat::from_fn(dim, dim, |i, j| Complex64::new(v[i][j] as f64, 0.0))
    };
    (to_mat(&m), to_mat(&inv))
}

#[test]
fn conjugated_representations_share_l_functions() {
    let mut r = rng(0xc0417);
    let cov = {
        let k4 = Graph::complete(4);
        let perm =
            ihara::action::parse_vertex_cycles(k4.vertex_labels(), "(234)").unwrap();
        let auto = ihara::action::Automorphism::from_vertex_perm(&k4, perm).unwrap();
        let action = ihara::action::GroupAction::generate(k4, vec![auto], 8).unwrap();
        Covering::new(action, 0, 0).unwrap()
    };
    let regular = Representation::regular(cov.action());
    let reference = l_function_two_term(&cov, &regular).unwrap().require_integer().unwrap();
    for _ in 0..5 {
        let (m, m_inv) = random_unimodular(&mut r, regular.dim());
        let conj = regular.conjugated(&m, &m_inv, cov.action()).unwrap();
        let l = l_function_two_term(&cov, &conj).unwrap().require_integer().unwrap();
        assert_eq!(l, reference);
    }
}

#[test]
fn two_term_equals_three_term_on_random_gogs() {
    let mut r = rng(0xa11ce);
    for i in 0..60 {
        let x = random_gog(&mut r);
        assert_eq!(
            zeta_gog_two_term(&x),
            zeta_gog_three_term(&x),
            "gog {i}: {:?} charges {:?}",
            x.graph(),
            x.charges()
        );
    }
}

#[test]
fn euler_product_matches_series_on_random_gogs() {
    let mut r = rng(0xbeef);
    for _ in 0..25 {
        let x = random_gog(&mut r);
        let report = ihara::zeta::verify_euler(&x, 8, false).unwrap();
        assert!(report.ok, "{:?}", report.first_mismatch);
    }
}

#[test]
fn closed_counts_equal_traces_on_random_gogs() {
    let mut r = rng(0xcafe);
    for _ in 0..25 {
        let x = random_gog(&mut r);
        let traces = traces_up_to(&x.half_edge_matrix(), 8).unwrap();
        for n in 1..=8 {
            assert_eq!(x.closed_reduced_count(n, false).unwrap(), traces[n - 1]);
        }
    }
}

#[test]
fn enumerated_primes_decompose_closed_counts() {
    let mut r = rng(0xdead);
    for _ in 0..15 {
        let x = random_gog(&mut r);
        let primes = x.enumerate_primes(7, false).unwrap();
        for n in 1..=7usize {
            let from_primes: BigInt = primes
                .iter()
                .filter(|p| n % p.length() == 0)
                .map(|p| BigInt::from(p.length()))
                .sum();
            assert_eq!(x.closed_reduced_count(n, false).unwrap(), from_primes);
        }
    }
}

#[test]
fn quotient_structure_on_random_actions() {
    let mut r = rng(0x5eed);
    for _ in 0..12 {
        let action = random_edge_free_action(&mut r);
        let d = action.order();
        let q = action.quotient_graph().unwrap();
        // Orbit-stabilizer on vertices.
        for v in 0..action.graph().vertex_count() {
            assert_eq!(
                action.orbit_of_vertex(v).len() * action.stabilizer(v).len(),
                d
            );
        }
        // Half-edge orbits all have full size (edge-freeness) and project
        // equivariantly.
        for h in 0..action.graph().half_edge_count() {
            assert_eq!(action.orbit_of_half_edge(h).len(), d);
            for el in 0..d {
                assert_eq!(q.hproj[action.apply_half_edge(el, h)], q.hproj[h]);
            }
        }
        assert_eq!(
            q.quotient.half_edge_count() * d,
            action.graph().half_edge_count()
        );
    }
}

#[test]
fn splitting_partitions_random_covers() {
    let mut r = rng(0xf00d);
    for _ in 0..8 {
        let action = random_edge_free_action(&mut r);
        let cov = Covering::new(action, 0, 0).unwrap();
        let y = cov.cover_graph();
        let max = 6;
        let rows = cov.full_splitting_table(max, false).unwrap();
        for row in &rows {
            assert_eq!(
                row.residual_degree * row.num_primes_above,
                cov.action().order(),
                "f * g = d"
            );
            assert_eq!(
                row.residual_degree,
                cov.action().order_of(row.frobenius_element)
            );
            for p in &row.primes_above {
                assert_eq!(p.length(), row.residual_degree * row.base.length());
            }
        }
        let mut covered: Vec<_> = rows
            .iter()
            .filter(|row| row.residual_degree * row.base.length() <= max)
            .flat_map(|row| row.primes_above.iter().cloned())
            .collect();
        let total = covered.len();
        covered.sort();
        covered.dedup();
        assert_eq!(total, covered.len());
        assert_eq!(covered, y.enumerate_primes(max, false).unwrap());
    }
}

#[test]
fn image_round_trip_on_random_covers() {
    let mut r = rng(0xfeed);
    for _ in 0..6 {
        let action = random_edge_free_action(&mut r);
        let cov = Covering::new(action, 0, 0).unwrap();
        let y = cov.cover_graph().clone();
        // Random closed walks (not necessarily reduced) of length <= 6.
        let mut walks = 0;
        'outer: for start in 0..y.half_edge_count() {
            let mut path = vec![start];
            for _ in 0..5 {
                let succ = y.successors(*path.last().unwrap());
                path.push(succ[r.random_range(0..succ.len())]);
                let hp = HalfEdgePath::new(path.clone());
                if y.is_closed(&hp) {
                    let image = cov.image_of_closed_path(&hp).unwrap();
                    assert_eq!(cov.frobenius_of_path(&image).unwrap(), 0);
                    let back = cov
                        .lift_path(
                            &image,
                            cov.sheet_number(y.involution(*hp.half_edges.last().unwrap())),
                        )
                        .unwrap();
                    assert_eq!(back, hp);
                    assert_eq!(
                        y.is_cyclically_reduced(&hp),
                        cov.quotient().is_cyclically_reduced(&image)
                    );
                    walks += 1;
                    if walks > 40 {
                        break 'outer;
                    }
                }
            }
        }
        assert!(walks > 0);
    }
}

#[test]
fn l_functions_agree_across_formulas_on_random_covers() {
    let mut r = rng(0xcede);
    for _ in 0..8 {
        let action = random_edge_free_action(&mut r);
        let cov = Covering::new(action, 0, 0).unwrap();
        for rho in [
            Representation::trivial(cov.action()),
            Representation::regular(cov.action()),
        ] {
            let two = l_function_two_term(&cov, &rho).unwrap();
            let three = l_function_three_term(&cov, &rho).unwrap();
            assert!(
                two.complex.approx_eq(&three.complex, EPS_DET),
                "rep {} on group of order {}",
                rho.name(),
                cov.action().order()
            );
        }
    }
}

#[test]
fn l_euler_products_on_random_covers() {
    let mut r = rng(0xabba);
    for _ in 0..5 {
        let action = random_edge_free_action(&mut r);
        let cov = Covering::new(action, 0, 0).unwrap();
        for rho in [
            Representation::trivial(cov.action()),
            Representation::regular(cov.action()),
        ] {
            let report = l_euler_verify(&cov, &rho, 5, false).unwrap();
            assert!(report.ok, "deviation {}", report.max_deviation);
        }
    }
}

#[test]
fn seed_invariance_on_random_covers() {
    let mut r = rng(0x5eed5);
    for _ in 0..5 {
        let action = random_edge_free_action(&mut r);
        let n_x = action.quotient_graph().unwrap().quotient.vertex_count();
        let reference = Covering::new(action.clone(), 0, 0).unwrap();
        let zeta_ref = zeta_gog_two_term(reference.quotient());
        let l_ref = l_function_two_term(&reference, &Representation::regular(reference.action()))
            .unwrap()
            .require_integer()
            .unwrap();
        for (tree_seed, choice_seed) in [(1usize, 3u64), (2, 11), (3, 29)] {
            let cov = Covering::new(action.clone(), tree_seed % n_x, choice_seed).unwrap();
            assert_eq!(zeta_gog_two_term(cov.quotient()), zeta_ref);
            let l = l_function_two_term(&cov, &Representation::regular(cov.action()))
                .unwrap()
                .require_integer()
                .unwrap();
            assert_eq!(l, l_ref);
        }
    }
}

#[test]
fn factorization_over_abelian_k4_subgroup_characters() {
    use ihara::lfunction::factorization_check;
    use ihara::matrix::Mat;
    use num_complex::Complex64;

    let scalar_rep = |cov: &Covering, name: &str, values: &[(&str, Complex64)]| {
        let generators: Vec<(usize, Mat<Complex64>)> = values
            .iter()
            .map(|(el_name, z)| {
                let el = (0..cov.action().order())
                    .find(|&el| cov.action().element_name(el) == *el_name)
                    .unwrap_or_else(|| panic!("no element {el_name}"));
                (el, Mat::new(1, 1, vec![*z]))
            })
            .collect();
        Representation::from_generator_matrices(cov.action(), &generators, name).unwrap()
    };
    let one = Complex64::new(1.0, 0.0);
    let minus = Complex64::new(-1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);

    // C22 = <(12)(34)>: trivial and sign characters.
    let cov = Covering::new(common::k4_action(&["(12)(34)"]), 0, 0).unwrap();
    let irreps = vec![
        Representation::trivial(cov.action()),
        scalar_rep(&cov, "sign", &[("(12)(34)", minus)]),
    ];
    assert!(factorization_check(&cov, &irreps).unwrap().all_ok());

    // V4: the four characters of the Klein group.
    let cov = Covering::new(common::k4_action(&["(12)(34)", "(13)(24)"]), 0, 0).unwrap();
    let irreps = vec![
        Representation::trivial(cov.action()),
        scalar_rep(&cov, "x1", &[("(12)(34)", one), ("(13)(24)", minus)]),
        scalar_rep(&cov, "x2", &[("(12)(34)", minus), ("(13)(24)", one)]),
        scalar_rep(&cov, "x3", &[("(12)(34)", minus), ("(13)(24)", minus)]),
    ];
    assert!(factorization_check(&cov, &irreps).unwrap().all_ok());

    // C4 = <(1234)>: the four powers of i.
    let cov = Covering::new(common::k4_action(&["(1234)"]), 0, 0).unwrap();
    let irreps = vec![
        Representation::trivial(cov.action()),
        scalar_rep(&cov, "i", &[("(1234)", i)]),
        scalar_rep(&cov, "-1", &[("(1234)", minus)]),
        scalar_rep(&cov, "-i", &[("(1234)", -i)]),
    ];
    assert!(factorization_check(&cov, &irreps).unwrap().all_ok());
}

#[test]
fn zeta_of_cover_equals_regular_l_on_random_covers() {
    let mut r = rng(0x700);
    for _ in 0..6 {
        let action = random_edge_free_action(&mut r);
        let cov = Covering::new(action, 0, 0).unwrap();
        let zeta_y = if cov.cover_graph().leg_count() == 0 {
            zeta_graph(cov.cover_graph()).unwrap()
        } else {
            zeta_gog_two_term(&GraphOfGroups::from_graph(cov.cover_graph().clone()))
        };
        let l = l_function_two_term(&cov, &Representation::regular(cov.action()))
            .unwrap()
            .require_integer()
            .unwrap();
        assert_eq!(l, zeta_y);
        let zeta_x = zeta_gog_two_term(cov.quotient());
        assert!(divides(&zeta_x, &zeta_y).unwrap().is_some());
    }
}
