use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use quiversat::cone::{self, cone_description, ConeDecision};
use quiversat::linalg::{IntMatrix, Matrix};
use quiversat::lr::{try_lr_positive, Partition};
use quiversat::oracle::{brute_is_sub, grassmannian_nonempty, lr_coefficient, FieldRepresentation, FiniteField};
use quiversat::rng::SplitMix64;
use quiversat::schofield::boxed_vectors;
use quiversat::semiinv::{delta_system, random_representation, semi_invariance_check, GroupElement};
use quiversat::{DimVector, Quiver, SchofieldSession, Weight};

/// Acyclic quiver on `k` vertices: arrows `i -> j` for `i < j` in a hidden
/// order, vertices declared in a shuffled order.
fn quiver_strategy(max_vertices: usize, max_mult: usize) -> impl Strategy<Value = Quiver> {
    (1..=max_vertices).prop_flat_map(move |k| {
        let pairs = k * (k - 1) / 2;
        (
            proptest::collection::vec(0..=max_mult, pairs),
            Just((0..k).collect::<Vec<usize>>()).prop_shuffle(),
        )
            .prop_map(move |(mults, perm)| {
                let names: Vec<String> = (0..k).map(|i| format!("v{i}")).collect();
                let mut arrows = Vec::new();
                let mut idx = 0;
                for i in 0..k {
                    for j in i + 1..k {
                        for _ in 0..mults[idx] {
                            arrows.push((perm[i], perm[j]));
                        }
                        idx += 1;
                    }
                }
                Quiver::from_indices(names, arrows).unwrap()
            })
    })
}

fn vec_for(q: &Quiver, lo: i64, hi: i64) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(lo..=hi, q.vertex_count())
}

fn dim(v: &[i64]) -> DimVector {
    DimVector::new(v.to_vec()).unwrap()
}

fn dfs_paths(q: &Quiver, from: usize, to: usize) -> i64 {
    if from == to {
        return 1;
    }
    q.arrows().iter().filter(|a| a.0 == from).map(|a| dfs_paths(q, a.1, to)).sum()
}

/// Top-down memoised recursion, independent of the library's table.
fn naive_sub(q: &Quiver, alpha: &[i64], n: &[i64], memo: &mut HashMap<(Vec<i64>, Vec<i64>), bool>) -> bool {
    if alpha.iter().zip(n).any(|(a, b)| a > b) {
        return false;
    }
    if alpha.iter().all(|&a| a == 0) || alpha == n {
        return true;
    }
    let key = (alpha.to_vec(), n.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let beta: Vec<i64> = n.iter().zip(alpha).map(|(a, b)| a - b).collect();
    let mut ok = true;
    for gamma in boxed_vectors(q, alpha) {
        if naive_sub(q, &gamma, alpha, memo) && q.euler_form(&gamma, &beta).unwrap() < 0 {
            ok = false;
            break;
        }
    }
    memo.insert(key, ok);
    ok
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn euler_is_bilinear_and_dual(
        (q, a, a2, b) in quiver_strategy(5, 2).prop_flat_map(|q| {
            let (x, y, z) = (vec_for(&q, -4, 4), vec_for(&q, -4, 4), vec_for(&q, -4, 4));
            (Just(q), x, y, z)
        })
    ) {
        let sum: Vec<i64> = a.iter().zip(&a2).map(|(x, y)| x + y).collect();
        let e = |x: &[i64], y: &[i64]| q.euler_form(x, y).unwrap();
        prop_assert_eq!(e(&sum, &b), e(&a, &b) + e(&a2, &b));
        prop_assert_eq!(e(&b, &sum), e(&b, &a) + e(&b, &a2));
        prop_assert_eq!(e(&a, &b), q.reverse().euler_form(&b, &a).unwrap());
    }

    #[test]
    fn path_matrix_inverts_and_counts_paths(q in quiver_strategy(5, 2)) {
        let k = q.vertex_count();
        let p = q.path_matrix();
        let i_minus_m = &IntMatrix::identity(k) - &q.multiplicity_matrix();
        prop_assert_eq!(&(&i_minus_m * &p), &IntMatrix::identity(k));
        prop_assert_eq!(&(&p * &i_minus_m), &IntMatrix::identity(k));
        let order = q.topological_order();
        for i in 0..k {
            for j in 0..k {
                prop_assert_eq!(p[(j, i)].clone(), BigInt::from(dfs_paths(&q, order[i], order[j])));
            }
        }
    }

    #[test]
    fn lattice_maps(
        (q, a, s) in quiver_strategy(5, 2).prop_flat_map(|q| {
            let (x, y) = (vec_for(&q, -5, 5), vec_for(&q, -5, 5));
            (Just(q), x, y)
        })
    ) {
        let l1 = q.l1_apply(&a).unwrap();
        prop_assert_eq!(q.l1_inverse(&l1).unwrap().to_vec(), a.clone());
        let back = q.l1_inverse(&s).unwrap();
        prop_assert_eq!(q.l1_apply(&back).unwrap().to_vec(), s.clone());
        let l2 = q.l2_apply(&a).unwrap();
        for x in 0..q.vertex_count() {
            let mut xi = vec![0; q.vertex_count()];
            xi[x] = 1;
            prop_assert_eq!(l1.pair(&xi), q.euler_form(&a, &xi).unwrap());
            prop_assert_eq!(l2.pair(&xi), q.euler_form(&xi, &a).unwrap());
        }
    }

    #[test]
    fn subdims_properties(
        (q, n) in quiver_strategy(3, 2).prop_flat_map(|q| { let n = vec_for(&q, 0, 2); (Just(q), n) })
    ) {
        let mut session = SchofieldSession::new(q.clone());
        let subs = session.subdims(&n).unwrap();
        prop_assert!(subs.iter().any(|a| a.is_zero()));
        prop_assert!(subs.iter().any(|a| a.to_vec() == n));
        let mut memo = HashMap::new();
        for alpha in boxed_vectors(&q, &n) {
            let member = subs.iter().any(|a| a.to_vec() == alpha);
            prop_assert_eq!(member, naive_sub(&q, &alpha, &n, &mut memo));
            let beta: Vec<i64> = n.iter().zip(&alpha).map(|(a, b)| a - b).collect();
            if member {
                prop_assert!(q.euler_form(&alpha, &beta).unwrap() >= 0);
            }
            // self-consistency through the public API
            let gammas = session.subdims(&alpha).unwrap();
            let min = gammas.iter().map(|g| q.euler_form(g, &beta).unwrap()).min().unwrap();
            prop_assert_eq!(member, min >= 0);
        }
        let mut dual = SchofieldSession::new(q.reverse());
        let mut from_dual: Vec<Vec<i64>> = dual
            .subdims(&n)
            .unwrap()
            .iter()
            .map(|b| n.iter().zip(b.iter()).map(|(x, y)| x - y).collect())
            .collect();
        let mut direct: Vec<Vec<i64>> = subs.iter().map(|a| a.to_vec()).collect();
        from_dual.sort();
        direct.sort();
        prop_assert_eq!(direct, from_dual);
    }

    #[test]
    fn hull_sampling_is_bounded_by_theta(
        (q, n) in quiver_strategy(4, 2).prop_flat_map(|q| { let n = vec_for(&q, 1, 3); (Just(q), n) })
    ) {
        let mut session = SchofieldSession::new(q.clone());
        let hull = session.hull_data(&n).unwrap();
        let p = 2_147_483_647;
        for k in 0..q.vertex_count() {
            let mut hit = false;
            for seed in 0..16 {
                let sample = session.hull_sample_check(&n, k, p, seed).unwrap();
                prop_assert!(sample.le(&hull.theta[k]));
                hit |= sample == hull.theta[k];
            }
            prop_assert!(hit, "no seed reached theta_{}", k);
        }
    }

    #[test]
    fn cone_properties(
        (q, n, s, factor) in quiver_strategy(3, 2).prop_flat_map(|q| {
            let (n, s) = (vec_for(&q, 0, 3), vec_for(&q, -3, 3));
            (Just(q), n, s, 1i64..5)
        })
    ) {
        let mut session = SchofieldSession::new(q.clone());
        let n = dim(&n);
        let sigma = Weight::new(s);
        let d = cone::in_cone(&mut session, &n, &sigma).unwrap();
        let scaled = cone::in_cone(&mut session, &n, &sigma.scale(factor)).unwrap();
        prop_assert_eq!(d.is_member(), scaled.is_member());
        match &d {
            ConeDecision::Member => {
                for x in q.sources() {
                    if n[x] > 0 {
                        prop_assert!(sigma[x] >= 0);
                    }
                }
            }
            ConeDecision::ViolatedEquality { pairing } => {
                prop_assert_eq!(pairing.clone(), BigRational::from_integer(sigma.pair(&n).into()));
                prop_assert!(sigma.pair(&n) != 0);
            }
            ConeDecision::ViolatedInequality { beta, pairing } => {
                prop_assert!(session.is_quot(&n, beta).unwrap());
                prop_assert_eq!(pairing.clone(), BigRational::from_integer(sigma.pair(beta).into()));
                prop_assert!(sigma.pair(beta) < 0);
            }
        }
        let support = q.restrict_support(&n, &sigma).unwrap();
        let mut small = SchofieldSession::new(support.quiver.clone());
        let restricted = cone::in_cone(&mut small, &support.n, &support.sigma).unwrap();
        prop_assert_eq!(d.is_member(), restricted.is_member());
        let description = cone_description(&mut session, &n).unwrap();
        prop_assert_eq!(description.inequalities.len(), session.quotdims(&n).unwrap().len());
    }

    #[test]
    fn delta_system_is_square_exactly_when_euler_vanishes(
        (q, a, b, seed) in quiver_strategy(3, 2).prop_flat_map(|q| {
            let (a, b) = (vec_for(&q, 0, 2), vec_for(&q, 0, 2));
            (Just(q), a, b, any::<u64>())
        })
    ) {
        let rows: i64 = q.arrows().iter().map(|&(x, y)| a[x] * b[y]).sum();
        let cols: i64 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
        let e = q.euler_form(&a, &b).unwrap();
        prop_assert_eq!(rows == cols, e == 0);
        let v = random_representation(&q, &dim(&a), 5, seed).unwrap();
        let w = random_representation(&q, &dim(&b), 5, seed ^ 1).unwrap();
        let system = delta_system(&q, &dim(&a), &dim(&b), &v, &w);
        if e == 0 {
            let system = system.unwrap();
            prop_assert_eq!(system.matrix.rows() as i64, cols);
            prop_assert_eq!(system.matrix.cols() as i64, rows);
        } else {
            prop_assert!(system.is_err());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn transformation_law(
        (q, a, b, seed) in quiver_strategy(3, 2).prop_flat_map(|q| {
            let (a, b) = (vec_for(&q, 0, 2), vec_for(&q, 0, 2));
            (Just(q), a, b, any::<u64>())
        })
    ) {
        prop_assume!(q.euler_form(&a, &b).unwrap() == 0);
        let mut rng = SplitMix64::new(seed);
        let v = random_representation(&q, &dim(&a), 7, rng.next_u64()).unwrap().to_rational();
        let w = random_representation(&q, &dim(&b), 7, rng.next_u64()).unwrap().to_rational();
        let g = GroupElement::random(&a, 4, &mut rng);
        let h = GroupElement::random(&b, 4, &mut rng);
        prop_assert!(semi_invariance_check(&q, &dim(&a), &dim(&b), &v, &w, &g, &h).unwrap());
    }
}

fn enumerate(q: &Quiver, n: &[i64], p: u32) -> Vec<Vec<Matrix<u32>>> {
    let entries: usize = q.arrows().iter().map(|&(s, t)| (n[s] * n[t]) as usize).sum();
    (0..(p as u64).pow(entries as u32))
        .map(|mut index| {
            q.arrows()
                .iter()
                .map(|&(s, t)| {
                    Matrix::from_fn(n[t] as usize, n[s] as usize, |_, _| {
                        let d = (index % p as u64) as u32;
                        index /= p as u64;
                        d
                    })
                })
                .collect()
        })
        .collect()
}

#[test]
fn search_field_monotonicity_and_group_invariance() {
    let f2 = FiniteField::prime(2).unwrap();
    let f4 = FiniteField::new(2, 2).unwrap();
    let g = vec![
        Matrix::from_vec(2, 2, vec![1, 1, 0, 1]).unwrap(),
        Matrix::from_vec(2, 2, vec![0, 1, 1, 0]).unwrap(),
        Matrix::from_vec(1, 1, vec![1]).unwrap(),
    ];
    let q = Quiver::parse("vertices: a b c\narrow: a b\narrow: a b\narrow: c b").unwrap();
    let n = [2i64, 2, 1];
    for maps in enumerate(&q, &n, 2) {
        let r = FieldRepresentation::new(&q, f2.clone(), dim(&n), maps).unwrap();
        let moved = r.act(&q, &g).unwrap();
        for alpha in boxed_vectors(&q, &n) {
            let small = grassmannian_nonempty(&q, &r, &alpha, &f2).unwrap();
            let big = grassmannian_nonempty(&q, &r, &alpha, &f4).unwrap();
            assert!(!small || big);
            assert_eq!(small, grassmannian_nonempty(&q, &moved, &alpha, &f2).unwrap());
        }
    }
}

#[test]
fn oracle_duality_on_the_tiny_grid() {
    let f2 = FiniteField::prime(2).unwrap();
    for text in [
        "vertices: u v\narrow: u v",
        "vertices: u v\narrow: u v\narrow: u v",
        "vertices: u v w\narrow: u v\narrow: v w",
        "vertices: a b c\narrow: a b\narrow: a c\narrow: b c",
    ] {
        let q = Quiver::parse(text).unwrap();
        let dual = q.reverse();
        let top = vec![2i64; q.vertex_count()];
        for n in boxed_vectors(&q, &top) {
            if n.iter().filter(|&&x| x == 2).count() > 2 {
                continue;
            }
            for a in boxed_vectors(&q, &n) {
                let rest: Vec<i64> = n.iter().zip(&a).map(|(x, y)| x - y).collect();
                assert_eq!(
                    brute_is_sub(&q, &a, &n, &f2, 2).unwrap(),
                    brute_is_sub(&dual, &rest, &n, &f2, 2).unwrap(),
                    "{text} a={a:?} n={n:?}"
                );
            }
        }
    }
}

#[test]
fn lr_symmetry() {
    let mut shapes = Vec::new();
    for a in 0..=3 {
        for b in 0..=a {
            for c in 0..=b {
                shapes.push(Partition::new(vec![a, b, c]).unwrap());
            }
        }
    }
    for l in &shapes {
        for m in &shapes {
            for n in &shapes {
                assert_eq!(lr_coefficient(l, m, n), lr_coefficient(m, l, n));
                if n.size() == l.size() + m.size() {
                    assert_eq!(try_lr_positive(l, m, n).unwrap(), try_lr_positive(m, l, n).unwrap());
                }
            }
        }
    }
}
