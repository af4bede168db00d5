use freefermion::algebra::{MajoranaMonomial, Pauli, PauliString};
use freefermion::combin::combinations;
use freefermion::dense::{self, DenseOperator};
use freefermion::partition::{
    analytic_partition, analytic_quartic_count, apply_template, greedy_partition, majorana_form,
    norms_report, rotation_plan, AnticommutingPartition, AnticommutingSet, ElectronicIntegrals,
    MajoranaPolynomial, SparseEntry,
};
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Letter-wise commutation test on the Jordan–Wigner strings.
fn anticommute(n: usize, a: &[usize], b: &[usize]) -> bool {
    let pa = MajoranaMonomial::new(n, a.to_vec()).unwrap().to_pauli();
    let pb = MajoranaMonomial::new(n, b.to_vec()).unwrap().to_pauli();
    let clashes = pa
        .letters
        .iter()
        .zip(&pb.letters)
        .filter(|(x, y)| **x != Pauli::I && **y != Pauli::I && x != y)
        .count();
    clashes % 2 == 1
}

/// `a_p = Z⋯Z (X + iY)/2` assembled from Pauli strings.
fn ladder(n: usize, p: usize) -> DenseOperator {
    let string = |last: char| {
        let s: String = (0..n)
            .map(|j| {
                if j < p {
                    'Z'
                } else if j == p {
                    last
                } else {
                    'I'
                }
            })
            .collect();
        dense::build_pauli(&s.parse::<PauliString>().unwrap()).unwrap()
    };
    string('X')
        .add(&string('Y').scale(Complex64::new(0.0, 1.0)))
        .scale(c(0.5))
}

fn second_quantized(ints: &ElectronicIntegrals) -> DenseOperator {
    let n = ints.n();
    let a: Vec<_> = (0..n).map(|p| ladder(n, p)).collect();
    let ad: Vec<_> = a.iter().map(|x| x.adjoint()).collect();
    let mut h = DenseOperator::zeros(n).unwrap();
    for p in 0..n {
        for q in 0..n {
            h = h.add(&ad[p].mul(&a[q]).scale(c(ints.h1()[(p, q)])));
            for r in 0..n {
                for s in 0..n {
                    let term = ad[p].mul(&ad[q]).mul(&a[r]).mul(&a[s]);
                    h = h.add(&term.scale(c(0.5 * ints.h2(p, q, r, s))));
                }
            }
        }
    }
    h
}

#[test]
fn majorana_form_matches_second_quantized_operator() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=4 {
        let ints = ElectronicIntegrals::random(n, &mut rng).unwrap();
        let poly = majorana_form(&ints).unwrap();
        let err = dense::polynomial_operator(&poly)
            .unwrap()
            .max_diff(&second_quantized(&ints));
        assert!(err < 1e-10, "n={n}: {err:e}");
        for set in poly.terms().keys() {
            assert!(set.len() == 2 || set.len() == 4);
        }
    }
}

#[test]
fn sparse_integrals_fill_their_orbits() {
    let h1 = DMatrix::from_row_slice(3, 3, &[1.0, 0.2, 0.0, 0.2, -0.5, 0.0, 0.0, 0.0, 0.3]);
    let e = SparseEntry {
        pqrs: [0, 1, 2, 1],
        value: 0.7,
    };
    let ints = ElectronicIntegrals::from_sparse(h1, &[e]).unwrap();
    for idx in [[0, 1, 2, 1], [1, 0, 1, 2], [2, 1, 0, 1], [1, 2, 1, 0]] {
        assert_eq!(ints.h2(idx[0], idx[1], idx[2], idx[3]), 0.7);
    }
    assert_eq!(ints.h2(0, 1, 1, 2), 0.0);
    let err = dense::polynomial_operator(&majorana_form(&ints).unwrap())
        .unwrap()
        .max_diff(&second_quantized(&ints));
    assert!(err < 1e-12);
    let bad = SparseEntry {
        pqrs: [0, 3, 0, 0],
        value: 1.0,
    };
    assert!(ElectronicIntegrals::from_sparse(DMatrix::zeros(3, 3), &[bad]).is_err());
}

#[test]
fn greedy_extremes() {
    let mut anti = MajoranaPolynomial::new(2);
    for s in [vec![0, 1], vec![1, 2], vec![0, 2]] {
        anti.add_term(s, -0.4).unwrap();
    }
    let p = greedy_partition(&anti);
    assert_eq!(p.sets.len(), 1);
    let r = norms_report(&anti, &p).unwrap();
    assert!((r.lambda - 1.2).abs() < 1e-15);
    assert!((r.lambda_c - 3f64.sqrt() * 0.4).abs() < 1e-15);

    let mut comm = MajoranaPolynomial::new(3);
    for (k, s) in [vec![0, 1], vec![2, 3], vec![4, 5], vec![0, 1, 2, 3]]
        .into_iter()
        .enumerate()
    {
        comm.add_term(s, k as f64 + 1.0).unwrap();
    }
    let p = greedy_partition(&comm);
    assert_eq!(p.sets.len(), 4);
    let r = norms_report(&comm, &p).unwrap();
    assert_eq!(r.lambda, r.lambda_c);
}

#[test]
fn trivial_partition_has_equal_norms() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let poly = majorana_form(&ElectronicIntegrals::random(3, &mut rng).unwrap()).unwrap();
    let sets = poly
        .terms()
        .iter()
        .map(|(m, &h)| AnticommutingSet {
            members: vec![m.clone()],
            betas: vec![h.signum()],
            gamma: h.abs(),
        })
        .collect();
    let part = AnticommutingPartition { sets, covers: true };
    let r = norms_report(&poly, &part).unwrap();
    assert!((r.lambda - r.lambda_c).abs() < 1e-12 * r.lambda);
    assert_eq!(r.s_max, 1);
    assert!(r.bounds_ok);
}

#[test]
fn greedy_is_insertion_order_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let poly = majorana_form(&ElectronicIntegrals::random(3, &mut rng).unwrap()).unwrap();
    let mut reversed = MajoranaPolynomial::new(3);
    for (m, &h) in poly.terms().iter().rev() {
        reversed.add_term(m.clone(), h).unwrap();
    }
    assert_eq!(greedy_partition(&poly), greedy_partition(&reversed));
}

#[test]
fn analytic_template_is_a_valid_cover() {
    assert_eq!(analytic_partition(4).unwrap().quartic_sets, 12);
    assert!(analytic_partition(1).is_err());
    for n in 2..=6 {
        let t = analytic_partition(n).unwrap();
        let expected = if n == 2 { 1 } else { analytic_quartic_count(n) };
        assert_eq!(t.quartic_sets, expected);
        let mut seen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for set in &t.sets {
            for (i, a) in set.iter().enumerate() {
                *seen.entry(a.clone()).or_default() += 1;
                for b in &set[i + 1..] {
                    assert!(anticommute(n, a, b), "n={n}: {a:?} {b:?}");
                }
            }
        }
        // every quadratic {2p, 2q+1} and quartic {2p, 2q, 2r+1, 2s+1} support exactly once
        let mut want = 0;
        for p in 0..n {
            for q in 0..n {
                let mut s = vec![2 * p, 2 * q + 1];
                s.sort();
                assert_eq!(seen.get(&s), Some(&1));
                want += 1;
            }
        }
        for pq in combinations(n, 2) {
            for rs in combinations(n, 2) {
                let mut s = vec![2 * pq[0], 2 * pq[1], 2 * rs[0] + 1, 2 * rs[1] + 1];
                s.sort();
                assert_eq!(seen.get(&s), Some(&1));
                want += 1;
            }
        }
        assert_eq!(seen.len(), want);
    }
}

#[test]
fn rotation_plans_collapse_each_set() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let n = 3;
    let poly = majorana_form(&ElectronicIntegrals::random(n, &mut rng).unwrap()).unwrap();
    for part in [
        greedy_partition(&poly),
        apply_template(&analytic_partition(n).unwrap(), &poly).unwrap(),
    ] {
        for set in &part.sets {
            let plan = rotation_plan(set).unwrap();
            assert_eq!(plan.steps.len(), set.len() - 1);
            let mut hs = DenseOperator::zeros(n).unwrap();
            for (m, b) in set.members.iter().zip(&set.betas) {
                let op =
                    dense::build_monomial(&MajoranaMonomial::new(n, m.clone()).unwrap()).unwrap();
                hs = hs.add(&op.scale(c(set.gamma * b)));
            }
            let r = dense::rotation_plan_unitary(n, &plan).unwrap();
            let target =
                dense::build_monomial(&MajoranaMonomial::new(n, plan.target.clone()).unwrap())
                    .unwrap();
            let want = target.scale(c(set.gamma * plan.target_sign as f64));
            assert!(r.mul(&hs).mul(&r.adjoint()).max_diff(&want) < 1e-10);
        }
    }
}

#[test]
fn two_term_plan_angle() {
    let set = AnticommutingSet {
        members: vec![vec![0, 1], vec![1, 2]],
        betas: vec![0.6, 0.8],
        gamma: 1.0,
    };
    let plan = rotation_plan(&set).unwrap();
    assert_eq!(plan.target, vec![1, 2]);
    assert!((plan.steps[0].theta - 0.75f64.atan()).abs() < 1e-15);
    assert_eq!(plan.target_sign, 1);
}

#[test]
fn singleton_plans_are_empty() {
    let set = AnticommutingSet {
        members: vec![vec![0, 3]],
        betas: vec![-1.0],
        gamma: 0.5,
    };
    let plan = rotation_plan(&set).unwrap();
    assert!(plan.steps.is_empty());
    assert_eq!((plan.target, plan.target_sign), (vec![0, 3], -1));
    let bad = AnticommutingSet {
        members: vec![vec![0, 1], vec![1, 2]],
        betas: vec![0.5, 0.5],
        gamma: 1.0,
    };
    assert!(rotation_plan(&bad).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn partitions_are_valid_and_bounded(seed in any::<u64>(), n in 2usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let poly = majorana_form(&ElectronicIntegrals::random(n, &mut rng).unwrap()).unwrap();
        for part in [greedy_partition(&poly), apply_template(&analytic_partition(n).unwrap(), &poly).unwrap()] {
            prop_assert!(part.covers);
            for set in &part.sets {
                prop_assert!(set.is_anticommuting());
                for (i, a) in set.members.iter().enumerate() {
                    for b in &set.members[i + 1..] {
                        prop_assert!(anticommute(n, a, b));
                    }
                }
            }
            let r = norms_report(&poly, &part).unwrap();
            prop_assert!(r.bounds_ok);
            prop_assert!(r.lambda_c <= r.lambda * (1.0 + 1e-12));
            prop_assert!(r.lambda / (r.s_max as f64).sqrt() <= r.lambda_c * (1.0 + 1e-12));
        }
    }
}
