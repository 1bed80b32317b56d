mod common;

use std::collections::BTreeMap;

use common::{braid_words, determinantal_divisors};
use khovanov::chain::*;
use khovanov::frobenius_cube::{build_cube_complex, builtin_spec, khovanov_homology, Theory};
use khovanov::links::braid_closure;
use num_bigint::BigInt;
use proptest::prelude::*;

fn snf_of(m: &[Vec<i64>]) -> Vec<i64> {
    let s = smith_normal_form(&SparseMatrix::from_dense(m));
    s.factors.iter().map(|f| i64::try_from(f.clone()).unwrap()).collect()
}

fn g(h: i64, q: i64) -> Generator {
    Generator { h, q }
}

#[test]
fn snf_examples() {
    assert_eq!(snf_of(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
    assert_eq!(snf_of(&[vec![0, 0], vec![0, 0]]), Vec::<i64>::new());
    assert_eq!(snf_of(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
    let s = smith_normal_form(&SparseMatrix::from_dense(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]));
    assert_eq!((s.rank, s.factors), (2, vec![BigInt::from(1), BigInt::from(3)]));
}

#[test]
fn snf_with_large_entries_falls_back_to_big_integers() {
    let big = i64::MAX / 3;
    let s = smith_normal_form(&SparseMatrix::from_dense(&[vec![big, big - 1], vec![big - 2, big]]));
    let det = BigInt::from(big) * BigInt::from(big) - BigInt::from(big - 1) * BigInt::from(big - 2);
    assert_eq!(s.rank, 2);
    assert_eq!(&s.factors[0] * &s.factors[1], det);
}

#[test]
fn homology_of_small_complexes() {
    // Z --2--> Z
    let c = BigradedComplex::new(Ring::Z, vec![g(0, 0), g(1, 0)], vec![vec![(1, 2)], vec![]], false);
    let h = homology(&c).unwrap();
    assert_eq!(h.get(0, 0), GroupEntry { rank: 0, torsion: vec![] });
    assert_eq!(h.get(1, 0), GroupEntry { rank: 0, torsion: vec![2] });
    assert_eq!(homology(&c.with_ring(Ring::F2)).unwrap().total_rank(), 2);
    assert_eq!(homology(&c.with_ring(Ring::Q)).unwrap().total_rank(), 0);
    assert_eq!(homology(&c.with_ring(Ring::Fp(3))).unwrap().total_rank(), 0);
}

#[test]
fn d_squared_violations_are_reported() {
    let c = BigradedComplex::new(Ring::Z, vec![g(0, 0), g(1, 0), g(2, 0)], vec![vec![(1, 1)], vec![(2, 1)], vec![]], false);
    assert!(matches!(c.verify_d_squared(), Err(ChainError::NotAComplex { from: 0, to: 2 })));
    assert!(homology(&c).is_err());
    // over 𝔽₂ the composite 2 vanishes
    let c = BigradedComplex::new(Ring::F2, vec![g(0, 0), g(1, 0), g(1, 0), g(2, 0)], vec![vec![(1, 1), (2, 1)], vec![(3, 1)], vec![(3, 1)], vec![]], false);
    assert!(c.verify_d_squared().is_ok());
    let bad = BigradedComplex::new(Ring::Z, vec![g(0, 0), g(1, 2)], vec![vec![(1, 1)], vec![]], false);
    assert!(matches!(bad.verify_d_squared(), Err(ChainError::BadDegree { .. })));
    let filtered = BigradedComplex { filtered: true, ..bad };
    assert!(filtered.verify_d_squared().is_ok());
    assert!(matches!(homology(&filtered), Err(ChainError::NotGraded)));
    assert_eq!(ungraded_homology(&filtered).unwrap().values().map(|e| e.rank).sum::<usize>(), 0);
}

#[test]
fn cones() {
    let a = BigradedComplex::new(Ring::Z, vec![g(0, 0)], vec![vec![]], false);
    let id = ChainMap { source: &a, target: &a, map: vec![vec![(0, 1)]] };
    let cone = mapping_cone(&id).unwrap();
    assert_eq!(homology(&cone.complex).unwrap().total_rank(), 0);
    let two = ChainMap { source: &a, target: &a, map: vec![vec![(0, 2)]] };
    let h = homology(&mapping_cone(&two).unwrap().complex).unwrap();
    assert_eq!(h.get(0, 0).torsion, vec![2]);
    let zero = ChainMap { source: &a, target: &a, map: vec![vec![]] };
    let h = homology(&mapping_cone(&zero).unwrap().complex).unwrap();
    assert_eq!((h.rank(-1, 0), h.rank(0, 0)), (1, 1));
    let b = BigradedComplex::new(Ring::Z, vec![g(0, 2)], vec![vec![]], false);
    let wrong = ChainMap { source: &a, target: &b, map: vec![vec![(0, 1)]] };
    assert!(matches!(mapping_cone(&wrong), Err(ChainError::NotChainMap(_))));
}

#[test]
fn cone_long_exact_sequence_on_kh() {
    // the cone of the identity on a Khovanov complex is acyclic
    let d = braid_closure(&khovanov::links::parse_braid("b=2; s1 s1 s1").unwrap());
    let c = build_cube_complex(&d, &builtin_spec(Theory::Kh), None).unwrap().complex;
    let map = (0..c.len()).map(|i| vec![(i, 1)]).collect();
    let cone = mapping_cone(&ChainMap { source: &c, target: &c, map }).unwrap();
    assert_eq!(homology(&cone.complex).unwrap().total_rank(), 0);
}

#[test]
fn euler_characteristic() {
    let c = BigradedComplex::new(Ring::Z, vec![g(0, 1), g(1, 1), g(1, 3)], vec![vec![(1, 1)], vec![], vec![]], false);
    assert_eq!(c.graded_euler_char().terms().collect::<Vec<_>>(), vec![(3, -1)]);
}

#[test]
fn in_integer_span_examples() {
    let cols = vec![vec![(0, 2)], vec![(1, 3)]];
    assert!(in_integer_span(2, &cols, &[(0, 4), (1, -3)]));
    assert!(!in_integer_span(2, &cols, &[(0, 1)]));
    assert!(!in_integer_span(3, &cols, &[(2, 1)]));
}

#[test]
fn reduced_basis() {
    let mut b: linalg::ReducedBasis<Rat> = linalg::ReducedBasis::new();
    let v = |x: &[(usize, i64)]| linalg::sparse_from::<Rat>((), x);
    assert!(b.insert(v(&[(0, 1), (1, 1)])));
    assert!(b.insert(v(&[(1, 2)])));
    assert!(!b.insert(v(&[(0, 3)])));
    assert_eq!(b.dim(), 2);
    assert!(!b.contains(v(&[(2, 1)])));
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=4usize, 1..=4usize).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

fn kh_z(b: &khovanov::links::BraidWord) -> BigradedGroup {
    khovanov_homology(&braid_closure(b), Ring::Z).unwrap()
}

fn count_even(t: &[u64]) -> usize {
    t.iter().filter(|x| *x % 2 == 0).count()
}

proptest! {
    #![proptest_config(common::config(96))]

    #[test]
    fn snf_matches_determinantal_divisors(m in small_matrix()) {
        let got = snf_of(&m);
        let want: Vec<i64> = determinantal_divisors(&m).into_iter().map(|x| x.abs()).collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn snf_factors_divide(m in small_matrix()) {
        let f = snf_of(&m);
        for w in f.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
    }

    #[test]
    fn universal_coefficients(b in braid_words(3, 6)) {
        let d = braid_closure(&b);
        let z = kh_z(&b);
        let f2 = khovanov_homology(&d, Ring::F2).unwrap();
        let q = khovanov_homology(&d, Ring::Q).unwrap();
        let mut keys: Vec<(i64, i64)> = z.support();
        keys.extend(f2.support());
        keys.extend(keys.clone().into_iter().map(|(i, j)| (i - 1, j)));
        for (i, j) in keys {
            let expect = z.rank(i, j) + count_even(&z.get(i, j).torsion) + count_even(&z.get(i + 1, j).torsion);
            prop_assert_eq!(f2.rank(i, j), expect, "at ({}, {})", i, j);
            prop_assert_eq!(q.rank(i, j), z.rank(i, j));
        }
    }

    #[test]
    fn shift_commutes_with_homology(b in braid_words(3, 5), n in -3i64..3, m in -3i64..3) {
        let c = build_cube_complex(&braid_closure(&b), &builtin_spec(Theory::Kh), None).unwrap().complex;
        prop_assert_eq!(homology(&c.shift(n, m)).unwrap(), homology(&c).unwrap().shift(n, m));
    }

    #[test]
    fn rank_by_h_sums_ranks(b in braid_words(3, 5)) {
        let h = kh_z(&b);
        let mut by: BTreeMap<i64, usize> = BTreeMap::new();
        for (&(i, _), e) in &h.groups {
            *by.entry(i).or_insert(0) += e.rank;
        }
        by.retain(|_, v| *v > 0);
        prop_assert_eq!(h.rank_by_h(), by);
    }
}
