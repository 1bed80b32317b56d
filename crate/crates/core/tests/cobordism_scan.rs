mod common;

use common::braid_words;
use khovanov::chain::{homology, Ring};
use khovanov::cobordism_scan::*;
use khovanov::frobenius_cube::{build_cube_complex, builtin_spec, Theory};
use khovanov::links::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cob(terms: &[(Mask, i64)]) -> DottedCobordism {
    DottedCobordism::from_map(terms.iter().copied().collect())
}

fn closed(genus: u32, dots: u32) -> RawSurface {
    RawSurface { num_cycles: 0, components: vec![RawComponent { boundary: vec![], genus, dots }] }
}

fn circle() -> FlatTangle {
    FlatTangle { matching: vec![], loops: 1 }
}

#[test]
fn closed_surfaces() {
    assert_eq!(reduce_cobordism(&closed(0, 0)), DottedCobordism::zero());
    assert_eq!(reduce_cobordism(&closed(0, 1)), DottedCobordism::scalar(1));
    assert_eq!(reduce_cobordism(&closed(0, 2)), DottedCobordism::zero());
    assert_eq!(reduce_cobordism(&closed(1, 0)), DottedCobordism::scalar(2));
    assert_eq!(reduce_cobordism(&closed(1, 1)), DottedCobordism::zero());
    assert_eq!(reduce_cobordism(&closed(2, 0)), DottedCobordism::zero());
}

#[test]
fn neck_cutting() {
    // a tube between two boundary circles is the sum of its two one-dotted cuts
    let tube = RawSurface { num_cycles: 2, components: vec![RawComponent { boundary: vec![0, 1], genus: 0, dots: 0 }] };
    assert_eq!(reduce_cobordism(&tube), cob(&[(0b01, 1), (0b10, 1)]));
    let dotted = RawSurface { num_cycles: 2, components: vec![RawComponent { boundary: vec![0, 1], genus: 0, dots: 1 }] };
    assert_eq!(reduce_cobordism(&dotted), cob(&[(0b11, 1)]));
    let handle = RawSurface { num_cycles: 1, components: vec![RawComponent { boundary: vec![0], genus: 1, dots: 0 }] };
    assert_eq!(reduce_cobordism(&handle), cob(&[(0b1, 2)]));
}

#[test]
fn delooping_is_an_isomorphism() {
    let (o, e) = (circle(), FlatTangle::empty());
    let (cap, dotcap) = (cob(&[(0, 1)]), cob(&[(1, 1)]));
    let (cup, dotcup) = (cob(&[(0, 1)]), cob(&[(1, 1)]));
    // G∘F on the circle is the identity cylinder
    let gf = compose(&dotcap, &cup, &o, &e, &o).add(&compose(&cap, &dotcup, &o, &e, &o), 1);
    assert_eq!(gf, cob(&[(1, 1), (2, 1)]));
    // F∘G is the identity of ∅{+1} ⊕ ∅{−1}
    assert_eq!(compose(&cup, &dotcap, &e, &o, &e), DottedCobordism::scalar(1));
    assert_eq!(compose(&dotcup, &cap, &e, &o, &e), DottedCobordism::scalar(1));
    assert_eq!(compose(&cup, &cap, &e, &o, &e), DottedCobordism::zero());
    assert_eq!(compose(&dotcup, &dotcap, &e, &o, &e), DottedCobordism::zero());
}

#[test]
fn deloop_then_cancel() {
    let mut tc = TangleComplex::new(vec![]);
    let a = tc.add_object(TangleObject { tangle: circle(), h: 0, q: 0 });
    let b = tc.add_object(TangleObject { tangle: FlatTangle::empty(), h: 1, q: -1 });
    tc.add_arrow(a, b, &cob(&[(0, 1)]));
    tc.check_degrees().unwrap();
    assert!(matches!(tc.deloop(b), Err(ScanError::NoCircle(_))));
    let (plus, minus) = tc.deloop(a).unwrap();
    assert_eq!(tc.arrow(plus, b), None);
    assert_eq!(tc.unit_entry(minus, b), Some(1));
    assert!(matches!(tc.gauss_eliminate(plus, b), Err(ScanError::NotInvertible(..))));
    tc.gauss_eliminate(minus, b).unwrap();
    assert_eq!(tc.num_objects(), 1);
    assert_eq!(tc.objects().next().unwrap().1.q, 1);
}

#[test]
fn scan_rejects_other_theories() {
    let d = braid_closure(&parse_braid("b=2; s1 s1").unwrap());
    assert!(matches!(scan_compute(&d, &builtin_spec(Theory::Lee)), Err(ScanError::UnsupportedTheory)));
}

#[test]
fn scan_order_is_a_permutation() {
    let d = braid_closure(&parse_braid("b=4; s1 S2 s3 s1 S2 s3").unwrap());
    let mut o = scan_order(&d);
    o.sort();
    assert_eq!(o, (0..d.n()).collect::<Vec<_>>());
}

fn raw_surface() -> impl Strategy<Value = RawSurface> {
    (1..=5usize).prop_flat_map(|cycles| {
        let comps = prop::collection::vec((0u32..3, 0u32..3), 1..=3);
        (Just(cycles), comps, prop::collection::vec(0usize..3, cycles))
    })
    .prop_map(|(num_cycles, comps, owner)| {
        let mut components: Vec<RawComponent> = comps.into_iter().map(|(genus, dots)| RawComponent { boundary: vec![], genus, dots }).collect();
        for (c, o) in owner.into_iter().enumerate() {
            let k = o % components.len();
            components[k].boundary.push(c);
        }
        RawSurface { num_cycles, components }
    })
}

proptest! {
    #![proptest_config(common::config(64))]

    #[test]
    fn reduction_is_confluent(s in raw_surface(), seed in any::<u64>()) {
        let canonical = reduce_cobordism(&s);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..8 {
            prop_assert_eq!(reduce_cobordism_randomly(&s, &mut rng), canonical.clone());
        }
    }

    #[test]
    fn scan_matches_cube(b in braid_words(4, 8)) {
        let d = braid_closure(&b);
        let spec = builtin_spec(Theory::Kh);
        let naive = homology(&build_cube_complex(&d, &spec, None).unwrap().complex).unwrap();
        let scanned = homology(&scan_compute(&d, &spec).unwrap()).unwrap();
        prop_assert_eq!(&scanned, &naive);
        let f2 = spec.with_ring(Ring::F2);
        let naive = homology(&build_cube_complex(&d, &f2, None).unwrap().complex).unwrap();
        prop_assert_eq!(homology(&scan_compute(&d, &f2).unwrap()).unwrap(), naive);
    }

    #[test]
    fn intermediate_complexes_are_graded_complexes(b in braid_words(4, 6)) {
        let d = braid_closure(&b);
        let mut tc = TangleComplex::unit();
        for x in scan_order(&d) {
            tc = tensor_crossing(&tc, &d, x);
            prop_assert!(tc.check_degrees().is_ok());
            prop_assert!(tc.check_d_squared().is_ok());
            tc.eliminate_all();
            prop_assert!(tc.check_degrees().is_ok());
            prop_assert!(tc.check_d_squared().is_ok());
            prop_assert_eq!(tc.total_loops(), 0);
        }
    }
}
