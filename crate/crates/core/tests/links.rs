mod common;

use std::collections::BTreeSet;

use common::{braid_words, closure, smoothing};
use khovanov::links::*;
use proptest::prelude::*;

fn braid(s: &str) -> Diagram {
    braid_closure(&parse_braid(s).unwrap())
}

#[test]
fn parse_braid_examples() {
    let b = parse_braid("b=2; s1 s1").unwrap();
    assert_eq!(b.strands, 2);
    assert_eq!(b.writhe(), 2);
    let id = parse_braid("b=1;").unwrap();
    assert_eq!((id.strands, id.writhe()), (1, 0));
    assert!(matches!(parse_braid("b=2; s3"), Err(LinkError::IndexOutOfRange { index: 3, strands: 2 })));
}

#[test]
fn braid_parse_errors_carry_positions() {
    match parse_braid("b=2; s1 x1") {
        Err(LinkError::Malformed { line, col, .. }) => assert_eq!((line, col), (1, 9)),
        other => panic!("{other:?}"),
    }
    match parse_braid("# comment\nb=2 s1") {
        Err(LinkError::Malformed { line, .. }) => assert_eq!(line, 2),
        other => panic!("{other:?}"),
    }
    assert!(parse_braid("b=0;").is_err());
}

#[test]
fn closure_examples() {
    let hopf = braid("b=2; s1 s1");
    assert_eq!((hopf.n(), hopf.n_plus(), hopf.n_minus()), (2, 2, 0));
    assert_eq!(hopf.num_components(), 2);
    let t = braid("b=2; s1 s1 s1");
    assert_eq!(t.writhe(), 3);
    assert_eq!(t.num_components(), 1);
    let u = braid("b=1;");
    assert_eq!((u.n(), u.free_circles()), (0, 1));
    assert!(u.marking().is_some());
}

#[test]
fn pd_parse_examples() {
    let t = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
    assert_eq!((t.n(), t.num_components()), (3, 1));
    assert_eq!(t.writhe(), -3);
    assert!(matches!(parse_pd("X(1,1,1,2) X(2,3,3,4)"), Err(LinkError::Malformed { .. })));
    let hopf = parse_pd("X(4,1,3,2) X(2,3,1,4)").unwrap();
    assert_eq!((hopf.n(), hopf.num_components()), (2, 2));
    let e = parse_pd("X(1,4,2,5)\nX(3,6,4,1) Y(5,2,6,3)").unwrap_err();
    assert!(matches!(e, LinkError::Malformed { line: 2, col: 12, .. }), "{e:?}");
}

#[test]
fn pd_directives() {
    let d = parse_pd("circles=2").unwrap();
    assert_eq!((d.n(), d.num_components()), (0, 2));
    let d = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3) @arc=3").unwrap();
    assert_eq!(d.basepoint(), Some(3));
}

#[test]
fn pd_round_trip_of_trefoil_closure() {
    let d = braid("b=2; s1 s1 s1");
    let e = parse_pd(&emit_pd(&d)).unwrap();
    assert!(isomorphic(&d, &e));
    assert_eq!(e.writhe(), 3);
}

#[test]
fn resolve_examples() {
    let hopf = braid("b=2; s1 s1");
    let k = |d: &Diagram, bits: &[bool]| resolve(d, &Bitstring::from_bools(bits)).num_circles;
    assert_eq!(k(&hopf, &[false, false]), 2);
    assert_eq!(k(&hopf, &[false, true]), 1);
    assert_eq!(k(&hopf, &[true, true]), 2);
    assert_eq!(resolve(&Diagram::unlink(1), &Bitstring::zeros(0)).num_circles, 1);
    assert_eq!(k(&braid("b=2; s1 s1 s1"), &[false, false, false]), 2);
}

#[test]
fn edge_examples() {
    let hopf = braid("b=2; s1 s1");
    let e = edge_info(&hopf, &Bitstring::from_bools(&[false, false]), 0).unwrap();
    assert!(matches!(e.kind, EdgeKind::Merge { .. }));
    assert_eq!(e.sign, 1);
    let e = edge_info(&hopf, &Bitstring::from_bools(&[true, false]), 1).unwrap();
    assert!(matches!(e.kind, EdgeKind::Split { .. }));
    assert_eq!(e.sign, -1);
    assert!(matches!(edge_info(&hopf, &Bitstring::from_bools(&[true, false]), 0), Err(LinkError::BitAlreadyOne(0))));
}

#[test]
fn oriented_resolution_examples() {
    let (u, _) = oriented_resolution(&braid("b=2; s1 s1 s1"));
    assert_eq!(u.weight(), 0);
    let (u, _) = oriented_resolution(&braid("b=2; S1"));
    assert!(u.get(0));
    let (u, r) = oriented_resolution(&braid("b=2; s1 s1"));
    assert_eq!((u.weight(), r.num_circles), (0, 2));
}

#[test]
fn checkerboard_examples() {
    let hopf = braid("b=2; s1 s1").without_marking();
    let faces = hopf.faces();
    assert_eq!(faces.count, 4);
    let shade = hopf.checkerboard();
    assert_eq!(shade.iter().filter(|&&s| s).count(), 2);
    for a in 0..hopf.num_arcs() {
        assert_ne!(shade[faces.left[a]], shade[faces.right[a]]);
    }
}

#[test]
fn reidemeister_examples() {
    let u = Diagram::unlink(1);
    let k = apply_reidemeister(&u, Move::R1Add { arc: 0, sign: Sign::Pos, under_first: true }).unwrap();
    assert_eq!((k.n(), k.writhe(), k.num_components()), (1, 1, 1));
    let back = apply_reidemeister(&k, Move::R1Remove { crossing: 0 }).unwrap();
    assert!(isomorphic(&back, &u));
    let t = braid("b=2; s1 s1 s1").without_marking();
    let r2 = legal_sites(&t).into_iter().find(|m| matches!(m, Move::R2Add { .. })).unwrap();
    let e = apply_reidemeister(&t, r2).unwrap();
    assert_eq!((e.n(), e.writhe()), (5, 3));
    assert!(matches!(apply_reidemeister(&t, Move::R1Remove { crossing: 0 }), Err(LinkError::IllegalSite(_))));
}

fn permutation_cycles(b: &BraidWord) -> usize {
    let mut perm: Vec<usize> = (0..b.strands).collect();
    for l in &b.letters {
        perm.swap(l.index - 1, l.index);
    }
    let mut seen = vec![false; b.strands];
    let mut cycles = 0;
    for s in 0..b.strands {
        if !seen[s] {
            cycles += 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = perm[x];
            }
        }
    }
    cycles
}

proptest! {
    #![proptest_config(common::config(64))]

    #[test]
    fn closure_signs_and_components(b in braid_words(4, 8)) {
        let d = braid_closure(&b);
        let expected: Vec<Sign> = b.letters.iter().map(|l| l.sign).collect();
        let got: Vec<Sign> = d.crossings().iter().map(|x| x.sign).collect();
        prop_assert_eq!(got, expected);
        prop_assert_eq!(d.num_components(), permutation_cycles(&b));
        prop_assert_eq!(d.n(), d.n_plus() + d.n_minus());
    }

    #[test]
    fn every_arc_appears_twice(b in braid_words(4, 8)) {
        let d = braid_closure(&b);
        let mut count = vec![0; d.num_arcs() + 1];
        for x in d.crossings() {
            for a in x.arcs {
                count[a as usize] += 1;
            }
        }
        prop_assert!(count[1..].iter().all(|&c| c == 2));
    }

    #[test]
    fn pd_round_trip(b in braid_words(4, 8)) {
        let d = braid_closure(&b).without_marking();
        let e = parse_pd(&emit_pd(&d)).unwrap();
        prop_assert!(isomorphic(&d, &e));
        prop_assert_eq!(e.writhe(), d.writhe());
    }

    #[test]
    fn resolutions_partition_arcs(b in braid_words(4, 6), seed in any::<u64>()) {
        let d = braid_closure(&b);
        let n = d.n();
        let u = Bitstring::new(if n == 0 { 0 } else { seed & ((1u64 << n) - 1) }, n);
        let r = resolve(&d, &u);
        prop_assert_eq!(r.arc_to_circle.len(), d.num_arcs());
        let used: BTreeSet<usize> = r.arc_to_circle.iter().copied().collect();
        prop_assert_eq!(used.len() + d.free_circles(), r.num_circles);
        prop_assert!(r.arc_to_circle.iter().all(|&c| c < r.num_circles));
        // the oracle's union-find agrees on the number of circles
        prop_assert_eq!(smoothing(&d, u.bits).1, r.num_circles);
    }

    #[test]
    fn edges_change_circle_count_by_one(b in braid_words(4, 6), seed in any::<u64>()) {
        let d = braid_closure(&b);
        let n = d.n();
        prop_assume!(n > 0);
        let u = Bitstring::new(seed & ((1u64 << n) - 1), n);
        for i in (0..n).filter(|&i| !u.get(i)) {
            let (a, c) = (resolve(&d, &u).num_circles as i64, resolve(&d, &u.with(i)).num_circles as i64);
            prop_assert_eq!((a - c).abs(), 1);
            let e = edge_info(&d, &u, i).unwrap();
            prop_assert_eq!(e.sign, if u.ones_before(i) % 2 == 0 { 1 } else { -1 });
            prop_assert_eq!(matches!(e.kind, EdgeKind::Merge { .. }), a > c);
        }
    }

    #[test]
    fn faces_anticommute(b in braid_words(4, 6), seed in any::<u64>()) {
        let d = braid_closure(&b);
        let n = d.n();
        prop_assume!(n >= 2);
        let u = Bitstring::new(seed & ((1u64 << n) - 1), n);
        let zeros: Vec<usize> = (0..n).filter(|&i| !u.get(i)).collect();
        for (x, &i) in zeros.iter().enumerate() {
            for &j in &zeros[x + 1..] {
                let s = |v: &Bitstring, k: usize| edge_info(&d, v, k).unwrap().sign;
                let prod = s(&u, i) * s(&u.with(i), j) * s(&u, j) * s(&u.with(j), i);
                prop_assert_eq!(prod, -1);
            }
        }
    }

    #[test]
    fn writhe_under_moves(b in braid_words(3, 5), pick in any::<prop::sample::Index>()) {
        let d = braid_closure(&b).without_marking();
        let sites = legal_sites(&d);
        prop_assume!(!sites.is_empty());
        let mv = sites[pick.index(sites.len())];
        let e = apply_reidemeister(&d, mv).unwrap();
        let dw = e.writhe() - d.writhe();
        match mv {
            Move::R1Add { sign, .. } => prop_assert_eq!(dw, sign.as_i64()),
            Move::R1Remove { crossing } => prop_assert_eq!(dw, -d.crossings()[crossing].sign.as_i64()),
            _ => prop_assert_eq!(dw, 0),
        }
        prop_assert_eq!(e.num_components(), d.num_components());
    }

    #[test]
    fn all_zero_resolution_of_closure_is_essential(b in braid_words(4, 8)) {
        let d = braid_closure(&b);
        let r = resolve(&d, &Bitstring::zeros(d.n()));
        let essential = (0..r.num_circles).filter(|&c| r.is_essential(c)).count();
        // Seifert circles of a closed braid wind once around the axis
        let (_, ro) = oriented_resolution(&d);
        prop_assert_eq!((0..ro.num_circles).filter(|&c| ro.is_essential(c)).count(), b.strands);
        prop_assert!(ro.winding.iter().all(|w| w.abs() == 1));
        prop_assert!(essential <= r.num_circles);
    }

    #[test]
    fn checkerboard_is_proper(b in braid_words(4, 6)) {
        let d = braid_closure(&b).without_marking();
        prop_assume!(d.n() > 0);
        let faces = d.faces();
        let shade = d.checkerboard();
        for a in 0..d.num_arcs() {
            prop_assert_ne!(shade[faces.left[a]], shade[faces.right[a]]);
        }
        // Euler characteristic of each connected projection is 2
        let comps: BTreeSet<usize> = faces.component.iter().copied().collect();
        prop_assert_eq!(faces.count, d.n() + 2 * comps.len());
    }

    #[test]
    fn mirror_negates_writhe(b in braid_words(4, 8)) {
        let d = braid_closure(&b);
        prop_assert_eq!(d.mirror().writhe(), -d.writhe());
        prop_assert_eq!(closure(&b.mirror().letters.iter().map(|l| l.index as i32 * l.sign.as_i64() as i32).collect::<Vec<_>>(), b.strands).writhe(), -d.writhe());
    }
}
