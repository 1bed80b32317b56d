mod common;

use common::braid_words;
use khovanov::annular::akh_homology;
use khovanov::chain::Ring;
use khovanov::frobenius_cube::{khovanov_homology, Theory};
use khovanov::lee_s::lee_homology;
use khovanov::links::*;
use khovanov::spectral::*;
use proptest::prelude::*;

fn fg(h: i64, f: i64) -> FilteredGen {
    FilteredGen { h, f }
}

fn totals(p: &[Page]) -> Vec<usize> {
    p.iter().map(Page::total_dim).collect()
}

fn check_shape(p: &[Page]) -> Result<(), TestCaseError> {
    for w in p.windows(2) {
        prop_assert_eq!(w[1].total_dim(), w[0].total_dim() - 2 * w[0].rank);
        prop_assert_eq!(w[1].r, w[0].r + 1);
    }
    let last = p.last().unwrap();
    prop_assert!(last.collapsed);
    prop_assert_eq!(last.rank, 0);
    Ok(())
}

#[test]
fn two_step_toy() {
    let fc = FilteredComplex::new(Ring::Q, vec![fg(0, 0), fg(1, 1)], vec![vec![(1, 1)], vec![]], 1, false).unwrap();
    let (p, deaths) = pages_tracking(&fc, &[vec![(1, 1)], vec![]]);
    assert_eq!(totals(&p), vec![2, 2, 0]);
    assert_eq!(p[1].differential, vec![PageArrow { from: 0, to: 1, coeff: "1".into() }]);
    assert_eq!(deaths, vec![Some(1), Some(0)]);
    let jumped = FilteredComplex::new(Ring::F2, vec![fg(0, 0), fg(1, 4)], vec![vec![(1, 1)], vec![]], 2, false).unwrap();
    assert_eq!(totals(&pages(&jumped)), vec![2, 2, 2, 0]);
    assert_eq!(jumped.jump(0, 1), 2);
}

#[test]
fn constructor_errors() {
    let d = vec![vec![(1, 1)], vec![]];
    assert!(matches!(FilteredComplex::new(Ring::Z, vec![fg(0, 0), fg(1, 0)], d.clone(), 1, false), Err(SpectralError::NotAField(Ring::Z))));
    assert!(matches!(FilteredComplex::new(Ring::Q, vec![fg(0, 1), fg(1, 0)], d.clone(), 1, false), Err(SpectralError::BadFiltration { .. })));
    assert!(FilteredComplex::new(Ring::Q, vec![fg(0, 1), fg(1, 0)], d.clone(), 1, true).is_ok());
    assert!(matches!(FilteredComplex::new(Ring::Q, vec![fg(0, 0), fg(1, 1)], d.clone(), 2, false), Err(SpectralError::BadFiltration { .. })));
    assert!(matches!(FilteredComplex::new(Ring::Q, vec![fg(0, 0), fg(2, 0)], d, 1, false), Err(SpectralError::BadDegree { .. })));
    let bad = vec![vec![(1, 1)], vec![(2, 1)], vec![]];
    assert!(matches!(FilteredComplex::new(Ring::Q, vec![fg(0, 0), fg(1, 0), fg(2, 0)], bad, 1, false), Err(SpectralError::NotAComplex(0))));
    let d = braid_closure(&parse_braid("b=2; s1").unwrap());
    assert!(matches!(kh_to_localized_ss(&d, Theory::Kh), Err(SpectralError::Unsupported(Theory::Kh))));
}

#[test]
fn trefoil_pages() {
    let d = braid_closure(&parse_braid("b=2; s1 s1 s1").unwrap());
    assert_eq!(totals(&kh_to_localized_ss(&d, Theory::Bn).unwrap()), vec![30, 6, 2]);
    assert_eq!(totals(&kh_to_localized_ss(&d, Theory::Lee).unwrap()), vec![30, 4, 2]);
}

#[test]
fn unknot_collapses() {
    for theory in [Theory::Lee, Theory::Bn] {
        let p = kh_to_localized_ss(&Diagram::unlink(1), theory).unwrap();
        assert_eq!(totals(&p), vec![2]);
        assert!(p[0].collapsed);
    }
    let p = akh_to_kh_ss(&braid_closure(&parse_braid("b=1;").unwrap()), Ring::F2).unwrap();
    assert_eq!(totals(&p), vec![2]);
}

proptest! {
    #![proptest_config(common::config(32))]

    #[test]
    fn lee_sequence(b in braid_words(3, 6)) {
        let d = braid_closure(&b);
        let p = kh_to_localized_ss(&d, Theory::Lee).unwrap();
        check_shape(&p)?;
        if p.len() > 1 {
            prop_assert_eq!(p[1].dims_by_h(), khovanov_homology(&d, Ring::Q).unwrap().rank_by_h());
            let e1: usize = p[1].dims.values().sum();
            prop_assert_eq!(e1, khovanov_homology(&d, Ring::Q).unwrap().total_rank());
        }
        prop_assert_eq!(p.last().unwrap().dims_by_h(), lee_homology(&d).unwrap());
    }

    #[test]
    fn bar_natan_sequence(b in braid_words(3, 6)) {
        let d = braid_closure(&b);
        let p = kh_to_localized_ss(&d, Theory::Bn).unwrap();
        check_shape(&p)?;
        if p.len() > 1 {
            let kh = khovanov_homology(&d, Ring::F2).unwrap();
            for (&(h, q), &n) in &p[1].dims {
                prop_assert_eq!(n, kh.rank(h, q));
            }
            prop_assert_eq!(p[1].total_dim(), kh.total_rank());
        }
        prop_assert_eq!(p.last().unwrap().total_dim(), 1 << d.num_components());
    }

    #[test]
    fn annular_sequence(b in braid_words(3, 6)) {
        let d = braid_closure(&b);
        let p = akh_to_kh_ss(&d, Ring::F2).unwrap();
        check_shape(&p)?;
        let akh = akh_homology(&d, Ring::F2).unwrap();
        let e1 = if p.len() > 1 { &p[1] } else { &p[0] };
        if p.len() > 1 {
            prop_assert_eq!(e1.dims_by_h(), akh.rank_by_h());
        }
        prop_assert_eq!(p.last().unwrap().dims_by_h(), khovanov_homology(&d, Ring::F2).unwrap().rank_by_h());
    }
}
