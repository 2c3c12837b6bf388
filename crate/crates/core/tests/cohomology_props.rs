use proptest::prelude::*;
use rigidkit::cohomology::{
    expand_matrix, h2_group, hom_abelianization_order, remark_cocycle_sl3f2, schur_order, verify_cocycle1,
    verify_cocycle2, z1_from_presentation, z1_space, Cocycle1, Cocycle2, GModule,
};
use rigidkit::field::field_of_order;
use rigidkit::group::{construct, parse_group_spec, CayleyGroup, Limits, Matrix, MatrixGroup, MatrixKind};
use rigidkit::presentation::steinberg_presentation;

const SPECS: [&str; 8] = ["cyclic:4", "cyclic:2*cyclic:2", "sym:3", "cyclic:6", "alt:4", "sym:4", "sl:2:3", "add:2:3"];

fn group(s: &str) -> CayleyGroup {
    construct(&parse_group_spec(s).unwrap(), &Limits::default()).unwrap()
}

fn cochain(g: &CayleyGroup, m: u64, raw: &[u64]) -> Vec<u64> {
    (0..g.order()).map(|x| if x == g.identity() { 0 } else { raw[x % raw.len()] % m }).collect()
}

#[test]
fn h2_equals_schur_times_hom() {
    for s in SPECS {
        let g = group(s);
        let m = g.order() as u64;
        let h2 = h2_group(&g, m).unwrap().order;
        let schur = u128::from(schur_order(&g).unwrap());
        assert_eq!(h2, schur * hom_abelianization_order(&g, m), "{s}");
    }
}

#[test]
fn presentation_and_table_h1_agree() {
    // SL_3(F_2) is the only Steinberg case small enough for the table solver.
    let f = field_of_order(2).unwrap();
    let (p, meta) = steinberg_presentation(3, &f).unwrap();
    let acts: Vec<_> = meta
        .iter()
        .map(|&(i, j, x)| expand_matrix(&f, &Matrix::elementary(3, i, j, x)))
        .collect();
    let from_p = z1_from_presentation(&p, 2, 3, &acts).unwrap();
    let mg = MatrixGroup::new(MatrixKind::Sl, 3, f, 1 << 14).unwrap();
    let from_t = z1_space(&mg.group, &GModule::natural(&mg).unwrap()).unwrap();
    assert_eq!(from_p, from_t);
    let mg = MatrixGroup::new(MatrixKind::Sl, 3, field_of_order(3).unwrap(), 1 << 14).unwrap();
    let err = z1_space(&mg.group, &GModule::natural(&mg).unwrap()).unwrap_err();
    assert!(err.is_resource_limit());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn degree_two_coboundaries_are_cocycles(i in 0..SPECS.len(), raw in prop::collection::vec(any::<u64>(), 1..32)) {
        let g = group(SPECS[i]);
        let m = g.order() as u64;
        let w = Cocycle2::coboundary(&g, m, &cochain(&g, m, &raw));
        let c = verify_cocycle2(&g, &w);
        prop_assert!(c.is_cocycle && c.is_coboundary);
    }

    #[test]
    fn cohomologous_cocycles_verify_alike(i in 0..SPECS.len(), a in prop::collection::vec(any::<u64>(), 1..32), b in prop::collection::vec(any::<u64>(), 1..32)) {
        let g = group(SPECS[i]);
        let m = g.order() as u64;
        let base = Cocycle2::coboundary(&g, m, &cochain(&g, m, &a));
        let shift = Cocycle2::coboundary(&g, m, &cochain(&g, m, &b));
        let (x, y) = (verify_cocycle2(&g, &base), verify_cocycle2(&g, &base.add(&shift)));
        prop_assert_eq!((x.is_cocycle, x.is_coboundary), (y.is_cocycle, y.is_coboundary));
    }

    #[test]
    fn remark_class_survives_coboundaries(a in prop::collection::vec(0u64..2, 3)) {
        let r = remark_cocycle_sl3f2();
        let cob = Cocycle1::coboundary(&r.module, &a);
        let g = &r.group.group;
        let c0 = verify_cocycle1(g, &r.module, &cob);
        prop_assert!(c0.is_cocycle && c0.is_coboundary);
        let c1 = verify_cocycle1(g, &r.module, &r.cocycle.add(&cob, 2));
        prop_assert!(c1.is_cocycle && !c1.is_coboundary);
    }
}

#[test]
fn nontrivial_classes_stay_nontrivial_under_shifts() {
    // On Z/2 x Z/2 with m = 2, the cocycle (g, h) -> g_1 h_2 is not a coboundary.
    let g = group("cyclic:2*cyclic:2");
    let n = g.order();
    let mut w = Cocycle2::zero(n, 2);
    for x in 0..n {
        for y in 0..n {
            w.values[x * n + y] = ((x / 2) * (y % 2)) as u64 % 2;
        }
    }
    let base = verify_cocycle2(&g, &w);
    assert!(base.is_cocycle && !base.is_coboundary);
    for phi in 0..8u64 {
        let p: Vec<u64> = (0..n).map(|x| if x == 0 { 0 } else { (phi >> (x - 1)) & 1 }).collect();
        let c = verify_cocycle2(&g, &w.add(&Cocycle2::coboundary(&g, 2, &p)));
        assert_eq!((c.is_cocycle, c.is_coboundary), (true, false));
    }
}
