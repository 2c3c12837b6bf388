use rigidkit::group::{construct, parse_group_spec, Limits};
use rigidkit::morphism::find_isomorphism;
use rigidkit::presentation::{builtin_presentation, check_relators, todd_coxeter, Letter, Word};

const MAX_COSETS: usize = 1 << 20;

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[test]
fn orders_match_concrete_models() {
    let limits = Limits::default();
    for n in 2..=6 {
        let sym = todd_coxeter(&builtin_presentation("sym", n).unwrap(), MAX_COSETS).unwrap();
        assert_eq!(sym.order, factorial(n), "sym {n}");
        let alt = todd_coxeter(&builtin_presentation("alt", n).unwrap(), MAX_COSETS).unwrap();
        assert_eq!(alt.order, factorial(n) / 2, "alt {n}");
    }
    for n in 2..=5 {
        let a = todd_coxeter(&builtin_presentation("atilde", n).unwrap(), MAX_COSETS).unwrap();
        assert_eq!(a.order, factorial(n), "atilde {n}");
        let s = todd_coxeter(&builtin_presentation("stilde", n).unwrap(), MAX_COSETS).unwrap();
        assert_eq!(s.order, 2 * factorial(n), "stilde {n}");
    }
    for (name, n, model) in [("sym", 4, "sym:4"), ("alt", 5, "alt:5"), ("sl3f2", 3, "sl:3:2"), ("atilde", 4, "sl:2:3")] {
        let p = builtin_presentation(name, n).unwrap();
        let g = todd_coxeter(&p, MAX_COSETS).unwrap().regular_representation(&p, 1 << 14).unwrap();
        let h = construct(&parse_group_spec(model).unwrap(), &limits).unwrap();
        assert!(find_isomorphism(&g, &h).is_some(), "{name} {n} vs {model}");
    }
}

#[test]
fn regular_representation_satisfies_relators() {
    for (name, n) in [("sym", 5), ("alt", 5), ("atilde", 5), ("stilde", 4), ("sl3f2", 3)] {
        let p = builtin_presentation(name, n).unwrap();
        let e = todd_coxeter(&p, MAX_COSETS).unwrap();
        let g = e.regular_representation(&p, 1 << 14).unwrap();
        g.validate().unwrap();
        assert!(check_relators(&p, &g, &e.generator_images()).holds, "{name} {n}");
    }
}

#[test]
fn killing_z_halves_the_order() {
    for name in ["atilde", "stilde"] {
        for n in 3..=5 {
            let p = builtin_presentation(name, n).unwrap();
            let z = p.generator_index("z").unwrap();
            let q = p.with_relator(Word::new([Letter::new(z, false)])).unwrap();
            let full = todd_coxeter(&p, MAX_COSETS).unwrap().order;
            assert_eq!(todd_coxeter(&q, MAX_COSETS).unwrap().order * 2, full, "{name} {n}");
        }
    }
}

#[test]
fn three_cycle_conjugation_in_the_double_cover() {
    let n = 5;
    let p = builtin_presentation("atilde", n).unwrap();
    let e = todd_coxeter(&p, MAX_COSETS).unwrap();
    let g = e.regular_representation(&p, 1 << 14).unwrap();
    let images = e.generator_images();
    let s = |t: [usize; 3]| {
        let name = format!("s({}{}{})", t[0] + 1, t[1] + 1, t[2] + 1);
        images[p.generator_index(&name).unwrap()]
    };
    let triples: Vec<[usize; 3]> = (0..n)
        .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| [a, b, c])))
        .filter(|t| t[0] != t[1] && t[1] != t[2] && t[0] != t[2])
        .collect();
    for &abc in &triples {
        let phi = |x: usize| match abc.iter().position(|&y| y == x) {
            Some(i) => abc[(i + 1) % 3],
            None => x,
        };
        let x = s(abc);
        for &xyz in &triples {
            let lhs = g.mul(g.mul(x, s(xyz)), g.inv(x));
            assert_eq!(lhs, s([phi(xyz[0]), phi(xyz[1]), phi(xyz[2])]), "{abc:?} {xyz:?}");
        }
    }
}
