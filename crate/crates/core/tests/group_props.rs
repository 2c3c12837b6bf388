use proptest::prelude::*;
use rigidkit::group::{
    center, commutator_subgroup, construct, parse_group_spec, sl_order, sylow, CayleyGroup, Limits,
};
use rigidkit::morphism::{automorphism_group, find_isomorphism, inner_automorphisms};

const SPECS: [&str; 16] = [
    "cyclic:1", "cyclic:6", "sym:3", "sym:4", "alt:4", "alt:5", "sl:2:3", "sl:2:5", "sl:3:2", "pgl:2:3",
    "psl:2:5", "affsl:2:2", "atilde:4", "stilde:4", "cyclic:2*cyclic:2", "add:2:3",
];

fn group(s: &str) -> CayleyGroup {
    construct(&parse_group_spec(s).unwrap(), &Limits::default()).unwrap()
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn prime_divisors(mut n: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p as u64);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n as u64);
    }
    out
}

#[test]
fn constructed_groups_validate() {
    for s in SPECS {
        group(s).validate().unwrap_or_else(|e| panic!("{s}: {e}"));
    }
}

#[test]
fn order_formulas() {
    for (n, q) in [(2usize, 2u64), (2, 3), (2, 4), (2, 5), (3, 2), (2, 7)] {
        assert_eq!(group(&format!("sl:{n}:{q}")).order() as u128, sl_order(n as u32, q));
    }
    for n in 2..=5 {
        assert_eq!(group(&format!("sym:{n}")).order(), factorial(n));
        assert_eq!(group(&format!("atilde:{n}")).order(), factorial(n));
        assert_eq!(group(&format!("stilde:{n}")).order(), 2 * factorial(n));
    }
}

#[test]
fn sylow_counts_are_one_mod_p() {
    for s in SPECS {
        let g = group(s);
        for p in prime_divisors(g.order()) {
            let d = sylow(&g, p).unwrap();
            assert_eq!(d.count as u64 % p, 1, "{s}, p = {p}");
            assert_eq!(d.count * d.normalizer_order, g.order(), "{s}, p = {p}");
        }
    }
}

#[test]
fn center_and_commutator_are_characteristic() {
    for s in ["sym:4", "sl:2:3", "cyclic:6", "alt:4", "stilde:4", "sl:2:5"] {
        let g = group(s);
        let z = center(&g);
        let d = commutator_subgroup(&g);
        z.check().unwrap();
        d.check().unwrap();
        for a in &automorphism_group(&g).unwrap().elements {
            assert!(z.members.iter().all(|&x| z.contains(a[x])), "{s}");
            assert!(d.members.iter().all(|&x| d.contains(a[x])), "{s}");
        }
    }
}

#[test]
fn automorphism_groups_are_closed() {
    for s in ["sym:3", "cyclic:2*cyclic:2", "alt:4", "cyclic:6", "sl:2:3"] {
        let aut = automorphism_group(&group(s)).unwrap();
        for a in &aut.elements {
            for b in &aut.elements {
                let ab: Vec<usize> = b.iter().map(|&x| a[x]).collect();
                assert!(aut.contains(&ab), "{s}");
            }
        }
    }
}

#[test]
fn inner_times_center_is_order() {
    for s in SPECS {
        let g = group(s);
        let mut inner = inner_automorphisms(&g);
        inner.sort();
        inner.dedup();
        assert_eq!(inner.len() * center(&g).order(), g.order(), "{s}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn isomorphism_search_is_symmetric(i in 0..SPECS.len(), j in 0..SPECS.len()) {
        let (g, h) = (group(SPECS[i]), group(SPECS[j]));
        let f = find_isomorphism(&g, &h);
        prop_assert_eq!(f.is_some(), find_isomorphism(&h, &g).is_some());
        if let Some(f) = f {
            prop_assert!(f.is_injective());
            prop_assert!(f.preserves_all_products(&g, &h));
        }
    }

    #[test]
    fn relabeled_groups_are_isomorphic(i in 0..SPECS.len(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let g = group(SPECS[i]);
        let mut p: Vec<usize> = (0..g.order()).collect();
        p.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let h = g.relabeled(&p).unwrap();
        h.validate().unwrap();
        let f = find_isomorphism(&g, &h);
        prop_assert!(f.is_some_and(|f| f.preserves_all_products(&g, &h)));
    }
}
