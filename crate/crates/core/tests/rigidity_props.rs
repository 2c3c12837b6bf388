use proptest::prelude::*;
use rigidkit::group::{construct, parse_group_spec, CayleyGroup, Limits};
use rigidkit::morphism::{find_isomorphism, is_automorphism};
use rigidkit::oracle::canonical_table;
use rigidkit::rigidity::{equivariant_structures, rigidity_check, GroupAction, SearchOptions};
use rigidkit::suite::{aut_action, gl_action, units_action};

fn group(s: &str) -> CayleyGroup {
    construct(&parse_group_spec(s).unwrap(), &Limits::default()).unwrap()
}

fn instances() -> Vec<(String, CayleyGroup, GroupAction)> {
    let mut out = Vec::new();
    for s in ["cyclic:4", "sym:3", "cyclic:2*cyclic:2", "cyclic:5", "cyclic:6"] {
        let g = group(s);
        let a = aut_action(&g).unwrap();
        out.push((s.to_string(), g, a));
    }
    for q in [4, 5, 7] {
        let (g, a) = units_action(q).unwrap();
        out.push((format!("units {q}"), g, a));
    }
    let (g, a) = gl_action(2, 2).unwrap();
    out.push(("gl 2 2".into(), g, a));
    out
}

fn classes(s: &[CayleyGroup]) -> Vec<Vec<usize>> {
    let mut v: Vec<Vec<usize>> = s.iter().map(canonical_table).collect();
    v.sort();
    v
}

#[test]
fn structures_are_sound_and_contain_k() {
    for (name, k, act) in instances() {
        let v = rigidity_check(&k, &act, &SearchOptions::default()).unwrap();
        assert!(v.structures.iter().any(|s| find_isomorphism(s, &k).is_some()), "{name}");
        for s in &v.structures {
            s.validate().unwrap();
            assert!(act.elements.iter().all(|a| is_automorphism(s, a)), "{name}");
        }
        assert_eq!(v.rigid, v.structures.len() == 1, "{name}");
    }
}

#[test]
fn fixed_point_rule_is_conservative() {
    for (name, _, act) in instances() {
        let on = equivariant_structures(&act, &SearchOptions::default()).unwrap();
        let off = equivariant_structures(&act, &SearchOptions { fixed_point_rule: false, ..SearchOptions::default() })
            .unwrap();
        assert_eq!(classes(&on.structures), classes(&off.structures), "{name}");
        assert!(on.nodes <= off.nodes, "{name}: {} > {}", on.nodes, off.nodes);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn relabeling_preserves_the_classes(i in 0usize..9, seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let (_, k, act) = instances().swap_remove(i);
        let mut s: Vec<usize> = (0..k.order()).collect();
        s.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let base = equivariant_structures(&act, &SearchOptions::default()).unwrap();
        let moved = equivariant_structures(&act.conjugated(&s), &SearchOptions::default()).unwrap();
        prop_assert_eq!(classes(&base.structures), classes(&moved.structures));
    }
}
