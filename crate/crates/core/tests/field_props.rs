use proptest::prelude::*;
use rigidkit::field::{field_of_order, FieldElement};

const ORDERS: [u64; 17] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31];

#[test]
fn multiplicative_group_is_cyclic() {
    for q in ORDERS {
        let f = field_of_order(q).unwrap();
        assert_eq!(f.units().count() as u64, q - 1);
        assert!(f.units().any(|a| f.mult_order(a) == Some(q - 1)), "q = {q}");
        assert_eq!(f.mult_order(f.primitive_element()), Some(q - 1));
    }
}

#[test]
fn frobenius_is_a_field_automorphism() {
    for q in ORDERS {
        let f = field_of_order(q).unwrap();
        let el: Vec<FieldElement> = f.elements().collect();
        let mut images: Vec<usize> = el.iter().map(|&a| f.frobenius(a).code()).collect();
        images.sort_unstable();
        assert!(images.into_iter().eq(0..q as usize), "q = {q}");
        for &a in &el {
            for &b in &el {
                assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
            }
        }
    }
}

proptest! {
    #[test]
    fn axioms_on_random_triples(qi in 0..ORDERS.len(), a in 0usize..31, b in 0usize..31, c in 0usize..31) {
        let q = ORDERS[qi] as usize;
        let f = field_of_order(q as u64).unwrap();
        let (a, b, c) = (f.from_code(a % q), f.from_code(b % q), f.from_code(c % q));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
        }
    }

    #[test]
    fn pow_matches_repeated_multiplication(qi in 0..ORDERS.len(), a in 0usize..31, e in 0u64..70) {
        let q = ORDERS[qi] as usize;
        let f = field_of_order(q as u64).unwrap();
        let a = f.from_code(a % q);
        let direct = (0..e).fold(FieldElement::ONE, |acc, _| f.mul(acc, a));
        prop_assert_eq!(f.pow(a, e), direct);
    }
}
