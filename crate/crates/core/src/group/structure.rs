use std::collections::HashSet;

use serde::Serialize;

use super::{CayleyGroup, Subgroup};
use crate::arith::{factorize, invariant_factors};
use crate::error::{Error, Result};
use crate::morphism::is_automorphism;

pub fn center(g: &CayleyGroup) -> Subgroup<'_> {
    let gens = g.quick_generating_set();
    let members = (0..g.order())
        .filter(|&z| gens.iter().all(|&s| g.mul(z, s) == g.mul(s, z)))
        .collect();
    Subgroup { parent: g, members }
}

/// Normal closure of `seeds` under conjugation by the whole group.
fn normal_closure(g: &CayleyGroup, seeds: Vec<usize>) -> Vec<usize> {
    let gens = g.quick_generating_set();
    let mut w = seeds;
    w.retain(|&x| x != g.identity());
    w.sort_unstable();
    w.dedup();
    let mut mask = vec![false; g.order()];
    loop {
        let members = g.right_closure(&w);
        mask.iter_mut().for_each(|b| *b = false);
        for &x in &members {
            mask[x] = true;
        }
        let fresh = w
            .iter()
            .flat_map(|&x| gens.iter().map(move |&s| (s, x)))
            .map(|(s, x)| g.conj(s, x))
            .find(|&y| !mask[y]);
        match fresh {
            Some(y) => w.push(y),
            None => {
                let mut m = members;
                m.sort_unstable();
                return m;
            }
        }
    }
}

pub fn commutator_subgroup(g: &CayleyGroup) -> Subgroup<'_> {
    let gens = g.quick_generating_set();
    let seeds: Vec<usize> = gens
        .iter()
        .flat_map(|&a| gens.iter().map(move |&b| (a, b)))
        .map(|(a, b)| g.commutator(a, b))
        .collect();
    Subgroup {
        parent: g,
        members: normal_closure(g, seeds),
    }
}

#[derive(Clone, Debug)]
pub struct DerivedData<'g> {
    pub commutator: Subgroup<'g>,
    /// Invariant factors of `G / [G, G]`, ascending, each dividing the next.
    pub abelianization: Vec<u64>,
    pub is_perfect: bool,
}

/// Invariant factors of `G / N` for a normal subgroup `N` with abelian
/// quotient, read off from the sizes of the `p^j`-torsion subgroups.
fn abelian_quotient_factors(g: &CayleyGroup, normal: &[usize]) -> Vec<u64> {
    let n = g.order();
    let index = n / normal.len();
    if index == 1 {
        return Vec::new();
    }
    let mut mask = vec![false; n];
    for &x in normal {
        mask[x] = true;
    }
    // Order of each coset x N, computed once per element (constant on cosets).
    let quotient_order = |x: usize| -> u64 {
        let mut y = x;
        let mut k = 1;
        while !mask[y] {
            y = g.mul(y, x);
            k += 1;
        }
        k
    };
    let orders: Vec<u64> = (0..n).map(quotient_order).collect();
    let per_coset = normal.len() as u64;
    let mut per_prime = Vec::new();
    for (p, e) in factorize(index as u64) {
        let mut torsion = vec![1u64]; // |A[p^0]|
        let mut pj = 1u64;
        for _ in 1..=e {
            pj *= p;
            let count = orders.iter().filter(|&&o| pj % o == 0).count() as u64 / per_coset;
            torsion.push(count);
        }
        // r_j = number of cyclic p-factors of exponent >= j.
        let log_p = |mut v: u64| {
            let mut l = 0u32;
            while v > 1 {
                v /= p;
                l += 1;
            }
            l
        };
        let r: Vec<u32> = (1..torsion.len())
            .map(|j| log_p(torsion[j] / torsion[j - 1]))
            .collect();
        let mut exps = Vec::new();
        for j in 0..r.len() {
            let next = r.get(j + 1).copied().unwrap_or(0);
            for _ in 0..r[j] - next {
                exps.push(j as u32 + 1);
            }
        }
        per_prime.push((p, exps));
    }
    invariant_factors(&per_prime)
}

pub fn derived_data(g: &CayleyGroup) -> DerivedData<'_> {
    let commutator = commutator_subgroup(g);
    let abelianization = abelian_quotient_factors(g, &commutator.members);
    let is_perfect = commutator.order() == g.order();
    debug_assert_eq!(
        abelianization.iter().product::<u64>(),
        (g.order() / commutator.order()) as u64
    );
    DerivedData {
        commutator,
        abelianization,
        is_perfect,
    }
}

#[derive(Clone, Debug)]
pub struct SylowData<'g> {
    pub p: u64,
    pub count: usize,
    pub witness: Subgroup<'g>,
    pub normalizer_order: usize,
}

fn normalizer(g: &CayleyGroup, mask: &[bool], members: &[usize]) -> Vec<usize> {
    (0..g.order())
        .filter(|&x| members.iter().all(|&h| mask[g.conj(x, h)]))
        .collect()
}

pub fn sylow(g: &CayleyGroup, p: u64) -> Result<SylowData<'_>> {
    let n = g.order();
    if p < 2 || n as u64 % p != 0 || !crate::arith::is_prime(p) {
        return Err(Error::PrimeDoesNotDivideOrder { p, order: n });
    }
    let mut full = 1usize;
    while n % (full * p as usize) == 0 {
        full *= p as usize;
    }
    let mut gens: Vec<usize> = Vec::new();
    let mut members = vec![g.identity()];
    let mut mask = vec![false; n];
    mask[g.identity()] = true;
    while members.len() < full {
        let norm = normalizer(g, &mask, &members);
        let x = norm
            .into_iter()
            .find(|&x| !mask[x] && mask[g.pow(x, p)])
            .expect("a non-Sylow p-subgroup has a p-extension in its normalizer");
        gens.push(x);
        members = g.closure(&gens);
        mask.iter_mut().for_each(|b| *b = false);
        for &y in &members {
            mask[y] = true;
        }
    }
    let witness = Subgroup { parent: g, members };
    let normalizer_order = normalizer(g, &mask, &witness.members).len();
    let conjugates: HashSet<Vec<usize>> =
        (0..n).map(|x| witness.conjugate_members(x)).collect();
    let count = conjugates.len();
    assert_eq!(count * normalizer_order, n, "orbit-stabilizer");
    assert_eq!(count as u64 % p, 1, "Sylow congruence");
    assert_eq!((n / full) % count, 0, "Sylow count divides the index");
    Ok(SylowData {
        p,
        count,
        witness,
        normalizer_order,
    })
}

/// Common fixed points of a list of automorphisms, each verified first.
pub fn fixed_point_subgroup<'g>(g: &'g CayleyGroup, autos: &[Vec<usize>]) -> Result<Subgroup<'g>> {
    for (i, a) in autos.iter().enumerate() {
        if !is_automorphism(g, a) {
            return Err(Error::NotAnAutomorphism(i));
        }
    }
    let members = (0..g.order())
        .filter(|&x| autos.iter().all(|a| a[x] == x))
        .collect();
    let s = Subgroup { parent: g, members };
    debug_assert!(s.check().is_ok());
    Ok(s)
}

/// Conjugacy classes, each sorted, ordered by least member.
pub fn conjugacy_classes(g: &CayleyGroup) -> Vec<Vec<usize>> {
    let gens = g.quick_generating_set();
    let mut class_of = vec![usize::MAX; g.order()];
    let mut classes = Vec::new();
    for x in 0..g.order() {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut class = vec![x];
        class_of[x] = id;
        let mut i = 0;
        while i < class.len() {
            let y = class[i];
            i += 1;
            for &s in &gens {
                let z = g.conj(s, y);
                if class_of[z] == usize::MAX {
                    class_of[z] = id;
                    class.push(z);
                }
            }
        }
        class.sort_unstable();
        classes.push(class);
    }
    classes
}

/// Isomorphism-invariant fingerprint of a group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ConjugacyProfile {
    pub order: usize,
    /// `(element order, class size)` per conjugacy class, sorted.
    pub classes: Vec<(usize, usize)>,
    pub center_order: usize,
    pub commutator_order: usize,
}

pub fn conjugacy_profile(g: &CayleyGroup) -> ConjugacyProfile {
    let mut classes: Vec<(usize, usize)> = conjugacy_classes(g)
        .iter()
        .map(|c| (g.element_order(c[0]), c.len()))
        .collect();
    classes.sort_unstable();
    ConjugacyProfile {
        order: g.order(),
        classes,
        center_order: center(g).order(),
        commutator_order: commutator_subgroup(g).order(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, direct_product, PermutationGroup};

    #[test]
    fn center_and_commutator_of_s4() {
        let s4 = PermutationGroup::symmetric(4, 100).unwrap().group;
        assert_eq!(center(&s4).order(), 1);
        let d = derived_data(&s4);
        assert_eq!(d.commutator.order(), 12);
        assert_eq!(d.abelianization, vec![2]);
        assert!(!d.is_perfect);
    }

    #[test]
    fn abelianization_of_abelian_groups() {
        let g = direct_product(&cyclic(4).unwrap(), &cyclic(6).unwrap()).unwrap();
        assert_eq!(derived_data(&g).abelianization, vec![2, 12]);
        let k = direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap();
        assert_eq!(derived_data(&k).abelianization, vec![2, 2]);
    }

    #[test]
    fn sylow_counts() {
        let s4 = PermutationGroup::symmetric(4, 100).unwrap().group;
        assert_eq!(sylow(&s4, 2).unwrap().count, 3);
        assert_eq!(sylow(&s4, 3).unwrap().count, 4);
        assert!(matches!(sylow(&s4, 5), Err(Error::PrimeDoesNotDivideOrder { .. })));
        assert_eq!(sylow(&cyclic(6).unwrap(), 3).unwrap().count, 1);
    }

    #[test]
    fn s3_classes() {
        let s3 = PermutationGroup::symmetric(3, 100).unwrap().group;
        let mut sizes: Vec<usize> = conjugacy_classes(&s3).iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
    }

    #[test]
    fn profiles_separate_z4_and_k4() {
        let z4 = cyclic(4).unwrap();
        let k4 = direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap();
        assert_ne!(conjugacy_profile(&z4), conjugacy_profile(&k4));
    }

    #[test]
    fn empty_automorphism_list_fixes_everything() {
        let g = cyclic(5).unwrap();
        assert_eq!(fixed_point_subgroup(&g, &[]).unwrap().order(), 5);
        let bad = vec![0, 2, 1, 3, 4];
        assert!(matches!(fixed_point_subgroup(&g, &[bad]), Err(Error::NotAnAutomorphism(0))));
    }
}
