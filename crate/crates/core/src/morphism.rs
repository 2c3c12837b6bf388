//! Homomorphism verification, isomorphism search and automorphism groups.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{center, conjugacy_classes, conjugacy_profile, CayleyGroup};

/// Default bound on the group order for full automorphism enumeration.
pub const AUT_MAX_ORDER: usize = 1 << 9;

/// Cap on the number of automorphisms stored explicitly.
pub const AUT_MAX_ELEMENTS: usize = 1 << 20;

/// A homomorphism stored as the full image list of its domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Homomorphism {
    pub images: Vec<usize>,
}

impl Homomorphism {
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = HashSet::new();
        self.images.iter().all(|&y| seen.insert(y))
    }

    /// `self` after `first`.
    pub fn after(&self, first: &Homomorphism) -> Homomorphism {
        Homomorphism {
            images: first.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    /// Exhaustive check of `f(xy) = f(x) f(y)` on all pairs.
    pub fn preserves_all_products(&self, g: &CayleyGroup, h: &CayleyGroup) -> bool {
        (0..g.order()).all(|x| {
            (0..g.order()).all(|y| self.images[g.mul(x, y)] == h.mul(self.images[x], self.images[y]))
        })
    }
}

/// Whether `perm` is a bijection of `g` preserving products. Checking
/// `f(x s) = f(x) f(s)` for `s` in a generating set is exact.
pub fn is_automorphism(g: &CayleyGroup, perm: &[usize]) -> bool {
    let n = g.order();
    if perm.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &y in perm {
        if y >= n || seen[y] {
            return false;
        }
        seen[y] = true;
    }
    let gens = g.quick_generating_set();
    (0..n).all(|x| gens.iter().all(|&s| perm[g.mul(x, s)] == g.mul(perm[x], perm[s])))
}

/// Extends `gens[i] -> gen_images[i]` to a homomorphism `G -> H`, or
/// reports why no extension exists.
pub fn verify_homomorphism(
    g: &CayleyGroup,
    h: &CayleyGroup,
    gens: &[usize],
    gen_images: &[usize],
) -> Result<Homomorphism> {
    if gens.len() != gen_images.len() {
        return Err(Error::BadParameters("one image per generator required".into()));
    }
    if gens.iter().any(|&x| x >= g.order()) || gen_images.iter().any(|&y| y >= h.order()) {
        return Err(Error::BadParameters("element index out of range".into()));
    }
    let tree = g.schreier_tree(gens);
    let order = g.bfs_order(gens);
    if order.len() != g.order() {
        return Err(Error::NotGenerating {
            reached: order.len(),
            order: g.order(),
        });
    }
    let mut images = vec![usize::MAX; g.order()];
    images[g.identity()] = h.identity();
    for &x in &order[1..] {
        let (parent, i) = tree[x].expect("reached elements have a parent");
        images[x] = h.mul(images[parent], gen_images[i]);
    }
    for x in 0..g.order() {
        for (i, &s) in gens.iter().enumerate() {
            let expected = h.mul(images[x], gen_images[i]);
            let actual = images[g.mul(x, s)];
            if expected != actual {
                return Err(Error::RelationViolated {
                    left: x,
                    right: s,
                    expected,
                    actual,
                });
            }
        }
    }
    Ok(Homomorphism { images })
}

/// Per-element invariant: `(order, class size)` of `x^d` for each divisor
/// `d` of the order of `x`.
fn power_signatures(g: &CayleyGroup) -> Vec<Vec<(usize, usize)>> {
    let mut class_size = vec![0usize; g.order()];
    for c in conjugacy_classes(g) {
        for &x in &c {
            class_size[x] = c.len();
        }
    }
    let orders = g.element_orders();
    (0..g.order())
        .map(|x| {
            let o = orders[x];
            (1..=o)
                .filter(|d| o % d == 0)
                .map(|d| {
                    let y = g.pow(x, d as u64);
                    (orders[y], class_size[y])
                })
                .collect()
        })
        .collect()
}

struct Search<'a> {
    g: &'a CayleyGroup,
    h: &'a CayleyGroup,
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn new<'a>(g: &'a CayleyGroup, h: &'a CayleyGroup) -> Search<'a> {
        let gens = g.generating_set();
        let sg = power_signatures(g);
        let sh = power_signatures(h);
        let mut by_sig: HashMap<&Vec<(usize, usize)>, Vec<usize>> = HashMap::new();
        for (y, s) in sh.iter().enumerate() {
            by_sig.entry(s).or_default().push(y);
        }
        let candidates = gens
            .iter()
            .map(|&x| by_sig.get(&sg[x]).cloned().unwrap_or_default())
            .collect();
        Search {
            g,
            h,
            gens,
            candidates,
        }
    }

    /// Extends the assignment of the first `imgs.len()` generators over
    /// the subgroup they generate; `None` on a conflict or a collision.
    fn extend(&self, imgs: &[usize]) -> Option<Vec<usize>> {
        let (g, h) = (self.g, self.h);
        let gens = &self.gens[..imgs.len()];
        let mut map = vec![usize::MAX; g.order()];
        let mut used = vec![false; h.order()];
        map[g.identity()] = h.identity();
        used[h.identity()] = true;
        let mut queue = vec![g.identity()];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            i += 1;
            for (j, &s) in gens.iter().enumerate() {
                let y = g.mul(x, s);
                let fy = h.mul(map[x], imgs[j]);
                if map[y] == usize::MAX {
                    if used[fy] {
                        return None;
                    }
                    used[fy] = true;
                    map[y] = fy;
                    queue.push(y);
                } else if map[y] != fy {
                    return None;
                }
            }
        }
        Some(map)
    }

    fn dfs(&self, imgs: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, first_only: bool, cap: usize) -> bool {
        if imgs.len() == self.gens.len() {
            if let Some(map) = self.extend(imgs) {
                out.push(map);
                if first_only || out.len() > cap {
                    return true;
                }
            }
            return false;
        }
        let level = imgs.len();
        for &c in &self.candidates[level] {
            imgs.push(c);
            let ok = self.extend(imgs).is_some();
            if ok && self.dfs(imgs, out, first_only, cap) {
                imgs.pop();
                return true;
            }
            imgs.pop();
        }
        false
    }

    /// All injective extensions, or the first one, searched in parallel
    /// over the candidate images of the first generator.
    fn run(&self, first_only: bool, cap: usize) -> Vec<Vec<usize>> {
        if self.gens.is_empty() {
            return vec![vec![self.h.identity(); self.g.order()]];
        }
        let branch = |&c: &usize| {
            let mut out = Vec::new();
            let mut imgs = vec![c];
            if self.extend(&imgs).is_some() {
                self.dfs(&mut imgs, &mut out, first_only, cap);
            }
            out
        };
        if first_only {
            self.candidates[0]
                .par_iter()
                .map(branch)
                .find_map_first(|v| v.into_iter().next())
                .into_iter()
                .collect()
        } else {
            let parts: Vec<Vec<Vec<usize>>> = self.candidates[0].par_iter().map(branch).collect();
            parts.into_iter().flatten().collect()
        }
    }
}

/// Result of an isomorphism query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoOutcome {
    Isomorphic(Homomorphism),
    /// Not isomorphic, with the first invariant found to differ.
    Distinct(String),
}

pub fn isomorphism_outcome(g: &CayleyGroup, h: &CayleyGroup) -> IsoOutcome {
    if g.order() != h.order() {
        return IsoOutcome::Distinct(format!("orders {} and {}", g.order(), h.order()));
    }
    if g.is_abelian() != h.is_abelian() {
        return IsoOutcome::Distinct("abelianness".into());
    }
    let (pg, ph) = (conjugacy_profile(g), conjugacy_profile(h));
    if pg != ph {
        let what = if pg.center_order != ph.center_order {
            "center order"
        } else if pg.commutator_order != ph.commutator_order {
            "commutator subgroup order"
        } else {
            "element order and class size multiset"
        };
        return IsoOutcome::Distinct(what.into());
    }
    let s = Search::new(g, h);
    match s.run(true, 1).into_iter().next() {
        Some(images) => {
            debug_assert!(is_bijective_hom(g, h, &images));
            IsoOutcome::Isomorphic(Homomorphism { images })
        }
        None => IsoOutcome::Distinct("exhaustive search over generator images".into()),
    }
}

fn is_bijective_hom(g: &CayleyGroup, h: &CayleyGroup, images: &[usize]) -> bool {
    let hom = Homomorphism {
        images: images.to_vec(),
    };
    hom.is_injective() && hom.preserves_all_products(g, h)
}

pub fn find_isomorphism(g: &CayleyGroup, h: &CayleyGroup) -> Option<Homomorphism> {
    match isomorphism_outcome(g, h) {
        IsoOutcome::Isomorphic(f) => Some(f),
        IsoOutcome::Distinct(_) => None,
    }
}

/// All automorphisms of a group, stored as index permutations in
/// lexicographic order.
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    pub generators: Vec<Vec<usize>>,
    pub elements: Vec<Vec<usize>>,
}

impl AutomorphismGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, perm: &[usize]) -> bool {
        self.elements
            .binary_search_by(|e| e.as_slice().cmp(perm))
            .is_ok()
    }
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

/// A generating set of a permutation group given by all its elements:
/// scan in order, keeping each element outside the span so far.
fn greedy_generators(elements: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut gens: Vec<Vec<usize>> = Vec::new();
    let mut span: HashSet<Vec<usize>> = HashSet::new();
    if let Some(e) = elements.first() {
        span.insert((0..e.len()).collect());
    }
    for x in elements {
        if span.contains(x) {
            continue;
        }
        gens.push(x.clone());
        let mut frontier: Vec<Vec<usize>> = span.iter().cloned().collect();
        while let Some(y) = frontier.pop() {
            for s in &gens {
                let z = compose(&y, s);
                if span.insert(z.clone()) {
                    frontier.push(z);
                }
            }
        }
    }
    gens
}

pub fn automorphism_group(g: &CayleyGroup) -> Result<AutomorphismGroup> {
    automorphism_group_bounded(g, AUT_MAX_ORDER)
}

pub fn automorphism_group_bounded(g: &CayleyGroup, max_order: usize) -> Result<AutomorphismGroup> {
    if g.order() > max_order {
        return Err(Error::TooLarge(format!(
            "automorphism enumeration limited to order {max_order}"
        )));
    }
    let s = Search::new(g, g);
    let mut elements = s.run(false, AUT_MAX_ELEMENTS);
    if elements.len() > AUT_MAX_ELEMENTS {
        return Err(Error::TooLarge(format!(
            "more than {AUT_MAX_ELEMENTS} automorphisms"
        )));
    }
    elements.sort_unstable();
    let generators = greedy_generators(&elements);
    Ok(AutomorphismGroup {
        generators,
        elements,
    })
}

/// Inner automorphisms and the order of the outer automorphism group.
#[derive(Clone, Debug)]
pub struct InnerData {
    pub inner: Vec<Vec<usize>>,
    pub inner_order: usize,
    pub out_order: usize,
}

pub fn inner_automorphisms(g: &CayleyGroup) -> Vec<Vec<usize>> {
    let mut inner: Vec<Vec<usize>> = (0..g.order())
        .map(|a| (0..g.order()).map(|x| g.conj(a, x)).collect())
        .collect();
    inner.sort_unstable();
    inner.dedup();
    inner
}

pub fn inner_embedding(g: &CayleyGroup, aut: &AutomorphismGroup) -> InnerData {
    let inner = inner_automorphisms(g);
    assert_eq!(inner.len() * center(g).order(), g.order(), "|Inn G| |Z(G)| = |G|");
    assert!(inner.iter().all(|a| aut.contains(a)), "inner automorphisms are automorphisms");
    assert_eq!(aut.order() % inner.len(), 0);
    InnerData {
        inner_order: inner.len(),
        out_order: aut.order() / inner.len(),
        inner,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, direct_product, PermutationGroup};

    #[test]
    fn small_automorphism_groups() {
        assert_eq!(automorphism_group(&cyclic(6).unwrap()).unwrap().order(), 2);
        assert_eq!(automorphism_group(&cyclic(8).unwrap()).unwrap().order(), 4);
        let s3 = PermutationGroup::symmetric(3, 100).unwrap().group;
        let aut = automorphism_group(&s3).unwrap();
        assert_eq!(aut.order(), 6);
        assert_eq!(inner_embedding(&s3, &aut).out_order, 1);
        let k4 = direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap();
        let aut = automorphism_group(&k4).unwrap();
        let inner = inner_embedding(&k4, &aut);
        assert_eq!((inner.inner_order, inner.out_order), (1, 6));
    }

    #[test]
    fn sign_map_is_a_homomorphism() {
        let s4 = PermutationGroup::symmetric(4, 100).unwrap();
        let z2 = cyclic(2).unwrap();
        let gens: Vec<usize> = s4
            .elements
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_even() && s4.group.element_order(s4.index_of(p).unwrap()) == 2)
            .map(|(i, _)| i)
            .collect();
        let f = verify_homomorphism(&s4.group, &z2, &gens, &vec![1; gens.len()]).unwrap();
        assert!(f.preserves_all_products(&s4.group, &z2));
    }

    #[test]
    fn wrong_images_are_rejected() {
        let z3 = cyclic(3).unwrap();
        let z2 = cyclic(2).unwrap();
        assert!(matches!(
            verify_homomorphism(&z3, &z2, &[1], &[1]),
            Err(Error::RelationViolated { .. })
        ));
        assert!(matches!(
            verify_homomorphism(&z3, &z2, &[0], &[0]),
            Err(Error::NotGenerating { .. })
        ));
    }

    #[test]
    fn isomorphism_queries() {
        let s3 = PermutationGroup::symmetric(3, 100).unwrap().group;
        assert!(find_isomorphism(&s3, &cyclic(6).unwrap()).is_none());
        let z6 = direct_product(&cyclic(2).unwrap(), &cyclic(3).unwrap()).unwrap();
        let f = find_isomorphism(&z6, &cyclic(6).unwrap()).unwrap();
        assert!(f.is_injective());
    }

    #[test]
    fn automorphism_store_is_closed() {
        let s3 = PermutationGroup::symmetric(3, 100).unwrap().group;
        let aut = automorphism_group(&s3).unwrap();
        for a in &aut.elements {
            for b in &aut.elements {
                assert!(aut.contains(&compose(a, b)));
            }
        }
    }
}
