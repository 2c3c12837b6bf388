use super::Presentation;
use crate::error::{Error, Result};
use crate::group::CayleyGroup;
use crate::morphism::{verify_homomorphism, Homomorphism};

/// All homomorphisms `s: Q -> E` with `theta . s = id`, where `Q` is
/// presented by `pq` through the generator images `q_images`.
///
/// Generator images are chosen from the fibers of `theta`; each relator
/// is evaluated as soon as all of its generators are assigned.
pub fn enumerate_sections(
    e: &CayleyGroup,
    q: &CayleyGroup,
    theta: &Homomorphism,
    pq: &Presentation,
    q_images: &[usize],
) -> Result<Vec<Homomorphism>> {
    if theta.images.len() != e.order() || q_images.len() != pq.generators.len() {
        return Err(Error::BadParameters("size mismatch between map, presentation and groups".into()));
    }
    let mut hit = vec![false; q.order()];
    for &y in &theta.images {
        hit[y] = true;
    }
    if hit.contains(&false) {
        return Err(Error::BadParameters("quotient map is not surjective".into()));
    }
    let ngens = q_images.len();
    let fibers: Vec<Vec<usize>> = q_images
        .iter()
        .map(|&y| (0..e.order()).filter(|&x| theta.images[x] == y).collect())
        .collect();
    let mut due: Vec<Vec<usize>> = vec![Vec::new(); ngens];
    for (r, w) in pq.relators.iter().enumerate() {
        if let Some(m) = w.max_generator() {
            due[m].push(r);
        }
    }
    let mut found = Vec::new();
    let mut assigned = vec![0usize; ngens];
    search(e, pq, &fibers, &due, 0, &mut assigned, &mut found);
    let gens_in_q = q_images.to_vec();
    let mut out = Vec::new();
    for imgs in found {
        let s = verify_homomorphism(q, e, &gens_in_q, &imgs)?;
        assert!(
            (0..q.order()).all(|y| theta.images[s.images[y]] == y),
            "a section composes to the identity"
        );
        out.push(s);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn search(
    e: &CayleyGroup,
    pq: &Presentation,
    fibers: &[Vec<usize>],
    due: &[Vec<usize>],
    level: usize,
    assigned: &mut Vec<usize>,
    found: &mut Vec<Vec<usize>>,
) {
    if level == fibers.len() {
        found.push(assigned.clone());
        return;
    }
    for &x in &fibers[level] {
        assigned[level] = x;
        let ok = due[level]
            .iter()
            .all(|&r| pq.relators[r].evaluate(e, assigned) == e.identity());
        if ok {
            search(e, pq, fibers, due, level + 1, assigned, found);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, direct_product, PermutationGroup};
    use crate::presentation::builtin_presentation;

    #[test]
    fn trivial_extension_splits() {
        let s3 = PermutationGroup::symmetric(3, 100).unwrap();
        let z2 = cyclic(2).unwrap();
        let e = direct_product(&s3.group, &z2).unwrap();
        let theta = Homomorphism {
            images: (0..e.order()).map(|x| x / 2).collect(),
        };
        let p = builtin_presentation("sym", 3).unwrap();
        let images: Vec<usize> = [[0usize, 1], [0, 2], [1, 2]]
            .iter()
            .map(|c| s3.index_of(&crate::group::Perm::from_cycles(3, &[c]).unwrap()).unwrap())
            .collect();
        let secs = enumerate_sections(&e, &s3.group, &theta, &p, &images).unwrap();
        // Hom(S_3, Z/2) has two elements, so there are two sections.
        assert_eq!(secs.len(), 2);
    }
}
