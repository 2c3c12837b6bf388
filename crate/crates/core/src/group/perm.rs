use super::builder::build_concrete;
use super::CayleyGroup;
use crate::error::{Error, Result};

/// A permutation of `0..n` stored by images. Products compose right to
/// left: `(a * b)(x) = a(b(x))`, so `(1 2)(2 3) = (1 2 3)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(pub Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u8).collect())
    }

    /// Permutation of `0..n` from 0-based cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut img: Vec<u8> = (0..n as u8).collect();
        let mut used = vec![false; n];
        for c in cycles {
            for (i, &a) in c.iter().enumerate() {
                if a >= n || used[a] {
                    return Err(Error::BadParameters(format!("bad cycle {c:?}")));
                }
                used[a] = true;
                img[a] = c[(i + 1) % c.len()] as u8;
            }
        }
        Ok(Perm(img))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm(inv)
    }

    pub fn is_even(&self) -> bool {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut transpositions = 0;
        for s in 0..n {
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            if len > 0 {
                transpositions += len - 1;
            }
        }
        transpositions % 2 == 0
    }

    /// Cycle notation with 1-based points, `()` for the identity.
    pub fn cycle_string(&self) -> String {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for s in 0..n {
            if seen[s] || self.0[s] as usize == s {
                continue;
            }
            out.push('(');
            let mut x = s;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    out.push(' ');
                }
                out.push_str(&(x + 1).to_string());
                first = false;
                x = self.0[x] as usize;
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

/// A permutation group with its elements in lexicographic image order.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    pub degree: usize,
    pub group: CayleyGroup,
    pub elements: Vec<Perm>,
}

impl PermutationGroup {
    pub fn generated(degree: usize, gens: &[Perm], max_order: usize) -> Result<Self> {
        if gens.iter().any(|g| g.degree() != degree) {
            return Err(Error::BadParameters("generator degree mismatch".into()));
        }
        let (group, elements) = build_concrete(
            Perm::identity(degree),
            gens,
            max_order,
            |a, b| a.compose(b),
            Perm::cycle_string,
        )?;
        Ok(PermutationGroup {
            degree,
            group,
            elements,
        })
    }

    pub fn symmetric(n: usize, max_order: usize) -> Result<Self> {
        check_degree(n, max_order, 1)?;
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Perm::from_cycles(n, &[&[0, 1]])?);
            let cyc: Vec<usize> = (0..n).collect();
            gens.push(Perm::from_cycles(n, &[&cyc])?);
        }
        Self::generated(n, &gens, max_order)
    }

    pub fn alternating(n: usize, max_order: usize) -> Result<Self> {
        check_degree(n, max_order, 2)?;
        let gens: Vec<Perm> = (2..n)
            .map(|i| Perm::from_cycles(n, &[&[0, 1, i]]))
            .collect::<Result<_>>()?;
        Self::generated(n, &gens, max_order)
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    /// Conjugation `x -> p x p^-1` by a permutation of the same degree.
    pub fn conjugation(&self, p: &Perm) -> Result<Vec<usize>> {
        let pinv = p.inverse();
        self.elements
            .iter()
            .map(|x| {
                self.index_of(&p.compose(x).compose(&pinv))
                    .ok_or_else(|| Error::BadParameters("conjugation leaves the group".into()))
            })
            .collect()
    }
}

fn check_degree(n: usize, max_order: usize, divisor: u128) -> Result<()> {
    if n == 0 || n > 250 {
        return Err(Error::BadParameters(format!("degree {n}")));
    }
    let mut order: u128 = 1;
    for i in 2..=n as u128 {
        order = order.saturating_mul(i);
    }
    order = (order / divisor).max(1);
    if order > max_order as u128 {
        return Err(Error::TooLarge(format!("order {order} exceeds the bound {max_order}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_convention() {
        let a = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        assert_eq!(a.compose(&b).cycle_string(), "(1 2 3)");
    }

    #[test]
    fn symmetric_and_alternating_orders() {
        for n in 1..=5 {
            let s = PermutationGroup::symmetric(n, 1 << 14).unwrap();
            let fact: usize = (1..=n).product();
            assert_eq!(s.group.order(), fact);
            let a = PermutationGroup::alternating(n, 1 << 14).unwrap();
            assert_eq!(a.group.order(), (fact / 2).max(1));
            assert!(a.elements.iter().all(Perm::is_even));
        }
    }

    #[test]
    fn labels_and_identity() {
        let s = PermutationGroup::symmetric(3, 100).unwrap();
        assert_eq!(s.group.identity(), 0);
        assert_eq!(s.group.label(0), "()");
    }
}
