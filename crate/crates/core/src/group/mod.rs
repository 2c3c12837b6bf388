//! Finite groups materialized as Cayley tables, their constructors, and
//! structural invariants.

mod affine;
mod builder;
mod construct;
mod matrix;
mod perm;
mod structure;

pub use affine::{AffineGroup, VectorGroup};
pub use builder::{build_concrete, DEFAULT_MAX_MEM_MB};
pub(crate) use builder::check_table_memory;
pub use construct::{construct, parse_group_spec, GroupSpec, Limits};
pub use matrix::{predicted_order, sl_order, Matrix, MatrixGroup, MatrixKind};
pub use perm::{Perm, PermutationGroup};
pub use structure::{
    center, commutator_subgroup, conjugacy_classes, conjugacy_profile, derived_data,
    fixed_point_subgroup, sylow, ConjugacyProfile, DerivedData, SylowData,
};

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard ceiling on the order of a materialized table (cells are `u16`).
pub const MAX_TABLE_ORDER: usize = u16::MAX as usize;

/// Exhaustive associativity checking is used up to this order.
pub const EXHAUSTIVE_ASSOC_LIMIT: usize = 256;

/// A finite group given by its full multiplication table on `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct CayleyGroup {
    n: usize,
    table: Vec<u16>,
    identity: usize,
    inverse: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl std::fmt::Debug for CayleyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CayleyGroup(order {})", self.n)
    }
}

/// JSON form of a Cayley table: `{"n": .., "table": [[..]]}`.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct TableFile {
    pub n: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl CayleyGroup {
    /// Builds and fully validates a group from its table rows.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 || n > MAX_TABLE_ORDER {
            return Err(Error::InvalidTable(format!("order {n} out of range")));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!("row {i} has length {}", row.len())));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::InvalidTable(format!("entry {v} out of range")));
                }
                table.push(v as u16);
            }
        }
        Self::from_flat(n, table, None)
    }

    pub(crate) fn from_flat(n: usize, table: Vec<u16>, labels: Option<Vec<String>>) -> Result<Self> {
        let g = Self::assemble(n, table, labels)?;
        g.validate()?;
        Ok(g)
    }

    /// Like `from_flat`, validating associativity against a known
    /// generating set instead of searching for one.
    pub(crate) fn from_flat_with_gens(
        n: usize,
        table: Vec<u16>,
        labels: Option<Vec<String>>,
        gens: &[usize],
    ) -> Result<Self> {
        let g = Self::assemble(n, table, labels)?;
        g.validate_with(Some(gens))?;
        Ok(g)
    }

    fn assemble(n: usize, table: Vec<u16>, labels: Option<Vec<String>>) -> Result<Self> {
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] as usize == x && table[x * n + e] as usize == x))
            .ok_or_else(|| Error::InvalidTable("no two-sided identity".into()))?;
        let mut inverse = vec![usize::MAX; n];
        for x in 0..n {
            for y in 0..n {
                if table[x * n + y] as usize == identity {
                    inverse[x] = y;
                    break;
                }
            }
        }
        if inverse.contains(&usize::MAX) {
            return Err(Error::InvalidTable("missing inverse".into()));
        }
        Ok(CayleyGroup {
            n,
            table,
            identity,
            inverse,
            labels,
        })
    }

    pub fn from_table_file(file: &TableFile) -> Result<Self> {
        if file.table.len() != file.n {
            return Err(Error::InvalidTable(format!(
                "declared n = {} but {} rows given",
                file.n,
                file.table.len()
            )));
        }
        let mut g = Self::from_rows(&file.table)?;
        if let Some(l) = &file.labels {
            g = g.with_labels(l.clone())?;
        }
        Ok(g)
    }

    pub fn to_table_file(&self) -> TableFile {
        TableFile {
            n: self.n,
            table: (0..self.n).map(|a| self.row(a).collect()).collect(),
            labels: self.labels.clone(),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::BadParameters("label count differs from order".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Checks the full set of table invariants: Latin square, identity,
    /// inverses and associativity (exhaustive up to
    /// [`EXHAUSTIVE_ASSOC_LIMIT`], otherwise on triples whose last entry
    /// lies in a generating set reached by right multiplication).
    pub fn validate(&self) -> Result<()> {
        self.validate_with(None)
    }

    fn validate_with(&self, gens: Option<&[usize]>) -> Result<()> {
        let n = self.n;
        let mut seen = vec![0u32; n];
        for a in 0..n {
            for b in 0..n {
                let v = self.mul(a, b);
                if seen[v] == a as u32 + 1 {
                    return Err(Error::InvalidTable(format!("row {a} repeats {v}")));
                }
                seen[v] = a as u32 + 1;
            }
        }
        seen.iter_mut().for_each(|s| *s = 0);
        for b in 0..n {
            for a in 0..n {
                let v = self.mul(a, b);
                if seen[v] == b as u32 + 1 {
                    return Err(Error::InvalidTable(format!("column {b} repeats {v}")));
                }
                seen[v] = b as u32 + 1;
            }
        }
        for x in 0..n {
            if self.mul(self.identity, x) != x || self.mul(x, self.identity) != x {
                return Err(Error::InvalidTable("identity".into()));
            }
            if self.mul(x, self.inverse[x]) != self.identity {
                return Err(Error::InvalidTable(format!("inverse of {x}")));
            }
        }
        if n <= EXHAUSTIVE_ASSOC_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return Err(Error::InvalidTable(format!("({a},{b},{c}) not associative")));
                        }
                    }
                }
            }
        } else {
            let gens = match gens {
                Some(g) => g.to_vec(),
                None => self.quick_generating_set(),
            };
            if self.right_closure(&gens).len() != n {
                return Err(Error::InvalidTable("generating set does not reach all elements".into()));
            }
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for &s in &gens {
                        if self.mul(ab, s) != self.mul(a, self.mul(b, s)) {
                            return Err(Error::InvalidTable(format!("({a},{b},{s}) not associative")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn row(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.table[a * self.n..(a + 1) * self.n].iter().map(|&v| v as usize)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    /// Index of the element carrying `label`.
    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    pub fn pow(&self, a: usize, e: u64) -> usize {
        let mut acc = self.identity;
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `g x g^-1`.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inverse[g])
    }

    /// `[g, h] = g h g^-1 h^-1`.
    pub fn commutator(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.mul(self.inverse[g], self.inverse[h]))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.n).map(|a| self.element_order(a)).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (a + 1..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Elements reachable from the identity by right multiplication with
    /// `gens`, in breadth-first order.
    pub fn right_closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        let mut out = vec![self.identity];
        seen[self.identity] = true;
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            i += 1;
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
        }
        out
    }

    /// The subgroup generated by `gens`, as a sorted member list.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut v = self.right_closure(gens);
        v.sort_unstable();
        v
    }

    pub fn subgroup(&self, gens: &[usize]) -> Subgroup<'_> {
        Subgroup {
            parent: self,
            members: self.closure(gens),
        }
    }

    pub fn whole(&self) -> Subgroup<'_> {
        Subgroup {
            parent: self,
            members: (0..self.n).collect(),
        }
    }

    /// A small generating set chosen greedily: at each step the element
    /// with the largest closure gain is added, ties broken by index.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut current = vec![self.identity];
        let mut in_current = vec![false; self.n];
        in_current[self.identity] = true;
        while current.len() < self.n {
            let mut best: Option<(usize, usize)> = None;
            if gens.is_empty() {
                for a in 0..self.n {
                    let o = self.element_order(a);
                    if best.is_none_or(|(_, s)| o > s) {
                        best = Some((a, o));
                    }
                }
            } else {
                let mut trial = gens.clone();
                trial.push(0);
                for a in 0..self.n {
                    if in_current[a] {
                        continue;
                    }
                    *trial.last_mut().unwrap() = a;
                    let size = self.right_closure(&trial).len();
                    if best.is_none_or(|(_, s)| size > s) {
                        best = Some((a, size));
                        if size == self.n {
                            break;
                        }
                    }
                }
            }
            let (a, _) = best.expect("proper subgroup has a missing element");
            gens.push(a);
            current = self.right_closure(&gens);
            in_current.iter_mut().for_each(|b| *b = false);
            for &x in &current {
                in_current[x] = true;
            }
        }
        gens
    }

    /// A generating set obtained by repeatedly adding the least element
    /// outside the current subgroup. Cheap, but not minimal.
    pub fn quick_generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.n];
        inside[self.identity] = true;
        while let Some(x) = inside.iter().position(|b| !b) {
            gens.push(x);
            for y in self.right_closure(&gens) {
                inside[y] = true;
            }
        }
        gens
    }

    /// Breadth-first factorization over `gens`: for each element `x != e`,
    /// `(parent, generator position)` with `x = parent * gens[pos]`.
    pub fn schreier_tree(&self, gens: &[usize]) -> Vec<Option<(usize, usize)>> {
        let mut tree = vec![None; self.n];
        let mut seen = vec![false; self.n];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (i, &s) in gens.iter().enumerate() {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    tree[y] = Some((x, i));
                    queue.push_back(y);
                }
            }
        }
        tree
    }

    /// Breadth-first order of the elements reached from the identity.
    pub fn bfs_order(&self, gens: &[usize]) -> Vec<usize> {
        self.right_closure(gens)
    }

    /// The table with its elements renumbered: new index `i` is old `perm[i]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n;
        let mut pos = vec![0usize; n];
        for (i, &old) in perm.iter().enumerate() {
            pos[old] = i;
        }
        let mut table = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = pos[self.mul(perm[a], perm[b])] as u16;
            }
        }
        let labels = self
            .labels
            .as_ref()
            .map(|l| perm.iter().map(|&i| l[i].clone()).collect());
        Self::from_flat(n, table, labels)
    }

    /// Raw table as `u16` cells in row-major order.
    pub fn raw_table(&self) -> &[u16] {
        &self.table
    }
}

/// A subgroup of a [`CayleyGroup`], as a sorted member set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup<'g> {
    pub parent: &'g CayleyGroup,
    pub members: Vec<usize>,
}

impl<'g> Subgroup<'g> {
    /// Wraps a member set after checking closure, identity and Lagrange.
    pub fn new(parent: &'g CayleyGroup, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        let sub = Subgroup { parent, members };
        sub.check()?;
        Ok(sub)
    }

    pub fn check(&self) -> Result<()> {
        let g = self.parent;
        let mut mask = vec![false; g.order()];
        for &x in &self.members {
            mask[x] = true;
        }
        if !mask[g.identity()] {
            return Err(Error::BadParameters("subset misses the identity".into()));
        }
        for &x in &self.members {
            if !mask[g.inv(x)] {
                return Err(Error::BadParameters("subset not closed under inverse".into()));
            }
            for &y in &self.members {
                if !mask[g.mul(x, y)] {
                    return Err(Error::BadParameters("subset not closed under product".into()));
                }
            }
        }
        assert_eq!(g.order() % self.members.len(), 0, "Lagrange");
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.parent.order()];
        for &x in &self.members {
            mask[x] = true;
        }
        mask
    }

    /// `g H g^-1` as a sorted member list.
    pub fn conjugate_members(&self, g: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.members.iter().map(|&x| self.parent.conj(g, x)).collect();
        v.sort_unstable();
        v
    }

    pub fn is_normal(&self) -> bool {
        (0..self.parent.order()).all(|g| self.conjugate_members(g) == self.members)
    }
}

/// The cyclic group `Z/n` on `0..n`.
pub fn cyclic(n: usize) -> Result<CayleyGroup> {
    if n == 0 || n > MAX_TABLE_ORDER {
        return Err(Error::BadParameters(format!("cyclic order {n}")));
    }
    let mut table = vec![0u16; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = ((a + b) % n) as u16;
        }
    }
    CayleyGroup::from_flat(n, table, Some((0..n).map(|i| i.to_string()).collect()))
}

/// Direct product `G x H`; the pair `(g, h)` has index `g * |H| + h`.
pub fn direct_product(g: &CayleyGroup, h: &CayleyGroup) -> Result<CayleyGroup> {
    let (ng, nh) = (g.order(), h.order());
    let n = ng * nh;
    if n > MAX_TABLE_ORDER {
        return Err(Error::TooLarge(format!("product order {n}")));
    }
    let mut table = vec![0u16; n * n];
    for a in 0..n {
        let (a1, a2) = (a / nh, a % nh);
        for b in 0..n {
            let (b1, b2) = (b / nh, b % nh);
            table[a * n + b] = (g.mul(a1, b1) * nh + h.mul(a2, b2)) as u16;
        }
    }
    let labels = (0..n)
        .map(|a| format!("({},{})", g.label(a / nh), h.label(a % nh)))
        .collect();
    CayleyGroup::from_flat(n, table, Some(labels))
}

/// Semidirect product `N x| H` where `action[h]` is the automorphism of
/// `N` (as an index permutation) by which `h` acts. The pair `(n, h)` has
/// index `n * |H| + h` and `(n1, h1)(n2, h2) = (n1 * action[h1](n2), h1 h2)`.
pub fn semidirect_product(
    normal: &CayleyGroup,
    acting: &CayleyGroup,
    action: &[Vec<usize>],
) -> Result<CayleyGroup> {
    let (nn, nh) = (normal.order(), acting.order());
    if action.len() != nh {
        return Err(Error::BadParameters("one automorphism per acting element required".into()));
    }
    for (i, a) in action.iter().enumerate() {
        if !crate::morphism::is_automorphism(normal, a) {
            return Err(Error::NotAnAutomorphism(i));
        }
    }
    for h1 in 0..nh {
        for h2 in 0..nh {
            let h = acting.mul(h1, h2);
            if (0..nn).any(|x| action[h][x] != action[h1][action[h2][x]]) {
                return Err(Error::BadParameters("action is not a homomorphism".into()));
            }
        }
    }
    let n = nn * nh;
    if n > MAX_TABLE_ORDER {
        return Err(Error::TooLarge(format!("semidirect order {n}")));
    }
    let mut table = vec![0u16; n * n];
    for a in 0..n {
        let (n1, h1) = (a / nh, a % nh);
        for b in 0..n {
            let (n2, h2) = (b / nh, b % nh);
            let m = normal.mul(n1, action[h1][n2]);
            table[a * n + b] = (m * nh + acting.mul(h1, h2)) as u16;
        }
    }
    let labels = (0..n)
        .map(|a| format!("({},{})", normal.label(a / nh), acting.label(a % nh)))
        .collect();
    CayleyGroup::from_flat(n, table, Some(labels))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_basics() {
        let g = cyclic(6).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.inv(2), 4);
        assert!(g.is_abelian());
        assert_eq!(g.element_order(2), 3);
        assert_eq!(g.generating_set(), vec![1]);
    }

    #[test]
    fn rejects_non_group_tables() {
        // Latin square with identity 0 that is not associative (order 5 loop).
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(CayleyGroup::from_rows(&rows).is_err());
        assert!(CayleyGroup::from_rows(&[vec![0, 1], vec![1, 1]]).is_err());
    }

    #[test]
    fn product_and_relabel() {
        let z2 = cyclic(2).unwrap();
        let k4 = direct_product(&z2, &z2).unwrap();
        assert!(k4.is_abelian());
        assert!(k4.element_orders().iter().all(|&o| o <= 2));
        let r = k4.relabeled(&[3, 2, 1, 0]).unwrap();
        assert_eq!(r.identity(), 3);
        assert_eq!(r.label(3), "(0,0)");
    }

    #[test]
    fn subgroup_checks() {
        let g = cyclic(6).unwrap();
        let h = g.subgroup(&[2]);
        assert_eq!(h.members, vec![0, 2, 4]);
        assert!(h.is_normal());
        assert!(Subgroup::new(&g, vec![0, 1]).is_err());
    }

    #[test]
    fn table_file_roundtrip() {
        let g = cyclic(5).unwrap();
        let json = serde_json::to_string(&g.to_table_file()).unwrap();
        let back: TableFile = serde_json::from_str(&json).unwrap();
        assert_eq!(CayleyGroup::from_table_file(&back).unwrap(), g);
    }
}
