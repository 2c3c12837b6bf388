//! Felsch-style coset enumeration over the trivial subgroup.

use super::{Letter, Presentation};
use crate::error::{Error, Result};
use crate::group::{CayleyGroup, MAX_TABLE_ORDER};

pub const DEFAULT_MAX_COSETS: usize = 1 << 20;

const UNDEF: u32 = u32::MAX;

/// A completed coset table, renumbered in breadth-first order from the
/// trivial coset.
#[derive(Clone, Debug)]
pub struct CosetEnumeration {
    pub order: usize,
    /// `table[c * 2g + 2i]` is `c . x_i`, `table[c * 2g + 2i + 1]` is `c . x_i^-1`.
    table: Vec<u32>,
    ngens: usize,
    /// Total number of cosets defined during the run.
    pub cosets_defined: usize,
}

fn col(l: Letter) -> usize {
    2 * l.gen + l.inv as usize
}

struct Enumerator {
    ncols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    max_cosets: usize,
    deductions: Vec<(u32, usize)>,
    /// Cyclic conjugates of relators and their inverses, grouped by first column.
    by_first: Vec<Vec<Vec<usize>>>,
    queue: Vec<u32>,
}

impl Enumerator {
    fn new(p: &Presentation, max_cosets: usize) -> Self {
        let ncols = 2 * p.generators.len();
        let mut by_first = vec![Vec::new(); ncols];
        let mut seen = std::collections::HashSet::new();
        for r in &p.relators {
            for w in [r.clone(), r.inverse()] {
                let cols: Vec<usize> = w.letters().iter().map(|&l| col(l)).collect();
                for s in 0..cols.len() {
                    let mut c = cols[s..].to_vec();
                    c.extend_from_slice(&cols[..s]);
                    if seen.insert(c.clone()) {
                        by_first[c[0]].push(c);
                    }
                }
            }
        }
        Enumerator {
            ncols,
            table: vec![UNDEF; ncols.max(1)],
            parent: vec![0],
            live: 1,
            max_cosets,
            deductions: Vec::new(),
            by_first,
            queue: Vec::new(),
        }
    }

    #[inline]
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.ncols + x]
    }

    #[inline]
    fn set(&mut self, c: u32, x: usize, v: u32) {
        self.table[c as usize * self.ncols + x] = v;
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn new_coset(&mut self) -> Result<u32> {
        if self.live >= self.max_cosets || self.parent.len() >= u32::MAX as usize - 1 {
            return Err(Error::CosetLimitExceeded(self.max_cosets));
        }
        let c = self.parent.len() as u32;
        self.parent.push(c);
        self.table.extend(std::iter::repeat_n(UNDEF, self.ncols));
        self.live += 1;
        Ok(c)
    }

    fn define(&mut self, c: u32, x: usize) -> Result<()> {
        let d = self.new_coset()?;
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        self.deductions.push((c, x));
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != r {
            let next = self.parent[x as usize];
            self.parent[x as usize] = r;
            x = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi as usize] = lo;
            self.live -= 1;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.ncols {
                let d = self.get(g, x);
                if d == UNDEF {
                    continue;
                }
                self.set(d, x ^ 1, UNDEF);
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mux = self.get(mu, x);
                if mux != UNDEF {
                    self.merge(nu, mux);
                } else {
                    let nuxi = self.get(nu, x ^ 1);
                    if nuxi != UNDEF {
                        self.merge(mu, nuxi);
                    } else {
                        self.set(mu, x, nu);
                        self.set(nu, x ^ 1, mu);
                        self.deductions.push((mu, x));
                    }
                }
            }
        }
    }

    /// Scans `w` at coset `a` without defining cosets; deduces when exactly
    /// one entry is missing and merges on a mismatch.
    fn scan(&mut self, a: u32, w: &[usize]) {
        let mut f = a;
        let mut i = 0;
        let mut j = w.len();
        while i < j {
            let nx = self.get(f, w[i]);
            if nx == UNDEF {
                break;
            }
            f = nx;
            i += 1;
        }
        if i == j {
            if f != a {
                self.coincidence(f, a);
            }
            return;
        }
        let mut b = a;
        while j > i {
            let nx = self.get(b, w[j - 1] ^ 1);
            if nx == UNDEF {
                break;
            }
            b = nx;
            j -= 1;
        }
        if j == i {
            self.coincidence(f, b);
        } else if j == i + 1 {
            self.set(f, w[i], b);
            self.set(b, w[i] ^ 1, f);
            self.deductions.push((f, w[i]));
        }
    }

    fn process_deductions(&mut self) {
        while let Some((c, x)) = self.deductions.pop() {
            if !self.is_live(c) {
                continue;
            }
            let conj = std::mem::take(&mut self.by_first[x]);
            for w in &conj {
                if !self.is_live(c) {
                    break;
                }
                self.scan(c, w);
            }
            self.by_first[x] = conj;
            if !self.is_live(c) {
                continue;
            }
            let d = self.get(c, x);
            if d == UNDEF || !self.is_live(d) {
                continue;
            }
            let conj = std::mem::take(&mut self.by_first[x ^ 1]);
            for w in &conj {
                if !self.is_live(d) {
                    break;
                }
                self.scan(d, w);
            }
            self.by_first[x ^ 1] = conj;
        }
    }

    /// Traces every relator at every live coset; returns false if a
    /// coincidence was found and processed.
    fn verify_complete(&mut self) -> bool {
        let n = self.parent.len() as u32;
        for c in 0..n {
            if !self.is_live(c) {
                continue;
            }
            for x in 0..self.ncols {
                let rels = std::mem::take(&mut self.by_first[x]);
                let mut bad = None;
                for w in &rels {
                    let mut f = c;
                    for &y in w {
                        f = self.get(f, y);
                    }
                    if f != c {
                        bad = Some(f);
                        break;
                    }
                }
                self.by_first[x] = rels;
                if let Some(f) = bad {
                    self.coincidence(f, c);
                    self.process_deductions();
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self) -> Result<()> {
        if self.ncols == 0 {
            return Ok(());
        }
        // Relators with no letters impose nothing; process the empty start.
        let mut cur: u32 = 0;
        loop {
            self.process_deductions();
            while (cur as usize) < self.parent.len() {
                if self.is_live(cur) && (0..self.ncols).any(|x| self.get(cur, x) == UNDEF) {
                    break;
                }
                cur += 1;
            }
            if cur as usize >= self.parent.len() {
                if self.verify_complete() {
                    return Ok(());
                }
                cur = 0;
                continue;
            }
            let x = (0..self.ncols).find(|&x| self.get(cur, x) == UNDEF).unwrap();
            self.define(cur, x)?;
        }
    }
}

/// Enumerates the cosets of the trivial subgroup. Fails with
/// [`Error::CosetLimitExceeded`] once more than `max_cosets` cosets would be
/// live at the same time.
pub fn todd_coxeter(p: &Presentation, max_cosets: usize) -> Result<CosetEnumeration> {
    let mut e = Enumerator::new(p, max_cosets);
    e.run()?;
    let ngens = p.generators.len();
    let ncols = e.ncols;
    let total = e.parent.len();
    // Breadth-first renumbering of the live cosets from coset 0.
    let mut newnum = vec![UNDEF; total];
    let mut order = vec![0u32];
    newnum[0] = 0;
    let mut i = 0;
    while i < order.len() {
        let c = order[i];
        i += 1;
        for x in 0..ncols {
            let d = e.get(c, x);
            if newnum[d as usize] == UNDEF {
                newnum[d as usize] = order.len() as u32;
                order.push(d);
            }
        }
    }
    let n = order.len();
    debug_assert_eq!(n, e.live);
    let mut table = vec![0u32; n * ncols.max(1)];
    for (new, &old) in order.iter().enumerate() {
        for x in 0..ncols {
            table[new * ncols + x] = newnum[e.get(old, x) as usize];
        }
    }
    Ok(CosetEnumeration {
        order: n,
        table,
        ngens,
        cosets_defined: total,
    })
}

impl CosetEnumeration {
    /// `c . x_gen^(+-1)`.
    pub fn act(&self, c: usize, l: Letter) -> usize {
        self.table[c * 2 * self.ngens + col(l)] as usize
    }

    /// Image of the generator `i` in the regular representation.
    pub fn generator_image(&self, i: usize) -> usize {
        self.act(0, Letter::new(i, false))
    }

    pub fn generator_images(&self) -> Vec<usize> {
        (0..self.ngens).map(|i| self.generator_image(i)).collect()
    }

    /// The regular representation as a Cayley table. Element `i` is the
    /// group element carrying coset 0 to coset `i`; labels are shortlex
    /// representative words.
    pub fn regular_representation(&self, p: &Presentation, max_order: usize) -> Result<CayleyGroup> {
        let n = self.order;
        if n > max_order.min(MAX_TABLE_ORDER) {
            return Err(Error::TooLarge(format!("presented group has order {n}")));
        }
        crate::group::check_table_memory(n)?;
        let ncols = 2 * self.ngens;
        let mut tree = vec![(usize::MAX, usize::MAX); n];
        let mut bfs = vec![0usize];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut i = 0;
        while i < bfs.len() {
            let c = bfs[i];
            i += 1;
            for x in 0..ncols {
                let d = self.table[c * ncols + x] as usize;
                if !seen[d] {
                    seen[d] = true;
                    tree[d] = (c, x);
                    bfs.push(d);
                }
            }
        }
        let mut table = vec![0u16; n * n];
        for a in 0..n {
            let row = &mut table[a * n..(a + 1) * n];
            row[0] = a as u16;
            for &b in &bfs[1..] {
                let (parent, x) = tree[b];
                row[b] = self.table[row[parent] as usize * ncols + x] as u16;
            }
        }
        let mut labels = vec![String::new(); n];
        labels[0] = "e".to_string();
        for &b in &bfs[1..] {
            let (parent, x) = tree[b];
            let name = &p.generators[x / 2];
            let letter = if x % 2 == 1 { format!("{name}^-1") } else { name.clone() };
            labels[b] = if parent == 0 {
                letter
            } else {
                format!("{}{}", labels[parent], letter)
            };
        }
        let gens: Vec<usize> = (0..self.ngens).map(|i| self.generator_image(i)).collect();
        CayleyGroup::from_flat_with_gens(n, table, Some(labels), &gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::builtin_presentation;

    #[test]
    fn cyclic_and_dihedral() {
        let p = Presentation::from_json(r#"{"generators":["a"],"relators":["aaaaa"]}"#).unwrap();
        assert_eq!(todd_coxeter(&p, 100).unwrap().order, 5);
        let d = Presentation::from_json(r#"{"generators":["a","b"],"relators":["aaaa","bb","abab"]}"#).unwrap();
        let e = todd_coxeter(&d, 100).unwrap();
        assert_eq!(e.order, 8);
        let g = e.regular_representation(&d, 100).unwrap();
        assert_eq!(g.order(), 8);
        assert!(!g.is_abelian());
    }

    #[test]
    fn trivial_and_free_cases() {
        let p = Presentation::from_json(r#"{"generators":["a"],"relators":["a"]}"#).unwrap();
        assert_eq!(todd_coxeter(&p, 10).unwrap().order, 1);
        let free = Presentation::from_json(r#"{"generators":["a"],"relators":[]}"#).unwrap();
        assert!(matches!(todd_coxeter(&free, 50), Err(Error::CosetLimitExceeded(50))));
    }

    #[test]
    fn builtin_orders() {
        for (name, n, order) in [("sym", 3, 6), ("sym", 4, 24), ("alt", 4, 12), ("atilde", 4, 24), ("stilde", 3, 12)] {
            let p = builtin_presentation(name, n).unwrap();
            assert_eq!(todd_coxeter(&p, 1 << 16).unwrap().order, order, "{name}({n})");
        }
    }
}
