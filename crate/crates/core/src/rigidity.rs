//! Group structures on a finite set that admit a prescribed permutation
//! group as automorphisms.
//!
//! A structure is a multiplication table `m` on `{0, .., n-1}` with
//! `m(a x, a y) = a m(x, y)` for every permutation `a` in the acting group.
//! The search assigns one value per orbit of the acting group on ordered
//! pairs; equivariance fills in the rest of the orbit.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::CayleyGroup;
use crate::morphism::{is_automorphism, isomorphism_outcome, IsoOutcome};

/// Largest base set handled by the table search.
pub const MAX_SEARCH_POINTS: usize = 24;
/// Default cap on search nodes.
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;
/// Largest acting group materialized from generators.
pub const MAX_ACTION_ORDER: usize = 1 << 16;

/// A permutation group on `n` points, stored as the full element list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    pub n: usize,
    pub generators: Vec<Vec<usize>>,
    /// Sorted; contains the identity.
    pub elements: Vec<Vec<usize>>,
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    p.len() == n && p.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
}

impl GroupAction {
    /// Closes the generators under composition.
    pub fn generated(n: usize, generators: Vec<Vec<usize>>) -> Result<Self> {
        if let Some(bad) = generators.iter().find(|p| !is_permutation(p, n)) {
            return Err(Error::BadParameters(format!("not a permutation of {n} points: {bad:?}")));
        }
        let id: Vec<usize> = (0..n).collect();
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(id.clone());
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for s in &generators {
                let y: Vec<usize> = x.iter().map(|&i| s[i]).collect();
                if seen.insert(y.clone()) {
                    if seen.len() > MAX_ACTION_ORDER {
                        return Err(Error::TooLarge(format!(
                            "acting group exceeds {MAX_ACTION_ORDER} elements"
                        )));
                    }
                    frontier.push(y);
                }
            }
        }
        Ok(GroupAction { n, generators, elements: seen.into_iter().collect() })
    }

    pub fn trivial(n: usize) -> Self {
        GroupAction { n, generators: Vec::new(), elements: vec![(0..n).collect()] }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Points fixed by every element.
    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&x| self.generators.iter().all(|g| g[x] == x))
            .collect()
    }

    /// Conjugate action `s a s^-1`, for relabeling the base set by `s`.
    pub fn conjugated(&self, s: &[usize]) -> Self {
        let mut sinv = vec![0; self.n];
        for (i, &x) in s.iter().enumerate() {
            sinv[x] = i;
        }
        let conj = |a: &Vec<usize>| -> Vec<usize> { (0..self.n).map(|x| s[a[sinv[x]]]).collect() };
        let mut elements: Vec<Vec<usize>> = self.elements.iter().map(conj).collect();
        elements.sort();
        GroupAction { n: self.n, generators: self.generators.iter().map(conj).collect(), elements }
    }
}

/// Search switches and limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub node_budget: u64,
    /// For every `a` in the group, `Fix(a)` is a subgroup: it has order
    /// dividing `n`, and it absorbs no product of an inside and an outside point.
    pub fixed_point_rule: bool,
    pub max_points: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            node_budget: DEFAULT_NODE_BUDGET,
            fixed_point_rule: true,
            max_points: MAX_SEARCH_POINTS,
        }
    }
}

#[derive(Clone, Debug)]
pub struct StructureSearch {
    /// One representative per isomorphism class, each the lexicographically
    /// least table found in its class, sorted by table.
    pub structures: Vec<CayleyGroup>,
    /// Number of complete tables found before deduplication.
    pub tables_found: u64,
    pub nodes: u64,
}

const EMPTY: u8 = u8::MAX;

struct Orbit {
    /// `(x, y, a)`: the pair `(x, y)` is `a` applied to the representative.
    members: Vec<(u8, u8, u32)>,
}

struct Problem<'a> {
    n: usize,
    action: &'a GroupAction,
    orbits: Vec<Orbit>,
    /// Per cell, values compatible with the stabilizer of the pair.
    allowed: Vec<u32>,
    budget: u64,
    nodes: &'a AtomicU64,
}

#[derive(Clone)]
struct State {
    table: Vec<u8>,
    row_used: Vec<u32>,
    col_used: Vec<u32>,
    /// `pos[x * n + v] = y` when `m(x, y) = v`.
    pos: Vec<u8>,
    open: Vec<usize>,
}

impl Problem<'_> {
    fn get(&self, s: &State, x: usize, y: usize) -> Option<usize> {
        let v = s.table[x * self.n + y];
        (v != EMPTY).then_some(v as usize)
    }

    fn set(&self, s: &mut State, x: usize, y: usize, v: usize) -> bool {
        let n = self.n;
        if s.table[x * n + y] != EMPTY {
            return s.table[x * n + y] as usize == v;
        }
        let bit = 1u32 << v;
        if s.row_used[x] & bit != 0 || s.col_used[y] & bit != 0 || self.allowed[x * n + y] & bit == 0 {
            return false;
        }
        s.table[x * n + y] = v as u8;
        s.row_used[x] |= bit;
        s.col_used[y] |= bit;
        s.pos[x * n + v] = y as u8;
        true
    }

    /// Checks `(xy)z = x(yz)` for every triple in which cell `(a, b)` occurs.
    fn associative_at(&self, s: &State, a: usize, b: usize) -> bool {
        let n = self.n;
        let c = match self.get(s, a, b) {
            Some(c) => c,
            None => return true,
        };
        for t in 0..n {
            // (a b) t = a (b t)
            if let (Some(w), Some(l)) = (self.get(s, b, t), self.get(s, c, t)) {
                if self.get(s, a, w).is_some_and(|r| r != l) {
                    return false;
                }
            }
            // (t a) b = t (a b)
            if let (Some(u), Some(r)) = (self.get(s, t, a), self.get(s, t, c)) {
                if self.get(s, u, b).is_some_and(|l| l != r) {
                    return false;
                }
            }
            // (t y) b = t (y b) where t y = a
            let y = s.pos[t * n + a];
            if y != EMPTY {
                if let Some(w) = self.get(s, y as usize, b) {
                    if self.get(s, t, w).is_some_and(|r| r != c) {
                        return false;
                    }
                }
            }
            // (a y) z = a (y z) where y z = b, y = t
            let z = s.pos[t * n + b];
            if z != EMPTY {
                if let Some(u) = self.get(s, a, t) {
                    if self.get(s, u, z as usize).is_some_and(|l| l != c) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn assign(&self, s: &mut State, o: usize, v: usize) -> bool {
        let orbit = &self.orbits[o];
        for &(x, y, a) in &orbit.members {
            let img = self.action.elements[a as usize][v];
            if !self.set(s, x as usize, y as usize, img) {
                return false;
            }
        }
        orbit
            .members
            .iter()
            .all(|&(x, y, _)| self.associative_at(s, x as usize, y as usize))
    }

    fn domain(&self, s: &State, x: usize, y: usize) -> u32 {
        self.allowed[x * self.n + y] & !s.row_used[x] & !s.col_used[y]
    }

    /// Every row and column can still receive each missing value.
    fn consistent(&self, s: &State) -> bool {
        let n = self.n;
        let full = (1u32 << n) - 1;
        for x in 0..n {
            let missing = full & !s.row_used[x];
            if missing == 0 {
                continue;
            }
            let mut cover = 0;
            for y in 0..n {
                if s.table[x * n + y] == EMPTY {
                    cover |= self.domain(s, x, y);
                }
            }
            if cover & missing != missing {
                return false;
            }
        }
        for y in 0..n {
            let missing = full & !s.col_used[y];
            if missing == 0 {
                continue;
            }
            let mut cover = 0;
            for x in 0..n {
                if s.table[x * n + y] == EMPTY {
                    cover |= self.domain(s, x, y);
                }
            }
            if cover & missing != missing {
                return false;
            }
        }
        true
    }

    /// Open orbit with the fewest candidate values, or `None` if some orbit has none.
    fn choose(&self, s: &State) -> Option<Option<(usize, u32)>> {
        let mut best: Option<(u32, usize, u32)> = None;
        for (k, &o) in s.open.iter().enumerate() {
            let (x, y, _) = self.orbits[o].members[0];
            let d = self.domain(s, x as usize, y as usize);
            let c = d.count_ones();
            if c == 0 {
                return None;
            }
            if best.is_none_or(|b| c < b.0) {
                best = Some((c, k, d));
            }
        }
        Some(best.map(|(_, k, d)| (k, d)))
    }

    fn tick(&self) -> Result<()> {
        let used = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if used > self.budget {
            return Err(Error::SearchBudgetExceeded(self.budget));
        }
        Ok(())
    }

    /// Consistent children of a node, one per candidate value of the chosen orbit.
    fn expand(&self, s: &State) -> Result<Vec<State>> {
        let mut out = Vec::new();
        let Some(Some((k, dom))) = self.choose(s) else {
            return Ok(out);
        };
        let o = s.open[k];
        let mut bits = dom;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            self.tick()?;
            let mut child = s.clone();
            child.open.swap_remove(k);
            if self.assign(&mut child, o, v) && self.consistent(&child) {
                out.push(child);
            }
        }
        Ok(out)
    }

    fn dfs(&self, s: State, found: &mut Vec<Vec<u8>>) -> Result<()> {
        if s.open.is_empty() {
            found.push(s.table);
            return Ok(());
        }
        for child in self.expand(&s)? {
            self.dfs(child, found)?;
        }
        Ok(())
    }
}

/// Orbits of the acting group on ordered pairs.
fn pair_orbits(action: &GroupAction) -> (Vec<Orbit>, Vec<usize>) {
    let n = action.n;
    let mut orbit_of = vec![usize::MAX; n * n];
    let mut orbits = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if orbit_of[x * n + y] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut members = Vec::new();
            for (ai, a) in action.elements.iter().enumerate() {
                let (u, v) = (a[x], a[y]);
                if orbit_of[u * n + v] == usize::MAX {
                    orbit_of[u * n + v] = id;
                    members.push((u as u8, v as u8, ai as u32));
                }
            }
            // The representative comes first; it is the pair (x, y) itself.
            let rep = members.iter().position(|&(u, v, _)| (u as usize, v as usize) == (x, y)).expect("rep");
            members.swap(0, rep);
            orbits.push(Orbit { members });
        }
    }
    (orbits, orbit_of)
}

/// Values allowed in each cell: points fixed by the stabilizer of the pair,
/// narrowed by the fixed-point-subgroup rule when enabled.
fn allowed_values(action: &GroupAction, fixed_point_rule: bool) -> Vec<u32> {
    let n = action.n;
    let mut allowed = vec![0u32; n * n];
    for x in 0..n {
        for y in 0..n {
            let mut mask = (1u32 << n) - 1;
            for a in &action.elements {
                if a[x] == x && a[y] == y {
                    for (z, &az) in a.iter().enumerate() {
                        if az != z {
                            mask &= !(1 << z);
                        }
                    }
                }
            }
            if fixed_point_rule {
                for a in &action.elements {
                    let fx = a[x] == x;
                    let fy = a[y] == y;
                    if fx != fy {
                        // One factor in the subgroup Fix(a), the other outside.
                        for (z, &az) in a.iter().enumerate() {
                            if az == z {
                                mask &= !(1 << z);
                            }
                        }
                    }
                }
            }
            allowed[x * n + y] = mask;
        }
    }
    allowed
}

fn initial_state(p: &Problem<'_>, orbit_of: &[usize], e: usize) -> Option<State> {
    let n = p.n;
    let mut s = State {
        table: vec![EMPTY; n * n],
        row_used: vec![0; n],
        col_used: vec![0; n],
        pos: vec![EMPTY; n * n],
        open: Vec::new(),
    };
    for x in 0..n {
        if !p.set(&mut s, e, x, x) || !p.set(&mut s, x, e, x) {
            return None;
        }
    }
    let mut open: Vec<usize> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| x != e && y != e)
        .map(|(x, y)| orbit_of[x * n + y])
        .collect();
    open.sort_unstable();
    open.dedup();
    s.open = open;
    p.consistent(&s).then_some(s)
}

/// Keeps the lexicographically least table of each isomorphism class.
fn dedupe(tables: impl IntoIterator<Item = Vec<u8>>, n: usize) -> Result<Vec<(Vec<u8>, CayleyGroup)>> {
    let mut reps: Vec<(Vec<u8>, CayleyGroup)> = Vec::new();
    let mut sorted: Vec<Vec<u8>> = tables.into_iter().collect();
    sorted.sort();
    sorted.dedup();
    for t in sorted {
        let g = CayleyGroup::from_flat(n, t.iter().map(|&v| u16::from(v)).collect(), None)?;
        let known = reps
            .iter()
            .any(|(_, r)| matches!(isomorphism_outcome(r, &g), IsoOutcome::Isomorphic(_)));
        if !known {
            reps.push((t, g));
        }
    }
    Ok(reps)
}

/// All group structures on `{0, .., n-1}` admitting every element of
/// `action` as an automorphism, one per isomorphism class.
pub fn equivariant_structures(action: &GroupAction, opts: &SearchOptions) -> Result<StructureSearch> {
    let n = action.n;
    if n == 0 {
        return Err(Error::BadParameters("empty base set".into()));
    }
    if n > opts.max_points.min(MAX_SEARCH_POINTS) {
        return Err(Error::TooLarge(format!(
            "table search on {n} points exceeds the bound {}",
            opts.max_points.min(MAX_SEARCH_POINTS)
        )));
    }
    let nodes = AtomicU64::new(0);
    let empty = |nodes: &AtomicU64| StructureSearch {
        structures: Vec::new(),
        tables_found: 0,
        nodes: nodes.load(Ordering::Relaxed),
    };
    // Fixed points of any automorphism form a subgroup.
    if opts.fixed_point_rule
        && action
            .elements
            .iter()
            .any(|a| fixed_point_count(a) == 0 || n % fixed_point_count(a) != 0)
    {
        return Ok(empty(&nodes));
    }
    let (orbits, orbit_of) = pair_orbits(action);
    let problem = Problem {
        n,
        action,
        orbits,
        allowed: allowed_values(action, opts.fixed_point_rule),
        budget: opts.node_budget,
        nodes: &nodes,
    };
    // Top-level tasks: identity choice, then the first branching decision.
    let mut tasks = Vec::new();
    for e in action.fixed_points() {
        problem.tick()?;
        if let Some(s) = initial_state(&problem, &orbit_of, e) {
            if s.open.is_empty() {
                tasks.push(s);
            } else {
                tasks.extend(problem.expand(&s)?);
            }
        }
    }
    let per_task: Vec<Result<(u64, Vec<(Vec<u8>, CayleyGroup)>)>> = tasks
        .into_par_iter()
        .map(|s| {
            let mut found = Vec::new();
            problem.dfs(s, &mut found)?;
            let count = found.len() as u64;
            Ok((count, dedupe(found, n)?))
        })
        .collect();
    let mut tables_found = 0;
    let mut candidates = Vec::new();
    for r in per_task {
        let (c, reps) = r?;
        tables_found += c;
        candidates.extend(reps.into_iter().map(|(t, _)| t));
    }
    let reps = dedupe(candidates, n)?;
    for (_, g) in &reps {
        for a in &action.generators {
            assert!(is_automorphism(g, a), "every structure admits the action");
        }
    }
    Ok(StructureSearch {
        structures: reps.into_iter().map(|(_, g)| g).collect(),
        tables_found,
        nodes: nodes.load(Ordering::Relaxed),
    })
}

/// Outcome of the table criterion: `K` is rigid relative to `G` when every
/// group structure on the underlying set of `K` admitting `G` as
/// automorphisms is isomorphic to `K`.
#[derive(Clone, Debug)]
pub struct RigidityVerdict {
    pub structures: Vec<CayleyGroup>,
    pub rigid: bool,
    /// A structure not isomorphic to `K`, when one exists.
    pub witness: Option<CayleyGroup>,
    pub nodes: u64,
}

pub fn rigidity_check(k: &CayleyGroup, action: &GroupAction, opts: &SearchOptions) -> Result<RigidityVerdict> {
    if action.n != k.order() {
        return Err(Error::BadParameters(format!(
            "action on {} points for a group of order {}",
            action.n,
            k.order()
        )));
    }
    for (i, a) in action.generators.iter().enumerate() {
        if !is_automorphism(k, a) {
            return Err(Error::NotAnAutomorphism(i));
        }
    }
    let search = equivariant_structures(action, opts)?;
    let iso_to_k = |g: &CayleyGroup| matches!(isomorphism_outcome(k, g), IsoOutcome::Isomorphic(_));
    let k_classes = search.structures.iter().filter(|g| iso_to_k(g)).count();
    assert_eq!(k_classes, 1, "the input group appears exactly once");
    let witness = search.structures.iter().find(|g| !iso_to_k(g)).cloned();
    Ok(RigidityVerdict {
        rigid: witness.is_none(),
        witness,
        structures: search.structures,
        nodes: search.nodes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedPointEntry {
    pub automorphism: Vec<usize>,
    pub fixed_points: usize,
}

/// `|Fix(a)|` for each element of the acting group.
pub fn fixed_point_profile(k: &CayleyGroup, action: &GroupAction) -> Result<Vec<FixedPointEntry>> {
    if action.n != k.order() {
        return Err(Error::BadParameters("action and group sizes differ".into()));
    }
    Ok(action
        .elements
        .iter()
        .map(|a| FixedPointEntry {
            automorphism: a.clone(),
            fixed_points: fixed_point_count(a),
        })
        .collect())
}

pub fn fixed_point_count(a: &[usize]) -> usize {
    a.iter().enumerate().filter(|(x, &ax)| *x == ax).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, direct_product, PermutationGroup};
    use crate::morphism::{automorphism_group, inner_automorphisms};

    #[test]
    fn z4_under_negation() {
        let z4 = cyclic(4).unwrap();
        let act = GroupAction::generated(4, vec![vec![0, 3, 2, 1]]).unwrap();
        let v = rigidity_check(&z4, &act, &SearchOptions::default()).unwrap();
        assert_eq!(v.structures.len(), 2);
        assert!(!v.rigid);
        let w = v.witness.unwrap();
        assert!((0..4).all(|x| w.mul(x, x) == w.identity()));
    }

    #[test]
    fn s3_rigid_under_inner() {
        let s3 = PermutationGroup::symmetric(3, 100).unwrap().group;
        let act = GroupAction::generated(6, inner_automorphisms(&s3)).unwrap();
        let v = rigidity_check(&s3, &act, &SearchOptions::default()).unwrap();
        assert!(v.rigid);
    }

    #[test]
    fn k4_under_full_automorphisms() {
        let z2 = cyclic(2).unwrap();
        let k4 = direct_product(&z2, &z2).unwrap();
        let aut = automorphism_group(&k4).unwrap();
        let act = GroupAction::generated(4, aut.generators.clone()).unwrap();
        assert_eq!(act.order(), 6);
        let v = rigidity_check(&k4, &act, &SearchOptions::default()).unwrap();
        assert!(v.rigid);
    }

    #[test]
    fn trivial_action_on_four_points() {
        let s = equivariant_structures(&GroupAction::trivial(4), &SearchOptions::default()).unwrap();
        assert_eq!(s.structures.len(), 2);
        // 4!/|Aut Z4| + 4!/|Aut K4| labeled tables.
        assert_eq!(s.tables_found, 16);
    }

    #[test]
    fn fixed_point_rule_is_conservative() {
        let act = GroupAction::generated(6, vec![vec![0, 2, 1, 3, 5, 4]]).unwrap();
        let on = equivariant_structures(&act, &SearchOptions::default()).unwrap();
        let off = equivariant_structures(
            &act,
            &SearchOptions { fixed_point_rule: false, ..SearchOptions::default() },
        )
        .unwrap();
        let tables = |s: &StructureSearch| -> Vec<Vec<u16>> { s.structures.iter().map(|g| g.raw_table().to_vec()).collect() };
        assert_eq!(tables(&on), tables(&off));
        assert!(on.nodes <= off.nodes);
    }

    #[test]
    fn budget_is_enforced() {
        let r = equivariant_structures(
            &GroupAction::trivial(6),
            &SearchOptions { node_budget: 10, ..SearchOptions::default() },
        );
        assert!(matches!(r, Err(Error::SearchBudgetExceeded(10))));
    }
}
