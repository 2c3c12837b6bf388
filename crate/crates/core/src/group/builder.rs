use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use super::{CayleyGroup, MAX_TABLE_ORDER};
use crate::error::{Error, Result};

/// Default memory ceiling for a table, overridable by `RIGIDKIT_MAX_MEM_MB`.
pub const DEFAULT_MAX_MEM_MB: usize = 1024;

pub(crate) fn check_table_memory(n: usize) -> Result<()> {
    let cap_mb = std::env::var("RIGIDKIT_MAX_MEM_MB")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(DEFAULT_MAX_MEM_MB);
    let bytes = n.saturating_mul(n).saturating_mul(2);
    if n > MAX_TABLE_ORDER || bytes > cap_mb.saturating_mul(1 << 20) {
        return Err(Error::TooLarge(format!(
            "table of order {n} needs {} MB (cap {cap_mb} MB)",
            bytes >> 20
        )));
    }
    Ok(())
}

/// Materializes the group generated by `gens` inside some concrete
/// associative structure. Elements are sorted by `Ord`, so indices follow
/// the canonical order of the concrete representation.
///
/// Only right multiplications by generators are evaluated concretely; the
/// rest of the table is filled by `x * (y s) = (x y) * s` along a
/// breadth-first tree.
pub fn build_concrete<T, F, L>(
    identity: T,
    gens: &[T],
    max_order: usize,
    mul: F,
    label: L,
) -> Result<(CayleyGroup, Vec<T>)>
where
    T: Clone + Ord + Hash,
    F: Fn(&T, &T) -> T,
    L: Fn(&T) -> String,
{
    let mut index: HashMap<T, usize> = HashMap::new();
    let mut elems = vec![identity.clone()];
    index.insert(identity.clone(), 0);
    let mut i = 0;
    while i < elems.len() {
        let x = elems[i].clone();
        i += 1;
        for s in gens {
            let y = mul(&x, s);
            if !index.contains_key(&y) {
                if elems.len() >= max_order.min(MAX_TABLE_ORDER) {
                    return Err(Error::TooLarge(format!(
                        "group exceeds the order bound {}",
                        max_order.min(MAX_TABLE_ORDER)
                    )));
                }
                index.insert(y.clone(), elems.len());
                elems.push(y);
            }
        }
    }
    let n = elems.len();
    check_table_memory(n)?;
    elems.sort();
    for (i, e) in elems.iter().enumerate() {
        *index.get_mut(e).unwrap() = i;
    }
    let id = index[&identity];
    let rmul: Vec<Vec<usize>> = gens
        .iter()
        .map(|s| elems.iter().map(|x| index[&mul(x, s)]).collect())
        .collect();
    drop(index);

    // Breadth-first tree from the identity: order[t] = parent(order[t]) * gens[via].
    let mut order = Vec::with_capacity(n);
    let mut tree = vec![(usize::MAX, usize::MAX); n];
    let mut seen = vec![false; n];
    seen[id] = true;
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        order.push(x);
        for (si, r) in rmul.iter().enumerate() {
            let y = r[x];
            if !seen[y] {
                seen[y] = true;
                tree[y] = (x, si);
                queue.push_back(y);
            }
        }
    }
    debug_assert_eq!(order.len(), n);

    let mut table = vec![0u16; n * n];
    for x in 0..n {
        let row = &mut table[x * n..(x + 1) * n];
        row[id] = x as u16;
        for &y in &order[1..] {
            let (parent, si) = tree[y];
            row[y] = rmul[si][row[parent] as usize] as u16;
        }
    }
    let labels = elems.iter().map(label).collect();
    let gen_idx: Vec<usize> = rmul.iter().map(|r| r[id]).collect();
    let g = CayleyGroup::from_flat_with_gens(n, table, Some(labels), &gen_idx)?;
    Ok((g, elems))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers_mod_n_under_addition() {
        let (g, elems) = build_concrete(0u32, &[1], 100, |a, b| (a + b) % 7, |a| a.to_string()).unwrap();
        assert_eq!(g.order(), 7);
        assert_eq!(elems, (0..7).collect::<Vec<_>>());
        assert_eq!(g.mul(3, 5), 1);
    }

    #[test]
    fn respects_order_bound() {
        let r = build_concrete(0u32, &[1], 5, |a, b| (a + b) % 7, |a| a.to_string());
        assert!(matches!(r, Err(Error::TooLarge(_))));
    }

    #[test]
    fn memory_cap_is_enforced() {
        assert!(check_table_memory(100).is_ok());
        assert!(check_table_memory(MAX_TABLE_ORDER + 1).is_err());
    }
}
