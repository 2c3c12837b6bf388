//! Brute-force reference computations for cross-checking the solvers on
//! tiny inputs. Nothing here shares code with the searches it checks
//! beyond the Cayley table type itself.

use std::collections::BTreeSet;

use crate::cohomology::GModule;
use crate::error::{Error, Result};
use crate::group::CayleyGroup;
use crate::rigidity::GroupAction;

/// Largest table handled by [`canonical_table`].
pub const CANONICAL_MAX: usize = 8;
/// Cap on the number of candidate cochains enumerated.
pub const ENUMERATION_CAP: u128 = 1 << 22;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    rec(0, &mut cur, &mut out);
    out
}

fn relabel(table: &[usize], n: usize, p: &[usize]) -> Vec<usize> {
    // New table t' with t'(p x, p y) = p t(x, y).
    let mut out = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            out[p[x] * n + p[y]] = p[table[x * n + y]];
        }
    }
    out
}

/// Lexicographically least relabeling of a multiplication table.
pub fn canonical_form(table: &[usize], n: usize) -> Vec<usize> {
    assert!(n <= CANONICAL_MAX, "canonical form by enumeration needs n <= {CANONICAL_MAX}");
    permutations(n)
        .iter()
        .map(|p| relabel(table, n, p))
        .min()
        .unwrap_or_default()
}

pub fn canonical_table(g: &CayleyGroup) -> Vec<usize> {
    let n = g.order();
    let t: Vec<usize> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).map(|(x, y)| g.mul(x, y)).collect();
    canonical_form(&t, n)
}

fn is_group_table(t: &[usize], n: usize) -> bool {
    let has_identity = (0..n).any(|e| (0..n).all(|x| t[e * n + x] == x && t[x * n + e] == x));
    has_identity
        && (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| t[t[x * n + y] * n + z] == t[x * n + t[y * n + z]])))
}

fn latin_squares(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, cell: usize, t: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cell == n * n {
            out.push(t.clone());
            return;
        }
        let (x, y) = (cell / n, cell % n);
        for v in 0..n {
            let row_ok = (0..y).all(|j| t[x * n + j] != v);
            let col_ok = (0..x).all(|i| t[i * n + y] != v);
            if row_ok && col_ok {
                t[cell] = v;
                rec(n, cell + 1, t, out);
            }
        }
    }
    let mut out = Vec::new();
    rec(n, 0, &mut vec![0; n * n], &mut out);
    out
}

/// Canonical forms of all group structures on `n <= 4` points admitting
/// the action, by filtering every Latin square of order `n`.
pub fn latin_square_classes(action: &GroupAction) -> Result<BTreeSet<Vec<usize>>> {
    let n = action.n;
    if n == 0 || n > 4 {
        return Err(Error::TooLarge(format!("Latin-square enumeration needs 1 <= n <= 4, got {n}")));
    }
    let mut classes = BTreeSet::new();
    for t in latin_squares(n) {
        let equivariant = action.elements.iter().all(|a| {
            (0..n).all(|x| (0..n).all(|y| t[a[x] * n + a[y]] == a[t[x * n + y]]))
        });
        if equivariant && is_group_table(&t, n) {
            classes.insert(canonical_form(&t, n));
        }
    }
    Ok(classes)
}

/// `|H^2(G, Z/m)|` by enumerating every normalized 2-cochain.
pub fn h2_order_exhaustive(g: &CayleyGroup, m: u64) -> Result<u128> {
    let n = g.order();
    let e = g.identity();
    let cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| x != e && y != e)
        .collect();
    let total = u128::from(m).checked_pow(cells.len() as u32).unwrap_or(u128::MAX);
    if total > ENUMERATION_CAP {
        return Err(Error::TooLarge(format!("{total} cochains")));
    }
    let mut w = vec![0u64; n * n];
    let mut cocycles: u128 = 0;
    for code in 0..total {
        let mut c = code;
        for &(x, y) in &cells {
            w[x * n + y] = (c % u128::from(m)) as u64;
            c /= u128::from(m);
        }
        let ok = (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    (w[x * n + y] + w[g.mul(x, y) * n + z]) % m == (w[y * n + z] + w[x * n + g.mul(y, z)]) % m
                })
            })
        });
        if ok {
            cocycles += 1;
        }
    }
    let mut boundaries = BTreeSet::new();
    let others: Vec<usize> = (0..n).filter(|&x| x != e).collect();
    let nphi = u128::from(m).pow(others.len() as u32);
    let mut phi = vec![0u64; n];
    for code in 0..nphi {
        let mut c = code;
        for &x in &others {
            phi[x] = (c % u128::from(m)) as u64;
            c /= u128::from(m);
        }
        let d: Vec<u64> = cells
            .iter()
            .map(|&(x, y)| (phi[x] + phi[y] + m - phi[g.mul(x, y)]) % m)
            .collect();
        boundaries.insert(d);
    }
    Ok(cocycles / boundaries.len() as u128)
}

/// Number of bimultiplicative maps `G x G -> C^x`, counted with values in
/// the roots of unity of order dividing the exponent.
pub fn bicharacter_count_exhaustive(g: &CayleyGroup) -> Result<u128> {
    let n = g.order();
    let e = g.identity();
    let exp = (0..n).map(|x| g.element_order(x) as u64).fold(1, crate::arith::lcm);
    let cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| x != e && y != e)
        .collect();
    let total = u128::from(exp).checked_pow(cells.len() as u32).unwrap_or(u128::MAX);
    if total > ENUMERATION_CAP {
        return Err(Error::TooLarge(format!("{total} candidate maps")));
    }
    let mut b = vec![0u64; n * n];
    let mut count = 0;
    for code in 0..total {
        let mut c = code;
        for &(x, y) in &cells {
            b[x * n + y] = (c % u128::from(exp)) as u64;
            c /= u128::from(exp);
        }
        let ok = (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    b[g.mul(x, y) * n + z] == (b[x * n + z] + b[y * n + z]) % exp
                        && b[z * n + g.mul(x, y)] == (b[z * n + x] + b[z * n + y]) % exp
                })
            })
        });
        if ok {
            count += 1;
        }
    }
    Ok(count)
}

/// `(|Z^1|, |B^1|)` by enumerating cocycle values on a generating set.
pub fn z1_b1_exhaustive(g: &CayleyGroup, m: &GModule) -> Result<(u128, u128)> {
    let n = g.order();
    let gens = g.generating_set();
    let d = m.dim;
    let q = m.modulus;
    let module_size = u128::from(q).pow(d as u32);
    let total = module_size.checked_pow(gens.len() as u32).unwrap_or(u128::MAX);
    if total > ENUMERATION_CAP {
        return Err(Error::TooLarge(format!("{total} generator assignments")));
    }
    let vector = |mut code: u128| -> Vec<u64> {
        (0..d)
            .map(|_| {
                let v = (code % u128::from(q)) as u64;
                code /= u128::from(q);
                v
            })
            .collect()
    };
    let apply = |x: usize, v: &[u64]| -> Vec<u64> {
        (0..d)
            .map(|i| (0..d).fold(0, |acc, t| (acc + m.actions[x][i][t] * v[t]) % q))
            .collect()
    };
    let add = |a: &[u64], b: &[u64]| -> Vec<u64> { a.iter().zip(b).map(|(x, y)| (x + y) % q).collect() };
    let mut z1 = 0u128;
    for code in 0..total {
        let mut c = code;
        let gen_vals: Vec<Vec<u64>> = gens
            .iter()
            .map(|_| {
                let v = vector(c % module_size);
                c /= module_size;
                v
            })
            .collect();
        // Extend by breadth-first search, c(x s) = c(x) + x c(s).
        let mut val: Vec<Option<Vec<u64>>> = vec![None; n];
        val[g.identity()] = Some(vec![0; d]);
        let mut queue = vec![g.identity()];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            i += 1;
            for (k, &s) in gens.iter().enumerate() {
                let y = g.mul(x, s);
                if val[y].is_none() {
                    let cx = val[x].clone().expect("visited");
                    val[y] = Some(add(&cx, &apply(x, &gen_vals[k])));
                    queue.push(y);
                }
            }
        }
        let val: Vec<Vec<u64>> = val.into_iter().map(|v| v.expect("generated")).collect();
        let ok = (0..n).all(|x| (0..n).all(|y| val[g.mul(x, y)] == add(&val[x], &apply(x, &val[y]))));
        if ok {
            z1 += 1;
        }
    }
    let mut b1 = BTreeSet::new();
    for code in 0..module_size {
        let a = vector(code);
        let cob: Vec<Vec<u64>> = (0..n)
            .map(|x| apply(x, &a).iter().zip(&a).map(|(u, v)| (u + q - v) % q).collect())
            .collect();
        b1.insert(cob);
    }
    Ok((z1, b1.len() as u128))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, direct_product};

    #[test]
    fn latin_squares_of_order_four() {
        assert_eq!(latin_squares(4).len(), 576);
        let classes = latin_square_classes(&GroupAction::trivial(4)).unwrap();
        assert_eq!(classes.len(), 2);
    }

    #[test]
    fn exhaustive_h2_small() {
        let z2 = cyclic(2).unwrap();
        assert_eq!(h2_order_exhaustive(&z2, 2).unwrap(), 2);
        let k4 = direct_product(&z2, &z2).unwrap();
        assert_eq!(h2_order_exhaustive(&k4, 4).unwrap(), 8);
        assert_eq!(bicharacter_count_exhaustive(&k4).unwrap(), 16);
    }
}
