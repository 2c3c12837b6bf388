//! Exact linear algebra over `Z/m` for sparse systems.
//!
//! The modulus is split into prime powers. Over each local ring `Z/p^e`
//! the system is first reduced with unit pivots only (sparse Gauss-Jordan),
//! which leaves a small set of free columns; the remaining rows are then
//! diagonalized densely by minimum-valuation pivoting.

use crate::arith::{factorize, inv_mod, invariant_factors};

/// Sparse row: `(column, value)` pairs sorted by column, values nonzero.
pub type SparseRow = Vec<(usize, u64)>;

/// Normalizes an arbitrary list of `(column, integer)` terms modulo `m`.
pub fn normalize_row(terms: impl IntoIterator<Item = (usize, i64)>, m: u64) -> SparseRow {
    let mut v: Vec<(usize, i64)> = terms.into_iter().collect();
    v.sort_unstable_by_key(|t| t.0);
    let mut out: SparseRow = Vec::with_capacity(v.len());
    for (c, x) in v {
        let x = x.rem_euclid(m as i64) as u64;
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv = (*lv + x) % m,
            _ => out.push((c, x)),
        }
    }
    out.retain(|t| t.1 != 0);
    out
}

/// `a - coef * b` modulo `q`, both sorted.
fn axpy(a: &[(usize, u64)], coef: u64, b: &[(usize, u64)], q: u64) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let neg = (q - coef % q) % q;
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            let v = neg * b[j].1 % q;
            if v != 0 {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = (a[i].1 + neg * b[j].1) % q;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn valuation(x: u64, p: u64, e: u32) -> u32 {
    if x == 0 {
        return e;
    }
    let mut v = 0;
    let mut x = x;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

const NONE: u32 = u32::MAX;

struct Row {
    entries: SparseRow,
    rhs: u64,
}

/// Result of the sparse unit-pivot phase over `Z/p^e`.
struct UnitPhase {
    pivot_of_col: Vec<u32>,
    pivots: Vec<(usize, Row)>,
    leftover: Vec<Row>,
    inconsistent: bool,
}

fn unit_phase(p: u64, q: u64, ncols: usize, rows: Vec<Row>) -> UnitPhase {
    let mut ph = UnitPhase {
        pivot_of_col: vec![NONE; ncols],
        pivots: Vec::new(),
        leftover: Vec::new(),
        inconsistent: false,
    };
    let mut col_occ: Vec<Vec<u32>> = vec![Vec::new(); ncols];
    let mut pending = rows;
    loop {
        let mut new_pivot = false;
        for mut row in std::mem::take(&mut pending) {
            // Eliminate pivot columns; pivot rows hold no other pivot column.
            let hits: Vec<(usize, u64)> = row
                .entries
                .iter()
                .filter(|(c, _)| ph.pivot_of_col[*c] != NONE)
                .copied()
                .collect();
            for (c, _) in hits {
                let coef = match row.entries.binary_search_by_key(&c, |t| t.0) {
                    Ok(k) => row.entries[k].1,
                    Err(_) => continue,
                };
                let pr = &ph.pivots[ph.pivot_of_col[c] as usize].1;
                row.entries = axpy(&row.entries, coef, &pr.entries, q);
                row.rhs = (row.rhs + (q - coef) * pr.rhs) % q;
            }
            if row.entries.is_empty() {
                if row.rhs != 0 {
                    ph.inconsistent = true;
                }
                continue;
            }
            let best = row
                .entries
                .iter()
                .filter(|(_, v)| v % p != 0)
                .min_by_key(|(c, _)| (col_occ[*c].len(), *c))
                .copied();
            let Some((c, v)) = best else {
                ph.leftover.push(row);
                continue;
            };
            new_pivot = true;
            let vinv = inv_mod(v, q).expect("unit");
            for t in row.entries.iter_mut() {
                t.1 = t.1 * vinv % q;
            }
            row.rhs = row.rhs * vinv % q;
            let id = ph.pivots.len() as u32;
            // Remove column c from the existing pivot rows that contain it.
            for r in std::mem::take(&mut col_occ[c]) {
                let target = &ph.pivots[r as usize].1;
                let Ok(k) = target.entries.binary_search_by_key(&c, |t| t.0) else {
                    continue;
                };
                let coef = target.entries[k].1;
                let entries = axpy(&target.entries, coef, &row.entries, q);
                let rhs = (target.rhs + (q - coef) * row.rhs) % q;
                for &(cc, _) in &row.entries {
                    if cc != c {
                        col_occ[cc].push(r);
                    }
                }
                let t = &mut ph.pivots[r as usize].1;
                t.entries = entries;
                t.rhs = rhs;
            }
            for &(cc, _) in &row.entries {
                if cc != c {
                    col_occ[cc].push(id);
                }
            }
            ph.pivot_of_col[c] = id;
            ph.pivots.push((c, row));
        }
        if !new_pivot || ph.leftover.is_empty() {
            break;
        }
        pending = std::mem::take(&mut ph.leftover);
    }
    // Leftover rows may still mention columns that became pivots later.
    if !ph.leftover.is_empty() {
        let left = std::mem::take(&mut ph.leftover);
        for mut row in left {
            let hits: Vec<usize> = row
                .entries
                .iter()
                .filter(|(c, _)| ph.pivot_of_col[*c] != NONE)
                .map(|t| t.0)
                .collect();
            for c in hits {
                if let Ok(k) = row.entries.binary_search_by_key(&c, |t| t.0) {
                    let coef = row.entries[k].1;
                    let pr = &ph.pivots[ph.pivot_of_col[c] as usize].1;
                    row.entries = axpy(&row.entries, coef, &pr.entries, q);
                    row.rhs = (row.rhs + (q - coef) * pr.rhs) % q;
                }
            }
            debug_assert!(row.entries.iter().all(|(_, v)| v % p == 0));
            if row.entries.is_empty() {
                if row.rhs != 0 {
                    ph.inconsistent = true;
                }
            } else {
                ph.leftover.push(row);
            }
        }
    }
    ph
}

/// Diagonal produced by [`DenseSystem::diagonalize`].
struct Diagonal {
    /// Valuation of each diagonal entry, in pivot order.
    vals: Vec<u32>,
}

struct DenseSystem<'a> {
    p: u64,
    e: u32,
    q: u64,
    a: Vec<Vec<u64>>,
    rhs: Vec<u64>,
    ncols: usize,
    /// Rows of vectors expressed in the current column coordinates.
    coords: &'a mut Vec<Vec<u64>>,
    /// Columns of the accumulated column transform `V` (row-major `ncols x ncols`).
    v: Option<&'a mut Vec<Vec<u64>>>,
}

impl DenseSystem<'_> {
    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in self.a.iter_mut() {
            r.swap(i, j);
        }
        for y in self.coords.iter_mut() {
            y.swap(i, j);
        }
        if let Some(v) = self.v.as_deref_mut() {
            for r in v.iter_mut() {
                r.swap(i, j);
            }
        }
    }

    /// `col_j -= c * col_t` on the system.
    fn col_sub(&mut self, j: usize, t: usize, c: u64) {
        let q = self.q;
        for r in self.a.iter_mut() {
            r[j] = (r[j] + (q - c) * r[t] % q) % q;
        }
        // Coordinates transform contragrediently: y_t += c * y_j.
        for y in self.coords.iter_mut() {
            y[t] = (y[t] + c * y[j]) % q;
        }
        if let Some(v) = self.v.as_deref_mut() {
            for r in v.iter_mut() {
                r[j] = (r[j] + (q - c) * r[t] % q) % q;
            }
        }
    }

    fn diagonalize(&mut self) -> Diagonal {
        let (p, e, q) = (self.p, self.e, self.q);
        let nrows = self.a.len();
        let mut vals = Vec::new();
        for t in 0..nrows.min(self.ncols) {
            let mut best: Option<(u32, usize, usize)> = None;
            'scan: for i in t..nrows {
                for j in t..self.ncols {
                    let x = self.a[i][j];
                    if x != 0 {
                        let v = valuation(x, p, e);
                        if best.is_none_or(|b| v < b.0) {
                            best = Some((v, i, j));
                            if v == 0 {
                                break 'scan;
                            }
                        }
                    }
                }
            }
            let Some((v, i, j)) = best else { break };
            self.a.swap(t, i);
            self.rhs.swap(t, i);
            self.swap_cols(t, j);
            let pv = p.pow(v);
            let u = self.a[t][t] / pv;
            let uinv = inv_mod(u, q).expect("unit part");
            for x in self.a[t].iter_mut() {
                *x = *x * uinv % q;
            }
            self.rhs[t] = self.rhs[t] * uinv % q;
            let pivot_row = self.a[t].clone();
            for i in t + 1..nrows {
                let x = self.a[i][t];
                if x == 0 {
                    continue;
                }
                let f = x / pv;
                for (cell, &pr) in self.a[i].iter_mut().zip(&pivot_row) {
                    *cell = (*cell + (q - f) * pr % q) % q;
                }
                self.rhs[i] = (self.rhs[i] + (q - f) * self.rhs[t] % q) % q;
            }
            for j in t + 1..self.ncols {
                let x = self.a[t][j];
                if x != 0 {
                    self.col_sub(j, t, x / pv);
                }
            }
            vals.push(v);
        }
        Diagonal { vals }
    }
}

/// Elementary divisors of a subquotient, per prime.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct KernelQuotient {
    /// Invariant factors of the kernel.
    pub kernel: Vec<u64>,
    /// Invariant factors of the kernel modulo the given subgroup.
    pub quotient: Vec<u64>,
}

fn to_rows(rows: &[SparseRow], rhs: Option<&[u64]>, q: u64) -> Vec<Row> {
    rows.iter()
        .enumerate()
        .map(|(i, r)| Row {
            entries: r.iter().map(|&(c, v)| (c, v % q)).filter(|t| t.1 != 0).collect(),
            rhs: rhs.map_or(0, |b| b[i] % q),
        })
        .collect()
}

/// Kernel exponents and quotient exponents over one local ring.
fn local_kernel_quotient(
    p: u64,
    e: u32,
    ncols: usize,
    rows: &[SparseRow],
    sub: &[SparseRow],
) -> (Vec<u32>, Vec<u32>) {
    let q = p.pow(e);
    let ph = unit_phase(p, q, ncols, to_rows(rows, None, q));
    let free: Vec<usize> = (0..ncols).filter(|&c| ph.pivot_of_col[c] == NONE).collect();
    let mut pos = vec![usize::MAX; ncols];
    for (i, &c) in free.iter().enumerate() {
        pos[c] = i;
    }
    let nf = free.len();
    let dense: Vec<Vec<u64>> = ph
        .leftover
        .iter()
        .map(|r| {
            let mut d = vec![0u64; nf];
            for &(c, v) in &r.entries {
                d[pos[c]] = v;
            }
            d
        })
        .collect();
    let mut coords: Vec<Vec<u64>> = sub
        .iter()
        .map(|r| {
            let mut d = vec![0u64; nf];
            for &(c, v) in r {
                if pos[c] != usize::MAX {
                    d[pos[c]] = v % q;
                }
            }
            d
        })
        .collect();
    let nrows = dense.len();
    let mut sys = DenseSystem {
        p,
        e,
        q,
        a: dense,
        rhs: vec![0; nrows],
        ncols: nf,
        coords: &mut coords,
        v: None,
    };
    let diag = sys.diagonalize();
    // Kernel coordinate j lives in p^(e - k_j) Z/p^e, i.e. is a copy of Z/p^k_j.
    let k: Vec<u32> = (0..nf)
        .map(|j| diag.vals.get(j).map_or(e, |&v| v.min(e)))
        .collect();
    let kernel: Vec<u32> = k.iter().copied().filter(|&x| x > 0).collect();
    // Subgroup generators in the z-coordinates of the kernel.
    let mut rel: Vec<Vec<u64>> = coords
        .iter()
        .map(|y| {
            (0..nf)
                .map(|j| {
                    let shift = p.pow(e - k[j]);
                    debug_assert_eq!(y[j] % shift, 0, "subgroup element lies in the kernel");
                    y[j] / shift
                })
                .collect()
        })
        .collect();
    for (j, &kj) in k.iter().enumerate() {
        if kj < e {
            let mut r = vec![0u64; nf];
            r[j] = p.pow(kj) % q;
            rel.push(r);
        }
    }
    let nrel = rel.len();
    let mut none: Vec<Vec<u64>> = Vec::new();
    let mut sys = DenseSystem {
        p,
        e,
        q,
        a: rel,
        rhs: vec![0; nrel],
        ncols: nf,
        coords: &mut none,
        v: None,
    };
    let d2 = sys.diagonalize();
    let quotient: Vec<u32> = (0..nf)
        .map(|j| d2.vals.get(j).map_or(e, |&v| v.min(e)))
        .filter(|&x| x > 0)
        .collect();
    (kernel, quotient)
}

/// The kernel `K` of the system `rows * x = 0` over `Z/m^ncols` and the
/// quotient `K / <sub>`. Every vector of `sub` must lie in `K`.
pub fn kernel_quotient(m: u64, ncols: usize, rows: &[SparseRow], sub: &[SparseRow]) -> KernelQuotient {
    let mut kp = Vec::new();
    let mut qp = Vec::new();
    for (p, e) in factorize(m) {
        let (k, qt) = local_kernel_quotient(p, e, ncols, rows, sub);
        kp.push((p, k));
        qp.push((p, qt));
    }
    KernelQuotient {
        kernel: invariant_factors(&kp),
        quotient: invariant_factors(&qp),
    }
}

fn local_solve(p: u64, e: u32, ncols: usize, rows: &[SparseRow], rhs: &[u64]) -> Option<Vec<u64>> {
    let q = p.pow(e);
    let ph = unit_phase(p, q, ncols, to_rows(rows, Some(rhs), q));
    if ph.inconsistent {
        return None;
    }
    let free: Vec<usize> = (0..ncols).filter(|&c| ph.pivot_of_col[c] == NONE).collect();
    let mut pos = vec![usize::MAX; ncols];
    for (i, &c) in free.iter().enumerate() {
        pos[c] = i;
    }
    let nf = free.len();
    let dense: Vec<Vec<u64>> = ph
        .leftover
        .iter()
        .map(|r| {
            let mut d = vec![0u64; nf];
            for &(c, v) in &r.entries {
                d[pos[c]] = v;
            }
            d
        })
        .collect();
    let b: Vec<u64> = ph.leftover.iter().map(|r| r.rhs).collect();
    let mut v: Vec<Vec<u64>> = (0..nf)
        .map(|i| (0..nf).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut none: Vec<Vec<u64>> = Vec::new();
    let mut sys = DenseSystem {
        p,
        e,
        q,
        a: dense,
        rhs: b,
        ncols: nf,
        coords: &mut none,
        v: Some(&mut v),
    };
    let diag = sys.diagonalize();
    let c = sys.rhs.clone();
    let mut y = vec![0u64; nf];
    for (t, &val) in diag.vals.iter().enumerate() {
        let pv = p.pow(val);
        if c[t] % pv != 0 {
            return None;
        }
        y[t] = c[t] / pv;
    }
    if c[diag.vals.len()..].iter().any(|&x| x != 0) {
        return None;
    }
    let mut x = vec![0u64; ncols];
    for (i, &col) in free.iter().enumerate() {
        x[col] = (0..nf).fold(0, |acc, j| (acc + v[i][j] * y[j]) % q);
    }
    for (col, row) in &ph.pivots {
        let mut val = row.rhs;
        for &(cc, a) in &row.entries {
            if cc != *col {
                val = (val + (q - a) * x[cc] % q) % q;
            }
        }
        x[*col] = val;
    }
    Some(x)
}

/// A solution of `rows * x = rhs` over `Z/m`, if one exists.
pub fn solve(m: u64, ncols: usize, rows: &[SparseRow], rhs: &[u64]) -> Option<Vec<u64>> {
    assert_eq!(rows.len(), rhs.len());
    let mut x = vec![0u64; ncols];
    let mut modulus = 1u64;
    for (p, e) in factorize(m) {
        let q = p.pow(e);
        let xl = local_solve(p, e, ncols, rows, rhs)?;
        // CRT: x = x + modulus * t with t = (xl - x) / modulus mod q.
        let minv = inv_mod(modulus % q, q).unwrap_or(0);
        for (xi, &li) in x.iter_mut().zip(&xl) {
            let diff = (li + q - *xi % q) % q;
            let t = diff * minv % q;
            *xi += modulus * t;
        }
        modulus *= q;
    }
    if m == 1 {
        return Some(vec![0; ncols]);
    }
    Some(x)
}

/// Evaluates `rows * x` modulo `m`.
pub fn apply(m: u64, rows: &[SparseRow], x: &[u64]) -> Vec<u64> {
    rows.iter()
        .map(|r| r.iter().fold(0u64, |acc, &(c, v)| (acc + v % m * (x[c] % m)) % m))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_merges_and_reduces() {
        assert_eq!(normalize_row([(2, 3), (0, -1), (2, 1)], 4), vec![(0, 3)]);
    }

    #[test]
    fn kernel_over_composite_modulus() {
        // 2x = 0 over Z/4: kernel {0, 2} = Z/2.
        let kq = kernel_quotient(4, 1, &[vec![(0, 2)]], &[]);
        assert_eq!(kq.kernel, vec![2]);
        // x + y = 0 and 2x = 0 over Z/12 with y = -x: kernel {(x,-x): 2x = 0} = Z/2.
        let kq = kernel_quotient(12, 2, &[vec![(0, 1), (1, 1)], vec![(0, 2)]], &[]);
        assert_eq!(kq.kernel, vec![2]);
    }

    #[test]
    fn quotient_by_subgroup() {
        // No equations over Z/4 in two variables; quotient by <(2, 0)>.
        let kq = kernel_quotient(4, 2, &[], &[vec![(0, 2)]]);
        assert_eq!(kq.kernel, vec![4, 4]);
        assert_eq!(kq.quotient, vec![2, 4]);
    }

    #[test]
    fn solve_small_systems() {
        let rows = vec![vec![(0, 2), (1, 1)], vec![(1, 3)]];
        let x = solve(6, 2, &rows, &[5, 3]).unwrap();
        assert_eq!(apply(6, &rows, &x), vec![5, 3]);
        assert!(solve(4, 1, &[vec![(0, 2)]], &[1]).is_none());
    }
}
