use std::fmt;

use super::builder::build_concrete;
use super::CayleyGroup;
use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// Square matrix over a finite field, row-major.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matrix {
    pub n: usize,
    pub entries: Vec<FieldElement>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let codes: Vec<usize> = self.entries.iter().map(|e| e.code()).collect();
        write!(f, "Matrix{codes:?}")
    }
}

impl Matrix {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![FieldElement::ZERO; n * n];
        for i in 0..n {
            entries[i * n + i] = FieldElement::ONE;
        }
        Matrix { n, entries }
    }

    /// Builds a matrix from integer rows, reducing each entry as a code.
    pub fn from_codes(f: &FieldSpec, rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::BadParameters("matrix must be square".into()));
            }
            for &c in r {
                if c >= f.order() {
                    return Err(Error::BadParameters(format!("entry {c} is not a field code")));
                }
                entries.push(f.from_code(c));
            }
        }
        Ok(Matrix { n, entries })
    }

    /// `I + x E_ij`.
    pub fn elementary(n: usize, i: usize, j: usize, x: FieldElement) -> Self {
        let mut m = Self::identity(n);
        m.entries[i * n + j] = x;
        m
    }

    pub fn diagonal(d: &[FieldElement]) -> Self {
        let n = d.len();
        let mut entries = vec![FieldElement::ZERO; n * n];
        for (i, &x) in d.iter().enumerate() {
            entries[i * n + i] = x;
        }
        Matrix { n, entries }
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.entries[i * self.n + j]
    }

    pub fn mul(&self, f: &FieldSpec, other: &Matrix) -> Matrix {
        let n = self.n;
        let mut entries = vec![FieldElement::ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let e = &mut entries[i * n + j];
                    *e = f.add(*e, f.mul(a, other.get(k, j)));
                }
            }
        }
        Matrix { n, entries }
    }

    pub fn scale(&self, f: &FieldSpec, a: FieldElement) -> Matrix {
        Matrix {
            n: self.n,
            entries: self.entries.iter().map(|&x| f.mul(a, x)).collect(),
        }
    }

    pub fn apply(&self, f: &FieldSpec, v: &[FieldElement]) -> Vec<FieldElement> {
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(FieldElement::ZERO, |acc, j| f.add(acc, f.mul(self.get(i, j), v[j])))
            })
            .collect()
    }

    pub fn det(&self, f: &FieldSpec) -> FieldElement {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = FieldElement::ONE;
        for c in 0..n {
            let Some(r) = (c..n).find(|&r| !a[r * n + c].is_zero()) else {
                return FieldElement::ZERO;
            };
            if r != c {
                for j in 0..n {
                    a.swap(r * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let piv = a[c * n + c];
            det = f.mul(det, piv);
            let pinv = f.inv(piv).expect("nonzero pivot");
            for r in c + 1..n {
                let factor = f.mul(a[r * n + c], pinv);
                if factor.is_zero() {
                    continue;
                }
                for j in c..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[c * n + j]));
                }
            }
        }
        det
    }

    pub fn inverse(&self, f: &FieldSpec) -> Result<Matrix> {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut b = Matrix::identity(n).entries;
        for c in 0..n {
            let r = (c..n).find(|&r| !a[r * n + c].is_zero()).ok_or(Error::DivisionByZero)?;
            for j in 0..n {
                a.swap(r * n + j, c * n + j);
                b.swap(r * n + j, c * n + j);
            }
            let pinv = f.inv(a[c * n + c])?;
            for j in 0..n {
                a[c * n + j] = f.mul(a[c * n + j], pinv);
                b[c * n + j] = f.mul(b[c * n + j], pinv);
            }
            for r in 0..n {
                if r == c || a[r * n + c].is_zero() {
                    continue;
                }
                let factor = a[r * n + c];
                for j in 0..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[c * n + j]));
                    b[r * n + j] = f.sub(b[r * n + j], f.mul(factor, b[c * n + j]));
                }
            }
        }
        Ok(Matrix { n, entries: b })
    }

    pub fn format(&self, f: &FieldSpec) -> String {
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| f.format(self.get(i, j)))
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        format!("[{}]", rows.join(";"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixKind {
    Sl,
    Gl,
    Psl,
    Pgl,
}

/// A linear group together with the concrete matrices behind its indices.
/// For the projective kinds each index stands for the coset of scalars
/// whose lexicographically least member is stored.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    pub kind: MatrixKind,
    pub n: usize,
    pub field: FieldSpec,
    pub group: CayleyGroup,
    pub elements: Vec<Matrix>,
    scalars: Vec<FieldElement>,
}

/// Order of `SL_n(F_q)` (saturating).
pub fn sl_order(n: u32, q: u64) -> u128 {
    let mut o: u128 = 1;
    for i in 0..n {
        o = o.saturating_mul((q as u128).saturating_pow(i));
    }
    for i in 2..=n {
        o = o.saturating_mul((q as u128).saturating_pow(i) - 1);
    }
    o
}

/// Predicted order of the requested linear group.
pub fn predicted_order(kind: MatrixKind, n: u32, q: u64) -> u128 {
    let sl = sl_order(n, q);
    let d = gcd(n as u64, q - 1) as u128;
    match kind {
        MatrixKind::Sl => sl,
        MatrixKind::Gl => sl.saturating_mul(q as u128 - 1),
        MatrixKind::Psl => sl / d,
        MatrixKind::Pgl => sl,
    }
}

impl MatrixGroup {
    pub fn new(kind: MatrixKind, n: usize, field: FieldSpec, max_order: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadParameters("matrix size must be positive".into()));
        }
        let predicted = predicted_order(kind, n as u32, field.order() as u64);
        if predicted > max_order as u128 {
            let shown = if predicted == u128::MAX { "above 2^128".to_string() } else { predicted.to_string() };
            return Err(Error::TooLarge(format!("order {shown} exceeds the bound {max_order}")));
        }
        let scalars: Vec<FieldElement> = match kind {
            MatrixKind::Sl | MatrixKind::Gl => vec![FieldElement::ONE],
            MatrixKind::Psl => field
                .units()
                .filter(|&a| field.pow(a, n as u64) == FieldElement::ONE)
                .collect(),
            MatrixKind::Pgl => field.units().collect(),
        };
        let mut gens = Vec::new();
        // Additive generators of F_q: the monomials 1, x, .., x^(k-1).
        let basis: Vec<FieldElement> = (0..field.degree())
            .map(|i| field.from_code((field.characteristic() as usize).pow(i)))
            .collect();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    for &b in &basis {
                        gens.push(Matrix::elementary(n, i, j, b));
                    }
                }
            }
        }
        if matches!(kind, MatrixKind::Gl | MatrixKind::Pgl) && field.order() > 2 {
            let mut d = vec![FieldElement::ONE; n];
            d[0] = field.primitive_element();
            gens.push(Matrix::diagonal(&d));
        }
        let canon = |m: Matrix| -> Matrix {
            scalars
                .iter()
                .map(|&a| m.scale(&field, a))
                .min()
                .expect("scalar group is nonempty")
        };
        let gens: Vec<Matrix> = gens.into_iter().map(canon).collect();
        let (group, elements) = build_concrete(
            Matrix::identity(n),
            &gens,
            max_order,
            |a, b| canon(a.mul(&field, b)),
            |m| m.format(&field),
        )?;
        debug_assert_eq!(group.order() as u128, predicted);
        Ok(MatrixGroup {
            kind,
            n,
            field,
            group,
            elements,
            scalars,
        })
    }

    fn canonical(&self, m: &Matrix) -> Matrix {
        self.scalars
            .iter()
            .map(|&a| m.scale(&self.field, a))
            .min()
            .expect("scalar group is nonempty")
    }

    /// Index of the element represented by `m` (any member of its coset).
    pub fn index_of(&self, m: &Matrix) -> Option<usize> {
        if m.n != self.n {
            return None;
        }
        self.elements.binary_search(&self.canonical(m)).ok()
    }

    /// The automorphism `X -> M X M^-1` for an invertible `M`, as an
    /// index permutation. `M` need not lie in the group itself.
    pub fn conjugation(&self, m: &Matrix) -> Result<Vec<usize>> {
        if m.det(&self.field).is_zero() {
            return Err(Error::BadParameters("conjugating matrix is singular".into()));
        }
        let minv = m.inverse(&self.field)?;
        self.elements
            .iter()
            .map(|x| {
                let y = m.mul(&self.field, x).mul(&self.field, &minv);
                self.index_of(&y)
                    .ok_or_else(|| Error::BadParameters("conjugation leaves the group".into()))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{field, field_of_order};

    #[test]
    fn orders_match_formulas() {
        for (kind, n, q, order) in [
            (MatrixKind::Sl, 2, 3, 24),
            (MatrixKind::Sl, 2, 5, 120),
            (MatrixKind::Sl, 3, 2, 168),
            (MatrixKind::Gl, 2, 3, 48),
            (MatrixKind::Psl, 2, 5, 60),
            (MatrixKind::Pgl, 2, 3, 24),
            (MatrixKind::Sl, 2, 4, 60),
        ] {
            let g = MatrixGroup::new(kind, n, field_of_order(q).unwrap(), 1 << 14).unwrap();
            assert_eq!(g.group.order(), order, "{kind:?} {n} {q}");
            assert_eq!(predicted_order(kind, n as u32, q), order as u128);
        }
    }

    #[test]
    fn identity_is_index_of_identity_matrix() {
        let g = MatrixGroup::new(MatrixKind::Sl, 2, field(3, 1).unwrap(), 1 << 14).unwrap();
        assert_eq!(g.index_of(&Matrix::identity(2)), Some(g.group.identity()));
    }

    #[test]
    fn det_and_inverse() {
        let f = field(5, 1).unwrap();
        let m = Matrix::from_codes(&f, &[vec![2, 1], vec![3, 4]]).unwrap();
        assert_eq!(m.det(&f), f.from_int(5)); // 8 - 3 = 5 = 0
        let m = Matrix::from_codes(&f, &[vec![2, 1], vec![1, 4]]).unwrap();
        assert_eq!(m.det(&f), f.from_int(7));
        assert_eq!(m.mul(&f, &m.inverse(&f).unwrap()), Matrix::identity(2));
    }

    #[test]
    fn too_large_is_reported_before_building() {
        let r = MatrixGroup::new(MatrixKind::Sl, 4, field(3, 1).unwrap(), 1 << 14);
        assert!(matches!(r, Err(Error::TooLarge(_))));
    }
}
