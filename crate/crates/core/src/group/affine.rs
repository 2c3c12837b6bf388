use super::builder::build_concrete;
use super::matrix::{predicted_order, Matrix, MatrixKind};
use super::CayleyGroup;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

fn format_vec(f: &FieldSpec, v: &[FieldElement]) -> String {
    let parts: Vec<String> = v.iter().map(|&x| f.format(x)).collect();
    format!("({})", parts.join(","))
}

fn basis_generators(f: &FieldSpec, n: usize) -> Vec<Vec<FieldElement>> {
    let mut out = Vec::new();
    for i in 0..n {
        for d in 0..f.degree() {
            let mut v = vec![FieldElement::ZERO; n];
            v[i] = f.from_code((f.characteristic() as usize).pow(d));
            out.push(v);
        }
    }
    out
}

fn vec_add(f: &FieldSpec, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

/// The additive group `F_q^n`, indexed by the lexicographic order of
/// coordinate codes.
#[derive(Clone, Debug)]
pub struct VectorGroup {
    pub n: usize,
    pub field: FieldSpec,
    pub group: CayleyGroup,
    pub elements: Vec<Vec<FieldElement>>,
}

impl VectorGroup {
    pub fn new(n: usize, field: FieldSpec, max_order: usize) -> Result<Self> {
        let order = (field.order() as u128).saturating_pow(n as u32);
        if order > max_order as u128 {
            return Err(Error::TooLarge(format!("order {order} exceeds the bound {max_order}")));
        }
        let gens = basis_generators(&field, n);
        let (group, elements) = build_concrete(
            vec![FieldElement::ZERO; n],
            &gens,
            max_order,
            |a, b| vec_add(&field, a, b),
            |v| format_vec(&field, v),
        )?;
        Ok(VectorGroup {
            n,
            field,
            group,
            elements,
        })
    }

    pub fn index_of(&self, v: &[FieldElement]) -> Option<usize> {
        self.elements.binary_search_by(|e| e.as_slice().cmp(v)).ok()
    }

    /// The automorphism `v -> M v` for an invertible `M`.
    pub fn linear_action(&self, m: &Matrix) -> Result<Vec<usize>> {
        if m.n != self.n || m.det(&self.field).is_zero() {
            return Err(Error::BadParameters("action matrix must be invertible of matching size".into()));
        }
        Ok(self
            .elements
            .iter()
            .map(|v| self.index_of(&m.apply(&self.field, v)).expect("closed"))
            .collect())
    }

    /// The automorphism `v -> a v` for a nonzero scalar `a`.
    pub fn scalar_action(&self, a: FieldElement) -> Result<Vec<usize>> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self
            .elements
            .iter()
            .map(|v| {
                let w: Vec<FieldElement> = v.iter().map(|&x| self.field.mul(a, x)).collect();
                self.index_of(&w).expect("closed")
            })
            .collect())
    }
}

/// The affine group `F_q^n x| SL_n(F_q)` with product
/// `(a, A)(b, B) = (a + A b, A B)`.
#[derive(Clone, Debug)]
pub struct AffineGroup {
    pub n: usize,
    pub field: FieldSpec,
    pub group: CayleyGroup,
    pub elements: Vec<(Vec<FieldElement>, Matrix)>,
}

impl AffineGroup {
    pub fn new(n: usize, field: FieldSpec, max_order: usize) -> Result<Self> {
        let q = field.order() as u64;
        let order = predicted_order(MatrixKind::Sl, n as u32, q)
            .saturating_mul((q as u128).saturating_pow(n as u32));
        if order > max_order as u128 {
            return Err(Error::TooLarge(format!("order {order} exceeds the bound {max_order}")));
        }
        let zero = vec![FieldElement::ZERO; n];
        let mut gens: Vec<(Vec<FieldElement>, Matrix)> = basis_generators(&field, n)
            .into_iter()
            .map(|v| (v, Matrix::identity(n)))
            .collect();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    for d in 0..field.degree() {
                        let x = field.from_code((field.characteristic() as usize).pow(d));
                        gens.push((zero.clone(), Matrix::elementary(n, i, j, x)));
                    }
                }
            }
        }
        let (group, elements) = build_concrete(
            (zero.clone(), Matrix::identity(n)),
            &gens,
            max_order,
            |(a, am), (b, bm)| (vec_add(&field, a, &am.apply(&field, b)), am.mul(&field, bm)),
            |(a, am)| format!("({};{})", format_vec(&field, a), am.format(&field)),
        )?;
        debug_assert_eq!(group.order() as u128, order);
        Ok(AffineGroup {
            n,
            field,
            group,
            elements,
        })
    }

    pub fn index_of(&self, a: &[FieldElement], m: &Matrix) -> Option<usize> {
        self.elements
            .binary_search_by(|(v, mm)| (v.as_slice(), mm).cmp(&(a, m)))
            .ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::field_of_order;

    #[test]
    fn vector_group_orders() {
        let v = VectorGroup::new(2, field_of_order(3).unwrap(), 1000).unwrap();
        assert_eq!(v.group.order(), 9);
        assert!(v.group.is_abelian());
        let f4 = VectorGroup::new(1, field_of_order(4).unwrap(), 1000).unwrap();
        assert_eq!(f4.group.order(), 4);
        assert!(f4.group.element_orders().iter().all(|&o| o <= 2));
    }

    #[test]
    fn affine_orders_and_product_rule() {
        let f = field_of_order(2).unwrap();
        let g = AffineGroup::new(2, f.clone(), 1000).unwrap();
        assert_eq!(g.group.order(), 24);
        let e1 = vec![FieldElement::ONE, FieldElement::ZERO];
        let a = Matrix::elementary(2, 0, 1, FieldElement::ONE);
        let x = g.index_of(&[FieldElement::ZERO; 2], &a).unwrap();
        let y = g.index_of(&[FieldElement::ZERO, FieldElement::ONE], &Matrix::identity(2)).unwrap();
        // (0, A)(e_2, I) = (A e_2, A) = (e_1 + e_2, A)
        let prod = g.group.mul(x, y);
        let e12 = vec_add(&f, &e1, &[FieldElement::ZERO, FieldElement::ONE]);
        assert_eq!(prod, g.index_of(&e12, &a).unwrap());
        assert_eq!(AffineGroup::new(2, field_of_order(3).unwrap(), 1000).unwrap().group.order(), 216);
    }
}
