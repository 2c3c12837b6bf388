//! Low-degree cohomology of finite groups.
//!
//! Coefficients are written additively: the roots of unity `mu_m` in the
//! circle group are identified with `Z/m` by `exp(2 pi i k / m) <-> k`, so the
//! additive character of `F_p` sending `1` to a primitive root corresponds
//! to `1 -> 1`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{gcd, inv_mod, is_prime};
use crate::error::{Error, Result};
use crate::field::{field_of_order, FieldElement, FieldSpec};
use crate::group::{derived_data, AffineGroup, CayleyGroup, Matrix, MatrixGroup, MatrixKind};
use crate::linalg::{kernel_quotient, normalize_row, solve, SparseRow};
use crate::presentation::Presentation;

/// Square matrix over `Z/m`, row-major.
pub type ModMatrix = Vec<Vec<u64>>;

/// Variable bound for [`z1_space`].
pub const Z1_MAX_VARIABLES: usize = 4096;
/// Variable bound for [`h2_group`].
pub const H2_MAX_VARIABLES: usize = 40_000;

fn identity_matrix(d: usize) -> ModMatrix {
    (0..d).map(|i| (0..d).map(|j| u64::from(i == j)).collect()).collect()
}

fn mat_mul(a: &ModMatrix, b: &ModMatrix, m: u64) -> ModMatrix {
    let d = a.len();
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| (0..d).fold(0, |acc, t| (acc + a[i][t] * b[t][j]) % m))
                .collect()
        })
        .collect()
}

fn mat_vec(a: &ModMatrix, v: &[u64], m: u64) -> Vec<u64> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(0, |acc, (x, y)| (acc + x * y) % m))
        .collect()
}

fn vec_add(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| (x + y) % m).collect()
}

/// Inverse over a prime field by Gauss-Jordan.
fn mat_inverse(a: &ModMatrix, p: u64) -> Option<ModMatrix> {
    let d = a.len();
    let mut w: Vec<Vec<u64>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..d).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    for c in 0..d {
        let piv = (c..d).find(|&r| w[r][c] % p != 0)?;
        w.swap(c, piv);
        let inv = inv_mod(w[c][c], p)?;
        for x in w[c].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..d {
            if r != c && w[r][c] != 0 {
                let f = w[r][c];
                let src = w[c].clone();
                for (x, s) in w[r].iter_mut().zip(&src) {
                    *x = (*x + (p - f) * s % p) % p;
                }
            }
        }
    }
    Some(w.into_iter().map(|r| r[d..].to_vec()).collect())
}

/// Expands a matrix over `F_q` to one over `F_p`, coordinate `i*k + a`
/// holding the `x^a` coefficient of the `i`-th entry.
pub fn expand_matrix(f: &FieldSpec, m: &Matrix) -> ModMatrix {
    let k = f.degree() as usize;
    let n = m.n;
    let mut out = vec![vec![0u64; n * k]; n * k];
    for i in 0..n {
        for j in 0..n {
            let block = f.mul_matrix(m.get(i, j));
            for a in 0..k {
                for b in 0..k {
                    out[i * k + a][j * k + b] = u64::from(block[a][b]);
                }
            }
        }
    }
    out
}

/// `Z/m`-module `(Z/m)^d` with a left action of a group by matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GModule {
    pub modulus: u64,
    pub dim: usize,
    /// One matrix per group element.
    pub actions: Vec<ModMatrix>,
}

impl GModule {
    /// Checks that `actions` is a homomorphism `G -> GL_d(Z/m)`. Failing
    /// element indices are reported through `InconsistentAction`.
    pub fn new(g: &CayleyGroup, modulus: u64, dim: usize, actions: Vec<ModMatrix>) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::BadParameters("modulus must be at least 2".into()));
        }
        if actions.len() != g.order()
            || actions.iter().any(|a| a.len() != dim || a.iter().any(|r| r.len() != dim))
        {
            return Err(Error::BadParameters("action matrices have the wrong shape".into()));
        }
        let mut actions = actions;
        for a in actions.iter_mut() {
            for r in a.iter_mut() {
                for x in r.iter_mut() {
                    *x %= modulus;
                }
            }
        }
        if actions[g.identity()] != identity_matrix(dim) {
            return Err(Error::InconsistentAction(g.identity()));
        }
        let gens = g.generating_set();
        for x in 0..g.order() {
            for &s in &gens {
                if actions[g.mul(x, s)] != mat_mul(&actions[x], &actions[s], modulus) {
                    return Err(Error::InconsistentAction(x));
                }
            }
        }
        Ok(GModule { modulus, dim, actions })
    }

    /// Trivial action on `Z/m`.
    pub fn trivial(g: &CayleyGroup, modulus: u64) -> Result<Self> {
        Self::new(g, modulus, 1, vec![identity_matrix(1); g.order()])
    }

    /// Extends matrices given on generators along a spanning tree.
    pub fn from_generators(
        g: &CayleyGroup,
        modulus: u64,
        dim: usize,
        gens: &[usize],
        gen_actions: &[ModMatrix],
    ) -> Result<Self> {
        if gens.len() != gen_actions.len() {
            return Err(Error::BadParameters("one matrix per generator is required".into()));
        }
        let tree = g.schreier_tree(gens);
        let order = g.bfs_order(gens);
        if order.len() != g.order() {
            return Err(Error::NotGenerating { reached: order.len(), order: g.order() });
        }
        let mut actions: Vec<Option<ModMatrix>> = vec![None; g.order()];
        actions[g.identity()] = Some(identity_matrix(dim));
        for &x in &order {
            if let Some((parent, pos)) = tree[x] {
                let a = mat_mul(actions[parent].as_ref().expect("parent first"), &gen_actions[pos], modulus);
                actions[x] = Some(a);
            }
        }
        Self::new(g, modulus, dim, actions.into_iter().map(|a| a.expect("reached")).collect())
    }

    /// The natural module `F_q^n` of a linear group, as `F_p^(nk)`.
    pub fn natural(mg: &MatrixGroup) -> Result<Self> {
        if !matches!(mg.kind, MatrixKind::Sl | MatrixKind::Gl) {
            return Err(Error::BadParameters("projective groups do not act on F_q^n".into()));
        }
        let f = &mg.field;
        let dim = mg.n * f.degree() as usize;
        let actions = mg.elements.iter().map(|m| expand_matrix(f, m)).collect();
        Self::new(&mg.group, u64::from(f.characteristic()), dim, actions)
    }

    pub fn act(&self, g: usize, v: &[u64]) -> Vec<u64> {
        mat_vec(&self.actions[g], v, self.modulus)
    }
}

/// Elementary divisors of a finite abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyGroup {
    /// Invariant factors, each dividing the next.
    pub divisors: Vec<u64>,
    pub order: u128,
}

impl CohomologyGroup {
    pub fn from_divisors(divisors: Vec<u64>) -> Self {
        let divisors: Vec<u64> = divisors.into_iter().filter(|&d| d > 1).collect();
        debug_assert!(divisors.windows(2).all(|w| w[1] % w[0] == 0));
        let order = divisors.iter().map(|&d| u128::from(d)).product();
        CohomologyGroup { divisors, order }
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }
}

/// A 1-cochain: one module vector per group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle1 {
    pub values: Vec<Vec<u64>>,
}

/// A 2-cochain with values in `Z/m`, stored row-major as `values[g*n + h]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle2 {
    pub modulus: u64,
    pub n: usize,
    pub values: Vec<u64>,
}

impl Cocycle2 {
    pub fn zero(n: usize, modulus: u64) -> Self {
        Cocycle2 { modulus, n, values: vec![0; n * n] }
    }

    pub fn get(&self, g: usize, h: usize) -> u64 {
        self.values[g * self.n + h]
    }

    /// `d phi (g, h) = phi(g) + phi(h) - phi(gh)`.
    pub fn coboundary(g: &CayleyGroup, modulus: u64, phi: &[u64]) -> Self {
        let n = g.order();
        let mut values = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                values.push((phi[x] + phi[y] + modulus - phi[g.mul(x, y)] % modulus) % modulus);
            }
        }
        Cocycle2 { modulus, n, values }
    }

    pub fn add(&self, other: &Cocycle2) -> Cocycle2 {
        Cocycle2 {
            modulus: self.modulus,
            n: self.n,
            values: vec_add(&self.values, &other.values, self.modulus),
        }
    }

    pub fn is_normalized(&self, g: &CayleyGroup) -> bool {
        let e = g.identity();
        (0..self.n).all(|x| self.get(e, x) == 0 && self.get(x, e) == 0)
    }
}

impl Cocycle1 {
    /// `g -> g.a - a`.
    pub fn coboundary(m: &GModule, a: &[u64]) -> Self {
        let values = (0..m.actions.len())
            .map(|g| {
                let ga = m.act(g, a);
                ga.iter().zip(a).map(|(x, y)| (x + m.modulus - y) % m.modulus).collect()
            })
            .collect();
        Cocycle1 { values }
    }

    pub fn add(&self, other: &Cocycle1, modulus: u64) -> Self {
        Cocycle1 {
            values: self.values.iter().zip(&other.values).map(|(a, b)| vec_add(a, b, modulus)).collect(),
        }
    }
}

/// Dimensions of `Z^1`, `B^1` over `F_p` and the quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H1Data {
    pub dim_z1: usize,
    pub dim_b1: usize,
    pub h1: CohomologyGroup,
}

fn require_prime(m: &GModule) -> Result<u64> {
    if !is_prime(m.modulus) {
        return Err(Error::BadParameters(format!(
            "module coefficients must be a prime field, got Z/{}",
            m.modulus
        )));
    }
    Ok(m.modulus)
}

fn h1_from_kernel(p: u64, nvars: usize, rows: &[SparseRow], sub: &[SparseRow]) -> H1Data {
    let kq = kernel_quotient(p, nvars, rows, sub);
    let dim_z1 = kq.kernel.len();
    let h1 = CohomologyGroup::from_divisors(kq.quotient);
    let dim_b1 = dim_z1 - h1.divisors.len();
    H1Data { dim_z1, dim_b1, h1 }
}

/// `Z^1`, `B^1` and `H^1` by solving for the cocycle on every element.
pub fn z1_space(g: &CayleyGroup, m: &GModule) -> Result<H1Data> {
    let p = require_prime(m)?;
    let (n, d) = (g.order(), m.dim);
    if n * d > Z1_MAX_VARIABLES {
        return Err(Error::TooLarge(format!(
            "{} cocycle unknowns exceed the bound {Z1_MAX_VARIABLES}",
            n * d
        )));
    }
    let var = |x: usize, i: usize| x * d + i;
    let mut rows = Vec::new();
    // c(xs) = c(x) + x.c(s) for generators s determines the full cocycle rule.
    let gens = g.generating_set();
    for x in 0..n {
        for &s in &gens {
            let xs = g.mul(x, s);
            for i in 0..d {
                let mut terms = vec![(var(xs, i), 1), (var(x, i), -1)];
                for t in 0..d {
                    terms.push((var(s, t), -(m.actions[x][i][t] as i64)));
                }
                rows.push(normalize_row(terms, p));
            }
        }
    }
    for i in 0..d {
        rows.push(normalize_row([(var(g.identity(), i), 1)], p));
    }
    rows.retain(|r| !r.is_empty());
    let sub: Vec<SparseRow> = (0..d)
        .map(|t| {
            normalize_row(
                (0..n).flat_map(|x| {
                    (0..d).map(move |i| (var(x, i), m.actions[x][i][t] as i64 - i64::from(i == t)))
                }),
                p,
            )
        })
        .collect();
    Ok(h1_from_kernel(p, n * d, &rows, &sub))
}

/// `Z^1`, `B^1` and `H^1` from a presentation: the unknowns are the cocycle
/// values on generators, and each relator must expand to zero.
pub fn z1_from_presentation(p: &Presentation, modulus: u64, dim: usize, gen_actions: &[ModMatrix]) -> Result<H1Data> {
    if !is_prime(modulus) {
        return Err(Error::BadParameters(format!("Z/{modulus} is not a prime field")));
    }
    let ng = p.generators.len();
    if gen_actions.len() != ng {
        return Err(Error::BadParameters("one matrix per generator is required".into()));
    }
    let inverses = gen_actions
        .iter()
        .enumerate()
        .map(|(i, a)| mat_inverse(a, modulus).ok_or(Error::InconsistentAction(i)))
        .collect::<Result<Vec<_>>>()?;
    let var = |x: usize, i: usize| x * dim + i;
    let mut rows = Vec::new();
    for (r, w) in p.relators.iter().enumerate() {
        let mut prefix = identity_matrix(dim);
        let mut terms: Vec<Vec<(usize, i64)>> = vec![Vec::new(); dim];
        for l in w.letters() {
            // c(x^-1) = -x^-1 . c(x).
            let (coef, next) = if l.inv {
                let c = mat_mul(&prefix, &inverses[l.gen], modulus);
                (c.iter().map(|r| r.iter().map(|&v| (modulus - v) % modulus).collect()).collect(), c)
            } else {
                (prefix.clone(), mat_mul(&prefix, &gen_actions[l.gen], modulus))
            };
            let coef: ModMatrix = coef;
            for (i, row_terms) in terms.iter_mut().enumerate() {
                for t in 0..dim {
                    if coef[i][t] != 0 {
                        row_terms.push((var(l.gen, t), coef[i][t] as i64));
                    }
                }
            }
            prefix = next;
        }
        if prefix != identity_matrix(dim) {
            return Err(Error::InconsistentAction(r));
        }
        for t in terms {
            let row = normalize_row(t, modulus);
            if !row.is_empty() {
                rows.push(row);
            }
        }
    }
    let sub: Vec<SparseRow> = (0..dim)
        .map(|t| {
            normalize_row(
                (0..ng).flat_map(|x| {
                    (0..dim).map(move |i| (var(x, i), gen_actions[x][i][t] as i64 - i64::from(i == t)))
                }),
                modulus,
            )
        })
        .collect();
    Ok(h1_from_kernel(modulus, ng * dim, &rows, &sub))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cocycle1Check {
    pub is_cocycle: bool,
    pub is_coboundary: bool,
    /// Some `a_0` with `c(g) = g.a_0 - a_0`.
    pub witness: Option<Vec<u64>>,
}

pub fn verify_cocycle1(g: &CayleyGroup, m: &GModule, c: &Cocycle1) -> Cocycle1Check {
    let (n, d, q) = (g.order(), m.dim, m.modulus);
    let fail = Cocycle1Check { is_cocycle: false, is_coboundary: false, witness: None };
    if c.values.len() != n || c.values.iter().any(|v| v.len() != d) {
        return fail;
    }
    let is_cocycle = (0..n).into_par_iter().all(|x| {
        (0..n).all(|y| {
            let rhs = vec_add(&c.values[x], &m.act(x, &c.values[y]), q);
            c.values[g.mul(x, y)].iter().map(|v| v % q).eq(rhs)
        })
    });
    if !is_cocycle {
        return fail;
    }
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for x in 0..n {
        for i in 0..d {
            let terms = (0..d).map(|t| (t, m.actions[x][i][t] as i64 - i64::from(i == t)));
            rows.push(normalize_row(terms, q));
            rhs.push(c.values[x][i] % q);
        }
    }
    let witness = solve(q, d, &rows, &rhs);
    Cocycle1Check { is_cocycle, is_coboundary: witness.is_some(), witness }
}

/// `SL_3(F_2)` with its natural module and the explicit cocycle fixed by
/// `c(I + E_ij)` on the six elementary matrices.
#[derive(Clone, Debug)]
pub struct RemarkCocycle {
    pub group: MatrixGroup,
    pub module: GModule,
    pub cocycle: Cocycle1,
}

/// Values on `I + E_ij` (1-based `i, j`) as coordinate vectors.
pub const REMARK_GENERATOR_VALUES: [((usize, usize), [u64; 3]); 6] = [
    ((1, 2), [0, 0, 1]),
    ((2, 3), [1, 1, 0]),
    ((3, 1), [0, 1, 0]),
    ((1, 3), [0, 1, 0]),
    ((3, 2), [1, 0, 1]),
    ((2, 1), [0, 1, 1]),
];

pub fn remark_cocycle_sl3f2() -> RemarkCocycle {
    let f = field_of_order(2).expect("F_2");
    let group = MatrixGroup::new(MatrixKind::Sl, 3, f, 1 << 10).expect("SL_3(F_2)");
    let module = GModule::natural(&group).expect("natural module");
    let g = &group.group;
    let gens: Vec<usize> = REMARK_GENERATOR_VALUES
        .iter()
        .map(|&((i, j), _)| {
            group
                .index_of(&Matrix::elementary(3, i - 1, j - 1, FieldElement::ONE))
                .expect("elementary matrix")
        })
        .collect();
    let tree = g.schreier_tree(&gens);
    let order = g.bfs_order(&gens);
    let mut values: Vec<Option<Vec<u64>>> = vec![None; g.order()];
    values[g.identity()] = Some(vec![0; 3]);
    for &x in &order {
        if let Some((parent, pos)) = tree[x] {
            let cp = values[parent].clone().expect("parent first");
            let cs = REMARK_GENERATOR_VALUES[pos].1.to_vec();
            values[x] = Some(vec_add(&cp, &module.act(parent, &cs), 2));
        }
    }
    let cocycle = Cocycle1 { values: values.into_iter().map(|v| v.expect("generated")).collect() };
    for (pos, &s) in gens.iter().enumerate() {
        assert_eq!(cocycle.values[s], REMARK_GENERATOR_VALUES[pos].1.to_vec());
    }
    assert!(verify_cocycle1(g, &module, &cocycle).is_cocycle, "the extension is a cocycle");
    RemarkCocycle { group, module, cocycle }
}

/// `H^2(G, Z/m)` for the trivial module, from normalized cocycles modulo
/// normalized coboundaries.
pub fn h2_group(g: &CayleyGroup, m: u64) -> Result<CohomologyGroup> {
    if m < 2 {
        return Ok(CohomologyGroup::from_divisors(Vec::new()));
    }
    let n = g.order();
    let k = n - 1;
    if k * k > H2_MAX_VARIABLES {
        return Err(Error::TooLarge(format!(
            "{} cocycle unknowns exceed the bound {H2_MAX_VARIABLES}",
            k * k
        )));
    }
    let e = g.identity();
    let pos = |x: usize| if x < e { x } else { x - 1 };
    let var = |x: usize, y: usize| -> Option<usize> {
        (x != e && y != e).then(|| pos(x) * k + pos(y))
    };
    // The identity for all triples follows from the triples (x, y, s)
    // with s in a generating set, by induction on the length of s.
    let gens = g.generating_set();
    let mut rows = Vec::new();
    for x in (0..n).filter(|&x| x != e) {
        for y in (0..n).filter(|&y| y != e) {
            for &s in &gens {
                let terms = [
                    (var(y, s), 1),
                    (var(g.mul(x, y), s), -1),
                    (var(x, g.mul(y, s)), 1),
                    (var(x, y), -1),
                ];
                let row = normalize_row(terms.into_iter().filter_map(|(v, c)| v.map(|v| (v, c))), m);
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    let sub: Vec<SparseRow> = (0..n)
        .filter(|&z| z != e)
        .map(|z| {
            let mut terms = Vec::new();
            for x in (0..n).filter(|&x| x != e) {
                for y in (0..n).filter(|&y| y != e) {
                    let c = i64::from(x == z) + i64::from(y == z) - i64::from(g.mul(x, y) == z);
                    if c != 0 {
                        terms.push((var(x, y).expect("non-identity"), c));
                    }
                }
            }
            normalize_row(terms, m)
        })
        .collect();
    let kq = kernel_quotient(m, k * k, &rows, &sub);
    Ok(CohomologyGroup::from_divisors(kq.quotient))
}

/// `|Hom(G_ab, Z/m)|` from the abelianization.
pub fn hom_abelianization_order(g: &CayleyGroup, m: u64) -> u128 {
    derived_data(g)
        .abelianization
        .iter()
        .map(|&d| u128::from(gcd(d, m)))
        .product()
}

/// Order of the Schur multiplier, from `H^2(G, Z/|G|)`.
pub fn schur_order(g: &CayleyGroup) -> Result<u64> {
    let m = g.order() as u64;
    let h2 = h2_group(g, m)?;
    let hom = hom_abelianization_order(g, m);
    assert_eq!(h2.order % hom, 0, "the Ext term divides H^2");
    Ok((h2.order / hom) as u64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cocycle2Check {
    pub is_cocycle: bool,
    pub is_coboundary: bool,
}

/// Checks the cocycle identity on all triples and solves `d phi = omega`.
pub fn verify_cocycle2(g: &CayleyGroup, omega: &Cocycle2) -> Cocycle2Check {
    let (n, m) = (g.order(), omega.modulus);
    if omega.n != n || omega.values.len() != n * n || m < 1 {
        return Cocycle2Check { is_cocycle: false, is_coboundary: false };
    }
    let w = |x: usize, y: usize| omega.get(x, y) % m;
    let is_cocycle = (0..n).into_par_iter().all(|x| {
        (0..n).all(|y| {
            let xy = g.mul(x, y);
            (0..n).all(|z| (w(x, y) + w(xy, z)) % m == (w(y, z) + w(x, g.mul(y, z))) % m)
        })
    });
    if !is_cocycle {
        return Cocycle2Check { is_cocycle, is_coboundary: false };
    }
    let mut rows = Vec::with_capacity(n * n);
    let mut rhs = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            rows.push(normalize_row([(x, 1), (y, 1), (g.mul(x, y), -1)], m));
            rhs.push(w(x, y));
        }
    }
    let is_coboundary = solve(m, n, &rows, &rhs).is_some();
    Cocycle2Check { is_cocycle, is_coboundary }
}

/// `F_q^2 x| SL_2(F_q)` with `Omega((a,A),(b,B)) = psi_0(a_1 (Ab)_2 - a_2 (Ab)_1)`,
/// where `psi_0` is the constant-coefficient character `F_q -> Z/p`.
pub fn lemma_cocycle_affine(q: u64) -> Result<(AffineGroup, Cocycle2)> {
    if q > 5 {
        return Err(Error::TooLarge(format!("q = {q} exceeds the supported bound 5")));
    }
    let f = field_of_order(q)?;
    let p = u64::from(f.characteristic());
    let aff = AffineGroup::new(2, f.clone(), 1 << 13)?;
    let n = aff.group.order();
    let mut values = vec![0u64; n * n];
    for (x, (a, _)) in aff.elements.iter().enumerate() {
        for (y, (b, _)) in aff.elements.iter().enumerate() {
            let ab = aff.elements[x].1.apply(&f, b);
            let s = f.sub(f.mul(a[0], ab[1]), f.mul(a[1], ab[0]));
            values[x * n + y] = u64::from(f.constant_coeff(s));
        }
    }
    Ok((aff, Cocycle2 { modulus: p, n, values }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BicharacterCount {
    pub count: u128,
    pub trivial: bool,
    pub abelianization: Vec<u64>,
}

/// `|Hom(G_ab (x) G_ab, C^x)| = prod gcd(d_i, d_j)`.
pub fn bicharacter_count(g: &CayleyGroup) -> BicharacterCount {
    let dd = derived_data(g);
    let ab = dd.abelianization.clone();
    let count: u128 = ab
        .iter()
        .flat_map(|&a| ab.iter().map(move |&b| u128::from(gcd(a, b))))
        .product();
    assert_eq!(count == 1, dd.is_perfect, "bicharacters are trivial exactly for perfect groups");
    BicharacterCount { count, trivial: count == 1, abelianization: ab }
}

/// Cocycle file entry; `g` and `h` are labels or indices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Cocycle2Entry {
    pub g: serde_json::Value,
    pub h: serde_json::Value,
    pub value: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Cocycle1Entry {
    pub g: serde_json::Value,
    pub value: Vec<i64>,
}

fn resolve_element(g: &CayleyGroup, v: &serde_json::Value) -> Result<usize> {
    let idx = match v {
        serde_json::Value::Number(x) => x.as_u64().map(|x| x as usize),
        serde_json::Value::String(s) => g.find_label(s).or_else(|| s.parse().ok()),
        _ => None,
    };
    idx.filter(|&i| i < g.order())
        .ok_or_else(|| Error::Parse(format!("unknown group element {v}")))
}

impl Cocycle2 {
    /// Unlisted pairs are zero.
    pub fn from_json(g: &CayleyGroup, modulus: u64, text: &str) -> Result<Self> {
        let entries: Vec<Cocycle2Entry> =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("cocycle: {e}")))?;
        let mut c = Cocycle2::zero(g.order(), modulus);
        for en in entries {
            let (x, y) = (resolve_element(g, &en.g)?, resolve_element(g, &en.h)?);
            c.values[x * c.n + y] = en.value.rem_euclid(modulus as i64) as u64;
        }
        Ok(c)
    }

    pub fn to_entries(&self, g: &CayleyGroup) -> Vec<Cocycle2Entry> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in 0..self.n {
                let v = self.get(x, y);
                if v != 0 {
                    out.push(Cocycle2Entry {
                        g: serde_json::Value::String(g.label(x)),
                        h: serde_json::Value::String(g.label(y)),
                        value: v as i64,
                    });
                }
            }
        }
        out
    }
}

impl Cocycle1 {
    /// Unlisted elements map to zero.
    pub fn from_json(g: &CayleyGroup, m: &GModule, text: &str) -> Result<Self> {
        let entries: Vec<Cocycle1Entry> =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("cocycle: {e}")))?;
        let mut values = vec![vec![0u64; m.dim]; g.order()];
        for en in entries {
            let x = resolve_element(g, &en.g)?;
            if en.value.len() != m.dim {
                return Err(Error::Parse(format!("value for {} has length {}, expected {}", en.g, en.value.len(), m.dim)));
            }
            values[x] = en.value.iter().map(|v| v.rem_euclid(m.modulus as i64) as u64).collect();
        }
        Ok(Cocycle1 { values })
    }

    pub fn to_entries(&self, g: &CayleyGroup) -> Vec<Cocycle1Entry> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.iter().any(|&x| x != 0))
            .map(|(x, v)| Cocycle1Entry {
                g: serde_json::Value::String(g.label(x)),
                value: v.iter().map(|&a| a as i64).collect(),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, direct_product, PermutationGroup};

    fn k4() -> CayleyGroup {
        let z2 = cyclic(2).unwrap();
        direct_product(&z2, &z2).unwrap()
    }

    #[test]
    fn h2_small_groups() {
        assert_eq!(h2_group(&cyclic(2).unwrap(), 2).unwrap().order, 2);
        assert_eq!(h2_group(&cyclic(3).unwrap(), 3).unwrap().order, 3);
        assert_eq!(h2_group(&k4(), 4).unwrap().order, 8);
        assert_eq!(h2_group(&cyclic(1).unwrap(), 5).unwrap().order, 1);
    }

    #[test]
    fn schur_orders() {
        assert_eq!(schur_order(&k4()).unwrap(), 2);
        assert_eq!(schur_order(&cyclic(6).unwrap()).unwrap(), 1);
        let s3 = PermutationGroup::symmetric(3, 100).unwrap();
        assert_eq!(schur_order(&s3.group).unwrap(), 1);
    }

    #[test]
    fn remark_cocycle_values() {
        let r = remark_cocycle_sl3f2();
        let e = |i, j| r.group.index_of(&Matrix::elementary(3, i, j, FieldElement::ONE)).unwrap();
        assert_eq!(r.cocycle.values[e(0, 1)], vec![0, 0, 1]);
        assert_eq!(r.cocycle.values[r.group.group.identity()], vec![0, 0, 0]);
        let prod = r.group.group.mul(e(0, 1), e(1, 2));
        assert_eq!(r.cocycle.values[prod], vec![0, 1, 1]);
        let chk = verify_cocycle1(&r.group.group, &r.module, &r.cocycle);
        assert!(chk.is_cocycle && !chk.is_coboundary);
    }

    #[test]
    fn h1_sl3f2() {
        let r = remark_cocycle_sl3f2();
        let h = z1_space(&r.group.group, &r.module).unwrap();
        assert_eq!((h.dim_z1, h.dim_b1, h.h1.order), (4, 3, 2));
    }

    #[test]
    fn trivial_h1_examples() {
        let z3 = cyclic(3).unwrap();
        let m = GModule::trivial(&z3, 2).unwrap();
        assert_eq!(z1_space(&z3, &m).unwrap().dim_z1, 0);
        let z1 = cyclic(1).unwrap();
        let m = GModule::trivial(&z1, 3).unwrap();
        assert_eq!(z1_space(&z1, &m).unwrap().dim_z1, 0);
    }

    #[test]
    fn coboundary_witness() {
        let r = remark_cocycle_sl3f2();
        let c = Cocycle1::coboundary(&r.module, &[1, 0, 0]);
        let chk = verify_cocycle1(&r.group.group, &r.module, &c);
        assert_eq!(chk.witness, Some(vec![1, 0, 0]));
    }

    #[test]
    fn affine_cocycle_q2_is_a_coboundary() {
        // Over F_2 the form a1 b2 - a2 b1 is symmetric and equals -d(a1 a2).
        let (aff, om) = lemma_cocycle_affine(2).unwrap();
        let i2 = Matrix::identity(2);
        let x = aff.index_of(&[FieldElement::ONE, FieldElement::ZERO], &i2).unwrap();
        let y = aff.index_of(&[FieldElement::ZERO, FieldElement::ONE], &i2).unwrap();
        assert_eq!(om.get(x, y), 1);
        let chk = verify_cocycle2(&aff.group, &om);
        assert!(chk.is_cocycle && chk.is_coboundary);
    }

    #[test]
    fn affine_cocycle_q3_is_not_a_coboundary() {
        let (aff, om) = lemma_cocycle_affine(3).unwrap();
        assert_eq!(aff.group.order(), 216);
        let chk = verify_cocycle2(&aff.group, &om);
        assert!(chk.is_cocycle && !chk.is_coboundary);
    }

    #[test]
    fn bicharacters() {
        assert_eq!(bicharacter_count(&k4()).count, 16);
        assert_eq!(bicharacter_count(&cyclic(3).unwrap()).count, 3);
    }

    #[test]
    fn inconsistent_action_rejected() {
        let z2 = cyclic(2).unwrap();
        let bad = vec![vec![vec![1]], vec![vec![2]]];
        // 2 * 2 = 4 is not 1 modulo 5.
        assert!(matches!(GModule::new(&z2, 5, 1, bad), Err(Error::InconsistentAction(_))));
    }
}
