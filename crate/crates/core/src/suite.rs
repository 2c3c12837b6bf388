//! The acceptance checks, one function per criterion. Each check returns
//! a list of claims pairing an expected value with the computed one.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cohomology::{
    bicharacter_count, expand_matrix, h2_group, lemma_cocycle_affine, remark_cocycle_sl3f2, schur_order,
    verify_cocycle1, verify_cocycle2, z1_from_presentation, z1_space, Cocycle1, Cocycle2, GModule,
    REMARK_GENERATOR_VALUES,
};
use crate::error::Result;
use crate::field::{field_of_order, FieldElement};
use crate::group::{
    construct, cyclic, derived_data, direct_product, fixed_point_subgroup, parse_group_spec, sylow, CayleyGroup,
    Limits, Matrix, MatrixGroup, MatrixKind, VectorGroup,
};
use crate::morphism::{automorphism_group, find_isomorphism, inner_embedding, verify_homomorphism, Homomorphism};
use crate::oracle;
use crate::presentation::{
    builtin_presentation, enumerate_sections, steinberg_presentation, todd_coxeter, Letter, Presentation, Word,
};
use crate::rigidity::{equivariant_structures, rigidity_check, GroupAction, SearchOptions};

/// Seed for every randomized check.
pub const SUITE_SEED: u64 = 0x5eed_2024;

#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub id: String,
    pub statement: String,
    pub expected: Value,
    pub observed: Value,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub number: u32,
    pub title: String,
    pub limit_seconds: u64,
    pub pass: bool,
    pub claims: Vec<Claim>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CriterionReport {
    pub fn within_limit(&self) -> bool {
        self.elapsed.as_secs_f64() < self.limit_seconds as f64
    }

    pub fn failing(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| !c.pass)
    }
}

/// `(number, title, time limit in seconds)`.
pub const CRITERIA: [(u32, &str, u64); 11] = [
    (1, "group orders", 1),
    (2, "Sylow counts", 5),
    (3, "fixed-point counts", 5),
    (4, "automorphism groups", 60),
    (5, "exceptional isomorphisms", 60),
    (6, "presentations and sections", 60),
    (7, "first cohomology", 60),
    (8, "second cohomology and Schur multipliers", 180),
    (9, "perfectness and bicharacters", 30),
    (10, "rigidity searches", 180),
    (11, "property suites", 120),
];

struct Claims(Vec<Claim>);

impl Claims {
    fn check<T: Serialize, U: Serialize>(&mut self, id: &str, statement: &str, expected: T, observed: U) {
        let expected = json!(expected);
        let observed = json!(observed);
        let pass = expected == observed;
        self.0.push(Claim { id: id.into(), statement: statement.into(), expected, observed, pass });
    }

    /// Records `observed` or the error that prevented computing it.
    fn check_result<T: Serialize, U: Serialize>(&mut self, id: &str, statement: &str, expected: T, observed: Result<U>) {
        match observed {
            Ok(v) => self.check(id, statement, expected, v),
            Err(e) => self.check(id, statement, expected, format!("error: {e}")),
        }
    }
}

fn group(spec: &str) -> Result<CayleyGroup> {
    let limits = Limits::default();
    construct(&parse_group_spec(spec)?, &limits)
}

fn order_of(spec: &str) -> Result<usize> {
    Ok(group(spec)?.order())
}

fn criterion_1(c: &mut Claims) {
    c.check_result("order.sl2f5", "|SL_2(F_5)|", 120, order_of("sl:2:5"));
    c.check_result("order.sl3f2", "|SL_3(F_2)|", 168, order_of("sl:3:2"));
    c.check_result("order.pgl2f3", "|PGL_2(F_3)|", 24, order_of("pgl:2:3"));
}

fn criterion_2(c: &mut Claims) {
    let r = group("sl:2:5").and_then(|g| sylow(&g, 5).map(|s| s.count));
    c.check_result("sylow5.sl2f5", "number of Sylow 5-subgroups of SL_2(F_5), p + 1 for p = 5", 6, r);
}

fn fixed_count(g: &CayleyGroup, alpha: Vec<usize>) -> Result<usize> {
    Ok(fixed_point_subgroup(g, &[alpha])?.order())
}

fn criterion_3(c: &mut Claims) {
    let run = || -> Result<[usize; 4]> {
        let f = field_of_order(5)?;
        let minus = f.neg(FieldElement::ONE);
        let d = Matrix::diagonal(&[FieldElement::ONE, minus]);
        let u = Matrix::elementary(2, 0, 1, FieldElement::ONE);
        let sl = MatrixGroup::new(MatrixKind::Sl, 2, f.clone(), 1 << 12)?;
        let pgl = MatrixGroup::new(MatrixKind::Pgl, 2, f.clone(), 1 << 12)?;
        let psl = MatrixGroup::new(MatrixKind::Psl, 2, f, 1 << 12)?;
        let fix_sl = fixed_count(&sl.group, sl.conjugation(&d)?)?;
        let fix_pgl = fixed_count(&pgl.group, pgl.conjugation(&d)?)?;
        let prod = direct_product(&psl.group, &cyclic(2)?)?;
        let a = psl.conjugation(&d)?;
        let alpha: Vec<usize> = (0..prod.order()).map(|x| a[x / 2] * 2 + x % 2).collect();
        let fix_prod = fixed_count(&prod, alpha)?;
        let fix_u = fixed_count(&sl.group, sl.conjugation(&u)?)?;
        Ok([fix_sl, fix_pgl, fix_prod, fix_u])
    };
    match run() {
        Ok([a, b, p, u]) => {
            c.check("fix.diag.sl2f5", "fixed points of conjugation by diag(1,-1) on SL_2(F_5), p - 1", 4, a);
            c.check("fix.diag.pgl2f5", "fixed points of conjugation by diag(1,-1) on PGL_2(F_5), 2(p - 1)", 8, b);
            c.check(
                "fix.diag.psl2f5xz2",
                "fixed points of conjugation by diag(1,-1) on PSL_2(F_5) x Z/2, 2(p - 1)",
                8,
                p,
            );
            c.check("fix.unipotent.sl2f5", "fixed points of conjugation by I + E_12 on SL_2(F_5), 2p", 10, u);
        }
        Err(e) => c.check("fix", "fixed-point counts", "computed", format!("error: {e}")),
    }
}

fn criterion_4(c: &mut Claims) {
    c.check_result("aut.z6", "|Aut(Z/6)|", 2, group("cyclic:6").and_then(|g| Ok(automorphism_group(&g)?.order())));
    c.check_result("aut.s3", "|Aut(S_3)|", 6, group("sym:3").and_then(|g| Ok(automorphism_group(&g)?.order())));
    let psl = group("psl:2:5").and_then(|g| {
        let aut = automorphism_group(&g)?;
        let inner = inner_embedding(&g, &aut);
        Ok((aut.order(), inner.out_order))
    });
    match psl {
        Ok((a, o)) => {
            c.check("aut.psl2f5", "|Aut(PSL_2(F_5))|", 120, a);
            c.check("out.psl2f5", "|Out(PSL_2(F_5))|", 2, o);
        }
        Err(e) => c.check("aut.psl2f5", "|Aut(PSL_2(F_5))|", 120, format!("error: {e}")),
    }
}

fn is_isomorphism(g: &CayleyGroup, h: &CayleyGroup, f: &Homomorphism) -> bool {
    f.is_injective() && f.preserves_all_products(g, h)
}

fn criterion_5(c: &mut Claims) {
    let pairs = [
        ("iso.a4.psl2f3", "A_4 and PSL_2(F_3) are isomorphic", "alt:4", "psl:2:3"),
        ("iso.atilde4.sl2f3", "the double cover of A_4 and SL_2(F_3) are isomorphic", "atilde:4", "sl:2:3"),
        ("iso.atilde5.sl2f5", "the double cover of A_5 and SL_2(F_5) are isomorphic", "atilde:5", "sl:2:5"),
        ("iso.affsl22.s4", "F_2^2 x| SL_2(F_2) and S_4 are isomorphic", "affsl:2:2", "sym:4"),
    ];
    for (id, st, a, b) in pairs {
        let r = (|| -> Result<bool> {
            let (g, h) = (group(a)?, group(b)?);
            Ok(find_isomorphism(&g, &h).is_some_and(|f| is_isomorphism(&g, &h, &f)))
        })();
        c.check_result(id, st, true, r);
    }
}

fn z_relator(p: &Presentation) -> Result<Presentation> {
    let z = p.generator_index("z").expect("central generator");
    p.with_relator(Word::new([Letter::new(z, false)]))
}

/// Sections of `E -> Q`, where `Q` is presented by `pq` and the map sends
/// generators of `E` (presented by `pe` with the same generator list) to
/// the same-named generators of `Q`.
fn quotient_sections(pe: &Presentation, pq: &Presentation, limits: &Limits) -> Result<usize> {
    let ee = todd_coxeter(pe, limits.max_cosets)?;
    let eq = todd_coxeter(pq, limits.max_cosets)?;
    let e = ee.regular_representation(pe, limits.max_order)?;
    let q = eq.regular_representation(pq, limits.max_order)?;
    let theta = verify_homomorphism(&e, &q, &ee.generator_images(), &eq.generator_images())?;
    Ok(enumerate_sections(&e, &q, &theta, pq, &eq.generator_images())?.len())
}

fn criterion_6(c: &mut Claims) {
    let limits = Limits::default();
    let tc = |name: &str, n: usize| -> Result<usize> { Ok(todd_coxeter(&builtin_presentation(name, n)?, limits.max_cosets)?.order) };
    c.check_result("toddcox.sym4", "coset enumeration of the S_4 presentation", 24, tc("sym", 4));
    c.check_result("toddcox.stilde4", "coset enumeration of the double cover of S_4", 48, tc("stilde", 4));
    c.check_result("toddcox.atilde4", "coset enumeration of the double cover of A_4", 24, tc("atilde", 4));
    c.check_result("toddcox.alt5", "coset enumeration of the A_5 presentation", 60, tc("alt", 5));
    c.check_result("toddcox.sl3f2", "coset enumeration of the SL_3(F_2) presentation", 168, tc("sl3f2", 3));
    for n in [4usize, 5] {
        let r = (|| -> Result<(usize, usize)> {
            let p = builtin_presentation("atilde", n)?;
            let full = todd_coxeter(&p, limits.max_cosets)?.order;
            let half = todd_coxeter(&z_relator(&p)?, limits.max_cosets)?.order;
            Ok((full, half))
        })();
        let st = format!("killing z halves the order of the double cover of A_{n}");
        match r {
            Ok((full, half)) => c.check(&format!("quotient.atilde{n}"), &st, full / 2, half),
            Err(e) => c.check(&format!("quotient.atilde{n}"), &st, "computed", format!("error: {e}")),
        }
    }
    for (name, id, st) in [
        ("atilde", "sections.atilde4", "sections of the double cover of A_4 onto A_4"),
        ("stilde", "sections.stilde4", "sections of the double cover of S_4 onto S_4"),
    ] {
        let r = builtin_presentation(name, 4)
            .and_then(|p| quotient_sections(&p, &z_relator(&p)?, &limits));
        c.check_result(id, st, 0, r);
    }
    for (name, n) in [("alt", 4usize), ("sym", 4)] {
        let r = (|| -> Result<bool> {
            let pq = builtin_presentation(name, n)?;
            let eq = todd_coxeter(&pq, limits.max_cosets)?;
            let q = eq.regular_representation(&pq, limits.max_order)?;
            let e = direct_product(&q, &cyclic(2)?)?;
            let theta = Homomorphism { images: (0..e.order()).map(|x| x / 2).collect() };
            Ok(!enumerate_sections(&e, &q, &theta, &pq, &eq.generator_images())?.is_empty())
        })();
        c.check_result(
            &format!("sections.{name}{n}xz2"),
            &format!("the projection {name}{n} x Z/2 -> {name}{n} has a section"),
            true,
            r,
        );
    }
}

fn steinberg_h1(n: usize, q: u64) -> Result<u128> {
    let f = field_of_order(q)?;
    let (p, meta) = steinberg_presentation(n, &f)?;
    let acts: Vec<_> = meta
        .iter()
        .map(|&(i, j, x)| expand_matrix(&f, &Matrix::elementary(n, i, j, x)))
        .collect();
    let dim = n * f.degree() as usize;
    Ok(z1_from_presentation(&p, u64::from(f.characteristic()), dim, &acts)?.h1.order)
}

fn criterion_7(c: &mut Claims) {
    let r = remark_cocycle_sl3f2();
    let g = &r.group.group;
    match z1_space(g, &r.module) {
        Ok(h) => c.check(
            "h1.sl3f2.dims",
            "(dim Z^1, dim B^1, |H^1|) for SL_3(F_2) on F_2^3",
            (4, 3, 2),
            (h.dim_z1, h.dim_b1, h.h1.order as u64),
        ),
        Err(e) => c.check("h1.sl3f2.dims", "H^1 for SL_3(F_2) on F_2^3", (4, 3, 2), format!("error: {e}")),
    }
    c.check_result(
        "h1.sl3f2.oracle",
        "(|Z^1|, |B^1|) for SL_3(F_2) on F_2^3 by enumeration",
        (16, 8),
        oracle::z1_b1_exhaustive(g, &r.module).map(|(a, b)| (a as u64, b as u64)),
    );
    let chk = verify_cocycle1(g, &r.module, &r.cocycle);
    c.check(
        "remark.cocycle.verify",
        "the explicit SL_3(F_2) cocycle is a cocycle and not a coboundary",
        (true, false),
        (chk.is_cocycle, chk.is_coboundary),
    );
    let observed: Vec<Vec<u64>> = REMARK_GENERATOR_VALUES
        .iter()
        .map(|&((i, j), _)| {
            let x = r
                .group
                .index_of(&Matrix::elementary(3, i - 1, j - 1, FieldElement::ONE))
                .expect("elementary");
            r.cocycle.values[x].clone()
        })
        .collect();
    let expected: Vec<Vec<u64>> = REMARK_GENERATOR_VALUES.iter().map(|(_, v)| v.to_vec()).collect();
    c.check("remark.cocycle.values", "values on I + E_ij for the six ordered pairs", expected, observed);
    for (n, q, h) in [(3usize, 3u64, 1u64), (4, 2, 1), (3, 2, 2)] {
        c.check_result(
            &format!("h1.steinberg.{n}.{q}"),
            &format!("|H^1| of SL_{n}(F_{q}) on F_{q}^{n} from the Steinberg presentation"),
            h,
            steinberg_h1(n, q).map(|x| x as u64),
        );
    }
}

fn small_groups() -> Result<Vec<(&'static str, CayleyGroup)>> {
    Ok(vec![
        ("cyclic:1", cyclic(1)?),
        ("cyclic:2", cyclic(2)?),
        ("cyclic:3", cyclic(3)?),
        ("cyclic:4", cyclic(4)?),
        ("cyclic:2*cyclic:2", group("cyclic:2*cyclic:2")?),
    ])
}

fn criterion_8(c: &mut Claims) {
    c.check_result("schur.k4", "|M(Z/2 x Z/2)|", 2, group("cyclic:2*cyclic:2").and_then(|g| schur_order(&g)));
    c.check_result("schur.s4", "|M(S_4)|", 2, group("sym:4").and_then(|g| schur_order(&g)));
    for q in [2u64, 3] {
        let r = lemma_cocycle_affine(q).map(|(aff, om)| {
            let chk = verify_cocycle2(&aff.group, &om);
            (chk.is_cocycle, chk.is_coboundary)
        });
        c.check_result(
            &format!("affine.cocycle.q{q}"),
            &format!("the symplectic cocycle on F_{q}^2 x| SL_2(F_{q}) is a cocycle and not a coboundary"),
            (true, false),
            r,
        );
    }
    match small_groups() {
        Ok(groups) => {
            for (name, g) in groups {
                let mut moduli = vec![g.order().max(2) as u64];
                if g.order() == 4 {
                    moduli.push(2);
                }
                for m in moduli {
                    let solver = h2_group(&g, m).map(|h| h.order as u64);
                    match oracle::h2_order_exhaustive(&g, m) {
                        Ok(o) => c.check_result(
                            &format!("h2.oracle.{name}.{m}"),
                            &format!("|H^2({name}, Z/{m})| agrees with exhaustive enumeration"),
                            o as u64,
                            solver,
                        ),
                        Err(e) => c.check("h2.oracle", "exhaustive H^2", "computed", format!("error: {e}")),
                    }
                }
            }
        }
        Err(e) => c.check("h2.oracle", "small groups", "constructed", format!("error: {e}")),
    }
}

fn criterion_9(c: &mut Claims) {
    for (spec, perfect) in [
        ("alt:5", true),
        ("sl:2:5", true),
        ("sl:3:2", true),
        ("atilde:5", true),
        ("sym:4", false),
        ("sl:2:3", false),
    ] {
        match group(spec) {
            Ok(g) => {
                c.check(&format!("perfect.{spec}"), &format!("{spec} is perfect"), perfect, derived_data(&g).is_perfect);
                let b = bicharacter_count(&g);
                c.check(
                    &format!("bichar.{spec}"),
                    &format!("every bicharacter on {spec} is trivial"),
                    perfect,
                    b.count == 1,
                );
            }
            Err(e) => c.check(&format!("perfect.{spec}"), spec, perfect, format!("error: {e}")),
        }
    }
    match group("cyclic:2*cyclic:2") {
        Ok(k4) => {
            c.check("bichar.k4", "number of bicharacters on Z/2 x Z/2", 16, bicharacter_count(&k4).count as u64);
            c.check_result(
                "bichar.k4.oracle",
                "number of bicharacters on Z/2 x Z/2 by enumeration",
                16,
                oracle::bicharacter_count_exhaustive(&k4).map(|x| x as u64),
            );
        }
        Err(e) => c.check("bichar.k4", "K4", 16, format!("error: {e}")),
    }
}

/// Multiplication by field units on `(F_q, +)`.
pub fn units_action(q: u64) -> Result<(CayleyGroup, GroupAction)> {
    let f = field_of_order(q)?;
    let v = VectorGroup::new(1, f.clone(), 1 << 12)?;
    let gen = v.scalar_action(f.primitive_element())?;
    let act = GroupAction::generated(v.group.order(), vec![gen])?;
    Ok((v.group, act))
}

/// `GL_n(F_q)` acting linearly on `(F_q^n, +)`.
pub fn gl_action(n: usize, q: u64) -> Result<(CayleyGroup, GroupAction)> {
    let f = field_of_order(q)?;
    let v = VectorGroup::new(n, f.clone(), 1 << 12)?;
    let gl = MatrixGroup::new(MatrixKind::Gl, n, f, 1 << 16)?;
    let gens = gl
        .group
        .generating_set()
        .into_iter()
        .map(|i| v.linear_action(&gl.elements[i]))
        .collect::<Result<Vec<_>>>()?;
    let act = GroupAction::generated(v.group.order(), gens)?;
    Ok((v.group, act))
}

pub fn aut_action(g: &CayleyGroup) -> Result<GroupAction> {
    GroupAction::generated(g.order(), automorphism_group(g)?.generators)
}

fn rigid(k: &CayleyGroup, act: &GroupAction) -> Result<bool> {
    Ok(rigidity_check(k, act, &SearchOptions::default())?.rigid)
}

fn canonical_classes(s: &[CayleyGroup]) -> std::collections::BTreeSet<Vec<usize>> {
    s.iter().map(oracle::canonical_table).collect()
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in all_permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

fn criterion_10(c: &mut Claims) {
    let cases: Vec<(&str, &str, Result<(CayleyGroup, GroupAction)>)> = vec![
        ("rigid.s3.aut", "S_3 relative to Aut(S_3)", group("sym:3").and_then(|g| Ok((g.clone(), aut_action(&g)?)))),
        ("rigid.f2sq.gl", "F_2^2 relative to GL_2(F_2)", gl_action(2, 2)),
        ("rigid.f4.units", "F_4 relative to F_4^x", units_action(4)),
        ("rigid.f8.units", "F_8 relative to F_8^x", units_action(8)),
        ("rigid.f9.units", "F_9 relative to F_9^x", units_action(9)),
    ];
    for (id, st, inst) in cases {
        let r = inst.and_then(|(k, a)| rigid(&k, &a));
        c.check_result(id, &format!("{st} is rigid (table criterion)"), true, r);
    }
    let z4 = (|| -> Result<(bool, bool)> {
        let k = cyclic(4)?;
        let v = rigidity_check(&k, &aut_action(&k)?, &SearchOptions::default())?;
        let k4 = group("cyclic:2*cyclic:2")?;
        let witness_is_k4 = v.witness.as_ref().is_some_and(|w| find_isomorphism(w, &k4).is_some());
        Ok((v.rigid, witness_is_k4))
    })();
    c.check_result(
        "rigid.z4.aut",
        "Z/4 relative to Aut(Z/4) is not rigid, with witness Z/2 x Z/2",
        (false, true),
        z4,
    );
    let oracle_check = (|| -> Result<(usize, usize)> {
        let (mut agree, mut total) = (0, 0);
        for n in 1..=4 {
            let mut actions = vec![GroupAction::trivial(n)];
            for p in all_permutations(n) {
                actions.push(GroupAction::generated(n, vec![p])?);
            }
            for a in actions {
                let search = equivariant_structures(&a, &SearchOptions::default())?;
                total += 1;
                if canonical_classes(&search.structures) == oracle::latin_square_classes(&a)? {
                    agree += 1;
                }
            }
        }
        Ok((agree, total))
    })();
    match oracle_check {
        Ok((agree, total)) => c.check(
            "rigid.latin.oracle",
            "table search agrees with Latin-square enumeration for every cyclic action on n <= 4 points",
            total,
            agree,
        ),
        Err(e) => c.check("rigid.latin.oracle", "Latin-square oracle", "computed", format!("error: {e}")),
    }
}

fn field_axioms(q: u64) -> Result<bool> {
    let f = field_of_order(q)?;
    let el: Vec<FieldElement> = f.elements().collect();
    let (z, one) = (FieldElement::ZERO, FieldElement::ONE);
    for &a in &el {
        if f.add(a, z) != a || f.mul(a, one) != a || f.add(a, f.neg(a)) != z {
            return Ok(false);
        }
        if !a.is_zero() && f.mul(a, f.inv(a)?) != one {
            return Ok(false);
        }
        for &b in &el {
            if f.add(a, b) != f.add(b, a) || f.mul(a, b) != f.mul(b, a) {
                return Ok(false);
            }
            for &cc in &el {
                if f.add(f.add(a, b), cc) != f.add(a, f.add(b, cc))
                    || f.mul(f.mul(a, b), cc) != f.mul(a, f.mul(b, cc))
                    || f.mul(a, f.add(b, cc)) != f.add(f.mul(a, b), f.mul(a, cc))
                {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Every row and column is a permutation, there is an identity, and the
/// product is associative on all triples.
fn table_invariants(g: &CayleyGroup) -> bool {
    let n = g.order();
    let perm = |v: Vec<usize>| {
        let mut s = v;
        s.sort_unstable();
        s.into_iter().eq(0..n)
    };
    let latin = (0..n).all(|x| perm((0..n).map(|y| g.mul(x, y)).collect()) && perm((0..n).map(|y| g.mul(y, x)).collect()));
    let e = g.identity();
    let ident = (0..n).all(|x| g.mul(e, x) == x && g.mul(x, e) == x);
    use rayon::prelude::*;
    let assoc = (0..n)
        .into_par_iter()
        .all(|x| (0..n).all(|y| (0..n).all(|z| g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z)))));
    latin && ident && assoc
}

/// Group descriptions exercised by the suite.
pub const SUITE_GROUPS: [&str; 20] = [
    "cyclic:6", "sym:3", "sym:4", "alt:4", "alt:5", "sl:2:3", "sl:2:5", "sl:3:2", "pgl:2:3", "pgl:2:5",
    "psl:2:3", "psl:2:5", "psl:2:5*cyclic:2", "affsl:2:2", "affsl:2:3", "atilde:4", "atilde:5", "stilde:4",
    "cyclic:2*cyclic:2", "add:1:9",
];

fn criterion_11(c: &mut Claims) {
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED);
    let qs = [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16];
    let ok: Result<Vec<u64>> = qs
        .iter()
        .map(|&q| field_axioms(q).map(|b| if b { q } else { 0 }))
        .collect();
    c.check_result("props.field.axioms", "field axioms hold exhaustively for every q <= 16", qs.to_vec(), ok);
    let inv: Vec<(String, bool)> = SUITE_GROUPS
        .iter()
        .map(|s| (s.to_string(), group(s).map(|g| table_invariants(&g)).unwrap_or(false)))
        .collect();
    let expected: Vec<(String, bool)> = SUITE_GROUPS.iter().map(|s| (s.to_string(), true)).collect();
    c.check("props.tables", "Latin, identity and associativity invariants on every suite group", expected, inv);
    // d(d phi) = 0: every random coboundary passes the cocycle checks.
    let dd = (|| -> Result<usize> {
        let mut passed = 0;
        for spec in ["cyclic:4", "cyclic:2*cyclic:2", "sym:3", "alt:4", "sym:4", "sl:2:3"] {
            let g = group(spec)?;
            let m = g.order() as u64;
            let e = g.identity();
            for _ in 0..100 {
                let phi: Vec<u64> = (0..g.order()).map(|x| if x == e { 0 } else { rng.gen_range(0..m) }).collect();
                let w = Cocycle2::coboundary(&g, m, &phi);
                let chk = verify_cocycle2(&g, &w);
                if chk.is_cocycle && chk.is_coboundary && w.is_normalized(&g) {
                    passed += 1;
                }
            }
        }
        let r = remark_cocycle_sl3f2();
        for _ in 0..100 {
            let a: Vec<u64> = (0..3).map(|_| rng.gen_range(0..2)).collect();
            let cob = Cocycle1::coboundary(&r.module, &a);
            let chk = verify_cocycle1(&r.group.group, &r.module, &cob);
            let shifted = verify_cocycle1(&r.group.group, &r.module, &r.cocycle.add(&cob, 2));
            if chk.is_cocycle && chk.is_coboundary && shifted.is_cocycle && !shifted.is_coboundary {
                passed += 1;
            }
        }
        Ok(passed)
    })();
    c.check_result("props.dd.zero", "random coboundaries of degree 1 and 2 are cocycles (700 samples)", 700, dd);
    let relabel = (|| -> Result<usize> {
        let mut same = 0;
        for spec in ["cyclic:4", "sym:3"] {
            let k = group(spec)?;
            let act = aut_action(&k)?;
            let base = canonical_classes(&equivariant_structures(&act, &SearchOptions::default())?.structures);
            for _ in 0..10 {
                let mut s: Vec<usize> = (0..k.order()).collect();
                s.shuffle(&mut rng);
                let moved = equivariant_structures(&act.conjugated(&s), &SearchOptions::default())?;
                if canonical_classes(&moved.structures) == base {
                    same += 1;
                }
            }
        }
        Ok(same)
    })();
    c.check_result("props.relabel", "rigidity output is invariant under 10 random relabelings per instance", 20, relabel);
    let gmodule_ok = group("sl:2:3").and_then(|g| GModule::trivial(&g, 3)).is_ok();
    c.check("props.gmodule", "trivial modules pass the action checks", true, gmodule_ok);
}

/// Runs one criterion.
pub fn run_criterion(number: u32) -> Option<CriterionReport> {
    let &(_, title, limit) = CRITERIA.iter().find(|c| c.0 == number)?;
    let mut claims = Claims(Vec::new());
    let start = Instant::now();
    match number {
        1 => criterion_1(&mut claims),
        2 => criterion_2(&mut claims),
        3 => criterion_3(&mut claims),
        4 => criterion_4(&mut claims),
        5 => criterion_5(&mut claims),
        6 => criterion_6(&mut claims),
        7 => criterion_7(&mut claims),
        8 => criterion_8(&mut claims),
        9 => criterion_9(&mut claims),
        10 => criterion_10(&mut claims),
        11 => criterion_11(&mut claims),
        _ => unreachable!(),
    }
    let elapsed = start.elapsed();
    let claims = claims.0;
    Some(CriterionReport {
        number,
        title: title.to_string(),
        limit_seconds: limit,
        pass: claims.iter().all(|c| c.pass),
        claims,
        elapsed,
    })
}

pub fn run_all() -> Vec<CriterionReport> {
    CRITERIA.iter().filter_map(|c| run_criterion(c.0)).collect()
}
