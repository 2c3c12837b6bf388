//! Free-group words, finite presentations and coset enumeration.

mod sections;
mod todd_coxeter;

pub use sections::enumerate_sections;
pub use todd_coxeter::{todd_coxeter, CosetEnumeration, DEFAULT_MAX_COSETS};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::group::CayleyGroup;

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub fn new(gen: usize, inv: bool) -> Self {
        Letter { gen, inv }
    }

    pub fn inverse(self) -> Self {
        Letter {
            gen: self.gen,
            inv: !self.inv,
        }
    }
}

/// A freely reduced word in the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    /// Freely reduces the given letters.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Word from `(generator, exponent)` pairs with exponents of any sign.
    pub fn from_powers(parts: &[(usize, i32)]) -> Self {
        Self::new(parts.iter().flat_map(|&(g, e)| {
            std::iter::repeat_n(Letter::new(g, e < 0), e.unsigned_abs() as usize)
        }))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.gen).max()
    }

    /// Evaluates the word in `g` under the given generator images.
    pub fn evaluate(&self, g: &CayleyGroup, images: &[usize]) -> usize {
        self.0.iter().fold(g.identity(), |acc, l| {
            let x = images[l.gen];
            g.mul(acc, if l.inv { g.inv(x) } else { x })
        })
    }
}

/// `g h g^-1 h^-1` for words.
pub fn commutator_word(g: &Word, h: &Word) -> Word {
    g.concat(h).concat(&g.inverse()).concat(&h.inverse())
}

/// Generator names plus relator words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

/// JSON presentation file: `{"generators": [...], "relators": [...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresentationFile {
    pub generators: Vec<String>,
    pub relators: Vec<String>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for g in &generators {
            if g.is_empty() || !seen.insert(g) {
                return Err(Error::Parse(format!("bad or duplicate generator name {g:?}")));
            }
        }
        for r in &relators {
            if r.max_generator().is_some_and(|m| m >= generators.len()) {
                return Err(Error::Parse("relator uses an undeclared generator".into()));
            }
        }
        let relators = relators
            .into_iter()
            .map(|r| Word::new(r.0))
            .filter(|r| !r.is_empty())
            .collect();
        Ok(Presentation {
            generators,
            relators,
        })
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    fn compact_syntax(&self) -> bool {
        self.generators
            .iter()
            .all(|g| g.len() == 1 && g.chars().all(|c| c.is_ascii_lowercase()))
    }

    /// Parses a word. With single lowercase letter generators the compact
    /// syntax applies (uppercase letters are inverses); otherwise the word
    /// is a whitespace-separated list of names, each optionally followed
    /// by `^-1`.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let mut letters = Vec::new();
        if self.compact_syntax() {
            for c in s.chars().filter(|c| !c.is_whitespace()) {
                let name = c.to_ascii_lowercase().to_string();
                let g = self
                    .generator_index(&name)
                    .ok_or_else(|| Error::Parse(format!("unknown generator {c:?}")))?;
                letters.push(Letter::new(g, c.is_ascii_uppercase()));
            }
        } else {
            for tok in s.split_whitespace() {
                let (name, inv) = match tok.strip_suffix("^-1") {
                    Some(base) => (base, true),
                    None => (tok, false),
                };
                let g = self
                    .generator_index(name)
                    .ok_or_else(|| Error::Parse(format!("unknown generator {name:?}")))?;
                letters.push(Letter::new(g, inv));
            }
        }
        Ok(Word::new(letters))
    }

    pub fn format_word(&self, w: &Word) -> String {
        if self.compact_syntax() {
            w.0.iter()
                .map(|l| {
                    let c = self.generators[l.gen].chars().next().unwrap();
                    if l.inv {
                        c.to_ascii_uppercase()
                    } else {
                        c
                    }
                })
                .collect()
        } else {
            w.0.iter()
                .map(|l| {
                    let name = &self.generators[l.gen];
                    if l.inv {
                        format!("{name}^-1")
                    } else {
                        name.clone()
                    }
                })
                .collect::<Vec<_>>()
                .join(" ")
        }
    }

    pub fn from_file(file: &PresentationFile) -> Result<Self> {
        let shell = Presentation::new(file.generators.clone(), Vec::new())?;
        let relators = file
            .relators
            .iter()
            .map(|r| shell.parse_word(r))
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(file.generators.clone(), relators)
    }

    pub fn to_file(&self) -> PresentationFile {
        PresentationFile {
            generators: self.generators.clone(),
            relators: self.relators.iter().map(|r| self.format_word(r)).collect(),
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: PresentationFile =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(&file)
    }

    /// The same presentation with one more relator.
    pub fn with_relator(&self, w: Word) -> Result<Self> {
        let mut rels = self.relators.clone();
        rels.push(w);
        Presentation::new(self.generators.clone(), rels)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        write!(f, "< {} | {} >", self.generators.join(", "), rels.join(", "))
    }
}

/// Outcome of evaluating every relator under a generator assignment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelatorCheck {
    pub holds: bool,
    /// Index of the first relator that does not evaluate to the identity.
    pub first_violated: Option<usize>,
}

pub fn check_relators(p: &Presentation, target: &CayleyGroup, images: &[usize]) -> RelatorCheck {
    assert_eq!(images.len(), p.generators.len(), "one image per generator");
    let first_violated = p
        .relators
        .iter()
        .position(|r| r.evaluate(target, images) != target.identity());
    RelatorCheck {
        holds: first_violated.is_none(),
        first_violated,
    }
}

/// Names of the built-in presentations.
pub const BUILTIN_NAMES: [&str; 5] = ["sym", "stilde", "alt", "atilde", "sl3f2"];

/// Largest `n` accepted by [`builtin_presentation`].
pub const BUILTIN_MAX_N: usize = 6;

/// One of the built-in presentations for `2 <= n <= 6` (`n` is ignored
/// for `sl3f2`).
pub fn builtin_presentation(name: &str, n: usize) -> Result<Presentation> {
    if name != "sl3f2" && !(2..=BUILTIN_MAX_N).contains(&n) {
        return Err(Error::Unsupported(format!("{name} presentation for n = {n}")));
    }
    builtin_presentation_unchecked(name, n)
}

/// As [`builtin_presentation`] but without the upper bound on `n` (up to 9).
pub fn builtin_presentation_unchecked(name: &str, n: usize) -> Result<Presentation> {
    if name != "sl3f2" && !(2..=9).contains(&n) {
        return Err(Error::Unsupported(format!("{name} presentation for n = {n}")));
    }
    match name {
        "sym" => Ok(sym_presentation(n)),
        "stilde" => Ok(stilde_presentation(n)),
        "alt" => Ok(alt_presentation(n, false)),
        "atilde" => Ok(alt_presentation(n, true)),
        "sl3f2" => Ok(sl3f2_presentation()),
        _ => Err(Error::Unsupported(format!("unknown presentation {name:?}"))),
    }
}

fn gen(g: usize) -> Word {
    Word(vec![Letter::new(g, false)])
}

fn distinct_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t: Vec<usize>| {
                (0..n)
                    .filter(|x| !t.contains(x))
                    .map(|x| {
                        let mut t2 = t.clone();
                        t2.push(x);
                        t2
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

fn digits(t: &[usize]) -> String {
    t.iter().map(|x| (x + 1).to_string()).collect()
}

/// Unordered transposition generators `(ab)` with `(ab)^2` and
/// `(ab)(bc)(ab) = (ac)`.
fn sym_presentation(n: usize) -> Presentation {
    let mut names = Vec::new();
    let mut idx = vec![vec![usize::MAX; n]; n];
    for a in 0..n {
        for b in a + 1..n {
            idx[a][b] = names.len();
            idx[b][a] = names.len();
            names.push(format!("({})", digits(&[a, b])));
        }
    }
    let t = |a: usize, b: usize| gen(idx[a][b]);
    let mut rels = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            rels.push(t(a, b).concat(&t(a, b)));
        }
    }
    for abc in distinct_tuples(n, 3) {
        let (a, b, c) = (abc[0], abc[1], abc[2]);
        rels.push(t(a, b).concat(&t(b, c)).concat(&t(a, b)).concat(&t(a, c).inverse()));
    }
    Presentation::new(names, rels).expect("well-formed")
}

/// Generators `z` and ordered `[ab]`.
fn stilde_presentation(n: usize) -> Presentation {
    let mut names = vec!["z".to_string()];
    let mut idx = vec![vec![usize::MAX; n]; n];
    for ab in distinct_tuples(n, 2) {
        idx[ab[0]][ab[1]] = names.len();
        names.push(format!("[{}]", digits(&ab)));
    }
    let z = gen(0);
    let t = |a: usize, b: usize| gen(idx[a][b]);
    let mut rels = vec![z.concat(&z)];
    for ab in distinct_tuples(n, 2) {
        let (a, b) = (ab[0], ab[1]);
        rels.push(commutator_word(&z, &t(a, b)));
        rels.push(t(a, b).concat(&t(b, a).inverse()).concat(&z.inverse()));
        rels.push(t(a, b).concat(&t(a, b)));
    }
    for abc in distinct_tuples(n, 3) {
        let (a, b, c) = (abc[0], abc[1], abc[2]);
        rels.push(
            t(a, b)
                .concat(&t(b, c))
                .concat(&t(a, b))
                .concat(&t(a, c).inverse())
                .concat(&z.inverse()),
        );
    }
    Presentation::new(names, rels).expect("well-formed")
}

/// Generators `s(abc)` over ordered distinct triples, plus `z` when
/// `with_z`; without `z` the last relator ends in the identity.
fn alt_presentation(n: usize, with_z: bool) -> Presentation {
    let mut names = Vec::new();
    if with_z {
        names.push("z".to_string());
    }
    let mut idx = std::collections::HashMap::new();
    for t in distinct_tuples(n, 3) {
        idx.insert((t[0], t[1], t[2]), names.len());
        names.push(format!("s({})", digits(&t)));
    }
    let s = |a: usize, b: usize, c: usize| gen(idx[&(a, b, c)]);
    let mut rels = Vec::new();
    if with_z {
        let z = gen(0);
        rels.push(z.concat(&z));
        for t in distinct_tuples(n, 3) {
            rels.push(commutator_word(&z, &s(t[0], t[1], t[2])));
        }
    }
    for t in distinct_tuples(n, 3) {
        let (a, b, c) = (t[0], t[1], t[2]);
        let x = s(a, b, c);
        rels.push(x.concat(&s(b, c, a).inverse()));
        rels.push(x.concat(&x).concat(&x));
        rels.push(x.concat(&s(c, b, a)));
    }
    for t in distinct_tuples(n, 4) {
        let (a, b, c, d) = (t[0], t[1], t[2], t[3]);
        let mut w = s(c, b, d).concat(&s(b, a, d)).concat(&s(a, b, c));
        if with_z {
            w = w.concat(&gen(0).inverse());
        }
        rels.push(w);
    }
    Presentation::new(names, rels).expect("well-formed")
}

/// `SL_3(F_2)` on the generators `s_ij`.
fn sl3f2_presentation() -> Presentation {
    let pairs = distinct_tuples(3, 2);
    let names: Vec<String> = pairs.iter().map(|p| format!("s{}", digits(p))).collect();
    let s = |i: usize, j: usize| gen(pairs.iter().position(|p| p[0] == i && p[1] == j).unwrap());
    let e = Word::default();
    let mut rels = Vec::new();
    for p in &pairs {
        rels.push(s(p[0], p[1]).concat(&s(p[0], p[1])));
    }
    for t in distinct_tuples(3, 3) {
        let (i, j, k) = (t[0], t[1], t[2]);
        rels.push(commutator_word(&s(i, k), &s(j, k)));
        rels.push(commutator_word(&s(i, j), &s(i, k)));
        rels.push(commutator_word(&s(i, j), &s(j, k)).concat(&s(i, k).inverse()));
    }
    rels.retain(|r| *r != e);
    Presentation::new(names, rels).expect("well-formed")
}

/// The Steinberg presentation of `SL_n(F_q)` on generators `t_ij(x)`,
/// `x` a nonzero field element. Also returns the matrix `(i, j, x)` of
/// each generator.
pub fn steinberg_presentation(
    n: usize,
    f: &FieldSpec,
) -> Result<(Presentation, Vec<(usize, usize, crate::field::FieldElement)>)> {
    // For n = 2 the relations do not present SL_2.
    if !(3..=6).contains(&n) {
        return Err(Error::Unsupported(format!("Steinberg presentation for n = {n}")));
    }
    let units: Vec<_> = f.units().collect();
    let mut names = Vec::new();
    let mut meta = Vec::new();
    let mut idx = std::collections::HashMap::new();
    for ij in distinct_tuples(n, 2) {
        for &x in &units {
            idx.insert((ij[0], ij[1], x), names.len());
            names.push(format!("t{}({})", digits(&ij), f.format(x)));
            meta.push((ij[0], ij[1], x));
        }
    }
    let t = |i: usize, j: usize, x| -> Word {
        if crate::field::FieldElement::is_zero(x) {
            Word::default()
        } else {
            gen(idx[&(i, j, x)])
        }
    };
    let mut rels = Vec::new();
    for ij in distinct_tuples(n, 2) {
        let (i, j) = (ij[0], ij[1]);
        for &x in &units {
            for &y in &units {
                rels.push(t(i, j, x).concat(&t(i, j, y)).concat(&t(i, j, f.add(x, y)).inverse()));
            }
        }
    }
    for ijk in distinct_tuples(n, 3) {
        let (i, j, k) = (ijk[0], ijk[1], ijk[2]);
        for &a in &units {
            for &b in &units {
                rels.push(
                    commutator_word(&t(i, j, a), &t(j, k, b)).concat(&t(i, k, f.mul(a, b)).inverse()),
                );
            }
        }
    }
    for ij in distinct_tuples(n, 2) {
        for kr in distinct_tuples(n, 2) {
            let (i, j, k, r) = (ij[0], ij[1], kr[0], kr[1]);
            if j == k || i == r {
                continue;
            }
            for &a in &units {
                for &b in &units {
                    rels.push(commutator_word(&t(i, j, a), &t(k, r, b)));
                }
            }
        }
    }
    Ok((Presentation::new(names, rels)?, meta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Perm, PermutationGroup};

    #[test]
    fn free_reduction() {
        let w = Word::new([Letter::new(0, false), Letter::new(1, false), Letter::new(1, true)]);
        assert_eq!(w.len(), 1);
        assert!(Word::from_powers(&[(0, 2), (0, -2)]).is_empty());
    }

    #[test]
    fn json_roundtrip_compact_syntax() {
        let p = Presentation::from_json(r#"{"generators":["a","b"],"relators":["aaa","abAB"]}"#).unwrap();
        assert_eq!(p.relators.len(), 2);
        assert_eq!(p.format_word(&p.relators[1]), "abAB");
        assert!(Presentation::from_json(r#"{"generators":["a"],"relators":["ab"]}"#).is_err());
    }

    #[test]
    fn named_syntax_roundtrip() {
        let p = builtin_presentation("atilde", 4).unwrap();
        let back = Presentation::from_file(&p.to_file()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn sym4_relator_shapes() {
        let p = builtin_presentation("sym", 4).unwrap();
        assert_eq!(p.generators.len(), 6);
        let w = p.parse_word("(12) (23) (12) (13)^-1").unwrap();
        assert!(p.relators.contains(&w));
    }

    #[test]
    fn atilde4_contains_long_relator() {
        let p = builtin_presentation("atilde", 4).unwrap();
        assert_eq!(p.generators.len(), 25);
        // (a, b, c, d) = (1, 2, 3, 4): s(cbd) s(bad) s(abc) z^-1
        let w = p.parse_word("s(324) s(214) s(123) z^-1").unwrap();
        assert!(p.relators.contains(&w));
    }

    #[test]
    fn alt_relators_hold_in_alternating_groups() {
        for n in 4..=6 {
            let p = builtin_presentation("alt", n).unwrap();
            let a = PermutationGroup::alternating(n, 1 << 14).unwrap();
            let images: Vec<usize> = p
                .generators
                .iter()
                .map(|name| {
                    let pts: Vec<usize> = name[2..5].chars().map(|c| c as usize - '1' as usize).collect();
                    let ab = Perm::from_cycles(n, &[&[pts[0], pts[1]]]).unwrap();
                    let bc = Perm::from_cycles(n, &[&[pts[1], pts[2]]]).unwrap();
                    a.index_of(&ab.compose(&bc)).unwrap()
                })
                .collect();
            assert!(check_relators(&p, &a.group, &images).holds, "n = {n}");
        }
    }

    #[test]
    fn bounds() {
        assert!(matches!(builtin_presentation("sym", 7), Err(Error::Unsupported(_))));
        assert!(matches!(builtin_presentation("foo", 3), Err(Error::Unsupported(_))));
    }
}
