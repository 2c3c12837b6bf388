use std::fmt;

use super::affine::{AffineGroup, VectorGroup};
use super::matrix::{MatrixGroup, MatrixKind};
use super::perm::PermutationGroup;
use super::{cyclic, direct_product, CayleyGroup, TableFile};
use crate::error::{Error, Result};
use crate::field::field_of_order;
use crate::presentation::{
    builtin_presentation, builtin_presentation_unchecked, todd_coxeter, Presentation,
    DEFAULT_MAX_COSETS,
};

/// Resource limits shared by constructors and searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_order: usize,
    pub max_cosets: usize,
    pub search_budget: u64,
    /// Permits built-in presentations beyond the default range of `n`.
    pub allow_large: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 1 << 14,
            max_cosets: DEFAULT_MAX_COSETS,
            search_budget: 1_000_000_000,
            allow_large: false,
        }
    }
}

/// A group description understood by [`construct`].
#[derive(Clone, Debug)]
pub enum GroupSpec {
    Cyclic(usize),
    Sym(usize),
    Alt(usize),
    Sl(usize, u64),
    Gl(usize, u64),
    Psl(usize, u64),
    Pgl(usize, u64),
    AffSl(usize, u64),
    /// The additive group `F_q^n`.
    Additive(usize, u64),
    Atilde(usize),
    Stilde(usize),
    Product(Vec<GroupSpec>),
    Presented(Box<Presentation>),
    Table(Box<TableFile>),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Sym(n) => write!(f, "sym:{n}"),
            GroupSpec::Alt(n) => write!(f, "alt:{n}"),
            GroupSpec::Sl(n, q) => write!(f, "sl:{n}:{q}"),
            GroupSpec::Gl(n, q) => write!(f, "gl:{n}:{q}"),
            GroupSpec::Psl(n, q) => write!(f, "psl:{n}:{q}"),
            GroupSpec::Pgl(n, q) => write!(f, "pgl:{n}:{q}"),
            GroupSpec::AffSl(n, q) => write!(f, "affsl:{n}:{q}"),
            GroupSpec::Additive(n, q) => write!(f, "add:{n}:{q}"),
            GroupSpec::Atilde(n) => write!(f, "atilde:{n}"),
            GroupSpec::Stilde(n) => write!(f, "stilde:{n}"),
            GroupSpec::Product(parts) => {
                let s: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", s.join("*"))
            }
            GroupSpec::Presented(p) => write!(f, "presented{p}"),
            GroupSpec::Table(t) => write!(f, "table(n={})", t.n),
        }
    }
}

fn num<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::Parse(format!("{what}: expected a number, got {s:?}")))
}

fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

/// Parses `cyclic:n`, `sym:n`, `alt:n`, `sl:n:q`, `gl:n:q`, `psl:n:q`,
/// `pgl:n:q`, `affsl:n:q`, `add:n:q`, `atilde:n`, `stilde:n`,
/// `table:@file`, `present:@file`, and products `A*B`.
pub fn parse_group_spec(s: &str) -> Result<GroupSpec> {
    let s = s.trim();
    if s.contains('*') {
        let parts = s
            .split('*')
            .map(parse_group_spec)
            .collect::<Result<Vec<_>>>()?;
        return Ok(GroupSpec::Product(parts));
    }
    let fields: Vec<&str> = s.split(':').collect();
    let tag = fields[0];
    let arity = |k: usize| -> Result<()> {
        if fields.len() != k + 1 {
            return Err(Error::Parse(format!("{tag} takes {k} parameter(s): {s:?}")));
        }
        Ok(())
    };
    let spec = match tag {
        "cyclic" | "sym" | "alt" | "atilde" | "stilde" => {
            arity(1)?;
            let n = num(fields[1], "n")?;
            match tag {
                "cyclic" => GroupSpec::Cyclic(n),
                "sym" => GroupSpec::Sym(n),
                "alt" => GroupSpec::Alt(n),
                "atilde" => GroupSpec::Atilde(n),
                _ => GroupSpec::Stilde(n),
            }
        }
        "sl" | "gl" | "psl" | "pgl" | "affsl" | "add" => {
            arity(2)?;
            let n = num(fields[1], "n")?;
            let q = num(fields[2], "q")?;
            match tag {
                "sl" => GroupSpec::Sl(n, q),
                "gl" => GroupSpec::Gl(n, q),
                "psl" => GroupSpec::Psl(n, q),
                "pgl" => GroupSpec::Pgl(n, q),
                "affsl" => GroupSpec::AffSl(n, q),
                _ => GroupSpec::Additive(n, q),
            }
        }
        "table" | "present" => {
            let rest = fields[1..].join(":");
            let path = rest
                .trim()
                .strip_prefix('@')
                .ok_or_else(|| Error::Parse(format!("{tag} expects @file, got {s:?}")))?;
            let text = read_file(path)?;
            if tag == "table" {
                let t: TableFile =
                    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
                GroupSpec::Table(Box::new(t))
            } else {
                GroupSpec::Presented(Box::new(Presentation::from_json(&text)?))
            }
        }
        _ => return Err(Error::Parse(format!("unknown group constructor {tag:?}"))),
    };
    Ok(spec)
}

fn presented(p: &Presentation, limits: &Limits) -> Result<CayleyGroup> {
    let e = todd_coxeter(p, limits.max_cosets)?;
    e.regular_representation(p, limits.max_order)
}

fn builtin(name: &str, n: usize, limits: &Limits) -> Result<CayleyGroup> {
    let p = if limits.allow_large {
        builtin_presentation_unchecked(name, n)?
    } else {
        builtin_presentation(name, n).map_err(|_| {
            Error::TooLarge(format!(
                "{name}:{n} is outside the default range; an explicit override is required"
            ))
        })?
    };
    presented(&p, limits)
}

/// Materializes a group description as a validated Cayley table.
pub fn construct(spec: &GroupSpec, limits: &Limits) -> Result<CayleyGroup> {
    let mo = limits.max_order;
    let linear = |kind, n: usize, q: u64| -> Result<CayleyGroup> {
        Ok(MatrixGroup::new(kind, n, field_of_order(q)?, mo)?.group)
    };
    match spec {
        GroupSpec::Cyclic(n) => {
            if *n > mo {
                return Err(Error::TooLarge(format!("order {n} exceeds the bound {mo}")));
            }
            cyclic(*n)
        }
        GroupSpec::Sym(n) => Ok(PermutationGroup::symmetric(*n, mo)?.group),
        GroupSpec::Alt(n) => Ok(PermutationGroup::alternating(*n, mo)?.group),
        GroupSpec::Sl(n, q) => linear(MatrixKind::Sl, *n, *q),
        GroupSpec::Gl(n, q) => linear(MatrixKind::Gl, *n, *q),
        GroupSpec::Psl(n, q) => linear(MatrixKind::Psl, *n, *q),
        GroupSpec::Pgl(n, q) => linear(MatrixKind::Pgl, *n, *q),
        GroupSpec::AffSl(n, q) => Ok(AffineGroup::new(*n, field_of_order(*q)?, mo)?.group),
        GroupSpec::Additive(n, q) => Ok(VectorGroup::new(*n, field_of_order(*q)?, mo)?.group),
        GroupSpec::Atilde(n) => builtin("atilde", *n, limits),
        GroupSpec::Stilde(n) => builtin("stilde", *n, limits),
        GroupSpec::Product(parts) => {
            let mut it = parts.iter();
            let first = it
                .next()
                .ok_or_else(|| Error::BadParameters("empty product".into()))?;
            let mut g = construct(first, limits)?;
            for p in it {
                let h = construct(p, limits)?;
                if g.order() * h.order() > mo {
                    return Err(Error::TooLarge(format!(
                        "product order {} exceeds the bound {mo}",
                        g.order() * h.order()
                    )));
                }
                g = direct_product(&g, &h)?;
            }
            Ok(g)
        }
        GroupSpec::Presented(p) => presented(p, limits),
        GroupSpec::Table(t) => {
            if t.n > mo {
                return Err(Error::TooLarge(format!("order {} exceeds the bound {mo}", t.n)));
            }
            CayleyGroup::from_table_file(t)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints() {
        for s in ["cyclic:6", "sl:2:5", "psl:2:5*cyclic:2", "atilde:4", "add:2:3"] {
            assert_eq!(parse_group_spec(s).unwrap().to_string(), s);
        }
        assert!(parse_group_spec("sl:2").is_err());
        assert!(parse_group_spec("foo:2").is_err());
        assert!(parse_group_spec("table:nofile").is_err());
    }

    #[test]
    fn documented_orders() {
        let l = Limits::default();
        for (s, n) in [("sl:2:5", 120), ("alt:4", 12), ("pgl:2:3", 24), ("atilde:4", 24), ("psl:2:5*cyclic:2", 120)] {
            assert_eq!(construct(&parse_group_spec(s).unwrap(), &l).unwrap().order(), n, "{s}");
        }
    }

    #[test]
    fn too_large_and_bad_parameters() {
        let l = Limits::default();
        let big = construct(&parse_group_spec("sl:9:9").unwrap(), &l);
        assert!(matches!(big, Err(Error::TooLarge(_))));
        assert!(construct(&parse_group_spec("sl:2:6").unwrap(), &l).is_err());
        assert!(matches!(
            construct(&GroupSpec::Atilde(7), &l),
            Err(Error::TooLarge(_))
        ));
    }
}
