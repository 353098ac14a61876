//! Named group actions accepted on the command line.

use std::fmt;
use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{bail, Context};
use kbase::permcore::{
    dihedral_action, ksubset_action, natural_action, parse_group, pgl2_action, symmetric_group,
    GroupAction,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    /// `S_n` on the `k`-subsets of `{1, …, n}`.
    Snk(usize, usize),
    /// `PGL_2(q)` on the projective line, `q` prime.
    Pgl2(u64),
    /// The dihedral group of order `2n` on the vertices of an `n`-gon.
    Dihedral(usize),
    /// `S_n` on `n` points.
    Sym(usize),
    /// Generators read from a group file, natural action.
    File(PathBuf),
}

fn number<T: std::str::FromStr>(token: &str, what: &str) -> anyhow::Result<T> {
    token
        .parse()
        .ok()
        .with_context(|| format!("{what} must be a nonnegative integer, got `{token}`"))
}

impl GroupSpec {
    pub fn parse(tokens: &[String]) -> anyhow::Result<Self> {
        let args: Vec<&str> = tokens.iter().map(String::as_str).collect();
        Ok(match args.as_slice() {
            ["snk", n, k] => GroupSpec::Snk(number(n, "n")?, number(k, "k")?),
            ["pgl2", q] => GroupSpec::Pgl2(number(q, "q")?),
            ["dihedral", n] => GroupSpec::Dihedral(number(n, "n")?),
            ["sym", n] => GroupSpec::Sym(number(n, "n")?),
            ["file", path] => GroupSpec::File(PathBuf::from(path)),
            _ => bail!(
                "unrecognised group `{}`; expected one of: snk N K, pgl2 Q, dihedral N, sym N, file PATH",
                args.join(" ")
            ),
        })
    }

    pub fn build(&self, cap: usize, allow_small_n: bool) -> anyhow::Result<GroupAction> {
        Ok(match self {
            GroupSpec::Snk(n, k) => ksubset_action(*n, *k, allow_small_n, cap)?,
            GroupSpec::Pgl2(q) => pgl2_action(*q, cap)?,
            GroupSpec::Dihedral(n) => dihedral_action(*n, cap)?,
            GroupSpec::Sym(n) => {
                if *n == 0 {
                    bail!("sym needs n >= 1");
                }
                natural_action(Arc::new(symmetric_group(*n, cap)?))
            }
            GroupSpec::File(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                natural_action(Arc::new(parse_group(&text, cap)?))
            }
        })
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Snk(n, k) => write!(f, "S_{n} on {k}-subsets"),
            GroupSpec::Pgl2(q) => write!(f, "PGL2({q}) on the projective line"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral group of degree {n}"),
            GroupSpec::Sym(n) => write!(f, "S_{n} on {n} points"),
            GroupSpec::File(p) => write!(f, "group from {}", p.display()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn parses_every_kind() {
        assert_eq!(
            GroupSpec::parse(&toks("snk 6 2")).unwrap(),
            GroupSpec::Snk(6, 2)
        );
        assert_eq!(
            GroupSpec::parse(&toks("pgl2 7")).unwrap(),
            GroupSpec::Pgl2(7)
        );
        assert_eq!(
            GroupSpec::parse(&toks("dihedral 5")).unwrap(),
            GroupSpec::Dihedral(5)
        );
        assert_eq!(GroupSpec::parse(&toks("sym 3")).unwrap(), GroupSpec::Sym(3));
        assert_eq!(
            GroupSpec::parse(&toks("file g.txt")).unwrap(),
            GroupSpec::File("g.txt".into())
        );
    }

    #[test]
    fn rejects_bad_specs() {
        for bad in ["", "snk 6", "pgl2 x", "cube 3", "sym 3 4"] {
            assert!(GroupSpec::parse(&toks(bad)).is_err(), "{bad:?}");
        }
        assert!(GroupSpec::Pgl2(8).build(1000, false).is_err());
        assert!(GroupSpec::Snk(3, 2).build(1000, false).is_err());
        assert!(GroupSpec::Snk(3, 2).build(1000, true).is_ok());
    }
}
