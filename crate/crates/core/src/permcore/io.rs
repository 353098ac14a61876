//! Plain-text group files: a `degree n` line, then one generator per line as
//! space-separated 0-based images.

use super::group::{generate_group, PermutationGroup};
use super::perm::Permutation;
use crate::error::{Error, Result};

/// Parses generators from group-file text. Blank lines and lines starting
/// with `#` are ignored.
pub fn parse_generators(text: &str) -> Result<(usize, Vec<Permutation>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty group file".into()))?;
    let degree = header
        .strip_prefix("degree")
        .and_then(|rest| rest.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Parse(format!("expected `degree <n>` header, found `{header}`")))?;
    let mut generators = Vec::new();
    for (lineno, line) in lines {
        let images = line
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("line {lineno}: `{t}` is not a point")))
            })
            .collect::<Result<Vec<_>>>()?;
        if images.len() != degree {
            return Err(Error::Parse(format!(
                "line {lineno}: {} images for degree {degree}",
                images.len()
            )));
        }
        generators.push(
            Permutation::from_images(images)
                .map_err(|e| Error::Parse(format!("line {lineno}: {e}")))?,
        );
    }
    Ok((degree, generators))
}

pub fn parse_group(text: &str, cap: usize) -> Result<PermutationGroup> {
    let (degree, generators) = parse_generators(text)?;
    generate_group(degree, generators, cap)
}

/// Group-file text for a group's generators.
pub fn format_group(group: &PermutationGroup) -> String {
    let mut out = format!("degree {}\n", group.degree());
    for g in group.generators() {
        let line: Vec<String> = g.images().iter().map(|x| x.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permcore::{symmetric_group, DEFAULT_CAP};

    #[test]
    fn round_trip() {
        let g = symmetric_group(4, DEFAULT_CAP).unwrap();
        let text = format_group(&g);
        assert!(text.starts_with("degree 4\n"));
        let h = parse_group(&text, DEFAULT_CAP).unwrap();
        assert_eq!(h.order(), 24);
        assert_eq!(h.generators(), g.generators());
    }

    #[test]
    fn no_generators_is_trivial() {
        assert_eq!(parse_group("degree 3\n", DEFAULT_CAP).unwrap().order(), 1);
    }

    #[test]
    fn malformed_input() {
        for bad in [
            "",
            "deg 3",
            "degree 0",
            "degree 3\n0 1",
            "degree 3\n0 0 1",
            "degree 2\n0 x",
        ] {
            assert!(
                matches!(parse_group(bad, DEFAULT_CAP), Err(Error::Parse(_))),
                "{bad:?}"
            );
        }
        assert_eq!(
            parse_group("degree 4\n1 2 3 0\n1 0 2 3", 5).unwrap_err(),
            Error::CapExceeded { cap: 5 }
        );
    }
}
