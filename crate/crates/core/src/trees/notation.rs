//! Bracket notation: `[]` is one vertex and `[[][]]` a root with two leaf
//! children. Colored vertices carry `^ν` right after the opening bracket,
//! e.g. `[^2[^1]]`; a missing annotation means color 1. Trees that use only
//! color 1 print without annotations.

use std::fmt;
use std::str::FromStr;

use super::Tree;
use crate::error::Error;

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let annotate = self.has_color_other_than_one();
        write_tree(self, annotate, f)
    }
}

impl Tree {
    /// Bracket notation; with `annotate` every vertex carries its color.
    pub fn notation(&self, annotate: bool) -> String {
        struct Annotated<'a>(&'a Tree, bool);
        impl fmt::Display for Annotated<'_> {
            fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write_tree(self.0, self.1 || self.0.has_color_other_than_one(), f)
            }
        }
        Annotated(self, annotate).to_string()
    }

    fn has_color_other_than_one(&self) -> bool {
        self.color() != 1 || self.children().iter().any(Tree::has_color_other_than_one)
    }
}

fn write_tree(t: &Tree, annotate: bool, f: &mut fmt::Formatter) -> fmt::Result {
    f.write_str("[")?;
    if annotate {
        write!(f, "^{}", t.color())?;
    }
    for c in t.children() {
        write_tree(c, annotate, f)?;
    }
    f.write_str("]")
}

impl FromStr for Tree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes: Vec<u8> = s.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
        let mut pos = 0;
        let tree = parse_vertex(&bytes, &mut pos).map_err(|reason| Error::TreeSyntax { input: s.to_string(), reason })?;
        if pos != bytes.len() {
            return Err(Error::TreeSyntax { input: s.to_string(), reason: format!("trailing input at byte {pos}") });
        }
        Ok(tree)
    }
}

fn parse_vertex(b: &[u8], pos: &mut usize) -> Result<Tree, String> {
    if b.get(*pos) != Some(&b'[') {
        return Err(format!("expected '[' at byte {pos}"));
    }
    *pos += 1;
    let mut color = 1u32;
    if b.get(*pos) == Some(&b'^') {
        *pos += 1;
        let start = *pos;
        while b.get(*pos).is_some_and(u8::is_ascii_digit) {
            *pos += 1;
        }
        color = std::str::from_utf8(&b[start..*pos])
            .ok()
            .and_then(|d| d.parse().ok())
            .filter(|&c| c >= 1)
            .ok_or_else(|| format!("expected a positive color after '^' at byte {start}"))?;
    }
    let mut children = Vec::new();
    loop {
        match b.get(*pos) {
            Some(b']') => {
                *pos += 1;
                return Ok(Tree::colored(color, children));
            }
            Some(b'[') => children.push(parse_vertex(b, pos)?),
            Some(&c) => return Err(format!("unexpected {:?} at byte {pos}", c as char)),
            None => return Err("unbalanced brackets".into()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prints_and_parses() {
        for s in ["[]", "[[]]", "[[][]]", "[[][[]]]", "[^2[^1]]", "[^1[^1][^2[^2]]]"] {
            let t: Tree = s.parse().unwrap();
            assert_eq!(t.to_string(), s);
        }
        // unannotated children default to color 1
        let t: Tree = "[^2[]]".parse().unwrap();
        assert_eq!(t.to_string(), "[^2[^1]]");
        // non-canonical input is canonicalized
        let t: Tree = "[[[]][]]".parse().unwrap();
        assert_eq!(t.to_string(), "[[][[]]]");
    }

    #[test]
    fn rejects_malformed() {
        for s in ["", "[", "[]]", "[x]", "[^]", "[^0]", "[][]"] {
            assert!(s.parse::<Tree>().is_err(), "{s:?} should not parse");
        }
    }
}
