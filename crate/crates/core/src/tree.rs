//! Ranked trees and one-hole contexts, with the `name(child,…)` text form.

use std::fmt;

/// Name of the hole symbol in the text form of contexts.
pub const HOLE: &str = "_";

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tree {
    pub symbol: String,
    pub children: Vec<Tree>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message} at offset {offset}")]
pub struct TreeParseError {
    pub offset: usize,
    pub message: String,
}

impl Tree {
    pub fn leaf(symbol: impl Into<String>) -> Self {
        Tree { symbol: symbol.into(), children: Vec::new() }
    }

    pub fn node(symbol: impl Into<String>, children: Vec<Tree>) -> Self {
        Tree { symbol: symbol.into(), children }
    }

    /// 0 for a leaf, otherwise one more than the highest child.
    pub fn height(&self) -> usize {
        self.children.iter().map(|c| c.height() + 1).max().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Tree::size).sum::<usize>()
    }

    /// Number of hole leaves.
    pub fn hole_count(&self) -> usize {
        if self.symbol == HOLE && self.children.is_empty() {
            1
        } else {
            self.children.iter().map(Tree::hole_count).sum()
        }
    }

    /// Calls `f` on every node, parents before children.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Tree)) {
        f(self);
        for c in &self.children {
            c.visit(f);
        }
    }

    pub fn parse(text: &str) -> Result<Tree, TreeParseError> {
        let mut p = Parser { text, pos: 0 };
        let t = p.tree()?;
        p.skip_ws();
        if p.pos != text.len() {
            return Err(p.error("trailing input"));
        }
        Ok(t)
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol)?;
        if !self.children.is_empty() {
            write!(f, "(")?;
            for (i, c) in self.children.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> TreeParseError {
        TreeParseError { offset: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn tree(&mut self) -> Result<Tree, TreeParseError> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_whitespace() || matches!(c, '(' | ')' | ',') {
                break;
            }
            self.pos += c.len_utf8();
        }
        if start == self.pos {
            return Err(self.error("expected symbol name"));
        }
        let symbol = self.text[start..self.pos].to_string();
        self.skip_ws();
        let mut children = Vec::new();
        if self.peek() == Some('(') {
            self.pos += 1;
            loop {
                children.push(self.tree()?);
                self.skip_ws();
                match self.peek() {
                    Some(',') => self.pos += 1,
                    Some(')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.error("expected `,` or `)`")),
                }
            }
        }
        Ok(Tree { symbol, children })
    }
}

/// A tree with exactly one hole leaf.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Context(Tree);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ContextError {
    #[error("context must contain exactly one hole, found {0}")]
    HoleCount(usize),
    #[error(transparent)]
    Parse(#[from] TreeParseError),
}

impl Context {
    pub fn new(tree: Tree) -> Result<Self, ContextError> {
        match tree.hole_count() {
            1 => Ok(Context(tree)),
            k => Err(ContextError::HoleCount(k)),
        }
    }

    /// The trivial context `□`.
    pub fn hole() -> Self {
        Context(Tree::leaf(HOLE))
    }

    pub fn parse(text: &str) -> Result<Self, ContextError> {
        Context::new(Tree::parse(text)?)
    }

    pub fn as_tree(&self) -> &Tree {
        &self.0
    }

    pub fn is_hole(&self) -> bool {
        self.0.symbol == HOLE
    }

    /// Length of the path from the root to the hole.
    pub fn hole_depth(&self) -> usize {
        fn go(t: &Tree) -> Option<usize> {
            if t.symbol == HOLE && t.children.is_empty() {
                return Some(0);
            }
            t.children.iter().find_map(go).map(|d| d + 1)
        }
        go(&self.0).expect("context has a hole")
    }

    /// `c[t]`: the tree obtained by plugging `t` into the hole.
    pub fn substitute(&self, t: &Tree) -> Tree {
        fn go(node: &Tree, t: &Tree) -> Tree {
            if node.symbol == HOLE && node.children.is_empty() {
                return t.clone();
            }
            Tree { symbol: node.symbol.clone(), children: node.children.iter().map(|c| go(c, t)).collect() }
        }
        go(&self.0, t)
    }

    /// `c[c']`: plugging another context into the hole.
    pub fn compose(&self, inner: &Context) -> Context {
        Context(self.substitute(&inner.0))
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let t = Tree::parse(" f( a , g(b) )").unwrap();
        assert_eq!(t.to_string(), "f(a,g(b))");
        assert_eq!(t.height(), 2);
        assert_eq!(t.size(), 4);
        assert_eq!(Tree::parse("#1").unwrap(), Tree::leaf("#1"));
    }

    #[test]
    fn parse_errors_are_positioned() {
        let e = Tree::parse("f(a,").unwrap_err();
        assert_eq!(e.offset, 4);
        assert!(Tree::parse("f(a) b").is_err());
        assert!(Tree::parse("").is_err());
    }

    #[test]
    fn contexts() {
        let c = Context::parse("f(_,a)").unwrap();
        assert_eq!(c.hole_depth(), 1);
        assert_eq!(c.substitute(&Tree::leaf("b")).to_string(), "f(b,a)");
        assert!(Context::parse("f(a,a)").is_err());
        assert!(Context::parse("f(_,_)").is_err());
        assert_eq!(Context::hole().hole_depth(), 0);
        let d = Context::parse("g(_)").unwrap();
        assert_eq!(c.compose(&d).to_string(), "f(g(_),a)");
    }
}
