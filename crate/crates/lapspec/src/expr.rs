//! Composition expressions over named graph families, mirroring the table
//! notation: `K2 ∨ (K1 ∪ P3)`, `2K1 ∨ ~K1,3`, `P2 × P3`.
//!
//! Grammar (whitespace-insensitive): `×` binds tighter than `∨`, which binds
//! tighter than `∪`; all operators are left-associative; `~` is complement
//! and binds tightest. ASCII aliases: `u` for `∪`, `v` for `∨`, `x` for `×`.
//! A leading count repeats a term by disjoint union (`3K1`, `2K2`).

use crate::error::{Error, Result};
use crate::graph::{Family, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Family(Family),
    Repeat(usize, Box<Expr>),
    Union(Box<Expr>, Box<Expr>),
    Join(Box<Expr>, Box<Expr>),
    Product(Box<Expr>, Box<Expr>),
    Complement(Box<Expr>),
}

impl Expr {
    pub fn family(f: Family) -> Expr {
        Expr::Family(f)
    }

    pub fn union(a: Expr, b: Expr) -> Expr {
        Expr::Union(Box::new(a), Box::new(b))
    }

    pub fn join(a: Expr, b: Expr) -> Expr {
        Expr::Join(Box::new(a), Box::new(b))
    }

    pub fn product(a: Expr, b: Expr) -> Expr {
        Expr::Product(Box::new(a), Box::new(b))
    }

    pub fn complement(a: Expr) -> Expr {
        Expr::Complement(Box::new(a))
    }

    pub fn repeat(k: usize, a: Expr) -> Expr {
        Expr::Repeat(k, Box::new(a))
    }

    /// Evaluate to a concrete graph with the fixed composition labeling.
    pub fn eval(&self) -> Result<Graph> {
        match self {
            Expr::Family(f) => Graph::named(f),
            Expr::Repeat(k, a) => {
                if *k == 0 {
                    return Err(Error::Parse {
                        pos: 0,
                        reason: "repeat count must be positive".to_string(),
                    });
                }
                let g = a.eval()?;
                let mut acc = g.clone();
                for _ in 1..*k {
                    acc = Graph::disjoint_union(&acc, &g)?;
                }
                Ok(acc)
            }
            Expr::Union(a, b) => Graph::disjoint_union(&a.eval()?, &b.eval()?),
            Expr::Join(a, b) => Graph::join(&a.eval()?, &b.eval()?),
            Expr::Product(a, b) => Graph::cartesian_product(&a.eval()?, &b.eval()?),
            Expr::Complement(a) => Ok(a.eval()?.complement()),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Union(..) => 1,
            Expr::Join(..) => 2,
            Expr::Product(..) => 3,
            _ => 4,
        }
    }

    fn fmt_prec(&self, f: &mut std::fmt::Formatter<'_>, min: u8) -> std::fmt::Result {
        let p = self.precedence();
        if p < min {
            write!(f, "(")?;
        }
        match self {
            Expr::Family(fam) => {
                let s = match fam {
                    Family::Empty(1) => "K1".to_string(),
                    Family::Empty(k) => format!("{k}K1"),
                    Family::Complete(k) => format!("K{k}"),
                    Family::Path(k) => format!("P{k}"),
                    Family::Cycle(k) => format!("C{k}"),
                    Family::Star(k) => format!("S{k}"),
                    Family::Friendship(k) => format!("F{k}"),
                    Family::Multipartite(parts) => {
                        let list: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                        format!("K{}", list.join(","))
                    }
                };
                write!(f, "{s}")?;
            }
            Expr::Repeat(k, a) => {
                write!(f, "{k}")?;
                a.fmt_prec(f, 4)?;
            }
            Expr::Union(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, " ∪ ")?;
                b.fmt_prec(f, 2)?;
            }
            Expr::Join(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, " ∨ ")?;
                b.fmt_prec(f, 3)?;
            }
            Expr::Product(a, b) => {
                a.fmt_prec(f, 3)?;
                write!(f, " × ")?;
                b.fmt_prec(f, 4)?;
            }
            Expr::Complement(a) => {
                write!(f, "~")?;
                a.fmt_prec(f, 4)?;
            }
        }
        if p < min {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl std::fmt::Display for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.fmt_prec(f, 0)
    }
}

pub fn parse(input: &str) -> Result<Expr> {
    let mut p = Parser {
        chars: input.char_indices().collect(),
        pos: 0,
    };
    let expr = p.union()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(expr)
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl Parser {
    fn err(&self, reason: &str) -> Error {
        let byte = self
            .chars
            .get(self.pos)
            .map(|&(b, _)| b)
            .unwrap_or_else(|| self.chars.last().map(|&(b, c)| b + c.len_utf8()).unwrap_or(0));
        Error::Parse {
            pos: byte,
            reason: reason.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn union(&mut self) -> Result<Expr> {
        let mut lhs = self.join()?;
        loop {
            self.skip_ws();
            if self.eat('∪') || self.eat('u') {
                lhs = Expr::union(lhs, self.join()?);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn join(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        loop {
            self.skip_ws();
            if self.eat('∨') || self.eat('v') {
                lhs = Expr::join(lhs, self.product()?);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.atom()?;
        loop {
            self.skip_ws();
            if self.eat('×') || self.eat('x') {
                lhs = Expr::product(lhs, self.atom()?);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        self.skip_ws();
        if self.eat('~') {
            return Ok(Expr::complement(self.atom()?));
        }
        if self.eat('(') {
            let inner = self.union()?;
            self.skip_ws();
            if !self.eat(')') {
                return Err(self.err("expected ')'"));
            }
            return Ok(inner);
        }
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let count = self.number()?;
            let inner = self.atom()?;
            // kK1 is the empty graph family, other counts repeat by union
            return Ok(match inner {
                Expr::Family(Family::Complete(1)) => Expr::Family(Family::Empty(count)),
                other => Expr::repeat(count, other),
            });
        }
        let letter = self.peek().ok_or_else(|| self.err("expected a family name"))?;
        self.pos += 1;
        match letter {
            'K' => {
                let first = self.number()?;
                let mut parts = vec![first];
                while self.eat(',') {
                    parts.push(self.number()?);
                }
                if parts.len() == 1 {
                    Ok(Expr::family(Family::Complete(first)))
                } else {
                    Ok(Expr::family(Family::Multipartite(parts)))
                }
            }
            'P' => Ok(Expr::family(Family::Path(self.number()?))),
            'C' => Ok(Expr::family(Family::Cycle(self.number()?))),
            'S' => Ok(Expr::family(Family::Star(self.number()?))),
            'F' => Ok(Expr::family(Family::Friendship(self.number()?))),
            _ => {
                self.pos -= 1;
                Err(self.err("expected one of the families K, P, C, S, F"))
            }
        }
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        s.parse().map_err(|_| self.err("integer out of range"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_form;
    use crate::spectrum::integer_spectrum;

    fn eval(s: &str) -> Graph {
        parse(s).unwrap().eval().unwrap()
    }

    #[test]
    fn star_expression() {
        let g = eval("K1 v 3K1");
        assert_eq!(
            integer_spectrum(&g).unwrap().to_string(),
            "{0,1,1,4}"
        );
    }

    #[test]
    fn ladder_expression() {
        assert_eq!(
            integer_spectrum(&eval("P2 x P3")).unwrap().to_string(),
            "{0,1,2,3,3,5}"
        );
    }

    #[test]
    fn unicode_and_ascii_agree() {
        assert_eq!(eval("K2 ∨ (K1 ∪ P3)"), eval("K2 v (K1 u P3)"));
    }

    #[test]
    fn complement_and_multipartite() {
        let a = eval("~K1,3");
        let b = eval("K1 u K3");
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert_eq!(eval("K1,1,2").edge_count(), 5);
    }

    #[test]
    fn precedence() {
        // x over v over u, left-associative
        assert_eq!(parse("K1 v K2 x K2 u K1").unwrap().to_string(), "K1 ∨ K2 × K2 ∪ K1");
        let g = eval("K1 v K2 x K2 u K1");
        assert_eq!(g.order(), 6);
        assert!(!g.is_connected());
    }

    #[test]
    fn display_round_trips() {
        for s in ["K2 ∨ (K1 ∪ P3)", "2K1 ∨ ~K1,3", "K1 ∨ (P3 ∪ ~P3)", "3K1", "2K2"] {
            let e = parse(s).unwrap();
            let printed = e.to_string();
            assert_eq!(parse(&printed).unwrap().eval().unwrap(), e.eval().unwrap(), "{s} vs {printed}");
        }
    }

    #[test]
    fn errors_carry_positions() {
        match parse("K2 v (K1 u") {
            Err(Error::Parse { pos, .. }) => assert!(pos >= 10),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse("Q3").is_err());
        assert!(parse("K2 )").is_err());
    }
}
