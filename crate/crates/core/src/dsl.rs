//! Text syntax for tautological expressions and correspondences.
//!
//! ```text
//! document   := header? expr
//! header     := "arity" INT ":" | "corr" INT INT ":"
//! expr       := term (("+" | "-") term)*
//! term       := unary ("*" unary)*
//! unary      := "-" unary | power
//! power      := atom ("^" INT)?
//! atom       := INT ("/" INT)? | generator | "(" expr ")"
//! generator  := "o(" r ")" | "h(" a "," r ")" | "k(" r ")" | "c(" r ")" | "D(" r "," s ")"
//! ```
//!
//! Whitespace and `#` comments are ignored. Without a header the arity is the
//! largest factor index that occurs. [`TautExpr`]'s `Display` output parses
//! back to the same expression.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::corr::Correspondence;
use crate::error::{Error, Result};
use crate::rational::Q;
use crate::ring::{Generator, TautExpr};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let ch = chars[i];
        let (tl, tc) = (line, col);
        if ch == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if ch.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if ch == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token {
                tok: Tok::Int(s.parse().expect("digits")),
                line: tl,
                column: tc,
            });
            continue;
        }
        if ch.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token {
                tok: Tok::Ident(s),
                line: tl,
                column: tc,
            });
            continue;
        }
        if "+-*^/(),:".contains(ch) {
            out.push(Token {
                tok: Tok::Sym(ch),
                line: tl,
                column: tc,
            });
            i += 1;
            col += 1;
            continue;
        }
        return Err(Error::Parse {
            line: tl,
            column: tc,
            message: format!("unexpected character `{ch}`"),
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column: col,
    });
    Ok(out)
}

#[derive(Debug, Clone)]
enum Ast {
    Num(Q),
    Gen(Generator),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Neg(Box<Ast>),
    Pow(Box<Ast>, u32),
}

impl Ast {
    fn max_factor(&self) -> usize {
        match self {
            Ast::Num(_) => 0,
            Ast::Gen(g) => g.max_factor(),
            Ast::Add(a, b) | Ast::Sub(a, b) | Ast::Mul(a, b) => a.max_factor().max(b.max_factor()),
            Ast::Neg(a) | Ast::Pow(a, _) => a.max_factor(),
        }
    }

    fn eval(&self, arity: usize) -> Result<TautExpr> {
        Ok(match self {
            Ast::Num(c) => TautExpr::constant(arity, c.clone()),
            Ast::Gen(g) => TautExpr::generator(arity, *g)?,
            Ast::Add(a, b) => a.eval(arity)?.add(&b.eval(arity)?)?,
            Ast::Sub(a, b) => a.eval(arity)?.sub(&b.eval(arity)?)?,
            Ast::Mul(a, b) => a.eval(arity)?.mul_raw(&b.eval(arity)?)?,
            Ast::Neg(a) => a.eval(arity)?.neg(),
            Ast::Pow(a, k) => a.eval(arity)?.pow_raw(*k),
        })
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, t: &Token, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            line: t.line,
            column: t.column,
            message: message.into(),
        })
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        let t = self.next();
        if t.tok == Tok::Sym(c) {
            Ok(())
        } else {
            self.error(&t, format!("expected `{c}`"))
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        let t = self.next();
        match t.tok {
            Tok::Int(n) => Ok(n),
            _ => self.error(&t, "expected an integer"),
        }
    }

    fn index(&mut self) -> Result<usize> {
        let t = self.peek().clone();
        let n = self.int()?;
        match usize::try_from(n) {
            Ok(v) if v > 0 => Ok(v),
            _ => self.error(&t, "indices are positive integers"),
        }
    }

    fn header(&mut self) -> Result<Option<(usize, Option<usize>)>> {
        let t = self.peek().clone();
        let Tok::Ident(word) = &t.tok else {
            return Ok(None);
        };
        match word.as_str() {
            "arity" => {
                self.next();
                let n = self.usize_any()?;
                self.expect_sym(':')?;
                Ok(Some((n, None)))
            }
            "corr" => {
                self.next();
                let m = self.usize_any()?;
                let n = self.usize_any()?;
                self.expect_sym(':')?;
                Ok(Some((m, Some(n))))
            }
            _ => Ok(None),
        }
    }

    fn usize_any(&mut self) -> Result<usize> {
        let t = self.peek().clone();
        let n = self.int()?;
        usize::try_from(n).or_else(|_| self.error(&t, "integer too large"))
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Sym('+') => {
                    self.next();
                    lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Sym('-') => {
                    self.next();
                    lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.unary()?;
        while self.peek().tok == Tok::Sym('*') {
            self.next();
            lhs = Ast::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Ast> {
        if self.peek().tok == Tok::Sym('-') {
            self.next();
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if self.peek().tok == Tok::Sym('^') {
            self.next();
            let t = self.peek().clone();
            let k = self.int()?;
            let k = u32::try_from(k).or_else(|_| self.error(&t, "exponent out of range"))?;
            return Ok(Ast::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Ast> {
        let t = self.next();
        match &t.tok {
            Tok::Int(n) => {
                let mut value = Q::from_integer(n.clone());
                if self.peek().tok == Tok::Sym('/') {
                    self.next();
                    let dt = self.peek().clone();
                    let d = self.int()?;
                    if d.is_zero() {
                        return self.error(&dt, "zero denominator");
                    }
                    value = Q::new(n.clone(), d);
                }
                Ok(Ast::Num(value))
            }
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                let g = match name.as_str() {
                    "o" | "k" | "c" => {
                        self.expect_sym('(')?;
                        let r = self.index()?;
                        self.expect_sym(')')?;
                        match name.as_str() {
                            "o" => Generator::Point(r),
                            "k" => Generator::Canonical(r),
                            _ => Generator::SecondChern(r),
                        }
                    }
                    "h" | "D" => {
                        self.expect_sym('(')?;
                        let a = self.index()?;
                        self.expect_sym(',')?;
                        let bt = self.peek().clone();
                        let b = self.index()?;
                        self.expect_sym(')')?;
                        if name == "h" {
                            Generator::Divisor(a, b)
                        } else if a == b {
                            return self.error(&bt, "diagonal needs two distinct factors");
                        } else {
                            Generator::diagonal(a, b)?
                        }
                    }
                    other => return self.error(&t, format!("unknown generator `{other}`")),
                };
                Ok(Ast::Gen(g))
            }
            Tok::End => self.error(&t, "unexpected end of input"),
            _ => self.error(&t, "expected a number, generator or `(`"),
        }
    }

    fn finish(&mut self) -> Result<()> {
        let t = self.peek().clone();
        if t.tok == Tok::End {
            Ok(())
        } else {
            self.error(&t, "unexpected trailing input")
        }
    }
}

/// A parsed document: a plain expression or a correspondence.
#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Expr(TautExpr),
    Corr(Correspondence),
}

pub fn parse_document(text: &str) -> Result<Document> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let header = p.header()?;
    let ast = p.expr()?;
    p.finish()?;
    let needed = ast.max_factor();
    match header {
        Some((m, Some(n))) => {
            let class = ast.eval(m + n)?;
            Ok(Document::Corr(Correspondence::new(m, n, class)?))
        }
        Some((n, None)) => Ok(Document::Expr(ast.eval(n)?)),
        None => Ok(Document::Expr(ast.eval(needed)?)),
    }
}

/// Parses an expression; the arity is taken from an `arity N:` header, then
/// from `arity`, then inferred.
pub fn parse_expr(text: &str, arity: Option<usize>) -> Result<TautExpr> {
    match parse_document(text)? {
        Document::Expr(e) => match arity {
            Some(n) if n != e.arity() => {
                let id: Vec<usize> = (1..=e.arity()).collect();
                e.pullback(&id, n)
            }
            _ => Ok(e),
        },
        Document::Corr(_) => Err(Error::Parse {
            line: 1,
            column: 1,
            message: "expected an expression, found a correspondence".into(),
        }),
    }
}

pub fn parse_correspondence(text: &str) -> Result<Correspondence> {
    match parse_document(text)? {
        Document::Corr(c) => Ok(c),
        Document::Expr(_) => Err(Error::Parse {
            line: 1,
            column: 1,
            message: "expected a `corr M N :` header".into(),
        }),
    }
}

pub fn format_correspondence(c: &Correspondence) -> String {
    format!("corr {} {} : {}", c.source(), c.target(), c.class())
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_frac};

    #[test]
    fn parses_generators_and_arithmetic() {
        let e = parse_expr("D(1,2)*o(1) + 1/2 * h(1,3)", None).unwrap();
        assert_eq!(e.arity(), 3);
        assert_eq!(e.len(), 2);
        let f = parse_expr("(o(1) - o(2))^2", None).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(parse_expr("3", None).unwrap(), TautExpr::constant(0, q(3)));
        assert_eq!(parse_expr("-2/4", None).unwrap(), TautExpr::constant(0, q_frac(-1, 2)));
    }

    #[test]
    fn diagonal_order_is_normalised() {
        assert_eq!(
            parse_expr("D(2,1)", None).unwrap(),
            parse_expr("D(1,2)", None).unwrap()
        );
    }

    #[test]
    fn headers() {
        let e = parse_expr("arity 4: o(1)", None).unwrap();
        assert_eq!(e.arity(), 4);
        let c = parse_correspondence("corr 1 1 : D(1,2) - o(1) - o(2)").unwrap();
        assert_eq!((c.source(), c.target()), (1, 1));
        assert!(parse_correspondence("corr 1 1 : o(3)").is_err());
    }

    #[test]
    fn errors_carry_positions() {
        match parse_expr("o(1) +\n  D(1,1)", None) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 7)),
            other => panic!("unexpected {other:?}"),
        }
        match parse_expr("o(1) $ o(2)", None) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 6)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_expr("x(1)", None), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr("o(1", None), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr("1/0", None), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr("o(0)", None), Err(Error::Parse { .. })));
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "0",
            "1",
            "-o(1)",
            "24*o(1)*o(2) - 1/2*D(1,3)*h(1,2)",
            "D(1,2)^2 + k(1)*c(2) - 7/3",
        ] {
            let e = parse_expr(s, None).unwrap();
            let back = parse_expr(&e.to_string(), Some(e.arity())).unwrap();
            assert_eq!(e, back, "{s}");
        }
    }
}
