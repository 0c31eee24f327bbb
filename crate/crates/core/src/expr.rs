//! Text expressions over `Z_n`: `z[i,j]`, `t[i]`, Cartan atoms `h[i]` and
//! `theta[i]`, rationals, `*` (the product `∘`), `+`, `-`, `/` by a
//! coefficient, `^` by a non-negative integer, and parentheses.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::coeff::CoeffFrac;
use crate::error::{Error, Result};
use crate::lattice::GeneratorId;
use crate::zalg::{Algebra, Backend, ZElement};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut line, mut col) = (1, 1);
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            k += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            k += 1;
            continue;
        }
        let start = k;
        if c.is_ascii_digit() {
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let s: String = chars[start..k].iter().collect();
            out.push(Spanned { tok: Tok::Num(s.parse().expect("digits")), line: l0, col: c0 });
        } else if c.is_ascii_alphabetic() || c == '_' {
            while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push(Spanned { tok: Tok::Ident(chars[start..k].iter().collect()), line: l0, col: c0 });
        } else if "+-*/^()[],".contains(c) {
            k += 1;
            out.push(Spanned { tok: Tok::Sym(c), line: l0, col: c0 });
        } else if c == '∘' {
            k += 1;
            out.push(Spanned { tok: Tok::Sym('*'), line: l0, col: c0 });
        } else {
            return Err(Error::Parse { line: l0, col: c0, msg: format!("unexpected character `{c}`") });
        }
        col += k - start;
    }
    Ok(out)
}

/// Parsed syntax tree.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigInt),
    Gen(GeneratorId),
    /// `h_k`
    H(usize),
    /// `θ_k`
    Theta(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser<'a> {
    toks: &'a [Spanned],
    pos: usize,
    n: usize,
    end: (usize, usize),
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |s| (s.line, s.col))
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (line, col) = self.here();
        Err(Error::Parse { line, col, msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut acc = if self.eat('-') { Expr::Neg(Box::new(self.product()?)) } else { self.product()? };
        loop {
            if self.eat('+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.product()?));
            } else if self.eat('-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.product()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
            } else if self.eat('/') {
                acc = Expr::Div(Box::new(acc), Box::new(self.unary()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(k)) => {
                    let Some(k) = k.to_u32() else {
                        return self.err("exponent too large");
                    };
                    self.pos += 1;
                    return Ok(Expr::Pow(Box::new(base), k));
                }
                _ => return self.err("expected a non-negative integer exponent"),
            }
        }
        Ok(base)
    }

    fn index(&mut self) -> Result<usize> {
        match self.peek().cloned() {
            Some(Tok::Num(k)) => {
                let v = k.to_usize().filter(|&v| v >= 1 && v <= self.n);
                match v {
                    Some(v) => {
                        self.pos += 1;
                        Ok(v)
                    }
                    None => self.err(format!("index {k} out of range for n = {}", self.n)),
                }
            }
            _ => self.err("expected an index"),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(Expr::Num(v))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                if !matches!(name.as_str(), "z" | "t" | "h" | "theta") {
                    return self.err(format!("unknown symbol `{name}`"));
                }
                self.pos += 1;
                self.expect('[')?;
                let e = match name.as_str() {
                    "z" => {
                        let i = self.index()?;
                        self.expect(',')?;
                        let j = self.index()?;
                        Expr::Gen(GeneratorId::new(i, j))
                    }
                    "t" => Expr::Gen(GeneratorId::t(self.index()?)),
                    "h" => Expr::H(self.index()?),
                    _ => Expr::Theta(self.index()?),
                };
                self.expect(']')?;
                Ok(e)
            }
            Some(t) => self.err(format!("unexpected `{}`", show_tok(&t))),
            None => self.err("unexpected end of input"),
        }
    }
}

fn show_tok(t: &Tok) -> String {
    match t {
        Tok::Num(v) => v.to_string(),
        Tok::Ident(s) => s.clone(),
        Tok::Sym(c) => c.to_string(),
    }
}

/// Parse an expression for `Z_n`.
pub fn parse_expression(src: &str, n: usize) -> Result<Expr> {
    let toks = lex(src)?;
    let lines: Vec<&str> = src.split('\n').collect();
    let end = (lines.len(), lines.last().map_or(0, |l| l.chars().count()) + 1);
    let mut p = Parser { toks: &toks, pos: 0, n, end };
    let e = p.sum()?;
    if p.pos != toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// A value during evaluation: a coefficient kept as a product of factors so
/// that division by products of linear forms stays possible, or an element.
enum Val {
    Coeff(Vec<CoeffFrac>),
    Elem(ZElement),
}

impl Val {
    fn coeff(&self, n: usize) -> Option<CoeffFrac> {
        match self {
            Val::Coeff(fs) => Some(fs.iter().fold(CoeffFrac::one(n), |a, b| a.mul(b))),
            Val::Elem(_) => None,
        }
    }

    fn into_elem(self, n: usize) -> ZElement {
        match self {
            Val::Coeff(_) => ZElement::scalar(self.coeff(n).unwrap()),
            Val::Elem(x) => x,
        }
    }
}

fn eval_val(e: &Expr, alg: &Algebra, backend: Backend) -> Result<Val> {
    let n = alg.n();
    Ok(match e {
        Expr::Num(v) => Val::Coeff(vec![CoeffFrac::from_rational(n, BigRational::from_integer(v.clone()))]),
        Expr::H(k) => Val::Coeff(vec![CoeffFrac::h(n, *k)]),
        Expr::Theta(k) => Val::Coeff(vec![CoeffFrac::theta(n, *k)]),
        Expr::Gen(g) => Val::Elem(alg.generator(*g)),
        Expr::Neg(a) => match eval_val(a, alg, backend)? {
            Val::Coeff(mut fs) => {
                fs[0] = fs[0].neg();
                Val::Coeff(fs)
            }
            Val::Elem(x) => Val::Elem(x.neg()),
        },
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let (x, y) = (eval_val(a, alg, backend)?, eval_val(b, alg, backend)?);
            let sub = matches!(e, Expr::Sub(..));
            match (x.coeff(n), y.coeff(n)) {
                (Some(p), Some(q)) => Val::Coeff(vec![if sub { p.sub(&q) } else { p.add(&q) }]),
                _ => {
                    let (x, y) = (x.into_elem(n), y.into_elem(n));
                    Val::Elem(if sub { x.sub(&y) } else { x.add(&y) })
                }
            }
        }
        Expr::Mul(a, b) => match (eval_val(a, alg, backend)?, eval_val(b, alg, backend)?) {
            (Val::Coeff(mut p), Val::Coeff(q)) => {
                p.extend(q);
                Val::Coeff(p)
            }
            (Val::Elem(x), y @ Val::Coeff(_)) => Val::Elem(x.mul_coeff_right(&y.coeff(n).unwrap())),
            (x, y) => Val::Elem(alg.mul(&x.into_elem(n), &y.into_elem(n), backend)?),
        },
        Expr::Div(a, b) => {
            let den = match eval_val(b, alg, backend)? {
                Val::Coeff(fs) => fs,
                Val::Elem(_) => return Err(Error::InvalidArgument("division by an element with generators".into())),
            };
            let mut inv = Vec::with_capacity(den.len());
            for f in &den {
                inv.push(f.inv().map_err(|e| match e {
                    Error::DivisionByZero => e,
                    _ => Error::InvalidArgument(format!("cannot divide by `{f}`: not a product of linear factors")),
                })?);
            }
            match eval_val(a, alg, backend)? {
                Val::Coeff(mut p) => {
                    p.extend(inv);
                    Val::Coeff(p)
                }
                Val::Elem(x) => Val::Elem(x.mul_coeff_right(&inv.iter().fold(CoeffFrac::one(n), |a, b| a.mul(b)))),
            }
        }
        Expr::Pow(a, k) => match eval_val(a, alg, backend)? {
            Val::Coeff(fs) => {
                let mut out = vec![CoeffFrac::one(n)];
                for _ in 0..*k {
                    out.extend(fs.iter().cloned());
                }
                Val::Coeff(out)
            }
            Val::Elem(x) => {
                let mut acc = ZElement::one(n);
                for _ in 0..*k {
                    acc = alg.mul(&acc, &x, backend)?;
                }
                Val::Elem(acc)
            }
        },
    })
}

/// Evaluate to an element in the ordered basis of `alg`.
pub fn evaluate(e: &Expr, alg: &Algebra, backend: Backend) -> Result<ZElement> {
    let x = eval_val(e, alg, backend)?.into_elem(alg.n());
    alg.normal_order(&x, backend)
}

/// Parse and evaluate in one step.
pub fn parse_element(src: &str, alg: &Algebra, backend: Backend) -> Result<ZElement> {
    evaluate(&parse_expression(src, alg.n())?, alg, backend)
}

/// Parse a coefficient-only expression.
pub fn parse_coeff(src: &str, n: usize) -> Result<CoeffFrac> {
    let e = parse_expression(src, n)?;
    let alg = Algebra::default_for(n.max(1));
    match eval_val(&e, &alg, Backend::Rewrite)? {
        v @ Val::Coeff(_) => Ok(v.coeff(n).unwrap()),
        Val::Elem(x) if x.degree() == 0 => Ok(if x.is_zero() { CoeffFrac::zero(n) } else { x.constant_term() }),
        Val::Elem(_) => Err(Error::InvalidArgument("coefficient expression contains generators".into())),
    }
}
