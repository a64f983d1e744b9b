//! Exact parsing of scalars, rational functions and polynomial forms.
//!
//! Grammar: sums and differences of products and quotients of powers of
//! atoms; atoms are decimal numbers, `i`, variable names and parenthesized
//! expressions. A number directly followed by a name or `(` multiplies it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{GaussRat, MPoly, RatFunc, UPoly};
use crate::error::ParseError;

#[derive(Clone, Debug)]
enum Ast {
    Num(BigRational),
    I,
    Var(usize),
    Neg(Box<Ast>),
    Bin(char, Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, i64),
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
    vars: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::at(self.text, self.pos, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Ast::Bin(c as char, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(c @ (b'*' | b'/')) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    lhs = Ast::Bin(c as char, Box::new(lhs), Box::new(rhs));
                }
                Some(c) if c == b'(' || c.is_ascii_alphabetic() => {
                    let rhs = self.unary()?;
                    lhs = Ast::Bin('*', Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Ast, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Ast::Neg(Box::new(self.unary()?)))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Ast, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            if self.bytes.get(self.pos) == Some(&b'-') {
                self.pos += 1;
            }
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let e: i64 = self.text[start..self.pos].parse().map_err(|_| self.err("expected integer exponent"))?;
            return Ok(Ast::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Ast, ParseError> {
        match self.peek() {
            None => Err(self.err("unexpected end of expression")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = &self.text[start..self.pos];
                if name == "i" && !self.vars.contains(&"i") {
                    return Ok(Ast::I);
                }
                match self.vars.iter().position(|v| *v == name) {
                    Some(k) => Ok(Ast::Var(k)),
                    None => {
                        self.pos = start;
                        Err(self.err(format!("unknown symbol '{}'", name)))
                    }
                }
            }
            Some(c) => Err(self.err(format!("unexpected character '{}'", c as char))),
        }
    }

    fn number(&mut self) -> Result<Ast, ParseError> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let int_part = &self.text[start..self.pos];
        let mut value = if int_part.is_empty() {
            BigRational::zero()
        } else {
            BigRational::from_integer(int_part.parse::<BigInt>().map_err(|_| self.err("bad integer"))?)
        };
        if self.bytes.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            let fs = self.pos;
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let frac = &self.text[fs..self.pos];
            if frac.is_empty() && int_part.is_empty() {
                return Err(self.err("malformed number"));
            }
            if !frac.is_empty() {
                let n: BigInt = frac.parse().map_err(|_| self.err("bad decimal"))?;
                let d = num_traits::pow(BigInt::from(10), frac.len());
                value += BigRational::new(n, d);
            }
        }
        Ok(Ast::Num(value))
    }
}

fn parse_ast(text: &str, vars: &[&str]) -> Result<Ast, ParseError> {
    let mut p = Parser { text, bytes: text.as_bytes(), pos: 0, vars };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

trait Eval: Sized + Clone {
    fn num(w: usize, q: &BigRational) -> Self;
    fn i(w: usize) -> Self;
    fn var(w: usize, k: usize) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Option<Self>;
}

/// Evaluates with `w` the number of variables of the target ring.
fn eval<T: Eval>(a: &Ast, text: &str, w: usize) -> Result<T, ParseError> {
    Ok(match a {
        Ast::Num(q) => T::num(w, q),
        Ast::I => T::i(w),
        Ast::Var(k) => T::var(w, *k),
        Ast::Neg(x) => T::num(w, &BigRational::zero()).sub(&eval::<T>(x, text, w)?),
        Ast::Bin(op, l, r) => {
            let (l, r) = (eval::<T>(l, text, w)?, eval::<T>(r, text, w)?);
            match op {
                '+' => l.add(&r),
                '-' => l.sub(&r),
                '*' => l.mul(&r),
                _ => l.div(&r).ok_or_else(|| ParseError::at(text, 0, "division by zero or by a non-constant"))?,
            }
        }
        Ast::Pow(b, e) => {
            let b = eval::<T>(b, text, w)?;
            let one = T::num(w, &BigRational::one());
            let mut acc = one.clone();
            for _ in 0..e.unsigned_abs() {
                acc = acc.mul(&b);
            }
            if *e < 0 {
                one.div(&acc).ok_or_else(|| ParseError::at(text, 0, "negative power not allowed here"))?
            } else {
                acc
            }
        }
    })
}

impl Eval for GaussRat {
    fn num(_: usize, q: &BigRational) -> Self {
        GaussRat::from_rat(q.clone())
    }
    fn i(_: usize) -> Self {
        GaussRat::i()
    }
    fn var(_: usize, _: usize) -> Self {
        unreachable!("scalars have no variables")
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self * &i)
    }
}

impl Eval for RatFunc {
    fn num(_: usize, q: &BigRational) -> Self {
        RatFunc::constant(GaussRat::from_rat(q.clone()))
    }
    fn i(_: usize) -> Self {
        RatFunc::constant(GaussRat::i())
    }
    fn var(_: usize, _: usize) -> Self {
        RatFunc::var()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Option<Self> {
        (!o.is_zero()).then(|| self / o)
    }
}

impl Eval for MPoly {
    fn num(w: usize, q: &BigRational) -> Self {
        MPoly::constant(w, GaussRat::from_rat(q.clone()))
    }
    fn i(w: usize) -> Self {
        MPoly::constant(w, GaussRat::i())
    }
    fn var(w: usize, k: usize) -> Self {
        MPoly::var(w, k)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Option<Self> {
        if !o.is_constant() {
            return None;
        }
        let c = o.coeff(&vec![0; o.nvars()]);
        c.inv().map(|i| self.scale(&i))
    }
}

pub fn parse_scalar(text: &str) -> Result<GaussRat, ParseError> {
    let ast = parse_ast(text, &[])?;
    eval::<GaussRat>(&ast, text, 0)
}

pub fn parse_rational_q(text: &str) -> Result<BigRational, ParseError> {
    let g = parse_scalar(text)?;
    if !g.is_real() {
        return Err(ParseError::at(text, 0, "expected a real rational number"));
    }
    Ok(g.re().clone())
}

/// Rational function in the variable `z`.
pub fn parse_ratfunc(text: &str) -> Result<RatFunc, ParseError> {
    let ast = parse_ast(text, &["z"])?;
    eval::<RatFunc>(&ast, text, 1)
}

/// Polynomial in the named variables (division only by nonzero constants).
pub fn parse_poly(text: &str, vars: &[&str]) -> Result<MPoly, ParseError> {
    let ast = parse_ast(text, vars)?;
    eval::<MPoly>(&ast, text, vars.len())
}

pub fn parse_upoly(text: &str, var: &str) -> Result<UPoly, ParseError> {
    let p = parse_poly(text, &[var])?;
    Ok(p.to_upoly(0).expect("single variable"))
}
