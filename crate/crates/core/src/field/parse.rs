//! Scalar expressions: `+ - * / ^`, parentheses, integers, field variables,
//! and implicit multiplication (`2u^2v`).

use num_bigint::BigInt;

use super::fp_poly::{Poly2, RatFn};
use super::{decode, Field, Repr, Scalar};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push(Tok::Num(digits.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character '{c}' in \"{s}\"")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    field: &'a Field,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at token {} in \"{}\"", self.pos, self.src))
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        loop {
            match self.peek().cloned() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = acc.div(&rhs).map_err(|_| self.err("division by zero"))?;
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('(')) => {
                    acc = acc * self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar> {
        if let Some(Tok::Op('-')) = self.peek() {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let neg = matches!(self.peek(), Some(Tok::Op('-')));
            if neg {
                self.pos += 1;
            }
            let e = match self.peek().cloned() {
                Some(Tok::Num(n)) => u64::try_from(n).map_err(|_| self.err("exponent too large"))?,
                _ => return Err(self.err("expected exponent")),
            };
            self.pos += 1;
            let r = base.pow(e);
            return if neg { r.inv().map_err(|_| self.err("division by zero")) } else { Ok(r) };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Scalar> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(self.field.from_bigint(&n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.ident(&name)
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(&Tok::Op(')')) {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }

    fn ident(&self, name: &str) -> Result<Scalar> {
        let names = self.var_names();
        if let Some(i) = names.iter().position(|n| n == name) {
            return self.var(i);
        }
        // juxtaposed single-letter variables such as "uv"
        let mut acc = self.field.one();
        for ch in name.chars() {
            let i = names
                .iter()
                .position(|n| n.chars().eq(std::iter::once(ch)))
                .ok_or_else(|| self.err(&format!("unknown variable '{name}'")))?;
            acc = acc * self.var(i)?;
        }
        Ok(acc)
    }

    fn var_names(&self) -> Vec<String> {
        if let Some((g, _, m)) = self.field.finite_gen_name() {
            return if m > 1 { vec![g.to_string()] } else { vec![] };
        }
        self.field.ratfunc_data().map(|(_, v, _)| v.to_vec()).unwrap_or_default()
    }

    fn var(&self, i: usize) -> Result<Scalar> {
        if self.field.is_finite() {
            self.field.generator()
        } else {
            self.field.variable(i)
        }
    }
}

pub(super) fn parse_scalar(field: &Field, s: &str) -> Result<Scalar> {
    if let Some((p, vars, power)) = field.ratfunc_data() {
        if power > 1 {
            let lifted = Field::new(super::FieldDesc::Ratfunc { p, vars: vars.to_vec(), power: 1 })?;
            let a = parse_scalar(&lifted, s)?;
            let Repr::Fun(f) = a.repr() else { unreachable!() };
            let down = |poly: &Poly2| -> Result<Poly2> {
                let mut terms = Vec::new();
                for (c, i, j) in poly.terms() {
                    if i % power as usize != 0 || j % power as usize != 0 {
                        return Err(Error::Parse(format!("\"{s}\" does not lie in the subfield of {power}-th powers")));
                    }
                    terms.push((c, i / power as usize, j / power as usize));
                }
                Ok(Poly2::from_terms(&terms, p))
            };
            let r = RatFn::new(down(&f.num)?, down(&f.den)?, p).ok_or(Error::DivisionByZero)?;
            return Ok(Scalar::from_parts(field, Repr::Fun(r)));
        }
    }
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut parser = Parser { toks, pos: 0, field, src: s };
    let v = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return Err(parser.err("trailing input"));
    }
    Ok(v)
}

/// Sum of terms `c * x1^e1 * x2^e2`, highest total degree first.
pub(crate) fn format_poly(mut terms: Vec<(u32, Vec<usize>)>, names: &[String]) -> String {
    terms.retain(|(c, _)| *c != 0);
    if terms.is_empty() {
        return "0".into();
    }
    terms.sort_by(|a, b| {
        let da: usize = a.1.iter().sum();
        let db: usize = b.1.iter().sum();
        db.cmp(&da).then_with(|| b.1.cmp(&a.1))
    });
    let parts: Vec<String> = terms
        .iter()
        .map(|(c, exps)| {
            let mono: Vec<String> = exps
                .iter()
                .zip(names)
                .filter(|(e, _)| **e > 0)
                .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
                .collect();
            match (mono.is_empty(), *c) {
                (true, c) => c.to_string(),
                (false, 1) => mono.join("*"),
                (false, c) => format!("{c}*{}", mono.join("*")),
            }
        })
        .collect();
    parts.join("+")
}

fn format_poly2(poly: &Poly2, names: &[String], power: usize) -> String {
    let terms = poly.terms().into_iter().map(|(c, i, j)| (c, vec![i * power, j * power])).collect();
    format_poly(terms, names)
}

fn wrap(s: String) -> String {
    if s.contains('+') {
        format!("({s})")
    } else {
        s
    }
}

pub(super) fn format_scalar(a: &Scalar) -> String {
    match a.repr() {
        Repr::Fin(code) => {
            let (g, p, m) = a.field().finite_gen_name().expect("finite field");
            if m == 1 {
                return code.to_string();
            }
            let digits = decode(*code, p, m);
            let terms = digits.iter().enumerate().map(|(i, c)| (*c, vec![i])).collect();
            format_poly(terms, &[g.to_string()])
        }
        Repr::Rat(r) => {
            if r.denom() == &BigInt::from(1) {
                r.numer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        }
        Repr::Fun(f) => {
            let (_, vars, power) = a.field().ratfunc_data().expect("function field");
            let mut names = vars.to_vec();
            names.resize(2, String::new());
            let num = format_poly2(&f.num, &names, power as usize);
            if f.den.is_one() {
                return num;
            }
            let den = format_poly2(&f.den, &names, power as usize);
            let num = if f.num.terms().len() > 1 { wrap(num) } else { num };
            let den = if f.den.terms().len() > 1 || den.contains('*') { format!("({den})") } else { den };
            format!("{num}/{den}")
        }
    }
}
