//! Text form of field elements and polynomials.
//!
//! Canonical output lists terms in ascending degree joined by `" + "`:
//! `c`, `x`, `c x`, `x^k`, `c x^k`. Coefficients of an extension field that
//! leave the prime subfield are written as bracketed `t`-polynomials without
//! spaces, e.g. `[1+2t^2] x^3`. The parser also accepts `-`, `*`, arbitrary
//! integers (reduced mod `p`), repeated degrees and any whitespace.

use super::field::{Field, Fq};
use super::poly::DensePoly;
use crate::error::{Error, Result};

pub fn format_elem(field: &Field, a: Fq) -> String {
    if let Some(c) = field.as_prime_int(a) {
        return c.to_string();
    }
    let digits = field.digits(a);
    let mut terms = Vec::new();
    for (i, &d) in digits.iter().enumerate() {
        if d == 0 {
            continue;
        }
        let t = match (i, d) {
            (0, _) => d.to_string(),
            (1, 1) => "t".to_string(),
            (1, _) => format!("{d}t"),
            (_, 1) => format!("t^{i}"),
            _ => format!("{d}t^{i}"),
        };
        terms.push(t);
    }
    format!("[{}]", terms.join("+"))
}

pub fn format_poly(f: &DensePoly, var: &str) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let field = f.field();
    let mut terms = Vec::new();
    for (i, &c) in f.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let term = if i == 0 {
            format_elem(field, c)
        } else if c == Fq::ONE {
            mono
        } else {
            format!("{} {mono}", format_elem(field, c))
        };
        terms.push(term);
    }
    terms.join(" + ")
}

struct Lexer<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { chars: src.char_indices().collect(), pos: 0, src }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.src.len(), |&(o, _)| o)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.offset(), msg: msg.into() })
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        let mut v: u64 = 0;
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            let Some(d) = c.to_digit(10) else { break };
            v = match v.checked_mul(10).and_then(|v| v.checked_add(d as u64)) {
                Some(v) => v,
                None => return self.err("integer too large"),
            };
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected a number");
        }
        Ok(v)
    }

    fn eat_var(&mut self, var: &str) -> bool {
        self.skip_ws();
        let rest: String = self.chars[self.pos..].iter().map(|&(_, c)| c).collect();
        if rest.starts_with(var) {
            self.pos += var.chars().count();
            true
        } else {
            false
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

/// Parses a field element: an integer, `t`-polynomial (optionally bracketed),
/// possibly with a leading sign.
pub fn parse_elem(field: &Field, s: &str) -> Result<Fq> {
    let mut lx = Lexer::new(s);
    let v = elem_expr(field, &mut lx)?;
    if !lx.at_end() {
        return lx.err("unexpected trailing input");
    }
    Ok(v)
}

/// A signed sum of `t`-terms.
fn elem_expr(field: &Field, lx: &mut Lexer) -> Result<Fq> {
    let mut acc = Fq::ZERO;
    let mut first = true;
    loop {
        let mut neg = false;
        match lx.peek() {
            Some('+') if !first => lx.bump(),
            Some('-') => {
                lx.bump();
                neg = true;
            }
            _ if first => {}
            _ => break,
        }
        let term = elem_term(field, lx)?;
        acc = if neg { field.sub(acc, term) } else { field.add(acc, term) };
        first = false;
        if !matches!(lx.peek(), Some('+') | Some('-')) {
            break;
        }
    }
    Ok(acc)
}

fn elem_term(field: &Field, lx: &mut Lexer) -> Result<Fq> {
    let mut coef = Fq::ONE;
    let mut saw = false;
    if let Some(c) = lx.peek() {
        if c.is_ascii_digit() {
            let n = lx.number()?;
            coef = field.from_int((n % field.p() as u64) as i64);
            saw = true;
            if lx.peek() == Some('*') {
                lx.bump();
            }
        } else if c == '[' {
            lx.bump();
            coef = elem_expr(field, lx)?;
            if lx.peek() != Some(']') {
                return lx.err("expected ']'");
            }
            lx.bump();
            return Ok(coef);
        }
    }
    if lx.peek() == Some('t') {
        let Some(gen) = field.generator() else {
            return lx.err("'t' used over a prime field");
        };
        lx.bump();
        let mut e = 1;
        if lx.peek() == Some('^') {
            lx.bump();
            e = lx.number()?;
        }
        return Ok(field.mul(coef, field.pow(gen, e)));
    }
    if !saw {
        return lx.err("expected a coefficient");
    }
    Ok(coef)
}

/// Parses a polynomial in the variable `var` over `field`.
pub fn parse_poly(field: &Field, s: &str, var: &str) -> Result<DensePoly> {
    let mut lx = Lexer::new(s);
    let mut coeffs: Vec<Fq> = Vec::new();
    let mut first = true;
    if lx.at_end() {
        return lx.err("empty polynomial");
    }
    while !lx.at_end() {
        let mut neg = false;
        match lx.peek() {
            Some('+') if !first => lx.bump(),
            Some('-') => {
                lx.bump();
                neg = true;
            }
            _ if first => {}
            _ => return lx.err("expected '+' or '-' between terms"),
        }
        first = false;
        let (c, k) = poly_term(field, &mut lx, var)?;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, Fq::ZERO);
        }
        coeffs[k] = if neg { field.sub(coeffs[k], c) } else { field.add(coeffs[k], c) };
    }
    Ok(DensePoly::new(field, coeffs))
}

fn poly_term(field: &Field, lx: &mut Lexer, var: &str) -> Result<(Fq, usize)> {
    let mut coef = Fq::ONE;
    let mut saw_coef = false;
    match lx.peek() {
        Some(c) if (c.is_ascii_digit() || c == 't') && var != "t" && field.generator().is_some() => {
            coef = elem_term(field, lx)?;
            saw_coef = true;
        }
        Some(c) if c.is_ascii_digit() => {
            let n = lx.number()?;
            coef = field.from_int((n % field.p() as u64) as i64);
            saw_coef = true;
        }
        Some('[') => {
            lx.bump();
            coef = elem_expr(field, lx)?;
            if lx.peek() != Some(']') {
                return lx.err("expected ']'");
            }
            lx.bump();
            saw_coef = true;
        }
        _ => {}
    }
    if saw_coef && lx.peek() == Some('*') {
        lx.bump();
    }
    if lx.eat_var(var) {
        let mut e = 1usize;
        if lx.peek() == Some('^') {
            lx.bump();
            e = lx.number()? as usize;
            if e > 1 << 20 {
                return lx.err("exponent too large");
            }
        }
        Ok((coef, e))
    } else if saw_coef {
        Ok((coef, 0))
    } else {
        lx.err(format!("expected a coefficient or '{var}'"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FieldSpec;

    #[test]
    fn canonical_strings() {
        let f = Field::prime(5);
        let g = DensePoly::from_ints(&f, &[0, 1, 3, 0, 1]);
        assert_eq!(format_poly(&g, "x"), "x + 3 x^2 + x^4");
        assert_eq!(format_poly(&DensePoly::zero(&f), "x"), "0");
        assert_eq!(format_poly(&DensePoly::from_ints(&f, &[-1, 1]), "x"), "4 + x");
    }

    #[test]
    fn lenient_input() {
        let f = Field::prime(5);
        let g = parse_poly(&f, "x^2 - 1 + 2*x + x^2", "x").unwrap();
        assert_eq!(g, DensePoly::from_ints(&f, &[-1, 2, 2]));
        assert!(parse_poly(&f, "x^", "x").is_err());
        assert!(parse_poly(&f, "3 y", "x").is_err());
        match parse_poly(&f, "1 + + x", "x") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn extension_round_trip() {
        let f = Field::new(&FieldSpec::extension(3, vec![1, 0, 1]).unwrap()).unwrap();
        let s = "[1+2t] + t x + x^2 + [2t] x^5";
        let g = parse_poly(&f, s, "x").unwrap();
        let out = format_poly(&g, "x");
        assert_eq!(out, "[1+2t] + [t] x + x^2 + [2t] x^5");
        assert_eq!(format_poly(&parse_poly(&f, &out, "x").unwrap(), "x"), out);
        assert_eq!(parse_elem(&f, "t^2").unwrap(), f.from_int(-1));
    }
}
