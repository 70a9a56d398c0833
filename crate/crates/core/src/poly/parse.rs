//! Text form of polynomials.
//!
//! ```text
//! expr    := ['-'] term (('+'|'-') term)*
//! term    := coeff ('*' powprod)? | powprod
//! coeff   := integer | integer '/' integer
//! powprod := var ('^' nat)? ('*' var ('^' nat)?)*
//! var     := 'x' | 'y' | 'z' | 'w' | 'x' nat
//! ```
//!
//! Whitespace is ignored. Letter names are available when `nvars <= 4`;
//! `x1 .. xn` always work.

use std::str::FromStr;

use num_bigint::BigInt;

use super::{Monomial, Poly, PolyError};
use crate::field::FieldSpec;

const LETTERS: [char; 4] = ['x', 'y', 'z', 'w'];

/// Printed name of variable `i` in a ring with `nvars` variables.
pub fn variable_name(i: usize, nvars: usize) -> String {
    if nvars <= 4 {
        LETTERS[i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    at: usize,
    nvars: usize,
    field: FieldSpec,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.src.len(), |&(p, _)| p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.at;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.at += 1;
        }
        (self.at > start).then(|| self.chars[start..self.at].iter().map(|&(_, c)| c).collect())
    }

    fn nat(&mut self) -> Result<u32, PolyError> {
        let pos = self.pos();
        match self.digits() {
            Some(d) => d.parse().map_err(|_| PolyError::Syntax {
                pos,
                msg: "exponent too large".into(),
            }),
            None => self.err("expected a natural number"),
        }
    }

    fn var(&mut self) -> Result<usize, PolyError> {
        let Some(c) = self.peek() else {
            return self.err("expected a variable");
        };
        let Some(letter) = LETTERS.iter().position(|&l| l == c) else {
            return self.err(format!("unexpected {c:?}"));
        };
        self.at += 1;
        let nvars = self.nvars;
        let unknown = |name: String| PolyError::UnknownVariable { name, nvars };
        if c == 'x' {
            if let Some(d) = self.digits() {
                let idx: usize = d.parse().map_err(|_| unknown(format!("x{d}")))?;
                if idx == 0 || idx > self.nvars {
                    return Err(unknown(format!("x{d}")));
                }
                return Ok(idx - 1);
            }
        }
        if self.nvars > 4 || letter >= self.nvars {
            return Err(unknown(c.to_string()));
        }
        Ok(letter)
    }

    fn powprod(&mut self, exps: &mut [u32]) -> Result<(), PolyError> {
        loop {
            let v = self.var()?;
            let e = if self.peek() == Some('^') {
                self.at += 1;
                self.nat()?
            } else {
                1
            };
            exps[v] += e;
            // a '*' continues the product only if a variable follows
            if self.peek() == Some('*')
                && matches!(self.chars.get(self.at + 1), Some(&(_, c)) if LETTERS.contains(&c))
            {
                self.at += 1;
            } else {
                return Ok(());
            }
        }
    }

    fn term(&mut self, negate: bool) -> Result<(crate::field::Scalar, Monomial), PolyError> {
        let mut exps = vec![0u32; self.nvars];
        let mut coeff = self.field.one();
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let num = self.digits().expect("digit");
            let den = if self.peek() == Some('/') {
                self.at += 1;
                match self.digits() {
                    Some(d) => d,
                    None => return self.err("expected a denominator"),
                }
            } else {
                "1".to_string()
            };
            let num = BigInt::from_str(&num).expect("digits");
            let den = BigInt::from_str(&den).expect("digits");
            coeff = self.field.from_ratio(&num, &den)?;
            if self.peek() == Some('*') {
                self.at += 1;
                self.powprod(&mut exps)?;
            }
        } else {
            self.powprod(&mut exps)?;
        }
        if negate {
            coeff = -coeff;
        }
        Ok((coeff, Monomial::new(exps)))
    }
}

/// Parse a polynomial in `nvars` variables over `field`.
pub fn parse_poly(text: &str, nvars: usize, field: FieldSpec) -> Result<Poly, PolyError> {
    let mut p = Parser {
        chars: text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
        at: 0,
        nvars,
        field,
        src: text,
    };
    if p.chars.is_empty() {
        return p.err("empty polynomial");
    }
    let mut terms = Vec::new();
    let mut negate = false;
    if p.peek() == Some('-') {
        p.at += 1;
        negate = true;
    }
    loop {
        terms.push(p.term(negate)?);
        match p.peek() {
            None => break,
            Some('+') => negate = false,
            Some('-') => negate = true,
            Some(c) => return p.err(format!("unexpected {c:?}")),
        }
        p.at += 1;
    }
    Ok(Poly::from_terms(field, nvars, terms))
}

fn powprod_text(m: &Monomial) -> String {
    let n = m.nvars();
    m.exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            let name = variable_name(i, n);
            if e == 1 {
                name
            } else {
                format!("{name}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

pub(super) fn print_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let (neg, mag) = if c.is_negative() {
            (true, -c)
        } else {
            (false, c.clone())
        };
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if m.degree() == 0 {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&powprod_text(m));
        } else {
            out.push_str(&format!("{mag}*{}", powprod_text(m)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rational()
    }

    #[test]
    fn parses_commutator_form() {
        let p = parse_poly("x*z - y^2", 3, q()).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.to_string(), "x*z - y^2");
    }

    #[test]
    fn zero_has_no_terms() {
        assert!(parse_poly("0", 3, q()).unwrap().is_zero());
        assert!(parse_poly(" 0 ", 3, q()).unwrap().is_zero());
    }

    #[test]
    fn indexed_variables_and_fractions() {
        let p = parse_poly("1/2*x1^2*x3 + 3", 4, q()).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.to_string(), "1/2*x^2*z + 3");
        let p7 = parse_poly("1/2*x7 + x6", 7, q()).unwrap();
        assert_eq!(p7.to_string(), "1/2*x7 + x6");
    }

    #[test]
    fn whitespace_is_insignificant() {
        let a = parse_poly("x ^ 2 * y -  3 / 4", 2, q()).unwrap();
        let b = parse_poly("x^2*y-3/4", 2, q()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn unknown_variables() {
        assert!(matches!(
            parse_poly("w", 3, q()),
            Err(PolyError::UnknownVariable { .. })
        ));
        assert!(matches!(
            parse_poly("x5", 4, q()),
            Err(PolyError::UnknownVariable { .. })
        ));
        assert!(matches!(
            parse_poly("y", 5, q()),
            Err(PolyError::UnknownVariable { .. })
        ));
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_poly("x + * y", 2, q()) {
            Err(PolyError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_poly("", 2, q()).is_err());
        assert!(parse_poly("x^", 2, q()).is_err());
        assert!(parse_poly("3/", 2, q()).is_err());
        assert!(parse_poly("x y", 2, q()).is_err());
    }

    #[test]
    fn prime_field_reduction() {
        let f5 = FieldSpec::prime(5).unwrap();
        let p = parse_poly("7*x - y + 5", 2, f5).unwrap();
        assert_eq!(p.to_string(), "4*y + 2*x");
    }

    #[test]
    fn like_terms_combine() {
        let p = parse_poly("x*y - y*x + x*x", 2, q()).unwrap();
        assert_eq!(p.to_string(), "x^2");
    }
}
