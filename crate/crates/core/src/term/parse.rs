//! Grammar:
//!
//! ```text
//! term      := factor { factor }
//! factor    := generator | "(" term ")"
//! generator := "x" digits
//! lincomb   := [sign] [coeff "*"] term { sign [coeff "*"] term }
//! coeff     := digits [ "/" digits ]
//! ```
//!
//! Juxtaposition associates to the left and whitespace is ignored. Both `-`
//! and `−` (U+2212) are accepted as minus.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Generator, Term, TermComb};
use crate::error::{Error, Result};
use crate::scalar::Rational;

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            chars: text.chars().enumerate().collect(),
            pos: 0,
            text,
        }
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
        self.chars.get(self.pos).map(|&(i, _)| i).unwrap_or(self.chars.len())
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::parse(self.offset(), format!("{} in `{}`", message.into(), self.text))
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            if c.is_ascii_digit() {
                s.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        s
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn term(&mut self) -> Result<Term> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some('x') | Some('(')) {
            let next = self.factor()?;
            acc = Term::mul(acc, next);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Term> {
        match self.peek() {
            Some('x') => {
                self.pos += 1;
                let start = self.offset();
                let digits = self.digits();
                if digits.is_empty() {
                    return Err(self.error("expected digits after `x`"));
                }
                let index: u32 = digits
                    .parse()
                    .map_err(|_| Error::parse(start, "generator index out of range"))?;
                let g = Generator::new(index)
                    .map_err(|_| Error::parse(start, "generator index must be at least 1"))?;
                Ok(Term::Leaf(g))
            }
            Some('(') => {
                self.pos += 1;
                let t = self.term()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(t)
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some('+') => {
                self.pos += 1;
                Some(false)
            }
            Some('-') | Some('\u{2212}') => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }

    fn coefficient(&mut self) -> Result<Rational> {
        if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
            return Ok(Rational::one());
        }
        let num: BigInt = self.digits().parse().expect("digits");
        let den: BigInt = if self.peek() == Some('/') {
            self.pos += 1;
            self.skip_ws();
            let d = self.digits();
            if d.is_empty() {
                return Err(self.error("expected denominator"));
            }
            d.parse().expect("digits")
        } else {
            BigInt::one()
        };
        if den.is_zero() {
            return Err(self.error("zero denominator"));
        }
        if self.peek() != Some('*') {
            return Err(self.error("expected `*` after coefficient"));
        }
        self.pos += 1;
        Ok(Rational::new(num, den))
    }
}

pub fn parse_term(text: &str) -> Result<Term> {
    let mut c = Cursor::new(text);
    let t = c.term()?;
    if !c.at_end() {
        return Err(c.error("trailing input"));
    }
    Ok(t)
}

/// Parses the signed-sum text form, e.g. `x1x2x3 - 1/2 * x1(x2x3)`. The single
/// token `0` denotes the empty combination.
pub fn parse_lincomb(text: &str) -> Result<TermComb> {
    if text.trim() == "0" {
        return Ok(TermComb::zero());
    }
    let mut c = Cursor::new(text);
    let mut out = TermComb::zero();
    let mut first = true;
    loop {
        let negative = match c.sign() {
            Some(neg) => neg,
            None if first => false,
            None => return Err(c.error("expected `+` or `-`")),
        };
        let mut coeff = c.coefficient()?;
        if negative {
            coeff = -coeff;
        }
        let t = c.term()?;
        out.add_term(t, coeff);
        first = false;
        if c.at_end() {
            return Ok(out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn x(i: u32) -> Term {
        Term::var(i)
    }

    #[test]
    fn juxtaposition_is_left_associative() {
        assert_eq!(
            parse_term("x1x2x3").unwrap(),
            Term::mul(Term::mul(x(1), x(2)), x(3))
        );
        assert_eq!(
            parse_term("x1(x2x3)").unwrap(),
            Term::mul(x(1), Term::mul(x(2), x(3)))
        );
        assert_eq!(
            parse_term("x1(x2x3)(x4x5)").unwrap(),
            Term::mul(
                Term::mul(x(1), Term::mul(x(2), x(3))),
                Term::mul(x(4), x(5))
            )
        );
    }

    #[test]
    fn whitespace_and_multidigit_indices() {
        assert_eq!(
            parse_term(" x12 ( x3  x45 ) ").unwrap(),
            Term::mul(x(12), Term::mul(x(3), x(45)))
        );
        assert_eq!(parse_term("((x1))").unwrap(), x(1));
    }

    #[test]
    fn malformed_input_reports_position() {
        for bad in ["", "x", "x1(", "x1)x2", "y1", "x0", "x1 + x2", "()"] {
            let err = parse_term(bad).unwrap_err();
            assert!(matches!(err, Error::Parse { .. }), "{bad}: {err:?}");
        }
        match parse_term("x1x2)") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn lincomb_text_form() {
        let c = parse_lincomb("x1x2x3 - 1/2 * x1(x2x3) + 3*x2x1x3").unwrap();
        assert_eq!(c.coeff(&parse_term("x1x2x3").unwrap()), int(1));
        assert_eq!(c.coeff(&parse_term("x1(x2x3)").unwrap()), ratio(-1, 2));
        assert_eq!(c.coeff(&parse_term("x2x1x3").unwrap()), int(3));
        let d = parse_lincomb("\u{2212}x1x2 \u{2212} 2 * x2x1").unwrap();
        assert_eq!(d.coeff(&parse_term("x1x2").unwrap()), int(-1));
        assert_eq!(d.coeff(&parse_term("x2x1").unwrap()), int(-2));
        assert!(parse_lincomb("0").unwrap().is_zero());
        assert!(parse_lincomb("x1 x2 +").is_err());
        assert!(parse_lincomb("2 x1").is_err());
    }

    #[test]
    fn lincomb_display_roundtrip() {
        let c = parse_lincomb("x1x2x3 - 1/2 * x1(x2x3) + 3 * x2x1x3").unwrap();
        assert_eq!(parse_lincomb(&c.to_string()).unwrap(), c);
    }
}
