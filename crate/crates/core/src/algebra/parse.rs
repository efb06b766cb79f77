use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::element::Element;
use super::generator::{Family, Gen, Roster};
use super::Rational;
use crate::error::{Error, Result};

/// Parse a polynomial in the text grammar
/// `±(p/q) gen^e gen … ± …`, e.g. `x1^2 y1 - (1/2) c1 b1 + 3`.
///
/// The result is normalized immediately.
pub fn parse_element(roster: Roster, text: &str) -> Result<Element> {
    Parser::new(roster, text).parse()
}

struct Parser<'a> {
    roster: Roster,
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn new(roster: Roster, text: &'a str) -> Self {
        Parser {
            roster,
            chars: text.char_indices().collect(),
            pos: 0,
            text,
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let offset = self.chars.get(self.pos).map(|&(i, _)| i).unwrap_or(self.text.len());
        let before = &self.text[..offset];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace() || c == '*') {
            self.pos += 1;
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

    fn parse(mut self) -> Result<Element> {
        let mut out = Element::zero(self.roster);
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.error("empty polynomial"));
        }
        let mut first = true;
        loop {
            self.skip_ws();
            if self.peek().is_none() {
                break;
            }
            let mut neg = match self.sign() {
                Some(n) => n,
                None if first => false,
                None => return Err(self.error("expected '+' or '-' between terms")),
            };
            self.skip_ws();
            // tolerate a doubled sign such as "+ -3"
            if let Some(n) = self.sign() {
                neg ^= n;
                self.skip_ws();
            }
            let term = self.term()?;
            if neg {
                out.sub_assign_ref(&term);
            } else {
                out.add_assign_ref(&term);
            }
            first = false;
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<Element> {
        let mut coeff = Rational::one();
        let mut word = Vec::new();
        let mut any = false;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('(') => {
                    self.pos += 1;
                    self.skip_ws();
                    let neg = self.sign() == Some(true);
                    self.skip_ws();
                    let mut r = self.rational()?;
                    if neg {
                        r = -r;
                    }
                    self.skip_ws();
                    if self.peek() != Some(')') {
                        return Err(self.error("expected ')'"));
                    }
                    self.pos += 1;
                    coeff *= r;
                }
                Some(c) if c.is_ascii_digit() => {
                    let r = self.rational()?;
                    coeff *= r;
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let (g, e) = self.power()?;
                    for _ in 0..e {
                        word.push(g);
                    }
                }
                _ => break,
            }
            any = true;
        }
        if !any {
            return Err(self.error("expected a coefficient or generator"));
        }
        Element::normalize(self.roster, coeff, &word).map_err(|e| match e {
            Error::UnknownGenerator(g, r) => self.error(format!("generator {g} is not part of roster {r}")),
            other => other,
        })
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        Ok(s.parse().expect("ascii digits"))
    }

    fn rational(&mut self) -> Result<Rational> {
        let n = self.integer()?;
        self.skip_ws();
        if self.peek() == Some('/') {
            self.pos += 1;
            self.skip_ws();
            let d = self.integer()?;
            if d.is_zero() {
                return Err(self.error("zero denominator"));
            }
            Ok(Rational::new(n, d))
        } else {
            Ok(Rational::from_integer(n))
        }
    }

    fn power(&mut self) -> Result<(Gen, u32)> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        let name: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        let family = Family::ALL.into_iter().find(|f| f.token() == name).ok_or_else(|| {
            self.pos = start;
            self.error(format!("unknown generator family '{name}'"))
        })?;
        let idx = self.integer()?;
        let index: u16 = idx.try_into().map_err(|_| self.error("generator index out of range"))?;
        let g = Gen::new(family, index);
        if !self.roster.contains(g) {
            self.pos = start;
            return Err(self.error(format!("generator {g} is not part of roster {}", self.roster)));
        }
        let mut e = 1u32;
        if self.peek() == Some('^') {
            self.pos += 1;
            let v = self.integer()?;
            e = v.try_into().map_err(|_| self.error("exponent out of range"))?;
        }
        Ok((g, e))
    }
}

impl std::str::FromStr for Gen {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let split = s
            .find(|c: char| c.is_ascii_digit())
            .ok_or_else(|| format!("missing index in '{s}'"))?;
        let (name, idx) = s.split_at(split);
        let family = Family::ALL
            .into_iter()
            .find(|f| f.token() == name)
            .ok_or_else(|| format!("unknown generator family '{name}'"))?;
        let index = idx.parse::<u16>().map_err(|_| format!("bad index in '{s}'"))?;
        Ok(Gen::new(family, index))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r() -> Roster {
        Roster::new(1, 3)
    }

    #[test]
    fn round_trips_display() {
        for s in ["0", "1", "x1^2 y1 - 1/2 c1 b1 + 3", "-y1 yd2 yd3", "cd1 bd1 + cd2 bd2"] {
            let e = parse_element(r(), s).unwrap();
            let again = parse_element(r(), &e.to_string()).unwrap();
            assert_eq!(e, again, "{s}");
        }
    }

    #[test]
    fn parenthesized_coefficients() {
        let a = parse_element(r(), "(1/2) y1 + (-3) y2").unwrap();
        let b = parse_element(r(), "1/2 y1 - 3 y2").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn normalizes_odd_words() {
        let a = parse_element(r(), "b1 c1").unwrap();
        assert_eq!(a.to_string(), "-c1 b1");
        assert!(parse_element(r(), "c1 c1").unwrap().is_zero());
        assert!(parse_element(r(), "c1 - c1").unwrap().is_zero());
    }

    #[test]
    fn reports_positions() {
        match parse_element(r(), "y1 + q2") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 6)),
            other => panic!("{other:?}"),
        }
        assert!(parse_element(r(), "y4").is_err());
        assert!(parse_element(r(), "1/0").is_err());
        assert!(parse_element(r(), "").is_err());
        assert!(parse_element(r(), "y1 y2 + ").is_err());
    }

    #[test]
    fn gen_from_str() {
        assert_eq!("bd2".parse::<Gen>().unwrap(), Gen::bd(2));
        assert!("zz1".parse::<Gen>().is_err());
    }
}
