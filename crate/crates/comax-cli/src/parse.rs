//! The ring-spec grammar:
//!
//! ```text
//! expr := atom ( "x" atom )*
//! atom := "Z" integer | "GF(" integer ")"
//! ```
//!
//! Whitespace-insensitive; `×` is accepted as an alias for `x`. The `GF`
//! argument must be a prime power, the `Z` argument at least 2. Products
//! left-associate into the factor list.

use comax_core::ring::{prime_power, BaseSpec, RingSpec};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

struct Scanner<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len()
            && self.text[self.pos..].starts_with(|c: char| c.is_whitespace())
        {
            self.pos += self.text[self.pos..].chars().next().unwrap().len_utf8();
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.text[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn integer(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        while self
            .text
            .as_bytes()
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_digit())
        {
            self.pos += 1;
        }
        if self.pos == start {
            return self.error("expected an integer");
        }
        self.text[start..self.pos].parse().map_err(|_| ParseError {
            pos: start,
            msg: "integer out of range".to_string(),
        })
    }

    fn atom(&mut self) -> Result<BaseSpec, ParseError> {
        if self.eat("GF") {
            self.skip_ws();
            if !self.eat("(") {
                return self.error("expected '(' after GF");
            }
            self.skip_ws();
            let arg_pos = self.pos;
            let q = self.integer()?;
            self.skip_ws();
            if !self.eat(")") {
                return self.error("expected ')'");
            }
            match prime_power(q) {
                Some((p, k)) => Ok(BaseSpec::Gf { p, k }),
                None => Err(ParseError {
                    pos: arg_pos,
                    msg: format!("GF argument {q} is not a prime power"),
                }),
            }
        } else if self.eat("Z") {
            self.skip_ws();
            let arg_pos = self.pos;
            let n = self.integer()?;
            if n < 2 {
                return Err(ParseError {
                    pos: arg_pos,
                    msg: format!("Z argument must be at least 2, got {n}"),
                });
            }
            Ok(BaseSpec::Zn(n))
        } else {
            self.error("expected 'Z<n>' or 'GF(<q>)'")
        }
    }
}

pub fn parse_ring_spec(text: &str) -> Result<RingSpec, ParseError> {
    let mut s = Scanner { text, pos: 0 };
    s.skip_ws();
    let mut factors = vec![s.atom()?];
    loop {
        s.skip_ws();
        if s.pos == text.len() {
            break;
        }
        if !(s.eat("x") || s.eat("×")) {
            return s.error("expected 'x' between factors");
        }
        s.skip_ws();
        factors.push(s.atom()?);
    }
    Ok(RingSpec::new(factors))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_zn() {
        assert_eq!(parse_ring_spec("Z12").unwrap(), RingSpec::zn(12));
    }

    #[test]
    fn product_of_three() {
        assert_eq!(
            parse_ring_spec("Z2 x Z2 x Z2").unwrap(),
            RingSpec::new(vec![BaseSpec::Zn(2); 3])
        );
    }

    #[test]
    fn gf_and_zn() {
        assert_eq!(
            parse_ring_spec("GF(4) x Z8").unwrap(),
            RingSpec::new(vec![BaseSpec::Gf { p: 2, k: 2 }, BaseSpec::Zn(8)])
        );
    }

    #[test]
    fn whitespace_and_alias() {
        assert_eq!(
            parse_ring_spec("  Z2×GF( 9 ) ").unwrap(),
            RingSpec::new(vec![BaseSpec::Zn(2), BaseSpec::Gf { p: 3, k: 2 }])
        );
        assert_eq!(
            parse_ring_spec("Z2xZ3").unwrap(),
            parse_ring_spec("Z2 x Z3").unwrap()
        );
        assert_eq!(parse_ring_spec("Z 12").unwrap(), RingSpec::zn(12));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_ring_spec("GF(6)").unwrap_err();
        assert_eq!(e.pos, 3);
        assert!(e.msg.contains("prime power"));
        let e = parse_ring_spec("Z1").unwrap_err();
        assert!(e.msg.contains("at least 2"));
        let e = parse_ring_spec("Z4 y Z2").unwrap_err();
        assert_eq!(e.pos, 3);
        let e = parse_ring_spec("Q8").unwrap_err();
        assert_eq!(e.pos, 0);
        assert!(parse_ring_spec("").is_err());
        assert!(parse_ring_spec("Z12 x").is_err());
    }

    #[test]
    fn print_parse_round_trip() {
        for text in [
            "Z12",
            "Z2 x Z2 x Z2",
            "GF(4) x Z8",
            "GF(8)",
            "Z2 x GF(25) x Z9",
        ] {
            let spec = parse_ring_spec(text).unwrap();
            assert_eq!(spec.to_string(), text);
            assert_eq!(parse_ring_spec(&spec.to_string()).unwrap(), spec);
        }
    }
}
