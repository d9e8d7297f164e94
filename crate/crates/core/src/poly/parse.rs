//! Parser for the canonical polynomial text format.
//!
//! Grammar (whitespace between tokens is ignored):
//!
//! ```text
//! poly    :=  [ '+' | '-' ]  term  { ( '+' | '-' )  term }
//! term    :=  coeff [ '*' factors ]  |  factors
//! factors :=  factor { '*' factor }
//! factor  :=  variable [ '^' integer ]
//! variable:=  'x[' integer { ',' integer } ']'
//! coeff   :=  integer [ '/' integer ]
//! ```
//!
//! Errors carry the byte offset where the problem was detected.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::index::{MultiIndex, TensorShape};

/// Parses the canonical text format over the given shape.
pub fn parse_polynomial(text: &str, shape: &TensorShape) -> Result<Polynomial> {
    Parser { bytes: text.as_bytes(), pos: 0, shape }.parse()
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    shape: &'a TensorShape,
}

impl<'a> Parser<'a> {
    fn parse(mut self) -> Result<Polynomial> {
        let mut poly = Polynomial::zero(self.shape.clone());
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.syntax("empty input"));
        }
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let (m, c) = self.term()?;
            let signed = if sign < 0 { -c } else { c };
            poly.add_term(m, signed);
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                Some(_) => return Err(self.syntax("expected '+', '-', or end of input")),
            }
        }
        Ok(poly)
    }

    fn term(&mut self) -> Result<(Monomial, BigRational)> {
        self.skip_ws();
        let mut coeff = BigRational::one();
        let mut have_any = false;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            coeff = self.rational()?;
            have_any = true;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((Monomial::one(), coeff));
            }
        }
        let mut mono = Monomial::one();
        loop {
            self.skip_ws();
            if self.peek() != Some(b'x') {
                if have_any {
                    return Err(self.syntax("expected variable after '*'"));
                }
                return Err(self.syntax("expected coefficient or variable"));
            }
            let (rank, exp) = self.factor()?;
            mono = mono.mul(&Monomial::var_pow(rank, exp));
            have_any = true;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((mono, coeff))
    }

    fn factor(&mut self) -> Result<(usize, u32)> {
        self.expect(b'x')?;
        self.expect(b'[')?;
        let mut entries = Vec::new();
        loop {
            self.skip_ws();
            entries.push(self.small_uint("index entry")? as usize);
            self.skip_ws();
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b']') => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.syntax("expected ',' or ']' in variable index")),
            }
        }
        let idx_pos = self.pos;
        let idx = MultiIndex::new(entries)
            .map_err(|e| Error::Syntax { offset: idx_pos, message: e.to_string() })?;
        let rank = self
            .shape
            .rank_of(&idx)
            .map_err(|e| Error::Syntax { offset: idx_pos, message: e.to_string() })?;
        let mut exp = 1;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            exp = self.small_uint("exponent")?;
            if exp == 0 {
                return Err(self.syntax("exponent must be positive"));
            }
        }
        Ok((rank, exp))
    }

    fn rational(&mut self) -> Result<BigRational> {
        let numer = self.big_uint()?;
        self.skip_ws();
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let denom_pos = self.pos;
            let denom = self.big_uint()?;
            if denom.is_zero() {
                return Err(Error::Syntax {
                    offset: denom_pos,
                    message: "zero denominator".to_string(),
                });
            }
            Ok(BigRational::new(numer, denom))
        } else {
            Ok(BigRational::from_integer(numer))
        }
    }

    fn big_uint(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.syntax("expected a number"));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digit string"))
    }

    fn small_uint(&mut self, what: &str) -> Result<u32> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.syntax(&format!("expected {what}")));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        digits.parse().map_err(|_| Error::Syntax {
            offset: start,
            message: format!("{what} out of range"),
        })
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(&format!("expected '{}'", c as char)))
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn syntax(&self, message: &str) -> Error {
        Error::Syntax { offset: self.pos, message: message.to_string() }
    }
}
