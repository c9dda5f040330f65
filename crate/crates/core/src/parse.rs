//! Reader for the polynomial text grammar.
//!
//! ```text
//! poly   := term (('+'|'-') term)*
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! factor := var ('^' uint)?
//! var    := 'x' uint | 't' uint
//! coeff  := int
//! ```
//!
//! Whitespace is ignored. A leading sign is accepted, and over Q a coefficient
//! may carry a denominator (`3/2`) so rendered output reads back.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, Ring};
use crate::poly::PolyElement;
use crate::scalar::{Field, Scalar};

pub fn parse_poly(text: &str, ring: &Ring) -> Result<PolyElement> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ring };
    let out = p.poly()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn uint(&mut self) -> Result<u32> {
        self.digits()?.parse::<u32>().map_err(|_| Error::ExponentOverflow)
    }

    fn poly(&mut self) -> Result<PolyElement> {
        let mut terms = Vec::new();
        let mut negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let (m, mut c) = self.term()?;
            if negative {
                c = -c;
            }
            terms.push((m, c));
            match self.peek() {
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                _ => break,
            }
            self.pos += 1;
        }
        PolyElement::from_terms(*self.ring, terms)
    }

    fn coefficient(&mut self) -> Result<Scalar> {
        let num: BigInt = self.digits()?.parse().expect("digits");
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = self.pos;
            let den: BigInt = self.digits()?.parse().expect("digits");
            return match self.ring.field {
                Field::Rational if den != BigInt::from(0) => {
                    Ok(Scalar::Rat(BigRational::new(num, den)))
                }
                Field::Rational => Err(Error::Syntax { pos: at, msg: "zero denominator".into() }),
                Field::Prime(_) => {
                    let d = self.ring.field.from_bigint(&den);
                    let inv = d.inv().ok_or(Error::Syntax {
                        pos: at,
                        msg: "denominator vanishes in the field".into(),
                    })?;
                    Ok(&self.ring.field.from_bigint(&num) * &inv)
                }
            };
        }
        Ok(self.ring.field.from_bigint(&num))
    }

    fn term(&mut self) -> Result<(Monomial, Scalar)> {
        let mut xexp = vec![0u32; self.ring.d];
        let mut texp = vec![0u32; self.ring.p];
        let mut coeff = self.ring.field.one();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => coeff = self.coefficient()?,
            Some(b'x') | Some(b't') => self.factor(&mut xexp, &mut texp)?,
            _ => return Err(self.err("expected a coefficient or a variable")),
        }
        while self.peek() == Some(b'*') {
            self.pos += 1;
            self.factor(&mut xexp, &mut texp)?;
        }
        Ok((Monomial::new(&xexp, &texp)?, coeff))
    }

    fn factor(&mut self, xexp: &mut [u32], texp: &mut [u32]) -> Result<()> {
        let start = self.pos;
        let kind = match self.peek() {
            Some(k @ (b'x' | b't')) => k,
            _ => return Err(self.err("expected a variable")),
        };
        self.pos += 1;
        let index_pos = self.pos;
        let idx = self.digits().map_err(|_| Error::Syntax {
            pos: index_pos,
            msg: "variable needs an index".into(),
        })?;
        let name = format!("{}{}", kind as char, idx);
        let idx: usize = idx.parse().map_err(|_| Error::UnknownVariable(name.clone()))?;
        let slot = match kind {
            b'x' => xexp.get_mut(idx.wrapping_sub(1)),
            _ => texp.get_mut(idx.wrapping_sub(1)),
        }
        .ok_or(Error::UnknownVariable(name))?;
        let e = if self.peek() == Some(b'^') {
            self.pos += 1;
            self.uint()?
        } else {
            1
        };
        debug_assert!(self.pos > start);
        *slot = slot.checked_add(e).ok_or(Error::ExponentOverflow)?;
        Ok(())
    }
}
