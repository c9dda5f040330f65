//! Sparse polynomials in `R[t_1..t_p]`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, Ring};
use crate::scalar::Scalar;

/// A polynomial with terms sorted in descending monomial order and no zero
/// coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyElement {
    ring: Ring,
    terms: Vec<(Monomial, Scalar)>,
}

impl PolyElement {
    pub fn zero(ring: Ring) -> Self {
        PolyElement { ring, terms: Vec::new() }
    }

    pub fn one(ring: Ring) -> Self {
        Self::term(ring, Monomial::one(&ring), ring.field.one())
    }

    pub fn term(ring: Ring, m: Monomial, c: Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(ring);
        }
        PolyElement { ring, terms: vec![(m, c)] }
    }

    pub fn monomial(ring: Ring, m: Monomial) -> Self {
        Self::term(ring, m, ring.field.one())
    }

    /// Builds a canonical polynomial from arbitrary terms (combining equal
    /// monomials and dropping zeros).
    pub fn from_terms(ring: Ring, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Result<Self> {
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            if c.field() != ring.field {
                return Err(Error::FieldMismatch(format!(
                    "coefficient over {} in a ring over {}",
                    c.field(),
                    ring.field
                )));
            }
            if m.xexp().len() != ring.d || m.texp().len() != ring.p {
                return Err(Error::RingMismatch(format!("monomial {m} outside ring")));
            }
            accumulate(&mut acc, m, c);
        }
        Ok(Self::from_map(ring, acc))
    }

    /// Terms from a map; zero coefficients must already be absent.
    pub(crate) fn from_map(ring: Ring, acc: BTreeMap<Monomial, Scalar>) -> Self {
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        PolyElement { ring, terms }
    }

    /// Terms already sorted descending with no zeros.
    pub(crate) fn from_sorted_terms(ring: Ring, terms: Vec<(Monomial, Scalar)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        PolyElement { ring, terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Scalar)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    /// True for a single term (a monomial up to a unit).
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The common t-degree if all terms share it.
    pub fn tdeg(&self) -> Option<u32> {
        let first = self.terms.first()?.0.tdeg();
        self.terms
            .iter()
            .all(|(m, _)| m.tdeg() == first)
            .then_some(first)
    }

    pub fn is_t_homogeneous(&self) -> bool {
        self.is_zero() || self.tdeg().is_some()
    }

    pub fn add(&self, other: &PolyElement) -> Result<PolyElement> {
        self.ring.check_same(&other.ring)?;
        Ok(self.merge(other, |c| c.clone()))
    }

    pub fn sub(&self, other: &PolyElement) -> Result<PolyElement> {
        self.ring.check_same(&other.ring)?;
        Ok(self.merge(other, |c| -c))
    }

    fn merge(&self, other: &PolyElement, f: impl Fn(&Scalar) -> Scalar) -> PolyElement {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => std::cmp::Ordering::Greater,
                (None, _) => std::cmp::Ordering::Less,
            };
            match ord {
                std::cmp::Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((other.terms[j].0.clone(), f(&other.terms[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &self.terms[i].1 + &f(&other.terms[j].1);
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        PolyElement { ring: self.ring, terms: out }
    }

    pub fn neg(&self) -> PolyElement {
        PolyElement {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> PolyElement {
        if s.is_zero() {
            return Self::zero(self.ring);
        }
        PolyElement {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &PolyElement) -> Result<PolyElement> {
        self.ring.check_same(&other.ring)?;
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        let mut acc = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                accumulate(&mut acc, ma.mul(mb)?, ca * cb);
            }
        }
        Ok(Self::from_map(self.ring, acc))
    }

    /// Multiplication by `c * m`; monomial multiplication preserves order.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Result<PolyElement> {
        if c.is_zero() {
            return Ok(Self::zero(self.ring));
        }
        let terms = self
            .terms
            .iter()
            .map(|(a, ca)| Ok((a.mul(m)?, ca * c)))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyElement { ring: self.ring, terms })
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Result<PolyElement> {
        self.mul_term(m, &self.ring.field.one())
    }

    /// Multiplication by the variable `x_i` (0-based).
    pub fn mul_x(&self, i: usize) -> Result<PolyElement> {
        let terms = self
            .terms
            .iter()
            .map(|(a, c)| Ok((a.mul_x(i)?, c.clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyElement { ring: self.ring, terms })
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> PolyElement {
        match self.leading() {
            Some((_, c)) if !c.is_one() => self.scale(&c.inv().expect("nonzero")),
            _ => self.clone(),
        }
    }

    /// Grammar-conforming text (`3*x1^2*t1 - x2*t2`), `0` for zero.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { (-c).render() } else { c.render() };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.render();
            match (mag == "1", m.is_one()) {
                (true, true) => s.push('1'),
                (true, false) => s.push_str(&mono),
                (false, true) => s.push_str(&mag),
                (false, false) => {
                    s.push_str(&mag);
                    s.push('*');
                    s.push_str(&mono);
                }
            }
        }
        s
    }
}

pub(crate) fn accumulate(acc: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: Scalar) {
    use std::collections::btree_map::Entry;
    match acc.entry(m) {
        Entry::Vacant(v) => {
            if !c.is_zero() {
                v.insert(c);
            }
        }
        Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

impl fmt::Debug for PolyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for PolyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
