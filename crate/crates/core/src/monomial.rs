//! Bigraded monomials `x^a t^b` in `R[t_1..t_p]`, `R = k[x_1..x_d]`.

use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalar::Field;

/// Ambient ring data: coefficient field, number of x-variables `d` and rank
/// `p` of the free module (number of t-variables).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ring {
    pub field: Field,
    pub d: usize,
    pub p: usize,
}

impl Ring {
    pub fn new(field: Field, d: usize, p: usize) -> Result<Ring> {
        if d == 0 || p == 0 {
            return Err(Error::Precondition(format!(
                "need d >= 1 and p >= 1, got d={d}, p={p}"
            )));
        }
        Ok(Ring { field, d, p })
    }

    pub(crate) fn check_same(&self, other: &Ring) -> Result<()> {
        if self != other {
            return Err(Error::RingMismatch(format!("{self:?} vs {other:?}")));
        }
        Ok(())
    }
}

pub type Exps = SmallVec<[u32; 4]>;

/// A monomial stored as `[p, tdeg, t_1..t_p, xdeg, x_1..x_d]`.
///
/// Ordered by t-degree, then the t-exponents compared from the last variable
/// down, then x-degree, then the x-exponents likewise; so `t_1 < t_2` and
/// `x_1 < x_2`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    key: SmallVec<[u32; 10]>,
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let p = self.p();
        let (a, b) = (&self.key, &other.key);
        a[1].cmp(&b[1])
            .then_with(|| a[2..2 + p].iter().rev().cmp(b[2..2 + p].iter().rev()))
            .then_with(|| a[2 + p].cmp(&b[2 + p]))
            .then_with(|| a[3 + p..].iter().rev().cmp(b[3 + p..].iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

fn checked_sum(v: &[u32]) -> Result<u32> {
    v.iter()
        .try_fold(0u32, |acc, &e| acc.checked_add(e))
        .ok_or(Error::ExponentOverflow)
}

impl Monomial {
    pub fn new(xexp: &[u32], texp: &[u32]) -> Result<Monomial> {
        let mut key = SmallVec::with_capacity(xexp.len() + texp.len() + 3);
        key.push(texp.len() as u32);
        key.push(checked_sum(texp)?);
        key.extend_from_slice(texp);
        key.push(checked_sum(xexp)?);
        key.extend_from_slice(xexp);
        Ok(Monomial { key })
    }

    pub fn one(ring: &Ring) -> Monomial {
        Monomial::new(&vec![0; ring.d], &vec![0; ring.p]).expect("zero exponents")
    }

    /// The monomial `t^texp` with trivial x-part.
    pub fn t_power(ring: &Ring, texp: &[u32]) -> Result<Monomial> {
        Monomial::new(&vec![0; ring.d], texp)
    }

    fn p(&self) -> usize {
        self.key[0] as usize
    }

    pub fn texp(&self) -> &[u32] {
        &self.key[2..2 + self.p()]
    }

    pub fn xexp(&self) -> &[u32] {
        &self.key[3 + self.p()..]
    }

    pub fn tdeg(&self) -> u32 {
        self.key[1]
    }

    pub fn xdeg(&self) -> u32 {
        self.key[2 + self.p()]
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        debug_assert_eq!(self.key.len(), other.key.len());
        let mut key = self.key.clone();
        for i in 1..key.len() {
            key[i] = key[i].checked_add(other.key[i]).ok_or(Error::ExponentOverflow)?;
        }
        Ok(Monomial { key })
    }

    /// Multiplies by the variable `x_i` (0-based).
    pub fn mul_x(&self, i: usize) -> Result<Monomial> {
        let p = self.p();
        let mut key = self.key.clone();
        let xd = 2 + p;
        key[xd] = key[xd].checked_add(1).ok_or(Error::ExponentOverflow)?;
        key[xd + 1 + i] = key[xd + 1 + i].checked_add(1).ok_or(Error::ExponentOverflow)?;
        Ok(Monomial { key })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.key[1..]
            .iter()
            .zip(&other.key[1..])
            .all(|(a, b)| a <= b)
    }

    pub fn texp_owned(&self) -> Exps {
        SmallVec::from_slice(self.texp())
    }

    pub fn xexp_owned(&self) -> Exps {
        SmallVec::from_slice(self.xexp())
    }

    pub fn is_one(&self) -> bool {
        self.tdeg() == 0 && self.xdeg() == 0
    }

    /// Grammar-conforming rendering (`x1^2*t1`), or `1` for the unit.
    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.xexp().iter().enumerate() {
            push_var(&mut parts, 'x', i, e);
        }
        for (i, &e) in self.texp().iter().enumerate() {
            push_var(&mut parts, 't', i, e);
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

fn push_var(parts: &mut Vec<String>, name: char, i: usize, e: u32) {
    match e {
        0 => {}
        1 => parts.push(format!("{name}{}", i + 1)),
        _ => parts.push(format!("{name}{}^{e}", i + 1)),
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// All exponent vectors of length `len` and total degree `deg`.
pub fn compositions(len: usize, deg: u32) -> Vec<Exps> {
    let mut out = Vec::new();
    let mut cur: Exps = SmallVec::from_elem(0, len);
    fn rec(i: usize, left: u32, cur: &mut Exps, out: &mut Vec<Exps>) {
        let len = cur.len();
        if i + 1 == len {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if len == 0 {
        if deg == 0 {
            out.push(cur);
        }
        return out;
    }
    rec(0, deg, &mut cur, &mut out);
    out
}

/// The t-monomials of degree `g` (a basis of `Sym_g(F)` over `R`).
pub fn t_monomials(ring: &Ring, g: u32) -> Vec<Exps> {
    compositions(ring.p, g)
}

/// Monomials of t-degree `n` and x-degree `< bound`, in ascending canonical
/// order. Their number is `C(n+p-1, p-1) * C(bound-1+d, d)`.
pub fn enumerate_basis(ring: &Ring, n: u32, bound: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for texp in t_monomials(ring, n) {
        for xd in 0..bound {
            for xexp in compositions(ring.d, xd) {
                out.push(Monomial::new(&xexp, &texp).expect("small exponents"));
            }
        }
    }
    out.sort();
    out
}

/// Binomial coefficient `C(n, k)` in u128.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}
