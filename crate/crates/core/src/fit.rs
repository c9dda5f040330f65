//! Length tables and their exact polynomial fits.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default number of table entries a fit must reproduce beyond interpolation.
pub const DEFAULT_WINDOW: usize = 3;

/// Which length function a table records.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LengthKind {
    /// `ℓ(F^n / M^n)`.
    BuchsbaumRim,
    /// `ℓ(L^n / M^n)` for a nested pair.
    ReesAmao,
    /// `μ(M^n) = dim M^n / m M^n`.
    Fiber,
    /// `ℓ(L M^{n-1} / I M^n)`.
    Graded,
}

impl LengthKind {
    pub fn tag(self) -> &'static str {
        match self {
            LengthKind::BuchsbaumRim => "br",
            LengthKind::ReesAmao => "ra",
            LengthKind::Fiber => "fiber",
            LengthKind::Graded => "graded",
        }
    }
}

/// A table `n ↦ value` over consecutive `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumericalFunction {
    pub kind: LengthKind,
    pub start: u32,
    pub values: Vec<u64>,
}

impl NumericalFunction {
    pub fn new(kind: LengthKind, start: u32, values: Vec<u64>) -> Self {
        NumericalFunction { kind, start, values }
    }

    /// Tabulates `f(n)` for `n = 1..=nmax`.
    pub fn tabulate(kind: LengthKind, nmax: u32, mut f: impl FnMut(u32) -> Result<u64>) -> Result<Self> {
        let values = (1..=nmax).map(&mut f).collect::<Result<Vec<_>>>()?;
        Ok(NumericalFunction { kind, start: 1, values })
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.values.iter().enumerate().map(|(i, v)| (self.start + i as u32, *v))
    }

    pub fn last_n(&self) -> u32 {
        self.start + self.values.len() as u32 - 1
    }
}

/// Exact eventual polynomial of a table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FittedPolynomial {
    /// `-1` encodes the zero polynomial.
    pub degree: i32,
    /// Coefficients of `1, n, n^2, …`.
    pub raw: Vec<BigRational>,
    /// First `n` from which the table agrees with the polynomial.
    pub stabilization_index: u32,
    /// Table entries reproduced beyond the ones used for interpolation.
    pub confirmed: usize,
}

fn differences(v: &[BigInt]) -> Vec<BigInt> {
    v.windows(2).map(|w| &w[1] - &w[0]).collect()
}

/// Least `δ` such that the `(δ+1)`-th differences vanish, if any.
fn difference_degree(tail: &[BigInt]) -> Option<i32> {
    let mut cur = tail.to_vec();
    let mut k = -1;
    loop {
        if cur.is_empty() {
            return None;
        }
        if cur.iter().all(Zero::is_zero) {
            return Some(k);
        }
        cur = differences(&cur);
        k += 1;
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_scaled(acc: &mut Vec<BigRational>, p: &[BigRational], c: &BigRational) {
    if acc.len() < p.len() {
        acc.resize(p.len(), BigRational::zero());
    }
    for (a, x) in acc.iter_mut().zip(p) {
        *a += x * c;
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `C(n + shift, k)` as a polynomial in `n`.
fn binomial_poly(shift: i64, k: u32) -> Vec<BigRational> {
    let mut p = vec![BigRational::one()];
    for m in 0..k as i64 {
        p = poly_mul(&p, &[rat(shift - m), BigRational::one()]);
    }
    let fact: BigInt = (1..=k as i64).map(BigInt::from).product();
    p.into_iter().map(|c| c / BigRational::from_integer(fact.clone())).collect()
}

impl FittedPolynomial {
    pub fn is_zero(&self) -> bool {
        self.degree < 0
    }

    pub fn eval(&self, n: i64) -> BigRational {
        let x = rat(n);
        self.raw.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    /// Coefficients `e_0..e_T` with
    /// `P(n) = Σ (-1)^i e_i C(n + T - i - 1, T - i)`.
    pub fn signed_binomial(&self, top: u32) -> Result<Vec<BigRational>> {
        if self.degree > top as i32 {
            return Err(Error::Precondition(format!(
                "degree {} exceeds the basis dimension {top}",
                self.degree
            )));
        }
        let mut rest = self.raw.clone();
        rest.resize(top as usize + 1, BigRational::zero());
        let mut e = vec![BigRational::zero(); top as usize + 1];
        for j in (0..=top).rev() {
            let basis = binomial_poly(j as i64 - 1, j);
            let lead = basis[j as usize].clone();
            let a = &rest[j as usize] / lead;
            poly_add_scaled(&mut rest, &basis, &-a.clone());
            let i = (top - j) as usize;
            e[i] = if i.is_multiple_of(2) { a } else { -a };
        }
        debug_assert!(rest.iter().all(Zero::is_zero));
        Ok(e)
    }

    /// Compact rendering such as `1/2*n^3 + n^2 + 1/2*n`.
    pub fn render(&self) -> String {
        if self.raw.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, c) in self.raw.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let coef = if mag.is_integer() { mag.numer().to_string() } else { format!("{}/{}", mag.numer(), mag.denom()) };
            let body = match (k, coef.as_str()) {
                (0, _) => coef.clone(),
                (1, "1") => "n".into(),
                (_, "1") => format!("n^{k}"),
                (1, _) => format!("{coef}*n"),
                _ => format!("{coef}*n^{k}"),
            };
            let sign = if c.is_negative() { "-" } else { "+" };
            parts.push((sign, body));
        }
        let mut s = String::new();
        for (i, (sign, body)) in parts.iter().enumerate() {
            match (i, *sign) {
                (0, "-") => s.push('-'),
                (0, _) => {}
                (_, sg) => {
                    s.push(' ');
                    s.push_str(sg);
                    s.push(' ');
                }
            }
            s.push_str(body);
        }
        s
    }
}

/// Finite-difference fit: the earliest tail whose degree is confirmed by
/// `window` further entries.
pub fn fit(f: &NumericalFunction, window: usize) -> Result<FittedPolynomial> {
    let vals: Vec<BigInt> = f.values.iter().map(|&v| BigInt::from(v)).collect();
    for start in 0..vals.len() {
        let tail = &vals[start..];
        let Some(delta) = difference_degree(tail) else { continue };
        let needed = (delta + 1) as usize + window;
        if tail.len() < needed {
            continue;
        }
        let n0 = f.start as i64 + start as i64;
        let mut raw = Vec::new();
        let mut diff = tail.to_vec();
        for k in 0..=delta.max(-1) {
            let c = BigRational::from_integer(diff[0].clone());
            poly_add_scaled(&mut raw, &binomial_poly(-n0, k as u32), &c);
            diff = differences(&diff);
        }
        return Ok(FittedPolynomial {
            degree: delta,
            raw: trim(raw),
            stabilization_index: n0 as u32,
            confirmed: tail.len() - (delta + 1) as usize,
        });
    }
    let residual = vals.last().map(ToString::to_string).unwrap_or_default();
    Err(Error::UnstableFit(format!(
        "no tail of {} entries (last value {residual}) is confirmed by {window} points",
        vals.len()
    )))
}

/// Outcome of comparing a fitted degree with a threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeVerdict {
    pub holds: bool,
    pub threshold: i32,
    pub inclusive: bool,
    pub fit: FittedPolynomial,
}

/// `deg < threshold`, or `deg ≤ threshold` when `inclusive`.
pub fn degree_test(f: &NumericalFunction, threshold: i32, inclusive: bool, window: usize) -> Result<DegreeVerdict> {
    let fit = fit(f, window)?;
    let holds = if inclusive { fit.degree <= threshold } else { fit.degree < threshold };
    Ok(DegreeVerdict { holds, threshold, inclusive, fit })
}

/// Fits a table that is extended on demand: values are requested in order
/// `1, 2, …` until the fit stabilizes or `nmax_hard` is reached.
pub fn fit_extending(
    kind: LengthKind,
    initial: u32,
    nmax_hard: u32,
    window: usize,
    mut value: impl FnMut(u32) -> Result<u64>,
) -> Result<(NumericalFunction, FittedPolynomial)> {
    let mut table = NumericalFunction::tabulate(kind, initial.min(nmax_hard), &mut value)?;
    loop {
        match fit(&table, window) {
            Ok(p) => return Ok((table, p)),
            Err(e) if table.last_n() >= nmax_hard => return Err(e),
            Err(_) => {
                let n = table.last_n() + 1;
                table.values.push(value(n)?);
            }
        }
    }
}
