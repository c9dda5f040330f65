//! Closures, reductions and the analytic spread.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fit::{fit_extending, FittedPolynomial, LengthKind, NumericalFunction};
use crate::kernel::{colon_into_frame, Echelon, Limits, ModulePresentation, Submodule};
use crate::monomial::{Exps, Monomial, Ring};
use crate::poly::PolyElement;
use crate::staircase::{MonomialIdeal, MonomialModule};

/// Default bound on the reduction exponent `r` tried by `is_reduction`.
pub const DEFAULT_RMAX: u32 = 12;

/// Default number of random draws for a minimal reduction.
pub const DEFAULT_ATTEMPTS: usize = 8;

/// Default bound on `r` for the power-test closure oracle.
pub const DEFAULT_POWER_TEST_RMAX: u32 = 8;

/// Lazily computed powers `M^0, M^1, …` of one module.
#[derive(Debug, Clone)]
pub struct Powers {
    module: Submodule,
    cache: Vec<Submodule>,
    limits: Limits,
}

impl Powers {
    pub fn new(module: Submodule, limits: Limits) -> Self {
        let unit = Submodule::free(*module.ring(), 0);
        Powers { module, cache: vec![unit], limits }
    }

    pub fn module(&self) -> &Submodule {
        &self.module
    }

    pub fn get(&mut self, n: u32) -> Result<&Submodule> {
        while self.cache.len() <= n as usize {
            let next = self.cache.last().expect("nonempty").mul(&self.module, &self.limits)?;
            self.cache.push(next);
        }
        Ok(&self.cache[n as usize])
    }
}

/// `M^sat` with the stabilization index of `(M : m^k)`.
#[derive(Debug, Clone)]
pub struct Saturation {
    pub module: Submodule,
    pub index: u32,
}

pub fn saturate(m: &Submodule, limits: &Limits) -> Result<Saturation> {
    if let Some(base) = m.as_monomial() {
        let (s, index) = base.saturate();
        return Ok(Saturation { module: Submodule::monomial(s), index });
    }
    if m.base().colength_exponent().is_none() {
        return Err(Error::Regime("saturation of a non-monomial module of infinite colength".into()));
    }
    let ring = *m.ring();
    let free = Submodule::free(ring, m.tdeg());
    let mut index = 0;
    loop {
        let power = Submodule::max_ideal_power(ring, index).mul(&free, limits)?;
        if power.is_subset(m) {
            return Ok(Saturation { module: free, index });
        }
        index += 1;
    }
}

/// Ratliff-Rush closure `∪ (M^{n+1} : M^n)`.
#[derive(Debug, Clone)]
pub struct RatliffRush {
    pub module: Submodule,
    /// First `n` of the run of equal colon terms.
    pub index: u32,
    /// `ℓ((M^{n+1} : M^n) / M)` for each computed `n`.
    pub chain: Vec<usize>,
}

/// Default confirmation window for the Ratliff-Rush union.
pub const RR_WINDOW: u32 = 2;

pub fn ratliff_rush(m: &Submodule, nmax: u32, window: u32, limits: &Limits) -> Result<RatliffRush> {
    let ring = *m.ring();
    let finite = m.base().colength_exponent().is_some();
    if !m.is_monomial() && !finite {
        return Err(Error::Regime("Ratliff-Rush closure needs a monomial module or finite colength".into()));
    }
    let mut powers = Powers::new(m.clone(), *limits);
    let mut terms: Vec<Submodule> = Vec::new();
    let mut chain = Vec::new();
    let need = window as usize + 2;
    for n in 1..=nmax {
        let lower = powers.get(n)?.clone();
        let upper = powers.get(n + 1)?.clone();
        let term = match (upper.as_monomial(), lower.as_monomial()) {
            (Some(u), Some(l)) => Submodule::monomial(u.colon_module(l)?),
            _ => {
                let frame = Submodule::free(ring, m.tdeg());
                let elems = lower.minimal_generators(limits)?;
                colon_into_frame(&upper, &elems, &frame, m, limits)?
            }
        };
        chain.push(term.length_over(m, limits).unwrap_or(usize::MAX));
        terms.push(term);
        let k = terms.len();
        if k >= need && terms[k - need..].windows(2).all(|w| w[0].equals(&w[1])) {
            return Ok(RatliffRush {
                module: terms.pop().expect("nonempty"),
                index: (k - need + 1) as u32,
                chain,
            });
        }
    }
    Err(Error::UnstableUnion { n_max: nmax as usize, partial: chain })
}

/// `(M̃)^n = M^n` for every `n` in the range.
pub fn ratliff_rush_power_stable(m: &Submodule, rr: &Submodule, ns: std::ops::RangeInclusive<u32>, limits: &Limits) -> Result<bool> {
    let mut a = Powers::new(m.clone(), *limits);
    let mut b = Powers::new(rr.clone(), *limits);
    for n in ns {
        if !a.get(n)?.clone().equals(b.get(n)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn determinant(mat: &[Vec<PolyElement>], ring: Ring) -> Result<PolyElement> {
    let k = mat.len();
    if k == 1 {
        return Ok(mat[0][0].clone());
    }
    let mut acc = PolyElement::zero(ring);
    for col in 0..k {
        if mat[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<PolyElement>> = mat[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = mat[0][col].mul(&determinant(&minor, ring)?)?;
        acc = if col % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
    }
    Ok(acc)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Coordinates of a t-degree-one element in the basis `t_1..t_p`.
fn coordinates(f: &PolyElement) -> Result<Vec<PolyElement>> {
    let ring = *f.ring();
    let mut parts = vec![Vec::new(); ring.p];
    for (m, c) in f.terms() {
        let j = m.texp().iter().position(|&e| e == 1).expect("t-degree one");
        parts[j].push((Monomial::new(m.xexp(), &vec![0; ring.p])?, c.clone()));
    }
    parts.into_iter().map(|t| PolyElement::from_terms(ring, t)).collect()
}

/// `I(M) = Fitt_0(F/M)`: the ideal of maximal minors of a generator matrix.
pub fn fitting_ideal(m: &Submodule, limits: &Limits) -> Result<Submodule> {
    if m.tdeg() != 1 {
        return Err(Error::Structural("Fitting ideal needs a submodule of F".into()));
    }
    let ring = *m.ring();
    let gens = m.minimal_generators(limits)?;
    if gens.len() < ring.p {
        return Err(Error::RankDeficient(format!(
            "{} generators for rank {}",
            gens.len(),
            ring.p
        )));
    }
    let cols: Vec<Vec<PolyElement>> = gens.iter().map(coordinates).collect::<Result<_>>()?;
    let mut minors = Vec::new();
    for s in subsets(cols.len(), ring.p) {
        let mat: Vec<Vec<PolyElement>> = (0..ring.p).map(|i| s.iter().map(|&j| cols[j][i].clone()).collect()).collect();
        let det = determinant(&mat, ring)?;
        if !det.is_zero() {
            minors.push(det);
        }
    }
    if minors.is_empty() {
        return Err(Error::RankDeficient("all maximal minors vanish".into()));
    }
    Submodule::from_presentation(&ModulePresentation::new(ring, 0, minors)?, limits)
}

/// Phase-one simplex with Bland's rule: is `{x ≥ 0 : A x = b}` nonempty?
/// Requires `b ≥ 0`.
pub fn feasible(a: &[Vec<BigRational>], b: &[BigRational]) -> bool {
    let rows = a.len();
    if rows == 0 {
        return true;
    }
    let nv = a[0].len();
    let width = nv + rows + 1;
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(rows + 1);
    for (i, row) in a.iter().enumerate() {
        let mut r = row.clone();
        r.extend((0..rows).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
        r.push(b[i].clone());
        t.push(r);
    }
    let mut basis: Vec<usize> = (nv..nv + rows).collect();
    let mut obj = vec![BigRational::zero(); width];
    for j in nv..nv + rows {
        obj[j] = BigRational::one();
    }
    for r in &t {
        for (o, x) in obj.iter_mut().zip(r) {
            *o -= x;
        }
    }
    loop {
        let Some(enter) = (0..nv + rows).find(|&j| obj[j].is_negative()) else { break };
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, r) in t.iter().enumerate() {
            if r[enter].is_positive() {
                let ratio = &r[width - 1] / &r[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else { break };
        let inv = t[pr][enter].recip();
        for x in t[pr].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = t[pr].clone();
        for (i, r) in t.iter_mut().enumerate() {
            if i != pr && !r[enter].is_zero() {
                let f = r[enter].clone();
                for (x, p) in r.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for (x, p) in obj.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
        basis[pr] = enter;
    }
    obj[width - 1].is_zero()
}

fn rat(v: u32) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Whether `b ∈ conv(gens) + R_{≥0}^d`, by exact linear feasibility.
pub fn in_newton_polyhedron(b: &[u32], gens: &[Exps]) -> bool {
    if gens.is_empty() {
        return false;
    }
    let d = b.len();
    let m = gens.len();
    let mut a = Vec::with_capacity(d + 1);
    for k in 0..d {
        let mut row: Vec<BigRational> = gens.iter().map(|g| rat(g[k])).collect();
        row.extend((0..d).map(|j| if j == k { BigRational::one() } else { BigRational::zero() }));
        a.push(row);
    }
    let mut last = vec![BigRational::one(); m];
    last.extend((0..d).map(|_| BigRational::zero()));
    a.push(last);
    let mut rhs: Vec<BigRational> = b.iter().map(|&x| rat(x)).collect();
    rhs.push(BigRational::one());
    feasible(&a, &rhs)
}

/// Oracle: `x^{r b} ∈ I^r` for some `r ≤ rmax`.
pub fn in_closure_by_powers(b: &[u32], gens: &[Exps], rmax: u32) -> bool {
    for r in 1..=rmax {
        let target: Vec<u32> = b.iter().map(|x| x * r).collect();
        let mut states: Vec<Vec<u32>> = vec![vec![0; b.len()]];
        for _ in 0..r {
            let mut next: Vec<Vec<u32>> = Vec::new();
            for s in &states {
                for g in gens {
                    let v: Vec<u32> = s.iter().zip(g.iter()).map(|(x, y)| x + y).collect();
                    if v.iter().zip(&target).all(|(x, t)| x <= t) {
                        next.push(v);
                    }
                }
            }
            next.sort();
            next.dedup();
            let minimal: Vec<Vec<u32>> = next
                .iter()
                .filter(|v| !next.iter().any(|w| w != *v && w.iter().zip(v.iter()).all(|(a, b)| a <= b)))
                .cloned()
                .collect();
            states = minimal;
            if states.is_empty() {
                break;
            }
        }
        if !states.is_empty() {
            return true;
        }
    }
    false
}

fn box_points(bounds: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &b in bounds {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=b).map(move |e| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    out
}

/// Integral closure of a monomial ideal via membership `member(point, gens)`.
pub fn ideal_closure_with(ideal: &MonomialIdeal, member: impl Fn(&[u32], &[Exps]) -> bool) -> MonomialIdeal {
    let d = ideal.nvars();
    if ideal.is_zero() {
        return ideal.clone();
    }
    let bounds: Vec<u32> = (0..d).map(|k| ideal.gens().iter().map(|g| g[k]).max().unwrap_or(0)).collect();
    let found = box_points(&bounds)
        .into_iter()
        .filter(|p| ideal.contains(p) || member(p, ideal.gens()))
        .map(Exps::from_vec);
    MonomialIdeal::new(d, found)
}

/// `M̄` for a monomial module: componentwise Newton-polyhedron closure.
pub fn integral_closure_monomial(m: &Submodule) -> Result<Submodule> {
    let base = m
        .as_monomial()
        .ok_or_else(|| Error::Regime("integral closure needs a monomial module".into()))?;
    Ok(Submodule::monomial(closure_components(base, in_newton_polyhedron)))
}

/// The same closure decided by the power test (cross-check oracle).
pub fn integral_closure_by_powers(m: &Submodule, rmax: u32) -> Result<Submodule> {
    let base = m
        .as_monomial()
        .ok_or_else(|| Error::Regime("integral closure needs a monomial module".into()))?;
    Ok(Submodule::monomial(closure_components(base, |p, g| in_closure_by_powers(p, g, rmax))))
}

fn closure_components(base: &MonomialModule, member: impl Fn(&[u32], &[Exps]) -> bool + Copy) -> MonomialModule {
    let comps = base
        .components()
        .iter()
        .map(|(t, i)| (t.clone(), ideal_closure_with(i, member)))
        .collect::<Vec<_>>();
    MonomialModule::from_components(*base.ring(), base.tdeg(), comps)
}

/// `q(M) = M̄ ∩ M^sat`.
pub fn relative_integral_closure(m: &Submodule, limits: &Limits) -> Result<Submodule> {
    let closure = integral_closure_monomial(m)?;
    let sat = saturate(m, limits)?.module;
    closure.intersect(&sat, limits)
}

/// Least `r ≤ rmax` with `N M^r + m M^{r+1} = M^{r+1}`, which by Nakayama is
/// `N M^r = M^{r+1}` after localizing.
pub fn is_reduction(elems: &[PolyElement], powers: &mut Powers, rmax: u32, limits: &Limits) -> Result<Option<u32>> {
    let m1 = powers.get(1)?.clone();
    for e in elems {
        if !m1.contains(e) {
            return Err(Error::Structural(format!("{e} is not in the module")));
        }
    }
    for r in 0..=rmax {
        if spans_top(elems, powers, r, limits)? {
            if !spans_top(elems, powers, r + 1, limits)? {
                return Err(Error::Structural("reduction equality did not persist".into()));
            }
            return Ok(Some(r));
        }
    }
    Ok(None)
}

fn spans_top(elems: &[PolyElement], powers: &mut Powers, r: u32, limits: &Limits) -> Result<bool> {
    let lower = powers.get(r)?.minimal_generators(limits)?;
    let upper = powers.get(r + 1)?.clone();
    let mu = upper.num_generators(limits)?;
    if elems.len() * lower.len() < mu {
        return Ok(false);
    }
    let mm = upper.max_ideal_times(limits)?;
    let mut ech: Echelon = mm.echelon().clone();
    let mut rank = 0;
    for e in elems {
        for g in &lower {
            if ech.insert(mm.base(), &e.mul(g)?).is_some() {
                rank += 1;
                if rank == mu {
                    return Ok(true);
                }
            }
        }
    }
    Ok(rank == mu)
}

/// Analytic spread with its fiber table.
#[derive(Debug, Clone)]
pub struct SpreadReport {
    pub s: usize,
    pub table: NumericalFunction,
    pub fit: FittedPolynomial,
}

pub fn analytic_spread(m: &Submodule, nmax: u32, window: usize, limits: &Limits) -> Result<SpreadReport> {
    let mut powers = Powers::new(m.clone(), *limits);
    let hard = nmax.max(4) + 8;
    let res = fit_extending(LengthKind::Fiber, nmax, hard, window, |n| {
        Ok(powers.get(n)?.num_generators(limits)? as u64)
    });
    match res {
        Ok((table, fit)) => Ok(SpreadReport { s: (fit.degree + 1).max(0) as usize, table, fit }),
        Err(Error::UnstableFit(msg)) => Err(Error::UndecidedSpread(msg)),
        Err(e) => Err(e),
    }
}

/// A verified reduction `(x_1..x_k)` of `M^{n_0}`.
#[derive(Debug, Clone)]
pub struct ReductionWitness {
    pub elems: Vec<PolyElement>,
    pub n0: u32,
    pub r: u32,
    pub attempts: usize,
    pub small_field: bool,
}

/// Draws `count` random combinations of minimal generators of `M^{n_0}` until
/// they form a reduction.
#[allow(clippy::too_many_arguments)]
pub fn minimal_reduction<R: Rng + ?Sized>(
    m: &Submodule,
    n0: u32,
    count: usize,
    spread: usize,
    rng: &mut R,
    attempts: usize,
    rmax: u32,
    limits: &Limits,
) -> Result<ReductionWitness> {
    if count < spread {
        return Err(Error::Precondition(format!(
            "{count} elements cannot reduce a module of analytic spread {spread}"
        )));
    }
    let ring = *m.ring();
    let mn = Powers::new(m.clone(), *limits).get(n0)?.clone();
    let gens = mn.minimal_generators(limits)?;
    let mut powers = Powers::new(mn, *limits);
    for attempt in 1..=attempts {
        let elems: Vec<PolyElement> = (0..count)
            .map(|_| {
                gens.iter().fold(PolyElement::zero(ring), |acc, g| {
                    acc.add(&g.scale(&ring.field.random(rng))).expect("same ring")
                })
            })
            .collect();
        if elems.iter().any(PolyElement::is_zero) {
            continue;
        }
        if let Some(r) = is_reduction(&elems, &mut powers, rmax, limits)? {
            return Ok(ReductionWitness {
                elems,
                n0,
                r,
                attempts: attempt,
                small_field: !ring.field.is_large(),
            });
        }
    }
    Err(Error::Genericity {
        attempts,
        hint: "use a larger field or a larger n0".into(),
    })
}

/// Records of the monomial closure oracles for reports.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClosureAgreement {
    pub lp_generators: Vec<String>,
    pub power_generators: Vec<String>,
    pub agree: bool,
}

pub fn closure_agreement(m: &Submodule, rmax: u32) -> Result<ClosureAgreement> {
    let lp = integral_closure_monomial(m)?;
    let pw = integral_closure_by_powers(m, rmax)?;
    Ok(ClosureAgreement {
        lp_generators: lp.render_generators(),
        power_generators: pw.render_generators(),
        agree: lp.equals(&pw),
    })
}
