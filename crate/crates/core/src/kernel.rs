//! Submodules of `Sym_g(F)` as a monomial base plus a finite echelon.
//!
//! Every module handled by the engine is stored as `B + span(E)` where `B` is
//! a monomial module and `E` is a finite list of polynomials in reduced
//! echelon form modulo `B`, closed under multiplication by the `x`-variables.
//! Monomial inputs have `E` empty; a general input of finite colength has
//! `B = m^c Sym_g(F)`. Because every such module has all associated primes
//! inside `m`, membership in the polynomial ring agrees with membership after
//! localizing at `m`.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Subspace;
use crate::monomial::{compositions, enumerate_basis, t_monomials, Monomial, Ring};
use crate::poly::{accumulate, PolyElement};
use crate::scalar::{Field, Scalar};
use crate::staircase::{MonomialIdeal, MonomialModule};

/// Resource limits shared by the engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest colength exponent tried before giving up.
    pub colength_ceiling: u32,
    /// Largest quotient dimension enumerated before declaring it infinite.
    pub max_dim: usize,
    /// Extra truncation degrees added for soundness probes.
    pub trunc_slack: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { colength_ceiling: 64, max_dim: 200_000, trunc_slack: 0 }
    }
}

/// A finite generating list of t-homogeneous elements of common t-degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModulePresentation {
    ring: Ring,
    tdeg: u32,
    gens: Vec<PolyElement>,
}

impl ModulePresentation {
    pub fn new(ring: Ring, tdeg: u32, gens: Vec<PolyElement>) -> Result<Self> {
        for g in &gens {
            ring.check_same(g.ring())?;
            match g.tdeg() {
                None if g.is_zero() => {}
                Some(t) if t == tdeg => {}
                _ => {
                    return Err(Error::Structural(format!(
                        "generator {g} is not t-homogeneous of degree {tdeg}"
                    )))
                }
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(ModulePresentation { ring, tdeg, gens })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn tdeg(&self) -> u32 {
        self.tdeg
    }

    pub fn gens(&self) -> &[PolyElement] {
        &self.gens
    }

    /// True iff every generator is a single term.
    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(PolyElement::is_monomial)
    }
}

/// Reduced echelon form of a finite-dimensional space of polynomials modulo a
/// monomial module: pivot (leading monomial) to monic element.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Echelon {
    rows: BTreeMap<Monomial, PolyElement>,
}

impl Echelon {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> impl Iterator<Item = &PolyElement> {
        self.rows.values()
    }

    /// Normal form of `f` modulo `base + span(self)`.
    pub fn reduce(&self, base: &MonomialModule, f: &PolyElement) -> PolyElement {
        let ring = *f.ring();
        if self.rows.is_empty() {
            let terms: Vec<_> = f.terms().iter().filter(|(m, _)| !base.contains(m)).cloned().collect();
            return PolyElement::from_sorted_terms(ring, terms);
        }
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        let mut hits = Vec::new();
        for (m, c) in f.terms() {
            if base.contains(m) {
                continue;
            }
            if self.rows.contains_key(m) {
                hits.push((m, c));
            } else {
                accumulate(&mut acc, m.clone(), c.clone());
            }
        }
        for (m, c) in hits {
            for (m2, c2) in self.rows[m].terms().iter().skip(1) {
                accumulate(&mut acc, m2.clone(), -(c * c2));
            }
        }
        PolyElement::from_map(ring, acc)
    }

    /// Adds `f`; returns the monic normal form when it was new.
    pub fn insert(&mut self, base: &MonomialModule, f: &PolyElement) -> Option<PolyElement> {
        let w = self.reduce(base, f);
        if w.is_zero() {
            return None;
        }
        let w = w.monic();
        let lead = w.leading().expect("nonzero").0.clone();
        let touched: Vec<Monomial> = self
            .rows
            .range(&lead..)
            .filter(|(_, e)| coefficient(e, &lead).is_some())
            .map(|(k, _)| k.clone())
            .collect();
        for k in touched {
            let e = &self.rows[&k];
            let c = coefficient(e, &lead).expect("present").clone();
            let updated = e.sub(&w.scale(&c)).expect("same ring");
            self.rows.insert(k, updated);
        }
        self.rows.insert(lead, w.clone());
        Some(w)
    }

    /// Inserts `gens` and closes the span under multiplication by the
    /// x-variables modulo `base`.
    pub fn close(&mut self, base: &MonomialModule, gens: impl IntoIterator<Item = PolyElement>, limits: &Limits) -> Result<()> {
        let d = base.ring().d;
        let mut queue: VecDeque<PolyElement> = gens.into_iter().filter_map(|g| self.insert(base, &g)).collect();
        while let Some(v) = queue.pop_front() {
            for i in 0..d {
                if let Some(w) = self.insert(base, &v.mul_x(i)?) {
                    queue.push_back(w);
                }
            }
            if self.rows.len() > limits.max_dim {
                return Err(Error::InfiniteLength(format!(
                    "span exceeds {} dimensions",
                    limits.max_dim
                )));
            }
        }
        Ok(())
    }
}

fn coefficient<'a>(f: &'a PolyElement, m: &Monomial) -> Option<&'a Scalar> {
    let terms = f.terms();
    terms
        .binary_search_by(|(k, _)| m.cmp(k))
        .ok()
        .map(|i| &terms[i].1)
}

/// How a colength exponent was certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ColengthMethod {
    /// Pure powers of every variable in every component.
    Staircase,
    /// Spanning the module modulo `m^{c+1}` and checking all degree-`c`
    /// monomials (exact after localizing at `m`).
    Nakayama,
}

/// Least `c` with `m^c Sym_g(F) ⊆ M`, or `None` for infinite colength.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColengthWitness {
    pub c: Option<u32>,
    pub method: ColengthMethod,
}

/// A submodule of `Sym_g(F)` in base-plus-echelon form.
#[derive(Debug, Clone)]
pub struct Submodule {
    base: MonomialModule,
    ech: Echelon,
}

impl Submodule {
    pub fn monomial(base: MonomialModule) -> Self {
        Submodule { base, ech: Echelon::default() }
    }

    pub fn free(ring: Ring, tdeg: u32) -> Self {
        Self::monomial(MonomialModule::free(ring, tdeg))
    }

    pub fn zero(ring: Ring, tdeg: u32) -> Self {
        Self::monomial(MonomialModule::zero(ring, tdeg))
    }

    /// The ideal `m^c` as a module of t-degree zero.
    pub fn max_ideal_power(ring: Ring, c: u32) -> Self {
        Self::monomial(MonomialModule::max_power_free(ring, 0, c))
    }

    pub fn from_monomials(ring: Ring, tdeg: u32, gens: &[Monomial]) -> Result<Self> {
        Ok(Self::monomial(MonomialModule::from_monomials(ring, tdeg, gens)?))
    }

    /// Builds the module generated by a presentation.
    ///
    /// Monomial presentations are exact; otherwise the colength exponent is
    /// found first and the module is spanned modulo `m^{c + slack}`.
    pub fn from_presentation(pres: &ModulePresentation, limits: &Limits) -> Result<Self> {
        let ring = *pres.ring();
        let g = pres.tdeg();
        if pres.is_monomial() {
            let monos: Vec<Monomial> = pres.gens().iter().map(|p| p.terms()[0].0.clone()).collect();
            return Self::from_monomials(ring, g, &monos);
        }
        let witness = colength_exponent(pres, limits)?;
        let c = witness.c.ok_or_else(|| {
            Error::Regime("non-monomial module of infinite colength".into())
        })?;
        let base = MonomialModule::max_power_free(ring, g, c + limits.trunc_slack);
        let mut ech = Echelon::default();
        ech.close(&base, pres.gens().iter().cloned(), limits)?;
        let mut out = Submodule { base, ech };
        out.absorb_monomials()?;
        Ok(out)
    }

    pub fn ring(&self) -> &Ring {
        self.base.ring()
    }

    pub fn tdeg(&self) -> u32 {
        self.base.tdeg()
    }

    pub fn base(&self) -> &MonomialModule {
        &self.base
    }

    pub fn echelon(&self) -> &Echelon {
        &self.ech
    }

    pub fn is_monomial(&self) -> bool {
        self.ech.is_empty()
    }

    /// The monomial module when the echelon part is empty.
    pub fn as_monomial(&self) -> Option<&MonomialModule> {
        self.is_monomial().then_some(&self.base)
    }

    pub fn reduce(&self, f: &PolyElement) -> PolyElement {
        self.ech.reduce(&self.base, f)
    }

    pub fn contains(&self, f: &PolyElement) -> bool {
        self.reduce(f).is_zero()
    }

    pub fn contains_monomial(&self, m: &Monomial) -> bool {
        if self.base.contains(m) {
            return true;
        }
        !self.ech.is_empty() && self.contains(&PolyElement::monomial(*self.ring(), m.clone()))
    }

    /// A generating set: minimal base generators followed by echelon rows.
    pub fn generators(&self) -> Vec<PolyElement> {
        let ring = *self.ring();
        self.base
            .mingens()
            .into_iter()
            .map(|m| PolyElement::monomial(ring, m))
            .chain(self.ech.rows().cloned())
            .collect()
    }

    fn check(&self, other: &Submodule) -> Result<()> {
        self.ring().check_same(other.ring())?;
        if self.tdeg() != other.tdeg() {
            return Err(Error::Structural(format!(
                "t-degrees {} and {} differ",
                self.tdeg(),
                other.tdeg()
            )));
        }
        Ok(())
    }

    pub fn is_subset(&self, other: &Submodule) -> bool {
        if self.check(other).is_err() {
            return false;
        }
        if self.base.is_subset(&other.base) {
            return self.ech.rows().all(|e| other.contains(e));
        }
        self.base.mingens().iter().all(|m| other.contains_monomial(m))
            && self.ech.rows().all(|e| other.contains(e))
    }

    pub fn equals(&self, other: &Submodule) -> bool {
        self.is_subset(other) && other.is_subset(self)
    }

    pub fn add(&self, other: &Submodule) -> Result<Submodule> {
        self.check(other)?;
        let base = self.base.add(&other.base)?;
        let mut ech = Echelon::default();
        for e in self.ech.rows().chain(other.ech.rows()) {
            ech.insert(&base, e);
        }
        let mut out = Submodule { base, ech };
        out.absorb_monomials()?;
        Ok(out)
    }

    /// Adds a single element.
    pub fn add_element(&self, f: &PolyElement, limits: &Limits) -> Result<Submodule> {
        let mut out = self.clone();
        out.ech.close(&out.base, [f.clone()], limits)?;
        out.absorb_monomials()?;
        Ok(out)
    }

    pub fn mul(&self, other: &Submodule, limits: &Limits) -> Result<Submodule> {
        self.ring().check_same(other.ring())?;
        let base = self.base.mul(&other.base)?;
        if self.ech.is_empty() && other.ech.is_empty() {
            return Ok(Submodule::monomial(base));
        }
        let ring = *self.ring();
        let a_base: Vec<PolyElement> = self.base.mingens().into_iter().map(|m| PolyElement::monomial(ring, m)).collect();
        let b_base: Vec<PolyElement> = other.base.mingens().into_iter().map(|m| PolyElement::monomial(ring, m)).collect();
        let mut products = Vec::new();
        for e in self.ech.rows() {
            for b in b_base.iter().chain(other.ech.rows()) {
                products.push(e.mul(b)?);
            }
        }
        for a in &a_base {
            for e in other.ech.rows() {
                products.push(a.mul(e)?);
            }
        }
        let mut ech = Echelon::default();
        ech.close(&base, products, limits)?;
        let mut out = Submodule { base, ech };
        out.absorb_monomials()?;
        Ok(out)
    }

    /// `M^n` by repeated multiplication; `M^0` is the unit ideal.
    pub fn pow(&self, n: u32, limits: &Limits) -> Result<Submodule> {
        let mut acc = Submodule::free(*self.ring(), 0);
        for _ in 0..n {
            acc = acc.mul(self, limits)?;
        }
        Ok(acc)
    }

    /// Moves monomials that lie in the module from the echelon into the base.
    pub fn absorb_monomials(&mut self) -> Result<()> {
        if self.ech.is_empty() {
            return Ok(());
        }
        let ring = *self.ring();
        let mut found = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for e in self.ech.rows() {
            for (m, _) in e.terms() {
                if seen.insert(m.clone()) && self.contains(&PolyElement::monomial(ring, m.clone())) {
                    found.push(m.clone());
                }
            }
        }
        if found.is_empty() {
            return Ok(());
        }
        let extra = MonomialModule::from_monomials(ring, self.tdeg(), &found)?;
        let base = self.base.add(&extra)?;
        let mut ech = Echelon::default();
        for e in self.ech.rows() {
            ech.insert(&base, e);
        }
        self.base = base;
        self.ech = ech;
        Ok(())
    }

    /// Lifts of a basis of `self / floor`; requires `floor ⊆ self` of finite
    /// colength in `self`.
    pub fn quotient_basis(&self, floor: &Submodule, limits: &Limits) -> Result<Vec<PolyElement>> {
        self.check(floor)?;
        let ring = *self.ring();
        let mut ech = floor.ech.clone();
        let mut basis = Vec::new();
        let monos = self.base.monomials_outside(&floor.base, limits.max_dim)?;
        for v in monos
            .into_iter()
            .map(|m| PolyElement::monomial(ring, m))
            .chain(self.ech.rows().cloned())
        {
            if let Some(w) = ech.insert(&floor.base, &v) {
                basis.push(w);
            }
        }
        Ok(basis)
    }

    /// `ℓ(self / sub)`; checks `sub ⊆ self`.
    pub fn length_over(&self, sub: &Submodule, limits: &Limits) -> Result<usize> {
        if !sub.is_subset(self) {
            return Err(Error::NotSubpair("the smaller module is not contained in the larger".into()));
        }
        if self.base == sub.base {
            return Ok(self.ech.len() - sub.ech.len());
        }
        if self.ech.is_empty() && sub.ech.is_empty() {
            return self.base.length_over(&sub.base, limits.max_dim);
        }
        let floor = self.base.intersect(&sub.base)?;
        let top = self.base.monomials_outside(&floor, limits.max_dim)?.len() + self.ech.len();
        let bottom = sub.base.monomials_outside(&floor, limits.max_dim)?.len() + sub.ech.len();
        Ok(top - bottom)
    }

    /// `m · self`.
    pub fn max_ideal_times(&self, limits: &Limits) -> Result<Submodule> {
        Submodule::max_ideal_power(*self.ring(), 1).mul(self, limits)
    }

    /// Lifts of a basis of `self / m·self` (a minimal generating set).
    pub fn minimal_generators(&self, limits: &Limits) -> Result<Vec<PolyElement>> {
        if self.ech.is_empty() {
            let ring = *self.ring();
            return Ok(self.base.mingens().into_iter().map(|m| PolyElement::monomial(ring, m)).collect());
        }
        let mm = self.max_ideal_times(limits)?;
        let mut ech = mm.ech.clone();
        let mut out = Vec::new();
        for g in self.generators() {
            if ech.insert(&mm.base, &g).is_some() {
                out.push(g);
            }
        }
        Ok(out)
    }

    /// `μ(self) = dim self / m·self`.
    pub fn num_generators(&self, limits: &Limits) -> Result<usize> {
        if self.ech.is_empty() {
            return Ok(self.base.num_gens());
        }
        Ok(self.minimal_generators(limits)?.len())
    }

    pub fn intersect(&self, other: &Submodule, limits: &Limits) -> Result<Submodule> {
        self.check(other)?;
        if self.ech.is_empty() && other.ech.is_empty() {
            return Ok(Submodule::monomial(self.base.intersect(&other.base)?));
        }
        let floor = Submodule::monomial(self.base.intersect(&other.base)?);
        let one = PolyElement::one(*self.ring());
        colon_into_frame(other, &[one], self, &floor, limits)
    }

    /// Canonical text for reports: sorted minimal monomial generators, then
    /// echelon rows.
    pub fn render_generators(&self) -> Vec<String> {
        self.generators().iter().map(PolyElement::render).collect()
    }
}

/// Least `c` with `m^c Sym_g(F) ⊆ M` for the module generated by `pres`.
pub fn colength_exponent(pres: &ModulePresentation, limits: &Limits) -> Result<ColengthWitness> {
    let ring = *pres.ring();
    let g = pres.tdeg();
    if pres.is_monomial() {
        let monos: Vec<Monomial> = pres.gens().iter().map(|p| p.terms()[0].0.clone()).collect();
        let m = MonomialModule::from_monomials(ring, g, &monos)?;
        return Ok(ColengthWitness { c: m.colength_exponent(), method: ColengthMethod::Staircase });
    }
    let tmons = t_monomials(&ring, g);
    for c in 0..=limits.colength_ceiling {
        let base = MonomialModule::max_power_free(ring, g, c + 1);
        let mut ech = Echelon::default();
        ech.close(&base, pres.gens().iter().cloned(), limits)?;
        let covered = tmons.iter().all(|t| {
            compositions(ring.d, c).iter().all(|x| {
                let m = Monomial::new(x, t).expect("small exponents");
                ech.reduce(&base, &PolyElement::monomial(ring, m)).is_zero()
            })
        });
        if covered {
            return Ok(ColengthWitness { c: Some(c), method: ColengthMethod::Nakayama });
        }
    }
    Err(Error::UndecidedColength { ceiling: limits.colength_ceiling })
}

/// Left kernel of a list of sparse rows: all `λ` with `Σ λ_j row_j = 0`.
pub fn left_kernel<K: Ord + Clone>(field: Field, rows: Vec<BTreeMap<K, Scalar>>) -> Vec<Vec<Scalar>> {
    let n = rows.len();
    let mut pivots: BTreeMap<K, (BTreeMap<K, Scalar>, Vec<Scalar>)> = BTreeMap::new();
    let mut kernel = Vec::new();
    for (j, mut v) in rows.into_iter().enumerate() {
        let mut tag = vec![field.zero(); n];
        tag[j] = field.one();
        loop {
            let Some((lead, c)) = v.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else {
                kernel.push(tag);
                break;
            };
            match pivots.get(&lead) {
                Some((pv, pt)) => {
                    for (k, x) in pv {
                        let entry = v.entry(k.clone()).or_insert_with(|| field.zero());
                        *entry = &*entry - &(&c * x);
                        if entry.is_zero() {
                            v.remove(k);
                        }
                    }
                    for (t, x) in tag.iter_mut().zip(pt) {
                        if !x.is_zero() {
                            *t = &*t - &(&c * x);
                        }
                    }
                }
                None => {
                    let inv = c.inv().expect("nonzero");
                    for x in v.values_mut() {
                        *x = &*x * &inv;
                    }
                    for x in tag.iter_mut() {
                        *x = &*x * &inv;
                    }
                    pivots.insert(lead, (v, tag));
                    break;
                }
            }
        }
    }
    kernel
}

/// `(target : elems) ∩ frame`, computed as `floor` plus the kernel of
/// `λ ↦ (Σ λ_j w_j)·e mod target` over lifts `w_j` of a basis of
/// `frame / floor`.
pub fn colon_into_frame(
    target: &Submodule,
    elems: &[PolyElement],
    frame: &Submodule,
    floor: &Submodule,
    limits: &Limits,
) -> Result<Submodule> {
    let ring = *frame.ring();
    target.ring().check_same(&ring)?;
    if !floor.is_subset(frame) {
        return Err(Error::NotSubpair("floor is not contained in the frame".into()));
    }
    for e in elems {
        if e.tdeg().is_some_and(|t| t + frame.tdeg() != target.tdeg()) {
            return Err(Error::Structural("element degrees do not match the target".into()));
        }
    }
    for f in floor.generators() {
        for e in elems {
            if !target.contains(&f.mul(e)?) {
                return Err(Error::Structural(format!(
                    "floor element {f} times {e} leaves the target"
                )));
            }
        }
    }
    let basis = frame.quotient_basis(floor, limits)?;
    let mut rows = Vec::with_capacity(basis.len());
    for w in &basis {
        let mut row: BTreeMap<(usize, Monomial), Scalar> = BTreeMap::new();
        for (i, e) in elems.iter().enumerate() {
            for (m, c) in target.reduce(&w.mul(e)?).into_terms() {
                row.insert((i, m), c);
            }
        }
        rows.push(row);
    }
    let kernel = left_kernel(ring.field, rows);
    let mut ech = floor.ech.clone();
    for lambda in kernel {
        let mut acc = BTreeMap::new();
        for (c, w) in lambda.iter().zip(&basis) {
            if c.is_zero() {
                continue;
            }
            for (m, x) in w.terms() {
                accumulate(&mut acc, m.clone(), c * x);
            }
        }
        ech.insert(&floor.base, &PolyElement::from_map(ring, acc));
    }
    let mut out = Submodule { base: floor.base.clone(), ech };
    out.absorb_monomials()?;
    Ok(out)
}

/// Provenance of a truncation bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceCertificate {
    pub colength: Option<u32>,
    pub tag: String,
}

/// The image of `M^n` in `Sym_{gn}(F) / m^D Sym_{gn}(F)` as a dense subspace
/// over the canonical monomial coordinates.
#[derive(Debug, Clone)]
pub struct GradedPiece {
    pub ring: Ring,
    pub tdeg: u32,
    pub trunc: u32,
    pub coords: Vec<Monomial>,
    pub space: Subspace,
    pub certificate: PieceCertificate,
}

impl GradedPiece {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Whether a polynomial's truncation lies in the piece.
    pub fn contains(&self, f: &PolyElement) -> Result<bool> {
        self.space.contains(&dense(&self.coords, f, self.trunc, self.ring.field))
    }
}

fn dense(coords: &[Monomial], f: &PolyElement, trunc: u32, field: Field) -> Vec<Scalar> {
    let mut v = vec![field.zero(); coords.len()];
    for (m, c) in f.terms() {
        if m.xdeg() < trunc {
            let i = coords.binary_search(m).expect("coordinate present");
            v[i] = c.clone();
        }
    }
    v
}

fn truncate(f: &PolyElement, trunc: u32) -> PolyElement {
    let terms = f.terms().iter().filter(|(m, _)| m.xdeg() < trunc).cloned().collect();
    PolyElement::from_sorted_terms(*f.ring(), terms)
}

fn sparse_from_dense(ring: Ring, coords: &[Monomial], v: &[Scalar]) -> PolyElement {
    let terms = coords
        .iter()
        .zip(v)
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(m, c)| (m.clone(), c.clone()))
        .collect();
    PolyElement::from_sorted_terms(ring, terms)
}

/// Dense truncated model of the t-degree `g·n` piece of `M^n`, built by
/// per-step row reduction of spanning sets.
pub fn piece(pres: &ModulePresentation, n: u32, trunc: u32, limits: &Limits) -> Result<GradedPiece> {
    if n == 0 || trunc == 0 {
        return Err(Error::Precondition("piece needs n >= 1 and D >= 1".into()));
    }
    let ring = *pres.ring();
    let g = pres.tdeg();
    let shifted: Vec<PolyElement> = {
        let mut out = Vec::new();
        for gen in pres.gens() {
            for xd in 0..trunc {
                for x in compositions(ring.d, xd) {
                    let m = Monomial::new(&x, &vec![0; ring.p])?;
                    let f = truncate(&gen.mul_monomial(&m)?, trunc);
                    if !f.is_zero() {
                        out.push(f);
                    }
                }
            }
        }
        out
    };
    let mut coords = enumerate_basis(&ring, g, trunc);
    let mut space = span_dense(&coords, &shifted, trunc, ring.field)?;
    for k in 2..=n {
        let prev: Vec<PolyElement> = space
            .basis()
            .iter()
            .map(|v| sparse_from_dense(ring, &coords, v))
            .collect();
        coords = enumerate_basis(&ring, g * k, trunc);
        let mut current = Vec::new();
        for p in &prev {
            for gen in pres.gens() {
                let f = truncate(&p.mul(gen)?, trunc);
                if !f.is_zero() {
                    current.push(f);
                }
            }
        }
        if current.len() > limits.max_dim {
            return Err(Error::InfiniteLength("spanning set too large".into()));
        }
        space = span_dense(&coords, &current, trunc, ring.field)?;
    }
    let colength = match colength_exponent(pres, limits) {
        Ok(w) => w.c,
        Err(_) => None,
    };
    Ok(GradedPiece {
        ring,
        tdeg: g * n,
        trunc,
        coords,
        space,
        certificate: PieceCertificate {
            colength,
            tag: match colength {
                Some(c) if c * n < trunc => format!("m^{} contained in the power, D = {trunc}", c * n),
                _ => format!("truncated at D = {trunc} without a capture bound"),
            },
        },
    })
}

fn span_dense(coords: &[Monomial], gens: &[PolyElement], trunc: u32, field: Field) -> Result<Subspace> {
    let rows = gens.iter().map(|f| dense(coords, f, trunc, field)).collect();
    Subspace::span(field, coords.len(), rows)
}

/// `ℓ(big^n / small^n)` through the dense truncated route; needs finite
/// colength of `small`.
pub fn length_of_quotient_dense(
    big: &ModulePresentation,
    small: &ModulePresentation,
    n: u32,
    limits: &Limits,
) -> Result<usize> {
    let c = colength_exponent(small, limits)?
        .c
        .ok_or_else(|| Error::InfiniteLength("smaller module has infinite colength".into()))?;
    let trunc = c * n + 1 + limits.trunc_slack;
    let pb = piece(big, n, trunc, limits)?;
    let ps = piece(small, n, trunc, limits)?;
    if !ps.space.is_subspace_of(&pb.space)? {
        return Err(Error::NotSubpair("small^n is not contained in big^n".into()));
    }
    Ok(pb.dim() - ps.dim())
}

/// `ℓ(big^n / small^n)` through the sparse engine.
pub fn length_of_quotient(
    big: &ModulePresentation,
    small: &ModulePresentation,
    n: u32,
    limits: &Limits,
) -> Result<usize> {
    let b = Submodule::from_presentation(big, limits)?.pow(n, limits)?;
    let s = Submodule::from_presentation(small, limits)?.pow(n, limits)?;
    b.length_over(&s, limits)
}

/// The ideal `m^c` as a presentation (handy for dense cross-checks).
pub fn max_ideal_presentation(ring: Ring, tdeg: u32, c: u32) -> ModulePresentation {
    let gens = t_monomials(&ring, tdeg)
        .into_iter()
        .flat_map(|t| {
            compositions(ring.d, c)
                .into_iter()
                .map(move |x| PolyElement::monomial(ring, Monomial::new(&x, &t).expect("small")))
        })
        .collect();
    ModulePresentation { ring, tdeg, gens }
}

/// Convenience for tests and callers holding an ideal as raw exponents.
pub fn ideal_from_exponents(ring: Ring, gens: &[&[u32]]) -> Result<Submodule> {
    let d = ring.d;
    let ideal = MonomialIdeal::new(d, gens.iter().map(|g| smallvec::SmallVec::from_slice(g)));
    Ok(Submodule::monomial(MonomialModule::from_components(
        ring,
        0,
        [(smallvec::SmallVec::from_elem(0, ring.p), ideal)],
    )))
}

/// A monomial ideal of `R` viewed as a submodule of `F = R^1`.
pub fn ideal_module_from_exponents(ring: Ring, gens: &[&[u32]]) -> Result<Submodule> {
    if ring.p != 1 {
        return Err(Error::DimensionMismatch(format!("an ideal needs rank 1, not {}", ring.p)));
    }
    let ideal = MonomialIdeal::new(ring.d, gens.iter().map(|g| smallvec::SmallVec::from_slice(g)));
    Ok(Submodule::monomial(MonomialModule::from_components(
        ring,
        1,
        [(smallvec::SmallVec::from_elem(1, 1), ideal)],
    )))
}
