//! Monomial ideals of `k[x_1..x_d]` and monomial submodules of `Sym_g(F)`.
//!
//! A monomial submodule of t-degree `g` is a family of monomial ideals, one per
//! t-monomial of degree `g`; products, sums, intersections and colons by
//! monomials act componentwise, so this regime needs no truncation.

use std::collections::{BTreeMap, HashSet, VecDeque};

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::monomial::{compositions, t_monomials, Exps, Monomial, Ring};

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn deg(a: &[u32]) -> u32 {
    a.iter().sum()
}

fn canonical_cmp(a: &Exps, b: &Exps) -> std::cmp::Ordering {
    deg(a).cmp(&deg(b)).then_with(|| b.cmp(a))
}

/// Keeps the divisibility-minimal elements, in canonical order.
fn minimize(mut gens: Vec<Exps>) -> Vec<Exps> {
    gens.sort_by(canonical_cmp);
    gens.dedup();
    let mut kept: Vec<Exps> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| divides(k, &g)) {
            kept.push(g);
        }
    }
    kept
}

/// A monomial ideal held by its minimal generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    d: usize,
    gens: Vec<Exps>,
}

impl MonomialIdeal {
    pub fn new(d: usize, gens: impl IntoIterator<Item = Exps>) -> Self {
        let gens: Vec<Exps> = gens.into_iter().collect();
        debug_assert!(gens.iter().all(|g| g.len() == d));
        MonomialIdeal { d, gens: minimize(gens) }
    }

    pub fn zero(d: usize) -> Self {
        MonomialIdeal { d, gens: Vec::new() }
    }

    pub fn unit(d: usize) -> Self {
        MonomialIdeal { d, gens: vec![SmallVec::from_elem(0, d)] }
    }

    /// The power `m^c` of the maximal ideal.
    pub fn max_power(d: usize, c: u32) -> Self {
        MonomialIdeal { d, gens: minimize(compositions(d, c)) }
    }

    pub fn nvars(&self) -> usize {
        self.d
    }

    pub fn gens(&self) -> &[Exps] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| deg(g) == 0)
    }

    pub fn contains(&self, a: &[u32]) -> bool {
        self.gens.iter().any(|g| divides(g, a))
    }

    pub fn is_subset(&self, other: &MonomialIdeal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    pub fn add(&self, other: &MonomialIdeal) -> MonomialIdeal {
        MonomialIdeal::new(self.d, self.gens.iter().chain(&other.gens).cloned())
    }

    pub fn mul(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        let mut out = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                out.push(add_exps(a, b)?);
            }
        }
        Ok(MonomialIdeal::new(self.d, out))
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut out = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                out.push(a.iter().zip(b).map(|(x, y)| *x.max(y)).collect());
            }
        }
        MonomialIdeal::new(self.d, out)
    }

    /// `(I : x^a)`.
    pub fn colon_monomial(&self, a: &[u32]) -> MonomialIdeal {
        MonomialIdeal::new(
            self.d,
            self.gens
                .iter()
                .map(|g| g.iter().zip(a).map(|(x, y)| x.saturating_sub(*y)).collect()),
        )
    }

    /// `(I : J)` for a nonzero monomial ideal `J`.
    pub fn colon_ideal(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut acc: Option<MonomialIdeal> = None;
        for g in &other.gens {
            let c = self.colon_monomial(g);
            acc = Some(match acc {
                None => c,
                Some(a) => a.intersect(&c),
            });
        }
        acc.unwrap_or_else(|| MonomialIdeal::unit(self.d))
    }

    /// `(I : m)`.
    pub fn colon_max(&self) -> MonomialIdeal {
        self.colon_ideal(&MonomialIdeal::max_power(self.d, 1))
    }

    /// `I^sat = (I : m^inf)` and the least `k` with `(I : m^k) = (I : m^{k+1})`.
    pub fn saturate(&self) -> (MonomialIdeal, u32) {
        let mut cur = self.clone();
        let mut k = 0;
        loop {
            let next = cur.colon_max();
            if next == cur {
                return (cur, k);
            }
            cur = next;
            k += 1;
        }
    }

    /// Least `c` with `m^c ⊆ I`, or `None` when `I` is not m-primary.
    pub fn colength_exponent(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let mut top = 0;
        for i in 0..self.d {
            let pure = self
                .gens
                .iter()
                .filter(|g| g.iter().enumerate().all(|(j, &e)| j == i || e == 0))
                .map(|g| g[i])
                .min()?;
            top += pure;
        }
        // m^top ⊆ I always holds once every pure power is present (pigeonhole);
        // search down from the guaranteed bound.
        let mut c = top.saturating_sub(self.d as u32 - 1);
        while c > 0 && compositions(self.d, c - 1).iter().all(|a| self.contains(a)) {
            c -= 1;
        }
        Some(c)
    }

    /// Monomials of `self` outside `floor`, or an error beyond `cap` of them.
    pub fn monomials_outside(&self, floor: &MonomialIdeal, cap: usize) -> Result<Vec<Exps>> {
        let mut seen: HashSet<Exps> = HashSet::new();
        let mut queue: VecDeque<Exps> = VecDeque::new();
        for g in &self.gens {
            if !floor.contains(g) && seen.insert(g.clone()) {
                queue.push_back(g.clone());
            }
        }
        let mut out = Vec::new();
        while let Some(a) = queue.pop_front() {
            for i in 0..self.d {
                let mut b = a.clone();
                b[i] = b[i].checked_add(1).ok_or(Error::ExponentOverflow)?;
                if !floor.contains(&b) && seen.insert(b.clone()) {
                    queue.push_back(b);
                }
            }
            out.push(a);
            if out.len() > cap {
                return Err(Error::InfiniteLength(format!(
                    "more than {cap} monomials between the ideals"
                )));
            }
        }
        out.sort_by(canonical_cmp);
        Ok(out)
    }

    /// `ℓ(I / J)` for monomial ideals with `J ⊆ I`.
    pub fn length_over(&self, floor: &MonomialIdeal, cap: usize) -> Result<usize> {
        Ok(self.monomials_outside(floor, cap)?.len())
    }
}

fn add_exps(a: &[u32], b: &[u32]) -> Result<Exps> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_add(*y).ok_or(Error::ExponentOverflow))
        .collect()
}

/// A monomial submodule of `Sym_g(F)`: one ideal per t-monomial of degree
/// `g`; absent components are zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialModule {
    ring: Ring,
    tdeg: u32,
    comps: BTreeMap<Exps, MonomialIdeal>,
}

impl MonomialModule {
    pub fn zero(ring: Ring, tdeg: u32) -> Self {
        MonomialModule { ring, tdeg, comps: BTreeMap::new() }
    }

    /// `m^c · Sym_g(F)`.
    pub fn max_power_free(ring: Ring, tdeg: u32, c: u32) -> Self {
        let ideal = MonomialIdeal::max_power(ring.d, c);
        let comps = t_monomials(&ring, tdeg).into_iter().map(|t| (t, ideal.clone())).collect();
        MonomialModule { ring, tdeg, comps }
    }

    pub fn free(ring: Ring, tdeg: u32) -> Self {
        Self::max_power_free(ring, tdeg, 0)
    }

    pub fn from_monomials(ring: Ring, tdeg: u32, gens: &[Monomial]) -> Result<Self> {
        let mut raw: BTreeMap<Exps, Vec<Exps>> = BTreeMap::new();
        for m in gens {
            if m.tdeg() != tdeg {
                return Err(Error::Structural(format!(
                    "generator {m} has t-degree {}, expected {tdeg}",
                    m.tdeg()
                )));
            }
            raw.entry(m.texp_owned()).or_default().push(m.xexp_owned());
        }
        let comps = raw
            .into_iter()
            .map(|(t, xs)| (t, MonomialIdeal::new(ring.d, xs)))
            .collect();
        Ok(MonomialModule { ring, tdeg, comps })
    }

    pub fn from_components(ring: Ring, tdeg: u32, comps: impl IntoIterator<Item = (Exps, MonomialIdeal)>) -> Self {
        let comps = comps.into_iter().filter(|(_, i)| !i.is_zero()).collect();
        MonomialModule { ring, tdeg, comps }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn tdeg(&self) -> u32 {
        self.tdeg
    }

    pub fn components(&self) -> &BTreeMap<Exps, MonomialIdeal> {
        &self.comps
    }

    pub fn component(&self, t: &[u32]) -> Option<&MonomialIdeal> {
        self.comps.get(t)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.comps.get(m.texp()).is_some_and(|i| i.contains(m.xexp()))
    }

    pub fn contains_parts(&self, x: &[u32], t: &[u32]) -> bool {
        self.comps.get(t).is_some_and(|i| i.contains(x))
    }

    /// Minimal monomial generators in ascending monomial order.
    pub fn mingens(&self) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = self
            .comps
            .iter()
            .flat_map(|(t, i)| i.gens().iter().map(move |x| Monomial::new(x, t).expect("stored exponents")))
            .collect();
        out.sort();
        out
    }

    pub fn num_gens(&self) -> usize {
        self.comps.values().map(|i| i.gens().len()).sum()
    }

    fn check(&self, other: &MonomialModule) -> Result<()> {
        self.ring.check_same(&other.ring)?;
        if self.tdeg != other.tdeg {
            return Err(Error::Structural(format!(
                "t-degrees {} and {} differ",
                self.tdeg, other.tdeg
            )));
        }
        Ok(())
    }

    pub fn is_subset(&self, other: &MonomialModule) -> bool {
        self.ring == other.ring
            && self.tdeg == other.tdeg
            && self
                .comps
                .iter()
                .all(|(t, i)| other.comps.get(t).is_some_and(|j| i.is_subset(j)))
    }

    pub fn add(&self, other: &MonomialModule) -> Result<MonomialModule> {
        self.check(other)?;
        let mut comps = self.comps.clone();
        for (t, i) in &other.comps {
            let merged = match comps.get(t) {
                Some(j) => j.add(i),
                None => i.clone(),
            };
            comps.insert(t.clone(), merged);
        }
        Ok(MonomialModule { ring: self.ring, tdeg: self.tdeg, comps })
    }

    pub fn intersect(&self, other: &MonomialModule) -> Result<MonomialModule> {
        self.check(other)?;
        let comps = self
            .comps
            .iter()
            .filter_map(|(t, i)| other.comps.get(t).map(|j| (t.clone(), i.intersect(j))));
        Ok(Self::from_components(self.ring, self.tdeg, comps))
    }

    pub fn mul(&self, other: &MonomialModule) -> Result<MonomialModule> {
        self.ring.check_same(&other.ring)?;
        let mut comps: BTreeMap<Exps, MonomialIdeal> = BTreeMap::new();
        for (ta, ia) in &self.comps {
            for (tb, ib) in &other.comps {
                let t = add_exps(ta, tb)?;
                let prod = ia.mul(ib)?;
                let merged = match comps.remove(&t) {
                    Some(j) => j.add(&prod),
                    None => prod,
                };
                comps.insert(t, merged);
            }
        }
        let tdeg = self.tdeg.checked_add(other.tdeg).ok_or(Error::ExponentOverflow)?;
        Ok(MonomialModule { ring: self.ring, tdeg, comps })
    }

    pub fn pow(&self, n: u32) -> Result<MonomialModule> {
        let mut acc = MonomialModule::free(self.ring, 0);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `(A : x^a t^b)`, a module of t-degree `tdeg - |b|`.
    pub fn colon_monomial(&self, m: &Monomial) -> Result<MonomialModule> {
        let g = self.tdeg.checked_sub(m.tdeg()).ok_or_else(|| {
            Error::Structural(format!("colon by {m} exceeds t-degree {}", self.tdeg))
        })?;
        let comps = t_monomials(&self.ring, g).into_iter().filter_map(|t| {
            let full = add_exps(&t, m.texp()).ok()?;
            let ideal = self.comps.get(&full)?;
            Some((t, ideal.colon_monomial(m.xexp())))
        });
        Ok(Self::from_components(self.ring, g, comps))
    }

    /// `(A :_{Sym_g} B)` for a nonzero monomial module `B`.
    pub fn colon_module(&self, other: &MonomialModule) -> Result<MonomialModule> {
        let mut acc: Option<MonomialModule> = None;
        for u in other.mingens() {
            let c = self.colon_monomial(&u)?;
            acc = Some(match acc {
                None => c,
                Some(a) => a.intersect(&c)?,
            });
        }
        acc.ok_or_else(|| Error::Structural("colon by the zero module".into()))
    }

    /// Componentwise saturation with the stabilization index.
    pub fn saturate(&self) -> (MonomialModule, u32) {
        let mut k = 0;
        let comps = self
            .comps
            .iter()
            .map(|(t, i)| {
                let (s, ki) = i.saturate();
                k = k.max(ki);
                (t.clone(), s)
            })
            .collect::<Vec<_>>();
        (Self::from_components(self.ring, self.tdeg, comps), k)
    }

    /// Least `c` with `m^c Sym_g(F) ⊆ A`; `None` for infinite colength.
    pub fn colength_exponent(&self) -> Option<u32> {
        let mut c = 0;
        for t in t_monomials(&self.ring, self.tdeg) {
            c = c.max(self.comps.get(&t)?.colength_exponent()?);
        }
        Some(c)
    }

    /// Monomials of `self` not in `floor`.
    pub fn monomials_outside(&self, floor: &MonomialModule, cap: usize) -> Result<Vec<Monomial>> {
        let zero = MonomialIdeal::zero(self.ring.d);
        let mut out = Vec::new();
        for (t, i) in &self.comps {
            let f = floor.comps.get(t).unwrap_or(&zero);
            for x in i.monomials_outside(f, cap.saturating_sub(out.len()))? {
                out.push(Monomial::new(&x, t)?);
            }
        }
        out.sort();
        Ok(out)
    }

    /// `ℓ(self / floor)` for monomial modules with `floor ⊆ self`.
    pub fn length_over(&self, floor: &MonomialModule, cap: usize) -> Result<usize> {
        if !floor.is_subset(self) {
            return Err(Error::NotSubpair("floor is not contained in the module".into()));
        }
        Ok(self.monomials_outside(floor, cap)?.len())
    }
}
