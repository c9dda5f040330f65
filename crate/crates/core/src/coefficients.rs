//! Coefficient modules, their graded counterparts and the consistency checks
//! relating them to closures.

use std::collections::BTreeMap;

use num_rational::BigRational;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fit::FittedPolynomial;
use crate::kernel::{colon_into_frame, Limits, Submodule};
use crate::ops::{
    analytic_spread, fitting_ideal, minimal_reduction, ratliff_rush, relative_integral_closure, saturate,
    Powers, ReductionWitness, DEFAULT_ATTEMPTS, DEFAULT_RMAX, RR_WINDOW,
};
use crate::poly::PolyElement;
use crate::tables::{self, FitPlan, FittedTable};

/// Search budgets shared by the chain computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainOptions {
    /// Largest `n_0` whose reduction is tried.
    pub budget: u32,
    /// Consecutive unchanged joins that end the search.
    pub stable_rounds: u32,
    pub plan: FitPlan,
    pub rmax: u32,
    pub attempts: usize,
    pub rr_nmax: u32,
    pub limits: Limits,
    /// Known analytic spread; computed when absent.
    pub spread: Option<usize>,
}

impl Default for ChainOptions {
    fn default() -> Self {
        ChainOptions {
            budget: 4,
            stable_rounds: 2,
            plan: FitPlan::default(),
            rmax: DEFAULT_RMAX,
            attempts: DEFAULT_ATTEMPTS,
            rr_nmax: 12,
            limits: Limits::default(),
            spread: None,
        }
    }
}

impl ChainOptions {
    fn spread_of(&self, m: &Submodule) -> Result<usize> {
        match self.spread {
            Some(s) => Ok(s),
            None => Ok(analytic_spread(m, self.plan.initial, self.plan.window, &self.limits)?.s),
        }
    }
}

/// Minimal reductions of `M^{n_0}`, drawn once per `n_0` and then reused.
#[derive(Debug, Clone)]
pub struct ReductionPool {
    module: Submodule,
    spread: usize,
    drawn: BTreeMap<u32, ReductionWitness>,
}

impl ReductionPool {
    pub fn new(module: Submodule, spread: usize) -> Self {
        ReductionPool { module, spread, drawn: BTreeMap::new() }
    }

    pub fn get<R: Rng + ?Sized>(&mut self, n0: u32, opts: &ChainOptions, rng: &mut R) -> Result<ReductionWitness> {
        if let Some(w) = self.drawn.get(&n0) {
            return Ok(w.clone());
        }
        let w = minimal_reduction(&self.module, n0, self.spread, self.spread, rng, opts.attempts, opts.rmax, &opts.limits)?;
        self.drawn.insert(n0, w.clone());
        Ok(w)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChainKind {
    /// Between `M` and `q(M)`.
    Coefficient,
    /// Between `I(M) M` and `M`.
    Graded,
}

/// A named invariant and whether it held.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
}

fn check(name: &str, holds: bool) -> Check {
    Check { name: name.into(), holds }
}

/// A computed chain link with the evidence for its degree condition.
#[derive(Debug, Clone)]
pub struct CoefficientCertificate {
    pub kind: ChainKind,
    pub k: usize,
    pub spread: usize,
    /// `n_0` of the last candidate that enlarged the result.
    pub n0: u32,
    pub reduction: ReductionWitness,
    pub result: Submodule,
    pub degree: FittedTable,
    pub threshold: i32,
    pub inclusive: bool,
    /// The join stopped changing within the budget.
    pub stabilized: bool,
    pub rejected: usize,
    /// Monomials added by the exhaustive sweep after the colon joins.
    pub swept: usize,
    /// Every monomial of the ambient space was tested (monomial regime).
    pub exhaustive: bool,
    pub checks: Vec<Check>,
}

impl CoefficientCertificate {
    pub fn fit(&self) -> &FittedPolynomial {
        &self.degree.fit
    }

    pub fn degree_holds(&self) -> bool {
        let d = self.degree.fit.degree;
        if self.inclusive {
            d <= self.threshold
        } else {
            d < self.threshold
        }
    }

    pub fn all_checks_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

struct Problem<'a> {
    kind: ChainKind,
    module: &'a Submodule,
    ideal: Option<Submodule>,
    frame: Submodule,
    floor: Submodule,
    /// Space whose monomials are tested one by one; set in the monomial regime.
    sweep: Option<Submodule>,
    spread: usize,
    powers: Powers,
}

impl Problem<'_> {
    fn threshold(&self, k: usize) -> (i32, bool) {
        match self.kind {
            ChainKind::Coefficient => (self.spread as i32 - k as i32, false),
            ChainKind::Graded => (self.spread as i32 - k as i32 - 1, true),
        }
    }

    fn target(&mut self, n0: u32, limits: &Limits) -> Result<Submodule> {
        let top = self.powers.get(n0 + 1)?.clone();
        match &self.ideal {
            None => Ok(top),
            Some(i) => i.mul(&top, limits),
        }
    }

    fn measure(&self, candidate: &Submodule, opts: &ChainOptions) -> Result<FittedTable> {
        match &self.ideal {
            None => tables::rees_amao(candidate, self.module, opts.plan, &opts.limits),
            Some(i) => tables::graded(candidate, i, self.module, opts.plan, &opts.limits),
        }
    }

    fn passes(&self, t: &FittedTable, k: usize) -> bool {
        let (th, inclusive) = self.threshold(k);
        if inclusive {
            t.fit.degree <= th
        } else {
            t.fit.degree < th
        }
    }

    /// Joins colon candidates over `n_0 = 1, 2, …` starting from `seed`.
    fn grow<R: Rng + ?Sized>(
        &mut self,
        k: usize,
        seed: Submodule,
        pool: &mut ReductionPool,
        opts: &ChainOptions,
        rng: &mut R,
    ) -> Result<CoefficientCertificate> {
        if k == 0 || k > self.spread {
            return Err(Error::Precondition(format!("k = {k} is outside 1..={}", self.spread)));
        }
        let mut join = seed;
        let mut degree = self.measure(&join, opts)?;
        if !self.passes(&degree, k) {
            return Err(Error::Structural("the starting module fails the degree condition".into()));
        }
        let mut witness = None;
        let mut accepted_n0 = 1;
        let mut unchanged = 0;
        let mut rejected = 0;
        let mut stabilized = false;
        for n0 in 1..=opts.budget {
            let w = pool.get(n0, opts, rng)?;
            let target = self.target(n0, &opts.limits)?;
            let candidate = colon_into_frame(&target, &w.elems[..k], &self.frame, &self.floor, &opts.limits)?;
            if candidate.is_subset(&join) {
                unchanged += 1;
            } else {
                let trial = join.add(&candidate)?;
                let t = self.measure(&trial, opts)?;
                if self.passes(&t, k) {
                    join = trial;
                    degree = t;
                    accepted_n0 = n0;
                    witness = Some(w.clone());
                    unchanged = 0;
                } else {
                    rejected += 1;
                    unchanged += 1;
                }
            }
            if witness.is_none() {
                witness = Some(w);
            }
            if unchanged >= opts.stable_rounds {
                stabilized = true;
                break;
            }
        }
        let mut swept = 0;
        if let Some(space) = &self.sweep {
            let outside = space.base().monomials_outside(self.floor.base(), opts.limits.max_dim)?;
            for x in outside {
                if join.contains_monomial(&x) {
                    continue;
                }
                let trial = join.add(&Submodule::from_monomials(*join.ring(), join.tdeg(), &[x])?)?;
                let t = self.measure(&trial, opts)?;
                if self.passes(&t, k) {
                    join = trial;
                    degree = t;
                    swept += 1;
                } else {
                    rejected += 1;
                }
            }
        }
        let (threshold, inclusive) = self.threshold(k);
        let reduction = witness.ok_or_else(|| Error::Incomplete("no reduction was drawn".into()))?;
        Ok(CoefficientCertificate {
            kind: self.kind,
            k,
            spread: self.spread,
            n0: accepted_n0,
            reduction,
            result: join,
            degree,
            threshold,
            inclusive,
            stabilized,
            rejected,
            swept,
            exhaustive: self.sweep.is_some(),
            checks: Vec::new(),
        })
    }
}

fn admissible(m: &Submodule) -> Result<()> {
    if m.is_monomial() || m.base().colength_exponent().is_some() {
        Ok(())
    } else {
        Err(Error::Regime("needs a monomial module or one of finite colength".into()))
    }
}

/// `q(M)` when it is computable (monomial regime).
pub fn relative_closure_if_monomial(m: &Submodule, limits: &Limits) -> Result<Option<Submodule>> {
    if m.is_monomial() {
        relative_integral_closure(m, limits).map(Some)
    } else {
        Ok(None)
    }
}

fn coefficient_problem<'a>(m: &'a Submodule, spread: usize, limits: &Limits) -> Result<Problem<'a>> {
    admissible(m)?;
    let frame = saturate(m, limits)?.module;
    Ok(Problem {
        kind: ChainKind::Coefficient,
        module: m,
        ideal: None,
        frame,
        floor: m.clone(),
        sweep: relative_closure_if_monomial(m, limits)?,
        spread,
        powers: Powers::new(m.clone(), *limits),
    })
}

fn coefficient_checks(cert: &mut CoefficientCertificate, m: &Submodule, q: Option<&Submodule>) {
    cert.checks.push(check("contains the module", m.is_subset(&cert.result)));
    if let Some(q) = q {
        cert.checks.push(check("inside the relative closure", cert.result.is_subset(q)));
    }
    let holds = cert.degree_holds();
    cert.checks.push(check("degree condition", holds));
}

/// The coefficient module `M_k`: the join of
/// `(M^{n_0+1} : x_1..x_k) ∩ M^sat` over minimal reductions of `M^{n_0}`.
///
/// Generic reductions can miss elements whose annihilator in the fiber cone
/// is not generic, so in the monomial regime every monomial of `q(M)` outside
/// the join is also tested against the degree condition.
pub fn coefficient_module<R: Rng + ?Sized>(
    m: &Submodule,
    k: usize,
    opts: &ChainOptions,
    rng: &mut R,
) -> Result<CoefficientCertificate> {
    let spread = opts.spread_of(m)?;
    let mut problem = coefficient_problem(m, spread, &opts.limits)?;
    let mut pool = ReductionPool::new(m.clone(), spread);
    let mut cert = problem.grow(k, m.clone(), &mut pool, opts, rng)?;
    let q = relative_closure_if_monomial(m, &opts.limits)?;
    coefficient_checks(&mut cert, m, q.as_ref());
    Ok(cert)
}

/// The full chain `M ⊆ M_s ⊆ … ⊆ M_1 ⊆ q(M)`.
#[derive(Debug, Clone)]
pub struct ChainReport {
    pub spread: usize,
    /// Links ordered `k = s, s-1, …, 1`.
    pub links: Vec<CoefficientCertificate>,
    pub relative_closure: Option<Submodule>,
    pub ratliff_rush: Option<Submodule>,
    pub checks: Vec<Check>,
}

impl ChainReport {
    pub fn link(&self, k: usize) -> Option<&CoefficientCertificate> {
        self.links.iter().find(|c| c.k == k)
    }

    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds) && self.links.iter().all(CoefficientCertificate::all_checks_hold)
    }
}

/// Computes every link with one reduction per `n_0`, seeding each link with
/// the one above it.
pub fn coefficient_chain<R: Rng + ?Sized>(m: &Submodule, opts: &ChainOptions, rng: &mut R) -> Result<ChainReport> {
    let spread = opts.spread_of(m)?;
    let mut problem = coefficient_problem(m, spread, &opts.limits)?;
    let mut pool = ReductionPool::new(m.clone(), spread);
    let q = relative_closure_if_monomial(m, &opts.limits)?;
    let rr = match ratliff_rush(m, opts.rr_nmax, RR_WINDOW, &opts.limits) {
        Ok(r) => Some(r.module),
        Err(Error::UnstableUnion { .. }) => None,
        Err(e) => return Err(e),
    };
    let mut links: Vec<CoefficientCertificate> = Vec::new();
    let mut seed = m.clone();
    for k in (1..=spread).rev() {
        let mut cert = problem.grow(k, seed.clone(), &mut pool, opts, rng)?;
        coefficient_checks(&mut cert, m, q.as_ref());
        seed = cert.result.clone();
        links.push(cert);
    }
    let mut checks = Vec::new();
    let mut nested = links.first().is_none_or(|c| m.is_subset(&c.result));
    for w in links.windows(2) {
        nested &= w[0].result.is_subset(&w[1].result);
    }
    if let (Some(q), Some(last)) = (&q, links.last()) {
        nested &= last.result.is_subset(q);
    }
    checks.push(check("chain nesting", nested));
    checks.push(check("degree conditions", links.iter().all(CoefficientCertificate::degree_holds)));
    if let Some(rr) = &rr {
        let sat = saturate(m, &opts.limits)?.module;
        let rr_sat = rr.intersect(&sat, &opts.limits)?;
        checks.push(check(
            "Ratliff-Rush closure inside every link",
            links.iter().all(|c| rr_sat.is_subset(&c.result)),
        ));
    }
    Ok(ChainReport { spread, links, relative_closure: q, ratliff_rush: rr, checks })
}

/// Outcome of sampling elements outside a computed link.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub k: usize,
    pub samples: usize,
    pub monomial_samples: usize,
    /// Samples whose adjunction kept the degree condition.
    pub counterexamples: Vec<String>,
    /// Samples whose table did not stabilize.
    pub undecided: Vec<String>,
    pub vacuous: bool,
}

impl ProbeReport {
    pub fn clean(&self) -> bool {
        self.counterexamples.is_empty() && self.undecided.is_empty()
    }
}

/// Adjoins sampled `y ∈ space \ result` and checks that the degree condition
/// breaks. The sample space is `q(M)` when known, else `M^sat`.
pub fn maximality_probe<R: Rng + ?Sized>(
    m: &Submodule,
    cert: &CoefficientCertificate,
    sample_budget: usize,
    opts: &ChainOptions,
    rng: &mut R,
) -> Result<ProbeReport> {
    let limits = &opts.limits;
    let space = match relative_closure_if_monomial(m, limits)? {
        Some(q) => q,
        None => saturate(m, limits)?.module,
    };
    let result = &cert.result;
    let mut report = ProbeReport { k: cert.k, ..Default::default() };
    let basis = space.quotient_basis(result, limits)?;
    if basis.is_empty() {
        report.vacuous = true;
        return Ok(report);
    }
    let ring = *m.ring();
    let mut samples: Vec<PolyElement> = space
        .base()
        .monomials_outside(m.base(), limits.max_dim)?
        .into_iter()
        .filter(|x| !result.contains_monomial(x))
        .map(|x| PolyElement::monomial(ring, x))
        .take(sample_budget)
        .collect();
    report.monomial_samples = samples.len();
    while samples.len() < sample_budget {
        let y = basis.iter().fold(PolyElement::zero(ring), |acc, w| {
            acc.add(&w.scale(&ring.field.random(rng))).expect("same ring")
        });
        if !result.contains(&y) {
            samples.push(y);
        }
    }
    let threshold = cert.spread as i32 - cert.k as i32;
    for y in samples {
        report.samples += 1;
        let enlarged = result.add_element(&y, limits)?;
        match tables::rees_amao(&enlarged, m, opts.plan, limits) {
            Ok(t) if t.fit.degree >= threshold => {}
            Ok(_) => report.counterexamples.push(y.render()),
            Err(Error::UnstableFit(_)) => report.undecided.push(y.render()),
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

fn graded_problem<'a>(
    m: &'a Submodule,
    ideal: Option<&Submodule>,
    spread: usize,
    limits: &Limits,
) -> Result<Problem<'a>> {
    if m.base().colength_exponent().is_none() {
        return Err(Error::Precondition("the graded chain needs finite colength".into()));
    }
    let ideal = match ideal {
        Some(i) => i.clone(),
        None => fitting_ideal(m, limits)?,
    };
    let floor = ideal.mul(m, limits)?;
    Ok(Problem {
        kind: ChainKind::Graded,
        module: m,
        sweep: (m.is_monomial() && floor.is_monomial()).then(|| m.clone()),
        ideal: Some(ideal),
        frame: m.clone(),
        floor,
        spread,
        powers: Powers::new(m.clone(), *limits),
    })
}

fn graded_checks(cert: &mut CoefficientCertificate, m: &Submodule, floor: &Submodule) {
    cert.checks.push(check("contains the Fitting floor", floor.is_subset(&cert.result)));
    cert.checks.push(check("inside the module", cert.result.is_subset(m)));
    let holds = cert.degree_holds();
    cert.checks.push(check("degree condition", holds));
}

/// `M_[k]`: the join of `M ∩ (I M^{n_0+1} : x_1..x_k)`, with `I = I(M)` unless
/// another ideal is supplied.
pub fn assoc_graded_coefficient_module<R: Rng + ?Sized>(
    m: &Submodule,
    k: usize,
    ideal: Option<&Submodule>,
    opts: &ChainOptions,
    rng: &mut R,
) -> Result<CoefficientCertificate> {
    let spread = opts.spread_of(m)?;
    let mut problem = graded_problem(m, ideal, spread, &opts.limits)?;
    let mut pool = ReductionPool::new(m.clone(), spread);
    let floor = problem.floor.clone();
    let mut cert = problem.grow(k, floor.clone(), &mut pool, opts, rng)?;
    graded_checks(&mut cert, m, &floor);
    Ok(cert)
}

/// The chain `I(M) M ⊆ M_[s] ⊆ … ⊆ M_[1] ⊆ M`.
#[derive(Debug, Clone)]
pub struct GradedChainReport {
    pub spread: usize,
    pub fitting: Submodule,
    pub links: Vec<CoefficientCertificate>,
    pub checks: Vec<Check>,
}

impl GradedChainReport {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds) && self.links.iter().all(CoefficientCertificate::all_checks_hold)
    }
}

pub fn graded_chain<R: Rng + ?Sized>(m: &Submodule, opts: &ChainOptions, rng: &mut R) -> Result<GradedChainReport> {
    let spread = opts.spread_of(m)?;
    let mut problem = graded_problem(m, None, spread, &opts.limits)?;
    let fitting = problem.ideal.clone().expect("graded problem has an ideal");
    let floor = problem.floor.clone();
    let mut pool = ReductionPool::new(m.clone(), spread);
    let mut links: Vec<CoefficientCertificate> = Vec::new();
    let mut seed = floor.clone();
    for k in (1..=spread).rev() {
        let mut cert = problem.grow(k, seed.clone(), &mut pool, opts, rng)?;
        graded_checks(&mut cert, m, &floor);
        seed = cert.result.clone();
        links.push(cert);
    }
    let mut nested = links.first().is_none_or(|c| floor.is_subset(&c.result));
    for w in links.windows(2) {
        nested &= w[0].result.is_subset(&w[1].result);
    }
    nested &= links.last().is_none_or(|c| c.result.is_subset(m));
    let checks = vec![
        check("chain nesting", nested),
        check("degree conditions", links.iter().all(CoefficientCertificate::degree_holds)),
    ];
    Ok(GradedChainReport { spread, fitting, links, checks })
}

/// `M_s` against `M̃ ∩ M^sat`.
#[derive(Debug, Clone)]
pub struct TopLinkReport {
    pub coefficient: Submodule,
    pub ratliff_rush_saturated: Submodule,
    pub equal: bool,
}

pub fn top_link_vs_ratliff_rush<R: Rng + ?Sized>(
    m: &Submodule,
    opts: &ChainOptions,
    rng: &mut R,
) -> Result<TopLinkReport> {
    let spread = opts.spread_of(m)?;
    let opts = ChainOptions { spread: Some(spread), ..*opts };
    let cert = coefficient_module(m, spread, &opts, rng)?;
    let rr = ratliff_rush(m, opts.rr_nmax, RR_WINDOW, &opts.limits)?.module;
    let sat = saturate(m, &opts.limits)?.module;
    let rr_sat = rr.intersect(&sat, &opts.limits)?;
    let equal = cert.result.equals(&rr_sat);
    Ok(TopLinkReport { coefficient: cert.result, ratliff_rush_saturated: rr_sat, equal })
}

/// Buchsbaum-Rim coefficients of `M` and of a link above it.
#[derive(Debug, Clone)]
pub struct PreservationReport {
    pub k: usize,
    pub hypothesis_met: bool,
    pub module_coefficients: Vec<BigRational>,
    pub link_coefficients: Vec<BigRational>,
    pub link: Option<Submodule>,
    pub agree: bool,
}

/// Compares `e_0..e_k` of `M` and of `M_k`; `k = 0` uses `q(M)`.
pub fn coefficient_preservation<R: Rng + ?Sized>(
    m: &Submodule,
    k: usize,
    opts: &ChainOptions,
    rng: &mut R,
) -> Result<PreservationReport> {
    let ring = *m.ring();
    let top = (ring.d + ring.p - 1) as u32;
    let spread = opts.spread_of(m)?;
    let finite = m.base().colength_exponent().is_some();
    if !finite || spread != top as usize || m.tdeg() != 1 {
        return Ok(PreservationReport {
            k,
            hypothesis_met: false,
            module_coefficients: Vec::new(),
            link_coefficients: Vec::new(),
            link: None,
            agree: false,
        });
    }
    let opts = ChainOptions { spread: Some(spread), ..*opts };
    let link = if k == 0 {
        relative_integral_closure(m, &opts.limits)?
    } else {
        coefficient_module(m, k, &opts, rng)?.result
    };
    let a = tables::buchsbaum_rim(m, opts.plan, &opts.limits)?.fit.signed_binomial(top)?;
    let b = tables::buchsbaum_rim(&link, opts.plan, &opts.limits)?.fit.signed_binomial(top)?;
    let agree = a[..=k] == b[..=k];
    Ok(PreservationReport {
        k,
        hypothesis_met: true,
        module_coefficients: a,
        link_coefficients: b,
        link: Some(link),
        agree,
    })
}

/// For each `n`, whether `(M^n)_[k] = I(M) M^n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedPowerReport {
    pub k: usize,
    pub holds_for: Vec<u32>,
    pub fails_for: Vec<u32>,
}

impl GradedPowerReport {
    pub fn holds(&self) -> bool {
        self.fails_for.is_empty()
    }
}

/// Computes `(M^n)_[k]` inside `Sym_n(F)` with the ideal `I(M)` for
/// `n = 1..=nmax` and compares it with `I(M) M^n`.
pub fn graded_power_condition<R: Rng + ?Sized>(
    m: &Submodule,
    k: usize,
    nmax: u32,
    opts: &ChainOptions,
    rng: &mut R,
) -> Result<GradedPowerReport> {
    let limits = &opts.limits;
    let spread = opts.spread_of(m)?;
    let opts = ChainOptions { spread: Some(spread), ..*opts };
    let ideal = fitting_ideal(m, limits)?;
    let mut powers = Powers::new(m.clone(), *limits);
    let mut report = GradedPowerReport { k, holds_for: Vec::new(), fails_for: Vec::new() };
    for n in 1..=nmax {
        let mn = powers.get(n)?.clone();
        let cert = assoc_graded_coefficient_module(&mn, k, Some(&ideal), &opts, rng)?;
        if cert.result.equals(&ideal.mul(&mn, limits)?) {
            report.holds_for.push(n);
        } else {
            report.fails_for.push(n);
        }
    }
    Ok(report)
}

/// For an ideal `I`: whether `I^{n+1} = (I^n)_[k]` and whether
/// `I^n = (I^n)_k`, for all `n ≤ nmax`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealPowerPredicates {
    pub k: usize,
    pub graded: bool,
    pub coefficient: bool,
    pub graded_fails: Vec<u32>,
    pub coefficient_fails: Vec<u32>,
    /// `Ĩ = I`; when false the second predicate already fails at `n = 1`.
    pub ratliff_rush_closed: bool,
}

impl IdealPowerPredicates {
    pub fn agree(&self) -> bool {
        self.graded == self.coefficient
    }
}

pub fn ideal_power_predicates<R: Rng + ?Sized>(
    ideal: &Submodule,
    k: usize,
    nmax: u32,
    opts: &ChainOptions,
    rng: &mut R,
) -> Result<IdealPowerPredicates> {
    if ideal.ring().p != 1 {
        return Err(Error::Precondition("the predicates compare ideals".into()));
    }
    let graded = graded_power_condition(ideal, k, nmax, opts, rng)?;
    let spread = opts.spread_of(ideal)?;
    let opts = ChainOptions { spread: Some(spread), ..*opts };
    let mut powers = Powers::new(ideal.clone(), opts.limits);
    let mut coefficient_fails = Vec::new();
    for n in 1..=nmax {
        let inn = powers.get(n)?.clone();
        let cert = coefficient_module(&inn, k, &opts, rng)?;
        if !cert.result.equals(&inn) {
            coefficient_fails.push(n);
        }
    }
    let rr = ratliff_rush(ideal, opts.rr_nmax, RR_WINDOW, &opts.limits)?.module;
    Ok(IdealPowerPredicates {
        k,
        ratliff_rush_closed: rr.equals(ideal),
        graded: graded.holds(),
        coefficient: coefficient_fails.is_empty(),
        graded_fails: graded.fails_for,
        coefficient_fails,
    })
}
