//! Length tables of powers and their fits.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fit::{fit_extending, FittedPolynomial, LengthKind, NumericalFunction, DEFAULT_WINDOW};
use crate::kernel::{Limits, Submodule};
use crate::ops::Powers;

/// How far a table is captured before and while fitting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FitPlan {
    pub initial: u32,
    pub hard: u32,
    pub window: usize,
}

impl Default for FitPlan {
    fn default() -> Self {
        FitPlan { initial: 6, hard: 14, window: DEFAULT_WINDOW }
    }
}

impl FitPlan {
    pub fn fixed(nmax: u32) -> Self {
        FitPlan { initial: nmax, hard: nmax, window: DEFAULT_WINDOW }
    }
}

/// A captured table together with its fit.
#[derive(Debug, Clone)]
pub struct FittedTable {
    pub table: NumericalFunction,
    pub fit: FittedPolynomial,
}

fn run(kind: LengthKind, plan: FitPlan, value: impl FnMut(u32) -> Result<u64>) -> Result<FittedTable> {
    let (table, fit) = fit_extending(kind, plan.initial, plan.hard.max(plan.initial), plan.window, value)?;
    Ok(FittedTable { table, fit })
}

/// `ℓ(F^n / M^n)` for `n = 1..=nmax`, without fitting.
pub fn buchsbaum_rim_table(m: &Submodule, nmax: u32, limits: &Limits) -> Result<NumericalFunction> {
    let mut powers = Powers::new(m.clone(), *limits);
    NumericalFunction::tabulate(LengthKind::BuchsbaumRim, nmax, |n| {
        let free = Submodule::free(*m.ring(), m.tdeg() * n);
        Ok(free.length_over(powers.get(n)?, limits)? as u64)
    })
}

/// `n ↦ ℓ(F^n / M^n)`.
pub fn buchsbaum_rim(m: &Submodule, plan: FitPlan, limits: &Limits) -> Result<FittedTable> {
    let mut powers = Powers::new(m.clone(), *limits);
    run(LengthKind::BuchsbaumRim, plan, |n| {
        let free = Submodule::free(*m.ring(), m.tdeg() * n);
        Ok(free.length_over(powers.get(n)?, limits)? as u64)
    })
}

/// `n ↦ ℓ(L^n / M^n)` for `M ⊆ L`.
pub fn rees_amao(big: &Submodule, small: &Submodule, plan: FitPlan, limits: &Limits) -> Result<FittedTable> {
    if !small.is_subset(big) {
        return Err(Error::NotSubpair("the pair is not nested".into()));
    }
    let mut top = Powers::new(big.clone(), *limits);
    let mut bottom = Powers::new(small.clone(), *limits);
    run(LengthKind::ReesAmao, plan, |n| {
        let b = bottom.get(n)?.clone();
        Ok(top.get(n)?.length_over(&b, limits)? as u64)
    })
}

/// `n ↦ μ(M^n)`.
pub fn fiber(m: &Submodule, plan: FitPlan, limits: &Limits) -> Result<FittedTable> {
    let mut powers = Powers::new(m.clone(), *limits);
    run(LengthKind::Fiber, plan, |n| Ok(powers.get(n)?.num_generators(limits)? as u64))
}

/// `n ↦ ℓ(L M^{n-1} / I M^n)` for `I M ⊆ L ⊆ M`, with `I` an ideal.
pub fn graded(
    layer: &Submodule,
    ideal: &Submodule,
    m: &Submodule,
    plan: FitPlan,
    limits: &Limits,
) -> Result<FittedTable> {
    let mut powers = Powers::new(m.clone(), *limits);
    run(LengthKind::Graded, plan, |n| {
        let upper = layer.mul(powers.get(n - 1)?, limits)?;
        let lower = ideal.mul(powers.get(n)?, limits)?;
        Ok(upper.length_over(&lower, limits)? as u64)
    })
}
