//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p coefmod-cli --test acceptance -- --nocapture`.

use std::collections::BTreeSet;
use std::path::Path;
use std::time::{Duration, Instant};

use clap::Parser;
use coefmod::coefficients::{
    coefficient_chain, coefficient_module, coefficient_preservation, graded_chain, ideal_power_predicates,
    maximality_probe, ChainOptions, ChainReport, IdealPowerPredicates,
};
use coefmod::fit::fit;
use coefmod::kernel::{ideal_from_exponents, ideal_module_from_exponents, Limits, Submodule};
use coefmod::monomial::{Monomial, Ring};
use coefmod::ops::{
    closure_agreement, fitting_ideal, integral_closure_monomial, is_reduction, ratliff_rush, relative_integral_closure,
    saturate, Powers, DEFAULT_RMAX, RR_WINDOW,
};
use coefmod::scalar::Field;
use coefmod::tables::{buchsbaum_rim_table, rees_amao, FitPlan};
use coefmod_cli::{execute, run_command, Cli};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const PRIME: u64 = 10007;
const SAMPLE_SEED: u64 = 0x5eed;
const TABLE_N: u32 = 8;
const CRIT_FAST: Duration = Duration::from_secs(10);
const CRIT_CHAIN: Duration = Duration::from_secs(300);
const PROBE_SAMPLES: usize = 50;
const PREDICATE_NMAX: u32 = 4;

type Exp = Vec<u32>;

// ---------------------------------------------------------------------------
// Brute-force exponent-set oracle. Nothing here calls into the engine.

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn minimalize(gens: impl IntoIterator<Item = Exp>) -> Vec<Exp> {
    let all: BTreeSet<Exp> = gens.into_iter().collect();
    all.iter().filter(|g| !all.iter().any(|h| h != *g && divides(h, g))).cloned().collect()
}

fn member(u: &[u32], gens: &[Exp]) -> bool {
    gens.iter().any(|g| divides(g, u))
}

fn product(a: &[Exp], b: &[Exp]) -> Vec<Exp> {
    minimalize(a.iter().flat_map(|g| b.iter().map(move |h| g.iter().zip(h).map(|(x, y)| x + y).collect())))
}

fn power(gens: &[Exp], n: u32) -> Vec<Exp> {
    let d = gens[0].len();
    (0..n).fold(vec![vec![0; d]], |acc, _| product(&acc, gens))
}

/// Every exponent vector with `u_i <= bound_i`.
fn lattice_box(bound: &[u32]) -> Vec<Exp> {
    let mut out = vec![Vec::new()];
    for &b in bound {
        out = out.into_iter().flat_map(|u| (0..=b).map(move |e| [u.clone(), vec![e]].concat())).collect();
    }
    out
}

/// Pure-power exponents of an m-primary monomial ideal.
fn pure_bounds(gens: &[Exp]) -> Vec<u32> {
    let d = gens[0].len();
    (0..d)
        .map(|i| {
            gens.iter()
                .filter(|g| g.iter().enumerate().all(|(j, &e)| j == i || e == 0))
                .map(|g| g[i])
                .min()
                .expect("m-primary")
        })
        .collect()
}

fn ratliff_rush_oracle(gens: &[Exp], nmax: u32) -> Vec<Exp> {
    let bound = pure_bounds(gens);
    let mut found: Vec<Exp> = gens.to_vec();
    for n in 1..=nmax {
        let lower = power(gens, n);
        let upper = power(gens, n + 1);
        for u in lattice_box(&bound) {
            let sums = lower.iter().map(|g| g.iter().zip(&u).map(|(a, b)| a + b).collect::<Exp>());
            if sums.into_iter().all(|v| member(&v, &upper)) {
                found.push(u);
            }
        }
    }
    minimalize(found)
}

fn length_oracle(big: &[Exp], small: &[Exp], bound: &[u32]) -> u64 {
    lattice_box(bound).iter().filter(|u| member(u, big) && !member(u, small)).count() as u64
}

fn scaled(bound: &[u32], n: u32) -> Vec<u32> {
    bound.iter().map(|b| b * n).collect()
}

/// ℓ(big^n / small^n) for `n = 1..=nmax`, with `small` m-primary.
fn rees_amao_oracle(big: &[Exp], small: &[Exp], nmax: u32) -> Vec<u64> {
    let bound = pure_bounds(small);
    (1..=nmax).map(|n| length_oracle(&power(big, n), &power(small, n), &scaled(&bound, n))).collect()
}

/// ℓ(R / ideal^n) for `n = 1..=nmax`.
fn colength_oracle(gens: &[Exp], nmax: u32) -> Vec<u64> {
    let unit = vec![vec![0; gens[0].len()]];
    let bound = pure_bounds(gens);
    (1..=nmax).map(|n| length_oracle(&unit, &power(gens, n), &scaled(&bound, n))).collect()
}

/// Degree of the eventual polynomial, read off the last three entries of
/// successive difference tables; `-1` for eventually zero.
fn degree_oracle(values: &[u64]) -> i32 {
    let mut seq: Vec<i64> = values.iter().map(|&v| v as i64).collect();
    let mut deg = -1;
    while seq.len() >= 3 && seq[seq.len() - 3..].iter().any(|&v| v != 0) {
        seq = seq.windows(2).map(|w| w[1] - w[0]).collect();
        deg += 1;
    }
    deg
}

/// Whether `u` dominates a point of the segment `[g, h]` in the plane.
fn dominates_segment(u: &[u32], g: &[u32], h: &[u32]) -> bool {
    // Need λ ∈ [0, 1] with (g_i - h_i) λ <= u_i - h_i; bounds kept as fractions.
    let (mut lo, mut hi) = ((0i64, 1i64), (1i64, 1i64));
    for i in 0..2 {
        let a = g[i] as i64 - h[i] as i64;
        let b = u[i] as i64 - h[i] as i64;
        if a == 0 {
            if b < 0 {
                return false;
            }
        } else if a > 0 {
            if b * hi.1 < hi.0 * a {
                hi = (b, a);
            }
        } else if -b * lo.1 > lo.0 * -a {
            lo = (-b, -a);
        }
    }
    lo.0 * hi.1 <= hi.0 * lo.1
}

/// Integral closure of a monomial ideal of the plane via its Newton polygon.
fn newton_oracle(gens: &[Exp]) -> Vec<Exp> {
    let bound = pure_bounds(gens);
    let found = lattice_box(&bound).into_iter().filter(|u| {
        gens.iter().any(|g| divides(g, u)) || gens.iter().any(|g| gens.iter().any(|h| dominates_segment(u, g, h)))
    });
    minimalize(found)
}

// ---------------------------------------------------------------------------
// Samples.

fn ring(d: usize, p: usize) -> Ring {
    Ring::new(Field::Prime(PRIME), d, p).unwrap()
}

fn random_ideal(rng: &mut ChaCha8Rng, d: usize, max_pow: u32) -> Vec<Exp> {
    let mut gens: Vec<Exp> = (0..d)
        .map(|i| {
            let mut e = vec![0; d];
            e[i] = rng.gen_range(2..=max_pow);
            e
        })
        .collect();
    let bounds: Vec<u32> = (0..d).map(|i| gens[i][i]).collect();
    let extras = rng.gen_range(1..=3);
    while gens.len() < d + extras {
        let u: Exp = bounds.iter().map(|&b| rng.gen_range(0..b)).collect();
        if u.iter().sum::<u32>() >= 2 {
            gens.push(u);
        }
    }
    minimalize(gens)
}

#[derive(Debug, Clone)]
enum Sample {
    Ideal(Vec<Exp>),
    /// `I_1 t_1 ⊕ I_2 t_2` in the plane.
    Sum([Vec<Exp>; 2]),
}

impl Sample {
    fn d(&self) -> usize {
        match self {
            Sample::Ideal(g) => g[0].len(),
            Sample::Sum(_) => 2,
        }
    }

    fn p(&self) -> usize {
        match self {
            Sample::Ideal(_) => 1,
            Sample::Sum(_) => 2,
        }
    }

    fn components(&self) -> Vec<&Vec<Exp>> {
        match self {
            Sample::Ideal(g) => vec![g],
            Sample::Sum(c) => c.iter().collect(),
        }
    }

    fn module(&self) -> Submodule {
        match self {
            Sample::Ideal(g) => {
                let refs: Vec<&[u32]> = g.iter().map(Vec::as_slice).collect();
                ideal_module_from_exponents(ring(self.d(), 1), &refs).unwrap()
            }
            Sample::Sum(c) => {
                let mut mons = Vec::new();
                for (j, comp) in c.iter().enumerate() {
                    let mut t = vec![0; 2];
                    t[j] = 1;
                    mons.extend(comp.iter().map(|u| Monomial::new(u, &t).unwrap()));
                }
                Submodule::from_monomials(ring(2, 2), 1, &mons).unwrap()
            }
        }
    }

    fn spec_text(&self) -> String {
        let render = |u: &Exp| {
            let parts: Vec<String> = u
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{e}", i + 1) })
                .collect();
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join("*")
            }
        };
        let vectors: Vec<String> = match self {
            Sample::Ideal(g) => g.iter().map(|u| format!("({})", render(u))).collect(),
            Sample::Sum([a, b]) => a
                .iter()
                .map(|u| format!("({}, 0)", render(u)))
                .chain(b.iter().map(|u| format!("(0, {})", render(u))))
                .collect(),
        };
        format!("field = Fp:{PRIME}\nxvars = {}\nrank = {}\ngens = [ {} ]\n", self.d(), self.p(), vectors.join("; "))
    }
}

/// Membership of each lattice point below the pure-power box, per component.
fn lib_matches(m: &Submodule, components: &[Vec<Exp>], bounds: &[Vec<u32>]) -> bool {
    let p = components.len();
    components.iter().zip(bounds).enumerate().all(|(j, (oracle, bound))| {
        let mut t = vec![0; p];
        t[j] = 1;
        lattice_box(bound).iter().all(|u| m.contains_monomial(&Monomial::new(u, &t).unwrap()) == member(u, oracle))
    })
}

/// Reads a monomial module back into exponent sets, one per component.
fn lib_components(m: &Submodule, bounds: &[Vec<u32>]) -> Vec<Vec<Exp>> {
    let p = bounds.len();
    bounds
        .iter()
        .enumerate()
        .map(|(j, bound)| {
            let mut t = vec![0; p];
            t[j] = 1;
            minimalize(lattice_box(bound).into_iter().filter(|u| m.contains_monomial(&Monomial::new(u, &t).unwrap())))
        })
        .collect()
}

fn bounds_of(s: &Sample) -> Vec<Vec<u32>> {
    s.components().iter().map(|c| pure_bounds(c)).collect()
}

/// ℓ(L^n / M^n) for monomial modules `L ⊇ M` given componentwise.
fn module_length_oracle(big: &[Vec<Exp>], small: &[Vec<Exp>], nmax: u32) -> Vec<u64> {
    match (big, small) {
        ([b], [s]) => rees_amao_oracle(b, s, nmax),
        ([b1, b2], [s1, s2]) => (1..=nmax)
            .map(|n| {
                (0..=n)
                    .map(|a| {
                        let bb = product(&power(b1, a), &power(b2, n - a));
                        let ss = product(&power(s1, a), &power(s2, n - a));
                        let bound = pure_bounds(&ss);
                        length_oracle(&bb, &ss, &bound)
                    })
                    .sum()
            })
            .collect(),
        _ => unreachable!("rank one or two"),
    }
}

struct Samples {
    plane: Vec<Sample>,
    space: Vec<Sample>,
    sums: Vec<Sample>,
}

fn samples() -> Samples {
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let plane = (0..10).map(|_| Sample::Ideal(random_ideal(&mut rng, 2, 5))).collect();
    let space = (0..5).map(|_| Sample::Ideal(random_ideal(&mut rng, 3, 3))).collect();
    let sums = (0..5).map(|_| Sample::Sum([random_ideal(&mut rng, 2, 3), random_ideal(&mut rng, 2, 3)])).collect();
    Samples { plane, space, sums }
}

fn gap_ideal() -> Vec<Exp> {
    vec![vec![4, 0], vec![3, 1], vec![1, 3], vec![0, 4]]
}

fn engine_rng(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(tag)
}

// ---------------------------------------------------------------------------
// Criteria.

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, ok: String) -> Outcome {
    if failures.is_empty() {
        Outcome { pass: true, detail: ok }
    } else {
        Outcome { pass: false, detail: failures.join("; ") }
    }
}

fn within(elapsed: Duration, cap: Duration, failures: &mut Vec<String>) {
    if elapsed > cap {
        failures.push(format!("took {:.1}s, cap {}s", elapsed.as_secs_f64(), cap.as_secs()));
    }
}

fn buchsbaum_rim_golden() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let r = ring(2, 2);
    let mons: Vec<Monomial> = [([1, 0], [1, 0]), ([0, 1], [1, 0]), ([1, 0], [0, 1]), ([0, 1], [0, 1])]
        .iter()
        .map(|(x, t)| Monomial::new(x, t).unwrap())
        .collect();
    let m = Submodule::from_monomials(r, 1, &mons).unwrap();
    let table = buchsbaum_rim_table(&m, TABLE_N, &Limits::default()).unwrap();
    let closed: Vec<u64> = (1..=TABLE_N as u64).map(|n| n * (n + 1) * (n + 1) / 2).collect();
    if table.values != closed {
        failures.push(format!("table {:?} vs closed form {closed:?}", table.values));
    }
    let f = fit(&table, coefmod::fit::DEFAULT_WINDOW).unwrap();
    let e: Vec<String> = f.signed_binomial(3).unwrap().iter().map(ToString::to_string).collect();
    if e != ["3", "1", "0", "0"] {
        failures.push(format!("coefficients {e:?}"));
    }
    // 3 C(n+2, 3) - C(n+1, 2) reproduces the closed form.
    for n in 1..=TABLE_N as u64 {
        let basis = 3 * (n + 2) * (n + 1) * n / 6 - (n + 1) * n / 2;
        if basis != closed[n as usize - 1] {
            failures.push(format!("basis reconstruction differs at n={n}"));
        }
    }
    within(start.elapsed(), CRIT_FAST, &mut failures);
    outcome(failures, format!("table {:?}, e = (3,1,0,0), {:.2}s", table.values, start.elapsed().as_secs_f64()))
}

fn ratliff_rush_golden() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let gens = gap_ideal();
    let oracle = ratliff_rush_oracle(&gens, 6);
    let expected = minimalize([gens.clone(), vec![vec![2, 2]]].concat());
    if oracle != expected {
        failures.push(format!("oracle gives {oracle:?}"));
    }
    let sample = Sample::Ideal(gens.clone());
    let rr = ratliff_rush(&sample.module(), 12, RR_WINDOW, &Limits::default()).unwrap();
    if !lib_matches(&rr.module, &[oracle], &bounds_of(&sample)) {
        failures.push(format!("engine gives {:?}", rr.module.render_generators()));
    }
    within(start.elapsed(), CRIT_FAST, &mut failures);
    outcome(failures, format!("I + (x^2 y^2), {:.2}s", start.elapsed().as_secs_f64()))
}

fn top_link_equality(s: &Samples) -> Outcome {
    let mut failures = Vec::new();
    let limits = Limits::default();
    let opts = ChainOptions::default();
    let mut list = vec![Sample::Ideal(gap_ideal())];
    list.extend(s.plane.iter().take(5).cloned());
    list.extend(s.space.iter().cloned());
    for (i, sample) in list.iter().enumerate() {
        let m = sample.module();
        let k = sample.d();
        let cert = coefficient_module(&m, k, &opts, &mut engine_rng(i as u64)).unwrap();
        let rr = ratliff_rush(&m, 12, RR_WINDOW, &limits).unwrap().module;
        let sat = saturate(&m, &limits).unwrap().module;
        let target = rr.intersect(&sat, &limits).unwrap();
        if !cert.result.equals(&target) {
            failures.push(format!("sample {i}: top link differs from closure within saturation"));
        }
        let Sample::Ideal(gens) = sample else { unreachable!() };
        if !lib_matches(&cert.result, &[ratliff_rush_oracle(gens, 6)], &bounds_of(sample)) {
            failures.push(format!("sample {i}: top link differs from the brute-force closure"));
        }
    }
    outcome(failures, format!("{} ideals in d = 2, 3 match exactly", list.len()))
}

fn newton_components(sample: &Sample) -> Vec<Vec<Exp>> {
    sample.components().iter().map(|c| newton_oracle(c)).collect()
}

fn chain_properties(s: &Samples, chains: &mut Vec<(Sample, ChainReport)>) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let opts = ChainOptions::default();
    let list: Vec<Sample> = s.plane.iter().chain(&s.sums).cloned().collect();
    for (i, sample) in list.iter().enumerate() {
        let m = sample.module();
        let chain = match coefficient_chain(&m, &opts, &mut engine_rng(100 + i as u64)) {
            Ok(c) => c,
            Err(e) => {
                failures.push(format!("sample {i}: {e}"));
                continue;
            }
        };
        let bounds = bounds_of(sample);
        let q = chain.relative_closure.clone().expect("monomial input");
        if !lib_matches(&q, &newton_components(sample), &bounds) {
            failures.push(format!("sample {i}: q(M) differs from the Newton polygon"));
        }
        let mut lower = m.clone();
        for cert in &chain.links {
            if !lower.is_subset(&cert.result) {
                failures.push(format!("sample {i}: link {} does not contain the previous one", cert.k));
            }
            lower = cert.result.clone();
            let threshold = chain.spread as i32 - cert.k as i32;
            if cert.fit().degree >= threshold {
                failures.push(format!("sample {i}: link {} has degree {}", cert.k, cert.fit().degree));
            }
            let base: Vec<Vec<Exp>> = sample.components().into_iter().cloned().collect();
            let table = module_length_oracle(&lib_components(&cert.result, &bounds), &base, TABLE_N);
            if degree_oracle(&table) >= threshold {
                failures.push(format!("sample {i}: link {} oracle table {table:?}", cert.k));
            }
        }
        if !lower.is_subset(&q) {
            failures.push(format!("sample {i}: last link escapes q(M)"));
        }
        chains.push((sample.clone(), chain));
    }
    within(start.elapsed(), CRIT_CHAIN, &mut failures);
    outcome(failures, format!("{} chains nested with degrees below s-k, {:.1}s", list.len(), start.elapsed().as_secs_f64()))
}

fn rees_round_trip() -> Outcome {
    let mut failures = Vec::new();
    let limits = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED ^ 5);
    let (mut reductions, mut others) = (0, 0);
    for i in 0..20 {
        let big = random_ideal(&mut rng, 2, 4);
        let bound = pure_bounds(&big);
        let mut small = vec![vec![bound[0], 0], vec![0, bound[1]]];
        for g in &big {
            match rng.gen_range(0..3) {
                0 => small.push(g.clone()),
                1 => small.push(vec![g[0] + 1, g[1]]),
                _ => {}
            }
        }
        let small = minimalize(small);
        let oracle_table = rees_amao_oracle(&big, &small, TABLE_N);
        let oracle_reduction = degree_oracle(&oracle_table) < 2;
        let (bm, sm) = (Sample::Ideal(big.clone()).module(), Sample::Ideal(small.clone()).module());
        let mut powers = Powers::new(bm.clone(), limits);
        let red = is_reduction(&sm.generators(), &mut powers, DEFAULT_RMAX, &limits).unwrap().is_some();
        let ra = rees_amao(&bm, &sm, FitPlan::fixed(TABLE_N), &limits).unwrap();
        let degree_says = ra.fit.degree < 2;
        if ra.table.values[..TABLE_N as usize] != oracle_table[..] {
            failures.push(format!("pair {i}: table {:?} vs oracle {oracle_table:?}", ra.table.values));
        }
        if red != degree_says || red != oracle_reduction {
            failures.push(format!("pair {i}: reduction {red}, degree test {degree_says}, oracle {oracle_reduction}"));
        }
        if red {
            reductions += 1;
        } else {
            others += 1;
        }
    }
    outcome(failures, format!("20 pairs agree ({reductions} reductions, {others} not)"))
}

fn closure_laws(s: &Samples) -> Outcome {
    let mut failures = Vec::new();
    let limits = Limits::default();
    let list: Vec<Sample> =
        s.plane.iter().take(6).chain(s.space.iter().take(2)).chain(s.sums.iter().take(2)).cloned().collect();
    for (i, sample) in list.iter().enumerate() {
        let m = sample.module();
        let q = relative_integral_closure(&m, &limits).unwrap();
        let qq = relative_integral_closure(&q, &limits).unwrap();
        if !qq.equals(&q) {
            failures.push(format!("sample {i}: q not idempotent"));
        }
        let mut powers = Powers::new(q.clone(), limits);
        if is_reduction(&m.generators(), &mut powers, DEFAULT_RMAX, &limits).unwrap().is_none() {
            failures.push(format!("sample {i}: M is not a reduction of q(M)"));
        }
        if sample.d() == 2 && !lib_matches(&q, &newton_components(sample), &bounds_of(sample)) {
            failures.push(format!("sample {i}: q(M) differs from the Newton polygon"));
        }
    }
    let squares = Sample::Ideal(vec![vec![2, 0], vec![0, 2]]);
    let closure = integral_closure_monomial(&squares.module()).unwrap();
    let expected = vec![vec![2, 0], vec![1, 1], vec![0, 2]];
    if newton_oracle(&[vec![2, 0], vec![0, 2]]) != minimalize(expected.clone())
        || !lib_matches(&closure, &[expected], &bounds_of(&squares))
    {
        failures.push("closure of (x^2, y^2) is not (x^2, xy, y^2)".into());
    }
    if !closure_agreement(&squares.module(), 8).unwrap().agree {
        failures.push("LP and power-test closures disagree".into());
    }
    outcome(failures, format!("{} samples idempotent and reductions; (x^2,y^2) closes to m^2", list.len()))
}

fn graded_chains(s: &Samples) -> Outcome {
    let mut failures = Vec::new();
    let limits = Limits::default();
    let opts = ChainOptions::default();
    let r22 = ring(2, 2);
    let max_f = Sample::Sum([vec![vec![1, 0], vec![0, 1]], vec![vec![1, 0], vec![0, 1]]]);
    let fit_mf = fitting_ideal(&max_f.module(), &limits).unwrap();
    if !fit_mf.equals(&Submodule::max_ideal_power(r22, 2)) {
        failures.push(format!("fitting(mF) = {:?}", fit_mf.render_generators()));
    }
    let mut list: Vec<Sample> = s.plane.iter().skip(5).cloned().collect();
    list.push(max_f);
    for (i, sample) in list.iter().enumerate() {
        let m = sample.module();
        let rep = match graded_chain(&m, &opts, &mut engine_rng(700 + i as u64)) {
            Ok(r) => r,
            Err(e) => {
                failures.push(format!("sample {i}: {e}"));
                continue;
            }
        };
        if let Sample::Ideal(g) = sample {
            let refs: Vec<&[u32]> = g.iter().map(Vec::as_slice).collect();
            if !rep.fitting.equals(&ideal_from_exponents(ring(2, 1), &refs).unwrap()) {
                failures.push(format!("sample {i}: fitting ideal of an ideal is not itself"));
            }
        }
        let floor = rep.fitting.mul(&m, &limits).unwrap();
        let mut lower = floor.clone();
        for cert in &rep.links {
            if !lower.is_subset(&cert.result) {
                failures.push(format!("sample {i}: graded link {} not nested", cert.k));
            }
            lower = cert.result.clone();
            let cap = rep.spread as i32 - cert.k as i32 - 1;
            if cert.fit().degree > cap {
                failures.push(format!("sample {i}: graded link {} has degree {}", cert.k, cert.fit().degree));
            }
            if let Sample::Ideal(g) = sample {
                let link = lib_components(&cert.result, &bounds_of(sample)).remove(0);
                let bound = pure_bounds(g);
                let table: Vec<u64> = (1..=TABLE_N)
                    .map(|n| {
                        let upper = product(&link, &power(g, n - 1));
                        length_oracle(&upper, &power(g, n + 1), &scaled(&bound, n + 1))
                    })
                    .collect();
                if degree_oracle(&table) > cap {
                    failures.push(format!("sample {i}: graded link {} oracle table {table:?}", cert.k));
                }
            }
        }
        if !lower.is_subset(&m) {
            failures.push(format!("sample {i}: graded chain escapes M"));
        }
    }
    outcome(failures, format!("{} graded chains between I(M)M and M; fitting(mF) = m^2", list.len()))
}

fn second_difference(v: &[u64]) -> i64 {
    let n = v.len();
    v[n - 1] as i64 - 2 * v[n - 2] as i64 + v[n - 3] as i64
}

fn preservation(s: &Samples) -> Outcome {
    let mut failures = Vec::new();
    let opts = ChainOptions::default();
    let squares = vec![vec![2, 0], vec![0, 2]];
    let closed = vec![vec![2, 0], vec![1, 1], vec![0, 2]];
    let staircase = (second_difference(&colength_oracle(&squares, 6)), second_difference(&colength_oracle(&closed, 6)));
    if staircase != (4, 4) {
        failures.push(format!("staircase multiplicities {staircase:?}"));
    }
    let rep = coefficient_preservation(&Sample::Ideal(squares).module(), 0, &opts, &mut engine_rng(800)).unwrap();
    let e0 = (rep.module_coefficients[0].to_string(), rep.link_coefficients[0].to_string());
    if !rep.agree || e0 != ("4".to_string(), "4".to_string()) {
        failures.push(format!("(x^2,y^2): e_0 pair {e0:?}"));
    }
    if let Some(link) = &rep.link {
        if !link.equals(&Sample::Ideal(closed).module()) {
            failures.push("(x^2,y^2): k = 0 link is not m^2".into());
        }
    }
    for (i, sample) in s.plane.iter().take(5).enumerate() {
        let m = sample.module();
        let rep = coefficient_preservation(&m, 2, &opts, &mut engine_rng(810 + i as u64)).unwrap();
        if !rep.hypothesis_met || !rep.agree {
            failures.push(format!("sample {i}: {:?} vs {:?}", rep.module_coefficients, rep.link_coefficients));
            continue;
        }
        let Sample::Ideal(g) = sample else { unreachable!() };
        let link = lib_components(rep.link.as_ref().expect("link"), &bounds_of(sample)).remove(0);
        let (a, b) = (colength_oracle(g, TABLE_N), colength_oracle(&link, TABLE_N));
        let tail = TABLE_N as usize - 3..;
        if a[tail.clone()] != b[tail] {
            failures.push(format!("sample {i}: oracle colengths {a:?} vs {b:?}"));
        }
    }
    outcome(failures, "(x^2,y^2) and m^2 both give e_0 = 4; e_0..e_2 preserved on 5 samples".into())
}

/// Returns the outcome and whether every disagreement sits at `n = 1` on an
/// ideal that is not Ratliff-Rush closed.
fn ideal_power_agreement(s: &Samples) -> (Outcome, bool) {
    let opts = ChainOptions::default();
    let mut list = vec![gap_ideal(), vec![vec![2, 0], vec![0, 2]]];
    list.extend(s.plane.iter().skip(2).take(3).map(|x| match x {
        Sample::Ideal(g) => g.clone(),
        Sample::Sum(_) => unreachable!(),
    }));
    let mut failures = Vec::new();
    let mut explained = true;
    for (i, g) in list.iter().enumerate() {
        let m = Sample::Ideal(g.clone()).module();
        let rr_closed = ratliff_rush_oracle(g, 6) == minimalize(g.clone());
        for k in 1..=2 {
            let rep: IdealPowerPredicates =
                ideal_power_predicates(&m, k, PREDICATE_NMAX, &opts, &mut engine_rng(900 + i as u64)).unwrap();
            if rep.ratliff_rush_closed != rr_closed {
                failures.push(format!("sample {i}: Ratliff-Rush status disagrees with the oracle"));
                explained = false;
            }
            if !rep.agree() {
                failures.push(format!(
                    "sample {i} k={k}: graded fails at {:?}, coefficient fails at {:?}, Ratliff-Rush closed {}",
                    rep.graded_fails, rep.coefficient_fails, rep.ratliff_rush_closed
                ));
                explained &= !rr_closed && rep.graded_fails.is_empty() && rep.coefficient_fails == [1];
            }
        }
    }
    (outcome(failures, format!("{} ideals, k = 1..2, n <= {PREDICATE_NMAX}", list.len())), explained)
}

fn maximality(chains: &[(Sample, ChainReport)]) -> Outcome {
    let mut failures = Vec::new();
    let opts = ChainOptions::default();
    let (mut links, mut sampled) = (0, 0);
    for (i, (sample, chain)) in chains.iter().enumerate() {
        let m = sample.module();
        for cert in &chain.links {
            let p = maximality_probe(&m, cert, PROBE_SAMPLES, &opts, &mut engine_rng(1000 + i as u64)).unwrap();
            links += 1;
            sampled += p.samples;
            if !p.vacuous && p.samples != PROBE_SAMPLES {
                failures.push(format!("sample {i} link {}: only {} samples", cert.k, p.samples));
            }
            if !p.clean() {
                failures.push(format!(
                    "sample {i} link {}: counterexamples {:?}, undecided {:?}",
                    cert.k, p.counterexamples, p.undecided
                ));
            }
        }
    }
    outcome(failures, format!("{links} links, {sampled} samples, no counterexamples"))
}

fn cli(args: &[&str]) -> Cli {
    let mut argv = vec!["coefmod"];
    argv.extend_from_slice(args);
    Cli::try_parse_from(argv).unwrap()
}

fn determinism(s: &Samples, dir: &Path) -> Outcome {
    let mut failures = Vec::new();
    let mut inputs: Vec<(String, Sample)> = vec![
        ("gap".into(), Sample::Ideal(gap_ideal())),
        ("squares".into(), Sample::Ideal(vec![vec![2, 0], vec![0, 2]])),
        ("maxf".into(), Sample::Sum([vec![vec![1, 0], vec![0, 1]], vec![vec![1, 0], vec![0, 1]]])),
        ("plane".into(), s.plane[0].clone()),
        ("space".into(), s.space[0].clone()),
        ("sum".into(), s.sums[0].clone()),
    ];
    let deformed = "field = Fp:10007\nxvars = 2\nrank = 1\ngens = [ (x1^4 + x1^2*x2^2); (x1^3*x2); (x1*x2^3); (x2^4) ]\n";
    let mut paths = Vec::new();
    for (name, sample) in inputs.drain(..) {
        let path = dir.join(format!("{name}.spec"));
        std::fs::write(&path, sample.spec_text()).unwrap();
        paths.push((path, sample.p(), sample.d()));
    }
    let deformed_path = dir.join("deformed.spec");
    std::fs::write(&deformed_path, deformed).unwrap();
    paths.push((deformed_path.clone(), 1, 2));
    let mut runs = 0;
    for (path, p, d) in &paths {
        let f = path.to_str().unwrap();
        let k = (d + p - 1).to_string();
        let monomial = *path != deformed_path;
        let mut commands: Vec<Vec<&str>> = vec![
            vec!["lengths", "--nmax", "6", f],
            vec!["rr", f],
            vec!["coeff", "--k", &k, "--seed", "7", f],
            vec!["coeff-chain", "--seed", "3", f],
            vec!["gcoeff", "--k", "1", f],
            vec!["verify", "prop52", f],
        ];
        if monomial {
            commands.push(vec!["qmod", f]);
            if *p == 1 && *d == 2 {
                commands.push(vec!["verify", "preservation", f]);
            }
        }
        for args in commands {
            let mut probed = vec!["--trunc-probe"];
            probed.extend_from_slice(&args);
            let (a, _) = execute(&cli(&args));
            let (b, _) = execute(&cli(&args));
            runs += 1;
            if a != b {
                failures.push(format!("{args:?}: output differs between runs"));
            }
            match run_command(&cli(&probed)) {
                Ok(rep) if rep.trunc_probe == Some(true) => {}
                Ok(_) => failures.push(format!("{args:?}: truncation probe mismatch")),
                Err(e) => failures.push(format!("{args:?}: {e}")),
            }
        }
    }
    outcome(failures, format!("{runs} commands byte-identical, truncation probes identical"))
}

#[test]
fn acceptance() {
    let s = samples();
    let dir = tempfile::tempdir().unwrap();
    let mut chains = Vec::new();
    let mut lines = Vec::new();
    let mut record = |n: u32, name: &str, o: Outcome| {
        let line = format!("criterion {n:>2} {name}: {} ({})", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        println!("{line}");
        lines.push((n, o.pass, line));
    };
    record(1, "Buchsbaum-Rim golden value", buchsbaum_rim_golden());
    record(2, "Ratliff-Rush oracle", ratliff_rush_golden());
    record(3, "top link equals Ratliff-Rush closure", top_link_equality(&s));
    record(4, "coefficient chain properties", chain_properties(&s, &mut chains));
    record(5, "Rees criterion round trip", rees_round_trip());
    record(6, "closure laws", closure_laws(&s));
    record(7, "graded chain", graded_chains(&s));
    record(8, "coefficient preservation", preservation(&s));
    let (ninth, explained) = ideal_power_agreement(&s);
    record(9, "ideal-power predicates agree", ninth);
    record(10, "maximality probe", maximality(&chains));
    record(11, "determinism and truncation soundness", determinism(&s, dir.path()));

    // Criterion 9 can only fail through degree-zero torsion: the predicates
    // then disagree at n = 1 on ideals that are not Ratliff-Rush closed.
    let unexpected: Vec<&String> =
        lines.iter().filter(|(n, pass, _)| !pass && !(*n == 9 && explained)).map(|(_, _, l)| l).collect();
    assert!(unexpected.is_empty(), "failing criteria:\n{unexpected:#?}");
}
