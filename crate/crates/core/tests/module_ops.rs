use coefmod::kernel::{ideal_from_exponents, Limits, ModulePresentation, Submodule};
use coefmod::monomial::{Monomial, Ring};
use coefmod::ops::{
    analytic_spread, fitting_ideal, in_closure_by_powers, in_newton_polyhedron, integral_closure_by_powers,
    integral_closure_monomial, is_reduction, minimal_reduction, ratliff_rush, ratliff_rush_power_stable,
    relative_integral_closure, saturate, Powers, RR_WINDOW,
};
use coefmod::parse::parse_poly;
use coefmod::poly::PolyElement;
use coefmod::scalar::Field;
use coefmod::error::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use smallvec::SmallVec;

fn ring(d: usize, p: usize) -> Ring {
    Ring::new(Field::Prime(10007), d, p).unwrap()
}

fn module(r: Ring, gens: &[&str]) -> Submodule {
    let gens: Vec<PolyElement> = gens.iter().map(|g| parse_poly(g, &r).unwrap()).collect();
    let tdeg = gens[0].tdeg().unwrap();
    Submodule::from_presentation(&ModulePresentation::new(r, tdeg, gens).unwrap(), &Limits::default()).unwrap()
}

fn ideal(d: usize, gens: &[&[u32]]) -> Submodule {
    ideal_from_exponents(ring(d, 1), gens).unwrap()
}

fn max_f(r: Ring) -> Submodule {
    let mut gens = Vec::new();
    for t in 0..r.p {
        for x in 0..r.d {
            let mut xe = vec![0; r.d];
            xe[x] = 1;
            let mut te = vec![0; r.p];
            te[t] = 1;
            gens.push(Monomial::new(&xe, &te).unwrap());
        }
    }
    Submodule::from_monomials(r, 1, &gens).unwrap()
}

/// Exponent vectors generating `I^n`, by brute-force sums.
fn power_gens(gens: &[Vec<u32>], n: u32) -> Vec<Vec<u32>> {
    let mut acc = vec![vec![0; gens[0].len()]];
    for _ in 0..n {
        let mut next = Vec::new();
        for a in &acc {
            for g in gens {
                next.push(a.iter().zip(g).map(|(x, y)| x + y).collect());
            }
        }
        next.sort();
        next.dedup();
        acc = next;
    }
    acc
}

fn divides_some(gens: &[Vec<u32>], b: &[u32]) -> bool {
    gens.iter().any(|g| g.iter().zip(b).all(|(x, y)| x <= y))
}

/// `b ∈ (I^{n+1} : I^n)` checked on the generators of `I^n`.
fn brute_colon(gens: &[Vec<u32>], n: u32, b: &[u32]) -> bool {
    let top = power_gens(gens, n + 1);
    power_gens(gens, n)
        .iter()
        .all(|g| divides_some(&top, &g.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>()))
}

#[test]
fn ratliff_rush_of_gap_ideal() {
    let l = Limits::default();
    let gens: Vec<Vec<u32>> = vec![vec![4, 0], vec![3, 1], vec![1, 3], vec![0, 4]];
    let i = ideal(2, &[&[4, 0], &[3, 1], &[1, 3], &[0, 4]]);
    let rr = ratliff_rush(&i, 12, RR_WINDOW, &l).unwrap();
    let want = ideal(2, &[&[4, 0], &[3, 1], &[2, 2], &[1, 3], &[0, 4]]);
    assert!(rr.module.equals(&want));
    let r = ring(2, 1);
    for a in 0..=4u32 {
        for b in 0..=4u32 {
            let m = PolyElement::monomial(r, Monomial::new(&[a, b], &[0]).unwrap());
            assert_eq!(rr.module.contains(&m), brute_colon(&gens, 5, &[a, b]), "x^{a} y^{b}");
        }
    }
    assert!(ratliff_rush_power_stable(&i, &rr.module, 2..=4, &l).unwrap());
}

#[test]
fn ratliff_rush_general_regime() {
    let l = Limits::default();
    let r = ring(2, 1);
    let i = module(r, &["x1^4*t1 + x1^2*x2^2*t1", "x1^3*x2*t1", "x1*x2^3*t1", "x2^4*t1"]);
    assert!(!i.is_monomial());
    let rr = ratliff_rush(&i, 12, RR_WINDOW, &l).unwrap();
    assert!(i.is_subset(&rr.module));
    assert!(rr.module.is_subset(&Submodule::max_ideal_power(r, 4).mul(&Submodule::free(r, 1), &l).unwrap()));
    assert!(ratliff_rush_power_stable(&i, &rr.module, 2..=3, &l).unwrap());
    let i4 = i.pow(4, &l).unwrap();
    let i5 = i.pow(5, &l).unwrap();
    for g in ["x1^2*x2^2*t1", "x1^4*t1"] {
        let f = parse_poly(g, &r).unwrap();
        let brute = i4.generators().iter().all(|h| i5.contains(&h.mul(&f).unwrap()));
        assert_eq!(rr.module.contains(&f), brute, "{g}");
    }
}

#[test]
fn ratliff_rush_reports_partial_chain() {
    let l = Limits::default();
    let i = ideal(2, &[&[4, 0], &[3, 1], &[1, 3], &[0, 4]]);
    match ratliff_rush(&i, 2, RR_WINDOW, &l) {
        Err(Error::UnstableUnion { n_max, partial }) => {
            assert_eq!(n_max, 2);
            assert_eq!(partial, vec![1, 1]);
        }
        other => panic!("expected an unstable union, got {other:?}"),
    }
}

#[test]
fn saturation_cases() {
    let l = Limits::default();
    let s = saturate(&ideal(2, &[&[2, 0], &[1, 1]]), &l).unwrap();
    assert!(s.module.equals(&ideal(2, &[&[1, 0]])));
    assert_eq!(s.index, 1);
    let r = ring(2, 1);
    let m = module(r, &["x1^2*t1 + x2^3*t1", "x2^2*t1"]);
    let s = saturate(&m, &l).unwrap();
    assert!(s.module.equals(&Submodule::free(r, 1)));
    assert!(s.index >= 2);
}

#[test]
fn fitting_ideal_cases() {
    let l = Limits::default();
    let r = ring(2, 2);
    let fit = fitting_ideal(&max_f(r), &l).unwrap();
    assert!(fit.equals(&Submodule::max_ideal_power(r, 2)));
    let fit = fitting_ideal(&Submodule::free(r, 1), &l).unwrap();
    assert!(fit.equals(&Submodule::free(r, 0)));
    let thin = module(r, &["x1*t1", "x2*t1"]);
    assert!(matches!(fitting_ideal(&thin, &l), Err(Error::RankDeficient(_))));
    let mixed = module(r, &["x1*t1 + x2*t2", "x2*t1", "x1*t2"]);
    let fit = fitting_ideal(&mixed, &l).unwrap();
    assert!(fit.is_subset(&Submodule::max_ideal_power(r, 2)));
    assert!(fit.contains(&parse_poly("x1^2", &r).unwrap()));
}

#[test]
fn closure_of_pure_powers() {
    let i = ideal(2, &[&[2, 0], &[0, 2]]);
    let want = ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]);
    assert!(integral_closure_monomial(&i).unwrap().equals(&want));
    assert!(integral_closure_by_powers(&i, 8).unwrap().equals(&want));
}

#[test]
fn closure_rejects_general_modules() {
    let r = ring(2, 1);
    let m = module(r, &["x1^2*t1 + x2^3*t1", "x1*x2*t1"]);
    assert!(matches!(integral_closure_monomial(&m), Err(Error::Regime(_))));
}

#[test]
fn reductions_of_small_ideals() {
    let l = Limits::default();
    let r = ring(2, 1);
    let m2 = ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]);
    let mut powers = Powers::new(m2.clone(), l);
    let x2 = parse_poly("x1^2", &r).unwrap();
    let y2 = parse_poly("x2^2", &r).unwrap();
    assert_eq!(is_reduction(&[x2.clone(), y2], &mut powers, 6, &l).unwrap(), Some(1));
    assert_eq!(is_reduction(std::slice::from_ref(&x2), &mut powers, 6, &l).unwrap(), None);
    let x = parse_poly("x1", &r).unwrap();
    assert!(is_reduction(&[x], &mut powers, 6, &l).is_err());
    assert_eq!(is_reduction(&m2.generators(), &mut powers, 6, &l).unwrap(), Some(0));
}

#[test]
fn spread_values() {
    let l = Limits::default();
    assert_eq!(analytic_spread(&ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]), 6, 3, &l).unwrap().s, 2);
    assert_eq!(analytic_spread(&ideal(2, &[&[2, 1]]), 6, 3, &l).unwrap().s, 1);
    assert_eq!(analytic_spread(&ideal(3, &[&[1, 0, 0], &[0, 1, 0]]), 6, 3, &l).unwrap().s, 2);
    let r = ring(2, 2);
    assert_eq!(analytic_spread(&max_f(r), 6, 3, &l).unwrap().s, 3);
}

#[test]
fn minimal_reduction_draws() {
    let l = Limits::default();
    let m2 = ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let w = minimal_reduction(&m2, 1, 2, 2, &mut rng, 8, 6, &l).unwrap();
    assert_eq!(w.elems.len(), 2);
    assert!(!w.small_field);
    let mut powers = Powers::new(m2.clone(), l);
    assert_eq!(is_reduction(&w.elems, &mut powers, 6, &l).unwrap(), Some(w.r));
    assert!(matches!(
        minimal_reduction(&m2, 1, 1, 2, &mut rng, 8, 6, &l),
        Err(Error::Precondition(_))
    ));
    let again = minimal_reduction(&m2, 1, 2, 2, &mut ChaCha8Rng::seed_from_u64(7), 8, 6, &l).unwrap();
    assert_eq!(again.elems, w.elems);
}

#[test]
fn minimal_reduction_of_modules() {
    let l = Limits::default();
    let r = ring(2, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let w = minimal_reduction(&max_f(r), 1, 3, 3, &mut rng, 8, 8, &l).unwrap();
    assert_eq!(w.elems.len(), 3);
}

fn arb_ideal(d: usize, maxexp: u32) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0..=maxexp, d), 0..3).prop_map(move |mut extra| {
        extra.retain(|g| g.iter().any(|&e| e > 0));
        for i in 0..d {
            let mut pure = vec![0; d];
            pure[i] = maxexp;
            extra.push(pure);
        }
        extra
    })
}

fn to_ideal(d: usize, gens: &[Vec<u32>]) -> Submodule {
    let refs: Vec<&[u32]> = gens.iter().map(Vec::as_slice).collect();
    ideal_from_exponents(ring(d, 1), &refs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn closure_routes_agree(gens in arb_ideal(2, 4)) {
        let i = to_ideal(2, &gens);
        let lp = integral_closure_monomial(&i).unwrap();
        let pw = integral_closure_by_powers(&i, 12).unwrap();
        prop_assert!(lp.equals(&pw));
        prop_assert!(i.is_subset(&lp));
        prop_assert!(integral_closure_monomial(&lp).unwrap().equals(&lp));
    }

    #[test]
    fn relative_closure_is_idempotent(gens in arb_ideal(2, 4)) {
        let l = Limits::default();
        let i = to_ideal(2, &gens);
        let q = relative_integral_closure(&i, &l).unwrap();
        prop_assert!(relative_integral_closure(&q, &l).unwrap().equals(&q));
        let mut powers = Powers::new(q.clone(), l);
        prop_assert!(is_reduction(&i.generators(), &mut powers, 12, &l).unwrap().is_some());
    }

    #[test]
    fn ratliff_rush_is_sandwiched(gens in arb_ideal(2, 4)) {
        let l = Limits::default();
        let i = to_ideal(2, &gens);
        let rr = ratliff_rush(&i, 12, RR_WINDOW, &l).unwrap();
        prop_assert!(i.is_subset(&rr.module));
        prop_assert!(rr.module.is_subset(&integral_closure_monomial(&i).unwrap()));
        prop_assert!(ratliff_rush(&rr.module, 12, RR_WINDOW, &l).unwrap().module.equals(&rr.module));
    }

    #[test]
    fn newton_membership_matches_powers(b in prop::collection::vec(0u32..5, 3), gens in arb_ideal(3, 3)) {
        let g: Vec<SmallVec<[u32; 4]>> = gens.iter().map(|v| SmallVec::from_slice(v)).collect();
        let lp = in_newton_polyhedron(&b, &g);
        if in_closure_by_powers(&b, &g, 6) {
            prop_assert!(lp);
        }
    }
}
