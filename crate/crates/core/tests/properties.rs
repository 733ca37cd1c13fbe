mod common;

use std::sync::{Arc, OnceLock};

use common::*;
use massicot::certificate::Certificate;
use massicot::descent::{basic_descent, DescentParams};
use massicot::measure::{check_mean_axioms, format_rational};
use massicot::verify::{verify_descent, DescentFrame};
use massicot::{
    covering_number, thickness_number, ActionTable, GSet, GroupMean, GroupTable, MwSystem, SolveMode, SpaceMean,
    SystemKind, VerifyContext,
};
use num_rational::BigRational;
use proptest::prelude::*;
use rand::Rng;

fn groups() -> &'static [(String, GroupTable)] {
    static GROUPS: OnceLock<Vec<(String, GroupTable)>> = OnceLock::new();
    GROUPS.get_or_init(|| small_groups(24))
}

fn pick(i: usize) -> &'static GroupTable {
    let gs = groups();
    &gs[i % gs.len()].1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_set_matches_double_loop(gi in 0usize..200, seed in any::<u64>()) {
        let g = pick(gi);
        let mut r = rng(seed);
        let x = random_set(&mut r, g.order(), 0.3);
        let y = random_set(&mut r, g.order(), 0.3);
        let z = random_set(&mut r, g.order(), 0.3);
        let xy = g.product_set(&x, &y).unwrap();
        prop_assert_eq!(&xy, &naive_product(g, &x, &y));
        prop_assert_eq!(g.product_set(&xy, &z).unwrap(), g.product_set(&x, &g.product_set(&y, &z).unwrap()).unwrap());
        prop_assert_eq!(g.inverse_set(&xy), g.product_set(&g.inverse_set(&y), &g.inverse_set(&x)).unwrap());
    }

    #[test]
    fn powers_and_subgroups(gi in 0usize..200, seed in any::<u64>(), n in 1usize..5) {
        let g = pick(gi);
        let mut r = rng(seed);
        let x = random_nonempty(&mut r, g.order(), 0.2);
        let mut naive = x.clone();
        for _ in 1..n {
            naive = naive_product(g, &naive, &x);
        }
        prop_assert_eq!(g.power_set(&x, n).unwrap(), naive);
        let h = g.generated_subgroup(&x).unwrap();
        prop_assert!(g.is_subgroup(&h));
        prop_assert!(x.is_subset(&h));
        let s = g.symmetrize(&x);
        prop_assert!(g.is_symmetric(&s) && s.contains(g.identity()));
    }

    #[test]
    fn normal_core_is_normal_and_inside(gi in 0usize..200, seed in any::<u64>()) {
        let g = pick(gi);
        let mut r = rng(seed);
        let k = g.generated_subgroup(&random_nonempty(&mut r, g.order(), 0.05)).unwrap();
        let h = g.full_set();
        let core = g.normal_core(&k, &h);
        prop_assert!(core.is_subset(&k));
        prop_assert!(g.is_subgroup(&core));
        for x in 0..g.order() {
            for c in core.iter() {
                prop_assert!(core.contains(g.mul(g.mul(x, c), g.inverse(x))));
            }
        }
    }

    #[test]
    fn orbit_constant_weights_satisfy_mean_axioms(gi in 0usize..200, seed in any::<u64>()) {
        let g = Arc::new(pick(gi).clone());
        let mut r = rng(seed);
        let sub = g.generated_subgroup(&random_nonempty(&mut r, g.order(), 0.1)).unwrap();
        let cosets = ActionTable::cosets(Arc::clone(&g), &sub).unwrap();
        let act = Arc::new(ActionTable::disjoint_union(&[ActionTable::regular(Arc::clone(&g)), cosets]).unwrap());
        let (wa, wb) = (r.random_range(1..7i64), r.random_range(0..7i64));
        let weights: Vec<BigRational> = (0..act.space_size())
            .map(|x| BigRational::new(if x < g.order() { wa } else { wb }.into(), 5.into()))
            .collect();
        let m = SpaceMean::weighted_on_space(Arc::clone(&act), weights).unwrap();
        let report = check_mean_axioms(&m, 40, seed);
        prop_assert!(report.all_pass(), "{:?}", report.counterexamples);
        let x = random_set(&mut r, act.space_size(), 0.4).recast();
        let y = random_set(&mut r, act.space_size(), 0.4).recast();
        let lhs = m.mu(&x.union(&y)).unwrap().0 + m.mu(&x.intersection(&y)).unwrap().0;
        let rhs = m.mu(&x).unwrap().0 + m.mu(&y).unwrap().0;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_cover_matches_brute_force(gi in 0usize..200, seed in any::<u64>()) {
        let g = pick(gi);
        let mut r = rng(seed);
        let a = random_nonempty(&mut r, g.order(), 0.35);
        let b = random_set(&mut r, g.order(), 0.5);
        let exact = covering_number(g, &a, &b, SolveMode::Exact).unwrap();
        let greedy = covering_number(g, &a, &b, SolveMode::Greedy).unwrap();
        prop_assert!(exact.exact);
        prop_assert!(covers(g, &elems(&exact.delta), &a, &b));
        prop_assert!(covers(g, &elems(&greedy.delta), &a, &b));
        prop_assert!(greedy.k >= exact.k);
        prop_assert_eq!(exact.k, brute_cover(g, &a, &b));
        let bai = g.product_set(&b, &g.inverse_set(&a)).unwrap();
        prop_assert!(exact.delta.is_subset(&bai));
    }

    #[test]
    fn exact_thickness_matches_brute_force(gi in 0usize..200, seed in any::<u64>()) {
        let g = pick(gi);
        let mut r = rng(seed);
        let a = random_set(&mut r, g.order(), 0.15);
        let b = random_set(&mut r, g.order(), 0.6);
        let exact = thickness_number(g, &a, &b, SolveMode::Exact).unwrap();
        let greedy = thickness_number(g, &a, &b, SolveMode::Greedy).unwrap();
        prop_assert!(exact.exact);
        prop_assert!(is_free(g, &a, &elems(&exact.free_set)) && exact.free_set.is_subset(&b));
        prop_assert!(is_free(g, &a, &elems(&greedy.free_set)));
        prop_assert!(greedy.k <= exact.k);
        prop_assert_eq!(exact.k, brute_thickness(g, &a, &b));
    }

    #[test]
    fn system_membership_is_graded(gi in 0usize..200, seed in any::<u64>()) {
        let g = Arc::new(pick(gi).clone());
        let mut r = rng(seed);
        let lam = random_symmetric(&mut r, &g, 0.2);
        // Γ without the identity forces the full recursion
        let mut gamma = random_set(&mut r, g.order(), 0.4);
        gamma.remove(g.identity());
        let w = random_nonempty(&mut r, g.order(), 0.3);
        let thick = MwSystem::thick_system(Arc::clone(&g), lam.clone(), gamma.clone(), 3).unwrap();
        let generic = MwSystem::generic_system(Arc::clone(&g), lam.clone(), gamma.clone(), 3).unwrap();
        let mu = MwSystem::mu_system(Arc::new(GroupMean::counting_on_group(Arc::clone(&g))), lam.clone(), gamma.clone(), 3).unwrap();
        prop_assert!(!thick.member(&g.empty_set(), 0).unwrap());
        for k in 1..=3 {
            let t = thick.member(&w, k).unwrap();
            prop_assert!(!t || thick.member(&w, k - 1).unwrap());
            prop_assert!(!t || generic.member(&w, k).unwrap());
            prop_assert_eq!(mu.member(&w, k).unwrap(), mu.member(&w, 0).unwrap());
            let level = thick.derived_set(&w, k).unwrap();
            for x in level.derived.iter() {
                prop_assert!(g.translate(x, &w).intersects(&w) || g.translate(g.inverse(x), &w).intersects(&w));
                prop_assert!(gamma.contains(x));
            }
        }
        prop_assert!(thick.member(&w, 4).is_err());
    }

    #[test]
    fn thick_membership_restricts(gi in 0usize..200, seed in any::<u64>()) {
        let g = Arc::new(pick(gi).clone());
        let mut r = rng(seed);
        let lam = random_symmetric(&mut r, &g, 0.3);
        let gamma = random_symmetric(&mut r, &g, 0.4);
        let mut lam0 = lam.intersection(&random_set(&mut r, g.order(), 0.6));
        lam0.insert(g.identity());
        let gamma0 = gamma.intersection(&g.quotient_set(&lam0, &lam0).unwrap());
        let w = random_nonempty(&mut r, g.order(), 0.3);
        let big = MwSystem::thick_system(Arc::clone(&g), lam, gamma, 3).unwrap();
        let small = MwSystem::thick_system(Arc::clone(&g), lam0, gamma0, 3).unwrap();
        for k in 0..=3 {
            prop_assert!(!big.member(&w, k).unwrap() || small.member(&w, k).unwrap());
        }
    }

    #[test]
    fn descent_certificates_hold_and_verify(gi in 0usize..200, seed in any::<u64>(), n in 2usize..5) {
        let g = Arc::new(pick(gi).clone());
        let mut r = rng(seed);
        let lam = random_symmetric(&mut r, &g, 0.15);
        let act = Arc::new(ActionTable::regular(Arc::clone(&g)));
        let m = SpaceMean::counting_on_space(Arc::clone(&act));
        let b: massicot::ESet = random_nonempty(&mut r, g.order(), 0.2).recast();
        let sys = MwSystem::thick_system(Arc::clone(&g), lam.clone(), lam.clone(), 3).unwrap();
        let cert = basic_descent(&lam, &lam, &lam, &b, &m, &sys, &DescentParams::new(n).unwrap()).unwrap();
        let d = g.set_of(cert.d.iter().copied()).unwrap();
        prop_assert!(g.is_symmetric(&d) && d.contains(g.identity()));
        prop_assert!(d.is_subset(&g.product_set(&lam, &g.inverse_set(&lam)).unwrap()));
        prop_assert!(cert.k <= cert.k_bound);
        let s = GSet::from_elements(g.order(), cert.s_set.iter().copied());
        prop_assert!(g.power_set(&d, n).unwrap().is_subset(&s));
        let mb = m.mu(&b).unwrap().0;
        for f in &cert.f_values {
            prop_assert!(massicot::measure::parse_rational(&f.value).unwrap() >= mb);
        }
        let ctx = VerifyContext {
            group: Arc::clone(&g),
            action: Arc::clone(&act),
            space_weights: m.weights().to_vec(),
            group_weights: None,
            system: SystemKind::Thick,
            lambda: lam.clone(),
            gamma: lam.clone(),
            a: lam.clone(),
            b: b.clone(),
            n,
            max_depth: 3,
            max_candidates: 512,
            chain_depth: 20,
        };
        let verdict = verify_descent(&cert, &ctx, &DescentFrame { lambda: lam.clone(), gamma: lam, n });
        prop_assert!(verdict.passed(), "{:?}", verdict.failures());
        let round = Certificate::from_json(&massicot::certificate::to_json(&cert)).unwrap();
        prop_assert_eq!(round, Certificate::Descent(cert));
        prop_assert_eq!(format_rational(&mb), format_rational(&m.mu(&b).unwrap().0));
    }
}
