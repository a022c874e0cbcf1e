use multiclaw::claw::{
    build_params, collision_from_claw, hsx_collision, mclaw, verify_claw, verify_collision,
};
use multiclaw::oracle::{partition_domain, sample_random_function, RandomFunction};
use multiclaw::{QueryLedger, TrialRng};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn mclaw_outputs_are_claws_within_budget(seed in any::<u64>(), l in 2u32..=4, e in 8u32..=12) {
        let n = 1u32 << e;
        let params = build_params(l, n as f64, 1.0, 4).unwrap();
        let functions = (0..l as u64)
            .map(|i| sample_random_function(n, n, seed.wrapping_add(i)).unwrap())
            .collect::<Vec<_>>();
        let mut ledger = QueryLedger::new(params.ledger_limit());
        let r = mclaw(&functions, &params, &mut ledger, &mut TrialRng::new(seed)).unwrap();
        prop_assert!((r.total_queries as f64) <= params.qlimit());
        prop_assert_eq!(r.per_level_queries.iter().sum::<u64>(), r.total_queries);
        prop_assert_eq!(r.per_level_queries[0], params.capacity(1).min(r.total_queries));
        if let Some(claw) = r.solution {
            prop_assert!(verify_claw(&claw, &functions));
        }
    }

    #[test]
    fn collision_charges_exactly_the_claw_run(seed in any::<u64>(), l in 2u32..=3) {
        let n = 1u32 << 10;
        let params = build_params(l, n as f64, 1.0, 4).unwrap();
        let f = RandomFunction::sample(l * n, n, seed).unwrap();
        let cells = partition_domain(&f, l, n).unwrap();
        let mut a = QueryLedger::new(params.ledger_limit());
        let mut b = QueryLedger::new(params.ledger_limit());
        let c = collision_from_claw(&f, &params, &mut a, &mut TrialRng::new(seed)).unwrap();
        let m = mclaw(&cells, &params, &mut b, &mut TrialRng::new(seed)).unwrap();
        prop_assert_eq!(c.total_queries, m.total_queries);
        prop_assert_eq!(c.per_level_queries, m.per_level_queries);
        if let Some(t) = c.solution {
            prop_assert!(verify_collision(&t, &f));
        }
    }

    #[test]
    fn hsx_outputs_are_collisions(seed in any::<u64>(), l in 2u32..=4) {
        let n = 1u32 << 10;
        let f = RandomFunction::sample(l * n, n, seed).unwrap();
        let mut ledger = QueryLedger::new(1 << 20);
        let r = hsx_collision(&f, l, &mut ledger, &mut TrialRng::new(seed)).unwrap();
        prop_assert_eq!(r.per_level_queries.iter().sum::<u64>(), r.total_queries);
        if let Some(t) = r.solution {
            prop_assert!(verify_collision(&t, &f));
        }
    }
}

#[test]
fn success_rate_at_moderate_size() {
    // k = 4 gives a floor of 3/4 minus lower-order terms
    let n = 1u32 << 12;
    let params = build_params(2, n as f64, 1.0, 4).unwrap();
    let mut successes = 0;
    for t in 0..200u64 {
        let mut rng = TrialRng::for_trial(7, n as u64, t);
        let f = [
            sample_random_function(n, n, rand::RngCore::next_u64(&mut rng)).unwrap(),
            sample_random_function(n, n, rand::RngCore::next_u64(&mut rng)).unwrap(),
        ];
        let mut ledger = QueryLedger::new(params.ledger_limit());
        successes += mclaw(&f, &params, &mut ledger, &mut rng).unwrap().succeeded() as u32;
    }
    assert!(successes >= 140, "{successes}/200");
}

#[test]
fn smaller_domains_use_c_n() {
    // |X_i| = N/2 needs c_N = 2
    let n = 1u32 << 12;
    let params = build_params(2, n as f64, 2.0, 4).unwrap();
    let functions: Vec<_> = (0..2)
        .map(|i| sample_random_function(n / 2, n, 50 + i).unwrap())
        .collect();
    let mut ledger = QueryLedger::new(params.ledger_limit());
    let r = mclaw(&functions, &params, &mut ledger, &mut TrialRng::new(1)).unwrap();
    assert!(verify_claw(&r.solution.unwrap(), &functions));
    let strict = build_params(2, n as f64, 1.0, 4).unwrap();
    assert!(mclaw(&functions, &strict, &mut QueryLedger::new(strict.ledger_limit()), &mut TrialRng::new(1)).is_err());
}
