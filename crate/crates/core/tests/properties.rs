use proptest::prelude::*;
use rbl::harness::run_episode_selections;
use rbl::{BandSpec, PolicyKind, ScenarioConfig};

fn discrete(support: &[f64], probs: &[f64]) -> BandSpec {
    BandSpec::IidDiscrete {
        support: support.to_vec(),
        probs: probs.to_vec(),
    }
}

fn scenario(bands: Vec<BandSpec>, kind: PolicyKind, horizon: u64) -> ScenarioConfig {
    ScenarioConfig {
        bands,
        horizon,
        policies: vec![kind.into()],
        runs: 1,
        master_seed: 0,
        checkpoints: None,
    }
}

fn weights(n: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(1u32..100, n).prop_map(|w| {
        let total: u32 = w.iter().sum();
        w.into_iter().map(|x| x as f64 / total as f64).collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Adding a constant to every reward adds it to every index, so the
    /// recency policy senses the same bands. Supports are dyadic so shifted
    /// sums stay exact.
    #[test]
    fn recency_is_shift_invariant(
        a in weights(4), b in weights(4), c in weights(4), seed in any::<u64>(),
    ) {
        let base = [0.0, 0.125, 0.25, 0.5];
        let shifted: Vec<f64> = base.iter().map(|x| x + 0.5).collect();
        let make = |support: &[f64]| {
            vec![discrete(support, &a), discrete(support, &b), discrete(support, &c)]
        };
        let kind = PolicyKind::Recency { c: 2.0 };
        let lo = scenario(make(&base), kind.clone(), 3000);
        let hi = scenario(make(&shifted), kind, 3000);
        let (_, x) = run_episode_selections(&lo, &lo.policies[0], seed).unwrap();
        let (_, y) = run_episode_selections(&hi, &hi.policies[0], seed).unwrap();
        prop_assert_eq!(x, y);
    }

    #[test]
    fn episodes_are_deterministic(seed in any::<u64>(), p in 0.05f64..0.95, q in 0.05f64..0.95) {
        for kind in [
            PolicyKind::Recency { c: 0.5 },
            PolicyKind::Klucb { c_loglog: 0.0 },
            PolicyKind::from_name("dsee").unwrap(),
            PolicyKind::from_name("rca").unwrap(),
            PolicyKind::RecencyRegen { c: 2.0 },
        ] {
            let s = scenario(
                vec![BandSpec::Bernoulli { p }, BandSpec::Bernoulli { p: q }],
                kind,
                1500,
            );
            let a = run_episode_selections(&s, &s.policies[0], seed).unwrap();
            let b = run_episode_selections(&s, &s.policies[0], seed).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn regret_never_decreases(seed in any::<u64>(), p01 in 0.01f64..0.99, p10 in 0.01f64..0.99) {
        let bands = vec![
            BandSpec::GilbertElliot { p01, p10, r_idle: 1.0, r_occ: 0.0 },
            BandSpec::GilbertElliot { p01: 0.3, p10: 0.4, r_idle: 0.9, r_occ: 0.1 },
        ];
        let s = scenario(bands, PolicyKind::RecencyRegen { c: 2.0 }, 1024);
        let (t, _) = run_episode_selections(&s, &s.policies[0], seed).unwrap();
        prop_assert!(t.regret.windows(2).all(|w| w[1] >= w[0]));
    }
}
