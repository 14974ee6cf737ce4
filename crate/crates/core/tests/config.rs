use rbl::{expand_preset, Error, PolicyKind, PolicySpec, Preset, ScenarioConfig};

#[test]
fn presets_round_trip_through_json() {
    for p in Preset::ALL {
        let cfg = p.expand();
        let back = ScenarioConfig::from_json(&cfg.to_json().unwrap()).unwrap();
        assert_eq!(back, cfg, "{p}");
    }
}

#[test]
fn explicit_checkpoints_round_trip() {
    let mut cfg = expand_preset("fig8").unwrap();
    cfg.checkpoints = Some(vec![100, 1000, 32768]);
    let back = ScenarioConfig::from_json(&cfg.to_json().unwrap()).unwrap();
    assert_eq!(back, cfg);
}

#[test]
fn hand_written_json_parses() {
    let text = r#"{
        "bands": [
            {"type": "bernoulli", "p": 0.3},
            {"type": "iid_discrete", "support": [0, 0.5, 1], "probs": [0.25, 0.5, 0.25]},
            {"type": "gilbert_elliot", "p01": 0.2, "p10": 0.3, "r_idle": 1, "r_occ": 0}
        ],
        "horizon": 500,
        "runs": 3,
        "master_seed": 9,
        "policies": [
            {"name": "recency", "params": {"c": 0.5}},
            {"name": "klucb"},
            {"name": "dsee", "params": {"D": 3, "mean_source": "all"}, "label": "dsee3"},
            {"name": "rca", "params": {"L": "ln"}},
            {"name": "ucb1"}
        ]
    }"#;
    let cfg = ScenarioConfig::from_json(text).unwrap();
    let labels: Vec<String> = cfg.policies.iter().map(PolicySpec::label).collect();
    assert_eq!(
        labels,
        ["recency_c0.5", "klucb", "dsee3", "rca_Lln", "ucb1"]
    );
    assert_eq!(cfg.checkpoints(), vec![128, 256, 500]);
    assert_eq!(
        ScenarioConfig::from_json(&cfg.to_json().unwrap()).unwrap(),
        cfg
    );
}

#[test]
fn invalid_configs_are_rejected() {
    let base = expand_preset("fig8").unwrap();
    let bad = |f: &dyn Fn(&mut ScenarioConfig)| {
        let mut c = base.clone();
        f(&mut c);
        ScenarioConfig::from_json(&c.to_json().unwrap()).is_err()
    };
    assert!(bad(&|c| c.runs = 0));
    assert!(bad(&|c| c.bands.clear()));
    assert!(bad(&|c| c.horizon = 3));
    assert!(bad(&|c| c.checkpoints = Some(vec![200, 100])));
    assert!(bad(&|c| c.checkpoints = Some(vec![1 << 20])));
    assert!(bad(&|c| c.policies.push(c.policies[0].clone())));
    // Bernoulli bands expose two states, so the regenerative policy accepts
    // them; continuous bands are refused by it and by RCA.
    assert!(!bad(
        &|c| c.policies = vec![PolicyKind::RecencyRegen { c: 2.0 }.into()]
    ));
    let mut uniform = expand_preset("fig7").unwrap();
    uniform.policies = vec![PolicyKind::RecencyRegen { c: 2.0 }.into()];
    assert!(uniform.validate().is_err());
    uniform.policies = vec![PolicyKind::from_name("rca").unwrap().into()];
    assert!(uniform.validate().is_err());

    let non_ergodic = r#"{"bands": [{"type": "gilbert_elliot", "p01": 0, "p10": 0.5, "r_idle": 1, "r_occ": 0}],
        "horizon": 10, "runs": 1, "master_seed": 0, "policies": [{"name": "recency"}]}"#;
    assert!(ScenarioConfig::from_json(non_ergodic).is_err());
    assert!(ScenarioConfig::from_json("{}").is_err());
    assert!(matches!(
        expand_preset("fig10"),
        Err(Error::UnknownPreset(_))
    ));
}

#[test]
fn restricting_policies() {
    let mut cfg = expand_preset("fig8").unwrap();
    cfg.restrict_policies(&["rca".into(), "klucb".into(), "ucb1".into()])
        .unwrap();
    let labels: Vec<String> = cfg.policies.iter().map(PolicySpec::label).collect();
    assert_eq!(labels, ["rca_Lln", "rca_L1", "klucb", "ucb1"]);
    assert!(cfg.restrict_policies(&["nonsense".into()]).is_err());
}
