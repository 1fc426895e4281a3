use super::*;

fn maps(n: usize) -> Maps {
    Maps::new(ArityBound::new(n))
}

fn cat(name: &str) -> NamedCat {
    NamedCat::builtin(name).unwrap()
}

fn assert_pass(case: &LawCase) {
    assert!(case.verdict.is_pass(), "{:#?}", case.checks.iter().filter(|c| c.verdict == Verdict::Fail).collect::<Vec<_>>());
}

#[test]
fn first_constraint_on_small_cases() {
    let m = maps(3);
    let one = check_first_constraint(&m, &cat("one"));
    assert_pass(&one);
    assert_eq!(one.verdict, Verdict::Pass);
    let zero = check_first_constraint(&m, &cat("zero"));
    assert_pass(&zero);
    // only the audit has anything to look at
    assert!(zero.checks.iter().filter(|c| !c.name.starts_with("audit")).all(|c| c.verdict == Verdict::VacuousPass));
    let bz2 = check_first_constraint(&m, &cat("bz2"));
    assert_pass(&bz2);
    let w = bz2.checks.iter().find(|c| c.name.starts_with("η'")).unwrap();
    assert_eq!(w.witness.as_deref(), Some("1 components, 2 elements"));
}

#[test]
fn second_constraint_on_the_point() {
    assert_pass(&check_second_constraint(&maps(3), &cat("one")));
    assert_pass(&check_second_constraint(&maps(2), &cat("discrete2")));
}

#[test]
fn strength_small() {
    assert_pass(&check_strength(&maps(3), &cat("one"), &cat("one")));
    assert_pass(&check_strength(&maps(2), &cat("walking_arrow"), &cat("one")));
    let vac = check_strength(&maps(3), &cat("one"), &cat("zero"));
    assert_pass(&vac);
}

#[test]
fn comonad_seely_derivative_bialgebra_on_the_point() {
    let m = maps(2);
    assert_pass(&check_comonad_laws(&m, &cat("one")));
    assert_pass(&check_seely(&m, &cat("one"), &cat("one")));
    assert_pass(&check_derivative_rules(&m, &cat("one")));
    assert_pass(&check_bialgebra(&m, &cat("one"), 7));
}

#[test]
fn windows_count_untested_cells() {
    let m = maps(2);
    let case = check_comonad_laws(&m, &cat("one"));
    let coassoc = &case.checks[0];
    assert!(coassoc.untested_cells > 0);
    assert!(coassoc.tested_cells > 0);
}

#[test]
fn empty_suite_gives_empty_report() {
    let r = run_suite(&SuiteConfig::empty("empty"), None).unwrap();
    assert!(r.cases.is_empty() && r.all_pass());
}

#[test]
fn a_corrupted_map_fails_its_case() {
    let mutation = Mutation { map: MapName::Contraction, category: "one".into(), seed: 3 };
    let cfg = SuiteConfig {
        name: "t".into(),
        seed: 0,
        entries: vec![SuiteEntry { law: LawName::Bialgebra, categories: vec!["one".into()], bound: 2 }],
    };
    let clean = run_suite(&cfg, None).unwrap();
    assert!(clean.all_pass());
    let r = run_suite(&cfg, Some(&mutation)).unwrap();
    assert_eq!(r.failed, 1);
}

#[test]
fn reports_are_deterministic() {
    let cfg = SuiteConfig {
        name: "t".into(),
        seed: 5,
        entries: vec![
            SuiteEntry { law: LawName::Bialgebra, categories: vec!["bz2".into()], bound: 2 },
            SuiteEntry { law: LawName::FirstConstraint, categories: vec!["one".into()], bound: 2 },
        ],
    };
    let (a, b) = (run_suite(&cfg, None).unwrap(), run_suite(&cfg, None).unwrap());
    assert_eq!(toml::to_string(&a).unwrap(), toml::to_string(&b).unwrap());
    assert_eq!(a.cases[0].law, LawName::FirstConstraint);
}

#[test]
fn first_failure_finds_a_cheap_witness() {
    let m = Mutation { map: MapName::Promotion, category: "one".into(), seed: 11 };
    let case = first_failure(&SuiteConfig::default_suite(0), &m).unwrap().expect("a failing case");
    assert_ne!(case.law, LawName::Comonad);
}

#[test]
fn seeded_mutations_are_distinct_targets() {
    let ms = seeded_mutations(1, 10);
    assert_eq!(ms.len(), 10);
    let targets: BTreeSet<_> = ms.iter().map(|m| (m.map, m.category.clone())).collect();
    assert_eq!(targets.len(), 10);
    assert_eq!(ms, seeded_mutations(1, 10));
}

#[test]
fn bad_entries_fail_cleanly() {
    let m = maps(2);
    let e = SuiteEntry { law: LawName::Strength, categories: vec!["one".into()], bound: 2 };
    assert_eq!(run_entry(&m, &e, 0).verdict, Verdict::Fail);
    let e = SuiteEntry { law: LawName::Comonad, categories: vec!["nope".into()], bound: 2 };
    assert_eq!(run_entry(&m, &e, 0).verdict, Verdict::Fail);
}

#[test]
fn every_mutation_target_is_detected() {
    let config = SuiteConfig::default_suite(0);
    for (map, c) in MUTATION_TARGETS {
        let m = Mutation { map, category: c.into(), seed: 1 };
        assert!(first_failure(&config, &m).unwrap().is_some(), "{map} on {c} went unnoticed");
    }
}
