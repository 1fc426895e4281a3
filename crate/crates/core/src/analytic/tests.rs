use super::*;
use crate::fincat;
use crate::freesmc::ArityBound;
use crate::gen;
use std::sync::Arc;

fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

#[test]
fn sets_of_two_on_three_points() {
    let maps = Maps::new(ArityBound::new(3));
    let e2 = Species::sets_of(2, 3);
    assert_eq!(eval_count(&maps, &e2, 3).unwrap(), 6);
    assert_eq!(burnside_count(&e2, 3), 6);
    assert_eq!(burnside_count(&Species::singleton(3), 5), 5);
    assert_eq!(eval_count(&maps, &Species::zero(3), 4).unwrap(), 0);
}

#[test]
fn identity_acts_as_identity_on_presheaves() {
    let maps = Maps::new(ArityBound::new(2));
    let pt = maps.point();
    let arrow = Cat::fin(fincat::walking_arrow());
    // X(0) = 2, X(1) = 3, restriction along 0 → 1 is e ↦ e mod 2
    let x = Presheaf::new(&arrow, &pt, &[2, 3], |g, e| if g.src == g.tgt { e } else { e % 2 });
    x.prof.audit().unwrap();
    let id = catsym::kleisli_id(&maps, &arrow);
    let fx = eval_analytic(&maps, &id, &x).unwrap();
    fx.prof.audit().unwrap();
    let (a, b) = (Arc::new(fx.prof.clone()), Arc::new(x.prof.clone()));
    assert!(matches!(iso_check(&a, &b, &Window::All, 10_000), Ok(IsoOutcome::Iso(_))));

    let bz2 = Cat::fin(fincat::bz2());
    let flip = Presheaf::new(&bz2, &pt, &[2], |g, e| if g.idx == 0 { e } else { 1 - e });
    flip.prof.audit().unwrap();
    let fx = eval_analytic(&maps, &catsym::kleisli_id(&maps, &bz2), &flip).unwrap();
    let (a, b) = (Arc::new(fx.prof.clone()), Arc::new(flip.prof.clone()));
    assert!(matches!(iso_check(&a, &b, &Window::All, 10_000), Ok(IsoOutcome::Iso(_))));
}

#[test]
fn species_round_trip_through_sequences() {
    let maps = Maps::new(ArityBound::new(3));
    let mut rng = gen::rng(1);
    for _ in 0..10 {
        let f = random_species(&mut rng, 3, 3);
        f.check().unwrap();
        let seq = f.to_seq(&maps).unwrap();
        seq.body.audit().unwrap();
        assert_eq!(Species::from_seq(&seq).unwrap(), f);
    }
}

#[test]
fn cosets_and_checks() {
    let full = perm::all(3);
    assert_eq!(Level::cosets(3, &full).size, 1);
    let free = Level::cosets(3, &[perm::identity(3)]);
    assert_eq!(free.size, 6);
    free.check(3).unwrap();
    let mut bad = Level::trivial(2, 2);
    bad.action[1] = vec![1, 1];
    assert!(bad.check(2).is_err());
}

#[test]
fn products() {
    let maps = Maps::new(ArityBound::new(3));
    let x = Species::singleton(3);
    let xx = sp_product(&maps, &x, &x).unwrap();
    xx.check().unwrap();
    assert_eq!(xx.sizes(), vec![0, 0, 2, 0]);
    // the swap acts freely
    assert_eq!(xx.levels[2].action[1], vec![1, 0]);
    assert_eq!(eval_count(&maps, &xx, 3).unwrap(), 9);
    let mut rng = gen::rng(2);
    for _ in 0..5 {
        let (f, g) = (random_species(&mut rng, 2, 3), random_species(&mut rng, 2, 3));
        let fg = sp_product(&maps, &f, &g).unwrap();
        for n in 0..=3 {
            assert_eq!(fg.levels[n].size, binomial_convolution(&f, &g, n));
        }
    }
}

#[test]
fn derivatives_of_sets() {
    let maps = Maps::new(ArityBound::new(4));
    let e = Species::sets(4);
    let de = sp_derivative(&maps, &e).unwrap();
    assert!(sp_iso(&maps, &de, &e.truncate(3)).unwrap());
    for n in 1..=4 {
        let d = sp_derivative(&maps, &Species::sets_of(n, 4)).unwrap();
        assert!(sp_iso(&maps, &d, &Species::sets_of(n - 1, 3)).unwrap());
    }
    let c = egf_coeffs(&e, 4).unwrap();
    assert_eq!(c, vec![r(1, 1), r(1, 1), r(1, 2), r(1, 6), r(1, 24)]);
    assert!(is_zero_series(&egf_coeffs(&Species::zero(3), 3).unwrap()));
}

#[test]
fn egf_of_derivative_is_formal_derivative() {
    let maps = Maps::new(ArityBound::new(3));
    let mut rng = gen::rng(3);
    for _ in 0..5 {
        let f = random_species(&mut rng, 3, 3);
        let df = sp_derivative(&maps, &f).unwrap();
        assert_eq!(egf_coeffs(&df, 2).unwrap(), egf_derivative(&egf_coeffs(&f, 3).unwrap()));
    }
}

#[test]
fn substitution_units() {
    let maps = Maps::new(ArityBound::new(3));
    let x = Species::singleton(3);
    let e = Species::sets(3);
    assert!(sp_iso(&maps, &sp_substitute(&maps, &e, &x).unwrap(), &e).unwrap());
    let g = Species::sets_of(2, 3);
    assert!(sp_iso(&maps, &sp_substitute(&maps, &x, &g).unwrap(), &g).unwrap());
    let e2 = Species::sets_of(2, 3);
    assert!(sp_iso(&maps, &sp_substitute(&maps, &e2, &x).unwrap(), &e2).unwrap());
}

#[test]
fn leibniz_and_chain_rules() {
    let maps = Maps::new(ArityBound::new(4));
    let mut rng = gen::rng(4);
    for _ in 0..3 {
        let f = random_species(&mut rng, 2, 4);
        let g = random_species(&mut rng, 2, 4);
        // d(F·G) ≅ dF·G + F·dG, compared up to arity 3
        let lhs = sp_derivative(&maps, &sp_product(&maps, &f, &g).unwrap()).unwrap();
        let (df, dg) = (sp_derivative(&maps, &f).unwrap(), sp_derivative(&maps, &g).unwrap());
        let rhs = sp_sum(
            &sp_product(&maps, &df.truncate(4), &g).unwrap(),
            &sp_product(&maps, &f, &dg.truncate(4)).unwrap(),
        );
        assert!(sp_iso(&maps, &lhs.truncate(3), &rhs.truncate(3)).unwrap());
    }
    // chain rule with G free of constants, so arities stay within the bound
    for _ in 0..3 {
        let f = random_species(&mut rng, 2, 4);
        let mut g = random_species(&mut rng, 2, 4);
        g.levels[0] = Level::empty(0);
        let fg = sp_substitute(&maps, &f, &g).unwrap();
        let lhs = sp_derivative(&maps, &fg).unwrap();
        let df = sp_derivative(&maps, &f).unwrap().truncate(4);
        let dfg = sp_substitute(&maps, &df, &g).unwrap();
        let dg = sp_derivative(&maps, &g).unwrap().truncate(4);
        let rhs = sp_product(&maps, &dfg, &dg).unwrap();
        assert!(sp_iso(&maps, &lhs.truncate(3), &rhs.truncate(3)).unwrap());
    }
}

#[test]
fn burnside_matches_the_coend() {
    let maps = Maps::new(ArityBound::new(3));
    let mut rng = gen::rng(6);
    for i in 0..8 {
        let f = random_species(&mut rng, 3, 3);
        let x = 1 + i % 4;
        assert_eq!(eval_count(&maps, &f, x).unwrap() as u128, burnside_count(&f, x as u64));
    }
}
