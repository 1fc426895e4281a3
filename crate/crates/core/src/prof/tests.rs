use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::cat::{Cat, Functor};
use crate::fincat::{self, FinFunctor};
use crate::freesmc::{self, ArityBound};
use crate::gen;

const BUDGET: usize = 100_000;

fn fin(c: fincat::FinCat) -> Cat {
    Cat::fin(c)
}

fn family() -> Vec<Cat> {
    fincat::test_family().into_iter().map(|(_, c)| fin(c)).collect()
}

fn sizes(p: &Profunctor) -> BTreeMap<CellKey, usize> {
    p.cells().iter().map(|(&k, c)| (k, c.size)).collect()
}

fn assert_iso(f: &Profunctor, g: &Profunctor) -> NatTrans {
    let (f, g) = (Arc::new(f.clone()), Arc::new(g.clone()));
    match iso_check(&f, &g, &Window::All, BUDGET).expect("within budget") {
        IsoOutcome::Iso(t) => {
            check_naturality(&t).unwrap();
            t.check_bijective().unwrap();
            t
        }
        IsoOutcome::NotIso(why) => panic!("expected an isomorphism: {why}"),
    }
}

#[test]
fn hom_prof_examples() {
    let one = hom_prof(&fin(fincat::one()));
    assert_eq!(sizes(&one), BTreeMap::from([((0, 0), 1)]));
    let d2 = hom_prof(&fin(fincat::discrete(2)));
    assert_eq!(sizes(&d2), BTreeMap::from([((0, 0), 1), ((1, 1), 1)]));
    let b1 = Cat::bang(&fin(fincat::one()), ArityBound::new(3));
    let x2 = b1.as_bang().unwrap().find(&[0, 0]).unwrap();
    let h = hom_prof(&b1);
    assert_eq!(h.size(x2, x2), 2);
    h.audit().unwrap();
    for c in family() {
        hom_prof(&c).audit().unwrap();
    }
}

#[test]
fn unit_laws_on_random_profunctors() {
    let mut r = gen::rng(11);
    let cats = family();
    for a in &cats {
        for b in &cats {
            for _ in 0..2 {
                let m = gen::random_prof(&mut r, a, b, 3);
                let left = compose(&hom_prof(b), &m).unwrap();
                let right = compose(&m, &hom_prof(a)).unwrap();
                left.audit().unwrap();
                right.audit().unwrap();
                assert_eq!(sizes(&left), sizes(&m));
                assert_eq!(sizes(&right), sizes(&m));
                assert_iso(&left, &m);
                assert_iso(&right, &m);
            }
        }
    }
}

/// `M ∘ 1_A → M`, `[a', x, f] ↦ M(f)(x)`.
fn right_unitor(m: &Profunctor) -> NatTrans {
    let a = m.dom().clone();
    let comp = compose_traced(m, &hom_prof(&a)).unwrap();
    let mut components = BTreeMap::new();
    for (&(b, a0), tr) in &comp.traces {
        let comp_cell: Vec<usize> = tr
            .reps
            .iter()
            .map(|&(mid, x, y)| m.cell(b, mid).unwrap().dom_act[&Mor { src: mid, tgt: a0, idx: y }][x])
            .collect();
        components.insert((b, a0), comp_cell);
    }
    NatTrans { source: Arc::new(comp.prof), target: Arc::new(m.clone()), components }
}

#[test]
fn canonical_unitor_is_natural_and_bijective() {
    let mut r = gen::rng(3);
    for a in family() {
        for b in family() {
            let m = gen::random_prof(&mut r, &a, &b, 3);
            let t = right_unitor(&m);
            check_naturality(&t).unwrap();
            t.check_bijective().unwrap();
        }
    }
}

#[test]
fn naturality_rejects_scrambled_component() {
    let w = fin(fincat::walking_arrow());
    let h = Arc::new(hom_prof(&w));
    let id = NatTrans::identity(&h);
    check_naturality(&id).unwrap();
    // 1_W ⊕ 1_W has two-element cells; swapping one component breaks naturality
    let s = Arc::new(sum(&h, &h).unwrap());
    let mut t = NatTrans::identity(&s);
    t.components.insert((0, 0), vec![1, 0]);
    match check_naturality(&t) {
        Err(NaturalityFailure::NotNatural { mor, element, .. }) => {
            assert!(element < 2);
            let _ = mor;
        }
        other => panic!("expected a naturality witness, got {other:?}"),
    }
}

#[test]
fn zero_middle_and_zero_factor() {
    let z = fin(fincat::zero());
    let (a, c) = (fin(fincat::bz2()), fin(fincat::walking_arrow()));
    let n = zero(&z, &c);
    let m = zero(&a, &z);
    assert!(compose(&n, &m).unwrap().is_zero());
    let mut r = gen::rng(5);
    let nn = gen::random_prof(&mut r, &a, &c, 3);
    assert!(compose(&nn, &zero(&c, &a)).unwrap().is_zero());
}

#[test]
fn middle_mismatch_is_reported() {
    let a = fin(fincat::one());
    let b = fin(fincat::discrete(2));
    assert_eq!(compose(&hom_prof(&a), &hom_prof(&b)), Err(ProfError::MiddleMismatch));
    let b3 = Cat::bang(&a, ArityBound::new(3));
    let b2 = Cat::bang(&a, ArityBound::new(2));
    assert_eq!(compose(&hom_prof(&b3), &hom_prof(&b2)), Err(ProfError::MiddleMismatch));
}

#[test]
fn dereliction_after_codereliction_on_the_point() {
    let ba = Cat::bang(&fin(fincat::one()), ArityBound::new(3));
    let eta = freesmc::eta(&ba);
    let dbar = companion(&eta);
    let d = conjoint(&eta);
    let dd = compose(&d, &dbar).unwrap();
    assert_eq!(sizes(&dd), BTreeMap::from([((0, 0), 1)]));
}

#[test]
fn tensor_examples() {
    let (a, b) = (fin(fincat::walking_arrow()), fin(fincat::bz2()));
    let t = tensor(&hom_prof(&a), &hom_prof(&b));
    t.audit().unwrap();
    assert_eq!(sizes(&t), sizes(&hom_prof(&Cat::product(&a, &b))));
    assert_iso(&t, &hom_prof(&Cat::product(&a, &b)));
    assert!(tensor(&hom_prof(&a), &zero(&b, &b)).is_zero());
}

#[test]
fn sum_examples() {
    let mut r = gen::rng(9);
    let (a, b) = (fin(fincat::bz2()), fin(fincat::walking_arrow()));
    let f = gen::random_prof(&mut r, &a, &b, 3);
    let s = sum(&f, &zero(&a, &b)).unwrap();
    assert_eq!(s, f);
    assert_eq!(sum(&f, &hom_prof(&a)), Err(ProfError::NotParallel));
}

#[test]
fn bilinearity_of_composition() {
    let mut r = gen::rng(21);
    let cats = family();
    for a in &cats {
        for b in &cats {
            let c = &cats[3];
            let n = gen::random_prof(&mut r, b, c, 2);
            let m = gen::random_prof(&mut r, a, b, 2);
            let m2 = gen::random_prof(&mut r, a, b, 2);
            let lhs = compose(&n, &sum(&m, &m2).unwrap()).unwrap();
            let rhs = sum(&compose(&n, &m).unwrap(), &compose(&n, &m2).unwrap()).unwrap();
            assert_eq!(sizes(&lhs), sizes(&rhs));
            assert_iso(&lhs, &rhs);
            assert!(compose(&n, &zero(a, b)).unwrap().is_zero());
        }
    }
}

#[test]
fn associativity_on_random_triples() {
    let mut r = gen::rng(33);
    let cats = family();
    for _ in 0..25 {
        let pick = |r: &mut gen::Rng64| cats[rand::Rng::gen_range(r, 1..cats.len())].clone();
        let (a, b, c, d) = (pick(&mut r), pick(&mut r), pick(&mut r), pick(&mut r));
        let p = gen::random_prof(&mut r, &c, &d, 2);
        let q = gen::random_prof(&mut r, &b, &c, 2);
        let rr = gen::random_prof(&mut r, &a, &b, 2);
        let lhs = compose(&compose(&p, &q).unwrap(), &rr).unwrap();
        let rhs = compose(&p, &compose(&q, &rr).unwrap()).unwrap();
        lhs.audit().unwrap();
        assert_iso(&lhs, &rhs);
    }
}

#[test]
fn representatives_do_not_matter() {
    let mut r = gen::rng(41);
    let cats = family();
    for i in 0..50 {
        let (a, b, c) = (&cats[i % 5], &cats[(i / 5) % 5], &cats[(i + 2) % 5]);
        let n = gen::random_prof(&mut r, b, c, 3);
        let m = gen::random_prof(&mut r, a, b, 3);
        let comp = compose_traced(&n, &m).unwrap();
        comp.verify_representatives(&n, &m).unwrap();
        comp.prof.audit().unwrap();
    }
}

#[test]
fn companion_examples() {
    for c in family() {
        assert_eq!(companion(&Functor::identity(&c)), hom_prof(&c));
        let pt = fin(fincat::one());
        let bang = companion(&Functor::to_point(&c, &pt));
        assert!(bang.cells().values().all(|cell| cell.size == 1));
        assert_eq!(bang.cells().len(), c.object_count());
    }
    let d2 = fincat::discrete(2);
    let (i1, _) = fincat::coproduct_injections(&fincat::one(), &fincat::one());
    assert_eq!(i1.cod, d2);
    let i1 = Functor::from_fin(&i1);
    let comp = compose(&companion(&i1), &conjoint(&i1)).unwrap();
    assert_eq!(sizes(&comp), BTreeMap::from([((0, 0), 1)]));
    conjoint(&i1).audit().unwrap();
}

#[test]
fn dual_and_compact_closure() {
    let mut r = gen::rng(2);
    for a in family() {
        for b in family() {
            let f = gen::random_prof(&mut r, &a, &b, 3);
            let dd = dual(&dual(&f));
            assert_eq!(dd, f);
            dual(&f).audit().unwrap();
        }
    }
    let pt = fin(fincat::one());
    let u1 = compact_unit(&pt, &pt);
    assert_eq!(u1.total_size(), 1);

    let a = fin(fincat::discrete(2));
    let aop = Cat::opposite(&a);
    let u = compact_unit(&a, &pt);
    let v = compact_counit(&a, &pt);
    u.audit().unwrap();
    v.audit().unwrap();
    // (1 ⊗ v) ∘ assoc ∘ (u ⊗ 1): T × A → A × T
    let first = tensor(&u, &hom_prof(&a));
    let assoc = companion(&Functor::assoc_right(&a, &aop, &a));
    let second = tensor(&hom_prof(&a), &v);
    let tri = compose(&second, &compose(&assoc, &first).unwrap()).unwrap();
    let ta = Cat::product(&pt, &a);
    let at = Cat::product(&a, &pt);
    let expected: BTreeMap<CellKey, usize> = sizes(&hom_prof(&a))
        .into_iter()
        .map(|((x, y), n)| ((at.pair_obj(x, 0), ta.pair_obj(0, y)), n))
        .collect();
    assert_eq!(sizes(&tri), expected);
}

#[test]
fn triangle_law_on_a_category_with_arrows() {
    let pt = fin(fincat::one());
    for a in [fin(fincat::walking_arrow()), fin(fincat::bz2())] {
        let aop = Cat::opposite(&a);
        let first = tensor(&compact_unit(&a, &pt), &hom_prof(&a));
        let assoc = companion(&Functor::assoc_right(&a, &aop, &a));
        let second = tensor(&hom_prof(&a), &compact_counit(&a, &pt));
        let tri = compose(&second, &compose(&assoc, &first).unwrap()).unwrap();
        let back = compose(
            &conjoint(&Functor::unit_right(&a, &pt)),
            &compose(&tri, &companion(&Functor::unit_left(&a, &pt))).unwrap(),
        )
        .unwrap();
        assert_iso(&back, &hom_prof(&a));
    }
}

#[test]
fn iso_check_basics() {
    let mut r = gen::rng(17);
    let (a, b) = (fin(fincat::bz2()), fin(fincat::walking_arrow()));
    let f = Arc::new(gen::random_prof(&mut r, &a, &b, 3));
    match iso_check(&f, &f, &Window::All, BUDGET).unwrap() {
        IsoOutcome::Iso(t) => {
            for (k, comp) in &t.components {
                assert_eq!(comp, &(0..f.size(k.0, k.1)).collect::<Vec<_>>());
            }
        }
        IsoOutcome::NotIso(w) => panic!("{w}"),
    }
    let h = Arc::new(hom_prof(&a));
    let hh = Arc::new(sum(&h, &h).unwrap());
    match iso_check(&h, &hh, &Window::All, BUDGET).unwrap() {
        IsoOutcome::NotIso(NotIso::Cardinality { left: 2, right: 4, .. }) => {}
        other => panic!("expected a cardinality mismatch, got {other:?}"),
    }
    // same cardinalities, different actions: BZ₂ acting trivially vs freely
    let pt = fin(fincat::one());
    let free = Arc::new(companion(&Functor::identity(&a)));
    let trivial = {
        let one = companion(&Functor::to_point(&a, &pt));
        let c = conjoint(&Functor::to_point(&a, &pt));
        compose(&c, &one).unwrap()
    };
    let two_trivial = Arc::new(sum(&trivial, &trivial).unwrap());
    match iso_check(&free, &two_trivial, &Window::All, BUDGET).unwrap() {
        IsoOutcome::NotIso(NotIso::NoBijection) => {}
        other => panic!("expected no bijection, got {other:?}"),
    }
}

#[test]
fn iso_check_reports_budget() {
    // many interchangeable summands force branching
    let a = fin(fincat::discrete(2));
    let h = hom_prof(&a);
    let mut big = h.clone();
    for _ in 0..6 {
        big = sum(&big, &h).unwrap();
    }
    let big = Arc::new(big);
    let mut twisted = (*big).clone();
    for cell in twisted.cells_mut().values_mut() {
        cell.dom_act.values_mut().for_each(|t| t.reverse());
        cell.cod_act.values_mut().for_each(|t| t.reverse());
    }
    // identity actions reversed are no longer identities, so no iso exists
    let twisted = Arc::new(twisted);
    let out = iso_check(&big, &twisted, &Window::All, 3);
    assert!(matches!(out, Err(IsoError::Budget(3)) | Ok(IsoOutcome::NotIso(_))));
}

#[test]
fn windowed_iso_ignores_outside_cells() {
    let a = fin(fincat::discrete(2));
    let h = Arc::new(hom_prof(&a));
    let hh = Arc::new(sum(&h, &zero(&a, &a)).unwrap());
    let win = Window::new(|b, _| b == 0);
    assert!(matches!(iso_check(&h, &hh, &win, BUDGET).unwrap(), IsoOutcome::Iso(_)));
}

#[test]
fn reindex_and_copairing() {
    let a = fincat::bz2();
    let zero_cat = fincat::zero();
    let ca = Cat::fin(a.clone());
    let s = fincat::coproduct(&a, &zero_cat);
    let (i1, i2) = fincat::coproduct_injections(&a, &zero_cat);
    let (i1, i2) = (Functor::from_fin(&i1), Functor::from_fin(&i2));
    let f = hom_prof(&ca);
    let g = zero(&ca, &Cat::fin(zero_cat));
    let p = copairing_into(&f, &g, &i1, &i2);
    p.audit().unwrap();
    assert_eq!(sizes(&p), sizes(&f));
    let back = reindex(&p, &ca, &ca, &Functor::identity(&ca), &Functor::from_fin(&FinFunctor::identity(&a)));
    let _ = (s, back);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tensor_cell_sizes_multiply(seed in any::<u64>(), i in 0usize..5, j in 0usize..5) {
        let cats = family();
        let mut r = gen::rng(seed);
        let f = gen::random_prof(&mut r, &cats[i], &cats[j], 3);
        let g = gen::random_prof(&mut r, &cats[j], &cats[i], 3);
        let t = tensor(&f, &g);
        let (dom, cod) = (t.dom().clone(), t.cod().clone());
        for (&(b, a), c) in t.cells() {
            let ((b1, b2), (a1, a2)) = (cod.split_obj(b), dom.split_obj(a));
            prop_assert_eq!(c.size, f.size(b1, a1) * g.size(b2, a2));
        }
        prop_assert_eq!(t.total_size(), f.total_size() * g.total_size());
        prop_assert!(t.audit().is_ok());
    }

    #[test]
    fn sum_sizes_add(seed in any::<u64>(), i in 0usize..5, j in 0usize..5) {
        let cats = family();
        let mut r = gen::rng(seed);
        let f = gen::random_prof(&mut r, &cats[i], &cats[j], 3);
        let g = gen::random_prof(&mut r, &cats[i], &cats[j], 3);
        let s = sum(&f, &g).unwrap();
        prop_assert!(s.audit().is_ok());
        for b in 0..cats[j].object_count() {
            for a in 0..cats[i].object_count() {
                prop_assert_eq!(s.size(b, a), f.size(b, a) + g.size(b, a));
            }
        }
    }

    #[test]
    fn composites_are_functorial(seed in any::<u64>(), i in 0usize..5, j in 0usize..5, k in 0usize..5) {
        let cats = family();
        let mut r = gen::rng(seed);
        let n = gen::random_prof(&mut r, &cats[j], &cats[k], 3);
        let m = gen::random_prof(&mut r, &cats[i], &cats[j], 3);
        let comp = compose_traced(&n, &m).unwrap();
        prop_assert!(comp.prof.audit().is_ok());
        prop_assert!(comp.verify_representatives(&n, &m).is_ok());
    }
}
