use super::*;
use crate::cat::Functor;
use crate::fincat;
use crate::freesmc;
use crate::gen::{self, Rng64};
use crate::prof::{iso_check, IsoOutcome, Window};
use rand::Rng;

const BUDGET: usize = 200_000;

fn cat(name: &str) -> Cat {
    Cat::fin(fincat::builtin(name).unwrap())
}

fn assert_iso(f: &Profunctor, g: &Profunctor) {
    let (f, g) = (Arc::new(f.clone()), Arc::new(g.clone()));
    match iso_check(&f, &g, &Window::All, BUDGET) {
        Ok(IsoOutcome::Iso(t)) => t.check_bijective().unwrap(),
        other => panic!("expected an isomorphism, got {other:?}"),
    }
}

/// A random sequence with terms of arity at most `max_arity`.
fn random_seq(r: &mut Rng64, maps: &Maps, a: &Cat, b: &Cat, max_arity: usize) -> SymSeq {
    let ba = maps.bang(a);
    let bc = ba.as_bang().unwrap();
    let low: Vec<ObjId> = (0..bc.object_count()).filter(|&x| bc.len_of(x) <= max_arity).collect();
    let mut body = prof::zero(&ba, b);
    for _ in 0..r.gen_range(1..=2) {
        if let Some(t) = gen::random_term(r, &ba, b, Some(&low)) {
            body = prof::sum(&body, &gen::term_prof(&ba, b, &t)).unwrap();
        }
    }
    SymSeq::new(body, max_arity).unwrap()
}

/// `E_n` over the point: one element at arity `n`.
fn e_n(maps: &Maps, n: usize) -> SymSeq {
    let pt = maps.point();
    let ba = maps.bang(&pt);
    let x = ba.as_bang().unwrap().find(&vec![0; n]).unwrap();
    let all = ba.automorphisms(x);
    let t = gen::Term { b0: 0, a0: x, subgroup: gen::subgroup_closure(&ba, x, &all) };
    SymSeq::new(gen::term_prof(&ba, &pt, &t), n).unwrap()
}

#[test]
fn identities() {
    let maps = Maps::new(ArityBound::new(3));
    let one = kleisli_id(&maps, &maps.point());
    assert_eq!(one.arity, 1);
    let b1 = maps.bang(&maps.point());
    let s = b1.as_bang().unwrap().singleton(0).unwrap();
    assert_eq!(one.body.size(0, s), 1);
    assert_eq!(one.body.cells().len(), 1);
    let zero = kleisli_id(&maps, &maps.empty_cat());
    assert!(zero.body.is_zero());
    let bz2 = cat("bz2");
    let id = kleisli_id(&maps, &bz2);
    let bb = maps.bang(&bz2);
    for (&(_, alpha), c) in id.body.cells() {
        assert_eq!(bb.as_bang().unwrap().len_of(alpha), 1);
        assert_eq!(c.size, 2);
    }
}

#[test]
fn unit_laws_on_random_sequences() {
    let maps = Maps::new(ArityBound::new(3));
    let mut r = gen::rng(21);
    let fam = ["one", "discrete2", "walking_arrow", "bz2"];
    for a in fam {
        for b in fam {
            let (a, b) = (cat(a), cat(b));
            let f = random_seq(&mut r, &maps, &a, &b, 2);
            let left = kleisli_compose(&maps, &kleisli_id(&maps, &b), &f).unwrap();
            let right = kleisli_compose(&maps, &f, &kleisli_id(&maps, &a)).unwrap();
            left.body.audit().unwrap();
            assert_iso(&left.body, &f.body);
            assert_iso(&right.body, &f.body);
        }
    }
}

#[test]
fn associativity_on_random_triples() {
    let maps = Maps::new(ArityBound::new(4));
    let mut r = gen::rng(5);
    let fam = ["one", "discrete2"];
    for _ in 0..6 {
        let c: Vec<Cat> = (0..4).map(|_| cat(fam[r.gen_range(0..2)])).collect();
        let f = random_seq(&mut r, &maps, &c[0], &c[1], 2);
        let g = random_seq(&mut r, &maps, &c[1], &c[2], 2);
        let h = random_seq(&mut r, &maps, &c[2], &c[3], 1);
        let hg = kleisli_compose(&maps, &h, &g).unwrap();
        let gf = kleisli_compose(&maps, &g, &f).unwrap();
        let l = kleisli_compose(&maps, &hg, &f).unwrap();
        let rr = kleisli_compose(&maps, &h, &gf).unwrap();
        assert_iso(&l.body, &rr.body);
    }
}

#[test]
fn composite_arity_and_bounds() {
    let maps = Maps::new(ArityBound::new(4));
    let e2 = e_n(&maps, 2);
    assert_eq!(required_bound(&e2, &e2), 4);
    let ee = kleisli_compose(&maps, &e2, &e2).unwrap();
    assert_eq!(ee.arity, 4);
    let e0 = e_n(&maps, 0);
    assert_eq!(required_bound(&e2, &e0), 2);

    let small = Maps::new(ArityBound::new(3));
    let e2s = e_n(&small, 2);
    assert_eq!(
        kleisli_compose(&small, &e2s, &e2s).unwrap_err(),
        CatSymError::InsufficientBound { required: 4, available: 3 }
    );
    // a composite that fits loses nothing against a larger bound
    let (x3, x4) = (kleisli_id(&small, &small.point()), kleisli_id(&maps, &maps.point()));
    let c3 = kleisli_compose(&small, &e2s, &x3).unwrap();
    let c4 = kleisli_compose(&maps, &e2, &x4).unwrap();
    let sizes = |p: &Profunctor| {
        let b = p.dom().as_bang().unwrap();
        p.cells().iter().map(|(&(y, a), c)| (y, b.entries(a).to_vec(), c.size)).collect::<Vec<_>>()
    };
    assert_eq!(sizes(&c3.body), sizes(&c4.body));

    assert!(SymSeq::new(e2.body.as_ref().clone(), 1).is_err());
}

#[test]
fn derivatives() {
    let maps = Maps::new(ArityBound::new(3));
    let pt = maps.point();
    let dx = derivative(&kleisli_id(&maps, &pt));
    dx.body.audit().unwrap();
    assert_eq!(dx.arity, 0);
    assert_eq!(dx.body.cells().len(), 1);
    assert_eq!(dx.body.size(0, 0), 1);

    let d3 = derivative(&e_n(&maps, 3));
    let e2 = e_n(&maps, 2);
    // over the point, A ⊸ B is a point again
    let lin = linear_hom(&pt, &pt);
    let to_pt = Functor::to_point(&lin, &pt);
    let moved = prof::reindex(&d3.body, d3.body.dom(), &pt, &Functor::identity(d3.body.dom()), &to_pt);
    assert_iso(&moved, &e2.body);

    let z = SymSeq::from_body(prof::zero(&maps.bang(&pt), &pt)).unwrap();
    assert!(derivative(&z).body.is_zero());
}

#[test]
fn derivative_cells_are_copies() {
    let maps = Maps::new(ArityBound::new(3));
    let mut r = gen::rng(8);
    for a in ["one", "discrete2", "walking_arrow", "bz2"] {
        for b in ["one", "bz2"] {
            let (a, b) = (cat(a), cat(b));
            let f = random_seq(&mut r, &maps, &a, &b, 3);
            let df = derivative(&f);
            df.body.audit().unwrap();
            let ba = maps.bang(&a);
            let bc = ba.as_bang().unwrap();
            let lin = linear_hom(&a, &b);
            for alpha in 0..bc.object_count() {
                for x in 0..a.object_count() {
                    let Some(ax) = bc.singleton(x).and_then(|s| bc.concat(alpha, s)) else { continue };
                    for y in 0..b.object_count() {
                        assert_eq!(df.body.size(lin.pair_obj(x, y), alpha), f.body.size(y, ax));
                    }
                }
            }
            assert!(df.arity + 1 <= f.arity.max(1));
        }
    }
}

#[test]
fn cartesian_structure() {
    let maps = Maps::new(ArityBound::new(3));
    let pt = maps.point();
    assert_eq!(exponential_object(&maps, &pt, &pt).object_count(), 4);

    for name in ["one", "walking_arrow", "bz2"] {
        let a = cat(name);
        let (p1, p2) = projections(&maps, &a, &a);
        let pr = pairing(&maps, &p1, &p2).unwrap();
        let sum = maps.coproduct(&a, &a).cat;
        assert_iso(&pr.body, &kleisli_id(&maps, &sum).body);

        // A & 𝟘 ≅ A
        let z = maps.empty_cat();
        let (q1, _) = projections(&maps, &a, &z);
        let s = maps.coproduct(&a, &z).cat;
        let iso = Functor::new(s.clone(), a.clone(), Some, Some);
        let (bs, ba) = (maps.bang(&s), maps.bang(&a));
        let moved = prof::reindex(&q1.body, &ba, &a, &freesmc::bang_map(&iso, &bs, &ba), &Functor::identity(&a));
        assert_iso(&moved, &kleisli_id(&maps, &a).body);
    }
}
