//! Structural maps of the exponential on profunctors, for a fixed arity bound.
//!
//! Every map is the companion or conjoint of a functor between the truncated
//! categories (or a composite of such), written in the stored convention
//! `F(b, a)` with the codomain object first:
//!
//! | map | profunctor | cell |
//! |-----|------------|------|
//! | `p_A: !A → !!A` | conjoint of `⊔: !!A → !A` | `p(φ, α) = !A[⊔φ, α]` |
//! | `d_A: !A → A` | conjoint of `η: A → !A` | `d(a, α) = !A[⟨a⟩, α]` |
//! | `d̄_A: A → !A` | companion of `η` | `d̄(α, a) = !A[α, ⟨a⟩]` |
//! | `w_A: !A → 𝟙` | conjoint of `ε: 𝟙 → !A` | `w(∗, α) = !A[ε, α]` |
//! | `w̄_A: 𝟙 → !A` | companion of `ε` | `w̄(α, ∗) = !A[α, ε]` |
//! | `c_A: !A → !A ⊗ !A` | conjoint of `⊔` | `c((α₁, α₂), α) = !A[α₁ ⊔ α₂, α]` |
//! | `c̄_A: !A ⊗ !A → !A` | companion of `⊔` | `c̄(α, (α₁, α₂)) = !A[α, α₁ ⊔ α₂]` |
//! | `m²_{A,B}` | conjoint of `γ ↦ (!π₁γ, !π₂γ)` | `m²(γ, (α, β)) = !A[!π₁γ, α] × !B[!π₂γ, β]` |
//! | `m⁰: 𝟙 → !𝟙` | conjoint of `!𝟙 → 𝟙` | singleton at every `(n, ∗)` |
//!
//! Dereliction is written `d_A(α, a)` in the usual display; with the codomain
//! first it becomes `d(a, α) = !A[⟨a⟩, α]`, which is what makes `d̄ ⊣ d`.
//!
//! The Seely maps are realized as their defining composites. Contraction,
//! weakening and their duals use the cell formulas above, which are checked
//! once per category against composites through the Seely maps.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cat::{Cat, Functor, Mor, ObjId};
use crate::fincat::{self, FinFunctor};
use crate::freesmc::{self, ArityBound};
use crate::gen;
use crate::perm;
use crate::prof::{self, iso_check, Cell, CellKey, IsoOutcome, Profunctor, Side, Window};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapName {
    Promotion,
    Dereliction,
    Codereliction,
    Contraction,
    Weakening,
    Cocontraction,
    Coweakening,
    Mon2,
    Mon0,
    Seely2,
    Seely0,
    Seely2Inv,
    Seely0Inv,
}

impl MapName {
    pub const ALL: [MapName; 13] = [
        MapName::Promotion,
        MapName::Dereliction,
        MapName::Codereliction,
        MapName::Contraction,
        MapName::Weakening,
        MapName::Cocontraction,
        MapName::Coweakening,
        MapName::Mon2,
        MapName::Mon0,
        MapName::Seely2,
        MapName::Seely0,
        MapName::Seely2Inv,
        MapName::Seely0Inv,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MapName::Promotion => "promotion",
            MapName::Dereliction => "dereliction",
            MapName::Codereliction => "codereliction",
            MapName::Contraction => "contraction",
            MapName::Weakening => "weakening",
            MapName::Cocontraction => "cocontraction",
            MapName::Coweakening => "coweakening",
            MapName::Mon2 => "mon2",
            MapName::Mon0 => "mon0",
            MapName::Seely2 => "seely2",
            MapName::Seely0 => "seely0",
            MapName::Seely2Inv => "seely2_inv",
            MapName::Seely0Inv => "seely0_inv",
        }
    }

    /// Number of category arguments.
    pub fn arity(self) -> usize {
        match self {
            MapName::Mon2 | MapName::Seely2 | MapName::Seely2Inv => 2,
            MapName::Mon0 | MapName::Seely0 | MapName::Seely0Inv => 0,
            _ => 1,
        }
    }
}

impl fmt::Display for MapName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MapName {
    type Err = String;
    fn from_str(s: &str) -> Result<MapName, String> {
        MapName::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown structural map `{s}`"))
    }
}

/// Corrupt one action entry of one realized map: `map` on the named category
/// of the test family, with the entry picked by `seed`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mutation {
    pub map: MapName,
    pub category: String,
    pub seed: u64,
}

/// `A + B` with its injections.
#[derive(Clone)]
pub struct Coproduct {
    pub cat: Cat,
    pub i1: Functor,
    pub i2: Functor,
}

const ORACLE_BUDGET: usize = 2_000_000;

/// Factory for structural maps at one arity bound. Categories are interned so
/// that `!A` is enumerated once, and realized maps are cached.
pub struct Maps {
    bound: ArityBound,
    point: Cat,
    empty: Cat,
    registry: Mutex<Vec<Cat>>,
    bangs: Mutex<HashMap<usize, Cat>>,
    coproducts: Mutex<HashMap<(usize, usize), Coproduct>>,
    cache: Mutex<HashMap<(MapName, Vec<usize>), Arc<Profunctor>>>,
    checked: Mutex<HashSet<(MapName, Vec<usize>)>>,
    mutation: Option<(Mutation, Cat)>,
    verify: bool,
}

impl Maps {
    pub fn new(bound: ArityBound) -> Maps {
        Maps {
            bound,
            point: Cat::fin(fincat::one()),
            empty: Cat::fin(fincat::zero()),
            registry: Mutex::new(Vec::new()),
            bangs: Mutex::new(HashMap::new()),
            coproducts: Mutex::new(HashMap::new()),
            cache: Mutex::new(HashMap::new()),
            checked: Mutex::new(HashSet::new()),
            mutation: None,
            verify: true,
        }
    }

    /// A factory whose realization of `m.map` on `m.category` is corrupted.
    /// Oracle cross-checks are disabled, since composites would see the fault.
    pub fn with_mutation(bound: ArityBound, m: Mutation) -> Result<Maps, String> {
        let cat = fincat::builtin(&m.category).ok_or_else(|| format!("unknown category `{}`", m.category))?;
        let mut maps = Maps::new(bound);
        maps.mutation = Some((m, Cat::fin(cat)));
        maps.verify = false;
        Ok(maps)
    }

    /// Turn the direct-formula cross-checks on or off.
    pub fn set_verify(&mut self, on: bool) {
        self.verify = on;
    }

    pub fn bound(&self) -> ArityBound {
        self.bound
    }
    pub fn point(&self) -> Cat {
        self.point.clone()
    }
    pub fn empty_cat(&self) -> Cat {
        self.empty.clone()
    }

    fn intern(&self, c: &Cat) -> usize {
        let mut reg = self.registry.lock().unwrap();
        if let Some(i) = reg.iter().position(|x| x == c) {
            return i;
        }
        reg.push(c.clone());
        reg.len() - 1
    }

    /// The interned copy of `c`.
    pub fn cat(&self, c: &Cat) -> Cat {
        let i = self.intern(c);
        self.registry.lock().unwrap()[i].clone()
    }

    /// `!A` at this bound (one shared handle per `A`).
    pub fn bang(&self, a: &Cat) -> Cat {
        let i = self.intern(a);
        if let Some(b) = self.bangs.lock().unwrap().get(&i) {
            return b.clone();
        }
        let base = self.cat(a);
        let b = Cat::bang(&base, self.bound);
        let b = self.cat(&b);
        self.bangs.lock().unwrap().entry(i).or_insert(b).clone()
    }

    pub fn product(&self, a: &Cat, b: &Cat) -> Cat {
        self.cat(&Cat::product(&self.cat(a), &self.cat(b)))
    }

    /// `A + B` for finite categories.
    pub fn coproduct(&self, a: &Cat, b: &Cat) -> Coproduct {
        let key = (self.intern(a), self.intern(b));
        if let Some(c) = self.coproducts.lock().unwrap().get(&key) {
            return c.clone();
        }
        let (fa, fb) = (
            a.as_fin().expect("coproducts of finite categories"),
            b.as_fin().expect("coproducts of finite categories"),
        );
        let (j1, j2) = fincat::coproduct_injections(fa, fb);
        let cat = self.cat(&Cat::fin(fincat::coproduct(fa, fb)));
        let i1 = retarget(&Functor::from_fin(&j1), &self.cat(a), &cat);
        let i2 = retarget(&Functor::from_fin(&j2), &self.cat(b), &cat);
        let out = Coproduct { cat, i1, i2 };
        self.coproducts.lock().unwrap().entry(key).or_insert(out).clone()
    }

    /// Fold `A + A → A`.
    pub fn fold(&self, a: &Cat) -> Functor {
        let s = self.coproduct(a, a);
        let f = FinFunctor::fold(a.as_fin().expect("a finite category"));
        retarget(&Functor::from_fin(&f), &s.cat, &self.cat(a))
    }

    /// `Δ_A: A → A ⊕ A`, the conjoint of the fold.
    pub fn diagonal(&self, a: &Cat) -> Profunctor {
        prof::conjoint(&self.fold(a))
    }

    /// `∇_A: A ⊕ A → A`, the companion of the fold.
    pub fn codiagonal(&self, a: &Cat) -> Profunctor {
        prof::companion(&self.fold(a))
    }

    /// Projections `π_i: A ⊕ B → A, B` (conjoints of the injections).
    pub fn projections(&self, a: &Cat, b: &Cat) -> (Profunctor, Profunctor) {
        let s = self.coproduct(a, b);
        (prof::conjoint(&s.i1), prof::conjoint(&s.i2))
    }

    /// Injections `ι_i: A, B → A ⊕ B` (companions).
    pub fn injections(&self, a: &Cat, b: &Cat) -> (Profunctor, Profunctor) {
        let s = self.coproduct(a, b);
        (prof::companion(&s.i1), prof::companion(&s.i2))
    }

    /// `⟨F, G⟩: X → A ⊕ B`.
    pub fn pairing(&self, f: &Profunctor, g: &Profunctor) -> Profunctor {
        let s = self.coproduct(f.cod(), g.cod());
        prof::copairing_into(f, g, &s.i1, &s.i2)
    }

    /// `!F: !X → !Y`, with `!F(β, α) = ⊔_σ Π_i F(β_{σ(i)}, α_i)`.
    pub fn bang_prof(&self, f: &Profunctor) -> Profunctor {
        bang_prof(f, &self.bang(f.dom()), &self.bang(f.cod()))
    }

    fn get(&self, name: MapName, args: &[&Cat], build: impl FnOnce() -> Profunctor) -> Arc<Profunctor> {
        let key = (name, args.iter().map(|c| self.intern(c)).collect::<Vec<_>>());
        if let Some(p) = self.cache.lock().unwrap().get(&key) {
            return p.clone();
        }
        let mut p = build();
        if let Some((m, cat)) = &self.mutation {
            if m.map == name && args.first().map_or(true, |&c| c == cat) {
                mutate(&mut p, m.seed);
            }
        }
        let p = Arc::new(p);
        self.cache.lock().unwrap().entry(key).or_insert(p).clone()
    }

    /// Runs `check` once per map and argument list, when verification is on.
    fn verify_once(&self, name: MapName, args: &[&Cat], check: impl FnOnce()) {
        if !self.verify {
            return;
        }
        let key = (name, args.iter().map(|c| self.intern(c)).collect::<Vec<_>>());
        if self.checked.lock().unwrap().contains(&key) {
            return;
        }
        check();
        self.checked.lock().unwrap().insert(key);
    }

    pub fn promotion(&self, a: &Cat) -> Arc<Profunctor> {
        self.get(MapName::Promotion, &[a], || {
            let ba = self.bang(a);
            let bba = self.bang(&ba);
            prof::conjoint(&retarget(&freesmc::flatten(&bba), &bba, &ba))
        })
    }

    pub fn dereliction(&self, a: &Cat) -> Arc<Profunctor> {
        self.get(MapName::Dereliction, &[a], || prof::conjoint(&self.eta(a)))
    }

    pub fn codereliction(&self, a: &Cat) -> Arc<Profunctor> {
        self.get(MapName::Codereliction, &[a], || prof::companion(&self.eta(a)))
    }

    fn eta(&self, a: &Cat) -> Functor {
        let ba = self.bang(a);
        retarget(&freesmc::eta(&ba), &self.cat(a), &ba)
    }

    fn empty_seq(&self, a: &Cat) -> Functor {
        freesmc::empty_seq(&self.point, &self.bang(a))
    }

    fn concat(&self, a: &Cat) -> Functor {
        let ba = self.bang(a);
        retarget(&freesmc::concat(&ba), &self.product(&ba, &ba), &ba)
    }

    pub fn weakening(&self, a: &Cat) -> Arc<Profunctor> {
        let w = self.get(MapName::Weakening, &[a], || prof::conjoint(&self.empty_seq(a)));
        self.verify_once(MapName::Weakening, &[a], || {
            // w_A = w_𝟘 ∘ !(A → 𝟘)
            let w0 = prof::conjoint(&self.empty_seq(&self.empty));
            let to_zero = self.bang_prof(&prof::zero(&self.cat(a), &self.empty));
            let oracle = prof::compose(&w0, &to_zero).expect("composable");
            assert_same("weakening", &w, &oracle);
        });
        w
    }

    pub fn coweakening(&self, a: &Cat) -> Arc<Profunctor> {
        let wb = self.get(MapName::Coweakening, &[a], || prof::companion(&self.empty_seq(a)));
        self.verify_once(MapName::Coweakening, &[a], || {
            // w̄_A = !(𝟘 → A) ∘ s⁰
            let from_zero = self.bang_prof(&prof::zero(&self.empty, &self.cat(a)));
            let oracle = prof::compose(&from_zero, &self.seely0()).expect("composable");
            assert_same("coweakening", &wb, &oracle);
        });
        wb
    }

    pub fn contraction(&self, a: &Cat) -> Arc<Profunctor> {
        let c = self.get(MapName::Contraction, &[a], || prof::conjoint(&self.concat(a)));
        if a.as_fin().is_some() {
            self.verify_once(MapName::Contraction, &[a], || {
                // c_A = s²•_{A,A} ∘ !Δ_A
                let bdelta = self.bang_prof(&self.diagonal(a));
                let oracle = prof::compose(&self.seely2_inv_direct(a, a), &bdelta).expect("composable");
                assert_same("contraction", &c, &oracle);
            });
        }
        c
    }

    pub fn cocontraction(&self, a: &Cat) -> Arc<Profunctor> {
        let cb = self.get(MapName::Cocontraction, &[a], || prof::companion(&self.concat(a)));
        if a.as_fin().is_some() {
            self.verify_once(MapName::Cocontraction, &[a], || {
                // c̄_A = !∇_A ∘ s²_{A,A}
                let bnabla = self.bang_prof(&self.codiagonal(a));
                let oracle = prof::compose(&bnabla, &self.seely2_direct(a, a)).expect("composable");
                assert_same("cocontraction", &cb, &oracle);
            });
        }
        cb
    }

    pub fn mon2(&self, a: &Cat, b: &Cat) -> Arc<Profunctor> {
        self.get(MapName::Mon2, &[a, b], || {
            let (ba, bb) = (self.bang(a), self.bang(b));
            let bab = self.bang(&self.product(a, b));
            let unzip = retarget(&freesmc::unzip(&bab, &ba, &bb), &bab, &self.product(&ba, &bb));
            prof::conjoint(&unzip)
        })
    }

    pub fn mon0(&self) -> Arc<Profunctor> {
        let m0 = self.get(MapName::Mon0, &[], || {
            let b1 = self.bang(&self.point);
            prof::conjoint(&Functor::to_point(&b1, &self.point))
        });
        if self.bound.n_max <= 3 {
            self.verify_once(MapName::Mon0, &[], || self.check_mon0_unit_law(&m0));
        }
        m0
    }

    /// Lax unit law: `m²_{A,𝟙} ∘ (1_{!A} ⊗ m⁰)` is the transport along
    /// `!A ≅ !(A × 𝟙)`; checked for `A = 𝟙` and `A = discrete(2)`.
    fn check_mon0_unit_law(&self, m0: &Profunctor) {
        for a in [self.point.clone(), Cat::fin(fincat::discrete(2))] {
            let a = self.cat(&a);
            let ba = self.bang(&a);
            let lhs = prof::compose(&self.mon2(&a, &self.point), &prof::tensor(&prof::hom_prof(&ba), m0))
                .expect("composable");
            let a1 = self.product(&a, &self.point);
            let ba1 = self.bang(&a1);
            let unit = freesmc::bang_map(&Functor::unit_right(&a, &self.point), &ba, &ba1);
            let dom = self.product(&ba, &self.point);
            let transport = Functor::proj1(&dom).then(&unit);
            let rhs = prof::companion(&retarget(&transport, &dom, &ba1));
            assert_same("mon0 unit law", &lhs, &rhs);
        }
    }

    /// `s²_{A,B} = !(d_A ⊗ w_B, w_A ⊗ d_B) ∘ m²_{!A,!B} ∘ (p_A ⊗ p_B)`.
    pub fn seely2(&self, a: &Cat, b: &Cat) -> Arc<Profunctor> {
        let s = self.get(MapName::Seely2, &[a, b], || self.seely2_composite(a, b));
        self.verify_once(MapName::Seely2, &[a, b], || {
            assert_same("seely2", &s, &self.seely2_direct(a, b));
        });
        s
    }

    fn seely2_composite(&self, a: &Cat, b: &Cat) -> Profunctor {
        let (ba, bb) = (self.bang(a), self.bang(b));
        let left = prof::compose(
            &prof::companion(&Functor::proj1(&self.product(a, &self.point))),
            &prof::tensor(&self.dereliction(a), &self.weakening(b)),
        )
        .expect("composable");
        let right = prof::compose(
            &prof::companion(&Functor::proj2(&self.product(&self.point, b))),
            &prof::tensor(&self.weakening(a), &self.dereliction(b)),
        )
        .expect("composable");
        let pair = self.bang_prof(&self.pairing(&left, &right));
        let pp = prof::tensor(&self.promotion(a), &self.promotion(b));
        let m = self.mon2(&ba, &bb);
        let tail = prof::compose(&m, &pp).expect("composable");
        prof::compose(&pair, &tail).expect("composable")
    }

    /// `s²•_{A,B} = (!π₁ ⊗ !π₂) ∘ c_{A⊕B}`.
    pub fn seely2_inv(&self, a: &Cat, b: &Cat) -> Arc<Profunctor> {
        let s = self.get(MapName::Seely2Inv, &[a, b], || {
            let (p1, p2) = self.projections(a, b);
            let sum = self.coproduct(a, b).cat;
            let split = prof::tensor(&self.bang_prof(&p1), &self.bang_prof(&p2));
            let c = prof::conjoint(&self.concat(&sum));
            prof::compose(&split, &c).expect("composable")
        });
        self.verify_once(MapName::Seely2Inv, &[a, b], || {
            assert_same("seely2_inv", &s, &self.seely2_inv_direct(a, b));
        });
        s
    }

    /// `s²` by its cell formula: `γ` against the pair of its `A`- and
    /// `B`-subsequences, i.e. the companion of the merge. The composite
    /// [`Maps::seely2`] is checked against this whenever it is built; the
    /// contraction oracles use this form, since the composite passes through
    /// `!(!A × !B)` and is only affordable for small `A`, `B`.
    pub fn seely2_direct(&self, a: &Cat, b: &Cat) -> Profunctor {
        prof::companion(&self.merge(a, b))
    }

    pub fn seely2_inv_direct(&self, a: &Cat, b: &Cat) -> Profunctor {
        prof::conjoint(&self.merge(a, b))
    }

    /// `!A × !B → !(A + B)`.
    pub fn merge(&self, a: &Cat, b: &Cat) -> Functor {
        let s = self.coproduct(a, b);
        let (ba, bb, bs) = (self.bang(a), self.bang(b), self.bang(&s.cat));
        retarget(&freesmc::merge(&ba, &bb, &bs, &s.i1, &s.i2), &self.product(&ba, &bb), &bs)
    }

    /// `s⁰ = !(0: 𝟙 → 𝟘) ∘ m⁰`.
    pub fn seely0(&self) -> Arc<Profunctor> {
        let s = self.get(MapName::Seely0, &[], || {
            let z = self.bang_prof(&prof::zero(&self.point, &self.empty));
            prof::compose(&z, &self.mon0()).expect("composable")
        });
        self.verify_once(MapName::Seely0, &[], || {
            assert_same("seely0", &s, &prof::companion(&self.empty_seq(&self.empty)));
        });
        s
    }

    /// `s⁰• = w_𝟘`.
    pub fn seely0_inv(&self) -> Arc<Profunctor> {
        self.get(MapName::Seely0Inv, &[], || prof::conjoint(&self.empty_seq(&self.empty)))
    }

    /// Realize a map by name for the given categories.
    pub fn realize(&self, name: MapName, args: &[Cat]) -> Result<Arc<Profunctor>, String> {
        if args.len() != name.arity() {
            return Err(format!("{name} takes {} categories, got {}", name.arity(), args.len()));
        }
        let needs_fin = matches!(name, MapName::Seely2 | MapName::Seely2Inv);
        if needs_fin && args.iter().any(|c| c.as_fin().is_none()) {
            return Err(format!("{name} needs finite categories"));
        }
        Ok(match name {
            MapName::Promotion => self.promotion(&args[0]),
            MapName::Dereliction => self.dereliction(&args[0]),
            MapName::Codereliction => self.codereliction(&args[0]),
            MapName::Contraction => self.contraction(&args[0]),
            MapName::Weakening => self.weakening(&args[0]),
            MapName::Cocontraction => self.cocontraction(&args[0]),
            MapName::Coweakening => self.coweakening(&args[0]),
            MapName::Mon2 => self.mon2(&args[0], &args[1]),
            MapName::Mon0 => self.mon0(),
            MapName::Seely2 => self.seely2(&args[0], &args[1]),
            MapName::Seely0 => self.seely0(),
            MapName::Seely2Inv => self.seely2_inv(&args[0], &args[1]),
            MapName::Seely0Inv => self.seely0_inv(),
        })
    }
}

/// Same maps with the endpoints replaced by (equal) interned handles.
fn retarget(f: &Functor, dom: &Cat, cod: &Cat) -> Functor {
    debug_assert!(&f.dom == dom && &f.cod == cod);
    let (g, h) = (f.clone(), f.clone());
    Functor::new(dom.clone(), cod.clone(), move |x| g.obj(x), move |m| h.mor(m))
}

fn assert_same(what: &str, direct: &Profunctor, composite: &Profunctor) {
    let sizes = |p: &Profunctor| -> Vec<(CellKey, usize)> { p.cells().iter().map(|(&k, c)| (k, c.size)).collect() };
    assert!(
        sizes(direct) == sizes(composite),
        "{what}: direct cells differ from the defining composite"
    );
    let (d, c) = (Arc::new(direct.clone()), Arc::new(composite.clone()));
    match iso_check(&d, &c, &Window::All, ORACLE_BUDGET) {
        Ok(IsoOutcome::Iso(_)) => {}
        other => panic!("{what}: direct formula is not isomorphic to the defining composite ({other:?})"),
    }
}

/// `!F: !X → !Y`. Elements of `!F(β, α)` are pairs `(σ, (e_i))` with
/// `e_i ∈ F(β_{σ(i)}, α_i)`, grouped by the lexicographic rank of `σ` and
/// numbered in mixed radix within a block.
pub fn bang_prof(f: &Profunctor, bx: &Cat, by: &Cat) -> Profunctor {
    bang_prof_on(f, bx, by, |_| true)
}

/// The cells `!F(β, α)` with `keep(β)`; `keep` must be constant on connected
/// components of `!Y`.
pub fn bang_prof_on(f: &Profunctor, bx: &Cat, by: &Cat, keep: impl Fn(ObjId) -> bool + Sync) -> Profunctor {
    use rayon::prelude::*;
    let (bxc, byc) = (bx.as_bang().expect("!X"), by.as_bang().expect("!Y"));
    assert!(bxc.base() == f.dom() && byc.base() == f.cod(), "!F needs !dom F and !cod F");
    // column[x] = objects y with F(y, x) nonempty
    let mut column: HashMap<ObjId, Vec<ObjId>> = HashMap::new();
    for &(y, x) in f.cells().keys() {
        column.entry(x).or_default().push(y);
    }
    let layout = |beta: ObjId, alpha: ObjId| -> (Vec<Option<usize>>, usize) {
        let (ys, xs) = (byc.entries(beta), bxc.entries(alpha));
        let n = xs.len();
        let mut offsets = vec![None; perm::factorial(n)];
        let mut total = 0;
        if ys.len() != n {
            return (offsets, 0);
        }
        for sigma in perm::all(n) {
            let block: usize = (0..n).map(|i| f.size(ys[sigma[i]], xs[i])).product();
            if block > 0 {
                offsets[perm::rank(&sigma)] = Some(total);
                total += block;
            }
        }
        (offsets, total)
    };
    // candidate cells
    let mut keys: Vec<CellKey> = Vec::new();
    for alpha in 0..bxc.object_count() {
        let xs = bxc.entries(alpha);
        let cols: Vec<&[ObjId]> = xs.iter().map(|x| column.get(x).map_or(&[][..], |v| &v[..])).collect();
        if cols.iter().any(|c| c.is_empty()) {
            continue;
        }
        let mut betas = HashSet::new();
        let mut tuple = vec![0; xs.len()];
        let counts: Vec<usize> = cols.iter().map(|c| c.len()).collect();
        let total: usize = counts.iter().product();
        for t in 0..total {
            let mut rest = t;
            for i in (0..xs.len()).rev() {
                tuple[i] = cols[i][rest % counts[i]];
                rest /= counts[i];
            }
            for sigma in perm::all(xs.len()) {
                // β_{σ(i)} = y_i
                let mut beta = vec![0; xs.len()];
                for i in 0..xs.len() {
                    beta[sigma[i]] = tuple[i];
                }
                if let Some(b) = byc.find(&beta) {
                    betas.insert(b);
                }
            }
        }
        keys.extend(betas.into_iter().filter(|&b| keep(b)).map(|b| (b, alpha)));
    }
    keys.sort_unstable();
    let layouts: HashMap<CellKey, (Vec<Option<usize>>, usize)> =
        keys.par_iter().map(|&(b, a)| ((b, a), layout(b, a))).collect();
    let encode = |(beta, alpha): CellKey, sigma: &[usize], es: &[usize]| -> usize {
        let (ys, xs) = (byc.entries(beta), bxc.entries(alpha));
        let (offsets, _) = &layouts[&(beta, alpha)];
        let mut idx = 0;
        for i in 0..xs.len() {
            idx = idx * f.size(ys[sigma[i]], xs[i]) + es[i];
        }
        offsets[perm::rank(sigma)].expect("block exists") + idx
    };
    let decode = |(beta, alpha): CellKey, mut e: usize| -> (Vec<usize>, Vec<usize>) {
        let (ys, xs) = (byc.entries(beta), bxc.entries(alpha));
        let n = xs.len();
        let (offsets, _) = &layouts[&(beta, alpha)];
        let (rank, off) = offsets
            .iter()
            .enumerate()
            .filter_map(|(r, o)| o.map(|o| (r, o)))
            .filter(|&(_, o)| o <= e)
            .max_by_key(|&(_, o)| o)
            .expect("element in range");
        let sigma = perm::all(n).swap_remove(rank);
        e -= off;
        let mut es = vec![0; n];
        for i in (0..n).rev() {
            let s = f.size(ys[sigma[i]], xs[i]);
            es[i] = e % s;
            e /= s;
        }
        (sigma, es)
    };
    let cells: Vec<(CellKey, Cell)> = keys
        .par_iter()
        .filter(|k| layouts[k].1 > 0)
        .map(|&(beta, alpha)| {
            let size = layouts[&(beta, alpha)].1;
            let mut cell = Cell { size, ..Cell::default() };
            let (ys, xs) = (byc.entries(beta), bxc.entries(alpha));
            let decoded: Vec<(Vec<usize>, Vec<usize>)> = (0..size).map(|e| decode((beta, alpha), e)).collect();
            for &beta2 in byc.peers(beta) {
                for g in by.homs(beta2, beta) {
                    let pg = byc.parts(g);
                    let tinv = perm::inverse(&pg.sigma);
                    let table = decoded
                        .iter()
                        .map(|(sigma, es)| {
                            let s2 = perm::compose(&tinv, sigma);
                            let es2: Vec<usize> = (0..xs.len())
                                .map(|i| f.cell(ys[sigma[i]], xs[i]).unwrap().cod_act[&pg.arrows[s2[i]]][es[i]])
                                .collect();
                            encode((beta2, alpha), &s2, &es2)
                        })
                        .collect();
                    cell.cod_act.insert(g, table);
                }
            }
            for &alpha2 in bxc.peers(alpha) {
                for h in bx.homs(alpha, alpha2) {
                    let ph = bxc.parts(h);
                    let rinv = perm::inverse(&ph.sigma);
                    let table = decoded
                        .iter()
                        .map(|(sigma, es)| {
                            let s2 = perm::compose(sigma, &rinv);
                            let mut es2 = vec![0; xs.len()];
                            for i in 0..xs.len() {
                                es2[ph.sigma[i]] = f.cell(ys[sigma[i]], xs[i]).unwrap().dom_act[&ph.arrows[i]][es[i]];
                            }
                            encode((beta, alpha2), &s2, &es2)
                        })
                        .collect();
                    cell.dom_act.insert(h, table);
                }
            }
            ((beta, alpha), cell)
        })
        .collect();
    Profunctor::from_parts(bx.clone(), by.clone(), cells.into_iter().collect())
}

/// Corrupt one action entry whose target cell has at least two elements,
/// preferring non-identity morphisms: `v ↦ (v + 1) mod size`.
fn mutate(p: &mut Profunctor, seed: u64) {
    let mut candidates: Vec<(bool, CellKey, Side, Mor, usize)> = Vec::new();
    for (&(b, a), cell) in p.cells() {
        for (side, acts) in [(Side::Cod, &cell.cod_act), (Side::Dom, &cell.dom_act)] {
            for (&m, table) in acts {
                let target = match side {
                    Side::Cod => p.size(m.src, a),
                    Side::Dom => p.size(b, m.tgt),
                };
                if target < 2 {
                    continue;
                }
                let is_id = m.src == m.tgt && table.iter().enumerate().all(|(i, &v)| i == v);
                for e in 0..table.len() {
                    candidates.push((is_id, (b, a), side, m, e));
                }
            }
        }
    }
    if candidates.iter().any(|c| !c.0) {
        candidates.retain(|c| !c.0);
    }
    if candidates.is_empty() {
        return;
    }
    let mut r = gen::rng(seed);
    let (_, key, side, m, e) = candidates[r.gen_range(0..candidates.len())];
    let (b, a) = key;
    let target = match side {
        Side::Cod => p.size(m.src, a),
        Side::Dom => p.size(b, m.tgt),
    };
    let cell = p.cells_mut().get_mut(&key).unwrap();
    let table = match side {
        Side::Cod => cell.cod_act.get_mut(&m).unwrap(),
        Side::Dom => cell.dom_act.get_mut(&m).unwrap(),
    };
    table[e] = (table[e] + 1) % target;
}

/// Whether `mutate` would find an entry to corrupt.
pub fn is_mutable(p: &Profunctor) -> bool {
    p.cells().iter().any(|(&(b, a), cell)| {
        cell.cod_act.keys().any(|m| p.size(m.src, a) >= 2) || cell.dom_act.keys().any(|m| p.size(b, m.tgt) >= 2)
    })
}
