//! Category handles shared by the profunctor engine: finite categories,
//! the truncated exponential `!A`, binary products and opposites.
//!
//! Morphisms are addressed locally: `Mor { src, tgt, idx }` is the `idx`-th
//! element of the hom-set `src → tgt`.

use std::fmt;
use std::sync::Arc;

use crate::fincat::{FinCat, FinFunctor};
use crate::freesmc::{ArityBound, BangCat};

pub type ObjId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mor {
    pub src: ObjId,
    pub tgt: ObjId,
    pub idx: usize,
}

#[derive(Clone)]
pub enum Cat {
    Fin(Arc<FinCat>),
    Bang(Arc<BangCat>),
    Product(Arc<(Cat, Cat)>),
    Opposite(Arc<Cat>),
}

impl PartialEq for Cat {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Cat::Fin(a), Cat::Fin(b)) => Arc::ptr_eq(a, b) || a == b,
            (Cat::Bang(a), Cat::Bang(b)) => Arc::ptr_eq(a, b) || (a.bound() == b.bound() && a.base() == b.base()),
            (Cat::Product(a), Cat::Product(b)) => Arc::ptr_eq(a, b) || (a.0 == b.0 && a.1 == b.1),
            (Cat::Opposite(a), Cat::Opposite(b)) => a == b,
            _ => false,
        }
    }
}
impl Eq for Cat {}

impl fmt::Debug for Cat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cat::Fin(c) => write!(f, "Fin({} objects, {} morphisms)", c.object_count(), c.morphism_count()),
            Cat::Bang(b) => write!(f, "Bang({:?}, {})", b.base(), b.bound().n_max),
            Cat::Product(p) => write!(f, "Product({:?}, {:?})", p.0, p.1),
            Cat::Opposite(c) => write!(f, "Opposite({c:?})"),
        }
    }
}

pub(crate) fn mix(a: u64, b: u64) -> u64 {
    let mut z = a ^ b.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(a << 6).wrapping_add(a >> 2);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl Cat {
    pub fn fin(c: FinCat) -> Cat {
        Cat::Fin(Arc::new(c))
    }

    pub fn bang(base: &Cat, bound: ArityBound) -> Cat {
        Cat::Bang(Arc::new(BangCat::new(base.clone(), bound)))
    }

    pub fn product(a: &Cat, b: &Cat) -> Cat {
        Cat::Product(Arc::new((a.clone(), b.clone())))
    }

    pub fn opposite(a: &Cat) -> Cat {
        match a {
            Cat::Opposite(inner) => (**inner).clone(),
            _ => Cat::Opposite(Arc::new(a.clone())),
        }
    }

    pub fn as_fin(&self) -> Option<&FinCat> {
        match self {
            Cat::Fin(c) => Some(c),
            _ => None,
        }
    }

    pub fn as_bang(&self) -> Option<&BangCat> {
        match self {
            Cat::Bang(b) => Some(b),
            _ => None,
        }
    }

    pub fn factors(&self) -> Option<(&Cat, &Cat)> {
        match self {
            Cat::Product(p) => Some((&p.0, &p.1)),
            _ => None,
        }
    }

    pub fn object_count(&self) -> usize {
        match self {
            Cat::Fin(c) => c.object_count(),
            Cat::Bang(b) => b.object_count(),
            Cat::Product(p) => p.0.object_count() * p.1.object_count(),
            Cat::Opposite(c) => c.object_count(),
        }
    }

    pub fn hom_size(&self, x: ObjId, y: ObjId) -> usize {
        match self {
            Cat::Fin(c) => c.hom(x, y).len(),
            Cat::Bang(b) => b.hom_size(x, y),
            Cat::Product(p) => {
                let (x1, x2) = self.split_obj(x);
                let (y1, y2) = self.split_obj(y);
                let h1 = p.0.hom_size(x1, y1);
                if h1 == 0 {
                    0
                } else {
                    h1 * p.1.hom_size(x2, y2)
                }
            }
            Cat::Opposite(c) => c.hom_size(y, x),
        }
    }

    pub fn homs(&self, x: ObjId, y: ObjId) -> impl Iterator<Item = Mor> {
        (0..self.hom_size(x, y)).map(move |idx| Mor { src: x, tgt: y, idx })
    }

    pub fn identity(&self, x: ObjId) -> Mor {
        match self {
            Cat::Fin(c) => Mor { src: x, tgt: x, idx: c.local_index(c.identity(x)) },
            Cat::Bang(b) => b.identity(x),
            Cat::Product(p) => {
                let (x1, x2) = self.split_obj(x);
                self.pair_mor(p.0.identity(x1), p.1.identity(x2))
            }
            Cat::Opposite(c) => c.identity(x),
        }
    }

    /// `g ∘ f`; panics if not composable.
    pub fn compose(&self, g: Mor, f: Mor) -> Mor {
        assert_eq!(f.tgt, g.src, "composing non-composable morphisms");
        match self {
            Cat::Fin(c) => {
                let gg = c.hom(g.src, g.tgt)[g.idx];
                let ff = c.hom(f.src, f.tgt)[f.idx];
                let h = c.compose(gg, ff).expect("composable");
                Mor { src: f.src, tgt: g.tgt, idx: c.local_index(h) }
            }
            Cat::Bang(b) => b.compose(g, f),
            Cat::Product(p) => {
                let (g1, g2) = self.split_mor(g);
                let (f1, f2) = self.split_mor(f);
                self.pair_mor(p.0.compose(g1, f1), p.1.compose(g2, f2))
            }
            Cat::Opposite(c) => {
                let h = c.compose(flip(f), flip(g));
                flip(h)
            }
        }
    }

    /// Objects that may share a nonempty hom-set with `x` in either direction
    /// (always includes `x`).
    pub fn peers(&self, x: ObjId) -> Vec<ObjId> {
        match self {
            Cat::Fin(c) => c.component(c.component_of(x)).to_vec(),
            Cat::Bang(b) => b.peers(x).to_vec(),
            Cat::Product(p) => {
                let (x1, x2) = self.split_obj(x);
                let n2 = p.1.object_count();
                let q2 = p.1.peers(x2);
                let mut out = Vec::new();
                for y1 in p.0.peers(x1) {
                    for &y2 in &q2 {
                        out.push(y1 * n2 + y2);
                    }
                }
                out
            }
            Cat::Opposite(c) => c.peers(x),
        }
    }

    /// Key shared by all objects of a connected component (collisions only
    /// enlarge candidate sets).
    pub fn component_key(&self, x: ObjId) -> u64 {
        match self {
            Cat::Fin(c) => c.component_of(x) as u64,
            Cat::Bang(b) => b.component_key(x),
            Cat::Product(p) => {
                let (x1, x2) = self.split_obj(x);
                mix(p.0.component_key(x1), p.1.component_key(x2))
            }
            Cat::Opposite(c) => c.component_key(x),
        }
    }

    /// Size used by arity bounds: 1 for objects of a finite category, the
    /// flattened length for `!`-objects, the larger factor for pairs.
    /// Constant along morphisms.
    pub fn weight(&self, x: ObjId) -> usize {
        match self {
            Cat::Fin(_) => 1,
            Cat::Bang(b) => b.weight(x),
            Cat::Product(p) => {
                let (x1, x2) = self.split_obj(x);
                p.0.weight(x1).max(p.1.weight(x2))
            }
            Cat::Opposite(c) => c.weight(x),
        }
    }

    pub fn object_label(&self, x: ObjId) -> String {
        match self {
            Cat::Fin(c) => c.object_label(x).to_string(),
            Cat::Bang(b) => {
                let parts: Vec<String> = b.entries(x).iter().map(|&e| b.base().object_label(e)).collect();
                format!("<{}>", parts.join(","))
            }
            Cat::Product(p) => {
                let (x1, x2) = self.split_obj(x);
                format!("({},{})", p.0.object_label(x1), p.1.object_label(x2))
            }
            Cat::Opposite(c) => c.object_label(x),
        }
    }

    pub fn split_obj(&self, x: ObjId) -> (ObjId, ObjId) {
        let (_, b) = self.factors().expect("product category");
        let n2 = b.object_count();
        (x / n2, x % n2)
    }

    pub fn pair_obj(&self, x1: ObjId, x2: ObjId) -> ObjId {
        let (_, b) = self.factors().expect("product category");
        x1 * b.object_count() + x2
    }

    pub fn split_mor(&self, m: Mor) -> (Mor, Mor) {
        let (_, b) = self.factors().expect("product category");
        let (s1, s2) = self.split_obj(m.src);
        let (t1, t2) = self.split_obj(m.tgt);
        let h2 = b.hom_size(s2, t2);
        (Mor { src: s1, tgt: t1, idx: m.idx / h2 }, Mor { src: s2, tgt: t2, idx: m.idx % h2 })
    }

    pub fn pair_mor(&self, m1: Mor, m2: Mor) -> Mor {
        let (_, b) = self.factors().expect("product category");
        let h2 = b.hom_size(m2.src, m2.tgt);
        Mor { src: self.pair_obj(m1.src, m2.src), tgt: self.pair_obj(m1.tgt, m2.tgt), idx: m1.idx * h2 + m2.idx }
    }

    /// Whether `m` has a two-sided inverse.
    pub fn inverse(&self, m: Mor) -> Option<Mor> {
        let id_src = self.identity(m.src);
        let id_tgt = self.identity(m.tgt);
        self.homs(m.tgt, m.src)
            .find(|&k| self.compose(k, m) == id_src && self.compose(m, k) == id_tgt)
    }

    /// Invertible endomorphisms of `x`.
    pub fn automorphisms(&self, x: ObjId) -> Vec<Mor> {
        self.homs(x, x).filter(|&m| self.inverse(m).is_some()).collect()
    }
}

pub(crate) fn flip(m: Mor) -> Mor {
    Mor { src: m.tgt, tgt: m.src, idx: m.idx }
}

type ObjFn = dyn Fn(ObjId) -> Option<ObjId> + Send + Sync;
type MorFn = dyn Fn(Mor) -> Option<Mor> + Send + Sync;

/// A functor between category handles. Object and morphism maps may be
/// partial when the codomain is truncated; they are total on the objects
/// whose image fits.
#[derive(Clone)]
pub struct Functor {
    pub dom: Cat,
    pub cod: Cat,
    obj: Arc<ObjFn>,
    mor: Arc<MorFn>,
}

impl Functor {
    pub fn new(
        dom: Cat,
        cod: Cat,
        obj: impl Fn(ObjId) -> Option<ObjId> + Send + Sync + 'static,
        mor: impl Fn(Mor) -> Option<Mor> + Send + Sync + 'static,
    ) -> Functor {
        Functor { dom, cod, obj: Arc::new(obj), mor: Arc::new(mor) }
    }

    pub fn obj(&self, x: ObjId) -> Option<ObjId> {
        (self.obj)(x)
    }

    pub fn mor(&self, m: Mor) -> Option<Mor> {
        (self.mor)(m)
    }

    pub fn identity(c: &Cat) -> Functor {
        Functor::new(c.clone(), c.clone(), Some, Some)
    }

    pub fn from_fin(f: &FinFunctor) -> Functor {
        let dom = f.dom.clone();
        let cod = f.cod.clone();
        let obj = f.obj.clone();
        let mor = f.mor.clone();
        let (d2, c2) = (dom.clone(), cod.clone());
        Functor::new(Cat::fin(dom), Cat::fin(cod), move |x| Some(obj[x]), move |m| {
            let g = mor[d2.hom(m.src, m.tgt)[m.idx]];
            Some(Mor { src: c2.src(g), tgt: c2.tgt(g), idx: c2.local_index(g) })
        })
    }

    /// First `self`, then `g`.
    pub fn then(&self, g: &Functor) -> Functor {
        let (f1, g1) = (self.clone(), g.clone());
        let (f2, g2) = (self.clone(), g.clone());
        Functor::new(self.dom.clone(), g.cod.clone(), move |x| f1.obj(x).and_then(|y| g1.obj(y)), move |m| {
            f2.mor(m).and_then(|n| g2.mor(n))
        })
    }

    /// `⟨F, G⟩: X → Y × Z`.
    pub fn pairing(f: &Functor, g: &Functor) -> Functor {
        assert!(f.dom == g.dom, "pairing needs a common domain");
        let cod = Cat::product(&f.cod, &g.cod);
        let (f1, g1, c1) = (f.clone(), g.clone(), cod.clone());
        let (f2, g2, c2) = (f.clone(), g.clone(), cod.clone());
        Functor::new(
            f.dom.clone(),
            cod,
            move |x| Some(c1.pair_obj(f1.obj(x)?, g1.obj(x)?)),
            move |m| Some(c2.pair_mor(f2.mor(m)?, g2.mor(m)?)),
        )
    }

    /// `F × G: X₁ × X₂ → Y₁ × Y₂`.
    pub fn product(f: &Functor, g: &Functor) -> Functor {
        let dom = Cat::product(&f.dom, &g.dom);
        let cod = Cat::product(&f.cod, &g.cod);
        let (f1, g1, d1, c1) = (f.clone(), g.clone(), dom.clone(), cod.clone());
        let (f2, g2, d2, c2) = (f.clone(), g.clone(), dom.clone(), cod.clone());
        Functor::new(
            dom,
            cod,
            move |x| {
                let (x1, x2) = d1.split_obj(x);
                Some(c1.pair_obj(f1.obj(x1)?, g1.obj(x2)?))
            },
            move |m| {
                let (m1, m2) = d2.split_mor(m);
                Some(c2.pair_mor(f2.mor(m1)?, g2.mor(m2)?))
            },
        )
    }

    pub fn proj1(p: &Cat) -> Functor {
        let (a, _) = p.factors().expect("product category");
        let (p1, p2) = (p.clone(), p.clone());
        Functor::new(p.clone(), a.clone(), move |x| Some(p1.split_obj(x).0), move |m| Some(p2.split_mor(m).0))
    }

    pub fn proj2(p: &Cat) -> Functor {
        let (_, b) = p.factors().expect("product category");
        let (p1, p2) = (p.clone(), p.clone());
        Functor::new(p.clone(), b.clone(), move |x| Some(p1.split_obj(x).1), move |m| Some(p2.split_mor(m).1))
    }

    /// The unique functor to a one-object one-morphism category `t`.
    pub fn to_point(c: &Cat, t: &Cat) -> Functor {
        assert_eq!(t.object_count(), 1);
        Functor::new(c.clone(), t.clone(), |_| Some(0), |_| Some(Mor { src: 0, tgt: 0, idx: 0 }))
    }

    /// `X → X × T` for a point `T`, sending `x` to `(x, ∗)`.
    pub fn unit_right(c: &Cat, t: &Cat) -> Functor {
        Functor::pairing(&Functor::identity(c), &Functor::to_point(c, t))
    }

    /// `X → T × X` for a point `T`.
    pub fn unit_left(c: &Cat, t: &Cat) -> Functor {
        Functor::pairing(&Functor::to_point(c, t), &Functor::identity(c))
    }

    /// `X × (Y × Z) → (X × Y) × Z`.
    pub fn assoc_left(x: &Cat, y: &Cat, z: &Cat) -> Functor {
        let dom = Cat::product(x, &Cat::product(y, z));
        let p1 = Functor::proj1(&dom);
        let rest = Functor::proj2(&dom);
        let yz = Cat::product(y, z);
        let p2 = rest.then(&Functor::proj1(&yz));
        let p3 = rest.then(&Functor::proj2(&yz));
        Functor::pairing(&Functor::pairing(&p1, &p2), &p3)
    }

    /// `(X × Y) × Z → X × (Y × Z)`.
    pub fn assoc_right(x: &Cat, y: &Cat, z: &Cat) -> Functor {
        let dom = Cat::product(&Cat::product(x, y), z);
        let xy = Cat::product(x, y);
        let first = Functor::proj1(&dom);
        let p1 = first.then(&Functor::proj1(&xy));
        let p2 = first.then(&Functor::proj2(&xy));
        let p3 = Functor::proj2(&dom);
        Functor::pairing(&p1, &Functor::pairing(&p2, &p3))
    }

    /// `X × Y → Y × X`.
    pub fn swap(x: &Cat, y: &Cat) -> Functor {
        let dom = Cat::product(x, y);
        Functor::pairing(&Functor::proj2(&dom), &Functor::proj1(&dom))
    }

    /// `(W × X) × (Y × Z) → (W × Y) × (X × Z)`.
    pub fn middle_swap(w: &Cat, x: &Cat, y: &Cat, z: &Cat) -> Functor {
        let (wx, yz) = (Cat::product(w, x), Cat::product(y, z));
        let dom = Cat::product(&wx, &yz);
        let l = Functor::proj1(&dom);
        let r = Functor::proj2(&dom);
        let pw = l.then(&Functor::proj1(&wx));
        let px = l.then(&Functor::proj2(&wx));
        let py = r.then(&Functor::proj1(&yz));
        let pz = r.then(&Functor::proj2(&yz));
        Functor::pairing(&Functor::pairing(&pw, &py), &Functor::pairing(&px, &pz))
    }

    /// Exhaustive functor audit over the domain (feasible for small domains).
    pub fn audit(&self) -> Result<(), String> {
        let (d, c) = (&self.dom, &self.cod);
        for x in 0..d.object_count() {
            let Some(fx) = self.obj(x) else { continue };
            if self.mor(d.identity(x)) != Some(c.identity(fx)) {
                return Err(format!("identity at object {x} not preserved"));
            }
            for y in d.peers(x) {
                for f in d.homs(x, y) {
                    let Some(ff) = self.mor(f) else { continue };
                    if Some(ff.src) != self.obj(f.src) || Some(ff.tgt) != self.obj(f.tgt) {
                        return Err(format!("endpoints of {f:?} not preserved"));
                    }
                    for z in d.peers(y) {
                        for g in d.homs(y, z) {
                            let (Some(gg), Some(h)) = (self.mor(g), self.mor(d.compose(g, f))) else { continue };
                            if c.compose(gg, ff) != h {
                                return Err(format!("composite of {g:?} and {f:?} not preserved"));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat;

    #[test]
    fn product_handle_matches_materialized_product() {
        let (a, b) = (fincat::walking_arrow(), fincat::bz2());
        let virt = Cat::product(&Cat::fin(a.clone()), &Cat::fin(b.clone()));
        let mat = Cat::fin(fincat::product(&a, &b));
        assert_eq!(virt.object_count(), mat.object_count());
        for x in 0..mat.object_count() {
            for y in 0..mat.object_count() {
                assert_eq!(virt.hom_size(x, y), mat.hom_size(x, y));
                for f in mat.homs(x, y) {
                    for z in 0..mat.object_count() {
                        for g in mat.homs(y, z) {
                            assert_eq!(virt.compose(g, f), mat.compose(g, f));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn opposite_handle_reverses_homs() {
        let w = Cat::fin(fincat::walking_arrow());
        let op = Cat::opposite(&w);
        assert_eq!(op.hom_size(1, 0), 1);
        assert_eq!(op.hom_size(0, 1), 0);
        assert_eq!(Cat::opposite(&op), w);
        let mat = Cat::fin(fincat::opposite(&fincat::walking_arrow()));
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(op.hom_size(x, y), mat.hom_size(x, y));
            }
        }
    }

    #[test]
    fn structural_functors_are_functors() {
        let a = Cat::fin(fincat::walking_arrow());
        let b = Cat::fin(fincat::bz2());
        let c = Cat::fin(fincat::discrete(2));
        Functor::assoc_left(&a, &b, &c).audit().unwrap();
        Functor::assoc_right(&a, &b, &c).audit().unwrap();
        Functor::swap(&a, &b).audit().unwrap();
        Functor::middle_swap(&a, &b, &c, &a).audit().unwrap();
        let t = Cat::fin(fincat::one());
        Functor::unit_right(&a, &t).audit().unwrap();
        Functor::unit_left(&b, &t).audit().unwrap();
        let bz = fincat::bz2();
        Functor::from_fin(&fincat::FinFunctor::fold(&bz)).audit().unwrap();
        assert!(b.automorphisms(0).len() == 2);
    }
}
