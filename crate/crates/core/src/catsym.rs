//! Categorical symmetric sequences: Kleisli maps `!A → B` in profunctors.
//!
//! Composition is `G ∘ !F ∘ p_A`, identities are derelictions, `A & B` is the
//! coproduct category and the derivative copies cells `F(b, α ⊔ ⟨a⟩)`.

use std::fmt;
use std::sync::Arc;

use crate::cat::{flip, Cat, ObjId};
use crate::freesmc::{ArityBound, BangCat};
use crate::prof::{self, Profunctor};
use crate::structmaps::Maps;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatSymError {
    InsufficientBound { required: usize, available: usize },
    /// A nonempty cell sits above the declared arity.
    ArityViolation { declared: usize, found: usize },
    NotKleisli,
    NotComposable,
}

impl fmt::Display for CatSymError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatSymError::InsufficientBound { required, available } => {
                write!(f, "composite needs arity bound {required}, only {available} available")
            }
            CatSymError::ArityViolation { declared, found } => {
                write!(f, "declared arity {declared} but a nonempty cell has arity {found}")
            }
            CatSymError::NotKleisli => f.write_str("body must be a profunctor out of a ! category"),
            CatSymError::NotComposable => f.write_str("codomain of the first map is not the base of the second"),
        }
    }
}

impl std::error::Error for CatSymError {}

/// A Kleisli map `A → B`, stored as its body `!A → B` and its arity.
#[derive(Debug, Clone)]
pub struct SymSeq {
    pub body: Arc<Profunctor>,
    pub arity: usize,
}

fn bang_dom(p: &Profunctor) -> Result<&BangCat, CatSymError> {
    p.dom().as_bang().ok_or(CatSymError::NotKleisli)
}

/// Largest `|α|` over nonempty cells.
pub fn measured_arity(p: &Profunctor) -> Result<usize, CatSymError> {
    let b = bang_dom(p)?;
    Ok(p.cells().keys().map(|&(_, a)| b.len_of(a)).max().unwrap_or(0))
}

impl SymSeq {
    /// Checks the declared arity against the cells.
    pub fn new(body: Profunctor, arity: usize) -> Result<SymSeq, CatSymError> {
        let found = measured_arity(&body)?;
        if found > arity {
            return Err(CatSymError::ArityViolation { declared: arity, found });
        }
        Ok(SymSeq { body: Arc::new(body), arity })
    }

    /// Arity read off the cells.
    pub fn from_body(body: Profunctor) -> Result<SymSeq, CatSymError> {
        let arity = measured_arity(&body)?;
        Ok(SymSeq { body: Arc::new(body), arity })
    }

    /// The base `A` of the domain `!A`.
    pub fn dom(&self) -> &Cat {
        self.body.dom().as_bang().expect("checked at construction").base()
    }

    pub fn cod(&self) -> &Cat {
        self.body.cod()
    }

    pub fn bound(&self) -> ArityBound {
        self.body.dom().as_bang().expect("checked at construction").bound()
    }
}

/// The identity Kleisli map, `d_A`.
pub fn kleisli_id(maps: &Maps, a: &Cat) -> SymSeq {
    SymSeq::from_body(maps.dereliction(a).as_ref().clone()).expect("dereliction is a Kleisli map")
}

/// `arity(G) · max(1, arity(F))`.
pub fn required_bound(g: &SymSeq, f: &SymSeq) -> usize {
    g.arity * f.arity.max(1)
}

/// `G ∘ !F ∘ p_A`, realized as two binary coends.
pub fn kleisli_compose(maps: &Maps, g: &SymSeq, f: &SymSeq) -> Result<SymSeq, CatSymError> {
    if g.dom() != f.cod() {
        return Err(CatSymError::NotComposable);
    }
    let required = required_bound(g, f);
    let available = maps.bound().n_max;
    if required > available {
        return Err(CatSymError::InsufficientBound { required, available });
    }
    let lifted = prof::compose(&maps.bang_prof(&f.body), &maps.promotion(f.dom())).expect("composable");
    let body = prof::compose(&g.body, &lifted).map_err(|_| CatSymError::NotComposable)?;
    let arity = measured_arity(&body)?;
    debug_assert!(arity <= required);
    Ok(SymSeq { body: Arc::new(body), arity })
}

/// `A ⇒ B = (!A)^op × B`.
pub fn exponential_object(maps: &Maps, a: &Cat, b: &Cat) -> Cat {
    Cat::product(&Cat::opposite(&maps.bang(a)), b)
}

/// `A ⊸ B = A^op × B`, the codomain of a derivative.
pub fn linear_hom(a: &Cat, b: &Cat) -> Cat {
    Cat::product(&Cat::opposite(a), b)
}

/// `dF: A → (A ⊸ B)` with `dF((a, b), α) = F(b, α ⊔ ⟨a⟩)`.
pub fn derivative(f: &SymSeq) -> SymSeq {
    let ba_cat = f.body.dom().clone();
    let ba = ba_cat.as_bang().expect("Kleisli map");
    let (a, b) = (f.dom().clone(), f.cod().clone());
    let cod = linear_hom(&a, &b);
    let plus = |alpha: ObjId, x: ObjId| ba.singleton(x).and_then(|s| ba.concat(alpha, s));
    let mut sizes = Vec::new();
    for alpha in 0..ba.object_count() {
        for x in 0..a.object_count() {
            let Some(ax) = plus(alpha, x) else { continue };
            for y in 0..b.object_count() {
                let s = f.body.size(y, ax);
                if s > 0 {
                    sizes.push(((cod.pair_obj(x, y), alpha), s));
                }
            }
        }
    }
    let body = &f.body;
    let dfbody = Profunctor::build_tables(
        &ba_cat,
        &cod,
        sizes,
        |g, (xy, alpha), size| {
            // g: (x', y') → (x, y) in A^op × B, i.e. u: x → x' in A and v: y' → y
            let (u, v) = cod.split_mor(g);
            let (x, y) = cod.split_obj(xy);
            let u = flip(u);
            let shift = ba.concat_mor(ba.identity(alpha), ba.singleton_mor(u).unwrap()).unwrap();
            let src = body.cell(y, plus(alpha, x).unwrap()).unwrap();
            let after = body.cell(y, shift.tgt).unwrap();
            (0..size).map(|e| after.cod_act[&v][src.dom_act[&shift][e]]).collect()
        },
        |h, (xy, alpha), size| {
            let (x, y) = cod.split_obj(xy);
            let s = ba.singleton(x).unwrap();
            let shift = ba.concat_mor(h, ba.identity(s)).unwrap();
            let src = body.cell(y, plus(alpha, x).unwrap()).unwrap();
            (0..size).map(|e| src.dom_act[&shift][e]).collect()
        },
    );
    SymSeq::from_body(dfbody).expect("derivative is a Kleisli map")
}

/// Projections `A & B → A`, `A & B → B`: `ι_i^* ∘ d_{A⊕B}`.
pub fn projections(maps: &Maps, a: &Cat, b: &Cat) -> (SymSeq, SymSeq) {
    let sum = maps.coproduct(a, b).cat;
    let d = maps.dereliction(&sum);
    let (p1, p2) = maps.projections(a, b);
    let k1 = prof::compose(&p1, &d).expect("composable");
    let k2 = prof::compose(&p2, &d).expect("composable");
    (SymSeq::from_body(k1).unwrap(), SymSeq::from_body(k2).unwrap())
}

/// `⟨F, G⟩: X → A & B`.
pub fn pairing(maps: &Maps, f: &SymSeq, g: &SymSeq) -> Result<SymSeq, CatSymError> {
    if f.body.dom() != g.body.dom() {
        return Err(CatSymError::NotComposable);
    }
    let body = maps.pairing(&f.body, &g.body);
    Ok(SymSeq { body: Arc::new(body), arity: f.arity.max(g.arity) })
}

#[cfg(test)]
mod tests;
