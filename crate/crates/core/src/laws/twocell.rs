//! 2-cells between coend composites, built from class representatives.
//!
//! A map out of a composite is given on triples `(m, x, y)`; it is evaluated
//! on every member of every class and rejected if two members of one class
//! disagree, so the result is well defined by construction.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cat::{Mor, ObjId};
use crate::prof::{self, CellKey, Composite, NatTrans, Profunctor, Window};

/// A traced composite `N ∘ M` with a shared handle on its profunctor.
pub struct Traced {
    pub comp: Composite,
    pub prof: Arc<Profunctor>,
}

impl Traced {
    pub fn new(n: &Profunctor, m: &Profunctor) -> Traced {
        let comp = prof::compose_traced(n, m).expect("composable");
        let prof = Arc::new(comp.prof.clone());
        Traced { comp, prof }
    }

    pub fn class_of(&self, key: CellKey, m: ObjId, x: usize, y: usize) -> Option<usize> {
        self.comp.class_of(key, m, x, y)
    }

    pub fn rep(&self, key: CellKey, class: usize) -> (ObjId, usize, usize) {
        self.comp.rep(key, class)
    }
}

/// A map `src ⇒ tgt` given elementwise on the cells of a plain profunctor.
pub fn from_elements(
    src: &Arc<Profunctor>,
    tgt: &Arc<Profunctor>,
    f: impl Fn(CellKey, usize) -> Option<usize>,
) -> Result<NatTrans, String> {
    let mut components = BTreeMap::new();
    for (&key, cell) in src.cells() {
        let comp = (0..cell.size)
            .map(|e| f(key, e).ok_or_else(|| format!("no image for element {e} of {key:?}")))
            .collect::<Result<Vec<_>, _>>()?;
        components.insert(key, comp);
    }
    Ok(NatTrans { source: src.clone(), target: tgt.clone(), components })
}

/// A map out of a composite, given on representatives `(m, x, y)`.
pub fn from_composite(
    src: &Traced,
    tgt: &Arc<Profunctor>,
    f: impl Fn(CellKey, ObjId, usize, usize) -> Option<usize>,
) -> Result<NatTrans, String> {
    let mut components = BTreeMap::new();
    for (&key, tr) in &src.comp.traces {
        let mut comp = vec![usize::MAX; tr.reps.len()];
        for (m, x, y) in tr.members() {
            let class = tr.class_of(m, x, y).unwrap();
            let v = f(key, m, x, y).ok_or_else(|| format!("no image for ({m}, {x}, {y}) in {key:?}"))?;
            if comp[class] == usize::MAX {
                comp[class] = v;
            } else if comp[class] != v {
                return Err(format!("map depends on the representative in cell {key:?}"));
            }
        }
        components.insert(key, comp);
    }
    Ok(NatTrans { source: src.prof.clone(), target: tgt.clone(), components })
}

/// `N ◃ t: N ∘ M ⇒ N ∘ M'` for `t: M ⇒ M'`.
pub fn whisker_left(src: &Traced, tgt: &Traced, t: &NatTrans) -> Result<NatTrans, String> {
    from_composite(src, &tgt.prof, |(c, a), m, x, y| {
        let y2 = *t.components.get(&(m, a))?.get(y)?;
        tgt.class_of((c, a), m, x, y2)
    })
}

/// `t ▹ M: N ∘ M ⇒ N' ∘ M` for `t: N ⇒ N'`.
pub fn whisker_right(src: &Traced, tgt: &Traced, t: &NatTrans) -> Result<NatTrans, String> {
    from_composite(src, &tgt.prof, |(c, a), m, x, y| {
        let x2 = *t.components.get(&(c, m))?.get(x)?;
        tgt.class_of((c, a), m, x2, y)
    })
}

/// `(N ∘ M) ∘ L ⇒ N ∘ (M ∘ L)`. `outer` is `(N∘M)∘L` over `inner = N∘M`;
/// `outer2` is `N∘(M∘L)` over `inner2 = M∘L`.
pub fn associator(outer: &Traced, inner: &Traced, outer2: &Traced, inner2: &Traced) -> Result<NatTrans, String> {
    from_composite(outer, &outer2.prof, |(c, a), m1, x, z| {
        let (m2, n, y) = inner.rep((c, m1), x);
        let yz = inner2.class_of((m2, a), m1, y, z)?;
        outer2.class_of((c, a), m2, n, yz)
    })
}

/// `1 ∘ N ⇒ N`, `(m, k, x) ↦ N(k, 1) x`.
pub fn left_unitor(src: &Traced, n: &Arc<Profunctor>) -> Result<NatTrans, String> {
    from_composite(src, n, |(c, a), m, k, x| {
        let g = Mor { src: c, tgt: m, idx: k };
        Some(*n.cell(m, a)?.cod_act.get(&g)?.get(x)?)
    })
}

/// `N ∘ 1 ⇒ N`, `(m, x, k) ↦ N(1, k) x`.
pub fn right_unitor(src: &Traced, n: &Arc<Profunctor>) -> Result<NatTrans, String> {
    from_composite(src, n, |(c, a), m, x, k| {
        let f = Mor { src: m, tgt: a, idx: k };
        Some(*n.cell(c, m)?.dom_act.get(&f)?.get(x)?)
    })
}

/// `t2 · t1`.
pub fn vcomp(t1: &NatTrans, t2: &NatTrans) -> Result<NatTrans, String> {
    let mut components = BTreeMap::new();
    for (key, c1) in &t1.components {
        let c2 = t2.components.get(key).map(|c| c.as_slice()).unwrap_or(&[]);
        let comp = c1
            .iter()
            .map(|&v| c2.get(v).copied().ok_or_else(|| format!("composite leaves the domain of the second map at {key:?}")))
            .collect::<Result<Vec<_>, _>>()?;
        components.insert(*key, comp);
    }
    Ok(NatTrans { source: t1.source.clone(), target: t2.target.clone(), components })
}

/// Components outside `window` dropped.
pub fn restrict(t: &NatTrans, window: &Window) -> NatTrans {
    let components = t
        .components
        .iter()
        .filter(|(&(b, a), _)| window.contains(b, a))
        .map(|(&k, c)| (k, c.clone()))
        .collect();
    NatTrans { source: t.source.clone(), target: t.target.clone(), components }
}

/// Whether every component is the identity.
pub fn is_identity(t: &NatTrans) -> bool {
    t.components.values().all(|c| c.iter().enumerate().all(|(i, &v)| i == v))
}
