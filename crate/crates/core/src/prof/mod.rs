//! Finite-carrier profunctors.
//!
//! A profunctor `F: A → B` is a functor `B^op × A → Set`. Cells are stored as
//! `F(b, a)` keyed by `(b, a)`: the codomain object first (contravariant), the
//! domain object second (covariant). Elements of a cell are `0..size`.
//!
//! Every nonempty cell carries an action table for each morphism that acts on
//! it: `cod_act[g]` for `g: b' → b` maps `F(b, a) → F(b', a)`, and
//! `dom_act[f]` for `f: a → a'` maps `F(b, a) → F(b, a')`.

mod compose;
mod nat;

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::cat::{flip, Cat, Functor, Mor, ObjId};

pub use compose::{compose, compose_traced, Composite};
pub use nat::{check_naturality, iso_check, IsoError, IsoOutcome, NatTrans, NaturalityFailure, NotIso, Window};

pub type CellKey = (ObjId, ObjId);

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Cell {
    pub size: usize,
    pub cod_act: BTreeMap<Mor, Vec<usize>>,
    pub dom_act: BTreeMap<Mor, Vec<usize>>,
}

#[derive(Clone)]
pub struct Profunctor {
    dom: Cat,
    cod: Cat,
    cells: BTreeMap<CellKey, Cell>,
}

impl PartialEq for Profunctor {
    fn eq(&self, other: &Self) -> bool {
        self.dom == other.dom && self.cod == other.cod && self.cells == other.cells
    }
}

impl fmt::Debug for Profunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Profunctor({:?} -> {:?}, {} nonempty cells)", self.dom, self.cod, self.cells.len())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfError {
    #[error("profunctors are not parallel")]
    NotParallel,
    #[error("middle categories do not match (domain of the outer map differs from codomain of the inner one, or their bounds differ)")]
    MiddleMismatch,
    #[error("cell {cell:?} has no action table for {mor:?}")]
    MissingAction { cell: CellKey, mor: Mor },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Cod,
    Dom,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Cod => "codomain",
            Side::Dom => "domain",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditError {
    #[error("cell {cell:?}: no {side} action for {mor:?}")]
    MissingAction { cell: CellKey, side: Side, mor: Mor },
    #[error("cell {cell:?}: {side} action of {mor:?} has the wrong length or leaves the target cell")]
    BadTable { cell: CellKey, side: Side, mor: Mor },
    #[error("cell {cell:?}: {side} identity acts non-trivially on element {element}")]
    Identity { cell: CellKey, side: Side, element: usize },
    #[error("cell {cell:?}: {side} action of the composite of {outer:?} and {inner:?} differs at element {element}")]
    Composite { cell: CellKey, side: Side, outer: Mor, inner: Mor, element: usize },
    #[error("cell {cell:?}: actions of {cod:?} and {dom:?} do not commute at element {element}")]
    Commute { cell: CellKey, cod: Mor, dom: Mor, element: usize },
}

impl Profunctor {
    /// Assemble from finished cells; no checks (see [`Profunctor::audit`]).
    pub fn from_parts(dom: Cat, cod: Cat, cells: BTreeMap<CellKey, Cell>) -> Profunctor {
        let cells = cells.into_iter().filter(|(_, c)| c.size > 0).collect();
        Profunctor { dom, cod, cells }
    }

    /// Build from cell sizes and action functions.
    ///
    /// `cod_act(g, (b, a), e)` for `g: b' → b` returns an element of `F(b', a)`;
    /// `dom_act(f, (b, a), e)` for `f: a → a'` returns an element of `F(b, a')`.
    /// Actions are tabulated for every morphism between peers.
    pub fn build(
        dom: &Cat,
        cod: &Cat,
        sizes: impl IntoIterator<Item = (CellKey, usize)>,
        cod_act: impl Fn(Mor, CellKey, usize) -> usize + Sync,
        dom_act: impl Fn(Mor, CellKey, usize) -> usize + Sync,
    ) -> Profunctor {
        Profunctor::build_tables(
            dom,
            cod,
            sizes,
            |g, k, size| (0..size).map(|e| cod_act(g, k, e)).collect(),
            |f, k, size| (0..size).map(|e| dom_act(f, k, e)).collect(),
        )
    }

    /// Like [`Profunctor::build`], with each closure producing a whole action table.
    pub fn build_tables(
        dom: &Cat,
        cod: &Cat,
        sizes: impl IntoIterator<Item = (CellKey, usize)>,
        cod_table: impl Fn(Mor, CellKey, usize) -> Vec<usize> + Sync,
        dom_table: impl Fn(Mor, CellKey, usize) -> Vec<usize> + Sync,
    ) -> Profunctor {
        let sizes: BTreeMap<CellKey, usize> = sizes.into_iter().filter(|&(_, s)| s > 0).collect();
        let built: Vec<(CellKey, Cell)> = sizes
            .par_iter()
            .map(|(&(b, a), &size)| {
                let mut cell = Cell { size, ..Cell::default() };
                for b2 in cod.peers(b) {
                    for g in cod.homs(b2, b) {
                        assert!(sizes.contains_key(&(b2, a)), "action target cell missing");
                        cell.cod_act.insert(g, cod_table(g, (b, a), size));
                    }
                }
                for a2 in dom.peers(a) {
                    for f in dom.homs(a, a2) {
                        assert!(sizes.contains_key(&(b, a2)), "action target cell missing");
                        cell.dom_act.insert(f, dom_table(f, (b, a), size));
                    }
                }
                ((b, a), cell)
            })
            .collect();
        Profunctor { dom: dom.clone(), cod: cod.clone(), cells: built.into_iter().collect() }
    }

    pub fn dom(&self) -> &Cat {
        &self.dom
    }
    pub fn cod(&self) -> &Cat {
        &self.cod
    }
    pub fn cells(&self) -> &BTreeMap<CellKey, Cell> {
        &self.cells
    }
    pub(crate) fn cells_mut(&mut self) -> &mut BTreeMap<CellKey, Cell> {
        &mut self.cells
    }
    pub fn cell(&self, b: ObjId, a: ObjId) -> Option<&Cell> {
        self.cells.get(&(b, a))
    }
    pub fn size(&self, b: ObjId, a: ObjId) -> usize {
        self.cells.get(&(b, a)).map_or(0, |c| c.size)
    }
    /// Nonempty cells `(b, a)` for a fixed `b`.
    pub fn row(&self, b: ObjId) -> impl Iterator<Item = (ObjId, &Cell)> {
        self.cells.range((b, 0)..=(b, usize::MAX)).map(|(&(_, a), c)| (a, c))
    }
    pub fn is_zero(&self) -> bool {
        self.cells.is_empty()
    }
    pub fn total_size(&self) -> usize {
        self.cells.values().map(|c| c.size).sum()
    }

    /// Exhaustive functoriality audit over all stored cells.
    pub fn audit(&self) -> Result<(), AuditError> {
        let keys: Vec<&CellKey> = self.cells.keys().collect();
        let found = keys.par_iter().find_map_first(|&&key| self.audit_cell(key).err());
        match found {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }

    fn audit_cell(&self, key: CellKey) -> Result<(), AuditError> {
        let (b, a) = key;
        let cell = &self.cells[&key];
        let (cod, dom) = (&self.cod, &self.dom);
        // completeness and ranges
        for b2 in cod.peers(b) {
            for g in cod.homs(b2, b) {
                let t = cell.cod_act.get(&g).ok_or(AuditError::MissingAction { cell: key, side: Side::Cod, mor: g })?;
                let tsize = self.size(b2, a);
                if t.len() != cell.size || t.iter().any(|&v| v >= tsize) {
                    return Err(AuditError::BadTable { cell: key, side: Side::Cod, mor: g });
                }
            }
        }
        for a2 in dom.peers(a) {
            for f in dom.homs(a, a2) {
                let t = cell.dom_act.get(&f).ok_or(AuditError::MissingAction { cell: key, side: Side::Dom, mor: f })?;
                let tsize = self.size(b, a2);
                if t.len() != cell.size || t.iter().any(|&v| v >= tsize) {
                    return Err(AuditError::BadTable { cell: key, side: Side::Dom, mor: f });
                }
            }
        }
        // identities
        for (side, table) in [(Side::Cod, &cell.cod_act[&cod.identity(b)]), (Side::Dom, &cell.dom_act[&dom.identity(a)])] {
            if let Some(element) = (0..cell.size).find(|&e| table[e] != e) {
                return Err(AuditError::Identity { cell: key, side, element });
            }
        }
        // composites on the codomain side: F(g ∘ h) = F(h) ∘ F(g)
        for (&g, tg) in &cell.cod_act {
            let mid = self.cells.get(&(g.src, a)).ok_or(AuditError::BadTable { cell: key, side: Side::Cod, mor: g })?;
            for (&h, th) in &mid.cod_act {
                let tgh = &cell.cod_act[&cod.compose(g, h)];
                if let Some(element) = (0..cell.size).find(|&e| tgh[e] != th[tg[e]]) {
                    return Err(AuditError::Composite { cell: key, side: Side::Cod, outer: g, inner: h, element });
                }
            }
        }
        // composites on the domain side: F(f₂ ∘ f) = F(f₂) ∘ F(f)
        for (&f, tf) in &cell.dom_act {
            let mid = self.cells.get(&(b, f.tgt)).ok_or(AuditError::BadTable { cell: key, side: Side::Dom, mor: f })?;
            for (&f2, tf2) in &mid.dom_act {
                let t = &cell.dom_act[&dom.compose(f2, f)];
                if let Some(element) = (0..cell.size).find(|&e| t[e] != tf2[tf[e]]) {
                    return Err(AuditError::Composite { cell: key, side: Side::Dom, outer: f2, inner: f, element });
                }
            }
        }
        // the two actions commute
        for (&g, tg) in &cell.cod_act {
            let after_g = &self.cells[&(g.src, a)];
            for (&f, tf) in &cell.dom_act {
                let after_f = &self.cells[&(b, f.tgt)];
                let fg = &after_g.dom_act[&f];
                let gf = &after_f.cod_act[&g];
                if let Some(element) = (0..cell.size).find(|&e| fg[tg[e]] != gf[tf[e]]) {
                    return Err(AuditError::Commute { cell: key, cod: g, dom: f, element });
                }
            }
        }
        Ok(())
    }
}

/// `1_C`: the hom profunctor, `1_C(c', c) = C[c', c]`.
pub fn hom_prof(c: &Cat) -> Profunctor {
    companion(&Functor::identity(c))
}

/// `F_*: X → Y` with `F_*(y, x) = Y[y, Fx]`.
pub fn companion(f: &Functor) -> Profunctor {
    let (x_cat, y_cat) = (&f.dom, &f.cod);
    let mut sizes = Vec::new();
    for x in 0..x_cat.object_count() {
        let Some(fx) = f.obj(x) else { continue };
        for y in y_cat.peers(fx) {
            sizes.push(((y, x), y_cat.hom_size(y, fx)));
        }
    }
    Profunctor::build_tables(
        x_cat,
        y_cat,
        sizes,
        |g, (y, x), size| {
            let fx = f.obj(x).unwrap();
            (0..size).map(|e| y_cat.compose(Mor { src: y, tgt: fx, idx: e }, g).idx).collect()
        },
        |m, (y, x), size| {
            let fx = f.obj(x).unwrap();
            let fm = f.mor(m).expect("functor defined on the whole component");
            (0..size).map(|e| y_cat.compose(fm, Mor { src: y, tgt: fx, idx: e }).idx).collect()
        },
    )
}

/// `F^*: Y → X` with `F^*(x, y) = Y[Fx, y]`.
pub fn conjoint(f: &Functor) -> Profunctor {
    conjoint_on(f, |_| true)
}

/// The cells of `F^*` whose codomain object satisfies `keep`. `keep` must be
/// constant on connected components, so the result is again a profunctor.
pub fn conjoint_on(f: &Functor, keep: impl Fn(ObjId) -> bool) -> Profunctor {
    let (x_cat, y_cat) = (&f.dom, &f.cod);
    let mut sizes = Vec::new();
    for x in (0..x_cat.object_count()).filter(|&x| keep(x)) {
        let Some(fx) = f.obj(x) else { continue };
        for y in y_cat.peers(fx) {
            sizes.push(((x, y), y_cat.hom_size(fx, y)));
        }
    }
    Profunctor::build_tables(
        y_cat,
        x_cat,
        sizes,
        |m, (x, y), size| {
            let fx = f.obj(x).unwrap();
            let fm = f.mor(m).expect("functor defined on the whole component");
            (0..size).map(|e| y_cat.compose(Mor { src: fx, tgt: y, idx: e }, fm).idx).collect()
        },
        |g, (x, y), size| {
            let fx = f.obj(x).unwrap();
            (0..size).map(|e| y_cat.compose(g, Mor { src: fx, tgt: y, idx: e }).idx).collect()
        },
    )
}

/// `F ⊗ G: A × A' → B × B'`, element `(i, j)` stored as `i·|G cell| + j`.
pub fn tensor(f: &Profunctor, g: &Profunctor) -> Profunctor {
    let dom = Cat::product(&f.dom, &g.dom);
    let cod = Cat::product(&f.cod, &g.cod);
    let mut sizes = Vec::new();
    for (&(b, a), cf) in &f.cells {
        for (&(b2, a2), cg) in &g.cells {
            sizes.push(((cod.pair_obj(b, b2), dom.pair_obj(a, a2)), cf.size * cg.size));
        }
    }
    Profunctor::build(
        &dom,
        &cod,
        sizes,
        |h, (b, a), e| {
            let ((b1, b2), (a1, a2)) = (cod.split_obj(b), dom.split_obj(a));
            let (h1, h2) = cod.split_mor(h);
            let gsize = g.size(b2, a2);
            let (i, j) = (e / gsize, e % gsize);
            let i2 = f.cells[&(b1, a1)].cod_act[&h1][i];
            let j2 = g.cells[&(b2, a2)].cod_act[&h2][j];
            i2 * g.size(h2.src, a2) + j2
        },
        |k, (b, a), e| {
            let ((b1, b2), (a1, a2)) = (cod.split_obj(b), dom.split_obj(a));
            let (k1, k2) = dom.split_mor(k);
            let gsize = g.size(b2, a2);
            let (i, j) = (e / gsize, e % gsize);
            let i2 = f.cells[&(b1, a1)].dom_act[&k1][i];
            let j2 = g.cells[&(b2, a2)].dom_act[&k2][j];
            i2 * g.size(b2, k2.tgt) + j2
        },
    )
}

/// `F + G`: elements of `F` first, then those of `G`.
pub fn sum(f: &Profunctor, g: &Profunctor) -> Result<Profunctor, ProfError> {
    if f.dom != g.dom || f.cod != g.cod {
        return Err(ProfError::NotParallel);
    }
    let mut keys: Vec<CellKey> = f.cells.keys().chain(g.cells.keys()).copied().collect();
    keys.sort_unstable();
    keys.dedup();
    let mut cells = BTreeMap::new();
    for key in keys {
        let (cf, cg) = (f.cells.get(&key), g.cells.get(&key));
        let nf = cf.map_or(0, |c| c.size);
        let mut cell = Cell { size: nf + cg.map_or(0, |c| c.size), ..Cell::default() };
        let merge = |tf: Option<&Vec<usize>>, tg: Option<&Vec<usize>>, shift: usize| -> Vec<usize> {
            let mut t = tf.cloned().unwrap_or_default();
            if let Some(tg) = tg {
                t.extend(tg.iter().map(|&v| v + shift));
            }
            t
        };
        let cod_keys: Vec<Mor> = cf
            .into_iter()
            .chain(cg)
            .flat_map(|c| c.cod_act.keys().copied())
            .collect();
        for m in cod_keys {
            let shift = f.size(m.src, key.1);
            cell.cod_act.insert(m, merge(cf.and_then(|c| c.cod_act.get(&m)), cg.and_then(|c| c.cod_act.get(&m)), shift));
        }
        let dom_keys: Vec<Mor> = cf
            .into_iter()
            .chain(cg)
            .flat_map(|c| c.dom_act.keys().copied())
            .collect();
        for m in dom_keys {
            let shift = f.size(key.0, m.tgt);
            cell.dom_act.insert(m, merge(cf.and_then(|c| c.dom_act.get(&m)), cg.and_then(|c| c.dom_act.get(&m)), shift));
        }
        cells.insert(key, cell);
    }
    Ok(Profunctor { dom: f.dom.clone(), cod: f.cod.clone(), cells })
}

/// `0_{A,B}`: all cells empty.
pub fn zero(dom: &Cat, cod: &Cat) -> Profunctor {
    Profunctor { dom: dom.clone(), cod: cod.clone(), cells: BTreeMap::new() }
}

/// `F^⊥: B^op → A^op`, `F^⊥(a, b) = F(b, a)`.
pub fn dual(f: &Profunctor) -> Profunctor {
    let cells = f
        .cells
        .iter()
        .map(|(&(b, a), c)| {
            let cell = Cell {
                size: c.size,
                cod_act: c.dom_act.iter().map(|(&m, t)| (flip(m), t.clone())).collect(),
                dom_act: c.cod_act.iter().map(|(&m, t)| (flip(m), t.clone())).collect(),
            };
            ((a, b), cell)
        })
        .collect();
    Profunctor { dom: Cat::opposite(&f.cod), cod: Cat::opposite(&f.dom), cells }
}

/// `u_A: T → A × A^op` with `u((a', a), ∗) = A[a', a]`, for a point `T`.
pub fn compact_unit(a_cat: &Cat, point: &Cat) -> Profunctor {
    let cod = Cat::product(a_cat, &Cat::opposite(a_cat));
    let mut sizes = Vec::new();
    for a in 0..a_cat.object_count() {
        for a2 in a_cat.peers(a) {
            sizes.push(((cod.pair_obj(a2, a), 0), a_cat.hom_size(a2, a)));
        }
    }
    Profunctor::build(
        point,
        &cod,
        sizes,
        |g, (c, _), e| {
            let (a2, a) = cod.split_obj(c);
            let (g1, g2) = cod.split_mor(g);
            let h = a_cat.compose(Mor { src: a2, tgt: a, idx: e }, g1);
            a_cat.compose(flip(g2), h).idx
        },
        |_, _, e| e,
    )
}

/// `v_A: A^op × A → T` with `v(∗, (a', a)) = A[a', a]`.
pub fn compact_counit(a_cat: &Cat, point: &Cat) -> Profunctor {
    let dom = Cat::product(&Cat::opposite(a_cat), a_cat);
    let mut sizes = Vec::new();
    for a in 0..a_cat.object_count() {
        for a2 in a_cat.peers(a) {
            sizes.push(((0, dom.pair_obj(a2, a)), a_cat.hom_size(a2, a)));
        }
    }
    Profunctor::build(
        &dom,
        point,
        sizes,
        |_, _, e| e,
        |k, (_, d), e| {
            let (a2, a) = dom.split_obj(d);
            let (k1, k2) = dom.split_mor(k);
            let h = a_cat.compose(Mor { src: a2, tgt: a, idx: e }, flip(k1));
            a_cat.compose(k2, h).idx
        },
    )
}

/// `[F, G]: X → A + B` from `F: X → A`, `G: X → B`, given the coproduct
/// injections (the pairing into a biproduct).
pub fn copairing_into(f: &Profunctor, g: &Profunctor, i1: &Functor, i2: &Functor) -> Profunctor {
    assert!(f.dom == g.dom && i1.cod == i2.cod && f.cod == i1.dom && g.cod == i2.dom);
    let s = &i1.cod;
    let mut cells = BTreeMap::new();
    for (src, inj) in [(f, i1), (g, i2)] {
        for (&(b, a), c) in &src.cells {
            let cell = Cell {
                size: c.size,
                cod_act: c.cod_act.iter().map(|(&m, t)| (inj.mor(m).unwrap(), t.clone())).collect(),
                dom_act: c.dom_act.clone(),
            };
            cells.insert((inj.obj(b).unwrap(), a), cell);
        }
    }
    Profunctor { dom: f.dom.clone(), cod: s.clone(), cells }
}

/// Reindex a profunctor along isomorphisms of its endpoint categories given
/// as object/morphism bijections; used to identify `A + 𝟘` with `A` and similar.
pub fn reindex(f: &Profunctor, dom: &Cat, cod: &Cat, dom_map: &Functor, cod_map: &Functor) -> Profunctor {
    let cells = f
        .cells
        .iter()
        .map(|(&(b, a), c)| {
            let cell = Cell {
                size: c.size,
                cod_act: c.cod_act.iter().map(|(&m, t)| (cod_map.mor(m).unwrap(), t.clone())).collect(),
                dom_act: c.dom_act.iter().map(|(&m, t)| (dom_map.mor(m).unwrap(), t.clone())).collect(),
            };
            ((cod_map.obj(b).unwrap(), dom_map.obj(a).unwrap()), cell)
        })
        .collect();
    Profunctor { dom: dom.clone(), cod: cod.clone(), cells }
}

#[cfg(test)]
mod tests;
