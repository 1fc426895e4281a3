//! Coend composition `(N ∘ M)(c, a) = ∫^b N(c, b) × M(b, a)`.
//!
//! For each output cell the disjoint union `⊔_b N(c,b) × M(b,a)` is quotiented
//! by `(N(id, g) x, y) ~ (x, M(g, id) y)` for every middle morphism `g`,
//! using union-find. Classes are numbered by their least element, and actions
//! are induced on those representatives.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{Cell, CellKey, ProfError, Profunctor};
use crate::cat::ObjId;
use crate::unionfind::UnionFind;

/// Bookkeeping for one output cell of a composite.
#[derive(Debug, Clone)]
pub struct CellTrace {
    /// Middle objects with both `N(c, m)` and `M(m, a)` nonempty, sorted.
    pub mids: Vec<ObjId>,
    offsets: Vec<usize>,
    ysizes: Vec<usize>,
    class_of: Vec<u32>,
    /// Least element `(m, x, y)` of each class.
    pub reps: Vec<(ObjId, usize, usize)>,
}

impl CellTrace {
    fn flat(&self, pos: usize, x: usize, y: usize) -> usize {
        self.offsets[pos] + x * self.ysizes[pos] + y
    }

    pub fn class_of(&self, m: ObjId, x: usize, y: usize) -> Option<usize> {
        let pos = self.mids.binary_search(&m).ok()?;
        let flat = self.flat(pos, x, y);
        if y >= self.ysizes[pos] || flat >= self.offsets.get(pos + 1).copied().unwrap_or(self.class_of.len()) {
            return None;
        }
        Some(self.class_of[flat] as usize)
    }

    /// All triples `(m, x, y)` of the disjoint union, in index order.
    pub fn members(&self) -> impl Iterator<Item = (ObjId, usize, usize)> + '_ {
        self.mids.iter().enumerate().flat_map(move |(pos, &m)| {
            let end = self.offsets.get(pos + 1).copied().unwrap_or(self.class_of.len());
            let count = end - self.offsets[pos];
            let ys = self.ysizes[pos];
            (0..count).map(move |k| (m, k / ys, k % ys))
        })
    }
}

/// A composite together with the class structure of every cell.
#[derive(Debug, Clone)]
pub struct Composite {
    pub prof: Profunctor,
    pub traces: BTreeMap<CellKey, CellTrace>,
}

impl Composite {
    pub fn trace(&self, c: ObjId, a: ObjId) -> Option<&CellTrace> {
        self.traces.get(&(c, a))
    }

    /// Class of `(m, x, y)` in cell `(c, a)`.
    pub fn class_of(&self, (c, a): CellKey, m: ObjId, x: usize, y: usize) -> Option<usize> {
        self.traces.get(&(c, a))?.class_of(m, x, y)
    }

    pub fn rep(&self, (c, a): CellKey, class: usize) -> (ObjId, usize, usize) {
        self.traces[&(c, a)].reps[class]
    }

    /// Checks that actions computed on representatives agree with actions on
    /// every other member of the class.
    pub fn verify_representatives(&self, n: &Profunctor, m: &Profunctor) -> Result<(), String> {
        for (&(c, a), tr) in &self.traces {
            let out = self.prof.cell(c, a).expect("nonempty composite cell");
            for (mid, x, y) in tr.members() {
                let k = tr.class_of(mid, x, y).unwrap();
                for (&h, table) in &out.cod_act {
                    let x2 = n.cell(c, mid).unwrap().cod_act[&h][x];
                    let got = self.class_of((h.src, a), mid, x2, y);
                    if got != Some(table[k]) {
                        return Err(format!("cell ({c},{a}): codomain action of {h:?} depends on the representative"));
                    }
                }
                for (&f, table) in &out.dom_act {
                    let y2 = m.cell(mid, a).unwrap().dom_act[&f][y];
                    let got = self.class_of((c, f.tgt), mid, x, y2);
                    if got != Some(table[k]) {
                        return Err(format!("cell ({c},{a}): domain action of {f:?} depends on the representative"));
                    }
                }
            }
        }
        Ok(())
    }
}

pub fn compose(n: &Profunctor, m: &Profunctor) -> Result<Profunctor, ProfError> {
    compose_traced(n, m).map(|c| c.prof)
}

pub fn compose_traced(n: &Profunctor, m: &Profunctor) -> Result<Composite, ProfError> {
    if n.dom() != m.cod() {
        return Err(ProfError::MiddleMismatch);
    }
    // support of every output cell
    let mut support: BTreeMap<CellKey, Vec<ObjId>> = BTreeMap::new();
    for (&(c, mid), _) in n.cells() {
        for (a, _) in m.row(mid) {
            support.entry((c, a)).or_default().push(mid);
        }
    }
    let work: Vec<(CellKey, Vec<ObjId>)> = support.into_iter().collect();
    let traces: Vec<(CellKey, CellTrace)> = work
        .into_par_iter()
        .map(|((c, a), mids)| quotient(n, m, c, a, mids).map(|t| ((c, a), t)))
        .collect::<Result<_, _>>()?;
    let traces: BTreeMap<CellKey, CellTrace> = traces.into_iter().collect();

    let cells: Vec<(CellKey, Cell)> = traces
        .par_iter()
        .map(|(&(c, a), tr)| {
            let size = tr.reps.len();
            let mut cell = Cell { size, ..Cell::default() };
            for c2 in n.cod().peers(c) {
                for h in n.cod().homs(c2, c) {
                    let target = &traces[&(c2, a)];
                    let table = tr
                        .reps
                        .iter()
                        .map(|&(mid, x, y)| {
                            let x2 = n.cell(c, mid).unwrap().cod_act[&h][x];
                            target.class_of(mid, x2, y).expect("class exists")
                        })
                        .collect();
                    cell.cod_act.insert(h, table);
                }
            }
            for a2 in m.dom().peers(a) {
                for f in m.dom().homs(a, a2) {
                    let target = &traces[&(c, a2)];
                    let table = tr
                        .reps
                        .iter()
                        .map(|&(mid, x, y)| {
                            let y2 = m.cell(mid, a).unwrap().dom_act[&f][y];
                            target.class_of(mid, x, y2).expect("class exists")
                        })
                        .collect();
                    cell.dom_act.insert(f, table);
                }
            }
            ((c, a), cell)
        })
        .collect();
    let prof = Profunctor::from_parts(m.dom().clone(), n.cod().clone(), cells.into_iter().collect());
    Ok(Composite { prof, traces })
}

fn quotient(n: &Profunctor, m: &Profunctor, c: ObjId, a: ObjId, mids: Vec<ObjId>) -> Result<CellTrace, ProfError> {
    let mut offsets = Vec::with_capacity(mids.len());
    let mut ysizes = Vec::with_capacity(mids.len());
    let mut total = 0;
    for &mid in &mids {
        offsets.push(total);
        let ys = m.size(mid, a);
        ysizes.push(ys);
        total += n.size(c, mid) * ys;
    }
    let mut uf = UnionFind::new(total);
    for (i, &mi) in mids.iter().enumerate() {
        let ncell = n.cell(c, mi).unwrap();
        for (&g, xtable) in &ncell.dom_act {
            let Ok(j) = mids.binary_search(&g.tgt) else { continue };
            let mcell = m.cell(g.tgt, a).unwrap();
            let ytable = mcell
                .cod_act
                .get(&g)
                .ok_or(ProfError::MissingAction { cell: (g.tgt, a), mor: g })?;
            for (x, &x2) in xtable.iter().enumerate() {
                for (y2, &y) in ytable.iter().enumerate() {
                    // (N(g) x, y') ~ (x, M(g) y')
                    let left = offsets[j] + x2 * ysizes[j] + y2;
                    let right = offsets[i] + x * ysizes[i] + y;
                    uf.union(left, right);
                }
            }
        }
    }
    let (class_of, firsts) = uf.classes();
    let reps = firsts
        .into_iter()
        .map(|flat| {
            let pos = offsets.partition_point(|&o| o <= flat) - 1;
            let k = flat - offsets[pos];
            (mids[pos], k / ysizes[pos], k % ysizes[pos])
        })
        .collect();
    Ok(CellTrace { mids, offsets, ysizes, class_of, reps })
}
