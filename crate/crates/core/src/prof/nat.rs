//! Natural transformations between parallel profunctors, naturality checks,
//! and a backtracking search for natural isomorphisms.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use super::{CellKey, Profunctor, Side};
use crate::cat::{Mor, ObjId};

/// A set of cells `(b, a)`; comparisons outside it are skipped.
#[derive(Clone)]
pub enum Window {
    All,
    Cells(Arc<dyn Fn(ObjId, ObjId) -> bool + Send + Sync>),
}

impl Window {
    pub fn new(pred: impl Fn(ObjId, ObjId) -> bool + Send + Sync + 'static) -> Window {
        Window::Cells(Arc::new(pred))
    }

    pub fn contains(&self, b: ObjId, a: ObjId) -> bool {
        match self {
            Window::All => true,
            Window::Cells(p) => p(b, a),
        }
    }
}

impl fmt::Debug for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Window::All => f.write_str("Window::All"),
            Window::Cells(_) => f.write_str("Window::Cells(..)"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct NatTrans {
    pub source: Arc<Profunctor>,
    pub target: Arc<Profunctor>,
    pub components: BTreeMap<CellKey, Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NaturalityFailure {
    #[error("profunctors are not parallel")]
    NotParallel,
    #[error("component at {cell:?} has the wrong length or leaves the target cell")]
    BadComponent { cell: CellKey },
    #[error("{side} action of {mor:?} is missing in the target at {cell:?}")]
    MissingAction { side: Side, mor: Mor, cell: CellKey },
    #[error("naturality fails for the {side} action of {mor:?} on element {element} of cell {cell:?}")]
    NotNatural { side: Side, mor: Mor, cell: CellKey, element: usize },
    #[error("component at {cell:?} is not a bijection")]
    NotBijective { cell: CellKey },
}

impl NatTrans {
    pub fn identity(f: &Arc<Profunctor>) -> NatTrans {
        let components = f.cells().iter().map(|(&k, c)| (k, (0..c.size).collect())).collect();
        NatTrans { source: f.clone(), target: f.clone(), components }
    }

    /// Every component is a bijection onto its target cell.
    pub fn check_bijective(&self) -> Result<(), NaturalityFailure> {
        for (&cell, comp) in &self.components {
            let n = self.target.size(cell.0, cell.1);
            if comp.len() != self.source.size(cell.0, cell.1) || comp.len() != n {
                return Err(NaturalityFailure::NotBijective { cell });
            }
            let mut seen = vec![false; n];
            for &v in comp {
                if v >= n || std::mem::replace(&mut seen[v], true) {
                    return Err(NaturalityFailure::NotBijective { cell });
                }
            }
        }
        Ok(())
    }

    /// Inverse of a bijective transformation.
    pub fn inverse(&self) -> NatTrans {
        let components = self
            .components
            .iter()
            .map(|(&k, comp)| {
                let mut inv = vec![0; comp.len()];
                for (i, &v) in comp.iter().enumerate() {
                    inv[v] = i;
                }
                (k, inv)
            })
            .collect();
        NatTrans { source: self.target.clone(), target: self.source.clone(), components }
    }
}

/// Components must commute with every action between cells that both carry
/// a component.
pub fn check_naturality(t: &NatTrans) -> Result<(), NaturalityFailure> {
    let (s, tg) = (&t.source, &t.target);
    if s.dom() != tg.dom() || s.cod() != tg.cod() {
        return Err(NaturalityFailure::NotParallel);
    }
    for (&cell, comp) in &t.components {
        let n = s.size(cell.0, cell.1);
        let m = tg.size(cell.0, cell.1);
        if comp.len() != n || comp.iter().any(|&v| v >= m) {
            return Err(NaturalityFailure::BadComponent { cell });
        }
        let Some(scell) = s.cell(cell.0, cell.1) else { continue };
        let tcell = tg.cell(cell.0, cell.1);
        for (side, acts) in [(Side::Cod, &scell.cod_act), (Side::Dom, &scell.dom_act)] {
            for (&mor, stable) in acts {
                let dest = match side {
                    Side::Cod => (mor.src, cell.1),
                    Side::Dom => (cell.0, mor.tgt),
                };
                let Some(dcomp) = t.components.get(&dest) else { continue };
                let ttable = tcell.and_then(|c| match side {
                    Side::Cod => c.cod_act.get(&mor),
                    Side::Dom => c.dom_act.get(&mor),
                });
                let Some(ttable) = ttable else {
                    return Err(NaturalityFailure::MissingAction { side, mor, cell });
                };
                for e in 0..n {
                    if dcomp.get(stable[e]) != ttable.get(comp[e]) {
                        return Err(NaturalityFailure::NotNatural { side, mor, cell, element: e });
                    }
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotIso {
    NotParallel,
    Cardinality { cell: CellKey, left: usize, right: usize },
    ActionMismatch { cell: CellKey, mor: Mor },
    NoBijection,
}

impl fmt::Display for NotIso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotIso::NotParallel => f.write_str("not parallel"),
            NotIso::Cardinality { cell, left, right } => {
                write!(f, "cardinality mismatch at {cell:?}: {left} vs {right}")
            }
            NotIso::ActionMismatch { cell, mor } => write!(f, "action of {mor:?} present on one side only at {cell:?}"),
            NotIso::NoBijection => f.write_str("no natural bijection exists"),
        }
    }
}

#[derive(Debug, Clone)]
pub enum IsoOutcome {
    Iso(NatTrans),
    NotIso(NotIso),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("search budget of {0} nodes exceeded")]
    Budget(usize),
}

struct Edge<'a> {
    target: usize,
    f: &'a [usize],
    g: &'a [usize],
}

/// Search for a natural isomorphism `F ≅ G` on the cells of `window`.
///
/// Cardinalities are compared first; then components are chosen element by
/// element, each choice propagated along every action, with backtracking.
/// Candidates are filtered by which endomorphism actions fix the element.
pub fn iso_check(f: &Arc<Profunctor>, g: &Arc<Profunctor>, window: &Window, budget: usize) -> Result<IsoOutcome, IsoError> {
    if f.dom() != g.dom() || f.cod() != g.cod() {
        return Ok(IsoOutcome::NotIso(NotIso::NotParallel));
    }
    let mut keys: Vec<CellKey> = f.cells().keys().chain(g.cells().keys()).copied().collect();
    keys.sort_unstable();
    keys.dedup();
    keys.retain(|&(b, a)| window.contains(b, a));
    for &(b, a) in &keys {
        let (l, r) = (f.size(b, a), g.size(b, a));
        if l != r {
            return Ok(IsoOutcome::NotIso(NotIso::Cardinality { cell: (b, a), left: l, right: r }));
        }
    }
    let index: HashMap<CellKey, usize> = keys.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let sizes: Vec<usize> = keys.iter().map(|&(b, a)| f.size(b, a)).collect();

    let mut edges: Vec<Vec<Edge>> = Vec::with_capacity(keys.len());
    for &(b, a) in &keys {
        let (fc, gc) = (f.cell(b, a).unwrap(), g.cell(b, a).unwrap());
        let mut out = Vec::new();
        for (side, fa, ga) in [(Side::Cod, &fc.cod_act, &gc.cod_act), (Side::Dom, &fc.dom_act, &gc.dom_act)] {
            for (&mor, ft) in fa {
                let dest = match side {
                    Side::Cod => (mor.src, a),
                    Side::Dom => (b, mor.tgt),
                };
                let Some(&target) = index.get(&dest) else { continue };
                let Some(gt) = ga.get(&mor) else {
                    return Ok(IsoOutcome::NotIso(NotIso::ActionMismatch { cell: (b, a), mor }));
                };
                out.push(Edge { target, f: ft, g: gt });
            }
            for &mor in ga.keys() {
                if !fa.contains_key(&mor) {
                    return Ok(IsoOutcome::NotIso(NotIso::ActionMismatch { cell: (b, a), mor }));
                }
            }
        }
        edges.push(out);
    }

    // flat numbering of window elements
    let mut offsets = Vec::with_capacity(keys.len());
    let mut total = 0;
    for &n in &sizes {
        offsets.push(total);
        total += n;
    }
    let cell_of = |x: usize| offsets.partition_point(|&o| o <= x) - 1;

    let colors = match refine(&edges, &sizes, &offsets, total) {
        Some(c) => c,
        None => return Ok(IsoOutcome::NotIso(NotIso::NoBijection)),
    };
    let order = source_first_order(&edges, &offsets, total);

    let mut assign = vec![usize::MAX; total];
    let mut used = vec![false; total];
    let mut trail: Vec<usize> = Vec::new();

    // assign x ↦ v (both flat) and everything forced by naturality
    let propagate = |assign: &mut Vec<usize>, used: &mut Vec<bool>, trail: &mut Vec<usize>, x: usize, v: usize| -> bool {
        let mut queue = vec![(x, v)];
        while let Some((x, v)) = queue.pop() {
            let cur = assign[x];
            if cur == v {
                continue;
            }
            if cur != usize::MAX || used[v] || colors.0[x] != colors.1[v] {
                return false;
            }
            assign[x] = v;
            used[v] = true;
            trail.push(x);
            let c = cell_of(x);
            let (e, w) = (x - offsets[c], v - offsets[c]);
            for ed in &edges[c] {
                let o = offsets[ed.target];
                queue.push((o + ed.f[e], o + ed.g[w]));
            }
        }
        true
    };
    let undo = |assign: &mut Vec<usize>, used: &mut Vec<bool>, trail: &mut Vec<usize>, len: usize| {
        while trail.len() > len {
            let x = trail.pop().unwrap();
            used[assign[x]] = false;
            assign[x] = usize::MAX;
        }
    };

    struct Frame {
        x: usize,
        pos: usize,
        cands: Vec<usize>,
        next: usize,
        trail_len: usize,
    }
    let mut stack: Vec<Frame> = Vec::new();
    let mut pos = 0usize;
    let mut nodes = 0usize;
    'outer: loop {
        while pos < order.len() && assign[order[pos]] != usize::MAX {
            pos += 1;
        }
        if pos == order.len() {
            break;
        }
        let x = order[pos];
        let c = cell_of(x);
        let mut cands: Vec<usize> = (offsets[c]..offsets[c] + sizes[c])
            .filter(|&v| !used[v] && colors.1[v] == colors.0[x])
            .collect();
        if let Some(p) = cands.iter().position(|&v| v == x) {
            cands[..=p].rotate_right(1);
        }
        stack.push(Frame { x, pos, cands, next: 0, trail_len: trail.len() });
        loop {
            let Some(top) = stack.last_mut() else {
                return Ok(IsoOutcome::NotIso(NotIso::NoBijection));
            };
            while top.next < top.cands.len() {
                let v = top.cands[top.next];
                top.next += 1;
                nodes += 1;
                if nodes > budget {
                    return Err(IsoError::Budget(budget));
                }
                if propagate(&mut assign, &mut used, &mut trail, top.x, v) {
                    continue 'outer;
                }
                undo(&mut assign, &mut used, &mut trail, top.trail_len);
            }
            let done = stack.pop().unwrap();
            undo(&mut assign, &mut used, &mut trail, done.trail_len);
            if let Some(prev) = stack.last() {
                undo(&mut assign, &mut used, &mut trail, prev.trail_len);
                pos = prev.pos;
            }
        }
    }
    let components = keys
        .iter()
        .enumerate()
        .filter(|&(c, _)| sizes[c] > 0)
        .map(|(c, &k)| (k, (0..sizes[c]).map(|e| assign[offsets[c] + e] - offsets[c]).collect()))
        .collect();
    Ok(IsoOutcome::Iso(NatTrans { source: f.clone(), target: g.clone(), components }))
}

/// Colour refinement run on both sides with a shared palette. An element's
/// colour records the colours of its images and the multisets of colours of
/// its preimages along every action; a natural isomorphism preserves colours.
/// Returns `None` when some colour class has different sizes on the two sides.
fn refine(edges: &[Vec<Edge>], sizes: &[usize], offsets: &[usize], total: usize) -> Option<(Vec<u32>, Vec<u32>)> {
    // incoming edges per target cell: (source cell, edge position)
    let mut incoming: Vec<Vec<(usize, usize)>> = vec![Vec::new(); sizes.len()];
    for (c, out) in edges.iter().enumerate() {
        for (k, ed) in out.iter().enumerate() {
            incoming[ed.target].push((c, k));
        }
    }
    let mut colors = (vec![0u32; total], vec![0u32; total]);
    for (c, &o) in offsets.iter().enumerate() {
        for e in 0..sizes[c] {
            colors.0[o + e] = c as u32;
            colors.1[o + e] = c as u32;
        }
    }
    let mut classes = sizes.len();
    loop {
        let mut palette: HashMap<Vec<u32>, u32> = HashMap::new();
        let mut next = (vec![0u32; total], vec![0u32; total]);
        for left in [true, false] {
            let (old, new) = if left { (&colors.0, &mut next.0) } else { (&colors.1, &mut next.1) };
            // preimage colour lists per (incoming edge, element)
            let mut pre: Vec<Vec<Vec<u32>>> = Vec::with_capacity(total);
            for (c, &o) in offsets.iter().enumerate() {
                for _ in 0..sizes[c] {
                    pre.push(vec![Vec::new(); incoming[c].len()]);
                }
                for (slot, &(src, k)) in incoming[c].iter().enumerate() {
                    let ed = &edges[src][k];
                    let table = if left { ed.f } else { ed.g };
                    for (e, &t) in table.iter().enumerate() {
                        pre[o + t][slot].push(old[offsets[src] + e]);
                    }
                }
            }
            for (c, &o) in offsets.iter().enumerate() {
                for e in 0..sizes[c] {
                    let mut key = vec![old[o + e]];
                    for ed in &edges[c] {
                        let table = if left { ed.f } else { ed.g };
                        key.push(old[offsets[ed.target] + table[e]]);
                    }
                    for list in &mut pre[o + e] {
                        list.sort_unstable();
                        key.push(u32::MAX);
                        key.extend_from_slice(list);
                    }
                    let n = palette.len() as u32;
                    new[o + e] = *palette.entry(key).or_insert(n);
                }
            }
        }
        let mut counts: HashMap<u32, (usize, usize)> = HashMap::new();
        for x in 0..total {
            counts.entry(next.0[x]).or_default().0 += 1;
            counts.entry(next.1[x]).or_default().1 += 1;
        }
        if counts.values().any(|&(l, r)| l != r) {
            return None;
        }
        colors = next;
        if counts.len() == classes {
            return Some(colors);
        }
        classes = counts.len();
    }
}

/// Reverse DFS postorder of the left-hand action graph: every element comes
/// after some element that reaches it, so choices are made upstream and
/// propagation fills in the rest.
fn source_first_order(edges: &[Vec<Edge>], offsets: &[usize], total: usize) -> Vec<usize> {
    let cell_of = |x: usize| offsets.partition_point(|&o| o <= x) - 1;
    let succ = |x: usize| -> Vec<usize> {
        let c = cell_of(x);
        let e = x - offsets[c];
        edges[c].iter().map(|ed| offsets[ed.target] + ed.f[e]).collect()
    };
    let mut seen = vec![false; total];
    let mut post = Vec::with_capacity(total);
    for root in 0..total {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut stack = vec![(root, succ(root), 0usize)];
        while let Some((x, next, i)) = stack.last_mut() {
            if *i < next.len() {
                let y = next[*i];
                *i += 1;
                if !seen[y] {
                    seen[y] = true;
                    let s = succ(y);
                    stack.push((y, s, 0));
                }
            } else {
                post.push(*x);
                stack.pop();
            }
        }
    }
    post.reverse();
    post
}
