//! Seeded random profunctors for test batteries.
//!
//! A generated profunctor `A → B` is a sum of terms `B[b, b₀] × (A[a₀, a] / H)`
//! where `H` is a subgroup of `Aut(a₀)` acting by precomposition. Each term is
//! functorial by construction, and the quotient lets symmetric actions be
//! non-free.

use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::cat::{Cat, Mor, ObjId};
use crate::prof::{self, Profunctor};

pub use rand::SeedableRng;

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One summand `B[b, b₀] × (A[a₀, a] / H)`.
#[derive(Debug, Clone)]
pub struct Term {
    pub b0: ObjId,
    pub a0: ObjId,
    pub subgroup: Vec<Mor>,
}

/// Closure of `gens` under composition inside `End(x)`; always contains the identity.
pub fn subgroup_closure(c: &Cat, x: ObjId, gens: &[Mor]) -> Vec<Mor> {
    let mut set: BTreeSet<Mor> = BTreeSet::new();
    set.insert(c.identity(x));
    let mut frontier: Vec<Mor> = set.iter().copied().collect();
    while let Some(m) = frontier.pop() {
        for &g in gens {
            let h = c.compose(g, m);
            if set.insert(h) {
                frontier.push(h);
            }
        }
    }
    set.into_iter().collect()
}

/// Orbits of `A[a₀, a]` under precomposition with `H`: orbit index of every
/// morphism, orbits numbered by least member.
fn orbits(dom: &Cat, a0: ObjId, a: ObjId, h: &[Mor]) -> (Vec<usize>, Vec<usize>) {
    let n = dom.hom_size(a0, a);
    let mut orbit = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for idx in 0..n {
        if orbit[idx] != usize::MAX {
            continue;
        }
        let k = reps.len();
        reps.push(idx);
        for &g in h {
            let j = dom.compose(Mor { src: a0, tgt: a, idx }, g).idx;
            orbit[j] = k;
        }
    }
    (orbit, reps)
}

pub fn term_prof(dom: &Cat, cod: &Cat, t: &Term) -> Profunctor {
    let mut orbit_tables: HashMap<ObjId, (Vec<usize>, Vec<usize>)> = HashMap::new();
    for a in dom.peers(t.a0) {
        orbit_tables.insert(a, orbits(dom, t.a0, a, &t.subgroup));
    }
    let mut sizes = Vec::new();
    for b in cod.peers(t.b0) {
        for a in dom.peers(t.a0) {
            sizes.push(((b, a), cod.hom_size(b, t.b0) * orbit_tables[&a].1.len()));
        }
    }
    let norb = |a: ObjId| orbit_tables[&a].1.len();
    Profunctor::build(
        dom,
        cod,
        sizes,
        |g, (b, a), e| {
            let (i, k) = (e / norb(a), e % norb(a));
            let i2 = cod.compose(Mor { src: b, tgt: t.b0, idx: i }, g).idx;
            i2 * norb(a) + k
        },
        |f, (_, a), e| {
            let (i, k) = (e / norb(a), e % norb(a));
            let r = orbit_tables[&a].1[k];
            let j = dom.compose(f, Mor { src: t.a0, tgt: a, idx: r }).idx;
            i * norb(f.tgt) + orbit_tables[&f.tgt].0[j]
        },
    )
}

/// A random term with `a₀` drawn from `a_objs` (or all objects).
pub fn random_term(rng: &mut Rng64, dom: &Cat, cod: &Cat, a_objs: Option<&[ObjId]>) -> Option<Term> {
    if dom.object_count() == 0 || cod.object_count() == 0 {
        return None;
    }
    let b0 = rng.gen_range(0..cod.object_count());
    let a0 = match a_objs {
        Some(objs) => *objs.choose(rng)?,
        None => rng.gen_range(0..dom.object_count()),
    };
    let auts = dom.automorphisms(a0);
    let gens: Vec<Mor> = auts.iter().copied().filter(|_| rng.gen_bool(0.4)).collect();
    let subgroup = subgroup_closure(dom, a0, &gens);
    Some(Term { b0, a0, subgroup })
}

/// Sum of up to `max_terms` random terms (possibly zero terms).
pub fn random_prof(rng: &mut Rng64, dom: &Cat, cod: &Cat, max_terms: usize) -> Profunctor {
    let k = rng.gen_range(0..=max_terms);
    let mut out = prof::zero(dom, cod);
    for _ in 0..k {
        if let Some(t) = random_term(rng, dom, cod, None) {
            out = prof::sum(&out, &term_prof(dom, cod, &t)).expect("parallel");
        }
    }
    out
}
