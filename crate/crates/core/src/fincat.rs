//! Finite categories given by explicit tables, finite functors, and the
//! standard constructions (opposite, product, coproduct, built-ins).

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatError {
    #[error("morphism {morphism} refers to object {object}, but there are only {count} objects")]
    ObjectOutOfRange { morphism: usize, object: usize, count: usize },
    #[error("morphism index {0} out of range")]
    MorphismOutOfRange(usize),
    #[error("expected {expected} identities (one per object), found {found}")]
    IdentityCount { expected: usize, found: usize },
    #[error("identity of object {object} is morphism {morphism}, which is not an endomorphism of it")]
    IdentityEndpoints { object: usize, morphism: usize },
    #[error("compose entry ({g},{f}) given for a non-composable pair")]
    NotComposable { g: usize, f: usize },
    #[error("compose entry ({g},{f}) = {h} has the wrong endpoints")]
    CompositeEndpoints { g: usize, f: usize, h: usize },
    #[error("compose entry ({g},{f}) given twice with different values")]
    ConflictingComposite { g: usize, f: usize },
    #[error("missing composite for composable pair ({g},{f})")]
    MissingComposite { g: usize, f: usize },
    #[error("identity {identity} is not neutral for morphism {morphism}")]
    IdentityNotNeutral { identity: usize, morphism: usize },
    #[error("associativity violated at ({g},{f},{e})")]
    NotAssociative { g: usize, f: usize, e: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctorError {
    #[error("object map has length {found}, expected {expected}")]
    ObjectMapLength { expected: usize, found: usize },
    #[error("morphism map has length {found}, expected {expected}")]
    MorphismMapLength { expected: usize, found: usize },
    #[error("image out of range")]
    OutOfRange,
    #[error("morphism {0} is not sent to a morphism between the images of its endpoints")]
    Endpoints(usize),
    #[error("identity of object {0} is not preserved")]
    Identity(usize),
    #[error("composite of ({g},{f}) is not preserved")]
    Composition { g: usize, f: usize },
}

/// Raw description of a finite category, as read from a file.
///
/// Composites with an identity may be omitted; they are filled in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct RawCat {
    pub objects: Vec<String>,
    pub morphisms: Vec<RawMor>,
    pub identities: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub compose: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMor {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// A validated finite category. Objects and morphisms are dense indices;
/// labels are cosmetic and ignored by equality.
#[derive(Debug, Clone)]
pub struct FinCat {
    obj_labels: Vec<String>,
    mor_labels: Vec<String>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    identity: Vec<usize>,
    // comp[g * m + f] = g ∘ f
    comp: Vec<Option<usize>>,
    hom: Vec<Vec<usize>>,
    local: Vec<usize>,
    component: Vec<usize>,
    components: Vec<Vec<usize>>,
}

impl PartialEq for FinCat {
    fn eq(&self, other: &Self) -> bool {
        self.src == other.src
            && self.tgt == other.tgt
            && self.identity == other.identity
            && self.comp == other.comp
            && self.obj_labels.len() == other.obj_labels.len()
    }
}
impl Eq for FinCat {}

pub fn build_fincat(raw: &RawCat) -> Result<FinCat, CatError> {
    let n = raw.objects.len();
    let m = raw.morphisms.len();
    for (i, mor) in raw.morphisms.iter().enumerate() {
        for object in [mor.src, mor.tgt] {
            if object >= n {
                return Err(CatError::ObjectOutOfRange { morphism: i, object, count: n });
            }
        }
    }
    if raw.identities.len() != n {
        return Err(CatError::IdentityCount { expected: n, found: raw.identities.len() });
    }
    for (object, &morphism) in raw.identities.iter().enumerate() {
        if morphism >= m {
            return Err(CatError::MorphismOutOfRange(morphism));
        }
        let mm = &raw.morphisms[morphism];
        if mm.src != object || mm.tgt != object {
            return Err(CatError::IdentityEndpoints { object, morphism });
        }
    }
    let src: Vec<usize> = raw.morphisms.iter().map(|x| x.src).collect();
    let tgt: Vec<usize> = raw.morphisms.iter().map(|x| x.tgt).collect();
    let mut comp: Vec<Option<usize>> = vec![None; m * m];
    for &[g, f, h] in &raw.compose {
        for x in [g, f, h] {
            if x >= m {
                return Err(CatError::MorphismOutOfRange(x));
            }
        }
        if tgt[f] != src[g] {
            return Err(CatError::NotComposable { g, f });
        }
        if src[h] != src[f] || tgt[h] != tgt[g] {
            return Err(CatError::CompositeEndpoints { g, f, h });
        }
        match comp[g * m + f] {
            Some(old) if old != h => return Err(CatError::ConflictingComposite { g, f }),
            _ => comp[g * m + f] = Some(h),
        }
    }
    // identity composites may be left implicit
    for f in 0..m {
        let left = raw.identities[tgt[f]];
        let right = raw.identities[src[f]];
        comp[left * m + f].get_or_insert(f);
        comp[f * m + right].get_or_insert(f);
    }
    for g in 0..m {
        for f in 0..m {
            if tgt[f] == src[g] && comp[g * m + f].is_none() {
                return Err(CatError::MissingComposite { g, f });
            }
        }
    }
    for f in 0..m {
        let left = raw.identities[tgt[f]];
        let right = raw.identities[src[f]];
        if comp[left * m + f] != Some(f) {
            return Err(CatError::IdentityNotNeutral { identity: left, morphism: f });
        }
        if comp[f * m + right] != Some(f) {
            return Err(CatError::IdentityNotNeutral { identity: right, morphism: f });
        }
    }
    for g in 0..m {
        for f in 0..m {
            let Some(gf) = comp[g * m + f] else { continue };
            for e in 0..m {
                let Some(fe) = comp[f * m + e] else { continue };
                if comp[gf * m + e] != comp[g * m + fe] {
                    return Err(CatError::NotAssociative { g, f, e });
                }
            }
        }
    }
    Ok(FinCat::assemble(
        raw.objects.clone(),
        raw.morphisms.iter().map(|x| x.name.clone()).collect(),
        src,
        tgt,
        raw.identities.clone(),
        comp,
    ))
}

impl FinCat {
    fn assemble(
        obj_labels: Vec<String>,
        mor_labels: Vec<String>,
        src: Vec<usize>,
        tgt: Vec<usize>,
        identity: Vec<usize>,
        comp: Vec<Option<usize>>,
    ) -> FinCat {
        let n = obj_labels.len();
        let mut hom = vec![Vec::new(); n * n];
        let mut local = vec![0; src.len()];
        for f in 0..src.len() {
            let list = &mut hom[src[f] * n + tgt[f]];
            local[f] = list.len();
            list.push(f);
        }
        // weakly connected components
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let next = p[c];
                p[c] = r;
                c = next;
            }
            r
        }
        for f in 0..src.len() {
            let (a, b) = (find(&mut parent, src[f]), find(&mut parent, tgt[f]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut component = vec![0; n];
        let mut components: Vec<Vec<usize>> = Vec::new();
        let mut root_index = std::collections::HashMap::new();
        for x in 0..n {
            let r = find(&mut parent, x);
            let idx = *root_index.entry(r).or_insert_with(|| {
                components.push(Vec::new());
                components.len() - 1
            });
            component[x] = idx;
            components[idx].push(x);
        }
        FinCat { obj_labels, mor_labels, src, tgt, identity, comp, hom, local, component, components }
    }

    pub fn object_count(&self) -> usize {
        self.obj_labels.len()
    }
    pub fn morphism_count(&self) -> usize {
        self.src.len()
    }
    pub fn object_label(&self, x: usize) -> &str {
        &self.obj_labels[x]
    }
    pub fn morphism_label(&self, f: usize) -> &str {
        &self.mor_labels[f]
    }
    pub fn src(&self, f: usize) -> usize {
        self.src[f]
    }
    pub fn tgt(&self, f: usize) -> usize {
        self.tgt[f]
    }
    pub fn identity(&self, x: usize) -> usize {
        self.identity[x]
    }
    /// `g ∘ f`, if composable.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.comp[g * self.src.len() + f]
    }
    /// Morphisms `x → y`, as global indices.
    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        &self.hom[x * self.object_count() + y]
    }
    /// Position of a morphism inside its hom-set.
    pub fn local_index(&self, f: usize) -> usize {
        self.local[f]
    }
    pub fn component_of(&self, x: usize) -> usize {
        self.component[x]
    }
    pub fn component(&self, c: usize) -> &[usize] {
        &self.components[c]
    }

    pub fn to_raw(&self) -> RawCat {
        let m = self.morphism_count();
        let mut compose = Vec::new();
        for g in 0..m {
            for f in 0..m {
                if let Some(h) = self.compose(g, f) {
                    let trivial = self.identity[self.tgt[f]] == g || self.identity[self.src[f]] == f;
                    if !trivial {
                        compose.push([g, f, h]);
                    }
                }
            }
        }
        RawCat {
            objects: self.obj_labels.clone(),
            morphisms: (0..m)
                .map(|f| RawMor { name: self.mor_labels[f].clone(), src: self.src[f], tgt: self.tgt[f] })
                .collect(),
            identities: self.identity.clone(),
            compose,
        }
    }

    /// Exhaustive structure audit; constructed categories always pass.
    pub fn audit(&self) -> Result<(), CatError> {
        build_fincat(&self.to_raw()).map(|_| ())
    }
}

// ---------------------------------------------------------------------------
// Built-ins

fn from_parts(objects: &[&str], morphisms: &[(&str, usize, usize)], identities: &[usize], compose: &[[usize; 3]]) -> FinCat {
    let raw = RawCat {
        objects: objects.iter().map(|s| s.to_string()).collect(),
        morphisms: morphisms
            .iter()
            .map(|&(name, src, tgt)| RawMor { name: name.to_string(), src, tgt })
            .collect(),
        identities: identities.to_vec(),
        compose: compose.to_vec(),
    };
    build_fincat(&raw).expect("built-in category is valid")
}

/// The empty category 𝟘.
pub fn zero() -> FinCat {
    from_parts(&[], &[], &[], &[])
}

/// The terminal category 𝟙.
pub fn one() -> FinCat {
    from_parts(&["*"], &[("id", 0, 0)], &[0], &[])
}

pub fn discrete(n: usize) -> FinCat {
    let objects: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let raw = RawCat {
        morphisms: (0..n).map(|i| RawMor { name: format!("id_x{i}"), src: i, tgt: i }).collect(),
        identities: (0..n).collect(),
        objects,
        compose: vec![],
    };
    build_fincat(&raw).expect("discrete category is valid")
}

/// Two objects and one non-identity arrow `f: x → y`.
pub fn walking_arrow() -> FinCat {
    from_parts(&["x", "y"], &[("id_x", 0, 0), ("id_y", 1, 1), ("f", 0, 1)], &[0, 1], &[])
}

/// One object with automorphism group Z/2.
pub fn bz2() -> FinCat {
    from_parts(&["x"], &[("id", 0, 0), ("g", 0, 0)], &[0], &[[1, 1, 0]])
}

pub fn builtin(name: &str) -> Option<FinCat> {
    match name {
        "zero" | "0" => Some(zero()),
        "one" | "1" => Some(one()),
        "walking_arrow" | "arrow" => Some(walking_arrow()),
        "bz2" | "BZ2" => Some(bz2()),
        _ => name
            .strip_prefix("discrete")
            .and_then(|rest| rest.trim_matches(|c| c == '(' || c == ')' || c == '_').parse().ok())
            .map(discrete),
    }
}

/// The test family {𝟘, 𝟙, discrete(2), walking arrow, BZ₂}, with names.
pub fn test_family() -> Vec<(&'static str, FinCat)> {
    vec![
        ("zero", zero()),
        ("one", one()),
        ("discrete2", discrete(2)),
        ("walking_arrow", walking_arrow()),
        ("bz2", bz2()),
    ]
}

// ---------------------------------------------------------------------------
// Constructions

pub fn opposite(c: &FinCat) -> FinCat {
    let m = c.morphism_count();
    let mut comp = vec![None; m * m];
    for g in 0..m {
        for f in 0..m {
            // in C^op, g ∘op f = f ∘ g
            comp[g * m + f] = c.compose(f, g);
        }
    }
    FinCat::assemble(
        c.obj_labels.clone(),
        c.mor_labels.clone(),
        c.tgt.clone(),
        c.src.clone(),
        c.identity.clone(),
        comp,
    )
}

/// `C × D`; object `(x, y)` has index `x·|D| + y`, morphism `(f, g)` has index
/// `f·|mor D| + g`.
pub fn product(c: &FinCat, d: &FinCat) -> FinCat {
    let (nd, md) = (d.object_count(), d.morphism_count());
    let mut obj_labels = Vec::new();
    for x in &c.obj_labels {
        for y in &d.obj_labels {
            obj_labels.push(format!("({x},{y})"));
        }
    }
    let mut mor_labels = Vec::new();
    let (mut src, mut tgt) = (Vec::new(), Vec::new());
    for f in 0..c.morphism_count() {
        for g in 0..md {
            mor_labels.push(format!("({},{})", c.mor_labels[f], d.mor_labels[g]));
            src.push(c.src[f] * nd + d.src[g]);
            tgt.push(c.tgt[f] * nd + d.tgt[g]);
        }
    }
    let m = src.len();
    let mut comp = vec![None; m * m];
    for g1 in 0..c.morphism_count() {
        for f1 in 0..c.morphism_count() {
            let Some(h1) = c.compose(g1, f1) else { continue };
            for g2 in 0..md {
                for f2 in 0..md {
                    if let Some(h2) = d.compose(g2, f2) {
                        comp[(g1 * md + g2) * m + (f1 * md + f2)] = Some(h1 * md + h2);
                    }
                }
            }
        }
    }
    let identity = (0..c.object_count())
        .flat_map(|x| (0..nd).map(move |y| (x, y)))
        .map(|(x, y)| c.identity[x] * md + d.identity[y])
        .collect();
    FinCat::assemble(obj_labels, mor_labels, src, tgt, identity, comp)
}

pub fn product_projections(c: &FinCat, d: &FinCat) -> (FinFunctor, FinFunctor) {
    let p = product(c, d);
    let (nd, md) = (d.object_count(), d.morphism_count());
    let p1 = FinFunctor {
        dom: p.clone(),
        cod: c.clone(),
        obj: (0..p.object_count()).map(|x| x / nd).collect(),
        mor: (0..p.morphism_count()).map(|f| f / md).collect(),
    };
    let p2 = FinFunctor {
        dom: p.clone(),
        cod: d.clone(),
        obj: (0..p.object_count()).map(|x| x % nd).collect(),
        mor: (0..p.morphism_count()).map(|f| f % md).collect(),
    };
    (p1, p2)
}

/// `C + D`: objects and morphisms of `C` first, then those of `D`.
pub fn coproduct(c: &FinCat, d: &FinCat) -> FinCat {
    let (nc, mc) = (c.object_count(), c.morphism_count());
    let m = mc + d.morphism_count();
    let obj_labels = c
        .obj_labels
        .iter()
        .map(|x| format!("i1.{x}"))
        .chain(d.obj_labels.iter().map(|x| format!("i2.{x}")))
        .collect();
    let mor_labels = c
        .mor_labels
        .iter()
        .map(|x| format!("i1.{x}"))
        .chain(d.mor_labels.iter().map(|x| format!("i2.{x}")))
        .collect();
    let src = c.src.iter().copied().chain(d.src.iter().map(|x| x + nc)).collect();
    let tgt = c.tgt.iter().copied().chain(d.tgt.iter().map(|x| x + nc)).collect();
    let identity = c.identity.iter().copied().chain(d.identity.iter().map(|x| x + mc)).collect();
    let mut comp = vec![None; m * m];
    for g in 0..mc {
        for f in 0..mc {
            comp[g * m + f] = c.compose(g, f);
        }
    }
    for g in 0..d.morphism_count() {
        for f in 0..d.morphism_count() {
            comp[(g + mc) * m + f + mc] = d.compose(g, f).map(|h| h + mc);
        }
    }
    FinCat::assemble(obj_labels, mor_labels, src, tgt, identity, comp)
}

pub fn coproduct_injections(c: &FinCat, d: &FinCat) -> (FinFunctor, FinFunctor) {
    let s = coproduct(c, d);
    let (nc, mc) = (c.object_count(), c.morphism_count());
    let i1 = FinFunctor {
        dom: c.clone(),
        cod: s.clone(),
        obj: (0..nc).collect(),
        mor: (0..mc).collect(),
    };
    let i2 = FinFunctor {
        dom: d.clone(),
        cod: s,
        obj: (0..d.object_count()).map(|x| x + nc).collect(),
        mor: (0..d.morphism_count()).map(|f| f + mc).collect(),
    };
    (i1, i2)
}

/// A functor between finite categories, given by tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinFunctor {
    pub dom: FinCat,
    pub cod: FinCat,
    pub obj: Vec<usize>,
    pub mor: Vec<usize>,
}

impl FinFunctor {
    pub fn new(dom: FinCat, cod: FinCat, obj: Vec<usize>, mor: Vec<usize>) -> Result<FinFunctor, FunctorError> {
        let f = FinFunctor { dom, cod, obj, mor };
        f.validate()?;
        Ok(f)
    }

    pub fn identity(c: &FinCat) -> FinFunctor {
        FinFunctor {
            dom: c.clone(),
            cod: c.clone(),
            obj: (0..c.object_count()).collect(),
            mor: (0..c.morphism_count()).collect(),
        }
    }

    /// The unique functor to 𝟙.
    pub fn to_terminal(c: &FinCat) -> FinFunctor {
        FinFunctor {
            dom: c.clone(),
            cod: one(),
            obj: vec![0; c.object_count()],
            mor: vec![0; c.morphism_count()],
        }
    }

    /// The unique functor out of 𝟘.
    pub fn from_initial(c: &FinCat) -> FinFunctor {
        FinFunctor { dom: zero(), cod: c.clone(), obj: vec![], mor: vec![] }
    }

    /// The codiagonal `C + C → C`.
    pub fn fold(c: &FinCat) -> FinFunctor {
        let (n, m) = (c.object_count(), c.morphism_count());
        FinFunctor {
            dom: coproduct(c, c),
            cod: c.clone(),
            obj: (0..2 * n).map(|x| x % n.max(1)).collect(),
            mor: (0..2 * m).map(|f| f % m.max(1)).collect(),
        }
    }

    pub fn validate(&self) -> Result<(), FunctorError> {
        let (d, c) = (&self.dom, &self.cod);
        if self.obj.len() != d.object_count() {
            return Err(FunctorError::ObjectMapLength { expected: d.object_count(), found: self.obj.len() });
        }
        if self.mor.len() != d.morphism_count() {
            return Err(FunctorError::MorphismMapLength { expected: d.morphism_count(), found: self.mor.len() });
        }
        if self.obj.iter().any(|&x| x >= c.object_count()) || self.mor.iter().any(|&f| f >= c.morphism_count()) {
            return Err(FunctorError::OutOfRange);
        }
        for f in 0..d.morphism_count() {
            let ff = self.mor[f];
            if c.src(ff) != self.obj[d.src(f)] || c.tgt(ff) != self.obj[d.tgt(f)] {
                return Err(FunctorError::Endpoints(f));
            }
        }
        for x in 0..d.object_count() {
            if self.mor[d.identity(x)] != c.identity(self.obj[x]) {
                return Err(FunctorError::Identity(x));
            }
        }
        for g in 0..d.morphism_count() {
            for f in 0..d.morphism_count() {
                if let Some(h) = d.compose(g, f) {
                    if c.compose(self.mor[g], self.mor[f]) != Some(self.mor[h]) {
                        return Err(FunctorError::Composition { g, f });
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

    fn raw(objects: usize, morphisms: &[(usize, usize)], identities: &[usize], compose: &[[usize; 3]]) -> RawCat {
        RawCat {
            objects: (0..objects).map(|i| format!("o{i}")).collect(),
            morphisms: morphisms
                .iter()
                .enumerate()
                .map(|(i, &(src, tgt))| RawMor { name: format!("m{i}"), src, tgt })
                .collect(),
            identities: identities.to_vec(),
            compose: compose.to_vec(),
        }
    }

    #[test]
    fn terminal_and_walking_arrow() {
        let t = build_fincat(&raw(1, &[(0, 0)], &[0], &[])).unwrap();
        assert_eq!(t, one());
        let w = walking_arrow();
        assert_eq!(w.object_count(), 2);
        assert_eq!(w.morphism_count(), 3);
        assert_eq!(w.hom(0, 1), &[2]);
        assert!(w.hom(1, 0).is_empty());
    }

    #[test]
    fn associativity_violation_is_reported_with_triple() {
        // one object, id = 0, e = 1, with e∘e defined inconsistently with a third morphism
        // monoid {id, a, b}: a∘a = b, a∘b = a, b∘a = b, b∘b = b
        // (a∘a)∘b = b∘b = b, a∘(a∘b) = a∘a = b: fine; (a∘b)∘a = a∘a = b, a∘(b∘a) = a∘b = a: violation
        let r = raw(1, &[(0, 0), (0, 0), (0, 0)], &[0], &[[1, 1, 2], [1, 2, 1], [2, 1, 2], [2, 2, 2]]);
        let err = build_fincat(&r).unwrap_err();
        assert!(matches!(err, CatError::NotAssociative { .. }));
        assert!(err.to_string().starts_with("associativity violated at ("));
    }

    #[test]
    fn table_errors() {
        assert!(matches!(
            build_fincat(&raw(1, &[(0, 0), (0, 0)], &[0], &[])),
            Err(CatError::MissingComposite { g: 1, f: 1 })
        ));
        assert!(matches!(build_fincat(&raw(2, &[(0, 0)], &[0], &[])), Err(CatError::IdentityCount { .. })));
        assert!(matches!(
            build_fincat(&raw(2, &[(0, 0), (1, 1), (0, 1)], &[0, 2], &[])),
            Err(CatError::IdentityEndpoints { object: 1, morphism: 2 })
        ));
        assert!(matches!(
            build_fincat(&raw(2, &[(0, 0), (1, 1), (0, 1)], &[0, 1], &[[2, 2, 2]])),
            Err(CatError::NotComposable { g: 2, f: 2 })
        ));
    }

    #[test]
    fn opposite_is_an_involution() {
        for (_, c) in test_family() {
            let op = opposite(&c);
            op.audit().unwrap();
            assert_eq!(opposite(&op), c);
        }
        assert_eq!(opposite(&one()), one());
        let w = opposite(&walking_arrow());
        assert_eq!(w.morphism_count(), 3);
        assert_eq!(w.hom(1, 0), &[2]);
    }

    #[test]
    fn products_and_coproducts() {
        let p = product(&discrete(2), &discrete(3));
        assert_eq!(p, discrete(6));
        let ww = product(&walking_arrow(), &walking_arrow());
        assert_eq!((ww.object_count(), ww.morphism_count()), (4, 9));
        ww.audit().unwrap();
        assert_eq!(product(&one(), &walking_arrow()), walking_arrow());
        assert_eq!(coproduct(&zero(), &bz2()), bz2());
        assert_eq!(coproduct(&one(), &one()), discrete(2));
        let s = coproduct(&bz2(), &one());
        assert_eq!((s.object_count(), s.morphism_count()), (2, 3));
        s.audit().unwrap();
        let (p1, p2) = product_projections(&walking_arrow(), &bz2());
        p1.validate().unwrap();
        p2.validate().unwrap();
        let (i1, i2) = coproduct_injections(&walking_arrow(), &bz2());
        i1.validate().unwrap();
        i2.validate().unwrap();
        FinFunctor::fold(&walking_arrow()).validate().unwrap();
        FinFunctor::to_terminal(&bz2()).validate().unwrap();
    }

    #[test]
    fn functor_validation_names_the_failing_pair() {
        // BZ₂ → BZ₂ sending g to id breaks nothing; sending id to g breaks identities
        let bad = FinFunctor::new(bz2(), bz2(), vec![0], vec![1, 1]);
        assert_eq!(bad.unwrap_err(), FunctorError::Identity(0));
        let ok = FinFunctor::new(bz2(), bz2(), vec![0], vec![0, 0]);
        assert!(ok.is_ok());
        // walking arrow → BZ₂ cannot send f anywhere bad, but a 3-element monoid can fail composition
        let m = build_fincat(&raw(1, &[(0, 0), (0, 0)], &[0], &[[1, 1, 1]])).unwrap();
        let err = FinFunctor::new(m, bz2(), vec![0], vec![0, 1]).unwrap_err();
        assert_eq!(err, FunctorError::Composition { g: 1, f: 1 });
    }
}
