//! Text format for every artifact: one TOML document per file, tagged with
//! `format_version` and `kind`.
//!
//! Morphisms of a finite category are rows `[name, src, tgt]`; morphisms of
//! any other category are triples `[src, tgt, idx]` (the `idx`-th element of
//! the hom-set). Identity action tables are left out when writing and filled
//! in when reading; every loaded artifact is audited before it is returned.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analytic::{Level, Presheaf, Species};
use crate::cat::{Cat, Mor};
use crate::catsym::SymSeq;
use crate::fincat::{self, build_fincat, FinCat, RawCat, RawMor};
use crate::freesmc::ArityBound;
use crate::laws::Report;
use crate::perm;
use crate::prof::{Cell, Profunctor};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{0}")]
    Syntax(#[from] toml::de::Error),
    #[error("unsupported format_version {0} (this build reads version {FORMAT_VERSION})")]
    Version(u32),
    #[error("expected a {expected} document, found kind = \"{found}\"")]
    Kind { expected: String, found: String },
    #[error("{field}: {message}")]
    Invalid { field: String, message: String },
}

fn invalid(field: impl Into<String>, message: impl ToString) -> FormatError {
    FormatError::Invalid { field: field.into(), message: message.to_string() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Category,
    Profunctor,
    Symseq,
    Species,
    Presheaf,
    Report,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Category => "category",
            Kind::Profunctor => "profunctor",
            Kind::Symseq => "symseq",
            Kind::Species => "species",
            Kind::Presheaf => "presheaf",
            Kind::Report => "report",
        }
    }
}

#[derive(Deserialize)]
struct Header {
    format_version: u32,
    kind: String,
}

/// A finite category as tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatTable {
    pub objects: Vec<String>,
    pub morphisms: Vec<(String, usize, usize)>,
    pub identities: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub compose: Vec<[usize; 3]>,
}

impl CatTable {
    fn from_fin(c: &FinCat) -> CatTable {
        let raw = c.to_raw();
        CatTable {
            objects: raw.objects,
            morphisms: raw.morphisms.into_iter().map(|m| (m.name, m.src, m.tgt)).collect(),
            identities: raw.identities,
            compose: raw.compose,
        }
    }

    fn build(&self, field: &str) -> Result<FinCat, FormatError> {
        let raw = RawCat {
            objects: self.objects.clone(),
            morphisms: self.morphisms.iter().map(|(name, src, tgt)| RawMor { name: name.clone(), src: *src, tgt: *tgt }).collect(),
            identities: self.identities.clone(),
            compose: self.compose.clone(),
        };
        build_fincat(&raw).map_err(|e| invalid(field, e))
    }
}

/// How a category is written inside other documents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CatSpec {
    /// A built-in by name (`one`, `discrete2`, `walking_arrow`, ...); read only.
    Builtin(String),
    Fin(CatTable),
    Bang { base: Box<CatSpec>, bound: usize },
    Product { left: Box<CatSpec>, right: Box<CatSpec> },
    Opposite(Box<CatSpec>),
}

impl CatSpec {
    pub fn of(c: &Cat) -> CatSpec {
        match c {
            Cat::Fin(f) => CatSpec::Fin(CatTable::from_fin(f)),
            Cat::Bang(b) => CatSpec::Bang { base: Box::new(CatSpec::of(b.base())), bound: b.bound().n_max },
            Cat::Product(p) => CatSpec::Product { left: Box::new(CatSpec::of(&p.0)), right: Box::new(CatSpec::of(&p.1)) },
            Cat::Opposite(inner) => CatSpec::Opposite(Box::new(CatSpec::of(inner))),
        }
    }

    pub fn build(&self, field: &str) -> Result<Cat, FormatError> {
        Ok(match self {
            CatSpec::Builtin(name) => {
                Cat::fin(fincat::builtin(name).ok_or_else(|| invalid(field, format!("unknown built-in category \"{name}\"")))?)
            }
            CatSpec::Fin(t) => Cat::fin(t.build(&format!("{field}.fin"))?),
            CatSpec::Bang { base, bound } => Cat::bang(&base.build(&format!("{field}.bang.base"))?, ArityBound::new(*bound)),
            CatSpec::Product { left, right } => Cat::product(
                &left.build(&format!("{field}.product.left"))?,
                &right.build(&format!("{field}.product.right"))?,
            ),
            CatSpec::Opposite(inner) => Cat::opposite(&inner.build(&format!("{field}.opposite"))?),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionDoc {
    /// `[src, tgt, idx]`
    pub mor: [usize; 3],
    pub table: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellDoc {
    /// Object of the codomain category.
    pub cod: usize,
    /// Object of the domain category.
    pub dom: usize,
    pub size: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cod_act: Vec<ActionDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub dom_act: Vec<ActionDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct CategoryDoc {
    format_version: u32,
    kind: Kind,
    #[serde(flatten)]
    table: CatTable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct ProfDoc {
    format_version: u32,
    kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    arity: Option<usize>,
    dom: CatSpec,
    cod: CatSpec,
    #[serde(default)]
    cells: Vec<CellDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelDoc {
    pub size: usize,
    /// `generators[i]` is the action of the transposition `(i i+1)`; empty
    /// means every permutation acts trivially.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct SpeciesDoc {
    format_version: u32,
    kind: Kind,
    /// `levels[n]` is `F[n]`.
    levels: Vec<LevelDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct PresheafDoc {
    format_version: u32,
    kind: Kind,
    base: CatSpec,
    sizes: Vec<usize>,
    /// Restriction along `[src, tgt, idx]`, from `X(tgt)` to `X(src)`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    restrict: Vec<ActionDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct ReportDoc {
    format_version: u32,
    kind: Kind,
    #[serde(flatten)]
    report: Report,
}

/// Anything that can live in a file.
#[derive(Debug, Clone)]
pub enum Artifact {
    Category(FinCat),
    Profunctor(Profunctor),
    SymSeq(SymSeq),
    Species(Species),
    Presheaf(Presheaf),
    Report(Report),
}

impl Artifact {
    pub fn kind(&self) -> Kind {
        match self {
            Artifact::Category(_) => Kind::Category,
            Artifact::Profunctor(_) => Kind::Profunctor,
            Artifact::SymSeq(_) => Kind::Symseq,
            Artifact::Species(_) => Kind::Species,
            Artifact::Presheaf(_) => Kind::Presheaf,
            Artifact::Report(_) => Kind::Report,
        }
    }
}

fn to_toml<T: Serialize>(doc: &T) -> String {
    toml::to_string(doc).expect("documents are always representable")
}

fn mor_triple(m: Mor) -> [usize; 3] {
    [m.src, m.tgt, m.idx]
}

fn is_identity_table(t: &[usize]) -> bool {
    t.iter().enumerate().all(|(i, &v)| i == v)
}

fn actions_doc(cat: &Cat, acts: &BTreeMap<Mor, Vec<usize>>) -> Vec<ActionDoc> {
    acts.iter()
        .filter(|(m, t)| !(m.src == m.tgt && cat.identity(m.src) == **m && is_identity_table(t)))
        .map(|(&m, t)| ActionDoc { mor: mor_triple(m), table: t.clone() })
        .collect()
}

pub fn category_to_string(c: &FinCat) -> String {
    to_toml(&CategoryDoc { format_version: FORMAT_VERSION, kind: Kind::Category, table: CatTable::from_fin(c) })
}

fn prof_doc(p: &Profunctor, kind: Kind, arity: Option<usize>) -> ProfDoc {
    let cells = p
        .cells()
        .iter()
        .map(|(&(b, a), cell)| CellDoc {
            cod: b,
            dom: a,
            size: cell.size,
            cod_act: actions_doc(p.cod(), &cell.cod_act),
            dom_act: actions_doc(p.dom(), &cell.dom_act),
        })
        .collect();
    ProfDoc { format_version: FORMAT_VERSION, kind, arity, dom: CatSpec::of(p.dom()), cod: CatSpec::of(p.cod()), cells }
}

pub fn profunctor_to_string(p: &Profunctor) -> String {
    to_toml(&prof_doc(p, Kind::Profunctor, None))
}

pub fn symseq_to_string(f: &SymSeq) -> String {
    to_toml(&prof_doc(&f.body, Kind::Symseq, Some(f.arity)))
}

/// The transposition `(i i+1)` on `n` points.
fn adjacent(n: usize, i: usize) -> Vec<usize> {
    let mut p = perm::identity(n);
    p.swap(i, i + 1);
    p
}

pub fn species_to_string(s: &Species) -> String {
    let levels = s
        .levels
        .iter()
        .enumerate()
        .map(|(n, l)| {
            let generators: Vec<Vec<usize>> =
                (0..n.saturating_sub(1)).map(|i| l.action[perm::rank(&adjacent(n, i))].clone()).collect();
            let trivial = generators.iter().all(|g| is_identity_table(g));
            LevelDoc { size: l.size, generators: if trivial { vec![] } else { generators } }
        })
        .collect();
    to_toml(&SpeciesDoc { format_version: FORMAT_VERSION, kind: Kind::Species, levels })
}

pub fn presheaf_to_string(x: &Presheaf) -> String {
    let base = x.base();
    let mut restrict = Vec::new();
    for cell in x.prof.cells().values() {
        restrict.extend(actions_doc(base, &cell.cod_act));
    }
    to_toml(&PresheafDoc { format_version: FORMAT_VERSION, kind: Kind::Presheaf, base: CatSpec::of(base), sizes: x.sizes(), restrict })
}

pub fn report_to_string(r: &Report) -> String {
    to_toml(&ReportDoc { format_version: FORMAT_VERSION, kind: Kind::Report, report: r.clone() })
}

pub fn to_string(a: &Artifact) -> String {
    match a {
        Artifact::Category(c) => category_to_string(c),
        Artifact::Profunctor(p) => profunctor_to_string(p),
        Artifact::SymSeq(f) => symseq_to_string(f),
        Artifact::Species(s) => species_to_string(s),
        Artifact::Presheaf(x) => presheaf_to_string(x),
        Artifact::Report(r) => report_to_string(r),
    }
}

/// Parse and audit any artifact.
pub fn parse(text: &str) -> Result<Artifact, FormatError> {
    let header: Header = toml::from_str(text)?;
    if header.format_version != FORMAT_VERSION {
        return Err(FormatError::Version(header.format_version));
    }
    match header.kind.as_str() {
        "category" => {
            let doc: CategoryDoc = toml::from_str(text)?;
            Ok(Artifact::Category(doc.table.build("category")?))
        }
        "profunctor" => Ok(Artifact::Profunctor(parse_prof_doc(&toml::from_str(text)?)?)),
        "symseq" => {
            let doc: ProfDoc = toml::from_str(text)?;
            let body = parse_prof_doc(&doc)?;
            let f = match doc.arity {
                Some(n) => SymSeq::new(body, n),
                None => SymSeq::from_body(body),
            };
            Ok(Artifact::SymSeq(f.map_err(|e| invalid("arity", e))?))
        }
        "species" => Ok(Artifact::Species(parse_species_doc(&toml::from_str(text)?)?)),
        "presheaf" => Ok(Artifact::Presheaf(parse_presheaf_doc(&toml::from_str(text)?)?)),
        "report" => {
            let doc: ReportDoc = toml::from_str(text)?;
            Ok(Artifact::Report(doc.report))
        }
        other => Err(invalid("kind", format!("unknown kind \"{other}\""))),
    }
}

fn mismatch(expected: Kind, found: &Artifact) -> FormatError {
    FormatError::Kind { expected: expected.as_str().into(), found: found.kind().as_str().into() }
}

pub fn parse_category(text: &str) -> Result<FinCat, FormatError> {
    match parse(text)? {
        Artifact::Category(c) => Ok(c),
        other => Err(mismatch(Kind::Category, &other)),
    }
}

pub fn parse_profunctor(text: &str) -> Result<Profunctor, FormatError> {
    match parse(text)? {
        Artifact::Profunctor(p) => Ok(p),
        Artifact::SymSeq(f) => Ok(f.body.as_ref().clone()),
        other => Err(mismatch(Kind::Profunctor, &other)),
    }
}

/// A Kleisli map; a plain profunctor out of some `!A` is accepted too.
pub fn parse_symseq(text: &str) -> Result<SymSeq, FormatError> {
    match parse(text)? {
        Artifact::SymSeq(f) => Ok(f),
        Artifact::Profunctor(p) => SymSeq::from_body(p).map_err(|e| invalid("dom", e)),
        other => Err(mismatch(Kind::Symseq, &other)),
    }
}

pub fn parse_species(text: &str) -> Result<Species, FormatError> {
    match parse(text)? {
        Artifact::Species(s) => Ok(s),
        other => Err(mismatch(Kind::Species, &other)),
    }
}

pub fn parse_presheaf(text: &str) -> Result<Presheaf, FormatError> {
    match parse(text)? {
        Artifact::Presheaf(x) => Ok(x),
        other => Err(mismatch(Kind::Presheaf, &other)),
    }
}

pub fn parse_report(text: &str) -> Result<Report, FormatError> {
    match parse(text)? {
        Artifact::Report(r) => Ok(r),
        other => Err(mismatch(Kind::Report, &other)),
    }
}

fn read_mor(cat: &Cat, m: [usize; 3], field: &str) -> Result<Mor, FormatError> {
    let [src, tgt, idx] = m;
    let n = cat.object_count();
    if src >= n || tgt >= n {
        return Err(invalid(field, format!("morphism [{src}, {tgt}, {idx}]: object out of range (category has {n} objects)")));
    }
    if idx >= cat.hom_size(src, tgt) {
        return Err(invalid(field, format!("morphism [{src}, {tgt}, {idx}]: hom-set has only {} elements", cat.hom_size(src, tgt))));
    }
    Ok(Mor { src, tgt, idx })
}

fn read_actions(cat: &Cat, acts: &[ActionDoc], field: &str) -> Result<BTreeMap<Mor, Vec<usize>>, FormatError> {
    let mut out = BTreeMap::new();
    for (i, a) in acts.iter().enumerate() {
        let f = format!("{field}[{i}]");
        let m = read_mor(cat, a.mor, &f)?;
        if out.insert(m, a.table.clone()).is_some() {
            return Err(invalid(f, format!("action of {:?} given twice", a.mor)));
        }
    }
    Ok(out)
}

fn fill_identities(cat: &Cat, acts: &mut BTreeMap<Mor, Vec<usize>>, x: usize, size: usize) {
    acts.entry(cat.identity(x)).or_insert_with(|| perm::identity(size));
}

fn parse_prof_doc(doc: &ProfDoc) -> Result<Profunctor, FormatError> {
    let dom = doc.dom.build("dom")?;
    let cod = doc.cod.build("cod")?;
    let mut cells = BTreeMap::new();
    for (i, c) in doc.cells.iter().enumerate() {
        let field = format!("cells[{i}]");
        if c.cod >= cod.object_count() || c.dom >= dom.object_count() {
            return Err(invalid(field, format!("cell ({}, {}) is outside the categories", c.cod, c.dom)));
        }
        if c.size == 0 {
            continue;
        }
        let mut cod_act = read_actions(&cod, &c.cod_act, &format!("{field}.cod_act"))?;
        let mut dom_act = read_actions(&dom, &c.dom_act, &format!("{field}.dom_act"))?;
        fill_identities(&cod, &mut cod_act, c.cod, c.size);
        fill_identities(&dom, &mut dom_act, c.dom, c.size);
        if cells.insert((c.cod, c.dom), Cell { size: c.size, cod_act, dom_act }).is_some() {
            return Err(invalid(field, format!("cell ({}, {}) given twice", c.cod, c.dom)));
        }
    }
    let p = Profunctor::from_parts(dom, cod, cells);
    p.audit().map_err(|e| invalid("cells", e))?;
    Ok(p)
}

fn parse_species_doc(doc: &SpeciesDoc) -> Result<Species, FormatError> {
    if doc.levels.is_empty() {
        return Err(invalid("levels", "at least arity 0 must be given"));
    }
    let levels = doc
        .levels
        .iter()
        .enumerate()
        .map(|(n, l)| level_from_generators(n, l).map_err(|e| invalid(format!("levels[{n}]"), e)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Species { levels })
}

/// Spread the generator tables over all of `𝔖ₙ` and check the result is an action.
fn level_from_generators(n: usize, l: &LevelDoc) -> Result<Level, String> {
    if l.generators.is_empty() {
        return Ok(Level::trivial(n, l.size));
    }
    let gens = n.saturating_sub(1);
    if l.generators.len() != gens {
        return Err(format!("expected {gens} generator tables, found {}", l.generators.len()));
    }
    for (i, g) in l.generators.iter().enumerate() {
        if g.len() != l.size || g.iter().any(|&v| v >= l.size) {
            return Err(format!("generator {i} is not a map on {} points", l.size));
        }
    }
    let mut action: Vec<Option<Vec<usize>>> = vec![None; perm::factorial(n)];
    action[0] = Some(perm::identity(l.size));
    let mut queue = vec![perm::identity(n)];
    while let Some(s) = queue.pop() {
        let cur = action[perm::rank(&s)].clone().unwrap();
        for i in 0..gens {
            let t = perm::compose(&adjacent(n, i), &s);
            let r = perm::rank(&t);
            if action[r].is_none() {
                action[r] = Some(perm::compose(&l.generators[i], &cur));
                queue.push(t);
            }
        }
    }
    let level = Level { size: l.size, action: action.into_iter().map(Option::unwrap).collect() };
    level.check(n)?;
    Ok(level)
}

fn parse_presheaf_doc(doc: &PresheafDoc) -> Result<Presheaf, FormatError> {
    let base = doc.base.build("base")?;
    let point = Cat::fin(fincat::one());
    if doc.sizes.len() != base.object_count() {
        return Err(invalid("sizes", format!("expected {} entries, found {}", base.object_count(), doc.sizes.len())));
    }
    let mut acts = read_actions(&base, &doc.restrict, "restrict")?;
    let mut cells = BTreeMap::new();
    for (a, &size) in doc.sizes.iter().enumerate() {
        if size == 0 {
            continue;
        }
        fill_identities(&base, &mut acts, a, size);
        let cod_act: BTreeMap<Mor, Vec<usize>> = acts.iter().filter(|(m, _)| m.tgt == a).map(|(&m, t)| (m, t.clone())).collect();
        let dom_act = BTreeMap::from([(point.identity(0), perm::identity(size))]);
        cells.insert((a, 0), Cell { size, cod_act, dom_act });
    }
    for m in acts.keys() {
        if doc.sizes[m.tgt] == 0 && !acts[m].is_empty() {
            return Err(invalid("restrict", format!("restriction along [{}, {}, {}] out of an empty set must be empty", m.src, m.tgt, m.idx)));
        }
    }
    let prof = Profunctor::from_parts(point, base, cells);
    prof.audit().map_err(|e| invalid("restrict", e))?;
    Ok(Presheaf { prof })
}
