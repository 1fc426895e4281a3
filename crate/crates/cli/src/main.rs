//! `profdiff`: load, combine and check finite profunctors from the command line.
//!
//! Exit status: 0 on success (or all laws passing), 1 when a check fails,
//! 2 on usage or validation errors.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use profdiff_core::analytic::{self, Species};
use profdiff_core::cat::Cat;
use profdiff_core::catsym::{self, SymSeq};
use profdiff_core::fincat::{self, FinCat};
use profdiff_core::format::{self, Artifact};
use profdiff_core::freesmc::ArityBound;
use profdiff_core::laws::{self, SuiteConfig};
use profdiff_core::prof::{self, iso_check, IsoOutcome, Profunctor, Window};
use profdiff_core::structmaps::{MapName, Maps, Mutation};

#[derive(Parser)]
#[command(name = "profdiff", version, about = "Finite profunctors, the exponential !A, and differential structure")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Largest sequence length kept in `!A`.
    #[arg(long, global = true, env = "PROFDIFF_ARITY_BOUND", default_value_t = 3)]
    arity_bound: usize,
    /// Write the resulting document here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized batteries.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Finite categories.
    #[command(subcommand)]
    Cat(CatCmd),
    /// Profunctors.
    #[command(subcommand)]
    Prof(ProfCmd),
    /// A structural map, e.g. `struct dereliction --category bz2`.
    Struct {
        name: String,
        /// Category arguments: built-in names or category files.
        #[arg(long = "category", short = 'c')]
        categories: Vec<String>,
    },
    /// Kleisli maps `!A → B`.
    #[command(subcommand)]
    Catsym(CatsymCmd),
    /// Analytic functors on presheaves.
    #[command(subcommand)]
    Analytic(AnalyticCmd),
    /// Species.
    #[command(subcommand)]
    Species(SpeciesCmd),
    /// Law suites.
    #[command(subcommand)]
    Laws(LawsCmd),
}

#[derive(Subcommand)]
enum CatCmd {
    /// Validate a category file (or a built-in) and write it in normal form.
    Build { source: String },
    /// Describe a category.
    Show { source: String },
}

#[derive(Subcommand)]
enum ProfCmd {
    /// `N ∘ M` (the first argument is applied last).
    Compose { outer: PathBuf, inner: PathBuf },
    /// `F + G`.
    Sum { left: PathBuf, right: PathBuf },
    /// Look for a natural isomorphism; exits 1 if there is none.
    IsoCheck { left: PathBuf, right: PathBuf },
    /// Describe a profunctor.
    Show { file: PathBuf },
}

#[derive(Subcommand)]
enum CatsymCmd {
    /// Kleisli composite `G ∘ F`.
    Compose { outer: PathBuf, inner: PathBuf },
    /// The derivative `∂F: A × A → B`.
    Derive { file: PathBuf },
    /// The identity `d_A`.
    Id {
        #[arg(long = "category", short = 'c')]
        category: String,
    },
}

#[derive(Subcommand)]
enum AnalyticCmd {
    /// Evaluate the analytic functor of a Kleisli map at a presheaf.
    Eval { map: PathBuf, presheaf: PathBuf },
}

#[derive(Subcommand)]
enum SpeciesCmd {
    /// Coefficients `|F[n]|/n!` up to the arity bound.
    Egf { species: String },
    /// The derivative `F'`.
    Derive { species: String },
    /// The substitution `F ∘ G`.
    Compose { outer: String, inner: String },
    /// The product `F · G`.
    Product { left: String, right: String },
}

#[derive(Subcommand)]
enum LawsCmd {
    /// Run a suite: `default`, `species`, `empty`, or a single law name.
    Run {
        #[arg(long, default_value = "default")]
        suite: String,
        /// Corrupt one structural map first: `map:category:seed`.
        #[arg(long)]
        mutate: Option<String>,
    },
}

/// Outcome of a command that ran to completion.
enum Status {
    Ok,
    CheckFailed,
}

/// Artifacts loaded so far, keyed by path. Everything stored has been audited.
#[derive(Default)]
struct Workspace {
    items: BTreeMap<String, Arc<Artifact>>,
}

impl Workspace {
    fn load(&mut self, path: &Path) -> Result<Arc<Artifact>> {
        let key = path.display().to_string();
        if let Some(a) = self.items.get(&key) {
            return Ok(a.clone());
        }
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {key}"))?;
        let art = Arc::new(format::parse(&text).map_err(|e| anyhow!("{key}: {e}"))?);
        self.items.insert(key, art.clone());
        Ok(art)
    }

    fn prof(&mut self, path: &Path) -> Result<Profunctor> {
        match &*self.load(path)? {
            Artifact::Profunctor(p) => Ok(p.clone()),
            Artifact::SymSeq(f) => Ok(f.body.as_ref().clone()),
            other => bail!("{}: expected a profunctor, found a {}", path.display(), other.kind().as_str()),
        }
    }

    fn symseq(&mut self, path: &Path) -> Result<SymSeq> {
        match &*self.load(path)? {
            Artifact::SymSeq(f) => Ok(f.clone()),
            Artifact::Profunctor(p) => SymSeq::from_body(p.clone()).map_err(|e| anyhow!("{}: {e}", path.display())),
            other => bail!("{}: expected a Kleisli map, found a {}", path.display(), other.kind().as_str()),
        }
    }

    /// A built-in name or a category file.
    fn category(&mut self, source: &str) -> Result<FinCat> {
        if let Some(c) = fincat::builtin(source) {
            return Ok(c);
        }
        let path = Path::new(source);
        if !path.exists() {
            bail!("`{source}` is neither a built-in category nor a file");
        }
        match &*self.load(path)? {
            Artifact::Category(c) => Ok(c.clone()),
            other => bail!("{source}: expected a category, found a {}", other.kind().as_str()),
        }
    }

    /// A species file, or one of `E`, `E<n>`, `X`, `zero`.
    fn species(&mut self, source: &str, bound: usize) -> Result<Species> {
        let path = Path::new(source);
        if path.exists() {
            return match &*self.load(path)? {
                Artifact::Species(s) => Ok(s.clone()),
                other => bail!("{source}: expected a species, found a {}", other.kind().as_str()),
            };
        }
        match source {
            "E" => Ok(Species::sets(bound)),
            "X" => Ok(Species::singleton(bound)),
            "zero" | "0" => Ok(Species::zero(bound)),
            _ => match source.strip_prefix('E').and_then(|n| n.trim_start_matches('_').parse().ok()) {
                Some(n) => Ok(Species::sets_of(n, bound)),
                None => bail!("`{source}` is neither a species file nor one of E, E<n>, X, zero"),
            },
        }
    }
}

/// Working bound above which a substitution is refused.
const MAX_SUBSTITUTION_BOUND: usize = 6;

fn emit(common: &Common, text: &str) -> Result<()> {
    match &common.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn maps(common: &Common) -> Maps {
    Maps::new(ArityBound::new(common.arity_bound))
}

fn describe_cat(c: &FinCat) -> String {
    let mut out = format!("{} objects, {} morphisms\n", c.object_count(), c.morphism_count());
    for x in 0..c.object_count() {
        out += &format!("  object {x}: {}\n", c.object_label(x));
    }
    for f in 0..c.morphism_count() {
        out += &format!(
            "  morphism {f}: {}: {} -> {}\n",
            c.morphism_label(f),
            c.object_label(c.src(f)),
            c.object_label(c.tgt(f))
        );
    }
    out
}

fn describe_prof(p: &Profunctor) -> String {
    let mut out = format!(
        "{} -> {}: {} nonempty cells, {} elements\n",
        describe_shape(p.dom()),
        describe_shape(p.cod()),
        p.cells().len(),
        p.total_size()
    );
    for (&(b, a), cell) in p.cells() {
        out += &format!("  F({}, {}) has {} elements\n", p.cod().object_label(b), p.dom().object_label(a), cell.size);
    }
    out
}

fn describe_shape(c: &Cat) -> String {
    match c {
        Cat::Fin(f) => format!("[{} objects]", f.object_count()),
        Cat::Bang(b) => format!("!{} (bound {})", describe_shape(b.base()), b.bound().n_max),
        Cat::Product(p) => format!("{} x {}", describe_shape(&p.0), describe_shape(&p.1)),
        Cat::Opposite(inner) => format!("{}^op", describe_shape(inner)),
    }
}

fn parse_mutation(s: &str) -> Result<Mutation> {
    let parts: Vec<&str> = s.split(':').collect();
    let [map, category, seed] = parts.as_slice() else {
        bail!("--mutate expects map:category:seed, got `{s}`");
    };
    Ok(Mutation {
        map: map.parse::<MapName>().map_err(|e| anyhow!(e))?,
        category: category.to_string(),
        seed: seed.parse().with_context(|| format!("bad mutation seed `{seed}`"))?,
    })
}

fn run(cli: Cli) -> Result<Status> {
    let common = cli.common;
    let mut ws = Workspace::default();
    match cli.command {
        Command::Cat(CatCmd::Build { source }) => {
            let c = ws.category(&source)?;
            emit(&common, &format::category_to_string(&c))?;
        }
        Command::Cat(CatCmd::Show { source }) => {
            let c = ws.category(&source)?;
            print!("{}", describe_cat(&c));
        }
        Command::Prof(ProfCmd::Compose { outer, inner }) => {
            let (n, m) = (ws.prof(&outer)?, ws.prof(&inner)?);
            let p = prof::compose(&n, &m).map_err(|e| anyhow!("cannot compose: {e}"))?;
            emit(&common, &format::profunctor_to_string(&p))?;
        }
        Command::Prof(ProfCmd::Sum { left, right }) => {
            let p = prof::sum(&ws.prof(&left)?, &ws.prof(&right)?).map_err(|e| anyhow!("cannot add: {e}"))?;
            emit(&common, &format::profunctor_to_string(&p))?;
        }
        Command::Prof(ProfCmd::IsoCheck { left, right }) => {
            let (f, g) = (Arc::new(ws.prof(&left)?), Arc::new(ws.prof(&right)?));
            match iso_check(&f, &g, &Window::All, 10_000_000).map_err(|e| anyhow!("{e}"))? {
                IsoOutcome::Iso(t) => {
                    let identity = t.components.values().all(|c| c.iter().enumerate().all(|(i, &v)| i == v));
                    println!("isomorphic{}", if identity { " (identity witness)" } else { "" });
                    for ((b, a), comp) in &t.components {
                        println!("  ({b}, {a}): {comp:?}");
                    }
                }
                IsoOutcome::NotIso(why) => {
                    println!("not isomorphic: {why}");
                    return Ok(Status::CheckFailed);
                }
            }
        }
        Command::Prof(ProfCmd::Show { file }) => print!("{}", describe_prof(&ws.prof(&file)?)),
        Command::Struct { name, categories } => {
            let name: MapName = name.parse().map_err(|e: String| anyhow!(e))?;
            if categories.len() != name.arity() {
                bail!("{name} takes {} category argument(s), got {}", name.arity(), categories.len());
            }
            let cats = categories.iter().map(|c| ws.category(c).map(Cat::fin)).collect::<Result<Vec<_>>>()?;
            let p = maps(&common).realize(name, &cats).map_err(|e| anyhow!(e))?;
            emit(&common, &format::profunctor_to_string(&p))?;
        }
        Command::Catsym(cmd) => {
            let maps = maps(&common);
            let f = match cmd {
                CatsymCmd::Compose { outer, inner } => {
                    let (g, f) = (ws.symseq(&outer)?, ws.symseq(&inner)?);
                    catsym::kleisli_compose(&maps, &g, &f).map_err(|e| anyhow!("{e}"))?
                }
                CatsymCmd::Derive { file } => catsym::derivative(&ws.symseq(&file)?),
                CatsymCmd::Id { category } => catsym::kleisli_id(&maps, &maps.cat(&Cat::fin(ws.category(&category)?))),
            };
            emit(&common, &format::symseq_to_string(&f))?;
        }
        Command::Analytic(AnalyticCmd::Eval { map, presheaf }) => {
            let f = ws.symseq(&map)?;
            let x = match &*ws.load(&presheaf)? {
                Artifact::Presheaf(x) => x.clone(),
                other => bail!("{}: expected a presheaf, found a {}", presheaf.display(), other.kind().as_str()),
            };
            let maps = Maps::new(f.bound());
            let y = analytic::eval_analytic(&maps, &f, &x).map_err(|e| anyhow!("{e}"))?;
            emit(&common, &format::presheaf_to_string(&y))?;
        }
        Command::Species(cmd) => {
            let bound = common.arity_bound;
            let maps = maps(&common);
            let out = match cmd {
                SpeciesCmd::Egf { species } => {
                    let s = ws.species(&species, bound)?;
                    let n = bound.min(s.bound());
                    let coeffs = analytic::egf_coeffs(&s, n).map_err(|e| anyhow!(e))?;
                    let strs: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
                    println!("{}", strs.join(", "));
                    return Ok(Status::Ok);
                }
                SpeciesCmd::Derive { species } => analytic::sp_derivative(&maps, &ws.species(&species, bound)?.truncate(bound)),
                SpeciesCmd::Compose { outer, inner } => {
                    let g = ws.species(&inner, bound)?.truncate(bound);
                    // F[k] only reaches arities ≥ k·m, with m the lowest nonempty arity of G
                    let m = g.levels.iter().position(|l| l.size > 0).unwrap_or(1);
                    let f = ws.species(&outer, bound)?.truncate(if m == 0 { bound } else { bound / m });
                    let wide = bound.max(f.arity() * g.arity());
                    if wide > MAX_SUBSTITUTION_BOUND {
                        bail!("this substitution needs arity bound {wide}; at most {MAX_SUBSTITUTION_BOUND} is supported");
                    }
                    let wide = Maps::new(ArityBound::new(wide));
                    analytic::sp_substitute(&wide, &f, &g).map(|s| s.truncate(bound))
                }
                SpeciesCmd::Product { left, right } => analytic::sp_product(
                    &maps,
                    &ws.species(&left, bound)?.truncate(bound),
                    &ws.species(&right, bound)?.truncate(bound),
                ),
            };
            emit(&common, &format::species_to_string(&out.map_err(|e| anyhow!(e))?))?;
        }
        Command::Laws(LawsCmd::Run { suite, mutate }) => {
            let config = SuiteConfig::by_name(&suite, common.seed, common.arity_bound).map_err(|e| anyhow!(e))?;
            let mutation = mutate.as_deref().map(parse_mutation).transpose()?;
            let report = laws::run_suite(&config, mutation.as_ref()).map_err(|e| anyhow!(e))?;
            print!("{}", report.table());
            if let Some(path) = &common.out {
                std::fs::write(path, format::report_to_string(&report)).with_context(|| format!("writing {}", path.display()))?;
            }
            if !report.all_pass() {
                return Ok(Status::CheckFailed);
            }
        }
    }
    Ok(Status::Ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::CheckFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
