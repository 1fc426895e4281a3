//! Analytic functors on finite presheaves, and species (symmetric sequences
//! over the point) with their exponential generating functions.
//!
//! A presheaf `X` on `A` is stored as a profunctor `𝟙 → A`, so its value at
//! `a` is the cell `(a, ∗)` and restriction along `f: a' → a` is the codomain
//! action. `FX(b) = ∫^α F(b, α) × X^α` is then an ordinary coend composite.

use num_rational::Rational64;
use num_traits::Zero;
use rand::Rng;

use crate::cat::{Cat, Functor, Mor};
use crate::catsym::{self, CatSymError, SymSeq};
use crate::gen::Rng64;
use crate::perm;
use crate::prof::{self, iso_check, IsoOutcome, Profunctor, Window};
use crate::structmaps::Maps;

#[derive(Debug, Clone)]
pub struct Presheaf {
    pub prof: Profunctor,
}

impl Presheaf {
    /// `sizes[a] = |X(a)|`; `restrict(f, x)` sends `x ∈ X(a)` to `X(a')` for `f: a' → a`.
    pub fn new(base: &Cat, point: &Cat, sizes: &[usize], restrict: impl Fn(Mor, usize) -> usize + Sync) -> Presheaf {
        let cells: Vec<_> = sizes.iter().enumerate().map(|(a, &s)| ((a, 0), s)).collect();
        let prof = Profunctor::build(point, base, cells, |g, _, e| restrict(g, e), |_, _, e| e);
        Presheaf { prof }
    }

    /// `X(a) = {0, …, n-1}` everywhere, with identity restrictions.
    pub fn constant(base: &Cat, point: &Cat, n: usize) -> Presheaf {
        Presheaf::new(base, point, &vec![n; base.object_count()], |_, e| e)
    }

    pub fn base(&self) -> &Cat {
        self.prof.cod()
    }

    pub fn size(&self, a: usize) -> usize {
        self.prof.size(a, 0)
    }

    pub fn sizes(&self) -> Vec<usize> {
        (0..self.base().object_count()).map(|a| self.size(a)).collect()
    }
}

/// `X^α = X(a₁) × … × X(aₙ)` as a presheaf on `!A`, elements in mixed radix
/// with the last factor fastest.
pub fn power(maps: &Maps, x: &Presheaf) -> Presheaf {
    let ba_cat = maps.bang(x.base());
    let ba = ba_cat.as_bang().unwrap();
    let sizes: Vec<usize> = (0..ba.object_count())
        .map(|alpha| ba.entries(alpha).iter().map(|&a| x.size(a)).product())
        .collect();
    let decode = |alpha: usize, mut e: usize| {
        let ents = ba.entries(alpha);
        let mut out = vec![0; ents.len()];
        for i in (0..ents.len()).rev() {
            out[i] = e % x.size(ents[i]);
            e /= x.size(ents[i]);
        }
        out
    };
    let pt = x.prof.dom().clone();
    Presheaf::new(&ba_cat, &pt, &sizes, |g, e| {
        // g = (σ, gᵢ: α'ᵢ → α_{σ(i)}) sends (x_j) to (X(gᵢ) x_{σ(i)})
        let parts = ba.parts(g);
        let xs = decode(g.tgt, e);
        let src = ba.entries(g.src);
        let mut idx = 0;
        for i in 0..src.len() {
            let cell = x.prof.cell(parts.arrows[i].tgt, 0).unwrap();
            let v = cell.cod_act[&parts.arrows[i]][xs[parts.sigma[i]]];
            idx = idx * x.size(src[i]) + v;
        }
        idx
    })
}

/// `FX(b) = ∫^α F(b, α) × X^α`.
pub fn eval_analytic(maps: &Maps, f: &SymSeq, x: &Presheaf) -> Result<Presheaf, CatSymError> {
    if f.arity > maps.bound().n_max {
        return Err(CatSymError::InsufficientBound { required: f.arity, available: maps.bound().n_max });
    }
    let p = power(maps, x);
    let prof = prof::compose(&f.body, &p.prof).map_err(|_| CatSymError::NotComposable)?;
    Ok(Presheaf { prof })
}

/// One arity of a species: a finite set with a left `𝔖ₙ`-action,
/// `action[rank(σ)][e] = σ·e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Level {
    pub size: usize,
    pub action: Vec<Vec<usize>>,
}

impl Level {
    pub fn empty(n: usize) -> Level {
        Level { size: 0, action: vec![vec![]; perm::factorial(n)] }
    }

    /// `k` points with trivial action.
    pub fn trivial(n: usize, k: usize) -> Level {
        Level { size: k, action: vec![(0..k).collect(); perm::factorial(n)] }
    }

    /// The coset space `𝔖ₙ / H`.
    pub fn cosets(n: usize, subgroup: &[Vec<usize>]) -> Level {
        let perms = perm::all(n);
        let mut coset_of = vec![usize::MAX; perms.len()];
        let mut reps = Vec::new();
        for (r, s) in perms.iter().enumerate() {
            if coset_of[r] != usize::MAX {
                continue;
            }
            for h in subgroup {
                coset_of[perm::rank(&perm::compose(s, h))] = reps.len();
            }
            reps.push(s.clone());
        }
        let action = perms
            .iter()
            .map(|t| reps.iter().map(|s| coset_of[perm::rank(&perm::compose(t, s))]).collect())
            .collect();
        Level { size: reps.len(), action }
    }

    pub fn plus(&self, other: &Level) -> Level {
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| a.iter().copied().chain(b.iter().map(|&v| v + self.size)).collect())
            .collect();
        Level { size: self.size + other.size, action }
    }

    /// Identity and composition laws of the action.
    pub fn check(&self, n: usize) -> Result<(), String> {
        let perms = perm::all(n);
        if self.action.len() != perms.len() || self.action.iter().any(|t| t.len() != self.size || t.iter().any(|&v| v >= self.size)) {
            return Err(format!("arity {n}: malformed action table"));
        }
        if self.action[0].iter().enumerate().any(|(i, &v)| i != v) {
            return Err(format!("arity {n}: identity acts nontrivially"));
        }
        for s in &perms {
            for t in &perms {
                let st = perm::rank(&perm::compose(s, t));
                for e in 0..self.size {
                    if self.action[st][e] != self.action[perm::rank(s)][self.action[perm::rank(t)][e]] {
                        return Err(format!("arity {n}: action is not compatible with composition"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A species truncated at `levels.len() - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Species {
    pub levels: Vec<Level>,
}

impl Species {
    pub fn zero(bound: usize) -> Species {
        Species { levels: (0..=bound).map(Level::empty).collect() }
    }

    /// `E`: one point at every arity.
    pub fn sets(bound: usize) -> Species {
        Species { levels: (0..=bound).map(|n| Level::trivial(n, 1)).collect() }
    }

    /// `Eₙ`: one point at arity `n`.
    pub fn sets_of(n: usize, bound: usize) -> Species {
        Species { levels: (0..=bound).map(|k| if k == n { Level::trivial(k, 1) } else { Level::empty(k) }).collect() }
    }

    /// The singleton species `X = E₁`.
    pub fn singleton(bound: usize) -> Species {
        Species::sets_of(1, bound)
    }

    pub fn bound(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn arity(&self) -> usize {
        self.levels.iter().rposition(|l| l.size > 0).unwrap_or(0)
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.size).collect()
    }

    pub fn check(&self) -> Result<(), String> {
        self.levels.iter().enumerate().try_for_each(|(n, l)| l.check(n))
    }

    /// Same species with levels cut or padded to `bound`.
    pub fn truncate(&self, bound: usize) -> Species {
        let levels = (0..=bound).map(|n| self.levels.get(n).cloned().unwrap_or_else(|| Level::empty(n))).collect();
        Species { levels }
    }

    /// The symmetric sequence `!𝟙 → 𝟙` with `F(∗, n) = F[n]`.
    pub fn to_seq(&self, maps: &Maps) -> Result<SymSeq, String> {
        let n_max = maps.bound().n_max;
        if self.arity() > n_max {
            return Err(format!("species of arity {} does not fit bound {n_max}", self.arity()));
        }
        let pt = maps.point();
        let b1 = maps.bang(&pt);
        let bc = b1.as_bang().unwrap();
        let sizes: Vec<_> = (0..bc.object_count())
            .map(|x| ((0, x), self.levels.get(bc.len_of(x)).map_or(0, |l| l.size)))
            .collect();
        let body = Profunctor::build(&b1, &pt, sizes, |_, _, e| e, |m, (_, x), e| {
            self.levels[bc.len_of(x)].action[perm::rank(&bc.parts(m).sigma)][e]
        });
        SymSeq::new(body, self.arity()).map_err(|e| e.to_string())
    }

    /// Read a species off a sequence over the point, up to its bound.
    pub fn from_seq(f: &SymSeq) -> Result<Species, String> {
        let bc = f.body.dom().as_bang().ok_or("not a Kleisli map")?;
        if f.dom().object_count() != 1 || f.cod().object_count() != 1 || f.cod().hom_size(0, 0) != 1 {
            return Err("species live over the point".into());
        }
        let bound = bc.bound().n_max;
        let mut levels = Vec::new();
        for n in 0..=bound {
            let x = bc.find(&vec![0; n]).ok_or("arity missing from the bound")?;
            let Some(cell) = f.body.cell(0, x) else {
                levels.push(Level::empty(n));
                continue;
            };
            let mut action = vec![vec![]; perm::factorial(n)];
            for m in f.body.dom().homs(x, x) {
                action[perm::rank(&bc.parts(m).sigma)] = cell.dom_act[&m].clone();
            }
            levels.push(Level { size: cell.size, action });
        }
        Ok(Species { levels })
    }
}

pub fn sp_sum(f: &Species, g: &Species) -> Species {
    let bound = f.bound().max(g.bound());
    let (f, g) = (f.truncate(bound), g.truncate(bound));
    Species { levels: f.levels.iter().zip(&g.levels).map(|(a, b)| a.plus(b)).collect() }
}

/// `λ ∘ (F ⊗ G) ∘ c_𝟙`, read back at the bound of `maps`.
pub fn sp_product(maps: &Maps, f: &Species, g: &Species) -> Result<Species, String> {
    let (fs, gs) = (f.to_seq(maps)?, g.to_seq(maps)?);
    let pt = maps.point();
    let c = maps.contraction(&pt);
    let t = prof::tensor(&fs.body, &gs.body);
    let lam = prof::companion(&Functor::to_point(t.cod(), &pt));
    let body = prof::compose(&lam, &prof::compose(&t, &c).unwrap()).unwrap();
    Species::from_seq(&SymSeq::from_body(body).map_err(|e| e.to_string())?)
}

/// `F ∘ G`, the Kleisli composite over the point.
pub fn sp_substitute(maps: &Maps, f: &Species, g: &Species) -> Result<Species, String> {
    let comp = catsym::kleisli_compose(maps, &f.to_seq(maps)?, &g.to_seq(maps)?).map_err(|e| e.to_string())?;
    Species::from_seq(&comp)
}

pub fn sp_derivative(maps: &Maps, f: &Species) -> Result<Species, String> {
    let d = catsym::derivative(&f.to_seq(maps)?);
    let pt = maps.point();
    let body = prof::reindex(&d.body, d.body.dom(), &pt, &Functor::identity(d.body.dom()), &Functor::to_point(d.cod(), &pt));
    let s = Species::from_seq(&SymSeq::from_body(body).map_err(|e| e.to_string())?)?;
    // the top arity of a derivative is out of reach
    Ok(s.truncate(maps.bound().n_max - 1))
}

/// Isomorphism of species as symmetric sequences.
pub fn sp_iso(maps: &Maps, f: &Species, g: &Species) -> Result<bool, String> {
    let bound = f.bound().max(g.bound());
    let (f, g) = (f.truncate(bound).to_seq(maps)?, g.truncate(bound).to_seq(maps)?);
    match iso_check(&f.body, &g.body, &Window::All, 1_000_000) {
        Ok(IsoOutcome::Iso(_)) => Ok(true),
        Ok(IsoOutcome::NotIso(_)) => Ok(false),
        Err(e) => Err(format!("{e:?}")),
    }
}

/// `|F[n]| / n!` for `n ≤ n_max`.
pub fn egf_coeffs(f: &Species, n_max: usize) -> Result<Vec<Rational64>, String> {
    if n_max > f.bound() {
        return Err(format!("species known only up to arity {}", f.bound()));
    }
    Ok((0..=n_max)
        .map(|n| Rational64::new(f.levels[n].size as i64, perm::factorial(n) as i64))
        .collect())
}

/// Formal derivative of a truncated power series in EGF form.
pub fn egf_derivative(c: &[Rational64]) -> Vec<Rational64> {
    (1..c.len()).map(|n| c[n] * Rational64::from_integer(n as i64)).collect()
}

/// `Σₙ (1/n!) Σ_σ |Fix(σ)| · x^{cyc(σ)}`: the number of `F`-structures on
/// an `x`-element set up to relabelling.
pub fn burnside_count(f: &Species, x: u64) -> u128 {
    let mut total = 0u128;
    for (n, level) in f.levels.iter().enumerate() {
        if level.size == 0 {
            continue;
        }
        let mut sum = 0u128;
        for s in perm::all(n) {
            let fixed = level.action[perm::rank(&s)].iter().enumerate().filter(|&(i, &v)| i == v).count() as u128;
            sum += fixed * (x as u128).pow(perm::cycle_count(&s) as u32);
        }
        let nf = perm::factorial(n) as u128;
        assert!(sum % nf == 0, "orbit count is an integer");
        total += sum / nf;
    }
    total
}

/// `|FX|` for the constant presheaf of size `x` on the point.
pub fn eval_count(maps: &Maps, f: &Species, x: usize) -> Result<usize, String> {
    let pt = maps.point();
    let fx = eval_analytic(maps, &f.to_seq(maps)?, &Presheaf::constant(&pt, &pt, x)).map_err(|e| e.to_string())?;
    Ok(fx.size(0))
}

/// A random species: each arity up to `max_arity` gets up to two coset
/// spaces `𝔖ₙ/H` for random subgroups `H`.
pub fn random_species(rng: &mut Rng64, max_arity: usize, bound: usize) -> Species {
    let mut levels = Vec::new();
    for n in 0..=bound {
        let mut level = Level::empty(n);
        if n <= max_arity {
            for _ in 0..rng.gen_range(0..=2) {
                let perms = perm::all(n);
                let gens: Vec<&Vec<usize>> = perms.iter().filter(|_| rng.gen_bool(0.3)).collect();
                let h = perm_closure(n, &gens);
                level = level.plus(&Level::cosets(n, &h));
            }
        }
        levels.push(level);
    }
    Species { levels }
}

fn perm_closure(n: usize, gens: &[&Vec<usize>]) -> Vec<Vec<usize>> {
    let mut set = vec![perm::identity(n)];
    let mut i = 0;
    while i < set.len() {
        for g in gens {
            let p = perm::compose(g, &set[i]);
            if !set.contains(&p) {
                set.push(p);
            }
        }
        i += 1;
    }
    set
}

/// `Σₖ C(n,k) |F[k]| |G[n−k]|`, the size of `(F·G)[n]` by counting.
pub fn binomial_convolution(f: &Species, g: &Species, n: usize) -> usize {
    (0..=n)
        .map(|k| {
            let fk = f.levels.get(k).map_or(0, |l| l.size);
            let gk = g.levels.get(n - k).map_or(0, |l| l.size);
            binomial(n, k) * fk * gk
        })
        .sum()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn is_zero_series(c: &[Rational64]) -> bool {
    c.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests;
