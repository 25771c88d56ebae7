//! Power objects on the element backends and the structure they carry: the
//! classifier `ξ`, the power-object monad `(𝒫, η, μ)`, Kleisli composition,
//! pseudo-inverses, proto-distributive laws `δ_{F,X}: F𝒫X → 𝒫FX`,
//! strength, and toposal bisimulations.
//!
//! Finite sets and finite G-sets are toposes: `𝒫X` is the set of subsets
//! (with the direct-image action on G-sets) and `∈_X = {(x, U) : x ∈ U}`.
//! Vector spaces have no power objects, which the type bounds enforce.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::Rng;
use serde::Serialize;

use crate::bisim::{Bisim, BisimKind, Witness, WitnessReport};
use crate::category::{CatError, RegularCategory, Result};
use crate::coalgebra::Coalgebra;
use crate::elem::Elem;
use crate::element::{Backend, ElementCategory};
use crate::functor::FunctorHandle;
use crate::random::{function_table, shape_samples};
use crate::relation::{Rel, Relation};
use crate::shape::{Constraint, ElemSpan, Shape};

/// `𝒫X` together with the membership relation `∈_X: X ↛ 𝒫X`.
#[derive(Clone, Debug)]
pub struct PowerObject<C: RegularCategory> {
    pub base: C::Obj,
    pub pow: C::Obj,
    pub membership: Relation<C>,
}

/// `{e}`.
pub fn singleton(e: &Elem) -> Elem {
    Elem::set([e.clone()])
}

/// `⋃ S` for a set of sets.
pub fn union(s: &Elem) -> Elem {
    Elem::set(s.as_set().expect("union of a set").iter().flat_map(|u| u.as_set().expect("union of sets").iter().cloned()))
}

/// `δ_{F,X}(t)` for `t ∈ F𝒫X`: the set of `F π1 (s)` over all
/// `s ∈ F(∈_X)` with `F π2 (s) = t`. Only the subsets occurring in `t` are
/// relevant, so `X` itself is not needed.
pub fn delta_at(shape: &Shape, t: &Elem, max_candidates: usize) -> Result<Elem> {
    let occurring = RefCell::new(BTreeSet::new());
    shape.map(t, &|u| {
        occurring.borrow_mut().insert(u.clone());
        u.clone()
    });
    let mut elems = Vec::new();
    let mut xs = Vec::new();
    let mut us = Vec::new();
    for u in occurring.into_inner() {
        let members = u.as_set().ok_or_else(|| CatError::Invalid(format!("{u} is not a subset")))?;
        for x in members {
            elems.push(Elem::pair(x.clone(), u.clone()));
            xs.push(x.clone());
            us.push(u.clone());
        }
    }
    let span = ElemSpan::new(elems, vec![xs, us]);
    let fiber = shape.fibers(&[Constraint::Free, Constraint::Eq(t.clone())], &span, max_candidates)?;
    Ok(Elem::set(fiber.iter().map(|s| shape.map(s, &|p| p.as_pair().expect("membership pair").0.clone()))))
}

/// Power-object structure over one element backend.
#[derive(Clone, Debug)]
pub struct Topos<C: ElementCategory + Backend> {
    bisim: Bisim<C>,
}

impl<C: ElementCategory + Backend> Topos<C> {
    pub fn new(cat: C) -> Self {
        Topos { bisim: Bisim::new(cat) }
    }

    pub fn with_bisim(bisim: Bisim<C>) -> Self {
        Topos { bisim }
    }

    pub fn cat(&self) -> &C {
        self.bisim.cat()
    }

    pub fn rel(&self) -> &Rel<C> {
        self.bisim.rel()
    }

    pub fn bisim(&self) -> &Bisim<C> {
        &self.bisim
    }

    fn max_candidates(&self) -> usize {
        self.bisim.limits().max_candidates
    }

    /// `𝒫X`, listed when small and symbolic otherwise.
    pub fn pow(&self, x: &C::Obj) -> C::Obj {
        self.cat().apply_shape(&Shape::pow(), x)
    }

    /// `𝒫X` with its membership relation; `𝒫X` must be listable.
    pub fn power_object(&self, x: &C::Obj) -> Result<PowerObject<C>> {
        let pow = self.pow(x);
        let mut pairs = Vec::new();
        for u in self.cat().carrier(&pow).enumerate()? {
            for e in u.as_set().expect("subsets") {
                pairs.push((e.clone(), u.clone()));
            }
        }
        let membership = self.rel().from_pairs(x, &pow, &pairs)?;
        Ok(PowerObject { base: x.clone(), pow, membership })
    }

    /// The classifier `ξ_r: Y → 𝒫X` of `r: X ↛ Y`, `y ↦ {x : x r y}`.
    pub fn xi(&self, r: &Relation<C>) -> Result<C::Mor> {
        let mut fibers: BTreeMap<Elem, Vec<Elem>> = BTreeMap::new();
        for (x, y) in self.rel().pairs(r)? {
            fibers.entry(y).or_default().push(x);
        }
        let fibers: HashMap<Elem, Elem> = fibers.into_iter().map(|(y, xs)| (y, Elem::set(xs))).collect();
        let pow = self.pow(r.dom());
        self.cat().morphism_from_fn(r.cod(), &pow, move |y| fibers.get(y).cloned().unwrap_or_else(Elem::empty_set))
    }

    /// The relation `X ↛ Y` classified by `f: Y → 𝒫X`.
    pub fn relation_of(&self, x: &C::Obj, f: &C::Mor) -> Result<Relation<C>> {
        if *self.cat().target(f) != self.pow(x) {
            return Err(CatError::Endpoint(format!("{f:?} does not target the power object of {x:?}")));
        }
        let y = self.cat().source(f);
        let mut pairs = Vec::new();
        for e in self.cat().carrier(y).enumerate()? {
            for m in self.cat().apply(f, e).as_set().expect("subsets") {
                pairs.push((m.clone(), e.clone()));
            }
        }
        self.rel().from_pairs(x, y, &pairs)
    }

    /// Whether `r` is the pullback of `∈_X` along `id × f`, i.e. whether `f`
    /// classifies `r` in the sense of the defining square.
    pub fn classifies(&self, r: &Relation<C>, f: &C::Mor) -> Result<bool> {
        let cat = self.cat();
        let po = self.power_object(r.dom())?;
        let along = cat.parallel(&cat.identity(r.dom()), f)?;
        let pb = cat.pullback(po.membership.mono(), &along)?;
        Ok(self.rel().from_mono(r.dom(), r.cod(), &pb.right)? == *r)
    }

    /// `𝒫f`: direct image.
    pub fn pow_map(&self, f: &C::Mor) -> Result<C::Mor> {
        self.cat().lift_shape(&Shape::pow(), f)
    }

    /// `𝒫f` as the classifier of the image of `(f × id) ∘ ∈_X`.
    pub fn pow_map_relational(&self, f: &C::Mor) -> Result<C::Mor> {
        let cat = self.cat();
        let po = self.power_object(cat.source(f))?;
        let (l1, l2) = self.rel().legs(&po.membership)?;
        let r = self.rel().from_span(&cat.compose(f, &l1)?, &l2)?;
        self.xi(&r)
    }

    /// `η_X: X → 𝒫X`, `x ↦ {x}`.
    pub fn eta(&self, x: &C::Obj) -> Result<C::Mor> {
        self.cat().morphism_from_fn(x, &self.pow(x), singleton)
    }

    /// `μ_X: 𝒫𝒫X → 𝒫X`, union.
    pub fn mu(&self, x: &C::Obj) -> Result<C::Mor> {
        let px = self.pow(x);
        self.cat().morphism_from_fn(&self.pow(&px), &px, union)
    }

    /// `μ_X` as the classifier of `∈_X ; ∈_{𝒫X}`.
    pub fn mu_relational(&self, x: &C::Obj) -> Result<C::Mor> {
        let inner = self.power_object(x)?;
        let outer = self.power_object(&inner.pow)?;
        self.xi(&self.rel().compose(&inner.membership, &outer.membership)?)
    }

    /// The Kleisli extension `μ_X ∘ 𝒫f : 𝒫Y → 𝒫X` of `f: Y → 𝒫X`.
    pub fn kleisli_lift(&self, x: &C::Obj, f: &C::Mor) -> Result<C::Mor> {
        self.cat().compose(&self.mu(x)?, &self.pow_map(f)?)
    }

    /// `μ_X ∘ 𝒫f ∘ g` for `f: Y → 𝒫X` and `g: Z → 𝒫Y`.
    pub fn kleisli_compose(&self, x: &C::Obj, f: &C::Mor, g: &C::Mor) -> Result<C::Mor> {
        self.cat().compose(&self.kleisli_lift(x, f)?, g)
    }

    /// `f† = ξ_{⟨id, f⟩} : Y → 𝒫X`, sending a point to its fiber.
    pub fn pseudo_inverse(&self, f: &C::Mor) -> Result<C::Mor> {
        self.xi(&self.rel().graph(f)?)
    }

    /// `μ_X ∘ 𝒫(f†) : 𝒫Y → 𝒫X`: a retraction of `𝒫f` when `f` is mono and a
    /// section of it when `f` is epi.
    pub fn pow_splitting(&self, f: &C::Mor) -> Result<C::Mor> {
        self.kleisli_lift(self.cat().source(f), &self.pseudo_inverse(f)?)
    }

    /// `δ_{F,X}` computed element by element; `F𝒫X` must be listable.
    pub fn proto_dist(&self, functor: &FunctorHandle<C>, x: &C::Obj) -> Result<C::Mor> {
        let shape = functor
            .shape()
            .ok_or_else(|| CatError::Unsupported(format!("{} has no element description", functor.name())))?
            .clone();
        let px = self.pow(x);
        let fpx = functor.on_object(self.cat(), &px)?;
        let elems = self.cat().carrier(&fpx).enumerate()?;
        let mut table = HashMap::with_capacity(elems.len());
        for t in elems {
            table.insert(t.clone(), delta_at(&shape, t, self.max_candidates())?);
        }
        let target = self.pow(&functor.on_object(self.cat(), x)?);
        self.cat().morphism_from_fn(&fpx, &target, move |t| table[t].clone())
    }

    /// `δ_{F,X}` as the classifier of the image of
    /// `⟨F π1, F π2⟩ ∘ F ∈_X`; `F(∈_X)` must be listable.
    pub fn proto_dist_categorical(&self, functor: &FunctorHandle<C>, x: &C::Obj) -> Result<C::Mor> {
        let po = self.power_object(x)?;
        let (l1, l2) = self.rel().legs(&po.membership)?;
        let f1 = functor.on_morphism(self.cat(), &l1)?;
        let f2 = functor.on_morphism(self.cat(), &l2)?;
        self.xi(&self.rel().from_span(&f1, &f2)?)
    }

    fn strength_shaped(&self, src: &C::Obj, tgt: &C::Obj, shape: Shape) -> Result<C::Mor> {
        let cap = self.max_candidates();
        let table: HashMap<Elem, Elem> = self
            .cat()
            .carrier(src)
            .enumerate()?
            .iter()
            .map(|e| Ok((e.clone(), delta_at(&shape, e, cap)?)))
            .collect::<Result<_>>()?;
        self.cat().morphism_from_fn(src, tgt, move |e| table[e].clone())
    }

    /// `st_{X,Y} = δ_{X × −, Y} : X × 𝒫Y → 𝒫(X × Y)`.
    pub fn strength(&self, x: &C::Obj, y: &C::Obj) -> Result<C::Mor> {
        let src = self.cat().product(x, &self.pow(y))?.apex;
        let tgt = self.pow(&self.cat().product(x, y)?.apex);
        let shape = Shape::product(Shape::constant(self.cat().carrier(x).enumerate()?.iter().cloned()), Shape::Id);
        self.strength_shaped(&src, &tgt, shape)
    }

    /// `cst_{X,Y} = δ_{− × Y, X} : 𝒫X × Y → 𝒫(X × Y)`.
    pub fn costrength(&self, x: &C::Obj, y: &C::Obj) -> Result<C::Mor> {
        let src = self.cat().product(&self.pow(x), y)?.apex;
        let tgt = self.pow(&self.cat().product(x, y)?.apex);
        let shape = Shape::product(Shape::Id, Shape::constant(self.cat().carrier(y).enumerate()?.iter().cloned()));
        self.strength_shaped(&src, &tgt, shape)
    }

    /// The two composites `𝒫X × 𝒫Y → 𝒫(X × Y)`:
    /// `μ ∘ 𝒫st ∘ cst` and `μ ∘ 𝒫cst ∘ st`.
    pub fn double_strengths(&self, x: &C::Obj, y: &C::Obj) -> Result<(C::Mor, C::Mor)> {
        let cat = self.cat();
        let xy = cat.product(x, y)?.apex;
        let mu = self.mu(&xy)?;
        let left = cat.compose(&mu, &cat.compose(&self.pow_map(&self.strength(x, y)?)?, &self.costrength(x, &self.pow(y))?)?)?;
        let right = cat.compose(&mu, &cat.compose(&self.pow_map(&self.costrength(x, y)?)?, &self.strength(&self.pow(x), y)?)?)?;
        Ok((left, right))
    }

    /// Whether the two double strengths agree (commutativity of `𝒫`).
    pub fn commutativity_check(&self, x: &C::Obj, y: &C::Obj) -> Result<bool> {
        let (l, r) = self.double_strengths(x, y)?;
        Ok(l == r)
    }

    /// `W = ξ(max witness) : R → 𝒫FR`, checked against the toposal square
    /// `𝒫(F r_i) ∘ W = η ∘ (α r1 | β r2)`.
    pub fn is_toposal(&self, r: &Relation<C>, a: &Coalgebra<C>, b: &Coalgebra<C>) -> Result<WitnessReport<C>> {
        let cat = self.cat();
        let w = self.xi(&self.bisim.max_witness(r, a, b)?)?;
        let (r1, r2) = self.rel().legs(r)?;
        let functor = a.functor();
        let left = cat.compose(&self.pow_map(&functor.on_morphism(cat, &r1)?)?, &w)?;
        let right = cat.compose(&self.pow_map(&functor.on_morphism(cat, &r2)?)?, &w)?;
        let fx = cat.target(a.structure());
        let fy = cat.target(b.structure());
        let want_left = cat.compose(&self.eta(fx)?, &cat.compose(a.structure(), &r1)?)?;
        let want_right = cat.compose(&self.eta(fy)?, &cat.compose(b.structure(), &r2)?)?;
        let verdict = left == want_left && right == want_right;
        let failing: Vec<String> = cat
            .carrier(self.rel().apex(r))
            .enumerate()?
            .iter()
            .filter(|e| cat.apply(&w, e).as_set().is_some_and(<[Elem]>::is_empty))
            .map(Elem::to_string)
            .collect();
        Ok(WitnessReport {
            verdict,
            kind: BisimKind::Toposal,
            witness: Some(Witness::Toposal(w)),
            failing_pairs: failing,
            notes: Vec::new(),
        })
    }
}

/// Outcome of one axiom of a (weak) distributive law.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    /// Whether the axiom is expected to hold.
    pub expected: bool,
    pub checked: usize,
    /// Samples abandoned because a fiber exceeded the enumeration cap.
    pub skipped: usize,
    pub counterexample: Option<String>,
}

impl AxiomCheck {
    pub(crate) fn new(axiom: &str, expected: bool) -> Self {
        AxiomCheck { axiom: axiom.into(), expected, checked: 0, skipped: 0, counterexample: None }
    }

    pub(crate) fn record(&mut self, outcome: Result<Option<String>>) -> Result<()> {
        match outcome {
            Ok(None) => self.checked += 1,
            Ok(Some(why)) => {
                self.checked += 1;
                if self.counterexample.is_none() {
                    self.counterexample = Some(why);
                }
            }
            Err(CatError::CapExceeded(_)) => self.skipped += 1,
            Err(e) => return Err(e),
        }
        Ok(())
    }

    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }

    /// The outcome matches the expectation: laws expected to hold have no
    /// counterexample and expected failures were exhibited.
    pub fn as_expected(&self) -> bool {
        self.holds() == self.expected
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DistLawReport {
    pub functor: String,
    pub checks: Vec<AxiomCheck>,
}

impl DistLawReport {
    /// Every axiom expected to hold does.
    pub fn passed(&self) -> bool {
        self.checks.iter().filter(|c| c.expected).all(AxiomCheck::holds)
    }

    /// The exhibit refuting the unit axiom of a full distributive law, if
    /// that axiom was probed and failed.
    pub fn full_law_counterexample(&self) -> Option<&str> {
        self.checks.iter().find(|c| !c.expected).and_then(|c| c.counterexample.as_deref())
    }
}

/// Sampling parameters for [`dist_law_suite`].
#[derive(Clone, Copy, Debug)]
pub struct DistSuiteConfig {
    /// Carrier sizes `|X|` to test on.
    pub max_base: usize,
    /// Test exhaustively when a domain has at most this many elements.
    pub exhaustive: u128,
    /// Random samples per axiom and carrier otherwise.
    pub samples: usize,
    /// Members drawn per powerset level when sampling.
    pub max_members: usize,
    pub max_candidates: usize,
}

impl Default for DistSuiteConfig {
    fn default() -> Self {
        DistSuiteConfig { max_base: 3, exhaustive: 256, samples: 60, max_members: 3, max_candidates: 16 }
    }
}

/// Checks the axioms of `δ_F` pointwise on finite sets: naturality in `X`,
/// `δ ∘ Fη = η_F`, and `δ ∘ Fμ = μ_F ∘ 𝒫δ ∘ δ_𝒫`. When `F` is `𝒫` itself
/// (`monad = true`) the axioms of a weak distributive law of `𝒫` over
/// itself are added (`δ ∘ μ_𝒫 = 𝒫μ ∘ δ_𝒫 ∘ 𝒫δ`), together with a probe of the
/// unit axiom `δ ∘ η_𝒫 = 𝒫η` of a full law.
pub fn dist_law_suite<R: Rng>(shape: &Shape, name: &str, monad: bool, cfg: &DistSuiteConfig, rng: &mut R) -> Result<DistLawReport> {
    let pow = Shape::pow();
    let cap = cfg.max_candidates;
    let delta = |t: &Elem| delta_at(shape, t, cap);
    let f_pow = Shape::compose(shape, &pow);
    let f_pow_pow = Shape::compose(shape, &Shape::compose(&pow, &pow));
    let mut natural = AxiomCheck::new("naturality: 𝒫Ff ∘ δ_X = δ_Y ∘ F𝒫f", true);
    let mut unit = AxiomCheck::new("unit: δ ∘ Fη = η_F", true);
    let mut mult = AxiomCheck::new("multiplication: δ ∘ Fμ = μ_F ∘ 𝒫δ ∘ δ_𝒫", true);
    let mut t_mult = AxiomCheck::new("monad multiplication: δ ∘ μ_𝒫 = 𝒫μ ∘ δ_𝒫 ∘ 𝒫δ", true);
    let mut t_unit = AxiomCheck::new("monad unit (full law): δ ∘ η_𝒫 = 𝒫η", false);

    for n in 0..=cfg.max_base {
        let xs = crate::elem::atoms("x", n);
        // Naturality against a random map into a carrier of size n+1.
        let ys = crate::elem::atoms("y", n + 1);
        let table: HashMap<Elem, Elem> = xs.iter().cloned().zip(function_table(rng, &xs, &ys)).collect();
        let f = |e: &Elem| table[e].clone();
        for t in shape_samples(rng, &f_pow, &xs, cfg.exhaustive, cfg.samples, cfg.max_members) {
            natural.record((|| {
                let lhs = pow.map(&delta(&t)?, &|s| shape.map(s, &f));
                let rhs = delta(&f_pow.map(&t, &f))?;
                Ok((lhs != rhs).then(|| format!("t = {t}: 𝒫Ff(δ t) = {lhs}, δ(F𝒫f t) = {rhs}")))
            })())?;
        }
        for t in shape_samples(rng, shape, &xs, cfg.exhaustive, cfg.samples, cfg.max_members) {
            unit.record((|| {
                let lhs = delta(&shape.map(&t, &singleton))?;
                let rhs = singleton(&t);
                Ok((lhs != rhs).then(|| format!("t = {t}: δ(Fη t) = {lhs}")))
            })())?;
        }
        for t in shape_samples(rng, &f_pow_pow, &xs, cfg.exhaustive, cfg.samples, cfg.max_members) {
            mult.record((|| {
                let lhs = delta(&shape.map(&t, &union))?;
                let outer = delta(&t)?;
                let mut acc = Vec::new();
                for s in outer.as_set().expect("δ yields a set") {
                    acc.push(delta(s)?);
                }
                let rhs = union(&Elem::set(acc));
                Ok((lhs != rhs).then(|| format!("t = {t}: δ(Fμ t) = {lhs}, μ(𝒫δ(δ t)) = {rhs}")))
            })())?;
        }
        if monad {
            let ppp = Shape::compose(&pow, &Shape::compose(&pow, &pow));
            for t in shape_samples(rng, &ppp, &xs, cfg.exhaustive, cfg.samples, cfg.max_members) {
                t_mult.record((|| {
                    let lhs = delta(&union(&t))?;
                    let mut inner = Vec::new();
                    for s in t.as_set().expect("set") {
                        inner.push(delta(s)?);
                    }
                    let mid = delta(&Elem::set(inner))?;
                    let rhs = pow.map(&mid, &union);
                    Ok((lhs != rhs).then(|| format!("t = {t}: δ(μ t) = {lhs}, 𝒫μ(δ(𝒫δ t)) = {rhs}")))
                })())?;
            }
            for u in shape_samples(rng, &pow, &xs, cfg.exhaustive, cfg.samples, cfg.max_members) {
                t_unit.record((|| {
                    let lhs = delta(&singleton(&u))?;
                    let rhs = pow.map(&u, &singleton);
                    Ok((lhs != rhs).then(|| format!("U = {u}: δ({{U}}) = {lhs} but 𝒫η(U) = {rhs}")))
                })())?;
            }
        }
    }
    let mut checks = vec![natural, unit, mult];
    if monad {
        checks.push(t_mult);
        checks.push(t_unit);
    }
    Ok(DistLawReport { functor: name.to_string(), checks })
}

/// `δ(U) = {V ⊆ ⋃U : V meets every W ∈ U}`, listed by brute force over the
/// subsets of `⋃U`.
pub fn pow_delta_formula(u: &Elem) -> Elem {
    let whole = union(u);
    let members = u.as_set().expect("set of sets");
    Elem::set(crate::shape::subsets(whole.as_set().expect("set")).filter(|v| {
        members.iter().all(|w| w.as_set().expect("set").iter().any(|e| v.set_contains(e)))
    }))
}
