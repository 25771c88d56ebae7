//! Order structures on functor values, lax coalgebra morphisms, AM
//! simulations and toposal AM simulations.
//!
//! Orders are given on elements of `F X` and lifted pointwise to morphisms
//! `X → F Y`. Simulation checks use the equality-left form: over
//! `(x, y) ∈ R` the candidate witnesses are the `t ∈ F R` with
//! `F π1 (t) = α x` and `F π2 (t) ≤ β y`.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::bisim::{Bisim, ElemView};
use crate::category::{CatError, RegularCategory, Result};
use crate::coalgebra::Coalgebra;
use crate::elem::Elem;
use crate::element::{Backend, ElementCategory};
use crate::functor::{same_functor, FunctorHandle};
use crate::random::{function_table, shape_samples};
use crate::relation::{Rel, Relation};
use crate::shape::{Constraint, ElemSpan, Shape};
use crate::topos::{singleton, AxiomCheck, Topos};

/// A preorder on the elements of `F X`, for every `X`.
pub trait ElementOrder: fmt::Debug + Send + Sync {
    fn name(&self) -> &'static str;

    /// `a ≤ b` for `a, b ∈ F X`, where `shape` describes `F`.
    fn leq(&self, shape: &Shape, a: &Elem, b: &Elem) -> bool;

    /// A fiber constraint selecting exactly the elements `≤ v`, when the
    /// order has one. Other orders are handled by filtering.
    fn below(&self, _v: &Elem) -> Option<Constraint> {
        None
    }
}

/// Inclusion at powerset levels, componentwise through products and
/// exponentials, equality elsewhere. For `𝒫(Σ × X)` this is "fewer
/// transitions".
#[derive(Debug, Clone, Copy, Default)]
pub struct InclusionOrder;

impl ElementOrder for InclusionOrder {
    fn name(&self) -> &'static str {
        "subset"
    }

    fn leq(&self, shape: &Shape, a: &Elem, b: &Elem) -> bool {
        structural_leq(shape, a, b)
    }

    fn below(&self, v: &Elem) -> Option<Constraint> {
        Some(Constraint::Within(v.clone()))
    }
}

fn structural_leq(shape: &Shape, a: &Elem, b: &Elem) -> bool {
    match shape {
        Shape::Id | Shape::Const(_) | Shape::UPair(_) => a == b,
        Shape::Prod(l, r) => match (a.as_pair(), b.as_pair()) {
            (Some((a1, a2)), Some((b1, b2))) => structural_leq(l, a1, b1) && structural_leq(r, a2, b2),
            _ => false,
        },
        Shape::Exp(_, inner) => match (a.as_tuple(), b.as_tuple()) {
            (Some(x), Some(y)) => x.len() == y.len() && x.iter().zip(y).all(|(p, q)| structural_leq(inner, p, q)),
            _ => false,
        },
        Shape::Pow(_) => match (a.as_set(), b.as_set()) {
            (Some(x), Some(_)) => x.iter().all(|e| b.set_contains(e)),
            _ => false,
        },
    }
}

/// Equality. Simulations for it are bisimulations.
#[derive(Debug, Clone, Copy, Default)]
pub struct DiscreteOrder;

impl ElementOrder for DiscreteOrder {
    fn name(&self) -> &'static str {
        "discrete"
    }

    fn leq(&self, _shape: &Shape, a: &Elem, b: &Elem) -> bool {
        a == b
    }

    fn below(&self, v: &Elem) -> Option<Constraint> {
        Some(Constraint::Eq(v.clone()))
    }
}

/// Compares top-level sets by size (equality for other values). A preorder
/// that is not preserved by `F g`, kept as a negative control for the
/// good-order probes.
#[derive(Debug, Clone, Copy, Default)]
pub struct CardinalityOrder;

impl ElementOrder for CardinalityOrder {
    fn name(&self) -> &'static str {
        "cardinality"
    }

    fn leq(&self, _shape: &Shape, a: &Elem, b: &Elem) -> bool {
        match (a.as_set(), b.as_set()) {
            (Some(x), Some(y)) => x.len() <= y.len(),
            _ => a == b,
        }
    }
}

pub type OrderHandle = Arc<dyn ElementOrder>;

/// The shipped orders by name: `subset`, `discrete`, `cardinality`.
pub fn order_by_name(name: &str) -> Option<OrderHandle> {
    match name {
        "subset" | "inclusion" => Some(Arc::new(InclusionOrder)),
        "discrete" | "equality" => Some(Arc::new(DiscreteOrder)),
        "cardinality" => Some(Arc::new(CardinalityOrder)),
        _ => None,
    }
}

/// `A ≤_𝒫 B` for `A, B ⊆ F X`: every `a ∈ A` is below some `b ∈ B`.
pub fn leq_pow_elem(ord: &dyn ElementOrder, shape: &Shape, a: &Elem, b: &Elem) -> bool {
    let (Some(xs), Some(ys)) = (a.as_set(), b.as_set()) else { return false };
    xs.iter().all(|x| ys.iter().any(|y| ord.leq(shape, x, y)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SimKind {
    Am,
    Toposal,
}

#[derive(Clone, Debug)]
pub enum SimWitness<C: RegularCategory> {
    /// `W: R → F R`.
    Map(C::Mor),
    /// `W: R → 𝒫 F R`.
    Toposal(C::Mor),
}

#[derive(Clone, Debug)]
pub struct SimReport<C: RegularCategory> {
    pub verdict: bool,
    pub kind: SimKind,
    pub witness: Option<SimWitness<C>>,
    pub failing_pairs: Vec<String>,
    pub notes: Vec<String>,
}

/// Simulation checks over one element backend.
#[derive(Clone, Debug)]
pub struct Simulation<C: ElementCategory + Backend> {
    topos: Topos<C>,
}

impl<C: ElementCategory + Backend> Simulation<C> {
    pub fn new(cat: C) -> Self {
        Simulation { topos: Topos::new(cat) }
    }

    pub fn with_bisim(bisim: Bisim<C>) -> Self {
        Simulation { topos: Topos::with_bisim(bisim) }
    }

    pub fn cat(&self) -> &C {
        self.topos.cat()
    }

    pub fn rel(&self) -> &Rel<C> {
        self.topos.rel()
    }

    pub fn topos(&self) -> &Topos<C> {
        &self.topos
    }

    fn bisim(&self) -> &Bisim<C> {
        self.topos.bisim()
    }

    fn shape<'a>(&self, functor: &'a FunctorHandle<C>) -> Result<&'a Shape> {
        functor.shape().ok_or_else(|| CatError::Unsupported(format!("{} has no element description", functor.name())))
    }

    /// Pointwise `f ≤ g` for `f, g: X → F Y`.
    pub fn leq_hom(&self, functor: &FunctorHandle<C>, f: &C::Mor, g: &C::Mor, ord: &dyn ElementOrder) -> Result<bool> {
        self.pointwise(f, g, |a, b| Ok(ord.leq(self.shape(functor)?, a, b)))
    }

    /// Pointwise `f ≤_𝒫 g` for `f, g: X → 𝒫 F Y`.
    pub fn leq_pow(&self, functor: &FunctorHandle<C>, f: &C::Mor, g: &C::Mor, ord: &dyn ElementOrder) -> Result<bool> {
        self.pointwise(f, g, |a, b| Ok(leq_pow_elem(ord, self.shape(functor)?, a, b)))
    }

    fn pointwise(&self, f: &C::Mor, g: &C::Mor, mut leq: impl FnMut(&Elem, &Elem) -> Result<bool>) -> Result<bool> {
        let cat = self.cat();
        if cat.source(f) != cat.source(g) || cat.target(f) != cat.target(g) {
            return Err(CatError::Endpoint("compared morphisms must be parallel".into()));
        }
        for x in cat.carrier(cat.source(f)).enumerate()? {
            if !leq(&cat.apply(f, x), &cat.apply(g, x))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `F f ∘ α ≤ β ∘ f`.
    pub fn is_lax_coalgebra_hom(&self, f: &C::Mor, a: &Coalgebra<C>, b: &Coalgebra<C>, ord: &dyn ElementOrder) -> Result<bool> {
        same_functor(a.functor(), b.functor())?;
        let cat = self.cat();
        if cat.source(f) != a.carrier() || cat.target(f) != b.carrier() {
            return Err(CatError::Endpoint("morphism does not go between the carriers".into()));
        }
        let lhs = cat.compose(&a.functor().on_morphism(cat, f)?, a.structure())?;
        let rhs = cat.compose(b.structure(), f)?;
        self.leq_hom(a.functor(), &lhs, &rhs, ord)
    }

    fn view(&self, r: &Relation<C>, a: &Coalgebra<C>, b: &Coalgebra<C>) -> Result<ElemView> {
        self.bisim().check(r, a, b)?;
        self.bisim()
            .elem_view(r, a, b)
            .ok_or_else(|| CatError::Unsupported(format!("{} has no element description", a.functor().name())))
    }

    /// `{t ∈ F R : F π1 (t) = α x, F π2 (t) ≤ β y}` for the `i`-th pair.
    fn fiber(&self, view: &ElemView, i: usize, ord: &dyn ElementOrder) -> Result<Vec<Elem>> {
        let (ax, by) = &view.targets[i];
        let cap = self.bisim().limits().max_candidates;
        match ord.below(by) {
            Some(c) => view.shape.fibers(&[Constraint::Eq(ax.clone()), c], &view.span, cap),
            None => {
                let all = view.shape.fibers(&[Constraint::Eq(ax.clone()), Constraint::Free], &view.span, cap)?;
                Ok(all
                    .into_iter()
                    .filter(|t| ord.leq(&view.shape, &view.shape.map(t, &|e| view.span.project(1, e)), by))
                    .collect())
            }
        }
    }

    /// Whether the `i`-th simulation fiber is inhabited, without listing it
    /// when the order gives a constraint.
    fn inhabited(&self, view: &ElemView, i: usize, ord: &dyn ElementOrder) -> Result<bool> {
        let (ax, by) = &view.targets[i];
        match ord.below(by) {
            Some(c) => {
                let cap = self.bisim().limits().max_candidates;
                Ok(view.shape.fiber_witness(&[Constraint::Eq(ax.clone()), c], &view.span, cap)?.is_some())
            }
            None => Ok(!self.fiber(view, i, ord)?.is_empty()),
        }
    }

    /// The simulation fibers of every element of `R`, in apex order.
    pub fn simulation_fibers(&self, r: &Relation<C>, a: &Coalgebra<C>, b: &Coalgebra<C>, ord: &dyn ElementOrder) -> Result<Vec<(Elem, Vec<Elem>)>> {
        let view = self.view(r, a, b)?;
        (0..view.targets.len()).map(|i| Ok((view.span.elements()[i].clone(), self.fiber(&view, i, ord)?))).collect()
    }

    /// Whether some `W: R → F R` satisfies both inequalities of the
    /// simulation square with `≤` on the left (not just equality), found by
    /// listing `F R`.
    pub fn exists_lax_left_witness(&self, r: &Relation<C>, a: &Coalgebra<C>, b: &Coalgebra<C>, ord: &dyn ElementOrder) -> Result<bool> {
        let view = self.view(r, a, b)?;
        let fr = a.functor().on_object(self.cat(), self.rel().apex(r))?;
        let all = self.cat().carrier(&fr).enumerate()?;
        let shape = &view.shape;
        Ok((0..view.targets.len()).all(|i| {
            let (ax, by) = &view.targets[i];
            all.iter().any(|t| {
                let left = shape.map(t, &|e| view.span.project(0, e));
                let right = shape.map(t, &|e| view.span.project(1, e));
                ord.leq(shape, ax, &left) && ord.leq(shape, &right, by)
            })
        }))
    }

    /// An AM simulation witness `W: R → F R`, chosen through the simulation
    /// fibers (equivariantly on G-sets).
    pub fn is_am_simulation(&self, r: &Relation<C>, a: &Coalgebra<C>, b: &Coalgebra<C>, ord: &dyn ElementOrder) -> Result<SimReport<C>> {
        let view = self.view(r, a, b)?;
        let mut failing = Vec::new();
        let mut fibers = Vec::with_capacity(view.targets.len());
        for i in 0..view.targets.len() {
            let f = self.fiber(&view, i, ord)?;
            if f.is_empty() {
                failing.push(view.span.elements()[i].to_string());
            }
            fibers.push(f);
        }
        let mut report = SimReport { verdict: false, kind: SimKind::Am, witness: None, failing_pairs: failing, notes: Vec::new() };
        if !report.failing_pairs.is_empty() {
            return Ok(report);
        }
        let fr = a.functor().on_object(self.cat(), self.rel().apex(r))?;
        let w = self.bisim().equivariant_section(self.rel().apex(r), &fr, &view.span, |i, _| Ok(fibers[i].clone()))?;
        match w {
            Some(w) => {
                report.verdict = true;
                report.witness = Some(SimWitness::Map(w));
            }
            None => report.notes.push("every fiber is inhabited but no structure-preserving selection of witnesses exists".into()),
        }
        Ok(report)
    }

    /// The toposal form: `W(x, y)` is the whole simulation fiber, and the
    /// square `η ∘ α ∘ r1 ≤_𝒫 𝒫(F r1) ∘ W`, `𝒫(F r2) ∘ W ≤_𝒫 η ∘ β ∘ r2` is
    /// checked for it.
    pub fn is_toposal_am_simulation(&self, r: &Relation<C>, a: &Coalgebra<C>, b: &Coalgebra<C>, ord: &dyn ElementOrder) -> Result<SimReport<C>> {
        let view = self.view(r, a, b)?;
        let cat = self.cat();
        let apex = self.rel().apex(r);
        let functor = a.functor();
        let fr = functor.on_object(cat, apex)?;
        let pfr = self.topos.pow(&fr);
        let mut table = std::collections::HashMap::new();
        let mut failing = Vec::new();
        for i in 0..view.targets.len() {
            let fiber = self.fiber(&view, i, ord)?;
            if fiber.is_empty() {
                failing.push(view.span.elements()[i].to_string());
            }
            table.insert(view.span.elements()[i].clone(), Elem::set(fiber));
        }
        let w = cat.morphism_from_fn(apex, &pfr, move |e| table[e].clone())?;
        let (r1, r2) = self.rel().legs(r)?;
        let left = cat.compose(&self.topos.pow_map(&functor.on_morphism(cat, &r1)?)?, &w)?;
        let right = cat.compose(&self.topos.pow_map(&functor.on_morphism(cat, &r2)?)?, &w)?;
        let want_left = cat.compose(&self.topos.eta(cat.target(a.structure()))?, &cat.compose(a.structure(), &r1)?)?;
        let want_right = cat.compose(&self.topos.eta(cat.target(b.structure()))?, &cat.compose(b.structure(), &r2)?)?;
        let verdict = self.leq_pow(functor, &want_left, &left, ord)? && self.leq_pow(functor, &right, &want_right, ord)?;
        Ok(SimReport { verdict, kind: SimKind::Toposal, witness: Some(SimWitness::Toposal(w)), failing_pairs: failing, notes: Vec::new() })
    }

    /// The largest toposal AM simulation from `a` to `b`.
    pub fn similarity(&self, a: &Coalgebra<C>, b: &Coalgebra<C>, ord: &dyn ElementOrder) -> Result<Relation<C>> {
        same_functor(a.functor(), b.functor())?;
        let full = self.rel().full(a.carrier(), b.carrier())?;
        let mut view = self.view(&full, a, b)?;
        loop {
            let mut keep = Vec::new();
            for i in 0..view.targets.len() {
                if self.inhabited(&view, i, ord)? {
                    keep.push(i);
                }
            }
            if keep.len() == view.targets.len() {
                break;
            }
            let elems: Vec<Elem> = keep.iter().map(|&i| view.span.elements()[i].clone()).collect();
            let xs = elems.iter().map(|e| view.span.project(0, e)).collect();
            let ys = elems.iter().map(|e| view.span.project(1, e)).collect();
            let targets = keep.iter().map(|&i| view.targets[i].clone()).collect();
            view = ElemView { shape: view.shape, span: ElemSpan::new(elems, vec![xs, ys]), targets };
        }
        let prod = self.cat().product(a.carrier(), b.carrier())?;
        let m = self.cat().inclusion(&prod.apex, view.span.elements().to_vec())?;
        self.rel().from_mono(a.carrier(), b.carrier(), &m)
    }
}

/// Sampling parameters for [`good_order_suite`].
#[derive(Clone, Copy, Debug)]
pub struct OrderSuiteConfig {
    pub max_base: usize,
    /// Largest `F Y` listed when searching for axiom-2 witnesses.
    pub max_listed: u128,
    pub samples: usize,
    pub max_members: usize,
}

impl Default for OrderSuiteConfig {
    fn default() -> Self {
        OrderSuiteConfig { max_base: 3, max_listed: 1 << 10, samples: 40, max_members: 3 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrderReport {
    pub order: String,
    pub functor: String,
    pub checks: Vec<AxiomCheck>,
}

impl OrderReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(AxiomCheck::holds)
    }

    pub fn check(&self, prefix: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom.starts_with(prefix))
    }
}

/// Probes the good-order axioms of `ord` on `F` (described by `shape`) and
/// of its extension `≤_𝒫` on `𝒫F`, on finite sets:
/// preorder laws; monotonicity of `F g` (axiom 1); and for `c ≤ F g (b)`
/// some `b' ≤ b` with `F g (b') = c` (axiom 2). Also checks that `η`
/// reflects and preserves the order.
pub fn good_order_suite<R: Rng>(shape: &Shape, name: &str, ord: &dyn ElementOrder, cfg: &OrderSuiteConfig, rng: &mut R) -> Result<OrderReport> {
    let pow = Shape::pow();
    let pshape = Shape::compose(&pow, shape);
    let mut checks = vec![
        AxiomCheck::new("preorder: ≤ is reflexive and transitive", true),
        AxiomCheck::new("axiom 1: a ≤ b implies F g (a) ≤ F g (b)", true),
        AxiomCheck::new("axiom 2: c ≤ F g (b) implies c = F g (b') for some b' ≤ b", true),
        AxiomCheck::new("preorder: ≤_𝒫 is reflexive and transitive", true),
        AxiomCheck::new("axiom 1 for ≤_𝒫", true),
        AxiomCheck::new("axiom 2 for ≤_𝒫", true),
        AxiomCheck::new("unit: a ≤ b iff {a} ≤_𝒫 {b}", true),
    ];
    let leq = |a: &Elem, b: &Elem| ord.leq(shape, a, b);
    let pleq = |a: &Elem, b: &Elem| leq_pow_elem(ord, shape, a, b);
    for n in 1..=cfg.max_base {
        let ys = crate::elem::atoms("y", n);
        let zs = crate::elem::atoms("z", n.max(2) - 1);
        let table: std::collections::HashMap<Elem, Elem> = ys.iter().cloned().zip(function_table(rng, &ys, &zs)).collect();
        let g = |e: &Elem| table[e].clone();
        let fg = |e: &Elem| shape.map(e, &g);
        let pfg = |e: &Elem| pshape.map(e, &g);
        let fy = shape_samples(rng, shape, &ys, cfg.max_listed, cfg.samples, cfg.max_members);
        let listed: Option<Vec<Elem>> = shape.enumerate(&ys, cfg.max_listed).ok();
        let pfy = shape_samples(rng, &pshape, &ys, 64, cfg.samples, cfg.max_members);

        for a in fy.iter().take(cfg.samples) {
            for b in fy.iter().take(cfg.samples) {
                checks[0].record(Ok(if !leq(a, a) {
                    Some(format!("{a} ≰ {a}"))
                } else {
                    fy.iter()
                        .take(cfg.samples)
                        .find(|c| leq(a, b) && leq(b, c) && !leq(a, c))
                        .map(|c| format!("{a} ≤ {b} ≤ {c} but {a} ≰ {c}"))
                }))?;
                if leq(a, b) {
                    let (ga, gb) = (fg(a), fg(b));
                    checks[1].record(Ok((!leq(&ga, &gb)).then(|| format!("{a} ≤ {b} but F g maps them to {ga} ≰ {gb}"))))?;
                }
                checks[6].record(Ok((leq(a, b) != pleq(&singleton(a), &singleton(b)))
                    .then(|| format!("{a}, {b}: ≤ and ≤_𝒫 on singletons disagree"))))?;
            }
            // Axiom 2 with c ranging over values below F g (a).
            if let Some(all) = &listed {
                let ga = fg(a);
                let fz = shape_samples(rng, shape, &zs, cfg.max_listed, cfg.samples, cfg.max_members);
                for c in fz.iter().filter(|c| leq(c, &ga)) {
                    let found = all.iter().any(|b2| leq(b2, a) && fg(b2) == *c);
                    checks[2].record(Ok((!found).then(|| format!("{c} ≤ F g ({a}) = {ga} has no b' ≤ {a} with F g (b') = {c}"))))?;
                }
            }
        }

        for a in &pfy {
            for b in &pfy {
                checks[3].record(Ok(if !pleq(a, a) {
                    Some(format!("{a} ≰_𝒫 {a}"))
                } else {
                    pfy.iter()
                        .find(|c| pleq(a, b) && pleq(b, c) && !pleq(a, c))
                        .map(|c| format!("{a} ≤_𝒫 {b} ≤_𝒫 {c} but not {a} ≤_𝒫 {c}"))
                }))?;
                if pleq(a, b) {
                    let (ga, gb) = (pfg(a), pfg(b));
                    checks[4].record(Ok((!pleq(&ga, &gb)).then(|| format!("{a} ≤_𝒫 {b} but 𝒫F g maps them to {ga}, {gb}"))))?;
                }
            }
            // Axiom 2 for ≤_𝒫: build B' member by member.
            if let Some(all) = &listed {
                let ga = pfg(a);
                let pfz = shape_samples(rng, &pshape, &zs, 64, cfg.samples, cfg.max_members);
                for c in pfz.iter().filter(|c| pleq(c, &ga)) {
                    let members = c.as_set().expect("set");
                    let mut chosen = Vec::new();
                    let mut ok = true;
                    for m in members {
                        let pick = a
                            .as_set()
                            .expect("set")
                            .iter()
                            .filter(|b| leq(m, &fg(b)))
                            .find_map(|b| all.iter().find(|b2| leq(b2, b) && fg(b2) == *m));
                        match pick {
                            Some(b2) => chosen.push(b2.clone()),
                            None => ok = false,
                        }
                    }
                    let b2 = Elem::set(chosen);
                    let holds = ok && pleq(&b2, a) && pfg(&b2) == *c;
                    checks[5].record(Ok((!holds).then(|| format!("{c} ≤_𝒫 𝒫F g ({a}) has no B' ≤_𝒫 {a} mapping onto it"))))?;
                }
            }
        }
    }
    Ok(OrderReport { order: ord.name().into(), functor: name.into(), checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elem::atoms;
    use crate::finset::{FinSet, FinSetMor, FinSetObj};
    use crate::random::rng;

    fn a(s: &str) -> Elem {
        Elem::atom(s)
    }

    fn lts(states: &[&str], labels: &[&str], trans: &[(&str, &str, &str)]) -> Coalgebra<FinSet> {
        let x = FinSetObj::explicit(states.iter().map(|s| a(s)));
        let labels: Vec<Elem> = labels.iter().map(|l| a(l)).collect();
        let t: Vec<(Elem, Elem, Elem)> = trans.iter().map(|(s, l, u)| (a(s), a(l), a(u))).collect();
        Coalgebra::lts(&FinSet, &x, &labels, &t).unwrap()
    }

    #[test]
    fn one_branch_is_simulated_by_two() {
        let small = lts(&["s0", "s1"], &["a", "b"], &[("s0", "a", "s1")]);
        let big = lts(&["t0", "t1", "t2"], &["a", "b"], &[("t0", "a", "t1"), ("t0", "b", "t2")]);
        let sim = Simulation::new(FinSet);
        let r = sim.rel().from_pairs(small.carrier(), big.carrier(), &[(a("s0"), a("t0")), (a("s1"), a("t1"))]).unwrap();
        assert!(sim.is_am_simulation(&r, &small, &big, &InclusionOrder).unwrap().verdict);
        assert!(sim.is_toposal_am_simulation(&r, &small, &big, &InclusionOrder).unwrap().verdict);
        let back = sim.rel().dagger(&r).unwrap();
        let rep = sim.is_am_simulation(&back, &big, &small, &InclusionOrder).unwrap();
        assert!(!rep.verdict);
        assert_eq!(rep.failing_pairs, vec!["(t0,s0)".to_string()]);
        assert!(!sim.is_toposal_am_simulation(&back, &big, &small, &InclusionOrder).unwrap().verdict);
        let empty = sim.rel().empty(small.carrier(), big.carrier()).unwrap();
        assert!(sim.is_am_simulation(&empty, &small, &big, &InclusionOrder).unwrap().verdict);
        let s = sim.similarity(&small, &big, &InclusionOrder).unwrap();
        assert!(sim.rel().leq(&r, &s).unwrap());
        assert!(!sim.is_am_simulation(&r, &small, &big, &DiscreteOrder).unwrap().verdict);
    }

    #[test]
    fn similarity_of_wide_branching_needs_no_fiber_listing() {
        let states: Vec<String> = (0..6).map(|i| format!("k{i}")).collect();
        let names: Vec<&str> = states.iter().map(String::as_str).collect();
        let trans: Vec<(&str, &str, &str)> = names.iter().flat_map(|s| names.iter().map(move |t| (*s, "a", *t))).collect();
        let complete = lts(&names, &["a"], &trans);
        let sim = Simulation::new(FinSet);
        let s = sim.similarity(&complete, &complete, &InclusionOrder).unwrap();
        assert_eq!(s, sim.rel().full(complete.carrier(), complete.carrier()).unwrap());
    }

    #[test]
    fn lax_morphisms() {
        let small = lts(&["s0", "s1"], &["a", "b"], &[("s0", "a", "s1")]);
        let big = lts(&["t0", "t1"], &["a", "b"], &[("t0", "a", "t1"), ("t0", "b", "t1")]);
        let sim = Simulation::new(FinSet);
        let f = FinSetMor::from_pairs(small.carrier(), big.carrier(), &[(a("s0"), a("t0")), (a("s1"), a("t1"))]).unwrap();
        assert!(sim.is_lax_coalgebra_hom(&f, &small, &big, &InclusionOrder).unwrap());
        let g = FinSetMor::from_pairs(big.carrier(), small.carrier(), &[(a("t0"), a("s0")), (a("t1"), a("s1"))]).unwrap();
        assert!(!sim.is_lax_coalgebra_hom(&g, &big, &small, &InclusionOrder).unwrap());
        let id = FinSet.identity(small.carrier());
        assert!(sim.is_lax_coalgebra_hom(&id, &small, &small, &InclusionOrder).unwrap());
    }

    #[test]
    fn pointwise_pow_order() {
        let shape = Shape::pow();
        let p = |s: &str| Elem::parse(s).unwrap();
        assert!(leq_pow_elem(&InclusionOrder, &shape, &p("{}"), &p("{{x}}")));
        assert!(leq_pow_elem(&InclusionOrder, &shape, &p("{{x}}"), &p("{{y},{x,z}}")));
        assert!(!leq_pow_elem(&InclusionOrder, &shape, &p("{{x}}"), &p("{{y}}")));
    }

    #[test]
    fn good_order_probes() {
        let shape = Shape::pow_labels(&atoms("a", 2));
        let cfg = OrderSuiteConfig { max_base: 2, ..OrderSuiteConfig::default() };
        let good = good_order_suite(&shape, "lts", &InclusionOrder, &cfg, &mut rng(5)).unwrap();
        assert!(good.passed(), "{good:?}");
        let det = good_order_suite(&Shape::det(&atoms("a", 2)), "det", &DiscreteOrder, &cfg, &mut rng(5)).unwrap();
        assert!(det.passed(), "{det:?}");
        let bad = good_order_suite(&shape, "lts", &CardinalityOrder, &OrderSuiteConfig::default(), &mut rng(6)).unwrap();
        assert!(!bad.check("axiom 1:").unwrap().holds(), "{bad:?}");
    }
}
