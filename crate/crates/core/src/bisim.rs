//! Decision procedures for AM, regular AM, HJ bisimulations and behavioural
//! equivalences, with witness extraction.
//!
//! Every check works on the *maximal witness* of a relation `r: R ↣ X × Y`
//! between coalgebras `α` and `β`: the pullback of
//! `⟨F π1, F π2⟩ ∘ F m_r : F R → F X × F Y` against
//! `(α × β) ∘ m_r : R → F X × F Y`. Its element over `(x, y)` is the fiber
//! of `F R` above `(α x, β y)`. Any witness relation factors through it, so
//! a regular AM witness exists iff the maximal one covers `R`.
//!
//! When `F R` is small enough to list, the maximal witness is built with
//! the backend's own pullback. On element backends with a shape-described
//! functor the fibers can instead be queried one pair at a time, which keeps
//! checks on large powerset images feasible.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::category::{CatError, RegularCategory, Result};
use crate::coalgebra::{is_coalgebra_hom, Coalgebra};
use crate::elem::Elem;
use crate::element::Backend;
use crate::functor::{same_functor, FunctorHandle};
use crate::relation::{Rel, Relation};
use crate::shape::{Constraint, ElemSpan, Shape};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BisimKind {
    Am,
    Regular,
    Hj,
    Behavioural,
    Toposal,
}

impl BisimKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            BisimKind::Am => "am",
            BisimKind::Regular => "regular",
            BisimKind::Hj => "hj",
            BisimKind::Behavioural => "behavioural",
            BisimKind::Toposal => "toposal",
        }
    }
}

impl fmt::Display for BisimKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BisimKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "am" => Ok(BisimKind::Am),
            "regular" => Ok(BisimKind::Regular),
            "hj" => Ok(BisimKind::Hj),
            "behavioural" | "behavioral" => Ok(BisimKind::Behavioural),
            "toposal" => Ok(BisimKind::Toposal),
            other => Err(format!("unknown bisimulation kind '{other}'")),
        }
    }
}

/// The evidence attached to a verdict.
#[derive(Clone, Debug)]
pub enum Witness<C: RegularCategory> {
    /// `W: R → F R` (AM bisimulations).
    Map(C::Mor),
    /// `w: W ↣ F R × R` (regular AM bisimulations), as a relation from
    /// `F R` to `R`.
    Relation(Relation<C>),
    /// `w: R → F̄R` together with the lifting mono `F̄R ↣ F X × F Y`.
    Lifting { w: C::Mor, lifting: C::Mor },
    /// The cospan `X → Z ← Y` of coalgebra homomorphisms with `γ: Z → F Z`,
    /// and the relation it induces.
    Cospan { gamma: C::Mor, f: C::Mor, g: C::Mor, closure: Relation<C> },
    /// `W: R → 𝒫 F R` (toposal bisimulations).
    Toposal(C::Mor),
}

#[derive(Clone, Debug)]
pub struct WitnessReport<C: RegularCategory> {
    pub verdict: bool,
    pub kind: BisimKind,
    pub witness: Option<Witness<C>>,
    /// Elements of the relation with no witness (or a description of the
    /// obstruction on non-element backends).
    pub failing_pairs: Vec<String>,
    pub notes: Vec<String>,
}

impl<C: RegularCategory> WitnessReport<C> {
    fn new(kind: BisimKind, verdict: bool) -> Self {
        WitnessReport { verdict, kind, witness: None, failing_pairs: Vec::new(), notes: Vec::new() }
    }
}

/// Enumeration limits for element-level fiber queries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest candidate set whose subsets are enumerated at a powerset level.
    pub max_candidates: usize,
    /// Largest materialized maximal witness.
    pub max_fiber: usize,
    /// Largest `F R` decided by a pullback in the backend when fiber
    /// queries are also available.
    pub categorical_max: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_candidates: 16, max_fiber: 1 << 16, categorical_max: 256 }
    }
}

/// The legs and maps that every check starts from.
struct Parts<C: RegularCategory> {
    fr: C::Obj,
    /// `⟨F r1, F r2⟩ : F R → F X × F Y`.
    lift: C::Mor,
    /// `⟨α r1, β r2⟩ : R → F X × F Y`.
    h: C::Mor,
}

/// Element-level view of a relation between coalgebras.
pub(crate) struct ElemView {
    pub(crate) shape: Shape,
    pub(crate) span: ElemSpan,
    /// `(α x, β y)` for each element of the span.
    pub(crate) targets: Vec<(Elem, Elem)>,
}

impl ElemView {
    fn constraints(&self, i: usize) -> [Constraint; 2] {
        let (ax, by) = &self.targets[i];
        [Constraint::Eq(ax.clone()), Constraint::Eq(by.clone())]
    }
}

/// The pushout cospan of a relation's tabulation with its induced coalgebra.
#[derive(Clone, Debug)]
pub struct Closure<C: RegularCategory> {
    pub relation: Relation<C>,
    pub coalgebra: Coalgebra<C>,
    pub f: C::Mor,
    pub g: C::Mor,
}

#[derive(Clone, Debug)]
pub struct Bisim<C: Backend> {
    cat: C,
    rel: Rel<C>,
    limits: Limits,
}

impl<C: Backend> Bisim<C> {
    pub fn new(cat: C) -> Self {
        Bisim::with_limits(cat, Limits::default())
    }

    pub fn with_limits(cat: C, limits: Limits) -> Self {
        Bisim { rel: Rel::new(cat.clone()), cat, limits }
    }

    pub fn cat(&self) -> &C {
        &self.cat
    }

    pub fn rel(&self) -> &Rel<C> {
        &self.rel
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub(crate) fn check(&self, r: &Relation<C>, a: &Coalgebra<C>, b: &Coalgebra<C>) -> Result<()> {
        same_functor(a.functor(), b.functor())?;
        if r.dom() != a.carrier() || r.cod() != b.carrier() {
            return Err(CatError::Endpoint("relation does not connect the two carriers".into()));
        }
        Ok(())
    }

    fn fr(&self, r: &Relation<C>, functor: &FunctorHandle<C>) -> Result<C::Obj> {
        functor.on_object(&self.cat, self.rel.apex(r))
    }

    fn parts(&self, r: &Relation<C>, a: &Coalgebra<C>, b: &Coalgebra<C>) -> Result<Parts<C>> {
        let f = a.functor();
        let (r1, r2) = self.rel.legs(r)?;
        let fr = self.fr(r, f)?;
        let lift = self.cat.pair(&f.on_morphism(&self.cat, &r1)?, &f.on_morphism(&self.cat, &r2)?)?;
        let h = self.cat.pair(&self.cat.compose(a.structure(), &r1)?, &self.cat.compose(b.structure(), &r2)?)?;
        Ok(Parts { fr, lift, h })
    }

    pub(crate) fn elem_view(&self, r: &Relation<C>, a: &Coalgebra<C>, b: &Coalgebra<C>) -> Option<ElemView> {
        let shape = a.functor().shape()?.clone();
        let apex = self.cat.element_carrier(self.rel.apex(r))?.elements()?.to_vec();
        let pairs = self.cat.element_function(r.mono())?;
        let alpha = self.cat.element_function(a.structure())?;
        let beta = self.cat.element_function(b.structure())?;
        let mut xs = Vec::with_capacity(apex.len());
        let mut ys = Vec::with_capacity(apex.len());
        let mut targets = Vec::with_capacity(apex.len());
        for e in &apex {
            let p = pairs.apply(e);
            let (x, y) = p.as_pair()?;
            targets.push((alpha.apply(x), beta.apply(y)));
            xs.push(x.clone());
            ys.push(y.clone());
        }
        Some(ElemView { shape, span: ElemSpan::new(apex, vec![xs, ys]), targets })
    }

    /// Whether `F R` can be listed, so that the categorical route applies.
    pub fn listable(&self, r: &Relation<C>, functor: &FunctorHandle<C>) -> Result<bool> {
        Ok(self.cat.enumerable(&self.fr(r, functor)?))
    }

    /// Whether to decide on the listed `F R` rather than by fiber queries.
    fn categorical_route(&self, r: &Relation<C>, a: &Coalgebra<C>, b: &Coalgebra<C>) -> Result<bool> {
        let fr = self.fr(r, a.functor())?;
        if !self.cat.enumerable(&fr) {
            return Ok(false);
        }
        let small = self.cat.element_carrier(&fr).is_none_or(|c| c.len() <= self.limits.categorical_max);
        Ok(small || self.elem_view(r, a, b).is_none())
    }

    /// The maximal witness `w: W ↣ F R × R`, as a relation from `F R` to `R`.
    pub fn max_witness(&self, r: &Relation<C>, a: &Coalgebra<C>, b: &Coalgebra<C>) -> Result<Relation<C>> {
        self.check(r, a, b)?;
        if self.categorical_route(r, a, b)? {
            self.max_witness_categorical(r, a, b)
        } else {
            self.max_witness_elements(r, a, b)
        }
    }

    /// The maximal witness built as a pullback in the backend.
    pub fn max_witness_categorical(&self, r: &Relation<C>, a: &Coalgebra<C>, b: &Coalgebra<C>) -> Result<Relation<C>> {
        self.check(r, a, b)?;
        let p = self.parts(r, a, b)?;
        let pb = self.cat.pullback(&p.lift, &p.h)?;
        let m = self.cat.pair(&pb.left, &pb.right)?;
        self.rel.from_mono(&p.fr, self.rel.apex(r), &m)
    }

    /// The maximal witness assembled from per-pair fiber queries.
    pub fn max_witness_elements(&self, r: &Relation<C>, a: &Coalgebra<C>, b: &Coalgebra<C>) -> Result<Relation<C>> {
        self.check(r, a, b)?;
        let view = self.elem_view(r, a, b).ok_or_else(|| CatError::Unsupported("no element-level view of this functor".into()))?;
        let mut elems = Vec::new();
        for (i, re) in view.span.elements().iter().enumerate() {
            for t in view.shape.fibers(&view.constraints(i), &view.span, self.limits.max_candidates)? {
                elems.push(Elem::pair(t, re.clone()));
                if elems.len() > self.limits.max_fiber {
                    return Err(CatError::CapExceeded(format!("maximal witness exceeds {} elements", self.limits.max_fiber)));
                }
            }
        }
        let fr = self.fr(r, a.functor())?;
        let prod = self.cat.product(&fr, self.rel.apex(r))?;
        let m = self
            .cat
            .element_inclusion(&prod.apex, elems)
            .ok_or_else(|| CatError::Unsupported("backend has no element inclusions".into()))??;
        self.rel.from_mono(&fr, self.rel.apex(r), &m)
    }

    /// Elements of `R` whose fiber is empty (element route).
    fn empty_fibers(&self, view: &ElemView) -> Result<Vec<Elem>> {
        let mut out = Vec::new();
        for (i, re) in view.span.elements().iter().enumerate() {
            if view.shape.fiber_witness(&view.constraints(i), &view.span, self.limits.max_candidates)?.is_none() {
                out.push(re.clone());
            }
        }
        Ok(out)
    }

    pub fn is_regular_am(&self, r: &Relation<C>, a: &Coalgebra<C>, b: &Coalgebra<C>) -> Result<WitnessReport<C>> {
        self.check(r, a, b)?;
        if self.categorical_route(r, a, b)? {
            let w = self.max_witness_categorical(r, a, b)?;
            let (_, to_r) = self.rel.legs(&w)?;
            let mut report = WitnessReport::new(BisimKind::Regular, self.cat.is_regular_epi(&to_r)?);
            report.failing_pairs = self.cat.uncovered(&to_r)?;
            if report.verdict {
                report.witness = Some(Witness::Relation(w));
            }
            return Ok(report);
        }
        let view = self.elem_view(r, a, b).ok_or_else(|| CatError::CapExceeded("F R is too large to list".into()))?;
        let failing = self.empty_fibers(&view)?;
        let mut report = WitnessReport::new(BisimKind::Regular, failing.is_empty());
        report.failing_pairs = failing.iter().map(Elem::to_string).collect();
        if report.verdict {
            match self.max_witness_elements(r, a, b) {
                Ok(w) => report.witness = Some(Witness::Relation(w)),
                Err(CatError::CapExceeded(why)) => report.notes.push(format!("maximal witness not materialized: {why}")),
                Err(e) => return Err(e),
            }
        }
        Ok(report)
    }

    /// A morphism `W: R → F R` making the AM square commute, if the backend
    /// admits one.
    pub fn am_witness(&self, r: &Relation<C>, a: &Coalgebra<C>, b: &Coalgebra<C>) -> Result<Option<C::Mor>> {
        self.check(r, a, b)?;
        if self.categorical_route(r, a, b)? {
            let p = self.parts(r, a, b)?;
            return self.cat.solve_factorization(&p.h, &p.lift);
        }
        let view = self.elem_view(r, a, b).ok_or_else(|| CatError::CapExceeded("F R is too large to list".into()))?;
        let fr = self.fr(r, a.functor())?;
        let cap = self.limits.max_candidates;
        self.equivariant_section(self.rel.apex(r), &fr, &view.span, |i, all| {
            if all {
                view.shape.fibers(&view.constraints(i), &view.span, cap)
            } else {
                Ok(view.shape.fiber_witness(&view.constraints(i), &view.span, cap)?.into_iter().collect())
            }
        })
    }

    /// A structure-preserving map `R → F R` sending the `i`-th element of
    /// `span` into `fiber(i, _)`. With a trivial group any element will do
    /// (`fiber(i, false)` may return just one); otherwise each orbit
    /// representative needs a fiber element fixed by its stabilizer, and the
    /// choice is transported along the orbit.
    pub(crate) fn equivariant_section(
        &self,
        apex: &C::Obj,
        fr: &C::Obj,
        span: &ElemSpan,
        mut fiber: impl FnMut(usize, bool) -> Result<Vec<Elem>>,
    ) -> Result<Option<C::Mor>> {
        let order = self.cat.group_order();
        let mut choice: HashMap<Elem, Elem> = HashMap::new();
        for (i, re) in span.elements().iter().enumerate() {
            if choice.contains_key(re) {
                continue;
            }
            if order == 1 {
                match fiber(i, false)?.into_iter().next() {
                    Some(t) => {
                        choice.insert(re.clone(), t);
                    }
                    None => return Ok(None),
                }
                continue;
            }
            // Elements are visited in order, so `re` is the smallest element
            // of an orbit not yet handled.
            let stab: Vec<usize> = (0..order).filter(|&g| self.cat.act(apex, g, re) == *re).collect();
            let Some(t) = fiber(i, true)?.into_iter().find(|t| stab.iter().all(|&g| self.cat.act(fr, g, t) == *t)) else {
                return Ok(None);
            };
            for g in 0..order {
                choice.insert(self.cat.act(apex, g, re), self.cat.act(fr, g, &t));
            }
        }
        let rule = Arc::new(move |e: &Elem| choice[e].clone());
        self.cat
            .element_morphism(apex, fr, rule)
            .ok_or_else(|| CatError::Unsupported("backend has no element morphisms".into()))?
            .map(Some)
    }

    pub fn is_am(&self, r: &Relation<C>, a: &Coalgebra<C>, b: &Coalgebra<C>) -> Result<WitnessReport<C>> {
        let w = self.am_witness(r, a, b)?;
        let mut report = WitnessReport::new(BisimKind::Am, w.is_some());
        match w {
            Some(w) => report.witness = Some(Witness::Map(w)),
            None => {
                let regular = self.is_regular_am(r, a, b)?;
                report.failing_pairs = regular.failing_pairs;
                if regular.verdict {
                    report.notes.push("every fiber is inhabited but no structure-preserving selection of witnesses exists".into());
                }
            }
        }
        Ok(report)
    }

    pub fn is_hj(&self, r: &Relation<C>, a: &Coalgebra<C>, b: &Coalgebra<C>) -> Result<WitnessReport<C>> {
        self.check(r, a, b)?;
        if !self.listable(r, a.functor())? {
            return Err(CatError::CapExceeded("the relation lifting needs F R to be listed".into()));
        }
        let p = self.parts(r, a, b)?;
        let fac = self.cat.factorize(&p.lift)?;
        let w = self.cat.solve_factorization(&p.h, &fac.mono)?;
        let mut report = WitnessReport::new(BisimKind::Hj, w.is_some());
        match w {
            Some(w) => report.witness = Some(Witness::Lifting { w, lifting: fac.mono }),
            None => report.failing_pairs = self.outside_lifting(r, &p, &fac.mono)?,
        }
        Ok(report)
    }

    fn outside_lifting(&self, r: &Relation<C>, p: &Parts<C>, lifting: &C::Mor) -> Result<Vec<String>> {
        let (Some(h), Some(m), Some(rs)) = (
            self.cat.element_function(&p.h),
            self.cat.element_function(lifting),
            self.cat.element_carrier(self.rel.apex(r)),
        ) else {
            return Ok(vec!["(α×β)∘m_r does not factor through the relation lifting".into()]);
        };
        let mut image = m.values()?.to_vec();
        image.sort();
        Ok(rs
            .enumerate()?
            .iter()
            .filter(|e| image.binary_search(&h.apply(e)).is_err())
            .map(Elem::to_string)
            .collect())
    }

    /// The pushout `X → Z ← Y` of the tabulation of `r`, the coalgebra it
    /// induces on `Z`, and the pullback relation of the cospan; `None` when
    /// no coalgebra structure on `Z` makes both legs homomorphisms.
    pub fn behavioural_closure(&self, r: &Relation<C>, a: &Coalgebra<C>, b: &Coalgebra<C>) -> Result<Option<Closure<C>>> {
        self.check(r, a, b)?;
        let (r1, r2) = self.rel.legs(r)?;
        let po = self.cat.pushout(&r1, &r2)?;
        let functor = a.functor();
        let left = self.cat.compose(&functor.on_morphism(&self.cat, &po.left)?, a.structure())?;
        let right = self.cat.compose(&functor.on_morphism(&self.cat, &po.right)?, b.structure())?;
        let gamma = match self.cat.mediate_pushout(&r1, &r2, &po, &left, &right) {
            Ok(g) => g,
            Err(CatError::NonCommuting(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        let coalgebra = Coalgebra::new(&self.cat, functor.clone(), gamma)?;
        let pb = self.cat.pullback(&po.left, &po.right)?;
        let relation = self.rel.from_span(&pb.left, &pb.right)?;
        Ok(Some(Closure { relation, coalgebra, f: po.left, g: po.right }))
    }

    pub fn is_behavioural_equivalence(&self, r: &Relation<C>, a: &Coalgebra<C>, b: &Coalgebra<C>) -> Result<WitnessReport<C>> {
        let closure = self.behavioural_closure(r, a, b)?;
        let mut report = WitnessReport::new(BisimKind::Behavioural, false);
        match closure {
            None => report.notes.push("the pushout of the tabulation carries no compatible coalgebra".into()),
            Some(c) => {
                report.verdict = c.relation == *r;
                if !report.verdict {
                    report.notes.push("the induced cospan relates strictly more pairs".into());
                    if let Some(extra) = self.extra_pairs(&c.relation, r) {
                        report.failing_pairs = extra;
                    }
                }
                report.witness = Some(Witness::Cospan {
                    gamma: c.coalgebra.structure().clone(),
                    f: c.f,
                    g: c.g,
                    closure: c.relation,
                });
            }
        }
        Ok(report)
    }

    fn extra_pairs(&self, big: &Relation<C>, small: &Relation<C>) -> Option<Vec<String>> {
        let b = self.cat.element_function(big.mono())?.values().ok()?;
        let s = self.cat.element_function(small.mono())?.values().ok()?;
        Some(b.iter().filter(|e| !s.contains(e)).map(Elem::to_string).collect())
    }

    /// Checks the composite of two relations; the result is guaranteed to be
    /// a regular AM bisimulation when both are and the functor covers
    /// pullbacks.
    pub fn compose_bisimulations(
        &self,
        r1: &Relation<C>,
        r2: &Relation<C>,
        a: &Coalgebra<C>,
        b: &Coalgebra<C>,
        c: &Coalgebra<C>,
    ) -> Result<WitnessReport<C>> {
        self.check(r1, a, b)?;
        self.check(r2, b, c)?;
        let composite = self.rel.compose(r1, r2)?;
        let mut report = self.is_regular_am(&composite, a, c)?;
        if !a.functor().flags(&self.cat).covers_pullbacks {
            report.notes.push(format!("{} is not known to cover pullbacks; composites need not be bisimulations", a.functor().name()));
        }
        Ok(report)
    }

    /// `(is_coalgebra_hom(f), graph(f) is an AM bisimulation)`.
    pub fn graph_bisim_iff_hom(&self, f: &C::Mor, a: &Coalgebra<C>, b: &Coalgebra<C>) -> Result<(bool, bool)> {
        let hom = is_coalgebra_hom(&self.cat, f, a, b)?;
        let graph = self.rel.graph(f)?;
        Ok((hom, self.am_witness(&graph, a, b)?.is_some()))
    }

    /// The largest regular AM bisimulation between `a` and `b`.
    pub fn bisimilarity(&self, a: &Coalgebra<C>, b: &Coalgebra<C>) -> Result<Relation<C>> {
        same_functor(a.functor(), b.functor())?;
        let full = self.rel.full(a.carrier(), b.carrier())?;
        match self.elem_view(&full, a, b) {
            Some(view) => self.bisimilarity_elements(a, b, view),
            None => self.bisimilarity_categorical(a, b),
        }
    }

    fn bisimilarity_elements(&self, a: &Coalgebra<C>, b: &Coalgebra<C>, mut view: ElemView) -> Result<Relation<C>> {
        loop {
            let dead = self.empty_fibers(&view)?;
            if dead.is_empty() {
                break;
            }
            let keep: Vec<usize> = (0..view.targets.len()).filter(|&i| dead.binary_search(&view.span.elements()[i]).is_err()).collect();
            let elems: Vec<Elem> = keep.iter().map(|&i| view.span.elements()[i].clone()).collect();
            let xs = keep.iter().map(|&i| view.span.project(0, &view.span.elements()[i])).collect();
            let ys = keep.iter().map(|&i| view.span.project(1, &view.span.elements()[i])).collect();
            let targets = keep.iter().map(|&i| view.targets[i].clone()).collect();
            view = ElemView { shape: view.shape, span: ElemSpan::new(elems, vec![xs, ys]), targets };
        }
        let prod = self.cat.product(a.carrier(), b.carrier())?;
        let m = self
            .cat
            .element_inclusion(&prod.apex, view.span.elements().to_vec())
            .ok_or_else(|| CatError::Unsupported("backend has no element inclusions".into()))??;
        self.rel.from_mono(a.carrier(), b.carrier(), &m)
    }

    /// Greatest fixpoint by repeatedly replacing `R` with the image of the
    /// maximal witness's projection to `R`.
    pub fn bisimilarity_categorical(&self, a: &Coalgebra<C>, b: &Coalgebra<C>) -> Result<Relation<C>> {
        same_functor(a.functor(), b.functor())?;
        let mut r = self.rel.full(a.carrier(), b.carrier())?;
        loop {
            let w = self.max_witness_categorical(&r, a, b)?;
            let (_, to_r) = self.rel.legs(&w)?;
            let next = self.rel.from_mono(a.carrier(), b.carrier(), &self.cat.factorize(&self.cat.compose(r.mono(), &to_r)?)?.mono)?;
            if next == r {
                return Ok(r);
            }
            r = next;
        }
    }

    /// Whether the comparison `F(A ×_C B) → F A ×_{F C} F B` is a regular epi
    /// for the cospan `f: A → C ← B: g`.
    pub fn check_covers_pullbacks_instance(&self, functor: &FunctorHandle<C>, f: &C::Mor, g: &C::Mor) -> Result<bool> {
        let pb = self.cat.pullback(f, g)?;
        let ff = functor.on_morphism(&self.cat, f)?;
        let fg = functor.on_morphism(&self.cat, g)?;
        let fpb = self.cat.pullback(&ff, &fg)?;
        let left = functor.on_morphism(&self.cat, &pb.left)?;
        let right = functor.on_morphism(&self.cat, &pb.right)?;
        let u = self.cat.mediate_pullback(&ff, &fg, &fpb, &left, &right)?;
        self.cat.is_regular_epi(&u)
    }
}
