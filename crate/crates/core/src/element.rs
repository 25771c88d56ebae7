//! Backends whose objects are finite sets of [`Elem`]s with extra structure.

use crate::category::{RegularCategory, Result};
use crate::elem::Elem;
use crate::finset::{FinSet, FinSetMor, FinSetObj, Rule};
use crate::gset::{GSet, GSetMor, GSetObj};
use crate::vect::Vect;
use crate::shape::Shape;

/// A regular category whose objects have underlying finite sets and whose
/// morphisms are functions (finite sets, finite G-sets).
pub trait ElementCategory: RegularCategory {
    fn carrier<'a>(&self, x: &'a Self::Obj) -> &'a FinSetObj;
    fn underlying<'a>(&self, f: &'a Self::Mor) -> &'a FinSetMor;

    /// `F X` for the functor described by `shape`.
    fn apply_shape(&self, shape: &Shape, x: &Self::Obj) -> Self::Obj;
    /// `F f`.
    fn lift_shape(&self, shape: &Shape, f: &Self::Mor) -> Result<Self::Mor>;

    /// A morphism given by its underlying function, validated for the
    /// backend's structure (e.g. equivariance).
    fn morphism_from_fn(&self, src: &Self::Obj, tgt: &Self::Obj, f: impl Fn(&Elem) -> Elem + Send + Sync + 'static) -> Result<Self::Mor>;

    /// The inclusion of a sub-carrier, which must be closed under the
    /// structure.
    fn inclusion(&self, x: &Self::Obj, elems: Vec<Elem>) -> Result<Self::Mor>;

    /// The smallest structure-closed subset containing `elems`.
    fn closure(&self, x: &Self::Obj, elems: Vec<Elem>) -> Vec<Elem>;

    fn apply(&self, f: &Self::Mor, e: &Elem) -> Elem {
        self.underlying(f).apply(e)
    }
}

impl ElementCategory for FinSet {
    fn carrier<'a>(&self, x: &'a FinSetObj) -> &'a FinSetObj {
        x
    }

    fn underlying<'a>(&self, f: &'a FinSetMor) -> &'a FinSetMor {
        f
    }

    fn apply_shape(&self, shape: &Shape, x: &FinSetObj) -> FinSetObj {
        FinSetObj::applied(shape, x)
    }

    fn lift_shape(&self, shape: &Shape, f: &FinSetMor) -> Result<FinSetMor> {
        let src = FinSetObj::applied(shape, f.source());
        let tgt = FinSetObj::applied(shape, f.target());
        let (shape, rule) = (shape.clone(), f.as_rule());
        FinSetMor::from_fn(&src, &tgt, move |e| shape.map(e, &*rule))
    }

    fn morphism_from_fn(&self, src: &FinSetObj, tgt: &FinSetObj, f: impl Fn(&Elem) -> Elem + Send + Sync + 'static) -> Result<FinSetMor> {
        FinSetMor::from_fn(src, tgt, f)
    }

    fn inclusion(&self, x: &FinSetObj, elems: Vec<Elem>) -> Result<FinSetMor> {
        FinSetMor::from_fn(&FinSetObj::explicit(elems), x, |e| e.clone())
    }

    fn closure(&self, _x: &FinSetObj, mut elems: Vec<Elem>) -> Vec<Elem> {
        elems.sort();
        elems.dedup();
        elems
    }
}

/// Optional element-level access used by checkers to avoid materializing
/// large functor images. Non-element backends keep the defaults.
pub trait Backend: RegularCategory {
    fn element_carrier<'a>(&self, _x: &'a Self::Obj) -> Option<&'a FinSetObj> {
        None
    }

    fn element_function<'a>(&self, _f: &'a Self::Mor) -> Option<&'a FinSetMor> {
        None
    }

    /// Inclusion of a structure-closed sub-carrier.
    fn element_inclusion(&self, _x: &Self::Obj, _elems: Vec<Elem>) -> Option<Result<Self::Mor>> {
        None
    }

    fn element_morphism(&self, _src: &Self::Obj, _tgt: &Self::Obj, _f: Rule) -> Option<Result<Self::Mor>> {
        None
    }

    /// Order of the acting group (1 when there is no action).
    fn group_order(&self) -> usize {
        1
    }

    /// Action of group element `g` on an element of `x`.
    fn act(&self, _x: &Self::Obj, _g: usize, e: &Elem) -> Elem {
        e.clone()
    }

    /// Whether every object of `x`'s kind can be listed: true for element
    /// objects with explicit carriers and for all vector spaces.
    fn enumerable(&self, x: &Self::Obj) -> bool {
        self.element_carrier(x).is_none_or(FinSetObj::is_explicit)
    }
}

impl Backend for FinSet {
    fn element_carrier<'a>(&self, x: &'a FinSetObj) -> Option<&'a FinSetObj> {
        Some(x)
    }

    fn element_function<'a>(&self, f: &'a FinSetMor) -> Option<&'a FinSetMor> {
        Some(f)
    }

    fn element_inclusion(&self, x: &FinSetObj, elems: Vec<Elem>) -> Option<Result<FinSetMor>> {
        Some(self.inclusion(x, elems))
    }

    fn element_morphism(&self, src: &FinSetObj, tgt: &FinSetObj, f: Rule) -> Option<Result<FinSetMor>> {
        Some(FinSetMor::from_fn(src, tgt, move |e| f(e)))
    }
}

impl Backend for GSet {
    fn element_carrier<'a>(&self, x: &'a GSetObj) -> Option<&'a FinSetObj> {
        Some(x.carrier())
    }

    fn element_function<'a>(&self, f: &'a GSetMor) -> Option<&'a FinSetMor> {
        Some(f.underlying())
    }

    fn element_inclusion(&self, x: &GSetObj, elems: Vec<Elem>) -> Option<Result<GSetMor>> {
        Some(self.inclusion(x, elems))
    }

    fn element_morphism(&self, src: &GSetObj, tgt: &GSetObj, f: Rule) -> Option<Result<GSetMor>> {
        Some(self.morphism_from_fn(src, tgt, move |e| f(e)))
    }

    fn group_order(&self) -> usize {
        self.group().order()
    }

    fn act(&self, x: &GSetObj, g: usize, e: &Elem) -> Elem {
        x.act(g, e)
    }
}

impl Backend for Vect {}
