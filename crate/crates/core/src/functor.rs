//! Endofunctors on the backends.

use std::fmt;
use std::sync::Arc;

use crate::category::{CatError, RegularCategory, Result};
use crate::elem::Elem;
use crate::element::ElementCategory;
use crate::linalg::Matrix;
use crate::shape::Shape;
use crate::vect::{Vect, VectMor, VectObj};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct FunctorFlags {
    pub preserves_weak_pullbacks: bool,
    pub covers_pullbacks: bool,
    /// Elements of `F X` can be listed and compared (element backends).
    pub element_enumerable: bool,
}

pub trait Endofunctor<C: RegularCategory>: fmt::Debug + Send + Sync {
    /// Identifies the functor; coalgebras are compatible when names agree.
    fn name(&self) -> String;
    fn flags(&self, cat: &C) -> FunctorFlags;
    fn on_object(&self, cat: &C, x: &C::Obj) -> Result<C::Obj>;
    fn on_morphism(&self, cat: &C, f: &C::Mor) -> Result<C::Mor>;
    /// Element-level description, for functors on element backends.
    fn shape(&self) -> Option<&Shape> {
        None
    }
}

pub type FunctorHandle<C> = Arc<dyn Endofunctor<C>>;

pub fn same_functor<C: RegularCategory>(a: &FunctorHandle<C>, b: &FunctorHandle<C>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a.name() == b.name() {
        Ok(())
    } else {
        Err(CatError::Functor(format!("{} differs from {}", a.name(), b.name())))
    }
}

/// A functor on finite sets or G-sets described by a [`Shape`].
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeFunctor {
    shape: Shape,
    name: String,
}

impl ShapeFunctor {
    pub fn new(shape: Shape) -> ShapeFunctor {
        ShapeFunctor { name: shape.to_string(), shape }
    }

    pub fn named(name: &str, shape: Shape) -> ShapeFunctor {
        ShapeFunctor { name: name.to_string(), shape }
    }

    /// `X ↦ 𝒫(Σ × X)`: labelled transition systems.
    pub fn pow_labels(labels: &[Elem]) -> ShapeFunctor {
        ShapeFunctor::named(&format!("pow_labels{}", Elem::set(labels.iter().cloned())), Shape::pow_labels(labels))
    }

    /// `X ↦ X^Σ`: deterministic automata without output.
    pub fn det(labels: &[Elem]) -> ShapeFunctor {
        ShapeFunctor::named(&format!("det{}", Elem::tuple(labels.to_vec())), Shape::det(labels))
    }

    pub fn upair() -> ShapeFunctor {
        ShapeFunctor::named("upair", Shape::upair())
    }

    pub fn pow() -> ShapeFunctor {
        ShapeFunctor::named("pow", Shape::pow())
    }

    pub fn shape_ref(&self) -> &Shape {
        &self.shape
    }

    pub fn handle<C: ElementCategory>(self) -> FunctorHandle<C> {
        Arc::new(self)
    }
}

impl<C: ElementCategory> Endofunctor<C> for ShapeFunctor {
    fn name(&self) -> String {
        self.name.clone()
    }

    /// Every shape preserves weak pullbacks of finite sets (powerset,
    /// products, exponentials, constants and symmetric squares all do).
    /// Covering pullbacks only concerns surjectivity of the comparison map,
    /// which G-sets inherit from sets; weak-pullback preservation does not
    /// transfer, because the comparison map need not split equivariantly.
    fn flags(&self, cat: &C) -> FunctorFlags {
        FunctorFlags {
            preserves_weak_pullbacks: cat.backend_name() == "finset",
            covers_pullbacks: true,
            element_enumerable: true,
        }
    }

    fn on_object(&self, cat: &C, x: &C::Obj) -> Result<C::Obj> {
        Ok(cat.apply_shape(&self.shape, x))
    }

    fn on_morphism(&self, cat: &C, f: &C::Mor) -> Result<C::Mor> {
        cat.lift_shape(&self.shape, f)
    }

    fn shape(&self) -> Option<&Shape> {
        Some(&self.shape)
    }
}

/// The identity functor on any backend.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdentityFunctor;

impl<C: RegularCategory> Endofunctor<C> for IdentityFunctor {
    fn name(&self) -> String {
        "identity".into()
    }

    fn flags(&self, cat: &C) -> FunctorFlags {
        FunctorFlags {
            preserves_weak_pullbacks: true,
            covers_pullbacks: true,
            element_enumerable: cat.backend_name() != "vect",
        }
    }

    fn on_object(&self, _cat: &C, x: &C::Obj) -> Result<C::Obj> {
        Ok(x.clone())
    }

    fn on_morphism(&self, _cat: &C, f: &C::Mor) -> Result<C::Mor> {
        Ok(f.clone())
    }

    fn shape(&self) -> Option<&Shape> {
        static ID: Shape = Shape::Id;
        Some(&ID)
    }
}

/// `X ↦ K × X^A` on vector spaces: linear weighted automata with one output
/// weight per state and one transition matrix per letter. `F X` has
/// coordinates `(out, x_a1, …, x_ak)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearFunctor {
    alphabet: Vec<Elem>,
}

impl LinearFunctor {
    pub fn new(alphabet: Vec<Elem>) -> LinearFunctor {
        LinearFunctor { alphabet }
    }

    pub fn alphabet(&self) -> &[Elem] {
        &self.alphabet
    }

    pub fn handle(self) -> FunctorHandle<Vect> {
        Arc::new(self)
    }
}

impl Endofunctor<Vect> for LinearFunctor {
    fn name(&self) -> String {
        format!("linear{}", Elem::tuple(self.alphabet.clone()))
    }

    fn flags(&self, _cat: &Vect) -> FunctorFlags {
        FunctorFlags { preserves_weak_pullbacks: true, covers_pullbacks: true, element_enumerable: false }
    }

    fn on_object(&self, cat: &Vect, x: &VectObj) -> Result<VectObj> {
        Ok(cat.space(1 + self.alphabet.len() * x.dim()))
    }

    fn on_morphism(&self, cat: &Vect, f: &VectMor) -> Result<VectMor> {
        let one = Matrix::identity(cat.prime(), 1);
        let mut blocks = vec![&one];
        blocks.extend(std::iter::repeat_n(f.matrix(), self.alphabet.len()));
        let m = Matrix::block_diag(&blocks, cat.prime());
        cat.morphism(self.on_object(cat, &f.source())?, self.on_object(cat, &f.target())?, m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::{FinSet, FinSetMor, FinSetObj};

    #[test]
    fn shape_functor_preserves_identities_and_composition() {
        let f = ShapeFunctor::pow_labels(&[Elem::atom("a")]);
        let x = FinSetObj::explicit(crate::elem::atoms("x", 2));
        let y = FinSetObj::explicit(crate::elem::atoms("y", 1));
        let id = FinSet.identity(&x);
        assert_eq!(Endofunctor::<FinSet>::on_morphism(&f, &FinSet, &id).unwrap(), FinSet.identity(&FinSet.apply_shape(f.shape_ref(), &x)));
        let g = FinSetMor::from_fn(&x, &y, |_| Elem::atom("y0")).unwrap();
        let h = FinSet.identity(&y);
        let lhs = f.on_morphism(&FinSet, &FinSet.compose(&h, &g).unwrap()).unwrap();
        let rhs = FinSet.compose(&f.on_morphism(&FinSet, &h).unwrap(), &f.on_morphism(&FinSet, &g).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn linear_functor_dimensions() {
        let c = Vect::new(3).unwrap();
        let f = LinearFunctor::new(vec![Elem::atom("a"), Elem::atom("b")]);
        assert_eq!(f.on_object(&c, &c.space(2)).unwrap().dim(), 5);
        let id = c.identity(&c.space(2));
        assert_eq!(f.on_morphism(&c, &id).unwrap(), c.identity(&c.space(5)));
    }
}
