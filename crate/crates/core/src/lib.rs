//! Relations, bisimulations and simulations for coalgebras over concrete
//! finite regular categories.

pub mod bisim;
pub mod category;
pub mod coalgebra;
pub mod elem;
pub mod element;
pub mod finset;
pub mod functor;
pub mod group;
pub mod gset;
pub mod io;
pub mod laws;
pub mod linalg;
pub mod random;
pub mod relation;
pub mod shape;
pub mod simulation;
pub mod topos;
pub mod verify;
pub mod vect;

pub use bisim::{Bisim, BisimKind, Limits, Witness, WitnessReport};
pub use category::{CatError, Factorization, Product, PullbackResult, PushoutResult, RegularCategory, Result};
pub use coalgebra::{is_coalgebra_hom, Coalgebra};
pub use elem::Elem;
pub use element::{Backend, ElementCategory};
pub use finset::{FinSet, FinSetMor, FinSetObj};
pub use functor::{Endofunctor, FunctorFlags, FunctorHandle, IdentityFunctor, LinearFunctor, ShapeFunctor};
pub use group::FiniteGroup;
pub use gset::{GSet, GSetMor, GSetObj};
pub use linalg::Matrix;
pub use relation::{Rel, Relation, Tabulation};
pub use shape::Shape;
pub use topos::{DistLawReport, PowerObject, Topos};
pub use vect::{Vect, VectMor, VectObj};
