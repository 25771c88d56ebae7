//! The regular-category capability interface shared by every backend.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CatError {
    #[error("cannot compose: {0}")]
    Composition(String),
    #[error("endpoint mismatch: {0}")]
    Endpoint(String),
    #[error("backend mismatch: {0}")]
    Backend(String),
    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),
    #[error("cone does not commute: {0}")]
    NonCommuting(String),
    #[error("unsupported capability: {0}")]
    Unsupported(String),
    #[error("functor mismatch: {0}")]
    Functor(String),
    #[error("invalid data: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, CatError>;

/// Binary product with its projections.
#[derive(Debug, Clone)]
pub struct Product<C: RegularCategory> {
    pub apex: C::Obj,
    pub p1: C::Mor,
    pub p2: C::Mor,
}

/// Pullback of a cospan `f: A → C ← B: g`; `left: apex → A`, `right: apex → B`.
#[derive(Debug, Clone)]
pub struct PullbackResult<C: RegularCategory> {
    pub apex: C::Obj,
    pub left: C::Mor,
    pub right: C::Mor,
}

/// Pushout of a span `f: C → A`, `g: C → B`; `left: A → apex`, `right: B → apex`.
#[derive(Debug, Clone)]
pub struct PushoutResult<C: RegularCategory> {
    pub apex: C::Obj,
    pub left: C::Mor,
    pub right: C::Mor,
}

/// `f = mono ∘ epi`, with `epi` a regular epi onto the canonical image.
#[derive(Debug, Clone)]
pub struct Factorization<C: RegularCategory> {
    pub epi: C::Mor,
    pub mono: C::Mor,
}

/// A finitely complete category with pushouts and pullback-stable
/// (regular epi, mono)-factorizations, presented concretely.
///
/// Images returned by [`RegularCategory::factorize`] are canonical: two monos
/// representing the same subobject have equal `mono` parts after
/// factorization. Relations rely on this to compare subobjects by value.
pub trait RegularCategory: Clone + fmt::Debug + Send + Sync {
    type Obj: Clone + PartialEq + fmt::Debug + Send + Sync;
    type Mor: Clone + PartialEq + fmt::Debug + Send + Sync;

    /// Short backend tag (`finset`, `gset`, `vect`).
    fn backend_name(&self) -> &'static str;

    fn source<'a>(&self, f: &'a Self::Mor) -> &'a Self::Obj;
    fn target<'a>(&self, f: &'a Self::Mor) -> &'a Self::Obj;

    fn identity(&self, x: &Self::Obj) -> Self::Mor;
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor>;

    fn terminal(&self) -> Self::Obj;
    fn initial(&self) -> Self::Obj;
    /// The unique morphism out of the initial object.
    fn initial_morphism(&self, x: &Self::Obj) -> Result<Self::Mor>;

    fn product(&self, x: &Self::Obj, y: &Self::Obj) -> Result<Product<Self>>;
    /// `⟨f, g⟩ : S → T1 × T2`.
    fn pair(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>;

    fn pullback(&self, f: &Self::Mor, g: &Self::Mor) -> Result<PullbackResult<Self>>;
    fn pushout(&self, f: &Self::Mor, g: &Self::Mor) -> Result<PushoutResult<Self>>;

    /// The unique `u: W → apex` with `left∘u = a` and `right∘u = b`.
    fn mediate_pullback(
        &self,
        f: &Self::Mor,
        g: &Self::Mor,
        pb: &PullbackResult<Self>,
        a: &Self::Mor,
        b: &Self::Mor,
    ) -> Result<Self::Mor>;

    /// The unique `u: apex → W` with `u∘left = a` and `u∘right = b`.
    fn mediate_pushout(
        &self,
        f: &Self::Mor,
        g: &Self::Mor,
        po: &PushoutResult<Self>,
        a: &Self::Mor,
        b: &Self::Mor,
    ) -> Result<Self::Mor>;

    fn factorize(&self, f: &Self::Mor) -> Result<Factorization<Self>>;
    fn is_mono(&self, f: &Self::Mor) -> Result<bool>;
    fn is_regular_epi(&self, f: &Self::Mor) -> Result<bool>;

    /// Some `u` with `through ∘ u = h`, chosen deterministically, or `None`.
    fn solve_factorization(&self, h: &Self::Mor, through: &Self::Mor) -> Result<Option<Self::Mor>>;

    /// Human-readable description of what `f` misses in its target (empty when
    /// `f` is a regular epi).
    fn uncovered(&self, f: &Self::Mor) -> Result<Vec<String>>;

    fn is_iso(&self, f: &Self::Mor) -> Result<bool> {
        Ok(self.is_mono(f)? && self.is_regular_epi(f)?)
    }

    /// `f × g : A × B → C × D`.
    fn parallel(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor> {
        let p = self.product(self.source(f), self.source(g))?;
        let left = self.compose(f, &p.p1)?;
        let right = self.compose(g, &p.p2)?;
        self.pair(&left, &right)
    }

    /// The coordinate swap `⟨π2, π1⟩ : X × Y → Y × X`.
    fn swap(&self, x: &Self::Obj, y: &Self::Obj) -> Result<Self::Mor> {
        let p = self.product(x, y)?;
        self.pair(&p.p2, &p.p1)
    }

    fn check_composable(&self, g: &Self::Mor, f: &Self::Mor) -> Result<()> {
        if self.target(f) != self.source(g) {
            return Err(CatError::Composition(format!(
                "target {:?} differs from source {:?}",
                self.target(f),
                self.source(g)
            )));
        }
        Ok(())
    }
}
