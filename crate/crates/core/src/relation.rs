//! The allegory of relations over a regular category.
//!
//! A relation `X ↛ Y` is a subobject of `X × Y`, stored as the canonical
//! mono produced by image factorization, so two relations are equal exactly
//! when they are the same subobject.

use std::fmt;

use crate::category::{CatError, RegularCategory, Result};
use crate::elem::Elem;
use crate::element::ElementCategory;
use crate::linalg::Matrix;
use crate::vect::Vect;

#[derive(Clone)]
pub struct Relation<C: RegularCategory> {
    dom: C::Obj,
    cod: C::Obj,
    mono: C::Mor,
}

impl<C: RegularCategory> Relation<C> {
    pub fn dom(&self) -> &C::Obj {
        &self.dom
    }

    pub fn cod(&self) -> &C::Obj {
        &self.cod
    }

    /// The canonical mono `R ↣ dom × cod`.
    pub fn mono(&self) -> &C::Mor {
        &self.mono
    }
}

impl<C: RegularCategory> PartialEq for Relation<C> {
    fn eq(&self, other: &Self) -> bool {
        self.dom == other.dom && self.cod == other.cod && self.mono == other.mono
    }
}

impl<C: RegularCategory> fmt::Debug for Relation<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation({:?})", self.mono)
    }
}

/// A jointly monic span presenting a relation.
#[derive(Clone, Debug)]
pub struct Tabulation<C: RegularCategory> {
    pub leg_f: C::Mor,
    pub leg_g: C::Mor,
}

/// Relation operations over one backend.
#[derive(Clone, Debug)]
pub struct Rel<C: RegularCategory> {
    cat: C,
}

impl<C: RegularCategory> Rel<C> {
    pub fn new(cat: C) -> Self {
        Rel { cat }
    }

    pub fn cat(&self) -> &C {
        &self.cat
    }

    /// The relation represented by a mono into `dom × cod` (canonicalized).
    pub fn from_mono(&self, dom: &C::Obj, cod: &C::Obj, m: &C::Mor) -> Result<Relation<C>> {
        if !self.cat.is_mono(m)? {
            return Err(CatError::Invalid("a relation must be represented by a mono".into()));
        }
        self.image(dom, cod, m)
    }

    fn image(&self, dom: &C::Obj, cod: &C::Obj, m: &C::Mor) -> Result<Relation<C>> {
        let p = self.cat.product(dom, cod)?;
        if *self.cat.target(m) != p.apex {
            return Err(CatError::Endpoint(format!("mono target {:?} is not {:?} x {:?}", self.cat.target(m), dom, cod)));
        }
        let mono = self.cat.factorize(m)?.mono;
        Ok(Relation { dom: dom.clone(), cod: cod.clone(), mono })
    }

    /// The image of `⟨f, g⟩` for a span `X ← Z → Y`.
    pub fn from_span(&self, f: &C::Mor, g: &C::Mor) -> Result<Relation<C>> {
        let m = self.cat.pair(f, g)?;
        self.image(self.cat.target(f), self.cat.target(g), &m)
    }

    pub fn apex<'a>(&self, r: &'a Relation<C>) -> &'a C::Obj {
        self.cat.source(&r.mono)
    }

    /// `π1 ∘ m_r` and `π2 ∘ m_r`.
    pub fn legs(&self, r: &Relation<C>) -> Result<(C::Mor, C::Mor)> {
        let p = self.cat.product(&r.dom, &r.cod)?;
        Ok((self.cat.compose(&p.p1, &r.mono)?, self.cat.compose(&p.p2, &r.mono)?))
    }

    pub fn identity(&self, x: &C::Obj) -> Result<Relation<C>> {
        let id = self.cat.identity(x);
        self.from_span(&id, &id)
    }

    pub fn empty(&self, x: &C::Obj, y: &C::Obj) -> Result<Relation<C>> {
        let p = self.cat.product(x, y)?;
        let m = self.cat.initial_morphism(&p.apex)?;
        self.image(x, y, &m)
    }

    pub fn full(&self, x: &C::Obj, y: &C::Obj) -> Result<Relation<C>> {
        let p = self.cat.product(x, y)?;
        self.image(x, y, &self.cat.identity(&p.apex))
    }

    /// `r ; s` (first `r`, then `s`).
    pub fn compose(&self, r: &Relation<C>, s: &Relation<C>) -> Result<Relation<C>> {
        if r.cod != s.dom {
            return Err(CatError::Endpoint("relation codomain and domain differ".into()));
        }
        let (r1, r2) = self.legs(r)?;
        let (s1, s2) = self.legs(s)?;
        let pb = self.cat.pullback(&r2, &s1)?;
        let left = self.cat.compose(&r1, &pb.left)?;
        let right = self.cat.compose(&s2, &pb.right)?;
        self.from_span(&left, &right)
    }

    pub fn dagger(&self, r: &Relation<C>) -> Result<Relation<C>> {
        let (r1, r2) = self.legs(r)?;
        self.from_span(&r2, &r1)
    }

    pub fn meet(&self, r: &Relation<C>, s: &Relation<C>) -> Result<Relation<C>> {
        self.check_parallel(r, s)?;
        let pb = self.cat.pullback(&r.mono, &s.mono)?;
        let m = self.cat.compose(&r.mono, &pb.left)?;
        self.image(&r.dom, &r.cod, &m)
    }

    /// The subobject order `r ⊑ s`.
    pub fn leq(&self, r: &Relation<C>, s: &Relation<C>) -> Result<bool> {
        self.check_parallel(r, s)?;
        Ok(self.cat.solve_factorization(&r.mono, &s.mono)?.is_some())
    }

    fn check_parallel(&self, r: &Relation<C>, s: &Relation<C>) -> Result<()> {
        if r.dom != s.dom || r.cod != s.cod {
            return Err(CatError::Endpoint("relations have different endpoints".into()));
        }
        Ok(())
    }

    /// `⟨id, f⟩`.
    pub fn graph(&self, f: &C::Mor) -> Result<Relation<C>> {
        self.from_span(&self.cat.identity(self.cat.source(f)), f)
    }

    /// `⟨f, id⟩`, the converse of the graph.
    pub fn cograph(&self, f: &C::Mor) -> Result<Relation<C>> {
        self.from_span(f, &self.cat.identity(self.cat.source(f)))
    }

    /// The morphism `f` with `r = graph(f)`, when there is one.
    pub fn as_map(&self, r: &Relation<C>) -> Result<Option<C::Mor>> {
        let (r1, r2) = self.legs(r)?;
        if !self.cat.is_iso(&r1)? {
            return Ok(None);
        }
        let inverse = self
            .cat
            .solve_factorization(&self.cat.identity(&r.dom), &r1)?
            .ok_or_else(|| CatError::Invalid("iso without inverse".into()))?;
        Ok(Some(self.cat.compose(&r2, &inverse)?))
    }

    pub fn tabulate(&self, r: &Relation<C>) -> Result<Tabulation<C>> {
        let (leg_f, leg_g) = self.legs(r)?;
        Ok(Tabulation { leg_f, leg_g })
    }

    /// `graph(leg_f)† ; graph(leg_g)`.
    pub fn recompose(&self, t: &Tabulation<C>) -> Result<Relation<C>> {
        let left = self.dagger(&self.graph(&t.leg_f)?)?;
        self.compose(&left, &self.graph(&t.leg_g)?)
    }

    /// `(r;s) ∩ t ⊑ (r ∩ (t;s†)); s` for `r: X ↛ Y`, `s: Y ↛ Z`, `t: X ↛ Z`.
    pub fn check_modular_law(&self, r: &Relation<C>, s: &Relation<C>, t: &Relation<C>) -> Result<bool> {
        let lhs = self.meet(&self.compose(r, s)?, t)?;
        let inner = self.meet(r, &self.compose(t, &self.dagger(s)?)?)?;
        let rhs = self.compose(&inner, s)?;
        self.leq(&lhs, &rhs)
    }
}

impl<C: ElementCategory> Rel<C> {
    /// The relation with exactly the given pairs. On G-sets the pair set must
    /// be closed under the diagonal action.
    pub fn from_pairs(&self, dom: &C::Obj, cod: &C::Obj, pairs: &[(Elem, Elem)]) -> Result<Relation<C>> {
        let p = self.cat.product(dom, cod)?;
        let mut elems = Vec::with_capacity(pairs.len());
        for (x, y) in pairs {
            if !self.cat.carrier(dom).contains(x) || !self.cat.carrier(cod).contains(y) {
                return Err(CatError::Invalid(format!("pair ({x},{y}) is outside the carriers")));
            }
            elems.push(Elem::pair(x.clone(), y.clone()));
        }
        let m = self.cat.inclusion(&p.apex, elems)?;
        self.image(dom, cod, &m)
    }

    /// The pairs of the relation in canonical order.
    pub fn pairs(&self, r: &Relation<C>) -> Result<Vec<(Elem, Elem)>> {
        let values = self.cat.underlying(&r.mono).values()?;
        Ok(values
            .iter()
            .map(|e| {
                let (x, y) = e.as_pair().expect("relation elements are pairs");
                (x.clone(), y.clone())
            })
            .collect())
    }

    pub fn contains(&self, r: &Relation<C>, x: &Elem, y: &Elem) -> bool {
        self.cat.carrier(self.apex(r)).contains(&Elem::pair(x.clone(), y.clone()))
    }
}

impl Rel<Vect> {
    /// The relation spanned by the columns of `basis` in `dom ⊕ cod`.
    pub fn from_basis(&self, dom: &crate::vect::VectObj, cod: &crate::vect::VectObj, basis: &Matrix) -> Result<Relation<Vect>> {
        let canonical = basis.column_space();
        let apex = self.cat.space(canonical.cols());
        let m = self.cat.morphism(apex, self.cat.space(dom.dim() + cod.dim()), canonical)?;
        self.image(dom, cod, &m)
    }

    /// Canonical basis vectors (columns) of the subspace.
    pub fn basis<'a>(&self, r: &'a Relation<Vect>) -> &'a Matrix {
        r.mono.matrix()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::{FinSet, FinSetMor, FinSetObj};

    fn a(s: &str) -> Elem {
        Elem::atom(s)
    }

    fn set(names: &[&str]) -> FinSetObj {
        FinSetObj::explicit(names.iter().map(|n| a(n)))
    }

    fn pairs(ps: &[(&str, &str)]) -> Vec<(Elem, Elem)> {
        ps.iter().map(|(x, y)| (a(x), a(y))).collect()
    }

    #[test]
    fn diagonal_and_composition() {
        let rel = Rel::new(FinSet);
        let x = set(&["1", "2"]);
        let y = set(&["a"]);
        let z = set(&["u"]);
        assert_eq!(rel.pairs(&rel.identity(&x).unwrap()).unwrap(), pairs(&[("1", "1"), ("2", "2")]));
        let r = rel.from_pairs(&x, &y, &pairs(&[("1", "a"), ("2", "a")])).unwrap();
        let s = rel.from_pairs(&y, &z, &pairs(&[("a", "u")])).unwrap();
        let rs = rel.compose(&r, &s).unwrap();
        assert_eq!(rel.pairs(&rs).unwrap(), pairs(&[("1", "u"), ("2", "u")]));
        assert_eq!(rel.compose(&r, &rel.identity(&y).unwrap()).unwrap(), r);
        assert_eq!(rel.compose(&rel.identity(&x).unwrap(), &r).unwrap(), r);
    }

    #[test]
    fn dagger_meet_order() {
        let rel = Rel::new(FinSet);
        let x = set(&["1", "2"]);
        let y = set(&["a", "b"]);
        let r = rel.from_pairs(&x, &y, &pairs(&[("1", "a")])).unwrap();
        assert_eq!(rel.pairs(&rel.dagger(&r).unwrap()).unwrap(), pairs(&[("a", "1")]));
        let s = rel.from_pairs(&x, &y, &pairs(&[("1", "a"), ("2", "b")])).unwrap();
        assert_eq!(rel.meet(&s, &r).unwrap(), r);
        assert!(rel.leq(&r, &s).unwrap() && !rel.leq(&s, &r).unwrap());
        let e = rel.empty(&x, &y).unwrap();
        assert!(rel.leq(&e, &r).unwrap());
        assert_eq!(rel.meet(&r, &rel.full(&x, &y).unwrap()).unwrap(), r);
    }

    #[test]
    fn maps_and_tabulations() {
        let rel = Rel::new(FinSet);
        let x = set(&["1", "2"]);
        let y = set(&["a", "b"]);
        let f = FinSetMor::from_pairs(&x, &y, &pairs(&[("1", "a"), ("2", "a")])).unwrap();
        let g = rel.graph(&f).unwrap();
        assert_eq!(rel.as_map(&g).unwrap(), Some(f.clone()));
        assert_eq!(rel.cograph(&f).unwrap(), rel.dagger(&g).unwrap());
        let multi = rel.from_pairs(&x, &y, &pairs(&[("1", "a"), ("1", "b"), ("2", "a")])).unwrap();
        assert_eq!(rel.as_map(&multi).unwrap(), None);
        let partial = rel.from_pairs(&x, &y, &pairs(&[("1", "a")])).unwrap();
        assert_eq!(rel.as_map(&partial).unwrap(), None);
        let t = rel.tabulate(&g).unwrap();
        assert_eq!(rel.recompose(&t).unwrap(), g);
        assert_eq!(rel.graph(&FinSet.identity(&x)).unwrap(), rel.identity(&x).unwrap());
    }

    #[test]
    fn vector_relations() {
        let c = Vect::new(2).unwrap();
        let rel = Rel::new(c);
        let d = rel.identity(&c.space(2)).unwrap();
        assert_eq!(rel.basis(&d).cols(), 2);
        assert_eq!(rel.basis(&d).rows(), 4);
        let r = rel.full(&c.space(1), &c.space(1)).unwrap();
        assert!(rel.check_modular_law(&r, &r, &r).unwrap());
    }
}
