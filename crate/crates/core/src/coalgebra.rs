//! Coalgebras `α: X → F X` and their homomorphisms.

use std::fmt;
use std::sync::Arc;

use crate::category::{CatError, RegularCategory, Result};
use crate::elem::Elem;
use crate::element::ElementCategory;
use crate::functor::{same_functor, FunctorHandle, LinearFunctor, ShapeFunctor};
use crate::linalg::Matrix;
use crate::vect::Vect;

#[derive(Clone)]
pub struct Coalgebra<C: RegularCategory> {
    functor: FunctorHandle<C>,
    carrier: C::Obj,
    structure: C::Mor,
}

impl<C: RegularCategory> Coalgebra<C> {
    /// Checks that `structure` goes from its carrier to `F` of it.
    pub fn new(cat: &C, functor: FunctorHandle<C>, structure: C::Mor) -> Result<Coalgebra<C>> {
        let carrier = cat.source(&structure).clone();
        let fx = functor.on_object(cat, &carrier)?;
        if *cat.target(&structure) != fx {
            return Err(CatError::Endpoint(format!(
                "structure map targets {:?}, expected {} applied to the carrier",
                cat.target(&structure),
                functor.name()
            )));
        }
        Ok(Coalgebra { functor, carrier, structure })
    }

    pub fn functor(&self) -> &FunctorHandle<C> {
        &self.functor
    }

    pub fn carrier(&self) -> &C::Obj {
        &self.carrier
    }

    pub fn structure(&self) -> &C::Mor {
        &self.structure
    }
}

impl<C: RegularCategory> fmt::Debug for Coalgebra<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coalgebra[{}]({:?})", self.functor.name(), self.structure)
    }
}

impl<C: ElementCategory> Coalgebra<C> {
    /// A coalgebra given by its structure function on elements.
    pub fn from_fn(
        cat: &C,
        functor: FunctorHandle<C>,
        carrier: &C::Obj,
        f: impl Fn(&Elem) -> Elem + Send + Sync + 'static,
    ) -> Result<Coalgebra<C>> {
        let fx = functor.on_object(cat, carrier)?;
        let structure = cat.morphism_from_fn(carrier, &fx, f)?;
        Coalgebra::new(cat, functor, structure)
    }

    /// A labelled transition system as a `pow_labels(Σ)` coalgebra:
    /// `α(s) = {(a, t) : s -a-> t}`.
    pub fn lts(cat: &C, carrier: &C::Obj, labels: &[Elem], transitions: &[(Elem, Elem, Elem)]) -> Result<Coalgebra<C>> {
        let states = cat.carrier(carrier);
        let mut succ: std::collections::BTreeMap<Elem, Vec<Elem>> = std::collections::BTreeMap::new();
        for (i, (s, a, t)) in transitions.iter().enumerate() {
            if !states.contains(s) || !states.contains(t) {
                return Err(CatError::Invalid(format!("transition {i} mentions a state outside the carrier")));
            }
            if !labels.contains(a) {
                return Err(CatError::Invalid(format!("transition {i} uses unknown label {a}")));
            }
            succ.entry(s.clone()).or_default().push(Elem::pair(a.clone(), t.clone()));
        }
        let succ: std::collections::BTreeMap<Elem, Elem> = succ.into_iter().map(|(s, v)| (s, Elem::set(v))).collect();
        let functor: FunctorHandle<C> = Arc::new(ShapeFunctor::pow_labels(labels));
        Coalgebra::from_fn(cat, functor, carrier, move |s| succ.get(s).cloned().unwrap_or_else(Elem::empty_set))
    }

    /// `α(x)` on elements.
    pub fn step(&self, cat: &C, x: &Elem) -> Elem {
        cat.underlying(&self.structure).apply(x)
    }
}

impl Coalgebra<Vect> {
    /// A weighted automaton over ℤ_p as a `linear(A)` coalgebra. States are
    /// basis vectors; `output[x]` is the weight of state `x` and row `x` of
    /// `matrices[a]` lists the `a`-successors of `x` with their weights.
    pub fn weighted(cat: &Vect, alphabet: Vec<Elem>, output: &[u32], matrices: &[Matrix]) -> Result<Coalgebra<Vect>> {
        let n = output.len();
        if matrices.len() != alphabet.len() {
            return Err(CatError::Invalid(format!("{} matrices for {} letters", matrices.len(), alphabet.len())));
        }
        if let Some(m) = matrices.iter().find(|m| m.rows() != n || m.cols() != n || m.prime() != cat.prime()) {
            return Err(CatError::Invalid(format!("transition matrix {m:?} is not {n}x{n} over Z{}", cat.prime())));
        }
        let out = Matrix::from_rows(cat.prime(), n, &[output.to_vec()])?;
        let mut alpha = out;
        for m in matrices {
            alpha = alpha.vstack(&m.transpose());
        }
        let functor = LinearFunctor::new(alphabet);
        let x = cat.space(n);
        let fx = cat.space(1 + matrices.len() * n);
        Coalgebra::new(cat, functor.handle(), cat.morphism(x, fx, alpha)?)
    }

    /// The output weights and transition matrices (row convention).
    pub fn weighted_parts(&self) -> (Vec<u32>, Vec<Matrix>) {
        let m = self.structure.matrix();
        let n = m.cols();
        let k = (m.rows() - 1).checked_div(n).unwrap_or(0);
        let output = m.row(0);
        let matrices = (0..k).map(|a| m.slice_rows(1 + a * n, 1 + (a + 1) * n).transpose()).collect();
        (output, matrices)
    }
}

/// Whether `F f ∘ α = β ∘ f`.
pub fn is_coalgebra_hom<C: RegularCategory>(cat: &C, f: &C::Mor, a: &Coalgebra<C>, b: &Coalgebra<C>) -> Result<bool> {
    same_functor(&a.functor, &b.functor)?;
    if cat.source(f) != &a.carrier || cat.target(f) != &b.carrier {
        return Err(CatError::Endpoint("morphism does not go between the carriers".into()));
    }
    let ff = a.functor.on_morphism(cat, f)?;
    Ok(cat.compose(&ff, &a.structure)? == cat.compose(&b.structure, f)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elem::atoms;
    use crate::finset::{FinSet, FinSetMor, FinSetObj};

    #[test]
    fn lts_structure_and_homs() {
        let la = [Elem::atom("a")];
        let x = FinSetObj::explicit(atoms("s", 2));
        let one = FinSetObj::explicit(atoms("t", 1));
        let s = atoms("s", 2);
        let t = atoms("t", 1);
        let cycle = Coalgebra::lts(&FinSet, &x, &la, &[(s[0].clone(), la[0].clone(), s[1].clone()), (s[1].clone(), la[0].clone(), s[0].clone())]).unwrap();
        let lp = Coalgebra::lts(&FinSet, &one, &la, &[(t[0].clone(), la[0].clone(), t[0].clone())]).unwrap();
        assert_eq!(cycle.step(&FinSet, &s[0]), Elem::parse("{(a,s1)}").unwrap());
        let collapse = FinSetMor::from_fn(&x, &one, |_| Elem::atom("t0")).unwrap();
        assert!(is_coalgebra_hom(&FinSet, &collapse, &cycle, &lp).unwrap());
        assert!(is_coalgebra_hom(&FinSet, &FinSet.identity(&x), &cycle, &cycle).unwrap());
        let dead = Coalgebra::lts(&FinSet, &one, &la, &[]).unwrap();
        assert!(!is_coalgebra_hom(&FinSet, &collapse, &cycle, &dead).unwrap());
    }

    #[test]
    fn weighted_automaton_roundtrip() {
        let c = Vect::new(3).unwrap();
        let m = Matrix::from_rows(3, 2, &[vec![0, 1], vec![2, 0]]).unwrap();
        let w = Coalgebra::weighted(&c, vec![Elem::atom("a")], &[1, 2], std::slice::from_ref(&m)).unwrap();
        let (out, ms) = w.weighted_parts();
        assert_eq!(out, vec![1, 2]);
        assert_eq!(ms, vec![m]);
    }
}
