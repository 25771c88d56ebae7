//! Polynomial-style functor expressions over element carriers.
//!
//! A [`Shape`] describes an endofunctor on finite sets built from the
//! identity, constants, binary products, exponentials by a finite label set,
//! the covariant powerset and unordered pairs. The same expression acts on
//! finite G-sets (the action is transported through the functor).
//!
//! Besides the functor action, shapes answer *fiber* queries: given a span
//! `R → X_k` and a constraint on each `F X_k`, list the elements
//! `t ∈ F R` whose images satisfy the constraints. This is what the
//! element-level bisimulation and simulation checkers use instead of
//! materializing `F R`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::category::{CatError, Result};
use crate::elem::Elem;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Shape {
    Id,
    /// Constant functor on a fixed finite set (sorted).
    Const(Arc<[Elem]>),
    Prod(Box<Shape>, Box<Shape>),
    /// `X ↦ G(X)^Σ`, tuples indexed by the label order given here.
    Exp(Arc<[Elem]>, Box<Shape>),
    Pow(Box<Shape>),
    /// Unordered pairs `{a, b}` (with `a = b` allowed) of `G(X)`.
    UPair(Box<Shape>),
}

impl Shape {
    pub fn identity() -> Shape {
        Shape::Id
    }

    pub fn constant<I: IntoIterator<Item = Elem>>(values: I) -> Shape {
        let mut v: Vec<Elem> = values.into_iter().collect();
        v.sort();
        v.dedup();
        Shape::Const(v.into())
    }

    pub fn product(a: Shape, b: Shape) -> Shape {
        Shape::Prod(Box::new(a), Box::new(b))
    }

    pub fn exp(labels: Vec<Elem>, inner: Shape) -> Shape {
        Shape::Exp(labels.into(), Box::new(inner))
    }

    pub fn pow_of(inner: Shape) -> Shape {
        Shape::Pow(Box::new(inner))
    }

    pub fn upair_of(inner: Shape) -> Shape {
        Shape::UPair(Box::new(inner))
    }

    /// `X ↦ 𝒫(X)`.
    pub fn pow() -> Shape {
        Shape::pow_of(Shape::Id)
    }

    /// `X ↦ 𝒫(Σ × X)`: labelled transition systems.
    pub fn pow_labels(labels: &[Elem]) -> Shape {
        Shape::pow_of(Shape::product(Shape::constant(labels.iter().cloned()), Shape::Id))
    }

    /// `X ↦ X^Σ`: deterministic transition structure.
    pub fn det(labels: &[Elem]) -> Shape {
        Shape::exp(labels.to_vec(), Shape::Id)
    }

    /// `X ↦ X × X / swap`.
    pub fn upair() -> Shape {
        Shape::upair_of(Shape::Id)
    }

    /// Substitutes `inner` for every occurrence of the identity.
    pub fn compose(outer: &Shape, inner: &Shape) -> Shape {
        match outer {
            Shape::Id => inner.clone(),
            Shape::Const(k) => Shape::Const(k.clone()),
            Shape::Prod(a, b) => Shape::product(Shape::compose(a, inner), Shape::compose(b, inner)),
            Shape::Exp(l, a) => Shape::Exp(l.clone(), Box::new(Shape::compose(a, inner))),
            Shape::Pow(a) => Shape::pow_of(Shape::compose(a, inner)),
            Shape::UPair(a) => Shape::upair_of(Shape::compose(a, inner)),
        }
    }

    /// True if a powerset occurs anywhere in the expression.
    pub fn uses_powerset(&self) -> bool {
        match self {
            Shape::Id | Shape::Const(_) => false,
            Shape::Prod(a, b) => a.uses_powerset() || b.uses_powerset(),
            Shape::Exp(_, a) | Shape::UPair(a) => a.uses_powerset(),
            Shape::Pow(_) => true,
        }
    }

    /// `|F X|` for `|X| = n`, saturating.
    pub fn count(&self, n: u128) -> u128 {
        match self {
            Shape::Id => n,
            Shape::Const(k) => k.len() as u128,
            Shape::Prod(a, b) => a.count(n).saturating_mul(b.count(n)),
            Shape::Exp(l, a) => {
                let base = a.count(n);
                let mut acc: u128 = 1;
                for _ in 0..l.len() {
                    acc = acc.saturating_mul(base);
                }
                acc
            }
            Shape::Pow(a) => {
                let m = a.count(n);
                if m >= 127 {
                    u128::MAX
                } else {
                    1u128 << m
                }
            }
            Shape::UPair(a) => {
                let m = a.count(n);
                m.saturating_mul(m.saturating_add(1)) / 2
            }
        }
    }

    /// All elements of `F X`, sorted. Fails if there are more than `limit`.
    pub fn enumerate(&self, base: &[Elem], limit: u128) -> Result<Vec<Elem>> {
        let n = self.count(base.len() as u128);
        if n > limit {
            return Err(CatError::CapExceeded(format!(
                "{self} applied to {} elements has {n} elements (limit {limit})",
                base.len()
            )));
        }
        let mut v = self.enumerate_raw(base);
        v.sort();
        v.dedup();
        Ok(v)
    }

    fn enumerate_raw(&self, base: &[Elem]) -> Vec<Elem> {
        match self {
            Shape::Id => base.to_vec(),
            Shape::Const(k) => k.to_vec(),
            Shape::Prod(a, b) => {
                let xs = a.enumerate_raw(base);
                let ys = b.enumerate_raw(base);
                let mut out = Vec::with_capacity(xs.len() * ys.len());
                for x in &xs {
                    for y in &ys {
                        out.push(Elem::pair(x.clone(), y.clone()));
                    }
                }
                out
            }
            Shape::Exp(l, a) => {
                let xs = a.enumerate_raw(base);
                let mut acc: Vec<Vec<Elem>> = vec![Vec::new()];
                for _ in 0..l.len() {
                    let mut next = Vec::with_capacity(acc.len() * xs.len());
                    for prefix in &acc {
                        for x in &xs {
                            let mut t = prefix.clone();
                            t.push(x.clone());
                            next.push(t);
                        }
                    }
                    acc = next;
                }
                acc.into_iter().map(Elem::tuple).collect()
            }
            Shape::Pow(a) => {
                let mut xs = a.enumerate_raw(base);
                xs.sort();
                xs.dedup();
                subsets(&xs).collect()
            }
            Shape::UPair(a) => {
                let mut xs = a.enumerate_raw(base);
                xs.sort();
                xs.dedup();
                let mut out = Vec::new();
                for i in 0..xs.len() {
                    for j in i..xs.len() {
                        out.push(Elem::Bag(vec![xs[i].clone(), xs[j].clone()].into()));
                    }
                }
                out
            }
        }
    }

    /// Membership in `F X` given membership in `X`.
    pub fn contains(&self, e: &Elem, base: &dyn Fn(&Elem) -> bool) -> bool {
        match self {
            Shape::Id => base(e),
            Shape::Const(k) => k.binary_search(e).is_ok(),
            Shape::Prod(a, b) => e.as_pair().is_some_and(|(x, y)| a.contains(x, base) && b.contains(y, base)),
            Shape::Exp(l, a) => e
                .as_tuple()
                .is_some_and(|t| t.len() == l.len() && t.iter().all(|x| a.contains(x, base))),
            Shape::Pow(a) => e.as_set().is_some_and(|s| s.iter().all(|x| a.contains(x, base))),
            Shape::UPair(a) => e.as_bag().is_some_and(|s| s.len() == 2 && s.iter().all(|x| a.contains(x, base))),
        }
    }

    /// The action of `F f` on one element.
    pub fn map(&self, e: &Elem, f: &dyn Fn(&Elem) -> Elem) -> Elem {
        match self {
            Shape::Id => f(e),
            Shape::Const(_) => e.clone(),
            Shape::Prod(a, b) => {
                let (x, y) = e.as_pair().expect("product element is a pair");
                Elem::pair(a.map(x, f), b.map(y, f))
            }
            Shape::Exp(_, a) => Elem::tuple(e.as_tuple().expect("exponential element is a tuple").iter().map(|x| a.map(x, f)).collect()),
            Shape::Pow(a) => Elem::set(e.as_set().expect("powerset element is a set").iter().map(|x| a.map(x, f))),
            Shape::UPair(a) => Elem::bag(e.as_bag().expect("pair element is a bag").iter().map(|x| a.map(x, f))),
        }
    }

    /// All `t ∈ F R` with `F(p_k)(t)` satisfying `constraints[k]` for every leg
    /// `p_k` of `span`. Powerset levels enumerate subsets of at most
    /// `max_candidates` candidates.
    pub fn fibers(&self, constraints: &[Constraint], span: &ElemSpan, max_candidates: usize) -> Result<Vec<Elem>> {
        debug_assert_eq!(constraints.len(), span.legs());
        match self {
            Shape::Id => Ok(span.query(&targets(constraints))),
            Shape::Const(k) => Ok(const_fiber(k, constraints)),
            Shape::Prod(a, b) => {
                let Some((ca, cb)) = split_pairs(constraints) else { return Ok(Vec::new()) };
                let xs = a.fibers(&ca, span, max_candidates)?;
                if xs.is_empty() {
                    return Ok(xs);
                }
                let ys = b.fibers(&cb, span, max_candidates)?;
                let mut out = Vec::with_capacity(xs.len() * ys.len());
                for x in &xs {
                    for y in &ys {
                        out.push(Elem::pair(x.clone(), y.clone()));
                    }
                }
                Ok(out)
            }
            Shape::Exp(l, a) => {
                let Some(parts) = split_tuples(constraints, l.len()) else { return Ok(Vec::new()) };
                let mut acc: Vec<Vec<Elem>> = vec![Vec::new()];
                for part in &parts {
                    let xs = a.fibers(part, span, max_candidates)?;
                    let mut next = Vec::with_capacity(acc.len() * xs.len());
                    for prefix in &acc {
                        for x in &xs {
                            let mut t = prefix.clone();
                            t.push(x.clone());
                            next.push(t);
                        }
                    }
                    acc = next;
                    if acc.is_empty() {
                        break;
                    }
                }
                Ok(acc.into_iter().map(Elem::tuple).collect())
            }
            Shape::UPair(a) => {
                let mut out = BTreeSet::new();
                for (c1, c2) in upair_orientations(constraints) {
                    let xs = a.fibers(&c1, span, max_candidates)?;
                    if xs.is_empty() {
                        continue;
                    }
                    let ys = a.fibers(&c2, span, max_candidates)?;
                    for x in &xs {
                        for y in &ys {
                            out.insert(Elem::bag([x.clone(), y.clone()]));
                        }
                    }
                }
                Ok(out.into_iter().collect())
            }
            Shape::Pow(a) => {
                let Some(pow) = PowQuery::new(a, constraints, span, max_candidates)? else { return Ok(Vec::new()) };
                let n = pow.candidates.len();
                if n > max_candidates {
                    return Err(CatError::CapExceeded(format!(
                        "powerset fiber with {n} candidates (limit {max_candidates})"
                    )));
                }
                let mut out = Vec::new();
                for mask in 0u64..(1u64 << n) {
                    if pow.covers(|i| mask >> i & 1 == 1) {
                        let members: Vec<Elem> =
                            (0..n).filter(|i| mask >> i & 1 == 1).map(|i| pow.candidates[i].clone()).collect();
                        out.push(Elem::Set(members.into()));
                    }
                }
                out.sort();
                Ok(out)
            }
        }
    }

    /// One canonical element of the fiber (the largest one at powerset
    /// levels), or `None` when the fiber is empty.
    pub fn fiber_witness(&self, constraints: &[Constraint], span: &ElemSpan, max_candidates: usize) -> Result<Option<Elem>> {
        match self {
            Shape::Id => Ok(span.query(&targets(constraints)).into_iter().next()),
            Shape::Const(k) => Ok(const_fiber(k, constraints).into_iter().next()),
            Shape::Prod(a, b) => {
                let Some((ca, cb)) = split_pairs(constraints) else { return Ok(None) };
                let Some(x) = a.fiber_witness(&ca, span, max_candidates)? else { return Ok(None) };
                let Some(y) = b.fiber_witness(&cb, span, max_candidates)? else { return Ok(None) };
                Ok(Some(Elem::pair(x, y)))
            }
            Shape::Exp(l, a) => {
                let Some(parts) = split_tuples(constraints, l.len()) else { return Ok(None) };
                let mut t = Vec::with_capacity(parts.len());
                for part in &parts {
                    match a.fiber_witness(part, span, max_candidates)? {
                        Some(x) => t.push(x),
                        None => return Ok(None),
                    }
                }
                Ok(Some(Elem::tuple(t)))
            }
            Shape::UPair(a) => {
                for (c1, c2) in upair_orientations(constraints) {
                    if let Some(x) = a.fiber_witness(&c1, span, max_candidates)? {
                        if let Some(y) = a.fiber_witness(&c2, span, max_candidates)? {
                            return Ok(Some(Elem::bag([x, y])));
                        }
                    }
                }
                Ok(None)
            }
            Shape::Pow(a) => {
                let Some(pow) = PowQuery::new(a, constraints, span, max_candidates)? else { return Ok(None) };
                if pow.covers(|_| true) {
                    Ok(Some(Elem::Set(pow.candidates.clone().into())))
                } else {
                    Ok(None)
                }
            }
        }
    }
}

/// Subsets of a sorted, duplicate-free list, as set elements.
pub fn subsets(xs: &[Elem]) -> impl Iterator<Item = Elem> + '_ {
    assert!(xs.len() < 64, "too many elements to enumerate subsets");
    (0u64..(1u64 << xs.len())).map(move |mask| {
        let members: Vec<Elem> = (0..xs.len()).filter(|i| mask >> i & 1 == 1).map(|i| xs[i].clone()).collect();
        Elem::Set(members.into())
    })
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Id => write!(f, "Id"),
            Shape::Const(k) => write!(f, "K{}", Elem::Set(k.clone())),
            Shape::Prod(a, b) => write!(f, "({a} x {b})"),
            Shape::Exp(l, a) => write!(f, "{a}^{}", Elem::tuple(l.to_vec())),
            Shape::Pow(a) => write!(f, "P({a})"),
            Shape::UPair(a) => write!(f, "U({a})"),
        }
    }
}

/// What the image of a fiber element along one leg must satisfy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constraint {
    /// Image equals the value.
    Eq(Elem),
    /// Image is below the value in the structural inclusion order
    /// (inclusion at powerset levels, componentwise through products and
    /// exponentials, equality elsewhere).
    Within(Elem),
    /// No condition.
    Free,
}

impl Constraint {
    fn value(&self) -> Option<&Elem> {
        match self {
            Constraint::Eq(v) | Constraint::Within(v) => Some(v),
            Constraint::Free => None,
        }
    }

    fn rewrap(&self, v: Elem) -> Constraint {
        match self {
            Constraint::Eq(_) => Constraint::Eq(v),
            Constraint::Within(_) => Constraint::Within(v),
            Constraint::Free => Constraint::Free,
        }
    }
}

fn targets(constraints: &[Constraint]) -> Vec<Option<&Elem>> {
    constraints.iter().map(Constraint::value).collect()
}

fn const_fiber(k: &[Elem], constraints: &[Constraint]) -> Vec<Elem> {
    let mut fixed: Option<&Elem> = None;
    for c in constraints {
        if let Some(v) = c.value() {
            match fixed {
                None => fixed = Some(v),
                Some(w) if w == v => {}
                Some(_) => return Vec::new(),
            }
        }
    }
    match fixed {
        Some(v) if k.binary_search(v).is_ok() => vec![v.clone()],
        Some(_) => Vec::new(),
        None => k.to_vec(),
    }
}

fn split_pairs(constraints: &[Constraint]) -> Option<(Vec<Constraint>, Vec<Constraint>)> {
    let mut a = Vec::with_capacity(constraints.len());
    let mut b = Vec::with_capacity(constraints.len());
    for c in constraints {
        match c.value() {
            None => {
                a.push(Constraint::Free);
                b.push(Constraint::Free);
            }
            Some(v) => {
                let (x, y) = v.as_pair()?;
                a.push(c.rewrap(x.clone()));
                b.push(c.rewrap(y.clone()));
            }
        }
    }
    Some((a, b))
}

fn split_tuples(constraints: &[Constraint], len: usize) -> Option<Vec<Vec<Constraint>>> {
    let mut parts = vec![Vec::with_capacity(constraints.len()); len];
    for c in constraints {
        match c.value() {
            None => parts.iter_mut().for_each(|p| p.push(Constraint::Free)),
            Some(v) => {
                let t = v.as_tuple()?;
                if t.len() != len {
                    return None;
                }
                for (p, x) in parts.iter_mut().zip(t.iter()) {
                    p.push(c.rewrap(x.clone()));
                }
            }
        }
    }
    Some(parts)
}

/// Ways of matching the two slots of an unordered pair against each
/// constrained leg. Order inside pairs is structural, so `Within` is read as
/// equality here.
fn upair_orientations(constraints: &[Constraint]) -> Vec<(Vec<Constraint>, Vec<Constraint>)> {
    let mut acc: Vec<(Vec<Constraint>, Vec<Constraint>)> = vec![(Vec::new(), Vec::new())];
    for c in constraints {
        let mut next = Vec::new();
        match c.value() {
            None => {
                for (a, b) in acc {
                    let (mut a, mut b) = (a, b);
                    a.push(Constraint::Free);
                    b.push(Constraint::Free);
                    next.push((a, b));
                }
            }
            Some(v) => {
                let Some(bag) = v.as_bag().filter(|b| b.len() == 2) else { return Vec::new() };
                let options: Vec<(Elem, Elem)> = if bag[0] == bag[1] {
                    vec![(bag[0].clone(), bag[1].clone())]
                } else {
                    vec![(bag[0].clone(), bag[1].clone()), (bag[1].clone(), bag[0].clone())]
                };
                for (a, b) in &acc {
                    for (x, y) in &options {
                        let mut a = a.clone();
                        let mut b = b.clone();
                        a.push(Constraint::Eq(x.clone()));
                        b.push(Constraint::Eq(y.clone()));
                        next.push((a, b));
                    }
                }
            }
        }
        acc = next;
    }
    acc
}

/// Candidate members for a powerset-level fiber and the coverage test.
struct PowQuery {
    candidates: Vec<Elem>,
    /// For each `Eq` leg: the required image members, and for each candidate
    /// the position of its image among them.
    equal_legs: Vec<(usize, Vec<usize>)>,
}

impl PowQuery {
    fn new(inner: &Shape, constraints: &[Constraint], span: &ElemSpan, max_candidates: usize) -> Result<Option<PowQuery>> {
        let mut sets: Vec<Option<&[Elem]>> = Vec::with_capacity(constraints.len());
        for c in constraints {
            match c.value() {
                None => sets.push(None),
                Some(v) => match v.as_set() {
                    Some(s) => sets.push(Some(s)),
                    None => return Ok(None),
                },
            }
        }
        let mut candidates = BTreeSet::new();
        let mut combo: Vec<Constraint> = vec![Constraint::Free; constraints.len()];
        collect_combos(inner, &sets, 0, &mut combo, span, max_candidates, &mut candidates)?;
        let candidates: Vec<Elem> = candidates.into_iter().collect();
        let mut equal_legs = Vec::new();
        for (k, c) in constraints.iter().enumerate() {
            if let Constraint::Eq(v) = c {
                let required = v.as_set().expect("checked above");
                let positions = candidates
                    .iter()
                    .map(|t| {
                        let img = inner.map(t, &|r| span.project(k, r));
                        required.binary_search(&img).expect("candidate image lies in the constraint set")
                    })
                    .collect();
                equal_legs.push((required.len(), positions));
            }
        }
        Ok(Some(PowQuery { candidates, equal_legs }))
    }

    fn covers(&self, chosen: impl Fn(usize) -> bool) -> bool {
        self.equal_legs.iter().all(|(len, positions)| {
            let mut hit = vec![false; *len];
            for (i, &p) in positions.iter().enumerate() {
                if chosen(i) {
                    hit[p] = true;
                }
            }
            hit.into_iter().all(|h| h)
        })
    }
}

fn collect_combos(
    inner: &Shape,
    sets: &[Option<&[Elem]>],
    k: usize,
    combo: &mut Vec<Constraint>,
    span: &ElemSpan,
    max_candidates: usize,
    out: &mut BTreeSet<Elem>,
) -> Result<()> {
    if k == sets.len() {
        out.extend(inner.fibers(combo, span, max_candidates)?);
        return Ok(());
    }
    match sets[k] {
        None => {
            combo[k] = Constraint::Free;
            collect_combos(inner, sets, k + 1, combo, span, max_candidates, out)
        }
        Some(members) => {
            for m in members {
                combo[k] = Constraint::Eq(m.clone());
                collect_combos(inner, sets, k + 1, combo, span, max_candidates, out)?;
            }
            Ok(())
        }
    }
}

/// A finite set `R` with legs `p_k : R → X_k`, indexed for fiber queries.
#[derive(Debug, Clone)]
pub struct ElemSpan {
    elems: Vec<Elem>,
    legs: Vec<Vec<Elem>>,
    position: HashMap<Elem, usize>,
    by_all: HashMap<Vec<Elem>, Vec<usize>>,
    by_leg: Vec<HashMap<Elem, Vec<usize>>>,
}

impl ElemSpan {
    /// `legs[k][i]` is the image of `elems[i]` along leg `k`.
    pub fn new(elems: Vec<Elem>, legs: Vec<Vec<Elem>>) -> ElemSpan {
        let position = elems.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let mut by_all: HashMap<Vec<Elem>, Vec<usize>> = HashMap::new();
        let mut by_leg: Vec<HashMap<Elem, Vec<usize>>> = vec![HashMap::new(); legs.len()];
        for i in 0..elems.len() {
            let key: Vec<Elem> = legs.iter().map(|l| l[i].clone()).collect();
            for (k, v) in key.iter().enumerate() {
                by_leg[k].entry(v.clone()).or_default().push(i);
            }
            by_all.entry(key).or_default().push(i);
        }
        ElemSpan { elems, legs, position, by_all, by_leg }
    }

    pub fn legs(&self) -> usize {
        self.legs.len()
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elems
    }

    pub fn project(&self, k: usize, r: &Elem) -> Elem {
        let i = self.position[r];
        self.legs[k][i].clone()
    }

    fn query(&self, targets: &[Option<&Elem>]) -> Vec<Elem> {
        if targets.iter().all(Option::is_some) {
            let key: Vec<Elem> = targets.iter().map(|t| (*t).unwrap().clone()).collect();
            return self.by_all.get(&key).map(|ix| ix.iter().map(|&i| self.elems[i].clone()).collect()).unwrap_or_default();
        }
        match targets.iter().position(Option::is_some) {
            None => self.elems.clone(),
            Some(k) => {
                let Some(ix) = self.by_leg[k].get(targets[k].unwrap()) else { return Vec::new() };
                ix.iter()
                    .filter(|&&i| targets.iter().enumerate().all(|(j, t)| t.is_none_or(|t| &self.legs[j][i] == t)))
                    .map(|&i| self.elems[i].clone())
                    .collect()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elem::atoms;

    fn a(s: &str) -> Elem {
        Elem::atom(s)
    }

    #[test]
    fn counts_match_enumeration() {
        let base = atoms("x", 3);
        let labels = [a("a"), a("b")];
        for shape in [
            Shape::pow(),
            Shape::upair(),
            Shape::det(&labels),
            Shape::pow_labels(&labels[..1]),
            Shape::product(Shape::constant([a("k")]), Shape::upair()),
        ] {
            let all = shape.enumerate(&base, 1 << 20).unwrap();
            assert_eq!(all.len() as u128, shape.count(3), "{shape}");
            assert!(all.iter().all(|e| shape.contains(e, &|x| base.contains(x))));
        }
    }

    #[test]
    fn enumeration_respects_limit() {
        let base = atoms("x", 13);
        assert!(matches!(Shape::pow().enumerate(&base, 4096), Err(CatError::CapExceeded(_))));
    }

    #[test]
    fn map_normalizes_sets_and_bags() {
        let to_z = |_: &Elem| a("z");
        let e = Elem::set([a("x"), a("y")]);
        assert_eq!(Shape::pow().map(&e, &to_z), Elem::set([a("z")]));
        let b = Elem::bag([a("y"), a("x")]);
        assert_eq!(Shape::upair().map(&b, &to_z), Elem::bag([a("z"), a("z")]));
    }

    fn full_span(xs: &[Elem], ys: &[Elem]) -> ElemSpan {
        let mut elems = Vec::new();
        for x in xs {
            for y in ys {
                elems.push(Elem::pair(x.clone(), y.clone()));
            }
        }
        let l1 = elems.iter().map(|e| e.as_pair().unwrap().0.clone()).collect();
        let l2 = elems.iter().map(|e| e.as_pair().unwrap().1.clone()).collect();
        ElemSpan::new(elems, vec![l1, l2])
    }

    #[test]
    fn upair_fiber_lists_both_matchings() {
        let span = full_span(&[a("a"), a("b")], &[a("c"), a("d")]);
        let u = Elem::bag([a("a"), a("b")]);
        let v = Elem::bag([a("c"), a("d")]);
        let fib = Shape::upair().fibers(&[Constraint::Eq(u), Constraint::Eq(v)], &span, 16).unwrap();
        assert_eq!(fib.len(), 2);
    }

    #[test]
    fn pow_fiber_witness_is_the_largest_member() {
        let span = full_span(&[a("x")], &[a("y1"), a("y2")]);
        let u = Elem::set([a("x")]);
        let v = Elem::set([a("y1"), a("y2")]);
        let cons = [Constraint::Eq(u), Constraint::Eq(v)];
        let all = Shape::pow().fibers(&cons, &span, 16).unwrap();
        // {(x,y1),(x,y2)} is the only subset covering both sides
        assert_eq!(all.len(), 1);
        let w = Shape::pow().fiber_witness(&cons, &span, 16).unwrap().unwrap();
        assert_eq!(w, all[0]);
    }

    #[test]
    fn within_constraint_allows_smaller_images() {
        let span = full_span(&[a("x")], &[a("y1"), a("y2")]);
        let cons = [Constraint::Eq(Elem::set([a("x")])), Constraint::Within(Elem::set([a("y1"), a("y2")]))];
        let all = Shape::pow().fibers(&cons, &span, 16).unwrap();
        assert_eq!(all.len(), 3);
    }
}
