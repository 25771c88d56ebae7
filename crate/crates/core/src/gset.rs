//! Finite G-sets and equivariant maps for a fixed finite group G.
//!
//! Limits, colimits and images are computed on underlying sets (the
//! forgetful functor to finite sets creates them) and then equipped with the
//! induced action. The only operation that differs in substance is
//! [`RegularCategory::solve_factorization`]: an equivariant lift must send
//! every orbit representative to a point whose stabilizer contains the
//! representative's stabilizer, and such a point need not exist.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::category::{
    CatError, Factorization, Product, PullbackResult, PushoutResult, RegularCategory, Result,
};
use crate::elem::Elem;
use crate::element::ElementCategory;
use crate::finset::{FinSet, FinSetMor, FinSetObj};
use crate::group::FiniteGroup;
use crate::shape::Shape;

#[derive(Clone)]
pub struct GSetObj {
    set: FinSetObj,
    group: Arc<FiniteGroup>,
    action: Action,
}

#[derive(Clone)]
enum Action {
    /// `table[g][i]` is `g` applied to the `i`-th carrier element.
    Table(Arc<[Vec<Elem>]>),
    /// The action on `F X` transported from `X`.
    Applied(Shape, Box<GSetObj>),
    /// The diagonal action on a product.
    Product(Box<GSetObj>, Box<GSetObj>),
}

impl GSetObj {
    /// A G-set from an action function; checks closure and the action laws.
    pub fn new(group: &Arc<FiniteGroup>, elems: Vec<Elem>, act: impl Fn(usize, &Elem) -> Elem) -> Result<GSetObj> {
        let set = FinSetObj::explicit(elems);
        let obj = GSetObj::tabulated(group, set, act);
        obj.validate()?;
        Ok(obj)
    }

    /// Every element fixed by every group element.
    pub fn trivial(group: &Arc<FiniteGroup>, elems: Vec<Elem>) -> GSetObj {
        GSetObj::tabulated(group, FinSetObj::explicit(elems), |_, e| e.clone())
    }

    fn tabulated(group: &Arc<FiniteGroup>, set: FinSetObj, act: impl Fn(usize, &Elem) -> Elem) -> GSetObj {
        let xs = set.elements().expect("tabulated G-sets have listed carriers");
        let table: Vec<Vec<Elem>> = (0..group.order()).map(|g| xs.iter().map(|x| act(g, x)).collect()).collect();
        GSetObj { set, group: group.clone(), action: Action::Table(table.into()) }
    }

    fn validate(&self) -> Result<()> {
        let xs = self.set.enumerate()?;
        let g = &self.group;
        for x in xs {
            if self.act(g.identity(), x) != *x {
                return Err(CatError::Invalid(format!("the identity moves {x}")));
            }
            for a in 0..g.order() {
                let ax = self.act(a, x);
                if !self.set.contains(&ax) {
                    return Err(CatError::Invalid(format!("{} sends {x} outside the carrier", g.element(a))));
                }
                for b in 0..g.order() {
                    if self.act(b, &ax) != self.act(g.mul(b, a), x) {
                        return Err(CatError::Invalid(format!(
                            "action is not compatible with multiplication at {}, {}, {x}",
                            g.element(b),
                            g.element(a)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn carrier(&self) -> &FinSetObj {
        &self.set
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// `g · e`.
    pub fn act(&self, g: usize, e: &Elem) -> Elem {
        match &self.action {
            Action::Table(t) => {
                let i = self.set.index_of(e).unwrap_or_else(|| panic!("{e} is not in {:?}", self.set));
                t[g][i].clone()
            }
            Action::Applied(shape, base) => shape.map(e, &|x| base.act(g, x)),
            Action::Product(a, b) => {
                let (x, y) = e.as_pair().expect("product element is a pair");
                Elem::pair(a.act(g, x), b.act(g, y))
            }
        }
    }

    /// The action as a table `group element → (element → image)`.
    pub fn action_table(&self) -> Result<Vec<Vec<(Elem, Elem)>>> {
        let xs = self.set.enumerate()?;
        Ok((0..self.group.order()).map(|g| xs.iter().map(|x| (x.clone(), self.act(g, x))).collect()).collect())
    }

    pub fn orbit(&self, e: &Elem) -> Vec<Elem> {
        let orbit: BTreeSet<Elem> = (0..self.group.order()).map(|g| self.act(g, e)).collect();
        orbit.into_iter().collect()
    }

    /// Orbits in order of their smallest elements; each orbit is sorted.
    pub fn orbits(&self) -> Result<Vec<Vec<Elem>>> {
        let xs = self.set.enumerate()?;
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for x in xs {
            if seen.contains(x) {
                continue;
            }
            let orbit = self.orbit(x);
            seen.extend(orbit.iter().cloned());
            out.push(orbit);
        }
        Ok(out)
    }

    /// Indices of the group elements fixing `e`.
    pub fn stabilizer(&self, e: &Elem) -> Vec<usize> {
        (0..self.group.order()).filter(|&g| self.act(g, e) == *e).collect()
    }

    fn same_action(&self, other: &GSetObj) -> bool {
        match (&self.action, &other.action) {
            (Action::Table(a), Action::Table(b)) if Arc::ptr_eq(a, b) || a == b => return true,
            (Action::Applied(s, x), Action::Applied(t, y)) if s == t && x == y => return true,
            (Action::Product(a, b), Action::Product(c, d)) if a == c && b == d => return true,
            _ => {}
        }
        match self.set.elements() {
            Some(xs) => self.group.generators().iter().all(|&g| xs.iter().all(|x| self.act(g, x) == other.act(g, x))),
            None => false,
        }
    }
}

impl PartialEq for GSetObj {
    fn eq(&self, other: &Self) -> bool {
        self.set == other.set && self.group == other.group && self.same_action(other)
    }
}

impl fmt::Debug for GSetObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}@{:?}", self.set, self.group)
    }
}

/// An equivariant map.
#[derive(Clone, PartialEq)]
pub struct GSetMor {
    src: GSetObj,
    tgt: GSetObj,
    map: FinSetMor,
}

impl GSetMor {
    pub fn source(&self) -> &GSetObj {
        &self.src
    }

    pub fn target(&self) -> &GSetObj {
        &self.tgt
    }

    pub fn underlying(&self) -> &FinSetMor {
        &self.map
    }

    pub fn apply(&self, e: &Elem) -> Elem {
        self.map.apply(e)
    }
}

impl fmt::Debug for GSetMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.map)
    }
}

/// Finite G-sets for one group G: a Boolean topos in which regular epis
/// need not split.
#[derive(Clone, Debug, PartialEq)]
pub struct GSet {
    group: Arc<FiniteGroup>,
}

impl GSet {
    pub fn new(group: FiniteGroup) -> GSet {
        GSet { group: Arc::new(group) }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn object(&self, elems: Vec<Elem>, act: impl Fn(usize, &Elem) -> Elem) -> Result<GSetObj> {
        GSetObj::new(&self.group, elems, act)
    }

    pub fn trivial_object(&self, elems: Vec<Elem>) -> GSetObj {
        GSetObj::trivial(&self.group, elems)
    }

    fn check_group(&self, x: &GSetObj) -> Result<()> {
        if *x.group != *self.group {
            return Err(CatError::Backend(format!("object over {:?} used with G-sets over {:?}", x.group, self.group)));
        }
        Ok(())
    }

    /// Whether `f(g·x) = g·f(x)` for all `g` and `x`.
    pub fn check_equivariant(&self, f: &GSetMor) -> Result<bool> {
        self.check_group(&f.src)?;
        self.check_group(&f.tgt)?;
        Ok(equivariance_failure(&f.src, &f.tgt, &f.map)?.is_none())
    }

    fn wrap(&self, src: &GSetObj, tgt: &GSetObj, map: FinSetMor) -> GSetMor {
        GSetMor { src: src.clone(), tgt: tgt.clone(), map }
    }

    fn sub(&self, set: FinSetObj, act: impl Fn(usize, &Elem) -> Elem) -> GSetObj {
        GSetObj::tabulated(&self.group, set, act)
    }
}

fn equivariance_failure(src: &GSetObj, tgt: &GSetObj, f: &FinSetMor) -> Result<Option<String>> {
    let xs = src.set.enumerate()?;
    for &g in src.group.generators() {
        for x in xs {
            let lhs = f.apply(&src.act(g, x));
            let rhs = tgt.act(g, &f.apply(x));
            if lhs != rhs {
                return Ok(Some(format!(
                    "f({}·{x}) = {lhs} but {}·f({x}) = {rhs}",
                    src.group.element(g),
                    src.group.element(g)
                )));
            }
        }
    }
    Ok(None)
}

impl RegularCategory for GSet {
    type Obj = GSetObj;
    type Mor = GSetMor;

    fn backend_name(&self) -> &'static str {
        "gset"
    }

    fn source<'a>(&self, f: &'a GSetMor) -> &'a GSetObj {
        &f.src
    }

    fn target<'a>(&self, f: &'a GSetMor) -> &'a GSetObj {
        &f.tgt
    }

    fn identity(&self, x: &GSetObj) -> GSetMor {
        self.wrap(x, x, FinSet.identity(&x.set))
    }

    fn compose(&self, g: &GSetMor, f: &GSetMor) -> Result<GSetMor> {
        self.check_composable(g, f)?;
        Ok(self.wrap(&f.src, &g.tgt, FinSet.compose(&g.map, &f.map)?))
    }

    fn terminal(&self) -> GSetObj {
        self.trivial_object(vec![Elem::atom("*")])
    }

    fn initial(&self) -> GSetObj {
        self.trivial_object(Vec::new())
    }

    fn initial_morphism(&self, x: &GSetObj) -> Result<GSetMor> {
        let e = self.initial();
        Ok(self.wrap(&e, x, FinSet.initial_morphism(&x.set)?))
    }

    fn product(&self, x: &GSetObj, y: &GSetObj) -> Result<Product<GSet>> {
        self.check_group(x)?;
        self.check_group(y)?;
        let p = FinSet.product(&x.set, &y.set)?;
        let apex = GSetObj { set: p.apex, group: self.group.clone(), action: Action::Product(Box::new(x.clone()), Box::new(y.clone())) };
        Ok(Product { p1: self.wrap(&apex, x, p.p1), p2: self.wrap(&apex, y, p.p2), apex })
    }

    fn pair(&self, f: &GSetMor, g: &GSetMor) -> Result<GSetMor> {
        if f.src != g.src {
            return Err(CatError::Endpoint("pairing needs a common source".into()));
        }
        let p = self.product(&f.tgt, &g.tgt)?;
        Ok(self.wrap(&f.src, &p.apex, FinSet.pair(&f.map, &g.map)?))
    }

    fn pullback(&self, f: &GSetMor, g: &GSetMor) -> Result<PullbackResult<GSet>> {
        if f.tgt != g.tgt {
            return Err(CatError::Endpoint("pullback needs a common codomain".into()));
        }
        let pb = FinSet.pullback(&f.map, &g.map)?;
        let (a, b) = (f.src.clone(), g.src.clone());
        let apex = self.sub(pb.apex.clone(), move |k, e| {
            let (x, y) = e.as_pair().expect("pullback element is a pair");
            Elem::pair(a.act(k, x), b.act(k, y))
        });
        Ok(PullbackResult { left: self.wrap(&apex, &f.src, pb.left), right: self.wrap(&apex, &g.src, pb.right), apex })
    }

    fn pushout(&self, f: &GSetMor, g: &GSetMor) -> Result<PushoutResult<GSet>> {
        if f.src != g.src {
            return Err(CatError::Endpoint("pushout needs a common domain".into()));
        }
        let po = FinSet.pushout(&f.map, &g.map)?;
        let (a, b) = (f.tgt.clone(), g.tgt.clone());
        let (l, r) = (po.left.clone(), po.right.clone());
        let apex = self.sub(po.apex.clone(), move |k, class| match &class.as_set().expect("pushout class")[0] {
            Elem::Inj(0, x) => l.apply(&a.act(k, x)),
            Elem::Inj(_, y) => r.apply(&b.act(k, y)),
            _ => unreachable!("pushout classes hold tagged members"),
        });
        Ok(PushoutResult { left: self.wrap(&f.tgt, &apex, po.left), right: self.wrap(&g.tgt, &apex, po.right), apex })
    }

    fn mediate_pullback(&self, f: &GSetMor, g: &GSetMor, pb: &PullbackResult<GSet>, a: &GSetMor, b: &GSetMor) -> Result<GSetMor> {
        let fpb = PullbackResult::<FinSet> { apex: pb.apex.set.clone(), left: pb.left.map.clone(), right: pb.right.map.clone() };
        let u = FinSet.mediate_pullback(&f.map, &g.map, &fpb, &a.map, &b.map)?;
        Ok(self.wrap(&a.src, &pb.apex, u))
    }

    fn mediate_pushout(&self, f: &GSetMor, g: &GSetMor, po: &PushoutResult<GSet>, a: &GSetMor, b: &GSetMor) -> Result<GSetMor> {
        let fpo = PushoutResult::<FinSet> { apex: po.apex.set.clone(), left: po.left.map.clone(), right: po.right.map.clone() };
        let u = FinSet.mediate_pushout(&f.map, &g.map, &fpo, &a.map, &b.map)?;
        Ok(self.wrap(&po.apex, &a.tgt, u))
    }

    fn factorize(&self, f: &GSetMor) -> Result<Factorization<GSet>> {
        let fac = FinSet.factorize(&f.map)?;
        let tgt = f.tgt.clone();
        let image = self.sub(fac.mono.source().clone(), move |k, e| tgt.act(k, e));
        Ok(Factorization { epi: self.wrap(&f.src, &image, fac.epi), mono: self.wrap(&image, &f.tgt, fac.mono) })
    }

    fn is_mono(&self, f: &GSetMor) -> Result<bool> {
        FinSet.is_mono(&f.map)
    }

    fn is_regular_epi(&self, f: &GSetMor) -> Result<bool> {
        FinSet.is_regular_epi(&f.map)
    }

    fn solve_factorization(&self, h: &GSetMor, through: &GSetMor) -> Result<Option<GSetMor>> {
        if h.tgt != through.tgt {
            return Err(CatError::Endpoint("solve_factorization needs a common target".into()));
        }
        let bs = through.src.set.enumerate()?;
        let tv = through.map.values()?;
        let mut values: Vec<(Elem, Elem)> = Vec::new();
        for orbit in h.src.orbits()? {
            let rep = &orbit[0];
            let stab = h.src.stabilizer(rep);
            let want = h.map.apply(rep);
            let choice = bs
                .iter()
                .zip(tv.iter())
                .filter(|(_, v)| **v == want)
                .map(|(b, _)| b)
                .find(|b| stab.iter().all(|&g| through.src.act(g, b) == **b));
            let Some(b) = choice else { return Ok(None) };
            for g in 0..self.group.order() {
                values.push((h.src.act(g, rep), through.src.act(g, b)));
            }
        }
        values.sort();
        values.dedup();
        let u = FinSetMor::from_pairs(&h.src.set, &through.src.set, &values)?;
        Ok(Some(self.wrap(&h.src, &through.src, u)))
    }

    fn uncovered(&self, f: &GSetMor) -> Result<Vec<String>> {
        FinSet.uncovered(&f.map)
    }
}

impl ElementCategory for GSet {
    fn carrier<'a>(&self, x: &'a GSetObj) -> &'a FinSetObj {
        &x.set
    }

    fn underlying<'a>(&self, f: &'a GSetMor) -> &'a FinSetMor {
        &f.map
    }

    fn apply_shape(&self, shape: &Shape, x: &GSetObj) -> GSetObj {
        GSetObj {
            set: FinSetObj::applied(shape, &x.set),
            group: x.group.clone(),
            action: Action::Applied(shape.clone(), Box::new(x.clone())),
        }
    }

    fn lift_shape(&self, shape: &Shape, f: &GSetMor) -> Result<GSetMor> {
        let map = FinSet.lift_shape(shape, &f.map)?;
        Ok(self.wrap(&self.apply_shape(shape, &f.src), &self.apply_shape(shape, &f.tgt), map))
    }

    fn morphism_from_fn(&self, src: &GSetObj, tgt: &GSetObj, f: impl Fn(&Elem) -> Elem + Send + Sync + 'static) -> Result<GSetMor> {
        self.check_group(src)?;
        self.check_group(tgt)?;
        let map = FinSetMor::from_fn(&src.set, &tgt.set, f)?;
        if src.set.is_explicit() {
            if let Some(why) = equivariance_failure(src, tgt, &map)? {
                return Err(CatError::Invalid(format!("map is not equivariant: {why}")));
            }
        }
        Ok(self.wrap(src, tgt, map))
    }

    fn inclusion(&self, x: &GSetObj, elems: Vec<Elem>) -> Result<GSetMor> {
        let set = FinSetObj::explicit(elems);
        for e in set.enumerate()? {
            if !x.set.contains(e) {
                return Err(CatError::Invalid(format!("{e} is not in {x:?}")));
            }
            for &g in self.group.generators() {
                let ge = x.act(g, e);
                if !set.contains(&ge) {
                    return Err(CatError::Invalid(format!(
                        "subset is not closed under the action: {}·{e} = {ge} is missing",
                        self.group.element(g)
                    )));
                }
            }
        }
        let y = x.clone();
        let sub = self.sub(set, move |k, e| y.act(k, e));
        let map = FinSetMor::from_fn(&sub.set, &x.set, |e| e.clone())?;
        Ok(self.wrap(&sub, x, map))
    }

    fn closure(&self, x: &GSetObj, elems: Vec<Elem>) -> Vec<Elem> {
        let out: BTreeSet<Elem> = elems.iter().flat_map(|e| x.orbit(e)).collect();
        out.into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Elem {
        Elem::atom(s)
    }

    fn z2() -> GSet {
        GSet::new(FiniteGroup::cyclic(2))
    }

    /// `{a, b}` with the generator swapping the points.
    fn swap_pair(c: &GSet) -> GSetObj {
        c.object(vec![a("a"), a("b")], |g, e| {
            if g == 0 {
                e.clone()
            } else if *e == a("a") {
                a("b")
            } else {
                a("a")
            }
        })
        .unwrap()
    }

    #[test]
    fn equivariance_is_checked() {
        let c = z2();
        let x = swap_pair(&c);
        let point = c.trivial_object(vec![a("a")]);
        assert!(c.morphism_from_fn(&x, &point, |_| a("a")).is_ok());
        let moved = swap_pair(&c);
        assert!(c.morphism_from_fn(&x, &moved, |_| a("a")).is_err());
        assert!(c.check_equivariant(&c.identity(&x)).unwrap());
    }

    #[test]
    fn orbits_and_stabilizers() {
        let c = z2();
        let x = swap_pair(&c);
        assert_eq!(x.orbits().unwrap(), vec![vec![a("a"), a("b")]]);
        assert_eq!(x.stabilizer(&a("a")), vec![0]);
        let t = c.trivial_object(vec![a("p"), a("q")]);
        assert_eq!(t.orbits().unwrap().len(), 2);
        assert_eq!(t.stabilizer(&a("p")), vec![0, 1]);

        let s3 = Arc::new(FiniteGroup::symmetric3());
        let regular = GSetObj::new(&s3, s3.elements().to_vec(), |g, e| s3.element(s3.mul(g, s3.index_of(e).unwrap())).clone()).unwrap();
        assert_eq!(regular.orbits().unwrap().len(), 1);
        assert_eq!(regular.orbits().unwrap()[0].len(), 6);
    }

    #[test]
    fn free_orbit_onto_a_point_has_no_section() {
        let c = z2();
        let x = swap_pair(&c);
        let point = c.terminal();
        let e = c.morphism_from_fn(&x, &point, |_| a("*")).unwrap();
        assert!(c.is_regular_epi(&e).unwrap());
        assert!(c.solve_factorization(&c.identity(&point), &e).unwrap().is_none());

        let trivial = GSet::new(FiniteGroup::trivial());
        let x = trivial.trivial_object(vec![a("a"), a("b")]);
        let point = trivial.terminal();
        let e = trivial.morphism_from_fn(&x, &point, |_| a("*")).unwrap();
        let s = trivial.solve_factorization(&trivial.identity(&point), &e).unwrap().unwrap();
        assert_eq!(s.apply(&a("*")), a("a"));
    }

    #[test]
    fn constructions_carry_induced_actions() {
        let c = z2();
        let x = swap_pair(&c);
        let p = c.product(&x, &x).unwrap();
        assert_eq!(p.apex.act(1, &Elem::pair(a("a"), a("a"))), Elem::pair(a("b"), a("b")));
        let d = c.pair(&c.identity(&x), &c.identity(&x)).unwrap();
        let fac = c.factorize(&d).unwrap();
        assert_eq!(c.source(&fac.mono).orbits().unwrap().len(), 1);
        let px = c.apply_shape(&Shape::pow(), &x);
        assert_eq!(px.orbits().unwrap().len(), 3);
        let po = c.pushout(&c.identity(&x), &c.identity(&x)).unwrap();
        assert_eq!(po.apex.carrier().len(), 2);
        assert_eq!(po.apex.orbits().unwrap().len(), 1);
    }
}
