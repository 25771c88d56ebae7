//! Finite sets and total functions.
//!
//! Carriers are either explicit sorted element lists or, when a functor
//! image or product is too large to list, a symbolic [`Space`] that still
//! answers membership queries. Morphisms out of explicit carriers are stored
//! as tables; morphisms out of spaces are rules evaluated on demand.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::category::{
    CatError, Factorization, Product, PullbackResult, PushoutResult, RegularCategory, Result,
};
use crate::elem::Elem;
use crate::shape::Shape;

/// Functor images with at most this many elements are listed explicitly;
/// larger ones stay symbolic.
pub const ENUMERATION_LIMIT: u128 = 1 << 12;
/// Products with at most this many pairs are listed explicitly.
pub const PRODUCT_LIMIT: u128 = 1 << 16;

#[derive(Clone)]
pub struct FinSetObj(Arc<ObjKind>);

enum ObjKind {
    Explicit(Vec<Elem>),
    Space(Space, u128),
}

/// A carrier described by its construction rather than by its elements.
#[derive(Clone, PartialEq, Debug)]
pub enum Space {
    Applied(Shape, FinSetObj),
    Product(FinSetObj, FinSetObj),
}

impl FinSetObj {
    pub fn explicit<I: IntoIterator<Item = Elem>>(elems: I) -> FinSetObj {
        let mut v: Vec<Elem> = elems.into_iter().collect();
        v.sort();
        v.dedup();
        FinSetObj(Arc::new(ObjKind::Explicit(v)))
    }

    fn from_sorted(v: Vec<Elem>) -> FinSetObj {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        FinSetObj(Arc::new(ObjKind::Explicit(v)))
    }

    pub fn empty() -> FinSetObj {
        FinSetObj::from_sorted(Vec::new())
    }

    /// `F X` for the functor described by `shape`.
    pub fn applied(shape: &Shape, base: &FinSetObj) -> FinSetObj {
        let size = shape.count(base.len());
        match base.elements() {
            Some(xs) if size <= ENUMERATION_LIMIT => {
                FinSetObj::from_sorted(shape.enumerate(xs, ENUMERATION_LIMIT).expect("size checked"))
            }
            _ => FinSetObj(Arc::new(ObjKind::Space(Space::Applied(shape.clone(), base.clone()), size))),
        }
    }

    pub fn product_of(a: &FinSetObj, b: &FinSetObj) -> FinSetObj {
        let size = a.len().saturating_mul(b.len());
        match (a.elements(), b.elements()) {
            (Some(xs), Some(ys)) if size <= PRODUCT_LIMIT => {
                let mut v = Vec::with_capacity(size as usize);
                for x in xs {
                    for y in ys {
                        v.push(Elem::pair(x.clone(), y.clone()));
                    }
                }
                FinSetObj::from_sorted(v)
            }
            _ => FinSetObj(Arc::new(ObjKind::Space(Space::Product(a.clone(), b.clone()), size))),
        }
    }

    pub fn len(&self) -> u128 {
        match &*self.0 {
            ObjKind::Explicit(v) => v.len() as u128,
            ObjKind::Space(_, n) => *n,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_explicit(&self) -> bool {
        matches!(&*self.0, ObjKind::Explicit(_))
    }

    pub fn elements(&self) -> Option<&[Elem]> {
        match &*self.0 {
            ObjKind::Explicit(v) => Some(v),
            ObjKind::Space(..) => None,
        }
    }

    pub fn space(&self) -> Option<&Space> {
        match &*self.0 {
            ObjKind::Explicit(_) => None,
            ObjKind::Space(s, _) => Some(s),
        }
    }

    /// The element list, or a cap error for symbolic carriers.
    pub fn enumerate(&self) -> Result<&[Elem]> {
        self.elements().ok_or_else(|| {
            CatError::CapExceeded(format!("carrier {self:?} has {} elements and is not listed", self.len()))
        })
    }

    pub fn index_of(&self, e: &Elem) -> Option<usize> {
        self.elements().and_then(|v| v.binary_search(e).ok())
    }

    pub fn contains(&self, e: &Elem) -> bool {
        match &*self.0 {
            ObjKind::Explicit(v) => v.binary_search(e).is_ok(),
            ObjKind::Space(Space::Applied(shape, base), _) => shape.contains(e, &|x| base.contains(x)),
            ObjKind::Space(Space::Product(a, b), _) => e.as_pair().is_some_and(|(x, y)| a.contains(x) && b.contains(y)),
        }
    }
}

impl PartialEq for FinSetObj {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (&*self.0, &*other.0) {
            (ObjKind::Explicit(a), ObjKind::Explicit(b)) => a == b,
            (ObjKind::Space(a, _), ObjKind::Space(b, _)) => a == b,
            _ => false,
        }
    }
}

impl fmt::Debug for FinSetObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            ObjKind::Explicit(v) if v.len() <= 16 => write!(f, "{}", Elem::Set(v.clone().into())),
            ObjKind::Explicit(v) => write!(f, "{{{} elements from {} to {}}}", v.len(), v[0], v[v.len() - 1]),
            ObjKind::Space(Space::Applied(shape, base), _) => write!(f, "{shape}[{base:?}]"),
            ObjKind::Space(Space::Product(a, b), _) => write!(f, "{a:?} x {b:?}"),
        }
    }
}

pub type Rule = Arc<dyn Fn(&Elem) -> Elem + Send + Sync>;

#[derive(Clone)]
enum MapRepr {
    /// Values indexed like the (explicit) source.
    Table(Arc<[Elem]>),
    Rule(Rule),
}

/// A total function between finite carriers.
#[derive(Clone)]
pub struct FinSetMor {
    src: FinSetObj,
    tgt: FinSetObj,
    map: MapRepr,
}

impl FinSetMor {
    /// Tabulates `f` when the source is listed (checking that every value
    /// lies in the target); otherwise keeps `f` as a rule.
    pub fn from_fn(src: &FinSetObj, tgt: &FinSetObj, f: impl Fn(&Elem) -> Elem + Send + Sync + 'static) -> Result<FinSetMor> {
        match src.elements() {
            Some(xs) => FinSetMor::from_table(src, tgt, xs.iter().map(f).collect()),
            None => Ok(FinSetMor { src: src.clone(), tgt: tgt.clone(), map: MapRepr::Rule(Arc::new(f)) }),
        }
    }

    pub fn from_table(src: &FinSetObj, tgt: &FinSetObj, values: Vec<Elem>) -> Result<FinSetMor> {
        let xs = src.enumerate()?;
        if xs.len() != values.len() {
            return Err(CatError::Invalid(format!("table has {} entries for {} source elements", values.len(), xs.len())));
        }
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !tgt.contains(v)) {
            return Err(CatError::Invalid(format!("image {v} of {} is not in the target", xs[i])));
        }
        Ok(FinSetMor { src: src.clone(), tgt: tgt.clone(), map: MapRepr::Table(values.into()) })
    }

    /// A table known to land in `tgt`, such as a projection.
    fn from_table_unchecked(src: &FinSetObj, tgt: &FinSetObj, values: Vec<Elem>) -> FinSetMor {
        FinSetMor { src: src.clone(), tgt: tgt.clone(), map: MapRepr::Table(values.into()) }
    }

    /// Builds a morphism from an explicit assignment; every source element must
    /// be assigned exactly once.
    pub fn from_pairs(src: &FinSetObj, tgt: &FinSetObj, pairs: &[(Elem, Elem)]) -> Result<FinSetMor> {
        let xs = src.enumerate()?;
        let mut values: Vec<Option<Elem>> = vec![None; xs.len()];
        for (a, b) in pairs {
            let i = src.index_of(a).ok_or_else(|| CatError::Invalid(format!("{a} is not in the source")))?;
            if values[i].replace(b.clone()).is_some() {
                return Err(CatError::Invalid(format!("{a} is assigned twice")));
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| CatError::Invalid(format!("{} is not assigned", xs[i]))))
            .collect::<Result<Vec<_>>>()?;
        FinSetMor::from_table(src, tgt, values)
    }

    pub fn source(&self) -> &FinSetObj {
        &self.src
    }

    pub fn target(&self) -> &FinSetObj {
        &self.tgt
    }

    pub fn table(&self) -> Option<&[Elem]> {
        match &self.map {
            MapRepr::Table(t) => Some(t),
            MapRepr::Rule(_) => None,
        }
    }

    pub fn apply(&self, e: &Elem) -> Elem {
        match &self.map {
            MapRepr::Table(t) => {
                let i = self.src.index_of(e).unwrap_or_else(|| panic!("{e} is not in the source {:?}", self.src));
                t[i].clone()
            }
            MapRepr::Rule(f) => f(e),
        }
    }

    /// `(x, f x)` for every source element.
    pub fn pairs(&self) -> Result<Vec<(Elem, Elem)>> {
        let xs = self.src.enumerate()?;
        Ok(xs.iter().cloned().zip(self.values()?.iter().cloned()).collect())
    }

    /// Values in source order (listed sources only).
    pub fn values(&self) -> Result<Arc<[Elem]>> {
        match &self.map {
            MapRepr::Table(t) => Ok(t.clone()),
            MapRepr::Rule(_) => Err(CatError::CapExceeded(format!("morphism out of {:?} is not tabulated", self.src))),
        }
    }

    fn distinct_values(&self) -> Result<Vec<Elem>> {
        let mut v = self.values()?.to_vec();
        v.sort();
        v.dedup();
        Ok(v)
    }

    pub fn as_rule(&self) -> Rule {
        let this = self.clone();
        Arc::new(move |e: &Elem| this.apply(e))
    }
}

impl PartialEq for FinSetMor {
    fn eq(&self, other: &Self) -> bool {
        if self.src != other.src || self.tgt != other.tgt {
            return false;
        }
        match (&self.map, &other.map) {
            (MapRepr::Table(a), MapRepr::Table(b)) => a == b,
            (MapRepr::Rule(a), MapRepr::Rule(b)) => Arc::ptr_eq(a, b),
            _ => false,
        }
    }
}

impl fmt::Debug for FinSetMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.map {
            MapRepr::Table(t) => {
                write!(f, "{{")?;
                let xs = self.src.elements().unwrap_or(&[]);
                for (i, (x, y)) in xs.iter().zip(t.iter()).enumerate() {
                    if i == 12 {
                        write!(f, ", ...")?;
                        break;
                    }
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}->{y}")?;
                }
                write!(f, "}}")
            }
            MapRepr::Rule(_) => write!(f, "<rule {:?} -> {:?}>", self.src, self.tgt),
        }
    }
}

/// The category of finite sets: a topos with choice.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FinSet;

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Pushout classes of `A + B` under `f(c) ~ g(c)`, as set elements of
/// tagged members, together with the class of every `A` and `B` element.
pub(crate) fn pushout_classes(f: &FinSetMor, g: &FinSetMor) -> Result<(Vec<Elem>, Vec<Elem>, Vec<Elem>)> {
    let xs = f.target().enumerate()?;
    let ys = g.target().enumerate()?;
    let cs = f.source().enumerate()?;
    let n = xs.len();
    let mut uf = UnionFind::new(n + ys.len());
    let fv = f.values()?;
    let gv = g.values()?;
    for i in 0..cs.len() {
        let a = f.target().index_of(&fv[i]).expect("image in target");
        let b = g.target().index_of(&gv[i]).expect("image in target");
        uf.union(a, n + b);
    }
    let mut members: HashMap<usize, Vec<Elem>> = HashMap::new();
    for (i, x) in xs.iter().enumerate() {
        members.entry(uf.find(i)).or_default().push(Elem::inj(0, x.clone()));
    }
    for (j, y) in ys.iter().enumerate() {
        members.entry(uf.find(n + j)).or_default().push(Elem::inj(1, y.clone()));
    }
    let class_of_root: HashMap<usize, Elem> = members.into_iter().map(|(r, m)| (r, Elem::set(m))).collect();
    let left = (0..n).map(|i| class_of_root[&uf.find(i)].clone()).collect();
    let right = (0..ys.len()).map(|j| class_of_root[&uf.find(n + j)].clone()).collect();
    let mut classes: Vec<Elem> = class_of_root.into_values().collect();
    classes.sort();
    Ok((classes, left, right))
}

/// Pairs `(a, b)` with `f a = g b`, in sorted order.
pub(crate) fn pullback_pairs(f: &FinSetMor, g: &FinSetMor) -> Result<Vec<Elem>> {
    let xs = f.source().enumerate()?;
    let ys = g.source().enumerate()?;
    let fv = f.values()?;
    let gv = g.values()?;
    let mut by_value: HashMap<&Elem, Vec<usize>> = HashMap::new();
    for (j, v) in gv.iter().enumerate() {
        by_value.entry(v).or_default().push(j);
    }
    let mut out = Vec::new();
    for (i, x) in xs.iter().enumerate() {
        if let Some(js) = by_value.get(&fv[i]) {
            for &j in js {
                out.push(Elem::pair(x.clone(), ys[j].clone()));
            }
        }
    }
    Ok(out)
}

fn first(e: &Elem) -> Elem {
    e.as_pair().expect("pair").0.clone()
}

fn second(e: &Elem) -> Elem {
    e.as_pair().expect("pair").1.clone()
}

impl FinSet {
    pub fn object<I: IntoIterator<Item = Elem>>(&self, elems: I) -> FinSetObj {
        FinSetObj::explicit(elems)
    }

    pub fn morphism(&self, src: &FinSetObj, tgt: &FinSetObj, f: impl Fn(&Elem) -> Elem + Send + Sync + 'static) -> Result<FinSetMor> {
        FinSetMor::from_fn(src, tgt, f)
    }
}

impl RegularCategory for FinSet {
    type Obj = FinSetObj;
    type Mor = FinSetMor;

    fn backend_name(&self) -> &'static str {
        "finset"
    }

    fn source<'a>(&self, f: &'a FinSetMor) -> &'a FinSetObj {
        &f.src
    }

    fn target<'a>(&self, f: &'a FinSetMor) -> &'a FinSetObj {
        &f.tgt
    }

    fn identity(&self, x: &FinSetObj) -> FinSetMor {
        match x.elements() {
            Some(xs) => FinSetMor { src: x.clone(), tgt: x.clone(), map: MapRepr::Table(xs.to_vec().into()) },
            None => FinSetMor { src: x.clone(), tgt: x.clone(), map: MapRepr::Rule(Arc::new(|e: &Elem| e.clone())) },
        }
    }

    fn compose(&self, g: &FinSetMor, f: &FinSetMor) -> Result<FinSetMor> {
        self.check_composable(g, f)?;
        match &f.map {
            MapRepr::Table(t) => Ok(FinSetMor {
                src: f.src.clone(),
                tgt: g.tgt.clone(),
                map: MapRepr::Table(t.iter().map(|e| g.apply(e)).collect::<Vec<_>>().into()),
            }),
            MapRepr::Rule(_) => {
                let (f, g2) = (f.clone(), g.clone());
                Ok(FinSetMor {
                    src: f.src.clone(),
                    tgt: g.tgt.clone(),
                    map: MapRepr::Rule(Arc::new(move |e: &Elem| g2.apply(&f.apply(e)))),
                })
            }
        }
    }

    fn terminal(&self) -> FinSetObj {
        FinSetObj::explicit([Elem::atom("*")])
    }

    fn initial(&self) -> FinSetObj {
        FinSetObj::empty()
    }

    fn initial_morphism(&self, x: &FinSetObj) -> Result<FinSetMor> {
        FinSetMor::from_table(&FinSetObj::empty(), x, Vec::new())
    }

    fn product(&self, x: &FinSetObj, y: &FinSetObj) -> Result<Product<FinSet>> {
        let apex = FinSetObj::product_of(x, y);
        let (p1, p2) = match apex.elements() {
            Some(ps) => (
                FinSetMor::from_table_unchecked(&apex, x, ps.iter().map(first).collect()),
                FinSetMor::from_table_unchecked(&apex, y, ps.iter().map(second).collect()),
            ),
            None => (FinSetMor::from_fn(&apex, x, first)?, FinSetMor::from_fn(&apex, y, second)?),
        };
        Ok(Product { apex, p1, p2 })
    }

    fn pair(&self, f: &FinSetMor, g: &FinSetMor) -> Result<FinSetMor> {
        if f.src != g.src {
            return Err(CatError::Endpoint("pairing needs a common source".into()));
        }
        let apex = FinSetObj::product_of(&f.tgt, &g.tgt);
        let (f2, g2) = (f.clone(), g.clone());
        FinSetMor::from_fn(&f.src, &apex, move |e| Elem::pair(f2.apply(e), g2.apply(e)))
    }

    fn pullback(&self, f: &FinSetMor, g: &FinSetMor) -> Result<PullbackResult<FinSet>> {
        if f.tgt != g.tgt {
            return Err(CatError::Endpoint("pullback needs a common codomain".into()));
        }
        let apex = FinSetObj::from_sorted(pullback_pairs(f, g)?);
        let left = FinSetMor::from_fn(&apex, &f.src, first)?;
        let right = FinSetMor::from_fn(&apex, &g.src, second)?;
        Ok(PullbackResult { apex, left, right })
    }

    fn pushout(&self, f: &FinSetMor, g: &FinSetMor) -> Result<PushoutResult<FinSet>> {
        if f.src != g.src {
            return Err(CatError::Endpoint("pushout needs a common domain".into()));
        }
        let (classes, lv, rv) = pushout_classes(f, g)?;
        let apex = FinSetObj::from_sorted(classes);
        let left = FinSetMor::from_table(&f.tgt, &apex, lv)?;
        let right = FinSetMor::from_table(&g.tgt, &apex, rv)?;
        Ok(PushoutResult { apex, left, right })
    }

    fn mediate_pullback(
        &self,
        f: &FinSetMor,
        g: &FinSetMor,
        pb: &PullbackResult<FinSet>,
        a: &FinSetMor,
        b: &FinSetMor,
    ) -> Result<FinSetMor> {
        if a.src != b.src || a.tgt != f.src || b.tgt != g.src {
            return Err(CatError::Endpoint("cone legs do not match the cospan".into()));
        }
        if self.compose(f, a)? != self.compose(g, b)? {
            return Err(CatError::NonCommuting("f∘a differs from g∘b".into()));
        }
        let (a2, b2) = (a.clone(), b.clone());
        let u = FinSetMor::from_fn(&a.src, &pb.apex, move |w| Elem::pair(a2.apply(w), b2.apply(w)))?;
        debug_assert!(self.compose(&pb.left, &u)? == *a);
        Ok(u)
    }

    fn mediate_pushout(
        &self,
        f: &FinSetMor,
        g: &FinSetMor,
        po: &PushoutResult<FinSet>,
        a: &FinSetMor,
        b: &FinSetMor,
    ) -> Result<FinSetMor> {
        if a.tgt != b.tgt || a.src != f.tgt || b.src != g.tgt {
            return Err(CatError::Endpoint("cocone legs do not match the span".into()));
        }
        if self.compose(a, f)? != self.compose(b, g)? {
            return Err(CatError::NonCommuting("a∘f differs from b∘g".into()));
        }
        let (a2, b2) = (a.clone(), b.clone());
        FinSetMor::from_fn(&po.apex, &a.tgt, move |class| {
            let m = &class.as_set().expect("pushout class")[0];
            match m {
                Elem::Inj(0, x) => a2.apply(x),
                Elem::Inj(_, y) => b2.apply(y),
                _ => unreachable!("pushout classes hold tagged members"),
            }
        })
    }

    fn factorize(&self, f: &FinSetMor) -> Result<Factorization<FinSet>> {
        let image = FinSetObj::from_sorted(f.distinct_values()?);
        let epi = FinSetMor { src: f.src.clone(), tgt: image.clone(), map: f.map.clone() };
        let mono = FinSetMor::from_fn(&image, &f.tgt, |e| e.clone())?;
        Ok(Factorization { epi, mono })
    }

    fn is_mono(&self, f: &FinSetMor) -> Result<bool> {
        Ok(f.distinct_values()?.len() == f.values()?.len())
    }

    fn is_regular_epi(&self, f: &FinSetMor) -> Result<bool> {
        Ok(f.distinct_values()?.len() as u128 == f.tgt.len())
    }

    fn solve_factorization(&self, h: &FinSetMor, through: &FinSetMor) -> Result<Option<FinSetMor>> {
        if h.tgt != through.tgt {
            return Err(CatError::Endpoint("solve_factorization needs a common target".into()));
        }
        let bs = through.src.enumerate()?;
        let tv = through.values()?;
        let mut preimage: HashMap<&Elem, &Elem> = HashMap::new();
        for (b, v) in bs.iter().zip(tv.iter()) {
            preimage.entry(v).or_insert(b);
        }
        let mut values = Vec::new();
        for v in h.values()?.iter() {
            match preimage.get(v) {
                Some(b) => values.push((*b).clone()),
                None => return Ok(None),
            }
        }
        FinSetMor::from_table(&h.src, &through.src, values).map(Some)
    }

    fn uncovered(&self, f: &FinSetMor) -> Result<Vec<String>> {
        let hit = f.distinct_values()?;
        match f.tgt.elements() {
            Some(ys) => Ok(ys.iter().filter(|y| hit.binary_search(y).is_err()).map(|y| y.to_string()).collect()),
            None => Ok(vec![format!("{} of {} elements are hit", hit.len(), f.tgt.len())]),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Elem {
        Elem::atom(s)
    }

    fn set(names: &[&str]) -> FinSetObj {
        FinSetObj::explicit(names.iter().map(|n| a(n)))
    }

    fn map(src: &FinSetObj, tgt: &FinSetObj, pairs: &[(&str, &str)]) -> FinSetMor {
        let pairs: Vec<(Elem, Elem)> = pairs.iter().map(|(x, y)| (a(x), a(y))).collect();
        FinSetMor::from_pairs(src, tgt, &pairs).unwrap()
    }

    #[test]
    fn composition_is_pointwise() {
        let x = set(&["1", "2"]);
        let y = set(&["a"]);
        let z = set(&["u"]);
        let f = map(&x, &y, &[("1", "a"), ("2", "a")]);
        let g = map(&y, &z, &[("a", "u")]);
        assert_eq!(FinSet.compose(&g, &f).unwrap(), map(&x, &z, &[("1", "u"), ("2", "u")]));
        assert_eq!(FinSet.compose(&f, &FinSet.identity(&x)).unwrap(), f);
        assert_eq!(FinSet.compose(&FinSet.identity(&y), &f).unwrap(), f);
        assert!(matches!(FinSet.compose(&f, &g), Err(CatError::Composition(_))));
    }

    #[test]
    fn product_cardinality_and_pairing() {
        let x = set(&["1", "2"]);
        let y = set(&["a", "b", "c"]);
        let p = FinSet.product(&x, &y).unwrap();
        assert_eq!(p.apex.len(), 6);
        assert_eq!(FinSet.pair(&p.p1, &p.p2).unwrap(), FinSet.identity(&p.apex));
        let t = FinSet.terminal();
        let q = FinSet.product(&x, &t).unwrap();
        assert!(FinSet.is_iso(&q.p1).unwrap());
    }

    #[test]
    fn pullback_of_constant_maps() {
        let x = set(&["1", "2"]);
        let y = set(&["a"]);
        let c = set(&["c", "d"]);
        let f = map(&x, &c, &[("1", "c"), ("2", "c")]);
        let g = map(&y, &c, &[("a", "c")]);
        let pb = FinSet.pullback(&f, &g).unwrap();
        assert_eq!(pb.apex, FinSetObj::explicit([Elem::pair(a("1"), a("a")), Elem::pair(a("2"), a("a"))]));
        let g2 = map(&y, &c, &[("a", "d")]);
        assert!(FinSet.pullback(&f, &g2).unwrap().apex.is_empty());
    }

    #[test]
    fn pushout_glues_along_the_span() {
        let x = set(&["1", "2"]);
        let y = set(&["a"]);
        let c = set(&["c"]);
        let f = map(&c, &x, &[("c", "1")]);
        let g = map(&c, &y, &[("c", "a")]);
        let po = FinSet.pushout(&f, &g).unwrap();
        assert_eq!(po.apex.len(), 2);
        assert_eq!(po.left.apply(&a("1")), po.right.apply(&a("a")));
        assert_ne!(po.left.apply(&a("2")), po.right.apply(&a("a")));
        let e = FinSet.initial();
        let po = FinSet.pushout(&FinSet.initial_morphism(&x).unwrap(), &FinSet.initial_morphism(&y).unwrap()).unwrap();
        assert_eq!(po.apex.len(), 3);
        assert!(e.is_empty());
    }

    #[test]
    fn factorization_and_lifting() {
        let x = set(&["1", "2", "3"]);
        let y = set(&["a", "b", "c"]);
        let f = map(&x, &y, &[("1", "a"), ("2", "a"), ("3", "b")]);
        let fac = FinSet.factorize(&f).unwrap();
        assert_eq!(FinSet.target(&fac.epi), &set(&["a", "b"]));
        assert_eq!(FinSet.compose(&fac.mono, &fac.epi).unwrap(), f);
        assert!(FinSet.is_mono(&fac.mono).unwrap() && !FinSet.is_regular_epi(&fac.mono).unwrap());
        assert!(!FinSet.is_mono(&f).unwrap());

        let one = set(&["1"]);
        let two = set(&["a", "b"]);
        let c = set(&["c"]);
        let h = map(&one, &c, &[("1", "c")]);
        let through = map(&two, &c, &[("a", "c"), ("b", "c")]);
        let u = FinSet.solve_factorization(&h, &through).unwrap().unwrap();
        assert_eq!(u, map(&one, &two, &[("1", "a")]));
    }

    #[test]
    fn mediators_reproduce_cones() {
        let x = set(&["1", "2"]);
        let y = set(&["a"]);
        let c = set(&["c"]);
        let f = map(&x, &c, &[("1", "c"), ("2", "c")]);
        let g = map(&y, &c, &[("a", "c")]);
        let pb = FinSet.pullback(&f, &g).unwrap();
        let u = FinSet.mediate_pullback(&f, &g, &pb, &pb.left, &pb.right).unwrap();
        assert_eq!(u, FinSet.identity(&pb.apex));
        let bad = map(&x, &x, &[("1", "1"), ("2", "1")]);
        assert!(FinSet.mediate_pullback(&f, &g, &pb, &bad, &FinSet.compose(&g, &FinSet.identity(&y)).unwrap()).is_err());
    }

    #[test]
    fn symbolic_carriers_answer_membership() {
        let x = FinSetObj::explicit(crate::elem::atoms("x", 13));
        let px = FinSetObj::applied(&Shape::pow(), &x);
        assert!(!px.is_explicit());
        assert_eq!(px.len(), 1 << 13);
        assert!(px.contains(&Elem::set([a("x0"), a("x12")])));
        assert!(!px.contains(&Elem::set([a("y")])));
    }
}
