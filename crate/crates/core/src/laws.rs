//! Seeded randomized law suites. Every suite is deterministic for a seed;
//! samples that exceed an enumeration cap are counted as skipped.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::bisim::{Bisim, Limits};
use crate::category::{CatError, Result};
use crate::coalgebra::Coalgebra;
use crate::elem::{atoms, Elem};
use crate::element::{Backend, ElementCategory};
use crate::finset::{FinSet, FinSetObj};
use crate::functor::{FunctorHandle, ShapeFunctor};
use crate::group::FiniteGroup;
use crate::gset::{GSet, GSetObj};
use crate::io::BackendTag;
use crate::random::{self, shape_samples, SuiteRng};
use crate::relation::{Rel, Relation};
use crate::shape::Shape;
use crate::simulation::{good_order_suite, DiscreteOrder, InclusionOrder, OrderSuiteConfig, Simulation};
use crate::topos::{dist_law_suite, AxiomCheck, DistSuiteConfig, Topos};
use crate::vect::{Vect, VectObj};

/// Size caps for generated instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    /// States of generated coalgebras.
    pub states: usize,
    /// Labels (or letters) of generated functors.
    pub labels: usize,
    /// Dimension of generated vector spaces.
    pub dim: usize,
    /// Largest group order used for G-sets.
    pub group: usize,
    /// Largest carrier whose powerset is listed.
    pub pow_carrier: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { states: 8, labels: 3, dim: 5, group: 6, pow_carrier: 12 }
    }
}

impl Caps {
    /// Applies comma-separated `key=value` overrides, e.g. `states=4,dim=3`.
    pub fn with_overrides(mut self, spec: &str) -> std::result::Result<Caps, String> {
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part.split_once('=').ok_or_else(|| format!("expected key=value, got '{part}'"))?;
            let value: usize = value.trim().parse().map_err(|_| format!("cap '{key}' needs a non-negative integer"))?;
            match key.trim() {
                "states" => self.states = value,
                "labels" => self.labels = value,
                "dim" => self.dim = value,
                "group" => self.group = value,
                "pow_carrier" | "pow-carrier" => self.pow_carrier = value,
                other => return Err(format!("unknown cap '{other}'")),
            }
        }
        Ok(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Allegory,
    Maps,
    Monad,
    Kleisli,
    Distributive,
    Equivalence,
    Composition,
    Order,
    Simulation,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Allegory,
        Suite::Maps,
        Suite::Monad,
        Suite::Kleisli,
        Suite::Distributive,
        Suite::Equivalence,
        Suite::Composition,
        Suite::Order,
        Suite::Simulation,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Suite::Allegory => "allegory",
            Suite::Maps => "maps",
            Suite::Monad => "monad",
            Suite::Kleisli => "kleisli",
            Suite::Distributive => "distributive",
            Suite::Equivalence => "equivalence",
            Suite::Composition => "composition",
            Suite::Order => "order",
            Suite::Simulation => "simulation",
        }
    }

    /// Backends the suite runs on. Suites needing power objects skip Vect;
    /// the pointwise suites on finite sets run only on FinSet.
    pub fn backends(&self) -> &'static [BackendTag] {
        const ALL: &[BackendTag] = &[BackendTag::Finset, BackendTag::Gset, BackendTag::Vect];
        const TOPOS: &[BackendTag] = &[BackendTag::Finset, BackendTag::Gset];
        const SETS: &[BackendTag] = &[BackendTag::Finset];
        match self {
            Suite::Allegory | Suite::Maps | Suite::Equivalence | Suite::Composition => ALL,
            Suite::Monad | Suite::Kleisli | Suite::Simulation => TOPOS,
            Suite::Distributive | Suite::Order => SETS,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.as_str() == s)
            .ok_or_else(|| format!("unknown suite '{s}'"))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct LawConfig {
    pub seed: u64,
    /// Random instances per suite and backend.
    pub trials: usize,
    pub caps: Caps,
}

impl Default for LawConfig {
    fn default() -> Self {
        LawConfig { seed: 0, trials: 100, caps: Caps::default() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub backend: String,
    pub seed: u64,
    pub trials: usize,
    pub checks: Vec<AxiomCheck>,
}

impl SuiteReport {
    /// Every check came out as expected: laws expected to hold have no
    /// counterexample and expected failures were exhibited.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(AxiomCheck::as_expected)
    }

    pub fn check(&self, prefix: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom.starts_with(prefix))
    }

    pub fn checked(&self) -> usize {
        self.checks.iter().map(|c| c.checked).sum()
    }

    pub fn skipped(&self) -> usize {
        self.checks.iter().map(|c| c.skipped).sum()
    }
}

fn mix(seed: u64, parts: &[u64]) -> u64 {
    parts.iter().fold(seed ^ 0x9e37_79b9_7f4a_7c15, |h, &p| {
        (h ^ p).wrapping_mul(0x0100_0000_01b3).rotate_left(17)
    })
}

fn backend_index(b: BackendTag) -> u64 {
    match b {
        BackendTag::Finset => 1,
        BackendTag::Gset => 2,
        BackendTag::Vect => 3,
    }
}

/// Groups exercised by the G-set runs, up to the order cap.
pub fn suite_groups(caps: &Caps) -> Vec<FiniteGroup> {
    let groups: Vec<FiniteGroup> = [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric3()]
        .into_iter()
        .filter(|g| g.order() <= caps.group)
        .collect();
    if groups.is_empty() {
        vec![FiniteGroup::trivial()]
    } else {
        groups
    }
}

/// Primes exercised by the Vect runs.
pub const SUITE_PRIMES: [u32; 2] = [2, 3];

/// Runs one suite on one backend. G-set runs split the trials over the
/// groups in [`suite_groups`]; Vect runs over [`SUITE_PRIMES`].
pub fn run(suite: Suite, backend: BackendTag, cfg: &LawConfig) -> Result<SuiteReport> {
    if !suite.backends().contains(&backend) {
        return Err(CatError::Unsupported(format!("suite {suite} does not run on {}", backend.as_str())));
    }
    let suite_index = Suite::ALL.iter().position(|s| *s == suite).unwrap_or(0) as u64;
    let mut checks = Vec::new();
    let ctx_rng = |k: u64| random::rng(mix(cfg.seed, &[suite_index, backend_index(backend), k]));
    match backend {
        BackendTag::Finset => {
            let mut rng = ctx_rng(0);
            merge(&mut checks, run_element(suite, &FinSet, cfg.trials, &cfg.caps, &mut rng)?, "finset");
        }
        BackendTag::Gset => {
            let groups = suite_groups(&cfg.caps);
            let share = cfg.trials.div_ceil(groups.len());
            for (k, g) in groups.into_iter().enumerate() {
                let label = format!("gset({})", g.name());
                let cat = GSet::new(g);
                let mut rng = ctx_rng(k as u64);
                merge(&mut checks, run_element(suite, &cat, share, &cfg.caps, &mut rng)?, &label);
            }
        }
        BackendTag::Vect => {
            let share = cfg.trials.div_ceil(SUITE_PRIMES.len());
            for (k, p) in SUITE_PRIMES.into_iter().enumerate() {
                let cat = Vect::new(p)?;
                let mut rng = ctx_rng(k as u64);
                merge(&mut checks, run_generic(suite, &cat, share, &cfg.caps, &mut rng)?, &format!("vect(p={p})"));
            }
        }
    }
    Ok(SuiteReport { suite: suite.to_string(), backend: backend.as_str().to_string(), seed: cfg.seed, trials: cfg.trials, checks })
}

/// Runs every suite applicable to `backend`.
pub fn run_all(backend: BackendTag, cfg: &LawConfig) -> Result<Vec<SuiteReport>> {
    Suite::ALL
        .into_iter()
        .filter(|s| s.backends().contains(&backend))
        .map(|s| run(s, backend, cfg))
        .collect()
}

fn merge(acc: &mut Vec<AxiomCheck>, more: Vec<AxiomCheck>, label: &str) {
    for mut c in more {
        c.counterexample = c.counterexample.map(|why| format!("[{label}] {why}"));
        match acc.iter_mut().find(|a| a.axiom == c.axiom) {
            Some(a) => {
                a.checked += c.checked;
                a.skipped += c.skipped;
                if a.counterexample.is_none() {
                    a.counterexample = c.counterexample;
                }
            }
            None => acc.push(c),
        }
    }
}

/// Unwraps a setup step of a trial; when it exceeds an enumeration cap the
/// whole trial counts as skipped for the listed checks.
macro_rules! or_skip {
    ($e:expr, $($check:ident),+) => {
        match $e {
            Ok(v) => v,
            Err(CatError::CapExceeded(_)) => {
                $($check.skipped += 1;)+
                continue;
            }
            Err(e) => return Err(e),
        }
    };
}

/// Size bound for trial `t` of `trials`: sizes grow over the run so the
/// first counterexample found is a small one.
fn ramp(t: usize, trials: usize, n: usize) -> usize {
    (1 + t * n / trials.max(1)).min(n)
}

fn run_generic<C: Sampler>(suite: Suite, cat: &C, trials: usize, caps: &Caps, rng: &mut SuiteRng) -> Result<Vec<AxiomCheck>> {
    match suite {
        Suite::Allegory => allegory_suite(cat, trials, caps, rng),
        Suite::Maps => maps_suite(cat, trials, caps, rng),
        Suite::Equivalence => equivalence_suite(cat, trials, caps, rng),
        Suite::Composition => composition_suite(cat, trials, caps, rng),
        other => Err(CatError::Unsupported(format!("suite {other} needs element-level structure"))),
    }
}

fn run_element<C: Sampler + ElementCategory>(suite: Suite, cat: &C, trials: usize, caps: &Caps, rng: &mut SuiteRng) -> Result<Vec<AxiomCheck>> {
    match suite {
        Suite::Monad => monad_suite(cat, trials, caps, rng),
        Suite::Kleisli => kleisli_suite(cat, trials, caps, rng),
        Suite::Simulation => simulation_suite(cat, trials, caps, rng),
        Suite::Distributive => distributive_suite(trials, caps, rng),
        Suite::Order => order_suite(trials, caps, rng),
        other => run_generic(other, cat, trials, caps, rng),
    }
}

/// The functor families the samplers draw coalgebras from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SysKind {
    PowLabels(usize),
    Upair,
    Det(usize),
    Linear(usize),
}

impl SysKind {
    /// Largest relation for which `F R` stays listable.
    fn max_pairs(&self) -> usize {
        match self {
            SysKind::PowLabels(k) => (12 / (*k).max(1)).max(1),
            SysKind::Det(k) if *k >= 3 => 12,
            _ => 16,
        }
    }
}

fn labels(k: usize) -> Vec<Elem> {
    (0..k).map(|i| Elem::atom(&((b'a' + i as u8) as char).to_string())).collect()
}

/// Random generation of objects, maps, relations and coalgebras.
pub trait Sampler: Backend + Sized {
    fn object(&self, rng: &mut SuiteRng, max: usize) -> Self::Obj;
    /// A random morphism, or `None` if there is none (e.g. no equivariant map).
    fn morphism(&self, rng: &mut SuiteRng, src: &Self::Obj, tgt: &Self::Obj) -> Result<Option<Self::Mor>>;
    fn relation(&self, rng: &mut SuiteRng, rel: &Rel<Self>, x: &Self::Obj, y: &Self::Obj) -> Result<Relation<Self>>;
    /// A random relation contained in `within`, generated from at most
    /// `max_gens` pairs (or basis vectors).
    fn subrelation(&self, rng: &mut SuiteRng, rel: &Rel<Self>, within: &Relation<Self>, max_gens: usize) -> Result<Relation<Self>>;
    /// Independent recognition of relations that are graphs of maps.
    fn is_map_oracle(&self, rel: &Rel<Self>, r: &Relation<Self>) -> Result<bool>;
    fn describe(&self, rel: &Rel<Self>, r: &Relation<Self>) -> String;
    /// Object size used by the algebraic suites.
    fn small(&self, caps: &Caps) -> usize;
    fn kinds(&self, caps: &Caps) -> Vec<SysKind>;
    fn coalgebra(&self, rng: &mut SuiteRng, kind: &SysKind, caps: &Caps) -> Result<Option<Coalgebra<Self>>>;
    /// Whether regular epis split, so regular AM bisimulations have AM witnesses.
    fn has_choice(&self) -> bool;
    fn toposal_verdict(&self, _r: &Relation<Self>, _a: &Coalgebra<Self>, _b: &Coalgebra<Self>) -> Option<Result<bool>> {
        None
    }
}

fn element_relation<C: ElementCategory>(cat: &C, rel: &Rel<C>, x: &C::Obj, y: &C::Obj, pairs: Vec<(Elem, Elem)>) -> Result<Relation<C>> {
    let prod = cat.product(x, y)?;
    let elems: Vec<Elem> = pairs.into_iter().map(|(a, b)| Elem::pair(a, b)).collect();
    let closed = cat.closure(&prod.apex, elems);
    let pairs: Vec<(Elem, Elem)> = closed
        .iter()
        .map(|e| {
            let (a, b) = e.as_pair().expect("product elements are pairs");
            (a.clone(), b.clone())
        })
        .collect();
    rel.from_pairs(x, y, &pairs)
}

fn random_element_relation<C: ElementCategory>(cat: &C, rng: &mut SuiteRng, rel: &Rel<C>, x: &C::Obj, y: &C::Obj) -> Result<Relation<C>> {
    let xs = cat.carrier(x).enumerate()?;
    let ys = cat.carrier(y).enumerate()?;
    let density = [0.0, 0.15, 0.3, 0.5, 0.8][rng.gen_range(0..5)];
    let pairs = random::pairs(rng, xs, ys, density);
    element_relation(cat, rel, x, y, pairs)
}

fn element_subrelation<C: ElementCategory>(cat: &C, rng: &mut SuiteRng, rel: &Rel<C>, within: &Relation<C>, max_gens: usize) -> Result<Relation<C>> {
    let mut pool = rel.pairs(within)?;
    pool.shuffle(rng);
    let n = rng.gen_range(0..=pool.len().min(max_gens));
    pool.truncate(n);
    element_relation(cat, rel, within.dom(), within.cod(), pool)
}

fn element_is_map<C: ElementCategory>(cat: &C, rel: &Rel<C>, r: &Relation<C>) -> Result<bool> {
    let mut image: BTreeMap<Elem, usize> = BTreeMap::new();
    for (x, _) in rel.pairs(r)? {
        *image.entry(x).or_default() += 1;
    }
    let xs = cat.carrier(r.dom()).enumerate()?;
    Ok(xs.iter().all(|x| image.get(x) == Some(&1)))
}

fn describe_pairs<C: ElementCategory>(rel: &Rel<C>, r: &Relation<C>) -> String {
    match rel.pairs(r) {
        Ok(ps) => {
            let items: Vec<String> = ps.iter().map(|(a, b)| format!("({a},{b})")).collect();
            format!("{{{}}}", items.join(", "))
        }
        Err(e) => format!("<{e}>"),
    }
}

/// Representatives of the orbits of `x` with their stabilizers.
fn orbit_reps<C: ElementCategory + Backend>(cat: &C, x: &C::Obj) -> Result<Vec<(Elem, Vec<usize>)>> {
    let order = cat.group_order();
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for e in cat.carrier(x).enumerate()? {
        if seen.contains(e) {
            continue;
        }
        seen.extend((0..order).map(|g| cat.act(x, g, e)));
        out.push((e.clone(), (0..order).filter(|&g| cat.act(x, g, e) == *e).collect()));
    }
    Ok(out)
}

/// A random equivariant function, chosen orbit by orbit among targets fixed
/// by the representative's stabilizer.
fn equivariant_function<C: ElementCategory + Backend>(
    cat: &C,
    rng: &mut SuiteRng,
    src: &C::Obj,
    tgt: &C::Obj,
    candidates: &[Elem],
) -> Result<Option<BTreeMap<Elem, Elem>>> {
    let order = cat.group_order();
    let mut table = BTreeMap::new();
    for (rep, stab) in orbit_reps(cat, src)? {
        let fixed: Vec<&Elem> = candidates.iter().filter(|t| stab.iter().all(|&g| cat.act(tgt, g, t) == **t)).collect();
        let Some(t) = fixed.choose(rng) else {
            return Ok(None);
        };
        for g in 0..order {
            table.insert(cat.act(src, g, &rep), cat.act(tgt, g, t));
        }
    }
    Ok(Some(table))
}

fn element_coalgebra<C: ElementCategory + Backend>(cat: &C, rng: &mut SuiteRng, functor: ShapeFunctor, x: &C::Obj) -> Result<Option<Coalgebra<C>>> {
    let shape = functor.shape_ref().clone();
    let handle: FunctorHandle<C> = Arc::new(functor);
    let fx = cat.apply_shape(&shape, x);
    let xs = cat.carrier(x).enumerate()?.to_vec();
    let all = shape.enumerate(&xs, 4096)?;
    let Some(table) = equivariant_function(cat, rng, x, &fx, &all)? else {
        return Ok(None);
    };
    Coalgebra::from_fn(cat, handle, x, move |e| table[e].clone()).map(Some)
}

fn shape_functor(kind: &SysKind) -> ShapeFunctor {
    match kind {
        SysKind::PowLabels(k) => ShapeFunctor::pow_labels(&labels(*k)),
        SysKind::Upair => ShapeFunctor::upair(),
        SysKind::Det(k) => ShapeFunctor::det(&labels(*k)),
        SysKind::Linear(_) => unreachable!("linear systems live on Vect"),
    }
}

impl Sampler for FinSet {
    fn object(&self, rng: &mut SuiteRng, max: usize) -> FinSetObj {
        let prefix = ["x", "y", "z", "w"].choose(rng).expect("non-empty");
        self.object(atoms(prefix, rng.gen_range(0..=max)))
    }

    fn morphism(&self, rng: &mut SuiteRng, src: &FinSetObj, tgt: &FinSetObj) -> Result<Option<crate::finset::FinSetMor>> {
        let xs = src.enumerate()?;
        let ys = tgt.enumerate()?;
        if ys.is_empty() && !xs.is_empty() {
            return Ok(None);
        }
        let table = random::function_table(rng, xs, ys);
        crate::finset::FinSetMor::from_table(src, tgt, table).map(Some)
    }

    fn relation(&self, rng: &mut SuiteRng, rel: &Rel<Self>, x: &FinSetObj, y: &FinSetObj) -> Result<Relation<Self>> {
        random_element_relation(self, rng, rel, x, y)
    }

    fn subrelation(&self, rng: &mut SuiteRng, rel: &Rel<Self>, within: &Relation<Self>, max_gens: usize) -> Result<Relation<Self>> {
        element_subrelation(self, rng, rel, within, max_gens)
    }

    fn is_map_oracle(&self, rel: &Rel<Self>, r: &Relation<Self>) -> Result<bool> {
        element_is_map(self, rel, r)
    }

    fn describe(&self, rel: &Rel<Self>, r: &Relation<Self>) -> String {
        describe_pairs(rel, r)
    }

    fn small(&self, caps: &Caps) -> usize {
        caps.states.min(4)
    }

    fn kinds(&self, caps: &Caps) -> Vec<SysKind> {
        let k = caps.labels.clamp(1, 2);
        vec![SysKind::PowLabels(1), SysKind::PowLabels(k), SysKind::Upair, SysKind::Det(k)]
    }

    fn coalgebra(&self, rng: &mut SuiteRng, kind: &SysKind, caps: &Caps) -> Result<Option<Coalgebra<Self>>> {
        let n = rng.gen_range(1..=caps.states.clamp(1, 4));
        let x = self.object(atoms(["s", "t", "u"].choose(rng).expect("non-empty"), n));
        match kind {
            SysKind::PowLabels(k) => {
                let ls = labels(*k);
                let density = rng.gen_range(0.15..0.45);
                let ts = random::transitions(rng, x.enumerate()?, &ls, density);
                Coalgebra::lts(self, &x, &ls, &ts).map(Some)
            }
            other => element_coalgebra(self, rng, shape_functor(other), &x),
        }
    }

    fn has_choice(&self) -> bool {
        true
    }

    fn toposal_verdict(&self, r: &Relation<Self>, a: &Coalgebra<Self>, b: &Coalgebra<Self>) -> Option<Result<bool>> {
        Some(Topos::new(*self).is_toposal(r, a, b).map(|w| w.verdict))
    }
}

/// Subgroups of a small group, by brute force over subsets containing the
/// identity.
fn subgroups(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        if !members.contains(&g.identity()) {
            continue;
        }
        if members.iter().all(|&a| members.iter().all(|&b| mask & (1 << g.mul(a, b)) != 0)) {
            out.push(members);
        }
    }
    out
}

/// A random G-set of at most `max` elements: a disjoint union of coset
/// spaces `G/H`.
fn random_gset(cat: &GSet, rng: &mut SuiteRng, max: usize, prefix: &str) -> GSetObj {
    let group = cat.group().clone();
    let n = group.order();
    let subs = subgroups(&group);
    let target = rng.gen_range(0..=max);
    // Each orbit is a list of cosets, each coset a sorted list of group indices.
    let mut orbits: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut size = 0;
    loop {
        let fitting: Vec<&Vec<usize>> = subs.iter().filter(|h| size + n / h.len() <= target).collect();
        let Some(h) = fitting.choose(rng) else { break };
        let mut cosets: Vec<Vec<usize>> = (0..n)
            .map(|a| {
                let mut c: Vec<usize> = h.iter().map(|&b| group.mul(a, b)).collect();
                c.sort_unstable();
                c
            })
            .collect();
        cosets.sort();
        cosets.dedup();
        size += cosets.len();
        orbits.push(cosets);
    }
    let mut names = Vec::new();
    let mut index: BTreeMap<Elem, (usize, usize)> = BTreeMap::new();
    for (o, cosets) in orbits.iter().enumerate() {
        for c in 0..cosets.len() {
            let e = Elem::atom(&format!("{prefix}{}", names.len()));
            index.insert(e.clone(), (o, c));
            names.push(e);
        }
    }
    let start: Vec<usize> = orbits.iter().scan(0, |acc, o| {
        let s = *acc;
        *acc += o.len();
        Some(s)
    })
    .collect();
    let act = |g: usize, e: &Elem| {
        let (o, c) = index[e];
        let mut moved: Vec<usize> = orbits[o][c].iter().map(|&x| group.mul(g, x)).collect();
        moved.sort_unstable();
        let k = orbits[o].iter().position(|d| *d == moved).expect("cosets are permuted");
        names[start[o] + k].clone()
    };
    cat.object(names.clone(), act).expect("coset spaces are G-sets")
}

impl Sampler for GSet {
    fn object(&self, rng: &mut SuiteRng, max: usize) -> GSetObj {
        let prefix = *["x", "y", "z", "w"].choose(rng).expect("non-empty");
        random_gset(self, rng, max, prefix)
    }

    fn morphism(&self, rng: &mut SuiteRng, src: &GSetObj, tgt: &GSetObj) -> Result<Option<crate::gset::GSetMor>> {
        let ys = tgt.carrier().enumerate()?.to_vec();
        match equivariant_function(self, rng, src, tgt, &ys)? {
            Some(table) => self.morphism_from_fn(src, tgt, move |e| table[e].clone()).map(Some),
            None => Ok(None),
        }
    }

    fn relation(&self, rng: &mut SuiteRng, rel: &Rel<Self>, x: &GSetObj, y: &GSetObj) -> Result<Relation<Self>> {
        random_element_relation(self, rng, rel, x, y)
    }

    fn subrelation(&self, rng: &mut SuiteRng, rel: &Rel<Self>, within: &Relation<Self>, max_gens: usize) -> Result<Relation<Self>> {
        element_subrelation(self, rng, rel, within, max_gens)
    }

    fn is_map_oracle(&self, rel: &Rel<Self>, r: &Relation<Self>) -> Result<bool> {
        element_is_map(self, rel, r)
    }

    fn describe(&self, rel: &Rel<Self>, r: &Relation<Self>) -> String {
        describe_pairs(rel, r)
    }

    fn small(&self, caps: &Caps) -> usize {
        caps.states.min(6)
    }

    fn kinds(&self, caps: &Caps) -> Vec<SysKind> {
        vec![SysKind::Upair, SysKind::PowLabels(1), SysKind::PowLabels(caps.labels.clamp(1, 2))]
    }

    fn coalgebra(&self, rng: &mut SuiteRng, kind: &SysKind, caps: &Caps) -> Result<Option<Coalgebra<Self>>> {
        // Redraw empty carriers and carriers without an equivariant structure.
        for _ in 0..8 {
            let prefix = *["s", "t", "u"].choose(rng).expect("non-empty");
            let x = random_gset(self, rng, caps.states.clamp(1, 4), prefix);
            if x.carrier().is_empty() {
                continue;
            }
            if let Some(c) = element_coalgebra(self, rng, shape_functor(kind), &x)? {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }

    fn has_choice(&self) -> bool {
        self.group().is_trivial()
    }

    fn toposal_verdict(&self, r: &Relation<Self>, a: &Coalgebra<Self>, b: &Coalgebra<Self>) -> Option<Result<bool>> {
        Some(Topos::new(self.clone()).is_toposal(r, a, b).map(|w| w.verdict))
    }
}

impl Sampler for Vect {
    fn object(&self, rng: &mut SuiteRng, max: usize) -> VectObj {
        self.space(rng.gen_range(0..=max))
    }

    fn morphism(&self, rng: &mut SuiteRng, src: &VectObj, tgt: &VectObj) -> Result<Option<crate::vect::VectMor>> {
        let m = random::matrix(rng, self.prime(), tgt.dim(), src.dim());
        self.morphism(*src, *tgt, m).map(Some)
    }

    fn relation(&self, rng: &mut SuiteRng, rel: &Rel<Self>, x: &VectObj, y: &VectObj) -> Result<Relation<Self>> {
        let n = x.dim() + y.dim();
        let k = rng.gen_range(0..=n);
        rel.from_basis(x, y, &random::matrix(rng, self.prime(), n, k))
    }

    fn subrelation(&self, rng: &mut SuiteRng, rel: &Rel<Self>, within: &Relation<Self>, max_gens: usize) -> Result<Relation<Self>> {
        let basis = rel.basis(within).clone();
        let k = rng.gen_range(0..=basis.cols().min(max_gens));
        let combo = random::matrix(rng, self.prime(), basis.cols(), k);
        rel.from_basis(within.dom(), within.cod(), &basis.mul(&combo))
    }

    /// A subspace of `X ⊕ Y` is a graph iff its projection to `X` is bijective.
    fn is_map_oracle(&self, rel: &Rel<Self>, r: &Relation<Self>) -> Result<bool> {
        let basis = rel.basis(r);
        let dx = r.dom().dim();
        let top = basis.slice_rows(0, dx);
        Ok(basis.rank() == dx && top.rank() == dx)
    }

    fn describe(&self, rel: &Rel<Self>, r: &Relation<Self>) -> String {
        format!("span{:?}", rel.basis(r).transpose().to_rows())
    }

    fn small(&self, caps: &Caps) -> usize {
        caps.dim.min(3)
    }

    fn kinds(&self, caps: &Caps) -> Vec<SysKind> {
        (1..=caps.labels.clamp(1, 2)).map(SysKind::Linear).collect()
    }

    fn coalgebra(&self, rng: &mut SuiteRng, kind: &SysKind, caps: &Caps) -> Result<Option<Coalgebra<Self>>> {
        let SysKind::Linear(k) = kind else {
            return Err(CatError::Unsupported("Vect carries linear systems only".into()));
        };
        let n = rng.gen_range(1..=caps.dim.clamp(1, 4));
        let p = self.prime();
        let output: Vec<u32> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        let matrices: Vec<_> = (0..*k).map(|_| random::matrix(rng, p, n, n)).collect();
        Coalgebra::weighted(self, labels(*k), &output, &matrices).map(Some)
    }

    fn has_choice(&self) -> bool {
        true
    }
}

fn allegory_suite<C: Sampler>(cat: &C, trials: usize, caps: &Caps, rng: &mut SuiteRng) -> Result<Vec<AxiomCheck>> {
    let rel = Rel::new(cat.clone());
    let mut assoc = AxiomCheck::new("associativity: (r;s);t = r;(s;t)", true);
    let mut unit = AxiomCheck::new("unit: id;r = r = r;id", true);
    let mut involution = AxiomCheck::new("dagger involution: r†† = r", true);
    let mut reverse = AxiomCheck::new("dagger reverses composition: (r;s)† = s†;r†", true);
    let mut monotone = AxiomCheck::new("dagger is monotone", true);
    let mut glb = AxiomCheck::new("meet is the greatest lower bound", true);
    let mut modular = AxiomCheck::new("modular law: (r;s) ∩ t ⊑ (r ∩ t;s†);s", true);
    let max = cat.small(caps);
    let show = |r: &Relation<C>| cat.describe(&rel, r);
    for trial in 0..trials {
        let n = ramp(trial, trials, max);
        let x = cat.object(rng, n);
        let y = cat.object(rng, n);
        let z = cat.object(rng, n);
        let w = cat.object(rng, n);
        let r = cat.relation(rng, &rel, &x, &y)?;
        let r2 = cat.relation(rng, &rel, &x, &y)?;
        let q = cat.relation(rng, &rel, &x, &y)?;
        let s = cat.relation(rng, &rel, &y, &z)?;
        let t = cat.relation(rng, &rel, &z, &w)?;
        let t2 = cat.relation(rng, &rel, &x, &z)?;
        assoc.record((|| {
            let lhs = rel.compose(&rel.compose(&r, &s)?, &t)?;
            let rhs = rel.compose(&r, &rel.compose(&s, &t)?)?;
            Ok((lhs != rhs).then(|| format!("r = {}, s = {}, t = {}", show(&r), show(&s), show(&t))))
        })())?;
        unit.record((|| {
            let left = rel.compose(&rel.identity(&x)?, &r)?;
            let right = rel.compose(&r, &rel.identity(&y)?)?;
            Ok((left != r || right != r).then(|| format!("r = {}", show(&r))))
        })())?;
        involution.record((|| {
            let back = rel.dagger(&rel.dagger(&r)?)?;
            Ok((back != r).then(|| format!("r = {}", show(&r))))
        })())?;
        reverse.record((|| {
            let lhs = rel.dagger(&rel.compose(&r, &s)?)?;
            let rhs = rel.compose(&rel.dagger(&s)?, &rel.dagger(&r)?)?;
            Ok((lhs != rhs).then(|| format!("r = {}, s = {}", show(&r), show(&s))))
        })())?;
        let m = rel.meet(&r, &r2)?;
        monotone.record((|| {
            let ok = rel.leq(&rel.dagger(&m)?, &rel.dagger(&r)?)?;
            Ok((!ok).then(|| format!("r ∩ r' = {} but its converse is not below r† for r = {}", show(&m), show(&r))))
        })())?;
        glb.record((|| {
            if !rel.leq(&m, &r)? || !rel.leq(&m, &r2)? {
                return Ok(Some(format!("r ∩ r' = {} is not below r = {} and r' = {}", show(&m), show(&r), show(&r2))));
            }
            for cand in [q.clone(), rel.meet(&q, &r)?, rel.empty(&x, &y)?, m.clone()] {
                let below_both = rel.leq(&cand, &r)? && rel.leq(&cand, &r2)?;
                if below_both != rel.leq(&cand, &m)? {
                    return Ok(Some(format!("q = {} with r = {}, r' = {}", show(&cand), show(&r), show(&r2))));
                }
            }
            Ok(None)
        })())?;
        modular.record((|| {
            let ok = rel.check_modular_law(&r, &s, &t2)?;
            Ok((!ok).then(|| format!("r = {}, s = {}, t = {}", show(&r), show(&s), show(&t2))))
        })())?;
    }
    Ok(vec![assoc, unit, involution, reverse, monotone, glb, modular])
}

fn maps_suite<C: Sampler>(cat: &C, trials: usize, caps: &Caps, rng: &mut SuiteRng) -> Result<Vec<AxiomCheck>> {
    let rel = Rel::new(cat.clone());
    let mut graph_map = AxiomCheck::new("graphs are maps: as_map(graph f) = f", true);
    let mut entire_simple = AxiomCheck::new("graphs are entire and simple: id ⊑ g;g† and g†;g ⊑ id", true);
    let mut recognition = AxiomCheck::new("map recognition agrees with total single-valuedness", true);
    let mut functorial = AxiomCheck::new("graph is functorial: graph(g∘f) = graph f;graph g", true);
    let mut cograph = AxiomCheck::new("cograph f = (graph f)†", true);
    let mut tabulation = AxiomCheck::new("tabulations recompose: f†;g = r", true);
    let max = cat.small(caps);
    let show = |r: &Relation<C>| cat.describe(&rel, r);
    for trial in 0..trials {
        let n = ramp(trial, trials, max);
        let x = cat.object(rng, n);
        let y = cat.object(rng, n);
        let z = cat.object(rng, n);
        let r = cat.relation(rng, &rel, &x, &y)?;
        recognition.record((|| {
            let found = rel.as_map(&r)?;
            let oracle = cat.is_map_oracle(&rel, &r)?;
            if found.is_some() != oracle {
                return Ok(Some(format!("r = {}: as_map found {}, oracle says {oracle}", show(&r), found.is_some())));
            }
            if let Some(f) = found {
                if rel.graph(&f)? != r {
                    return Ok(Some(format!("r = {}: the recovered map has a different graph", show(&r))));
                }
            }
            Ok(None)
        })())?;
        tabulation.record((|| {
            let back = rel.recompose(&rel.tabulate(&r)?)?;
            Ok((back != r).then(|| format!("r = {}", show(&r))))
        })())?;
        let Some(f) = cat.morphism(rng, &x, &y)? else { continue };
        let gf = rel.graph(&f)?;
        graph_map.record((|| {
            let back = rel.as_map(&gf)?;
            Ok((back.as_ref() != Some(&f)).then(|| format!("f = {f:?}")))
        })())?;
        entire_simple.record((|| {
            let entire = rel.leq(&rel.identity(&x)?, &rel.compose(&gf, &rel.dagger(&gf)?)?)?;
            let simple = rel.leq(&rel.compose(&rel.dagger(&gf)?, &gf)?, &rel.identity(&y)?)?;
            Ok((!(entire && simple)).then(|| format!("f = {f:?}: entire {entire}, simple {simple}")))
        })())?;
        cograph.record((|| {
            let ok = rel.cograph(&f)? == rel.dagger(&gf)?;
            Ok((!ok).then(|| format!("f = {f:?}")))
        })())?;
        let Some(g) = cat.morphism(rng, &y, &z)? else { continue };
        functorial.record((|| {
            let lhs = rel.graph(&cat.compose(&g, &f)?)?;
            let rhs = rel.compose(&gf, &rel.graph(&g)?)?;
            Ok((lhs != rhs).then(|| format!("f = {f:?}, g = {g:?}")))
        })())?;
    }
    Ok(vec![graph_map, entire_simple, recognition, functorial, cograph, tabulation])
}

/// A relation between two coalgebras for the equivalence and composition
/// suites: the bisimilarity, part of it, or random pairs, kept small enough
/// for `F R` to stay listable.
fn system_relation<C: Sampler>(
    cat: &C,
    rng: &mut SuiteRng,
    bisim: &Bisim<C>,
    kind: &SysKind,
    a: &Coalgebra<C>,
    b: &Coalgebra<C>,
) -> Result<Relation<C>> {
    let rel = bisim.rel();
    let cap = kind.max_pairs();
    match rng.gen_range(0..4) {
        0 => {
            let full = bisim.bisimilarity(a, b)?;
            cat.subrelation(rng, rel, &full, usize::MAX)
        }
        1 => {
            let full = bisim.bisimilarity(a, b)?;
            cat.subrelation(rng, rel, &full, cap)
        }
        _ => {
            let full = rel.full(a.carrier(), b.carrier())?;
            cat.subrelation(rng, rel, &full, cap)
        }
    }
}

fn coalgebra_pair<C: Sampler>(cat: &C, rng: &mut SuiteRng, kind: &SysKind, caps: &Caps) -> Result<Option<(Coalgebra<C>, Coalgebra<C>)>> {
    let Some(a) = cat.coalgebra(rng, kind, caps)? else { return Ok(None) };
    if rng.gen_bool(0.3) {
        return Ok(Some((a.clone(), a)));
    }
    Ok(cat.coalgebra(rng, kind, caps)?.map(|b| (a, b)))
}

/// Suites only read verdicts, so large witnesses are left unmaterialized.
fn suite_bisim<C: Sampler>(cat: &C) -> Bisim<C> {
    Bisim::with_limits(cat.clone(), Limits { max_fiber: 1 << 10, ..Limits::default() })
}

fn equivalence_suite<C: Sampler>(cat: &C, trials: usize, caps: &Caps, rng: &mut SuiteRng) -> Result<Vec<AxiomCheck>> {
    let bisim = suite_bisim(cat);
    let rel = bisim.rel();
    let mut hj = AxiomCheck::new("regular AM iff HJ", true);
    let mut closure = AxiomCheck::new("regular AM implies r ⊑ behavioural closure", true);
    let mut behavioural = AxiomCheck::new("behavioural equivalence implies regular AM (F covers pullbacks)", true);
    let mut choice = AxiomCheck::new("with choice: regular AM iff AM", true);
    let mut toposal = AxiomCheck::new("toposal iff regular AM", true);
    let mut greatest = AxiomCheck::new("bisimilarity is the greatest regular AM bisimulation", true);
    let kinds = cat.kinds(caps);
    let show = |r: &Relation<C>| cat.describe(rel, r);
    for _ in 0..trials {
        let kind = kinds.choose(rng).expect("non-empty").clone();
        let Some((a, b)) = or_skip!(coalgebra_pair(cat, rng, &kind, caps), hj, greatest) else { continue };
        let r = or_skip!(system_relation(cat, rng, &bisim, &kind, &a, &b), hj, greatest);
        let regular = or_skip!(bisim.is_regular_am(&r, &a, &b), hj, greatest).verdict;
        let ctx = |extra: String| format!("{:?} systems, r = {}: {extra}", kind, show(&r));
        hj.record((|| {
            let h = bisim.is_hj(&r, &a, &b)?.verdict;
            Ok((h != regular).then(|| ctx(format!("regular {regular}, hj {h}"))))
        })())?;
        if regular {
            closure.record((|| match bisim.behavioural_closure(&r, &a, &b)? {
                Some(cl) if rel.leq(&r, &cl.relation)? => Ok(None),
                Some(cl) => Ok(Some(ctx(format!("closure {} misses pairs", show(&cl.relation))))),
                None => Ok(Some(ctx("no closure cospan".into()))),
            })())?;
        }
        if a.functor().flags(cat).covers_pullbacks {
            behavioural.record((|| {
                let beh = bisim.is_behavioural_equivalence(&r, &a, &b)?.verdict;
                Ok((beh && !regular).then(|| ctx("behavioural but not regular".into())))
            })())?;
        }
        if cat.has_choice() {
            choice.record((|| {
                let am = bisim.am_witness(&r, &a, &b)?.is_some();
                Ok((am != regular).then(|| ctx(format!("regular {regular}, am {am}"))))
            })())?;
        }
        if let Some(v) = cat.toposal_verdict(&r, &a, &b) {
            toposal.record(v.map(|t| (t != regular).then(|| ctx(format!("regular {regular}, toposal {t}")))))?;
        }
        greatest.record((|| {
            let full = bisim.bisimilarity(&a, &b)?;
            if !bisim.is_regular_am(&full, &a, &b)?.verdict {
                return Ok(Some(ctx(format!("bisimilarity {} is not a bisimulation", show(&full)))));
            }
            Ok((regular && !rel.leq(&r, &full)?).then(|| ctx("a bisimulation escapes the bisimilarity".into())))
        })())?;
    }
    let mut checks = vec![hj, closure, behavioural, greatest];
    if cat.has_choice() {
        checks.push(choice);
    }
    if toposal.checked + toposal.skipped > 0 {
        checks.push(toposal);
    }
    Ok(checks)
}

fn composition_suite<C: Sampler>(cat: &C, trials: usize, caps: &Caps, rng: &mut SuiteRng) -> Result<Vec<AxiomCheck>> {
    let bisim = suite_bisim(cat);
    let rel = bisim.rel();
    let mut composite = AxiomCheck::new("composites of regular AM bisimulations are regular AM bisimulations", true);
    let mut converse = AxiomCheck::new("converses of regular AM bisimulations are regular AM bisimulations", true);
    let mut diagonal = AxiomCheck::new("the diagonal is a regular AM bisimulation", true);
    let mut graphs = AxiomCheck::new("graph f is an AM bisimulation iff f is a homomorphism", true);
    let kinds = cat.kinds(caps);
    let show = |r: &Relation<C>| cat.describe(rel, r);
    for _ in 0..trials {
        let kind = kinds.choose(rng).expect("non-empty").clone();
        let Some((a, b)) = or_skip!(coalgebra_pair(cat, rng, &kind, caps), composite, converse) else { continue };
        let c = if rng.gen_bool(0.3) {
            b.clone()
        } else {
            match or_skip!(cat.coalgebra(rng, &kind, caps), composite, converse) {
                Some(c) => c,
                None => continue,
            }
        };
        let bisimulation = |x: &Coalgebra<C>, y: &Coalgebra<C>, rng: &mut SuiteRng| -> Result<Relation<C>> {
            let r = system_relation(cat, rng, &bisim, &kind, x, y)?;
            if bisim.is_regular_am(&r, x, y)?.verdict {
                Ok(r)
            } else {
                bisim.bisimilarity(x, y)
            }
        };
        let r1 = or_skip!(bisimulation(&a, &b, rng), composite, converse);
        let r2 = or_skip!(bisimulation(&b, &c, rng), composite, converse);
        if a.functor().flags(cat).covers_pullbacks {
            composite.record((|| {
                let v = bisim.compose_bisimulations(&r1, &r2, &a, &b, &c)?.verdict;
                Ok((!v).then(|| format!("{kind:?}: r1 = {}, r2 = {}", show(&r1), show(&r2))))
            })())?;
        }
        converse.record((|| {
            let v = bisim.is_regular_am(&rel.dagger(&r1)?, &b, &a)?.verdict;
            Ok((!v).then(|| format!("{kind:?}: r = {}", show(&r1))))
        })())?;
        diagonal.record((|| {
            let v = bisim.is_regular_am(&rel.identity(a.carrier())?, &a, &a)?.verdict;
            Ok((!v).then(|| format!("{kind:?}: {a:?}")))
        })())?;
        if let Some(f) = cat.morphism(rng, a.carrier(), b.carrier())? {
            graphs.record((|| {
                let (hom, am) = bisim.graph_bisim_iff_hom(&f, &a, &b)?;
                Ok((hom != am).then(|| format!("{kind:?}: f = {f:?}, homomorphism {hom}, graph bisimulation {am}")))
            })())?;
        }
    }
    Ok(vec![composite, converse, diagonal, graphs])
}

/// Elements of `shape(X)` to test on.
fn samples(rng: &mut SuiteRng, shape: &Shape, xs: &[Elem], exhaustive: u128, n: usize) -> Vec<Elem> {
    shape_samples(rng, shape, xs, exhaustive, n, 3)
}

fn monad_suite<C: Sampler + ElementCategory>(cat: &C, trials: usize, caps: &Caps, rng: &mut SuiteRng) -> Result<Vec<AxiomCheck>> {
    let topos = Topos::new(cat.clone());
    let pow = Shape::pow();
    let pp = Shape::compose(&pow, &pow);
    let ppp = Shape::compose(&pow, &pp);
    let mut left_unit = AxiomCheck::new("monad left unit: μ ∘ η_𝒫 = id", true);
    let mut right_unit = AxiomCheck::new("monad right unit: μ ∘ 𝒫η = id", true);
    let mut assoc = AxiomCheck::new("monad associativity: μ ∘ μ_𝒫 = μ ∘ 𝒫μ", true);
    let mut eta_nat = AxiomCheck::new("η is natural", true);
    let mut mu_nat = AxiomCheck::new("μ is natural", true);
    let mut fibers = AxiomCheck::new("pseudo-inverse: x ∈ f†(f x)", true);
    let mut mono_inv = AxiomCheck::new("pseudo-inverse of a mono: f† ∘ f = η", true);
    let mut epi_inv = AxiomCheck::new("pseudo-inverse of an epi: 𝒫f ∘ f† = η", true);
    let mut retraction = AxiomCheck::new("mono splitting: split ∘ 𝒫f = id", true);
    let mut section = AxiomCheck::new("epi splitting: 𝒫f ∘ split = id", true);
    let mut monos = AxiomCheck::new("𝒫 preserves monos", true);
    let mut epis = AxiomCheck::new("𝒫 preserves regular epis", true);
    let limit = caps.pow_carrier.min(12);
    // Every carrier size up to 3 first, then random ones up to the cap.
    let sizes: Vec<usize> = (0..=3usize.min(limit)).chain((0..trials).map(|_| rng.gen_range(0..=limit.min(6)))).collect();
    for (round, n) in sizes.into_iter().enumerate() {
        let exhaustive = round <= 3;
        let x = cat.object(rng, n);
        let xs = cat.carrier(&x).enumerate()?.to_vec();
        let budget: u128 = if exhaustive { 4096 } else { 64 };
        let px = topos.pow(&x);
        let eta = topos.eta(&x)?;
        let mu = topos.mu(&x)?;
        let eta_p = topos.eta(&px)?;
        let p_eta = topos.pow_map(&eta)?;
        let mu_p = topos.mu(&px)?;
        let p_mu = topos.pow_map(&mu)?;
        for s in samples(rng, &pow, &xs, budget, 24) {
            left_unit.record(Ok((cat.apply(&mu, &cat.apply(&eta_p, &s)) != s).then(|| format!("S = {s}"))))?;
            right_unit.record(Ok((cat.apply(&mu, &cat.apply(&p_eta, &s)) != s).then(|| format!("S = {s}"))))?;
        }
        for u in samples(rng, &ppp, &xs, budget.min(256), 24) {
            let lhs = cat.apply(&mu, &cat.apply(&mu_p, &u));
            let rhs = cat.apply(&mu, &cat.apply(&p_mu, &u));
            assoc.record(Ok((lhs != rhs).then(|| format!("U = {u}: {lhs} vs {rhs}"))))?;
        }
        let y = cat.object(rng, n.max(1));
        let Some(f) = cat.morphism(rng, &x, &y)? else { continue };
        let eta_y = topos.eta(&y)?;
        let mu_y = topos.mu(&y)?;
        let pf = topos.pow_map(&f)?;
        let ppf = topos.pow_map(&pf)?;
        for e in &xs {
            let lhs = cat.apply(&pf, &cat.apply(&eta, e));
            let rhs = cat.apply(&eta_y, &cat.apply(&f, e));
            eta_nat.record(Ok((lhs != rhs).then(|| format!("x = {e}: {lhs} vs {rhs}"))))?;
        }
        for u in samples(rng, &pp, &xs, budget.min(256), 24) {
            let lhs = cat.apply(&pf, &cat.apply(&mu, &u));
            let rhs = cat.apply(&mu_y, &cat.apply(&ppf, &u));
            mu_nat.record(Ok((lhs != rhs).then(|| format!("U = {u}: {lhs} vs {rhs}"))))?;
        }
        let fac = cat.factorize(&f)?;
        for (g, is_general) in [(f.clone(), true), (fac.mono.clone(), false), (fac.epi.clone(), false)] {
            let src = cat.source(&g).clone();
            let tgt = cat.target(&g).clone();
            let gs = cat.carrier(&src).enumerate()?.to_vec();
            let ts = cat.carrier(&tgt).enumerate()?.to_vec();
            let dag = topos.pseudo_inverse(&g)?;
            let pg = topos.pow_map(&g)?;
            let split = topos.pow_splitting(&g)?;
            if is_general {
                for e in &gs {
                    let fiber = cat.apply(&dag, &cat.apply(&g, e));
                    fibers.record(Ok((!fiber.set_contains(e)).then(|| format!("x = {e}, f†(f x) = {fiber}"))))?;
                }
            }
            if cat.is_mono(&g)? {
                for e in &gs {
                    let back = cat.apply(&dag, &cat.apply(&g, e));
                    mono_inv.record(Ok((back != Elem::set([e.clone()])).then(|| format!("x = {e}, f†(f x) = {back}"))))?;
                }
                for s in samples(rng, &pow, &gs, budget, 24) {
                    let back = cat.apply(&split, &cat.apply(&pg, &s));
                    retraction.record(Ok((back != s).then(|| format!("S = {s}, got {back}"))))?;
                }
                if gs.len() <= limit {
                    monos.record(cat.is_mono(&pg).map(|ok| (!ok).then(|| format!("𝒫 of the mono {g:?}"))))?;
                } else {
                    monos.skipped += 1;
                }
            }
            if cat.is_regular_epi(&g)? {
                for t in &ts {
                    let img = cat.apply(&pg, &cat.apply(&dag, t));
                    epi_inv.record(Ok((img != Elem::set([t.clone()])).then(|| format!("y = {t}, 𝒫f(f† y) = {img}"))))?;
                }
                for s in samples(rng, &pow, &ts, budget, 24) {
                    let back = cat.apply(&pg, &cat.apply(&split, &s));
                    section.record(Ok((back != s).then(|| format!("T = {s}, got {back}"))))?;
                }
                if gs.len() <= limit {
                    epis.record(cat.is_regular_epi(&pg).map(|ok| (!ok).then(|| format!("𝒫 of the epi {g:?}"))))?;
                } else {
                    epis.skipped += 1;
                }
            }
        }
    }
    Ok(vec![left_unit, right_unit, assoc, eta_nat, mu_nat, fibers, mono_inv, epi_inv, retraction, section, monos, epis])
}

fn kleisli_suite<C: Sampler + ElementCategory>(cat: &C, trials: usize, caps: &Caps, rng: &mut SuiteRng) -> Result<Vec<AxiomCheck>> {
    let topos = Topos::new(cat.clone());
    let rel = topos.rel();
    let mut compose = AxiomCheck::new("ξ turns composition into Kleisli composition: ξ(r;s) = ξr ⊙ ξs", true);
    let mut unit = AxiomCheck::new("ξ of the identity is η", true);
    let mut roundtrip = AxiomCheck::new("ξ is invertible: relation_of(ξ r) = r", true);
    let max = cat.small(caps).min(4);
    let show = |r: &Relation<C>| cat.describe(rel, r);
    for trial in 0..trials {
        let n = ramp(trial, trials, max);
        let x = cat.object(rng, n);
        let y = cat.object(rng, n);
        let z = cat.object(rng, n);
        let r = cat.relation(rng, rel, &x, &y)?;
        let s = cat.relation(rng, rel, &y, &z)?;
        compose.record((|| {
            let lhs = topos.xi(&rel.compose(&r, &s)?)?;
            let rhs = topos.kleisli_compose(&x, &topos.xi(&r)?, &topos.xi(&s)?)?;
            Ok((lhs != rhs).then(|| format!("r = {}, s = {}", show(&r), show(&s))))
        })())?;
        unit.record((|| {
            let ok = topos.xi(&rel.identity(&x)?)? == topos.eta(&x)?;
            Ok((!ok).then(|| format!("X = {x:?}")))
        })())?;
        roundtrip.record((|| {
            let back = topos.relation_of(&x, &topos.xi(&r)?)?;
            Ok((back != r).then(|| format!("r = {}, recovered {}", show(&r), show(&back))))
        })())?;
    }
    Ok(vec![compose, unit, roundtrip])
}

fn distributive_suite(trials: usize, caps: &Caps, rng: &mut SuiteRng) -> Result<Vec<AxiomCheck>> {
    let cfg = DistSuiteConfig { max_base: caps.states.min(3), samples: trials.clamp(10, 200), ..DistSuiteConfig::default() };
    let ls = labels(caps.labels.clamp(1, 2));
    let mut checks = Vec::new();
    for (shape, name, monad) in [(Shape::pow(), "pow", true), (Shape::pow_labels(&ls), "pow_labels", false)] {
        let report = dist_law_suite(&shape, name, monad, &cfg, rng)?;
        checks.extend(report.checks.into_iter().map(|mut c| {
            c.axiom = format!("{name}: {}", c.axiom);
            c
        }));
    }
    Ok(checks)
}

fn order_suite(trials: usize, caps: &Caps, rng: &mut SuiteRng) -> Result<Vec<AxiomCheck>> {
    let cfg = OrderSuiteConfig { max_base: caps.states.min(3), samples: trials.clamp(10, 120), ..OrderSuiteConfig::default() };
    let ls = labels(caps.labels.clamp(1, 2));
    let mut checks = Vec::new();
    let runs: [(Shape, &str, &dyn crate::simulation::ElementOrder); 4] = [
        (Shape::pow_labels(&ls), "pow_labels", &InclusionOrder),
        (Shape::pow(), "pow", &InclusionOrder),
        (Shape::det(&ls), "det", &DiscreteOrder),
        (Shape::upair(), "upair", &DiscreteOrder),
    ];
    for (shape, name, ord) in runs {
        let report = good_order_suite(&shape, name, ord, &cfg, rng)?;
        checks.extend(report.checks.into_iter().map(|mut c| {
            c.axiom = format!("{} on {name}: {}", ord.name(), c.axiom);
            c
        }));
    }
    Ok(checks)
}

fn simulation_suite<C: Sampler + ElementCategory>(cat: &C, trials: usize, caps: &Caps, rng: &mut SuiteRng) -> Result<Vec<AxiomCheck>> {
    let sim = Simulation::new(cat.clone());
    let bisim = suite_bisim(cat);
    let rel = sim.rel();
    let ord = InclusionOrder;
    let mut diagonal = AxiomCheck::new("the diagonal is a simulation", true);
    let mut choice = AxiomCheck::new("with choice: AM simulation iff toposal simulation", true);
    let mut lax = AxiomCheck::new("toposal simulation iff every pair has a lax witness", true);
    let mut greatest = AxiomCheck::new("similarity is the greatest simulation", true);
    let mut bisim_below = AxiomCheck::new("bisimilarity is contained in similarity", true);
    let mut composite = AxiomCheck::new("composites of simulations are simulations", true);
    let show = |r: &Relation<C>| cat.describe(rel, r);
    let kinds: Vec<SysKind> = cat.kinds(caps).into_iter().filter(|k| matches!(k, SysKind::PowLabels(_))).collect();
    for _ in 0..trials {
        let kind = kinds.choose(rng).expect("non-empty").clone();
        let Some((a, b)) = or_skip!(coalgebra_pair(cat, rng, &kind, caps), lax, greatest) else { continue };
        let Some(c) = or_skip!(cat.coalgebra(rng, &kind, caps), lax, greatest) else { continue };
        let similar = or_skip!(sim.similarity(&a, &b, &ord), lax, greatest);
        let within = if rng.gen_range(0..3) == 0 { similar.clone() } else { rel.full(a.carrier(), b.carrier())? };
        let r = cat.subrelation(rng, rel, &within, kind.max_pairs())?;
        diagonal.record((|| {
            let v = sim.is_toposal_am_simulation(&rel.identity(a.carrier())?, &a, &a, &ord)?.verdict;
            Ok((!v).then(|| format!("{a:?}")))
        })())?;
        let top = or_skip!(sim.is_toposal_am_simulation(&r, &a, &b, &ord), lax, greatest).verdict;
        if cat.has_choice() {
            choice.record((|| {
                let am = sim.is_am_simulation(&r, &a, &b, &ord)?.verdict;
                Ok((am != top).then(|| format!("r = {}: am {am}, toposal {top}", show(&r))))
            })())?;
        }
        lax.record((|| {
            let w = sim.exists_lax_left_witness(&r, &a, &b, &ord)?;
            Ok((w != top).then(|| format!("r = {}: lax witnesses {w}, toposal {top}", show(&r))))
        })())?;
        greatest.record((|| {
            if !sim.is_toposal_am_simulation(&similar, &a, &b, &ord)?.verdict {
                return Ok(Some(format!("similarity {} is not a simulation", show(&similar))));
            }
            Ok((top && !rel.leq(&r, &similar)?).then(|| format!("simulation {} escapes similarity {}", show(&r), show(&similar))))
        })())?;
        bisim_below.record((|| {
            let bis = bisim.bisimilarity(&a, &b)?;
            Ok((!rel.leq(&bis, &similar)?).then(|| format!("bisimilarity {} vs similarity {}", show(&bis), show(&similar))))
        })())?;
        composite.record((|| {
            let s2 = sim.similarity(&b, &c, &ord)?;
            let comp = rel.compose(&similar, &s2)?;
            let v = sim.is_toposal_am_simulation(&comp, &a, &c, &ord)?.verdict;
            Ok((!v).then(|| format!("{} ; {}", show(&similar), show(&s2))))
        })())?;
    }
    let mut checks = vec![diagonal, lax, greatest, bisim_below, composite];
    if cat.has_choice() {
        checks.insert(1, choice);
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(trials: usize) -> LawConfig {
        LawConfig { seed: 7, trials, caps: Caps { states: 3, ..Caps::default() } }
    }

    #[test]
    fn caps_parse_overrides() {
        let caps = Caps::default().with_overrides("states=4, dim=2").unwrap();
        assert_eq!((caps.states, caps.dim, caps.labels), (4, 2, 3));
        assert!(Caps::default().with_overrides("colour=1").is_err());
        assert!(Caps::default().with_overrides("states").is_err());
    }

    #[test]
    fn subgroups_of_s3() {
        assert_eq!(subgroups(&FiniteGroup::symmetric3()).len(), 6);
        assert_eq!(subgroups(&FiniteGroup::cyclic(2)).len(), 2);
    }

    #[test]
    fn random_gsets_are_valid_and_bounded() {
        let cat = GSet::new(FiniteGroup::symmetric3());
        let mut rng = random::rng(3);
        for _ in 0..20 {
            let x = random_gset(&cat, &mut rng, 7, "x");
            assert!(x.carrier().len() <= 7);
        }
    }

    #[test]
    fn reports_are_deterministic_per_seed() {
        let a = run(Suite::Allegory, BackendTag::Finset, &quick(5)).unwrap();
        let b = run(Suite::Allegory, BackendTag::Finset, &quick(5)).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert!(a.passed());
    }

    #[test]
    fn suites_pass_on_small_instances() {
        let cfg = quick(4);
        for suite in Suite::ALL {
            for &backend in suite.backends() {
                let report = run(suite, backend, &cfg).unwrap();
                let bad: Vec<_> = report.checks.iter().filter(|c| !c.as_expected()).collect();
                assert!(bad.is_empty(), "{suite} on {}: {bad:?}", backend.as_str());
            }
        }
    }

    #[test]
    fn vect_rejects_topos_suites() {
        assert!(matches!(run(Suite::Monad, BackendTag::Vect, &quick(1)), Err(CatError::Unsupported(_))));
    }
}
