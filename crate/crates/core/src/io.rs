//! JSON file formats for systems and relations, their validation, and the
//! JSON encoding of witnesses and reports.
//!
//! Every file carries `"format": 1` and a backend tag. Emitted JSON has its
//! object keys in lexicographic order, so saving a loaded canonical file
//! reproduces it byte for byte.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bisim::{Witness, WitnessReport};
use crate::category::{CatError, RegularCategory};
use crate::coalgebra::Coalgebra;
use crate::elem::{is_atom_char, Elem};
use crate::element::{Backend, ElementCategory};
use crate::finset::{FinSet, FinSetObj};
use crate::functor::ShapeFunctor;
use crate::group::FiniteGroup;
use crate::gset::{GSet, GSetObj};
use crate::linalg::Matrix;
use crate::relation::{Rel, Relation};
use crate::shape::Shape;
use crate::simulation::{SimReport, SimWitness};
use crate::vect::Vect;

pub const FORMAT_VERSION: u32 = 1;

/// Distinct failure classes of ingestion and validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorCode {
    Io,
    Syntax,
    Schema,
    Version,
    DanglingId,
    DuplicateId,
    GroupLaw,
    Equivariance,
    NonPrime,
    Dimension,
    OutOfRange,
    NotClosed,
    Incompatible,
    Capability,
    Invalid,
}

impl ErrorCode {
    pub fn as_str(&self) -> &'static str {
        match self {
            ErrorCode::Io => "io",
            ErrorCode::Syntax => "syntax",
            ErrorCode::Schema => "schema",
            ErrorCode::Version => "version",
            ErrorCode::DanglingId => "dangling-id",
            ErrorCode::DuplicateId => "duplicate-id",
            ErrorCode::GroupLaw => "group-law",
            ErrorCode::Equivariance => "equivariance",
            ErrorCode::NonPrime => "non-prime",
            ErrorCode::Dimension => "dimension",
            ErrorCode::OutOfRange => "out-of-range",
            ErrorCode::NotClosed => "not-closed",
            ErrorCode::Incompatible => "incompatible",
            ErrorCode::Capability => "capability",
            ErrorCode::Invalid => "invalid",
        }
    }
}

/// An ingestion or validation failure with the place it was found.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct IoError {
    pub code: ErrorCode,
    /// File and JSON path (`file.json:transitions[2][1]`), possibly empty.
    pub location: String,
    pub message: String,
}

impl fmt::Display for IoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.location.is_empty() {
            write!(f, "error[{}]: {}", self.code.as_str(), self.message)
        } else {
            write!(f, "error[{}] at {}: {}", self.code.as_str(), self.location, self.message)
        }
    }
}

impl IoError {
    pub fn new(code: ErrorCode, location: impl Into<String>, message: impl Into<String>) -> IoError {
        IoError { code, location: location.into(), message: message.into() }
    }

    /// Prefixes the location with a file name.
    pub fn in_file(mut self, file: &str) -> IoError {
        self.location = if self.location.is_empty() { file.to_string() } else { format!("{file}:{}", self.location) };
        self
    }

    fn from_cat(code: ErrorCode, location: impl Into<String>, e: CatError) -> IoError {
        IoError::new(code, location, e.to_string())
    }
}

impl From<CatError> for IoError {
    fn from(e: CatError) -> IoError {
        let code = match &e {
            CatError::Unsupported(_) | CatError::CapExceeded(_) => ErrorCode::Capability,
            CatError::Functor(_) | CatError::Backend(_) | CatError::Endpoint(_) => ErrorCode::Incompatible,
            _ => ErrorCode::Invalid,
        };
        IoError::new(code, "", e.to_string())
    }
}

pub type IoResult<T> = std::result::Result<T, IoError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendTag {
    Finset,
    Gset,
    Vect,
}

impl BackendTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            BackendTag::Finset => "finset",
            BackendTag::Gset => "gset",
            BackendTag::Vect => "vect",
        }
    }
}

/// The behaviour type of a system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FunctorSpec {
    /// `𝒫(Σ × X)`.
    PowLabels { labels: Vec<String> },
    /// `X^Σ`.
    Det { labels: Vec<String> },
    /// Unordered pairs.
    Upair {},
    /// `𝒫 X`.
    Pow {},
    /// Any composite of the shape constructors.
    Shape { term: ShapeTerm },
    /// `X ↦ K × X^A` on vector spaces (weighted automata).
    Linear { alphabet: Vec<String> },
}

/// A functor expression: `"id"`, `{"const": [..]}`, `{"prod": [a, b]}`,
/// `{"exp": {"labels": [..], "of": a}}`, `{"pow": a}`, `{"upair": a}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ShapeTerm {
    Id,
    Const(Vec<String>),
    Prod(Box<ShapeTerm>, Box<ShapeTerm>),
    Exp { labels: Vec<String>, of: Box<ShapeTerm> },
    Pow(Box<ShapeTerm>),
    Upair(Box<ShapeTerm>),
}

impl ShapeTerm {
    pub fn to_shape(&self, loc: &str) -> IoResult<Shape> {
        Ok(match self {
            ShapeTerm::Id => Shape::Id,
            ShapeTerm::Const(vs) => Shape::constant(
                vs.iter().enumerate().map(|(i, v)| parse_elem(v, &format!("{loc}.const[{i}]"))).collect::<IoResult<Vec<_>>>()?,
            ),
            ShapeTerm::Prod(a, b) => Shape::product(a.to_shape(&format!("{loc}.prod[0]"))?, b.to_shape(&format!("{loc}.prod[1]"))?),
            ShapeTerm::Exp { labels, of } => Shape::exp(atoms(labels, &format!("{loc}.exp.labels"))?, of.to_shape(&format!("{loc}.exp.of"))?),
            ShapeTerm::Pow(a) => Shape::pow_of(a.to_shape(&format!("{loc}.pow"))?),
            ShapeTerm::Upair(a) => Shape::upair_of(a.to_shape(&format!("{loc}.upair"))?),
        })
    }

    pub fn from_shape(shape: &Shape) -> ShapeTerm {
        let strings = |xs: &[Elem]| xs.iter().map(Elem::to_string).collect();
        match shape {
            Shape::Id => ShapeTerm::Id,
            Shape::Const(k) => ShapeTerm::Const(strings(k)),
            Shape::Prod(a, b) => ShapeTerm::Prod(Box::new(ShapeTerm::from_shape(a)), Box::new(ShapeTerm::from_shape(b))),
            Shape::Exp(l, a) => ShapeTerm::Exp { labels: strings(l), of: Box::new(ShapeTerm::from_shape(a)) },
            Shape::Pow(a) => ShapeTerm::Pow(Box::new(ShapeTerm::from_shape(a))),
            Shape::UPair(a) => ShapeTerm::Upair(Box::new(ShapeTerm::from_shape(a))),
        }
    }
}

impl FunctorSpec {
    /// The functor on finite sets or G-sets.
    pub fn shape_functor(&self) -> IoResult<ShapeFunctor> {
        Ok(match self {
            FunctorSpec::PowLabels { labels } => ShapeFunctor::pow_labels(&atoms(labels, "functor.labels")?),
            FunctorSpec::Det { labels } => ShapeFunctor::det(&atoms(labels, "functor.labels")?),
            FunctorSpec::Upair {} => ShapeFunctor::upair(),
            FunctorSpec::Pow {} => ShapeFunctor::pow(),
            FunctorSpec::Shape { term } => ShapeFunctor::new(term.to_shape("functor.term")?),
            FunctorSpec::Linear { .. } => {
                return Err(IoError::new(ErrorCode::Capability, "functor", "the linear functor needs the vect backend"));
            }
        })
    }
}

/// A finite group by its multiplication table: `table[i][j]` is the name of
/// `elements[i] · elements[j]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub name: String,
    pub elements: Vec<String>,
    pub table: Vec<Vec<String>>,
}

impl GroupSpec {
    pub fn to_group(&self) -> IoResult<FiniteGroup> {
        let elems = atoms(&self.elements, "group.elements")?;
        let mut table = Vec::with_capacity(self.table.len());
        for (i, row) in self.table.iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (j, e) in row.iter().enumerate() {
                let loc = format!("group.table[{i}][{j}]");
                let e = atom(e, &loc)?;
                if !elems.contains(&e) {
                    return Err(IoError::new(ErrorCode::DanglingId, loc, format!("{e} is not a group element")));
                }
                out.push(e);
            }
            table.push(out);
        }
        FiniteGroup::from_named_table(&self.name, elems, &table).map_err(|e| IoError::from_cat(ErrorCode::GroupLaw, "group.table", e))
    }

    pub fn from_group(g: &FiniteGroup) -> GroupSpec {
        GroupSpec {
            name: g.name().to_string(),
            elements: g.elements().iter().map(Elem::to_string).collect(),
            table: g.named_table().iter().map(|row| row.iter().map(Elem::to_string).collect()).collect(),
        }
    }
}

/// A coalgebra on one backend.
///
/// Element backends list `states` and give the structure map either as
/// `transitions` (triples `[source, label, target]`, for `pow_labels`) or as
/// `structure` (state to element of `F X`, written in element syntax).
/// G-set systems add a `group` and an `action` (group element to the
/// states it moves). Vector-space systems give `prime`, `dim`, `output`
/// and one `dim × dim` matrix per letter, row `x` listing the successors of
/// basis state `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub format: u32,
    pub backend: BackendTag,
    pub functor: FunctorSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub states: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub action: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transitions: Option<Vec<(String, String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structure: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<BTreeMap<String, Vec<Vec<u32>>>>,
}

/// A relation between the carriers of two systems: `pairs` on element
/// backends, or `basis` vectors of the subspace of `X ⊕ Y` on vect.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationFile {
    pub format: u32,
    pub backend: BackendTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dom: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cod: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<u32>>>,
}

/// A coalgebra together with the category and functor description it was
/// built from.
#[derive(Clone, Debug)]
pub struct Loaded<C: RegularCategory> {
    pub cat: C,
    pub functor: FunctorSpec,
    pub coalgebra: Coalgebra<C>,
}

#[derive(Clone, Debug)]
pub enum System {
    FinSet(Loaded<FinSet>),
    GSet(Loaded<GSet>),
    Vect(Loaded<Vect>),
}

impl System {
    pub fn backend(&self) -> BackendTag {
        match self {
            System::FinSet(_) => BackendTag::Finset,
            System::GSet(_) => BackendTag::Gset,
            System::Vect(_) => BackendTag::Vect,
        }
    }

    pub fn from_file(file: &SystemFile) -> IoResult<System> {
        if file.format != FORMAT_VERSION {
            return Err(IoError::new(ErrorCode::Version, "format", format!("unsupported format {}, expected {FORMAT_VERSION}", file.format)));
        }
        match file.backend {
            BackendTag::Finset => {
                forbid(file.group.is_some(), "group", "finset")?;
                forbid(!file.action.is_empty(), "action", "finset")?;
                forbid_vect_fields(file)?;
                let states = distinct_atoms(&file.states, "states")?;
                let x = FinSetObj::explicit(states);
                let coalgebra = element_coalgebra(&FinSet, file, &x)?;
                Ok(System::FinSet(Loaded { cat: FinSet, functor: file.functor.clone(), coalgebra }))
            }
            BackendTag::Gset => {
                forbid_vect_fields(file)?;
                let spec = file.group.as_ref().ok_or_else(|| IoError::new(ErrorCode::Schema, "group", "gset systems need a group"))?;
                let cat = GSet::new(spec.to_group()?);
                let states = distinct_atoms(&file.states, "states")?;
                let x = gset_object(&cat, states, &file.action, "action")?;
                let coalgebra = element_coalgebra(&cat, file, &x)?;
                Ok(System::GSet(Loaded { cat, functor: file.functor.clone(), coalgebra }))
            }
            BackendTag::Vect => {
                forbid(file.group.is_some(), "group", "vect")?;
                forbid(!file.action.is_empty(), "action", "vect")?;
                forbid(!file.states.is_empty(), "states", "vect")?;
                forbid(file.transitions.is_some(), "transitions", "vect")?;
                forbid(file.structure.is_some(), "structure", "vect")?;
                weighted_system(file)
            }
        }
    }

    pub fn to_file(&self) -> IoResult<SystemFile> {
        match self {
            System::FinSet(l) => element_file(&l.cat, &l.functor, &l.coalgebra, BackendTag::Finset),
            System::GSet(l) => {
                let mut f = element_file(&l.cat, &l.functor, &l.coalgebra, BackendTag::Gset)?;
                f.group = Some(GroupSpec::from_group(l.cat.group()));
                f.action = action_spec(l.coalgebra.carrier())?;
                Ok(f)
            }
            System::Vect(l) => {
                let FunctorSpec::Linear { alphabet } = &l.functor else {
                    return Err(IoError::new(ErrorCode::Capability, "functor", "only weighted automata are stored for vect"));
                };
                let (output, matrices) = l.coalgebra.weighted_parts();
                Ok(SystemFile {
                    format: FORMAT_VERSION,
                    backend: BackendTag::Vect,
                    functor: l.functor.clone(),
                    group: None,
                    states: Vec::new(),
                    action: BTreeMap::new(),
                    transitions: None,
                    structure: None,
                    prime: Some(l.cat.prime()),
                    dim: Some(output.len()),
                    output: Some(output),
                    matrices: Some(alphabet.iter().cloned().zip(matrices.iter().map(Matrix::to_rows)).collect()),
                })
            }
        }
    }
}

fn forbid(present: bool, field: &str, backend: &str) -> IoResult<()> {
    if present {
        Err(IoError::new(ErrorCode::Schema, field, format!("{field} is not used by the {backend} backend")))
    } else {
        Ok(())
    }
}

fn forbid_vect_fields(file: &SystemFile) -> IoResult<()> {
    for (present, field) in [
        (file.prime.is_some(), "prime"),
        (file.dim.is_some(), "dim"),
        (file.output.is_some(), "output"),
        (file.matrices.is_some(), "matrices"),
    ] {
        forbid(present, field, file.backend.as_str())?;
    }
    Ok(())
}

fn atom(s: &str, loc: &str) -> IoResult<Elem> {
    if s.is_empty() || !s.chars().all(is_atom_char) {
        return Err(IoError::new(ErrorCode::Schema, loc, format!("'{s}' is not a valid identifier")));
    }
    Ok(Elem::atom(s))
}

fn atoms(xs: &[String], loc: &str) -> IoResult<Vec<Elem>> {
    xs.iter().enumerate().map(|(i, s)| atom(s, &format!("{loc}[{i}]"))).collect()
}

fn distinct_atoms(xs: &[String], loc: &str) -> IoResult<Vec<Elem>> {
    let elems = atoms(xs, loc)?;
    let mut seen = BTreeSet::new();
    for (i, e) in elems.iter().enumerate() {
        if !seen.insert(e) {
            return Err(IoError::new(ErrorCode::DuplicateId, format!("{loc}[{i}]"), format!("{e} is listed twice")));
        }
    }
    Ok(elems)
}

fn parse_elem(s: &str, loc: &str) -> IoResult<Elem> {
    Elem::parse(s).map_err(|e| IoError::new(ErrorCode::Syntax, loc, e.to_string()))
}

fn gset_object(cat: &GSet, states: Vec<Elem>, action: &BTreeMap<String, BTreeMap<String, String>>, loc: &str) -> IoResult<GSetObj> {
    let group = cat.group();
    let carrier = FinSetObj::explicit(states.iter().cloned());
    let mut table: Vec<BTreeMap<Elem, Elem>> = vec![BTreeMap::new(); group.order()];
    for (g, moves) in action {
        let gloc = format!("{loc}.{g}");
        let gi = group
            .index_of(&atom(g, &gloc)?)
            .ok_or_else(|| IoError::new(ErrorCode::DanglingId, &gloc, format!("{g} is not a group element")))?;
        for (x, y) in moves {
            let xloc = format!("{gloc}.{x}");
            let (x, y) = (atom(x, &xloc)?, atom(y, &xloc)?);
            for e in [&x, &y] {
                if !carrier.contains(e) {
                    return Err(IoError::new(ErrorCode::DanglingId, &xloc, format!("{e} is not a state")));
                }
            }
            table[gi].insert(x, y);
        }
    }
    cat.object(states, |g, e| table[g].get(e).cloned().unwrap_or_else(|| e.clone()))
        .map_err(|e| IoError::from_cat(ErrorCode::Equivariance, loc, e))
}

fn action_spec(x: &GSetObj) -> IoResult<BTreeMap<String, BTreeMap<String, String>>> {
    let group = x.group();
    let mut out = BTreeMap::new();
    for g in (0..group.order()).filter(|&g| g != group.identity()) {
        let moves: BTreeMap<String, String> = x
            .carrier()
            .enumerate()?
            .iter()
            .filter_map(|e| {
                let ge = x.act(g, e);
                (ge != *e).then(|| (e.to_string(), ge.to_string()))
            })
            .collect();
        if !moves.is_empty() {
            out.insert(group.element(g).to_string(), moves);
        }
    }
    Ok(out)
}

fn element_coalgebra<C: ElementCategory>(cat: &C, file: &SystemFile, x: &C::Obj) -> IoResult<Coalgebra<C>> {
    let functor = file.functor.shape_functor()?;
    let shape = functor.shape_ref().clone();
    let states = cat.carrier(x);
    let mut structure: BTreeMap<Elem, Elem> = BTreeMap::new();
    let loc = match (&file.transitions, &file.structure) {
        (Some(_), Some(_)) => return Err(IoError::new(ErrorCode::Schema, "structure", "give either transitions or structure, not both")),
        (None, None) => return Err(IoError::new(ErrorCode::Schema, "", "a system needs transitions or structure")),
        (Some(ts), None) => {
            let FunctorSpec::PowLabels { labels } = &file.functor else {
                return Err(IoError::new(ErrorCode::Schema, "transitions", "transitions describe pow_labels systems only"));
            };
            let labels = atoms(labels, "functor.labels")?;
            let mut succ: BTreeMap<Elem, Vec<Elem>> = BTreeMap::new();
            for (i, (s, a, t)) in ts.iter().enumerate() {
                let field = |k: usize| format!("transitions[{i}][{k}]");
                let (s, a, t) = (atom(s, &field(0))?, atom(a, &field(1))?, atom(t, &field(2))?);
                for (k, e) in [(0, &s), (2, &t)] {
                    if !states.contains(e) {
                        return Err(IoError::new(ErrorCode::DanglingId, field(k), format!("{e} is not a state")));
                    }
                }
                if !labels.contains(&a) {
                    return Err(IoError::new(ErrorCode::DanglingId, field(1), format!("{a} is not a label")));
                }
                succ.entry(s).or_default().push(Elem::pair(a, t));
            }
            for s in states.enumerate()? {
                structure.insert(s.clone(), Elem::set(succ.remove(s).unwrap_or_default()));
            }
            "transitions"
        }
        (None, Some(map)) => {
            for (s, v) in map {
                let sloc = format!("structure.{s}");
                let s = atom(s, &sloc)?;
                if !states.contains(&s) {
                    return Err(IoError::new(ErrorCode::DanglingId, &sloc, format!("{s} is not a state")));
                }
                let v = parse_elem(v, &sloc)?;
                if !shape.contains(&v, &|e| states.contains(e)) {
                    return Err(IoError::new(ErrorCode::OutOfRange, &sloc, format!("{v} is not an element of {shape} of the states")));
                }
                structure.insert(s, v);
            }
            if let Some(s) = states.enumerate()?.iter().find(|s| !structure.contains_key(*s)) {
                return Err(IoError::new(ErrorCode::Schema, "structure", format!("no value for state {s}")));
            }
            "structure"
        }
    };
    let code = if cat.backend_name() == "gset" { ErrorCode::Equivariance } else { ErrorCode::Invalid };
    Coalgebra::from_fn(cat, functor.handle(), x, move |s| structure[s].clone()).map_err(|e| IoError::from_cat(code, loc, e))
}

fn element_file<C: ElementCategory>(cat: &C, spec: &FunctorSpec, a: &Coalgebra<C>, backend: BackendTag) -> IoResult<SystemFile> {
    let states = cat.carrier(a.carrier()).enumerate()?;
    let (transitions, structure) = if matches!(spec, FunctorSpec::PowLabels { .. }) {
        let mut ts = Vec::new();
        for s in states {
            for at in a.step(cat, s).as_set().unwrap_or_default() {
                let (l, t) = at.as_pair().ok_or_else(|| IoError::new(ErrorCode::Invalid, "transitions", format!("{at} is not a transition")))?;
                ts.push((s.to_string(), l.to_string(), t.to_string()));
            }
        }
        (Some(ts), None)
    } else {
        (None, Some(states.iter().map(|s| (s.to_string(), a.step(cat, s).to_string())).collect()))
    };
    Ok(SystemFile {
        format: FORMAT_VERSION,
        backend,
        functor: spec.clone(),
        group: None,
        states: states.iter().map(Elem::to_string).collect(),
        action: BTreeMap::new(),
        transitions,
        structure,
        prime: None,
        dim: None,
        output: None,
        matrices: None,
    })
}

fn weighted_system(file: &SystemFile) -> IoResult<System> {
    let FunctorSpec::Linear { alphabet } = &file.functor else {
        return Err(IoError::new(ErrorCode::Capability, "functor", "vect systems use the linear functor"));
    };
    let letters = distinct_atoms(alphabet, "functor.alphabet")?;
    let p = file.prime.ok_or_else(|| IoError::new(ErrorCode::Schema, "prime", "vect systems need a prime"))?;
    let cat = Vect::new(p).map_err(|e| IoError::from_cat(ErrorCode::NonPrime, "prime", e))?;
    let n = file.dim.ok_or_else(|| IoError::new(ErrorCode::Schema, "dim", "vect systems need a dimension"))?;
    let output = file.output.clone().ok_or_else(|| IoError::new(ErrorCode::Schema, "output", "vect systems need an output vector"))?;
    if output.len() != n {
        return Err(IoError::new(ErrorCode::Dimension, "output", format!("{} weights for dimension {n}", output.len())));
    }
    check_range(&output, p, "output")?;
    let given = file.matrices.clone().unwrap_or_default();
    if let Some(k) = given.keys().find(|k| !alphabet.contains(k)) {
        return Err(IoError::new(ErrorCode::DanglingId, format!("matrices.{k}"), format!("{k} is not a letter")));
    }
    let mut matrices = Vec::with_capacity(alphabet.len());
    for a in alphabet {
        let loc = format!("matrices.{a}");
        let rows = given.get(a).ok_or_else(|| IoError::new(ErrorCode::Schema, &loc, format!("no matrix for letter {a}")))?;
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(IoError::new(ErrorCode::Dimension, &loc, format!("matrix must be {n}x{n}")));
        }
        for (i, r) in rows.iter().enumerate() {
            check_range(r, p, &format!("{loc}[{i}]"))?;
        }
        matrices.push(Matrix::from_rows(p, n, rows)?);
    }
    let coalgebra = Coalgebra::weighted(&cat, letters, &output, &matrices)?;
    Ok(System::Vect(Loaded { cat, functor: file.functor.clone(), coalgebra }))
}

fn check_range(xs: &[u32], p: u32, loc: &str) -> IoResult<()> {
    match xs.iter().position(|&v| v >= p) {
        Some(j) => Err(IoError::new(ErrorCode::OutOfRange, format!("{loc}[{j}]"), format!("{} is not reduced mod {p}", xs[j]))),
        None => Ok(()),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> IoResult<T> {
    let file = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| IoError::new(ErrorCode::Io, &file, e.to_string()))?;
    parse_json(&text).map_err(|e| e.in_file(&file))
}

/// Parses a file body, telling syntax errors from schema violations.
pub fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> IoResult<T> {
    serde_json::from_str(text).map_err(|e| {
        let code = if e.is_data() { ErrorCode::Schema } else { ErrorCode::Syntax };
        let loc = if e.line() == 0 { String::new() } else { format!("line {} column {}", e.line(), e.column()) };
        IoError::new(code, loc, e.to_string())
    })
}

/// Canonical JSON text: sorted keys, two-space indentation, final newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> IoResult<String> {
    let v = serde_json::to_value(value).map_err(|e| IoError::new(ErrorCode::Invalid, "", e.to_string()))?;
    let mut s = serde_json::to_string_pretty(&v).map_err(|e| IoError::new(ErrorCode::Invalid, "", e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn load_system(path: &Path) -> IoResult<System> {
    let file: SystemFile = read_json(path)?;
    System::from_file(&file).map_err(|e| e.in_file(&path.display().to_string()))
}

pub fn save_system(path: &Path, system: &System) -> IoResult<()> {
    let text = to_canonical_json(&system.to_file()?)?;
    std::fs::write(path, text).map_err(|e| IoError::new(ErrorCode::Io, path.display().to_string(), e.to_string()))
}

pub fn load_relation_file(path: &Path) -> IoResult<RelationFile> {
    let file: RelationFile = read_json(path)?;
    if file.format != FORMAT_VERSION {
        return Err(IoError::new(ErrorCode::Version, format!("{}:format", path.display()), format!("unsupported format {}", file.format)));
    }
    Ok(file)
}

/// Backends whose objects, morphisms and relations have a JSON form.
pub trait Codec: Backend {
    fn tag(&self) -> BackendTag;
    fn object_json(&self, x: &Self::Obj) -> IoResult<Value>;
    fn object_from_json(&self, v: &Value, loc: &str) -> IoResult<Self::Obj>;
    fn morphism_json(&self, f: &Self::Mor) -> IoResult<Value>;
    fn morphism_from_json(&self, src: &Self::Obj, tgt: &Self::Obj, v: &Value, loc: &str) -> IoResult<Self::Mor>;
    fn relation_file(&self, rel: &Rel<Self>, r: &Relation<Self>) -> IoResult<RelationFile>;
    fn relation_from_file(&self, rel: &Rel<Self>, file: &RelationFile, dom: &Self::Obj, cod: &Self::Obj) -> IoResult<Relation<Self>>;
}

fn from_value<T: serde::de::DeserializeOwned>(v: &Value, loc: &str) -> IoResult<T> {
    T::deserialize(v).map_err(|e| IoError::new(ErrorCode::Schema, loc, e.to_string()))
}

fn element_table<C: ElementCategory>(cat: &C, f: &C::Mor) -> IoResult<Value> {
    let pairs = cat.underlying(f).pairs()?;
    let table: BTreeMap<String, String> = pairs.iter().map(|(x, y)| (x.to_string(), y.to_string())).collect();
    Ok(json!({ "table": table }))
}

fn element_from_table<C: ElementCategory>(cat: &C, src: &C::Obj, tgt: &C::Obj, v: &Value, loc: &str) -> IoResult<C::Mor> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Table {
        table: BTreeMap<String, String>,
    }
    let t: Table = from_value(v, loc)?;
    let mut map = BTreeMap::new();
    for (x, y) in &t.table {
        let eloc = format!("{loc}.table.{x}");
        let (x, y) = (parse_elem(x, &eloc)?, parse_elem(y, &eloc)?);
        if !cat.carrier(src).contains(&x) {
            return Err(IoError::new(ErrorCode::DanglingId, &eloc, format!("{x} is not in the source")));
        }
        if !cat.carrier(tgt).contains(&y) {
            return Err(IoError::new(ErrorCode::OutOfRange, &eloc, format!("{y} is not in the target")));
        }
        map.insert(x, y);
    }
    if let Some(x) = cat.carrier(src).enumerate()?.iter().find(|x| !map.contains_key(*x)) {
        return Err(IoError::new(ErrorCode::Schema, format!("{loc}.table"), format!("no value for {x}")));
    }
    cat.morphism_from_fn(src, tgt, move |e| map[e].clone()).map_err(|e| IoError::from_cat(ErrorCode::Equivariance, loc, e))
}

fn element_relation_file<C: ElementCategory>(rel: &Rel<C>, r: &Relation<C>, tag: BackendTag) -> IoResult<RelationFile> {
    Ok(RelationFile {
        format: FORMAT_VERSION,
        backend: tag,
        dom: None,
        cod: None,
        pairs: Some(rel.pairs(r)?.iter().map(|(x, y)| (x.to_string(), y.to_string())).collect()),
        basis: None,
    })
}

fn element_pairs<C: ElementCategory>(cat: &C, file: &RelationFile, dom: &C::Obj, cod: &C::Obj) -> IoResult<Vec<(Elem, Elem)>> {
    if file.basis.is_some() {
        return Err(IoError::new(ErrorCode::Schema, "basis", "element relations are given by pairs"));
    }
    let pairs = file.pairs.as_ref().ok_or_else(|| IoError::new(ErrorCode::Schema, "pairs", "missing pairs"))?;
    let mut out = Vec::with_capacity(pairs.len());
    for (i, (x, y)) in pairs.iter().enumerate() {
        let (lx, ly) = (format!("pairs[{i}][0]"), format!("pairs[{i}][1]"));
        let (x, y) = (parse_elem(x, &lx)?, parse_elem(y, &ly)?);
        if !cat.carrier(dom).contains(&x) {
            return Err(IoError::new(ErrorCode::DanglingId, lx, format!("{x} is not in the domain")));
        }
        if !cat.carrier(cod).contains(&y) {
            return Err(IoError::new(ErrorCode::DanglingId, ly, format!("{y} is not in the codomain")));
        }
        out.push((x, y));
    }
    Ok(out)
}

fn check_tag(file: &RelationFile, tag: BackendTag) -> IoResult<()> {
    if file.backend != tag {
        return Err(IoError::new(ErrorCode::Incompatible, "backend", format!("relation is for {}, systems are {}", file.backend.as_str(), tag.as_str())));
    }
    Ok(())
}

impl Codec for FinSet {
    fn tag(&self) -> BackendTag {
        BackendTag::Finset
    }

    fn object_json(&self, x: &FinSetObj) -> IoResult<Value> {
        Ok(json!({ "elements": x.enumerate()?.iter().map(Elem::to_string).collect::<Vec<_>>() }))
    }

    fn object_from_json(&self, v: &Value, loc: &str) -> IoResult<FinSetObj> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Obj {
            elements: Vec<String>,
        }
        let o: Obj = from_value(v, loc)?;
        let elems = o.elements.iter().enumerate().map(|(i, s)| parse_elem(s, &format!("{loc}.elements[{i}]"))).collect::<IoResult<Vec<_>>>()?;
        Ok(FinSetObj::explicit(elems))
    }

    fn morphism_json(&self, f: &crate::finset::FinSetMor) -> IoResult<Value> {
        element_table(self, f)
    }

    fn morphism_from_json(&self, src: &FinSetObj, tgt: &FinSetObj, v: &Value, loc: &str) -> IoResult<crate::finset::FinSetMor> {
        element_from_table(self, src, tgt, v, loc)
    }

    fn relation_file(&self, rel: &Rel<FinSet>, r: &Relation<FinSet>) -> IoResult<RelationFile> {
        element_relation_file(rel, r, BackendTag::Finset)
    }

    fn relation_from_file(&self, rel: &Rel<FinSet>, file: &RelationFile, dom: &FinSetObj, cod: &FinSetObj) -> IoResult<Relation<FinSet>> {
        check_tag(file, BackendTag::Finset)?;
        let pairs = element_pairs(self, file, dom, cod)?;
        Ok(rel.from_pairs(dom, cod, &pairs)?)
    }
}

impl Codec for GSet {
    fn tag(&self) -> BackendTag {
        BackendTag::Gset
    }

    fn object_json(&self, x: &GSetObj) -> IoResult<Value> {
        Ok(json!({
            "elements": x.carrier().enumerate()?.iter().map(Elem::to_string).collect::<Vec<_>>(),
            "action": action_spec(x)?,
        }))
    }

    fn object_from_json(&self, v: &Value, loc: &str) -> IoResult<GSetObj> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Obj {
            elements: Vec<String>,
            #[serde(default)]
            action: BTreeMap<String, BTreeMap<String, String>>,
        }
        let o: Obj = from_value(v, loc)?;
        let elems = o.elements.iter().enumerate().map(|(i, s)| parse_elem(s, &format!("{loc}.elements[{i}]"))).collect::<IoResult<Vec<_>>>()?;
        let carrier = FinSetObj::explicit(elems.iter().cloned());
        let group = self.group();
        let mut table: Vec<BTreeMap<Elem, Elem>> = vec![BTreeMap::new(); group.order()];
        for (g, moves) in &o.action {
            let gloc = format!("{loc}.action.{g}");
            let gi = group
                .index_of(&atom(g, &gloc)?)
                .ok_or_else(|| IoError::new(ErrorCode::DanglingId, &gloc, format!("{g} is not a group element")))?;
            for (x, y) in moves {
                let (x, y) = (parse_elem(x, &gloc)?, parse_elem(y, &gloc)?);
                if !carrier.contains(&x) || !carrier.contains(&y) {
                    return Err(IoError::new(ErrorCode::DanglingId, &gloc, format!("{x} or {y} is not an element")));
                }
                table[gi].insert(x, y);
            }
        }
        self.object(elems, |g, e| table[g].get(e).cloned().unwrap_or_else(|| e.clone()))
            .map_err(|e| IoError::from_cat(ErrorCode::Equivariance, loc, e))
    }

    fn morphism_json(&self, f: &crate::gset::GSetMor) -> IoResult<Value> {
        element_table(self, f)
    }

    fn morphism_from_json(&self, src: &GSetObj, tgt: &GSetObj, v: &Value, loc: &str) -> IoResult<crate::gset::GSetMor> {
        element_from_table(self, src, tgt, v, loc)
    }

    fn relation_file(&self, rel: &Rel<GSet>, r: &Relation<GSet>) -> IoResult<RelationFile> {
        element_relation_file(rel, r, BackendTag::Gset)
    }

    fn relation_from_file(&self, rel: &Rel<GSet>, file: &RelationFile, dom: &GSetObj, cod: &GSetObj) -> IoResult<Relation<GSet>> {
        check_tag(file, BackendTag::Gset)?;
        let pairs = element_pairs(self, file, dom, cod)?;
        let set: BTreeSet<(Elem, Elem)> = pairs.iter().cloned().collect();
        for (i, (x, y)) in pairs.iter().enumerate() {
            let orbit: BTreeSet<(Elem, Elem)> = (0..self.group().order()).map(|g| (dom.act(g, x), cod.act(g, y))).collect();
            if let Some((gx, gy)) = orbit.iter().find(|p| !set.contains(*p)) {
                let shown: Vec<String> = orbit.iter().map(|(a, b)| format!("({a},{b})")).collect();
                return Err(IoError::new(
                    ErrorCode::NotClosed,
                    format!("pairs[{i}]"),
                    format!("the orbit {{{}}} of ({x},{y}) is not included: ({gx},{gy}) is missing", shown.join(", ")),
                ));
            }
        }
        Ok(rel.from_pairs(dom, cod, &pairs)?)
    }
}

impl Codec for Vect {
    fn tag(&self) -> BackendTag {
        BackendTag::Vect
    }

    fn object_json(&self, x: &crate::vect::VectObj) -> IoResult<Value> {
        Ok(json!({ "dim": x.dim() }))
    }

    fn object_from_json(&self, v: &Value, loc: &str) -> IoResult<crate::vect::VectObj> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Obj {
            dim: usize,
        }
        let o: Obj = from_value(v, loc)?;
        Ok(self.space(o.dim))
    }

    fn morphism_json(&self, f: &crate::vect::VectMor) -> IoResult<Value> {
        Ok(json!({ "matrix": f.matrix().to_rows() }))
    }

    fn morphism_from_json(&self, src: &crate::vect::VectObj, tgt: &crate::vect::VectObj, v: &Value, loc: &str) -> IoResult<crate::vect::VectMor> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Mat {
            matrix: Vec<Vec<u32>>,
        }
        let m: Mat = from_value(v, loc)?;
        let mloc = format!("{loc}.matrix");
        if m.matrix.len() != tgt.dim() || m.matrix.iter().any(|r| r.len() != src.dim()) {
            return Err(IoError::new(ErrorCode::Dimension, &mloc, format!("expected {}x{}", tgt.dim(), src.dim())));
        }
        for (i, r) in m.matrix.iter().enumerate() {
            check_range(r, self.prime(), &format!("{mloc}[{i}]"))?;
        }
        Ok(self.morphism(*src, *tgt, Matrix::from_rows(self.prime(), src.dim(), &m.matrix)?)?)
    }

    fn relation_file(&self, rel: &Rel<Vect>, r: &Relation<Vect>) -> IoResult<RelationFile> {
        let b = rel.basis(r);
        Ok(RelationFile {
            format: FORMAT_VERSION,
            backend: BackendTag::Vect,
            dom: None,
            cod: None,
            pairs: None,
            basis: Some((0..b.cols()).map(|j| b.column(j)).collect()),
        })
    }

    fn relation_from_file(&self, rel: &Rel<Vect>, file: &RelationFile, dom: &crate::vect::VectObj, cod: &crate::vect::VectObj) -> IoResult<Relation<Vect>> {
        check_tag(file, BackendTag::Vect)?;
        if file.pairs.is_some() {
            return Err(IoError::new(ErrorCode::Schema, "pairs", "vect relations are given by a basis"));
        }
        let basis = file.basis.as_ref().ok_or_else(|| IoError::new(ErrorCode::Schema, "basis", "missing basis"))?;
        let n = dom.dim() + cod.dim();
        for (i, v) in basis.iter().enumerate() {
            if v.len() != n {
                return Err(IoError::new(ErrorCode::Dimension, format!("basis[{i}]"), format!("vectors of X ⊕ Y have length {n}")));
            }
            check_range(v, self.prime(), &format!("basis[{i}]"))?;
        }
        let m = Matrix::from_fn(self.prime(), n, basis.len(), |i, j| i64::from(basis[j][i]));
        Ok(rel.from_basis(dom, cod, &m)?)
    }
}

/// The JSON form of a bisimulation witness.
pub fn witness_json<C: Codec>(cat: &C, rel: &Rel<C>, w: &Witness<C>) -> IoResult<Value> {
    Ok(match w {
        Witness::Map(m) => json!({ "type": "map", "map": cat.morphism_json(m)? }),
        Witness::Relation(r) => json!({ "type": "relation", "relation": cat.relation_file(rel, r)? }),
        Witness::Lifting { w, lifting } => json!({
            "type": "lifting",
            "lifting_object": cat.object_json(cat.source(lifting))?,
            "lifting": cat.morphism_json(lifting)?,
            "map": cat.morphism_json(w)?,
        }),
        Witness::Cospan { gamma, f, g, closure } => json!({
            "type": "cospan",
            "object": cat.object_json(cat.source(gamma))?,
            "gamma": cat.morphism_json(gamma)?,
            "f": cat.morphism_json(f)?,
            "g": cat.morphism_json(g)?,
            "closure": cat.relation_file(rel, closure)?,
        }),
        Witness::Toposal(m) => json!({ "type": "toposal", "map": cat.morphism_json(m)? }),
    })
}

/// The stable JSON report of a check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckReport {
    pub kind: String,
    pub verdict: bool,
    pub backend: BackendTag,
    pub functor: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
    pub failing_pairs: Vec<String>,
    pub notes: Vec<String>,
    pub witness: Option<Value>,
}

impl CheckReport {
    pub fn from_bisim<C: Codec>(cat: &C, rel: &Rel<C>, functor: String, report: &WitnessReport<C>) -> IoResult<CheckReport> {
        Ok(CheckReport {
            kind: report.kind.as_str().to_string(),
            verdict: report.verdict,
            backend: cat.tag(),
            functor,
            order: None,
            failing_pairs: report.failing_pairs.clone(),
            notes: report.notes.clone(),
            witness: report.witness.as_ref().map(|w| witness_json(cat, rel, w)).transpose()?,
        })
    }

    pub fn from_sim<C: Codec>(cat: &C, functor: String, order: &str, report: &SimReport<C>) -> IoResult<CheckReport> {
        let (kind, witness) = match (&report.kind, &report.witness) {
            (crate::simulation::SimKind::Am, w) => ("simulation", w),
            (crate::simulation::SimKind::Toposal, w) => ("toposal-simulation", w),
        };
        let witness = match witness {
            Some(SimWitness::Map(m)) => Some(json!({ "type": "map", "map": cat.morphism_json(m)? })),
            Some(SimWitness::Toposal(m)) => Some(json!({ "type": "toposal", "map": cat.morphism_json(m)? })),
            None => None,
        };
        Ok(CheckReport {
            kind: kind.into(),
            verdict: report.verdict,
            backend: cat.tag(),
            functor,
            order: Some(order.to_string()),
            failing_pairs: report.failing_pairs.clone(),
            notes: report.notes.clone(),
            witness,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CYCLE: &str = r#"{
  "backend": "finset",
  "format": 1,
  "functor": {
    "kind": "pow_labels",
    "labels": [
      "a"
    ]
  },
  "states": [
    "s0",
    "s1"
  ],
  "transitions": [
    [
      "s0",
      "a",
      "s1"
    ],
    [
      "s1",
      "a",
      "s0"
    ]
  ]
}
"#;

    fn load(text: &str) -> IoResult<System> {
        System::from_file(&parse_json(text)?)
    }

    #[test]
    fn canonical_files_round_trip_exactly() {
        let sys = load(CYCLE).unwrap();
        assert_eq!(to_canonical_json(&sys.to_file().unwrap()).unwrap(), CYCLE);
    }

    #[test]
    fn single_deadlocked_state() {
        let sys = load(r#"{"format":1,"backend":"finset","functor":{"kind":"pow_labels","labels":["a"]},"states":["s"],"transitions":[]}"#).unwrap();
        let System::FinSet(l) = sys else { panic!("finset expected") };
        assert_eq!(l.coalgebra.step(&FinSet, &Elem::atom("s")), Elem::empty_set());
    }

    #[test]
    fn validation_errors_carry_code_and_location() {
        let missing = r#"{"format":1,"backend":"finset","functor":{"kind":"pow_labels","labels":["a"]},
            "states":["s0","s1"],"transitions":[["s0","a","s1"],["s1","a","s9"]]}"#;
        let e = load(missing).unwrap_err();
        assert_eq!((e.code, e.location.as_str()), (ErrorCode::DanglingId, "transitions[1][2]"));
        let e = load(&CYCLE.replace("\"format\": 1", "\"format\": 2")).unwrap_err();
        assert_eq!(e.code, ErrorCode::Version);
        let e = load(&CYCLE.replace("\"s1\"\n  ]", "\"s0\"\n  ]")).unwrap_err();
        assert_eq!((e.code, e.location.as_str()), (ErrorCode::DuplicateId, "states[1]"));
        assert_eq!(load("{").unwrap_err().code, ErrorCode::Syntax);
        assert_eq!(load(r#"{"format":1}"#).unwrap_err().code, ErrorCode::Schema);
        let vect = r#"{"format":1,"backend":"vect","functor":{"kind":"linear","alphabet":["a"]},"prime":4,"dim":1,"output":[1],"matrices":{"a":[[1]]}}"#;
        assert_eq!(load(vect).unwrap_err().code, ErrorCode::NonPrime);
        let e = load(&vect.replace("\"prime\":4", "\"prime\":3").replace("[[1]]", "[[3]]")).unwrap_err();
        assert_eq!((e.code, e.location.as_str()), (ErrorCode::OutOfRange, "matrices.a[0][0]"));
    }

    #[test]
    fn gset_actions_are_validated() {
        let base = r#"{"format":1,"backend":"gset","functor":{"kind":"upair"},
            "group":{"name":"Z2","elements":["e","g"],"table":[["e","g"],["g","e"]]},
            "states":["a","b"],"action":{"g":{"a":"b","b":"a"}},
            "structure":{"a":"[a,a]","b":"[b,b]"}}"#;
        let sys = load(base).unwrap();
        let text = to_canonical_json(&sys.to_file().unwrap()).unwrap();
        assert_eq!(to_canonical_json(&load(&text).unwrap().to_file().unwrap()).unwrap(), text);
        let e = load(&base.replace(r#""b":"[b,b]""#, r#""b":"[a,a]""#)).unwrap_err();
        assert_eq!(e.code, ErrorCode::Equivariance);
        let e = load(&base.replace(r#""b":"a"}"#, r#""b":"b"}"#)).unwrap_err();
        assert_eq!((e.code, e.location.as_str()), (ErrorCode::Equivariance, "action"));
        let e = load(&base.replace(r#"["g","e"]]"#, r#"["g","g"]]"#)).unwrap_err();
        assert_eq!(e.code, ErrorCode::GroupLaw);
    }

    #[test]
    fn relations_round_trip_and_check_orbits() {
        let base = r#"{"format":1,"backend":"gset","functor":{"kind":"upair"},
            "group":{"name":"Z2","elements":["e","g"],"table":[["e","g"],["g","e"]]},
            "states":["a","b"],"action":{"g":{"a":"b","b":"a"}},
            "structure":{"a":"[a,a]","b":"[b,b]"}}"#;
        let System::GSet(l) = load(base).unwrap() else { panic!("gset expected") };
        let rel = Rel::new(l.cat.clone());
        let x = l.coalgebra.carrier();
        let half: RelationFile = parse_json(r#"{"format":1,"backend":"gset","pairs":[["a","a"]]}"#).unwrap();
        let e = l.cat.relation_from_file(&rel, &half, x, x).unwrap_err();
        assert_eq!((e.code, e.location.as_str()), (ErrorCode::NotClosed, "pairs[0]"));
        let full: RelationFile = parse_json(r#"{"format":1,"backend":"gset","pairs":[["a","a"],["b","b"]]}"#).unwrap();
        let r = l.cat.relation_from_file(&rel, &full, x, x).unwrap();
        assert_eq!(l.cat.relation_file(&rel, &r).unwrap(), full);
    }

    #[test]
    fn vect_relations_use_bases() {
        let c = Vect::new(3).unwrap();
        let rel = Rel::new(c);
        let x = c.space(1);
        let file: RelationFile = parse_json(r#"{"format":1,"backend":"vect","basis":[[2,2]]}"#).unwrap();
        let r = c.relation_from_file(&rel, &file, &x, &x).unwrap();
        assert_eq!(r, rel.identity(&x).unwrap());
        assert_eq!(c.relation_file(&rel, &r).unwrap().basis, Some(vec![vec![1, 1]]));
    }
}
