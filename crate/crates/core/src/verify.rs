//! Independent re-verification of witnesses read back from reports.
//!
//! A witness is rebuilt from its JSON form and the defining equations or
//! inequalities are checked directly, without re-running the search that
//! produced it.

use serde_json::Value;

use crate::bisim::Bisim;
use crate::coalgebra::{is_coalgebra_hom, Coalgebra};
use crate::element::ElementCategory;
use crate::io::{CheckReport, Codec, ErrorCode, IoError, IoResult, RelationFile};
use crate::relation::Relation;
use crate::simulation::{order_by_name, Simulation};

/// Outcome of re-verifying one witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub detail: String,
}

impl Verdict {
    fn of(holds: bool, ok: &str, failed: &str) -> Verdict {
        Verdict { holds, detail: if holds { ok } else { failed }.to_string() }
    }
}

fn field<'a>(w: &'a Value, name: &str) -> IoResult<&'a Value> {
    w.get(name).ok_or_else(|| IoError::new(ErrorCode::Schema, format!("witness.{name}"), "missing field"))
}

fn witness(report: &CheckReport) -> IoResult<(&Value, &str)> {
    let w = report.witness.as_ref().ok_or_else(|| IoError::new(ErrorCode::Schema, "witness", "the report carries no witness"))?;
    let ty = field(w, "type")?.as_str().ok_or_else(|| IoError::new(ErrorCode::Schema, "witness.type", "expected a string"))?;
    let expected = match report.kind.as_str() {
        "am" | "simulation" => "map",
        "regular" => "relation",
        "hj" => "lifting",
        "behavioural" => "cospan",
        "toposal" | "toposal-simulation" => "toposal",
        other => return Err(IoError::new(ErrorCode::Schema, "kind", format!("unknown kind {other}"))),
    };
    if ty != expected {
        return Err(IoError::new(ErrorCode::Schema, "witness.type", format!("{} reports carry {expected} witnesses, not {ty}", report.kind)));
    }
    Ok((w, ty))
}

/// Re-verifies the witness of an `am`, `regular`, `hj` or `behavioural`
/// report on any backend.
pub fn verify_bisim_witness<C: Codec>(bisim: &Bisim<C>, report: &CheckReport, r: &Relation<C>, a: &Coalgebra<C>, b: &Coalgebra<C>) -> IoResult<Verdict> {
    let (w, ty) = witness(report)?;
    let cat = bisim.cat();
    let rel = bisim.rel();
    let functor = a.functor();
    crate::functor::same_functor(functor, b.functor())?;
    let apex = rel.apex(r);
    let (r1, r2) = rel.legs(r)?;
    let fr = functor.on_object(cat, apex)?;
    let fr1 = functor.on_morphism(cat, &r1)?;
    let fr2 = functor.on_morphism(cat, &r2)?;
    let ar1 = cat.compose(a.structure(), &r1)?;
    let br2 = cat.compose(b.structure(), &r2)?;
    match ty {
        "map" => {
            let m = cat.morphism_from_json(apex, &fr, field(w, "map")?, "witness.map")?;
            let holds = cat.compose(&fr1, &m)? == ar1 && cat.compose(&fr2, &m)? == br2;
            Ok(Verdict::of(holds, "both projections of the AM square commute", "the AM square does not commute"))
        }
        "relation" => {
            let file: RelationFile = serde_json::from_value(field(w, "relation")?.clone())
                .map_err(|e| IoError::new(ErrorCode::Schema, "witness.relation", e.to_string()))?;
            let wr = cat.relation_from_file(rel, &file, &fr, apex).map_err(|e| e.in_file("witness.relation"))?;
            let (p, q) = rel.legs(&wr)?;
            let commutes = cat.compose(&fr1, &p)? == cat.compose(&ar1, &q)? && cat.compose(&fr2, &p)? == cat.compose(&br2, &q)?;
            if !commutes {
                return Ok(Verdict::of(false, "", "some witness element does not project onto the structure maps"));
            }
            Ok(Verdict::of(cat.is_regular_epi(&q)?, "witnesses commute and cover the relation", "the witness does not cover the relation"))
        }
        "lifting" => {
            let obj = cat.object_from_json(field(w, "lifting_object")?, "witness.lifting_object")?;
            let prod = cat.product(cat.target(a.structure()), cat.target(b.structure()))?;
            let lifting = cat.morphism_from_json(&obj, &prod.apex, field(w, "lifting")?, "witness.lifting")?;
            let m = cat.morphism_from_json(apex, &obj, field(w, "map")?, "witness.map")?;
            let lift = cat.pair(&fr1, &fr2)?;
            let image = cat.factorize(&lift)?.mono;
            let same_image = cat.is_mono(&lifting)?
                && cat.solve_factorization(&lifting, &image)?.is_some()
                && cat.solve_factorization(&image, &lifting)?.is_some();
            if !same_image {
                return Ok(Verdict::of(false, "", "the lifting is not the image of F R"));
            }
            let holds = cat.compose(&lifting, &m)? == cat.pair(&ar1, &br2)?;
            Ok(Verdict::of(holds, "the relation maps into its lifting", "the structure maps do not factor through the lifting"))
        }
        "cospan" => {
            let z = cat.object_from_json(field(w, "object")?, "witness.object")?;
            let fz = functor.on_object(cat, &z)?;
            let gamma = cat.morphism_from_json(&z, &fz, field(w, "gamma")?, "witness.gamma")?;
            let f = cat.morphism_from_json(a.carrier(), &z, field(w, "f")?, "witness.f")?;
            let g = cat.morphism_from_json(b.carrier(), &z, field(w, "g")?, "witness.g")?;
            let c = Coalgebra::new(cat, functor.clone(), gamma)?;
            if !is_coalgebra_hom(cat, &f, a, &c)? || !is_coalgebra_hom(cat, &g, b, &c)? {
                return Ok(Verdict::of(false, "", "a cospan leg is not a coalgebra homomorphism"));
            }
            let file: RelationFile = serde_json::from_value(field(w, "closure")?.clone())
                .map_err(|e| IoError::new(ErrorCode::Schema, "witness.closure", e.to_string()))?;
            let claimed = cat.relation_from_file(rel, &file, a.carrier(), b.carrier()).map_err(|e| e.in_file("witness.closure"))?;
            let pb = cat.pullback(&f, &g)?;
            if rel.from_span(&pb.left, &pb.right)? != claimed {
                return Ok(Verdict::of(false, "", "the stated closure is not the pullback of the cospan"));
            }
            Ok(Verdict::of(claimed == *r, "the relation is the pullback of a cospan of homomorphisms", "the cospan relates other pairs"))
        }
        other => Err(IoError::new(ErrorCode::Capability, "witness.type", format!("{other} witnesses need a topos backend"))),
    }
}

/// Re-verifies any witness on an element backend, including the toposal
/// and simulation kinds.
pub fn verify_witness<C: Codec + ElementCategory>(
    sim: &Simulation<C>,
    bisim: &Bisim<C>,
    report: &CheckReport,
    r: &Relation<C>,
    a: &Coalgebra<C>,
    b: &Coalgebra<C>,
) -> IoResult<Verdict> {
    let (w, ty) = witness(report)?;
    let simulation = report.kind.ends_with("simulation");
    if !simulation && ty != "toposal" {
        return verify_bisim_witness(bisim, report, r, a, b);
    }
    let cat = sim.cat();
    let rel = sim.rel();
    let topos = sim.topos();
    let functor = a.functor();
    crate::functor::same_functor(functor, b.functor())?;
    let apex = rel.apex(r);
    let (r1, r2) = rel.legs(r)?;
    let fr = functor.on_object(cat, apex)?;
    let fr1 = functor.on_morphism(cat, &r1)?;
    let fr2 = functor.on_morphism(cat, &r2)?;
    let ar1 = cat.compose(a.structure(), &r1)?;
    let br2 = cat.compose(b.structure(), &r2)?;
    let order = match &report.order {
        Some(name) => Some(order_by_name(name).ok_or_else(|| IoError::new(ErrorCode::Schema, "order", format!("unknown order {name}")))?),
        None if simulation => return Err(IoError::new(ErrorCode::Schema, "order", "simulation reports name their order")),
        None => None,
    };
    let target = if ty == "toposal" { topos.pow(&fr) } else { fr.clone() };
    let m = cat.morphism_from_json(apex, &target, field(w, "map")?, "witness.map")?;
    let eta_fx = topos.eta(cat.target(a.structure()))?;
    let eta_fy = topos.eta(cat.target(b.structure()))?;
    match (ty, order) {
        ("toposal", None) => {
            let holds = cat.compose(&topos.pow_map(&fr1)?, &m)? == cat.compose(&eta_fx, &ar1)?
                && cat.compose(&topos.pow_map(&fr2)?, &m)? == cat.compose(&eta_fy, &br2)?;
            Ok(Verdict::of(holds, "the toposal square commutes", "the toposal square does not commute"))
        }
        ("map", Some(ord)) => {
            let holds = cat.compose(&fr1, &m)? == ar1 && sim.leq_hom(functor, &cat.compose(&fr2, &m)?, &br2, ord.as_ref())?;
            Ok(Verdict::of(holds, "the simulation square holds", "the simulation square fails"))
        }
        ("toposal", Some(ord)) => {
            let left = cat.compose(&topos.pow_map(&fr1)?, &m)?;
            let right = cat.compose(&topos.pow_map(&fr2)?, &m)?;
            let holds = sim.leq_pow(functor, &cat.compose(&eta_fx, &ar1)?, &left, ord.as_ref())?
                && sim.leq_pow(functor, &right, &cat.compose(&eta_fy, &br2)?, ord.as_ref())?;
            Ok(Verdict::of(holds, "the toposal simulation square holds", "the toposal simulation square fails"))
        }
        _ => Err(IoError::new(ErrorCode::Schema, "witness.type", format!("{} reports cannot carry {ty} witnesses", report.kind))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elem::Elem;
    use crate::finset::{FinSet, FinSetObj};
    use crate::io::CheckReport;
    use crate::simulation::InclusionOrder;

    fn a(s: &str) -> Elem {
        Elem::atom(s)
    }

    fn lts(states: &[&str], trans: &[(&str, &str, &str)]) -> Coalgebra<FinSet> {
        let x = FinSetObj::explicit(states.iter().map(|s| a(s)));
        let t: Vec<(Elem, Elem, Elem)> = trans.iter().map(|(s, l, u)| (a(s), a(l), a(u))).collect();
        Coalgebra::lts(&FinSet, &x, &[a("a"), a("b")], &t).unwrap()
    }

    #[test]
    fn every_bisimulation_witness_reverifies() {
        let x = lts(&["p"], &[("p", "a", "p")]);
        let y = lts(&["q0", "q1"], &[("q0", "a", "q1"), ("q1", "a", "q0")]);
        let bisim = Bisim::new(FinSet);
        let sim = Simulation::new(FinSet);
        let r = bisim.rel().full(x.carrier(), y.carrier()).unwrap();
        let name = x.functor().name();
        for report in [
            bisim.is_am(&r, &x, &y).unwrap(),
            bisim.is_regular_am(&r, &x, &y).unwrap(),
            bisim.is_hj(&r, &x, &y).unwrap(),
            bisim.is_behavioural_equivalence(&r, &x, &y).unwrap(),
            sim.topos().is_toposal(&r, &x, &y).unwrap(),
        ] {
            let json = CheckReport::from_bisim(&FinSet, bisim.rel(), name.clone(), &report).unwrap();
            let back: CheckReport = serde_json::from_value(serde_json::to_value(&json).unwrap()).unwrap();
            let v = verify_witness(&sim, &bisim, &back, &r, &x, &y).unwrap();
            assert!(v.holds, "{}: {}", back.kind, v.detail);
        }
        for report in [
            sim.is_am_simulation(&r, &x, &y, &InclusionOrder).unwrap(),
            sim.is_toposal_am_simulation(&r, &x, &y, &InclusionOrder).unwrap(),
        ] {
            let json = CheckReport::from_sim(&FinSet, name.clone(), "subset", &report).unwrap();
            assert!(verify_witness(&sim, &bisim, &json, &r, &x, &y).unwrap().holds);
        }
    }

    #[test]
    fn tampered_witnesses_are_rejected() {
        let x = lts(&["p"], &[("p", "a", "p")]);
        let y = lts(&["q0", "q1"], &[("q0", "a", "q1"), ("q1", "a", "q0")]);
        let bisim = Bisim::new(FinSet);
        let sim = Simulation::new(FinSet);
        let r = bisim.rel().full(x.carrier(), y.carrier()).unwrap();
        let report = bisim.is_am(&r, &x, &y).unwrap();
        let mut json = CheckReport::from_bisim(&FinSet, bisim.rel(), x.functor().name(), &report).unwrap();
        let table = json.witness.as_mut().unwrap().pointer_mut("/map/table/(p,q0)").unwrap();
        *table = Value::String("{(a,(p,q0))}".into());
        assert!(!verify_witness(&sim, &bisim, &json, &r, &x, &y).unwrap().holds);
        json.kind = "regular".into();
        assert_eq!(verify_witness(&sim, &bisim, &json, &r, &x, &y).unwrap_err().code, ErrorCode::Schema);
    }
}
