use std::collections::BTreeSet;

use cobisim::elem::atoms;
use cobisim::io::{parse_json, to_canonical_json, System, SystemFile};
use cobisim::{Bisim, Coalgebra, Elem, FinSet, FinSetObj, Matrix, Rel, Relation};
use proptest::prelude::*;

type Pairs = BTreeSet<(usize, usize)>;

fn elem() -> impl Strategy<Value = Elem> {
    let atom = "[a-z][a-z0-9_]{0,3}".prop_map(|s| Elem::atom(&s));
    atom.prop_recursive(3, 24, 4, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Elem::pair(a, b)),
            prop::collection::vec(inner.clone(), 0..4).prop_map(Elem::tuple),
            prop::collection::vec(inner.clone(), 0..4).prop_map(Elem::set),
            prop::collection::vec(inner.clone(), 0..4).prop_map(Elem::bag),
            (0u8..3, inner).prop_map(|(t, e)| Elem::inj(t, e)),
        ]
    })
}

fn pairs(n: usize, m: usize) -> impl Strategy<Value = Pairs> {
    prop::collection::btree_set((0..n.max(1), 0..m.max(1)), 0..=n * m).prop_map(move |s| s.into_iter().filter(|&(i, j)| i < n && j < m).collect())
}

fn compose_pairs(r: &Pairs, s: &Pairs) -> Pairs {
    r.iter().flat_map(|&(x, y)| s.iter().filter(move |&&(y2, _)| y2 == y).map(move |&(_, z)| (x, z))).collect()
}

struct Sets {
    objs: Vec<(FinSetObj, Vec<Elem>)>,
}

impl Sets {
    fn new(sizes: &[usize]) -> Sets {
        let objs = sizes
            .iter()
            .enumerate()
            .map(|(k, &n)| {
                let xs = atoms(&format!("s{k}_"), n);
                (FinSet.object(xs.clone()), xs)
            })
            .collect();
        Sets { objs }
    }

    fn relation(&self, rel: &Rel<FinSet>, i: usize, j: usize, p: &Pairs) -> Relation<FinSet> {
        let ps: Vec<(Elem, Elem)> = p.iter().map(|&(a, b)| (self.objs[i].1[a].clone(), self.objs[j].1[b].clone())).collect();
        rel.from_pairs(&self.objs[i].0, &self.objs[j].0, &ps).unwrap()
    }
}

fn triple() -> impl Strategy<Value = ([usize; 3], Pairs, Pairs, Pairs)> {
    (0usize..=3, 0usize..=3, 0usize..=3).prop_flat_map(|(a, b, c)| (Just([a, b, c]), pairs(a, b), pairs(b, c), pairs(a, c)))
}

fn field_matrix() -> impl Strategy<Value = (u32, Vec<Vec<u32>>, usize)> {
    (prop::sample::select(vec![2u32, 3, 5]), 1usize..=4, 1usize..=4).prop_flat_map(|(p, rows, cols)| {
        (Just(p), prop::collection::vec(prop::collection::vec(0..p, cols), rows), Just(cols))
    })
}

type Lts = Vec<BTreeSet<(usize, usize)>>;

fn lts(max_states: usize, labels: usize) -> impl Strategy<Value = Lts> {
    (1..=max_states).prop_flat_map(move |n| prop::collection::vec(prop::collection::btree_set((0..labels, 0..n), 0..=3), n))
}

fn lts_coalgebra(l: &Lts, prefix: &str, labels: &[Elem]) -> Coalgebra<FinSet> {
    let xs = atoms(prefix, l.len());
    let ts: Vec<(Elem, Elem, Elem)> =
        l.iter().enumerate().flat_map(|(s, succ)| succ.iter().map(|&(a, t)| (xs[s].clone(), labels[a].clone(), xs[t].clone())).collect::<Vec<_>>()).collect();
    Coalgebra::lts(&FinSet, &FinSet.object(xs.clone()), labels, &ts).unwrap()
}

/// States of the disjoint union grouped by signature refinement.
fn blocks(l: &Lts) -> Vec<usize> {
    let mut block = vec![0; l.len()];
    loop {
        let sigs: Vec<(usize, BTreeSet<(usize, usize)>)> = (0..l.len()).map(|s| (block[s], l[s].iter().map(|&(a, t)| (a, block[t])).collect())).collect();
        let distinct: Vec<_> = sigs.iter().collect::<BTreeSet<_>>().into_iter().collect();
        let next: Vec<usize> = sigs.iter().map(|s| distinct.binary_search(&s).unwrap()).collect();
        if next == block {
            return block;
        }
        block = next;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn elements_round_trip_through_text(e in elem()) {
        prop_assert_eq!(Elem::parse(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn sets_are_sorted_and_duplicate_free(xs in prop::collection::vec(elem(), 0..6)) {
        let s = Elem::set(xs.clone());
        let members = s.as_set().unwrap();
        prop_assert!(members.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(xs.iter().all(|x| s.set_contains(x)));
    }

    #[test]
    fn relational_operations_match_pair_sets((n, r, s, t) in triple()) {
        let sets = Sets::new(&n);
        let rel = Rel::new(FinSet);
        let (rr, ss, tt) = (sets.relation(&rel, 0, 1, &r), sets.relation(&rel, 1, 2, &s), sets.relation(&rel, 0, 2, &t));
        let rs = rel.compose(&rr, &ss).unwrap();
        prop_assert_eq!(&rs, &sets.relation(&rel, 0, 2, &compose_pairs(&r, &s)));
        let conv: Pairs = r.iter().map(|&(a, b)| (b, a)).collect();
        prop_assert_eq!(rel.dagger(&rr).unwrap(), sets.relation(&rel, 1, 0, &conv));
        let meet: Pairs = compose_pairs(&r, &s).intersection(&t).copied().collect();
        prop_assert_eq!(rel.meet(&rs, &tt).unwrap(), sets.relation(&rel, 0, 2, &meet));
    }

    #[test]
    fn modular_law_holds((n, r, s, t) in triple()) {
        // r;s ∧ t ⊑ (r ∧ t;s†);s
        let sets = Sets::new(&n);
        let rel = Rel::new(FinSet);
        let (rr, ss, tt) = (sets.relation(&rel, 0, 1, &r), sets.relation(&rel, 1, 2, &s), sets.relation(&rel, 0, 2, &t));
        let lhs = rel.meet(&rel.compose(&rr, &ss).unwrap(), &tt).unwrap();
        let inner = rel.meet(&rr, &rel.compose(&tt, &rel.dagger(&ss).unwrap()).unwrap()).unwrap();
        prop_assert!(rel.leq(&lhs, &rel.compose(&inner, &ss).unwrap()).unwrap());
    }

    #[test]
    fn rank_and_kernel_are_complementary((p, rows, cols) in field_matrix()) {
        let m = Matrix::from_rows(p, cols, &rows).unwrap();
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.cols(), cols);
        prop_assert!(m.mul(&k).is_zero());
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn consistent_systems_are_solved((p, rows, cols) in field_matrix(), seed in prop::collection::vec(0u32..5, 4)) {
        let m = Matrix::from_rows(p, cols, &rows).unwrap();
        let x = Matrix::from_fn(p, cols, 1, |i, _| i64::from(seed[i % seed.len()]));
        let b = m.mul(&x);
        let y = m.solve(&b).expect("b lies in the column space");
        prop_assert_eq!(m.mul(&y), b);
    }

    #[test]
    fn bisimilarity_is_signature_refinement(a in lts(4, 2), b in lts(4, 2)) {
        let labels = atoms("l", 2);
        let (ca, cb) = (lts_coalgebra(&a, "p", &labels), lts_coalgebra(&b, "q", &labels));
        let union: Lts = a.iter().cloned().chain(b.iter().map(|s| s.iter().map(|&(l, t)| (l, t + a.len())).collect())).collect();
        let bl = blocks(&union);
        let want: Pairs = (0..a.len()).flat_map(|x| (0..b.len()).map(move |y| (x, y))).filter(|&(x, y)| bl[x] == bl[a.len() + y]).collect();
        let bisim = Bisim::new(FinSet);
        let got = bisim.bisimilarity(&ca, &cb).unwrap();
        let (xs, ys) = (atoms("p", a.len()), atoms("q", b.len()));
        let got: Pairs = bisim.rel().pairs(&got).unwrap().iter().map(|(x, y)| (xs.iter().position(|e| e == x).unwrap(), ys.iter().position(|e| e == y).unwrap())).collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn system_files_round_trip_canonically(a in lts(5, 3)) {
        let labels = atoms("l", 3);
        let states = atoms("p", a.len());
        let transitions: Vec<[String; 3]> = a
            .iter()
            .enumerate()
            .flat_map(|(s, succ)| succ.iter().map(|&(l, t)| [states[s].to_string(), labels[l].to_string(), states[t].to_string()]).collect::<Vec<_>>())
            .collect();
        let text = serde_json::json!({
            "format": 1,
            "backend": "finset",
            "functor": { "kind": "pow_labels", "labels": labels.iter().map(Elem::to_string).collect::<Vec<_>>() },
            "states": states.iter().map(Elem::to_string).collect::<Vec<_>>(),
            "transitions": transitions,
        })
        .to_string();
        let system = System::from_file(&parse_json::<SystemFile>(&text).unwrap()).unwrap();
        let once = to_canonical_json(&system.to_file().unwrap()).unwrap();
        let again = System::from_file(&parse_json::<SystemFile>(&once).unwrap()).unwrap();
        prop_assert_eq!(&to_canonical_json(&again.to_file().unwrap()).unwrap(), &once);
        let (System::FinSet(x), System::FinSet(y)) = (&system, &again) else { panic!("finset systems") };
        for s in &states {
            prop_assert_eq!(x.coalgebra.step(&x.cat, s), y.coalgebra.step(&y.cat, s));
        }
    }
}
