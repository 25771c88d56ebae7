//! Seeded generators for randomized law suites and tests.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::elem::Elem;
use crate::linalg::Matrix;
use crate::shape::Shape;

pub type SuiteRng = ChaCha8Rng;

/// A deterministic generator for one seed.
pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly random function table from `src` into `tgt` (`tgt` non-empty
/// unless `src` is empty).
pub fn function_table<R: Rng>(rng: &mut R, src: &[Elem], tgt: &[Elem]) -> Vec<Elem> {
    src.iter().map(|_| tgt.choose(rng).expect("function into an empty set").clone()).collect()
}

/// A random subset of `xs`, each element kept with probability `density`.
pub fn subset<R: Rng>(rng: &mut R, xs: &[Elem], density: f64) -> Vec<Elem> {
    xs.iter().filter(|_| rng.gen_bool(density)).cloned().collect()
}

/// A random set of pairs in `xs × ys`.
pub fn pairs<R: Rng>(rng: &mut R, xs: &[Elem], ys: &[Elem], density: f64) -> Vec<(Elem, Elem)> {
    let mut out = Vec::new();
    for x in xs {
        for y in ys {
            if rng.gen_bool(density) {
                out.push((x.clone(), y.clone()));
            }
        }
    }
    out
}

/// Random transitions `(s, a, t)` over the given states and labels.
pub fn transitions<R: Rng>(rng: &mut R, states: &[Elem], labels: &[Elem], density: f64) -> Vec<(Elem, Elem, Elem)> {
    let mut out = Vec::new();
    for s in states {
        for a in labels {
            for t in states {
                if rng.gen_bool(density) {
                    out.push((s.clone(), a.clone(), t.clone()));
                }
            }
        }
    }
    out
}

/// A random `rows × cols` matrix over ℤ_p.
pub fn matrix<R: Rng>(rng: &mut R, p: u32, rows: usize, cols: usize) -> Matrix {
    let entries: Vec<i64> = (0..rows * cols).map(|_| i64::from(rng.gen_range(0..p))).collect();
    Matrix::from_fn(p, rows, cols, |i, j| entries[i * cols + j])
}

/// A random element of `F X` for the functor described by `shape`, without
/// listing `F X`. Powerset levels draw at most `max_members` members.
/// Returns `None` when `F X` is empty.
pub fn shape_element<R: Rng>(rng: &mut R, shape: &Shape, base: &[Elem], max_members: usize) -> Option<Elem> {
    match shape {
        Shape::Id => base.choose(rng).cloned(),
        Shape::Const(k) => k.choose(rng).cloned(),
        Shape::Prod(a, b) => {
            let x = shape_element(rng, a, base, max_members)?;
            let y = shape_element(rng, b, base, max_members)?;
            Some(Elem::pair(x, y))
        }
        Shape::Exp(l, a) => {
            let items = (0..l.len()).map(|_| shape_element(rng, a, base, max_members)).collect::<Option<Vec<_>>>()?;
            Some(Elem::tuple(items))
        }
        Shape::Pow(a) => {
            let k = rng.gen_range(0..=max_members);
            Some(Elem::set((0..k).filter_map(|_| shape_element(rng, a, base, max_members))))
        }
        Shape::UPair(a) => {
            let x = shape_element(rng, a, base, max_members)?;
            let y = shape_element(rng, a, base, max_members)?;
            Some(Elem::bag([x, y]))
        }
    }
}

/// Elements of `F X` to test on: all of them when there are at most
/// `exhaustive` (and they can be listed), otherwise `samples` random ones.
pub fn shape_samples<R: Rng>(
    rng: &mut R,
    shape: &Shape,
    base: &[Elem],
    exhaustive: u128,
    samples: usize,
    max_members: usize,
) -> Vec<Elem> {
    if shape.count(base.len() as u128) <= exhaustive {
        if let Ok(all) = shape.enumerate(base, exhaustive) {
            return all;
        }
    }
    (0..samples).filter_map(|_| shape_element(rng, shape, base, max_members)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elem::atoms;

    #[test]
    fn generators_are_deterministic_per_seed() {
        let xs = atoms("x", 4);
        let a = function_table(&mut rng(7), &xs, &xs);
        let b = function_table(&mut rng(7), &xs, &xs);
        assert_eq!(a, b);
    }

    #[test]
    fn shape_elements_lie_in_the_image() {
        let xs = atoms("x", 3);
        let shape = Shape::compose(&Shape::pow_labels(&atoms("a", 2)), &Shape::pow());
        let mut r = rng(1);
        for _ in 0..50 {
            let e = shape_element(&mut r, &shape, &xs, 3).unwrap();
            assert!(shape.contains(&e, &|x| xs.contains(x)));
        }
        assert!(shape_element(&mut r, &Shape::Id, &[], 3).is_none());
    }
}
