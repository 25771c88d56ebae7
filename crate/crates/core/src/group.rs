//! Finite groups given by multiplication tables.

use std::fmt;

use crate::category::{CatError, Result};
use crate::elem::Elem;

/// A finite group on indices `0..n`, with named elements.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    elems: Vec<Elem>,
    /// `mul[a][b]` is the index of `a·b`.
    mul: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    /// A small generating set, chosen greedily.
    generators: Vec<usize>,
}

impl FiniteGroup {
    /// Validates the table (closure, associativity, identity, inverses).
    pub fn from_table(name: &str, elems: Vec<Elem>, mul: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let n = elems.len();
        if n == 0 {
            return Err(CatError::Invalid("a group needs at least one element".into()));
        }
        let mut sorted = elems.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            return Err(CatError::Invalid("group element names must be distinct".into()));
        }
        if mul.len() != n || mul.iter().any(|row| row.len() != n || row.iter().any(|&c| c >= n)) {
            return Err(CatError::Invalid(format!("multiplication table must be {n}x{n} over the elements")));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(CatError::Invalid(format!(
                            "multiplication is not associative at ({}, {}, {})",
                            elems[a], elems[b], elems[c]
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mul[e][a] == a && mul[a][e] == a))
            .ok_or_else(|| CatError::Invalid("the table has no identity element".into()))?;
        let inverse = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| mul[a][b] == identity && mul[b][a] == identity)
                    .ok_or_else(|| CatError::Invalid(format!("{} has no inverse", elems[a])))
            })
            .collect::<Result<Vec<_>>>()?;
        let generators = greedy_generators(&mul, identity);
        Ok(FiniteGroup { name: name.to_string(), elems, mul, identity, inverse, generators })
    }

    /// Builds a group table from a named multiplication, e.g. parsed input.
    pub fn from_named_table(name: &str, elems: Vec<Elem>, table: &[Vec<Elem>]) -> Result<FiniteGroup> {
        let index = |e: &Elem| {
            elems
                .iter()
                .position(|x| x == e)
                .ok_or_else(|| CatError::Invalid(format!("{e} is not a group element")))
        };
        let mul = table.iter().map(|row| row.iter().map(index).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        FiniteGroup::from_table(name, elems, mul)
    }

    /// `ℤ/n` with elements named `0 .. n-1`.
    pub fn cyclic(n: usize) -> FiniteGroup {
        let elems = (0..n).map(|i| Elem::atom(&i.to_string())).collect();
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(&format!("Z{n}"), elems, mul).expect("cyclic group table")
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::cyclic(1)
    }

    /// The symmetric group on three letters; elements are permutations in
    /// one-line notation (`012` is the identity), multiplied as functions
    /// (`(a·b)(i) = a(b(i))`).
    pub fn symmetric3() -> FiniteGroup {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let elems = perms.iter().map(|p| Elem::atom(&format!("{}{}{}", p[0], p[1], p[2]))).collect();
        let mul = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        let c = [a[b[0]], a[b[1]], a[b[2]]];
                        perms.iter().position(|p| *p == c).unwrap()
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table("S3", elems, mul).expect("S3 table")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elems
    }

    pub fn element(&self, g: usize) -> &Elem {
        &self.elems[g]
    }

    pub fn index_of(&self, e: &Elem) -> Option<usize> {
        self.elems.iter().position(|x| x == e)
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// The multiplication table by element names.
    pub fn named_table(&self) -> Vec<Vec<Elem>> {
        self.mul.iter().map(|row| row.iter().map(|&c| self.elems[c].clone()).collect()).collect()
    }

    /// Elements generating the group. A finite subset closed under these is
    /// closed under the whole group.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

fn greedy_generators(mul: &[Vec<usize>], identity: usize) -> Vec<usize> {
    let n = mul.len();
    let mut gens = Vec::new();
    let mut reached = vec![false; n];
    reached[identity] = true;
    while let Some(g) = (0..n).find(|&g| !reached[g]) {
        gens.push(g);
        let mut frontier = vec![identity];
        reached = vec![false; n];
        reached[identity] = true;
        while let Some(a) = frontier.pop() {
            for &h in &gens {
                let b = mul[a][h];
                if !reached[b] {
                    reached[b] = true;
                    frontier.push(b);
                }
            }
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_groups_validate() {
        let z3 = FiniteGroup::cyclic(3);
        assert_eq!(z3.mul(2, 2), 1);
        assert_eq!(z3.inverse(1), 2);
        let s3 = FiniteGroup::symmetric3();
        assert_eq!(s3.order(), 6);
        let non_abelian = (0..6).any(|a| (0..6).any(|b| s3.mul(a, b) != s3.mul(b, a)));
        assert!(non_abelian);
        assert_eq!(s3.element(s3.identity()), &Elem::atom("012"));
    }

    #[test]
    fn generators_generate() {
        for g in [FiniteGroup::trivial(), FiniteGroup::cyclic(2), FiniteGroup::cyclic(6), FiniteGroup::symmetric3()] {
            let mut reached = vec![g.identity()];
            let mut i = 0;
            while i < reached.len() {
                for &h in g.generators() {
                    let b = g.mul(reached[i], h);
                    if !reached.contains(&b) {
                        reached.push(b);
                    }
                }
                i += 1;
            }
            assert_eq!(reached.len(), g.order(), "{}", g.name());
        }
        assert_eq!(FiniteGroup::symmetric3().generators().len(), 2);
        assert!(FiniteGroup::trivial().generators().is_empty());
    }

    #[test]
    fn bad_tables_are_rejected() {
        let e = vec![Elem::atom("e"), Elem::atom("g")];
        assert!(FiniteGroup::from_table("bad", e.clone(), vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_table("bad", e.clone(), vec![vec![0, 1]]).is_err());
        assert!(FiniteGroup::from_table("ok", e, vec![vec![0, 1], vec![1, 0]]).is_ok());
    }
}
