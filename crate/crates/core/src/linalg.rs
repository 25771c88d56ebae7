//! Dense matrices over a prime field ℤ_p.

use std::fmt;

use crate::category::{CatError, Result};

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d: &u32| (*d as u64) * (*d as u64) <= p as u64).all(|d| !p.is_multiple_of(d))
}

/// Largest supported modulus; products of two residues fit in `u64`.
pub const MAX_PRIME: u32 = 65521;

fn inv_mod(a: u32, p: u32) -> u32 {
    // Fermat: a^(p-2)
    let (mut base, mut exp, mut acc) = (a as u64, (p - 2) as u64, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

/// A `rows × cols` matrix with entries reduced mod `p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Matrix {
        Matrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Matrix {
        let mut m = Matrix::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Rejects entries that are not reduced, ragged rows, and non-prime moduli.
    pub fn from_rows(p: u32, cols: usize, rows: &[Vec<u32>]) -> Result<Matrix> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(CatError::Invalid(format!("modulus {p} is not a supported prime")));
        }
        let mut m = Matrix::zeros(p, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(CatError::Invalid(format!("row {i} has {} entries, expected {cols}", row.len())));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= p {
                    return Err(CatError::Invalid(format!("entry ({i},{j}) = {v} is not reduced mod {p}")));
                }
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    /// Entries are reduced on the way in.
    pub fn from_fn(p: u32, rows: usize, cols: usize, f: impl Fn(usize, usize) -> i64) -> Matrix {
        let mut m = Matrix::zeros(p, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j).rem_euclid(p as i64) as u32);
            }
        }
        m
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        debug_assert!(v < self.p);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<u32> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not match");
        let p = self.p as u64;
        let mut m = Matrix::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    m.data[idx] = ((m.data[idx] as u64 + a * other.get(k, j) as u64) % p) as u32;
                }
            }
        }
        m
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        (0..self.rows).map(|i| (0..self.cols).fold(0u64, |acc, j| (acc + self.get(i, j) as u64 * v[j] as u64) % p) as u32).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.p, self.cols, self.rows, |i, j| self.get(j, i) as i64)
    }

    pub fn neg(&self) -> Matrix {
        Matrix::from_fn(self.p, self.rows, self.cols, |i, j| -(self.get(i, j) as i64))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.p, self.rows, self.cols, |i, j| self.get(i, j) as i64 - other.get(i, j) as i64)
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.p, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j) as i64
            } else {
                other.get(i, j - self.cols) as i64
            }
        })
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        Matrix::from_fn(self.p, self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.get(i, j) as i64
            } else {
                other.get(i - self.rows, j) as i64
            }
        })
    }

    /// Block-diagonal sum.
    pub fn block_diag(blocks: &[&Matrix], p: u32) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(p, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn slice_rows(&self, from: usize, to: usize) -> Matrix {
        Matrix::from_fn(self.p, to - from, self.cols, |i, j| self.get(from + i, j) as i64)
    }

    pub fn slice_cols(&self, from: usize, to: usize) -> Matrix {
        Matrix::from_fn(self.p, self.rows, to - from, |i, j| self.get(i, from + j) as i64)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let p = self.p as u64;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else { continue };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = inv_mod(m.get(r, c), self.p) as u64;
            for j in 0..m.cols {
                let v = (m.get(r, j) as u64 * inv % p) as u32;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                let factor = m.get(i, c) as u64;
                if i == r || factor == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = (m.get(i, j) as u64 + p * p - factor * m.get(r, j) as u64) % p;
                    m.set(i, j, v as u32);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space `{v : self·v = 0}` as columns, one per free
    /// variable in increasing order.
    pub fn kernel(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.p, self.cols, free.len());
        for (col, &f) in free.iter().enumerate() {
            k.set(f, col, 1);
            for (row, &pc) in pivots.iter().enumerate() {
                let v = r.get(row, f);
                if v != 0 {
                    k.set(pc, col, self.p - v);
                }
            }
        }
        k
    }

    /// Canonical basis (as columns) of the column space: the nonzero rows of
    /// the reduced row echelon form of the transpose. Equal column spaces give
    /// equal results.
    pub fn column_space(&self) -> Matrix {
        let (r, pivots) = self.transpose().rref();
        r.slice_rows(0, pivots.len()).transpose()
    }

    /// Some `X` with `self·X = rhs`, with free variables set to zero, or `None`.
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows, "right-hand side has the wrong height");
        let aug = self.hstack(rhs);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.p, self.cols, rhs.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, r.get(row, self.cols + j));
            }
        }
        Some(x)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(3) && is_prime(65521));
        assert!(!is_prime(1) && !is_prime(4) && !is_prime(0));
    }

    #[test]
    fn rref_rank_kernel() {
        let m = Matrix::from_rows(2, 2, &[vec![1, 1]]).unwrap();
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).is_zero());

        let m = Matrix::from_rows(3, 3, &[vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 1]]).unwrap();
        // 1*1 - 2*2 = -3 = 0 mod 3: the top block is singular
        assert_eq!(m.rank(), 2);
        assert!(m.mul(&m.kernel()).is_zero());
    }

    #[test]
    fn column_space_is_canonical() {
        let a = Matrix::from_rows(3, 2, &[vec![1, 2], vec![2, 1]]).unwrap();
        let b = Matrix::from_rows(3, 1, &[vec![1], vec![2]]).unwrap();
        assert_eq!(a.column_space(), b.column_space());
        assert_eq!(a.column_space().cols(), 1);
    }

    #[test]
    fn solving_linear_systems() {
        let a = Matrix::from_rows(5, 2, &[vec![1, 2], vec![3, 4]]).unwrap();
        let b = Matrix::from_rows(5, 1, &[vec![1], vec![0]]).unwrap();
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x), b);
        let singular = Matrix::from_rows(5, 2, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert!(singular.solve(&b).is_none());
        assert!(Matrix::from_rows(4, 1, &[vec![1]]).is_err());
        assert!(Matrix::from_rows(5, 1, &[vec![5]]).is_err());
    }
}
