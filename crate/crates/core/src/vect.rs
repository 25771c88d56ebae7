//! Finite-dimensional vector spaces over ℤ_p and linear maps.
//!
//! Objects are `ℤ_p^n` with the standard basis; morphisms are matrices of
//! shape target × source acting on column vectors. Subobjects are
//! represented by the canonical column-space basis, so equal subspaces
//! have equal monos.

use std::fmt;

use crate::category::{
    CatError, Factorization, Product, PullbackResult, PushoutResult, RegularCategory, Result,
};
use crate::linalg::{is_prime, Matrix, MAX_PRIME};

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct VectObj {
    p: u32,
    dim: usize,
}

impl VectObj {
    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

impl fmt::Debug for VectObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z{}^{}", self.p, self.dim)
    }
}

#[derive(Clone, PartialEq)]
pub struct VectMor {
    src: VectObj,
    tgt: VectObj,
    matrix: Matrix,
}

impl VectMor {
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn source(&self) -> VectObj {
        self.src
    }

    pub fn target(&self) -> VectObj {
        self.tgt
    }
}

impl fmt::Debug for VectMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.matrix)
    }
}

/// Vector spaces over one prime field: regular (indeed abelian) with split
/// epis, but not a topos.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Vect {
    p: u32,
}

impl Vect {
    pub fn new(p: u32) -> Result<Vect> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(CatError::Invalid(format!("{p} is not a supported prime")));
        }
        Ok(Vect { p })
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn space(&self, dim: usize) -> VectObj {
        VectObj { p: self.p, dim }
    }

    /// A linear map from its matrix (target dimension × source dimension).
    pub fn morphism(&self, src: VectObj, tgt: VectObj, matrix: Matrix) -> Result<VectMor> {
        if src.p != self.p || tgt.p != self.p || matrix.prime() != self.p {
            return Err(CatError::Backend(format!("prime mismatch with Z{}", self.p)));
        }
        if matrix.rows() != tgt.dim || matrix.cols() != src.dim {
            return Err(CatError::Endpoint(format!(
                "matrix is {}x{} but the map is {:?} -> {:?}",
                matrix.rows(),
                matrix.cols(),
                src,
                tgt
            )));
        }
        Ok(VectMor { src, tgt, matrix })
    }

    fn mor(&self, src: VectObj, tgt: VectObj, matrix: Matrix) -> VectMor {
        debug_assert!(matrix.rows() == tgt.dim && matrix.cols() == src.dim);
        VectMor { src, tgt, matrix }
    }
}

impl RegularCategory for Vect {
    type Obj = VectObj;
    type Mor = VectMor;

    fn backend_name(&self) -> &'static str {
        "vect"
    }

    fn source<'a>(&self, f: &'a VectMor) -> &'a VectObj {
        &f.src
    }

    fn target<'a>(&self, f: &'a VectMor) -> &'a VectObj {
        &f.tgt
    }

    fn identity(&self, x: &VectObj) -> VectMor {
        self.mor(*x, *x, Matrix::identity(self.p, x.dim))
    }

    fn compose(&self, g: &VectMor, f: &VectMor) -> Result<VectMor> {
        self.check_composable(g, f)?;
        Ok(self.mor(f.src, g.tgt, g.matrix.mul(&f.matrix)))
    }

    fn terminal(&self) -> VectObj {
        self.space(0)
    }

    fn initial(&self) -> VectObj {
        self.space(0)
    }

    fn initial_morphism(&self, x: &VectObj) -> Result<VectMor> {
        Ok(self.mor(self.space(0), *x, Matrix::zeros(self.p, x.dim, 0)))
    }

    fn product(&self, x: &VectObj, y: &VectObj) -> Result<Product<Vect>> {
        if x.p != self.p || y.p != self.p {
            return Err(CatError::Backend("prime mismatch".into()));
        }
        let apex = self.space(x.dim + y.dim);
        let id_x = Matrix::identity(self.p, x.dim);
        let id_y = Matrix::identity(self.p, y.dim);
        let p1 = id_x.hstack(&Matrix::zeros(self.p, x.dim, y.dim));
        let p2 = Matrix::zeros(self.p, y.dim, x.dim).hstack(&id_y);
        Ok(Product { p1: self.mor(apex, *x, p1), p2: self.mor(apex, *y, p2), apex })
    }

    fn pair(&self, f: &VectMor, g: &VectMor) -> Result<VectMor> {
        if f.src != g.src {
            return Err(CatError::Endpoint("pairing needs a common source".into()));
        }
        Ok(self.mor(f.src, self.space(f.tgt.dim + g.tgt.dim), f.matrix.vstack(&g.matrix)))
    }

    fn pullback(&self, f: &VectMor, g: &VectMor) -> Result<PullbackResult<Vect>> {
        if f.tgt != g.tgt {
            return Err(CatError::Endpoint("pullback needs a common codomain".into()));
        }
        let k = f.matrix.hstack(&g.matrix.neg()).kernel();
        let apex = self.space(k.cols());
        let a = f.src.dim;
        Ok(PullbackResult {
            left: self.mor(apex, f.src, k.slice_rows(0, a)),
            right: self.mor(apex, g.src, k.slice_rows(a, k.rows())),
            apex,
        })
    }

    fn pushout(&self, f: &VectMor, g: &VectMor) -> Result<PushoutResult<Vect>> {
        if f.src != g.src {
            return Err(CatError::Endpoint("pushout needs a common domain".into()));
        }
        let m = f.matrix.vstack(&g.matrix.neg());
        // rows of q span the annihilator of the image of m
        let q = m.transpose().kernel().transpose();
        let apex = self.space(q.rows());
        let a = f.tgt.dim;
        Ok(PushoutResult {
            left: self.mor(f.tgt, apex, q.slice_cols(0, a)),
            right: self.mor(g.tgt, apex, q.slice_cols(a, q.cols())),
            apex,
        })
    }

    fn mediate_pullback(&self, f: &VectMor, g: &VectMor, pb: &PullbackResult<Vect>, a: &VectMor, b: &VectMor) -> Result<VectMor> {
        if a.src != b.src || a.tgt != f.src || b.tgt != g.src {
            return Err(CatError::Endpoint("cone legs do not match the cospan".into()));
        }
        if f.matrix.mul(&a.matrix) != g.matrix.mul(&b.matrix) {
            return Err(CatError::NonCommuting("f∘a differs from g∘b".into()));
        }
        let legs = pb.left.matrix.vstack(&pb.right.matrix);
        let u = legs
            .solve(&a.matrix.vstack(&b.matrix))
            .ok_or_else(|| CatError::Invalid("cone does not factor through the pullback".into()))?;
        Ok(self.mor(a.src, pb.apex, u))
    }

    fn mediate_pushout(&self, f: &VectMor, g: &VectMor, po: &PushoutResult<Vect>, a: &VectMor, b: &VectMor) -> Result<VectMor> {
        if a.tgt != b.tgt || a.src != f.tgt || b.src != g.tgt {
            return Err(CatError::Endpoint("cocone legs do not match the span".into()));
        }
        if a.matrix.mul(&f.matrix) != b.matrix.mul(&g.matrix) {
            return Err(CatError::NonCommuting("a∘f differs from b∘g".into()));
        }
        let q = po.left.matrix.hstack(&po.right.matrix);
        let ab = a.matrix.hstack(&b.matrix);
        let ut = q
            .transpose()
            .solve(&ab.transpose())
            .ok_or_else(|| CatError::Invalid("cocone does not factor through the pushout".into()))?;
        Ok(self.mor(po.apex, a.tgt, ut.transpose()))
    }

    fn factorize(&self, f: &VectMor) -> Result<Factorization<Vect>> {
        let basis = f.matrix.column_space();
        let image = self.space(basis.cols());
        let e = basis.solve(&f.matrix).expect("columns lie in their own span");
        Ok(Factorization { epi: self.mor(f.src, image, e), mono: self.mor(image, f.tgt, basis) })
    }

    fn is_mono(&self, f: &VectMor) -> Result<bool> {
        Ok(f.matrix.rank() == f.src.dim)
    }

    fn is_regular_epi(&self, f: &VectMor) -> Result<bool> {
        Ok(f.matrix.rank() == f.tgt.dim)
    }

    fn solve_factorization(&self, h: &VectMor, through: &VectMor) -> Result<Option<VectMor>> {
        if h.tgt != through.tgt {
            return Err(CatError::Endpoint("solve_factorization needs a common target".into()));
        }
        Ok(through.matrix.solve(&h.matrix).map(|u| self.mor(h.src, through.src, u)))
    }

    fn uncovered(&self, f: &VectMor) -> Result<Vec<String>> {
        let rank = f.matrix.rank();
        if rank == f.tgt.dim {
            return Ok(Vec::new());
        }
        let basis = f.matrix.column_space();
        let missing: Vec<String> = (0..f.tgt.dim)
            .filter(|&i| {
                let e = Matrix::from_fn(self.p, f.tgt.dim, 1, |r, _| (r == i) as i64);
                basis.solve(&e).is_none()
            })
            .map(|i| format!("e{i}"))
            .collect();
        Ok(vec![format!(
            "image has dimension {rank} in {:?}; basis vectors outside it: {}",
            f.tgt,
            missing.join(", ")
        )])
    }
}
