//! Integer lattices, their Gram determinants, and the alternating matrices
//! `R_ij = l_i (x) l_j - l_j (x) l_i` spanning the alternating forms supported
//! on a sublattice.

use crate::counting::CountingError;
use crate::linalg::{determinant, AlternatingMatrix, IntegerMatrix};
use crate::scalar::ExactInt;

/// `r` integer vectors in `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis<T> {
    dim: usize,
    vectors: Vec<Vec<T>>,
}

impl<T: ExactInt> LatticeBasis<T> {
    /// Rejects ragged input and linearly dependent vectors.
    pub fn new(vectors: Vec<Vec<T>>) -> Result<Self, CountingError> {
        let b = Self::new_unchecked(vectors)?;
        if gram_det(&b).is_zero() {
            return Err(CountingError::DependentBasis);
        }
        Ok(b)
    }

    /// Shape check only; dependent families are allowed.
    pub fn new_unchecked(vectors: Vec<Vec<T>>) -> Result<Self, CountingError> {
        let dim = vectors.first().map_or(0, Vec::len);
        if vectors.iter().any(|v| v.len() != dim) {
            return Err(CountingError::Ragged);
        }
        Ok(Self { dim, vectors })
    }

    pub fn from_i64(vectors: &[&[i64]]) -> Result<Self, CountingError> {
        Self::new(
            vectors
                .iter()
                .map(|v| v.iter().map(|&x| T::from_i64(x).unwrap()).collect())
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[Vec<T>] {
        &self.vectors
    }
}

fn dot<T: ExactInt>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// `(l_i, l_j)` for all pairs.
pub fn gram_matrix<T: ExactInt>(basis: &LatticeBasis<T>) -> IntegerMatrix<T> {
    let r = basis.rank();
    let mut g = IntegerMatrix::zeros(r, r);
    for i in 0..r {
        for j in 0..r {
            g.set(i, j, dot(&basis.vectors[i], &basis.vectors[j]));
        }
    }
    g
}

/// `det (l_i, l_j) = d(L)^2`.
pub fn gram_det<T: ExactInt>(basis: &LatticeBasis<T>) -> T {
    determinant(&gram_matrix(basis))
}

/// `R_ij` for `i < j`, in lexicographic order of `(i, j)`.
pub fn build_r_basis<T: ExactInt>(basis: &LatticeBasis<T>) -> Result<Vec<AlternatingMatrix<T>>, CountingError> {
    let r = basis.rank();
    if r < 2 {
        return Err(CountingError::RankTooSmall(r));
    }
    let n = basis.dim();
    let mut out = Vec::with_capacity(r * (r - 1) / 2);
    for i in 0..r {
        for j in i + 1..r {
            let (li, lj) = (&basis.vectors[i], &basis.vectors[j]);
            let mut m = AlternatingMatrix::zeros(n);
            for a in 0..n {
                for b in a + 1..n {
                    m.set(a, b, li[a].clone() * lj[b].clone() - lj[a].clone() * li[b].clone());
                }
            }
            out.push(m);
        }
    }
    Ok(out)
}

/// Frobenius inner product over all `n^2` entries.
pub fn matrix_inner<T: ExactInt>(x: &AlternatingMatrix<T>, y: &AlternatingMatrix<T>) -> T {
    let two = T::one() + T::one();
    dot(x.upper(), y.upper()) * two
}

/// `(R_ij, R_st) = 2 (l_i,l_s)(l_j,l_t) - 2 (l_i,l_t)(l_j,l_s)` for every pair of pairs.
pub fn check_inner_product_identity<T: ExactInt>(basis: &LatticeBasis<T>) -> Result<bool, CountingError> {
    let rs = build_r_basis(basis)?;
    let g = gram_matrix(basis);
    let r = basis.rank();
    let pairs: Vec<(usize, usize)> = (0..r).flat_map(|i| (i + 1..r).map(move |j| (i, j))).collect();
    let two = T::one() + T::one();
    for (x, &(i, j)) in pairs.iter().enumerate() {
        for (y, &(s, t)) in pairs.iter().enumerate() {
            let lhs = matrix_inner(&rs[x], &rs[y]);
            let rhs = two.clone() * g.get(i, s).clone() * g.get(j, t).clone()
                - two.clone() * g.get(i, t).clone() * g.get(j, s).clone();
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Squared covolume identity for the `R_ij` lattice:
/// `det Gram(R) = 2^{r(r-1)/2} det Gram(l)^{r-1}`.
pub fn check_det_identity<T: ExactInt>(basis: &LatticeBasis<T>) -> Result<bool, CountingError> {
    let g = gram_det(basis);
    if g.is_zero() {
        return Err(CountingError::DependentBasis);
    }
    let (lhs, rhs) = det_identity_sides(basis)?;
    Ok(lhs == rhs)
}

/// Both sides of [`check_det_identity`].
pub fn det_identity_sides<T: ExactInt>(basis: &LatticeBasis<T>) -> Result<(T, T), CountingError> {
    let rs = build_r_basis(basis)?;
    let k = rs.len();
    let mut gr = IntegerMatrix::zeros(k, k);
    for x in 0..k {
        for y in 0..k {
            gr.set(x, y, matrix_inner(&rs[x], &rs[y]));
        }
    }
    let lhs = determinant(&gr);
    let r = basis.rank();
    let g = gram_det(basis);
    let two = T::one() + T::one();
    let rhs = num_traits::pow(two, r * (r - 1) / 2) * num_traits::pow(g, r - 1);
    Ok((lhs, rhs))
}
