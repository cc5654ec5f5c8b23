use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::IntMatrix;
use crate::gf::{mult_matrix, BinaryPolynomial, FieldElement};

/// The `rn x rn` integer matrix acting on the coordinate vector of a state.
///
/// Rows and columns are ordered cell-major, coordinate-minor: index `i*n + j`
/// is coordinate `j` of cell `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VectorialTransitionMatrix {
    n: usize,
    dim: usize,
    entries: Vec<i64>,
}

impl VectorialTransitionMatrix {
    /// Block expansion: block `(i, j)` is the multiplication matrix of `t[i][j]`.
    pub fn expand(t: &[Vec<FieldElement>], p: &BinaryPolynomial) -> Result<Self> {
        let n = p.degree();
        let r = t.len();
        if r == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        let dim = r * n;
        let mut entries = vec![0i64; dim * dim];
        for (bi, row) in t.iter().enumerate() {
            if row.len() != r {
                return Err(Error::DimensionMismatch {
                    expected: r,
                    found: row.len(),
                });
            }
            for (bj, elem) in row.iter().enumerate() {
                let block = mult_matrix(&elem.lift(), p)?
                    .to_i64_rows()
                    .expect("multiplication matrix of a canonical lift has small entries");
                for (a, brow) in block.iter().enumerate() {
                    for (b, &v) in brow.iter().enumerate() {
                        entries[(bi * n + a) * dim + bj * n + b] = v;
                    }
                }
            }
        }
        Ok(Self { n, dim, entries })
    }

    /// Wraps an arbitrary non-negative integer matrix whose dimension is a
    /// multiple of `n`. Block structure is not checked.
    pub fn from_rows(n: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let dim = rows.len();
        if n == 0 || dim == 0 || dim % n != 0 {
            return Err(Error::DimensionMismatch {
                expected: n.max(1),
                found: dim,
            });
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            if row.iter().any(|&x| x < 0) {
                return Err(Error::InvalidSpec("transition matrix entries must be non-negative".into()));
            }
            entries.extend_from_slice(row);
        }
        Ok(Self { n, dim, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.dim / self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.dim).map(<[i64]>::to_vec).collect()
    }

    pub(crate) fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        IntMatrix::from_fn(self.dim, |i, j| BigInt::from(self.get(i, j)))
    }

    /// Column sums `w`: the carry in coordinate `k` stays in `[0, w[k])`.
    pub fn column_sums(&self) -> Vec<i64> {
        (0..self.dim)
            .map(|j| (0..self.dim).map(|i| self.get(i, j)).sum())
            .collect()
    }
}
