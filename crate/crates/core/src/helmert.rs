//! Orthonormal basis of the subspace orthogonal to the all-ones vector.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// The `d × D` Helmert sub-matrix: the Helmert matrix with its first row
/// (the normalized all-ones row) removed.
///
/// Row `i` (1-based, `i = 1..d`) has `1/√(i(i+1))` in columns `1..i`,
/// `−i/√(i(i+1))` in column `i+1` and zeros afterwards. Rows are orthonormal
/// and orthogonal to `1_D`. Any orthonormal completion of the all-ones
/// direction gives isometric results; this explicit choice is a convention
/// fixed so that outputs are reproducible.
#[derive(Debug, Clone, PartialEq)]
pub struct HelmertBasis {
    matrix: DMatrix<f64>,
}

impl HelmertBasis {
    pub fn new(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::DimensionTooSmall { got: dim });
        }
        let d = dim - 1;
        let mut m = DMatrix::zeros(d, dim);
        for i in 1..=d {
            let norm = 1.0 / ((i * (i + 1)) as f64).sqrt();
            for j in 0..i {
                m[(i - 1, j)] = norm;
            }
            m[(i - 1, i)] = -(i as f64) * norm;
        }
        Ok(Self { matrix: m })
    }

    /// Number of components `D` (columns).
    pub fn dim(&self) -> usize {
        self.matrix.ncols()
    }

    /// Reduced dimension `d = D − 1` (rows).
    pub fn reduced_dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Apply `H` to a `D`-vector, yielding a `d`-vector.
    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: v.len(),
                right: self.dim(),
            });
        }
        let d = self.reduced_dim();
        let mut out = vec![0.0; d];
        for i in 0..d {
            let mut acc = 0.0;
            for j in 0..self.dim() {
                acc += self.matrix[(i, j)] * v[j];
            }
            out[i] = acc;
        }
        Ok(out)
    }

    /// Apply `Hᵀ` to a `d`-vector, yielding a `D`-vector in the zero-sum
    /// subspace.
    pub fn apply_transpose(&self, z: &[f64]) -> Result<Vec<f64>> {
        if z.len() != self.reduced_dim() {
            return Err(Error::DimensionMismatch {
                left: z.len(),
                right: self.reduced_dim(),
            });
        }
        let mut out = vec![0.0; self.dim()];
        for j in 0..self.dim() {
            let mut acc = 0.0;
            for i in 0..self.reduced_dim() {
                acc += self.matrix[(i, j)] * z[i];
            }
            out[j] = acc;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn d2_single_row() {
        let h = HelmertBasis::new(2).unwrap();
        let s = 1.0 / 2.0_f64.sqrt();
        assert_abs_diff_eq!(h.matrix()[(0, 0)], s, epsilon = 1e-15);
        assert_abs_diff_eq!(h.matrix()[(0, 1)], -s, epsilon = 1e-15);
    }

    #[test]
    fn d3_standard_rows() {
        let h = HelmertBasis::new(3).unwrap();
        let s2 = 1.0 / 2.0_f64.sqrt();
        let s6 = 1.0 / 6.0_f64.sqrt();
        let expect = [[s2, -s2, 0.0], [s6, s6, -2.0 * s6]];
        for i in 0..2 {
            for j in 0..3 {
                assert_abs_diff_eq!(h.matrix()[(i, j)], expect[i][j], epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn orthonormality_and_ones_kernel() {
        // H Hᵀ = I_d and H 1_D = 0, checked numerically for 2..=20
        for dim in 2..=20 {
            let h = HelmertBasis::new(dim).unwrap();
            let gram = h.matrix() * h.matrix().transpose();
            for i in 0..dim - 1 {
                for j in 0..dim - 1 {
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert_abs_diff_eq!(gram[(i, j)], want, epsilon = 1e-12);
                }
            }
            let ones = vec![1.0; dim];
            for v in h.apply(&ones).unwrap() {
                assert_abs_diff_eq!(v, 0.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn rejects_dim_below_two() {
        assert_eq!(HelmertBasis::new(1), Err(Error::DimensionTooSmall { got: 1 }));
    }

    #[test]
    fn transpose_roundtrip_on_zero_sum_vectors() {
        let h = HelmertBasis::new(5).unwrap();
        let v = [1.0, -2.0, 0.5, 0.25, 0.25];
        let z = h.apply(&v).unwrap();
        let back = h.apply_transpose(&z).unwrap();
        for (a, b) in back.iter().zip(v.iter()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
        }
    }
}
