use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Entrywise tolerance on `UᵀU − I` for matrices built in double precision.
pub const UNITARY_TOL: f64 = 1e-10;

/// Square real matrix with orthogonal columns.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix {
    m: DMatrix<f64>,
}

/// `{"dim": N, "rows": [[...], ...]}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub dim: usize,
    pub rows: Vec<Vec<f64>>,
}

fn square_from_rows(rows: &[Vec<f64>]) -> Result<DMatrix<f64>> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::NotSquare { rows: 0, row: 0, len: 0 });
    }
    for (i, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(Error::NotSquare { rows: n, row: i, len: r.len() });
        }
    }
    Ok(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

impl UnitaryMatrix {
    pub fn identity(dim: usize) -> Self {
        Self {
            m: DMatrix::identity(dim, dim),
        }
    }

    /// Validates unitarity at [`UNITARY_TOL`].
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::from_rows_with_tolerance(rows, UNITARY_TOL)
    }

    /// Validates unitarity at a caller-chosen tolerance (printed fixtures carry only a
    /// few decimals).
    pub fn from_rows_with_tolerance(rows: &[Vec<f64>], tol: f64) -> Result<Self> {
        let m = Self {
            m: square_from_rows(rows)?,
        };
        let r = m.unitarity_residual();
        if r > tol || !r.is_finite() {
            return Err(Error::NotUnitary(r));
        }
        Ok(m)
    }

    /// Row-major array constructor for compile-time constants; panics if not unitary.
    pub fn from_array<const N: usize>(rows: [[f64; N]; N]) -> Self {
        let rows: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
        Self::from_rows(&rows).expect("constant matrix is unitary")
    }

    /// Permutation matrix with `P[i][map[i]] = 1`, so `(P·v)[i] = v[map[i]]`.
    pub fn permutation(map: &[usize]) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &j in map {
            if j >= n || std::mem::replace(&mut seen[j], true) {
                return Err(Error::NotBijective(n));
            }
        }
        Ok(Self {
            m: DMatrix::from_fn(n, n, |i, j| if map[i] == j { 1.0 } else { 0.0 }),
        })
    }

    pub(crate) fn from_dmatrix(m: DMatrix<f64>) -> Self {
        Self { m }
    }

    pub(crate) fn as_dmatrix(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.m[(row, col)]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim())
            .map(|i| self.m.row(i).iter().copied().collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Self { m: self.m.transpose() }
    }

    pub fn mul(&self, rhs: &UnitaryMatrix) -> Result<Self> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: rhs.dim(),
            });
        }
        Ok(Self { m: &self.m * &rhs.m })
    }

    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: v.len(),
            });
        }
        Ok((0..self.dim())
            .map(|i| self.m.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn det(&self) -> f64 {
        self.m.determinant()
    }

    /// `max |(UᵀU − I)ᵢⱼ|`
    pub fn unitarity_residual(&self) -> f64 {
        let n = self.dim();
        let g = self.m.transpose() * &self.m;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g[(i, j)] - target).abs());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &UnitaryMatrix) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        Ok(self
            .m
            .iter()
            .zip(other.m.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    /// Block-diagonal stacking `self ⊕ other`.
    pub fn direct_sum(&self, other: &UnitaryMatrix) -> Self {
        let (n, k) = (self.dim(), other.dim());
        let mut m = DMatrix::zeros(n + k, n + k);
        m.view_mut((0, 0), (n, n)).copy_from(&self.m);
        m.view_mut((n, n), (k, k)).copy_from(&other.m);
        Self { m }
    }

    /// Returns a copy with one entry overwritten, skipping validation.
    pub fn with_entry(&self, row: usize, col: usize, value: f64) -> Self {
        let mut m = self.m.clone();
        m[(row, col)] = value;
        Self { m }
    }

    pub fn to_document(&self) -> MatrixDocument {
        MatrixDocument {
            dim: self.dim(),
            rows: self.rows(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("matrix document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: MatrixDocument = serde_json::from_str(text)?;
        doc.into_matrix()
    }

    /// Rows formatted at `precision` decimals, one row per line.
    pub fn render(&self, precision: usize) -> String {
        let mut out = String::new();
        for row in self.rows() {
            let cells: Vec<String> = row
                .iter()
                .map(|v| {
                    // avoid printing "-0.0000"
                    let v = if v.abs() < 0.5 * 10f64.powi(-(precision as i32)) { 0.0 } else { *v };
                    format!("{v:>w$.p$}", w = precision + 4, p = precision)
                })
                .collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

impl MatrixDocument {
    pub fn into_matrix(self) -> Result<UnitaryMatrix> {
        if self.rows.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: self.rows.len(),
            });
        }
        UnitaryMatrix::from_rows(&self.rows)
    }
}

impl fmt::Display for UnitaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(4))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_square_and_non_unitary() {
        assert!(matches!(
            UnitaryMatrix::from_rows(&[vec![1.0, 0.0], vec![0.0]]),
            Err(Error::NotSquare { .. })
        ));
        assert!(matches!(
            UnitaryMatrix::from_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]),
            Err(Error::NotUnitary(_))
        ));
    }

    #[test]
    fn permutation_semantics() {
        let p = UnitaryMatrix::permutation(&[2, 0, 1]).unwrap();
        assert_eq!(p.apply(&[10.0, 20.0, 30.0]).unwrap(), vec![30.0, 10.0, 20.0]);
        assert!(UnitaryMatrix::permutation(&[0, 0, 1]).is_err());
        assert!(UnitaryMatrix::permutation(&[0, 3, 1]).is_err());
    }

    #[test]
    fn direct_sum_is_block_diagonal() {
        let swap = UnitaryMatrix::permutation(&[1, 0]).unwrap();
        let s = UnitaryMatrix::identity(1).direct_sum(&swap);
        assert_eq!(
            s.rows(),
            vec![vec![1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0], vec![0.0, 1.0, 0.0]]
        );
        assert!((s.det() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn json_document() {
        let p = UnitaryMatrix::permutation(&[1, 0]).unwrap();
        assert_eq!(UnitaryMatrix::from_json(&p.to_json()).unwrap(), p);
        let bad = r#"{"dim": 3, "rows": [[1, 0], [0, 1]]}"#;
        assert!(UnitaryMatrix::from_json(bad).is_err());
    }

    #[test]
    fn render_has_fixed_precision() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let m = UnitaryMatrix::from_array([[h, -h], [h, h]]);
        assert_eq!(m.render(4), "  0.7071  -0.7071\n  0.7071   0.7071\n");
    }
}
