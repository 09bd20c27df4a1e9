use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::AnalysisError;

/// Symmetric n×n matrix of nonnegative distances with a zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    labels: Vec<String>,
    data: Vec<f64>,
}

impl DistanceMatrix {
    /// Builds the matrix by evaluating `f(i, j)` once per pair `i < j`.
    pub fn from_fn(
        labels: Vec<String>,
        mut f: impl FnMut(usize, usize) -> f64,
    ) -> Result<Self, AnalysisError> {
        let n = labels.len();
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let d = f(i, j);
                data[i * n + j] = d;
                data[j * n + i] = d;
            }
        }
        Self::from_rows(labels, data)
    }

    /// Builds the matrix from the upper triangle `(i, j, d)` entries, which
    /// must cover every pair `i < j` exactly as [`Self::pairs`] orders them.
    pub fn from_upper(labels: Vec<String>, upper: &[f64]) -> Result<Self, AnalysisError> {
        let n = labels.len();
        if upper.len() != n * n.saturating_sub(1) / 2 {
            return Err(AnalysisError::InvalidMatrix(
                "upper triangle has the wrong length",
            ));
        }
        let mut it = upper.iter().copied();
        Self::from_fn(labels, |_, _| it.next().unwrap_or(f64::NAN))
    }

    /// Wraps row-major data after checking shape, symmetry, diagonal and sign.
    pub fn from_rows(labels: Vec<String>, data: Vec<f64>) -> Result<Self, AnalysisError> {
        let n = labels.len();
        if data.len() != n * n {
            return Err(AnalysisError::InvalidMatrix("data is not n×n"));
        }
        for i in 0..n {
            if data[i * n + i] != 0.0 {
                return Err(AnalysisError::InvalidMatrix("nonzero diagonal"));
            }
            for j in i + 1..n {
                let d = data[i * n + j];
                if !d.is_finite() || d < 0.0 {
                    return Err(AnalysisError::InvalidMatrix(
                        "negative or non-finite distance",
                    ));
                }
                if d != data[j * n + i] {
                    return Err(AnalysisError::InvalidMatrix("not symmetric"));
                }
            }
        }
        Ok(Self { labels, data })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.len() + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let n = self.len();
        &self.data[i * n..(i + 1) * n]
    }

    /// Restriction to the given rows, in the given order.
    pub fn submatrix(&self, rows: &[usize]) -> DistanceMatrix {
        let labels = rows.iter().map(|&r| self.labels[r].clone()).collect();
        let m = rows.len();
        let mut data = vec![0.0; m * m];
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in rows.iter().enumerate() {
                data[a * m + b] = self.get(i, j);
            }
        }
        DistanceMatrix { labels, data }
    }

    /// Every index pair `i < j` in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.len();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
    }

    /// Multiplies every entry by `c ≥ 0`.
    pub fn scaled(&self, c: f64) -> DistanceMatrix {
        DistanceMatrix {
            labels: self.labels.clone(),
            data: self.data.iter().map(|d| d * c).collect(),
        }
    }
}
