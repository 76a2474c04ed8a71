//! Compositional vectors, datasets and the simplicial addition operators.
//!
//! A [`Composition`] is a point of the standard simplex: nonnegative parts
//! summing to one. Construction always goes through [`Composition::closure`],
//! which rescales the raw parts by their sum, so a stored composition is
//! closed by construction. Inputs that already sum to one (up to printed
//! rounding) pass through unchanged apart from the rescale.

use crate::error::{Error, Result};

/// Tolerance below which an input is considered "already closed".
pub const CLOSURE_TOL: f64 = 1e-6;

/// A point of the standard simplex: `D >= 2` nonnegative parts summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Composition {
    parts: Vec<f64>,
}

impl Composition {
    /// Close a raw nonnegative vector onto the simplex: divide by the sum.
    ///
    /// Zeros are allowed (log-based operations reject them at the point of
    /// use); negative entries and the all-zero vector are not.
    pub fn closure(raw: &[f64]) -> Result<Self> {
        if raw.len() < 2 {
            return Err(Error::DimensionTooSmall { got: raw.len() });
        }
        for (i, &v) in raw.iter().enumerate() {
            if v.is_nan() || v < 0.0 {
                return Err(Error::NegativePart { index: i, value: v });
            }
        }
        let sum: f64 = raw.iter().sum();
        if sum <= 0.0 {
            return Err(Error::DegenerateInput);
        }
        Ok(Self {
            parts: raw.iter().map(|v| v / sum).collect(),
        })
    }

    /// Number of components `D`.
    pub fn dim(&self) -> usize {
        self.parts.len()
    }

    /// The closed parts.
    pub fn parts(&self) -> &[f64] {
        &self.parts
    }

    /// True if every part is strictly positive.
    pub fn is_strictly_positive(&self) -> bool {
        self.parts.iter().all(|&v| v > 0.0)
    }

    /// Index of the first zero part, if any.
    pub fn first_zero(&self) -> Option<usize> {
        self.parts.iter().position(|&v| v == 0.0)
    }

    /// Error unless every part is strictly positive.
    pub fn require_strictly_positive(&self) -> Result<()> {
        match self.first_zero() {
            Some(index) => Err(Error::ZeroPartNotAllowed { index }),
            None => Ok(()),
        }
    }

    pub(crate) fn require_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }

    /// Geometric mean of the parts. Requires strict positivity.
    pub fn geometric_mean(&self) -> Result<f64> {
        self.require_strictly_positive()?;
        let mean_log: f64 =
            self.parts.iter().map(|v| v.ln()).sum::<f64>() / self.dim() as f64;
        Ok(mean_log.exp())
    }

    /// Closed subvector on the given component indices (0-based).
    pub fn subcomposition(&self, indices: &[usize]) -> Result<Self> {
        if indices.len() < 2 {
            return Err(Error::SubsetTooSmall);
        }
        let mut raw = Vec::with_capacity(indices.len());
        for &i in indices {
            if i >= self.dim() {
                return Err(Error::DivisorOutOfRange { index: i, dim: self.dim() });
            }
            raw.push(self.parts[i]);
        }
        Self::closure(&raw)
    }
}

/// Perturbation `x ⊕₀ w`: component-wise product followed by closure.
///
/// Both arguments must be strictly positive; a zero part would collapse the
/// product irreversibly.
pub fn perturb(x: &Composition, w: &Composition) -> Result<Composition> {
    x.require_same_dim(w)?;
    x.require_strictly_positive()?;
    w.require_strictly_positive()?;
    let raw: Vec<f64> = x
        .parts()
        .iter()
        .zip(w.parts())
        .map(|(a, b)| a * b)
        .collect();
    Composition::closure(&raw)
}

/// Simplicial addition `x ⊕₁ w`: component-wise sum followed by closure.
///
/// For already-closed inputs this is `(x + w) / 2`.
pub fn simplicial_add(x: &Composition, w: &Composition) -> Result<Composition> {
    x.require_same_dim(w)?;
    let raw: Vec<f64> = x
        .parts()
        .iter()
        .zip(w.parts())
        .map(|(a, b)| a + b)
        .collect();
    Composition::closure(&raw)
}

/// The uniform composition `(1/D, …, 1/D)`, the identity of `⊕₀`.
pub fn uniform(dim: usize) -> Result<Composition> {
    Composition::closure(&vec![1.0; dim])
}

/// `n` labelled compositions sharing `D` components.
#[derive(Debug, Clone)]
pub struct CompositionDataset {
    rows: Vec<Composition>,
    component_names: Vec<String>,
    row_ids: Vec<String>,
}

impl CompositionDataset {
    pub fn new(
        rows: Vec<Composition>,
        component_names: Vec<String>,
        row_ids: Vec<String>,
    ) -> Result<Self> {
        let first = rows.first().ok_or(Error::EmptyDataset)?;
        let dim = first.dim();
        for r in &rows {
            if r.dim() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: r.dim() });
            }
        }
        if component_names.len() != dim {
            return Err(Error::DimensionMismatch {
                left: component_names.len(),
                right: dim,
            });
        }
        if row_ids.len() != rows.len() {
            return Err(Error::DimensionMismatch {
                left: row_ids.len(),
                right: rows.len(),
            });
        }
        for i in 1..component_names.len() {
            if component_names[..i].contains(&component_names[i]) {
                return Err(Error::SpecError(format!(
                    "duplicate component name {:?}",
                    component_names[i]
                )));
            }
        }
        Ok(Self { rows, component_names, row_ids })
    }

    /// Build with generated names `c1..cD` and ids `r1..rn`.
    pub fn from_rows(rows: Vec<Composition>) -> Result<Self> {
        let dim = rows.first().ok_or(Error::EmptyDataset)?.dim();
        let names = (1..=dim).map(|i| format!("c{i}")).collect();
        let ids = (1..=rows.len()).map(|i| format!("r{i}")).collect();
        Self::new(rows, names, ids)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.rows[0].dim()
    }

    pub fn rows(&self) -> &[Composition] {
        &self.rows
    }

    pub fn component_names(&self) -> &[String] {
        &self.component_names
    }

    pub fn row_ids(&self) -> &[String] {
        &self.row_ids
    }

    /// Index and id of the first row containing a zero part, if any.
    pub fn first_zero_row(&self) -> Option<(usize, &str)> {
        self.rows
            .iter()
            .position(|r| !r.is_strictly_positive())
            .map(|i| (i, self.row_ids[i].as_str()))
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.first_zero_row().is_none()
    }
}
