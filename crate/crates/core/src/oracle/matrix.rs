use crate::error::{Error, Result};

/// Largest order accepted by the dense oracle.
pub const MAX_ORDER: usize = 4096;

/// Real symmetric matrix stored densely in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSymMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl DenseSymMatrix {
    /// Checks symmetry to `1e-14` relative to the largest entry.
    pub fn new(order: usize, entries: Vec<f64>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidArgument(
                "matrix order must be positive".into(),
            ));
        }
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge {
                order,
                limit: MAX_ORDER,
            });
        }
        if entries.len() != order * order {
            return Err(Error::InvalidArgument(format!(
                "expected {} entries for order {order}, got {}",
                order * order,
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!("non-finite entry {bad}")));
        }
        let scale = entries.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for i in 0..order {
            for j in (i + 1)..order {
                let (a, b) = (entries[i * order + j], entries[j * order + i]);
                if (a - b).abs() > 1e-14 * scale {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(Self { order, entries })
    }

    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let mut entries = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                entries.push(f(i, j));
            }
        }
        Self::new(order, entries)
    }

    pub fn zeros(order: usize) -> Result<Self> {
        Self::new(order, vec![0.0; order * order])
    }

    pub fn identity(order: usize) -> Result<Self> {
        Self::from_fn(order, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    /// Skips validation; callers guarantee symmetry and size.
    pub(crate) fn from_parts_unchecked(order: usize, entries: Vec<f64>) -> Self {
        debug_assert_eq!(entries.len(), order * order);
        Self { order, entries }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.order + col]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}
