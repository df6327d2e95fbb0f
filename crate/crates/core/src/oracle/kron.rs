use super::matrix::{DenseSymMatrix, MAX_ORDER};
use crate::error::{Error, Result};

/// `A ⊗ I + I ⊗ B`, with row index `i * order(B) + j` for `i` indexing `A`.
pub fn kronecker_sum(a: &DenseSymMatrix, b: &DenseSymMatrix) -> Result<DenseSymMatrix> {
    let (m, k) = (a.order(), b.order());
    let order = m.saturating_mul(k);
    if order > MAX_ORDER {
        return Err(Error::OrderTooLarge {
            order,
            limit: MAX_ORDER,
        });
    }
    let mut entries = vec![0.0; order * order];
    for i in 0..m {
        for j in 0..k {
            let row = i * k + j;
            for ip in 0..m {
                for jp in 0..k {
                    let col = ip * k + jp;
                    let mut v = 0.0;
                    if j == jp {
                        v += a.get(i, ip);
                    }
                    if i == ip {
                        v += b.get(j, jp);
                    }
                    entries[row * order + col] = v;
                }
            }
        }
    }
    Ok(DenseSymMatrix::from_parts_unchecked(order, entries))
}
