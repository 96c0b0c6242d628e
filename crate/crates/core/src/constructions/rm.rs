use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::FieldTable;
use crate::hamming::{Coloring, QuotientMatrix};

/// The perfect `Mq`-coloring of H(M,q), `M = q^s`, sending `x` to
/// `(sum x_i, sum x_i alpha_i)` where `alpha_i` is the `i`-th tuple of GF(q)^s.
///
/// The pair `(a, beta)` is encoded as `q * rank(beta) + a`, so two colors agree
/// modulo `q` exactly when their coordinate sums agree. The result is symbolic.
pub fn rm_coloring(q: u64, s: u32) -> Result<Coloring> {
    if s == 0 {
        return Err(Error::OutOfRange { value: 0, limit: 1 });
    }
    let field = FieldTable::new(q)?;
    Coloring::reed_muller(Arc::new(field), s)
}

/// Quotient matrix of [`rm_coloring`]: `T_ij = 1` iff `i != j (mod q)`.
pub fn rm_quotient(q: u64, s: u32) -> Result<QuotientMatrix> {
    let m = q
        .checked_pow(s)
        .ok_or_else(|| Error::Overflow(format!("{q}^{s}")))?;
    let k = (m * q) as usize;
    let rows = (0..k)
        .map(|i| (0..k).map(|j| (i as u64 % q != j as u64 % q) as u64).collect())
        .collect();
    QuotientMatrix::new(m as usize, q as u32, rows)
}
