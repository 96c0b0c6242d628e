//! The recursive construction: from a uniform collection of `M` perfect colorings
//! of H(n,q) and a perfect `Mq`-coloring `E` of H(M,q) with the Reed–Muller-like
//! quotient, build a uniform collection of `M` perfect colorings of H(qn + M, q).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hamming::{Coloring, Guards, QuotientMatrix};
use crate::verify::{compute_quotient, densities_from_quotient, essential_arguments};

use super::collection::{EssentialStatus, Provenance, UniformCollection};
use super::rm::rm_quotient;

fn quotient_of(col: &UniformCollection, guards: &Guards) -> Result<QuotientMatrix> {
    if let Some(s) = &col.quotient {
        return Ok(s.clone());
    }
    compute_quotient(&col.members[0], guards)?
        .matrix()
        .cloned()
        .ok_or_else(|| Error::Inconsistent("member 0 of the collection is not perfect".into()))
}

/// `base + diag * I + offdiag_scale * P`, with `P`'s rows the densities of `base`.
/// `offdiag_scale * rho_t` must be an integer for every color.
fn shifted_quotient(
    base: &QuotientMatrix,
    n: usize,
    diag: u128,
    offdiag_scale: u128,
) -> Result<QuotientMatrix> {
    let rho = densities_from_quotient(base)?;
    let k = base.k();
    let extra: Vec<u64> = rho
        .iter()
        .map(|r| {
            let x = r * BigRational::from_integer(BigInt::from(offdiag_scale));
            if !x.is_integer() {
                return Err(Error::NotUniform(format!(
                    "{offdiag_scale} * {r} is not an integer"
                )));
            }
            x.to_integer()
                .to_u64()
                .ok_or_else(|| Error::Overflow("quotient entry".into()))
        })
        .collect::<Result<_>>()?;
    let diag = u64::try_from(diag).map_err(|_| Error::Overflow("quotient entry".into()))?;
    let rows = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| base.get(i, j) + extra[j] + if i == j { diag } else { 0 })
                .collect()
        })
        .collect();
    QuotientMatrix::new(n, base.q, rows)
}

/// Check `E` against the preconditions of the step; returns whether its quotient was verified.
fn check_outer(outer: &Coloring, m: usize, q: u32, guards: &Guards) -> Result<bool> {
    if outer.q() != q || outer.n() != m || outer.k() as usize != m * q as usize {
        return Err(Error::BadOuterColoring(format!(
            "expected an {}-coloring of H({m},{q}), got a {}-coloring of H({},{})",
            m * q as usize,
            outer.k(),
            outer.n(),
            outer.q()
        )));
    }
    let (mut s, mut power) = (0u32, 1usize);
    while power < m {
        power *= q as usize;
        s += 1;
    }
    if power != m || s == 0 {
        return Err(Error::BadOuterColoring(format!(
            "collection size {m} is not a positive power of {q}"
        )));
    }
    let expected = rm_quotient(q as u64, s)?;
    match compute_quotient(outer, guards) {
        Ok(out) => match out.matrix() {
            Some(t) if *t == expected => Ok(true),
            Some(t) => Err(Error::BadOuterColoring(format!("quotient {t}"))),
            None => Err(Error::BadOuterColoring("not a perfect coloring".into())),
        },
        Err(Error::TooLarge { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Check that member 0 depends on every argument, unless that is already known.
fn check_member0(col: &UniformCollection, guards: &Guards) -> Result<EssentialStatus> {
    if col.essential != EssentialStatus::Unknown {
        return Ok(col.essential);
    }
    match essential_arguments(&col.members[0], guards) {
        Ok(mask) => match mask.iter().position(|&e| !e) {
            Some(position) => Err(Error::NotEssential { position }),
            None => Ok(EssentialStatus::Verified),
        },
        Err(Error::TooLarge { .. }) => Ok(EssentialStatus::Unknown),
        Err(e) => Err(e),
    }
}

/// One application of the construction.
///
/// Member `s` of the output is `F_s(y, x) = C_{(i+s) mod M}(x^j)` where
/// `E(y) = q i + j` and `x = (x^0, ..., x^{q-1})` splits into blocks of length `n`.
/// The attached quotient is the predicted `S + (q-1)^2 n I + (q-1) M P`.
pub fn recursive_step(
    col: &UniformCollection,
    outer: &Coloring,
    guards: &Guards,
) -> Result<UniformCollection> {
    let (n, q, m) = (col.n(), col.q(), col.len());
    if outer.k() as usize != m * q as usize {
        return Err(Error::SizeMismatch(format!(
            "collection has {m} members but the outer coloring has {} colors, expected {}",
            outer.k(),
            m * q as usize
        )));
    }
    check_outer(outer, m, q, guards)?;
    let status = check_member0(col, guards)?;
    let s = quotient_of(col, guards)?;

    let qn = q as usize * n;
    // embedded[t][j]: member t reading the j-th block of n arguments
    let embedded: Vec<Vec<Coloring>> = col
        .members
        .iter()
        .map(|c| (0..q as usize).map(|j| c.embed(qn, j * n)).collect())
        .collect::<Result<_>>()?;
    let members = (0..m)
        .map(|shift| {
            let inner = (0..m)
                .flat_map(|i| embedded[(i + shift) % m].iter().cloned())
                .collect();
            Coloring::outer(outer, inner)
        })
        .collect::<Result<Vec<_>>>()?;

    let q1 = q as u128 - 1;
    let predicted = shifted_quotient(&s, qn + m, q1 * q1 * n as u128, q1 * m as u128)?;
    let mut out = UniformCollection::new(
        members,
        Provenance::CyclicPermutationOfCollection,
        Some(predicted),
    )?;
    out.essential = match status {
        EssentialStatus::Unknown => EssentialStatus::Unknown,
        _ => EssentialStatus::ByConstruction,
    };
    Ok(out)
}

/// Base collection, outer coloring, and the number of steps to apply.
#[derive(Debug, Clone)]
pub struct RecursionSpec {
    pub base: UniformCollection,
    pub outer: Coloring,
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Level {
    pub step: usize,
    pub n: usize,
    /// Quotient accumulated step by step.
    pub predicted: QuotientMatrix,
}

#[derive(Debug, Clone)]
pub struct RecursionResult {
    pub levels: Vec<Level>,
    pub collection: UniformCollection,
}

impl RecursionResult {
    pub fn coloring(&self) -> &Coloring {
        &self.collection.members[0]
    }
}

/// `n_i = (n (q-1) + M) q^i / (q-1) - M / (q-1)`.
pub fn closed_form_length(n: usize, q: u32, m: usize, i: usize) -> Result<u128> {
    let q1 = q as u128 - 1;
    let top = (n as u128 * q1 + m as u128)
        .checked_mul(
            (q as u128)
                .checked_pow(i as u32)
                .ok_or_else(|| Error::Overflow("q^i".into()))?,
        )
        .ok_or_else(|| Error::Overflow("n_i".into()))?;
    let (len, rem) = (top - m as u128).div_rem(&q1);
    if rem != 0 {
        return Err(Error::Inconsistent("n_i is not an integer".into()));
    }
    Ok(len)
}

/// `S + (n_i - n - i M)(q-1) I + i (q-1) M P`.
pub fn closed_form_quotient(
    s: &QuotientMatrix,
    m: usize,
    i: usize,
) -> Result<QuotientMatrix> {
    let n_i = closed_form_length(s.n, s.q, m, i)?;
    let q1 = s.q as u128 - 1;
    let diag = (n_i - s.n as u128 - (i * m) as u128) * q1;
    let n_i = usize::try_from(n_i).map_err(|_| Error::Overflow("n_i".into()))?;
    shifted_quotient(s, n_i, diag, i as u128 * q1 * m as u128)
}

/// Apply [`recursive_step`] `steps` times, checking lengths and quotients
/// against the closed forms at every level.
pub fn iterate_construction(spec: &RecursionSpec, guards: &Guards) -> Result<RecursionResult> {
    let base_s = quotient_of(&spec.base, guards)?;
    let m = spec.base.len();
    let mut col = spec.base.clone();
    col.quotient = Some(base_s.clone());
    let mut levels = vec![Level {
        step: 0,
        n: col.n(),
        predicted: base_s.clone(),
    }];
    for i in 1..=spec.steps {
        col = recursive_step(&col, &spec.outer, guards)?;
        let predicted = col.quotient.clone().expect("recursive_step predicts");
        let n_i = closed_form_length(base_s.n, base_s.q, m, i)?;
        if n_i != col.n() as u128 {
            return Err(Error::Inconsistent(format!(
                "step {i}: length {} but the closed form gives {n_i}",
                col.n()
            )));
        }
        if closed_form_quotient(&base_s, m, i)? != predicted {
            return Err(Error::Inconsistent(format!(
                "step {i}: accumulated quotient {predicted} disagrees with the closed form"
            )));
        }
        levels.push(Level {
            step: i,
            n: col.n(),
            predicted,
        });
    }
    Ok(RecursionResult {
        levels,
        collection: col,
    })
}
