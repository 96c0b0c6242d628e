//! Perfect 2-colorings of H(N,2) with prescribed off-diagonal quotient entries,
//! and the Boolean functions they yield.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hamming::{Coloring, Guards, QuotientMatrix};
use crate::spectral::{coloring_degree, merge_colors};
use crate::verify::{densities_by_count, essential_arguments};

use super::hamming_code::{hamming_cosets, union_collection};
use super::recursion::{iterate_construction, RecursionResult, RecursionSpec};
use super::rm::rm_coloring;

#[derive(Debug, Clone)]
pub struct BcConstruction {
    pub b: u64,
    pub c: u64,
    /// `gcd(b, c)`.
    pub e: u64,
    /// `(b + c) / e`.
    pub m: u64,
    /// `(2M - 1) 2^{e-1} - M`.
    pub n: usize,
    /// `[[N - b, b], [c, N - c]]`; color 0 is the side of density `c / (b + c)`.
    pub predicted: QuotientMatrix,
    pub recursion: RecursionResult,
}

impl BcConstruction {
    pub fn coloring(&self) -> &Coloring {
        self.recursion.coloring()
    }
}

/// A perfect 2-coloring of H(N,2) with quotient `[[N-b, b], [c, N-c]]`
/// depending on all `N` arguments. Requires `(b + c) / gcd(b, c)` to be a power of two.
pub fn construct_bc_a(b: u64, c: u64, guards: &Guards) -> Result<BcConstruction> {
    if b == 0 || c == 0 {
        return Err(Error::OutOfRange { value: 0, limit: 1 });
    }
    let e = b.gcd(&c);
    let m = (b + c) / e;
    if !m.is_power_of_two() {
        return Err(Error::NotPowerOfTwo { value: m });
    }
    let log_m = m.trailing_zeros();
    let (b1, c1) = (b / e, c / e);

    let base = union_collection(&hamming_cosets(log_m)?, c1 as u32, true)?;
    let spec = RecursionSpec {
        base,
        outer: rm_coloring(2, log_m)?,
        steps: (e - 1) as usize,
    };
    let recursion = iterate_construction(&spec, guards)?;
    let n = recursion.coloring().n();

    let expected_n = (2 * m as u128 - 1) * (1u128 << (e - 1)) - m as u128;
    let predicted = QuotientMatrix::new(
        n,
        2,
        vec![vec![n as u64 - b, b], vec![c, n as u64 - c]],
    )?;
    let got = recursion
        .collection
        .quotient
        .as_ref()
        .expect("iterate_construction attaches a quotient");
    if expected_n != n as u128 || *got != predicted {
        return Err(Error::Inconsistent(format!(
            "recursion produced H({n},2) with quotient {got}, expected H({expected_n},2) with {predicted}"
        )));
    }
    debug_assert_eq!((b1 + c1), m);
    Ok(BcConstruction {
        b,
        c,
        e,
        m,
        n,
        predicted,
        recursion,
    })
}

/// Properties established by exhaustive checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifiedBoolean {
    pub degree: usize,
    /// Density of ones, as a reduced fraction string.
    pub density: String,
    pub essential: Vec<bool>,
}

#[derive(Debug, Clone)]
pub struct BooleanConstruction {
    /// Value 1 on the side of density `r / s`.
    pub function: Coloring,
    pub n: usize,
    pub density: BigRational,
    /// `e s / 2`.
    pub degree: usize,
    /// Present when the function fits under the materialization guard.
    pub verified: Option<VerifiedBoolean>,
    pub bc: BcConstruction,
}

/// A Boolean function of degree `es/2` in `(2s-1) 2^{e-1} - s` essential
/// variables with density `r/s` of ones.
pub fn construct_boolean_bu(r: u64, s: u64, e: u64, guards: &Guards) -> Result<BooleanConstruction> {
    if !s.is_power_of_two() || r.is_multiple_of(2) || r == 0 || r >= s || e == 0 {
        return Err(Error::BadDensity { r, s });
    }
    let bc = construct_bc_a((s - r) * e, r * e, guards)?;
    // bc's color 0 has density c / (b + c) = r / s; make it the ones.
    let function = merge_colors(bc.coloring(), &[vec![1], vec![0]])?;
    let density = BigRational::new(BigInt::from(r), BigInt::from(s));
    let degree = (e * s / 2) as usize;
    let n = function.n();

    let verified = match function.materialize(guards) {
        Ok(table) => {
            let rho = densities_by_count(&table, guards)?;
            Some(VerifiedBoolean {
                degree: coloring_degree(&table, guards)?.degree,
                density: rho[1].to_string(),
                essential: essential_arguments(&table, guards)?,
            })
        }
        Err(Error::TooLarge { .. }) => None,
        Err(err) => return Err(err),
    };
    if let Some(v) = &verified {
        if v.degree != degree || v.density != density.to_string() || v.essential.contains(&false) {
            return Err(Error::Inconsistent(format!(
                "constructed function has degree {}, density {}, {} essential arguments",
                v.degree,
                v.density,
                v.essential.iter().filter(|&&x| x).count()
            )));
        }
    }
    Ok(BooleanConstruction {
        function,
        n,
        density,
        degree,
        verified,
        bc,
    })
}
