//! Verification reports and their JSON form.

use serde::Serialize;

use crate::error::Result;
use crate::hamming::{Coloring, Guards, QuotientMatrix};
use crate::spectral::coloring_degree;
use crate::verify::{
    compute_quotient, densities_by_count, densities_from_quotient, essential_arguments,
    quotient_spectrum, NonPerfectWitness, QuotientOutcome, SpectrumEntry,
};

pub const REPORT_VERSION: u32 = 1;

/// What to compute beyond the quotient matrix and densities.
#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    pub essential: bool,
    pub degree: bool,
    pub expected_quotient: Option<Vec<Vec<u64>>>,
}

/// Everything established about one coloring. Densities are exact fractions
/// written as strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub report_version: u32,
    pub q: u32,
    pub n: usize,
    pub k: u32,
    pub perfect: bool,
    pub quotient: Option<Vec<Vec<u64>>>,
    /// Present when an expected quotient was supplied.
    pub matches_expected: Option<bool>,
    pub densities: Vec<String>,
    /// Densities solved from the quotient matrix; equal to `densities` for perfect colorings.
    pub densities_from_quotient: Option<Vec<String>>,
    pub spectrum: Option<Vec<SpectrumEntry>>,
    pub essential: Option<Vec<bool>>,
    pub essential_count: Option<usize>,
    pub degrees: Option<Vec<usize>>,
    pub witness: Option<NonPerfectWitness>,
    pub provenance: Option<String>,
}

impl VerificationReport {
    /// Perfect, and equal to the expected quotient when one was given.
    pub fn passed(&self) -> bool {
        self.perfect && self.matches_expected != Some(false)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn verify_coloring(
    c: &Coloring,
    options: &VerifyOptions,
    provenance: Option<String>,
    guards: &Guards,
) -> Result<VerificationReport> {
    let table = c.materialize(guards)?;
    let outcome = compute_quotient(&table, guards)?;
    let densities: Vec<String> = densities_by_count(&table, guards)?
        .iter()
        .map(|r| r.to_string())
        .collect();
    let (perfect, quotient, witness) = match outcome {
        QuotientOutcome::Perfect(s) => (true, Some(s), None),
        QuotientOutcome::NotPerfect(w) => (false, None, Some(w)),
    };
    let from_quotient = quotient
        .as_ref()
        .and_then(|s| densities_from_quotient(s).ok())
        .map(|d| d.iter().map(|r| r.to_string()).collect());
    let spectrum = quotient.as_ref().and_then(|s| quotient_spectrum(s).ok());
    let essential = if options.essential {
        Some(essential_arguments(&table, guards)?)
    } else {
        None
    };
    let degrees = if options.degree {
        Some(coloring_degree(&table, guards)?.per_color)
    } else {
        None
    };
    let matches_expected = options
        .expected_quotient
        .as_ref()
        .map(|e| quotient.as_ref().map(QuotientMatrix::rows) == Some(e.as_slice()));
    Ok(VerificationReport {
        report_version: REPORT_VERSION,
        q: c.q(),
        n: c.n(),
        k: c.k(),
        perfect,
        quotient: quotient.map(|s| s.rows().to_vec()),
        matches_expected,
        densities,
        densities_from_quotient: from_quotient,
        spectrum,
        essential_count: essential.as_ref().map(|m| m.iter().filter(|&&e| e).count()),
        essential,
        degrees,
        witness,
        provenance,
    })
}
