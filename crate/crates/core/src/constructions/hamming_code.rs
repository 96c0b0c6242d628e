use crate::error::{Error, Result};
use crate::hamming::{Coloring, QuotientMatrix};
use crate::spectral::merge_colors;

use super::collection::{EssentialStatus, Provenance, UniformCollection};

/// The `2^m` cosets of the binary Hamming code of length `2^m - 1`.
///
/// The parity-check columns are the nonzero m-bit integers in ascending order,
/// and a word lies in coset `i` when its syndrome, read as an integer, is `i`.
/// Coset 0 is the code itself.
#[derive(Debug, Clone)]
pub struct HammingCosetPartition {
    m: u32,
    coloring: Coloring,
}

pub fn hamming_cosets(m: u32) -> Result<HammingCosetPartition> {
    if !(1..=20).contains(&m) {
        return Err(Error::OutOfRange {
            value: m as u64,
            limit: 21,
        });
    }
    let cosets = 1u64 << m;
    let columns: Vec<u64> = (1..cosets).collect();
    Ok(HammingCosetPartition {
        m,
        coloring: Coloring::syndrome(columns, cosets as u32),
    })
}

impl HammingCosetPartition {
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of cosets `M = 2^m`.
    pub fn cosets(&self) -> u32 {
        1 << self.m
    }

    /// Code length `M - 1`.
    pub fn length(&self) -> usize {
        self.cosets() as usize - 1
    }

    pub fn parity_check_columns(&self) -> Vec<u64> {
        (1..self.cosets() as u64).collect()
    }

    /// The M-coloring by coset index.
    pub fn coloring(&self) -> &Coloring {
        &self.coloring
    }

    /// Quotient of the coset coloring: every vertex has one neighbor in each other coset.
    pub fn quotient(&self) -> QuotientMatrix {
        let k = self.cosets() as usize;
        let rows = (0..k)
            .map(|i| (0..k).map(|j| (i != j) as u64).collect())
            .collect();
        QuotientMatrix::new(self.length(), 2, rows).expect("square")
    }
}

/// Characteristic function of `H_start ∪ ... ∪ H_{start+count-1}` (indices mod M):
/// color 1 inside the union, color 0 outside.
///
/// In color-index order the quotient matrix is `[[b'-1, c'], [b', c'-1]]` with
/// `c' = count`, `b' = M - c'`.
pub fn hamming_union_coloring(
    part: &HammingCosetPartition,
    start: u32,
    count: u32,
) -> Result<Coloring> {
    let cosets = part.cosets();
    if count == 0 || count >= cosets {
        return Err(Error::OutOfRange {
            value: count as u64,
            limit: cosets as u64,
        });
    }
    let inside: Vec<u32> = (0..count).map(|d| (start + d) % cosets).collect();
    let outside: Vec<u32> = (0..cosets).filter(|i| !inside.contains(i)).collect();
    merge_colors(part.coloring(), &[outside, inside])
}

/// The `M` cyclic shifts of a `c'`-coset union, members listed by start coset.
///
/// With `inside_first` the inside color is 0, giving the common quotient
/// `[[c'-1, b'], [c', b'-1]]`; otherwise the union is color 1.
pub fn union_collection(
    part: &HammingCosetPartition,
    count: u32,
    inside_first: bool,
) -> Result<UniformCollection> {
    let cosets = part.cosets();
    let members = (0..cosets)
        .map(|i| {
            let c = hamming_union_coloring(part, i, count)?;
            if inside_first {
                merge_colors(&c, &[vec![1], vec![0]])
            } else {
                Ok(c)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let (c1, b1) = (count as u64, (cosets - count) as u64);
    let rows = if inside_first {
        vec![vec![c1 - 1, b1], vec![c1, b1 - 1]]
    } else {
        vec![vec![b1 - 1, c1], vec![b1, c1 - 1]]
    };
    let mut col = UniformCollection::new(
        members,
        Provenance::CyclicCosetShift,
        Some(QuotientMatrix::new(part.length(), 2, rows)?),
    )?;
    if count % 2 == 1 {
        // an odd number of cosets cannot be paired up along a dummy direction
        col.essential = EssentialStatus::ByConstruction;
    }
    Ok(col)
}
