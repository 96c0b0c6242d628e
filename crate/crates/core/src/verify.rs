//! Exhaustive verification: quotient matrices, essential arguments, densities,
//! spectra and uniformity of collections.
//!
//! Scans run over contiguous vertex blocks in parallel. Every reduction picks the
//! smallest vertex index, so results do not depend on the number of threads.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hamming::{
    advance, for_each_neighbor, powers, vertex_count, write_digits, ColorTable, Coloring, Guards,
    QuotientMatrix, BLOCK,
};

/// Two same-colored vertices whose neighborhoods have different color profiles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonPerfectWitness {
    pub color: u32,
    /// Smallest vertex of `color`; its profile is the reference.
    pub reference: u64,
    /// Smallest vertex of `color` whose profile differs from the reference.
    pub vertex: u64,
    pub reference_profile: Vec<u64>,
    pub vertex_profile: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuotientOutcome {
    Perfect(QuotientMatrix),
    NotPerfect(NonPerfectWitness),
}

impl QuotientOutcome {
    pub fn matrix(&self) -> Option<&QuotientMatrix> {
        match self {
            QuotientOutcome::Perfect(s) => Some(s),
            QuotientOutcome::NotPerfect(_) => None,
        }
    }
}

fn table_of(c: &Coloring, guards: &Guards) -> Result<Coloring> {
    c.materialize(guards)
}

fn profile(t: &ColorTable, v: u64, q: u32, pows: &[u64], k: usize) -> Vec<u64> {
    let mut p = vec![0u64; k];
    for_each_neighbor(v, q, pows, |u| p[t.get(u as usize) as usize] += 1);
    p
}

/// Smallest vertex of each color.
fn first_occurrences(t: &ColorTable, k: usize) -> Vec<u64> {
    let len = t.len() as u64;
    let blocks = len.div_ceil(BLOCK);
    (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut first = vec![u64::MAX; k];
            let mut left = k;
            for v in b * BLOCK..((b + 1) * BLOCK).min(len) {
                let c = t.get(v as usize) as usize;
                if first[c] == u64::MAX {
                    first[c] = v;
                    left -= 1;
                    if left == 0 {
                        break;
                    }
                }
            }
            first
        })
        .reduce(
            || vec![u64::MAX; k],
            |a, b| a.into_iter().zip(b).map(|(x, y)| x.min(y)).collect(),
        )
}

/// Extract the quotient matrix, or the lowest-index witness of non-perfectness.
pub fn compute_quotient(c: &Coloring, guards: &Guards) -> Result<QuotientOutcome> {
    let m = table_of(c, guards)?;
    let t = m.table().expect("materialized");
    let (n, q, k) = (c.n(), c.q(), c.k() as usize);
    let pows = powers(n, q);
    let refs = first_occurrences(t, k);
    let rows: Vec<Vec<u64>> = refs.iter().map(|&v| profile(t, v, q, &pows, k)).collect();

    let len = t.len() as u64;
    let bad = (0..len.div_ceil(BLOCK))
        .into_par_iter()
        .filter_map(|b| {
            let mut counts = vec![0u64; k];
            for v in b * BLOCK..((b + 1) * BLOCK).min(len) {
                let row = &rows[t.get(v as usize) as usize];
                for_each_neighbor(v, q, &pows, |u| counts[t.get(u as usize) as usize] += 1);
                let ok = counts == *row;
                counts.iter_mut().for_each(|x| *x = 0);
                if !ok {
                    return Some(v);
                }
            }
            None
        })
        .min();

    Ok(match bad {
        None => QuotientOutcome::Perfect(QuotientMatrix::new(n, q, rows)?),
        Some(v) => {
            let color = t.get(v as usize);
            QuotientOutcome::NotPerfect(NonPerfectWitness {
                color,
                reference: refs[color as usize],
                vertex: v,
                reference_profile: rows[color as usize].clone(),
                vertex_profile: profile(t, v, q, &pows, k),
            })
        }
    })
}

/// `mask[i]` is true iff changing position `i` alone can change the color.
pub fn essential_arguments(c: &Coloring, guards: &Guards) -> Result<Vec<bool>> {
    let m = table_of(c, guards)?;
    let t = m.table().expect("materialized");
    let (n, q) = (c.n(), c.q() as u64);
    let len = t.len() as u64;
    let pows = powers(n, c.q());
    Ok(pows
        .iter()
        .map(|&p| {
            // Lines in direction i are indexed by the vertices with digit i equal to 0.
            let lines = len / q;
            (0..lines.div_ceil(BLOCK)).into_par_iter().any(|b| {
                (b * BLOCK..((b + 1) * BLOCK).min(lines)).any(|l| {
                    let v = (l / p) * p * q + l % p;
                    let c0 = t.get(v as usize);
                    (1..q).any(|d| t.get((v + d * p) as usize) != c0)
                })
            })
        })
        .collect())
}

/// `count_i / q^n` for every color.
pub fn densities_by_count(c: &Coloring, guards: &Guards) -> Result<Vec<BigRational>> {
    let m = table_of(c, guards)?;
    let t = m.table().expect("materialized");
    let total = BigInt::from(t.len());
    Ok(t.counts(c.k())
        .into_iter()
        .map(|x| BigRational::new(BigInt::from(x), total.clone()))
        .collect())
}

/// Solve `rho_i S_ij = rho_j S_ji`, `sum rho = 1` by propagating ratios along a
/// spanning tree of the color graph and checking every other edge.
pub fn densities_from_quotient(s: &QuotientMatrix) -> Result<Vec<BigRational>> {
    let k = s.k();
    let sum0: u64 = s.rows()[0].iter().sum();
    if let Some(i) = s.rows().iter().position(|r| r.iter().sum::<u64>() != sum0) {
        return Err(Error::Inconsistent(format!(
            "row {i} sums to {} but row 0 sums to {sum0}",
            s.rows()[i].iter().sum::<u64>()
        )));
    }
    for i in 0..k {
        for j in 0..k {
            if (s.get(i, j) == 0) != (s.get(j, i) == 0) {
                return Err(Error::Inconsistent(format!(
                    "S[{i}][{j}] and S[{j}][{i}] must be both zero or both positive"
                )));
            }
        }
    }
    let mut rho: Vec<Option<BigRational>> = vec![None; k];
    rho[0] = Some(BigRational::one());
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        let ri = rho[i].clone().expect("visited");
        #[allow(clippy::needless_range_loop)]
        for j in 0..k {
            if i == j || s.get(i, j) == 0 {
                continue;
            }
            let rj = &ri * BigRational::new(BigInt::from(s.get(i, j)), BigInt::from(s.get(j, i)));
            match &rho[j] {
                None => {
                    rho[j] = Some(rj);
                    stack.push(j);
                }
                Some(existing) if *existing != rj => {
                    return Err(Error::Inconsistent(format!(
                        "detailed balance fails on a cycle through colors {i} and {j}"
                    )));
                }
                Some(_) => {}
            }
        }
    }
    let rho: Vec<BigRational> = rho
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or(Error::Disconnected)?;
    let total: BigRational = rho.iter().fold(BigRational::zero(), |a, b| a + b);
    Ok(rho.into_iter().map(|r| r / &total).collect())
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn integer_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = (&a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c]) / &prev;
                a[r][c] = v;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].abs();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumEntry {
    /// `i` in `lambda_i = n(q-1) - q i`.
    pub index: usize,
    pub eigenvalue: i64,
    pub multiplicity: usize,
}

/// Multiplicities of the graph eigenvalues `lambda_0..lambda_n` in `S`.
pub fn quotient_spectrum(s: &QuotientMatrix) -> Result<Vec<SpectrumEntry>> {
    let k = s.k();
    let mut out = Vec::new();
    let mut total = 0;
    for i in 0..=s.n {
        let lambda = QuotientMatrix::graph_eigenvalue(s.n, s.q, i);
        let m: Vec<Vec<BigInt>> = (0..k)
            .map(|r| {
                (0..k)
                    .map(|c| {
                        let x = BigInt::from(s.get(r, c));
                        if r == c {
                            x - lambda
                        } else {
                            x
                        }
                    })
                    .collect()
            })
            .collect();
        let mult = k - integer_rank(m);
        if mult > 0 {
            out.push(SpectrumEntry {
                index: i,
                eigenvalue: lambda,
                multiplicity: mult,
            });
            total += mult;
        }
        if total >= k {
            break;
        }
    }
    if total != k {
        return Err(Error::SpectrumNotInGraph { n: s.n, q: s.q });
    }
    Ok(out)
}

/// Pass/fail per structural property of a candidate quotient matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuotientDiagnostics {
    pub row_sums: bool,
    pub detailed_balance: bool,
    pub spectrum_in_graph: bool,
    pub spectrum: Option<Vec<SpectrumEntry>>,
}

impl QuotientDiagnostics {
    pub fn all_pass(&self) -> bool {
        self.row_sums && self.detailed_balance && self.spectrum_in_graph
    }
}

pub fn validate_quotient(s: &QuotientMatrix) -> QuotientDiagnostics {
    let spectrum = quotient_spectrum(s).ok();
    QuotientDiagnostics {
        row_sums: s.row_sums_ok(),
        detailed_balance: densities_from_quotient(s).is_ok(),
        spectrum_in_graph: spectrum.is_some(),
        spectrum,
    }
}

/// How [`check_uniform`] visits vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coverage {
    Exhaustive,
    /// Uniformly random vertices from a fixed seed; results are not certificates.
    Sampled { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniformityReport {
    pub uniform: bool,
    pub exhaustive: bool,
    /// Per-color count of members taking that color at a vertex (the common value when uniform).
    pub multiplicities: Vec<u64>,
    /// Smallest (or first sampled) vertex whose multiset differs from the first one checked.
    pub violation: Option<Vec<u8>>,
    /// Whether the multiplicities equal `rho_i * M` with `rho` counted on member 0;
    /// `None` when member 0 is beyond the guard.
    pub matches_densities: Option<bool>,
}

/// Test whether the multiset of member colors is the same at every vertex.
pub fn check_uniform(
    members: &[Coloring],
    coverage: Coverage,
    guards: &Guards,
) -> Result<UniformityReport> {
    let first = members
        .first()
        .ok_or_else(|| Error::SizeMismatch("empty collection".into()))?;
    let (n, q, k) = (first.n(), first.q(), first.k() as usize);
    if members
        .iter()
        .any(|c| c.n() != n || c.q() != q || c.k() as usize != k)
    {
        return Err(Error::SizeMismatch(
            "collection members must share n, q and k".into(),
        ));
    }
    let multiset = |word: &[u8], out: &mut Vec<u64>| {
        out.iter_mut().for_each(|x| *x = 0);
        for c in members {
            out[c.eval_word(word) as usize] += 1;
        }
    };

    let (uniform_at, exhaustive) = match coverage {
        Coverage::Exhaustive => {
            let total = guards.check_materialize(n, q)?;
            let tables: Vec<Coloring> = members
                .iter()
                .map(|c| c.materialize(guards))
                .collect::<Result<_>>()?;
            let mut base = vec![0u64; k];
            multiset(&vec![0u8; n], &mut base);
            let bad = (0..total.div_ceil(BLOCK))
                .into_par_iter()
                .filter_map(|b| {
                    let mut cur = vec![0u64; k];
                    for v in b * BLOCK..((b + 1) * BLOCK).min(total) {
                        cur.iter_mut().for_each(|x| *x = 0);
                        for t in &tables {
                            cur[t.table().unwrap().get(v as usize) as usize] += 1;
                        }
                        if cur != base {
                            return Some(v);
                        }
                    }
                    None
                })
                .min();
            let violation = bad.map(|v| {
                let mut w = vec![0u8; n];
                write_digits(v, q, &mut w);
                w
            });
            ((base, violation), true)
        }
        Coverage::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut word: Vec<u8> = (0..n).map(|_| rng.gen_range(0..q) as u8).collect();
            let mut base = vec![0u64; k];
            multiset(&word, &mut base);
            let mut cur = vec![0u64; k];
            let mut violation = None;
            for _ in 1..samples {
                word.iter_mut().for_each(|d| *d = rng.gen_range(0..q) as u8);
                multiset(&word, &mut cur);
                if cur != base {
                    violation = Some(word.clone());
                    break;
                }
            }
            ((base, violation), false)
        }
    };
    let (multiplicities, violation) = uniform_at;
    let matches_densities = match densities_by_count(first, guards) {
        Ok(rho) => {
            let m = BigInt::from(members.len());
            Some(
                rho.iter()
                    .zip(&multiplicities)
                    .all(|(r, &x)| r * &m == BigRational::from_integer(BigInt::from(x))),
            )
        }
        Err(Error::TooLarge { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(UniformityReport {
        uniform: violation.is_none(),
        exhaustive,
        multiplicities,
        violation,
        matches_densities,
    })
}

/// All colorings of H(n,q) with quotient matrix exactly `s`, in lexicographic
/// order of their tables (vertex 0 varies slowest).
pub fn search_colorings(
    n: usize,
    q: u32,
    s: &QuotientMatrix,
    require_all_essential: bool,
    guards: &Guards,
) -> Result<Vec<Coloring>> {
    let k = s.k();
    let verts = vertex_count(n, q).ok_or_else(|| Error::Overflow("q^n".into()))?;
    let total = (k as u128).checked_pow(verts as u32).unwrap_or(u128::MAX);
    if total > guards.brute_force as u128 {
        return Err(Error::TooLarge {
            cells: total,
            guard: guards.brute_force,
        });
    }
    let verts = verts as usize;
    let pows = powers(n, q);
    let adj: Vec<Vec<usize>> = (0..verts as u64)
        .map(|v| {
            let mut a = Vec::new();
            for_each_neighbor(v, q, &pows, |u| a.push(u as usize));
            a
        })
        .collect();
    let matches = |table: &[u32]| -> bool {
        let mut counts = vec![0u64; k];
        for (v, nb) in adj.iter().enumerate() {
            counts.iter_mut().for_each(|x| *x = 0);
            for &u in nb {
                counts[table[u] as usize] += 1;
            }
            if counts != s.rows()[table[v] as usize] {
                return false;
            }
        }
        true
    };
    let essential = |table: &[u32]| -> bool {
        pows.iter().all(|&p| {
            let p = p as usize;
            (0..verts).any(|v| (v / p).is_multiple_of(q as usize) && {
                let c0 = table[v];
                (1..q as usize).any(|d| table[v + d * p] != c0)
            })
        })
    };

    let total = total as u64;
    let found: Vec<Vec<u32>> = (0..total.div_ceil(BLOCK))
        .into_par_iter()
        .flat_map_iter(|b| {
            let mut out = Vec::new();
            let mut table = vec![0u32; verts];
            let mut word = vec![0u8; verts];
            write_digits(b * BLOCK, k as u32, &mut word);
            for _ in b * BLOCK..((b + 1) * BLOCK).min(total) {
                // word[0] is least significant; vertex 0 reads the most significant digit.
                for (v, t) in table.iter_mut().enumerate() {
                    *t = word[verts - 1 - v] as u32;
                }
                advance(&mut word, k as u32);
                if matches(&table) && (!require_all_essential || essential(&table)) {
                    let mut seen = vec![false; k];
                    table.iter().for_each(|&c| seen[c as usize] = true);
                    if seen.iter().all(|&x| x) {
                        out.push(table.clone());
                    }
                }
            }
            out.into_iter()
        })
        .collect();
    found
        .into_iter()
        .map(|t| Coloring::from_table(n, q, k as u32, t))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamming::index;

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn qm(n: usize, q: u32, rows: &[&[u64]]) -> QuotientMatrix {
        QuotientMatrix::new(n, q, rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn parity(n: usize) -> Coloring {
        Coloring::from_fn(n, 2, 2, |w| w.iter().map(|&x| x as u32).sum::<u32>() % 2).unwrap()
    }

    #[test]
    fn parity_quotient() {
        let out = compute_quotient(&parity(3), &Guards::default()).unwrap();
        assert_eq!(out, QuotientOutcome::Perfect(qm(3, 2, &[&[0, 3], &[3, 0]])));
    }

    #[test]
    fn product_is_not_perfect() {
        let c = Coloring::from_fn(2, 2, 2, |w| (w[0] & w[1]) as u32).unwrap();
        let QuotientOutcome::NotPerfect(w) = compute_quotient(&c, &Guards::default()).unwrap()
        else {
            panic!("x0*x1 is not perfect");
        };
        assert_eq!((w.color, w.reference, w.vertex), (0, 0, 1));
        assert_eq!(w.reference_profile, vec![2, 0]);
        assert_eq!(w.vertex_profile, vec![1, 1]);
    }

    #[test]
    fn essential_mask() {
        let c = Coloring::from_fn(3, 2, 2, |w| w[0] as u32).unwrap();
        assert_eq!(
            essential_arguments(&c, &Guards::default()).unwrap(),
            vec![true, false, false]
        );
        let one = Coloring::from_fn(3, 3, 1, |_| 0).unwrap();
        assert_eq!(
            essential_arguments(&one, &Guards::default()).unwrap(),
            vec![false; 3]
        );
        let mid = Coloring::from_fn(3, 3, 3, |w| w[1] as u32).unwrap();
        assert_eq!(
            essential_arguments(&mid, &Guards::default()).unwrap(),
            vec![false, true, false]
        );
    }

    #[test]
    fn densities_examples() {
        assert_eq!(
            densities_by_count(&parity(3), &Guards::default()).unwrap(),
            vec![rat(1, 2), rat(1, 2)]
        );
        assert_eq!(
            densities_from_quotient(&qm(3, 2, &[&[0, 3], &[1, 2]])).unwrap(),
            vec![rat(1, 4), rat(3, 4)]
        );
        assert_eq!(
            densities_from_quotient(&qm(7, 2, &[&[2, 5], &[3, 4]])).unwrap(),
            vec![rat(3, 8), rat(5, 8)]
        );
        assert!(matches!(
            densities_from_quotient(&qm(2, 2, &[&[0, 2], &[1, 2]])),
            Err(Error::Inconsistent(_))
        ));
        assert!(matches!(
            densities_from_quotient(&qm(1, 2, &[&[1, 0], &[0, 1]])),
            Err(Error::Disconnected)
        ));
        // rho_0 S_01 != rho_1 S_10 around the triangle
        assert!(matches!(
            densities_from_quotient(&qm(3, 2, &[&[0, 2, 1], &[1, 0, 2], &[2, 1, 0]])),
            Err(Error::Inconsistent(_))
        ));
    }

    #[test]
    fn spectrum_examples() {
        let sp = |s: &QuotientMatrix| -> Vec<(usize, i64, usize)> {
            quotient_spectrum(s)
                .unwrap()
                .into_iter()
                .map(|e| (e.index, e.eigenvalue, e.multiplicity))
                .collect()
        };
        assert_eq!(sp(&qm(3, 2, &[&[0, 3], &[1, 2]])), vec![(0, 3, 1), (2, -1, 1)]);
        assert_eq!(
            sp(&qm(22, 2, &[&[12, 10], &[6, 16]])),
            vec![(0, 22, 1), (8, 6, 1)]
        );
        assert_eq!(sp(&qm(1, 2, &[&[0, 1], &[1, 0]])), vec![(0, 1, 1), (1, -1, 1)]);
        // eigenvalues 3 and 0; 0 is not an eigenvalue of H(3,2)
        assert!(matches!(
            quotient_spectrum(&qm(3, 2, &[&[2, 1], &[2, 1]])),
            Err(Error::SpectrumNotInGraph { .. })
        ));
    }

    #[test]
    fn validation_examples() {
        let d = validate_quotient(&qm(24, 2, &[&[1, 23], &[9, 15]]));
        assert!(d.all_pass());
        let idx: Vec<usize> = d.spectrum.unwrap().iter().map(|e| e.index).collect();
        assert_eq!(idx, vec![0, 16]);
        assert!(validate_quotient(&qm(3, 2, &[&[1, 2], &[2, 1]])).all_pass());
        let d = validate_quotient(&qm(4, 3, &[&[0, 8, 8], &[8, 0, 8], &[8, 8, 0]]));
        assert!(!d.row_sums);
        assert!(d.detailed_balance);
    }

    #[test]
    fn bareiss_rank() {
        let m = |rows: &[&[i64]]| -> Vec<Vec<BigInt>> {
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect()
        };
        assert_eq!(integer_rank(m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(integer_rank(m(&[&[0, 1], &[1, 0]])), 2);
        assert_eq!(integer_rank(m(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(integer_rank(m(&[&[2, 4, 6], &[1, 3, 5], &[3, 7, 11]])), 2);
    }

    #[test]
    fn translations_of_parity_are_uniform() {
        let p = parity(2);
        let members: Vec<Coloring> = (0..4u64)
            .map(|z| p.translate(&crate::hamming::digits(z, 2, 2).unwrap()).unwrap())
            .collect();
        let r = check_uniform(&members, Coverage::Exhaustive, &Guards::default()).unwrap();
        assert!(r.uniform);
        assert_eq!(r.multiplicities, vec![2, 2]);
        assert_eq!(r.matches_densities, Some(true));
        let s = check_uniform(
            &members,
            Coverage::Sampled {
                samples: 50,
                seed: 7,
            },
            &Guards::default(),
        )
        .unwrap();
        assert!(s.uniform && !s.exhaustive);
    }

    #[test]
    fn repeated_member_is_not_uniform() {
        let c = Coloring::from_fn(2, 2, 2, |w| w[0] as u32).unwrap();
        let r = check_uniform(&[c.clone(), c], Coverage::Exhaustive, &Guards::default()).unwrap();
        assert!(!r.uniform);
        assert_eq!(r.violation, Some(vec![1, 0]));
    }

    #[test]
    fn no_essential_solution_on_three_cube() {
        let g = Guards::default();
        let four_cycle = search_colorings(2, 2, &qm(2, 2, &[&[0, 2], &[2, 0]]), true, &g).unwrap();
        let tables: Vec<Vec<u32>> = four_cycle
            .iter()
            .map(|c| c.table().unwrap().to_vec())
            .collect();
        assert_eq!(tables, vec![vec![0, 1, 1, 0], vec![1, 0, 0, 1]]);
        let s = qm(3, 2, &[&[1, 2], &[2, 1]]);
        assert!(search_colorings(3, 2, &s, true, &g).unwrap().is_empty());
        let any = search_colorings(3, 2, &s, false, &g).unwrap();
        assert!(!any.is_empty());
        for c in &any {
            assert_eq!(
                essential_arguments(c, &g).unwrap().iter().filter(|&&e| e).count(),
                2
            );
        }
        assert!(matches!(
            search_colorings(5, 2, &s, false, &g),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn dummy_argument_is_inessential() {
        let c = parity(3).embed(4, 0).unwrap();
        assert_eq!(
            essential_arguments(&c, &Guards::default()).unwrap(),
            vec![true, true, true, false]
        );
        let v = index(&[1, 0, 0, 1], 2).unwrap();
        assert_eq!(c.evaluate(v).unwrap(), 1);
    }
}
