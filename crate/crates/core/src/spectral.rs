//! Character transforms over Z_q^n and the degree of functions and colorings.
//!
//! The characters of weight `i` span the eigenspace of H(n,q) for
//! `n(q-1) - q i`, so the degree of a function is the largest weight carrying a
//! nonzero transform coefficient. Coefficients are kept exact: integers for
//! q = 2, elements of `Z[x]/Phi_q(x)` otherwise (x standing for a primitive
//! q-th root of unity). Stored coefficients are unnormalized; the true
//! coefficient carries an implicit factor `q^{-n}`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hamming::{Coloring, Guards, QuotientMatrix};
use crate::verify::quotient_spectrum;

/// Coefficients of the q-th cyclotomic polynomial, constant term first.
pub fn cyclotomic(q: u32) -> Vec<i64> {
    // x^q - 1 = prod_{d | q} Phi_d(x)
    let mut num = vec![0i64; q as usize + 1];
    num[0] = -1;
    num[q as usize] = 1;
    for d in (1..q).filter(|d| q.is_multiple_of(*d)) {
        num = poly_div_exact(&num, &cyclotomic(d));
    }
    num
}

fn poly_div_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = *b.last().unwrap();
    let mut quot = vec![0i64; a.len() - db];
    for i in (0..quot.len()).rev() {
        let c = r[i + db] / lead;
        quot[i] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[i + j] -= c * bj;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    quot
}

/// Reduce a polynomial modulo the monic `phi`, returning `phi.len() - 1` coefficients.
fn reduce_mod(v: &mut Vec<i64>, phi: &[i64]) {
    let d = phi.len() - 1;
    for t in (d..v.len()).rev() {
        let c = v[t];
        if c != 0 {
            for (j, &pj) in phi.iter().enumerate() {
                v[t - d + j] -= c * pj;
            }
        }
    }
    v.truncate(d);
}

/// In-place Walsh–Hadamard transform `F(z) = sum_x f(x) (-1)^{x.z}`.
pub fn walsh_hadamard(data: &mut [i64]) {
    let len = data.len();
    assert!(len.is_power_of_two(), "length must be a power of two");
    let mut h = 1;
    while h < len {
        if h >= 1 << 12 {
            data.par_chunks_mut(2 * h).for_each(|chunk| {
                let (lo, hi) = chunk.split_at_mut(h);
                lo.par_chunks_mut(1 << 12)
                    .zip(hi.par_chunks_mut(1 << 12))
                    .for_each(|(a, b)| butterfly(a, b));
            });
        } else {
            data.par_chunks_mut((2 * h).max(1 << 14)).for_each(|chunk| {
                for pair in chunk.chunks_mut(2 * h) {
                    let (a, b) = pair.split_at_mut(h);
                    butterfly(a, b);
                }
            });
        }
        h *= 2;
    }
}

#[inline]
fn butterfly(a: &mut [i64], b: &mut [i64]) {
    for (x, y) in a.iter_mut().zip(b.iter_mut()) {
        let (u, v) = (*x, *y);
        *x = u + v;
        *y = u - v;
    }
}

/// Group-ring transform: each vertex carries a length-q vector in `Z[x]/(x^q - 1)`;
/// coordinate by coordinate, `out[z] = sum_d x^{sign * d * z} in[d]`.
fn group_ring_transform(data: &mut [i64], n: usize, q: u32, inverse: bool) {
    let q = q as usize;
    let mut stride = 1usize;
    for _ in 0..n {
        let span = stride * q * q;
        data.par_chunks_mut(span).for_each(|chunk| {
            let mut out = vec![0i64; q * q];
            for lo in 0..stride {
                out.iter_mut().for_each(|x| *x = 0);
                for d in 0..q {
                    let src = &chunk[(d * stride + lo) * q..(d * stride + lo) * q + q];
                    for z in 0..q {
                        let mut shift = (d * z) % q;
                        if inverse {
                            shift = (q - shift) % q;
                        }
                        let dst = &mut out[z * q..z * q + q];
                        for (t, &c) in src.iter().enumerate() {
                            dst[(t + shift) % q] += c;
                        }
                    }
                }
                for z in 0..q {
                    chunk[(z * stride + lo) * q..(z * stride + lo) * q + q]
                        .copy_from_slice(&out[z * q..z * q + q]);
                }
            }
        });
        stride *= q;
    }
}

fn weight(mut z: u64, q: u32) -> usize {
    let mut w = 0;
    while z > 0 {
        if !z.is_multiple_of(q as u64) {
            w += 1;
        }
        z /= q as u64;
    }
    w
}

/// Exact character transform of a function on H(n,q).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterSpectrum {
    pub n: usize,
    pub q: u32,
    /// Coefficients per frequency word: `width` integers each, the coordinates
    /// in the basis `1, x, ..., x^{width-1}` of `Z[x]/Phi_q`.
    width: usize,
    coeffs: Vec<i64>,
}

impl CharacterSpectrum {
    pub fn width(&self) -> usize {
        self.width
    }

    /// Unnormalized coefficient at frequency word index `z`.
    pub fn coefficient(&self, z: u64) -> &[i64] {
        let z = z as usize;
        &self.coeffs[z * self.width..(z + 1) * self.width]
    }

    pub fn is_zero_at(&self, z: u64) -> bool {
        self.coefficient(z).iter().all(|&c| c == 0)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len() / self.width
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `mass[w]` is true iff some frequency of Hamming weight `w` has a nonzero coefficient.
    pub fn weights_with_mass(&self) -> Vec<bool> {
        let mut mass = vec![false; self.n + 1];
        for z in 0..self.len() as u64 {
            if !self.is_zero_at(z) {
                mass[weight(z, self.q)] = true;
            }
        }
        mass
    }

    /// Largest weight with nonzero mass; 0 for constant (or zero) functions.
    pub fn degree(&self) -> usize {
        self.weights_with_mass()
            .iter()
            .rposition(|&m| m)
            .unwrap_or(0)
    }

    /// Recover the original function exactly.
    pub fn inverse(&self) -> Result<Vec<i64>> {
        let total = self.len() as i64;
        if self.q == 2 {
            let mut d = self.coeffs.clone();
            walsh_hadamard(&mut d);
            return d
                .into_iter()
                .map(|x| {
                    (x % total == 0)
                        .then_some(x / total)
                        .ok_or_else(|| Error::Inconsistent("non-integral inverse".into()))
                })
                .collect();
        }
        let q = self.q as usize;
        let phi = cyclotomic(self.q);
        let mut data = vec![0i64; self.len() * q];
        for z in 0..self.len() {
            data[z * q..z * q + self.width].copy_from_slice(self.coefficient(z as u64));
        }
        group_ring_transform(&mut data, self.n, self.q, true);
        data.chunks(q)
            .map(|c| {
                let mut v = c.to_vec();
                reduce_mod(&mut v, &phi);
                if v[1..].iter().any(|&x| x != 0) || v[0] % total != 0 {
                    return Err(Error::Inconsistent("inverse is not an integer".into()));
                }
                Ok(v[0] / total)
            })
            .collect()
    }

    /// `sum_z |F(z)|^2 == q^n sum_x f(x)^2`, evaluated exactly via the trace form.
    pub fn parseval_holds(&self, f: &[i64]) -> bool {
        let total = self.len() as i64;
        let rhs: i64 = total * f.iter().map(|x| x * x).sum::<i64>();
        if self.q == 2 {
            return self.coeffs.iter().map(|x| x * x).sum::<i64>() == rhs;
        }
        let q = self.q as usize;
        let phi = cyclotomic(self.q);
        let w = self.width;
        let mut acc = vec![0i64; 2 * q];
        for z in 0..self.len() {
            let a = self.coefficient(z as u64);
            // complex conjugation sends x^t to x^{-t}
            let mut conj = vec![0i64; q];
            for (t, &c) in a.iter().enumerate() {
                conj[(q - t) % q] += c;
            }
            for (i, &x) in a.iter().enumerate().take(w) {
                for (j, &y) in conj.iter().enumerate() {
                    acc[i + j] += x * y;
                }
            }
        }
        reduce_mod(&mut acc, &phi);
        acc[0] == rhs && acc[1..].iter().all(|&x| x == 0)
    }
}

/// Transform an integer-valued function given in vertex order.
pub fn character_transform(
    f: &[i64],
    n: usize,
    q: u32,
    guards: &Guards,
) -> Result<CharacterSpectrum> {
    let total = guards.check_materialize(n, q)?;
    if f.len() as u64 != total {
        return Err(Error::LengthMismatch {
            expected: total,
            found: f.len() as u64,
        });
    }
    if q == 2 {
        let mut coeffs = f.to_vec();
        walsh_hadamard(&mut coeffs);
        return Ok(CharacterSpectrum {
            n,
            q,
            width: 1,
            coeffs,
        });
    }
    let qs = q as usize;
    let phi = cyclotomic(q);
    let width = phi.len() - 1;
    let mut data = vec![0i64; f.len() * qs];
    for (v, &x) in f.iter().enumerate() {
        data[v * qs] = x;
    }
    group_ring_transform(&mut data, n, q, false);
    let coeffs = data
        .par_chunks(qs)
        .flat_map_iter(|c| {
            let mut v = c.to_vec();
            reduce_mod(&mut v, &phi);
            v.into_iter()
        })
        .collect();
    Ok(CharacterSpectrum {
        n,
        q,
        width,
        coeffs,
    })
}

/// Largest `i` such that `f` has a nonzero component in the `i`-th eigenspace.
pub fn degree(f: &[i64], n: usize, q: u32, guards: &Guards) -> Result<usize> {
    Ok(character_transform(f, n, q, guards)?.degree())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    /// Degree of the characteristic function of each color.
    pub per_color: Vec<usize>,
    /// Maximum over colors.
    pub degree: usize,
}

fn indicator_spectra<'a>(
    c: &'a Coloring,
    guards: &'a Guards,
) -> Result<impl Iterator<Item = Result<CharacterSpectrum>> + 'a> {
    let m = c.materialize(guards)?;
    Ok((0..c.k()).map(move |color| {
        let t = m.table().expect("materialized");
        let f: Vec<i64> = (0..t.len())
            .into_par_iter()
            .map(|v| (t.get(v) == color) as i64)
            .collect();
        character_transform(&f, c.n(), c.q(), guards)
    }))
}

pub fn coloring_degree(c: &Coloring, guards: &Guards) -> Result<DegreeReport> {
    let per_color = indicator_spectra(c, guards)?
        .map(|s| s.map(|s| s.degree()))
        .collect::<Result<Vec<_>>>()?;
    let degree = per_color.iter().copied().max().unwrap_or(0);
    Ok(DegreeReport { per_color, degree })
}

/// True iff every color's characteristic function lies in the sum of the
/// eigenspaces whose eigenvalues occur in `s`.
pub fn eigen_decomposition_check(c: &Coloring, s: &QuotientMatrix, guards: &Guards) -> Result<bool> {
    let allowed: Vec<usize> = match quotient_spectrum(s) {
        Ok(sp) => sp.into_iter().map(|e| e.index).collect(),
        Err(Error::SpectrumNotInGraph { .. }) => return Ok(false),
        Err(e) => return Err(e),
    };
    for spec in indicator_spectra(c, guards)? {
        let mass = spec?.weights_with_mass();
        if mass
            .iter()
            .enumerate()
            .any(|(w, &m)| m && !allowed.contains(&w))
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Recolor by group: every color in `grouping[g]` becomes color `g`.
/// The result is not assumed to be perfect.
pub fn merge_colors(c: &Coloring, grouping: &[Vec<u32>]) -> Result<Coloring> {
    let k = c.k() as usize;
    let mut map = vec![u32::MAX; k];
    for (g, group) in grouping.iter().enumerate() {
        if group.is_empty() {
            return Err(Error::InvalidPartition(format!("group {g} is empty")));
        }
        for &color in group {
            let slot = map.get_mut(color as usize).ok_or_else(|| {
                Error::InvalidPartition(format!("color {color} is not below k = {k}"))
            })?;
            if *slot != u32::MAX {
                return Err(Error::InvalidPartition(format!(
                    "color {color} appears twice"
                )));
            }
            *slot = g as u32;
        }
    }
    if let Some(missing) = map.iter().position(|&g| g == u32::MAX) {
        return Err(Error::InvalidPartition(format!(
            "color {missing} is not in any group"
        )));
    }
    Ok(c.remap(map, grouping.len() as u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{compute_quotient, QuotientOutcome};

    /// Direct evaluation of `sum_x f(x) (-1)^{x.z}`, quadratic time.
    fn naive_wht(f: &[i64]) -> Vec<i64> {
        (0..f.len())
            .map(|z| {
                f.iter()
                    .enumerate()
                    .map(|(x, &v)| if (x & z).count_ones() % 2 == 0 { v } else { -v })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic(2), vec![1, 1]);
        assert_eq!(cyclotomic(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic(9), vec![1, 0, 0, 1, 0, 0, 1]);
    }

    #[test]
    fn wht_matches_naive() {
        let f: Vec<i64> = (0..64).map(|x| (x * 7 + 3) % 5 - 2).collect();
        let mut g = f.clone();
        walsh_hadamard(&mut g);
        assert_eq!(g, naive_wht(&f));
        let big: Vec<i64> = (0..1 << 15).map(|x: i64| (x * x) % 3).collect();
        let mut g = big.clone();
        walsh_hadamard(&mut g);
        walsh_hadamard(&mut g);
        assert!(g.iter().zip(&big).all(|(a, b)| *a == b << 15));
    }

    #[test]
    fn constant_function() {
        let s = character_transform(&[1; 8], 3, 2, &Guards::default()).unwrap();
        assert_eq!(s.coefficient(0), &[8]);
        assert!((1..8).all(|z| s.is_zero_at(z)));
        assert_eq!(s.degree(), 0);
    }

    #[test]
    fn repetition_code_indicator() {
        let mut f = vec![0i64; 8];
        f[0] = 1;
        f[7] = 1;
        let s = character_transform(&f, 3, 2, &Guards::default()).unwrap();
        let support: Vec<u64> = (0..8).filter(|&z| !s.is_zero_at(z)).collect();
        assert_eq!(support, vec![0, 3, 5, 6]);
        assert_eq!(s.degree(), 2);
    }

    #[test]
    fn parity_has_full_degree() {
        for n in 1..10 {
            let f: Vec<i64> = (0..1u32 << n).map(|x| (x.count_ones() % 2) as i64).collect();
            assert_eq!(degree(&f, n, 2, &Guards::default()).unwrap(), n);
        }
    }

    #[test]
    fn ternary_single_coordinate() {
        // f(x) = [x_0 == 0] is a combination of weight-0 and weight-1 characters
        let f: Vec<i64> = (0..27).map(|v| (v % 3 == 0) as i64).collect();
        let s = character_transform(&f, 3, 3, &Guards::default()).unwrap();
        assert_eq!(s.degree(), 1);
        assert_eq!(s.inverse().unwrap(), f);
        assert!(s.parseval_holds(&f));
    }

    #[test]
    fn delta_function_has_full_degree() {
        for (n, q) in [(3usize, 3u32), (2, 4), (2, 5), (3, 4)] {
            let total = q.pow(n as u32) as usize;
            let mut f = vec![0i64; total];
            f[total / 2] = 1;
            let s = character_transform(&f, n, q, &Guards::default()).unwrap();
            assert_eq!(s.degree(), n);
            assert_eq!(s.inverse().unwrap(), f);
        }
    }

    #[test]
    fn lines_are_degree_one() {
        // color classes {x : x_1 = a} of H(3,4)
        let c = Coloring::from_fn(3, 4, 4, |w| w[1] as u32).unwrap();
        let r = coloring_degree(&c, &Guards::default()).unwrap();
        assert_eq!(r.per_color, vec![1; 4]);
        let s = compute_quotient(&c, &Guards::default()).unwrap();
        let QuotientOutcome::Perfect(s) = s else {
            panic!()
        };
        assert!(eigen_decomposition_check(&c, &s, &Guards::default()).unwrap());
    }

    #[test]
    fn parity_decomposition() {
        let c = Coloring::from_fn(3, 2, 2, |w| w.iter().map(|&x| x as u32).sum::<u32>() % 2)
            .unwrap();
        let s = QuotientMatrix::new(3, 2, vec![vec![0, 3], vec![3, 0]]).unwrap();
        assert!(eigen_decomposition_check(&c, &s, &Guards::default()).unwrap());
        assert_eq!(coloring_degree(&c, &Guards::default()).unwrap().degree, 3);
    }

    #[test]
    fn merge_validation() {
        let c = Coloring::from_fn(2, 3, 3, |w| w[0] as u32).unwrap();
        let all = merge_colors(&c, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(all.k(), 1);
        assert_eq!(all.evaluate(5).unwrap(), 0);
        assert!(matches!(
            merge_colors(&c, &[vec![0, 1]]),
            Err(Error::InvalidPartition(_))
        ));
        assert!(matches!(
            merge_colors(&c, &[vec![0, 1], vec![1, 2]]),
            Err(Error::InvalidPartition(_))
        ));
        assert!(matches!(
            merge_colors(&c, &[vec![0, 1, 2], vec![]]),
            Err(Error::InvalidPartition(_))
        ));
        let two = merge_colors(&c, &[vec![2], vec![0, 1]]).unwrap();
        assert_eq!(two.eval_word(&[2, 0]), 0);
        assert_eq!(two.eval_word(&[1, 0]), 1);
    }
}
