//! Finite fields GF(p^k) as precomputed lookup tables.
//!
//! Elements are labeled by their coefficient vectors over GF(p): the element
//! `c_0 + c_1 x + ... + c_{k-1} x^{k-1}` gets label `sum c_i p^i`. Labels 0 and 1
//! are the additive and multiplicative identities.

use crate::error::{Error, Result};

/// Largest field order accepted by [`FieldTable::new`].
pub const MAX_FIELD_ORDER: u64 = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldTable {
    q: u32,
    p: u32,
    k: u32,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    /// Defining polynomial, lowest coefficient first, including the leading 1.
    /// Empty for prime fields.
    irreducible: Vec<u8>,
}

/// Factor `q` as `p^k` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Remainder of `a` modulo the monic polynomial `m` over GF(p).
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    poly_trim(r)
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    poly_trim(out)
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-p digits of `label`.
fn monic_from_label(label: u32, deg: u32, p: u32) -> Vec<u32> {
    let mut c = digits_of(label, deg as usize, p);
    c.push(1);
    c
}

fn digits_of(mut v: u32, len: usize, base: u32) -> Vec<u32> {
    let mut d = Vec::with_capacity(len);
    for _ in 0..len {
        d.push(v % base);
        v /= base;
    }
    d
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = (f.len() - 1) as u32;
    for d in 1..=deg / 2 {
        for label in 0..p.pow(d) {
            let g = monic_from_label(label, d, p);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FieldTable {
    /// Build the tables for GF(q). For `q = p^k` with `k > 1` the defining polynomial
    /// is the monic irreducible of degree `k` with the smallest lower-coefficient label.
    pub fn new(q: u64) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_FIELD_ORDER {
            return Err(Error::Unsupported(format!(
                "field order {q} exceeds {MAX_FIELD_ORDER}"
            )));
        }
        let (q, p) = (q as u32, p as u32);
        let irreducible: Vec<u32> = if k == 1 {
            Vec::new()
        } else {
            (0..p.pow(k))
                .map(|label| monic_from_label(label, k, p))
                .find(|f| is_irreducible(f, p))
                .expect("an irreducible polynomial of every degree exists")
        };

        let qs = q as usize;
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        let polys: Vec<Vec<u32>> = (0..q).map(|a| digits_of(a, k as usize, p)).collect();
        let label = |c: &[u32]| -> u8 {
            c.iter().rev().fold(0u32, |acc, &d| acc * p + d) as u8
        };
        for a in 0..qs {
            for b in 0..qs {
                let sum: Vec<u32> = polys[a]
                    .iter()
                    .zip(&polys[b])
                    .map(|(x, y)| (x + y) % p)
                    .collect();
                add[a * qs + b] = label(&sum);
                let prod = if k == 1 {
                    vec![(a as u32 * b as u32) % p]
                } else {
                    let mut r = poly_rem(&poly_mul(&polys[a], &polys[b], p), &irreducible, p);
                    r.resize(k as usize, 0);
                    r
                };
                mul[a * qs + b] = label(&prod);
            }
        }
        let neg = (0..qs)
            .map(|a| (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u8)
            .collect();
        let mut inv = vec![0u8; qs];
        for a in 1..qs {
            inv[a] = (1..qs)
                .find(|&b| mul[a * qs + b] == 1)
                .ok_or_else(|| Error::Unsupported(format!("no inverse for {a} in GF({q})")))?
                as u8;
        }
        Ok(Self {
            q,
            p,
            k,
            add,
            mul,
            neg,
            inv,
            irreducible: irreducible.into_iter().map(|c| c as u8).collect(),
        })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    /// Coefficients of the defining polynomial, constant term first; empty for prime fields.
    pub fn irreducible_poly(&self) -> &[u8] {
        &self.irreducible
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: u8) -> Result<u8> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv[a as usize])
    }

    pub fn pow(&self, a: u8, mut e: u64) -> u8 {
        let (mut base, mut acc) = (a, 1u8);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Exhaustively check the field axioms on the tables. Cubic in `q`.
    pub fn verify_axioms(&self) -> std::result::Result<(), String> {
        let q = self.q as u8;
        let all = || (0..q as u16).map(|x| x as u8);
        for a in all() {
            if self.add(a, 0) != a || self.mul(a, 1) != a {
                return Err(format!("identity fails at {a}"));
            }
            if self.add(a, self.neg(a)) != 0 {
                return Err(format!("additive inverse fails at {a}"));
            }
            if a != 0 && self.mul(a, self.inv[a as usize]) != 1 {
                return Err(format!("multiplicative inverse fails at {a}"));
            }
            for b in all() {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(format!("commutativity fails at ({a},{b})"));
                }
                for c in all() {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(format!("additive associativity fails at ({a},{b},{c})"));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(format!("multiplicative associativity fails at ({a},{b},{c})"));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(format!("distributivity fails at ({a},{b},{c})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// `a^q == a` for every element.
    pub fn verify_frobenius(&self) -> bool {
        (0..self.q).all(|a| self.pow(a as u8, self.q as u64) == a as u8)
    }
}

/// The enumeration of GF(q)^s used to index tuples: `rank(b) = sum label(b_i) q^i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TupleRank {
    q: u32,
    s: u32,
}

impl TupleRank {
    pub fn new(q: u32, s: u32) -> Result<Self> {
        let total = (q as u128).checked_pow(s);
        match total {
            Some(t) if t <= u64::MAX as u128 && q >= 2 => Ok(Self { q, s }),
            _ => Err(Error::Unsupported(format!("{q}^{s} tuples"))),
        }
    }

    pub fn count(&self) -> u64 {
        (self.q as u64).pow(self.s)
    }

    pub fn rank(&self, tuple: &[u8]) -> Result<u64> {
        if tuple.len() != self.s as usize {
            return Err(Error::OutOfRange {
                value: tuple.len() as u64,
                limit: self.s as u64,
            });
        }
        let mut r = 0u64;
        for &d in tuple.iter().rev() {
            if d as u32 >= self.q {
                return Err(Error::OutOfRange {
                    value: d as u64,
                    limit: self.q as u64,
                });
            }
            r = r * self.q as u64 + d as u64;
        }
        Ok(r)
    }

    pub fn unrank(&self, mut r: u64) -> Result<Vec<u8>> {
        if r >= self.count() {
            return Err(Error::OutOfRange {
                value: r,
                limit: self.count(),
            });
        }
        let mut t = Vec::with_capacity(self.s as usize);
        for _ in 0..self.s {
            t.push((r % self.q as u64) as u8);
            r /= self.q as u64;
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_is_xor_and() {
        let f = FieldTable::new(2).unwrap();
        for a in 0..2u8 {
            for b in 0..2u8 {
                assert_eq!(f.add(a, b), a ^ b);
                assert_eq!(f.mul(a, b), a & b);
            }
        }
        assert!(f.irreducible_poly().is_empty());
        assert_eq!(f.inv(1).unwrap(), 1);
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert!(matches!(FieldTable::new(6), Err(Error::NotPrimePower(6))));
        assert!(matches!(FieldTable::new(1), Err(Error::NotPrimePower(1))));
        assert!(matches!(FieldTable::new(512), Err(Error::Unsupported(_))));
    }

    #[test]
    fn gf4_uses_x2_x_1() {
        let f = FieldTable::new(4).unwrap();
        assert_eq!(f.irreducible_poly(), &[1, 1, 1]);
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.inv(2).unwrap(), 3);
        assert_eq!(f.mul(2, 3), 1);
    }

    #[test]
    fn gf3_arithmetic() {
        let f = FieldTable::new(3).unwrap();
        assert_eq!(f.add(2, 2), 1);
        assert_eq!(f.sub(0, 1), 2);
        assert!(matches!(f.inv(0), Err(Error::DivisionByZero)));
    }

    #[test]
    fn small_fields_satisfy_axioms() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = FieldTable::new(q).unwrap();
            f.verify_axioms().unwrap();
        }
    }

    #[test]
    fn frobenius_holds_up_to_256() {
        for q in 2..=256u64 {
            if prime_power(q).is_some() {
                assert!(FieldTable::new(q).unwrap().verify_frobenius(), "q = {q}");
            }
        }
    }

    #[test]
    fn tuple_rank_examples() {
        let t = TupleRank::new(2, 3).unwrap();
        assert_eq!(t.unrank(5).unwrap(), vec![1, 0, 1]);
        assert_eq!(TupleRank::new(3, 2).unwrap().rank(&[2, 1]).unwrap(), 5);
        assert!(matches!(t.unrank(8), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn tuple_rank_round_trip() {
        for (q, s) in [(2, 3), (3, 2), (4, 2), (2, 16), (16, 4)] {
            let t = TupleRank::new(q, s).unwrap();
            for r in 0..t.count() {
                assert_eq!(t.rank(&t.unrank(r).unwrap()).unwrap(), r);
            }
        }
    }
}
