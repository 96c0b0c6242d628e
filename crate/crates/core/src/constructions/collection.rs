use serde::Serialize;

use crate::error::{Error, Result};
use crate::hamming::{digits, vertex_count, write_digits, Coloring, Guards, QuotientMatrix};

/// How a collection was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Translates `C(x - z)` of one base coloring.
    Translations,
    /// Unions of consecutive Hamming-code cosets, shifted cyclically.
    CyclicCosetShift,
    /// Outputs of the recursive step, one per cyclic shift of the input collection.
    CyclicPermutationOfCollection,
}

/// What is known about member 0 depending on all of its arguments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EssentialStatus {
    Unknown,
    /// Checked exhaustively.
    Verified,
    /// Implied by a construction whose preconditions were established.
    ByConstruction,
}

/// Colorings of one H(n,q) whose multiset of colors is the same at every vertex.
#[derive(Debug, Clone)]
pub struct UniformCollection {
    pub members: Vec<Coloring>,
    pub provenance: Provenance,
    /// Common quotient matrix, verified or predicted by the construction.
    pub quotient: Option<QuotientMatrix>,
    pub essential: EssentialStatus,
}

impl UniformCollection {
    pub fn new(
        members: Vec<Coloring>,
        provenance: Provenance,
        quotient: Option<QuotientMatrix>,
    ) -> Result<Self> {
        let first = members
            .first()
            .ok_or_else(|| Error::SizeMismatch("empty collection".into()))?;
        if members
            .iter()
            .any(|c| c.n() != first.n() || c.q() != first.q() || c.k() != first.k())
        {
            return Err(Error::SizeMismatch(
                "collection members must share n, q and k".into(),
            ));
        }
        Ok(Self {
            members,
            provenance,
            quotient,
            essential: EssentialStatus::Unknown,
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn n(&self) -> usize {
        self.members[0].n()
    }

    pub fn q(&self) -> u32 {
        self.members[0].q()
    }

    pub fn k(&self) -> u32 {
        self.members[0].k()
    }

    /// The collection repeated `times` times; still uniform.
    pub fn repeated(&self, times: usize) -> Self {
        let members = self
            .members
            .iter()
            .cycle()
            .take(self.members.len() * times)
            .cloned()
            .collect();
        Self {
            members,
            ..self.clone()
        }
    }
}

/// All `q^n` translates `x -> C(x - z)`, ordered by the index of `z`; member 0 is `C`.
pub fn translations_collection(c: &Coloring, guards: &Guards) -> Result<UniformCollection> {
    let total = guards.check_materialize(c.n(), c.q())?;
    let mut members = Vec::with_capacity(total as usize);
    members.push(c.clone());
    let mut z = vec![0u8; c.n()];
    for v in 1..total {
        write_digits(v, c.q(), &mut z);
        members.push(c.translate(&z)?);
    }
    UniformCollection::new(members, Provenance::Translations, None)
}

/// Add two vertex indices componentwise over Z_q.
fn add_words(a: u64, b: u64, n: usize, q: u32) -> u64 {
    let (mut a, mut b, q) = (a, b, q as u64);
    let mut out = 0u64;
    let mut p = 1u64;
    for _ in 0..n {
        out += ((a % q + b % q) % q) * p;
        a /= q;
        b /= q;
        p *= q;
    }
    out
}

/// Periods `v` with `C(x + v) = C(x)` for all `x`, ascending.
pub(crate) fn period_group(c: &Coloring, guards: &Guards) -> Result<Vec<u64>> {
    let values = c.values(guards)?;
    let (n, q) = (c.n(), c.q());
    let total = values.len() as u64;
    Ok((0..total)
        .filter(|&v| {
            (0..total).all(|x| values[add_words(x, v, n, q) as usize] == values[x as usize])
        })
        .collect())
}

/// Keep one translate per coset of the period group of member 0.
pub fn reduce_by_periods(col: &UniformCollection, guards: &Guards) -> Result<UniformCollection> {
    if col.provenance != Provenance::Translations {
        return Err(Error::Unsupported(
            "period reduction applies to translation collections".into(),
        ));
    }
    let base = &col.members[0];
    let (n, q) = (base.n(), base.q());
    let total = vertex_count(n, q).ok_or_else(|| Error::Overflow("q^n".into()))?;
    if col.len() as u64 != total {
        return Err(Error::SizeMismatch(format!(
            "expected all {total} translates, found {}",
            col.len()
        )));
    }
    let periods = period_group(base, guards)?;
    let members = (0..total)
        .filter(|&z| periods.iter().all(|&p| add_words(z, p, n, q) >= z))
        .map(|z| {
            if z == 0 {
                Ok(base.clone())
            } else {
                base.translate(&digits(z, n, q)?)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = UniformCollection::new(members, Provenance::Translations, col.quotient.clone())?;
    out.essential = col.essential;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{check_uniform, Coverage};

    fn parity(n: usize) -> Coloring {
        Coloring::from_fn(n, 2, 2, |w| w.iter().map(|&x| x as u32).sum::<u32>() % 2).unwrap()
    }

    #[test]
    fn parity_translations() {
        let g = Guards::default();
        let col = translations_collection(&parity(2), &g).unwrap();
        assert_eq!(col.len(), 4);
        assert!(col.members[0].same_body(&parity(2)) || col.members[0].is_explicit());
        let r = check_uniform(&col.members, Coverage::Exhaustive, &g).unwrap();
        assert!(r.uniform);
        assert_eq!(r.multiplicities, vec![2, 2]);
    }

    #[test]
    fn parity_periods() {
        let g = Guards::default();
        assert_eq!(period_group(&parity(2), &g).unwrap(), vec![0, 3]);
        let col = translations_collection(&parity(2), &g).unwrap();
        let red = reduce_by_periods(&col, &g).unwrap();
        assert_eq!(red.len(), 2);
        let r = check_uniform(&red.members, Coverage::Exhaustive, &g).unwrap();
        assert!(r.uniform);
        assert_eq!(r.multiplicities, vec![1, 1]);
    }

    #[test]
    fn trivial_periods_keep_everything() {
        let g = Guards::default();
        let c = Coloring::from_fn(3, 2, 2, |w| (w[0] & w[1] | w[2]) as u32).unwrap();
        let col = translations_collection(&c, &g).unwrap();
        assert_eq!(reduce_by_periods(&col, &g).unwrap().len(), 8);
    }

    #[test]
    fn mixed_members_rejected() {
        let err = UniformCollection::new(
            vec![parity(2), parity(3)],
            Provenance::Translations,
            None,
        );
        assert!(matches!(err, Err(Error::SizeMismatch(_))));
    }
}
