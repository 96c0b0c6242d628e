//! Vertices, neighborhoods and colorings of the Hamming graph H(n,q).
//!
//! A vertex is a word `(x_0, ..., x_{n-1})` over `{0..q-1}`; its index is
//! `sum x_i q^i`, so position 0 is the least significant digit.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{FieldTable, TupleRank};

pub const DEFAULT_MATERIALIZE_GUARD: u64 = 1 << 26;
pub const DEFAULT_BRUTE_FORCE_GUARD: u64 = 1 << 24;
pub const MATERIALIZE_GUARD_ENV: &str = "PCOL_MATERIALIZE_GUARD";

/// Subtrees at most this large are replaced by their tables before bulk evaluation.
const COMPILE_THRESHOLD: u64 = 1 << 16;
/// Vertices per parallel work unit.
pub(crate) const BLOCK: u64 = 1 << 14;

/// Size limits for exhaustive work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guards {
    /// Maximum number of vertices of a dense table.
    pub materialize: u64,
    /// Maximum number of color assignments a brute-force search may enumerate.
    pub brute_force: u64,
}

impl Default for Guards {
    fn default() -> Self {
        Self {
            materialize: DEFAULT_MATERIALIZE_GUARD,
            brute_force: DEFAULT_BRUTE_FORCE_GUARD,
        }
    }
}

impl Guards {
    /// Defaults, with the materialization guard taken from `PCOL_MATERIALIZE_GUARD` if set.
    pub fn from_env() -> Self {
        let mut g = Self::default();
        if let Some(v) = std::env::var(MATERIALIZE_GUARD_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
        {
            g.materialize = v;
        }
        g
    }

    pub fn check_materialize(&self, n: usize, q: u32) -> Result<u64> {
        match vertex_count(n, q) {
            Some(c) if c <= self.materialize => Ok(c),
            c => Err(Error::TooLarge {
                cells: c.map(u128::from).unwrap_or(u128::MAX),
                guard: self.materialize,
            }),
        }
    }
}

/// `q^n`, if it fits in a `u64`.
pub fn vertex_count(n: usize, q: u32) -> Option<u64> {
    (q as u64).checked_pow(u32::try_from(n).ok()?)
}

pub fn digits(v: u64, n: usize, q: u32) -> Result<Vec<u8>> {
    let limit = vertex_count(n, q).unwrap_or(u64::MAX);
    if v >= limit {
        return Err(Error::OutOfRange { value: v, limit });
    }
    let mut word = vec![0u8; n];
    write_digits(v, q, &mut word);
    Ok(word)
}

#[inline]
pub(crate) fn write_digits(mut v: u64, q: u32, word: &mut [u8]) {
    for d in word.iter_mut() {
        *d = (v % q as u64) as u8;
        v /= q as u64;
    }
}

pub fn index(word: &[u8], q: u32) -> Result<u64> {
    let mut v: u64 = 0;
    for &d in word.iter().rev() {
        if d as u32 >= q {
            return Err(Error::OutOfRange {
                value: d as u64,
                limit: q as u64,
            });
        }
        v = v
            .checked_mul(q as u64)
            .and_then(|v| v.checked_add(d as u64))
            .ok_or_else(|| Error::Overflow("vertex index exceeds 64 bits".into()))?;
    }
    Ok(v)
}

#[inline]
fn index_unchecked(word: &[u8], q: u32) -> usize {
    word.iter()
        .rev()
        .fold(0usize, |acc, &d| acc * q as usize + d as usize)
}

/// Increment a word as a little-endian base-q counter.
#[inline]
pub(crate) fn advance(word: &mut [u8], q: u32) {
    for d in word.iter_mut() {
        *d += 1;
        if (*d as u32) < q {
            return;
        }
        *d = 0;
    }
}

/// Powers `q^0 .. q^{n-1}`.
pub(crate) fn powers(n: usize, q: u32) -> Vec<u64> {
    let mut p = Vec::with_capacity(n);
    let mut acc = 1u64;
    for _ in 0..n {
        p.push(acc);
        acc = acc.wrapping_mul(q as u64);
    }
    p
}

/// Call `f` on every neighbor of `v`, position-major, replacement digit ascending.
#[inline]
pub(crate) fn for_each_neighbor(v: u64, q: u32, pows: &[u64], mut f: impl FnMut(u64)) {
    if q == 2 {
        for &p in pows {
            f(v ^ p);
        }
        return;
    }
    for &p in pows {
        let d = (v / p) % q as u64;
        let base = v - d * p;
        for r in 0..q as u64 {
            if r != d {
                f(base + r * p);
            }
        }
    }
}

/// All `n(q-1)` neighbors of `v`.
pub fn neighbors(v: u64, n: usize, q: u32) -> Result<Vec<u64>> {
    let limit = vertex_count(n, q).ok_or_else(|| Error::Overflow("q^n".into()))?;
    if v >= limit {
        return Err(Error::OutOfRange { value: v, limit });
    }
    let pows = powers(n, q);
    let mut out = Vec::with_capacity(n * (q as usize - 1));
    for_each_neighbor(v, q, &pows, |u| out.push(u));
    Ok(out)
}

/// Dense color storage: one byte per vertex when `k <= 256`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColorTable {
    Narrow(Vec<u8>),
    Wide(Vec<u16>),
}

impl ColorTable {
    pub fn from_values(values: Vec<u32>, k: u32) -> Self {
        if k <= 256 {
            ColorTable::Narrow(values.into_iter().map(|c| c as u8).collect())
        } else {
            ColorTable::Wide(values.into_iter().map(|c| c as u16).collect())
        }
    }

    #[inline]
    pub fn get(&self, v: usize) -> u32 {
        match self {
            ColorTable::Narrow(t) => t[v] as u32,
            ColorTable::Wide(t) => t[v] as u32,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            ColorTable::Narrow(t) => t.len(),
            ColorTable::Wide(t) => t.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_vec(&self) -> Vec<u32> {
        (0..self.len()).map(|v| self.get(v)).collect()
    }

    /// Per-color vertex counts.
    pub fn counts(&self, k: u32) -> Vec<u64> {
        let merge = |mut a: Vec<u64>, b: Vec<u64>| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        };
        let len = self.len();
        (0..len.div_ceil(BLOCK as usize))
            .into_par_iter()
            .map(|b| {
                let mut c = vec![0u64; k as usize];
                let start = b * BLOCK as usize;
                for v in start..(start + BLOCK as usize).min(len) {
                    c[self.get(v) as usize] += 1;
                }
                c
            })
            .reduce(|| vec![0u64; k as usize], merge)
    }
}

/// Composition nodes of a symbolic coloring.
#[derive(Debug)]
pub enum Node {
    /// `base(x - shift)`, componentwise over Z_q.
    Translation { base: Coloring, shift: Vec<u8> },
    /// `base` applied to the argument block starting at `offset`; all other arguments are dummies.
    Embedded { base: Coloring, offset: usize },
    /// `inner[outer(y)](x)` for a word `(y, x)` with `y` of length `outer.n()`.
    Outer { outer: Coloring, inner: Vec<Coloring> },
    /// `map[base(x)]`.
    Merge { base: Coloring, map: Vec<u32> },
    /// Binary syndrome: XOR of `columns[i]` over the positions with `x_i = 1`.
    Syndrome { columns: Vec<u64> },
    /// `(sum x_i, sum x_i alpha_i)` over GF(q), encoded as `q * rank(beta) + a`.
    ReedMuller {
        field: Arc<FieldTable>,
        alphas: Vec<Vec<u8>>,
        ranker: TupleRank,
    },
}

#[derive(Debug)]
enum Body {
    Table(ColorTable),
    Node(Node),
}

/// A surjection from the vertices of H(n,q) onto `{0..k-1}`.
///
/// Cloning is cheap; the body is shared.
#[derive(Debug, Clone)]
pub struct Coloring {
    n: usize,
    q: u32,
    k: u32,
    body: Arc<Body>,
}

impl Coloring {
    /// Wrap a dense table. Checks lengths, color range and surjectivity.
    pub fn from_table(n: usize, q: u32, k: u32, values: Vec<u32>) -> Result<Self> {
        let expected = vertex_count(n, q).ok_or_else(|| Error::Overflow("q^n".into()))?;
        if values.len() as u64 != expected {
            return Err(Error::LengthMismatch {
                expected,
                found: values.len() as u64,
            });
        }
        if let Some((v, &c)) = values.iter().enumerate().find(|(_, &c)| c >= k) {
            return Err(Error::ColorOutOfRange {
                vertex: v as u64,
                value: c,
                k,
            });
        }
        Self::from_color_table(n, q, k, ColorTable::from_values(values, k))
    }

    pub(crate) fn from_color_table(n: usize, q: u32, k: u32, table: ColorTable) -> Result<Self> {
        let counts = table.counts(k);
        if let Some(missing) = counts.iter().position(|&c| c == 0) {
            return Err(Error::NotSurjective {
                missing: missing as u32,
            });
        }
        Ok(Self {
            n,
            q,
            k,
            body: Arc::new(Body::Table(table)),
        })
    }

    /// Tabulate `f` over all vertices.
    pub fn from_fn(n: usize, q: u32, k: u32, f: impl Fn(&[u8]) -> u32 + Sync) -> Result<Self> {
        let total = Guards::default().check_materialize(n, q)?;
        let values = tabulate(n, q, total, &f);
        Self::from_table(n, q, k, values)
    }

    fn symbolic(n: usize, q: u32, k: u32, node: Node) -> Self {
        Self {
            n,
            q,
            k,
            body: Arc::new(Body::Node(node)),
        }
    }

    /// `x -> self(x - shift)` over Z_q^n.
    pub fn translate(&self, shift: &[u8]) -> Result<Self> {
        if shift.len() != self.n || shift.iter().any(|&d| d as u32 >= self.q) {
            return Err(Error::SizeMismatch(format!(
                "translation vector must be a word of H({},{})",
                self.n, self.q
            )));
        }
        Ok(Self::symbolic(
            self.n,
            self.q,
            self.k,
            Node::Translation {
                base: self.clone(),
                shift: shift.to_vec(),
            },
        ))
    }

    /// Coloring of H(total_n, q) reading this coloring's arguments at `offset..offset + n`.
    pub fn embed(&self, total_n: usize, offset: usize) -> Result<Self> {
        if offset + self.n > total_n {
            return Err(Error::SizeMismatch(format!(
                "cannot place {} arguments at offset {offset} in {total_n}",
                self.n
            )));
        }
        Ok(Self::symbolic(
            total_n,
            self.q,
            self.k,
            Node::Embedded {
                base: self.clone(),
                offset,
            },
        ))
    }

    /// `(y, x) -> inner[outer(y)](x)`.
    pub fn outer(outer: &Coloring, inner: Vec<Coloring>) -> Result<Self> {
        if inner.len() != outer.k as usize {
            return Err(Error::SizeMismatch(format!(
                "outer coloring has {} colors but {} inner colorings were given",
                outer.k,
                inner.len()
            )));
        }
        let first = inner
            .first()
            .ok_or_else(|| Error::SizeMismatch("no inner colorings".into()))?;
        let (n, k) = (first.n, first.k);
        if inner
            .iter()
            .any(|c| c.n != n || c.k != k || c.q != outer.q)
        {
            return Err(Error::SizeMismatch(
                "inner colorings must share n, q and k".into(),
            ));
        }
        Ok(Self::symbolic(
            outer.n + n,
            outer.q,
            k,
            Node::Outer {
                outer: outer.clone(),
                inner,
            },
        ))
    }

    /// `x -> map[self(x)]`; the caller guarantees `map` is onto `{0..k-1}`.
    pub(crate) fn remap(&self, map: Vec<u32>, k: u32) -> Self {
        Self::symbolic(
            self.n,
            self.q,
            k,
            Node::Merge {
                base: self.clone(),
                map,
            },
        )
    }

    /// Binary syndrome coloring with the given parity-check columns and `k` syndromes.
    pub(crate) fn syndrome(columns: Vec<u64>, k: u32) -> Self {
        Self::symbolic(columns.len(), 2, k, Node::Syndrome { columns })
    }

    pub(crate) fn reed_muller(field: Arc<FieldTable>, s: u32) -> Result<Self> {
        let q = field.order();
        let ranker = TupleRank::new(q, s)?;
        let m = ranker.count();
        let alphas = (0..m).map(|i| ranker.unrank(i)).collect::<Result<Vec<_>>>()?;
        Ok(Self::symbolic(
            m as usize,
            q,
            (m * q as u64) as u32,
            Node::ReedMuller {
                field,
                alphas,
                ranker,
            },
        ))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn vertex_count(&self) -> Option<u64> {
        vertex_count(self.n, self.q)
    }

    pub fn table(&self) -> Option<&ColorTable> {
        match &*self.body {
            Body::Table(t) => Some(t),
            Body::Node(_) => None,
        }
    }

    pub fn node(&self) -> Option<&Node> {
        match &*self.body {
            Body::Table(_) => None,
            Body::Node(n) => Some(n),
        }
    }

    pub fn is_explicit(&self) -> bool {
        self.table().is_some()
    }

    /// Color of the vertex with the given word. The word must have length `n`.
    pub fn eval_word(&self, word: &[u8]) -> u32 {
        debug_assert_eq!(word.len(), self.n);
        match &*self.body {
            Body::Table(t) => t.get(index_unchecked(word, self.q)),
            Body::Node(node) => match node {
                Node::Translation { base, shift } => {
                    let q = self.q;
                    let sub = |(&x, &z): (&u8, &u8)| ((x as u32 + q - z as u32) % q) as u8;
                    if let Some(t) = base.table() {
                        let idx = word
                            .iter()
                            .zip(shift)
                            .rev()
                            .fold(0usize, |acc, p| acc * q as usize + sub(p) as usize);
                        t.get(idx)
                    } else {
                        let w: Vec<u8> = word.iter().zip(shift).map(sub).collect();
                        base.eval_word(&w)
                    }
                }
                Node::Embedded { base, offset } => {
                    base.eval_word(&word[*offset..*offset + base.n])
                }
                Node::Outer { outer, inner } => {
                    let (y, x) = word.split_at(outer.n);
                    inner[outer.eval_word(y) as usize].eval_word(x)
                }
                Node::Merge { base, map } => map[base.eval_word(word) as usize],
                Node::Syndrome { columns } => word
                    .iter()
                    .zip(columns)
                    .filter(|(&x, _)| x != 0)
                    .fold(0u64, |acc, (_, &c)| acc ^ c) as u32,
                Node::ReedMuller {
                    field,
                    alphas,
                    ranker,
                } => {
                    let s = alphas.first().map_or(0, Vec::len);
                    let mut a = 0u8;
                    let mut beta = vec![0u8; s];
                    for (&x, alpha) in word.iter().zip(alphas) {
                        if x == 0 {
                            continue;
                        }
                        a = field.add(a, x);
                        for (b, &al) in beta.iter_mut().zip(alpha) {
                            *b = field.add(*b, field.mul(x, al));
                        }
                    }
                    let rank = ranker.rank(&beta).expect("beta has length s");
                    (rank * self.q as u64 + a as u64) as u32
                }
            },
        }
    }

    /// Color of vertex `v`.
    pub fn evaluate(&self, v: u64) -> Result<u32> {
        Ok(self.eval_word(&digits(v, self.n, self.q)?))
    }

    /// Replace every small symbolic subtree by its table.
    fn compiled(&self) -> Coloring {
        let body = match &*self.body {
            Body::Table(_) => return self.clone(),
            Body::Node(node) => node,
        };
        if let Some(c) = self.vertex_count() {
            if c <= COMPILE_THRESHOLD {
                let values = tabulate(self.n, self.q, c, &|w: &[u8]| self.eval_word(w));
                return Self {
                    n: self.n,
                    q: self.q,
                    k: self.k,
                    body: Arc::new(Body::Table(ColorTable::from_values(values, self.k))),
                };
            }
        }
        let node = match body {
            Node::Translation { base, shift } => Node::Translation {
                base: base.compiled(),
                shift: shift.clone(),
            },
            Node::Embedded { base, offset } => Node::Embedded {
                base: base.compiled(),
                offset: *offset,
            },
            Node::Outer { outer, inner } => {
                // Inner colorings are frequently shared; compile each distinct one once.
                let mut seen: Vec<(*const Body, Coloring)> = Vec::new();
                let inner = inner
                    .iter()
                    .map(|c| inner_compiled(c, &mut seen))
                    .collect();
                Node::Outer {
                    outer: outer.compiled(),
                    inner,
                }
            }
            Node::Merge { base, map } => Node::Merge {
                base: base.compiled(),
                map: map.clone(),
            },
            Node::Syndrome { .. } | Node::ReedMuller { .. } => return self.clone(),
        };
        Self::symbolic(self.n, self.q, self.k, node)
    }

    /// Dense table of this coloring; verifies surjectivity.
    pub fn materialize(&self, guards: &Guards) -> Result<Coloring> {
        let total = guards.check_materialize(self.n, self.q)?;
        if self.is_explicit() {
            return Ok(self.clone());
        }
        let compiled = self.compiled();
        let values = tabulate(self.n, self.q, total, &|w: &[u8]| compiled.eval_word(w));
        Self::from_color_table(self.n, self.q, self.k, ColorTable::from_values(values, self.k))
    }

    /// All colors in vertex order; requires an explicit table or a materializable size.
    pub fn values(&self, guards: &Guards) -> Result<Vec<u32>> {
        let m = self.materialize(guards)?;
        Ok(m.table().expect("materialized").to_vec())
    }

    /// True when both handles share one body.
    pub fn same_body(&self, other: &Coloring) -> bool {
        Arc::ptr_eq(&self.body, &other.body)
    }
}

fn inner_compiled(c: &Coloring, seen: &mut Vec<(*const Body, Coloring)>) -> Coloring {
    let key = Arc::as_ptr(&c.body);
    if let Some((_, done)) = seen.iter().find(|(p, _)| *p == key) {
        return done.clone();
    }
    let done = c.compiled();
    seen.push((key, done.clone()));
    done
}

/// Evaluate `f` at every vertex in index order, in parallel blocks.
fn tabulate(n: usize, q: u32, total: u64, f: &(impl Fn(&[u8]) -> u32 + Sync)) -> Vec<u32> {
    let blocks = total.div_ceil(BLOCK);
    let parts: Vec<Vec<u32>> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let start = b * BLOCK;
            let end = (start + BLOCK).min(total);
            let mut word = vec![0u8; n];
            write_digits(start, q, &mut word);
            let mut out = Vec::with_capacity((end - start) as usize);
            for _ in start..end {
                out.push(f(&word));
                advance(&mut word, q);
            }
            out
        })
        .collect();
    parts.concat()
}

/// A k-by-k matrix of neighbor counts of a perfect coloring of H(n,q).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientMatrix {
    pub n: usize,
    pub q: u32,
    rows: Vec<Vec<u64>>,
}

impl QuotientMatrix {
    /// Builds a square matrix; structural invariants are checked by
    /// [`crate::verify::validate_quotient`], not here.
    pub fn new(n: usize, q: u32, rows: Vec<Vec<u64>>) -> Result<Self> {
        let k = rows.len();
        if k == 0 || rows.iter().any(|r| r.len() != k) {
            return Err(Error::SizeMismatch("quotient matrix must be square".into()));
        }
        Ok(Self { n, q, rows })
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn degree(&self) -> u64 {
        self.n as u64 * (self.q as u64 - 1)
    }

    pub fn row_sums_ok(&self) -> bool {
        let d = self.degree();
        self.rows.iter().all(|r| r.iter().sum::<u64>() == d)
    }

    /// Eigenvalue `n(q-1) - q i` of H(n,q).
    pub fn graph_eigenvalue(n: usize, q: u32, i: usize) -> i64 {
        n as i64 * (q as i64 - 1) - q as i64 * i as i64
    }
}

impl fmt::Display for QuotientMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in r.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
