//! Finite permutation patterns, the γ relation, factor extraction and
//! t-periodicity.
//!
//! A pattern is a rank vector over `{1,…,n}` (so `2431` is the pattern of
//! any four reals ordered value-wise as position 3 < position 0 <
//! position 2 < position 1). An infinite permutation is presented as a
//! [`PermutationView`]: a pure comparator `γ(i,j)` plus an optional
//! exact representative sequence.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numerics::ExactReal;

/// The order relation between two positions of a permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Less,
    Greater,
}

impl Relation {
    pub fn flip(self) -> Relation {
        match self {
            Relation::Less => Relation::Greater,
            Relation::Greater => Relation::Less,
        }
    }

    pub fn from_ordering(o: Ordering) -> Option<Relation> {
        match o {
            Ordering::Less => Some(Relation::Less),
            Ordering::Greater => Some(Relation::Greater),
            Ordering::Equal => None,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Less => "<",
            Relation::Greater => ">",
        })
    }
}

/// A finite permutation stored as a 1-based rank vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    ranks: Vec<u32>,
}

impl Pattern {
    /// Validates that `ranks` is a bijection onto `{1,…,n}`.
    pub fn from_ranks(ranks: Vec<u32>) -> Result<Self> {
        let n = ranks.len();
        let mut seen = vec![false; n];
        for &r in &ranks {
            if r == 0 || r as usize > n || seen[r as usize - 1] {
                return Err(Error::InvalidArgument(format!(
                    "rank vector {ranks:?} is not a permutation of 1..={n}"
                )));
            }
            seen[r as usize - 1] = true;
        }
        Ok(Pattern { ranks })
    }

    /// The pattern of any sequence of pairwise-distinct comparable values:
    /// `rank[i] = 1 + #{j : v[j] < v[i]}`.
    pub fn of_values<T: Ord>(values: &[T]) -> Result<Self> {
        let mut ranks = vec![0u32; values.len()];
        for i in 0..values.len() {
            let mut r = 1u32;
            for j in 0..values.len() {
                match values[j].cmp(&values[i]) {
                    Ordering::Less => r += 1,
                    Ordering::Equal if i != j => {
                        return Err(Error::DuplicateValue(j.min(i), j.max(i)))
                    }
                    _ => {}
                }
            }
            ranks[i] = r;
        }
        Ok(Pattern { ranks })
    }

    pub fn identity(n: usize) -> Self {
        Pattern { ranks: (1..=n as u32).collect() }
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }

    /// Relation between positions `i` and `j` (`i ≠ j`).
    pub fn relation(&self, i: usize, j: usize) -> Relation {
        if self.ranks[i] < self.ranks[j] {
            Relation::Less
        } else {
            Relation::Greater
        }
    }

    pub fn is_monotone(&self) -> bool {
        let n = self.len();
        n <= 1
            || self.ranks.windows(2).all(|w| w[0] < w[1])
            || self.ranks.windows(2).all(|w| w[0] > w[1])
    }

    /// The contiguous factor on positions `start..start+len`, renormalized
    /// to ranks `1..=len`.
    pub fn subpattern(&self, start: usize, len: usize) -> Pattern {
        let slice = &self.ranks[start..start + len];
        Pattern::of_values(slice).expect("ranks are distinct")
    }

    /// All `n!` patterns of length `n`, in lexicographic order.
    pub fn all(n: usize) -> Vec<Pattern> {
        let mut out = Vec::new();
        let mut cur: Vec<u32> = (1..=n as u32).collect();
        loop {
            out.push(Pattern { ranks: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        if n == 0 {
            out.truncate(1);
        }
        out
    }
}

/// `γ_ij = γ_{i+t,j+t}` for every pair fully inside the pattern; no
/// wraparound. Vacuously true once `t` reaches the length.
pub fn is_t_periodic(pat: &Pattern, t: usize) -> bool {
    assert!(t >= 1, "period must be positive");
    let n = pat.len();
    for j in 1..n {
        if j + t >= n {
            break;
        }
        for i in 0..j {
            if pat.relation(i, j) != pat.relation(i + t, j + t) {
                return false;
            }
        }
    }
    true
}

impl fmt::Display for Pattern {
    /// One-line form `2431` for n ≤ 9, comma form `2,4,3,1` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for r in &self.ranks {
                write!(f, "{r}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.ranks.iter().map(|r| r.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let ranks: Vec<u32> = if s.contains(',') {
            s.split(',')
                .map(|p| p.trim().parse().map_err(|_| Error::Parse(format!("bad rank {p:?}"))))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .filter(|&d| d > 0)
                        .ok_or_else(|| Error::Parse(format!("bad rank digit {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        Pattern::from_ranks(ranks)
    }
}

impl Serialize for Pattern {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.ranks.len()))?;
        for r in &self.ranks {
            seq.serialize_element(r)?;
        }
        seq.end()
    }
}

/// The pattern of a sequence of pairwise-distinct exact reals.
pub fn pattern_of(values: &[ExactReal]) -> Result<Pattern> {
    let n = values.len();
    let mut ranks = vec![0u32; n];
    for i in 0..n {
        let mut r = 1u32;
        for j in 0..n {
            if i == j {
                continue;
            }
            match values[j].try_cmp(&values[i])? {
                Ordering::Less => r += 1,
                Ordering::Equal => return Err(Error::DuplicateValue(j.min(i), j.max(i))),
                Ordering::Greater => {}
            }
        }
        ranks[i] = r;
    }
    Ok(Pattern { ranks })
}

/// A window of sampling offsets `0 = t_0 < t_1 < … < t_{n−1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Window {
    offsets: Vec<usize>,
}

impl Window {
    pub fn new(offsets: Vec<usize>) -> Result<Self> {
        if offsets.first() != Some(&0) {
            return Err(Error::InvalidArgument("window must start at offset 0".into()));
        }
        if !offsets.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument("window offsets must strictly increase".into()));
        }
        Ok(Window { offsets })
    }

    /// The contiguous window `{0,1,…,n−1}`.
    pub fn contiguous(n: usize) -> Self {
        Window { offsets: (0..n).collect() }
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    /// The largest offset.
    pub fn spread(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }
}

type GammaFn = dyn Fn(usize, usize) -> Result<Relation> + Send + Sync;
type ReprFn = dyn Fn(usize) -> ExactReal + Send + Sync;

/// An infinite permutation: a comparator `γ(i,j)` over ℕ, with an optional
/// exact representative sequence. Cloning shares the underlying closures.
#[derive(Clone)]
pub struct PermutationView {
    gamma: Arc<GammaFn>,
    representative: Option<Arc<ReprFn>>,
}

impl fmt::Debug for PermutationView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermutationView")
            .field("has_representative", &self.representative.is_some())
            .finish()
    }
}

impl PermutationView {
    pub fn new<G>(gamma: G) -> Self
    where
        G: Fn(usize, usize) -> Result<Relation> + Send + Sync + 'static,
    {
        PermutationView { gamma: Arc::new(gamma), representative: None }
    }

    pub fn with_representative<G, R>(gamma: G, representative: R) -> Self
    where
        G: Fn(usize, usize) -> Result<Relation> + Send + Sync + 'static,
        R: Fn(usize) -> ExactReal + Send + Sync + 'static,
    {
        PermutationView {
            gamma: Arc::new(gamma),
            representative: Some(Arc::new(representative)),
        }
    }

    /// The identity order on ℕ.
    pub fn monotone() -> Self {
        Self::with_representative(
            |i, j| Ok(if i < j { Relation::Less } else { Relation::Greater }),
            |i| ExactReal::integer(i as i64),
        )
    }

    /// The relation between positions `i ≠ j`.
    pub fn gamma(&self, i: usize, j: usize) -> Result<Relation> {
        if i == j {
            return Err(Error::InvalidPair(i));
        }
        (self.gamma)(i, j)
    }

    /// The representative value `a_i`, when one is attached.
    pub fn representative(&self, i: usize) -> Option<ExactReal> {
        self.representative.as_ref().map(|r| r(i))
    }

    pub fn has_representative(&self) -> bool {
        self.representative.is_some()
    }

    /// The factor of length `len ≥ 1` starting at `start`: the pattern
    /// induced by γ on positions `start, …, start+len−1`.
    pub fn factor(&self, start: usize, len: usize) -> Result<Pattern> {
        if len == 0 {
            return Err(Error::InvalidArgument("factor length must be at least 1".into()));
        }
        let mut ranks = vec![1u32; len];
        for j in 1..len {
            for i in 0..j {
                match self.gamma(start + i, start + j)? {
                    Relation::Less => ranks[j] += 1,
                    Relation::Greater => ranks[i] += 1,
                }
            }
        }
        Ok(Pattern { ranks })
    }

    /// Ranks of positions `0..count` within that prefix: `ranks[i]` is the
    /// rank (0-based) of `α_i` among the first `count` values. This is the
    /// workhorse behind the complexity scans; it sorts once and lets every
    /// later pattern extraction run on plain integers.
    pub fn rank_prefix(&self, count: usize) -> Result<Vec<u32>> {
        let mut idx: Vec<u32> = (0..count as u32).collect();
        try_merge_sort(&mut idx, &mut |i, j| {
            self.gamma(i as usize, j as usize).map(|r| match r {
                Relation::Less => Ordering::Less,
                Relation::Greater => Ordering::Greater,
            })
        })?;
        let mut ranks = vec![0u32; count];
        for (rank, &i) in idx.iter().enumerate() {
            ranks[i as usize] = rank as u32;
        }
        Ok(ranks)
    }
}

/// Bottom-up merge sort with a fallible comparator; a comparison error
/// aborts the sort and propagates. The standard sort cannot be used here
/// because feeding it a comparator that has started failing violates its
/// total-order contract.
fn try_merge_sort(
    v: &mut [u32],
    cmp: &mut dyn FnMut(u32, u32) -> Result<Ordering>,
) -> Result<()> {
    let n = v.len();
    if n < 2 {
        return Ok(());
    }
    let mut buf = v.to_vec();
    let mut width = 1;
    while width < n {
        let mut lo = 0;
        while lo < n {
            let mid = (lo + width).min(n);
            let hi = (lo + 2 * width).min(n);
            let (mut a, mut b, mut k) = (lo, mid, lo);
            while a < mid && b < hi {
                if cmp(v[a], v[b])? != Ordering::Greater {
                    buf[k] = v[a];
                    a += 1;
                } else {
                    buf[k] = v[b];
                    b += 1;
                }
                k += 1;
            }
            buf[k..k + (mid - a)].copy_from_slice(&v[a..mid]);
            let k = k + (mid - a);
            buf[k..k + (hi - b)].copy_from_slice(&v[b..hi]);
            lo = hi;
        }
        v.copy_from_slice(&buf);
        width *= 2;
    }
    Ok(())
}
