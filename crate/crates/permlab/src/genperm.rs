//! Constructors for infinite permutations: word-generated, Sturmian,
//! the 2-periodic integer family, and the dyadic morphic stream.

use std::cmp::Ordering;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numerics::ExactReal;
use crate::patterns::{PermutationView, Relation};
use crate::words::InfiniteWord;

/// Default suffix-comparison lookahead for word-generated permutations.
pub const DEFAULT_LOOKAHEAD: usize = 4096;

/// The permutation generated by an infinite word `w`: position `i` carries
/// the q-ary value `.w_i w_{i+1} …`, and `γ(i,j)` is decided by the first
/// index where the two suffixes differ (lexicographic order on suffixes).
///
/// Comparison scans at most `lookahead` symbols; if the suffixes agree
/// that far — as happens for ultimately periodic words at aligned
/// positions, where no permutation is defined at all — it fails loudly
/// instead of guessing.
pub fn word_permutation(w: &InfiniteWord, lookahead: usize) -> PermutationView {
    let w = w.clone();
    PermutationView::new(move |i, j| {
        let prefix = w.prefix(i.max(j) + lookahead);
        for k in 0..lookahead {
            let (a, b) = (prefix[i + k], prefix[j + k]);
            if a != b {
                return Ok(if a < b { Relation::Less } else { Relation::Greater });
            }
        }
        Err(Error::UnresolvedComparison { i, j, lookahead })
    })
}

struct SturmianTable {
    word: InfiniteWord,
    /// counts[i] = (#0s, #1s) among w_0 … w_{i−1}; append-only
    counts: RwLock<Vec<(u64, u64)>>,
}

impl SturmianTable {
    fn counts_at(&self, i: usize) -> (u64, u64) {
        {
            let counts = self.counts.read().unwrap();
            if let Some(&c) = counts.get(i) {
                return c;
            }
        }
        let mut counts = self.counts.write().unwrap();
        if counts.len() <= i {
            let prefix = self.word.prefix(i);
            while counts.len() <= i {
                let k = counts.len() - 1;
                let (z, o) = counts[k];
                counts.push(if prefix[k] == 0 { (z + 1, o) } else { (z, o + 1) });
            }
        }
        counts[i]
    }
}

/// Exact rational-independence test: positive reals `x = p + q√d` and
/// `y = p' + q'√d` satisfy a nontrivial relation `mx + ny = 0` over ℚ iff
/// the coefficient vectors `(p,q)` and `(p',q')` are parallel, i.e. the
/// determinant `pq' − p'q` vanishes. Two rationals are always dependent.
fn rationally_independent(x: &ExactReal, y: &ExactReal) -> Result<bool> {
    let (xp, xq, xd) = x.parts();
    let (yp, yq, yd) = y.parts();
    if let (Some(d1), Some(d2)) = (xd, yd) {
        if d1 != d2 {
            return Err(Error::MixedField(d1, d2));
        }
    }
    Ok(&xp * &yq - &yp * &xq != BigRational::zero())
}

/// The Sturmian permutation α(w,x,y): along the binary word `w` the
/// representative steps up by `x` on symbol 0 and down by `y` on symbol 1,
/// so `a_i = a₀ + z_i·x − o_i·y` with `(z_i, o_i)` the symbol counts in
/// `w_0…w_{i−1}`. Rational independence of `x` and `y` (verified exactly)
/// makes all values distinct, so γ never ties.
pub fn sturmian_permutation(
    w: &InfiniteWord,
    x: ExactReal,
    y: ExactReal,
    a0: ExactReal,
) -> Result<PermutationView> {
    if w.alphabet_size() != 2 {
        return Err(Error::InvalidArgument("Sturmian permutations need a binary word".into()));
    }
    if x.sign() != Ordering::Greater || y.sign() != Ordering::Greater {
        return Err(Error::InvalidArgument("steps x and y must be positive".into()));
    }
    if !rationally_independent(&x, &y)? {
        return Err(Error::RationalDependence);
    }
    // fail at construction, not per-query, if the fields cannot combine
    a0.try_add(&x)?.try_sub(&y)?;

    let table = Arc::new(SturmianTable { word: w.clone(), counts: RwLock::new(vec![(0, 0)]) });

    let value_at = move |table: &SturmianTable,
                         x: &ExactReal,
                         y: &ExactReal,
                         a0: &ExactReal,
                         i: usize|
          -> ExactReal {
        let (z, o) = table.counts_at(i);
        a0.try_add(&x.scale(&BigInt::from(z)))
            .and_then(|v| v.try_sub(&y.scale(&BigInt::from(o))))
            .expect("fields checked at construction")
    };

    let gamma = {
        let table = Arc::clone(&table);
        let (x, y) = (x.clone(), y.clone());
        move |i: usize, j: usize| -> Result<Relation> {
            let (zi, oi) = table.counts_at(i);
            let (zj, oj) = table.counts_at(j);
            let dz = BigInt::from(zi) - BigInt::from(zj);
            let d_ones = BigInt::from(oi) - BigInt::from(oj);
            let diff = x.scale(&dz).try_sub(&y.scale(&d_ones))?;
            match diff.sign() {
                Ordering::Less => Ok(Relation::Less),
                Ordering::Greater => Ok(Relation::Greater),
                Ordering::Equal => unreachable!(
                    "rationally independent steps cannot tie at distinct indices"
                ),
            }
        }
    };
    let representative = move |i: usize| value_at(&table, &x, &y, &a0, i);
    Ok(PermutationView::with_representative(gamma, representative))
}

/// The 2-periodic family α(n), n ≥ 2, with representative
/// `1, 2n, 3, 2n+2, 5, 2n+4, …`: odd integers at even positions, even
/// integers from 2n upward at odd positions.
pub fn periodic_family(n: u64) -> Result<PermutationView> {
    if n < 2 {
        return Err(Error::InvalidArgument("periodic family needs n >= 2".into()));
    }
    let value = move |i: usize| -> i64 {
        let i = i as i64;
        if i % 2 == 0 {
            i + 1
        } else {
            2 * n as i64 + (i - 1)
        }
    };
    Ok(PermutationView::with_representative(
        move |i, j| {
            Ok(if value(i) < value(j) { Relation::Less } else { Relation::Greater })
        },
        move |i| ExactReal::integer(value(i)),
    ))
}

/// First `count` values of the dyadic morphic stream: the fixed point of
/// `x ↦ (x/2, x/2−1)` for positive `x` and `x ↦ (x/2, x/2+1)` otherwise,
/// seeded with the block `(0, 1)`. Its pattern reproduces the Thue–Morse
/// word permutation.
pub fn tm_morphic_representative(count: usize) -> Vec<ExactReal> {
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let one = BigRational::from_integer(BigInt::from(1));
    let mut block: Vec<BigRational> =
        vec![BigRational::zero(), BigRational::from_integer(BigInt::from(1))];
    while block.len() < count {
        block = block
            .iter()
            .flat_map(|x| {
                let h = x * &half;
                if x > &BigRational::zero() {
                    [h.clone(), h - &one]
                } else {
                    [h.clone(), h + &one]
                }
            })
            .collect();
    }
    block.truncate(count);
    block.into_iter().map(ExactReal::from_rational).collect()
}

/// A permutation view over the dyadic morphic stream, with the stream as
/// representative. Equals the Thue–Morse word permutation.
pub fn tm_morphic_view() -> PermutationView {
    let cache: Arc<RwLock<Vec<ExactReal>>> = Arc::new(RwLock::new(Vec::new()));
    let value_at = move |cache: &RwLock<Vec<ExactReal>>, i: usize| -> ExactReal {
        {
            let c = cache.read().unwrap();
            if let Some(v) = c.get(i) {
                return v.clone();
            }
        }
        let mut c = cache.write().unwrap();
        if c.len() <= i {
            *c = tm_morphic_representative((i + 1).next_power_of_two().max(2));
        }
        c[i].clone()
    };
    let gamma_cache = Arc::clone(&cache);
    PermutationView::with_representative(
        move |i, j| {
            let vi = value_at(&gamma_cache, i);
            let vj = value_at(&gamma_cache, j);
            Relation::from_ordering(vi.try_cmp(&vj)?)
                .ok_or(Error::DuplicateValue(i.min(j), i.max(j)))
        },
        move |i| value_at(&cache, i),
    )
}

/// Parses a permutation spec:
/// `wordperm:<wordspec>[;L=<lookahead>]` | `sturmian:w=…,x=…,y=…[,a0=…]` |
/// `periodic:n=…` | `tmmorphic` | `monotone`.
pub fn permutation_from_spec(spec: &str) -> Result<PermutationView> {
    let spec = spec.trim();
    match spec {
        "tmmorphic" => return Ok(tm_morphic_view()),
        "monotone" => return Ok(PermutationView::monotone()),
        _ => {}
    }
    if let Some(args) = spec.strip_prefix("wordperm:") {
        let (word_part, lookahead) = match args.split_once(";L=") {
            Some((w, l)) => (
                w,
                l.parse::<usize>().map_err(|_| Error::Parse(format!("bad lookahead {l:?}")))?,
            ),
            None => (args, DEFAULT_LOOKAHEAD),
        };
        let w = InfiniteWord::from_spec(word_part)?;
        return Ok(word_permutation(&w, lookahead));
    }
    if let Some(args) = spec.strip_prefix("sturmian:") {
        let mut w = InfiniteWord::fibonacci();
        let mut x = ExactReal::integer(1);
        let mut y = ExactReal::sqrt(2)?;
        let mut a0 = ExactReal::zero();
        for part in args.split(',') {
            if part.is_empty() {
                continue;
            }
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {part:?}")))?;
            match k.trim() {
                "w" => w = InfiniteWord::from_spec(v.trim())?,
                "x" => x = v.trim().parse()?,
                "y" => y = v.trim().parse()?,
                "a0" => a0 = v.trim().parse()?,
                other => return Err(Error::Parse(format!("unknown sturmian key {other:?}"))),
            }
        }
        return sturmian_permutation(&w, x, y, a0);
    }
    if let Some(args) = spec.strip_prefix("periodic:") {
        let n = args
            .strip_prefix("n=")
            .and_then(|v| v.parse::<u64>().ok())
            .ok_or_else(|| Error::Parse(format!("expected periodic:n=<int>, got {spec:?}")))?;
        return periodic_family(n);
    }
    Err(Error::Parse(format!(
        "unknown permutation spec {spec:?}; expected wordperm:<word> | \
         sturmian:w=..,x=..,y=..[,a0=..] | periodic:n=.. | tmmorphic | monotone"
    )))
}
