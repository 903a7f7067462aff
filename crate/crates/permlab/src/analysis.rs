//! Complexity functions over a scanned prefix, periodicity detection, and
//! square patterns.
//!
//! Every reported value is a lower bound for the corresponding supremum
//! over the infinite object, exact once the scan saturates; reports carry
//! their scan parameters so a value is never quoted without them. All
//! scans stay within the prefix `0..M`.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::patterns::{Pattern, PermutationView, Window};
use crate::words::InfiniteWord;

/// A complexity value together with the scan that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexityReport {
    /// pattern length n
    pub n: usize,
    /// number of distinct patterns seen
    pub value: usize,
    /// prefix length scanned
    pub scan_bound: usize,
    /// window statistics, present for pattern-complexity scans
    pub windows: Option<WindowScan>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindowScan {
    /// number of complete windows examined
    pub tried: u64,
    /// largest offset allowed
    pub max_spread: usize,
}

fn check_scan(n: usize, m: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("pattern length must be at least 1".into()));
    }
    if m < n {
        return Err(Error::InvalidArgument(format!(
            "scan bound {m} is smaller than the pattern length {n}"
        )));
    }
    Ok(())
}

/// The distinct factors of length `n` among `factor(p, s, n)` for
/// `0 ≤ s ≤ M−n`, sorted.
pub fn distinct_factors(p: &PermutationView, n: usize, m: usize) -> Result<Vec<Pattern>> {
    check_scan(n, m)?;
    let ranks = p.rank_prefix(m)?;
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    for s in 0..=(m - n) {
        seen.insert(local_ranks(&ranks[s..s + n]));
    }
    let mut out: Vec<Pattern> = seen
        .into_iter()
        .map(|r| Pattern::from_ranks(r).expect("local ranks form a pattern"))
        .collect();
    out.sort();
    Ok(out)
}

/// `p_α(n)` over the scanned prefix: the number of distinct factors of
/// length `n` with start positions `0 ≤ s ≤ M−n`.
pub fn factor_complexity(p: &PermutationView, n: usize, m: usize) -> Result<ComplexityReport> {
    let value = distinct_factors(p, n, m)?.len();
    Ok(ComplexityReport { n, value, scan_bound: m, windows: None })
}

/// `p_w(n)` over the scanned prefix: distinct length-`n` blocks of `w`.
pub fn word_factor_complexity(w: &InfiniteWord, n: usize, m: usize) -> Result<ComplexityReport> {
    check_scan(n, m)?;
    let prefix = w.prefix(m);
    let mut seen: HashSet<&[u8]> = HashSet::new();
    for s in 0..=(m - n) {
        seen.insert(&prefix[s..s + n]);
    }
    Ok(ComplexityReport { n, value: seen.len(), scan_bound: m, windows: None })
}

/// 1-based local ranks of a slice of distinct keys.
fn local_ranks(keys: &[u32]) -> Vec<u32> {
    let n = keys.len();
    let mut ranks = vec![1u32; n];
    for j in 1..n {
        for i in 0..j {
            if keys[i] < keys[j] {
                ranks[j] += 1;
            } else {
                ranks[i] += 1;
            }
        }
    }
    ranks
}

/// S-complexity: the number of distinct patterns `α_{m+S}` for
/// `0 ≤ m < M − spread(S)`, i.e. windows kept inside the prefix.
pub fn s_complexity(p: &PermutationView, s: &Window, m: usize) -> Result<ComplexityReport> {
    if s.spread() >= m {
        return Err(Error::InvalidArgument(format!(
            "window spread {} does not fit the scan bound {m}",
            s.spread()
        )));
    }
    let ranks = p.rank_prefix(m)?;
    let value = scan_one_window(&ranks, s.offsets());
    Ok(ComplexityReport {
        n: s.len(),
        value,
        scan_bound: m,
        windows: Some(WindowScan { tried: 1, max_spread: s.spread() }),
    })
}

/// S-complexity of a word: distinct symbol tuples through the window.
pub fn word_s_complexity(w: &InfiniteWord, s: &Window, m: usize) -> Result<ComplexityReport> {
    if s.spread() >= m {
        return Err(Error::InvalidArgument(format!(
            "window spread {} does not fit the scan bound {m}",
            s.spread()
        )));
    }
    let prefix = w.prefix(m);
    let spread = s.spread();
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    for base in 0..m - spread {
        seen.insert(s.offsets().iter().map(|&t| prefix[base + t]).collect());
    }
    Ok(ComplexityReport {
        n: s.len(),
        value: seen.len(),
        scan_bound: m,
        windows: Some(WindowScan { tried: 1, max_spread: spread }),
    })
}

fn scan_one_window(keys: &[u32], offsets: &[usize]) -> usize {
    let spread = *offsets.last().unwrap();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    for base in 0..keys.len() - spread {
        let sample: Vec<u32> = offsets.iter().map(|&t| keys[base + t]).collect();
        seen.insert(local_ranks(&sample));
    }
    seen.len()
}

/// Incremental window scan shared by the two maximal-pattern-complexity
/// functions. Positions are refined offset by offset: two positions share
/// a class while their samples are order-isomorphic (permutation mode) or
/// symbol-identical (word mode), so sibling windows reuse the work of
/// their common prefix.
struct WindowDfs<'a> {
    data: &'a [u32],
    n: usize,
    t_max: usize,
    word_mode: bool,
    alphabet: usize,
}

impl WindowDfs<'_> {
    /// Returns (max classes over complete windows, number of windows).
    fn run(&self) -> (usize, u64) {
        let mut root = vec![0u32; self.data.len()];
        let count0 = {
            let seed = vec![0u32; self.data.len()];
            self.refine_into(&[], &seed, 1, 0, &mut root)
        };
        if self.n == 1 {
            return (count0, 1);
        }
        let first_cap = self.t_max - (self.n - 2);
        let results: Vec<(usize, u64)> = (1..=first_cap)
            .into_par_iter()
            .map(|t1| {
                // per-branch workspace: one class buffer per depth
                let mut bufs: Vec<Vec<u32>> =
                    (0..self.n - 1).map(|_| vec![0u32; self.data.len()]).collect();
                let k1 = self.refine_into(&[0], &root, count0, t1, &mut bufs[0]);
                let mut best = 0usize;
                let mut windows = 0u64;
                self.dfs(&mut vec![0, t1], k1, &mut bufs, 0, &mut best, &mut windows);
                (best, windows)
            })
            .collect();
        let mut best = 0;
        let mut windows = 0;
        for (b, w) in results {
            best = best.max(b);
            windows += w;
        }
        (best, windows)
    }

    fn dfs(
        &self,
        offsets: &mut Vec<usize>,
        num_classes: usize,
        bufs: &mut [Vec<u32>],
        depth: usize,
        best: &mut usize,
        windows: &mut u64,
    ) {
        if offsets.len() == self.n {
            *best = (*best).max(num_classes);
            *windows += 1;
            return;
        }
        let remaining = self.n - offsets.len();
        let cap = self.t_max - (remaining - 1);
        let lo = offsets.last().unwrap() + 1;
        for t in lo..=cap {
            let (head, tail) = bufs.split_at_mut(depth + 1);
            let count = self.refine_into(offsets, &head[depth], num_classes, t, &mut tail[0]);
            offsets.push(t);
            self.dfs(offsets, count, bufs, depth + 1, best, windows);
            offsets.pop();
        }
    }

    /// Refines the class assignment by the new offset `t`; writes ids into
    /// `out[..data.len()-t]` and returns the class count.
    fn refine_into(
        &self,
        offsets: &[usize],
        classes: &[u32],
        num_classes: usize,
        t: usize,
        out: &mut [u32],
    ) -> usize {
        let new_len = self.data.len() - t;
        let key_space = if self.word_mode { self.alphabet } else { offsets.len() + 1 };
        let mut table = vec![u32::MAX; num_classes * key_space];
        let mut next = 0u32;
        for base in 0..new_len {
            let key = if self.word_mode {
                self.data[base + t] as usize
            } else {
                let v = self.data[base + t];
                offsets.iter().filter(|&&o| self.data[base + o] < v).count()
            };
            let slot = classes[base] as usize * key_space + key;
            let id = table[slot];
            let id = if id == u32::MAX {
                table[slot] = next;
                next += 1;
                next - 1
            } else {
                id
            };
            out[base] = id;
        }
        next as usize
    }
}

fn check_window_scan(n: usize, t_max: usize, m: usize) -> Result<()> {
    check_scan(n, m)?;
    if n > 1 && t_max < n - 1 {
        return Err(Error::InvalidArgument(format!(
            "max spread {t_max} cannot hold {n} offsets"
        )));
    }
    if t_max >= m {
        return Err(Error::InvalidArgument(format!(
            "max spread {t_max} does not fit the scan bound {m}"
        )));
    }
    Ok(())
}

/// `p*_α(n)` over the scanned prefix: the maximum of S-complexities over
/// all windows of `n` offsets with spread at most `t_max`. A lower bound
/// for the true supremum; windows are enumerated exhaustively.
pub fn max_pattern_complexity(
    p: &PermutationView,
    n: usize,
    t_max: usize,
    m: usize,
) -> Result<ComplexityReport> {
    check_window_scan(n, t_max, m)?;
    let ranks = p.rank_prefix(m)?;
    let dfs = WindowDfs { data: &ranks, n, t_max, word_mode: false, alphabet: 0 };
    let (value, tried) = dfs.run();
    Ok(ComplexityReport {
        n,
        value,
        scan_bound: m,
        windows: Some(WindowScan { tried, max_spread: t_max }),
    })
}

/// `p*_w(n)`: the word analogue of [`max_pattern_complexity`], counting
/// symbol tuples through each window.
pub fn word_max_pattern_complexity(
    w: &InfiniteWord,
    n: usize,
    t_max: usize,
    m: usize,
) -> Result<ComplexityReport> {
    check_window_scan(n, t_max, m)?;
    let prefix = w.prefix(m);
    let data: Vec<u32> = prefix.iter().map(|&x| x as u32).collect();
    drop(prefix);
    let dfs = WindowDfs { data: &data, n, t_max, word_mode: true, alphabet: w.alphabet_size() };
    let (value, tried) = dfs.run();
    Ok(ComplexityReport {
        n,
        value,
        scan_bound: m,
        windows: Some(WindowScan { tried, max_spread: t_max }),
    })
}

/// Saturation heuristic: a value is marked saturated when it is unchanged
/// under doubling the prefix bound, and separately under doubling the
/// spread bound for window scans. `rerun(m, t)` recomputes the report at
/// those parameters (`t` is ignored for plain factor scans).
pub fn is_saturated<F>(base: &ComplexityReport, mut rerun: F) -> Result<bool>
where
    F: FnMut(usize, usize) -> Result<ComplexityReport>,
{
    let t = base.windows.as_ref().map_or(0, |w| w.max_spread);
    let m2 = rerun(base.scan_bound * 2, t)?;
    if m2.value != base.value {
        return Ok(false);
    }
    if let Some(w) = &base.windows {
        let t2 = rerun(base.scan_bound, w.max_spread * 2)?;
        if t2.value != base.value {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The least `t ≤ t_max` such that `γ_ij = γ_{i+t,j+t}` for every pair
/// inside the scanned prefix, or `None` when every candidate period is
/// refuted by some pair.
pub fn detect_period(p: &PermutationView, m: usize, t_max: usize) -> Result<Option<usize>> {
    if t_max == 0 || t_max > m / 2 {
        return Err(Error::InvalidArgument(format!(
            "period search bound {t_max} must lie in 1..={}",
            m / 2
        )));
    }
    let ranks = p.rank_prefix(m)?;
    'next_t: for t in 1..=t_max {
        for j in 1..m {
            if j + t >= m {
                break;
            }
            for i in 0..j {
                if (ranks[i] < ranks[j]) != (ranks[i + t] < ranks[j + t]) {
                    continue 'next_t;
                }
            }
        }
        return Ok(Some(t));
    }
    Ok(None)
}

/// A square is an even-length pattern, length at least 4, whose halves
/// are order-isomorphic.
pub fn is_square(pat: &Pattern) -> bool {
    is_square_slice(pat.ranks())
}

fn is_square_slice(ranks: &[u32]) -> bool {
    let n = ranks.len();
    if n < 4 || !n.is_multiple_of(2) {
        return false;
    }
    let h = n / 2;
    local_ranks(&ranks[..h]) == local_ranks(&ranks[h..])
}

/// No contiguous factor of even length ≥ 4 is a square.
pub fn is_square_free(pat: &Pattern) -> bool {
    is_square_free_slice(pat.ranks())
}

fn is_square_free_slice(ranks: &[u32]) -> bool {
    let n = ranks.len();
    let mut len = 4;
    while len <= n {
        for s in 0..=(n - len) {
            if is_square_slice(&ranks[s..s + len]) {
                return false;
            }
        }
        len += 2;
    }
    true
}

/// Enumeration budget for the exhaustive square-free count.
pub const SQUARE_FREE_MAX_N: usize = 9;

/// Counts square-free patterns of length `n ≤ 9` by exhaustive
/// enumeration of `S_n`.
pub fn count_square_free(n: usize) -> Result<u64> {
    if n == 0 || n > SQUARE_FREE_MAX_N {
        return Err(Error::BudgetExceeded { budget: SQUARE_FREE_MAX_N as u64, found: 0 });
    }
    let mut count = 0u64;
    for_each_rank_vector(n, |ranks| {
        if is_square_free_slice(ranks) {
            count += 1;
        }
    });
    Ok(count)
}

/// Visits every rank vector of length `n` in lexicographic order.
pub fn for_each_rank_vector<F: FnMut(&[u32])>(n: usize, mut f: F) {
    let mut cur: Vec<u32> = (1..=n as u32).collect();
    loop {
        f(&cur);
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
}
