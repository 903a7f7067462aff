//! Fine–Wilf machinery: period classes for words, backtracking
//! enumeration of multi-periodic patterns, and the theorem checkers
//! built on them.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::patterns::{is_t_periodic, Pattern};

/// Default node budget for the backtracking enumerations, overridable via
/// the `PERMLAB_BUDGET` environment variable or per call.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Reads the enumeration budget from `PERMLAB_BUDGET`, falling back to
/// [`DEFAULT_BUDGET`].
pub fn env_budget() -> u64 {
    std::env::var("PERMLAB_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

/// The partition of `{0,…,L−1}` generated by `i ~ i+t` for each period
/// `t`; classes are listed by smallest element, each sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    classes: Vec<Vec<usize>>,
}

impl Partition {
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// True when the classes are exactly the residues modulo `g`.
    pub fn is_residues_mod(&self, g: usize) -> bool {
        let len: usize = self.classes.iter().map(|c| c.len()).sum();
        if self.classes.len() != g.min(len) {
            return false;
        }
        self.classes.iter().all(|class| {
            let r = class[0] % g;
            let expected: Vec<usize> = (0..len).filter(|i| i % g == r).collect();
            *class == expected
        })
    }
}

/// Positions of a length-`L` word forced equal by the given periods
/// (union-find closure of `i ~ i+t`). A word is simultaneously
/// `t`-periodic for all the periods iff it is constant on each class.
pub fn word_period_classes(len: usize, periods: &[usize]) -> Partition {
    let mut parent: Vec<usize> = (0..len).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &t in periods {
        if t == 0 {
            continue;
        }
        for i in 0..len.saturating_sub(t) {
            let a = find(&mut parent, i);
            let b = find(&mut parent, i + t);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut index_of: Vec<Option<usize>> = vec![None; len];
    for i in 0..len {
        let r = find(&mut parent, i);
        match index_of[r] {
            Some(k) => classes[k].push(i),
            None => {
                index_of[r] = Some(classes.len());
                classes.push(vec![i]);
            }
        }
    }
    Partition { classes }
}

/// All patterns of length `len` that are `t`-periodic for every `t` in
/// `periods`, by rank-insertion backtracking with constraint propagation.
/// Results are sorted lexicographically. Exceeding `budget` nodes is an
/// error carrying the number of complete patterns found before the cut.
pub fn enumerate_periodic_patterns(
    len: usize,
    periods: &[usize],
    budget: u64,
) -> Result<Vec<Pattern>> {
    let mut found: Vec<Pattern> = Vec::new();
    let mut nodes = 0u64;
    let mut cur: Vec<u32> = Vec::with_capacity(len);
    if len == 0 {
        return Ok(vec![Pattern::from_ranks(vec![])?]);
    }
    search(len, periods, budget, &mut nodes, &mut cur, &mut found)?;
    found.sort();
    Ok(found)
}

fn search(
    len: usize,
    periods: &[usize],
    budget: u64,
    nodes: &mut u64,
    cur: &mut Vec<u32>,
    found: &mut Vec<Pattern>,
) -> Result<()> {
    let k = cur.len();
    for slot in 1..=(k as u32 + 1) {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::BudgetExceeded { budget, found: found.len() });
        }
        // insert position k at rank `slot`
        for r in cur.iter_mut() {
            if *r >= slot {
                *r += 1;
            }
        }
        cur.push(slot);
        if constraints_hold_at(cur, periods, k) {
            if cur.len() == len {
                found.push(Pattern::from_ranks(cur.clone()).expect("insertion keeps ranks"));
            } else {
                search(len, periods, budget, nodes, cur, found)?;
            }
        }
        cur.pop();
        for r in cur.iter_mut() {
            if *r > slot {
                *r -= 1;
            }
        }
    }
    Ok(())
}

/// Checks the periodicity constraints that became decidable when position
/// `k` was placed: for each period `t`, the pair `(i, k−t)` must relate
/// like `(i+t, k)` for every `i < k−t`.
fn constraints_hold_at(cur: &[u32], periods: &[usize], k: usize) -> bool {
    for &t in periods {
        if t == 0 || t > k {
            continue;
        }
        let j = k - t;
        for i in 0..j {
            if (cur[i] < cur[j]) != (cur[i + t] < cur[k]) {
                return false;
            }
        }
    }
    true
}

/// Outcome of checking the coprime Fine–Wilf statement for permutations
/// at one pair `(p,q)`.
#[derive(Debug, Clone, Serialize)]
pub struct CoprimeReport {
    pub p: usize,
    pub q: usize,
    /// every (p,q)-periodic pattern of this length is monotone
    pub monotone_only_at: usize,
    /// lexicographically least non-monotone (p,q)-periodic pattern one
    /// position shorter, when one exists
    pub witness_below: Option<Pattern>,
}

/// Verifies that every `p`- and `q`-periodic pattern of length `p+q`
/// (coprime `p`, `q`) is monotone, and looks for a non-monotone pattern
/// of length `p+q−1` witnessing that the bound is sharp.
pub fn verify_coprime_theorem(p: usize, q: usize, budget: u64) -> Result<CoprimeReport> {
    if p == 0 || q == 0 || p.gcd(&q) != 1 {
        return Err(Error::InvalidArgument(format!(
            "need coprime positive periods, got ({p},{q})"
        )));
    }
    let bound = p + q;
    let at_bound = enumerate_periodic_patterns(bound, &[p, q], budget)?;
    for pat in &at_bound {
        if !pat.is_monotone() {
            return Err(Error::TheoremViolated(format!(
                "non-monotone {p},{q}-periodic pattern {pat} of length {bound}"
            )));
        }
    }
    if at_bound.len() != 2 {
        return Err(Error::TheoremViolated(format!(
            "expected exactly the 2 monotone patterns at length {bound}, found {}",
            at_bound.len()
        )));
    }
    let below = enumerate_periodic_patterns(bound - 1, &[p, q], budget)?;
    let witness_below = below.into_iter().find(|pat| !pat.is_monotone());
    Ok(CoprimeReport { p, q, monotone_only_at: bound, witness_below })
}

/// Outcome of the general-period factor statement at one `(p,q,n)`.
#[derive(Debug, Clone, Serialize)]
pub struct FactorPeriodReport {
    pub p: usize,
    pub q: usize,
    pub n: usize,
    pub gcd: usize,
    /// factors of length up to this bound were checked gcd-periodic
    pub factor_bound: usize,
    pub patterns_checked: usize,
}

/// Verifies that for every `p`- and `q`-periodic pattern of length `n`,
/// each contiguous factor of length at most `n − p − q + 2·gcd(p,q) + 1`
/// is `gcd(p,q)`-periodic.
pub fn verify_factor_theorem(p: usize, q: usize, n: usize, budget: u64) -> Result<FactorPeriodReport> {
    if p == 0 || q == 0 {
        return Err(Error::InvalidArgument("periods must be positive".into()));
    }
    let g = p.gcd(&q);
    let bound = (n + 2 * g + 1).saturating_sub(p + q).min(n);
    let patterns = enumerate_periodic_patterns(n, &[p, q], budget)?;
    for pat in &patterns {
        for len in 1..=bound {
            for s in 0..=(n - len) {
                let factor = pat.subpattern(s, len);
                if !is_t_periodic(&factor, g) {
                    return Err(Error::TheoremViolated(format!(
                        "factor {factor} of {pat} at {s} is not {g}-periodic"
                    )));
                }
            }
        }
    }
    Ok(FactorPeriodReport { p, q, n, gcd: g, factor_bound: bound, patterns_checked: patterns.len() })
}

/// The lexicographically least pattern of length `n` that is `p`- and
/// `q`-periodic but not `gcd(p,q)`-periodic, or `None` when the
/// enumeration proves there is none.
pub fn find_nongcd_witness(p: usize, q: usize, n: usize, budget: u64) -> Result<Option<Pattern>> {
    if p == 0 || q == 0 {
        return Err(Error::InvalidArgument("periods must be positive".into()));
    }
    let g = p.gcd(&q);
    let patterns = enumerate_periodic_patterns(n, &[p, q], budget)?;
    Ok(patterns.into_iter().find(|pat| !is_t_periodic(pat, g)))
}
