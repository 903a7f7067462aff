//! Pair automata: DFAs that read the aligned base-k digit pairs of two
//! indices `(i,j)`, most significant digit first, and output the order
//! relation between positions `i` and `j` of a permutation.
//!
//! The bundled Thue–Morse automaton has eight states labelled by the
//! current word symbols at the two prefixes and the relation of their
//! suffix values; it is cross-checked against the direct suffix
//! comparator (see the `crosscheck` function and the acceptance suite).

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::patterns::{PermutationView, Relation};

/// Provenance of a transition in a bundled automaton: read off the source
/// drawing, or resolved against the comparator oracle where the drawing
/// is ambiguous.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeNote {
    FigureRead,
    OracleResolved,
}

#[derive(Debug, Clone)]
struct State {
    name: String,
    output: Ordering,
    /// transition per digit pair, indexed `d1 * base + d2`
    next: Vec<Option<usize>>,
    notes: Vec<Option<EdgeNote>>,
}

/// A deterministic pair automaton over digit pairs `(d1,d2)` in base `k`.
#[derive(Debug, Clone)]
pub struct PairAutomaton {
    base: usize,
    states: Vec<State>,
    initial: usize,
}

impl PairAutomaton {
    pub fn base(&self) -> usize {
        self.base
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    /// True when the initial state loops to itself on `(0,0)`, so that
    /// left-padding both inputs with zeros cannot change the outcome.
    pub fn zero_padding_sound(&self) -> bool {
        self.states[self.initial].next[0] == Some(self.initial)
    }

    /// Feeds the padded base-k digits of `i` and `j`, most significant
    /// first, and returns the final state's output.
    pub fn evaluate(&self, i: u64, j: u64) -> Result<Ordering> {
        let di = digits(i, self.base as u64);
        let dj = digits(j, self.base as u64);
        let len = di.len().max(dj.len());
        let mut state = self.initial;
        for k in 0..len {
            let d1 = *di.get(di.len().wrapping_sub(len - k)).unwrap_or(&0);
            let d2 = *dj.get(dj.len().wrapping_sub(len - k)).unwrap_or(&0);
            let slot = d1 as usize * self.base + d2 as usize;
            state = self.states[state].next[slot].ok_or_else(|| {
                Error::MalformedAutomaton(format!(
                    "no transition from {} on ({d1},{d2})",
                    self.states[state].name
                ))
            })?;
        }
        Ok(self.states[state].output)
    }

    /// Serializes to the plain-text table format. Oracle-resolved edges
    /// carry a trailing comment.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "k={}", self.base);
        for (idx, st) in self.states.iter().enumerate() {
            let marker = if idx == self.initial { " initial" } else { "" };
            let _ = writeln!(out, "state {} out {}{}", st.name, ordering_symbol(st.output), marker);
        }
        for st in &self.states {
            for d1 in 0..self.base {
                for d2 in 0..self.base {
                    let slot = d1 * self.base + d2;
                    if let Some(to) = st.next[slot] {
                        let note = match st.notes[slot] {
                            Some(EdgeNote::OracleResolved) => "  # oracle-resolved",
                            Some(EdgeNote::FigureRead) => "  # figure-read",
                            None => "",
                        };
                        let _ = writeln!(
                            out,
                            "edge {} ({d1},{d2}) {}{note}",
                            st.name, self.states[to].name
                        );
                    }
                }
            }
        }
        out
    }

    /// Parses the plain-text table format:
    /// `k=<base>`, then `state <name> out {<|>|=} [initial]` lines, then
    /// `edge <from> (<d1>,<d2>) <to>` lines. `#` starts a comment.
    pub fn from_table(text: &str) -> Result<Self> {
        let mut base: Option<usize> = None;
        let mut states: Vec<State> = Vec::new();
        let mut by_name: HashMap<String, usize> = HashMap::new();
        let mut initial: Option<usize> = None;
        let mut edges: Vec<(String, usize, usize, String)> = Vec::new();

        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(v) = line.strip_prefix("k=") {
                base = Some(
                    v.trim()
                        .parse()
                        .map_err(|_| Error::MalformedAutomaton(format!("bad base {v:?}")))?,
                );
            } else if let Some(rest) = line.strip_prefix("state ") {
                let mut parts = rest.split_whitespace();
                let name = parts
                    .next()
                    .ok_or_else(|| Error::MalformedAutomaton("state without name".into()))?;
                if parts.next() != Some("out") {
                    return Err(Error::MalformedAutomaton(format!(
                        "expected `out` in state line {line:?}"
                    )));
                }
                let out_sym = parts
                    .next()
                    .ok_or_else(|| Error::MalformedAutomaton("state without output".into()))?;
                let output = parse_ordering(out_sym)?;
                let is_initial = parts.next() == Some("initial");
                if by_name.contains_key(name) {
                    return Err(Error::MalformedAutomaton(format!("duplicate state {name}")));
                }
                by_name.insert(name.to_string(), states.len());
                if is_initial {
                    initial = Some(states.len());
                }
                states.push(State {
                    name: name.to_string(),
                    output,
                    next: Vec::new(),
                    notes: Vec::new(),
                });
            } else if let Some(rest) = line.strip_prefix("edge ") {
                let mut parts = rest.split_whitespace();
                let from = parts
                    .next()
                    .ok_or_else(|| Error::MalformedAutomaton("edge without source".into()))?;
                let pair = parts
                    .next()
                    .ok_or_else(|| Error::MalformedAutomaton("edge without digit pair".into()))?;
                let to = parts
                    .next()
                    .ok_or_else(|| Error::MalformedAutomaton("edge without target".into()))?;
                let pair = pair
                    .strip_prefix('(')
                    .and_then(|p| p.strip_suffix(')'))
                    .ok_or_else(|| Error::MalformedAutomaton(format!("bad digit pair {pair:?}")))?;
                let (d1, d2) = pair
                    .split_once(',')
                    .ok_or_else(|| Error::MalformedAutomaton(format!("bad digit pair {pair:?}")))?;
                let d1: usize = d1
                    .parse()
                    .map_err(|_| Error::MalformedAutomaton(format!("bad digit {d1:?}")))?;
                let d2: usize = d2
                    .parse()
                    .map_err(|_| Error::MalformedAutomaton(format!("bad digit {d2:?}")))?;
                edges.push((from.to_string(), d1, d2, to.to_string()));
            } else {
                return Err(Error::MalformedAutomaton(format!("unrecognized line {line:?}")));
            }
        }

        let base = base.ok_or_else(|| Error::MalformedAutomaton("missing k=<base> header".into()))?;
        if base < 2 {
            return Err(Error::MalformedAutomaton("base must be at least 2".into()));
        }
        let initial =
            initial.ok_or_else(|| Error::MalformedAutomaton("no state marked initial".into()))?;
        for st in &mut states {
            st.next = vec![None; base * base];
            st.notes = vec![None; base * base];
        }
        for (from, d1, d2, to) in edges {
            if d1 >= base || d2 >= base {
                return Err(Error::MalformedAutomaton(format!(
                    "digit pair ({d1},{d2}) outside base {base}"
                )));
            }
            let f = *by_name
                .get(&from)
                .ok_or_else(|| Error::MalformedAutomaton(format!("unknown state {from}")))?;
            let t = *by_name
                .get(&to)
                .ok_or_else(|| Error::MalformedAutomaton(format!("unknown state {to}")))?;
            states[f].next[d1 * base + d2] = Some(t);
        }
        Ok(PairAutomaton { base, states, initial })
    }
}

fn digits(mut x: u64, base: u64) -> Vec<u8> {
    if x == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    while x > 0 {
        out.push((x % base) as u8);
        x /= base;
    }
    out.reverse();
    out
}

fn ordering_symbol(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "<",
        Ordering::Equal => "=",
        Ordering::Greater => ">",
    }
}

fn parse_ordering(s: &str) -> Result<Ordering> {
    match s {
        "<" => Ok(Ordering::Less),
        "=" => Ok(Ordering::Equal),
        ">" => Ok(Ordering::Greater),
        other => Err(Error::MalformedAutomaton(format!("bad output symbol {other:?}"))),
    }
}

/// The eight-state automaton deciding the Thue–Morse permutation.
///
/// A state records `(u, v, R)`: the word symbols at the two current
/// prefix values and the relation between the suffix values there; only
/// eight combinations are consistent, since differing symbols force the
/// relation. Reading a digit pair `(b1,b2)` maps a prefix `m` to `2m+b`,
/// whose suffix is the morphism image (bit 0) or its shift (bit 1) of the
/// suffix at `m`; the relation update below follows from how those images
/// interleave. Transitions where the source drawing is unreadable were
/// fixed against the suffix-comparison oracle (`crosscheck` keeps them
/// honest at every build).
pub fn tm_automaton() -> PairAutomaton {
    // states: (u, v, R) with R the relation between suffix values
    const NAMES: [&str; 8] =
        ["0=0", "1=1", "0<1", "1>0", "0>0", "1>1", "0<0", "1<1"];
    const OUTPUTS: [Ordering; 8] = [
        Ordering::Equal,
        Ordering::Equal,
        Ordering::Less,
        Ordering::Greater,
        Ordering::Greater,
        Ordering::Greater,
        Ordering::Less,
        Ordering::Less,
    ];
    // transitions[state] = targets on (0,0), (0,1), (1,0), (1,1);
    // `true` marks an edge resolved against the oracle rather than the
    // drawing
    const EDGES: [[(usize, bool); 4]; 8] = [
        // 0=0
        [(0, false), (2, false), (3, false), (1, false)],
        // 1=1
        [(1, false), (3, false), (2, false), (0, false)],
        // 0<1
        [(2, false), (4, false), (5, false), (3, false)],
        // 1>0
        [(3, false), (7, true), (6, true), (2, false)],
        // 0>0
        [(4, false), (2, false), (3, false), (5, false)],
        // 1>1
        [(5, false), (3, false), (2, false), (4, false)],
        // 0<0
        [(6, false), (2, true), (3, true), (7, false)],
        // 1<1
        [(7, false), (3, true), (2, true), (6, false)],
    ];
    let states = (0..8)
        .map(|s| {
            let mut next = vec![None; 4];
            let mut notes = vec![None; 4];
            for (pair, &(to, oracle)) in EDGES[s].iter().enumerate() {
                // pair index is (d1,d2) with slot d1*2+d2; EDGES rows are
                // ordered (0,0), (0,1), (1,0), (1,1) to match
                next[pair] = Some(to);
                notes[pair] = Some(if oracle {
                    EdgeNote::OracleResolved
                } else {
                    EdgeNote::FigureRead
                });
            }
            State { name: NAMES[s].to_string(), output: OUTPUTS[s], next, notes }
        })
        .collect();
    PairAutomaton { base: 2, states, initial: 0 }
}

/// All pairs `i < j < n` where the automaton disagrees with the
/// permutation's comparator. Empty output certifies agreement at this
/// scale.
pub fn crosscheck(aut: &PairAutomaton, p: &PermutationView, n: usize) -> Result<Vec<(usize, usize)>> {
    let mut mismatches = Vec::new();
    for j in 1..n {
        for i in 0..j {
            let by_aut = aut.evaluate(i as u64, j as u64)?;
            let by_gamma = match p.gamma(i, j)? {
                Relation::Less => Ordering::Less,
                Relation::Greater => Ordering::Greater,
            };
            if by_aut != by_gamma {
                mismatches.push((i, j));
            }
        }
    }
    Ok(mismatches)
}
