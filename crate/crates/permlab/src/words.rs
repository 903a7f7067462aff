//! Lazy exact generators of infinite words over `{0,…,q−1}`.
//!
//! A word is a pure index→symbol rule behind an append-only prefix memo.
//! Readers only ever observe settled symbols; one writer extends the
//! prefix under the lock while others wait.

use std::ops::Deref;
use std::sync::{Arc, RwLock, RwLockReadGuard};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::numerics::ExactReal;

pub type Symbol = u8;

/// A substitution `symbol → non-empty word`, prolongable at a seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    images: Vec<Vec<Symbol>>,
}

impl Morphism {
    /// `images[s]` is the image of symbol `s`; the alphabet size is the
    /// number of images.
    pub fn new(images: Vec<Vec<Symbol>>) -> Result<Self> {
        let q = images.len();
        if q == 0 {
            return Err(Error::NonProlongable("empty morphism".into()));
        }
        for (s, img) in images.iter().enumerate() {
            if img.is_empty() {
                return Err(Error::NonProlongable(format!("image of {s} is empty")));
            }
            if let Some(&bad) = img.iter().find(|&&x| x as usize >= q) {
                return Err(Error::NonProlongable(format!(
                    "image of {s} uses symbol {bad} outside the {q}-letter alphabet"
                )));
            }
        }
        Ok(Morphism { images })
    }

    pub fn alphabet_size(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, s: Symbol) -> &[Symbol] {
        &self.images[s as usize]
    }

    pub fn apply(&self, w: &[Symbol]) -> Vec<Symbol> {
        w.iter().flat_map(|&s| self.image(s).iter().copied()).collect()
    }

    fn check_prolongable(&self, seed: Symbol) -> Result<()> {
        let img = self
            .images
            .get(seed as usize)
            .ok_or_else(|| Error::NonProlongable(format!("seed {seed} outside alphabet")))?;
        if img.len() < 2 || img[0] != seed {
            return Err(Error::NonProlongable(format!(
                "image of seed {seed} must start with {seed} and have length >= 2"
            )));
        }
        Ok(())
    }
}

trait Generator: Send + Sync {
    /// Appends symbols until `symbols.len() >= target`.
    fn extend_to(&mut self, symbols: &mut Vec<Symbol>, target: usize);
}

struct State {
    symbols: Vec<Symbol>,
    gen: Box<dyn Generator>,
}

/// A lazily evaluated, memoized infinite word. Cloning shares the memo.
#[derive(Clone)]
pub struct InfiniteWord {
    alphabet_size: usize,
    state: Arc<RwLock<State>>,
}

impl std::fmt::Debug for InfiniteWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let settled = self.state.read().unwrap().symbols.len();
        f.debug_struct("InfiniteWord")
            .field("alphabet_size", &self.alphabet_size)
            .field("settled_prefix", &settled)
            .finish()
    }
}

/// Read guard over a settled prefix of a word.
pub struct Prefix<'a> {
    guard: RwLockReadGuard<'a, State>,
    len: usize,
}

impl Deref for Prefix<'_> {
    type Target = [Symbol];
    fn deref(&self) -> &[Symbol] {
        &self.guard.symbols[..self.len]
    }
}

impl InfiniteWord {
    fn with_generator(alphabet_size: usize, gen: Box<dyn Generator>) -> Self {
        InfiniteWord {
            alphabet_size,
            state: Arc::new(RwLock::new(State { symbols: Vec::new(), gen })),
        }
    }

    /// The fixed point of `m` starting at `seed`; `m` must be prolongable
    /// there.
    pub fn morphic(m: Morphism, seed: Symbol) -> Result<Self> {
        m.check_prolongable(seed)?;
        let q = m.alphabet_size();
        Ok(Self::with_generator(q, Box::new(MorphicGen { m, seed, read_pos: 0 })))
    }

    /// The mechanical word `s(n) = ⌊(n+1)α+ρ⌋ − ⌊nα+ρ⌋` over `{0,1}`,
    /// computed with exact floors. Irrational `α` gives a Sturmian word;
    /// rational `α` is allowed and gives a periodic word.
    pub fn mechanical(alpha: ExactReal, rho: ExactReal) -> Result<Self> {
        if alpha.sign() != std::cmp::Ordering::Greater
            || alpha.try_cmp(&ExactReal::integer(1))? != std::cmp::Ordering::Less
        {
            return Err(Error::InvalidArgument("mechanical slope must lie in (0,1)".into()));
        }
        // fail now, not mid-stream, if the fields cannot combine
        let acc = rho.try_add(&alpha)?;
        let floor = rho.floor();
        Ok(Self::with_generator(
            2,
            Box::new(MechanicalGen { alpha, acc, prev_floor: floor }),
        ))
    }

    /// A word given by a pure index→symbol rule.
    pub fn from_fn<F>(alphabet_size: usize, f: F) -> Self
    where
        F: Fn(usize) -> Symbol + Send + Sync + 'static,
    {
        Self::with_generator(alphabet_size, Box::new(FnGen { f: Box::new(f) }))
    }

    /// `u v v v …`: an ultimately periodic word with preperiod `u` and
    /// period block `v`.
    pub fn ultimately_periodic(pre: Vec<Symbol>, per: Vec<Symbol>) -> Result<Self> {
        if per.is_empty() {
            return Err(Error::InvalidArgument("empty period block".into()));
        }
        let q = pre
            .iter()
            .chain(per.iter())
            .map(|&s| s as usize + 1)
            .max()
            .unwrap()
            .max(2);
        Ok(Self::from_fn(q, move |i| {
            if i < pre.len() {
                pre[i]
            } else {
                per[(i - pre.len()) % per.len()]
            }
        }))
    }

    /// The Thue–Morse word 01101001…, fixed point of 0→01, 1→10.
    pub fn thue_morse() -> Self {
        Self::morphic(Morphism::new(vec![vec![0, 1], vec![1, 0]]).unwrap(), 0).unwrap()
    }

    /// The Fibonacci word 01001010…, fixed point of 0→01, 1→0.
    pub fn fibonacci() -> Self {
        Self::morphic(Morphism::new(vec![vec![0, 1], vec![0]]).unwrap(), 0).unwrap()
    }

    /// The period-doubling word 01000101…, fixed point of 0→01, 1→00.
    pub fn period_doubling() -> Self {
        Self::morphic(Morphism::new(vec![vec![0, 1], vec![0, 0]]).unwrap(), 0).unwrap()
    }

    /// A deterministic pseudo-random binary word (splitmix64 of the index).
    pub fn random_binary(seed: u64) -> Self {
        Self::from_fn(2, move |i| (splitmix64(seed ^ (i as u64).wrapping_mul(0x9e3779b97f4a7c15)) & 1) as Symbol)
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn symbol_at(&self, i: usize) -> Symbol {
        self.prefix(i + 1)[i]
    }

    /// Settles at least `len` symbols and returns a read guard over them.
    ///
    /// Do not hold the guard across calls that may extend the same word
    /// (another `prefix`, `symbol_at`, or a comparator built on it): the
    /// extension needs the write side of the lock.
    pub fn prefix(&self, len: usize) -> Prefix<'_> {
        {
            let guard = self.state.read().unwrap();
            if guard.symbols.len() >= len {
                return Prefix { guard, len };
            }
        }
        {
            let mut guard = self.state.write().unwrap();
            if guard.symbols.len() < len {
                let State { symbols, gen } = &mut *guard;
                gen.extend_to(symbols, len);
                debug_assert!(symbols.len() >= len);
                debug_assert!(symbols[..len].iter().all(|&s| (s as usize) < self.alphabet_size));
            }
        }
        let guard = self.state.read().unwrap();
        Prefix { guard, len }
    }

    /// Parses a word spec:
    /// `tm` | `pd` | `fib` | `mech:alpha=…,rho=…` |
    /// `morphic:0→01,1→10;seed=0` | `ultper:u=…,v=…` | `random:seed=…`.
    pub fn from_spec(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        match spec {
            "tm" => return Ok(Self::thue_morse()),
            "pd" => return Ok(Self::period_doubling()),
            "fib" => return Ok(Self::fibonacci()),
            _ => {}
        }
        if let Some(args) = spec.strip_prefix("mech:") {
            let kv = parse_kv(args)?;
            let alpha = kv_get(&kv, "alpha")?.parse()?;
            let rho = match kv.iter().find(|(k, _)| k == "rho") {
                Some((_, v)) => v.parse()?,
                None => ExactReal::zero(),
            };
            return Self::mechanical(alpha, rho);
        }
        if let Some(args) = spec.strip_prefix("morphic:") {
            return parse_morphic_spec(args);
        }
        if let Some(args) = spec.strip_prefix("ultper:") {
            let kv = parse_kv(args)?;
            let pre = parse_digits(kv_get(&kv, "u").unwrap_or_default())?;
            let per = parse_digits(kv_get(&kv, "v")?)?;
            return Self::ultimately_periodic(pre, per);
        }
        if let Some(args) = spec.strip_prefix("random:") {
            let kv = parse_kv(args)?;
            let seed: u64 = kv_get(&kv, "seed")?
                .parse()
                .map_err(|_| Error::Parse("bad seed".into()))?;
            return Ok(Self::random_binary(seed));
        }
        Err(Error::Parse(format!(
            "unknown word spec {spec:?}; expected tm | pd | fib | mech:alpha=..,rho=.. | \
             morphic:0→01,1→10;seed=0 | ultper:u=..,v=.. | random:seed=.."
        )))
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

fn parse_kv(args: &str) -> Result<Vec<(String, String)>> {
    args.split(',')
        .filter(|p| !p.is_empty())
        .map(|pair| {
            pair.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {pair:?}")))
        })
        .collect()
}

fn kv_get<'a>(kv: &'a [(String, String)], key: &str) -> Result<&'a str> {
    kv.iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
        .ok_or_else(|| Error::Parse(format!("missing {key}=…")))
}

fn parse_digits(s: &str) -> Result<Vec<Symbol>> {
    s.chars()
        .map(|c| {
            c.to_digit(10)
                .map(|d| d as Symbol)
                .ok_or_else(|| Error::Parse(format!("bad symbol {c:?} in word block")))
        })
        .collect()
}

fn parse_morphic_spec(args: &str) -> Result<InfiniteWord> {
    // "0→01,1→10;seed=0", arrows also accepted as "->"
    let (rules, seed_part) = args
        .split_once(';')
        .ok_or_else(|| Error::Parse("morphic spec needs `;seed=<symbol>`".into()))?;
    let kv = parse_kv(seed_part)?;
    let seed: Symbol = kv_get(&kv, "seed")?
        .parse()
        .map_err(|_| Error::Parse("bad seed symbol".into()))?;
    let mut pairs = Vec::new();
    for rule in rules.split(',') {
        let rule = rule.replace("->", "→");
        let (lhs, rhs) = rule
            .split_once('→')
            .ok_or_else(|| Error::Parse(format!("bad morphism rule {rule:?}")))?;
        let sym: usize = lhs
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad symbol {lhs:?}")))?;
        pairs.push((sym, parse_digits(rhs.trim())?));
    }
    pairs.sort_by_key(|&(s, _)| s);
    let q = pairs.len();
    let mut images = vec![Vec::new(); q];
    for (s, img) in pairs {
        if s >= q {
            return Err(Error::Parse(format!(
                "morphism rules must cover symbols 0..{q} contiguously"
            )));
        }
        images[s] = img;
    }
    InfiniteWord::morphic(Morphism::new(images)?, seed)
}

struct MorphicGen {
    m: Morphism,
    seed: Symbol,
    read_pos: usize,
}

impl Generator for MorphicGen {
    fn extend_to(&mut self, symbols: &mut Vec<Symbol>, target: usize) {
        if symbols.is_empty() {
            symbols.extend_from_slice(self.m.image(self.seed));
            self.read_pos = 1;
        }
        // fixed point: the word is its own image, so expanding settled
        // symbols in order extends the prefix
        while symbols.len() < target {
            let s = symbols[self.read_pos];
            self.read_pos += 1;
            let img = self.m.image(s);
            symbols.extend_from_slice(img);
        }
    }
}

struct MechanicalGen {
    alpha: ExactReal,
    /// (n+1)·α + ρ for the next index n to emit
    acc: ExactReal,
    /// ⌊n·α + ρ⌋
    prev_floor: BigInt,
}

impl Generator for MechanicalGen {
    fn extend_to(&mut self, symbols: &mut Vec<Symbol>, target: usize) {
        while symbols.len() < target {
            let next_floor = self.acc.floor();
            let diff = &next_floor - &self.prev_floor;
            symbols.push(diff.to_u8().expect("slope in (0,1) yields binary symbols"));
            self.prev_floor = next_floor;
            self.acc = self.acc.try_add(&self.alpha).expect("fields checked at construction");
        }
    }
}

struct FnGen {
    f: Box<dyn Fn(usize) -> Symbol + Send + Sync>,
}

impl Generator for FnGen {
    fn extend_to(&mut self, symbols: &mut Vec<Symbol>, target: usize) {
        while symbols.len() < target {
            symbols.push((self.f)(symbols.len()));
        }
    }
}
