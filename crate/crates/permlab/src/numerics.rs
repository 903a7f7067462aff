//! Exact number backends: big rationals and quadratic surds `(a+b√d)/c`.
//!
//! Every comparison in the crate bottoms out here and is decided with
//! integer arithmetic only. Surds are restricted to a single square-free
//! field constant `d` per context; comparing values from distinct fields
//! is an error, never an approximation.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `(a + b·√d) / c` with `c > 0`, `d ≥ 2` square-free and `gcd(a,b,c) = 1`.
///
/// The canonical form is enforced at construction, so structural equality
/// coincides with numeric equality within a field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: u64,
}

fn is_square_free(d: u64) -> bool {
    if d == 0 {
        return false;
    }
    let mut n = d;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

impl QuadraticSurd {
    /// Builds `(a + b√d)/c` in canonical form. `d` must be square-free and
    /// at least 2 so that `√d` is genuinely irrational; `c` must be nonzero.
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: u64) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::InvalidSurd("zero denominator".into()));
        }
        if d < 2 || !is_square_free(d) {
            return Err(Error::InvalidSurd(format!(
                "field constant {d} must be square-free and >= 2"
            )));
        }
        let (mut a, mut b, mut c) = if c.is_negative() { (-a, -b, -c) } else { (a, b, c) };
        let g = a.gcd(&b).gcd(&c);
        if !g.is_one() && !g.is_zero() {
            a /= &g;
            b /= &g;
            c /= &g;
        }
        Ok(QuadraticSurd { a, b, c, d })
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: u64) -> Result<Self> {
        Self::new(BigInt::from(a), BigInt::from(b), BigInt::from(c), d)
    }

    /// The value `√d` itself.
    pub fn sqrt(d: u64) -> Result<Self> {
        Self::from_i64(0, 1, 1, d)
    }

    pub fn field(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Sign of the value, by exact case analysis on `a + b√d`
    /// (squaring both sides where the signs of `a` and `b` disagree).
    pub fn sign(&self) -> Ordering {
        sign_a_plus_b_sqrt_d(&self.a, &self.b, self.d)
    }

    /// `⌊(a + b√d)/c⌋`, via integer-square-root bracketing of `b√d`.
    pub fn floor(&self) -> BigInt {
        let t = floor_b_sqrt_d(&self.b, self.d);
        (&self.a + t).div_floor(&self.c)
    }

    fn ac_bc(&self) -> (BigRational, BigRational) {
        (
            BigRational::new(self.a.clone(), self.c.clone()),
            BigRational::new(self.b.clone(), self.c.clone()),
        )
    }

    /// The rational part `a/c` of `(a + b√d)/c`.
    pub fn rational_part(&self) -> BigRational {
        BigRational::new(self.a.clone(), self.c.clone())
    }

    /// The coefficient `b/c` of `√d` in `(a + b√d)/c`.
    pub fn irrational_coeff(&self) -> BigRational {
        BigRational::new(self.b.clone(), self.c.clone())
    }
}

/// Sign of `A + B√d` for square-free `d ≥ 2`, decided by comparing `A²`
/// against `d·B²` when the signs of `A` and `B` disagree. Exact: the value
/// is zero only when `A = B = 0`, since `√d` is irrational.
fn sign_a_plus_b_sqrt_d(a: &BigInt, b: &BigInt, d: u64) -> Ordering {
    match (a.sign(), b.sign()) {
        (num_bigint::Sign::NoSign, s) => sign_to_ordering(s),
        (s, num_bigint::Sign::NoSign) => sign_to_ordering(s),
        (num_bigint::Sign::Plus, num_bigint::Sign::Plus) => Ordering::Greater,
        (num_bigint::Sign::Minus, num_bigint::Sign::Minus) => Ordering::Less,
        (num_bigint::Sign::Plus, num_bigint::Sign::Minus) => {
            // a > 0 > b: sign is that of a² - d·b²
            cmp_sq(a, b, d)
        }
        (num_bigint::Sign::Minus, num_bigint::Sign::Plus) => cmp_sq(a, b, d).reverse(),
    }
}

fn cmp_sq(a: &BigInt, b: &BigInt, d: u64) -> Ordering {
    let lhs = a * a;
    let rhs = b * b * BigInt::from(d);
    debug_assert!(lhs != rhs, "a^2 == d*b^2 contradicts square-free d >= 2");
    lhs.cmp(&rhs)
}

fn sign_to_ordering(s: num_bigint::Sign) -> Ordering {
    match s {
        num_bigint::Sign::Minus => Ordering::Less,
        num_bigint::Sign::NoSign => Ordering::Equal,
        num_bigint::Sign::Plus => Ordering::Greater,
    }
}

/// `⌊b·√d⌋` exactly. For `b ≥ 0` this is `isqrt(b²d)`; for negative `b`
/// it is `-isqrt(b²d) - 1` unless `b²d` is a perfect square.
fn floor_b_sqrt_d(b: &BigInt, d: u64) -> BigInt {
    if b.is_zero() {
        return BigInt::zero();
    }
    let sq = b * b * BigInt::from(d);
    let root = sq.sqrt();
    if b.is_positive() {
        root
    } else if &root * &root == sq {
        -root
    } else {
        -root - 1
    }
}

/// An exact real: a big rational or a quadratic surd. All comparisons are
/// total within a field and performed with integer arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExactReal {
    Rational(BigRational),
    Surd(QuadraticSurd),
}

impl ExactReal {
    pub fn integer(n: i64) -> Self {
        ExactReal::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn rational(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidArgument("rational with zero denominator".into()));
        }
        Ok(ExactReal::Rational(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }

    /// `(a + b√d)/c`. A surd whose irrational part vanishes collapses to a
    /// rational, so structural equality stays canonical across the enum.
    pub fn surd(a: i64, b: i64, c: i64, d: u64) -> Result<Self> {
        Ok(Self::from_surd(QuadraticSurd::from_i64(a, b, c, d)?))
    }

    pub fn sqrt(d: u64) -> Result<Self> {
        Ok(Self::from_surd(QuadraticSurd::sqrt(d)?))
    }

    pub fn from_surd(s: QuadraticSurd) -> Self {
        if s.is_rational() {
            ExactReal::Rational(BigRational::new(s.a, s.c))
        } else {
            ExactReal::Surd(s)
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        ExactReal::Rational(r)
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, ExactReal::Rational(_))
    }

    /// The field constant of the irrational part, if any.
    pub fn field(&self) -> Option<u64> {
        match self {
            ExactReal::Rational(_) => None,
            ExactReal::Surd(s) => Some(s.d),
        }
    }

    /// Decomposes the value as `p + q√d`: returns `(p, q, d)` with `q = 0`
    /// and `d = None` for rationals.
    pub fn parts(&self) -> (BigRational, BigRational, Option<u64>) {
        match self {
            ExactReal::Rational(r) => (r.clone(), BigRational::zero(), None),
            ExactReal::Surd(s) => (s.rational_part(), s.irrational_coeff(), Some(s.d)),
        }
    }

    /// Exact three-way comparison. Errors only when both sides carry
    /// irrational parts over distinct fields.
    pub fn try_cmp(&self, other: &ExactReal) -> Result<Ordering> {
        match (self, other) {
            (ExactReal::Rational(x), ExactReal::Rational(y)) => Ok(x.cmp(y)),
            (ExactReal::Surd(x), ExactReal::Surd(y)) => {
                if x.d != y.d {
                    return Err(Error::MixedField(x.d, y.d));
                }
                // sign of (a1c2 - a2c1) + (b1c2 - b2c1)√d
                let a = &x.a * &y.c - &y.a * &x.c;
                let b = &x.b * &y.c - &y.b * &x.c;
                Ok(sign_a_plus_b_sqrt_d(&a, &b, x.d))
            }
            (ExactReal::Surd(x), ExactReal::Rational(y)) => {
                // (a + b√d)/c vs p/q: sign of (aq - pc) + bq√d, q > 0
                let (p, q) = (y.numer(), y.denom());
                let a = &x.a * q - p * &x.c;
                let b = &x.b * q;
                Ok(sign_a_plus_b_sqrt_d(&a, &b, x.d))
            }
            (ExactReal::Rational(_), ExactReal::Surd(_)) => {
                Ok(other.try_cmp(self)?.reverse())
            }
        }
    }

    /// Sign of the value (comparison against zero never mixes fields).
    pub fn sign(&self) -> Ordering {
        match self {
            ExactReal::Rational(x) => sign_to_ordering(x.numer().sign()),
            ExactReal::Surd(s) => s.sign(),
        }
    }

    pub fn floor(&self) -> BigInt {
        match self {
            ExactReal::Rational(x) => x.floor().to_integer(),
            ExactReal::Surd(s) => s.floor(),
        }
    }

    pub fn neg(&self) -> ExactReal {
        match self {
            ExactReal::Rational(x) => ExactReal::Rational(-x),
            ExactReal::Surd(s) => ExactReal::Surd(QuadraticSurd {
                a: -&s.a,
                b: -&s.b,
                c: s.c.clone(),
                d: s.d,
            }),
        }
    }

    /// Exact sum; errors on mixed fields.
    pub fn try_add(&self, other: &ExactReal) -> Result<ExactReal> {
        match (self, other) {
            (ExactReal::Rational(x), ExactReal::Rational(y)) => {
                Ok(ExactReal::Rational(x + y))
            }
            (ExactReal::Surd(x), ExactReal::Surd(y)) => {
                if x.d != y.d {
                    return Err(Error::MixedField(x.d, y.d));
                }
                let (xa, xb) = x.ac_bc();
                let (ya, yb) = y.ac_bc();
                surd_from_rationals(xa + ya, xb + yb, x.d)
            }
            (ExactReal::Surd(x), ExactReal::Rational(y))
            | (ExactReal::Rational(y), ExactReal::Surd(x)) => {
                let (xa, xb) = x.ac_bc();
                surd_from_rationals(xa + y, xb, x.d)
            }
        }
    }

    pub fn try_sub(&self, other: &ExactReal) -> Result<ExactReal> {
        self.try_add(&other.neg())
    }

    /// `k · self` for an integer scalar; never changes the field.
    pub fn scale(&self, k: &BigInt) -> ExactReal {
        self.scale_rational(&BigRational::from_integer(k.clone()))
    }

    pub fn scale_i64(&self, k: i64) -> ExactReal {
        self.scale(&BigInt::from(k))
    }

    /// `r · self` for a rational scalar.
    pub fn scale_rational(&self, r: &BigRational) -> ExactReal {
        match self {
            ExactReal::Rational(x) => ExactReal::Rational(x * r),
            ExactReal::Surd(s) => {
                let (a, b) = s.ac_bc();
                surd_from_rationals(a * r, b * r, s.d)
                    .expect("scaling keeps the field")
            }
        }
    }

    /// Closest `f64`, for property tests and plotting only; never used in
    /// any decision the library makes.
    pub fn to_f64(&self) -> f64 {
        match self {
            ExactReal::Rational(x) => x.to_f64().unwrap_or(f64::NAN),
            ExactReal::Surd(s) => {
                let a = BigRational::from_integer(s.a.clone()).to_f64().unwrap_or(f64::NAN);
                let b = BigRational::from_integer(s.b.clone()).to_f64().unwrap_or(f64::NAN);
                let c = BigRational::from_integer(s.c.clone()).to_f64().unwrap_or(f64::NAN);
                (a + b * (s.d as f64).sqrt()) / c
            }
        }
    }
}

fn surd_from_rationals(a: BigRational, b: BigRational, d: u64) -> Result<ExactReal> {
    // (a + b√d) with rational a = p/q, b = r/s over common denominator
    let c = a.denom().lcm(b.denom());
    let na = a.numer() * (&c / a.denom());
    let nb = b.numer() * (&c / b.denom());
    Ok(ExactReal::from_surd(QuadraticSurd::new(na, nb, c, d)?))
}

impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactReal::Rational(x) => {
                if x.denom().is_one() {
                    write!(f, "{}", x.numer())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
            ExactReal::Surd(s) => {
                if s.b.is_negative() {
                    write!(f, "({}-{}√{})/{}", s.a, -&s.b, s.d, s.c)
                } else {
                    write!(f, "({}+{}√{})/{}", s.a, s.b, s.d, s.c)
                }
            }
        }
    }
}

impl FromStr for ExactReal {
    type Err = Error;

    /// Accepts `"3"`, `"-3/4"`, `"(a+b√d)/c"` (also with `sqrt` spelled
    /// out), and the shorthands `"sqrt2"` / `"2sqrt5"`.
    fn from_str(s: &str) -> Result<Self> {
        parse_exact(s.trim())
    }
}

fn parse_exact(s: &str) -> Result<ExactReal> {
    if s.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    if let Some(rest) = s.strip_prefix('(') {
        // (a+b√d)/c  or  (a-b√d)/c
        let close = rest
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unclosed parenthesis in {s:?}")))?;
        let inner = &rest[..close];
        let tail = &rest[close + 1..];
        let c: i128 = if tail.is_empty() {
            1
        } else {
            let t = tail
                .strip_prefix('/')
                .ok_or_else(|| Error::Parse(format!("expected /c after parenthesis in {s:?}")))?;
            t.parse()
                .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?
        };
        let (a, b, d) = parse_surd_numerator(inner)?;
        return Ok(ExactReal::from_surd(QuadraticSurd::new(
            BigInt::from(a),
            BigInt::from(b),
            BigInt::from(c),
            d,
        )?));
    }
    if s.contains('√') || s.contains("sqrt") {
        let (a, b, d) = parse_surd_numerator(s)?;
        return Ok(ExactReal::from_surd(QuadraticSurd::new(
            BigInt::from(a),
            BigInt::from(b),
            BigInt::one(),
            d,
        )?));
    }
    if let Some((n, dd)) = s.split_once('/') {
        let num: i128 = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let den: i128 = dd
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if den == 0 {
            return Err(Error::Parse("zero denominator".into()));
        }
        return Ok(ExactReal::Rational(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        )));
    }
    let n: i128 = s
        .parse()
        .map_err(|_| Error::Parse(format!("cannot parse number {s:?}")))?;
    Ok(ExactReal::Rational(BigRational::from_integer(BigInt::from(n))))
}

/// Parses `a+b√d`, `a-b√d`, `b√d` or `√d` (with `√` or `sqrt`).
fn parse_surd_numerator(s: &str) -> Result<(i128, i128, u64)> {
    let s = s.replace("sqrt", "√").replace(' ', "");
    let radix = s
        .find('√')
        .ok_or_else(|| Error::Parse(format!("no √ in surd {s:?}")))?;
    let d: u64 = s[radix + '√'.len_utf8()..]
        .parse()
        .map_err(|_| Error::Parse(format!("bad field constant in {s:?}")))?;
    let head = &s[..radix];
    // Split head into rational part and coefficient at the last +/- that is
    // not a leading sign.
    let (a_str, b_str) = match head.rfind(['+', '-']) {
        Some(pos) if pos > 0 => (&head[..pos], &head[pos..]),
        _ => ("", head),
    };
    let a: i128 = if a_str.is_empty() {
        0
    } else {
        a_str
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational part in {s:?}")))?
    };
    let b: i128 = match b_str {
        "" | "+" => 1,
        "-" => -1,
        t => t
            .parse()
            .map_err(|_| Error::Parse(format!("bad coefficient in {s:?}")))?,
    };
    Ok((a, b, d))
}
