//! Exact heights and slopes.
//!
//! Under the symmetric metric every squared length is rational, so every
//! height change in the system has the form `(1/2)·log2(q)` for a positive
//! rational `q`. [`LogRat`] stores `q` and nothing else; addition of heights
//! is multiplication of the `q`s. A [`SlopeValue`] is such a height divided
//! by a positive twist count, compared exactly by cross-exponentiation.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg};

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational, always stored reduced with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Largest number of significant digits accepted by the decimal renderers.
pub const MAX_DIGITS: usize = 64;

/// The real number `(1/2)·log2(q)` for a positive rational `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LogRat {
    q: Rational,
}

impl LogRat {
    /// The height `0`, i.e. `q = 1`.
    pub fn zero() -> Self {
        LogRat { q: Rational::one() }
    }

    /// Returns `None` unless `q > 0`.
    pub fn new(q: Rational) -> Option<Self> {
        q.is_positive().then_some(LogRat { q })
    }

    /// `(1/2)·log2(num/den)`. Panics if the ratio is not positive.
    pub fn from_ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        let q = Rational::new(num.into(), den.into());
        Self::new(q).expect("LogRat requires a positive ratio")
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_one()
    }

    /// Sign of the denoted value: the sign of `q - 1`.
    pub fn sign(&self) -> Ordering {
        self.q.cmp(&Rational::one())
    }

    /// `|self|`, canonicalized to `q >= 1`.
    pub fn abs(&self) -> LogRat {
        if self.sign() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    /// `self` multiplied by a non-negative integer.
    pub fn times(&self, k: u32) -> LogRat {
        LogRat {
            q: Pow::pow(&self.q, k),
        }
    }

    pub fn to_f64(&self) -> f64 {
        0.5 * log2_rational_f64(&self.q)
    }

    /// Decimal rendering correct to `digits` significant digits (rounded half
    /// away from zero, trailing zeros removed).
    pub fn to_decimal(&self, digits: usize) -> String {
        log2_ratio_decimal(&self.q, &BigInt::from(2u32), digits)
    }
}

impl Default for LogRat {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for &LogRat {
    type Output = LogRat;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: &LogRat) -> LogRat {
        LogRat {
            q: &self.q * &rhs.q,
        }
    }
}

impl Add for LogRat {
    type Output = LogRat;

    fn add(self, rhs: LogRat) -> LogRat {
        &self + &rhs
    }
}

impl Neg for &LogRat {
    type Output = LogRat;

    fn neg(self) -> LogRat {
        LogRat { q: self.q.recip() }
    }
}

impl Neg for LogRat {
    type Output = LogRat;

    fn neg(self) -> LogRat {
        -&self
    }
}

impl std::iter::Sum for LogRat {
    fn sum<I: Iterator<Item = LogRat>>(iter: I) -> LogRat {
        iter.fold(LogRat::zero(), |acc, h| acc + h)
    }
}

impl PartialOrd for LogRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `log2` is monotone, so heights order like their `q`s.
impl Ord for LogRat {
    fn cmp(&self, other: &Self) -> Ordering {
        self.q.cmp(&other.q)
    }
}

impl fmt::Display for LogRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(1/2)·log2({})", fmt_rational(&self.q))
    }
}

/// Non-negative slope `(1/2)·log2(q) / twists` with `q >= 1`, `twists >= 1`.
///
/// Equality and ordering are those of the denoted real numbers, so
/// `(q=16, t=1)` and `(q=256, t=2)` compare equal.
#[derive(Clone, Debug)]
pub struct SlopeValue {
    q: Rational,
    twists: u64,
}

impl SlopeValue {
    pub fn zero() -> Self {
        SlopeValue {
            q: Rational::one(),
            twists: 1,
        }
    }

    /// Slope of a loop with net height `height` and `twists` twists. The sign
    /// of the height is dropped. Panics if `twists == 0`.
    pub fn new(height: &LogRat, twists: u64) -> Self {
        assert!(twists >= 1, "a slope needs at least one twist");
        SlopeValue {
            q: height.abs().q,
            twists,
        }
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn twists(&self) -> u64 {
        self.twists
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_one()
    }

    pub fn to_f64(&self) -> f64 {
        0.5 * log2_rational_f64(&self.q) / self.twists as f64
    }

    pub fn to_decimal(&self, digits: usize) -> String {
        log2_ratio_decimal(&self.q, &(BigInt::from(self.twists) * 2u32), digits)
    }
}

impl PartialEq for SlopeValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for SlopeValue {}

impl PartialOrd for SlopeValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Compares `log2(q1)/t1` with `log2(q2)/t2` via `q1^t2` against `q2^t1`.
impl Ord for SlopeValue {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.twists == other.twists {
            return self.q.cmp(&other.q);
        }
        let e1 = u32::try_from(other.twists).expect("twist count fits in u32");
        let e2 = u32::try_from(self.twists).expect("twist count fits in u32");
        let lhs: BigInt = Pow::pow(self.q.numer(), e1) * Pow::pow(other.q.denom(), e2);
        let rhs: BigInt = Pow::pow(other.q.numer(), e2) * Pow::pow(self.q.denom(), e1);
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for SlopeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(1/2)·log2({})/{}", fmt_rational(&self.q), self.twists)
    }
}

/// `n` or `n/d`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn log2_bigint_f64(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        n.to_f64().unwrap_or(f64::NAN).log2()
    } else {
        let shift = bits - 64;
        let top: BigInt = n >> shift;
        top.to_f64().unwrap_or(f64::NAN).log2() + shift as f64
    }
}

fn log2_rational_f64(q: &Rational) -> f64 {
    log2_bigint_f64(q.numer()) - log2_bigint_f64(q.denom())
}

/// Exponent of `n` if `n` is a positive power of two.
fn power_of_two_exponent(n: &BigInt) -> Option<u64> {
    if !n.is_positive() {
        return None;
    }
    let tz = n.trailing_zeros()?;
    (n.bits() == tz + 1).then_some(tz)
}

/// Decimal rendering of `log2(q) / divisor` to `digits` significant digits.
fn log2_ratio_decimal(q: &Rational, divisor: &BigInt, digits: usize) -> String {
    assert!(
        (1..=MAX_DIGITS).contains(&digits),
        "digits must be in 1..={MAX_DIGITS}"
    );
    assert!(q.is_positive() && divisor.is_positive());
    if q.is_one() {
        return "0".to_string();
    }
    if let (Some(a), Some(b)) = (
        power_of_two_exponent(q.numer()),
        power_of_two_exponent(q.denom()),
    ) {
        // log2 of a power of two is an exact integer.
        let exact = Rational::new(BigInt::from(a) - BigInt::from(b), divisor.clone());
        return round_significant(&exact, digits);
    }
    // Otherwise log2(q) is irrational: narrow an enclosing interval until both
    // ends round to the same string.
    let mut bits = 64 + 4 * digits as u64;
    loop {
        let (approx, err) = log2_fixed(q, bits);
        let scale = Rational::from_integer(divisor << bits);
        let lo = Rational::new(&approx - &err, BigInt::one()) / &scale;
        let hi = Rational::new(&approx + &err, BigInt::one()) / &scale;
        if lo.is_positive() == hi.is_positive() && !lo.is_zero() && !hi.is_zero() {
            let a = round_significant(&lo, digits);
            if a == round_significant(&hi, digits) {
                return a;
            }
        }
        bits *= 2;
    }
}

/// Fixed-point `log2(q)` scaled by `2^bits`, with an absolute error bound in
/// the same units.
fn log2_fixed(q: &Rational, bits: u64) -> (BigInt, BigInt) {
    let n = q.numer();
    let d = q.denom();
    // q = m · 2^e with m in [1, 2).
    let mut e = n.bits() as i64 - d.bits() as i64;
    let below_one = |e: i64| -> bool {
        if e >= 0 {
            n < &(d << e as u64)
        } else {
            &(n << (-e) as u64) < d
        }
    };
    if below_one(e) {
        e -= 1;
    }
    let one = BigInt::one() << bits;
    let m_fixed = if e >= 0 {
        (n << bits) / (d << e as u64)
    } else {
        (n << (bits + (-e) as u64)) / d
    };
    let ln_m = ln_fixed(&m_fixed, &one, bits);
    let ln2 = ln_fixed(&(&one * 2u32), &one, bits);
    let log2_m = (ln_m << bits) / ln2;
    let value = (BigInt::from(e) << bits) + log2_m;
    let err = BigInt::from(16 * bits + 64);
    (value, err)
}

/// `ln(m)` for fixed-point `m` in `[1, 2]`, via `2·atanh((m-1)/(m+1))`.
fn ln_fixed(m: &BigInt, one: &BigInt, bits: u64) -> BigInt {
    let z = ((m - one) << bits) / (m + one);
    let z2 = (&z * &z) >> bits;
    let mut term = z.clone();
    let mut sum = z;
    let mut k: u64 = 1;
    loop {
        term = (&term * &z2) >> bits;
        if term.is_zero() {
            break;
        }
        sum += &term / BigInt::from(2 * k + 1);
        k += 1;
    }
    sum * 2u32
}

fn pow10(k: u32) -> BigInt {
    Pow::pow(BigInt::from(10u32), k)
}

/// `10^k` as a rational, `k` possibly negative.
fn pow10_rational(k: i64) -> Rational {
    if k >= 0 {
        Rational::from_integer(pow10(k as u32))
    } else {
        Rational::new(BigInt::one(), pow10((-k) as u32))
    }
}

/// Rounds a nonzero rational to `digits` significant digits, half away from
/// zero, and renders it in positional notation without trailing zeros.
fn round_significant(x: &Rational, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let negative = x.is_negative();
    let a = x.abs();
    let est = (log2_rational_f64(&a) * std::f64::consts::LOG10_2).floor() as i64;
    let mut e10 = est;
    while pow10_rational(e10) > a {
        e10 -= 1;
    }
    while pow10_rational(e10 + 1) <= a {
        e10 += 1;
    }
    let scaled = &a * pow10_rational(digits as i64 - 1 - e10);
    let half = Rational::new(BigInt::one(), BigInt::from(2u32));
    let mut rounded = (scaled + half).floor().to_integer();
    if rounded == pow10(digits as u32) {
        rounded = pow10(digits as u32 - 1);
        e10 += 1;
    }
    let s = rounded.to_str_radix(10);
    let (int_part, frac_part) = if e10 >= 0 {
        let int_len = e10 as usize + 1;
        if s.len() <= int_len {
            (format!("{s}{}", "0".repeat(int_len - s.len())), String::new())
        } else {
            (s[..int_len].to_string(), s[int_len..].to_string())
        }
    } else {
        ("0".to_string(), format!("{}{s}", "0".repeat((-e10 - 1) as usize)))
    };
    let frac_part = frac_part.trim_end_matches('0');
    let sign = if negative { "-" } else { "" };
    if frac_part.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}
