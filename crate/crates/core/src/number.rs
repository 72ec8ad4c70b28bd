//! Exact arithmetic helpers: factorial and binomial tables, rational parsing
//! and decimal rendering.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational used for every exact quantity.
pub type Rational = BigRational;

/// `0!, 1!, ..., n!` as big integers.
#[derive(Debug, Clone)]
pub struct Factorials {
    table: Vec<BigInt>,
}

impl Factorials {
    pub fn up_to(n: usize) -> Self {
        let mut table = Vec::with_capacity(n + 1);
        table.push(BigInt::one());
        for k in 1..=n {
            let next = &table[k - 1] * BigInt::from(k);
            table.push(next);
        }
        Factorials { table }
    }

    pub fn get(&self, k: usize) -> &BigInt {
        &self.table[k]
    }

    pub fn max(&self) -> usize {
        self.table.len() - 1
    }
}

pub fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Binomial coefficient with the convention `C(a, b) = 0` outside `0 <= b <= a`.
pub fn binomial(a: i64, b: i64) -> BigInt {
    if a < 0 || b < 0 || b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b) as u64;
    let a = a as u64;
    let mut acc = BigInt::one();
    for k in 0..b {
        acc = acc * BigInt::from(a - k) / BigInt::from(k + 1);
    }
    acc
}

/// Pascal triangle rows `0..=n`, `rows[a][b] = C(a, b)`.
#[derive(Debug, Clone)]
pub struct Binomials {
    rows: Vec<Vec<BigInt>>,
}

impl Binomials {
    pub fn up_to(n: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
        for a in 0..=n {
            let mut row = vec![BigInt::one(); a + 1];
            for b in 1..a {
                row[b] = &rows[a - 1][b - 1] + &rows[a - 1][b];
            }
            rows.push(row);
        }
        Binomials { rows }
    }

    pub fn get(&self, a: i64, b: i64) -> BigInt {
        if a < 0 || b < 0 || b > a {
            return BigInt::zero();
        }
        self.rows[a as usize][b as usize].clone()
    }
}

/// Parses `"5"`, `"2.5"`, `"-0.125"`, `"5/2"` into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = parse_integer(num)?;
        let den: BigInt = parse_integer(den)?;
        if den.is_zero() {
            return None;
        }
        return Some(Rational::new(num, den));
    }
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numerator: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().ok()?
    };
    let denominator = num_traits::pow(BigInt::from(10u32), frac_part.len());
    let value = Rational::new(numerator, denominator);
    Some(if negative { -value } else { value })
}

fn parse_integer(text: &str) -> Option<BigInt> {
    let text = text.trim();
    let digits = text.strip_prefix('-').or_else(|| text.strip_prefix('+')).unwrap_or(text);
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    text.parse().ok()
}

/// Renders `value` as a plain decimal with `significant` significant digits,
/// rounding half away from zero. Exact: no floating point is involved.
pub fn to_decimal_string(value: &Rational, significant: usize) -> String {
    assert!(significant > 0);
    if value.is_zero() {
        return "0".to_string();
    }
    let negative = value.is_negative();
    let magnitude = value.abs();
    // Find the decimal exponent e with 10^e <= |value| < 10^(e+1).
    let ten = BigInt::from(10u32);
    let mut exponent: i64 = (magnitude.numer().to_string().len() as i64)
        - (magnitude.denom().to_string().len() as i64);
    loop {
        let low = pow10_rational(exponent);
        let high = pow10_rational(exponent + 1);
        if magnitude < low {
            exponent -= 1;
        } else if magnitude >= high {
            exponent += 1;
        } else {
            break;
        }
    }
    // Scale so that the integer part carries exactly `significant` digits.
    let shift = significant as i64 - 1 - exponent;
    let scaled = &magnitude * pow10_rational(shift);
    let mut digits = round_half_up(&scaled);
    let mut shift = shift;
    if digits.to_string().len() > significant {
        // Rounding carried into a new digit (e.g. 9.99.. -> 10.0..).
        digits /= &ten;
        shift -= 1;
    }
    let digit_str = digits.to_string();
    let body = if shift <= 0 {
        let zeros = "0".repeat((-shift) as usize);
        format!("{digit_str}{zeros}")
    } else {
        let shift = shift as usize;
        if digit_str.len() > shift {
            let (int, frac) = digit_str.split_at(digit_str.len() - shift);
            format!("{int}.{frac}")
        } else {
            let zeros = "0".repeat(shift - digit_str.len());
            format!("0.{zeros}{digit_str}")
        }
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

fn pow10_rational(exp: i64) -> Rational {
    let p = num_traits::pow(BigInt::from(10u32), exp.unsigned_abs() as usize);
    if exp >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

fn round_half_up(value: &Rational) -> BigInt {
    let (q, r) = value.numer().div_rem(value.denom());
    if BigInt::from(2u32) * r >= *value.denom() {
        q + 1
    } else {
        q
    }
}

/// Lossy conversion for reporting only.
pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}
