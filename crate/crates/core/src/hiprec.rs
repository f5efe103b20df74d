//! Fixed-point high-precision reals: a `BigInt` mantissa scaled by
//! `10^digits`. Enough for evaluating asymptotic prefactors (π, √2, √3, √5,
//! γ, logs and Gaussians) and entropies from exact count ratios without the
//! precision ceiling of `f64`.
//!
//! Euler's constant is a stored 50-digit literal, not computed; everything
//! else is derived on demand at the requested precision (π via Machin's
//! formula, logs via the atanh series with power-of-two range reduction).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub const GAMMA_50: &str = "0.57721566490153286060651209008240243104215933593992";

/// A real carried as `mant / 10^digits`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Hp {
    mant: BigInt,
    digits: usize,
}

fn pow10(digits: usize) -> BigInt {
    BigInt::from(10u8).pow(digits as u32)
}

impl Hp {
    pub fn zero(digits: usize) -> Self {
        Self { mant: BigInt::zero(), digits }
    }

    pub fn from_int(v: i64, digits: usize) -> Self {
        Self { mant: BigInt::from(v) * pow10(digits), digits }
    }

    pub fn from_bigint(v: &BigInt, digits: usize) -> Self {
        Self { mant: v * pow10(digits), digits }
    }

    pub fn from_biguint(v: &BigUint, digits: usize) -> Self {
        Self::from_bigint(&BigInt::from_biguint(Sign::Plus, v.clone()), digits)
    }

    pub fn from_rational(q: &BigRational, digits: usize) -> Self {
        let mant = round_div(q.numer() * pow10(digits), q.denom());
        Self { mant, digits }
    }

    /// Parses a plain decimal literal (used for the γ constant).
    pub fn from_decimal_str(s: &str, digits: usize) -> Self {
        let (int_part, frac_part) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        let neg = int_part.starts_with('-');
        let int_part = int_part.trim_start_matches('-');
        let mut mant = int_part.parse::<BigInt>().unwrap() * pow10(digits);
        let take = frac_part.len().min(digits);
        if take > 0 {
            let frac: BigInt = frac_part[..take].parse().unwrap();
            mant += frac * pow10(digits - take);
        }
        if neg {
            mant = -mant;
        }
        Self { mant, digits }
    }

    pub fn digits(&self) -> usize {
        self.digits
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        Self { mant: self.mant.abs(), digits: self.digits }
    }

    pub fn neg(&self) -> Self {
        Self { mant: -&self.mant, digits: self.digits }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        Self { mant: &self.mant + &other.mant, digits: self.digits }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        Self { mant: &self.mant - &other.mant, digits: self.digits }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        Self {
            mant: round_div(&self.mant * &other.mant, &pow10(self.digits)),
            digits: self.digits,
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.check(other);
        assert!(!other.is_zero(), "hiprec division by zero");
        Self {
            mant: round_div(&self.mant * pow10(self.digits), &other.mant),
            digits: self.digits,
        }
    }

    pub fn mul_i64(&self, v: i64) -> Self {
        Self { mant: &self.mant * BigInt::from(v), digits: self.digits }
    }

    pub fn div_i64(&self, v: i64) -> Self {
        Self { mant: round_div(self.mant.clone(), &BigInt::from(v)), digits: self.digits }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.digits, other.digits, "mixed hiprec precisions");
    }

    pub fn cmp_abs(&self, other: &Self) -> Ordering {
        self.mant.abs().cmp(&other.mant.abs())
    }

    /// Nonnegative square root.
    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "hiprec sqrt of a negative value");
        let scaled = (&self.mant * pow10(self.digits)).to_biguint().unwrap();
        Self {
            mant: BigInt::from(scaled.sqrt()),
            digits: self.digits,
        }
    }

    /// Natural logarithm of a positive value: reduce by powers of two, then
    /// `ln m = 2 atanh((m−1)/(m+1))` for `m ∈ [1, 2)`.
    pub fn ln(&self) -> Self {
        assert!(self.mant.is_positive(), "hiprec ln needs a positive value");
        let one = pow10(self.digits);
        let mut m = self.mant.clone();
        let mut k: i64 = 0;
        // Bulk power-of-two reduction first, then settle into [1, 2).
        if m > one {
            let shift = (m.bits() as i64 - one.bits() as i64 - 1).max(0);
            if shift > 0 {
                m = round_div(m, &(BigInt::one() << (shift as u32)));
                k += shift;
            }
        }
        while m >= &one * 2 {
            m = round_div(m, &BigInt::from(2));
            k += 1;
        }
        while m < one {
            m *= 2;
            k -= 1;
        }
        let m = Hp { mant: m, digits: self.digits };
        let ln_m = m.atanh_ln();
        ln_m.add(&ln2(self.digits).mul_i64(k))
    }

    /// `2 atanh((x−1)/(x+1))` for `x ∈ [1, 2)`.
    fn atanh_ln(&self) -> Self {
        let one = Hp::from_int(1, self.digits);
        let z = self.sub(&one).div(&self.add(&one));
        let z2 = z.mul(&z);
        let mut term = z.clone();
        let mut sum = Hp::zero(self.digits);
        let mut j = 0i64;
        while !term.is_zero() {
            sum = sum.add(&term.div_i64(2 * j + 1));
            term = term.mul(&z2);
            j += 1;
        }
        sum.mul_i64(2)
    }

    /// `e^x` with power-of-two range reduction.
    pub fn exp(&self) -> Self {
        let ln2v = ln2(self.digits);
        // x = k·ln2 + r with |r| ≤ ln2/2
        let k_f = self.div(&ln2v).to_f64().round();
        let k = k_f as i64;
        let r = self.sub(&ln2v.mul_i64(k));
        let mut term = Hp::from_int(1, self.digits);
        let mut sum = Hp::from_int(1, self.digits);
        let mut j = 1i64;
        loop {
            term = term.mul(&r).div_i64(j);
            if term.is_zero() {
                break;
            }
            sum = sum.add(&term);
            j += 1;
        }
        // scale by 2^k
        match k.cmp(&0) {
            Ordering::Greater => Self {
                mant: sum.mant << (k as u32),
                digits: self.digits,
            },
            Ordering::Less => Self {
                mant: round_div(sum.mant, &(BigInt::one() << ((-k) as u32))),
                digits: self.digits,
            },
            Ordering::Equal => sum,
        }
    }

    /// Integer power. `base^n` with exponentiation by squaring.
    pub fn powi(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Hp::from_int(1, self.digits);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        BigRational::new(self.mant.clone(), pow10(self.digits))
            .to_f64()
            .unwrap_or_else(|| {
                // fall back through logarithms for huge mantissas
                let neg = self.mant.is_negative();
                let bits = self.mant.bits() as f64;
                let v = (bits * std::f64::consts::LN_2
                    - self.digits as f64 * std::f64::consts::LN_10)
                    .exp();
                if neg {
                    -v
                } else {
                    v
                }
            })
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mant.clone(), pow10(self.digits))
    }
}

impl fmt::Display for Hp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ten = pow10(self.digits);
        let neg = self.mant.is_negative();
        let abs = self.mant.abs();
        let (int, frac) = (&abs / &ten, &abs % &ten);
        let frac_str = format!("{:0>width$}", frac.to_string(), width = self.digits);
        write!(f, "{}{}.{}", if neg { "-" } else { "" }, int, frac_str)
    }
}

/// Round-to-nearest integer division.
fn round_div(num: BigInt, den: &BigInt) -> BigInt {
    let two_num = num * 2;
    let q: BigInt = &two_num / den;
    // (2a/b + sign)/2 rounds half away from zero
    if q.is_negative() {
        (q - 1) / 2
    } else {
        (q + 1) / 2
    }
}

/// π via Machin's formula: `π = 16 atan(1/5) − 4 atan(1/239)`.
pub fn pi(digits: usize) -> Hp {
    let guard = digits + 10;
    let a = atan_inv(5, guard);
    let b = atan_inv(239, guard);
    reduce(a.mul_i64(16).sub(&b.mul_i64(4)), digits)
}

/// `atan(1/q)` by its alternating series, exact partial sums in fixed point.
fn atan_inv(q: i64, digits: usize) -> Hp {
    let mut term = Hp::from_int(1, digits).div_i64(q);
    let q2 = q * q;
    let mut sum = Hp::zero(digits);
    let mut j = 0i64;
    while !term.is_zero() {
        let contrib = term.div_i64(2 * j + 1);
        if j % 2 == 0 {
            sum = sum.add(&contrib);
        } else {
            sum = sum.sub(&contrib);
        }
        term = term.div_i64(q2);
        j += 1;
    }
    sum
}

/// `ln 2 = 2 atanh(1/3)`.
pub fn ln2(digits: usize) -> Hp {
    let guard = digits + 5;
    let z = Hp::from_rational(&BigRational::new(1.into(), 3.into()), guard);
    let z2 = z.mul(&z);
    let mut term = z.clone();
    let mut sum = Hp::zero(guard);
    let mut j = 0i64;
    while !term.is_zero() {
        sum = sum.add(&term.div_i64(2 * j + 1));
        term = term.mul(&z2);
        j += 1;
    }
    reduce(sum.mul_i64(2), digits)
}

/// Euler's constant from the stored literal. Precisions beyond the literal
/// are refused rather than padded with false digits.
pub fn euler_gamma(digits: usize) -> Hp {
    assert!(
        digits <= 50,
        "γ is stored as a 50-digit literal; requested {digits}"
    );
    Hp::from_decimal_str(GAMMA_50, digits)
}

pub fn sqrt_int(v: u64, digits: usize) -> Hp {
    Hp::from_int(v as i64, digits).sqrt()
}

fn reduce(v: Hp, digits: usize) -> Hp {
    assert!(v.digits >= digits);
    Hp {
        mant: round_div(v.mant, &pow10(v.digits - digits)),
        digits,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const D: usize = 50;

    #[test]
    fn pi_digits() {
        let p = pi(D);
        assert_eq!(
            p.to_string(),
            "3.14159265358979323846264338327950288419716939937511"
        );
    }

    #[test]
    fn ln2_digits() {
        // ln 2 = 0.6931471805599453094172321214581765680755001343602552...
        // (the 50th digit rounds up under round-to-nearest)
        let l = ln2(D);
        let s = l.to_string();
        assert!(
            s.starts_with("0.6931471805599453094172321214581765680755001343602"),
            "{s}"
        );
    }

    #[test]
    fn sqrt_and_exp_ln_round_trip() {
        let two = Hp::from_int(2, D);
        let r = two.sqrt();
        let err = r.mul(&r).sub(&two).abs();
        assert!(err.cmp_abs(&Hp::from_rational(
            &BigRational::new(1.into(), BigInt::from(10).pow(45)),
            D
        )) == std::cmp::Ordering::Less);

        let x = Hp::from_rational(&BigRational::new(7.into(), 3.into()), D);
        let back = x.ln().exp();
        let err = back.sub(&x).abs();
        assert!(err.to_f64() < 1e-45);
    }

    #[test]
    fn ln_of_huge_integer() {
        let v = BigUint::from(3u8).pow(1000);
        let l = Hp::from_biguint(&v, D).ln();
        let expect = 1000.0 * 3.0f64.ln();
        assert!((l.to_f64() - expect).abs() < 1e-9 * expect);
    }

    #[test]
    fn gamma_literal() {
        let g = euler_gamma(50);
        assert!((g.to_f64() - 0.5772156649015329).abs() < 1e-15);
    }

    #[test]
    fn exp_of_negative() {
        let x = Hp::from_int(-3, D);
        let v = x.exp();
        assert!((v.to_f64() - (-3.0f64).exp()).abs() < 1e-16);
    }
}
