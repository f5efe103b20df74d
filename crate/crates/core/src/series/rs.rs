//! Truncated formal power series with exact rational coefficients.
//!
//! A series holds coefficients `c_0 .. c_K` and all arithmetic is exact and
//! closed at the truncation order `K` (binary operations truncate to the
//! smaller order). Division by a power of the variable demands exact
//! divisibility; composition demands positive valuation of the inner series.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalSeries {
    coeffs: Vec<BigRational>,
}

impl RationalSeries {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![BigRational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(0, order)
    }

    pub fn monomial(power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = BigRational::one();
        }
        s
    }

    pub fn from_int_poly(poly: &[i64], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (i, &c) in poly.iter().enumerate() {
            if i > order {
                break;
            }
            s.coeffs[i] = BigRational::from_integer(c.into());
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(order + 1);
        coeffs.resize(order + 1, BigRational::zero());
        Self { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Self { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order).map(|i| self.coeff(i) - other.coeff(i)).collect();
        Self { coeffs }
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        Self { coeffs }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    pub fn scale_den(&self, d: u64) -> Self {
        self.scale(&BigRational::new(BigInt::one(), d.into()))
    }

    /// Divide by `x^k`; the low-order coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Option<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return None;
        }
        let mut coeffs: Vec<BigRational> = self.coeffs[k.min(self.coeffs.len())..].to_vec();
        if coeffs.is_empty() {
            coeffs.push(BigRational::zero());
        }
        Some(Self { coeffs })
    }

    /// Multiply by `x^k` (order grows by nothing; high terms fall off).
    pub fn shift_up(&self, k: usize) -> Self {
        let order = self.order();
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for i in 0..=order.saturating_sub(k) {
            coeffs[i + k] = self.coeffs[i].clone();
        }
        Self { coeffs }
    }

    /// Series of `num(x)/den(x)` with `den(0) ≠ 0`, by long division.
    pub fn from_rational_fn(num: &[i64], den: &[i64], order: usize) -> Self {
        let num = Self::from_int_poly(num, order);
        let den = Self::from_int_poly(den, order);
        num.div(&den)
    }

    /// Divide by a series with nonzero constant term.
    pub fn div(&self, den: &Self) -> Self {
        let order = self.order().min(den.order());
        let d0 = den.coeff(0);
        assert!(!d0.is_zero(), "series division needs a unit constant term");
        let mut out = vec![BigRational::zero(); order + 1];
        for i in 0..=order {
            let mut acc = self.coeff(i);
            for j in 1..=i {
                let d = den.coeff(j);
                if !d.is_zero() {
                    acc -= d * &out[i - j];
                }
            }
            out[i] = acc / &d0;
        }
        Self { coeffs: out }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitute `x → c·x`: coefficient `n` picks up `c^n`.
    pub fn scale_variable(&self, c: &BigRational) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        let mut p = BigRational::one();
        for coef in &self.coeffs {
            coeffs.push(coef * &p);
            p *= c;
        }
        Self { coeffs }
    }

    /// Compose an outer series (given by its coefficient stream) with `t`,
    /// which must have positive valuation, via Horner. `outer(m)` is the
    /// m-th outer coefficient.
    pub fn compose_outer<F>(outer: F, t: &Self, order: usize) -> Self
    where
        F: Fn(usize) -> BigRational,
    {
        let v = match t.valuation() {
            Some(v) if v >= 1 => v,
            Some(_) => panic!("composition needs positive valuation"),
            None => {
                // t = 0: the outer constant term.
                let mut s = Self::zero(order);
                s.coeffs[0] = outer(0);
                return s;
            }
        };
        let terms = order / v + 1;
        let t = t.truncate(order);
        let mut acc = Self::zero(order);
        acc.coeffs[0] = outer(terms);
        for m in (0..terms).rev() {
            acc = acc.mul(&t);
            acc.coeffs[0] += outer(m);
        }
        acc
    }

    /// `√(1 − 4t)` for a series `t` of positive valuation, via the
    /// central-binomial expansion `√(1−4u) = 1 − 2 Σ_{m≥1} Catalan_{m−1} u^m`.
    pub fn sqrt_one_minus_4t(t: &Self, order: usize) -> Self {
        Self::compose_outer(
            |m| {
                if m == 0 {
                    BigRational::one()
                } else {
                    -BigRational::from_integer(2 * catalan_bigint(m - 1))
                }
            },
            t,
            order,
        )
    }

    /// True when all coefficients are nonnegative integers.
    pub fn is_nonneg_integral(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.is_integer() && !c.is_negative())
    }
}

fn catalan_bigint(m: usize) -> BigInt {
    // C(2m, m)/(m+1), exact.
    let mut acc = BigInt::one();
    for i in 0..m {
        acc = acc * BigInt::from(2 * m - i);
        acc /= BigInt::from(i + 1);
    }
    acc / BigInt::from(m + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn geometric_series() {
        let s = RationalSeries::from_rational_fn(&[1], &[1, -2], 8);
        for i in 0..=8 {
            assert_eq!(s.coeff(i), rat(1 << i, 1));
        }
    }

    #[test]
    fn division_round_trips() {
        let num = RationalSeries::from_int_poly(&[1, 3, -5, 7], 10);
        let den = RationalSeries::from_int_poly(&[2, -1, 1], 10);
        let q = num.div(&den);
        assert_eq!(q.mul(&den), num.truncate(10));
    }

    #[test]
    fn sqrt_square_recovers_argument() {
        // (√(1−4X²))² = 1 − 4X² with X = x³/((1−x)(1−2x−2x²)).
        let order = 40;
        let den = RationalSeries::from_int_poly(&[1, -1], order)
            .mul(&RationalSeries::from_int_poly(&[1, -2, -2], order));
        let x_big = RationalSeries::monomial(3, order).div(&den);
        let t = x_big.mul(&x_big);
        let s = RationalSeries::sqrt_one_minus_4t(&t, order);
        let lhs = s.mul(&s);
        let rhs = RationalSeries::one(order).sub(&t.scale(&rat(4, 1)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn catalan_values() {
        let expect = [1i64, 1, 2, 5, 14, 42, 132, 429];
        for (m, &c) in expect.iter().enumerate() {
            assert_eq!(catalan_bigint(m), BigInt::from(c));
        }
    }
}
