//! Closed-form generating functions as exact truncated series.
//!
//! Every square root enters only through `√(1−4X²)` with `X` a rational
//! function of the counting variable, so after clearing the algebra all
//! coefficients stay rational and the expansion is exact. Quantities that
//! are identically zero in a regime (dead sectors, heights above the
//! structural bound) return the zero series.

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::model::{CountRegime, Family, ModelSpec};

use super::rs::RationalSeries;

/// Guard order added internally so divisions by powers of `x` stay exact at
/// the requested truncation.
const PAD: usize = 12;

/// Series of `N^{(h)}_{a→b}(x)` (or the tilde variant) to order `k_order`.
pub fn closed_form(
    model: &ModelSpec,
    h: usize,
    a: u8,
    b: u8,
    tilde: bool,
    k_order: usize,
) -> Result<RationalSeries> {
    let k = model.k();
    if a < 1 || a > k || b < 1 || b > k {
        return Err(Error::UnknownQuantity(format!("sector {a}->{b} for {model}")));
    }
    if tilde && model.family != Family::S32Case2 {
        return Err(Error::InvalidModel(
            "tilde series only exist for the balanced 𝒮³₂ case".into(),
        ));
    }
    let series = match (model.family, model.count_regime()) {
        (Family::S21, _) => s21(h, a, b, k_order),
        (Family::S31, CountRegime::Free) => s31_free(h, a, b, k_order),
        (Family::S31, CountRegime::Balanced) => s31_balanced(h, a, b, k_order),
        // First 𝒮³₂ case: the 𝒮³₁ generating functions with x → 2x.
        (Family::S32Case1, _) => {
            s31_free(h, a, b, k_order).scale_variable(&BigRational::from_integer(2.into()))
        }
        (Family::S32Case2, _) => s32_balanced(h, a, b, k_order),
    };
    if tilde {
        // N^{(h)} = 2^h · Ñ^{(h)}
        let scale = BigRational::new(1.into(), num_bigint::BigInt::one() << h);
        Ok(series.scale(&scale))
    } else {
        Ok(series)
    }
}

fn poly(coeffs: &[i64], order: usize) -> RationalSeries {
    RationalSeries::from_int_poly(coeffs, order)
}

/// 𝒮²₁: `N_{1→1} = (1−x)/(1−2x)`, `N_{2→2} = 1/(1−x)`,
/// `N^{(1)}_{1→2} = x/(1−2x)`; everything else vanishes.
fn s21(h: usize, a: u8, b: u8, k_order: usize) -> RationalSeries {
    match (h, a, b) {
        (0, 1, 1) => RationalSeries::from_rational_fn(&[1, -1], &[1, -2], k_order),
        (0, 2, 2) => RationalSeries::from_rational_fn(&[1], &[1, -1], k_order),
        (1, 1, 2) => RationalSeries::from_rational_fn(&[0, 1], &[1, -2], k_order),
        _ => RationalSeries::zero(k_order),
    }
}

/// Shared 𝒮³₁ λ = 0 pieces at an internal padded order.
struct S31Free {
    order: usize,
    n11: RationalSeries,
    n22: RationalSeries,
    n21: RationalSeries,
    /// `Z = x³ N_{1→1}/(1−2x)`, the repeated factor of the height-h forms.
    z: RationalSeries,
}

impl S31Free {
    fn build(k_order: usize) -> Self {
        let order = k_order + PAD;
        // X = x³ / ((1−x)(1−2x−2x²))
        let den = poly(&[1, -1], order).mul(&poly(&[1, -2, -2], order));
        let x_big = RationalSeries::monomial(3, order).div(&den);
        let g = RationalSeries::one(order)
            .sub(&RationalSeries::sqrt_one_minus_4t(&x_big.mul(&x_big), order));

        // N_{1→1} = (1−2x)(1−x)(1−2x−2x²) G / (2x⁶)
        let n11 = g
            .shift_down(6)
            .expect("G has valuation 6")
            .mul(&poly(&[1, -2], order))
            .mul(&den)
            .scale_den(2);
        // N_{2→2} = (1−x)/(1−2x) + (1−x)(1−2x−2x²) G / (2x²(1−2x))
        let n22 = RationalSeries::from_rational_fn(&[1, -1], &[1, -2], order).add(
            &g.shift_down(2)
                .unwrap()
                .mul(&poly(&[1, -1], order))
                .mul(&poly(&[1, -2, -2], order))
                .div(&poly(&[1, -2], order))
                .scale_den(2),
        );
        // N_{2→1} = (1−x)(1−2x−2x²) G / (2x⁴)
        let n21 = g.shift_down(4).unwrap().mul(&den).scale_den(2);
        let z = n11.shift_up(3).div(&poly(&[1, -2], order));
        Self { order, n11, n22, n21, z }
    }

    fn height0(&self, a: u8, b: u8) -> RationalSeries {
        let (a, b) = (a.min(b), a.max(b));
        match (a, b) {
            (1, 1) => self.n11.clone(),
            (2, 2) => self.n22.clone(),
            (1, 2) => self.n21.clone(),
            (3, 3) => RationalSeries::from_rational_fn(&[1], &[1, -1], self.order),
            _ => RationalSeries::zero(self.order),
        }
    }

    fn height_h(&self, h: usize, a: u8, b: u8) -> RationalSeries {
        let zh = self.z.pow(h);
        let zh1 = zh.mul(&self.z);
        let one_minus_2x = poly(&[1, -2], self.order);
        match (a, b) {
            (2, 1) => zh1.shift_down(1).unwrap(),
            (1, 1) => zh1.mul(&one_minus_2x).shift_down(3).unwrap(),
            (2, 2) => zh.mul(&self.n22),
            (1, 2) => zh.mul(&self.n22).mul(&one_minus_2x).shift_down(2).unwrap(),
            (2, 3) => zh.mul(&self.stub()).shift_down(2).unwrap(),
            (1, 3) => {
                let mut num = zh.mul(&self.stub()).mul(&one_minus_2x);
                if h == 1 {
                    num = num.sub(&RationalSeries::monomial(3, self.order));
                }
                num.shift_down(4).unwrap()
            }
            _ => RationalSeries::zero(self.order),
        }
    }

    /// `1 − x − x² N_{2→2}`, the factor in the `→3` forms.
    fn stub(&self) -> RationalSeries {
        poly(&[1, -1], self.order).sub(&self.n22.shift_up(2))
    }
}

fn s31_free(h: usize, a: u8, b: u8, k_order: usize) -> RationalSeries {
    let ctx = S31Free::build(k_order);
    let s = if h == 0 {
        ctx.height0(a, b)
    } else if a == 3 {
        RationalSeries::zero(ctx.order)
    } else {
        ctx.height_h(h, a, b)
    };
    s.truncate(k_order)
}

/// 𝒮³₁ λ > 0: pure rational functions over `D₄ = 1−4x+3x²+2x³−x⁴`. The
/// height-0 numerator is `(1−x)(1−2x)`; the printed form with `(x−1)`
/// violates `N_0 = 1` and its sign is fixed here.
fn s31_balanced(h: usize, a: u8, b: u8, k_order: usize) -> RationalSeries {
    const D4: [i64; 5] = [1, -4, 3, 2, -1];
    let f = |num: &[i64]| RationalSeries::from_rational_fn(num, &D4, k_order);
    match (h, a, b) {
        (0, 1, 1) => f(&[1, -3, 2]),
        (0, 2, 2) => RationalSeries::from_rational_fn(&[1, -1], &[1, -2], k_order),
        (0, 3, 3) => RationalSeries::from_rational_fn(&[1], &[1, -1], k_order),
        (1, 1, 2) => f(&[0, 1, -2, 1]),
        (1, 1, 3) => f(&[0, 1, -2]),
        (2, 1, 3) => f(&[0, 0, 1, -1]),
        (1, 2, 3) => RationalSeries::from_rational_fn(&[0, 1], &[1, -2], k_order),
        _ => RationalSeries::zero(k_order),
    }
}

/// Shared balanced-𝒮³₂ pieces (full colored counts).
struct S32Balanced {
    order: usize,
    n11: RationalSeries,
    n22: RationalSeries,
    n21: RationalSeries,
    /// `Y = 4x³ N_{1→1}/(1−4x+2x²)`.
    y: RationalSeries,
}

impl S32Balanced {
    fn build(k_order: usize) -> Self {
        let order = k_order + PAD;
        // X = 2√2 x³/((1−2x)(1−4x−2x²)); only X² is needed and it is rational.
        let dc = poly(&[1, -2], order).mul(&poly(&[1, -4, -2], order));
        let t = RationalSeries::monomial(6, order)
            .scale(&BigRational::from_integer(8.into()))
            .div(&dc.mul(&dc));
        let g = RationalSeries::one(order).sub(&RationalSeries::sqrt_one_minus_4t(&t, order));
        let q = poly(&[1, -4, 2], order);

        // N_{1→1} = (1−4x+2x²)(1−2x)(1−4x−2x²) G/(16x⁶)
        let n11 = g
            .shift_down(6)
            .expect("G has valuation 6")
            .mul(&q)
            .mul(&dc)
            .scale_den(16);
        // N_{2→2} = (1−2x)/(1−4x+2x²) + (1−2x)(1−4x−2x²) G/(4x²(1−4x+2x²))
        let n22 = poly(&[1, -2], order).div(&q).add(
            &g.shift_down(2)
                .unwrap()
                .mul(&poly(&[1, -2], order))
                .mul(&poly(&[1, -4, -2], order))
                .div(&q)
                .scale_den(4),
        );
        // N_{2→1} = (1−2x)(1−4x−2x²) G/(8x⁴)
        let n21 = g.shift_down(4).unwrap().mul(&dc).scale_den(8);
        let y = n11
            .shift_up(3)
            .scale(&BigRational::from_integer(4.into()))
            .div(&q);
        Self { order, n11, n22, n21, y }
    }

    fn height0(&self, a: u8, b: u8) -> RationalSeries {
        let (a, b) = (a.min(b), a.max(b));
        match (a, b) {
            (1, 1) => self.n11.clone(),
            (2, 2) => self.n22.clone(),
            (1, 2) => self.n21.clone(),
            (3, 3) => RationalSeries::from_rational_fn(&[1], &[1, -2], self.order),
            _ => RationalSeries::zero(self.order),
        }
    }

    fn height_h(&self, h: usize, a: u8, b: u8) -> RationalSeries {
        let q = poly(&[1, -4, 2], self.order);
        let yh = self.y.pow(h);
        let yh1 = yh.mul(&self.y);
        match (a, b) {
            (2, 1) => yh1.shift_down(1).unwrap().scale_den(2),
            (1, 1) => yh1.mul(&q).shift_down(3).unwrap().scale_den(4),
            (2, 2) => yh.mul(&self.n22),
            (1, 2) => yh.mul(&self.n22).mul(&q).shift_down(2).unwrap().scale_den(2),
            (2, 3) => yh.mul(&self.stub()).shift_down(2).unwrap().scale_den(2),
            (1, 3) => {
                let mut num = yh.mul(&self.stub()).mul(&q);
                if h == 1 {
                    num = num.sub(
                        &RationalSeries::monomial(3, self.order)
                            .scale(&BigRational::from_integer(4.into())),
                    );
                }
                num.shift_down(4).unwrap().scale_den(4)
            }
            _ => RationalSeries::zero(self.order),
        }
    }

    /// `1 − 2x − 2x² N_{2→2}`.
    fn stub(&self) -> RationalSeries {
        poly(&[1, -2], self.order).sub(
            &self
                .n22
                .shift_up(2)
                .scale(&BigRational::from_integer(2.into())),
        )
    }
}

fn s32_balanced(h: usize, a: u8, b: u8, k_order: usize) -> RationalSeries {
    let ctx = S32Balanced::build(k_order);
    let s = if h == 0 {
        ctx.height0(a, b)
    } else if a == 3 {
        RationalSeries::zero(ctx.order)
    } else {
        ctx.height_h(h, a, b)
    };
    s.truncate(k_order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn s21_coefficients() {
        let m = ModelSpec::s21();
        let s = closed_form(&m, 0, 1, 1, false, 6).unwrap();
        let expect = [1, 1, 2, 4, 8, 16, 32];
        for (i, &e) in expect.iter().enumerate() {
            assert_eq!(s.coeff(i), int(e));
        }
    }

    #[test]
    fn s31_free_spot_coefficients() {
        let m = ModelSpec::s31_lambda0();
        let n12 = closed_form(&m, 0, 1, 2, false, 8).unwrap();
        assert_eq!(n12.coeff(3), int(3));
        let n11 = closed_form(&m, 0, 1, 1, false, 8).unwrap();
        assert_eq!(n11.coeff(0), int(1));
        assert_eq!(n11.coeff(2), int(3));
        assert_eq!(n11.coeff(3), int(7));
        let nh12 = closed_form(&m, 1, 1, 2, false, 8).unwrap();
        assert_eq!(nh12.coeff(3), int(6));
    }

    #[test]
    fn s31_balanced_normalization_and_growth() {
        let m = ModelSpec::s31_lambda_pos(BigRational::one()).unwrap();
        let n11 = closed_form(&m, 0, 1, 1, false, 8).unwrap();
        assert_eq!(n11.coeff(0), int(1));
        assert_eq!(n11.coeff(2), int(3));
        assert_eq!(n11.coeff(3), int(7));
        let n22 = closed_form(&m, 0, 2, 2, false, 5).unwrap();
        for (i, &e) in [1, 1, 2, 4, 8, 16].iter().enumerate() {
            assert_eq!(n22.coeff(i), int(e));
        }
    }

    #[test]
    fn s32_case2_spot_coefficients() {
        let m = ModelSpec::s32_case2(BigRational::one()).unwrap();
        let s = closed_form(&m, 2, 1, 2, false, 6).unwrap();
        assert_eq!(s.coeff(4), int(8));
        let t = closed_form(&m, 2, 1, 2, true, 6).unwrap();
        assert_eq!(t.coeff(4), int(2));
        let n11 = closed_form(&m, 0, 1, 1, false, 6).unwrap();
        assert_eq!(n11.coeff(1), int(2));
        assert_eq!(n11.coeff(2), int(8));
        assert_eq!(n11.coeff(3), int(32));
        let n33 = closed_form(&m, 0, 3, 3, false, 6).unwrap();
        assert_eq!(n33.coeff(5), int(32));
    }

    #[test]
    fn s32_case1_is_s31_at_2x() {
        let c1 = ModelSpec::s32_case1();
        let s31 = ModelSpec::s31_lambda0();
        for (h, a, b) in [(0, 1, 1), (0, 2, 1), (1, 1, 2), (2, 1, 3), (1, 2, 3)] {
            let lhs = closed_form(&c1, h, a, b, false, 12).unwrap();
            let rhs = closed_form(&s31, h, a, b, false, 12).unwrap();
            for n in 0..=12usize {
                assert_eq!(
                    lhs.coeff(n),
                    rhs.coeff(n) * BigRational::from_integer(BigInt::from(1) << n),
                    "h={h} {a}->{b} n={n}"
                );
            }
        }
    }

    #[test]
    fn singularity_ratio_approaches_three() {
        // |c_{n+1}/c_n| → 3 for the λ=0 𝒮³₁ series (nearest singularity 1/3).
        let m = ModelSpec::s31_lambda0();
        let s = closed_form(&m, 0, 1, 1, false, 200).unwrap();
        let r = s.coeff(200) / s.coeff(199);
        let rf = crate::hiprec::Hp::from_rational(&r, 30).to_f64();
        assert!((rf - 3.0).abs() < 0.03, "ratio {rf}");
    }
}
