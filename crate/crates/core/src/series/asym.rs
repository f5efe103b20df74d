//! Large-order asymptotic forms of the walk counts, evaluated in
//! high precision.
//!
//! Each form is `prefactor · base^n · n^power · w(n, h)`, where the height
//! weight `w` is one of the Gaussian-peaked combinations read off from the
//! generating functions near their dominant singularity. The balanced 𝒮³₂
//! forms carry an extra `2^{h/2}` and their Gaussian scale involves the
//! singular point `x₀ = (√2−1)/2`.

use num_bigint::BigUint;

use crate::count::CountTable;
use crate::error::{Error, Result};
use crate::hiprec::{pi, Hp};
use crate::model::{CountRegime, Family, ModelSpec};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HWeight {
    /// No height dependence.
    None,
    /// `(h+1) e^{−g(h+1)²/n}`.
    SinglePeak,
    /// `2h e^{−gh²/n} + (h+1) e^{−g(h+1)²/n}`.
    TwoPlus,
    /// `4h e^{−gh²/n} − (h+1) e^{−g(h+1)²/n}`.
    FourMinus,
}

#[derive(Clone, Debug)]
pub struct AsymptoticForm {
    pub prefactor: Hp,
    pub base: Hp,
    /// Twice the power of `n` (so −3 encodes `n^{−3/2}`).
    pub twice_power: i64,
    pub gaussian_scale: Option<Hp>,
    /// Multiply by `2^{h/2}` (balanced 𝒮³₂).
    pub sqrt2_pow_h: bool,
    pub h_weight: HWeight,
}

impl AsymptoticForm {
    pub fn evaluate(&self, n: usize, h: usize) -> Hp {
        let d = self.prefactor.digits();
        let mut v = self.prefactor.mul(&self.base.powi(n as u64));
        // n^{twice_power/2}
        let n_hp = Hp::from_int(n as i64, d);
        let half_pow = n_hp.sqrt();
        let tp = self.twice_power;
        let mut power_factor = Hp::from_int(1, d);
        for _ in 0..tp.unsigned_abs() {
            power_factor = power_factor.mul(&half_pow);
        }
        if tp >= 0 {
            v = v.mul(&power_factor);
        } else {
            v = v.div(&power_factor);
        }
        let peak = |t: i64| -> Hp {
            let g = self.gaussian_scale.as_ref().expect("peaked form needs a scale");
            let arg = g.mul_i64(t * t).div(&n_hp).neg();
            arg.exp().mul_i64(t)
        };
        let w = match self.h_weight {
            HWeight::None => Hp::from_int(1, d),
            HWeight::SinglePeak => peak(h as i64 + 1),
            HWeight::TwoPlus => peak(h as i64).mul_i64(2).add(&peak(h as i64 + 1)),
            HWeight::FourMinus => peak(h as i64).mul_i64(4).sub(&peak(h as i64 + 1)),
        };
        v = v.mul(&w);
        if self.sqrt2_pow_h {
            let sqrt2 = Hp::from_int(2, d).sqrt();
            v = v.mul(&sqrt2.powi(h as u64));
        }
        v
    }
}

/// `x₀ = (−1+√2)/2`, the dominant singularity of the balanced 𝒮³₂ family.
pub fn s32_x0(digits: usize) -> Hp {
    Hp::from_int(2, digits)
        .sqrt()
        .sub(&Hp::from_int(1, digits))
        .div_i64(2)
}

/// `σ = √2 x₀ / 9`, the Gaussian width entering the √n entropy law.
pub fn s32_sigma(digits: usize) -> Hp {
    Hp::from_int(2, digits).sqrt().mul(&s32_x0(digits)).div_i64(9)
}

/// The asymptotic form of `N^{(h)}_{n,a→b}`. `h` only selects between the
/// level form (`h = 0`) and the height-resolved family (`h ≥ 1`); the
/// actual height is supplied at evaluation time. Identically-zero
/// quantities are refused.
pub fn asymptotic_form(model: &ModelSpec, h: usize, a: u8, b: u8, digits: usize) -> Result<AsymptoticForm> {
    let unknown = || Error::UnknownQuantity(format!("asymptotics of N^({h})_{{{a}->{b}}} for {model}"));
    let d = digits;
    match (model.family, model.count_regime()) {
        (Family::S21, _) => {
            let two = Hp::from_int(2, d);
            let one = Hp::from_int(1, d);
            let half = one.div(&two);
            let form = |prefactor: Hp, base: Hp| AsymptoticForm {
                prefactor,
                base,
                twice_power: 0,
                gaussian_scale: None,
                sqrt2_pow_h: false,
                h_weight: HWeight::None,
            };
            match (h, a, b) {
                (0, 1, 1) => Ok(form(half, two)),
                (0, 2, 2) => Ok(form(one.clone(), one)),
                (1, 1, 2) => Ok(form(half, two)),
                _ => Err(unknown()),
            }
        }
        (Family::S31, CountRegime::Balanced) => {
            let two = Hp::from_int(2, d);
            let one = Hp::from_int(1, d);
            let sqrt5 = Hp::from_int(5, d).sqrt();
            // (3+√5)/2 and (√5+1)/(4√5)
            let golden_base = sqrt5.add(&Hp::from_int(3, d)).div(&two);
            let golden_pref = sqrt5.add(&one).div(&sqrt5.mul_i64(4));
            let inv2s5 = one.div(&sqrt5.mul_i64(2));
            let form = |prefactor: Hp, base: Hp| AsymptoticForm {
                prefactor,
                base,
                twice_power: 0,
                gaussian_scale: None,
                sqrt2_pow_h: false,
                h_weight: HWeight::None,
            };
            match (h, a, b) {
                (0, 1, 1) => Ok(form(golden_pref, golden_base)),
                (0, 2, 2) => Ok(form(one.div(&two), two)),
                (0, 3, 3) => Ok(form(one.clone(), one)),
                (1, 1, 2) => Ok(form(golden_pref, golden_base)),
                (1, 1, 3) | (2, 1, 3) => Ok(form(inv2s5, golden_base)),
                (1, 2, 3) => Ok(form(one.div(&two), two)),
                _ => Err(unknown()),
            }
        }
        (Family::S31, CountRegime::Free) | (Family::S32Case1, _) => {
            // A_{a→b} · 3^n · n^{−3/2}, Gaussian scale 27/4; the first 𝒮³₂
            // case doubles the base.
            let sqrt3 = Hp::from_int(3, d).sqrt();
            let sqrt_pi = pi(d).sqrt();
            let unit = sqrt3.div(&sqrt_pi).div_i64(2); // √3/(2√π)
            let pref = |c: i64| unit.mul_i64(c);
            let base = if model.family == Family::S32Case1 {
                Hp::from_int(6, d)
            } else {
                Hp::from_int(3, d)
            };
            let scale = Hp::from_int(27, d).div_i64(4);
            let (c, weight) = match (a, b) {
                (1, 1) => (27, if h == 0 { HWeight::None } else { HWeight::SinglePeak }),
                (2, 2) => (3, if h == 0 { HWeight::None } else { HWeight::TwoPlus }),
                (2, 1) | (1, 2) if h == 0 => (9, HWeight::None),
                (2, 1) => (9, HWeight::SinglePeak),
                (1, 2) => (9, HWeight::TwoPlus),
                (2, 3) if h >= 1 => (3, HWeight::FourMinus),
                (1, 3) if h >= 1 => (9, HWeight::FourMinus),
                (3, 3) if h == 0 => {
                    return Ok(AsymptoticForm {
                        prefactor: Hp::from_int(1, d),
                        base: if model.family == Family::S32Case1 {
                            Hp::from_int(2, d)
                        } else {
                            Hp::from_int(1, d)
                        },
                        twice_power: 0,
                        gaussian_scale: None,
                        sqrt2_pow_h: false,
                        h_weight: HWeight::None,
                    })
                }
                _ => return Err(unknown()),
            };
            Ok(AsymptoticForm {
                prefactor: pref(c),
                base,
                twice_power: -3,
                gaussian_scale: (weight != HWeight::None).then_some(scale),
                sqrt2_pow_h: false,
                h_weight: weight,
            })
        }
        (Family::S32Case2, _) => {
            // B_{a→b} / (x₀^n n^{3/2}), Gaussian scale 9/(4√2 x₀), extra 2^{h/2}.
            let x0 = s32_x0(d);
            let sqrt_pi = pi(d).sqrt();
            // 1/(2^{7/4} x₀^{3/2} √π)
            let two = Hp::from_int(2, d);
            let two_74 = two.powi(7).sqrt().sqrt(); // 2^{7/4}
            let x0_32 = x0.mul(&x0.sqrt());
            let unit = Hp::from_int(1, d).div(&two_74.mul(&x0_32).mul(&sqrt_pi));
            let base = Hp::from_int(1, d).div(&x0);
            let scale = Hp::from_int(9, d).div(&two.sqrt().mul(&x0).mul_i64(4));
            let (c, weight) = match (a, b) {
                (1, 1) => (9, if h == 0 { HWeight::None } else { HWeight::SinglePeak }),
                (2, 2) => (1, if h == 0 { HWeight::None } else { HWeight::TwoPlus }),
                (2, 1) | (1, 2) if h == 0 => (3, HWeight::None),
                (2, 1) => (3, HWeight::SinglePeak),
                (1, 2) => (3, HWeight::TwoPlus),
                (2, 3) if h >= 1 => (1, HWeight::FourMinus),
                (1, 3) if h >= 1 => (3, HWeight::FourMinus),
                (3, 3) if h == 0 => {
                    return Ok(AsymptoticForm {
                        prefactor: Hp::from_int(1, d),
                        base: Hp::from_int(2, d),
                        twice_power: 0,
                        gaussian_scale: None,
                        sqrt2_pow_h: false,
                        h_weight: HWeight::None,
                    })
                }
                _ => return Err(unknown()),
            };
            Ok(AsymptoticForm {
                prefactor: unit.mul_i64(c),
                base,
                twice_power: -3,
                gaussian_scale: (weight != HWeight::None).then_some(scale),
                sqrt2_pow_h: h > 0,
                h_weight: weight,
            })
        }
    }
}

/// Evaluates the form at `(n, h)`.
pub fn asymptotic_value(form: &AsymptoticForm, n: usize, h: usize) -> Hp {
    form.evaluate(n, h)
}

/// Exact-count / asymptotic-value ratios over a list of lengths.
pub fn asymptotic_ratio_scan(
    table: &mut CountTable,
    h: usize,
    a: u8,
    b: u8,
    ns: &[usize],
    digits: usize,
) -> Result<Vec<(usize, f64)>> {
    let model = table.model().clone();
    let form = asymptotic_form(&model, h, a, b, digits)?;
    let mut out = Vec::with_capacity(ns.len());
    for &n in ns {
        let exact: BigUint = table.count(n, h, a, b, false)?;
        let approx = form.evaluate(n, h);
        let ratio = Hp::from_biguint(&exact, digits).div(&approx);
        out.push((n, ratio.to_f64()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const D: usize = 50;

    #[test]
    fn prefactor_values() {
        let m = ModelSpec::s31_lambda0();
        let f = asymptotic_form(&m, 0, 1, 1, D).unwrap();
        // 27√3/(2√π) ≈ 13.19228
        let expect = 27.0 * 3.0f64.sqrt() / (2.0 * std::f64::consts::PI.sqrt());
        assert!((f.prefactor.to_f64() - expect).abs() < 1e-12);
        assert!((f.base.to_f64() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn x0_and_sigma() {
        let x0 = s32_x0(D);
        assert!((x0.to_f64() - 0.20710678).abs() < 1e-7);
        let sigma = s32_sigma(D);
        assert!((sigma.to_f64() - 0.0325443).abs() < 1e-6);
    }

    #[test]
    fn golden_base() {
        let m = ModelSpec::s31_lambda_pos(num_rational::BigRational::from_integer(1.into()))
            .unwrap();
        let f = asymptotic_form(&m, 0, 1, 1, D).unwrap();
        assert!((f.base.to_f64() - (3.0 + 5.0f64.sqrt()) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn unknown_quantities_refused() {
        let m = ModelSpec::s21();
        assert!(asymptotic_form(&m, 0, 1, 2, D).is_err());
        assert!(asymptotic_form(&m, 2, 1, 1, D).is_err());
    }
}
