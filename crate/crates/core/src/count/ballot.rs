//! Dyck-walk counting: the Ballot formula and the generating-function
//! identity behind the nonzero-height closed forms.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::series::RationalSeries;

/// Number of Dyck prefixes of length `n` ending at height `h`:
/// `(h+1)/((n+h)/2 + 1) · C(n, (n+h)/2)`, zero when `n + h` is odd.
pub fn ballot(n: usize, h: usize) -> BigUint {
    if h > n || (n + h) % 2 != 0 {
        return BigUint::zero();
    }
    let m = (n + h) / 2;
    let num = binomial(n, m) * BigUint::from(h + 1);
    let (q, r) = num_integer::div_rem(num, BigUint::from(m + 1));
    debug_assert!(r.is_zero(), "ballot numbers are integers");
    q
}

/// Exact binomial coefficient.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

#[derive(Clone, Debug)]
pub struct DyckIdentityReport {
    pub order: usize,
    pub ok: bool,
    pub first_failure: Option<(usize, usize)>,
}

/// Expands `X^h · N(X)^{h+1}` with `N(X) = (1 − √(1−4X²))/(2X²)` and checks
/// coefficient `n` against the Ballot formula for all `n, h ≤ order`.
pub fn verify_dyck_identity(order: usize) -> DyckIdentityReport {
    // N(X) = Σ_m Catalan_m X^{2m}, from the square-root expansion; built two
    // orders high so the shift keeps full precision.
    let k = order + 2;
    let sqrt = RationalSeries::sqrt_one_minus_4t(&RationalSeries::monomial(2, k), k);
    let n_series = RationalSeries::one(k)
        .sub(&sqrt)
        .shift_down(2)
        .expect("1 − √(1−4X²) has valuation 2")
        .scale_den(2);

    let mut power = n_series.clone(); // N^{h+1} at h = 0
    let mut first_failure = None;
    'outer: for h in 0..=order {
        // coefficient of X^n in X^h N^{h+1} is coefficient of X^{n−h} in N^{h+1}
        for n in 0..=order {
            let coeff = if n < h {
                num_rational::BigRational::zero()
            } else {
                power.coeff(n - h)
            };
            let expect = num_rational::BigRational::from_integer(ballot(n, h).into());
            if coeff != expect {
                first_failure = Some((n, h));
                break 'outer;
            }
        }
        if h < order {
            power = power.mul(&n_series);
        }
    }
    DyckIdentityReport { order, ok: first_failure.is_none(), first_failure }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ballot_spot_values() {
        // Catalan numbers at h = 0.
        assert_eq!(ballot(4, 0), BigUint::from(2u8));
        assert_eq!(ballot(6, 0), BigUint::from(5u8));
        // Hand-enumerated prefixes: UUUD, UUDU, UDUU and UUD, UDU.
        assert_eq!(ballot(4, 2), BigUint::from(3u8));
        assert_eq!(ballot(3, 1), BigUint::from(2u8));
    }

    #[test]
    fn ballot_parity() {
        for n in 0..=20 {
            for h in 0..=20 {
                if (n + h) % 2 == 1 {
                    assert!(ballot(n, h).is_zero(), "n={n} h={h}");
                }
            }
        }
    }

    #[test]
    fn dyck_identity_small_grid() {
        let report = verify_dyck_identity(20);
        assert!(report.ok, "failed at {:?}", report.first_failure);
    }
}
