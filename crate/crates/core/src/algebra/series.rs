//! Truncated power series of `numerator / ∏ L` for linear forms with constant term one.

use super::poly::{LinearForm, SparsePoly};

/// `Σ_{i≤R} g^i` truncated at total degree `R`, where `g = 1 - form`.
pub fn geometric_series(form: &LinearForm, max_total_degree: u32) -> SparsePoly {
    let d = form.num_vars();
    let g = &SparsePoly::one(d) - &form.to_poly();
    let mut power = SparsePoly::one(d);
    let mut sum = SparsePoly::one(d);
    for _ in 0..max_total_degree {
        power = power.mul_truncated(&g, max_total_degree);
        if power.is_zero() {
            break;
        }
        sum = &sum + &power;
    }
    sum
}

/// Taylor expansion of `numerator / ∏ forms` up to and including total
/// degree `max_total_degree`.
pub fn truncated_series(
    numerator: &SparsePoly,
    denominator_forms: &[LinearForm],
    max_total_degree: u32,
) -> SparsePoly {
    denominator_forms
        .iter()
        .fold(numerator.truncate(max_total_degree), |acc, form| {
            assert_eq!(form.num_vars(), numerator.num_vars());
            acc.mul_truncated(&geometric_series(form, max_total_degree), max_total_degree)
        })
}
