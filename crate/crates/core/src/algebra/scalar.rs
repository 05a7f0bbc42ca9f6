//! The scalar field every tensor entry lives in: rational linear
//! combinations of square roots of positive integers, times an integer
//! power of π.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{exact_sqrt, format_rational, rational_to_f64, Rational};
use super::AlgebraError;

/// Square factors are stripped from radicands by trial division up to this bound.
pub const FACTOR_BOUND: u64 = 1_000_000;

/// `π^pi_power · Σ c_r √r` over positive radicands `r` (`r = 1` is the rational part).
#[derive(Clone, Debug)]
pub struct ExactScalar {
    pi_power: i32,
    terms: BTreeMap<BigUint, Rational>,
}

// Radicands above the factoring bound may carry different square factors,
// so equality falls back to exact subtraction.
impl PartialEq for ExactScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.pi_power == other.pi_power && self.terms == other.terms {
            return true;
        }
        match self.checked_sub(other) {
            Ok(diff) => diff.is_zero(),
            Err(_) => false,
        }
    }
}

impl Eq for ExactScalar {}

impl Default for ExactScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl ExactScalar {
    pub fn zero() -> Self {
        Self {
            pi_power: 0,
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(BigUint::one(), q);
        }
        Self { pi_power: 0, terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    /// `π^p`.
    pub fn pi_pow(p: i32) -> Self {
        Self::one().with_pi_power(p)
    }

    /// √n for a nonnegative integer `n`.
    pub fn sqrt_int(n: &BigUint) -> Self {
        Self::from_parts(0, [(n.clone(), Rational::one())])
    }

    /// √q for a nonnegative rational, as `√(p·q)/q` with `q = p/q`.
    pub fn sqrt_rational(q: &Rational) -> Result<Self, AlgebraError> {
        if q.is_negative() {
            return Err(AlgebraError::NegativeRadicand(format_rational(q)));
        }
        if q.is_zero() {
            return Ok(Self::zero());
        }
        let num = q.numer().magnitude() * q.denom().magnitude();
        let coeff = Rational::new(BigInt::one(), q.denom().clone());
        Ok(Self::from_parts(0, [(num, coeff)]))
    }

    /// Builds a canonical scalar from raw (radicand, coefficient) pairs.
    pub fn from_parts(pi_power: i32, parts: impl IntoIterator<Item = (BigUint, Rational)>) -> Self {
        let mut out = Self {
            pi_power,
            terms: BTreeMap::new(),
        };
        for (radicand, coeff) in parts {
            out.accumulate(radicand, coeff);
        }
        out.normalize_zero();
        out
    }

    pub fn pi_power(&self) -> i32 {
        self.pi_power
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigUint, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The rational value, when the scalar has no radical or π part.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.pi_power != 0 || self.terms.len() != 1 {
            return None;
        }
        self.terms.get(&BigUint::one()).cloned()
    }

    pub fn with_pi_power(mut self, p: i32) -> Self {
        if !self.is_zero() {
            self.pi_power = p;
        }
        self
    }

    /// Re-canonicalizes every radicand and merges like terms.
    pub fn canonicalize(&self) -> Self {
        Self::from_parts(
            self.pi_power,
            self.terms.iter().map(|(r, c)| (r.clone(), c.clone())),
        )
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.pi_power != other.pi_power {
            return Err(AlgebraError::PiPowerMismatch {
                left: self.pi_power,
                right: other.pi_power,
            });
        }
        let mut out = self.clone();
        for (r, c) in &other.terms {
            out.accumulate(r.clone(), c.clone());
        }
        out.normalize_zero();
        Ok(out)
    }

    /// `self += q·other` in place.
    pub fn add_scaled(&mut self, other: &Self, q: &Rational) -> Result<(), AlgebraError> {
        if other.is_zero() || q.is_zero() {
            return Ok(());
        }
        if self.is_zero() {
            self.pi_power = other.pi_power;
        } else if self.pi_power != other.pi_power {
            return Err(AlgebraError::PiPowerMismatch {
                left: self.pi_power,
                right: other.pi_power,
            });
        }
        for (r, c) in &other.terms {
            // radicands of a canonical scalar need no further square extraction
            let (key, coeff) = self.match_existing(r.clone(), c * q);
            let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
            *slot += coeff;
            if slot.is_zero() {
                self.terms.remove(&key);
            }
        }
        self.normalize_zero();
        Ok(())
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            pi_power: self.pi_power,
            terms: self.terms.iter().map(|(r, c)| (r.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = Self {
            pi_power: self.pi_power + other.pi_power,
            terms: BTreeMap::new(),
        };
        for (ra, ca) in &self.terms {
            for (rb, cb) in &other.terms {
                // √a·√b = g·√((a/g)(b/g)) with g = gcd(a, b)
                let g = ra.gcd(rb);
                let radicand = (ra / &g) * (rb / &g);
                let coeff = ca * cb * Rational::from_integer(BigInt::from_biguint(Sign::Plus, g));
                out.accumulate(radicand, coeff);
            }
        }
        out.normalize_zero();
        out
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            pi_power: self.pi_power,
            terms: self.terms.iter().map(|(r, c)| (r.clone(), c * q)).collect(),
        }
    }

    /// Sum of scalars that must share one π-power.
    pub fn checked_sum<'a>(
        items: impl IntoIterator<Item = &'a ExactScalar>,
    ) -> Result<Self, AlgebraError> {
        items
            .into_iter()
            .try_fold(Self::zero(), |acc, x| acc.checked_add(x))
    }

    pub fn to_f64(&self) -> f64 {
        let body: f64 = self
            .terms
            .iter()
            .map(|(r, c)| rational_to_f64(c) * r.to_f64().unwrap_or(f64::NAN).sqrt())
            .sum();
        body * std::f64::consts::PI.powi(self.pi_power)
    }

    fn accumulate(&mut self, radicand: BigUint, coeff: Rational) {
        if coeff.is_zero() || radicand.is_zero() {
            return;
        }
        let (square, rest) = extract_square(&radicand);
        let coeff = coeff * Rational::from_integer(BigInt::from_biguint(Sign::Plus, square));
        let (key, coeff) = self.match_existing(rest, coeff);
        let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Radicands that survive trial division may still differ from an
    /// existing key by a large square factor; detect that via `r·k` being a
    /// perfect square and rewrite `√r = (√(r·k)/k)·√k`.
    fn match_existing(&self, radicand: BigUint, coeff: Rational) -> (BigUint, Rational) {
        if self.terms.contains_key(&radicand) || radicand.is_one() {
            return (radicand, coeff);
        }
        let bound_sq = BigUint::from(FACTOR_BOUND) * BigUint::from(FACTOR_BOUND);
        for key in self.terms.keys() {
            if key < &bound_sq && radicand < bound_sq {
                continue;
            }
            if let Some(root) = exact_sqrt(&(&radicand * key)) {
                let factor = Rational::new(
                    BigInt::from_biguint(Sign::Plus, root),
                    BigInt::from_biguint(Sign::Plus, key.clone()),
                );
                return (key.clone(), coeff * factor);
            }
        }
        (radicand, coeff)
    }

    fn normalize_zero(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
        if self.terms.is_empty() {
            self.pi_power = 0;
        }
    }
}

/// Splits `n = s²·r` with the square part found by trial division up to
/// [`FACTOR_BOUND`], plus a final perfect-square test on the cofactor.
pub fn extract_square(n: &BigUint) -> (BigUint, BigUint) {
    let mut square = BigUint::one();
    let mut rest = n.clone();
    if let Some(small) = rest.to_u64() {
        let (s, r) = extract_square_u64(small);
        return (BigUint::from(s), BigUint::from(r));
    }
    let mut p: u64 = 2;
    while p <= FACTOR_BOUND {
        let pp = BigUint::from(p * p);
        if pp > rest {
            break;
        }
        let pb = BigUint::from(p);
        while (&rest % &pp).is_zero() {
            rest /= &pp;
            square *= &pb;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if let Some(root) = exact_sqrt(&rest) {
        square *= root;
        rest = BigUint::one();
    }
    (square, rest)
}

fn extract_square_u64(mut n: u64) -> (u64, u64) {
    let mut square = 1u64;
    let mut p = 2u64;
    while p <= FACTOR_BOUND && p.saturating_mul(p) <= n {
        while n.is_multiple_of(p * p) {
            n /= p * p;
            square *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let root = n.isqrt();
    if root * root == n {
        square *= root;
        n = 1;
    }
    (square, n)
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        let wrap = self.pi_power != 0 && self.terms.len() > 1;
        if wrap {
            write!(f, "(")?;
        }
        for (r, c) in &self.terms {
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            if r.is_one() {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "√{r}")?;
            } else {
                write!(f, "{}·√{r}", format_rational(&mag))?;
            }
        }
        if wrap {
            write!(f, ")")?;
        }
        match self.pi_power {
            0 => Ok(()),
            1 => write!(f, "·π"),
            p => write!(f, "·π^{p}"),
        }
    }
}

/// ω_n, the surface area of the unit sphere in ℝⁿ: `2π^{n/2}/Γ(n/2)`.
pub fn omega(n: u32) -> ExactScalar {
    assert!(n >= 1, "omega is defined for n >= 1");
    if n.is_multiple_of(2) {
        let half = n / 2;
        let q = Rational::new(BigInt::from(2), super::rational::factorial(half - 1));
        ExactScalar::from_rational(q).with_pi_power(half as i32)
    } else {
        // 2^{(n+1)/2} π^{(n-1)/2} / (n-2)!!
        let mut double_fact = BigInt::one();
        let mut k = n as i64 - 2;
        while k > 1 {
            double_fact *= k;
            k -= 2;
        }
        let num = BigInt::one() << n.div_ceil(2);
        ExactScalar::from_rational(Rational::new(num, double_fact))
            .with_pi_power(((n - 1) / 2) as i32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, rat};

    fn sqrt(n: u64) -> ExactScalar {
        ExactScalar::sqrt_int(&BigUint::from(n))
    }

    #[test]
    fn square_factor_extraction() {
        let s = sqrt(8).checked_add(&ExactScalar::zero()).unwrap();
        assert_eq!(s, sqrt(2).scale(&rat(2)));
        assert_eq!(s.to_string(), "2·√2");
    }

    #[test]
    fn like_terms_merge() {
        let s = sqrt(2).checked_add(&sqrt(2)).unwrap();
        assert_eq!(s.num_terms(), 1);
        assert_eq!(s, sqrt(2).scale(&rat(2)));
    }

    #[test]
    fn pi_factor_multiplies_through() {
        let a = ExactScalar::from_int(3).with_pi_power(-1);
        let p = a.mul(&sqrt(5));
        assert_eq!(p.pi_power(), -1);
        assert_eq!(p.terms().count(), 1);
        let (r, c) = p.terms().next().unwrap();
        assert_eq!(r, &BigUint::from(5u32));
        assert_eq!(c, &rat(3));
    }

    #[test]
    fn mismatched_pi_powers_do_not_add() {
        let a = ExactScalar::one();
        let b = ExactScalar::pi_pow(1);
        assert!(matches!(
            a.checked_add(&b),
            Err(AlgebraError::PiPowerMismatch { left: 0, right: 1 })
        ));
        // zero is compatible with everything
        assert_eq!(ExactScalar::zero().checked_add(&b).unwrap(), b);
    }

    #[test]
    fn radicals_multiply_and_cancel() {
        let p = sqrt(6).mul(&sqrt(10));
        assert_eq!(p, sqrt(15).scale(&rat(2)));
        assert_eq!(sqrt(3).mul(&sqrt(3)), ExactScalar::from_int(3));
        let zero = sqrt(5).checked_sub(&sqrt(20).scale(&frac(1, 2))).unwrap();
        assert!(zero.is_zero());
        assert_eq!(zero.pi_power(), 0);
    }

    #[test]
    fn sqrt_of_rational() {
        let s = ExactScalar::sqrt_rational(&frac(3, 4)).unwrap();
        assert_eq!(s, sqrt(3).scale(&frac(1, 2)));
        let t = ExactScalar::sqrt_rational(&frac(1, 5)).unwrap();
        assert_eq!(t, sqrt(5).scale(&frac(1, 5)));
        assert!(ExactScalar::sqrt_rational(&rat(-1)).is_err());
    }

    #[test]
    fn large_square_factor_beyond_bound_is_merged() {
        // 1_000_003 is prime and above the trial-division bound.
        let p = 1_000_003u64;
        let big = BigUint::from(p) * BigUint::from(p) * BigUint::from(7u32);
        let a = ExactScalar::sqrt_int(&big);
        assert_eq!(a, sqrt(7).scale(&rat(p as i64)));
    }

    #[test]
    fn omega_values() {
        assert_eq!(omega(1), ExactScalar::from_int(2));
        assert_eq!(omega(2), ExactScalar::from_int(2).with_pi_power(1));
        assert_eq!(omega(3), ExactScalar::from_int(4).with_pi_power(1));
        assert_eq!(omega(4), ExactScalar::from_int(2).with_pi_power(2));
        assert_eq!(
            omega(5),
            ExactScalar::from_rational(frac(8, 3)).with_pi_power(2)
        );
        for n in 1..=9u32 {
            let expected = 2.0 * std::f64::consts::PI.powf(n as f64 / 2.0) / gamma_half(n);
            assert!((omega(n).to_f64() - expected).abs() < 1e-12 * expected);
        }
    }

    // Γ(n/2) by the recurrence from Γ(1/2) = √π and Γ(1) = 1.
    fn gamma_half(n: u32) -> f64 {
        let mut g = if n.is_multiple_of(2) {
            1.0
        } else {
            std::f64::consts::PI.sqrt()
        };
        let mut x = if n.is_multiple_of(2) { 1.0 } else { 0.5 };
        while x < n as f64 / 2.0 {
            g *= x;
            x += 1.0;
        }
        g
    }

    #[test]
    fn display_forms() {
        let s = sqrt(5)
            .checked_add(&ExactScalar::from_rational(frac(-1, 2)))
            .unwrap()
            .with_pi_power(-1);
        assert_eq!(s.to_string(), "(-1/2 + √5)·π^-1");
        assert_eq!(ExactScalar::zero().to_string(), "0");
    }
}
