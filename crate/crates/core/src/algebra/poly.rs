//! Sparse multivariate polynomials over ℚ in variables `t_1..t_d`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, Rational};

/// Exponent vector ordered graded-lexicographically: lower total degree
/// first, then `t_1` before `t_2` before ... within a degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn constant(num_vars: usize) -> Self {
        Self(vec![0; num_vars])
    }

    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[i] = 1;
        Self(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    num_vars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl SparsePoly {
    pub fn zero(num_vars: usize) -> Self {
        Self {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: Rational) -> Self {
        let mut p = Self::zero(num_vars);
        p.add_term(Monomial::constant(num_vars), c);
        p
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, Rational::one())
    }

    /// The variable `t_{i+1}` (0-based `i`).
    pub fn var(num_vars: usize, i: usize) -> Self {
        assert!(i < num_vars, "variable index {i} out of range");
        let mut p = Self::zero(num_vars);
        p.add_term(Monomial::var(num_vars, i), Rational::one());
        p
    }

    pub fn from_terms(
        num_vars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Self {
        let mut p = Self::zero(num_vars);
        for (e, c) in terms {
            assert_eq!(e.len(), num_vars, "exponent vector length mismatch");
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Rational {
        self.terms
            .get(&Monomial(exponents.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&vec![0; self.num_vars])
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero(self.num_vars);
        }
        Self {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }

    /// Drops every term of total degree above `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> Self {
        Self {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= max_degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms of total degree exactly `degree`.
    pub fn homogeneous_part(&self, degree: u32) -> Self {
        Self {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Product with every term of degree above `max_degree` discarded.
    pub fn mul_truncated(&self, other: &Self, max_degree: u32) -> Self {
        assert_eq!(self.num_vars, other.num_vars);
        let mut out = Self::zero(self.num_vars);
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            if da > max_degree {
                break;
            }
            for (mb, cb) in &other.terms {
                if da + mb.degree() > max_degree {
                    break;
                }
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.num_vars), |acc, _| &acc * self)
    }

    /// Formal partial derivative with respect to `t_{var+1}`.
    pub fn derivative(&self, var: usize) -> Self {
        assert!(var < self.num_vars, "variable index {var} out of range");
        let mut out = Self::zero(self.num_vars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] -= 1;
            out.add_term(Monomial(exps), c * Rational::from_integer(e.into()));
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.num_vars, "point dimension mismatch");
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    term *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += term;
        }
        acc
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        assert_eq!(self.num_vars, rhs.num_vars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        self + &(-rhs)
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        assert_eq!(self.num_vars, rhs.num_vars);
        let mut out = SparsePoly::zero(self.num_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for SparsePoly {
            type Output = SparsePoly;
            fn $method(self, rhs: SparsePoly) -> SparsePoly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            format!("t{}", i + 1)
                        } else {
                            format!("t{}^{}", i + 1, e)
                        }
                    })
                    .collect();
            if vars.is_empty() {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&mag), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// `1 + c_1 t_1 + ... + c_d t_d`; the constant term is always one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm {
    coefficients: Vec<Rational>,
}

impl LinearForm {
    pub fn new(coefficients: Vec<Rational>) -> Self {
        Self { coefficients }
    }

    /// `L_k = 1 - x_{k,1} t_1 - ... - x_{k,d} t_d` for a vertex `x_k`.
    pub fn for_vertex(x: &[Rational]) -> Self {
        Self {
            coefficients: x.iter().map(|c| -c).collect(),
        }
    }

    pub fn constant(&self) -> Rational {
        Rational::one()
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn num_vars(&self) -> usize {
        self.coefficients.len()
    }

    pub fn to_poly(&self) -> SparsePoly {
        let d = self.coefficients.len();
        let mut p = SparsePoly::one(d);
        for (i, c) in self.coefficients.iter().enumerate() {
            p.add_term(Monomial::var(d, i), c.clone());
        }
        p
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.coefficients
            .iter()
            .zip(point)
            .fold(Rational::one(), |acc, (c, x)| acc + c * x)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// Expands `∏ forms` into a single polynomial.
pub fn expand_product(num_vars: usize, forms: &[LinearForm]) -> SparsePoly {
    forms
        .iter()
        .fold(SparsePoly::one(num_vars), |acc, l| &acc * &l.to_poly())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, rat};

    fn p(d: usize, terms: &[(&[u32], i64)]) -> SparsePoly {
        SparsePoly::from_terms(d, terms.iter().map(|(e, c)| (e.to_vec(), rat(*c))))
    }

    #[test]
    fn derivative_of_linear_form() {
        let l = LinearForm::for_vertex(&[rat(2), rat(1)]).to_poly();
        assert_eq!(l.derivative(0), SparsePoly::constant(2, rat(-2)));
    }

    #[test]
    fn derivative_of_constant_is_zero() {
        assert!(SparsePoly::constant(2, rat(7)).derivative(1).is_zero());
    }

    #[test]
    fn derivative_of_monomial() {
        let q = p(2, &[(&[2, 1], 1)]);
        assert_eq!(q.derivative(0), p(2, &[(&[1, 1], 2)]));
    }

    #[test]
    fn graded_lex_order_and_display() {
        let q = p(2, &[(&[0, 1], -2), (&[1, 0], -3), (&[0, 0], 1)]);
        assert_eq!(q.to_string(), "1 - 3*t1 - 2*t2");
        let r = p(2, &[(&[1, 1], 2), (&[2, 0], 1), (&[0, 2], 1)]);
        assert_eq!(r.to_string(), "t1^2 + 2*t1*t2 + t2^2");
        assert_eq!(r.degree(), Some(2));
        assert_eq!(SparsePoly::zero(2).degree(), None);
    }

    #[test]
    fn eval_and_scale() {
        let q = p(2, &[(&[0, 0], 1), (&[1, 0], -3), (&[0, 1], -2)]);
        assert_eq!(q.eval(&[frac(1, 5), frac(1, 5)]), rat(0));
        assert_eq!(q.scale(&frac(1, 2)).constant_term(), frac(1, 2));
    }

    #[test]
    fn truncated_product_matches_full_product() {
        let a = p(2, &[(&[0, 0], 1), (&[1, 0], 2), (&[1, 1], -1)]);
        let b = p(2, &[(&[0, 0], 3), (&[0, 1], 1), (&[2, 0], 5)]);
        for deg in 0..5 {
            assert_eq!(a.mul_truncated(&b, deg), (&a * &b).truncate(deg));
        }
    }

    #[test]
    fn cancellation_removes_terms() {
        let a = p(1, &[(&[1], 1)]);
        assert!((&a - &a).is_zero());
    }
}
