//! Minkowski volume and surface tensors.
//!
//! Tensors are stored as array components keyed by sorted multi-indices, so
//! `T[(0,1)]` is the `(0,1)` component of the symmetric array, not the
//! coefficient of `t_0 t_1` in the tensor polynomial. See
//! [`BigradedTensor::polynomial_coefficient`] for the latter.

pub mod combinatorics;
pub mod moments;
pub mod surface;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::algebra::rational::rational_pow;
use crate::algebra::{factorial_rat, omega, AlgebraError, ExactScalar, Rational};
use crate::polytope::linalg::Point;
use crate::polytope::{Polytope, PolytopeError};
pub use combinatorics::{e_elem, multiset_partitions, multisets, set_partitions, IndexMultiset};
pub use moments::{simplex_moment, simplex_moment_ratio, volume_tensor};
pub use surface::{
    c_coefficient, derivative_extraction, facet_form_product, form_derivative_at_zero,
    gf_series_check, surface_tensor, surface_tensors,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TensorError {
    #[error("method {method} is not supported here: {reason}")]
    MethodUnsupported { method: Method, reason: String },
    #[error("multi-index of length {rank} exceeds the {dim} facet vertices")]
    RankTooHigh { rank: usize, dim: usize },
    #[error("simplex is degenerate")]
    DegenerateSimplex,
    #[error("unknown method {0:?}; expected formula, derivative, series or definitional")]
    UnknownMethod(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

impl TensorError {
    pub fn code(&self) -> &'static str {
        match self {
            Self::MethodUnsupported { .. } => "MethodUnsupported",
            Self::RankTooHigh { .. } => "RankTooHigh",
            Self::DegenerateSimplex => "DegenerateSimplex",
            Self::UnknownMethod(_) => "UnknownMethod",
            Self::Algebra(AlgebraError::PiPowerMismatch { .. }) => "PiPowerMismatch",
            Self::Algebra(_) => "AlgebraError",
            Self::Polytope(e) => e.code(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Formula,
    Derivative,
    Series,
    Definitional,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Formula,
        Method::Derivative,
        Method::Series,
        Method::Definitional,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Formula => "formula",
            Method::Derivative => "derivative",
            Method::Series => "series",
            Method::Definitional => "definitional",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = TensorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| TensorError::UnknownMethod(s.to_string()))
    }
}

/// One facet's share of a surface tensor before the normal and the
/// `1/(s!·ω_{1+s})` prefactor are attached.
#[derive(Debug, Clone, PartialEq)]
pub struct FacetContribution {
    pub facet: usize,
    /// `(1/r!)·∫_F x^I / V(F)`, keyed by sorted `I`.
    pub x_values: BTreeMap<Vec<usize>, Rational>,
    pub normal: Point,
    pub norm_sq: Rational,
    /// `V(F)/‖N‖`, which is rational.
    pub volume_over_norm: Rational,
}

impl FacetContribution {
    /// `V(F)·u_F^J` for a sorted u-index `J`.
    pub fn weighted_normal_power(&self, j: &[usize]) -> Result<ExactScalar, AlgebraError> {
        let s = j.len() as i32;
        let prod: Rational = j.iter().map(|&k| self.normal[k].clone()).product();
        let base = &self.volume_over_norm * prod;
        // ‖N‖^{1-s}
        if s % 2 == 1 {
            Ok(ExactScalar::from_rational(
                base * rational_pow(&self.norm_sq, (1 - s) / 2),
            ))
        } else {
            Ok(ExactScalar::sqrt_rational(&self.norm_sq)?
                .scale(&(base * rational_pow(&self.norm_sq, -s / 2))))
        }
    }
}

/// Symmetric tensor of rank `r + s`; rank `r` in position, rank `s` in normals.
#[derive(Debug, Clone, PartialEq)]
pub struct BigradedTensor {
    pub d: usize,
    pub j: usize,
    pub r: usize,
    pub s: usize,
    entries: BTreeMap<(Vec<usize>, Vec<usize>), ExactScalar>,
    per_facet: Option<Vec<FacetContribution>>,
}

impl BigradedTensor {
    pub fn new(
        d: usize,
        j: usize,
        r: usize,
        s: usize,
        entries: BTreeMap<(Vec<usize>, Vec<usize>), ExactScalar>,
    ) -> Self {
        Self {
            d,
            j,
            r,
            s,
            entries,
            per_facet: None,
        }
    }

    pub fn with_per_facet(mut self, per_facet: Vec<FacetContribution>) -> Self {
        self.per_facet = Some(per_facet);
        self
    }

    pub fn per_facet(&self) -> Option<&[FacetContribution]> {
        self.per_facet.as_deref()
    }

    /// Every sorted key, including zero entries, in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = (&(Vec<usize>, Vec<usize>), &ExactScalar)> {
        self.entries.iter()
    }

    /// Component at arbitrary (unsorted) index tuples.
    pub fn get(&self, x: &[usize], u: &[usize]) -> ExactScalar {
        let mut x = x.to_vec();
        let mut u = u.to_vec();
        x.sort_unstable();
        u.sort_unstable();
        self.entries.get(&(x, u)).cloned().unwrap_or_default()
    }

    /// Coefficient of `t^a w^b` in `Σ T_{I,J} t_I w_J`; the component times both multinomials.
    pub fn polynomial_coefficient(&self, x: &[usize], u: &[usize]) -> ExactScalar {
        let mx = IndexMultiset::new(x.to_vec()).multinomial(self.d);
        let mu = IndexMultiset::new(u.to_vec()).multinomial(self.d);
        self.get(x, u).scale(&Rational::from_integer(mx * mu))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.values().all(ExactScalar::is_zero)
    }

    /// Entries only; per-facet data is ignored.
    pub fn same_entries(&self, other: &Self) -> bool {
        (self.d, self.j, self.r, self.s) == (other.d, other.j, other.r, other.s)
            && self.entries == other.entries
    }
}

/// `1/(s!·ω_{1+s})`.
pub fn surface_prefactor(s: usize) -> ExactScalar {
    let w = omega(s as u32 + 1);
    let (_, c) = w.terms().next().expect("omega is nonzero");
    let inv = (c * factorial_rat(s as u32)).recip();
    ExactScalar::from_rational(inv).with_pi_power(-w.pi_power())
}

/// Per-facet contribution skeleton with the facet's normal data filled in.
pub(crate) fn contribution(p: &Polytope, facet: usize) -> FacetContribution {
    let f = p.facet(facet);
    FacetContribution {
        facet,
        x_values: BTreeMap::new(),
        normal: f.normal().to_vec(),
        norm_sq: f.norm_sq().clone(),
        volume_over_norm: f.area_ratio() / factorial_rat(p.dim() as u32 - 1),
    }
}

/// `(1/(s!ω_{1+s}))·Σ_F x_F[I]·V(F)·u_F^J` over all sorted keys.
pub(crate) fn assemble(
    d: usize,
    r: usize,
    s: usize,
    per_facet: Vec<FacetContribution>,
) -> Result<BigradedTensor, TensorError> {
    let prefactor = surface_prefactor(s);
    let xs = multisets(d, r);
    let us = multisets(d, s);
    let mut entries = BTreeMap::new();
    let weights: Vec<Vec<ExactScalar>> = per_facet
        .iter()
        .map(|c| us.iter().map(|j| c.weighted_normal_power(j)).collect())
        .collect::<Result<_, _>>()?;
    for x in &xs {
        for (ui, u) in us.iter().enumerate() {
            let mut acc = ExactScalar::zero();
            for (c, w) in per_facet.iter().zip(&weights) {
                let Some(xv) = c.x_values.get(x) else {
                    continue;
                };
                acc.add_scaled(&w[ui], xv)?;
            }
            entries.insert((x.clone(), u.clone()), acc.mul(&prefactor));
        }
    }
    Ok(BigradedTensor::new(d, d - 1, r, s, entries).with_per_facet(per_facet))
}

pub(crate) fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::frac;

    #[test]
    fn prefactors() {
        // 1/ω_1 = 1/2, 1/(1!·ω_2) = 1/(2π), 1/(2!·ω_3) = 1/(8π)
        assert_eq!(surface_prefactor(0), ExactScalar::from_rational(frac(1, 2)));
        assert_eq!(
            surface_prefactor(1),
            ExactScalar::from_rational(frac(1, 2)).with_pi_power(-1)
        );
        assert_eq!(
            surface_prefactor(2),
            ExactScalar::from_rational(frac(1, 8)).with_pi_power(-1)
        );
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.as_str().parse::<Method>().unwrap(), m);
        }
        assert!("fast".parse::<Method>().is_err());
    }
}
