//! Independent checks. The oracles here never go through the
//! generating-function engines: facet moments come from the barycentric
//! identity, and the moment series uses only geometric-series multiplication.

pub mod suite;

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::algebra::{
    factorial_rat, truncated_series, ExactScalar, LinearForm, Rational, SparsePoly,
};
use crate::polytope::linalg::Point;
use crate::polytope::Polytope;
use crate::tensor::{
    multisets, simplex_moment, surface_prefactor, BigradedTensor, IndexMultiset, TensorError,
};
pub use suite::{run_suite, CheckResult, CheckStatus, SuiteOptions};

/// `Φ_{d−1}^{r,s}(P) = (1/(s!ω_{1+s}))·Σ_F Φ_{d−1}^{r,0}(F) ⊗ u_F^s`, with
/// facet moments integrated simplex by simplex inside `aff(F)`.
pub fn definitional_surface_tensor(
    p: &Polytope,
    r: usize,
    s: usize,
) -> Result<BigradedTensor, TensorError> {
    Ok(definitional_surface_tensors(p, r, &[s])?
        .pop()
        .expect("one tensor per s"))
}

/// [`definitional_surface_tensor`] for several `s`, integrating facet moments once.
pub fn definitional_surface_tensors(
    p: &Polytope,
    r: usize,
    ss: &[usize],
) -> Result<Vec<BigradedTensor>, TensorError> {
    let d = p.dim();
    let xs = multisets(d, r);
    let r_fact = factorial_rat(r as u32).recip();

    // Φ_{d−1}^{r,0}(F) and u_F = N/‖N‖ per facet
    let per_facet: Vec<(Vec<ExactScalar>, ExactScalar)> = p
        .facets()
        .par_iter()
        .map(|f| {
            let simplices: Vec<Vec<Point>> = f
                .triangulation()
                .iter()
                .map(|s| s.iter().map(|&k| p.vertices()[k].clone()).collect())
                .collect();
            let moments = xs
                .iter()
                .map(|x| {
                    let alpha = IndexMultiset::new(x.clone()).multiplicities(d);
                    let mut acc = ExactScalar::zero();
                    for verts in &simplices {
                        acc = acc.checked_add(&simplex_moment(verts, &alpha)?)?;
                    }
                    Ok(acc.scale(&r_fact))
                })
                .collect::<Result<Vec<_>, TensorError>>()?;
            Ok((moments, ExactScalar::sqrt_rational(&f.norm_sq().recip())?))
        })
        .collect::<Result<_, TensorError>>()?;

    ss.iter()
        .map(|&s| {
            let us = multisets(d, s);
            let prefactor = surface_prefactor(s);
            let normals: Vec<Vec<ExactScalar>> = p
                .facets()
                .iter()
                .zip(&per_facet)
                .map(|(f, (_, inv_norm))| {
                    us.iter()
                        .map(|u| {
                            u.iter().fold(ExactScalar::one(), |acc, &k| {
                                acc.mul(&inv_norm.scale(&f.normal()[k]))
                            })
                        })
                        .collect()
                })
                .collect();
            let mut entries = BTreeMap::new();
            for (xi, x) in xs.iter().enumerate() {
                for (ui, u) in us.iter().enumerate() {
                    let mut acc = ExactScalar::zero();
                    for ((moments, _), normal) in per_facet.iter().zip(&normals) {
                        acc = acc.checked_add(&moments[xi].mul(&normal[ui]))?;
                    }
                    entries.insert((x.clone(), u.clone()), acc.mul(&prefactor));
                }
            }
            Ok(BigradedTensor::new(d, d - 1, r, s, entries))
        })
        .collect()
}

/// The expanded moment generating function and what it encodes.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSeries {
    /// `(1/V(P))·Σ_σ V(σ)/∏_{k∈σ} L_k` up to total degree `max_degree`.
    pub series: SparsePoly,
    pub max_degree: usize,
    pub volume: Rational,
    /// Normalized moments `m_a = (1/V(P))·∫_P x^a`, keyed by exponent vector.
    pub moments: BTreeMap<Vec<u32>, Rational>,
    /// `Φ_d^{r,0}(P)` for `r = 0..=max_degree`.
    pub volume_tensors: Vec<BigradedTensor>,
}

pub fn moment_gf_series(p: &Polytope, max_degree: usize) -> MomentSeries {
    moment_gf_series_with_apex(p, max_degree, None)
}

/// As [`moment_gf_series`], triangulating from the given apex.
pub fn moment_gf_series_with_apex(
    p: &Polytope,
    max_degree: usize,
    apex: Option<usize>,
) -> MomentSeries {
    let d = p.dim();
    let simplices = p.triangulation(apex);
    let volume: Rational = simplices.iter().map(|s| p.simplex_volume(s)).sum();
    let series = simplices
        .par_iter()
        .map(|s| {
            let forms: Vec<LinearForm> = s.iter().map(|&k| p.linear_form(k)).collect();
            let weight = p.simplex_volume(s) / &volume;
            truncated_series(&SparsePoly::one(d), &forms, max_degree as u32).scale(&weight)
        })
        .reduce(|| SparsePoly::zero(d), |a, b| &a + &b);

    let d_fact = factorial_rat(d as u32);
    let mut moments = BTreeMap::new();
    let mut volume_tensors = Vec::with_capacity(max_degree + 1);
    for r in 0..=max_degree {
        // coefficient of t^a is ((|a|+d)!/(∏a!·d!))·m_a
        let grading = factorial_rat((r + d) as u32) / &d_fact;
        let r_fact = factorial_rat(r as u32);
        let mut entries = BTreeMap::new();
        for key in multisets(d, r) {
            let a = IndexMultiset::new(key.clone()).multiplicities(d);
            let a_fact: Rational = a.iter().map(|&k| factorial_rat(k)).product();
            let m = series.coefficient(&a) * a_fact / &grading;
            entries.insert(
                (key, Vec::new()),
                ExactScalar::from_rational(&volume * &m / &r_fact),
            );
            moments.insert(a, m);
        }
        volume_tensors.push(BigradedTensor::new(d, d, r, 0, entries));
    }
    MomentSeries {
        series,
        max_degree,
        volume,
        moments,
        volume_tensors,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangulationReport {
    pub apices: Vec<usize>,
    pub max_degree: usize,
    pub identical: bool,
    /// First apex whose series differs from the first apex's.
    pub mismatch: Option<usize>,
}

/// Expands the moment series from every vertex as fan apex and compares.
pub fn triangulation_independence(p: &Polytope, max_degree: usize) -> TriangulationReport {
    let apices: Vec<usize> = (0..p.num_vertices()).collect();
    let reference = moment_gf_series_with_apex(p, max_degree, Some(apices[0])).series;
    let mismatch = apices[1..]
        .iter()
        .copied()
        .find(|&a| moment_gf_series_with_apex(p, max_degree, Some(a)).series != reference);
    TriangulationReport {
        apices,
        max_degree,
        identical: mismatch.is_none(),
        mismatch,
    }
}
