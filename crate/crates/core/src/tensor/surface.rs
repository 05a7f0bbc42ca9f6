//! The three surface-tensor engines: closed formula via `e_k^I`, derivative
//! extraction from `1/L_F`, and series extraction from the generating function.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;

use super::{assemble, contribution, int, multiset_partitions, multisets, BigradedTensor};
use super::{e_elem, FacetContribution, IndexMultiset, Method, TensorError};
use crate::adjoint::facet_adjoint;
use crate::algebra::{expand_product, factorial_rat, truncated_series, LinearForm};
use crate::algebra::{Rational, SparsePoly};
use crate::polytope::linalg::Point;
use crate::polytope::Polytope;

/// `L_F = ∏_{k∈F} L_k`, expanded.
pub fn facet_form_product(p: &Polytope, facet: usize) -> SparsePoly {
    let forms: Vec<LinearForm> = p
        .facet(facet)
        .vertex_ids()
        .iter()
        .map(|&k| p.linear_form(k))
        .collect();
    expand_product(p.dim(), &forms)
}

/// `∂_B L(0)` by repeated symbolic differentiation.
pub fn form_derivative_at_zero(l: &SparsePoly, block: &IndexMultiset) -> Rational {
    block
        .indices()
        .iter()
        .fold(l.clone(), |acc, &v| acc.derivative(v))
        .constant_term()
}

/// `Σ_k (−1)^k k! Σ_{partitions into k blocks of size ≤ max_part} ∏ value(block)`.
/// Block values are memoized in `cache`, which may be shared across calls
/// for the same facet.
fn partition_sum(
    i: &IndexMultiset,
    max_part: usize,
    cache: &mut BTreeMap<IndexMultiset, Rational>,
    value: &dyn Fn(&IndexMultiset) -> Result<Rational, TensorError>,
) -> Result<Rational, TensorError> {
    let mut total = Rational::zero();
    for k in 1..=i.len() {
        let mut inner = Rational::zero();
        for partition in multiset_partitions(i, k, max_part) {
            let mut prod = int(1);
            for block in partition {
                let v = match cache.get(&block) {
                    Some(v) => v.clone(),
                    None => {
                        let v = value(&block)?;
                        cache.insert(block, v.clone());
                        v
                    }
                };
                prod *= v;
                if prod.is_zero() {
                    break;
                }
            }
            inner += prod;
        }
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        total += sign * factorial_rat(k as u32) * inner;
    }
    Ok(total)
}

/// `∂_I (1/L)(0)` for a polynomial with `L(0) = 1`, by Faà di Bruno over
/// set partitions of the positions of `I`.
pub fn derivative_extraction(l: &SparsePoly, i: &IndexMultiset) -> Rational {
    if i.is_empty() {
        return l.constant_term().recip();
    }
    partition_sum(i, i.len(), &mut BTreeMap::new(), &|b| {
        Ok(form_derivative_at_zero(l, b))
    })
    .expect("symbolic derivatives cannot fail")
}

fn facet_rows(p: &Polytope, facet: usize) -> Vec<Point> {
    p.facet(facet)
        .vertex_ids()
        .iter()
        .map(|&k| p.vertices()[k].clone())
        .collect()
}

fn sign_for(r: usize) -> Rational {
    if r.is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

/// Per-facet bracket `Σ_k (−1)^{k+r} k! Σ_{partitions} ∏_j e^{I_j}(F)` for a
/// simplicial facet, with blocks of size at most `d`.
pub fn c_coefficient(
    p: &Polytope,
    facet: usize,
    i: &IndexMultiset,
) -> Result<Rational, TensorError> {
    let rows = facet_rows(p, facet);
    let sum = partition_sum(i, p.dim(), &mut BTreeMap::new(), &|b| e_elem(b, &rows))?;
    Ok(sign_for(i.len()) * sum)
}

fn require_simplex_facets(p: &Polytope, method: Method) -> Result<(), TensorError> {
    match p.facets().iter().position(|f| !f.is_simplex(p.dim())) {
        None => Ok(()),
        Some(i) => Err(TensorError::MethodUnsupported {
            method,
            reason: format!(
                "facet {i} has {} vertices; this method needs every facet to be a simplex",
                p.facet(i).vertex_ids().len()
            ),
        }),
    }
}

/// `(d−1)! / ((r+d−1)!·r!)`: turns `∂_I(1/L_F)(0)` into `(1/r!)∫_F x^I / V(F)`.
fn bracket_scale(d: usize, r: usize) -> Rational {
    factorial_rat(d as u32 - 1) / (factorial_rat((r + d - 1) as u32) * factorial_rat(r as u32))
}

/// x-values for every facet and sorted `I` of length `r`, where `bracket`
/// returns `∂_I(1/L_F)(0)` using a per-facet block cache.
fn per_facet_brackets<F>(
    p: &Polytope,
    r: usize,
    bracket: F,
) -> Result<Vec<FacetContribution>, TensorError>
where
    F: Fn(
            usize,
            &IndexMultiset,
            &mut BTreeMap<IndexMultiset, Rational>,
        ) -> Result<Rational, TensorError>
        + Sync,
{
    let d = p.dim();
    let scale = bracket_scale(d, r);
    let keys = multisets(d, r);
    (0..p.facets().len())
        .into_par_iter()
        .map(|fi| {
            let mut c = contribution(p, fi);
            let mut cache = BTreeMap::new();
            for key in &keys {
                let value = if r == 0 {
                    int(1)
                } else {
                    bracket(fi, &IndexMultiset::new(key.clone()), &mut cache)? * &scale
                };
                c.x_values.insert(key.clone(), value);
            }
            Ok(c)
        })
        .collect()
}

/// Per-facet x-values `(1/r!)∫_F x^I / V(F)` from one of the three engines.
fn engine_x_values(
    p: &Polytope,
    r: usize,
    method: Method,
) -> Result<Vec<FacetContribution>, TensorError> {
    match method {
        Method::Formula => {
            require_simplex_facets(p, method)?;
            let rows: Vec<Vec<Point>> = (0..p.facets().len()).map(|fi| facet_rows(p, fi)).collect();
            per_facet_brackets(p, r, |fi, i, cache| {
                let sum = partition_sum(i, p.dim(), cache, &|b| e_elem(b, &rows[fi]))?;
                Ok(sign_for(i.len()) * sum)
            })
        }
        Method::Derivative => {
            require_simplex_facets(p, method)?;
            let forms: Vec<SparsePoly> = (0..p.facets().len())
                .map(|fi| facet_form_product(p, fi))
                .collect();
            per_facet_brackets(p, r, |fi, i, cache| {
                partition_sum(i, i.len(), cache, &|b| {
                    Ok(form_derivative_at_zero(&forms[fi], b))
                })
            })
        }
        Method::Series => Ok(series_x_values(p, &facet_series(p, r), r)),
        Method::Definitional => unreachable!("the oracle has its own assembly"),
    }
}

/// `Φ_{d−1}^{r,s}(P)` by the chosen engine.
pub fn surface_tensor(
    p: &Polytope,
    r: usize,
    s: usize,
    method: Method,
) -> Result<BigradedTensor, TensorError> {
    Ok(surface_tensors(p, r, &[s], method)?
        .pop()
        .expect("one tensor per s"))
}

/// `Φ_{d−1}^{r,s}(P)` for several `s`, sharing the position part across them.
pub fn surface_tensors(
    p: &Polytope,
    r: usize,
    ss: &[usize],
    method: Method,
) -> Result<Vec<BigradedTensor>, TensorError> {
    if method == Method::Definitional {
        return crate::oracle::definitional_surface_tensors(p, r, ss);
    }
    let per_facet = engine_x_values(p, r, method)?;
    ss.iter()
        .map(|&s| assemble(p.dim(), r, s, per_facet.clone()))
        .collect()
}

/// `Ad_F / ∏_{k∈F} L_k` per facet, truncated at total degree `max_r`.
fn facet_series(p: &Polytope, max_r: usize) -> Vec<SparsePoly> {
    (0..p.facets().len())
        .into_par_iter()
        .map(|fi| {
            let forms: Vec<LinearForm> = p
                .facet(fi)
                .vertex_ids()
                .iter()
                .map(|&k| p.linear_form(k))
                .collect();
            truncated_series(&facet_adjoint(p, fi), &forms, max_r as u32)
        })
        .collect()
}

/// Reads the rank-`r` x-values off the per-facet series.
fn series_x_values(p: &Polytope, series: &[SparsePoly], r: usize) -> Vec<FacetContribution> {
    let d = p.dim();
    // coefficient of t^a is ((r+d−1)!/(d−1)!)·(r!/∏a!)·(1/r!)∫_F x^a / V(F)
    let grading = factorial_rat(d as u32 - 1) / factorial_rat((r + d - 1) as u32);
    series
        .iter()
        .enumerate()
        .map(|(fi, ser)| {
            let mut c = contribution(p, fi);
            for key in multisets(d, r) {
                let idx = IndexMultiset::new(key.clone());
                let coeff = ser.coefficient(&idx.multiplicities(d));
                c.x_values
                    .insert(key, coeff * &grading / int(idx.multinomial(d)));
            }
            c
        })
        .collect()
}

/// Expands `Σ_F V(F)·Ad_F·u_F^s / ∏_{k∈F} L_k` to total degree `max_r` and
/// reads off the surface tensors for `r = 0..=max_r`.
pub fn gf_series_check(
    p: &Polytope,
    s: usize,
    max_r: usize,
) -> Result<Vec<BigradedTensor>, TensorError> {
    let series = facet_series(p, max_r);
    (0..=max_r)
        .map(|r| assemble(p.dim(), r, s, series_x_values(p, &series, r)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, rat};
    use crate::algebra::ExactScalar;
    use crate::fixtures;

    fn m(xs: &[usize]) -> IndexMultiset {
        IndexMultiset::new(xs.to_vec())
    }

    fn all_methods(p: &Polytope, r: usize, s: usize) -> BigradedTensor {
        let reference = surface_tensor(p, r, s, Method::Definitional).unwrap();
        for method in [Method::Formula, Method::Derivative, Method::Series] {
            let t = surface_tensor(p, r, s, method).unwrap();
            assert!(
                t.same_entries(&reference),
                "{method} disagrees at r={r}, s={s}"
            );
        }
        reference
    }

    #[test]
    fn unit_square_vector() {
        let t = all_methods(&fixtures::unit_square(), 1, 0);
        assert_eq!(t.get(&[0], &[]), ExactScalar::one());
        assert_eq!(t.get(&[1], &[]), ExactScalar::one());
    }

    #[test]
    fn unit_square_rank_two() {
        let t = all_methods(&fixtures::unit_square(), 2, 0);
        assert_eq!(t.get(&[0, 0], &[]), ExactScalar::from_rational(frac(5, 12)));
        assert_eq!(t.get(&[1, 0], &[]), ExactScalar::from_rational(frac(1, 4)));
        assert_eq!(t.get(&[1, 1], &[]), ExactScalar::from_rational(frac(5, 12)));
    }

    #[test]
    fn rectangle_normal_tensor() {
        let t = all_methods(&fixtures::rectangle(rat(2), rat(3)), 0, 2);
        let over_pi = |q| ExactScalar::from_rational(q).with_pi_power(-1);
        // (1/8π)·(2b·e1⊗e1 + 2a·e2⊗e2) at a=2, b=3
        assert_eq!(t.get(&[], &[0, 0]), over_pi(frac(6, 8)));
        assert_eq!(t.get(&[], &[1, 1]), over_pi(frac(4, 8)));
        assert!(t.get(&[], &[0, 1]).is_zero());
        assert!(all_methods(&fixtures::rectangle(rat(2), rat(3)), 0, 1).is_zero());
    }

    #[test]
    fn octahedron_rank_two_is_scaled_identity() {
        let t = all_methods(&fixtures::octahedron(), 2, 0);
        let diag = ExactScalar::sqrt_int(&3u32.into()).scale(&frac(1, 6));
        for j in 0..3 {
            for k in 0..3 {
                let want = if j == k {
                    diag.clone()
                } else {
                    ExactScalar::zero()
                };
                assert_eq!(t.get(&[j, k], &[]), want);
            }
        }
    }

    #[test]
    fn octahedron_brackets() {
        let oct = fixtures::octahedron();
        for fi in 0..oct.facets().len() {
            let f = oct.facet(fi);
            // the facet meets axis j at ±1
            let v: Vec<Rational> = (0..3)
                .map(|j| {
                    f.vertex_ids()
                        .iter()
                        .map(|&k| oct.vertices()[k][j].clone())
                        .sum()
                })
                .collect();
            assert_eq!(c_coefficient(&oct, fi, &m(&[0, 2])).unwrap(), &v[0] * &v[2]);
        }
    }

    #[test]
    fn unit_square_brackets() {
        let sq = fixtures::unit_square();
        let got: Vec<Rational> = (0..4)
            .map(|fi| c_coefficient(&sq, fi, &m(&[0])).unwrap())
            .collect();
        assert_eq!(got, vec![rat(1), rat(2), rat(1), rat(0)]);
    }

    #[test]
    fn derivative_matches_elementary_symmetric() {
        let oct = fixtures::octahedron();
        let cube = fixtures::standard_simplex(3);
        for p in [&oct, &cube] {
            for fi in 0..p.facets().len() {
                let lf = facet_form_product(p, fi);
                let rows: Vec<Point> = p
                    .facet(fi)
                    .vertex_ids()
                    .iter()
                    .map(|&k| p.vertices()[k].clone())
                    .collect();
                for r in 1..=3 {
                    for key in multisets(3, r) {
                        let i = m(&key);
                        let sign = if r % 2 == 0 { rat(1) } else { rat(-1) };
                        assert_eq!(
                            form_derivative_at_zero(&lf, &i),
                            sign * e_elem(&i, &rows).unwrap()
                        );
                        assert_eq!(
                            derivative_extraction(&lf, &i),
                            c_coefficient(p, fi, &i).unwrap()
                        );
                    }
                }
                // four derivatives of a cubic vanish
                assert!(form_derivative_at_zero(&lf, &m(&[0, 1, 2, 2])).is_zero());
            }
        }
    }

    #[test]
    fn first_order_derivative() {
        let tri = fixtures::standard_simplex(2);
        let lf = facet_form_product(&tri, 1);
        let rows: Vec<Point> = tri
            .facet(1)
            .vertex_ids()
            .iter()
            .map(|&k| tri.vertices()[k].clone())
            .collect();
        assert_eq!(
            derivative_extraction(&lf, &m(&[1])),
            e_elem(&m(&[1]), &rows).unwrap()
        );
    }

    #[test]
    fn series_rank_zero_is_half_surface_area() {
        let q = fixtures::quadrilateral();
        let ts = gf_series_check(&q, 0, 2).unwrap();
        let half: ExactScalar = q
            .facets()
            .iter()
            .fold(ExactScalar::zero(), |a, f| {
                a.checked_add(f.volume()).unwrap()
            })
            .scale(&frac(1, 2));
        assert_eq!(ts[0].get(&[], &[]), half);
        assert_eq!(ts[0].get(&[], &[]), all_methods(&q, 0, 0).get(&[], &[]));
    }

    #[test]
    fn non_simplicial_facets_route_to_series() {
        let cube = fixtures::perturbed_cube();
        for method in [Method::Formula, Method::Derivative] {
            assert!(matches!(
                surface_tensor(&cube, 1, 0, method),
                Err(TensorError::MethodUnsupported { .. })
            ));
        }
        for (r, s) in [(0, 0), (1, 1), (2, 0), (1, 2)] {
            let a = surface_tensor(&cube, r, s, Method::Series).unwrap();
            let b = surface_tensor(&cube, r, s, Method::Definitional).unwrap();
            assert!(a.same_entries(&b), "r={r} s={s}");
        }
    }

    #[test]
    fn odd_s_entries_are_rational() {
        let t = surface_tensor(&fixtures::quadrilateral(), 1, 1, Method::Formula).unwrap();
        for (_, v) in t.entries() {
            assert!(v.is_zero() || v.terms().all(|(r, _)| r == &1u32.into()));
        }
    }
}
