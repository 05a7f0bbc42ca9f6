//! Exact polynomial moments of simplices via the barycentric identity
//! `∫_Δ λ^β = k!·V(Δ)·∏β!/(k+|β|)!`.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{BigradedTensor, TensorError};
use crate::algebra::{factorial_rat, ExactScalar, Rational, SparsePoly};
use crate::polytope::linalg::{gram_determinant, Point};
use crate::polytope::Polytope;

/// `(1/V(Δ))·∫_Δ x^α` for the simplex with the given `k+1` vertices in `ℝ^d`.
/// The simplex may be lower-dimensional than the ambient space.
pub fn simplex_moment_ratio(vertices: &[Point], alpha: &[u32]) -> Rational {
    let nv = vertices.len();
    let k = nv - 1;
    // x_j = Σ_i λ_i v_{i,j}
    let coords: Vec<SparsePoly> = (0..alpha.len())
        .map(|j| {
            let mut p = SparsePoly::zero(nv);
            for (i, v) in vertices.iter().enumerate() {
                p = &p + &SparsePoly::var(nv, i).scale(&v[j]);
            }
            p
        })
        .collect();
    let mut expanded = SparsePoly::one(nv);
    for (p, &a) in coords.iter().zip(alpha) {
        expanded = &expanded * &p.pow(a);
    }
    let total: u32 = alpha.iter().sum();
    let scale = factorial_rat(k as u32) / factorial_rat(k as u32 + total);
    let mut acc = Rational::zero();
    for (mono, c) in expanded.terms() {
        let beta: Rational = mono.exponents().iter().map(|&b| factorial_rat(b)).product();
        acc += c * beta;
    }
    acc * scale
}

/// `∫_Δ x^α` with the simplex volume `√det(Gram)/k!` in exact radical form.
pub fn simplex_moment(vertices: &[Point], alpha: &[u32]) -> Result<ExactScalar, TensorError> {
    let ids: Vec<usize> = (0..vertices.len()).collect();
    let gram = gram_determinant(vertices, &ids);
    if gram.is_zero() {
        return Err(TensorError::DegenerateSimplex);
    }
    let k = vertices.len() as u32 - 1;
    let volume = ExactScalar::sqrt_rational(&gram)?.scale(&factorial_rat(k).recip());
    Ok(volume.scale(&simplex_moment_ratio(vertices, alpha)))
}

/// `Φ_d^{r,0}(P)` as array components `(1/r!)·∫_P x_{i_1}⋯x_{i_r}`.
pub fn volume_tensor(p: &Polytope, r: usize) -> Result<BigradedTensor, TensorError> {
    let d = p.dim();
    let simplices: Vec<(Vec<Point>, Rational)> = p
        .triangulation(None)
        .into_iter()
        .map(|s| {
            let vol = p.simplex_volume(&s);
            (s.iter().map(|&i| p.vertices()[i].clone()).collect(), vol)
        })
        .collect();
    let r_fact = factorial_rat(r as u32);
    let mut entries = BTreeMap::new();
    for idx in super::multisets(d, r) {
        let alpha = super::IndexMultiset::new(idx.clone()).multiplicities(d);
        let integral: Rational = simplices
            .iter()
            .map(|(verts, vol)| vol * simplex_moment_ratio(verts, &alpha))
            .sum();
        entries.insert(
            (idx, Vec::new()),
            ExactScalar::from_rational(integral / &r_fact),
        );
    }
    Ok(BigradedTensor::new(d, d, r, 0, entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, rat};
    use crate::fixtures;

    fn pts(xs: &[&[i64]]) -> Vec<Point> {
        xs.iter()
            .map(|p| p.iter().map(|&x| rat(x)).collect())
            .collect()
    }

    #[test]
    fn unit_triangle_first_moment() {
        let tri = pts(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(
            simplex_moment(&tri, &[1, 0]).unwrap(),
            ExactScalar::from_rational(frac(1, 6))
        );
        assert_eq!(
            simplex_moment(&tri, &[0, 0]).unwrap(),
            ExactScalar::from_rational(frac(1, 2))
        );
        // ∫ x² over the unit triangle = 1/12
        assert_eq!(simplex_moment_ratio(&tri, &[2, 0]), frac(1, 6));
    }

    #[test]
    fn degenerate_simplex() {
        let seg = pts(&[&[0, 0], &[1, 1], &[2, 2]]);
        assert!(matches!(
            simplex_moment(&seg, &[1, 0]),
            Err(TensorError::DegenerateSimplex)
        ));
    }

    #[test]
    fn segment_in_the_plane() {
        // segment from (0,0) to (3,4): length 5, ∫ x ds = 5·3/2
        let seg = pts(&[&[0, 0], &[3, 4]]);
        assert_eq!(
            simplex_moment(&seg, &[1, 0]).unwrap(),
            ExactScalar::from_rational(frac(15, 2))
        );
    }

    #[test]
    fn trapezoid_volume_tensor() {
        let t = volume_tensor(&fixtures::trapezoid(), 1).unwrap();
        assert_eq!(t.get(&[0], &[]), ExactScalar::from_int(15));
        assert_eq!(t.get(&[1], &[]), ExactScalar::from_rational(frac(14, 3)));
        let v = volume_tensor(&fixtures::trapezoid(), 0).unwrap();
        assert_eq!(v.get(&[], &[]), ExactScalar::from_int(6));
    }

    #[test]
    fn rectangle_volume_tensor() {
        let t = volume_tensor(&fixtures::rectangle(rat(2), rat(3)), 1).unwrap();
        assert_eq!(t.get(&[0], &[]), ExactScalar::from_int(6));
        assert_eq!(t.get(&[1], &[]), ExactScalar::from_int(9));
        // (1/2)∫ x y = (1/2)·(a²/2)(b²/2)
        let t2 = volume_tensor(&fixtures::rectangle(rat(2), rat(3)), 2).unwrap();
        assert_eq!(t2.get(&[0, 1], &[]), ExactScalar::from_rational(frac(9, 2)));
    }
}
