//! Adjoint polynomials, the generating-function denominator, surface
//! adjoints and exact vanishing certificates.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{expand_product, ExactScalar, LinearForm, Rational, SparsePoly};
use crate::polytope::linalg::Point;
use crate::polytope::triangulation::{fan_triangulation, volume_ratios};
use crate::polytope::{AffineSubspace, Polytope};

/// `Σ_σ ratio_σ ∏_{k ∈ ids∖σ} L_k`.
fn adjoint_from(
    p: &Polytope,
    ids: &[usize],
    simplices: &[Vec<usize>],
    ratios: &[Rational],
) -> SparsePoly {
    let d = p.dim();
    let mut acc = SparsePoly::zero(d);
    for (simplex, ratio) in simplices.iter().zip(ratios) {
        let forms: Vec<LinearForm> = ids
            .iter()
            .filter(|k| !simplex.contains(k))
            .map(|&k| p.linear_form(k))
            .collect();
        acc = &acc + &expand_product(d, &forms).scale(ratio);
    }
    acc
}

/// `Ad_P` from the fan triangulation with the given apex (default: lex-least vertex).
pub fn adjoint(p: &Polytope, apex: Option<usize>) -> SparsePoly {
    let ids: Vec<usize> = (0..p.num_vertices()).collect();
    let simplices = p.triangulation(apex);
    let total: Rational = simplices.iter().map(|s| p.simplex_det(s)).sum();
    let ratios: Vec<Rational> = simplices
        .iter()
        .map(|s| p.simplex_det(s) / &total)
        .collect();
    adjoint_from(p, &ids, &simplices, &ratios)
}

/// `Ad_F` in the ambient `t`-coordinates, from the facet's stored triangulation.
pub fn facet_adjoint(p: &Polytope, facet: usize) -> SparsePoly {
    let f = p.facet(facet);
    adjoint_from(p, f.vertex_ids(), f.triangulation(), f.simplex_ratios())
}

/// `Ad_F` from a fan triangulation of the facet with an explicit apex.
pub fn facet_adjoint_with_apex(p: &Polytope, facet: usize, apex: usize) -> SparsePoly {
    let ids = p.facet(facet).vertex_ids();
    let simplices = fan_triangulation(p.vertices(), ids, Some(apex));
    let ratios = volume_ratios(p.vertices(), ids, &simplices);
    adjoint_from(p, ids, &simplices, &ratios)
}

/// The factored denominator `∏_k L_k`, one form per vertex.
pub fn gf_denominator(p: &Polytope) -> Vec<LinearForm> {
    (0..p.num_vertices()).map(|k| p.linear_form(k)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct FacetTerm {
    pub facet: usize,
    /// `V_{d-1}(F)`, kept outside the rational polynomial.
    pub weight: ExactScalar,
    pub adjoint: SparsePoly,
    /// `Ad_F · ∏_{k∉F} L_k`.
    pub poly: SparsePoly,
}

/// `α_P^s = Σ_F weight_F · poly_F · u_F^s`, stored per facet.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceAdjoint {
    pub s: u32,
    pub terms: Vec<FacetTerm>,
}

impl SurfaceAdjoint {
    /// Largest total degree over the facet terms.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().filter_map(|t| t.poly.degree()).max()
    }
}

pub fn surface_adjoint(p: &Polytope, s: u32) -> SurfaceAdjoint {
    let terms = (0..p.facets().len())
        .into_par_iter()
        .map(|i| {
            let f = p.facet(i);
            let adjoint = facet_adjoint(p, i);
            let outside: Vec<LinearForm> = (0..p.num_vertices())
                .filter(|&k| !f.contains(k))
                .map(|k| p.linear_form(k))
                .collect();
            let poly = &adjoint * &expand_product(p.dim(), &outside);
            FacetTerm {
                facet: i,
                weight: f.volume().clone(),
                adjoint,
                poly,
            }
        })
        .collect();
    SurfaceAdjoint { s, terms }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VanishingCertificate {
    pub indices: Vec<usize>,
    pub subspace_dim: usize,
    pub degree: Option<u32>,
    pub samples_per_direction: usize,
    pub points_evaluated: usize,
    pub passed: bool,
    /// Every sample vanished and the grid has more than `degree` values per
    /// direction, so the restriction is identically zero.
    pub is_proof: bool,
    pub counterexample: Option<(Point, Rational)>,
}

/// `count` distinct small rationals drawn from a seeded generator.
fn distinct_values(rng: &mut ChaCha8Rng, count: usize) -> Vec<Rational> {
    let mut seen = BTreeSet::new();
    while seen.len() < count {
        let num: i64 = rng.random_range(-20..=20);
        let den: i64 = rng.random_range(1..=9);
        seen.insert(Rational::new(BigInt::from(num), BigInt::from(den)));
    }
    seen.into_iter().collect()
}

/// Evaluates `poly` exactly on a grid inside `subspace`. With `samples`
/// unset, `deg + 1` values per direction are used, which makes a pass a proof.
pub fn check_vanishing(
    poly: &SparsePoly,
    subspace: &AffineSubspace,
    samples: Option<usize>,
    seed: u64,
) -> VanishingCertificate {
    let degree = poly.degree();
    let needed = degree.map_or(1, |d| d as usize + 1);
    let per_dir = samples.unwrap_or(needed).max(1);
    let k = subspace.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let axes: Vec<Vec<Rational>> = (0..k).map(|_| distinct_values(&mut rng, per_dir)).collect();

    let mut counter = vec![0usize; k];
    let mut evaluated = 0;
    let mut counterexample = None;
    loop {
        let coeffs: Vec<Rational> = counter
            .iter()
            .zip(&axes)
            .map(|(&i, a)| a[i].clone())
            .collect();
        let point = subspace.at(&coeffs);
        let value = poly.eval(&point);
        evaluated += 1;
        if !value.is_zero() {
            counterexample = Some((point, value));
            break;
        }
        // odometer over the grid
        let mut pos = 0;
        while pos < k {
            counter[pos] += 1;
            if counter[pos] < per_dir {
                break;
            }
            counter[pos] = 0;
            pos += 1;
        }
        if pos == k {
            break;
        }
    }
    let passed = counterexample.is_none();
    VanishingCertificate {
        indices: subspace.indices.clone(),
        subspace_dim: k,
        degree,
        samples_per_direction: per_dir,
        points_evaluated: evaluated,
        passed,
        is_proof: passed && (k == 0 || per_dir >= needed),
        counterexample,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, rat};
    use crate::fixtures;
    use crate::polytope::{nonface_subspaces, polygon_nonface_subspaces};

    fn poly(d: usize, terms: &[(&[u32], Rational)]) -> SparsePoly {
        SparsePoly::from_terms(d, terms.iter().map(|(e, c)| (e.to_vec(), c.clone())))
    }

    fn form(c: &[Rational]) -> SparsePoly {
        let mut p = SparsePoly::one(c.len());
        for (i, ci) in c.iter().enumerate() {
            p = &p + &SparsePoly::var(c.len(), i).scale(ci);
        }
        p
    }

    #[test]
    fn offset_square_adjoint() {
        let sq = fixtures::offset_square();
        let ad = adjoint(&sq, None);
        assert_eq!(
            ad,
            poly(
                2,
                &[(&[0, 0], rat(1)), (&[1, 0], rat(-3)), (&[0, 1], rat(-2))]
            )
        );
        for apex in 0..4 {
            assert_eq!(adjoint(&sq, Some(apex)), ad);
        }
        for nf in polygon_nonface_subspaces(&sq).unwrap() {
            let cert = check_vanishing(&ad, &nf, None, 7);
            assert!(cert.passed && cert.is_proof);
        }
    }

    #[test]
    fn simplex_adjoint_is_one() {
        for d in 2..=4 {
            let s = fixtures::standard_simplex(d);
            assert_eq!(adjoint(&s, None), SparsePoly::one(d));
            for i in 0..s.facets().len() {
                assert_eq!(facet_adjoint(&s, i), SparsePoly::one(d));
            }
        }
    }

    #[test]
    fn denominator_of_unit_square() {
        let forms = gf_denominator(&fixtures::unit_square());
        let got: Vec<String> = forms.iter().map(|f| f.to_string()).collect();
        assert_eq!(got, ["1", "1 - t1", "1 - t1 - t2", "1 - t2"]);
        let cube = fixtures::perturbed_cube();
        assert_eq!(gf_denominator(&cube)[0].to_string(), "1 - t1 - t2 - 2*t3");
    }

    #[test]
    fn unit_square_surface_adjoint() {
        let sa = surface_adjoint(&fixtures::unit_square(), 0);
        let l = |c: &[i64]| form(&c.iter().map(|&x| rat(x)).collect::<Vec<_>>());
        let expected = [
            &l(&[-1, -1]) * &l(&[0, -1]), // edge {0,1}
            &l(&[0, -1]) * &SparsePoly::one(2),
            SparsePoly::one(2) * l(&[-1, 0]),
            &l(&[-1, 0]) * &l(&[-1, -1]),
        ];
        for (term, want) in sa.terms.iter().zip(&expected) {
            assert_eq!(&term.poly, want, "facet {}", term.facet);
            assert_eq!(term.weight, ExactScalar::one());
        }
    }

    #[test]
    fn quadrilateral_surface_adjoint() {
        let q = fixtures::quadrilateral();
        let sa = surface_adjoint(&q, 1);
        let l = |a: i64, b: i64| form(&[rat(a), rat(b)]);
        let five = ExactScalar::sqrt_int(&5u32.into());
        let three = ExactScalar::from_int(3);
        let expected = [
            (vec![0, 1], five.clone(), &l(2, 1) * &l(-1, 1)),
            (vec![1, 2], five, &l(-1, -2) * &l(-1, 1)),
            (vec![2, 3], three.clone(), &l(-1, -2) * &l(1, -1)),
            (vec![0, 3], three, &l(1, -1) * &l(2, 1)),
        ];
        for (ids, w, p) in expected {
            let t = sa
                .terms
                .iter()
                .find(|t| q.facet(t.facet).vertex_ids() == ids.as_slice())
                .unwrap();
            assert_eq!(t.weight, w);
            assert_eq!(t.poly, p);
        }
        assert_eq!(sa.degree(), Some(2));
    }

    #[test]
    fn perturbed_cube_adjoints() {
        let cube = fixtures::perturbed_cube();
        let want: [(&[usize], [Rational; 4]); 6] = [
            (&[0, 1, 2, 3], [rat(1), rat(-1), frac(1, 2), frac(-1, 2)]),
            (
                &[0, 1, 4, 5],
                [rat(1), frac(-1, 7), frac(-1, 7), frac(-11, 7)],
            ),
            (&[1, 2, 5, 6], [rat(1), frac(1, 5), frac(7, 5), frac(-1, 5)]),
            (&[2, 3, 6, 7], [rat(1), frac(1, 2), frac(1, 2), rat(1)]),
            (&[0, 3, 4, 7], [rat(1), rat(0), rat(-1), rat(-1)]),
            (&[4, 5, 6, 7], [rat(1), frac(5, 4), frac(1, 2), frac(-1, 2)]),
        ];
        for (ids, c) in want {
            let i = cube
                .facets()
                .iter()
                .position(|f| f.vertex_ids() == ids)
                .unwrap();
            let ad = facet_adjoint(&cube, i);
            assert_eq!(ad, form(&c[1..]), "facet {ids:?}");
            for &apex in ids {
                assert_eq!(facet_adjoint_with_apex(&cube, i, apex), ad);
            }
        }
        let sa = surface_adjoint(&cube, 2);
        for t in &sa.terms {
            assert!(t.poly.degree().unwrap() <= 5);
            for nf in nonface_subspaces(&cube, t.facet).unwrap() {
                for u in &sa.terms {
                    let cert = check_vanishing(&u.poly, &nf, None, 11);
                    assert!(cert.passed && cert.is_proof);
                }
            }
        }
    }

    #[test]
    fn nonvanishing_is_reported() {
        let sub = AffineSubspace::for_vertices(&[vec![rat(1), rat(0)]], &[0]).unwrap();
        let p = SparsePoly::var(2, 1);
        let cert = check_vanishing(&p, &sub, None, 3);
        assert!(!cert.passed);
        assert!(!cert.is_proof);
        assert!(cert.counterexample.is_some());
    }

    #[test]
    fn polytope_adjoint_degree_bound() {
        let cube = fixtures::perturbed_cube();
        let ad = adjoint(&cube, None);
        assert!(ad.degree().unwrap() < 8 - 3);
        assert_eq!(ad.constant_term(), rat(1));
        for apex in 0..8 {
            assert_eq!(adjoint(&cube, Some(apex)), ad);
        }
    }
}
