//! Validated convex polytopes with exact facet data.

pub mod linalg;
pub mod nonface;
pub mod triangulation;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::algebra::{factorial_rat, ExactScalar, LinearForm, Rational};
use linalg::{
    affine_dim, cross_product, dot, gram_determinant, independent_subset, projected_simplex_det,
    projection_columns, sub, Point,
};
pub use nonface::{nonface_subspaces, polygon_nonface_subspaces, AffineSubspace};
use triangulation::{cone_over, fan_triangulation, lex_least, volume_ratios};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolytopeError {
    #[error("unsupported dimension {dim}: {context}")]
    UnsupportedDimension { dim: usize, context: &'static str },
    #[error("vertex {vertex} has {found} coordinates, expected {expected}")]
    WrongCoordinateCount {
        vertex: usize,
        expected: usize,
        found: usize,
    },
    #[error("need at least {needed} vertices in dimension {dim}, got {found}")]
    TooFewVertices {
        dim: usize,
        needed: usize,
        found: usize,
    },
    #[error("vertices {0} and {1} coincide")]
    DuplicateVertex(usize, usize),
    #[error("vertices span an affine space of dimension {found}, expected {expected}")]
    NotFullDimensional { expected: usize, found: usize },
    #[error("facets required for dim >= 3")]
    FacetsRequired { dim: usize },
    #[error("facet {facet} references vertex {vertex}, which does not exist")]
    FacetIndexOutOfRange { facet: usize, vertex: usize },
    #[error("facet {facet} is not a supporting face: {reason}")]
    FacetNotSupporting { facet: usize, reason: String },
    #[error("facets {0} and {1} have the same vertex set")]
    DuplicateFacet(usize, usize),
    #[error("vertex {vertex} lies on {count} facets, expected at least {expected}")]
    VertexNotOnEnoughFacets {
        vertex: usize,
        count: usize,
        expected: usize,
    },
    #[error("vertex {0} is not in strictly convex position")]
    NotConvexPosition(usize),
    #[error("facet area vectors do not sum to zero; the facet list is incomplete")]
    FacetsNotClosed,
}

impl PolytopeError {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Self::UnsupportedDimension { .. } => "UnsupportedDimension",
            Self::WrongCoordinateCount { .. } => "WrongCoordinateCount",
            Self::TooFewVertices { .. } => "DegenerateInput",
            Self::DuplicateVertex(..) => "DuplicateVertex",
            Self::NotFullDimensional { .. } => "NotFullDimensional",
            Self::FacetsRequired { .. } => "FacetsRequired",
            Self::FacetIndexOutOfRange { .. } => "FacetIndexOutOfRange",
            Self::FacetNotSupporting { .. } => "FacetNotSupporting",
            Self::DuplicateFacet(..) => "DuplicateFacet",
            Self::VertexNotOnEnoughFacets { .. } => "DegenerateInput",
            Self::NotConvexPosition(_) => "NotConvexPosition",
            Self::FacetsNotClosed => "FacetsNotClosed",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Facet {
    vertex_ids: Vec<usize>,
    normal: Point,
    norm_sq: Rational,
    offset: Rational,
    area_ratio: Rational,
    volume: ExactScalar,
    triangulation: Vec<Vec<usize>>,
    simplex_ratios: Vec<Rational>,
}

impl Facet {
    /// Sorted vertex ids.
    pub fn vertex_ids(&self) -> &[usize] {
        &self.vertex_ids
    }

    /// Outward normal `N`, the generalized cross product of the edges of a
    /// reference simplex of the facet (the facet itself when simplicial).
    pub fn normal(&self) -> &[Rational] {
        &self.normal
    }

    pub fn norm_sq(&self) -> &Rational {
        &self.norm_sq
    }

    /// `N·x` for every `x` on the facet.
    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    /// `V_{d-1}(F) / V(reference simplex)`; one for simplicial facets.
    pub fn area_ratio(&self) -> &Rational {
        &self.area_ratio
    }

    /// `V_{d-1}(F)` in exact radical form.
    pub fn volume(&self) -> &ExactScalar {
        &self.volume
    }

    /// Fan triangulation from the facet's lexicographically least vertex.
    pub fn triangulation(&self) -> &[Vec<usize>] {
        &self.triangulation
    }

    /// `V(σ)/V(F)` for each simplex of [`Facet::triangulation`].
    pub fn simplex_ratios(&self) -> &[Rational] {
        &self.simplex_ratios
    }

    pub fn is_simplex(&self, dim: usize) -> bool {
        self.vertex_ids.len() == dim
    }

    pub fn contains(&self, vertex: usize) -> bool {
        self.vertex_ids.binary_search(&vertex).is_ok()
    }
}

#[derive(Debug, Clone)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Point>,
    facets: Vec<Facet>,
}

impl Polytope {
    /// Validates raw vertex/facet data. Facets may be omitted only for `dim == 2`.
    pub fn new(
        dim: usize,
        vertices: Vec<Point>,
        facets: Option<Vec<Vec<usize>>>,
    ) -> Result<Self, PolytopeError> {
        if dim < 2 {
            return Err(PolytopeError::UnsupportedDimension {
                dim,
                context: "polytopes must have dimension at least 2",
            });
        }
        for (i, v) in vertices.iter().enumerate() {
            if v.len() != dim {
                return Err(PolytopeError::WrongCoordinateCount {
                    vertex: i,
                    expected: dim,
                    found: v.len(),
                });
            }
        }
        if vertices.len() < dim + 1 {
            return Err(PolytopeError::TooFewVertices {
                dim,
                needed: dim + 1,
                found: vertices.len(),
            });
        }
        for i in 0..vertices.len() {
            for j in (i + 1)..vertices.len() {
                if vertices[i] == vertices[j] {
                    return Err(PolytopeError::DuplicateVertex(i, j));
                }
            }
        }
        let refs: Vec<&Point> = vertices.iter().collect();
        let found = affine_dim(&refs);
        if found != dim {
            return Err(PolytopeError::NotFullDimensional {
                expected: dim,
                found,
            });
        }
        let facet_lists = match facets {
            Some(f) => f,
            None if dim == 2 => polygon_edges(&vertices)?,
            None => return Err(PolytopeError::FacetsRequired { dim }),
        };
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut built = Vec::with_capacity(facet_lists.len());
        for (fi, raw) in facet_lists.into_iter().enumerate() {
            let mut ids = raw;
            ids.sort_unstable();
            ids.dedup();
            if let Some(&bad) = ids.iter().find(|&&v| v >= vertices.len()) {
                return Err(PolytopeError::FacetIndexOutOfRange {
                    facet: fi,
                    vertex: bad,
                });
            }
            if !seen.insert(ids.clone()) {
                let other = built
                    .iter()
                    .position(|f: &Facet| f.vertex_ids == ids)
                    .unwrap_or(0);
                return Err(PolytopeError::DuplicateFacet(other, fi));
            }
            built.push(build_facet(dim, &vertices, fi, ids)?);
        }
        for v in 0..vertices.len() {
            let count = built.iter().filter(|f| f.contains(v)).count();
            if count < dim {
                return Err(PolytopeError::VertexNotOnEnoughFacets {
                    vertex: v,
                    count,
                    expected: dim,
                });
            }
        }
        let poly = Self {
            dim,
            vertices,
            facets: built,
        };
        if poly.area_vector_sum().iter().any(|c| !c.is_zero()) {
            return Err(PolytopeError::FacetsNotClosed);
        }
        Ok(poly)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn facet(&self, id: usize) -> &Facet {
        &self.facets[id]
    }

    /// Every facet is a `(d-1)`-simplex.
    pub fn is_simplicial(&self) -> bool {
        self.facets.iter().all(|f| f.is_simplex(self.dim))
    }

    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.dim + 1
    }

    /// `L_k = 1 - x_k·t` for vertex `k`.
    pub fn linear_form(&self, k: usize) -> LinearForm {
        LinearForm::for_vertex(&self.vertices[k])
    }

    /// Placing triangulation of `P` from `apex` (default: lexicographically
    /// least vertex), coning over the stored facet triangulations.
    pub fn triangulation(&self, apex: Option<usize>) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        if self.is_simplex() {
            return vec![all];
        }
        let apex = apex.unwrap_or_else(|| lex_least(&self.vertices, &all));
        let mut out = Vec::new();
        for f in &self.facets {
            if f.contains(apex) {
                continue;
            }
            for s in &f.triangulation {
                let mut simplex = s.clone();
                simplex.push(apex);
                simplex.sort_unstable();
                out.push(simplex);
            }
        }
        out
    }

    /// Placing triangulation that re-triangulates every facet from scratch
    /// (brute-force face enumeration); used to cross-check [`Polytope::triangulation`].
    pub fn triangulation_from_faces(&self, apex: usize) -> Vec<Vec<usize>> {
        if self.is_simplex() {
            return vec![(0..self.vertices.len()).collect()];
        }
        cone_over(
            &self.vertices,
            apex,
            self.facets.iter().map(|f| f.vertex_ids.as_slice()),
        )
    }

    /// `d!·V(σ)` for a full-dimensional simplex.
    pub fn simplex_det(&self, simplex: &[usize]) -> Rational {
        let cols: Vec<usize> = (0..self.dim).collect();
        projected_simplex_det(&self.vertices, simplex, &cols)
    }

    pub fn simplex_volume(&self, simplex: &[usize]) -> Rational {
        self.simplex_det(simplex) / factorial_rat(self.dim as u32)
    }

    /// `V_d(P)`.
    pub fn volume(&self) -> Rational {
        self.triangulation(None)
            .iter()
            .map(|s| self.simplex_volume(s))
            .sum()
    }

    /// `Σ_F V(F)·u_F·(d-1)!`, computed rationally as `Σ_F ρ_F N_F`.
    pub fn area_vector_sum(&self) -> Point {
        let mut acc = vec![Rational::zero(); self.dim];
        for f in &self.facets {
            for (a, n) in acc.iter_mut().zip(&f.normal) {
                *a += n * &f.area_ratio;
            }
        }
        acc
    }

    /// `Σ_F V(F)·u_F` with exact radical entries.
    pub fn area_vector_sum_exact(&self) -> Vec<ExactScalar> {
        let mut acc = vec![ExactScalar::zero(); self.dim];
        for f in &self.facets {
            let inv_norm =
                ExactScalar::sqrt_rational(&f.norm_sq.recip()).expect("norm_sq is positive");
            let weight = f.volume.mul(&inv_norm);
            for (a, n) in acc.iter_mut().zip(&f.normal) {
                *a = a.checked_add(&weight.scale(n)).expect("same pi power");
            }
        }
        acc
    }
}

fn build_facet(
    dim: usize,
    vertices: &[Point],
    fi: usize,
    ids: Vec<usize>,
) -> Result<Facet, PolytopeError> {
    let not_supporting = |reason: String| PolytopeError::FacetNotSupporting { facet: fi, reason };
    if ids.len() < dim {
        return Err(not_supporting(format!(
            "has {} vertices, needs at least {dim}",
            ids.len()
        )));
    }
    let basis = independent_subset(vertices, &ids);
    if basis.len() != dim {
        return Err(not_supporting(format!(
            "vertices span only {} dimensions",
            basis.len().saturating_sub(1)
        )));
    }
    let base = &vertices[basis[0]];
    let edges: Vec<Point> = basis[1..]
        .iter()
        .map(|&i| sub(&vertices[i], base))
        .collect();
    let mut normal = cross_product(&edges);
    let mut offset = dot(&normal, base);
    if let Some(&v) = ids.iter().find(|&&v| dot(&normal, &vertices[v]) != offset) {
        return Err(not_supporting(format!(
            "vertex {v} is off the facet hyperplane"
        )));
    }
    let (mut above, mut below) = (false, false);
    for (v, x) in vertices.iter().enumerate() {
        if ids.binary_search(&v).is_ok() {
            continue;
        }
        match dot(&normal, x).cmp(&offset) {
            std::cmp::Ordering::Greater => above = true,
            std::cmp::Ordering::Less => below = true,
            std::cmp::Ordering::Equal => {
                return Err(not_supporting(format!(
                    "vertex {v} lies on the facet hyperplane but is not listed"
                )))
            }
        }
    }
    if above && below {
        return Err(not_supporting("vertices lie on both sides".to_string()));
    }
    if above {
        normal = normal.iter().map(|c| -c).collect();
        offset = -offset;
    }
    let norm_sq = dot(&normal, &normal);
    let triangulation = fan_triangulation(vertices, &ids, None);
    let simplex_ratios = volume_ratios(vertices, &ids, &triangulation);
    let cols = projection_columns(vertices, &ids);
    let reference = projected_simplex_det(vertices, &basis, &cols);
    let total: Rational = triangulation
        .iter()
        .map(|s| projected_simplex_det(vertices, s, &cols))
        .sum();
    let area_ratio = total / reference;
    let fact = factorial_rat(dim as u32 - 1);
    let volume = if ids.len() == dim {
        // √det(Gram)/(d-1)!
        ExactScalar::sqrt_rational(&gram_determinant(vertices, &ids))
            .expect("Gram determinant is nonnegative")
            .scale(&fact.recip())
    } else {
        ExactScalar::sqrt_rational(&norm_sq)
            .expect("norm_sq is nonnegative")
            .scale(&(&area_ratio / &fact))
    };
    Ok(Facet {
        vertex_ids: ids,
        normal,
        norm_sq,
        offset,
        area_ratio,
        volume,
        triangulation,
        simplex_ratios,
    })
}

/// Edges of a convex polygon from an exact angular sort around the centroid.
fn polygon_edges(vertices: &[Point]) -> Result<Vec<Vec<usize>>, PolytopeError> {
    let n = vertices.len();
    let count = Rational::from_integer(BigInt::from(n));
    let cx: Rational = vertices.iter().map(|v| v[0].clone()).sum::<Rational>() / &count;
    let cy: Rational = vertices.iter().map(|v| v[1].clone()).sum::<Rational>() / &count;
    let rel: Vec<(Rational, Rational)> = vertices
        .iter()
        .map(|v| (&v[0] - &cx, &v[1] - &cy))
        .collect();
    // Upper half-plane (y > 0, or y = 0 and x > 0) comes first, then by cross product.
    let half = |(x, y): &(Rational, Rational)| -> u8 {
        if y.is_positive() || (y.is_zero() && x.is_positive()) {
            0
        } else {
            1
        }
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        let (pa, pb) = (&rel[a], &rel[b]);
        half(pa).cmp(&half(pb)).then_with(|| {
            let cross = &pa.0 * &pb.1 - &pa.1 * &pb.0;
            Rational::zero().cmp(&cross)
        })
    });
    for k in 0..n {
        let a = &vertices[order[k]];
        let b = &vertices[order[(k + 1) % n]];
        let c = &vertices[order[(k + 2) % n]];
        let turn = (&b[0] - &a[0]) * (&c[1] - &b[1]) - (&b[1] - &a[1]) * (&c[0] - &b[0]);
        if !turn.is_positive() {
            return Err(PolytopeError::NotConvexPosition(order[(k + 1) % n]));
        }
    }
    Ok((0..n).map(|k| vec![order[k], order[(k + 1) % n]]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{frac, rat};
    use num_bigint::BigUint;

    fn pts(xs: &[&[i64]]) -> Vec<Point> {
        xs.iter()
            .map(|p| p.iter().map(|&x| rat(x)).collect())
            .collect()
    }

    fn sqrt(n: u32) -> ExactScalar {
        ExactScalar::sqrt_int(&BigUint::from(n))
    }

    #[test]
    fn unit_square_with_listed_edges() {
        let p = Polytope::new(
            2,
            pts(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]),
            Some(vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]]),
        )
        .unwrap();
        assert_eq!(p.facets().len(), 4);
        for f in p.facets() {
            assert_eq!(f.volume(), &ExactScalar::one());
        }
        assert_eq!(p.volume(), rat(1));
    }

    #[test]
    fn diagonal_is_not_a_facet() {
        let err = Polytope::new(
            2,
            pts(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]),
            Some(vec![
                vec![0, 1],
                vec![1, 2],
                vec![2, 3],
                vec![3, 0],
                vec![0, 2],
            ]),
        )
        .unwrap_err();
        assert!(matches!(
            err,
            PolytopeError::FacetNotSupporting { facet: 4, .. }
        ));
    }

    #[test]
    fn octahedron_accepted() {
        let v = pts(&[
            &[1, 0, 0],
            &[-1, 0, 0],
            &[0, 1, 0],
            &[0, -1, 0],
            &[0, 0, 1],
            &[0, 0, -1],
        ]);
        let mut facets = Vec::new();
        for a in [0, 1] {
            for b in [2, 3] {
                for c in [4, 5] {
                    facets.push(vec![a, b, c]);
                }
            }
        }
        let p = Polytope::new(3, v, Some(facets)).unwrap();
        assert!(p.is_simplicial());
        let f = p
            .facets()
            .iter()
            .find(|f| f.vertex_ids() == [0, 2, 4])
            .unwrap();
        assert_eq!(f.normal(), &[rat(1), rat(1), rat(1)][..]);
        assert_eq!(f.norm_sq(), &rat(3));
        assert_eq!(f.volume(), &sqrt(3).scale(&frac(1, 2)));
        assert_eq!(p.volume(), frac(4, 3));
    }

    #[test]
    fn rectangle_bottom_edge_normal_points_down() {
        let p = Polytope::new(2, pts(&[&[0, 0], &[2, 0], &[2, 3], &[0, 3]]), None).unwrap();
        let bottom = p
            .facets()
            .iter()
            .find(|f| f.vertex_ids() == [0, 1])
            .unwrap();
        assert!(bottom.normal()[0].is_zero());
        assert!(bottom.normal()[1].is_negative());
        assert_eq!(bottom.volume(), &ExactScalar::from_int(2));
    }

    #[test]
    fn quadrilateral_edge_normals_and_lengths() {
        let p = Polytope::new(2, pts(&[&[1, 2], &[-1, 1], &[-2, -1], &[1, -1]]), None).unwrap();
        let e = p
            .facets()
            .iter()
            .find(|f| f.vertex_ids() == [0, 1])
            .unwrap();
        // perpendicular to (-2,-1), pointing away from the interior
        assert_eq!(e.norm_sq(), &rat(5));
        assert_eq!(dot(e.normal(), &[rat(-2), rat(-1)]), rat(0));
        assert!(dot(e.normal(), &[rat(-1), rat(2)]).is_positive());
        assert_eq!(e.volume(), &sqrt(5));
        let bottom = p
            .facets()
            .iter()
            .find(|f| f.vertex_ids() == [2, 3])
            .unwrap();
        assert_eq!(bottom.volume(), &ExactScalar::from_int(3));
    }

    #[test]
    fn facets_required_in_three_dimensions() {
        let err = Polytope::new(
            3,
            pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
            None,
        )
        .unwrap_err();
        assert_eq!(err, PolytopeError::FacetsRequired { dim: 3 });
        assert_eq!(err.to_string(), "facets required for dim >= 3");
    }

    #[test]
    fn incomplete_facet_list_is_rejected() {
        let v = pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]);
        // a triangular bipyramid with one facet missing
        let facets = vec![
            vec![0, 1, 2],
            vec![0, 1, 3],
            vec![0, 2, 3],
            vec![4, 1, 2],
            vec![4, 1, 3],
        ];
        let err = Polytope::new(3, v, Some(facets)).unwrap_err();
        assert!(matches!(
            err,
            PolytopeError::VertexNotOnEnoughFacets { .. } | PolytopeError::FacetsNotClosed
        ));
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(
            Polytope::new(2, pts(&[&[0, 0], &[1, 1], &[2, 2]]), None),
            Err(PolytopeError::NotFullDimensional { .. })
        ));
        assert!(matches!(
            Polytope::new(2, pts(&[&[0, 0], &[1, 0], &[0, 0]]), None),
            Err(PolytopeError::DuplicateVertex(0, 2))
        ));
        assert!(matches!(
            Polytope::new(2, pts(&[&[0, 0], &[2, 0], &[1, 1], &[0, 2], &[2, 2]]), None),
            Err(PolytopeError::NotConvexPosition(_))
        ));
        assert!(matches!(
            Polytope::new(2, pts(&[&[0, 0], &[2, 0]]), None),
            Err(PolytopeError::TooFewVertices { .. })
        ));
    }

    #[test]
    fn non_simplicial_facet_volume_sums_triangles() {
        let cube = crate::fixtures::unit_cube();
        for f in cube.facets() {
            assert_eq!(f.triangulation().len(), 2);
            assert_eq!(f.volume(), &ExactScalar::one());
            let tri_sum: ExactScalar = f
                .triangulation()
                .iter()
                .map(|s| {
                    ExactScalar::sqrt_rational(&gram_determinant(cube.vertices(), s))
                        .unwrap()
                        .scale(&frac(1, 2))
                })
                .fold(ExactScalar::zero(), |a, b| a.checked_add(&b).unwrap());
            assert_eq!(&tri_sum, f.volume());
        }
        assert_eq!(cube.volume(), rat(1));
    }

    #[test]
    fn closedness_is_exact() {
        let p = Polytope::new(2, pts(&[&[1, 2], &[-1, 1], &[-2, -1], &[1, -1]]), None).unwrap();
        assert!(p.area_vector_sum_exact().iter().all(ExactScalar::is_zero));
    }

    #[test]
    fn triangulation_apex_choice_preserves_volume() {
        let cube = crate::fixtures::perturbed_cube();
        let total = cube.volume();
        for apex in 0..cube.num_vertices() {
            let vol: Rational = cube
                .triangulation(Some(apex))
                .iter()
                .map(|s| cube.simplex_volume(s))
                .sum();
            assert_eq!(vol, total);
            assert_eq!(
                cube.triangulation_from_faces(apex),
                cube.triangulation(Some(apex))
            );
        }
    }
}
