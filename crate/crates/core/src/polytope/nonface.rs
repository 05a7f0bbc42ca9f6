//! Affine subspaces `L_τ = {t : x_k·t = 1 for all k ∈ τ}` for minimal non-faces τ.

use super::linalg::{solve_affine, Point};
use super::triangulation::enumerate_faces;
use super::{Polytope, PolytopeError};
use crate::algebra::Rational;
use num_traits::One;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSubspace {
    pub point: Point,
    pub directions: Vec<Point>,
    /// The vertex set τ, 0-based and sorted.
    pub indices: Vec<usize>,
}

impl AffineSubspace {
    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    /// `L_τ` for the given vertices; `None` when the system is inconsistent.
    pub fn for_vertices(vertices: &[Point], tau: &[usize]) -> Option<Self> {
        let d = vertices.first()?.len();
        let rows: Vec<Point> = tau.iter().map(|&k| vertices[k].clone()).collect();
        let rhs = vec![Rational::one(); rows.len()];
        let (point, directions) = solve_affine(&rows, &rhs, d)?;
        let mut indices = tau.to_vec();
        indices.sort_unstable();
        Some(Self {
            point,
            directions,
            indices,
        })
    }

    /// `point + Σ c_i·directions[i]`.
    pub fn at(&self, coeffs: &[Rational]) -> Point {
        let mut p = self.point.clone();
        for (c, dir) in coeffs.iter().zip(&self.directions) {
            for (pi, di) in p.iter_mut().zip(dir) {
                *pi += c * di;
            }
        }
        p
    }
}

/// Minimal non-faces of a convex polygon given by its vertex ids: the
/// pairs of vertices that are not joined by an edge.
fn polygon_nonfaces(vertices: &[Point], ids: &[usize]) -> Vec<Vec<usize>> {
    let edges = enumerate_faces(vertices, ids);
    let mut out = Vec::new();
    for (a, &i) in ids.iter().enumerate() {
        for &j in &ids[a + 1..] {
            let adjacent = edges
                .iter()
                .any(|e| e.len() == 2 && e.contains(&i) && e.contains(&j));
            if !adjacent {
                out.push(vec![i, j]);
            }
        }
    }
    out
}

fn collect(vertices: &[Point], taus: Vec<Vec<usize>>) -> Vec<AffineSubspace> {
    taus.iter()
        .filter_map(|tau| AffineSubspace::for_vertices(vertices, tau))
        .collect()
}

/// `NF(F)` for a facet of a polytope of dimension at most three.
pub fn nonface_subspaces(p: &Polytope, facet: usize) -> Result<Vec<AffineSubspace>, PolytopeError> {
    let f = p.facet(facet);
    match p.dim() {
        2 => Ok(Vec::new()),
        3 => Ok(collect(
            p.vertices(),
            polygon_nonfaces(p.vertices(), f.vertex_ids()),
        )),
        dim => Err(PolytopeError::UnsupportedDimension {
            dim,
            context: "non-face enumeration is implemented for dim <= 3",
        }),
    }
}

/// `NF(P)` for a polygon.
pub fn polygon_nonface_subspaces(p: &Polytope) -> Result<Vec<AffineSubspace>, PolytopeError> {
    if p.dim() != 2 {
        return Err(PolytopeError::UnsupportedDimension {
            dim: p.dim(),
            context: "polytope non-faces are implemented for polygons only",
        });
    }
    let ids: Vec<usize> = (0..p.num_vertices()).collect();
    Ok(collect(p.vertices(), polygon_nonfaces(p.vertices(), &ids)))
}
