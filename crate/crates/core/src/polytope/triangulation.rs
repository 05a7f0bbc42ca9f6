//! Placing (fan) triangulations of convex vertex configurations.
//!
//! A configuration is a set of vertex ids into a shared point list; its
//! affine hull may be lower-dimensional than the ambient space.

use std::collections::BTreeSet;

use num_traits::Zero;

use super::linalg::{
    affine_dim, cross_product, dot, project, projected_simplex_det, projection_columns, sub, Point,
};
use crate::algebra::Rational;

/// The lexicographically least vertex (by coordinates) among `ids`.
pub fn lex_least(points: &[Point], ids: &[usize]) -> usize {
    *ids.iter()
        .min_by(|&&a, &&b| points[a].cmp(&points[b]))
        .expect("non-empty vertex set")
}

/// Facets of `conv(ids)` inside its own affine hull, as sorted id lists.
///
/// Brute force over affinely independent k-subsets; fine for the vertex
/// counts a single facet or small polytope has.
pub fn enumerate_faces(points: &[Point], ids: &[usize]) -> Vec<Vec<usize>> {
    let cols = projection_columns(points, ids);
    let k = cols.len();
    let proj: Vec<(usize, Point)> = ids
        .iter()
        .map(|&i| (i, project(&points[i], &cols)))
        .collect();
    if k == 0 {
        return Vec::new();
    }
    if k == 1 {
        let lo = proj.iter().min_by(|a, b| a.1.cmp(&b.1)).unwrap().0;
        let hi = proj.iter().max_by(|a, b| a.1.cmp(&b.1)).unwrap().0;
        return vec![vec![lo], vec![hi]];
    }
    let mut faces = BTreeSet::new();
    for combo in combinations(proj.len(), k) {
        let base = &proj[combo[0]].1;
        let edges: Vec<Point> = combo[1..].iter().map(|&c| sub(&proj[c].1, base)).collect();
        let normal = cross_product(&edges);
        if normal.iter().all(Zero::is_zero) {
            continue;
        }
        let offset = dot(&normal, base);
        let (mut above, mut below) = (false, false);
        let mut on: Vec<usize> = Vec::new();
        for (id, p) in &proj {
            let v = dot(&normal, p);
            match v.cmp(&offset) {
                std::cmp::Ordering::Greater => above = true,
                std::cmp::Ordering::Less => below = true,
                std::cmp::Ordering::Equal => on.push(*id),
            }
        }
        if !(above && below) {
            on.sort_unstable();
            faces.insert(on);
        }
    }
    faces.into_iter().collect()
}

/// Placing triangulation: cone from `apex` (default: lexicographically
/// least vertex) over the triangulations of the faces not containing it.
/// Each simplex is returned as a sorted id list.
pub fn fan_triangulation(points: &[Point], ids: &[usize], apex: Option<usize>) -> Vec<Vec<usize>> {
    let mut ids: Vec<usize> = ids.to_vec();
    ids.sort_unstable();
    ids.dedup();
    let refs: Vec<&Point> = ids.iter().map(|&i| &points[i]).collect();
    let k = affine_dim(&refs);
    if ids.len() == k + 1 {
        return vec![ids];
    }
    let apex = apex.unwrap_or_else(|| lex_least(points, &ids));
    assert!(
        ids.contains(&apex),
        "apex must be a vertex of the configuration"
    );
    let faces = enumerate_faces(points, &ids);
    cone_over(points, apex, faces.iter().map(Vec::as_slice))
}

/// Cones `apex` over the fan triangulations of every face that misses it.
pub fn cone_over<'a>(
    points: &[Point],
    apex: usize,
    faces: impl IntoIterator<Item = &'a [usize]>,
) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for face in faces {
        if face.contains(&apex) {
            continue;
        }
        for mut simplex in fan_triangulation(points, face, None) {
            simplex.push(apex);
            simplex.sort_unstable();
            out.push(simplex);
        }
    }
    out
}

/// `V(σ)/V(conv ids)` for each simplex, computed from projected determinants.
pub fn volume_ratios(points: &[Point], ids: &[usize], simplices: &[Vec<usize>]) -> Vec<Rational> {
    let cols = projection_columns(points, ids);
    let dets: Vec<Rational> = simplices
        .iter()
        .map(|s| projected_simplex_det(points, s, &cols))
        .collect();
    let total: Rational = dets.iter().sum();
    dets.into_iter().map(|d| d / &total).collect()
}

/// All k-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}
