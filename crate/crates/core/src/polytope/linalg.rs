//! Small dense rational linear algebra.

use num_traits::{One, Signed, Zero};

use crate::algebra::Rational;

pub type Point = Vec<Rational>;

pub fn sub(a: &[Rational], b: &[Rational]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref(mut rows: Vec<Vec<Rational>>) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let delta = &f * &rows[r][j];
                    rows[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: Vec<Vec<Rational>>) -> usize {
    rref(rows).1.len()
}

pub fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pivot = m[c][c].clone();
        det *= &pivot;
        for i in (c + 1)..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &pivot;
            for j in c..n {
                let delta = &f * &m[c][j];
                m[i][j] -= delta;
            }
        }
    }
    det
}

/// Basis of `{x : rows·x = 0}`.
pub fn nullspace(rows: Vec<Vec<Rational>>, ncols: usize) -> Vec<Point> {
    let (reduced, pivots) = rref(rows);
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); ncols];
            v[free] = Rational::one();
            for (row, &pc) in reduced.iter().zip(&pivots) {
                v[pc] = -row[free].clone();
            }
            v
        })
        .collect()
}

/// Solves `rows·x = rhs`; returns a particular solution and a nullspace
/// basis, or `None` if the system is inconsistent.
pub fn solve_affine(rows: &[Point], rhs: &[Rational], ncols: usize) -> Option<(Point, Vec<Point>)> {
    let augmented: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let (reduced, pivots) = rref(augmented);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (row, &pc) in reduced.iter().zip(&pivots) {
        x[pc] = row[ncols].clone();
    }
    Some((x, nullspace(rows.to_vec(), ncols)))
}

/// Generalized cross product of `n-1` vectors in ℝⁿ, chosen so that
/// `N·w = det[v_1; …; v_{n-1}; w]`. Its length is the `(n-1)`-volume of
/// the parallelotope spanned by the vectors.
pub fn cross_product(vectors: &[Point]) -> Point {
    let n = vectors.len() + 1;
    assert!(
        vectors.iter().all(|v| v.len() == n),
        "need n-1 vectors in R^n"
    );
    (0..n)
        .map(|i| {
            let mut m: Vec<Vec<Rational>> = vectors.to_vec();
            let mut e = vec![Rational::zero(); n];
            e[i] = Rational::one();
            m.push(e);
            determinant(m)
        })
        .collect()
}

/// Affine dimension of a point set (−1 is never returned; empty sets give 0).
pub fn affine_dim(points: &[&Point]) -> usize {
    match points.split_first() {
        None => 0,
        Some((p0, rest)) => rank(rest.iter().map(|p| sub(p, p0)).collect()),
    }
}

/// Greedily picks affinely independent points (by position in `ids`).
pub fn independent_subset(points: &[Point], ids: &[usize]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for &i in ids {
        if chosen.is_empty() {
            chosen.push(i);
            continue;
        }
        let base = &points[chosen[0]];
        let mut diffs: Vec<Point> = chosen[1..].iter().map(|&j| sub(&points[j], base)).collect();
        diffs.push(sub(&points[i], base));
        if rank(diffs) == chosen.len() {
            chosen.push(i);
        }
    }
    chosen
}

/// Coordinates onto which the projection is injective on the affine hull of `ids`.
pub fn projection_columns(points: &[Point], ids: &[usize]) -> Vec<usize> {
    let Some((&first, rest)) = ids.split_first() else {
        return Vec::new();
    };
    let diffs: Vec<Point> = rest
        .iter()
        .map(|&i| sub(&points[i], &points[first]))
        .collect();
    if diffs.is_empty() {
        return Vec::new();
    }
    rref(diffs).1
}

pub fn project(p: &[Rational], cols: &[usize]) -> Point {
    cols.iter().map(|&c| p[c].clone()).collect()
}

/// Unsigned determinant of the simplex edge vectors projected onto `cols`.
pub fn projected_simplex_det(points: &[Point], simplex: &[usize], cols: &[usize]) -> Rational {
    let base = project(&points[simplex[0]], cols);
    let m: Vec<Vec<Rational>> = simplex[1..]
        .iter()
        .map(|&i| sub(&project(&points[i], cols), &base))
        .collect();
    determinant(m).abs()
}

/// Gram determinant of the edge vectors `v_i - v_0` of a simplex.
pub fn gram_determinant(points: &[Point], simplex: &[usize]) -> Rational {
    let base = &points[simplex[0]];
    let edges: Vec<Point> = simplex[1..]
        .iter()
        .map(|&i| sub(&points[i], base))
        .collect();
    let gram: Vec<Vec<Rational>> = edges
        .iter()
        .map(|a| edges.iter().map(|b| dot(a, b)).collect())
        .collect();
    determinant(gram)
}
