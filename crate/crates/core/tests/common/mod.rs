//! Seeded random simplicial polytopes with small integer vertices.
#![allow(dead_code)]

use mtensor::algebra::Rational;
use mtensor::polytope::Polytope;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type P3 = [i64; 3];

fn to_rational(points: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    points
        .iter()
        .map(|p| {
            p.iter()
                .map(|&x| Rational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect()
}

fn cross2(o: &[i64], a: &[i64], b: &[i64]) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Strict convex hull (monotone chain, collinear points dropped).
fn hull2(mut pts: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Vec<i64>> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross2(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vec<i64>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross2(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

pub fn random_polygon(rng: &mut ChaCha8Rng, n: usize, range: i64) -> Option<Polytope> {
    let pts: Vec<Vec<i64>> = (0..n)
        .map(|_| {
            vec![
                rng.random_range(-range..=range),
                rng.random_range(-range..=range),
            ]
        })
        .collect();
    let hull = hull2(pts);
    if hull.len() < 3 {
        return None;
    }
    Polytope::new(2, to_rational(&hull), None).ok()
}

fn sub3(a: P3, b: P3) -> P3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross3(a: P3, b: P3) -> P3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot3(a: P3, b: P3) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Brute-force hull with triangular facets; `None` if some facet plane holds
/// four or more points or the points are coplanar.
pub fn random_simplicial_3polytope(rng: &mut ChaCha8Rng, n: usize, range: i64) -> Option<Polytope> {
    let mut pts: Vec<P3> = (0..n)
        .map(|_| {
            [
                rng.random_range(-range..=range),
                rng.random_range(-range..=range),
                rng.random_range(-range..=range),
            ]
        })
        .collect();
    pts.sort();
    pts.dedup();
    let m = pts.len();
    let mut facets: Vec<[usize; 3]> = Vec::new();
    for a in 0..m {
        for b in (a + 1)..m {
            for c in (b + 1)..m {
                let normal = cross3(sub3(pts[b], pts[a]), sub3(pts[c], pts[a]));
                if normal == [0, 0, 0] {
                    continue;
                }
                let (mut above, mut below, mut on) = (false, false, false);
                for (k, &q) in pts.iter().enumerate() {
                    if k == a || k == b || k == c {
                        continue;
                    }
                    match dot3(normal, sub3(q, pts[a])).signum() {
                        1 => above = true,
                        -1 => below = true,
                        _ => on = true,
                    }
                }
                if above && below {
                    continue;
                }
                if on || !(above || below) {
                    return None;
                }
                facets.push([a, b, c]);
            }
        }
    }
    if facets.len() < 4 {
        return None;
    }
    let mut used: Vec<usize> = facets.iter().flatten().copied().collect();
    used.sort_unstable();
    used.dedup();
    let remap = |i: usize| used.binary_search(&i).unwrap();
    let verts: Vec<Vec<i64>> = used.iter().map(|&i| pts[i].to_vec()).collect();
    let facet_lists = facets
        .iter()
        .map(|f| f.iter().map(|&i| remap(i)).collect())
        .collect();
    Polytope::new(3, to_rational(&verts), Some(facet_lists)).ok()
}

/// `count` polygons and `count` simplicial 3-polytopes from one seed.
pub fn corpus(seed: u64, count: usize) -> Vec<Polytope> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut polygons = 0;
    while polygons < count {
        let n = rng.random_range(3..=7);
        if let Some(p) = random_polygon(&mut rng, n, 4) {
            out.push(p);
            polygons += 1;
        }
    }
    let mut solids = 0;
    while solids < count {
        let n = rng.random_range(4..=7);
        if let Some(p) = random_simplicial_3polytope(&mut rng, n, 3) {
            out.push(p);
            solids += 1;
        }
    }
    out
}
