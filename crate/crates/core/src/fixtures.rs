//! Named polytopes used by tests, examples and the acceptance suite.

use crate::algebra::rational::{frac, rat};
use crate::algebra::Rational;
use crate::polytope::Polytope;

fn ints(xs: &[&[i64]]) -> Vec<Vec<Rational>> {
    xs.iter()
        .map(|p| p.iter().map(|&x| rat(x)).collect())
        .collect()
}

/// `conv{(0,0),(1,0),(1,1),(0,1)}`.
pub fn unit_square() -> Polytope {
    Polytope::new(
        2,
        ints(&[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]),
        Some(vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]]),
    )
    .expect("unit square")
}

/// `conv{(0,0),(a,0),(a,b),(0,b)}`.
pub fn rectangle(a: Rational, b: Rational) -> Polytope {
    let z = || rat(0);
    Polytope::new(
        2,
        vec![
            vec![z(), z()],
            vec![a.clone(), z()],
            vec![a, b.clone()],
            vec![z(), b],
        ],
        Some(vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]]),
    )
    .expect("rectangle")
}

/// The square `conv{(2,1),(2,3),(4,3),(4,1)}` whose adjoint is `1 - 3t1 - 2t2`.
pub fn offset_square() -> Polytope {
    Polytope::new(2, ints(&[&[2, 1], &[2, 3], &[4, 3], &[4, 1]]), None).expect("square")
}

/// `conv{(0,0),(2,2),(3,2),(5,0)}`, volume 6.
pub fn trapezoid() -> Polytope {
    Polytope::new(2, ints(&[&[0, 0], &[2, 2], &[3, 2], &[5, 0]]), None).expect("trapezoid")
}

/// `conv{(1,2),(-1,1),(-2,-1),(1,-1)}`.
pub fn quadrilateral() -> Polytope {
    Polytope::new(2, ints(&[&[1, 2], &[-1, 1], &[-2, -1], &[1, -1]]), None).expect("quadrilateral")
}

/// `conv{±e1, ±e2, ±e3}`.
pub fn octahedron() -> Polytope {
    let v = ints(&[
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
    Polytope::new(3, v, Some(facets)).expect("octahedron")
}

/// `[0,1]^3` with vertex `i` at the binary digits of `i`.
pub fn unit_cube() -> Polytope {
    let v: Vec<Vec<Rational>> = (0..8)
        .map(|i| (0..3).map(|b| rat((i >> b) & 1)).collect())
        .collect();
    let mut facets = Vec::new();
    for axis in 0..3 {
        for side in 0..2 {
            facets.push((0..8).filter(|i| (i >> axis) & 1 == side).collect());
        }
    }
    Polytope::new(3, v, Some(facets)).expect("unit cube")
}

/// A combinatorial cube with three non-axis-parallel quadrilateral facets.
pub fn perturbed_cube() -> Polytope {
    let mut v = ints(&[
        &[1, 1, 2],
        &[1, -1, 1],
        &[1, -2, -1],
        &[1, 1, -1],
        &[0, 1, 2],
        &[-1, -1, 1],
        &[-2, -2, -1],
        &[-2, 1, -1],
    ]);
    v[4][0] = frac(-1, 2);
    let facets = vec![
        vec![0, 1, 2, 3],
        vec![0, 1, 4, 5],
        vec![1, 2, 5, 6],
        vec![2, 3, 6, 7],
        vec![0, 3, 4, 7],
        vec![4, 5, 6, 7],
    ];
    Polytope::new(3, v, Some(facets)).expect("perturbed cube")
}

/// The standard simplex `conv{0, e1, …, ed}`.
pub fn standard_simplex(d: usize) -> Polytope {
    let mut v = vec![vec![rat(0); d]];
    for i in 0..d {
        let mut e = vec![rat(0); d];
        e[i] = rat(1);
        v.push(e);
    }
    let facets = (0..=d)
        .map(|skip| (0..=d).filter(|&k| k != skip).collect())
        .collect();
    Polytope::new(d, v, Some(facets)).expect("simplex")
}
