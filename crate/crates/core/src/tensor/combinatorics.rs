//! Index multisets, position set partitions and the doubly indexed
//! elementary symmetric functions `e_k^I`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::TensorError;
use crate::algebra::{factorial, Rational};
use crate::polytope::linalg::Point;

/// Nondecreasing 0-based index list `i_1 ≤ … ≤ i_r`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexMultiset(Vec<usize>);

impl IndexMultiset {
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        Self(indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `a(I)_j` for `j < d`.
    pub fn multiplicities(&self, d: usize) -> Vec<u32> {
        let mut a = vec![0u32; d];
        for &i in &self.0 {
            a[i] += 1;
        }
        a
    }

    /// `r! / ∏_j a(I)_j!`, the number of index tuples sorting to this multiset.
    pub fn multinomial(&self, d: usize) -> BigInt {
        self.multiplicities(d)
            .iter()
            .fold(factorial(self.len() as u32), |acc, &m| acc / factorial(m))
    }
}

/// All sorted multi-indices of length `r` over `0..d`, in lexicographic order.
pub fn multisets(d: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(d: usize, r: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            go(d, r, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, r, 0, &mut Vec::with_capacity(r), &mut out);
    out
}

/// Set partitions of `0..n` into exactly `k` blocks, via restricted growth strings.
pub fn set_partitions(n: usize, k: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(
        pos: usize,
        n: usize,
        k: usize,
        used: usize,
        labels: &mut Vec<usize>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if pos == n {
            if used == k {
                let mut blocks = vec![Vec::new(); k];
                for (p, &b) in labels.iter().enumerate() {
                    blocks[b].push(p);
                }
                out.push(blocks);
            }
            return;
        }
        // not enough positions left to open the missing blocks
        if k - used.min(k) > n - pos {
            return;
        }
        for b in 0..=used.min(k - 1) {
            labels.push(b);
            go(pos + 1, n, k, used.max(b + 1), labels, out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 || k > n {
        return out;
    }
    go(0, n, k, 0, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Partitions of the positions of `I` into `k` blocks of size at most
/// `max_part`, each block mapped to the index multiset it carries.
/// Duplicates arising from repeated indices are kept.
pub fn multiset_partitions(
    i: &IndexMultiset,
    k: usize,
    max_part: usize,
) -> Vec<Vec<IndexMultiset>> {
    set_partitions(i.len(), k)
        .into_iter()
        .filter(|blocks| blocks.iter().all(|b| b.len() <= max_part))
        .map(|blocks| {
            blocks
                .into_iter()
                .map(|b| IndexMultiset::new(b.iter().map(|&p| i.0[p]).collect()))
                .collect()
        })
        .collect()
}

/// `e_k^I(x_1,…,x_d) = Σ_{injective φ:[k]→[d]} ∏_t x_{φ(t), i_t}` for the `d`
/// vertex rows of a simplicial facet.
pub fn e_elem(i: &IndexMultiset, points: &[Point]) -> Result<Rational, TensorError> {
    let k = i.len();
    let d = points.len();
    if k > d {
        return Err(TensorError::RankTooHigh { rank: k, dim: d });
    }
    fn go(
        t: usize,
        idx: &[usize],
        points: &[Point],
        used: &mut [bool],
        prod: Rational,
        acc: &mut Rational,
    ) {
        if t == idx.len() {
            *acc += prod;
            return;
        }
        for v in 0..points.len() {
            if used[v] {
                continue;
            }
            let x = &points[v][idx[t]];
            if x.is_zero() {
                continue;
            }
            used[v] = true;
            go(t + 1, idx, points, used, &prod * x, acc);
            used[v] = false;
        }
    }
    let mut acc = Rational::zero();
    go(
        0,
        &i.0,
        points,
        &mut vec![false; d],
        Rational::one(),
        &mut acc,
    );
    Ok(acc)
}
