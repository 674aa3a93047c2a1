//! Seeded random rational pseudo-metric spaces for randomized checks.
//!
//! A space is a random tree metric (each new point hangs off an earlier one
//! by an integer-length edge) plus independent noise `ε_ij ∈ [1/2, 1]` on
//! every pair. Since `ε_ik <= 1 <= ε_ij + ε_jk`, the triangle inequality
//! survives the noise, while the noise breaks the tree structure so that
//! different topologies win on different spaces.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::metric::MetricSpace;
use crate::rational::{frac, int, Rational};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A strict metric on `n` points with denominators dividing 12.
pub fn random_metric<R: Rng>(rng: &mut R, n: usize) -> MetricSpace {
    let mut tree = vec![vec![0i64; n]; n];
    for j in 1..n {
        let parent = rng.gen_range(0..j);
        let len = rng.gen_range(1..=8);
        for k in 0..j {
            let d = tree[parent][k] + len;
            tree[j][k] = d;
            tree[k][j] = d;
        }
        tree[j][parent] = len;
        tree[parent][j] = len;
    }
    let mut noise = vec![vec![Rational::from_integer(0.into()); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let e = frac(rng.gen_range(6..=12), 12);
            noise[i][j] = e.clone();
            noise[j][i] = e;
        }
    }
    MetricSpace::from_fn(n, true, |i, j| int(tree[i][j]) + &noise[i][j])
        .expect("tree metric plus bounded noise is a metric")
}

/// A pseudo-metric with at least one zero distance between distinct points:
/// a random metric on `n - 1` points with one point duplicated.
pub fn random_pseudo_metric<R: Rng>(rng: &mut R, n: usize) -> MetricSpace {
    assert!(n >= 2, "need two points to duplicate one");
    let base = random_metric(rng, n - 1);
    let twin = rng.gen_range(0..n - 1);
    let at = |i: usize| if i == n - 1 { twin } else { i };
    MetricSpace::from_fn(n, true, |i, j| base.dist(at(i), at(j)).clone())
        .expect("duplicating a point keeps a pseudo-metric")
}

/// `count` spaces whose sizes cycle through `sizes`; every tenth space is a
/// pseudo-metric with a duplicated point.
pub fn metric_batch(seed: u64, count: usize, sizes: &[usize]) -> Vec<MetricSpace> {
    let mut rng = seeded(seed);
    (0..count)
        .map(|idx| {
            let n = sizes[idx % sizes.len()];
            if idx % 10 == 9 {
                random_pseudo_metric(&mut rng, n)
            } else {
                random_metric(&mut rng, n)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn batches_are_reproducible_and_valid() {
        let a = metric_batch(7, 30, &[4, 5, 6]);
        let b = metric_batch(7, 30, &[4, 5, 6]);
        assert_eq!(a, b);
        assert_ne!(a, metric_batch(8, 30, &[4, 5, 6]));
        for (idx, m) in a.iter().enumerate() {
            assert_eq!(m.n(), [4, 5, 6][idx % 3]);
            assert!(m.triangle_violation().is_none());
        }
        let pseudo = &a[9];
        assert!((0..pseudo.n()).any(|i| (i + 1..pseudo.n()).any(|j| pseudo.dist(i, j).is_zero())));
    }
}
