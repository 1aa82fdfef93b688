//! Instrumented norm evaluation for the operation-count cost model.
//!
//! These are separate entry points rather than a flag on the hot path; they
//! run the same arithmetic as the uncounted evaluators and tally every
//! primitive operation. The ranked-weight path sorts with Batcher's merge
//! exchange so the comparison count is a deterministic, data-independent
//! function of n.

use crate::error::Result;
use crate::norms::{OpRecorder, ProfileKind, WeightProfile};
use crate::vector::VectorN;

/// Primitive operations performed by one norm evaluation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCount {
    pub abs_ops: u64,
    pub comparisons: u64,
    pub additions: u64,
    pub multiplications: u64,
    pub square_roots: u64,
}

impl OpCount {
    pub fn new(abs_ops: u64, comparisons: u64, additions: u64, multiplications: u64, square_roots: u64) -> Self {
        Self { abs_ops, comparisons, additions, multiplications, square_roots }
    }
}

impl std::fmt::Display for OpCount {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "abs={} comp={} add={} mult={} sqrt={}",
            self.abs_ops, self.comparisons, self.additions, self.multiplications, self.square_roots
        )
    }
}

impl OpRecorder for OpCount {
    fn abs_ops(&mut self, k: u64) {
        self.abs_ops += k;
    }
    fn comparisons(&mut self, k: u64) {
        self.comparisons += k;
    }
    fn additions(&mut self, k: u64) {
        self.additions += k;
    }
    fn multiplications(&mut self, k: u64) {
        self.multiplications += k;
    }
    fn sort_descending(&mut self, v: &mut [f64]) {
        self.comparisons += merge_exchange_desc(v);
    }
}

/// Batcher's merge exchange (Knuth 5.2.2M), descending order.
///
/// Data-oblivious: the executed compare-exchange pairs depend only on the
/// length, so the returned comparison count is deterministic and lies within
/// the usual O(n log^2 n) envelope (n=8: 19, n=16: 63, n=64: 543).
pub fn merge_exchange_desc(v: &mut [f64]) -> u64 {
    let n = v.len();
    if n < 2 {
        return 0;
    }
    let t = usize::BITS - (n - 1).leading_zeros(); // ceil(log2 n)
    let mut count = 0u64;
    let mut p = 1usize << (t - 1);
    while p >= 1 {
        let mut q = 1usize << (t - 1);
        let mut r = 0usize;
        let mut d = p;
        loop {
            for i in 0..n.saturating_sub(d) {
                if i & p == r {
                    count += 1;
                    if v[i] < v[i + d] {
                        v.swap(i, i + d);
                    }
                }
            }
            if q == p {
                break;
            }
            d = q - p;
            q >>= 1;
            r = p;
        }
        p >>= 1;
    }
    count
}

fn eval_counted(x: &VectorN, w: &WeightProfile, kind: ProfileKind) -> Result<(f64, OpCount)> {
    w.check_len(x.dim())?;
    let mut ops = OpCount::default();
    let mut scratch = Vec::with_capacity(x.dim());
    let value = w.eval_kind(kind, x.coords(), &mut scratch, &mut ops);
    Ok((value, ops))
}

/// Counted twin of [`crate::norms::norm_weighted`]; the value is bit-for-bit
/// identical to the uncounted evaluation.
pub fn weighted(x: &VectorN, w: &WeightProfile) -> Result<(f64, OpCount)> {
    eval_counted(x, w, w.kind())
}

/// Counted evaluation forced through the full sort-and-dot path, regardless
/// of the profile shape. Used to report the ranked-weight cost row at
/// dimensions where short profiles would otherwise take a fast path.
pub fn weighted_ranked(x: &VectorN, w: &WeightProfile) -> Result<(f64, OpCount)> {
    eval_counted(x, w, ProfileKind::RankWeighted)
}

/// Counted city-block norm: n ABS, n-1 ADD.
pub fn l1(x: &VectorN) -> (f64, OpCount) {
    let n = x.dim() as u64;
    let mut it = x.coords().iter().map(|c| c.abs());
    let mut sum = it.next().unwrap();
    for a in it {
        sum += a;
    }
    (sum, OpCount::new(n, 0, n - 1, 0, 0))
}

/// Counted Euclidean norm: n MULT, n-1 ADD, 1 SQRT.
pub fn l2(x: &VectorN) -> (f64, OpCount) {
    let n = x.dim() as u64;
    let coords = x.coords();
    let mut sum = coords[0] * coords[0];
    for c in &coords[1..] {
        sum += c * c;
    }
    (sum.sqrt(), OpCount::new(0, 0, n - 1, n, 1))
}

/// Counted chessboard norm: n ABS, n-1 COMP.
pub fn linf(x: &VectorN) -> (f64, OpCount) {
    let n = x.dim() as u64;
    let mut max = x.coords()[0].abs();
    for c in &x.coords()[1..] {
        let a = c.abs();
        if a > max {
            max = a;
        }
    }
    (max, OpCount::new(n, n - 1, 0, 0, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::{norm_l1, norm_l2, norm_linf, norm_weighted};

    fn v(coords: &[f64]) -> VectorN {
        VectorN::new(coords.to_vec()).unwrap()
    }

    #[test]
    fn merge_exchange_sorts_descending() {
        let mut a = vec![3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0, 5.0];
        merge_exchange_desc(&mut a);
        let mut b = a.clone();
        b.sort_unstable_by(|x, y| y.partial_cmp(x).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn merge_exchange_counts_are_data_independent() {
        for n in 1..=40usize {
            let mut up: Vec<f64> = (0..n).map(|i| i as f64).collect();
            let mut down: Vec<f64> = (0..n).map(|i| -(i as f64)).collect();
            assert_eq!(merge_exchange_desc(&mut up), merge_exchange_desc(&mut down), "n={n}");
        }
    }

    #[test]
    fn known_network_sizes() {
        // Comparator counts of Batcher's merge exchange at powers of two.
        for (n, want) in [(2usize, 1u64), (4, 5), (8, 19), (16, 63), (64, 543)] {
            let mut a: Vec<f64> = (0..n).map(|i| (i * 7 % 13) as f64).collect();
            assert_eq!(merge_exchange_desc(&mut a), want, "n={n}");
        }
    }

    #[test]
    fn dlambda_shape_counts() {
        let w = WeightProfile::new(vec![1.0, 0.25, 0.25, 0.25, 0.25, 0.25, 0.25, 0.25]).unwrap();
        let x = v(&[0.5, -1.0, 2.0, 0.25, -0.75, 1.5, 0.1, -0.2]);
        let (val, ops) = weighted(&x, &w).unwrap();
        assert_eq!(ops, OpCount::new(8, 7, 7, 1, 0));
        assert_eq!(val, norm_weighted(&x, &w).unwrap());
    }

    #[test]
    fn two_coefficient_shape_counts() {
        let w = WeightProfile::new(vec![0.9, 0.3, 0.3, 0.3, 0.3, 0.3, 0.3, 0.3]).unwrap();
        let x = v(&[0.5, -1.0, 2.0, 0.25, -0.75, 1.5, 0.1, -0.2]);
        let (val, ops) = weighted(&x, &w).unwrap();
        assert_eq!(ops, OpCount::new(8, 7, 8, 2, 0));
        assert_eq!(val, norm_weighted(&x, &w).unwrap());
    }

    #[test]
    fn ranked_shape_counts() {
        let w = WeightProfile::new(vec![1.0, 0.7, 0.5, 0.4, 0.35, 0.3, 0.25, 0.2]).unwrap();
        let x = v(&[0.5, -1.0, 2.0, 0.25, -0.75, 1.5, 0.1, -0.2]);
        let (val, ops) = weighted(&x, &w).unwrap();
        assert_eq!(ops, OpCount::new(8, 19, 7, 8, 0));
        assert_eq!(val, norm_weighted(&x, &w).unwrap());
    }

    #[test]
    fn forced_ranked_path_on_short_profile() {
        // A two-weight profile at n=2 would take a fast path; forcing the
        // ranked path reports the sort-based cost instead.
        let w = WeightProfile::new(vec![0.96, 0.4]).unwrap();
        let x = v(&[3.0, -4.0]);
        let (val, ops) = weighted_ranked(&x, &w).unwrap();
        assert_eq!(ops, OpCount::new(2, 1, 1, 2, 0));
        let (auto_val, auto_ops) = weighted(&x, &w).unwrap();
        assert_eq!(auto_ops, OpCount::new(2, 1, 2, 2, 0));
        assert!((val - auto_val).abs() <= 4.0 * f64::EPSILON * val);
    }

    #[test]
    fn exact_norm_counts() {
        let x = v(&[0.5, -1.0, 2.0, 0.25, -0.75, 1.5, 0.1, -0.2]);
        let (v1, c1) = l1(&x);
        assert_eq!(c1, OpCount::new(8, 0, 7, 0, 0));
        assert_eq!(v1, norm_l1(&x));
        let (v2, c2) = l2(&x);
        assert_eq!(c2, OpCount::new(0, 0, 7, 8, 1));
        assert_eq!(v2, norm_l2(&x));
        let (vi, ci) = linf(&x);
        assert_eq!(ci, OpCount::new(8, 7, 0, 0, 0));
        assert_eq!(vi, norm_linf(&x));
    }
}
