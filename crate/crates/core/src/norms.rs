//! Exact Minkowski norms and the unified weighted sorted-norm evaluator.
//!
//! Every approximation handled by this crate is a weighted city-block norm
//! `sum_i w_i * x_(i)` where `x_(1) >= x_(2) >= ...` is the descending sort
//! of the coordinate absolute values. [`WeightProfile`] classifies a weight
//! vector at construction so evaluation can skip the sort whenever the
//! profile only distinguishes the largest coordinate from the rest.

use crate::error::{Error, Result};
use crate::vector::VectorN;

/// Order of a Minkowski norm. The chessboard norm gets an explicit variant
/// rather than a large-float sentinel so `|x|^p` can never overflow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormOrder {
    P(f64),
    Infinity,
}

/// City-block norm, `sum |x_i|`.
pub fn norm_l1(x: &VectorN) -> f64 {
    x.coords().iter().map(|c| c.abs()).sum()
}

/// Euclidean norm, `sqrt(sum x_i^2)`.
pub fn norm_l2(x: &VectorN) -> f64 {
    x.coords().iter().map(|c| c * c).sum::<f64>().sqrt()
}

/// Chessboard norm, `max |x_i|`.
pub fn norm_linf(x: &VectorN) -> f64 {
    x.coords().iter().fold(0.0f64, |m, c| m.max(c.abs()))
}

/// Minkowski norm of order `p >= 1` (or infinity).
///
/// Orders 1 and 2 route to the dedicated accumulators; other finite orders
/// scale by the largest coordinate before exponentiating so the powers stay
/// representable.
pub fn norm_p(x: &VectorN, order: NormOrder) -> Result<f64> {
    let p = match order {
        NormOrder::Infinity => return Ok(norm_linf(x)),
        NormOrder::P(p) => p,
    };
    if !p.is_finite() || p < 1.0 {
        return Err(Error::Domain(format!("norm order must satisfy p >= 1, got {p}")));
    }
    if p == 1.0 {
        return Ok(norm_l1(x));
    }
    if p == 2.0 {
        return Ok(norm_l2(x));
    }
    let m = norm_linf(x);
    if m == 0.0 {
        return Ok(0.0);
    }
    let sum: f64 = x.coords().iter().map(|c| (c.abs() / m).powf(p)).sum();
    Ok(m * sum.powf(1.0 / p))
}

/// Relative error of a weighted approximation against the Euclidean norm,
/// `|D~(x) - D2(x)| / D2(x)`. The zero vector has no relative error.
pub fn relative_error(w: &WeightProfile, x: &VectorN) -> Result<f64> {
    let d2 = norm_l2(x);
    if d2 == 0.0 {
        return Err(Error::Domain(
            "relative error is undefined at the zero vector".into(),
        ));
    }
    Ok((norm_weighted(x, w)? - d2).abs() / d2)
}

/// Evaluation strategy inferred from the weight vector's shape.
///
/// The two fast shapes cover every family that weighs only "the largest
/// coordinate versus all the rest"; they need a max scan instead of a sort.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum ProfileKind {
    /// `w = (1, t, t, ..., t)`: value = max + t * (sum of the others).
    MaxPlusScaledRest { tail: f64 },
    /// `w = (w1, t, t, ..., t)`: value = (w1 - t) * max + t * sum.
    TwoCoefficient { on_max: f64, on_sum: f64 },
    /// General descending weights: sort and take the dot product.
    RankWeighted,
}

/// Per-rank weights `(w_1, ..., w_n)` applied to the descending sort of the
/// coordinate absolute values.
///
/// Construction accepts any finite non-negative weights with at least one
/// positive entry; whether the profile induces a norm (`w_1 >= ... >= w_n > 0`)
/// is a separate, queryable property so deliberately degenerate profiles such
/// as `(1, 0, ..., 0)` can still be evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightProfile {
    weights: Vec<f64>,
    kind: ProfileKind,
}

impl WeightProfile {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidParameter("empty weight profile".into()));
        }
        if let Some(bad) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::InvalidParameter(format!(
                "weights must be finite and non-negative, got {bad}"
            )));
        }
        if weights.iter().all(|&w| w == 0.0) {
            return Err(Error::InvalidParameter(
                "at least one weight must be positive".into(),
            ));
        }
        let kind = Self::classify(&weights);
        Ok(Self { weights, kind })
    }

    fn classify(weights: &[f64]) -> ProfileKind {
        if weights.len() < 2 {
            return ProfileKind::RankWeighted;
        }
        let tail = weights[1];
        if weights[1..].iter().all(|&w| w == tail) {
            if weights[0] == 1.0 {
                ProfileKind::MaxPlusScaledRest { tail }
            } else {
                ProfileKind::TwoCoefficient {
                    on_max: weights[0] - tail,
                    on_sum: tail,
                }
            }
        } else {
            ProfileKind::RankWeighted
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `w_1 >= w_2 >= ... >= w_n > 0`, the necessary and sufficient condition
    /// for the weighted sorted sum to define a norm (Barni et al.).
    pub fn is_norm_inducing(&self) -> bool {
        self.weights.windows(2).all(|p| p[0] >= p[1]) && *self.weights.last().unwrap() > 0.0
    }

    pub(crate) fn kind(&self) -> ProfileKind {
        self.kind
    }

    pub(crate) fn check_len(&self, dim: usize) -> Result<()> {
        if self.weights.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: self.weights.len(),
                got: dim,
            });
        }
        Ok(())
    }

    /// Shared evaluation core. The counted evaluators use the same routine
    /// with a recording `ops`, so counted and uncounted values agree
    /// bit-for-bit.
    pub(crate) fn eval_kind<R: OpRecorder>(
        &self,
        kind: ProfileKind,
        coords: &[f64],
        scratch: &mut Vec<f64>,
        ops: &mut R,
    ) -> f64 {
        let n = coords.len();
        debug_assert_eq!(n, self.weights.len());
        scratch.clear();
        scratch.extend(coords.iter().map(|c| c.abs()));
        ops.abs_ops(n as u64);

        match kind {
            ProfileKind::MaxPlusScaledRest { tail } => {
                let imax = argmax(scratch, ops);
                let rest = sum_skipping(scratch, imax, ops);
                ops.multiplications(1);
                ops.additions(1);
                scratch[imax] + tail * rest
            }
            ProfileKind::TwoCoefficient { on_max, on_sum } => {
                let imax = argmax(scratch, ops);
                let mut sum = scratch[0];
                for &a in &scratch[1..] {
                    sum += a;
                }
                ops.additions(n as u64 - 1);
                ops.multiplications(2);
                ops.additions(1);
                on_max * scratch[imax] + on_sum * sum
            }
            ProfileKind::RankWeighted => {
                ops.sort_descending(scratch);
                ops.multiplications(n as u64);
                let mut acc = self.weights[0] * scratch[0];
                for (w, a) in self.weights[1..].iter().zip(&scratch[1..]) {
                    acc += w * a;
                }
                ops.additions(n as u64 - 1);
                acc
            }
        }
    }

    pub(crate) fn eval<R: OpRecorder>(
        &self,
        coords: &[f64],
        scratch: &mut Vec<f64>,
        ops: &mut R,
    ) -> f64 {
        self.eval_kind(self.kind, coords, scratch, ops)
    }
}

fn argmax<R: OpRecorder>(abs: &[f64], ops: &mut R) -> usize {
    let mut imax = 0;
    for (i, &a) in abs.iter().enumerate().skip(1) {
        if a > abs[imax] {
            imax = i;
        }
    }
    ops.comparisons(abs.len() as u64 - 1);
    imax
}

fn sum_skipping<R: OpRecorder>(abs: &[f64], skip: usize, ops: &mut R) -> f64 {
    let mut sum = 0.0;
    let mut first = true;
    for (i, &a) in abs.iter().enumerate() {
        if i == skip {
            continue;
        }
        if first {
            sum = a;
            first = false;
        } else {
            sum += a;
        }
    }
    if abs.len() >= 2 {
        ops.additions(abs.len() as u64 - 2);
    }
    sum
}

/// Weighted sorted norm `sum_i w_i * x_(i)` over the descending sort of the
/// coordinate absolute values. Homogeneous, permutation- and sign-invariant.
pub fn norm_weighted(x: &VectorN, w: &WeightProfile) -> Result<f64> {
    w.check_len(x.dim())?;
    let mut scratch = Vec::with_capacity(x.dim());
    Ok(w.eval(x.coords(), &mut scratch, &mut NoRecord))
}

/// Hook for the instrumented evaluators; the no-op implementation keeps the
/// uncounted path free of bookkeeping once monomorphized.
pub(crate) trait OpRecorder {
    fn abs_ops(&mut self, k: u64);
    fn comparisons(&mut self, k: u64);
    fn additions(&mut self, k: u64);
    fn multiplications(&mut self, k: u64);
    /// Sort into descending order, counting comparisons when recording.
    fn sort_descending(&mut self, v: &mut [f64]);
}

pub(crate) struct NoRecord;

impl OpRecorder for NoRecord {
    #[inline(always)]
    fn abs_ops(&mut self, _: u64) {}
    #[inline(always)]
    fn comparisons(&mut self, _: u64) {}
    #[inline(always)]
    fn additions(&mut self, _: u64) {}
    #[inline(always)]
    fn multiplications(&mut self, _: u64) {}
    #[inline(always)]
    fn sort_descending(&mut self, v: &mut [f64]) {
        v.sort_unstable_by(|a, b| b.partial_cmp(a).unwrap());
    }
}
