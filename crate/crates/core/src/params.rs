//! Optimal parameters and analytical maximum relative errors for the four
//! published approximation families, as functions of the dimension n.
//!
//! - `D_lambda` (Chaudhuri et al. 1992): largest coordinate plus a scaled
//!   sum of the rest, with either the original dimension-derived scale or
//!   the minimax-optimal scale obtained by Rhodes (1995) from a quartic.
//! - `D_{mu,lambda}` (Rhodes 1995): two-parameter combination of the
//!   chessboard and city-block norms, closed-form optimum.
//! - `D_B` (Barni et al. 1995/2000): fully rank-weighted profile, the
//!   minimax optimum over all descending profiles.
//! - `D_{a,b}` (Seol & Cheun 2008): least-squares combination fitted on
//!   Gaussian samples via a 2x2 normal-equation system.

use crate::accum::KahanSum;
use crate::error::{Error, Result};
use crate::norms::WeightProfile;
use crate::quartic::quartic_real_roots;
use crate::rng::{GaussianStream, STREAM_FIT_BASE};

/// The closed set of approximation families handled by this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NormFamily {
    ChaudhuriOriginal,
    LambdaOptimal,
    MuLambda,
    MuLambdaInferior,
    Barni,
    SeolCheunAb,
}

impl NormFamily {
    pub const ALL: [NormFamily; 6] = [
        NormFamily::ChaudhuriOriginal,
        NormFamily::LambdaOptimal,
        NormFamily::MuLambda,
        NormFamily::MuLambdaInferior,
        NormFamily::Barni,
        NormFamily::SeolCheunAb,
    ];

    /// Short identifier used by the CLI and report rows.
    pub fn id(&self) -> &'static str {
        match self {
            NormFamily::ChaudhuriOriginal => "chaudhuri",
            NormFamily::LambdaOptimal => "dlambda",
            NormFamily::MuLambda => "dmulambda",
            NormFamily::MuLambdaInferior => "dmulambda-inferior",
            NormFamily::Barni => "barni",
            NormFamily::SeolCheunAb => "dab",
        }
    }
}

impl std::fmt::Display for NormFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.id())
    }
}

/// A family together with its optimal parameters for one dimension.
#[derive(Debug, Clone, PartialEq)]
pub enum NormParams {
    ChaudhuriOriginal {
        n: usize,
        lambda: f64,
    },
    LambdaOptimal {
        n: usize,
        lambda: f64,
    },
    MuLambda {
        n: usize,
        mu: f64,
        lambda: f64,
    },
    /// Rhodes' reversed-order variant (`mu* = 0`). Kept for the accuracy
    /// comparison only; it has no descending weight profile.
    MuLambdaInferior {
        n: usize,
        lambda: f64,
    },
    Barni {
        n: usize,
        delta: f64,
        alphas: Vec<f64>,
    },
    SeolCheunAb {
        n: usize,
        a: f64,
        b: f64,
        fit_samples: u64,
        seed: u64,
        workers: usize,
    },
}

fn require_dim(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Domain(format!("dimension must be >= 2, got {n}")));
    }
    Ok(())
}

/// Chaudhuri et al.'s dimension-derived scale, `1 / (n - floor((n-2)/2))`.
pub fn chaudhuri_lambda(n: usize) -> Result<f64> {
    require_dim(n)?;
    Ok(1.0 / (n - (n - 2) / 2) as f64)
}

/// Published maximum-relative-error facts for `D_lambda` with Chaudhuri's
/// original scale: the exact value in the small-n overestimation regime and
/// the large-n bracket endpoints. Callers pick the piece for their regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChaudhuriMre {
    /// `1 - (1 - lambda(n-1))/sqrt(n)`, the reported lower endpoint.
    pub bracket_lower: f64,
    /// `1 - lambda`, the reported upper endpoint.
    pub bracket_upper: f64,
    /// Overestimation maximum `sqrt(1 + 4(n-1)/(n+2)^2) - 1` (even n, `n+3`
    /// for odd n); present when it is the true maximum relative error, which
    /// for this scale happens at n = 2, 3, 4, 6 — everywhere else the
    /// underestimation corner is worse (see
    /// [`NormParams::mre_theoretical`]).
    pub exact_small_n: Option<f64>,
}

pub fn mre_chaudhuri_original(n: usize) -> Result<ChaudhuriMre> {
    require_dim(n)?;
    let nf = n as f64;
    let lambda = chaudhuri_lambda(n)?;
    let denom = if n.is_multiple_of(2) { nf + 2.0 } else { nf + 3.0 };
    let over = (1.0 + 4.0 * (nf - 1.0) / (denom * denom)).sqrt() - 1.0;
    let under = 1.0 - min_prefix_corner(lambda, n);
    Ok(ChaudhuriMre {
        bracket_lower: 1.0 - (1.0 - lambda * (nf - 1.0)) / nf.sqrt(),
        bracket_upper: 1.0 - lambda,
        exact_small_n: (over >= under).then_some(over),
    })
}

/// Smallest value of `D_lambda` over the unit sphere: the minimum over k of
/// `(1 + lambda(k-1))/sqrt(k)`, attained at a uniform k-coordinate corner.
fn min_prefix_corner(lambda: f64, n: usize) -> f64 {
    (1..=n)
        .map(|k| (1.0 + lambda * (k as f64 - 1.0)) / (k as f64).sqrt())
        .fold(f64::INFINITY, f64::min)
}

/// Defining equation for the minimax scale of `D_lambda`: the underestimate
/// `1 - 2 sqrt(lambda - lambda^2)` minus the overestimate
/// `sqrt(1 + lambda^2 (n-1)) - 1`; the optimum is its root in (0, 1/2).
pub(crate) fn lambda_defining_residual(lambda: f64, n: usize) -> f64 {
    let under = 1.0 - 2.0 * (lambda - lambda * lambda).sqrt();
    let over = (1.0 + lambda * lambda * (n as f64 - 1.0)).sqrt() - 1.0;
    under - over
}

const LAMBDA_RESIDUAL_TOL: f64 = 1e-10;

/// Minimax-optimal scale for `D_lambda` (Rhodes 1995).
///
/// Squaring the defining equation twice yields the quartic
/// `(n+3)^2 L^4 - 8(n+3) L^3 + (62-6n) L^2 - 40 L + 9 = 0`,
/// solved by Ferrari's method. Squaring introduces spurious roots, so every
/// candidate is validated against the unsquared equation and the smallest
/// passing root in (0, 1/2) is returned; bisection of the defining equation
/// is the fallback if no closed-form candidate survives.
pub fn solve_lambda_optimal(n: usize) -> Result<f64> {
    require_dim(n)?;
    let nf = n as f64;
    let c = nf + 3.0;
    let mut candidates = quartic_real_roots(c * c, -8.0 * c, 62.0 - 6.0 * nf, -40.0, 9.0);
    candidates.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for root in candidates {
        if root > 0.0
            && root < 0.5
            && lambda_defining_residual(root, n).abs() < LAMBDA_RESIDUAL_TOL
        {
            return Ok(root);
        }
    }
    let root = bisect_lambda(n);
    if lambda_defining_residual(root, n).abs() < LAMBDA_RESIDUAL_TOL {
        return Ok(root);
    }
    Err(Error::Numerical(format!(
        "no root of the optimal-lambda equation passed the residual check for n = {n}"
    )))
}

fn bisect_lambda(n: usize) -> f64 {
    // Residual is +1 at 0+ and negative at 1/2.
    let (mut lo, mut hi) = (f64::MIN_POSITIVE, 0.5);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if lambda_defining_residual(mid, n) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Maximum relative error of the minimax `D_lambda`, `1 - 2 sqrt(l - l^2)`.
pub fn mre_lambda_optimal(lambda: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda < 0.5) {
        return Err(Error::Domain(format!(
            "optimal lambda must lie in (0, 1/2), got {lambda}"
        )));
    }
    Ok(1.0 - 2.0 * (lambda - lambda * lambda).sqrt())
}

/// Closed-form optimum of a two-parameter family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuLambdaParams {
    pub mu: f64,
    pub lambda: f64,
    pub mre: f64,
}

/// Optimal `D_{mu,lambda}` (0 < lambda < mu): `lambda* = 2/(2n^(1/4) +
/// sqrt(2n + 2 sqrt(n)))`, `mu* = (sqrt(n)+1) lambda*`, MRE `1 - 2 lambda*
/// n^(1/4)`.
pub fn mu_lambda_optimal(n: usize) -> Result<MuLambdaParams> {
    require_dim(n)?;
    let nf = n as f64;
    let quarter_root = nf.powf(0.25);
    let lambda = 2.0 / (2.0 * quarter_root + (2.0 * nf + 2.0 * nf.sqrt()).sqrt());
    Ok(MuLambdaParams {
        mu: (nf.sqrt() + 1.0) * lambda,
        lambda,
        mre: 1.0 - 2.0 * lambda * quarter_root,
    })
}

/// Optimal `D_{mu,lambda}` with the order reversed (`0 <= mu < lambda`):
/// `lambda* = 2/(1 + sqrt(n-1))`, `mu* = 0`, MRE `1 - lambda*`.
///
/// At n = 2 the formula collapses to `lambda* = 1`, MRE 0, a degenerate
/// boundary value; accuracy comparisons against the other families start
/// at n = 3 for this variant.
pub fn mu_lambda_inferior(n: usize) -> Result<MuLambdaParams> {
    require_dim(n)?;
    let lambda = 2.0 / (1.0 + (n as f64 - 1.0).sqrt());
    Ok(MuLambdaParams {
        mu: 0.0,
        lambda,
        mre: 1.0 - lambda,
    })
}

/// Closed-form optimum of the rank-weighted family.
#[derive(Debug, Clone, PartialEq)]
pub struct BarniParams {
    pub delta: f64,
    pub alphas: Vec<f64>,
    pub mre: f64,
}

/// Optimal rank weights `alpha_i* = sqrt(i) - sqrt(i-1)` with global scale
/// `delta* = 2/(1 + sqrt(sum alpha*^2))`; MRE `1 - delta*`.
pub fn barni_optimal(n: usize) -> Result<BarniParams> {
    require_dim(n)?;
    let alphas: Vec<f64> = (1..=n)
        // sqrt(i) - sqrt(i-1), in the cancellation-free form.
        .map(|i| 1.0 / ((i as f64).sqrt() + (i as f64 - 1.0).sqrt()))
        .collect();
    let sum_sq: f64 = alphas.iter().map(|a| a * a).sum();
    let delta = 2.0 / (1.0 + sum_sq.sqrt());
    Ok(BarniParams {
        delta,
        alphas,
        mre: 1.0 - delta,
    })
}

/// Least-squares fit of `a D_inf + b D_1 ~ D_2` over standard-Gaussian
/// vectors: accumulates the five second moments of the seeded sample and
/// solves the 2x2 normal-equation system by elimination.
///
/// Deterministic given `(n, sample_count, seed, workers)`; the sample is
/// split across `workers` substreams and the moment accumulators are merged
/// in worker order.
pub fn fit_seol_cheun(n: usize, sample_count: u64, seed: u64, workers: usize) -> Result<(f64, f64)> {
    require_dim(n)?;
    if sample_count < 1000 {
        return Err(Error::Domain(format!(
            "fit needs at least 1000 samples, got {sample_count}"
        )));
    }
    if workers == 0 {
        return Err(Error::Domain("worker count must be >= 1".into()));
    }

    let moments = if workers == 1 {
        fit_moments(n, sample_count, seed, 0)
    } else {
        let shares: Vec<u64> = (0..workers as u64)
            .map(|w| sample_count / workers as u64 + u64::from(w < sample_count % workers as u64))
            .collect();
        let mut partials: Vec<FitMoments> = Vec::with_capacity(workers);
        std::thread::scope(|scope| {
            let handles: Vec<_> = shares
                .iter()
                .enumerate()
                .map(|(w, &share)| scope.spawn(move || fit_moments(n, share, seed, w as u64)))
                .collect();
            for handle in handles {
                partials.push(handle.join().expect("fit worker panicked"));
            }
        });
        let mut total = FitMoments::default();
        for part in partials {
            total.merge(&part);
        }
        total
    };

    let s_ii = moments.inf_inf.value();
    let s_i1 = moments.inf_one.value();
    let s_11 = moments.one_one.value();
    let s_2i = moments.two_inf.value();
    let s_21 = moments.two_one.value();

    let det = s_ii * s_11 - s_i1 * s_i1;
    if det.abs() < 1e-12 * s_ii * s_11 {
        return Err(Error::Numerical(
            "singular normal-equation system in the a,b fit".into(),
        ));
    }
    let a = (s_2i * s_11 - s_21 * s_i1) / det;
    let b = (s_ii * s_21 - s_i1 * s_2i) / det;
    if a <= 0.0 || b <= 0.0 {
        return Err(Error::Numerical(format!(
            "fitted coefficients must be positive, got a = {a}, b = {b}"
        )));
    }
    Ok((a, b))
}

#[derive(Default)]
struct FitMoments {
    inf_inf: KahanSum,
    inf_one: KahanSum,
    one_one: KahanSum,
    two_inf: KahanSum,
    two_one: KahanSum,
}

impl FitMoments {
    fn merge(&mut self, other: &Self) {
        self.inf_inf.add(other.inf_inf.value());
        self.inf_one.add(other.inf_one.value());
        self.one_one.add(other.one_one.value());
        self.two_inf.add(other.two_inf.value());
        self.two_one.add(other.two_one.value());
    }
}

fn fit_moments(n: usize, count: u64, seed: u64, worker: u64) -> FitMoments {
    let mut stream = GaussianStream::new(seed, STREAM_FIT_BASE + worker);
    let mut buf = vec![0.0f64; n];
    let mut m = FitMoments::default();
    for _ in 0..count {
        stream.fill_gaussian(&mut buf);
        let mut d_inf = 0.0f64;
        let mut d_one = 0.0f64;
        let mut sum_sq = 0.0f64;
        for &c in &buf {
            let a = c.abs();
            if a > d_inf {
                d_inf = a;
            }
            d_one += a;
            sum_sq += c * c;
        }
        let d_two = sum_sq.sqrt();
        m.inf_inf.add(d_inf * d_inf);
        m.inf_one.add(d_inf * d_one);
        m.one_one.add(d_one * d_one);
        m.two_inf.add(d_two * d_inf);
        m.two_one.add(d_two * d_one);
    }
    m
}

impl NormParams {
    pub fn chaudhuri(n: usize) -> Result<Self> {
        Ok(NormParams::ChaudhuriOriginal {
            n,
            lambda: chaudhuri_lambda(n)?,
        })
    }

    pub fn lambda_optimal(n: usize) -> Result<Self> {
        Ok(NormParams::LambdaOptimal {
            n,
            lambda: solve_lambda_optimal(n)?,
        })
    }

    pub fn mu_lambda(n: usize) -> Result<Self> {
        let p = mu_lambda_optimal(n)?;
        debug_assert!(0.0 < p.lambda && p.lambda < p.mu);
        Ok(NormParams::MuLambda {
            n,
            mu: p.mu,
            lambda: p.lambda,
        })
    }

    pub fn mu_lambda_inferior(n: usize) -> Result<Self> {
        let p = mu_lambda_inferior(n)?;
        Ok(NormParams::MuLambdaInferior { n, lambda: p.lambda })
    }

    pub fn barni(n: usize) -> Result<Self> {
        let p = barni_optimal(n)?;
        Ok(NormParams::Barni {
            n,
            delta: p.delta,
            alphas: p.alphas,
        })
    }

    pub fn seol_cheun(n: usize, fit_samples: u64, seed: u64, workers: usize) -> Result<Self> {
        let (a, b) = fit_seol_cheun(n, fit_samples, seed, workers)?;
        Ok(NormParams::SeolCheunAb {
            n,
            a,
            b,
            fit_samples,
            seed,
            workers,
        })
    }

    pub fn family(&self) -> NormFamily {
        match self {
            NormParams::ChaudhuriOriginal { .. } => NormFamily::ChaudhuriOriginal,
            NormParams::LambdaOptimal { .. } => NormFamily::LambdaOptimal,
            NormParams::MuLambda { .. } => NormFamily::MuLambda,
            NormParams::MuLambdaInferior { .. } => NormFamily::MuLambdaInferior,
            NormParams::Barni { .. } => NormFamily::Barni,
            NormParams::SeolCheunAb { .. } => NormFamily::SeolCheunAb,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            NormParams::ChaudhuriOriginal { n, .. }
            | NormParams::LambdaOptimal { n, .. }
            | NormParams::MuLambda { n, .. }
            | NormParams::MuLambdaInferior { n, .. }
            | NormParams::Barni { n, .. }
            | NormParams::SeolCheunAb { n, .. } => *n,
        }
    }

    /// Analytical maximum relative error, when the family has one.
    ///
    /// The minimax families carry their published closed forms. For the
    /// original Chaudhuri scale the exact maximum is assembled from the two
    /// closed-form extremes of the profile over the unit sphere (largest
    /// value `sqrt(1 + lambda^2 (n-1))`, smallest value at a uniform
    /// k-coordinate corner). The fitted family has no analytical value.
    pub fn mre_theoretical(&self) -> Option<f64> {
        match self {
            NormParams::ChaudhuriOriginal { n, lambda } => {
                let over = (1.0 + lambda * lambda * (*n as f64 - 1.0)).sqrt() - 1.0;
                let under = 1.0 - min_prefix_corner(*lambda, *n);
                Some(over.max(under))
            }
            NormParams::LambdaOptimal { lambda, .. } => {
                Some(1.0 - 2.0 * (lambda - lambda * lambda).sqrt())
            }
            NormParams::MuLambda { n, lambda, .. } => {
                Some(1.0 - 2.0 * lambda * (*n as f64).powf(0.25))
            }
            NormParams::MuLambdaInferior { lambda, .. } => Some(1.0 - lambda),
            NormParams::Barni { delta, .. } => Some(1.0 - delta),
            NormParams::SeolCheunAb { .. } => None,
        }
    }

    /// Rank-weight realization of this parameter set.
    ///
    /// | family        | w_1      | w_(i>1)           |
    /// |---------------|----------|-------------------|
    /// | `D_lambda`    | 1        | lambda            |
    /// | `D_{mu,l}`    | mu*      | lambda*           |
    /// | `D_B`         | delta*   | delta* alpha_i*   |
    /// | `D_{a,b}`     | a + b    | b                 |
    ///
    /// Every returned profile is checked to be norm-inducing. The reversed
    /// `mu* = 0` variant weighs the smallest coordinate instead of the
    /// largest and therefore has no descending rank-weight form.
    pub fn weight_profile(&self) -> Result<WeightProfile> {
        let weights = match self {
            NormParams::ChaudhuriOriginal { n, lambda }
            | NormParams::LambdaOptimal { n, lambda } => {
                let mut w = vec![*lambda; *n];
                w[0] = 1.0;
                w
            }
            NormParams::MuLambda { n, mu, lambda } => {
                let mut w = vec![*lambda; *n];
                w[0] = *mu;
                w
            }
            NormParams::MuLambdaInferior { .. } => {
                return Err(Error::InvalidParameter(
                    "the zero-mu variant has no descending rank-weight form".into(),
                ));
            }
            NormParams::Barni { delta, alphas, .. } => {
                alphas.iter().map(|a| delta * a).collect()
            }
            NormParams::SeolCheunAb { n, a, b, .. } => {
                let mut w = vec![*b; *n];
                w[0] = a + b;
                w
            }
        };
        let profile = WeightProfile::new(weights)?;
        if !profile.is_norm_inducing() {
            return Err(Error::InvalidParameter(format!(
                "{} parameters produce a non-norm-inducing profile",
                self.family()
            )));
        }
        Ok(profile)
    }
}

/// Free-function form of [`NormParams::weight_profile`].
pub fn weight_profile_of(params: &NormParams) -> Result<WeightProfile> {
    params.weight_profile()
}
