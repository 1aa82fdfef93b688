//! Real roots of quartic polynomials by Ferrari's method.
//!
//! The depressed quartic `y^4 + p y^2 + q y + r` factors into two quadratics
//! once a root of the resolvent cubic `8m^3 + 8p m^2 + (2p^2 - 8r) m - q^2`
//! is known; the cubic is solved in closed form (Cardano / trigonometric).
//! Roots get two Newton iterations on the original quartic to shed the
//! rounding accumulated through the radical cascade.

/// Real roots of `a4 x^4 + a3 x^3 + a2 x^2 + a1 x + a0`, `a4 != 0`.
/// Unordered, without multiplicity; near-double roots may appear once.
pub fn quartic_real_roots(a4: f64, a3: f64, a2: f64, a1: f64, a0: f64) -> Vec<f64> {
    assert!(a4 != 0.0, "leading coefficient must be nonzero");
    // Monic form, then depress with x = y - b3/4.
    let b3 = a3 / a4;
    let b2 = a2 / a4;
    let b1 = a1 / a4;
    let b0 = a0 / a4;
    let shift = b3 / 4.0;

    let p = b2 - 3.0 / 8.0 * b3 * b3;
    let q = b1 - b3 * b2 / 2.0 + b3 * b3 * b3 / 8.0;
    let r = b0 - b3 * b1 / 4.0 + b3 * b3 * b2 / 16.0 - 3.0 / 256.0 * b3 * b3 * b3 * b3;

    let scale = 1.0f64.max(p.abs()).max(q.abs()).max(r.abs());
    let mut roots = Vec::with_capacity(4);
    if q.abs() <= 1e-14 * scale {
        // Biquadratic: y^2 = t.
        for t in quadratic_real_roots(1.0, p, r) {
            if t > 0.0 {
                roots.push(t.sqrt());
                roots.push(-t.sqrt());
            } else if t == 0.0 {
                roots.push(0.0);
            }
        }
    } else {
        // Resolvent cubic in m: 8m^3 + 8p m^2 + (2p^2 - 8r) m - q^2 = 0.
        // Its value at m=0 is -q^2 < 0, so the largest real root is positive.
        let m = cubic_largest_real_root(8.0, 8.0 * p, 2.0 * p * p - 8.0 * r, -q * q);
        if m > 0.0 {
            let s = (2.0 * m).sqrt();
            let half = p / 2.0 + m;
            let offset = q / (2.0 * s);
            roots.extend(quadratic_real_roots(1.0, -s, half + offset));
            roots.extend(quadratic_real_roots(1.0, s, half - offset));
        }
    }

    let mut out: Vec<f64> = roots.iter().map(|y| y - shift).collect();
    for root in &mut out {
        *root = newton_polish(*root, a4, a3, a2, a1, a0);
    }
    out
}

/// Real roots of `a x^2 + b x + c` with the sign-stable formula.
fn quadratic_real_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Vec::new();
    }
    if disc == 0.0 {
        return vec![-b / (2.0 * a)];
    }
    let sq = disc.sqrt();
    let u = -0.5 * (b + b.signum() * sq);
    if u == 0.0 {
        // b == 0: symmetric pair.
        let root = (-c / a).sqrt();
        return vec![root, -root];
    }
    vec![u / a, c / u]
}

/// Largest real root of `a x^3 + b x^2 + c x + d`, `a != 0`.
fn cubic_largest_real_root(a: f64, b: f64, c: f64, d: f64) -> f64 {
    let b = b / a;
    let c = c / a;
    let d = d / a;
    // Depress with x = t - b/3.
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    let shift = b / 3.0;
    let disc = q * q / 4.0 + p * p * p / 27.0;
    if disc > 0.0 {
        // One real root.
        let sq = disc.sqrt();
        let u = cbrt(-q / 2.0 + sq);
        let v = cbrt(-q / 2.0 - sq);
        u + v - shift
    } else if p == 0.0 && q == 0.0 {
        -shift
    } else {
        // Three real roots; take the largest (k = 0 branch).
        let rho = (-p * p * p / 27.0).sqrt();
        let theta = (-q / (2.0 * rho)).clamp(-1.0, 1.0).acos();
        let mag = 2.0 * (-p / 3.0).sqrt();
        (0..3)
            .map(|k| mag * ((theta + 2.0 * std::f64::consts::PI * k as f64) / 3.0).cos() - shift)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

fn cbrt(x: f64) -> f64 {
    x.cbrt()
}

fn newton_polish(mut x: f64, a4: f64, a3: f64, a2: f64, a1: f64, a0: f64) -> f64 {
    for _ in 0..2 {
        let f = (((a4 * x + a3) * x + a2) * x + a1) * x + a0;
        let df = ((4.0 * a4 * x + 3.0 * a3) * x + 2.0 * a2) * x + a1;
        if df == 0.0 {
            break;
        }
        let step = f / df;
        if !step.is_finite() {
            break;
        }
        x -= step;
    }
    x
}
