//! Error function via the regularized incomplete gamma function,
//! used by the closed-form half-plane heat oracles.

use std::f64::consts::PI;

/// erf(x) to near machine precision.
pub(crate) fn erf(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let p = gamma_p_half(x * x);
    p.copysign(x)
}

/// erfc(x) = 1 - erf(x), accurate for large positive arguments.
pub(crate) fn erfc(x: f64) -> f64 {
    if x < 0.0 {
        2.0 - erfc(-x)
    } else if x < 0.5 {
        1.0 - erf(x)
    } else {
        gamma_q_half(x * x)
    }
}

/// Regularized lower incomplete gamma P(1/2, x) by power series.
fn gamma_p_half(x: f64) -> f64 {
    if x > 1.5 {
        return 1.0 - gamma_q_half(x);
    }
    // series: P(a,x) = x^a e^{-x} / Gamma(a) * sum x^n / (a(a+1)..(a+n))
    let a = 0.5;
    let mut term = 1.0 / a;
    let mut sum = term;
    let mut ap = a;
    for _ in 0..200 {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if term.abs() < sum.abs() * 1e-17 {
            break;
        }
    }
    sum * (-x + a * x.ln()).exp() / PI.sqrt()
}

/// Regularized upper incomplete gamma Q(1/2, x) by continued fraction
/// (modified Lentz).
fn gamma_q_half(x: f64) -> f64 {
    if x <= 1.5 {
        return 1.0 - gamma_p_half(x);
    }
    if x > 740.0 {
        return 0.0;
    }
    let a = 0.5;
    let tiny = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut hh = d;
    for i in 1..300 {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < tiny {
            d = tiny;
        }
        c = b + an / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let del = d * c;
        hh *= del;
        if (del - 1.0).abs() < 1e-17 {
            break;
        }
    }
    (-x + a * x.ln()).exp() * hh / PI.sqrt()
}
