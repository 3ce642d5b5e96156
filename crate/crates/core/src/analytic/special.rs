//! Special functions needed by the closed-form laws.

use statrs::function::gamma;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Complementary error function (musl algorithm, about 1 ulp).
pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

pub fn gamma_fn(x: f64) -> f64 {
    gamma::gamma(x)
}

/// Lower incomplete gamma `γ(a, z) = ∫₀^z e^{−t} t^{a−1} dt` (not regularized).
pub fn lower_incomplete_gamma(a: f64, z: f64) -> f64 {
    gamma::gamma_lr(a, z) * gamma::gamma(a)
}

/// Regularized upper incomplete gamma `Q(a, z)`.
pub fn upper_regularized_gamma(a: f64, z: f64) -> f64 {
    gamma::gamma_ur(a, z)
}

/// Exponential integral `E₁(x) = ∫ₓ^∞ e^{−t}/t dt` for `x > 0`: power series
/// below 1, Lentz continued fraction otherwise.
pub fn exp_integral_e1(x: f64) -> f64 {
    if x <= 0.0 {
        return if x == 0.0 { f64::INFINITY } else { f64::NAN };
    }
    if x < 1.0 {
        let mut sum = 0.0;
        let mut term = 1.0;
        for k in 1..200 {
            term *= -x / k as f64;
            let add = term / k as f64;
            sum += add;
            if add.abs() < 1e-17 * sum.abs().max(1e-300) {
                break;
            }
        }
        -EULER_GAMMA - x.ln() - sum
    } else {
        let tiny = 1e-300;
        let mut b = x + 1.0;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..500 {
            let a = -((i * i) as f64);
            b += 2.0;
            d = 1.0 / (a * d + b);
            c = b + a / c;
            let delta = c * d;
            h *= delta;
            if (delta - 1.0).abs() < 1e-16 {
                break;
            }
        }
        h * (-x).exp()
    }
}
