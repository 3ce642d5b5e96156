use std::f64::consts::PI;

use crate::error::{Error, Result};

const ANGLE_SLACK: f64 = 1e-12;

/// Area of `b((x,0), x) ∩ b((y,φ), y)`, the two disks through the origin.
///
/// `S(φ,x,y) = (π−φ)x² − xy sinφ + (y²−x²) arccos((y − x cosφ)/d)` with
/// `d² = x² + y² − 2xy cosφ`. Zero when either radius is zero; `πx²` in the
/// coincident-disk limit `x = y, φ = 0`.
pub fn lens_area(phi: f64, x: f64, y: f64) -> Result<f64> {
    let phi = check(phi, x, y)?;
    if x == 0.0 || y == 0.0 {
        return Ok(0.0);
    }
    if separation(x, y, phi).is_none() {
        return Ok(PI * x * x);
    }
    Ok((PI - phi) * x * x - x * y * phi.sin() + (y * y - x * x) * bisector_angle(phi, x, y))
}

/// `∂S/∂y` in closed form: `−x sinφ + 2y arccos(g) − (y² − x²) x sinφ / d²`.
pub fn lens_area_dy(phi: f64, x: f64, y: f64) -> Result<f64> {
    let phi = check(phi, x, y)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    if y == 0.0 {
        // S(φ, x, y) ≈ (π − φ) y² near y = 0 (the small disk is mostly inside)
        return Ok(0.0);
    }
    let Some(d) = separation(x, y, phi) else {
        return Ok(0.0);
    };
    let s = phi.sin();
    Ok(-x * s + 2.0 * y * bisector_angle(phi, x, y) - (y * y - x * x) * x * s / (d * d))
}

fn check(phi: f64, x: f64, y: f64) -> Result<f64> {
    if !(x >= 0.0 && y >= 0.0 && x.is_finite() && y.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "radii must be non-negative, got x={x}, y={y}"
        )));
    }
    if !(-ANGLE_SLACK..=PI + ANGLE_SLACK).contains(&phi) {
        return Err(Error::InvalidParameter(format!("angle {phi} outside [0, π]")));
    }
    Ok(phi.clamp(0.0, PI))
}

fn separation(x: f64, y: f64, phi: f64) -> Option<f64> {
    // x² + y² − 2xy cosφ written to avoid cancellation when x ≈ y, φ ≈ 0
    let half = (0.5 * phi).sin();
    let d2 = (x - y) * (x - y) + 4.0 * x * y * half * half;
    (d2 > 1e-28 * (x * x + y * y)).then(|| d2.sqrt())
}

/// `arccos((y − x cosφ)/d)`, evaluated as `atan2(x sinφ, y − x cosφ)`; the
/// two agree because `d² = (y − x cosφ)² + (x sinφ)²`, and the `atan2` form
/// stays accurate where the arccos argument is within rounding of ±1.
fn bisector_angle(phi: f64, x: f64, y: f64) -> f64 {
    let half = (0.5 * phi).sin();
    (x * phi.sin()).atan2((y - x) + 2.0 * x * half * half)
}
