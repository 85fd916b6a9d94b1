//! Adaptive Simpson integration of small matrix-valued functions.

use nalgebra::SMatrix;

use crate::error::{Error, Result};

const MAX_DEPTH: u32 = 48;

pub(crate) fn adaptive_simpson<const R: usize, const C: usize, F>(
    f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
) -> Result<SMatrix<f64, R, C>>
where
    F: Fn(f64) -> Result<SMatrix<f64, R, C>>,
{
    let fa = f(a)?;
    let fb = f(b)?;
    let m = 0.5 * (a + b);
    let fm = f(m)?;
    let whole = (fa + fm * 4.0 + fb) * ((b - a) / 6.0);
    // Absolute target scaled by a coarse magnitude estimate.
    let scale = whole.amax().max(fa.amax() * (b - a)).max(f64::MIN_POSITIVE);
    recurse(&f, a, b, fa, fm, fb, whole, rel_tol * scale, MAX_DEPTH)
}

#[allow(clippy::too_many_arguments)]
fn recurse<const R: usize, const C: usize, F>(
    f: &F,
    a: f64,
    b: f64,
    fa: SMatrix<f64, R, C>,
    fm: SMatrix<f64, R, C>,
    fb: SMatrix<f64, R, C>,
    whole: SMatrix<f64, R, C>,
    abs_tol: f64,
    depth: u32,
) -> Result<SMatrix<f64, R, C>>
where
    F: Fn(f64) -> Result<SMatrix<f64, R, C>>,
{
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let flm = f(lm)?;
    let frm = f(rm)?;
    let left = (fa + flm * 4.0 + fm) * ((m - a) / 6.0);
    let right = (fm + frm * 4.0 + fb) * ((b - m) / 6.0);
    let delta = left + right - whole;
    if delta.amax() <= 15.0 * abs_tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(Error::QuadratureFailure);
    }
    let l = recurse(f, a, m, fa, flm, fm, left, abs_tol / 2.0, depth - 1)?;
    let r = recurse(f, m, b, fm, frm, fb, right, abs_tol / 2.0, depth - 1)?;
    Ok(l + r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::Matrix1;

    #[test]
    fn integrates_lorentzian() {
        let f = |x: f64| Ok(Matrix1::new(1.0 / (1.0 + x * x)));
        let v = adaptive_simpson(f, -5.0, 5.0, 1e-10).unwrap();
        assert!((v[0] - 2.0 * 5.0f64.atan()).abs() < 1e-9);
    }
}
