//! Adaptive Simpson quadrature with an absolute tolerance.

use crate::error::{Error, Result};

pub const DEFAULT_MAX_DEPTH: u32 = 48;
pub const DEFAULT_MAX_EVALS: usize = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub n_evals: usize,
}

struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
}

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
///
/// Panels are split until `|S(left) + S(right) - S(whole)| <= 15 tol_panel`;
/// the accepted estimate carries the Richardson correction. Exceeding the
/// evaluation budget is an error, never a silently truncated answer.
pub fn adaptive_simpson<F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<Quadrature>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(tol > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "quadrature needs a finite interval and tol > 0, got [{a}, {b}], tol = {tol}"
        )));
    }
    if a == b {
        return Ok(Quadrature {
            value: 0.0,
            abs_error_estimate: 0.0,
            n_evals: 0,
        });
    }
    if a > b {
        let q = adaptive_simpson(f, b, a, tol)?;
        return Ok(Quadrature {
            value: -q.value,
            ..q
        });
    }
    let mut n_evals = 3;
    let fa = f(a)?;
    let fb = f(b)?;
    let m = 0.5 * (a + b);
    let fm = f(m)?;
    let root = Panel {
        a,
        b,
        fa,
        fm,
        fb,
        whole: simpson(a, b, fa, fm, fb),
    };

    let mut value = 0.0;
    let mut err = 0.0;
    // (panel, tolerance share, depth)
    let mut stack = vec![(root, tol, 0u32)];
    while let Some((p, ptol, depth)) = stack.pop() {
        let m = 0.5 * (p.a + p.b);
        let lm = 0.5 * (p.a + m);
        let rm = 0.5 * (m + p.b);
        let flm = f(lm)?;
        let frm = f(rm)?;
        n_evals += 2;
        let left = simpson(p.a, m, p.fa, flm, p.fm);
        let right = simpson(m, p.b, p.fm, frm, p.fb);
        let delta = left + right - p.whole;
        if delta.abs() <= 15.0 * ptol || depth >= DEFAULT_MAX_DEPTH || !(lm > p.a && rm < p.b) {
            if delta.abs() > 15.0 * ptol {
                return Err(Error::QuadratureFailure {
                    a,
                    b,
                    max_evals: n_evals,
                });
            }
            value += left + right + delta / 15.0;
            err += delta.abs() / 15.0;
            continue;
        }
        if n_evals > DEFAULT_MAX_EVALS {
            return Err(Error::QuadratureFailure {
                a,
                b,
                max_evals: DEFAULT_MAX_EVALS,
            });
        }
        // right pushed first so the left half is processed first
        stack.push((
            Panel {
                a: m,
                b: p.b,
                fa: p.fm,
                fm: frm,
                fb: p.fb,
                whole: right,
            },
            0.5 * ptol,
            depth + 1,
        ));
        stack.push((
            Panel {
                a: p.a,
                b: m,
                fa: p.fa,
                fm: flm,
                fb: p.fm,
                whole: left,
            },
            0.5 * ptol,
            depth + 1,
        ));
    }
    Ok(Quadrature {
        value,
        abs_error_estimate: err,
        n_evals,
    })
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}
