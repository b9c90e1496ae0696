//! Bracketed bisection for strictly increasing functions.

use crate::error::Result;

/// Outcome of searching for `f(s) = target`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Solve {
    Root(f64),
    /// No bracket found inside the search limits.
    Unbracketed,
}

/// Solves `f(s) = target` for increasing `f` restricted to `[lo, hi]`.
///
/// The bracket grows by doubling away from `start` (clamped into the
/// domain) until it straddles `target` or passes `limit` in absolute value.
/// Bisection stops once the bracket is narrower than `tol` or cannot be
/// split further in floating point.
pub fn solve_increasing<F>(
    mut f: F,
    target: f64,
    domain: (f64, f64),
    start: f64,
    limit: f64,
    tol: f64,
) -> Result<Solve>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (dlo, dhi) = (domain.0.max(-limit), domain.1.min(limit));
    let start = start.clamp(dlo, dhi);
    let f0 = f(start)?;
    if f0 == target {
        return Ok(Solve::Root(start));
    }

    // Grow away from `start` until the sign changes.
    let (mut lo, mut hi);
    let mut step = 1.0_f64;
    if f0 < target {
        lo = start;
        loop {
            let probe = (start + step).min(dhi);
            let v = f(probe)?;
            if v >= target {
                hi = probe;
                break;
            }
            lo = probe;
            if probe >= dhi {
                return Ok(Solve::Unbracketed);
            }
            step *= 2.0;
        }
    } else {
        hi = start;
        loop {
            let probe = (start - step).max(dlo);
            let v = f(probe)?;
            if v <= target {
                lo = probe;
                break;
            }
            hi = probe;
            if probe <= dlo {
                return Ok(Solve::Unbracketed);
            }
            step *= 2.0;
        }
    }

    loop {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid <= lo || mid >= hi {
            return Ok(Solve::Root(mid));
        }
        let v = f(mid)?;
        if v == target {
            return Ok(Solve::Root(mid));
        } else if v < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ALL: (f64, f64) = (f64::NEG_INFINITY, f64::INFINITY);

    fn root(s: Solve) -> f64 {
        match s {
            Solve::Root(r) => r,
            Solve::Unbracketed => panic!("no root"),
        }
    }

    #[test]
    fn linear_and_cubic() {
        let r = root(solve_increasing(|s| Ok(2.0 * s + 1.0), 7.0, ALL, 0.0, 1e6, 1e-13).unwrap());
        assert!((r - 3.0).abs() < 1e-12);
        let r = root(solve_increasing(|s| Ok(s * s * s), -27.0, ALL, 0.0, 1e6, 1e-13).unwrap());
        assert!((r + 3.0).abs() < 1e-12);
    }

    #[test]
    fn exponential_with_unreachable_targets() {
        let r = root(solve_increasing(|s| Ok(s.exp()), 1e-8, ALL, 0.0, 1e6, 1e-13).unwrap());
        assert!((r - 1e-8_f64.ln()).abs() < 1e-11);
        assert_eq!(
            solve_increasing(|s| Ok(-(-s).exp()), 0.5, ALL, 0.0, 1e6, 1e-12).unwrap(),
            Solve::Unbracketed
        );
    }

    #[test]
    fn respects_finite_domain() {
        assert_eq!(
            solve_increasing(Ok, 5.0, (0.0, 2.0), 0.0, 1e6, 1e-12).unwrap(),
            Solve::Unbracketed
        );
        let r = root(solve_increasing(Ok, 1.5, (0.0, 2.0), 0.0, 1e6, 1e-13).unwrap());
        assert!((r - 1.5).abs() < 1e-12);
    }
}
