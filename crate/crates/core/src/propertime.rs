//! Proper time of worldlines, measured directly or through the radar
//! coordinates of an accelerated observer.
//!
//! A trajectory in the radar chart of `γ` is `t ↦ x(t)`; the chart point
//! at radar time `t` is `ct + x(t)σ`. Its proper time is
//! `∫ |DΩ_γ|_L(ct + x(t)σ) · sqrt(1 - v(t)²/c²) dt`, which reduces to the
//! flat formula when the conformal factor is one.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::interp::MonotoneCubic;
use crate::mw::MwMap;
use crate::observer::Observer;
use crate::quad::adaptive_simpson;
use crate::splitc::{LightspeedContext, SplitComplex};

pub const DEFAULT_QUAD_TOL: f64 = 1e-10;

type Curve = Arc<dyn Fn(f64) -> Result<f64> + Send + Sync>;

/// Position `x(t)` and velocity `v(t)` in some radar chart over `[t₀, t₁]`.
#[derive(Clone)]
pub struct RadarTrajectory {
    x: Curve,
    v: Curve,
    window: (f64, f64),
}

impl fmt::Debug for RadarTrajectory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadarTrajectory")
            .field("window", &self.window)
            .finish_non_exhaustive()
    }
}

impl RadarTrajectory {
    pub fn new<X, V>(x: X, v: V, window: (f64, f64)) -> Result<Self>
    where
        X: Fn(f64) -> Result<f64> + Send + Sync + 'static,
        V: Fn(f64) -> Result<f64> + Send + Sync + 'static,
    {
        if !(window.0 < window.1) || !window.0.is_finite() || !window.1.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "trajectory window must be finite and nonempty, got {window:?}"
            )));
        }
        Ok(RadarTrajectory {
            x: Arc::new(x),
            v: Arc::new(v),
            window,
        })
    }

    /// A clock held at radar position `x0`.
    pub fn constant(x0: f64, window: (f64, f64)) -> Result<Self> {
        RadarTrajectory::new(move |_| Ok(x0), |_| Ok(0.0), window)
    }

    /// `x(t) = x0 + v t`.
    pub fn linear(x0: f64, v: f64, window: (f64, f64)) -> Result<Self> {
        RadarTrajectory::new(move |t| Ok(x0 + v * t), move |_| Ok(v), window)
    }

    /// Monotone cubic through `(t_i, x_i)`; `v` is the interpolant's slope.
    pub fn from_samples(ts: Vec<f64>, xs: Vec<f64>) -> Result<Self> {
        let p = Arc::new(MonotoneCubic::new(ts, xs)?);
        let window = p.domain();
        let q = p.clone();
        RadarTrajectory::new(move |t| p.value(t), move |t| q.derivative(t), window)
    }

    pub fn window(&self) -> (f64, f64) {
        self.window
    }

    pub fn x(&self, t: f64) -> Result<f64> {
        (self.x)(t)
    }

    pub fn v(&self, t: f64) -> Result<f64> {
        (self.v)(t)
    }

    fn lorentz_factor(&self, t: f64, ctx: LightspeedContext) -> Result<f64> {
        let c = ctx.c();
        let v = self.v(t)?;
        if !(v.abs() < c) {
            return Err(Error::SpeedLimitExceeded { speed: v, c });
        }
        Ok(((1.0 - v / c) * (1.0 + v / c)).sqrt())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProperTimeResult {
    pub tau: f64,
    pub abs_error_estimate: f64,
    pub n_evals: usize,
}

fn chart_point(traj: &RadarTrajectory, t: f64, ctx: LightspeedContext) -> Result<SplitComplex> {
    Ok(SplitComplex::new(ctx.c() * t, traj.x(t)?))
}

fn integrate<F>(mut f: F, window: (f64, f64), tol: f64) -> Result<ProperTimeResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    let q = adaptive_simpson(&mut f, window.0, window.1, tol)?;
    Ok(ProperTimeResult {
        tau: q.value,
        abs_error_estimate: q.abs_error_estimate,
        n_evals: q.n_evals,
    })
}

/// `Δτ = ∫ sqrt(1 - v²/c²) dt` in flat coordinates.
pub fn proper_time_inertial(traj: &RadarTrajectory, ctx: LightspeedContext, tol: f64) -> Result<ProperTimeResult> {
    integrate(
        |t| {
            traj.lorentz_factor(t, ctx)
                .map_err(|e| e.at(SplitComplex::new(ctx.c() * t, traj.x(t).unwrap_or(f64::NAN))))
        },
        traj.window,
        tol,
    )
}

/// `Δτ = ∫ |DΩ_γ|_L(ct + x(t)σ) sqrt(1 - v²/c²) dt` in the radar chart of `γ`.
pub fn proper_time_accelerated(
    observer: &Observer,
    traj: &RadarTrajectory,
    ctx: LightspeedContext,
    tol: f64,
) -> Result<ProperTimeResult> {
    let m = MwMap::new(observer.clone());
    integrate(
        |t| {
            let z = chart_point(traj, t, ctx)?;
            let lf = traj.lorentz_factor(t, ctx).map_err(|e| e.at(z))?;
            Ok(m.conformal_factor(z)?.sqrt() * lf)
        },
        traj.window,
        tol,
    )
}

/// Arc length `∫ |γ'(s)|_L ds / c` of the observer's own worldline.
pub fn proper_time_along(
    observer: &Observer,
    window: (f64, f64),
    ctx: LightspeedContext,
    tol: f64,
) -> Result<ProperTimeResult> {
    let c = ctx.c();
    integrate(
        |s| {
            let n = observer.derivative(s)?.norm_sq();
            if !(n > 0.0) {
                return Err(Error::NotTimelike { s0: s, s1: s, margin: n });
            }
            Ok(n.sqrt() / c)
        },
        window,
        tol,
    )
}

/// Expresses `α` over `s_window` in the radar chart of `γ` by sampling the
/// radar inverse at `n` nodes.
pub fn radar_trajectory_of(
    observer: &Observer,
    alpha: &Observer,
    s_window: (f64, f64),
    n: usize,
    ctx: LightspeedContext,
) -> Result<RadarTrajectory> {
    if n < 2 || !(s_window.0 < s_window.1) {
        return Err(Error::InvalidArgument(format!(
            "radar trajectory needs n >= 2 and a nonempty window, got n = {n}, {s_window:?}"
        )));
    }
    let m = MwMap::new(observer.clone());
    let mut ts = Vec::with_capacity(n);
    let mut xs = Vec::with_capacity(n);
    for i in 0..n {
        let s = s_window.0 + (s_window.1 - s_window.0) * i as f64 / (n - 1) as f64;
        let z = m.radar_inverse(alpha.eval(s)?)?;
        let t = z.t / ctx.c();
        if let Some(&prev) = ts.last() {
            if !(t > prev) {
                return Err(Error::NonMonotoneRadarTime { index: i });
            }
        }
        ts.push(t);
        xs.push(z.x);
    }
    RadarTrajectory::from_samples(ts, xs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Twin {
    A,
    B,
    /// Proper times agree to the tolerance.
    Neither,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwinReport {
    pub a_window: (f64, f64),
    /// B's parameter interval radar-simultaneous with A's endpoints.
    pub b_window: (f64, f64),
    pub tau_a_by_a: f64,
    pub tau_a_by_b: f64,
    pub tau_b_by_b: f64,
    pub tau_b_by_a: f64,
    /// Radar time B assigns to A's segment.
    pub radar_span_a_by_b: f64,
    /// Radar time A assigns to B's segment.
    pub radar_span_b_by_a: f64,
    pub younger: Twin,
    pub consistent: bool,
}

fn relative_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

/// Each twin computes both proper times; `tol` is relative.
///
/// B's segment is the one whose endpoints are radar-simultaneous, in B's
/// chart, with A's endpoints.
pub fn twin_consistency(
    a: &Observer,
    b: &Observer,
    a_window: (f64, f64),
    ctx: LightspeedContext,
    tol: f64,
    n: usize,
) -> Result<TwinReport> {
    twin_consistency_with(a, b, a_window, ctx, tol, n, DEFAULT_QUAD_TOL)
}

/// [`twin_consistency`] with an explicit absolute quadrature tolerance.
pub fn twin_consistency_with(
    a: &Observer,
    b: &Observer,
    a_window: (f64, f64),
    ctx: LightspeedContext,
    tol: f64,
    n: usize,
    quad_tol: f64,
) -> Result<TwinReport> {
    let mb = MwMap::new(b.clone());
    let b0 = mb.radar_inverse(a.eval(a_window.0)?)?.t;
    let b1 = mb.radar_inverse(a.eval(a_window.1)?)?.t;
    let b_window = (b0, b1);

    let tau_a_by_a = proper_time_along(a, a_window, ctx, quad_tol)?.tau;
    let tau_b_by_b = proper_time_along(b, b_window, ctx, quad_tol)?.tau;
    let a_in_b = radar_trajectory_of(b, a, a_window, n, ctx)?;
    let b_in_a = radar_trajectory_of(a, b, b_window, n, ctx)?;
    let tau_a_by_b = proper_time_accelerated(b, &a_in_b, ctx, quad_tol)?.tau;
    let tau_b_by_a = proper_time_accelerated(a, &b_in_a, ctx, quad_tol)?.tau;

    let consistent = relative_gap(tau_a_by_a, tau_a_by_b) <= tol && relative_gap(tau_b_by_b, tau_b_by_a) <= tol;
    let younger = if relative_gap(tau_a_by_a, tau_b_by_b) <= tol {
        Twin::Neither
    } else if tau_a_by_a < tau_b_by_b {
        Twin::A
    } else {
        Twin::B
    };
    let span = |w: (f64, f64)| w.1 - w.0;
    Ok(TwinReport {
        a_window,
        b_window,
        tau_a_by_a,
        tau_a_by_b,
        tau_b_by_b,
        tau_b_by_a,
        radar_span_a_by_b: span(a_in_b.window()),
        radar_span_b_by_a: span(b_in_a.window()),
        younger,
        consistent,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dilation {
    /// `Δτ(x₂) / Δτ(x₁) = exp(a Δx / c²)`.
    pub ratio: f64,
    pub tau_x1: f64,
    pub tau_x2: f64,
}

/// Static clocks at radar positions `x₁`, `x₂` of a uniformly accelerated
/// observer with acceleration `a` (the gravitational field is `-a`).
pub fn gravitational_dilation(a: f64, x1: f64, x2: f64, dt: f64, ctx: LightspeedContext) -> Result<Dilation> {
    if !(dt > 0.0) {
        return Err(Error::InvalidArgument(format!("dt must be positive, got {dt}")));
    }
    let c2 = ctx.c() * ctx.c();
    Ok(Dilation {
        ratio: (a * (x2 - x1) / c2).exp(),
        tau_x1: (a * x1 / c2).exp() * dt,
        tau_x2: (a * x2 / c2).exp() * dt,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::splitc::two_velocity;

    fn c1() -> LightspeedContext {
        LightspeedContext::default()
    }

    #[test]
    fn flat_clocks() {
        let rest = RadarTrajectory::constant(0.3, (0.0, 2.5)).unwrap();
        let r = proper_time_inertial(&rest, c1(), 1e-12).unwrap();
        assert!((r.tau - 2.5).abs() < 1e-14);
        let moving = RadarTrajectory::linear(0.0, 0.6, (0.0, 1.0)).unwrap();
        assert!((proper_time_inertial(&moving, c1(), 1e-12).unwrap().tau - 0.8).abs() < 1e-14);
    }

    #[test]
    fn superluminal_nodes_are_errors() {
        let fast = RadarTrajectory::linear(0.0, 1.0, (0.0, 1.0)).unwrap();
        let err = proper_time_inertial(&fast, c1(), 1e-10).unwrap_err();
        assert!(matches!(err.root_cause(), Error::SpeedLimitExceeded { .. }), "{err:?}");
    }

    #[test]
    fn static_rindler_clock() {
        for (a, c, x0) in [(1.0, 1.0, 0.4), (0.5, 2.0, -1.0)] {
            let ctx = LightspeedContext::new(c).unwrap();
            let g = Observer::rindler(a, ctx).unwrap();
            let traj = RadarTrajectory::constant(x0, (-0.3, 0.9)).unwrap();
            let r = proper_time_accelerated(&g, &traj, ctx, 1e-12).unwrap();
            let want = (a * x0 / (c * c)).exp() * 1.2;
            assert!((r.tau - want).abs() < 1e-11, "{} vs {want}", r.tau);
        }
    }

    #[test]
    fn inertial_chart_reduces_to_flat_formula() {
        let g = Observer::inertial(0.3, SplitComplex::new(1.0, 2.0), c1()).unwrap();
        let traj = RadarTrajectory::new(|t: f64| Ok(0.5 * t.sin()), |t: f64| Ok(0.5 * t.cos()), (0.0, 2.0)).unwrap();
        let acc = proper_time_accelerated(&g, &traj, c1(), 1e-11).unwrap().tau;
        let flat = proper_time_inertial(&traj, c1(), 1e-11).unwrap().tau;
        assert!((acc - flat).abs() <= 2e-11);
    }

    #[test]
    fn radar_trajectories_of_simple_pairs() {
        let rest = Observer::rest();
        let self_traj = radar_trajectory_of(&rest, &rest, (0.0, 1.0), 11, c1()).unwrap();
        assert!(self_traj.x(0.5).unwrap().abs() < 1e-12);
        assert!(self_traj.v(0.5).unwrap().abs() < 1e-10);

        let mover = Observer::inertial(0.5, SplitComplex::ZERO, c1()).unwrap();
        let traj = radar_trajectory_of(&rest, &mover, (0.0, 2.0), 41, c1()).unwrap();
        let (t0, t1) = traj.window();
        for t in [t0, 0.5 * (t0 + t1), t1] {
            assert!((traj.x(t).unwrap() - 0.5 * t).abs() < 1e-11);
            assert!((traj.v(t).unwrap() - 0.5).abs() < 1e-9);
        }
    }

    #[test]
    fn static_minkowski_clock_in_rindler_chart() {
        // (t, 1) in the chart of Rindler{1}: radar time atanh t, x = -ln cosh
        let b = Observer::rindler(1.0, c1()).unwrap();
        let a = Observer::inertial(0.0, SplitComplex::new(0.0, 1.0), c1()).unwrap();
        let traj = radar_trajectory_of(&b, &a, (-0.5, 0.5), 2001, c1()).unwrap();
        for t in [-0.5f64, -0.1, 0.0, 0.3] {
            assert!((traj.x(t).unwrap() + t.cosh().ln()).abs() < 1e-9);
        }
        assert!((traj.window().1 - 0.5f64.atanh()).abs() < 1e-11);
    }

    #[test]
    fn rindler_cannot_chart_the_left_wedge() {
        let b = Observer::rindler(1.0, c1()).unwrap();
        let left = Observer::inertial(0.0, SplitComplex::new(0.0, -1.0), c1()).unwrap();
        assert!(matches!(
            radar_trajectory_of(&b, &left, (-0.5, 0.5), 11, c1()),
            Err(Error::NoRadarCoordinate { .. })
        ));
    }

    #[test]
    fn identical_twins() {
        let g = Observer::perturbed_inertial(0.2, 1.0).unwrap();
        let r = twin_consistency(&g, &g, (0.0, 1.0), c1(), 1e-6, 401).unwrap();
        for tau in [r.tau_a_by_b, r.tau_b_by_b, r.tau_b_by_a] {
            assert!((tau - r.tau_a_by_a).abs() < 1e-7);
        }
        assert_eq!(r.younger, Twin::Neither);
        assert!(r.consistent);
    }

    #[test]
    fn boosted_twins_see_symmetric_dilation() {
        let ctx = c1();
        let u = two_velocity(0.6, ctx).unwrap();
        let a = Observer::rest();
        let b = Observer::inertial(0.6, SplitComplex::ZERO, ctx).unwrap();
        let r = twin_consistency(&a, &b, (-1.0, 1.0), ctx, 1e-9, 201).unwrap();
        let gamma = u.gamma();
        assert!((r.tau_a_by_a - 2.0).abs() < 1e-12);
        assert!((r.tau_b_by_b - 2.0 * gamma).abs() < 1e-12);
        assert!((r.radar_span_a_by_b / r.tau_a_by_a - gamma).abs() < 1e-9);
        assert!((r.radar_span_b_by_a / r.tau_b_by_a - gamma).abs() < 1e-9);
        assert!(r.consistent);
    }

    #[test]
    fn dilation_closed_form() {
        let d = gravitational_dilation(1.0, 0.7, 0.7, 1.0, c1()).unwrap();
        assert_eq!(d.ratio, 1.0);
        // g Δx / c² = ln 2 with g = -a
        let d = gravitational_dilation(-2f64.ln(), 0.0, 1.0, 3.0, c1()).unwrap();
        assert!((d.ratio - 0.5).abs() < 1e-15);
        assert!((d.tau_x2 - 1.5).abs() < 1e-15);
        assert!(gravitational_dilation(1.0, 0.0, 1.0, 0.0, c1()).is_err());
    }
}
