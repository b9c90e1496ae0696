//! Märzke-Wheeler synchronization map `Ω_γ` of an observer.
//!
//! For `z = s + xσ` the event `Ω_γ(z)` is where the left-moving ray through
//! `γ(s + x)` meets the right-moving ray through `γ(s - x)`:
//!
//! ```text
//! Ω_γ(s + xσ) = (γ(s+x) + γ(s-x))/2 + ((γ(s+x) - γ(s-x))/2) σ
//! ```
//!
//! In null coordinates this reads `Ω₊(z) = γ₊(s + x)`, `Ω₋(z) = γ₋(s - x)`,
//! which is why the radar inverse reduces to two monotone 1-D solves.

use crate::causal::{ray_intersect, rays_through, time_axis_hit, LightRay};
use crate::error::{Error, Result};
use crate::observer::{Observer, Smoothness};
use crate::root::{solve_increasing, Solve};
use crate::splitc::SplitComplex;

pub const DEFAULT_ROOT_TOL: f64 = 1e-12;
pub const DEFAULT_BRACKET_LIMIT: f64 = 1e6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DerivativeMode {
    Analytic,
    /// Central difference of `eval` along the time direction.
    FiniteDiff(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct MwMap {
    observer: Observer,
    root_tol: f64,
    bracket_limit: f64,
}

impl MwMap {
    pub fn new(observer: Observer) -> Self {
        MwMap {
            observer,
            root_tol: DEFAULT_ROOT_TOL,
            bracket_limit: DEFAULT_BRACKET_LIMIT,
        }
    }

    pub fn with_root_tol(mut self, tol: f64) -> Self {
        self.root_tol = tol;
        self
    }

    pub fn with_bracket_limit(mut self, limit: f64) -> Self {
        self.bracket_limit = limit;
        self
    }

    pub fn observer(&self) -> &Observer {
        &self.observer
    }

    pub fn root_tol(&self) -> f64 {
        self.root_tol
    }

    /// Closed formula. Total on the plane for analytic observers, LIP or not.
    pub fn eval(&self, z: SplitComplex) -> Result<SplitComplex> {
        let gp = self.observer.eval(z.t + z.x)?;
        let gm = self.observer.eval(z.t - z.x)?;
        Ok((gp + gm) * 0.5 + ((gp - gm) * 0.5).mul_sigma())
    }

    /// Geometric construction through light rays, independent of [`eval`].
    ///
    /// [`eval`]: MwMap::eval
    pub fn eval_geometric(&self, z: SplitComplex) -> Result<SplitComplex> {
        let (left, right) = rays_through(z);
        let s_left = time_axis_hit(left);
        let s_right = time_axis_hit(right);
        let (emit_left, _) = rays_through(self.observer.eval(s_left)?);
        let (_, emit_right) = rays_through(self.observer.eval(s_right)?);
        ray_intersect(emit_left, emit_right)
    }

    /// Radar coordinates of `e`: solves `γ₊(s_L) = e₊` and `γ₋(s_R) = e₋`
    /// by bracketed bisection, then returns `(s_L + s_R)/2 + ((s_L - s_R)/2)σ`.
    pub fn radar_inverse(&self, e: SplitComplex) -> Result<SplitComplex> {
        let g = &self.observer;
        let domain = g.domain();
        let solve = |target: f64, coord: fn(SplitComplex) -> f64| -> Result<f64> {
            let start = if domain.0.is_finite() && domain.1.is_finite() {
                0.5 * (domain.0 + domain.1)
            } else {
                0.0
            };
            match solve_increasing(
                |s| g.eval(s).map(coord),
                target,
                domain,
                start,
                self.bracket_limit,
                self.root_tol,
            )? {
                Solve::Root(s) => Ok(s),
                Solve::Unbracketed => Err(Error::NoRadarCoordinate { event: e }),
            }
        };
        let s_left = solve(LightRay::left(e.plus()).level, SplitComplex::plus)?;
        let s_right = solve(LightRay::right(e.minus()).level, SplitComplex::minus)?;
        Ok(SplitComplex::new(
            0.5 * (s_left + s_right),
            0.5 * (s_left - s_right),
        ))
    }

    /// The M₂-derivative `DΩ = ∂₀Ω`.
    pub fn derivative(&self, z: SplitComplex, mode: DerivativeMode) -> Result<SplitComplex> {
        match mode {
            DerivativeMode::Analytic => {
                if self.observer.smoothness() < Smoothness::C1 {
                    return Err(Error::NotDifferentiable);
                }
                let dp = self.observer.derivative(z.t + z.x)?;
                let dm = self.observer.derivative(z.t - z.x)?;
                Ok((dp + dm) * 0.5 + ((dp - dm) * 0.5).mul_sigma())
            }
            DerivativeMode::FiniteDiff(h) => {
                if !(h > 0.0) {
                    return Err(Error::InvalidArgument(format!(
                        "finite-difference step must be positive, got {h}"
                    )));
                }
                let tp = z.t + h;
                let tm = z.t - h;
                let fp = self.eval(SplitComplex::new(tp, z.x))?;
                let fm = self.eval(SplitComplex::new(tm, z.x))?;
                Ok((fp - fm) / (tp - tm))
            }
        }
    }

    /// `g = |DΩ|²_L` with the analytic derivative.
    pub fn conformal_factor(&self, z: SplitComplex) -> Result<f64> {
        self.conformal_factor_with(z, DerivativeMode::Analytic)
    }

    pub fn conformal_factor_with(&self, z: SplitComplex, mode: DerivativeMode) -> Result<f64> {
        let value = self.derivative(z, mode)?.norm_sq();
        if value > 0.0 {
            Ok(value)
        } else {
            Err(Error::DegenerateFactor { at: z, value })
        }
    }
}
