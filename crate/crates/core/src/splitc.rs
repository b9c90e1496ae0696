//! The split-complex algebra `R[σ]` with `σ² = 1`, identified with 1+1
//! Minkowski space through `(x, ct) <-> ct + xσ`.
//!
//! The `t` component always holds `ct`, so both components carry units of
//! length. The quadratic form `|a|²_L = ā a = t² - x²` is the Minkowski
//! interval with signature `(+, -)`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Relative width of the band inside which an interval counts as null.
pub const NULL_BAND: f64 = 1e-9;

/// An element `t + xσ` of the algebra, doubling as an event of M₂.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SplitComplex {
    /// Coefficient of 1 (physically `ct`).
    pub t: f64,
    /// Coefficient of σ (position).
    pub x: f64,
}

/// Causal character of a displacement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Character {
    Timelike,
    Null,
    Spacelike,
}

impl SplitComplex {
    pub const ZERO: SplitComplex = SplitComplex { t: 0.0, x: 0.0 };
    pub const ONE: SplitComplex = SplitComplex { t: 1.0, x: 0.0 };
    pub const SIGMA: SplitComplex = SplitComplex { t: 0.0, x: 1.0 };

    pub const fn new(t: f64, x: f64) -> Self {
        SplitComplex { t, x }
    }

    /// Checked constructor; rejects NaN and infinities.
    pub fn try_new(t: f64, x: f64) -> Result<Self> {
        if t.is_finite() && x.is_finite() {
            Ok(SplitComplex { t, x })
        } else {
            Err(Error::InvalidArgument(format!(
                "split-complex components must be finite, got ({t}, {x})"
            )))
        }
    }

    /// Builds the element whose null coordinates are `t + x = plus` and
    /// `t - x = minus`.
    pub fn from_null(plus: f64, minus: f64) -> Self {
        SplitComplex {
            t: 0.5 * (plus + minus),
            x: 0.5 * (plus - minus),
        }
    }

    pub fn is_finite(self) -> bool {
        self.t.is_finite() && self.x.is_finite()
    }

    /// `ā = t - xσ`.
    pub fn conj(self) -> Self {
        SplitComplex {
            t: self.t,
            x: -self.x,
        }
    }

    /// `|a|²_L = ā a = t² - x²`. Negative for spacelike, zero for null.
    pub fn norm_sq(self) -> f64 {
        self.t * self.t - self.x * self.x
    }

    /// `⟨a, b⟩ = Π⁰(ā b) = t₁t₂ - x₁x₂`.
    pub fn inner(self, other: SplitComplex) -> f64 {
        self.t * other.t - self.x * other.x
    }

    /// Euclidean length of the component vector, used for residual norms.
    pub fn euclid(self) -> f64 {
        self.t.hypot(self.x)
    }

    /// Null coordinate `t + x`, the level of the left-moving ray through `self`.
    pub fn plus(self) -> f64 {
        self.t + self.x
    }

    /// Null coordinate `t - x`, the level of the right-moving ray through `self`.
    pub fn minus(self) -> f64 {
        self.t - self.x
    }

    /// Multiplication by σ swaps the components.
    pub fn mul_sigma(self) -> Self {
        SplitComplex {
            t: self.x,
            x: self.t,
        }
    }

    /// `exp(t + xσ) = e^t (cosh x + sinh x σ)`.
    pub fn exp(self) -> Self {
        let r = self.t.exp();
        SplitComplex {
            t: r * self.x.cosh(),
            x: r * self.x.sinh(),
        }
    }

    /// Multiplicative inverse; `None` for zero divisors (null elements).
    pub fn inverse(self) -> Option<Self> {
        let n = self.norm_sq();
        if n == 0.0 {
            None
        } else {
            Some(self.conj() / n)
        }
    }

    /// Causal character within the relative band `tol·(1 + t² + x²)`.
    pub fn character(self, tol: f64) -> Character {
        let n = self.norm_sq();
        let band = tol * (1.0 + self.t * self.t + self.x * self.x);
        if n.abs() <= band {
            Character::Null
        } else if n > 0.0 {
            Character::Timelike
        } else {
            Character::Spacelike
        }
    }
}

impl fmt::Display for SplitComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.x.is_sign_negative() {
            write!(f, "{} - {}σ", self.t, -self.x)
        } else {
            write!(f, "{} + {}σ", self.t, self.x)
        }
    }
}

impl From<f64> for SplitComplex {
    fn from(t: f64) -> Self {
        SplitComplex { t, x: 0.0 }
    }
}

impl Add for SplitComplex {
    type Output = SplitComplex;
    fn add(self, rhs: SplitComplex) -> SplitComplex {
        SplitComplex {
            t: self.t + rhs.t,
            x: self.x + rhs.x,
        }
    }
}

impl AddAssign for SplitComplex {
    fn add_assign(&mut self, rhs: SplitComplex) {
        self.t += rhs.t;
        self.x += rhs.x;
    }
}

impl Sub for SplitComplex {
    type Output = SplitComplex;
    fn sub(self, rhs: SplitComplex) -> SplitComplex {
        SplitComplex {
            t: self.t - rhs.t,
            x: self.x - rhs.x,
        }
    }
}

impl Neg for SplitComplex {
    type Output = SplitComplex;
    fn neg(self) -> SplitComplex {
        SplitComplex {
            t: -self.t,
            x: -self.x,
        }
    }
}

impl Mul for SplitComplex {
    type Output = SplitComplex;
    /// `(t₁ + x₁σ)(t₂ + x₂σ) = (t₁t₂ + x₁x₂) + (t₁x₂ + x₁t₂)σ`.
    fn mul(self, rhs: SplitComplex) -> SplitComplex {
        SplitComplex {
            t: self.t * rhs.t + self.x * rhs.x,
            x: self.t * rhs.x + self.x * rhs.t,
        }
    }
}

impl Mul<f64> for SplitComplex {
    type Output = SplitComplex;
    fn mul(self, k: f64) -> SplitComplex {
        SplitComplex {
            t: self.t * k,
            x: self.x * k,
        }
    }
}

impl Mul<SplitComplex> for f64 {
    type Output = SplitComplex;
    fn mul(self, a: SplitComplex) -> SplitComplex {
        a * self
    }
}

impl Div<f64> for SplitComplex {
    type Output = SplitComplex;
    fn div(self, k: f64) -> SplitComplex {
        SplitComplex {
            t: self.t / k,
            x: self.x / k,
        }
    }
}

/// Speed of light used to convert between `v` and `v/c`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LightspeedContext {
    c: f64,
}

impl Default for LightspeedContext {
    fn default() -> Self {
        LightspeedContext { c: 1.0 }
    }
}

impl LightspeedContext {
    pub fn new(c: f64) -> Result<Self> {
        if c.is_finite() && c > 0.0 {
            Ok(LightspeedContext { c })
        } else {
            Err(Error::InvalidArgument(format!(
                "lightspeed must be positive and finite, got {c}"
            )))
        }
    }

    pub fn c(&self) -> f64 {
        self.c
    }
}

/// A unit, future-directed element of the algebra: the 2-velocity of an
/// inertial frame.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoVelocity(SplitComplex);

impl TwoVelocity {
    pub const REST: TwoVelocity = TwoVelocity(SplitComplex::ONE);

    pub fn get(self) -> SplitComplex {
        self.0
    }

    /// The 1-velocity encoded by this 2-velocity.
    pub fn velocity(self, ctx: LightspeedContext) -> f64 {
        ctx.c() * self.0.x / self.0.t
    }

    /// Lorentz factor, the time component of `u`.
    pub fn gamma(self) -> f64 {
        self.0.t
    }

    /// The inverse boost `ū`.
    pub fn inverse(self) -> TwoVelocity {
        TwoVelocity(self.0.conj())
    }
}

/// `u = (1 + (v/c)σ) / sqrt(1 - v²/c²)`.
pub fn two_velocity(v: f64, ctx: LightspeedContext) -> Result<TwoVelocity> {
    let beta = v / ctx.c();
    if !beta.is_finite() || beta.abs() >= 1.0 {
        return Err(Error::SpeedLimitExceeded {
            speed: v,
            c: ctx.c(),
        });
    }
    let gamma = 1.0 / ((1.0 - beta) * (1.0 + beta)).sqrt();
    Ok(TwoVelocity(SplitComplex::new(gamma, gamma * beta)))
}

/// The Lorentz transformation `p' = u·p`.
pub fn boost(u: TwoVelocity, p: SplitComplex) -> SplitComplex {
    u.0 * p
}

/// Relativistic velocity addition `v * w = (v + w) / (1 + vw/c²)`.
pub fn velocity_add(v: f64, w: f64, ctx: LightspeedContext) -> Result<f64> {
    let c = ctx.c();
    for speed in [v, w] {
        if !speed.is_finite() || speed.abs() > c {
            return Err(Error::SpeedLimitExceeded { speed, c });
        }
    }
    let v_light = v.abs() == c;
    let w_light = w.abs() == c;
    match (v_light, w_light) {
        (true, true) if v != w => Err(Error::IndeterminateComposition { v, w }),
        (true, _) => Ok(v),
        (_, true) => Ok(w),
        _ => Ok((v + w) / (1.0 + v * w / (c * c))),
    }
}
