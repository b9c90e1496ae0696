//! Causal (`<`) and chronological (`<<`) order, cone regions and light rays.
//!
//! `x < y` holds when `y - x` is a future-directed null vector and `x << y`
//! when it is future-directed timelike. Future directed means a strictly
//! positive time component.

use crate::error::{Error, Result};
use crate::splitc::{SplitComplex, NULL_BAND};

/// Relation of `y` with respect to `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CausalRelation {
    Equal,
    NullFuture,
    NullPast,
    ChronFuture,
    ChronPast,
    Spacelike,
}

/// Cone regions attached to an event `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    /// `C_N⁺(p)`: events `q` with `p < q`.
    NullFuture,
    /// `C_N⁻(p)`.
    NullPast,
    /// `C_T⁺(p)`: events `q` with `p << q`.
    TimelikeFuture,
    /// `C_T⁻(p)`.
    TimelikePast,
    /// `C_N(p) = C_N⁺(p) ∪ C_N⁻(p)`.
    NullCone,
    /// `C_T(p) = C_T⁺(p) ∪ C_T⁻(p)`.
    TimelikeCone,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    LeftMoving,
    RightMoving,
}

/// A full null line. Right-moving rays conserve `t - x`, left-moving rays
/// conserve `t + x`; `level` is the conserved value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LightRay {
    pub orientation: Orientation,
    pub level: f64,
}

impl LightRay {
    pub fn left(level: f64) -> Self {
        LightRay {
            orientation: Orientation::LeftMoving,
            level,
        }
    }

    pub fn right(level: f64) -> Self {
        LightRay {
            orientation: Orientation::RightMoving,
            level,
        }
    }

    /// Level of the ray of this orientation passing through `p`.
    pub fn level_of(orientation: Orientation, p: SplitComplex) -> f64 {
        match orientation {
            Orientation::LeftMoving => p.plus(),
            Orientation::RightMoving => p.minus(),
        }
    }

    /// Point of the ray at time component `t`.
    pub fn at_time(&self, t: f64) -> SplitComplex {
        match self.orientation {
            Orientation::LeftMoving => SplitComplex::new(t, self.level - t),
            Orientation::RightMoving => SplitComplex::new(t, t - self.level),
        }
    }
}

pub fn classify(x: SplitComplex, y: SplitComplex, tol: f64) -> CausalRelation {
    let d = y - x;
    if d == SplitComplex::ZERO {
        return CausalRelation::Equal;
    }
    let n = d.norm_sq();
    let band = tol * (1.0 + d.t * d.t + d.x * d.x);
    if n.abs() <= band {
        if d.t > 0.0 {
            CausalRelation::NullFuture
        } else if d.t < 0.0 {
            CausalRelation::NullPast
        } else {
            // a tiny pure-space displacement still sits inside the band
            CausalRelation::Spacelike
        }
    } else if n > 0.0 {
        if d.t > 0.0 {
            CausalRelation::ChronFuture
        } else {
            CausalRelation::ChronPast
        }
    } else {
        CausalRelation::Spacelike
    }
}

/// `x << y` with the default null band.
pub fn chron_precedes(x: SplitComplex, y: SplitComplex) -> bool {
    classify(x, y, NULL_BAND) == CausalRelation::ChronFuture
}

/// `x < y` with the default null band.
pub fn null_precedes(x: SplitComplex, y: SplitComplex) -> bool {
    classify(x, y, NULL_BAND) == CausalRelation::NullFuture
}

/// Whether `q` lies in the named region attached to `p`.
pub fn in_region(p: SplitComplex, q: SplitComplex, region: Region) -> bool {
    use CausalRelation as R;
    let rel = classify(p, q, NULL_BAND);
    match region {
        Region::NullFuture => rel == R::NullFuture,
        Region::NullPast => rel == R::NullPast,
        Region::TimelikeFuture => rel == R::ChronFuture,
        Region::TimelikePast => rel == R::ChronPast,
        Region::NullCone => matches!(rel, R::NullFuture | R::NullPast),
        Region::TimelikeCone => matches!(rel, R::ChronFuture | R::ChronPast),
    }
}

/// The unique (left, right) pair of rays through `p`.
pub fn rays_through(p: SplitComplex) -> (LightRay, LightRay) {
    (LightRay::left(p.plus()), LightRay::right(p.minus()))
}

/// Intersection of two rays of opposite orientation, in either order.
pub fn ray_intersect(a: LightRay, b: LightRay) -> Result<SplitComplex> {
    let (left, right) = match (a.orientation, b.orientation) {
        (Orientation::LeftMoving, Orientation::RightMoving) => (a, b),
        (Orientation::RightMoving, Orientation::LeftMoving) => (b, a),
        _ => return Err(Error::SameOrientation),
    };
    Ok(SplitComplex::from_null(left.level, right.level))
}

/// Parameter `s` at which the ray meets the time axis `x = 0`.
pub fn time_axis_hit(ray: LightRay) -> f64 {
    ray.level
}

#[cfg(test)]
mod tests {
    use super::*;

    const O: SplitComplex = SplitComplex::ZERO;

    fn p(t: f64, x: f64) -> SplitComplex {
        SplitComplex::new(t, x)
    }

    #[test]
    fn classification() {
        assert_eq!(classify(O, p(1.0, 0.0), NULL_BAND), CausalRelation::ChronFuture);
        assert_eq!(classify(O, p(1.0, 1.0), NULL_BAND), CausalRelation::NullFuture);
        assert_eq!(classify(O, p(0.0, 1.0), NULL_BAND), CausalRelation::Spacelike);
        assert_eq!(classify(O, p(-1.0, 0.5), NULL_BAND), CausalRelation::ChronPast);
        assert_eq!(classify(O, p(-2.0, 2.0), NULL_BAND), CausalRelation::NullPast);
        assert_eq!(classify(p(3.0, 1.0), p(3.0, 1.0), NULL_BAND), CausalRelation::Equal);
    }

    #[test]
    fn order_wrappers() {
        assert!(chron_precedes(O, p(2.0, 1.0)));
        assert!(!null_precedes(O, p(2.0, 1.0)));
        assert!(null_precedes(p(1.0, 1.0), p(3.0, 3.0)));
        assert!(!chron_precedes(p(2.0, 1.0), O));
    }

    #[test]
    fn regions() {
        assert!(in_region(O, p(1.0, 0.0), Region::TimelikeFuture));
        assert!(in_region(O, p(1.0, 1.0), Region::NullFuture));
        assert!(!in_region(O, p(0.0, 1.0), Region::TimelikeCone));
        assert!(in_region(O, p(-1.0, 0.2), Region::TimelikeCone));
        assert!(in_region(O, p(-1.0, 1.0), Region::NullCone));
        assert!(in_region(O, p(-1.0, -1.0), Region::NullPast));
        assert!(!in_region(O, p(-1.0, 0.0), Region::TimelikeFuture));
        assert!(in_region(O, p(-1.0, 0.0), Region::TimelikePast));
    }

    #[test]
    fn rays() {
        let (l, r) = rays_through(O);
        assert_eq!((l.level, r.level), (0.0, 0.0));
        let (l, r) = rays_through(p(2.0, 1.0));
        assert_eq!(l, LightRay::left(3.0));
        assert_eq!(r, LightRay::right(1.0));
        assert_eq!(ray_intersect(l, r).unwrap(), p(2.0, 1.0));
        assert_eq!(ray_intersect(r, l).unwrap(), p(2.0, 1.0));
        assert_eq!(ray_intersect(LightRay::left(0.0), LightRay::right(0.0)).unwrap(), O);
        assert_eq!(
            ray_intersect(LightRay::right(1.0), LightRay::right(2.0)),
            Err(Error::SameOrientation)
        );
        assert_eq!(time_axis_hit(l), 3.0);
        assert_eq!(time_axis_hit(r), 1.0);
        assert_eq!(time_axis_hit(rays_through(O).0), 0.0);
    }

    #[test]
    fn ray_points_stay_on_ray() {
        let l = LightRay::left(1.5);
        let r = LightRay::right(-0.5);
        for t in [-3.0, 0.0, 2.5] {
            assert_eq!(LightRay::level_of(Orientation::LeftMoving, l.at_time(t)), 1.5);
            assert_eq!(LightRay::level_of(Orientation::RightMoving, r.at_time(t)), -0.5);
        }
    }
}
