//! Observer worldlines `s ↦ γ(s)` and the lightray intersecting property.
//!
//! The parameter `s` carries the same units as `ct`. An observer is
//! chronologically monotone: `γ(s) << γ(s')` whenever `s < s'`, which is the
//! same as both null coordinates `t(s) ± x(s)` being strictly increasing.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::splitc::{two_velocity, LightspeedContext, SplitComplex, TwoVelocity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Smoothness {
    C0,
    C1,
    C2,
}

/// Behaviour of a null coordinate as the parameter runs off to one end.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Tail {
    /// Unbounded in the direction of travel.
    Infinite,
    /// Converges to a finite limit.
    Finite(f64),
    /// Stays bounded without a limit (non-monotone perturbation terms).
    Bounded,
}

impl Tail {
    fn scale(self, k: f64) -> Tail {
        match self {
            Tail::Finite(v) => Tail::Finite(k * v),
            other => other,
        }
    }

    fn shift(self, b: f64) -> Tail {
        match self {
            Tail::Finite(v) => Tail::Finite(v + b),
            other => other,
        }
    }

    fn sum(self, other: Tail) -> Tail {
        match (self, other) {
            (Tail::Infinite, _) | (_, Tail::Infinite) => Tail::Infinite,
            (Tail::Finite(a), Tail::Finite(b)) => Tail::Finite(a + b),
            _ => Tail::Bounded,
        }
    }
}

/// Tails of one null coordinate at `s → -∞` and `s → +∞`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NullTails {
    pub lower: Tail,
    pub upper: Tail,
}

impl NullTails {
    const FULL: NullTails = NullTails {
        lower: Tail::Infinite,
        upper: Tail::Infinite,
    };

    fn is_surjective(&self) -> bool {
        self.lower == Tail::Infinite && self.upper == Tail::Infinite
    }

    /// The covered interval, when both ends have limits.
    pub fn interval(&self) -> Option<(f64, f64)> {
        let end = |t: Tail, inf: f64| match t {
            Tail::Infinite => Some(inf),
            Tail::Finite(v) => Some(v),
            Tail::Bounded => None,
        };
        Some((
            end(self.lower, f64::NEG_INFINITY)?,
            end(self.upper, f64::INFINITY)?,
        ))
    }
}

impl fmt::Display for NullTails {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.interval() {
            Some((lo, hi)) => write!(f, "({lo}, {hi})"),
            None => write!(f, "bounded, no limit"),
        }
    }
}

/// Rectangle of null levels `[plus] × [minus]` reached by a finite window.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NullWindow {
    pub plus: (f64, f64),
    pub minus: (f64, f64),
}

impl NullWindow {
    pub fn contains(&self, e: SplitComplex) -> bool {
        let (p, m) = (e.plus(), e.minus());
        self.plus.0 <= p && p <= self.plus.1 && self.minus.0 <= m && m <= self.minus.1
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LipStatus {
    /// Both null coordinates are surjective onto ℝ (decided in closed form).
    Verified,
    FailsLip(String),
    /// Finite-domain kinds only ever certify the levels they actually reach.
    WindowOnly(NullWindow),
}

#[derive(Clone, Debug, PartialEq)]
enum Kind {
    Inertial {
        base: SplitComplex,
        u: TwoVelocity,
    },
    Rindler {
        radius: f64,
        rate: f64,
    },
    Perturbed {
        amplitude: f64,
        omega: f64,
    },
    Oscillation {
        amplitude: f64,
        omega: f64,
    },
    PiecewiseLinear {
        knots: Vec<f64>,
        points: Vec<SplitComplex>,
    },
    Sum(Box<Observer>, Box<Observer>),
    Boosted(TwoVelocity, Box<Observer>),
    Translated(SplitComplex, Box<Observer>),
}

/// A worldline description. Constructors validate their parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct Observer(Kind);

impl Observer {
    /// `γ(s) = base + s·u(v)`, parameterized by proper length.
    pub fn inertial(v: f64, base: SplitComplex, ctx: LightspeedContext) -> Result<Observer> {
        let u = two_velocity(v, ctx)?;
        Ok(Observer(Kind::Inertial { base, u }))
    }

    /// The rest observer `γ(s) = s`, whose MW map is the identity.
    pub fn rest() -> Observer {
        Observer(Kind::Inertial {
            base: SplitComplex::ZERO,
            u: TwoVelocity::REST,
        })
    }

    /// Uniform acceleration `γ(s) = (c²/a) exp((a s / c²) σ) σ`.
    pub fn rindler(accel: f64, ctx: LightspeedContext) -> Result<Observer> {
        if !accel.is_finite() || accel == 0.0 {
            return Err(Error::InvalidArgument(format!(
                "Rindler acceleration must be finite and nonzero, got {accel}"
            )));
        }
        let c2 = ctx.c() * ctx.c();
        Ok(Observer(Kind::Rindler {
            radius: c2 / accel,
            rate: accel / c2,
        }))
    }

    /// `γ(s) = s + A sin(ωs) σ`, requiring `|Aω| < 1`.
    pub fn perturbed_inertial(amplitude: f64, omega: f64) -> Result<Observer> {
        if !(amplitude.is_finite() && omega.is_finite()) || (amplitude * omega).abs() >= 1.0 {
            return Err(Error::InvalidArgument(format!(
                "perturbed inertial observer needs |A·ω| < 1, got A = {amplitude}, ω = {omega}"
            )));
        }
        Ok(Observer(Kind::Perturbed { amplitude, omega }))
    }

    /// The bare spatial wiggle `s ↦ A sin(ωs) σ`. Not itself an observer;
    /// it exists to be added to one.
    pub fn oscillation(amplitude: f64, omega: f64) -> Result<Observer> {
        if !(amplitude.is_finite() && omega.is_finite()) {
            return Err(Error::InvalidArgument(
                "oscillation parameters must be finite".into(),
            ));
        }
        Ok(Observer(Kind::Oscillation { amplitude, omega }))
    }

    /// Linear interpolation through `(s_i, event_i)`; consecutive events
    /// must be chronologically ordered.
    pub fn piecewise_linear(vertices: Vec<(f64, SplitComplex)>) -> Result<Observer> {
        if vertices.len() < 2 {
            return Err(Error::InvalidArgument(
                "piecewise linear observer needs at least two vertices".into(),
            ));
        }
        let (knots, points): (Vec<f64>, Vec<SplitComplex>) = vertices.into_iter().unzip();
        for i in 1..knots.len() {
            if !(knots[i] > knots[i - 1]) {
                return Err(Error::InvalidArgument(format!(
                    "knots must be strictly increasing (index {i})"
                )));
            }
            let d = points[i] - points[i - 1];
            if !(d.t > 0.0 && d.norm_sq() > 0.0) {
                return Err(Error::NotTimelike {
                    s0: knots[i - 1],
                    s1: knots[i],
                    margin: d.norm_sq(),
                });
            }
        }
        Ok(Observer(Kind::PiecewiseLinear { knots, points }))
    }

    pub fn sum(a: Observer, b: Observer) -> Observer {
        Observer(Kind::Sum(Box::new(a), Box::new(b)))
    }

    pub fn boosted(u: TwoVelocity, inner: Observer) -> Observer {
        Observer(Kind::Boosted(u, Box::new(inner)))
    }

    pub fn translated(offset: SplitComplex, inner: Observer) -> Observer {
        Observer(Kind::Translated(offset, Box::new(inner)))
    }

    /// Parameter domain; unbounded except for piecewise kinds.
    pub fn domain(&self) -> (f64, f64) {
        match &self.0 {
            Kind::PiecewiseLinear { knots, .. } => (knots[0], knots[knots.len() - 1]),
            Kind::Sum(a, b) => {
                let (a0, a1) = a.domain();
                let (b0, b1) = b.domain();
                (a0.max(b0), a1.min(b1))
            }
            Kind::Boosted(_, g) | Kind::Translated(_, g) => g.domain(),
            _ => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    fn check_domain(&self, s: f64) -> Result<()> {
        let (lo, hi) = self.domain();
        if s < lo || s > hi || s.is_nan() {
            Err(Error::DomainExceeded { s, lo, hi })
        } else {
            Ok(())
        }
    }

    pub fn eval(&self, s: f64) -> Result<SplitComplex> {
        Ok(match &self.0 {
            Kind::Inertial { base, u } => *base + u.get() * s,
            Kind::Rindler { radius, rate } => {
                let th = rate * s;
                SplitComplex::new(radius * th.sinh(), radius * th.cosh())
            }
            Kind::Perturbed { amplitude, omega } => {
                SplitComplex::new(s, amplitude * (omega * s).sin())
            }
            Kind::Oscillation { amplitude, omega } => {
                SplitComplex::new(0.0, amplitude * (omega * s).sin())
            }
            Kind::PiecewiseLinear { knots, points } => {
                self.check_domain(s)?;
                let i = segment(knots, s);
                let w = (s - knots[i]) / (knots[i + 1] - knots[i]);
                points[i] + (points[i + 1] - points[i]) * w
            }
            Kind::Sum(a, b) => a.eval(s)? + b.eval(s)?,
            Kind::Boosted(u, g) => u.get() * g.eval(s)?,
            Kind::Translated(b, g) => *b + g.eval(s)?,
        })
    }

    /// `dγ/ds`; piecewise kinds use the right-hand segment slope.
    pub fn derivative(&self, s: f64) -> Result<SplitComplex> {
        Ok(match &self.0 {
            Kind::Inertial { u, .. } => u.get(),
            Kind::Rindler { rate, .. } => {
                let th = rate * s;
                SplitComplex::new(th.cosh(), th.sinh())
            }
            Kind::Perturbed { amplitude, omega } => {
                SplitComplex::new(1.0, amplitude * omega * (omega * s).cos())
            }
            Kind::Oscillation { amplitude, omega } => {
                SplitComplex::new(0.0, amplitude * omega * (omega * s).cos())
            }
            Kind::PiecewiseLinear { knots, points } => {
                self.check_domain(s)?;
                let i = segment(knots, s);
                (points[i + 1] - points[i]) / (knots[i + 1] - knots[i])
            }
            Kind::Sum(a, b) => a.derivative(s)? + b.derivative(s)?,
            Kind::Boosted(u, g) => u.get() * g.derivative(s)?,
            Kind::Translated(_, g) => g.derivative(s)?,
        })
    }

    pub fn smoothness(&self) -> Smoothness {
        match &self.0 {
            Kind::PiecewiseLinear { .. } => Smoothness::C0,
            Kind::Sum(a, b) => a.smoothness().min(b.smoothness()),
            Kind::Boosted(_, g) | Kind::Translated(_, g) => g.smoothness(),
            _ => Smoothness::C2,
        }
    }

    /// Tails of `(t + x, t - x)` for kinds with unbounded domain.
    pub fn null_tails(&self) -> Option<(NullTails, NullTails)> {
        if self.domain() != (f64::NEG_INFINITY, f64::INFINITY) {
            return None;
        }
        Some(match &self.0 {
            Kind::Inertial { .. } | Kind::Perturbed { .. } => (NullTails::FULL, NullTails::FULL),
            Kind::Rindler { radius, rate } => {
                // t + x = R e^{κs}, t - x = -R e^{-κs}
                let growing = NullTails {
                    lower: Tail::Finite(0.0),
                    upper: Tail::Infinite,
                };
                let decaying = NullTails {
                    lower: Tail::Infinite,
                    upper: Tail::Finite(0.0),
                };
                debug_assert!(radius.signum() == rate.signum());
                if *rate > 0.0 {
                    (growing, decaying)
                } else {
                    (decaying, growing)
                }
            }
            Kind::Oscillation { .. } => {
                let b = NullTails {
                    lower: Tail::Bounded,
                    upper: Tail::Bounded,
                };
                (b, b)
            }
            Kind::PiecewiseLinear { .. } => unreachable!("bounded domain"),
            Kind::Sum(a, b) => {
                let (ap, am) = a.null_tails()?;
                let (bp, bm) = b.null_tails()?;
                let add = |x: NullTails, y: NullTails| NullTails {
                    lower: x.lower.sum(y.lower),
                    upper: x.upper.sum(y.upper),
                };
                (add(ap, bp), add(am, bm))
            }
            Kind::Boosted(u, g) => {
                let (p, m) = g.null_tails()?;
                let (up, um) = (u.get().plus(), u.get().minus());
                (
                    NullTails {
                        lower: p.lower.scale(up),
                        upper: p.upper.scale(up),
                    },
                    NullTails {
                        lower: m.lower.scale(um),
                        upper: m.upper.scale(um),
                    },
                )
            }
            Kind::Translated(b, g) => {
                let (p, m) = g.null_tails()?;
                (
                    NullTails {
                        lower: p.lower.shift(b.plus()),
                        upper: p.upper.shift(b.plus()),
                    },
                    NullTails {
                        lower: m.lower.shift(b.minus()),
                        upper: m.upper.shift(b.minus()),
                    },
                )
            }
        })
    }

    /// Null levels reached over the observer's (finite) domain.
    pub fn null_window(&self) -> Result<NullWindow> {
        let (lo, hi) = self.domain();
        let a = self.eval(lo)?;
        let b = self.eval(hi)?;
        Ok(NullWindow {
            plus: (a.plus(), b.plus()),
            minus: (a.minus(), b.minus()),
        })
    }
}

fn segment(knots: &[f64], s: f64) -> usize {
    let last = knots.len() - 2;
    match knots.binary_search_by(|k| k.total_cmp(&s)) {
        Ok(i) => i.min(last),
        Err(i) => i.saturating_sub(1).min(last),
    }
}

/// `(t(s) + x(s), t(s) - x(s))`.
pub fn null_coords(observer: &Observer, s: f64) -> Result<(f64, f64)> {
    let p = observer.eval(s)?;
    Ok((p.plus(), p.minus()))
}

/// Decides LIP in closed form from the tails of the null coordinates.
pub fn lip_status(observer: &Observer) -> LipStatus {
    let Some((plus, minus)) = observer.null_tails() else {
        return match observer.null_window() {
            Ok(w) => LipStatus::WindowOnly(w),
            Err(e) => LipStatus::FailsLip(format!("null window unavailable: {e}")),
        };
    };
    if plus.is_surjective() && minus.is_surjective() {
        LipStatus::Verified
    } else {
        LipStatus::FailsLip(format!(
            "null coordinate ranges t+x: {plus}, t-x: {minus}; some light rays miss the worldline"
        ))
    }
}

/// Outcome of a successful [`verify_observer`] sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct ObserverReport {
    /// Smallest `|γ(s') - γ(s)|²_L` over all checked pairs.
    pub min_margin: f64,
    /// Parameter pair attaining the minimum.
    pub worst_pair: (f64, f64),
    pub pairs_checked: usize,
}

const VERIFY_SEED: u64 = 0x6f62_7365_7276_6572;

/// Checks chronological monotonicity on an `n`-point grid: every
/// consecutive pair plus `n` random grid pairs.
pub fn verify_observer(observer: &Observer, window: (f64, f64), n: usize) -> Result<ObserverReport> {
    let (s0, s1) = window;
    if n < 2 || !(s0 < s1) {
        return Err(Error::InvalidArgument(format!(
            "verify_observer needs n >= 2 and s0 < s1, got n = {n}, window = [{s0}, {s1}]"
        )));
    }
    let grid: Vec<f64> = (0..n)
        .map(|i| s0 + (s1 - s0) * i as f64 / (n - 1) as f64)
        .collect();
    let points = grid
        .iter()
        .map(|&s| observer.eval(s))
        .collect::<Result<Vec<_>>>()?;

    let mut report = ObserverReport {
        min_margin: f64::INFINITY,
        worst_pair: (s0, s1),
        pairs_checked: 0,
    };
    let check = |i: usize, j: usize, report: &mut ObserverReport| -> Result<()> {
        let d = points[j] - points[i];
        let margin = d.norm_sq();
        if !(d.t > 0.0 && margin > 0.0) {
            return Err(Error::NotTimelike {
                s0: grid[i],
                s1: grid[j],
                margin,
            });
        }
        report.pairs_checked += 1;
        if margin < report.min_margin {
            report.min_margin = margin;
            report.worst_pair = (grid[i], grid[j]);
        }
        Ok(())
    };

    for i in 0..n - 1 {
        check(i, i + 1, &mut report)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(VERIFY_SEED ^ n as u64);
    for _ in 0..n {
        let i = rng.random_range(0..n);
        let j = rng.random_range(0..n);
        if i != j {
            check(i.min(j), i.max(j), &mut report)?;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::splitc::two_velocity;

    fn c1() -> LightspeedContext {
        LightspeedContext::default()
    }

    fn central(g: &Observer, s: f64, h: f64) -> SplitComplex {
        (g.eval(s + h).unwrap() - g.eval(s - h).unwrap()) / (2.0 * h)
    }

    #[test]
    fn rest_observer_margins() {
        let g = Observer::inertial(0.0, SplitComplex::ZERO, c1()).unwrap();
        let r = verify_observer(&g, (-1.0, 1.0), 21).unwrap();
        let ds = 0.1;
        assert!((r.min_margin - ds * ds).abs() < 1e-15);
    }

    #[test]
    fn spacelike_segment_is_rejected() {
        let bad = Observer::piecewise_linear(vec![
            (0.0, SplitComplex::new(0.0, 0.0)),
            (1.0, SplitComplex::new(1.0, 0.2)),
            (2.0, SplitComplex::new(1.5, 2.0)),
        ]);
        assert!(matches!(bad, Err(Error::NotTimelike { .. })));

        // a sum whose wiggle is too strong for the base line
        let fast = Observer::sum(Observer::rest(), Observer::oscillation(2.0, 1.0).unwrap());
        assert!(matches!(
            verify_observer(&fast, (-3.0, 3.0), 200),
            Err(Error::NotTimelike { .. })
        ));
    }

    #[test]
    fn rindler_is_an_observer() {
        let g = Observer::rindler(1.0, c1()).unwrap();
        let r = verify_observer(&g, (-2.0, 2.0), 101).unwrap();
        assert!(r.min_margin > 0.0);
    }

    #[test]
    fn lip_decisions() {
        let g = Observer::inertial(0.5, SplitComplex::ZERO, c1()).unwrap();
        assert_eq!(lip_status(&g), LipStatus::Verified);
        let r = Observer::rindler(1.0, c1()).unwrap();
        match lip_status(&r) {
            LipStatus::FailsLip(msg) => assert!(msg.contains("(0, inf)") && msg.contains("(-inf, 0)")),
            other => panic!("unexpected {other:?}"),
        }
        let neg = Observer::rindler(-2.0, c1()).unwrap();
        assert!(matches!(lip_status(&neg), LipStatus::FailsLip(_)));
        let p = Observer::perturbed_inertial(0.3, 1.0).unwrap();
        assert_eq!(lip_status(&p), LipStatus::Verified);
        let u = two_velocity(0.4, c1()).unwrap();
        let combo = Observer::translated(
            SplitComplex::new(1.0, -2.0),
            Observer::boosted(u, p.clone()),
        );
        assert_eq!(lip_status(&combo), LipStatus::Verified);
        let sum = Observer::sum(Observer::rest(), Observer::oscillation(0.3, 1.0).unwrap());
        assert_eq!(lip_status(&sum), LipStatus::Verified);
        let pl = Observer::piecewise_linear(vec![
            (0.0, SplitComplex::new(0.0, 0.0)),
            (1.0, SplitComplex::new(1.0, 0.5)),
            (2.0, SplitComplex::new(2.0, 0.0)),
        ])
        .unwrap();
        assert_eq!(
            lip_status(&pl),
            LipStatus::WindowOnly(NullWindow {
                plus: (0.0, 2.0),
                minus: (0.0, 2.0)
            })
        );
    }

    #[test]
    fn null_coordinate_values() {
        assert_eq!(null_coords(&Observer::rest(), 2.0).unwrap(), (2.0, 2.0));
        let r = Observer::rindler(1.0, c1()).unwrap();
        assert_eq!(null_coords(&r, 0.0).unwrap(), (1.0, -1.0));
        let p = Observer::perturbed_inertial(0.3, 1.0).unwrap();
        assert_eq!(null_coords(&p, 0.0).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn analytic_derivatives_match_central_differences() {
        let u = two_velocity(-0.3, c1()).unwrap();
        let kinds = [
            Observer::rindler(0.7, c1()).unwrap(),
            Observer::perturbed_inertial(0.3, 1.3).unwrap(),
            Observer::boosted(u, Observer::perturbed_inertial(0.4, 2.0).unwrap()),
        ];
        for g in &kinds {
            for s in [-1.3, 0.2, 1.7] {
                let exact = g.derivative(s).unwrap();
                let e1 = (central(g, s, 1e-2) - exact).euclid();
                let e2 = (central(g, s, 5e-3) - exact).euclid();
                let ratio = e1 / e2;
                assert!((ratio - 4.0).abs() < 0.8, "ratio {ratio} for {g:?} at {s}");
            }
        }
        let line = Observer::inertial(0.6, SplitComplex::new(1.0, 1.0), c1()).unwrap();
        assert!((central(&line, 0.4, 1e-3) - line.derivative(0.4).unwrap()).euclid() < 1e-9);
    }

    #[test]
    fn piecewise_domain_and_slopes() {
        let pl = Observer::piecewise_linear(vec![
            (0.0, SplitComplex::new(0.0, 0.0)),
            (1.0, SplitComplex::new(1.0, 0.5)),
            (3.0, SplitComplex::new(3.0, 0.0)),
        ])
        .unwrap();
        assert_eq!(pl.eval(0.5).unwrap(), SplitComplex::new(0.5, 0.25));
        assert_eq!(pl.eval(3.0).unwrap(), SplitComplex::new(3.0, 0.0));
        // right-hand slope at the interior vertex
        assert_eq!(pl.derivative(1.0).unwrap(), SplitComplex::new(1.0, -0.25));
        assert_eq!(pl.derivative(3.0).unwrap(), SplitComplex::new(1.0, -0.25));
        assert!(matches!(pl.eval(3.5), Err(Error::DomainExceeded { .. })));
        assert_eq!(pl.smoothness(), Smoothness::C0);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Observer::perturbed_inertial(0.5, 2.0).is_err());
        assert!(Observer::rindler(0.0, c1()).is_err());
        assert!(Observer::inertial(1.0, SplitComplex::ZERO, c1()).is_err());
        assert!(Observer::piecewise_linear(vec![(0.0, SplitComplex::ZERO)]).is_err());
    }
}
