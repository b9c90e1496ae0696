//! Grid diagnostics for general plane maps `F: M₂ → M₂`.
//!
//! Residuals use central differences with realized steps (`(t + h) - t`
//! rather than `h`), so maps that are affine in a coordinate produce exactly
//! zero differences. Every residual is computed at `h` and `h/2`; the pair
//! gives a convergence order unless both runs sit at the rounding floor.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::causal::{classify, CausalRelation};
use crate::error::{Error, Result};
use crate::mw::MwMap;
use crate::observer::{lip_status, verify_observer, LipStatus, Observer, Smoothness};
use crate::splitc::{SplitComplex, TwoVelocity, NULL_BAND};

/// Orders in `[MIN_VANISHING_ORDER, ∞)` count as truncation error.
pub const MIN_VANISHING_ORDER: f64 = 1.6;
/// Residual level treated as "bounded away from zero".
pub const BOUNDED_AWAY: f64 = 0.1;
const FLOOR_FACTOR: f64 = 100.0;

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type MapFn = Arc<dyn Fn(SplitComplex) -> Result<SplitComplex> + Send + Sync>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WaveSign {
    Plus,
    Minus,
}

impl WaveSign {
    fn value(self) -> f64 {
        match self {
            WaveSign::Plus => 1.0,
            WaveSign::Minus => -1.0,
        }
    }
}

/// d'Alembert solution with space data `p` and time data `q` on the axis.
#[derive(Clone)]
pub struct WaveCauchy {
    p: ScalarFn,
    q: ScalarFn,
    sign: WaveSign,
}

impl WaveCauchy {
    /// `F(y + xσ) = Q + Pσ` with
    /// `P = [p(y+x) + p(y-x)]/2 ± [q(y+x) - q(y-x)]/2` and
    /// `Q = [q(y+x) + q(y-x)]/2 ± [p(y+x) - p(y-x)]/2`.
    fn eval(&self, z: SplitComplex) -> SplitComplex {
        let (y, x) = (z.t, z.x);
        let (pp, pm) = ((self.p)(y + x), (self.p)(y - x));
        let (qp, qm) = ((self.q)(y + x), (self.q)(y - x));
        let s = self.sign.value();
        let space = 0.5 * (pp + pm) + s * 0.5 * (qp - qm);
        let time = 0.5 * (qp + qm) + s * 0.5 * (pp - pm);
        SplitComplex::new(time, space)
    }
}

impl fmt::Debug for WaveCauchy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WaveCauchy").field("sign", &self.sign).finish_non_exhaustive()
    }
}

/// Solution of `□F = 0` with `F(y, 0) = q(y) + p(y)σ` and the
/// first-order data fixed by `sign`.
pub fn build_wave_cauchy<P, Q>(p: P, q: Q, sign: WaveSign) -> PlaneMap
where
    P: Fn(f64) -> f64 + Send + Sync + 'static,
    Q: Fn(f64) -> f64 + Send + Sync + 'static,
{
    PlaneMap::WaveCauchy(WaveCauchy {
        p: Arc::new(p),
        q: Arc::new(q),
        sign,
    })
}

/// [`build_wave_cauchy`] fed with the components of an observer. Evaluation
/// failures of the observer surface as non-finite map values.
pub fn wave_cauchy_from_observer(observer: &Observer, sign: WaveSign) -> PlaneMap {
    let (gp, gq) = (observer.clone(), observer.clone());
    build_wave_cauchy(
        move |s| gp.eval(s).map_or(f64::NAN, |e| e.x),
        move |s| gq.eval(s).map_or(f64::NAN, |e| e.t),
        sign,
    )
}

#[derive(Clone)]
pub enum PlaneMap {
    Identity,
    Mw(MwMap),
    /// The radar inverse `Ω_γ⁻¹` of an MW map.
    RadarInverse(MwMap),
    /// `F ∘ conj`.
    PreConj(Box<PlaneMap>),
    /// `conj ∘ F`.
    PostConj(Box<PlaneMap>),
    Sum(Box<PlaneMap>, Box<PlaneMap>),
    /// `z ↦ scale·u·z + offset`.
    AffineLorentz {
        u: TwoVelocity,
        scale: f64,
        offset: SplitComplex,
    },
    /// `(t, x) ↦ (t_scale·t, x_scale·x)`.
    ComponentScale { t_scale: f64, x_scale: f64 },
    /// `z ↦ z²` in the split-complex algebra.
    Square,
    WaveCauchy(WaveCauchy),
    Custom(MapFn),
}

impl fmt::Debug for PlaneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaneMap::Identity => write!(f, "Identity"),
            PlaneMap::Mw(m) => f.debug_tuple("Mw").field(m.observer()).finish(),
            PlaneMap::RadarInverse(m) => f.debug_tuple("RadarInverse").field(m.observer()).finish(),
            PlaneMap::PreConj(g) => f.debug_tuple("PreConj").field(g).finish(),
            PlaneMap::PostConj(g) => f.debug_tuple("PostConj").field(g).finish(),
            PlaneMap::Sum(a, b) => f.debug_tuple("Sum").field(a).field(b).finish(),
            PlaneMap::AffineLorentz { u, scale, offset } => f
                .debug_struct("AffineLorentz")
                .field("u", u)
                .field("scale", scale)
                .field("offset", offset)
                .finish(),
            PlaneMap::ComponentScale { t_scale, x_scale } => f
                .debug_struct("ComponentScale")
                .field("t_scale", t_scale)
                .field("x_scale", x_scale)
                .finish(),
            PlaneMap::Square => write!(f, "Square"),
            PlaneMap::WaveCauchy(w) => w.fmt(f),
            PlaneMap::Custom(_) => write!(f, "Custom"),
        }
    }
}

impl PlaneMap {
    pub fn mw(observer: Observer) -> PlaneMap {
        PlaneMap::Mw(MwMap::new(observer))
    }

    pub fn conj(self) -> PlaneMap {
        PlaneMap::PreConj(Box::new(self))
    }

    pub fn post_conj(self) -> PlaneMap {
        PlaneMap::PostConj(Box::new(self))
    }

    pub fn sum(a: PlaneMap, b: PlaneMap) -> PlaneMap {
        PlaneMap::Sum(Box::new(a), Box::new(b))
    }

    pub fn custom<F>(f: F) -> PlaneMap
    where
        F: Fn(SplitComplex) -> Result<SplitComplex> + Send + Sync + 'static,
    {
        PlaneMap::Custom(Arc::new(f))
    }

    pub fn eval(&self, z: SplitComplex) -> Result<SplitComplex> {
        let w = self.eval_raw(z)?;
        if w.is_finite() {
            Ok(w)
        } else {
            Err(Error::NonFinite { at: z })
        }
    }

    fn eval_raw(&self, z: SplitComplex) -> Result<SplitComplex> {
        Ok(match self {
            PlaneMap::Identity => z,
            PlaneMap::Mw(m) => m.eval(z)?,
            PlaneMap::RadarInverse(m) => m.radar_inverse(z)?,
            PlaneMap::PreConj(g) => g.eval_raw(z.conj())?,
            PlaneMap::PostConj(g) => g.eval_raw(z)?.conj(),
            PlaneMap::Sum(a, b) => a.eval_raw(z)? + b.eval_raw(z)?,
            PlaneMap::AffineLorentz { u, scale, offset } => u.get() * z * *scale + *offset,
            PlaneMap::ComponentScale { t_scale, x_scale } => {
                SplitComplex::new(t_scale * z.t, x_scale * z.x)
            }
            PlaneMap::Square => z * z,
            PlaneMap::WaveCauchy(w) => w.eval(z),
            PlaneMap::Custom(f) => f(z)?,
        })
    }
}

/// Rectangular node grid plus the finite-difference step.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub t_min: f64,
    pub t_max: f64,
    pub x_min: f64,
    pub x_max: f64,
    pub n_t: usize,
    pub n_x: usize,
    h: f64,
}

impl GridSpec {
    /// Default step is a tenth of the smaller node spacing.
    pub fn new(t: (f64, f64), x: (f64, f64), n_t: usize, n_x: usize) -> Result<GridSpec> {
        if !(t.0 < t.1 && x.0 < x.1) || ![t.0, t.1, x.0, x.1].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "grid bounds must be finite and strictly ordered, got t {t:?}, x {x:?}"
            )));
        }
        if n_t < 3 || n_x < 3 {
            return Err(Error::InvalidArgument(format!(
                "grid needs at least 3 nodes per axis, got {n_t} x {n_x}"
            )));
        }
        let mut g = GridSpec {
            t_min: t.0,
            t_max: t.1,
            x_min: x.0,
            x_max: x.1,
            n_t,
            n_x,
            h: 0.0,
        };
        g.h = g.min_spacing() / 10.0;
        Ok(g)
    }

    /// Square grid `[-r, r]²` with `n` nodes per axis.
    pub fn square(r: f64, n: usize) -> Result<GridSpec> {
        GridSpec::new((-r, r), (-r, r), n, n)
    }

    pub fn with_step(mut self, h: f64) -> Result<GridSpec> {
        if !(h > 0.0 && h < 0.5 * self.min_spacing()) {
            return Err(Error::InvalidArgument(format!(
                "step {h} must lie in (0, {})",
                0.5 * self.min_spacing()
            )));
        }
        self.h = h;
        Ok(self)
    }

    pub fn step(&self) -> f64 {
        self.h
    }

    pub fn spacing(&self) -> (f64, f64) {
        (
            (self.t_max - self.t_min) / (self.n_t - 1) as f64,
            (self.x_max - self.x_min) / (self.n_x - 1) as f64,
        )
    }

    fn min_spacing(&self) -> f64 {
        let (dt, dx) = self.spacing();
        dt.min(dx)
    }

    /// Smaller side length, the reference scale for sampling margins.
    pub fn scale(&self) -> f64 {
        (self.t_max - self.t_min).min(self.x_max - self.x_min)
    }

    pub fn len(&self) -> usize {
        self.n_t * self.n_x
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Nodes with `t` outer and `x` inner; endpoints are hit exactly.
    pub fn nodes(&self) -> Vec<SplitComplex> {
        let lerp = |a: f64, b: f64, i: usize, n: usize| {
            if i == n - 1 {
                b
            } else {
                a + (b - a) * i as f64 / (n - 1) as f64
            }
        };
        let mut out = Vec::with_capacity(self.len());
        for i in 0..self.n_t {
            let t = lerp(self.t_min, self.t_max, i, self.n_t);
            for j in 0..self.n_x {
                out.push(SplitComplex::new(t, lerp(self.x_min, self.x_max, j, self.n_x)));
            }
        }
        out
    }

    pub fn center(&self) -> SplitComplex {
        SplitComplex::new(0.5 * (self.t_min + self.t_max), 0.5 * (self.x_min + self.x_max))
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> SplitComplex {
        SplitComplex::new(
            rng.random_range(self.t_min..=self.t_max),
            rng.random_range(self.x_min..=self.x_max),
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    pub max_abs: f64,
    pub mean_abs: f64,
    pub location_of_max: SplitComplex,
    /// `log₂(max(h) / max(h/2))`; `None` when both runs are at the rounding floor.
    pub convergence_order: Option<f64>,
    pub h: f64,
    pub max_abs_half: f64,
    /// Estimated rounding floor of the `h/2` run.
    pub floor: f64,
    /// Residual per grid node at step `h`, in [`GridSpec::nodes`] order.
    pub values: Vec<f64>,
}

impl ResidualReport {
    pub fn at_rounding_floor(&self) -> bool {
        self.convergence_order.is_none()
    }

    /// Zero up to rounding, or shrinking like truncation error.
    pub fn vanishes(&self) -> bool {
        self.convergence_order.is_none_or(|p| p >= MIN_VANISHING_ORDER)
    }
}

struct NodeResidual {
    value: f64,
    floor: f64,
}

struct Sweep {
    values: Vec<f64>,
    max: f64,
    argmax: usize,
    floor: f64,
}

fn sweep<K>(g: &GridSpec, h: f64, kernel: &mut K) -> Result<Sweep>
where
    K: FnMut(SplitComplex, f64) -> Result<NodeResidual>,
{
    let nodes = g.nodes();
    let mut values = Vec::with_capacity(nodes.len());
    let (mut max, mut argmax, mut floor) = (0.0, 0, 0.0_f64);
    for (k, &z) in nodes.iter().enumerate() {
        let r = kernel(z, h).map_err(|e| e.at(z))?;
        if r.value > max || k == 0 {
            max = r.value;
            argmax = k;
        }
        floor = floor.max(r.floor);
        values.push(r.value);
    }
    Ok(Sweep {
        values,
        max,
        argmax,
        floor,
    })
}

fn residual_report<K>(g: &GridSpec, mut kernel: K) -> Result<ResidualReport>
where
    K: FnMut(SplitComplex, f64) -> Result<NodeResidual>,
{
    let h = g.step();
    let full = sweep(g, h, &mut kernel)?;
    let half = sweep(g, 0.5 * h, &mut kernel)?;
    let exact = full.max <= full.floor && half.max <= half.floor;
    let convergence_order = if exact {
        None
    } else if half.max == 0.0 {
        Some(f64::INFINITY)
    } else {
        Some((full.max / half.max).log2())
    };
    let nodes = g.nodes();
    Ok(ResidualReport {
        max_abs: full.max,
        mean_abs: full.values.iter().sum::<f64>() / full.values.len() as f64,
        location_of_max: nodes[full.argmax],
        convergence_order,
        h,
        max_abs_half: half.max,
        floor: half.floor,
        values: full.values,
    })
}

fn rounding_floor(magnitude: f64, z: SplitComplex, h: f64, power: i32) -> f64 {
    FLOOR_FACTOR * f64::EPSILON * magnitude * (1.0 + z.euclid()) / h.powi(power)
}

struct FirstDiffs {
    d0: SplitComplex,
    d1: SplitComplex,
    magnitude: f64,
}

fn first_diffs<F>(f: &F, z: SplitComplex, h: f64) -> Result<FirstDiffs>
where
    F: Fn(SplitComplex) -> Result<SplitComplex>,
{
    let (tp, tm) = (z.t + h, z.t - h);
    let (xp, xm) = (z.x + h, z.x - h);
    let ftp = f(SplitComplex::new(tp, z.x))?;
    let ftm = f(SplitComplex::new(tm, z.x))?;
    let fxp = f(SplitComplex::new(z.t, xp))?;
    let fxm = f(SplitComplex::new(z.t, xm))?;
    let magnitude = [ftp, ftm, fxp, fxm].iter().map(|v| v.euclid()).fold(0.0, f64::max);
    Ok(FirstDiffs {
        d0: (ftp - ftm) / (tp - tm),
        d1: (fxp - fxm) / (xp - xm),
        magnitude,
    })
}

fn second_diff(fm: SplitComplex, f0: SplitComplex, fp: SplitComplex, hm: f64, hp: f64) -> SplitComplex {
    ((fp - f0) / hp - (f0 - fm) / hm) * (2.0 / (hp + hm))
}

fn wave_kernel<F>(f: &F, z: SplitComplex, h: f64) -> Result<NodeResidual>
where
    F: Fn(SplitComplex) -> Result<SplitComplex>,
{
    let (tp, tm) = (z.t + h, z.t - h);
    let (xp, xm) = (z.x + h, z.x - h);
    let f0 = f(z)?;
    let ftp = f(SplitComplex::new(tp, z.x))?;
    let ftm = f(SplitComplex::new(tm, z.x))?;
    let fxp = f(SplitComplex::new(z.t, xp))?;
    let fxm = f(SplitComplex::new(z.t, xm))?;
    let d00 = second_diff(ftm, f0, ftp, z.t - tm, tp - z.t);
    let d11 = second_diff(fxm, f0, fxp, z.x - xm, xp - z.x);
    let magnitude = [f0, ftp, ftm, fxp, fxm].iter().map(|v| v.euclid()).fold(0.0, f64::max);
    Ok(NodeResidual {
        value: (d00 - d11).euclid(),
        floor: rounding_floor(magnitude, z, h, 2),
    })
}

/// `max ‖∂₀F - σ∂₁F‖` over the grid, or `‖∂₀F + σ∂₁F‖` when `anti`.
pub fn holomorphy_residual(f: &PlaneMap, g: &GridSpec, anti: bool) -> Result<ResidualReport> {
    let sign = if anti { -1.0 } else { 1.0 };
    let eval = |z| f.eval(z);
    residual_report(g, |z, h| {
        let d = first_diffs(&eval, z, h)?;
        Ok(NodeResidual {
            value: (d.d0 - d.d1.mul_sigma() * sign).euclid(),
            floor: rounding_floor(d.magnitude, z, h, 1),
        })
    })
}

/// `max ‖∂₀²F - ∂₁²F‖` over the grid.
pub fn wave_residual(f: &PlaneMap, g: &GridSpec) -> Result<ResidualReport> {
    let eval = |z| f.eval(z);
    residual_report(g, |z, h| wave_kernel(&eval, z, h))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConformalityReport {
    /// `sqrt(2 G₀₁² + (G₁₁ + λ)²)` with `λ = G₀₀`.
    pub residual: ResidualReport,
    pub lambda_min: f64,
    pub lambda_max: f64,
    /// Nodes where `λ ≤ 0`.
    pub degenerate_nodes: usize,
}

/// Compares the Gram matrix `G_ij = ⟨∂ᵢF, ∂ⱼF⟩` with `λη`.
pub fn conformality_report(f: &PlaneMap, g: &GridSpec) -> Result<ConformalityReport> {
    let eval = |z| f.eval(z);
    let mut lambdas = Vec::new();
    let residual = residual_report(g, |z, h| {
        let d = first_diffs(&eval, z, h)?;
        let g00 = d.d0.inner(d.d0);
        let g01 = d.d0.inner(d.d1);
        let g11 = d.d1.inner(d.d1);
        if h == g.step() {
            lambdas.push(g00);
        }
        let scale = d.d0.euclid().max(d.d1.euclid());
        Ok(NodeResidual {
            value: (2.0 * g01 * g01 + (g11 + g00).powi(2)).sqrt(),
            floor: rounding_floor(d.magnitude, z, h, 1) * scale,
        })
    })?;
    Ok(ConformalityReport {
        residual,
        lambda_min: lambdas.iter().copied().fold(f64::INFINITY, f64::min),
        lambda_max: lambdas.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        degenerate_nodes: lambdas.iter().filter(|&&l| l <= 0.0).count(),
    })
}

/// Wave residual of the scalar field `ln g`, `g` the analytic conformal factor.
pub fn log_factor_wave_residual(m: &MwMap, g: &GridSpec) -> Result<ResidualReport> {
    if m.observer().smoothness() < Smoothness::C2 {
        return Err(Error::NotDifferentiable);
    }
    let field = |z| Ok(SplitComplex::new(m.conformal_factor(z)?.ln(), 0.0));
    residual_report(g, |z, h| wave_kernel(&field, z, h))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessDirection {
    /// `z₁ << z₂` but not `F(z₁) << F(z₂)`.
    Forward,
    /// `F(z₁) << F(z₂)` but not `z₁ << z₂`.
    Inverse,
}

/// A concrete pair on which `F` or `F⁻¹` fails to preserve `<<`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WitnessPair {
    pub z1: SplitComplex,
    pub z2: SplitComplex,
    pub image1: SplitComplex,
    pub image2: SplitComplex,
    pub relation_in: CausalRelation,
    pub relation_out: CausalRelation,
    pub direction: WitnessDirection,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Probes {
    /// Chronological input pairs only.
    Forward,
    /// Spacelike input pairs only, looking for chronological images.
    Inverse,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChronologyConfig {
    pub n_pairs: usize,
    pub seed: u64,
    pub band: f64,
    pub probes: Probes,
}

impl ChronologyConfig {
    pub fn new(n_pairs: usize, seed: u64) -> Self {
        ChronologyConfig {
            n_pairs,
            seed,
            band: NULL_BAND,
            probes: Probes::Both,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChronologyReport {
    pub forward_pairs: usize,
    pub inverse_pairs: usize,
    /// Smallest `|z₂ - z₁|²_L` among forward inputs.
    pub min_input_margin: f64,
    /// Smallest `|F(z₂) - F(z₁)|²_L` among forward images.
    pub min_output_margin: f64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ChronologyOutcome {
    Pass(ChronologyReport),
    Violation(WitnessPair),
}

impl ChronologyOutcome {
    pub fn witness(&self) -> Option<&WitnessPair> {
        match self {
            ChronologyOutcome::Violation(w) => Some(w),
            ChronologyOutcome::Pass(_) => None,
        }
    }
}

const MAX_REJECTIONS: usize = 100_000;

fn draw_pair<P>(g: &GridSpec, rng: &mut ChaCha8Rng, accept: P) -> Result<(SplitComplex, SplitComplex)>
where
    P: Fn(SplitComplex) -> bool,
{
    for _ in 0..MAX_REJECTIONS {
        let (mut a, mut b) = (g.sample(rng), g.sample(rng));
        if b.t < a.t {
            std::mem::swap(&mut a, &mut b);
        }
        if accept(b - a) {
            return Ok((a, b));
        }
    }
    Err(Error::InvalidArgument(
        "grid window too thin to draw pairs with the required margin".into(),
    ))
}

/// Seeded search for chronology violations with input margin `(0.1·scale)²`.
pub fn chronology_check(f: &PlaneMap, g: &GridSpec, n_pairs: usize, seed: u64) -> Result<ChronologyOutcome> {
    chronology_check_with(f, g, &ChronologyConfig::new(n_pairs, seed))
}

pub fn chronology_check_with(f: &PlaneMap, g: &GridSpec, cfg: &ChronologyConfig) -> Result<ChronologyOutcome> {
    if cfg.n_pairs == 0 {
        return Err(Error::InvalidArgument("chronology_check needs n_pairs >= 1".into()));
    }
    let margin = (0.1 * g.scale()).powi(2);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut report = ChronologyReport {
        forward_pairs: 0,
        inverse_pairs: 0,
        min_input_margin: f64::INFINITY,
        min_output_margin: f64::INFINITY,
        seed: cfg.seed,
    };
    let forward = matches!(cfg.probes, Probes::Forward | Probes::Both);
    let inverse = matches!(cfg.probes, Probes::Inverse | Probes::Both);
    let eval = |z: SplitComplex| f.eval(z).map_err(|e| e.at(z));

    for _ in 0..cfg.n_pairs {
        if forward {
            let (z1, z2) = draw_pair(g, &mut rng, |d| d.t > 0.0 && d.norm_sq() >= margin)?;
            let (w1, w2) = (eval(z1)?, eval(z2)?);
            let out = classify(w1, w2, cfg.band);
            if out != CausalRelation::ChronFuture {
                return Ok(ChronologyOutcome::Violation(WitnessPair {
                    z1,
                    z2,
                    image1: w1,
                    image2: w2,
                    relation_in: classify(z1, z2, cfg.band),
                    relation_out: out,
                    direction: WitnessDirection::Forward,
                }));
            }
            report.forward_pairs += 1;
            report.min_input_margin = report.min_input_margin.min((z2 - z1).norm_sq());
            report.min_output_margin = report.min_output_margin.min((w2 - w1).norm_sq());
        }
        if inverse {
            let (z1, z2) = draw_pair(g, &mut rng, |d| d.norm_sq() <= -margin)?;
            let (w1, w2) = (eval(z1)?, eval(z2)?);
            let found = match classify(w1, w2, cfg.band) {
                CausalRelation::ChronFuture => Some((z1, z2, w1, w2)),
                CausalRelation::ChronPast => Some((z2, z1, w2, w1)),
                _ => None,
            };
            if let Some((a, b, fa, fb)) = found {
                return Ok(ChronologyOutcome::Violation(WitnessPair {
                    z1: a,
                    z2: b,
                    image1: fa,
                    image2: fb,
                    relation_in: classify(a, b, cfg.band),
                    relation_out: CausalRelation::ChronFuture,
                    direction: WitnessDirection::Inverse,
                }));
            }
            report.inverse_pairs += 1;
        }
    }
    Ok(ChronologyOutcome::Pass(report))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MapOrientation {
    Preserving,
    Reversing,
    /// Neither null level of the image is conserved along a right ray.
    Neither { plus_spread: f64, minus_spread: f64 },
}

const ORIENTATION_SPREAD: f64 = 1e-8;
const ORIENTATION_SAMPLES: usize = 101;

/// Samples `F` along the right-moving ray through `probe` for `|τ| ≤ span`.
pub fn orientation_of(f: &PlaneMap, probe: SplitComplex, span: f64) -> Result<MapOrientation> {
    if !(span > 0.0) {
        return Err(Error::InvalidArgument(format!("span must be positive, got {span}")));
    }
    let mut plus = (f64::INFINITY, f64::NEG_INFINITY);
    let mut minus = plus;
    let mut scale = 0.0_f64;
    for i in 0..ORIENTATION_SAMPLES {
        let tau = -span + 2.0 * span * i as f64 / (ORIENTATION_SAMPLES - 1) as f64;
        let z = probe + SplitComplex::new(tau, tau);
        let w = f.eval(z).map_err(|e| e.at(z))?;
        plus = (plus.0.min(w.plus()), plus.1.max(w.plus()));
        minus = (minus.0.min(w.minus()), minus.1.max(w.minus()));
        scale = scale.max(w.euclid());
    }
    let tol = ORIENTATION_SPREAD * (1.0 + scale);
    let (ps, ms) = (plus.1 - plus.0, minus.1 - minus.0);
    Ok(if ms <= tol {
        MapOrientation::Preserving
    } else if ps <= tol {
        MapOrientation::Reversing
    } else {
        MapOrientation::Neither {
            plus_spread: ps,
            minus_spread: ms,
        }
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteItem {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SuiteOutcome {
    NotApplicable(LipStatus),
    Ran(Vec<SuiteItem>),
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, SuiteOutcome::Ran(items) if items.iter().all(|i| i.passed))
    }

    pub fn item(&self, name: &str) -> Option<&SuiteItem> {
        match self {
            SuiteOutcome::Ran(items) => items.iter().find(|i| i.name == name),
            SuiteOutcome::NotApplicable(_) => None,
        }
    }
}

pub const RADAR_ROUND_TRIP_TOL: f64 = 1e-9;

fn describe(outcome: Result<ChronologyOutcome>) -> (bool, String) {
    match outcome {
        Ok(ChronologyOutcome::Pass(r)) => (
            true,
            format!(
                "{} pairs, min output margin {:.3e}, seed {}",
                r.forward_pairs + r.inverse_pairs,
                r.min_output_margin,
                r.seed
            ),
        ),
        Ok(ChronologyOutcome::Violation(w)) => (false, format!("witness {} -> {}", w.z1, w.z2)),
        Err(e) => (false, format!("{e}")),
    }
}

/// Checks the causal-automorphism properties of an MW map on a grid.
pub fn automorphism_suite(m: &MwMap, g: &GridSpec, n_pairs: usize, seed: u64) -> Result<SuiteOutcome> {
    automorphism_suite_with(m, g, &ChronologyConfig::new(n_pairs, seed))
}

/// [`automorphism_suite`] taking pair count, seed and null band from `cfg`;
/// the probe setting is ignored since each direction is run separately.
pub fn automorphism_suite_with(m: &MwMap, g: &GridSpec, cfg: &ChronologyConfig) -> Result<SuiteOutcome> {
    let status = lip_status(m.observer());
    if status != LipStatus::Verified {
        return Ok(SuiteOutcome::NotApplicable(status));
    }
    let f = PlaneMap::Mw(m.clone());
    let mut items = Vec::new();

    let forward = ChronologyConfig {
        probes: Probes::Forward,
        ..*cfg
    };
    let (passed, detail) = describe(chronology_check_with(&f, g, &forward));
    items.push(SuiteItem {
        name: "chronology_forward",
        passed,
        detail,
    });

    let nodes = g.nodes();
    let images = nodes.iter().map(|&z| f.eval(z)).collect::<Result<Vec<_>>>()?;
    let bound = |sel: fn(&SplitComplex) -> f64| {
        images.iter().map(sel).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        })
    };
    let image_grid = GridSpec::new(bound(|z| z.t), bound(|z| z.x), g.n_t, g.n_x)?;
    let inverse = ChronologyConfig {
        seed: cfg.seed.wrapping_add(1),
        ..forward
    };
    let (passed, detail) = describe(chronology_check_with(
        &PlaneMap::RadarInverse(m.clone()),
        &image_grid,
        &inverse,
    ));
    items.push(SuiteItem {
        name: "chronology_inverse",
        passed,
        detail,
    });

    let mut worst = 0.0_f64;
    let mut failure = None;
    for (&z, &w) in nodes.iter().zip(&images) {
        match m.radar_inverse(w) {
            Ok(back) => worst = worst.max((back - z).euclid()),
            Err(e) => {
                failure = Some(format!("LIP window violation at {w}: {e}"));
                break;
            }
        }
    }
    items.push(SuiteItem {
        name: "radar_round_trip",
        passed: failure.is_none() && worst <= RADAR_ROUND_TRIP_TOL,
        detail: failure.unwrap_or_else(|| format!("max error {worst:.3e}")),
    });

    let orientation = orientation_of(&f, g.center(), 0.5 * g.scale())?;
    items.push(SuiteItem {
        name: "orientation",
        passed: orientation == MapOrientation::Preserving,
        detail: format!("{orientation:?}"),
    });

    let mut axis_ok = true;
    for i in 0..g.n_t {
        let s = g.t_min + (g.t_max - g.t_min) * i as f64 / (g.n_t - 1) as f64;
        axis_ok &= f.eval(SplitComplex::new(s, 0.0))? == m.observer().eval(s)?;
    }
    items.push(SuiteItem {
        name: "axis_restriction",
        passed: axis_ok,
        detail: if axis_ok { "exact".into() } else { "mismatch".into() },
    });
    Ok(SuiteOutcome::Ran(items))
}

#[derive(Clone, Debug, PartialEq)]
pub struct LowCounterexample {
    pub wave: ResidualReport,
    pub holo: ResidualReport,
    pub antiholo: ResidualReport,
    pub axis_ok: bool,
    pub witness: Option<WitnessPair>,
    /// Chronology pass report when no witness was found.
    pub search: Option<ChronologyReport>,
}

impl LowCounterexample {
    /// Wave-like, neither holomorphic nor antiholomorphic, and not causal.
    pub fn certified(&self) -> bool {
        self.wave.vanishes()
            && self.holo.max_abs >= BOUNDED_AWAY
            && self.antiholo.max_abs >= BOUNDED_AWAY
            && self.axis_ok
            && self.witness.is_some()
    }
}

/// The map `Ω_γ₁ + Ω_γ₂ ∘ conj`.
pub fn low_map(g1: &Observer, g2: &Observer) -> PlaneMap {
    PlaneMap::sum(PlaneMap::mw(g1.clone()), PlaneMap::mw(g2.clone()).conj())
}

/// Certifies that `F = Ω_γ₁ + Ω_γ₂ ∘ conj` solves the wave equation with
/// axis curve `γ₁ + γ₂` and still is not a causal automorphism.
pub fn low_counterexample(
    g1: &Observer,
    g2: &Observer,
    g: &GridSpec,
    n_pairs: usize,
    seed: u64,
) -> Result<LowCounterexample> {
    // F reads γ at s ± x for grid points widened by the stencil.
    let reach = g.x_min.abs().max(g.x_max.abs()) + 2.0 * g.step();
    let window = (g.t_min - reach, g.t_max + reach);
    let samples = verify_samples(window);
    let first = g2.eval(window.0)?;
    let mut constant = true;
    for i in 1..samples {
        let s = window.0 + (window.1 - window.0) * i as f64 / (samples - 1) as f64;
        constant &= (g2.eval(s)? - first).euclid() <= 1e-14 * (1.0 + first.euclid());
    }
    if constant {
        return Err(Error::DegenerateSplit);
    }
    let axis = Observer::sum(g1.clone(), g2.clone());
    verify_observer(&axis, window, samples)?;

    let f = low_map(g1, g2);
    let wave = wave_residual(&f, g)?;
    let holo = holomorphy_residual(&f, g, false)?;
    let antiholo = holomorphy_residual(&f, g, true)?;
    let mut axis_ok = true;
    for i in 0..g.n_t {
        let s = g.t_min + (g.t_max - g.t_min) * i as f64 / (g.n_t - 1) as f64;
        let want = axis.eval(s)?;
        axis_ok &= (f.eval(SplitComplex::new(s, 0.0))? - want).euclid() <= 1e-12 * (1.0 + want.euclid());
    }
    let (witness, search) = match chronology_check(&f, g, n_pairs, seed)? {
        ChronologyOutcome::Violation(w) => (Some(w), None),
        ChronologyOutcome::Pass(r) => (None, Some(r)),
    };
    Ok(LowCounterexample {
        wave,
        holo,
        antiholo,
        axis_ok,
        witness,
        search,
    })
}

fn verify_samples(window: (f64, f64)) -> usize {
    ((window.1 - window.0) * 64.0).clamp(257.0, 8193.0) as usize
}
