//! Scenario files: TOML with observers and maps referenced by name.
//!
//! Everything is resolved into core objects up front so that a bad file
//! fails before any computation or output happens.

use std::collections::BTreeMap;
use std::path::Path;

use m2causal::fieldcheck::{wave_cauchy_from_observer, GridSpec, PlaneMap, WaveSign};
use m2causal::mw::{MwMap, DEFAULT_ROOT_TOL};
use m2causal::propertime::DEFAULT_QUAD_TOL;
use m2causal::splitc::{two_velocity, LightspeedContext, SplitComplex, NULL_BAND};
use m2causal::Observer;
use serde::Deserialize;

const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    #[serde(default = "default_c")]
    c: f64,
    seed: Option<u64>,
    #[serde(default)]
    observers: BTreeMap<String, ObserverSpec>,
    #[serde(default)]
    maps: BTreeMap<String, MapSpec>,
    grid: Option<GridFields>,
    #[serde(default)]
    tolerances: Tolerances,
}

fn default_c() -> f64 {
    1.0
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum ObserverSpec {
    Inertial {
        v: f64,
        #[serde(default)]
        base: Option<[f64; 2]>,
    },
    Rindler {
        a: f64,
    },
    PerturbedInertial {
        amplitude: f64,
        omega: f64,
    },
    Oscillation {
        amplitude: f64,
        omega: f64,
    },
    PiecewiseLinear {
        /// `[s, t, x]` rows.
        vertices: Vec<[f64; 3]>,
    },
    Sum {
        a: String,
        b: String,
    },
    Boosted {
        v: f64,
        observer: String,
    },
    Translated {
        offset: [f64; 2],
        observer: String,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum MapSpec {
    Mw {
        observer: String,
    },
    Conj {
        map: String,
    },
    PostConj {
        map: String,
    },
    Sum {
        a: String,
        b: String,
    },
    Affine {
        v: f64,
        #[serde(default = "one")]
        scale: f64,
        #[serde(default)]
        offset: Option<[f64; 2]>,
    },
    Scale {
        t_scale: f64,
        x_scale: f64,
    },
    Identity,
    Square,
    WaveCauchy {
        observer: String,
        sign: i8,
    },
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridFields {
    pub t_min: f64,
    pub t_max: f64,
    pub x_min: f64,
    pub x_max: f64,
    pub n_t: usize,
    pub n_x: usize,
    pub h: Option<f64>,
}

impl Default for GridFields {
    fn default() -> Self {
        GridFields {
            t_min: -1.0,
            t_max: 1.0,
            x_min: -1.0,
            x_max: 1.0,
            n_t: 11,
            n_x: 11,
            h: None,
        }
    }
}

impl GridFields {
    fn apply(&mut self, key: &str, value: &str) -> Result<(), String> {
        let real = || value.parse::<f64>().map_err(|e| format!("grid override {key}={value}: {e}"));
        let count = || value.parse::<usize>().map_err(|e| format!("grid override {key}={value}: {e}"));
        match key {
            "t_min" => self.t_min = real()?,
            "t_max" => self.t_max = real()?,
            "x_min" => self.x_min = real()?,
            "x_max" => self.x_max = real()?,
            "n_t" => self.n_t = count()?,
            "n_x" => self.n_x = count()?,
            "h" => self.h = Some(real()?),
            _ => return Err(format!("unknown grid key {key:?}")),
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default = "default_null_band")]
    pub null_band: f64,
    #[serde(default = "default_root_tol")]
    pub root_tol: f64,
    #[serde(default = "default_quad_tol")]
    pub quad_tol: f64,
    /// Finite-difference step; takes precedence over `grid.h`.
    pub fd_step: Option<f64>,
}

fn default_null_band() -> f64 {
    NULL_BAND
}

fn default_root_tol() -> f64 {
    DEFAULT_ROOT_TOL
}

fn default_quad_tol() -> f64 {
    DEFAULT_QUAD_TOL
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            null_band: NULL_BAND,
            root_tol: DEFAULT_ROOT_TOL,
            quad_tol: DEFAULT_QUAD_TOL,
            fd_step: None,
        }
    }
}

/// A validated scenario with every name resolved.
#[derive(Debug)]
pub struct Scenario {
    pub ctx: LightspeedContext,
    pub seed: u64,
    pub grid: GridSpec,
    pub tolerances: Tolerances,
    observers: BTreeMap<String, Observer>,
    maps: BTreeMap<String, PlaneMap>,
}

impl Scenario {
    pub fn load(path: &Path, grid_overrides: &[String], seed: Option<u64>) -> Result<Scenario, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        Scenario::parse(&text, grid_overrides, seed)
    }

    pub fn parse(text: &str, grid_overrides: &[String], seed: Option<u64>) -> Result<Scenario, String> {
        let raw: RawScenario = toml::from_str(text).map_err(|e| format!("scenario: {e}"))?;
        let ctx = LightspeedContext::new(raw.c).map_err(|e| format!("c: {e}"))?;
        let tolerances = raw.tolerances;
        for (name, v) in [
            ("null_band", tolerances.null_band),
            ("root_tol", tolerances.root_tol),
            ("quad_tol", tolerances.quad_tol),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(format!("tolerances.{name} must be positive, got {v}"));
            }
        }

        let mut fields = raw.grid.unwrap_or_default();
        for item in grid_overrides {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| format!("grid override {item:?} is not key=value"))?;
            fields.apply(k.trim(), v.trim())?;
        }
        let mut grid = GridSpec::new(
            (fields.t_min, fields.t_max),
            (fields.x_min, fields.x_max),
            fields.n_t,
            fields.n_x,
        )
        .map_err(|e| format!("grid: {e}"))?;
        if let Some(h) = tolerances.fd_step.or(fields.h) {
            grid = grid.with_step(h).map_err(|e| format!("grid: {e}"))?;
        }

        let mut observers = BTreeMap::new();
        for name in raw.observers.keys() {
            let mut stack = Vec::new();
            let obs = resolve_observer(name, &raw.observers, ctx, &mut stack)?;
            observers.insert(name.clone(), obs);
        }
        let mut maps = BTreeMap::new();
        for name in raw.maps.keys() {
            let mut stack = Vec::new();
            let map = resolve_map(name, &raw.maps, &observers, ctx, tolerances.root_tol, &mut stack)?;
            maps.insert(name.clone(), map);
        }
        Ok(Scenario {
            ctx,
            seed: seed.or(raw.seed).unwrap_or(DEFAULT_SEED),
            grid,
            tolerances,
            observers,
            maps,
        })
    }

    pub fn observer(&self, name: &str) -> Result<&Observer, String> {
        self.observers
            .get(name)
            .ok_or_else(|| format!("unknown observer {name:?}"))
    }

    pub fn map(&self, name: &str) -> Result<&PlaneMap, String> {
        self.maps.get(name).ok_or_else(|| format!("unknown map {name:?}"))
    }
}

fn event(p: [f64; 2]) -> SplitComplex {
    SplitComplex::new(p[0], p[1])
}

fn enter(name: &str, stack: &mut Vec<String>) -> Result<(), String> {
    if stack.iter().any(|n| n == name) {
        stack.push(name.to_string());
        return Err(format!("reference cycle: {}", stack.join(" -> ")));
    }
    stack.push(name.to_string());
    Ok(())
}

fn resolve_observer(
    name: &str,
    specs: &BTreeMap<String, ObserverSpec>,
    ctx: LightspeedContext,
    stack: &mut Vec<String>,
) -> Result<Observer, String> {
    let spec = specs
        .get(name)
        .ok_or_else(|| format!("unknown observer {name:?}"))?;
    enter(name, stack)?;
    let ctxerr = |e: m2causal::Error| format!("observer {name:?}: {e}");
    let obs = match spec {
        ObserverSpec::Inertial { v, base } => {
            Observer::inertial(*v, base.map(event).unwrap_or(SplitComplex::ZERO), ctx).map_err(ctxerr)?
        }
        ObserverSpec::Rindler { a } => Observer::rindler(*a, ctx).map_err(ctxerr)?,
        ObserverSpec::PerturbedInertial { amplitude, omega } => {
            Observer::perturbed_inertial(*amplitude, *omega).map_err(ctxerr)?
        }
        ObserverSpec::Oscillation { amplitude, omega } => Observer::oscillation(*amplitude, *omega).map_err(ctxerr)?,
        ObserverSpec::PiecewiseLinear { vertices } => Observer::piecewise_linear(
            vertices
                .iter()
                .map(|r| (r[0], SplitComplex::new(r[1], r[2])))
                .collect(),
        )
        .map_err(ctxerr)?,
        ObserverSpec::Sum { a, b } => Observer::sum(
            resolve_observer(a, specs, ctx, stack)?,
            resolve_observer(b, specs, ctx, stack)?,
        ),
        ObserverSpec::Boosted { v, observer } => Observer::boosted(
            two_velocity(*v, ctx).map_err(ctxerr)?,
            resolve_observer(observer, specs, ctx, stack)?,
        ),
        ObserverSpec::Translated { offset, observer } => {
            Observer::translated(event(*offset), resolve_observer(observer, specs, ctx, stack)?)
        }
    };
    stack.pop();
    Ok(obs)
}

fn resolve_map(
    name: &str,
    specs: &BTreeMap<String, MapSpec>,
    observers: &BTreeMap<String, Observer>,
    ctx: LightspeedContext,
    root_tol: f64,
    stack: &mut Vec<String>,
) -> Result<PlaneMap, String> {
    let spec = specs.get(name).ok_or_else(|| format!("unknown map {name:?}"))?;
    enter(name, stack)?;
    let observer = |o: &str| {
        observers
            .get(o)
            .cloned()
            .ok_or_else(|| format!("map {name:?}: unknown observer {o:?}"))
    };
    let map = match spec {
        MapSpec::Mw { observer: o } => PlaneMap::Mw(MwMap::new(observer(o)?).with_root_tol(root_tol)),
        MapSpec::Conj { map } => resolve_map(map, specs, observers, ctx, root_tol, stack)?.conj(),
        MapSpec::PostConj { map } => resolve_map(map, specs, observers, ctx, root_tol, stack)?.post_conj(),
        MapSpec::Sum { a, b } => PlaneMap::sum(
            resolve_map(a, specs, observers, ctx, root_tol, stack)?,
            resolve_map(b, specs, observers, ctx, root_tol, stack)?,
        ),
        MapSpec::Affine { v, scale, offset } => PlaneMap::AffineLorentz {
            u: two_velocity(*v, ctx)
                .map_err(|e| format!("map {name:?}: {e}"))?,
            scale: *scale,
            offset: offset.map(event).unwrap_or(SplitComplex::ZERO),
        },
        MapSpec::Scale { t_scale, x_scale } => PlaneMap::ComponentScale {
            t_scale: *t_scale,
            x_scale: *x_scale,
        },
        MapSpec::Identity => PlaneMap::Identity,
        MapSpec::Square => PlaneMap::Square,
        MapSpec::WaveCauchy { observer: o, sign } => {
            let sign = match sign {
                1 => WaveSign::Plus,
                -1 => WaveSign::Minus,
                s => return Err(format!("map {name:?}: sign must be 1 or -1, got {s}")),
            };
            wave_cauchy_from_observer(&observer(o)?, sign)
        }
    };
    stack.pop();
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASIC: &str = r#"
        c = 1.0
        seed = 9

        [observers.wiggle]
        kind = "perturbed_inertial"
        amplitude = 0.3
        omega = 1.0

        [observers.moving]
        kind = "boosted"
        v = 0.5
        observer = "wiggle"

        [maps.m]
        kind = "mw"
        observer = "moving"

        [maps.low]
        kind = "sum"
        a = "m"
        b = "mc"

        [maps.mc]
        kind = "conj"
        map = "m"

        [grid]
        t_min = -1.0
        t_max = 1.0
        x_min = -0.5
        x_max = 0.5
        n_t = 5
        n_x = 3
    "#;

    #[test]
    fn resolves_references() {
        let s = Scenario::parse(BASIC, &[], None).unwrap();
        assert_eq!(s.seed, 9);
        assert!(s.map("low").is_ok());
        assert!(s.map("nope").is_err());
        assert_eq!(s.grid.n_t, 5);
        let s = Scenario::parse(BASIC, &["n_t=7".into(), "h=0.01".into()], Some(3)).unwrap();
        assert_eq!((s.grid.n_t, s.grid.step(), s.seed), (7, 0.01, 3));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let typo = BASIC.replace("[grid]", "[tolerances]\nnull_bnad = 1e-9\n\n[grid]");
        let err = Scenario::parse(&typo, &[], None).unwrap_err();
        assert!(err.contains("null_bnad"), "{err}");
        let typo = BASIC.replace("omega = 1.0", "omgea = 1.0");
        assert!(Scenario::parse(&typo, &[], None).is_err());
        assert!(Scenario::parse(BASIC, &["n_z=3".into()], None).is_err());
    }

    #[test]
    fn cycles_and_dangling_names_fail() {
        let cyc = r#"
            [maps.a]
            kind = "conj"
            map = "b"
            [maps.b]
            kind = "conj"
            map = "a"
        "#;
        assert!(Scenario::parse(cyc, &[], None).unwrap_err().contains("cycle"));
        let dangling = r#"
            [maps.a]
            kind = "mw"
            observer = "ghost"
        "#;
        assert!(Scenario::parse(dangling, &[], None).is_err());
    }
}
