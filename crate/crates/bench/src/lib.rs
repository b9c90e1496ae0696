//! Shared fixtures for the benchmarks.

use m2causal::{GridSpec, LightspeedContext, MwMap, Observer, PlaneMap, RadarTrajectory};

pub fn ctx() -> LightspeedContext {
    LightspeedContext::default()
}

pub fn perturbed() -> Observer {
    Observer::perturbed_inertial(0.2, 1.0).expect("valid observer")
}

pub fn rindler() -> Observer {
    Observer::rindler(1.0, ctx()).expect("valid observer")
}

pub fn mw(g: Observer) -> MwMap {
    MwMap::new(g)
}

pub fn plane_map(g: Observer) -> PlaneMap {
    PlaneMap::Mw(MwMap::new(g))
}

pub fn grid(n: usize) -> GridSpec {
    GridSpec::square(0.5, n).expect("valid grid")
}

pub fn walker(t1: f64) -> RadarTrajectory {
    RadarTrajectory::linear(0.1, 0.3, (0.0, t1)).expect("valid trajectory")
}
