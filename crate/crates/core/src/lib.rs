//! Split-complex numerics for 1+1 Minkowski space: causal order, observers,
//! Märzke-Wheeler radar maps, field diagnostics and proper time.

pub mod causal;
pub mod error;
pub mod fieldcheck;
pub mod interp;
pub mod mw;
pub mod observer;
pub mod propertime;
pub mod quad;
pub mod root;
pub mod splitc;

pub use causal::{CausalRelation, LightRay, Orientation, Region};
pub use error::{Error, Result};
pub use fieldcheck::{GridSpec, PlaneMap, ResidualReport, WitnessPair};
pub use mw::{DerivativeMode, MwMap};
pub use observer::{LipStatus, Observer, Smoothness};
pub use propertime::{ProperTimeResult, RadarTrajectory};
pub use splitc::{LightspeedContext, SplitComplex, TwoVelocity};
