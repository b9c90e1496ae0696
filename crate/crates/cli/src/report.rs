use std::fmt::{Display, Write};

use m2causal::fieldcheck::{ResidualReport, WitnessPair};
use m2causal::SplitComplex;

/// Plain-text report, one `key: value` per line, in insertion order.
#[derive(Default)]
pub struct Report {
    text: String,
}

impl Report {
    pub fn line(&mut self, key: &str, value: impl Display) -> &mut Self {
        let _ = writeln!(self.text, "{key}: {value}");
        self
    }

    pub fn event(&mut self, key: &str, z: SplitComplex) -> &mut Self {
        self.line(&format!("{key}_t"), z.t).line(&format!("{key}_x"), z.x)
    }

    pub fn residual(&mut self, prefix: &str, r: &ResidualReport) -> &mut Self {
        let k = |s: &str| format!("{prefix}{s}");
        self.line(&k("h"), r.h)
            .line(&k("max_abs"), r.max_abs)
            .line(&k("mean_abs"), r.mean_abs)
            .event(&k("location_of_max"), r.location_of_max)
            .line(&k("max_abs_half_step"), r.max_abs_half)
            .line(&k("rounding_floor"), r.floor)
            .line(
                &k("convergence_order"),
                match r.convergence_order {
                    Some(o) => o.to_string(),
                    None => "none (at rounding floor)".into(),
                },
            )
    }

    pub fn witness(&mut self, w: &WitnessPair) -> &mut Self {
        self.line("witness_direction", format!("{:?}", w.direction).to_lowercase())
            .event("z1", w.z1)
            .event("z2", w.z2)
            .event("image1", w.image1)
            .event("image2", w.image2)
            .line("relation_in", format!("{:?}", w.relation_in))
            .line("relation_out", format!("{:?}", w.relation_out))
    }

    pub fn into_string(self) -> String {
        self.text
    }
}
