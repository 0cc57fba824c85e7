//! Grid certification of F < 0 on the three zones, and the overall verdict.

pub mod grid;
pub mod interval;
pub mod lipschitz;
pub mod small_a;
pub mod sweep;

use serde::{Deserialize, Serialize};

use crate::bounds::{midrange_certificate, MidrangeCertificate};
use crate::error::CertifyError;

pub use grid::{build_grid, Grid};
pub use interval::Interval;
pub use lipschitz::{lipschitz_bounds, lipschitz_terms, BracketRule, LipschitzTerms};
pub use small_a::{small_a_certificate, small_a_certificate_with, SmallACertificate};
pub use sweep::{sweep, write_csv, LipSource, SweepConfig, SweepOutput};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ZoneName {
    I,
    II,
    III,
}

impl std::fmt::Display for ZoneName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ZoneName::I => "I",
            ZoneName::II => "II",
            ZoneName::III => "III",
        })
    }
}

/// Published (L_a, L_c) for zones I, II, III.
pub const REFERENCE_LIPSCHITZ: [(f64, f64); 3] = [(819.6011, 84.4817), (1048.9639, 170.9884), (1353.8951, 352.1112)];

/// Published (max F, ℰ, max F + ℰ) for zones I, II, III.
pub const REFERENCE_SWEEP: [(f64, f64, f64); 3] = [
    (-0.21184, 0.21032, -0.00152),
    (-0.39006, 0.38422, -0.00584),
    (-0.20324, 0.202, -0.00124),
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Zone {
    pub name: ZoneName,
    pub k: f64,
    pub a_min: f64,
    pub a_max: f64,
    pub c_min: f64,
    pub c_max: f64,
    pub n_a: u32,
    pub n_c: u32,
    pub lip_a: f64,
    pub lip_c: f64,
    /// Points with c < a are outside the zone.
    pub diagonal_cut: bool,
}

impl Zone {
    pub fn delta_a(&self) -> f64 {
        (self.a_max - self.a_min) / self.n_a as f64
    }

    pub fn delta_c(&self) -> f64 {
        (self.c_max - self.c_min) / self.n_c as f64
    }

    /// Whether (a, c) lies in the zone.
    pub fn contains(&self, a: f64, c: f64) -> bool {
        let c_lo = if self.diagonal_cut { self.c_min.max(a) } else { self.c_min };
        (self.a_min..=self.a_max).contains(&a) && c >= c_lo && c <= self.c_max
    }

    /// The zone with its Lipschitz constants replaced by computed ones.
    pub fn with_computed_lipschitz(mut self, rule: BracketRule) -> Self {
        let (la, lc) = lipschitz_bounds(&self, rule);
        self.lip_a = la;
        self.lip_c = lc;
        self
    }
}

/// The three zones, carrying the published Lipschitz constants.
pub fn zones() -> [Zone; 3] {
    let z = |name, k, a_min, a_max, n_a, n_c, lip: (f64, f64), diagonal_cut| Zone {
        name,
        k,
        a_min,
        a_max,
        c_min: 0.16,
        c_max: 0.5,
        n_a,
        n_c,
        lip_a: lip.0,
        lip_c: lip.1,
        diagonal_cut,
    };
    [
        z(ZoneName::I, 0.0, 1.0 / 60.0, 0.06, 155, 150, REFERENCE_LIPSCHITZ[0], false),
        z(ZoneName::II, 0.06, 0.06, 0.12, 160, 155, REFERENCE_LIPSCHITZ[1], false),
        z(ZoneName::III, 0.12, 0.12, 0.25, 730, 735, REFERENCE_LIPSCHITZ[2], true),
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridReport {
    pub zone: ZoneName,
    pub k: f64,
    pub points_evaluated: usize,
    pub max_f: f64,
    pub argmax: (f64, f64),
    pub delta_a: f64,
    pub delta_c: f64,
    pub lip_a: f64,
    pub lip_c: f64,
    /// ℰ = L_a δ_a/2 + L_c δ_c/2.
    pub error_budget: f64,
    /// Rounding allowance added on top of ℰ.
    pub slack: f64,
    /// max_f + ℰ + slack.
    pub certified_upper: f64,
    pub verdict: bool,
    pub wall_time_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FullVerdict {
    pub small_a: SmallACertificate,
    pub zones: Vec<GridReport>,
    pub midrange: MidrangeCertificate,
    pub verdict: bool,
}

impl FullVerdict {
    /// Names of the failing parts, empty when the verdict holds.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.small_a.verdict {
            out.push("small-a certificate (a <= 1/60 or c <= 0.16)".to_string());
        }
        for z in &self.zones {
            if !z.verdict {
                out.push(format!("zone {} sweep (certified upper {:.6})", z.zone, z.certified_upper));
            }
        }
        if !self.midrange.verdict {
            out.push("hexagon bound for a in [1/4, 1/3]".to_string());
        }
        out
    }
}

pub fn full_verdict(cfg: &SweepConfig) -> Result<FullVerdict, CertifyError> {
    let small_a = small_a_certificate();
    let zones = zones()
        .iter()
        .map(|z| sweep(z, cfg).map(|o| o.report))
        .collect::<Result<Vec<_>, _>>()?;
    let midrange = midrange_certificate();
    let verdict = small_a.verdict && zones.iter().all(|z| z.verdict) && midrange.verdict;
    Ok(FullVerdict {
        small_a,
        zones,
        midrange,
        verdict,
    })
}
