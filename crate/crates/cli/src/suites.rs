//! Registry of verification suites.

use clap::ValueEnum;
use coxinv::algebra::Mode;
use coxinv::coxeter::{groups_suite, GroupType};
use coxinv::frobenius::{
    fvw_bridge_suite, h3_disc_suite, h3prime_suite, h4_9_psi_suite, h4_disc_suite, transforms_suite, y_in_t_suite,
};
use coxinv::invariants::{
    h3_intertwine_suite, h3_invariants_suite, h3_jacobian_suite, h4_intertwine_suite, h4_invariants_suite,
    h4_jacobian_suite, theorem32_suite,
};
use coxinv::VerifyReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    #[value(name = "groups-h3")]
    GroupsH3,
    #[value(name = "groups-h4")]
    GroupsH4,
    #[value(name = "h3-invariants")]
    H3Invariants,
    #[value(name = "h3-intertwine")]
    H3Intertwine,
    #[value(name = "h3-jacobian")]
    H3Jacobian,
    #[value(name = "h4-invariants")]
    H4Invariants,
    #[value(name = "h4-intertwine")]
    H4Intertwine,
    #[value(name = "h4-theorem32")]
    H4Theorem32,
    #[value(name = "h4-jacobian")]
    H4Jacobian,
    #[value(name = "h3-disc")]
    H3Disc,
    #[value(name = "h4-disc")]
    H4Disc,
    #[value(name = "h3prime")]
    H3Prime,
    #[value(name = "h4_9-psi")]
    H49Psi,
    #[value(name = "transforms")]
    Transforms,
    #[value(name = "fvw")]
    Fvw,
    #[value(name = "y-in-t")]
    YInT,
    /// Every suite above, in order.
    #[value(name = "all")]
    All,
}

/// How identities that are too large to expand by default are tested.
#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub points: usize,
    pub exact: bool,
}

impl RunConfig {
    fn mode(&self) -> Mode {
        if self.exact {
            Mode::Exact
        } else {
            Mode::Modular { points: self.points, seed: self.seed }
        }
    }
}

impl Suite {
    pub fn expand(list: &[Suite]) -> Vec<Suite> {
        let mut out: Vec<Suite> = Vec::new();
        for &s in list {
            let add: Vec<Suite> = if s == Suite::All {
                Suite::value_variants().iter().copied().filter(|v| *v != Suite::All).collect()
            } else {
                vec![s]
            };
            for a in add {
                if !out.contains(&a) {
                    out.push(a);
                }
            }
        }
        out
    }

    pub fn run(self, cfg: RunConfig) -> VerifyReport {
        let seed = cfg.seed;
        match self {
            Suite::GroupsH3 => groups_suite(GroupType::H3),
            Suite::GroupsH4 => groups_suite(GroupType::H4),
            Suite::H3Invariants => h3_invariants_suite(seed),
            Suite::H3Intertwine => h3_intertwine_suite(seed),
            Suite::H3Jacobian => h3_jacobian_suite(),
            Suite::H4Invariants => h4_invariants_suite(cfg.mode()),
            Suite::H4Intertwine => h4_intertwine_suite(seed),
            Suite::H4Theorem32 => theorem32_suite(cfg.mode(), seed),
            Suite::H4Jacobian => h4_jacobian_suite(cfg.mode()),
            Suite::H3Disc => h3_disc_suite(),
            Suite::H4Disc => h4_disc_suite(),
            Suite::H3Prime => h3prime_suite(),
            Suite::H49Psi => h4_9_psi_suite(),
            Suite::Transforms => transforms_suite(cfg.mode(), seed),
            Suite::Fvw => fvw_bridge_suite(),
            Suite::YInT => y_in_t_suite(seed),
            Suite::All => unreachable!("expanded before running"),
        }
    }
}
