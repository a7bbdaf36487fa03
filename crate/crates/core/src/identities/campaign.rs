use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use super::{
    random_deletion_set, random_distinct_rationals, verify_eei_matrix, verify_eq1_1, verify_eq1_2, verify_eq1_3,
    verify_eq2_3_liu, verify_eq2_4, verify_eq3_1, verify_lemma3_2, verify_thm2_1, verify_thm3_1, IdentityId,
    VerificationReport,
};
use crate::error::{Error, Result};
use crate::exact::{cyc_context, CycElem};
use crate::matrices::Caps;
use crate::spectral::{cp_herm, HermMatrix};

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignConfig {
    pub identities: Vec<IdentityId>,
    pub n_min: u32,
    pub n_max: u32,
    pub seed: u64,
    /// Seeded trials per `n` for the randomized identities.
    pub trials: u32,
    pub caps: Caps,
    pub tol: f64,
    /// Worker threads; `None` uses the available parallelism.
    pub jobs: Option<usize>,
    /// Keep measured `elapsed_ms`; otherwise it is written as 0 so repeated
    /// runs produce identical output.
    pub timings: bool,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            identities: IdentityId::ALL.to_vec(),
            n_min: 2,
            n_max: 8,
            seed: 0,
            trials: 1,
            caps: Caps::default(),
            tol: 1e-8,
            jobs: None,
            timings: false,
        }
    }
}

impl CampaignConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_min > self.n_max {
            return Err(Error::InvalidArgument(format!(
                "empty range {}..{}",
                self.n_min, self.n_max
            )));
        }
        if self.identities.is_empty() {
            return Err(Error::InvalidArgument("no identities selected".into()));
        }
        if self.trials == 0 {
            return Err(Error::InvalidArgument("trials must be positive".into()));
        }
        if self.caps.permanent_dim == 0 || self.caps.enumeration_dim == 0 {
            return Err(Error::InvalidArgument("caps must be positive".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidArgument(format!("tolerance must be positive, got {}", self.tol)));
        }
        if self.jobs == Some(0) {
            return Err(Error::InvalidArgument("jobs must be positive".into()));
        }
        Ok(())
    }

    /// Work items in output order: identity, then `n`, then trial.
    pub fn items(&self) -> Vec<WorkItem> {
        let mut ids = self.identities.clone();
        ids.sort();
        ids.dedup();
        let mut out = Vec::new();
        for id in ids {
            let trials = match id {
                // trial 0 is the CP matrix, the rest random matrices
                IdentityId::Eei => self.trials + 1,
                id if id.is_randomized() => self.trials,
                _ => 1,
            };
            for n in self.n_min..=self.n_max {
                out.extend((0..trials).map(|trial| WorkItem { id, n, trial }));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct WorkItem {
    pub id: IdentityId,
    pub n: u32,
    pub trial: u32,
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-item seed, independent of scheduling.
pub fn item_seed(seed: u64, id: IdentityId, n: u32, trial: u32) -> u64 {
    let tag = IdentityId::ALL.iter().position(|&x| x == id).unwrap_or(0) as u64;
    splitmix(splitmix(splitmix(seed) ^ tag) ^ (u64::from(n) << 32 | u64::from(trial)))
}

fn random_points<R: Rng>(n: u32, rng: &mut R) -> Result<Vec<CycElem>> {
    let ctx = cyc_context(2)?;
    Ok(random_distinct_rationals(n as usize, rng)
        .iter()
        .map(|r| ctx.from_rational(r))
        .collect())
}

fn deletion_set<R: Rng>(id: IdentityId, n: u32, trial: u32, caps: &Caps, rng: &mut R) -> Vec<usize> {
    let n = n as usize;
    let want_odd = id == IdentityId::Thm3_1Odd;
    let sizes: Vec<usize> = (0..n).filter(|k| ((n - k) % 2 == 1) == want_odd).collect();
    if sizes.is_empty() {
        return Vec::new();
    }
    let k = if trial == 0 {
        sizes[0]
    } else {
        let within: Vec<usize> = sizes.iter().copied().filter(|k| n - k <= caps.enumeration_dim).collect();
        let pool = if within.is_empty() { &sizes } else { &within };
        pool[rng.random_range(0..pool.len())]
    };
    random_deletion_set(n, k, rng)
}

fn dispatch(item: WorkItem, cfg: &CampaignConfig, rng: &mut ChaCha8Rng) -> Result<VerificationReport> {
    let WorkItem { id, n, trial } = item;
    match id {
        IdentityId::Eq1_1 => verify_eq1_1(n, &cfg.caps),
        IdentityId::Eq1_2 => verify_eq1_2(n, &cfg.caps),
        IdentityId::Eq1_3 => verify_eq1_3(n),
        IdentityId::Lemma3_2 => verify_lemma3_2(&random_points(n, rng)?),
        IdentityId::Eq3_1 => {
            if n % 2 == 0 || n < 3 {
                return Err(Error::Parity(format!("needs odd n >= 3, got {n}")));
            }
            verify_eq3_1(&random_points(n, rng)?)
        }
        IdentityId::Thm3_1Odd | IdentityId::Thm3_1Even => {
            if n < 2 {
                return Err(Error::InvalidArgument(format!("needs n >= 2, got {n}")));
            }
            let set = deletion_set(id, n, trial, &cfg.caps, rng);
            if n as usize - set.len() > cfg.caps.enumeration_dim {
                return Err(Error::CapExceeded {
                    what: "derangement sums",
                    dim: n as usize - set.len(),
                    cap: cfg.caps.enumeration_dim,
                });
            }
            verify_thm3_1(n, &set, &cfg.caps)
        }
        IdentityId::Eq2_3Liu => verify_eq2_3_liu(n),
        IdentityId::Thm2_1 => verify_thm2_1(n, cfg.tol),
        IdentityId::Eei => {
            let m = if trial == 0 {
                cp_herm(n)?
            } else {
                if n == 0 {
                    return Err(Error::InvalidArgument("dimension must be positive".into()));
                }
                HermMatrix::random(n as usize, rng)
            };
            Ok(verify_eei_matrix(n, &m, cfg.tol)?.param("source", if trial == 0 { "cp" } else { "random" }))
        }
        IdentityId::Eq2_4 => verify_eq2_4(n),
    }
}

/// Runs one work item; failures to run become `skipped`, `inconclusive`
/// or `fail` reports rather than errors.
pub fn run_item(item: WorkItem, cfg: &CampaignConfig) -> VerificationReport {
    let seed = item_seed(cfg.seed, item.id, item.n, item.trial);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut params = BTreeMap::new();
    if item.id.is_randomized() {
        params.insert("trial".to_string(), item.trial.to_string());
        params.insert("seed".to_string(), seed.to_string());
    }
    let mut report = match dispatch(item, cfg, &mut rng) {
        Ok(mut r) => {
            r.parameters.extend(params);
            r
        }
        Err(e) => VerificationReport::from_error(item.id, item.n, params, &e),
    };
    if !cfg.timings {
        report.elapsed_ms = 0;
    }
    report
}

/// Runs every item of the campaign; reports come back in
/// (identity, n, trial) order whatever the completion order.
pub fn run_campaign(cfg: &CampaignConfig) -> Result<Vec<VerificationReport>> {
    cfg.validate()?;
    let items = cfg.items();
    #[cfg(feature = "parallel")]
    {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(j) = cfg.jobs {
            builder = builder.num_threads(j);
        }
        let pool = builder
            .build()
            .map_err(|e| Error::InvalidArgument(format!("cannot start worker pool: {e}")))?;
        Ok(pool.install(|| items.par_iter().map(|&it| run_item(it, cfg)).collect()))
    }
    #[cfg(not(feature = "parallel"))]
    {
        Ok(items.iter().map(|&it| run_item(it, cfg)).collect())
    }
}
