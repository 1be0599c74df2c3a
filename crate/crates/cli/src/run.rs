//! Running jobs and suites.

use std::time::{Instant, SystemTime, UNIX_EPOCH};

use rayon::prelude::*;

use crate::cache::Cache;
use crate::claims::run_claim;
use crate::job::{Caps, Claim, Job, Params};
use crate::report::{input_hash, Report};

fn now_ms() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_millis() as u64).unwrap_or(0)
}

/// Runs one job, reusing a cached outcome when present.
pub fn run_job(job: &Job, cache: Option<&Cache>) -> Report {
    let start = Instant::now();
    let hash = input_hash(job);
    let outcome = match cache.and_then(|c| c.load(&hash)) {
        Some(o) => o,
        None => {
            let o = run_claim(job);
            if let Some(c) = cache {
                if let Err(e) = c.store(&hash, &o) {
                    eprintln!("warning: could not write cache entry {hash}: {e}");
                }
            }
            o
        }
    };
    Report::new(job, outcome, start.elapsed().as_millis() as u64, now_ms())
}

/// Runs jobs on the current rayon pool; reports come back in job order.
pub fn run_jobs(jobs: &[Job], cache: Option<&Cache>) -> Vec<Report> {
    jobs.par_iter().map(|j| run_job(j, cache)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Smoke,
    Full,
}

const ZN_RANGE: [(usize, usize); 6] = [(1, 0), (1, 1), (2, 0), (1, 2), (2, 1), (3, 0)];
const EPS_PAIRS: [(u8, u8); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];

fn job(claim: Claim, params: Params) -> Job {
    Job::new(claim, params, &Caps::default()).expect("suite jobs are within caps")
}

fn z_only(claim: Claim, z: usize) -> Job {
    job(claim, Params { z: Some(z), ..Params::default() })
}

fn eps_job(claim: Claim, (eps, epsp): (u8, u8), pmax: usize) -> Job {
    job(claim, Params { eps: Some(eps), epsp: Some(epsp), pmax: Some(pmax), ..Params::default() })
}

fn zn_job(claim: Claim, z: usize, big_n: usize, pmax: usize) -> Job {
    job(claim, Params { z: Some(z), big_n: Some(big_n), pmax: Some(pmax), ..Params::default() })
}

/// The battery of a suite. `full` covers every acceptance range; `smoke`
/// is a reduced copy meant to finish in well under two minutes.
pub fn suite_jobs(suite: Suite) -> Vec<Job> {
    let full = suite == Suite::Full;
    let mut jobs = Vec::new();
    for z in 1..=if full { 5 } else { 4 } {
        jobs.push(z_only(Claim::Lemma34, z));
    }
    for z in 1..=if full { 4 } else { 3 } {
        jobs.push(z_only(Claim::AssocWedge, z));
    }
    for n in 1..=if full { 5 } else { 4 } {
        jobs.push(job(Claim::Koszul, Params { n: Some(n), ..Params::default() }));
    }
    for e in EPS_PAIRS {
        jobs.push(eps_job(Claim::Elementary, e, if full { 10 } else { 6 }));
        jobs.push(eps_job(Claim::PoissonGraded, e, if full { 7 } else { 5 }));
        jobs.push(eps_job(Claim::PbwFiltration, e, if full { 6 } else { 4 }));
    }
    let zn: &[(usize, usize)] = if full { &ZN_RANGE } else { &ZN_RANGE[..3] };
    let pmax = if full { 4 } else { 3 };
    for &(z, n) in zn {
        for claim in [Claim::AAcyclic, Claim::CAcyclic, Claim::Dynkin, Claim::SigmaSplit, Claim::AEFactorization] {
            jobs.push(zn_job(claim, z, n, pmax));
        }
    }
    let kunneth: &[(usize, usize)] = if full { &[(1, 0), (1, 1), (2, 1)] } else { &[(1, 0)] };
    for &(z, n) in kunneth {
        jobs.push(job(Claim::KunnethC, Params { z: Some(z), big_n: Some(n), q: Some(2), pmax: Some(2), ..Params::default() }));
    }
    for z in 1..=if full { 7 } else { 4 } {
        jobs.push(zn_job(Claim::Dims, z, 0, 2));
    }
    jobs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_are_valid() {
        let smoke = suite_jobs(Suite::Smoke);
        let full = suite_jobs(Suite::Full);
        assert!(smoke.len() < full.len());
        for c in Claim::ALL {
            assert!(full.iter().any(|j| j.claim == c), "{c} missing from full");
            assert!(smoke.iter().any(|j| j.claim == c), "{c} missing from smoke");
        }
    }

    #[test]
    fn warm_and_cold_agree() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path()).unwrap();
        let j = zn_job(Claim::AAcyclic, 1, 1, 3);
        let cold = run_job(&j, Some(&cache));
        let warm = run_job(&j, Some(&cache));
        let none = run_job(&j, None);
        assert_eq!(cold.deterministic(), warm.deterministic());
        assert_eq!(cold.deterministic(), none.deterministic());
        assert!(cold.verdict.is_pass());
    }
}
