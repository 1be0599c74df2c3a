//! Acceptance battery: one line per criterion, nonzero exit on any failure.
//! Exact arithmetic throughout; the only tolerances are the wall-time
//! budgets printed with each line.

use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestRunner};

use prop_homology::{run_job, run_jobs, Cache, Caps, Claim, Job, Params, Report};
use prop_homology_core::complexes::{build_a, build_c, sign_multiplicities, PWindow};
use prop_homology_core::freealg::{left_normed, LiePoly};
use prop_homology_core::rational::int;
use prop_homology_core::symgrp::Permutation;

const ZN_RANGE: [(usize, usize); 6] = [(1, 0), (1, 1), (2, 0), (1, 2), (2, 1), (3, 0)];
const EPS_PAIRS: [(u8, u8); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];

fn job(claim: Claim, params: Params) -> Job {
    Job::new(claim, params, &Caps::default()).expect("acceptance jobs are within caps")
}

fn zn(claim: Claim, z: usize, big_n: usize, pmax: usize) -> Job {
    job(claim, Params { z: Some(z), big_n: Some(big_n), pmax: Some(pmax), ..Params::default() })
}

fn eps(claim: Claim, (e, f): (u8, u8), pmax: usize) -> Job {
    job(claim, Params { eps: Some(e), epsp: Some(f), pmax: Some(pmax), ..Params::default() })
}

struct Line {
    pass: bool,
    notes: Vec<String>,
}

impl Line {
    fn new() -> Self {
        Line { pass: true, notes: Vec::new() }
    }

    fn reports(&mut self, reports: &[Report]) {
        for r in reports {
            if !r.verdict.is_pass() {
                self.pass = false;
                let failed: Vec<String> = r.failed_checks().iter().map(|c| format!("{} {}", c.name, c.detail)).collect();
                self.notes.push(format!("{} -> {} [{}]", r.job().label(), r.verdict.word(), failed.join("; ")));
            }
        }
    }

    fn timed<T>(&mut self, what: &str, budget: Duration, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        let t = start.elapsed();
        if t > budget {
            self.pass = false;
        }
        self.notes.push(format!("{what} {:.1}s/{}s", t.as_secs_f64(), budget.as_secs()));
        out
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.pass = false;
            self.notes.push(format!("failed: {}", what.into()));
        }
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn run(jobs: Vec<Job>) -> Vec<Report> {
    run_jobs(&jobs, None)
}

fn c1() -> Line {
    let mut l = Line::new();
    let small = l.timed("z<=4", secs(10), || run((1..=4).map(|z| job(Claim::Lemma34, Params { z: Some(z), ..Params::default() })).collect()));
    l.reports(&small);
    let big = l.timed("z=5", secs(300), || run(vec![job(Claim::Lemma34, Params { z: Some(5), ..Params::default() })]));
    l.reports(&big);
    l
}

fn c2() -> Line {
    let mut l = Line::new();
    let r = run((1..=4).map(|z| job(Claim::AssocWedge, Params { z: Some(z), ..Params::default() })).collect());
    l.reports(&r);
    l
}

fn c3() -> Line {
    let mut l = Line::new();
    let r = l.timed("n<=5", secs(30), || run((1..=5).map(|n| job(Claim::Koszul, Params { n: Some(n), ..Params::default() })).collect()));
    l.reports(&r);
    l
}

fn c4() -> Line {
    let mut l = Line::new();
    let r = l.timed("pmax=10", secs(10), || run(EPS_PAIRS.iter().map(|&e| eps(Claim::Elementary, e, 10)).collect()));
    for rep in &r {
        let complete = rep.degrees.iter().filter(|d| d.complete).count();
        l.require(complete == 10, format!("{} has {complete} complete degrees", rep.job().label()));
    }
    l.reports(&r);
    l
}

fn c5() -> Line {
    let mut l = Line::new();
    let r = l.timed("pmax=7", secs(10), || run(EPS_PAIRS.iter().map(|&e| eps(Claim::PoissonGraded, e, 7)).collect()));
    l.reports(&r);
    l.notes.push("u-factor checked on pair-counted p_n".into());
    l
}

fn c6() -> Line {
    let mut l = Line::new();
    for n in 0..=7 {
        let m = sign_multiplicities(n).expect("within the character table bound");
        let ok = m.iter().all(|(&u, &k)| k == u64::from(u == n.div_ceil(2)));
        l.require(ok, format!("n={n}: {m:?}"));
    }
    l
}

fn c7() -> Line {
    let mut l = Line::new();
    let r = run(EPS_PAIRS.iter().map(|&e| eps(Claim::PbwFiltration, e, 6)).collect());
    l.reports(&r);
    l
}

fn c8() -> Line {
    let mut l = Line::new();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(4).build().expect("thread pool");
    let r = l.timed("4 workers", secs(900), || {
        pool.install(|| {
            let mut jobs = Vec::new();
            for (z, n) in ZN_RANGE {
                for c in [Claim::AAcyclic, Claim::CAcyclic, Claim::Dynkin] {
                    jobs.push(zn(c, z, n, 4));
                }
            }
            run(jobs)
        })
    });
    l.reports(&r);
    l
}

fn c9() -> Line {
    let mut l = Line::new();
    let mut jobs = Vec::new();
    for (z, n) in ZN_RANGE {
        jobs.push(zn(Claim::SigmaSplit, z, n, 4));
        jobs.push(zn(Claim::AEFactorization, z, n, 4));
    }
    l.reports(&run(jobs));
    l
}

fn c10() -> Line {
    let mut l = Line::new();
    let jobs = [(1, 0), (1, 1), (2, 1)]
        .iter()
        .map(|&(z, n)| job(Claim::KunnethC, Params { z: Some(z), big_n: Some(n), q: Some(2), pmax: Some(2), ..Params::default() }))
        .collect();
    l.reports(&run(jobs));
    l
}

fn c11() -> Line {
    let mut l = Line::new();
    let r = run((1..=7).map(|z| zn(Claim::Dims, z, 0, 2)).collect());
    for rep in &r {
        let rows = rep.table.as_deref().unwrap_or_default();
        let z = rep.params.z.unwrap_or(0);
        let la_rows = rows.iter().filter(|r| r.kind == "la_Tz_Tm").count();
        l.require(la_rows == z.min(3), format!("z={z}: {la_rows} la_Tz_Tm rows"));
        l.require(rows.iter().any(|r| r.kind == "lie_multilinear"), format!("z={z}: no lie_multilinear row"));
    }
    l.reports(&r);
    l
}

fn lie(order: &[u32], c: i64, offset: u32) -> LiePoly {
    let letters: Vec<u32> = order.iter().map(|l| l + offset).collect();
    left_normed(&letters).scale(&int(c))
}

fn order(k: u32) -> impl Strategy<Value = Vec<u32>> {
    Just((1..=k).collect::<Vec<u32>>()).prop_shuffle()
}

fn runner(seed: u64) -> TestRunner {
    TestRunner::new(Config { cases: 128, rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..Config::default() })
}

fn c12() -> Line {
    let mut l = Line::new();
    let antisym = runner(0xacce_0001).run(&(order(3), -3i64..=3, order(2), -3i64..=3), |(a, c, b, d)| {
        let (x, y) = (lie(&a, c, 0), lie(&b, d, 3));
        prop_assert_eq!(x.bracket(&y).unwrap(), y.bracket(&x).unwrap().neg());
        Ok(())
    });
    l.require(antisym.is_ok(), format!("bracket antisymmetry {antisym:?}"));
    let jacobi = runner(0xacce_0002).run(&(order(2), order(2), order(2)), |(a, b, c)| {
        let (x, y, z) = (lie(&a, 1, 0), lie(&b, 1, 2), lie(&c, 1, 4));
        let s = x
            .bracket(&y.bracket(&z).unwrap())
            .unwrap()
            .add(&y.bracket(&z.bracket(&x).unwrap()).unwrap())
            .unwrap()
            .add(&z.bracket(&x.bracket(&y).unwrap()).unwrap())
            .unwrap();
        prop_assert!(s.is_zero());
        Ok(())
    });
    l.require(jacobi.is_ok(), format!("Jacobi {jacobi:?}"));
    let strip = runner(0xacce_0003).run(&(order(6), -3i64..=3), |(a, c)| {
        let x = lie(&a, c, 0);
        prop_assert_eq!(x.expand().strip_to_lie(1).unwrap(), x);
        Ok(())
    });
    l.require(strip.is_ok(), format!("strip after expand {strip:?}"));
    let perm = |n: usize| Just((1..=n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Permutation::from_one_line(&v).unwrap());
    let action = runner(0xacce_0004).run(&(order(5), perm(5), perm(5)), |(a, s, t)| {
        let x = lie(&a, 1, 0);
        let letters: Vec<u32> = (1..=5).collect();
        let (ms, mt) = (s.letter_map(&letters), t.letter_map(&letters));
        let composed = letters.iter().map(|&v| (v, mt[&ms[&v]])).collect();
        prop_assert_eq!(x.relabel(&ms).unwrap().relabel(&mt).unwrap(), x.relabel(&composed).unwrap());
        Ok(())
    });
    l.require(action.is_ok(), format!("relabel action {action:?}"));
    let windows = runner(0xacce_0005).run(&(1usize..=3, 0usize..=2, 0usize..=3), |(z, n, pmin)| {
        let pmax = (pmin + 2).min(9 - z - n);
        prop_assume!(pmin <= pmax);
        let w = PWindow::new(pmin, pmax).unwrap();
        prop_assert!(build_a(z, n, w).unwrap().check_complex().is_ok());
        prop_assert!(build_c(z, n, 1, w).unwrap().check_complex().is_ok());
        Ok(())
    });
    l.require(windows.is_ok(), format!("d∘d = 0 {windows:?}"));

    let dir = tempfile::tempdir().expect("temp dir");
    let cache = Cache::new(dir.path()).expect("cache dir");
    let sample = vec![
        job(Claim::Lemma34, Params { z: Some(3), ..Params::default() }),
        eps(Claim::Elementary, (0, 1), 6),
        zn(Claim::SigmaSplit, 2, 1, 3),
        zn(Claim::Dims, 4, 1, 2),
    ];
    for j in &sample {
        let cold = run_job(j, Some(&cache));
        let warm = run_job(j, Some(&cache));
        let fresh = run_job(j, None);
        let a = serde_json::to_string(&cold.deterministic()).unwrap();
        let b = serde_json::to_string(&warm.deterministic()).unwrap();
        let c = serde_json::to_string(&fresh.deterministic()).unwrap();
        l.require(a == b && a == c, format!("report determinism for {}", j.label()));
    }
    l
}

fn main() {
    let criteria: [(&str, fn() -> Line); 12] = [
        ("Chevalley complex: Betti 0 for z=2..5, H_0=1 for z=1", c1),
        ("associative wedge complex isomorphic to Chevalley, z<=4", c2),
        ("Koszul complex acyclic in positive degrees, n<=5", c3),
        ("elementary complexes to pmax=10, lambda_p lambda_(p+1)=0", c4),
        ("graded formulas for gr d on p_n, m,u<=3", c5),
        ("grading support of P^n, n<=7", c6),
        ("PBW filtration and graded symbol, p'<=5", c7),
        ("A and C acyclic, Dynkin bijective chain map, p'<=4", c8),
        ("sigma decomposition and A_sigma as tensor of elementary complexes", c9),
        ("Kunneth for C_{z,N,2}, p'<=2", c10),
        ("dimension formulas against constructions", c11),
        ("property suites with fixed seeds and report determinism", c12),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let line = f();
        if !line.pass {
            failed += 1;
        }
        let notes = if line.notes.is_empty() { String::new() } else { format!("  ({})", line.notes.join(", ")) };
        println!("criterion {:>2}: {}  {name}{notes}", i + 1, if line.pass { "PASS" } else { "FAIL" });
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
