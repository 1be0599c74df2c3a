//! One runner per claim. Each returns the per-degree homology of the main
//! complex involved and a list of named checks.

use prop_homology_core::complexes::*;
use prop_homology_core::exactlin::{check_chain_map, homology, ComplexWindow, DegreeStats, HomologyProfile};
use prop_homology_core::rational::int;
use prop_homology_core::symgrp::{factorial, ordered_set_partitions, parse_cycles};
use prop_homology_core::{Rational, Result};

use crate::job::{Claim, Job, Params};
use crate::report::{Check, DimRow, Outcome};

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn window(p: &Params) -> Result<PWindow> {
    PWindow::new(p.pmin(), p.pmax())
}

fn outcome(h: HomologyProfile, checks: Vec<Check>) -> Outcome {
    Outcome { degrees: h.degrees, checks, table: None }
}

/// Betti 0 at every complete degree, except `H^0 = 1` when `unit_at_zero`.
fn betti_check(h: &HomologyProfile, unit_at_zero: bool) -> Check {
    let bad: Vec<String> = h
        .complete_degrees()
        .filter(|d| d.betti != usize::from(unit_at_zero && d.p == 0))
        .map(|d| format!("H^{}={}", d.p, d.betti))
        .collect();
    let name = if unit_at_zero { "betti_unit_at_0" } else { "acyclic" };
    Check::with(name, bad.is_empty(), bad.join(" "))
}

fn lemma34(p: &Params) -> Result<Outcome> {
    let z = p.z();
    let h = homology(&build_chevalley_wedge(z)?)?;
    let complete = h.degrees.iter().all(|d| d.complete);
    let checks = vec![Check::new("all_degrees_complete", complete), betti_check(&h, z == 1)];
    Ok(outcome(h, checks))
}

fn assoc_wedge(p: &Params) -> Result<Outcome> {
    let z = p.z();
    let c = build_chevalley_wedge(z)?;
    let a = build_assoc_wedge(z)?;
    let iso = assoc_wedge_iso(z)?;
    let bij = iso.iter().all(|m| m.rows() == m.cols() && m.rank() == m.rows());
    let chain = check_chain_map(&iso, &c, &a)?;
    let hc = homology(&c)?;
    let ha = homology(&a)?;
    let checks = vec![
        Check::new("iso_bijective", bij),
        Check::new("iso_chain_map", chain),
        Check::new("betti_profiles_equal", ha.degrees == hc.degrees),
        betti_check(&ha, z == 1),
    ];
    Ok(outcome(ha, checks))
}

fn koszul(p: &Params) -> Result<Outcome> {
    let n = p.n.unwrap_or(0);
    let w = build_koszul_multilinear(n)?;
    let dims_ok = w.dims().iter().enumerate().all(|(k, &d)| d == binomial(n, k));
    let h = homology(&w)?;
    let bad: Vec<String> = h.degrees.iter().filter(|d| d.p > 0 && d.betti != 0).map(|d| format!("H_{}={}", d.p, d.betti)).collect();
    let checks = vec![
        Check::new("dims_binomial", dims_ok),
        Check::with("positive_degrees_vanish", bad.is_empty(), bad.join(" ")),
        Check::with("degree_0", h.betti(0) == Some(usize::from(n == 0)), format!("H_0={:?}", h.betti(0))),
    ];
    Ok(outcome(h, checks))
}

fn elementary_window(p: &Params) -> Result<(ElementaryScalars, ComplexWindow)> {
    let s = build_elementary(p.eps(), p.epsp(), p.pmax() - 1)?;
    let w = s.window(p.pmax())?.truncate(p.pmin() as i64, p.pmax() as i64);
    Ok((s, w))
}

fn elementary(p: &Params) -> Result<Outcome> {
    let (s, w) = elementary_window(p)?;
    let h = homology(&w)?;
    let lambdas: Vec<String> = s.lambdas.iter().map(|l| l.to_string()).collect();
    let checks = vec![
        Check::with("lambda_products_zero", s.squares_to_zero(), lambdas.join(",")),
        betti_check(&h, p.eps() == p.epsp()),
    ];
    Ok(outcome(h, checks))
}

fn poisson_graded(p: &Params) -> Result<Outcome> {
    let (eps, epsp) = (p.eps(), p.epsp());
    let g = build_poisson_graded(eps, epsp, p.pmax())?;
    let mut checks = vec![Check::with(
        "grading_support",
        g.grading_lemma_holds(),
        format!("n <= {}", p.pmax().min(GRADING_CHECK_MAX)),
    )];
    let expect = |name: String, got: &Rational, want: Rational| {
        Check::with(name, *got == want, format!("got {got}, expected {want}"))
    };
    for n in p.pmin()..p.pmax() {
        if eps != epsp {
            let s = if eps == 0 { 1 } else { -1 };
            let want = if n % 2 == 0 { int(s) } else { int(0) };
            checks.push(expect(format!("gr_d(p_{n})"), &g.scalars[n], want));
        } else {
            let s = if eps == 0 { 1 } else { -1 };
            if n % 2 == 1 {
                let u = n.div_ceil(2);
                checks.push(expect(format!("gr_d(p_{n})"), &g.scalars[n], int(s)));
                checks.push(expect(format!("gr_d(p_{n}) pair-counted"), &g.pair_scalars[n], int(s * u as i64)));
            } else {
                checks.push(expect(format!("gr_d(p_{n})"), &g.scalars[n], int(0)));
            }
        }
    }
    let h = homology(&g.window.truncate(p.pmin() as i64, p.pmax() as i64))?;
    checks.push(betti_check(&h, eps == epsp));
    Ok(outcome(h, checks))
}

fn pbw_filtration(p: &Params) -> Result<Outcome> {
    let r = pbw_filtration_check(p.eps(), p.epsp(), p.pmax())?;
    let mut checks = Vec::new();
    for d in r.degrees.iter().filter(|d| d.p >= p.pmin()) {
        let detail = format!("u={:?} image={:?}", d.u, d.image_degree);
        checks.push(Check::with(format!("filtration(e_{})", d.p), d.filtration_ok, detail));
        checks.push(Check::new(format!("symbol(e_{})", d.p), d.symbol_ok));
    }
    let (_, w) = elementary_window(p)?;
    Ok(outcome(homology(&w)?, checks))
}

fn dynkin(p: &Params) -> Result<Outcome> {
    let (z, n, w) = (p.z(), p.big_n(), window(p)?);
    let r = dynkin_compare(z, n, w)?;
    let mut checks = vec![Check::new("chain_map", r.chain_map)];
    for (i, b) in r.bijective.iter().enumerate() {
        checks.push(Check::new(format!("bijective_at_{}", p.pmin() + i), *b));
    }
    let ha = homology(&build_a(z, n, w)?)?;
    let hc = homology(&build_c(z, n, 1, w)?)?;
    checks.push(Check::new("betti_profiles_equal", ha.degrees == hc.degrees));
    Ok(outcome(hc, checks))
}

fn sigma_split_claim(p: &Params) -> Result<Outcome> {
    let (z, n, w) = (p.z(), p.big_n(), window(p)?);
    let total = build_a(z, n, w)?;
    let parts = sigma_split(z, n, w)?;
    let mut sum = vec![0; total.len()];
    let mut checks = vec![Check::with(
        "block_count",
        parts.len() as u128 == factorial(z + n - 1),
        format!("{} blocks", parts.len()),
    )];
    for (s, part) in &parts {
        let dims = part.dims();
        for (i, d) in dims.iter().enumerate() {
            sum[i] += d;
        }
        let stars = dims.iter().enumerate().all(|(i, &d)| d == binomial(p.pmin() + i + z + n - 1, z + n - 1));
        checks.push(Check::new(format!("stars_and_bars {s}"), stars));
        let h = homology(part)?;
        checks.push(Check::new(format!("acyclic {s}"), h.is_acyclic()));
    }
    checks.push(Check::with("dims_sum", sum == total.dims(), format!("{:?}", total.dims())));
    Ok(outcome(homology(&total)?, checks))
}

fn a_e_factorization(p: &Params) -> Result<Outcome> {
    let (z, n, w) = (p.z(), p.big_n(), window(p)?);
    let sigmas = match &p.sigma {
        Some(s) => vec![parse_cycles(s, z + n - 1)?],
        None => sigma_orders(z, n),
    };
    let mut checks = Vec::new();
    for s in &sigmas {
        let bits: String = epsilon_sequence(s, z, n)?.bits().iter().map(|b| b.to_string()).collect();
        let ok = verify_a_sigma_factorization(z, n, s, w)?;
        checks.push(Check::with(format!("factorization {s}"), ok, format!("epsilon={bits}")));
    }
    let main = match &p.sigma {
        Some(_) => build_a_sigma(z, n, &sigmas[0], w)?,
        None => build_a(z, n, w)?,
    };
    let h = homology(&main)?;
    checks.push(betti_check(&h, false));
    Ok(outcome(h, checks))
}

fn kunneth(p: &Params) -> Result<Outcome> {
    let (z, n, q, w) = (p.z(), p.big_n(), p.q(), window(p)?);
    let r = verify_kunneth_c(z, n, q, w)?;
    let checks = vec![
        Check::with("dims_equal", r.lhs_dims == r.rhs_dims, format!("{:?} vs {:?}", r.lhs_dims, r.rhs_dims)),
        Check::with("betti_equal", r.lhs_betti == r.rhs_betti, format!("{:?} vs {:?}", r.lhs_betti, r.rhs_betti)),
    ];
    Ok(outcome(homology(&build_c(z, n, q, w)?)?, checks))
}

fn c_acyclic(p: &Params) -> Result<Outcome> {
    let h = homology(&build_c(p.z(), p.big_n(), p.q(), window(p)?)?)?;
    let checks = vec![betti_check(&h, false)];
    Ok(outcome(h, checks))
}

fn a_acyclic(p: &Params) -> Result<Outcome> {
    let h = homology(&build_a(p.z(), p.big_n(), window(p)?)?)?;
    let checks = vec![betti_check(&h, false)];
    Ok(outcome(h, checks))
}

fn dims(p: &Params) -> Result<Outcome> {
    let (z, n, q, w) = (p.z(), p.big_n(), p.q(), window(p)?);
    let mut rows = Vec::new();
    let wedge = build_chevalley_wedge(z)?;
    rows.push(DimRow {
        kind: DimKind::LieMultilinear.to_string(),
        params: vec![z],
        predicted: dim_predict("lie_multilinear", &[z])?,
        constructed: wedge.dims()[0] as u128,
    });
    let letters: Vec<u32> = (1..=z as u32).collect();
    for m in 1..=z.min(3) {
        let enumerated: u128 = ordered_set_partitions(&letters, m, false)
            .iter()
            .map(|part| part.sizes().iter().map(|&s| factorial(s - 1)).product::<u128>())
            .sum();
        rows.push(DimRow {
            kind: DimKind::LaTzTm.to_string(),
            params: vec![z, m],
            predicted: dim_predict("la_Tz_Tm", &[z, m])?,
            constructed: enumerated,
        });
    }
    let a = build_a(z, n, w)?;
    let c = build_c(z, n, q, w)?;
    for (i, pp) in w.degrees().enumerate() {
        rows.push(DimRow {
            kind: DimKind::ADegree.to_string(),
            params: vec![z, n, pp],
            predicted: dim_predict("A_degree", &[z, n, pp])?,
            constructed: a.dims()[i] as u128,
        });
        rows.push(DimRow {
            kind: DimKind::CDegree.to_string(),
            params: vec![z, n, q, pp],
            predicted: dim_predict("C_degree", &[z, n, q, pp])?,
            constructed: c.dims()[i] as u128,
        });
    }
    let checks = rows
        .iter()
        .map(|r| {
            let params: Vec<String> = r.params.iter().map(|v| v.to_string()).collect();
            Check::with(
                format!("{}({})", r.kind, params.join(",")),
                r.predicted == r.constructed,
                format!("{} vs {}", r.predicted, r.constructed),
            )
        })
        .collect();
    Ok(Outcome { degrees: Vec::new(), checks, table: Some(rows) })
}

/// Runs a validated job. Library errors become a failing `error` check.
pub fn run_claim(job: &Job) -> Outcome {
    let p = &job.params;
    let r = match job.claim {
        Claim::Lemma34 => lemma34(p),
        Claim::AssocWedge => assoc_wedge(p),
        Claim::Koszul => koszul(p),
        Claim::Elementary => elementary(p),
        Claim::PoissonGraded => poisson_graded(p),
        Claim::PbwFiltration => pbw_filtration(p),
        Claim::Dynkin => dynkin(p),
        Claim::SigmaSplit => sigma_split_claim(p),
        Claim::AEFactorization => a_e_factorization(p),
        Claim::KunnethC => kunneth(p),
        Claim::CAcyclic => c_acyclic(p),
        Claim::AAcyclic => a_acyclic(p),
        Claim::Dims => dims(p),
    };
    r.unwrap_or_else(|e| Outcome {
        degrees: Vec::<DegreeStats>::new(),
        checks: vec![Check::with("error", false, e.to_string())],
        table: None,
    })
}
