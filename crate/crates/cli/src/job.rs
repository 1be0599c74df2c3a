//! Claim ids, parameter records and their validation.

use std::fmt;

use serde::{Deserialize, Serialize};

use prop_homology_core::symgrp::parse_cycles;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Claim {
    #[serde(rename = "lemma34")]
    Lemma34,
    #[serde(rename = "assoc-wedge")]
    AssocWedge,
    #[serde(rename = "koszul")]
    Koszul,
    #[serde(rename = "elementary")]
    Elementary,
    #[serde(rename = "poisson-graded")]
    PoissonGraded,
    #[serde(rename = "pbw-filtration")]
    PbwFiltration,
    #[serde(rename = "dynkin")]
    Dynkin,
    #[serde(rename = "sigma-split")]
    SigmaSplit,
    #[serde(rename = "a-e-factorization")]
    AEFactorization,
    #[serde(rename = "kunneth-c")]
    KunnethC,
    #[serde(rename = "c-acyclic")]
    CAcyclic,
    #[serde(rename = "a-acyclic")]
    AAcyclic,
    #[serde(rename = "dims")]
    Dims,
}

impl Claim {
    pub const ALL: [Claim; 13] = [
        Claim::Lemma34,
        Claim::AssocWedge,
        Claim::Koszul,
        Claim::Elementary,
        Claim::PoissonGraded,
        Claim::PbwFiltration,
        Claim::Dynkin,
        Claim::SigmaSplit,
        Claim::AEFactorization,
        Claim::KunnethC,
        Claim::CAcyclic,
        Claim::AAcyclic,
        Claim::Dims,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::Lemma34 => "lemma34",
            Claim::AssocWedge => "assoc-wedge",
            Claim::Koszul => "koszul",
            Claim::Elementary => "elementary",
            Claim::PoissonGraded => "poisson-graded",
            Claim::PbwFiltration => "pbw-filtration",
            Claim::Dynkin => "dynkin",
            Claim::SigmaSplit => "sigma-split",
            Claim::AEFactorization => "a-e-factorization",
            Claim::KunnethC => "kunneth-c",
            Claim::CAcyclic => "c-acyclic",
            Claim::AAcyclic => "a-acyclic",
            Claim::Dims => "dims",
        }
    }

    /// Flags the claim reads, in the order they are echoed.
    fn fields(self) -> &'static [Field] {
        use Field::*;
        match self {
            Claim::Lemma34 | Claim::AssocWedge => &[Z],
            Claim::Koszul => &[N],
            Claim::Elementary | Claim::PoissonGraded | Claim::PbwFiltration => &[Eps, Epsp, Pmin, Pmax],
            Claim::Dynkin | Claim::SigmaSplit | Claim::AAcyclic => &[Z, BigN, Pmin, Pmax],
            Claim::AEFactorization => &[Z, BigN, Pmin, Pmax, Sigma],
            Claim::KunnethC | Claim::CAcyclic | Claim::Dims => &[Z, BigN, Q, Pmin, Pmax],
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Field {
    Z,
    BigN,
    Q,
    Eps,
    Epsp,
    Pmin,
    Pmax,
    Sigma,
    N,
}

impl Field {
    fn flag(self) -> &'static str {
        match self {
            Field::Z => "--z",
            Field::BigN => "--N",
            Field::Q => "--q",
            Field::Eps => "--eps",
            Field::Epsp => "--epsp",
            Field::Pmin => "--pmin",
            Field::Pmax => "--pmax",
            Field::Sigma => "--sigma",
            Field::N => "--n",
        }
    }
}

/// Parameter record. Only the fields a claim reads are set after
/// [`Job::new`], so the record doubles as the echo in reports.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<usize>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub big_n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsp: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pmin: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pmax: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
}

impl Params {
    fn is_set(&self, f: Field) -> bool {
        match f {
            Field::Z => self.z.is_some(),
            Field::BigN => self.big_n.is_some(),
            Field::Q => self.q.is_some(),
            Field::Eps => self.eps.is_some(),
            Field::Epsp => self.epsp.is_some(),
            Field::Pmin => self.pmin.is_some(),
            Field::Pmax => self.pmax.is_some(),
            Field::Sigma => self.sigma.is_some(),
            Field::N => self.n.is_some(),
        }
    }

    pub fn z(&self) -> usize {
        self.z.unwrap_or(0)
    }

    pub fn big_n(&self) -> usize {
        self.big_n.unwrap_or(0)
    }

    pub fn q(&self) -> usize {
        self.q.unwrap_or(1)
    }

    pub fn eps(&self) -> u8 {
        self.eps.unwrap_or(0)
    }

    pub fn epsp(&self) -> u8 {
        self.epsp.unwrap_or(0)
    }

    pub fn pmin(&self) -> usize {
        self.pmin.unwrap_or(0)
    }

    pub fn pmax(&self) -> usize {
        self.pmax.unwrap_or(0)
    }
}

/// Size caps. Every cap is stated in the refusal message when exceeded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// `z + N + pmax + q` for the A/C families (`q = 1` for A).
    pub total: usize,
    /// `z` for the Chevalley and associative wedge complexes.
    pub wedge_z: usize,
    /// Number of variables of the Koszul complex.
    pub koszul_n: usize,
    /// `pmax` for the elementary complexes.
    pub elementary_pmax: usize,
    /// `pmax` for the graded Poisson complexes.
    pub poisson_pmax: usize,
    /// `pmax` for the PBW filtration check.
    pub pbw_pmax: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { total: 10, wedge_z: 7, koszul_n: 10, elementary_pmax: 10, poisson_pmax: 8, pbw_pmax: 6 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JobError {
    Missing { claim: Claim, flag: &'static str },
    Unused { claim: Claim, flag: &'static str },
    Invalid(String),
    OverCap { what: String, value: usize, cap: usize },
}

impl fmt::Display for JobError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JobError::Missing { claim, flag } => write!(f, "{claim} requires {flag}"),
            JobError::Unused { claim, flag } => write!(f, "{flag} is not a parameter of {claim}"),
            JobError::Invalid(s) => f.write_str(s),
            JobError::OverCap { what, value, cap } => write!(f, "refused: {what} = {value} exceeds the cap {cap}"),
        }
    }
}

impl std::error::Error for JobError {}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Job {
    pub claim: Claim,
    pub params: Params,
}

fn bit(v: Option<u8>, flag: &str) -> Result<(), JobError> {
    match v {
        Some(b) if b > 1 => Err(JobError::Invalid(format!("{flag} must be 0 or 1, got {b}"))),
        _ => Ok(()),
    }
}

fn cap(what: impl Into<String>, value: usize, cap: usize) -> Result<(), JobError> {
    if value > cap {
        return Err(JobError::OverCap { what: what.into(), value, cap });
    }
    Ok(())
}

impl Job {
    /// Validates `params` for `claim`, fills defaults and normalizes the
    /// permutation notation.
    pub fn new(claim: Claim, params: Params, caps: &Caps) -> Result<Job, JobError> {
        let fields = claim.fields();
        for f in [
            Field::Z,
            Field::BigN,
            Field::Q,
            Field::Eps,
            Field::Epsp,
            Field::Pmin,
            Field::Pmax,
            Field::Sigma,
            Field::N,
        ] {
            if params.is_set(f) && !fields.contains(&f) {
                return Err(JobError::Unused { claim, flag: f.flag() });
            }
        }
        let mut p = params;
        let require = |set: bool, f: Field| if set { Ok(()) } else { Err(JobError::Missing { claim, flag: f.flag() }) };
        if fields.contains(&Field::Z) {
            require(p.z.is_some(), Field::Z)?;
            if p.z == Some(0) {
                return Err(JobError::Invalid("--z must be at least 1".into()));
            }
        }
        if fields.contains(&Field::BigN) {
            p.big_n.get_or_insert(0);
        }
        if fields.contains(&Field::Q) {
            let q = *p.q.get_or_insert(if claim == Claim::KunnethC { 2 } else { 1 });
            if q == 0 {
                return Err(JobError::Invalid("--q must be at least 1".into()));
            }
            if claim == Claim::KunnethC && q < 2 {
                return Err(JobError::Invalid("kunneth-c needs --q of at least 2".into()));
            }
            cap("q", q, 3)?;
        }
        if fields.contains(&Field::Eps) {
            require(p.eps.is_some(), Field::Eps)?;
            require(p.epsp.is_some(), Field::Epsp)?;
            bit(p.eps, "--eps")?;
            bit(p.epsp, "--epsp")?;
        }
        if fields.contains(&Field::Pmax) {
            require(p.pmax.is_some(), Field::Pmax)?;
            let pmin = *p.pmin.get_or_insert(0);
            if pmin > p.pmax() {
                return Err(JobError::Invalid(format!("--pmin {pmin} exceeds --pmax {}", p.pmax())));
            }
        }
        if fields.contains(&Field::N) {
            require(p.n.is_some(), Field::N)?;
        }
        match claim {
            Claim::Lemma34 | Claim::AssocWedge => cap("z", p.z(), caps.wedge_z)?,
            Claim::Koszul => cap("n", p.n.unwrap_or(0), caps.koszul_n)?,
            Claim::Elementary | Claim::PoissonGraded | Claim::PbwFiltration => {
                if p.pmax() == 0 {
                    return Err(JobError::Invalid("--pmax must be at least 1".into()));
                }
                let c = match claim {
                    Claim::Elementary => caps.elementary_pmax,
                    Claim::PoissonGraded => caps.poisson_pmax,
                    _ => caps.pbw_pmax,
                };
                cap("pmax", p.pmax(), c)?;
            }
            _ => {
                let q = if fields.contains(&Field::Q) { p.q() } else { 1 };
                cap("z + N + pmax + q", p.z() + p.big_n() + p.pmax() + q, caps.total)?;
                if claim == Claim::Dims {
                    cap("z", p.z(), caps.wedge_z)?;
                }
            }
        }
        if let Some(s) = &p.sigma {
            let n = p.z() + p.big_n();
            let perm = parse_cycles(s, n - 1).map_err(|e| JobError::Invalid(format!("--sigma: {e}")))?;
            p.sigma = Some(perm.to_string());
        }
        Ok(Job { claim, params: p })
    }

    /// One-line rendering of the parameters, e.g. `a-acyclic z=2 N=1 pmin=0 pmax=4`.
    pub fn label(&self) -> String {
        let p = &self.params;
        let mut parts = vec![self.claim.id().to_string()];
        for f in self.claim.fields() {
            let v = match f {
                Field::Z => p.z.map(|v| v.to_string()),
                Field::BigN => p.big_n.map(|v| v.to_string()),
                Field::Q => p.q.map(|v| v.to_string()),
                Field::Eps => p.eps.map(|v| v.to_string()),
                Field::Epsp => p.epsp.map(|v| v.to_string()),
                Field::Pmin => p.pmin.map(|v| v.to_string()),
                Field::Pmax => p.pmax.map(|v| v.to_string()),
                Field::Sigma => p.sigma.clone(),
                Field::N => p.n.map(|v| v.to_string()),
            };
            if let Some(v) = v {
                parts.push(format!("{}={v}", &f.flag()[2..]));
            }
        }
        parts.join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(z: usize, pmax: usize) -> Params {
        Params { z: Some(z), pmax: Some(pmax), ..Params::default() }
    }

    #[test]
    fn defaults_are_filled() {
        let j = Job::new(Claim::AAcyclic, params(2, 3), &Caps::default()).unwrap();
        assert_eq!(j.params.big_n, Some(0));
        assert_eq!(j.params.pmin, Some(0));
        let j = Job::new(Claim::KunnethC, params(1, 2), &Caps::default()).unwrap();
        assert_eq!(j.params.q, Some(2));
    }

    #[test]
    fn caps_and_flags() {
        let caps = Caps::default();
        assert!(matches!(Job::new(Claim::AAcyclic, params(5, 6), &caps), Err(JobError::OverCap { cap: 10, .. })));
        let p = Params { q: Some(1), ..params(1, 1) };
        assert!(matches!(Job::new(Claim::AAcyclic, p, &caps), Err(JobError::Unused { flag: "--q", .. })));
        assert!(matches!(Job::new(Claim::Lemma34, Params::default(), &caps), Err(JobError::Missing { flag: "--z", .. })));
        let p = Params { eps: Some(2), epsp: Some(0), pmax: Some(3), ..Params::default() };
        assert!(matches!(Job::new(Claim::Elementary, p, &caps), Err(JobError::Invalid(_))));
    }

    #[test]
    fn sigma_is_normalized() {
        let p = Params { big_n: Some(3), sigma: Some("(1,3)".into()), ..params(1, 2) };
        let j = Job::new(Claim::AEFactorization, p, &Caps::default()).unwrap();
        assert_eq!(j.params.sigma.as_deref(), Some("(1 3)"));
        assert_eq!(j.label(), "a-e-factorization z=1 N=3 pmin=0 pmax=2 sigma=(1 3)");
    }

    #[test]
    fn claim_ids_match_serde() {
        for c in Claim::ALL {
            assert_eq!(serde_json::to_value(c).unwrap(), serde_json::Value::String(c.id().into()));
        }
    }
}
