//! Fedder and Glassbrenner criteria, the hypersurface splitting-number
//! formula, and a combined classification of the computed evidence.

use std::fmt;
use std::sync::Arc;

use crate::artinian::ArtinianBasis;
use crate::error::{Error, Result};
use crate::ideal::{factored_power, Ideal, DEFAULT_TERM_BUDGET};
use crate::invariants::{
    fsignature_sequence, EvidenceConfig, FSignatureReport, IrreducibleFamily, RingPresentation, SplittingPolicy,
};
use crate::monomial::MonomialOrder;
use crate::poly::{check_ring, Poly, PolyRing};

fn outside_bracket_maximal(f: &Poly, q: u64) -> bool {
    f.terms()
        .iter()
        .any(|(m, _)| m.exponents().iter().all(|&a| (a as u64) < q))
}

/// Fedder's criterion for F-purity of `R = S/I` at the origin:
/// `(I^[p] : I) ⊄ m^[p]`, or `f^{p-1} ∉ m^[p]` when `I = (f)`.
pub fn fedder_fpure(ring: &RingPresentation) -> Result<bool> {
    let p = ring.characteristic() as u64;
    let rel = ring.relations();
    match rel.generators() {
        [] => Ok(true),
        [f] => Ok(outside_bracket_maximal(&f.pow(p - 1, DEFAULT_TERM_BUDGET)?, p)),
        _ => {
            let colon = rel.bracket_power(p)?.colon_ideal(rel)?;
            Ok(colon.generators().iter().any(|g| outside_bracket_maximal(g, p)))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SfrOutcome {
    /// `c ∉ (m^[q] : f^{q-1})`, so `R` is strongly F-regular.
    Witness { q: u64 },
    /// No witness up to `p^{e_max}`. Says nothing either way.
    Unknown { e_max: u32 },
}

impl fmt::Display for SfrOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SfrOutcome::Witness { q } => write!(f, "witness at q = {q}"),
            SfrOutcome::Unknown { e_max } => write!(f, "unknown up to e = {e_max}"),
        }
    }
}

/// Glassbrenner's test for a hypersurface `S/(f)` with test element `c`:
/// strongly F-regular as soon as `c ∉ (m^[q] : f^{q-1})` for some `q`.
/// `c` must be nonzero in `R` and `R_c` is assumed regular.
pub fn glassbrenner_sfr(ring: &RingPresentation, c: &Poly, e_max: u32, term_budget: usize) -> Result<SfrOutcome> {
    let f = ring
        .hypersurface()
        .ok_or_else(|| Error::Usage("strong F-regularity test needs a hypersurface".into()))?;
    check_ring(ring.ring(), c.ring())?;
    if c.is_zero() || ring.relations().member(c)? {
        return Err(Error::Usage(format!("test element `{c}` is zero in R")));
    }
    for e in 1..=e_max {
        let q = ring.q(e)?;
        let colon = bracket_maximal(ring.ring(), q)?.colon_by_factored_power(f, q - 1, term_budget)?;
        if !colon.member(c)? {
            return Ok(SfrOutcome::Witness { q });
        }
    }
    Ok(SfrOutcome::Unknown { e_max })
}

fn bracket_maximal(ring: &Arc<PolyRing>, q: u64) -> Result<Ideal> {
    Ideal::maximal(ring).bracket_power(q)
}

/// `a_q(S/(f)) = λ(S/(m^[q] : f^{q-1}))`, computed in `S` without any
/// system of parameters.
pub fn hypersurface_splitting_oracle(f: &Poly, e: u32, term_budget: usize) -> Result<u64> {
    let ring = f.ring();
    let q = (ring.characteristic() as u64)
        .checked_pow(e)
        .ok_or_else(|| Error::Usage(format!("p^{e} overflows")))?;
    if f.is_zero() {
        return Err(Error::Usage("hypersurface equation is zero".into()));
    }
    let m = bracket_maximal(ring, q)?;
    let basis = ArtinianBasis::of_ideal(&m, MonomialOrder::GrevLex)?;
    let factors = factored_power(f, q - 1, term_budget)?;
    Ok(basis.colon(&factors)?.length() as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SfrStatus {
    Witness(u64),
    Unknown,
    NotAttempted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Consistent,
    Inconsistent(Vec<String>),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Consistent => f.write_str("CONSISTENT"),
            Verdict::Inconsistent(_) => f.write_str("INCONSISTENT"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evidence {
    pub fpure: bool,
    pub sfr: SfrStatus,
    pub report: Option<FSignatureReport>,
    pub s_positive_evidence: bool,
    pub sdim: Option<i64>,
    pub verdict: Verdict,
}

/// Runs the criteria that apply and checks that they agree:
/// an F-regularity witness implies `s > 0` evidence, `s > 0` evidence implies
/// F-purity, and a non-F-pure ring has `a_q = 0` throughout.
pub fn classify(
    ring: &RingPresentation,
    family: Option<&IrreducibleFamily>,
    c: Option<&Poly>,
    e_max: u32,
    policy: &SplittingPolicy,
    cfg: &EvidenceConfig,
) -> Result<Evidence> {
    let fpure = fedder_fpure(ring)?;
    let sfr = match (c, ring.hypersurface()) {
        (Some(c), Some(_)) => match glassbrenner_sfr(ring, c, e_max, policy.term_budget)? {
            SfrOutcome::Witness { q } => SfrStatus::Witness(q),
            SfrOutcome::Unknown { .. } => SfrStatus::Unknown,
        },
        _ => SfrStatus::NotAttempted,
    };
    let report = family
        .map(|fam| fsignature_sequence(ring, fam, e_max, policy, cfg))
        .transpose()?;
    let s_positive_evidence = report.as_ref().is_some_and(|r| r.s_positive_evidence);
    let sdim = report.as_ref().map(|r| r.sdim.value);

    let mut problems = Vec::new();
    if let (SfrStatus::Witness(q), Some(_)) = (sfr, &report) {
        if !s_positive_evidence {
            problems.push(format!("F-regularity witness at q = {q} but no s > 0 evidence"));
        }
    }
    if s_positive_evidence && !fpure {
        problems.push("s > 0 evidence on a ring that fails Fedder's criterion".into());
    }
    if let Some(r) = &report {
        if !fpure {
            for row in r.rows.iter().filter(|row| row.a_q != 0) {
                problems.push(format!("not F-pure but a_q = {} at q = {}", row.a_q, row.q));
            }
        }
    }
    let verdict = if problems.is_empty() {
        Verdict::Consistent
    } else {
        Verdict::Inconsistent(problems)
    };
    Ok(Evidence {
        fpure,
        sfr,
        report,
        s_positive_evidence,
        sdim,
        verdict,
    })
}
