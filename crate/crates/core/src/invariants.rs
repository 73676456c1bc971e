//! Frobenius splitting numbers and the invariants built from them.
//!
//! Rings are graded quotients `R = S/I` of `S = F_p[x_1..x_n]`, treated as
//! local at the homogeneous maximal ideal `m`. For a Gorenstein `R` with a
//! system of parameters `x_1..x_d` and socle representative `u_1` of
//! `R/(x_1..x_d)`, the ideals `I_t = (x_1^t, .., x_d^t)` with socle
//! representatives `u_t = (x_1⋯x_d)^{t-1} u_1` present the injective hull of
//! the residue field as a direct limit, and for `t` large enough
//!
//! ```text
//! a_q / q^α = λ(R/I_t^[q]) - λ(R/(I_t, u_t)^[q]) = λ(R/(I_t^[q] : u_t^q)).
//! ```
//!
//! The splitting number `a_q` is the number of free summands of `R^{1/q}`.

use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::sync::Arc;

use num_bigint::BigUint;
use num_rational::Ratio;
use rayon::prelude::*;

use crate::artinian::{self, ArtinianBasis, ColonQuotient};
use crate::error::{Error, Result};
use crate::ideal::{factored_power, Ideal, DEFAULT_TERM_BUDGET};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{check_ring, Poly, PolyRing};

struct RingInner {
    ring: Arc<PolyRing>,
    relations: Ideal,
    dim: usize,
    alpha: u32,
    gorenstein_checked: AtomicBool,
}

/// `R = S/I` with its Krull dimension and the residue-field offset `α`.
#[derive(Clone)]
pub struct RingPresentation {
    inner: Arc<RingInner>,
}

impl fmt::Debug for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/{:?} (d = {}, α = {})", self.inner.ring, self.inner.relations, self.inner.dim, self.inner.alpha)
    }
}

impl RingPresentation {
    /// Validates relations and computes the dimension. `alpha` stays a
    /// formal parameter; over `F_p` with the standard grading it is 0.
    pub fn new(ring: &Arc<PolyRing>, relations: Vec<Poly>, declared_dim: Option<i64>, alpha: u32) -> Result<Self> {
        for r in &relations {
            check_ring(ring, r.ring())?;
            if r.terms().iter().any(|(m, _)| m.is_one()) {
                return Err(Error::InvalidRing(format!(
                    "relation `{r}` has a constant term; relations must vanish at the origin"
                )));
            }
        }
        let relations = Ideal::new(ring, relations)?;
        let d = relations.krull_dim()?;
        if d < 0 {
            return Err(Error::InvalidRing("relations generate the unit ideal".into()));
        }
        if let Some(declared) = declared_dim {
            if declared != d {
                return Err(Error::InvalidRing(format!(
                    "declared dimension {declared} but the quotient has dimension {d}"
                )));
            }
        }
        Ok(Self {
            inner: Arc::new(RingInner {
                ring: ring.clone(),
                relations,
                dim: d as usize,
                alpha,
                gorenstein_checked: AtomicBool::new(false),
            }),
        })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.inner.ring
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.ring.characteristic()
    }

    pub fn relations(&self) -> &Ideal {
        &self.inner.relations
    }

    pub fn dim(&self) -> usize {
        self.inner.dim
    }

    pub fn alpha(&self) -> u32 {
        self.inner.alpha
    }

    pub fn gorenstein_checked(&self) -> bool {
        self.inner.gorenstein_checked.load(AtomicOrdering::Relaxed)
    }

    /// The single relation, if `R` is a hypersurface.
    pub fn hypersurface(&self) -> Option<&Poly> {
        match self.inner.relations.generators() {
            [f] => Some(f),
            _ => None,
        }
    }

    /// `J + I` in `S`.
    pub fn lift(&self, j: &Ideal) -> Result<Ideal> {
        self.inner.relations.sum(j)
    }

    pub fn length(&self, j: &Ideal) -> Result<usize> {
        artinian::length(self, j)
    }

    /// `q = p^e`.
    pub fn q(&self, e: u32) -> Result<u64> {
        (self.characteristic() as u64)
            .checked_pow(e)
            .ok_or_else(|| Error::Usage(format!("p^{e} overflows")))
    }
}

/// Parses and validates a ring presentation.
pub fn build_ring<S: AsRef<str>>(
    p: u32,
    variables: &[S],
    relation_exprs: &[S],
    declared_dim: Option<i64>,
    alpha: Option<u32>,
) -> Result<RingPresentation> {
    let ring = PolyRing::new(p, variables)?;
    let relations = relation_exprs
        .iter()
        .map(|e| ring.parse(e.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    RingPresentation::new(&ring, relations, declared_dim, alpha.unwrap_or(0))
}

/// The family `I_t = (x_1^t..x_d^t)`, `u_t = (x_1⋯x_d)^{t-1} u_1`.
#[derive(Clone, Debug)]
pub struct IrreducibleFamily {
    ring: RingPresentation,
    sop: Vec<Poly>,
    u1: Poly,
}

/// Validates a system of parameters and picks the socle generator `u_1`.
pub fn build_family<S: AsRef<str>>(ring: &RingPresentation, sop_exprs: &[S]) -> Result<IrreducibleFamily> {
    let sop = sop_exprs
        .iter()
        .map(|e| ring.ring().parse(e.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    IrreducibleFamily::new(ring, sop)
}

impl IrreducibleFamily {
    pub fn new(ring: &RingPresentation, sop: Vec<Poly>) -> Result<Self> {
        if sop.len() != ring.dim() {
            return Err(Error::InvalidSop(format!(
                "expected {} parameters, got {}",
                ring.dim(),
                sop.len()
            )));
        }
        for x in &sop {
            check_ring(ring.ring(), x.ring())?;
        }
        let sop_ideal = Ideal::new(ring.ring(), sop.clone())?;
        let lifted = ring.lift(&sop_ideal)?;
        if lifted.is_unit()? {
            return Err(Error::InvalidSop("parameters generate the unit ideal".into()));
        }
        let basis = match ArtinianBasis::of_ideal(&lifted, MonomialOrder::GrevLex) {
            Ok(b) => b,
            Err(Error::NotZeroDimensional { variable }) => {
                return Err(Error::InvalidSop(format!(
                    "R/(sop) is not zero-dimensional (no pure power of `{variable}` among leading terms)"
                )))
            }
            Err(e) => return Err(e),
        };
        // R/(sop) must be supported at the origin alone: m^λ ⊆ (sop)
        let n = ring.ring().nvars();
        let len = basis.len() as u32;
        for v in 0..n {
            let power = ring.ring().monomial(Monomial::variable(n, v).pow(len), 1);
            if !lifted.member(&power)? {
                return Err(Error::InvalidSop(format!(
                    "R/(sop) has support away from the origin (`{}`^{len} is not in the ideal)",
                    ring.ring().variables()[v]
                )));
            }
        }
        let u1 = artinian::socle_generator(ring, &sop_ideal)?;
        ring.inner.gorenstein_checked.store(true, AtomicOrdering::Relaxed);
        Ok(Self {
            ring: ring.clone(),
            sop,
            u1,
        })
    }

    pub fn ring(&self) -> &RingPresentation {
        &self.ring
    }

    pub fn sop(&self) -> &[Poly] {
        &self.sop
    }

    pub fn u1(&self) -> &Poly {
        &self.u1
    }

    /// `I_t`, not including the relations of `R`.
    pub fn ideal(&self, t: u32) -> Result<Ideal> {
        let gens = self
            .sop
            .iter()
            .map(|x| x.pow(t as u64, DEFAULT_TERM_BUDGET))
            .collect::<Result<_>>()?;
        Ideal::new(self.ring.ring(), gens)
    }

    /// `u_t = (x_1⋯x_d)^{t-1} u_1`.
    pub fn socle_rep(&self, t: u32) -> Result<Poly> {
        let mut u = self.u1.clone();
        for x in &self.sop {
            u = &u * &x.pow(t.saturating_sub(1) as u64, DEFAULT_TERM_BUDGET)?;
        }
        Ok(u)
    }

    /// Checks `u_t ∉ I_t R` and `m u_t ⊆ I_t R`.
    pub fn socle_chain_holds(&self, t: u32) -> Result<bool> {
        let it = self.ring.lift(&self.ideal(t)?)?;
        let u = self.socle_rep(t)?;
        if it.member(&u)? {
            return Ok(false);
        }
        let ring = self.ring.ring();
        for v in 0..ring.nvars() {
            if !it.member(&(&u * &ring.var(v)))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `(I_t^[q] : u_t^q)` in `R`, lifted to `S`.
    pub fn frobenius_colon(&self, q: u64, t: u32, policy: &SplittingPolicy) -> Result<ColonQuotient> {
        let j = self.ring.lift(&self.ideal(t)?.bracket_power(q)?)?;
        let factors = factored_power(&self.socle_rep(t)?, q, policy.term_budget)?;
        ArtinianBasis::of_ideal(&j, policy.order)?.colon(&factors)
    }
}

/// Controls the search over `t` in [`splitting_number`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplittingPolicy {
    pub t_max: u32,
    /// Number of consecutive equal `L(t)` values required.
    pub window: u32,
    pub term_budget: usize,
    /// Order for the Groebner bases behind each colon. Lengths do not
    /// depend on it.
    pub order: MonomialOrder,
}

impl Default for SplittingPolicy {
    fn default() -> Self {
        Self {
            t_max: 8,
            window: 2,
            term_budget: DEFAULT_TERM_BUDGET,
            order: MonomialOrder::GrevLex,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingNumber {
    pub e: u32,
    pub q: u64,
    pub a_q: u64,
    pub t_used: u32,
    /// `(t, L(t))` with `L(t) = λ(R/(I_t^[q] : u_t^q))`.
    pub trace: Vec<(u32, u64)>,
    pub stabilized: bool,
}

/// `a_q` for `q = p^e`, accepted once `window` consecutive `L(t)` agree.
/// Reaching `t_max` without agreement is reported through `stabilized`.
pub fn splitting_number(
    ring: &RingPresentation,
    family: &IrreducibleFamily,
    e: u32,
    policy: &SplittingPolicy,
) -> Result<SplittingNumber> {
    if policy.window == 0 || policy.t_max == 0 {
        return Err(Error::Usage("t_max and window must be positive".into()));
    }
    let q = ring.q(e)?;
    let scale = q
        .checked_pow(ring.alpha())
        .ok_or_else(|| Error::Usage("q^α overflows".into()))?;
    let mut trace: Vec<(u32, u64)> = Vec::new();
    let w = policy.window as usize;
    for t in 1..=policy.t_max {
        let len = family.frobenius_colon(q, t, policy)?.length() as u64;
        trace.push((t, len));
        if trace.len() >= w && trace[trace.len() - w..].iter().all(|&(_, l)| l == len) {
            return Ok(SplittingNumber {
                e,
                q,
                a_q: scale * len,
                t_used: t,
                trace,
                stabilized: true,
            });
        }
    }
    let &(t_used, len) = trace.last().expect("t_max >= 1");
    Ok(SplittingNumber {
        e,
        q,
        a_q: scale * len,
        t_used,
        trace,
        stabilized: false,
    })
}

/// A nonnegative rational kept with its unreduced denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fraction {
    pub num: u128,
    pub den: u128,
}

impl Fraction {
    pub fn ratio(&self) -> Ratio<u128> {
        Ratio::new(self.num, self.den)
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Fixed-precision decimal rendering.
    pub fn approx(&self, digits: usize) -> String {
        format!("{:.*}", digits, self.to_f64())
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

fn pow128(base: u64, exp: u32) -> Result<u128> {
    (base as u128)
        .checked_pow(exp)
        .ok_or_else(|| Error::Usage(format!("{base}^{exp} overflows")))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureRow {
    pub e: u32,
    pub q: u64,
    pub a_q: u64,
    /// `a_q / q^{d+α}`
    pub s_e: Fraction,
    pub splitting: SplittingNumber,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertKunzRow {
    pub e: u32,
    pub q: u64,
    pub length: u64,
    /// `λ(R/m^[q]) / q^d`
    pub ratio: Fraction,
}

/// Thresholds for the finite-stage positivity heuristics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvidenceConfig {
    pub epsilon: f64,
}

impl Default for EvidenceConfig {
    fn default() -> Self {
        Self { epsilon: 1e-3 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SdimEstimate {
    pub value: i64,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FSignatureReport {
    pub p: u32,
    pub d: usize,
    pub alpha: u32,
    pub rows: Vec<SignatureRow>,
    pub hk_rows: Vec<HilbertKunzRow>,
    pub sdim: SdimEstimate,
    /// Finite-stage evidence that `s(R) > 0`; not a proof.
    pub s_positive_evidence: bool,
}

impl FSignatureReport {
    pub fn all_stabilized(&self) -> bool {
        self.rows.iter().all(|r| r.splitting.stabilized)
    }
}

/// `s_e ≥ ε` on the last two rows and `s_e / s_{e-1} > 1/p`.
pub fn s_positive_evidence(rows: &[SignatureRow], p: u32, d: usize, alpha: u32, cfg: &EvidenceConfig) -> bool {
    let Some(last) = rows.last() else {
        return false;
    };
    let recent = &rows[rows.len().saturating_sub(2)..];
    if recent.iter().any(|r| r.s_e.to_f64() < cfg.epsilon) {
        return false;
    }
    match rows.len() {
        1 => true,
        n => {
            let prev = &rows[n - 2];
            // s_e / s_{e-1} > 1/p  <=>  a_q * p > a_{q/p} * p^{d+α} (consecutive e)
            let lhs = BigUint::from(last.a_q) * BigUint::from(p);
            let rhs = BigUint::from(prev.a_q) * BigUint::from(p).pow((d as u32 + alpha) * (last.e - prev.e));
            lhs > rhs
        }
    }
}

/// The largest `j ∈ [0, d]` for which `a_q/q^{j+α}` does not collapse
/// between the last two rows, or `-1` when the last `a_q` is 0.
pub fn sdim_estimate(rows: &[SignatureRow], p: u32, d: usize, alpha: u32) -> Result<SdimEstimate> {
    if rows.len() < 2 {
        return Err(Error::Usage("s-dimension needs at least two rows".into()));
    }
    let last = &rows[rows.len() - 1];
    let prev = &rows[rows.len() - 2];
    if last.a_q == 0 {
        return Ok(SdimEstimate {
            value: -1,
            note: format!("a_q = 0 at q = {}: not F-pure", last.q),
        });
    }
    if prev.a_q == 0 {
        return Ok(SdimEstimate {
            value: d as i64,
            note: format!("a_q jumped from 0 at q = {} (unexpected; check inputs)", prev.q),
        });
    }
    let steps = last.e - prev.e;
    let p = BigUint::from(p);
    for j in (0..=d as u32).rev() {
        // (a_q / a_{q'}) / p^{(j+α)·steps} > p^{-steps}
        let lhs = BigUint::from(last.a_q) * p.pow(steps);
        let rhs = BigUint::from(prev.a_q) * p.pow((j + alpha) * steps);
        if lhs > rhs {
            return Ok(SdimEstimate {
                value: j as i64,
                note: format!(
                    "a_q/q^(j+α) non-collapsing between e = {} and e = {} for j = {j}; heuristic, not a proof",
                    prev.e, last.e
                ),
            });
        }
    }
    Ok(SdimEstimate {
        value: 0,
        note: "a_q positive but shrinking faster than any tested exponent".into(),
    })
}

/// `λ(R/m^[q])` and `λ/q^d` for `e = 1..=e_max`.
pub fn hilbert_kunz_sequence(ring: &RingPresentation, e_max: u32) -> Result<Vec<HilbertKunzRow>> {
    let m = Ideal::maximal(ring.ring());
    (1..=e_max)
        .into_par_iter()
        .map(|e| {
            let q = ring.q(e)?;
            let length = ring.length(&m.bracket_power(q)?)? as u64;
            Ok(HilbertKunzRow {
                e,
                q,
                length,
                ratio: Fraction {
                    num: length as u128,
                    den: pow128(q, ring.dim() as u32)?,
                },
            })
        })
        .collect()
}

/// Splitting numbers, `s_e`, Hilbert–Kunz rows and the derived estimates
/// for `e = 1..=e_max`. Rows are computed concurrently and kept in `e` order.
pub fn fsignature_sequence(
    ring: &RingPresentation,
    family: &IrreducibleFamily,
    e_max: u32,
    policy: &SplittingPolicy,
    cfg: &EvidenceConfig,
) -> Result<FSignatureReport> {
    if e_max == 0 {
        return Err(Error::Usage("e_max must be at least 1".into()));
    }
    let (d, alpha, p) = (ring.dim(), ring.alpha(), ring.characteristic());
    let rows = (1..=e_max)
        .into_par_iter()
        .map(|e| {
            let sn = splitting_number(ring, family, e, policy)?;
            let den = pow128(sn.q, d as u32 + alpha)?;
            Ok(SignatureRow {
                e,
                q: sn.q,
                a_q: sn.a_q,
                s_e: Fraction {
                    num: sn.a_q as u128,
                    den,
                },
                splitting: sn,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let hk_rows = hilbert_kunz_sequence(ring, e_max)?;
    let sdim = if rows.len() >= 2 {
        sdim_estimate(&rows, p, d, alpha)?
    } else {
        SdimEstimate {
            value: if rows[0].a_q == 0 { -1 } else { 0 },
            note: "single row: only a_q > 0 is known".into(),
        }
    };
    let s_positive_evidence = s_positive_evidence(&rows, p, d, alpha, cfg);
    Ok(FSignatureReport {
        p,
        d,
        alpha,
        rows,
        hk_rows,
        sdim,
        s_positive_evidence,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigPowersCheck {
    pub e: u32,
    pub t: u32,
    pub q: u64,
    /// `λ(R/(I_t^[q] : u_t^q))`
    pub colon_length: u64,
    /// Smallest `q_0 = p^j ≤ q` with `(I_t^[q] : u_t^q) ⊆ m^[q/q_0]`.
    pub q0: Option<u64>,
    /// `λ(R/m^[q/q_0])` when `q_0` exists.
    pub implied_bound: Option<u64>,
    pub a_q: u64,
    /// `a_q / q^α ≥ implied_bound` (vacuous without `q_0`).
    pub bound_holds: bool,
}

/// Searches for the exponent `q_0` of the containment
/// `(I_t^[q] : u_t^q) ⊆ m^[q/q_0]` and checks the length bound it implies.
pub fn big_powers_check(
    ring: &RingPresentation,
    family: &IrreducibleFamily,
    e: u32,
    t: u32,
    policy: &SplittingPolicy,
) -> Result<BigPowersCheck> {
    if e == 0 || t == 0 {
        return Err(Error::Usage("e and t must be positive".into()));
    }
    let p = ring.characteristic() as u64;
    let q = ring.q(e)?;
    let colon = family.frobenius_colon(q, t, policy)?;
    let colon_length = colon.length() as u64;
    let colon_ideal = colon.to_ideal();
    let m = Ideal::maximal(ring.ring());
    let mut found = None;
    let mut q0 = 1u64;
    for _ in 0..=e {
        let target = ring.lift(&m.bracket_power(q / q0)?)?;
        if target.contains(&colon_ideal)? {
            found = Some((q0, ring.length(&m.bracket_power(q / q0)?)? as u64));
            break;
        }
        q0 *= p;
    }
    let a_q = splitting_number(ring, family, e, policy)?.a_q;
    let scale = q.pow(ring.alpha());
    let bound_holds = found.is_none_or(|(_, b)| a_q / scale >= b && a_q % scale == 0);
    Ok(BigPowersCheck {
        e,
        t,
        q,
        colon_length,
        q0: found.map(|(q0, _)| q0),
        implied_bound: found.map(|(_, b)| b),
        a_q,
        bound_holds,
    })
}

/// `α` at a prime `P ⊆ Q` from `α(R_Q)` and the height of `Q/P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalizationAlpha {
    pub alpha_at_q: u32,
    pub height: u32,
}

/// `α(R_P) = α(R_Q) + ht(Q/P)`.
pub fn alpha_localize(ctx: LocalizationAlpha) -> u32 {
    ctx.alpha_at_q + ctx.height
}

/// Exact check of `b_q / q^{dim R_P + α(R_P)} ≥ a_q / q^{dim R + α(R)}`.
pub fn localization_bound_check(a_q: u64, d: u32, alpha: u32, b_q: u64, d_p: u32, alpha_p: u32, q: u64) -> bool {
    let q = BigUint::from(q);
    BigUint::from(b_q) * q.pow(d + alpha) >= BigUint::from(a_q) * q.pow(d_p + alpha_p)
}
