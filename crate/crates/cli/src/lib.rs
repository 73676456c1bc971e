//! Batch front-end for `fsig-core`: reads ring presentations, runs one
//! command and renders a deterministic report as a table, JSON or CSV.

pub mod presentation;
pub mod report;

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use fsig_core::{
    big_powers_check, classify, fedder_fpure, fsignature_sequence, glassbrenner_sfr, hilbert_kunz_sequence,
    hypersurface_splitting_oracle, sdim_estimate, splitting_number, Error as CoreError, EvidenceConfig, MonomialOrder,
    SfrOutcome, SfrStatus, SplittingPolicy, Verdict, DEFAULT_TERM_BUDGET,
};
use serde::Serialize;
use sha2::{Digest, Sha256};

pub use presentation::{corpus_entry, parse_presentation, Presentation, CORPUS};
pub use report::{render, Format, Report};
use report::*;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Resource(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Io(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Resource(_) => 4,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Parse { column, message } => CliError::Parse {
                line: 1,
                column,
                message,
            },
            CoreError::Resource { .. } => CliError::Resource(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

/// Exit status for a report whose splitting numbers did not stabilize.
pub const EXIT_UNSTABLE: i32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Command {
    Aq,
    Fsig,
    Hk,
    Sdim,
    Fpure,
    Sfr,
    OracleAq,
    BigPowers,
    Classify,
}

impl Command {
    pub const ALL: [Command; 9] = [
        Command::Aq,
        Command::Fsig,
        Command::Hk,
        Command::Sdim,
        Command::Fpure,
        Command::Sfr,
        Command::OracleAq,
        Command::BigPowers,
        Command::Classify,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Aq => "aq",
            Command::Fsig => "fsig",
            Command::Hk => "hk",
            Command::Sdim => "sdim",
            Command::Fpure => "fpure",
            Command::Sfr => "sfr",
            Command::OracleAq => "oracle-aq",
            Command::BigPowers => "bigpowers",
            Command::Classify => "classify",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown command `{s}`"))
    }
}

/// Run configuration; echoed verbatim into every report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Config {
    pub emax: u32,
    pub e: Option<u32>,
    pub t: Option<u32>,
    pub tmax: u32,
    pub window: u32,
    pub epsilon: f64,
    pub order: String,
    pub term_budget: usize,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            emax: 2,
            e: None,
            t: None,
            tmax: 8,
            window: 2,
            epsilon: 1e-3,
            order: "grevlex".into(),
            term_budget: DEFAULT_TERM_BUDGET,
        }
    }
}

impl Config {
    fn policy(&self) -> Result<SplittingPolicy, CliError> {
        let order: MonomialOrder = self.order.parse().map_err(CliError::Validation)?;
        if !matches!(order, MonomialOrder::GrevLex | MonomialOrder::Lex) {
            return Err(CliError::Validation("--order must be grevlex or lex".into()));
        }
        if self.tmax == 0 || self.window == 0 || self.emax == 0 {
            return Err(CliError::Validation("--emax, --tmax and --window must be positive".into()));
        }
        Ok(SplittingPolicy {
            t_max: self.tmax,
            window: self.window,
            term_budget: self.term_budget,
            order,
        })
    }

    fn evidence(&self) -> Result<EvidenceConfig, CliError> {
        if !(self.epsilon.is_finite() && self.epsilon >= 0.0) {
            return Err(CliError::Validation("--epsilon must be a nonnegative number".into()));
        }
        Ok(EvidenceConfig { epsilon: self.epsilon })
    }

    fn exponents(&self) -> Vec<u32> {
        match self.e {
            Some(e) => vec![e],
            None => (1..=self.emax).collect(),
        }
    }
}

/// The text of an input, by path or by corpus name.
#[derive(Debug, Clone)]
pub struct Input {
    pub name: String,
    pub text: String,
}

impl Input {
    pub fn load(arg: &str) -> Result<Self, CliError> {
        let path = Path::new(arg);
        if path.is_file() {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{arg}: {e}")))?;
            let name = path
                .file_stem()
                .map_or_else(|| arg.to_string(), |s| s.to_string_lossy().into_owned());
            return Ok(Self { name, text });
        }
        match corpus_entry(arg) {
            Some(text) => Ok(Self {
                name: arg.to_string(),
                text: text.to_string(),
            }),
            None => Err(CliError::Io(format!("{arg}: no such file or bundled example"))),
        }
    }

    pub fn digest(&self) -> String {
        format!("{:x}", Sha256::digest(self.text.as_bytes()))
    }
}

/// A finished report and whether any splitting number failed to stabilize.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub unstable: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.unstable {
            EXIT_UNSTABLE
        } else {
            0
        }
    }
}

fn splitting_row(sn: &fsig_core::SplittingNumber) -> AqRow {
    AqRow {
        e: sn.e,
        q: sn.q,
        a_q: sn.a_q,
        t_used: sn.t_used,
        stabilized: sn.stabilized,
        trace: sn.trace.iter().map(|&(t, length)| TracePoint { t, length }).collect(),
    }
}

/// Parses the input and runs `command` on it.
pub fn run(command: Command, input: &Input, config: &Config) -> Result<Outcome, CliError> {
    let pres = parse_presentation(&input.text, &input.name)?;
    let policy = config.policy()?;
    let evidence = config.evidence()?;
    let ring = &pres.ring;
    let mut diagnostics = Vec::new();
    let mut unstable = false;

    let result = match command {
        Command::Aq => {
            let fam = pres.family()?;
            let rows = config
                .exponents()
                .into_iter()
                .map(|e| splitting_number(ring, fam, e, &policy).map(|sn| splitting_row(&sn)))
                .collect::<Result<Vec<_>, _>>()?;
            unstable = rows.iter().any(|r| !r.stabilized);
            Payload::Aq(AqResult { rows })
        }
        Command::Fsig | Command::Sdim => {
            let fam = pres.family()?;
            let rep = fsignature_sequence(ring, fam, config.emax, &policy, &evidence)?;
            unstable = !rep.all_stabilized();
            let rows = rep
                .rows
                .iter()
                .map(|r| FsigRow {
                    e: r.e,
                    q: r.q,
                    a_q: r.a_q,
                    s_e: Exact::from(r.s_e),
                    s_e_approx: r.s_e.approx(4),
                    t_used: r.splitting.t_used,
                    stabilized: r.splitting.stabilized,
                })
                .collect();
            if command == Command::Sdim {
                let est = sdim_estimate(&rep.rows, rep.p, rep.d, rep.alpha)?;
                Payload::Sdim(SdimResult {
                    d: rep.d,
                    sdim: est.value,
                    note: est.note,
                    rows,
                })
            } else {
                Payload::Fsig(FsigResult {
                    d: rep.d,
                    alpha: rep.alpha,
                    rows,
                    sdim: rep.sdim.value,
                    sdim_note: rep.sdim.note,
                    s_positive_evidence: rep.s_positive_evidence,
                })
            }
        }
        Command::Hk => {
            let rows = hilbert_kunz_sequence(ring, config.emax)?
                .into_iter()
                .map(|r| HkRow {
                    e: r.e,
                    q: r.q,
                    length: r.length,
                    ratio: Exact::from(r.ratio),
                    ratio_approx: r.ratio.approx(4),
                })
                .collect();
            Payload::Hk(HkResult { d: ring.dim(), rows })
        }
        Command::Fpure => {
            let criterion = match ring.relations().generators().len() {
                0 => "polynomial ring",
                1 => "f^(p-1) not in m^[p]",
                _ => "(I^[p] : I) not in m^[p]",
            };
            Payload::Fpure(FpureResult {
                fpure: fedder_fpure(ring)?,
                criterion: criterion.into(),
            })
        }
        Command::Sfr => {
            pres.hypersurface()?;
            let c = pres.test_element()?;
            if !pres.reduced {
                diagnostics.push("reducedness of R is not attested (`reduced = true`)".to_string());
            }
            let outcome = glassbrenner_sfr(ring, c, config.emax, policy.term_budget)?;
            Payload::Sfr(SfrResult::from_outcome(outcome, c.to_string(), config.emax))
        }
        Command::OracleAq => {
            let f = pres.hypersurface()?;
            if !pres.reduced {
                diagnostics.push("reducedness of R is not attested (`reduced = true`)".to_string());
            }
            let rows = config
                .exponents()
                .into_iter()
                .map(|e| {
                    Ok(OracleRow {
                        e,
                        q: ring.q(e)?,
                        a_q: hypersurface_splitting_oracle(f, e, policy.term_budget)?,
                    })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            Payload::OracleAq(OracleResult { rows })
        }
        Command::BigPowers => {
            let fam = pres.family()?;
            let e = config.e.unwrap_or(1);
            let t = config.t.unwrap_or(2);
            let check = big_powers_check(ring, fam, e, t, &policy)?;
            let sn = splitting_number(ring, fam, e, &policy)?;
            unstable = !sn.stabilized;
            Payload::BigPowers(BigPowersResult {
                e: check.e,
                t: check.t,
                q: check.q,
                colon_length: check.colon_length,
                q0: check.q0,
                implied_bound: check.implied_bound,
                a_q: check.a_q,
                bound_holds: check.bound_holds,
            })
        }
        Command::Classify => {
            let c = match (&pres.c, ring.hypersurface()) {
                (Some(c), Some(_)) => Some(c),
                (Some(_), None) => {
                    diagnostics.push("test element ignored: not a hypersurface".to_string());
                    None
                }
                (None, _) => None,
            };
            if c.is_some() && !pres.reduced {
                diagnostics.push("reducedness of R is not attested (`reduced = true`)".to_string());
            }
            let ev = classify(ring, pres.family.as_ref(), c, config.emax, &policy, &evidence)?;
            unstable = ev.report.as_ref().is_some_and(|r| !r.all_stabilized());
            let (verdict, problems) = match &ev.verdict {
                Verdict::Consistent => (Verdict::Consistent.to_string(), Vec::new()),
                v @ Verdict::Inconsistent(p) => (v.to_string(), p.clone()),
            };
            let (sfr, sfr_q) = match ev.sfr {
                SfrStatus::Witness(q) => ("witness", Some(q)),
                SfrStatus::Unknown => ("unknown", None),
                SfrStatus::NotAttempted => ("not attempted", None),
            };
            Payload::Classify(ClassifyResult {
                d: ring.dim(),
                fpure: ev.fpure,
                sfr: sfr.into(),
                sfr_q,
                s_positive_evidence: ev.s_positive_evidence,
                sdim: ev.sdim,
                a_q: ev
                    .report
                    .as_ref()
                    .map(|r| r.rows.iter().map(|row| row.a_q).collect())
                    .unwrap_or_default(),
                verdict,
                problems,
            })
        }
    };
    if unstable {
        diagnostics.push(format!(
            "splitting numbers did not stabilize within t <= {} (window {})",
            config.tmax, config.window
        ));
    }
    let report = Report {
        schema: 1,
        tool: "fsig",
        version: env!("CARGO_PKG_VERSION"),
        command: command.name(),
        input: InputInfo {
            name: pres.name.clone(),
            sha256: input.digest(),
        },
        config: config.clone(),
        result,
        diagnostics,
    };
    Ok(Outcome { report, unstable })
}

impl SfrResult {
    fn from_outcome(outcome: SfrOutcome, c: String, e_max: u32) -> Self {
        match outcome {
            SfrOutcome::Witness { q } => Self {
                c,
                outcome: "witness".into(),
                q: Some(q),
                e_max,
            },
            SfrOutcome::Unknown { .. } => Self {
                c,
                outcome: "unknown".into(),
                q: None,
                e_max,
            },
        }
    }
}
