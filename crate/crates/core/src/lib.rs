//! Polynomial arithmetic and Groebner bases over prime fields, finite-length
//! quotients, and the Frobenius splitting invariants of graded Gorenstein
//! rings: splitting numbers, F-signature, Hilbert–Kunz multiplicity and
//! splitting dimension, together with the Fedder and Glassbrenner criteria.

pub mod artinian;
pub mod criteria;
pub mod error;
pub mod field;
pub mod groebner;
pub mod ideal;
pub mod invariants;
mod linalg;
pub mod monomial;
pub mod parse;
pub mod poly;

pub use artinian::{length, socle, socle_generator, standard_monomials, ArtinianBasis, ColonQuotient};
pub use criteria::{
    classify, fedder_fpure, glassbrenner_sfr, hypersurface_splitting_oracle, Evidence, SfrOutcome, SfrStatus, Verdict,
};
pub use error::{Error, Result};
pub use field::{FieldOp, PrimeField};
pub use groebner::GroebnerBasis;
pub use ideal::{factored_power, Ideal, DEFAULT_TERM_BUDGET};
pub use invariants::{
    alpha_localize, big_powers_check, build_family, build_ring, fsignature_sequence, hilbert_kunz_sequence,
    localization_bound_check, sdim_estimate, splitting_number, BigPowersCheck, EvidenceConfig, FSignatureReport,
    Fraction, HilbertKunzRow, IrreducibleFamily, LocalizationAlpha, RingPresentation, SdimEstimate, SignatureRow,
    SplittingNumber, SplittingPolicy,
};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{Poly, PolyRing};
