//! Brute-force checks of the order and inverse results over small finite
//! von Neumann regular rings.

mod claims;
mod ring;

pub use claims::{
    replay, verify, verify_with, ClaimReport, Counterexample, RingOracle, VerifyOptions,
    CLAIM_IDS, CLAIM_RING_MAX,
};
pub use ring::{
    inverse_sets, make_ring, make_ring_with_limit, Element, FactorSpec, FiniteRing, InverseSets,
    RingSpec, DEFAULT_MAX_RING, EXHAUSTIVE_AXIOM_MAX,
};
