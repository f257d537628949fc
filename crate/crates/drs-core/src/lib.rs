//! Distributed Reed-Solomon codes for simple multiple access networks.
//!
//! A single destination collects one symbol from each of N relays, every
//! relay sees only a subset of up to three sources, and up to z relays may
//! be adversarial. This crate builds generator matrices that let each relay
//! encode from purely local data while the destination receives codewords of
//! one ordinary [N, N-2z] Reed-Solomon code, decodable with Berlekamp-Welch.
//!
//! The pieces, bottom up:
//!
//! * [`gf`] — GF(2^m) arithmetic over log/antilog tables, m in 1..=16.
//! * [`poly`] — polynomials: evaluation, vanishing sets, argument scaling.
//! * [`linalg`] — dense matrices: products, rank, echelon pivots, inverses.
//! * [`rs`] — the constituent Reed-Solomon code and its decoders.
//! * [`sman`] — network topology, relay partitions, capacity region.
//! * [`construct`] — case classification and the masked generator G = T G_RS.
//! * [`codec`] — relay encoding, corruption, decoding, and simulation.
//!
//! The `parallel` feature (on by default) runs simulation trials and the
//! brute-force decoding oracle on a rayon pool; disabling it falls back to
//! equivalent sequential loops with identical outputs.

pub mod codec;
pub mod construct;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod poly;
pub mod rs;
pub mod sman;

pub use codec::{
    corrupt, decode, encode_all, format_word, parse_word, relay_encode, simulate, simulate_seq,
    MessagesFile, ReceivedWord, SimStats, SourceMessages,
};
pub use construct::{build, classify, CaseLabel, CasePlan, Construction, VerifyReport};
pub use error::{Error, Result};
pub use gf::{FieldElement, FieldSpec};
pub use linalg::Matrix;
pub use poly::Polynomial;
pub use rs::RSCode;
pub use sman::{PartitionSets, SmanTopology, SourceSet, TopologyFile};
