//! Braid-equivalent pairs of unimodal permutations.
//!
//! * [`perm`]: cyclic unimodal permutations, itineraries, preimage intervals
//!   and reconnectability.
//! * [`cabling`]: the two cabling constructions and chain generation.
//! * [`braid`]: braid words, unimodal braids, Garside normal form, a Dynnikov
//!   coordinate oracle and pair verification.
//! * [`quad`]: superattracting parameters of `x ↦ a − x²`.
//! * [`henon`]: Hénon periodic orbits, zero isotracal continuation and
//!   attracting-period scans.
//! * [`plot`]: SVG output.

pub mod braid;
pub mod cabling;
pub mod henon;
pub mod perm;
pub mod plot;
pub mod quad;

pub use braid::{normal_form, unimodal_braid, verify_pair, BraidWord, LeftNormalForm, VerificationReport};
pub use cabling::{generate_chain, Chain, ChainDocument, EquivalencePair, Relation};
pub use henon::{continue_isotracal, scatter, HenonParams, IsotracalPath, ScatterGrid, ScatterSpec};
pub use perm::{Itinerary, UnimodalPermutation};
pub use quad::{superattracting_parameter, QuadParam};
