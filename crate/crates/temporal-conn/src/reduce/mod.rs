//! Approximation-preserving reductions between temporal connectivity and
//! Directed Steiner problems, as executable instance transformers with
//! bidirectional solution maps:
//!
//! - rooted temporal connectivity -> Directed Steiner Tree ([`rtc_to_dst`]),
//! - all-pairs temporal connectivity -> Directed Steiner Forest
//!   ([`tc_to_dsf`]),
//! - Directed Steiner Tree -> rooted temporal connectivity ([`dst_to_rtc`]),
//! - Symmetric Label Cover -> all-pairs temporal connectivity
//!   ([`slc_to_tc`]),
//! - Steiner Tree with weights 1 and 2 -> unweighted all-pairs temporal
//!   connectivity ([`st12_to_tc`]).

pub mod from_dst;
pub mod from_slc;
pub mod from_st12;
pub mod to_dsf;
pub mod to_dst;

pub use from_dst::{dst_to_rtc, DstToRtc};
pub use from_slc::{slc_to_tc, SlcAssignment, SlcInstance, SlcToTc};
pub use from_st12::{st12_to_tc, St12ToTc, SteinerInstance12};
pub use to_dsf::{tc_to_dsf, TcToDsf};
pub use to_dst::{rtc_to_dst, RtcToDst};
