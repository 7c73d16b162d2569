//! Capacity regions of two-receiver broadcast channels whose outputs are
//! one of two deterministic functions of the input, selected by
//! independent per-receiver states known only at the receivers.
//!
//! The numerics are generic over [`Real`] (`f32` or `f64`); the `*64` and
//! `*32` aliases below fix the scalar type.

pub mod channel;
pub mod error;
pub mod examples;
pub mod infotheory;
pub mod io;
pub mod outerbound;
pub mod pmf;
pub mod regions;
pub mod scalar;
pub mod simplexopt;

pub use channel::{canonicalize, induced_joint, receiver_channel_mi, ChannelSpec, ComponentLaws, Receiver};
pub use error::{Error, Result};
pub use infotheory::{binary_entropy, entropy, entropy_of, report, EntropyReport};
pub use outerbound::{
    brute_force_support, lattice_error_bound, support_outer, verify_converse, ConverseReport, ConverseSample,
    OuterConfig,
};
pub use pmf::{JointPmf, Pmf};
pub use regions::{
    capacity_polygon, primed_regions, proposition_regions, support_inner, RatePair, RegionPolygon, SupportCase,
    SupportCurve,
};
pub use scalar::Real;
pub use simplexopt::{maximize_joint, maximize_simplex, OptConfig, OptResult};

pub type Pmf64 = Pmf<f64>;
pub type JointPmf64 = JointPmf<f64>;
pub type ChannelSpec64 = ChannelSpec<f64>;
pub type EntropyReport64 = EntropyReport<f64>;
pub type OptConfig64 = OptConfig<f64>;
pub type RatePair64 = RatePair<f64>;
pub type RegionPolygon64 = RegionPolygon<f64>;
pub type SupportCurve64 = SupportCurve<f64>;
pub type ConverseReport64 = ConverseReport<f64>;
pub type OuterConfig64 = OuterConfig<f64>;

pub type Pmf32 = Pmf<f32>;
pub type JointPmf32 = JointPmf<f32>;
pub type ChannelSpec32 = ChannelSpec<f32>;
pub type EntropyReport32 = EntropyReport<f32>;
pub type OptConfig32 = OptConfig<f32>;
pub type RatePair32 = RatePair<f32>;
pub type RegionPolygon32 = RegionPolygon<f32>;
pub type SupportCurve32 = SupportCurve<f32>;
pub type ConverseReport32 = ConverseReport<f32>;
pub type OuterConfig32 = OuterConfig<f32>;
