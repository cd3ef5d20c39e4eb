//! Exact combinatorics for the exponential family `exp(z) + k`.
//!
//! Addresses, itineraries and kneading sequences, hyperbolic components with
//! their characteristic ray pairs, sector labels and bifurcations, internal and
//! angled internal addresses, combinatorial tuning, and brute-force oracles
//! over bounded enumerations. Everything is exact: entries are integers and
//! half-integers, angles are rationals.

// addresses, itineraries and internal addresses are never empty
#![allow(clippy::len_without_is_empty)]

pub mod address;
pub mod components;
pub mod error;
pub mod internal_addr;
pub mod itinerary;
pub mod oracle;
pub mod tuning;

pub use address::{circular_order, compare, parse, Address, Entry, HalfInt, InfiniteAddress, IntermediateAddress};
pub use components::{
    bifurcate, bifurcate_at_height, characteristic_addresses, classify, forbidden_kneading, sector_boundary,
    sector_info, wake_contains, Classification, HyperbolicComponent, SectorKey, SectorRef, SectorWake,
};
pub use error::{Error, Result};
pub use internal_addr::{
    addr_from_angled, angled_internal, component_from_boundary, essential_orbit_count, internal_address,
    internal_from_kneading, kneading_from_internal, lowest_period_on_arc, AngledInternalAddress, ArcQuery,
    EssentialOrbits, Height, InternalAddress, SectorNumber,
};
pub use itinerary::{itinerary, kneading, kneading_pm, solve_itinerary, Itinerary, SeedSide, Side, Symbol};
pub use num_rational::Rational64;
pub use oracle::{enumerate_intermediate, enumerate_periodic, exhaustive_check, CheckReport, EnumerationBounds, SUITES};
pub use tuning::{tune, tuning_block, TuningBlockTable, TuningVariant};
