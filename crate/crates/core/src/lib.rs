//! Exact and numerical tools for triangles circumscribing a unit semicircle,
//! the golden right-triangle sequence built from `φ^(n+1) = F(n+1)φ + F(n)`,
//! and a compass-straightedge replay engine for its second member.

pub mod exactphi;
pub mod geometry;
pub mod extremal;
pub mod goldenseq;
pub mod construct;
