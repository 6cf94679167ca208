//! Pointlike sets of finite semigroups relative to varieties of the form
//! H̄ (all subgroups in a group variety H), with the supporting semigroup
//! and group algorithms, an automaton-based verifier and a separation
//! procedure for regular languages.

pub mod corpus;
pub mod flow;
pub mod group;
pub mod io;
pub mod languages;
pub mod saturation;
pub mod semigroup;
