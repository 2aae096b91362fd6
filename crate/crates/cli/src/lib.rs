//! Batch front end for the isolation toolkit: graph expressions, seeded
//! corpora, a results log, bound-checking campaigns and exploration.

pub mod commands;
pub mod corpus;
pub mod explore;
pub mod expr;
pub mod records;
pub mod report;
pub mod verify;
