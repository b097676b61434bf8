//! Support code for the `leancut` command-line tool.

pub mod corpus;
