//! Predicting cross-lingual transfer performance from language-pair features.
//!
//! The pipeline runs in four stages:
//!
//! 1. [`corpus`] and [`typology`] compute per-language statistics and
//!    typological property sets.
//! 2. [`similarity`] turns them into a pairwise feature table. [`lm`] supplies
//!    span-masking plans and aggregates externally computed LM scores.
//! 3. [`regression`] fits lasso models with recursive feature elimination and
//!    evaluates them with leave-one-target-language-out cross-validation.
//! 4. [`transfer`] predicts zero- and few-shot scores and ranks source
//!    languages.
//!
//! [`synthetic`] generates seeded datasets with a known generating model.

pub mod cli;
pub mod config;
pub mod corpus;
pub mod error;
pub mod lm;
pub mod regression;
pub mod similarity;
pub mod synthetic;
pub mod transfer;
pub mod typology;

pub use error::{Error, Result};
