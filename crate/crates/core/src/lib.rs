//! Counting short cycles of bi-regular Tanner graphs from the spectrum of
//! `H H^T`, with exact integer arithmetic throughout the main path.

pub mod analysis;
pub mod fixtures;
pub mod formats;
pub mod formulas;
pub mod matrix;
pub mod oracle;
pub mod spectral;
