pub mod arith;
pub mod error;
pub mod geometry;
pub mod laurent;
pub mod period;
pub mod compactification;
pub mod fit;
pub mod sweep;
