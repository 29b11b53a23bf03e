pub mod algebra;
pub mod braided;
pub mod bridge;
pub mod clebsch;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod memo;
pub mod oracle;
pub mod rep;
pub mod scalar;
pub mod tangent;
