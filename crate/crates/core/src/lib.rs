pub mod circuit;
pub mod cli;
pub mod compiler;
pub mod error;
pub mod statevector;
pub mod oracle;
pub mod sampler;
pub mod superposition;
