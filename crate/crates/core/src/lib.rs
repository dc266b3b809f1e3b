pub mod cli;
pub mod freealg;
pub mod hilbert;
pub mod koszul;
pub mod lattice;
pub mod presentation;
pub mod scalar;
pub mod subspace;
