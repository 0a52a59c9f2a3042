//! Constructions for translational lattice tiling: adjacent cube partitions,
//! the connected simulation of disconnected tiles, the domino to cyclic
//! triomino encoding, the blocker/tower/brick/filler gadgets, and a generic
//! exact-cover tiling solver used to check every finite claim.

pub mod lattice;
pub mod partition;
pub mod simulate;
pub mod solver;
pub mod boardgames;
pub mod gadgets;
pub mod io;
pub mod export;
pub mod oracle;
pub mod suite;
