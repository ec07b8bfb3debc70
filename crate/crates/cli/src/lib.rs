//! Support library for the `cyclerep` binary: the serialization format and
//! the DOT/JSON quiver renderers.

pub mod export;
pub mod io;
