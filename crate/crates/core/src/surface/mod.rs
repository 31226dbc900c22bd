//! Region-graph model of stratified surfaces and its text syntax.

mod model;
mod parser;

pub use model::{
    total_genus, validate_surface, EdgeEnd, Insertion, RegionSpec, SurfaceSpec, WallEdge,
};
pub use parser::{parse_surface, ParseError, ParseErrorKind, Position};
