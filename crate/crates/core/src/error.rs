use thiserror::Error;

use crate::complex::{Edge, Triangle, Vertex};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} outside 1..={n}")]
    VertexOutOfRange { vertex: Vertex, n: u32 },

    #[error("face {face:?} repeats a vertex")]
    DegenerateFace { face: Vec<Vertex> },

    #[error("closure violated: triangle {triangle:?} is missing edge {missing:?}")]
    ClosureViolation { triangle: Triangle, missing: Edge },

    #[error("cell {cell:?} is not a closed walk of 3 or 4 distinct vertices along edges")]
    InvalidCell { cell: Vec<Vertex> },

    #[error("walk {walk:?} is not a closed walk along edges of the complex")]
    InvalidWalk { walk: Vec<Vertex> },

    #[error("{guard} guard exceeded: {size} > {limit}")]
    GuardExceeded {
        guard: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("complex is not connected ({components} components)")]
    NotConnected { components: usize },

    #[error("rooted density {value} is at most 1/3")]
    DensityAtMostOneThird { value: String },

    #[error("link of vertex {vertex} has no edges")]
    EdgelessLink { vertex: Vertex },

    #[error("need at least {needed} vertices, complex has {n}")]
    TooFewVertices { needed: u32, n: u32 },

    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(String),

    #[error("certificate failed verification: {0}")]
    VerificationFailed(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
