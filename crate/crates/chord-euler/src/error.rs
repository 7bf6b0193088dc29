use thiserror::Error;

/// Every failure the library reports. Validation failures name the offending
/// vertex indices as given in the input order.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("duplicate vertices {0} and {1}")]
    DuplicateVertex(usize, usize),
    #[error("collinear triple ({0}, {1}, {2})")]
    CollinearTriple(usize, usize, usize),
    #[error("self-intersection ({}-{}, {}-{})", .0.0, .0.1, .1.0, .1.1)]
    SelfIntersection((usize, usize), (usize, usize)),
    #[error("point lies on the polygon boundary")]
    OnBoundary,
    #[error("all points are collinear")]
    AllCollinear,
    #[error("index {index} out of range for {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("{op} needs at least {min} vertices, got {n}")]
    PolygonTooSmall { op: &'static str, n: usize, min: usize },
    #[error("{n} vertices is not of the form a(m+1)+2 for a = {a}")]
    BadADiagonalSize { n: usize, a: usize },
    #[error("chords {0} and {1} cross")]
    Crossing(String, String),
    #[error("chord {0} is not a diagonal")]
    NotDiagonal(String),
    #[error("segment endpoint is not one of the given points")]
    EndpointNotInFamily,
    #[error("set is not a subset of the family")]
    NotSubset,
    #[error("instance too large: {what} is {size}, cap is {cap}")]
    TooLarge { what: &'static str, size: usize, cap: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("generator failed: {0}")]
    Generator(String),
    #[error("inexact division in {0}")]
    InexactDivision(&'static str),
}
