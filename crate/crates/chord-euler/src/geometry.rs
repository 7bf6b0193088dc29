//! Exact planar predicates and validated polygons.
//!
//! Angles are never measured. "The counter-clockwise angle at `A` from ray
//! `A->X` to ray `A->Y` exceeds pi" is the orientation test
//! `orientation(A, X, Y) == -1`, which is how every class condition in
//! [`crate::classes`] is evaluated.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::chords::ChordTable;
use crate::exact_scalar::{QSqrt3, Rat, Sign};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Point {
    pub x: QSqrt3,
    pub y: QSqrt3,
}

impl Point {
    pub fn new(x: impl Into<QSqrt3>, y: impl Into<QSqrt3>) -> Point {
        Point { x: x.into(), y: y.into() }
    }

    /// Integer point, handy in tests and examples.
    pub fn int(x: i64, y: i64) -> Point {
        Point::new(x, y)
    }

    pub fn sub(&self, o: &Point) -> Point {
        Point { x: &self.x - &o.x, y: &self.y - &o.y }
    }

    pub fn add(&self, o: &Point) -> Point {
        Point { x: &self.x + &o.x, y: &self.y + &o.y }
    }

    pub fn scale(&self, k: &Rat) -> Point {
        Point { x: self.x.scale(k), y: self.y.scale(k) }
    }

    pub fn midpoint(&self, o: &Point) -> Point {
        self.add(o).scale(&Rat::new(1, 2).expect("non-zero"))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

fn cross(u: &Point, v: &Point) -> QSqrt3 {
    &(&u.x * &v.y) - &(&u.y * &v.x)
}

fn dot(u: &Point, v: &Point) -> QSqrt3 {
    &(&u.x * &v.x) + &(&u.y * &v.y)
}

/// Sign of `cross(q - p, r - p)`; `+1` is a left (counter-clockwise) turn.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> Sign {
    cross(&q.sub(p), &r.sub(p)).sign()
}

/// Whether the counter-clockwise angle at `a` from ray `a->x` to ray `a->y`
/// exceeds pi.
pub fn angle_exceeds_pi(a: &Point, x: &Point, y: &Point) -> Result<bool, Error> {
    match orientation(a, x, y) {
        0 => Err(Error::Precondition("angle test on a collinear triple".into())),
        s => Ok(s < 0),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Segment {
        Segment { a, b }
    }
}

/// True iff the open segments meet in exactly one point. Segments sharing an
/// endpoint do not cross.
pub fn segments_properly_cross(s1: &Segment, s2: &Segment) -> bool {
    let o1 = orientation(&s1.a, &s1.b, &s2.a);
    let o2 = orientation(&s1.a, &s1.b, &s2.b);
    let o3 = orientation(&s2.a, &s2.b, &s1.a);
    let o4 = orientation(&s2.a, &s2.b, &s1.b);
    o1 * o2 < 0 && o3 * o4 < 0
}

/// Whether `p` lies on the closed segment `a b`.
fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    orientation(a, b, p) == 0 && dot(&a.sub(p), &b.sub(p)).sign() <= 0
}

/// A simple polygon in general position with counter-clockwise vertex order.
///
/// Built only through [`validate_polygon`] (or internally from parts of an
/// already valid polygon). The chord table is computed on first use.
#[derive(Clone)]
pub struct Polygon {
    vertices: Vec<Point>,
    table: OnceLock<Arc<ChordTable>>,
}

impl PartialEq for Polygon {
    fn eq(&self, other: &Polygon) -> bool {
        self.vertices == other.vertices
    }
}

impl Eq for Polygon {}

impl fmt::Debug for Polygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Polygon").field("vertices", &self.vertices).finish()
    }
}

impl Polygon {
    /// Wraps vertices already known to be valid and counter-clockwise.
    pub(crate) fn trusted(vertices: Vec<Point>) -> Polygon {
        debug_assert!(vertices.len() >= 3);
        Polygon { vertices, table: OnceLock::new() }
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Vertex `i` modulo `n`; negative offsets are handled by [`Polygon::at`].
    pub fn vertex(&self, i: usize) -> &Point {
        &self.vertices[i % self.n()]
    }

    /// Vertex at a signed index, modulo `n`.
    pub fn at(&self, i: isize) -> &Point {
        &self.vertices[i.rem_euclid(self.n() as isize) as usize]
    }

    pub fn into_vertices(self) -> Vec<Point> {
        self.vertices
    }

    /// Twice the signed area.
    pub fn area2(&self) -> QSqrt3 {
        signed_area2(&self.vertices)
    }

    /// Sub-polygon on the given parent indices, which must come from a
    /// subdivision of `self` (so validity is inherited).
    pub(crate) fn part(&self, idx: &[usize]) -> Polygon {
        Polygon::trusted(idx.iter().map(|&i| self.vertices[i].clone()).collect())
    }

    pub fn chords(&self) -> &ChordTable {
        self.table.get_or_init(|| Arc::new(ChordTable::new(self)))
    }

    pub fn is_reflex(&self, i: usize) -> bool {
        let i = i as isize;
        orientation(self.at(i - 1), self.at(i), self.at(i + 1)) < 0
    }
}

fn signed_area2(v: &[Point]) -> QSqrt3 {
    let mut acc = QSqrt3::zero();
    for i in 0..v.len() {
        acc = &acc + &cross(&v[i], &v[(i + 1) % v.len()]);
    }
    acc
}

/// Checks simplicity and general position and normalizes to counter-clockwise
/// order. A clockwise input is reversed keeping vertex 0 first.
pub fn validate_polygon(vertices: Vec<Point>) -> Result<Polygon, Error> {
    let n = vertices.len();
    if n < 3 {
        return Err(Error::TooFewVertices(n));
    }
    for i in 0..n {
        for j in i + 1..n {
            if vertices[i] == vertices[j] {
                return Err(Error::DuplicateVertex(i, j));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if orientation(&vertices[i], &vertices[j], &vertices[k]) == 0 {
                    return Err(Error::CollinearTriple(i, j, k));
                }
            }
        }
    }
    // With no collinear triples, two edges can only meet by crossing properly.
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let e1 = Segment::new(vertices[i].clone(), vertices[(i + 1) % n].clone());
            let e2 = Segment::new(vertices[j].clone(), vertices[(j + 1) % n].clone());
            if segments_properly_cross(&e1, &e2) {
                return Err(Error::SelfIntersection((i, (i + 1) % n), (j, (j + 1) % n)));
            }
        }
    }
    let mut vertices = vertices;
    if signed_area2(&vertices).sign() < 0 {
        vertices[1..].reverse();
    }
    Ok(Polygon::trusted(vertices))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Inside,
    Outside,
}

/// Even-odd test along a ray from `pt`. The ray starts along `+x`; if it would
/// pass through a vertex, the direction is tilted to slope `1/k` for
/// `k = 1, 2, ...` until it is clean.
pub fn point_in_polygon(pt: &Point, poly: &Polygon) -> Result<Location, Error> {
    let v = poly.vertices();
    let n = v.len();
    for i in 0..n {
        if on_segment(pt, &v[i], &v[(i + 1) % n]) {
            return Err(Error::OnBoundary);
        }
    }
    let mut k: i64 = 0;
    loop {
        // k = 0 encodes the horizontal ray.
        let d = if k == 0 { Point::int(1, 0) } else { Point::int(k, 1) };
        let ahead = pt.add(&d);
        let hits_vertex = v
            .iter()
            .any(|p| orientation(pt, &ahead, p) == 0 && dot(&p.sub(pt), &d).sign() > 0);
        if hits_vertex {
            k += 1;
            continue;
        }
        let mut count = 0usize;
        for i in 0..n {
            let (a, b) = (&v[i], &v[(i + 1) % n]);
            let oa = orientation(pt, &ahead, a);
            let ob = orientation(pt, &ahead, b);
            if oa * ob >= 0 {
                continue;
            }
            // Intersection parameter t along the ray has the sign of
            // cross(a - pt, b - a) / cross(d, b - a).
            let e = b.sub(a);
            let t_sign = cross(&a.sub(pt), &e).sign() * cross(&d, &e).sign();
            if t_sign > 0 {
                count += 1;
            }
        }
        return Ok(if count % 2 == 1 { Location::Inside } else { Location::Outside });
    }
}

pub fn reflex_vertices(poly: &Polygon) -> Vec<usize> {
    (0..poly.n()).filter(|&i| poly.is_reflex(i)).collect()
}

pub fn is_convex(poly: &Polygon) -> bool {
    (0..poly.n()).all(|i| !poly.is_reflex(i))
}

/// Input indices of the hull vertices in counter-clockwise order, starting
/// from the lowest-then-leftmost point. Points on a hull edge are dropped.
pub fn convex_hull_indices(points: &[Point]) -> Result<Vec<usize>, Error> {
    if points.len() < 3 {
        return Err(Error::TooFewVertices(points.len()));
    }
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| {
        (&points[a].y, &points[a].x)
            .cmp(&(&points[b].y, &points[b].x))
    });
    idx.dedup_by(|a, b| points[*a] == points[*b]);
    // Monotone chain over the (y, x) order: right chain then left chain.
    let mut hull: Vec<usize> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let seq: Vec<usize> = if pass == 0 { idx.clone() } else { idx.iter().rev().copied().collect() };
        for &p in &seq {
            while hull.len() >= start + 2
                && orientation(&points[hull[hull.len() - 2]], &points[hull[hull.len() - 1]], &points[p]) <= 0
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    if hull.len() < 3 {
        return Err(Error::AllCollinear);
    }
    Ok(hull)
}

/// Convex hull as a counter-clockwise polygon.
pub fn convex_hull(points: &[Point]) -> Result<Polygon, Error> {
    let idx = convex_hull_indices(points)?;
    Ok(Polygon::trusted(idx.into_iter().map(|i| points[i].clone()).collect()))
}
