//! Non-crossing families and their Euler characteristic.
//!
//! A family `NC[M]` is an independent set of the crossing graph of `M`, so
//! `chi(M)` is the independence polynomial of that graph at `-1`. Two
//! independent evaluations are provided: the alternating sum of the f-vector
//! ([`euler_brute`]) and the deletion recursion
//! `chi(A) = chi(A - v) - chi(A_v)` ([`euler_recursive`]), where `A_v` drops
//! `v` and everything crossing it.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rustc_hash::FxHashMap;

use crate::chords::{diagonals, epigonals, Chord, ChordKind, ChordSet};
use crate::geometry::{convex_hull_indices, is_convex, reflex_vertices, segments_properly_cross, Point, Polygon, Segment};
use crate::mask::{dispatch, Mask};
use crate::Error;

/// Simple undirected graph on `0..len`, one vertex per segment, edges between
/// properly crossing segments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingGraph {
    adj: Vec<Vec<usize>>,
}

impl CrossingGraph {
    pub fn from_edges(m: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> CrossingGraph {
        let mut adj = vec![Vec::new(); m];
        for (a, b) in edges {
            if a != b && !adj[a].contains(&b) {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        CrossingGraph { adj }
    }

    /// Crossing graph of explicit segments, tested pairwise.
    pub fn from_segments(segs: &[Segment]) -> CrossingGraph {
        let m = segs.len();
        let edges = (0..m).flat_map(|a| {
            (a + 1..m).filter(move |&b| segments_properly_cross(&segs[a], &segs[b])).map(move |b| (a, b))
        });
        CrossingGraph::from_edges(m, edges)
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    fn masks<M: Mask>(&self) -> Vec<M> {
        self.adj
            .iter()
            .map(|l| l.iter().fold(M::empty(), |acc, &b| acc.or(M::bit(b))))
            .collect()
    }
}

/// `[f_0, f_1, ...]` with trailing zeros trimmed; `f_0 = 1` always.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FVector(Vec<BigInt>);

impl FVector {
    pub fn new(mut counts: Vec<BigInt>) -> FVector {
        while counts.len() > 1 && counts.last().is_some_and(|c| c.is_zero()) {
            counts.pop();
        }
        FVector(counts)
    }

    pub fn counts(&self) -> &[BigInt] {
        &self.0
    }

    pub fn get(&self, i: usize) -> BigInt {
        self.0.get(i).cloned().unwrap_or_default()
    }

    /// `sum (-1)^i f_i`.
    pub fn euler(&self) -> BigInt {
        self.0
            .iter()
            .enumerate()
            .fold(BigInt::zero(), |acc, (i, c)| if i % 2 == 0 { acc + c } else { acc - c })
    }

    /// `f_1 - f_2 + f_3 - ...`, the form used in Lee's identity; equals
    /// `1 - chi`.
    pub fn alternating_from_one(&self) -> BigInt {
        BigInt::one() - self.euler()
    }

    pub fn to_u64s(&self) -> Option<Vec<u64>> {
        self.0.iter().map(|c| c.to_u64()).collect()
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Counts every non-crossing family by size, branching include/exclude over
/// the vertices in index order. Each family is visited once.
pub fn f_vector(g: &CrossingGraph) -> Result<FVector, Error> {
    dispatch!(g.len(), M => {
        let adj = g.masks::<M>();
        let mut counts = vec![0u128; g.len() + 1];
        count_families::<M>(&adj, M::first(g.len()), 0, &mut counts);
        FVector::new(counts.into_iter().map(BigInt::from).collect())
    })
}

fn count_families<M: Mask>(adj: &[M], avail: M, size: usize, counts: &mut [u128]) {
    match avail.lowest() {
        None => counts[size] += 1,
        Some(v) => {
            let rest = avail.andnot(M::bit(v));
            count_families(adj, rest.andnot(adj[v]), size + 1, counts);
            count_families(adj, rest, size, counts);
        }
    }
}

/// Alternating sum of the f-vector.
pub fn euler_brute(g: &CrossingGraph) -> Result<BigInt, Error> {
    Ok(f_vector(g)?.euler())
}

/// Deletion recursion with connected-component factorization and
/// memoization on the live vertex set. The pivot is a vertex of maximum live
/// degree, lowest index first.
pub fn euler_recursive(g: &CrossingGraph) -> Result<BigInt, Error> {
    dispatch!(g.len(), M => {
        let adj = g.masks::<M>();
        let live = M::first(g.len());
        // Small values stay in machine words; on overflow start over exactly.
        match Euler::<M, i128>::new(&adj).chi(live) {
            Some(v) => BigInt::from(v),
            None => Euler::<M, BigInt>::new(&adj).chi(live).expect("big integers do not overflow"),
        }
    })
}

trait Value: Clone {
    fn unit() -> Self;
    fn nil() -> Self;
    fn is_nil(&self) -> bool;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
}

impl Value for i128 {
    fn unit() -> Self {
        1
    }
    fn nil() -> Self {
        0
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
}

impl Value for BigInt {
    fn unit() -> Self {
        One::one()
    }
    fn nil() -> Self {
        Zero::zero()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
}

struct Euler<'a, M, V> {
    adj: &'a [M],
    memo: FxHashMap<M, V>,
}

impl<'a, M: Mask, V: Value> Euler<'a, M, V> {
    fn new(adj: &'a [M]) -> Self {
        Euler { adj, memo: FxHashMap::default() }
    }

    fn component(&self, live: M, start: usize) -> M {
        let mut comp = M::bit(start);
        let mut frontier = comp;
        while let Some(v) = frontier.lowest() {
            frontier = frontier.andnot(M::bit(v));
            let fresh = self.adj[v].and(live).andnot(comp);
            comp = comp.or(fresh);
            frontier = frontier.or(fresh);
        }
        comp
    }

    fn chi(&mut self, live: M) -> Option<V> {
        let Some(first) = live.lowest() else {
            return Some(V::unit());
        };
        if let Some(v) = self.memo.get(&live) {
            return Some(v.clone());
        }
        let comp = self.component(live, first);
        let value = if comp != live {
            // chi of a disjoint union is the product over components.
            let mut acc = V::unit();
            let mut rest = live;
            while let Some(s) = rest.lowest() {
                let c = if s == first { comp } else { self.component(rest, s) };
                rest = rest.andnot(c);
                acc = acc.mul(&self.chi(c)?)?;
                if acc.is_nil() {
                    break;
                }
            }
            acc
        } else if live.count() == 1 {
            V::nil()
        } else {
            let mut pivot = first;
            let mut best = 0;
            for v in live.ones() {
                let d = self.adj[v].and(live).count();
                if d > best {
                    best = d;
                    pivot = v;
                }
            }
            let without = live.andnot(M::bit(pivot));
            let a = self.chi(without)?;
            let b = self.chi(without.andnot(self.adj[pivot]))?;
            a.sub(&b)?
        };
        self.memo.insert(live, value.clone());
        Some(value)
    }
}

/// Enumerates maximal independent sets and reports whether every one of
/// them meets `h` (a list of graph vertices).
fn every_maximal_meets(g: &CrossingGraph, h: &[usize]) -> Result<bool, Error> {
    dispatch!(g.len(), M => {
        let adj = g.masks::<M>();
        let hm = h.iter().fold(M::empty(), |acc, &v| acc.or(M::bit(v)));
        let all = M::first(g.len());
        maximal_meet::<M>(&adj, all, M::empty(), M::empty(), all, hm)
    })
}

/// Depth-first over index order. `chosen` is the current family, `blocked`
/// the vertices adjacent to it; a leaf is maximal when every unchosen vertex
/// is blocked.
fn maximal_meet<M: Mask>(adj: &[M], avail: M, chosen: M, blocked: M, all: M, h: M) -> bool {
    match avail.lowest() {
        None => {
            let maximal = all.andnot(chosen).andnot(blocked).is_empty();
            !maximal || !chosen.and(h).is_empty()
        }
        Some(v) => {
            let rest = avail.andnot(M::bit(v));
            maximal_meet(adj, rest.andnot(adj[v]), chosen.or(M::bit(v)), blocked.or(adj[v]), all, h)
                && maximal_meet(adj, rest, chosen, blocked, all, h)
        }
    }
}

/// Every non-crossing subset of `s`, in include-first depth-first order.
/// Errors once more than `cap` subsets have been produced.
pub fn non_crossing_subsets(p: &Polygon, s: &ChordSet, cap: usize) -> Result<Vec<ChordSet>, Error> {
    let members = s.to_vec();
    let t = p.chords();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn go(
        k: usize,
        members: &[Chord],
        t: &crate::chords::ChordTable,
        chosen: &mut Vec<Chord>,
        out: &mut Vec<ChordSet>,
        cap: usize,
    ) -> Result<(), Error> {
        if k == members.len() {
            if out.len() == cap {
                return Err(Error::TooLarge { what: "non-crossing subsets", size: cap + 1, cap });
            }
            out.push(t.set(chosen.iter().copied())?);
            return Ok(());
        }
        let c = members[k];
        if chosen.iter().all(|&d| !t.cross(c, d)) {
            chosen.push(c);
            go(k + 1, members, t, chosen, out, cap)?;
            chosen.pop();
        }
        go(k + 1, members, t, chosen, out, cap)
    }
    go(0, &members, t, &mut chosen, &mut out, cap)?;
    Ok(out)
}

/// `chi` of a chord set of `p`.
pub fn chi(p: &Polygon, s: &ChordSet) -> Result<BigInt, Error> {
    euler_recursive(&p.chords().crossing_graph(s))
}

/// f-vector of a chord set of `p`.
pub fn chord_f_vector(p: &Polygon, s: &ChordSet) -> Result<FVector, Error> {
    f_vector(&p.chords().crossing_graph(s))
}

/// Whether every non-crossing family of `m` extends to one meeting `h`.
/// Checked on maximal families, which is equivalent since every family
/// extends to a maximal one.
pub fn is_heart(p: &Polygon, m: &ChordSet, h: &ChordSet) -> Result<bool, Error> {
    if !h.is_subset(m) {
        return Err(Error::NotSubset);
    }
    if let Some((a, b)) = p.chords().crossing_pair(h) {
        return Err(Error::Crossing(a.to_string(), b.to_string()));
    }
    let members: Vec<usize> = m.positions().collect();
    let local: Vec<usize> = h.positions().map(|q| members.binary_search(&q).expect("subset")).collect();
    every_maximal_meets(&p.chords().crossing_graph(m), &local)
}

/// Which chord family a computation refers to: diagonals or epigonals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    D,
    E,
}

impl Side {
    pub fn family(self, p: &Polygon) -> ChordSet {
        match self {
            Side::D => diagonals(p),
            Side::E => epigonals(p),
        }
    }
}

/// Hull edges of `p` that are not polygon edges, as chords, in hull order.
pub fn hull_epigonals(p: &Polygon) -> Vec<Chord> {
    let hull = convex_hull_indices(p.vertices()).expect("valid polygons are not collinear");
    let n = p.n();
    let k = hull.len();
    (0..k)
        .map(|t| (hull[t], hull[(t + 1) % k]))
        .filter(|&(a, b)| (a + 1) % n != b && (b + 1) % n != a)
        .map(|(a, b)| Chord::new(a, b))
        .collect()
}

/// The two hearts used for non-convex polygons: the diagonals at the first
/// reflex vertex, or the first hull edge that is an epigonal. Convex polygons
/// get none.
pub fn find_heart(p: &Polygon, side: Side) -> Option<ChordSet> {
    if is_convex(p) {
        return None;
    }
    let t = p.chords();
    match side {
        Side::D => {
            let r = reflex_vertices(p)[0];
            let d = diagonals(p);
            Some(t.set(d.iter().filter(|c| c.touches(r)).collect::<Vec<_>>()).expect("chords of p"))
        }
        Side::E => {
            let c = hull_epigonals(p).into_iter().find(|&c| t.kind(c) == ChordKind::Epigonal)?;
            Some(t.set([c]).expect("chord of p"))
        }
    }
}

fn point_index(f: &[Point], q: &Point) -> Result<usize, Error> {
    f.iter().position(|x| x == q).ok_or(Error::EndpointNotInFamily)
}

/// Segments as index pairs into `f`, deduplicated.
fn segment_indices(f: &[Point], s: &[Segment]) -> Result<Vec<(usize, usize)>, Error> {
    let mut out = Vec::new();
    for seg in s {
        let (a, b) = (point_index(f, &seg.a)?, point_index(f, &seg.b)?);
        if a == b {
            return Err(Error::Precondition("degenerate segment".into()));
        }
        let e = (a.min(b), a.max(b));
        if !out.contains(&e) {
            out.push(e);
        }
    }
    Ok(out)
}

/// `chi` of an arbitrary segment family with endpoints in `f`.
pub fn chi_point_family(f: &[Point], s: &[Segment]) -> Result<BigInt, Error> {
    let idx = segment_indices(f, s)?;
    let segs: Vec<Segment> = idx.iter().map(|&(a, b)| Segment::new(f[a].clone(), f[b].clone())).collect();
    euler_recursive(&CrossingGraph::from_segments(&segs))
}

/// Whether `s` contains an edge of the convex hull of `f`.
pub fn hull_edge_in(f: &[Point], s: &[Segment]) -> Result<bool, Error> {
    let idx = segment_indices(f, s)?;
    let hull = convex_hull_indices(f)?;
    let k = hull.len();
    Ok((0..k).any(|t| {
        let (a, b) = (hull[t], hull[(t + 1) % k]);
        idx.contains(&(a.min(b), a.max(b)))
    }))
}

/// `|chi|` fits in a machine word for every family the campaigns produce;
/// helper for reports.
pub fn chi_to_i64(v: &BigInt) -> Option<i64> {
    if v.abs() > BigInt::from(i64::MAX) {
        None
    } else {
        v.to_i64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::convex_ngon;
    use crate::geometry::validate_polygon;

    fn dart() -> Polygon {
        validate_polygon([(0, 0), (4, 0), (1, 1), (0, 4)].map(|(x, y)| Point::int(x, y)).to_vec()).unwrap()
    }

    fn fv(p: &Polygon, s: &ChordSet) -> Vec<u64> {
        chord_f_vector(p, s).unwrap().to_u64s().unwrap()
    }

    #[test]
    fn convex_f_vectors() {
        let p5 = convex_ngon(5).unwrap();
        assert_eq!(fv(&p5, &diagonals(&p5)), vec![1, 5, 5]);
        let p6 = convex_ngon(6).unwrap();
        assert_eq!(fv(&p6, &diagonals(&p6)), vec![1, 9, 21, 14]);
        let sq = convex_ngon(4).unwrap();
        assert_eq!(chi(&sq, &diagonals(&sq)).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn small_graphs() {
        let single = CrossingGraph::from_edges(1, []);
        assert_eq!(f_vector(&single).unwrap().to_u64s().unwrap(), vec![1, 1]);
        let empty = CrossingGraph::from_edges(0, []);
        assert_eq!(f_vector(&empty).unwrap().to_u64s().unwrap(), vec![1]);
        assert_eq!(euler_recursive(&empty).unwrap(), BigInt::one());
        // A 5-cycle has independence polynomial 1 + 5x + 5x^2.
        let c5 = CrossingGraph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5)));
        assert_eq!(euler_brute(&c5).unwrap(), BigInt::one());
        assert_eq!(euler_recursive(&c5).unwrap(), BigInt::one());
    }

    #[test]
    fn dart_hearts() {
        let d = dart();
        let md = diagonals(&d);
        let me = epigonals(&d);
        assert_eq!(chi(&d, &md).unwrap(), BigInt::zero());
        assert_eq!(chi(&d, &me).unwrap(), BigInt::zero());
        assert_eq!(find_heart(&d, Side::D).unwrap().to_string(), "{0-2}");
        assert_eq!(find_heart(&d, Side::E).unwrap().to_string(), "{1-3}");
        assert!(is_heart(&d, &md, &md).unwrap());
        assert!(is_heart(&d, &me, &me).unwrap());
        assert!(find_heart(&convex_ngon(5).unwrap(), Side::D).is_none());
    }

    #[test]
    fn square_is_not_a_star() {
        let sq = convex_ngon(4).unwrap();
        let md = diagonals(&sq);
        let h = sq.chords().set([Chord::new(0, 2)]).unwrap();
        assert!(!is_heart(&sq, &md, &h).unwrap());
        assert_eq!(is_heart(&sq, &h, &md), Err(Error::NotSubset));
    }

    #[test]
    fn point_families() {
        let f: Vec<Point> = [(0, 0), (2, 0), (2, 2), (0, 2)].map(|(x, y)| Point::int(x, y)).to_vec();
        let seg = |a: usize, b: usize| Segment::new(f[a].clone(), f[b].clone());
        let diag = [seg(0, 2), seg(1, 3)];
        assert_eq!(chi_point_family(&f, &diag).unwrap(), BigInt::from(-1));
        assert!(!hull_edge_in(&f, &diag).unwrap());
        assert_eq!(chi_point_family(&f, &[seg(0, 1)]).unwrap(), BigInt::zero());
        assert!(hull_edge_in(&f, &[seg(0, 1)]).unwrap());
        let stray = Segment::new(Point::int(5, 5), f[0].clone());
        assert_eq!(chi_point_family(&f, &[stray]), Err(Error::EndpointNotInFamily));
    }
}
