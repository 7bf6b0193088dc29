//! Chords of a polygon, their classification, and chord sets.
//!
//! The chord universe of an `n`-gon depends only on `n`: all pairs `(i, j)`
//! with `i < j` that are not polygon edges, in lexicographic order. A
//! [`ChordSet`] is a bit vector over that order, so two sets over the same
//! polygon always agree on bit positions.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::geometry::{orientation, point_in_polygon, Location, Polygon};
use crate::nc_euler::CrossingGraph;
use crate::Error;

/// A chord `A_i A_j` in canonical form `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chord {
    pub i: usize,
    pub j: usize,
}

impl Chord {
    /// Canonical chord between two vertex indices, in either order.
    pub fn new(a: usize, b: usize) -> Chord {
        Chord { i: a.min(b), j: a.max(b) }
    }

    pub fn touches(&self, v: usize) -> bool {
        self.i == v || self.j == v
    }

    pub fn shares_endpoint(&self, o: &Chord) -> bool {
        self.touches(o.i) || self.touches(o.j)
    }
}

impl fmt::Display for Chord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.i, self.j)
    }
}

impl FromStr for Chord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Chord, Error> {
        let bad = || Error::Parse(format!("not a chord: {s:?}"));
        let (a, b) = s.trim().split_once('-').ok_or_else(bad)?;
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        if a == b {
            return Err(bad());
        }
        Ok(Chord::new(a, b))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChordKind {
    Diagonal,
    Epigonal,
    BoundaryCrossing,
}

/// All chords of an `n`-gon in lexicographic order.
#[derive(Debug, PartialEq, Eq)]
pub struct Universe {
    n: usize,
    chords: Vec<Chord>,
    index: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl Universe {
    pub fn new(n: usize) -> Universe {
        let mut chords = Vec::new();
        let mut index = vec![NONE; n * n];
        for i in 0..n {
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                index[i * n + j] = chords.len() as u32;
                index[j * n + i] = chords.len() as u32;
                chords.push(Chord { i, j });
            }
        }
        Universe { n, chords, index }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.chords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chords.is_empty()
    }

    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    pub fn chord(&self, pos: usize) -> Chord {
        self.chords[pos]
    }

    /// Position of the chord between `a` and `b`, if they are non-adjacent.
    pub fn position(&self, a: usize, b: usize) -> Option<usize> {
        if a >= self.n || b >= self.n {
            return None;
        }
        match self.index[a * self.n + b] {
            NONE => None,
            p => Some(p as usize),
        }
    }
}

/// A subset of the chord universe of one polygon size.
#[derive(Clone)]
pub struct ChordSet {
    universe: Arc<Universe>,
    bits: FixedBitSet,
}

impl PartialEq for ChordSet {
    fn eq(&self, o: &ChordSet) -> bool {
        self.universe.n == o.universe.n && self.bits == o.bits
    }
}

impl Eq for ChordSet {}

impl std::hash::Hash for ChordSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.universe.n.hash(state);
        self.bits.hash(state);
    }
}

impl fmt::Debug for ChordSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ChordSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, c) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

impl ChordSet {
    pub fn empty(universe: Arc<Universe>) -> ChordSet {
        let bits = FixedBitSet::with_capacity(universe.len());
        ChordSet { universe, bits }
    }

    pub fn full(universe: Arc<Universe>) -> ChordSet {
        let mut s = ChordSet::empty(universe);
        s.bits.insert_range(..);
        s
    }

    /// Set from explicit chords; fails on an edge or out-of-range chord.
    pub fn from_chords(
        universe: Arc<Universe>,
        chords: impl IntoIterator<Item = Chord>,
    ) -> Result<ChordSet, Error> {
        let mut s = ChordSet::empty(universe);
        for c in chords {
            s.insert(c)?;
        }
        Ok(s)
    }

    pub(crate) fn from_bits(universe: Arc<Universe>, bits: FixedBitSet) -> ChordSet {
        debug_assert_eq!(bits.len(), universe.len());
        ChordSet { universe, bits }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn insert(&mut self, c: Chord) -> Result<(), Error> {
        let p = self.universe.position(c.i, c.j).ok_or_else(|| {
            if c.j >= self.universe.n {
                Error::IndexOutOfRange { index: c.j, n: self.universe.n }
            } else {
                Error::Parse(format!("{c} is a polygon edge, not a chord"))
            }
        })?;
        self.bits.insert(p);
        Ok(())
    }

    pub fn contains(&self, c: &Chord) -> bool {
        self.universe.position(c.i, c.j).is_some_and(|p| self.bits.contains(p))
    }

    pub fn contains_pos(&self, p: usize) -> bool {
        self.bits.contains(p)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn iter(&self) -> impl Iterator<Item = Chord> + '_ {
        self.bits.ones().map(|p| self.universe.chord(p))
    }

    pub fn to_vec(&self) -> Vec<Chord> {
        self.iter().collect()
    }

    fn check(&self, o: &ChordSet) {
        assert_eq!(self.universe.n, o.universe.n, "chord sets over different polygons");
    }

    pub fn union(&self, o: &ChordSet) -> ChordSet {
        self.check(o);
        let mut bits = self.bits.clone();
        bits.union_with(&o.bits);
        ChordSet { universe: self.universe.clone(), bits }
    }

    pub fn intersection(&self, o: &ChordSet) -> ChordSet {
        self.check(o);
        let mut bits = self.bits.clone();
        bits.intersect_with(&o.bits);
        ChordSet { universe: self.universe.clone(), bits }
    }

    pub fn difference(&self, o: &ChordSet) -> ChordSet {
        self.check(o);
        let mut bits = self.bits.clone();
        bits.difference_with(&o.bits);
        ChordSet { universe: self.universe.clone(), bits }
    }

    pub fn is_subset(&self, o: &ChordSet) -> bool {
        self.check(o);
        self.bits.is_subset(&o.bits)
    }
}

/// Per-polygon cache: vertex orientation table, chord kinds and the chord
/// crossing relation. Reached through [`Polygon::chords`].
pub struct ChordTable {
    n: usize,
    universe: Arc<Universe>,
    orient: Vec<i8>,
    kinds: Vec<ChordKind>,
    crossings: Vec<FixedBitSet>,
}

impl ChordTable {
    pub(crate) fn new(p: &Polygon) -> ChordTable {
        let n = p.n();
        let v = p.vertices();
        let mut orient = vec![0i8; n * n * n];
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let s = orientation(&v[a], &v[b], &v[c]);
                    for (x, y, z, sg) in [
                        (a, b, c, s),
                        (b, c, a, s),
                        (c, a, b, s),
                        (b, a, c, -s),
                        (a, c, b, -s),
                        (c, b, a, -s),
                    ] {
                        orient[(x * n + y) * n + z] = sg;
                    }
                }
            }
        }
        let universe = Arc::new(Universe::new(n));
        let mut t = ChordTable {
            n,
            universe: universe.clone(),
            orient,
            kinds: Vec::new(),
            crossings: Vec::new(),
        };
        let m = universe.len();
        let mut crossings = vec![FixedBitSet::with_capacity(m); m];
        for x in 0..m {
            for y in x + 1..m {
                if t.cross(universe.chord(x), universe.chord(y)) {
                    crossings[x].insert(y);
                    crossings[y].insert(x);
                }
            }
        }
        t.kinds = universe.chords().iter().map(|&c| t.kind_of(p, c)).collect();
        t.crossings = crossings;
        t
    }

    fn o(&self, a: usize, b: usize, c: usize) -> i8 {
        self.orient[(a * self.n + b) * self.n + c]
    }

    /// Orientation of three vertices, read from the table.
    pub fn orientation(&self, a: usize, b: usize, c: usize) -> i8 {
        self.o(a, b, c)
    }

    /// Proper crossing of two vertex-to-vertex segments.
    pub fn cross(&self, s: Chord, t: Chord) -> bool {
        if s.shares_endpoint(&t) {
            return false;
        }
        self.o(s.i, s.j, t.i) * self.o(s.i, s.j, t.j) < 0
            && self.o(t.i, t.j, s.i) * self.o(t.i, t.j, s.j) < 0
    }

    fn kind_of(&self, p: &Polygon, c: Chord) -> ChordKind {
        let n = self.n;
        let hits_edge = (0..n).any(|e| self.cross(c, Chord::new(e, (e + 1) % n)));
        if hits_edge {
            return ChordKind::BoundaryCrossing;
        }
        let mid = p.vertex(c.i).midpoint(p.vertex(c.j));
        match point_in_polygon(&mid, p) {
            Ok(Location::Inside) => ChordKind::Diagonal,
            Ok(Location::Outside) => ChordKind::Epigonal,
            Err(_) => unreachable!("general position keeps chord midpoints off the boundary"),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn kind(&self, c: Chord) -> ChordKind {
        self.kinds[self.universe.position(c.i, c.j).expect("chord of this polygon")]
    }

    pub fn kind_at(&self, pos: usize) -> ChordKind {
        self.kinds[pos]
    }

    pub fn crosses_pos(&self, x: usize, y: usize) -> bool {
        self.crossings[x].contains(y)
    }

    pub fn empty(&self) -> ChordSet {
        ChordSet::empty(self.universe.clone())
    }

    pub fn all(&self) -> ChordSet {
        ChordSet::full(self.universe.clone())
    }

    pub fn of_kind(&self, k: ChordKind) -> ChordSet {
        let mut bits = FixedBitSet::with_capacity(self.universe.len());
        for (p, &kk) in self.kinds.iter().enumerate() {
            if kk == k {
                bits.insert(p);
            }
        }
        ChordSet::from_bits(self.universe.clone(), bits)
    }

    pub fn set(&self, chords: impl IntoIterator<Item = Chord>) -> Result<ChordSet, Error> {
        ChordSet::from_chords(self.universe.clone(), chords)
    }

    /// Whether the members of `s` are pairwise non-crossing.
    pub fn is_non_crossing(&self, s: &ChordSet) -> bool {
        let pos: Vec<usize> = s.positions().collect();
        pos.iter().all(|&x| !self.crossings[x].ones().any(|y| s.contains_pos(y)))
    }

    /// First crossing pair inside `s`, for error reporting.
    pub fn crossing_pair(&self, s: &ChordSet) -> Option<(Chord, Chord)> {
        for x in s.positions() {
            if let Some(y) = self.crossings[x].ones().find(|&y| s.contains_pos(y)) {
                return Some((self.universe.chord(x), self.universe.chord(y)));
            }
        }
        None
    }

    /// Crossing graph induced on `s`; graph vertex `k` is the `k`-th member of
    /// `s` in universe order.
    pub fn crossing_graph(&self, s: &ChordSet) -> CrossingGraph {
        let pos: Vec<usize> = s.positions().collect();
        let edges = (0..pos.len()).flat_map(|a| {
            let pos = &pos;
            (a + 1..pos.len())
                .filter(move |&b| self.crossings[pos[a]].contains(pos[b]))
                .map(move |b| (a, b))
        });
        CrossingGraph::from_edges(pos.len(), edges)
    }
}

pub fn classify_chord(p: &Polygon, c: Chord) -> Result<ChordKind, Error> {
    if p.chords().universe().position(c.i, c.j).is_none() {
        return Err(Error::Precondition(format!("{c} is not a chord of this {}-gon", p.n())));
    }
    Ok(p.chords().kind(c))
}

/// `M_d`: chords lying in the interior.
pub fn diagonals(p: &Polygon) -> ChordSet {
    p.chords().of_kind(ChordKind::Diagonal)
}

/// `M_e`: chords lying in the exterior.
pub fn epigonals(p: &Polygon) -> ChordSet {
    p.chords().of_kind(ChordKind::Epigonal)
}

/// Diagonals leaving a positive multiple of `a` vertices on each side, for a
/// polygon with `a(m+1)+2` vertices.
pub fn a_diagonals(p: &Polygon, a: usize) -> Result<ChordSet, Error> {
    let n = p.n();
    if a == 0 || (n - 2) % a != 0 || n - 2 < a {
        return Err(Error::BadADiagonalSize { n, a });
    }
    let d = diagonals(p);
    let keep = d.iter().filter(|c| {
        let inner = c.j - c.i - 1;
        let outer = n - 2 - inner;
        inner % a == 0 && inner >= a && outer >= a
    });
    p.chords().set(keep.collect::<Vec<_>>())
}

fn check_vertex(p: &Polygon, i: usize, op: &'static str, min: usize) -> Result<(), Error> {
    if p.n() < min {
        return Err(Error::PolygonTooSmall { op, n: p.n(), min });
    }
    if i >= p.n() {
        return Err(Error::IndexOutOfRange { index: i, n: p.n() });
    }
    Ok(())
}

/// Every chord at vertex `i`.
pub fn forbidden_star(p: &Polygon, i: usize) -> Result<ChordSet, Error> {
    check_vertex(p, i, "forbidden_star", 5)?;
    let n = p.n();
    p.chords().set((2..n - 1).map(|k| Chord::new(i, (i + k) % n)))
}

/// The single chord `(i-1, i+1)` cutting off vertex `i`.
pub fn ear_chord(p: &Polygon, i: usize) -> Result<ChordSet, Error> {
    check_vertex(p, i, "ear_chord", 4)?;
    let n = p.n();
    p.chords().set([Chord::new((i + n - 1) % n, (i + 1) % n)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::convex_ngon;
    use crate::geometry::{validate_polygon, Point};

    fn dart() -> Polygon {
        validate_polygon([(0, 0), (4, 0), (1, 1), (0, 4)].map(|(x, y)| Point::int(x, y)).to_vec()).unwrap()
    }

    fn chords(s: &ChordSet) -> Vec<(usize, usize)> {
        s.iter().map(|c| (c.i, c.j)).collect()
    }

    #[test]
    fn dart_classification() {
        let d = dart();
        assert_eq!(classify_chord(&d, Chord::new(0, 2)), Ok(ChordKind::Diagonal));
        assert_eq!(classify_chord(&d, Chord::new(1, 3)), Ok(ChordKind::Epigonal));
        assert_eq!(chords(&diagonals(&d)), vec![(0, 2)]);
        assert_eq!(chords(&epigonals(&d)), vec![(1, 3)]);
        assert!(classify_chord(&d, Chord::new(0, 1)).is_err());
    }

    #[test]
    fn convex_counts() {
        let p = convex_ngon(5).unwrap();
        assert_eq!(diagonals(&p).len(), 5);
        assert!(epigonals(&p).is_empty());
        let t = convex_ngon(3).unwrap();
        assert!(diagonals(&t).is_empty() && epigonals(&t).is_empty());
    }

    #[test]
    fn a_diagonal_examples() {
        let hex = convex_ngon(6).unwrap();
        assert_eq!(chords(&a_diagonals(&hex, 2).unwrap()), vec![(0, 3), (1, 4), (2, 5)]);
        let oct = convex_ngon(8).unwrap();
        let s = a_diagonals(&oct, 2).unwrap();
        assert_eq!(s.len(), 8);
        assert!(s.iter().all(|c| c.j - c.i == 3 || c.j - c.i == 5));
        assert_eq!(a_diagonals(&oct, 1).unwrap(), diagonals(&oct));
        assert!(matches!(a_diagonals(&convex_ngon(7).unwrap(), 2), Err(Error::BadADiagonalSize { .. })));
    }

    #[test]
    fn star_and_ear() {
        let p5 = convex_ngon(5).unwrap();
        assert_eq!(chords(&forbidden_star(&p5, 0).unwrap()), vec![(0, 2), (0, 3)]);
        let p7 = convex_ngon(7).unwrap();
        assert_eq!(chords(&forbidden_star(&p7, 3).unwrap()), vec![(0, 3), (1, 3), (3, 5), (3, 6)]);
        let p6 = convex_ngon(6).unwrap();
        assert_eq!(chords(&ear_chord(&p6, 0).unwrap()), vec![(1, 5)]);
        assert!(forbidden_star(&dart(), 0).is_err());
        assert!(ear_chord(&p6, 6).is_err());
    }

    #[test]
    fn chord_text() {
        assert_eq!("5-2".parse::<Chord>().unwrap(), Chord::new(2, 5));
        assert_eq!(Chord::new(2, 5).to_string(), "2-5");
        assert!("3-3".parse::<Chord>().is_err());
        assert!("a-b".parse::<Chord>().is_err());
    }
}
