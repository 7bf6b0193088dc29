//! Detectors for the six polygon classes relative to a vertex `i`, and the
//! verifiers for the alternating-sum characterization of convexity and the
//! four removal equivalences.
//!
//! The detectors use orientation predicates only and never compute an Euler
//! characteristic, so checking them against `chi` is a genuine cross-check.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::chords::{diagonals, ear_chord, epigonals, forbidden_star, Chord, ChordKind};
use crate::geometry::{is_convex, reflex_vertices, validate_polygon, Polygon};
use crate::nc_euler::{chord_f_vector, hull_epigonals, FVector, Side};
use crate::partition::{chi_removed_direct, pockets, Pocket};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PolyClass {
    Convex,
    Class1,
    Class2,
    Class3,
    Class4,
    Class5,
    Class6,
}

impl PolyClass {
    pub fn numbered(k: u8) -> Option<PolyClass> {
        Some(match k {
            1 => PolyClass::Class1,
            2 => PolyClass::Class2,
            3 => PolyClass::Class3,
            4 => PolyClass::Class4,
            5 => PolyClass::Class5,
            6 => PolyClass::Class6,
            _ => return None,
        })
    }
}

impl fmt::Display for PolyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyClass::Convex => write!(f, "convex"),
            c => write!(f, "class{}", *c as u8),
        }
    }
}

/// Evidence for a class membership.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// The reflex vertices (Classes 1, 2, 5).
    Reflex(Vec<usize>),
    /// The pockets, each a triangle or a Class 2 region at `i` (Class 3).
    Pockets(Vec<Pocket>),
    /// The ear chord and the convex part on its far side (Class 4).
    Ear { chord: Chord, far_part: Vec<usize> },
    /// The split of the fan at `i` (Class 6). `split` holds the two vertices
    /// bounding the unique angle above `pi`; the outer parts run from the
    /// neighbours of `i` to the split and either may be empty.
    Fan { split: (usize, usize), prefix: Vec<usize>, middle: Vec<usize>, suffix: Vec<usize>, empty_outer: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassReport {
    pub vertex: usize,
    pub memberships: BTreeSet<PolyClass>,
    pub witnesses: Vec<(PolyClass, Witness)>,
}

impl ClassReport {
    pub fn has(&self, c: PolyClass) -> bool {
        self.memberships.contains(&c)
    }
}

fn pre(p: &Polygon, i: usize) -> Result<(), Error> {
    if p.n() < 5 {
        return Err(Error::PolygonTooSmall { op: "class detection", n: p.n(), min: 5 });
    }
    if i >= p.n() {
        return Err(Error::IndexOutOfRange { index: i, n: p.n() });
    }
    Ok(())
}

/// Vertex `i + k` modulo `n`.
fn off(p: &Polygon, i: usize, k: isize) -> usize {
    (i as isize + k).rem_euclid(p.n() as isize) as usize
}

/// Whether the counter-clockwise angle at `a` from `x` to `y` exceeds `pi`.
fn ang(p: &Polygon, a: usize, x: usize, y: usize) -> bool {
    p.chords().orientation(a, x, y) < 0
}

fn class1(p: &Polygon, i: usize) -> Option<Witness> {
    let r = reflex_vertices(p);
    let ok = r == [i]
        && ang(p, i, off(p, i, 1), off(p, i, -1))
        && !ang(p, i, off(p, i, 2), off(p, i, -2))
        && ang(p, i, off(p, i, 2), off(p, i, -1)) == ang(p, i, off(p, i, 1), off(p, i, -2));
    ok.then_some(Witness::Reflex(r))
}

/// Class 2 test on any polygon with at least four vertices.
fn class2(p: &Polygon, i: usize) -> Option<Witness> {
    let r = reflex_vertices(p);
    let keep = [off(p, i, -1), i, off(p, i, 1)];
    let want: Vec<usize> = (0..p.n()).filter(|v| !keep.contains(v)).collect();
    (r == want).then_some(Witness::Reflex(r))
}

fn class3(p: &Polygon, i: usize) -> Option<Witness> {
    if is_convex(p) || p.is_reflex(i) {
        return None;
    }
    let hull = hull_epigonals(p);
    if hull.len() > 2 || hull.iter().any(|c| !c.touches(i)) {
        return None;
    }
    let pk = pockets(p);
    for pocket in &pk {
        if pocket.vertices.len() == 3 {
            continue;
        }
        let local = pocket.vertices.iter().position(|&v| v == i)?;
        class2(&p.part(&pocket.vertices), local)?;
    }
    Some(Witness::Pockets(pk))
}

fn class4(p: &Polygon, i: usize) -> Option<Witness> {
    if is_convex(p) {
        return None;
    }
    let n = p.n();
    let chord = Chord::new(off(p, i, -1), off(p, i, 1));
    if p.chords().kind(chord) != ChordKind::Diagonal {
        return None;
    }
    let far: Vec<usize> = (1..n).map(|k| off(p, i, k as isize)).collect();
    let part = p.part(&far);
    is_convex(&part).then_some(Witness::Ear { chord, far_part: far })
}

fn class5(p: &Polygon, i: usize) -> Option<Witness> {
    let r = reflex_vertices(p);
    if r != [i] {
        return None;
    }
    let rest: Vec<_> = (1..p.n()).map(|k| p.vertex(off(p, i, k as isize)).clone()).collect();
    let q = validate_polygon(rest.clone()).ok()?;
    (q.vertices() == rest.as_slice() && is_convex(&q)).then_some(Witness::Reflex(r))
}

fn class6(p: &Polygon, i: usize) -> Option<Witness> {
    let n = p.n();
    let t = p.chords();
    if (2..n - 1).any(|k| t.kind(Chord::new(i, off(p, i, k as isize))) != ChordKind::Diagonal) {
        return None;
    }
    if !p.is_reflex(i) {
        return None;
    }
    let jc: Vec<usize> = (2..n - 1).filter(|&k| p.is_reflex(off(p, i, k as isize))).collect();
    if jc.is_empty() {
        return None;
    }
    // Consecutive fan rays, bounded by the two neighbours of `i`.
    let mut rays = vec![1];
    rays.extend(&jc);
    rays.push(n - 1);
    let v = |k: usize| off(p, i, k as isize);
    let wide: Vec<(usize, usize)> =
        rays.windows(2).map(|w| (w[0], w[1])).filter(|&(a, b)| ang(p, i, v(a), v(b))).collect();
    let [(a, b)] = wide[..] else { return None };
    let expected: Vec<usize> = (2..=a).chain(b..=n - 2).collect();
    if jc != expected {
        return None;
    }
    let mut middle = vec![i];
    middle.extend((a..=b).map(v));
    let m = middle.len();
    if m < 4 {
        return None;
    }
    let mid = p.part(&middle);
    if reflex_vertices(&mid) != [0] {
        return None;
    }
    if m > 4 {
        // Class 1 angle profile of the middle polygon at its apex.
        let (b2, b3, bm1, bm) = (middle[1], middle[2], middle[m - 2], middle[m - 1]);
        if ang(p, i, b3, bm1) || ang(p, i, b3, bm) != ang(p, i, b2, bm1) {
            return None;
        }
    }
    let prefix: Vec<usize> = (1..=a).map(v).collect();
    let suffix: Vec<usize> = (b..n).map(v).collect();
    Some(Witness::Fan {
        split: (v(a), v(b)),
        empty_outer: a == 1 || b == n - 1,
        prefix,
        middle,
        suffix,
    })
}

/// Membership in the class numbered `k` (1 to 6) at vertex `i`.
pub fn is_class(p: &Polygon, i: usize, k: u8) -> Result<bool, Error> {
    match k {
        1 => is_class1(p, i),
        2 => is_class2(p, i),
        3 => is_class3(p, i),
        4 => is_class4(p, i),
        5 => is_class5(p, i),
        6 => is_class6(p, i),
        _ => Err(Error::Precondition(format!("no class {k}"))),
    }
}

pub fn is_class1(p: &Polygon, i: usize) -> Result<bool, Error> {
    pre(p, i)?;
    Ok(class1(p, i).is_some())
}

/// Class 2 membership. Also accepts quadrilaterals, where the class reduces
/// to a single reflex vertex opposite `i`.
pub fn is_class2(p: &Polygon, i: usize) -> Result<bool, Error> {
    if p.n() == 4 && i < 4 {
        return Ok(class2(p, i).is_some());
    }
    pre(p, i)?;
    Ok(class2(p, i).is_some())
}

pub fn is_class3(p: &Polygon, i: usize) -> Result<bool, Error> {
    pre(p, i)?;
    Ok(class3(p, i).is_some())
}

pub fn is_class4(p: &Polygon, i: usize) -> Result<bool, Error> {
    pre(p, i)?;
    Ok(class4(p, i).is_some())
}

pub fn is_class5(p: &Polygon, i: usize) -> Result<bool, Error> {
    pre(p, i)?;
    Ok(class5(p, i).is_some())
}

pub fn is_class6(p: &Polygon, i: usize) -> Result<bool, Error> {
    pre(p, i)?;
    Ok(class6(p, i).is_some())
}

type Detector = fn(&Polygon, usize) -> Option<Witness>;

pub fn classify(p: &Polygon, i: usize) -> Result<ClassReport, Error> {
    pre(p, i)?;
    let mut memberships = BTreeSet::new();
    let mut witnesses = Vec::new();
    if is_convex(p) {
        memberships.insert(PolyClass::Convex);
    }
    let detectors: [(PolyClass, Detector); 6] = [
        (PolyClass::Class1, class1),
        (PolyClass::Class2, class2),
        (PolyClass::Class3, class3),
        (PolyClass::Class4, class4),
        (PolyClass::Class5, class5),
        (PolyClass::Class6, class6),
    ];
    for (c, f) in detectors {
        if let Some(w) = f(p, i) {
            memberships.insert(c);
            witnesses.push((c, w));
        }
    }
    Ok(ClassReport { vertex: i, memberships, witnesses })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem1Report {
    pub n: usize,
    pub convex: bool,
    pub d_fvector: FVector,
    pub e_fvector: FVector,
    /// `d_1 - d_2 + d_3 - ...`
    pub d_sum: BigInt,
    /// `e_1 - e_2 + e_3 - ...`
    pub e_sum: BigInt,
    pub passed: bool,
}

/// Convex polygons must have `d_sum = 1 + (-1)^n` (and `e_sum = 0`, there
/// being no epigonals); non-convex ones `d_sum = e_sum = 1`.
pub fn verify_theorem1(p: &Polygon) -> Result<Theorem1Report, Error> {
    let d = chord_f_vector(p, &diagonals(p))?;
    let e = chord_f_vector(p, &epigonals(p))?;
    let (d_sum, e_sum) = (d.alternating_from_one(), e.alternating_from_one());
    let convex = is_convex(p);
    let passed = if convex {
        let expect = if p.n() % 2 == 0 { BigInt::from(2) } else { BigInt::zero() };
        d_sum == expect && e_sum.is_zero()
    } else {
        d_sum.is_one() && e_sum.is_one()
    };
    Ok(Theorem1Report { n: p.n(), convex, d_fvector: d, e_fvector: e, d_sum, e_sum, passed })
}

/// One of the four equivalences: `chi != 0` exactly when the class side
/// holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub name: char,
    pub chi: BigInt,
    pub class_side: bool,
}

impl Clause {
    pub fn holds(&self) -> bool {
        !self.chi.is_zero() == self.class_side
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem3Report {
    pub vertex: usize,
    pub classes: ClassReport,
    /// (A) `M_d` minus the star at `i`: Classes 1, 2, 6.
    /// (B) `M_e` minus the star: convex or Class 3.
    /// (C) `M_d` minus the ear chord: Class 4.
    /// (D) `M_e` minus the ear chord: convex or Classes 2, 5.
    pub clauses: [Clause; 4],
}

impl Theorem3Report {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(Clause::holds)
    }

    pub fn failing(&self) -> Vec<char> {
        self.clauses.iter().filter(|c| !c.holds()).map(|c| c.name).collect()
    }
}

pub fn verify_theorem3(p: &Polygon, i: usize) -> Result<Theorem3Report, Error> {
    let classes = classify(p, i)?;
    let star = forbidden_star(p, i)?;
    let ear = ear_chord(p, i)?;
    let h = |c| classes.has(c);
    use PolyClass::*;
    let clauses = [
        Clause {
            name: 'A',
            chi: chi_removed_direct(p, &star, Side::D)?,
            class_side: h(Class1) || h(Class2) || h(Class6),
        },
        Clause { name: 'B', chi: chi_removed_direct(p, &star, Side::E)?, class_side: h(Convex) || h(Class3) },
        Clause { name: 'C', chi: chi_removed_direct(p, &ear, Side::D)?, class_side: h(Class4) },
        Clause {
            name: 'D',
            chi: chi_removed_direct(p, &ear, Side::E)?,
            class_side: h(Convex) || h(Class2) || h(Class5),
        },
    ];
    Ok(Theorem3Report { vertex: i, classes, clauses })
}

/// Helper for reports: `(-1)^n`.
pub fn parity_sign(n: usize) -> BigInt {
    if n % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{class_exemplar, convex_ngon};
    use crate::geometry::Point;

    #[test]
    fn convex_hexagon() {
        let hex = convex_ngon(6).unwrap();
        let r = verify_theorem3(&hex, 0).unwrap();
        assert!(r.passed());
        assert_eq!(r.classes.memberships, BTreeSet::from([PolyClass::Convex]));
        let t = verify_theorem1(&hex).unwrap();
        assert_eq!(t.d_sum, BigInt::from(2));
        assert!(t.passed);
        assert_eq!(verify_theorem1(&convex_ngon(5).unwrap()).unwrap().d_sum, BigInt::zero());
    }

    #[test]
    fn dart_theorem1() {
        let d = validate_polygon([(0, 0), (4, 0), (1, 1), (0, 4)].map(|(x, y)| Point::int(x, y)).to_vec()).unwrap();
        let t = verify_theorem1(&d).unwrap();
        assert_eq!((t.d_sum.clone(), t.e_sum.clone()), (BigInt::one(), BigInt::one()));
        assert!(t.passed);
        assert!(is_class2(&d, 0).unwrap());
        assert!(is_class1(&d, 0).is_err());
    }

    #[test]
    fn exemplars_detected() {
        for k in 1..=6u8 {
            for n in [5, 6, 8] {
                let p = class_exemplar(k, 1, n).unwrap();
                assert!(is_class(&p, 1, k).unwrap(), "class {k} n {n}");
                let r = verify_theorem3(&p, 1).unwrap();
                assert!(r.passed(), "class {k} n {n}: {:?}", r.clauses);
            }
        }
    }

    #[test]
    fn exemplar_values() {
        let p = class_exemplar(2, 0, 7).unwrap();
        assert_eq!(verify_theorem3(&p, 0).unwrap().clauses[3].chi, parity_sign(7));
        let p = class_exemplar(5, 0, 6).unwrap();
        assert_eq!(verify_theorem3(&p, 0).unwrap().clauses[3].chi, BigInt::one());
    }
}
