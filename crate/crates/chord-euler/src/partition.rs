//! Subdivisions by non-crossing diagonals, the convex-partition lattice of a
//! cut set `J`, and the different ways of evaluating `chi(M_d - J)`.
//!
//! Subsets of `J` are handled as bitmasks over the members of `J` in universe
//! order, which caps `|J|` at [`LATTICE_CAP`].

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::chords::{diagonals, Chord, ChordKind, ChordSet};
use crate::geometry::{convex_hull_indices, is_convex, Polygon};
use crate::nc_euler::{chi, hull_epigonals, Side};
use crate::Error;

/// Largest `|J|` for which the `2^|J|` lattice is materialized.
pub const LATTICE_CAP: usize = 20;
/// Largest `|J|` accepted by the inclusion-exclusion evaluation.
pub const INCLUSION_EXCLUSION_CAP: usize = 16;
/// Largest number of minimal or maximal sets summed over literally.
pub const FAMILY_CAP: usize = 20;

fn sign(k: usize) -> BigInt {
    if k % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// The faces cut out of `parent` by the diagonals in `cut`, each a cyclic
/// list of parent vertex indices in counter-clockwise order starting at its
/// smallest index. Parts are sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionResult {
    pub parent: Polygon,
    pub cut: ChordSet,
    pub parts: Vec<Vec<usize>>,
}

impl PartitionResult {
    pub fn part_polygon(&self, k: usize) -> Polygon {
        self.parent.part(&self.parts[k])
    }

    /// Parts whose vertex lists contain both endpoints of `c`.
    pub fn part_of(&self, c: Chord) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(&c.i) && p.contains(&c.j))
    }
}

fn check_cut(p: &Polygon, cut: &ChordSet) -> Result<(), Error> {
    let t = p.chords();
    for c in cut.iter() {
        if t.kind(c) != ChordKind::Diagonal {
            return Err(Error::NotDiagonal(c.to_string()));
        }
    }
    if let Some((a, b)) = t.crossing_pair(cut) {
        return Err(Error::Crossing(a.to_string(), b.to_string()));
    }
    Ok(())
}

fn split_parts(n: usize, cut: impl IntoIterator<Item = Chord>) -> Vec<Vec<usize>> {
    let mut parts = vec![(0..n).collect::<Vec<_>>()];
    for c in cut {
        // Exactly one face holds both endpoints of a diagonal not yet cut.
        let k = parts
            .iter()
            .position(|p| p.contains(&c.i) && p.contains(&c.j))
            .expect("a non-crossing diagonal lies in one face");
        let p = parts.swap_remove(k);
        let a = p.iter().position(|&v| v == c.i).expect("present");
        let b = p.iter().position(|&v| v == c.j).expect("present");
        let (a, b) = (a.min(b), a.max(b));
        let first = p[a..=b].to_vec();
        let mut second = p[b..].to_vec();
        second.extend_from_slice(&p[..=a]);
        parts.push(first);
        parts.push(second);
    }
    for p in &mut parts {
        let m = p.iter().enumerate().min_by_key(|&(_, v)| *v).map(|(k, _)| k).expect("non-empty");
        p.rotate_left(m);
    }
    parts.sort();
    parts
}

/// Faces of the subdivision of `p` by the non-crossing diagonals `cut`.
pub fn subdivide(p: &Polygon, cut: &ChordSet) -> Result<PartitionResult, Error> {
    check_cut(p, cut)?;
    Ok(PartitionResult { parent: p.clone(), cut: cut.clone(), parts: split_parts(p.n(), cut.iter()) })
}

fn part_is_convex(p: &Polygon, part: &[usize]) -> bool {
    let t = p.chords();
    let m = part.len();
    (0..m).all(|k| t.orientation(part[(k + m - 1) % m], part[k], part[(k + 1) % m]) > 0)
}

/// Whether the diagonals `cut` split `p` into convex parts.
pub fn is_convex_partition(p: &Polygon, cut: &ChordSet) -> Result<bool, Error> {
    let r = subdivide(p, cut)?;
    Ok(r.parts.iter().all(|q| part_is_convex(p, q)))
}

/// All subsets of a non-crossing diagonal set `J`, split into those giving a
/// convex partition (`NC_c[J]`) and the rest (`NC_nc[J]`).
#[derive(Clone, Debug)]
pub struct ConvexLattice {
    pub j: ChordSet,
    members: Vec<Chord>,
    convex: Vec<bool>,
}

impl ConvexLattice {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[Chord] {
        &self.members
    }

    /// Whether the subset `mask` of `J` is in `NC_c[J]`.
    pub fn is_c(&self, mask: u32) -> bool {
        self.convex[mask as usize]
    }

    pub fn full_mask(&self) -> u32 {
        ((1u64 << self.members.len()) - 1) as u32
    }

    pub fn to_set(&self, mask: u32) -> ChordSet {
        let mut s = ChordSet::empty(self.j.universe().clone());
        for (k, &c) in self.members.iter().enumerate() {
            if mask >> k & 1 == 1 {
                s.insert(c).expect("member of J");
            }
        }
        s
    }

    pub fn to_mask(&self, s: &ChordSet) -> Result<u32, Error> {
        let mut m = 0u32;
        for c in s.iter() {
            let k = self.members.iter().position(|&x| x == c).ok_or(Error::NotSubset)?;
            m |= 1 << k;
        }
        Ok(m)
    }

    pub fn c_masks(&self) -> impl Iterator<Item = u32> + '_ {
        (0..=self.full_mask()).filter(|&m| self.is_c(m))
    }

    pub fn nc_masks(&self) -> impl Iterator<Item = u32> + '_ {
        (0..=self.full_mask()).filter(|&m| !self.is_c(m))
    }

    /// `NC_c[J]` is closed upwards, so a member is minimal when no single
    /// removal stays convex.
    pub fn minimal_c_masks(&self) -> Vec<u32> {
        self.c_masks()
            .filter(|&m| (0..self.size()).all(|k| m >> k & 1 == 0 || !self.is_c(m & !(1 << k))))
            .collect()
    }

    /// `NC_nc[J]` is closed downwards; maximal when no single addition stays
    /// non-convex.
    pub fn maximal_nc_masks(&self) -> Vec<u32> {
        self.nc_masks()
            .filter(|&m| (0..self.size()).all(|k| m >> k & 1 == 1 || self.is_c(m | 1 << k)))
            .collect()
    }

    pub fn members_c(&self) -> Vec<ChordSet> {
        self.c_masks().map(|m| self.to_set(m)).collect()
    }

    pub fn members_nc(&self) -> Vec<ChordSet> {
        self.nc_masks().map(|m| self.to_set(m)).collect()
    }

    pub fn minimal_c(&self) -> Vec<ChordSet> {
        self.minimal_c_masks().into_iter().map(|m| self.to_set(m)).collect()
    }

    pub fn maximal_nc(&self) -> Vec<ChordSet> {
        self.maximal_nc_masks().into_iter().map(|m| self.to_set(m)).collect()
    }

    /// Intersection of every member of `NC_c[J]` (all of `J` if there is
    /// none).
    pub fn common_c_mask(&self) -> u32 {
        self.c_masks().fold(self.full_mask(), |acc, m| acc & m)
    }
}

pub fn convex_lattice(p: &Polygon, j: &ChordSet) -> Result<ConvexLattice, Error> {
    check_cut(p, j)?;
    if j.len() > LATTICE_CAP {
        return Err(Error::TooLarge { what: "|J| for the convex lattice", size: j.len(), cap: LATTICE_CAP });
    }
    let members = j.to_vec();
    let convex = (0..1u64 << members.len())
        .map(|mask| {
            let cut = members.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &c)| c);
            split_parts(p.n(), cut).iter().all(|q| part_is_convex(p, q))
        })
        .collect();
    Ok(ConvexLattice { j: j.clone(), members, convex })
}

/// `chi(M_side - J)` computed directly on the reduced family. `J` may hold
/// any chords of `p`; only members of `M_side` are removed.
pub fn chi_removed_direct(p: &Polygon, j: &ChordSet, side: Side) -> Result<BigInt, Error> {
    chi(p, &side.family(p).difference(j))
}

/// `(-1)^(|P|+1) * sum over I in NC_c[J] of (-1)^#I`.
pub fn chi_removed_theorem2(p: &Polygon, j: &ChordSet) -> Result<BigInt, Error> {
    let lat = convex_lattice(p, j)?;
    let s: BigInt = lat.c_masks().map(|m| sign(m.count_ones() as usize)).sum();
    Ok(sign(p.n() + 1) * s)
}

/// `(-1)^|P| * sum over I in NC_nc[J] of (-1)^#I`, for non-empty `J`.
pub fn chi_removed_lemma_d2(p: &Polygon, j: &ChordSet) -> Result<BigInt, Error> {
    if j.is_empty() {
        return Err(Error::Precondition("the NC_nc form needs a non-empty J".into()));
    }
    let lat = convex_lattice(p, j)?;
    let s: BigInt = lat.nc_masks().map(|m| sign(m.count_ones() as usize)).sum();
    Ok(sign(p.n()) * s)
}

/// `sum over I subset of J of prod_k chi(M_d(P_{I,k}))`.
pub fn chi_removed_lemma1(p: &Polygon, j: &ChordSet) -> Result<BigInt, Error> {
    check_cut(p, j)?;
    if j.len() > LATTICE_CAP {
        return Err(Error::TooLarge { what: "|J| for the subset sum", size: j.len(), cap: LATTICE_CAP });
    }
    let members = j.to_vec();
    let mut cache: HashMap<Vec<usize>, BigInt> = HashMap::new();
    let mut total = BigInt::zero();
    for mask in 0..1u64 << members.len() {
        let cut = members.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &c)| c);
        let mut prod = BigInt::one();
        for part in split_parts(p.n(), cut) {
            let v = match cache.get(&part) {
                Some(v) => v.clone(),
                None => {
                    let sub = p.part(&part);
                    let v = chi(&sub, &diagonals(&sub))?;
                    cache.insert(part, v.clone());
                    v
                }
            };
            prod *= v;
        }
        total += prod;
    }
    Ok(total)
}

/// Chords of `set` that lie inside `part`, renumbered to the part's local
/// vertex indices. Chords that are edges of the part are dropped.
fn localize(part: &[usize], set: &ChordSet) -> Vec<Chord> {
    let m = part.len();
    set.iter()
        .filter_map(|c| {
            let a = part.iter().position(|&v| v == c.i)?;
            let b = part.iter().position(|&v| v == c.j)?;
            let gap = a.abs_diff(b);
            (gap != 1 && gap != m - 1).then(|| Chord::new(a, b))
        })
        .collect()
}

/// `prod_k chi(M_d(P_k) - J_k)` over the parts cut by `jp`, where `J_k` is
/// `J - jp` restricted to part `k`. Requires `J` to give a convex partition
/// and `jp` to lie in every member of `NC_c[J]`.
pub fn chi_removed_factorized(p: &Polygon, j: &ChordSet, jp: &ChordSet) -> Result<BigInt, Error> {
    let lat = convex_lattice(p, j)?;
    if !lat.is_c(lat.full_mask()) {
        return Err(Error::Precondition("J does not give a convex partition".into()));
    }
    let jp_mask = lat.to_mask(jp)?;
    if jp_mask & !lat.common_c_mask() != 0 {
        return Err(Error::Precondition("J' is not contained in every member of NC_c[J]".into()));
    }
    let rest = j.difference(jp);
    let r = subdivide(p, jp)?;
    let mut prod = BigInt::one();
    for (k, part) in r.parts.iter().enumerate() {
        let sub = r.part_polygon(k);
        let jk = sub.chords().set(localize(part, &rest))?;
        prod *= chi(&sub, &diagonals(&sub).difference(&jk))?;
    }
    Ok(prod)
}

/// A region between a non-convex polygon and its convex hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pocket {
    /// Parent indices in the pocket's counter-clockwise order.
    pub vertices: Vec<usize>,
    /// The hull edge closing the pocket; an epigonal of the parent.
    pub hull_edge: Chord,
}

/// Pockets in hull order. Each is bounded by one hull edge `a -> b` that is
/// not a polygon edge and the polygon path `a, a+1, ..., b`, traversed in
/// reverse so the pocket is counter-clockwise.
pub fn pockets(p: &Polygon) -> Vec<Pocket> {
    let hull = convex_hull_indices(p.vertices()).expect("valid polygon");
    let n = p.n();
    let k = hull.len();
    let mut out = Vec::new();
    for t in 0..k {
        let (a, b) = (hull[t], hull[(t + 1) % k]);
        if (a + 1) % n == b {
            continue;
        }
        let mut path = Vec::new();
        let mut v = b;
        loop {
            path.push(v);
            if v == a {
                break;
            }
            v = (v + n - 1) % n;
        }
        out.push(Pocket { vertices: path, hull_edge: Chord::new(a, b) });
    }
    out
}

/// `chi(M_e - J)` assembled from the pockets: the product of
/// `chi(M_d(P^k) - J)` over pockets, times a factor `chi({h}) = 0` for every
/// hull-edge epigonal `h` left in the family. Hull edges cross nothing, so
/// each one outside `J` is an isolated vertex of the crossing graph.
pub fn chi_epigonal_pockets(p: &Polygon, j: &ChordSet) -> Result<BigInt, Error> {
    if is_convex(p) {
        return Ok(BigInt::one());
    }
    if hull_epigonals(p).iter().any(|h| !j.contains(h)) {
        return Ok(BigInt::zero());
    }
    let mut prod = BigInt::one();
    for pk in pockets(p) {
        let sub = p.part(&pk.vertices);
        let jk = sub.chords().set(localize(&pk.vertices, j))?;
        prod *= chi(&sub, &diagonals(&sub).difference(&jk))?;
        if prod.is_zero() {
            break;
        }
    }
    Ok(prod)
}

/// The indicator of the inclusion-exclusion formulas: 1 for `I` empty or
/// `I = J`, else 0.
pub fn xi(p: &Polygon, j: &ChordSet, i: &ChordSet) -> Result<u8, Error> {
    let lat = ie_lattice(p, j)?;
    let m = lat.to_mask(i)?;
    Ok(u8::from(m == 0 || m == lat.full_mask()))
}

fn ie_lattice(p: &Polygon, j: &ChordSet) -> Result<ConvexLattice, Error> {
    if is_convex(p) {
        return Err(Error::Precondition("inclusion-exclusion needs a non-convex polygon".into()));
    }
    if j.len() > INCLUSION_EXCLUSION_CAP {
        return Err(Error::TooLarge { what: "|J| for inclusion-exclusion", size: j.len(), cap: INCLUSION_EXCLUSION_CAP });
    }
    let lat = convex_lattice(p, j)?;
    if !lat.is_c(lat.full_mask()) {
        return Err(Error::Precondition("J does not give a convex partition".into()));
    }
    Ok(lat)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IeMode {
    /// Unions of the minimal members of `NC_c[J]`.
    Minimal,
    /// Intersections of the maximal members of `NC_nc[J]`.
    Maximal,
}

/// Inclusion-exclusion over the minimal convex cuts or the maximal
/// non-convex ones. Sums over every subfamily literally, so the family size
/// is capped at [`FAMILY_CAP`].
pub fn chi_inclusion_exclusion(p: &Polygon, j: &ChordSet, mode: IeMode) -> Result<BigInt, Error> {
    let lat = ie_lattice(p, j)?;
    let full = lat.full_mask();
    let xi = |m: u32| m == 0 || m == full;
    let sets = match mode {
        IeMode::Minimal => lat.minimal_c_masks(),
        IeMode::Maximal => lat.maximal_nc_masks(),
    };
    if sets.len() > FAMILY_CAP {
        return Err(Error::TooLarge { what: "inclusion-exclusion family", size: sets.len(), cap: FAMILY_CAP });
    }
    let mut total = BigInt::zero();
    for pick in 1u64..1 << sets.len() {
        let chosen = sets.iter().enumerate().filter(|(k, _)| pick >> k & 1 == 1).map(|(_, &m)| m);
        let k = pick.count_ones() as usize;
        let (combined, term_sign) = match mode {
            IeMode::Minimal => (chosen.fold(0, |a, m| a | m), sign(k)),
            IeMode::Maximal => (chosen.fold(full, |a, m| a & m), sign(k - 1)),
        };
        if xi(combined) {
            total += term_sign;
        }
    }
    Ok(match mode {
        IeMode::Minimal => sign(p.n() + j.len()) * total,
        IeMode::Maximal => sign(p.n()) * total,
    })
}

/// A diagonal found as in the classical existence argument: take the first
/// convex vertex `A`; if the chord joining its neighbours is a diagonal,
/// return it, otherwise join `A` to the vertex inside the triangle at `A`
/// that lies farthest from the neighbours' line (lowest index on ties).
pub fn find_diagonal(p: &Polygon) -> Result<Chord, Error> {
    let n = p.n();
    if n < 4 {
        return Err(Error::PolygonTooSmall { op: "find_diagonal", n, min: 4 });
    }
    let t = p.chords();
    let a = (0..n).find(|&i| !p.is_reflex(i)).expect("every polygon has a convex vertex");
    let (b, c) = ((a + n - 1) % n, (a + 1) % n);
    let ear = Chord::new(b, c);
    if t.kind(ear) == ChordKind::Diagonal {
        return Ok(ear);
    }
    let line = p.vertex(c).sub(p.vertex(b));
    let mut best: Option<(usize, crate::exact_scalar::QSqrt3)> = None;
    for d in 0..n {
        if d == a || d == b || d == c {
            continue;
        }
        let inside = t.orientation(b, a, d) < 0 && t.orientation(a, c, d) < 0 && t.orientation(c, b, d) < 0
            || t.orientation(b, a, d) > 0 && t.orientation(a, c, d) > 0 && t.orientation(c, b, d) > 0;
        if !inside {
            continue;
        }
        // |cross(C - B, D - B)| is the distance to line BC up to a constant.
        let off = p.vertex(d).sub(p.vertex(b));
        let mut dist = &(&line.x * &off.y) - &(&line.y * &off.x);
        if dist.sign() < 0 {
            dist = -dist;
        }
        if best.as_ref().map_or(true, |(_, bd)| dist > *bd) {
            best = Some((d, dist));
        }
    }
    let (d, _) = best.expect("a non-diagonal ear chord has a vertex inside its triangle");
    Ok(Chord::new(a, d))
}

/// Extends a non-crossing diagonal set to a triangulation (`n - 3`
/// diagonals) by running [`find_diagonal`] on every non-triangular part.
pub fn extend_to_triangulation(p: &Polygon, j: &ChordSet) -> Result<ChordSet, Error> {
    let r = subdivide(p, j)?;
    let mut out = j.clone();
    let mut work = r.parts;
    while let Some(part) = work.pop() {
        if part.len() == 3 {
            continue;
        }
        let sub = p.part(&part);
        let c = find_diagonal(&sub)?;
        out.insert(Chord::new(part[c.i], part[c.j]))?;
        let (a, b) = (c.i, c.j);
        work.push(part[a..=b].to_vec());
        let mut second = part[b..].to_vec();
        second.extend_from_slice(&part[..=a]);
        work.push(second);
    }
    Ok(out)
}
