//! Verification campaigns behind `verify`. Items run in parallel and are
//! reported in item order.

use chord_euler::catalan::{
    alternating_sum_check, brute_a_diagonal_fvector, d_closed, d_recurrence_check, identity14_check,
};
use chord_euler::chords::{diagonals, epigonals};
use chord_euler::classes::{verify_theorem1, verify_theorem3};
use chord_euler::generators::{convex_ngon, random_simple_polygon, verify_zigzag_structure, zigzag_chi_target};
use chord_euler::geometry::{is_convex, Polygon};
use chord_euler::nc_euler::{non_crossing_subsets, Side};
use chord_euler::partition::{
    chi_epigonal_pockets, chi_removed_direct, chi_removed_lemma1, chi_removed_lemma_d2, chi_removed_theorem2,
};
use chord_euler::Error;
use num_bigint::BigInt;
use rayon::prelude::*;

use crate::files::print_polygon;

/// Largest number of subsets `J` enumerated per polygon.
pub const SUBSET_CAP: usize = 200_000;

#[derive(Debug, Default)]
pub struct Outcome {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl Outcome {
    fn merge(items: Vec<Result<(usize, Vec<String>), Error>>) -> Result<Outcome, Error> {
        let mut o = Outcome::default();
        for it in items {
            let (c, f) = it?;
            o.checked += c;
            o.failures.extend(f);
        }
        Ok(o)
    }
}

/// Seeds of the random items: `seed + k` for the `k`-th item, with sizes
/// cycling through `ns`.
fn random_items(ns: &[usize], count: usize, seed: u64) -> Vec<(usize, u64)> {
    (0..count).map(|k| (ns[k % ns.len()], seed + k as u64)).collect()
}

fn theorem1_item(p: &Polygon, label: &str) -> Result<(usize, Vec<String>), Error> {
    let r = verify_theorem1(p)?;
    let fail = (!r.passed).then(|| {
        format!("theorem1 {label}: convex={} d_sum={} e_sum={}", r.convex, r.d_sum, r.e_sum)
    });
    Ok((1, fail.into_iter().collect()))
}

pub fn theorem1(ns: &[usize], random: usize, seed: u64) -> Result<Outcome, Error> {
    let mut items: Vec<_> = ns.par_iter().map(|&n| theorem1_item(&convex_ngon(n)?, &format!("convex n={n}"))).collect();
    items.extend(random_items(ns, random, seed).into_par_iter().map(|(n, s)| {
        theorem1_item(&random_simple_polygon(n, s)?, &format!("random n={n} seed={s}"))
    }).collect::<Vec<_>>());
    Outcome::merge(items)
}

fn theorem2_item(n: usize, s: u64) -> Result<(usize, Vec<String>), Error> {
    let p = random_simple_polygon(n, s)?;
    let mut fails = Vec::new();
    let subsets = non_crossing_subsets(&p, &diagonals(&p), SUBSET_CAP)?;
    for j in &subsets {
        let direct = chi_removed_direct(&p, j, Side::D)?;
        let t2 = chi_removed_theorem2(&p, j)?;
        let l1 = chi_removed_lemma1(&p, j)?;
        let d2 = if j.is_empty() { direct.clone() } else { chi_removed_lemma_d2(&p, j)? };
        if direct != t2 || direct != l1 || direct != d2 {
            fails.push(format!("theorem2 n={n} seed={s} J={j}: direct={direct} theorem2={t2} lemma1={l1} nc={d2}"));
        }
    }
    Ok((subsets.len(), fails))
}

pub fn theorem2(ns: &[usize], random: usize, seed: u64) -> Result<Outcome, Error> {
    Outcome::merge(random_items(ns, random, seed).into_par_iter().map(|(n, s)| theorem2_item(n, s)).collect())
}

fn theorem3_item(n: usize, s: u64) -> Result<(usize, Vec<String>), Error> {
    let p = random_simple_polygon(n, s)?;
    let mut fails = Vec::new();
    for i in 0..n {
        let r = verify_theorem3(&p, i)?;
        if !r.passed() {
            let chis: Vec<String> = r.clauses.iter().map(|c| c.chi.to_string()).collect();
            fails.push(format!(
                "theorem3 n={n} seed={s} i={i} clauses={:?} chi={:?} classes={:?}\n{}",
                r.failing(),
                chis,
                r.classes.memberships,
                print_polygon(&p).trim_end()
            ));
        }
    }
    Ok((n, fails))
}

pub fn theorem3(ns: &[usize], random: usize, seed: u64) -> Result<Outcome, Error> {
    Outcome::merge(random_items(ns, random, seed).into_par_iter().map(|(n, s)| theorem3_item(n, s)).collect())
}

fn lemmae_item(n: usize, s: u64) -> Result<(usize, Vec<String>), Error> {
    let p = random_simple_polygon(n, s)?;
    if is_convex(&p) {
        return Ok((0, Vec::new()));
    }
    let mut fails = Vec::new();
    let subsets = non_crossing_subsets(&p, &epigonals(&p), SUBSET_CAP)?;
    for j in &subsets {
        let direct = chi_removed_direct(&p, j, Side::E)?;
        let pk = chi_epigonal_pockets(&p, j)?;
        if direct != pk {
            fails.push(format!("lemmae n={n} seed={s} J={j}: direct={direct} pockets={pk}"));
        }
    }
    Ok((subsets.len(), fails))
}

pub fn lemmae(ns: &[usize], random: usize, seed: u64) -> Result<Outcome, Error> {
    Outcome::merge(random_items(ns, random, seed).into_par_iter().map(|(n, s)| lemmae_item(n, s)).collect())
}

/// Largest polygon enumerated for the geometric Catalan oracle.
pub const CATALAN_BRUTE_MAX: u64 = 12;

fn catalan_item(n: u64, a: u64) -> Result<(usize, Vec<String>), Error> {
    let mut fails = Vec::new();
    let mut checked = 1;
    if !alternating_sum_check(n, a)? {
        fails.push(format!("catalan alternating sum n={n} a={a}"));
    }
    for k in 1..=n {
        checked += 2;
        if !d_recurrence_check(n, k, a)? {
            fails.push(format!("catalan recurrence n={n} k={k} a={a}"));
        }
        if !identity14_check(n, k, a)? {
            fails.push(format!("catalan identity n={n} i={k} a={a}"));
        }
    }
    let size = a * (n + 1) + 2;
    if size <= CATALAN_BRUTE_MAX {
        checked += 1;
        let f = brute_a_diagonal_fvector(&convex_ngon(size as usize)?, a as usize)?;
        let closed: Vec<BigInt> = (0..=n).map(|k| d_closed(n, k, a)).collect::<Result<_, _>>()?;
        let sign = if n % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
        if f.counts() != closed.as_slice() || f.euler() != sign * d_closed(n, n, a - 1)? {
            fails.push(format!("catalan oracle n={n} a={a}: f={f}"));
        }
    }
    Ok((checked, fails))
}

pub fn catalan(ns: &[u64], as_: &[u64]) -> Result<Outcome, Error> {
    let grid: Vec<(u64, u64)> = ns.iter().flat_map(|&n| as_.iter().map(move |&a| (n, a))).collect();
    Outcome::merge(grid.into_par_iter().map(|(n, a)| catalan_item(n, a)).collect())
}

/// Largest `|l|` whose value is recomputed by brute force.
pub const ZIGZAG_DIRECT_MAX: i64 = 5;

fn zigzag_item(l: i64) -> Result<(usize, Vec<String>), Error> {
    let z = zigzag_chi_target(l)?;
    let r = verify_zigzag_structure(&z)?;
    let mut fails = Vec::new();
    if !r.passed() {
        fails.push(format!("zigzag l={l}: {r:?}"));
    }
    if l.abs() <= ZIGZAG_DIRECT_MAX {
        let chi = chi_removed_direct(&z.polygon, &z.j, Side::D)?;
        if chi != BigInt::from(l) {
            fails.push(format!("zigzag l={l}: direct chi={chi}"));
        }
    }
    Ok((1, fails))
}

pub fn zigzag(ls: &[i64]) -> Result<Outcome, Error> {
    let ls: Vec<i64> = ls.iter().copied().filter(|l| l.abs() >= 2).collect();
    Outcome::merge(ls.into_par_iter().map(zigzag_item).collect())
}
