//! One PASS/FAIL line per acceptance criterion. Exits non-zero if any fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use chord_euler::catalan::{
    alternating_sum_check, alternating_sum_sides, brute_a_diagonal_fvector, d_closed, d_recurrence_check,
    identity14_check,
};
use chord_euler::chords::{classify_chord, diagonals, ChordKind};
use chord_euler::classes::{is_class, parity_sign, verify_theorem1, verify_theorem3};
use chord_euler::generators::{
    class_exemplar, convex_ngon, random_simple_polygon, verify_zigzag_structure, zigzag_a_closed,
    zigzag_a_sequence, zigzag_chi_target,
};
use chord_euler::geometry::{convex_hull_indices, is_convex, Point, Polygon, Segment};
use chord_euler::nc_euler::{
    chi_point_family, euler_brute, euler_recursive, find_heart, hull_edge_in, is_heart, non_crossing_subsets,
    CrossingGraph, Side,
};
use chord_euler::partition::{
    chi_removed_direct, chi_removed_lemma1, chi_removed_lemma_d2, chi_removed_theorem2, extend_to_triangulation,
    find_diagonal,
};
use chord_euler_cli::files::{parse_polygon, print_polygon};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Check = Result<String, String>;
type Criterion = fn() -> Check;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn e(err: chord_euler::Error) -> String {
    err.to_string()
}

/// `count` random polygons with sizes cycling through `ns`, seeds from `base`.
fn random_polygons(ns: &[usize], count: usize, base: u64) -> Result<Vec<Polygon>, String> {
    (0..count)
        .into_par_iter()
        .map(|k| random_simple_polygon(ns[k % ns.len()], base + k as u64).map_err(e))
        .collect()
}

fn random_non_convex(ns: &[usize], count: usize, base: u64) -> Result<Vec<Polygon>, String> {
    let mut out = Vec::new();
    let mut next = base;
    while out.len() < count {
        let batch = random_polygons(ns, count, next)?;
        next += count as u64;
        out.extend(batch.into_iter().filter(|p| !is_convex(p)));
    }
    out.truncate(count);
    Ok(out)
}

fn c1() -> Check {
    for n in 3..=10 {
        let r = verify_theorem1(&convex_ngon(n).map_err(e)?).map_err(e)?;
        let want = if n % 2 == 0 { big(2) } else { big(0) };
        ensure(r.passed && r.d_sum == want, || format!("n={n}: d_sum={}", r.d_sum))?;
    }
    let hex = verify_theorem1(&convex_ngon(6).map_err(e)?).map_err(e)?;
    ensure(hex.d_fvector.to_u64s() == Some(vec![1, 9, 21, 14]), || format!("hexagon {}", hex.d_fvector))?;
    Ok("convex n=3..10, hexagon 9-21+14 = 2".into())
}

fn c2() -> Check {
    let ps = random_non_convex(&[4, 5, 6, 7, 8, 9], 1000, 20_000)?;
    ps.par_iter().try_for_each(|p| -> Result<(), String> {
        let r = verify_theorem1(p).map_err(e)?;
        ensure(r.passed && r.d_sum == big(1) && r.e_sum == big(1), || {
            format!("d_sum={} e_sum={}\n{}", r.d_sum, r.e_sum, print_polygon(p))
        })
    })?;
    Ok(format!("{} non-convex polygons, n=4..9", ps.len()))
}

fn random_family(seed: u64) -> Vec<Segment> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(4..=10);
    let mut pts: Vec<Point> = Vec::new();
    while pts.len() < k {
        let q = Point::int(rng.gen_range(0..40), rng.gen_range(0..40));
        if !pts.contains(&q) {
            pts.push(q);
        }
    }
    let mut pairs: Vec<(usize, usize)> = (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect();
    pairs.shuffle(&mut rng);
    let m = rng.gen_range(0..=16.min(pairs.len()));
    pairs[..m].iter().map(|&(a, b)| Segment::new(pts[a].clone(), pts[b].clone())).collect()
}

fn c3() -> Check {
    let families = 10_000u64;
    (0..families).into_par_iter().try_for_each(|s| -> Result<(), String> {
        let g = CrossingGraph::from_segments(&random_family(s));
        let (b, r) = (euler_brute(&g).map_err(e)?, euler_recursive(&g).map_err(e)?);
        ensure(b == r, || format!("family seed {s}: brute={b} recursive={r}"))
    })?;
    let mut polys: Vec<Polygon> = (3..=10).map(convex_ngon).collect::<Result<_, _>>().map_err(e)?;
    polys.extend(random_polygons(&[4, 5, 6, 7, 8, 9, 10], 700, 30_000)?);
    polys.par_iter().try_for_each(|p| -> Result<(), String> {
        for side in [Side::D, Side::E] {
            let g = p.chords().crossing_graph(&side.family(p));
            let (b, r) = (euler_brute(&g).map_err(e)?, euler_recursive(&g).map_err(e)?);
            ensure(b == r, || format!("{side:?}: brute={b} recursive={r}\n{}", print_polygon(p)))?;
        }
        Ok(())
    })?;
    Ok(format!("{families} segment families, M_d/M_e of {} polygons n<=10", polys.len()))
}

fn c4() -> Check {
    let ps = random_polygons(&[4, 5, 6, 7, 8], 200, 40_000)?;
    let checked: usize = ps
        .par_iter()
        .map(|p| -> Result<usize, String> {
            let subsets = non_crossing_subsets(p, &diagonals(p), 1 << 20).map_err(e)?;
            for j in &subsets {
                let direct = chi_removed_direct(p, j, Side::D).map_err(e)?;
                let t2 = chi_removed_theorem2(p, j).map_err(e)?;
                let l1 = chi_removed_lemma1(p, j).map_err(e)?;
                let d2 = if j.is_empty() { direct.clone() } else { chi_removed_lemma_d2(p, j).map_err(e)? };
                ensure(t2 == direct && l1 == direct && d2 == direct, || {
                    format!("J={j}: direct={direct} t2={t2} l1={l1} d2={d2}\n{}", print_polygon(p))
                })?;
            }
            Ok(subsets.len())
        })
        .collect::<Result<Vec<_>, String>>()?
        .into_iter()
        .sum();
    Ok(format!("200 polygons n=4..8, {checked} non-crossing J"))
}

fn c5() -> Check {
    for l in (-5..=5i64).filter(|l| l.abs() >= 2) {
        let z = zigzag_chi_target(l).map_err(e)?;
        let chi = chi_removed_direct(&z.polygon, &z.j, Side::D).map_err(e)?;
        ensure(chi == big(l), || format!("l={l}: direct chi={chi}"))?;
    }
    let ls: Vec<i64> = (-8..=8i64).filter(|l| l.abs() >= 2).collect();
    ls.par_iter().try_for_each(|&l| -> Result<(), String> {
        let r = verify_zigzag_structure(&zigzag_chi_target(l).map_err(e)?).map_err(e)?;
        ensure(r.passed(), || format!("l={l}: {r:?}"))
    })?;
    let a = zigzag_a_sequence(60);
    for k in 0..=20usize {
        let want = if k % 2 == 0 { k as i64 + 1 } else { -(k as i64 + 1) };
        ensure(a[3 * k] == want && zigzag_a_closed(3 * k) == want, || format!("a_{}", 3 * k))?;
    }
    Ok("direct chi = l for 2<=|l|<=5, structure for 2<=|l|<=8".into())
}

fn c6() -> Check {
    let mut exemplars = 0;
    for class in 1..=6u8 {
        for (n, i) in [(5, 1), (6, 1), (8, 3)] {
            let p = class_exemplar(class, i, n).map_err(e)?;
            ensure(is_class(&p, i, class).map_err(e)?, || format!("class{class} n={n}: detector"))?;
            let r = verify_theorem3(&p, i).map_err(e)?;
            ensure(r.passed(), || format!("class{class} n={n}: clauses {:?}", r.failing()))?;
            let clause = match class {
                1 | 2 | 6 => 0,
                3 => 1,
                4 => 2,
                _ => 3,
            };
            ensure(r.clauses[clause].chi != big(0), || format!("class{class} n={n}: zero chi"))?;
            if class == 2 {
                ensure(r.clauses[3].chi == parity_sign(n), || format!("class2 n={n}: D={}", r.clauses[3].chi))?;
            }
            if class == 5 {
                ensure(r.clauses[3].chi == big(1), || format!("class5 n={n}: D={}", r.clauses[3].chi))?;
            }
            exemplars += 1;
        }
    }
    let ps = random_polygons(&[5, 6, 7, 8, 9], 10_000, 50_000)?;
    ps.par_iter().try_for_each(|p| -> Result<(), String> {
        for i in 0..p.n() {
            let r = verify_theorem3(p, i).map_err(e)?;
            ensure(r.passed(), || format!("i={i}: clauses {:?}\n{}", r.failing(), print_polygon(p)))?;
        }
        Ok(())
    })?;
    Ok(format!("{exemplars} exemplars, {} random polygons n=5..9, all vertices", ps.len()))
}

fn c7() -> Check {
    for a in 1..=3u64 {
        for n in 0u64.. {
            let size = a * (n + 1) + 2;
            if size > 12 {
                break;
            }
            let f = brute_a_diagonal_fvector(&convex_ngon(size as usize).map_err(e)?, a as usize).map_err(e)?;
            let closed: Vec<BigInt> = (0..=n).map(|k| d_closed(n, k, a)).collect::<Result<_, _>>().map_err(e)?;
            ensure(f.counts() == closed.as_slice(), || format!("n={n} a={a}: brute {f}"))?;
            let chi = parity_sign(n as usize) * d_closed(n, n, a - 1).map_err(e)?;
            ensure(f.euler() == chi, || format!("n={n} a={a}: chi {} vs {chi}", f.euler()))?;
        }
    }
    for n in 1..=8u64 {
        for k in 1..=n {
            for a in 1..=5u64 {
                ensure(d_recurrence_check(n, k, a).map_err(e)?, || format!("recurrence n={n} k={k} a={a}"))?;
                ensure(identity14_check(n, k, a).map_err(e)?, || format!("identity n={n} i={k} a={a}"))?;
            }
        }
    }
    for n in 1..=12u64 {
        for a in 1..=6u64 {
            ensure(alternating_sum_check(n, a).map_err(e)?, || format!("alternating n={n} a={a}"))?;
        }
    }
    ensure(d_closed(2, 1, 1).map_err(e)? == big(5), || "d_1(2,1)".into())?;
    ensure(alternating_sum_sides(2, 2).map_err(e)? == (big(-4), big(-4)), || "n=2 a=2".into())?;
    Ok("brute force to 12 vertices, identities n<=8 a<=5, alternating sums n<=12 a<=6".into())
}

fn random_point_family(seed: u64) -> Result<(Vec<Point>, Vec<Segment>), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(3..=8);
    let mut pts: Vec<Point> = Vec::new();
    while pts.len() < k {
        let q = Point::int(rng.gen_range(0..30), rng.gen_range(0..30));
        if !pts.contains(&q) {
            pts.push(q);
        }
    }
    let hull = match convex_hull_indices(&pts) {
        Ok(h) => h,
        Err(_) => return random_point_family(seed + 1_000_000),
    };
    let t = rng.gen_range(0..hull.len());
    let (a, b) = (hull[t], hull[(t + 1) % hull.len()]);
    let mut segs = vec![Segment::new(pts[a].clone(), pts[b].clone())];
    for x in 0..k {
        for y in x + 1..k {
            if rng.gen_bool(0.4) {
                segs.push(Segment::new(pts[x].clone(), pts[y].clone()));
            }
        }
    }
    Ok((pts, segs))
}

fn c8() -> Check {
    let ps = random_polygons(&[4, 5, 6, 7, 8, 9], 2000, 60_000)?;
    let hearts: usize = ps
        .par_iter()
        .map(|p| -> Result<usize, String> {
            let mut found = 0;
            for side in [Side::D, Side::E] {
                if let Some(h) = find_heart(p, side) {
                    let m = side.family(p);
                    ensure(is_heart(p, &m, &h).map_err(e)?, || format!("{side:?}: not a heart\n{}", print_polygon(p)))?;
                    let chi = euler_recursive(&p.chords().crossing_graph(&m)).map_err(e)?;
                    ensure(chi == big(0), || format!("{side:?}: chi={chi}\n{}", print_polygon(p)))?;
                    found += 1;
                }
            }
            Ok(found)
        })
        .collect::<Result<Vec<_>, String>>()?
        .into_iter()
        .sum();
    let families = 1000u64;
    (0..families).into_par_iter().try_for_each(|s| -> Result<(), String> {
        let (f, segs) = random_point_family(s)?;
        ensure(hull_edge_in(&f, &segs).map_err(e)?, || format!("seed {s}: no hull edge"))?;
        let chi = chi_point_family(&f, &segs).map_err(e)?;
        ensure(chi == big(0), || format!("point family seed {s}: chi={chi}"))
    })?;
    Ok(format!("{hearts} hearts in {} polygons, {families} point families", ps.len()))
}

fn generated_polygons() -> Result<Vec<Polygon>, String> {
    let mut ps: Vec<Polygon> = (3..=12).map(convex_ngon).collect::<Result<_, _>>().map_err(e)?;
    ps.extend(random_polygons(&[3, 4, 5, 6, 7, 8, 9, 10, 11, 12], 500, 70_000)?);
    for class in 1..=6u8 {
        for n in [5, 6, 8] {
            ps.push(class_exemplar(class, 1, n).map_err(e)?);
        }
    }
    for l in (-8..=8i64).filter(|l| l.abs() >= 2) {
        ps.push(zigzag_chi_target(l).map_err(e)?.polygon);
    }
    Ok(ps)
}

fn c9() -> Check {
    let ps = generated_polygons()?;
    let ps: Vec<&Polygon> = ps.iter().filter(|p| p.n() >= 4).collect();
    ps.par_iter().try_for_each(|p| -> Result<(), String> {
        let d = find_diagonal(p).map_err(e)?;
        ensure(classify_chord(p, d).map_err(e)? == ChordKind::Diagonal, || format!("{d} is not a diagonal"))?;
        let single = p.chords().set([d]).map_err(e)?;
        for j in [p.chords().empty(), single] {
            let t = extend_to_triangulation(p, &j).map_err(e)?;
            ensure(t.len() == p.n() - 3 && j.is_subset(&t), || format!("J={j}: got {t}"))?;
            ensure(t.is_subset(&diagonals(p)) && p.chords().is_non_crossing(&t), || format!("J={j}: bad {t}"))?;
        }
        Ok(())
    })?;
    Ok(format!("{} generated polygons", ps.len()))
}

fn cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_chord-euler")).args(args).output().expect("binary runs")
}

fn c10() -> Check {
    let ps = generated_polygons()?;
    for p in &ps {
        let text = print_polygon(p);
        let back = parse_polygon(&text).map_err(e)?;
        ensure(&back == p && print_polygon(&back) == text, || format!("round trip\n{text}"))?;
    }
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let fx = |f: &str| fixtures.join(f).to_string_lossy().into_owned();
    let (dart, hex, bow, bad) = (fx("dart.json"), fx("hexagon.json"), fx("bowtie.json"), fx("malformed.json"));
    let cases: [(&[&str], i32); 9] = [
        (&["analyze", &dart, "--chi"], 0),
        (&["analyze", &hex, "--fvector", "--classes", "--json"], 0),
        (&["generate", "zigzag", "--l", "-4"], 0),
        (&["analyze", &bow], 2),
        (&["analyze", &bad], 2),
        (&["verify", "theorem1", "--n", "3..99"], 3),
        (&["verify", "theorem2", "--n", "4..20"], 3),
        (&["generate", "class3", "--n", "4"], 4),
        (&["generate", "zigzag", "--l", "0"], 4),
    ];
    for (args, want) in cases {
        let a = cli(args);
        let b = cli(args);
        ensure(a.status.code() == Some(want), || format!("{args:?}: exit {:?}, want {want}", a.status.code()))?;
        ensure(a.stdout == b.stdout && a.stderr == b.stderr, || format!("{args:?}: output differs"))?;
    }
    Ok(format!("{} polygons round-trip, {} CLI fixtures byte-stable", ps.len(), cases.len()))
}

fn main() {
    // (number, check, runtime budget in seconds)
    let criteria: [(u32, Criterion, u64); 10] = [
        (1, c1, 10),
        (2, c2, 300),
        (3, c3, 300),
        (4, c4, 600),
        (5, c5, 300),
        (6, c6, 1800),
        (7, c7, 300),
        (8, c8, 300),
        (9, c9, 60),
        (10, c10, 300),
    ];
    let mut failed = 0;
    for (k, f, budget) in criteria {
        let start = Instant::now();
        let r = f();
        let took = start.elapsed();
        let over = took > Duration::from_secs(budget);
        match r {
            Ok(msg) if !over => println!("criterion {k}: PASS ({msg}; {:.1}s)", took.as_secs_f64()),
            Ok(msg) => {
                failed += 1;
                println!("criterion {k}: FAIL ({msg}; {:.1}s exceeds {budget}s)", took.as_secs_f64());
            }
            Err(msg) => {
                failed += 1;
                println!("criterion {k}: FAIL {msg}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
