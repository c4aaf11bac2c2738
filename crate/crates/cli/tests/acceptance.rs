//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use pwt_core::experiments::generators::{
    random_disk_spec, random_exchange, random_itm, random_two_branch_itm, seeded_rng,
};
use pwt_core::experiments::{cells_to_interval_union, convergence_curve, itm_to_grid_spec};
use pwt_core::grid::{
    apply_grid, attractor_grid, attractor_grid_with, directed_hausdorff, hausdorff,
    AttractorResult2, GridGeometry, GridSet, PwtMap,
};
use pwt_core::itm::{
    attractor_exact, hausdorff_exact, is_exchange, AttractorResult1, Interval1, IntervalUnion,
    ItmSpec,
};
use pwt_core::rational::{format_rational, ratio, to_f64, Rational};
use pwt_core::render::{mask_from_pgm, RgbImage, RED};
use pwt_core::torus::{check_projection_lemma, LatticeBasis, TorusSpec};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

type Check = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------------------
// Lattice oracle for 1-D maps on [0,1] whose endpoints and vectors are
// multiples of 1/den. A closed set with lattice endpoints is exactly its
// lattice points plus the open unit cells it contains.

fn numer_over(r: &Rational, den: i64) -> i64 {
    let text = format_rational(r);
    let (p, q) = text.split_once('/').expect("p/q");
    let (p, q): (i64, i64) = (p.parse().unwrap(), q.parse().unwrap());
    assert_eq!(den % q, 0, "{text} is not on the 1/{den} lattice");
    p * (den / q)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

struct LatticeMap {
    den: i64,
    /// `(lo, hi, shift)` in lattice units.
    branches: Vec<(i64, i64, i64)>,
}

#[derive(Clone, PartialEq, Debug)]
struct LatticeSet {
    points: Vec<bool>,
    cells: Vec<bool>,
}

impl LatticeMap {
    fn new(spec: &ItmSpec) -> Self {
        let mut den = 1;
        for b in spec.branches() {
            for r in [b.region.lo(), b.region.hi(), &b.vector] {
                let q: i64 = format_rational(r).split_once('/').unwrap().1.parse().unwrap();
                den = den / gcd(den, q) * q;
            }
        }
        assert_eq!(to_f64(spec.omega().lo()), 0.0);
        assert_eq!(to_f64(spec.omega().hi()), 1.0);
        let branches = spec
            .branches()
            .iter()
            .map(|b| {
                (
                    numer_over(b.region.lo(), den),
                    numer_over(b.region.hi(), den),
                    numer_over(&b.vector, den),
                )
            })
            .collect();
        Self { den, branches }
    }

    fn full(&self) -> LatticeSet {
        LatticeSet {
            points: vec![true; self.den as usize + 1],
            cells: vec![true; self.den as usize],
        }
    }

    fn apply(&self, set: &LatticeSet) -> LatticeSet {
        let n = self.den as usize;
        let mut out = LatticeSet {
            points: vec![false; n + 1],
            cells: vec![false; n],
        };
        for &(lo, hi, t) in &self.branches {
            for p in lo..=hi {
                if set.points[p as usize] {
                    out.points[(p + t) as usize] = true;
                }
            }
            for c in lo..hi {
                if set.cells[c as usize] {
                    out.cells[(c + t) as usize] = true;
                }
            }
        }
        out
    }

    /// First `N` with `F^{N+1} = F^N`.
    fn attractor(&self, cap: usize) -> Option<(usize, LatticeSet)> {
        let mut k = self.full();
        for n in 0..cap {
            let next = self.apply(&k);
            if next == k {
                return Some((n, k));
            }
            k = next;
        }
        None
    }

    fn to_union(&self, set: &LatticeSet) -> IntervalUnion {
        let d = self.den;
        let mut parts = Vec::new();
        for (p, &on) in set.points.iter().enumerate() {
            if on {
                parts.push(Interval1::point(ratio(p as i64, d)));
            }
        }
        for (c, &on) in set.cells.iter().enumerate() {
            if on {
                parts.push(Interval1::new(ratio(c as i64, d), ratio(c as i64 + 1, d)).unwrap());
            }
        }
        IntervalUnion::normalize(parts)
    }
}

fn exact_finite(spec: &ItmSpec, cap: usize) -> Result<(usize, IntervalUnion), String> {
    match attractor_exact(spec, cap).map_err(|e| e.to_string())? {
        AttractorResult1::Finite { steps, attractor } => Ok((steps, attractor)),
        other => Err(format!("{other} for {}", spec.to_json())),
    }
}

// ---------------------------------------------------------------------------

fn criterion_1() -> Check {
    let spec = ItmSpec::from_json(
        r#"{"mode":"line","omega":["0","1"],"branches":[
            {"region":["0","1/2"],"vector":"1/4"},{"region":["1/2","1"],"vector":"-1/2"}]}"#,
    )
    .map_err(|e| e.to_string())?;
    let start = Instant::now();
    let (n, a) = exact_finite(&spec, 100_000)?;
    let ms = start.elapsed().as_secs_f64() * 1e3;
    let expected = IntervalUnion::from_interval(Interval1::new(ratio(0, 1), ratio(3, 4)).unwrap());
    ensure(n == 1 && a == expected, || format!("got N={n} A={a}"))?;
    let oracle = LatticeMap::new(&spec);
    let (on, oa) = oracle.attractor(100).ok_or("oracle did not stabilize")?;
    ensure(on == 1 && oracle.to_union(&oa) == a, || "lattice oracle disagrees".into())?;
    ensure(ms < 10.0, || format!("took {ms:.2} ms"))?;
    Ok(format!("N=1 A={a}, engine {ms:.2} ms"))
}

fn criterion_2() -> Check {
    for seed in 0..100 {
        let mut rng = seeded_rng(seed);
        let den = rng.gen_range(6..=96);
        let spec = random_exchange(&mut rng, 6, den).map_err(|e| e.to_string())?;
        ensure(is_exchange(&spec), || format!("seed {seed}: not an exchange"))?;
        let (n, a) = exact_finite(&spec, 10)?;
        let omega = IntervalUnion::from_interval(spec.omega().clone());
        ensure(n == 0 && a == omega, || format!("seed {seed}: N={n} A={a}"))?;
        let oracle = LatticeMap::new(&spec);
        ensure(oracle.apply(&oracle.full()) == oracle.full(), || {
            format!("seed {seed}: lattice oracle F(Ω) != Ω")
        })?;
    }
    Ok("100 exchanges: N=0, A=Ω, is_exchange".into())
}

fn criterion_3() -> Check {
    let mut rng = seeded_rng(3);
    let mut max_n = 0;
    for k in 0..100 {
        let spec = random_two_branch_itm(&mut rng, 64).map_err(|e| e.to_string())?;
        let (n, a) = exact_finite(&spec, 100_000)?;
        let oracle = LatticeMap::new(&spec);
        let (on, oa) = oracle.attractor(100_000).ok_or("oracle capped")?;
        ensure(on == n && oracle.to_union(&oa) == a, || {
            format!("spec {k}: engine N={n} A={a}, oracle N={on} A={}", oracle.to_union(&oa))
        })?;
        max_n = max_n.max(n);
    }
    Ok(format!("100 two-branch specs stabilized, max N={max_n}"))
}

struct GridRun {
    map: PwtMap,
    result: AttractorResult2,
}

/// The same 20 specs as criterion 4.
fn disk_runs() -> Vec<GridRun> {
    let mut rng = seeded_rng(4);
    (0..20)
        .map(|_| {
            let map = random_disk_spec(&mut rng, 256).unwrap().compile().unwrap();
            let result = attractor_grid(&map, 5000).unwrap();
            GridRun { map, result }
        })
        .collect()
}

fn criterion_4() -> Check {
    let mut rng = seeded_rng(4);
    let mut stabilized = 0;
    for k in 0..20 {
        let map = random_disk_spec(&mut rng, 256)
            .and_then(|s| s.compile())
            .map_err(|e| e.to_string())?;
        // Containment re-checked cell by cell, independently of the engine's own check.
        let mut previous: Option<GridSet> = None;
        let mut nested = true;
        let result = attractor_grid_with(&map, 5000, |_, set| {
            if let Some(p) = &previous {
                nested &= set.cells().all(|(i, j)| p.contains(i, j));
            }
            previous = Some(set.clone());
        })
        .map_err(|e| e.to_string())?;
        ensure(nested, || format!("spec {k}: iterates not nested"))?;
        if let AttractorResult2::Stabilized { attractor, .. } = &result {
            stabilized += 1;
            let image = apply_grid(&map, attractor).map_err(|e| e.to_string())?;
            ensure(&image == attractor, || format!("spec {k}: F(A) != A"))?;
        }
    }
    Ok(format!("{stabilized}/20 stabilized; all invariant and nested"))
}

fn criterion_5() -> Check {
    let g = GridGeometry::unit_square(32);
    let mut rng = seeded_rng(5);
    let brute = |x: &GridSet, y: &GridSet| -> f64 {
        let mut worst: f64 = 0.0;
        for (i, j) in x.cells() {
            let a = g.cell_center(i, j);
            let mut best = f64::INFINITY;
            for (k, l) in y.cells() {
                let b = g.cell_center(k, l);
                best = best.min(((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt());
            }
            worst = worst.max(best);
        }
        worst
    };
    for k in 0..50 {
        let random_set = |rng: &mut ChaCha8Rng| {
            let density = rng.gen_range(0.002..0.3);
            let mut s = GridSet::from_fn(g, |_, _| rng.gen_bool(density));
            if s.is_empty() {
                s.insert(rng.gen_range(0..32), rng.gen_range(0..32));
            }
            s
        };
        let x = random_set(&mut rng);
        let y = random_set(&mut rng);
        let d = directed_hausdorff(&x, &y).map_err(|e| e.to_string())?;
        let h = hausdorff(&x, &y).map_err(|e| e.to_string())?;
        let (bxy, byx) = (brute(&x, &y), brute(&y, &x));
        ensure(d == bxy && h == bxy.max(byx), || {
            format!("pair {k}: transform {d}/{h}, brute force {bxy}/{}", bxy.max(byx))
        })?;
    }
    Ok("50 pairs equal to brute force".into())
}

fn criterion_6() -> Check {
    let torus = GridGeometry::unit_torus(256);
    let bound = torus.h * 2f64.sqrt();
    let mut rng = seeded_rng(6);
    let mut worst: f64 = 0.0;
    for k in 0..20 {
        let map = random_disk_spec(&mut rng, 256)
            .and_then(|s| s.compile())
            .map_err(|e| e.to_string())?;
        let lattice = LatticeBasis::from_map(&map).map_err(|e| e.to_string())?;
        let omega: Vec<(usize, usize)> = map.omega().cells().collect();
        let count = rng.gen_range(1..=400);
        let set = GridSet::from_cells(
            *map.geometry(),
            (0..count).map(|_| omega[rng.gen_range(0..omega.len())]),
        );
        let d = check_projection_lemma(&map, &set, &lattice, &torus).map_err(|e| e.to_string())?;
        ensure(d <= bound, || format!("spec {k}: discrepancy {d} > {bound}"))?;
        worst = worst.max(d);
    }
    Ok(format!("max discrepancy {worst:.6} <= h√2 = {bound:.6}"))
}

fn criterion_7() -> Check {
    let mut checked = 0;
    for (k, run) in disk_runs().iter().enumerate() {
        let Some(n) = run.result.steps() else { continue };
        let curve = convergence_curve(&run.map, 5000).map_err(|e| e.to_string())?;
        ensure(curve.is_non_increasing(), || format!("spec {k}: curve increases"))?;
        ensure(curve.points.len() == n + 1 && curve.points[n] == (n, 0.0), || {
            format!("spec {k}: curve does not reach 0 at N={n}")
        })?;
        ensure(n == 0 || curve.points[n - 1].1 > 0.0, || {
            format!("spec {k}: curve reaches 0 before N")
        })?;
        checked += 1;
    }
    Ok(format!("{checked} curves non-increasing, 0 exactly at N"))
}

fn criterion_8() -> Check {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let run = |name: &str| -> Result<std::path::PathBuf, String> {
        let dir = tmp.path().join(name);
        let o = Command::new(env!("CARGO_BIN_EXE_pwt"))
            .args(["torus", "run", "--seed", "3", "--n", "128", "--cap", "2000"])
            .arg("--out")
            .arg(&dir)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(o.status.success(), || String::from_utf8_lossy(&o.stderr).into_owned())?;
        Ok(dir)
    };
    let (a, b) = (run("a")?, run("b")?);
    for file in ["montage.ppm", "final.ppm", "trace.csv", "attractor.pgm", "spec.json"] {
        let fa = std::fs::read(a.join(file)).map_err(|e| e.to_string())?;
        let fb = std::fs::read(b.join(file)).map_err(|e| e.to_string())?;
        ensure(fa == fb, || format!("{file} differs between runs"))?;
    }
    let trace = std::fs::read_to_string(a.join("trace.csv")).map_err(|e| e.to_string())?;
    let lost: Vec<usize> = trace
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    ensure(lost.len() > 1 && lost[1] > 0, || "no lost region at step 1".into())?;
    // Once stabilized, one more step loses nothing.
    let spec = TorusSpec::from_json(&std::fs::read_to_string(a.join("spec.json")).unwrap())
        .map_err(|e| e.to_string())?;
    let rotation = spec.compile().map_err(|e| e.to_string())?;
    let attractor = mask_from_pgm(&std::fs::read(a.join("attractor.pgm")).unwrap(), *rotation.geometry())
        .map_err(|e| e.to_string())?;
    let further = pwt_core::torus::lost_region(&rotation, &attractor).map_err(|e| e.to_string())?;
    ensure(further.is_empty(), || "attractor still loses cells".into())?;
    let montage = RgbImage::from_ppm(&std::fs::read(a.join("montage.ppm")).unwrap())
        .map_err(|e| e.to_string())?;
    ensure(montage.pixels.chunks(3).any(|p| p == RED), || "montage shows no lost region".into())?;
    let n = lost.len() - 1;
    let lost_at_1 = lost[1];
    Ok(format!("identical bytes; lost {lost_at_1} cells at step 1, none after N={n}"))
}

fn criterion_9() -> Check {
    let h = 1.0 / 1024.0;
    let hq = ratio(1, 1024);
    let bound = h * 2f64.sqrt();
    let mut rng = seeded_rng(9);
    let mut worst = 0.0;
    for k in 0..10 {
        let den = 1u64 << rng.gen_range(1..=6);
        let spec = random_itm(&mut rng, 2, den).map_err(|e| e.to_string())?;
        let (n, a) = exact_finite(&spec, 100_000)?;
        let grid = itm_to_grid_spec(&spec, h)
            .and_then(|s| s.compile())
            .map_err(|e| e.to_string())?;
        let res = attractor_grid(&grid, 100_000).map_err(|e| e.to_string())?;
        let gn = res.steps().ok_or("grid run capped")?;
        let ga = cells_to_interval_union(res.final_set(), &ratio(0, 1), &hq).map_err(|e| e.to_string())?;
        let d = to_f64(&hausdorff_exact(&a, &ga).map_err(|e| e.to_string())?);
        ensure(gn == n && d <= bound, || {
            format!("spec {k} {}: exact N={n} A={a}, grid N={gn} A={ga}, d={d}", spec.to_json())
        })?;
        if d > worst {
            worst = d;
        }
    }
    Ok(format!("10 specs agree on N; max d_H {worst:.6} <= {bound:.6}"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "exact 1-D attractor", criterion_1),
        (2, "exchange invariance", criterion_2),
        (3, "two-branch finiteness", criterion_3),
        (4, "grid invariance and nesting", criterion_4),
        (5, "Hausdorff oracle equivalence", criterion_5),
        (6, "projection lemma", criterion_6),
        (7, "convergence curves", criterion_7),
        (8, "figure pipeline determinism", criterion_8),
        (9, "cross-engine agreement", criterion_9),
    ];
    let limits_ms = [10.0, 1_000.0, 10_000.0, 60_000.0, 5_000.0, 60_000.0, f64::INFINITY, f64::INFINITY, f64::INFINITY];
    let mut failures = 0;
    for ((id, title, check), limit) in criteria.into_iter().zip(limits_ms) {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_secs_f64() * 1e3;
        // Criterion 1 times only the engine call; the others time the whole check.
        let outcome = match outcome {
            Ok(_) if id != 1 && ms > limit => Err(format!("took {ms:.0} ms, limit {limit:.0} ms")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {id} PASS  {title}: {detail} [{ms:.0} ms]"),
            Err(detail) => {
                failures += 1;
                println!("criterion {id} FAIL  {title}: {detail} [{ms:.0} ms]");
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
