use pwt_core::experiments::figures::{planar_layers, record_iteration, torus_layers};
use pwt_core::experiments::generators::{
    random_disk_spec, random_torus_spec, random_two_branch_itm, seeded_rng,
};
use pwt_core::experiments::{
    convergence_curve, finite_type_sweep, itm_to_grid_spec, resolution_scaling,
    semicontinuity_probe, Sampling, SweepConfig, SweepMode,
};
use pwt_core::grid::{
    directed_hausdorff, hausdorff, GridGeometry, PwtMap, PwtSpec, Wrap, DEFAULT_GRID_CAP,
};
use pwt_core::itm::{attractor_exact, ItmSpec, DEFAULT_CAP};
use pwt_core::render::{mask_from_pgm, montage, read_pgm, render_rgb, write_pgm, GRAY};
use pwt_core::torus::{DoubleRotation, TorusSpec};
use serde_json::json;
use std::fs;
use std::path::Path;
use std::time::Instant;

use crate::args::*;
use crate::output::Output;
use crate::Failure;

/// Cell size used when a 1-D spec is fed to a planar command.
const LINE_CELL: f64 = 1.0 / 256.0;

pub fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Itm { action: RunAction::Run(a) } => itm_run(a),
        Command::Grid { action: RunAction::Run(a) } => grid_run(a),
        Command::Torus { action: RunAction::Run(a) } => torus_run(a),
        Command::Sweep(a) => sweep(a),
        Command::Probe { action: ProbeAction::Semicontinuity(a) } => probe(a),
        Command::Curve(a) => curve(a),
        Command::Scale(a) => scale(a),
        Command::Hausdorff(a) => hausdorff_cmd(a),
        Command::Render(a) => render(a),
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::io(path, e))
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::io(path, e))
}

fn spec_path(common: &Common) -> Result<&Path, Failure> {
    common
        .spec
        .as_deref()
        .ok_or_else(|| Failure::Validation("--spec is required".into()))
}

/// A planar spec, or a line-mode 1-D spec embedded at cell size `h`.
fn load_planar(common: &Common, h: f64) -> Result<(PwtSpec, String), Failure> {
    let text = read_text(spec_path(common)?)?;
    let spec = match PwtSpec::from_json(&text) {
        Ok(spec) => spec,
        Err(planar) => match ItmSpec::from_json(&text) {
            Ok(itm) => itm_to_grid_spec(&itm, h)?,
            Err(_) => return Err(planar.into()),
        },
    };
    Ok((spec, text))
}

fn config_of(common: &Common, extra: serde_json::Value) -> serde_json::Value {
    let mut config = json!({
        "spec": common.spec.as_ref().map(|p| p.display().to_string()),
        "cap": common.cap,
        "seed": common.seed,
        "require_finite": common.require_finite,
    });
    if let (Some(base), Some(more)) = (config.as_object_mut(), extra.as_object()) {
        base.extend(more.clone());
    }
    config
}

fn ms_since(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn finish_run(stabilized: bool, require_finite: bool, summary: &str) -> Result<(), Failure> {
    if !stabilized && require_finite {
        return Err(Failure::CapReached(summary.to_string()));
    }
    Ok(())
}

fn itm_run(a: RunArgs) -> Result<(), Failure> {
    let c = &a.common;
    let (spec, text) = match (&c.spec, c.seed) {
        (Some(path), _) => {
            let text = read_text(path)?;
            (ItmSpec::from_json(&text)?, text)
        }
        (None, Some(seed)) => {
            let spec = random_two_branch_itm(&mut seeded_rng(seed), 64)?;
            let text = spec.to_json();
            (spec, text)
        }
        (None, None) => return Err(Failure::Validation("--spec or --seed is required".into())),
    };
    let mut out = Output::new(c.out.as_deref(), "itm run", config_of(c, json!({})))?;
    out.manifest = out.manifest.with_spec(text.as_bytes());
    let start = Instant::now();
    let result = attractor_exact(&spec, c.cap.unwrap_or(DEFAULT_CAP))?;
    out.manifest.wall_ms.push(ms_since(start));
    let summary = result.to_string();
    println!("{summary}");
    out.write("spec.json", text.as_bytes())?;
    out.write("result.txt", format!("{summary}\n").as_bytes())?;
    out.finish()?;
    finish_run(result.is_finite(), c.require_finite, &summary)
}

/// Snapshots, trace, attractor mask and montage shared by the planar and
/// torus runs.
fn iterate_and_render(
    a: &RunArgs,
    map: &PwtMap,
    rotation: Option<&DoubleRotation>,
    out: &mut Output,
) -> Result<(bool, String), Failure> {
    let c = &a.common;
    let start = Instant::now();
    let record = record_iteration(map, c.cap.unwrap_or(DEFAULT_GRID_CAP), a.snapshots.as_deref())?;
    out.manifest.wall_ms.push(ms_since(start));
    out.manifest.residuals = map.residuals();
    let summary = record.result.to_string();
    println!("{summary}");
    if out.is_enabled() {
        let mut frames = Vec::with_capacity(record.snapshots.len());
        for snap in &record.snapshots {
            let layers = match rotation {
                Some(r) => torus_layers(r, snap)?,
                None => planar_layers(map, snap),
            };
            frames.push(render_rgb(&layers)?);
            out.write(&format!("iterate_{:05}.pgm", snap.n), &write_pgm(&snap.iterate))?;
        }
        let sheet = montage(&frames, a.columns.max(1), 2, GRAY)?;
        out.write("montage.ppm", &sheet.to_ppm())?;
        if let Some(last) = frames.last() {
            out.write("final.ppm", &last.to_ppm())?;
        }
        out.write("attractor.pgm", &write_pgm(record.result.final_set()))?;
        out.write("trace.csv", record.trace_csv().as_bytes())?;
    }
    Ok((record.result.is_stabilized(), summary))
}

fn grid_run(a: RunArgs) -> Result<(), Failure> {
    let c = &a.common;
    let (spec, text) = match (&c.spec, c.seed) {
        (Some(_), _) => load_planar(c, LINE_CELL)?,
        (None, Some(seed)) => {
            let spec = random_disk_spec(&mut seeded_rng(seed), a.n)?;
            let text = spec.to_json();
            (spec, text)
        }
        (None, None) => return Err(Failure::Validation("--spec or --seed is required".into())),
    };
    let config = config_of(c, json!({"n": a.n, "snapshots": a.snapshots}));
    let mut out = Output::new(c.out.as_deref(), "grid run", config)?;
    out.manifest = out.manifest.with_spec(text.as_bytes());
    out.write("spec.json", text.as_bytes())?;
    let map = spec.compile()?;
    let (stabilized, summary) = iterate_and_render(&a, &map, None, &mut out)?;
    out.finish()?;
    finish_run(stabilized, c.require_finite, &summary)
}

fn torus_run(a: RunArgs) -> Result<(), Failure> {
    let c = &a.common;
    let spec = match (&c.spec, c.seed) {
        (Some(path), _) => TorusSpec::from_json(&read_text(path)?)?,
        (None, Some(seed)) => random_torus_spec(&mut seeded_rng(seed), a.n)?,
        (None, None) => return Err(Failure::Validation("--spec or --seed is required".into())),
    };
    let text = spec.to_json();
    let config = config_of(c, json!({"n": a.n, "snapshots": a.snapshots}));
    let mut out = Output::new(c.out.as_deref(), "torus run", config)?;
    out.manifest = out.manifest.with_spec(text.as_bytes());
    out.write("spec.json", text.as_bytes())?;
    let rotation = spec.compile()?;
    let (stabilized, summary) = iterate_and_render(&a, rotation.map(), Some(&rotation), &mut out)?;
    out.finish()?;
    finish_run(stabilized, c.require_finite, &summary)
}

fn emit_table(out: &mut Output, name: &str, table: &str) -> Result<(), Failure> {
    if out.is_enabled() {
        out.write(name, table.as_bytes())
    } else {
        print!("{table}");
        Ok(())
    }
}

fn sweep(a: SweepArgs) -> Result<(), Failure> {
    let mut config = SweepConfig::from_json(&read_text(&a.config)?)?;
    config.record_timings |= a.timings;
    let snapshot = serde_json::to_value(&config).map_err(pwt_core::Error::from)?;
    let mut out = Output::new(a.out.as_deref(), "sweep", snapshot)?;
    let start = Instant::now();
    match config.mode {
        SweepMode::FiniteType => {
            let table = finite_type_sweep(&config)?;
            out.manifest.wall_ms = table.rows.iter().map(|r| r.wall_ms).collect();
            out.manifest.residuals = table.rows.iter().flat_map(|r| r.residuals.clone()).collect();
            emit_table(&mut out, "sweep.csv", &table.to_csv())?;
            eprintln!(
                "samples={} stabilized_fraction={}",
                table.rows.len(),
                table.stabilized_fraction()
            );
        }
        SweepMode::Semicontinuity => {
            let Sampling::Random { count, seed, .. } = config.sampling else {
                return Err(Failure::Validation(
                    "semicontinuity mode needs random sampling (count, seed)".into(),
                ));
            };
            let spec = config.working_spec()?;
            let report = semicontinuity_probe(&spec, config.radius, count, config.epsilon, seed, config.cap)?;
            out.manifest.wall_ms.push(ms_since(start));
            emit_table(&mut out, "probe.json", &(report.to_json() + "\n"))?;
        }
        SweepMode::Convergence => {
            let map = config.working_spec()?.compile()?;
            let curve = convergence_curve(&map, config.cap)?;
            out.manifest.wall_ms.push(ms_since(start));
            out.manifest.residuals = map.residuals();
            emit_table(&mut out, "curve.csv", &curve.to_csv())?;
        }
        SweepMode::ResolutionScaling => {
            let report = resolution_scaling(&config.base_spec, &config.resolutions, config.cap)?;
            out.manifest.wall_ms.push(ms_since(start));
            emit_table(&mut out, "scale.csv", &report.to_csv())?;
        }
    }
    out.finish()
}

fn probe(a: ProbeArgs) -> Result<(), Failure> {
    let c = &a.common;
    let (spec, text) = load_planar(c, LINE_CELL)?;
    let config = config_of(c, json!({"radius": a.radius, "samples": a.samples, "epsilon": a.epsilon}));
    let mut out = Output::new(c.out.as_deref(), "probe semicontinuity", config)?;
    out.manifest = out.manifest.with_spec(text.as_bytes());
    let start = Instant::now();
    let report = semicontinuity_probe(
        &spec,
        a.radius,
        a.samples,
        a.epsilon,
        c.seed.unwrap_or(0),
        c.cap.unwrap_or(DEFAULT_GRID_CAP),
    )?;
    out.manifest.wall_ms.push(ms_since(start));
    println!(
        "distinct={} invalid={} capped={} max_directed={} contained={}",
        report.distinct, report.invalid, report.capped, report.max_directed, report.contained
    );
    out.write("probe.json", (report.to_json() + "\n").as_bytes())?;
    out.finish()
}

fn curve(a: CurveArgs) -> Result<(), Failure> {
    let c = &a.common;
    let (spec, text) = load_planar(c, LINE_CELL)?;
    let mut out = Output::new(c.out.as_deref(), "curve", config_of(c, json!({})))?;
    out.manifest = out.manifest.with_spec(text.as_bytes());
    let map = spec.compile()?;
    out.manifest.residuals = map.residuals();
    let start = Instant::now();
    let curve = convergence_curve(&map, c.cap.unwrap_or(DEFAULT_GRID_CAP))?;
    out.manifest.wall_ms.push(ms_since(start));
    emit_table(&mut out, "curve.csv", &curve.to_csv())?;
    out.finish()?;
    finish_run(curve.steps.is_some(), c.require_finite, "convergence reference is the last iterate")
}

fn scale(a: ScaleArgs) -> Result<(), Failure> {
    let c = &a.common;
    let first = *a.resolutions.first().unwrap_or(&LINE_CELL);
    let (spec, text) = load_planar(c, first)?;
    let config = config_of(c, json!({"resolutions": a.resolutions}));
    let mut out = Output::new(c.out.as_deref(), "scale", config)?;
    out.manifest = out.manifest.with_spec(text.as_bytes());
    let start = Instant::now();
    let report = resolution_scaling(&spec, &a.resolutions, c.cap.unwrap_or(DEFAULT_GRID_CAP))?;
    out.manifest.wall_ms.push(ms_since(start));
    emit_table(&mut out, "scale.csv", &report.to_csv())?;
    out.finish()
}

fn hausdorff_cmd(a: HausdorffArgs) -> Result<(), Failure> {
    let bytes_a = read(&a.a)?;
    let bytes_b = read(&a.b)?;
    let (nx, ny, _) = read_pgm(&bytes_a)?;
    let h = a.h.unwrap_or(1.0 / nx as f64);
    let wrap = if a.torus { Wrap::Torus } else { Wrap::None };
    let geometry = GridGeometry::new(nx, ny, h, [0.0, 0.0], wrap)?;
    let x = mask_from_pgm(&bytes_a, geometry)?;
    let y = mask_from_pgm(&bytes_b, geometry)?;
    println!(
        "directed_ab={} directed_ba={} hausdorff={}",
        directed_hausdorff(&x, &y)?,
        directed_hausdorff(&y, &x)?,
        hausdorff(&x, &y)?
    );
    Ok(())
}

fn render(a: RenderArgs) -> Result<(), Failure> {
    let c = &a.common;
    let (spec, text) = load_planar(c, LINE_CELL)?;
    let config = config_of(c, json!({"step": a.step}));
    let mut out = Output::new(c.out.as_deref(), "render", config)?;
    out.manifest = out.manifest.with_spec(text.as_bytes());
    let rotation = TorusSpec::try_from(spec.clone()).ok().map(|t| t.compile()).transpose()?;
    let map = match &rotation {
        Some(r) => r.map().clone(),
        None => spec.compile()?,
    };
    out.manifest.residuals = map.residuals();
    let cap = c.cap.unwrap_or(DEFAULT_GRID_CAP);
    let steps = a.step.map(|n| vec![n]);
    let start = Instant::now();
    let record = record_iteration(&map, cap, Some(steps.as_deref().unwrap_or(&[usize::MAX])))?;
    out.manifest.wall_ms.push(ms_since(start));
    let snap = record
        .snapshots
        .last()
        .ok_or_else(|| Failure::Validation("nothing to render".into()))?;
    let layers = match &rotation {
        Some(r) => torus_layers(r, snap)?,
        None => planar_layers(&map, snap),
    };
    println!("rendered n={} cells={}", snap.n, snap.iterate.count());
    out.write("render.ppm", &render_rgb(&layers)?.to_ppm())?;
    for (k, (mask, _)) in layers.layers.iter().enumerate() {
        out.write(&format!("layer_{k}.pgm"), &write_pgm(mask))?;
    }
    out.finish()
}
