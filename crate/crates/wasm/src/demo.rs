use pwt_core::experiments::figures::{planar_layers, record_iteration, torus_layers};
use pwt_core::experiments::generators::{random_disk_spec, seeded_rng};
use pwt_core::grid::RegionSpec;
use pwt_core::itm::{apply_itm, attractor_exact, Interval1, IntervalUnion, ItmBranch, ItmSpec, Mode};
use pwt_core::rational::{int, parse_rational, ratio, Rational};
use pwt_core::render::{render_rgb, RgbImage, BLUE, WHITE};
use pwt_core::torus::TorusSpec;

const CAP: usize = 5000;
const MAX_ROWS: usize = 64;

pub struct DemoFrame {
    pub image: RgbImage,
    pub info: String,
}

fn msg(e: pwt_core::Error) -> String {
    e.to_string()
}

pub fn disk_attractor(seed: u64, n: usize, step: usize) -> Result<DemoFrame, String> {
    let spec = random_disk_spec(&mut seeded_rng(seed), n).map_err(msg)?;
    let map = spec.compile().map_err(msg)?;
    let record = record_iteration(&map, CAP, Some(&[step])).map_err(msg)?;
    let snap = &record.snapshots[0];
    Ok(DemoFrame {
        image: render_rgb(&planar_layers(&map, snap)).map_err(msg)?,
        info: format!("{} | showing n={} cells={}", record.result, snap.n, snap.iterate.count()),
    })
}

pub fn double_rotation(
    lo: [f64; 2],
    hi: [f64; 2],
    v0: [f64; 2],
    v1: [f64; 2],
    n: usize,
    step: usize,
) -> Result<DemoFrame, String> {
    let rotation = TorusSpec::new(RegionSpec::rect(lo, hi), v0, v1, n)
        .and_then(|s| s.compile())
        .map_err(msg)?;
    let record = record_iteration(rotation.map(), CAP, Some(&[step])).map_err(msg)?;
    let snap = &record.snapshots[0];
    Ok(DemoFrame {
        image: render_rgb(&torus_layers(&rotation, snap).map_err(msg)?).map_err(msg)?,
        info: format!(
            "{} | showing n={} lost={}",
            record.result,
            snap.n,
            snap.lost.count()
        ),
    })
}

/// Pixel `x` of a row is lit when the set meets `[x/w, (x+1)/w]`.
fn strip(set: &IntervalUnion, width: usize, row: usize, image: &mut RgbImage) {
    let w = width as i64;
    for x in 0..width {
        let cell = Interval1::new(ratio(x as i64, w), ratio(x as i64 + 1, w)).expect("ordered");
        if !set.intersect_interval(&cell).is_empty() {
            image.put(x, row, BLUE);
        }
    }
}

pub fn itm_orbit(cut: &str, v0: &str, v1: &str, width: usize) -> Result<DemoFrame, String> {
    let parse = |s: &str| parse_rational(s).map_err(msg);
    let c: Rational = parse(cut)?;
    let spec = ItmSpec::new(
        Interval1::new(int(0), int(1)).map_err(msg)?,
        vec![
            ItmBranch {
                region: Interval1::new(int(0), c.clone()).map_err(msg)?,
                vector: parse(v0)?,
            },
            ItmBranch {
                region: Interval1::new(c, int(1)).map_err(msg)?,
                vector: parse(v1)?,
            },
        ],
        Mode::Line,
    )
    .map_err(msg)?;
    let result = attractor_exact(&spec, CAP).map_err(msg)?;
    let width = width.clamp(8, 2048);
    let mut image = RgbImage::filled(width, MAX_ROWS, WHITE);
    let mut k = IntervalUnion::from_interval(spec.omega().clone());
    for row in 0..MAX_ROWS {
        strip(&k, width, row, &mut image);
        k = apply_itm(&spec, &k).map_err(msg)?;
    }
    Ok(DemoFrame {
        image,
        info: result.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disk_frame_has_grid_size() {
        let f = disk_attractor(1, 64, 1000).unwrap();
        assert_eq!((f.image.width, f.image.height), (64, 64));
        assert!(f.info.starts_with("stabilized"));
    }

    #[test]
    fn double_rotation_reports_loss() {
        let f = double_rotation([0.0, 0.0], [0.5, 1.0], [0.25, 0.0], [0.0, 0.0], 16, 1).unwrap();
        assert!(f.info.contains("lost=64"), "{}", f.info);
        assert!(double_rotation([0.5, 0.0], [0.0, 1.0], [0.0; 2], [0.0; 2], 16, 1).is_err());
    }

    #[test]
    fn itm_orbit_rows_shrink_to_attractor() {
        let f = itm_orbit("1/2", "1/4", "-1/2", 64).unwrap();
        assert_eq!(f.info, "finite N=1 A=[0/1,3/4]");
        let lit = |row: usize| (0..64).filter(|&x| f.image.get(x, row) == BLUE).count();
        assert_eq!(lit(0), 64);
        // [0, 3/4] touches pixel 48 at its left edge.
        assert_eq!(lit(1), 49);
        assert_eq!(lit(MAX_ROWS - 1), 49);
        assert!(itm_orbit("1/2", "0.25", "0", 64).is_err());
    }
}
