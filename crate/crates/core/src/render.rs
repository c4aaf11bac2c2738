//! Binary PGM masks and layered PPM renders.
//!
//! Images put grid row `ny - 1` at the top, so pictures have y pointing up.

use crate::error::{Error, Result};
use crate::grid::{GridGeometry, GridSet};

pub type Rgb = [u8; 3];

pub const WHITE: Rgb = [255, 255, 255];
pub const BLACK: Rgb = [0, 0, 0];
pub const BLUE: Rgb = [0, 0, 255];
pub const RED: Rgb = [255, 0, 0];
pub const GREEN: Rgb = [0, 160, 0];
pub const GRAY: Rgb = [200, 200, 200];

/// Masks drawn in order over a background; later layers overdraw earlier ones.
#[derive(Clone, Debug)]
pub struct RenderLayers {
    pub background: Rgb,
    pub layers: Vec<(GridSet, Rgb)>,
}

impl RenderLayers {
    pub fn new(background: Rgb) -> Self {
        Self {
            background,
            layers: Vec::new(),
        }
    }

    pub fn layer(mut self, mask: GridSet, color: Rgb) -> Self {
        self.layers.push((mask, color));
        self
    }
}

/// Row-major RGB pixels, row 0 at the top.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RgbImage {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<u8>,
}

impl RgbImage {
    pub fn filled(width: usize, height: usize, color: Rgb) -> Self {
        Self {
            width,
            height,
            pixels: color.repeat(width * height),
        }
    }

    pub fn get(&self, x: usize, y: usize) -> Rgb {
        let k = 3 * (y * self.width + x);
        [self.pixels[k], self.pixels[k + 1], self.pixels[k + 2]]
    }

    pub fn put(&mut self, x: usize, y: usize, color: Rgb) {
        let k = 3 * (y * self.width + x);
        self.pixels[k..k + 3].copy_from_slice(&color);
    }

    /// `P6` binary PPM.
    pub fn to_ppm(&self) -> Vec<u8> {
        let mut out = format!("P6\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend_from_slice(&self.pixels);
        out
    }

    pub fn from_ppm(bytes: &[u8]) -> Result<Self> {
        let (width, height, body) = parse_pnm(bytes, b"P6")?;
        if body.len() != 3 * width * height {
            return Err(Error::Image(format!(
                "expected {} pixel bytes, found {}",
                3 * width * height,
                body.len()
            )));
        }
        Ok(Self {
            width,
            height,
            pixels: body.to_vec(),
        })
    }

    /// RGBA bytes for canvas `ImageData`.
    pub fn to_rgba(&self) -> Vec<u8> {
        self.pixels
            .chunks_exact(3)
            .flat_map(|p| [p[0], p[1], p[2], 255])
            .collect()
    }

    /// Cells whose pixel has exactly `color`.
    pub fn mask_of_color(&self, color: Rgb, geometry: GridGeometry) -> Result<GridSet> {
        if (geometry.nx, geometry.ny) != (self.width, self.height) {
            return Err(Error::Geometry(format!(
                "image is {}x{}, grid is {}x{}",
                self.width, self.height, geometry.nx, geometry.ny
            )));
        }
        Ok(GridSet::from_fn(geometry, |i, j| {
            self.get(i, geometry.ny - 1 - j) == color
        }))
    }
}

pub fn render_rgb(layers: &RenderLayers) -> Result<RgbImage> {
    let Some((first, _)) = layers.layers.first() else {
        return Err(crate::error::validation("nothing to render: no layers"));
    };
    let g = *first.geometry();
    let mut img = RgbImage::filled(g.nx, g.ny, layers.background);
    for (mask, color) in &layers.layers {
        first.check_same_geometry(mask)?;
        for (i, j) in mask.cells() {
            img.put(i, g.ny - 1 - j, *color);
        }
    }
    Ok(img)
}

/// `P6\n<nx> <ny>\n255\n` followed by `ny * nx` RGB triples.
pub fn render_ppm(layers: &RenderLayers) -> Result<Vec<u8>> {
    Ok(render_rgb(layers)?.to_ppm())
}

/// Frames laid out left to right in rows of `columns`, separated by `gap`
/// pixels of `gap_color`.
pub fn montage(frames: &[RgbImage], columns: usize, gap: usize, gap_color: Rgb) -> Result<RgbImage> {
    let Some(first) = frames.first() else {
        return Err(crate::error::validation("montage needs at least one frame"));
    };
    if frames
        .iter()
        .any(|f| (f.width, f.height) != (first.width, first.height))
    {
        return Err(Error::Geometry("montage frames differ in size".into()));
    }
    let columns = columns.clamp(1, frames.len());
    let rows = frames.len().div_ceil(columns);
    let width = columns * first.width + (columns - 1) * gap;
    let height = rows * first.height + (rows - 1) * gap;
    let mut out = RgbImage::filled(width, height, gap_color);
    for (k, frame) in frames.iter().enumerate() {
        let x0 = (k % columns) * (first.width + gap);
        let y0 = (k / columns) * (first.height + gap);
        for y in 0..frame.height {
            let src = &frame.pixels[3 * y * frame.width..3 * (y + 1) * frame.width];
            let start = 3 * ((y0 + y) * width + x0);
            out.pixels[start..start + src.len()].copy_from_slice(src);
        }
    }
    Ok(out)
}

/// `P5\n<nx> <ny>\n255\n` then `ny` rows of `nx` bytes, 255 for set cells.
pub fn write_pgm(set: &GridSet) -> Vec<u8> {
    let (nx, ny) = (set.nx(), set.ny());
    let mut out = format!("P5\n{nx} {ny}\n255\n").into_bytes();
    out.reserve(nx * ny);
    for row in (0..ny).rev() {
        out.extend((0..nx).map(|i| if set.contains(i, row) { 255u8 } else { 0 }));
    }
    out
}

/// Width, height and raw bytes of a `P5` image.
pub fn read_pgm(bytes: &[u8]) -> Result<(usize, usize, &[u8])> {
    let (width, height, body) = parse_pnm(bytes, b"P5")?;
    if body.len() != width * height {
        return Err(Error::Image(format!(
            "expected {} pixel bytes, found {}",
            width * height,
            body.len()
        )));
    }
    Ok((width, height, body))
}

/// Nonzero pixels become set cells. The image size must match `geometry`.
pub fn mask_from_pgm(bytes: &[u8], geometry: GridGeometry) -> Result<GridSet> {
    let (width, height, body) = read_pgm(bytes)?;
    if (width, height) != (geometry.nx, geometry.ny) {
        return Err(Error::Geometry(format!(
            "image is {width}x{height}, grid is {}x{}",
            geometry.nx, geometry.ny
        )));
    }
    Ok(GridSet::from_fn(geometry, |i, j| {
        body[(height - 1 - j) * width + i] != 0
    }))
}

fn parse_pnm<'a>(bytes: &'a [u8], magic: &[u8; 2]) -> Result<(usize, usize, &'a [u8])> {
    if bytes.len() < 2 || &bytes[..2] != magic {
        return Err(Error::Image(format!(
            "missing {} magic number",
            String::from_utf8_lossy(magic)
        )));
    }
    let mut pos = 2;
    let mut fields = [0usize; 3];
    for field in &mut fields {
        loop {
            match bytes.get(pos) {
                Some(b'#') => {
                    while bytes.get(pos).is_some_and(|&b| b != b'\n') {
                        pos += 1;
                    }
                }
                Some(b) if b.is_ascii_whitespace() => pos += 1,
                _ => break,
            }
        }
        let start = pos;
        while bytes.get(pos).is_some_and(u8::is_ascii_digit) {
            pos += 1;
        }
        *field = std::str::from_utf8(&bytes[start..pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Image("malformed header".into()))?;
    }
    let [width, height, maxval] = fields;
    if maxval != 255 {
        return Err(Error::Image(format!("unsupported maxval {maxval}")));
    }
    if !bytes.get(pos).is_some_and(u8::is_ascii_whitespace) {
        return Err(Error::Image("malformed header".into()));
    }
    Ok((width, height, &bytes[pos + 1..]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_blue_layer() {
        let g = GridGeometry::unit_square(3);
        let bytes = render_ppm(&RenderLayers::new(WHITE).layer(GridSet::full(g), BLUE)).unwrap();
        let mut expected = b"P6\n3 3\n255\n".to_vec();
        expected.extend(BLUE.repeat(9));
        assert_eq!(bytes, expected);
    }

    #[test]
    fn empty_layer_leaves_background() {
        let g = GridGeometry::unit_square(2);
        let img = render_rgb(&RenderLayers::new(WHITE).layer(GridSet::empty(g), RED)).unwrap();
        assert_eq!(img, RgbImage::filled(2, 2, WHITE));
    }

    #[test]
    fn later_layers_overdraw_and_row_zero_is_top() {
        let g = GridGeometry::unit_square(2);
        let bottom_left = GridSet::from_cells(g, [(0, 0)]);
        let img = render_rgb(
            &RenderLayers::new(WHITE)
                .layer(GridSet::full(g), BLUE)
                .layer(bottom_left, RED),
        )
        .unwrap();
        assert_eq!(img.get(0, 1), RED);
        assert_eq!(img.get(0, 0), BLUE);
    }

    #[test]
    fn no_layers_or_mismatched_layers_fail() {
        assert!(render_ppm(&RenderLayers::new(WHITE)).is_err());
        let a = GridSet::full(GridGeometry::unit_square(2));
        let b = GridSet::full(GridGeometry::unit_square(3));
        assert!(render_ppm(&RenderLayers::new(WHITE).layer(a, RED).layer(b, BLUE)).is_err());
    }

    #[test]
    fn pgm_golden_bytes() {
        let g = GridGeometry::unit_square(3);
        let set = GridSet::from_cells(g, [(0, 0), (2, 2)]);
        let bytes = write_pgm(&set);
        // Top row first: (2, 2) is the top-right pixel.
        let mut expected = b"P5\n3 3\n255\n".to_vec();
        expected.extend_from_slice(&[0, 0, 255, 0, 0, 0, 255, 0, 0]);
        assert_eq!(bytes, expected);
    }

    #[test]
    fn pgm_header_with_comment() {
        let bytes = b"P5\n# made by hand\n2 1\n255\n\xff\x00";
        let g = GridGeometry::new(2, 1, 1.0, [0.0, 0.0], Default::default()).unwrap();
        let set = mask_from_pgm(bytes, g).unwrap();
        assert!(set.contains(0, 0) && !set.contains(1, 0));
        assert!(read_pgm(b"P6\n1 1\n255\n\x00").is_err());
        assert!(read_pgm(b"P5\n2 2\n255\n\x00").is_err());
        assert!(read_pgm(b"P5\n1 1\n65535\n\x00\x00").is_err());
    }

    #[test]
    fn montage_layout() {
        let a = RgbImage::filled(2, 1, RED);
        let b = RgbImage::filled(2, 1, BLUE);
        let m = montage(&[a, b.clone(), b], 2, 1, BLACK).unwrap();
        assert_eq!((m.width, m.height), (5, 3));
        assert_eq!(m.get(0, 0), RED);
        assert_eq!(m.get(2, 0), BLACK);
        assert_eq!(m.get(3, 0), BLUE);
        assert_eq!(m.get(0, 2), BLUE);
        assert_eq!(m.get(4, 2), BLACK);
    }

    proptest! {
        #[test]
        fn pgm_round_trip(nx in 1usize..70, ny in 1usize..20, seed in any::<u64>()) {
            let g = GridGeometry { nx, ny, h: 1.0, wrap: Default::default(), origin: [0.0, 0.0] };
            let mut s = seed | 1;
            let set = GridSet::from_fn(g, |_, _| { s ^= s << 13; s ^= s >> 7; s ^= s << 17; s & 1 == 1 });
            let bytes = write_pgm(&set);
            prop_assert_eq!(&mask_from_pgm(&bytes, g).unwrap(), &set);
            prop_assert_eq!(write_pgm(&mask_from_pgm(&bytes, g).unwrap()), bytes);
        }

        #[test]
        fn disjoint_layers_decode_from_render(seed in any::<u64>()) {
            let g = GridGeometry::unit_square(17);
            let mut s = seed | 1;
            let mut next = || { s ^= s << 13; s ^= s >> 7; s ^= s << 17; s % 3 };
            let labels: Vec<u64> = (0..g.cell_count()).map(|_| next()).collect();
            let layer = |k: u64| GridSet::from_fn(g, |i, j| labels[j * g.nx + i] == k);
            let (a, b) = (layer(1), layer(2));
            let img = RgbImage::from_ppm(&render_ppm(
                &RenderLayers::new(WHITE).layer(a.clone(), BLUE).layer(b.clone(), RED),
            ).unwrap()).unwrap();
            prop_assert_eq!(img.mask_of_color(BLUE, g).unwrap(), a);
            prop_assert_eq!(img.mask_of_color(RED, g).unwrap(), b);
        }
    }
}
