//! Browser bindings: each call runs one computation and returns an RGBA
//! frame plus a one-line summary.

use wasm_bindgen::prelude::*;

pub mod demo;

#[wasm_bindgen]
pub struct Frame {
    width: usize,
    height: usize,
    rgba: Vec<u8>,
    info: String,
}

#[wasm_bindgen]
impl Frame {
    #[wasm_bindgen(getter)]
    pub fn width(&self) -> usize {
        self.width
    }

    #[wasm_bindgen(getter)]
    pub fn height(&self) -> usize {
        self.height
    }

    pub fn rgba(&self) -> Vec<u8> {
        self.rgba.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn info(&self) -> String {
        self.info.clone()
    }
}

impl From<demo::DemoFrame> for Frame {
    fn from(f: demo::DemoFrame) -> Self {
        Self {
            width: f.image.width,
            height: f.image.height,
            rgba: f.image.to_rgba(),
            info: f.info,
        }
    }
}

/// Random three-sector disk map; shows iterate `step` (clamped to the
/// attractor).
#[wasm_bindgen]
pub fn disk_attractor(seed: u32, n: usize, step: usize) -> Result<Frame, JsError> {
    demo::disk_attractor(seed as u64, n, step)
        .map(Frame::from)
        .map_err(|e| JsError::new(&e))
}

/// Double rotation with region `[x0,x1] x [y0,y1]`.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn double_rotation(
    x0: f64,
    y0: f64,
    x1: f64,
    y1: f64,
    v0x: f64,
    v0y: f64,
    v1x: f64,
    v1y: f64,
    n: usize,
    step: usize,
) -> Result<Frame, JsError> {
    demo::double_rotation([x0, y0], [x1, y1], [v0x, v0y], [v1x, v1y], n, step)
        .map(Frame::from)
        .map_err(|e| JsError::new(&e))
}

/// Exact two-branch interval map on `[0,1]` cut at `cut`; rationals as
/// `"p/q"`. Row `k` of the frame is the `k`-th iterate.
#[wasm_bindgen]
pub fn itm_orbit(cut: &str, v0: &str, v1: &str, width: usize) -> Result<Frame, JsError> {
    demo::itm_orbit(cut, v0, v1, width)
        .map(Frame::from)
        .map_err(|e| JsError::new(&e))
}
