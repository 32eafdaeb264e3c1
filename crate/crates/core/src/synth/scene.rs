//! Procedural scenes with exact ground truth.
//!
//! Shapes are defined as indicator functions in a local frame (`u` along the
//! long axis, `v` across it, y-up) and rasterized by sampling pixel centers.
//! A shape's centroid and principal axis are measured once by dense
//! sub-pixel sampling of that indicator, so the rendered long axis lands on
//! `true_angle_deg` even for asymmetric shapes like the L tool.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::image::{BinaryMask, Rgb, RgbImage};
use crate::regions::normalize_axial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Background {
    Beige,
    White,
    Dark,
    DeskClutter,
    OpenLab,
}

impl Background {
    pub const ALL: [Background; 5] = [
        Background::Beige,
        Background::White,
        Background::Dark,
        Background::DeskClutter,
        Background::OpenLab,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Background::Beige => "beige",
            Background::White => "white",
            Background::Dark => "dark",
            Background::DeskClutter => "desk_clutter",
            Background::OpenLab => "open_lab",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Bar,
    Ellipse,
    BananaArc,
    Disk,
    #[serde(rename = "l_tool")]
    LTool,
}

impl Shape {
    pub const ALL: [Shape; 5] = [Shape::Bar, Shape::Ellipse, Shape::BananaArc, Shape::Disk, Shape::LTool];

    pub fn name(self) -> &'static str {
        match self {
            Shape::Bar => "bar",
            Shape::Ellipse => "ellipse",
            Shape::BananaArc => "banana_arc",
            Shape::Disk => "disk",
            Shape::LTool => "l_tool",
        }
    }

    pub fn is_round(self) -> bool {
        self == Shape::Disk
    }

    /// Indicator in the local frame, with `scale` the overall length.
    fn contains(self, u: f64, v: f64, scale: f64) -> bool {
        let half = scale / 2.0;
        match self {
            Shape::Bar => u.abs() <= half && v.abs() <= 0.09 * scale,
            Shape::Ellipse => {
                let a = half;
                let b = 0.4 * half;
                (u / a).powi(2) + (v / b).powi(2) <= 1.0
            }
            Shape::BananaArc => {
                // arc of a ring whose center sits above the shape; the arc
                // sags downward and its chord is horizontal
                let span = 50f64.to_radians();
                let radius = 0.6 * scale;
                let thickness = 0.16 * scale;
                let (du, dv) = (u, v - radius);
                let r = du.hypot(dv);
                let ang = du.atan2(-dv);
                (r - radius).abs() <= thickness / 2.0 && ang.abs() <= span
            }
            Shape::Disk => u.hypot(v) <= 0.3 * scale,
            Shape::LTool => {
                let t = 0.075 * scale;
                let handle = u.abs() <= half && v.abs() <= t;
                let foot = u >= half - 0.15 * scale && u <= half && v >= t && v <= t + 0.2 * scale;
                handle || foot
            }
        }
    }
}

/// Centroid and principal-axis offset of a shape in its local frame.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShapeGeometry {
    pub centroid: (f64, f64),
    /// Long-axis angle of the local shape (y-up degrees); 0 for symmetric shapes.
    pub axis_offset_deg: f64,
    /// Largest distance from the centroid to any shape point.
    pub bound_radius: f64,
    pub area: f64,
}

impl ShapeGeometry {
    pub fn measure(shape: Shape, scale: f64) -> Self {
        let step = scale / 500.0;
        let n = (scale / step).ceil() as i64;
        let (mut m, mut su, mut sv, mut suu, mut svv, mut suv) = (0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
        let mut pts = Vec::new();
        for i in -n..=n {
            for j in -n..=n {
                let (u, v) = (i as f64 * step, j as f64 * step);
                if shape.contains(u, v, scale) {
                    m += 1.0;
                    su += u;
                    sv += v;
                    suu += u * u;
                    svv += v * v;
                    suv += u * v;
                    pts.push((u, v));
                }
            }
        }
        let (cu, cv) = (su / m, sv / m);
        let muu = suu / m - cu * cu;
        let mvv = svv / m - cv * cv;
        let muv = suv / m - cu * cv;
        // local frame is already y-up, so no sign flip on the mixed moment
        let offset = if shape.is_round() {
            0.0
        } else {
            normalize_axial(0.5 * (2.0 * muv).atan2(muu - mvv).to_degrees())
        };
        let bound_radius = pts
            .iter()
            .map(|&(u, v)| (u - cu).hypot(v - cv))
            .fold(0.0, f64::max);
        Self {
            centroid: (cu, cv),
            axis_offset_deg: offset,
            bound_radius,
            area: m * step * step,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SceneSpec {
    pub background: Background,
    pub object_shape: Shape,
    pub object_color: Rgb,
    pub true_angle_deg: f64,
    /// Centroid position in raster coordinates.
    pub position: (f64, f64),
    /// Overall object length in pixels.
    pub scale: f64,
    pub noise_sigma: f64,
    pub jitter_px: usize,
    pub shadow: bool,
    pub frame_size: (usize, usize),
}

impl SceneSpec {
    pub fn new(background: Background, shape: Shape) -> Self {
        Self {
            background,
            object_shape: shape,
            object_color: default_color(background, shape),
            true_angle_deg: 0.0,
            position: (319.5, 239.5),
            scale: 200.0,
            noise_sigma: 0.0,
            jitter_px: 0,
            shadow: default_shadow(background),
            frame_size: (640, 480),
        }
    }

    pub fn is_achromatic(&self) -> bool {
        let c = self.object_color;
        c.iter().max().unwrap() - c.iter().min().unwrap() <= 20
    }

    /// Whether the object stays inside the frame under any jitter.
    pub fn fits(&self) -> bool {
        let g = ShapeGeometry::measure(self.object_shape, self.scale);
        let reach = g.bound_radius + self.jitter_px as f64 + 1.0;
        let (w, h) = self.frame_size;
        self.position.0 - reach >= 0.0
            && self.position.1 - reach >= 0.0
            && self.position.0 + reach <= (w - 1) as f64
            && self.position.1 + reach <= (h - 1) as f64
    }
}

/// Object colors per background. Chromatic objects are brighter than the
/// surface they sit on; the achromatic ones exercise grayscale repainting
/// on the two backgrounds where the repainted color is separable.
pub fn default_color(background: Background, shape: Shape) -> Rgb {
    use Background::*;
    use Shape::*;
    match (background, shape) {
        (Dark, Bar) => [245, 245, 245],
        (DeskClutter, LTool) => [150, 150, 152],
        (DeskClutter, Ellipse) => [28, 28, 30],
        (_, Bar) => [235, 45, 45],
        (_, Ellipse) => [45, 95, 235],
        (_, BananaArc) => [250, 210, 40],
        (_, Disk) => [250, 130, 30],
        (_, LTool) => [185, 60, 225],
    }
}

pub fn default_shadow(background: Background) -> bool {
    matches!(background, Background::Beige | Background::White)
}

const SHADOW_OFFSET: (isize, isize) = (9, 9);
const SHADOW_FACTOR: f64 = 0.6;

/// The surface without any object. Cluttered backgrounds use fixed seeds,
/// so a given background kind and size always renders the same.
pub fn render_background(kind: Background, (w, h): (usize, usize)) -> RgbImage {
    match kind {
        Background::Beige => RgbImage::new(w, h, [200, 180, 140]).unwrap(),
        Background::White => RgbImage::new(w, h, [240, 240, 238]).unwrap(),
        Background::Dark => RgbImage::new(w, h, [110, 110, 110]).unwrap(),
        Background::DeskClutter => desk_clutter(w, h),
        Background::OpenLab => open_lab(w, h),
    }
}

fn in_center_zone(x: f64, y: f64, w: usize, h: usize) -> bool {
    let (cx, cy) = (w as f64 / 2.0, h as f64 / 2.0);
    (x - cx).hypot(y - cy) < 0.35 * w as f64
}

fn desk_clutter(w: usize, h: usize) -> RgbImage {
    let mut img = RgbImage::new(w, h, [115, 100, 80]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0xDE5C);
    let palette: [Rgb; 6] = [
        [25, 25, 25],    // keyboard
        [235, 235, 230], // paper
        [50, 70, 140],   // folder
        [140, 40, 40],   // book
        [90, 75, 60],    // mug
        [60, 120, 80],   // mat
    ];
    let mut placed = 0;
    while placed < 9 {
        let rw = rng.random_range(40..140) as f64 * w as f64 / 640.0;
        let rh = rng.random_range(30..110) as f64 * h as f64 / 480.0;
        let x0 = rng.random_range(0.0..(w as f64 - rw));
        let y0 = rng.random_range(0.0..(h as f64 - rh));
        let corners = [(x0, y0), (x0 + rw, y0), (x0, y0 + rh), (x0 + rw, y0 + rh), (x0 + rw / 2.0, y0 + rh / 2.0)];
        if corners.iter().any(|&(x, y)| in_center_zone(x, y, w, h)) {
            continue;
        }
        let color = palette[placed % palette.len()];
        for y in y0 as usize..(y0 + rh) as usize {
            for x in x0 as usize..(x0 + rw) as usize {
                img.put_pixel(x, y, color);
            }
        }
        placed += 1;
    }
    img
}

fn open_lab(w: usize, h: usize) -> RgbImage {
    // vertical brightness gradient on a bluish-gray floor
    let top = [150.0, 165.0, 200.0];
    let bottom = [85.0, 95.0, 125.0];
    let mut img = RgbImage::from_fn(w, h, |_, y| {
        let t = y as f64 / (h - 1) as f64;
        let mix = |i: usize| (top[i] * (1.0 - t) + bottom[i] * t).round() as u8;
        [mix(0), mix(1), mix(2)]
    })
    .unwrap();
    // cabinet bases along the top edge
    let cabinet = [80, 62, 45];
    for (x0, x1) in [(0.0, 0.22), (0.7, 1.0)] {
        for y in 0..(0.12 * h as f64) as usize {
            for x in (x0 * w as f64) as usize..(x1 * w as f64) as usize {
                img.put_pixel(x, y, cabinet);
            }
        }
    }
    img
}

/// Frames plus the exact ground truth for one scene.
#[derive(Clone, Debug)]
pub struct RenderedScene {
    pub frames: Vec<RgbImage>,
    /// Object support without jitter.
    pub truth_mask: BinaryMask,
    pub true_angle_deg: f64,
    /// Integer translation applied to each frame.
    pub offsets: Vec<(isize, isize)>,
    pub round: bool,
}

impl RenderedScene {
    /// Ground truth as it appears in frame `i`.
    pub fn frame_truth(&self, i: usize) -> BinaryMask {
        let (dx, dy) = self.offsets[i];
        self.truth_mask.translated(dx, dy)
    }
}

/// Object support with its centroid at `position`.
pub fn rasterize(spec: &SceneSpec, position: (f64, f64)) -> BinaryMask {
    let geom = ShapeGeometry::measure(spec.object_shape, spec.scale);
    rasterize_with(spec, &geom, position)
}

fn rasterize_with(spec: &SceneSpec, geom: &ShapeGeometry, (px, py): (f64, f64)) -> BinaryMask {
    let (w, h) = spec.frame_size;
    let rot = (spec.true_angle_deg - geom.axis_offset_deg).to_radians();
    let (sin, cos) = rot.sin_cos();
    let r = geom.bound_radius + 2.0;
    let x_lo = (px - r).floor().max(0.0) as usize;
    let x_hi = ((px + r).ceil() as usize).min(w - 1);
    let y_lo = (py - r).floor().max(0.0) as usize;
    let y_hi = ((py + r).ceil() as usize).min(h - 1);
    let mut mask = BinaryMask::new(w, h);
    for y in y_lo..=y_hi {
        for x in x_lo..=x_hi {
            let dx = x as f64 - px;
            let dy = py - y as f64;
            let u = dx * cos + dy * sin + geom.centroid.0;
            let v = -dx * sin + dy * cos + geom.centroid.1;
            if spec.object_shape.contains(u, v, spec.scale) {
                mask.set(x, y, true);
            }
        }
    }
    mask
}

/// Renders `frame_count` frames with per-frame translation jitter, optional
/// cast shadow and additive Gaussian noise. Deterministic for a given seed.
pub fn render_scene(spec: &SceneSpec, frame_count: usize, seed: u64) -> RenderedScene {
    let geom = ShapeGeometry::measure(spec.object_shape, spec.scale);
    let background = render_background(spec.background, spec.frame_size);
    let truth_mask = rasterize_with(spec, &geom, spec.position);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let j = spec.jitter_px as i64;

    let mut frames = Vec::with_capacity(frame_count);
    let mut offsets = Vec::with_capacity(frame_count);
    for _ in 0..frame_count {
        let offset = if j > 0 {
            (rng.random_range(-j..=j) as isize, rng.random_range(-j..=j) as isize)
        } else {
            (0, 0)
        };
        let object = truth_mask.translated(offset.0, offset.1);
        let mut img = background.clone();
        if spec.shadow {
            let shadow = object.translated(SHADOW_OFFSET.0, SHADOW_OFFSET.1);
            for (x, y) in shadow.foreground() {
                let p = img.pixel(x, y);
                img.put_pixel(x, y, p.map(|c| (c as f64 * SHADOW_FACTOR).round() as u8));
            }
        }
        for (x, y) in object.foreground() {
            img.put_pixel(x, y, spec.object_color);
        }
        if spec.noise_sigma > 0.0 {
            add_noise(&mut img, spec.noise_sigma, &mut rng);
        }
        frames.push(img);
        offsets.push(offset);
    }

    let round = spec.object_shape.is_round();
    RenderedScene {
        frames,
        truth_mask,
        true_angle_deg: if round { 0.0 } else { normalize_axial(spec.true_angle_deg) },
        offsets,
        round,
    }
}

fn add_noise(img: &mut RgbImage, sigma: f64, rng: &mut ChaCha8Rng) {
    let normal = Normal::new(0.0f32, sigma as f32).expect("finite sigma");
    for p in img.pixels_mut() {
        for c in p.iter_mut() {
            let n: f32 = normal.sample(rng);
            *c = (*c as f32 + n).round().clamp(0.0, 255.0) as u8;
        }
    }
}
