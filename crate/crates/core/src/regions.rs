//! Connected-component labeling and equivalent-ellipse region features.
//!
//! Orientation is reported counterclockwise-positive about an x-right/y-up
//! frame. Raster `y` grows downward, so the mixed moment is negated before
//! the angle is taken; this is the only place that conversion happens.

use serde::Serialize;

use crate::image::BinaryMask;

/// Per-pixel component labels; 0 is background, components are `1..=count`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelMap {
    width: usize,
    height: usize,
    labels: Vec<u32>,
    count: u32,
}

impl LabelMap {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn label(&self, x: usize, y: usize) -> u32 {
        self.labels[y * self.width + x]
    }

    pub fn count(&self) -> usize {
        self.count as usize
    }

    /// Pixel count per label, indexed by label (index 0 is background).
    pub fn areas(&self) -> Vec<usize> {
        let mut areas = vec![0usize; self.count as usize + 1];
        for &l in &self.labels {
            areas[l as usize] += 1;
        }
        areas
    }

    /// Mask of the pixels carrying `label`.
    pub fn mask_of(&self, label: u32) -> BinaryMask {
        let bits = self.labels.iter().map(|&l| l == label && label != 0).collect();
        BinaryMask::from_bits(self.width, self.height, bits).expect("same dimensions")
    }
}

/// 8-connected labeling. Labels follow the raster order of each component's
/// first pixel.
pub fn label_components(mask: &BinaryMask) -> LabelMap {
    let (w, h) = mask.dimensions();
    let bits = mask.bits();
    let mut labels = vec![0u32; w * h];
    let mut next = 0u32;
    let mut stack = Vec::new();
    for start in 0..w * h {
        if !bits[start] || labels[start] != 0 {
            continue;
        }
        next += 1;
        labels[start] = next;
        stack.push(start);
        while let Some(i) = stack.pop() {
            let (x, y) = ((i % w) as isize, (i / w) as isize);
            for dy in -1..=1isize {
                for dx in -1..=1isize {
                    let (nx, ny) = (x + dx, y + dy);
                    if nx < 0 || ny < 0 || nx as usize >= w || ny as usize >= h {
                        continue;
                    }
                    let j = ny as usize * w + nx as usize;
                    if bits[j] && labels[j] == 0 {
                        labels[j] = next;
                        stack.push(j);
                    }
                }
            }
        }
    }
    LabelMap {
        width: w,
        height: h,
        labels,
        count: next,
    }
}

/// Axis-aligned bounding box in pixels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundingBox {
    pub x: usize,
    pub y: usize,
    pub width: usize,
    pub height: usize,
}

impl BoundingBox {
    pub fn contains(&self, (px, py): (f64, f64)) -> bool {
        px >= self.x as f64
            && py >= self.y as f64
            && px <= (self.x + self.width - 1) as f64
            && py <= (self.y + self.height - 1) as f64
    }

    pub fn area(&self) -> usize {
        self.width * self.height
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Region {
    pub label: u32,
    pub area: usize,
    /// Mean of member pixel centers, raster coordinates.
    pub centroid: (f64, f64),
    pub bbox: BoundingBox,
    /// Long-axis angle in degrees, `(-90, 90]`, counterclockwise from the
    /// horizontal with y pointing up.
    pub orientation_deg: f64,
    pub eccentricity: f64,
    /// Full axis lengths of the equivalent ellipse (`4 sqrt(lambda)`).
    pub major_axis_length: f64,
    pub minor_axis_length: f64,
}

/// Integer moment sums for one component.
#[derive(Clone, Copy, Default)]
struct Accum {
    n: u64,
    sx: u64,
    sy: u64,
    sxx: u64,
    syy: u64,
    sxy: u64,
    x_min: usize,
    y_min: usize,
    x_max: usize,
    y_max: usize,
}

impl Accum {
    fn push(&mut self, x: usize, y: usize) {
        if self.n == 0 {
            (self.x_min, self.y_min, self.x_max, self.y_max) = (x, y, x, y);
        } else {
            self.x_min = self.x_min.min(x);
            self.x_max = self.x_max.max(x);
            self.y_min = self.y_min.min(y);
            self.y_max = self.y_max.max(y);
        }
        let (x, y) = (x as u64, y as u64);
        self.n += 1;
        self.sx += x;
        self.sy += y;
        self.sxx += x * x;
        self.syy += y * y;
        self.sxy += x * y;
    }

    /// Central second moment `(n*Sab - Sa*Sb) / n^2`, exact up to the final division.
    fn central(n: u64, sab: u64, sa: u64, sb: u64) -> f64 {
        let n = n as i128;
        let num = n * sab as i128 - sa as i128 * sb as i128;
        num as f64 / (n * n) as f64
    }

    fn into_region(self, label: u32) -> Region {
        let n = self.n;
        let centroid = (self.sx as f64 / n as f64, self.sy as f64 / n as f64);
        let mu20 = Self::central(n, self.sxx, self.sx, self.sx) + 1.0 / 12.0;
        let mu02 = Self::central(n, self.syy, self.sy, self.sy) + 1.0 / 12.0;
        let mu11 = Self::central(n, self.sxy, self.sx, self.sy);
        let shape = EllipseMoments { mu20, mu02, mu11 };
        Region {
            label,
            area: n as usize,
            centroid,
            bbox: BoundingBox {
                x: self.x_min,
                y: self.y_min,
                width: self.x_max - self.x_min + 1,
                height: self.y_max - self.y_min + 1,
            },
            orientation_deg: shape.orientation_deg(),
            eccentricity: shape.eccentricity(),
            major_axis_length: 4.0 * shape.eigenvalues().0.sqrt(),
            minor_axis_length: 4.0 * shape.eigenvalues().1.max(0.0).sqrt(),
        }
    }
}

/// Normalized central second moments in raster (y-down) coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EllipseMoments {
    pub mu20: f64,
    pub mu02: f64,
    pub mu11: f64,
}

impl EllipseMoments {
    /// `(major, minor)` eigenvalues of the covariance matrix.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let mean = (self.mu20 + self.mu02) / 2.0;
        let half_diff = (self.mu20 - self.mu02) / 2.0;
        let root = (half_diff * half_diff + self.mu11 * self.mu11).sqrt();
        (mean + root, mean - root)
    }

    pub fn orientation_deg(&self) -> f64 {
        let theta = 0.5 * (-2.0 * self.mu11).atan2(self.mu20 - self.mu02);
        normalize_axial(theta.to_degrees())
    }

    pub fn eccentricity(&self) -> f64 {
        let (major, minor) = self.eigenvalues();
        if major <= 0.0 {
            return 0.0;
        }
        (1.0 - (minor / major).clamp(0.0, 1.0)).sqrt()
    }
}

/// Maps any angle onto the axial range `(-90, 90]`.
pub fn normalize_axial(deg: f64) -> f64 {
    if deg > -90.0 && deg <= 90.0 {
        return deg + 0.0;
    }
    let r = deg.rem_euclid(180.0);
    // rem_euclid can round up to exactly 180 for tiny negative inputs
    let r = if r >= 180.0 { 0.0 } else { r };
    let out = if r > 90.0 { r - 180.0 } else { r };
    out + 0.0
}

/// Features of every labeled component, ordered by label.
pub fn region_props(labels: &LabelMap) -> Vec<Region> {
    let mut acc = vec![Accum::default(); labels.count()];
    for (i, &l) in labels.labels().iter().enumerate() {
        if l != 0 {
            acc[l as usize - 1].push(i % labels.width, i / labels.width);
        }
    }
    acc.into_iter()
        .enumerate()
        .map(|(i, a)| a.into_region(i as u32 + 1))
        .collect()
}

/// Features of the whole foreground treated as one region; `None` if empty.
pub fn mask_props(mask: &BinaryMask) -> Option<Region> {
    let mut acc = Accum::default();
    for (x, y) in mask.foreground() {
        acc.push(x, y);
    }
    (acc.n > 0).then(|| acc.into_region(1))
}

pub fn distance_to_point(region: &Region, (px, py): (f64, f64)) -> f64 {
    (region.centroid.0 - px).hypot(region.centroid.1 - py)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rect_mask(w: usize, h: usize, x0: usize, y0: usize, rw: usize, rh: usize) -> BinaryMask {
        BinaryMask::from_fn(w, h, |x, y| (x0..x0 + rw).contains(&x) && (y0..y0 + rh).contains(&y))
    }

    #[test]
    fn diagonal_neighbors_join() {
        let m = BinaryMask::from_ascii(&["#.", ".#"]);
        assert_eq!(label_components(&m).count(), 1);
    }

    #[test]
    fn separated_blobs_are_distinct_and_raster_ordered() {
        let m = BinaryMask::from_ascii(&[
            "....##", //
            "##..##", //
            "##....",
        ]);
        let l = label_components(&m);
        assert_eq!(l.count(), 2);
        assert_eq!(l.label(4, 0), 1);
        assert_eq!(l.label(0, 1), 2);
        assert_eq!(l.areas(), vec![10, 4, 4]);
    }

    #[test]
    fn horizontal_rectangle() {
        let m = rect_mask(140, 60, 20, 20, 100, 20);
        let r = &region_props(&label_components(&m))[0];
        assert_eq!(r.orientation_deg, 0.0);
        let expected = (1.0f64 - 400.0 / 10000.0).sqrt();
        assert!((r.eccentricity - expected).abs() < 1e-12, "{}", r.eccentricity);
        assert!((r.eccentricity - 0.98).abs() < 0.001);
        assert_eq!(r.centroid, (69.5, 29.5));
        assert_eq!(r.bbox, BoundingBox { x: 20, y: 20, width: 100, height: 20 });
        assert!((r.major_axis_length - 4.0 * (10000.0f64 / 12.0).sqrt()).abs() < 1e-9);
    }

    #[test]
    fn vertical_rectangle_is_ninety() {
        let m = rect_mask(60, 140, 20, 20, 20, 100);
        let r = &region_props(&label_components(&m))[0];
        assert_eq!(r.orientation_deg, 90.0);
    }

    #[test]
    fn single_pixel_is_well_defined() {
        let mut m = BinaryMask::new(5, 5);
        m.set(2, 3, true);
        let r = &region_props(&label_components(&m))[0];
        assert_eq!(r.area, 1);
        assert_eq!(r.orientation_deg, 0.0);
        assert_eq!(r.eccentricity, 0.0);
        assert!((r.major_axis_length - 4.0 / 12f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn diagonal_line_orientation_sign() {
        // rises to the right on screen: y decreases as x increases
        let m = BinaryMask::from_fn(50, 50, |x, y| x + y == 49 || x + y == 48);
        let r = mask_props(&m).unwrap();
        assert!((r.orientation_deg - 45.0).abs() < 1e-9, "{}", r.orientation_deg);
        let m = BinaryMask::from_fn(50, 50, |x, y| x == y || x == y + 1);
        assert!((mask_props(&m).unwrap().orientation_deg + 45.0).abs() < 1e-9);
    }

    #[test]
    fn distance_examples() {
        let mut r = region_props(&label_components(&rect_mask(3, 3, 1, 1, 1, 1)))[0].clone();
        r.centroid = (320.0, 240.0);
        assert_eq!(distance_to_point(&r, (320.0, 240.0)), 0.0);
        r.centroid = (0.0, 0.0);
        assert_eq!(distance_to_point(&r, (3.0, 4.0)), 5.0);
        r.centroid = (-1.5, 2.0);
        assert!((distance_to_point(&r, (2.5, -1.0)) - 5.0).abs() < 1e-12);
        r.centroid = (10.0, 7.0);
        assert!((distance_to_point(&r, (1.0, 19.0)) - 15.0).abs() < 1e-12);
    }

    #[test]
    fn normalize_axial_range() {
        assert_eq!(normalize_axial(-90.0), 90.0);
        assert_eq!(normalize_axial(90.0), 90.0);
        assert_eq!(normalize_axial(135.0), -45.0);
        assert_eq!(normalize_axial(-1e-20), -1e-20);
        assert_eq!(normalize_axial(-540.0), 0.0);
        assert_eq!(normalize_axial(269.5), 89.5);
        assert_eq!(normalize_axial(180.0), 0.0);
        assert!(normalize_axial(-0.0).is_sign_positive());
    }
}
