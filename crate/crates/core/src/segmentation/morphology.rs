//! Binary erosion/dilation with a Euclidean disk. Pixels outside the raster
//! are background for both operations.
//!
//! The disk is decomposed into one horizontal run per row offset, and each
//! run is tested in O(1) against per-row prefix counts of foreground pixels.

use crate::image::BinaryMask;

/// Half-width of the disk's horizontal run at each row offset `-r..=r`:
/// all `dx` with `dx^2 + dy^2 <= r^2`.
fn disk_runs(radius: usize) -> Vec<(isize, usize)> {
    let r = radius as isize;
    (-r..=r)
        .map(|dy| {
            let rem = (r * r - dy * dy) as usize;
            let mut w = (rem as f64).sqrt() as usize;
            while (w + 1) * (w + 1) <= rem {
                w += 1;
            }
            while w * w > rem {
                w -= 1;
            }
            (dy, w)
        })
        .collect()
}

/// Disk offsets `(dx, dy)` with Euclidean norm at most `radius`.
pub fn disk_offsets(radius: usize) -> Vec<(isize, isize)> {
    disk_runs(radius)
        .into_iter()
        .flat_map(|(dy, w)| (-(w as isize)..=w as isize).map(move |dx| (dx, dy)))
        .collect()
}

struct RowPrefix {
    width: usize,
    counts: Vec<u32>,
}

impl RowPrefix {
    fn new(mask: &BinaryMask) -> Self {
        let width = mask.width();
        let mut counts = Vec::with_capacity((width + 1) * mask.height());
        for row in mask.bits().chunks(width) {
            let mut acc = 0u32;
            counts.push(0);
            for &b in row {
                acc += b as u32;
                counts.push(acc);
            }
        }
        Self { width, counts }
    }

    /// Foreground count in row `y`, columns `[lo, hi)`.
    #[inline]
    fn count(&self, y: usize, lo: usize, hi: usize) -> u32 {
        let base = y * (self.width + 1);
        self.counts[base + hi] - self.counts[base + lo]
    }
}

pub fn erode(mask: &BinaryMask, radius: usize) -> BinaryMask {
    let (w, h) = mask.dimensions();
    let runs = disk_runs(radius);
    let prefix = RowPrefix::new(mask);
    let mut out = BinaryMask::new(w, h);
    let bits = out.bits_mut();
    for y in 0..h {
        for x in 0..w {
            if !mask.bits()[y * w + x] {
                continue;
            }
            let inside = runs.iter().all(|&(dy, hw)| {
                let yy = y as isize + dy;
                if yy < 0 || yy as usize >= h || x < hw || x + hw >= w {
                    return false;
                }
                prefix.count(yy as usize, x - hw, x + hw + 1) as usize == 2 * hw + 1
            });
            bits[y * w + x] = inside;
        }
    }
    out
}

pub fn dilate(mask: &BinaryMask, radius: usize) -> BinaryMask {
    let (w, h) = mask.dimensions();
    let runs = disk_runs(radius);
    let prefix = RowPrefix::new(mask);
    let mut out = BinaryMask::new(w, h);
    let bits = out.bits_mut();
    for y in 0..h {
        for x in 0..w {
            if mask.bits()[y * w + x] {
                bits[y * w + x] = true;
                continue;
            }
            bits[y * w + x] = runs.iter().any(|&(dy, hw)| {
                let yy = y as isize + dy;
                if yy < 0 || yy as usize >= h {
                    return false;
                }
                let lo = x.saturating_sub(hw);
                let hi = (x + hw + 1).min(w);
                prefix.count(yy as usize, lo, hi) > 0
            });
        }
    }
    out
}

pub fn morph_open(mask: &BinaryMask, radius: usize) -> BinaryMask {
    dilate(&erode(mask, radius), radius)
}

pub fn morph_close(mask: &BinaryMask, radius: usize) -> BinaryMask {
    erode(&dilate(mask, radius), radius)
}
