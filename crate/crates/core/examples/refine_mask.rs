//! Mask cleanup: small specks removed, holes filled, outline smoothed by a
//! disk opening and closing.

use fastorient::segmentation::{refine_mask, SegmentationConfig};
use fastorient::{label_components, BinaryMask};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let noisy = BinaryMask::from_fn(200, 150, |x, y| {
        let (dx, dy) = (x as f64 - 100.0, y as f64 - 75.0);
        let blob = (dx / 70.0).powi(2) + (dy / 40.0).powi(2) <= 1.0;
        let hole = (dx - 20.0).hypot(dy) < 8.0 || (dx + 30.0).hypot(dy + 10.0) < 5.0;
        (blob && !hole && !rng.random_bool(0.05)) || rng.random_bool(0.01)
    });
    let cfg = SegmentationConfig {
        min_area: 500,
        ..SegmentationConfig::default()
    };
    let refined = refine_mask(&noisy, &cfg);

    for (name, m) in [("noisy", &noisy), ("refined", &refined)] {
        let holes = label_components(&m.complement()).count() - 1;
        println!(
            "{name:>8}: {} px, {} components, {} enclosed background pieces",
            m.count(),
            label_components(m).count(),
            holes
        );
    }
}
