//! Axial medoid of per-frame angles. Angles wrap at +-90, so 89 and -89 are
//! two degrees apart and a plain sort-based median would split them.

use fastorient::{gripper_angle, median_orientation};

fn main() {
    let bursts: [(&str, Vec<f64>); 3] = [
        ("wrapping", vec![89.0, -89.0, 88.0]),
        (
            "three outliers",
            vec![10.2, 9.8, 10.5, 11.0, 9.1, 10.0, 10.3, 9.6, 10.9, 9.9, 10.1, 10.4, -80.0, -79.5, 45.0],
        ),
        ("steady", vec![37.0; 15]),
    ];
    for (name, angles) in bursts {
        let m = median_orientation(&angles).unwrap();
        println!("{name:>15}: median {m:.1} deg, gripper {:.1} deg", gripper_angle(m));
    }
}
