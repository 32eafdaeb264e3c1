//! Moment features of labeled regions: area, centroid, bounding box,
//! long-axis angle and eccentricity.

use fastorient::synth::scene::{rasterize, Background, SceneSpec, Shape};
use fastorient::{label_components, region_props};

fn main() {
    let mut bar = SceneSpec::new(Background::Beige, Shape::Bar);
    bar.true_angle_deg = 35.0;
    bar.scale = 120.0;
    bar.position = (180.0, 200.0);
    let mut disk = SceneSpec::new(Background::Beige, Shape::Disk);
    disk.scale = 100.0;
    disk.position = (470.0, 260.0);

    let mask = rasterize(&bar, bar.position).union(&rasterize(&disk, disk.position)).unwrap();
    let labels = label_components(&mask);
    for r in region_props(&labels) {
        println!(
            "label {}: area {}, centroid ({:.2}, {:.2}), bbox {:?}, angle {:.2} deg, e = {:.3}, axes {:.1} / {:.1}",
            r.label,
            r.area,
            r.centroid.0,
            r.centroid.1,
            (r.bbox.x, r.bbox.y, r.bbox.width, r.bbox.height),
            r.orientation_deg,
            r.eccentricity,
            r.major_axis_length,
            r.minor_axis_length
        );
    }
}
