#![allow(dead_code)]

use std::path::{Path, PathBuf};

use fastorient::synth::scene::{render_scene, Background, SceneSpec, Shape};
use fastorient::{save_image, BinaryMask, RgbImage};
use serde_json::Value;

/// Exhaustive Otsu: tries every split and keeps the first maximum of
/// w0 * w1 * (m0 - m1)^2, evaluated in exact rational form.
pub fn otsu_brute(hist: &[u64]) -> Option<usize> {
    let total: u128 = hist.iter().map(|&c| c as u128).sum();
    if total == 0 {
        return None;
    }
    let mut best_t = 0;
    // compare n0*n1*(m0-m1)^2 = (s0*n1 - s1*n0)^2 / (n0*n1) as fractions
    let mut best: Option<(u128, u128)> = None;
    for t in 0..hist.len() {
        let n0: u128 = hist[..=t].iter().map(|&c| c as u128).sum();
        let s0: u128 = hist[..=t].iter().enumerate().map(|(i, &c)| i as u128 * c as u128).sum();
        let n1 = total - n0;
        let s1: u128 = hist[t + 1..]
            .iter()
            .enumerate()
            .map(|(i, &c)| (i + t + 1) as u128 * c as u128)
            .sum();
        let (num, den) = if n0 == 0 || n1 == 0 {
            (0, 1)
        } else {
            let d = (s0 * n1).abs_diff(s1 * n0);
            (d * d, n0 * n1)
        };
        let better = match best {
            None => true,
            Some((bn, bd)) => {
                // num/den > bn/bd, compared without overflow via f64 cross check
                // on the rare huge values and exact arithmetic otherwise
                match (num.checked_mul(bd), bn.checked_mul(den)) {
                    (Some(l), Some(r)) => l > r,
                    _ => (num as f64 / den as f64) > (bn as f64 / bd as f64),
                }
            }
        };
        if better {
            best = Some((num, den));
            best_t = t;
        }
    }
    Some(best_t)
}

/// Union-find labeling with 8-connectivity; labels renumbered in raster
/// order of each component's first pixel.
pub fn label_union_find(mask: &BinaryMask) -> Vec<u32> {
    let (w, h) = mask.dimensions();
    let mut parent: Vec<usize> = (0..w * h).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for y in 0..h {
        for x in 0..w {
            if !mask.get(x, y) {
                continue;
            }
            for (dx, dy) in [(-1isize, -1isize), (0, -1), (1, -1), (-1, 0)] {
                let (nx, ny) = (x as isize + dx, y as isize + dy);
                if mask.get_signed(nx, ny) {
                    let a = find(&mut parent, y * w + x);
                    let b = find(&mut parent, ny as usize * w + nx as usize);
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut out = vec![0u32; w * h];
    let mut names = std::collections::HashMap::new();
    for (i, slot) in out.iter_mut().enumerate() {
        if mask.bits()[i] {
            let root = find(&mut parent, i);
            let next = names.len() as u32 + 1;
            *slot = *names.entry(root).or_insert(next);
        }
    }
    out
}

/// Hole filling by union-find over background pixels: a background pixel
/// stays background iff its 4-connected background set touches the border.
pub fn fill_holes_oracle(mask: &BinaryMask) -> BinaryMask {
    let (w, h) = mask.dimensions();
    let border = w * h;
    let mut parent: Vec<usize> = (0..=w * h).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    let join = |p: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(p, a), find(p, b));
        p[ra] = rb;
    };
    for y in 0..h {
        for x in 0..w {
            if mask.get(x, y) {
                continue;
            }
            let i = y * w + x;
            if x == 0 || y == 0 || x == w - 1 || y == h - 1 {
                join(&mut parent, i, border);
            }
            if x + 1 < w && !mask.get(x + 1, y) {
                join(&mut parent, i, i + 1);
            }
            if y + 1 < h && !mask.get(x, y + 1) {
                join(&mut parent, i, i + w);
            }
        }
    }
    let root = find(&mut parent, border);
    BinaryMask::from_fn(w, h, |x, y| mask.get(x, y) || find(&mut parent, y * w + x) != root)
}

fn axial(a: f64, b: f64) -> f64 {
    let d = (a - b).abs() % 180.0;
    d.min(180.0 - d)
}

/// Medoid by direct evaluation in input order, smallest value on ties.
pub fn medoid_brute(angles: &[f64]) -> f64 {
    let cost = |c: f64| -> f64 {
        let mut sorted = angles.to_vec();
        sorted.sort_by(f64::total_cmp);
        sorted.iter().map(|&a| axial(c, a)).sum()
    };
    let mut best = f64::NAN;
    let mut best_cost = f64::INFINITY;
    for &c in angles {
        let k = cost(c);
        if k < best_cost || (k == best_cost && c < best) {
            best = c;
            best_cost = k;
        }
    }
    best
}

/// Checks an output document against the published layout; returns the
/// first violation.
pub fn validate_output_schema(doc: &Value) -> Result<(), String> {
    let obj = doc.as_object().ok_or("document is not an object")?;
    let keys = ["status", "median_object_angle_deg", "gripper_angle_deg", "round_object", "frames"];
    expect_keys(obj, &keys, "document")?;
    let status = obj["status"].as_str().ok_or("status is not a string")?;
    if status != "ok" && status != "no_target" {
        return Err(format!("bad status {status}"));
    }
    for k in ["median_object_angle_deg", "gripper_angle_deg"] {
        number_or_null(&obj[k], k)?;
        if (status == "ok") == obj[k].is_null() {
            return Err(format!("{k} does not match status {status}"));
        }
    }
    if !obj["round_object"].is_boolean() {
        return Err("round_object is not a bool".into());
    }
    let frames = obj["frames"].as_array().ok_or("frames is not an array")?;
    for (i, f) in frames.iter().enumerate() {
        let fo = f.as_object().ok_or("frame is not an object")?;
        let fkeys = ["index", "status", "object_angle_deg", "centroid", "bbox", "area", "eccentricity"];
        expect_keys(fo, &fkeys, "frame")?;
        if fo["index"].as_u64() != Some(i as u64) {
            return Err(format!("frame {i} has index {}", fo["index"]));
        }
        let fs = fo["status"].as_str().ok_or("frame status is not a string")?;
        if fs != "detected" && fs != "no_target" {
            return Err(format!("bad frame status {fs}"));
        }
        number_or_null(&fo["object_angle_deg"], "object_angle_deg")?;
        number_or_null(&fo["eccentricity"], "eccentricity")?;
        if !fo["area"].is_null() && !fo["area"].is_u64() {
            return Err("area is not an integer".into());
        }
        array_or_null(&fo["centroid"], 2, false, "centroid")?;
        array_or_null(&fo["bbox"], 4, true, "bbox")?;
        let nulls = ["object_angle_deg", "centroid", "bbox", "area", "eccentricity"]
            .iter()
            .filter(|k| fo[**k].is_null())
            .count();
        let expected = if fs == "detected" { 0 } else { 5 };
        if nulls != expected {
            return Err(format!("frame {i} ({fs}) has {nulls} null fields"));
        }
        if let Some(a) = fo["object_angle_deg"].as_f64() {
            if !(a > -90.0 && a <= 90.0) {
                return Err(format!("angle {a} out of range"));
            }
        }
    }
    Ok(())
}

fn expect_keys(obj: &serde_json::Map<String, Value>, keys: &[&str], what: &str) -> Result<(), String> {
    if obj.len() != keys.len() || keys.iter().any(|k| !obj.contains_key(*k)) {
        return Err(format!("{what} keys {:?} differ from {keys:?}", obj.keys().collect::<Vec<_>>()));
    }
    Ok(())
}

fn number_or_null(v: &Value, what: &str) -> Result<(), String> {
    if v.is_null() || v.is_number() {
        Ok(())
    } else {
        Err(format!("{what} is neither number nor null"))
    }
}

fn array_or_null(v: &Value, len: usize, integers: bool, what: &str) -> Result<(), String> {
    if v.is_null() {
        return Ok(());
    }
    let arr = v.as_array().ok_or(format!("{what} is not an array"))?;
    if arr.len() != len || !arr.iter().all(|x| if integers { x.is_u64() } else { x.is_number() }) {
        return Err(format!("{what} malformed: {v}"));
    }
    Ok(())
}

pub fn bar_scene(angle: f64) -> SceneSpec {
    let mut spec = SceneSpec::new(Background::Beige, Shape::Bar);
    spec.true_angle_deg = angle;
    spec.shadow = false;
    spec
}

/// Writes frames as `reach_NN.<ext>` into `dir`.
pub fn write_frames(dir: &Path, frames: &[RgbImage], ext: &str) -> Vec<PathBuf> {
    frames
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let p = dir.join(format!("reach_{i:02}.{ext}"));
            save_image(f, &p).unwrap();
            p
        })
        .collect()
}

pub fn render_frames(spec: &SceneSpec, n: usize, seed: u64) -> Vec<RgbImage> {
    render_scene(spec, n, seed).frames
}
