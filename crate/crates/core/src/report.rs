//! The machine-readable output document.
//!
//! Floats are written with exactly four decimals so identical inputs give
//! byte-identical documents.

use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::pipeline::{FrameResult, FrameStatus, GraspCommand, GraspStatus};

/// A float serialized as a JSON number with four fixed decimals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Fixed4(pub f64);

impl Fixed4 {
    pub fn text(self) -> String {
        let rounded = (self.0 * 1e4).round() / 1e4;
        // adding 0.0 turns -0.0 into 0.0
        format!("{:.4}", rounded + 0.0)
    }
}

impl Serialize for Fixed4 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return serializer.serialize_none();
        }
        let raw = RawValue::from_string(self.text()).map_err(serde::ser::Error::custom)?;
        raw.serialize(serializer)
    }
}

#[derive(Debug, Serialize)]
pub struct OutputDocument {
    pub status: &'static str,
    pub median_object_angle_deg: Option<Fixed4>,
    pub gripper_angle_deg: Option<Fixed4>,
    pub round_object: bool,
    pub frames: Vec<FrameRecord>,
}

#[derive(Debug, Serialize)]
pub struct FrameRecord {
    pub index: usize,
    pub status: &'static str,
    pub object_angle_deg: Option<Fixed4>,
    pub centroid: Option<[Fixed4; 2]>,
    pub bbox: Option<[usize; 4]>,
    pub area: Option<usize>,
    pub eccentricity: Option<Fixed4>,
}

impl From<&FrameResult> for FrameRecord {
    fn from(f: &FrameResult) -> Self {
        let region = f.region.as_ref();
        FrameRecord {
            index: f.frame_index,
            status: match f.status {
                FrameStatus::Detected => "detected",
                FrameStatus::NoTarget => "no_target",
            },
            object_angle_deg: f.object_angle_deg.map(Fixed4),
            centroid: region.map(|r| [Fixed4(r.centroid.0), Fixed4(r.centroid.1)]),
            bbox: region.map(|r| [r.bbox.x, r.bbox.y, r.bbox.width, r.bbox.height]),
            area: region.map(|r| r.area),
            eccentricity: region.map(|r| Fixed4(r.eccentricity)),
        }
    }
}

impl From<&GraspCommand> for OutputDocument {
    fn from(cmd: &GraspCommand) -> Self {
        OutputDocument {
            status: match cmd.status {
                GraspStatus::Ok => "ok",
                GraspStatus::NoTarget => "no_target",
            },
            median_object_angle_deg: cmd.median_object_angle_deg.map(Fixed4),
            gripper_angle_deg: cmd.gripper_angle_deg.map(Fixed4),
            round_object: cmd.round_object,
            frames: cmd.frames.iter().map(FrameRecord::from).collect(),
        }
    }
}

impl OutputDocument {
    /// Pretty-printed, newline-terminated UTF-8 JSON.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("document serializes");
        text.push('\n');
        text
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_formatting() {
        assert_eq!(Fixed4(40.0).text(), "40.0000");
        assert_eq!(Fixed4(-50.123456).text(), "-50.1235");
        assert_eq!(Fixed4(-0.00001).text(), "0.0000");
        assert_eq!(Fixed4(-0.0).text(), "0.0000");
        assert_eq!(Fixed4(89.99999).text(), "90.0000");
    }

    #[test]
    fn fixed_serializes_as_number() {
        let json = serde_json::to_string(&[Some(Fixed4(1.5)), None]).unwrap();
        assert_eq!(json, "[1.5000,null]");
        let back: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(back[0].as_f64(), Some(1.5));
    }
}
