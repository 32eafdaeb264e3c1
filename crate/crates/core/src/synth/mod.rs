//! Synthetic scenes with exact ground truth, detection scoring and a
//! grasp-feasibility check, plus the evaluation grid built on them.

pub mod eval;
pub mod scene;
pub mod score;

pub use eval::{run_evaluation, EvaluationReport, GridSpec};
pub use scene::{render_scene, Background, RenderedScene, SceneSpec, Shape};
pub use score::{grasp_feasible, score_detection, DetectionCategory, DetectionVerdict, GraspCheck};
