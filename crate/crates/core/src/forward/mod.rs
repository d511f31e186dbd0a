//! Born-approximated forward model: moving disks in the background medium
//! and the zero-diagonal scattering matrices they produce.

mod born;
mod frame;
mod io;
mod scene;

pub use born::{
    born_s_parameter, farfield_incident_field, incident_field, synthesize_frames, BornModel,
    FieldModel, NoiseSpec, Quadrature,
};
pub use frame::ScatteringFrame;
pub(crate) use io::fmt_real;
pub use io::{read_frames, write_frames, FRAMES_HEADER_TAG};
pub use scene::{
    contrast, contrast_with, position_at, validate_scene, Conductivity, InfiniteTag, MotionIssue,
    ObjectCheck, Scatterer, Scene, SceneReport, Trajectory, Waypoint, DEFAULT_PEC_SIGMA_EFF,
};
