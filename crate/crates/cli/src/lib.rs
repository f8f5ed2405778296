//! File formats, scene documents, the `statespace` command line and its HTTP
//! service, all built on the `statespace` library.

pub mod api;
pub mod cli;
pub mod format;
pub mod scene;
pub mod service;

pub use api::{execute, ApiError, Context};
pub use scene::{scene_bloch, scene_simplex, SceneDocument, SceneKind};
