//! Panorama stitching from known camera parameters.
//!
//! Given a set of overlapping perspective images with per-image intrinsics
//! and rotations, this crate aligns them in 3D, renders them onto a chosen
//! panoramic projection, finds seams between overlapping images with a
//! multi-label graph-cut energy minimization, and blends the result into a
//! single panorama.
//!
//! The main stages, each usable on its own:
//!
//! - [`geometry`]: camera models, rotations and pose-derived homographies.
//! - [`projection`]: panoramic projection formats (equirectangular, cubemap,
//!   tangent, Panini, little-planet, cylindrical, fisheye, subdivided
//!   icosahedron) and the inverse-mapping warper.
//! - [`seam`]: multi-image seam labeling by alpha-expansion over a
//!   color + gradient × texture cost.
//! - [`blend`]: feathering and multiband (Laplacian pyramid) compositing.
//! - [`meshwarp`]: optional NCC block-matching local alignment refinement.
//! - [`bundle`]: optional rotation-only bundle adjustment over 2D matches.
//! - [`pipeline`]: scene files, orchestration, synthetic scenes and metrics.
//!
//! # Coordinate conventions
//!
//! Right-handed world frame anchored to the first camera: the camera looks
//! down +Z, image u grows right (+X), image v grows down (+Y), so "up" is
//! −Y. Yaw rotates +Z toward +X, pitch rotates +Z toward −Y (up). All
//! internal image math is floating point in [0, 1]; continuous pixel
//! coordinates put the center of pixel (i, j) at (i + 0.5, j + 0.5).

pub mod blend;
pub mod bundle;
pub mod error;
pub mod geometry;
pub mod img;
pub mod meshwarp;
pub mod pipeline;
pub mod projection;
pub mod seam;

pub use error::{Error, Result};
