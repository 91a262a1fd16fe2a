//! Crate-wide error type.

use std::path::PathBuf;

/// Errors reported by stitching stages and file I/O.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid intrinsics: {0}")]
    InvalidIntrinsics(String),

    #[error("matrix is not a rotation (orthonormality or determinant violated): {0}")]
    NotARotation(String),

    #[error("anisotropic rescale rejected: horizontal factor {sx:.6} vs vertical {sy:.6}")]
    AnisotropicRescale { sx: f64, sy: f64 },

    #[error("invalid canvas: {0}")]
    InvalidCanvas(String),

    #[error("polyhedron subdivision level {0} too large (max 4)")]
    SubdivisionTooDeep(u32),

    #[error("blend bands {bands} too large for canvas {width}x{height}")]
    BandsTooLarge { bands: u32, width: usize, height: usize },

    #[error("image too small for {bands} pyramid bands")]
    ImageTooSmallForPyramid { bands: u32 },

    #[error("affine fit is rank deficient ({0} usable points)")]
    RankDeficientFit(usize),

    #[error("camera match graph is not connected")]
    DisconnectedMatchGraph,

    #[error("match file {path}: line {line}: {msg}")]
    MatchParse { path: PathBuf, line: usize, msg: String },

    #[error("scene file schema violation: {0}")]
    SchemaViolation(String),

    #[error("scene references missing image: {0}")]
    MissingImage(PathBuf),

    #[error(
        "resolution mismatch for {path}: scene says {expected_w}x{expected_h}, file is {actual_w}x{actual_h}"
    )]
    ResolutionMismatch {
        path: PathBuf,
        expected_w: u32,
        expected_h: u32,
        actual_w: u32,
        actual_h: u32,
    },

    #[error("empty mask: metric is undefined")]
    EmptyMask,

    #[error("poses file {path}: line {line}: {msg}")]
    PoseParse { path: PathBuf, line: usize, msg: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("image codec error on {path}: {source}")]
    Image {
        path: PathBuf,
        #[source]
        source: image::ImageError,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    pub(crate) fn image(path: impl Into<PathBuf>, source: image::ImageError) -> Self {
        Error::Image { path: path.into(), source }
    }
}
