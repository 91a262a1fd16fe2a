//! Camera models, rotation parameterizations and pose-derived homographies.
//!
//! Conventions (used by every downstream stage):
//! - Right-handed frames. A camera looks down its +Z axis; image u grows
//!   right (+X), v grows down (+Y). Yaw rotates +Z toward +X, pitch rotates
//!   +Z toward −Y (up).
//! - [`Rotation`] maps world coordinates into camera coordinates:
//!   `x_cam = R · x_world`. Back-projection therefore uses `Rᵀ`.
//! - Translations are carried on [`Camera`] for completeness but ignored by
//!   projection; the stitching model is rotation-only.

use nalgebra::{Matrix3, Rotation3, UnitQuaternion, Vector2, Vector3};

use crate::error::{Error, Result};

const ORTHO_TOL: f64 = 1e-9;

/// Pinhole intrinsics tied to a specific pixel resolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Intrinsics {
    /// Focal length in pixels (square pixels; one focal for both axes).
    pub focal: f64,
    /// Principal point in continuous pixel coordinates.
    pub principal_x: f64,
    pub principal_y: f64,
    /// Resolution these intrinsics describe.
    pub width: u32,
    pub height: u32,
}

impl Intrinsics {
    pub fn new(focal: f64, principal_x: f64, principal_y: f64, width: u32, height: u32) -> Result<Self> {
        if !(focal > 0.0) || !focal.is_finite() {
            return Err(Error::InvalidIntrinsics(format!("focal must be positive, got {focal}")));
        }
        if width == 0 || height == 0 {
            return Err(Error::InvalidIntrinsics(format!("resolution must be positive, got {width}x{height}")));
        }
        if !principal_x.is_finite() || !principal_y.is_finite() {
            return Err(Error::InvalidIntrinsics("principal point must be finite".into()));
        }
        Ok(Self { focal, principal_x, principal_y, width, height })
    }

    /// Intrinsics with the principal point at the image center.
    pub fn centered(focal: f64, width: u32, height: u32) -> Result<Self> {
        Self::new(focal, width as f64 / 2.0, height as f64 / 2.0, width, height)
    }

    /// K as a matrix.
    pub fn matrix(&self) -> Matrix3<f64> {
        Matrix3::new(
            self.focal, 0.0, self.principal_x,
            0.0, self.focal, self.principal_y,
            0.0, 0.0, 1.0,
        )
    }

    pub fn inverse_matrix(&self) -> Matrix3<f64> {
        let f = self.focal;
        Matrix3::new(
            1.0 / f, 0.0, -self.principal_x / f,
            0.0, 1.0 / f, -self.principal_y / f,
            0.0, 0.0, 1.0,
        )
    }

    /// Horizontal field of view in radians.
    pub fn horizontal_fov(&self) -> f64 {
        2.0 * (self.width as f64 / (2.0 * self.focal)).atan()
    }
}

/// Linearly rescale intrinsics to a new resolution. The two axes must scale
/// by (nearly) the same factor; anisotropic rescaling is rejected because a
/// single-focal model cannot express it.
pub fn rescale_intrinsics(k: &Intrinsics, new_width: u32, new_height: u32) -> Result<Intrinsics> {
    if new_width == 0 || new_height == 0 {
        return Err(Error::InvalidIntrinsics("rescale target must be positive".into()));
    }
    let sx = new_width as f64 / k.width as f64;
    let sy = new_height as f64 / k.height as f64;
    if (sx / sy - 1.0).abs() > 0.01 {
        return Err(Error::AnisotropicRescale { sx, sy });
    }
    Intrinsics::new(k.focal * sx, k.principal_x * sx, k.principal_y * sy, new_width, new_height)
}

/// World-to-camera rotation matrix, validated orthonormal with det +1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation(Matrix3<f64>);

impl Rotation {
    pub fn identity() -> Self {
        Rotation(Matrix3::identity())
    }

    /// Validate RᵀR = I and det = +1 within 1e-9.
    pub fn try_new(m: Matrix3<f64>) -> Result<Self> {
        let gram = m.transpose() * m;
        let dev = (gram - Matrix3::identity()).abs().max();
        if dev > ORTHO_TOL {
            return Err(Error::NotARotation(format!("RᵀR deviates from I by {dev:.3e}")));
        }
        let det = m.determinant();
        if (det - 1.0).abs() > ORTHO_TOL {
            return Err(Error::NotARotation(format!("det = {det:.12}")));
        }
        Ok(Rotation(m))
    }

    /// Nearest rotation in the Frobenius sense (SVD projection); use after
    /// long composition chains to shed accumulated drift.
    pub fn nearest(m: Matrix3<f64>) -> Self {
        let svd = m.svd(true, true);
        let u = svd.u.expect("svd u");
        let vt = svd.v_t.expect("svd v_t");
        let mut r = u * vt;
        if r.determinant() < 0.0 {
            let mut u = u;
            u.column_mut(2).neg_mut();
            r = u * vt;
        }
        Rotation(r)
    }

    #[inline]
    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.0
    }

    /// Composition: apply `self` after `other` (world → other → self).
    pub fn compose(&self, other: &Rotation) -> Rotation {
        Rotation(self.0 * other.0)
    }

    pub fn transpose(&self) -> Rotation {
        Rotation(self.0.transpose())
    }

    /// Yaw rotation: +Z toward +X by `angle` radians.
    pub fn yaw(angle: f64) -> Self {
        rotation_from_angle_axis(&AngleAxis(Vector3::new(0.0, -angle, 0.0)))
    }

    /// Pitch rotation: +Z toward −Y (up) by `angle` radians.
    pub fn pitch(angle: f64) -> Self {
        rotation_from_angle_axis(&AngleAxis(Vector3::new(-angle, 0.0, 0.0)))
    }

    /// Roll about the optical axis.
    pub fn roll(angle: f64) -> Self {
        rotation_from_angle_axis(&AngleAxis(Vector3::new(0.0, 0.0, angle)))
    }
}

/// Angle-axis rotation vector: direction is the axis, magnitude the angle in
/// radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleAxis(pub Vector3<f64>);

impl AngleAxis {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        AngleAxis(Vector3::new(x, y, z))
    }

    pub fn angle(&self) -> f64 {
        self.0.norm()
    }
}

/// Rodrigues' formula. The zero vector maps to the identity.
pub fn rotation_from_angle_axis(v: &AngleAxis) -> Rotation {
    Rotation(*Rotation3::from_scaled_axis(v.0).matrix())
}

/// Inverse of [`rotation_from_angle_axis`] for angles in [0, π]. At angle π
/// the axis sign is ambiguous; it is canonicalized so the first component
/// larger than 1e-9 in magnitude is positive.
pub fn rotation_to_angle_axis(r: &Rotation) -> AngleAxis {
    let q = UnitQuaternion::from_matrix(&r.0);
    let mut v = q.scaled_axis();
    let angle = v.norm();
    if angle > std::f64::consts::PI - 1e-9 {
        for i in 0..3 {
            if v[i].abs() > 1e-9 {
                if v[i] < 0.0 {
                    v = -v;
                }
                break;
            }
        }
    }
    AngleAxis(v)
}

/// A perspective camera: intrinsics plus world-to-camera pose.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Camera {
    pub intrinsics: Intrinsics,
    pub rotation: Rotation,
    /// Stored for completeness; ignored by the rotation-only projection model.
    pub translation: Vector3<f64>,
}

impl Camera {
    pub fn new(intrinsics: Intrinsics, rotation: Rotation) -> Self {
        Camera { intrinsics, rotation, translation: Vector3::zeros() }
    }
}

/// Homography mapping pixels of camera `i` into camera `j`:
/// `H = K_j · R_j · R_iᵀ · K_i⁻¹`, normalized so the bottom-right entry is 1
/// when its magnitude exceeds 1e-12, otherwise by the largest-magnitude
/// entry.
pub fn homography_between(cam_i: &Camera, cam_j: &Camera) -> Matrix3<f64> {
    let h = cam_j.intrinsics.matrix()
        * cam_j.rotation.matrix()
        * cam_i.rotation.matrix().transpose()
        * cam_i.intrinsics.inverse_matrix();
    normalize_homography(h)
}

/// Scale a homography deterministically for comparison.
pub fn normalize_homography(h: Matrix3<f64>) -> Matrix3<f64> {
    let corner = h[(2, 2)];
    if corner.abs() >= 1e-12 {
        return h / corner;
    }
    let largest = h.iter().fold(0.0f64, |acc, &v| if v.abs() > acc.abs() { v } else { acc });
    if largest.abs() >= 1e-12 {
        h / largest
    } else {
        h
    }
}

/// Apply a homography to a pixel; `None` when the point maps to infinity
/// (third homogeneous coordinate below 1e-12 in magnitude).
pub fn apply_homography(h: &Matrix3<f64>, p: Vector2<f64>) -> Option<Vector2<f64>> {
    let q = h * Vector3::new(p.x, p.y, 1.0);
    if q.z.abs() < 1e-12 {
        return None;
    }
    Some(Vector2::new(q.x / q.z, q.y / q.z))
}

/// World-frame unit viewing ray through a pixel (half-pixel-center
/// continuous coordinates). Defined for any pixel, in or out of frame.
pub fn pixel_to_ray(cam: &Camera, pixel: Vector2<f64>) -> Vector3<f64> {
    let d = cam.intrinsics.inverse_matrix() * Vector3::new(pixel.x, pixel.y, 1.0);
    (cam.rotation.matrix().transpose() * d).normalize()
}

/// Project a world-frame unit ray into the camera; `None` when the ray's
/// camera-frame z is at or below 1e-9 (behind the camera), in which case the
/// caller must treat the pixel as invalid.
pub fn ray_to_pixel(cam: &Camera, ray: Vector3<f64>) -> Option<Vector2<f64>> {
    let d = cam.rotation.matrix() * ray;
    if d.z <= 1e-9 {
        return None;
    }
    let k = &cam.intrinsics;
    Some(Vector2::new(
        k.principal_x + k.focal * d.x / d.z,
        k.principal_y + k.focal * d.y / d.z,
    ))
}
