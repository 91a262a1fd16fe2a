//! Minimal raster containers and sampling kernels shared by all stages.
//!
//! Continuous pixel coordinates follow the half-pixel-center convention:
//! the center of pixel `(i, j)` is at `(i + 0.5, j + 0.5)`, so an image of
//! width `w` spans `[0, w]` in continuous coordinates.

use std::path::Path;

use crate::error::{Error, Result};

/// Row-major 2D grid of copyable values.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid<T: Copy> {
    width: usize,
    height: usize,
    data: Vec<T>,
}

/// RGB image, f32 per channel in [0, 1].
pub type ImageRgb = Grid<[f32; 3]>;
/// Single-channel f32 image.
pub type ImageGray = Grid<f32>;
/// Binary mask; nonzero means set.
pub type Mask = Grid<u8>;
/// Double-precision scalar field (seam cost maps, distances).
pub type Field = Grid<f64>;

impl<T: Copy> Grid<T> {
    pub fn from_value(width: usize, height: usize, value: T) -> Self {
        Self { width, height, data: vec![value; width * height] }
    }

    pub fn from_vec(width: usize, height: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), width * height, "grid data length mismatch");
        Self { width, height, data }
    }

    /// Build by evaluating `f(x, y)` at every pixel.
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Self { width, height, data }
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> T {
        debug_assert!(x < self.width && y < self.height);
        self.data[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, value: T) {
        debug_assert!(x < self.width && y < self.height);
        self.data[y * self.width + x] = value;
    }

    #[inline]
    pub fn data(&self) -> &[T] {
        &self.data
    }

    #[inline]
    pub fn data_mut(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn row(&self, y: usize) -> &[T] {
        &self.data[y * self.width..(y + 1) * self.width]
    }

    /// Mutable rows for parallel fills; each row is an independent slice.
    pub fn rows_mut(&mut self) -> std::slice::ChunksMut<'_, T> {
        self.data.chunks_mut(self.width)
    }

    pub fn map<U: Copy>(&self, f: impl Fn(T) -> U) -> Grid<U> {
        Grid { width: self.width, height: self.height, data: self.data.iter().map(|&v| f(v)).collect() }
    }

    pub fn same_size<U: Copy>(&self, other: &Grid<U>) -> bool {
        self.width == other.width && self.height == other.height
    }
}

impl Mask {
    #[inline]
    pub fn is_set(&self, x: usize, y: usize) -> bool {
        self.get(x, y) != 0
    }

    pub fn count_set(&self) -> usize {
        self.data.iter().filter(|&&v| v != 0).count()
    }

    pub fn any_set(&self) -> bool {
        self.data.iter().any(|&v| v != 0)
    }

    /// Tight bounding box of set pixels as (x0, y0, x1, y1), inclusive; None if empty.
    pub fn bounding_box(&self) -> Option<(usize, usize, usize, usize)> {
        let (mut x0, mut y0, mut x1, mut y1) = (usize::MAX, usize::MAX, 0usize, 0usize);
        let mut any = false;
        for y in 0..self.height {
            let row = self.row(y);
            for (x, &v) in row.iter().enumerate() {
                if v != 0 {
                    any = true;
                    x0 = x0.min(x);
                    y0 = y0.min(y);
                    x1 = x1.max(x);
                    y1 = y1.max(y);
                }
            }
        }
        any.then_some((x0, y0, x1, y1))
    }
}

/// Rec.601 luminance.
#[inline]
pub fn luminance(rgb: [f32; 3]) -> f32 {
    0.299 * rgb[0] + 0.587 * rgb[1] + 0.114 * rgb[2]
}

/// Bilinear sample at continuous coordinates; `None` if any needed tap is
/// outside the image. An exact hit on the last pixel center needs no second
/// tap and stays valid.
pub fn sample_bilinear(img: &ImageRgb, u: f64, v: f64) -> Option<[f32; 3]> {
    let x = u - 0.5;
    let y = v - 0.5;
    let (w, h) = (img.width(), img.height());
    if !(0.0..=(w - 1) as f64).contains(&x) || !(0.0..=(h - 1) as f64).contains(&y) {
        return None;
    }
    let x0 = x.floor() as usize;
    let y0 = y.floor() as usize;
    let tx = (x - x0 as f64) as f32;
    let ty = (y - y0 as f64) as f32;
    let x1 = if x0 + 1 < w { x0 + 1 } else { x0 };
    let y1 = if y0 + 1 < h { y0 + 1 } else { y0 };
    if (x0 + 1 >= w && tx > 0.0) || (y0 + 1 >= h && ty > 0.0) {
        return None;
    }
    let p00 = img.get(x0, y0);
    let p10 = img.get(x1, y0);
    let p01 = img.get(x0, y1);
    let p11 = img.get(x1, y1);
    let mut out = [0f32; 3];
    for c in 0..3 {
        let top = p00[c] * (1.0 - tx) + p10[c] * tx;
        let bot = p01[c] * (1.0 - tx) + p11[c] * tx;
        out[c] = top * (1.0 - ty) + bot * ty;
    }
    Some(out)
}

/// Bilinear sample with horizontal wrap-around (for 360° equirectangular
/// sources) and vertical clamp.
pub fn sample_bilinear_wrap_x(img: &ImageRgb, u: f64, v: f64) -> [f32; 3] {
    let (w, h) = (img.width(), img.height());
    let x = u - 0.5;
    let y = (v - 0.5).clamp(0.0, (h - 1) as f64);
    let xw = x.rem_euclid(w as f64);
    let x0 = xw.floor() as usize % w;
    let x1 = (x0 + 1) % w;
    let y0 = y.floor() as usize;
    let y1 = (y0 + 1).min(h - 1);
    let tx = (xw - xw.floor()) as f32;
    let ty = (y - y0 as f64) as f32;
    let p00 = img.get(x0, y0);
    let p10 = img.get(x1, y0);
    let p01 = img.get(x0, y1);
    let p11 = img.get(x1, y1);
    let mut out = [0f32; 3];
    for c in 0..3 {
        let top = p00[c] * (1.0 - tx) + p10[c] * tx;
        let bot = p01[c] * (1.0 - tx) + p11[c] * tx;
        out[c] = top * (1.0 - ty) + bot * ty;
    }
    out
}

/// Separable convolution of a gray image with the same odd-length kernel in
/// both directions, replicating edge pixels.
pub fn convolve_separable(img: &ImageGray, kernel: &[f32]) -> ImageGray {
    assert!(kernel.len() % 2 == 1);
    let r = kernel.len() / 2;
    let (w, h) = (img.width(), img.height());
    let mut tmp = ImageGray::from_value(w, h, 0.0);
    for y in 0..h {
        let row = img.row(y);
        for x in 0..w {
            let mut acc = 0.0f32;
            for (k, &kv) in kernel.iter().enumerate() {
                let xi = (x as isize + k as isize - r as isize).clamp(0, w as isize - 1) as usize;
                acc += row[xi] * kv;
            }
            tmp.set(x, y, acc);
        }
    }
    let mut out = ImageGray::from_value(w, h, 0.0);
    for y in 0..h {
        for x in 0..w {
            let mut acc = 0.0f32;
            for (k, &kv) in kernel.iter().enumerate() {
                let yi = (y as isize + k as isize - r as isize).clamp(0, h as isize - 1) as usize;
                acc += tmp.get(x, yi) * kv;
            }
            out.set(x, y, acc);
        }
    }
    out
}

/// Exact squared Euclidean distance transform (Felzenszwalb–Huttenlocher):
/// per-pixel squared distance to the nearest set pixel of `sites`, `f64::MAX`
/// if the mask is empty. Also returns the nearest site per pixel.
pub fn distance_transform(sites: &Mask) -> (Field, Grid<(u32, u32)>) {
    let (w, h) = (sites.width(), sites.height());
    const INF: f64 = 1e30;

    // Column pass: nearest site in the same column.
    let mut col_d = Field::from_value(w, h, INF);
    let mut col_site = Grid::<u32>::from_value(w, h, u32::MAX);
    for x in 0..w {
        let mut f = vec![INF; h];
        for y in 0..h {
            if sites.is_set(x, y) {
                f[y] = 0.0;
            }
        }
        let (d, arg) = dt_1d(&f);
        for y in 0..h {
            col_d.set(x, y, d[y]);
            col_site.set(x, y, arg[y] as u32);
        }
    }

    // Row pass over the column distances.
    let mut dist = Field::from_value(w, h, INF);
    let mut nearest = Grid::<(u32, u32)>::from_value(w, h, (u32::MAX, u32::MAX));
    for y in 0..h {
        let f: Vec<f64> = (0..w).map(|x| col_d.get(x, y)).collect();
        let (d, arg) = dt_1d(&f);
        for x in 0..w {
            dist.set(x, y, d[x]);
            let sx = arg[x];
            let sy = col_site.get(sx, y);
            nearest.set(x, y, (sx as u32, sy));
        }
    }
    (dist, nearest)
}

/// 1D lower envelope of parabolas rooted at (i, f[i]); returns squared
/// distances and the argmin index per position. Sentinels are finite so the
/// arithmetic stays NaN-free when columns hold no sites (f = 1e30).
fn dt_1d(f: &[f64]) -> (Vec<f64>, Vec<usize>) {
    const Z_INF: f64 = 1e35;
    let n = f.len();
    let intersect = |q: usize, p: usize| -> f64 {
        ((f[q] + (q * q) as f64) - (f[p] + (p * p) as f64)) / (2.0 * (q as f64 - p as f64))
    };
    let mut v = vec![0usize; n];
    let mut z = vec![0f64; n + 1];
    let mut k = 0usize;
    v[0] = 0;
    z[0] = -Z_INF;
    z[1] = Z_INF;
    for q in 1..n {
        let mut s = intersect(q, v[k]);
        while s <= z[k] {
            k -= 1;
            s = intersect(q, v[k]);
        }
        k += 1;
        v[k] = q;
        z[k] = s;
        z[k + 1] = Z_INF;
    }
    let mut d = vec![0f64; n];
    let mut arg = vec![0usize; n];
    let mut k = 0usize;
    for q in 0..n {
        while z[k + 1] < q as f64 {
            k += 1;
        }
        let dq = q as f64 - v[k] as f64;
        d[q] = dq * dq + f[v[k]];
        arg[q] = v[k];
    }
    (d, arg)
}

/// Load an 8-bit image file into [0, 1] floats.
pub fn load_image(path: &Path) -> Result<ImageRgb> {
    let dynimg = image::open(path).map_err(|e| Error::image(path, e))?;
    let rgb = dynimg.to_rgb8();
    let (w, h) = rgb.dimensions();
    let data = rgb
        .pixels()
        .map(|p| [p[0] as f32 / 255.0, p[1] as f32 / 255.0, p[2] as f32 / 255.0])
        .collect();
    Ok(ImageRgb::from_vec(w as usize, h as usize, data))
}

/// Save an image as 8-bit PNG, clamping to [0, 1].
pub fn save_image(img: &ImageRgb, path: &Path) -> Result<()> {
    let mut out = image::RgbImage::new(img.width() as u32, img.height() as u32);
    for y in 0..img.height() {
        for x in 0..img.width() {
            let p = img.get(x, y);
            let q = [to_u8(p[0]), to_u8(p[1]), to_u8(p[2])];
            out.put_pixel(x as u32, y as u32, image::Rgb(q));
        }
    }
    out.save(path).map_err(|e| Error::image(path, e))
}

/// Save a mask as an 8-bit grayscale PNG (0 or 255).
pub fn save_mask(mask: &Mask, path: &Path) -> Result<()> {
    let mut out = image::GrayImage::new(mask.width() as u32, mask.height() as u32);
    for y in 0..mask.height() {
        for x in 0..mask.width() {
            out.put_pixel(x as u32, y as u32, image::Luma([if mask.is_set(x, y) { 255 } else { 0 }]));
        }
    }
    out.save(path).map_err(|e| Error::image(path, e))
}

#[inline]
pub fn to_u8(v: f32) -> u8 {
    (v.clamp(0.0, 1.0) * 255.0).round() as u8
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bilinear_exact_on_linear_ramp() {
        // An image affine in pixel coordinates must be reproduced exactly.
        let img = ImageRgb::from_fn(16, 12, |x, y| {
            let v = 0.02 * x as f32 + 0.03 * y as f32 + 0.1;
            [v, 2.0 * v * 0.25, 0.5 - 0.01 * x as f32]
        });
        let probe = [(3.7, 4.2), (0.5, 0.5), (15.5, 11.5), (8.0, 1.25)];
        for &(u, v) in &probe {
            let got = sample_bilinear(&img, u, v).unwrap();
            let x = u as f32 - 0.5;
            let y = v as f32 - 0.5;
            let want = [
                0.02 * x + 0.03 * y + 0.1,
                (0.02 * x + 0.03 * y + 0.1) * 0.5,
                0.5 - 0.01 * x,
            ];
            for c in 0..3 {
                assert!((got[c] - want[c]).abs() < 1e-6, "channel {c}: {got:?} vs {want:?}");
            }
        }
    }

    #[test]
    fn bilinear_rejects_out_of_range_taps() {
        let img = ImageRgb::from_value(4, 4, [0.5; 3]);
        assert!(sample_bilinear(&img, 0.49, 2.0).is_none());
        assert!(sample_bilinear(&img, 3.51, 2.0).is_none());
        assert!(sample_bilinear(&img, 2.0, 3.6).is_none());
        // Exact last-pixel-center hit stays valid.
        assert!(sample_bilinear(&img, 3.5, 3.5).is_some());
        assert!(sample_bilinear(&img, 0.5, 0.5).is_some());
    }

    #[test]
    fn distance_transform_matches_brute_force() {
        let mut sites = Mask::from_value(13, 9, 0);
        for &(x, y) in &[(2usize, 3usize), (10, 1), (7, 8), (0, 0)] {
            sites.set(x, y, 1);
        }
        let (dist, nearest) = distance_transform(&sites);
        for y in 0..9 {
            for x in 0..13 {
                let mut best = f64::MAX;
                for &(sx, sy) in &[(2usize, 3usize), (10, 1), (7, 8), (0, 0)] {
                    let dx = x as f64 - sx as f64;
                    let dy = y as f64 - sy as f64;
                    best = best.min(dx * dx + dy * dy);
                }
                assert!((dist.get(x, y) - best).abs() < 1e-9, "at ({x},{y})");
                let (nx, ny) = nearest.get(x, y);
                let dx = x as f64 - nx as f64;
                let dy = y as f64 - ny as f64;
                assert!((dx * dx + dy * dy - best).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn wrap_sampling_crosses_the_seam_column() {
        let img = ImageRgb::from_fn(8, 4, |x, _| [x as f32 / 8.0, 0.0, 0.0]);
        // Halfway between last and first pixel centers.
        let got = sample_bilinear_wrap_x(&img, 8.0, 2.0);
        let want = (7.0 / 8.0 + 0.0) / 2.0;
        assert!((got[0] - want).abs() < 1e-6);
    }
}
