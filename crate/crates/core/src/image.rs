//! Raster types shared by every stage, plus lossless PNG/PPM file I/O.
//!
//! All rasters are row-major with `x` growing rightward and `y` growing
//! downward; `pixel(x, y)` addresses element `y * width + x`.

use std::path::Path;

use image::{DynamicImage, ImageFormat, ImageReader};

use crate::error::{Error, Result};

/// 8-bit RGB triple.
pub type Rgb = [u8; 3];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RgbImage {
    width: usize,
    height: usize,
    pixels: Vec<Rgb>,
}

impl RgbImage {
    /// Uniform image filled with `color`.
    pub fn new(width: usize, height: usize, color: Rgb) -> Result<Self> {
        check_dims(width, height)?;
        Ok(Self {
            width,
            height,
            pixels: vec![color; width * height],
        })
    }

    pub fn from_pixels(width: usize, height: usize, pixels: Vec<Rgb>) -> Result<Self> {
        check_dims(width, height)?;
        if pixels.len() != width * height {
            return Err(Error::BufferSize {
                width,
                height,
                actual: pixels.len(),
            });
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> Rgb) -> Result<Self> {
        check_dims(width, height)?;
        let mut pixels = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dimensions(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn pixels(&self) -> &[Rgb] {
        &self.pixels
    }

    pub fn pixels_mut(&mut self) -> &mut [Rgb] {
        &mut self.pixels
    }

    pub fn pixel(&self, x: usize, y: usize) -> Rgb {
        self.pixels[y * self.width + x]
    }

    pub fn put_pixel(&mut self, x: usize, y: usize, color: Rgb) {
        self.pixels[y * self.width + x] = color;
    }

    /// Image center in pixel-center coordinates.
    pub fn center(&self) -> (f64, f64) {
        ((self.width as f64 - 1.0) / 2.0, (self.height as f64 - 1.0) / 2.0)
    }
}

/// One HSV sample: hue in degrees `[0, 360)`, saturation and value in `[0, 1]`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Hsv {
    pub h: f32,
    pub s: f32,
    pub v: f32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HsvImage {
    width: usize,
    height: usize,
    pixels: Vec<Hsv>,
}

impl HsvImage {
    pub fn from_pixels(width: usize, height: usize, pixels: Vec<Hsv>) -> Result<Self> {
        check_dims(width, height)?;
        if pixels.len() != width * height {
            return Err(Error::BufferSize {
                width,
                height,
                actual: pixels.len(),
            });
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dimensions(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn pixels(&self) -> &[Hsv] {
        &self.pixels
    }

    pub fn pixel(&self, x: usize, y: usize) -> Hsv {
        self.pixels[y * self.width + x]
    }

    /// Value channel rendered as an 8-bit gray RGB image.
    pub fn value_as_gray(&self) -> RgbImage {
        let pixels = self
            .pixels
            .iter()
            .map(|p| {
                let g = (p.v * 255.0).round().clamp(0.0, 255.0) as u8;
                [g, g, g]
            })
            .collect();
        RgbImage {
            width: self.width,
            height: self.height,
            pixels,
        }
    }
}

/// Foreground/background raster. `true` is foreground.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryMask {
    width: usize,
    height: usize,
    bits: Vec<bool>,
}

impl std::fmt::Debug for BinaryMask {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BinaryMask {}x{} ({} set)", self.width, self.height, self.count())?;
        if self.width * self.height <= 4096 {
            for row in self.bits.chunks(self.width) {
                let line: String = row.iter().map(|&b| if b { '#' } else { '.' }).collect();
                writeln!(f, "{line}")?;
            }
        }
        Ok(())
    }
}

impl BinaryMask {
    /// All-background mask.
    pub fn new(width: usize, height: usize) -> Self {
        Self::filled(width, height, false)
    }

    pub fn filled(width: usize, height: usize, value: bool) -> Self {
        Self {
            width,
            height,
            bits: vec![value; width * height],
        }
    }

    pub fn from_bits(width: usize, height: usize, bits: Vec<bool>) -> Result<Self> {
        if bits.len() != width * height {
            return Err(Error::BufferSize {
                width,
                height,
                actual: bits.len(),
            });
        }
        Ok(Self {
            width,
            height,
            bits,
        })
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut bits = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                bits.push(f(x, y));
            }
        }
        Self {
            width,
            height,
            bits,
        }
    }

    /// Parses rows of `#` (foreground) and `.` (background); handy in tests.
    pub fn from_ascii(rows: &[&str]) -> Self {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.len());
        let bits = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), width, "ragged ascii mask");
                r.chars().map(|c| c == '#')
            })
            .collect();
        Self {
            width,
            height,
            bits,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dimensions(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn bits_mut(&mut self) -> &mut [bool] {
        &mut self.bits
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        self.bits[y * self.width + x]
    }

    /// Bounds-checked lookup; outside the raster is background.
    pub fn get_signed(&self, x: isize, y: isize) -> bool {
        if x < 0 || y < 0 || x as usize >= self.width || y as usize >= self.height {
            return false;
        }
        self.bits[y as usize * self.width + x as usize]
    }

    pub fn set(&mut self, x: usize, y: usize, value: bool) {
        self.bits[y * self.width + x] = value;
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    pub fn complement(&self) -> Self {
        Self {
            width: self.width,
            height: self.height,
            bits: self.bits.iter().map(|&b| !b).collect(),
        }
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a && b)
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a || b)
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.dimensions() == other.dimensions()
            && self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    /// Coordinates of every foreground pixel in raster order.
    pub fn foreground(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let w = self.width;
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(move |(i, _)| (i % w, i / w))
    }

    /// Copy shifted by `(dx, dy)`; pixels shifted out are dropped.
    pub fn translated(&self, dx: isize, dy: isize) -> Self {
        let mut out = Self::new(self.width, self.height);
        for (x, y) in self.foreground() {
            let nx = x as isize + dx;
            let ny = y as isize + dy;
            if nx >= 0 && ny >= 0 && (nx as usize) < self.width && (ny as usize) < self.height {
                out.set(nx as usize, ny as usize, true);
            }
        }
        out
    }

    pub fn flipped_horizontally(&self) -> Self {
        Self::from_fn(self.width, self.height, |x, y| self.get(self.width - 1 - x, y))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(bool, bool) -> bool) -> Result<Self> {
        if self.dimensions() != other.dimensions() {
            return Err(Error::DimensionMismatch {
                left: self.dimensions(),
                right: other.dimensions(),
            });
        }
        Ok(Self {
            width: self.width,
            height: self.height,
            bits: self.bits.iter().zip(&other.bits).map(|(&a, &b)| f(a, b)).collect(),
        })
    }
}

fn check_dims(width: usize, height: usize) -> Result<()> {
    if width == 0 || height == 0 {
        return Err(Error::ZeroDimension { width, height });
    }
    Ok(())
}

/// Decodes a PNG or binary PPM into an 8-bit RGB raster. Alpha is dropped;
/// gray inputs are expanded to three equal channels.
pub fn load_image(path: impl AsRef<Path>) -> Result<RgbImage> {
    let path = path.as_ref();
    let reader = ImageReader::open(path)
        .map_err(|e| Error::io(path, e))?
        .with_guessed_format()
        .map_err(|e| Error::io(path, e))?;
    let decoded = reader.decode().map_err(|e| Error::Decode {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;

    let (width, height) = (decoded.width() as usize, decoded.height() as usize);
    check_dims(width, height)?;

    let rgb = match decoded {
        DynamicImage::ImageRgb8(buf) => buf,
        img @ (DynamicImage::ImageRgba8(_) | DynamicImage::ImageLuma8(_) | DynamicImage::ImageLumaA8(_)) => {
            img.to_rgb8()
        }
        other => {
            return Err(Error::UnsupportedFormat {
                path: path.to_path_buf(),
                format: format!("{:?}", other.color()),
            })
        }
    };
    let pixels = rgb.pixels().map(|p| p.0).collect();
    RgbImage::from_pixels(width, height, pixels)
}

/// Anything that can be written as a lossless raster file.
pub trait Raster {
    fn to_dynamic(&self) -> DynamicImage;
}

impl Raster for RgbImage {
    fn to_dynamic(&self) -> DynamicImage {
        let raw: Vec<u8> = self.pixels.iter().flatten().copied().collect();
        let buf = image::RgbImage::from_raw(self.width as u32, self.height as u32, raw)
            .expect("buffer length is an invariant of RgbImage");
        DynamicImage::ImageRgb8(buf)
    }
}

/// Masks are written as 8-bit gray with values {0, 255}.
impl Raster for BinaryMask {
    fn to_dynamic(&self) -> DynamicImage {
        let raw: Vec<u8> = self.bits.iter().map(|&b| if b { 255 } else { 0 }).collect();
        let buf = image::GrayImage::from_raw(self.width as u32, self.height as u32, raw)
            .expect("buffer length is an invariant of BinaryMask");
        DynamicImage::ImageLuma8(buf)
    }
}

/// Writes `img` losslessly. `.ppm`/`.pgm` produce binary PNM; anything else PNG.
pub fn save_image(img: &impl Raster, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let format = match path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase) {
        Some(ext) if ext == "ppm" || ext == "pgm" || ext == "pnm" => ImageFormat::Pnm,
        _ => ImageFormat::Png,
    };
    img.to_dynamic()
        .save_with_format(path, format)
        .map_err(|e| match e {
            image::ImageError::IoError(source) => Error::io(path, source),
            other => Error::Encode {
                path: path.to_path_buf(),
                message: other.to_string(),
            },
        })
}
