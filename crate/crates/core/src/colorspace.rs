//! RGB to HSV (hexcone model).

use crate::image::{Hsv, HsvImage, Rgb, RgbImage};

pub fn rgb_to_hsv(img: &RgbImage) -> HsvImage {
    let pixels = img.pixels().iter().map(|&p| pixel_to_hsv(p)).collect();
    HsvImage::from_pixels(img.width(), img.height(), pixels)
        .expect("dimensions come from a valid RgbImage")
}

pub fn pixel_to_hsv([r, g, b]: Rgb) -> Hsv {
    let max = r.max(g).max(b);
    let min = r.min(g).min(b);
    let v = max as f32 / 255.0;
    if max == 0 || max == min {
        return Hsv { h: 0.0, s: 0.0, v };
    }
    let delta = (max - min) as f32;
    let s = delta / max as f32;
    let (rf, gf, bf) = (r as f32, g as f32, b as f32);
    let sector = if max == r {
        (gf - bf) / delta
    } else if max == g {
        2.0 + (bf - rf) / delta
    } else {
        4.0 + (rf - gf) / delta
    };
    let mut h = sector * 60.0;
    if h < 0.0 {
        h += 360.0;
    }
    if h >= 360.0 {
        h -= 360.0;
    }
    Hsv { h, s, v }
}

/// Inverse hexcone, rounded back to 8 bits.
pub fn hsv_to_pixel(Hsv { h, s, v }: Hsv) -> Rgb {
    let c = v * s;
    let hp = h / 60.0;
    let x = c * (1.0 - (hp % 2.0 - 1.0).abs());
    let (r1, g1, b1) = match hp as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = v - c;
    let to_u8 = |f: f32| ((f + m) * 255.0).round().clamp(0.0, 255.0) as u8;
    [to_u8(r1), to_u8(g1), to_u8(b1)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_red() {
        assert_eq!(pixel_to_hsv([255, 0, 0]), Hsv { h: 0.0, s: 1.0, v: 1.0 });
    }

    #[test]
    fn achromatic_gray() {
        let p = pixel_to_hsv([110, 110, 110]);
        assert_eq!((p.h, p.s), (0.0, 0.0));
        assert!((p.v - 110.0 / 255.0).abs() < 1e-6);
        assert!((p.v - 0.431).abs() < 1e-3);
    }

    #[test]
    fn paint_color_hand_evaluated() {
        // g is max: h = 60 * (2 + (b - r) / delta) = 120; s = 76/153; v = 153/255
        let p = pixel_to_hsv([77, 153, 77]);
        assert!((p.h - 120.0).abs() < 1e-4);
        assert!((p.s - 0.4967).abs() < 1e-4);
        assert!((p.v - 0.6).abs() < 1e-6);
    }

    #[test]
    fn hue_sectors() {
        assert!((pixel_to_hsv([0, 0, 255]).h - 240.0).abs() < 1e-4);
        assert!((pixel_to_hsv([255, 255, 0]).h - 60.0).abs() < 1e-4);
        assert!((pixel_to_hsv([255, 0, 255]).h - 300.0).abs() < 1e-4);
        assert!((pixel_to_hsv([255, 0, 1]).h - 359.7647).abs() < 1e-3);
        assert_eq!(pixel_to_hsv([0, 0, 0]), Hsv { h: 0.0, s: 0.0, v: 0.0 });
    }

    #[test]
    fn image_keeps_dimensions() {
        let img = RgbImage::new(3, 2, [10, 200, 30]).unwrap();
        assert_eq!(rgb_to_hsv(&img).dimensions(), (3, 2));
    }
}
