//! Synthetic shape corpora shared by the integration suites.
#![allow(dead_code)]

use quadprompt::geometry::BinaryMask;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy)]
pub struct Ellipse {
    pub cx: f64,
    pub cy: f64,
    pub a: f64,
    pub b: f64,
    pub theta: f64,
}

impl Ellipse {
    pub fn contains(&self, x: f64, y: f64) -> bool {
        let (dx, dy) = (x - self.cx, y - self.cy);
        let (c, s) = (self.theta.cos(), self.theta.sin());
        let u = dx * c + dy * s;
        let v = -dx * s + dy * c;
        (u / self.a).powi(2) + (v / self.b).powi(2) <= 1.0
    }

    pub fn raster(&self, w: u32, h: u32) -> BinaryMask {
        BinaryMask::from_fn(w, h, |x, y| self.contains(x as f64, y as f64)).unwrap()
    }

    pub fn vertices(&self) -> [(f64, f64); 2] {
        let (c, s) = (self.theta.cos(), self.theta.sin());
        [(self.cx - self.a * c, self.cy - self.a * s), (self.cx + self.a * c, self.cy + self.a * s)]
    }

    pub fn co_vertices(&self) -> [(f64, f64); 2] {
        let (c, s) = (self.theta.cos(), self.theta.sin());
        [(self.cx + self.b * s, self.cy - self.b * c), (self.cx - self.b * s, self.cy + self.b * c)]
    }
}

/// Rotated ellipse in a 64x64 frame with axis ratio in [1.5, 2.5].
pub fn random_ellipse(r: &mut ChaCha8Rng) -> Ellipse {
    let a = r.gen_range(14.0..24.0);
    let ratio = r.gen_range(1.5..2.5);
    Ellipse {
        cx: r.gen_range(30.0..34.0),
        cy: r.gen_range(30.0..34.0),
        a,
        b: a / ratio,
        theta: r.gen_range(0.0..std::f64::consts::PI),
    }
}

pub fn disk(w: u32, h: u32, cx: i64, cy: i64, radius: i64) -> BinaryMask {
    BinaryMask::from_fn(w, h, |x, y| (x as i64 - cx).pow(2) + (y as i64 - cy).pow(2) <= radius * radius).unwrap()
}

pub fn diamond(w: u32, h: u32, cx: i64, cy: i64, radius: i64) -> BinaryMask {
    BinaryMask::from_fn(w, h, |x, y| (x as i64 - cx).abs() + (y as i64 - cy).abs() <= radius).unwrap()
}

/// Annulus with outer radius 20 and inner radius 12, keeping a 270° arc
/// (the quadrant with x > cx and y < cy removed).
pub fn c_shape(w: u32, h: u32, cx: i64, cy: i64) -> BinaryMask {
    BinaryMask::from_fn(w, h, |x, y| {
        let (dx, dy) = (x as i64 - cx, y as i64 - cy);
        let r2 = dx * dx + dy * dy;
        (144..=400).contains(&r2) && !(dx > 0 && dy < 0)
    })
    .unwrap()
}

/// Random nonempty mask up to 64x64: unions of rectangles and ellipses, or
/// sparse noise.
pub fn random_mask(r: &mut ChaCha8Rng) -> BinaryMask {
    let w = r.gen_range(1..=64u32);
    let h = r.gen_range(1..=64u32);
    let kind = r.gen_range(0..3);
    let mut m = BinaryMask::new(w, h).unwrap();
    match kind {
        0 => {
            let p = r.gen_range(0.05..0.6);
            for y in 0..h {
                for x in 0..w {
                    if r.gen_bool(p) {
                        m.set(x, y, true);
                    }
                }
            }
        }
        _ => {
            for _ in 0..r.gen_range(1..5) {
                let (x0, y0) = (r.gen_range(0..w), r.gen_range(0..h));
                let (x1, y1) = (r.gen_range(x0..w), r.gen_range(y0..h));
                let round = kind == 2;
                let (cx, cy) = ((x0 + x1) as f64 / 2.0, (y0 + y1) as f64 / 2.0);
                let (ax, ay) = (((x1 - x0) as f64 / 2.0).max(0.5), ((y1 - y0) as f64 / 2.0).max(0.5));
                for y in y0..=y1 {
                    for x in x0..=x1 {
                        let inside = !round || ((x as f64 - cx) / ax).powi(2) + ((y as f64 - cy) / ay).powi(2) <= 1.0;
                        if inside {
                            m.set(x, y, true);
                        }
                    }
                }
            }
        }
    }
    if m.is_empty() {
        m.set(r.gen_range(0..w), r.gen_range(0..h), true);
    }
    m
}

pub fn dist(p: quadprompt::PixelCoord, q: (f64, f64)) -> f64 {
    (p.x as f64 - q.0).hypot(p.y as f64 - q.1)
}

/// Four 64×64 PNG masks, a manifest and a sweep config under `dir`;
/// returns the manifest path.
pub fn write_fixture(dir: &std::path::Path) -> std::path::PathBuf {
    let masks = dir.join("masks");
    std::fs::create_dir_all(&masks).unwrap();
    let shapes = [
        ("ellipse", "cyst", Ellipse { cx: 30.0, cy: 33.0, a: 20.0, b: 9.0, theta: 0.6 }.raster(64, 64)),
        ("disk", "cyst", disk(64, 64, 32, 30, 14)),
        ("cshape", "vessel", c_shape(64, 64, 32, 32)),
        ("diamond", "vessel", diamond(64, 64, 28, 36, 12)),
    ];
    let mut entries = Vec::new();
    for (id, class, m) in shapes {
        quadprompt::io::save_mask_png(&m, &masks.join(format!("{id}.png"))).unwrap();
        entries.push(format!(r#"{{"instance_id":"{id}","class_id":"{class}","mask_path":"masks/{id}.png","image_dims":{{"width":64,"height":64}}}}"#));
    }
    let manifest = dir.join("manifest.json");
    std::fs::write(&manifest, format!(r#"{{"dataset_id":"fixture","entries":[{}]}}"#, entries.join(","))).unwrap();
    std::fs::write(dir.join("sweep.toml"), "repeats = 5\nseed = 11\nbudgets = [1, 2, 3, 4, 5, 6, 7]\n").unwrap();
    manifest
}
