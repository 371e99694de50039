//! Procedurally generated toy corpora.
//!
//! Three disjoint-label-space image tasks, each 16×16 grayscale: `glyphs`
//! (disk / ring / cross / checker, the teacher task) and two student tasks,
//! `stripes` (three grating orientations) and `blobs` (five bump positions).
//!
//! Samples carry heavy per-sample pixel noise, jittered geometry, and a
//! fixed fraction of flipped labels. Small models memorize the train split
//! (noise and flips included) while test accuracy stays well below train
//! accuracy, which is exactly the overfitting regime membership inference
//! feeds on.
//!
//! Generation is bit-deterministic: features are quantized to the same 8-bit
//! grid the packed archive format stores, so an in-memory corpus equals its
//! packed round trip sample for sample.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::data::{LabeledDataset, LabeledSample};

pub const SIDE: usize = 16;
const LABEL_NOISE: f64 = 0.25;
const PIXEL_NOISE: f64 = 0.30;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ToyTask {
    Glyphs,
    Stripes,
    Blobs,
}

impl ToyTask {
    pub fn name(self) -> &'static str {
        match self {
            ToyTask::Glyphs => "glyphs",
            ToyTask::Stripes => "stripes",
            ToyTask::Blobs => "blobs",
        }
    }

    pub fn num_classes(self) -> usize {
        match self {
            ToyTask::Glyphs => 4,
            ToyTask::Stripes => 3,
            ToyTask::Blobs => 5,
        }
    }
}

/// Generate `n` samples of the given task.
pub fn generate(task: ToyTask, n: usize, seed: u64) -> LabeledDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let classes = task.num_classes();
    let width = (n.max(1) as f64).log10().floor() as usize + 1;
    let mut samples = Vec::with_capacity(n);
    for i in 0..n {
        let class = i % classes;
        let mut img = render(task, class, &mut rng);
        for v in img.iter_mut() {
            *v += rng.gen_range(-PIXEL_NOISE..PIXEL_NOISE);
        }
        let label = if rng.gen_bool(LABEL_NOISE) {
            let offset = rng.gen_range(1..classes);
            (class + offset) % classes
        } else {
            class
        };
        // Quantize to the 8-bit grid used by the packed archive format.
        let features = img
            .iter()
            .map(|&v| ((v.clamp(0.0, 1.0) * 255.0).round() as u8) as f32 / 255.0)
            .collect();
        samples.push(LabeledSample {
            id: format!("{}:{:0width$}", task.name(), i),
            label,
            features,
        });
    }
    LabeledDataset::new(task.name(), classes, (1, SIDE, SIDE), samples)
        .expect("generated corpus is valid")
}

fn render(task: ToyTask, class: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    match task {
        ToyTask::Glyphs => glyph(class, rng),
        ToyTask::Stripes => stripes(class, rng),
        ToyTask::Blobs => blob(class, rng),
    }
}

fn fill(mut f: impl FnMut(f64, f64) -> f64) -> Vec<f64> {
    let mut img = vec![0.0; SIDE * SIDE];
    for y in 0..SIDE {
        for x in 0..SIDE {
            img[y * SIDE + x] = f(x as f64, y as f64);
        }
    }
    img
}

fn glyph(class: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    match class {
        0 => {
            let (cx, cy) = (rng.gen_range(5.0..11.0), rng.gen_range(5.0..11.0));
            let r = rng.gen_range(2.5..5.5);
            fill(|x, y| {
                if (x - cx).hypot(y - cy) < r {
                    0.9
                } else {
                    0.1
                }
            })
        }
        1 => {
            let (cx, cy) = (rng.gen_range(5.0..11.0), rng.gen_range(5.0..11.0));
            let r = rng.gen_range(3.0..5.5);
            fill(|x, y| {
                if ((x - cx).hypot(y - cy) - r).abs() < 1.2 {
                    0.9
                } else {
                    0.1
                }
            })
        }
        2 => {
            let (cx, cy) = (rng.gen_range(5.0..11.0), rng.gen_range(5.0..11.0));
            let t = rng.gen_range(0.8..2.0);
            fill(|x, y| {
                if (x - cx).abs() < t || (y - cy).abs() < t {
                    0.9
                } else {
                    0.1
                }
            })
        }
        _ => {
            let cell = rng.gen_range(2..5) as f64;
            let (px, py) = (rng.gen_range(0.0..cell), rng.gen_range(0.0..cell));
            fill(|x, y| {
                let parity = (((x + px) / cell).floor() + ((y + py) / cell).floor()) as i64 % 2;
                if parity == 0 {
                    0.85
                } else {
                    0.15
                }
            })
        }
    }
}

fn stripes(class: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let freq = rng.gen_range(2..6) as f64;
    let phase = rng.gen_range(0.0..std::f64::consts::TAU);
    let s = SIDE as f64;
    fill(|x, y| {
        let coord = match class {
            0 => y,
            1 => x,
            _ => (x + y) / 2.0,
        };
        0.5 + 0.45 * (std::f64::consts::TAU * freq * coord / s + phase).sin()
    })
}

fn blob(class: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let centers = [(4.0, 4.0), (11.0, 4.0), (4.0, 11.0), (11.0, 11.0), (7.5, 7.5)];
    let (bx, by) = centers[class];
    let cx = bx + rng.gen_range(-2.0..2.0);
    let cy = by + rng.gen_range(-2.0..2.0);
    let sigma: f64 = rng.gen_range(1.8..3.2);
    fill(|x, y| {
        let d2 = (x - cx).powi(2) + (y - cy).powi(2);
        0.05 + 0.9 * (-d2 / (2.0 * sigma * sigma)).exp()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic() {
        let a = generate(ToyTask::Glyphs, 20, 3);
        let b = generate(ToyTask::Glyphs, 20, 3);
        assert_eq!(a, b);
        let c = generate(ToyTask::Glyphs, 20, 4);
        assert_ne!(a, c);
    }

    #[test]
    fn corpora_round_trip_through_pack() {
        let tmp = tempfile::tempdir().unwrap();
        for task in [ToyTask::Glyphs, ToyTask::Stripes, ToyTask::Blobs] {
            let ds = generate(task, 25, 11);
            let path = tmp.path().join(format!("{}.pack", task.name()));
            crate::data::write_packed(&ds, &path).unwrap();
            let back = crate::data::load_packed(&path).unwrap();
            assert_eq!(ds, back, "{} differs after pack round trip", task.name());
        }
    }

    #[test]
    fn every_class_appears() {
        for task in [ToyTask::Glyphs, ToyTask::Stripes, ToyTask::Blobs] {
            let ds = generate(task, 50, 0);
            for class in 0..task.num_classes() {
                assert!(ds.samples.iter().any(|s| s.label == class));
            }
        }
    }
}
