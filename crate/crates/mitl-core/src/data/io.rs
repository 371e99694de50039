//! Dataset loading: class-directory trees and the packed archive format.
//!
//! Packed layout (little-endian): magic `MIDS`, version u32, a length-prefixed
//! JSON metadata record (`name`, `num_classes`, `n`, `h`, `w`, `c`), `n` u32
//! labels, then `n*h*w*c` feature bytes (8 bits per channel, HWC per sample).

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use image::imageops::FilterType;
use serde::{Deserialize, Serialize};

use crate::data::{LabeledDataset, LabeledSample};
use crate::error::{Error, Result};

const PACK_MAGIC: &[u8; 4] = b"MIDS";
const PACK_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy)]
pub struct LoadOptions {
    /// Keep at most this many samples, chosen by sorted id.
    pub limit: Option<usize>,
    /// Square resolution directory images are resized to.
    pub resolution: u32,
}

impl Default for LoadOptions {
    fn default() -> Self {
        Self {
            limit: None,
            resolution: 32,
        }
    }
}

/// Load a dataset from either supported on-disk layout.
///
/// A directory is treated as a tree of class subdirectories; a file is read
/// as a packed archive. Loading is idempotent: two loads of the same locator
/// return sample-for-sample identical datasets.
pub fn load_dataset(path: &Path, opts: &LoadOptions) -> Result<LabeledDataset> {
    let meta = fs::metadata(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut ds = if meta.is_dir() {
        load_dir(path, opts.resolution)?
    } else {
        load_packed(path)?
    };
    if let Some(limit) = opts.limit {
        ds.samples.sort_by(|a, b| a.id.cmp(&b.id));
        ds.samples.truncate(limit);
    }
    Ok(ds)
}

/// Load `<root>/<class_name>/<file>.png|jpg`. Class indices follow
/// lexicographic class-name order; images are resized to `resolution` square
/// RGB and normalized to `[0, 1]`.
pub fn load_dir(root: &Path, resolution: u32) -> Result<LabeledDataset> {
    let io_err = |source| Error::Io {
        path: root.to_path_buf(),
        source,
    };
    let mut class_dirs: Vec<(String, std::path::PathBuf)> = Vec::new();
    for entry in fs::read_dir(root).map_err(io_err)? {
        let entry = entry.map_err(io_err)?;
        if entry.file_type().map_err(io_err)?.is_dir() {
            class_dirs.push((entry.file_name().to_string_lossy().into_owned(), entry.path()));
        }
    }
    if class_dirs.is_empty() {
        return Err(Error::EmptyClass(format!(
            "no class directories under {}",
            root.display()
        )));
    }
    class_dirs.sort_by(|a, b| a.0.cmp(&b.0));

    let side = resolution as usize;
    let mut samples = Vec::new();
    for (label, (class_name, dir)) in class_dirs.iter().enumerate() {
        let mut files: Vec<std::path::PathBuf> = fs::read_dir(dir)
            .map_err(io_err)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| {
                matches!(
                    p.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase),
                    Some(ref e) if e == "png" || e == "jpg" || e == "jpeg"
                )
            })
            .collect();
        if files.is_empty() {
            return Err(Error::EmptyClass(class_name.clone()));
        }
        files.sort();
        for file in files {
            let img = image::open(&file).map_err(|source| Error::Image {
                path: file.clone(),
                source,
            })?;
            let img = img.resize_exact(resolution, resolution, FilterType::Triangle);
            let rgb = img.to_rgb8();
            // HWC bytes to CHW floats.
            let mut features = vec![0.0f32; 3 * side * side];
            for y in 0..side {
                for x in 0..side {
                    let px = rgb.get_pixel(x as u32, y as u32);
                    for c in 0..3 {
                        features[c * side * side + y * side + x] = px.0[c] as f32 / 255.0;
                    }
                }
            }
            let file_name = file
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default();
            samples.push(LabeledSample {
                id: format!("{class_name}/{file_name}"),
                label,
                features,
            });
        }
    }
    samples.sort_by(|a, b| a.id.cmp(&b.id));

    let name = root
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "dataset".into());
    LabeledDataset::new(name, class_dirs.len(), (3, side, side), samples)
}

#[derive(Serialize, Deserialize)]
struct PackMeta {
    name: String,
    num_classes: usize,
    n: usize,
    h: usize,
    w: usize,
    c: usize,
}

/// Read a packed archive. Sample ids are `<name>:<index>` with the index
/// zero-padded, so id order equals storage order.
pub fn load_packed(path: &Path) -> Result<LabeledDataset> {
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let malformed = |reason: &str| Error::MalformedArchive {
        path: path.to_path_buf(),
        reason: reason.into(),
    };

    let mut file = fs::File::open(path).map_err(io_err)?;
    let mut bytes = Vec::new();
    file.read_to_end(&mut bytes).map_err(io_err)?;

    let mut at = 0usize;
    let take = |at: &mut usize, n: usize| -> Result<&[u8]> {
        if *at + n > bytes.len() {
            return Err(malformed("truncated"));
        }
        let s = &bytes[*at..*at + n];
        *at += n;
        Ok(s)
    };

    if take(&mut at, 4)? != PACK_MAGIC {
        return Err(malformed("bad magic"));
    }
    let version = u32::from_le_bytes(take(&mut at, 4)?.try_into().unwrap());
    if version != PACK_VERSION {
        return Err(malformed(&format!("unsupported version {version}")));
    }
    let meta_len = u32::from_le_bytes(take(&mut at, 4)?.try_into().unwrap()) as usize;
    let meta: PackMeta = serde_json::from_slice(take(&mut at, meta_len)?)
        .map_err(|e| malformed(&format!("metadata: {e}")))?;

    let mut labels = Vec::with_capacity(meta.n);
    for _ in 0..meta.n {
        labels.push(u32::from_le_bytes(take(&mut at, 4)?.try_into().unwrap()) as usize);
    }
    let sample_len = meta.h * meta.w * meta.c;
    let width = (meta.n.max(1) as f64).log10().floor() as usize + 1;
    let mut samples = Vec::with_capacity(meta.n);
    for (i, &label) in labels.iter().enumerate() {
        let raw = take(&mut at, sample_len)?;
        // HWC bytes to CHW floats.
        let mut features = vec![0.0f32; sample_len];
        for y in 0..meta.h {
            for x in 0..meta.w {
                for c in 0..meta.c {
                    features[c * meta.h * meta.w + y * meta.w + x] =
                        raw[(y * meta.w + x) * meta.c + c] as f32 / 255.0;
                }
            }
        }
        samples.push(LabeledSample {
            id: format!("{}:{:0width$}", meta.name, i),
            label,
            features,
        });
    }
    if at != bytes.len() {
        return Err(malformed("trailing bytes"));
    }

    LabeledDataset::new(meta.name, meta.num_classes, (meta.c, meta.h, meta.w), samples)
}

/// Write a dataset as a packed archive. Values are quantized to 8 bits per
/// channel; sample order is storage order.
pub fn write_packed(dataset: &LabeledDataset, path: &Path) -> Result<()> {
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let (c, h, w) = dataset.shape;
    let meta = PackMeta {
        name: dataset.name.clone(),
        num_classes: dataset.num_classes,
        n: dataset.len(),
        h,
        w,
        c,
    };
    let meta_bytes = serde_json::to_vec(&meta).expect("metadata serializes");

    let mut out = Vec::new();
    out.extend_from_slice(PACK_MAGIC);
    out.extend_from_slice(&PACK_VERSION.to_le_bytes());
    out.extend_from_slice(&(meta_bytes.len() as u32).to_le_bytes());
    out.extend_from_slice(&meta_bytes);
    for s in &dataset.samples {
        out.extend_from_slice(&(s.label as u32).to_le_bytes());
    }
    for s in &dataset.samples {
        // CHW floats to HWC bytes.
        for y in 0..h {
            for x in 0..w {
                for ch in 0..c {
                    let v = s.features[ch * h * w + y * w + x];
                    out.push((v * 255.0).round().clamp(0.0, 255.0) as u8);
                }
            }
        }
    }
    let mut file = fs::File::create(path).map_err(io_err)?;
    file.write_all(&out).map_err(io_err)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use image::{Rgb, RgbImage};

    fn write_png(path: &Path, shade: u8) {
        let img = RgbImage::from_pixel(8, 8, Rgb([shade, shade / 2, 255 - shade]));
        img.save(path).unwrap();
    }

    #[test]
    fn dir_loader_counts_classes_and_samples() {
        let tmp = tempfile::tempdir().unwrap();
        for class in ["ants", "bees"] {
            let dir = tmp.path().join(class);
            fs::create_dir(&dir).unwrap();
            for i in 0..5 {
                write_png(&dir.join(format!("img{i}.png")), 40 * i as u8);
            }
        }
        let ds = load_dir(tmp.path(), 16).unwrap();
        assert_eq!(ds.num_classes, 2);
        assert_eq!(ds.len(), 10);
        assert_eq!(ds.shape, (3, 16, 16));
        assert!(ds.samples.iter().all(|s| s.features.iter().all(|&v| (0.0..=1.0).contains(&v))));
    }

    #[test]
    fn limit_is_deterministic_by_sorted_id() {
        let tmp = tempfile::tempdir().unwrap();
        let dir = tmp.path().join("only");
        fs::create_dir(&dir).unwrap();
        for i in 0..10 {
            write_png(&dir.join(format!("img{i}.png")), 20 * i as u8);
        }
        let opts = LoadOptions {
            limit: Some(4),
            resolution: 8,
        };
        let a = load_dataset(tmp.path(), &opts).unwrap();
        let b = load_dataset(tmp.path(), &opts).unwrap();
        assert_eq!(a.len(), 4);
        assert_eq!(a, b);
    }

    #[test]
    fn empty_class_is_rejected() {
        let tmp = tempfile::tempdir().unwrap();
        fs::create_dir(tmp.path().join("hollow")).unwrap();
        let err = load_dir(tmp.path(), 8).unwrap_err();
        assert!(err.to_string().contains("empty class"));

        let empty = tempfile::tempdir().unwrap();
        let err = load_dir(empty.path(), 8).unwrap_err();
        assert!(err.to_string().contains("empty class"));
    }

    #[test]
    fn packed_round_trip() {
        let ds = crate::data::tests::tiny_dataset(9, 3);
        let tmp = tempfile::tempdir().unwrap();
        let path = tmp.path().join("tiny.pack");
        write_packed(&ds, &path).unwrap();
        let back = load_packed(&path).unwrap();
        assert_eq!(back.num_classes, ds.num_classes);
        assert_eq!(back.shape, ds.shape);
        assert_eq!(back.len(), ds.len());
        // Values survive up to 8-bit quantization.
        for (a, b) in ds.samples.iter().zip(&back.samples) {
            assert_eq!(a.label, b.label);
            for (x, y) in a.features.iter().zip(&b.features) {
                assert!((x - y).abs() <= 0.5 / 255.0 + 1e-6);
            }
        }
    }

    #[test]
    fn packed_rejects_garbage() {
        let tmp = tempfile::tempdir().unwrap();
        let path = tmp.path().join("bad.pack");
        fs::write(&path, b"not an archive").unwrap();
        assert!(matches!(
            load_packed(&path),
            Err(Error::MalformedArchive { .. })
        ));
    }
}
