//! Labeled image datasets and the split protocol that defines membership
//! ground truth.
//!
//! A corpus is split once into four pairwise-disjoint partitions:
//! target/shadow halves, each divided into train/test. The target half
//! belongs to the victim, the shadow half is the adversary's auxiliary
//! knowledge. Splits are computed over sorted sample ids, never positions,
//! so re-ordering a corpus on disk cannot change who counts as a member.

mod io;
pub mod toy;

pub use io::{load_dataset, load_dir, load_packed, write_packed, LoadOptions};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

use crate::error::{Error, Result};

/// One labeled image. `features` is a CHW tensor with values in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledSample {
    pub id: String,
    pub label: usize,
    pub features: Vec<f32>,
}

/// An ordered collection of uniformly-shaped labeled samples.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    pub name: String,
    pub num_classes: usize,
    /// Shape of every sample tensor, as (channels, height, width).
    pub shape: (usize, usize, usize),
    pub samples: Vec<LabeledSample>,
}

impl LabeledDataset {
    /// Build a dataset, validating id uniqueness, label range, and uniform
    /// sample shape.
    pub fn new(
        name: impl Into<String>,
        num_classes: usize,
        shape: (usize, usize, usize),
        samples: Vec<LabeledSample>,
    ) -> Result<Self> {
        let name = name.into();
        let len = shape.0 * shape.1 * shape.2;
        let mut seen = HashSet::with_capacity(samples.len());
        for s in &samples {
            if !seen.insert(s.id.as_str()) {
                return Err(Error::DuplicateId(s.id.clone()));
            }
            if s.label >= num_classes {
                return Err(Error::LabelOutOfRange {
                    label: s.label,
                    num_classes,
                    id: s.id.clone(),
                });
            }
            if s.features.len() != len {
                return Err(Error::Invalid(format!(
                    "sample {} has {} values, shape {:?} needs {}",
                    s.id,
                    s.features.len(),
                    shape,
                    len
                )));
            }
        }
        Ok(Self {
            name,
            num_classes,
            shape,
            samples,
        })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.samples.iter().map(|s| s.id.as_str())
    }

    /// Clone a subset selected by sample index, re-sorted by id.
    fn take(&self, idx: &[usize], name_suffix: &str) -> LabeledDataset {
        let mut samples: Vec<LabeledSample> =
            idx.iter().map(|&i| self.samples[i].clone()).collect();
        samples.sort_by(|a, b| a.id.cmp(&b.id));
        LabeledDataset {
            name: format!("{}/{}", self.name, name_suffix),
            num_classes: self.num_classes,
            shape: self.shape,
            samples,
        }
    }
}

/// The four disjoint partitions driving membership ground truth.
#[derive(Debug, Clone)]
pub struct SplitBundle {
    pub target_train: LabeledDataset,
    pub target_test: LabeledDataset,
    pub shadow_train: LabeledDataset,
    pub shadow_test: LabeledDataset,
    pub seed: u64,
}

impl SplitBundle {
    pub fn partitions(&self) -> [&LabeledDataset; 4] {
        [
            &self.target_train,
            &self.target_test,
            &self.shadow_train,
            &self.shadow_test,
        ]
    }
}

/// Split a dataset into target/shadow × train/test.
///
/// The permutation is a pure function of the sorted sample ids and `seed`.
/// Odd counts tie-break toward target, then toward train.
pub fn split_dataset(dataset: &LabeledDataset, seed: u64) -> Result<SplitBundle> {
    let n = dataset.len();
    if n < 4 {
        return Err(Error::DatasetTooSmall { len: n, min: 4 });
    }

    // Sort indices by id so on-disk order is irrelevant, then shuffle.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| dataset.samples[a].id.cmp(&dataset.samples[b].id));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    order.shuffle(&mut rng);

    let target_n = n.div_ceil(2);
    let shadow_n = n - target_n;
    let tt = target_n.div_ceil(2);
    let st = shadow_n.div_ceil(2);

    let (target, shadow) = order.split_at(target_n);
    Ok(SplitBundle {
        target_train: dataset.take(&target[..tt], "target_train"),
        target_test: dataset.take(&target[tt..], "target_test"),
        shadow_train: dataset.take(&shadow[..st], "shadow_train"),
        shadow_test: dataset.take(&shadow[st..], "shadow_test"),
        seed,
    })
}

/// Partition `dataset` into `m` near-even parts by sorted-id order.
/// Used when an attack pipeline spreads work over several shadow models.
pub(crate) fn subdivide(dataset: &LabeledDataset, m: usize) -> Vec<LabeledDataset> {
    debug_assert!(m >= 1);
    let n = dataset.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| dataset.samples[a].id.cmp(&dataset.samples[b].id));
    let base = n / m;
    let extra = n % m;
    let mut parts = Vec::with_capacity(m);
    let mut at = 0;
    for i in 0..m {
        let take = base + usize::from(i < extra);
        parts.push(dataset.take(&order[at..at + take], &format!("part{i}")));
        at += take;
    }
    parts
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn tiny_dataset(n: usize, num_classes: usize) -> LabeledDataset {
        let samples = (0..n)
            .map(|i| LabeledSample {
                id: format!("s{i:04}"),
                label: i % num_classes,
                features: vec![i as f32 / n as f32; 4],
            })
            .collect();
        LabeledDataset::new("tiny", num_classes, (1, 2, 2), samples).unwrap()
    }

    #[test]
    fn split_sizes_even() {
        let d = tiny_dataset(16, 2);
        let b = split_dataset(&d, 7).unwrap();
        let sizes: Vec<usize> = b.partitions().iter().map(|p| p.len()).collect();
        assert_eq!(sizes, vec![4, 4, 4, 4]);
    }

    #[test]
    fn split_sizes_odd_tiebreak() {
        let d = tiny_dataset(15, 3);
        let b = split_dataset(&d, 0).unwrap();
        assert_eq!(b.target_train.len() + b.target_test.len(), 8);
        assert_eq!(b.shadow_train.len() + b.shadow_test.len(), 7);
        assert_eq!(b.target_train.len(), 4);
        assert_eq!(b.target_test.len(), 4);
        assert_eq!(b.shadow_train.len(), 4);
        assert_eq!(b.shadow_test.len(), 3);
    }

    #[test]
    fn split_is_deterministic_and_disjoint() {
        let d = tiny_dataset(33, 4);
        let a = split_dataset(&d, 99).unwrap();
        let b = split_dataset(&d, 99).unwrap();
        for (pa, pb) in a.partitions().iter().zip(b.partitions()) {
            let ia: Vec<&str> = pa.ids().collect();
            let ib: Vec<&str> = pb.ids().collect();
            assert_eq!(ia, ib);
        }
        let mut all: Vec<&str> = a.partitions().iter().flat_map(|p| p.ids()).collect();
        all.sort();
        let dedup_len = {
            let mut v = all.clone();
            v.dedup();
            v.len()
        };
        assert_eq!(dedup_len, d.len(), "partitions overlap");
        assert_eq!(all.len(), d.len(), "partitions do not cover the input");
    }

    #[test]
    fn split_ignores_sample_order() {
        let d = tiny_dataset(21, 2);
        let mut shuffled = d.clone();
        shuffled.samples.reverse();
        let a = split_dataset(&d, 5).unwrap();
        let b = split_dataset(&shuffled, 5).unwrap();
        for (pa, pb) in a.partitions().iter().zip(b.partitions()) {
            assert_eq!(
                pa.ids().collect::<Vec<_>>(),
                pb.ids().collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn split_rejects_tiny_input() {
        let d = tiny_dataset(3, 2);
        assert!(matches!(
            split_dataset(&d, 0),
            Err(Error::DatasetTooSmall { .. })
        ));
    }

    #[test]
    fn subdivide_is_even_and_disjoint() {
        let d = tiny_dataset(10, 2);
        let parts = subdivide(&d, 3);
        let sizes: Vec<usize> = parts.iter().map(|p| p.len()).collect();
        assert_eq!(sizes, vec![4, 3, 3]);
        let mut ids: Vec<&str> = parts.iter().flat_map(|p| p.ids()).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), 10);
    }
}
