use std::path::PathBuf;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("io error at {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("image decode error at {path}: {source}")]
    Image {
        path: PathBuf,
        #[source]
        source: image::ImageError,
    },
    #[error("empty class: {0}")]
    EmptyClass(String),
    #[error("dataset too small: {len} samples, need at least {min}")]
    DatasetTooSmall { len: usize, min: usize },
    #[error("inconsistent sample shapes: expected {expected:?}, got {got:?} for sample {id}")]
    ShapeMismatch {
        expected: (usize, usize, usize),
        got: (usize, usize, usize),
        id: String,
    },
    #[error("duplicate sample id: {0}")]
    DuplicateId(String),
    #[error("label {label} out of range for {num_classes} classes (sample {id})")]
    LabelOutOfRange {
        label: usize,
        num_classes: usize,
        id: String,
    },
    #[error("malformed archive {path}: {reason}")]
    MalformedArchive { path: PathBuf, reason: String },

    #[error("unsupported model family: {0}")]
    UnsupportedFamily(String),
    #[error("invalid model spec: {0}")]
    InvalidSpec(String),
    #[error("class-count mismatch: model has {model} classes, dataset has {data}")]
    ClassCountMismatch { model: usize, data: usize },
    #[error("empty dataset: {0}")]
    EmptyDataset(String),
    #[error("frozen block count {frozen} out of range [0, {num_blocks}]")]
    InvalidFrozenBlocks { frozen: usize, num_blocks: usize },
    #[error("input shape mismatch: model expects {expected:?}, samples have {got:?}")]
    InputShapeMismatch {
        expected: (usize, usize, usize),
        got: (usize, usize, usize),
    },
    #[error("teacher model is untrained")]
    UntrainedTeacher,

    #[error("degenerate labels: attack dataset contains only label {0}")]
    DegenerateLabels(u8),
    #[error("feature length mismatch: expected {expected}, got {got}")]
    FeatureLengthMismatch { expected: usize, got: usize },
    #[error("sample id {0:?} cannot be written to csv (contains a delimiter)")]
    UnwritableId(String),

    #[error("metric input length mismatch: {scores} scores vs {labels} labels")]
    MetricLengthMismatch { scores: usize, labels: usize },
    #[error("single-label input: need both members and non-members")]
    SingleLabelInput,
    #[error("sweep point K={k} outside [1, {num_blocks}]")]
    SweepOutOfRange { k: usize, num_blocks: usize },
    #[error("shadow and target families must differ for the transfer attack")]
    FamiliesMustDiffer,

    #[error("{0}")]
    Invalid(String),
}
