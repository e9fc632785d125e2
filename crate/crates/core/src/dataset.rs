//! Labeled time-series collections in the classic UCR text layout: one
//! instance per line, class label first, then the values. Fields may be
//! separated by commas, tabs or runs of spaces.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seqdist::{Symbol, SymbolicSequence};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    #[default]
    Train,
    Test,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Train => "train",
            Role::Test => "test",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabeledSeries {
    pub label: i64,
    pub series: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabeledDataset {
    pub name: String,
    pub role: Role,
    pub instances: Vec<LabeledSeries>,
}

impl LabeledDataset {
    pub fn new(name: impl Into<String>, role: Role, instances: Vec<LabeledSeries>) -> Self {
        Self {
            name: name.into(),
            role,
            instances,
        }
    }

    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    pub fn labels(&self) -> impl Iterator<Item = i64> + '_ {
        self.instances.iter().map(|i| i.label)
    }

    /// Common series length, or `None` when lengths differ or the set is empty.
    pub fn series_length(&self) -> Option<usize> {
        let first = self.instances.first()?.series.len();
        self.instances.iter().all(|i| i.series.len() == first).then_some(first)
    }

    /// Writes the canonical comma-delimited form, label first.
    pub fn write_ucr<W: Write>(&self, mut out: W) -> io::Result<()> {
        for inst in &self.instances {
            write!(out, "{}", inst.label)?;
            for v in &inst.series {
                write!(out, ",{v}")?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

/// Loads one UCR file. Name and role come from the file name
/// (`Coffee_TRAIN` gives `Coffee`, [`Role::Train`]).
pub fn load_ucr(path: impl AsRef<Path>) -> Result<LabeledDataset> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let (name, role) = name_and_role(path);
    parse_ucr(&text, path, name, role)
}

pub fn parse_ucr(text: &str, path: &Path, name: String, role: Role) -> Result<LabeledDataset> {
    let parse_err = |line: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };

    let mut instances = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let fields: Vec<&str> = raw
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|f| !f.is_empty())
            .collect();
        if fields.is_empty() {
            continue;
        }
        if fields.len() < 2 {
            return Err(parse_err(
                line_no,
                "expected a label followed by at least one value".into(),
            ));
        }
        let numbers = fields
            .iter()
            .enumerate()
            .map(|(col, f)| {
                f.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| parse_err(line_no, format!("field {}: {f:?} is not a finite number", col + 1)))
            })
            .collect::<Result<Vec<f64>>>()?;
        instances.push(LabeledSeries {
            label: numbers[0].round() as i64,
            series: numbers[1..].to_vec(),
        });
    }

    if instances.is_empty() {
        return Err(Error::Empty {
            path: path.to_path_buf(),
        });
    }
    let ds = LabeledDataset::new(name, role, instances);
    if ds.series_length().is_none() {
        log::warn!("{}: series lengths differ between instances", path.display());
    }
    Ok(ds)
}

fn name_and_role(path: &Path) -> (String, Role) {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    for (suffix, role) in [("_TRAIN", Role::Train), ("_TEST", Role::Test)] {
        if let Some(name) = stem.strip_suffix(suffix) {
            return (name.to_string(), role);
        }
    }
    (stem, Role::Train)
}

/// Train and test file locations for one archive dataset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UcrPaths {
    pub name: String,
    pub train: PathBuf,
    pub test: PathBuf,
}

impl UcrPaths {
    /// Resolves `<dir>/<name>_TRAIN` and `<dir>/<name>_TEST`, where `name` is
    /// the directory's own name. Extensions `.tsv`, `.txt` and `.csv` are also
    /// tried.
    pub fn resolve(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        let name = dir
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .ok_or_else(|| Error::invalid(format!("{} has no directory name", dir.display())))?;
        let find = |suffix: &str| -> Result<PathBuf> {
            ["", ".tsv", ".txt", ".csv"]
                .iter()
                .map(|ext| dir.join(format!("{name}_{suffix}{ext}")))
                .find(|p| p.is_file())
                .ok_or_else(|| Error::Io {
                    path: dir.join(format!("{name}_{suffix}")),
                    source: io::Error::new(io::ErrorKind::NotFound, "dataset file not found"),
                })
        };
        Ok(Self {
            train: find("TRAIN")?,
            test: find("TEST")?,
            name,
        })
    }

    pub fn load(&self) -> Result<(LabeledDataset, LabeledDataset)> {
        let mut train = load_ucr(&self.train)?;
        let mut test = load_ucr(&self.test)?;
        train.name.clone_from(&self.name);
        train.role = Role::Train;
        test.name.clone_from(&self.name);
        test.role = Role::Test;
        Ok((train, test))
    }
}

/// `count` random sequences with lengths uniform in `0..=max_len` and symbols
/// uniform in `0..alpha`. Deterministic for a given seed.
pub fn synthetic_strings(seed: u64, count: usize, max_len: usize, alpha: usize) -> Vec<SymbolicSequence> {
    assert!(
        (1..=crate::seqdist::MAX_ALPHABET).contains(&alpha),
        "alphabet size {alpha}"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.random_range(0..=max_len);
            let symbols = (0..len).map(|_| Symbol(rng.random_range(0..alpha) as u8)).collect();
            SymbolicSequence::new(symbols, alpha).expect("symbols drawn inside the alphabet")
        })
        .collect()
}

/// Standard normal draw by Box-Muller.
fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.random_range(f64::EPSILON..1.0);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Cylinder-Bell-Funnel series: three shape classes (labels 1, 2, 3) on a
/// noisy baseline, `per_class` instances each, interleaved by class.
pub fn cylinder_bell_funnel(seed: u64, per_class: usize, length: usize) -> LabeledDataset {
    assert!(length >= 16, "series length {length} too short for CBF shapes");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = length as f64 / 128.0;

    let mut instances = Vec::with_capacity(3 * per_class);
    for _ in 0..per_class {
        for label in 1..=3 {
            let a = (rng.random_range(16.0..32.0) * scale).floor() as usize;
            let b = a + (rng.random_range(32.0..96.0) * scale).floor() as usize;
            let b = b.min(length - 1);
            let eta = 6.0 + gaussian(&mut rng);
            let series = (0..length)
                .map(|t| {
                    let inside = t >= a && t <= b;
                    let shape = if !inside {
                        0.0
                    } else {
                        let span = (b - a).max(1) as f64;
                        match label {
                            1 => 1.0,
                            2 => (t - a) as f64 / span,
                            _ => (b - t) as f64 / span,
                        }
                    };
                    eta * shape + gaussian(&mut rng)
                })
                .collect();
            instances.push(LabeledSeries { label, series });
        }
    }
    LabeledDataset::new("CBF", Role::Train, instances)
}
