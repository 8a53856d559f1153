//! Append-only JSON-lines store of orbit points.
//!
//! Each line is one [`CacheLine`]: the key `(map_hash, start, n)` plus the
//! point coordinates and target heights as decimal strings.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::OrbitRecord;
use crate::error::{Error, Result};
use crate::heights::TargetHeight;
use crate::projective::{ProjPoint, SelfMap};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CachedTarget {
    pub label: String,
    /// `None` when the point lies on the target.
    pub arch: Option<f64>,
    pub finite_mult: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheLine {
    pub map_hash: String,
    pub start: String,
    pub n: usize,
    pub coords: Vec<String>,
    pub targets: Vec<CachedTarget>,
}

impl CacheLine {
    pub fn from_record(map: &SelfMap, start: &ProjPoint, record: &OrbitRecord) -> CacheLine {
        CacheLine {
            map_hash: map_hash(map),
            start: start.to_string(),
            n: record.n,
            coords: record.point.coords().iter().map(|c| c.to_string()).collect(),
            targets: record
                .target_heights
                .iter()
                .map(|(label, h)| match h {
                    TargetHeight::Finite(g) => CachedTarget {
                        label: label.clone(),
                        arch: Some(g.arch.value()),
                        finite_mult: Some(g.finite_mult.to_string()),
                    },
                    TargetHeight::Infinite => CachedTarget {
                        label: label.clone(),
                        arch: None,
                        finite_mult: None,
                    },
                })
                .collect(),
        }
    }

    pub fn point(&self) -> Result<ProjPoint> {
        let coords = self
            .coords
            .iter()
            .map(|c| {
                c.parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad cached coordinate {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        ProjPoint::normalize(coords)
    }
}

/// SHA-256 of the map's canonical text, hex encoded.
pub fn map_hash(map: &SelfMap) -> String {
    let digest = Sha256::digest(map.canonical_text().as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

type Key = (String, String);

pub struct OrbitCache {
    path: PathBuf,
    points: HashMap<Key, HashMap<usize, ProjPoint>>,
    writer: Option<BufWriter<File>>,
}

impl OrbitCache {
    /// Loads every line of `path`; a missing file is an empty cache.
    pub fn open(path: impl AsRef<Path>) -> Result<OrbitCache> {
        let path = path.as_ref().to_path_buf();
        let mut points: HashMap<Key, HashMap<usize, ProjPoint>> = HashMap::new();
        match File::open(&path) {
            Ok(file) => {
                for (i, line) in BufReader::new(file).lines().enumerate() {
                    let line = line.map_err(|e| Error::Invalid(format!("reading cache: {e}")))?;
                    if line.trim().is_empty() {
                        continue;
                    }
                    let entry: CacheLine = serde_json::from_str(&line).map_err(|e| {
                        Error::Parse(format!("cache {} line {}: {e}", path.display(), i + 1))
                    })?;
                    let p = entry.point()?;
                    points
                        .entry((entry.map_hash, entry.start))
                        .or_default()
                        .insert(entry.n, p);
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => return Err(Error::Invalid(format!("opening cache: {e}"))),
        }
        Ok(OrbitCache {
            path,
            points,
            writer: None,
        })
    }

    /// The cached points f⁰x, f¹x, … up to the first gap.
    pub fn cached_points(&self, map: &SelfMap, start: &ProjPoint) -> Vec<ProjPoint> {
        let key = (map_hash(map), start.to_string());
        let Some(by_n) = self.points.get(&key) else {
            return Vec::new();
        };
        (0..)
            .map_while(|n| by_n.get(&n).cloned())
            .collect()
    }

    pub fn append(&mut self, map: &SelfMap, start: &ProjPoint, record: &OrbitRecord) -> Result<()> {
        let line = CacheLine::from_record(map, start, record);
        if self.writer.is_none() {
            let file = OpenOptions::new()
                .create(true)
                .append(true)
                .open(&self.path)
                .map_err(|e| Error::Invalid(format!("opening cache for append: {e}")))?;
            self.writer = Some(BufWriter::new(file));
        }
        let w = self.writer.as_mut().expect("writer");
        let text = serde_json::to_string(&line).expect("cache line serializes");
        writeln!(w, "{text}")
            .and_then(|_| w.flush())
            .map_err(|e| Error::Invalid(format!("writing cache: {e}")))?;
        self.points
            .entry((line.map_hash, line.start))
            .or_default()
            .insert(record.n, record.point.clone());
        Ok(())
    }
}
