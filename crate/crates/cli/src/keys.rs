use std::collections::{HashMap, HashSet};
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::CliError;

/// Where keys come from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KeySource {
    /// `count` distinct random 64-bit integers drawn from a ChaCha8 stream.
    Random { count: u64, rng_seed: u64 },
    /// Newline-delimited keys, hashed as raw bytes without the terminator.
    File { path: PathBuf },
}

/// Loaded key set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Keys {
    U64(Vec<u64>),
    Bytes(Vec<Vec<u8>>),
}

impl Keys {
    pub fn len(&self) -> usize {
        match self {
            Keys::U64(k) => k.len(),
            Keys::Bytes(k) => k.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn kind(&self) -> pthash::KeyKind {
        match self {
            Keys::U64(_) => pthash::KeyKind::U64,
            Keys::Bytes(_) => pthash::KeyKind::Bytes,
        }
    }
}

impl KeySource {
    pub fn load(&self) -> Result<Keys, CliError> {
        match self {
            KeySource::Random { count, rng_seed } => Ok(Keys::U64(random_keys(*count, *rng_seed))),
            KeySource::File { path } => read_key_file(path).map(Keys::Bytes),
        }
    }
}

/// Distinct uniform 64-bit keys; repeated draws are discarded and redrawn.
pub fn random_keys(count: u64, rng_seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut seen = HashSet::with_capacity(count as usize);
    let mut keys = Vec::with_capacity(count as usize);
    while (keys.len() as u64) < count {
        let k: u64 = rng.gen();
        if seen.insert(k) {
            keys.push(k);
        }
    }
    keys
}

pub fn read_key_file(path: &Path) -> Result<Vec<Vec<u8>>, CliError> {
    let data = std::fs::read(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_lines(&data)
}

/// Splits on `\n`; a trailing newline does not start an extra key.
pub fn parse_lines(data: &[u8]) -> Result<Vec<Vec<u8>>, CliError> {
    let body = data.strip_suffix(b"\n").unwrap_or(data);
    if body.is_empty() && data.len() <= 1 {
        return Ok(Vec::new());
    }
    let mut first_seen: HashMap<&[u8], usize> = HashMap::new();
    let mut keys = Vec::new();
    for (lineno, line) in body.split(|&b| b == b'\n').enumerate() {
        if let Some(&prev) = first_seen.get(line) {
            return Err(CliError::DuplicateKey {
                key: String::from_utf8_lossy(line).into_owned(),
                first_line: prev + 1,
                line: lineno + 1,
            });
        }
        first_seen.insert(line, lineno);
        keys.push(line.to_vec());
    }
    Ok(keys)
}
