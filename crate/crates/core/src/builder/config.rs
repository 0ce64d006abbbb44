use crate::encoders::EncoderKind;
use crate::error::BuildError;
use crate::exec::Exec;

/// Construction knobs.
#[derive(Debug, Clone, PartialEq)]
pub struct BuildConfig {
    /// Space/time trade-off; buckets = ceil(c * n / log2 n). Must exceed log2(e).
    pub c: f64,
    /// Maximum load factor of the search table, in (0, 1].
    pub alpha: f64,
    pub seed: u64,
    pub encoder: EncoderKind,
    /// Pilots `0..pilot_cap` are tried per bucket before the seed is abandoned.
    pub pilot_cap: u64,
    pub max_seed_attempts: u32,
    pub exec: Exec,
}

impl Default for BuildConfig {
    fn default() -> Self {
        Self {
            c: 7.0,
            alpha: 0.99,
            seed: 0,
            encoder: EncoderKind::DictionaryDictionary,
            pilot_cap: 1 << 26,
            max_seed_attempts: 64,
            exec: Exec::default(),
        }
    }
}

impl BuildConfig {
    pub fn new(c: f64, alpha: f64) -> Self {
        Self {
            c,
            alpha,
            ..Self::default()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_encoder(mut self, encoder: EncoderKind) -> Self {
        self.encoder = encoder;
        self
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn validate(&self) -> Result<(), BuildError> {
        if !(self.c.is_finite() && self.c > std::f64::consts::LOG2_E) {
            return Err(BuildError::InvalidConfig(format!(
                "c = {} must be finite and greater than log2(e) = {:.4}",
                self.c,
                std::f64::consts::LOG2_E
            )));
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(BuildError::InvalidConfig(format!(
                "alpha = {} must lie in (0, 1]",
                self.alpha
            )));
        }
        if self.pilot_cap == 0 || self.max_seed_attempts == 0 {
            return Err(BuildError::InvalidConfig(
                "pilot_cap and max_seed_attempts must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Search table size: `max(ceil(n / alpha), n)`, moved past powers of two so
/// every bit of the XOR feeds the modulo.
pub fn table_size(n: u64, alpha: f64) -> u64 {
    let mut n_prime = ((n as f64 / alpha).ceil() as u64).max(n).max(1);
    if n_prime.is_power_of_two() {
        n_prime += 1;
    }
    n_prime
}
