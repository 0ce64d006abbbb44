//! A committed function file must decode and evaluate identically on every
//! platform, and a fresh build with the same inputs must reproduce it byte
//! for byte.

mod common;

use std::path::PathBuf;

use common::{assert_permutation, keys};
use pthash::{BuildConfig, EncoderKind, Exec, Mphf};

fn golden_path(kind: EncoderKind) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("tests/data/golden_{}.pth", kind.flag()))
}

fn build(kind: EncoderKind) -> (Vec<u64>, Mphf) {
    let ks = keys(20_000, 77);
    let cfg = BuildConfig::new(6.0, 0.94).with_seed(1234).with_encoder(kind);
    let f = Mphf::build(&ks, &cfg).unwrap();
    (ks, f)
}

#[test]
fn rebuild_matches_golden_bytes() {
    for kind in EncoderKind::ALL {
        let (_, f) = build(kind);
        let path = golden_path(kind);
        if std::env::var_os("PTHASH_BLESS").is_some() {
            std::fs::write(&path, f.to_bytes()).unwrap();
        }
        let golden = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(f.to_bytes(), golden, "{kind}");
    }
}

#[test]
fn golden_files_evaluate_like_fresh_builds() {
    for kind in EncoderKind::ALL {
        let (ks, fresh) = build(kind);
        let loaded = Mphf::from_bytes(&std::fs::read(golden_path(kind)).unwrap()).unwrap();
        assert_eq!(loaded.encoder(), kind);
        let values = loaded.evaluate_all(&ks, Exec::Sequential);
        assert_permutation(&values);
        assert_eq!(values, fresh.evaluate_all(&ks, Exec::Sequential));
    }
}
