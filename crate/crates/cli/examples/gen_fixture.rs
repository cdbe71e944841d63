//! Regenerates the synthetic test collection.
//!
//! `cargo run -p prf-cli --example gen_fixture [DIR]`

#[path = "../tests/common/synth.rs"]
mod synth;

use std::path::PathBuf;

fn main() -> std::io::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/synth"));
    synth::write(&dir)?;
    println!("wrote {}", dir.display());
    Ok(())
}
