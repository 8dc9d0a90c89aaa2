//! The checked-in corpora must equal what the generators produce.
//! `WKERN_BLESS=1 cargo test --test fixtures` rewrites them.

use std::path::PathBuf;
use wkern::suite::corpus::{fixture_text, render_fixture, FIXTURES};

#[test]
fn fixtures_match_generators() {
    let bless = std::env::var_os("WKERN_BLESS").is_some();
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for (name, generate) in FIXTURES {
        let fresh = render_fixture(&generate());
        if bless {
            std::fs::write(dir.join(name), &fresh).unwrap();
            continue;
        }
        assert_eq!(fixture_text(name).unwrap(), fresh, "{name} is stale; regenerate with WKERN_BLESS=1");
    }
}
