//! Optional on-disk cache of rederived component ideals, enabled by pointing
//! [`CACHE_ENV`] at a directory.

use std::path::PathBuf;

use critlab_core::models::{rederive_component, Chart};
use critlab_core::{Ideal, ModelError, WeylElem};

pub const CACHE_ENV: &str = "CRITLAB_GB_CACHE";

fn cache_path(n: usize, w: &WeylElem) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_ENV)?;
    Some(PathBuf::from(dir).join(format!("gl{n}-{}.json", w.to_word_string())))
}

/// [`rederive_component`], served from the cache directory when one is set
/// and the entry exists. Unreadable entries are recomputed and overwritten.
pub fn rederive_cached(n: usize, w: &WeylElem) -> Result<Ideal, ModelError> {
    let path = cache_path(n, w);
    if let Some(p) = &path {
        if let Ok(text) = std::fs::read_to_string(p) {
            let ring = Chart::new(n)?.cut_ring().clone();
            if let Ok(ideal) = Ideal::from_json(&ring, &text) {
                return Ok(ideal);
            }
        }
    }
    let ideal = rederive_component(n, w)?;
    if let Some(p) = path {
        if let Some(parent) = p.parent() {
            let _ = std::fs::create_dir_all(parent);
        }
        let _ = std::fs::write(p, ideal.to_json());
    }
    Ok(ideal)
}
