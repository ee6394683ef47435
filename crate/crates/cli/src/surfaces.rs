//! Surface resolution: a built-in name or a path to a descriptor file.

use anyhow::Context;
use hilbmotive::surface::SurfaceDescriptor;

pub fn resolve(name_or_path: &str) -> anyhow::Result<SurfaceDescriptor> {
    if let Some(builtin) = SurfaceDescriptor::builtin(name_or_path) {
        return Ok(builtin);
    }
    let text = std::fs::read_to_string(name_or_path).with_context(|| {
        format!(
            "no built-in surface named {name_or_path:?} (try {}) and no such file",
            SurfaceDescriptor::BUILTIN_NAMES.join(", ")
        )
    })?;
    let descriptor: SurfaceDescriptor = serde_json::from_str(&text)
        .with_context(|| format!("{name_or_path}: not a valid surface descriptor"))?;
    descriptor
        .validate()
        .with_context(|| format!("{name_or_path}: descriptor fails validation"))?;
    Ok(descriptor)
}
