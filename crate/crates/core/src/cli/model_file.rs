//! Text model format:
//!
//! ```text
//! excm-1
//! checksum <sha256 of everything below this line>
//! {"kind":"crf", ...json header...}
//! <parameter count>
//! <one weight per line, 17 significant digits>
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::corpus::KeywordIndex;
use crate::crf::CrfModel;
use crate::features::FeatureTemplate;
use crate::phrase_clf::SoftmaxModel;

pub const FORMAT_VERSION: &str = "excm-1";

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("unsupported model format {found:?} (expected {FORMAT_VERSION})")]
    VersionMismatch { found: String },
    #[error("model checksum mismatch (file truncated or edited)")]
    ChecksumMismatch,
    #[error("malformed model file: {0}")]
    Format(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    Crf(CrfModel),
    Softmax { model: SoftmaxModel, keywords: KeywordIndex },
}

impl Model {
    pub fn kind(&self) -> &'static str {
        match self {
            Model::Crf(_) => "crf",
            Model::Softmax { .. } => "softmax",
        }
    }

    fn params(&self) -> &[f64] {
        match self {
            Model::Crf(m) => m.params(),
            Model::Softmax { model, .. } => model.params(),
        }
    }
}

/// A model plus free-form training metadata (config, seed, checksums...).
#[derive(Debug, Clone, PartialEq)]
pub struct ModelFile {
    pub model: Model,
    pub metadata: Value,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum Header {
    Crf {
        template: FeatureTemplate,
        metadata: Value,
    },
    Softmax {
        width: usize,
        keywords: Value,
        metadata: Value,
    },
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl ModelFile {
    pub fn to_text(&self) -> String {
        let header = match &self.model {
            Model::Crf(m) => Header::Crf {
                template: m.template().clone(),
                metadata: self.metadata.clone(),
            },
            Model::Softmax { model, keywords } => Header::Softmax {
                width: model.width(),
                keywords: serde_json::from_str(&keywords.to_json()).expect("keyword json is valid"),
                metadata: self.metadata.clone(),
            },
        };
        let params = self.model.params();
        let mut body = serde_json::to_string(&header).expect("header serializes");
        body.push('\n');
        body.push_str(&format!("{}\n", params.len()));
        for w in params {
            body.push_str(&format!("{w:.16e}\n"));
        }
        format!("{FORMAT_VERSION}\nchecksum {}\n{body}", sha256_hex(body.as_bytes()))
    }

    pub fn from_text(text: &str) -> Result<Self, ModelError> {
        let fmt = |m: &str| ModelError::Format(m.to_string());
        let (version, rest) = text.split_once('\n').ok_or_else(|| fmt("missing version line"))?;
        let version = version.trim_end_matches('\r');
        if version != FORMAT_VERSION {
            return Err(if version.starts_with("excm-") {
                ModelError::VersionMismatch { found: version.to_string() }
            } else {
                fmt("not an excm model file")
            });
        }
        let (sum_line, body) = rest.split_once('\n').ok_or(ModelError::ChecksumMismatch)?;
        let expected = sum_line
            .strip_prefix("checksum ")
            .ok_or_else(|| fmt("missing checksum line"))?;
        if sha256_hex(body.as_bytes()) != expected {
            return Err(ModelError::ChecksumMismatch);
        }

        let mut lines = body.lines();
        let header: Header = serde_json::from_str(lines.next().ok_or_else(|| fmt("missing header"))?)
            .map_err(|e| ModelError::Format(format!("header: {e}")))?;
        let count: usize = lines
            .next()
            .and_then(|l| l.parse().ok())
            .ok_or_else(|| fmt("missing parameter count"))?;
        let params = lines
            .map(|l| l.parse::<f64>().map_err(|_| ModelError::Format(format!("bad weight {l:?}"))))
            .collect::<Result<Vec<f64>, _>>()?;
        if params.len() != count {
            return Err(fmt("parameter count does not match"));
        }

        Ok(match header {
            Header::Crf { template, metadata } => ModelFile {
                model: Model::Crf(CrfModel::from_params(template, params).map_err(|e| ModelError::Format(e.to_string()))?),
                metadata,
            },
            Header::Softmax { width, keywords, metadata } => {
                let keywords =
                    KeywordIndex::from_json(&keywords.to_string()).map_err(|e| ModelError::Format(e.to_string()))?;
                let model = SoftmaxModel::from_params(width, params).map_err(|e| ModelError::Format(e.to_string()))?;
                ModelFile {
                    model: Model::Softmax { model, keywords },
                    metadata,
                }
            }
        })
    }
}

pub fn save_model(file: &ModelFile, path: &Path) -> Result<(), ModelError> {
    super::write_atomic(path, file.to_text().as_bytes())?;
    Ok(())
}

pub fn load_model(path: &Path) -> Result<ModelFile, ModelError> {
    ModelFile::from_text(&std::fs::read_to_string(path)?)
}
