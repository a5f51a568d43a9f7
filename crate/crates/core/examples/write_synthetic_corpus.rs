//! Write a generated corpus to a directory for trying the command line:
//!
//! ```sh
//! cargo run --example write_synthetic_corpus -- /tmp/toy
//! excmine split --in /tmp/toy/data.conll --phrases /tmp/toy/phrases.tsv --out-dir /tmp/toy
//! ```

use std::path::PathBuf;

use excmine::corpus::{write_conll, write_phrase_tsv};
use excmine::synthetic::synthetic_corpus;

fn main() -> std::io::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "toy-corpus".into()));
    std::fs::create_dir_all(&dir)?;
    let c = synthetic_corpus(500, 16, 1);
    std::fs::write(dir.join("data.conll"), write_conll(&c.dataset).unwrap())?;
    std::fs::write(dir.join("phrases.tsv"), write_phrase_tsv(&c.dataset, &c.dataset.phrases).unwrap())?;
    std::fs::write(dir.join("emb.txt"), c.embeddings.to_text())?;
    std::fs::write(dir.join("keywords.json"), c.keywords.to_json())?;
    println!("wrote {} sentences to {}", c.dataset.sentences.len(), dir.display());
    Ok(())
}
