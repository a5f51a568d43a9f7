//! Scratch directories populated with a generated corpus, plus a runner for
//! the real `excmine` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use excmine::corpus::{write_conll, write_phrase_tsv};
use excmine::synthetic::synthetic_corpus;

pub struct Workspace {
    pub dir: tempfile::TempDir,
}

impl Workspace {
    /// Writes `data.conll`, `phrases.tsv`, `emb.txt` and `keywords.json`.
    pub fn synthetic(n: usize, seed: u64) -> Self {
        let ws = Workspace { dir: tempfile::tempdir().unwrap() };
        let c = synthetic_corpus(n, 6, seed);
        ws.write("data.conll", &write_conll(&c.dataset).unwrap());
        ws.write("phrases.tsv", &write_phrase_tsv(&c.dataset, &c.dataset.phrases).unwrap());
        ws.write("emb.txt", &c.embeddings.to_text());
        ws.write("keywords.json", &c.keywords.to_json());
        ws
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    pub fn p(&self, name: &str) -> String {
        self.path(name).display().to_string()
    }

    pub fn write(&self, name: &str, text: &str) {
        std::fs::write(self.path(name), text).unwrap();
    }

    pub fn read(&self, name: &str) -> String {
        std::fs::read_to_string(self.path(name)).unwrap()
    }

    pub fn run(&self, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_excmine")).args(args).output().unwrap()
    }

    /// Runs and panics with stderr unless the exit code is 0.
    pub fn ok(&self, args: &[&str]) -> String {
        let out = self.run(args);
        assert!(
            out.status.success(),
            "{args:?} failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        String::from_utf8(out.stdout).unwrap()
    }

    pub fn split(&self) {
        self.ok(&[
            "split", "--in", &self.p("data.conll"), "--phrases", &self.p("phrases.tsv"),
            "--out-dir", &self.p(""), "--seed", "5",
        ]);
    }

    pub fn train_crf(&self, model: &str) {
        self.ok(&[
            "train-crf", "--train", &self.p("train.conll"), "--dev", &self.p("dev.conll"),
            "--embeddings", &self.p("emb.txt"), "--model", &self.p(model),
            "--lr", "0.05", "--epochs", "6", "--seed", "3",
        ]);
    }

    pub fn train_clf(&self, model: &str) {
        self.ok(&[
            "train-clf", "--train", &self.p("train.conll"), "--phrases", &self.p("train.tsv"),
            "--embeddings", &self.p("emb.txt"), "--keywords", &self.p("keywords.json"),
            "--model", &self.p(model), "--lr", "0.5", "--epochs", "150",
        ]);
    }
}
