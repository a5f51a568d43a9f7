//! The `excmine` command line: prepare, split, train, tag, classify, evaluate.
//!
//! Exit codes: 0 success, 1 data or model error, 2 usage error.

pub mod model_file;

use std::collections::{BTreeMap, HashMap};
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::corpus::{
    cohen_kappa, extract_phrases, filter_candidate_sentences, label_distribution, parse_conll, parse_phrase_tsv,
    parse_reviews_jsonl, repair_bio, sentences_from_review, split_dataset, write_conll, write_phrase_tsv, BioTag,
    Category, CorpusError, Dataset, KeywordIndex, Phrase, SplitRatios,
};
use crate::crf::{tag, train_crf, CrfError, TrainConfig};
use crate::eval::{end_to_end, multiclass_report, overlap_scores, EvalError};
use crate::features::{phrase_features, EmbeddingTable, FeatureError, TemplateBuilder};
use crate::phrase_clf::{train_softmax, ClfConfig, ClfError};

pub use model_file::{load_model, save_model, Model, ModelError, ModelFile, FORMAT_VERSION};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Corpus { path: PathBuf, source: CorpusError },
    #[error("{path}: {source}")]
    Embeddings { path: PathBuf, source: FeatureError },
    #[error("{path}: {source}")]
    Model { path: PathBuf, source: ModelError },
    #[error(transparent)]
    Dataset(#[from] CorpusError),
    #[error(transparent)]
    Feature(#[from] FeatureError),
    #[error(transparent)]
    Crf(#[from] CrfError),
    #[error(transparent)]
    Clf(#[from] ClfError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("{0}")]
    Input(String),
}

#[derive(Debug, Parser)]
#[command(name = "excmine", version, about = "Mine inclusion/exclusion phrases from reviews")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KappaFormat {
    /// Token tags of two CoNLL files with identical tokens.
    Conll,
    /// One label per non-empty line.
    Labels,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tokenize reviews (JSONL) and keep sentences with at least one keyword hit.
    Prepare {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        keywords: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Seeded train/dev/test split of a CoNLL file (and optionally its phrase list).
    Split {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        phrases: Option<PathBuf>,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, default_value_t = 0.7)]
        train: f64,
        #[arg(long, default_value_t = 0.1)]
        dev: f64,
        #[arg(long, default_value_t = 0.2)]
        test: f64,
        #[arg(long, default_value_t = 13)]
        seed: u64,
    },
    /// Train the BIO CRF tagger.
    TrainCrf {
        #[arg(long)]
        train: PathBuf,
        #[arg(long)]
        dev: PathBuf,
        #[arg(long)]
        embeddings: PathBuf,
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        lr: Option<f64>,
        #[arg(long)]
        momentum: Option<f64>,
        #[arg(long)]
        batch_size: Option<usize>,
        #[arg(long)]
        epochs: Option<usize>,
        #[arg(long)]
        l2: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1)]
        window: usize,
        #[arg(long, default_value_t = 2)]
        min_word_count: usize,
    },
    /// Tag a CoNLL file with a trained CRF.
    Tag {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        embeddings: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Train the phrase categorizer on categorized phrases.
    TrainClf {
        #[arg(long)]
        train: PathBuf,
        #[arg(long)]
        phrases: PathBuf,
        #[arg(long)]
        embeddings: PathBuf,
        #[arg(long)]
        keywords: PathBuf,
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        lr: Option<f64>,
        #[arg(long)]
        epochs: Option<usize>,
        #[arg(long)]
        l2: Option<f64>,
        #[arg(long)]
        batch_size: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        balanced: bool,
    },
    /// Assign a category to each phrase (from --phrases, or decoded from the tags of --in).
    Classify {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        embeddings: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        phrases: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Binary and proportional span overlap between two CoNLL files.
    EvalSpans {
        #[arg(long)]
        pred: PathBuf,
        #[arg(long)]
        gold: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Per-category P/R/F1 of phrase TSVs listing the same spans.
    EvalClasses {
        #[arg(long)]
        pred: PathBuf,
        #[arg(long)]
        gold: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// End-to-end extraction plus categorization scores of two phrase TSVs.
    EvalE2e {
        #[arg(long)]
        pred: PathBuf,
        #[arg(long)]
        gold: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Cohen's kappa between two annotations.
    Kappa {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = KappaFormat::Conll)]
        format: KappaFormat,
    },
    /// Tag and category counts.
    Stats {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        phrases: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

/// Runs the CLI on process stdio.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

/// Writes via a temporary file in the destination directory and renames it
/// into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Input files read by a command, remembered for run metadata.
#[derive(Default)]
struct Inputs {
    files: BTreeMap<String, (PathBuf, String)>,
}

impl Inputs {
    fn read(&mut self, role: &str, path: &Path) -> Result<String, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        self.files
            .insert(role.to_string(), (path.to_path_buf(), sha256_hex(text.as_bytes())));
        Ok(text)
    }

    fn conll(&mut self, role: &str, path: &Path) -> Result<Dataset, CliError> {
        let text = self.read(role, path)?;
        parse_conll(&text).map_err(|source| CliError::Corpus {
            path: path.to_path_buf(),
            source,
        })
    }

    fn phrases(&mut self, role: &str, path: &Path) -> Result<Vec<Phrase>, CliError> {
        let text = self.read(role, path)?;
        parse_phrase_tsv(&text).map_err(|source| CliError::Corpus {
            path: path.to_path_buf(),
            source,
        })
    }

    fn keywords(&mut self, path: &Path) -> Result<KeywordIndex, CliError> {
        let text = self.read("keywords", path)?;
        KeywordIndex::from_json(&text).map_err(|source| CliError::Corpus {
            path: path.to_path_buf(),
            source,
        })
    }

    fn embeddings(&mut self, path: &Path) -> Result<EmbeddingTable, CliError> {
        let text = self.read("embeddings", path)?;
        EmbeddingTable::load(&text).map_err(|source| CliError::Embeddings {
            path: path.to_path_buf(),
            source,
        })
    }

    fn model(&mut self, path: &Path) -> Result<ModelFile, CliError> {
        let text = self.read("model", path)?;
        ModelFile::from_text(&text).map_err(|source| CliError::Model {
            path: path.to_path_buf(),
            source,
        })
    }

    /// Role to checksum, without paths, so model files do not depend on
    /// where the inputs live.
    fn checksums(&self) -> Value {
        self.files
            .iter()
            .map(|(role, (_, sum))| (role.clone(), Value::String(sum.clone())))
            .collect::<serde_json::Map<_, _>>()
            .into()
    }

    fn with_paths(&self) -> Value {
        self.files
            .iter()
            .map(|(role, (path, sum))| (role.clone(), json!({"path": path.display().to_string(), "sha256": sum})))
            .collect::<serde_json::Map<_, _>>()
            .into()
    }
}

#[derive(Serialize)]
struct RunMeta<'a> {
    command: &'a str,
    version: &'static str,
    seed: Option<u64>,
    config: Value,
    inputs: Value,
    output_sha256: String,
}

/// Writes `bytes` to `path` and the run metadata to `<path>.meta.json`.
fn emit(path: &Path, bytes: &[u8], command: &str, seed: Option<u64>, config: Value, inputs: &Inputs) -> Result<(), CliError> {
    let meta = RunMeta {
        command,
        version: env!("CARGO_PKG_VERSION"),
        seed,
        config,
        inputs: inputs.with_paths(),
        output_sha256: sha256_hex(bytes),
    };
    let mut meta_text = serde_json::to_string_pretty(&meta).expect("metadata serializes");
    meta_text.push('\n');
    let mut meta_path = path.as_os_str().to_owned();
    meta_path.push(".meta.json");
    let meta_path = PathBuf::from(meta_path);
    for (p, b) in [(path, bytes), (meta_path.as_path(), meta_text.as_bytes())] {
        write_atomic(p, b).map_err(|source| CliError::Write {
            path: p.to_path_buf(),
            source,
        })?;
    }
    Ok(())
}

/// Report to `--out` (with metadata) or stdout.
fn report(
    out: Option<&Path>,
    stdout: &mut dyn Write,
    text: &str,
    command: &str,
    inputs: &Inputs,
) -> Result<(), CliError> {
    match out {
        Some(p) => emit(p, text.as_bytes(), command, None, Value::Null, inputs),
        None => stdout.write_all(text.as_bytes()).map_err(|source| CliError::Write {
            path: PathBuf::from("<stdout>"),
            source,
        }),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

/// Refuses a model whose recorded embedding checksum differs from the given table.
fn check_embeddings(model: &ModelFile, inputs: &Inputs, model_path: &Path) -> Result<(), CliError> {
    let recorded = model.metadata.pointer("/checksums/embeddings").and_then(Value::as_str);
    let given = inputs.files.get("embeddings").map(|(_, s)| s.as_str());
    match (recorded, given) {
        (Some(r), Some(g)) if r != g => Err(CliError::Input(format!(
            "{}: trained with embeddings sha256 {r}, given {g}",
            model_path.display()
        ))),
        _ => Ok(()),
    }
}

fn phrase_matrix(
    dataset: &Dataset,
    phrases: &[Phrase],
    table: &EmbeddingTable,
    keywords: &KeywordIndex,
) -> Result<Vec<Vec<f64>>, CliError> {
    let by_id: HashMap<&str, _> = dataset.sentences.iter().map(|s| (s.id.as_str(), s)).collect();
    phrases
        .iter()
        .map(|p| {
            let s = by_id
                .get(p.sentence_id.as_str())
                .ok_or_else(|| CorpusError::UnknownSentence(p.sentence_id.clone()))?;
            Ok(phrase_features(table, keywords, s, p.start, p.end)?)
        })
        .collect()
}

fn predicted_phrases(dataset: &Dataset) -> Vec<Phrase> {
    let mut out = Vec::new();
    for s in &dataset.sentences {
        if let Some(tags) = &s.tags {
            out.extend(extract_phrases(&s.id, &repair_bio(tags)).expect("repaired tags are valid"));
        }
    }
    out
}

fn execute(command: Command, stdout: &mut dyn Write) -> Result<(), CliError> {
    let mut inputs = Inputs::default();
    match command {
        Command::Prepare { input, keywords, out } => {
            let text = inputs.read("reviews", &input)?;
            let reviews = parse_reviews_jsonl(&text).map_err(|source| CliError::Corpus { path: input.clone(), source })?;
            let index = inputs.keywords(&keywords)?;
            let sentences: Vec<_> = reviews.iter().flat_map(sentences_from_review).collect();
            let kept = filter_candidate_sentences(&sentences, &index)
                .into_iter()
                .map(|(s, _)| {
                    let mut s = s.clone();
                    s.tags = Some(vec![BioTag::O; s.len()]);
                    s
                })
                .collect();
            let text = write_conll(&Dataset::new(kept))?;
            emit(&out, text.as_bytes(), "prepare", None, Value::Null, &inputs)
        }

        Command::Split { input, phrases, out_dir, train, dev, test, seed } => {
            let mut data = inputs.conll("data", &input)?;
            if let Some(p) = &phrases {
                data.phrases = inputs.phrases("phrases", p)?;
            }
            data.validate()?;
            let ratios = SplitRatios::new(train, dev, test)?;
            let parts = split_dataset(&data, ratios, seed)?;
            let config = json!({"train": train, "dev": dev, "test": test});
            for (name, part) in [("train", parts.0), ("dev", parts.1), ("test", parts.2)] {
                let conll = write_conll(&part)?;
                emit(&out_dir.join(format!("{name}.conll")), conll.as_bytes(), "split", Some(seed), config.clone(), &inputs)?;
                if phrases.is_some() {
                    let tsv = write_phrase_tsv(&part, &part.phrases)?;
                    emit(&out_dir.join(format!("{name}.tsv")), tsv.as_bytes(), "split", Some(seed), config.clone(), &inputs)?;
                }
            }
            Ok(())
        }

        Command::TrainCrf {
            train,
            dev,
            embeddings,
            model,
            lr,
            momentum,
            batch_size,
            epochs,
            l2,
            seed,
            window,
            min_word_count,
        } => {
            let d = TrainConfig::default();
            let config = TrainConfig {
                learning_rate: lr.unwrap_or(d.learning_rate),
                momentum: momentum.unwrap_or(d.momentum),
                batch_size: batch_size.unwrap_or(d.batch_size),
                epochs: epochs.unwrap_or(d.epochs),
                l2_lambda: l2.unwrap_or(d.l2_lambda),
                seed: seed.unwrap_or(d.seed),
            };
            let train_set = inputs.conll("train", &train)?;
            let dev_set = inputs.conll("dev", &dev)?;
            let table = inputs.embeddings(&embeddings)?;
            let template = TemplateBuilder::new(table.dim())
                .window(window)
                .min_word_count(min_word_count)
                .observe_all(&train_set.sentences)
                .build();
            let (crf, history) = train_crf(&config, &train_set.sentences, &dev_set.sentences, template, &table)?;
            let metadata = json!({
                "config": config,
                "seed": config.seed,
                "checksums": inputs.checksums(),
                "best_epoch": history.best_epoch,
                "best_dev_f1": history.best_dev_f1,
                "version": env!("CARGO_PKG_VERSION"),
            });
            let file = ModelFile { model: Model::Crf(crf), metadata: metadata.clone() };
            let text = file.to_text();
            let run_config = json!({"train": config, "window": window, "min_word_count": min_word_count, "history": history});
            emit(&model, text.as_bytes(), "train-crf", Some(config.seed), run_config, &inputs)
        }

        Command::Tag { model, embeddings, input, out } => {
            let file = inputs.model(&model)?;
            let table = inputs.embeddings(&embeddings)?;
            check_embeddings(&file, &inputs, &model)?;
            let Model::Crf(crf) = &file.model else {
                return Err(CliError::Input(format!("{}: not a crf model", model.display())));
            };
            let mut data = inputs.conll("data", &input)?;
            let tags = tag(crf, &table, &data.sentences)?;
            for (s, t) in data.sentences.iter_mut().zip(tags) {
                s.tags = Some(t);
            }
            let text = write_conll(&data)?;
            emit(&out, text.as_bytes(), "tag", None, Value::Null, &inputs)
        }

        Command::TrainClf {
            train,
            phrases,
            embeddings,
            keywords,
            model,
            lr,
            epochs,
            l2,
            batch_size,
            seed,
            balanced,
        } => {
            let d = ClfConfig::default();
            let config = ClfConfig {
                learning_rate: lr.unwrap_or(d.learning_rate),
                epochs: epochs.unwrap_or(d.epochs),
                l2_lambda: l2.unwrap_or(d.l2_lambda),
                batch_size: batch_size.or(d.batch_size),
                seed: seed.unwrap_or(d.seed),
                balanced,
            };
            let data = inputs.conll("train", &train)?;
            let list = inputs.phrases("phrases", &phrases)?;
            let table = inputs.embeddings(&embeddings)?;
            let index = inputs.keywords(&keywords)?;
            let labels = list
                .iter()
                .map(|p| {
                    p.category.ok_or_else(|| {
                        CliError::Input(format!("{}: phrase {}[{},{}) has no category", phrases.display(), p.sentence_id, p.start, p.end))
                    })
                })
                .collect::<Result<Vec<Category>, _>>()?;
            let xs = phrase_matrix(&data, &list, &table, &index)?;
            let (clf, losses) = train_softmax(&config, &xs, &labels)?;
            let metadata = json!({
                "config": config,
                "seed": config.seed,
                "checksums": inputs.checksums(),
                "final_loss": losses.last(),
                "version": env!("CARGO_PKG_VERSION"),
            });
            let file = ModelFile { model: Model::Softmax { model: clf, keywords: index }, metadata };
            emit(&model, file.to_text().as_bytes(), "train-clf", Some(config.seed), json!({"train": config, "losses": losses}), &inputs)
        }

        Command::Classify { model, embeddings, input, phrases, out } => {
            let file = inputs.model(&model)?;
            let table = inputs.embeddings(&embeddings)?;
            check_embeddings(&file, &inputs, &model)?;
            let Model::Softmax { model: clf, keywords } = &file.model else {
                return Err(CliError::Input(format!("{}: not a softmax model", model.display())));
            };
            let data = inputs.conll("data", &input)?;
            let mut list = match &phrases {
                Some(p) => inputs.phrases("phrases", p)?,
                None => predicted_phrases(&data),
            };
            let xs = phrase_matrix(&data, &list, &table, keywords)?;
            for (p, x) in list.iter_mut().zip(&xs) {
                p.category = Some(clf.predict(x)?.0);
            }
            let text = write_phrase_tsv(&data, &list)?;
            emit(&out, text.as_bytes(), "classify", None, Value::Null, &inputs)
        }

        Command::EvalSpans { pred, gold, out, json } => {
            let p = inputs.conll("pred", &pred)?;
            let g = inputs.conll("gold", &gold)?;
            let lengths: HashMap<&str, usize> = g.sentences.iter().map(|s| (s.id.as_str(), s.len())).collect();
            for s in &p.sentences {
                match lengths.get(s.id.as_str()) {
                    None => return Err(CorpusError::UnknownSentence(s.id.clone()).into()),
                    Some(&n) if n != s.len() => return Err(CorpusError::LengthMismatch(s.len(), n).into()),
                    _ => {}
                }
            }
            let r = overlap_scores(&predicted_phrases(&p), &predicted_phrases(&g))?;
            let text = if json { to_json(&r) } else { r.to_tsv() };
            report(out.as_deref(), stdout, &text, "eval-spans", &inputs)
        }

        Command::EvalClasses { pred, gold, out, json } => {
            let p = inputs.phrases("pred", &pred)?;
            let g = inputs.phrases("gold", &gold)?;
            let key = |x: &Phrase| (x.sentence_id.clone(), x.start, x.end);
            let predicted: HashMap<_, Option<Category>> = p.iter().map(|x| (key(x), x.category)).collect();
            if predicted.len() != g.len() {
                return Err(EvalError::LengthMismatch(p.len(), g.len()).into());
            }
            let mut ps = Vec::with_capacity(g.len());
            let mut gs = Vec::with_capacity(g.len());
            for x in &g {
                let missing = || CliError::Input(format!("span {}[{},{}) lacks a category on one side", x.sentence_id, x.start, x.end));
                ps.push(predicted.get(&key(x)).copied().flatten().ok_or_else(missing)?);
                gs.push(x.category.ok_or_else(missing)?);
            }
            let r = multiclass_report(&ps, &gs)?;
            let text = if json { to_json(&r) } else { r.to_tsv() };
            report(out.as_deref(), stdout, &text, "eval-classes", &inputs)
        }

        Command::EvalE2e { pred, gold, out, json } => {
            let p = inputs.phrases("pred", &pred)?;
            let g = inputs.phrases("gold", &gold)?;
            let r = end_to_end(&p, &g)?;
            let text = if json { to_json(&r) } else { r.to_tsv() };
            report(out.as_deref(), stdout, &text, "eval-e2e", &inputs)
        }

        Command::Kappa { a, b, format } => {
            let k = match format {
                KappaFormat::Conll => {
                    let (da, db) = (inputs.conll("a", &a)?, inputs.conll("b", &b)?);
                    if da.sentences.len() != db.sentences.len() {
                        return Err(CorpusError::LengthMismatch(da.sentences.len(), db.sentences.len()).into());
                    }
                    let mut ta = Vec::new();
                    let mut tb = Vec::new();
                    for (sa, sb) in da.sentences.iter().zip(&db.sentences) {
                        if sa.tokens != sb.tokens {
                            return Err(CliError::Input(format!("sentence {} differs between annotations", sa.id)));
                        }
                        ta.extend(sa.tags.iter().flatten().copied());
                        tb.extend(sb.tags.iter().flatten().copied());
                    }
                    cohen_kappa(&ta, &tb)?
                }
                KappaFormat::Labels => {
                    let la = inputs.read("a", &a)?;
                    let lb = inputs.read("b", &b)?;
                    let lines = |t: &str| -> Vec<String> {
                        t.lines().map(str::trim).filter(|l| !l.is_empty()).map(String::from).collect()
                    };
                    cohen_kappa(&lines(&la), &lines(&lb))?
                }
            };
            writeln!(stdout, "kappa\t{k:.6}").map_err(|source| CliError::Write { path: "<stdout>".into(), source })
        }

        Command::Stats { input, phrases, out, json } => {
            let mut data = inputs.conll("data", &input)?;
            if let Some(p) = &phrases {
                data.phrases = inputs.phrases("phrases", p)?;
            }
            let d = label_distribution(&data);
            let text = if json { to_json(&d) } else { d.to_string() };
            report(out.as_deref(), stdout, &text, "stats", &inputs)
        }
    }
}
