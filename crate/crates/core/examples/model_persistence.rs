//! Save a trained tagger in the text model format and reload it.

use excmine::cli::{load_model, save_model, Model, ModelFile};
use excmine::crf::{tag, train_crf, TrainConfig};
use excmine::features::TemplateBuilder;
use excmine::synthetic::synthetic_corpus;

fn main() {
    let c = synthetic_corpus(100, 4, 3);
    let sents = &c.dataset.sentences;
    let tpl = TemplateBuilder::new(4).observe_all(sents).build();
    let cfg = TrainConfig { learning_rate: 0.05, epochs: 3, ..Default::default() };
    let (model, _) = train_crf(&cfg, sents, sents, tpl, &c.embeddings).unwrap();

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tagger.excm");
    let file = ModelFile { model: Model::Crf(model), metadata: serde_json::json!({ "seed": cfg.seed }) };
    save_model(&file, &path).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    for line in text.lines().take(2) {
        println!("{line}");
    }

    let Model::Crf(back) = load_model(&path).unwrap().model else { unreachable!() };
    let Model::Crf(orig) = &file.model else { unreachable!() };
    let same = tag(orig, &c.embeddings, sents).unwrap() == tag(&back, &c.embeddings, sents).unwrap();
    println!("{} bytes, predictions identical after reload: {same}", text.len());
}
