//! Train the tagger on a generated corpus and score held-out spans.

use excmine::corpus::{extract_phrases, split_dataset, SplitRatios};
use excmine::crf::{tag, train_crf, TrainConfig};
use excmine::eval::overlap_scores;
use excmine::features::TemplateBuilder;
use excmine::synthetic::synthetic_corpus;

fn main() {
    let corpus = synthetic_corpus(400, 8, 42);
    let (train, dev, test) = split_dataset(&corpus.dataset, SplitRatios::default(), 42).unwrap();

    let template = TemplateBuilder::new(corpus.embeddings.dim()).observe_all(&train.sentences).build();
    println!("{} sparse features, dense width {}", template.sparse_len(), template.dense_width());

    // The default learning rate is tuned for much larger corpora.
    let config = TrainConfig { learning_rate: 0.05, epochs: 8, ..Default::default() };
    let (model, history) = train_crf(&config, &train.sentences, &dev.sentences, template, &corpus.embeddings).unwrap();
    for e in &history.epochs {
        println!("epoch {:>2}  loss {:>9.3}  dev F1 {:.3}", e.epoch, e.train_loss, e.dev_f1);
    }

    let tags = tag(&model, &corpus.embeddings, &test.sentences).unwrap();
    let pred: Vec<_> = test
        .sentences
        .iter()
        .zip(&tags)
        .flat_map(|(s, t)| extract_phrases(&s.id, t).unwrap())
        .collect();
    print!("{}", overlap_scores(&pred, &test.phrases_from_tags()).unwrap().to_tsv());
}
