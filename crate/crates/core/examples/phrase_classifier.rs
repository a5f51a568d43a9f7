//! Categorize gold phrases with the softmax classifier.

use excmine::corpus::Category;
use excmine::eval::multiclass_report;
use excmine::features::phrase_features;
use excmine::phrase_clf::{train_softmax, ClfConfig};
use excmine::synthetic::synthetic_corpus;

fn main() {
    let c = synthetic_corpus(300, 8, 7);
    let rows: Vec<(Vec<f64>, Category)> = c
        .dataset
        .phrases
        .iter()
        .map(|p| {
            let s = c.dataset.sentence(&p.sentence_id).unwrap();
            (phrase_features(&c.embeddings, &c.keywords, s, p.start, p.end).unwrap(), p.category.unwrap())
        })
        .collect();
    let (train, test) = rows.split_at(rows.len() * 4 / 5);
    let (xs, ys): (Vec<_>, Vec<_>) = train.iter().cloned().unzip();

    let (model, losses) = train_softmax(&ClfConfig { learning_rate: 0.5, ..Default::default() }, &xs, &ys).unwrap();
    println!("loss {:.4} -> {:.4}", losses[0], losses[losses.len() - 1]);

    let pred: Vec<Category> = test.iter().map(|(x, _)| model.predict(x).unwrap().0).collect();
    let gold: Vec<Category> = test.iter().map(|(_, y)| *y).collect();
    print!("{}", multiclass_report(&pred, &gold).unwrap().to_tsv());
}
