use excmine::corpus::{label_distribution, split_dataset, SplitRatios};
use excmine::synthetic::synthetic_corpus;

fn main() {
    let c = synthetic_corpus(50, 4, 9);
    print!("{}", label_distribution(&c.dataset));
    let ratios = SplitRatios::new(0.6, 0.2, 0.2).unwrap();
    let (train, dev, test) = split_dataset(&c.dataset, ratios, 9).unwrap();
    println!("split: {} / {} / {}", train.sentences.len(), dev.sentences.len(), test.sentences.len());
}
