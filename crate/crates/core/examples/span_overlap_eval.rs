//! Binary vs proportional overlap on a few spans.

use excmine::corpus::{Coarse, Phrase};
use excmine::eval::overlap_scores;

fn main() {
    let gold = [
        Phrase::new("s1", 2, 6, Coarse::Exc),
        Phrase::new("s2", 0, 3, Coarse::Inc),
    ];
    let pred = [
        Phrase::new("s1", 4, 8, Coarse::Exc), // half of the gold span
        Phrase::new("s2", 5, 7, Coarse::Inc), // misses
    ];
    let r = overlap_scores(&pred, &gold).unwrap();
    print!("{}", r.to_tsv());
    println!("mean binary F1: {:.3}", r.mean_binary_f1());
}
