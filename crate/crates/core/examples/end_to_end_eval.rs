//! Extraction plus categorization, scored against gold phrases.

use excmine::corpus::{Category, Coarse, Phrase};
use excmine::eval::end_to_end;

fn main() {
    let gold = vec![
        Phrase::new("a", 0, 3, Coarse::Inc).with_category(Category::Price),
        Phrase::new("a", 5, 8, Coarse::Exc).with_category(Category::Handicap),
    ];
    let pred = vec![
        Phrase::new("a", 1, 3, Coarse::Inc).with_category(Category::Price),
        Phrase::new("a", 5, 7, Coarse::Exc).with_category(Category::Crowd),
        Phrase::new("a", 9, 10, Coarse::Exc).with_category(Category::Food),
    ];
    let r = end_to_end(&pred, &gold).unwrap();
    print!("{}", r.to_tsv());
}
