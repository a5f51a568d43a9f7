//! Turn raw reviews into candidate sentences that mention a factor keyword.

use excmine::corpus::{filter_candidate_sentences, parse_reviews_jsonl, sentences_from_review, KeywordIndex};

fn main() {
    let keywords = KeywordIndex::from_json(r#"{"Handicap": ["wheelchair", "ramp"], "Price": ["expensive"], "Queues": ["queue", "wait"]}"#)
        .expect("keyword list");
    let reviews = parse_reviews_jsonl(concat!(
        r#"{"spot_id": "tower", "review_id": "r1", "text": "Stunning views! Sadly no ramp for wheelchair users. Went at dusk."}"#,
        "\n",
        r#"{"spot_id": "tower", "review_id": "r2", "text": "Expensive, and the queue took two hours!!"}"#,
        "\n",
    ))
    .unwrap();

    let sentences: Vec<_> = reviews.iter().flat_map(sentences_from_review).collect();
    println!("{} sentences, candidates:", sentences.len());
    for (s, cats) in filter_candidate_sentences(&sentences, &keywords) {
        let words: Vec<&str> = s.tokens.iter().map(|t| t.text()).collect();
        println!("  {} {:?}: {}", s.id, cats.iter().map(|c| c.as_str()).collect::<Vec<_>>(), words.join(" "));
    }
}
