use serde::{Deserialize, Serialize};

use super::{CorpusError, Sentence, Token};

/// One downloaded review, as found in the JSON Lines input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Review {
    pub spot_id: String,
    pub review_id: String,
    pub text: String,
}

fn is_punct(c: char) -> bool {
    !c.is_alphanumeric() && !c.is_whitespace()
}

/// Whitespace split, then every leading and trailing punctuation character
/// becomes its own token. Inner punctuation (`wouldn't`, `3.5`) is kept.
pub fn tokenize(text: &str) -> Vec<Token> {
    let mut out = Vec::new();
    for chunk in text.split_whitespace() {
        let chars: Vec<char> = chunk.chars().collect();
        let lead = chars.iter().take_while(|c| is_punct(**c)).count();
        if lead == chars.len() {
            out.extend(chars.iter().filter_map(|c| Token::new(c.to_string())));
            continue;
        }
        let trail = chars.iter().rev().take_while(|c| is_punct(**c)).count();
        out.extend(chars[..lead].iter().filter_map(|c| Token::new(c.to_string())));
        out.extend(Token::new(chars[lead..chars.len() - trail].iter().collect::<String>()));
        out.extend(chars[chars.len() - trail..].iter().filter_map(|c| Token::new(c.to_string())));
    }
    out
}

fn is_terminator(t: &Token) -> bool {
    matches!(t.text(), "." | "!" | "?")
}

/// Splits a token stream after each maximal run of `.`/`!`/`?` tokens.
pub fn split_sentences(tokens: Vec<Token>) -> Vec<Vec<Token>> {
    let mut out = Vec::new();
    let mut cur: Vec<Token> = Vec::new();
    for tok in tokens {
        if !is_terminator(&tok) && cur.last().is_some_and(is_terminator) {
            out.push(std::mem::take(&mut cur));
        }
        cur.push(tok);
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

/// Untagged sentences of a review, with ids `<review_id>:<sentence_index>`.
pub fn sentences_from_review(review: &Review) -> Vec<Sentence> {
    split_sentences(tokenize(&review.text))
        .into_iter()
        .enumerate()
        .map(|(i, tokens)| Sentence {
            id: format!("{}:{}", review.review_id, i),
            spot_id: Some(review.spot_id.clone()),
            tokens,
            tags: None,
        })
        .collect()
}

pub fn parse_reviews_jsonl(text: &str) -> Result<Vec<Review>, CorpusError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str::<Review>(l).map_err(|e| CorpusError::Json {
                line: i + 1,
                reason: e.to_string(),
            })
        })
        .collect()
}
