//! Parse a small CoNLL file, repair a malformed tag sequence and write it back.

use excmine::corpus::{extract_phrases, parse_conll, repair_bio, validate_bio, write_conll};

const TEXT: &str = "\
# id = r1:0
# spot_id = louvre
No\tB_EXC
wheelchair\tEXC
access\tEXC
.\tO

# id = r1:1
great\tINC
for\tINC
kids\tINC
";

fn main() {
    let mut data = parse_conll(TEXT).expect("valid CoNLL");
    for s in &mut data.sentences {
        let tags = s.tags.take().unwrap();
        for v in validate_bio(&tags) {
            println!("{}: position {} has {} after {:?}", s.id, v.index, v.found, v.previous);
        }
        let fixed = repair_bio(&tags);
        for p in extract_phrases(&s.id, &fixed).unwrap() {
            println!("{} [{}, {}) {}: {}", s.id, p.start, p.end, p.coarse, s.span_text(p.start, p.end));
        }
        s.tags = Some(fixed);
    }
    print!("{}", write_conll(&data).unwrap());
}
