//! Scores and grades a tiny in-memory corpus; mirrors the README example.

use colloc::{count_corpus, default_ce_fis, infer_grade, score_bigrams, Document};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let docs = [Document { id: "sample".into(), text: "kick the bucket".into() }];
    let counts = count_corpus(&docs);
    let fis = default_ce_fis();
    for row in score_bigrams(&counts, None, 1)? {
        let grade = infer_grade(row.mi, row.t, &fis)?;
        println!("{} {}: mi {:.2}, t {:.2}, grade {:.2}", row.w1, row.w2, row.mi, row.t, grade);
    }
    Ok(())
}
