mod common;

use common::separable::{clf_run, crf_run, non_increasing};

#[test]
fn crf_fits_separable_corpus() {
    let r = crf_run(21);
    eprintln!("crf accuracy {} losses {:?}", r.held_out_accuracy, r.full_batch_losses);
    assert!(r.held_out_accuracy >= 0.99, "accuracy {}", r.held_out_accuracy);
    assert!(non_increasing(&r.full_batch_losses), "{:?}", r.full_batch_losses);
    assert!(r.full_batch_losses.last() < r.full_batch_losses.first());
}

#[test]
fn classifier_fits_separable_corpus() {
    let r = clf_run(21);
    eprintln!("clf held-out {} n={} final loss {:?}", r.held_out_accuracy, r.held_out, r.full_batch_losses.last());
    assert_eq!(r.train_accuracy, 1.0);
    assert_eq!(r.held_out_accuracy, 1.0);
    assert!(non_increasing(&r.full_batch_losses), "{:?}", &r.full_batch_losses[..5]);
}
