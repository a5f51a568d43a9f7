//! Cohen's kappa between two annotators' token tags.

use excmine::corpus::{cohen_kappa, BioTag::*};

fn main() {
    let a = [O, BExc, Exc, Exc, O, BInc, Inc, O];
    let b = [O, BExc, Exc, O, O, BInc, Inc, Inc];
    println!("token kappa {:.3}", cohen_kappa(&a, &b).unwrap());
    let cats_a = ["Price", "Food", "Food", "Crowd"];
    let cats_b = ["Price", "Food", "Crowd", "Crowd"];
    println!("category kappa {:.3}", cohen_kappa(&cats_a, &cats_b).unwrap());
}
