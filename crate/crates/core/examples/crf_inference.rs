//! Forward-backward and constrained Viterbi on a hand-built lattice.

use excmine::corpus::BioTag;
use excmine::crf::Lattice;

fn main() {
    // O, B_INC, INC, B_EXC, EXC
    let emissions = vec![
        [0.0, 0.2, 3.0, 0.1, 0.0], // INC is favoured but illegal at position 0
        [0.5, 0.0, 1.0, 0.0, 0.2],
        [1.0, 0.0, 0.3, 0.0, 0.0],
    ];
    let lattice = Lattice::new(emissions, [[0.0; 5]; 5], [0.0; 5]);

    let (path, score) = lattice.viterbi();
    println!("best path {path:?} score {score:.3}");
    let m = lattice.marginals();
    println!("log Z = {:.4}", m.log_z);
    for (t, row) in m.nodes.iter().enumerate() {
        let cells: Vec<String> = BioTag::ALL.iter().map(|y| format!("{y}={:.3}", row[y.index()])).collect();
        println!("t={t} {}", cells.join(" "));
    }
}
