pub mod cli;
pub mod corpus;
pub mod crf;
pub mod eval;
pub mod features;
pub mod phrase_clf;
pub mod synthetic;
