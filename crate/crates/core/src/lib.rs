pub mod alpha2;
pub mod bitset;
pub mod bounds;
pub mod clique;
pub mod connectivity;
pub mod error;
pub mod exec;
pub mod format;
pub mod generators;
pub mod graph;
pub mod matching;
pub mod montecarlo;
pub mod pipeline;
pub mod rng;
pub mod sampler;
pub mod seagull;
