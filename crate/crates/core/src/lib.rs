pub mod boxes;
pub mod classifier;
pub mod expr;
pub mod hessian;
pub mod interval;
pub mod rootfind;

pub use boxes::IntervalBox;
pub use classifier::{
    build_probe_boxes, classify_all, classify_candidate, Classification,
    ClassificationEvidence, ClassifyError, ProbeConfig, Verdict,
};
pub use expr::{build_gradient_system, differentiate, Expression, GradientSystem, ParseError};
pub use hessian::{hessian_verdict, BaselineVerdict, EigenSigns, HessianReport, TwoDimDetail};
pub use interval::{Interval, IntervalError};
pub use rootfind::{
    separation_distances, solve_stationary, Candidate, CandidateStatus, Completeness, SolveConfig,
    SolveOutcome,
};
