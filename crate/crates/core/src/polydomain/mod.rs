//! Eigenstructure of □ on (0,q)-forms of a product of planar domains.
//!
//! On `Ω = Ω_1 × … × Ω_n` each factor contributes, for a subset `J` of size
//! `q`, a Dirichlet eigenvalue `μ` on every `j ∈ J` and, off `J`, either a
//! Bergman function (eigenvalue 0, infinite multiplicity) or a positive
//! eigenvalue `λ` of □₀. The eigenvalue of the product is the sum.

mod enumerate;
mod sample;

pub use enumerate::{
    compactness_verdict, counting_function, enumerate_box_q, label_stream, CompactnessVerdict,
    EigenEntry, EigenLabel, Enumeration, LabelKind, Term, LABEL_CAP, NOTE_CUSTOM_COMPLETE,
};
pub use sample::{eigenform_sample, FactorSample, Family, FormSample, SampleGrid, MAX_GRID_POINTS};
