//! Frobenius statistics: prime samples, test bases, empirical and
//! theoretical Gram matrices, convergence and group identification.

mod basis;
mod gram;
mod identify;
mod report;
mod sample;

pub use basis::{kronecker, KroneckerCharacter, TestBasis, TestFunction};
pub use gram::{
    cross_gram, empirical_gram, error_matrix, error_norms, frob_keys, gram_from_histogram,
    gram_of_class_functions, histogram, joint_gram, key_values, rational_string, round_matrix,
    theoretical_gram, theoretical_gram_with, FrobKey, Histogram, Norms, Rounding,
};
pub use identify::{
    exclude_by_kernel, identify_group, identify_with_sample, Candidate, CandidateSource,
    CandidateStatus, CandidateVerdict, Exclusion, IdentifyReport, IdentifySchedule, Outcome,
    Witness,
};
pub use report::{
    convergence_run, equals_integer_matrix, gram_report, sample_csv, sample_json_lines, BatchNorms,
    GramReport, Verdict, STABLE_THRESHOLD,
};
pub use sample::{
    bad_modulus, frobenius_data, good_primes, irreducibility_evidence, joint_sample, sample_primes,
    sample_primes_with, PrimeSample, SampleEntry,
};
