//! Closed-form expressions for prepotentials, Yukawa couplings, Picard-Fuchs
//! operators and genus-one potentials, and the checks comparing them with
//! the pipeline.

pub mod check;
pub mod genus0;
pub mod genus1;
pub mod prepotential;
pub mod verify;

pub use check::{compare_log_series, compare_series, SeriesCheck, Status, Verdict};
pub use genus0::{
    amodel_coefficient, amodel_prepotential, conj1, ftt_identity_check, periods, pf_check, pf_operator, triple_intersection, yukawa_check, ClosedGenus0,
    PfOperator, Prepotential,
};
pub use genus1::{
    a2_discriminant, a2_genus1_check, a2_genus1_check_with, a2_genus1_fit, a2_genus1_target, a2_mirror, genus1_ansatz_fit, genus1_bmodel, AnsatzFit,
    ClosedGenus1, Genus1Target, MirrorCoordinates,
};
pub use prepotential::{an_invariants, an_prepotential, t_derivative, trivalent_invariants, trivalent_prepotential};
pub use verify::{
    coefficient_series, compare_tables, f_series, run_with, verify_a2, verify_conj1_mirror, verify_conj3, verify_easyj, verify_operators, verify_prop1,
    verify_trivalent, WindowOverride,
};
