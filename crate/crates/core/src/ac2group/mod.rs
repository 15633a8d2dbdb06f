//! Finite AC-categories presented by tables: special AC-2-groups built from
//! cubical 3-cocycles, exhaustive axiom checks, AC-functors and natural
//! transformations, skeletalization and the equivalence test on triples.

mod axioms;
mod functor;
mod groupoid;
mod instance;
mod report;
mod skeleton;

pub use axioms::{verify_ac_axioms, verify_derived_coherence};
pub use functor::{coboundary_functor, verify_ac_functor, verify_ac_nat_trans, ACFunctor, ACFunctorFile, ACNatTrans};
pub use groupoid::{Annotation, GroupoidFile, GroupoidSpec, Morphism, MonoidalGroupoid, UnitAutomorphism};
pub use instance::{build_special, build_special_from_table, inflate, special_groupoid, special_morphism, ACInstance, ACInstanceFile};
pub use report::{first_violation, CheckResult, Report};
pub use skeleton::{
    classify, equivalent, identify_group, skeletalize, Choices, ClassifyingTriple, Equivalence, EquivalenceClass, TripleFile,
};
