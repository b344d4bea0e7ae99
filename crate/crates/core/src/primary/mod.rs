//! Primary Puiseux monoids: generated by rationals `a/p` with `p` prime and
//! at most one generator per prime, described by finitely many families.

mod descriptor;
mod molecule;
mod spec;

pub use descriptor::PrimeSetDescriptor;
pub use molecule::{
    elementary_factorizations, molecule_elementary, Classification, ElementaryConditions,
    ElementaryReport, GeneralVerdict, Verdict, MAX_CANDIDATES,
};
pub use spec::{AtomFamily, Certificate, PrimaryAtom, PrimaryMonoidSpec, ResidueSplit, Truncation};
