//! Computations with rational double points over prime fields: polynomial
//! arithmetic, local standard bases, jacobian and bracket ideals, and the
//! descent criteria evaluated on a catalog of normal forms.

pub mod catalog;
pub mod criteria;
pub mod error;
pub mod field;
pub mod gbasis;
pub mod ideals;
pub mod monomial;
pub mod par;
pub mod parser;
pub mod poly;

pub use catalog::{Catalog, Dynkin, SingularityRecord};
pub use criteria::{CriterionId, CriterionReport, Outcome, Status, Verdict};
pub use error::{Error, Result};
pub use field::{FpElem, PrimeChar};
pub use gbasis::{complete_basis, complete_basis_with, EngineConfig, Length, StandardBasis};
pub use ideals::{HypersurfaceGerm, IdealPresentation};
pub use monomial::{Monomial, MonomialOrder, MAX_VARS};
pub use par::Exec;
pub use parser::{parse_poly, parse_poly_list, ParseError};
pub use poly::{Polynomial, Ring, Term};
