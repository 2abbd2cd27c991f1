//! Exact polynomial ideal computations over the rationals and prime fields, and a
//! verification harness for the structure of the first Mayr-Meyer ideal `J(1,d)`.

pub mod certificate;
pub mod error;
pub mod field;
pub mod groebner;
pub mod ideal;
pub mod linalg;
pub mod mayr_meyer;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod report;
pub mod ring;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Coeff, FieldSpec};
pub use groebner::{buchberger, divide, normal_form, reduce_basis, s_polynomial, DivisionResult, GroebnerBasis};
pub use certificate::{min_certificate_degree, monomial_basis, Certificate, CertificateQuery, Restriction, SearchOutcome};
pub use ideal::Ideal;
pub use linalg::{LinearSystem, Solution, Solver};
pub use mayr_meyer::{char_split, MayrMeyer, Mode, Profile};
pub use report::{ClaimReport, Report, Witness};
pub use verify::{verify, Claim, VerifyOptions};
pub use monomial::{BaseOrder, Monomial, MonomialOrder, VarSet};
pub use parse::{parse_polynomial, parse_session, SessionFile};
pub use poly::{Bidegree, Multidegree, Polynomial};
pub use ring::{extend_ring, Embedding, Position, Ring, RingSpec};
