//! Cameron-Liebler line classes of `PG(3,q)` as tight sets of the Klein
//! quadric `Q+(5,q)`.
//!
//! The quadric is modelled on `E^2`, `E = GF(q^3)`, with form `T(xy)`. Line
//! classes of parameter `(q^2-1)/2` are searched as unions of orbits of the
//! cyclic group `C = <g>` (or `G = C<sigma><theta>`) by solving the
//! tight-set condition on the quotient matrix of the collinearity graph,
//! then certified by full scans and spread intersections.

pub mod certificate;
pub mod certify;
pub mod collineation;
pub mod decomposition;
pub mod error;
pub mod field;
pub mod linalg;
pub mod pg;
pub mod quadric;
pub mod quotient;

pub use collineation::{GroupLabel, OrbitPartition};
pub use error::{Error, Result};
pub use field::{Elem, FieldTable};
pub use quadric::{Quadric, QuadricPoint};
pub use quotient::{QuotientMatrix, Selection};

/// Exact rationals used by the search and spectrum checks.
pub type Rational = num_rational::BigRational;
pub type RationalMatrix = linalg::Matrix<Rational>;
pub type IntMatrix = linalg::Matrix<num_bigint::BigInt>;
/// Small-integer matrices such as the dense collinearity matrix.
pub type SmallIntMatrix = linalg::Matrix<i64>;
/// Residues modulo the Mersenne prime `2^31 - 1`.
pub type ModMatrix = linalg::Matrix<linalg::ModP<2_147_483_647>>;
pub type FloatMatrix = linalg::Matrix<f64>;

/// Field tables and the quadric for one `q`.
pub struct Space {
    pub field: FieldTable,
    pub quadric: Quadric,
}

impl Space {
    pub fn new(q: u64) -> Result<Self> {
        let field = FieldTable::new(q)?;
        let quadric = Quadric::new(&field);
        Ok(Space { field, quadric })
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    /// `C`-orbits (semiregularity enforced when `strict`).
    pub fn c_partition(&self, strict: bool) -> Result<OrbitPartition> {
        let g = collineation::make_g(&self.field, &self.quadric);
        collineation::c_orbits(&g, &self.quadric, strict)
    }

    pub fn g_partition(&self) -> Result<OrbitPartition> {
        let grp = collineation::GroupG::new(&self.field, &self.quadric)?;
        Ok(grp.orbits(self.quadric.len()))
    }

    /// Classes holding `pi_1` and `pi_2`.
    pub fn plane_classes(&self, part: &OrbitPartition) -> [usize; 2] {
        [
            part.class_of(0),
            part.class_of(self.quadric.pi2_start()),
        ]
    }
}
