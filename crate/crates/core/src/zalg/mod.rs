mod algebra;
mod element;
mod limit;
mod relations;
mod vars;
mod verify;

pub use algebra::{Algebra, Backend};
pub use element::{Monomial, ZElement};
pub use limit::{denominator_violations, has_admissible_denominator, homogeneous_limit_check, ray_images, LimitReport, LimitTerm};
pub use relations::{enumerate, relation_family, Family, RelTerm, RelationInstance};
pub use vars::*;
pub use verify::{check_instance, verify_relations, RelationReport};
