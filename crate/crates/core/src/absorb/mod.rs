//! Absorbers: switchers, local absorbers, templates, absorber assembly and
//! exhaustive absorption checks.

mod alias_bank;
mod general;
mod switcher;
mod template;
mod toy;
mod verify;

pub use alias_bank::{absorb_via_alias_bank, exact_alias_map, AliasBankInput};
pub use general::{assemble_general_absorber, DeskScale, GeneralAbsorber};
pub use switcher::{build_local_absorber, build_switcher, verify_switcher, LocalAbsorber, Switcher, SwitcherVerdict};
pub use template::{build_template, verify_template, Template, TemplateMode, TemplateVerdict};
pub use toy::toy_triangle_absorber;
pub use verify::{host_digest, verify_absorber, AbsorberCertificate, AbsorberVerdict, SubsetWitness, DEFAULT_SUBSET_LIMIT};
