//! Attractor searches over `D_k` and the statistics built on them.

mod atable;
mod fit;
mod phenomena;
mod record;
mod search;

pub use atable::{a_table, ATablePoint};
pub use fit::{fit_exponential, fit_exponential_xy, model, ExpFit};
pub use phenomena::{
    admissible_range, detect_phenomena, is_covariance_exception, is_scaling_pair, phenomena_census, sweep,
    AttractorKey, PhenomenaCensus, PhenomenaReport,
};
pub use record::{
    is_admissible, read_registry, step_numerator, write_registry, AttractorRecord, RegistryLine,
};
pub use search::{check_denominator, deep_verify, search_denominator, DenominatorReport, SearchState};
