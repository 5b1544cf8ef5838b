//! Integral homology of normalized chains, induced maps, and connectivity
//! reports for tower stages.

mod chain;
mod connectivity;
mod matrix;
mod snf;

pub use chain::{
    chain_complex, chain_map, homology, homology_all, induced_homology_map, ChainComplex,
    HomologyBasis, HomologyGroup, HomologyMap, HOMOLOGY_CSV_HEADER,
};
pub use connectivity::{
    components, connectivity_report, connectivity_report_for_map, pi0_map, ConnectivityReport,
    CAVEAT_FLAG_UNUSED, CAVEAT_H1, CAVEAT_HOMOTOPY, CAVEAT_SIMPLY_CONNECTED,
};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SmithForm};
