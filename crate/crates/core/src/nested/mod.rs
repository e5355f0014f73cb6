//! Nested minimum cuts, disjoint path systems and the top-level driver.
//!
//! Cuts are indexed from 0; gap `j` lies between cut `j` and cut `j + 1`.

pub mod cuts;
pub mod driver;
pub mod extract;
pub mod gap;
pub mod paths;

pub use cuts::{find_2nested, is_st_cut, layer_cuts, lemma_threshold, min_vertex_cut, source_side, CutSequence};
pub use driver::{check_hypotheses, diametral_pair, driver_d, theorem_driver, DriverConfig};
pub use extract::{extract_from_nested, reroute_to_fixpoint, Report, Witness};
pub use gap::{classify_gap, connector, measure, reroute, Case, GapCase};
pub use paths::{disjoint_path_system, gap_sets, PathSystem};
