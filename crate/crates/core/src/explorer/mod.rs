//! Survey of two-qubit states in the (purity, discord) plane and the upper
//! boundary of the admissible region.

mod boundary;
mod climb;
mod record;
mod scan;

pub use boundary::{
    boundary_candidates, classify_region, composite_boundary, composite_boundary_piece, crossovers, exceeds_boundary,
    region_c_approx, BoundaryPiece, Crossover, Region, RegionLabel,
};
pub use climb::{hill_climb, hill_climb_with, project_to_purity, HillClimbOptions};
pub use record::{parse_records_csv, write_records_csv, BoundaryRecord, Provenance, CSV_HEADER};
pub use scan::{sample_state, scan, scan_with, scan_with_threads};
