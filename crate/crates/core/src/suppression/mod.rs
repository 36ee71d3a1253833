//! Suppression laws: closed-form families on the beamsplitter and the
//! tritters, numeric zero scans, and zero counting on the beamsplitter.

mod beamsplitter;
mod law;
mod roots;
mod scan;
mod table1;
mod tritter;
mod zeros;

pub use beamsplitter::{bs_law_double, bs_law_single, bs_suppression_poly, BsPolynomial, OutputOrder};
pub use law::{classify_law, Device, LawRoot, Provenance, SuppressionLaw};
pub use roots::{bisect, golden_section_min};
pub use scan::{scan_theta_slice, scan_zero_curves, ScanGrid, ScanTarget, SliceRoot, SliceRoots, ZeroCurve, ZeroPoint};
pub use table1::{
    footnote_check, resolve_section_conflict, resolve_sqrt_grouping, table1_report, table1_roots, AngleRoots,
    FootnoteCheck, Reading, RootSource, SectionConflict, SqrtGroupingResolution, Table1Entry, Table1Report,
    Table1Roots, Table1Row, ThetaCase,
};
pub use tritter::{
    entry_suppression_function, factored_n20_at_theta_zero, tritter_suppression_value, InputFamily, OutputFamily,
};
pub use zeros::{
    bs_zero_report, check_interlacing, check_interlacing_with_steps, interlaced, Interlacing, InterlacingWitness,
    ZeroReport,
};
