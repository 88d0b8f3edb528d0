//! Chocolate bars cut along grooves, with shapes given by monotone staircase
//! functions, and the NS-property that makes their SG value a plain XOR.

mod bars;
mod lemmas;
mod ns;
mod shape;
mod table;

pub use bars::{choco2_sg, choco3_sg, move_f, Choco2, Choco2Position, Choco3, Choco3Position};
pub use lemmas::{h_bound, lemma16_check, small_sg_classify};
pub use ns::{ns_check_f, ns_check_h, NsFReport, NsFVerdict, NsVerdict, NsViolation, Slice, SliceViolation};
pub use shape::{FFunction, HFunction};
pub use table::{cb2_table, Cb2Table};
