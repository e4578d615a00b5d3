// SPDX-License-Identifier: MIT OR Apache-2.0

//! Reference segmentation algorithms: greedy merge, greedy split, sliding
//! window and the exact dynamic program.

mod binseg;
mod botup;
mod sn;
mod window;

pub use binseg::binseg;
pub use botup::{botup, lm_botup, lm_botup_cells, merge_down, BotUpConfig};
pub use sn::{segment_neighborhood, segment_neighborhood_cost};
pub use window::{window_scores, window_sliding, WindowConfig};
