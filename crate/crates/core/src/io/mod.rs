//! Readers and writers: the native text format, legacy VTK, and TikZ.

mod native;
mod tikz;
mod vtk;

pub use native::{read_native, read_native_str, write_native, write_native_string};
pub use tikz::{write_tikz, TikzMode};
pub use vtk::write_vtk;
