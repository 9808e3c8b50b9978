//! File formats: binary PGM in, CSV reports out.

mod csv;
mod pgm;

pub use csv::{complexity_csv, format_number, performance_csv, sweep_csv, CsvReport};
pub use pgm::{decode_pgm, encode_pgm, read_pgm, write_pgm};
