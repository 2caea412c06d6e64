//! Built-in coalgebra and bialgebra instances.

mod coalgebras;
mod monoid;
mod omp;
mod poly;
mod qsym;
mod sym;

pub use coalgebras::{
    build_divided_power_coalgebra, build_matrix_coalgebra, build_pointed_coalgebra,
};
pub use monoid::{
    build_group_algebra, build_monoid_bialgebra, build_monoid_dual, MonoidTable,
};
pub use omp::build_set_word_bialgebra;
pub use poly::{build_laurent_point, build_poly_point, build_poly_primitive};
pub use qsym::{build_nsym, build_qsym};
pub use sym::build_sym;
