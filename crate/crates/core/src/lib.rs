//! Exact structure theory for split regular Hom-Lie superalgebras over ℚ:
//! root spaces relative to a maximal abelian graded subalgebra, connections
//! of roots, the induced ideal decomposition, and simplicity certification
//! checked against a brute-force ideal oracle.

pub mod catalog;
pub mod cli;
pub mod connect;
pub mod decomp;
pub mod document;
pub mod error;
pub mod exactlin;
pub mod homsuper;
pub mod oracle;
pub mod rootspace;
