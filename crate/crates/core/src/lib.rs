pub mod cli;
pub mod constructions;
pub mod freewords;
pub mod homology;
pub mod oracle;
pub mod presentations;
pub mod quotients;
pub mod smallcancel;
pub mod uce;
