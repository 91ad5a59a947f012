pub mod acceptance;
pub mod arith;
pub mod block;
pub mod characters;
pub mod ellreg;
pub mod fe;
pub mod field;
pub mod gauss;
pub mod gl2;
mod fp;
pub mod instance;
pub mod linalg;
pub mod output;
pub mod ring;
pub mod search;
pub mod tower;
