pub mod abelian;
pub mod catalog;
pub mod classify;
pub mod cli;
pub mod cosets;
pub mod fpcore;
pub mod geometry;
pub mod schreier;
pub mod verify;
