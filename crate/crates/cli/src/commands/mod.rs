pub mod recon;
pub mod selftest;
pub mod tables;
