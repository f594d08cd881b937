pub mod cli;
pub mod cluster;
pub mod constant;
pub mod dilog;
pub mod dynkin;
pub mod error;
pub mod report;
pub mod semifield;
pub mod tropical;
pub mod wedge;
