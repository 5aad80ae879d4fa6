pub mod cli;
pub mod corpus;
pub mod encoding;
pub mod families;
pub mod graph;
pub mod oracle;
pub mod sim;
pub mod views;
