pub mod classify;
pub mod cli;
pub mod corpus;
pub mod exactreal;
pub mod families;
pub mod groups;
pub mod ring;
pub mod structure;
pub mod verify;
