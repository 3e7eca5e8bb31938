pub mod corpus;
pub mod curve;
pub mod germ;
pub mod localring;
pub mod milnorsig;
pub mod mpoly;
