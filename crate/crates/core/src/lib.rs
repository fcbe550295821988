pub mod coeffring;
pub mod geometry;
pub mod hashtag;
pub mod hlvkernel;
pub mod macdonald;
pub mod partitions;
pub mod plethysm;
pub mod symfunc;
pub mod verify;
