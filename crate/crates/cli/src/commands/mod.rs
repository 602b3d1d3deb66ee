pub mod extremal;
pub mod sharpness;
pub mod table;
pub mod verify;
