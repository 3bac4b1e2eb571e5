pub mod azumaya;
pub mod bmcli;
pub mod calibrate;
pub mod eisenstein;
pub mod exactlin;
pub mod groupcohom;
pub mod lines27;
