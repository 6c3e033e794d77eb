pub mod adjoint;
pub mod conemap;
pub mod correspond;
pub mod error;
pub mod lorentz;
pub mod qmat;
pub mod simcli;
