//! Exact computations with modules over finite-dimensional Leibniz algebras:
//! Lie quotients, symmetric and antisymmetric lifts, derived complexes,
//! hyper-Ext and hyper-Tor, and checks of their splitting theorems.

pub mod algebras;
pub mod commands;
pub mod complexes;
pub mod derived;
pub mod exactla;
pub mod gmodules;
pub mod lpcomplexes;
pub mod session;
