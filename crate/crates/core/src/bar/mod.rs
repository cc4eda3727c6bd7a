//! Set-valued and simplicial diagrams, comma categories and two-sided bar constructions.

pub mod comma;
pub mod construct;
pub mod diagram;

pub use comma::{comma_category, comma_category_labeled, CommaCategory};
pub use construct::{
    bar, bar_comparison, bar_ex, bar_level, dugger_q, dugger_q_ex, hocolim, hocolim_projection, hocolim_restriction,
    Bar, BarCell, BarEx, BarExModel, BarKey, BarModel, DuggerQ, DuggerQEx,
};
pub use diagram::{Diagram, SetFunctor, Variance, Weight};
