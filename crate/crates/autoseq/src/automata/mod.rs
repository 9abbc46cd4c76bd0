//! DFAOs over digit alphabets, λ-kernel machinery, closure constructions and
//! the pumping-lemma witness procedure.
//!
//! All automata read base-λ digits least significant first. Well-formedness
//! includes *zero-stability*: `output(δ(s, 0)) = output(s)` on every reachable
//! state, so padding high-order zero digits never changes the computed value.

mod dfao;
mod kernel;
mod minimize;
mod ops;
mod pump;

pub use dfao::{AutomataError, Dfao, DfaoState};
pub use kernel::{kernel_closure, kernel_dfao_certified, KernelError, KernelOptions, KernelTable};
pub use minimize::minimize;
pub use ops::{
    base_power, base_power_down, base_power_up, map_values, product, product_with,
    remove_p_powers, restrict_progression, BasePowerDirection,
};
pub use pump::{pump_witness, PumpWitness};
