//! Small groups used throughout the examples and tests.

use alloc::vec;
use alloc::vec::Vec;

use super::{Perm, PermGroup};

const INF: u32 = 7;

fn mobius(f: impl Fn(u32) -> u32) -> Perm {
    (0..8).map(f).collect()
}

fn inv7(x: u32) -> u32 {
    (1..7).find(|&y| x * y % 7 == 1).unwrap()
}

/// `PSL(2,7)` on the projective line `{0, …, 6, ∞}` (∞ is point 7), generated
/// by `x ↦ x+1`, `x ↦ 2x` and `x ↦ −1/x`.
pub fn psl27() -> PermGroup {
    PermGroup::new(8, psl27_gens()).unwrap()
}

pub fn psl27_gens() -> Vec<Perm> {
    let t = mobius(|x| if x == INF { INF } else { (x + 1) % 7 });
    let d = mobius(|x| if x == INF { INF } else { 2 * x % 7 });
    let w = mobius(|x| match x {
        INF => 0,
        0 => INF,
        _ => (7 - inv7(x)) % 7,
    });
    vec![t, d, w]
}

/// The Borel subgroup `{x ↦ ax + b : a ∈ ⟨2⟩}` of order 21, on `F_7`.
pub fn borel21() -> PermGroup {
    let t: Perm = (0..7).map(|x| (x + 1) % 7).collect();
    let d: Perm = (0..7).map(|x| 2 * x % 7).collect();
    PermGroup::new(7, vec![t, d]).unwrap()
}

pub fn cyclic(n: usize) -> PermGroup {
    let c: Perm = (0..n as u32).map(|x| (x + 1) % n as u32).collect();
    PermGroup::new(n, vec![c]).unwrap()
}

pub fn symmetric(n: usize) -> PermGroup {
    let c: Perm = (0..n as u32).map(|x| (x + 1) % n as u32).collect();
    let mut t: Perm = (0..n as u32).collect();
    t.swap(0, 1);
    PermGroup::new(n, vec![c, t]).unwrap()
}

pub fn alternating4() -> PermGroup {
    PermGroup::new(4, vec![vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).unwrap()
}
