use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::{CoverError, MonodromyRep};
use crate::perm::{is_primitive, PermGroup, Permutation};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GaloisClass {
    FullSymmetric,
    Alternating,
    /// The transitive copy of `S₅ ≅ PGL(2, F₅)` inside `S₆`.
    ExceptionalPGL2F5,
    Cyclic(u64),
    Other(String),
}

impl std::fmt::Display for GaloisClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GaloisClass::FullSymmetric => write!(f, "FullSymmetric"),
            GaloisClass::Alternating => write!(f, "Alternating"),
            GaloisClass::ExceptionalPGL2F5 => write!(f, "ExceptionalPGL2F5"),
            GaloisClass::Cyclic(k) => write!(f, "Cyclic({k})"),
            GaloisClass::Other(o) => write!(f, "Other({o})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaloisReport {
    pub class: GaloisClass,
    pub degree: usize,
    /// Decimal string; orders overflow `u64` quickly.
    pub order: String,
    pub transitive: bool,
    pub primitive: bool,
    pub has_transposition: bool,
    pub has_three_cycle: bool,
    pub has_double_transposition: bool,
    pub all_even: bool,
    /// Order forced by the cycle-type argument alone, when it applies.
    pub structural_order: Option<String>,
}

impl GaloisReport {
    /// The structural prediction, when present, matches the computed order.
    pub fn structural_agrees(&self) -> bool {
        self.structural_order.as_ref().is_none_or(|s| *s == self.order)
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// Cycle types seen among powers of the branch permutations.
fn power_flags(rep: &MonodromyRep) -> (bool, bool, bool) {
    let (mut t, mut c3, mut dt) = (false, false, false);
    for b in rep.branch() {
        let ord = b.perm.order();
        for k in 1..ord {
            let ram: Vec<usize> = b.perm.pow(k).cycle_type().parts().iter().copied().filter(|&p| p > 1).collect();
            match ram.as_slice() {
                [2] => t = true,
                [3] => c3 = true,
                [2, 2] => dt = true,
                _ => {}
            }
        }
    }
    (t, c3, dt)
}

fn is_cyclic(group: &PermGroup, order: &BigUint) -> bool {
    if !group.is_abelian() {
        return false;
    }
    let exponent = group.generators().iter().map(Permutation::order).fold(1usize, num_integer::lcm);
    BigUint::from(exponent) == *order
}

pub fn galois_report(rep: &MonodromyRep) -> Result<GaloisReport, CoverError> {
    let n = rep.degree();
    let group = rep.group();
    let components = rep.orbits().len();
    if components != 1 {
        return Err(CoverError::Disconnected { components });
    }
    let primitive = is_primitive(&group)?.is_primitive();
    let order = group.order();
    let all_even = group.generators().iter().all(Permutation::is_even);
    let (has_transposition, has_three_cycle, has_double_transposition) = power_flags(rep);

    let full = factorial(n);
    let structural = if !primitive {
        None
    } else if has_transposition {
        Some(full.clone())
    } else if has_three_cycle || (has_double_transposition && n >= 9) {
        Some(if all_even { &full / 2u32 } else { full.clone() })
    } else {
        None
    };

    let class = if n >= 3 && order == full {
        GaloisClass::FullSymmetric
    } else if n >= 4 && order == &full / 2u32 && all_even {
        GaloisClass::Alternating
    } else if n == 6 && order == BigUint::from(120u32) && primitive {
        GaloisClass::ExceptionalPGL2F5
    } else if is_cyclic(&group, &order) {
        GaloisClass::Cyclic(u64::try_from(&order).expect("cyclic subgroups of S_n have small order"))
    } else {
        GaloisClass::Other(order.to_string())
    };

    Ok(GaloisReport {
        class,
        degree: n,
        order: order.to_string(),
        transitive: true,
        primitive,
        has_transposition,
        has_three_cycle,
        has_double_transposition,
        all_even,
        structural_order: structural.map(|o| o.to_string()),
    })
}

/// Classifies the monodromy group of a connected cover.
pub fn classify_galois(rep: &MonodromyRep) -> Result<GaloisClass, CoverError> {
    Ok(galois_report(rep)?.class)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::BranchPoint;

    #[test]
    fn exceptional_degree_six() {
        let g1 = Permutation::from_one_based_cycles(6, &[vec![3, 5, 4, 6]]).unwrap();
        let g2 = Permutation::from_one_based_cycles(6, &[vec![1, 6, 2], vec![3, 4, 5]]).unwrap();
        let g3 = g1.compose(&g2).inverse();
        let rep = MonodromyRep::over_p1(6, vec![("a", g1), ("b", g2), ("c", g3)]).unwrap();
        let r = galois_report(&rep).unwrap();
        assert_eq!(r.class, GaloisClass::ExceptionalPGL2F5);
        assert_eq!(r.order, "120");
        assert!(r.structural_agrees());
    }

    #[test]
    fn cyclic_galois_cover() {
        let c = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        let rep = MonodromyRep::over_p1(3, vec![("a", c.clone()), ("b", c.clone()), ("c", c)]).unwrap();
        assert_eq!(classify_galois(&rep).unwrap(), GaloisClass::Cyclic(3));
    }

    #[test]
    fn symmetric_from_genus_one_base() {
        let a = Permutation::transposition(3, 0, 1);
        let b = Permutation::from_cycles(3, &[vec![0, 2, 1]]).unwrap();
        let sigma = Permutation::commutator(&a, &b).inverse();
        let rep = MonodromyRep::new(1, 3, vec![a, b], vec![BranchPoint::new("x0", sigma)]).unwrap();
        assert_eq!(classify_galois(&rep).unwrap(), GaloisClass::FullSymmetric);
    }

    #[test]
    fn dihedral_is_other() {
        let r = Permutation::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap();
        let s = Permutation::from_cycles(4, &[vec![1, 3]]).unwrap();
        let t = r.compose(&s).inverse();
        let rep = MonodromyRep::over_p1(4, vec![("a", r), ("b", s), ("c", t)]).unwrap();
        let report = galois_report(&rep).unwrap();
        assert_eq!(report.class, GaloisClass::Other("8".into()));
        assert!(!report.primitive);
    }
}
