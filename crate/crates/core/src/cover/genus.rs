use serde::{Deserialize, Serialize};

use super::{CoverError, MonodromyRep};
use crate::perm::CycleType;

/// The three branch configurations of a genus-2 cover of a genus-1 curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RamificationCase {
    /// Two branch points, each a single transposition.
    CaseI,
    /// One branch point, a double transposition.
    CaseII,
    /// One branch point, a 3-cycle.
    CaseIII,
}

impl RamificationCase {
    pub const ALL: [RamificationCase; 3] = [RamificationCase::CaseI, RamificationCase::CaseII, RamificationCase::CaseIII];

    /// Genus of the fiber square `Y ×_X Y`.
    pub fn fiber_square_genus(self, n: usize) -> usize {
        match self {
            RamificationCase::CaseI => 2 * n,
            RamificationCase::CaseII => 2 * n - 2,
            RamificationCase::CaseIII => 2 * n - 1,
        }
    }

    /// Genus of the off-diagonal component of the fiber square.
    pub fn off_diagonal_genus(self, n: usize) -> usize {
        self.fiber_square_genus(n) - 2
    }

    pub fn min_degree(self) -> usize {
        match self {
            RamificationCase::CaseII => 4,
            _ => 3,
        }
    }
}

impl std::str::FromStr for RamificationCase {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "I" | "1" | "CASEI" => Ok(RamificationCase::CaseI),
            "II" | "2" | "CASEII" => Ok(RamificationCase::CaseII),
            "III" | "3" | "CASEIII" => Ok(RamificationCase::CaseIII),
            _ => Err(format!("unknown ramification case {s:?}, expected I, II or III")),
        }
    }
}

/// Riemann–Hurwitz genus of a rep, treating it as one curve. For a
/// disconnected rep this is `1 + Σ(gᵢ − 1)`, not the sum of the genera.
pub fn genus_of(rep: &MonodromyRep) -> Result<i64, CoverError> {
    let n = rep.degree() as i64;
    let ram: i64 = rep.branch().iter().map(|b| b.perm.cycle_type().ramification() as i64).sum();
    let two_g_minus_two = n * (2 * rep.base_genus() as i64 - 2) + ram;
    if two_g_minus_two % 2 != 0 {
        return Err(CoverError::NonIntegerGenus { two_g_minus_two });
    }
    let genus = two_g_minus_two / 2 + 1;
    if genus < 0 {
        return Err(CoverError::NegativeGenus { genus });
    }
    Ok(genus)
}

/// Genus of a connected cover.
pub fn rh_genus(rep: &MonodromyRep) -> Result<i64, CoverError> {
    let components = rep.orbits().len();
    if components != 1 {
        return Err(CoverError::Disconnected { components });
    }
    genus_of(rep)
}

pub fn classify_ramification(rep: &MonodromyRep) -> Result<RamificationCase, CoverError> {
    let n = rep.degree();
    if rep.base_genus() != 1 {
        return Err(CoverError::NotAGenus2OverGenus1Cover(format!("base genus is {}", rep.base_genus())));
    }
    let g = rh_genus(rep)?;
    if g != 2 {
        return Err(CoverError::NotAGenus2OverGenus1Cover(format!("cover genus is {g}")));
    }
    let types: Vec<CycleType> = rep.branch().iter().map(|b| b.perm.cycle_type()).collect();
    let transposition = CycleType::cycle_with_fixed(2, n);
    match types.as_slice() {
        [a, b] if *a == transposition && *b == transposition => Ok(RamificationCase::CaseI),
        [a] if n >= 3 && *a == CycleType::cycle_with_fixed(3, n) => Ok(RamificationCase::CaseIII),
        [a] if n >= 4 && a.parts().iter().filter(|&&p| p == 2).count() == 2 && a.ramification() == 2 => {
            Ok(RamificationCase::CaseII)
        }
        _ => Err(CoverError::NotAGenus2OverGenus1Cover(format!(
            "branch cycle types {}",
            types.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::BranchPoint;
    use crate::perm::Permutation;

    #[test]
    fn elliptic_double_cover() {
        let t = Permutation::transposition(2, 0, 1);
        let rep = MonodromyRep::over_p1(2, vec![("a", t.clone()), ("b", t.clone()), ("c", t.clone()), ("d", t)]).unwrap();
        assert_eq!(rh_genus(&rep).unwrap(), 1);
    }

    #[test]
    fn three_cycle_over_genus_one() {
        let a = Permutation::transposition(3, 0, 1);
        let b = Permutation::from_cycles(3, &[vec![0, 2, 1]]).unwrap();
        let sigma = Permutation::commutator(&a, &b).inverse();
        let rep = MonodromyRep::new(1, 3, vec![a, b], vec![BranchPoint::new("x0", sigma)]).unwrap();
        assert_eq!(rh_genus(&rep).unwrap(), 2);
        assert_eq!(classify_ramification(&rep).unwrap(), RamificationCase::CaseIII);
    }

    #[test]
    fn unramified_cover_of_p1_is_negative() {
        let rep = MonodromyRep::over_p1(2, vec![]).unwrap();
        assert!(matches!(rh_genus(&rep), Err(CoverError::Disconnected { components: 2 })));
        let single = MonodromyRep::over_p1(1, vec![]).unwrap();
        assert_eq!(rh_genus(&single).unwrap(), 0);
    }

    #[test]
    fn parse_case() {
        assert_eq!("ii".parse::<RamificationCase>().unwrap(), RamificationCase::CaseII);
        assert!("iv".parse::<RamificationCase>().is_err());
    }
}
