use serde::{Deserialize, Serialize};

use super::CoverError;
use crate::perm::{orbits, PermGroup, Permutation};

#[derive(Clone, Debug, PartialEq)]
pub struct BranchPoint {
    pub label: String,
    pub perm: Permutation,
    /// Numeric coordinate `[re, im]` of the branch value, when known.
    pub position: Option<[f64; 2]>,
}

impl BranchPoint {
    pub fn new(label: impl Into<String>, perm: Permutation) -> Self {
        Self { label: label.into(), perm, position: None }
    }
}

/// Monodromy of a degree-`n` cover of a genus-`g` curve.
#[derive(Clone, Debug, PartialEq)]
pub struct MonodromyRep {
    base_genus: usize,
    degree: usize,
    handles: Vec<Permutation>,
    branch: Vec<BranchPoint>,
}

/// Result of [`validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Validation {
    pub connected: bool,
    pub components: usize,
}

impl MonodromyRep {
    /// Checks degrees, handle count and the surface relation. Identity branch
    /// permutations are dropped.
    pub fn new(
        base_genus: usize,
        degree: usize,
        handles: Vec<Permutation>,
        branch: Vec<BranchPoint>,
    ) -> Result<Self, CoverError> {
        let rep = Self::new_unchecked(base_genus, degree, handles, branch)?;
        rep.check_relation()?;
        Ok(rep)
    }

    /// Genus-0 rep from labelled branch permutations.
    pub fn over_p1(degree: usize, branch: Vec<(&str, Permutation)>) -> Result<Self, CoverError> {
        Self::new(0, degree, Vec::new(), branch.into_iter().map(|(l, p)| BranchPoint::new(l, p)).collect())
    }

    /// Like [`MonodromyRep::new`] but skips the relation check, so that raw
    /// data can be handed to [`validate`].
    pub fn new_unchecked(
        base_genus: usize,
        degree: usize,
        handles: Vec<Permutation>,
        branch: Vec<BranchPoint>,
    ) -> Result<Self, CoverError> {
        if handles.len() != 2 * base_genus {
            return Err(CoverError::HandleCount { base_genus, expected: 2 * base_genus, found: handles.len() });
        }
        for (k, h) in handles.iter().enumerate() {
            if h.degree() != degree {
                return Err(CoverError::DegreeMismatch { what: format!("handle {}", k + 1), expected: degree, found: h.degree() });
            }
        }
        let mut kept = Vec::with_capacity(branch.len());
        for b in branch {
            if b.perm.degree() != degree {
                return Err(CoverError::DegreeMismatch {
                    what: format!("branch point {}", b.label),
                    expected: degree,
                    found: b.perm.degree(),
                });
            }
            if b.perm.is_identity() {
                log::warn!("dropping branch point {} with trivial monodromy", b.label);
                continue;
            }
            kept.push(b);
        }
        Ok(Self { base_genus, degree, handles, branch: kept })
    }

    pub fn base_genus(&self) -> usize {
        self.base_genus
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn handles(&self) -> &[Permutation] {
        &self.handles
    }

    pub fn branch(&self) -> &[BranchPoint] {
        &self.branch
    }

    pub fn labels(&self) -> Vec<&str> {
        self.branch.iter().map(|b| b.label.as_str()).collect()
    }

    pub fn branch_perm(&self, label: &str) -> Option<&Permutation> {
        self.branch.iter().find(|b| b.label == label).map(|b| &b.perm)
    }

    /// Handles followed by branch permutations.
    pub fn generators(&self) -> Vec<Permutation> {
        self.handles.iter().cloned().chain(self.branch.iter().map(|b| b.perm.clone())).collect()
    }

    pub fn group(&self) -> PermGroup {
        PermGroup::new(self.degree, self.generators()).expect("degrees checked at construction")
    }

    /// `∏[aᵢ,bᵢ]·∏σ_b` in stored order.
    pub fn relation_product(&self) -> Permutation {
        let mut acc = Permutation::identity(self.degree);
        for pair in self.handles.chunks(2) {
            acc = acc.compose(&Permutation::commutator(&pair[0], &pair[1]));
        }
        for b in &self.branch {
            acc = acc.compose(&b.perm);
        }
        acc
    }

    fn check_relation(&self) -> Result<(), CoverError> {
        let p = self.relation_product();
        if p.is_identity() {
            Ok(())
        } else {
            Err(CoverError::RelationViolation { product: p.to_string() })
        }
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits(&self.generators(), self.degree)
    }

    pub fn is_connected(&self) -> bool {
        self.orbits().len() == 1
    }

    /// Applies `f` to every permutation, keeping labels. Used for relabelings
    /// and restrictions; the relation is re-checked.
    pub(crate) fn map_perms<F>(&self, degree: usize, mut f: F) -> Result<Self, CoverError>
    where
        F: FnMut(&Permutation) -> Permutation,
    {
        let handles = self.handles.iter().map(&mut f).collect();
        let branch = self
            .branch
            .iter()
            .map(|b| BranchPoint { label: b.label.clone(), perm: f(&b.perm), position: b.position })
            .collect();
        Self::new(self.base_genus, degree, handles, branch)
    }

    pub fn to_json(&self) -> RepJson {
        RepJson {
            base_genus: self.base_genus,
            degree: self.degree,
            handles: self.handles.iter().map(Permutation::to_one_based_cycles).collect(),
            branch: self
                .branch
                .iter()
                .map(|b| BranchJson { label: b.label.clone(), perm: b.perm.to_one_based_cycles(), position: b.position })
                .collect(),
        }
    }

    pub fn from_json(json: &RepJson) -> Result<Self, CoverError> {
        let n = json.degree;
        let handles = json
            .handles
            .iter()
            .map(|c| Permutation::from_one_based_cycles(n, c))
            .collect::<Result<Vec<_>, _>>()?;
        let branch = json
            .branch
            .iter()
            .map(|b| {
                Ok(BranchPoint {
                    label: b.label.clone(),
                    perm: Permutation::from_one_based_cycles(n, &b.perm)?,
                    position: b.position,
                })
            })
            .collect::<Result<Vec<_>, CoverError>>()?;
        Self::new(json.base_genus, n, handles, branch)
    }
}

/// Serialized form: permutations as 1-based cycle lists.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepJson {
    pub base_genus: usize,
    pub degree: usize,
    #[serde(default)]
    pub handles: Vec<Vec<Vec<usize>>>,
    pub branch: Vec<BranchJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchJson {
    pub label: String,
    pub perm: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub position: Option<[f64; 2]>,
}

impl Serialize for MonodromyRep {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for MonodromyRep {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let json = RepJson::deserialize(d)?;
        Self::from_json(&json).map_err(serde::de::Error::custom)
    }
}

/// Re-checks the relation and reports connectedness.
pub fn validate(rep: &MonodromyRep) -> Result<Validation, CoverError> {
    rep.check_relation()?;
    let components = rep.orbits().len();
    Ok(Validation { connected: components == 1, components })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: usize, a: usize, b: usize) -> Permutation {
        Permutation::transposition(n, a, b)
    }

    #[test]
    fn four_equal_transpositions_over_p1() {
        let rep = MonodromyRep::over_p1(2, (1..=4).map(|_| ("b", t(2, 0, 1))).collect()).unwrap();
        assert_eq!(validate(&rep).unwrap(), Validation { connected: true, components: 1 });
    }

    #[test]
    fn genus_one_three_cycle() {
        let a = t(3, 0, 1);
        let b = Permutation::from_cycles(3, &[vec![0, 2, 1]]).unwrap();
        let comm = Permutation::commutator(&a, &b);
        assert_eq!(comm.cycle_type().parts(), &[3]);
        let sigma = comm.inverse();
        let rep = MonodromyRep::new(1, 3, vec![a.clone(), b.clone()], vec![BranchPoint::new("x0", sigma.clone())]);
        assert!(rep.is_ok());
        let bad = MonodromyRep::new(1, 3, vec![a, b], vec![BranchPoint::new("x0", sigma.inverse())]);
        assert!(matches!(bad, Err(CoverError::RelationViolation { .. })));
    }

    #[test]
    fn identity_branch_points_are_dropped() {
        let rep = MonodromyRep::over_p1(
            2,
            vec![("a", t(2, 0, 1)), ("e", Permutation::identity(2)), ("b", t(2, 0, 1))],
        )
        .unwrap();
        assert_eq!(rep.labels(), vec!["a", "b"]);
    }

    #[test]
    fn json_round_trip() {
        let rep = MonodromyRep::over_p1(3, vec![("a", t(3, 0, 1)), ("b", t(3, 0, 1))]).unwrap();
        let s = serde_json::to_string(&rep).unwrap();
        assert_eq!(s, r#"{"base_genus":0,"degree":3,"handles":[],"branch":[{"label":"a","perm":[[1,2]]},{"label":"b","perm":[[1,2]]}]}"#);
        let back: MonodromyRep = serde_json::from_str(&s).unwrap();
        assert_eq!(back, rep);
        assert!(!validate(&back).unwrap().connected);
    }

    #[test]
    fn handle_count_and_degree_are_checked() {
        let e = MonodromyRep::new(1, 3, vec![t(3, 0, 1)], vec![]);
        assert!(matches!(e, Err(CoverError::HandleCount { .. })));
        let e = MonodromyRep::over_p1(3, vec![("a", t(2, 0, 1))]);
        assert!(matches!(e, Err(CoverError::DegreeMismatch { .. })));
    }
}
