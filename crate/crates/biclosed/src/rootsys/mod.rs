//! Root systems: construction by reflection closure, affine truncation,
//! root posets and order ideals, subsystems, and the H-type support preorder.
//!
//! Only positive roots are materialized; negatives are implicit. For affine
//! variants the user-facing truncation stores roots up to the requested
//! level, while an extended store with headroom (level ≤ 2K+2) backs the
//! subsystem fixpoints. The level of a root β is the largest j ≥ 0 with
//! β − jδ still a positive root, which is intrinsic to the system and stable
//! under re-truncation.

mod families;
mod poset;
mod subsys;

pub use families::{
    build_any, build_quadratic, build_rational, AnySystem, Family, SystemSpec, Variant,
};
pub use poset::{collect_ideals, for_each_ideal, IdealFilter, OrderIdeal, RootPoset};
pub use subsys::{support_classes, support_preorder_leq, Subsystem, SupportClass};

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::exactnum::{Scalar, ScalarError};
use crate::lp;

#[derive(Debug, Error)]
pub enum RootSysError {
    #[error("invalid system spec: {0}")]
    InvalidSpec(String),
    #[error("subsystem fixpoint exceeded the working headroom (level {headroom}); rank data would be unreliable")]
    LevelOverflow { headroom: u32 },
    #[error("operation requires an H-type system")]
    NotHType,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A positive root: coordinates over the simple basis plus its level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root<S> {
    pub coords: Vec<S>,
    pub level: u32,
}

impl<S: Scalar> Root<S> {
    pub fn height(&self) -> S {
        self.coords
            .iter()
            .fold(S::zero(), |acc, c| acc + c.clone())
    }
}

/// An immutable root system with truncation and headroom stores.
pub struct RootSystem<S: Scalar> {
    spec: SystemSpec,
    gram: Vec<Vec<S>>,
    delta: Option<Vec<S>>,
    /// Stored positive roots (level ≤ requested truncation), canonical order.
    roots: Vec<Root<S>>,
    /// Headroom store (level ≤ working bound ≥ truncation), canonical order.
    extended: Vec<Root<S>>,
    working_level: u32,
    lookup_ext: HashMap<Vec<S>, usize>,
    primary_of_ext: Vec<Option<usize>>,
    ext_of_primary: Vec<usize>,
}

impl<S: Scalar> RootSystem<S> {
    pub fn spec(&self) -> SystemSpec {
        self.spec
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<S>] {
        &self.gram
    }

    /// Coordinates of δ over the simple basis (affine variants only).
    pub fn delta(&self) -> Option<&[S]> {
        self.delta.as_deref()
    }

    /// The stored positive roots at the requested truncation, in the
    /// canonical suitable order.
    pub fn roots(&self) -> &[Root<S>] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn extended_roots(&self) -> &[Root<S>] {
        &self.extended
    }

    pub fn working_level(&self) -> u32 {
        self.working_level
    }

    pub fn root(&self, idx: usize) -> &Root<S> {
        &self.roots[idx]
    }

    /// Index of a stored (truncation-level) root by coordinates.
    pub fn index_of(&self, coords: &[S]) -> Option<usize> {
        self.lookup_ext
            .get(coords)
            .and_then(|&e| self.primary_of_ext[e])
    }

    pub fn ext_index_of(&self, coords: &[S]) -> Option<usize> {
        self.lookup_ext.get(coords).copied()
    }

    pub fn primary_of_ext(&self, ext: usize) -> Option<usize> {
        self.primary_of_ext[ext]
    }

    pub fn ext_of_primary(&self, idx: usize) -> usize {
        self.ext_of_primary[idx]
    }

    /// Exact bilinear pairing of two coordinate vectors.
    pub fn pairing_coords(&self, x: &[S], y: &[S]) -> S {
        let mut acc = S::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    acc = acc + xi.clone() * self.gram[i][j].clone() * yj.clone();
                }
            }
        }
        acc
    }

    pub fn pairing(&self, i: usize, j: usize) -> S {
        self.pairing_coords(&self.roots[i].coords, &self.roots[j].coords)
    }

    /// Reflection tₐ(β) = β − 2(α,β)/(α,α)·α on coordinate vectors.
    pub fn reflect_coords(&self, alpha: &[S], beta: &[S]) -> Vec<S> {
        let num = self.pairing_coords(alpha, beta);
        let den = self.pairing_coords(alpha, alpha);
        let c = S::from_int(2) * num / den;
        beta.iter()
            .zip(alpha)
            .map(|(b, a)| b.clone() - c.clone() * a.clone())
            .collect()
    }

    /// The unique root of maximal height (finite irreducible systems).
    pub fn highest_root(&self) -> Vec<S> {
        debug_assert!(self.delta.is_none());
        let best = self
            .roots
            .iter()
            .max_by(|a, b| a.height().cmp(&b.height()))
            .expect("nonempty root system");
        debug_assert_eq!(
            self.roots.iter().filter(|r| r.height() == best.height()).count(),
            1,
            "highest root must be unique in an irreducible system"
        );
        best.coords.clone()
    }

    /// Elements of `members` (coordinate vectors) that are not nonnegative
    /// combinations of the others, decided by exact LP.
    pub fn fundamental_roots(&self, members: &[Vec<S>]) -> Vec<usize> {
        let dim = self.rank();
        let mut fundamental = Vec::new();
        for (i, target) in members.iter().enumerate() {
            let others: Vec<Vec<S>> = members
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, m)| m.clone())
                .collect();
            if lp::cone_membership(dim, &others, target).is_none() {
                fundamental.push(i);
            }
        }
        fundamental
    }

    /// Generate the system from its Gram matrix by closing the simple roots
    /// under simple reflections within the positive cone.
    pub(crate) fn generate(
        spec: SystemSpec,
        gram: Vec<Vec<S>>,
        delta: Option<Vec<S>>,
        level: u32,
    ) -> Result<Self, RootSysError> {
        let n = gram.len();
        for i in 0..n {
            for j in 0..n {
                if gram[i][j] != gram[j][i] {
                    return Err(RootSysError::InvalidSpec("Gram matrix must be symmetric".into()));
                }
            }
            if !gram[i][i].is_positive() {
                return Err(RootSysError::InvalidSpec(
                    "simple roots must have positive squared length".into(),
                ));
            }
        }
        if let Some(d) = &delta {
            // δ must annihilate the form; its coordinates must be positive.
            for i in 0..n {
                let mut unit = vec![S::zero(); n];
                unit[i] = S::one();
                let mut p = S::zero();
                for (j, dj) in d.iter().enumerate() {
                    p = p + gram[i][j].clone() * dj.clone();
                }
                if !p.is_zero() {
                    return Err(RootSysError::InvalidSpec("δ must pair to zero with the base".into()));
                }
                let _ = unit;
            }
        }

        let working_level = if delta.is_some() { 2 * level + 2 } else { 0 };
        // The BFS bound is on the α₀ coordinate; a root's level trails that
        // coordinate by at most 2 in every supported system.
        let coord_bound = working_level + 2;

        let dummy = Self {
            spec,
            gram,
            delta,
            roots: Vec::new(),
            extended: Vec::new(),
            working_level,
            lookup_ext: HashMap::new(),
            primary_of_ext: Vec::new(),
            ext_of_primary: Vec::new(),
        };

        let mut found: HashMap<Vec<S>, ()> = HashMap::new();
        let mut queue: VecDeque<Vec<S>> = VecDeque::new();
        let simples: Vec<Vec<S>> = (0..n)
            .map(|i| {
                let mut v = vec![S::zero(); n];
                v[i] = S::one();
                v
            })
            .collect();
        for s in &simples {
            found.insert(s.clone(), ());
            queue.push_back(s.clone());
        }
        let bound = S::from_int(coord_bound as i64);
        while let Some(beta) = queue.pop_front() {
            for alpha in &simples {
                let image = dummy.reflect_coords(alpha, &beta);
                if image.iter().any(|c| c.is_negative()) {
                    continue; // crossed into the negative roots
                }
                if dummy.delta.is_some() && image[0] > bound {
                    continue;
                }
                if !found.contains_key(&image) {
                    found.insert(image.clone(), ());
                    queue.push_back(image);
                }
            }
        }

        // Exact level of each root: the most copies of δ that can be
        // subtracted while remaining a positive root. Membership of every
        // candidate is decidable inside the BFS set because subtraction only
        // lowers coordinates.
        let mut all: Vec<Root<S>> = Vec::with_capacity(found.len());
        for coords in found.keys() {
            let level_of = match &dummy.delta {
                None => 0,
                Some(d) => {
                    let mut best = 0u32;
                    let mut j = 1u32;
                    let mut probe: Vec<S> = coords.clone();
                    loop {
                        for (p, dc) in probe.iter_mut().zip(d) {
                            *p = p.clone() - dc.clone();
                        }
                        if probe.iter().any(|c| c.is_negative()) {
                            break;
                        }
                        if found.contains_key(&probe) {
                            best = j;
                        }
                        j += 1;
                    }
                    best
                }
            };
            all.push(Root { coords: coords.clone(), level: level_of });
        }

        let height_first = matches!(spec.variant, Variant::TwistedD3 { .. });
        sort_canonical(&mut all, height_first);

        let extended: Vec<Root<S>> = all
            .into_iter()
            .filter(|r| r.level <= working_level)
            .collect();
        let mut lookup_ext = HashMap::with_capacity(extended.len());
        let mut primary_of_ext = vec![None; extended.len()];
        let mut roots = Vec::new();
        let mut ext_of_primary = Vec::new();
        for (e, r) in extended.iter().enumerate() {
            lookup_ext.insert(r.coords.clone(), e);
            if r.level <= level {
                primary_of_ext[e] = Some(roots.len());
                ext_of_primary.push(e);
                roots.push(r.clone());
            }
        }

        let sys = Self {
            roots,
            extended,
            lookup_ext,
            primary_of_ext,
            ext_of_primary,
            ..dummy
        };
        sys.assert_order_refines_poset();
        Ok(sys)
    }

    /// The canonical order must refine the root poset; this is what makes it
    /// a candidate suitable order and a valid linear extension for ideal
    /// enumeration.
    fn assert_order_refines_poset(&self) {
        for (i, a) in self.roots.iter().enumerate() {
            for b in self.roots.iter().skip(i + 1) {
                debug_assert!(
                    !dominates(&a.coords, &b.coords),
                    "canonical order fails to refine the root poset"
                );
            }
        }
    }
}

/// Coordinatewise β ≤ γ with β ≠ γ ("γ − β ∈ Span₊Π").
pub fn leq_coords<S: Scalar>(beta: &[S], gamma: &[S]) -> bool {
    beta.iter().zip(gamma).all(|(b, g)| b <= g)
}

fn dominates<S: Scalar>(a: &[S], b: &[S]) -> bool {
    a != b && leq_coords(b, a)
}

/// Canonical suitable order: (level, height, lexicographic coordinates).
/// The twisted system needs height first, as its level is not monotone along
/// the root poset.
fn sort_canonical<S: Scalar>(roots: &mut [Root<S>], height_first: bool) {
    roots.sort_by(|a, b| {
        let key_a = (a.level, a.height());
        let key_b = (b.level, b.height());
        let primary = if height_first {
            (key_a.1.clone(), key_a.0).cmp(&(key_b.1.clone(), key_b.0))
        } else {
            key_a.cmp(&key_b)
        };
        primary.then_with(|| a.coords.cmp(&b.coords))
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn count(spec: &str) -> usize {
        build_rational(SystemSpec::parse(spec).unwrap()).unwrap().len()
    }

    /// Independent oracle: close a set of vectors under pairwise reflections
    /// without any of the BFS bookkeeping, and count the positive half.
    fn naive_positive_count(family: Family, rank: u32) -> usize {
        let gram = families::finite_gram(family, rank);
        let spec = SystemSpec::finite(family, rank).unwrap();
        let sys = RootSystem::generate(spec, gram, None, 0).unwrap();
        let n = sys.rank();
        let mut all: Vec<Vec<BigRational>> = Vec::new();
        for i in 0..n {
            let mut v = vec![q(0); n];
            v[i] = q(1);
            all.push(v.clone());
            all.push(v.iter().map(|c| -c.clone()).collect());
        }
        loop {
            let mut grew = false;
            let snapshot = all.clone();
            for a in &snapshot {
                for b in &snapshot {
                    let r = sys.reflect_coords(a, b);
                    if !all.contains(&r) {
                        all.push(r);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        all.iter()
            .filter(|v| v.iter().all(|c| !c.is_negative()))
            .count()
    }

    #[test]
    fn finite_positive_root_counts() {
        let expected = [
            ("A2", 3),
            ("B2", 4),
            ("G2", 6),
            ("A3", 6),
            ("B3", 9),
            ("C3", 9),
            ("D4", 12),
            ("A5", 15),
        ];
        for (name, want) in expected {
            assert_eq!(count(name), want, "positive roots of {name}");
        }
    }

    #[test]
    fn finite_counts_match_naive_reflection_fixpoint() {
        for (family, rank, want) in [
            (Family::A, 2, 3),
            (Family::B, 2, 4),
            (Family::G, 2, 6),
            (Family::A, 3, 6),
            (Family::B, 3, 9),
            (Family::C, 3, 9),
            (Family::D, 4, 12),
        ] {
            assert_eq!(naive_positive_count(family, rank), want);
        }
    }

    #[test]
    fn e_series_and_f4_counts() {
        assert_eq!(count("E6"), 36);
        assert_eq!(count("F4"), 24);
    }

    #[test]
    fn a3_positive_roots_listed() {
        let sys = build_rational(SystemSpec::parse("A3").unwrap()).unwrap();
        let mut got: Vec<Vec<i64>> = sys
            .roots()
            .iter()
            .map(|r| r.coords.iter().map(|c| c.numer().try_into().unwrap()).collect())
            .collect();
        got.sort();
        let mut want = vec![
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![1, 1, 0],
            vec![0, 1, 1],
            vec![1, 1, 1],
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn affine_a2_level_counts() {
        // 6(K+1) stored roots at truncation level K
        for k in 0..4u32 {
            let sys = build_rational(SystemSpec::parse(&format!("aff:A2@{k}")).unwrap()).unwrap();
            assert_eq!(sys.len(), 6 * (k as usize + 1), "level {k}");
        }
    }

    #[test]
    fn truncation_stability() {
        for spec_k in ["aff:A2@1", "aff:C2@1", "tw:D3-2@1"] {
            let small = build_rational(SystemSpec::parse(spec_k).unwrap()).unwrap();
            let big_spec = spec_k.replace("@1", "@2");
            let big = build_rational(SystemSpec::parse(&big_spec).unwrap()).unwrap();
            let mut filtered: Vec<_> = big
                .roots()
                .iter()
                .filter(|r| r.level <= 1)
                .map(|r| r.coords.clone())
                .collect();
            let mut stored: Vec<_> = small.roots().iter().map(|r| r.coords.clone()).collect();
            filtered.sort();
            stored.sort();
            assert_eq!(filtered, stored, "{spec_k}");
        }
    }

    #[test]
    fn twisted_d3_contains_the_nine_root_ideal() {
        let sys = build_rational(SystemSpec::parse("tw:D3-2@1").unwrap()).unwrap();
        let ideal = [
            [1, 0, 0],
            [0, 1, 0],
            [0, 0, 1],
            [1, 1, 0],
            [0, 1, 1],
            [2, 1, 0],
            [0, 1, 2],
            [2, 1, 1],
            [1, 1, 2],
        ];
        for coords in ideal {
            let v: Vec<BigRational> = coords.iter().map(|&c| q(c)).collect();
            assert!(sys.index_of(&v).is_some(), "missing {coords:?}");
        }
        // δ itself must never be stored
        let delta: Vec<BigRational> = [1, 1, 1].iter().map(|&c| q(c)).collect();
        assert!(sys.index_of(&delta).is_none());
        assert_eq!(sys.len(), 12);
    }

    #[test]
    fn h_type_counts() {
        let h3 = build_quadratic(SystemSpec::parse("H3").unwrap()).unwrap();
        assert_eq!(h3.len(), 15);
        let h4 = build_quadratic(SystemSpec::parse("H4").unwrap()).unwrap();
        assert_eq!(h4.len(), 60);
    }

    #[test]
    fn no_stored_root_is_a_multiple_of_another() {
        for name in ["B3", "aff:A2@2", "tw:D3-2@1"] {
            let sys = build_rational(SystemSpec::parse(name).unwrap()).unwrap();
            let roots = sys.extended_roots();
            for (i, a) in roots.iter().enumerate() {
                for b in roots.iter().skip(i + 1) {
                    // proportional coordinate vectors?
                    let ratio = a
                        .coords
                        .iter()
                        .zip(&b.coords)
                        .find(|(x, _)| !x.is_zero())
                        .map(|(x, y)| y.clone() / x.clone())
                        .unwrap();
                    let proportional = a
                        .coords
                        .iter()
                        .zip(&b.coords)
                        .all(|(x, y)| x.clone() * ratio.clone() == y.clone());
                    assert!(!proportional, "{:?} ∝ {:?}", a.coords, b.coords);
                }
            }
        }
    }

    #[test]
    fn spec_grammar_round_trip() {
        for s in ["A3", "H4", "aff:A2@2", "aff:G2@0", "tw:D3-2@1", "E8"] {
            let spec = SystemSpec::parse(s).unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!(SystemSpec::parse("A0").is_err());
        assert!(SystemSpec::parse("D3").is_err());
        assert!(SystemSpec::parse("H5").is_err());
        assert!(SystemSpec::parse("A3@1").is_err());
        assert!(SystemSpec::parse("aff:H3@1").is_err());
        assert!(SystemSpec::parse("tw:B2-1@1").is_err());
    }

    #[test]
    fn canonical_order_levels_are_nondecreasing_except_twisted() {
        let sys = build_rational(SystemSpec::parse("aff:A2@2").unwrap()).unwrap();
        let levels: Vec<u32> = sys.roots().iter().map(|r| r.level).collect();
        let mut sorted = levels.clone();
        sorted.sort();
        assert_eq!(levels, sorted);
    }
}
