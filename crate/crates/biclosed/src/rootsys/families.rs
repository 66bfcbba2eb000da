//! Dynkin data: system specs, their string grammar, and Gram matrices.
//!
//! Finite crystallographic systems are normalized so the short roots have
//! squared length 2. Untwisted affine systems are built by affinization of
//! the corresponding finite system; the one twisted system supported is the
//! rescaled rank-3 arrangement with the fixed Gram matrix below.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::exactnum::{QuadScalar, Scalar};
use crate::rootsys::{RootSysError, RootSystem};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
            Family::H => 'H',
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Finite,
    /// Affinization of the finite system, truncated at the given level.
    UntwistedAffine { level: u32 },
    /// The twisted rank-3 system obtained from the rank-2 affine arrangement
    /// with two hyperplane families rescaled (Kac label D₃⁽²⁾).
    TwistedD3 { level: u32 },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct SystemSpec {
    pub family: Family,
    pub rank: u32,
    pub variant: Variant,
}

impl SystemSpec {
    pub fn finite(family: Family, rank: u32) -> Result<Self, RootSysError> {
        SystemSpec { family, rank, variant: Variant::Finite }.validated()
    }

    pub fn affine(family: Family, rank: u32, level: u32) -> Result<Self, RootSysError> {
        SystemSpec { family, rank, variant: Variant::UntwistedAffine { level } }.validated()
    }

    pub fn twisted_d3(level: u32) -> Self {
        SystemSpec { family: Family::D, rank: 3, variant: Variant::TwistedD3 { level } }
    }

    pub fn is_affine(&self) -> bool {
        !matches!(self.variant, Variant::Finite)
    }

    pub fn level(&self) -> u32 {
        match self.variant {
            Variant::Finite => 0,
            Variant::UntwistedAffine { level } | Variant::TwistedD3 { level } => level,
        }
    }

    pub fn is_h_type(&self) -> bool {
        self.family == Family::H
    }

    fn validated(self) -> Result<Self, RootSysError> {
        let ok_finite = match self.family {
            Family::A => self.rank >= 1,
            Family::B | Family::C => self.rank >= 2,
            Family::D => self.rank >= 4,
            Family::E => (6..=8).contains(&self.rank),
            Family::F => self.rank == 4,
            Family::G => self.rank == 2,
            Family::H => self.rank == 3 || self.rank == 4,
        };
        if !ok_finite {
            return Err(RootSysError::InvalidSpec(format!(
                "{}{} is not a legal Dynkin type",
                self.family.letter(),
                self.rank
            )));
        }
        if self.is_affine() && self.family == Family::H {
            return Err(RootSysError::InvalidSpec(
                "H-types exist only as finite systems".into(),
            ));
        }
        Ok(self)
    }

    /// Parse the CLI grammar: `A3`, `H4`, `aff:A2@2`, `tw:D3-2@1`.
    pub fn parse(text: &str) -> Result<Self, RootSysError> {
        let s = text.trim();
        let bad = || RootSysError::InvalidSpec(format!("cannot parse system spec {s:?}"));
        if let Some(rest) = s.strip_prefix("tw:") {
            let (name, level) = rest.split_once('@').ok_or_else(bad)?;
            if name != "D3-2" {
                return Err(RootSysError::InvalidSpec(format!(
                    "unknown twisted system {name:?} (only D3-2 is supported)"
                )));
            }
            let level: u32 = level.parse().map_err(|_| bad())?;
            return Ok(SystemSpec::twisted_d3(level));
        }
        if let Some(rest) = s.strip_prefix("aff:") {
            let (name, level) = rest.split_once('@').ok_or_else(bad)?;
            let (family, rank) = parse_finite_name(name).ok_or_else(bad)?;
            let level: u32 = level.parse().map_err(|_| bad())?;
            return SystemSpec::affine(family, rank, level);
        }
        if s.contains('@') {
            return Err(RootSysError::InvalidSpec(format!(
                "level makes no sense for the finite system {s:?}"
            )));
        }
        let (family, rank) = parse_finite_name(s).ok_or_else(bad)?;
        SystemSpec::finite(family, rank)
    }
}

fn parse_finite_name(name: &str) -> Option<(Family, u32)> {
    let mut chars = name.chars();
    let family = match chars.next()? {
        'A' => Family::A,
        'B' => Family::B,
        'C' => Family::C,
        'D' => Family::D,
        'E' => Family::E,
        'F' => Family::F,
        'G' => Family::G,
        'H' => Family::H,
        _ => return None,
    };
    let rank: u32 = chars.as_str().parse().ok()?;
    Some((family, rank))
}

impl fmt::Display for SystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.variant {
            Variant::Finite => write!(f, "{}{}", self.family.letter(), self.rank),
            Variant::UntwistedAffine { level } => {
                write!(f, "aff:{}{}@{}", self.family.letter(), self.rank, level)
            }
            Variant::TwistedD3 { level } => write!(f, "tw:D3-2@{}", level),
        }
    }
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Gram matrix of the finite crystallographic system, short roots at
/// squared length 2.
pub(crate) fn finite_gram(family: Family, rank: u32) -> Vec<Vec<BigRational>> {
    let n = rank as usize;
    let mut g = vec![vec![q(0); n]; n];
    let mut set = |i: usize, j: usize, v: i64| {
        g[i][j] = q(v);
        if i != j {
            g[j][i] = q(v);
        }
    };
    match family {
        Family::A => {
            for i in 0..n {
                set(i, i, 2);
            }
            for i in 0..n - 1 {
                set(i, i + 1, -1);
            }
        }
        Family::B => {
            // chain of long roots ending in one short root
            for i in 0..n - 1 {
                set(i, i, 4);
            }
            set(n - 1, n - 1, 2);
            for i in 0..n - 1 {
                set(i, i + 1, -2);
            }
        }
        Family::C => {
            // chain of short roots ending in one long root
            for i in 0..n - 1 {
                set(i, i, 2);
            }
            set(n - 1, n - 1, 4);
            for i in 0..n - 2 {
                set(i, i + 1, -1);
            }
            set(n - 2, n - 1, -2);
        }
        Family::D => {
            for i in 0..n {
                set(i, i, 2);
            }
            for i in 0..n - 3 {
                set(i, i + 1, -1);
            }
            set(n - 3, n - 2, -1);
            set(n - 3, n - 1, -1);
        }
        Family::E => {
            // Bourbaki numbering: chain 1–3–4–5–…–n with node 2 hanging off node 4.
            for i in 0..n {
                set(i, i, 2);
            }
            set(0, 2, -1);
            set(1, 3, -1);
            for i in 2..n - 1 {
                set(i, i + 1, -1);
            }
        }
        Family::F => {
            set(0, 0, 4);
            set(1, 1, 4);
            set(2, 2, 2);
            set(3, 3, 2);
            set(0, 1, -2);
            set(1, 2, -2);
            set(2, 3, -1);
        }
        Family::G => {
            set(0, 0, 2);
            set(1, 1, 6);
            set(0, 1, -3);
        }
        Family::H => unreachable!("H-type Gram matrices live in ℚ(√5)"),
    }
    g
}

/// Gram matrix of H₃ or H₄: all simple roots of squared length 2, with
/// (α₁,α₂) = −τ and single bonds further down the chain.
pub(crate) fn h_gram(rank: u32) -> Vec<Vec<QuadScalar>> {
    let n = rank as usize;
    let two = QuadScalar::from_int(2);
    let minus_one = QuadScalar::from_int(-1);
    let mut g = vec![vec![QuadScalar::zero(); n]; n];
    for i in 0..n {
        g[i][i] = two.clone();
    }
    g[0][1] = -QuadScalar::tau();
    g[1][0] = g[0][1].clone();
    for i in 1..n - 1 {
        g[i][i + 1] = minus_one.clone();
        g[i + 1][i] = minus_one.clone();
    }
    g
}

/// The fixed Gram matrix of the twisted rank-3 system.
pub(crate) fn twisted_d3_gram() -> Vec<Vec<BigRational>> {
    [[2, -2, 0], [-2, 4, -2], [0, -2, 2]]
        .iter()
        .map(|row| row.iter().map(|&v| q(v)).collect())
        .collect()
}

/// Build the system named by `spec` over ℚ. Fails on H-types, which need
/// [`build_quadratic`].
pub fn build_rational(spec: SystemSpec) -> Result<Arc<RootSystem<BigRational>>, RootSysError> {
    if spec.is_h_type() {
        return Err(RootSysError::InvalidSpec(
            "H-types carry ℚ(√5) coordinates; use build_quadratic".into(),
        ));
    }
    let sys = match spec.variant {
        Variant::Finite => {
            let gram = finite_gram(spec.family, spec.rank);
            RootSystem::generate(spec, gram, None, 0)?
        }
        Variant::UntwistedAffine { level } => {
            let finite_spec = SystemSpec::finite(spec.family, spec.rank)?;
            let finite = RootSystem::generate(finite_spec, finite_gram(spec.family, spec.rank), None, 0)?;
            let (gram, delta) = affinize(&finite);
            RootSystem::generate(spec, gram, Some(delta), level)?
        }
        Variant::TwistedD3 { level } => {
            let gram = twisted_d3_gram();
            let delta = vec![q(1), q(1), q(1)];
            RootSystem::generate(spec, gram, Some(delta), level)?
        }
    };
    for root in sys.extended_roots() {
        debug_assert!(
            root.coords.iter().all(|c| Scalar::is_integer(c)),
            "crystallographic coordinates must be integers"
        );
    }
    Ok(Arc::new(sys))
}

/// Build H₃ or H₄ over ℚ(√5).
pub fn build_quadratic(spec: SystemSpec) -> Result<Arc<RootSystem<QuadScalar>>, RootSysError> {
    if !spec.is_h_type() || spec.variant != Variant::Finite {
        return Err(RootSysError::InvalidSpec(
            "quadratic coordinates are only used for finite H-types".into(),
        ));
    }
    let sys = RootSystem::generate(spec, h_gram(spec.rank), None, 0)?;
    for root in sys.roots() {
        debug_assert!(
            root.coords.iter().all(|c| c.in_golden_lattice()),
            "H-type coordinates must lie in ℤ[τ]"
        );
    }
    Ok(Arc::new(sys))
}

/// A built system of either coordinate field.
#[derive(Clone)]
pub enum AnySystem {
    Rational(Arc<RootSystem<BigRational>>),
    Quadratic(Arc<RootSystem<QuadScalar>>),
}

pub fn build_any(spec: SystemSpec) -> Result<AnySystem, RootSysError> {
    if spec.is_h_type() {
        Ok(AnySystem::Quadratic(build_quadratic(spec)?))
    } else {
        Ok(AnySystem::Rational(build_rational(spec)?))
    }
}

/// Extend the Gram matrix of an irreducible finite system by the affine node
/// α₀ = δ − θ, and return the coordinates of δ over the new base.
fn affinize(finite: &RootSystem<BigRational>) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let n = finite.rank();
    let theta = finite.highest_root();
    let mut gram = vec![vec![q(0); n + 1]; n + 1];
    for i in 0..n {
        for j in 0..n {
            gram[i + 1][j + 1] = finite.gram()[i][j].clone();
        }
    }
    // (α₀, α₀) = (θ, θ) and (α₀, αⱼ) = −(θ, αⱼ) since (δ, −) = 0.
    gram[0][0] = finite.pairing_coords(&theta, &theta);
    for j in 0..n {
        let mut unit = vec![q(0); n];
        unit[j] = q(1);
        let v = -finite.pairing_coords(&theta, &unit);
        gram[0][j + 1] = v.clone();
        gram[j + 1][0] = v;
    }
    // δ = α₀ + θ
    let mut delta = Vec::with_capacity(n + 1);
    delta.push(q(1));
    delta.extend(theta.iter().cloned());
    (gram, delta)
}
