//! Root data of the simple types, built from Dynkin diagrams with Bourbaki
//! node numbering.
//!
//! Conventions used throughout the crate:
//!
//! * a weight `μ` is stored as the integer vector `(⟨μ, α_1^∨⟩, …, ⟨μ, α_n^∨⟩)`
//!   (coordinates in the fundamental-weight basis);
//! * `cartan[i][j] = ⟨α_j, α_i^∨⟩`, so the simple root `α_j` in ω-coordinates
//!   is the `j`-th column of the Cartan matrix;
//! * the invariant form is normalised so that short roots have squared
//!   length 2 (long roots 4, or 6 in `G2`).

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Q};
use crate::weights::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    pub fn is_classical(self) -> bool {
        matches!(self, Family::A | Family::B | Family::C | Family::D)
    }

    /// Whether `(self, rank)` names a supported simple type.
    pub fn supports_rank(self, rank: usize) -> bool {
        match self {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A simple type such as `C3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupType {
    pub family: Family,
    pub rank: usize,
}

impl GroupType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if family.supports_rank(rank) {
            Ok(GroupType { family, rank })
        } else {
            Err(Error::UnsupportedType {
                family: family.letter(),
                rank,
            })
        }
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for GroupType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars
            .next()
            .ok_or_else(|| Error::parse(0, "empty group type"))?;
        let family = Family::from_letter(letter)
            .ok_or_else(|| Error::parse(0, format!("unknown family `{letter}`")))?;
        let digits = chars.as_str();
        let rank: usize = digits
            .parse()
            .map_err(|_| Error::parse(1, format!("invalid rank `{digits}` in `{s}`")))?;
        GroupType::new(family, rank)
    }
}

/// Immutable description of a simple root system.
#[derive(Debug, Clone)]
pub struct RootDatum {
    family: Family,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    cartan_det: i64,
    /// `cartan_det · C^{-1}`, an integer matrix.
    cartan_adj: Vec<Vec<i64>>,
    /// Half squared lengths `(α_i, α_i)/2` of the simple roots.
    half_lengths: Vec<i64>,
    simple_roots: Vec<Weight>,
    positive_roots: Vec<Weight>,
    /// Simple-root coefficients of each positive root, same order as `positive_roots`.
    root_coefficients: Vec<Vec<i64>>,
    root_index: HashMap<Weight, usize>,
    form_matrix: Vec<Vec<Q>>,
    form_scale: i64,
    /// `form_scale · form_matrix`, an integer matrix.
    form_scaled: Vec<Vec<i64>>,
    rho: Weight,
    highest_root: Weight,
    highest_short_root: Weight,
    epsilon_map: Option<Vec<Vec<Q>>>,
}

impl RootDatum {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ty = GroupType::new(family, rank)?;
        Ok(Self::build(ty))
    }

    pub fn from_type(ty: GroupType) -> Self {
        Self::build(ty)
    }

    fn build(ty: GroupType) -> Self {
        let GroupType { family, rank: n } = ty;
        let (half_lengths, edges) = dynkin(family, n);

        let mut cartan = vec![vec![0i64; n]; n];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(i, j) in &edges {
            // (α_i, α_j) = -max(d_i, d_j) for adjacent nodes.
            let ip = -half_lengths[i].max(half_lengths[j]);
            cartan[i][j] = ip / half_lengths[i];
            cartan[j][i] = ip / half_lengths[j];
        }

        let cartan_det = rational::determinant(&cartan);
        let inv = rational::inverse(&cartan).expect("Cartan matrices are nonsingular");
        let cartan_adj: Vec<Vec<i64>> = inv
            .iter()
            .map(|row| {
                row.iter()
                    .map(|q| {
                        let x = *q * Q::from_integer(cartan_det);
                        debug_assert!(x.is_integer());
                        x.to_integer()
                    })
                    .collect()
            })
            .collect();

        // form = D · C^{-1}
        let form_matrix: Vec<Vec<Q>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| inv[i][j] * Q::from_integer(half_lengths[i]))
                    .collect()
            })
            .collect();
        let form_scale = rational::common_denominator(&form_matrix);
        let form_scaled = form_matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(|q| (*q * Q::from_integer(form_scale)).to_integer())
                    .collect()
            })
            .collect();

        let simple_roots: Vec<Weight> = (0..n)
            .map(|j| Weight::new((0..n).map(|i| cartan[i][j]).collect()))
            .collect();

        let root_coefficients = positive_root_coefficients(&cartan);
        let positive_roots: Vec<Weight> = root_coefficients
            .iter()
            .map(|c| {
                Weight::new(
                    (0..n)
                        .map(|i| (0..n).map(|j| cartan[i][j] * c[j]).sum())
                        .collect(),
                )
            })
            .collect();
        let root_index = positive_roots
            .iter()
            .enumerate()
            .map(|(k, r)| (r.clone(), k))
            .collect();

        let mut datum = RootDatum {
            family,
            rank: n,
            cartan,
            cartan_det,
            cartan_adj,
            half_lengths,
            simple_roots,
            positive_roots,
            root_coefficients,
            root_index,
            form_matrix,
            form_scale,
            form_scaled,
            rho: Weight::new(vec![1; n]),
            highest_root: Weight::new(vec![0; n]),
            highest_short_root: Weight::new(vec![0; n]),
            epsilon_map: epsilon_map(family, n),
        };

        let height = |k: usize| -> i64 { datum.root_coefficients[k].iter().sum() };
        let top = (0..datum.positive_roots.len())
            .max_by_key(|&k| height(k))
            .expect("at least one root");
        let short_len = datum
            .positive_roots
            .iter()
            .map(|r| datum.form_scaled_value(r, r))
            .min()
            .expect("at least one root");
        let top_short = (0..datum.positive_roots.len())
            .filter(|&k| {
                let r = &datum.positive_roots[k];
                datum.form_scaled_value(r, r) == short_len
            })
            .max_by_key(|&k| height(k))
            .expect("at least one short root");
        datum.highest_root = datum.positive_roots[top].clone();
        datum.highest_short_root = datum.positive_roots[top_short].clone();
        datum
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn group_type(&self) -> GroupType {
        GroupType {
            family: self.family,
            rank: self.rank,
        }
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    pub fn simple_root(&self, i: usize) -> &Weight {
        &self.simple_roots[i]
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    /// Simple-root coefficients of the `k`-th positive root.
    pub fn root_coefficients(&self, k: usize) -> &[i64] {
        &self.root_coefficients[k]
    }

    /// Index of `w` in `positive_roots`, if it is a positive root.
    pub fn positive_root_index(&self, w: &Weight) -> Option<usize> {
        self.root_index.get(w).copied()
    }

    pub fn is_root(&self, w: &Weight) -> bool {
        self.root_index.contains_key(w) || self.root_index.contains_key(&w.neg())
    }

    pub fn form_matrix(&self) -> &[Vec<Q>] {
        &self.form_matrix
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn highest_root(&self) -> &Weight {
        &self.highest_root
    }

    pub fn highest_short_root(&self) -> &Weight {
        &self.highest_short_root
    }

    pub fn zero(&self) -> Weight {
        Weight::new(vec![0; self.rank])
    }

    /// The fundamental weight `ω_i` (0-based index).
    pub fn fundamental(&self, i: usize) -> Weight {
        let mut c = vec![0; self.rank];
        c[i] = 1;
        Weight::new(c)
    }

    /// Builds a weight after checking its length against the rank.
    pub fn weight(&self, coords: Vec<i64>) -> Result<Weight> {
        if coords.len() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                got: coords.len(),
            });
        }
        Ok(Weight::new(coords))
    }

    pub(crate) fn check(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank {
            Err(Error::RankMismatch {
                expected: self.rank,
                got: w.rank(),
            })
        } else {
            Ok(())
        }
    }

    pub fn half_lengths(&self) -> &[i64] {
        &self.half_lengths
    }

    pub fn cartan_det(&self) -> i64 {
        self.cartan_det
    }

    /// `det(C) · C^{-1}`; applied to a weight it gives `det(C)` times its
    /// simple-root coefficients.
    pub fn cartan_adjugate(&self) -> &[Vec<i64>] {
        &self.cartan_adj
    }

    pub fn form_scale(&self) -> i64 {
        self.form_scale
    }

    /// `form_scale · (μ, ν)` as an exact integer.
    pub fn form_scaled_value(&self, mu: &Weight, nu: &Weight) -> i64 {
        let (a, b) = (mu.coords(), nu.coords());
        let mut total = 0i64;
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            let mut row = 0i64;
            for j in 0..self.rank {
                row += self.form_scaled[i][j] * b[j];
            }
            total += a[i] * row;
        }
        total
    }

    /// The invariant form `(μ, ν)`.
    pub fn form(&self, mu: &Weight, nu: &Weight) -> Q {
        Q::new(self.form_scaled_value(mu, nu), self.form_scale)
    }

    /// `1` for A/D/E, `2` for B/C/F, `3` for G.
    pub fn e_constant(&self) -> u32 {
        match self.family {
            Family::A | Family::D | Family::E => 1,
            Family::B | Family::C | Family::F => 2,
            Family::G => 3,
        }
    }

    /// Number of ε-coordinates (rank + 1 for type A).
    pub fn epsilon_dim(&self) -> Option<usize> {
        self.epsilon_map.as_ref().map(|m| m.len())
    }

    /// Matrix whose column `i` holds `ω_i` in ε-coordinates.
    pub fn epsilon_map(&self) -> Option<&[Vec<Q>]> {
        self.epsilon_map.as_deref()
    }

    /// ε-coordinates of a weight. Type A uses the sum-zero representative.
    pub fn epsilon_values(&self, mu: &Weight) -> Result<Vec<Q>> {
        self.check(mu)?;
        let m = self
            .epsilon_map
            .as_ref()
            .ok_or(Error::UnsupportedConversion(self.family.letter()))?;
        Ok(m.iter()
            .map(|row| {
                row.iter()
                    .zip(mu.coords())
                    .fold(Q::zero(), |acc, (e, &c)| acc + *e * Q::from_integer(c))
            })
            .collect())
    }

    /// Simple coroots in ε-coordinates (standard dot product).
    pub fn epsilon_coroots(&self) -> Result<Vec<Vec<Q>>> {
        let dim = self
            .epsilon_dim()
            .ok_or(Error::UnsupportedConversion(self.family.letter()))?;
        let n = self.rank;
        let unit = |k: usize, x: i64| {
            let mut v = vec![Q::zero(); dim];
            v[k] = Q::from_integer(x);
            v
        };
        let diff = |i: usize, j: usize, sj: i64| {
            let mut v = unit(i, 1);
            v[j] += Q::from_integer(sj);
            v
        };
        Ok((0..n)
            .map(|i| match self.family {
                Family::A => diff(i, i + 1, -1),
                Family::B if i == n - 1 => unit(i, 2),
                Family::C if i == n - 1 => unit(i, 1),
                Family::D if i == n - 1 => diff(n - 2, n - 1, 1),
                _ => diff(i, i + 1, -1),
            })
            .collect())
    }

    /// Converts ε-coordinates back to a lattice weight; fails if the vector
    /// is not in the weight lattice.
    pub fn weight_from_epsilon(&self, eps: &[Q]) -> Result<Weight> {
        let coroots = self.epsilon_coroots()?;
        let dim = self.epsilon_dim().unwrap_or(0);
        if eps.len() != dim {
            return Err(Error::InvalidInput(format!(
                "expected {dim} epsilon coordinates, got {}",
                eps.len()
            )));
        }
        let mut coords = Vec::with_capacity(self.rank);
        for cr in &coroots {
            let v = cr
                .iter()
                .zip(eps)
                .fold(Q::zero(), |acc, (a, b)| acc + *a * *b);
            if !v.is_integer() {
                return Err(Error::InvalidInput(format!(
                    "epsilon vector is not in the weight lattice of {}",
                    self.group_type()
                )));
            }
            coords.push(v.to_integer());
        }
        if self.family != Family::A {
            // Types B, C, D: ε-coordinates are a basis, so the conversion must round-trip.
            let back = self.epsilon_values(&Weight::new(coords.clone()))?;
            if back != eps {
                return Err(Error::InvalidInput(
                    "epsilon vector is not in the weight lattice".into(),
                ));
            }
        }
        Ok(Weight::new(coords))
    }
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// Half squared lengths and edges of the Dynkin diagram (0-based nodes).
fn dynkin(family: Family, n: usize) -> (Vec<i64>, Vec<(usize, usize)>) {
    let chain = |len: usize| (0..len - 1).map(|i| (i, i + 1)).collect::<Vec<_>>();
    match family {
        Family::A => (vec![1; n], chain(n)),
        Family::B => {
            let mut d = vec![2; n];
            d[n - 1] = 1;
            (d, chain(n))
        }
        Family::C => {
            let mut d = vec![1; n];
            d[n - 1] = 2;
            (d, chain(n))
        }
        Family::D => {
            let mut e = chain(n - 1);
            e.push((n - 3, n - 1));
            (vec![1; n], e)
        }
        Family::E => {
            // 1-3-4-5-6-7-8 with 2 attached to 4 (Bourbaki numbering).
            let mut e = vec![(0, 2), (2, 3), (1, 3)];
            for i in 3..n - 1 {
                e.push((i, i + 1));
            }
            (vec![1; n], e)
        }
        Family::F => (vec![2, 2, 1, 1], chain(4)),
        Family::G => (vec![1, 3], chain(2)),
    }
}

/// Positive roots as simple-root coefficient vectors, sorted by height then
/// lexicographically.
fn positive_root_coefficients(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let unit = |i: usize| {
        let mut v = vec![0i64; n];
        v[i] = 1;
        v
    };
    let pairing = |c: &[i64], i: usize| -> i64 { (0..n).map(|j| cartan[i][j] * c[j]).sum() };

    let mut roots: Vec<Vec<i64>> = (0..n).map(unit).collect();
    let mut known: HashSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut layer = roots.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..n {
                // Length p of the α_i-string below β.
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if known.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let q = p - pairing(beta, i);
                if q > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if known.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        roots.extend(next.iter().cloned());
        layer = next;
    }
    roots.sort_by(|a, b| {
        let (ha, hb): (i64, i64) = (a.iter().sum(), b.iter().sum());
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    roots
}

/// Column `i` is `ω_i` in Bourbaki ε-coordinates (rows are ε_1, ε_2, …).
fn epsilon_map(family: Family, n: usize) -> Option<Vec<Vec<Q>>> {
    let half = Q::new(1, 2);
    let (dim, cols): (usize, Vec<Vec<Q>>) = match family {
        Family::A => {
            let dim = n + 1;
            let cols = (1..=n)
                .map(|i| {
                    let shift = Q::new(i as i64, dim as i64);
                    (1..=dim)
                        .map(|k| if k <= i { Q::one() - shift } else { -shift })
                        .collect()
                })
                .collect();
            (dim, cols)
        }
        Family::B | Family::C | Family::D => {
            let cols = (1..=n)
                .map(|i| {
                    (1..=n)
                        .map(|k| match family {
                            Family::B if i == n => half,
                            Family::D if i == n => half,
                            Family::D if i == n - 1 => {
                                if k == n {
                                    -half
                                } else {
                                    half
                                }
                            }
                            _ => {
                                if k <= i {
                                    Q::one()
                                } else {
                                    Q::zero()
                                }
                            }
                        })
                        .collect()
                })
                .collect();
            (n, cols)
        }
        _ => return None,
    };
    Some(
        (0..dim)
            .map(|k| (0..n).map(|i| cols[i][k]).collect())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(s: &str) -> RootDatum {
        RootDatum::from_type(s.parse().unwrap())
    }

    #[test]
    fn rank_one() {
        let a1 = datum("A1");
        assert_eq!(a1.cartan(), &[vec![2]]);
        assert_eq!(a1.positive_roots(), &[Weight::new(vec![2])]);
    }

    #[test]
    fn g2_roots() {
        let g2 = datum("G2");
        assert_eq!(g2.positive_roots().len(), 6);
        assert_eq!(g2.highest_root(), &Weight::new(vec![0, 1]));
        assert_eq!(g2.highest_short_root(), &Weight::new(vec![1, 0]));
    }

    #[test]
    fn c3_highest_root_is_twice_eps1() {
        let c3 = datum("C3");
        assert_eq!(c3.positive_roots().len(), 9);
        assert_eq!(c3.highest_root(), &Weight::new(vec![2, 0, 0]));
        let eps = c3.epsilon_values(c3.highest_root()).unwrap();
        assert_eq!(eps, vec![Q::from_integer(2), Q::zero(), Q::zero()]);
    }

    #[test]
    fn root_counts() {
        for (s, count) in [
            ("A4", 10),
            ("B4", 16),
            ("C5", 25),
            ("D5", 20),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
            ("F4", 24),
            ("G2", 6),
        ] {
            assert_eq!(datum(s).positive_roots().len(), count, "{s}");
        }
    }

    #[test]
    fn e_constant_by_family() {
        assert_eq!(datum("A5").e_constant(), 1);
        assert_eq!(datum("F4").e_constant(), 2);
        assert_eq!(datum("G2").e_constant(), 3);
        assert_eq!(datum("E7").e_constant(), 1);
    }

    #[test]
    fn epsilon_examples() {
        let c2 = datum("C2");
        assert_eq!(
            c2.epsilon_values(&Weight::new(vec![0, 1])).unwrap(),
            vec![Q::one(), Q::one()]
        );
        let b3 = datum("B3");
        assert_eq!(
            b3.epsilon_values(&Weight::new(vec![0, 0, 1])).unwrap(),
            vec![Q::new(1, 2); 3]
        );
        let a3 = datum("A3");
        assert_eq!(
            a3.epsilon_values(&Weight::new(vec![1, 0, 0])).unwrap(),
            vec![Q::new(3, 4), Q::new(-1, 4), Q::new(-1, 4), Q::new(-1, 4)]
        );
    }

    #[test]
    fn epsilon_unsupported_for_exceptional() {
        let f4 = datum("F4");
        assert_eq!(
            f4.epsilon_values(&f4.zero()),
            Err(Error::UnsupportedConversion('F'))
        );
    }

    #[test]
    fn unsupported_types_are_rejected() {
        for s in ["B1", "C1", "D3", "E5", "E9", "F3", "G3", "A0"] {
            let err = s.parse::<GroupType>().unwrap_err();
            assert!(matches!(err, Error::UnsupportedType { .. }), "{s}");
            assert!(err.to_string().contains("D_n (n>=4)"));
        }
        assert!(matches!("X3".parse::<GroupType>(), Err(Error::Parse { .. })));
    }

    #[test]
    fn epsilon_round_trip_spin_weight() {
        let d5 = datum("D5");
        let w = Weight::new(vec![0, 1, 0, 1, 0]);
        let eps = d5.epsilon_values(&w).unwrap();
        assert_eq!(d5.weight_from_epsilon(&eps).unwrap(), w);
        let half_odd = vec![Q::new(1, 2), Q::zero(), Q::zero(), Q::zero(), Q::zero()];
        assert!(d5.weight_from_epsilon(&half_odd).is_err());
    }
}
