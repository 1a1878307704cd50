//! Lattice arithmetic on weights: dominance order, Weyl orbits, subdominant
//! weights and the level stratification of dominant weights.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootdata::{GroupType, RootDatum};

/// Orbits larger than this are rejected rather than enumerated.
pub const DEFAULT_ORBIT_BOUND: u64 = 10_000_000;

/// A weight in fundamental-weight coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight {
    coords: Vec<i64>,
}

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight { coords }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn neg(&self) -> Weight {
        Weight::new(self.coords.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight::new(self.coords.iter().map(|a| a * k).collect())
    }

    /// Parses `[c1,...,cn]`.
    pub fn parse_coords(s: &str) -> Result<Weight> {
        parse_coords_at(s, 0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_coords_at(s: &str, offset: usize) -> Result<Weight> {
    let lead = s.len() - s.trim_start().len();
    let t = s.trim();
    let inner = t
        .strip_prefix('[')
        .ok_or_else(|| Error::parse(offset + lead, "expected `[`"))?;
    let inner = inner
        .strip_suffix(']')
        .ok_or_else(|| Error::parse(offset + lead + t.len(), "expected `]`"))?;
    let mut coords = Vec::new();
    let mut pos = offset + lead + 1;
    if inner.trim().is_empty() {
        return Err(Error::parse(pos, "empty coordinate list"));
    }
    for part in inner.split(',') {
        let trimmed = part.trim();
        let at = pos + (part.len() - part.trim_start().len());
        let c: i64 = trimmed
            .parse()
            .map_err(|_| Error::parse(at, format!("invalid coordinate `{trimmed}`")))?;
        coords.push(c);
        pos += part.len() + 1;
    }
    Ok(Weight::new(coords))
}

/// Parses the `FAMILYRANK:[c1,...,cn]` syntax, e.g. `C3:[0,1,0]`.
pub fn parse_bound_weight(s: &str) -> Result<(GroupType, Weight)> {
    let (ty, coords) = s
        .split_once(':')
        .ok_or_else(|| Error::parse(0, "expected `TYPE:[c1,...,cn]`"))?;
    let ty: GroupType = ty.parse()?;
    let w = parse_coords_at(coords, ty.to_string().len() + 1)?;
    if w.rank() != ty.rank {
        return Err(Error::RankMismatch {
            expected: ty.rank,
            got: w.rank(),
        });
    }
    Ok((ty, w))
}

pub fn format_bound_weight(ty: GroupType, w: &Weight) -> String {
    format!("{ty}:{w}")
}

/// Result of comparing two weights in the dominance order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Dominance {
    Equal,
    FirstSucceeds,
    SecondSucceeds,
    Incomparable,
}

/// A dominant weight together with its level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelAssignment {
    pub weight: Weight,
    pub level: u32,
}

impl RootDatum {
    /// Simple-root coefficients of `w`, or `None` if `w` is not radical.
    pub fn root_lattice_coefficients(&self, w: &Weight) -> Option<Vec<i64>> {
        let det = self.cartan_det();
        let adj = self.cartan_adjugate();
        let mut out = Vec::with_capacity(self.rank());
        for row in adj {
            let s: i64 = row.iter().zip(w.coords()).map(|(a, b)| a * b).sum();
            if s % det != 0 {
                return None;
            }
            out.push(s / det);
        }
        Some(out)
    }

    pub fn dominance_compare(&self, a: &Weight, b: &Weight) -> Result<Dominance> {
        self.check(a)?;
        self.check(b)?;
        if a == b {
            return Ok(Dominance::Equal);
        }
        Ok(match self.root_lattice_coefficients(&a.sub(b)) {
            None => Dominance::Incomparable,
            Some(c) if c.iter().all(|&x| x >= 0) => Dominance::FirstSucceeds,
            Some(c) if c.iter().all(|&x| x <= 0) => Dominance::SecondSucceeds,
            Some(_) => Dominance::Incomparable,
        })
    }

    /// `a ≺ b`.
    pub fn precedes(&self, a: &Weight, b: &Weight) -> bool {
        matches!(self.dominance_compare(b, a), Ok(Dominance::FirstSucceeds))
    }

    pub fn is_radical(&self, w: &Weight) -> bool {
        self.root_lattice_coefficients(w).is_some()
    }

    /// Height of `w` in the root lattice, if radical.
    pub fn height(&self, w: &Weight) -> Option<i64> {
        self.root_lattice_coefficients(w).map(|c| c.iter().sum())
    }

    /// Simple reflection `s_i(ν) = ν − ⟨ν, α_i^∨⟩ α_i`.
    pub fn reflect(&self, w: &Weight, i: usize) -> Weight {
        let k = w.coords()[i];
        if k == 0 {
            return w.clone();
        }
        let cartan = self.cartan();
        Weight::new(
            w.coords()
                .iter()
                .enumerate()
                .map(|(r, &c)| c - k * cartan[r][i])
                .collect(),
        )
    }

    /// The dominant weight in the orbit of `w` and a word of simple
    /// reflections taking `w` to it (applied left to right).
    pub fn dominant_representative(&self, w: &Weight) -> (Weight, Vec<usize>) {
        let mut cur = w.clone();
        let mut word = Vec::new();
        while let Some(i) = cur.coords().iter().position(|&c| c < 0) {
            cur = self.reflect(&cur, i);
            word.push(i);
        }
        (cur, word)
    }

    pub fn dominant_rep(&self, w: &Weight) -> Weight {
        let mut cur = w.clone();
        while let Some(i) = cur.coords().iter().position(|&c| c < 0) {
            let k = cur.coords[i];
            let cartan = self.cartan();
            for (r, c) in cur.coords.iter_mut().enumerate() {
                *c -= k * cartan[r][i];
            }
        }
        cur
    }

    /// Order of the Weyl group of the parabolic subsystem on `nodes`.
    pub fn parabolic_weyl_order(&self, nodes: &[bool]) -> u128 {
        // Exponents are the dual partition of the root-height distribution.
        let mut by_height: Vec<u64> = Vec::new();
        for k in 0..self.positive_roots().len() {
            let c = self.root_coefficients(k);
            if c.iter().enumerate().any(|(i, &x)| x != 0 && !nodes[i]) {
                continue;
            }
            let h = c.iter().sum::<i64>() as usize;
            if by_height.len() < h {
                by_height.resize(h, 0);
            }
            by_height[h - 1] += 1;
        }
        let mut order: u128 = 1;
        for (idx, &m) in by_height.iter().enumerate() {
            let next = by_height.get(idx + 1).copied().unwrap_or(0);
            let k = idx as u32 + 1;
            order *= (k as u128 + 1).pow((m - next) as u32);
        }
        order
    }

    pub fn weyl_group_order(&self) -> u128 {
        self.parabolic_weyl_order(&vec![true; self.rank()])
    }

    /// Size of the Weyl orbit of `w`, from the stabiliser of its dominant representative.
    pub fn orbit_size(&self, w: &Weight) -> u128 {
        let dom = self.dominant_rep(w);
        let stab: Vec<bool> = dom.coords().iter().map(|&c| c == 0).collect();
        self.weyl_group_order() / self.parabolic_weyl_order(&stab)
    }

    pub fn weyl_orbit(&self, w: &Weight) -> Result<Vec<Weight>> {
        self.weyl_orbit_bounded(w, DEFAULT_ORBIT_BOUND)
    }

    /// Full Weyl orbit of `w`, sorted. Rejects orbits larger than `bound`.
    pub fn weyl_orbit_bounded(&self, w: &Weight, bound: u64) -> Result<Vec<Weight>> {
        self.check(w)?;
        let size = self.orbit_size(w);
        if size > bound as u128 {
            return Err(Error::resource(
                format!("Weyl orbit of {w} ({size} elements)"),
                bound,
            ));
        }
        let dom = self.dominant_rep(w);
        let mut all = vec![dom.clone()];
        let mut layer = vec![dom];
        // Walk down from the dominant weight, reflecting only positive coordinates.
        while !layer.is_empty() {
            let mut seen = HashSet::new();
            let mut next = Vec::new();
            for v in &layer {
                for i in 0..self.rank() {
                    if v.coords()[i] > 0 {
                        let u = self.reflect(v, i);
                        if seen.insert(u.clone()) {
                            next.push(u);
                        }
                    }
                }
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        all.sort();
        debug_assert_eq!(all.len() as u128, size);
        Ok(all)
    }

    fn require_dominant(&self, w: &Weight) -> Result<()> {
        self.check(w)?;
        if w.is_dominant() {
            Ok(())
        } else {
            Err(Error::NotDominant(w.to_string()))
        }
    }

    /// All dominant `μ ⪯ λ`, including `λ`, ordered from `λ` downwards
    /// (by depth `ht(λ − μ)`, then coordinates descending).
    pub fn subdominant_weights(&self, lambda: &Weight) -> Result<Vec<Weight>> {
        Ok(self
            .subdominant_with_depth(lambda)?
            .into_iter()
            .map(|(w, _)| w)
            .collect())
    }

    /// Like [`subdominant_weights`](Self::subdominant_weights), paired with `ht(λ − μ)`.
    pub fn subdominant_with_depth(&self, lambda: &Weight) -> Result<Vec<(Weight, i64)>> {
        self.require_dominant(lambda)?;
        // Any dominant μ ⪯ λ is reached from λ by a chain of dominant weights,
        // each obtained from the previous one by subtracting a positive root.
        let roots: Vec<(Weight, i64)> = (0..self.positive_roots().len())
            .map(|k| {
                (
                    self.positive_roots()[k].clone(),
                    self.root_coefficients(k).iter().sum(),
                )
            })
            .collect();
        let mut depth: HashMap<Weight, i64> = HashMap::new();
        depth.insert(lambda.clone(), 0);
        let mut stack = vec![(lambda.clone(), 0i64)];
        while let Some((w, d)) = stack.pop() {
            for (r, h) in &roots {
                let u = w.sub(r);
                if u.is_dominant() && !depth.contains_key(&u) {
                    depth.insert(u.clone(), d + h);
                    stack.push((u, d + h));
                }
            }
        }
        let mut out: Vec<(Weight, i64)> = depth.into_iter().collect();
        out.sort_by(|(a, da), (b, db)| da.cmp(db).then_with(|| b.cmp(a)));
        Ok(out)
    }

    /// The ≺-minimal non-zero dominant weights below `λ`. Returns `None`
    /// when `λ` itself is the only one (no proper non-zero subdominant weight).
    pub fn minimal_nonzero_subdominant(&self, lambda: &Weight) -> Result<Option<Vec<Weight>>> {
        self.require_dominant(lambda)?;
        if lambda.is_zero() {
            return Err(Error::InvalidInput(
                "the zero weight has no non-zero subdominant weight".into(),
            ));
        }
        let nonzero: Vec<Weight> = self
            .subdominant_weights(lambda)?
            .into_iter()
            .filter(|w| !w.is_zero())
            .collect();
        let minimal: Vec<Weight> = nonzero
            .iter()
            .filter(|m| !nonzero.iter().any(|n| self.precedes(n, m)))
            .cloned()
            .collect();
        if minimal.len() == 1 && &minimal[0] == lambda {
            Ok(None)
        } else {
            Ok(Some(minimal))
        }
    }

    pub fn weight_level(&self, lambda: &Weight) -> Result<u32> {
        LevelCache::new(self).level(lambda)
    }

    /// Non-zero weights of level 1.
    pub fn is_minuscule(&self, lambda: &Weight) -> bool {
        lambda.rank() == self.rank()
            && lambda.is_dominant()
            && !lambda.is_zero()
            && self.weight_level(lambda) == Ok(1)
    }

    /// All dominant weights with coordinate sum at most `height_bound` and
    /// level at most `max_level`, each with its level.
    pub fn level_sets(&self, max_level: u32, height_bound: u32) -> Vec<LevelAssignment> {
        let mut cache = LevelCache::new(self);
        dominant_weights_up_to(self.rank(), height_bound as i64)
            .into_iter()
            .filter_map(|w| {
                let level = cache.level(&w).expect("dominant weight");
                (level <= max_level).then_some(LevelAssignment { weight: w, level })
            })
            .collect()
    }
}

/// Memoised weight levels for one root datum.
pub struct LevelCache<'a> {
    datum: &'a RootDatum,
    levels: HashMap<Weight, u32>,
}

impl<'a> LevelCache<'a> {
    pub fn new(datum: &'a RootDatum) -> Self {
        LevelCache {
            datum,
            levels: HashMap::new(),
        }
    }

    pub fn level(&mut self, lambda: &Weight) -> Result<u32> {
        if let Some(&l) = self.levels.get(lambda) {
            return Ok(l);
        }
        let below = self.datum.subdominant_weights(lambda)?;
        // Deepest weights first, so every ν ≺ μ is settled before μ.
        for (idx, mu) in below.iter().enumerate().rev() {
            if self.levels.contains_key(mu) {
                continue;
            }
            let mut best = 0;
            for nu in &below[idx + 1..] {
                if self.datum.precedes(nu, mu) {
                    best = best.max(self.levels[nu]);
                }
            }
            self.levels.insert(mu.clone(), best + 1);
        }
        Ok(self.levels[lambda])
    }
}

/// Dominant weights of the given rank with coordinate sum at most `bound`,
/// in lexicographic order.
pub fn dominant_weights_up_to(rank: usize, bound: i64) -> Vec<Weight> {
    fn rec(rank: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Weight>) {
        if cur.len() == rank {
            out.push(Weight::new(cur.clone()));
            return;
        }
        for c in 0..=left {
            cur.push(c);
            rec(rank, left - c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(rank, bound, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(s: &str) -> RootDatum {
        RootDatum::from_type(s.parse().unwrap())
    }

    fn w(c: &[i64]) -> Weight {
        Weight::new(c.to_vec())
    }

    #[test]
    fn dominance_examples() {
        let a2 = datum("A2");
        assert_eq!(
            a2.dominance_compare(&w(&[2, 0]), &w(&[0, 1])).unwrap(),
            Dominance::FirstSucceeds
        );
        assert_eq!(
            a2.root_lattice_coefficients(&w(&[2, -1])).unwrap(),
            vec![1, 0]
        );
        assert_eq!(
            a2.dominance_compare(&w(&[1, 0]), &w(&[0, 1])).unwrap(),
            Dominance::Incomparable
        );
        assert_eq!(
            a2.dominance_compare(&w(&[1, 1]), &w(&[1, 1])).unwrap(),
            Dominance::Equal
        );
        assert!(matches!(
            a2.dominance_compare(&w(&[1]), &w(&[0, 1])),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn radical_examples() {
        let b3 = datum("B3");
        assert!(b3.is_radical(&w(&[0, 1, 0])));
        assert!(!b3.is_radical(&w(&[0, 0, 1])));
        assert!(b3.is_radical(&b3.zero()));
    }

    #[test]
    fn orbit_examples() {
        let a2 = datum("A2");
        let orbit = a2.weyl_orbit(&w(&[1, 0])).unwrap();
        assert_eq!(orbit, vec![w(&[-1, 1]), w(&[0, -1]), w(&[1, 0])]);
        assert_eq!(a2.weyl_orbit(&a2.zero()).unwrap(), vec![a2.zero()]);
        let b3 = datum("B3");
        let spin = b3.weyl_orbit(&w(&[0, 0, 1])).unwrap();
        assert_eq!(spin.len(), 8);
        let half = crate::rational::Q::new(1, 2);
        for v in &spin {
            let eps = b3.epsilon_values(v).unwrap();
            assert!(eps.iter().all(|e| *e == half || *e == -half));
        }
    }

    #[test]
    fn orbit_bound_is_enforced() {
        let e8 = datum("E8");
        let err = e8.weyl_orbit(&e8.rho().clone()).unwrap_err();
        assert!(err.is_resource_limit());
        assert!(err.to_string().contains("10000000"));
        assert_eq!(e8.weyl_group_order(), 696_729_600);
        assert_eq!(e8.weyl_orbit(e8.highest_root()).unwrap().len(), 240);
    }

    #[test]
    fn weyl_group_orders() {
        for (s, order) in [
            ("A3", 24u128),
            ("B3", 48),
            ("C4", 384),
            ("D4", 192),
            ("G2", 12),
            ("F4", 1152),
            ("E6", 51840),
            ("E7", 2_903_040),
        ] {
            assert_eq!(datum(s).weyl_group_order(), order, "{s}");
        }
    }

    #[test]
    fn dominant_representative_word_replays() {
        let b2 = datum("B2");
        let start = w(&[0, -1]);
        let (rep, word) = b2.dominant_representative(&start);
        assert!(rep.is_dominant());
        let replay = word.iter().fold(start.clone(), |v, &i| b2.reflect(&v, i));
        assert_eq!(replay, rep);
        assert!(b2.weyl_orbit(&start).unwrap().contains(&rep));
        let (same, empty) = b2.dominant_representative(&w(&[1, 1]));
        assert_eq!(same, w(&[1, 1]));
        assert!(empty.is_empty());
    }

    #[test]
    fn subdominant_examples() {
        let a2 = datum("A2");
        assert_eq!(
            a2.subdominant_weights(&w(&[1, 1])).unwrap(),
            vec![w(&[1, 1]), w(&[0, 0])]
        );
        let c2 = datum("C2");
        assert_eq!(
            c2.subdominant_weights(&w(&[0, 1])).unwrap(),
            vec![w(&[0, 1]), w(&[0, 0])]
        );
        assert_eq!(c2.subdominant_weights(&w(&[1, 0])).unwrap(), vec![w(&[1, 0])]);
        assert!(matches!(
            c2.subdominant_weights(&w(&[1, -1])),
            Err(Error::NotDominant(_))
        ));
    }

    #[test]
    fn minimal_nonzero_examples() {
        let b3 = datum("B3");
        assert_eq!(
            b3.minimal_nonzero_subdominant(&w(&[0, 1, 0])).unwrap(),
            Some(vec![w(&[1, 0, 0])])
        );
        assert_eq!(b3.minimal_nonzero_subdominant(&w(&[0, 0, 1])).unwrap(), None);
        let c2 = datum("C2");
        assert_eq!(
            c2.minimal_nonzero_subdominant(&w(&[2, 0])).unwrap(),
            Some(vec![w(&[0, 1])])
        );
        assert!(c2.minimal_nonzero_subdominant(&c2.zero()).is_err());
    }

    #[test]
    fn level_examples() {
        let c4 = datum("C4");
        assert_eq!(c4.weight_level(&w(&[1, 0, 0, 0])).unwrap(), 1);
        assert_eq!(c4.weight_level(&w(&[0, 1, 0, 0])).unwrap(), 2);
        assert_eq!(c4.weight_level(&w(&[0, 0, 0, 1])).unwrap(), 3);
        let b3 = datum("B3");
        assert_eq!(b3.weight_level(&w(&[1, 0, 0])).unwrap(), 2);
        assert_eq!(b3.weight_level(&b3.zero()).unwrap(), 1);
    }

    #[test]
    fn minuscule_examples() {
        let d5 = datum("D5");
        assert!(d5.is_minuscule(&w(&[0, 0, 0, 1, 0])));
        assert!(d5.is_minuscule(&w(&[0, 0, 0, 0, 1])));
        assert!(!datum("B3").is_minuscule(&w(&[1, 0, 0])));
        assert!(!d5.is_minuscule(&d5.zero()));
    }

    #[test]
    fn parse_round_trip_and_positions() {
        let (ty, wt) = parse_bound_weight("C3:[0,1,0]").unwrap();
        assert_eq!(ty.to_string(), "C3");
        assert_eq!(format_bound_weight(ty, &wt), "C3:[0,1,0]");
        assert_eq!(
            parse_bound_weight("C3:[0,x,0]"),
            Err(Error::Parse {
                position: 6,
                message: "invalid coordinate `x`".into()
            })
        );
        assert!(matches!(
            parse_bound_weight("C3:[0,1]"),
            Err(Error::RankMismatch { .. })
        ));
        assert!(matches!(Weight::parse_coords("0,1]"), Err(Error::Parse { position: 0, .. })));
    }
}
