//! Weight sets and characteristic-0 weight multiplicities of irreducible
//! modules: Premet weight sets, the Freudenthal recursion and the Weyl
//! dimension formula.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootdata::RootDatum;
use crate::weights::{Weight, DEFAULT_ORBIT_BOUND};

/// Attached to every report built from these multiplicities.
pub const VALIDITY_BANNER: &str =
    "weight set valid for p=0 or p>e(G); multiplicities are characteristic-0 values";

/// Modules of larger dimension are rejected before expansion.
pub const DEFAULT_DIMENSION_BOUND: u64 = 5_000_000;

/// Weights of `V_λ` with multiplicities, sorted from `λ` downwards
/// (depth `ht(λ − μ)` ascending, then coordinates descending).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightMultiset {
    highest: Weight,
    entries: Vec<(Weight, u64)>,
}

impl WeightMultiset {
    pub fn highest(&self) -> &Weight {
        &self.highest
    }

    pub fn entries(&self) -> &[(Weight, u64)] {
        &self.entries
    }

    pub fn dim(&self) -> u64 {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn multiplicity(&self, w: &Weight) -> u64 {
        self.entries
            .iter()
            .find(|(v, _)| v == w)
            .map_or(0, |(_, m)| *m)
    }

    pub fn support(&self) -> BTreeSet<Weight> {
        self.entries.iter().map(|(w, _)| w.clone()).collect()
    }

    /// True when every non-zero weight has multiplicity 1.
    pub fn nonzero_weights_multiplicity_free(&self) -> bool {
        self.entries.iter().all(|(w, m)| w.is_zero() || *m == 1)
    }
}

/// Multiplicities of the dominant weights of `V_λ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominantMultiplicities {
    pub highest: Weight,
    /// `(μ, ht(λ − μ), m(μ))`, from `λ` downwards.
    pub entries: Vec<(Weight, i64, u64)>,
}

impl DominantMultiplicities {
    pub fn get(&self, w: &Weight) -> u64 {
        self.entries
            .iter()
            .find(|(v, _, _)| v == w)
            .map_or(0, |(_, _, m)| *m)
    }
}

impl RootDatum {
    /// `Ω(V_λ)`: all Weyl conjugates of dominant weights `μ ⪯ λ`, sorted.
    pub fn premet_weight_set(&self, lambda: &Weight) -> Result<Vec<Weight>> {
        let mut out = Vec::new();
        for mu in self.subdominant_weights(lambda)? {
            out.extend(self.weyl_orbit_bounded(&mu, DEFAULT_ORBIT_BOUND)?);
        }
        out.sort();
        Ok(out)
    }

    /// Weyl dimension formula `Π_{α>0} (λ+ρ, α) / (ρ, α)`.
    pub fn weyl_dimension(&self, lambda: &Weight) -> Result<BigInt> {
        self.check(lambda)?;
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.to_string()));
        }
        let shifted = lambda.add(self.rho());
        let mut acc = BigRational::one();
        for alpha in self.positive_roots() {
            let num = self.form_scaled_value(&shifted, alpha);
            let den = self.form_scaled_value(self.rho(), alpha);
            acc *= BigRational::new(BigInt::from(num), BigInt::from(den));
        }
        assert!(acc.is_integer(), "Weyl dimension must be integral");
        Ok(acc.to_integer())
    }

    /// Weyl dimension as `u64`, or a resource error if it does not fit.
    pub fn weyl_dimension_u64(&self, lambda: &Weight) -> Result<u64> {
        self.weyl_dimension(lambda)?
            .to_u64()
            .ok_or_else(|| Error::resource(format!("dimension of V_{lambda}"), u64::MAX))
    }

    /// Freudenthal recursion on the dominant weights of `V_λ`.
    pub fn dominant_multiplicities(&self, lambda: &Weight) -> Result<DominantMultiplicities> {
        let layers = self.subdominant_with_depth(lambda)?;
        let shifted = lambda.add(self.rho());
        let top = self.form_scaled_value(&shifted, &shifted) as i128;
        let roots = self.positive_roots();

        let mut known: HashMap<Weight, u64> = HashMap::with_capacity(layers.len());
        let mut entries = Vec::with_capacity(layers.len());
        for (mu, depth) in layers {
            let m = if depth == 0 {
                1
            } else {
                let mut sum: i128 = 0;
                for alpha in roots {
                    let mut v = mu.add(alpha);
                    loop {
                        let rep = self.dominant_rep(&v);
                        let Some(&mv) = known.get(&rep) else { break };
                        sum += mv as i128 * self.form_scaled_value(&v, alpha) as i128;
                        v = v.add(alpha);
                    }
                }
                let mr = mu.add(self.rho());
                // Non-zero for every dominant μ ≺ λ.
                let den = top - self.form_scaled_value(&mr, &mr) as i128;
                debug_assert!(den > 0);
                let num = 2 * sum;
                if num % den != 0 {
                    return Err(Error::Overflow("Freudenthal recursion (non-integral step)"));
                }
                u64::try_from(num / den).map_err(|_| Error::Overflow("Freudenthal recursion"))?
            };
            if m > 0 {
                known.insert(mu.clone(), m);
            }
            entries.push((mu, depth, m));
        }
        Ok(DominantMultiplicities {
            highest: lambda.clone(),
            entries,
        })
    }

    pub fn freudenthal_multiplicities(&self, lambda: &Weight) -> Result<WeightMultiset> {
        self.freudenthal_multiplicities_bounded(lambda, DEFAULT_DIMENSION_BOUND)
    }

    /// All weights of `V_λ` with multiplicities; rejects modules of dimension
    /// above `dimension_bound`.
    pub fn freudenthal_multiplicities_bounded(
        &self,
        lambda: &Weight,
        dimension_bound: u64,
    ) -> Result<WeightMultiset> {
        let dim = self.weyl_dimension(lambda)?;
        if dim > BigInt::from(dimension_bound) {
            return Err(Error::resource(
                format!("dimension {dim} of V_{lambda}"),
                dimension_bound,
            ));
        }
        let dominant = self.dominant_multiplicities(lambda)?;
        let mut entries: Vec<(Weight, i64, u64)> = Vec::new();
        for (mu, _, m) in &dominant.entries {
            if *m == 0 {
                continue;
            }
            for v in self.weyl_orbit_bounded(mu, DEFAULT_ORBIT_BOUND)? {
                let depth = self
                    .height(&lambda.sub(&v))
                    .expect("weights of V_λ are congruent to λ");
                entries.push((v, depth, *m));
            }
        }
        entries.sort_by(order_by_depth);
        Ok(WeightMultiset {
            highest: lambda.clone(),
            entries: entries.into_iter().map(|(w, _, m)| (w, m)).collect(),
        })
    }

    /// Multiplicity of the zero weight in `V_λ` (0 unless `λ` is radical).
    pub fn zero_weight_multiplicity(&self, lambda: &Weight) -> Result<u64> {
        self.check(lambda)?;
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.to_string()));
        }
        if !self.is_radical(lambda) {
            return Ok(0);
        }
        Ok(self.dominant_multiplicities(lambda)?.get(&self.zero()))
    }
}

impl RootDatum {
    /// Dominant weights with `dim V_λ ≤ bound`, with their dimensions, in
    /// lexicographic order. Uses that the dimension grows strictly in every
    /// coordinate.
    pub fn dominant_weights_by_dimension(&self, bound: u64) -> Vec<(Weight, u64)> {
        fn rec(
            datum: &RootDatum,
            bound: u64,
            start: usize,
            cur: &mut Vec<i64>,
            out: &mut Vec<(Weight, u64)>,
        ) {
            for i in start..cur.len() {
                cur[i] += 1;
                let w = Weight::new(cur.clone());
                match datum.weyl_dimension_u64(&w) {
                    Ok(d) if d <= bound => {
                        out.push((w, d));
                        rec(datum, bound, i, cur, out);
                    }
                    _ => {}
                }
                cur[i] -= 1;
            }
        }
        let mut out = vec![(self.zero(), 1)];
        if bound == 0 {
            return Vec::new();
        }
        rec(self, bound, 0, &mut vec![0; self.rank()], &mut out);
        out.sort();
        out
    }
}

fn order_by_depth(a: &(Weight, i64, u64), b: &(Weight, i64, u64)) -> Ordering {
    a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0))
}

/// Sum-set `{a + b : a ∈ A, b ∈ B}` of two weight sets.
pub fn weight_sumset(a: &[Weight], b: &[Weight]) -> BTreeSet<Weight> {
    let mut out = BTreeSet::new();
    for x in a {
        for y in b {
            out.insert(x.add(y));
        }
    }
    out
}
