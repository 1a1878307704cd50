//! Eigenvalue spectra of torus elements on irreducible modules.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::mult::{WeightMultiset, DEFAULT_DIMENSION_BOUND, VALIDITY_BANNER};
use crate::torus::{TorusElement, ValueGroupElement, ValueJson};
use crate::weights::Weight;

/// Multiset of eigenvalues, keyed by the canonical value-group order.
/// Equality compares the multisets only, not the provenance.
#[derive(Debug, Clone)]
pub struct Spectrum {
    entries: BTreeMap<ValueGroupElement, u64>,
    element_label: Option<String>,
    highest: Option<Weight>,
}

impl PartialEq for Spectrum {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl Eq for Spectrum {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SpectrumKind {
    Simple,
    AlmostSimple,
    NotAlmostSimple,
}

impl fmt::Display for SpectrumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpectrumKind::Simple => "Simple",
            SpectrumKind::AlmostSimple => "AlmostSimple",
            SpectrumKind::NotAlmostSimple => "NotAlmostSimple",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumClass {
    pub kind: SpectrumKind,
    /// The unique value of multiplicity > 1, for `AlmostSimple`.
    pub heavy_value: Option<ValueGroupElement>,
    pub max_multiplicity: u64,
}

impl SpectrumClass {
    /// Almost simple in the paper's sense (simple spectra included).
    pub fn is_almost_simple(&self) -> bool {
        self.kind != SpectrumKind::NotAlmostSimple
    }
}

impl Spectrum {
    /// Builds a spectrum from explicit `(value, multiplicity)` pairs; repeated
    /// values are merged and zero multiplicities dropped.
    pub fn from_entries(entries: impl IntoIterator<Item = (ValueGroupElement, u64)>) -> Self {
        let mut map = BTreeMap::new();
        let mut k = 0;
        let raw: Vec<_> = entries.into_iter().collect();
        for (v, _) in &raw {
            k = k.max(v.free_rank());
        }
        for (v, m) in raw {
            if m > 0 {
                *map.entry(v.with_free_rank(k)).or_insert(0) += m;
            }
        }
        Spectrum {
            entries: map,
            element_label: None,
            highest: None,
        }
    }

    /// Groups the weights of `V_λ` by their value at `s`.
    pub fn from_weights(s: &TorusElement, weights: &WeightMultiset) -> Self {
        let mut entries = BTreeMap::new();
        for (w, m) in weights.entries() {
            *entries.entry(s.evaluate(w)).or_insert(0) += m;
        }
        Spectrum {
            entries,
            element_label: s.label().map(str::to_string),
            highest: Some(weights.highest().clone()),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&ValueGroupElement, u64)> {
        self.entries.iter().map(|(v, m)| (v, *m))
    }

    pub fn multiplicity(&self, v: &ValueGroupElement) -> u64 {
        let k = self.free_rank();
        self.entries.get(&v.with_free_rank(k)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn distinct_values(&self) -> usize {
        self.entries.len()
    }

    pub fn free_rank(&self) -> usize {
        self.entries.keys().next().map_or(0, |v| v.free_rank())
    }

    pub fn highest(&self) -> Option<&Weight> {
        self.highest.as_ref()
    }

    pub fn element_label(&self) -> Option<&str> {
        self.element_label.as_deref()
    }

    /// True if the value set is closed under inversion with matching multiplicities.
    pub fn is_inversion_symmetric(&self) -> bool {
        self.entries
            .iter()
            .all(|(v, m)| self.entries.get(&v.inverse()) == Some(m))
    }

    pub fn classify(&self) -> SpectrumClass {
        classify(self)
    }

    /// Kronecker product spectrum (Lemma 2.1).
    pub fn tensor(&self, other: &Spectrum) -> Spectrum {
        tensor_spectrum(self, other)
    }

    pub fn to_json(&self) -> SpectrumJson {
        let class = self.classify();
        SpectrumJson {
            element: self.element_label.clone(),
            highest: self.highest.clone(),
            total: self.total(),
            entries: self
                .entries
                .iter()
                .map(|(v, m)| SpectrumEntryJson {
                    value: v.to_string(),
                    exact: ValueJson::from(v),
                    multiplicity: *m,
                })
                .collect(),
            classification: class.kind,
            heavy_value: class.heavy_value.as_ref().map(|v| v.to_string()),
            max_multiplicity: class.max_multiplicity,
            torsion_note: None,
            banner: VALIDITY_BANNER,
        }
    }
}

/// `{a^2:1, 1:4, a^-2:1}`
impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(v, m)| format!("{v}:{m}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumEntryJson {
    pub value: String,
    pub exact: ValueJson,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub highest: Option<Weight>,
    pub total: u64,
    pub entries: Vec<SpectrumEntryJson>,
    pub classification: SpectrumKind,
    pub heavy_value: Option<String>,
    pub max_multiplicity: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torsion_note: Option<String>,
    pub banner: &'static str,
}

/// Spectrum of `s` on `V_λ`, using characteristic-0 multiplicities.
pub fn spectrum(s: &TorusElement, lambda: &Weight) -> Result<Spectrum> {
    spectrum_bounded(s, lambda, DEFAULT_DIMENSION_BOUND)
}

pub fn spectrum_bounded(s: &TorusElement, lambda: &Weight, dimension_bound: u64) -> Result<Spectrum> {
    let weights = s
        .datum()
        .freudenthal_multiplicities_bounded(lambda, dimension_bound)?;
    Ok(Spectrum::from_weights(s, &weights))
}

pub fn classify(sp: &Spectrum) -> SpectrumClass {
    let heavy: Vec<(&ValueGroupElement, u64)> = sp.entries().filter(|(_, m)| *m > 1).collect();
    let max_multiplicity = sp.entries().map(|(_, m)| m).max().unwrap_or(0);
    match heavy.as_slice() {
        [] => SpectrumClass {
            kind: SpectrumKind::Simple,
            heavy_value: None,
            max_multiplicity,
        },
        [(v, _)] => SpectrumClass {
            kind: SpectrumKind::AlmostSimple,
            heavy_value: Some((*v).clone()),
            max_multiplicity,
        },
        _ => SpectrumClass {
            kind: SpectrumKind::NotAlmostSimple,
            heavy_value: None,
            max_multiplicity,
        },
    }
}

pub fn is_almost_simple(sp: &Spectrum) -> bool {
    classify(sp).is_almost_simple()
}

/// Convolution of two spectra; free parts are padded to a common rank, so
/// generators with the same index are identified.
pub fn tensor_spectrum(a: &Spectrum, b: &Spectrum) -> Spectrum {
    let mut out: Vec<(ValueGroupElement, u64)> = Vec::with_capacity(a.entries.len() * b.entries.len());
    for (x, m) in &a.entries {
        for (y, n) in &b.entries {
            out.push((x.add(y), m * n));
        }
    }
    Spectrum::from_entries(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Q;
    use crate::rootdata::RootDatum;
    use num_traits::Zero;
    use std::sync::Arc;

    fn v(t: Q, free: &[i64]) -> ValueGroupElement {
        ValueGroupElement::new(t, free.to_vec())
    }

    fn g(free: &[i64]) -> ValueGroupElement {
        v(Q::zero(), free)
    }

    fn datum(s: &str) -> Arc<RootDatum> {
        Arc::new(RootDatum::from_type(s.parse().unwrap()))
    }

    #[test]
    fn a3_exterior_square_witness() {
        let s = TorusElement::parse_epsilon(datum("A3"), "a,a,1/a,1/a").unwrap();
        let sp = spectrum(&s, &Weight::new(vec![0, 1, 0])).unwrap();
        assert_eq!(sp.to_string(), "{a^-2:1, 1:4, a^2:1}");
        let c = sp.classify();
        assert_eq!(c.kind, SpectrumKind::AlmostSimple);
        assert_eq!(c.heavy_value, Some(g(&[0])));
        assert_eq!(c.max_multiplicity, 4);
        assert_eq!(sp.total(), 6);
    }

    #[test]
    fn c2_generic_witness() {
        let s = TorusElement::parse_epsilon(datum("C2"), "a,a").unwrap();
        let sp = spectrum(&s, &Weight::new(vec![0, 1])).unwrap();
        assert_eq!(sp, Spectrum::from_entries([(g(&[2]), 1), (g(&[0]), 3), (g(&[-2]), 1)]));
    }

    #[test]
    fn a2_adjoint_counterexample() {
        let s = TorusElement::parse_epsilon(datum("A2"), "a,a,a^-2").unwrap();
        let sp = spectrum(&s, &Weight::new(vec![1, 1])).unwrap();
        assert_eq!(sp, Spectrum::from_entries([(g(&[0]), 4), (g(&[3]), 2), (g(&[-3]), 2)]));
        assert_eq!(sp.classify().kind, SpectrumKind::NotAlmostSimple);
    }

    #[test]
    fn classification_examples() {
        let simple = Spectrum::from_entries([(g(&[1]), 1), (g(&[-1]), 1)]);
        assert_eq!(simple.classify().kind, SpectrumKind::Simple);
        assert!(simple.classify().is_almost_simple());
        assert!(simple.is_inversion_symmetric());
    }

    #[test]
    fn tensor_examples() {
        let sp = Spectrum::from_entries([(g(&[1, 0]), 2), (g(&[0, 1]), 1)]);
        let one = Spectrum::from_entries([(g(&[0, 0, 1]), 1)]);
        let shifted = sp.tensor(&one);
        assert_eq!(shifted.total(), 3);
        assert_eq!(shifted.multiplicity(&g(&[1, 0, 1])), 2);

        let ab = Spectrum::from_entries([(g(&[1, 0]), 1), (g(&[-1, 0]), 1)]);
        let cd = Spectrum::from_entries([(g(&[0, 1]), 1), (g(&[0, -1]), 1)]);
        let t = ab.tensor(&cd);
        assert_eq!(t.distinct_values(), 4);
        assert_eq!(t.classify().kind, SpectrumKind::Simple);

        // {a:2, b:1} ⊗ {c:1, d:1}
        let left = Spectrum::from_entries([(g(&[1, 0, 0, 0]), 2), (g(&[0, 1, 0, 0]), 1)]);
        let right = Spectrum::from_entries([(g(&[0, 0, 1, 0]), 1), (g(&[0, 0, 0, 1]), 1)]);
        let t = left.tensor(&right);
        assert_eq!(t.multiplicity(&g(&[1, 0, 1, 0])), 2);
        assert_eq!(t.multiplicity(&g(&[1, 0, 0, 1])), 2);
        assert_eq!(t.multiplicity(&g(&[0, 1, 1, 0])), 1);
        assert_eq!(t.classify().kind, SpectrumKind::NotAlmostSimple);
    }

    #[test]
    fn json_has_banner() {
        let s = TorusElement::parse_epsilon(datum("C2"), "1,-1").unwrap();
        let sp = spectrum(&s, &Weight::new(vec![0, 1])).unwrap();
        assert_eq!(sp, Spectrum::from_entries([(v(Q::new(1, 2), &[]), 4), (g(&[]), 1)]));
        let json = serde_json::to_value(sp.to_json()).unwrap();
        assert_eq!(json["classification"], "AlmostSimple");
        assert_eq!(json["banner"], VALIDITY_BANNER);
    }
}
