//! Symbolic semisimple elements of a maximal torus.
//!
//! A torus element is a homomorphism from the weight lattice into the value
//! group `(ℚ/ℤ) ⊕ ℤ^k`: the torsion part models roots of unity, the free part
//! models `k` multiplicatively independent generic values. Equality of
//! eigenvalues is therefore decided exactly.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_q, Q};
use crate::rootdata::{Family, RootDatum};
use crate::smith::smith_normal_form;
use crate::weights::Weight;

/// Torsion orders used when decorating strata.
pub const DEFAULT_TORSION_ORDERS: [i64; 4] = [1, 2, 3, 4];

fn reduce_mod_one(q: Q) -> Q {
    let f = q - Q::from_integer(q.floor().to_integer());
    debug_assert!(f >= Q::zero() && f < Q::one());
    f
}

/// Element of `(ℚ/ℤ) ⊕ ℤ^k`, written additively.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ValueGroupElement {
    torsion: Q,
    free: Vec<i64>,
}

impl ValueGroupElement {
    pub fn new(torsion: Q, free: Vec<i64>) -> Self {
        ValueGroupElement {
            torsion: reduce_mod_one(torsion),
            free,
        }
    }

    pub fn identity(k: usize) -> Self {
        ValueGroupElement {
            torsion: Q::zero(),
            free: vec![0; k],
        }
    }

    /// The root of unity `exp(2πi·t)`.
    pub fn root_of_unity(t: Q, k: usize) -> Self {
        Self::new(t, vec![0; k])
    }

    /// The `i`-th free generator.
    pub fn generator(i: usize, k: usize) -> Self {
        let mut free = vec![0; k];
        free[i] = 1;
        ValueGroupElement {
            torsion: Q::zero(),
            free,
        }
    }

    pub fn torsion(&self) -> Q {
        self.torsion
    }

    pub fn free(&self) -> &[i64] {
        &self.free
    }

    pub fn free_rank(&self) -> usize {
        self.free.len()
    }

    pub fn is_identity(&self) -> bool {
        self.torsion.is_zero() && self.free.iter().all(|&x| x == 0)
    }

    /// Order of the torsion part (1 for the identity).
    pub fn torsion_order(&self) -> i64 {
        *self.torsion.denom()
    }

    fn padded(&self, k: usize) -> Vec<i64> {
        let mut f = self.free.clone();
        f.resize(k.max(f.len()), 0);
        f
    }

    pub fn add(&self, other: &Self) -> Self {
        let k = self.free.len().max(other.free.len());
        let (a, b) = (self.padded(k), other.padded(k));
        Self::new(
            self.torsion + other.torsion,
            a.iter().zip(&b).map(|(x, y)| x + y).collect(),
        )
    }

    pub fn inverse(&self) -> Self {
        Self::new(-self.torsion, self.free.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::new(
            self.torsion * Q::from_integer(c),
            self.free.iter().map(|x| x * c).collect(),
        )
    }

    /// Widens the free part to length `k`.
    pub fn with_free_rank(&self, k: usize) -> Self {
        ValueGroupElement {
            torsion: self.torsion,
            free: self.padded(k),
        }
    }
}

impl PartialOrd for ValueGroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: torsion as a reduced fraction, then the free part lexicographically.
impl Ord for ValueGroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.torsion
            .cmp(&other.torsion)
            .then_with(|| self.free.cmp(&other.free))
    }
}

/// Generator names `a, b, c, …`.
pub fn generator_name(i: usize) -> String {
    const NAMES: &[u8] = b"abcdfghjklmnpqrstuvwxyz";
    if i < NAMES.len() {
        (NAMES[i] as char).to_string()
    } else {
        format!("g{i}")
    }
}

/// Renders e.g. `a^2`, `-a^-1`, `e(1/3)*b`, `1`, `-1`.
impl fmt::Display for ValueGroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (i, &e) in self.free.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(generator_name(i)),
                _ => parts.push(format!("{}^{e}", generator_name(i))),
            }
        }
        let mono = parts.join("*");
        if self.torsion.is_zero() {
            write!(f, "{}", if mono.is_empty() { "1" } else { &mono })
        } else if self.torsion == Q::new(1, 2) {
            write!(f, "-{}", if mono.is_empty() { "1" } else { &mono })
        } else if mono.is_empty() {
            write!(f, "e({})", format_q(&self.torsion))
        } else {
            write!(f, "e({})*{mono}", format_q(&self.torsion))
        }
    }
}

impl fmt::Debug for ValueGroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// JSON form `{"torsion":"1/2","free":[1,0]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueJson {
    pub torsion: String,
    pub free: Vec<i64>,
}

impl From<&ValueGroupElement> for ValueJson {
    fn from(v: &ValueGroupElement) -> Self {
        ValueJson {
            torsion: format_q(&v.torsion),
            free: v.free.clone(),
        }
    }
}

impl TryFrom<&ValueJson> for ValueGroupElement {
    type Error = Error;

    fn try_from(v: &ValueJson) -> Result<Self> {
        Ok(ValueGroupElement::new(parse_rational(&v.torsion)?, v.free.clone()))
    }
}

pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::parse(0, format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// JSON form of a torus element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusElementJson {
    pub omega_values: Vec<ValueJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// A semisimple element of the maximal torus, given by its values on the
/// fundamental weights.
#[derive(Clone)]
pub struct TorusElement {
    datum: Arc<RootDatum>,
    assignments: Vec<ValueGroupElement>,
    label: Option<String>,
}

impl TorusElement {
    pub fn new(datum: Arc<RootDatum>, assignments: Vec<ValueGroupElement>) -> Result<Self> {
        if assignments.len() != datum.rank() {
            return Err(Error::InvalidInput(format!(
                "{} needs {} fundamental-weight values, got {}",
                datum,
                datum.rank(),
                assignments.len()
            )));
        }
        let k = assignments.first().map_or(0, |a| a.free_rank());
        if assignments.iter().any(|a| a.free_rank() != k) {
            return Err(Error::InvalidInput(
                "all free parts must have the same length".into(),
            ));
        }
        Ok(TorusElement {
            datum,
            assignments,
            label: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn identity(datum: Arc<RootDatum>, k: usize) -> Self {
        let n = datum.rank();
        TorusElement {
            datum,
            assignments: vec![ValueGroupElement::identity(k); n],
            label: None,
        }
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    pub fn assignments(&self) -> &[ValueGroupElement] {
        &self.assignments
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn free_rank(&self) -> usize {
        self.assignments.first().map_or(0, |a| a.free_rank())
    }

    /// `μ(s)`, extended ℤ-linearly from the fundamental weights.
    pub fn evaluate(&self, mu: &Weight) -> ValueGroupElement {
        debug_assert_eq!(mu.rank(), self.assignments.len());
        let k = self.free_rank();
        let mut torsion = Q::zero();
        let mut free = vec![0i64; k];
        for (c, a) in mu.coords().iter().zip(&self.assignments) {
            if *c == 0 {
                continue;
            }
            torsion += a.torsion * Q::from_integer(*c);
            for (f, x) in free.iter_mut().zip(&a.free) {
                *f += c * x;
            }
        }
        ValueGroupElement::new(torsion, free)
    }

    /// No root takes the value 1.
    pub fn is_regular(&self) -> bool {
        self.datum
            .positive_roots()
            .iter()
            .all(|a| !self.evaluate(a).is_identity())
    }

    /// Every simple root takes the value 1.
    pub fn is_central(&self) -> bool {
        self.datum
            .simple_roots()
            .iter()
            .all(|a| self.evaluate(a).is_identity())
    }

    /// Positive roots taking the value 1 at this element.
    pub fn vanishing_roots(&self) -> Vec<Weight> {
        self.datum
            .positive_roots()
            .iter()
            .filter(|a| self.evaluate(a).is_identity())
            .cloned()
            .collect()
    }

    /// Whether `μ ↦ μ(s)` is injective on `weights`.
    pub fn separates_weights(&self, weights: &[Weight]) -> bool {
        let mut values: Vec<ValueGroupElement> = weights.iter().map(|w| self.evaluate(w)).collect();
        values.sort();
        values.windows(2).all(|p| p[0] != p[1])
    }

    /// Largest torsion order occurring on a fundamental weight.
    pub fn max_torsion_order(&self) -> i64 {
        self.assignments
            .iter()
            .map(|a| a.torsion_order())
            .max()
            .unwrap_or(1)
    }

    /// Characteristic restriction implied by torsion values, if any.
    pub fn torsion_note(&self) -> Option<String> {
        let n = self
            .assignments
            .iter()
            .fold(1i64, |acc, a| acc.lcm(&a.torsion_order()));
        (n > 1).then(|| format!("uses roots of unity of order dividing {n}; not realisable in characteristic p for p | {n}"))
    }

    pub fn to_json(&self) -> TorusElementJson {
        TorusElementJson {
            omega_values: self.assignments.iter().map(ValueJson::from).collect(),
            label: self.label.clone(),
        }
    }

    pub fn from_json(datum: Arc<RootDatum>, json: &TorusElementJson) -> Result<Self> {
        let values = json
            .omega_values
            .iter()
            .map(ValueGroupElement::try_from)
            .collect::<Result<Vec<_>>>()?;
        let el = TorusElement::new(datum, values)?;
        Ok(match &json.label {
            Some(l) => el.with_label(l.clone()),
            None => el,
        })
    }

    pub fn parse_json(datum: Arc<RootDatum>, text: &str) -> Result<Self> {
        let json: TorusElementJson = serde_json::from_str(text).map_err(|e| Error::Parse {
            position: e.column().saturating_sub(1),
            message: format!("invalid element JSON: {e}"),
        })?;
        Self::from_json(datum, &json)
    }

    /// Values `ε_k(s)` for classical types, when every `ε_k` is a lattice weight.
    pub fn epsilon_values(&self) -> Result<Vec<ValueGroupElement>> {
        let dim = self
            .datum
            .epsilon_dim()
            .ok_or(Error::UnsupportedConversion(self.datum.family().letter()))?;
        (0..dim)
            .map(|k| {
                let unit: Vec<Q> = (0..dim)
                    .map(|j| if j == k { Q::one() } else { Q::zero() })
                    .collect();
                let w = match self.datum.family() {
                    // ε_k = ω_k − ω_{k−1} as a character of the SL torus.
                    Family::A => {
                        let n = self.datum.rank();
                        let mut c = vec![0i64; n];
                        if k < n {
                            c[k] = 1;
                        }
                        if k > 0 {
                            c[k - 1] = -1;
                        }
                        Weight::new(c)
                    }
                    _ => self.datum.weight_from_epsilon(&unit)?,
                };
                Ok(self.evaluate(&w))
            })
            .collect()
    }
}

impl fmt::Debug for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TorusElement({}, {:?}", self.datum, self.assignments)?;
        if let Some(l) = &self.label {
            write!(f, ", {l:?}")?;
        }
        write!(f, ")")
    }
}

impl PartialEq for TorusElement {
    fn eq(&self, other: &Self) -> bool {
        self.datum.group_type() == other.datum.group_type() && self.assignments == other.assignments
    }
}

// ---------------------------------------------------------------------------
// ε-shorthand
// ---------------------------------------------------------------------------

/// Parsed symbolic value: torsion (unreduced) plus exponents of named symbols.
#[derive(Debug, Clone, PartialEq)]
struct Monomial {
    torsion: Q,
    exps: BTreeMap<String, i64>,
}

impl Monomial {
    fn one() -> Self {
        Monomial {
            torsion: Q::zero(),
            exps: BTreeMap::new(),
        }
    }

    fn mul(mut self, other: &Monomial, sign: i64) -> Self {
        self.torsion += other.torsion * Q::from_integer(sign);
        for (s, e) in &other.exps {
            *self.exps.entry(s.clone()).or_insert(0) += sign * e;
        }
        self
    }
}

struct ShorthandParser<'a> {
    src: &'a str,
    pos: usize,
    base: usize,
}

impl<'a> ShorthandParser<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.base + self.pos, msg)
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| Error::parse(self.base + start, "expected an integer"))
    }

    /// token := ['-'] product ('/' product)*
    fn token(&mut self) -> Result<Monomial> {
        let mut m = Monomial::one();
        if self.eat('-') {
            m.torsion += Q::new(1, 2);
        }
        m = m.mul(&self.product()?, 1);
        while self.eat('/') {
            let d = self.product()?;
            m = m.mul(&d, -1);
        }
        self.skip_ws();
        Ok(m)
    }

    fn product(&mut self) -> Result<Monomial> {
        let mut m = self.atom()?;
        while self.eat('*') {
            let a = self.atom()?;
            m = m.mul(&a, 1);
        }
        Ok(m)
    }

    /// atom := '1' | 'i' | 'e(' p '/' q ')' | symbol ['^' int] | '(' token ')'
    fn atom(&mut self) -> Result<Monomial> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some('1') => {
                self.pos += 1;
                if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    return Err(self.err("only the constant 1 is allowed"));
                }
                Ok(Monomial::one())
            }
            Some('(') => {
                self.pos += 1;
                let m = self.token()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                self.power(m)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                while self
                    .peek()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
                {
                    self.pos += 1;
                }
                let name = &self.src[start..self.pos];
                let m = if name == "e" && self.peek() == Some('(') {
                    self.pos += 1;
                    let n = self.integer()?;
                    if !self.eat('/') {
                        return Err(self.err("expected `/` in e(p/q)"));
                    }
                    let d = self.integer()?;
                    if d <= 0 {
                        return Err(self.err("denominator must be positive"));
                    }
                    if !self.eat(')') {
                        return Err(self.err("expected `)`"));
                    }
                    Monomial {
                        torsion: Q::new(n, d),
                        exps: BTreeMap::new(),
                    }
                } else if name == "i" {
                    Monomial {
                        torsion: Q::new(1, 4),
                        exps: BTreeMap::new(),
                    }
                } else {
                    let mut exps = BTreeMap::new();
                    exps.insert(name.to_string(), 1);
                    Monomial {
                        torsion: Q::zero(),
                        exps,
                    }
                };
                self.power(m)
            }
            Some(c) => Err(self.err(format!("unexpected `{c}`"))),
            None => Err(self.err("unexpected end of value")),
        }
    }

    fn power(&mut self, m: Monomial) -> Result<Monomial> {
        if self.eat('^') {
            let e = self.integer()?;
            let mut out = Monomial::one();
            out.torsion = m.torsion * Q::from_integer(e);
            for (s, x) in m.exps {
                out.exps.insert(s, x * e);
            }
            Ok(out)
        } else {
            Ok(m)
        }
    }
}

/// Parses a comma-separated ε-tuple such as `a,a,-1/a,-1/a` or `1,-1,b,i*c`.
///
/// Returns the values and the symbol names in order of first appearance.
pub fn parse_epsilon_shorthand(text: &str) -> Result<(Vec<ValueGroupElement>, Vec<String>)> {
    let mut monomials = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        let mut p = ShorthandParser {
            src: part,
            pos: 0,
            base: offset,
        };
        if part.trim().is_empty() {
            return Err(Error::parse(offset, "empty value"));
        }
        let m = p.token()?;
        if p.pos != part.len() {
            return Err(p.err(format!("unexpected `{}`", &part[p.pos..])));
        }
        monomials.push(m);
        offset += part.len() + 1;
    }
    let mut symbols: Vec<String> = Vec::new();
    for m in &monomials {
        for s in m.exps.keys() {
            if !symbols.contains(s) {
                symbols.push(s.clone());
            }
        }
    }
    // Order symbols by first textual appearance.
    symbols.sort_by_key(|s| text.find(s.as_str()).unwrap_or(usize::MAX));
    let k = symbols.len();
    let values = monomials
        .iter()
        .map(|m| {
            let mut free = vec![0; k];
            for (s, e) in &m.exps {
                let idx = symbols.iter().position(|x| x == s).expect("collected");
                free[idx] = *e;
            }
            ValueGroupElement::new(m.torsion, free)
        })
        .collect();
    Ok((values, symbols))
}

impl TorusElement {
    /// Builds an element from ε-values of a classical group.
    ///
    /// Type `A_n` takes the `n+1` diagonal entries (their product must be 1).
    /// Types B, C, D take `ε_1(s), …, ε_n(s)`. When a spin node forces a
    /// square root, every free generator is replaced by its square (`a ↦ a²`),
    /// and the torsion half is taken in `[0, 1/2)`.
    pub fn from_epsilon_values(datum: Arc<RootDatum>, eps: &[ValueGroupElement]) -> Result<Self> {
        let family = datum.family();
        let Some(map) = datum.epsilon_map() else {
            return Err(Error::UnsupportedConversion(family.letter()));
        };
        let n = datum.rank();
        let expected = if family == Family::A { n + 1 } else { n };
        if eps.len() != expected {
            return Err(Error::InvalidInput(format!(
                "{datum} takes {expected} epsilon values, got {}",
                eps.len()
            )));
        }
        let k = eps.iter().map(|e| e.free_rank()).max().unwrap_or(0);
        let eps: Vec<ValueGroupElement> = eps.iter().map(|e| e.with_free_rank(k)).collect();

        if family == Family::A {
            let det = eps
                .iter()
                .fold(ValueGroupElement::identity(k), |acc, e| acc.add(e));
            if !det.is_identity() {
                return Err(Error::InvalidInput(format!(
                    "diagonal entries must have product 1 (got {det})"
                )));
            }
            let mut acc = ValueGroupElement::identity(k);
            let assignments = eps[..n]
                .iter()
                .map(|e| {
                    acc = acc.add(e);
                    acc.clone()
                })
                .collect();
            return TorusElement::new(datum, assignments);
        }

        // ω_i(s) = Σ_k E[k][i] ε_k(s) with E rational.
        let raw: Vec<(Q, Vec<Q>)> = (0..n)
            .map(|i| {
                let mut t = Q::zero();
                let mut f = vec![Q::zero(); k];
                for (kk, e) in eps.iter().enumerate() {
                    let c = map[kk][i];
                    if c.is_zero() {
                        continue;
                    }
                    t += c * e.torsion;
                    for (fj, &x) in f.iter_mut().zip(&e.free) {
                        *fj += c * Q::from_integer(x);
                    }
                }
                (t, f)
            })
            .collect();
        let scale = raw
            .iter()
            .flat_map(|(_, f)| f.iter())
            .fold(1i64, |acc, q| acc.lcm(q.denom()));
        let assignments = raw
            .into_iter()
            .map(|(t, f)| {
                ValueGroupElement::new(
                    t,
                    f.into_iter()
                        .map(|q| (q * Q::from_integer(scale)).to_integer())
                        .collect(),
                )
            })
            .collect();
        TorusElement::new(datum, assignments)
    }

    /// Parses the ε-shorthand (see [`parse_epsilon_shorthand`]).
    pub fn parse_epsilon(datum: Arc<RootDatum>, text: &str) -> Result<Self> {
        if !datum.family().is_classical() {
            return Err(Error::UnsupportedConversion(datum.family().letter()));
        }
        let (values, _) = parse_epsilon_shorthand(text)?;
        Ok(Self::from_epsilon_values(datum, &values)?.with_label(format!("eps=({text})")))
    }
}

// ---------------------------------------------------------------------------
// Strata
// ---------------------------------------------------------------------------

/// A family of torus elements cut out by characters forced to be trivial.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct StratumSpec {
    pub kernel_weights: Vec<Weight>,
    /// Value (in ℚ/ℤ) for each torsion generator of the quotient lattice,
    /// indexed in order of the invariant factors. Missing entries are seeded.
    pub torsion_choices: BTreeMap<usize, Q>,
}

impl StratumSpec {
    pub fn new(kernel_weights: Vec<Weight>) -> Self {
        StratumSpec {
            kernel_weights,
            torsion_choices: BTreeMap::new(),
        }
    }

    pub fn with_torsion(mut self, index: usize, value: Q) -> Self {
        self.torsion_choices.insert(index, value);
        self
    }
}

/// Structure of `Ω / ⟨kernel⟩`: invariant factors and a change of basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientLattice {
    /// Invariant factors `d_i > 1` (the torsion part).
    pub torsion_orders: Vec<i64>,
    pub free_rank: usize,
    /// Unimodular `Q`: the character `x` has quotient coordinates `x · Q`.
    basis: Vec<Vec<i64>>,
    /// Non-zero invariant factors including 1s, aligned with the first columns of `basis`.
    factors: Vec<i64>,
}

impl QuotientLattice {
    pub fn new(rank: usize, kernel: &[Weight]) -> Self {
        let rows: Vec<Vec<i64>> = kernel.iter().map(|w| w.coords().to_vec()).collect();
        let snf = smith_normal_form(&rows, rank);
        let factors: Vec<i64> = snf.diagonal.iter().copied().filter(|&d| d != 0).collect();
        QuotientLattice {
            torsion_orders: factors.iter().copied().filter(|&d| d > 1).collect(),
            free_rank: rank - factors.len(),
            basis: snf.q,
            factors,
        }
    }

    pub fn kernel_rank(&self) -> usize {
        self.factors.len()
    }
}

/// Builds the generic element of a stratum: free quotient generators go to
/// independent values, torsion generators to the chosen roots of unity.
pub fn generic_stratum_element(
    datum: Arc<RootDatum>,
    spec: &StratumSpec,
    seed: u64,
) -> Result<TorusElement> {
    let n = datum.rank();
    for w in &spec.kernel_weights {
        datum.check(w)?;
    }
    let quotient = QuotientLattice::new(n, &spec.kernel_weights);
    if quotient.free_rank == 0 {
        return Err(Error::InvalidInput(
            "stratum is central/finite: the kernel weights span a full-rank sublattice".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = quotient.kernel_rank();
    let k = quotient.free_rank;
    let mut gens: Vec<ValueGroupElement> = Vec::with_capacity(n);
    let mut torsion_index = 0;
    for &d in &quotient.factors {
        if d == 1 {
            gens.push(ValueGroupElement::identity(k));
            continue;
        }
        let t = match spec.torsion_choices.get(&torsion_index) {
            Some(&t) => {
                if !(t * Q::from_integer(d)).is_integer() {
                    return Err(Error::InvalidInput(format!(
                        "torsion choice {} for generator {torsion_index} is not of order dividing {d}",
                        format_q(&t)
                    )));
                }
                t
            }
            None => {
                // A faithful character of ℤ/d.
                let units: Vec<i64> = (1..d).filter(|j| j.gcd(&d) == 1).collect();
                Q::new(units[rng.random_range(0..units.len())], d)
            }
        };
        gens.push(ValueGroupElement::root_of_unity(t, k));
        torsion_index += 1;
    }
    for j in 0..k {
        gens.push(ValueGroupElement::generator(j, k));
    }
    debug_assert_eq!(gens.len(), r + k);
    let assignments = (0..n)
        .map(|row| {
            (0..n).fold(ValueGroupElement::identity(k), |acc, col| {
                acc.add(&gens[col].scale(quotient.basis[row][col]))
            })
        })
        .collect();
    let label = format!(
        "stratum kernel={:?} torsion={:?}",
        spec.kernel_weights,
        spec.torsion_choices
            .iter()
            .map(|(i, t)| format!("{i}:{}", format_q(t)))
            .collect::<Vec<_>>()
    );
    Ok(TorusElement::new(datum, assignments)?.with_label(label))
}

/// All torsion decorations of a stratum with orders in `orders`.
pub fn torsion_decorations(quotient: &QuotientLattice, orders: &[i64]) -> Vec<BTreeMap<usize, Q>> {
    let mut out = vec![BTreeMap::new()];
    for (idx, &d) in quotient.torsion_orders.iter().enumerate() {
        let values: Vec<Q> = (0..d)
            .map(|j| Q::new(j, d))
            .filter(|t| orders.contains(t.denom()))
            .collect();
        out = out
            .into_iter()
            .flat_map(|m| {
                values.iter().map(move |t| {
                    let mut m = m.clone();
                    m.insert(idx, *t);
                    m
                })
            })
            .collect();
    }
    out
}

/// Canonical representatives, up to the Weyl group and signs, of sets of
/// `depth` positive roots. Each set is given by positive-root indices.
pub fn canonical_root_kernels(datum: &RootDatum, depth: usize) -> Vec<Vec<usize>> {
    let roots = datum.positive_roots();
    let index_up_to_sign = |w: &Weight| -> usize {
        datum
            .positive_root_index(w)
            .or_else(|| datum.positive_root_index(&w.neg()))
            .expect("Weyl group permutes roots")
    };
    // Signed permutation of positive roots induced by each simple reflection.
    let perms: Vec<Vec<usize>> = (0..datum.rank())
        .map(|i| roots.iter().map(|r| index_up_to_sign(&datum.reflect(r, i))).collect())
        .collect();

    let canonical = |start: Vec<usize>| -> Vec<usize> {
        let mut seen = std::collections::HashSet::new();
        let mut queue = vec![start.clone()];
        seen.insert(start.clone());
        let mut best = start;
        while let Some(cur) = queue.pop() {
            if cur < best {
                best = cur.clone();
            }
            for p in &perms {
                let mut next: Vec<usize> = cur.iter().map(|&x| p[x]).collect();
                next.sort_unstable();
                if seen.insert(next.clone()) {
                    queue.push(next);
                }
            }
        }
        best
    };

    let mut reps = std::collections::BTreeSet::new();
    let m = roots.len();
    let mut combo: Vec<usize> = (0..depth).collect();
    if depth == 0 || depth > m {
        return Vec::new();
    }
    loop {
        reps.insert(canonical(combo.clone()));
        // next combination
        let mut i = depth;
        loop {
            if i == 0 {
                return reps.into_iter().collect();
            }
            i -= 1;
            if combo[i] < m - depth + i {
                combo[i] += 1;
                for j in i + 1..depth {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Random element with values drawn from `free_rank` generators and roots of
/// unity of the given orders; small exponents make coincidences likely.
pub fn random_element(
    datum: Arc<RootDatum>,
    free_rank: usize,
    max_exponent: i64,
    orders: &[i64],
    rng: &mut impl Rng,
) -> TorusElement {
    let n = datum.rank();
    let assignments = (0..n)
        .map(|_| {
            let d = orders[rng.random_range(0..orders.len())];
            let t = Q::new(rng.random_range(0..d), d);
            let free = (0..free_rank)
                .map(|_| rng.random_range(-max_exponent..=max_exponent))
                .collect();
            ValueGroupElement::new(t, free)
        })
        .collect();
    TorusElement::new(datum, assignments).expect("consistent lengths")
}
