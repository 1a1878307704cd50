use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::mult::WeightMultiset;
use crate::rootdata::{Family, RootDatum};
use crate::spectra::{Spectrum, SpectrumClass};
use crate::torus::{
    canonical_root_kernels, generic_stratum_element, random_element, torsion_decorations,
    QuotientLattice, StratumSpec, TorusElement, DEFAULT_TORSION_ORDERS,
};
use crate::weights::Weight;

use super::report::{ReportBuilder, VerificationReport};

pub const SWEEP_SCOPE: &str = "characteristic-0 evidence only: generic elements of canonical root-kernel \
strata (up to the Weyl group) with torsion decorations of order <= 4; not a proof over all of T";

/// A module `V_λ` with its weights, as used by the sweeps.
pub struct Module {
    pub highest: Weight,
    pub dim: u64,
    pub weights: WeightMultiset,
}

impl Module {
    /// All non-zero weights have multiplicity 1.
    pub fn nonzero_multiplicity_free(&self) -> bool {
        self.weights.nonzero_weights_multiplicity_free()
    }
}

/// Non-trivial modules with `dim ≤ bound`.
pub fn modules_up_to(datum: &RootDatum, bound: u64) -> Result<Vec<Module>> {
    datum
        .dominant_weights_by_dimension(bound)
        .into_iter()
        .filter(|(w, _)| !w.is_zero())
        .map(|(highest, dim)| {
            let weights = datum.freudenthal_multiplicities(&highest)?;
            Ok(Module {
                highest,
                dim,
                weights,
            })
        })
        .collect()
}

/// Generic non-central elements of the canonical strata cut by up to
/// `depth` roots, one per torsion decoration. Full-rank kernels are counted
/// in the second component and not realised.
pub fn stratum_elements(
    datum: &Arc<RootDatum>,
    depth: usize,
    seed: u64,
) -> Result<(Vec<TorusElement>, usize)> {
    let mut out = Vec::new();
    let mut full_rank = 0;
    for d in 1..=depth {
        for kernel in canonical_root_kernels(datum, d) {
            let roots: Vec<Weight> = kernel
                .iter()
                .map(|&i| datum.positive_roots()[i].clone())
                .collect();
            let quotient = QuotientLattice::new(datum.rank(), &roots);
            if quotient.free_rank == 0 {
                full_rank += 1;
                continue;
            }
            for decoration in torsion_decorations(&quotient, &DEFAULT_TORSION_ORDERS) {
                let spec = StratumSpec {
                    kernel_weights: roots.clone(),
                    torsion_choices: decoration,
                };
                let s = generic_stratum_element(datum.clone(), &spec, seed)?;
                if !s.is_central() {
                    out.push(s);
                }
            }
        }
    }
    Ok((out, full_rank))
}

#[derive(Debug, Clone)]
pub struct SweepHit {
    pub highest: Weight,
    pub dim: u64,
    pub element: String,
    pub spectrum: Spectrum,
    pub class: SpectrumClass,
}

pub struct SweepOutcome {
    pub datum: Arc<RootDatum>,
    pub modules: Vec<(Weight, u64)>,
    pub elements: usize,
    pub full_rank_kernels: usize,
    /// Almost-simple (including simple) outcomes, in module then element order.
    pub hits: Vec<SweepHit>,
    /// Modules whose non-zero weights all have multiplicity 1.
    pub multiplicity_free: BTreeSet<Weight>,
}

impl SweepOutcome {
    pub fn hit_modules(&self) -> BTreeSet<Weight> {
        self.hits.iter().map(|h| h.highest.clone()).collect()
    }
}

/// Classifies the spectra of every stratum element on every module.
pub fn sweep(datum: &Arc<RootDatum>, dim_bound: u64, depth: usize, seed: u64) -> Result<SweepOutcome> {
    let modules = modules_up_to(datum, dim_bound)?;
    let (elements, full_rank_kernels) = stratum_elements(datum, depth, seed)?;
    let mut hits = Vec::new();
    for m in &modules {
        for s in &elements {
            let sp = Spectrum::from_weights(s, &m.weights);
            let class = sp.classify();
            if class.is_almost_simple() {
                hits.push(SweepHit {
                    highest: m.highest.clone(),
                    dim: m.dim,
                    element: s.label().unwrap_or("").to_string(),
                    spectrum: sp,
                    class,
                });
            }
        }
    }
    Ok(SweepOutcome {
        datum: datum.clone(),
        modules: modules.iter().map(|m| (m.highest.clone(), m.dim)).collect(),
        elements: elements.len(),
        full_rank_kernels,
        multiplicity_free: modules
            .iter()
            .filter(|m| m.nonzero_multiplicity_free())
            .map(|m| m.highest.clone())
            .collect(),
        hits,
    })
}

/// Whether `(G, V_λ)` is on the list of the classification theorem for
/// non-regular non-central elements (characteristic 0).
pub fn theorem_permits(datum: &RootDatum, dim: u64) -> bool {
    let n = datum.rank() as u64;
    match datum.family() {
        Family::A => dim == n + 1 || (n == 3 && dim == 6),
        Family::B => dim == 2 * n + 1,
        Family::C => dim == 2 * n || (n == 2 && dim == 5),
        Family::D => dim == 2 * n || (n == 4 && dim == 8),
        _ => false,
    }
}

/// The multiplicity cap `m` of Corollary 6.10 for a module of this dimension.
pub fn corollary_cap(datum: &RootDatum, dim: u64) -> u64 {
    let n = datum.rank() as u64;
    match datum.family() {
        Family::A if n == 3 && dim == 6 => 4,
        Family::B if n > 2 && dim == 2 * n + 1 => 2 * n,
        Family::C if dim == 2 * n => 2 * n - 2,
        Family::C if n == 2 && dim == 5 => 4,
        Family::D if dim == 2 * n => 2 * n - 2,
        _ => n,
    }
}

fn show(set: &BTreeSet<Weight>) -> String {
    let v: Vec<String> = set.iter().map(|w| w.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

fn p_specific_skips(report: &mut ReportBuilder, datum: &RootDatum) {
    match datum.family() {
        Family::B => report.skip(
            "B_n natural module requires p != 2",
            "characteristic-p statement; not computed",
        ),
        Family::C if datum.rank() == 2 => report.skip(
            "C2, dim 5 requires p != 2",
            "characteristic-p statement; not computed",
        ),
        Family::C => report.skip(
            "C_n, p = 2, omega_n exclusion (Lemma 6.9)",
            "characteristic-p statement; not computed",
        ),
        _ => {}
    }
}

/// Almost-simple outcomes for non-regular non-central elements must occur
/// exactly on the theorem's list.
pub fn verify_theorem_c99(
    datum: &Arc<RootDatum>,
    dim_bound: u64,
    depth: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let outcome = sweep(datum, dim_bound, depth, seed)?;
    Ok(c99_report(&outcome, dim_bound, depth))
}

pub fn c99_report(outcome: &SweepOutcome, dim_bound: u64, depth: usize) -> VerificationReport {
    let datum = &outcome.datum;
    let mut report = ReportBuilder::new(format!(
        "c99 {} dim<={dim_bound} depth={depth}",
        datum.group_type()
    ))
    .scope(format!(
        "{SWEEP_SCOPE}; {} elements, {} modules, {} full-rank kernels not realised",
        outcome.elements,
        outcome.modules.len(),
        outcome.full_rank_kernels
    ));
    let hits = outcome.hit_modules();
    let permitted: BTreeSet<Weight> = outcome
        .modules
        .iter()
        .filter(|(_, d)| theorem_permits(datum, *d))
        .map(|(w, _)| w.clone())
        .collect();
    for (w, dim) in &outcome.modules {
        let allowed = permitted.contains(w);
        let witness = outcome.hits.iter().find(|h| &h.highest == w);
        let actual = match witness {
            Some(h) => format!("almost simple via [{}]: {}", h.element, h.spectrum),
            None => "no almost-simple outcome".to_string(),
        };
        report.check(
            format!("V{w} (dim {dim})"),
            allowed == witness.is_some(),
            if allowed { "almost simple for some stratum" } else { "never almost simple" },
            actual,
        );
    }
    report.check(
        "hit set equals the theorem's list",
        hits == permitted,
        show(&permitted),
        show(&hits),
    );
    p_specific_skips(&mut report, datum);
    report.finish()
}

/// Corollary 6.10: multiplicity caps for every almost-simple outcome of the
/// sweep (depth 2, so that the A3 exterior-square case is reached).
pub fn verify_corollary_bounds(datum: &Arc<RootDatum>, dim_bound: u64, seed: u64) -> Result<VerificationReport> {
    let outcome = sweep(datum, dim_bound, 2, seed)?;
    Ok(bounds_report(&outcome, dim_bound))
}

pub fn bounds_report(outcome: &SweepOutcome, dim_bound: u64) -> VerificationReport {
    let datum = &outcome.datum;
    let mut report = ReportBuilder::new(format!("bounds {} dim<={dim_bound}", datum.group_type()))
        .scope(SWEEP_SCOPE);
    // Worst case per module.
    let mut worst: BTreeMap<Weight, (u64, &SweepHit)> = BTreeMap::new();
    for h in &outcome.hits {
        let e = worst.entry(h.highest.clone()).or_insert((0, h));
        if h.class.max_multiplicity >= e.0 {
            *e = (h.class.max_multiplicity, h);
        }
    }
    for (w, (max, hit)) in &worst {
        let cap = corollary_cap(datum, hit.dim);
        report.check(
            format!("V{w} (dim {})", hit.dim),
            *max <= cap,
            format!("max multiplicity <= {cap}"),
            format!("{max} via [{}]", hit.element),
        );
    }
    if worst.is_empty() {
        report.skip("no almost-simple outcomes", "nothing to bound");
    }
    report.finish()
}

/// Theorem 1.2 at characteristic 0: an almost-simple spectrum for a
/// non-central element forces all non-zero weights to have multiplicity 1,
/// and every such module has a generic regular element with almost-simple
/// spectrum. Checked on the stratum elements plus `samples` random elements.
pub fn verify_theorem_12(
    datum: &Arc<RootDatum>,
    dim_bound: u64,
    depth: usize,
    samples: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let mut report = ReportBuilder::new(format!(
        "thm12 {} dim<={dim_bound} samples={samples}",
        datum.group_type()
    ))
    .scope(SWEEP_SCOPE);
    let modules = modules_up_to(datum, dim_bound)?;
    let (mut elements, _) = stratum_elements(datum, depth, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut drawn = 0;
    while drawn < samples {
        let s = random_element(datum.clone(), 2, 2, &DEFAULT_TORSION_ORDERS, &mut rng);
        if s.is_central() {
            continue;
        }
        elements.push(s.with_label(format!("random #{drawn}")));
        drawn += 1;
    }
    let generic = generic_stratum_element(datum.clone(), &StratumSpec::default(), seed)?;

    for m in &modules {
        let free = m.nonzero_multiplicity_free();
        let violation = elements.iter().find_map(|s| {
            let sp = Spectrum::from_weights(s, &m.weights);
            (sp.classify().is_almost_simple() && !free).then(|| (s.label().unwrap_or("").to_string(), sp))
        });
        let label = format!("V{} (dim {})", m.highest, m.dim);
        report.check(
            format!("{label}: almost simple => non-zero weights multiplicity-free"),
            violation.is_none(),
            if free { "multiplicity-free" } else { "no almost-simple spectrum" },
            match &violation {
                Some((l, sp)) => format!("almost simple via [{l}]: {sp}"),
                None => format!("{} elements checked", elements.len()),
            },
        );
        if free {
            let sp = Spectrum::from_weights(&generic, &m.weights);
            report.check(
                format!("{label}: generic regular element"),
                generic.is_regular() && sp.classify().is_almost_simple(),
                "almost simple",
                sp.classify().kind,
            );
        }
    }
    Ok(report.finish())
}
