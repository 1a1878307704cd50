use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rational::Q;
use crate::rootdata::{Family, RootDatum};
use crate::spectra::{Spectrum, SpectrumKind};
use crate::torus::{TorusElement, ValueGroupElement};

use super::report::{ReportBuilder, VerificationReport};

/// Random ε-tuple mixing fresh generators, repeats, inverses and small
/// roots of unity, so that non-regular and torsion cases are frequent.
pub fn random_epsilon_tuple(len: usize, rng: &mut impl Rng) -> Vec<ValueGroupElement> {
    let k = len;
    let mut out: Vec<ValueGroupElement> = Vec::with_capacity(len);
    let mut fresh = 0;
    for _ in 0..len {
        let earlier = (!out.is_empty()).then(|| out[rng.random_range(0..out.len())].clone());
        let v = match (rng.random_range(0..8), earlier) {
            (1, Some(e)) => e,
            (2, Some(e)) => e.inverse(),
            (3, Some(e)) => e.add(&ValueGroupElement::root_of_unity(Q::new(1, 2), k)),
            (4, _) => ValueGroupElement::identity(k),
            (5, _) => ValueGroupElement::root_of_unity(Q::new(1, 2), k),
            (6, _) => ValueGroupElement::root_of_unity(Q::new(1, 4), k),
            _ => {
                fresh += 1;
                ValueGroupElement::generator(fresh - 1, k)
            }
        };
        out.push(v);
    }
    out
}

#[derive(Default)]
struct Tally {
    applicable: usize,
    violation: Option<String>,
}

impl Tally {
    fn record(&mut self, holds: bool, describe: impl FnOnce() -> String) {
        self.applicable += 1;
        if !holds && self.violation.is_none() {
            self.violation = Some(describe());
        }
    }
}

/// Lemma 2.11 on the natural module: regularity versus eigenvalue
/// multiplicities, for `samples` random non-central elements.
pub fn verify_natural_module_regularity(
    family: Family,
    rank: usize,
    samples: usize,
    seed: u64,
) -> Result<VerificationReport> {
    if !family.is_classical() {
        return Err(Error::UnsupportedConversion(family.letter()));
    }
    let datum = Arc::new(RootDatum::new(family, rank)?);
    let natural = datum.freudenthal_multiplicities(&datum.fundamental(0))?;
    let second = (family == Family::D)
        .then(|| datum.freudenthal_multiplicities(&datum.fundamental(1)))
        .transpose()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = if family == Family::A { rank + 1 } else { rank };

    let mut item1 = Tally::default();
    let mut item2 = Tally::default();
    let mut item3 = Tally::default();
    let mut item3b = Tally::default();
    let mut item4 = Tally::default();
    let mut regular_count = 0;
    let mut drawn = 0;
    while drawn < samples {
        let mut eps = random_epsilon_tuple(len, &mut rng);
        if family == Family::A {
            let k = eps[0].free_rank();
            let det = eps[..rank]
                .iter()
                .fold(ValueGroupElement::identity(k), |acc, e| acc.add(e));
            eps[rank] = det.inverse();
        }
        let s = TorusElement::from_epsilon_values(datum.clone(), &eps)?;
        if s.is_central() {
            continue;
        }
        drawn += 1;
        let k = s.free_rank();
        let sp = Spectrum::from_weights(&s, &natural);
        let class = sp.classify();
        let regular = s.is_regular();
        regular_count += usize::from(regular);
        let one = sp.multiplicity(&ValueGroupElement::identity(k));
        let minus = sp.multiplicity(&ValueGroupElement::root_of_unity(Q::new(1, 2), k));
        let others_simple = |exclude_one: bool| {
            sp.entries().all(|(v, m)| {
                m == 1 || (v.torsion() == Q::new(1, 2) && v.free().iter().all(|&x| x == 0))
                    || (exclude_one && v.is_identity())
            })
        };
        let describe = || {
            let shown: Vec<String> = eps.iter().map(|e| e.to_string()).collect();
            format!("eps=({}) regular={regular} spectrum {sp}", shown.join(","))
        };
        match family {
            Family::A | Family::C => {
                if regular {
                    item1.record(class.kind == SpectrumKind::Simple, describe);
                }
            }
            Family::B => {
                item2.record(regular == (minus <= 2 && others_simple(false)), describe);
            }
            Family::D => {
                item3.record(
                    regular == (one <= 2 && minus <= 2 && others_simple(true)),
                    describe,
                );
                if !class.is_almost_simple() {
                    let sp2 = Spectrum::from_weights(&s, second.as_ref().expect("type D"));
                    item3b.record(!sp2.classify().is_almost_simple(), || {
                        format!("{} but V(w2) spectrum {sp2}", describe())
                    });
                }
            }
            _ => unreachable!(),
        }
        if regular {
            let exception = family == Family::D && one == 2 && minus == 2;
            item4.record(class.is_almost_simple() || exception, describe);
        }
    }

    let mut report = ReportBuilder::new(format!("natural {}", datum.group_type())).scope(format!(
        "{samples} random non-central elements from eps-tuples, {regular_count} regular; seed {seed}"
    ));
    let mut emit = |label: &str, t: &Tally| {
        if t.applicable == 0 {
            report.skip(label, "no applicable samples");
        } else {
            report.check(
                label,
                t.violation.is_none(),
                format!("holds on {} applicable samples", t.applicable),
                t.violation.clone().unwrap_or_else(|| "no violations".into()),
            );
        }
    };
    match family {
        Family::A | Family::C => emit("(1) regular => simple spectrum on V", &item1),
        Family::B => emit("(2) regular <=> mult(-1) <= 2 and other multiplicities 1", &item2),
        Family::D => {
            emit("(3) regular <=> mult(1), mult(-1) <= 2 and other multiplicities 1", &item3);
            emit("(3) not almost simple on V => not almost simple on V(w2)", &item3b);
        }
        _ => unreachable!(),
    }
    emit("(4) regular => almost simple, except D_n with 1, -1 of multiplicity 2", &item4);
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_batches_pass() {
        for (f, n) in [(Family::A, 3), (Family::B, 3), (Family::C, 3), (Family::D, 4)] {
            let r = verify_natural_module_regularity(f, n, 100, 1).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn rejects_exceptional() {
        assert!(verify_natural_module_regularity(Family::G, 2, 10, 0).is_err());
    }
}
