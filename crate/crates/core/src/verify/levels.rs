use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::rootdata::{Family, RootDatum};
use crate::weights::Weight;

use super::report::{ReportBuilder, VerificationReport};

/// Λ₁, Λ₂ and (where the paper states it) the radical part of Λ₃.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelTable {
    pub level1: BTreeSet<Weight>,
    pub level2: BTreeSet<Weight>,
    pub radical_level3: Option<BTreeSet<Weight>>,
}

/// Coordinate sums of weights in Λ₁ ∪ Λ₂ ∪ Λ₃ are at most 2, so enumerating
/// up to this bound is enough to see every level ≤ 3 weight the table names,
/// and enough to catch stray ones.
const HEIGHT_BOUND: u32 = 4;

fn omega_sum(rank: usize, idx: &[usize]) -> Weight {
    let mut c = vec![0; rank];
    for &i in idx {
        c[i - 1] += 1;
    }
    Weight::new(c)
}

/// The table of levels, instantiated at the given rank.
pub fn paper_level_table(family: Family, n: usize) -> Result<LevelTable> {
    let w = |idx: &[usize]| omega_sum(n, idx);
    let set = |v: Vec<Weight>| v.into_iter().collect::<BTreeSet<_>>();
    let zero = w(&[]);
    let table = match family {
        Family::A => {
            let mut l1 = vec![zero];
            l1.extend((1..=n).map(|i| w(&[i])));
            let mut l2 = vec![w(&[1, 1]), w(&[n, n]), w(&[1, n])];
            for i in 2..n {
                l2.push(w(&[1, i]));
                l2.push(w(&[i, n]));
            }
            if n == 1 {
                // The printed row omits 3ω1 at n = 1, but 3ω1 ≻ ω1 ∈ Λ1 is all
                // that lies below it, so it has level 2 by definition.
                l2.push(w(&[1, 1, 1]));
            }
            LevelTable {
                level1: set(l1),
                level2: set(l2),
                radical_level3: None,
            }
        }
        Family::B => LevelTable {
            level1: set(vec![zero, w(&[n])]),
            level2: set(vec![w(&[1]), w(&[1, n])]),
            radical_level3: (n > 2).then(|| set(vec![w(&[2])])),
        },
        Family::C if n == 2 => LevelTable {
            level1: set(vec![zero, w(&[1])]),
            level2: set(vec![w(&[2]), w(&[1, 2])]),
            radical_level3: Some(set(vec![w(&[1, 1])])),
        },
        Family::C => LevelTable {
            level1: set(vec![zero, w(&[1])]),
            level2: set(vec![w(&[2]), w(&[3])]),
            radical_level3: Some(if n > 3 {
                set(vec![w(&[1, 1]), w(&[4])])
            } else {
                set(vec![w(&[1, 1])])
            }),
        },
        Family::D if n == 4 => LevelTable {
            level1: set(vec![zero, w(&[1]), w(&[3]), w(&[4])]),
            level2: set(vec![w(&[2]), w(&[1, 3]), w(&[1, 4]), w(&[3, 4])]),
            radical_level3: None,
        },
        Family::D => LevelTable {
            level1: set(vec![zero, w(&[1]), w(&[n - 1]), w(&[n])]),
            level2: set(vec![w(&[2]), w(&[3]), w(&[1, n - 1]), w(&[1, n])]),
            radical_level3: None,
        },
        _ => return Err(Error::UnsupportedConversion(family.letter())),
    };
    Ok(table)
}

/// Computed counterpart of [`paper_level_table`].
pub fn computed_level_table(datum: &RootDatum) -> LevelTable {
    let mut table = LevelTable {
        level1: BTreeSet::new(),
        level2: BTreeSet::new(),
        radical_level3: Some(BTreeSet::new()),
    };
    for a in datum.level_sets(3, HEIGHT_BOUND) {
        match a.level {
            1 => {
                table.level1.insert(a.weight);
            }
            2 => {
                table.level2.insert(a.weight);
            }
            3 if datum.is_radical(&a.weight) => {
                table.radical_level3.as_mut().unwrap().insert(a.weight);
            }
            _ => {}
        }
    }
    table
}

fn show(set: &BTreeSet<Weight>) -> String {
    let v: Vec<String> = set.iter().map(|w| w.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

pub fn verify_level_table(family: Family, rank: usize) -> Result<VerificationReport> {
    let datum = RootDatum::new(family, rank)?;
    let expected = paper_level_table(family, rank)?;
    let mut report = ReportBuilder::new(format!("level-table {}", datum.group_type()));
    let actual = computed_level_table(&datum);
    report.check(
        "Lambda_1",
        expected.level1 == actual.level1,
        show(&expected.level1),
        show(&actual.level1),
    );
    let label = if family == Family::A && rank == 1 {
        "Lambda_2 (table row plus 3w1, which the row omits at n=1)"
    } else {
        "Lambda_2"
    };
    report.check(
        label,
        expected.level2 == actual.level2,
        show(&expected.level2),
        show(&actual.level2),
    );
    match (&expected.radical_level3, &actual.radical_level3) {
        (Some(e), Some(a)) => {
            report.check("radical part of Lambda_3", e == a, show(e), show(a));
        }
        _ => report.skip(
            "radical part of Lambda_3",
            format!("not stated for type {}", datum.group_type()),
        ),
    }
    let minuscule: BTreeSet<Weight> = actual
        .level1
        .iter()
        .filter(|w| !w.is_zero())
        .cloned()
        .collect();
    let by_orbit: BTreeSet<Weight> = (1..=rank)
        .map(|i| datum.fundamental(i - 1))
        .filter(|w| {
            let weights = datum.premet_weight_set(w).expect("small module");
            weights.len() as u128 == datum.orbit_size(w)
        })
        .collect();
    report.check(
        "non-zero level-1 weights = fundamentals with a single weight orbit",
        minuscule == by_orbit,
        show(&by_orbit),
        show(&minuscule),
    );
    Ok(report.finish())
}
