use std::sync::Arc;

use crate::error::Result;
use crate::rational::Q;
use crate::rootdata::RootDatum;
use crate::spectra::{spectrum, Spectrum, SpectrumKind};
use crate::torus::{TorusElement, ValueGroupElement};
use crate::weights::Weight;

use super::report::{ReportBuilder, VerificationReport};

/// Expected eigenvalue as a monomial in the `ε_k(s)`, times a sign.
#[derive(Clone, Copy)]
struct Mono {
    minus: bool,
    /// `(k, exponent)` pairs, `k` 0-based.
    eps: &'static [(usize, i64)],
}

const ONE: Mono = Mono { minus: false, eps: &[] };
const MINUS_ONE: Mono = Mono { minus: true, eps: &[] };

const fn m(eps: &'static [(usize, i64)]) -> Mono {
    Mono { minus: false, eps }
}

struct Witness {
    label: &'static str,
    group: &'static str,
    epsilon: &'static str,
    highest: &'static [i64],
    /// Expected spectrum as `(value, multiplicity)`.
    expected: &'static [(Mono, u64)],
    kind: SpectrumKind,
    /// Expected regularity; every witness is non-central.
    regular: bool,
}

// Expected values are written in terms of ε_k(s) so that witnesses whose
// free generators get rescaled (spin nodes) still compare exactly.
const WITNESSES: &[Witness] = &[
    Witness {
        label: "A3 diag(a,a,a^-1,a^-1) on V(w2)",
        group: "A3",
        epsilon: "a,a,1/a,1/a",
        highest: &[0, 1, 0],
        expected: &[(m(&[(0, 2)]), 1), (ONE, 4), (m(&[(0, -2)]), 1)],
        kind: SpectrumKind::AlmostSimple,
        regular: false,
    },
    Witness {
        label: "A3 diag(a,a,-a^-1,-a^-1) on V(w2)",
        group: "A3",
        epsilon: "a,a,-1/a,-1/a",
        highest: &[0, 1, 0],
        expected: &[(m(&[(0, 2)]), 1), (MINUS_ONE, 4), (m(&[(0, -2)]), 1)],
        kind: SpectrumKind::AlmostSimple,
        regular: false,
    },
    Witness {
        label: "C2 eps=(a,a) on V(w2)",
        group: "C2",
        epsilon: "a,a",
        highest: &[0, 1],
        expected: &[(m(&[(0, 2)]), 1), (ONE, 3), (m(&[(0, -2)]), 1)],
        kind: SpectrumKind::AlmostSimple,
        regular: false,
    },
    Witness {
        label: "C2 eps=(1,-1) on V(w2)",
        group: "C2",
        epsilon: "1,-1",
        highest: &[0, 1],
        expected: &[(MINUS_ONE, 4), (ONE, 1)],
        kind: SpectrumKind::AlmostSimple,
        regular: false,
    },
    Witness {
        label: "C2 eps=(1,a) on V(w1)",
        group: "C2",
        epsilon: "1,a",
        highest: &[1, 0],
        expected: &[(ONE, 2), (m(&[(1, 1)]), 1), (m(&[(1, -1)]), 1)],
        kind: SpectrumKind::AlmostSimple,
        regular: false,
    },
    Witness {
        label: "C2 eps=(-1,a) on V(w1)",
        group: "C2",
        epsilon: "-1,a",
        highest: &[1, 0],
        expected: &[(MINUS_ONE, 2), (m(&[(1, 1)]), 1), (m(&[(1, -1)]), 1)],
        kind: SpectrumKind::AlmostSimple,
        regular: false,
    },
    Witness {
        label: "A2 diag(a,a,a^-2) on V(w1+w2)",
        group: "A2",
        epsilon: "a,a,a^-2",
        highest: &[1, 1],
        expected: &[(ONE, 4), (m(&[(0, 1), (2, -1)]), 2), (m(&[(0, -1), (2, 1)]), 2)],
        kind: SpectrumKind::NotAlmostSimple,
        regular: false,
    },
    Witness {
        label: "D4 eps=(a,a,a,a) on V(w4)",
        group: "D4",
        epsilon: "a,a,a,a",
        highest: &[0, 0, 0, 1],
        expected: &[(m(&[(0, 2)]), 1), (ONE, 6), (m(&[(0, -2)]), 1)],
        kind: SpectrumKind::AlmostSimple,
        regular: false,
    },
    Witness {
        label: "D4 eps=(a,a,a,a) on V(w1)",
        group: "D4",
        epsilon: "a,a,a,a",
        highest: &[1, 0, 0, 0],
        expected: &[(m(&[(0, 1)]), 4), (m(&[(0, -1)]), 4)],
        kind: SpectrumKind::NotAlmostSimple,
        regular: false,
    },
    Witness {
        label: "B3 eps=(-1,-1,b) on V(w1)",
        group: "B3",
        epsilon: "-1,-1,b",
        highest: &[1, 0, 0],
        expected: &[(MINUS_ONE, 4), (ONE, 1), (m(&[(2, 1)]), 1), (m(&[(2, -1)]), 1)],
        kind: SpectrumKind::AlmostSimple,
        regular: false,
    },
    Witness {
        label: "C3 eps=(a,b,c) on V(w1)",
        group: "C3",
        epsilon: "a,b,c",
        highest: &[1, 0, 0],
        expected: &[
            (m(&[(0, 1)]), 1),
            (m(&[(0, -1)]), 1),
            (m(&[(1, 1)]), 1),
            (m(&[(1, -1)]), 1),
            (m(&[(2, 1)]), 1),
            (m(&[(2, -1)]), 1),
        ],
        kind: SpectrumKind::Simple,
        regular: true,
    },
    Witness {
        label: "B3 eps=(-1,a,b) on V(w1)",
        group: "B3",
        epsilon: "-1,a,b",
        highest: &[1, 0, 0],
        expected: &[
            (MINUS_ONE, 2),
            (ONE, 1),
            (m(&[(1, 1)]), 1),
            (m(&[(1, -1)]), 1),
            (m(&[(2, 1)]), 1),
            (m(&[(2, -1)]), 1),
        ],
        kind: SpectrumKind::AlmostSimple,
        regular: true,
    },
    Witness {
        label: "D4 eps=(1,-1,a,b) on V(w1)",
        group: "D4",
        epsilon: "1,-1,a,b",
        highest: &[1, 0, 0, 0],
        expected: &[
            (ONE, 2),
            (MINUS_ONE, 2),
            (m(&[(2, 1)]), 1),
            (m(&[(2, -1)]), 1),
            (m(&[(3, 1)]), 1),
            (m(&[(3, -1)]), 1),
        ],
        kind: SpectrumKind::NotAlmostSimple,
        regular: true,
    },
];

fn realize(mono: Mono, eps_values: &[ValueGroupElement], k: usize) -> ValueGroupElement {
    let mut v = ValueGroupElement::root_of_unity(
        if mono.minus { Q::new(1, 2) } else { Q::from_integer(0) },
        k,
    );
    for &(i, e) in mono.eps {
        v = v.add(&eps_values[i].scale(e));
    }
    v
}

pub fn verify_paper_witnesses() -> Result<VerificationReport> {
    let mut report = ReportBuilder::new("witnesses");
    for w in WITNESSES {
        let datum = Arc::new(RootDatum::from_type(w.group.parse()?));
        let s = TorusElement::parse_epsilon(datum, w.epsilon)?;
        let eps_values = s.epsilon_values()?;
        let k = s.free_rank();
        let expected = Spectrum::from_entries(
            w.expected
                .iter()
                .map(|&(m, mult)| (realize(m, &eps_values, k), mult)),
        );
        let actual = spectrum(&s, &Weight::new(w.highest.to_vec()))?;
        let class = actual.classify();
        let ok = actual == expected
            && class.kind == w.kind
            && !s.is_central()
            && s.is_regular() == w.regular;
        report.check(
            w.label,
            ok,
            format!("{expected} {} regular={}", w.kind, w.regular),
            format!("{actual} {} regular={}", class.kind, s.is_regular()),
        );
    }
    Ok(report.finish())
}
