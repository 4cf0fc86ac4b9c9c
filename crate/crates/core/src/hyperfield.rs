//! Hyperstructure candidates and the axiom verifier.
//!
//! A [`HyperStruct`] is an unverified candidate: a multiplicative table plus
//! an n×n table of element sets for the hypercomposition. [`verify`] checks
//! the reduced axiom system — multiplicative structure, non-void sums, zero
//! neutrality, additive associativity and commutativity, unique opposites,
//! and distributivity. Reversibility is not an axiom here; it is derivable
//! and checked separately by [`check_derived_laws`].

use crate::eset::{ESet, Elem};
use crate::group::GroupTable;

/// Which structure the multiplicative part must satisfy.
///
/// `Hyperfield` requires a commutative group on the nonzero part,
/// `SkewHyperfield` a group, and `Hyperring` only a semigroup. Hyperring
/// candidates are checked for inclusion distributivity
/// (`x·(y+z) ⊆ x·y + x·z`); the field modes require equality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Hyperfield,
    Hyperring,
    SkewHyperfield,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Hyperfield => "hyperfield",
            Mode::Hyperring => "hyperring",
            Mode::SkewHyperfield => "skew-hyperfield",
        })
    }
}

/// Axiom identifiers for verification failures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Axiom {
    MulAbsorbing,
    MulClosure,
    MulAssociative,
    MulIdentity,
    MulInverse,
    MulCommutative,
    NonVoidSum,
    ZeroNeutral,
    AddAssociative,
    AddCommutative,
    UniqueOpposite,
    DistributiveLeft,
    DistributiveRight,
    // derived laws, confirmed by check_derived_laws
    Reversibility,
    Reproductivity,
    OppositeOfSum,
    // strong-canonicality consequences, see classify
    DisjointDifferences,
    DifferenceAbsorption,
    IrreflexiveDifference,
    TranslatePartition,
    SumDifferenceExchange,
}

/// One verification failure: the axiom and the first witnessing tuple.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Failure {
    pub axiom: Axiom,
    pub witness: Vec<Elem>,
}

/// Outcome of a verification run. Failing axioms carry their first witness
/// only, so the report size is bounded by the number of axioms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failed_axiom(&self, axiom: Axiom) -> Option<&Failure> {
        self.failures.iter().find(|f| f.axiom == axiom)
    }

    fn record(&mut self, axiom: Axiom, witness: &[Elem]) {
        self.failures.push(Failure {
            axiom,
            witness: witness.to_vec(),
        });
    }
}

impl std::fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.passed() {
            return write!(f, "pass");
        }
        write!(f, "fail")?;
        for fail in &self.failures {
            write!(f, " {:?}(", fail.axiom)?;
            for (i, e) in fail.witness.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Unverified candidate structure: order, multiplication, addition table.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HyperStruct {
    mul: GroupTable,
    add: Vec<ESet>,
}

impl HyperStruct {
    pub fn new(mul: GroupTable, add: Vec<ESet>) -> HyperStruct {
        assert_eq!(add.len(), mul.n() * mul.n(), "addition table shape");
        HyperStruct { mul, add }
    }

    /// Builds the addition table from a cell function; the zero row and
    /// column are forced to singletons.
    pub fn from_fn(mul: GroupTable, f: impl Fn(Elem, Elem) -> ESet) -> HyperStruct {
        let n = mul.n();
        let mut add = vec![ESet::EMPTY; n * n];
        for x in mul.elems() {
            for y in mul.elems() {
                add[x.index() * n + y.index()] = if x.is_zero() {
                    ESet::singleton(y)
                } else if y.is_zero() {
                    ESet::singleton(x)
                } else {
                    f(x, y)
                };
            }
        }
        HyperStruct { mul, add }
    }

    pub fn n(&self) -> usize {
        self.mul.n()
    }

    pub fn mul_table(&self) -> &GroupTable {
        &self.mul
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> ESet {
        self.add[x.index() * self.n() + y.index()]
    }

    pub fn set_cell(&mut self, x: Elem, y: Elem, v: ESet) {
        let n = self.n();
        self.add[x.index() * n + y.index()] = v;
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.mul.mul(x, y)
    }

    pub fn elems(&self) -> impl Iterator<Item = Elem> {
        self.mul.elems()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> {
        self.mul.nonzero()
    }

    /// Hypercomposition extended to sets: the union of `a + b` over all
    /// pairs in `A × B`. Empty whenever either argument is empty.
    pub fn set_sum(&self, a: ESet, b: ESet) -> ESet {
        let mut out = ESet::EMPTY;
        for x in a.iter() {
            for y in b.iter() {
                out = out | self.add(x, y);
            }
        }
        out
    }

    pub(crate) fn add_cells(&self) -> &[ESet] {
        &self.add
    }
}

fn check_multiplicative(h: &HyperStruct, mode: Mode, report: &mut VerificationReport) {
    let g = h.mul_table();
    for x in g.elems() {
        if g.mul(Elem::ZERO, x) != Elem::ZERO || g.mul(x, Elem::ZERO) != Elem::ZERO {
            report.record(Axiom::MulAbsorbing, &[x]);
            break;
        }
    }
    if mode != Mode::Hyperring {
        // hyperrings keep a bare semigroup with absorbing 0 and may have
        // zero divisors; the group modes need H* closed
        'closure: for x in g.nonzero() {
            for y in g.nonzero() {
                let v = g.mul(x, y);
                if v.is_zero() || v.index() >= g.n() {
                    report.record(Axiom::MulClosure, &[x, y]);
                    break 'closure;
                }
            }
        }
    }
    'assoc: for x in g.nonzero() {
        for y in g.nonzero() {
            for z in g.nonzero() {
                if g.mul(g.mul(x, y), z) != g.mul(x, g.mul(y, z)) {
                    report.record(Axiom::MulAssociative, &[x, y, z]);
                    break 'assoc;
                }
            }
        }
    }
    if mode != Mode::Hyperring {
        if let Some(x) = g
            .nonzero()
            .find(|&x| g.mul(Elem::ONE, x) != x || g.mul(x, Elem::ONE) != x)
        {
            report.record(Axiom::MulIdentity, &[x]);
        }
        if let Some(x) = g.nonzero().find(|&x| g.inverse(x).is_none()) {
            report.record(Axiom::MulInverse, &[x]);
        }
    }
    if mode == Mode::Hyperfield {
        'comm: for x in g.nonzero() {
            for y in g.nonzero() {
                if g.mul(x, y) != g.mul(y, x) {
                    report.record(Axiom::MulCommutative, &[x, y]);
                    break 'comm;
                }
            }
        }
    }
}

fn check_non_void(h: &HyperStruct, report: &mut VerificationReport) {
    for x in h.elems() {
        for y in h.elems() {
            if h.add(x, y).is_empty() {
                report.record(Axiom::NonVoidSum, &[x, y]);
                return;
            }
        }
    }
}

fn check_zero_neutral(h: &HyperStruct, report: &mut VerificationReport) {
    for x in h.elems() {
        let s = ESet::singleton(x);
        if h.add(x, Elem::ZERO) != s || h.add(Elem::ZERO, x) != s {
            report.record(Axiom::ZeroNeutral, &[x]);
            return;
        }
    }
}

fn check_add_associative(h: &HyperStruct, report: &mut VerificationReport) {
    for x in h.elems() {
        for y in h.elems() {
            for z in h.elems() {
                let lhs = h.set_sum(h.add(x, y), ESet::singleton(z));
                let rhs = h.set_sum(ESet::singleton(x), h.add(y, z));
                if lhs != rhs {
                    report.record(Axiom::AddAssociative, &[x, y, z]);
                    return;
                }
            }
        }
    }
}

fn check_add_commutative(h: &HyperStruct, report: &mut VerificationReport) {
    for x in h.elems() {
        for y in h.elems() {
            if h.add(x, y) != h.add(y, x) {
                report.record(Axiom::AddCommutative, &[x, y]);
                return;
            }
        }
    }
}

fn check_unique_opposite(h: &HyperStruct, report: &mut VerificationReport) {
    for x in h.elems() {
        let opposites = h
            .elems()
            .filter(|&y| h.add(x, y).contains(Elem::ZERO))
            .count();
        if opposites != 1 {
            report.record(Axiom::UniqueOpposite, &[x]);
            return;
        }
    }
}

fn check_distributive(h: &HyperStruct, mode: Mode, report: &mut VerificationReport) {
    let g = h.mul_table();
    // Hyperrings only get inclusion distributivity: with a bare semigroup on
    // the nonzero part, x·(y+z) cannot always exhaust x·y + x·z.
    let holds = |lhs: ESet, rhs: ESet| {
        if mode == Mode::Hyperring {
            lhs.is_subset(rhs)
        } else {
            lhs == rhs
        }
    };
    let mut left_done = false;
    let mut right_done = false;
    for x in h.elems() {
        for y in h.elems() {
            for z in h.elems() {
                if !left_done && !holds(g.set_mul(x, h.add(y, z)), h.add(g.mul(x, y), g.mul(x, z)))
                {
                    report.record(Axiom::DistributiveLeft, &[x, y, z]);
                    left_done = true;
                }
                if !right_done
                    && !holds(
                        g.set_mul_right(h.add(y, z), x),
                        h.add(g.mul(y, x), g.mul(z, x)),
                    )
                {
                    report.record(Axiom::DistributiveRight, &[x, y, z]);
                    right_done = true;
                }
                if left_done && right_done {
                    return;
                }
            }
        }
    }
}

/// Checks every axiom of the given mode and reports the first witness per
/// failing axiom. All checks always run, so the verdict does not depend on
/// any check ordering.
pub fn verify(h: &HyperStruct, mode: Mode) -> VerificationReport {
    let mut report = VerificationReport::default();
    check_multiplicative(h, mode, &mut report);
    check_non_void(h, &mut report);
    check_zero_neutral(h, &mut report);
    check_add_associative(h, &mut report);
    check_add_commutative(h, &mut report);
    check_unique_opposite(h, &mut report);
    check_distributive(h, mode, &mut report);
    report
}

/// Fast associativity test over nonzero triples with early exit. Zero
/// triples hold automatically once the zero row and column are singletons,
/// so assembled candidates can be screened on nonzero triples alone.
pub(crate) fn associative_nonzero(h: &HyperStruct) -> bool {
    for x in h.nonzero() {
        for y in h.nonzero() {
            for z in h.nonzero() {
                let mut lhs = ESet::EMPTY;
                for w in h.add(x, y).iter() {
                    lhs = lhs | h.add(w, z);
                }
                let mut rhs = ESet::EMPTY;
                for w in h.add(y, z).iter() {
                    rhs = rhs | h.add(x, w);
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// A candidate that passed [`verify`], with its opposite map and difference
/// cardinality cached.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Hyperfield {
    base: HyperStruct,
    mode: Mode,
    opposite: Vec<Elem>,
    diff_card: usize,
}

impl Hyperfield {
    /// Verifies `base` in the given mode and caches the opposite map.
    pub fn verified(base: HyperStruct, mode: Mode) -> Result<Hyperfield, VerificationReport> {
        let report = verify(&base, mode);
        if !report.passed() {
            return Err(report);
        }
        let opposite: Vec<Elem> = base
            .elems()
            .map(|x| {
                base.elems()
                    .find(|&y| base.add(x, y).contains(Elem::ZERO))
                    .expect("unique opposite was verified")
            })
            .collect();
        let diff_card = base.add(Elem::ONE, opposite[1]).card();
        Ok(Hyperfield {
            base,
            mode,
            opposite,
            diff_card,
        })
    }

    pub fn base(&self) -> &HyperStruct {
        &self.base
    }

    pub fn into_base(self) -> HyperStruct {
        self.base
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn add(&self, x: Elem, y: Elem) -> ESet {
        self.base.add(x, y)
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.base.mul(x, y)
    }

    pub fn set_sum(&self, a: ESet, b: ESet) -> ESet {
        self.base.set_sum(a, b)
    }

    pub fn elems(&self) -> impl Iterator<Item = Elem> {
        self.base.elems()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> {
        self.base.nonzero()
    }

    /// The unique `x'` with `0 ∈ x + x'`.
    pub fn opposite(&self, x: Elem) -> Elem {
        self.opposite[x.index()]
    }

    /// `card(x - x)`, independent of the nonzero x by distributivity.
    pub fn diff_card(&self) -> usize {
        self.diff_card
    }

    /// `x - y` as a set: `x + (-y)`.
    pub fn difference(&self, x: Elem, y: Elem) -> ESet {
        self.add(x, self.opposite(y))
    }
}

/// Confirms the laws that follow from the reduced axiom system:
/// reversibility, reproductivity, zero neutrality and `-(a+b) = -a-b`.
/// Passing is a theorem-backed expectation for every verified structure.
pub fn check_derived_laws(h: &Hyperfield) -> VerificationReport {
    let mut report = VerificationReport::default();
    'rev: for a in h.elems() {
        for b in h.elems() {
            for c in h.elems() {
                if h.add(b, c).contains(a) && !h.difference(a, b).contains(c) {
                    report.record(Axiom::Reversibility, &[a, b, c]);
                    break 'rev;
                }
            }
        }
    }
    let full = ESet::full(h.n());
    for a in h.elems() {
        if h.set_sum(ESet::singleton(a), full) != full {
            report.record(Axiom::Reproductivity, &[a]);
            break;
        }
    }
    if let Some(x) = h
        .elems()
        .find(|&x| h.add(x, Elem::ZERO) != ESet::singleton(x))
    {
        report.record(Axiom::ZeroNeutral, &[x]);
    }
    'neg: for a in h.elems() {
        for b in h.elems() {
            let negated: ESet = h.add(a, b).iter().map(|w| h.opposite(w)).collect();
            if negated != h.add(h.opposite(a), h.opposite(b)) {
                report.record(Axiom::OppositeOfSum, &[a, b]);
                break 'neg;
            }
        }
    }
    report
}
