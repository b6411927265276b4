//! Skeletal pointed braided categories described by cochain data.
//!
//! A simple object is a group element; `X_g ⊗ X_h = X_{g+h}`, and the
//! associator, braiding and twist are the phases `e^{iπ p}` of exponent
//! polynomials evaluated on canonical representatives.
//!
//! Exponent polynomials read their variables from fixed slots, one block of
//! `rank` variables per slot:
//!
//! * assoc: `[g, h, k, g+h, h+k]`
//! * braid: `[g, h]`
//! * twist: `[g]`
//!
//! The partial-sum slots hold the canonical representative of the sum, which
//! lets carry-type cocycles on cyclic groups be written as polynomials.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::exact::{is_even_integer, Phase, Poly};
use crate::report::Report;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingGroup {
    pub free_rank: usize,
    pub cyclic: Vec<u64>,
}

/// A group element. Free coordinates come first, then one coordinate per
/// cyclic factor.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BaseLabel(pub Vec<i64>);

impl BaseLabel {
    pub fn scalar(m: i64) -> Self {
        BaseLabel(vec![m])
    }

    pub fn zero(rank: usize) -> Self {
        BaseLabel(vec![0; rank])
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for BaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.as_slice() {
            [m] => write!(f, "{m}"),
            v => write!(f, "{v:?}"),
        }
    }
}

/// Which labels a coherence check ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Every group element; only meaningful for finite groups.
    Full,
    /// Free coordinates in `[lo, hi]`; cyclic coordinates range fully.
    Window { lo: i64, hi: i64 },
}

impl Scope {
    pub fn describe(&self) -> String {
        match self {
            Scope::Full => "full".to_string(),
            Scope::Window { lo, hi } => format!("window [{lo},{hi}]"),
        }
    }
}

impl GradingGroup {
    pub fn free(rank: usize) -> Self {
        GradingGroup {
            free_rank: rank,
            cyclic: Vec::new(),
        }
    }

    pub fn cyclic(n: u64) -> Self {
        GradingGroup {
            free_rank: 0,
            cyclic: vec![n],
        }
    }

    pub fn rank(&self) -> usize {
        self.free_rank + self.cyclic.len()
    }

    pub fn is_free(&self) -> bool {
        self.cyclic.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Canonical representative: cyclic coordinates reduced into `[0, n)`.
    pub fn reduce(&self, v: &[i64]) -> BaseLabel {
        debug_assert_eq!(v.len(), self.rank());
        let mut out = v.to_vec();
        for (x, &n) in out[self.free_rank..].iter_mut().zip(&self.cyclic) {
            *x = x.rem_euclid(n as i64);
        }
        BaseLabel(out)
    }

    pub fn add(&self, a: &BaseLabel, b: &BaseLabel) -> BaseLabel {
        let v: Vec<i64> = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
        self.reduce(&v)
    }

    pub fn neg(&self, a: &BaseLabel) -> BaseLabel {
        let v: Vec<i64> = a.0.iter().map(|x| -x).collect();
        self.reduce(&v)
    }

    pub fn zero(&self) -> BaseLabel {
        BaseLabel::zero(self.rank())
    }

    pub fn elements(&self, scope: &Scope) -> Result<Vec<BaseLabel>> {
        let (lo, hi) = match scope {
            Scope::Full if !self.is_finite() => return Err(Error::InfiniteScope),
            Scope::Full => (0, -1),
            Scope::Window { lo, hi } => (*lo, *hi),
        };
        let ranges: Vec<(i64, i64)> = (0..self.free_rank)
            .map(|_| (lo, hi))
            .chain(self.cyclic.iter().map(|&n| (0, n as i64 - 1)))
            .collect();
        let mut out = vec![Vec::new()];
        for (a, b) in ranges {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<i64>| {
                    (a..=b).map(move |x| {
                        let mut p = prefix.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        Ok(out.into_iter().map(BaseLabel).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CochainKind {
    Assoc,
    Braid,
    Twist,
}

impl CochainKind {
    pub fn arity(self) -> usize {
        match self {
            CochainKind::Assoc => 3,
            CochainKind::Braid => 2,
            CochainKind::Twist => 1,
        }
    }

    pub fn slots(self) -> usize {
        match self {
            CochainKind::Assoc => 5,
            CochainKind::Braid => 2,
            CochainKind::Twist => 1,
        }
    }
}

/// Lattice parameter `N` and grain `d`: an integer label `m` stands for the
/// weight `m / (d √(2N))`, so `L = 2Nd·Z` and `L* = d·Z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grain {
    #[serde(rename = "N")]
    pub n: u64,
    pub d: u64,
}

impl Grain {
    pub fn new(n: u64, d: u64) -> Self {
        assert!(n >= 1 && d >= 1, "grain parameters must be positive");
        Grain { n, d }
    }

    /// `2Nd`, the integer unit of the lattice `L`.
    pub fn lattice_unit(&self) -> i64 {
        (2 * self.n * self.d) as i64
    }

    /// `2N d²`, the denominator of `λ1 λ2` in integer units.
    pub fn form_denominator(&self) -> i64 {
        (2 * self.n * self.d * self.d) as i64
    }

    pub fn two_n(&self) -> i64 {
        (2 * self.n) as i64
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointedData {
    pub group: GradingGroup,
    pub assoc: Poly,
    pub braid: Poly,
    pub twist: Poly,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alt_twist: Option<Poly>,
    #[serde(flatten)]
    pub grain: Option<Grain>,
}

fn monomial(nvars: usize, powers: &[(usize, u32)], c: BigRational) -> Poly {
    let mut m = vec![0u32; nvars];
    for &(i, e) in powers {
        m[i] += e;
    }
    Poly::from_terms(nvars, [(m, c)])
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// The Heisenberg category on `Z`: trivial associator, braiding
/// `m1 m2 / (2Nd²)` and twist `m² / (2Nd²)`.
pub fn heisenberg_data(n: u64, d: u64) -> PointedData {
    let grain = Grain::new(n, d);
    let den = grain.form_denominator();
    PointedData {
        group: GradingGroup::free(1),
        assoc: Poly::zero(5),
        braid: monomial(2, &[(0, 1), (1, 1)], ratio(1, den)),
        twist: monomial(1, &[(0, 2)], ratio(1, den)),
        alt_twist: None,
        grain: Some(grain),
    }
}

/// `Z/n` with trivial associator, braiding `2ij/n` and twist `2i²/n`.
pub fn cyclic_data(n: u64) -> PointedData {
    assert!(n >= 1);
    let n = n as i64;
    PointedData {
        group: GradingGroup::cyclic(n as u64),
        assoc: Poly::zero(5),
        braid: monomial(2, &[(0, 1), (1, 1)], ratio(2, n)),
        twist: monomial(1, &[(0, 2)], ratio(2, n)),
        alt_twist: None,
        grain: None,
    }
}

/// The lattice module category on `Z/2N`: associator `a · carry(b, c)`,
/// braiding `ab/(2N)`, twist `a²/(2N)`; the alternative twist is `a²/N`.
pub fn lattice_reference_data(n: u64) -> PointedData {
    let grain = Grain::new(n, 1);
    let two_n = grain.two_n();
    // a·(b + c − (b ⊞ c))/(2N), slots [a, b, c, a⊞b, b⊞c]
    let inv = ratio(1, two_n);
    let assoc = &(&monomial(5, &[(0, 1), (1, 1)], inv.clone()) + &monomial(5, &[(0, 1), (2, 1)], inv.clone()))
        - &monomial(5, &[(0, 1), (4, 1)], inv.clone());
    PointedData {
        group: GradingGroup::cyclic(two_n as u64),
        assoc,
        braid: monomial(2, &[(0, 1), (1, 1)], inv.clone()),
        twist: monomial(1, &[(0, 2)], inv),
        alt_twist: Some(monomial(1, &[(0, 2)], ratio(1, n as i64))),
        grain: Some(grain),
    }
}

/// `k(a, b)` in integer units: `2Nd` when the representatives `a, b ∈ [0, 2N)`
/// sum past the fundamental domain, else 0.
pub fn cocycle_k(grain: Grain, a: i64, b: i64) -> i64 {
    let two_n = grain.two_n();
    debug_assert!((0..two_n).contains(&a) && (0..two_n).contains(&b));
    if a + b >= two_n {
        grain.lattice_unit()
    } else {
        0
    }
}

impl PointedData {
    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn cochain(&self, kind: CochainKind) -> &Poly {
        match kind {
            CochainKind::Assoc => &self.assoc,
            CochainKind::Braid => &self.braid,
            CochainKind::Twist => &self.twist,
        }
    }

    /// The same data with the alternative twist installed, if there is one.
    pub fn using_alt_twist(&self) -> Option<PointedData> {
        let alt = self.alt_twist.clone()?;
        Some(PointedData {
            twist: alt,
            alt_twist: None,
            ..self.clone()
        })
    }

    fn slot_labels(&self, kind: CochainKind, labels: &[BaseLabel]) -> Result<Vec<BaseLabel>> {
        if labels.len() != kind.arity() {
            return Err(Error::ArityMismatch {
                expected: kind.arity(),
                got: labels.len(),
            });
        }
        let g = &self.group;
        let mut reps: Vec<BaseLabel> = labels.iter().map(|l| g.reduce(l.values())).collect();
        if kind == CochainKind::Assoc {
            reps.push(g.add(&reps[0], &reps[1]));
            reps.push(g.add(&reps[1], &reps[2]));
        }
        Ok(reps)
    }

    /// Unreduced exponent of the cochain at the given labels.
    pub fn exponent(&self, kind: CochainKind, labels: &[BaseLabel]) -> Result<BigRational> {
        let point: Vec<i64> = self
            .slot_labels(kind, labels)?
            .into_iter()
            .flat_map(|l| l.0)
            .collect();
        Ok(self.cochain(kind).eval_int(&point))
    }

    /// Exponent polynomial with each label given as one polynomial in `nvars`
    /// variables per coordinate; only free groups, where sums need no
    /// reduction.
    pub fn symbolic_exponent(&self, kind: CochainKind, labels: &[Vec<Poly>], nvars: usize) -> Result<Poly> {
        if !self.group.is_free() {
            return Err(Error::UnsupportedDomain(
                "symbolic cochains need a free grading group".into(),
            ));
        }
        if labels.len() != kind.arity() {
            return Err(Error::ArityMismatch {
                expected: kind.arity(),
                got: labels.len(),
            });
        }
        let sum = |a: &Vec<Poly>, b: &Vec<Poly>| -> Vec<Poly> { a.iter().zip(b).map(|(x, y)| x + y).collect() };
        let mut slots: Vec<Vec<Poly>> = labels.to_vec();
        if kind == CochainKind::Assoc {
            slots.push(sum(&labels[0], &labels[1]));
            slots.push(sum(&labels[1], &labels[2]));
        }
        let subs: Vec<Poly> = slots.into_iter().flatten().collect();
        Ok(self.cochain(kind).substitute(&subs, nvars))
    }
}

pub fn cochain_scalar(data: &PointedData, kind: CochainKind, labels: &[BaseLabel]) -> Result<Phase> {
    data.exponent(kind, labels).map(Phase::new)
}

/// Read access to a skeletal pointed braided category, however it is stored.
pub trait SkeletalData {
    fn elements(&self, scope: &Scope) -> Result<Vec<BaseLabel>>;
    fn fuse(&self, a: &BaseLabel, b: &BaseLabel) -> BaseLabel;
    fn unit(&self) -> BaseLabel;
    fn assoc_exp(&self, a: &BaseLabel, b: &BaseLabel, c: &BaseLabel) -> BigRational;
    fn braid_exp(&self, a: &BaseLabel, b: &BaseLabel) -> BigRational;
    fn twist_exp(&self, a: &BaseLabel) -> BigRational;
}

impl SkeletalData for PointedData {
    fn elements(&self, scope: &Scope) -> Result<Vec<BaseLabel>> {
        self.group.elements(scope)
    }

    fn fuse(&self, a: &BaseLabel, b: &BaseLabel) -> BaseLabel {
        self.group.add(a, b)
    }

    fn unit(&self) -> BaseLabel {
        self.group.zero()
    }

    fn assoc_exp(&self, a: &BaseLabel, b: &BaseLabel, c: &BaseLabel) -> BigRational {
        self.exponent(CochainKind::Assoc, &[a.clone(), b.clone(), c.clone()])
            .expect("arity is fixed")
    }

    fn braid_exp(&self, a: &BaseLabel, b: &BaseLabel) -> BigRational {
        self.exponent(CochainKind::Braid, &[a.clone(), b.clone()])
            .expect("arity is fixed")
    }

    fn twist_exp(&self, a: &BaseLabel) -> BigRational {
        self.exponent(CochainKind::Twist, std::slice::from_ref(a))
            .expect("arity is fixed")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaseAxiom {
    Pentagon,
    Hexagon,
    Balancing,
    Triangle,
}

impl BaseAxiom {
    pub const ALL: [BaseAxiom; 4] = [
        BaseAxiom::Pentagon,
        BaseAxiom::Hexagon,
        BaseAxiom::Balancing,
        BaseAxiom::Triangle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BaseAxiom::Pentagon => "pentagon",
            BaseAxiom::Hexagon => "hexagon",
            BaseAxiom::Balancing => "balancing",
            BaseAxiom::Triangle => "triangle",
        }
    }
}

impl FromStr for BaseAxiom {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        BaseAxiom::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown axiom {s:?}")))
    }
}

fn congruent(lhs: &BigRational, rhs: &BigRational) -> bool {
    is_even_integer(&(lhs - rhs))
}

fn labels_json(ls: &[&BaseLabel]) -> serde_json::Value {
    json!(ls.iter().map(|l| &l.0).collect::<Vec<_>>())
}

/// Exhaustively checks one coherence axiom as an identity of exponents mod 2.
///
/// * pentagon: `A` is a 3-cocycle.
/// * hexagon: both hexagon identities, with associator corrections.
/// * balancing: `θ(g+h) = θ(g) + θ(h) + B(g,h) + B(h,g)`.
/// * triangle: `A` vanishes whenever an argument is the unit, as do `B` and
///   `θ` at the unit.
pub fn check_base_coherence<D: SkeletalData + ?Sized>(data: &D, axiom: BaseAxiom, scope: &Scope) -> Result<Report> {
    let els = data.elements(scope)?;
    let mut report = Report::new(axiom.name(), scope.describe());
    let a = |x: &BaseLabel, y: &BaseLabel, z: &BaseLabel| data.assoc_exp(x, y, z);
    let b = |x: &BaseLabel, y: &BaseLabel| data.braid_exp(x, y);
    let s = |x: &BaseLabel, y: &BaseLabel| data.fuse(x, y);
    match axiom {
        BaseAxiom::Pentagon => {
            for g in &els {
                for h in &els {
                    let gh = s(g, h);
                    for k in &els {
                        let hk = s(h, k);
                        let ghk_inner = a(g, h, k);
                        for l in &els {
                            let lhs = a(h, k, l) + a(g, &hk, l) + ghk_inner.clone();
                            let rhs = a(&gh, k, l) + a(g, h, &s(k, l));
                            report.check(congruent(&lhs, &rhs), || labels_json(&[g, h, k, l]));
                        }
                    }
                }
            }
        }
        BaseAxiom::Hexagon => {
            for g in &els {
                for h in &els {
                    for k in &els {
                        let lhs1 = a(h, k, g) + b(g, &s(h, k)) + a(g, h, k);
                        let rhs1 = b(g, k) + a(h, g, k) + b(g, h);
                        let lhs2 = b(&s(g, h), k) - a(k, g, h) - a(g, h, k);
                        let rhs2 = b(g, k) - a(g, k, h) + b(h, k);
                        let ok = congruent(&lhs1, &rhs1) && congruent(&lhs2, &rhs2);
                        report.check(ok, || labels_json(&[g, h, k]));
                    }
                }
            }
        }
        BaseAxiom::Balancing => {
            for g in &els {
                for h in &els {
                    let lhs = data.twist_exp(&s(g, h));
                    let rhs = data.twist_exp(g) + data.twist_exp(h) + b(g, h) + b(h, g);
                    report.check(congruent(&lhs, &rhs), || labels_json(&[g, h]));
                }
            }
        }
        BaseAxiom::Triangle => {
            let e = data.unit();
            let zero = BigRational::from_integer(BigInt::from(0));
            report.check(congruent(&data.twist_exp(&e), &zero), || labels_json(&[&e]));
            for g in &els {
                let ok = congruent(&b(&e, g), &zero) && congruent(&b(g, &e), &zero);
                report.check(ok, || labels_json(&[&e, g]));
                for h in &els {
                    let ok = [a(g, &e, h), a(&e, g, h), a(g, h, &e)]
                        .iter()
                        .all(|x| congruent(x, &zero));
                    report.check(ok, || labels_json(&[g, h]));
                }
            }
        }
    }
    Ok(report)
}
