//! The induction pipeline for the rank-one lattice algebra `V_L`,
//! `L = √(2N)·Z`: simples of `Rep⁰ V_L`, their fusion, associator,
//! braiding and twist, all read off morphisms in the completion.
//!
//! Labels are the integers `a ∈ {0..2N−1}` standing for `a/√(2N)`, so
//! `d = 1` throughout and `k(a, b) ∈ {0, 2N}`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::algebra::{induce, is_local, lattice_algebra, normalized_f, AlgebraObject, Mode, RepObject};
use crate::error::{Error, Result};
use crate::exact::Phase;
use crate::pointed_base::{
    check_base_coherence, cochain_scalar, cocycle_k, heisenberg_data, lattice_reference_data, BaseAxiom, BaseLabel,
    CochainKind, Grain, Scope, SkeletalData,
};
use crate::report::Report;
use crate::sum_completion::{compose, identity_of, Index, SumMorphism, Window};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionEntry {
    pub result: i64,
    pub k: i64,
}

/// Exponent tables of `Rep⁰ V_L`; every phase is stored as `q` in `e^{iπq}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rep0Tables {
    pub schema: u32,
    #[serde(rename = "N")]
    pub n: u64,
    pub simples: Vec<i64>,
    pub fusion: Vec<Vec<FusionEntry>>,
    pub assoc: Vec<Vec<Vec<Phase>>>,
    pub braid: Vec<Vec<Phase>>,
    pub twist: Vec<Phase>,
    /// Twist of the reference module category, carried for comparison.
    pub twist_41: Vec<Phase>,
}

fn ensure_positive(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::DomainMismatch("N must be at least 1".into()));
    }
    Ok(())
}

/// `induce(V_L, a)` for `a ∈ {0..2N−1}`, each confirmed local.
pub fn rep0_simples(n: u64) -> Result<Vec<RepObject>> {
    ensure_positive(n)?;
    let alg = lattice_algebra(n, 1);
    (0..2 * n as i64)
        .map(|a| {
            let mut m = induce(&alg, &BaseLabel::scalar(a))?;
            let local = is_local(&alg, &m, &Mode::Symbolic)?;
            if !local {
                return Err(Error::NotLocal(a));
            }
            m.local = Some(true);
            Ok(m)
        })
        .collect()
}

/// `e^{iπq}` with `lhs = e^{iπq}·rhs`, when both are affine with the same
/// index map and coefficient and the exponent difference is constant mod 2.
pub fn scalar_ratio(lhs: &SumMorphism, rhs: &SumMorphism) -> Result<Phase> {
    let not_scalar = |why: &str| Error::NotConstantOnWindow(format!("ratio is not a scalar: {why}"));
    if lhs.source() != rhs.source() || lhs.target() != rhs.target() {
        return Err(Error::DomainMismatch("ratio of morphisms between different objects".into()));
    }
    let (l, r) = match (lhs.affine_body(), rhs.affine_body()) {
        (Some(l), Some(r)) => (l, r),
        _ => return Err(not_scalar("non-affine factor")),
    };
    if l.index_map != r.index_map || l.coefficient != r.coefficient {
        return Err(not_scalar("index maps or coefficients differ"));
    }
    (&l.exponent - &r.exponent)
        .constant_mod2()
        .map(Phase::new)
        .ok_or_else(|| not_scalar("exponent varies"))
}

fn label_offset(m: &SumMorphism) -> Result<i64> {
    Ok(m.target().label_of(&Index::Point(vec![0]))?.values()[0])
}

struct Pipeline {
    alg: AlgebraObject,
    modules: Vec<RepObject>,
    /// `f̃^{a,b}`, indexed `[a][b]`.
    f: Vec<Vec<SumMorphism>>,
    fusion: Vec<Vec<FusionEntry>>,
}

impl Pipeline {
    fn new(n: u64) -> Result<Self> {
        let modules = rep0_simples(n)?;
        let alg = lattice_algebra(n, 1);
        let size = 2 * n as i64;
        let mut f = Vec::new();
        let mut fusion = Vec::new();
        for a in 0..size {
            let mut row_f = Vec::new();
            let mut row = Vec::new();
            for b in 0..size {
                let ft = normalized_f(&alg, a, b)?;
                let result = label_offset(&ft)?;
                row.push(FusionEntry { result, k: a + b - result });
                row_f.push(ft);
            }
            f.push(row_f);
            fusion.push(row);
        }
        Ok(Pipeline { alg, modules, f, fusion })
    }

    fn fuse(&self, a: usize, b: usize) -> usize {
        self.fusion[a][b].result as usize
    }

    /// Ratio of `f̃^{b,a} ∘ c_{F(a),F(b)}` to `f̃^{a,b}`.
    fn braid(&self, a: usize, b: usize) -> Result<Phase> {
        let c = self.alg.completion();
        let lhs = compose(&self.f[b][a], &c.braiding(&self.modules[a].object, &self.modules[b].object)?)?;
        scalar_ratio(&lhs, &self.f[a][b])
    }

    fn twist(&self, a: usize) -> Result<Phase> {
        let obj = &self.modules[a].object;
        scalar_ratio(&self.alg.completion().twist(obj)?, &identity_of(obj))
    }

    /// Ratio of `φ_R ∘ a` to `φ_L`, where `φ_L = f̃^{a⊞b,c} ∘ (f̃^{a,b} ⊗ 1)`
    /// and `φ_R = f̃^{a,b⊞c} ∘ (1 ⊗ f̃^{b,c})`.
    fn assoc(&self, a: usize, b: usize, c: usize) -> Result<Phase> {
        let cat = self.alg.completion();
        let (fa, fb, fc) = (&self.modules[a].object, &self.modules[b].object, &self.modules[c].object);
        let phi_l = compose(
            &self.f[self.fuse(a, b)][c],
            &cat.tensor_morphisms(&self.f[a][b], &identity_of(fc))?,
        )?;
        let phi_r = compose(
            &self.f[a][self.fuse(b, c)],
            &cat.tensor_morphisms(&identity_of(fa), &self.f[b][c])?,
        )?;
        scalar_ratio(&compose(&phi_r, &cat.associator(fa, fb, fc)?)?, &phi_l)
    }
}

/// Tables of `Rep⁰ V_L` computed by induction: fusion from the target of the
/// normalized f-map, the other tables as scalar ratios of composites.
pub fn rep0_tables(n: u64) -> Result<Rep0Tables> {
    let p = Pipeline::new(n)?;
    let size = 2 * n as usize;
    let braid = (0..size)
        .map(|a| (0..size).map(|b| p.braid(a, b)).collect())
        .collect::<Result<Vec<Vec<_>>>>()?;
    let twist = (0..size).map(|a| p.twist(a)).collect::<Result<Vec<_>>>()?;
    let assoc = (0..size)
        .into_par_iter()
        .map(|a| {
            (0..size)
                .map(|b| (0..size).map(|c| p.assoc(a, b, c)).collect())
                .collect::<Result<Vec<Vec<_>>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let reference = lattice_reference_data(n);
    let alt = reference.using_alt_twist().expect("reference carries an alternative twist");
    let twist_41 = (0..size as i64)
        .map(|a| cochain_scalar(&alt, CochainKind::Twist, &[BaseLabel::scalar(a)]))
        .collect::<Result<Vec<_>>>()?;
    Ok(Rep0Tables {
        schema: SCHEMA_VERSION,
        n,
        simples: (0..size as i64).collect(),
        fusion: p.fusion,
        assoc,
        braid,
        twist,
        twist_41,
    })
}

/// The associator scalar assembled from braiding scalars `m_{x,λ}` along
/// `m_{x,λ2} · m_{x+y−k(x,y),λ3} · m⁻¹_{x,λ2+λ3−k(y,z)} · m⁻¹_{y,λ3}` at
/// every `(λ1, λ2, λ3)` in the window; it must not depend on the point.
pub fn associator_via_chain(n: u64, ax: i64, ay: i64, az: i64, w: &Window) -> Result<Phase> {
    ensure_positive(n)?;
    let grain = Grain::new(n, 1);
    let data = heisenberg_data(n, 1);
    let unit = grain.lattice_unit();
    let m = |x: i64, lambda: i64| cochain_scalar(&data, CochainKind::Braid, &[BaseLabel::scalar(x), BaseLabel::scalar(lambda)]);
    let (kxy, kyz) = (cocycle_k(grain, ax, ay), cocycle_k(grain, ay, az));
    let mut common: Option<(Vec<i64>, Phase)> = None;
    for p in w.points(3) {
        let (l2, l3) = (unit * p[1], unit * p[2]);
        let value = &(&m(ax, l2)? + &m(ax + ay - kxy, l3)?) - &(&m(ax, l2 + l3 - kyz)? + &m(ay, l3)?);
        match &common {
            None => common = Some((p, value)),
            Some((q, v)) if *v != value => {
                return Err(Error::NotConstantOnWindow(format!("{v} at {q:?} but {value} at {p:?}")));
            }
            Some(_) => {}
        }
    }
    common
        .map(|(_, v)| v)
        .ok_or_else(|| Error::NotConstantOnWindow("empty window".into()))
}

/// Field-by-field comparison with `lattice_reference_data(N)`. Fusion,
/// associator, braiding and twist must match; the reference's alternative
/// twist is compared too, with mismatches recorded as notes.
pub fn compare_with_reference(n: u64) -> Result<Report> {
    let tables = rep0_tables(n)?;
    Ok(compare_tables(&tables))
}

pub fn compare_tables(tables: &Rep0Tables) -> Report {
    let n = tables.n;
    let reference = lattice_reference_data(n);
    let grain = Grain::new(n, 1);
    let size = 2 * n as i64;
    let l = BaseLabel::scalar;
    let rf = |kind, labels: &[BaseLabel]| cochain_scalar(&reference, kind, labels).expect("arity is fixed");
    let mut report = Report::new("compare_with_reference", format!("N = {n}"));
    for a in 0..size {
        for b in 0..size {
            let got = &tables.fusion[a as usize][b as usize];
            let expected = FusionEntry {
                result: (a + b).rem_euclid(size),
                k: cocycle_k(grain, a, b),
            };
            report.check(*got == expected, || json!({"table": "fusion", "at": [a, b], "got": got, "expected": expected}));
            let got = &tables.braid[a as usize][b as usize];
            let expected = rf(CochainKind::Braid, &[l(a), l(b)]);
            report.check(*got == expected, || json!({"table": "braid", "at": [a, b], "got": got, "expected": expected}));
            for c in 0..size {
                let got = &tables.assoc[a as usize][b as usize][c as usize];
                let expected = rf(CochainKind::Assoc, &[l(a), l(b), l(c)]);
                report.check(*got == expected, || {
                    json!({"table": "assoc", "at": [a, b, c], "got": got, "expected": expected})
                });
            }
        }
        let got = &tables.twist[a as usize];
        let expected = rf(CochainKind::Twist, &[l(a)]);
        report.check(*got == expected, || json!({"table": "twist", "at": [a], "got": got, "expected": expected}));
    }
    let mismatches: Vec<String> = (0..size as usize)
        .filter(|&a| tables.twist[a] != tables.twist_41[a])
        .map(|a| format!("a={a}: {} vs {}", tables.twist[a], tables.twist_41[a]))
        .collect();
    if mismatches.is_empty() {
        report.note("twist agrees with the alternative reference twist everywhere");
    } else {
        report.note(format!(
            "twist differs from the alternative reference twist (exponents, pipeline vs alternative) at {}",
            mismatches.join(", ")
        ));
    }
    report
}

impl Rep0Tables {
    fn size(&self) -> i64 {
        2 * self.n as i64
    }

    fn idx(&self, a: &BaseLabel) -> usize {
        a.values()[0].rem_euclid(self.size()) as usize
    }

    /// The same tables with the alternative twist installed.
    pub fn with_twist_41(&self) -> Rep0Tables {
        Rep0Tables {
            twist: self.twist_41.clone(),
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tables serialize")
    }

    /// One CSV document per table, keyed by file name.
    pub fn to_csv(&self) -> BTreeMap<&'static str, String> {
        fn render(header: &[&str], rows: Vec<Vec<String>>) -> String {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(header).expect("in-memory write");
            for r in rows {
                w.write_record(&r).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii")
        }
        let size = self.size() as usize;
        let pairs = || (0..size).flat_map(|a| (0..size).map(move |b| (a, b)));
        let mut out = BTreeMap::new();
        out.insert(
            "fusion.csv",
            render(
                &["a", "b", "result", "k"],
                pairs()
                    .map(|(a, b)| {
                        let e = &self.fusion[a][b];
                        vec![a.to_string(), b.to_string(), e.result.to_string(), e.k.to_string()]
                    })
                    .collect(),
            ),
        );
        out.insert(
            "braid.csv",
            render(
                &["a", "b", "exponent"],
                pairs().map(|(a, b)| vec![a.to_string(), b.to_string(), self.braid[a][b].to_string()]).collect(),
            ),
        );
        out.insert(
            "assoc.csv",
            render(
                &["a", "b", "c", "exponent"],
                pairs()
                    .flat_map(|(a, b)| (0..size).map(move |c| (a, b, c)))
                    .map(|(a, b, c)| vec![a.to_string(), b.to_string(), c.to_string(), self.assoc[a][b][c].to_string()])
                    .collect(),
            ),
        );
        out.insert(
            "twist.csv",
            render(
                &["a", "twist", "twist_41"],
                (0..size)
                    .map(|a| vec![a.to_string(), self.twist[a].to_string(), self.twist_41[a].to_string()])
                    .collect(),
            ),
        );
        out
    }

    pub fn to_markdown(&self) -> String {
        let size = self.size() as usize;
        let mut s = String::new();
        let _ = writeln!(s, "# Rep0 V_L, N = {}\n", self.n);
        let _ = writeln!(s, "Exponents q stand for e^(iπq).\n");
        let _ = writeln!(s, "## Fusion (result, k)\n");
        let _ = writeln!(s, "| a\\b | {} |", (0..size).map(|b| b.to_string()).collect::<Vec<_>>().join(" | "));
        let _ = writeln!(s, "|---|{}", "---|".repeat(size));
        for a in 0..size {
            let cells: Vec<String> = self.fusion[a].iter().map(|e| format!("{}, {}", e.result, e.k)).collect();
            let _ = writeln!(s, "| {a} | {} |", cells.join(" | "));
        }
        let _ = writeln!(s, "\n## Braiding\n");
        let _ = writeln!(s, "| a\\b | {} |", (0..size).map(|b| b.to_string()).collect::<Vec<_>>().join(" | "));
        let _ = writeln!(s, "|---|{}", "---|".repeat(size));
        for a in 0..size {
            let cells: Vec<String> = self.braid[a].iter().map(Phase::to_string).collect();
            let _ = writeln!(s, "| {a} | {} |", cells.join(" | "));
        }
        let _ = writeln!(s, "\n## Twist\n");
        let _ = writeln!(s, "| a | twist | twist_41 |\n|---|---|---|");
        for a in 0..size {
            let _ = writeln!(s, "| {a} | {} | {} |", self.twist[a], self.twist_41[a]);
        }
        let _ = writeln!(s, "\n## Associator\n");
        let _ = writeln!(s, "| a | b | c | exponent |\n|---|---|---|---|");
        for a in 0..size {
            for b in 0..size {
                for c in 0..size {
                    let _ = writeln!(s, "| {a} | {b} | {c} | {} |", self.assoc[a][b][c]);
                }
            }
        }
        s
    }
}

impl SkeletalData for Rep0Tables {
    fn elements(&self, _scope: &Scope) -> Result<Vec<BaseLabel>> {
        Ok(self.simples.iter().map(|&a| BaseLabel::scalar(a)).collect())
    }

    fn fuse(&self, a: &BaseLabel, b: &BaseLabel) -> BaseLabel {
        BaseLabel::scalar(self.fusion[self.idx(a)][self.idx(b)].result)
    }

    fn unit(&self) -> BaseLabel {
        BaseLabel::scalar(0)
    }

    fn assoc_exp(&self, a: &BaseLabel, b: &BaseLabel, c: &BaseLabel) -> num_rational::BigRational {
        self.assoc[self.idx(a)][self.idx(b)][self.idx(c)].exponent().clone()
    }

    fn braid_exp(&self, a: &BaseLabel, b: &BaseLabel) -> num_rational::BigRational {
        self.braid[self.idx(a)][self.idx(b)].exponent().clone()
    }

    fn twist_exp(&self, a: &BaseLabel) -> num_rational::BigRational {
        self.twist[self.idx(a)].exponent().clone()
    }
}

/// Brute-force pentagon, triangle, both hexagons and balancing on the
/// pipeline's output. Balancing is also run with the alternative twist as a
/// negative control, which must fail.
pub fn verify_output_coherence(n: u64) -> Result<Report> {
    let tables = rep0_tables(n)?;
    verify_tables_coherence(&tables)
}

pub fn verify_tables_coherence(tables: &Rep0Tables) -> Result<Report> {
    let mut report = Report::new("output_coherence", format!("N = {}, all tuples", tables.n));
    for axiom in BaseAxiom::ALL {
        report.absorb(check_base_coherence(tables, axiom, &Scope::Full)?);
    }
    let control = check_base_coherence(&tables.with_twist_41(), BaseAxiom::Balancing, &Scope::Full)?;
    report.note(format!(
        "balancing with the alternative twist: {} of {} pairs fail",
        control.failures.len(),
        control.tuples_checked
    ));
    report.check(!control.passed(), || json!({"negative_control": "balancing with the alternative twist passed"}));
    Ok(report)
}
