//! Monoidal, braided and balanced structure on the completion.
//!
//! Tensor products of finite objects are indexed by pairs. As soon as a
//! lattice factor is present the product is a lattice whose points are the
//! concatenated factor points (a singleton contributes the empty point), so
//! re-bracketing is the identity on indices and every structure morphism
//! between lattice objects is affine.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{CycNum, Phase, Poly};
use crate::pointed_base::{BaseLabel, CochainKind, PointedData, Scope, SkeletalData};
use crate::report::Report;
use crate::sum_completion::{
    add_scale, assemble_from_components, compose, coproduct, direct_sum_pair, identity_of, restrict_component, scale,
    unit_object, zero_of, AffineMap, Index, SumMorphism, SumObject,
};

/// The completion of one base category.
#[derive(Clone, Debug)]
pub struct Completion {
    base: PointedData,
}

fn label_polys(labels: &AffineMap, nvars: usize, offset: usize) -> Vec<Poly> {
    labels.as_polys().iter().map(|p| p.embed(nvars, offset)).collect()
}

fn lattice_pair(x: &SumObject, y: &SumObject) -> Option<((usize, AffineMap), (usize, AffineMap))> {
    if x.is_finite() && y.is_finite() {
        return None;
    }
    Some((x.lattice_view()?, y.lattice_view()?))
}

impl Completion {
    pub fn new(base: PointedData) -> Self {
        Completion { base }
    }

    pub fn base(&self) -> &PointedData {
        &self.base
    }

    pub fn unit(&self) -> SumObject {
        unit_object(self.base.rank())
    }

    fn need_free(&self) -> Result<()> {
        if self.base.group.is_free() {
            Ok(())
        } else {
            Err(Error::UnsupportedDomain("lattice objects need a free grading group".into()))
        }
    }

    pub fn tensor_objects(&self, x: &SumObject, y: &SumObject) -> Result<SumObject> {
        if let (Some(lx), Some(ly)) = (x.finite_labels(), y.finite_labels()) {
            let g = &self.base.group;
            return SumObject::finite(
                self.base.rank(),
                lx.iter()
                    .flat_map(|(s, a)| ly.iter().map(move |(t, b)| (Index::pair(s.clone(), t.clone()), g.add(a, b)))),
            );
        }
        let ((rx, ax), (ry, ay)) = lattice_pair(x, y).ok_or_else(|| {
            Error::UnsupportedDomain("a lattice can only be tensored with lattices and singletons".into())
        })?;
        self.need_free()?;
        let linear = ax
            .linear()
            .iter()
            .zip(ay.linear())
            .map(|(r1, r2)| r1.iter().chain(r2).copied().collect())
            .collect();
        let offset = ax.offset().iter().zip(ay.offset()).map(|(a, b)| a + b).collect();
        Ok(SumObject::lattice(AffineMap::new(rx + ry, linear, offset)))
    }

    /// Index of `s ⊗ t` in `x ⊗ y`.
    pub fn tensor_index(&self, x: &SumObject, y: &SumObject, s: &Index, t: &Index) -> Index {
        if x.is_finite() && y.is_finite() {
            return Index::pair(s.clone(), t.clone());
        }
        let mut p = x.index_point(s).expect("index in lattice view");
        p.extend(y.index_point(t).expect("index in lattice view"));
        Index::Point(p)
    }

    fn tensor_explicit(&self, f: &SumMorphism, g: &SumMorphism) -> Result<SumMorphism> {
        let source = self.tensor_objects(f.source(), g.source())?;
        let target = self.tensor_objects(f.target(), g.target())?;
        let (cf, cg) = (f.components().unwrap(), g.components().unwrap());
        let mut entries = Vec::new();
        for (s, rf) in cf {
            for (t, rg) in cg {
                let st = self.tensor_index(f.source(), g.source(), s, t);
                for (s2, x) in rf {
                    for (t2, y) in rg {
                        let st2 = self.tensor_index(f.target(), g.target(), s2, t2);
                        entries.push((st.clone(), st2, x * y));
                    }
                }
            }
        }
        SumMorphism::explicit(source, target, entries)
    }

    fn tensor_affine(&self, f: &SumMorphism, g: &SumMorphism) -> Result<SumMorphism> {
        let (fa, ga) = (f.affine_body().unwrap(), g.affine_body().unwrap());
        let (rf, rg) = (fa.index_map.inputs(), ga.index_map.inputs());
        SumMorphism::affine(
            self.tensor_objects(f.source(), g.source())?,
            self.tensor_objects(f.target(), g.target())?,
            fa.index_map.block(&ga.index_map),
            &fa.exponent.embed(rf + rg, 0) + &ga.exponent.embed(rf + rg, rf),
            &fa.coefficient * &ga.coefficient,
        )
    }

    pub fn tensor_morphisms(&self, f: &SumMorphism, g: &SumMorphism) -> Result<SumMorphism> {
        match (f.is_affine(), g.is_affine()) {
            (false, false) => self.tensor_explicit(f, g),
            (true, true) => self.tensor_affine(f, g),
            _ => {
                if let (Some(fa), Some(ga)) = (f.to_affine(), g.to_affine()) {
                    return self.tensor_affine(&fa, &ga);
                }
                match (f.to_explicit(), g.to_explicit()) {
                    (Ok(fe), Ok(ge)) => self.tensor_explicit(&fe, &ge),
                    _ => Err(Error::MixedFormUnsupported("tensor of explicit and affine on a lattice".into())),
                }
            }
        }
    }

    fn phase(&self, kind: CochainKind, labels: &[BaseLabel]) -> Result<CycNum> {
        Ok(CycNum::from(Phase::new(self.base.exponent(kind, labels)?)))
    }

    /// Lattice views of several objects, variables laid out consecutively.
    fn views(&self, objs: &[&SumObject]) -> Option<(usize, Vec<Vec<Poly>>)> {
        let views: Vec<(usize, AffineMap)> = objs.iter().map(|o| o.lattice_view()).collect::<Option<_>>()?;
        let total: usize = views.iter().map(|(r, _)| r).sum();
        let mut offset = 0;
        let polys = views
            .iter()
            .map(|(r, map)| {
                let p = label_polys(map, total, offset);
                offset += r;
                p
            })
            .collect();
        Some((total, polys))
    }

    fn all_finite(objs: &[&SumObject]) -> bool {
        objs.iter().all(|o| o.is_finite())
    }

    /// `a_{X,Y,Z} : (X⊗Y)⊗Z → X⊗(Y⊗Z)`.
    pub fn associator(&self, x: &SumObject, y: &SumObject, z: &SumObject) -> Result<SumMorphism> {
        self.associator_signed(x, y, z, false)
    }

    /// `a⁻¹_{X,Y,Z} : X⊗(Y⊗Z) → (X⊗Y)⊗Z`.
    pub fn associator_inverse(&self, x: &SumObject, y: &SumObject, z: &SumObject) -> Result<SumMorphism> {
        self.associator_signed(x, y, z, true)
    }

    fn associator_signed(&self, x: &SumObject, y: &SumObject, z: &SumObject, inverse: bool) -> Result<SumMorphism> {
        let left = self.tensor_objects(&self.tensor_objects(x, y)?, z)?;
        let right = self.tensor_objects(x, &self.tensor_objects(y, z)?)?;
        let (source, target) = if inverse { (right, left) } else { (left, right) };
        if Self::all_finite(&[x, y, z]) {
            let mut entries = Vec::new();
            for (s, ls) in x.finite_labels().unwrap() {
                for (t, lt) in y.finite_labels().unwrap() {
                    for (r, lr) in z.finite_labels().unwrap() {
                        let a = self.phase(CochainKind::Assoc, &[ls.clone(), lt.clone(), lr.clone()])?;
                        let l = Index::pair(Index::pair(s.clone(), t.clone()), r.clone());
                        let rr = Index::pair(s.clone(), Index::pair(t.clone(), r.clone()));
                        entries.push(if inverse {
                            (rr, l, a.inv_monomial()?)
                        } else {
                            (l, rr, a)
                        });
                    }
                }
            }
            return SumMorphism::explicit(source, target, entries);
        }
        let (n, labels) = self
            .views(&[x, y, z])
            .ok_or_else(|| Error::UnsupportedDomain("associator of a lattice with a finite sum".into()))?;
        let p = self.base.symbolic_exponent(CochainKind::Assoc, &labels, n)?;
        let p = if inverse { -&p } else { p };
        SumMorphism::affine(source, target, AffineMap::identity(n), p, BigRational::one())
    }

    /// `(l_X : 𝟙⊗X → X, r_X : X⊗𝟙 → X)`.
    pub fn unit_constraints(&self, x: &SumObject) -> Result<(SumMorphism, SumMorphism)> {
        let u = self.unit();
        let ux = self.tensor_objects(&u, x)?;
        let xu = self.tensor_objects(x, &u)?;
        match x {
            SumObject::Finite { labels, .. } => {
                let zero = Index::Atom(0);
                let l = SumMorphism::explicit(
                    ux,
                    x.clone(),
                    labels.keys().map(|s| (Index::pair(zero.clone(), s.clone()), s.clone(), CycNum::one())),
                )?;
                let r = SumMorphism::explicit(
                    xu,
                    x.clone(),
                    labels.keys().map(|s| (Index::pair(s.clone(), zero.clone()), s.clone(), CycNum::one())),
                )?;
                Ok((l, r))
            }
            SumObject::Lattice { rank, .. } => {
                let id = |src: SumObject| {
                    SumMorphism::affine(src, x.clone(), AffineMap::identity(*rank), Poly::zero(*rank), BigRational::one())
                };
                Ok((id(ux)?, id(xu)?))
            }
        }
    }

    /// `c_{X,Y} : X⊗Y → Y⊗X`.
    pub fn braiding(&self, x: &SumObject, y: &SumObject) -> Result<SumMorphism> {
        let source = self.tensor_objects(x, y)?;
        let target = self.tensor_objects(y, x)?;
        if Self::all_finite(&[x, y]) {
            let mut entries = Vec::new();
            for (s, ls) in x.finite_labels().unwrap() {
                for (t, lt) in y.finite_labels().unwrap() {
                    let b = self.phase(CochainKind::Braid, &[ls.clone(), lt.clone()])?;
                    entries.push((Index::pair(s.clone(), t.clone()), Index::pair(t.clone(), s.clone()), b));
                }
            }
            return SumMorphism::explicit(source, target, entries);
        }
        let (n, labels) = self
            .views(&[x, y])
            .ok_or_else(|| Error::UnsupportedDomain("braiding of a lattice with a finite sum".into()))?;
        let rx = x.lattice_view().unwrap().0;
        // (n_x, n_y) ↦ (n_y, n_x)
        let swap = AffineMap::new(
            n,
            (0..n)
                .map(|i| {
                    let src = if i < n - rx { rx + i } else { i - (n - rx) };
                    (0..n).map(|j| i64::from(j == src)).collect()
                })
                .collect(),
            vec![0; n],
        );
        let p = self.base.symbolic_exponent(CochainKind::Braid, &labels, n)?;
        SumMorphism::affine(source, target, swap, p, BigRational::one())
    }

    /// `θ_X`, diagonal.
    pub fn twist(&self, x: &SumObject) -> Result<SumMorphism> {
        match x {
            SumObject::Finite { labels, .. } => {
                let entries = labels
                    .iter()
                    .map(|(s, l)| Ok((s.clone(), s.clone(), self.phase(CochainKind::Twist, std::slice::from_ref(l))?)))
                    .collect::<Result<Vec<_>>>()?;
                SumMorphism::explicit(x.clone(), x.clone(), entries)
            }
            SumObject::Lattice { rank, labels } => {
                let p = self
                    .base
                    .symbolic_exponent(CochainKind::Twist, &[label_polys(labels, *rank, 0)], *rank)?;
                SumMorphism::affine(x.clone(), x.clone(), AffineMap::identity(*rank), p, BigRational::one())
            }
        }
    }

    /// `c_{Y,X} ∘ c_{X,Y}`.
    pub fn monodromy(&self, x: &SumObject, y: &SumObject) -> Result<SumMorphism> {
        compose(&self.braiding(y, x)?, &self.braiding(x, y)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CompletionAxiom {
    CategoryLaws,
    Bilinearity,
    VectorSpace,
    DirectSum,
    Coproduct,
    Bifunctoriality,
    Naturality,
    Pentagon,
    Triangle,
    Hexagon,
    Balancing,
}

impl CompletionAxiom {
    pub const ALL: [CompletionAxiom; 11] = [
        CompletionAxiom::CategoryLaws,
        CompletionAxiom::Bilinearity,
        CompletionAxiom::VectorSpace,
        CompletionAxiom::DirectSum,
        CompletionAxiom::Coproduct,
        CompletionAxiom::Bifunctoriality,
        CompletionAxiom::Naturality,
        CompletionAxiom::Pentagon,
        CompletionAxiom::Triangle,
        CompletionAxiom::Hexagon,
        CompletionAxiom::Balancing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CompletionAxiom::CategoryLaws => "category_laws",
            CompletionAxiom::Bilinearity => "bilinearity",
            CompletionAxiom::VectorSpace => "vector_space",
            CompletionAxiom::DirectSum => "direct_sum",
            CompletionAxiom::Coproduct => "coproduct",
            CompletionAxiom::Bifunctoriality => "bifunctoriality",
            CompletionAxiom::Naturality => "naturality",
            CompletionAxiom::Pentagon => "pentagon",
            CompletionAxiom::Triangle => "triangle",
            CompletionAxiom::Hexagon => "hexagon",
            CompletionAxiom::Balancing => "balancing",
        }
    }
}

impl std::str::FromStr for CompletionAxiom {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CompletionAxiom::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown axiom {s:?}")))
    }
}

/// Random finite objects and morphisms over one base.
pub struct Sampler {
    rng: ChaCha8Rng,
    labels: Vec<BaseLabel>,
    rank: usize,
    max_size: usize,
}

impl Sampler {
    /// Labels are drawn from the whole group when it is finite, otherwise
    /// from the window `[-4, 4]`.
    pub fn new(base: &PointedData, max_size: usize, seed: u64) -> Self {
        let scope = if base.group.is_finite() {
            Scope::Full
        } else {
            Scope::Window { lo: -4, hi: 4 }
        };
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            labels: base.elements(&scope).expect("finite scope"),
            rank: base.rank(),
            max_size: max_size.max(1),
        }
    }

    pub fn object(&mut self) -> SumObject {
        let n = self.rng.gen_range(1..=self.max_size);
        let entries: Vec<(Index, BaseLabel)> = (0..n)
            .map(|i| (Index::Atom(i as i64), self.labels.choose(&mut self.rng).unwrap().clone()))
            .collect();
        SumObject::finite(self.rank, entries).unwrap()
    }

    pub fn scalar(&mut self) -> CycNum {
        const DENOMS: [i64; 6] = [1, 2, 3, 4, 6, 12];
        let terms = self.rng.gen_range(1..=3);
        CycNum::from_terms((0..terms).map(|_| {
            let q = *DENOMS.choose(&mut self.rng).unwrap();
            let p = self.rng.gen_range(0..2 * q);
            let c = BigRational::new(self.rng.gen_range(-3..=3).into(), self.rng.gen_range(1..=2).into());
            (c, Phase::from_ratio(p, q))
        }))
    }

    /// About half of the label-compatible components are filled.
    pub fn morphism(&mut self, x: &SumObject, y: &SumObject) -> SumMorphism {
        let mut entries = Vec::new();
        for (s, ls) in x.finite_labels().unwrap() {
            for (t, lt) in y.finite_labels().unwrap() {
                if ls == lt && self.rng.gen_bool(0.5) {
                    entries.push((s.clone(), t.clone(), self.scalar()));
                }
            }
        }
        SumMorphism::explicit(x.clone(), y.clone(), entries).unwrap()
    }

    /// An object sharing some labels with `x`, so random morphisms are nonzero.
    pub fn object_like(&mut self, x: &SumObject) -> SumObject {
        let pool: Vec<BaseLabel> = x.finite_labels().unwrap().values().cloned().collect();
        let n = self.rng.gen_range(1..=self.max_size);
        let entries: Vec<(Index, BaseLabel)> = (0..n)
            .map(|i| {
                let l = if self.rng.gen_bool(0.7) {
                    pool.choose(&mut self.rng).unwrap().clone()
                } else {
                    self.labels.choose(&mut self.rng).unwrap().clone()
                };
                (Index::Atom(100 + i as i64), l)
            })
            .collect();
        SumObject::finite(self.rank, entries).unwrap()
    }
}

fn same(a: &Result<SumMorphism>, b: &Result<SumMorphism>) -> bool {
    matches!((a, b), (Ok(x), Ok(y)) if x == y)
}

/// Randomized check of one law over finite objects and morphisms; every
/// failure records the seed, trial number and the offending data.
pub fn check_completion_coherence(
    axiom: CompletionAxiom,
    data: &PointedData,
    trials: usize,
    max_size: usize,
    seed: u64,
) -> Report {
    let c = Completion::new(data.clone());
    let mut smp = Sampler::new(data, max_size, seed);
    let mut report = Report::new(axiom.name(), format!("random trials={trials} max_size={max_size} seed={seed}"));
    for trial in 0..trials {
        let (ok, witness) = run_trial(axiom, &c, &mut smp);
        report.check(ok, || json!({"seed": seed, "trial": trial, "data": witness}));
    }
    report
}

fn run_trial(axiom: CompletionAxiom, c: &Completion, smp: &mut Sampler) -> (bool, Value) {
    let t = |x: &SumObject, y: &SumObject| c.tensor_objects(x, y).unwrap();
    let tm = |f: &SumMorphism, g: &SumMorphism| c.tensor_morphisms(f, g);
    match axiom {
        CompletionAxiom::CategoryLaws => {
            let x = smp.object();
            let y = smp.object_like(&x);
            let z = smp.object_like(&y);
            let w = smp.object_like(&z);
            let (f, g, h) = (smp.morphism(&x, &y), smp.morphism(&y, &z), smp.morphism(&z, &w));
            let lhs = compose(&h, &compose(&g, &f).unwrap());
            let rhs = compose(&compose(&h, &g).unwrap(), &f);
            let ok = same(&lhs, &rhs)
                && same(&compose(&identity_of(&y), &f), &Ok(f.clone()))
                && same(&compose(&f, &identity_of(&x)), &Ok(f.clone()));
            (ok, json!({"f": f, "g": g, "h": h}))
        }
        CompletionAxiom::Bilinearity => {
            let x = smp.object();
            let y = smp.object_like(&x);
            let z = smp.object_like(&y);
            let (f1, f2, g1, g2) = (smp.morphism(&x, &y), smp.morphism(&x, &y), smp.morphism(&y, &z), smp.morphism(&y, &z));
            let lam = smp.scalar();
            let right = same(
                &compose(&g1, &add_scale(&f1, &f2, &lam).unwrap()),
                &add_scale(&compose(&g1, &f1).unwrap(), &compose(&g1, &f2).unwrap(), &lam),
            );
            let left = same(
                &compose(&add_scale(&g1, &g2, &lam).unwrap(), &f1),
                &add_scale(&compose(&g1, &f1).unwrap(), &compose(&g2, &f1).unwrap(), &lam),
            );
            (right && left, json!({"f1": f1, "f2": f2, "g1": g1, "g2": g2}))
        }
        CompletionAxiom::VectorSpace => {
            let x = smp.object();
            let y = smp.object_like(&x);
            let (f, g, h) = (smp.morphism(&x, &y), smp.morphism(&x, &y), smp.morphism(&x, &y));
            let (lam, mu) = (smp.scalar(), smp.scalar());
            let one = CycNum::one();
            let add = |a: &SumMorphism, b: &SumMorphism| add_scale(a, b, &one).unwrap();
            let ok = add(&add(&f, &g), &h) == add(&f, &add(&g, &h))
                && add(&f, &g) == add(&g, &f)
                && add(&f, &zero_of(&x, &y)) == f
                && add_scale(&f, &f, &CycNum::from_int(-1)).unwrap().is_zero()
                && scale(&scale(&f, &mu).unwrap(), &lam).unwrap() == scale(&f, &(&lam * &mu)).unwrap()
                && scale(&f, &(&lam + &mu)).unwrap() == add_scale(&scale(&f, &lam).unwrap(), &f, &mu).unwrap();
            (ok, json!({"f": f, "g": g, "h": h}))
        }
        CompletionAxiom::DirectSum => {
            let (x, y) = (smp.object(), smp.object());
            let ds = direct_sum_pair(&x, &y).unwrap();
            let [px, py] = &ds.projections;
            let [ix, iy] = &ds.inclusions;
            let sum = add_scale(&compose(ix, px).unwrap(), &compose(iy, py).unwrap(), &CycNum::one()).unwrap();
            let ok = compose(px, ix).unwrap() == identity_of(&x)
                && compose(py, iy).unwrap() == identity_of(&y)
                && compose(px, iy).unwrap().is_zero()
                && compose(py, ix).unwrap().is_zero()
                && sum == identity_of(&ds.object);
            (ok, json!({"x": x, "y": y}))
        }
        CompletionAxiom::Coproduct => {
            let members = smp.rng.gen_range(1..=3);
            let family: Vec<SumObject> = (0..members).map(|_| smp.object()).collect();
            let z = smp.object_like(&family[0]);
            let parts: Vec<SumMorphism> = family.iter().map(|x| smp.morphism(x, &z)).collect();
            let big = assemble_from_components(&family, &parts).unwrap();
            let back_ok = parts
                .iter()
                .enumerate()
                .all(|(i, p)| restrict_component(&big, &family, i).unwrap() == *p);
            let cp = coproduct(&family).unwrap().object;
            let other = smp.morphism(&cp, &z);
            let split: Vec<SumMorphism> = (0..members)
                .map(|i| restrict_component(&other, &family, i).unwrap())
                .collect();
            let round = assemble_from_components(&family, &split).unwrap() == other;
            // functoriality in the target
            let w = smp.object_like(&z);
            let h = smp.morphism(&z, &w);
            let pushed: Vec<SumMorphism> = parts.iter().map(|p| compose(&h, p).unwrap()).collect();
            let functorial = assemble_from_components(&family, &pushed).unwrap() == compose(&h, &big).unwrap();
            (back_ok && round && functorial, json!({"family": family, "parts": parts}))
        }
        CompletionAxiom::Bifunctoriality => {
            let (x, u) = (smp.object(), smp.object());
            let (y, v) = (smp.object_like(&x), smp.object_like(&u));
            let (z, w) = (smp.object_like(&y), smp.object_like(&v));
            let (f1, f2) = (smp.morphism(&x, &y), smp.morphism(&y, &z));
            let (g1, g2) = (smp.morphism(&u, &v), smp.morphism(&v, &w));
            let lhs = tm(&compose(&f2, &f1).unwrap(), &compose(&g2, &g1).unwrap());
            let rhs = compose(&tm(&f2, &g2).unwrap(), &tm(&f1, &g1).unwrap());
            let ids = same(&tm(&identity_of(&x), &identity_of(&u)), &Ok(identity_of(&t(&x, &u))));
            let zero = tm(&f1, &zero_of(&u, &v)).unwrap().is_zero();
            (same(&lhs, &rhs) && ids && zero, json!({"f1": f1, "f2": f2, "g1": g1, "g2": g2}))
        }
        CompletionAxiom::Naturality => {
            let (x, u, r) = (smp.object(), smp.object(), smp.object());
            let (y, v, q) = (smp.object_like(&x), smp.object_like(&u), smp.object_like(&r));
            let (f, g, h) = (smp.morphism(&x, &y), smp.morphism(&u, &v), smp.morphism(&r, &q));
            let braid = same(
                &compose(&c.braiding(&y, &v).unwrap(), &tm(&f, &g).unwrap()),
                &compose(&tm(&g, &f).unwrap(), &c.braiding(&x, &u).unwrap()),
            );
            let twist = same(
                &compose(&c.twist(&y).unwrap(), &f),
                &compose(&f, &c.twist(&x).unwrap()),
            );
            let assoc = same(
                &compose(&c.associator(&y, &v, &q).unwrap(), &tm(&tm(&f, &g).unwrap(), &h).unwrap()),
                &compose(&tm(&f, &tm(&g, &h).unwrap()).unwrap(), &c.associator(&x, &u, &r).unwrap()),
            );
            (braid && twist && assoc, json!({"f": f, "g": g, "h": h}))
        }
        CompletionAxiom::Pentagon => {
            let (w, x, y, z) = (smp.object(), smp.object(), smp.object(), smp.object());
            (pentagon(c, &w, &x, &y, &z).unwrap_or(false), json!({"w": w, "x": x, "y": y, "z": z}))
        }
        CompletionAxiom::Triangle => {
            let (x, y) = (smp.object(), smp.object());
            (triangle(c, &x, &y).unwrap_or(false), json!({"x": x, "y": y}))
        }
        CompletionAxiom::Hexagon => {
            let (x, y, z) = (smp.object(), smp.object(), smp.object());
            (hexagons(c, &x, &y, &z).unwrap_or(false), json!({"x": x, "y": y, "z": z}))
        }
        CompletionAxiom::Balancing => {
            let (x, y) = (smp.object(), smp.object());
            (balancing(c, &x, &y).unwrap_or(false), json!({"x": x, "y": y}))
        }
    }
}

/// `(1⊗a) ∘ a ∘ (a⊗1) = a ∘ a` on `((W⊗X)⊗Y)⊗Z`.
pub fn pentagon(c: &Completion, w: &SumObject, x: &SumObject, y: &SumObject, z: &SumObject) -> Result<bool> {
    let t = |a: &SumObject, b: &SumObject| c.tensor_objects(a, b);
    let lhs = compose(
        &c.tensor_morphisms(&identity_of(w), &c.associator(x, y, z)?)?,
        &compose(
            &c.associator(w, &t(x, y)?, z)?,
            &c.tensor_morphisms(&c.associator(w, x, y)?, &identity_of(z))?,
        )?,
    )?;
    let rhs = compose(&c.associator(w, x, &t(y, z)?)?, &c.associator(&t(w, x)?, y, z)?)?;
    Ok(lhs == rhs)
}

/// `(1⊗l) ∘ a = r⊗1` on `(X⊗𝟙)⊗Y`.
pub fn triangle(c: &Completion, x: &SumObject, y: &SumObject) -> Result<bool> {
    let u = c.unit();
    let (l_y, _) = c.unit_constraints(y)?;
    let (_, r_x) = c.unit_constraints(x)?;
    let lhs = compose(&c.tensor_morphisms(&identity_of(x), &l_y)?, &c.associator(x, &u, y)?)?;
    let rhs = c.tensor_morphisms(&r_x, &identity_of(y))?;
    Ok(lhs == rhs)
}

/// Both hexagon identities.
pub fn hexagons(c: &Completion, x: &SumObject, y: &SumObject, z: &SumObject) -> Result<bool> {
    let t = |a: &SumObject, b: &SumObject| c.tensor_objects(a, b);
    let id = identity_of;
    let lhs1 = compose(
        &c.associator(y, z, x)?,
        &compose(&c.braiding(x, &t(y, z)?)?, &c.associator(x, y, z)?)?,
    )?;
    let rhs1 = compose(
        &c.tensor_morphisms(&id(y), &c.braiding(x, z)?)?,
        &compose(&c.associator(y, x, z)?, &c.tensor_morphisms(&c.braiding(x, y)?, &id(z))?)?,
    )?;
    let lhs2 = compose(
        &c.associator_inverse(z, x, y)?,
        &compose(&c.braiding(&t(x, y)?, z)?, &c.associator_inverse(x, y, z)?)?,
    )?;
    let rhs2 = compose(
        &c.tensor_morphisms(&c.braiding(x, z)?, &id(y))?,
        &compose(&c.associator_inverse(x, z, y)?, &c.tensor_morphisms(&id(x), &c.braiding(y, z)?)?)?,
    )?;
    Ok(lhs1 == rhs1 && lhs2 == rhs2)
}

/// `θ_{X⊗Y} = c_{Y,X} ∘ c_{X,Y} ∘ (θ_X ⊗ θ_Y)`.
pub fn balancing(c: &Completion, x: &SumObject, y: &SumObject) -> Result<bool> {
    let lhs = c.twist(&c.tensor_objects(x, y)?)?;
    let rhs = compose(&c.monodromy(x, y)?, &c.tensor_morphisms(&c.twist(x)?, &c.twist(y)?)?)?;
    Ok(lhs == rhs)
}

/// Explicit component table as a map, for inspection in tests and reports.
pub fn component_map(m: &SumMorphism) -> BTreeMap<(Index, Index), CycNum> {
    m.to_explicit()
        .ok()
        .and_then(|e| e.components().cloned())
        .unwrap_or_default()
        .into_iter()
        .flat_map(|(s, row)| row.into_iter().map(move |(t, x)| ((s.clone(), t), x)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;
    use crate::pointed_base::{cyclic_data, heisenberg_data, lattice_reference_data};
    use crate::sum_completion::{image_window, include, restrict_morphism, Window};

    fn lab(m: i64) -> BaseLabel {
        BaseLabel::scalar(m)
    }

    fn obj(entries: &[(i64, i64)]) -> SumObject {
        SumObject::finite(1, entries.iter().map(|&(i, l)| (Index::Atom(i), lab(l)))).unwrap()
    }

    fn lattice(scale: i64, offset: i64) -> SumObject {
        SumObject::lattice(AffineMap::new(1, vec![vec![scale]], vec![offset]))
    }

    #[test]
    fn tensor_objects_examples() {
        let c = Completion::new(heisenberg_data(1, 1));
        let x = obj(&[(0, 3), (1, -2)]);
        let ux = c.tensor_objects(&c.unit(), &x).unwrap();
        let labels: Vec<BaseLabel> = ux.finite_labels().unwrap().values().cloned().collect();
        assert_eq!(labels, vec![lab(3), lab(-2)]);
        let g = c.tensor_objects(&include(lab(2)), &include(lab(5))).unwrap();
        assert_eq!(
            g.finite_labels().unwrap().iter().next().unwrap(),
            (&Index::pair(Index::Atom(0), Index::Atom(0)), &lab(7))
        );
        let (n, d, a) = (2, 3, 1);
        let c = Completion::new(heisenberg_data(n, d));
        let v = lattice((2 * n * d) as i64, 0);
        let fx = c.tensor_objects(&v, &include(lab(d as i64 * a))).unwrap();
        assert_eq!(fx, lattice(12, 3));
        assert!(matches!(c.tensor_objects(&v, &obj(&[(0, 1), (1, 2)])), Err(Error::UnsupportedDomain(_))));
        let cyc = Completion::new(cyclic_data(3));
        let s = cyc.tensor_objects(&obj(&[(0, 2)]), &obj(&[(0, 2)])).unwrap();
        assert_eq!(s.finite_labels().unwrap().values().next().unwrap(), &lab(1));
    }

    #[test]
    fn heisenberg_associator_is_trivial() {
        let c = Completion::new(heisenberg_data(1, 1));
        let (x, y, z) = (obj(&[(0, 1), (1, 2)]), obj(&[(0, -3)]), obj(&[(0, 5), (1, 0)]));
        let a = c.associator(&x, &y, &z).unwrap();
        assert!(component_map(&a).values().all(|s| *s == CycNum::one()));
        let back = compose(&c.associator_inverse(&x, &y, &z).unwrap(), &a).unwrap();
        let left = c.tensor_objects(&c.tensor_objects(&x, &y).unwrap(), &z).unwrap();
        assert_eq!(back, identity_of(&left));
    }

    #[test]
    fn lattice_reference_associator_sign() {
        let c = Completion::new(lattice_reference_data(1));
        let one = include(lab(1));
        let a = c.associator(&one, &one, &one).unwrap();
        let vals: Vec<CycNum> = component_map(&a).into_values().collect();
        assert_eq!(vals, vec![CycNum::from_int(-1)]);
    }

    #[test]
    fn braiding_of_included_objects_is_base_scalar() {
        let data = heisenberg_data(1, 2);
        let c = Completion::new(data.clone());
        for (g, h) in [(1, 1), (3, -2), (4, 1)] {
            let b = c.braiding(&include(lab(g)), &include(lab(h))).unwrap();
            let expected = CycNum::from(Phase::new(rational(g * h, 8)));
            assert_eq!(component_map(&b).into_values().collect::<Vec<_>>(), vec![expected]);
            let m = c.monodromy(&include(lab(g)), &include(lab(h))).unwrap();
            let twice = CycNum::from(Phase::new(rational(2 * g * h, 8)));
            assert_eq!(component_map(&m).into_values().collect::<Vec<_>>(), vec![twice]);
        }
    }

    #[test]
    fn twist_examples() {
        let n = 3u64;
        let c = Completion::new(heisenberg_data(n, 1));
        let t = c.twist(&include(lab(2 * n as i64))).unwrap();
        assert_eq!(t, identity_of(&include(lab(6))));
        assert_eq!(c.twist(&c.unit()).unwrap(), identity_of(&c.unit()));
    }

    #[test]
    fn unit_constraints_on_unit_agree() {
        let c = Completion::new(cyclic_data(4));
        let (l, r) = c.unit_constraints(&c.unit()).unwrap();
        let u = c.unit();
        let uu = c.tensor_objects(&u, &u).unwrap();
        assert_eq!(l.source(), &uu);
        assert_eq!(l, r);
        let inv = crate::sum_completion::invert_iso(&l).unwrap();
        assert_eq!(compose(&l, &inv).unwrap(), identity_of(&u));
    }

    #[test]
    fn randomized_suite_over_cyclic_bases() {
        for n in [2, 3, 4, 5] {
            let data = cyclic_data(n);
            for ax in CompletionAxiom::ALL {
                let r = check_completion_coherence(ax, &data, 20, 4, 7 + n);
                assert!(r.passed(), "{ax:?} n={n}: {}", serde_json::to_string(&r.failures).unwrap());
            }
        }
    }

    #[test]
    fn randomized_suite_over_nontrivial_associator() {
        let data = lattice_reference_data(2);
        for ax in CompletionAxiom::ALL {
            let r = check_completion_coherence(ax, &data, 15, 3, 11);
            assert!(r.passed(), "{ax:?}: {}", serde_json::to_string(&r.failures).unwrap());
        }
    }

    #[test]
    fn alternative_twist_fails_balancing() {
        let alt = lattice_reference_data(1).using_alt_twist().unwrap();
        let c = Completion::new(alt.clone());
        assert!(!balancing(&c, &include(lab(1)), &include(lab(1))).unwrap());
        let r = check_completion_coherence(CompletionAxiom::Balancing, &alt, 50, 3, 1);
        assert!(!r.passed());
        assert!(r.failures[0]["seed"] == 1);
    }

    #[test]
    fn suite_is_deterministic() {
        let data = cyclic_data(3);
        let a = check_completion_coherence(CompletionAxiom::Pentagon, &data, 5, 3, 42);
        let b = check_completion_coherence(CompletionAxiom::Pentagon, &data, 5, 3, 42);
        assert_eq!(a, b);
        let mut s1 = Sampler::new(&data, 4, 9);
        let mut s2 = Sampler::new(&data, 4, 9);
        assert_eq!(s1.object(), s2.object());
    }

    #[test]
    fn lattice_coherence_symbolic() {
        let c = Completion::new(heisenberg_data(2, 1));
        let v = lattice(4, 0);
        let fx = lattice(4, 1);
        let s = include(lab(3));
        assert!(pentagon(&c, &v, &fx, &s, &v).unwrap());
        assert!(hexagons(&c, &v, &fx, &s).unwrap());
        assert!(triangle(&c, &fx, &v).unwrap());
        assert!(balancing(&c, &fx, &v).unwrap());
        let b = c.braiding(&v, &fx).unwrap();
        let bb = c.braiding(&fx, &v).unwrap();
        assert_eq!(
            compose(&bb, &b).unwrap(),
            c.monodromy(&v, &fx).unwrap()
        );
    }

    #[test]
    fn affine_composites_match_windowed_explicit() {
        let c = Completion::new(heisenberg_data(1, 2));
        let v = lattice(4, 0);
        let fx = lattice(4, 1);
        let m = c.monodromy(&v, &fx).unwrap();
        let w = Window::symmetric(3);
        let b1 = c.braiding(&v, &fx).unwrap();
        let b2 = c.braiding(&fx, &v).unwrap();
        let r1 = restrict_morphism(&b1, &w, &w).unwrap();
        let r2 = restrict_morphism(&b2, &w, &w).unwrap();
        assert!(!r1.truncated && !r2.truncated);
        let explicit = compose(&r2.morphism, &r1.morphism).unwrap();
        let tw = image_window(&m, &w).unwrap();
        assert_eq!(restrict_morphism(&m, &w, &tw).unwrap().morphism, explicit);
        // some monodromy components are nontrivial at this grain
        assert!(component_map(&explicit).values().any(|x| *x != CycNum::one()));
    }
}
