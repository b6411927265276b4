//! Formal direct sums over a skeletal pointed base.
//!
//! An object is an index domain with a label per index. A morphism sends each
//! source index to a finite set of target indices with a scalar per pair;
//! since the base is pointed, a component between indices of different labels
//! is necessarily zero.
//!
//! Morphisms come in two representations. `Explicit` stores the finitely
//! supported component table. `Affine` is total on a lattice domain: index
//! `n` goes to `τ(n) = Mn + b` with scalar `c·e^{iπ p(n)}` for an exponent
//! polynomial `p`. Explicit tables are kept normalized, so two morphisms are
//! related by zero-padding exactly when their tables coincide.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{rational_str, CycNum, Phase, Poly};
use crate::pointed_base::BaseLabel;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Index {
    Atom(i64),
    Point(Vec<i64>),
    Pair(Box<Index>, Box<Index>),
    Tagged(usize, Box<Index>),
}

impl Index {
    pub fn pair(a: Index, b: Index) -> Index {
        Index::Pair(Box::new(a), Box::new(b))
    }

    pub fn tagged(tag: usize, a: Index) -> Index {
        Index::Tagged(tag, Box::new(a))
    }

    pub fn as_point(&self) -> Option<&[i64]> {
        match self {
            Index::Point(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Atom(a) => write!(f, "{a}"),
            Index::Point(v) => {
                let parts: Vec<String> = v.iter().map(i64::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
            Index::Pair(a, b) => write!(f, "<{a},{b}>"),
            Index::Tagged(t, a) => write!(f, "{t}:{a}"),
        }
    }
}

/// Integer affine map `Z^inputs → Z^outputs`, `n ↦ Mn + b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineMap {
    inputs: usize,
    linear: Vec<Vec<i64>>,
    offset: Vec<i64>,
}

impl AffineMap {
    pub fn new(inputs: usize, linear: Vec<Vec<i64>>, offset: Vec<i64>) -> Self {
        assert_eq!(linear.len(), offset.len(), "one offset per output row");
        assert!(linear.iter().all(|row| row.len() == inputs), "ragged affine map");
        AffineMap { inputs, linear, offset }
    }

    pub fn identity(rank: usize) -> Self {
        let linear = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        AffineMap::new(rank, linear, vec![0; rank])
    }

    pub fn constant(inputs: usize, offset: Vec<i64>) -> Self {
        let linear = vec![vec![0; inputs]; offset.len()];
        AffineMap::new(inputs, linear, offset)
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn outputs(&self) -> usize {
        self.offset.len()
    }

    pub fn linear(&self) -> &[Vec<i64>] {
        &self.linear
    }

    pub fn offset(&self) -> &[i64] {
        &self.offset
    }

    pub fn apply(&self, n: &[i64]) -> Vec<i64> {
        debug_assert_eq!(n.len(), self.inputs);
        self.linear
            .iter()
            .zip(&self.offset)
            .map(|(row, b)| row.iter().zip(n).map(|(a, x)| a * x).sum::<i64>() + b)
            .collect()
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &AffineMap) -> AffineMap {
        assert_eq!(self.inputs, inner.outputs(), "affine maps do not compose");
        let linear = self
            .linear
            .iter()
            .map(|row| {
                (0..inner.inputs)
                    .map(|j| row.iter().zip(&inner.linear).map(|(a, r)| a * r[j]).sum())
                    .collect()
            })
            .collect();
        let offset = self.apply(&inner.offset);
        AffineMap::new(inner.inputs, linear, offset)
    }

    /// `(x, y) ↦ (self(x), other(y))`.
    pub fn block(&self, other: &AffineMap) -> AffineMap {
        let inputs = self.inputs + other.inputs;
        let mut linear = Vec::with_capacity(self.outputs() + other.outputs());
        for row in &self.linear {
            let mut r = row.clone();
            r.resize(inputs, 0);
            linear.push(r);
        }
        for row in &other.linear {
            let mut r = vec![0; self.inputs];
            r.extend_from_slice(row);
            linear.push(r);
        }
        let offset = self.offset.iter().chain(&other.offset).copied().collect();
        AffineMap::new(inputs, linear, offset)
    }

    /// Output coordinates as polynomials in the input variables.
    pub fn as_polys(&self) -> Vec<Poly> {
        self.linear
            .iter()
            .zip(&self.offset)
            .map(|(row, &b)| Poly::linear(row, b))
            .collect()
    }

    /// Smallest and largest output coordinate over the cube `[lo, hi]^inputs`.
    pub fn bounds(&self, lo: i64, hi: i64) -> Option<(i64, i64)> {
        self.linear
            .iter()
            .zip(&self.offset)
            .map(|(row, b)| {
                row.iter().fold((*b, *b), |(mn, mx), &a| {
                    let (p, q) = (a * lo, a * hi);
                    (mn + p.min(q), mx + p.max(q))
                })
            })
            .reduce(|(a, b), (c, d)| (a.min(c), b.max(d)))
    }
}

mod pairs {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::collections::BTreeMap;

    pub fn serialize<K: Serialize, V: Serialize, S: Serializer>(
        m: &BTreeMap<K, V>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        s.collect_seq(m.iter())
    }

    pub fn deserialize<'de, K, V, D>(d: D) -> Result<BTreeMap<K, V>, D::Error>
    where
        K: Deserialize<'de> + Ord,
        V: Deserialize<'de>,
        D: Deserializer<'de>,
    {
        Vec::<(K, V)>::deserialize(d).map(|v| v.into_iter().collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "domain", rename_all = "lowercase")]
pub enum SumObject {
    Finite {
        label_rank: usize,
        #[serde(with = "pairs")]
        labels: BTreeMap<Index, BaseLabel>,
    },
    /// `Z^rank` with index `n` labelled by `labels(n)`; the grading group is
    /// free, so labels need no reduction.
    Lattice { rank: usize, labels: AffineMap },
}

impl SumObject {
    pub fn finite(label_rank: usize, entries: impl IntoIterator<Item = (Index, BaseLabel)>) -> Result<Self> {
        let mut labels = BTreeMap::new();
        for (i, l) in entries {
            if l.rank() != label_rank {
                return Err(Error::LabelMismatch(format!("label {l} at {i} has rank {}", l.rank())));
            }
            if labels.insert(i.clone(), l).is_some() {
                return Err(Error::InvalidIndex(format!("{i} (duplicate)")));
            }
        }
        Ok(SumObject::Finite { label_rank, labels })
    }

    pub fn lattice(labels: AffineMap) -> Self {
        SumObject::Lattice {
            rank: labels.inputs(),
            labels,
        }
    }

    pub fn zero_object(label_rank: usize) -> Self {
        SumObject::Finite {
            label_rank,
            labels: BTreeMap::new(),
        }
    }

    pub fn label_rank(&self) -> usize {
        match self {
            SumObject::Finite { label_rank, .. } => *label_rank,
            SumObject::Lattice { labels, .. } => labels.outputs(),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, SumObject::Finite { .. })
    }

    /// Indices of a finite domain in order.
    pub fn finite_indices(&self) -> Option<Vec<Index>> {
        match self {
            SumObject::Finite { labels, .. } => Some(labels.keys().cloned().collect()),
            SumObject::Lattice { .. } => None,
        }
    }

    pub fn finite_labels(&self) -> Option<&BTreeMap<Index, BaseLabel>> {
        match self {
            SumObject::Finite { labels, .. } => Some(labels),
            SumObject::Lattice { .. } => None,
        }
    }

    pub fn contains(&self, i: &Index) -> bool {
        match self {
            SumObject::Finite { labels, .. } => labels.contains_key(i),
            SumObject::Lattice { rank, .. } => i.as_point().is_some_and(|p| p.len() == *rank),
        }
    }

    pub fn label_of(&self, i: &Index) -> Result<BaseLabel> {
        match self {
            SumObject::Finite { labels, .. } => labels
                .get(i)
                .cloned()
                .ok_or_else(|| Error::InvalidIndex(i.to_string())),
            SumObject::Lattice { rank, labels } => match i.as_point() {
                Some(p) if p.len() == *rank => Ok(BaseLabel(labels.apply(p))),
                _ => Err(Error::InvalidIndex(i.to_string())),
            },
        }
    }

    /// Rank and label map when the domain is a lattice; a finite singleton
    /// counts as a rank-0 lattice.
    pub fn lattice_view(&self) -> Option<(usize, AffineMap)> {
        match self {
            SumObject::Lattice { rank, labels } => Some((*rank, labels.clone())),
            SumObject::Finite { labels, .. } if labels.len() == 1 => {
                let l = labels.values().next().unwrap();
                Some((0, AffineMap::constant(0, l.0.clone())))
            }
            SumObject::Finite { .. } => None,
        }
    }

    /// Index at a lattice point (for a singleton, its only index).
    pub fn point_index(&self, p: &[i64]) -> Index {
        match self {
            SumObject::Finite { labels, .. } => {
                debug_assert!(p.is_empty() && labels.len() == 1);
                labels.keys().next().unwrap().clone()
            }
            SumObject::Lattice { .. } => Index::Point(p.to_vec()),
        }
    }

    /// Inverse of [`SumObject::point_index`].
    pub fn index_point(&self, i: &Index) -> Option<Vec<i64>> {
        match self {
            SumObject::Finite { labels, .. } if labels.len() == 1 => labels.contains_key(i).then(Vec::new),
            SumObject::Finite { .. } => None,
            SumObject::Lattice { rank, .. } => i.as_point().filter(|p| p.len() == *rank).map(<[i64]>::to_vec),
        }
    }
}

/// Component table: source index ↦ (target index ↦ scalar).
pub type Components = BTreeMap<Index, BTreeMap<Index, CycNum>>;

mod component_list {
    use super::{Components, CycNum, Index};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Entry {
        source: Index,
        target: Index,
        scalar: CycNum,
    }

    pub fn serialize<S: Serializer>(c: &Components, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(c.iter().flat_map(|(src, row)| {
            row.iter().map(move |(t, x)| Entry {
                source: src.clone(),
                target: t.clone(),
                scalar: x.clone(),
            })
        }))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Components, D::Error> {
        let mut out = Components::new();
        for e in Vec::<Entry>::deserialize(d)? {
            out.entry(e.source).or_default().insert(e.target, e.scalar);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AffineBody {
    pub index_map: AffineMap,
    pub exponent: Poly,
    #[serde(with = "rational_str")]
    pub coefficient: BigRational,
}

impl AffineBody {
    fn scalar_at(&self, n: &[i64]) -> CycNum {
        CycNum::monomial(self.coefficient.clone(), Phase::new(self.exponent.eval_int(n)))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "lowercase")]
pub enum Body {
    Explicit {
        #[serde(with = "component_list")]
        components: Components,
    },
    Affine(AffineBody),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SumMorphism {
    source: SumObject,
    target: SumObject,
    body: Body,
}

fn one() -> BigRational {
    BigRational::one()
}

fn mismatch(what: &str, a: &SumObject, b: &SumObject) -> Error {
    let show = |o: &SumObject| serde_json::to_string(o).unwrap_or_default();
    Error::DomainMismatch(format!("{what}: {} vs {}", show(a), show(b)))
}

impl SumMorphism {
    /// Component table with indices validated; zero entries are kept.
    pub fn explicit_unnormalized(
        source: SumObject,
        target: SumObject,
        entries: impl IntoIterator<Item = (Index, Index, CycNum)>,
    ) -> Result<Self> {
        let mut components = Components::new();
        for (s, t, x) in entries {
            if !source.contains(&s) {
                return Err(Error::InvalidIndex(format!("source {s}")));
            }
            if !target.contains(&t) {
                return Err(Error::InvalidIndex(format!("target {t}")));
            }
            let slot = components.entry(s).or_default().entry(t).or_default();
            *slot = &*slot + &x;
        }
        for (s, row) in &components {
            for (t, x) in row {
                if !x.is_zero() && source.label_of(s)? != target.label_of(t)? {
                    return Err(Error::LabelMismatch(format!("nonzero component {s} -> {t}")));
                }
            }
        }
        Ok(SumMorphism {
            source,
            target,
            body: Body::Explicit { components },
        })
    }

    pub fn explicit(
        source: SumObject,
        target: SumObject,
        entries: impl IntoIterator<Item = (Index, Index, CycNum)>,
    ) -> Result<Self> {
        Self::explicit_unnormalized(source, target, entries).map(|m| m.normalize())
    }

    fn from_components(source: SumObject, target: SumObject, components: Components) -> Self {
        SumMorphism {
            source,
            target,
            body: Body::Explicit { components },
        }
        .normalize()
    }

    /// `n ↦ τ(n)` with scalar `c·e^{iπ p(n)}`. Both objects must have a
    /// lattice view, and `τ` must preserve labels identically.
    pub fn affine(
        source: SumObject,
        target: SumObject,
        index_map: AffineMap,
        exponent: Poly,
        coefficient: BigRational,
    ) -> Result<Self> {
        let (rs, ls) = source
            .lattice_view()
            .ok_or_else(|| Error::DomainMismatch("affine source must be a lattice or a singleton".into()))?;
        let (rt, lt) = target
            .lattice_view()
            .ok_or_else(|| Error::DomainMismatch("affine target must be a lattice or a singleton".into()))?;
        if index_map.inputs() != rs || index_map.outputs() != rt || exponent.nvars() != rs {
            return Err(Error::DomainMismatch(format!(
                "affine data of shape {}→{} (exponent in {} vars) between ranks {rs} and {rt}",
                index_map.inputs(),
                index_map.outputs(),
                exponent.nvars()
            )));
        }
        if lt.after(&index_map) != ls {
            return Err(Error::LabelMismatch("index map does not preserve labels".into()));
        }
        if coefficient.is_zero() {
            return Ok(zero_of(&source, &target));
        }
        let (coefficient, exponent) = if coefficient.is_negative() {
            (-coefficient, &exponent + &Poly::constant(rs, one()))
        } else {
            (coefficient, exponent)
        };
        Ok(SumMorphism {
            source,
            target,
            body: Body::Affine(AffineBody {
                index_map,
                exponent,
                coefficient,
            }),
        })
    }

    pub fn source(&self) -> &SumObject {
        &self.source
    }

    pub fn target(&self) -> &SumObject {
        &self.target
    }

    pub fn body(&self) -> &Body {
        &self.body
    }

    pub fn components(&self) -> Option<&Components> {
        match &self.body {
            Body::Explicit { components } => Some(components),
            Body::Affine(_) => None,
        }
    }

    pub fn affine_body(&self) -> Option<&AffineBody> {
        match &self.body {
            Body::Affine(a) => Some(a),
            Body::Explicit { .. } => None,
        }
    }

    pub fn is_affine(&self) -> bool {
        matches!(self.body, Body::Affine(_))
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.body, Body::Explicit { components } if components.is_empty())
    }

    /// Drops zero components; affine bodies are already canonical.
    pub fn normalize(&self) -> SumMorphism {
        match &self.body {
            Body::Affine(_) => self.clone(),
            Body::Explicit { components } => {
                let components = components
                    .iter()
                    .filter_map(|(s, row)| {
                        let row: BTreeMap<Index, CycNum> = row
                            .iter()
                            .filter(|(_, x)| !x.is_zero())
                            .map(|(t, x)| (t.clone(), x.clone()))
                            .collect();
                        (!row.is_empty()).then(|| (s.clone(), row))
                    })
                    .collect();
                SumMorphism {
                    source: self.source.clone(),
                    target: self.target.clone(),
                    body: Body::Explicit { components },
                }
            }
        }
    }

    /// Nonzero components leaving one source index.
    pub fn row(&self, s: &Index) -> Result<Vec<(Index, CycNum)>> {
        if !self.source.contains(s) {
            return Err(Error::InvalidIndex(s.to_string()));
        }
        Ok(match &self.body {
            Body::Explicit { components } => components
                .get(s)
                .map(|r| r.iter().map(|(t, x)| (t.clone(), x.clone())).collect())
                .unwrap_or_default(),
            Body::Affine(a) => {
                let n = self.source.index_point(s).expect("checked membership");
                let t = self.target.point_index(&a.index_map.apply(&n));
                vec![(t, a.scalar_at(&n))]
            }
        })
    }

    pub fn component(&self, s: &Index, t: &Index) -> Result<CycNum> {
        Ok(self
            .row(s)?
            .into_iter()
            .find(|(u, _)| u == t)
            .map(|(_, x)| x)
            .unwrap_or_else(CycNum::zero))
    }

    /// Affine form of a single-component morphism out of a singleton.
    pub fn to_affine(&self) -> Option<SumMorphism> {
        let components = match &self.body {
            Body::Affine(_) => return Some(self.clone()),
            Body::Explicit { components } => components,
        };
        let (0, _) = self.source.lattice_view()? else {
            return None;
        };
        let (_, row) = components.iter().next()?;
        if row.len() != 1 {
            return None;
        }
        let (t, x) = row.iter().next()?;
        let point = self.target.index_point(t)?;
        let (c, phase) = x.as_monomial()?;
        SumMorphism::affine(
            self.source.clone(),
            self.target.clone(),
            AffineMap::constant(0, point),
            Poly::constant(0, phase.exponent().clone()),
            c.clone(),
        )
        .ok()
    }

    /// Explicit form; only possible when the source is finite.
    pub fn to_explicit(&self) -> Result<SumMorphism> {
        if let Body::Explicit { .. } = self.body {
            return Ok(self.clone());
        }
        let indices = self
            .source
            .finite_indices()
            .ok_or_else(|| Error::MixedFormUnsupported("affine morphism on an infinite domain".into()))?;
        let mut components = Components::new();
        for s in indices {
            components.insert(s.clone(), self.row(&s)?.into_iter().collect());
        }
        Ok(SumMorphism::from_components(
            self.source.clone(),
            self.target.clone(),
            components,
        ))
    }
}

impl PartialEq for SumMorphism {
    fn eq(&self, other: &Self) -> bool {
        eq_morphism(self, other).unwrap_or(false)
    }
}

pub fn normalize(m: &SumMorphism) -> SumMorphism {
    m.normalize()
}

pub fn identity_of(x: &SumObject) -> SumMorphism {
    match x {
        SumObject::Lattice { rank, .. } => SumMorphism::affine(
            x.clone(),
            x.clone(),
            AffineMap::identity(*rank),
            Poly::zero(*rank),
            one(),
        )
        .expect("identity preserves labels"),
        SumObject::Finite { labels, .. } => {
            let components = labels
                .keys()
                .map(|i| (i.clone(), BTreeMap::from([(i.clone(), CycNum::one())])))
                .collect();
            SumMorphism::from_components(x.clone(), x.clone(), components)
        }
    }
}

pub fn zero_of(x: &SumObject, y: &SumObject) -> SumMorphism {
    SumMorphism {
        source: x.clone(),
        target: y.clone(),
        body: Body::Explicit {
            components: Components::new(),
        },
    }
}

fn compose_explicit(g: &SumMorphism, f: &SumMorphism) -> Result<SumMorphism> {
    let mut out = Components::new();
    for (s, row) in f.components().expect("explicit") {
        let acc = out.entry(s.clone()).or_default();
        for (t, x) in row {
            for (r, y) in g.row(t)? {
                let slot = acc.entry(r).or_insert_with(CycNum::zero);
                *slot = &*slot + &(&y * x);
            }
        }
    }
    Ok(SumMorphism::from_components(f.source.clone(), g.target.clone(), out))
}

fn compose_affine(g: &SumMorphism, f: &SumMorphism) -> Result<SumMorphism> {
    let (ga, fa) = (g.affine_body().unwrap(), f.affine_body().unwrap());
    let rank = fa.index_map.inputs();
    let pulled = ga.exponent.substitute(&fa.index_map.as_polys(), rank);
    SumMorphism::affine(
        f.source.clone(),
        g.target.clone(),
        ga.index_map.after(&fa.index_map),
        &fa.exponent + &pulled,
        &fa.coefficient * &ga.coefficient,
    )
}

/// `g ∘ f`.
pub fn compose(g: &SumMorphism, f: &SumMorphism) -> Result<SumMorphism> {
    if f.target != g.source {
        return Err(mismatch("compose", &f.target, &g.source));
    }
    match (&g.body, &f.body) {
        (Body::Explicit { .. }, Body::Explicit { .. }) => compose_explicit(g, f),
        (Body::Affine(_), Body::Affine(_)) => compose_affine(g, f),
        _ => {
            if let (Some(ga), Some(fa)) = (g.to_affine(), f.to_affine()) {
                if ga.is_affine() && fa.is_affine() {
                    return compose_affine(&ga, &fa);
                }
            }
            if f.components().is_some() {
                // the affine factor is evaluated on finitely many targets
                compose_explicit(g, f)
            } else if f.source.is_finite() {
                compose_explicit(g, &f.to_explicit()?)
            } else {
                Err(Error::MixedFormUnsupported(
                    "explicit after affine on an infinite domain".into(),
                ))
            }
        }
    }
}

/// `λ·m`.
pub fn scale(m: &SumMorphism, lambda: &CycNum) -> Result<SumMorphism> {
    if lambda.is_zero() {
        return Ok(zero_of(&m.source, &m.target));
    }
    match &m.body {
        Body::Explicit { components } => {
            let scaled = components
                .iter()
                .map(|(s, row)| (s.clone(), row.iter().map(|(t, x)| (t.clone(), lambda * x)).collect()))
                .collect();
            Ok(SumMorphism::from_components(m.source.clone(), m.target.clone(), scaled))
        }
        Body::Affine(a) => match lambda.as_monomial() {
            Some((r, phase)) => {
                let rank = a.index_map.inputs();
                SumMorphism::affine(
                    m.source.clone(),
                    m.target.clone(),
                    a.index_map.clone(),
                    &a.exponent + &Poly::constant(rank, phase.exponent().clone()),
                    &a.coefficient * r,
                )
            }
            None if m.source.is_finite() => scale(&m.to_explicit()?, lambda),
            None => Err(Error::NotMonomial(lambda.to_string())),
        },
    }
}

fn add_explicit(f: &SumMorphism, g: &SumMorphism) -> SumMorphism {
    let mut out = f.components().unwrap().clone();
    for (s, row) in g.components().unwrap() {
        let acc = out.entry(s.clone()).or_default();
        for (t, x) in row {
            let slot = acc.entry(t.clone()).or_insert_with(CycNum::zero);
            *slot = &*slot + x;
        }
    }
    SumMorphism::from_components(f.source.clone(), f.target.clone(), out)
}

/// `f + λ·g`.
pub fn add_scale(f: &SumMorphism, g: &SumMorphism, lambda: &CycNum) -> Result<SumMorphism> {
    if f.source != g.source || f.target != g.target {
        return Err(mismatch("add", &f.source, &g.source));
    }
    let g = scale(g, lambda)?;
    if g.is_zero() {
        return Ok(f.clone());
    }
    if f.is_zero() {
        return Ok(g);
    }
    match (&f.body, &g.body) {
        (Body::Explicit { .. }, Body::Explicit { .. }) => Ok(add_explicit(f, &g)),
        (Body::Affine(fa), Body::Affine(ga)) if fa.index_map == ga.index_map => {
            let diff = &fa.exponent - &ga.exponent;
            let rank = fa.index_map.inputs();
            let coefficient = if diff.takes_even_values() {
                &fa.coefficient + &ga.coefficient
            } else if (&diff - &Poly::constant(rank, one())).takes_even_values() {
                &fa.coefficient - &ga.coefficient
            } else if f.source.is_finite() {
                return Ok(add_explicit(&f.to_explicit()?, &g.to_explicit()?));
            } else {
                return Err(Error::AffineAdditionUnsupported);
            };
            SumMorphism::affine(
                f.source.clone(),
                f.target.clone(),
                fa.index_map.clone(),
                fa.exponent.clone(),
                coefficient,
            )
        }
        _ if f.source.is_finite() => Ok(add_explicit(&f.to_explicit()?, &g.to_explicit()?)),
        _ => Err(Error::AffineAdditionUnsupported),
    }
}

/// Equality of normal forms.
pub fn eq_morphism(f: &SumMorphism, g: &SumMorphism) -> Result<bool> {
    if f.source != g.source || f.target != g.target {
        return Err(mismatch("eq", &f.source, &g.source));
    }
    match (&f.body, &g.body) {
        (Body::Explicit { components: a }, Body::Explicit { components: b }) => Ok(a.len() == b.len()
            && a.iter().zip(b).all(|((s1, r1), (s2, r2))| {
                s1 == s2 && r1.len() == r2.len() && r1.iter().zip(r2).all(|((t1, x1), (t2, x2))| t1 == t2 && x1 == x2)
            })),
        (Body::Affine(a), Body::Affine(b)) => Ok(a.index_map == b.index_map
            && a.coefficient == b.coefficient
            && (&a.exponent - &b.exponent).takes_even_values()),
        _ if f.source.is_finite() => eq_morphism(&f.to_explicit()?, &g.to_explicit()?),
        _ => Err(Error::MixedFormUnsupported(
            "explicit and affine forms on an infinite domain".into(),
        )),
    }
}

/// Inverse of an isomorphism whose components are single terms: an explicit
/// bijection, or an affine map whose linear part is a signed permutation.
pub fn invert_iso(m: &SumMorphism) -> Result<SumMorphism> {
    let not_iso = || Error::DomainMismatch("not an invertible monomial morphism".into());
    match &m.body {
        Body::Explicit { components } => {
            let mut entries = Vec::new();
            for (s, row) in components {
                let [(t, x)]: [(&Index, &CycNum); 1] = row.iter().collect::<Vec<_>>().try_into().map_err(|_| not_iso())?;
                entries.push((t.clone(), s.clone(), x.inv_monomial()?));
            }
            let hit: std::collections::BTreeSet<&Index> = entries.iter().map(|(t, _, _)| t).collect();
            let covers = |x: &SumObject, n: usize| x.finite_indices().is_some_and(|v| v.len() == n);
            if hit.len() != entries.len() || !covers(&m.source, entries.len()) || !covers(&m.target, entries.len()) {
                return Err(not_iso());
            }
            SumMorphism::explicit(m.target.clone(), m.source.clone(), entries)
        }
        Body::Affine(a) => {
            let map = &a.index_map;
            if map.inputs() != map.outputs() {
                return Err(not_iso());
            }
            let r = map.inputs();
            let mut transpose = vec![vec![0i64; r]; r];
            for (i, row) in map.linear().iter().enumerate() {
                let nonzero: Vec<(usize, i64)> = row.iter().copied().enumerate().filter(|(_, v)| *v != 0).collect();
                match nonzero.as_slice() {
                    [(j, v)] if v.abs() == 1 => transpose[*j][i] = *v,
                    _ => return Err(not_iso()),
                }
            }
            if (0..r).any(|j| transpose[j].iter().all(|v| *v == 0)) {
                return Err(not_iso());
            }
            // τ⁻¹(m) = Pᵀ(m − b)
            let shift = AffineMap::new(r, AffineMap::identity(r).linear().to_vec(), map.offset().iter().map(|b| -b).collect());
            let inverse = AffineMap::new(r, transpose, vec![0; r]).after(&shift);
            let exponent = -&a.exponent.substitute(&inverse.as_polys(), r);
            SumMorphism::affine(
                m.target.clone(),
                m.source.clone(),
                inverse,
                exponent,
                a.coefficient.recip(),
            )
        }
    }
}

pub fn include(label: BaseLabel) -> SumObject {
    let rank = label.rank();
    SumObject::finite(rank, [(Index::Atom(0), label)]).expect("single index")
}

pub fn unit_object(label_rank: usize) -> SumObject {
    include(BaseLabel::zero(label_rank))
}

/// The base morphism `X_g → X_h` with the given scalar, which must vanish
/// unless `g = h`.
pub fn include_morphism(g: &BaseLabel, h: &BaseLabel, scalar: CycNum) -> Result<SumMorphism> {
    SumMorphism::explicit(include(g.clone()), include(h.clone()), [(Index::Atom(0), Index::Atom(0), scalar)])
}

/// The base scalar of a morphism between two singleton objects.
pub fn base_scalar(m: &SumMorphism) -> Option<CycNum> {
    let s = m.source.finite_indices().filter(|v| v.len() == 1)?;
    let t = m.target.finite_indices().filter(|v| v.len() == 1)?;
    m.component(&s[0], &t[0]).ok()
}

#[derive(Clone, Debug)]
pub struct Coproduct {
    pub object: SumObject,
    pub injections: Vec<SumMorphism>,
}

/// Disjoint union of finite objects, member `i` tagged by `i`.
pub fn coproduct(family: &[SumObject]) -> Result<Coproduct> {
    let label_rank = family
        .first()
        .ok_or_else(|| Error::DomainMismatch("empty family".into()))?
        .label_rank();
    let mut entries = Vec::new();
    for (i, x) in family.iter().enumerate() {
        let labels = x
            .finite_labels()
            .ok_or_else(|| Error::UnsupportedDomain("coproduct members must be finite".into()))?;
        if x.label_rank() != label_rank {
            return Err(mismatch("coproduct label ranks", &family[0], x));
        }
        entries.extend(labels.iter().map(|(s, l)| (Index::tagged(i, s.clone()), l.clone())));
    }
    let object = SumObject::finite(label_rank, entries)?;
    let injections = family
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let idx = x.finite_indices().unwrap();
            SumMorphism::explicit(
                x.clone(),
                object.clone(),
                idx.into_iter().map(|s| (s.clone(), Index::tagged(i, s), CycNum::one())),
            )
        })
        .collect::<Result<_>>()?;
    Ok(Coproduct { object, injections })
}

/// `(X ⊕ Y, [p_X, p_Y], [i_X, i_Y])`.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub object: SumObject,
    pub projections: [SumMorphism; 2],
    pub inclusions: [SumMorphism; 2],
}

pub fn direct_sum_pair(x: &SumObject, y: &SumObject) -> Result<DirectSum> {
    let cp = coproduct(&[x.clone(), y.clone()])?;
    let project = |i: usize, member: &SumObject| {
        let idx = member.finite_indices().unwrap();
        SumMorphism::explicit(
            cp.object.clone(),
            member.clone(),
            idx.into_iter().map(|s| (Index::tagged(i, s.clone()), s, CycNum::one())),
        )
    };
    let projections = [project(0, x)?, project(1, y)?];
    let [ix, iy]: [SumMorphism; 2] = cp.injections.try_into().expect("two members");
    Ok(DirectSum {
        object: cp.object,
        projections,
        inclusions: [ix, iy],
    })
}

/// The morphism out of the coproduct of `family` whose restriction to member
/// `i` is `components[i]`.
pub fn assemble_from_components(family: &[SumObject], components: &[SumMorphism]) -> Result<SumMorphism> {
    if family.len() != components.len() || components.is_empty() {
        return Err(Error::DomainMismatch(format!(
            "{} members but {} components",
            family.len(),
            components.len()
        )));
    }
    let cp = coproduct(family)?;
    let target = components[0].target.clone();
    let mut table = Components::new();
    for (i, (x, m)) in family.iter().zip(components).enumerate() {
        if &m.source != x {
            return Err(mismatch("component source", &m.source, x));
        }
        if m.target != target {
            return Err(mismatch("component target", &m.target, &target));
        }
        for (s, row) in m.to_explicit()?.components().unwrap() {
            table.insert(Index::tagged(i, s.clone()), row.clone());
        }
    }
    Ok(SumMorphism::from_components(cp.object, target, table))
}

/// `F ∘ inj_i`.
pub fn restrict_component(m: &SumMorphism, family: &[SumObject], i: usize) -> Result<SumMorphism> {
    let cp = coproduct(family)?;
    let inj = cp
        .injections
        .get(i)
        .ok_or_else(|| Error::InvalidIndex(format!("member {i}")))?;
    compose(m, inj)
}

/// Cube `[lo, hi]^rank` of lattice points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Self {
        Window { lo, hi }
    }

    pub fn symmetric(r: i64) -> Self {
        Window { lo: -r, hi: r }
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        p.iter().all(|x| (self.lo..=self.hi).contains(x))
    }

    pub fn points(&self, rank: usize) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::with_capacity(rank)];
        for _ in 0..rank {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (self.lo..=self.hi).map(move |x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
        }
        out
    }

    pub fn hull(&self, other: &Window) -> Window {
        Window::new(self.lo.min(other.lo), self.hi.max(other.hi))
    }
}

/// Finite part of an object: lattice points in the window, finite domains
/// unchanged.
pub fn restrict_object(x: &SumObject, w: &Window) -> SumObject {
    match x {
        SumObject::Finite { .. } => x.clone(),
        SumObject::Lattice { rank, labels } => SumObject::Finite {
            label_rank: labels.outputs(),
            labels: w
                .points(*rank)
                .into_iter()
                .map(|p| {
                    let l = BaseLabel(labels.apply(&p));
                    (Index::Point(p), l)
                })
                .collect(),
        },
    }
}

#[derive(Clone, Debug)]
pub struct Restricted {
    pub morphism: SumMorphism,
    /// Whether some component left the target window and was dropped.
    pub truncated: bool,
}

pub fn restrict_morphism(m: &SumMorphism, source_window: &Window, target_window: &Window) -> Result<Restricted> {
    let source = restrict_object(&m.source, source_window);
    let target = restrict_object(&m.target, target_window);
    let mut truncated = false;
    let mut table = Components::new();
    for s in source.finite_indices().unwrap() {
        let row: BTreeMap<Index, CycNum> = m
            .row(&s)?
            .into_iter()
            .filter(|(t, _)| {
                let keep = target.contains(t);
                truncated |= !keep;
                keep
            })
            .collect();
        table.insert(s, row);
    }
    Ok(Restricted {
        morphism: SumMorphism::from_components(source, target, table),
        truncated,
    })
}

/// A target window containing the image of the source window, so that
/// restriction drops nothing.
pub fn image_window(m: &SumMorphism, source_window: &Window) -> Result<Window> {
    let mut w = *source_window;
    match &m.body {
        Body::Affine(a) => {
            if let Some((lo, hi)) = a.index_map.bounds(source_window.lo, source_window.hi) {
                w = w.hull(&Window::new(lo, hi));
            }
        }
        Body::Explicit { components } => {
            for (s, row) in components {
                let inside = match s.as_point() {
                    Some(p) if !m.source.is_finite() => source_window.contains(p),
                    _ => true,
                };
                if !inside {
                    continue;
                }
                for t in row.keys() {
                    if let Some(p) = t.as_point() {
                        for &x in p {
                            w = w.hull(&Window::new(x, x));
                        }
                    }
                }
            }
        }
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;

    fn lab(m: i64) -> BaseLabel {
        BaseLabel::scalar(m)
    }

    fn obj(entries: &[(i64, i64)]) -> SumObject {
        SumObject::finite(1, entries.iter().map(|&(i, l)| (Index::Atom(i), lab(l)))).unwrap()
    }

    fn ph(p: i64, q: i64) -> CycNum {
        CycNum::from(Phase::from_ratio(p, q))
    }

    fn a(i: i64) -> Index {
        Index::Atom(i)
    }

    fn rank1_lattice(scale: i64, offset: i64) -> SumObject {
        SumObject::lattice(AffineMap::new(1, vec![vec![scale]], vec![offset]))
    }

    fn shift(x: &SumObject, y: &SumObject, by: i64) -> SumMorphism {
        SumMorphism::affine(
            x.clone(),
            y.clone(),
            AffineMap::new(1, vec![vec![1]], vec![by]),
            Poly::zero(1),
            one(),
        )
        .unwrap()
    }

    #[test]
    fn normalize_examples() {
        let x = obj(&[(0, 0)]);
        let y = obj(&[(1, 0), (2, 0)]);
        let z = SumMorphism::explicit_unnormalized(x.clone(), y.clone(), [(a(0), a(1), CycNum::zero())]).unwrap();
        assert_eq!(z.components().unwrap().len(), 1);
        assert!(normalize(&z).is_zero());
        let m = SumMorphism::explicit_unnormalized(
            x.clone(),
            y.clone(),
            [(a(0), a(1), CycNum::one() + ph(1, 1)), (a(0), a(2), CycNum::from_int(2))],
        )
        .unwrap();
        let n = normalize(&m);
        let row = &n.components().unwrap()[&a(0)];
        assert_eq!(row.len(), 1);
        assert_eq!(row[&a(2)], CycNum::from_int(2));
        assert_eq!(normalize(&n).components(), n.components());
    }

    #[test]
    fn labels_are_enforced() {
        let x = obj(&[(0, 0)]);
        let y = obj(&[(0, 1)]);
        assert!(matches!(
            SumMorphism::explicit(x.clone(), y.clone(), [(a(0), a(0), CycNum::one())]),
            Err(Error::LabelMismatch(_))
        ));
        assert!(SumMorphism::explicit(x.clone(), y.clone(), [(a(0), a(0), CycNum::zero())])
            .unwrap()
            .is_zero());
        assert!(matches!(
            SumMorphism::explicit(x, y, [(a(5), a(0), CycNum::one())]),
            Err(Error::InvalidIndex(_))
        ));
        let bad = SumMorphism::affine(
            rank1_lattice(2, 0),
            rank1_lattice(2, 1),
            AffineMap::identity(1),
            Poly::zero(1),
            one(),
        );
        assert!(matches!(bad, Err(Error::LabelMismatch(_))));
    }

    #[test]
    fn interior_sum_cancels() {
        let s = obj(&[(0, 0)]);
        let t = obj(&[(1, 0), (2, 0)]);
        let r = obj(&[(3, 0)]);
        let f = SumMorphism::explicit(s.clone(), t.clone(), [(a(0), a(1), CycNum::one()), (a(0), a(2), CycNum::one())])
            .unwrap();
        let h = SumMorphism::explicit(
            t.clone(),
            r.clone(),
            [(a(1), a(3), CycNum::one()), (a(2), a(3), CycNum::from_int(-1))],
        )
        .unwrap();
        assert!(compose(&h, &f).unwrap().is_zero());
        assert_eq!(compose(&identity_of(&t), &f).unwrap(), f);
        assert!(matches!(compose(&f, &h), Err(Error::DomainMismatch(_))));
    }

    #[test]
    fn shifts_invert() {
        // labels 4n + 1 on both sides; shifting the index by ±1 changes the
        // label map's offset by ∓4
        let x = rank1_lattice(4, 1);
        let y = rank1_lattice(4, 5);
        let up = shift(&x, &y, -1);
        let down = shift(&y, &x, 1);
        assert_eq!(compose(&down, &up).unwrap(), identity_of(&x));
        assert_eq!(compose(&up, &down).unwrap(), identity_of(&y));
        let id = identity_of(&x);
        assert!(id.affine_body().unwrap().exponent.is_zero());
    }

    #[test]
    fn addition_examples() {
        let x = obj(&[(0, 0), (1, 2)]);
        let f = SumMorphism::explicit(x.clone(), x.clone(), [(a(0), a(0), ph(1, 3)), (a(1), a(1), CycNum::from_int(2))])
            .unwrap();
        assert_eq!(add_scale(&f, &zero_of(&x, &x), &CycNum::one()).unwrap(), f);
        assert!(add_scale(&f, &f, &CycNum::from_int(-1)).unwrap().is_zero());
        let g = SumMorphism::explicit(x.clone(), x.clone(), [(a(1), a(1), ph(1, 2))]).unwrap();
        let f0 = SumMorphism::explicit(x.clone(), x.clone(), [(a(0), a(0), ph(1, 3))]).unwrap();
        let sum = add_scale(&f0, &g, &CycNum::one()).unwrap();
        assert_eq!(sum.components().unwrap().len(), 2);
    }

    #[test]
    fn affine_addition() {
        let x = rank1_lattice(2, 0);
        let id = identity_of(&x);
        let twice = add_scale(&id, &id, &CycNum::one()).unwrap();
        assert_eq!(twice.affine_body().unwrap().coefficient, rational(2, 1));
        assert!(add_scale(&id, &id, &CycNum::from_int(-1)).unwrap().is_zero());
        let x2 = rank1_lattice(2, 0);
        let sh = shift(&x2, &x, 0);
        assert_eq!(sh, id);
        let wiggle = SumMorphism::affine(
            x.clone(),
            x.clone(),
            AffineMap::identity(1),
            Poly::var(1, 0).scale(&rational(1, 2)),
            one(),
        )
        .unwrap();
        assert_eq!(add_scale(&id, &wiggle, &CycNum::one()), Err(Error::AffineAdditionUnsupported));
    }

    #[test]
    fn affine_exponents_compare_mod_two() {
        let x = rank1_lattice(2, 0);
        let mk = |p: Poly| SumMorphism::affine(x.clone(), x.clone(), AffineMap::identity(1), p, one()).unwrap();
        let p = Poly::var(1, 0).scale(&rational(1, 3));
        assert_eq!(mk(p.clone()), mk(&p + &Poly::constant(1, rational(2, 1))));
        // n² + n is always even
        let q = &(&Poly::var(1, 0) * &Poly::var(1, 0)) + &Poly::var(1, 0);
        assert_eq!(mk(q), identity_of(&x));
        assert_ne!(mk(Poly::var(1, 0)), identity_of(&x));
        let neg = SumMorphism::affine(x.clone(), x.clone(), AffineMap::identity(1), Poly::zero(1), rational(-1, 1))
            .unwrap();
        assert_eq!(neg, mk(Poly::constant(1, one())));
    }

    #[test]
    fn direct_sum_identities() {
        let x = obj(&[(0, 0), (1, 3)]);
        let y = obj(&[(0, 1)]);
        let ds = direct_sum_pair(&x, &y).unwrap();
        let [px, py] = &ds.projections;
        let [ix, iy] = &ds.inclusions;
        assert_eq!(compose(px, ix).unwrap(), identity_of(&x));
        assert_eq!(compose(py, iy).unwrap(), identity_of(&y));
        assert!(compose(px, iy).unwrap().is_zero());
        let sum = add_scale(
            &compose(ix, px).unwrap(),
            &compose(iy, py).unwrap(),
            &CycNum::one(),
        )
        .unwrap();
        assert_eq!(sum, identity_of(&ds.object));
    }

    #[test]
    fn coproduct_examples() {
        let one_member = coproduct(&[obj(&[(0, 5)])]).unwrap();
        assert_eq!(one_member.object.finite_indices().unwrap().len(), 1);
        let singles: Vec<SumObject> = (0..4).map(|a| include(lab(a))).collect();
        let cp = coproduct(&singles).unwrap();
        let labels: Vec<i64> = cp.object.finite_labels().unwrap().values().map(|l| l.0[0]).collect();
        assert_eq!(labels, vec![0, 1, 2, 3]);
        for (i, inj) in cp.injections.iter().enumerate() {
            assert_eq!(inj.component(&a(0), &Index::tagged(i, a(0))).unwrap(), CycNum::one());
        }
        assert!(matches!(coproduct(&[rank1_lattice(1, 0)]), Err(Error::UnsupportedDomain(_))));
    }

    #[test]
    fn assemble_round_trip() {
        let fam = vec![obj(&[(0, 0), (1, 1)]), obj(&[(0, 1)])];
        let z = obj(&[(7, 0), (8, 1)]);
        let c0 = SumMorphism::explicit(fam[0].clone(), z.clone(), [(a(0), a(7), ph(1, 4)), (a(1), a(8), CycNum::from_int(3))])
            .unwrap();
        let c1 = SumMorphism::explicit(fam[1].clone(), z.clone(), [(a(0), a(8), ph(2, 3))]).unwrap();
        let big = assemble_from_components(&fam, &[c0.clone(), c1.clone()]).unwrap();
        assert_eq!(restrict_component(&big, &fam, 0).unwrap(), c0);
        assert_eq!(restrict_component(&big, &fam, 1).unwrap(), c1);
        let parts: Vec<SumMorphism> = (0..2).map(|i| restrict_component(&big, &fam, i).unwrap()).collect();
        assert_eq!(assemble_from_components(&fam, &parts).unwrap(), big);
        let zeros = [zero_of(&fam[0], &z), zero_of(&fam[1], &z)];
        assert!(assemble_from_components(&fam, &zeros).unwrap().is_zero());
        assert!(matches!(
            assemble_from_components(&fam, &[c1.clone(), c0.clone()]),
            Err(Error::DomainMismatch(_))
        ));
    }

    #[test]
    fn inclusion_is_fully_faithful() {
        let g = lab(3);
        let f = include_morphism(&g, &g, ph(1, 4)).unwrap();
        let h = include_morphism(&g, &g, CycNum::from_int(2)).unwrap();
        assert_eq!(base_scalar(&compose(&h, &f).unwrap()).unwrap(), &ph(1, 4) * &CycNum::from_int(2));
        assert_eq!(include_morphism(&g, &g, CycNum::one()).unwrap(), identity_of(&include(g.clone())));
        assert!(include_morphism(&g, &lab(4), CycNum::one()).is_err());
        assert!(base_scalar(&include_morphism(&g, &lab(4), CycNum::zero()).unwrap())
            .unwrap()
            .is_zero());
        assert_eq!(unit_object(1), include(lab(0)));
    }

    #[test]
    fn windows() {
        let x = rank1_lattice(4, 1);
        let y = rank1_lattice(4, 5);
        let w = Window::symmetric(3);
        let sh = shift(&x, &y, -1);
        let r = restrict_morphism(&sh, &w, &w).unwrap();
        assert!(r.truncated);
        let tw = image_window(&sh, &w).unwrap();
        assert_eq!(tw, Window::new(-4, 3));
        let r = restrict_morphism(&sh, &w, &tw).unwrap();
        assert!(!r.truncated);
        let rows = r.morphism.components().unwrap();
        assert_eq!(rows.len(), 7);
        for (s, row) in rows {
            let n = s.as_point().unwrap()[0];
            assert_eq!(row[&Index::Point(vec![n - 1])], CycNum::one());
        }
        let id = restrict_morphism(&identity_of(&x), &w, &w).unwrap();
        assert_eq!(id.morphism, identity_of(&restrict_object(&x, &w)));
    }

    #[test]
    fn mixed_forms() {
        let x = rank1_lattice(2, 0);
        let u = include(lab(0));
        let iota = SumMorphism::explicit(u.clone(), x.clone(), [(a(0), Index::Point(vec![0]), CycNum::one())]).unwrap();
        let promoted = iota.to_affine().unwrap();
        assert!(promoted.is_affine());
        assert_eq!(promoted, iota);
        let back = compose(&identity_of(&x), &iota).unwrap();
        assert!(back.is_affine());
        assert_eq!(back.row(&a(0)).unwrap(), vec![(Index::Point(vec![0]), CycNum::one())]);
        let proj = SumMorphism::explicit(x.clone(), u.clone(), [(Index::Point(vec![0]), a(0), CycNum::one())]).unwrap();
        assert!(matches!(compose(&proj, &identity_of(&x)), Err(Error::MixedFormUnsupported(_))));
        assert_eq!(compose(&proj, &iota).unwrap(), identity_of(&u));
        assert!(matches!(eq_morphism(&proj, &proj.clone()), Ok(true)));
    }

    #[test]
    fn inverses() {
        let x = obj(&[(0, 0), (1, 2)]);
        let y = obj(&[(5, 2), (6, 0)]);
        let f = SumMorphism::explicit(x.clone(), y.clone(), [(a(0), a(6), ph(1, 3)), (a(1), a(5), CycNum::from_int(-2))])
            .unwrap();
        let g = invert_iso(&f).unwrap();
        assert_eq!(compose(&g, &f).unwrap(), identity_of(&x));
        assert_eq!(compose(&f, &g).unwrap(), identity_of(&y));
        let x = rank1_lattice(4, 1);
        let y = rank1_lattice(4, 5);
        let twisted = SumMorphism::affine(
            x.clone(),
            y.clone(),
            AffineMap::new(1, vec![vec![1]], vec![-1]),
            &(&Poly::var(1, 0) * &Poly::var(1, 0)).scale(&rational(1, 3)) + &Poly::var(1, 0),
            rational(3, 1),
        )
        .unwrap();
        let inv = invert_iso(&twisted).unwrap();
        assert_eq!(compose(&inv, &twisted).unwrap(), identity_of(&x));
        assert_eq!(compose(&twisted, &inv).unwrap(), identity_of(&y));
        assert!(invert_iso(&zero_of(&obj(&[(0, 0)]), &obj(&[(0, 0)]))).is_err());
    }

    #[test]
    fn json_round_trip() {
        let x = obj(&[(0, 0), (1, 2)]);
        let f = SumMorphism::explicit(x.clone(), x.clone(), [(a(0), a(0), ph(1, 3)), (a(1), a(1), CycNum::from_int(2))])
            .unwrap();
        let s = serde_json::to_string(&f).unwrap();
        let back: SumMorphism = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        let l = shift(&rank1_lattice(4, 1), &rank1_lattice(4, 5), -1);
        let v = serde_json::to_value(&l).unwrap();
        assert_eq!(v["body"]["form"], "affine");
        assert_eq!(v["source"]["domain"], "lattice");
        let back: SumMorphism = serde_json::from_value(v).unwrap();
        assert_eq!(back, l);
    }
}
