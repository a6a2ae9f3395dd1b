//! Concrete truncated modules over the asymptotic algebra and the Borel
//! subalgebra, stored as sparse action tables on a labelled basis.
//!
//! Coefficients of an asymptotic module are rational functions of the
//! module's *own* quantum parameter: `q` for [`Param::Q`], `p = q^{-1}` for
//! [`Param::QInv`]. Borel modules always use the ambient `q`.

mod build;
mod json;
mod ops;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::arith::QRat;
use crate::cartan::{CartanData, Weight};
use crate::error::Error;
use crate::lweight::LWeight;
use crate::qchar::{Char, QChar};

pub use build::{
    build_sl2_kr, build_sl2_lplus, build_sl2_vinf, build_sl2_winf, build_sl3_kr, build_sl3_lplus,
    build_sl3_vinf, build_sl3_winf,
};
pub use ops::{borel_from_asymptotic, dualize, sl2_drinfeld_from_chevalley, spectral_shift, tensor_sl2, twist_sigma};

pub type Label = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Param {
    Q,
    QInv,
}

impl Param {
    pub fn flip(self) -> Param {
        match self {
            Param::Q => Param::QInv,
            Param::QInv => Param::Q,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlgebraKind {
    Asymptotic(Param),
    Borel,
}

/// Generator labels. Node indices are 1-based; `E(0)` is the affine node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gen {
    /// `x̃⁺_{i,r}` (equal to `x⁺_{i,r}`).
    XPlus(usize, i64),
    /// `x̃⁻_{i,r}`.
    XTildeMinus(usize, i64),
    /// Drinfeld `x⁻_{i,r}`, only where `κ_i` is invertible.
    XMinus(usize, i64),
    /// `φ̃⁺_{i,m}`.
    PhiTildePlus(usize, u32),
    /// `φ̃⁻_{i,-m}`.
    PhiTildeMinus(usize, u32),
    /// Drinfeld `φ⁺_{i,m}`.
    PhiPlus(usize, u32),
    Kappa(usize),
    E(usize),
    K(usize),
    KInv(usize),
}

impl Gen {
    pub fn is_diagonal(&self) -> bool {
        matches!(self, Gen::PhiTildePlus(..) | Gen::PhiTildeMinus(..) | Gen::PhiPlus(..) | Gen::Kappa(_) | Gen::K(_) | Gen::KInv(_))
    }

    /// Weight change, in the convention of the module the generator acts on.
    pub fn degree(&self, cd: &CartanData) -> Weight {
        let n = cd.rank();
        match *self {
            Gen::XPlus(i, _) => cd.simple_root_weight(i),
            Gen::XTildeMinus(i, _) | Gen::XMinus(i, _) => cd.simple_root_weight(i).iter().map(|x| -x).collect(),
            Gen::E(0) => cd.root_weight(cd.highest_root()).iter().map(|x| -x).collect(),
            Gen::E(i) => cd.simple_root_weight(i),
            _ => vec![0; n],
        }
    }

    pub(crate) fn node(&self) -> usize {
        match *self {
            Gen::XPlus(i, _)
            | Gen::XTildeMinus(i, _)
            | Gen::XMinus(i, _)
            | Gen::PhiTildePlus(i, _)
            | Gen::PhiTildeMinus(i, _)
            | Gen::PhiPlus(i, _)
            | Gen::Kappa(i)
            | Gen::E(i)
            | Gen::K(i)
            | Gen::KInv(i) => i,
        }
    }

    pub(crate) fn with_node(&self, j: usize) -> Gen {
        match *self {
            Gen::XPlus(_, r) => Gen::XPlus(j, r),
            Gen::XTildeMinus(_, r) => Gen::XTildeMinus(j, r),
            Gen::XMinus(_, r) => Gen::XMinus(j, r),
            Gen::PhiTildePlus(_, m) => Gen::PhiTildePlus(j, m),
            Gen::PhiTildeMinus(_, m) => Gen::PhiTildeMinus(j, m),
            Gen::PhiPlus(_, m) => Gen::PhiPlus(j, m),
            Gen::Kappa(_) => Gen::Kappa(j),
            Gen::E(_) => Gen::E(j),
            Gen::K(_) => Gen::K(j),
            Gen::KInv(_) => Gen::KInv(j),
        }
    }
}

/// A sparse vector: sorted `(basis index, nonzero coefficient)` pairs.
pub type SparseVec = Vec<(usize, QRat)>;

/// Image of one basis vector: known exactly, or leaving the truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Column {
    Known(SparseVec),
    Truncated,
}

/// Matrix stored column by column (one column per source basis vector).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub(crate) cols: Vec<Column>,
}

pub(crate) fn vec_axpy(acc: &mut SparseVec, c: &QRat, v: &SparseVec) {
    if c.is_zero() {
        return;
    }
    let mut out = Vec::with_capacity(acc.len() + v.len());
    let (mut a, mut b) = (acc.drain(..).peekable(), v.iter().peekable());
    loop {
        match (a.peek(), b.peek()) {
            (Some((ia, _)), Some((ib, _))) if ia < ib => out.push(a.next().unwrap()),
            (Some((ia, _)), Some((ib, _))) if ia > ib => {
                let (i, x) = b.next().unwrap();
                out.push((*i, c * x));
            }
            (Some(_), Some(_)) => {
                let (i, x) = a.next().unwrap();
                let (_, y) = b.next().unwrap();
                let s = &x + &(c * y);
                if !s.is_zero() {
                    out.push((i, s));
                }
            }
            (Some(_), None) => out.push(a.next().unwrap()),
            (None, Some(_)) => {
                let (i, x) = b.next().unwrap();
                out.push((*i, c * x));
            }
            (None, None) => break,
        }
    }
    drop(a);
    *acc = out;
}

impl SparseMatrix {
    pub fn zero(dim: usize) -> Self {
        SparseMatrix { cols: vec![Column::Known(Vec::new()); dim] }
    }

    pub fn identity(dim: usize) -> Self {
        SparseMatrix { cols: (0..dim).map(|b| Column::Known(vec![(b, QRat::one())])).collect() }
    }

    pub fn diagonal(vals: Vec<QRat>) -> Self {
        SparseMatrix {
            cols: vals
                .into_iter()
                .enumerate()
                .map(|(b, v)| Column::Known(if v.is_zero() { Vec::new() } else { vec![(b, v)] }))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, b: usize) -> &Column {
        &self.cols[b]
    }

    pub fn entry(&self, dst: usize, src: usize) -> Option<QRat> {
        match &self.cols[src] {
            Column::Known(v) => Some(v.iter().find(|(i, _)| *i == dst).map(|(_, c)| c.clone()).unwrap_or_else(QRat::zero)),
            Column::Truncated => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| matches!(c, Column::Known(v) if v.is_empty()))
    }

    /// `None` when the image leaves the truncation.
    pub fn apply(&self, v: &SparseVec) -> Option<SparseVec> {
        let mut acc = Vec::new();
        for (b, c) in v {
            match &self.cols[*b] {
                Column::Known(col) => vec_axpy(&mut acc, c, col),
                Column::Truncated => return None,
            }
        }
        Some(acc)
    }

    /// `self · o`.
    pub fn compose(&self, o: &SparseMatrix) -> SparseMatrix {
        let cols = o
            .cols
            .iter()
            .map(|c| match c {
                Column::Known(v) => self.apply(v).map(Column::Known).unwrap_or(Column::Truncated),
                Column::Truncated => Column::Truncated,
            })
            .collect();
        SparseMatrix { cols }
    }

    /// `a·self + b·o`.
    pub fn combine(&self, a: &QRat, o: &SparseMatrix, b: &QRat) -> SparseMatrix {
        let cols = self
            .cols
            .iter()
            .zip(&o.cols)
            .map(|(x, y)| match (x, y) {
                (Column::Known(x), Column::Known(y)) => {
                    let mut acc = Vec::new();
                    vec_axpy(&mut acc, a, x);
                    vec_axpy(&mut acc, b, y);
                    Column::Known(acc)
                }
                _ => Column::Truncated,
            })
            .collect();
        SparseMatrix { cols }
    }

    pub fn scale(&self, c: &QRat) -> SparseMatrix {
        self.combine(c, &SparseMatrix::zero(self.dim()), &QRat::zero())
    }

    /// `self·o - c·o·self`.
    pub fn q_commutator(&self, o: &SparseMatrix, c: &QRat) -> SparseMatrix {
        self.compose(o).combine(&QRat::one(), &o.compose(self), &(-c))
    }

    pub fn map_coeffs(&self, f: impl Fn(&QRat) -> QRat) -> SparseMatrix {
        let cols = self
            .cols
            .iter()
            .map(|c| match c {
                Column::Known(v) => Column::Known(v.iter().map(|(i, x)| (*i, f(x))).filter(|(_, x)| !x.is_zero()).collect()),
                Column::Truncated => Column::Truncated,
            })
            .collect();
        SparseMatrix { cols }
    }

    /// Diagonal entries, when the matrix is diagonal with every column known.
    pub fn diagonal_values(&self) -> Option<Vec<QRat>> {
        self.cols
            .iter()
            .enumerate()
            .map(|(b, c)| match c {
                Column::Known(v) if v.is_empty() => Some(QRat::zero()),
                Column::Known(v) if v.len() == 1 && v[0].0 == b => Some(v[0].1.clone()),
                _ => None,
            })
            .collect()
    }
}

/// Which end of the weight diagram the truncation keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    /// Complete within `depth` below `extremal`.
    Highest,
    /// Complete within `depth` above `extremal`.
    Lowest,
}

/// Spectral and mode windows: `x̃_{i,r}` stored for `|r| ≤ r`, `φ̃_{i,±m}` for `m ≤ m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub r: i64,
    pub m: u32,
}

impl Window {
    /// Windows large enough to check relations with `|r|, |r'| ≤ big_r` and modes `≤ big_m`.
    pub fn for_check(big_r: i64, big_m: u32) -> Window {
        Window { r: big_r + (big_m as i64).max(1), m: big_m.max(2 * big_r as u32) }
    }
}

impl Default for Window {
    fn default() -> Self {
        Window::for_check(2, 3)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Truncation {
    /// `None` for a module that is stored completely.
    pub depth: Option<u32>,
    pub extremal: Weight,
    pub direction: Direction,
    pub window: Window,
}

#[derive(Clone, Debug)]
pub struct RepModule {
    pub(crate) cartan: CartanData,
    pub(crate) kind: AlgebraKind,
    pub(crate) basis: Vec<Label>,
    pub(crate) index: HashMap<Label, usize>,
    pub(crate) weights: Vec<Weight>,
    /// Asymptotic kind: the `φ̃⁺` fractions. Borel kind: the ℓ-weights themselves.
    pub(crate) diag: Option<Vec<LWeight>>,
    pub(crate) actions: BTreeMap<Gen, SparseMatrix>,
    pub(crate) truncation: Truncation,
}

impl RepModule {
    pub(crate) fn new(
        cartan: CartanData,
        kind: AlgebraKind,
        basis: Vec<Label>,
        weights: Vec<Weight>,
        truncation: Truncation,
    ) -> Self {
        let index = basis.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        RepModule { cartan, kind, basis, index, weights, diag: None, actions: BTreeMap::new(), truncation }
    }

    pub fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Label] {
        &self.basis
    }

    pub fn index_of(&self, label: &[i64]) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn weight_of(&self, b: usize) -> &Weight {
        &self.weights[b]
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn truncation(&self) -> &Truncation {
        &self.truncation
    }

    pub fn window(&self) -> Window {
        self.truncation.window
    }

    pub fn actions(&self) -> &BTreeMap<Gen, SparseMatrix> {
        &self.actions
    }

    pub fn has_lweights(&self) -> bool {
        self.diag.is_some()
    }

    /// Exponent of `k_i` (node 0 included) on basis vector `b`.
    pub fn k_exponent(&self, i: usize, b: usize) -> i64 {
        let w = &self.weights[b];
        if i == 0 {
            let theta = self.cartan.highest_root();
            -theta.iter().zip(w).map(|(t, m)| t * m).sum::<i64>()
        } else {
            w[i - 1]
        }
    }

    /// The stored or derived matrix of a generator; `K`/`KInv` always come from the grading.
    pub fn action(&self, g: &Gen) -> Option<SparseMatrix> {
        match *g {
            Gen::K(i) | Gen::KInv(i) => {
                let sign = if matches!(g, Gen::K(_)) { 1 } else { -1 };
                Some(SparseMatrix::diagonal((0..self.dim()).map(|b| QRat::q_pow(sign * self.k_exponent(i, b))).collect()))
            }
            _ => self.actions.get(g).cloned(),
        }
    }

    pub(crate) fn action_ref(&self, g: &Gen) -> Option<&SparseMatrix> {
        self.actions.get(g)
    }

    /// Applies a single generator to a vector; `None` means "truncated or not stored".
    pub fn apply(&self, g: &Gen, v: &SparseVec) -> Option<SparseVec> {
        match *g {
            Gen::K(i) | Gen::KInv(i) => {
                let sign = if matches!(g, Gen::K(_)) { 1 } else { -1 };
                Some(v.iter().map(|(b, c)| (*b, c.shift(sign * self.k_exponent(i, *b)))).collect())
            }
            _ => self.actions.get(g)?.apply(v),
        }
    }

    /// Applies `word[0] · word[1] ⋯ word[last]` (rightmost first).
    pub fn apply_word(&self, word: &[Gen], v: &SparseVec) -> Option<SparseVec> {
        let mut cur = v.clone();
        for g in word.iter().rev() {
            if cur.is_empty() {
                return Some(cur);
            }
            cur = self.apply(g, &cur)?;
        }
        Some(cur)
    }

    /// The same tables read over the asymptotic algebra of parameter `p`
    /// (coefficients stay in the module's own parameter).
    pub fn reparametrize(mut self, p: Param) -> Result<Self, Error> {
        match self.kind {
            AlgebraKind::Asymptotic(_) => {
                self.kind = AlgebraKind::Asymptotic(p);
                Ok(self)
            }
            AlgebraKind::Borel => Err(Error::InvalidArgument("Borel modules have no own parameter".into())),
        }
    }

    pub fn basis_vector(&self, b: usize) -> SparseVec {
        vec![(b, QRat::one())]
    }

    pub(crate) fn set_action(&mut self, g: Gen, m: SparseMatrix) {
        debug_assert_eq!(m.dim(), self.dim());
        self.actions.insert(g, m);
    }

    /// Fills a monomial action: `f(label)` gives the target label and coefficient.
    /// Targets that exist in the full module but not in the stored basis are truncated;
    /// targets rejected by `exists` are genuine zeros.
    pub(crate) fn fill(
        &mut self,
        g: Gen,
        exists: &dyn Fn(&[i64]) -> bool,
        f: impl Fn(&[i64]) -> (Label, QRat),
    ) {
        let cols = self
            .basis
            .iter()
            .map(|l| {
                let (t, c) = f(l);
                if c.is_zero() || !exists(&t) {
                    Column::Known(Vec::new())
                } else {
                    match self.index.get(&t) {
                        Some(&i) => Column::Known(vec![(i, c)]),
                        None => Column::Truncated,
                    }
                }
            })
            .collect();
        self.set_action(g, SparseMatrix { cols });
    }

    /// Stores `φ̃⁺` fractions and materializes `φ̃^±` modes up to the mode window.
    /// `φ̃⁻` is materialized only for nodes whose fractions are bounded at infinity.
    pub(crate) fn set_phi_tilde(&mut self, fr: Vec<LWeight>) {
        let mw = self.truncation.window.m as usize;
        for i in self.cartan.nodes() {
            let plus: Vec<_> = fr.iter().map(|w| w.component(i).expand(mw)).collect();
            for m in 0..=mw {
                self.set_action(Gen::PhiTildePlus(i, m as u32), SparseMatrix::diagonal(plus.iter().map(|s| s.coeff(m).clone()).collect()));
            }
            let minus: Result<Vec<_>, _> = fr.iter().map(|w| w.component(i).expand_at_infinity(mw)).collect();
            if let Ok(minus) = minus {
                for m in 0..=mw {
                    self.set_action(
                        Gen::PhiTildeMinus(i, m as u32),
                        SparseMatrix::diagonal(minus.iter().map(|s| s.coeff(m).clone()).collect()),
                    );
                }
            }
        }
        self.diag = Some(fr);
    }

    pub(crate) fn set_kappa(&mut self, i: usize, vals: Vec<QRat>) {
        self.set_action(Gen::Kappa(i), SparseMatrix::diagonal(vals));
    }

    /// ℓ-weight of a basis vector (in the module's own parameter).
    pub fn lweight_of(&self, b: usize) -> Result<LWeight, Error> {
        let d = self.diag.as_ref().ok_or_else(|| Error::NotDiagonal("ℓ-weight basis required".into()))?;
        Ok(match self.kind {
            AlgebraKind::Asymptotic(_) => d[b].scale_by_weight(&self.weights[b]),
            AlgebraKind::Borel => d[b].clone(),
        })
    }

    /// Is the weight space of `w` completely stored?
    pub fn weight_complete(&self, w: &[i64]) -> bool {
        let t = &self.truncation;
        let Some(depth) = t.depth else { return true };
        let h = match t.direction {
            Direction::Highest => self.cartan.height_below(w, &t.extremal),
            Direction::Lowest => self.cartan.height_below(&t.extremal, w),
        };
        h.map_or(true, |h| h <= depth as i64)
    }

    pub fn qchar(&self) -> Result<QChar, Error> {
        let lws = (0..self.dim()).map(|b| self.lweight_of(b)).collect::<Result<Vec<_>, _>>()?;
        let qc = QChar::from_terms(self.cartan.clone(), lws, None);
        match self.truncation.depth {
            None => Ok(qc),
            Some(d) => self.require_highest().and_then(|_| qc.truncate(d)),
        }
    }

    pub fn char(&self) -> Result<Char, Error> {
        let mut terms: BTreeMap<Weight, i64> = BTreeMap::new();
        for w in &self.weights {
            *terms.entry(w.clone()).or_insert(0) += 1;
        }
        let c = Char::new(self.cartan.clone(), terms, None);
        match self.truncation.depth {
            None => Ok(c),
            Some(d) => self.require_highest().map(|_| c.truncate_below(&self.truncation.extremal, d)),
        }
    }

    fn require_highest(&self) -> Result<(), Error> {
        if self.truncation.direction == Direction::Lowest {
            return Err(Error::Truncated("character of a lowest-weight truncation".into()));
        }
        Ok(())
    }

    /// Multiplies one stored entry by `factor` (fault injection).
    pub fn scale_entry(&mut self, g: &Gen, src: usize, dst: usize, factor: &QRat) -> Result<(), Error> {
        let m = self.actions.get_mut(g).ok_or_else(|| Error::InvalidArgument(format!("no table for {g:?}")))?;
        match &mut m.cols[src] {
            Column::Known(v) => {
                let e = v.iter_mut().find(|(i, _)| *i == dst).ok_or_else(|| Error::InvalidArgument("zero entry".into()))?;
                e.1 = &e.1 * factor;
                Ok(())
            }
            Column::Truncated => Err(Error::Truncated("mutating a truncated column".into())),
        }
    }

    /// Replaces the `φ̃⁺`/ℓ-weight data of one vector (fault injection on diagonal data).
    pub fn set_lweight_data(&mut self, b: usize, lw: LWeight) -> Result<(), Error> {
        let d = self.diag.as_mut().ok_or_else(|| Error::NotDiagonal("ℓ-weight basis required".into()))?;
        d[b] = lw;
        Ok(())
    }

    /// Checks that every stored non-diagonal action moves weights by its degree
    /// and that diagonal actions are diagonal.
    pub fn check_grading(&self) -> Result<(), Error> {
        for (g, m) in &self.actions {
            let deg = g.degree(&self.cartan);
            for (src, col) in m.cols.iter().enumerate() {
                if let Column::Known(v) = col {
                    for (dst, _) in v {
                        if g.is_diagonal() && *dst != src {
                            return Err(Error::NotDiagonal(format!("{g:?}")));
                        }
                        let want: Weight = self.weights[src].iter().zip(&deg).map(|(a, b)| a + b).collect();
                        if self.weights[*dst] != want {
                            return Err(Error::InvalidArgument(format!(
                                "{g:?} maps {:?} to {:?} against its degree",
                                self.basis[src], self.basis[*dst]
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// `q_i - q_i^{-1}` as a `QRat`.
pub(crate) fn qmq(d: i64) -> QRat {
    &QRat::q_pow(d) - &QRat::q_pow(-d)
}

pub(crate) fn qi(m: i64) -> QRat {
    crate::arith::qint(m, 1)
}

/// Highest ℓ-weight check result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HighestCheck {
    pub pass: bool,
    pub detail: String,
}

pub fn verify_kappa_zero(m: &RepModule, i: usize) -> Result<HighestCheck, Error> {
    if !matches!(m.kind, AlgebraKind::Asymptotic(_)) {
        return Err(Error::InvalidArgument("κ only acts on asymptotic modules".into()));
    }
    m.cartan.check_node(i)?;
    let k = m.actions.get(&Gen::Kappa(i)).ok_or_else(|| Error::InvalidArgument(format!("no κ_{i} table")))?;
    let nz = k.cols.iter().position(|c| !matches!(c, Column::Known(v) if v.is_empty()));
    Ok(match nz {
        None => HighestCheck { pass: true, detail: format!("κ_{i} = 0 on all {} basis vectors", m.dim()) },
        Some(b) => HighestCheck { pass: false, detail: format!("κ_{i} is nonzero on {:?}", m.basis[b]) },
    })
}

/// `e_i · top = 0` for all `i ∈ I`, and the `φ⁺` eigenvalues of `top` agree with
/// the expansion of `expected` up to the mode window.
///
/// `φ⁺` is read from stored ℓ-weights, or from `PhiPlus` tables when those exist.
pub fn verify_highest_lweight(m: &RepModule, expected: &LWeight, top: &[i64]) -> Result<HighestCheck, Error> {
    let b = m.index_of(top).ok_or_else(|| Error::InvalidArgument(format!("no basis vector {top:?}")))?;
    let v = m.basis_vector(b);
    for i in m.cartan.nodes() {
        let g = match m.kind {
            AlgebraKind::Borel => Gen::E(i),
            AlgebraKind::Asymptotic(_) => Gen::XPlus(i, 0),
        };
        let Some(img) = m.apply(&g, &v) else {
            return Ok(HighestCheck { pass: false, detail: format!("{g:?} on top is not available") });
        };
        if !img.is_empty() {
            return Ok(HighestCheck { pass: false, detail: format!("{g:?} does not kill the top vector") });
        }
    }
    let order = m.truncation.window.m as usize;
    let want = crate::lweight::expand_lweight(expected, order);
    for i in m.cartan.nodes() {
        let have: Vec<QRat> = if m.diag.is_some() {
            m.lweight_of(b)?.component(i).expand(order).coeffs().to_vec()
        } else {
            let mut have = vec![QRat::q_pow(m.k_exponent(i, b))];
            let mut k = 1;
            while let Some(t) = m.action_ref(&Gen::PhiPlus(i, k)) {
                match t.column(b) {
                    Column::Known(c) if c.is_empty() => have.push(QRat::zero()),
                    Column::Known(c) if c.len() == 1 && c[0].0 == b => have.push(c[0].1.clone()),
                    _ => {
                        return Ok(HighestCheck { pass: false, detail: format!("φ⁺_{{{i},{k}}} does not act diagonally on the top") })
                    }
                }
                k += 1;
            }
            if have.len() == 1 {
                return Err(Error::NotDiagonal("ℓ-weight basis required".into()));
            }
            have
        };
        for (k, c) in have.iter().enumerate().take(order + 1) {
            if c != want[i - 1].coeff(k) {
                return Ok(HighestCheck {
                    pass: false,
                    detail: format!("φ⁺_{{{i},{k}}} eigenvalue {c} differs from expected {}", want[i - 1].coeff(k)),
                });
            }
        }
    }
    Ok(HighestCheck { pass: true, detail: format!("highest ℓ-weight {expected} confirmed to order {order}") })
}
