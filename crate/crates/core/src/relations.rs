//! Brute-force verification of the defining relations on a stored module.
//!
//! Every relation is rewritten as `Σ c_k · word_k = 0` and evaluated on each
//! basis vector. An evaluation that touches a truncated column or a table
//! outside the stored window is counted as skipped, never as passed.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{qbinom, qfactorial, QRat};
use crate::error::Error;
use crate::modules::{vec_axpy, AlgebraKind, Gen, Label, RepModule, SparseVec};

pub use crate::modules::{verify_highest_lweight, verify_kappa_zero, HighestCheck};

pub const ASYMPTOTIC_FAMILIES: [&str; 9] = [
    "phi_zero_modes",
    "phi_commute_same",
    "phi_commute_mixed",
    "kappa_x",
    "phi_plus_x",
    "phi_minus_x",
    "x_plus_x_minus",
    "x_exchange",
    "x_serre",
];

pub const BOREL_FAMILIES: [&str; 3] = ["k_commute", "k_e", "e_serre"];

/// Index bounds of a relation check: spectral indices `|r|, |r'| ≤ r`, modes `0 ≤ m, m' ≤ m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckWindow {
    pub r: i64,
    pub m: u32,
}

impl Default for CheckWindow {
    fn default() -> Self {
        CheckWindow { r: 2, m: 3 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyCount {
    pub relation_id: String,
    pub instances_checked: u64,
    pub instances_skipped: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub relation_id: String,
    /// Family-specific index tuple, see [`RelationReport`].
    pub indices: Vec<i64>,
    pub label: Label,
    /// `lhs - rhs` on the basis vector, keyed by target label.
    pub residual: Vec<(Label, QRat)>,
}

/// Outcome of a relation check. Index tuples are
/// `[i]`/`[i, sign, m]` for `phi_zero_modes`, `[i, j, s, m, s', m']` for the φ̃ commutators,
/// `[i, j, sign, r]` for `kappa_x`, `[i, j, sign, m, r]` for `phi_±_x`,
/// `[i, j, r, r']` for `x_plus_x_minus`, `[i, j, sign, r, r']` for `x_exchange`,
/// `[i, j, sign, r', r_1, …, r_s]` for `x_serre`, and `[i, j]` for the Borel families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub families: Vec<FamilyCount>,
    pub violations: Vec<Violation>,
}

impl RelationReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn checked(&self) -> u64 {
        self.families.iter().map(|f| f.instances_checked).sum()
    }

    pub fn skipped(&self) -> u64 {
        self.families.iter().map(|f| f.instances_skipped).sum()
    }

    pub fn family(&self, id: &str) -> Option<&FamilyCount> {
        self.families.iter().find(|f| f.relation_id == id)
    }

    /// Families with at least one violation, in report order.
    pub fn violated_families(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for v in &self.violations {
            if !out.contains(&v.relation_id.as_str()) {
                out.push(&v.relation_id);
            }
        }
        out
    }
}

struct Instance {
    family: &'static str,
    indices: Vec<i64>,
    terms: Vec<(QRat, Vec<Gen>)>,
}

impl Instance {
    fn new(family: &'static str, indices: Vec<i64>) -> Self {
        Instance { family, indices, terms: Vec::new() }
    }

    fn term(mut self, c: QRat, word: Vec<Gen>) -> Self {
        if !c.is_zero() {
            self.terms.push((c, word));
        }
        self
    }
}

enum Outcome {
    Pass,
    Skip,
    Fail(SparseVec),
}

fn evaluate(m: &RepModule, inst: &Instance, b: usize) -> Outcome {
    let v = m.basis_vector(b);
    let mut acc = SparseVec::new();
    for (c, word) in &inst.terms {
        match m.apply_word(word, &v) {
            Some(w) => vec_axpy(&mut acc, c, &w),
            None => return Outcome::Skip,
        }
    }
    if acc.is_empty() {
        Outcome::Pass
    } else {
        Outcome::Fail(acc)
    }
}

fn run(m: &RepModule, families: &[&str], instances: Vec<Instance>) -> RelationReport {
    let results: Vec<(usize, u64, u64, Vec<Violation>)> = instances
        .par_iter()
        .map(|inst| {
            let fam = families.iter().position(|f| *f == inst.family).unwrap();
            let (mut checked, mut skipped, mut bad) = (0, 0, Vec::new());
            for b in 0..m.dim() {
                match evaluate(m, inst, b) {
                    Outcome::Pass => checked += 1,
                    Outcome::Skip => skipped += 1,
                    Outcome::Fail(r) => {
                        checked += 1;
                        bad.push(Violation {
                            relation_id: inst.family.to_string(),
                            indices: inst.indices.clone(),
                            label: m.basis()[b].clone(),
                            residual: r.into_iter().map(|(t, c)| (m.basis()[t].clone(), c)).collect(),
                        });
                    }
                }
            }
            (fam, checked, skipped, bad)
        })
        .collect();
    let mut counts: Vec<FamilyCount> = families
        .iter()
        .map(|f| FamilyCount { relation_id: f.to_string(), instances_checked: 0, instances_skipped: 0 })
        .collect();
    let mut violations = Vec::new();
    for (fam, c, s, v) in results {
        counts[fam].instances_checked += c;
        counts[fam].instances_skipped += s;
        violations.extend(v);
    }
    RelationReport { families: counts, violations }
}

fn q(e: i64) -> QRat {
    QRat::q_pow(e)
}

/// `φ̃⁺_{i,k}` as a word; modes of the wrong sign are zero (`None`).
fn phi_plus(i: usize, k: i64) -> Option<Gen> {
    (k >= 0).then(|| Gen::PhiTildePlus(i, k as u32))
}

/// `φ̃⁻_{i,k}` (stored as mode `-k`); zero for `k > 0`.
fn phi_minus(i: usize, k: i64) -> Option<Gen> {
    (k <= 0).then(|| Gen::PhiTildeMinus(i, (-k) as u32))
}

fn x(sign: i64, j: usize, r: i64) -> Gen {
    if sign > 0 {
        Gen::XPlus(j, r)
    } else {
        Gen::XTildeMinus(j, r)
    }
}

fn asymptotic_instances(m: &RepModule, w: CheckWindow) -> Vec<Instance> {
    let cd = m.cartan();
    let nodes: Vec<usize> = cd.nodes().collect();
    let rs: Vec<i64> = (-w.r..=w.r).collect();
    let ms: Vec<u32> = (0..=w.m).collect();
    let mut out = Vec::new();
    let one = QRat::one();
    let mone = -QRat::one();
    for &i in &nodes {
        out.push(Instance::new("phi_zero_modes", vec![i as i64, 1, 0]).term(one.clone(), vec![Gen::PhiTildePlus(i, 0)]).term(mone.clone(), vec![]));
        out.push(
            Instance::new("phi_zero_modes", vec![i as i64, -1, 0])
                .term(one.clone(), vec![Gen::PhiTildeMinus(i, 0)])
                .term(mone.clone(), vec![Gen::Kappa(i), Gen::Kappa(i)]),
        );
    }
    let phis = |s: i64, i: usize, k: u32| if s > 0 { Gen::PhiTildePlus(i, k) } else { Gen::PhiTildeMinus(i, k) };
    for &i in &nodes {
        for &j in &nodes {
            for s in [1i64, -1] {
                for t in [1i64, -1] {
                    let fam = if s == t { "phi_commute_same" } else { "phi_commute_mixed" };
                    for &a in &ms {
                        for &b in &ms {
                            let (g, h) = (phis(s, i, a), phis(t, j, b));
                            out.push(
                                Instance::new(fam, vec![i as i64, j as i64, s, a as i64, t, b as i64])
                                    .term(one.clone(), vec![g, h])
                                    .term(mone.clone(), vec![h, g]),
                            );
                        }
                    }
                }
            }
        }
    }
    for &i in &nodes {
        let di = cd.d(i);
        for &j in &nodes {
            let c = cd.c(i, j);
            for sg in [1i64, -1] {
                for &r in &rs {
                    out.push(
                        Instance::new("kappa_x", vec![i as i64, j as i64, sg, r])
                            .term(one.clone(), vec![Gen::Kappa(i), x(sg, j, r)])
                            .term(-q(-sg * di * c), vec![x(sg, j, r), Gen::Kappa(i)]),
                    );
                }
                for &mm in &ms {
                    let mm = mm as i64;
                    for &r in &rs {
                        // φ̃⁺_{i,m} x̃_{j,r} = Σ_{l≤m} q_i^{±lC} x̃_{j,r+l} φ̃⁺_{i,m-l} - Σ_{l<m} q_i^{±(l-1)C} x̃_{j,r+l+1} φ̃⁺_{i,m-l-1}
                        let mut inst = Instance::new("phi_plus_x", vec![i as i64, j as i64, sg, mm, r])
                            .term(one.clone(), vec![phi_plus(i, mm).unwrap(), x(sg, j, r)]);
                        for l in 0..=mm {
                            inst = inst.term(-q(sg * l * c * di), vec![x(sg, j, r + l), phi_plus(i, mm - l).unwrap()]);
                        }
                        for l in 0..mm {
                            inst = inst.term(q(sg * (l - 1) * c * di), vec![x(sg, j, r + l + 1), phi_plus(i, mm - l - 1).unwrap()]);
                        }
                        out.push(inst);
                        // φ̃⁻_{i,-m} x̃_{j,r} = -Σ_{l<m} q_i^{∓(l+1)C} x̃_{j,r-l-1} φ̃⁻_{i,-m+l+1} + Σ_{l≤m} q_i^{∓(l+2)C} x̃_{j,r-l} φ̃⁻_{i,-m+l}
                        let mut inst = Instance::new("phi_minus_x", vec![i as i64, j as i64, sg, mm, r])
                            .term(one.clone(), vec![phi_minus(i, -mm).unwrap(), x(sg, j, r)]);
                        for l in 0..mm {
                            inst = inst.term(q(-sg * (l + 1) * c * di), vec![x(sg, j, r - l - 1), phi_minus(i, -mm + l + 1).unwrap()]);
                        }
                        for l in 0..=mm {
                            inst = inst.term(-q(-sg * (l + 2) * c * di), vec![x(sg, j, r - l), phi_minus(i, -mm + l).unwrap()]);
                        }
                        out.push(inst);
                    }
                }
            }
            for &r in &rs {
                for &rp in &rs {
                    let mut inst = Instance::new("x_plus_x_minus", vec![i as i64, j as i64, r, rp])
                        .term(q(-di * c), vec![Gen::XPlus(i, r), Gen::XTildeMinus(j, rp)])
                        .term(mone.clone(), vec![Gen::XTildeMinus(j, rp), Gen::XPlus(i, r)]);
                    if i == j {
                        let den = crate::arith::q_minus_qinv(di as u32).inv().unwrap();
                        if let Some(g) = phi_plus(i, r + rp) {
                            inst = inst.term(-den.clone(), vec![g]);
                        }
                        if let Some(g) = phi_minus(i, r + rp) {
                            inst = inst.term(den, vec![g]);
                        }
                    }
                    out.push(inst);
                    for sg in [1i64, -1] {
                        let qc = q(sg * di * c);
                        out.push(
                            Instance::new("x_exchange", vec![i as i64, j as i64, sg, r, rp])
                                .term(one.clone(), vec![x(sg, i, r + 1), x(sg, j, rp)])
                                .term(-qc.clone(), vec![x(sg, j, rp), x(sg, i, r + 1)])
                                .term(-qc, vec![x(sg, i, r), x(sg, j, rp + 1)])
                                .term(one.clone(), vec![x(sg, j, rp + 1), x(sg, i, r)]),
                        );
                    }
                }
            }
            if i != j {
                let s = (1 - c) as usize;
                for sg in [1i64, -1] {
                    for &rp in &rs {
                        for tuple in sorted_tuples(&rs, s) {
                            out.push(serre_instance(i, j, sg, rp, &tuple, di as u32));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Non-decreasing `s`-tuples from `rs`; the Serre sum is symmetric in `r_1..r_s`.
fn sorted_tuples(rs: &[i64], s: usize) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..s {
        out = out
            .into_iter()
            .flat_map(|t: Vec<i64>| {
                let lo = t.last().copied().unwrap_or(i64::MIN);
                rs.iter().filter(move |&&r| r >= lo).map(move |&r| [t.clone(), vec![r]].concat()).collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn serre_instance(i: usize, j: usize, sg: i64, rp: i64, rs: &[i64], di: u32) -> Instance {
    let s = rs.len();
    let mut idx = vec![i as i64, j as i64, sg, rp];
    idx.extend_from_slice(rs);
    let mut inst = Instance::new("x_serre", idx);
    for pi in permutations(s) {
        for k in 0..=s {
            let mut word: Vec<Gen> = pi[..k].iter().map(|&a| x(sg, i, rs[a])).collect();
            word.push(x(sg, j, rp));
            word.extend(pi[k..].iter().map(|&a| x(sg, i, rs[a])));
            let c = qbinom(s as u32, k as u32, di);
            inst = inst.term(if k % 2 == 0 { c } else { -c }, word);
        }
    }
    inst
}

/// Checks the nine relation families of the asymptotic algebra on `m`.
pub fn verify_asymptotic_relations(m: &RepModule, w: CheckWindow) -> Result<RelationReport, Error> {
    if !matches!(m.kind(), AlgebraKind::Asymptotic(_)) {
        return Err(Error::InvalidArgument("asymptotic module required".into()));
    }
    Ok(run(m, &ASYMPTOTIC_FAMILIES, asymptotic_instances(m, w)))
}

/// Checks the Borel presentation: commuting `k`'s, `k_i e_j = q_i^{a_ij} e_j k_i`
/// (affine Cartan matrix) and the q-Serre relations with divided powers.
pub fn verify_borel_relations(m: &RepModule) -> Result<RelationReport, Error> {
    if m.kind() != AlgebraKind::Borel {
        return Err(Error::InvalidArgument("Borel module required".into()));
    }
    let cd = m.cartan();
    let n = cd.rank();
    for i in 0..=n {
        if !m.actions().contains_key(&Gen::E(i)) {
            return Err(Error::InvalidArgument(format!("missing e_{i} table")));
        }
    }
    let a = cd.affine_matrix();
    let d = cd.affine_symmetrizers();
    let mut out = Vec::new();
    let one = QRat::one();
    for i in 0..=n {
        for j in 0..=n {
            let idx = vec![i as i64, j as i64];
            out.push(
                Instance::new("k_commute", idx.clone())
                    .term(one.clone(), vec![Gen::K(i), Gen::K(j)])
                    .term(-one.clone(), vec![Gen::K(j), Gen::K(i)]),
            );
            out.push(
                Instance::new("k_e", idx.clone())
                    .term(one.clone(), vec![Gen::K(i), Gen::E(j)])
                    .term(-q(d[i] * a[i][j]), vec![Gen::E(j), Gen::K(i)]),
            );
            if i != j {
                let s = (1 - a[i][j]) as u32;
                let di = d[i] as u32;
                let mut inst = Instance::new("e_serre", idx);
                for r in 0..=s {
                    let c = (&qfactorial(s - r, di) * &qfactorial(r, di)).inv().unwrap();
                    let mut word = vec![Gen::E(i); (s - r) as usize];
                    word.push(Gen::E(j));
                    word.extend(vec![Gen::E(i); r as usize]);
                    inst = inst.term(if r % 2 == 0 { c } else { -c }, word);
                }
                out.push(inst);
            }
        }
    }
    Ok(run(m, &BOREL_FAMILIES, out))
}
