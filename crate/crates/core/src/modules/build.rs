//! Explicit sl2/sl3 modules: KR modules, their asymptotic limits `V∞`,
//! the `W∞` limits and the `L⁺` bases.

use crate::arith::QRat;
use crate::cartan::{CartanData, CartanType, Weight};
use crate::lweight::{LFactor, LWeight};

use super::ops::{flip_sl3, spectral_shift};
use super::{qi, qmq, AlgebraKind, Direction, Gen, Label, Param, RepModule, SparseMatrix, Truncation, Window};

fn a1() -> CartanData {
    CartanData::new(CartanType::A(1))
}

fn a2() -> CartanData {
    CartanData::new(CartanType::A(2))
}

fn q(e: i64) -> QRat {
    QRat::q_pow(e)
}

fn sl2_basis(top: i64) -> Vec<Label> {
    (0..=top).map(|j| vec![j]).collect()
}

fn sl3_basis(top: i64) -> Vec<Label> {
    (0..=top).flat_map(|n| (0..=n).map(move |np| vec![n, np])).collect()
}

fn rs(w: &Window) -> impl Iterator<Item = i64> {
    -w.r..=w.r
}

fn trunc(depth: Option<u32>, extremal: Weight, window: Window) -> Truncation {
    Truncation { depth, extremal, direction: Direction::Highest, window }
}

/// `x̃⁻ = κ(target) · x⁻` for modules with invertible `κ_i = k_i^{-1}`.
fn tilde_from_drinfeld(m: &mut RepModule, i: usize, r: i64) {
    let x = m.actions[&Gen::XMinus(i, r)].clone();
    let kappa = m.action(&Gen::KInv(i)).unwrap();
    m.set_action(Gen::XTildeMinus(i, r), kappa.compose(&x));
}

fn set_kappa_from_weights(m: &mut RepModule) {
    for i in m.cartan.nodes() {
        let vals = (0..m.dim()).map(|b| q(-m.k_exponent(i, b))).collect();
        m.set_kappa(i, vals);
    }
}

/// KR module of `U_q(L sl2)` with highest monomial `Y_{q^{-2k+1+s}} ⋯ Y_{q^{-1+s}}`.
pub fn build_sl2_kr(k: u32, s: i64, window: Window) -> RepModule {
    let k = k as i64;
    let basis = sl2_basis(k);
    let weights = basis.iter().map(|l| vec![k - 2 * l[0]]).collect();
    let mut m = RepModule::new(a1(), AlgebraKind::Asymptotic(Param::Q), basis, weights, trunc(None, vec![k], window));
    let exists = |l: &[i64]| (0..=k).contains(&l[0]);
    for r in rs(&window) {
        m.fill(Gen::XPlus(1, r), &exists, |l| (vec![l[0] - 1], q(2 * r * (1 - l[0]))));
        m.fill(Gen::XMinus(1, r), &exists, |l| {
            let j = l[0];
            (vec![j + 1], &(&q(-2 * r * j) * &qi(j + 1)) * &qi(k - j))
        });
        tilde_from_drinfeld(&mut m, 1, r);
    }
    set_kappa_from_weights(&mut m);
    let fr = m.basis.iter().map(|l| LWeight(vec![LFactor::new(QRat::one(), &[-2 * k, 2], &[-2 * l[0] + 2, -2 * l[0]])])).collect();
    m.set_phi_tilde(fr);
    spectral_shift(&m, s).expect("asymptotic module")
}

/// The limit `k → ∞` of the sl2 KR modules, truncated to `v_0..v_D`; `κ_1 = 0`.
pub fn build_sl2_vinf(depth: u32, window: Window) -> RepModule {
    let basis = sl2_basis(depth as i64);
    let weights = basis.iter().map(|l| vec![-2 * l[0]]).collect();
    let mut m = RepModule::new(a1(), AlgebraKind::Asymptotic(Param::Q), basis, weights, trunc(Some(depth), vec![0], window));
    let exists = |l: &[i64]| l[0] >= 0;
    let c = qmq(1).inv().unwrap();
    for r in rs(&window) {
        m.fill(Gen::XPlus(1, r), &exists, |l| (vec![l[0] - 1], q(2 * r * (1 - l[0]))));
        m.fill(Gen::XTildeMinus(1, r), &exists, |l| {
            let j = l[0];
            (vec![j + 1], &(&q(-2 * r * j + j + 2) * &qi(j + 1)) * &c)
        });
    }
    m.set_kappa(1, vec![QRat::zero(); m.dim()]);
    let fr = m.basis.iter().map(|l| LWeight(vec![LFactor::new(QRat::one(), &[2], &[-2 * l[0] + 2, -2 * l[0]])])).collect();
    m.set_phi_tilde(fr);
    m
}

fn sl3_weight(k: i64, l: &[i64]) -> Weight {
    vec![k - 2 * l[0] + l[1], l[0] - 2 * l[1]]
}

fn sl3_exists(k: Option<i64>) -> impl Fn(&[i64]) -> bool {
    move |l: &[i64]| 0 <= l[1] && l[1] <= l[0] && k.map_or(true, |k| l[0] <= k)
}

fn sl3_xplus(m: &mut RepModule, exists: &dyn Fn(&[i64]) -> bool, r: i64) {
    m.fill(Gen::XPlus(1, r), exists, |l| (vec![l[0] - 1, l[1]], &q(r * (2 - 2 * l[0])) * &qi(l[0] - l[1])));
    m.fill(Gen::XPlus(2, r), exists, |l| (vec![l[0], l[1] - 1], q(r * (3 - 2 * l[1]))));
}

/// KR module of `U_q(L sl3)` with highest monomial `Y_{i,q^{-1}} ⋯ Y_{i,q^{-2k+1}}`,
/// then spectrally shifted by `q^s`. Node 2 is obtained by the diagram flip.
pub fn build_sl3_kr(k: u32, i: usize, s: i64, window: Window) -> RepModule {
    let k = k as i64;
    let basis = sl3_basis(k);
    let weights = basis.iter().map(|l| sl3_weight(k, l)).collect();
    let mut m = RepModule::new(a2(), AlgebraKind::Asymptotic(Param::Q), basis, weights, trunc(None, vec![k, 0], window));
    let exists = sl3_exists(Some(k));
    for r in rs(&window) {
        sl3_xplus(&mut m, &exists, r);
        m.fill(Gen::XMinus(1, r), &exists, |l| (vec![l[0] + 1, l[1]], &q(-2 * l[0] * r) * &qi(k - l[0])));
        m.fill(Gen::XMinus(2, r), &exists, |l| {
            let (n, np) = (l[0], l[1]);
            (vec![n, np + 1], &(&q(r * (1 - 2 * np)) * &qi(np + 1)) * &qi(n - np))
        });
        tilde_from_drinfeld(&mut m, 1, r);
        tilde_from_drinfeld(&mut m, 2, r);
    }
    set_kappa_from_weights(&mut m);
    let fr = m
        .basis
        .iter()
        .map(|l| {
            let (n, np) = (l[0], l[1]);
            LWeight(vec![
                LFactor::new(QRat::one(), &[-2 * k, -2 * np + 2], &[-2 * n, -2 * n + 2]),
                LFactor::new(QRat::one(), &[3, -2 * n + 1], &[-2 * np + 1, -2 * np + 3]),
            ])
        })
        .collect();
    m.set_phi_tilde(fr);
    let m = if i == 2 { flip_sl3(&m) } else { m };
    spectral_shift(&m, s).expect("asymptotic module")
}

/// The limit of the sl3 KR modules (node `i`), truncated to `n ≤ D`.
pub fn build_sl3_vinf(depth: u32, i: usize, window: Window) -> RepModule {
    let d = depth as i64;
    let basis = sl3_basis(d);
    let weights = basis.iter().map(|l| sl3_weight(0, l)).collect();
    let mut m = RepModule::new(a2(), AlgebraKind::Asymptotic(Param::Q), basis, weights, trunc(Some(depth), vec![0, 0], window));
    let exists = sl3_exists(None);
    let c = qmq(1).inv().unwrap();
    for r in rs(&window) {
        sl3_xplus(&mut m, &exists, r);
        m.fill(Gen::XTildeMinus(1, r), &exists, |l| {
            let (n, np) = (l[0], l[1]);
            (vec![n + 1, np], &q(n - np + 2 - 2 * n * r) * &c)
        });
        m.fill(Gen::XTildeMinus(2, r), &exists, |l| {
            let (n, np) = (l[0], l[1]);
            (vec![n, np + 1], &(&q(2 * np - n + 2 + r * (1 - 2 * np)) * &qi(np + 1)) * &qi(n - np))
        });
    }
    m.set_kappa(1, vec![QRat::zero(); m.dim()]);
    let k2 = m.basis.iter().map(|l| q(2 * l[1] - l[0])).collect();
    m.set_kappa(2, k2);
    let fr = m
        .basis
        .iter()
        .map(|l| {
            let (n, np) = (l[0], l[1]);
            LWeight(vec![
                LFactor::new(QRat::one(), &[-2 * np + 2], &[-2 * n, -2 * n + 2]),
                LFactor::new(QRat::one(), &[3, -2 * n + 1], &[-2 * np + 1, -2 * np + 3]),
            ])
        })
        .collect();
    m.set_phi_tilde(fr);
    if i == 2 {
        flip_sl3(&m)
    } else {
        m
    }
}

fn borel_lweights(m: &mut RepModule, fr: impl Fn(&[i64]) -> LWeight) {
    let lws = (0..m.dim()).map(|b| fr(&m.basis[b]).scale_by_weight(&m.weights[b])).collect();
    m.diag = Some(lws);
}

/// The Borel module `L⁺_{1,1}` of sl2 in the basis `w*_j`, truncated to `j ≤ D`.
pub fn build_sl2_lplus(depth: u32, window: Window) -> RepModule {
    let basis = sl2_basis(depth as i64);
    let weights = basis.iter().map(|l| vec![-2 * l[0]]).collect();
    let mut m = RepModule::new(a1(), AlgebraKind::Borel, basis, weights, trunc(Some(depth), vec![0], window));
    let exists = |l: &[i64]| l[0] >= 0;
    let c = qmq(1).inv().unwrap();
    m.fill(Gen::E(1), &exists, |l| (vec![l[0] - 1], QRat::one()));
    m.fill(Gen::E(0), &exists, |l| {
        let j = l[0];
        (vec![j + 1], -(&(&q(j + 2) * &qi(j + 1)) * &c))
    });
    borel_lweights(&mut m, |_| LWeight(vec![LFactor::new(QRat::one(), &[0], &[])]));
    m
}

/// The Borel module `L⁺_{i,1}` of sl3 in the basis `w*_{n,n'}`, truncated to `n ≤ D`.
pub fn build_sl3_lplus(depth: u32, i: usize, window: Window) -> RepModule {
    let basis = sl3_basis(depth as i64);
    let weights = basis.iter().map(|l| sl3_weight(0, l)).collect();
    let mut m = RepModule::new(a2(), AlgebraKind::Borel, basis, weights, trunc(Some(depth), vec![0, 0], window));
    let exists = sl3_exists(None);
    let c = qmq(1).inv().unwrap();
    m.fill(Gen::E(1), &exists, |l| (vec![l[0] - 1, l[1]], qi(l[0] - l[1])));
    m.fill(Gen::E(2), &exists, |l| (vec![l[0], l[1] - 1], QRat::one()));
    m.fill(Gen::E(0), &exists, |l| {
        let (n, np) = (l[0], l[1]);
        (vec![n + 1, np + 1], -(&(&qi(np + 1) * &q(n + 4)) * &c))
    });
    borel_lweights(&mut m, |_| LWeight(vec![LFactor::new(QRat::one(), &[0], &[]), LFactor::one()]));
    if i == 2 {
        flip_sl3(&m)
    } else {
        m
    }
}

fn phi_tilde_modes(m: &mut RepModule, fr: &LWeight) {
    let mw = m.truncation.window.m as usize;
    for i in m.cartan.nodes() {
        let s = fr.component(i).expand(mw);
        for k in 0..=mw {
            m.set_action(Gen::PhiTildePlus(i, k as u32), SparseMatrix::diagonal(vec![s.coeff(k).clone(); m.dim()]));
        }
    }
}

/// `W∞` for sl2: the `L⁺` Borel module together with the convergent halves
/// `x⁺_{1,r}` (`r ≥ 0`), `x̃⁻_{1,p}`, `x⁻_{1,p}` (`p ≥ 1`) and `φ̃⁺_1(z) = 1 - z`.
pub fn build_sl2_winf(depth: u32, window: Window) -> RepModule {
    let mut m = build_sl2_lplus(depth, window);
    let exists = |l: &[i64]| l[0] >= 0;
    let c = qmq(1).inv().unwrap();
    for r in 0..=window.r {
        m.fill(Gen::XPlus(1, r), &exists, |l| (vec![l[0] - 1], if r == 0 { QRat::one() } else { QRat::zero() }));
    }
    for p in 1..=window.r {
        let coeff = |l: &[i64], shift: i64| {
            let j = l[0];
            let v = if p == 1 { -(&(&q(shift + 2) * &qi(j + 1)) * &c) } else { QRat::zero() };
            (vec![j + 1], v)
        };
        m.fill(Gen::XTildeMinus(1, p), &exists, |l| coeff(l, l[0]));
        m.fill(Gen::XMinus(1, p), &exists, |l| coeff(l, -l[0] - 2));
    }
    phi_tilde_modes(&mut m, &LWeight(vec![LFactor::new(QRat::one(), &[0], &[])]));
    m
}

/// `W∞` for sl3 (node 1): the `L⁺` Borel module with the convergent
/// `x̃⁺_{i,m}` (`m ≥ 0`), `x̃⁻_{i,p}` (`p ≥ 1`) and `φ̃⁺ = (1 - z, 1)`.
pub fn build_sl3_winf(depth: u32, window: Window) -> RepModule {
    let mut m = build_sl3_lplus(depth, 1, window);
    let exists = sl3_exists(None);
    let c = qmq(1).inv().unwrap();
    let delta = |b: bool, v: QRat| if b { v } else { QRat::zero() };
    for r in 0..=window.r {
        m.fill(Gen::XPlus(1, r), &exists, |l| (vec![l[0] - 1, l[1]], delta(r == 0, qi(l[0] - l[1]))));
        m.fill(Gen::XPlus(2, r), &exists, |l| (vec![l[0], l[1] - 1], delta(r == 0, QRat::one())));
    }
    for p in 1..=window.r {
        m.fill(Gen::XTildeMinus(1, p), &exists, |l| {
            (vec![l[0] + 1, l[1]], delta(p == 1, -(&q(l[0] - l[1] + 2) * &c)))
        });
        m.set_action(Gen::XTildeMinus(2, p), SparseMatrix::zero(m.dim()));
    }
    phi_tilde_modes(&mut m, &LWeight(vec![LFactor::new(QRat::one(), &[0], &[]), LFactor::one()]));
    m
}
