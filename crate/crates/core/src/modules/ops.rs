//! Operations producing new modules: spectral shifts, the σ twist, passage
//! to the Borel subalgebra, graded duals and sl2 tensor products.

use std::collections::{BTreeMap, BTreeSet};

use crate::arith::QRat;
use crate::cartan::{CartanType, Weight};
use crate::error::Error;
use crate::lweight::LWeight;

use super::{qmq, AlgebraKind, Column, Direction, Gen, Param, RepModule, SparseMatrix, Truncation};

fn require_asymptotic(m: &RepModule) -> Result<Param, Error> {
    match m.kind {
        AlgebraKind::Asymptotic(p) => Ok(p),
        AlgebraKind::Borel => Err(Error::InvalidArgument("asymptotic module required".into())),
    }
}

fn require_borel(m: &RepModule) -> Result<(), Error> {
    match m.kind {
        AlgebraKind::Borel => Ok(()),
        _ => Err(Error::InvalidArgument("Borel module required".into())),
    }
}

fn require_type_a(m: &RepModule, ranks: &[usize]) -> Result<(), Error> {
    match m.cartan.cartan_type() {
        CartanType::A(n) if ranks.contains(&n) => Ok(()),
        _ => Err(Error::UnsupportedType(m.cartan.label())),
    }
}

fn table(m: &RepModule, g: Gen) -> Result<&SparseMatrix, Error> {
    m.action_ref(&g).ok_or_else(|| Error::InvalidArgument(format!("module has no {g:?} table")))
}

/// Twist by `τ_a`, `a = q^s`: `x_{i,r} ↦ a^r x_{i,r}`, `φ_{i,±m} ↦ a^{±m} φ_{i,±m}`, `e_0 ↦ a e_0`.
pub fn spectral_shift(m: &RepModule, s: i64) -> Result<RepModule, Error> {
    let mut out = m.clone();
    for (g, t) in out.actions.iter_mut() {
        let e = match *g {
            Gen::XPlus(_, r) | Gen::XTildeMinus(_, r) | Gen::XMinus(_, r) => s * r,
            Gen::PhiTildePlus(_, k) | Gen::PhiPlus(_, k) => s * k as i64,
            Gen::PhiTildeMinus(_, k) => -s * k as i64,
            Gen::E(0) => s,
            _ => 0,
        };
        if e != 0 {
            *t = t.map_coeffs(|c| c.shift(e));
        }
    }
    if let Some(d) = out.diag.as_mut() {
        for w in d.iter_mut() {
            *w = w.shift_spectral(s);
        }
    }
    Ok(out)
}

/// Exchanges nodes 1 and 2 of an sl3 module (the Dynkin diagram involution).
pub(crate) fn flip_sl3(m: &RepModule) -> RepModule {
    let sw = |i: usize| match i {
        1 => 2,
        2 => 1,
        j => j,
    };
    let swap_w = |w: &Weight| vec![w[1], w[0]];
    let mut out = m.clone();
    out.actions = m.actions.iter().map(|(g, t)| (g.with_node(sw(g.node())), t.clone())).collect();
    out.weights = m.weights.iter().map(swap_w).collect();
    out.diag = m.diag.as_ref().map(|d| d.iter().map(|w| LWeight(vec![w.0[1].clone(), w.0[0].clone()])).collect());
    out.truncation.extremal = swap_w(&m.truncation.extremal);
    out
}

/// The σ twist: a module over `Ũ_p` becomes a module over `Ũ_{p^{-1}}` with
/// `x̃⁺ ↦ x̃⁻`-table, `x̃⁻ ↦ p_i^{-2}·x̃⁺`-table (written in the new parameter),
/// `φ̃` and `κ` unchanged, and all coefficients rewritten in the new parameter.
pub fn twist_sigma(m: &RepModule) -> Result<RepModule, Error> {
    let p = require_asymptotic(m)?;
    let mut out = m.clone();
    out.kind = AlgebraKind::Asymptotic(p.flip());
    out.actions = BTreeMap::new();
    for (g, t) in &m.actions {
        let sub = t.map_coeffs(|c| c.invert_q());
        match *g {
            Gen::XPlus(i, r) => {
                let c = QRat::q_pow(2 * m.cartan.d(i));
                out.actions.insert(Gen::XTildeMinus(i, r), sub.scale(&c));
            }
            Gen::XTildeMinus(i, r) => {
                out.actions.insert(Gen::XPlus(i, r), sub);
            }
            Gen::XMinus(..) | Gen::PhiPlus(..) => {}
            _ => {
                out.actions.insert(*g, sub);
            }
        }
    }
    out.weights = m.weights.iter().map(|w| w.iter().map(|x| -x).collect()).collect();
    out.diag = m.diag.as_ref().map(|d| d.iter().map(|w| w.invert_q()).collect());
    out.truncation = flipped(&m.truncation, &[0; 0]);
    Ok(out)
}

/// Negates the extremal weight (then adds `shift`) and swaps the direction.
fn flipped(t: &Truncation, shift: &[i64]) -> Truncation {
    let mut ext: Weight = t.extremal.iter().map(|x| -x).collect();
    for (e, s) in ext.iter_mut().zip(shift) {
        *e += s;
    }
    let direction = match t.direction {
        Direction::Highest => Direction::Lowest,
        Direction::Lowest => Direction::Highest,
    };
    Truncation { depth: t.depth, extremal: ext, direction, window: t.window }
}

/// The Borel module attached to a Q-graded asymptotic module.
///
/// Over `Ũ_q`: `e_i = x̃⁺_{i,0}`, `e_0` the commutator expression in `x̃⁻`, and
/// `k_i` from the grading plus `shift`. Over `Ũ_{q^{-1}}`: the σ-images
/// `e_i = q_i^2 x̃⁻_{i,0}`, `e_0 = σ(e_0)`, with the grading negated.
pub fn borel_from_asymptotic(m: &RepModule, shift: &[i64]) -> Result<RepModule, Error> {
    let p = require_asymptotic(m)?;
    require_type_a(m, &[1, 2])?;
    let n = m.cartan.rank();
    if shift.len() != n {
        return Err(Error::InvalidArgument("shift has the wrong length".into()));
    }
    let get = |g: Gen| -> Result<SparseMatrix, Error> {
        let t = table(m, g)?;
        Ok(match p {
            Param::Q => t.clone(),
            Param::QInv => t.map_coeffs(|c| c.invert_q()),
        })
    };
    // σ exchanges the roles of x̃⁺ and x̃⁻.
    let (raise, lower): (fn(usize, i64) -> Gen, fn(usize, i64) -> Gen) = match p {
        Param::Q => (Gen::XPlus, Gen::XTildeMinus),
        Param::QInv => (Gen::XTildeMinus, Gen::XPlus),
    };
    let mut out = m.clone();
    out.kind = AlgebraKind::Borel;
    out.actions = BTreeMap::new();
    for i in m.cartan.nodes() {
        let mut e = get(raise(i, 0))?;
        if p == Param::QInv {
            e = e.scale(&QRat::q_pow(2 * m.cartan.d(i)));
        }
        out.actions.insert(Gen::E(i), e);
    }
    let e0 = if n == 1 {
        get(lower(1, 1))?
    } else {
        let (a, b) = (get(lower(2, 1))?, get(lower(1, 0))?);
        a.compose(&b).combine(&QRat::one(), &b.compose(&a), &-QRat::q_pow(1))
    };
    out.actions.insert(Gen::E(0), e0);
    let sign = if p == Param::Q { 1 } else { -1 };
    out.weights = m.weights.iter().map(|w| w.iter().zip(shift).map(|(x, s)| sign * x + s).collect()).collect();
    out.diag = m.diag.as_ref().map(|d| {
        d.iter()
            .zip(&out.weights)
            .map(|(f, w)| match p {
                Param::Q => f.scale_by_weight(w),
                Param::QInv => f.invert_q().scale_by_weight(w),
            })
            .collect()
    });
    out.truncation = match p {
        Param::Q => {
            let mut t = m.truncation.clone();
            t.extremal = t.extremal.iter().zip(shift).map(|(x, s)| x + s).collect();
            t
        }
        Param::QInv => flipped(&m.truncation, shift),
    };
    Ok(out)
}

/// Graded dual with `(x u)(v) = u(S^{-1}(x) v)`, `S^{-1}(e_i) = -e_i k_i^{-1}`.
///
/// The dual basis keeps the labels; weights are negated. A dual column is
/// truncated when the weight space it reads from is incomplete.
pub fn dualize(m: &RepModule) -> Result<RepModule, Error> {
    require_borel(m)?;
    let dim = m.dim();
    let mut out = m.clone();
    out.actions = BTreeMap::new();
    out.weights = m.weights.iter().map(|w| w.iter().map(|x| -x).collect()).collect();
    out.diag = None;
    out.truncation = flipped(&m.truncation, &vec![0; m.cartan.rank()]);
    for i in 0..=m.cartan.rank() {
        let e = table(m, Gen::E(i))?;
        let deg = Gen::E(i).degree(&m.cartan);
        let mut bad: BTreeSet<Weight> = BTreeSet::new();
        let mut cols: Vec<Vec<(usize, QRat)>> = vec![Vec::new(); dim];
        for (b, col) in e.cols.iter().enumerate() {
            match col {
                Column::Known(v) => {
                    let kinv = QRat::q_pow(-m.k_exponent(i, b));
                    for (a, c) in v {
                        cols[*a].push((b, -(&kinv * c)));
                    }
                }
                Column::Truncated => {
                    bad.insert(m.weights[b].clone());
                }
            }
        }
        let cols = cols
            .into_iter()
            .enumerate()
            .map(|(a, mut v)| {
                let src: Weight = m.weights[a].iter().zip(&deg).map(|(x, d)| x - d).collect();
                if bad.contains(&src) || !m.weight_complete(&src) {
                    Column::Truncated
                } else {
                    v.sort_by_key(|(b, _)| *b);
                    Column::Known(v)
                }
            })
            .collect();
        out.actions.insert(Gen::E(i), SparseMatrix { cols });
    }
    Ok(out)
}

fn as_borel(m: &RepModule) -> Result<RepModule, Error> {
    match m.kind {
        AlgebraKind::Borel => Ok(m.clone()),
        AlgebraKind::Asymptotic(_) => borel_from_asymptotic(m, &vec![0; m.cartan.rank()]),
    }
}

/// Tensor product of two sl2 Borel modules through `Δ(e_i) = e_i ⊗ 1 + k_i ⊗ e_i`,
/// with `x⁻_{1,1} = k_1 e_0` and `φ⁺_{1,1} = (q - q^{-1})[e_1, k_1 e_0]` stored.
/// Asymptotic inputs are first turned into Borel modules with zero shift.
pub fn tensor_sl2(a: &RepModule, b: &RepModule) -> Result<RepModule, Error> {
    let (a, b) = (as_borel(a)?, as_borel(b)?);
    require_type_a(&a, &[1])?;
    require_type_a(&b, &[1])?;
    let (da, db) = (a.dim(), b.dim());
    let idx = |x: usize, y: usize| x * db + y;
    let mut basis = Vec::with_capacity(da * db);
    let mut weights = Vec::with_capacity(da * db);
    for x in 0..da {
        for y in 0..db {
            basis.push([a.basis[x].clone(), b.basis[y].clone()].concat());
            weights.push(a.weights[x].iter().zip(&b.weights[y]).map(|(u, v)| u + v).collect());
        }
    }
    let depth = match (a.truncation.depth, b.truncation.depth) {
        (None, None) => None,
        (x, y) => Some(x.unwrap_or(u32::MAX).min(y.unwrap_or(u32::MAX))),
    };
    if a.truncation.direction != b.truncation.direction {
        return Err(Error::Incompatible("truncations point in opposite directions".into()));
    }
    let trunc = Truncation {
        depth,
        extremal: a.truncation.extremal.iter().zip(&b.truncation.extremal).map(|(u, v)| u + v).collect(),
        direction: a.truncation.direction,
        window: super::Window {
            r: a.truncation.window.r.min(b.truncation.window.r),
            m: a.truncation.window.m.min(b.truncation.window.m),
        },
    };
    let mut out = RepModule::new(a.cartan.clone(), AlgebraKind::Borel, basis, weights, trunc);
    for i in 0..=1 {
        let (ea, eb) = (table(&a, Gen::E(i))?, table(&b, Gen::E(i))?);
        let mut cols = Vec::with_capacity(da * db);
        for x in 0..da {
            for y in 0..db {
                let col = match (ea.column(x), eb.column(y)) {
                    (Column::Known(u), Column::Known(v)) => {
                        let kx = QRat::q_pow(a.k_exponent(i, x));
                        let mut acc: Vec<(usize, QRat)> = u.iter().map(|(x2, c)| (idx(*x2, y), c.clone())).collect();
                        acc.extend(v.iter().map(|(y2, c)| (idx(x, *y2), &kx * c)));
                        acc.sort_by_key(|(t, _)| *t);
                        let mut merged: Vec<(usize, QRat)> = Vec::new();
                        for (t, c) in acc {
                            match merged.last_mut() {
                                Some((t0, c0)) if *t0 == t => *c0 = &*c0 + &c,
                                _ => merged.push((t, c)),
                            }
                        }
                        merged.retain(|(_, c)| !c.is_zero());
                        Column::Known(merged)
                    }
                    _ => Column::Truncated,
                };
                cols.push(col);
            }
        }
        out.set_action(Gen::E(i), SparseMatrix { cols });
    }
    let xm = out.action(&Gen::K(1)).unwrap().compose(&out.actions[&Gen::E(0)]);
    let phi = out.actions[&Gen::E(1)].q_commutator(&xm, &QRat::one()).scale(&qmq(1));
    out.set_action(Gen::XMinus(1, 1), xm);
    out.set_action(Gen::PhiPlus(1, 1), phi);
    Ok(out)
}

/// Drinfeld generators of an sl2 Borel module from its Chevalley tables:
/// `x⁺_{1,0} = e_1`, `x⁻_{1,1} = k_1 e_0`, `φ⁺_{1,m+1} = (q - q^{-1})[x⁺_{1,m}, x⁻_{1,1}]`,
/// `x⁺_{1,m+1} = [k_1^{-1} φ⁺_{1,1}, x⁺_{1,m}] / (q^2 - q^{-2})`, for `m ≤ order`.
pub fn sl2_drinfeld_from_chevalley(m: &RepModule, order: u32) -> Result<RepModule, Error> {
    require_borel(m)?;
    require_type_a(m, &[1])?;
    let mut out = m.clone();
    let xm = m.action(&Gen::K(1)).unwrap().compose(table(m, Gen::E(0))?);
    let mut xp = table(m, Gen::E(1))?.clone();
    let c = qmq(1);
    let c2 = qmq(2).inv()?;
    let mut h = None;
    for k in 0..=order {
        let phi = xp.q_commutator(&xm, &QRat::one()).scale(&c);
        out.set_action(Gen::XPlus(1, k as i64), xp.clone());
        if k == 0 {
            h = Some(m.action(&Gen::KInv(1)).unwrap().compose(&phi));
        }
        out.set_action(Gen::PhiPlus(1, k + 1), phi);
        xp = h.as_ref().unwrap().q_commutator(&xp, &QRat::one()).scale(&c2);
    }
    out.set_action(Gen::XMinus(1, 1), xm);
    Ok(out)
}
