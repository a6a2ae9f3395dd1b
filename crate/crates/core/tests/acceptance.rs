//! One line per acceptance criterion. All comparisons are exact; the only
//! pinned tolerances are the wall-clock budgets below.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use qloop::cartan::{CartanData, CartanType};
use qloop::formula::numerator_terms;
use qloop::lweight::{a_monomial, LFactor, LWeight, Monomial};
use qloop::modules::*;
use qloop::relations::{verify_asymptotic_relations, CheckWindow};
use qloop::{char_formula, char_inverse, limit_stabilize, FormulaParams, QChar, QRat};

const BUDGET_S: [u64; 9] = [1, 30, 1, 5, 10, 10, 1, 1, 1];

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn a(n: usize) -> CartanData {
    CartanData::new(CartanType::A(n))
}

fn c1_kr_qchar() -> Outcome {
    let cd = a(1);
    let m = build_sl2_kr(3, 0, Window::default());
    let got = m.qchar().map_err(|e| e.to_string())?.normalize().map_err(|e| e.to_string())?;
    let mut acc = Monomial::one();
    let mut want = vec![acc.eval(&cd)];
    for s in 0..3 {
        acc = acc.mul(&a_monomial(&cd, 1, -2 * s).unwrap().inv());
        want.push(acc.eval(&cd));
    }
    let want = QChar::from_terms(cd, want, None);
    ensure(got.terms() == want.terms(), || format!("got {got}, want {want}"))
}

fn c2_relations() -> Outcome {
    let cw = CheckWindow { r: 2, m: 3 };
    let w = Window::for_check(cw.r, cw.m);
    let mut finite: Vec<(String, RepModule)> = (0..=4).map(|k| (format!("A1 KR k={k}"), build_sl2_kr(k, 0, w))).collect();
    for k in 0..=3 {
        for i in 1..=2 {
            finite.push((format!("A2 KR i={i} k={k}"), build_sl3_kr(k, i, 0, w)));
        }
    }
    for (name, m) in &finite {
        let rep = verify_asymptotic_relations(m, cw).map_err(|e| e.to_string())?;
        ensure(rep.pass() && rep.skipped() == 0, || format!("{name}: {:?}, skipped {}", rep.violated_families(), rep.skipped()))?;
    }
    let guarded = [
        ("sl2 V∞", build_sl2_vinf(8, w)),
        ("sl3 V∞ i=1", build_sl3_vinf(8, 1, w)),
        ("sl3 V∞ i=2", build_sl3_vinf(8, 2, w)),
    ];
    for (name, m) in &guarded {
        let rep = verify_asymptotic_relations(m, cw).map_err(|e| e.to_string())?;
        ensure(rep.pass() && rep.skipped() > 0, || format!("{name}: {:?}", rep.violated_families()))?;
    }
    // twelve single-entry mutations, |r| ≤ R
    let muts: [(usize, Gen); 12] = [
        (1, Gen::XPlus(1, 0)),
        (1, Gen::XPlus(1, 2)),
        (1, Gen::XTildeMinus(1, -2)),
        (1, Gen::XTildeMinus(1, 1)),
        (1, Gen::PhiTildePlus(1, 1)),
        (1, Gen::PhiTildePlus(1, 3)),
        (1, Gen::PhiTildeMinus(1, 2)),
        (1, Gen::Kappa(1)),
        (2, Gen::XPlus(2, -1)),
        (2, Gen::XTildeMinus(1, 2)),
        (2, Gen::PhiTildePlus(2, 2)),
        (2, Gen::PhiTildeMinus(1, 0)),
    ];
    for (rank, g) in muts {
        let mut m = if rank == 1 { build_sl2_kr(3, 0, w) } else { build_sl3_kr(2, 1, 0, w) };
        let t = m.actions()[&g].clone();
        let (src, dst) = (0..m.dim())
            .flat_map(|s| (0..m.dim()).map(move |d| (s, d)))
            .find(|&(s, d)| t.entry(d, s).is_some_and(|c| !c.is_zero()))
            .ok_or_else(|| format!("{g:?} has no nonzero entry"))?;
        m.scale_entry(&g, src, dst, &QRat::q_pow(1)).map_err(|e| e.to_string())?;
        let rep = verify_asymptotic_relations(&m, cw).map_err(|e| e.to_string())?;
        ensure(!rep.pass(), || format!("mutation of {g:?} ({src}->{dst}) not detected"))?;
    }
    Ok(())
}

fn c3_kappa() -> Outcome {
    let w = Window::default();
    for (m, i) in [(build_sl2_vinf(8, w), 1), (build_sl3_vinf(8, 1, w), 1), (build_sl3_vinf(8, 2, w), 2)] {
        let r = verify_kappa_zero(&m, i).map_err(|e| e.to_string())?;
        ensure(r.pass, || format!("V∞ node {i}: {}", r.detail))?;
    }
    let mut finite: Vec<(RepModule, usize)> = (0..=4).map(|k| (build_sl2_kr(k, 0, w), 1)).collect();
    for k in 0..=3 {
        finite.push((build_sl3_kr(k, 1, 0, w), 1));
        finite.push((build_sl3_kr(k, 2, 0, w), 2));
    }
    for (m, i) in &finite {
        let r = verify_kappa_zero(m, *i).map_err(|e| e.to_string())?;
        ensure(!r.pass, || format!("κ_{i} reported zero on a KR module of dimension {}", m.dim()))?;
    }
    Ok(())
}

fn c4_plus_minus() -> Outcome {
    let w = Window::default();
    let pairs = [
        ("sl2", build_sl2_vinf(8, w), build_sl2_lplus(8, w)),
        ("sl3 i=1", build_sl3_vinf(6, 1, w), build_sl3_lplus(6, 1, w)),
        ("sl3 i=2", build_sl3_vinf(6, 2, w), build_sl3_lplus(6, 2, w)),
    ];
    for (name, minus, plus) in pairs {
        let (a, b) = (minus.char().map_err(|e| e.to_string())?, plus.char().map_err(|e| e.to_string())?);
        ensure(a.terms() == b.terms(), || format!("{name}: {a} vs {b}"))?;
    }
    Ok(())
}

fn c5_formula() -> Outcome {
    let w = Window::default();
    let f1 = char_formula(&FormulaParams::new(a(1), 1, 10)).map_err(|e| e.to_string())?;
    let m1 = build_sl2_vinf(10, w).char().map_err(|e| e.to_string())?;
    ensure(f1.terms() == m1.terms(), || format!("A1: {f1} vs {m1}"))?;
    let f2 = char_formula(&FormulaParams::new(a(2), 1, 6)).map_err(|e| e.to_string())?;
    let m2 = build_sl3_vinf(6, 1, w).char().map_err(|e| e.to_string())?;
    ensure(f2.terms() == m2.terms(), || format!("A2: {f2} vs {m2}"))?;
    ensure(f1.terms().values().chain(f2.terms().values()).all(|c| *c >= 0), || "negative multiplicity".into())?;
    let h2: BTreeMap<_, _> = numerator_terms(&FormulaParams::new(a(1), 1, 2))
        .map_err(|e| e.to_string())?
        .into_iter()
        .filter(|t| t.coords == vec![-2])
        .map(|t| (t.n, t.coeff))
        .collect();
    let want: BTreeMap<_, _> = [(vec![(1, 1, 2)], 1.into()), (vec![(1, 2, 1)], (-1).into())].into_iter().collect();
    ensure(h2 == want, || format!("height-2 numerator {h2:?}"))
}

fn c6_limits() -> Outcome {
    let w = Window::default();
    let run = |name: &str, seq: Vec<RepModule>, vinf: RepModule, d: u32| -> Outcome {
        let seq: Vec<QChar> = seq.iter().map(|m| m.qchar().and_then(|c| c.normalize())).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        let lim = limit_stabilize(&seq, d).map_err(|e| format!("{name}: {e}"))?;
        let v = vinf.qchar().and_then(|c| c.normalize()).and_then(|c| c.truncate(d)).map_err(|e| e.to_string())?;
        ensure(lim.terms() == v.terms(), || format!("{name}: limit {lim} vs V∞ {v}"))
    };
    run("A1", (5..=9).map(|k| build_sl2_kr(k, 0, w)).collect(), build_sl2_vinf(4, w), 4)?;
    run("A2", (4..=7).map(|k| build_sl3_kr(k, 1, 0, w)).collect(), build_sl3_vinf(3, 1, w), 3)
}

fn c7_duality() -> Outcome {
    let w = Window::default();
    let b = borel_from_asymptotic(&build_sl2_kr(2, 0, w), &[0]).map_err(|e| e.to_string())?;
    let low = (0..b.dim()).min_by_key(|&v| b.k_exponent(1, v)).unwrap();
    let psi_low = b.lweight_of(low).map_err(|e| e.to_string())?;
    let d = dualize(&b).map_err(|e| e.to_string())?;
    let dd = sl2_drinfeld_from_chevalley(&d, w.m).map_err(|e| e.to_string())?;
    let expected = psi_low.inv().map_err(|e| e.to_string())?;
    let chk = verify_highest_lweight(&dd, &expected, &b.basis()[low]).map_err(|e| e.to_string())?;
    ensure(chk.pass, || chk.detail.clone())?;
    let (cd, cb) = (d.char().map_err(|e| e.to_string())?, b.char().map_err(|e| e.to_string())?);
    ensure(cd == char_inverse(&cb), || format!("χ(dual) = {cd}, χ = {cb}"))
}

fn c8_tensor() -> Outcome {
    let w = Window::default();
    let (x, y) = (build_sl2_kr(1, 0, w), build_sl2_kr(1, -2, w));
    let t = tensor_sl2(&x, &y).map_err(|e| e.to_string())?;
    let top = |m: &RepModule| (0..m.dim()).max_by_key(|&v| m.weight_of(v)[0]).unwrap();
    let psi = x.lweight_of(top(&x)).unwrap().mul(&y.lweight_of(top(&y)).unwrap());
    let want = psi.component(1).expand(2).coeff(1).clone();
    let tt = top(&t);
    let got = t.actions()[&Gen::PhiPlus(1, 1)].entry(tt, tt);
    ensure(got.as_ref() == Some(&want), || format!("φ⁺_1 on top: {got:?}, expected {want}"))
}

fn c9_winf() -> Outcome {
    let m = build_sl2_winf(10, Window::default());
    let n = m.qchar().and_then(|c| c.normalize()).map_err(|e| e.to_string())?;
    let want: BTreeMap<LWeight, u64> =
        (0..=10).map(|j| (LWeight(vec![LFactor::constant(QRat::q_pow(-2 * j))]), 1)).collect();
    ensure(n.terms() == &want, || format!("normalized W∞ q-character {n}"))?;
    let top = m.lweight_of(m.index_of(&[0]).unwrap()).unwrap();
    ensure(top.component(1) == &LFactor::new(QRat::one(), &[0], &[]), || format!("top ℓ-weight {top}"))?;
    ensure(!n.is_a_inverse_expansion(), || "W∞ terms lie in the A⁻¹ monoid".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("A1 KR k=3 normalized q-character", c1_kr_qchar),
        ("relation suite and mutation detection", c2_relations),
        ("kappa degenerates on V-infinity only", c3_kappa),
        ("chi(L+) = chi(L-)", c4_plus_minus),
        ("closed character formula", c5_formula),
        ("limit stabilization of KR q-characters", c6_limits),
        ("duality inverts the l-weight", c7_duality),
        ("tensor highest l-weight", c8_tensor),
        ("W-infinity q-character", c9_winf),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let mut res = f();
        let dt = t0.elapsed();
        let budget = Duration::from_secs(BUDGET_S[n]);
        if res.is_ok() && dt > budget {
            res = Err(format!("over budget ({budget:?})"));
        }
        match res {
            Ok(()) => println!("criterion {}: PASS  {name}  [{:.2}s]", n + 1, dt.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}  [{:.2}s]  {e}", n + 1, dt.as_secs_f64());
            }
        }
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
