//! The closed character formula for the fundamental positive/negative
//! prefundamental modules, truncated by height.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::gbinom;
use crate::cartan::{CartanData, Weight};
use crate::error::Error;
use crate::modules::RepModule;
use crate::qchar::Char;

/// Which summation index the weight exponent carries: `[ᾱ_j]^{-k N_k^{(j)}}`
/// (the default) or the literal `[ᾱ_j]^{-k N_k^{(i)}}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExponentReading {
    #[default]
    SummedIndex,
    OuterIndex,
}

#[derive(Clone, Debug)]
pub struct FormulaParams {
    pub cd: CartanData,
    pub i: usize,
    pub depth: u32,
    pub reading: ExponentReading,
}

impl FormulaParams {
    pub fn new(cd: CartanData, i: usize, depth: u32) -> Self {
        FormulaParams { cd, i, depth, reading: ExponentReading::default() }
    }
}

/// One summand of the numerator: the nonzero `N_k^{(j)}`, the weight in
/// root coordinates (`-Σ` of simple-root multiplicities) and the coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumeratorTerm {
    pub n: Vec<(usize, u32, u32)>,
    pub coords: Vec<i64>,
    pub coeff: BigInt,
}

/// All `N` with `Σ_{j,k} k N_k^{(j)} = h`, as sparse lists of `(j, k, N)`.
fn tuples_of_height(rank: usize, h: u32) -> Vec<Vec<(usize, u32, u32)>> {
    // variables ordered by (j, k); recursion over the variable index
    let vars: Vec<(usize, u32)> = (1..=rank).flat_map(|j| (1..=h.max(1)).map(move |k| (j, k))).collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(vars: &[(usize, u32)], rem: u32, cur: &mut Vec<(usize, u32, u32)>, out: &mut Vec<Vec<(usize, u32, u32)>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        let Some((&(j, k), rest)) = vars.split_first() else { return };
        for n in (0..=rem / k).rev() {
            if n > 0 {
                cur.push((j, k, n));
            }
            go(rest, rem - n * k, cur, out);
            if n > 0 {
                cur.pop();
            }
        }
    }
    go(&vars, h, &mut cur, &mut out);
    out
}

fn term(p: &FormulaParams, n: &[(usize, u32, u32)]) -> Result<NumeratorTerm, Error> {
    let cd = &p.cd;
    let r = |j: usize| cd.d(j);
    let mut coeff = BigInt::one();
    for &(j, k, nk) in n {
        // N_k^{(j)} + δ_ij k - Σ_{h,l} N_l^{(h)} r_j C_jh min(k/r_h, l/r_j)
        let mut top = BigRational::from_integer(BigInt::from(nk) + if j == p.i { BigInt::from(k) } else { BigInt::zero() });
        for &(h, l, nl) in n {
            let a = BigRational::new(k.into(), r(h).into());
            let b = BigRational::new(l.into(), r(j).into());
            let mn = if a < b { a } else { b };
            top -= BigRational::from_integer(BigInt::from(nl) * r(j) * cd.c(j, h)) * mn;
        }
        if !top.is_integer() {
            return Err(Error::FormulaConvention(format!("binomial argument {top} at j={j}, k={k}")));
        }
        coeff *= gbinom(&top.to_integer(), &BigInt::from(nk))?;
    }
    let mut coords = vec![0i64; cd.rank()];
    for &(j, k, nk) in n {
        let target = match p.reading {
            ExponentReading::SummedIndex => j,
            ExponentReading::OuterIndex => {
                // [ᾱ_j]^{-k N_k^{(i)}} for every j: only N^{(i)} entries contribute, to all nodes
                if j != p.i {
                    continue;
                }
                for c in coords.iter_mut() {
                    *c -= (k * nk) as i64;
                }
                continue;
            }
        };
        coords[target - 1] -= (k * nk) as i64;
    }
    Ok(NumeratorTerm { n: n.to_vec(), coords, coeff })
}

/// Numerator summands of total height `≤ depth`, grouped by height.
pub fn numerator_terms(p: &FormulaParams) -> Result<Vec<NumeratorTerm>, Error> {
    p.cd.check_node(p.i)?;
    let slices: Vec<Result<Vec<NumeratorTerm>, Error>> = (0..=p.depth)
        .into_par_iter()
        .map(|h| tuples_of_height(p.cd.rank(), h).iter().map(|n| term(p, n)).collect())
        .collect();
    let mut out = Vec::new();
    for s in slices {
        out.extend(s?);
    }
    Ok(out)
}

fn height(c: &[i64]) -> i64 {
    -c.iter().sum::<i64>()
}

/// `Π_{α>0} (1 - [ᾱ]^{-1})^{-1}` expanded to height `depth`, in root coordinates.
fn denominator(cd: &CartanData, depth: u32) -> BTreeMap<Vec<i64>, BigInt> {
    let mut acc: BTreeMap<Vec<i64>, BigInt> = BTreeMap::from([(vec![0; cd.rank()], BigInt::one())]);
    for beta in cd.positive_roots() {
        let hb: i64 = beta.iter().sum();
        let mut next: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        for (w, c) in &acc {
            let mut t = w.clone();
            while height(&t) <= depth as i64 {
                *next.entry(t.clone()).or_insert_with(BigInt::zero) += c;
                for (x, b) in t.iter_mut().zip(beta) {
                    *x -= b;
                }
                if hb == 0 {
                    break;
                }
            }
        }
        acc = next;
    }
    acc
}

/// The formula's character, normalized to top weight `0`, truncated at height `depth`.
pub fn char_formula(p: &FormulaParams) -> Result<Char, Error> {
    let mut num: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
    for t in numerator_terms(p)? {
        *num.entry(t.coords).or_insert_with(BigInt::zero) += t.coeff;
    }
    let den = denominator(&p.cd, p.depth);
    let mut prod: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
    for (a, ca) in num.iter().filter(|(_, c)| !c.is_zero()) {
        for (b, cb) in &den {
            let w: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if height(&w) <= p.depth as i64 {
                *prod.entry(w).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
    }
    let mut terms: BTreeMap<Weight, i64> = BTreeMap::new();
    for (coords, c) in prod {
        if c.is_zero() {
            continue;
        }
        if c < BigInt::zero() {
            return Err(Error::NegativeMultiplicity(format!("{c} at root coordinates {coords:?}")));
        }
        let m = c.to_i64().ok_or_else(|| Error::InvalidArgument("multiplicity overflow".into()))?;
        terms.insert(p.cd.root_weight(&coords), m);
    }
    Ok(Char::new(p.cd.clone(), terms, Some(p.depth)))
}

/// A weight where formula and module disagree: `(weight, formula, module)`.
pub type Discrepancy = (Weight, i64, i64);

/// Compares the formula with the character of `m` up to height `p.depth`
/// below the module's top weight.
pub fn compare_formula_vs_module(p: &FormulaParams, m: &RepModule) -> Result<Option<Discrepancy>, Error> {
    let chi = m.char()?;
    let top = chi.top().ok_or(Error::NoUniqueTop)?;
    if let Some(d) = m.truncation().depth {
        if d < p.depth {
            return Err(Error::InvalidArgument(format!("module truncated at depth {d} < {}", p.depth)));
        }
    }
    let f = char_formula(p)?;
    let shifted: BTreeMap<Weight, i64> =
        f.terms().iter().map(|(w, c)| (w.iter().zip(&top).map(|(a, b)| a + b).collect(), *c)).collect();
    let f = Char::new(p.cd.clone(), shifted, f.depth());
    Ok(f.first_difference(&chi, &top, p.depth))
}
