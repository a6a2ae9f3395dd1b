//! Finite-type Cartan data, weights in exponent form, positive roots.
//!
//! Nodes are labelled `1..=n` in every public function; `0` is reserved for
//! the affine node. `C[i][j] = <α_i^∨, α_j>` with Kac's numbering, and `d`
//! is the coprime positive symmetrizer (`d_i C_ij = d_j C_ji`).

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A weight `ω` with `ω(j) = q^{m_j}`, stored as the exponent vector `m`.
pub type Weight = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(usize),
    F4,
    G2,
}

impl CartanType {
    pub fn rank(&self) -> usize {
        match *self {
            CartanType::A(n) | CartanType::B(n) | CartanType::C(n) | CartanType::D(n) | CartanType::E(n) => n,
            CartanType::F4 => 4,
            CartanType::G2 => 2,
        }
    }

    pub fn parse(label: &str) -> Result<Self, Error> {
        let bad = || Error::UnsupportedType(label.to_string());
        let label = label.trim();
        let (head, tail) = label.split_at(label.char_indices().nth(1).map_or(label.len(), |(k, _)| k));
        let n: usize = tail.parse().map_err(|_| bad())?;
        let ty = match head.to_ascii_uppercase().as_str() {
            "A" if n >= 1 => CartanType::A(n),
            "B" if n >= 2 => CartanType::B(n),
            "C" if n >= 2 => CartanType::C(n),
            "D" if n >= 4 => CartanType::D(n),
            "E" if (6..=8).contains(&n) => CartanType::E(n),
            "F" if n == 4 => CartanType::F4,
            "G" if n == 2 => CartanType::G2,
            _ => return Err(bad()),
        };
        Ok(ty)
    }

    fn matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let link = |c: &mut Vec<Vec<i64>>, i: usize, j: usize| {
            c[i][j] = -1;
            c[j][i] = -1;
        };
        match *self {
            CartanType::A(_) | CartanType::B(_) | CartanType::C(_) => {
                for i in 0..n - 1 {
                    link(&mut c, i, i + 1);
                }
                if let CartanType::B(_) = self {
                    c[n - 1][n - 2] = -2;
                }
                if let CartanType::C(_) = self {
                    c[n - 2][n - 1] = -2;
                }
            }
            CartanType::D(_) => {
                for i in 0..n - 2 {
                    link(&mut c, i, i + 1);
                }
                link(&mut c, n - 3, n - 1);
            }
            CartanType::E(_) => {
                link(&mut c, 0, 2);
                link(&mut c, 1, 3);
                for i in 2..n - 1 {
                    link(&mut c, i, i + 1);
                }
            }
            CartanType::F4 => {
                link(&mut c, 0, 1);
                link(&mut c, 2, 3);
                c[1][2] = -2;
                c[2][1] = -1;
            }
            CartanType::G2 => {
                c[0][1] = -1;
                c[1][0] = -3;
            }
        }
        c
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CartanType::A(n) => write!(f, "A{n}"),
            CartanType::B(n) => write!(f, "B{n}"),
            CartanType::C(n) => write!(f, "C{n}"),
            CartanType::D(n) => write!(f, "D{n}"),
            CartanType::E(n) => write!(f, "E{n}"),
            CartanType::F4 => write!(f, "F4"),
            CartanType::G2 => write!(f, "G2"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanData {
    ty: CartanType,
    c: Vec<Vec<i64>>,
    d: Vec<i64>,
    positive_roots: Vec<Vec<i64>>,
}

fn symmetrizer(c: &[Vec<i64>]) -> Vec<i64> {
    let n = c.len();
    let mut d: Vec<Option<Ratio<i64>>> = vec![None; n];
    d[0] = Some(Ratio::from_integer(1));
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for j in 0..n {
            if c[i][j] != 0 && d[j].is_none() {
                d[j] = Some(d[i].unwrap() * Ratio::new(c[i][j], c[j][i]));
                queue.push_back(j);
            }
        }
    }
    let d: Vec<Ratio<i64>> = d.into_iter().map(|x| x.expect("connected Dynkin diagram")).collect();
    let lcm = d.iter().fold(1i64, |acc, x| num_integer::lcm(acc, *x.denom()));
    let ints: Vec<i64> = d.iter().map(|x| (x * lcm).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, x| num_integer::gcd(acc, *x));
    ints.into_iter().map(|x| x / g).collect()
}

impl CartanData {
    pub fn new(ty: CartanType) -> Self {
        let c = ty.matrix();
        let d = symmetrizer(&c);
        let positive_roots = enumerate_positive_roots(&c);
        CartanData { ty, c, d, positive_roots }
    }

    pub fn parse(label: &str) -> Result<Self, Error> {
        CartanType::parse(label).map(CartanData::new)
    }

    pub fn cartan_type(&self) -> CartanType {
        self.ty
    }

    pub fn label(&self) -> String {
        self.ty.to_string()
    }

    pub fn rank(&self) -> usize {
        self.c.len()
    }

    /// `C_ij`, 1-based.
    pub fn c(&self, i: usize, j: usize) -> i64 {
        self.c[i - 1][j - 1]
    }

    /// `d_i`, 1-based.
    pub fn d(&self, i: usize) -> i64 {
        self.d[i - 1]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.c
    }

    pub fn symmetrizers(&self) -> &[i64] {
        &self.d
    }

    pub fn nodes(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.rank()
    }

    pub fn check_node(&self, i: usize) -> Result<(), Error> {
        if i == 0 || i > self.rank() {
            Err(Error::IndexOutOfRange(format!("node {i} not in 1..={} for {}", self.rank(), self.ty)))
        } else {
            Ok(())
        }
    }

    /// Positive roots in the simple-root basis, sorted by height then lexicographically.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn highest_root(&self) -> &[i64] {
        self.positive_roots.last().unwrap()
    }

    /// The weight of `α_i`: `m_j = d_i C_ij`.
    pub fn simple_root_weight(&self, i: usize) -> Weight {
        (1..=self.rank()).map(|j| self.d(i) * self.c(i, j)).collect()
    }

    /// Weight of `Σ β_i α_i`.
    pub fn root_weight(&self, beta: &[i64]) -> Weight {
        let mut w = vec![0; self.rank()];
        for (i, b) in beta.iter().enumerate() {
            for (j, wj) in w.iter_mut().enumerate() {
                *wj += b * self.d[i] * self.c[i][j];
            }
        }
        w
    }

    /// The weight of `Y_i`: `m = d_i e_i`.
    pub fn fundamental_weight(&self, i: usize) -> Weight {
        let mut w = vec![0; self.rank()];
        w[i - 1] = self.d(i);
        w
    }

    /// Coordinates of a weight in the simple-root basis, when they are integers.
    pub fn root_coordinates(&self, w: &[i64]) -> Option<Vec<i64>> {
        let n = self.rank();
        // Solve B c = w with B = DC symmetric, by exact elimination.
        let mut a: Vec<Vec<Ratio<i64>>> = (0..n)
            .map(|i| {
                let mut row: Vec<Ratio<i64>> = (0..n).map(|j| Ratio::from_integer(self.d[j] * self.c[j][i])).collect();
                row.push(Ratio::from_integer(w[i]));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, piv);
            let p = a[col][col];
            for x in a[col].iter_mut() {
                *x /= p;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col];
                    for k in col..=n {
                        let v = a[col][k];
                        a[r][k] -= f * v;
                    }
                }
            }
        }
        a.iter().map(|row| row[n].is_integer().then(|| row[n].to_integer())).collect()
    }

    /// `ω ≤ λ`: returns `c ≥ 0` with `λ - ω = Σ c_i α_i`.
    pub fn weight_leq(&self, omega: &[i64], lambda: &[i64]) -> Option<Vec<i64>> {
        let diff: Vec<i64> = lambda.iter().zip(omega).map(|(l, o)| l - o).collect();
        self.root_coordinates(&diff).filter(|c| c.iter().all(|x| !x.is_negative()))
    }

    /// `Σ c_i` for `λ - ω = Σ c_i α_i` with `c ≥ 0`.
    pub fn height_below(&self, omega: &[i64], lambda: &[i64]) -> Option<i64> {
        self.weight_leq(omega, lambda).map(|c| c.iter().sum())
    }

    /// Affine Cartan matrix, node 0 first, for the untwisted affinization.
    pub fn affine_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let theta = self.highest_root();
        let d0 = *self.d.iter().max().unwrap();
        let mut a = vec![vec![0i64; n + 1]; n + 1];
        a[0][0] = 2;
        for j in 0..n {
            let pair: i64 = (0..n).map(|k| theta[k] * self.d[k] * self.c[k][j]).sum();
            a[0][j + 1] = -pair / d0;
            a[j + 1][0] = -(0..n).map(|k| theta[k] * self.c[j][k]).sum::<i64>();
            for k in 0..n {
                a[j + 1][k + 1] = self.c[j][k];
            }
        }
        a
    }

    /// Symmetrizers of the affine matrix (node 0 first).
    pub fn affine_symmetrizers(&self) -> Vec<i64> {
        let mut d = vec![*self.d.iter().max().unwrap()];
        d.extend_from_slice(&self.d);
        d
    }
}

fn enumerate_positive_roots(c: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = c.len();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(beta) = queue.pop_front() {
        for i in 0..n {
            let pairing: i64 = (0..n).map(|j| beta[j] * c[i][j]).sum();
            let mut r = beta.clone();
            r[i] -= pairing;
            if r != beta && r.iter().all(|x| *x >= 0) && seen.insert(r.clone()) {
                queue.push_back(r);
            }
        }
    }
    let mut roots: Vec<Vec<i64>> = seen.into_iter().collect();
    roots.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
    roots
}

#[derive(Serialize, Deserialize)]
struct CartanJson {
    label: String,
    n: usize,
    #[serde(rename = "C")]
    c: Vec<Vec<i64>>,
    d: Vec<i64>,
    positive_roots: Vec<Vec<i64>>,
}

impl Serialize for CartanData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CartanJson {
            label: self.label(),
            n: self.rank(),
            c: self.c.clone(),
            d: self.d.clone(),
            positive_roots: self.positive_roots.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CartanData {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let j = CartanJson::deserialize(de)?;
        let cd = CartanData::parse(&j.label).map_err(serde::de::Error::custom)?;
        if cd.c != j.c || cd.d != j.d {
            return Err(serde::de::Error::custom(format!("Cartan data does not match label {}", j.label)));
        }
        Ok(cd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        let cases = [
            ("A1", 1),
            ("A4", 10),
            ("B3", 9),
            ("C3", 9),
            ("D4", 12),
            ("D5", 20),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
            ("F4", 24),
            ("G2", 6),
        ];
        for (label, count) in cases {
            assert_eq!(CartanData::parse(label).unwrap().positive_roots().len(), count, "{label}");
        }
    }

    #[test]
    fn symmetrizers() {
        assert_eq!(CartanData::parse("B2").unwrap().symmetrizers(), &[2, 1]);
        assert_eq!(CartanData::parse("C3").unwrap().symmetrizers(), &[1, 1, 2]);
        assert_eq!(CartanData::parse("G2").unwrap().symmetrizers(), &[3, 1]);
        assert_eq!(CartanData::parse("F4").unwrap().symmetrizers(), &[1, 1, 2, 2]);
        assert_eq!(CartanData::parse("E6").unwrap().symmetrizers(), &[1; 6]);
    }

    #[test]
    fn b2_matrix_is_kac() {
        let cd = CartanData::parse("B2").unwrap();
        assert_eq!(cd.c(1, 2), -1);
        assert_eq!(cd.c(2, 1), -2);
    }

    #[test]
    fn simple_root_weights() {
        let a2 = CartanData::parse("A2").unwrap();
        assert_eq!(a2.simple_root_weight(1), vec![2, -1]);
        let b2 = CartanData::parse("B2").unwrap();
        assert_eq!(b2.simple_root_weight(2), vec![-2, 2]);
        assert_eq!(b2.simple_root_weight(1), vec![4, -2]);
    }

    #[test]
    fn weight_leq_certificates() {
        let a2 = CartanData::parse("A2").unwrap();
        let top = vec![1, 0];
        let w = vec![-1, 1]; // top - α1
        assert_eq!(a2.weight_leq(&w, &top), Some(vec![1, 0]));
        assert_eq!(a2.weight_leq(&top, &w), None);
        assert_eq!(a2.weight_leq(&vec![0, 1], &top), None);
    }

    #[test]
    fn affine_matrices() {
        let a1 = CartanData::parse("A1").unwrap();
        assert_eq!(a1.affine_matrix(), vec![vec![2, -2], vec![-2, 2]]);
        let a2 = CartanData::parse("A2").unwrap();
        assert_eq!(a2.affine_matrix(), vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]);
        let b2 = CartanData::parse("B2").unwrap();
        // Symmetrizable with d = (2, 2, 1).
        let a = b2.affine_matrix();
        let d = b2.affine_symmetrizers();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(d[i] * a[i][j], d[j] * a[j][i]);
            }
        }
    }

    #[test]
    fn parse_rejects_nonsense() {
        assert!(CartanData::parse("D3").is_err());
        assert!(CartanData::parse("E9").is_err());
        assert!(CartanData::parse("X2").is_err());
        assert!(CartanData::parse("A").is_err());
    }

    #[test]
    fn json_round_trip() {
        let cd = CartanData::parse("G2").unwrap();
        let s = serde_json::to_string(&cd).unwrap();
        assert!(s.contains("\"label\":\"G2\""));
        let back: CartanData = serde_json::from_str(&s).unwrap();
        assert_eq!(back, cd);
    }
}
