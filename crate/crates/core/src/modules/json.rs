//! JSON dump of a module, keyed by basis labels so golden files stay readable.

use serde::{Deserialize, Serialize};

use crate::arith::QRat;
use crate::cartan::{CartanData, Weight};
use crate::error::Error;
use crate::lweight::LWeight;

use super::{AlgebraKind, Column, Gen, Label, RepModule, SparseMatrix, Truncation};

#[derive(Serialize, Deserialize)]
struct ActionDump {
    gen: Gen,
    entries: Vec<(Label, Label, QRat)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    truncated: Vec<Label>,
}

#[derive(Serialize, Deserialize)]
struct ModuleDump {
    cartan: CartanData,
    kind: AlgebraKind,
    basis: Vec<Label>,
    weights: Vec<Weight>,
    truncation: Truncation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    diag: Option<Vec<LWeight>>,
    actions: Vec<ActionDump>,
}

impl RepModule {
    fn to_dump(&self) -> ModuleDump {
        let actions = self
            .actions
            .iter()
            .map(|(g, t)| {
                let mut entries = Vec::new();
                let mut truncated = Vec::new();
                for (b, col) in t.cols.iter().enumerate() {
                    match col {
                        Column::Known(v) => {
                            entries.extend(v.iter().map(|(a, c)| (self.basis[b].clone(), self.basis[*a].clone(), c.clone())))
                        }
                        Column::Truncated => truncated.push(self.basis[b].clone()),
                    }
                }
                ActionDump { gen: *g, entries, truncated }
            })
            .collect();
        ModuleDump {
            cartan: self.cartan.clone(),
            kind: self.kind,
            basis: self.basis.clone(),
            weights: self.weights.clone(),
            truncation: self.truncation.clone(),
            diag: self.diag.clone(),
            actions,
        }
    }

    fn from_dump(d: ModuleDump) -> Result<RepModule, Error> {
        if d.weights.len() != d.basis.len() {
            return Err(Error::Parse("basis and weights differ in length".into()));
        }
        let mut m = RepModule::new(d.cartan, d.kind, d.basis, d.weights, d.truncation);
        m.diag = d.diag;
        let dim = m.dim();
        let look = |m: &RepModule, l: &Label| m.index_of(l).ok_or_else(|| Error::Parse(format!("unknown label {l:?}")));
        for a in d.actions {
            let mut cols = vec![Column::Known(Vec::new()); dim];
            for l in &a.truncated {
                cols[look(&m, l)?] = Column::Truncated;
            }
            for (src, dst, c) in a.entries {
                let (s, t) = (look(&m, &src)?, look(&m, &dst)?);
                match &mut cols[s] {
                    Column::Known(v) => super::vec_axpy(v, &c, &vec![(t, QRat::one())]),
                    Column::Truncated => return Err(Error::Parse(format!("{src:?} is both truncated and known"))),
                }
            }
            m.actions.insert(a.gen, SparseMatrix { cols });
        }
        Ok(m)
    }
}

impl Serialize for RepModule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_dump().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RepModule {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        RepModule::from_dump(ModuleDump::deserialize(de)?).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use crate::modules::*;

    fn same(a: &RepModule, b: &RepModule) {
        assert_eq!(a.basis, b.basis);
        assert_eq!(a.weights, b.weights);
        assert_eq!(a.kind, b.kind);
        assert_eq!(a.truncation, b.truncation);
        assert_eq!(a.diag, b.diag);
        assert_eq!(a.actions, b.actions);
    }

    #[test]
    fn round_trip() {
        let w = Window::default();
        for m in [build_sl2_kr(2, 1, w), build_sl3_vinf(3, 2, w), dualize(&build_sl2_lplus(4, w)).unwrap()] {
            let s = serde_json::to_string(&m).unwrap();
            let back: RepModule = serde_json::from_str(&s).unwrap();
            same(&m, &back);
            assert_eq!(serde_json::to_string(&back).unwrap(), s);
        }
    }
}
