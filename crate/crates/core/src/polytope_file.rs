//! JSON polytope descriptions.
//!
//! ```json
//! {"type":"A","rank":2,"build":[{"orbit":[1,1]},{"orbit":[2,1]}],"translate":[0,0]}
//! {"type":"A","rank":1,"explicit":[{"word":[],"mu":[1]},{"word":[1],"mu":[-1]}]}
//! ```
//!
//! Words are 1-based and read left to right as s_{a1} s_{a2} ⋯.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Weight;
use crate::polytope::OrthogonalSet;
use crate::root_system::{Family, RootSystem};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitTerm {
    pub orbit: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitVertex {
    pub word: Vec<usize>,
    pub mu: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeFile {
    #[serde(rename = "type")]
    pub family: Family,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub build: Option<Vec<OrbitTerm>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub translate: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub explicit: Option<Vec<ExplicitVertex>>,
}

impl PolytopeFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Spec(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn root_system(&self) -> Result<RootSystem> {
        RootSystem::new(self.family, self.rank)
    }

    /// Build the polytope over `rs`, which must match the declared type.
    pub fn build(&self, rs: &Arc<RootSystem>) -> Result<OrthogonalSet> {
        if rs.family() != self.family || rs.rank() != self.rank {
            return Err(Error::RootSystemMismatch);
        }
        let weight = |v: &[i64]| -> Result<Weight> {
            if v.len() != self.rank {
                return Err(Error::Dimension {
                    expected: self.rank,
                    got: v.len(),
                });
            }
            Ok(Weight::from_slice(v))
        };
        let p = match (&self.build, &self.explicit) {
            (Some(terms), None) => {
                let parts = terms
                    .iter()
                    .map(|t| OrthogonalSet::from_orbit(rs.clone(), &weight(&t.orbit)?))
                    .collect::<Result<Vec<_>>>()?;
                OrthogonalSet::sum_all(&parts)?
            }
            (None, Some(verts)) => {
                if self.translate.is_some() {
                    return Err(Error::Spec("translate applies to build mode only".into()));
                }
                let mut mu: Vec<Option<Weight>> = vec![None; rs.group_order()];
                for v in verts {
                    let word = v
                        .word
                        .iter()
                        .map(|&a| {
                            a.checked_sub(1)
                                .filter(|&i| i < self.rank)
                                .ok_or_else(|| Error::Spec(format!("bad generator {a} in word")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    let w = rs.element_of_word(&word)?;
                    if mu[w].replace(weight(&v.mu)?).is_some() {
                        return Err(Error::Spec(format!("chamber {:?} listed twice", v.word)));
                    }
                }
                let vertices = mu
                    .into_iter()
                    .enumerate()
                    .map(|(w, m)| {
                        m.ok_or_else(|| {
                            let word: Vec<usize> =
                                rs.element(w).word.iter().map(|i| i + 1).collect();
                            Error::Spec(format!("no vertex for chamber {word:?}"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                OrthogonalSet::from_vertices(rs.clone(), vertices)?
            }
            _ => {
                return Err(Error::Spec(
                    "exactly one of \"build\" and \"explicit\" is required".into(),
                ))
            }
        };
        match &self.translate {
            Some(t) => p.translate(&weight(t)?),
            None => Ok(p),
        }
    }

    /// Explicit-mode description of `p`, one entry per chamber.
    pub fn explicit_from(p: &OrthogonalSet) -> Self {
        let rs = p.root_system();
        let explicit = (0..rs.group_order())
            .map(|w| ExplicitVertex {
                word: rs.element(w).word.iter().map(|i| i + 1).collect(),
                mu: p.vertex(w).as_slice().to_vec(),
            })
            .collect();
        Self {
            family: rs.family(),
            rank: rs.rank(),
            build: None,
            translate: None,
            explicit: Some(explicit),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_mode() {
        let f = PolytopeFile::parse(
            r#"{"type":"A","rank":2,"build":[{"orbit":[1,1]},{"orbit":[2,1]}],"translate":[1,0]}"#,
        )
        .unwrap();
        let rs = Arc::new(f.root_system().unwrap());
        let p = f.build(&rs).unwrap();
        assert_eq!(p.dominant_vertex(), &Weight::from_slice(&[4, 2]));
        assert!(p.is_ample());
    }

    #[test]
    fn explicit_round_trip() {
        let rs = Arc::new(RootSystem::new(Family::B, 2).unwrap());
        let p = OrthogonalSet::from_orbit(rs.clone(), &Weight::from_slice(&[1, 2])).unwrap();
        let text = PolytopeFile::explicit_from(&p).to_json();
        let back = PolytopeFile::parse(&text).unwrap().build(&rs).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn rejects_bad_files() {
        let rs = Arc::new(RootSystem::new(Family::A, 1).unwrap());
        for text in [
            r#"{"type":"A","rank":1}"#,
            r#"{"type":"A","rank":1,"build":[{"orbit":[0]}]}"#,
            r#"{"type":"A","rank":1,"build":[{"orbit":[1,1]}]}"#,
            r#"{"type":"A","rank":1,"explicit":[{"word":[],"mu":[1]}]}"#,
            r#"{"type":"A","rank":1,"explicit":[{"word":[],"mu":[1]},{"word":[2],"mu":[1]}]}"#,
            r#"{"type":"A","rank":1,"build":[{"orbit":[1]}],"extra":1}"#,
        ] {
            let res = PolytopeFile::parse(text).and_then(|f| f.build(&rs));
            assert!(res.is_err(), "{text}");
        }
        let f = PolytopeFile::parse(r#"{"type":"B","rank":2,"build":[{"orbit":[1,1]}]}"#).unwrap();
        assert_eq!(f.build(&rs).unwrap_err(), Error::RootSystemMismatch);
    }
}
