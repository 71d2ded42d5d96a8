//! JSON file formats. Every file carries `"format": 1`.
//!
//! - point sets: `{"format", "q", "n", "field"?, "provenance"?, "points": [[..]], "witnesses"?: [{"direction", "shift"}]}`
//! - polynomials: `{"format", "q", "n", "terms": [{"e": [..], "c": int}]}`, graded-lex order
//! - verification results: `{"format", "q", "n", "kakeya", "witnesses", "failing_direction"?}`
//!
//! Coordinates and coefficients are field representations as defined in
//! [`crate::gf`]; `field.modulus` lists coefficients from the constant term up.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::kakeya::{KakeyaSet, Provenance, Verdict};
use crate::polymethod::MultiPoly;
use crate::space::{Direction, Point, Space};

pub const FORMAT_VERSION: u32 = 1;

fn format_version() -> u32 {
    FORMAT_VERSION
}

fn check_format(v: u32) -> Result<()> {
    if v != FORMAT_VERSION {
        return Err(Error::Data(format!("unsupported format version {v}")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub q: u32,
    pub p: u32,
    pub k: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

impl FieldJson {
    pub fn from_field(f: &Field) -> Self {
        FieldJson {
            q: f.q(),
            p: f.p(),
            k: f.k(),
            modulus: f.modulus().map(<[u32]>::to_vec),
        }
    }

    /// Rebuilds the field and checks the description matches it.
    pub fn to_field(&self) -> Result<Field> {
        let f = Field::new(self.q as u64)?;
        if FieldJson::from_field(&f) != *self {
            return Err(Error::Data(format!(
                "field description {self:?} does not match the canonical F_{}",
                self.q
            )));
        }
        Ok(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub direction: Vec<u32>,
    pub shift: Vec<u32>,
}

fn witnesses_json(map: &BTreeMap<Direction, Point>) -> Vec<WitnessJson> {
    map.iter()
        .map(|(d, a)| WitnessJson {
            direction: d.0.clone(),
            shift: a.0.clone(),
        })
        .collect()
}

fn field_for(q: u32, field: Option<&FieldJson>) -> Result<Field> {
    let f = match field {
        Some(fj) => fj.to_field()?,
        None => Field::new(q as u64)?,
    };
    if f.q() != q {
        return Err(Error::Data(format!(
            "q = {q} but field has order {}",
            f.q()
        )));
    }
    Ok(f)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointSetFile {
    #[serde(default = "format_version")]
    pub format: u32,
    pub q: u32,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
    pub points: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<WitnessJson>>,
}

impl PointSetFile {
    pub fn from_set(set: &KakeyaSet) -> Self {
        PointSetFile {
            format: FORMAT_VERSION,
            q: set.field().q(),
            n: set.dim(),
            field: Some(FieldJson::from_field(set.field())),
            provenance: Some(set.provenance()),
            points: set.points().iter().map(|p| p.0.clone()).collect(),
            witnesses: set.witnesses().map(witnesses_json),
        }
    }

    pub fn to_set(&self) -> Result<KakeyaSet> {
        check_format(self.format)?;
        let field = field_for(self.q, self.field.as_ref())?;
        let space = Space::new(field, self.n)?;
        let set = KakeyaSet::new(
            space.clone(),
            self.points.iter().cloned().map(Point),
            self.provenance.unwrap_or(Provenance::Custom),
        )?;
        match &self.witnesses {
            None => Ok(set),
            Some(ws) => {
                let mut map = BTreeMap::new();
                for w in ws {
                    let dir = Direction(w.direction.clone());
                    space.check_direction(&dir)?;
                    map.insert(space.canonicalize(&dir)?, Point(w.shift.clone()));
                }
                set.with_witnesses(map)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub e: Vec<u32>,
    pub c: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyFile {
    #[serde(default = "format_version")]
    pub format: u32,
    pub q: u32,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    pub terms: Vec<TermJson>,
}

impl PolyFile {
    pub fn from_poly(g: &MultiPoly, m: Option<u32>) -> Self {
        PolyFile {
            format: FORMAT_VERSION,
            q: g.field().q(),
            n: g.dim(),
            m,
            terms: g
                .terms()
                .map(|(mono, c)| TermJson {
                    e: mono.exponents().to_vec(),
                    c,
                })
                .collect(),
        }
    }

    pub fn to_poly(&self) -> Result<MultiPoly> {
        check_format(self.format)?;
        let field = Field::new(self.q as u64)?;
        MultiPoly::from_terms(
            &field,
            self.n,
            self.terms.iter().map(|t| (t.e.clone(), t.c)),
        )
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyFile {
    #[serde(default = "format_version")]
    pub format: u32,
    pub q: u32,
    pub n: usize,
    pub kakeya: bool,
    pub witnesses: Vec<WitnessJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failing_direction: Option<Vec<u32>>,
}

impl VerifyFile {
    pub fn from_verdict(set: &KakeyaSet, verdict: &Verdict) -> Self {
        let (kakeya, witnesses, failing_direction) = match verdict {
            Verdict::Kakeya { witnesses } => (true, witnesses_json(witnesses), None),
            Verdict::NotKakeya { direction } => (false, Vec::new(), Some(direction.0.clone())),
        };
        VerifyFile {
            format: FORMAT_VERSION,
            q: set.field().q(),
            n: set.dim(),
            kakeya,
            witnesses,
            failing_direction,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kakeya::{construct, verify, Variant};

    #[test]
    fn point_set_roundtrip_keeps_witnesses() {
        for (q, v) in [
            (5u64, Variant::Odd),
            (4, Variant::Even),
            (9, Variant::RecursiveOdd),
        ] {
            let f = Field::new(q).unwrap();
            let set = construct(&f, 2, v).unwrap();
            let text = serde_json::to_string(&PointSetFile::from_set(&set)).unwrap();
            let back: PointSetFile = serde_json::from_str(&text).unwrap();
            let set2 = back.to_set().unwrap();
            assert_eq!(set2.points(), set.points());
            assert_eq!(set2.witnesses(), set.witnesses());
            assert_eq!(set2.provenance(), set.provenance());
        }
    }

    #[test]
    fn minimal_point_file() {
        let text = r#"{"q": 3, "n": 2, "points": [[0,0],[1,0],[2,0]]}"#;
        let set: PointSetFile = serde_json::from_str(text).unwrap();
        let set = set.to_set().unwrap();
        assert_eq!(set.len(), 3);
        assert!(!verify(&set).is_kakeya());
    }

    #[test]
    fn rejects_bad_files() {
        let bad_coord = r#"{"q": 3, "n": 2, "points": [[0,3]]}"#;
        let f: PointSetFile = serde_json::from_str(bad_coord).unwrap();
        assert!(f.to_set().is_err());
        let bad_version = r#"{"format": 2, "q": 3, "n": 2, "points": []}"#;
        let f: PointSetFile = serde_json::from_str(bad_version).unwrap();
        assert!(matches!(f.to_set(), Err(Error::Data(_))));
        let bad_field =
            r#"{"q": 4, "n": 2, "field": {"q":4,"p":2,"k":2,"modulus":[1,0,1]}, "points": []}"#;
        let f: PointSetFile = serde_json::from_str(bad_field).unwrap();
        assert!(matches!(f.to_set(), Err(Error::Data(_))));
        let not_prime_power = r#"{"q": 6, "n": 2, "points": []}"#;
        let f: PointSetFile = serde_json::from_str(not_prime_power).unwrap();
        assert!(f.to_set().is_err());
    }

    #[test]
    fn witness_directions_are_canonicalised() {
        let text = r#"{"q": 3, "n": 2, "points": [[0,0],[2,2],[1,1]], "witnesses": [{"direction": [2,2], "shift": [0,0]}]}"#;
        let f: PointSetFile = serde_json::from_str(text).unwrap();
        let set = f.to_set().unwrap();
        assert!(set
            .witnesses()
            .unwrap()
            .contains_key(&Direction(vec![1, 1])));
    }

    #[test]
    fn poly_roundtrip() {
        let f = Field::new(5).unwrap();
        let g = MultiPoly::from_terms(&f, 2, [(vec![2, 1], 3), (vec![0, 0], 1)]).unwrap();
        let file = PolyFile::from_poly(&g, Some(2));
        let text = serde_json::to_string(&file).unwrap();
        assert!(text.contains(r#""terms":[{"e":[0,0],"c":1},{"e":[2,1],"c":3}]"#));
        let back: PolyFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_poly().unwrap(), g);
    }
}
