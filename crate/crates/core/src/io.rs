//! JSON set files.
//!
//! ```text
//! point set: {"field": {...}, "d": 2, "points": [[[c0..], [c0..]], ...]}
//! plane set: {"field": {...}, "d": 2, "planes": [{"v": [[c0..], ...], "t": [c0..]}, ...]}
//! ```
//!
//! Each field element is its coefficient array in the power basis. Entries are
//! written in canonical order, so identical sets produce identical files. An
//! optional `construction` block records how the set was generated.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::constructions::Construction;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldDescriptor, FieldElem};
use crate::geometry::{PlaneSet, PointSet, Space, Vector};

type Coeffs = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PointSetFile {
    pub field: FieldDescriptor,
    pub d: usize,
    pub points: Vec<Vec<Coeffs>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<Construction>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PlaneEntry {
    pub v: Vec<Coeffs>,
    pub t: Coeffs,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PlaneSetFile {
    pub field: FieldDescriptor,
    pub d: usize,
    pub planes: Vec<PlaneEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<Construction>,
}

fn encode_vector(f: &FieldCtx, x: &Vector) -> Vec<Coeffs> {
    x.entries().iter().map(|&e| f.coeffs(e)).collect()
}

fn decode_vector(space: &Space<'_>, raw: &[Coeffs]) -> Result<Vector> {
    let f = space.field();
    let entries = raw.iter().map(|c| f.from_coeffs(c)).collect::<Result<Vec<FieldElem>>>()?;
    space.vector(entries)
}

fn check_field(space: &Space<'_>, desc: &FieldDescriptor, d: usize) -> Result<()> {
    if space.field().descriptor() != *desc {
        return Err(Error::InvalidElement(format!(
            "set file is over {desc:?}, expected {:?}",
            space.field().descriptor()
        )));
    }
    if d != space.dim() {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            found: d,
        });
    }
    Ok(())
}

impl PointSetFile {
    pub fn new(space: &Space<'_>, set: &PointSet, construction: Option<Construction>) -> Self {
        let f = space.field();
        Self {
            field: f.descriptor(),
            d: space.dim(),
            points: set.points().iter().map(|x| encode_vector(f, x)).collect(),
            construction,
        }
    }

    /// Decodes into `space`, which must be over the described field.
    pub fn to_set(&self, space: &Space<'_>) -> Result<PointSet> {
        check_field(space, &self.field, self.d)?;
        let points = self.points.iter().map(|p| decode_vector(space, p)).collect::<Result<Vec<_>>>()?;
        PointSet::new(space, points)
    }
}

impl PlaneSetFile {
    pub fn new(space: &Space<'_>, set: &PlaneSet, construction: Option<Construction>) -> Self {
        let f = space.field();
        Self {
            field: f.descriptor(),
            d: space.dim(),
            planes: set
                .planes()
                .iter()
                .map(|h| PlaneEntry {
                    v: encode_vector(f, h.normal()),
                    t: f.coeffs(h.offset()),
                })
                .collect(),
            construction,
        }
    }

    pub fn to_set(&self, space: &Space<'_>) -> Result<PlaneSet> {
        check_field(space, &self.field, self.d)?;
        let pairs = self
            .planes
            .iter()
            .map(|e| Ok((decode_vector(space, &e.v)?, space.field().from_coeffs(&e.t)?)))
            .collect::<Result<Vec<_>>>()?;
        PlaneSet::new(space, pairs)
    }
}

pub fn write_json<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: impl AsRef<Path>) -> Result<T> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{random_plane_set, random_point_set};

    #[test]
    fn file_roundtrip_over_f9() {
        let f = FieldCtx::new(3, 2, None).unwrap();
        let s = Space::new(&f, 2).unwrap();
        let e = random_point_set(&s, 20, 4).unwrap();
        let planes = random_plane_set(&s, 30, 4).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let (pe, pf) = (dir.path().join("e.json"), dir.path().join("f.json"));
        write_json(&pe, &PointSetFile::new(&s, &e, None)).unwrap();
        write_json(&pf, &PlaneSetFile::new(&s, &planes, None)).unwrap();

        let pfile: PointSetFile = read_json(&pe).unwrap();
        let g = FieldCtx::from_descriptor(&pfile.field).unwrap();
        let s2 = Space::new(&g, pfile.d).unwrap();
        assert_eq!(pfile.to_set(&s2).unwrap(), e);
        let ffile: PlaneSetFile = read_json(&pf).unwrap();
        assert_eq!(ffile.to_set(&s2).unwrap(), planes);
    }

    #[test]
    fn layout() {
        let f = FieldCtx::prime(5).unwrap();
        let s = Space::new(&f, 2).unwrap();
        let e = PointSet::new(&s, [s.vector_from_ints(&[1, 2]).unwrap()]).unwrap();
        let json = serde_json::to_string(&PointSetFile::new(&s, &e, None)).unwrap();
        assert_eq!(json, r#"{"field":{"p":5,"k":1},"d":2,"points":[[[1],[2]]]}"#);
    }

    #[test]
    fn mismatched_field_is_rejected() {
        let f5 = FieldCtx::prime(5).unwrap();
        let f7 = FieldCtx::prime(7).unwrap();
        let s5 = Space::new(&f5, 2).unwrap();
        let s7 = Space::new(&f7, 2).unwrap();
        let file = PointSetFile::new(&s5, &PointSet::full(&s5), None);
        assert!(file.to_set(&s7).is_err());
    }
}
