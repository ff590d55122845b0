//! JSON complex files: `{dim, period?, simplices: [{id, dim, faces: [[id, sign]], frame?: {A, b, split}}]}`
//! with rationals written as `"p/q"`.

use serde::{Deserialize, Serialize};

use super::{Simplex, SimplicialComplex};
use crate::algebra::rat::{format_rat, parse_rat};
use crate::algebra::{Rat, RatMatrix};
use crate::current::Frame;
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct FrameFile {
    #[serde(rename = "A")]
    a: Vec<Vec<String>>,
    b: Vec<String>,
    split: usize,
}

#[derive(Serialize, Deserialize)]
struct SimplexFile {
    id: usize,
    dim: usize,
    faces: Vec<(usize, i32)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    frame: Option<FrameFile>,
}

#[derive(Serialize, Deserialize)]
struct ComplexFile {
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    period: Option<Vec<String>>,
    simplices: Vec<SimplexFile>,
}

fn rats(xs: &[String]) -> Result<Vec<Rat>> {
    xs.iter().map(|x| parse_rat(x).ok_or_else(|| Error::InvalidInput(format!("not a rational: {x}")))).collect()
}

pub fn complex_from_json(text: &str) -> Result<SimplicialComplex> {
    let file: ComplexFile = serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("complex file: {e}")))?;
    let period = file.period.as_deref().map(rats).transpose()?;
    let mut simplices = Vec::with_capacity(file.simplices.len());
    for s in file.simplices {
        let frame = match s.frame {
            Some(f) => {
                if f.a.len() != f.b.len() || f.a.iter().any(|r| r.len() != f.b.len()) {
                    return Err(Error::DimensionMismatch(format!("frame of simplex {} is not square", s.id)));
                }
                let rows = f.a.iter().map(|r| rats(r)).collect::<Result<Vec<_>>>()?;
                let frame = Frame::new(RatMatrix::from_rows(rows), rats(&f.b)?, f.split)?;
                if frame.p() != s.dim {
                    return Err(Error::InvalidInput(format!("frame of simplex {} has the wrong dimension", s.id)));
                }
                Some(frame)
            }
            None => None,
        };
        simplices.push(Simplex { id: s.id, dim: s.dim, faces: s.faces, frame });
    }
    SimplicialComplex::new(file.dim, period, simplices)
}

pub fn complex_to_json(x: &SimplicialComplex) -> String {
    let strs = |xs: &[Rat]| xs.iter().map(format_rat).collect::<Vec<_>>();
    let file = ComplexFile {
        dim: x.dim(),
        period: x.period().map(strs),
        simplices: x
            .simplices()
            .map(|s| SimplexFile {
                id: s.id,
                dim: s.dim,
                faces: s.faces.clone(),
                frame: s.frame.as_ref().map(|f| FrameFile {
                    a: (0..f.n()).map(|i| strs(f.matrix().row(i))).collect(),
                    b: strs(f.offset()),
                    split: f.m(),
                }),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}
