//! Normal coordinates and their text form.

use std::fmt;
use std::str::FromStr;

use super::NormalError;

/// Disc multiplicities in the ball around one vertex. Triangle `c` runs
/// around the chamber opposite slot `c`; quad type `k` misses the germs
/// `GERMS[k]` and `GERMS[5 - k]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct VertexDiscs {
    pub triangles: [u32; 4],
    pub quad: Option<(u8, u32)>,
}

impl VertexDiscs {
    pub fn count(&self) -> u32 {
        self.triangles.iter().sum::<u32>() + self.quad.map_or(0, |(_, q)| q)
    }
}

/// A color per coordinate (faces, then per-atom and arc counts) and the
/// disc decomposition at every vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NormalVector {
    pub colors: Vec<u32>,
    pub discs: Vec<VertexDiscs>,
}

impl NormalVector {
    pub fn weight(&self) -> u32 {
        self.colors.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.colors.iter().all(|&c| c == 0)
    }

    pub fn scaled(&self, k: u32) -> NormalVector {
        NormalVector {
            colors: self.colors.iter().map(|c| c * k).collect(),
            discs: self
                .discs
                .iter()
                .map(|d| VertexDiscs { triangles: d.triangles.map(|t| t * k), quad: d.quad.map(|(t, q)| (t, q * k)) })
                .collect(),
        }
    }
}

impl fmt::Display for NormalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NV")?;
        for (i, c) in self.colors.iter().enumerate() {
            write!(f, " {i}:{c}")?;
        }
        write!(f, " |")?;
        for (v, d) in self.discs.iter().enumerate() {
            let [a, b, c, e] = d.triangles;
            write!(f, " {v}:{a},{b},{c},{e}")?;
            if let Some((k, q)) = d.quad {
                write!(f, ",q{k}={q}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for NormalVector {
    type Err = NormalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |m: &str| NormalError::Parse(m.to_string());
        let rest = s.trim().strip_prefix("NV").ok_or_else(|| bad("expected NV"))?;
        let (cols, verts) = rest.split_once('|').ok_or_else(|| bad("expected `|`"))?;
        let mut v = NormalVector::default();
        for (i, tok) in cols.split_whitespace().enumerate() {
            let (k, c) = tok.split_once(':').ok_or_else(|| bad(tok))?;
            if k.parse::<usize>().ok() != Some(i) {
                return Err(bad(&format!("coordinate {k} out of order")));
            }
            v.colors.push(c.parse().map_err(|_| bad(tok))?);
        }
        for (i, tok) in verts.split_whitespace().enumerate() {
            let (k, body) = tok.split_once(':').ok_or_else(|| bad(tok))?;
            if k.parse::<usize>().ok() != Some(i) {
                return Err(bad(&format!("vertex {k} out of order")));
            }
            let fields: Vec<&str> = body.split(',').collect();
            if fields.len() != 4 && fields.len() != 5 {
                return Err(bad(tok));
            }
            let mut d = VertexDiscs::default();
            for (t, x) in fields[..4].iter().enumerate() {
                d.triangles[t] = x.parse().map_err(|_| bad(tok))?;
            }
            if let Some(q) = fields.get(4) {
                let (kind, n) = q.strip_prefix('q').and_then(|q| q.split_once('=')).ok_or_else(|| bad(tok))?;
                let kind: u8 = kind.parse().map_err(|_| bad(tok))?;
                if kind > 2 {
                    return Err(bad(tok));
                }
                d.quad = Some((kind, n.parse().map_err(|_| bad(tok))?));
            }
            v.discs.push(d);
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let v = NormalVector {
            colors: vec![2, 0, 4],
            discs: vec![VertexDiscs { triangles: [1, 0, 1, 2], quad: Some((2, 1)) }, VertexDiscs::default()],
        };
        let s = v.to_string();
        assert_eq!(s, "NV 0:2 1:0 2:4 | 0:1,0,1,2,q2=1 1:0,0,0,0");
        assert_eq!(s.parse::<NormalVector>().unwrap(), v);
        assert_eq!("NV |".parse::<NormalVector>().unwrap(), NormalVector::default());
        assert!("NV 1:2 |".parse::<NormalVector>().is_err());
    }
}
