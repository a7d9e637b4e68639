//! Equalizer and coequalizer checks by enumerating every vector of the
//! direct sum.

use std::collections::BTreeSet;

use persilat::diagram::NodeIx;
use persilat::realize::{RealizedJoin, RealizedMeet};
use persilat::{Diagram, Matrix};

use crate::enumerate::{all_vectors, span_set};
use crate::{check_budget, mat_vec, OracleError};

fn rows(m: &Matrix) -> Vec<Vec<u32>> {
    m.to_nested()
}

fn blocks(d: &Diagram, s: &[NodeIx]) -> Vec<(usize, usize)> {
    let mut off = 0;
    s.iter()
        .map(|&v| {
            let b = (off, d.dim(v));
            off += d.dim(v);
            b
        })
        .collect()
}

/// Every tuple in `⊕_{v∈s} V_v` whose components agree in every common
/// target of every pair.
pub fn equalizer_set(d: &Diagram, s: &[NodeIx]) -> Result<BTreeSet<Vec<u32>>, OracleError> {
    let p = d.field().modulus();
    let bl = blocks(d, s);
    let total: usize = bl.iter().map(|b| b.1).sum();
    check_budget(p, total)?;
    let mut out = BTreeSet::new();
    'vectors: for x in all_vectors(d.field(), total)? {
        for a in 0..s.len() {
            for b in a + 1..s.len() {
                for t in d.nodes() {
                    let (Some(fa), Some(fb)) = (d.composite(s[a], t), d.composite(s[b], t)) else {
                        continue;
                    };
                    let xa = &x[bl[a].0..bl[a].0 + bl[a].1];
                    let xb = &x[bl[b].0..bl[b].0 + bl[b].1];
                    if mat_vec(p, &rows(fa), xa) != mat_vec(p, &rows(fb), xb) {
                        continue 'vectors;
                    }
                }
            }
        }
        out.insert(x);
    }
    Ok(out)
}

/// `m` spans exactly the constraint-satisfying tuples: it satisfies every
/// constraint and no strictly larger subspace does.
pub fn check_equalizer_universal(d: &Diagram, s: &[NodeIx], m: &RealizedMeet) -> Result<bool, OracleError> {
    let e = equalizer_set(d, s)?;
    let total = m.space().ambient_dim();
    let span = span_set(d.field(), total, &m.space().vectors());
    Ok(span == e)
}

/// The image of every common lower bound `D` lands inside the meet.
pub fn check_lower_bound(d: &Diagram, s: &[NodeIx], m: &RealizedMeet) -> Result<bool, OracleError> {
    let p = d.field().modulus();
    let e = span_set(d.field(), m.space().ambient_dim(), &m.space().vectors());
    for lower in d.nodes() {
        let maps: Option<Vec<&Matrix>> = s.iter().map(|&v| d.composite(lower, v)).collect();
        let Some(maps) = maps else { continue };
        for x in all_vectors(d.field(), d.dim(lower))? {
            let image: Vec<u32> = maps.iter().flat_map(|g| mat_vec(p, &rows(g), &x)).collect();
            if !e.contains(&image) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `ker Q` is exactly the span of the source relations (and, with
/// `with_meet`, of `x_u ⊖ x_v` for every equalizer tuple `x`), and `Q` is
/// onto.
pub fn check_coequalizer_universal(
    d: &Diagram,
    s: &[NodeIx],
    j: &RealizedJoin,
    with_meet: bool,
) -> Result<bool, OracleError> {
    let f = d.field();
    let p = f.modulus();
    let bl = blocks(d, s);
    let total: usize = bl.iter().map(|b| b.1).sum();
    check_budget(p, total)?;
    let place = |a: usize, ya: &[u32], b: usize, yb: &[u32]| {
        let mut v = vec![0u32; total];
        for (k, &y) in ya.iter().enumerate() {
            v[bl[a].0 + k] = (v[bl[a].0 + k] + y) % p;
        }
        for (k, &y) in yb.iter().enumerate() {
            v[bl[b].0 + k] = (v[bl[b].0 + k] + p - y) % p;
        }
        v
    };
    let mut gens = Vec::new();
    for a in 0..s.len() {
        for b in a + 1..s.len() {
            for src in d.nodes() {
                let (Some(ga), Some(gb)) = (d.composite(src, s[a]), d.composite(src, s[b])) else {
                    continue;
                };
                for x in all_vectors(f, d.dim(src))? {
                    gens.push(place(a, &mat_vec(p, &rows(ga), &x), b, &mat_vec(p, &rows(gb), &x)));
                }
            }
        }
    }
    if with_meet {
        for x in equalizer_set(d, s)? {
            for a in 0..s.len() {
                for b in a + 1..s.len() {
                    let xa = &x[bl[a].0..bl[a].0 + bl[a].1];
                    let xb = &x[bl[b].0..bl[b].0 + bl[b].1];
                    gens.push(place(a, xa, b, xb));
                }
            }
        }
    }
    let relations = span_set(f, total, &gens);
    let q = rows(j.quotient());
    let all = all_vectors(f, total)?;
    let kernel: BTreeSet<Vec<u32>> = all.iter().filter(|x| mat_vec(p, &q, x).iter().all(|&c| c == 0)).cloned().collect();
    let image: BTreeSet<Vec<u32>> = all.iter().map(|x| mat_vec(p, &q, x)).collect();
    let onto = image.len() as u64 == (p as u64).pow(j.dim() as u32);
    Ok(kernel == relations && onto)
}
