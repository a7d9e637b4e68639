//! Random valid inputs.
//!
//! Commuting diagrams over an arbitrary DAG come from sub-quotients: inside
//! a fixed `GF(p)^N`, node `v` gets `X_v = (S_v + K_v) / K_v` where `S_v` and
//! `K_v` only grow along the order, and every edge is induced by the
//! identity of `GF(p)^N`. Composites along any two paths are then the same
//! induced map, so the diagram commutes without any repair step.

use rand::Rng;

use persilat::diagram::ShapeSpec;
use persilat::linalg::{Matrix, PrimeField, SubspaceBasis};
use persilat::zigzag::ZigZag;
use persilat::{Diagram, EdgeSpec, NodeSpec};

/// A finite poset given by its Hasse edges `(lower, upper)` on `0..n`.
#[derive(Clone, Debug)]
pub struct Poset {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    leq: Vec<Vec<bool>>,
}

impl Poset {
    /// Edges must point from lower to higher index.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for v in (0..n).rev() {
            for &(a, b) in &edges {
                assert!(a < b, "edges must increase");
                if a == v {
                    let above = leq[b].clone();
                    for (w, &x) in above.iter().enumerate() {
                        leq[v][w] |= x;
                    }
                }
            }
        }
        Poset { n, edges, leq }
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }
}

pub fn random_matrix<R: Rng>(rng: &mut R, field: PrimeField, rows: usize, cols: usize) -> Matrix {
    let p = field.modulus();
    let data = (0..rows * cols).map(|_| rng.gen_range(0..p)).collect();
    Matrix::from_vec(field, rows, cols, data).expect("entries in range")
}

fn random_vector<R: Rng>(rng: &mut R, p: u32, n: usize) -> Vec<u32> {
    (0..n).map(|_| rng.gen_range(0..p)).collect()
}

/// Dims and edge matrices (in `poset.edges` order) of a random sub-quotient
/// representation with every dim at most `max_dim`.
pub fn random_subquotient<R: Rng>(
    rng: &mut R,
    field: PrimeField,
    poset: &Poset,
    max_dim: usize,
) -> (Vec<usize>, Vec<Matrix>) {
    let p = field.modulus();
    let n = poset.n;
    loop {
        let ambient = rng.gen_range(1..=max_dim + 1);
        let births: Vec<(Vec<u32>, usize)> = (0..rng.gen_range(1..=ambient + 1))
            .map(|_| (random_vector(rng, p, ambient), rng.gen_range(0..n)))
            .collect();
        let kills: Vec<(Vec<u32>, usize)> = (0..rng.gen_range(0..=ambient))
            .map(|_| {
                let v = if rng.gen_bool(0.7) {
                    births[rng.gen_range(0..births.len())].0.clone()
                } else {
                    random_vector(rng, p, ambient)
                };
                (v, rng.gen_range(0..n))
            })
            .collect();
        let span_at = |gens: &[(Vec<u32>, usize)], v: usize| {
            let vs: Vec<Vec<u32>> = gens.iter().filter(|g| poset.leq(g.1, v)).map(|g| g.0.clone()).collect();
            SubspaceBasis::from_vectors(field, ambient, &vs)
        };
        // per node: the quotient map by K_v and the image of S_v under it
        let mut quot = Vec::with_capacity(n);
        let mut lifts = Vec::with_capacity(n);
        let mut images = Vec::with_capacity(n);
        for v in 0..n {
            let s = span_at(&births, v);
            let k = span_at(&kills, v);
            let q = k.quotient_map();
            let qs = q.mul(s.basis()).expect("shapes agree");
            images.push(SubspaceBasis::column_span(&qs));
            lifts.push((s, qs));
            quot.push(q);
        }
        if images.iter().any(|i| i.dim() > max_dim) {
            continue;
        }
        let dims = images.iter().map(SubspaceBasis::dim).collect();
        let maps = poset
            .edges
            .iter()
            .map(|&(u, v)| {
                let (s_u, qs_u) = &lifts[u];
                let cols: Vec<Vec<u32>> = images[u]
                    .vectors()
                    .iter()
                    .map(|b| {
                        let z = qs_u.solve(b).expect("basis vector lies in the image");
                        let lift = s_u.basis().apply(&z);
                        let y = quot[v].apply(&lift);
                        images[v].coordinates(&y).expect("S_u ⊆ S_v")
                    })
                    .collect();
                Matrix::from_columns(field, images[v].dim(), &cols)
            })
            .collect();
        return (dims, maps);
    }
}

fn ids(prefix: &str, n: usize) -> Vec<String> {
    let width = n.saturating_sub(1).to_string().len();
    (0..n).map(|i| format!("{prefix}{i:0width$}")).collect()
}

/// Random commuting diagram on `n` nodes `N0, N1, …`: each pair `i < j`
/// gets an edge with probability `edge_prob`.
pub fn random_diagram<R: Rng>(rng: &mut R, field: PrimeField, n: usize, max_dim: usize, edge_prob: f64) -> Diagram {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(edge_prob) {
                edges.push((i, j));
            }
        }
    }
    let poset = Poset::new(n, edges);
    let (dims, maps) = random_subquotient(rng, field, &poset, max_dim);
    let names = ids("N", n);
    Diagram::new(
        field,
        names.iter().zip(&dims).map(|(id, &k)| NodeSpec::new(id.clone(), k)).collect(),
        poset
            .edges
            .iter()
            .zip(maps)
            .map(|(&(a, b), m)| EdgeSpec::new(names[a].clone(), names[b].clone(), m))
            .collect(),
    )
    .expect("sub-quotient diagrams commute")
}

/// Filtration `X0 → X1 → …` with independent random maps.
pub fn random_filtration<R: Rng>(rng: &mut R, field: PrimeField, len: usize, max_dim: usize) -> Diagram {
    let names = ids("X", len);
    let dims: Vec<usize> = (0..len).map(|_| rng.gen_range(0..=max_dim)).collect();
    let edges = (1..len)
        .map(|i| EdgeSpec::new(names[i - 1].clone(), names[i].clone(), random_matrix(rng, field, dims[i], dims[i - 1])))
        .collect();
    Diagram::new(
        field,
        names.iter().zip(&dims).map(|(id, &k)| NodeSpec::new(id.clone(), k)).collect(),
        edges,
    )
    .expect("chains commute")
    .with_shape(&ShapeSpec::Filtration)
    .expect("chain is a filtration")
}

/// Commuting `width × height` grid with ids `X{i}{j}` and edges
/// `(i, j) → (i+1, j)` and `(i, j) → (i, j+1)`.
pub fn random_grid<R: Rng>(rng: &mut R, field: PrimeField, width: usize, height: usize, max_dim: usize) -> Diagram {
    let at = |i: usize, j: usize| i * height + j;
    let mut edges = Vec::new();
    for i in 0..width {
        for j in 0..height {
            if i + 1 < width {
                edges.push((at(i, j), at(i + 1, j)));
            }
            if j + 1 < height {
                edges.push((at(i, j), at(i, j + 1)));
            }
        }
    }
    let poset = Poset::new(width * height, edges);
    let (dims, maps) = random_subquotient(rng, field, &poset, max_dim);
    let name = |v: usize| format!("X{}{}", v / height, v % height);
    let diagram = Diagram::new(
        field,
        (0..width * height).map(|v| NodeSpec::new(name(v), dims[v])).collect(),
        poset
            .edges
            .iter()
            .zip(maps)
            .map(|(&(a, b), m)| EdgeSpec::new(name(a), name(b), m))
            .collect(),
    )
    .expect("sub-quotient diagrams commute");
    let positions = (0..width * height).map(|v| (name(v), (v / height, v % height))).collect();
    diagram
        .with_shape(&ShapeSpec::Grid { width, height, positions })
        .expect("positions cover the grid")
}

/// Zig-zag with `spaces` positions (odd) and independent random arrows.
pub fn random_zigzag<R: Rng>(rng: &mut R, field: PrimeField, spaces: usize, max_dim: usize) -> ZigZag {
    let dims: Vec<usize> = (0..spaces).map(|_| rng.gen_range(0..=max_dim)).collect();
    let arrows = (0..spaces.saturating_sub(1))
        .map(|i| {
            let (even, odd) = if i % 2 == 0 { (i, i + 1) } else { (i + 1, i) };
            random_matrix(rng, field, dims[odd], dims[even])
        })
        .collect();
    ZigZag::new(field, dims, arrows).expect("shapes follow the dims")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_diagrams_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [2, 3, 5] {
            let f = PrimeField::new(p).unwrap();
            for _ in 0..30 {
                let n = rng.gen_range(1..=6);
                let d = random_diagram(&mut rng, f, n, 4, 0.5);
                assert!(d.nodes().all(|v| d.dim(v) <= 4));
            }
            let g = random_grid(&mut rng, f, 3, 3, 3);
            assert_eq!((g.len(), g.edge_count()), (9, 12));
        }
    }

    #[test]
    fn poset_closure() {
        let p = Poset::new(4, vec![(0, 1), (1, 3), (2, 3)]);
        assert!(p.leq(0, 3) && !p.leq(0, 2) && p.leq(2, 2));
    }
}
