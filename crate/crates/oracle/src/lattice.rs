//! Lattice terms checked by evaluation.
//!
//! Order-preserving maps from the generating poset to `{0 < 1}` (equivalently
//! its up-sets) separate the elements of the free bounded distributive
//! lattice, so two terms are equal exactly when they agree under every such
//! map. A term's truth table over all up-sets is therefore a complete
//! invariant that needs no normal form.

use rand::Rng;

use persilat::lattice::{LatticeTerm, NodePoset};

/// An unevaluated lattice expression over generators `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Top,
    Bottom,
    Gen(usize),
    Meet(Box<Expr>, Box<Expr>),
    Join(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn meet(a: Expr, b: Expr) -> Expr {
        Expr::Meet(Box::new(a), Box::new(b))
    }

    pub fn join(a: Expr, b: Expr) -> Expr {
        Expr::Join(Box::new(a), Box::new(b))
    }

    pub fn eval(&self, upset: &[bool]) -> bool {
        match self {
            Expr::Top => true,
            Expr::Bottom => false,
            Expr::Gen(g) => upset[*g],
            Expr::Meet(a, b) => a.eval(upset) && b.eval(upset),
            Expr::Join(a, b) => a.eval(upset) || b.eval(upset),
        }
    }
}

/// Random expression of depth at most `depth`; bounds appear rarely.
pub fn random_expr<R: Rng>(rng: &mut R, generators: usize, depth: usize) -> Expr {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..20) {
            0 => Expr::Top,
            1 => Expr::Bottom,
            _ => Expr::Gen(rng.gen_range(0..generators)),
        };
    }
    let a = random_expr(rng, generators, depth - 1);
    let b = random_expr(rng, generators, depth - 1);
    if rng.gen_bool(0.5) {
        Expr::meet(a, b)
    } else {
        Expr::join(a, b)
    }
}

/// Every up-set of the poset as a membership vector.
pub fn upsets(poset: &NodePoset) -> Vec<Vec<bool>> {
    let n = poset.len();
    assert!(n <= 16, "up-set enumeration is exponential");
    (0..1u32 << n)
        .map(|bits| (0..n).map(|g| bits >> g & 1 == 1).collect::<Vec<bool>>())
        .filter(|u| (0..n).all(|a| !u[a] || (0..n).all(|b| !poset.leq(a, b) || u[b])))
        .collect()
}

pub fn truth_table(e: &Expr, upsets: &[Vec<bool>]) -> Vec<bool> {
    upsets.iter().map(|u| e.eval(u)).collect()
}

/// Truth table of a normal form, read straight off its clauses.
pub fn term_truth_table(t: &LatticeTerm, upsets: &[Vec<bool>]) -> Vec<bool> {
    upsets
        .iter()
        .map(|u| t.clauses().iter().any(|m| m.generators().iter().all(|&g| u[g])))
        .collect()
}

/// `a ≤ b` pointwise.
pub fn table_leq(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| !x || y)
}
