//! The undeformed Lie algebra: the eight generators as first-order
//! differential operators on the commutative algebra, and their commutator
//! table.

use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::Gen;

/// Polynomial of degree ≤ 1 in the eight generators, integer coefficients.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Linear {
    pub constant: i64,
    pub lin: [i64; 8],
}

impl Linear {
    pub fn constant(c: i64) -> Linear {
        Linear { constant: c, lin: [0; 8] }
    }

    pub fn gen(g: Gen) -> Linear {
        let mut lin = [0; 8];
        lin[g.index()] = 1;
        Linear { constant: 0, lin }
    }

    pub fn is_zero(&self) -> bool {
        self.constant == 0 && self.lin.iter().all(|&c| c == 0)
    }

    fn add_scaled(&mut self, other: &Linear, k: i64) {
        self.constant += k * other.constant;
        for i in 0..8 {
            self.lin[i] += k * other.lin[i];
        }
    }
}

/// `Σ_j f_j ∂/∂g_j` with `f_j` of degree ≤ 1.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VectorField {
    pub comps: [Linear; 8],
}

impl VectorField {
    fn with(terms: &[(Linear, Gen)]) -> VectorField {
        let mut v = VectorField::default();
        for (f, g) in terms {
            v.comps[g.index()].add_scaled(f, 1);
        }
        v
    }

    /// Action on a polynomial of degree ≤ 1. Since the components are
    /// themselves of degree ≤ 1 the result stays in that space.
    pub fn apply(&self, p: &Linear) -> Linear {
        let mut out = Linear::default();
        for j in 0..8 {
            out.add_scaled(&self.comps[j], p.lin[j]);
        }
        out
    }

    /// `[V, W] = Σ_j (V(W_j) − W(V_j)) ∂_j`.
    pub fn bracket(&self, other: &VectorField) -> VectorField {
        let mut out = VectorField::default();
        for j in 0..8 {
            let mut c = self.apply(&other.comps[j]);
            c.add_scaled(&other.apply(&self.comps[j]), -1);
            out.comps[j] = c;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Linear::is_zero)
    }

    fn combination(fields: &[VectorField; 8], coeffs: &[i64; 8]) -> VectorField {
        let mut out = VectorField::default();
        for (f, &k) in fields.iter().zip(coeffs) {
            for j in 0..8 {
                out.comps[j].add_scaled(&f.comps[j], k);
            }
        }
        out
    }
}

pub const NAMES: [&str; 8] = ["X1", "X2", "X3", "X4", "Xt1", "Xt2", "Xt3", "Xt4"];

/// `X1..X4, X̃1..X̃4` in that order.
pub fn generators() -> [VectorField; 8] {
    use Gen::*;
    let one = Linear::constant(1);
    let g = Linear::gen;
    [
        VectorField::with(&[(one, Alpha)]),
        VectorField::with(&[(one, Beta)]),
        VectorField::with(&[(g(Alpha), Beta), (g(Eta), Gamma)]),
        VectorField::with(&[(g(Eta), Eta), (g(Alpha), Alpha)]),
        VectorField::with(&[(one, A)]),
        VectorField::with(&[(one, B)]),
        VectorField::with(&[(g(A), B), (g(D), C)]),
        VectorField::with(&[(g(D), D), (g(A), A)]),
    ]
}

/// Expected `[X_i, X_j]` as coefficients over the generator list.
pub fn expected_bracket(i: usize, j: usize) -> [i64; 8] {
    let mut out = [0; 8];
    let table: [(usize, usize, usize, i64); 3] = [(0, 2, 1, 1), (3, 0, 0, -1), (3, 2, 2, 1)];
    for off in [0, 4] {
        for &(a, b, c, k) in &table {
            if (i, j) == (a + off, b + off) {
                out[c + off] += k;
            } else if (i, j) == (b + off, a + off) {
                out[c + off] -= k;
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub computed: VectorField,
    pub expected: [i64; 8],
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct ClassicalReport {
    pub table: Vec<BracketEntry>,
}

impl ClassicalReport {
    pub fn passed(&self) -> bool {
        self.table.iter().all(|e| e.ok)
    }

    pub fn failures(&self) -> Vec<String> {
        self.table
            .iter()
            .filter(|e| !e.ok)
            .map(|e| alloc::format!("[{}, {}]", NAMES[e.i], NAMES[e.j]))
            .collect()
    }
}

/// Full 8×8 commutator table checked against the Lie algebra of two
/// independent oscillators.
pub fn classical_derivation_check() -> ClassicalReport {
    let xs = generators();
    let mut table = Vec::with_capacity(64);
    for i in 0..8 {
        for j in 0..8 {
            let computed = xs[i].bracket(&xs[j]);
            let expected = expected_bracket(i, j);
            let ok = computed == VectorField::combination(&xs, &expected);
            table.push(BracketEntry { i, j, computed, expected, ok });
        }
    }
    ClassicalReport { table }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x1_x3_on_beta() {
        let xs = generators();
        let br = xs[0].bracket(&xs[2]);
        assert_eq!(br.apply(&Linear::gen(Gen::Beta)), Linear::constant(1));
        assert_eq!(xs[1].apply(&Linear::gen(Gen::Beta)), Linear::constant(1));
    }

    #[test]
    fn x4_x1_on_alpha() {
        let xs = generators();
        let br = xs[3].bracket(&xs[0]);
        assert_eq!(br.apply(&Linear::gen(Gen::Alpha)), Linear::constant(-1));
    }

    #[test]
    fn disjoint_sectors_commute() {
        let xs = generators();
        for i in 0..4 {
            for j in 4..8 {
                assert!(xs[i].bracket(&xs[j]).is_zero());
            }
        }
    }

    #[test]
    fn whole_table() {
        assert!(classical_derivation_check().passed());
    }
}
