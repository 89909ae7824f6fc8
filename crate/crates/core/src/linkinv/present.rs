//! Presentation matrices of the module a switch assigns to a diagram.

use serde::{Deserialize, Serialize};

use crate::field::{coprime_basis, Field, Poly, Scalar};
use crate::linalg::Matrix;
use crate::quat2::Mat2;
use crate::switch::Switch;

use super::braid::{braid_rep, BraidWord};
use super::gauss::{GaussCode, Sign};
use super::LinkError;

/// How a classical crossing feeds its incoming semi-arc labels through the
/// switch.
///
/// `BraidLeftOver` is the adopted one: it matches [`braid_rep`], where
/// `σ_i` has the left strand over. The other two are kept because they are
/// the natural first guesses; the move suite shows both are unusable.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CrossingConvention {
    /// Positive: `(u_out, o_out) = S(o_in, u_in)`.
    /// Negative: `(o_out, u_out) = S⁻¹(u_in, o_in)`.
    #[default]
    BraidLeftOver,
    /// `(o_out, u_out) = S(o_in, u_in)`, with `S⁻¹` at negative crossings.
    /// Not invariant under Reidemeister I.
    OverFirst,
    /// `(o_out, u_out) = S(u_in, o_in)`, with `S⁻¹` at negative crossings.
    /// Move invariant, but disagrees with braid closures of mixed-sign
    /// braids.
    UnderInputs,
}

impl CrossingConvention {
    pub const ALL: [CrossingConvention; 3] = [
        CrossingConvention::BraidLeftOver,
        CrossingConvention::OverFirst,
        CrossingConvention::UnderInputs,
    ];

    /// `(outputs, inputs)` as (first, second) pairs where `true` means the
    /// over strand.
    fn layout(self, sign: Sign) -> ([bool; 2], [bool; 2]) {
        const O: bool = true;
        const U: bool = false;
        match (self, sign) {
            (CrossingConvention::BraidLeftOver, Sign::Positive) => ([U, O], [O, U]),
            (CrossingConvention::BraidLeftOver, Sign::Negative) => ([O, U], [U, O]),
            (CrossingConvention::OverFirst, _) => ([O, U], [O, U]),
            (CrossingConvention::UnderInputs, _) => ([O, U], [U, O]),
        }
    }
}

/// A square presentation matrix made of 2×2 blocks: block columns are
/// generators, block rows are relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    matrix: Matrix,
    units: Vec<Poly>,
}

impl Presentation {
    pub fn new(matrix: Matrix, units: Vec<Poly>) -> Presentation {
        Presentation { matrix, units }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn field(&self) -> Field {
        self.matrix.field()
    }

    /// Number of block generators.
    pub fn generators(&self) -> usize {
        self.matrix.cols() / 2
    }

    pub fn block(&self, i: usize, j: usize) -> Mat2 {
        self.matrix.block(2 * i, 2 * j)
    }

    /// Polynomials treated as units when normalizing invariants; empty
    /// outside Q(t).
    pub fn units(&self) -> &[Poly] {
        &self.units
    }
}

/// Square-free, pairwise coprime factors of every quantity the switch
/// axioms require to be invertible: the entry denominators of `S` and
/// `S⁻¹`, and the numerators and denominators of `det A`, `det B`,
/// `det(A - 1)` and `det S`.
pub fn switch_units(switch: &Switch) -> Vec<Poly> {
    let f = switch.field();
    if f != Field::RationalFunctions {
        return Vec::new();
    }
    let mut pool: Vec<Scalar> = switch.matrix().entries().cloned().collect();
    if let Ok(inv) = switch.inverse_matrix() {
        pool.extend(inv.entries().cloned());
    }
    let mut polys: Vec<Poly> = pool
        .iter()
        .filter_map(Scalar::to_ratfunc)
        .map(|r| r.denom().clone())
        .collect();
    let dets = [
        switch.a.det(),
        switch.b.det(),
        switch.a.sub(&Mat2::identity(f)).det(),
        switch.matrix().det().expect("4x4"),
    ];
    for d in dets
        .iter()
        .filter(|d| !d.is_zero())
        .filter_map(Scalar::to_ratfunc)
    {
        polys.push(d.numer().clone());
        polys.push(d.denom().clone());
    }
    coprime_basis(&polys)
}

/// Semi-arc `k` runs from passage `k` to passage `k + 1` (cyclically), so
/// passage `k` is entered along arc `k - 1` and left along arc `k`. Each
/// crossing contributes the two block rows `out - M·in = 0`.
///
/// The empty code is the unknot: one generator and a zero relation.
pub fn presentation_from_gauss(
    switch: &Switch,
    code: &GaussCode,
    convention: CrossingConvention,
) -> Result<Presentation, LinkError> {
    let f = switch.field();
    let units = switch_units(switch);
    if code.is_empty() {
        return Ok(Presentation::new(Matrix::zeros(f, 2, 2), units));
    }
    let n = code.len();
    let forward = [
        [switch.a.clone(), switch.b.clone()],
        [switch.c.clone(), switch.d.clone()],
    ];
    let backward = if code.crossings().iter().any(|c| c.sign == Sign::Negative) {
        let inv = switch
            .inverse_matrix()
            .map_err(|_| LinkError::NonInvertibleSwitch)?;
        Some([
            [inv.block(0, 0), inv.block(0, 2)],
            [inv.block(2, 0), inv.block(2, 2)],
        ])
    } else {
        None
    };
    let mut m = Matrix::zeros(f, 2 * n, 2 * n);
    for (c, site) in code.crossings().iter().enumerate() {
        let blocks = match site.sign {
            Sign::Positive => &forward,
            Sign::Negative => backward.as_ref().expect("computed above"),
        };
        let (outs, ins) = convention.layout(site.sign);
        let arc_out = |over: bool| if over { site.over } else { site.under };
        let arc_in = |over: bool| (arc_out(over) + n - 1) % n;
        for r in 0..2 {
            let row = 2 * (2 * c + r);
            m.add_block(row, 2 * arc_out(outs[r]), &Mat2::identity(f));
            for k in 0..2 {
                m.add_block(row, 2 * arc_in(ins[k]), &blocks[r][k].neg());
            }
        }
    }
    Ok(Presentation::new(m, units))
}

/// `ρ(w) - 1`: generators are the bottom labels of the strands, closed up.
pub fn presentation_from_braid(
    switch: &Switch,
    word: &BraidWord,
) -> Result<Presentation, LinkError> {
    let rho = braid_rep(switch, word)?;
    let m = rho.sub(&Matrix::identity(switch.field(), rho.rows()))?;
    Ok(Presentation::new(m, switch_units(switch)))
}
