//! Module rank and normalized elementary-ideal generators of a presentation.

use serde::Serialize;
use serde_json::json;

use crate::field::{Field, Poly, Scalar};
use crate::linalg::PolyMatrix;
use crate::par::ExecMode;

use super::present::Presentation;
use super::LinkError;

/// How the gcd of the `k × k` minors is obtained over Q[t].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MinorStrategy {
    /// Pivots that are units of Q[t] localized at the presentation's unit
    /// factors are eliminated first (a Tietze move over that ring), then
    /// the minors of what remains are enumerated by Bareiss elimination.
    #[default]
    Reduced,
    /// Smith normal form of the denominator-cleared matrix. Degrees can
    /// blow up on larger inputs.
    Smith,
    /// Every minor by Bareiss elimination, folded with gcd in a fixed
    /// order. Cost grows combinatorially with the depth.
    Enumerate(ExecMode),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ideal {
    pub i: usize,
    #[serde(serialize_with = "as_display")]
    pub poly: Poly,
}

fn as_display<S: serde::Serializer>(p: &Poly, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantResult {
    pub field: Field,
    /// Number of scalar generators.
    pub dimension: usize,
    /// Rank of the module over the fraction field: generators minus the
    /// rank of the relation matrix.
    pub rank: usize,
    pub matrix_rank: usize,
    /// `E_0, E_1, ...`: `E_i` generates the ideal of `(dimension - i)`
    /// minors, normalized up to units. Over Q and F_p this is 0 or 1.
    pub ideals: Vec<Ideal>,
    pub unit_factors: Vec<Poly>,
}

impl InvariantResult {
    pub fn ideal(&self, i: usize) -> Option<&Poly> {
        self.ideals.get(i).map(|e| &e.poly)
    }

    /// The comparable part: rank and the ideals.
    pub fn signature(&self) -> (usize, Vec<Poly>) {
        (
            self.rank,
            self.ideals.iter().map(|e| e.poly.clone()).collect(),
        )
    }

    pub fn to_json(&self, input: &str) -> serde_json::Value {
        json!({
            "input": input,
            "rank": self.rank,
            "ideals": self.ideals,
            "units_stripped": self.unit_factors.iter().map(Poly::to_string).collect::<Vec<_>>(),
        })
    }
}

pub fn invariants(p: &Presentation, depth: usize) -> Result<InvariantResult, LinkError> {
    invariants_with(p, depth, MinorStrategy::default())
}

pub fn invariants_with(
    p: &Presentation,
    depth: usize,
    strategy: MinorStrategy,
) -> Result<InvariantResult, LinkError> {
    let m = p.matrix();
    let n = m.cols();
    if depth == 0 || depth > n + 1 {
        return Err(LinkError::DepthExceedsDimension {
            depth,
            dimension: n,
        });
    }
    let matrix_rank = m.rank();
    let polys: Vec<Poly> = if p.field() == Field::RationalFunctions {
        let raw: Vec<Poly> = match strategy {
            MinorStrategy::Reduced => {
                let is_unit = |e: &Scalar| {
                    e.as_ratfunc()
                        .is_some_and(|r| r.numer().normalize(p.units()).is_constant())
                };
                let (rest, used) = m.eliminate_units(is_unit);
                let cleared = PolyMatrix::clear_denominators(&rest)?;
                (0..depth)
                    .map(|i| match (n - i).checked_sub(used) {
                        None | Some(0) => Poly::one(),
                        Some(k) => cleared.minors_gcd(k, ExecMode::default()),
                    })
                    .collect()
            }
            MinorStrategy::Smith => {
                let cleared = PolyMatrix::clear_denominators(m)?;
                let d = cleared.determinantal_divisors();
                (0..depth)
                    .map(|i| d.get(n - i).cloned().unwrap_or_else(Poly::zero))
                    .collect()
            }
            MinorStrategy::Enumerate(mode) => {
                let cleared = PolyMatrix::clear_denominators(m)?;
                (0..depth)
                    .map(|i| cleared.minors_gcd(n - i, mode))
                    .collect()
            }
        };
        raw.iter().map(|e| e.normalize(p.units())).collect()
    } else {
        (0..depth)
            .map(|i| {
                if matrix_rank + i >= n && n - i <= m.rows() {
                    Poly::one()
                } else {
                    Poly::zero()
                }
            })
            .collect()
    };
    debug_assert!(
        polys.windows(2).all(|w| w[1].divides(&w[0])),
        "E_(i+1) must divide E_i"
    );
    Ok(InvariantResult {
        field: p.field(),
        dimension: n,
        rank: n - matrix_rank,
        matrix_rank,
        ideals: polys
            .into_iter()
            .enumerate()
            .map(|(i, poly)| Ideal { i, poly })
            .collect(),
        unit_factors: p.units().to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{bareiss_det, cofactor_det, Matrix};
    use crate::linkinv::{presentation_from_gauss, CrossingConvention, GaussCode};
    use crate::solver::{hyperbolic_family, HyperbolicParams};
    use crate::switch::Switch;

    fn t_switch() -> Switch {
        let f = Field::RationalFunctions;
        let p = HyperbolicParams {
            a0: f.variable().unwrap(),
            a1: f.one(),
            a3: f.one(),
            b1: f.zero(),
            b3: f.one(),
        };
        let (a, b) = hyperbolic_family(&p).unwrap();
        Switch::noncommutative(&a, &b).unwrap()
    }

    fn present(s: &Switch, code: &str) -> Presentation {
        presentation_from_gauss(
            s,
            &GaussCode::parse(code).unwrap(),
            CrossingConvention::default(),
        )
        .unwrap()
    }

    #[test]
    fn unknot_has_no_relations() {
        let r = invariants(&present(&t_switch(), ""), 2).unwrap();
        assert_eq!((r.rank, r.matrix_rank, r.dimension), (2, 0, 2));
        assert!(r.ideal(0).unwrap().is_zero() && r.ideal(1).unwrap().is_zero());
        let full = invariants(&present(&t_switch(), ""), 3).unwrap();
        assert!(full.ideal(2).unwrap().is_one());
    }

    #[test]
    fn zero_block_presentation() {
        let p = Presentation::new(Matrix::zeros(Field::RationalFunctions, 4, 4), vec![]);
        let r = invariants(&p, 5).unwrap();
        assert_eq!(r.signature().1[..4], vec![Poly::zero(); 4][..]);
        assert!(r.ideal(4).unwrap().is_one());
    }

    #[test]
    fn virtual_trefoil_over_qt() {
        let r = invariants(&present(&t_switch(), "O1+O2+U1+U2+"), 2).unwrap();
        assert_eq!(r.rank, 0);
        // (t + 3)^2 (t^2 - t - 4)
        assert_eq!(r.ideal(0).unwrap(), &Poly::from_ints(&[-36, -33, -1, 5, 1]));
        assert!(r.ideal(1).unwrap().is_one());
        let json = r.to_json("O1+O2+U1+U2+");
        assert_eq!(json["ideals"][0]["poly"], "t^4 + 5t^3 - t^2 - 33t - 36");
        assert_eq!(json["rank"], 0);
        assert!(json["units_stripped"]
            .as_array()
            .unwrap()
            .iter()
            .any(|u| u == "t - 1"));
    }

    #[test]
    fn strategies_agree() {
        let s = t_switch();
        for code in [
            "",
            "O1+U1+",
            "U1-O1-",
            "O1+O2+U1+U2+",
            "O1+O2-U2-U1+",
            "O1+O2+U1+U3-O3-U2+",
        ] {
            let p = present(&s, code);
            let depth = if p.matrix().cols() <= 8 { 3 } else { 2 };
            let want = invariants_with(&p, depth, MinorStrategy::Reduced).unwrap();
            for strategy in [
                MinorStrategy::Smith,
                MinorStrategy::Enumerate(ExecMode::Sequential),
                MinorStrategy::Enumerate(ExecMode::Parallel),
            ] {
                assert_eq!(
                    invariants_with(&p, depth, strategy).unwrap(),
                    want,
                    "{code} {strategy:?}"
                );
            }
        }
    }

    #[test]
    fn cofactor_oracle_on_small_presentations() {
        let s = t_switch();
        for code in ["O1+U1+", "U1-O1-"] {
            let m = PolyMatrix::clear_denominators(present(&s, code).matrix()).unwrap();
            let n = m.rows();
            for k in 1..=n {
                for rows in crate::linalg::combinations(n, k) {
                    for cols in crate::linalg::combinations(n, k) {
                        let sub = m.select(&rows, &cols);
                        assert_eq!(bareiss_det(&sub), cofactor_det(&sub));
                    }
                }
            }
        }
    }

    #[test]
    fn field_ideals_are_zero_or_one() {
        let p = HyperbolicParams::from_ints(Field::Rationals, [3, 1, 1, 0, 1]);
        let (a, b) = hyperbolic_family(&p).unwrap();
        let s = Switch::noncommutative(&a, &b).unwrap();
        let r = invariants(&present(&s, "O1+O2+U1+U2+"), 2).unwrap();
        let expect = |i: usize| {
            if r.matrix_rank + i >= r.dimension {
                Poly::one()
            } else {
                Poly::zero()
            }
        };
        assert_eq!(r.ideal(0), Some(&expect(0)));
        assert_eq!(r.ideal(1), Some(&expect(1)));
        assert!(r.unit_factors.is_empty());
    }

    #[test]
    fn depth_is_checked() {
        let p = present(&t_switch(), "O1+U1+");
        assert_eq!(
            invariants(&p, 0),
            Err(LinkError::DepthExceedsDimension {
                depth: 0,
                dimension: 4
            })
        );
        assert!(invariants(&p, 5).is_ok());
        assert!(matches!(
            invariants(&p, 6),
            Err(LinkError::DepthExceedsDimension { .. })
        ));
    }
}
