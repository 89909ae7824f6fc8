//! Virtual braid words, their switch representation and their closures.

use std::fmt;

use crate::linalg::Matrix;
use crate::switch::Switch;

use super::gauss::{GaussCode, Passage, Role, Sign};
use super::LinkError;

/// Generators use 1-based indices: `Sigma(i)` crosses strands `i, i + 1`
/// with the left strand over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    Sigma(usize),
    SigmaInv(usize),
    Tau(usize),
}

impl Generator {
    pub fn index(self) -> usize {
        match self {
            Generator::Sigma(i) | Generator::SigmaInv(i) | Generator::Tau(i) => i,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Sigma(i) => write!(f, "s{i}"),
            Generator::SigmaInv(i) => write!(f, "S{i}"),
            Generator::Tau(i) => write!(f, "v{i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    gens: Vec<Generator>,
}

impl BraidWord {
    pub fn new(strands: usize, gens: Vec<Generator>) -> Result<BraidWord, LinkError> {
        if strands == 0 {
            return Err(LinkError::Validation(
                "a braid needs at least one strand".into(),
            ));
        }
        if let Some(g) = gens.iter().find(|g| g.index() == 0 || g.index() >= strands) {
            return Err(LinkError::IndexOutOfRange {
                index: g.index(),
                strands,
            });
        }
        Ok(BraidWord { strands, gens })
    }

    /// Tokens `s<i>`, `S<i>` (inverse) and `v<i>` (virtual), separated by
    /// whitespace or commas.
    pub fn parse(text: &str, strands: usize) -> Result<BraidWord, LinkError> {
        let gens = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .enumerate()
            .map(|(pos, t)| {
                let err = |reason: &str| LinkError::Syntax {
                    position: pos,
                    token: t.to_string(),
                    reason: reason.to_string(),
                };
                let (head, digits) = t.split_at(t.chars().next().map_or(0, char::len_utf8));
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(err("expected a generator index"));
                }
                let i: usize = digits.parse().map_err(|_| err("index out of range"))?;
                match head {
                    "s" => Ok(Generator::Sigma(i)),
                    "S" => Ok(Generator::SigmaInv(i)),
                    "v" => Ok(Generator::Tau(i)),
                    _ => Err(err("expected s, S or v")),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        BraidWord::new(strands, gens)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn classical_count(&self) -> usize {
        self.gens
            .iter()
            .filter(|g| !matches!(g, Generator::Tau(_)))
            .count()
    }

    /// The strand permutation: `perm[bottom] = top`.
    pub fn permutation(&self) -> Vec<usize> {
        (0..self.strands)
            .map(|s| self.gens.iter().fold(s, |pos, g| step(*g, pos).0))
            .collect()
    }

    /// Number of components of the closure.
    pub fn closure_components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut count = 0;
        for s in 0..self.strands {
            if !seen[s] {
                count += 1;
                let mut p = s;
                while !seen[p] {
                    seen[p] = true;
                    p = perm[p];
                }
            }
        }
        count
    }

    /// Gauss code of the closure, traversed from the bottom of strand 1.
    /// Crossing ids are the positions of the classical letters (1-based,
    /// counting classical letters only).
    pub fn closure_gauss(&self) -> Result<GaussCode, LinkError> {
        let components = self.closure_components();
        if components != 1 {
            return Err(LinkError::Validation(format!(
                "closure has {components} components; only knots are supported"
            )));
        }
        let mut ids = Vec::with_capacity(self.gens.len());
        let mut next = 0;
        for g in &self.gens {
            if !matches!(g, Generator::Tau(_)) {
                next += 1;
            }
            ids.push(next);
        }
        let mut passages = Vec::new();
        let mut pos = 0;
        loop {
            for (g, &id) in self.gens.iter().zip(&ids) {
                let (to, visit) = step(*g, pos);
                if let Some((role, sign)) = visit {
                    passages.push(Passage {
                        crossing: id,
                        role,
                        sign,
                    });
                }
                pos = to;
            }
            if pos == 0 {
                break;
            }
        }
        GaussCode::new(passages)
    }
}

/// Where a strand at 0-based position `pos` goes through `g`, and how it
/// meets the crossing if it does.
fn step(g: Generator, pos: usize) -> (usize, Option<(Role, Sign)>) {
    let (l, r) = (g.index() - 1, g.index());
    if pos != l && pos != r {
        return (pos, None);
    }
    let other = if pos == l { r } else { l };
    let visit = match g {
        Generator::Sigma(_) => Some((
            if pos == l { Role::Over } else { Role::Under },
            Sign::Positive,
        )),
        Generator::SigmaInv(_) => Some((
            if pos == r { Role::Over } else { Role::Under },
            Sign::Negative,
        )),
        Generator::Tau(_) => None,
    };
    (other, visit)
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.gens.iter().map(Generator::to_string).collect();
        write!(f, "{}", words.join(" "))
    }
}

/// `ρ(w)` on `2n` scalar coordinates. `σ_i` acts on the block pair
/// `(i, i + 1)` by `S`, `σ_i⁻¹` by `S⁻¹` and `τ_i` swaps the blocks; the
/// letters act in word order, so the first letter is applied first.
pub fn braid_rep(switch: &Switch, word: &BraidWord) -> Result<Matrix, LinkError> {
    let f = switch.field();
    let n = 2 * word.strands;
    let s = switch.matrix();
    let s_inv = if word
        .gens
        .iter()
        .any(|g| matches!(g, Generator::SigmaInv(_)))
    {
        Some(
            switch
                .inverse_matrix()
                .map_err(|_| LinkError::NonInvertibleSwitch)?,
        )
    } else {
        None
    };
    let swap = Matrix::from_ints(
        f,
        &[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0]],
    );
    let mut rho = Matrix::identity(f, n);
    for g in &word.gens {
        let local = match g {
            Generator::Sigma(_) => &s,
            Generator::SigmaInv(_) => s_inv.as_ref().expect("computed above"),
            Generator::Tau(_) => &swap,
        };
        let mut m = Matrix::identity(f, n);
        m.set_submatrix(2 * (g.index() - 1), 2 * (g.index() - 1), local);
        rho = m.mul(&rho)?;
    }
    Ok(rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::solver::HyperbolicParams;

    fn example() -> Switch {
        let p = HyperbolicParams::from_ints(Field::Rationals, [3, 1, 1, 0, 1]);
        let (a, b) = crate::solver::hyperbolic_family(&p).unwrap();
        Switch::noncommutative(&a, &b).unwrap()
    }

    #[test]
    fn parses_examples() {
        let w = BraidWord::parse("s1 s1", 2).unwrap();
        assert_eq!(w.generators(), &[Generator::Sigma(1), Generator::Sigma(1)]);
        assert_eq!(
            BraidWord::parse("v1", 2).unwrap().generators(),
            &[Generator::Tau(1)]
        );
        assert_eq!(
            BraidWord::parse("s3", 2),
            Err(LinkError::IndexOutOfRange {
                index: 3,
                strands: 2
            })
        );
        assert!(matches!(
            BraidWord::parse("s1 x2", 3),
            Err(LinkError::Syntax { position: 1, .. })
        ));
        assert!(matches!(
            BraidWord::parse("s", 3),
            Err(LinkError::Syntax { .. })
        ));
        assert_eq!(
            BraidWord::parse("s1,S2 v1", 3).unwrap().to_string(),
            "s1 S2 v1"
        );
    }

    #[test]
    fn empty_and_inverse_pair_are_identity() {
        let s = example();
        let f = s.field();
        assert_eq!(
            braid_rep(&s, &BraidWord::parse("", 3).unwrap()).unwrap(),
            Matrix::identity(f, 6)
        );
        assert_eq!(
            braid_rep(&s, &BraidWord::parse("s1 S1", 2).unwrap()).unwrap(),
            Matrix::identity(f, 4)
        );
        assert_eq!(
            braid_rep(&s, &BraidWord::parse("v2 v2", 3).unwrap()).unwrap(),
            Matrix::identity(f, 6)
        );
    }

    #[test]
    fn braid_and_virtual_relations_hold() {
        let s = example();
        let rep = |w: &str| braid_rep(&s, &BraidWord::parse(w, 3).unwrap()).unwrap();
        assert_eq!(rep("s1 s2 s1"), rep("s2 s1 s2"));
        assert_eq!(rep("S1 S2 S1"), rep("S2 S1 S2"));
        assert_eq!(rep("v1 v2 v1"), rep("v2 v1 v2"));
        assert_eq!(rep("s1 v2 v1"), rep("v2 v1 s2"));
        assert_ne!(rep("s1 s2"), rep("s2 s1"));
    }

    #[test]
    fn singular_switch_rejects_inverse_letters() {
        let f = Field::Rationals;
        let b = crate::quat2::Mat2::from_ints(f, [[2, 0], [0, 2]]);
        let s = Switch::commutative(
            &b,
            &b.inverse().unwrap(),
            crate::switch::CommutativeVariant::Type0,
        )
        .unwrap();
        // A = 0 and D = 1 - BC = 0: S is the block swap scaled, still invertible
        assert!(braid_rep(&s, &BraidWord::parse("S1", 2).unwrap()).is_ok());
        let zero = crate::quat2::Mat2::zero(f);
        let raw = Switch::raw(zero.clone(), zero.clone(), zero.clone(), zero).unwrap();
        assert_eq!(
            braid_rep(&raw, &BraidWord::parse("S1", 2).unwrap()),
            Err(LinkError::NonInvertibleSwitch)
        );
    }

    #[test]
    fn closures() {
        let vt = BraidWord::parse("s1 s1 v1", 2).unwrap();
        assert_eq!(vt.closure_components(), 1);
        assert_eq!(vt.closure_gauss().unwrap().to_string(), "O1+U2+U1+O2+");
        assert_eq!(
            BraidWord::parse("s1 s1", 2).unwrap().closure_components(),
            2
        );
        assert!(BraidWord::parse("s1 s1", 2)
            .unwrap()
            .closure_gauss()
            .is_err());
        assert_eq!(
            BraidWord::parse("S1", 2)
                .unwrap()
                .closure_gauss()
                .unwrap()
                .to_string(),
            "U1-O1-"
        );
        assert!(BraidWord::parse("", 1)
            .unwrap()
            .closure_gauss()
            .unwrap()
            .is_empty());
    }
}
