//! Signed Gauss codes of one-component virtual knot diagrams, plus
//! programmatic Reidemeister I/II insertions.

use std::collections::BTreeMap;
use std::fmt;

use super::LinkError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Over,
    Under,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

/// One visit of the traversal to a classical crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Passage {
    pub crossing: u32,
    pub role: Role,
    pub sign: Sign,
}

impl fmt::Display for Passage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = match self.role {
            Role::Over => 'O',
            Role::Under => 'U',
        };
        write!(f, "{r}{}{}", self.crossing, self.sign.symbol())
    }
}

/// A validated cyclic sequence of passages: every crossing id occurs once
/// as `O` and once as `U`, with the same sign both times.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussCode {
    passages: Vec<Passage>,
}

/// Where a crossing is visited along the code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingSite {
    pub id: u32,
    pub sign: Sign,
    pub over: usize,
    pub under: usize,
}

impl GaussCode {
    pub fn unknot() -> GaussCode {
        GaussCode::default()
    }

    pub fn new(passages: Vec<Passage>) -> Result<GaussCode, LinkError> {
        let code = GaussCode { passages };
        code.sites()?;
        Ok(code)
    }

    /// Tokens `[OU]<id>[+-]`, optionally separated by whitespace or commas.
    pub fn parse(text: &str) -> Result<GaussCode, LinkError> {
        let mut passages = Vec::new();
        let mut rest = text.trim_start_matches(is_separator);
        while !rest.is_empty() {
            let len = rest.find(['+', '-', '−']).map_or(rest.len(), |i| {
                i + rest[i..].chars().next().map_or(0, char::len_utf8)
            });
            let len = rest[..len].find(is_separator).unwrap_or(len);
            passages.push(parse_token(passages.len(), &rest[..len])?);
            rest = rest[len..].trim_start_matches(is_separator);
        }
        GaussCode::new(passages)
    }

    pub fn passages(&self) -> &[Passage] {
        &self.passages
    }

    pub fn len(&self) -> usize {
        self.passages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.passages.is_empty()
    }

    pub fn crossing_count(&self) -> usize {
        self.passages.len() / 2
    }

    /// Crossings in increasing id order.
    pub fn crossings(&self) -> Vec<CrossingSite> {
        self.sites().expect("validated at construction")
    }

    fn sites(&self) -> Result<Vec<CrossingSite>, LinkError> {
        let mut seen: BTreeMap<u32, (Option<usize>, Option<usize>, Sign)> = BTreeMap::new();
        for (pos, p) in self.passages.iter().enumerate() {
            if p.crossing == 0 {
                return Err(LinkError::Validation(
                    "crossing ids must be positive".into(),
                ));
            }
            let entry = seen.entry(p.crossing).or_insert((None, None, p.sign));
            if entry.2 != p.sign {
                return Err(LinkError::Validation(format!(
                    "crossing {} has passages of opposite sign",
                    p.crossing
                )));
            }
            let slot = match p.role {
                Role::Over => &mut entry.0,
                Role::Under => &mut entry.1,
            };
            if slot.replace(pos).is_some() {
                return Err(LinkError::Validation(format!(
                    "crossing {} has two {:?} passages",
                    p.crossing, p.role
                )));
            }
        }
        seen.into_iter()
            .map(|(id, (o, u, sign))| match (o, u) {
                (Some(over), Some(under)) => Ok(CrossingSite {
                    id,
                    sign,
                    over,
                    under,
                }),
                _ => Err(LinkError::Validation(format!(
                    "crossing {id} appears only once"
                ))),
            })
            .collect()
    }

    fn fresh_id(&self) -> u32 {
        self.passages.iter().map(|p| p.crossing).max().unwrap_or(0) + 1
    }

    /// Reidemeister I: a kink with the given sign inserted before passage
    /// `position`, visited over-first or under-first.
    pub fn with_r1(
        &self,
        position: usize,
        sign: Sign,
        over_first: bool,
    ) -> Result<GaussCode, LinkError> {
        self.check_position(position)?;
        let k = self.fresh_id();
        let (r1, r2) = if over_first {
            (Role::Over, Role::Under)
        } else {
            (Role::Under, Role::Over)
        };
        let mut passages = self.passages.clone();
        let ins = [
            Passage {
                crossing: k,
                role: r1,
                sign,
            },
            Passage {
                crossing: k,
                role: r2,
                sign,
            },
        ];
        passages.splice(position..position, ins);
        GaussCode::new(passages)
    }

    /// Reidemeister II: one strand segment (before passage `first`) passes
    /// over a second segment (before passage `second`, `first <= second`)
    /// twice, at crossings of opposite sign. With `antiparallel` the second
    /// segment meets the two crossings in reverse order.
    pub fn with_r2(
        &self,
        first: usize,
        second: usize,
        sign: Sign,
        antiparallel: bool,
    ) -> Result<GaussCode, LinkError> {
        self.check_position(first)?;
        self.check_position(second)?;
        if first > second {
            return Err(LinkError::BadPosition {
                position: first,
                len: second,
            });
        }
        let (a, b) = (self.fresh_id(), self.fresh_id() + 1);
        let over = [
            Passage {
                crossing: a,
                role: Role::Over,
                sign,
            },
            Passage {
                crossing: b,
                role: Role::Over,
                sign: sign.flip(),
            },
        ];
        let mut under = [
            Passage {
                crossing: a,
                role: Role::Under,
                sign,
            },
            Passage {
                crossing: b,
                role: Role::Under,
                sign: sign.flip(),
            },
        ];
        if antiparallel {
            under.reverse();
        }
        let mut passages = self.passages.clone();
        passages.splice(second..second, under);
        passages.splice(first..first, over);
        GaussCode::new(passages)
    }

    /// Six Reidemeister I and four Reidemeister II variants of `self`,
    /// spread over both signs, both passage orders and three positions.
    pub fn move_variants(&self) -> Vec<GaussCode> {
        use Sign::{Negative, Positive};
        let (mid, end) = (self.len() / 2, self.len());
        let r1 = [
            (0, Positive, true),
            (0, Negative, true),
            (mid, Positive, false),
            (mid, Negative, false),
            (end, Positive, false),
            (end, Negative, true),
        ];
        let r2 = [
            (0, 0, Positive, true),
            (0, end, Negative, false),
            (0, mid, Positive, true),
            (mid, end, Negative, false),
        ];
        r1.iter()
            .map(|&(p, s, o)| self.with_r1(p, s, o))
            .chain(
                r2.iter()
                    .map(|&(a, b, s, anti)| self.with_r2(a, b, s, anti)),
            )
            .collect::<Result<_, _>>()
            .expect("positions lie inside the code")
    }

    fn check_position(&self, position: usize) -> Result<(), LinkError> {
        if position > self.passages.len() {
            return Err(LinkError::BadPosition {
                position,
                len: self.passages.len(),
            });
        }
        Ok(())
    }
}

fn is_separator(c: char) -> bool {
    c.is_whitespace() || c == ','
}

fn parse_token(index: usize, token: &str) -> Result<Passage, LinkError> {
    let err = |reason: &str| LinkError::Syntax {
        position: index,
        token: token.to_string(),
        reason: reason.to_string(),
    };
    let mut chars = token.chars();
    let role = match chars.next() {
        Some('O') => Role::Over,
        Some('U') => Role::Under,
        _ => return Err(err("expected O or U")),
    };
    let rest = chars.as_str();
    let (digits, sign) = if let Some(d) = rest.strip_suffix('+') {
        (d, Sign::Positive)
    } else if let Some(d) = rest.strip_suffix('-').or_else(|| rest.strip_suffix('−')) {
        (d, Sign::Negative)
    } else {
        return Err(err("expected trailing + or -"));
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err("expected a crossing id"));
    }
    let crossing = digits
        .parse()
        .map_err(|_| err("crossing id out of range"))?;
    Ok(Passage {
        crossing,
        role,
        sign,
    })
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.passages {
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for GaussCode {
    type Err = LinkError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GaussCode::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let kink = GaussCode::parse("O1+U1+").unwrap();
        assert_eq!(kink.crossing_count(), 1);
        let vt = GaussCode::parse("O1+, O2+ U1+,U2+").unwrap();
        assert_eq!(vt.to_string(), "O1+O2+U1+U2+");
        assert!(GaussCode::parse("").unwrap().is_empty());
    }

    #[test]
    fn rejects_bad_codes() {
        assert!(matches!(
            GaussCode::parse("O1+U1-"),
            Err(LinkError::Validation(_))
        ));
        assert!(matches!(
            GaussCode::parse("O1+O1+"),
            Err(LinkError::Validation(_))
        ));
        assert!(matches!(
            GaussCode::parse("O1+"),
            Err(LinkError::Validation(_))
        ));
        assert!(matches!(
            GaussCode::parse("O0+U0+"),
            Err(LinkError::Validation(_))
        ));
        match GaussCode::parse("O1+ X1+") {
            Err(LinkError::Syntax { position, .. }) => assert_eq!(position, 1),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            GaussCode::parse("O1 U1"),
            Err(LinkError::Syntax { .. })
        ));
        assert!(matches!(
            GaussCode::parse("O+ U+"),
            Err(LinkError::Syntax { .. })
        ));
    }

    #[test]
    fn sites_locate_both_passages() {
        let vt = GaussCode::parse("O1+O2+U1+U2+").unwrap();
        let c = vt.crossings();
        assert_eq!(
            c[0],
            CrossingSite {
                id: 1,
                sign: Sign::Positive,
                over: 0,
                under: 2
            }
        );
        assert_eq!(
            c[1],
            CrossingSite {
                id: 2,
                sign: Sign::Positive,
                over: 1,
                under: 3
            }
        );
    }

    #[test]
    fn move_examples() {
        let u = GaussCode::unknot();
        assert_eq!(
            u.with_r1(0, Sign::Positive, true).unwrap().to_string(),
            "O1+U1+"
        );
        assert_eq!(
            u.with_r1(0, Sign::Negative, true).unwrap().to_string(),
            "O1-U1-"
        );
        assert_eq!(
            u.with_r2(0, 0, Sign::Positive, true).unwrap().to_string(),
            "O1+O2-U2-U1+"
        );
        assert!(matches!(
            u.with_r1(1, Sign::Positive, true),
            Err(LinkError::BadPosition { .. })
        ));
        let vt = GaussCode::parse("O1+O2+U1+U2+").unwrap();
        assert_eq!(
            vt.with_r2(1, 3, Sign::Negative, false).unwrap().to_string(),
            "O1+O3-O4+O2+U1+U3-U4+U2+"
        );
    }
}
