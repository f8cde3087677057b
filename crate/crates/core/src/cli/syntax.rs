//! The word grammar.
//!
//! ```text
//! word := term ('*' term)*
//! term := gen ('^' int)?
//! gen  := 'S(' id ',' id ')'
//!       | 'T(P={' ids '}; l=' levels '; h=' int ')'
//!       | '1'
//! ```
//!
//! Whitespace is ignored between tokens. Letters compose right to left: in
//! `S(1,2)*S(2,1)` the shift `S(2,1)` acts first.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::curves::{CurveShadow, Orientation};
use crate::error::{Error, Result};
use crate::mcg::{Generator, Letter, MappingWord};
use crate::surface::SurfaceSpec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenSyntax {
    Identity,
    Shift {
        from: String,
        to: String,
    },
    Twist {
        arms: Vec<String>,
        levels: Vec<u64>,
        core_handles: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermSyntax {
    pub generator: GenSyntax,
    pub exponent: i64,
}

/// Parsed but unresolved word: identifiers are still raw tokens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordSyntax {
    pub terms: Vec<TermSyntax>,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn error(&mut self, expected: &str) -> Error {
        self.skip_ws();
        let found = match self.src[self.pos..].chars().next() {
            Some(c) => format!("`{c}`"),
            None => "end of input".to_string(),
        };
        Error::Parse {
            position: self.pos,
            expected: expected.to_string(),
            found,
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(&format!("`{c}`")))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.error("identifier"));
        }
        self.pos += len;
        Ok(rest[..len].to_string())
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[self.pos..];
        let sign = usize::from(rest.starts_with('-'));
        let digits = rest[sign..]
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len() - sign);
        if digits == 0 {
            return Err(self.error("integer"));
        }
        let text = &rest[..sign + digits];
        self.pos += sign + digits;
        text.parse().map_err(|_| Error::Parse {
            position: start,
            expected: "integer in range".into(),
            found: format!("`{text}`"),
        })
    }

    fn nonneg<T: TryFrom<i64>>(&mut self) -> Result<T> {
        let start = {
            self.skip_ws();
            self.pos
        };
        let v = self.int()?;
        T::try_from(v).map_err(|_| Error::Parse {
            position: start,
            expected: "nonnegative integer".into(),
            found: format!("`{v}`"),
        })
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        for c in kw.chars() {
            self.expect(c)?;
        }
        Ok(())
    }

    fn generator(&mut self) -> Result<GenSyntax> {
        match self.peek() {
            Some('1') => {
                self.pos += 1;
                Ok(GenSyntax::Identity)
            }
            Some('S') => {
                self.pos += 1;
                self.expect('(')?;
                let from = self.ident()?;
                self.expect(',')?;
                let to = self.ident()?;
                self.expect(')')?;
                Ok(GenSyntax::Shift { from, to })
            }
            Some('T') => {
                self.pos += 1;
                self.expect('(')?;
                self.keyword("P={")?;
                let mut arms = Vec::new();
                if self.peek() != Some('}') {
                    arms.push(self.ident()?);
                    while self.eat(',') {
                        arms.push(self.ident()?);
                    }
                }
                self.expect('}')?;
                self.expect(';')?;
                self.keyword("l=")?;
                let levels_at = self.pos;
                let mut levels = Vec::new();
                if self.peek() != Some(';') {
                    levels.push(self.nonneg()?);
                    while self.eat(',') {
                        levels.push(self.nonneg()?);
                    }
                }
                if levels.len() != arms.len() {
                    return Err(Error::Parse {
                        position: levels_at,
                        expected: format!("{} levels", arms.len()),
                        found: format!("{} levels", levels.len()),
                    });
                }
                self.expect(';')?;
                self.keyword("h=")?;
                let core_handles = self.nonneg()?;
                self.expect(')')?;
                Ok(GenSyntax::Twist {
                    arms,
                    levels,
                    core_handles,
                })
            }
            _ => Err(self.error("`S(`, `T(` or `1`")),
        }
    }

    fn term(&mut self) -> Result<TermSyntax> {
        let generator = self.generator()?;
        let exponent = if self.eat('^') {
            let at = {
                self.skip_ws();
                self.pos
            };
            let k = self.int()?;
            if k == 0 {
                return Err(Error::Parse {
                    position: at,
                    expected: "nonzero exponent".into(),
                    found: "`0`".into(),
                });
            }
            k
        } else {
            1
        };
        Ok(TermSyntax { generator, exponent })
    }

    fn word(&mut self) -> Result<WordSyntax> {
        let mut terms = vec![self.term()?];
        while self.eat('*') {
            terms.push(self.term()?);
        }
        if self.peek().is_some() {
            return Err(self.error("`*`, `^` or end of input"));
        }
        Ok(WordSyntax { terms })
    }
}

pub fn parse_word(src: &str) -> Result<WordSyntax> {
    Parser { src, pos: 0 }.word()
}

/// Parse a word and resolve its identifiers against `surface`.
pub fn parse_word_on(surface: &SurfaceSpec, src: &str) -> Result<MappingWord> {
    parse_word(src)?.resolve(surface)
}

impl WordSyntax {
    pub fn resolve(&self, surface: &SurfaceSpec) -> Result<MappingWord> {
        let mut letters = Vec::new();
        for term in &self.terms {
            let generator = match &term.generator {
                GenSyntax::Identity => continue,
                GenSyntax::Shift { from, to } => {
                    Generator::shift(surface.resolve_arm(from)?, surface.resolve_arm(to)?)?
                }
                GenSyntax::Twist {
                    arms,
                    levels,
                    core_handles,
                } => {
                    let mut map = BTreeMap::new();
                    for (id, &level) in arms.iter().zip(levels) {
                        if map.insert(surface.resolve_arm(id)?, level).is_some() {
                            return Err(Error::InvalidCurve(format!("arm `{id}` listed twice")));
                        }
                    }
                    Generator::Twist(CurveShadow::new(
                        surface,
                        map,
                        *core_handles,
                        BTreeSet::new(),
                        BTreeSet::new(),
                        Orientation::Positive,
                    )?)
                }
            };
            letters.push(Letter {
                generator,
                exponent: term.exponent,
            });
        }
        MappingWord::from_letters(letters)
    }
}

impl fmt::Display for GenSyntax {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenSyntax::Identity => f.write_str("1"),
            GenSyntax::Shift { from, to } => write!(f, "S({from},{to})"),
            GenSyntax::Twist {
                arms,
                levels,
                core_handles,
            } => {
                let levels: Vec<String> = levels.iter().map(u64::to_string).collect();
                write!(
                    f,
                    "T(P={{{}}}; l={}; h={core_handles})",
                    arms.join(","),
                    levels.join(",")
                )
            }
        }
    }
}

impl fmt::Display for WordSyntax {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{}", t.generator)?;
            if t.exponent != 1 {
                write!(f, "^{}", t.exponent)?;
            }
        }
        Ok(())
    }
}

/// Syntax tree of a resolved word, with arms printed as tokens that resolve back.
pub fn word_syntax(surface: &SurfaceSpec, w: &MappingWord) -> WordSyntax {
    let terms: Vec<TermSyntax> = w
        .letters()
        .iter()
        .map(|l| TermSyntax {
            generator: match &l.generator {
                Generator::Shift { from, to } => GenSyntax::Shift {
                    from: surface.arm_token(*from),
                    to: surface.arm_token(*to),
                },
                Generator::Twist(c) => GenSyntax::Twist {
                    arms: c.levels().keys().map(|&a| surface.arm_token(a)).collect(),
                    levels: c.levels().values().copied().collect(),
                    core_handles: c.core_handles(),
                },
            },
            exponent: l.exponent,
        })
        .collect();
    if terms.is_empty() {
        WordSyntax {
            terms: vec![TermSyntax {
                generator: GenSyntax::Identity,
                exponent: 1,
            }],
        }
    } else {
        WordSyntax { terms }
    }
}

pub fn format_word(surface: &SurfaceSpec, w: &MappingWord) -> String {
    word_syntax(surface, w).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_examples() {
        let w = parse_word(" S(1, 2) ^ -3 * T(P={e1,e2}; l=3,4; h=1)*1").unwrap();
        assert_eq!(w.terms.len(), 3);
        assert_eq!(
            w.terms[0],
            TermSyntax {
                generator: GenSyntax::Shift {
                    from: "1".into(),
                    to: "2".into()
                },
                exponent: -3
            }
        );
        assert_eq!(w.to_string(), "S(1,2)^-3*T(P={e1,e2}; l=3,4; h=1)*1");
    }

    #[test]
    fn resolves_against_surface() {
        let ladder = SurfaceSpec::ladder();
        let w = parse_word_on(&ladder, "S(2,1)*S(e1,e2)^2*1").unwrap();
        assert_eq!(
            w,
            MappingWord::shift(1, 0, 1)
                .unwrap()
                .compose(&MappingWord::shift(0, 1, 2).unwrap())
        );
        assert_eq!(format_word(&ladder, &w), "S(2,1)*S(1,2)^2");
        assert_eq!(format_word(&ladder, &MappingWord::identity()), "1");
        assert!(parse_word_on(&ladder, "1").unwrap().is_identity());
        assert!(matches!(parse_word_on(&ladder, "S(1,3)"), Err(Error::UnknownEnd(_))));
        assert!(matches!(
            parse_word_on(&ladder, "S(1,1)"),
            Err(Error::InvalidGenerator(_))
        ));
    }

    #[test]
    fn errors_carry_position() {
        match parse_word("S(1,2)*X") {
            Err(Error::Parse {
                position,
                expected,
                found,
            }) => {
                assert_eq!(position, 7);
                assert!(expected.contains("S("));
                assert_eq!(found, "`X`");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_word("S(1,2"), Err(Error::Parse { position: 5, .. })));
        assert!(matches!(parse_word("S(1,2)^0"), Err(Error::Parse { .. })));
        assert!(matches!(parse_word("T(P={a,b}; l=1; h=0)"), Err(Error::Parse { .. })));
        assert!(matches!(parse_word(""), Err(Error::Parse { position: 0, .. })));
        assert!(matches!(parse_word("S(1,2) S(2,1)"), Err(Error::Parse { .. })));
    }

    fn arb_id() -> impl Strategy<Value = String> {
        "[a-z][a-z0-9_]{0,3}|[1-9]"
    }

    fn arb_term() -> impl Strategy<Value = TermSyntax> {
        let gen = prop_oneof![
            Just(GenSyntax::Identity),
            (arb_id(), arb_id()).prop_map(|(from, to)| GenSyntax::Shift { from, to }),
            (proptest::collection::vec((arb_id(), 0u64..50), 0..3), 0u32..4).prop_map(|(pairs, h)| {
                let (arms, levels) = pairs.into_iter().unzip();
                GenSyntax::Twist {
                    arms,
                    levels,
                    core_handles: h,
                }
            }),
        ];
        (gen, prop_oneof![Just(1i64), -9i64..-1, 2i64..9])
            .prop_map(|(generator, exponent)| TermSyntax { generator, exponent })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(terms in proptest::collection::vec(arb_term(), 1..6)) {
            let w = WordSyntax { terms };
            prop_assert_eq!(parse_word(&w.to_string()).unwrap(), w);
        }

        #[test]
        fn resolved_round_trip(seq in proptest::collection::vec((0usize..3, 0usize..3, -3i64..4), 0..6)) {
            let s = SurfaceSpec::new(0, 0, Vec::<String>::new(), ["2", "b", "c"]).unwrap();
            let letters: Vec<Letter> = seq.into_iter()
                .filter(|&(i, j, k)| i != j && k != 0)
                .map(|(i, j, k)| Letter { generator: Generator::shift(i, j).unwrap(), exponent: k })
                .collect();
            let w = MappingWord::from_letters(letters).unwrap();
            prop_assert_eq!(parse_word_on(&s, &format_word(&s, &w)).unwrap(), w);
        }
    }
}
