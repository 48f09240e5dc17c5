//! Text format for presentations and homomorphisms.
//!
//! ```text
//! group H {
//!   gens: a1, a2, a3, a4, c;
//!   rels: [a1,a3][a2,a4] c^-1, [a1,c], [a2,c], [a3,c], [a4,c];
//!   central: c;
//! }
//!
//! hom f : F2 -> H { x => a1, y => [a1, a2]^2 }
//! hom g = f . k;
//! ```
//!
//! A word is a sequence of terms: `x`, `x^n`, `(w)`, `(w)^n`, `[u,v]`,
//! `[u,v]^n`, or `1` for the identity. Negative exponents invert and
//! `[u,v]` is `u v u⁻¹ v⁻¹`. Whitespace is insignificant. `central:` is an
//! optional clause naming central kernel generators. `hom g = f . k` is the
//! composite `f ∘ k`. A document with no `group` keyword is read as the body
//! of a single group named `G`.

use thiserror::Error;

use super::hom::GroupHom;
use super::{Presentation, PresentationError, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("{line}:{col}: unknown generator `{name}`")]
    UnknownGenerator { line: usize, col: usize, name: String },
    #[error("{line}:{col}: duplicate generator `{name}`")]
    DuplicateGenerator { line: usize, col: usize, name: String },
    #[error("{line}:{col}: unknown group `{name}`")]
    UnknownGroup { line: usize, col: usize, name: String },
    #[error("{line}:{col}: unknown homomorphism `{name}`")]
    UnknownHom { line: usize, col: usize, name: String },
    #[error("{line}:{col}: `{name}` is already defined")]
    Redefinition { line: usize, col: usize, name: String },
    #[error("{line}:{col}: {message}")]
    Invalid {
        line: usize,
        col: usize,
        message: String,
    },
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Sym(char),
    Arrow,
    FatArrow,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::Arrow => "`->`".into(),
            Tok::FatArrow => "`=>`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut advance = |n: usize, i: &mut usize| {
            *i += n;
            col += n;
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            advance(1, &mut i);
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                advance(1, &mut i);
            }
            out.push(Spanned {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: l0,
                col: c0,
            });
            continue;
        } else if c.is_ascii_digit() || (c == '-' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let start = i;
            advance(1, &mut i);
            while i < chars.len() && chars[i].is_ascii_digit() {
                advance(1, &mut i);
            }
            let s: String = chars[start..i].iter().collect();
            let n = s.parse().map_err(|_| ParseError::Syntax {
                line: l0,
                col: c0,
                message: format!("integer `{s}` out of range"),
            })?;
            out.push(Spanned {
                tok: Tok::Int(n),
                line: l0,
                col: c0,
            });
            continue;
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            advance(2, &mut i);
            Tok::Arrow
        } else if c == '=' && chars.get(i + 1) == Some(&'>') {
            advance(2, &mut i);
            Tok::FatArrow
        } else if "{}:;,[]()^=.".contains(c) {
            advance(1, &mut i);
            Tok::Sym(c)
        } else {
            return Err(ParseError::Syntax {
                line: l0,
                col: c0,
                message: format!("unexpected character `{c}`"),
            });
        };
        out.push(Spanned {
            tok,
            line: l0,
            col: c0,
        });
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

/// A group declared in a document, with its optional `central:` clause.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupDecl {
    pub presentation: Presentation,
    pub central: Vec<String>,
}

/// Everything declared in one input file, in declaration order.
#[derive(Clone, Debug, Default)]
pub struct Document {
    pub groups: Vec<GroupDecl>,
    pub homs: Vec<GroupHom>,
}

impl Document {
    pub fn group(&self, name: &str) -> Option<&GroupDecl> {
        self.groups.iter().find(|g| g.presentation.name() == name)
    }

    pub fn hom(&self, name: &str) -> Option<&GroupHom> {
        self.homs.iter().find(|h| h.name() == name)
    }
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> (usize, usize) {
        let s = &self.toks[self.pos];
        (s.line, s.col)
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        ParseError::Syntax {
            line,
            col,
            message: message.into(),
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if *self.peek() == Tok::Sym(c) {
            self.next();
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`, found {}", self.peek().describe())))
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn expect_ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.next();
                Ok(s)
            }
            t => Err(self.error(format!("expected a name, found {}", t.describe()))),
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.next();
                Ok(())
            }
            t => Err(self.error(format!("expected `{kw}`, found {}", t.describe()))),
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    /// `NAME ("," NAME)*`, possibly empty, up to `;`.
    fn name_list(&mut self) -> Result<Vec<(String, (usize, usize))>, ParseError> {
        let mut names = Vec::new();
        if *self.peek() == Tok::Sym(';') {
            return Ok(names);
        }
        loop {
            let at = self.here();
            names.push((self.expect_ident()?, at));
            if !self.eat_sym(',') {
                break;
            }
        }
        Ok(names)
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        if self.eat_sym('^') {
            match self.next() {
                Tok::Int(n) => Ok(n),
                t => Err(self.error(format!("expected an exponent, found {}", t.describe()))),
            }
        } else {
            Ok(1)
        }
    }

    fn starts_term(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_) | Tok::Sym('(') | Tok::Sym('[') | Tok::Int(1))
    }

    fn word(&mut self, gens: &[String]) -> Result<Word, ParseError> {
        if !self.starts_term() {
            return Err(self.error(format!("expected a word, found {}", self.peek().describe())));
        }
        let mut w = Word::identity();
        while self.starts_term() {
            let t = self.term(gens)?;
            w = w.mul(&t);
        }
        Ok(w)
    }

    fn term(&mut self, gens: &[String]) -> Result<Word, ParseError> {
        let (line, col) = self.here();
        let base = match self.next() {
            Tok::Ident(name) => match gens.iter().position(|g| *g == name) {
                Some(i) => Word::generator(i),
                None => return Err(ParseError::UnknownGenerator { line, col, name }),
            },
            Tok::Int(1) => Word::identity(),
            Tok::Sym('(') => {
                let w = self.word(gens)?;
                self.expect_sym(')')?;
                w
            }
            Tok::Sym('[') => {
                let u = self.word(gens)?;
                self.expect_sym(',')?;
                let v = self.word(gens)?;
                self.expect_sym(']')?;
                Word::commutator(&u, &v)
            }
            t => return Err(self.error(format!("unexpected {}", t.describe()))),
        };
        let e = self.exponent()?;
        Ok(base.pow(e))
    }

    /// `gens: …; rels: …; [central: …;]`
    fn group_body(&mut self, name: String) -> Result<GroupDecl, ParseError> {
        self.expect_keyword("gens")?;
        self.expect_sym(':')?;
        let gens = self.name_list()?;
        self.expect_sym(';')?;
        let mut names: Vec<String> = Vec::new();
        for (g, (line, col)) in gens {
            if names.contains(&g) {
                return Err(ParseError::DuplicateGenerator { line, col, name: g });
            }
            names.push(g);
        }
        self.expect_keyword("rels")?;
        self.expect_sym(':')?;
        let mut rels = Vec::new();
        if *self.peek() != Tok::Sym(';') {
            loop {
                rels.push(self.word(&names)?);
                if !self.eat_sym(',') {
                    break;
                }
            }
        }
        self.expect_sym(';')?;
        let mut central = Vec::new();
        if self.at_keyword("central") {
            self.next();
            self.expect_sym(':')?;
            for (c, (line, col)) in self.name_list()? {
                if !names.contains(&c) {
                    return Err(ParseError::UnknownGenerator { line, col, name: c });
                }
                central.push(c);
            }
            self.expect_sym(';')?;
        }
        let (line, col) = self.here();
        let presentation = Presentation::new(name, names, rels).map_err(|e| match e {
            PresentationError::DuplicateGenerator(name) => ParseError::DuplicateGenerator { line, col, name },
            other => ParseError::Invalid {
                line,
                col,
                message: other.to_string(),
            },
        })?;
        Ok(GroupDecl {
            presentation,
            central,
        })
    }

    fn group_item(&mut self, doc: &Document) -> Result<GroupDecl, ParseError> {
        self.expect_keyword("group")?;
        let (line, col) = self.here();
        let name = self.expect_ident()?;
        if doc.group(&name).is_some() {
            return Err(ParseError::Redefinition { line, col, name });
        }
        self.expect_sym('{')?;
        let g = self.group_body(name)?;
        self.expect_sym('}')?;
        Ok(g)
    }

    fn lookup_group<'d>(&self, doc: &'d Document, name: &str, at: (usize, usize)) -> Result<&'d GroupDecl, ParseError> {
        doc.group(name).ok_or_else(|| ParseError::UnknownGroup {
            line: at.0,
            col: at.1,
            name: name.to_string(),
        })
    }

    fn hom_item(&mut self, doc: &Document) -> Result<GroupHom, ParseError> {
        self.expect_keyword("hom")?;
        let at = self.here();
        let name = self.expect_ident()?;
        if doc.hom(&name).is_some() {
            return Err(ParseError::Redefinition {
                line: at.0,
                col: at.1,
                name,
            });
        }
        if self.eat_sym('=') {
            return self.composition(doc, name);
        }
        self.expect_sym(':')?;
        let src_at = self.here();
        let src = self.expect_ident()?;
        match self.next() {
            Tok::Arrow => {}
            t => return Err(self.error(format!("expected `->`, found {}", t.describe()))),
        }
        let tgt_at = self.here();
        let tgt = self.expect_ident()?;
        let source = self.lookup_group(doc, &src, src_at)?.presentation.clone();
        let target = self.lookup_group(doc, &tgt, tgt_at)?.presentation.clone();
        self.expect_sym('{')?;
        let mut images: Vec<Option<Word>> = vec![None; source.ngens()];
        if *self.peek() != Tok::Sym('}') {
            loop {
                let (line, col) = self.here();
                let g = self.expect_ident()?;
                let Some(i) = source.generator_index(&g) else {
                    return Err(ParseError::UnknownGenerator { line, col, name: g });
                };
                if images[i].is_some() {
                    return Err(ParseError::Invalid {
                        line,
                        col,
                        message: format!("generator `{g}` is assigned twice"),
                    });
                }
                match self.next() {
                    Tok::FatArrow => {}
                    t => return Err(self.error(format!("expected `=>`, found {}", t.describe()))),
                }
                images[i] = Some(self.word(target.generator_names())?);
                if !self.eat_sym(',') {
                    break;
                }
            }
        }
        self.expect_sym('}')?;
        self.eat_sym(';');
        let missing: Vec<&str> = images
            .iter()
            .zip(source.generator_names())
            .filter(|(w, _)| w.is_none())
            .map(|(_, n)| n.as_str())
            .collect();
        if !missing.is_empty() {
            return Err(ParseError::Invalid {
                line: at.0,
                col: at.1,
                message: format!("no image given for {}", missing.join(", ")),
            });
        }
        let images = images.into_iter().map(Option::unwrap).collect();
        GroupHom::new(name, source, target, images).map_err(|e| ParseError::Invalid {
            line: at.0,
            col: at.1,
            message: e.to_string(),
        })
    }

    /// `f . g . h` is `f ∘ g ∘ h`.
    fn composition(&mut self, doc: &Document, name: String) -> Result<GroupHom, ParseError> {
        let mut parts = Vec::new();
        loop {
            let (line, col) = self.here();
            let n = self.expect_ident()?;
            let h = doc.hom(&n).ok_or(ParseError::UnknownHom { line, col, name: n })?;
            parts.push(((line, col), h.clone()));
            if !self.eat_sym('.') {
                break;
            }
        }
        self.eat_sym(';');
        let (_, mut acc) = parts.pop().expect("at least one factor");
        while let Some(((line, col), outer)) = parts.pop() {
            acc = outer.compose(&acc).map_err(|e| ParseError::Invalid {
                line,
                col,
                message: e.to_string(),
            })?;
        }
        Ok(acc.renamed(name))
    }

    fn document(&mut self) -> Result<Document, ParseError> {
        let mut doc = Document::default();
        if self.at_keyword("gens") {
            let g = self.group_body("G".to_string())?;
            doc.groups.push(g);
        } else {
            while *self.peek() != Tok::Eof {
                if self.at_keyword("group") {
                    let g = self.group_item(&doc)?;
                    doc.groups.push(g);
                } else if self.at_keyword("hom") {
                    let h = self.hom_item(&doc)?;
                    doc.homs.push(h);
                } else {
                    return Err(self.error(format!("expected `group` or `hom`, found {}", self.peek().describe())));
                }
            }
        }
        if *self.peek() != Tok::Eof {
            return Err(self.error(format!("unexpected {} after the group body", self.peek().describe())));
        }
        Ok(doc)
    }
}

pub fn parse_document(text: &str) -> Result<Document, ParseError> {
    let toks = lex(text)?;
    Parser { toks, pos: 0 }.document()
}

/// Parses a document holding exactly one group.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let doc = parse_document(text)?;
    match doc.groups.len() {
        1 => Ok(doc.groups.into_iter().next().unwrap().presentation),
        n => Err(ParseError::Syntax {
            line: 1,
            col: 1,
            message: format!("expected exactly one group, found {n}"),
        }),
    }
}

/// Parses a single word over the given generator names.
pub fn parse_word(text: &str, gens: &[String]) -> Result<Word, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let w = p.word(gens)?;
    if *p.peek() != Tok::Eof {
        return Err(p.error(format!("unexpected {}", p.peek().describe())));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutator_sugar() {
        let p = parse_presentation("gens: x,y; rels: [x,y];").unwrap();
        assert_eq!(p.ngens(), 2);
        assert_eq!(p.relators(), &[Word::from_signed(&[1, 2, -1, -2])]);
    }

    #[test]
    fn power_expansion() {
        let p = parse_presentation("gens: a; rels: a^3;").unwrap();
        assert_eq!(p.relators(), &[Word::from_signed(&[1, 1, 1])]);
        let p = parse_presentation("gens: a, b; rels: (a b)^-2, [a,b]^2, 1;").unwrap();
        assert_eq!(p.relators()[0], Word::from_signed(&[-2, -1, -2, -1]));
        assert_eq!(p.relators()[1].len(), 8);
        assert!(p.relators()[2].is_empty());
    }

    #[test]
    fn intro_group_genus_two() {
        let text = "group H {
            gens: a1, a2, a3, a4, c;
            rels: [a1,a3][a2,a4] c^-1, [a1,c], [a2,c], [a3,c], [a4,c];
            central: c;
        }";
        let doc = parse_document(text).unwrap();
        let g = &doc.groups[0];
        assert_eq!(g.central, vec!["c".to_string()]);
        let p = &g.presentation;
        assert_eq!(p.ngens(), 5);
        assert_eq!(p.relators().len(), 5);
        assert_eq!(p.display_word(&p.relators()[0]).to_string(), "a1 a3 a1^-1 a3^-1 a2 a4 a2^-1 a4^-1 c^-1");
    }

    #[test]
    fn errors_carry_positions() {
        match parse_presentation("gens: x;\nrels: x y;") {
            Err(ParseError::UnknownGenerator { line: 2, col: 9, name }) => assert_eq!(name, "y"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_presentation("gens: x, x; rels: ;"),
            Err(ParseError::DuplicateGenerator { name, .. }) if name == "x"
        ));
        assert!(matches!(parse_presentation("gens: x; rels: x^;"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_presentation("gens: x rels: x;"), Err(ParseError::Syntax { line: 1, col: 9, .. })));
    }

    #[test]
    fn homs_and_composition() {
        let text = "
            group A { gens: x, y; rels: [x,y]; }
            group B { gens: a1, a2, a3, a4; rels: [a1,a2],[a1,a3],[a1,a4],[a2,a3],[a2,a4],[a3,a4]; }
            hom p : A -> B { x => a1, y => a2 }
            hom q : B -> A { a1 => x, a2 => 1, a3 => y, a4 => 1 }
            hom qp = q . p;
        ";
        let doc = parse_document(text).unwrap();
        let qp = doc.hom("qp").unwrap();
        assert_eq!(qp.source().name(), "A");
        assert_eq!(qp.target().name(), "A");
        assert_eq!(qp.images(), &[Word::generator(0), Word::identity()]);
    }

    #[test]
    fn hom_errors() {
        let base = "group A { gens: x; rels: ; } ";
        assert!(matches!(
            parse_document(&format!("{base} hom f : A -> Z {{ x => x }}")),
            Err(ParseError::UnknownGroup { .. })
        ));
        assert!(matches!(
            parse_document(&format!("{base} hom f : A -> A {{ }}")),
            Err(ParseError::Invalid { .. })
        ));
        assert!(matches!(
            parse_document(&format!("{base} hom f = g;")),
            Err(ParseError::UnknownHom { .. })
        ));
    }

    #[test]
    fn single_word() {
        let names: Vec<String> = vec!["a1".into(), "a2".into()];
        assert_eq!(parse_word("a1 a2^-1 a2", &names).unwrap(), Word::generator(0));
        assert!(parse_word("a1 ;", &names).is_err());
    }
}
