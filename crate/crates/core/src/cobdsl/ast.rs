use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// The generator alphabet of cobordism words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeneratorKind {
    /// `whistle(H)`: an `H`-labeled interval into a circle.
    Whistle,
    /// `cowhistle(H)`: the reverse of the whistle.
    Cowhistle,
    /// `upsilon(K,H,L)`: intervals `(K,H)` and `(H,L)` into `(K,L)`.
    Upsilon,
    Coupsilon,
    CylClosed,
    CylOpen,
    /// The Dehn twist of the cylinder (B-V operator).
    Bv,
    /// A named closed-sector generator supplied by a plug-in.
    PantsPlug,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 8] = [
        GeneratorKind::Whistle,
        GeneratorKind::Cowhistle,
        GeneratorKind::Upsilon,
        GeneratorKind::Coupsilon,
        GeneratorKind::CylClosed,
        GeneratorKind::CylOpen,
        GeneratorKind::Bv,
        GeneratorKind::PantsPlug,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::Whistle => "whistle",
            GeneratorKind::Cowhistle => "cowhistle",
            GeneratorKind::Upsilon => "upsilon",
            GeneratorKind::Coupsilon => "coupsilon",
            GeneratorKind::CylClosed => "cyl_closed",
            GeneratorKind::CylOpen => "cyl_open",
            GeneratorKind::Bv => "bv",
            GeneratorKind::PantsPlug => "pants_plug",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            GeneratorKind::CylClosed | GeneratorKind::Bv => 0,
            GeneratorKind::Whistle | GeneratorKind::Cowhistle | GeneratorKind::PantsPlug => 1,
            GeneratorKind::CylOpen => 2,
            GeneratorKind::Upsilon | GeneratorKind::Coupsilon => 3,
        }
    }

    pub fn from_name(name: &str) -> Option<GeneratorKind> {
        GeneratorKind::ALL.into_iter().find(|g| g.name() == name)
    }

    /// Whether the arguments are subgroup labels (the plug-in slot takes a
    /// plug-in name instead).
    pub fn takes_labels(self) -> bool {
        self != GeneratorKind::PantsPlug
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub kind: GeneratorKind,
    pub args: Vec<String>,
}

impl Generator {
    pub fn new(kind: GeneratorKind, args: &[&str]) -> Generator {
        Generator { kind, args: args.iter().map(|a| a.to_string()).collect() }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind.name())?;
        if self.kind.arity() > 0 {
            write!(f, "({})", self.args.join(","))?;
        }
        Ok(())
    }
}

/// A cobordism word. `Seq([a, b])` is `a; b`, the gluing of `b`'s outgoing
/// boundary to `a`'s incoming boundary, whose dual operation applies the
/// dual of `a` first. `Union` is disjoint union, left to right.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Expr {
    Gen(Generator),
    Seq(Vec<Expr>),
    Union(Vec<Expr>),
}

impl Expr {
    pub fn gen(kind: GeneratorKind, args: &[&str]) -> Expr {
        Expr::Gen(Generator::new(kind, args))
    }

    /// Leaves in left-to-right order.
    pub fn generators(&self) -> Vec<&Generator> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect<'a>(&'a self, out: &mut Vec<&'a Generator>) {
        match self {
            Expr::Gen(g) => out.push(g),
            Expr::Seq(xs) | Expr::Union(xs) => xs.iter().for_each(|x| x.collect(out)),
        }
    }

    /// Subgroup labels mentioned by the word, each once, in order of appearance.
    pub fn labels(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for g in self.generators() {
            if g.kind.takes_labels() {
                for a in &g.args {
                    if !out.contains(&a.as_str()) {
                        out.push(a);
                    }
                }
            }
        }
        out
    }

    /// Number of generators.
    pub fn len(&self) -> usize {
        self.generators().len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Flattens nested `;` and `|` nodes.
pub fn normalize(e: &Expr) -> Expr {
    match e {
        Expr::Gen(g) => Expr::Gen(g.clone()),
        Expr::Seq(xs) => {
            let mut out = Vec::new();
            for x in xs {
                match normalize(x) {
                    Expr::Seq(inner) => out.extend(inner),
                    y => out.push(y),
                }
            }
            Expr::Seq(out)
        }
        Expr::Union(xs) => {
            let mut out = Vec::new();
            for x in xs {
                match normalize(x) {
                    Expr::Union(inner) => out.extend(inner),
                    y => out.push(y),
                }
            }
            Expr::Union(out)
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Gen(g) => write!(f, "{g}"),
            Expr::Seq(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("; ")?;
                    }
                    match x {
                        Expr::Seq(_) => write!(f, "({x})")?,
                        _ => write!(f, "{x}")?,
                    }
                }
                Ok(())
            }
            Expr::Union(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" | ")?;
                    }
                    match x {
                        Expr::Gen(_) => write!(f, "{x}")?,
                        _ => write!(f, "({x})")?,
                    }
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Semi,
    Bar,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let single = match c {
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b',' => Some(Tok::Comma),
            b';' => Some(Tok::Semi),
            b'|' => Some(Tok::Bar),
            _ => None,
        };
        if let Some(t) = single {
            out.push((i, t));
            i += 1;
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_alphanumeric() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else {
            let ch = text[i..].chars().next().unwrap_or('?');
            return Err(Error::Parse { offset: i, message: format!("unexpected character `{ch}`") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { offset: self.offset(), message: message.into() })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut parts = alloc::vec![self.union()?];
        while let Some(Tok::Semi) = self.peek() {
            self.pos += 1;
            parts.push(self.union()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Expr::Seq(parts) })
    }

    fn union(&mut self) -> Result<Expr> {
        let mut parts = alloc::vec![self.atom()?];
        while let Some(Tok::Bar) = self.peek() {
            self.pos += 1;
            parts.push(self.atom()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Expr::Union(parts) })
    }

    fn atom(&mut self) -> Result<Expr> {
        let start = self.offset();
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => self.err("expected `)`"),
                }
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let kind = GeneratorKind::from_name(&name).ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
                let mut args = Vec::new();
                if let Some(Tok::LParen) = self.peek() {
                    self.pos += 1;
                    if let Some(Tok::RParen) = self.peek() {
                        self.pos += 1;
                    } else {
                        loop {
                            match self.peek().cloned() {
                                Some(Tok::Ident(a)) => {
                                    self.pos += 1;
                                    args.push(a);
                                }
                                _ => return self.err("expected a label"),
                            }
                            match self.peek() {
                                Some(Tok::Comma) => self.pos += 1,
                                Some(Tok::RParen) => {
                                    self.pos += 1;
                                    break;
                                }
                                _ => return self.err("expected `,` or `)`"),
                            }
                        }
                    }
                }
                if args.len() != kind.arity() {
                    return Err(Error::Parse {
                        offset: start,
                        message: format!("`{name}` takes {} argument(s), found {}", kind.arity(), args.len()),
                    });
                }
                Ok(Expr::Gen(Generator { kind, args }))
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses one cobordism word.
pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(text)?, pos: 0, end: text.len() };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// A file of words: one word per line, `#` comments, and an optional
/// `group <G>` directive fixing the ambient group for the lines below it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Program {
    pub statements: Vec<Statement>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Statement {
    /// 1-based line number.
    pub line: usize,
    pub group: Option<String>,
    pub expr: Expr,
}

/// Parse errors are reported with offsets into the whole text.
pub fn parse_program(text: &str) -> Result<Program> {
    let mut statements = Vec::new();
    let mut group = None;
    let mut base = 0;
    for (n, raw) in text.split('\n').enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let body = line.trim();
        let lead = line.len() - line.trim_start().len();
        if let Some(rest) = body.strip_prefix("group").filter(|r| r.starts_with(char::is_whitespace)) {
            let g = rest.trim();
            if g.is_empty() || !g.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_') {
                return Err(Error::Parse { offset: base + lead, message: "expected `group <name>`".into() });
            }
            group = Some(g.to_string());
        } else if !body.is_empty() {
            let expr = parse(body).map_err(|e| match e {
                Error::Parse { offset, message } => Error::Parse { offset: base + lead + offset, message },
                other => other,
            })?;
            statements.push(Statement { line: n + 1, group: group.clone(), expr });
        }
        base += raw.len() + 1;
    }
    Ok(Program { statements })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        let e = parse("whistle(T2); cowhistle(T2)").unwrap();
        assert_eq!(
            e,
            Expr::Seq(alloc::vec![
                Expr::gen(GeneratorKind::Whistle, &["T2"]),
                Expr::gen(GeneratorKind::Cowhistle, &["T2"])
            ])
        );
        let u = parse("upsilon(T2,T2,T2) | cyl_closed").unwrap();
        assert!(matches!(u, Expr::Union(ref xs) if xs.len() == 2));
        assert_eq!(format!("{u}"), "upsilon(T2,T2,T2) | cyl_closed");
        assert_eq!(parse("cyl_closed()").unwrap(), parse("cyl_closed").unwrap());
        assert_eq!(parse("bv | bv; bv").unwrap(), parse("(bv | bv); bv").unwrap());
    }

    #[test]
    fn errors() {
        assert!(matches!(parse("whistle("), Err(Error::Parse { offset: 8, .. })));
        assert!(matches!(parse("whistle(T2"), Err(Error::Parse { offset: 10, .. })));
        assert!(matches!(parse("whistel(T2)"), Err(Error::UnknownGenerator(_))));
        assert!(matches!(parse("upsilon(T2, T2)"), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(parse("bv;"), Err(Error::Parse { offset: 3, .. })));
        assert!(matches!(parse("bv $"), Err(Error::Parse { offset: 3, .. })));
    }

    #[test]
    fn normal_forms() {
        let n = |s: &str| format!("{}", normalize(&parse(s).unwrap()));
        assert_eq!(n("(bv; bv); cyl_closed"), "bv; bv; cyl_closed");
        assert_eq!(n("bv | (bv | cyl_closed)"), "bv | bv | cyl_closed");
        assert_eq!(n("whistle(T2); cowhistle(T2)"), "whistle(T2); cowhistle(T2)");
        assert_eq!(format!("{}", parse("(bv; bv); bv").unwrap()), "(bv; bv); bv");
    }

    #[test]
    fn programs() {
        let p = parse_program("# demo\ngroup U2\nwhistle(T2); cowhistle(T2)\n\nbv  # twist\n").unwrap();
        assert_eq!(p.statements.len(), 2);
        assert_eq!(p.statements[0].group.as_deref(), Some("U2"));
        assert_eq!(p.statements[1].line, 5);
        match parse_program("bv\n  whistle(") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 13),
            other => panic!("{other:?}"),
        }
    }
}
