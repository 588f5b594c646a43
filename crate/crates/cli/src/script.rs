//! The script language: named declarations followed by one `run` line.
//!
//! ```text
//! ring R = QQ[x, y] / (x*y)
//! module M over R = cokernel [x, y; y, 0]
//! point P on R = (0, 0)
//! morphism F : R -> S = { x |-> u, y |-> 0 }
//! run tangent R --side scheme
//! ```

use std::collections::BTreeMap;

use tancat::parse::{parse_poly, parse_rational, tokenize, Cursor, Tok};
use tancat::{Error, FPModule, FPRing, Point, Poly, Result, Side};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// A morphism as written. Whether it is a ring map or a derivation depends on
/// the command that uses it, so it is not checked at parse time.
#[derive(Clone, Debug)]
pub struct MorphismDecl {
    pub domain: String,
    pub codomain: String,
    pub images: Vec<Poly>,
}

#[derive(Clone, Debug)]
pub enum Decl {
    Ring(FPRing),
    Module { over: String, module: FPModule },
    Point { on: String, point: Point },
    Morphism(MorphismDecl),
}

impl Decl {
    pub fn kind(&self) -> &'static str {
        match self {
            Decl::Ring(_) => "ring",
            Decl::Module { .. } => "module",
            Decl::Point { .. } => "point",
            Decl::Morphism(_) => "morphism",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Command {
    /// Command words joined by spaces, e.g. `bundle from-module`.
    pub name: String,
    pub args: Vec<String>,
    pub side: Option<Side>,
    pub format: Option<Format>,
}

#[derive(Clone, Debug)]
pub struct Script {
    pub decls: BTreeMap<String, Decl>,
    pub order: Vec<String>,
    pub command: Command,
}

impl Script {
    pub fn get(&self, name: &str) -> Option<&Decl> {
        self.decls.get(name)
    }
}

const SUBCOMMANDS: [(&str, &[&str]); 3] = [
    ("bundle", &["from-module", "check", "to-module", "derive-sum"]),
    ("vf", &["to-derivation", "from-derivation", "bracket"]),
    ("transpose", &["sharp", "flat"]),
];

pub fn parse(text: &str) -> Result<Script> {
    let toks = tokenize(text)?;
    let mut cur = Cursor::new(&toks);
    let mut decls = BTreeMap::new();
    let mut order = Vec::new();
    let mut command = None;
    loop {
        let t = cur.peek();
        let kw = match &t.tok {
            Tok::Eof => break,
            Tok::Ident(s) => s.clone(),
            _ => return Err(cur.error("expected a declaration or `run`")),
        };
        if command.is_some() {
            return Err(cur.error("nothing may follow the `run` line"));
        }
        if kw == "run" {
            cur.next();
            command = Some(parse_run(&mut cur)?);
            continue;
        }
        let (line, col) = (t.line, t.col);
        cur.next();
        let name = cur.expect_ident()?;
        if decls.contains_key(&name) {
            return Err(Error::Parse { line, col, msg: format!("`{}` is declared twice", name) });
        }
        let decl = match kw.as_str() {
            "ring" => Decl::Ring(parse_ring(&mut cur)?),
            "module" => parse_module(&mut cur, &decls)?,
            "point" => parse_point(&mut cur, &decls)?,
            "morphism" => Decl::Morphism(parse_morphism(&mut cur, &decls)?),
            other => return Err(Error::Parse { line, col, msg: format!("unknown declaration `{}`", other) }),
        };
        decls.insert(name.clone(), decl);
        order.push(name);
    }
    let command = command.ok_or_else(|| cur.error("missing `run` line"))?;
    Ok(Script { decls, order, command })
}

fn parse_ring(cur: &mut Cursor) -> Result<FPRing> {
    cur.expect_sym("=")?;
    cur.expect_keyword("QQ")?;
    cur.expect_sym("[")?;
    let mut vars = Vec::new();
    if !cur.at_sym("]") {
        loop {
            vars.push(cur.expect_ident()?);
            if !cur.eat_sym(",") {
                break;
            }
        }
    }
    cur.expect_sym("]")?;
    let mut rels = Vec::new();
    if cur.eat_sym("/") {
        cur.expect_sym("(")?;
        loop {
            rels.push(parse_poly(cur, &vars)?);
            if !cur.eat_sym(",") {
                break;
            }
        }
        cur.expect_sym(")")?;
    }
    FPRing::new(vars, rels)
}

fn ring_ref<'a>(cur: &mut Cursor, decls: &'a BTreeMap<String, Decl>) -> Result<(String, &'a FPRing)> {
    let t = cur.peek();
    let (line, col) = (t.line, t.col);
    let name = cur.expect_ident()?;
    match decls.get(&name) {
        Some(Decl::Ring(r)) => Ok((name, r)),
        Some(d) => Err(Error::Parse { line, col, msg: format!("`{}` is a {}, not a ring", name, d.kind()) }),
        None => Err(Error::Parse { line, col, msg: format!("unresolved name `{}`", name) }),
    }
}

fn parse_module(cur: &mut Cursor, decls: &BTreeMap<String, Decl>) -> Result<Decl> {
    cur.expect_keyword("over")?;
    let (over, base) = ring_ref(cur, decls)?;
    cur.expect_sym("=")?;
    cur.expect_keyword("cokernel")?;
    cur.expect_sym("[")?;
    let mut rows = Vec::new();
    loop {
        let mut row = Vec::new();
        loop {
            row.push(parse_poly(cur, base.vars())?);
            if !cur.eat_sym(",") {
                break;
            }
        }
        rows.push(row);
        if !cur.eat_sym(";") {
            break;
        }
    }
    let rank = rows[0].len();
    if rows.iter().any(|r| r.len() != rank) {
        return Err(cur.error("rows of a cokernel must have equal length"));
    }
    cur.expect_sym("]")?;
    let module = FPModule::cokernel(base, rank, rows)?;
    Ok(Decl::Module { over, module })
}

fn parse_point(cur: &mut Cursor, decls: &BTreeMap<String, Decl>) -> Result<Decl> {
    cur.expect_keyword("on")?;
    let (on, ring) = ring_ref(cur, decls)?;
    cur.expect_sym("=")?;
    cur.expect_sym("(")?;
    let mut coords = Vec::new();
    if !cur.at_sym(")") {
        loop {
            coords.push(parse_rational(cur)?);
            if !cur.eat_sym(",") {
                break;
            }
        }
    }
    cur.expect_sym(")")?;
    let point = Point::new(ring.clone(), coords)?;
    Ok(Decl::Point { on, point })
}

fn parse_morphism(cur: &mut Cursor, decls: &BTreeMap<String, Decl>) -> Result<MorphismDecl> {
    cur.expect_sym(":")?;
    let (domain, dom) = ring_ref(cur, decls)?;
    cur.expect_sym("->")?;
    let (codomain, cod) = ring_ref(cur, decls)?;
    cur.expect_sym("=")?;
    cur.expect_sym("{")?;
    let mut images: Vec<Option<Poly>> = vec![None; dom.nvars()];
    if !cur.at_sym("}") {
        loop {
            let t = cur.peek();
            let (line, col) = (t.line, t.col);
            let v = cur.expect_ident()?;
            let i = dom.var_index(&v).ok_or_else(|| Error::Parse {
                line,
                col,
                msg: format!("`{}` is not a variable of {}", v, domain),
            })?;
            if images[i].is_some() {
                return Err(Error::Parse { line, col, msg: format!("`{}` is mapped twice", v) });
            }
            cur.expect_sym("|->")?;
            images[i] = Some(parse_poly(cur, cod.vars())?);
            if !cur.eat_sym(",") {
                break;
            }
        }
    }
    cur.expect_sym("}")?;
    if let Some(i) = images.iter().position(|m| m.is_none()) {
        return Err(cur.error(format!("no image given for `{}`", dom.vars()[i])));
    }
    Ok(MorphismDecl { domain, codomain, images: images.into_iter().map(Option::unwrap).collect() })
}

/// A word like `from-module`: identifiers joined by single `-`.
fn word(cur: &mut Cursor) -> Result<String> {
    let mut w = cur.expect_ident()?;
    while cur.at_sym("-") {
        cur.next();
        w.push('-');
        w.push_str(&cur.expect_ident()?);
    }
    Ok(w)
}

fn parse_run(cur: &mut Cursor) -> Result<Command> {
    cur.skip_newlines = false;
    let mut name = word(cur)?;
    if let Some((_, subs)) = SUBCOMMANDS.iter().find(|(c, _)| *c == name) {
        let sub = word(cur)?;
        if !subs.contains(&sub.as_str()) {
            return Err(cur.error(format!("unknown `{}` subcommand `{}`", name, sub)));
        }
        name = format!("{} {}", name, sub);
    }
    let mut args = Vec::new();
    let (mut side, mut format) = (None, None);
    loop {
        match &cur.peek().tok {
            Tok::Newline | Tok::Eof => break,
            Tok::Sym("--") => {
                cur.next();
                let flag = cur.expect_ident()?;
                let value = word(cur)?;
                match (flag.as_str(), value.as_str()) {
                    ("side", v) => side = Some(parse_side(v).ok_or_else(|| cur.error("expected `ring` or `scheme`"))?),
                    ("format", v) => format = Some(parse_format(v).ok_or_else(|| cur.error("expected `text` or `json`"))?),
                    _ => return Err(cur.error(format!("unknown flag `--{}`", flag))),
                }
            }
            _ => args.push(cur.expect_ident()?),
        }
    }
    cur.skip_newlines = true;
    Ok(Command { name, args, side, format })
}

pub fn parse_side(s: &str) -> Option<Side> {
    match s {
        "ring" => Some(Side::Ring),
        "scheme" => Some(Side::Affine),
        _ => None,
    }
}

pub fn parse_format(s: &str) -> Option<Format> {
    match s {
        "text" => Some(Format::Text),
        "json" => Some(Format::Json),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_script() {
        let s = parse("ring R = QQ[x,y] / (x*y)\nrun tangent R --side scheme").unwrap();
        assert_eq!(s.command.name, "tangent");
        assert_eq!(s.command.args, ["R"]);
        assert_eq!(s.command.side, Some(Side::Affine));
        assert!(matches!(s.get("R"), Some(Decl::Ring(r)) if r.nvars() == 2));
    }

    #[test]
    fn module_and_subcommand() {
        let s = parse("ring R = QQ[x]\nmodule M over R = cokernel [x]\nrun bundle from-module M --side ring").unwrap();
        assert_eq!(s.command.name, "bundle from-module");
        match s.get("M") {
            Some(Decl::Module { over, module }) => {
                assert_eq!(over, "R");
                assert_eq!(module.rank(), 1);
            }
            _ => panic!("M should be a module"),
        }
    }

    #[test]
    fn syntax_error_points_at_the_slash() {
        match parse("ring R = QQ[x / (x)") {
            Err(Error::Parse { line: 1, col: 15, .. }) => {}
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn morphisms_and_points() {
        let s = parse(
            "ring R = QQ[x, y] / (x*y)\nring S = QQ[t]\n# a comment\npoint P on R = (0, 1/2)\n\
             morphism F : R -> S = { y |-> 0, x |-> t^2 }\nrun transpose flat F R",
        )
        .unwrap();
        assert_eq!(s.order, ["R", "S", "P", "F"]);
        match s.get("F") {
            Some(Decl::Morphism(m)) => assert_eq!(m.images.len(), 2),
            _ => panic!(),
        }
    }

    #[test]
    fn resolution_errors() {
        let e = parse("module M over R = cokernel [1]\nrun axioms R").unwrap_err();
        assert!(e.to_string().contains("unresolved name `R`"), "{}", e);
        let e = parse("ring R = QQ[x]\nring R = QQ[y]\nrun axioms R").unwrap_err();
        assert!(e.to_string().contains("declared twice"));
        let e = parse("ring R = QQ[x]\nrun axioms R\nrun axioms R").unwrap_err();
        assert!(e.to_string().contains("nothing may follow"));
        assert!(parse("ring R = QQ[x]").unwrap_err().to_string().contains("missing `run`"));
        let e = parse("ring R = QQ[x] / (x - 1/0)\nrun axioms R").unwrap_err();
        assert!(e.to_string().contains("ill-formed rational"));
    }

    #[test]
    fn invalid_point_is_rejected() {
        let e = parse("ring R = QQ[x,y] / (x*y)\npoint P on R = (1, 1)\nrun tangent-space R P").unwrap_err();
        assert!(matches!(e, Error::InvalidPoint(_)));
    }
}
