//! The line-oriented group-definition format.
//!
//! ```text
//! [group]
//! name = heis
//! generators = a b c
//! relative_orders = 0 0 0
//! b^a = b c^-1
//!
//! [construct]
//! name = H
//! kind = companion_semidirect
//! p = 3
//!
//! [hom]
//! name = f
//! domain = heis
//! codomain = heis
//! a -> a
//! ```

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{IntMatrix, Integer};
use crate::constructions::{
    companion_cyclotomic, direct_with_cyclic, free_abelian, free_nilpotent_class2, lift_automorphism_class2,
    semidirect_by_automorphisms, sub_semidirect_inclusion, AutomorphismAction, Fiber, Semidirect,
    PRODUCT_SEARCH_BOUND,
};
use crate::nilpotent::Subgroup;
use crate::pcgroup::{ExponentVector, GroupHom, PcPresentation, Word};

/// A located problem in an input file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, column, message: message.into() })
}

/// A line with its 1-based number and the column where its content starts.
#[derive(Clone, Debug)]
struct Line {
    no: usize,
    text: String,
    indent: usize,
}

impl Line {
    /// `key = value` split, with the 1-based column of the value.
    fn key_value(&self) -> Option<(&str, &str, usize)> {
        let eq = self.text.find('=')?;
        let key = self.text[..eq].trim();
        let rest = &self.text[eq + 1..];
        let value = rest.trim();
        let lead = rest.len() - rest.trim_start().len();
        Some((key, value, self.indent + eq + 1 + lead))
    }
}

/// A group defined in a file, with the construction data some commands need.
#[derive(Clone, Debug)]
pub struct NamedGroup {
    pub name: String,
    pub presentation: PcPresentation,
    pub semidirect: Option<Semidirect>,
    /// 1-based line of the section header
    pub line: usize,
    pub from_construct: bool,
}

#[derive(Clone, Debug)]
pub struct NamedHom {
    pub name: String,
    pub domain: String,
    pub codomain: String,
    pub hom: GroupHom,
}

/// Everything defined by one file, in order of appearance.
#[derive(Clone, Debug, Default)]
pub struct GroupFile {
    pub groups: Vec<NamedGroup>,
    pub homs: Vec<NamedHom>,
    /// Name of the group produced by the last `[construct]` section.
    pub last_construct: Option<String>,
}

impl GroupFile {
    pub fn group(&self, name: &str) -> Option<&NamedGroup> {
        self.groups.iter().rev().find(|g| g.name == name)
    }

    pub fn hom(&self, name: &str) -> Option<&NamedHom> {
        self.homs.iter().rev().find(|h| h.name == name)
    }

    pub fn last_group(&self) -> Option<&NamedGroup> {
        self.groups.last()
    }

    pub fn last_hom(&self) -> Option<&NamedHom> {
        self.homs.last()
    }
}

/// Parses a word like `a^2 b c^-1` against generator names; `1` is the identity.
/// `column` is where `text` starts on its line.
pub fn parse_word(text: &str, names: &[String], line: usize, column: usize) -> Result<Word, ParseError> {
    let mut out: Word = Vec::new();
    let mut offset = 0;
    for tok in text.split_whitespace() {
        let pos = text[offset..].find(tok).expect("token from split") + offset;
        offset = pos + tok.len();
        let col = column + pos;
        if tok == "1" {
            continue;
        }
        let (name, exp) = match tok.split_once('^') {
            Some((n, e)) => {
                let e: Integer = match e.parse() {
                    Ok(e) => e,
                    Err(_) => return err(line, col + n.len() + 1, format!("invalid exponent '{e}'")),
                };
                (n, e)
            }
            None => (tok, Integer::one()),
        };
        let Some(g) = names.iter().position(|x| x == name) else {
            return err(line, col, format!("undeclared generator '{name}'"));
        };
        if !exp.is_zero() {
            out.push((g, exp));
        }
    }
    Ok(out)
}

/// Parses `[[0,-1],[1,-1]]`.
pub fn parse_matrix(text: &str, line: usize, column: usize) -> Result<IntMatrix, ParseError> {
    let t = text.trim();
    let bad = |msg: &str| err(line, column, format!("invalid matrix: {msg}"));
    if !(t.starts_with("[[") && t.ends_with("]]")) {
        return bad("expected [[..],..]");
    }
    let inner = &t[2..t.len() - 2];
    let mut rows: Vec<Vec<Integer>> = Vec::new();
    for row in inner.split("],") {
        let row = row.trim().trim_start_matches('[').trim_end_matches(']');
        let mut r = Vec::new();
        for x in row.split(',') {
            match x.trim().parse::<Integer>() {
                Ok(v) => r.push(v),
                Err(_) => return bad(&format!("'{}' is not an integer", x.trim())),
            }
        }
        rows.push(r);
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return bad("rows of different lengths");
    }
    Ok(IntMatrix::from_rows(cols, rows))
}

fn split_sections(text: &str) -> Result<Vec<(String, Line, Vec<Line>)>, ParseError> {
    let mut sections: Vec<(String, Line, Vec<Line>)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let no = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len() + 1;
        let line = Line { no, text: trimmed.to_string(), indent };
        if trimmed.starts_with('[') && !trimmed.starts_with("[[") {
            let Some(name) = trimmed.strip_prefix('[').and_then(|s| s.strip_suffix(']')) else {
                return err(no, indent, "unterminated section header");
            };
            match name {
                "group" | "construct" | "hom" => sections.push((name.to_string(), line, Vec::new())),
                other => return err(no, indent + 1, format!("unknown section '{other}'")),
            }
            continue;
        }
        match sections.last_mut() {
            Some((_, _, body)) => body.push(line),
            None => return err(no, indent, "content before the first section"),
        }
    }
    Ok(sections)
}

/// Parses a whole file, building every section in order.
pub fn parse_file(text: &str) -> Result<GroupFile, ParseError> {
    let mut file = GroupFile::default();
    let mut counts: HashMap<&str, usize> = HashMap::new();
    for (kind, header, body) in split_sections(text)? {
        let n = counts.entry(if kind == "hom" { "hom" } else { "group" }).or_insert(0);
        *n += 1;
        match kind.as_str() {
            "group" => {
                let g = parse_group(&header, &body, *n)?;
                file.groups.push(g);
            }
            "construct" => {
                let (g, hom) = parse_construct(&header, &body, &file, *n)?;
                file.last_construct = Some(g.name.clone());
                file.groups.push(g);
                if let Some(h) = hom {
                    file.homs.push(h);
                }
            }
            _ => {
                let h = parse_hom(&header, &body, &file, *n)?;
                file.homs.push(h);
            }
        }
    }
    Ok(file)
}

fn parse_group(header: &Line, body: &[Line], index: usize) -> Result<NamedGroup, ParseError> {
    let mut name = format!("group{index}");
    let mut names: Option<Vec<String>> = None;
    let mut orders: Option<(Vec<Integer>, usize, usize)> = None;
    let mut relations = Vec::new();
    for line in body {
        let Some((key, value, vcol)) = line.key_value() else {
            return err(line.no, line.indent, "expected 'key = value' or a relation");
        };
        match key {
            "name" => name = value.to_string(),
            "generators" => {
                let gens: Vec<String> = value.split_whitespace().map(str::to_string).collect();
                for (k, g) in gens.iter().enumerate() {
                    if g == "1" || g.contains('^') || g.parse::<i64>().is_ok() {
                        return err(line.no, vcol, format!("invalid generator name '{g}'"));
                    }
                    if gens[..k].contains(g) {
                        return err(line.no, vcol, format!("duplicate generator '{g}'"));
                    }
                }
                names = Some(gens);
            }
            "relative_orders" => {
                let mut os = Vec::new();
                for tok in value.split_whitespace() {
                    match tok.parse::<Integer>() {
                        Ok(o) => os.push(o),
                        Err(_) => return err(line.no, vcol + value.find(tok).unwrap_or(0), format!("invalid relative order '{tok}'")),
                    }
                }
                orders = Some((os, line.no, vcol));
            }
            _ => relations.push((line.clone(), key.to_string(), value.to_string(), vcol)),
        }
    }
    let Some(names) = names else {
        return err(header.no, header.indent, "group section without 'generators'");
    };
    let n = names.len();
    let orders = match orders {
        Some((os, no, col)) => {
            if os.len() != n {
                return err(no, col, format!("expected {n} relative orders, found {}", os.len()));
            }
            os
        }
        None => vec![Integer::zero(); n],
    };
    let mut b = PcPresentation::builder(names.clone());
    for (k, o) in orders.iter().enumerate() {
        b = b.relative_order(k, o.clone());
    }
    let index_of = |s: &str| names.iter().position(|x| x == s);
    for (line, lhs, rhs, vcol) in relations {
        let lcol = line.indent;
        let parts: Vec<&str> = lhs.split('^').collect();
        let w = parse_word(&rhs, &names, line.no, vcol)?;
        let gen = |s: &str, col: usize| match index_of(s) {
            Some(i) => Ok(i),
            None => err(line.no, col, format!("undeclared generator '{s}'")),
        };
        match parts.as_slice() {
            [x, y] if y.parse::<Integer>().is_ok() => {
                let i = gen(x, lcol)?;
                let e: Integer = y.parse().expect("checked");
                if orders[i].is_zero() || e != orders[i] {
                    return err(line.no, lcol + x.len() + 1, format!("power relation exponent must equal the relative order of {x}"));
                }
                b = b.power(i, w);
            }
            [x, y] => {
                let j = gen(x, lcol)?;
                let i = gen(y, lcol + x.len() + 1)?;
                if i >= j {
                    return err(line.no, lcol, format!("conjugation relation {x}^{y} must conjugate a later generator"));
                }
                b = b.conjugate(j, i, w);
            }
            [x, y, "-1"] => {
                let j = gen(x, lcol)?;
                let i = gen(y, lcol + x.len() + 1)?;
                if i >= j {
                    return err(line.no, lcol, format!("conjugation relation {x}^{y}^-1 must conjugate a later generator"));
                }
                b = b.conjugate_inverse(j, i, w);
            }
            _ => return err(line.no, lcol, format!("unrecognized line '{lhs}'")),
        }
    }
    let presentation = b.build().or_else(|e| err(header.no, header.indent, e.to_string()))?;
    Ok(NamedGroup { name, presentation, semidirect: None, line: header.no, from_construct: false })
}

fn lookup<'a>(file: &'a GroupFile, name: &str, line: usize, col: usize) -> Result<&'a NamedGroup, ParseError> {
    file.group(name).map_or_else(|| err(line, col, format!("unknown group '{name}'")), Ok)
}

fn parse_construct(
    header: &Line,
    body: &[Line],
    file: &GroupFile,
    index: usize,
) -> Result<(NamedGroup, Option<NamedHom>), ParseError> {
    let mut fields: HashMap<String, (String, usize, usize)> = HashMap::new();
    for line in body {
        let Some((key, value, vcol)) = line.key_value() else {
            return err(line.no, line.indent, "expected 'key = value'");
        };
        fields.insert(key.to_string(), (value.to_string(), line.no, vcol));
    }
    let get = |k: &str| fields.get(k).cloned();
    let need = |k: &str| get(k).map_or_else(|| err(header.no, header.indent, format!("construct section needs '{k}'")), Ok);
    let int = |k: &str| -> Result<u64, ParseError> {
        let (v, no, col) = need(k)?;
        v.parse::<u64>().or_else(|_| err(no, col, format!("'{k}' must be a non-negative integer")))
    };
    let (kind, kline, kcol) = need("kind")?;
    let name = get("name").map(|x| x.0).unwrap_or_else(|| format!("group{index}"));
    let build_err = |e: crate::Error| ParseError { line: kline, column: kcol, message: e.to_string() };
    let mut semidirect = None;
    let mut hom = None;
    let presentation = match kind.as_str() {
        "free_abelian" => free_abelian(int("rank")? as usize),
        "free_nilpotent_class2" => {
            let r = int("rank")? as usize;
            if r == 0 {
                let (_, no, col) = need("rank")?;
                return err(no, col, "rank must be at least 1");
            }
            free_nilpotent_class2(r)
        }
        "companion_semidirect" => {
            let fiber = match get("fiber") {
                None => Fiber::Abelian,
                Some((f, no, col)) => match f.as_str() {
                    "abelian" => Fiber::Abelian,
                    "class2" => Fiber::Class2,
                    _ => return err(no, col, format!("unknown fiber '{f}' (expected abelian or class2)")),
                },
            };
            let mu = match get("matrix") {
                Some((m, no, col)) => parse_matrix(&m, no, col)?,
                None => companion_cyclotomic(int("p")?).map_err(|e| {
                    let (_, no, col) = need("p").expect("p present");
                    ParseError { line: no, column: col, message: e.to_string() }
                })?,
            };
            let r = mu.rows();
            let (n, alpha) = match fiber {
                Fiber::Abelian => {
                    let n = free_abelian(r);
                    let images = (0..r).map(|i| ExponentVector(mu.col_vec(i))).collect();
                    let a = AutomorphismAction::new(&n, images).map_err(build_err)?;
                    (n, a)
                }
                Fiber::Class2 => {
                    let n = free_nilpotent_class2(r);
                    let a = lift_automorphism_class2(&n, &mu).map_err(build_err)?;
                    (n, a)
                }
            };
            let s = semidirect_by_automorphisms(&n, &[alpha], PRODUCT_SEARCH_BOUND).map_err(build_err)?;
            let p = s.presentation.clone();
            semidirect = Some(s);
            p
        }
        "sub_semidirect" => {
            let (base, no, col) = need("base")?;
            let h = lookup(file, &base, no, col)?;
            let Some(s) = &h.semidirect else {
                return err(no, col, format!("'{base}' is not a companion_semidirect construction"));
            };
            let (sub, sno, scol) = need("subgroup")?;
            let mut gens = Vec::new();
            let mut offset = 0;
            for part in sub.split(',') {
                let w = parse_word(part, s.base.names(), sno, scol + offset)?;
                offset += part.len() + 1;
                gens.push(s.base.collect(&w).map_err(build_err)?);
            }
            let m = Subgroup::generated(&s.base, &gens).map_err(build_err)?;
            let out = sub_semidirect_inclusion(s, &m).map_err(|e| ParseError { line: sno, column: scol, message: e.to_string() })?;
            let hom_name = get("hom").map(|x| x.0).unwrap_or_else(|| format!("{name}_incl"));
            hom = Some(NamedHom { name: hom_name, domain: name.clone(), codomain: base.clone(), hom: out.inclusion });
            out.presentation
        }
        "direct_with_cyclic" => {
            let (base, no, col) = need("base")?;
            let g = lookup(file, &base, no, col)?;
            let p = int("p")?;
            direct_with_cyclic(&g.presentation, p).map_err(|e| {
                let (_, no, col) = need("p").expect("p present");
                ParseError { line: no, column: col, message: e.to_string() }
            })?
        }
        other => return err(kline, kcol, format!("unknown construction kind '{other}'")),
    };
    Ok((NamedGroup { name, presentation, semidirect, line: header.no, from_construct: true }, hom))
}

fn parse_hom(header: &Line, body: &[Line], file: &GroupFile, index: usize) -> Result<NamedHom, ParseError> {
    let mut name = format!("hom{index}");
    let mut domain = None;
    let mut codomain = None;
    let mut images: Vec<(Line, String, String, usize)> = Vec::new();
    for line in body {
        if let Some(arrow) = line.text.find("->") {
            let src = line.text[..arrow].trim().to_string();
            let rest = &line.text[arrow + 2..];
            let col = line.indent + arrow + 2 + (rest.len() - rest.trim_start().len());
            images.push((line.clone(), src, rest.trim().to_string(), col));
            continue;
        }
        let Some((key, value, vcol)) = line.key_value() else {
            return err(line.no, line.indent, "expected 'key = value' or 'generator -> word'");
        };
        match key {
            "name" => name = value.to_string(),
            "domain" => domain = Some(lookup(file, value, line.no, vcol)?.clone()),
            "codomain" => codomain = Some(lookup(file, value, line.no, vcol)?.clone()),
            other => return err(line.no, line.indent, format!("unknown hom key '{other}'")),
        }
    }
    let (Some(dom), Some(cod)) = (domain, codomain) else {
        return err(header.no, header.indent, "hom section needs 'domain' and 'codomain'");
    };
    let mut imgs: Vec<Option<ExponentVector>> = vec![None; dom.presentation.num_gens()];
    for (line, src, word, col) in images {
        let Some(i) = dom.presentation.index_of(&src) else {
            return err(line.no, line.indent, format!("undeclared generator '{src}' in domain {}", dom.name));
        };
        let w = parse_word(&word, cod.presentation.names(), line.no, col)?;
        let v = cod.presentation.collect(&w).or_else(|e| err(line.no, col, e.to_string()))?;
        imgs[i] = Some(v);
    }
    let mut out = Vec::with_capacity(imgs.len());
    for (i, v) in imgs.into_iter().enumerate() {
        match v {
            Some(v) => out.push(v),
            None => return err(header.no, header.indent, format!("no image given for generator '{}'", dom.presentation.name(i))),
        }
    }
    let hom = GroupHom::new_verified(dom.presentation.clone(), cod.presentation.clone(), out)
        .or_else(|e| err(header.no, header.indent, e.to_string()))?;
    Ok(NamedHom { name, domain: dom.name, codomain: cod.name, hom })
}

/// `[group]` section text that parses back to `p`.
pub fn write_group(name: &str, p: &PcPresentation) -> String {
    let names = p.names();
    let n = p.num_gens();
    let mut out = String::from("[group]\n");
    out.push_str(&format!("name = {name}\n"));
    out.push_str(&format!("generators = {}\n", names.join(" ")));
    let orders: Vec<String> = p.relative_orders().iter().map(|o| o.to_string()).collect();
    out.push_str(&format!("relative_orders = {}\n", orders.join(" ")));
    for i in 0..n {
        if let Some(w) = p.power_relation(i) {
            if !w.is_identity() {
                out.push_str(&format!("{}^{} = {}\n", names[i], p.relative_order(i), w.to_word(names)));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let w = p.conjugate_relation(j, i);
            if w != p.generator(j) {
                out.push_str(&format!("{}^{} = {}\n", names[j], names[i], w.to_word(names)));
            }
        }
        for j in i + 1..n {
            if let Some(w) = p.conjugate_inverse_relation(j, i) {
                if w != p.generator(j) {
                    out.push_str(&format!("{}^{}^-1 = {}\n", names[j], names[i], w.to_word(names)));
                }
            }
        }
    }
    out
}

/// `[hom]` section text.
pub fn write_hom(h: &NamedHom) -> String {
    let mut out = String::from("[hom]\n");
    out.push_str(&format!("name = {}\ndomain = {}\ncodomain = {}\n", h.name, h.domain, h.codomain));
    let cod = h.hom.codomain().names();
    for (k, img) in h.hom.images().iter().enumerate() {
        out.push_str(&format!("{} -> {}\n", h.hom.domain().name(k), img.to_word(cod)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::heisenberg;

    const HEIS: &str = "# Heisenberg\n[group]\nname = heis\ngenerators = a b c\nrelative_orders = 0 0 0\nb^a = b c^-1\n";

    #[test]
    fn parses_heisenberg() {
        let f = parse_file(HEIS).unwrap();
        let g = f.group("heis").unwrap();
        assert_eq!(g.presentation, heisenberg());
    }

    #[test]
    fn words() {
        let names: Vec<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
        assert_eq!(parse_word("a^2 b^-3 1 a", &names, 1, 1).unwrap().len(), 3);
        let e = parse_word("a q", &names, 4, 10).unwrap_err();
        assert_eq!((e.line, e.column), (4, 12));
        let e = parse_word("a^x", &names, 1, 1).unwrap_err();
        assert_eq!(e.column, 3);
    }

    #[test]
    fn located_errors() {
        let e = parse_file("[group]\ngenerators = a b\nb^a = b z\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 9));
        assert!(e.message.contains("undeclared generator 'z'"));
        let e = parse_file("generators = a\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_file("[group]\ngenerators = a b\na^b = a\n").unwrap_err();
        assert!(e.message.contains("later generator"), "{}", e.message);
        let e = parse_file("[groop]\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 2));
    }

    #[test]
    fn matrices() {
        let m = parse_matrix("[[0,-1],[1,-1]]", 1, 1).unwrap();
        assert_eq!(m, IntMatrix::from_i64(&[&[0, -1], &[1, -1]]));
        assert!(parse_matrix("[[0,-1],[1]]", 1, 1).is_err());
        assert!(parse_matrix("[0]", 1, 1).is_err());
    }

    #[test]
    fn constructs_and_round_trip() {
        let text = "[construct]\nname = H\nkind = companion_semidirect\np = 3\n\n[construct]\nname = G\nkind = sub_semidirect\nbase = H\nsubgroup = x1^2, x2^2\n";
        let f = parse_file(text).unwrap();
        assert_eq!(f.groups.len(), 2);
        let hom = f.last_hom().unwrap();
        assert_eq!(hom.name, "G_incl");
        for g in &f.groups {
            let again = parse_file(&write_group(&g.name, &g.presentation)).unwrap();
            assert_eq!(again.groups[0].presentation, g.presentation, "{}", g.name);
        }
        let mut text2 = String::new();
        for g in &f.groups {
            text2.push_str(&write_group(&g.name, &g.presentation));
        }
        text2.push_str(&write_hom(hom));
        let f2 = parse_file(&text2).unwrap();
        assert_eq!(f2.last_hom().unwrap().hom.images(), hom.hom.images());
    }

    #[test]
    fn invariance_error_is_reported() {
        let text = "[construct]\nname = H\nkind = companion_semidirect\np = 3\n[construct]\nkind = sub_semidirect\nbase = H\nsubgroup = x1\n";
        let e = parse_file(text).unwrap_err();
        assert!(e.message.contains("x1^t = x2"), "{}", e.message);
        assert_eq!(e.line, 8);
    }
}
