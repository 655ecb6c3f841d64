//! Instance specs: frame specs (`chain:3`, `product:chain:2,powerset:1`,
//! `covers:m3.txt`), space and order presets, and instance files with
//! `space { .. }`, `order { .. }` blocks and an `r: [..]` witness table.
//!
//! ```text
//! # the Sierpinski space over a three-element chain
//! space {
//!   points: [x, y];
//!   frame: chain:3;
//!   Y = {y: 1};
//!   generators: [Y, {x: c1, y: 1}];
//! }
//! r: [x, y, y];
//! ```

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::frame::{Elem, FiniteLattice, Frame};
use crate::lorder::LOrder;
use crate::lset::LSubset;
use crate::ltop::{discrete, indiscrete, point_names, sierpinski, LTopSpace};

fn parse_count(what: &str, s: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| match s.trim() {
        "" => Error::InvalidParameter(format!("{what}: missing number")),
        t => Error::InvalidParameter(format!("{what}: expected a number, got {t:?}")),
    })
}

/// Parses a frame spec, resolving `covers:` paths against `base`. Syntax
/// errors carry the column within the spec.
pub fn parse_frame(spec: &str, base: &Path, caps: &Caps) -> Result<Frame> {
    let spec = spec.trim();
    let (f, rest) = parse_frame_prefix(spec, spec, base, caps)?;
    if !rest.trim().is_empty() {
        return Err(spec_error(spec, rest, format!("trailing input {rest:?} after frame spec")));
    }
    Ok(f)
}

fn spec_error(full: &str, at: &str, msg: String) -> Error {
    let col = full[..full.len() - at.len()].chars().count() + 1;
    Error::Parse { line: 1, col, msg }
}

fn parse_frame_prefix<'a>(full: &str, spec: &'a str, base: &Path, caps: &Caps) -> Result<(Frame, &'a str)> {
    let digits = |s: &'a str| -> (&'a str, &'a str) {
        let end = s.find(|c: char| !c.is_ascii_digit()).unwrap_or(s.len());
        (&s[..end], &s[end..])
    };
    let count = |what: &str, at: &'a str, n: &str| parse_count(what, n).map_err(|e| spec_error(full, at, e.to_string()));
    if let Some(rest) = spec.strip_prefix("chain:") {
        let (n, tail) = digits(rest);
        Ok((Frame::chain_capped(count("chain", rest, n)?, caps)?, tail))
    } else if let Some(rest) = spec.strip_prefix("powerset:") {
        let (n, tail) = digits(rest);
        Ok((Frame::powerset_capped(count("powerset", rest, n)?, caps)?, tail))
    } else if let Some(rest) = spec.strip_prefix("product:") {
        let (a, rest) = parse_frame_prefix(full, rest, base, caps)?;
        let rest = rest
            .strip_prefix(',')
            .ok_or_else(|| spec_error(full, rest, "product: expected ',' between the factors".into()))?;
        let (b, rest) = parse_frame_prefix(full, rest, base, caps)?;
        Ok((Frame::product_capped(&a, &b, caps)?, rest))
    } else if let Some(rest) = spec.strip_prefix("covers:") {
        let end = rest.find([',', ';']).unwrap_or(rest.len());
        let path = resolve(base, rest[..end].trim());
        let text = std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let covers = FiniteLattice::parse_covers(&text)
            .map_err(|e| Error::InvalidParameter(format!("{}: {e}", path.display())))?;
        let f = Frame::from_cover_relation(&covers)?;
        if f.len() > caps.frame_size {
            return Err(Error::resource("frame", format!("|L| = {} exceeds {}", f.len(), caps.frame_size)));
        }
        Ok((f, &rest[end..]))
    } else {
        Err(spec_error(
            full,
            spec,
            format!("unknown frame spec {spec:?}; expected chain:<n>, powerset:<n>, product:<a>,<b> or covers:<file>"),
        ))
    }
}

/// The covers file as a lattice, without requiring distributivity.
pub fn parse_lattice_file(path: &Path) -> Result<FiniteLattice> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    FiniteLattice::from_covers(&FiniteLattice::parse_covers(&text)?)
}

fn resolve(base: &Path, p: &str) -> PathBuf {
    let p = Path::new(p);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

/// A space with the generators it was built from.
#[derive(Clone, Debug)]
pub struct SpaceInstance {
    pub space: Arc<LTopSpace>,
    pub generators: Vec<LSubset>,
}

impl SpaceInstance {
    fn build(frame: Arc<Frame>, points: Vec<String>, generators: Vec<LSubset>, caps: &Caps) -> Result<SpaceInstance> {
        let space = Arc::new(LTopSpace::generate(frame, points, &generators, caps)?);
        Ok(SpaceInstance { space, generators })
    }

    /// Generators as bitmasks; fails unless every value is bottom or top.
    pub fn crisp_generators(&self) -> Result<Vec<u32>> {
        let f = self.space.frame();
        self.generators
            .iter()
            .map(|g| {
                if !g.is_crisp(f) {
                    return Err(Error::InvalidParameter("generator takes a value other than 0 and 1".into()));
                }
                Ok(g.values().iter().enumerate().fold(0u32, |m, (i, &v)| if v == f.top() { m | 1 << i } else { m }))
            })
            .collect()
    }
}

/// `sierpinski`, `discrete:<n>`, `indiscrete:<n>` over `frame`.
pub fn space_preset(spec: &str, frame: Arc<Frame>, caps: &Caps) -> Result<Option<SpaceInstance>> {
    let spec = spec.trim();
    let (space, generators) = if spec == "sierpinski" {
        (sierpinski(frame.clone(), caps)?, vec![LSubset::characteristic(&frame, 2, &[1])])
    } else if let Some(n) = spec.strip_prefix("discrete:") {
        let n = parse_count("discrete", n)?;
        let gens = (0..n).map(|i| LSubset::characteristic(&frame, n, &[i])).collect();
        (discrete(frame, n, caps)?, gens)
    } else if let Some(n) = spec.strip_prefix("indiscrete:") {
        (indiscrete(frame, parse_count("indiscrete", n)?, caps)?, vec![])
    } else {
        return Ok(None);
    };
    Ok(Some(SpaceInstance { space: Arc::new(space), generators }))
}

/// A preset name or the path of an instance file with a `space` block.
pub fn load_space(spec: &str, frame_spec: &str, caps: &Caps) -> Result<SpaceInstance> {
    let frame = Arc::new(parse_frame(frame_spec, Path::new("."), caps)?);
    if let Some(s) = space_preset(spec, frame, caps)? {
        return Ok(s);
    }
    let file = InstanceFile::load(Path::new(spec), Some(frame_spec), caps)?;
    file.space.ok_or_else(|| Error::InvalidParameter(format!("{spec}: no space block")))
}

/// `selfL:<frame>`, `powerset-order:<frame>,<n>`, `crisp-chain:<n>`,
/// `crisp-lattice:<covers-file>` or an instance file with an `order` block.
pub fn load_order(spec: &str, frame_spec: &str, caps: &Caps) -> Result<LOrder> {
    let spec = spec.trim();
    let here = Path::new(".");
    if let Some(rest) = spec.strip_prefix("selfL:") {
        return Ok(LOrder::self_order(Arc::new(parse_frame(rest, here, caps)?)));
    }
    if let Some(rest) = spec.strip_prefix("powerset-order:") {
        let (f, tail) = parse_frame_prefix(rest, rest, here, caps)?;
        let n = tail
            .strip_prefix(',')
            .ok_or_else(|| Error::InvalidParameter("powerset-order: expected ',<n>' after the frame".into()))?;
        return LOrder::powerset_order(Arc::new(f), parse_count("powerset-order", n)?, caps);
    }
    let frame = || -> Result<Arc<Frame>> { Ok(Arc::new(parse_frame(frame_spec, here, caps)?)) };
    if let Some(n) = spec.strip_prefix("crisp-chain:") {
        return LOrder::crisp_chain(frame()?, parse_count("crisp-chain", n)?);
    }
    if let Some(path) = spec.strip_prefix("crisp-lattice:") {
        return LOrder::crisp_lattice(frame()?, &parse_lattice_file(Path::new(path))?);
    }
    let file = InstanceFile::load(Path::new(spec), Some(frame_spec), caps)?;
    file.order.ok_or_else(|| Error::InvalidParameter(format!("{spec}: no order block")))
}

/// Parsed contents of an instance file.
#[derive(Clone, Debug, Default)]
pub struct InstanceFile {
    pub space: Option<SpaceInstance>,
    pub order: Option<LOrder>,
    /// Point indices of an `r: [..]` table, in filter enumeration order.
    pub r: Option<Vec<usize>>,
}

impl InstanceFile {
    pub fn load(path: &Path, default_frame: Option<&str>, caps: &Caps) -> Result<InstanceFile> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        InstanceFile::parse(&text, base, default_frame, caps)
    }

    pub fn parse(text: &str, base: &Path, default_frame: Option<&str>, caps: &Caps) -> Result<InstanceFile> {
        let mut p = Parser::new(text);
        let mut out = InstanceFile::default();
        let mut frame: Option<(Arc<Frame>, (usize, usize))> = None;
        let mut r_names: Option<(Vec<String>, (usize, usize))> = None;
        loop {
            p.skip_ws();
            if p.at_end() {
                break;
            }
            let at = p.loc();
            let key = p.ident()?;
            match key.as_str() {
                "frame" => {
                    p.expect(':')?;
                    let spec = p.raw_until(';')?;
                    let f = parse_frame(&spec, base, caps).map_err(|e| at_loc(at, e))?;
                    frame = Some((Arc::new(f), at));
                }
                "space" => {
                    let block = p.block(|p| p.space_block(base, frame.as_ref().map(|f| f.0.clone()), default_frame, caps))?;
                    let (fr, pts, gens) = block;
                    out.space = Some(SpaceInstance::build(fr, pts, gens, caps).map_err(|e| at_loc(at, e))?);
                }
                "order" => {
                    let (fr, pts, e) = p.block(|p| p.order_block(base, frame.as_ref().map(|f| f.0.clone()), default_frame, caps))?;
                    out.order = Some(LOrder::new(fr, pts, e).map_err(|e| at_loc(at, e))?);
                }
                "r" => {
                    p.expect(':')?;
                    let names = p.list(|p| p.ident())?;
                    p.expect(';')?;
                    r_names = Some((names, at));
                }
                other => return Err(p.error_at(at, format!("unexpected {other:?}; expected frame, space, order or r"))),
            }
        }
        if let Some((names, at)) = r_names {
            let Some(space) = &out.space else {
                return Err(p.error_at(at, "r table without a space block".into()));
            };
            let idx = names
                .iter()
                .map(|n| {
                    space.space.points().iter().position(|q| q == n).ok_or_else(|| p.error_at(at, format!("unknown point {n:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            out.r = Some(idx);
        }
        Ok(out)
    }
}

fn at_loc((line, col): (usize, usize), e: Error) -> Error {
    match e {
        Error::Parse { col: c, msg, .. } => Error::Parse { line, col, msg: format!("frame spec column {c}: {msg}") },
        other => Error::Parse { line, col, msg: other.to_string() },
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

type Block = (Arc<Frame>, Vec<String>, Vec<LSubset>);
type OrderBlock = (Arc<Frame>, Vec<String>, Vec<Elem>);

impl Parser {
    fn new(text: &str) -> Parser {
        Parser { chars: text.chars().collect(), pos: 0, line: 1, col: 1 }
    }

    fn loc(&self) -> (usize, usize) {
        (self.line, self.col)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn error_at(&self, (line, col): (usize, usize), msg: String) -> Error {
        Error::Parse { line, col, msg }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        self.error_at(self.loc(), msg.into())
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c == '#' {
                while self.peek().is_some_and(|c| c != '\n') {
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected {want:?}, found {c:?}"))),
            None => Err(self.error(format!("expected {want:?}, found end of input"))),
        }
    }

    fn eat(&mut self, want: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(want) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let mut s = String::new();
        while let Some(c) = self.peek().filter(|c| c.is_alphanumeric() || matches!(c, '_' | '\'' | '.' | '-')) {
            s.push(c);
            self.bump();
        }
        if s.is_empty() {
            return Err(match self.peek() {
                Some(c) => self.error(format!("expected a name, found {c:?}")),
                None => self.error("expected a name, found end of input"),
            });
        }
        Ok(s)
    }

    /// A frame element name: an identifier or a balanced `(..)` / `{..}`
    /// group such as `(0,c1)` or `{1,2}`.
    fn element(&mut self) -> Result<String> {
        self.skip_ws();
        let Some(open) = self.peek().filter(|c| matches!(c, '(' | '{')) else {
            return self.ident();
        };
        let close = if open == '(' { ')' } else { '}' };
        let mut depth = 0;
        let mut s = String::new();
        loop {
            let Some(c) = self.bump() else {
                return Err(self.error(format!("unterminated element name {s:?}")));
            };
            if !c.is_whitespace() {
                s.push(c);
            }
            if c == open {
                depth += 1;
            } else if c == close {
                depth -= 1;
                if depth == 0 {
                    return Ok(s);
                }
            }
        }
    }

    fn raw_until(&mut self, stop: char) -> Result<String> {
        self.skip_ws();
        let mut s = String::new();
        loop {
            match self.bump() {
                Some(c) if c == stop => return Ok(s.trim().to_string()),
                Some(c) => s.push(c),
                None => return Err(self.error(format!("expected {stop:?} before end of input"))),
            }
        }
    }

    fn list<T>(&mut self, mut item: impl FnMut(&mut Parser) -> Result<T>) -> Result<Vec<T>> {
        self.expect('[')?;
        let mut out = Vec::new();
        if self.eat(']') {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.eat(']') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    fn block<T>(&mut self, body: impl FnOnce(&mut Parser) -> Result<T>) -> Result<T> {
        self.expect('{')?;
        let out = body(self)?;
        self.expect('}')?;
        Ok(out)
    }

    fn frame_or_default(
        &self,
        local: Option<Arc<Frame>>,
        outer: Option<Arc<Frame>>,
        default: Option<&str>,
        base: &Path,
        caps: &Caps,
    ) -> Result<Arc<Frame>> {
        if let Some(f) = local.or(outer) {
            return Ok(f);
        }
        match default {
            Some(spec) => Ok(Arc::new(parse_frame(spec, base, caps)?)),
            None => Err(self.error("no frame given")),
        }
    }

    fn element_of(&self, f: &Frame, name: &str, at: (usize, usize)) -> Result<Elem> {
        f.elem(name).ok_or_else(|| self.error_at(at, format!("{name:?} is not an element of the frame {:?}", f.names())))
    }

    fn lsubset(&mut self, f: &Frame, points: &[String], named: &HashMap<String, LSubset>) -> Result<LSubset> {
        self.skip_ws();
        let at = self.loc();
        if self.peek() != Some('{') {
            let name = self.ident()?;
            return named.get(&name).cloned().ok_or_else(|| self.error_at(at, format!("unknown L-subset {name:?}")));
        }
        self.expect('{')?;
        let mut values = vec![f.bottom(); points.len()];
        if self.eat('}') {
            return Ok(LSubset(values));
        }
        loop {
            let pat = self.loc();
            let p = self.ident()?;
            let Some(i) = points.iter().position(|q| *q == p) else {
                return Err(self.error_at(pat, format!("unknown point {p:?}")));
            };
            self.expect(':')?;
            let eat = self.loc();
            let e = self.element()?;
            values[i] = self.element_of(f, &e, eat)?;
            if self.eat('}') {
                return Ok(LSubset(values));
            }
            self.expect(',')?;
        }
    }

    /// Fields in any order except that L-subsets need `points` and the
    /// frame to be known.
    fn space_block(&mut self, base: &Path, outer: Option<Arc<Frame>>, default: Option<&str>, caps: &Caps) -> Result<Block> {
        let mut points: Option<Vec<String>> = None;
        let mut frame: Option<Arc<Frame>> = None;
        let mut named: HashMap<String, LSubset> = HashMap::new();
        let mut gens: Option<Vec<LSubset>> = None;
        loop {
            self.skip_ws();
            if self.peek() == Some('}') || self.at_end() {
                break;
            }
            let at = self.loc();
            let key = self.ident()?;
            match key.as_str() {
                "points" => {
                    self.expect(':')?;
                    let pts = self.list(|p| p.ident())?;
                    if pts.len() > 32 {
                        return Err(self.error_at(at, "more than 32 points".into()));
                    }
                    points = Some(pts);
                }
                "frame" => {
                    self.expect(':')?;
                    let spec = self.raw_until(';')?;
                    frame = Some(Arc::new(parse_frame(&spec, base, caps).map_err(|e| at_loc(at, e))?));
                    continue;
                }
                "generators" => {
                    self.expect(':')?;
                    let f = self.frame_or_default(frame.clone(), outer.clone(), default, base, caps)?;
                    let pts = points.clone().ok_or_else(|| self.error_at(at, "generators before points".into()))?;
                    gens = Some(self.list(|p| p.lsubset(&f, &pts, &named))?);
                }
                name => {
                    self.expect('=')?;
                    let f = self.frame_or_default(frame.clone(), outer.clone(), default, base, caps)?;
                    let pts = points.clone().ok_or_else(|| self.error_at(at, "L-subset before points".into()))?;
                    let a = self.lsubset(&f, &pts, &named)?;
                    named.insert(name.to_string(), a);
                }
            }
            self.expect(';')?;
        }
        let f = self.frame_or_default(frame, outer, default, base, caps)?;
        let points = points.ok_or_else(|| self.error("space block without points"))?;
        Ok((f, points, gens.unwrap_or_default()))
    }

    fn order_block(&mut self, base: &Path, outer: Option<Arc<Frame>>, default: Option<&str>, caps: &Caps) -> Result<OrderBlock> {
        let mut points: Option<Vec<String>> = None;
        let mut frame: Option<Arc<Frame>> = None;
        let mut matrix: Option<Vec<Elem>> = None;
        loop {
            self.skip_ws();
            if self.peek() == Some('}') || self.at_end() {
                break;
            }
            let at = self.loc();
            let key = self.ident()?;
            self.expect(':')?;
            match key.as_str() {
                "points" => points = Some(self.list(|p| p.ident())?),
                "frame" => {
                    let spec = self.raw_until(';')?;
                    frame = Some(Arc::new(parse_frame(&spec, base, caps).map_err(|e| at_loc(at, e))?));
                    continue;
                }
                "matrix" => {
                    let f = self.frame_or_default(frame.clone(), outer.clone(), default, base, caps)?;
                    let rows = self.list(|p| {
                        p.list(|p| {
                            let at = p.loc();
                            let e = p.element()?;
                            p.element_of(&f, &e, at)
                        })
                    })?;
                    let n = rows.len();
                    if rows.iter().any(|r| r.len() != n) {
                        return Err(self.error_at(at, format!("matrix is not {n}x{n}")));
                    }
                    matrix = Some(rows.into_iter().flatten().collect());
                }
                other => return Err(self.error_at(at, format!("unexpected {other:?} in order block"))),
            }
            self.expect(';')?;
        }
        let f = self.frame_or_default(frame, outer, default, base, caps)?;
        let points = points.ok_or_else(|| self.error("order block without points"))?;
        let e = matrix.ok_or_else(|| self.error("order block without matrix"))?;
        if e.len() != points.len() * points.len() {
            return Err(self.error(format!("matrix does not match {} points", points.len())));
        }
        Ok((f, points, e))
    }
}

/// Default names when a preset space needs them.
pub fn default_points(n: usize) -> Vec<String> {
    point_names(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn frame_specs() {
        let here = Path::new(".");
        assert_eq!(parse_frame("chain:4", here, &caps()).unwrap().len(), 4);
        assert_eq!(parse_frame("powerset:2", here, &caps()).unwrap().len(), 4);
        assert_eq!(parse_frame("product:chain:2,chain:3", here, &caps()).unwrap().len(), 6);
        assert_eq!(parse_frame("product:product:chain:2,chain:2,chain:2", here, &caps()).unwrap().len(), 8);
        assert!(matches!(parse_frame("chain:", here, &caps()), Err(Error::Parse { line: 1, col: 7, .. })));
        assert!(matches!(parse_frame("product:chain:2;chain:3", here, &caps()), Err(Error::Parse { col: 16, .. })));
        assert!(parse_frame("lattice:3", here, &caps()).is_err());
        assert!(parse_frame("chain:17", here, &caps()).unwrap_err().is_resource_limit());
    }

    #[test]
    fn covers_file() {
        let dir = std::env::temp_dir().join(format!("ofmonad-inst-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(dir.join("d.txt"), "0 < a\n0 < b # two atoms\na < 1\nb < 1\n").unwrap();
        let f = parse_frame("covers:d.txt", &dir, &caps()).unwrap();
        assert_eq!(f.len(), 4);
        assert!(matches!(parse_frame("covers:missing.txt", &dir, &caps()), Err(Error::Io(_))));
    }

    #[test]
    fn space_block_and_witness() {
        let text = "# comment\nspace {\n  points: [x, y];\n  frame: chain:3;\n  Y = {y: 1};\n  generators: [Y, {x: c1, y: 1}];\n}\nr: [x, y, x];\n";
        let inst = InstanceFile::parse(text, Path::new("."), None, &caps()).unwrap();
        let s = inst.space.unwrap();
        assert_eq!(s.space.len(), 2);
        assert_eq!(s.generators.len(), 2);
        assert_eq!(s.generators[1].values(), &[Elem(1), Elem(2)]);
        assert_eq!(inst.r.unwrap(), vec![0, 1, 0]);
    }

    #[test]
    fn omitted_points_default_to_bottom() {
        let text = "space { points: [a, b, c]; generators: [{b: 1}]; }";
        let inst = InstanceFile::parse(text, Path::new("."), Some("chain:2"), &caps()).unwrap();
        assert_eq!(inst.space.unwrap().generators[0].values(), &[Elem(0), Elem(1), Elem(0)]);
    }

    #[test]
    fn product_and_powerset_elements() {
        let text = "space { points: [p]; frame: product:chain:2,chain:3; generators: [{p: (1,c1)}]; }";
        let inst = InstanceFile::parse(text, Path::new("."), None, &caps()).unwrap();
        let s = inst.space.unwrap();
        assert_eq!(s.space.frame().name(s.generators[0].get(0)), "(1,c1)");
        let text = "space { points: [p]; frame: powerset:2; generators: [{p: {1, 2}}]; }";
        assert!(InstanceFile::parse(text, Path::new("."), None, &caps()).is_ok());
    }

    #[test]
    fn order_block() {
        let text = "order { frame: chain:2; points: [a, b]; matrix: [[1, 1], [0, 1]]; }";
        let o = InstanceFile::parse(text, Path::new("."), None, &caps()).unwrap().order.unwrap();
        assert_eq!(o.len(), 2);
        let bad = "order { frame: chain:2; points: [a, b]; matrix: [[1, 0], [0, 0]]; }";
        assert!(matches!(InstanceFile::parse(bad, Path::new("."), None, &caps()), Err(Error::Parse { line: 1, col: 1, .. })));
    }

    #[test]
    fn parse_errors_carry_locations() {
        let text = "space {\n  points: [x, y];\n  frame: chain:2;\n  generators: [{z: 1}];\n}\n";
        match InstanceFile::parse(text, Path::new("."), None, &caps()) {
            Err(Error::Parse { line, col, msg }) => {
                assert_eq!((line, col), (4, 17));
                assert!(msg.contains("unknown point"));
            }
            other => panic!("{other:?}"),
        }
        let text = "space {\n  points: [x];\n  frame: chain:2;\n  generators: [{x: 7}];\n}\n";
        assert!(matches!(InstanceFile::parse(text, Path::new("."), None, &caps()), Err(Error::Parse { line: 4, .. })));
        assert!(matches!(InstanceFile::parse("bogus", Path::new("."), None, &caps()), Err(Error::Parse { line: 1, col: 1, .. })));
        assert!(matches!(
            InstanceFile::parse("space { points: [x] }", Path::new("."), None, &caps()),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn presets() {
        let c = caps();
        assert_eq!(load_space("sierpinski", "chain:2", &c).unwrap().space.opens().len(), 3);
        assert_eq!(load_space("discrete:2", "chain:2", &c).unwrap().space.opens().len(), 4);
        assert_eq!(load_space("indiscrete:3", "chain:3", &c).unwrap().space.opens().len(), 3);
        assert_eq!(load_order("selfL:chain:3", "chain:2", &c).unwrap().len(), 3);
        assert_eq!(load_order("powerset-order:chain:2,2", "chain:2", &c).unwrap().len(), 4);
        assert_eq!(load_order("crisp-chain:3", "chain:2", &c).unwrap().len(), 3);
        assert!(load_order("powerset-order:chain:2", "chain:2", &c).is_err());
    }

    #[test]
    fn crisp_generators() {
        let s = load_space("sierpinski", "chain:2", &caps()).unwrap();
        assert_eq!(s.crisp_generators().unwrap(), vec![0b10]);
        let text = "space { points: [x]; frame: chain:3; generators: [{x: c1}]; }";
        let inst = InstanceFile::parse(text, Path::new("."), None, &caps()).unwrap();
        assert!(inst.space.unwrap().crisp_generators().is_err());
    }
}
