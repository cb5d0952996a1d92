//! Command-line front end.
//!
//! Groups are written as `add:N` and `mult:N` terms joined by `x`, for
//! example `add:5xmult:9`. Elements of products are bracketed tuples such as
//! `[1,2]`; residues are reduced modulo their component's modulus on input.
//!
//! Exit codes: 0 success (or isomorphic), 1 not isomorphic, 2 parse or domain
//! error, 3 element cap exceeded, 4 non-member operand, 5 internal error.

use std::fmt;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use itertools::Itertools;
use serde_json::{json, Value};

use crate::error::Error;
use crate::group::{ComponentKind, ComponentSpec, Element, Group, GroupSpec, DEFAULT_CAP};
use crate::structure::{self, Classification};
use crate::subgroup;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_ISOMORPHIC: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_MEMBERSHIP: i32 = 4;
pub const EXIT_INTERNAL: i32 = 5;

/// Parse failure in a group expression or element literal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub input: String,
    pub position: usize,
    pub expected: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let found = self.input[self.position..].chars().next();
        match found {
            Some(c) => write!(
                f,
                "in {:?} at position {}: expected {}, found {c:?}",
                self.input, self.position, self.expected
            ),
            None => write!(
                f,
                "in {:?} at position {}: expected {}, found end of input",
                self.input, self.position, self.expected
            ),
        }
    }
}

impl std::error::Error for ParseError {}

/// A parsed group expression: `term ("x" term)*`, `term := "add:" N | "mult:" N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupExpr {
    spec: GroupSpec<u64>,
}

impl GroupExpr {
    pub fn spec(&self) -> &GroupSpec<u64> {
        &self.spec
    }

    pub fn into_spec(self) -> GroupSpec<u64> {
        self.spec
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.spec.fmt(f)
    }
}

impl FromStr for GroupExpr {
    type Err = ParseError;

    fn from_str(input: &str) -> Result<Self, ParseError> {
        let err = |position: usize, expected: &str| ParseError {
            input: input.to_string(),
            position,
            expected: expected.to_string(),
        };
        let bytes = input.as_bytes();
        let mut pos = 0;
        let mut components = Vec::new();
        loop {
            let rest = &input[pos..];
            let kind = if rest.starts_with("add:") {
                pos += 4;
                ComponentKind::Additive
            } else if rest.starts_with("mult:") {
                pos += 5;
                ComponentKind::Multiplicative
            } else {
                return Err(err(pos, "\"add:\" or \"mult:\""));
            };
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if pos == start {
                return Err(err(pos, "a decimal modulus"));
            }
            let modulus: u64 = input[start..pos]
                .parse()
                .map_err(|_| err(start, "a modulus that fits in 64 bits"))?;
            let component =
                ComponentSpec::new(kind, modulus).map_err(|_| err(start, "a modulus of at least 2"))?;
            components.push(component);
            match bytes.get(pos) {
                None => break,
                Some(b'x') => pos += 1,
                Some(_) => return Err(err(pos, "\"x\" or end of input")),
            }
        }
        Ok(GroupExpr { spec: GroupSpec::new(components).expect("at least one term parsed") })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Token {
    Open,
    Close,
    Comma,
    Num(u64),
}

fn tokenize(input: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let b = bytes[pos];
        match b {
            b'[' => out.push((pos, Token::Open)),
            b']' => out.push((pos, Token::Close)),
            b',' => out.push((pos, Token::Comma)),
            b if b.is_ascii_whitespace() => {}
            b if b.is_ascii_digit() => {
                let start = pos;
                while pos + 1 < bytes.len() && bytes[pos + 1].is_ascii_digit() {
                    pos += 1;
                }
                let n = input[start..=pos].parse().map_err(|_| ParseError {
                    input: input.to_string(),
                    position: start,
                    expected: "a residue that fits in 64 bits".into(),
                })?;
                out.push((start, Token::Num(n)));
            }
            _ => {
                return Err(ParseError {
                    input: input.to_string(),
                    position: pos,
                    expected: "a digit, \"[\", \"]\" or \",\"".into(),
                })
            }
        }
        pos += 1;
    }
    Ok(out)
}

fn reduce(spec: &GroupSpec<u64>, residues: Vec<u64>) -> Element<u64> {
    Element::new(
        spec.components().iter().zip(residues).map(|(c, r)| r % c.modulus()).collect(),
    )
}

/// Parses a list of elements: comma-separated residues for one-component
/// groups, bracketed tuples (`[a,b],[c,d]`) for products. A single unbracketed
/// tuple `a,b` is accepted for a product too.
pub fn parse_elements(spec: &GroupSpec<u64>, input: &str) -> Result<Vec<Element<u64>>, ParseError> {
    let arity = spec.components().len();
    let tokens = tokenize(input)?;
    let err = |position: usize, expected: String| ParseError { input: input.to_string(), position, expected };
    let end = input.len();
    let mut groups: Vec<Vec<u64>> = Vec::new();
    let bracketed = tokens.iter().any(|(_, t)| *t == Token::Open);
    let mut it = tokens.iter().peekable();
    if !bracketed {
        let mut nums = Vec::new();
        let mut want_num = true;
        for &(p, t) in &tokens {
            match (want_num, t) {
                (true, Token::Num(n)) => nums.push(n),
                (false, Token::Comma) => {}
                (true, _) => return Err(err(p, "a residue".into())),
                (false, _) => return Err(err(p, "\",\"".into())),
            }
            want_num = !want_num;
        }
        if nums.is_empty() || want_num {
            return Err(err(end, "a residue".into()));
        }
        if arity == 1 {
            groups = nums.into_iter().map(|n| vec![n]).collect();
        } else if nums.len() == arity {
            groups.push(nums);
        } else {
            return Err(err(0, format!("bracketed tuples of {arity} residues")));
        }
    } else {
        loop {
            match it.next() {
                Some(&(_, Token::Open)) => {}
                Some(&(p, _)) => return Err(err(p, "\"[\"".into())),
                None => return Err(err(end, "\"[\"".into())),
            }
            let mut tuple = Vec::new();
            loop {
                match it.next() {
                    Some(&(_, Token::Num(n))) => tuple.push(n),
                    Some(&(p, _)) => return Err(err(p, "a residue".into())),
                    None => return Err(err(end, "a residue".into())),
                }
                match it.next() {
                    Some(&(_, Token::Comma)) => {}
                    Some(&(p, Token::Close)) => {
                        if tuple.len() != arity {
                            return Err(err(p, format!("{arity} residue(s) in the tuple")));
                        }
                        break;
                    }
                    Some(&(p, _)) => return Err(err(p, "\",\" or \"]\"".into())),
                    None => return Err(err(end, "\"]\"".into())),
                }
            }
            groups.push(tuple);
            match it.next() {
                None => break,
                Some(&(_, Token::Comma)) => {}
                Some(&(p, _)) => return Err(err(p, "\",\" or end of input".into())),
            }
        }
    }
    Ok(groups.into_iter().map(|g| reduce(spec, g)).collect())
}

/// Parses exactly one element.
pub fn parse_element(spec: &GroupSpec<u64>, input: &str) -> Result<Element<u64>, ParseError> {
    let mut els = parse_elements(spec, input)?;
    if els.len() != 1 {
        return Err(ParseError { input: input.to_string(), position: 0, expected: "a single element".into() });
    }
    Ok(els.pop().unwrap())
}

#[derive(Debug, Parser)]
#[command(name = "abelian", version, about = "Finite abelian groups from modular arithmetic")]
pub struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest number of elements a group may have.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print elements, identity, order and element orders.
    Show(ShowArgs),
    /// Operate on individual elements.
    Elem {
        group: GroupExpr,
        #[command(subcommand)]
        action: ElemAction,
    },
    /// Generate a subgroup from a list of elements.
    Subgroup {
        group: GroupExpr,
        /// Generators, e.g. `60,30,15` or `[0,2],[3,5]`.
        #[arg(required = true, num_args = 1..)]
        generators: Vec<String>,
        /// Also print the order of every carrier element.
        #[arg(long)]
        orders: bool,
    },
    /// Order multiset, primary decomposition and invariant factors.
    Classify { group: GroupExpr },
    /// Decide whether two groups are isomorphic (exit 0 if so, 1 if not).
    Iso { first: GroupExpr, second: GroupExpr },
    /// List every isomorphism class of abelian groups of order N.
    Candidates { n: u64 },
}

#[derive(Debug, Args)]
pub struct ShowArgs {
    pub group: GroupExpr,
    #[arg(long)]
    pub elements: bool,
    #[arg(long)]
    pub orders: bool,
    #[arg(long)]
    pub identity: bool,
    #[arg(long)]
    pub order: bool,
}

#[derive(Debug, Subcommand)]
pub enum ElemAction {
    /// Inverse of A.
    Inv { a: String },
    /// A combined with B.
    Op { a: String, b: String },
    /// A combined with itself K times.
    Pow { a: String, k: u64 },
    /// Order of A.
    Order { a: String },
    /// The list A, A^2, ..., identity.
    Cycle { a: String },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

#[derive(Debug)]
enum Failure {
    Parse(String),
    Lib(Error),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Parse(_) | Failure::Lib(Error::Domain(_)) => EXIT_PARSE,
            Failure::Lib(Error::CapExceeded { .. }) => EXIT_CAP,
            Failure::Lib(Error::Membership { .. }) => EXIT_MEMBERSHIP,
            Failure::Lib(_) => EXIT_INTERNAL,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Parse(msg) => write!(f, "parse error: {msg}"),
            Failure::Lib(e) => e.fmt(f),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            }
        }
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok((stdout, code)) => Outcome { stdout, stderr: String::new(), code },
        Err(f) => Outcome { stdout: String::new(), stderr: format!("error: {f}\n"), code: f.code() },
    }
}

fn element_json(e: &Element<u64>) -> Value {
    match e.residues() {
        [r] => json!(r),
        rs => json!(rs),
    }
}

fn join_elements<'a>(els: impl IntoIterator<Item = &'a Element<u64>>) -> String {
    els.into_iter().map(ToString::to_string).join(" ")
}

fn render(json_mode: bool, value: Value, text: String) -> String {
    if json_mode {
        let mut s = serde_json::to_string_pretty(&value).expect("json values serialize");
        s.push('\n');
        s
    } else {
        text
    }
}

fn dispatch(cli: &Cli) -> Result<(String, i32), Failure> {
    let build = |g: &GroupExpr| Group::with_cap(g.spec().clone(), cli.cap);
    match &cli.command {
        Command::Show(args) => {
            let g = build(&args.group)?;
            Ok((show(&g, args, cli.json), EXIT_OK))
        }
        Command::Elem { group, action } => {
            let g = build(group)?;
            Ok((elem(&g, action, cli.json)?, EXIT_OK))
        }
        Command::Subgroup { group, generators, orders } => {
            let g = build(group)?;
            let gens = parse_elements(g.spec(), &generators.join(","))?;
            let s = subgroup::generate(&g, &gens)?;
            let sub = s.as_group();
            let mut value = json!({
                "group": group.to_string(),
                "generators": gens.iter().map(element_json).collect::<Vec<_>>(),
                "carrier": s.carrier().iter().map(element_json).collect::<Vec<_>>(),
                "order": s.order(),
            });
            let mut text = format!("carrier: {}\norder: {}\n", join_elements(s.carrier()), s.order());
            if *orders {
                let (rows, lines) = order_rows(sub);
                value["orders"] = rows;
                text.push_str(&lines);
            }
            Ok((render(cli.json, value, text), EXIT_OK))
        }
        Command::Classify { group } => {
            let g = build(group)?;
            let c = structure::classify(&g)?;
            let mut value = classification_json(&c);
            value["group"] = json!(group.to_string());
            Ok((render(cli.json, value, classification_text(&c, "")), EXIT_OK))
        }
        Command::Iso { first, second } => {
            let g = build(first)?;
            let h = build(second)?;
            let cert = structure::is_isomorphic(&g, &h)?;
            let mut left = classification_json(&cert.left);
            left["group"] = json!(first.to_string());
            let mut right = classification_json(&cert.right);
            right["group"] = json!(second.to_string());
            let value = json!({ "isomorphic": cert.isomorphic, "left": left, "right": right });
            let verdict = if cert.isomorphic { "isomorphic" } else { "not isomorphic" };
            let text = format!(
                "{first}\n{}{second}\n{}verdict: {verdict}\n",
                classification_text(&cert.left, "  "),
                classification_text(&cert.right, "  "),
            );
            let code = if cert.isomorphic { EXIT_OK } else { EXIT_NOT_ISOMORPHIC };
            Ok((render(cli.json, value, text), code))
        }
        Command::Candidates { n } => {
            if *n as u128 > cli.cap as u128 {
                return Err(Error::CapExceeded { order: *n as u128, cap: cli.cap }.into());
            }
            let classes = structure::abelian_groups_of_order(*n)?;
            let value = json!({
                "order": n,
                "invariant_factors": classes.iter().map(|c| c.factors().to_vec()).collect::<Vec<_>>(),
                "count": classes.len(),
            });
            let mut text: String = classes
                .iter()
                .map(|c| if c.factors().is_empty() { "1".to_string() } else { c.factors().iter().join(", ") })
                .map(|l| l + "\n")
                .collect();
            text.push_str(&format!("classes: {}\n", classes.len()));
            Ok((render(cli.json, value, text), EXIT_OK))
        }
    }
}

fn order_rows(g: &Group<u64>) -> (Value, String) {
    let mut rows = Vec::new();
    let mut text = String::new();
    for e in g.elements() {
        let o = g.element_order(&e).expect("enumerated elements are members");
        text.push_str(&format!("Element {e} has order {o}\n"));
        rows.push(json!({ "element": element_json(&e), "order": o }));
    }
    (Value::Array(rows), text)
}

fn show(g: &Group<u64>, args: &ShowArgs, json_mode: bool) -> String {
    let all = !(args.elements || args.orders || args.identity || args.order);
    let mut value = json!({ "group": g.spec().to_string() });
    let mut text = String::new();
    if all || args.elements {
        let els: Vec<_> = g.elements().collect();
        text.push_str(&format!("elements: {}\n", join_elements(&els)));
        value["elements"] = els.iter().map(element_json).collect();
    }
    if all || args.identity {
        text.push_str(&format!("identity: {}\n", g.identity()));
        value["identity"] = element_json(&g.identity());
    }
    if all || args.order {
        text.push_str(&format!("order: {}\n", g.order()));
        value["order"] = json!(g.order());
    }
    if args.orders {
        let (rows, lines) = order_rows(g);
        text.push_str(&lines);
        value["orders"] = rows;
    }
    render(json_mode, value, text)
}

fn elem(g: &Group<u64>, action: &ElemAction, json_mode: bool) -> Result<String, Failure> {
    let parse = |s: &str| parse_element(g.spec(), s);
    let (value, text) = match action {
        ElemAction::Inv { a } => {
            let r = g.inv(&parse(a)?)?;
            (json!({ "action": "inv", "result": element_json(&r) }), r.to_string())
        }
        ElemAction::Op { a, b } => {
            let r = g.op(&parse(a)?, &parse(b)?)?;
            (json!({ "action": "op", "result": element_json(&r) }), r.to_string())
        }
        ElemAction::Pow { a, k } => {
            let r = g.pow(&parse(a)?, *k)?;
            (json!({ "action": "pow", "result": element_json(&r) }), r.to_string())
        }
        ElemAction::Order { a } => {
            let o = g.element_order(&parse(a)?)?;
            (json!({ "action": "order", "order": o }), o.to_string())
        }
        ElemAction::Cycle { a } => {
            let c = subgroup::cycle(g, &parse(a)?)?;
            (
                json!({ "action": "cycle", "elements": c.iter().map(element_json).collect::<Vec<_>>() }),
                join_elements(&c),
            )
        }
    };
    Ok(render(json_mode, value, text + "\n"))
}

fn classification_json(c: &Classification) -> Value {
    json!({
        "order": c.order,
        "order_multiset": c.order_multiset,
        "primary": c.primary,
        "invariant_factors": c.invariant_factors,
    })
}

fn classification_text(c: &Classification, indent: &str) -> String {
    let factors = if c.invariant_factors.factors().is_empty() {
        "1".to_string()
    } else {
        c.invariant_factors.factors().iter().join(", ")
    };
    format!(
        "{indent}order: {}\n{indent}order multiset: {}\n{indent}primary decomposition: {}\n{indent}invariant factors: {factors}\n",
        c.order, c.order_multiset, c.primary
    )
}
