//! The group of Y-shaped diagrams labelled by `P_n = ℤⁿ ⊕ ℤ₂`, modulo
//! Multilinearity and Slide, and its normal form in
//! `Λ³H ⊕ Λ²H₍₂₎ ⊕ H₍₂₎ ⊕ ℤ₂`.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};

/// An element `(h, ε)` of `P_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub h: Vec<i64>,
    pub eps: u8,
}

impl Label {
    pub fn new(h: Vec<i64>, eps: u8) -> Self {
        Label { h, eps: eps % 2 }
    }

    pub fn zero(n: usize) -> Self {
        Label { h: vec![0; n], eps: 0 }
    }

    /// `(e_i, 0)`, with `i` from 1.
    pub fn e(i: usize, n: usize) -> Self {
        let mut h = vec![0; n];
        h[i - 1] = 1;
        Label { h, eps: 0 }
    }

    /// `s = (0, 1)`.
    pub fn s(n: usize) -> Self {
        Label { h: vec![0; n], eps: 1 }
    }

    pub fn n(&self) -> usize {
        self.h.len()
    }

    pub fn is_zero(&self) -> bool {
        self.eps == 0 && self.h.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Label) -> Result<Label> {
        if self.n() != other.n() {
            return Err(Error::Dimension { expected: self.n(), found: other.n() });
        }
        let h = self.h.iter().zip(&other.h).map(|(a, b)| a + b).collect();
        Ok(Label { h, eps: (self.eps + other.eps) % 2 })
    }

    pub fn scale(&self, k: i64) -> Label {
        Label { h: self.h.iter().map(|x| x * k).collect(), eps: (self.eps as i64 * k).rem_euclid(2) as u8 }
    }

    /// Permutes coordinates: coordinate `i` moves to `perm[i-1]`.
    pub fn relabel(&self, perm: &[usize]) -> Label {
        let mut h = vec![0; self.n()];
        for (i, &x) in self.h.iter().enumerate() {
            h[perm[i] - 1] = x;
        }
        Label { h, eps: self.eps }
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, name: &dyn Fn(usize) -> String) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.h.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sym = name(i + 1);
            match (first, c < 0) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            if c.abs() != 1 {
                write!(f, "{} ", c.abs())?;
            }
            write!(f, "{sym}")?;
            first = false;
        }
        if self.eps == 1 {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "s")?;
        }
        Ok(())
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &|i| format!("e{i}"))
    }
}

/// A Y-diagram `Y[z₁;z₂;z₃]`, stored at its lexicographically least cyclic
/// rotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YTerm {
    labels: [Label; 3],
}

impl YTerm {
    pub fn new(labels: [Label; 3]) -> Result<Self> {
        let n = labels[0].n();
        for l in &labels[1..] {
            if l.n() != n {
                return Err(Error::Dimension { expected: n, found: l.n() });
            }
        }
        let [a, b, c] = labels;
        let rotations = [[a.clone(), b.clone(), c.clone()], [b.clone(), c.clone(), a.clone()], [c, a, b]];
        let labels = rotations.into_iter().min().expect("three rotations");
        Ok(YTerm { labels })
    }

    pub fn labels(&self) -> &[Label; 3] {
        &self.labels
    }

    pub fn n(&self) -> usize {
        self.labels[0].n()
    }
}

impl fmt::Display for YTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.labels;
        write!(f, "Y[{a}; {b}; {c}]")
    }
}

/// A formal integer combination of Y-terms over `P_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    n: usize,
    terms: BTreeMap<YTerm, i64>,
}

impl AlgebraElement {
    pub fn zero(n: usize) -> Self {
        AlgebraElement { n, terms: BTreeMap::new() }
    }

    pub fn from_term(coeff: i64, labels: [Label; 3]) -> Result<Self> {
        let t = YTerm::new(labels)?;
        let mut x = AlgebraElement::zero(t.n());
        x.push(t, coeff);
        Ok(x)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<YTerm, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn push(&mut self, t: YTerm, c: i64) {
        let entry = self.terms.entry(t.clone()).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&t);
        }
    }

    pub fn add_term(&mut self, coeff: i64, labels: [Label; 3]) -> Result<()> {
        let t = YTerm::new(labels)?;
        if t.n() != self.n {
            return Err(Error::Dimension { expected: self.n, found: t.n() });
        }
        self.push(t, coeff);
        Ok(())
    }

    pub fn neg(&self) -> AlgebraElement {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.n);
        for (t, &c) in &self.terms {
            out.push(t.clone(), c * k);
        }
        out
    }

    /// Applies a coordinate permutation to every label.
    pub fn relabel(&self, perm: &[usize]) -> Result<AlgebraElement> {
        check_perm(perm, self.n)?;
        let mut out = AlgebraElement::zero(self.n);
        for (t, &c) in &self.terms {
            let [a, b, d] = &t.labels;
            out.push(YTerm::new([a.relabel(perm), b.relabel(perm), d.relabel(perm)])?, c);
        }
        Ok(out)
    }

    /// Formats with a custom name for basis vector `i`.
    pub fn display_with<'a>(&'a self, name: &'a dyn Fn(usize) -> String) -> impl fmt::Display + 'a {
        struct D<'a>(&'a AlgebraElement, &'a dyn Fn(usize) -> String);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.0.terms.is_empty() {
                    return write!(f, "0");
                }
                for (k, (t, &c)) in self.0.terms.iter().enumerate() {
                    match (k, c < 0) {
                        (0, true) => write!(f, "-")?,
                        (0, false) => {}
                        (_, true) => write!(f, " - ")?,
                        (_, false) => write!(f, " + ")?,
                    }
                    if c.abs() != 1 {
                        write!(f, "{} ", c.abs())?;
                    }
                    write!(f, "Y[")?;
                    for (i, l) in t.labels.iter().enumerate() {
                        if i > 0 {
                            write!(f, "; ")?;
                        }
                        l.fmt_with(f, self.1)?;
                    }
                    write!(f, "]")?;
                }
                Ok(())
            }
        }
        D(self, name)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&|i| format!("e{i}")))
    }
}

fn check_perm(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if perm.len() != n {
        return Err(Error::Dimension { expected: n, found: perm.len() });
    }
    for &p in perm {
        if p == 0 || p > n || seen[p - 1] {
            return Err(Error::Permutation(format!("{perm:?} is not a permutation of 1..={n}")));
        }
        seen[p - 1] = true;
    }
    Ok(())
}

pub fn add(x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    if x.n != y.n {
        return Err(Error::Dimension { expected: x.n, found: y.n });
    }
    let mut out = x.clone();
    for (t, &c) in &y.terms {
        out.push(t.clone(), c);
    }
    Ok(out)
}

pub fn equal(x: &AlgebraElement, y: &AlgebraElement) -> Result<bool> {
    if x.n != y.n {
        return Err(Error::Dimension { expected: x.n, found: y.n });
    }
    Ok(normalize(x)? == normalize(y)?)
}

/// Coordinates in `Λ³H ⊕ Λ²H₍₂₎ ⊕ H₍₂₎ ⊕ ℤ₂`. Indices are 1-based and
/// increasing; zero entries are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub lambda3: BTreeMap<(usize, usize, usize), i64>,
    pub lambda2: BTreeMap<(usize, usize), u8>,
    pub h2: Vec<u8>,
    pub rochlin: u8,
}

impl NormalForm {
    pub fn zero(n: usize) -> Self {
        NormalForm { h2: vec![0; n], ..Default::default() }
    }

    pub fn n(&self) -> usize {
        self.h2.len()
    }

    pub fn is_zero(&self) -> bool {
        self.lambda3.is_empty() && self.lambda2.is_empty() && self.rochlin == 0 && self.h2.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &NormalForm) -> Result<NormalForm> {
        if self.n() != other.n() {
            return Err(Error::Dimension { expected: self.n(), found: other.n() });
        }
        let mut out = self.clone();
        for (&k, &v) in &other.lambda3 {
            add_lambda3(&mut out.lambda3, k, v)?;
        }
        for (&k, &v) in &other.lambda2 {
            toggle(&mut out.lambda2, k, v);
        }
        for (a, b) in out.h2.iter_mut().zip(&other.h2) {
            *a ^= b;
        }
        out.rochlin ^= other.rochlin;
        Ok(out)
    }

    /// Reduces the Λ³ part mod 2.
    pub fn mod2(&self) -> NormalForm {
        let mut out = self.clone();
        out.lambda3 = self.lambda3.iter().filter(|(_, v)| *v % 2 != 0).map(|(&k, _)| (k, 1)).collect();
        out
    }

    /// The normal form after coordinate `i` is renamed `perm[i-1]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<NormalForm> {
        check_perm(perm, self.n())?;
        let mut out = NormalForm::zero(self.n());
        for (&(i, j, k), &v) in &self.lambda3 {
            let (key, sign) = sort3([perm[i - 1], perm[j - 1], perm[k - 1]]);
            add_lambda3(&mut out.lambda3, key, sign * v)?;
        }
        for &(i, j) in self.lambda2.keys() {
            let (a, b) = (perm[i - 1], perm[j - 1]);
            toggle(&mut out.lambda2, (a.min(b), a.max(b)), 1);
        }
        for (i, &v) in self.h2.iter().enumerate() {
            out.h2[perm[i] - 1] = v;
        }
        out.rochlin = self.rochlin;
        Ok(out)
    }

    /// JSON with only the non-zero components, keys like `"1,2,3"`.
    pub fn to_json_sparse(&self) -> Value {
        let mut m = Map::new();
        if !self.lambda3.is_empty() {
            m.insert("lambda3".into(), triple_map(&self.lambda3));
        }
        if !self.lambda2.is_empty() {
            m.insert("lambda2".into(), pair_map(&self.lambda2));
        }
        if self.h2.iter().any(|&x| x != 0) {
            m.insert("h2".into(), json!(self.h2));
        }
        if self.rochlin != 0 {
            m.insert("rochlin".into(), json!(self.rochlin));
        }
        Value::Object(m)
    }
}

pub(crate) fn triple_map<V: serde::Serialize>(m: &BTreeMap<(usize, usize, usize), V>) -> Value {
    Value::Object(m.iter().map(|((i, j, k), v)| (format!("{i},{j},{k}"), json!(v))).collect())
}

pub(crate) fn pair_map<V: serde::Serialize>(m: &BTreeMap<(usize, usize), V>) -> Value {
    Value::Object(m.iter().map(|((i, j), v)| (format!("{i},{j}"), json!(v))).collect())
}

fn add_lambda3(m: &mut BTreeMap<(usize, usize, usize), i64>, k: (usize, usize, usize), v: i64) -> Result<()> {
    let entry = m.entry(k).or_insert(0);
    *entry = entry.checked_add(v).ok_or_else(overflow)?;
    if *entry == 0 {
        m.remove(&k);
    }
    Ok(())
}

fn toggle(m: &mut BTreeMap<(usize, usize), u8>, k: (usize, usize), v: u8) {
    if v % 2 == 1 && m.remove(&k).is_none() {
        m.insert(k, 1);
    }
}

fn overflow() -> Error {
    Error::ResourceLimit("coefficient overflow in normal form".into())
}

/// Sorts three distinct indices, returning the sign of the permutation.
fn sort3(mut v: [usize; 3]) -> ((usize, usize, usize), i64) {
    let mut sign = 1;
    for i in 0..3 {
        for j in 0..2 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    ((v[0], v[1], v[2]), sign)
}

/// Basis labels: `E(i)` is `(e_i, 0)`, `S` is `(0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Basis {
    E(usize),
    S,
}

fn expand(l: &Label) -> Vec<(Basis, i64)> {
    let mut out: Vec<(Basis, i64)> =
        l.h.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (Basis::E(i + 1), c)).collect();
    if l.eps == 1 {
        out.push((Basis::S, 1));
    }
    out
}

/// Where a basis triple lands after Slide and antisymmetry rewriting.
#[derive(Debug, PartialEq, Eq)]
enum Bucket {
    Lambda3((usize, usize, usize), i64),
    Lambda2(usize, usize),
    H2(usize),
    Rochlin,
}

fn bucket(t: [Basis; 3]) -> Bucket {
    let mut es: Vec<usize> = t.iter().filter_map(|b| if let Basis::E(i) = b { Some(*i) } else { None }).collect();
    let s_count = 3 - es.len();
    match s_count {
        0 if es[0] != es[1] && es[1] != es[2] && es[0] != es[2] => {
            let (key, sign) = sort3([es[0], es[1], es[2]]);
            Bucket::Lambda3(key, sign)
        }
        0 => {
            // Y[e_i;e_i;e_j] = Y[s;e_i;e_j], and Y[e_i;e_i;e_i] slides twice to Y[s;s;e_i]
            es.sort_unstable();
            es.dedup();
            match es[..] {
                [i] => Bucket::H2(i),
                [i, j] => Bucket::Lambda2(i, j),
                _ => unreachable!(),
            }
        }
        1 if es[0] != es[1] => Bucket::Lambda2(es[0].min(es[1]), es[0].max(es[1])),
        // Y[s;e_i;e_i] slides to Y[s;s;e_i]
        1 | 2 => Bucket::H2(es[0]),
        _ => Bucket::Rochlin,
    }
}

/// Coordinates of `x`: expand every label multilinearly into basis labels,
/// rewrite repeated entries by Slide, sort by antisymmetry, and reduce
/// s-containing terms mod 2.
pub fn normalize(x: &AlgebraElement) -> Result<NormalForm> {
    let mut raw: BTreeMap<[Basis; 3], i64> = BTreeMap::new();
    for (t, &c) in &x.terms {
        let [a, b, d] = &t.labels;
        let (ea, eb, ed) = (expand(a), expand(b), expand(d));
        for &(ba, ca) in &ea {
            for &(bb, cb) in &eb {
                for &(bd, cd) in &ed {
                    let coeff = [ca, cb, cd].iter().try_fold(c, |acc, &k| acc.checked_mul(k)).ok_or_else(overflow)?;
                    let entry = raw.entry([ba, bb, bd]).or_insert(0);
                    *entry = entry.checked_add(coeff).ok_or_else(overflow)?;
                }
            }
        }
    }
    let mut out = NormalForm::zero(x.n);
    for (t, c) in raw {
        if c == 0 {
            continue;
        }
        let odd = c.rem_euclid(2) as u8;
        match bucket(t) {
            Bucket::Lambda3(key, sign) => add_lambda3(&mut out.lambda3, key, sign * c)?,
            Bucket::Lambda2(i, j) => toggle(&mut out.lambda2, (i, j), odd),
            Bucket::H2(i) => out.h2[i - 1] ^= odd,
            Bucket::Rochlin => out.rochlin ^= odd,
        }
    }
    Ok(out)
}

/// The canonical generators in basis order: `Y[e_i;e_j;e_k]` (i<j<k),
/// `Y[e_i;e_j;s]` (i<j), `Y[e_i;s;s]`, then `Y[s;s;s]`.
pub fn canonical_generators(n: usize) -> Vec<AlgebraElement> {
    let e = |i| Label::e(i, n);
    let s = Label::s(n);
    let mut out = Vec::new();
    let one = |labels| AlgebraElement::from_term(1, labels).expect("same dimension");
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                out.push(one([e(i), e(j), e(k)]));
            }
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(one([e(i), e(j), s.clone()]));
        }
    }
    for i in 1..=n {
        out.push(one([e(i), s.clone(), s.clone()]));
    }
    out.push(one([s.clone(), s.clone(), s]));
    out
}

/// Flattens a normal form into a coordinate vector in the order of
/// [`canonical_generators`].
pub fn coordinates(nf: &NormalForm) -> Vec<i64> {
    let n = nf.n();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                out.push(nf.lambda3.get(&(i, j, k)).copied().unwrap_or(0));
            }
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(nf.lambda2.get(&(i, j)).copied().unwrap_or(0) as i64);
        }
    }
    out.extend(nf.h2.iter().map(|&x| x as i64));
    out.push(nf.rochlin as i64);
    out
}

/// Parses `2 Y[e1 + e2; s; e3] - Y[s;s;s]` over `P_n`.
pub fn parse_element(text: &str, n: usize) -> Result<AlgebraElement> {
    let resolve = |name: &str| -> Option<usize> { name.strip_prefix('e').and_then(|k| k.parse().ok()) };
    Parser::new(text, n, &resolve).element()
}

/// Parses an element written in a surface basis `a1..ag, b1..bg`; the
/// resulting coordinates are `[a1, …, ag, b1, …, bg]`.
pub fn parse_surface_element(text: &str, genus: usize) -> Result<AlgebraElement> {
    let resolve = |name: &str| -> Option<usize> {
        let (head, k) = name.split_at(1);
        let k: usize = k.parse().ok()?;
        if k == 0 || k > genus {
            return Some(usize::MAX);
        }
        match head {
            "a" => Some(k),
            "b" => Some(genus + k),
            _ => None,
        }
    };
    Parser::new(text, 2 * genus, &resolve).element()
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    n: usize,
    resolve: &'a dyn Fn(&str) -> Option<usize>,
}

impl<'a> Parser<'a> {
    fn new(text: &str, n: usize, resolve: &'a dyn Fn(&str) -> Option<usize>) -> Self {
        Parser { chars: text.chars().collect(), pos: 0, n, resolve }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            other => Err(self.error(&format!("expected `{c}`, found {}", describe(other)))),
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Syntax(format!("at offset {}: {msg}", self.pos))
    }

    fn sign(&mut self) -> Option<i64> {
        match self.peek() {
            Some('+') => {
                self.pos += 1;
                Some(1)
            }
            Some('-') => {
                self.pos += 1;
                Some(-1)
            }
            _ => None,
        }
    }

    fn integer(&mut self) -> Result<Option<i64>> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Ok(None);
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map(Some).map_err(|_| self.error(&format!("integer `{digits}` out of range")))
    }

    fn coefficient(&mut self) -> Result<i64> {
        let c = self.integer()?.unwrap_or(1);
        if self.peek() == Some('*') {
            self.pos += 1;
        }
        Ok(c)
    }

    fn element(&mut self) -> Result<AlgebraElement> {
        let mut x = AlgebraElement::zero(self.n);
        if self.chars.iter().collect::<String>().trim() == "0" {
            return Ok(x);
        }
        let mut first = true;
        while self.peek().is_some() {
            let sign = match self.sign() {
                Some(s) => s,
                None if first => 1,
                None => return Err(self.error("expected `+` or `-` between terms")),
            };
            let c = self.coefficient()?;
            let labels = self.y_term()?;
            x.add_term(sign * c, labels)?;
            first = false;
        }
        if first {
            return Err(self.error("empty element"));
        }
        Ok(x)
    }

    fn y_term(&mut self) -> Result<[Label; 3]> {
        self.expect('Y')?;
        self.expect('[')?;
        let mut labels = vec![self.label()?];
        while self.peek() == Some(';') {
            self.pos += 1;
            labels.push(self.label()?);
        }
        self.expect(']')?;
        let found = labels.len();
        labels.try_into().map_err(|_| Error::Syntax(format!("a Y-term needs 3 labels, found {found}")))
    }

    fn label(&mut self) -> Result<Label> {
        let mut l = Label::zero(self.n);
        let mut first = true;
        loop {
            let sign = match self.sign() {
                Some(s) => s,
                None if first => 1,
                None => break,
            };
            first = false;
            let c = self.integer()?;
            if self.peek() == Some('*') {
                self.pos += 1;
            }
            let c = match (c, self.peek()) {
                (Some(0), Some(';' | ']' | '+' | '-')) => continue,
                (c, _) => sign * c.unwrap_or(1),
            };
            let name = self.symbol()?;
            if name == "s" {
                l.eps = (l.eps as i64 + c).rem_euclid(2) as u8;
                continue;
            }
            let i = (self.resolve)(&name).ok_or_else(|| self.error(&format!("unknown symbol `{name}`")))?;
            if i == 0 || i > self.n {
                return Err(Error::Index(format!("`{name}` is out of range for dimension {}", self.n)));
            }
            l.h[i - 1] += c;
        }
        if first {
            return Err(self.error("empty label"));
        }
        Ok(l)
    }

    fn symbol(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        if !self.chars.get(self.pos).is_some_and(|c| c.is_ascii_alphabetic()) {
            return Err(self.error(&format!("expected a basis symbol, found {}", describe(self.chars.get(self.pos).copied()))));
        }
        self.pos += 1;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }
}

fn describe(c: Option<char>) -> String {
    match c {
        Some(c) => format!("`{c}`"),
        None => "end of input".into(),
    }
}
