//! External and intermediate external addresses.
//!
//! An infinite address is an eventually periodic integer sequence kept in
//! canonical form: the period word is primitive and no preperiod entry can be
//! absorbed into the period. An intermediate address is a finite integer word
//! followed by one half-integer and the terminator `inf`; the terminator on its
//! own is the wrap point of the circle of addresses.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Largest magnitude accepted for a literal entry. Algorithms only ever add or
/// subtract small constants, so this leaves ample headroom in an `i64`.
pub const ENTRY_LIMIT: i64 = 1 << 48;

/// An element of `Z + 1/2`, stored as its (odd) double.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt(i64);

impl HalfInt {
    /// `k + 1/2`.
    pub fn plus_half(k: i64) -> Self {
        HalfInt(2 * k + 1)
    }

    /// `k - 1/2`.
    pub fn minus_half(k: i64) -> Self {
        HalfInt(2 * k - 1)
    }

    /// From the doubled value, which must be odd.
    pub fn from_twice(twice: i64) -> Option<Self> {
        twice.is_odd().then_some(HalfInt(twice))
    }

    pub fn twice(self) -> i64 {
        self.0
    }

    pub fn floor(self) -> i64 {
        (self.0 - 1) / 2
    }

    pub fn ceil(self) -> i64 {
        (self.0 + 1) / 2
    }

    pub fn shifted(self, k: i64) -> Self {
        HalfInt(self.0 + 2 * k)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2", self.0)
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (num, den) = s
            .split_once('/')
            .ok_or_else(|| Error::parse(0, format!("`{s}` is not a half-integer")))?;
        if den != "2" {
            return Err(Error::parse(0, format!("`{s}`: denominator must be 2")));
        }
        let twice = parse_int(num).map_err(|_| Error::parse(0, format!("`{s}` is not a half-integer")))?;
        HalfInt::from_twice(twice).ok_or_else(|| Error::parse(0, format!("`{s}`: numerator must be odd")))
    }
}

/// A single address entry: an integer or a half-integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Entry {
    Int(i64),
    Half(HalfInt),
}

impl Entry {
    fn twice(self) -> i64 {
        match self {
            Entry::Int(a) => 2 * a,
            Entry::Half(h) => h.twice(),
        }
    }

    pub fn as_int(self) -> Option<i64> {
        match self {
            Entry::Int(a) => Some(a),
            Entry::Half(_) => None,
        }
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.twice().cmp(&other.twice())
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Int(a) => write!(f, "{a}"),
            Entry::Half(h) => write!(f, "{h}"),
        }
    }
}

impl FromStr for Entry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.contains('/') {
            s.parse().map(Entry::Half)
        } else {
            parse_int(s).map(Entry::Int)
        }
    }
}

/// An eventually periodic integer sequence in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InfiniteAddress {
    pre: Vec<i64>,
    per: Vec<i64>,
}

impl InfiniteAddress {
    /// Builds `pre` followed by `per` repeated forever, canonicalized.
    pub fn new(pre: Vec<i64>, per: Vec<i64>) -> Result<Self> {
        if per.is_empty() {
            return Err(Error::InvalidArgument("empty period".into()));
        }
        Ok(Self::canonical(pre, per))
    }

    /// The purely periodic address `per(word)`.
    pub fn periodic(word: Vec<i64>) -> Result<Self> {
        Self::new(Vec::new(), word)
    }

    fn canonical(pre: Vec<i64>, per: Vec<i64>) -> Self {
        let (pre, per) = canonicalize(pre, per);
        InfiniteAddress { pre, per }
    }

    pub fn preperiod(&self) -> &[i64] {
        &self.pre
    }

    pub fn period_word(&self) -> &[i64] {
        &self.per
    }

    /// Exact (minimal) period.
    pub fn period(&self) -> usize {
        self.per.len()
    }

    pub fn is_periodic(&self) -> bool {
        self.pre.is_empty()
    }

    /// Entry at 0-based index `k`.
    pub fn at(&self, k: usize) -> i64 {
        if k < self.pre.len() {
            self.pre[k]
        } else {
            self.per[(k - self.pre.len()) % self.per.len()]
        }
    }

    /// First `len` entries.
    pub fn prefix(&self, len: usize) -> Vec<i64> {
        (0..len).map(|k| self.at(k)).collect()
    }

    pub fn shift(&self) -> InfiniteAddress {
        if self.pre.is_empty() {
            let mut per = self.per.clone();
            per.rotate_left(1);
            InfiniteAddress { pre: Vec::new(), per }
        } else {
            InfiniteAddress { pre: self.pre[1..].to_vec(), per: self.per.clone() }
        }
    }

    pub fn prepend(&self, j: i64) -> InfiniteAddress {
        let mut pre = Vec::with_capacity(self.pre.len() + 1);
        pre.push(j);
        pre.extend_from_slice(&self.pre);
        Self::canonical(pre, self.per.clone())
    }
}

/// A finite address `s_1 ... s_{n-2} t inf` with half-integer `t`, or the bare
/// terminator when `tail` is absent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntermediateAddress {
    body: Vec<i64>,
    tail: Option<HalfInt>,
}

impl IntermediateAddress {
    pub fn new(body: Vec<i64>, tail: HalfInt) -> Self {
        IntermediateAddress { body, tail: Some(tail) }
    }

    pub fn terminator() -> Self {
        IntermediateAddress { body: Vec::new(), tail: None }
    }

    pub fn is_terminator(&self) -> bool {
        self.tail.is_none()
    }

    pub fn body(&self) -> &[i64] {
        &self.body
    }

    pub fn tail(&self) -> Option<HalfInt> {
        self.tail
    }

    /// Number of symbols including the terminator.
    pub fn len(&self) -> usize {
        match self.tail {
            Some(_) => self.body.len() + 2,
            None => 1,
        }
    }

    /// Entry at 0-based index `k`; `None` at and beyond the terminator.
    pub fn at(&self, k: usize) -> Option<Entry> {
        if k < self.body.len() {
            Some(Entry::Int(self.body[k]))
        } else if k == self.body.len() {
            self.tail.map(Entry::Half)
        } else {
            None
        }
    }

    pub fn shift(&self) -> Result<IntermediateAddress> {
        match (self.body.split_first(), self.tail) {
            (_, None) => Err(Error::Terminator),
            (Some((_, rest)), tail) => Ok(IntermediateAddress { body: rest.to_vec(), tail }),
            (None, Some(_)) => Ok(IntermediateAddress::terminator()),
        }
    }

    /// `j` followed by this address; the terminator needs a half-integer.
    pub fn prepend(&self, j: Entry) -> Result<IntermediateAddress> {
        match (j, self.tail) {
            (Entry::Int(a), Some(t)) => {
                let mut body = Vec::with_capacity(self.body.len() + 1);
                body.push(a);
                body.extend_from_slice(&self.body);
                Ok(IntermediateAddress { body, tail: Some(t) })
            }
            (Entry::Half(h), None) => Ok(IntermediateAddress::new(Vec::new(), h)),
            _ => Err(Error::InvalidPrepend { entry: j.to_string(), address: self.to_string() }),
        }
    }
}

/// A point of the circle of addresses.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Address {
    Infinite(InfiniteAddress),
    Intermediate(IntermediateAddress),
}

impl Address {
    pub fn terminator() -> Self {
        Address::Intermediate(IntermediateAddress::terminator())
    }

    pub fn periodic(word: Vec<i64>) -> Result<Self> {
        InfiniteAddress::periodic(word).map(Address::Infinite)
    }

    pub fn is_terminator(&self) -> bool {
        matches!(self, Address::Intermediate(a) if a.is_terminator())
    }

    /// Entry at 0-based index `k`; `None` at and beyond a terminator.
    pub fn at(&self, k: usize) -> Option<Entry> {
        match self {
            Address::Infinite(a) => Some(Entry::Int(a.at(k))),
            Address::Intermediate(a) => a.at(k),
        }
    }

    /// Length of an intermediate address, `None` for infinite ones.
    pub fn len(&self) -> Option<usize> {
        match self {
            Address::Infinite(_) => None,
            Address::Intermediate(a) => Some(a.len()),
        }
    }

    pub fn as_infinite(&self) -> Option<&InfiniteAddress> {
        match self {
            Address::Infinite(a) => Some(a),
            Address::Intermediate(_) => None,
        }
    }

    pub fn as_intermediate(&self) -> Option<&IntermediateAddress> {
        match self {
            Address::Infinite(_) => None,
            Address::Intermediate(a) => Some(a),
        }
    }

    /// The shift map: drop the first entry.
    pub fn shift(&self) -> Result<Address> {
        match self {
            Address::Infinite(a) => Ok(Address::Infinite(a.shift())),
            Address::Intermediate(a) => a.shift().map(Address::Intermediate),
        }
    }

    /// Inverse branch of the shift selected by the first entry `j`.
    pub fn prepend(&self, j: Entry) -> Result<Address> {
        match (self, j) {
            (Address::Infinite(a), Entry::Int(k)) => Ok(Address::Infinite(a.prepend(k))),
            (Address::Intermediate(a), _) => a.prepend(j).map(Address::Intermediate),
            (Address::Infinite(_), Entry::Half(_)) => {
                Err(Error::InvalidPrepend { entry: j.to_string(), address: self.to_string() })
            }
        }
    }

    pub(crate) fn prepend_int(&self, j: i64) -> Address {
        self.prepend(Entry::Int(j)).expect("integer prepend to a non-terminator")
    }
}

impl From<InfiniteAddress> for Address {
    fn from(a: InfiniteAddress) -> Self {
        Address::Infinite(a)
    }
}

impl From<IntermediateAddress> for Address {
    fn from(a: IntermediateAddress) -> Self {
        Address::Intermediate(a)
    }
}

/// Linear order on the circle cut open at the terminator, which sorts last.
///
/// Restricted to non-terminators this is the lexicographic order.
impl Ord for Address {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Address::Infinite(a), Address::Infinite(b)) = (self, other) {
            return a.cmp(b);
        }
        let mut k = 0;
        loop {
            match (self.at(k), other.at(k)) {
                (Some(x), Some(y)) => match x.cmp(&y) {
                    Ordering::Equal => k += 1,
                    o => return o,
                },
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Greater,
                (Some(_), None) => return Ordering::Less,
            }
        }
    }
}

/// Lexicographic order.
impl Ord for InfiniteAddress {
    fn cmp(&self, other: &Self) -> Ordering {
        // both sequences are periodic past the longer preperiod, so one
        // common period decides
        let window = self.pre.len().max(other.pre.len()) + self.per.len().lcm(&other.per.len());
        (0..window)
            .map(|k| self.at(k).cmp(&other.at(k)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

impl PartialOrd for InfiniteAddress {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialOrd for Address {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic comparison of two points of the line (terminator rejected).
pub fn compare(a: &Address, b: &Address) -> Result<Ordering> {
    if a.is_terminator() || b.is_terminator() {
        return Err(Error::Terminator);
    }
    Ok(a.cmp(b))
}

/// Whether `(a, b, c)` is positively oriented on the circle.
pub fn circular_order(a: &Address, b: &Address, c: &Address) -> Result<bool> {
    if a == b || b == c || a == c {
        return Err(Error::NotDistinct);
    }
    Ok((a < b && b < c) || (b < c && c < a) || (c < a && a < b))
}

/// Reduces `pre (per)^inf` to a primitive period with nothing absorbable left
/// in the preperiod.
pub(crate) fn canonicalize<T: PartialEq>(mut pre: Vec<T>, mut per: Vec<T>) -> (Vec<T>, Vec<T>) {
    let n = per.len();
    if let Some(d) = (1..n).find(|d| n.is_multiple_of(*d) && (*d..n).all(|i| per[i] == per[i - d])) {
        per.truncate(d);
    }
    while !pre.is_empty() && pre.last() == per.last() {
        pre.pop();
        per.rotate_right(1);
    }
    (pre, per)
}

fn parse_int(s: &str) -> Result<i64> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(0, format!("`{s}` is not an integer")));
    }
    match s.parse::<i64>() {
        Ok(v) if v.abs() <= ENTRY_LIMIT => Ok(v),
        _ => Err(Error::parse(0, format!("`{s}` exceeds the entry limit {ENTRY_LIMIT}"))),
    }
}

/// Splits a literal into words, treating parentheses as separate tokens.
pub(crate) fn tokenize(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut cur = String::new();
    for ch in text.chars() {
        if ch.is_whitespace() || ch == '(' || ch == ')' {
            if !cur.is_empty() {
                tokens.push(std::mem::take(&mut cur));
            }
            if ch != ' ' && !ch.is_whitespace() {
                tokens.push(ch.to_string());
            }
        } else {
            cur.push(ch);
        }
    }
    if !cur.is_empty() {
        tokens.push(cur);
    }
    tokens
}

/// Parses an address literal such as `"2 1 (0 2)"` or `"0 3 0 1/2 inf"`.
pub fn parse(text: &str) -> Result<Address> {
    let tokens = tokenize(text);
    let at = |i: usize, e: Error| match e {
        Error::Parse { message, .. } => Error::parse(i, message),
        e => e,
    };
    let mut pre = Vec::new();
    let mut i = 0;
    while i < tokens.len() && tokens[i] != "(" && tokens[i] != "inf" && !tokens[i].contains('/') {
        pre.push(parse_int(&tokens[i]).map_err(|e| at(i, e))?);
        i += 1;
    }
    let rest = &tokens[i..];
    match rest.first().map(String::as_str) {
        None => Err(Error::parse(i, "missing period or terminator")),
        Some("inf") => {
            if rest.len() > 1 {
                return Err(Error::parse(i + 1, "trailing input after `inf`"));
            }
            if !pre.is_empty() {
                return Err(Error::parse(i, "an intermediate address needs a half-integer before `inf`"));
            }
            Ok(Address::terminator())
        }
        Some("(") => {
            let close = rest
                .iter()
                .position(|t| t == ")")
                .ok_or_else(|| Error::parse(tokens.len(), "unclosed `(`"))?;
            if close + 1 != rest.len() {
                return Err(Error::parse(i + close + 1, "trailing input after `)`"));
            }
            if close == 1 {
                return Err(Error::parse(i + 1, "empty period"));
            }
            let per = rest[1..close]
                .iter()
                .enumerate()
                .map(|(k, t)| parse_int(t).map_err(|e| at(i + 1 + k, e)))
                .collect::<Result<Vec<_>>>()?;
            Ok(Address::Infinite(InfiniteAddress::canonical(pre, per)))
        }
        Some(tok) => {
            let tail: HalfInt = tok.parse().map_err(|e| at(i, e))?;
            match rest.get(1).map(String::as_str) {
                Some("inf") if rest.len() == 2 => {
                    Ok(Address::Intermediate(IntermediateAddress::new(pre, tail)))
                }
                Some("inf") => Err(Error::parse(i + 2, "trailing input after `inf`")),
                _ => Err(Error::parse(i + 1, "a half-integer must be followed by `inf`")),
            }
        }
    }
}

impl FromStr for Address {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

fn write_words(f: &mut fmt::Formatter<'_>, words: &[i64]) -> fmt::Result {
    for (k, w) in words.iter().enumerate() {
        if k > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{w}")?;
    }
    Ok(())
}

impl fmt::Display for InfiniteAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_words(f, &self.pre)?;
        if !self.pre.is_empty() {
            f.write_str(" ")?;
        }
        f.write_str("(")?;
        write_words(f, &self.per)?;
        f.write_str(")")
    }
}

impl fmt::Display for IntermediateAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_words(f, &self.body)?;
        if let Some(t) = self.tail {
            if !self.body.is_empty() {
                f.write_str(" ")?;
            }
            write!(f, "{t} ")?;
        }
        f.write_str("inf")
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Address::Infinite(a) => a.fmt(f),
            Address::Intermediate(a) => a.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Address {
        s.parse().unwrap()
    }

    #[test]
    fn parses_literals() {
        let x = a("(0 1 1 0 0 2)");
        let inf = x.as_infinite().unwrap();
        assert_eq!(inf.preperiod(), &[] as &[i64]);
        assert_eq!(inf.period_word(), &[0, 1, 1, 0, 0, 2]);

        let s = a("0 1 1 0 1/2 inf");
        let im = s.as_intermediate().unwrap();
        assert_eq!(im.body(), &[0, 1, 1, 0]);
        assert_eq!(im.tail(), Some(HalfInt::plus_half(0)));
        assert_eq!(im.len(), 6);

        let y = a("2 1 (0 2)");
        assert_eq!(y.as_infinite().unwrap().preperiod(), &[2, 1]);
        assert!(a("inf").is_terminator());
        assert_eq!(a("(0 1)"), a("( 0 1 )"));
    }

    #[test]
    fn rejects_malformed_literals() {
        for bad in ["", "()", "0 1", "1/2", "1/2 0 inf", "0 inf", "(0 1", "(0) 1", "2/2 inf", "1/3 inf", "x (0)", "inf inf"] {
            let err = parse(bad).unwrap_err();
            assert!(err.is_parse(), "{bad}: {err}");
        }
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(a("(0 1)").to_string(), "(0 1)");
        assert_eq!(IntermediateAddress::new(vec![], HalfInt::plus_half(0)).to_string(), "1/2 inf");
        let absorbed = InfiniteAddress::new(vec![0], vec![0]).unwrap();
        assert_eq!(absorbed.to_string(), "(0)");
        assert_eq!(a("1 (0 1 0 1)").to_string(), "(1 0)");
        assert_eq!(a("-3/2 inf").to_string(), "-3/2 inf");
        for lit in ["(0 1 1 0 0 2)", "2 1 (0 2)", "2 (1 0)", "0 3 0 1/2 inf", "inf", "-1 (2)"] {
            assert_eq!(a(lit).to_string(), lit);
        }
    }

    #[test]
    fn compares_lexicographically() {
        let s = a("0 1 1 0 1/2 inf");
        assert_eq!(compare(&a("(0 1 1 0 0 2)"), &s).unwrap(), Ordering::Less);
        assert_eq!(compare(&a("(0 1)"), &a("(0 1)")).unwrap(), Ordering::Equal);
        assert_eq!(compare(&s, &a("(0 2 0 1 0 1)")).unwrap(), Ordering::Less);
        assert_eq!(compare(&a("1 (0 1)"), &a("(1 0)")).unwrap(), Ordering::Equal);
        assert_eq!(compare(&a("inf"), &s), Err(Error::Terminator));
    }

    #[test]
    fn circular_orientation() {
        let (p0, h, t, p1) = (a("(0)"), a("1/2 inf"), a("inf"), a("(1)"));
        assert!(circular_order(&p0, &h, &t).unwrap());
        assert!(circular_order(&t, &p0, &h).unwrap());
        assert!(!circular_order(&t, &h, &p0).unwrap());
        // per(0) < 1/2 inf < per(1), so this triple is a rotation of an increasing one
        assert!(circular_order(&p1, &p0, &h).unwrap());
        assert!(!circular_order(&h, &p0, &p1).unwrap());
        assert_eq!(circular_order(&h, &h, &p0), Err(Error::NotDistinct));
    }

    #[test]
    fn shift_and_prepend() {
        assert_eq!(a("(0 1 1 0 0 2)").shift().unwrap(), a("(1 1 0 0 2 0)"));
        assert_eq!(a("0 1 1 0 1/2 inf").shift().unwrap(), a("1 1 0 1/2 inf"));
        assert_eq!(a("1/2 inf").shift().unwrap(), a("inf"));
        assert_eq!(a("inf").shift(), Err(Error::Terminator));

        assert_eq!(a("0 1 1 0 1/2 inf").prepend(Entry::Int(1)).unwrap(), a("1 0 1 1 0 1/2 inf"));
        assert_eq!(a("inf").prepend(Entry::Half(HalfInt::plus_half(0))).unwrap(), a("1/2 inf"));
        assert_eq!(a("(0)").prepend(Entry::Int(0)).unwrap(), a("(0)"));
        assert!(a("inf").prepend(Entry::Int(0)).is_err());
        assert!(a("(0)").prepend(Entry::Half(HalfInt::plus_half(0))).is_err());
    }

    #[test]
    fn half_integers() {
        let h = HalfInt::plus_half(-2);
        assert_eq!((h.floor(), h.ceil()), (-2, -1));
        assert_eq!(h.to_string(), "-3/2");
        assert_eq!("-3/2".parse::<HalfInt>().unwrap(), h);
        assert!(Entry::Int(-1) < Entry::Half(h.shifted(1)));
    }
}
