//! Itineraries relative to a base address, kneading sequences, and the
//! inverse problem of realizing a prescribed itinerary.
//!
//! For a base `s` the line is cut at the points `j s` (the address `s` with
//! `j` prepended). The `k`-th itinerary entry of `r` records which gap
//! `(j s, (j+1) s)` contains `shift^{k-1}(r)`, with a boundary symbol when it
//! is one of the cut points and `*` once `r` has run into the terminator.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::address::{canonicalize, tokenize, Address, Entry, HalfInt, InfiniteAddress, IntermediateAddress};
use crate::error::{Error, Result};

/// One itinerary entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    Int(i64),
    /// The cut point `j s`, read as `j` from above and `j - 1` from below.
    Boundary(i64),
    /// The orbit has reached the terminator.
    Star,
}

impl Symbol {
    pub fn as_int(self) -> Option<i64> {
        match self {
            Symbol::Int(j) => Some(j),
            _ => None,
        }
    }

    /// Resolves a boundary symbol to one side.
    pub fn resolve(self, side: Side) -> Symbol {
        match (self, side) {
            (Symbol::Boundary(j), Side::Upper) => Symbol::Int(j),
            (Symbol::Boundary(j), Side::Lower) => Symbol::Int(j - 1),
            (s, _) => s,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Int(j) => write!(f, "{j}"),
            Symbol::Boundary(j) => write!(f, "{j}|{}", j - 1),
            Symbol::Star => f.write_str("*"),
        }
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "*" {
            return Ok(Symbol::Star);
        }
        let int = |t: &str| match t.parse::<Entry>() {
            Ok(Entry::Int(j)) => Ok(j),
            _ => Err(Error::parse(0, format!("`{s}` is not an itinerary symbol"))),
        };
        match s.split_once('|') {
            Some((hi, lo)) => {
                let j = int(hi)?;
                if int(lo)? != j - 1 {
                    return Err(Error::parse(0, format!("`{s}`: boundary must read j|j-1")));
                }
                Ok(Symbol::Boundary(j))
            }
            None => int(s).map(Symbol::Int),
        }
    }
}

/// Which one-sided limit to take at a boundary symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Upper,
    Lower,
}

/// Which of two realizations to prefer when a periodic itinerary is realized
/// by several periodic addresses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SeedSide {
    #[default]
    FromBelow,
    FromAbove,
}

/// A finite (`*`-terminated) or eventually periodic symbol sequence.
///
/// Finite itineraries keep all symbols in `pre` and leave `per` empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Itinerary {
    pre: Vec<Symbol>,
    per: Vec<Symbol>,
}

impl Itinerary {
    /// A finite itinerary; `*` must occur exactly once, at the end.
    pub fn finite(symbols: Vec<Symbol>) -> Result<Self> {
        let stars = symbols.iter().filter(|s| **s == Symbol::Star).count();
        if stars != 1 || symbols.last() != Some(&Symbol::Star) {
            return Err(Error::InvalidArgument("a finite itinerary ends in its only `*`".into()));
        }
        Ok(Itinerary { pre: symbols, per: Vec::new() })
    }

    /// `pre` followed by `per` repeated, canonicalized; `*` is not allowed.
    pub fn periodic(pre: Vec<Symbol>, per: Vec<Symbol>) -> Result<Self> {
        if per.is_empty() {
            return Err(Error::InvalidArgument("empty period".into()));
        }
        if pre.iter().chain(&per).any(|s| *s == Symbol::Star) {
            return Err(Error::InvalidArgument("`*` inside an infinite itinerary".into()));
        }
        let (pre, per) = canonicalize(pre, per);
        Ok(Itinerary { pre, per })
    }

    /// The purely periodic itinerary over integer symbols.
    pub fn periodic_ints(word: &[i64]) -> Result<Self> {
        Self::periodic(Vec::new(), word.iter().map(|&j| Symbol::Int(j)).collect())
    }

    pub fn is_finite(&self) -> bool {
        self.per.is_empty()
    }

    pub fn preperiod(&self) -> &[Symbol] {
        &self.pre
    }

    /// The period word (empty for finite itineraries).
    pub fn period_word(&self) -> &[Symbol] {
        &self.per
    }

    /// Number of symbols of a finite itinerary.
    pub fn len(&self) -> Option<usize> {
        self.is_finite().then_some(self.pre.len())
    }

    /// Symbol at 0-based index `k`, `None` past the end of a finite itinerary.
    pub fn at(&self, k: usize) -> Option<Symbol> {
        if k < self.pre.len() {
            Some(self.pre[k])
        } else if self.per.is_empty() {
            None
        } else {
            Some(self.per[(k - self.pre.len()) % self.per.len()])
        }
    }

    /// First `len` symbols (fewer if the itinerary is shorter).
    pub fn prefix(&self, len: usize) -> Vec<Symbol> {
        (0..len).map_while(|k| self.at(k)).collect()
    }

    /// Drops the first symbol; `None` for the one-symbol itinerary `*`.
    pub fn shift(&self) -> Option<Itinerary> {
        if !self.pre.is_empty() {
            if self.per.is_empty() && self.pre.len() == 1 {
                return None;
            }
            return Some(Itinerary { pre: self.pre[1..].to_vec(), per: self.per.clone() });
        }
        let mut per = self.per.clone();
        per.rotate_left(1);
        Some(Itinerary { pre: Vec::new(), per })
    }

    /// Replaces every boundary symbol by its one-sided value.
    pub fn resolve(&self, side: Side) -> Itinerary {
        let map = |v: &[Symbol]| v.iter().map(|s| s.resolve(side)).collect::<Vec<_>>();
        if self.is_finite() {
            Itinerary { pre: map(&self.pre), per: Vec::new() }
        } else {
            let (pre, per) = canonicalize(map(&self.pre), map(&self.per));
            Itinerary { pre, per }
        }
    }

    /// Number of positions that decide equality against another itinerary.
    pub(crate) fn window(&self, other: &Itinerary) -> usize {
        let pre = self.pre.len().max(other.pre.len());
        let per = num_integer::lcm(self.per.len().max(1), other.per.len().max(1));
        pre + per
    }

    /// 1-based index of the first position where the sequences differ.
    /// `*` and boundary symbols differ from everything but themselves.
    pub fn first_difference(&self, other: &Itinerary) -> Option<usize> {
        (0..self.window(other))
            .find(|&k| self.at(k) != other.at(k) || matches!(self.at(k), Some(Symbol::Star)))
            .map(|k| k + 1)
    }
}

impl fmt::Display for Itinerary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.pre.iter().map(Symbol::to_string).collect();
        f.write_str(&words.join(" "))?;
        if !self.per.is_empty() {
            if !self.pre.is_empty() {
                f.write_str(" ")?;
            }
            let per: Vec<String> = self.per.iter().map(Symbol::to_string).collect();
            write!(f, "({})", per.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for Itinerary {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let tokens = tokenize(text);
        let sym = |i: usize, t: &str| {
            t.parse::<Symbol>().map_err(|e| match e {
                Error::Parse { message, .. } => Error::parse(i, message),
                e => e,
            })
        };
        match tokens.iter().position(|t| t == "(") {
            Some(open) => {
                if tokens.last().map(String::as_str) != Some(")") || open + 2 > tokens.len() - 1 {
                    return Err(Error::parse(open, "malformed period"));
                }
                let pre = tokens[..open].iter().enumerate().map(|(i, t)| sym(i, t)).collect::<Result<_>>()?;
                let per = tokens[open + 1..tokens.len() - 1]
                    .iter()
                    .enumerate()
                    .map(|(i, t)| sym(open + 1 + i, t))
                    .collect::<Result<_>>()?;
                Itinerary::periodic(pre, per).map_err(|e| Error::parse(open, e.to_string()))
            }
            None => {
                let syms = tokens.iter().enumerate().map(|(i, t)| sym(i, t)).collect::<Result<_>>()?;
                Itinerary::finite(syms).map_err(|e| Error::parse(0, e.to_string()))
            }
        }
    }
}

/// Itinerary symbol of the point `x` (not the terminator) relative to `s`.
fn symbol_at(x: &Address, s: &Address) -> Symbol {
    let first = x.at(0).expect("non-terminator");
    if s.is_terminator() {
        // cut points are (j - 1/2) inf
        return match first {
            Entry::Int(a) => Symbol::Int(a),
            Entry::Half(h) => Symbol::Boundary(h.ceil()),
        };
    }
    match first {
        Entry::Half(h) => Symbol::Int(h.floor()),
        Entry::Int(a) => {
            let tail = x.shift().expect("non-terminator");
            match tail.cmp(s) {
                Ordering::Greater => Symbol::Int(a),
                Ordering::Less => Symbol::Int(a - 1),
                Ordering::Equal => Symbol::Boundary(a),
            }
        }
    }
}

/// The itinerary of `r` with respect to the base `s`.
pub fn itinerary(r: &Address, s: &Address) -> Itinerary {
    match r {
        Address::Intermediate(_) => {
            let mut syms = Vec::new();
            let mut x = r.clone();
            while !x.is_terminator() {
                syms.push(symbol_at(&x, s));
                x = x.shift().expect("non-terminator");
            }
            syms.push(Symbol::Star);
            Itinerary { pre: syms, per: Vec::new() }
        }
        Address::Infinite(a) => {
            let (p, n) = (a.preperiod().len(), a.period());
            let mut syms = Vec::with_capacity(p + n);
            let mut x = r.clone();
            for _ in 0..p + n {
                syms.push(symbol_at(&x, s));
                x = x.shift().expect("infinite");
            }
            let per = syms.split_off(p);
            let (pre, per) = canonicalize(syms, per);
            Itinerary { pre, per }
        }
    }
}

/// The kneading sequence `K(s)`, the itinerary of `s` relative to itself.
pub fn kneading(s: &Address) -> Result<Itinerary> {
    if s.is_terminator() {
        return Err(Error::Terminator);
    }
    Ok(itinerary(s, s))
}

/// The one-sided kneading sequences `K+(s)` and `K-(s)`.
pub fn kneading_pm(s: &Address, side: Side) -> Result<Itinerary> {
    kneading(s).map(|k| k.resolve(side))
}

/// Whether the orbit of `u` avoids both one-sided kneading sequences of `s`,
/// which is necessary for `u` to be an itinerary relative to `s`.
fn avoids_kneading(u: &Itinerary, s: &Address) -> Result<()> {
    if s.is_terminator() {
        return Ok(());
    }
    let upper = kneading_pm(s, Side::Upper)?;
    let lower = kneading_pm(s, Side::Lower)?;
    let steps = u.pre.len() + u.per.len();
    let mut cur = u.clone();
    for k in 1..=steps {
        match cur.shift() {
            None => break,
            Some(next) => cur = next,
        }
        if cur == upper || cur == lower {
            return Err(Error::NotRealized(format!("shift^{k} of {u} is a one-sided kneading sequence of {s}")));
        }
    }
    Ok(())
}

/// Entry to prepend so that the new first itinerary symbol is `Int(j)` given
/// the comparison of the current point with the base.
fn forced_entry(j: i64, ord: Ordering) -> Option<i64> {
    match ord {
        Ordering::Greater => Some(j),
        Ordering::Less => Some(j + 1),
        Ordering::Equal => None,
    }
}

/// Prepends the integer itinerary symbols `word` (last one first) to `x`,
/// choosing each entry so that the itinerary prefix is reproduced.
pub(crate) fn pull_back(word: &[i64], x: &Address, s: &Address) -> Result<Address> {
    let mut cur = x.clone();
    for &j in word.iter().rev() {
        let a = forced_entry(j, cur.cmp(s))
            .ok_or_else(|| Error::NotRealized(format!("pullback through {j} hits the base {s}")))?;
        cur = cur.prepend_int(a);
    }
    Ok(cur)
}

fn int_word(syms: &[Symbol]) -> Result<Vec<i64>> {
    syms.iter()
        .map(|s| s.as_int().ok_or_else(|| Error::NotRealized(format!("target contains the symbol {s}"))))
        .collect()
}

/// Finds an address whose itinerary relative to `s` is `u`.
///
/// Finite targets are realized by an intermediate address of the same length.
/// Periodic targets may be realized by more than one periodic address; the
/// pullback iteration is then started just below or just above `s` according
/// to `side`, which picks the realization adjacent to `s` on that side.
pub fn solve_itinerary(u: &Itinerary, s: &Address, side: SeedSide) -> Result<Address> {
    if s.is_terminator() {
        return solve_over_terminator(u);
    }
    avoids_kneading(u, s)?;
    let r = if u.is_finite() {
        let body = int_word(&u.pre[..u.pre.len() - 1])?;
        match body.split_last() {
            None => Address::terminator(),
            Some((&last, rest)) => {
                let start = Address::Intermediate(IntermediateAddress::new(Vec::new(), HalfInt::plus_half(last)));
                pull_back(rest, &start, s)?
            }
        }
    } else {
        let per = int_word(&u.per)?;
        let pre = int_word(&u.pre)?;
        let cycle = solve_cycle(&per, s, side)?;
        pull_back(&pre, &Address::Infinite(cycle), s)?
    };
    if itinerary(&r, s) != *u {
        return Err(Error::NotRealized(format!("{u} relative to {s}: verification failed")));
    }
    Ok(r)
}

fn solve_over_terminator(u: &Itinerary) -> Result<Address> {
    if u.is_finite() {
        return match u.len() {
            Some(1) => Ok(Address::terminator()),
            _ => Err(Error::NotRealized("finite integer itineraries need a non-terminator base".into())),
        };
    }
    let r = InfiniteAddress::new(int_word(&u.pre)?, int_word(&u.per)?)?;
    Ok(Address::Infinite(r))
}

/// Periodic realization of `per(word)` by iterating the pullback map from a
/// seed infinitesimally close to `s`.
fn solve_cycle(word: &[i64], s: &Address, side: SeedSide) -> Result<InfiniteAddress> {
    let m = word.len();
    let seed_ord = match side {
        SeedSide::FromBelow => Ordering::Less,
        SeedSide::FromAbove => Ordering::Greater,
    };
    let depth = match s {
        Address::Infinite(a) => a.preperiod().len() + a.period(),
        Address::Intermediate(a) => a.len(),
    };
    let target = Itinerary::periodic_ints(word)?;
    let rounds = 2 * (depth + m) + 8;
    // `cur` is the current point with the seed replaced by `s` itself; the
    // seed offset only matters while `cur` still equals `s`
    let mut cur = s.clone();
    let mut chosen: Vec<i64> = Vec::new();
    for round in 1..=rounds {
        for &j in word.iter().rev() {
            let ord = match cur.cmp(s) {
                Ordering::Equal => seed_ord,
                o => o,
            };
            let a = forced_entry(j, ord).expect("nonzero ordering");
            cur = cur.prepend_int(a);
            chosen.push(a);
        }
        let front: Vec<i64> = chosen.iter().rev().copied().collect();
        for t in (1..=round).map(|k| k * m) {
            let w = &front[..t];
            let stable = front.len() >= 2 * t && (t..2 * t).all(|i| front[i] == w[i - t]);
            if !stable {
                continue;
            }
            let cand = InfiniteAddress::periodic(w.to_vec())?;
            if itinerary(&Address::Infinite(cand.clone()), s) == target {
                return Ok(cand);
            }
        }
    }
    Err(Error::NotRealized(format!("no periodic realization of {target} relative to {s}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Address {
        s.parse().unwrap()
    }

    fn it(s: &str) -> Itinerary {
        s.parse().unwrap()
    }

    #[test]
    fn parses_and_prints_itineraries() {
        for lit in ["0 2 0 0 *", "(0 1 0 0 0 1)", "1|0 (2)", "*", "(-1|-2 3)"] {
            assert_eq!(it(lit).to_string(), lit);
        }
        assert_eq!(it("(0 0)"), it("(0)"));
        assert!("0 * 1".parse::<Itinerary>().is_err());
        assert!("0 1".parse::<Itinerary>().is_err());
        assert!("(1|1)".parse::<Itinerary>().is_err());
    }

    #[test]
    fn worked_kneading_sequences() {
        assert_eq!(kneading(&a("0 3 0 1/2 inf")).unwrap(), it("0 2 0 0 *"));
        assert_eq!(kneading(&a("1/2 inf")).unwrap(), it("0 *"));
        assert_eq!(kneading(&a("0 1 1 0 1/2 inf")).unwrap(), it("0 1 0 0 0 *"));
        assert_eq!(kneading(&a("inf")), Err(Error::Terminator));
    }

    #[test]
    fn itineraries_relative_to_bases() {
        let s = a("0 1 1 0 1/2 inf");
        assert_eq!(itinerary(&a("(0 1 1 0 0 2)"), &s), it("(0 1 0 0 0 1)"));
        assert_eq!(itinerary(&a("(0 2 0 1 0 1)"), &s), it("(0 1 0 0 0 1)"));
        assert_eq!(itinerary(&a("(0 1)"), &a("inf")), it("(0 1)"));
        assert_eq!(itinerary(&a("2 1/2 inf"), &a("inf")), it("2 1|0 *"));
        assert_eq!(itinerary(&a("inf"), &s), it("*"));
    }

    #[test]
    fn one_sided_kneading() {
        assert_eq!(kneading_pm(&a("(0 1 1 0 0 2)"), Side::Lower).unwrap(), it("(0 1 0 0 0 1)"));
        assert_eq!(kneading_pm(&a("(0 2 0 1 0 1)"), Side::Upper).unwrap(), it("(0 1 0 0 0 1)"));
        assert_eq!(kneading(&a("(0)")).unwrap(), it("(0|-1)"));
        assert_eq!(kneading_pm(&a("(0)"), Side::Lower).unwrap(), it("(-1)"));
        assert_eq!(kneading_pm(&a("(0)"), Side::Upper).unwrap(), it("(0)"));
    }

    #[test]
    fn solves_itineraries() {
        let s = a("0 1 1 0 1/2 inf");
        let u = it("0 1 0 0 0 *");
        assert_eq!(solve_itinerary(&u, &a("(0 1 1 0 0 2)"), SeedSide::FromBelow).unwrap(), s);
        let per = it("(0 1 0 0 0 1)");
        assert_eq!(solve_itinerary(&per, &s, SeedSide::FromBelow).unwrap(), a("(0 1 1 0 0 2)"));
        assert_eq!(solve_itinerary(&per, &s, SeedSide::FromAbove).unwrap(), a("(0 2 0 1 0 1)"));
        assert!(matches!(
            solve_itinerary(&it("(0)"), &a("(0)"), SeedSide::FromBelow),
            Err(Error::NotRealized(_))
        ));
    }

    #[test]
    fn period_can_exceed_target_period() {
        // both points of the 2-cycle around 1/2 inf have itinerary per(0)
        let s = a("1/2 inf");
        assert_eq!(solve_itinerary(&it("(0)"), &s, SeedSide::FromBelow).unwrap(), a("(0 1)"));
        assert_eq!(solve_itinerary(&it("(0)"), &s, SeedSide::FromAbove).unwrap(), a("(1 0)"));
    }

    #[test]
    fn preperiodic_targets() {
        let s = a("0 1 1 0 1/2 inf");
        let u = it("3 -1 (0 1 0 0 0 1)");
        let r = solve_itinerary(&u, &s, SeedSide::FromBelow).unwrap();
        assert_eq!(itinerary(&r, &s), u);
    }
}
