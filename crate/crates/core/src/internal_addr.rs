//! Internal and angled internal addresses.
//!
//! The internal address of `s` lists the components of lowest period met on
//! the way from `inf` to `s`, each with the number of the sector that
//! contains `s`. The angled variant replaces sector numbers by internal
//! heights, which also record the bifurcation angle and make the description
//! unique.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;

use crate::address::{Address, Entry, HalfInt, InfiniteAddress, IntermediateAddress};
use crate::components::{bifurcate_at_height, sector_boundary, HyperbolicComponent, SectorRef};
use crate::error::{Error, Result};
use crate::itinerary::{kneading, kneading_pm, solve_itinerary, Itinerary, SeedSide, Side, Symbol};

/// Second coordinate of an internal address entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SectorNumber {
    Int(i64),
    /// `s` is a sector boundary of the component.
    Half(HalfInt),
    /// `s` is the address of the component.
    Infinity,
}

impl fmt::Display for SectorNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SectorNumber::Int(m) => write!(f, "{m}"),
            SectorNumber::Half(h) => write!(f, "{}+1/2", h.floor()),
            SectorNumber::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for SectorNumber {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "inf" {
            return Ok(SectorNumber::Infinity);
        }
        if let Some(k) = s.strip_suffix("+1/2") {
            let Entry::Int(k) = k.parse::<Entry>()? else {
                return Err(Error::parse(0, format!("`{s}` is not a sector number")));
            };
            return Ok(SectorNumber::Half(HalfInt::plus_half(k)));
        }
        match s.parse::<Entry>()? {
            Entry::Int(m) => Ok(SectorNumber::Int(m)),
            Entry::Half(h) => Ok(SectorNumber::Half(h)),
        }
    }
}

/// `(n_1, m_1) -> (n_2, m_2) -> ...`
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InternalAddress {
    entries: Vec<(usize, SectorNumber)>,
}

impl InternalAddress {
    pub fn new(entries: Vec<(usize, SectorNumber)>) -> Result<Self> {
        let bad = |m: &str| Err(Error::InvalidInternalAddress(m.into()));
        if entries.first().map(|e| e.0) != Some(1) {
            return bad("the first period must be 1");
        }
        if entries.windows(2).any(|w| w[0].0 >= w[1].0) {
            return bad("periods must increase strictly");
        }
        let last = entries.len() - 1;
        if entries[..last].iter().any(|e| !matches!(e.1, SectorNumber::Int(_))) {
            return bad("`inf` and half-integers may only end the address");
        }
        Ok(InternalAddress { entries })
    }

    /// `(1,inf)`.
    pub fn period_one() -> Self {
        InternalAddress { entries: vec![(1, SectorNumber::Infinity)] }
    }

    pub fn entries(&self) -> &[(usize, SectorNumber)] {
        &self.entries
    }

    pub fn periods(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.0).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }
}

fn split_arrows(text: &str) -> Result<Vec<(usize, String)>> {
    text.split("->")
        .enumerate()
        .map(|(i, part)| {
            let inner = part
                .trim()
                .strip_prefix('(')
                .and_then(|p| p.strip_suffix(')'))
                .ok_or_else(|| Error::parse(i, format!("`{}` is not a pair", part.trim())))?;
            let (n, m) = inner.split_once(',').ok_or_else(|| Error::parse(i, "missing `,`"))?;
            let n = n.trim().parse::<usize>().map_err(|_| Error::parse(i, format!("bad period `{}`", n.trim())))?;
            Ok((n, m.trim().to_string()))
        })
        .collect()
}

impl fmt::Display for InternalAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(n, m)| format!("({n},{m})")).collect();
        f.write_str(&parts.join("->"))
    }
}

impl FromStr for InternalAddress {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = split_arrows(s)?
            .into_iter()
            .enumerate()
            .map(|(i, (n, m))| {
                m.parse::<SectorNumber>().map(|m| (n, m)).map_err(|e| match e {
                    Error::Parse { message, .. } => Error::parse(i, message),
                    e => e,
                })
            })
            .collect::<Result<_>>()?;
        InternalAddress::new(entries).map_err(|e| Error::parse(0, e.to_string()))
    }
}

fn int_at(k: &Itinerary, pos: usize) -> i64 {
    k.at(pos).and_then(Symbol::as_int).expect("integer entry")
}

/// Reads the internal address off a kneading sequence by repeatedly locating
/// the first difference with the periodic extension of the prefix so far.
pub fn internal_from_kneading(k: &Itinerary) -> InternalAddress {
    let mut entries = Vec::new();
    let first = match k.at(0) {
        Some(Symbol::Int(u)) => SectorNumber::Int(u),
        Some(Symbol::Boundary(j)) => SectorNumber::Half(HalfInt::minus_half(j)),
        _ => SectorNumber::Infinity,
    };
    entries.push((1, first));
    while let (n, SectorNumber::Int(_)) = *entries.last().expect("nonempty") {
        let ubar = Itinerary::periodic(Vec::new(), k.prefix(n)).expect("integer prefix");
        let Some(p) = k.first_difference(&ubar) else { break };
        let v = int_at(&ubar, p - 1);
        let m = match k.at(p - 1).expect("within the sequence") {
            Symbol::Int(x) => SectorNumber::Int(x - v),
            Symbol::Star => SectorNumber::Infinity,
            Symbol::Boundary(j) => SectorNumber::Half(HalfInt::plus_half(j - 1 - v)),
        };
        entries.push((p, m));
    }
    InternalAddress { entries }
}

/// Rebuilds the kneading sequence from an internal address.
pub fn kneading_from_internal(a: &InternalAddress) -> Result<Itinerary> {
    let mut u: Vec<Symbol> = Vec::new();
    let mut finite = false;
    for (i, &(n, m)) in a.entries.iter().enumerate() {
        let v = if i == 0 {
            0
        } else {
            let prev = a.entries[i - 1].0;
            let ubar = Itinerary::periodic(Vec::new(), u[..prev].to_vec())?;
            u = ubar.prefix(n - 1);
            int_at(&ubar, n - 1)
        };
        match m {
            SectorNumber::Int(x) => u.push(Symbol::Int(v + x)),
            SectorNumber::Infinity => {
                u.push(Symbol::Star);
                finite = true;
            }
            SectorNumber::Half(h) => u.push(Symbol::Boundary(h.floor() + v + 1)),
        }
    }
    let k = if finite { Itinerary::finite(u)? } else { Itinerary::periodic(Vec::new(), u)? };
    if internal_from_kneading(&k) != *a {
        return Err(Error::InvalidInternalAddress(format!("{a} is not the internal address of {k}")));
    }
    Ok(k)
}

/// Internal address of any point of the circle.
pub fn internal_address(s: &Address) -> Result<InternalAddress> {
    if s.is_terminator() {
        return Ok(InternalAddress::period_one());
    }
    Ok(internal_from_kneading(&kneading(s)?))
}

/// Second coordinate of an angled internal address entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Height {
    Angle(Rational64),
    Infinity,
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Height::Angle(h) = *self else { return f.write_str("inf") };
        let (sign, a) = if h < Rational64::from_integer(0) { ("-", -h) } else { ("", h) };
        let whole = a.trunc();
        let frac = a - whole;
        if *whole.numer() == 0 {
            write!(f, "{sign}{frac}")
        } else {
            let joint = if sign.is_empty() { "+" } else { "-" };
            write!(f, "{sign}{whole}{joint}{frac}")
        }
    }
}

impl FromStr for Height {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "inf" {
            return Ok(Height::Infinity);
        }
        let bad = || Error::parse(0, format!("`{s}` is not a height"));
        let (neg, body) = match s.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, s),
        };
        let (whole, frac) = match body.find(['+', '-']) {
            Some(i) => {
                let w: i64 = body[..i].parse().map_err(|_| bad())?;
                let sep_neg = &body[i..i + 1] == "-";
                if sep_neg != neg {
                    return Err(bad());
                }
                (w, &body[i + 1..])
            }
            None => (0, body),
        };
        let (p, q) = frac.split_once('/').ok_or_else(bad)?;
        let (p, q): (i64, i64) = (p.parse().map_err(|_| bad())?, q.parse().map_err(|_| bad())?);
        if q <= 0 || p < 0 {
            return Err(bad());
        }
        let a = Rational64::from_integer(whole) + Rational64::new(p, q);
        let h = if neg { -a } else { a };
        if h.is_integer() {
            return Err(Error::parse(0, format!("`{s}`: heights are not integers")));
        }
        Ok(Height::Angle(h))
    }
}

/// `(n_1, h_1) -> ... -> (n_k, inf)`
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AngledInternalAddress {
    entries: Vec<(usize, Height)>,
}

impl AngledInternalAddress {
    pub fn new(entries: Vec<(usize, Height)>) -> Result<Self> {
        let bad = |m: &str| Err(Error::InvalidAngledAddress(m.into()));
        if entries.first().map(|e| e.0) != Some(1) {
            return bad("the first period must be 1");
        }
        if entries.windows(2).any(|w| w[0].0 >= w[1].0) {
            return bad("periods must increase strictly");
        }
        let last = entries.len() - 1;
        if entries[last].1 != Height::Infinity || entries[..last].iter().any(|e| e.1 == Height::Infinity) {
            return bad("exactly the last height must be `inf`");
        }
        Ok(AngledInternalAddress { entries })
    }

    pub fn entries(&self) -> &[(usize, Height)] {
        &self.entries
    }
}

impl fmt::Display for AngledInternalAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(n, h)| format!("({n},{h})")).collect();
        f.write_str(&parts.join("->"))
    }
}

impl FromStr for AngledInternalAddress {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = split_arrows(s)?
            .into_iter()
            .enumerate()
            .map(|(i, (n, h))| {
                h.parse::<Height>().map(|h| (n, h)).map_err(|e| match e {
                    Error::Parse { message, .. } => Error::parse(i, message),
                    e => e,
                })
            })
            .collect::<Result<_>>()?;
        AngledInternalAddress::new(entries).map_err(|e| Error::parse(0, e.to_string()))
    }
}

/// Height index of the sector with number `m` of a component of period `n`.
fn height_index(n: usize, m: i64) -> i64 {
    if n == 1 || m < 0 {
        m
    } else {
        m - 1
    }
}

/// Locates the child of `w` in the sector at height index `k` whose wake
/// contains `s`, by Stern-Brocot descent over the angle. Child wakes in one
/// sector are disjoint and ordered like their angles.
fn child_towards(
    w: &HyperbolicComponent,
    k: i64,
    s: &Address,
    max_q: i64,
) -> Result<(Rational64, HyperbolicComponent)> {
    let (mut lo, mut hi) = ((0i64, 1i64), (1i64, 1i64));
    loop {
        let (p, q) = (lo.0 + hi.0, lo.1 + hi.1);
        if q > max_q {
            return Err(Error::NotInWake(format!("{s} (no child of {w} in sector {k} up to denominator {max_q})")));
        }
        let h = Rational64::new(p, q);
        let child = HyperbolicComponent::new(bifurcate_at_height(w, Rational64::from_integer(k) + h)?);
        let (l, u) = child.characteristic()?;
        if *s < Address::Infinite(l) {
            hi = (p, q);
        } else if *s > Address::Infinite(u) {
            lo = (p, q);
        } else {
            return Ok((h, child));
        }
    }
}

/// The angled internal address of `s`.
pub fn angled_internal(s: &IntermediateAddress) -> Result<AngledInternalAddress> {
    let target = Address::Intermediate(s.clone());
    let ia = internal_address(&target)?;
    let n = s.len();
    let k = if n == 1 { None } else { Some(kneading(&target)?) };
    let mut w = HyperbolicComponent::period_one();
    let mut out = Vec::with_capacity(ia.len());
    for (j, pair) in ia.entries.windows(2).enumerate() {
        let ((nj, m), (next, _)) = (pair[0], pair[1]);
        let SectorNumber::Int(m) = m else { unreachable!("only the final entry is not an integer") };
        let idx = height_index(nj, m);
        let (angle, child) = child_towards(&w, idx, &target, 2 * n as i64 + 4)?;
        out.push((nj, Height::Angle(Rational64::from_integer(idx) + angle)));
        if j + 2 == ia.len() {
            break;
        }
        w = if child.period() == next {
            child
        } else {
            // the next component has forbidden kneading sequence given by the
            // kneading of the current sector; its lower characteristic address
            // is the realization of that sequence just below s
            let k = k.as_ref().expect("period at least 2");
            let sector = Itinerary::periodic(Vec::new(), k.prefix(nj))?;
            let kstar = Itinerary::periodic(Vec::new(), sector.prefix(next))?;
            let lower = solve_itinerary(&kstar, &target, SeedSide::FromBelow)?;
            component_from_boundary(lower.as_infinite().expect("periodic"))?
        };
        if w.period() != next || !w.wake_contains(&target) {
            return Err(Error::InvalidAngledAddress(format!("lost track of {s} at period {next}")));
        }
    }
    out.push((n, Height::Infinity));
    AngledInternalAddress::new(out)
}

/// The largest periodic address strictly below `x` with period at most `p`.
fn max_periodic_below(x: &InfiniteAddress, p: usize) -> InfiniteAddress {
    (1..=p)
        .map(|q| {
            let mut w = x.prefix(q);
            let c = InfiniteAddress::periodic(w.clone()).expect("nonempty");
            if c < *x {
                return c;
            }
            w[q - 1] -= 1;
            InfiniteAddress::periodic(w).expect("nonempty")
        })
        .max()
        .expect("p >= 1")
}

/// The intermediate address with a given angled internal address.
pub fn addr_from_angled(a: &AngledInternalAddress) -> Result<IntermediateAddress> {
    addr_from_angled_traced(a).map(|(s, _)| s)
}

/// As [`addr_from_angled`], also returning notes on descent steps that met a
/// periodic address that is not an upper characteristic address.
pub fn addr_from_angled_traced(a: &AngledInternalAddress) -> Result<(IntermediateAddress, Vec<String>)> {
    let mut notes = Vec::new();
    let mut w = HyperbolicComponent::period_one();
    for pair in a.entries.windows(2) {
        let ((_, h), (next, _)) = (pair[0], pair[1]);
        let Height::Angle(h) = h else { unreachable!("validated") };
        let v = HyperbolicComponent::new(bifurcate_at_height(&w, h)?);
        if v.period() == next {
            w = v;
            continue;
        }
        if v.period() < next {
            return Err(Error::InvalidAngledAddress(format!("child {v} has period below {next}")));
        }
        let (v_lower, v_upper) = v.characteristic()?;
        let mut x = v_upper;
        let mut seen_lo = x.prefix(next).into_iter().min().unwrap_or(0);
        let mut seen_hi = x.prefix(next).into_iter().max().unwrap_or(0);
        let mut steps = 0usize;
        w = loop {
            steps += 1;
            let cap = 4 * next * (1 + (seen_hi - seen_lo) as usize);
            if steps > cap {
                return Err(Error::InvalidAngledAddress(format!("descent inside the wake of {v} did not terminate")));
            }
            let t = max_periodic_below(&x, next);
            if t <= v_lower {
                return Err(Error::InvalidAngledAddress(format!("descent left the wake of {v}")));
            }
            for e in t.period_word() {
                seen_lo = seen_lo.min(*e);
                seen_hi = seen_hi.max(*e);
            }
            let c = component_from_boundary(&t)?;
            if t.period() == next {
                break c;
            }
            match c.characteristic() {
                Ok((lo, hi)) if hi == t => x = lo,
                _ => {
                    notes.push(format!("{t} is not an upper characteristic address"));
                    x = t;
                }
            }
        };
    }
    let s = w.addr().clone();
    if angled_internal(&s)? != *a {
        return Err(Error::InvalidAngledAddress(format!("{a} is not realized (candidate {s})")));
    }
    Ok((s, notes))
}

/// The component of which the periodic address `r` is a sector boundary.
pub fn component_from_boundary(r: &InfiniteAddress) -> Result<HyperbolicComponent> {
    if !r.is_periodic() {
        return Err(Error::NotBoundary(r.to_string()));
    }
    let n = r.period();
    if n == 1 {
        return Ok(HyperbolicComponent::period_one());
    }
    let ra = Address::Infinite(r.clone());
    let mut u = kneading_pm(&ra, Side::Lower)?.prefix(n - 1);
    u.push(Symbol::Star);
    let s = solve_itinerary(&Itinerary::finite(u)?, &ra, SeedSide::FromBelow)?;
    let w = HyperbolicComponent::from_address(&s)?;
    if sector_boundary(&w, Entry::Int(r.at(n - 1)))? != *r {
        return Err(Error::NotBoundary(r.to_string()));
    }
    Ok(w)
}

/// Result of a lowest-period query on a combinatorial arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArcQuery {
    Found {
        period: usize,
        component: Box<HyperbolicComponent>,
        /// Kneading entry of the sector of `component` containing the target.
        sector_kneading_entry: Option<i64>,
    },
    NoneBelow,
}

/// The component of lowest period on the arc from the sector `a` to `s`.
pub fn lowest_period_on_arc(a: &SectorRef, s: &Address) -> Result<ArcQuery> {
    if !a.wake.contains(s) {
        return Err(Error::NotInWake(s.to_string()));
    }
    let ka = a.kneading();
    let ks = kneading(s)?;
    let Some(j) = ka.first_difference(&ks) else { return Ok(ArcQuery::NoneBelow) };
    let kstar = Itinerary::periodic(Vec::new(), ka.prefix(j))?;
    let lower = solve_itinerary(&kstar, s, SeedSide::FromBelow)?;
    let component = component_from_boundary(lower.as_infinite().expect("periodic"))?;
    if component.period() != j {
        return Err(Error::NotRealized(format!("expected a component of period {j}, found {component}")));
    }
    Ok(ArcQuery::Found { period: j, component: Box::new(component), sector_kneading_entry: ks.at(j - 1).and_then(Symbol::as_int) })
}

/// Number of essential periodic orbits of a component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EssentialOrbits {
    Finite(usize),
    Infinite,
}

/// Finitely many (`k - 1`) exactly when each period of the internal address
/// divides the next.
pub fn essential_orbit_count(w: &HyperbolicComponent) -> EssentialOrbits {
    let periods = w.internal_address().periods();
    if periods.windows(2).all(|p| p[1] % p[0] == 0) {
        EssentialOrbits::Finite(periods.len() - 1)
    } else {
        EssentialOrbits::Infinite
    }
}
