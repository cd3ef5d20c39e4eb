//! Hyperbolic components as combinatorial objects.
//!
//! A component is keyed by its intermediate address `s` of length `n` (its
//! period). Its sectors are cut out by the sector boundaries `Bdy_b`, the
//! periodic addresses obtained by prepending `b` to `s` and pulling back
//! `n - 1` times along `K(s)`. The boundaries adjacent to `s` are the
//! characteristic addresses, and the open interval between them is the wake.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_integer::Integer;
use num_rational::Rational64;

use crate::address::{Address, Entry, HalfInt, InfiniteAddress, IntermediateAddress};
use crate::error::{Error, Result};
use crate::internal_addr::{internal_from_kneading, InternalAddress};
use crate::itinerary::{itinerary, pull_back, Itinerary, Side, Symbol};

/// A hyperbolic component, identified by its intermediate address.
///
/// Derived data is computed lazily at most once per value; the caches never
/// change what the public methods return.
#[derive(Debug, Clone)]
pub struct HyperbolicComponent {
    addr: IntermediateAddress,
    kneading: Itinerary,
    internal: OnceLock<InternalAddress>,
    characteristic: OnceLock<Option<(InfiniteAddress, InfiniteAddress)>>,
}

impl PartialEq for HyperbolicComponent {
    fn eq(&self, other: &Self) -> bool {
        self.addr == other.addr
    }
}

impl Eq for HyperbolicComponent {}

impl std::hash::Hash for HyperbolicComponent {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.addr.hash(state)
    }
}

impl HyperbolicComponent {
    pub fn new(addr: IntermediateAddress) -> Self {
        let kneading = itinerary(&Address::Intermediate(addr.clone()), &Address::Intermediate(addr.clone()));
        HyperbolicComponent { addr, kneading, internal: OnceLock::new(), characteristic: OnceLock::new() }
    }

    /// The component with address `inf`, whose wake is the whole circle.
    pub fn period_one() -> Self {
        Self::new(IntermediateAddress::terminator())
    }

    pub fn from_address(a: &Address) -> Result<Self> {
        a.as_intermediate()
            .map(|x| Self::new(x.clone()))
            .ok_or_else(|| Error::InvalidArgument(format!("{a} is not an intermediate address")))
    }

    pub fn addr(&self) -> &IntermediateAddress {
        &self.addr
    }

    pub fn address(&self) -> Address {
        Address::Intermediate(self.addr.clone())
    }

    pub fn period(&self) -> usize {
        self.addr.len()
    }

    /// `K(s)`; for the period-one component this is the lone `*`.
    pub fn kneading(&self) -> &Itinerary {
        &self.kneading
    }

    pub fn internal_address(&self) -> &InternalAddress {
        self.internal.get_or_init(|| {
            if self.period() == 1 {
                InternalAddress::period_one()
            } else {
                internal_from_kneading(&self.kneading)
            }
        })
    }

    /// `K*(W)`: the periodic sequence whose period is the first `n` entries of
    /// the periodic extension of `u_1 .. u_{n_{k-1}}`, where `n_{k-1}` is the
    /// penultimate period of the internal address.
    pub fn forbidden_kneading(&self) -> Result<Itinerary> {
        if self.period() == 1 {
            return Err(Error::PeriodOne("forbidden kneading sequence"));
        }
        let periods = self.internal_address().periods();
        let n_prev = periods[periods.len() - 2];
        let extension = Itinerary::periodic(Vec::new(), self.kneading.prefix(n_prev))?;
        Itinerary::periodic(Vec::new(), extension.prefix(self.period()))
    }

    /// The forbidden kneading entry `u(W)`, the `n`-th entry of `K*(W)`.
    pub fn forbidden_entry(&self) -> Result<i64> {
        let k = self.forbidden_kneading()?;
        Ok(k.at(self.period() - 1).and_then(Symbol::as_int).expect("integer entry"))
    }

    /// `(s-, s+)`.
    pub fn characteristic(&self) -> Result<(InfiniteAddress, InfiniteAddress)> {
        self.characteristic
            .get_or_init(|| {
                let u = self.forbidden_entry().ok()?;
                let lower = sector_boundary(self, Entry::Int(u + 1)).ok()?;
                let upper = sector_boundary(self, Entry::Int(u)).ok()?;
                Some((lower, upper))
            })
            .clone()
            .ok_or(Error::PeriodOne("characteristic addresses"))
    }

    /// Whether `r` lies in the wake: the whole circle for period one, the open
    /// interval between the characteristic addresses otherwise.
    pub fn wake_contains(&self, r: &Address) -> bool {
        match self.characteristic() {
            Err(_) => true,
            Ok((lo, hi)) => !r.is_terminator() && Address::Infinite(lo) < *r && *r < Address::Infinite(hi),
        }
    }

    /// Whether the wake of `other` is nested inside the wake of `self`
    /// (`self` precedes `other` on the arc from `inf`); reflexive.
    pub fn precedes(&self, other: &HyperbolicComponent) -> bool {
        if self == other {
            return true;
        }
        match (self.characteristic(), other.characteristic()) {
            (Err(_), _) => true,
            (Ok(_), Err(_)) => false,
            (Ok((a, b)), Ok((c, d))) => a <= c && d <= b && (a, b) != (c, d),
        }
    }
}

impl fmt::Display for HyperbolicComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hyp({})", self.addr)
    }
}

impl FromStr for HyperbolicComponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let a: Address = s.parse()?;
        a.as_intermediate()
            .map(|x| Self::new(x.clone()))
            .ok_or_else(|| Error::parse(0, format!("`{s}` is not an intermediate address")))
    }
}

pub fn characteristic_addresses(w: &HyperbolicComponent) -> Result<(InfiniteAddress, InfiniteAddress)> {
    w.characteristic()
}

pub fn forbidden_kneading(w: &HyperbolicComponent) -> Result<Itinerary> {
    w.forbidden_kneading()
}

pub fn wake_contains(w: &HyperbolicComponent, r: &Address) -> bool {
    w.wake_contains(r)
}

/// The kneading entries `u_1 .. u_{n-1}` of a component of period `n >= 2`.
fn kneading_word(w: &HyperbolicComponent) -> Vec<i64> {
    w.kneading.prefix(w.period() - 1).iter().map(|s| s.as_int().expect("integer entry")).collect()
}

/// The sector boundary `Bdy_b`, whose `n`-th entry is `b`.
///
/// Period-one boundaries are the constant addresses `per(m)`.
pub fn sector_boundary(w: &HyperbolicComponent, s_star: Entry) -> Result<InfiniteAddress> {
    let b = s_star.as_int().ok_or_else(|| {
        Error::InvalidSector(format!("sector boundaries are indexed by integers, got {s_star}"))
    })?;
    if w.period() == 1 {
        return InfiniteAddress::periodic(vec![b]);
    }
    let s = w.address();
    let r = pull_back(&kneading_word(w), &s.prepend_int(b), &s)?;
    let n = w.period();
    let word = (0..n).map(|k| r.at(k).and_then(Entry::as_int).expect("integer entry")).collect();
    InfiniteAddress::periodic(word)
}

/// One of the four equivalent ways of naming a sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectorKey {
    /// The sector between internal heights `k` and `k + 1`.
    HeightIndex(i64),
    /// The sector label: a half-integer for period one, an integer otherwise.
    Label(Entry),
    KneadingEntry(i64),
    /// Kneading entry minus the forbidden entry; never zero for period two
    /// and up.
    SectorNumber(i64),
}

/// The open interval between two sector boundaries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SectorWake {
    pub lower: InfiniteAddress,
    pub upper: InfiniteAddress,
}

impl SectorWake {
    pub fn contains(&self, r: &Address) -> bool {
        !r.is_terminator() && Address::Infinite(self.lower.clone()) < *r && *r < Address::Infinite(self.upper.clone())
    }
}

/// A sector of a component with all its labels filled in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorRef {
    pub component: HyperbolicComponent,
    pub height_index: i64,
    pub label: Entry,
    pub kneading_entry: i64,
    pub sector_number: i64,
    pub wake: SectorWake,
}

impl SectorRef {
    /// `K(A)`: the kneading word of the component with the sector's entry in
    /// position `n`, repeated.
    pub fn kneading(&self) -> Itinerary {
        let mut word = if self.component.period() == 1 { Vec::new() } else { kneading_word(&self.component) };
        word.push(self.kneading_entry);
        Itinerary::periodic_ints(&word).expect("nonempty")
    }
}

/// Resolves a sector key to the full sector description.
///
/// The height index is derived from the key, then the two bounding sector
/// boundaries are computed and the kneading entry is read off their one-sided
/// kneading sequences, which must agree.
pub fn sector_info(w: &HyperbolicComponent, key: SectorKey) -> Result<SectorRef> {
    if w.period() == 1 {
        let k = match key {
            SectorKey::HeightIndex(k) | SectorKey::KneadingEntry(k) | SectorKey::SectorNumber(k) => k,
            SectorKey::Label(Entry::Half(h)) => h.floor(),
            SectorKey::Label(Entry::Int(l)) => {
                return Err(Error::InvalidSector(format!("period-one labels are half-integers, got {l}")))
            }
        };
        let wake = SectorWake {
            lower: InfiniteAddress::periodic(vec![k])?,
            upper: InfiniteAddress::periodic(vec![k + 1])?,
        };
        return Ok(SectorRef {
            component: w.clone(),
            height_index: k,
            label: Entry::Half(HalfInt::plus_half(k)),
            kneading_entry: k,
            sector_number: k,
            wake,
        });
    }
    let u = w.forbidden_entry()?;
    let (lower_char, _) = w.characteristic()?;
    let n = w.period();
    // label of the first sector below addr(W), next to the central ray
    let anchor = lower_char.at(n - 1);
    let k = match key {
        SectorKey::HeightIndex(k) => k,
        SectorKey::Label(Entry::Int(l)) => l - anchor,
        SectorKey::Label(Entry::Half(h)) => {
            return Err(Error::InvalidSector(format!("labels of period {n} are integers, got {h}")))
        }
        SectorKey::KneadingEntry(e) => match e.cmp(&u) {
            Ordering::Equal => return Err(Error::InvalidSector(format!("{e} is the forbidden entry"))),
            Ordering::Greater => e - u - 1,
            Ordering::Less => e - u,
        },
        SectorKey::SectorNumber(m) => match m.cmp(&0) {
            Ordering::Equal => return Err(Error::InvalidSector("sector number 0".into())),
            Ordering::Greater => m - 1,
            Ordering::Less => m,
        },
    };
    // below addr(W) the boundaries Bdy_{u+1} < Bdy_{u+2} < ... increase
    // towards it, above it ... < Bdy_{u-1} < Bdy_u decrease towards it
    let (lo, hi) = if k >= 0 { (u + 1 + k, u + 2 + k) } else { (u + k, u + k + 1) };
    let lower = sector_boundary(w, Entry::Int(lo))?;
    let upper = sector_boundary(w, Entry::Int(hi))?;
    let read = |b: &InfiniteAddress, side| {
        let k = crate::itinerary::kneading_pm(&Address::Infinite(b.clone()), side)?;
        Ok::<_, Error>(k.at(n - 1).and_then(Symbol::as_int).expect("integer entry"))
    };
    let entry = read(&lower, Side::Upper)?;
    if entry != read(&upper, Side::Lower)? || lower >= upper {
        return Err(Error::InvalidSector(format!("inconsistent boundaries {lower} and {upper}")));
    }
    Ok(SectorRef {
        component: w.clone(),
        height_index: k,
        label: Entry::Int(anchor + k),
        kneading_entry: entry,
        sector_number: entry - u,
        wake: SectorWake { lower, upper },
    })
}

fn check_rotation(pq: Rational64) -> Result<(i64, i64)> {
    let (p, q) = (*pq.numer(), *pq.denom());
    if p <= 0 || p >= q || p.gcd(&q) != 1 {
        return Err(Error::InvalidRotation(pq.to_string()));
    }
    Ok((p, q))
}

/// Whether block `j` of a bifurcation at angle `p/q` carries the label itself
/// rather than the entry below it: `j p/q mod 1` lies in `[1 - p/q, 1)`.
fn upper_block(j: i64, p: i64, q: i64) -> bool {
    (j * p).rem_euclid(q) >= q - p
}

/// The child of `w` at angle `p/q` in the sector with label `s_star`.
pub fn bifurcate(w: &HyperbolicComponent, s_star: Entry, pq: Rational64) -> Result<IntermediateAddress> {
    let (p, q) = check_rotation(pq)?;
    if w.period() == 1 {
        let l = match s_star {
            Entry::Half(h) => h,
            Entry::Int(b) => {
                return Err(Error::InvalidSector(format!("period-one labels are half-integers, got {b}")))
            }
        };
        let body = (1..=q - 2).map(|j| if upper_block(j, p, q) { l.ceil() } else { l.floor() }).collect();
        return Ok(IntermediateAddress::new(body, l));
    }
    let b = s_star
        .as_int()
        .ok_or_else(|| Error::InvalidSector(format!("labels of period {} are integers, got {s_star}", w.period())))?;
    let n = w.period();
    let u = kneading_word(w);
    let mut block_word = Vec::new();
    let mut expected = Vec::new();
    for j in 1..=q {
        for &x in &u {
            block_word.push(x);
            expected.push(Symbol::Int(x));
        }
        let m = if j == q {
            Symbol::Star
        } else if j == q - 1 {
            Symbol::Boundary(b)
        } else if upper_block(j, p, q) {
            Symbol::Int(b)
        } else {
            Symbol::Int(b - 1)
        };
        if j < q - 1 {
            block_word.push(m.as_int().expect("integer block end"));
        }
        expected.push(m);
    }
    // the last full block is s itself, grafted behind the entry b
    let s = w.address();
    let head = &block_word[..(q as usize - 1) * n - 1];
    let r = pull_back(head, &s.prepend_int(b), &s)?;
    let expected = Itinerary::finite(expected)?;
    if itinerary(&r, &s) != expected {
        return Err(Error::NotRealized(format!("bifurcation itinerary {expected} relative to {s}")));
    }
    Ok(r.as_intermediate().expect("intermediate").clone())
}

/// The child at internal height `h` (not an integer): the sector is
/// `floor(h)` and the angle is the fractional part.
pub fn bifurcate_at_height(w: &HyperbolicComponent, h: Rational64) -> Result<IntermediateAddress> {
    if h.is_integer() {
        return Err(Error::InvalidRotation(h.to_string()));
    }
    let k = h.floor().to_integer();
    let label = label_for_height(w, k)?;
    bifurcate(w, label, h - k)
}

/// The sector label for height index `k`.
pub(crate) fn label_for_height(w: &HyperbolicComponent, k: i64) -> Result<Entry> {
    if w.period() == 1 {
        return Ok(Entry::Half(HalfInt::plus_half(k)));
    }
    let (lower, _) = w.characteristic()?;
    Ok(Entry::Int(lower.at(w.period() - 1) + k))
}

/// Outcome of the primitive/satellite test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Primitive,
    Satellite { parent: IntermediateAddress, rotation: Rational64 },
}

/// Decides whether the component of `s` bifurcates from a component of lower
/// period and, if so, from which one and at which angle.
pub fn classify(s: &IntermediateAddress) -> Result<Classification> {
    let n = s.len();
    if n < 2 {
        return Err(Error::PeriodOne("parent component"));
    }
    let k = itinerary(&Address::Intermediate(s.clone()), &Address::Intermediate(s.clone()));
    let u: Vec<Symbol> = k.prefix(n - 1);
    let fits = |j: usize| (0..n - 1 - j).all(|i| u[i] == u[i + j]);
    let Some(j) = (1..n).find(|&j| n.is_multiple_of(j) && fits(j)) else {
        return Ok(Classification::Primitive);
    };
    let q = n / j;
    let mut parent = Address::Intermediate(s.clone());
    for _ in 0..n - j {
        parent = parent.shift()?;
    }
    let p = rotation_numerator(s, j, q)?;
    Ok(Classification::Satellite {
        parent: parent.as_intermediate().expect("intermediate").clone(),
        rotation: Rational64::new(p as i64, q as i64),
    })
}

/// Numerator of the rotation number of a satellite of period `j q`.
///
/// The points `y_k = shift^{k j - 1}(s)`, `k = 1 .. q - 1`, are visited in
/// the order of `k p/q mod 1`; the numerator is the rank of `y_1`.
fn rotation_numerator(s: &IntermediateAddress, j: usize, q: usize) -> Result<usize> {
    let mut ys = Vec::with_capacity(q - 1);
    let mut x = Address::Intermediate(s.clone());
    for step in 1..(q - 1) * j {
        if step % j == 0 {
            ys.push(x.clone());
        }
        x = x.shift()?;
    }
    ys.push(x);
    let p = 1 + ys[1..].iter().filter(|y| **y < ys[0]).count();
    if p.gcd(&q) != 1 {
        return Err(Error::InvalidRotation(format!("{p}/{q}")));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Address {
        s.parse().unwrap()
    }

    fn hyp(s: &str) -> HyperbolicComponent {
        s.parse().unwrap()
    }

    fn inf(s: &str) -> InfiniteAddress {
        a(s).as_infinite().unwrap().clone()
    }

    fn im(s: &str) -> IntermediateAddress {
        a(s).as_intermediate().unwrap().clone()
    }

    fn half(k: i64) -> Entry {
        Entry::Half(HalfInt::plus_half(k))
    }

    fn r(p: i64, q: i64) -> Rational64 {
        Rational64::new(p, q)
    }

    #[test]
    fn characteristic_pairs() {
        let w = hyp("0 1 1 0 1/2 inf");
        assert_eq!(w.characteristic().unwrap(), (inf("(0 1 1 0 0 2)"), inf("(0 2 0 1 0 1)")));
        assert_eq!(hyp("1/2 inf").characteristic().unwrap(), (inf("(0 1)"), inf("(1 0)")));
        assert_eq!(hyp("inf").characteristic(), Err(Error::PeriodOne("characteristic addresses")));
    }

    #[test]
    fn forbidden_kneading_sequences() {
        assert_eq!(hyp("0 1 1 0 1/2 inf").forbidden_kneading().unwrap().to_string(), "(0 1 0 0 0 1)");
        assert_eq!(hyp("0 3 0 1/2 inf").forbidden_kneading().unwrap().to_string(), "(0 2 0 0 0)");
        assert_eq!(hyp("1/2 inf").forbidden_kneading().unwrap().to_string(), "(0)");
        assert_eq!(hyp("0 1 1 0 1/2 inf").forbidden_entry().unwrap(), 1);
        assert!(hyp("inf").forbidden_kneading().is_err());
    }

    #[test]
    fn sector_boundaries() {
        assert_eq!(sector_boundary(&hyp("1/2 inf"), Entry::Int(1)).unwrap(), inf("(0 1)"));
        assert_eq!(sector_boundary(&hyp("inf"), Entry::Int(3)).unwrap(), inf("(3)"));
        let w = hyp("0 1 1 0 1/2 inf");
        // the n-th entry of Bdy_b is b
        assert_eq!(sector_boundary(&w, Entry::Int(2)).unwrap(), inf("(0 1 1 0 0 2)"));
        assert_eq!(sector_boundary(&w, Entry::Int(1)).unwrap(), inf("(0 2 0 1 0 1)"));
        assert!(sector_boundary(&hyp("inf"), half(0)).is_err());
    }

    #[test]
    fn sector_labels() {
        let s = sector_info(&hyp("inf"), SectorKey::HeightIndex(0)).unwrap();
        assert_eq!((s.label, s.kneading_entry), (half(0), 0));

        let w = hyp("0 1 1 0 1/2 inf");
        let below = sector_info(&w, SectorKey::KneadingEntry(2)).unwrap();
        assert_eq!(below.wake.lower, inf("(0 1 1 0 0 2)"));
        assert_eq!((below.height_index, below.label, below.sector_number), (0, Entry::Int(2), 1));
        let above = sector_info(&w, SectorKey::KneadingEntry(0)).unwrap();
        assert_eq!(above.wake.upper, inf("(0 2 0 1 0 1)"));
        assert_eq!((above.height_index, above.label, above.sector_number), (-1, Entry::Int(1), -1));
        assert!(sector_info(&w, SectorKey::KneadingEntry(1)).is_err());
        assert!(sector_info(&w, SectorKey::SectorNumber(0)).is_err());
        for k in -3..3 {
            let a = sector_info(&w, SectorKey::HeightIndex(k)).unwrap();
            for key in [
                SectorKey::Label(a.label),
                SectorKey::KneadingEntry(a.kneading_entry),
                SectorKey::SectorNumber(a.sector_number),
            ] {
                assert_eq!(sector_info(&w, key).unwrap(), a);
            }
        }
    }

    #[test]
    fn bifurcations() {
        let one = hyp("inf");
        assert_eq!(bifurcate(&one, half(0), r(1, 2)).unwrap(), im("1/2 inf"));
        let third = bifurcate(&one, half(0), r(1, 3)).unwrap();
        assert_eq!(third, im("0 1/2 inf"));
        assert_eq!(HyperbolicComponent::new(third).kneading().to_string(), "0 0 *");
        assert_eq!(bifurcate(&one, half(0), r(2, 3)).unwrap(), im("1 1/2 inf"));

        let w = hyp("1/2 inf");
        let child = bifurcate(&w, Entry::Int(1), r(1, 2)).unwrap();
        assert_eq!(child.len(), 4);
        assert_eq!(
            classify(&child).unwrap(),
            Classification::Satellite { parent: im("1/2 inf"), rotation: r(1, 2) }
        );
        assert!(bifurcate(&one, half(0), r(1, 1)).is_err());
        assert!(bifurcate(&one, Entry::Int(0), r(1, 2)).is_err());
    }

    #[test]
    fn classification() {
        assert_eq!(
            classify(&im("1/2 inf")).unwrap(),
            Classification::Satellite { parent: im("inf"), rotation: r(1, 2) }
        );
        assert_eq!(classify(&im("0 1 1 0 1/2 inf")).unwrap(), Classification::Primitive);
        let child = bifurcate(&hyp("inf"), half(0), r(2, 3)).unwrap();
        assert_eq!(classify(&child).unwrap(), Classification::Satellite { parent: im("inf"), rotation: r(2, 3) });
        assert!(classify(&im("inf")).is_err());
    }

    #[test]
    fn wakes() {
        let w = hyp("0 1 1 0 1/2 inf");
        assert!(w.wake_contains(&a("0 1 1 0 1/2 inf")));
        assert!(!w.wake_contains(&a("(0)")));
        assert!(hyp("inf").wake_contains(&a("(5)")));
    }
}
