//! Bounded enumerations and exhaustive property checks.
//!
//! Every suite runs one family of laws over all addresses within the bounds
//! and collects counterexamples instead of stopping at the first one.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};

use num_rational::Rational64;

use crate::address::{circular_order, Address, Entry, HalfInt, InfiniteAddress, IntermediateAddress};
use crate::components::{bifurcate_at_height, classify, sector_boundary, sector_info, Classification, HyperbolicComponent, SectorKey};
use crate::error::{Error, Result};
use crate::internal_addr::{
    addr_from_angled, angled_internal, component_from_boundary, essential_orbit_count, internal_address,
    kneading_from_internal, EssentialOrbits, InternalAddress, SectorNumber,
};
use crate::itinerary::{itinerary, kneading, kneading_pm, solve_itinerary, Itinerary, SeedSide, Side, Symbol};
use crate::tuning::{tune, TuningBlockTable, TuningVariant};

/// Maximal length (or period) and entry bound `B` of an enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBounds {
    pub max_len: usize,
    pub entry_bound: i64,
}

impl EnumerationBounds {
    pub fn new(max_len: usize, entry_bound: i64) -> Self {
        EnumerationBounds { max_len, entry_bound }
    }
}

impl Default for EnumerationBounds {
    fn default() -> Self {
        EnumerationBounds { max_len: 5, entry_bound: 2 }
    }
}

/// All integer words of length `len` with entries in `[-b, b]`.
fn words(len: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (-b..=b).map(move |e| {
                    let mut w = w.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    out
}

/// Intermediate addresses up to the length bound in increasing order, with
/// the terminator last.
pub fn enumerate_intermediate(bounds: EnumerationBounds) -> Vec<IntermediateAddress> {
    let b = bounds.entry_bound;
    let mut out = Vec::new();
    if bounds.max_len >= 1 {
        out.push(IntermediateAddress::terminator());
    }
    for len in 2..=bounds.max_len {
        for body in words(len - 2, b) {
            for t in -b..b {
                out.push(IntermediateAddress::new(body.clone(), HalfInt::plus_half(t)));
            }
        }
    }
    let mut out: Vec<Address> = out.into_iter().map(Address::Intermediate).collect();
    out.sort();
    out.dedup();
    out.into_iter().map(|a| a.as_intermediate().expect("intermediate").clone()).collect()
}

/// Periodic addresses of exact period up to the bound, deduplicated and in
/// increasing order.
pub fn enumerate_periodic(bounds: EnumerationBounds) -> Vec<InfiniteAddress> {
    let mut set = BTreeSet::new();
    for len in 1..=bounds.max_len {
        for w in words(len, bounds.entry_bound) {
            set.insert(InfiniteAddress::periodic(w).expect("nonempty"));
        }
    }
    set.into_iter().collect()
}

/// Outcome of a suite run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub suite: String,
    pub bounds: EnumerationBounds,
    pub cases: usize,
    pub counterexamples: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Names accepted by [`exhaustive_check`].
pub const SUITES: &[&str] = &[
    "order-laws",
    "char-pair-laws",
    "itinerary-injectivity",
    "itinerary-roundtrip",
    "change-of-partition",
    "sector-boundaries",
    "bifurcation-roundtrip",
    "internal-roundtrip",
    "angled-roundtrip",
    "angled-uniqueness",
    "nested-wakes",
    "arc-components",
    "kneading-stability",
    "essential-orbits",
    "tuning-theorem",
];

/// Runs the named suite over the enumeration given by `bounds`.
pub fn exhaustive_check(suite: &str, bounds: EnumerationBounds) -> Result<CheckReport> {
    let mut c = Collector::default();
    match suite {
        "order-laws" => order_laws(bounds, &mut c),
        "char-pair-laws" => char_pair_laws(bounds, &mut c),
        "itinerary-injectivity" => itinerary_injectivity(bounds, &mut c),
        "itinerary-roundtrip" => itinerary_roundtrip(bounds, &mut c),
        "change-of-partition" => change_of_partition(bounds, &mut c),
        "sector-boundaries" => sector_boundaries(bounds, &mut c),
        "bifurcation-roundtrip" => bifurcation_roundtrip(bounds, &mut c),
        "internal-roundtrip" => internal_roundtrip(bounds, &mut c),
        "angled-roundtrip" => angled_roundtrip(bounds, &mut c),
        "angled-uniqueness" => angled_uniqueness(bounds, &mut c),
        "nested-wakes" => nested_wakes(bounds, &mut c),
        "arc-components" => arc_components(bounds, &mut c),
        "kneading-stability" => kneading_stability(bounds, &mut c),
        "essential-orbits" => essential_orbits(bounds, &mut c),
        "tuning-theorem" => tuning_theorem(bounds, &mut c),
        _ => return Err(Error::InvalidArgument(format!("unknown suite `{suite}`; known: {}", SUITES.join(", ")))),
    }
    Ok(CheckReport { suite: suite.to_string(), bounds, cases: c.cases, counterexamples: c.failures })
}

#[derive(Default)]
struct Collector {
    cases: usize,
    failures: Vec<String>,
}

impl Collector {
    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(witness());
        }
    }

    fn check_result<T>(&mut self, r: Result<T>, context: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.cases += 1;
                self.failures.push(format!("{}: {e}", context()));
                None
            }
        }
    }
}

fn components(bounds: EnumerationBounds) -> Vec<HyperbolicComponent> {
    enumerate_intermediate(bounds).into_iter().map(HyperbolicComponent::new).collect()
}

/// Intermediate and periodic addresses within the bounds, terminator excluded.
fn points(bounds: EnumerationBounds) -> Vec<Address> {
    let mut pts: Vec<Address> = enumerate_intermediate(bounds)
        .into_iter()
        .filter(|a| !a.is_terminator())
        .map(Address::Intermediate)
        .chain(enumerate_periodic(bounds).into_iter().map(Address::Infinite))
        .collect();
    pts.sort();
    pts
}

fn shift_n(a: &Address, n: usize) -> Result<Address> {
    (0..n).try_fold(a.clone(), |x, _| x.shift())
}

fn order_laws(bounds: EnumerationBounds, c: &mut Collector) {
    let pts = points(bounds);
    for (i, a) in pts.iter().enumerate() {
        c.check(a.to_string().parse::<Address>().as_ref() == Ok(a), || format!("{a} does not reparse"));
        for (j, b) in pts.iter().enumerate() {
            c.check(a.cmp(b) == i.cmp(&j), || format!("sorted order disagrees with cmp on {a}, {b}"));
            // one step of the shift keeps the order of addresses with the same
            // first entry
            if i < j && a.at(0) == b.at(0) {
                if let (Ok(sa), Ok(sb)) = (a.shift(), b.shift()) {
                    c.check(sa < sb, || format!("shift reverses {a} < {b}"));
                }
            }
        }
        if let Some(Entry::Int(k)) = a.at(0) {
            let back = a.shift().and_then(|s| s.prepend(Entry::Int(k)));
            c.check(back.as_ref() == Ok(a), || format!("prepend after shift changes {a}"));
        }
    }
    let step = (pts.len() / 12).max(1);
    let sample: Vec<&Address> = pts.iter().step_by(step).collect();
    for a in &sample {
        for b in &sample {
            for d in &sample {
                if a == b || b == d || a == d {
                    continue;
                }
                let (x, y) = (circular_order(a, b, d).expect("distinct"), circular_order(a, d, b).expect("distinct"));
                let rot = circular_order(b, d, a).expect("distinct");
                c.check(x != y && x == rot, || format!("circular order inconsistent on {a}, {b}, {d}"));
            }
        }
    }
}

fn char_pair_laws(bounds: EnumerationBounds, c: &mut Collector) {
    let probes = points(bounds);
    for w in components(bounds).iter().filter(|w| w.period() >= 2) {
        let Some((lo, hi)) = c.check_result(w.characteristic(), || format!("{w}")) else { continue };
        let Some(kstar) = c.check_result(w.forbidden_kneading(), || format!("{w}")) else { continue };
        let (lo_a, hi_a, s) = (Address::Infinite(lo.clone()), Address::Infinite(hi.clone()), w.address());
        let n = w.period();
        c.check(lo_a < s && s < hi_a, || format!("{w}: addresses not ordered {lo} < s < {hi}"));
        let (sl, sh) = (shift_n(&lo_a, n - 1).expect("infinite"), shift_n(&hi_a, n - 1).expect("infinite"));
        c.check(sh < sl, || format!("{w}: shifted upper {sh} not below shifted lower {sl}"));
        let km = kneading_pm(&lo_a, Side::Lower).expect("not terminator");
        let kp = kneading_pm(&hi_a, Side::Upper).expect("not terminator");
        c.check(km == kstar && kp == kstar, || format!("{w}: K-(lower)={km}, K+(upper)={kp}, K*={kstar}"));
        let il = itinerary(&lo_a, &s);
        let ih = itinerary(&hi_a, &s);
        c.check(il == kstar && ih == kstar, || format!("{w}: itin(lower)={il}, itin(upper)={ih}, K*={kstar}"));
        let cross_lo = itinerary(&hi_a, &lo_a).resolve(Side::Lower);
        let cross_hi = itinerary(&lo_a, &hi_a).resolve(Side::Upper);
        c.check(cross_lo == kstar && cross_hi == kstar, || format!("{w}: cross itineraries {cross_lo}, {cross_hi}"));
        for p in &probes {
            let inside = lo_a < *p && *p < hi_a;
            let same = itinerary(&lo_a, p) == itinerary(&hi_a, p);
            c.check(inside == same, || format!("{w}: probe {p} inside={inside} equal itineraries={same}"));
        }
    }
}

fn itinerary_injectivity(bounds: EnumerationBounds, c: &mut Collector) {
    let rs = enumerate_intermediate(bounds);
    let bases: Vec<Address> = std::iter::once(Address::terminator()).chain(points(bounds)).collect();
    for s in &bases {
        let mut seen: HashMap<Itinerary, &IntermediateAddress> = HashMap::new();
        for r in &rs {
            let it = itinerary(&Address::Intermediate(r.clone()), s);
            let clash = seen.insert(it.clone(), r);
            c.check(clash.is_none(), || format!("{r} and {} share itinerary {it} over {s}", clash.expect("clash")));
        }
    }
}

fn itinerary_roundtrip(bounds: EnumerationBounds, c: &mut Collector) {
    let pts = points(bounds);
    let bases: Vec<Address> = std::iter::once(Address::terminator()).chain(components(bounds).iter().map(|w| w.address())).collect();
    for s in &bases {
        for r in &pts {
            let it = itinerary(r, s);
            if it.is_finite() != matches!(r, Address::Intermediate(_)) {
                c.check(false, || format!("itinerary of {r} over {s} has the wrong kind: {it}"));
                continue;
            }
            if it.window(&it) == 0 {
                continue;
            }
            // boundary symbols are not solvable targets; skip those
            let has_boundary = (0..it.window(&it)).any(|k| matches!(it.at(k), Some(Symbol::Boundary(_))));
            if has_boundary {
                continue;
            }
            match solve_itinerary(&it, s, SeedSide::FromBelow) {
                Ok(x) => {
                    let back = itinerary(&x, s);
                    c.check(back == it, || format!("solve({it}, {s}) = {x} has itinerary {back}"));
                    let periodic_target = !it.is_finite() && it.preperiod().is_empty();
                    let periodic_result = x.as_infinite().is_some_and(InfiniteAddress::is_periodic);
                    c.check(!periodic_target || periodic_result, || format!("solve({it}, {s}) = {x} is not periodic"));
                }
                Err(Error::NotRealized(_)) => {}
                Err(e) => c.check(false, || format!("solve({it}, {s}): {e}")),
            }
        }
    }
}

fn change_of_partition(bounds: EnumerationBounds, c: &mut Collector) {
    let pts = points(bounds);
    for t in &pts {
        let horizon = match t {
            Address::Intermediate(a) => a.len() - 1,
            Address::Infinite(a) => a.preperiod().len() + 2 * a.period(),
        };
        let images: Vec<Address> = (1..=horizon).map(|j| shift_n(t, j).expect("defined")).collect();
        let itins: Vec<Itinerary> = pts.iter().map(|s| itinerary(t, s)).collect();
        for (i1, s1) in pts.iter().enumerate() {
            for (i2, s2) in pts.iter().enumerate().skip(i1 + 1) {
                for (j, img) in images.iter().enumerate() {
                    let agree = itins[i1].at(j) == itins[i2].at(j);
                    let outside = !(s1 <= img && img <= s2);
                    c.check(agree == outside, || {
                        format!("t={t}, s1={s1}, s2={s2}, j={}: agree={agree}, outside={outside}", j + 1)
                    });
                }
                if let Address::Infinite(_) = t {
                    let lower = itins[i1].resolve(Side::Lower);
                    let upper = itins[i2].resolve(Side::Upper);
                    let avoid = images.iter().all(|img| !(s1 < img && img < s2));
                    c.check((lower == upper) == avoid, || format!("t={t}, s1={s1}, s2={s2}: one-sided itineraries"));
                }
            }
        }
    }
}

fn sector_boundaries(bounds: EnumerationBounds, c: &mut Collector) {
    let b = bounds.entry_bound;
    for w in components(bounds).iter().filter(|w| w.period() >= 2) {
        let n = w.period();
        let Some(u) = c.check_result(w.forbidden_entry(), || format!("{w}")) else { continue };
        let s = w.address();
        let (lo_w, hi_w) = w.characteristic().expect("period at least 2");
        let bdys: Vec<(i64, InfiniteAddress)> =
            (-b - 2..=b + 2).map(|i| (i, sector_boundary(w, Entry::Int(i)).expect("integer label"))).collect();
        for (i, r) in &bdys {
            let ra = Address::Infinite(r.clone());
            c.check(r.period() == n && r.at(n - 1) == *i, || format!("{w}: boundary {i} is {r}"));
            c.check((ra > s) == (*i <= u), || format!("{w}: boundary {i} = {r} on the wrong side"));
            for k in 1..n {
                let img = shift_n(&ra, k).expect("infinite");
                let inside = Address::Infinite(lo_w.clone()) < img && img < Address::Infinite(hi_w.clone());
                c.check(!inside, || format!("{w}: shift {k} of boundary {r} enters the wake"));
            }
            let mut word = w.kneading().prefix(n - 1);
            // boundaries above the wake keep their label, those below drop by one
            word.push(Symbol::Int(if *i <= u { *i } else { *i - 1 }));
            let expected = Itinerary::periodic(Vec::new(), word).expect("integer word");
            let (over_r, over_s) = (itinerary(&s, &ra), itinerary(&ra, &s));
            c.check(over_r == *w.kneading() && over_s == expected, || {
                format!("{w}: boundary {r} has itineraries {over_r} and {over_s}")
            });
            let back = component_from_boundary(r);
            c.check(back.as_ref() == Ok(w), || format!("{w}: boundary {r} maps back to {back:?}"));
        }
        for pair in bdys.windows(2) {
            let ((i, x), (_, y)) = (&pair[0], &pair[1]);
            let (x, y) = (Address::Infinite(x.clone()), Address::Infinite(y.clone()));
            // increasing labels go up except across the wake of W
            let expected = if *i == u { Ordering::Greater } else { Ordering::Less };
            c.check(x.cmp(&y) == expected, || format!("{w}: boundaries {i} and {} out of order", i + 1));
        }
        for k in [-2, -1, 0, 1, 2] {
            let Some(sec) = c.check_result(sector_info(w, SectorKey::HeightIndex(k)), || format!("{w} sector {k}")) else {
                continue;
            };
            let mut same = true;
            for other in [
                SectorKey::Label(sec.label),
                SectorKey::KneadingEntry(sec.kneading_entry),
                SectorKey::SectorNumber(sec.sector_number),
            ] {
                same &= sector_info(w, other).as_ref() == Ok(&sec);
            }
            c.check(same, || format!("{w}: sector keys of height index {k} disagree"));
            let kl = kneading_pm(&Address::Infinite(sec.wake.lower.clone()), Side::Upper).expect("infinite");
            let ku = kneading_pm(&Address::Infinite(sec.wake.upper.clone()), Side::Lower).expect("infinite");
            c.check(
                kl.at(n - 1) == Some(Symbol::Int(sec.kneading_entry)) && ku.at(n - 1) == Some(Symbol::Int(sec.kneading_entry)),
                || format!("{w}: sector {k} boundaries disagree with kneading entry {}", sec.kneading_entry),
            );
        }
    }
}

/// Sample rotation numbers used by the bifurcation suites.
pub const SAMPLE_ROTATIONS: &[(i64, i64)] = &[(1, 2), (1, 3), (2, 3), (1, 4), (3, 4), (2, 5)];

fn bifurcation_roundtrip(bounds: EnumerationBounds, c: &mut Collector) {
    for w in components(bounds) {
        let n = w.period();
        for k in [-2i64, -1, 0, 1] {
            let mut prev: Option<Address> = None;
            let mut heights: Vec<Rational64> =
                SAMPLE_ROTATIONS.iter().map(|&(p, q)| Rational64::from_integer(k) + Rational64::new(p, q)).collect();
            heights.sort();
            for h in heights {
                let Some(child) = c.check_result(bifurcate_at_height(&w, h), || format!("{w} at {h}")) else { continue };
                let angle = h - h.floor();
                let q = *angle.denom() as usize;
                c.check(child.len() == q * n, || format!("{w} at {h}: {child} has length {}", child.len()));
                let cls = classify(&child);
                let expected = Classification::Satellite { parent: w.addr().clone(), rotation: angle };
                c.check(cls.as_ref() == Ok(&expected), || format!("{w} at {h}: classify({child}) = {cls:?}"));
                let ca = Address::Intermediate(child.clone());
                c.check(w.wake_contains(&ca) || n == 1, || format!("{w} at {h}: {child} outside the wake"));
                if let Some(p) = &prev {
                    c.check(*p < ca, || format!("{w}: heights not monotone at {h}"));
                }
                prev = Some(ca);
            }
        }
    }
}

fn internal_roundtrip(bounds: EnumerationBounds, c: &mut Collector) {
    let mut by_internal: HashMap<InternalAddress, Itinerary> = HashMap::new();
    for w in components(bounds) {
        let ia = w.internal_address().clone();
        let k = w.kneading().clone();
        let back = kneading_from_internal(&ia);
        c.check(back.as_ref() == Ok(&k), || format!("{w}: {ia} gives {back:?}, expected {k}"));
        c.check(internal_address(&w.address()).as_ref() == Ok(&ia), || format!("{w}: internal address paths disagree"));
        if let Some(other) = by_internal.insert(ia.clone(), k.clone()) {
            c.check(other == k, || format!("{ia} shared by kneading {other} and {k}"));
        }
    }
    for p in enumerate_periodic(bounds) {
        let pa = Address::Infinite(p.clone());
        let k = kneading(&pa).expect("infinite");
        let ia = internal_address(&pa).expect("infinite");
        if ia.entries().iter().all(|e| matches!(e.1, SectorNumber::Int(_))) && ia.len() > 1 {
            // an internal address of an infinite kneading sequence is itself
            // infinite; only its periodic-shaped prefix is checked
            continue;
        }
        let back = kneading_from_internal(&ia);
        c.check(back.as_ref() == Ok(&k), || format!("{p}: {ia} gives {back:?}, expected {k}"));
    }
}

fn angled_roundtrip(bounds: EnumerationBounds, c: &mut Collector) {
    for w in components(bounds) {
        let Some(a) = c.check_result(angled_internal(w.addr()), || format!("{w}")) else { continue };
        let back = addr_from_angled(&a);
        c.check(back.as_ref() == Ok(w.addr()), || format!("{w}: {a} maps back to {back:?}"));
        let plain: Vec<usize> = a.entries().iter().map(|e| e.0).collect();
        c.check(plain == w.internal_address().periods(), || format!("{w}: periods of {a} differ from the internal address"));
    }
}

fn angled_uniqueness(bounds: EnumerationBounds, c: &mut Collector) {
    let mut seen = HashMap::new();
    for w in components(bounds) {
        let Some(a) = c.check_result(angled_internal(w.addr()), || format!("{w}")) else { continue };
        let clash = seen.insert(a.clone(), w.clone());
        c.check(clash.is_none(), || format!("{a} shared by {w} and {}", clash.expect("clash")));
    }
}

fn int_entries(k: &Itinerary) -> HashSet<i64> {
    (0..k.window(k)).filter_map(|i| k.at(i).and_then(Symbol::as_int)).collect()
}

fn nested_wakes(bounds: EnumerationBounds, c: &mut Collector) {
    let ws = components(bounds);
    for w in &ws {
        for v in &ws {
            if w == v || !w.precedes(v) {
                continue;
            }
            let (kw, kv) = (w.kneading(), v.kneading());
            let missing: Vec<i64> = int_entries(kw).difference(&int_entries(kv)).copied().collect();
            c.check(missing.is_empty(), || format!("{w} precedes {v} but K(V) lacks {missing:?}"));
            c.check(kw != kv, || format!("{w} precedes {v} with equal kneading {kw}"));
        }
    }
}

fn arc_components(bounds: EnumerationBounds, c: &mut Collector) {
    for w in components(bounds).iter().filter(|w| w.period() >= 2) {
        let s = w.address();
        let k = w.kneading();
        let mut values = HashSet::new();
        for n in 1..w.period() {
            let Some(Symbol::Int(e)) = k.at(n - 1) else { break };
            if !values.insert(e) {
                continue;
            }
            let target = Itinerary::periodic(Vec::new(), k.prefix(n)).expect("integer word");
            let found = solve_itinerary(&target, &s, SeedSide::FromBelow)
                .and_then(|r| component_from_boundary(r.as_infinite().expect("periodic")));
            let Some(v) = c.check_result(found, || format!("{w}: no component for {target}")) else { continue };
            let kstar_ok = if v.period() == 1 { n == 1 } else { v.forbidden_kneading().as_ref() == Ok(&target) };
            c.check(kstar_ok && v.wake_contains(&s), || format!("{w}: {v} does not realize {target}"));
        }
    }
}

fn kneading_stability(bounds: EnumerationBounds, c: &mut Collector) {
    for w in components(bounds) {
        for k in [-2i64, -1, 0, 1] {
            let Some(sec) = c.check_result(sector_info(&w, SectorKey::HeightIndex(k)), || format!("{w} sector {k}")) else {
                continue;
            };
            for &(p, q) in SAMPLE_ROTATIONS {
                let h = Rational64::from_integer(k) + Rational64::new(p, q);
                let child = HyperbolicComponent::new(bifurcate_at_height(&w, h).expect("valid height"));
                let kstar = child.forbidden_kneading();
                c.check(kstar.as_ref() == Ok(&sec.kneading()), || format!("{w} at {h}: K*={kstar:?}, K(sector)={}", sec.kneading()));
            }
        }
    }
}

/// Periods of the internal address rebuilt from the wake nesting of the
/// enumerated components alone: starting at `inf`, repeatedly take the
/// component of lowest period among the later predecessors of `w`.
fn periods_from_nesting(w: &HyperbolicComponent, all: &[HyperbolicComponent]) -> Vec<usize> {
    let mut chain: Vec<&HyperbolicComponent> = all.iter().filter(|v| v.precedes(w)).collect();
    let mut periods = vec![1];
    let mut current = HyperbolicComponent::period_one();
    while current != *w {
        chain.retain(|v| *v != &current && current.precedes(v));
        let Some(next) = chain.iter().min_by_key(|v| v.period()) else { break };
        current = (*next).clone();
        periods.push(current.period());
    }
    periods
}

fn essential_orbits(bounds: EnumerationBounds, c: &mut Collector) {
    // predecessors of a component may carry entries one beyond its own bound
    let pool = components(EnumerationBounds::new(bounds.max_len, bounds.entry_bound + 1));
    let all = components(bounds);
    for w in &all {
        let periods = periods_from_nesting(w, &pool);
        c.check(periods == w.internal_address().periods(), || {
            format!("{w}: nesting gives periods {periods:?}, internal address {}", w.internal_address())
        });
        let predecessors = pool.iter().filter(|v| *v != w && v.precedes(w)).count();
        let expected = if periods.windows(2).all(|p| p[1] % p[0] == 0) {
            EssentialOrbits::Finite(periods.len() - 1)
        } else {
            EssentialOrbits::Infinite
        };
        let got = essential_orbit_count(w);
        c.check(got == expected, || format!("{w}: {got:?}, expected {expected:?}"));
        if let EssentialOrbits::Finite(k) = got {
            c.check(predecessors == k, || format!("{w}: {predecessors} predecessors for {k} essential orbits"));
        }
    }
}

/// The internal address predicted for the image of `r` under tuning.
pub fn tuned_internal_address(base: &InternalAddress, r: &InternalAddress) -> Result<InternalAddress> {
    let n = *base.periods().last().expect("nonempty");
    let mut entries = base.entries()[..base.len() - 1].to_vec();
    let (_, m1) = r.entries()[0];
    let m1 = match m1 {
        SectorNumber::Int(m) if m >= 0 => SectorNumber::Int(m + 1),
        SectorNumber::Half(h) if h.floor() >= 0 => SectorNumber::Half(HalfInt::plus_half(h.floor() + 1)),
        other => other,
    };
    entries.push((n, m1));
    entries.extend(r.entries()[1..].iter().map(|&(k, m)| (k * n, m)));
    InternalAddress::new(entries)
}

/// Bases always included in the tuning suite.
pub const TUNING_BASES: &[&str] = &["1/2 inf", "0 3 0 1/2 inf"];

fn tuning_theorem(bounds: EnumerationBounds, c: &mut Collector) {
    let mut bases: Vec<HyperbolicComponent> = TUNING_BASES.iter().map(|s| s.parse().expect("literal")).collect();
    let small = EnumerationBounds::new(bounds.max_len.min(3), bounds.entry_bound.min(1));
    for w in components(small) {
        if w.period() >= 2 && !bases.contains(&w) {
            bases.push(w);
        }
    }
    let rs = enumerate_intermediate(bounds);
    let periodic = enumerate_periodic(EnumerationBounds::new(bounds.max_len.min(3), bounds.entry_bound));
    for base in bases {
        let n = base.period();
        let table = TuningBlockTable::new(base.clone()).expect("period at least 2");
        let mut images = Vec::new();
        for r in &rs {
            let ra = Address::Intermediate(r.clone());
            let Some(t) = c.check_result(tune(&table, &ra, TuningVariant::Upper), || format!("{base} tuning {r}")) else {
                continue;
            };
            c.check(matches!(&t, Address::Intermediate(x) if x.len() == r.len() * n), || {
                format!("{base} tuning {r}: {t} violates the length law")
            });
            let expected = tuned_internal_address(base.internal_address(), &internal_address(&ra).expect("defined"));
            let got = internal_address(&t);
            c.check(got.is_ok() && got == expected, || format!("{base} tuning {r} = {t}: {got:?}, expected {expected:?}"));
            if !r.is_terminator() {
                let lhs = shift_n(&t, n);
                let rhs = ra.shift().and_then(|x| tune(&table, &x, TuningVariant::Upper));
                c.check(lhs.is_ok() && lhs == rhs, || format!("{base} tuning {r}: shift does not commute"));
            }
            images.push((ra, t));
        }
        for (i, (a, ta)) in images.iter().enumerate() {
            for (j, (b, tb)) in images.iter().enumerate().skip(i + 1) {
                for (d, td) in images.iter().skip(j + 1) {
                    let before = circular_order(a, b, d).expect("distinct");
                    let after = circular_order(ta, tb, td);
                    c.check(after == Ok(before), || format!("{base}: tuning changes the orientation of {a}, {b}, {d}"));
                }
            }
        }
        for variant in [TuningVariant::Upper, TuningVariant::Lower] {
            for p in &periodic {
                let pa = Address::Infinite(p.clone());
                let Some(t) = c.check_result(tune(&table, &pa, variant), || format!("{base} tuning {p}")) else { continue };
                c.check(matches!(&t, Address::Infinite(x) if (p.period() * n) % x.period() == 0), || {
                    format!("{base} tuning {p}: period of {t} does not divide {}", p.period() * n)
                });
                let lhs = shift_n(&t, n);
                let rhs = pa.shift().and_then(|x| tune(&table, &x, variant));
                c.check(lhs.is_ok() && lhs == rhs, || format!("{base} tuning {p} ({variant:?}): shift does not commute"));
            }
        }
    }
}
