//! Combinatorial tuning: substituting every entry of an address by a block of
//! `n` entries taken from the sector boundaries of a base component of period
//! `n`, so that the whole circle lands in the closure of the base's wake.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::address::{Address, Entry, InfiniteAddress, IntermediateAddress};
use crate::components::{sector_boundary, HyperbolicComponent};
use crate::error::{Error, Result};

/// Which of the two tuning maps to use. They differ in the image of
/// `per(0)`: the upper characteristic address of the base or the lower one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TuningVariant {
    #[default]
    Upper,
    Lower,
}

/// Memoized tuning blocks of a base component.
#[derive(Debug)]
pub struct TuningBlockTable {
    base: HyperbolicComponent,
    forbidden: i64,
    blocks: Mutex<HashMap<i64, Vec<i64>>>,
}

impl TuningBlockTable {
    pub fn new(base: HyperbolicComponent) -> Result<Self> {
        if base.period() < 2 {
            return Err(Error::PeriodOne("tuning map"));
        }
        let forbidden = base.forbidden_entry()?;
        Ok(TuningBlockTable { base, forbidden, blocks: Mutex::new(HashMap::new()) })
    }

    pub fn base(&self) -> &HyperbolicComponent {
        &self.base
    }

    /// The first `n` entries of the sector boundary whose `n`-th entry is `i`.
    pub fn block(&self, i: i64) -> Result<Vec<i64>> {
        if let Some(b) = self.blocks.lock().expect("poisoned").get(&i) {
            return Ok(b.clone());
        }
        let word = sector_boundary(&self.base, Entry::Int(i))?.period_word().to_vec();
        self.blocks.lock().expect("poisoned").insert(i, word.clone());
        Ok(word)
    }

    /// Whether an address starting with block `i` lies above the base address.
    fn above(&self, i: i64) -> bool {
        i <= self.forbidden
    }

    /// Block index for entry `k` followed by a tail whose image lies above
    /// (`true`) or below (`false`) the base address.
    fn index(&self, k: i64, tail_above: bool) -> i64 {
        if tail_above {
            self.forbidden + k
        } else {
            self.forbidden + k + 1
        }
    }
}

/// The tuning block with index `i`.
pub fn tuning_block(table: &TuningBlockTable, i: i64) -> Result<Vec<i64>> {
    table.block(i)
}

/// Image of `r` under the tuning map of the table's base.
pub fn tune(table: &TuningBlockTable, r: &Address, variant: TuningVariant) -> Result<Address> {
    match r {
        Address::Intermediate(r) => tune_intermediate(table, r).map(Address::Intermediate),
        Address::Infinite(r) => tune_infinite(table, r, variant).map(Address::Infinite),
    }
}

fn tune_intermediate(table: &TuningBlockTable, r: &IntermediateAddress) -> Result<IntermediateAddress> {
    let base = table.base.addr();
    let Some(tail) = r.tail() else { return Ok(base.clone()) };
    // the half-integer entry is followed by the base address itself
    let mut index = table.forbidden + tail.ceil();
    let mut blocks = vec![table.block(index)?];
    for &k in r.body().iter().rev() {
        index = table.index(k, table.above(index));
        blocks.push(table.block(index)?);
    }
    let mut body: Vec<i64> = blocks.into_iter().rev().flatten().collect();
    body.extend_from_slice(base.body());
    Ok(IntermediateAddress::new(body, base.tail().expect("period at least 2")))
}

fn tune_infinite(table: &TuningBlockTable, r: &InfiniteAddress, variant: TuningVariant) -> Result<InfiniteAddress> {
    let per = r.period_word();
    let m = per.len();
    let mut above = vec![variant == TuningVariant::Upper; m];
    let mut stable = false;
    for _ in 0..=2 * m {
        let next: Vec<bool> = (0..m).map(|i| table.above(table.index(per[i], above[(i + 1) % m]))).collect();
        if next == above {
            stable = true;
            break;
        }
        above = next;
    }
    if !stable {
        return Err(Error::InvalidArgument(format!("no consistent sign assignment for tuning {r}")));
    }
    let mut per_out = Vec::with_capacity(m * table.base.period());
    for i in 0..m {
        per_out.extend(table.block(table.index(per[i], above[(i + 1) % m]))?);
    }
    let mut tail_above = above[0];
    let mut pre_blocks = Vec::new();
    for &k in r.preperiod().iter().rev() {
        let index = table.index(k, tail_above);
        pre_blocks.push(table.block(index)?);
        tail_above = table.above(index);
    }
    let pre_out = pre_blocks.into_iter().rev().flatten().collect();
    InfiniteAddress::new(pre_out, per_out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Address {
        s.parse().unwrap()
    }

    fn table(s: &str) -> TuningBlockTable {
        TuningBlockTable::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn blocks_are_sector_boundary_words() {
        let t = table("0 1 1 0 1/2 inf");
        assert_eq!(tuning_block(&t, 2).unwrap(), vec![0, 1, 1, 0, 0, 2]);
        assert_eq!(tuning_block(&t, 1).unwrap(), vec![0, 2, 0, 1, 0, 1]);
        assert_eq!(t.block(2).unwrap(), vec![0, 1, 1, 0, 0, 2]);
        assert!(TuningBlockTable::new(HyperbolicComponent::period_one()).is_err());
    }

    #[test]
    fn fixed_point_goes_to_characteristic_addresses() {
        let t = table("1/2 inf");
        assert_eq!(tune(&t, &a("(0)"), TuningVariant::Upper).unwrap(), a("(1 0)"));
        assert_eq!(tune(&t, &a("(0)"), TuningVariant::Lower).unwrap(), a("(0 1)"));
    }

    #[test]
    fn intermediate_images() {
        let t = table("1/2 inf");
        assert_eq!(tune(&t, &a("inf"), TuningVariant::Upper).unwrap(), a("1/2 inf"));
        assert_eq!(tune(&t, &a("1/2 inf"), TuningVariant::Upper).unwrap(), a("0 1 1/2 inf"));
        let t = table("0 3 0 1/2 inf");
        let image = tune(&t, &a("-1/2 inf"), TuningVariant::Upper).unwrap();
        assert_eq!(image, a("0 3 0 1 0 0 3 0 1/2 inf"));
    }
}
