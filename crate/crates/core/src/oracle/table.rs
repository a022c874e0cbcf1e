use std::io::{self, Read, Write};
use std::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Aborted, OracleError, QueryLedger};

/// Read access to an explicit function `f: [domain_size] -> [range_size]`.
///
/// Domain and range elements are zero-based indices.
pub trait FunctionValues {
    fn domain_size(&self) -> u32;
    fn range_size(&self) -> u32;
    fn value(&self, x: u32) -> u32;
}

/// A random function with no constraint on domain size and no inverse index.
///
/// Used where the domain is larger than the range, e.g. when an l-collision
/// is sought on `l * N` inputs. Restrict it to obtain [`FunctionTable`]s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomFunction {
    range_size: u32,
    seed: u64,
    values: Vec<u32>,
}

impl RandomFunction {
    /// Draws each value independently and uniformly from `[range_size]`.
    pub fn sample(domain_size: u32, range_size: u32, seed: u64) -> Result<Self, OracleError> {
        if domain_size == 0 || range_size == 0 {
            return Err(OracleError::EmptySet);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values = (0..domain_size)
            .map(|_| rng.random_range(0..range_size))
            .collect();
        Ok(Self {
            range_size,
            seed,
            values,
        })
    }

    pub fn from_values(values: Vec<u32>, range_size: u32) -> Result<Self, OracleError> {
        if values.is_empty() || range_size == 0 {
            return Err(OracleError::EmptySet);
        }
        if let Some(&y) = values.iter().find(|&&y| y >= range_size) {
            return Err(OracleError::ValueOutOfRange { value: y, range_size });
        }
        if values.len() > u32::MAX as usize {
            return Err(OracleError::DomainTooLarge(values.len() as u64));
        }
        Ok(Self {
            range_size,
            seed: 0,
            values,
        })
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }
}

impl FunctionValues for RandomFunction {
    fn domain_size(&self) -> u32 {
        self.values.len() as u32
    }

    fn range_size(&self) -> u32 {
        self.range_size
    }

    fn value(&self, x: u32) -> u32 {
        self.values[x as usize]
    }
}

/// An explicit function with `|X| <= |Y|` and an exact inverse index.
///
/// Immutable after construction, so one table can back many concurrent
/// trials. The inverse index is stored in compressed form: the preimages of
/// `y` are `preimages[offsets[y]..offsets[y + 1]]`, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionTable {
    range_size: u32,
    seed: u64,
    values: Vec<u32>,
    offsets: Vec<u32>,
    preimages: Vec<u32>,
}

impl FunctionTable {
    fn build(values: Vec<u32>, range_size: u32, seed: u64) -> Result<Self, OracleError> {
        if values.is_empty() || range_size == 0 {
            return Err(OracleError::EmptySet);
        }
        if values.len() as u64 > range_size as u64 {
            return Err(OracleError::DomainExceedsRange {
                domain_size: values.len() as u64,
                range_size,
            });
        }
        let mut offsets = vec![0u32; range_size as usize + 1];
        for &y in &values {
            if y >= range_size {
                return Err(OracleError::ValueOutOfRange { value: y, range_size });
            }
            offsets[y as usize + 1] += 1;
        }
        for y in 0..range_size as usize {
            offsets[y + 1] += offsets[y];
        }
        let mut cursor = offsets.clone();
        let mut preimages = vec![0u32; values.len()];
        for (x, &y) in values.iter().enumerate() {
            let slot = &mut cursor[y as usize];
            preimages[*slot as usize] = x as u32;
            *slot += 1;
        }
        Ok(Self {
            range_size,
            seed,
            values,
            offsets,
            preimages,
        })
    }

    /// Samples a uniformly random function; the same generator as
    /// [`RandomFunction::sample`], so equal seeds give equal values.
    pub fn sample(domain_size: u32, range_size: u32, seed: u64) -> Result<Self, OracleError> {
        if domain_size as u64 > range_size as u64 {
            return Err(OracleError::DomainExceedsRange {
                domain_size: domain_size as u64,
                range_size,
            });
        }
        let f = RandomFunction::sample(domain_size, range_size, seed)?;
        Self::build(f.values, range_size, seed)
    }

    pub fn from_values(values: Vec<u32>, range_size: u32) -> Result<Self, OracleError> {
        Self::build(values, range_size, 0)
    }

    /// Seed the values were drawn from (0 for tables built from explicit
    /// values).
    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// Evaluates `f(x)` through the oracle, charging one query.
    pub fn query(&self, x: u32, ledger: &mut QueryLedger) -> Result<u32, Aborted> {
        ledger.charge(1)?;
        Ok(self.value(x))
    }

    pub fn preimages(&self, y: u32) -> &[u32] {
        let lo = self.offsets[y as usize] as usize;
        let hi = self.offsets[y as usize + 1] as usize;
        &self.preimages[lo..hi]
    }

    pub fn preimage_count(&self, y: u32) -> u32 {
        self.offsets[y as usize + 1] - self.offsets[y as usize]
    }

    /// `|Im(f)|`.
    pub fn image_size(&self) -> u32 {
        self.offsets.windows(2).filter(|w| w[1] > w[0]).count() as u32
    }

    /// Writes the flat binary layout: little-endian `u64` domain size, range
    /// size and seed, followed by one little-endian `u32` per value.
    pub fn write_binary<W: Write>(&self, mut w: W) -> io::Result<()> {
        w.write_all(&(self.values.len() as u64).to_le_bytes())?;
        w.write_all(&(self.range_size as u64).to_le_bytes())?;
        w.write_all(&self.seed.to_le_bytes())?;
        for &y in &self.values {
            w.write_all(&y.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_binary<R: Read>(mut r: R) -> Result<Self, OracleError> {
        let mut word = [0u8; 8];
        let mut header = [0u64; 3];
        for h in header.iter_mut() {
            r.read_exact(&mut word)?;
            *h = u64::from_le_bytes(word);
        }
        let [domain_size, range_size, seed] = header;
        if domain_size > u32::MAX as u64 {
            return Err(OracleError::DomainTooLarge(domain_size));
        }
        let range_size = u32::try_from(range_size)
            .map_err(|_| OracleError::Format(format!("range size {range_size} exceeds u32")))?;
        let mut values = Vec::with_capacity(domain_size as usize);
        let mut cell = [0u8; 4];
        for _ in 0..domain_size {
            r.read_exact(&mut cell)?;
            values.push(u32::from_le_bytes(cell));
        }
        Self::build(values, range_size, seed)
    }
}

impl FunctionValues for FunctionTable {
    fn domain_size(&self) -> u32 {
        self.values.len() as u32
    }

    fn range_size(&self) -> u32 {
        self.range_size
    }

    fn value(&self, x: u32) -> u32 {
        self.values[x as usize]
    }
}

/// Samples a random function `f: [domain_size] -> [range_size]` with its
/// inverse index. Larger domains must be sampled as a [`RandomFunction`] and
/// restricted.
pub fn sample_random_function(
    domain_size: u32,
    range_size: u32,
    seed: u64,
) -> Result<FunctionTable, OracleError> {
    FunctionTable::sample(domain_size, range_size, seed)
}

/// Restriction of `f` to the domain cell `cell` (local index `i` maps to
/// `cell.start + i`).
pub fn restrict_cell<F: FunctionValues + ?Sized>(
    f: &F,
    cell: Range<u32>,
) -> Result<FunctionTable, OracleError> {
    if cell.end > f.domain_size() || cell.start >= cell.end {
        return Err(OracleError::CellOutOfDomain {
            start: cell.start,
            end: cell.end,
            domain_size: f.domain_size(),
        });
    }
    let values = cell.map(|x| f.value(x)).collect();
    FunctionTable::build(values, f.range_size(), 0)
}

/// Restriction of `f` to its first `subset_size` domain elements.
pub fn restrict_domain<F: FunctionValues + ?Sized>(
    f: &F,
    subset_size: u32,
) -> Result<FunctionTable, OracleError> {
    restrict_cell(f, 0..subset_size)
}

/// Splits the first `cells * cell_size` inputs of `f` into consecutive
/// disjoint cells.
pub fn partition_domain<F: FunctionValues + ?Sized>(
    f: &F,
    cells: u32,
    cell_size: u32,
) -> Result<Vec<FunctionTable>, OracleError> {
    (0..cells)
        .map(|i| {
            let start = i
                .checked_mul(cell_size)
                .ok_or(OracleError::DomainTooLarge(i as u64 * cell_size as u64))?;
            restrict_cell(f, start..start.saturating_add(cell_size))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_entry_table() {
        for seed in 0..20 {
            let f = sample_random_function(1, 5, seed).unwrap();
            assert_eq!(f.domain_size(), 1);
            assert!(f.value(0) < 5);
            assert_eq!(f.preimages(f.value(0)), &[0]);
        }
    }

    #[test]
    fn deterministic_for_seed() {
        let a = sample_random_function(1 << 16, 1 << 16, 0xC0FFEE).unwrap();
        let b = sample_random_function(1 << 16, 1 << 16, 0xC0FFEE).unwrap();
        assert_eq!(a, b);
        let c = sample_random_function(1 << 16, 1 << 16, 0xC0FFEF).unwrap();
        assert_ne!(a.values(), c.values());
    }

    #[test]
    fn wide_and_table_sampling_agree() {
        let wide = RandomFunction::sample(100, 100, 9).unwrap();
        let table = FunctionTable::sample(100, 100, 9).unwrap();
        assert_eq!(wide.values(), table.values());
    }

    #[test]
    fn oversized_domain_rejected() {
        assert!(matches!(
            sample_random_function(6, 5, 0),
            Err(OracleError::DomainExceedsRange { .. })
        ));
    }

    #[test]
    fn restriction_agrees_with_parent() {
        let n = 64;
        let f = RandomFunction::sample(2 * n, n, 11).unwrap();
        let g = restrict_domain(&f, n).unwrap();
        assert_eq!(g.domain_size(), n);
        for x in 0..n {
            assert_eq!(g.value(x), f.value(x));
        }
    }

    #[test]
    fn identity_restriction() {
        let f = sample_random_function(50, 80, 4).unwrap();
        let g = restrict_domain(&f, 50).unwrap();
        assert_eq!(g.values(), f.values());
    }

    #[test]
    fn partition_cells_are_disjoint() {
        let n = 32;
        let f = RandomFunction::sample(3 * n, n, 5).unwrap();
        let cells = partition_domain(&f, 3, n).unwrap();
        assert_eq!(cells.len(), 3);
        for (i, cell) in cells.iter().enumerate() {
            for x in 0..n {
                assert_eq!(cell.value(x), f.value(i as u32 * n + x));
            }
        }
        // global index sets [i n, (i + 1) n) never overlap
        assert!(partition_domain(&f, 4, n).is_err());
    }

    #[test]
    fn query_charges_one() {
        let f = sample_random_function(10, 10, 0).unwrap();
        let mut ledger = QueryLedger::new(2);
        assert_eq!(f.query(3, &mut ledger), Ok(f.value(3)));
        assert_eq!(ledger.count(), 1);
        assert_eq!(f.query(4, &mut ledger), Err(Aborted));
    }

    #[test]
    fn image_size_counts_distinct_values() {
        let f = FunctionTable::from_values(vec![0, 0, 3, 3, 3, 7], 8).unwrap();
        assert_eq!(f.image_size(), 3);
        assert_eq!(f.preimages(3), &[2, 3, 4]);
        assert_eq!(f.preimage_count(1), 0);
    }

    #[test]
    fn binary_layout() {
        let f = FunctionTable::from_values(vec![1, 0, 1], 4).unwrap();
        let mut buf = Vec::new();
        f.write_binary(&mut buf).unwrap();
        let mut expected = Vec::new();
        expected.extend_from_slice(&3u64.to_le_bytes());
        expected.extend_from_slice(&4u64.to_le_bytes());
        expected.extend_from_slice(&0u64.to_le_bytes());
        for v in [1u32, 0, 1] {
            expected.extend_from_slice(&v.to_le_bytes());
        }
        assert_eq!(buf, expected);
        assert_eq!(FunctionTable::read_binary(&buf[..]).unwrap(), f);
        assert!(FunctionTable::read_binary(&buf[..buf.len() - 1]).is_err());
    }

    proptest! {
        #[test]
        fn inverse_index_partitions_domain(d in 1u32..300, extra in 0u32..300, seed in any::<u64>()) {
            let r = d + extra;
            let f = sample_random_function(d, r, seed).unwrap();
            let mut seen = vec![false; d as usize];
            for y in 0..r {
                for &x in f.preimages(y) {
                    prop_assert_eq!(f.value(x), y);
                    prop_assert!(!seen[x as usize]);
                    seen[x as usize] = true;
                }
            }
            prop_assert!(seen.into_iter().all(|s| s));
        }

        #[test]
        fn binary_round_trip(d in 1u32..100, seed in any::<u64>()) {
            let f = sample_random_function(d, 100, seed).unwrap();
            let mut buf = Vec::new();
            f.write_binary(&mut buf).unwrap();
            prop_assert_eq!(FunctionTable::read_binary(&buf[..]).unwrap(), f);
        }
    }
}
