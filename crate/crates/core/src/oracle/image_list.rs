use indexmap::IndexMap;

use super::FunctionValues;

/// A list of i-claws keyed by their common image.
///
/// Holds the records `(x_1, ..., x_i, y)` together with the set of their `y`
/// components. Images are pairwise distinct, so the `y` set is the key set
/// of the map. Iteration follows insertion order, which keeps every
/// simulation deterministic.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ImageList {
    records: IndexMap<u32, Vec<u32>>,
}

impl ImageList {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Inserts a record. Returns `false` and leaves the list unchanged when
    /// `y` is already present.
    pub fn insert(&mut self, xs: Vec<u32>, y: u32) -> bool {
        if self.records.contains_key(&y) {
            return false;
        }
        self.records.insert(y, xs);
        true
    }

    /// Removes and returns the record with image `y`.
    pub fn remove(&mut self, y: u32) -> Option<Vec<u32>> {
        self.records.shift_remove(&y)
    }

    pub fn contains(&self, y: u32) -> bool {
        self.records.contains_key(&y)
    }

    pub fn get(&self, y: u32) -> Option<&[u32]> {
        self.records.get(&y).map(Vec::as_slice)
    }

    pub fn first(&self) -> Option<(&[u32], u32)> {
        self.records.first().map(|(&y, xs)| (xs.as_slice(), y))
    }

    /// The image set `L'`.
    pub fn ys(&self) -> impl Iterator<Item = u32> + '_ {
        self.records.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[u32], u32)> + '_ {
        self.records.iter().map(|(&y, xs)| (xs.as_slice(), y))
    }

    /// Checks every record against the tables: `functions[k](xs[k]) == y`.
    pub fn is_consistent_with<F: FunctionValues>(&self, functions: &[F]) -> bool {
        self.iter().all(|(xs, y)| {
            xs.len() <= functions.len()
                && xs
                    .iter()
                    .zip(functions)
                    .all(|(&x, f)| x < f.domain_size() && f.value(x) == y)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::FunctionTable;

    #[test]
    fn images_stay_distinct() {
        let mut list = ImageList::new();
        assert!(list.insert(vec![1], 4));
        assert!(!list.insert(vec![2], 4));
        assert_eq!(list.len(), 1);
        assert_eq!(list.get(4), Some(&[1][..]));
    }

    #[test]
    fn remove_keeps_order() {
        let mut list = ImageList::new();
        for (x, y) in [(0, 9), (1, 3), (2, 7)] {
            list.insert(vec![x], y);
        }
        assert_eq!(list.remove(3), Some(vec![1]));
        assert_eq!(list.ys().collect::<Vec<_>>(), vec![9, 7]);
        assert_eq!(list.remove(3), None);
        assert_eq!(list.first(), Some((&[0][..], 9)));
    }

    #[test]
    fn consistency_check() {
        let f1 = FunctionTable::from_values(vec![2, 0, 1], 3).unwrap();
        let f2 = FunctionTable::from_values(vec![1, 2, 0], 3).unwrap();
        let mut list = ImageList::new();
        list.insert(vec![0, 1], 2);
        assert!(list.is_consistent_with(&[f1.clone(), f2.clone()]));
        list.insert(vec![1, 1], 0);
        assert!(!list.is_consistent_with(&[f1, f2]));
    }
}
