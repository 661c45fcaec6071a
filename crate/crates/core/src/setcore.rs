//! Finite universes, subsets and the canonical enumeration order.
//!
//! A [`Subset`] is a bit-vector over element positions. Every enumeration in
//! the crate follows the canonical order: ascending cardinality, ties broken
//! by ascending bit-vector value.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Hard limit on universe size; masks are stored in a `u64` family bitset.
pub const MAX_CAPACITY: usize = 6;

/// Default capacity bound for a new universe.
pub const DEFAULT_CAPACITY: usize = MAX_CAPACITY;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Universe {
    labels: Vec<String>,
    capacity: usize,
}

impl Universe {
    pub fn new<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        Self::with_capacity(labels, DEFAULT_CAPACITY)
    }

    pub fn with_capacity<S: AsRef<str>>(labels: &[S], capacity: usize) -> Result<Self> {
        if capacity == 0 || capacity > MAX_CAPACITY {
            return Err(Error::InvalidParameter(format!("capacity must be in 1..={MAX_CAPACITY}, got {capacity}")));
        }
        if labels.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        if labels.len() > capacity {
            return Err(Error::CapacityExceeded { size: labels.len(), capacity });
        }
        let mut out: Vec<String> = Vec::with_capacity(labels.len());
        for l in labels {
            let l = l.as_ref();
            if l.is_empty() || l.contains(',') || l.trim() != l {
                return Err(Error::BadLabel(l.to_string()));
            }
            if out.iter().any(|o| o == l) {
                return Err(Error::DuplicateLabel(l.to_string()));
            }
            out.push(l.to_string());
        }
        Ok(Universe { labels: out, capacity })
    }

    /// Universe `{1, ..., n}`.
    pub fn numbered(n: usize) -> Result<Self> {
        let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        Self::new(&labels)
    }

    /// Universe `{a, b, c, ...}` with `n` elements.
    pub fn letters(n: usize) -> Result<Self> {
        let labels: Vec<String> = (0..n).map(|i| char::from(b'a' + (i as u8 % 26)).to_string()).collect();
        Self::new(&labels)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn width(&self) -> u8 {
        self.labels.len() as u8
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.width())
    }

    pub fn empty(&self) -> Subset {
        Subset::empty(self.width())
    }

    pub fn check(&self, a: &Subset) -> Result<()> {
        if a.width != self.width() {
            return Err(Error::WidthMismatch { expected: self.len(), found: a.width as usize });
        }
        Ok(())
    }

    pub fn subset<S: AsRef<str>>(&self, labels: &[S]) -> Result<Subset> {
        let mut bits = 0u64;
        for l in labels {
            let l = l.as_ref();
            let i = self.index_of(l).ok_or_else(|| Error::UnknownElementLabel(l.to_string()))?;
            bits |= 1 << i;
        }
        Ok(Subset { bits, width: self.width() })
    }

    pub fn singleton(&self, i: usize) -> Subset {
        assert!(i < self.len(), "element index out of range");
        Subset { bits: 1 << i, width: self.width() }
    }

    /// Element labels of `a` in universe order.
    pub fn labels_of(&self, a: &Subset) -> Vec<String> {
        a.elements().map(|i| self.labels[i].clone()).collect()
    }

    /// Comma-joined labels, the key format used in system files.
    pub fn key(&self, a: &Subset) -> String {
        self.labels_of(a).join(",")
    }

    /// Parses a key; elements may appear in any order.
    pub fn parse_key(&self, key: &str) -> Result<Subset> {
        if key.is_empty() {
            return Ok(self.empty());
        }
        let parts: Vec<&str> = key.split(',').collect();
        let mut seen = 0u64;
        for p in &parts {
            let i = self.index_of(p).ok_or_else(|| Error::UnknownElementLabel(p.to_string()))?;
            if seen & (1 << i) != 0 {
                return Err(Error::Input(format!("element {p:?} repeated in key {key:?}")));
            }
            seen |= 1 << i;
        }
        Ok(Subset { bits: seen, width: self.width() })
    }

    /// `{x,z}` style rendering.
    pub fn show(&self, a: &Subset) -> String {
        format!("{{{}}}", self.key(a))
    }
}

/// A subset of a universe, stored as a bit-vector.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Subset {
    bits: u64,
    width: u8,
}

impl Subset {
    pub fn empty(width: u8) -> Self {
        assert!(width as usize <= MAX_CAPACITY, "width out of range");
        Subset { bits: 0, width }
    }

    pub fn full(width: u8) -> Self {
        assert!(width as usize <= MAX_CAPACITY, "width out of range");
        Subset { bits: (1u64 << width) - 1, width }
    }

    pub fn from_bits(bits: u64, width: u8) -> Result<Self> {
        if width as usize > MAX_CAPACITY || bits >> width != 0 {
            return Err(Error::InvalidParameter(format!("bits {bits:#b} do not fit width {width}")));
        }
        Ok(Subset { bits, width })
    }

    pub(crate) fn raw(bits: u64, width: u8) -> Self {
        debug_assert!(bits >> width == 0);
        Subset { bits, width }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn width(&self) -> u8 {
        self.width
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.width as usize && self.bits & (1 << i) != 0
    }

    /// Element positions in ascending order.
    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.width as usize).filter(move |&i| self.bits & (1 << i) != 0)
    }

    fn same(&self, other: &Subset) {
        assert_eq!(self.width, other.width, "subsets over different universes");
    }

    /// Panics if the widths differ; see [`is_subset`] for the checked form.
    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.same(other);
        self.bits & !other.bits == 0
    }

    pub fn union(&self, other: &Subset) -> Subset {
        self.same(other);
        Subset { bits: self.bits | other.bits, width: self.width }
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        self.same(other);
        Subset { bits: self.bits & other.bits, width: self.width }
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        self.same(other);
        Subset { bits: self.bits & !other.bits, width: self.width }
    }

    pub fn complement(&self) -> Subset {
        Subset { bits: !self.bits & ((1u64 << self.width) - 1), width: self.width }
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.width.cmp(&other.width).then(canon_cmp(self.bits, other.bits))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.elements().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// Canonical comparison of two masks.
pub fn canon_cmp(a: u64, b: u64) -> Ordering {
    a.count_ones().cmp(&b.count_ones()).then(a.cmp(&b))
}

fn tables() -> &'static Vec<Vec<u64>> {
    static T: OnceLock<Vec<Vec<u64>>> = OnceLock::new();
    T.get_or_init(|| {
        let mut all: Vec<u64> = (0..1u64 << MAX_CAPACITY).collect();
        all.sort_by(|&a, &b| canon_cmp(a, b));
        (0..1u64 << MAX_CAPACITY).map(|of| all.iter().copied().filter(|m| m & !of == 0).collect()).collect()
    })
}

/// All submasks of `of`, in canonical order.
pub fn submasks(of: u64) -> &'static [u64] {
    &tables()[of as usize]
}

/// Masks of all subsets of a `width`-element universe, in canonical order.
pub fn all_masks(width: u8) -> &'static [u64] {
    submasks((1u64 << width) - 1)
}

fn checked(u: &Universe, a: &Subset) -> Result<()> {
    u.check(a)
}

fn same_width(a: &Subset, b: &Subset) -> Result<()> {
    if a.width != b.width {
        return Err(Error::WidthMismatch { expected: a.width as usize, found: b.width as usize });
    }
    Ok(())
}

pub fn complement(u: &Universe, a: &Subset) -> Result<Subset> {
    checked(u, a)?;
    Ok(a.complement())
}

pub fn relative_difference(x: &Subset, b: &Subset) -> Result<Subset> {
    same_width(x, b)?;
    Ok(x.difference(b))
}

pub fn is_subset(a: &Subset, b: &Subset) -> Result<bool> {
    same_width(a, b)?;
    Ok(a.is_subset_of(b))
}

/// Every subset of `of`, each exactly once, in canonical order.
pub fn enumerate_subsets(u: &Universe, of: &Subset) -> Result<impl Iterator<Item = Subset>> {
    checked(u, of)?;
    let w = of.width;
    Ok(submasks(of.bits).iter().map(move |&m| Subset::raw(m, w)))
}

/// Family of subsets as a bitset indexed by mask value.
pub type Family = u64;

pub fn family_members(f: Family, within: u64) -> impl Iterator<Item = u64> {
    submasks(within).iter().copied().filter(move |&m| f >> m & 1 == 1)
}

pub fn family_of(masks: impl IntoIterator<Item = u64>) -> Family {
    masks.into_iter().fold(0, |f, m| f | 1 << m)
}

/// Image of `mask` under the element map `i -> perm[i]`.
pub fn permute_mask(mask: u64, perm: &[usize]) -> u64 {
    let mut out = 0;
    for (i, &j) in perm.iter().enumerate() {
        if mask >> i & 1 == 1 {
            out |= 1 << j;
        }
    }
    out
}

/// Image of a family under the element map `i -> perm[i]`.
pub fn permute_family(f: Family, perm: &[usize]) -> Family {
    let mut out = 0;
    let mut rest = f;
    while rest != 0 {
        let m = rest.trailing_zeros() as u64;
        rest &= rest - 1;
        out |= 1 << permute_mask(m, perm);
    }
    out
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> Universe {
        Universe::new(&["x", "y", "z"]).unwrap()
    }

    #[test]
    fn complement_examples() {
        let u = xyz();
        let xz = u.subset(&["x", "z"]).unwrap();
        assert_eq!(complement(&u, &xz).unwrap(), u.subset(&["y"]).unwrap());
        assert_eq!(complement(&u, &u.empty()).unwrap(), u.full());
        assert_eq!(complement(&u, &u.full()).unwrap(), u.empty());
    }

    #[test]
    fn difference_examples() {
        let u = Universe::letters(3).unwrap();
        let s = |l: &[&str]| u.subset(l).unwrap();
        assert_eq!(relative_difference(&s(&["a", "b", "c"]), &s(&["b"])).unwrap(), s(&["a", "c"]));
        assert_eq!(relative_difference(&s(&["a"]), &s(&["a"])).unwrap(), u.empty());
        assert_eq!(relative_difference(&s(&["a", "c"]), &u.empty()).unwrap(), s(&["a", "c"]));
    }

    #[test]
    fn enumeration_order() {
        let u = xyz();
        let xy = u.subset(&["x", "y"]).unwrap();
        let got: Vec<String> = enumerate_subsets(&u, &xy).unwrap().map(|s| u.show(&s)).collect();
        assert_eq!(got, ["{}", "{x}", "{y}", "{x,y}"]);
        assert_eq!(enumerate_subsets(&u, &u.empty()).unwrap().count(), 1);
        assert_eq!(enumerate_subsets(&u, &u.full()).unwrap().count(), 8);
    }

    #[test]
    fn subset_examples() {
        let u = xyz();
        let s = |l: &[&str]| u.subset(l).unwrap();
        assert!(is_subset(&s(&["x"]), &s(&["x", "z"])).unwrap());
        assert!(!is_subset(&s(&["x", "y"]), &s(&["x", "z"])).unwrap());
        for a in enumerate_subsets(&u, &u.full()).unwrap() {
            assert!(is_subset(&u.empty(), &a).unwrap());
        }
    }

    #[test]
    fn width_mismatch_rejected() {
        let u = xyz();
        let v = Universe::letters(2).unwrap();
        assert!(matches!(complement(&u, &v.full()), Err(Error::WidthMismatch { .. })));
        assert!(relative_difference(&u.full(), &v.full()).is_err());
        assert!(is_subset(&u.full(), &v.full()).is_err());
        assert!(enumerate_subsets(&u, &v.full()).is_err());
    }

    #[test]
    fn universe_validation() {
        assert_eq!(Universe::new::<&str>(&[]), Err(Error::EmptyUniverse));
        assert!(matches!(Universe::new(&["a", "a"]), Err(Error::DuplicateLabel(_))));
        assert!(matches!(Universe::new(&[""]), Err(Error::BadLabel(_))));
        assert!(matches!(Universe::new(&["a,b"]), Err(Error::BadLabel(_))));
        assert!(matches!(Universe::numbered(7), Err(Error::CapacityExceeded { size: 7, .. })));
        assert!(matches!(
            Universe::with_capacity(&["a", "b", "c"], 2),
            Err(Error::CapacityExceeded { size: 3, capacity: 2 })
        ));
    }

    #[test]
    fn permutation_helpers() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permute_mask(0b011, &[2, 0, 1]), 0b101);
        let f = family_of([0b000, 0b001]);
        assert_eq!(permute_family(f, &[1, 0]), family_of([0b000, 0b010]));
    }

    #[test]
    fn keys_round_trip() {
        let u = xyz();
        let xz = u.subset(&["z", "x"]).unwrap();
        assert_eq!(u.key(&xz), "x,z");
        assert_eq!(u.parse_key("z,x").unwrap(), xz);
        assert_eq!(u.parse_key("").unwrap(), u.empty());
        assert!(u.parse_key("x,x").is_err());
        assert!(matches!(u.parse_key("w"), Err(Error::UnknownElementLabel(_))));
    }
}
