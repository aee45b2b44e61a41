//! Variables, the variable registry and bitmask-backed variable sets.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

/// Dense variable index inside one [`Registry`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    pub fn new(index: usize) -> Self {
        Var(u32::try_from(index).expect("variable index overflows u32"))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Interns variable names to dense ids `0..n`.
///
/// [`VarSet`]s built against the same registry are directly comparable.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Registry {
    names: Vec<String>,
    ids: HashMap<String, Var>,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a registry whose ids follow the order of `names`. Duplicates are ignored.
    pub fn with_names<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut reg = Registry::new();
        for name in names {
            reg.intern(name.as_ref());
        }
        reg
    }

    /// Returns the id of `name`, allocating the next free id on first sight.
    pub fn intern(&mut self, name: &str) -> Var {
        if let Some(&v) = self.ids.get(name) {
            return v;
        }
        let v = Var::new(self.names.len());
        self.names.push(name.to_owned());
        self.ids.insert(name.to_owned(), v);
        v
    }

    pub fn get(&self, name: &str) -> Option<Var> {
        self.ids.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.ids.contains_key(name)
    }

    pub fn name(&self, v: Var) -> &str {
        &self.names[v.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        (0..self.names.len()).map(Var::new)
    }

    /// The set of every registered variable.
    pub fn all(&self) -> VarSet {
        self.vars().collect()
    }

    /// Names of the members of `set`, sorted as strings.
    pub fn sorted_names(&self, set: &VarSet) -> Vec<String> {
        let mut names: Vec<String> = set.iter().map(|v| self.name(v).to_owned()).collect();
        names.sort();
        names
    }

    /// Renders `set` as `{a, b, c}` with names sorted.
    pub fn format_set(&self, set: &VarSet) -> String {
        format!("{{{}}}", self.sorted_names(set).join(", "))
    }
}

/// A set of variables stored as a bitmask.
///
/// Trailing zero words are never stored, so structural equality is set
/// equality. The ordering is lexicographic on the ascending id sequence.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct VarSet {
    words: Vec<u64>,
}

impl VarSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(v: Var) -> Self {
        let mut s = VarSet::new();
        s.insert(v);
        s
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, v: Var) -> bool {
        let (w, b) = (v.index() / 64, v.index() % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, v: Var) -> bool {
        let (w, b) = (v.index() / 64, v.index() % 64);
        if w >= self.words.len() {
            return false;
        }
        let present = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        self.trim();
        present
    }

    pub fn contains(&self, v: Var) -> bool {
        let (w, b) = (v.index() / 64, v.index() % 64);
        self.words.get(w).is_some_and(|word| word & (1 << b) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Members in ascending id order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            word: 0,
            bits: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn first(&self) -> Option<Var> {
        self.iter().next()
    }

    pub fn union(&self, other: &VarSet) -> VarSet {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, o) in words.iter_mut().zip(&short.words) {
            *w |= o;
        }
        VarSet { words }
    }

    pub fn intersection(&self, other: &VarSet) -> VarSet {
        let mut out = VarSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        };
        out.trim();
        out
    }

    pub fn difference(&self, other: &VarSet) -> VarSet {
        let mut out = self.clone();
        for (w, o) in out.words.iter_mut().zip(&other.words) {
            *w &= !o;
        }
        out.trim();
        out
    }

    pub fn intersection_len(&self, other: &VarSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn intersects(&self, other: &VarSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_disjoint(&self, other: &VarSet) -> bool {
        !self.intersects(other)
    }

    pub fn is_subset(&self, other: &VarSet) -> bool {
        self.words.len() <= other.words.len()
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    pub fn is_superset(&self, other: &VarSet) -> bool {
        other.is_subset(self)
    }

    pub fn is_proper_subset(&self, other: &VarSet) -> bool {
        self.is_subset(other) && self != other
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    word: usize,
    bits: u64,
}

impl Iterator for Iter<'_> {
    type Item = Var;

    fn next(&mut self) -> Option<Var> {
        loop {
            if self.bits != 0 {
                let b = self.bits.trailing_zeros() as usize;
                self.bits &= self.bits - 1;
                return Some(Var::new(self.word * 64 + b));
            }
            self.word += 1;
            self.bits = *self.words.get(self.word)?;
        }
    }
}

impl<'a> IntoIterator for &'a VarSet {
    type Item = Var;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl FromIterator<Var> for VarSet {
    fn from_iter<I: IntoIterator<Item = Var>>(iter: I) -> Self {
        let mut s = VarSet::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl Extend<Var> for VarSet {
    fn extend<I: IntoIterator<Item = Var>>(&mut self, iter: I) {
        for v in iter {
            self.insert(v);
        }
    }
}

impl Ord for VarSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VarSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.iter().map(|v| v.index()))
            .finish()
    }
}

/// Orders sets by size first, then lexicographically on ascending ids.
pub fn by_size_then_lex(a: &VarSet, b: &VarSet) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// A total 0/1 assignment over the first `width` variables of a registry.
///
/// Stored as the set of variables assigned 1; bits at or beyond `width` are
/// always zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Assignment {
    width: usize,
    ones: VarSet,
}

impl Assignment {
    pub fn zeros(width: usize) -> Self {
        Assignment {
            width,
            ones: VarSet::new(),
        }
    }

    /// The assignment with exactly the members of `ones` (clipped to `width`) set to 1.
    pub fn from_ones(width: usize, ones: &VarSet) -> Self {
        let ones = ones.iter().filter(|v| v.index() < width).collect();
        Assignment { width, ones }
    }

    /// `S → value`: members of `set` take `value`, every other variable the opposite.
    pub fn set_to(width: usize, set: &VarSet, value: bool) -> Self {
        if value {
            Assignment::from_ones(width, set)
        } else {
            let ones = (0..width)
                .map(Var::new)
                .filter(|v| !set.contains(*v))
                .collect();
            Assignment { width, ones }
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn get(&self, v: Var) -> bool {
        self.ones.contains(v)
    }

    pub fn set(&mut self, v: Var, value: bool) {
        assert!(v.index() < self.width, "variable outside assignment width");
        if value {
            self.ones.insert(v);
        } else {
            self.ones.remove(v);
        }
    }

    pub fn ones(&self) -> &VarSet {
        &self.ones
    }

    pub fn zeros_set(&self) -> VarSet {
        (0..self.width)
            .map(Var::new)
            .filter(|v| !self.ones.contains(*v))
            .collect()
    }
}
