//! Finite bounded lattices given by a generating order relation.
//!
//! Elements are dense indices `0..n` with a label map. The order, meet and
//! join are fully materialized at construction, so every later query is a
//! table lookup.

use std::collections::HashMap;

use crate::bitset::ElemSet;
use crate::error::{Error, Result};

/// Lexicographically smallest violating triple of a lattice law, in index order.
pub type Triple = (usize, usize, usize);

#[derive(Clone, PartialEq, Eq)]
pub struct Lattice {
    names: Vec<String>,
    /// `up[x]` holds every `y` with `x <= y`.
    up: Vec<ElemSet>,
    /// `down[x]` holds every `y` with `y <= x`.
    down: Vec<ElemSet>,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
    /// `orth[x]` holds every `y` with `x ∧ y = 0`.
    orth: Vec<ElemSet>,
}

impl std::fmt::Debug for Lattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Lattice")
            .field("names", &self.names)
            .field("covers", &self.cover_pairs())
            .finish()
    }
}

impl Lattice {
    /// Builds a lattice from labels and any set of order pairs `(x, y)` meaning
    /// `x <= y`. The reflexive-transitive closure is taken before validation.
    pub fn build<S: AsRef<str>>(names: &[S], leq_pairs: &[(S, S)]) -> Result<Lattice> {
        let mut index = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.as_ref().to_string(), i).is_some() {
                return Err(Error::DuplicateLabel(name.as_ref().to_string()));
            }
        }
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::UnknownLabel(s.to_string()))
        };
        let mut pairs = Vec::with_capacity(leq_pairs.len());
        for (x, y) in leq_pairs {
            pairs.push((lookup(x.as_ref())?, lookup(y.as_ref())?));
        }
        let names = names.iter().map(|s| s.as_ref().to_string()).collect();
        Lattice::from_index_pairs(names, &pairs)
    }

    /// Same as [`Lattice::build`] with pairs already given as indices.
    pub fn from_index_pairs(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Lattice> {
        let n = names.len();
        if n == 0 || n > 64 {
            return Err(Error::LatticeSize(n));
        }
        let mut up: Vec<ElemSet> = (0..n).map(ElemSet::singleton).collect();
        for &(x, y) in pairs {
            if x >= n || y >= n {
                return Err(Error::IndexOutOfRange {
                    index: x.max(y),
                    len: n,
                });
            }
            up[x].insert(y);
        }
        // Warshall closure on row bitmasks.
        for k in 0..n {
            for x in 0..n {
                if up[x].contains(k) {
                    up[x] = up[x].union(up[k]);
                }
            }
        }
        for x in 0..n {
            for y in (x + 1)..n {
                if up[x].contains(y) && up[y].contains(x) {
                    return Err(Error::NotAPoset(names[x].clone(), names[y].clone()));
                }
            }
        }
        let mut down = vec![ElemSet::EMPTY; n];
        for x in 0..n {
            for y in up[x] {
                down[y].insert(x);
            }
        }
        let all = ElemSet::full(n);
        let bottom = (0..n)
            .find(|&x| up[x] == all)
            .ok_or(Error::NotBounded("bottom"))?;
        let top = (0..n)
            .find(|&x| down[x] == all)
            .ok_or(Error::NotBounded("top"))?;

        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let lower = down[x].intersection(down[y]);
                let glb = lower.iter().find(|&g| down[g] == lower).ok_or_else(|| {
                    Error::NotALattice(names[x].clone(), names[y].clone(), "meet")
                })?;
                let upper = up[x].intersection(up[y]);
                let lub = upper.iter().find(|&l| up[l] == upper).ok_or_else(|| {
                    Error::NotALattice(names[x].clone(), names[y].clone(), "join")
                })?;
                meet[x * n + y] = glb;
                join[x * n + y] = lub;
            }
        }
        let mut orth = vec![ElemSet::EMPTY; n];
        for x in 0..n {
            for y in 0..n {
                if meet[x * n + y] == bottom {
                    orth[x].insert(y);
                }
            }
        }
        let lattice = Lattice {
            names,
            up,
            down,
            meet,
            join,
            bottom,
            top,
            orth,
        };
        debug_assert_eq!(lattice.law_violation(), None);
        Ok(lattice)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len() + y]
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y]
    }

    /// Elements `y` with `x ∧ y = 0`.
    #[inline]
    pub fn orth(&self, x: usize) -> ElemSet {
        self.orth[x]
    }

    /// The down-set `[0, x]`.
    pub fn down_set(&self, x: usize) -> ElemSet {
        self.down[x]
    }

    pub fn up_set(&self, x: usize) -> ElemSet {
        self.up[x]
    }

    fn check_index(&self, x: usize) -> Result<()> {
        if x < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: x,
                len: self.len(),
            })
        }
    }

    /// `(x ∧ y, x ∨ y)`.
    pub fn meet_join(&self, x: usize, y: usize) -> Result<(usize, usize)> {
        self.check_index(x)?;
        self.check_index(y)?;
        Ok((self.meet(x, y), self.join(x, y)))
    }

    /// Join of a set of elements; the empty join is the bottom.
    pub fn join_all(&self, set: ElemSet) -> usize {
        set.iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Covering pairs `(x, y)` with `x < y` and nothing strictly between.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if x == y || !self.leq(x, y) {
                    continue;
                }
                let between = self.up[x]
                    .intersection(self.down[y])
                    .len();
                if between == 2 {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Exhaustive check of the lattice laws and the order/operation
    /// correspondence. Returns the first failing law name.
    pub fn law_violation(&self) -> Option<&'static str> {
        let n = self.len();
        for x in 0..n {
            if self.meet(x, x) != x || self.join(x, x) != x {
                return Some("idempotency");
            }
            if !self.leq(self.bottom, x) || !self.leq(x, self.top) {
                return Some("bounds");
            }
            for y in 0..n {
                if self.meet(x, y) != self.meet(y, x) || self.join(x, y) != self.join(y, x) {
                    return Some("commutativity");
                }
                if self.meet(x, self.join(x, y)) != x || self.join(x, self.meet(x, y)) != x {
                    return Some("absorption");
                }
                let le = self.leq(x, y);
                if le != (self.meet(x, y) == x) || le != (self.join(x, y) == y) {
                    return Some("order consistency");
                }
                for z in 0..n {
                    if self.meet(self.meet(x, y), z) != self.meet(x, self.meet(y, z))
                        || self.join(self.join(x, y), z) != self.join(x, self.join(y, z))
                    {
                        return Some("associativity");
                    }
                }
            }
        }
        None
    }

    /// First triple `(x, y, z)` with `x ∧ z = y ∧ z = 0` but `(x ∨ y) ∧ z ≠ 0`.
    pub fn zero_distributive_violation(&self) -> Option<Triple> {
        self.zero_distributive_violation_in(self.all())
    }

    /// As [`Lattice::zero_distributive_violation`], restricted to the
    /// sublattice formed by an ideal.
    pub fn zero_distributive_violation_in(&self, set: ElemSet) -> Option<Triple> {
        find_triple(self, set, |l, x, y, z| {
            l.meet(x, z) == l.bottom
                && l.meet(y, z) == l.bottom
                && l.meet(l.join(x, y), z) != l.bottom
        })
    }

    pub fn is_zero_distributive(&self) -> bool {
        self.zero_distributive_violation().is_none()
    }

    /// First triple violating `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)`.
    pub fn distributive_violation(&self) -> Option<Triple> {
        find_triple(self, self.all(), |l, x, y, z| {
            l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z))
        })
    }

    pub fn is_distributive(&self) -> bool {
        self.distributive_violation().is_none()
    }

    /// First triple with `x <= z` violating `x ∨ (y ∧ z) = (x ∨ y) ∧ z`.
    pub fn modular_violation(&self) -> Option<Triple> {
        find_triple(self, self.all(), |l, x, y, z| {
            l.leq(x, z) && l.join(x, l.meet(y, z)) != l.meet(l.join(x, y), z)
        })
    }

    pub fn is_modular(&self) -> bool {
        self.modular_violation().is_none()
    }

    /// Non-empty, down-closed and join-closed.
    pub fn is_ideal(&self, set: ElemSet) -> bool {
        if set.is_empty() || !set.is_subset(self.all()) {
            return false;
        }
        for x in set {
            if !self.down[x].is_subset(set) {
                return false;
            }
            for y in set {
                if !set.contains(self.join(x, y)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn ideal(&self, set: ElemSet) -> Option<Ideal> {
        self.is_ideal(set).then_some(Ideal { members: set })
    }

    /// `[0, q]`.
    pub fn principal_ideal(&self, q: usize) -> Result<Ideal> {
        self.check_index(q)?;
        Ok(Ideal {
            members: self.down[q],
        })
    }

    pub fn format_set(&self, set: ElemSet) -> String {
        let items: Vec<&str> = set.iter().map(|x| self.name(x)).collect();
        format!("{{{}}}", items.join(","))
    }

    /// The sublattice induced by `keep` (which must contain bottom and top),
    /// if the induced order is again a lattice. Returns the lattice and the
    /// old-to-new index map.
    pub fn induced(&self, keep: ElemSet) -> Option<(Lattice, Vec<Option<usize>>)> {
        let old: Vec<usize> = keep.to_vec();
        let mut map = vec![None; self.len()];
        for (new, &o) in old.iter().enumerate() {
            map[o] = Some(new);
        }
        let names = old.iter().map(|&o| self.names[o].clone()).collect();
        let mut pairs = Vec::new();
        for (i, &x) in old.iter().enumerate() {
            for (j, &y) in old.iter().enumerate() {
                if i != j && self.leq(x, y) {
                    pairs.push((i, j));
                }
            }
        }
        Lattice::from_index_pairs(names, &pairs)
            .ok()
            .map(|l| (l, map))
    }
}

fn find_triple(
    l: &Lattice,
    set: ElemSet,
    bad: impl Fn(&Lattice, usize, usize, usize) -> bool,
) -> Option<Triple> {
    for x in set {
        for y in set {
            for z in set {
                if bad(l, x, y, z) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// An ideal of a lattice, stored as its member set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ideal {
    members: ElemSet,
}

impl Ideal {
    /// Wraps a member set without validation; quasimodule construction
    /// re-checks it against the scalar lattice.
    pub fn from_members(members: ElemSet) -> Ideal {
        Ideal { members }
    }

    pub fn members(&self) -> ElemSet {
        self.members
    }

    /// The generator `q` when the ideal is `[0, q]`.
    pub fn generator(&self, lattice: &Lattice) -> Option<usize> {
        let q = lattice.join_all(self.members);
        (lattice.down_set(q) == self.members).then_some(q)
    }
}

/// Cover pairs of the built-in lattices, by label.
fn builtin_spec(name: &str) -> Option<(Vec<String>, Vec<(String, String)>)> {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let p = |v: &[(&str, &str)]| {
        v.iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect::<Vec<_>>()
    };
    match name {
        "n5" => Some((
            s(&["0", "a", "b", "c", "1"]),
            p(&[("0", "a"), ("0", "b"), ("a", "c"), ("c", "1"), ("b", "1")]),
        )),
        "m3" => Some((
            s(&["0", "a", "b", "c", "1"]),
            p(&[
                ("0", "a"),
                ("0", "b"),
                ("0", "c"),
                ("a", "1"),
                ("b", "1"),
                ("c", "1"),
            ]),
        )),
        "fig5" => Some((
            s(&["0", "a", "b", "c", "d", "1"]),
            p(&[
                ("0", "a"),
                ("0", "b"),
                ("a", "c"),
                ("c", "d"),
                ("b", "d"),
                ("d", "1"),
            ]),
        )),
        _ => {
            if let Some(k) = name.strip_prefix("chain_") {
                let k: usize = k.parse().ok()?;
                if k == 0 || k > 64 {
                    return None;
                }
                let names: Vec<String> = (0..k).map(|i| i.to_string()).collect();
                let pairs = (1..k)
                    .map(|i| (names[i - 1].clone(), names[i].clone()))
                    .collect();
                Some((names, pairs))
            } else if let Some(k) = name.strip_prefix("boolean_") {
                let k: usize = k.parse().ok()?;
                if k > 6 {
                    return None;
                }
                let label = |m: usize| {
                    if k == 0 {
                        "0".to_string()
                    } else {
                        (0..k)
                            .rev()
                            .map(|b| if m >> b & 1 == 1 { '1' } else { '0' })
                            .collect()
                    }
                };
                let names: Vec<String> = (0..1usize << k).map(label).collect();
                let mut pairs = Vec::new();
                for m in 0..1usize << k {
                    for b in 0..k {
                        if m >> b & 1 == 0 {
                            pairs.push((names[m].clone(), names[m | 1 << b].clone()));
                        }
                    }
                }
                Some((names, pairs))
            } else {
                None
            }
        }
    }
}

/// Built-in lattices: `n5`, `m3`, `fig5`, `chain_k`, `boolean_k`.
///
/// N5 and M3 use the labels `0 a b c 1`; in N5 the chain is `0 < a < c < 1`
/// with `b` alone. `fig5` is N5 with a new top `1` above the old top `d`.
/// `chain_k` has labels `0..k-1`; `boolean_k` labels subsets by bit strings.
pub fn builtin(name: &str) -> Result<Lattice> {
    let (names, pairs) = builtin_spec(name).ok_or_else(|| Error::UnknownBuiltin(name.into()))?;
    Lattice::build(&names, &pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(l: &Lattice, s: &str) -> usize {
        l.index_of(s).unwrap()
    }

    #[test]
    fn n5_meet_join() {
        let l = builtin("n5").unwrap();
        let (a, b) = (idx(&l, "a"), idx(&l, "b"));
        assert_eq!(l.meet_join(a, b).unwrap(), (idx(&l, "0"), idx(&l, "1")));
        for x in 0..l.len() {
            assert_eq!(l.meet_join(x, x).unwrap(), (x, x));
        }
        assert!(matches!(
            l.meet_join(0, 9),
            Err(Error::IndexOutOfRange { index: 9, len: 5 })
        ));
    }

    #[test]
    fn m3_meet_join() {
        let l = builtin("m3").unwrap();
        let (a, c) = (idx(&l, "a"), idx(&l, "c"));
        assert_eq!(l.meet_join(a, c).unwrap(), (l.bottom(), l.top()));
    }

    #[test]
    fn one_element_lattice() {
        let l = Lattice::build(&["e"], &[("e", "e")]).unwrap();
        assert_eq!(l.bottom(), 0);
        assert_eq!(l.top(), 0);
        let c1 = builtin("chain_1").unwrap();
        assert_eq!(c1.len(), 1);
    }

    #[test]
    fn two_maximal_elements_is_not_bounded() {
        let err = Lattice::build(
            &["0", "x", "y", "u"],
            &[("0", "x"), ("0", "y"), ("x", "u")],
        )
        .unwrap_err();
        assert_eq!(err, Error::NotBounded("top"));
    }

    #[test]
    fn cycle_is_not_a_poset() {
        let err = Lattice::build(&["p", "q"], &[("p", "q"), ("q", "p")]).unwrap_err();
        assert_eq!(err, Error::NotAPoset("p".into(), "q".into()));
    }

    #[test]
    fn bounded_non_lattice_reports_pair() {
        // 0 < x,y < u,v < 1 : x and y have two minimal upper bounds.
        let err = Lattice::build(
            &["0", "x", "y", "u", "v", "1"],
            &[
                ("0", "x"),
                ("0", "y"),
                ("x", "u"),
                ("y", "u"),
                ("x", "v"),
                ("y", "v"),
                ("u", "1"),
                ("v", "1"),
            ],
        )
        .unwrap_err();
        assert_eq!(err, Error::NotALattice("x".into(), "y".into(), "join"));
    }

    #[test]
    fn duplicate_and_unknown_labels() {
        assert_eq!(
            Lattice::build(&["a", "a"], &[]).unwrap_err(),
            Error::DuplicateLabel("a".into())
        );
        assert_eq!(
            Lattice::build(&["a"], &[("a", "b")]).unwrap_err(),
            Error::UnknownLabel("b".into())
        );
    }

    #[test]
    fn classification_of_builtins() {
        let n5 = builtin("n5").unwrap();
        assert!(n5.is_zero_distributive());
        assert!(!n5.is_modular());
        assert!(!n5.is_distributive());

        let m3 = builtin("m3").unwrap();
        let w = m3.zero_distributive_violation().unwrap();
        assert_eq!(w, (idx(&m3, "a"), idx(&m3, "b"), idx(&m3, "c")));
        assert!(m3.is_modular());
        assert!(!m3.is_distributive());

        let b2 = builtin("boolean_2").unwrap();
        assert!(b2.is_distributive() && b2.is_modular());

        for k in 1..6 {
            assert!(builtin(&format!("chain_{k}")).unwrap().is_distributive());
        }

        let f5 = builtin("fig5").unwrap();
        assert!(f5.is_zero_distributive());
        assert!(!f5.is_modular());
    }

    #[test]
    fn principal_ideals() {
        let n5 = builtin("n5").unwrap();
        let a = idx(&n5, "a");
        assert_eq!(
            n5.principal_ideal(a).unwrap().members(),
            ElemSet::from_iter([0, a])
        );
        assert_eq!(n5.principal_ideal(n5.top()).unwrap().members(), n5.all());
        let f5 = builtin("fig5").unwrap();
        let b = idx(&f5, "b");
        assert_eq!(
            f5.principal_ideal(b).unwrap().members(),
            ElemSet::from_iter([0, b])
        );
        assert!(n5.principal_ideal(7).is_err());
    }

    #[test]
    fn ideal_membership() {
        let n5 = builtin("n5").unwrap();
        let s = |v: &[&str]| ElemSet::from_iter(v.iter().map(|x| idx(&n5, x)));
        assert!(n5.is_ideal(s(&["0", "a", "c"])));
        assert!(!n5.is_ideal(s(&["0", "a", "b"])));
        assert!(n5.is_ideal(s(&["0"])));
        assert!(!n5.is_ideal(ElemSet::EMPTY));
        assert!(!n5.is_ideal(s(&["a"])));
    }

    #[test]
    fn fig5_covers() {
        let f5 = builtin("fig5").unwrap();
        let covers: Vec<(String, String)> = f5
            .cover_pairs()
            .into_iter()
            .map(|(x, y)| (f5.name(x).to_string(), f5.name(y).to_string()))
            .collect();
        assert_eq!(covers.len(), 6);
        assert!(covers.contains(&("b".into(), "d".into())));
        assert!(covers.contains(&("d".into(), "1".into())));
    }

    #[test]
    fn unknown_builtin() {
        assert!(matches!(builtin("nope"), Err(Error::UnknownBuiltin(_))));
        assert!(builtin("chain_0").is_err());
        assert_eq!(builtin("boolean_3").unwrap().len(), 8);
    }

    #[test]
    fn induced_sublattice() {
        let f5 = builtin("fig5").unwrap();
        let mut keep = f5.all();
        keep.remove(idx(&f5, "1"));
        let (l, map) = f5.induced(keep).unwrap();
        assert_eq!(l.len(), 5);
        assert_eq!(map[idx(&f5, "1")], None);
        assert!(!l.is_modular());
    }
}
