//! Canonical quasimodules: finite products of ideals of one scalar lattice,
//! with componentwise join as addition and componentwise meet as the scalar
//! action.
//!
//! The carrier is enumerated once in row-major order of the factor member
//! lists (each sorted by element index, first factor most significant), so a
//! vector is identified with its carrier position and subsets of the carrier
//! are [`VecSet`]s.

use std::fmt;
use std::sync::Arc;

use crate::bitset::{ElemSet, VecSet};
use crate::error::{Error, Result};
use crate::lattice::{Ideal, Lattice};

pub const DEFAULT_CARRIER_CAP: usize = 1_000_000;

const NOT_MEMBER: u32 = u32::MAX;

/// Coordinates of a vector, one lattice element per factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector(pub Vec<usize>);

#[derive(Clone)]
pub struct CanonicalQm {
    lattice: Arc<Lattice>,
    factors: Vec<Ideal>,
    /// Sorted member list of each factor.
    members: Vec<Vec<usize>>,
    /// Element to position within each factor's member list.
    pos: Vec<Vec<u32>>,
    strides: Vec<usize>,
    coords: Vec<u8>,
    len: usize,
    zero: usize,
}

impl fmt::Debug for CanonicalQm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalQm({})", self.describe())
    }
}

impl CanonicalQm {
    pub fn new(lattice: Arc<Lattice>, factors: Vec<Ideal>) -> Result<CanonicalQm> {
        CanonicalQm::with_cap(lattice, factors, DEFAULT_CARRIER_CAP)
    }

    pub fn with_cap(lattice: Arc<Lattice>, factors: Vec<Ideal>, cap: usize) -> Result<CanonicalQm> {
        if factors.is_empty() {
            return Err(Error::NoFactors);
        }
        for (i, f) in factors.iter().enumerate() {
            if !lattice.is_ideal(f.members()) {
                return Err(Error::FactorNotIdeal(i));
            }
        }
        let size = factors
            .iter()
            .map(|f| f.members().len() as u128)
            .product::<u128>();
        if size > cap as u128 {
            return Err(Error::CarrierTooLarge { size, cap });
        }
        let len = size as usize;
        let k = factors.len();
        let members: Vec<Vec<usize>> = factors.iter().map(|f| f.members().to_vec()).collect();
        let pos = members
            .iter()
            .map(|m| {
                let mut p = vec![NOT_MEMBER; lattice.len()];
                for (i, &e) in m.iter().enumerate() {
                    p[e] = i as u32;
                }
                p
            })
            .collect();
        let mut strides = vec![1usize; k];
        for i in (0..k.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * members[i + 1].len();
        }
        let mut coords = vec![0u8; len * k];
        for v in 0..len {
            for i in 0..k {
                let p = (v / strides[i]) % members[i].len();
                coords[v * k + i] = members[i][p] as u8;
            }
        }
        let mut qm = CanonicalQm {
            lattice,
            factors,
            members,
            pos,
            strides,
            coords,
            len,
            zero: 0,
        };
        let bottom = qm.lattice.bottom();
        qm.zero = qm.index_from(|_| bottom);
        Ok(qm)
    }

    /// Convenience constructor from factor generators: `[0, q_i]` for each `q_i`.
    pub fn principal(lattice: Arc<Lattice>, tops: &[usize]) -> Result<CanonicalQm> {
        let factors = tops
            .iter()
            .map(|&q| lattice.principal_ideal(q))
            .collect::<Result<Vec<_>>>()?;
        CanonicalQm::new(lattice, factors)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn lattice_arc(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn factors(&self) -> &[Ideal] {
        &self.factors
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    /// Carrier size.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Position of `0⃗`; the first carrier vector whenever the lattice
    /// bottom has the smallest index.
    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn full(&self) -> VecSet {
        VecSet::full(self.len)
    }

    pub fn empty(&self) -> VecSet {
        VecSet::new(self.len)
    }

    pub fn zero_set(&self) -> VecSet {
        VecSet::from_indices(self.len, [self.zero()])
    }

    #[inline]
    pub fn coord(&self, v: usize, i: usize) -> usize {
        self.coords[v * self.factors.len() + i] as usize
    }

    fn coords_of(&self, v: usize) -> &[u8] {
        let k = self.factors.len();
        &self.coords[v * k..(v + 1) * k]
    }

    pub fn vector(&self, v: usize) -> Vector {
        Vector(self.coords_of(v).iter().map(|&c| c as usize).collect())
    }

    /// Carrier position of the vector with the given coordinates.
    pub fn index_of(&self, x: &Vector) -> Result<usize> {
        if x.0.len() != self.factors.len() {
            return Err(Error::NotInCarrier(format!("{:?}", x.0)));
        }
        let mut idx = 0;
        for (i, &e) in x.0.iter().enumerate() {
            let p = self.pos[i].get(e).copied().unwrap_or(NOT_MEMBER);
            if p == NOT_MEMBER {
                return Err(Error::NotInCarrier(format!("{:?}", x.0)));
            }
            idx += p as usize * self.strides[i];
        }
        Ok(idx)
    }

    #[inline]
    fn index_from(&self, f: impl Fn(usize) -> usize) -> usize {
        let mut idx = 0;
        for i in 0..self.factors.len() {
            idx += self.pos[i][f(i)] as usize * self.strides[i];
        }
        idx
    }

    /// Componentwise join.
    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        let (cx, cy) = (self.coords_of(x), self.coords_of(y));
        self.index_from(|i| self.lattice.join(cx[i] as usize, cy[i] as usize))
    }

    /// Componentwise meet with the scalar `c`.
    #[inline]
    pub fn smul(&self, c: usize, x: usize) -> usize {
        let cx = self.coords_of(x);
        self.index_from(|i| self.lattice.meet(c, cx[i] as usize))
    }

    pub fn add_vectors(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        let (x, y) = (self.index_of(x)?, self.index_of(y)?);
        Ok(self.vector(self.add(x, y)))
    }

    pub fn smul_vector(&self, c: usize, x: &Vector) -> Result<Vector> {
        if c >= self.lattice.len() {
            return Err(Error::IndexOutOfRange {
                index: c,
                len: self.lattice.len(),
            });
        }
        let x = self.index_of(x)?;
        Ok(self.vector(self.smul(c, x)))
    }

    /// `⋁_i (x_i ∧ y_i)`.
    pub fn inner_product(&self, x: usize, y: usize) -> usize {
        let (cx, cy) = (self.coords_of(x), self.coords_of(y));
        cx.iter().zip(cy).fold(self.lattice.bottom(), |acc, (&a, &b)| {
            self.lattice
                .join(acc, self.lattice.meet(a as usize, b as usize))
        })
    }

    /// Componentwise test `x_i ∧ y_i = 0` for all `i`.
    #[inline]
    pub fn orthogonal(&self, x: usize, y: usize) -> bool {
        let (cx, cy) = (self.coords_of(x), self.coords_of(y));
        let ortho = cx
            .iter()
            .zip(cy)
            .all(|(&a, &b)| self.lattice.orth(a as usize).contains(b as usize));
        debug_assert_eq!(ortho, self.inner_product(x, y) == self.lattice.bottom());
        ortho
    }

    pub fn inner_product_vectors(&self, x: &Vector, y: &Vector) -> Result<usize> {
        Ok(self.inner_product(self.index_of(x)?, self.index_of(y)?))
    }

    pub fn orthogonal_vectors(&self, x: &Vector, y: &Vector) -> Result<bool> {
        let (x, y) = (self.index_of(x)?, self.index_of(y)?);
        let by_components = self.orthogonal(x, y);
        let by_product = self.inner_product(x, y) == self.lattice.bottom();
        assert_eq!(by_components, by_product, "orthogonality routes disagree");
        Ok(by_components)
    }

    /// The vectors `b_i` carrying `q_i` in position `i` and `0` elsewhere,
    /// for a quasimodule whose factors are all principal ideals `[0, q_i]`.
    pub fn standard_basis(&self) -> Result<Vec<usize>> {
        let bottom = self.lattice.bottom();
        let mut tops = Vec::with_capacity(self.factors.len());
        for (i, f) in self.factors.iter().enumerate() {
            tops.push(f.generator(&self.lattice).ok_or(Error::FactorNotPrincipal(i))?);
        }
        Ok((0..self.factors.len())
            .map(|i| self.index_from(|j| if j == i { tops[i] } else { bottom }))
            .collect())
    }

    /// `p_i(S)`.
    pub fn project(&self, set: &VecSet, i: usize) -> Result<ElemSet> {
        if i >= self.factors.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.factors.len(),
            });
        }
        Ok(ElemSet::from_iter(set.iter().map(|v| self.coord(v, i))))
    }

    /// The product `∏ sets[i]` intersected with the carrier.
    pub fn product(&self, sets: &[ElemSet]) -> VecSet {
        assert_eq!(sets.len(), self.factors.len());
        let mut out = self.empty();
        for v in 0..self.len {
            if (0..sets.len()).all(|i| sets[i].contains(self.coord(v, i))) {
                out.insert(v);
            }
        }
        out
    }

    /// The one-factor canonical quasimodule on factor `i`.
    pub fn factor_qm(&self, i: usize) -> CanonicalQm {
        CanonicalQm::new(self.lattice.clone(), vec![self.factors[i]])
            .expect("a factor of a valid quasimodule is a valid factor")
    }

    /// The members of factor `i` in index order.
    pub fn factor_members(&self, i: usize) -> &[usize] {
        &self.members[i]
    }

    /// First factor that is not 0-distributive as a sublattice.
    pub fn non_zero_distributive_factor(&self) -> Option<usize> {
        (0..self.factors.len()).find(|&i| {
            self.lattice
                .zero_distributive_violation_in(self.factors[i].members())
                .is_some()
        })
    }

    pub fn factors_zero_distributive(&self) -> bool {
        self.non_zero_distributive_factor().is_none()
    }

    pub fn format_vector(&self, v: usize) -> String {
        let parts: Vec<&str> = self
            .coords_of(v)
            .iter()
            .map(|&c| self.lattice.name(c as usize))
            .collect();
        format!("({})", parts.join(","))
    }

    pub fn format_set(&self, set: &VecSet) -> String {
        let parts: Vec<String> = set.iter().map(|v| self.format_vector(v)).collect();
        format!("{{{}}}", parts.join(","))
    }

    /// Parses `(x,y,..)` with element labels; a single factor also accepts a
    /// bare label.
    pub fn parse_vector(&self, text: &str) -> Result<usize> {
        let t = text.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .unwrap_or(t);
        let coords = inner
            .split(',')
            .map(|s| self.lattice.index_of(s.trim()))
            .collect::<Result<Vec<_>>>()?;
        self.index_of(&Vector(coords))
    }

    pub fn parse_set(&self, items: &[&str]) -> Result<VecSet> {
        let mut s = self.empty();
        for it in items {
            s.insert(self.parse_vector(it)?);
        }
        Ok(s)
    }

    /// Short description such as `[0,1] x [0,a]`.
    pub fn describe(&self) -> String {
        self.factors
            .iter()
            .map(|f| match f.generator(&self.lattice) {
                Some(q) => format!("[0,{}]", self.lattice.name(q)),
                None => self.lattice.format_set(f.members()),
            })
            .collect::<Vec<_>>()
            .join(" x ")
    }

    /// Materialized operation tables.
    pub fn to_raw(&self) -> RawQm {
        let m = self.len;
        let n = self.lattice.len();
        let mut add = vec![0; m * m];
        for x in 0..m {
            for y in 0..m {
                add[x * m + y] = self.add(x, y);
            }
        }
        let mut smul = vec![0; n * m];
        for c in 0..n {
            for x in 0..m {
                smul[c * m + x] = self.smul(c, x);
            }
        }
        RawQm {
            lattice: self.lattice.clone(),
            size: m,
            add,
            smul,
            zero: self.zero(),
        }
    }
}

/// Table-given quasimodule data over a lattice, to be checked by
/// [`verify_axioms`].
#[derive(Clone, Debug)]
pub struct RawQm {
    pub lattice: Arc<Lattice>,
    pub size: usize,
    /// `size × size`, row-major.
    pub add: Vec<usize>,
    /// `|L| × size`, row `c` holds `c · x`.
    pub smul: Vec<usize>,
    pub zero: usize,
}

/// Anything offering the quasimodule operations on indices.
pub trait QuasimoduleOps {
    fn scalars(&self) -> &Lattice;
    fn size(&self) -> usize;
    fn zero_vec(&self) -> usize;
    fn plus(&self, x: usize, y: usize) -> usize;
    fn scale(&self, c: usize, x: usize) -> usize;
}

impl QuasimoduleOps for RawQm {
    fn scalars(&self) -> &Lattice {
        &self.lattice
    }
    fn size(&self) -> usize {
        self.size
    }
    fn zero_vec(&self) -> usize {
        self.zero
    }
    fn plus(&self, x: usize, y: usize) -> usize {
        self.add[x * self.size + y]
    }
    fn scale(&self, c: usize, x: usize) -> usize {
        self.smul[c * self.size + x]
    }
}

impl QuasimoduleOps for CanonicalQm {
    fn scalars(&self) -> &Lattice {
        &self.lattice
    }
    fn size(&self) -> usize {
        self.len
    }
    fn zero_vec(&self) -> usize {
        self.zero()
    }
    fn plus(&self, x: usize, y: usize) -> usize {
        self.add(x, y)
    }
    fn scale(&self, c: usize, x: usize) -> usize {
        self.smul(c, x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Exhaustive check of the quasimodule axioms: commutative monoid, the
/// scalar action landing in the carrier, `a(bx) = (a∧b)x`, `0x = 0⃗` and
/// `1x = x`.
pub fn verify_axioms<M: QuasimoduleOps + ?Sized>(qm: &M) -> AxiomReport {
    let l = qm.scalars();
    let m = qm.size();
    let n = l.len();
    let zero = qm.zero_vec();
    let mut report = AxiomReport::default();
    let mut push = |axiom, witness: Option<String>| {
        report.checks.push(AxiomCheck {
            axiom,
            passed: witness.is_none(),
            witness,
        })
    };

    let in_range = (0..m)
        .flat_map(|x| (0..m).map(move |y| (x, y)))
        .find(|&(x, y)| qm.plus(x, y) >= m)
        .map(|(x, y)| format!("{x} + {y} = {} outside carrier", qm.plus(x, y)));
    let scale_range = (0..n)
        .flat_map(|c| (0..m).map(move |x| (c, x)))
        .find(|&(c, x)| qm.scale(c, x) >= m)
        .map(|(c, x)| format!("{} · {x} outside carrier", l.name(c)));
    let closed = in_range.is_none() && scale_range.is_none() && zero < m;
    push("ii.closure", in_range.or(scale_range).or_else(|| {
        (zero >= m).then(|| format!("zero index {zero} outside carrier"))
    }));
    if !closed {
        return report;
    }

    push(
        "i.commutative",
        (0..m)
            .flat_map(|x| (0..m).map(move |y| (x, y)))
            .find(|&(x, y)| qm.plus(x, y) != qm.plus(y, x))
            .map(|(x, y)| format!("{x} + {y} != {y} + {x}")),
    );
    let mut assoc = None;
    'outer: for x in 0..m {
        for y in 0..m {
            let xy = qm.plus(x, y);
            for z in 0..m {
                if qm.plus(xy, z) != qm.plus(x, qm.plus(y, z)) {
                    assoc = Some(format!("({x} + {y}) + {z} != {x} + ({y} + {z})"));
                    break 'outer;
                }
            }
        }
    }
    push("i.associative", assoc);
    push(
        "i.identity",
        (0..m)
            .find(|&x| qm.plus(x, zero) != x || qm.plus(zero, x) != x)
            .map(|x| format!("{x} + 0 != {x}")),
    );
    let mut compat = None;
    'compat: for a in 0..n {
        for b in 0..n {
            let ab = l.meet(a, b);
            for x in 0..m {
                if qm.scale(a, qm.scale(b, x)) != qm.scale(ab, x) {
                    compat = Some(format!(
                        "{}({} · {x}) != ({} ∧ {}) · {x}",
                        l.name(a),
                        l.name(b),
                        l.name(a),
                        l.name(b)
                    ));
                    break 'compat;
                }
            }
        }
    }
    push("iii.scalar-compat", compat);
    push(
        "iv.zero",
        (0..m)
            .find(|&x| qm.scale(l.bottom(), x) != zero)
            .map(|x| format!("0 · {x} != 0⃗")),
    );
    push(
        "iv.one",
        (0..m)
            .find(|&x| qm.scale(l.top(), x) != x)
            .map(|x| format!("1 · {x} != {x}")),
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::builtin;

    fn ex1() -> CanonicalQm {
        let l = Arc::new(builtin("n5").unwrap());
        let a = l.index_of("a").unwrap();
        CanonicalQm::principal(l.clone(), &[l.top(), a]).unwrap()
    }

    fn v(q: &CanonicalQm, s: &str) -> usize {
        q.parse_vector(s).unwrap()
    }

    #[test]
    fn ex1_carrier_layout() {
        let q = ex1();
        assert_eq!(q.len(), 10);
        let listed: Vec<String> = (0..q.len()).map(|x| q.format_vector(x)).collect();
        assert_eq!(
            listed,
            [
                "(0,0)", "(0,a)", "(a,0)", "(a,a)", "(b,0)", "(b,a)", "(c,0)", "(c,a)", "(1,0)",
                "(1,a)"
            ]
        );
        assert_eq!(q.format_vector(q.zero()), "(0,0)");
    }

    #[test]
    fn addition_and_scaling() {
        let q = ex1();
        assert_eq!(q.add(v(&q, "(a,0)"), v(&q, "(b,0)")), v(&q, "(1,0)"));
        for x in 0..q.len() {
            assert_eq!(q.add(x, q.zero()), x);
        }
        let one0 = v(&q, "(1,0)");
        for c in 0..q.lattice().len() {
            let expected = q.index_of(&Vector(vec![c, 0])).unwrap();
            assert_eq!(q.smul(c, one0), expected);
        }
        let bad = Vector(vec![q.lattice().index_of("b").unwrap(), q.lattice().top()]);
        assert!(matches!(
            q.add_vectors(&bad, &q.vector(0)),
            Err(Error::NotInCarrier(_))
        ));
    }

    #[test]
    fn inner_products() {
        let q = ex1();
        let l = q.lattice();
        let a = l.index_of("a").unwrap();
        assert_eq!(q.inner_product(v(&q, "(a,0)"), v(&q, "(b,0)")), l.bottom());
        assert_eq!(q.inner_product(v(&q, "(1,0)"), v(&q, "(a,0)")), a);
        for x in 0..q.len() {
            assert_eq!(q.inner_product(x, q.zero()), l.bottom());
            assert!(q.orthogonal(x, q.zero()));
        }
        assert!(!q
            .orthogonal_vectors(&q.vector(v(&q, "(1,0)")), &q.vector(v(&q, "(a,0)")))
            .unwrap());
    }

    #[test]
    fn m3_orthogonality() {
        let l = Arc::new(builtin("m3").unwrap());
        let a = l.index_of("a").unwrap();
        let q = CanonicalQm::principal(l.clone(), &[l.top(), a]).unwrap();
        assert!(q.orthogonal(v(&q, "(b,0)"), v(&q, "(a,0)")));
        assert!(!q.orthogonal(v(&q, "(1,0)"), v(&q, "(a,0)")));
    }

    #[test]
    fn canonical_constructions_satisfy_axioms() {
        for name in ["n5", "m3", "fig5", "boolean_2", "chain_3"] {
            let l = Arc::new(builtin(name).unwrap());
            for q in 0..l.len() {
                let qm = CanonicalQm::principal(l.clone(), &[l.top(), q]).unwrap();
                let report = verify_axioms(&qm);
                assert!(report.all_passed(), "{name}: {report:?}");
                assert!(verify_axioms(&qm.to_raw()).all_passed());
            }
        }
        let l = Arc::new(builtin("n5").unwrap());
        let trivial = CanonicalQm::principal(l.clone(), &[l.bottom()]).unwrap();
        assert_eq!(trivial.len(), 1);
        assert!(verify_axioms(&trivial).all_passed());
    }

    #[test]
    fn non_commutative_table_is_caught() {
        let mut raw = ex1().to_raw();
        let m = raw.size;
        // make 2 + 4 differ from 4 + 2
        raw.add[2 * m + 4] = 2;
        let report = verify_axioms(&raw);
        let failed: Vec<_> = report.failed().map(|c| c.axiom).collect();
        assert!(failed.contains(&"i.commutative"));
        assert!(report
            .checks
            .iter()
            .find(|c| c.axiom == "i.commutative")
            .unwrap()
            .witness
            .is_some());
    }

    #[test]
    fn out_of_range_table_is_caught() {
        let mut raw = ex1().to_raw();
        raw.smul[3] = 99;
        let report = verify_axioms(&raw);
        assert!(!report.all_passed());
        assert_eq!(report.checks[0].axiom, "ii.closure");
    }

    #[test]
    fn standard_bases() {
        let q = ex1();
        let basis: Vec<String> = q
            .standard_basis()
            .unwrap()
            .into_iter()
            .map(|b| q.format_vector(b))
            .collect();
        assert_eq!(basis, ["(1,0)", "(0,a)"]);

        let l = Arc::new(builtin("m3").unwrap());
        let a = l.index_of("a").unwrap();
        let single = CanonicalQm::principal(l.clone(), &[a]).unwrap();
        assert_eq!(single.standard_basis().unwrap(), vec![1]);
        let aa = CanonicalQm::principal(l.clone(), &[a, a]).unwrap();
        let basis: Vec<String> = aa
            .standard_basis()
            .unwrap()
            .into_iter()
            .map(|b| aa.format_vector(b))
            .collect();
        assert_eq!(basis, ["(a,0)", "(0,a)"]);
    }

    #[test]
    fn projections() {
        let q = ex1();
        let l = q.lattice();
        let p8 = q.parse_set(&["(0,0)", "(a,0)", "(c,0)"]).unwrap();
        let names = |s: ElemSet| l.format_set(s);
        assert_eq!(names(q.project(&p8, 0).unwrap()), "{0,a,c}");
        let p12 = q.parse_set(&["(0,0)", "(0,a)", "(b,0)", "(b,a)"]).unwrap();
        assert_eq!(names(q.project(&p12, 1).unwrap()), "{0,a}");
        assert_eq!(names(q.project(&q.zero_set(), 1).unwrap()), "{0}");
        assert!(q.project(&p8, 2).is_err());
    }

    #[test]
    fn rejects_bad_factors() {
        let l = Arc::new(builtin("n5").unwrap());
        let not_ideal = Ideal::from_members(ElemSet::from_iter([0, 1, 2]));
        assert!(matches!(
            CanonicalQm::new(l.clone(), vec![l.principal_ideal(1).unwrap(), not_ideal]),
            Err(Error::FactorNotIdeal(1))
        ));
        assert!(matches!(
            CanonicalQm::new(l.clone(), vec![]),
            Err(Error::NoFactors)
        ));
        let big = vec![l.principal_ideal(l.top()).unwrap(); 9];
        assert!(matches!(
            CanonicalQm::new(l.clone(), big),
            Err(Error::CarrierTooLarge { .. })
        ));
    }
}
