//! The `Z^{1,n}` del Pezzo lattice: basis `(h, e_1, …, e_n)` with the
//! diagonal intersection form `(+1, −1, …, −1)` and canonical class
//! `K = −3h + e_1 + … + e_n`, for `0 ≤ n ≤ 8` (degree `K² = 9 − n ≥ 1`).
//!
//! Enumeration completeness. A class `c = a·h + Σ c_i e_i` with `c² = s`
//! and `c·K = k` satisfies `Σ c_i = −k − 3a` and `Σ c_i² = a² − s`. The
//! Cauchy–Schwarz inequality `(Σ c_i)² ≤ n · Σ c_i²` then bounds `a` by
//!
//! ```text
//! (9 − n)·a² + 6k·a + (k² + n·s) ≤ 0,
//! ```
//!
//! a parabola opening upwards for `n ≤ 8`, so `a` lies between its two real
//! roots `(−3k ± sqrt(n·(k² − (9 − n)·s))) / (9 − n)`. The search walks one
//! step beyond the integer window containing those roots and asserts that
//! the margin rows are empty, so a wrong bound can never silently truncate
//! the enumeration. Per coordinate, `c_i² ≤ Σ c_j²` needs no extra bound.

use std::fmt;

use crate::cone::PairingForm;
use crate::matrix::span_rank;
use crate::rat::RatVec;
use crate::{Error, Result};

/// The del Pezzo lattice `Z^{1,n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DPLattice {
    n: usize,
}

impl DPLattice {
    pub fn new(n: usize) -> Result<Self> {
        if n > 8 {
            return Err(Error::Input(format!(
                "del Pezzo lattice needs n ≤ 8 (degree ≥ 1), got {n}"
            )));
        }
        Ok(DPLattice { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Lattice rank `1 + n`.
    pub fn dim(&self) -> usize {
        self.n + 1
    }

    /// `K·K = 9 − n`.
    pub fn degree(&self) -> i64 {
        9 - self.n as i64
    }

    pub fn basis_labels(&self) -> Vec<String> {
        let mut labels = vec!["h".to_string()];
        labels.extend((1..=self.n).map(|i| format!("e{i}")));
        labels
    }

    /// `K = (−3, 1, …, 1)`.
    pub fn canonical_class(&self) -> Vec<i64> {
        let mut k = vec![1i64; self.dim()];
        k[0] = -3;
        k
    }

    /// The diagonal form `(+1, −1, …, −1)` as a self-pairing.
    pub fn pairing(&self) -> PairingForm {
        let d = self.dim();
        let mut m: Vec<Vec<i64>> = vec![vec![0; d]; d];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = if i == 0 { 1 } else { -1 };
        }
        PairingForm::from_ints(&m.iter().map(|r| r.as_slice()).collect::<Vec<_>>())
    }

    /// Intersection number of two integer classes.
    pub fn pair(&self, u: &[i64], v: &[i64]) -> i64 {
        debug_assert_eq!(u.len(), self.dim());
        debug_assert_eq!(v.len(), self.dim());
        u[0] * v[0] - u[1..].iter().zip(&v[1..]).map(|(a, b)| a * b).sum::<i64>()
    }

    pub fn k_degree(&self, c: &[i64]) -> i64 {
        self.pair(&self.canonical_class(), c)
    }

    pub fn self_intersection(&self, c: &[i64]) -> i64 {
        self.pair(c, c)
    }
}

/// Classification of an integer lattice class by self-intersection and
/// degree against `K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CurveKind {
    /// `c² = −1`, `c·K = −1`: an exceptional class.
    MinusOne,
    /// `c² = −2`, `c·K = 0`: a root.
    MinusTwo,
    Other,
}

/// An integer lattice class with its classification.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CurveClass {
    coords: Vec<i64>,
    kind: CurveKind,
}

impl CurveClass {
    pub fn classify(lattice: &DPLattice, coords: Vec<i64>) -> Result<Self> {
        if coords.len() != lattice.dim() {
            return Err(Error::Dimension(format!(
                "class has {} coordinates, lattice rank is {}",
                coords.len(),
                lattice.dim()
            )));
        }
        let sq = lattice.self_intersection(&coords);
        let kd = lattice.k_degree(&coords);
        let kind = match (sq, kd) {
            (-1, -1) => CurveKind::MinusOne,
            (-2, 0) => CurveKind::MinusTwo,
            _ => CurveKind::Other,
        };
        Ok(CurveClass { coords, kind })
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn to_ratvec(&self) -> RatVec {
        RatVec::from_ints(&self.coords)
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = Vec::new();
        let names: Vec<String> = std::iter::once("h".to_string())
            .chain((1..self.coords.len()).map(|i| format!("e{i}")))
            .collect();
        for (c, name) in self.coords.iter().zip(names.iter()) {
            match *c {
                0 => {}
                1 => terms.push(if terms.is_empty() {
                    name.clone()
                } else {
                    format!("+ {name}")
                }),
                -1 => terms.push(format!("- {name}")),
                c if c > 0 => terms.push(if terms.is_empty() {
                    format!("{c}{name}")
                } else {
                    format!("+ {c}{name}")
                }),
                c => terms.push(format!("- {}{name}", -c)),
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" "))
        }
    }
}

/// Integer square root by Newton iteration; exact, no floating point.
fn isqrt(v: i64) -> i64 {
    if v <= 0 {
        return 0;
    }
    let mut x = v;
    let mut y = (x + 1) / 2;
    while y < x {
        x = y;
        y = (x + v / x) / 2;
    }
    x
}

/// All integer classes with the given self-intersection and `K`-degree,
/// in lexicographic coordinate order. `extra_margin ≥ 1` widens the proven
/// `h`-coefficient window; solutions found in the widened margin trip an
/// assertion instead of being silently dropped or kept.
pub fn enumerate_classes(
    lattice: &DPLattice,
    self_int: i64,
    k_deg: i64,
    extra_margin: i64,
) -> Vec<CurveClass> {
    let n = lattice.n() as i64;
    let margin = extra_margin.max(1);
    let mut out: Vec<Vec<i64>> = Vec::new();
    if n == 0 {
        // no e-coordinates: a² = −self_int is required with −3a = k_deg
        for a in [-k_deg / 3] {
            if -3 * a == k_deg && a * a == self_int {
                out.push(vec![a]);
            }
        }
    } else {
        // window on a from the Cauchy–Schwarz parabola (module docs)
        let disc = n * (k_deg * k_deg - (9 - n) * self_int);
        if disc < 0 {
            return Vec::new();
        }
        let sq = isqrt(disc);
        let lo = (-3 * k_deg - sq).div_euclid(9 - n) - margin;
        let hi = (-3 * k_deg + sq).div_euclid(9 - n) + 1 + margin;
        for a in lo..=hi {
            let sum = -k_deg - 3 * a;
            let qsum = a * a - self_int;
            if qsum < 0 {
                continue;
            }
            let mut acc = vec![a];
            search_coords(n as usize, sum, qsum, &mut acc, &mut out);
        }
        // margin rows must be empty or the window derivation is wrong
        for sol in &out {
            let a = sol[0];
            assert!(
                (9 - n) * a * a + 6 * k_deg * a + (k_deg * k_deg + n * self_int) <= 0,
                "solution {sol:?} violates the proven enumeration window"
            );
        }
    }
    out.sort();
    out.dedup();
    out.into_iter()
        .map(|c| CurveClass::classify(lattice, c).expect("enumerated class has lattice rank"))
        .collect()
}

/// Depth-first search over `(c_1, …, c_n)` with `Σ c_i = sum` and
/// `Σ c_i² = qsum`, pruning with Cauchy–Schwarz on the remaining suffix.
fn search_coords(left: usize, sum: i64, qsum: i64, acc: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if left == 0 {
        if sum == 0 && qsum == 0 {
            out.push(acc.clone());
        }
        return;
    }
    if sum * sum > (left as i64) * qsum {
        return;
    }
    let lim = isqrt(qsum);
    for c in -lim..=lim {
        acc.push(c);
        search_coords(left - 1, sum - c, qsum - c * c, acc, out);
        acc.pop();
    }
}

/// All `(−1)`-classes (`c² = −1`, `c·K = −1`), canonical order. Empty for
/// `n = 0`.
pub fn enumerate_minus_one(lattice: &DPLattice) -> Vec<CurveClass> {
    enumerate_classes(lattice, -1, -1, 1)
}

/// All roots (`c² = −2`, `c·K = 0`), both signs, canonical order.
pub fn enumerate_minus_two(lattice: &DPLattice) -> Vec<CurveClass> {
    enumerate_classes(lattice, -2, 0, 1)
}

/// The reflection `x ↦ x + (x·r)·r` in a root `r` (`r² = −2`) as an integer
/// matrix. Reflections preserve the form and fix `K`.
pub fn reflection_in_root(lattice: &DPLattice, root: &CurveClass) -> Result<Vec<Vec<i64>>> {
    if root.kind() != CurveKind::MinusTwo {
        return Err(Error::Input(format!(
            "reflection needs a root, got {:?}",
            root.kind()
        )));
    }
    let d = lattice.dim();
    let r = root.coords();
    let mut m = vec![vec![0i64; d]; d];
    for j in 0..d {
        let mut e = vec![0i64; d];
        e[j] = 1;
        let coeff = lattice.pair(&e, r);
        for i in 0..d {
            m[i][j] = e[i] + coeff * r[i];
        }
    }
    Ok(m)
}

/// Simple roots `e_i − e_{i+1}` (for `i < n`) plus `h − e_1 − e_2 − e_3`
/// (when `n ≥ 3`); they generate the Weyl group of the lattice.
pub fn simple_roots(lattice: &DPLattice) -> Vec<CurveClass> {
    let n = lattice.n();
    let d = lattice.dim();
    let mut roots = Vec::new();
    for i in 1..n {
        let mut c = vec![0i64; d];
        c[i] = 1;
        c[i + 1] = -1;
        roots.push(CurveClass::classify(lattice, c).expect("e_i - e_j is a root"));
    }
    if n >= 3 {
        let mut c = vec![0i64; d];
        c[0] = 1;
        c[1] = -1;
        c[2] = -1;
        c[3] = -1;
        roots.push(CurveClass::classify(lattice, c).expect("h - e1 - e2 - e3 is a root"));
    }
    roots
}

/// Contracts a `(−1)`-class: changes basis so the class becomes `e_n` and
/// drops it, returning the lattice with `n − 1` exceptional classes and
/// degree one higher. Errors when the input is not a `(−1)`-class or is not
/// Weyl-equivalent to `e_n` (which happens exactly for `h − e_1 − e_2` at
/// `n = 2`, whose contraction leaves the even lattice of a quadric).
pub fn blow_down(lattice: &DPLattice, c: &CurveClass) -> Result<DPLattice> {
    blow_down_reduction(lattice, c).map(|_| DPLattice { n: lattice.n - 1 })
}

/// The sequence of Weyl moves carrying `c` to `e_n`: each step is either a
/// coordinate transposition or a reflection in `h − e_i − e_j − e_k`.
/// Returns the reduced history for inspection by tests.
pub fn blow_down_reduction(lattice: &DPLattice, c: &CurveClass) -> Result<Vec<CurveClass>> {
    if c.kind() != CurveKind::MinusOne {
        return Err(Error::Input(format!(
            "blow-down needs a (−1)-class, got {} of kind {:?}",
            c, c.kind()
        )));
    }
    let n = lattice.n();
    let mut cur = c.coords().to_vec();
    let mut history = vec![c.clone()];
    // Noether reduction: while the h-coefficient is positive, reflect in
    // h − e_i − e_j − e_k for the three most negative coordinates.
    let mut fuel = 200usize;
    while cur[0] != 0 {
        if n < 3 || fuel == 0 {
            return Err(Error::Input(format!(
                "{c} is not expressible as e_{n} in Z^{{1,{n}}}"
            )));
        }
        fuel -= 1;
        let mut idx: Vec<usize> = (1..=n).collect();
        idx.sort_by_key(|&i| cur[i]);
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        // the pairing of the class with the root h - e_i - e_j - e_k
        let drop = cur[0] + cur[i] + cur[j] + cur[k];
        if drop >= 0 {
            return Err(Error::Input(format!(
                "{c} is not expressible as e_{n} in Z^{{1,{n}}}"
            )));
        }
        cur[0] += drop;
        cur[i] -= drop;
        cur[j] -= drop;
        cur[k] -= drop;
        history.push(CurveClass::classify(lattice, cur.clone())?);
    }
    // now c = e_i for a single index with coefficient one
    let ones: Vec<usize> = (1..=n).filter(|&i| cur[i] != 0).collect();
    if ones.len() != 1 || cur[ones[0]] != 1 {
        return Err(Error::Input(format!(
            "{c} is not expressible as e_{n} in Z^{{1,{n}}}"
        )));
    }
    if ones[0] != n {
        cur.swap(ones[0], n);
        history.push(CurveClass::classify(lattice, cur)?);
    }
    Ok(history)
}

/// Rank of the span of a set of roots: the Picard-rank drop of the crepant
/// contraction of the corresponding `(−2)`-curves.
pub fn crepant_rank_drop(lattice: &DPLattice, roots: &[CurveClass]) -> Result<usize> {
    for r in roots {
        if r.kind() != CurveKind::MinusTwo {
            return Err(Error::Input(format!(
                "crepant contraction needs roots, got {} of kind {:?}",
                r,
                r.kind()
            )));
        }
        if r.coords().len() != lattice.dim() {
            return Err(Error::Dimension("root has wrong lattice rank".into()));
        }
    }
    let vecs: Vec<RatVec> = roots.iter().map(|r| r.to_ratvec()).collect();
    Ok(span_rank(&vecs, lattice.dim()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(n: usize, coords: &[i64]) -> CurveClass {
        CurveClass::classify(&DPLattice::new(n).unwrap(), coords.to_vec()).unwrap()
    }

    #[test]
    fn degree_bookkeeping() {
        for n in 0..=8 {
            let lat = DPLattice::new(n).unwrap();
            assert_eq!(lat.degree(), 9 - n as i64);
            let k = lat.canonical_class();
            assert_eq!(lat.pair(&k, &k), lat.degree());
        }
        assert!(DPLattice::new(9).is_err());
    }

    #[test]
    fn classification() {
        assert_eq!(class(2, &[0, 1, 0]).kind(), CurveKind::MinusOne);
        assert_eq!(class(2, &[1, -1, -1]).kind(), CurveKind::MinusOne);
        assert_eq!(class(2, &[0, 1, -1]).kind(), CurveKind::MinusTwo);
        assert_eq!(class(2, &[1, 0, 0]).kind(), CurveKind::Other);
    }

    #[test]
    fn minus_one_counts() {
        let expected = [0usize, 1, 3, 6, 10, 16, 27, 56, 240];
        for (n, &want) in expected.iter().enumerate() {
            let lat = DPLattice::new(n).unwrap();
            let classes = enumerate_minus_one(&lat);
            assert_eq!(classes.len(), want, "n = {n}");
            for c in &classes {
                assert_eq!(c.kind(), CurveKind::MinusOne);
            }
            // duplicate-free and canonically ordered
            let mut sorted = classes.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted, classes);
        }
    }

    #[test]
    fn root_counts() {
        let expected = [0usize, 0, 2, 8, 20, 40, 72, 126, 240];
        for (n, &want) in expected.iter().enumerate() {
            let lat = DPLattice::new(n).unwrap();
            let roots = enumerate_minus_two(&lat);
            assert_eq!(roots.len(), want, "n = {n}");
            for r in &roots {
                assert_eq!(r.kind(), CurveKind::MinusTwo);
                // both signs present
                let neg: Vec<i64> = r.coords().iter().map(|c| -c).collect();
                assert!(roots.iter().any(|o| o.coords() == neg));
            }
        }
    }

    #[test]
    fn enumeration_is_permutation_stable() {
        // swapping e_i and e_j maps each enumerated set to itself
        let lat = DPLattice::new(6).unwrap();
        for classes in [enumerate_minus_one(&lat), enumerate_minus_two(&lat)] {
            let mut swapped: Vec<Vec<i64>> = classes
                .iter()
                .map(|c| {
                    let mut v = c.coords().to_vec();
                    v.swap(1, 4);
                    v
                })
                .collect();
            swapped.sort();
            let original: Vec<Vec<i64>> = classes.iter().map(|c| c.coords().to_vec()).collect();
            assert_eq!(swapped, original);
        }
    }

    #[test]
    fn cremona_reflection_stability() {
        // the reflection in h - e1 - e2 - e3 maps each enumerated set to itself
        let lat = DPLattice::new(6).unwrap();
        let root = class(6, &[1, -1, -1, -1, 0, 0, 0]);
        let m = reflection_in_root(&lat, &root).unwrap();
        for classes in [enumerate_minus_one(&lat), enumerate_minus_two(&lat)] {
            let mut mapped: Vec<Vec<i64>> = classes
                .iter()
                .map(|c| {
                    (0..lat.dim())
                        .map(|i| {
                            (0..lat.dim()).map(|j| m[i][j] * c.coords()[j]).sum::<i64>()
                        })
                        .collect()
                })
                .collect();
            mapped.sort();
            let original: Vec<Vec<i64>> = classes.iter().map(|c| c.coords().to_vec()).collect();
            assert_eq!(mapped, original);
        }
    }

    #[test]
    fn blow_down_degrees() {
        let lat1 = DPLattice::new(1).unwrap();
        let down = blow_down(&lat1, &class(1, &[0, 1])).unwrap();
        assert_eq!(down.n(), 0);
        assert_eq!(down.degree(), 9);

        let lat6 = DPLattice::new(6).unwrap();
        let down = blow_down(&lat6, &class(6, &[1, -1, -1, 0, 0, 0, 0])).unwrap();
        assert_eq!(down.n(), 5);
        assert_eq!(down.degree(), 4);

        let lat2 = DPLattice::new(2).unwrap();
        let down = blow_down(&lat2, &class(2, &[0, 0, 1])).unwrap();
        assert_eq!(down.n(), 1);
        assert_eq!(down.degree(), 8);
    }

    #[test]
    fn blow_down_rejections() {
        let lat = DPLattice::new(3).unwrap();
        // not a (−1)-class
        assert!(blow_down(&lat, &class(3, &[1, 0, 0, 0])).is_err());
        // the n = 2 line contracts to the even quadric lattice, not Z^{1,1}
        let lat2 = DPLattice::new(2).unwrap();
        assert!(blow_down(&lat2, &class(2, &[1, -1, -1])).is_err());
    }

    #[test]
    fn blow_down_reduces_every_line() {
        // every (−1)-class on the degree-1 lattice reduces to e_8
        let lat = DPLattice::new(8).unwrap();
        for c in enumerate_minus_one(&lat) {
            let history = blow_down_reduction(&lat, &c).unwrap();
            let last = history.last().unwrap();
            assert_eq!(last.coords()[8], 1);
            assert_eq!(last.kind(), CurveKind::MinusOne);
        }
    }

    #[test]
    fn rank_drops() {
        let lat = DPLattice::new(3).unwrap();
        assert_eq!(crepant_rank_drop(&lat, &[]).unwrap(), 0);
        let r12 = class(3, &[0, 1, -1, 0]);
        let r23 = class(3, &[0, 0, 1, -1]);
        let r13 = class(3, &[0, 1, 0, -1]);
        assert_eq!(crepant_rank_drop(&lat, &[r12.clone(), r23.clone()]).unwrap(), 2);
        assert_eq!(crepant_rank_drop(&lat, &[r12, r23, r13]).unwrap(), 2);
        assert!(crepant_rank_drop(&lat, &[class(3, &[0, 1, 0, 0])]).is_err());
    }
}
