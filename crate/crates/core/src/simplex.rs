//! The simplex category Δ and the category Ξ of finite strict intervals.
//!
//! Arrows of Δ are [`MonotoneMap`]s. An arrow of Ξ is stored through its image
//! under the forgetful functor `u: Ξ → Δ`: a map `[n] → [k]` of Ξ becomes an
//! endpoint-preserving monotone map `[n+2] → [k+2]`, where positions `0` and
//! `k+2` are the white dots. Restricting to the black dots gives the bijection
//! `Ξ([n],[k]) ≅ Δ([n],[k+2])`.

use std::fmt;

use crate::error::{Error, Result};

/// A weakly increasing map `[m] → [n]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonotoneMap {
    tgt: usize,
    values: Vec<usize>,
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]->[{}]{:?}", self.src(), self.tgt, self.values)
    }
}

impl MonotoneMap {
    pub fn new(tgt: usize, values: Vec<usize>) -> Result<Self> {
        let ok = !values.is_empty()
            && values.iter().all(|&v| v <= tgt)
            && values.windows(2).all(|w| w[0] <= w[1]);
        if !ok {
            return Err(Error::NotMonotone { tgt, values });
        }
        Ok(MonotoneMap { tgt, values })
    }

    pub fn identity(n: usize) -> Self {
        MonotoneMap {
            tgt: n,
            values: (0..=n).collect(),
        }
    }

    /// The coface `δ_i : [n-1] → [n]`, which skips `i`.
    pub fn coface(n: usize, i: usize) -> Self {
        assert!(n >= 1 && i <= n, "coface δ_{i} into [{n}]");
        let values = (0..n).map(|j| if j < i { j } else { j + 1 }).collect();
        MonotoneMap { tgt: n, values }
    }

    /// The codegeneracy `σ_j : [n+1] → [n]`, which hits `j` twice.
    pub fn codegeneracy(n: usize, j: usize) -> Self {
        assert!(j <= n, "codegeneracy σ_{j} onto [{n}]");
        let values = (0..=n + 1)
            .map(|i| if i <= j { i } else { i - 1 })
            .collect();
        MonotoneMap { tgt: n, values }
    }

    /// The free map `[m] → [n]`, `i ↦ i + offset`.
    pub fn shift(m: usize, offset: usize, n: usize) -> Result<Self> {
        MonotoneMap::new(n, (0..=m).map(|i| i + offset).collect())
    }

    /// The map `[1] → [n]` picking out the edge `lo → hi`.
    pub fn edge(lo: usize, hi: usize, n: usize) -> Result<Self> {
        MonotoneMap::new(n, vec![lo, hi])
    }

    pub fn src(&self) -> usize {
        self.values.len() - 1
    }

    pub fn tgt(&self) -> usize {
        self.tgt
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    /// Diagrammatic composite: first `self`, then `next`.
    pub fn then(&self, next: &MonotoneMap) -> Result<MonotoneMap> {
        if self.tgt != next.src() {
            return Err(Error::DegreeMismatch {
                expected: next.src() as isize,
                found: self.tgt as isize,
            });
        }
        Ok(MonotoneMap {
            tgt: next.tgt,
            values: self.values.iter().map(|&v| next.values[v]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.src() == self.tgt && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_generic(&self) -> bool {
        self.values[0] == 0 && self.values[self.src()] == self.tgt
    }

    pub fn is_free(&self) -> bool {
        self.values.windows(2).all(|w| w[1] == w[0] + 1)
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0
            && self.values[self.src()] == self.tgt
            && self.values.windows(2).all(|w| w[1] <= w[0] + 1)
    }

    /// Values of the target not hit by the map, ascending.
    pub fn missed(&self) -> Vec<usize> {
        let mut hit = vec![false; self.tgt + 1];
        for &v in &self.values {
            hit[v] = true;
        }
        (0..=self.tgt).filter(|&v| !hit[v]).collect()
    }

    /// Positions `j` with `a(j) = a(j+1)`, ascending.
    pub fn repeats(&self) -> Vec<usize> {
        (0..self.src())
            .filter(|&j| self.values[j] == self.values[j + 1])
            .collect()
    }

    /// The unique factorisation as a surjection followed by an injection.
    pub fn epi_mono(&self) -> (MonotoneMap, MonotoneMap) {
        let mut image: Vec<usize> = self.values.clone();
        image.dedup();
        let r = image.len() - 1;
        let mut epi = Vec::with_capacity(self.values.len());
        let mut pos = 0;
        for &v in &self.values {
            while image[pos] != v {
                pos += 1;
            }
            epi.push(pos);
        }
        (
            MonotoneMap {
                tgt: r,
                values: epi,
            },
            MonotoneMap {
                tgt: self.tgt,
                values: image,
            },
        )
    }

    /// The unique factorisation as a generic map followed by a free map.
    pub fn generic_free_factor(&self) -> (MonotoneMap, MonotoneMap) {
        let lo = self.values[0];
        let hi = self.values[self.src()];
        let generic = MonotoneMap {
            tgt: hi - lo,
            values: self.values.iter().map(|&v| v - lo).collect(),
        };
        let free = MonotoneMap {
            tgt: self.tgt,
            values: (lo..=hi).collect(),
        };
        (generic, free)
    }

    /// Every monotone map `[m] → [n]`, in lexicographic order.
    pub fn all(m: usize, n: usize) -> Vec<MonotoneMap> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(m + 1);
        fn rec(m: usize, n: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<MonotoneMap>) {
            if cur.len() == m + 1 {
                out.push(MonotoneMap {
                    tgt: n,
                    values: cur.clone(),
                });
                return;
            }
            for v in lo..=n {
                cur.push(v);
                rec(m, n, v, cur, out);
                cur.pop();
            }
        }
        rec(m, n, 0, &mut cur, &mut out);
        out
    }
}

/// Diagrammatic composite `f` then `g`.
pub fn compose(f: &MonotoneMap, g: &MonotoneMap) -> Result<MonotoneMap> {
    f.then(g)
}

/// Pushout of a generic map `g` along a free map `f` with common source.
///
/// Returns `(f', g')` where `f'` is free out of `g.tgt` and `g'` is generic
/// out of `f.tgt`, with `g ; f' = f ; g'`.
pub fn pushout_generic_free(
    g: &MonotoneMap,
    f: &MonotoneMap,
) -> Result<(MonotoneMap, MonotoneMap)> {
    if g.src() != f.src() {
        return Err(Error::DegreeMismatch {
            expected: g.src() as isize,
            found: f.src() as isize,
        });
    }
    if !g.is_generic() {
        return Err(Error::precondition(format!("{g:?} is not generic")));
    }
    if !f.is_free() {
        return Err(Error::precondition(format!("{f:?} is not free")));
    }
    let m = g.src();
    let n = g.tgt();
    let p = f.tgt();
    let below = f.apply(0);
    let above = p - m - below;
    let q = n + below + above;
    let f_new = MonotoneMap::shift(n, below, q)?;
    let values = (0..=p)
        .map(|i| {
            if i < below {
                i
            } else if i <= below + m {
                below + g.apply(i - below)
            } else {
                i - m + n
            }
        })
        .collect();
    let g_new = MonotoneMap::new(q, values)?;
    Ok((f_new, g_new))
}

/// Generating generic maps out of `[n]`: inner cofaces `[n] → [n+1]` and
/// codegeneracies `[n] → [n-1]`.
pub fn generic_generators(n: usize) -> Vec<MonotoneMap> {
    let mut out: Vec<MonotoneMap> = (1..=n).map(|i| MonotoneMap::coface(n + 1, i)).collect();
    if n >= 1 {
        out.extend((0..n).map(|j| MonotoneMap::codegeneracy(n - 1, j)));
    }
    out
}

/// Generating free maps out of `[n]`: the outer cofaces `δ_0` and `δ_{n+1}`.
pub fn free_generators(n: usize) -> Vec<MonotoneMap> {
    vec![
        MonotoneMap::coface(n + 1, 0),
        MonotoneMap::coface(n + 1, n + 1),
    ]
}

/// An arrow `[src] → [tgt]` of Ξ (degrees `≥ -1`), stored as its
/// endpoint-preserving representative `[src+2] → [tgt+2]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XiMap {
    rep: MonotoneMap,
}

impl fmt::Debug for XiMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Ξ[{}]->[{}]{:?}",
            self.src(),
            self.tgt(),
            self.rep.values
        )
    }
}

impl XiMap {
    pub fn from_rep(rep: MonotoneMap) -> Result<Self> {
        if rep.src() < 1 || rep.tgt() < 1 || !rep.is_generic() {
            return Err(Error::precondition(format!(
                "{rep:?} does not preserve the white endpoints"
            )));
        }
        Ok(XiMap { rep })
    }

    /// The map `[n] → [k]` corresponding to `a: [n] → [k+2]` under
    /// `Ξ([n],[k]) ≅ Δ([n],[k+2])`.
    pub fn from_adjunct(k: isize, a: &MonotoneMap) -> Result<Self> {
        let top = k + 2;
        if top < 1 || a.tgt() as isize != top {
            return Err(Error::DegreeMismatch {
                expected: top,
                found: a.tgt() as isize,
            });
        }
        let mut values = Vec::with_capacity(a.src() + 3);
        values.push(0);
        values.extend_from_slice(a.values());
        values.push(top as usize);
        XiMap::from_rep(MonotoneMap::new(top as usize, values)?)
    }

    /// The unique map out of the initial object `[-1]`.
    pub fn from_initial(k: isize) -> Result<Self> {
        if k < -1 {
            return Err(Error::precondition("Ξ degrees start at -1"));
        }
        XiMap::from_rep(MonotoneMap::edge(0, (k + 2) as usize, (k + 2) as usize)?)
    }

    pub fn identity(k: isize) -> Self {
        XiMap {
            rep: MonotoneMap::identity((k + 2) as usize),
        }
    }

    pub fn src(&self) -> isize {
        self.rep.src() as isize - 2
    }

    pub fn tgt(&self) -> isize {
        self.rep.tgt() as isize - 2
    }

    pub fn rep(&self) -> &MonotoneMap {
        &self.rep
    }

    /// Restriction to the black dots; `None` for maps out of `[-1]`.
    pub fn adjunct(&self) -> Option<MonotoneMap> {
        let m = self.rep.src();
        if m < 2 {
            return None;
        }
        Some(MonotoneMap {
            tgt: self.rep.tgt(),
            values: self.rep.values[1..m].to_vec(),
        })
    }

    pub fn then(&self, next: &XiMap) -> Result<XiMap> {
        Ok(XiMap {
            rep: self.rep.then(&next.rep)?,
        })
    }

    /// Every Ξ-map `[n] → [k]`.
    pub fn all(n: isize, k: isize) -> Vec<XiMap> {
        MonotoneMap::all((n + 2) as usize, (k + 2) as usize)
            .into_iter()
            .filter(MonotoneMap::is_generic)
            .map(|rep| XiMap { rep })
            .collect()
    }
}

/// The image of a Δ-map under the left adjoint `i: Δ → Ξ`, which adjoins a
/// white dot at each end.
pub fn delta_to_xi_free(a: &MonotoneMap) -> XiMap {
    let mut values = Vec::with_capacity(a.src() + 3);
    values.push(0);
    values.extend(a.values().iter().map(|v| v + 1));
    values.push(a.tgt() + 2);
    XiMap {
        rep: MonotoneMap {
            tgt: a.tgt() + 2,
            values,
        },
    }
}

/// The Δ-representative of a Ξ-map.
pub fn xi_to_delta(x: &XiMap) -> MonotoneMap {
    x.rep.clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mm(tgt: usize, v: &[usize]) -> MonotoneMap {
        MonotoneMap::new(tgt, v.to_vec()).unwrap()
    }

    #[test]
    fn compose_examples() {
        let id2 = MonotoneMap::identity(2);
        assert_eq!(compose(&id2, &id2).unwrap(), id2);

        let d1 = mm(2, &[0, 2]);
        let s0 = MonotoneMap::codegeneracy(1, 0);
        assert_eq!(compose(&d1, &s0).unwrap(), mm(1, &[0, 1]));

        let d0a = MonotoneMap::coface(1, 0);
        let d0b = MonotoneMap::coface(2, 0);
        assert_eq!(compose(&d0a, &d0b).unwrap(), mm(2, &[2]));

        assert!(matches!(
            compose(&d0b, &d0a),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn rejects_non_monotone() {
        assert!(MonotoneMap::new(2, vec![1, 0]).is_err());
        assert!(MonotoneMap::new(1, vec![0, 2]).is_err());
    }

    #[test]
    fn generic_and_free_examples() {
        let s0 = MonotoneMap::codegeneracy(0, 0);
        assert!(s0.is_generic() && !s0.is_free());
        let d0 = MonotoneMap::coface(2, 0);
        assert_eq!(d0.values(), &[1, 2]);
        assert!(!d0.is_generic() && d0.is_free());
        for n in 0..4 {
            let id = MonotoneMap::identity(n);
            assert!(id.is_generic() && id.is_free());
        }
    }

    /// Enumerates every factorisation through an intermediate object and
    /// keeps the generic-then-free ones.
    fn brute_factorisations(a: &MonotoneMap) -> Vec<(MonotoneMap, MonotoneMap)> {
        let mut out = Vec::new();
        for k in 0..=a.tgt() {
            for g in MonotoneMap::all(a.src(), k) {
                if !g.is_generic() {
                    continue;
                }
                for f in MonotoneMap::all(k, a.tgt()) {
                    if f.is_free() && g.then(&f).unwrap() == *a {
                        out.push((g.clone(), f));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn generic_free_factor_examples() {
        let a = mm(3, &[1, 3]);
        let (g, f) = a.generic_free_factor();
        assert_eq!(g, mm(2, &[0, 2]));
        assert_eq!(f, mm(3, &[1, 2, 3]));
        assert_eq!(brute_factorisations(&a), vec![(g, f)]);

        let id = MonotoneMap::identity(2);
        assert_eq!(id.generic_free_factor(), (id.clone(), id.clone()));

        let a = mm(2, &[1]);
        let (g, f) = a.generic_free_factor();
        assert_eq!(g, MonotoneMap::identity(0));
        assert_eq!(f, mm(2, &[1]));
        assert_eq!(brute_factorisations(&a), vec![(g, f)]);
    }

    #[test]
    fn factorisation_is_unique_exhaustively() {
        for m in 0..=6 {
            for n in 0..=6 {
                for a in MonotoneMap::all(m, n) {
                    let (g, f) = a.generic_free_factor();
                    assert!(g.is_generic() && f.is_free());
                    assert_eq!(g.then(&f).unwrap(), a);
                    if m <= 3 && n <= 4 {
                        assert_eq!(brute_factorisations(&a), vec![(g, f)]);
                    }
                }
            }
        }
    }

    #[test]
    fn orthogonality_unique_fillers() {
        let cap = 4;
        for a in 0..=cap {
            for b in 0..=cap {
                for g in MonotoneMap::all(a, b)
                    .into_iter()
                    .filter(MonotoneMap::is_generic)
                {
                    for c in 0..=cap {
                        for d in c..=cap {
                            for off in 0..=(d - c) {
                                let f = MonotoneMap::shift(c, off, d).unwrap();
                                for v in MonotoneMap::all(b, d) {
                                    let gv = g.then(&v).unwrap();
                                    let Some(u) = MonotoneMap::all(a, c)
                                        .into_iter()
                                        .find(|u| u.then(&f).unwrap() == gv)
                                    else {
                                        continue;
                                    };
                                    let fillers = MonotoneMap::all(b, c)
                                        .into_iter()
                                        .filter(|w| {
                                            g.then(w).unwrap() == u && w.then(&f).unwrap() == v
                                        })
                                        .count();
                                    assert_eq!(fillers, 1, "g={g:?} f={f:?} v={v:?}");
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    /// Checks the pushout universal property against every cocone with
    /// vertex of degree at most `cap`.
    fn is_pushout(
        g: &MonotoneMap,
        f: &MonotoneMap,
        f_new: &MonotoneMap,
        g_new: &MonotoneMap,
        cap: usize,
    ) -> bool {
        if g.then(f_new).unwrap() != f.then(g_new).unwrap() {
            return false;
        }
        for r in 0..=cap {
            for h1 in MonotoneMap::all(g.tgt(), r) {
                for h2 in MonotoneMap::all(f.tgt(), r) {
                    if g.then(&h1).unwrap() != f.then(&h2).unwrap() {
                        continue;
                    }
                    let mediating = MonotoneMap::all(f_new.tgt(), r)
                        .into_iter()
                        .filter(|w| f_new.then(w).unwrap() == h1 && g_new.then(w).unwrap() == h2)
                        .count();
                    if mediating != 1 {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn pushout_examples() {
        let g = MonotoneMap::codegeneracy(0, 0);
        let f = MonotoneMap::coface(2, 0);
        let (f1, g1) = pushout_generic_free(&g, &f).unwrap();
        assert_eq!(f1, MonotoneMap::coface(1, 0));
        assert_eq!(g1, mm(1, &[0, 1, 1]));
        assert!(is_pushout(&g, &f, &f1, &g1, 4));

        let f = mm(3, &[1, 2]);
        let id = MonotoneMap::identity(1);
        let (f1, g1) = pushout_generic_free(&id, &f).unwrap();
        assert_eq!((f1, g1), (f.clone(), MonotoneMap::identity(3)));

        let g = mm(2, &[0, 2]);
        let f = mm(2, &[0, 1]);
        let (f1, g1) = pushout_generic_free(&g, &f).unwrap();
        assert_eq!(f1.tgt(), 3);
        assert!(f1.is_free());
        assert_eq!(g1, MonotoneMap::coface(3, 1));
        assert!(is_pushout(&g, &f, &f1, &g1, 4));
    }

    #[test]
    fn pushout_rejects_bad_input() {
        let not_generic = mm(2, &[1, 2]);
        let f = MonotoneMap::identity(1);
        assert!(matches!(
            pushout_generic_free(&not_generic, &f),
            Err(Error::Precondition(_))
        ));
        let g = MonotoneMap::identity(1);
        let not_free = mm(2, &[0, 2]);
        assert!(matches!(
            pushout_generic_free(&g, &not_free),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn pushouts_of_generators_are_stable_and_universal() {
        for m in 0..=4 {
            for g in generic_generators(m) {
                for f in free_generators(m) {
                    let (f1, g1) = pushout_generic_free(&g, &f).unwrap();
                    assert!(f1.is_free() && g1.is_generic());
                    if m <= 2 {
                        assert!(is_pushout(&g, &f, &f1, &g1, 4), "g={g:?} f={f:?}");
                    }
                }
            }
        }
        // all generic/free pairs of small degree, not only generators
        for m in 0..=2 {
            for n in 0..=3 {
                for g in MonotoneMap::all(m, n)
                    .into_iter()
                    .filter(MonotoneMap::is_generic)
                {
                    for p in m..=3 {
                        for off in 0..=(p - m) {
                            let f = MonotoneMap::shift(m, off, p).unwrap();
                            let (f1, g1) = pushout_generic_free(&g, &f).unwrap();
                            assert!(is_pushout(&g, &f, &f1, &g1, 4));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn generator_lists() {
        assert!(generic_generators(0).is_empty());
        assert_eq!(
            generic_generators(1),
            vec![MonotoneMap::coface(2, 1), MonotoneMap::codegeneracy(0, 0)]
        );
        let g2 = generic_generators(2);
        assert_eq!(g2.len(), 4);
        assert!(g2.contains(&MonotoneMap::coface(3, 1)));
        assert!(g2.contains(&MonotoneMap::coface(3, 2)));
        assert!(g2.contains(&MonotoneMap::codegeneracy(1, 0)));
        assert!(g2.contains(&MonotoneMap::codegeneracy(1, 1)));
        assert!(g2.iter().all(MonotoneMap::is_generic));
    }

    #[test]
    fn xi_delta_examples() {
        let x = delta_to_xi_free(&MonotoneMap::identity(0));
        assert_eq!(x, XiMap::identity(0));
        assert_eq!(xi_to_delta(&x), MonotoneMap::identity(2));

        let d1 = mm(2, &[0, 2]);
        let x = delta_to_xi_free(&d1);
        assert_eq!(xi_to_delta(&x), mm(4, &[0, 1, 3, 4]));
        assert_eq!((x.src(), x.tgt()), (1, 2));
        assert_eq!(
            XiMap::all(1, 2).len(),
            MonotoneMap::all(3, 4)
                .into_iter()
                .filter(MonotoneMap::is_generic)
                .count()
        );

        for n in -1..=3 {
            let x = XiMap::from_initial(n).unwrap();
            assert_eq!(
                xi_to_delta(&x),
                mm((n + 2) as usize, &[0, (n + 2) as usize])
            );
            assert_eq!(XiMap::all(-1, n), vec![x]);
        }
    }

    #[test]
    fn xi_hom_counts_match_delta() {
        for n in 0..=4isize {
            for k in -1..=3isize {
                let xi = XiMap::all(n, k);
                let delta = MonotoneMap::all(n as usize, (k + 2) as usize);
                assert_eq!(xi.len(), delta.len(), "n={n} k={k}");
                let mut adj: Vec<_> = xi.iter().map(|x| x.adjunct().unwrap()).collect();
                adj.sort();
                assert_eq!(adj, delta);
                for a in &delta {
                    assert_eq!(XiMap::from_adjunct(k, a).unwrap().adjunct().unwrap(), *a);
                }
            }
        }
    }

    #[test]
    fn epi_mono_reassembles() {
        for m in 0..=4 {
            for n in 0..=4 {
                for a in MonotoneMap::all(m, n) {
                    let (e, i) = a.epi_mono();
                    assert!(e.is_surjective() && i.is_injective());
                    assert_eq!(e.then(&i).unwrap(), a);
                }
            }
        }
    }
}
