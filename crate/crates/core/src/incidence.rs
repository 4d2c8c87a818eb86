//! Incidence coalgebras with exact rational coefficients.
//!
//! The comultiplication of an arrow `a` is the multiset of pairs
//! `(d_2 σ, d_0 σ)` over 2-simplices `σ` with `d_1 σ = a`. Convolution is
//! dual to it. The Möbius function is the alternating sum of the counts of
//! nondegenerate simplices, which is only exact under certified tightness.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::axioms::{check_culf, check_decomposition, check_mobius, DecompMethod, Report, Verdict};
use crate::error::{Error, Result};
use crate::interval::{arrow_classes, certify_mobius_interval, Registry};
use crate::presheaf::{FinSSet, SSetMap};

pub type Q = BigRational;

/// A vector of exact rationals indexed by a finite basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QVec {
    coeffs: Vec<Q>,
}

impl QVec {
    pub fn zero(n: usize) -> Self {
        QVec {
            coeffs: vec![Q::zero(); n],
        }
    }

    pub fn constant(n: usize, v: i64) -> Self {
        QVec {
            coeffs: vec![Q::from_integer(BigInt::from(v)); n],
        }
    }

    pub fn from_ints(values: impl IntoIterator<Item = i64>) -> Self {
        QVec {
            coeffs: values
                .into_iter()
                .map(|v| Q::from_integer(v.into()))
                .collect(),
        }
    }

    pub fn basis_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn get(&self, i: usize) -> &Q {
        &self.coeffs[i]
    }

    pub fn set(&mut self, i: usize, v: Q) {
        self.coeffs[i] = v;
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    fn check_len(&self, other: &QVec) -> Result<()> {
        if self.coeffs.len() != other.coeffs.len() {
            return Err(Error::precondition(format!(
                "basis mismatch: {} vs {}",
                self.coeffs.len(),
                other.coeffs.len()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &QVec) -> Result<QVec> {
        self.check_len(other)?;
        Ok(QVec {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &QVec) -> Result<QVec> {
        self.check_len(other)?;
        Ok(QVec {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }
}

/// Formats a rational as `num/den`.
pub fn format_q(q: &Q) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

impl fmt::Display for QVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(format_q).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Multiset of ordered pairs of basis indices.
pub type PairMultiset = BTreeMap<(usize, usize), usize>;

/// A finite coalgebra with a comultiplication that is a multiset of pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalgebraTable {
    pub basis: Vec<String>,
    pub comult: Vec<PairMultiset>,
    pub counit: Vec<bool>,
}

impl CoalgebraTable {
    /// Built from the 2-simplices of `X`, without checking any axiom.
    pub fn new(x: &FinSSet) -> Result<Self> {
        if x.cap() < 2 {
            return Err(Error::CapTooSmall {
                needed: 2,
                have: x.cap() as isize,
            });
        }
        let mut comult = vec![PairMultiset::new(); x.len(1)];
        let (d0, d1, d2) = (x.face_table(2, 0), x.face_table(2, 1), x.face_table(2, 2));
        for s in 0..x.len(2) {
            *comult[d1[s]].entry((d2[s], d0[s])).or_insert(0) += 1;
        }
        let mut counit = vec![false; x.len(1)];
        for &e in x.degen_table(0, 0) {
            counit[e] = true;
        }
        Ok(CoalgebraTable {
            basis: x.names(1).to_vec(),
            comult,
            counit,
        })
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn counit_vec(&self) -> QVec {
        QVec::from_ints(self.counit.iter().map(|&b| i64::from(b)))
    }

    pub fn zeta(&self) -> QVec {
        QVec::constant(self.len(), 1)
    }

    /// `(f * g)(a) = Σ f(l) g(r)` over `(l, r) ∈ Δ(a)` with multiplicity.
    pub fn convolve(&self, f: &QVec, g: &QVec) -> Result<QVec> {
        if f.basis_len() != self.len() || g.basis_len() != self.len() {
            return Err(Error::precondition("basis mismatch in convolution"));
        }
        let mut out = QVec::zero(self.len());
        for (a, pairs) in self.comult.iter().enumerate() {
            let mut acc = Q::zero();
            for (&(l, r), &m) in pairs {
                acc += f.get(l) * g.get(r) * Q::from_integer(m.into());
            }
            out.set(a, acc);
        }
        Ok(out)
    }

    /// Coassociativity and both counit laws, as multiset identities.
    pub fn check_laws(&self) -> Report {
        let mut report = Report::new("coalgebra", 2);
        for a in 0..self.len() {
            let mut left: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
            let mut right: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
            for (&(l, r), &m) in &self.comult[a] {
                for (&(ll, lr), &n) in &self.comult[l] {
                    *left.entry((ll, lr, r)).or_insert(0) += m * n;
                }
                for (&(rl, rr), &n) in &self.comult[r] {
                    *right.entry((l, rl, rr)).or_insert(0) += m * n;
                }
            }
            if left != right {
                report.fail("coalgebra:coassociative", 3, vec![self.basis[a].clone()]);
            }
            let mut lunit: BTreeMap<usize, usize> = BTreeMap::new();
            let mut runit: BTreeMap<usize, usize> = BTreeMap::new();
            for (&(l, r), &m) in &self.comult[a] {
                if self.counit[l] {
                    *lunit.entry(r).or_insert(0) += m;
                }
                if self.counit[r] {
                    *runit.entry(l).or_insert(0) += m;
                }
            }
            let id = BTreeMap::from([(a, 1)]);
            if lunit != id || runit != id {
                report.fail("coalgebra:counit", 2, vec![self.basis[a].clone()]);
            }
        }
        report
    }
}

/// The incidence table of `X`, refused when the decomposition axiom fails
/// on the verified range.
pub fn comult(x: &FinSSet) -> Result<CoalgebraTable> {
    if x.cap() >= 3 && check_decomposition(x, DecompMethod::Direct)?.verdict() == Verdict::Fail {
        return Err(Error::AxiomFailure("not a decomposition space".into()));
    }
    CoalgebraTable::new(x)
}

/// Number of nondegenerate `k`-simplices over each arrow.
fn phi_counts(x: &FinSSet, k: usize) -> Vec<i64> {
    let mut counts = vec![0i64; x.len(1)];
    for s in x.nondegenerate(k) {
        counts[x.long_edge(k, s)] += 1;
    }
    counts
}

/// A Möbius-certified decomposition set with its incidence data.
#[derive(Clone, Debug)]
pub struct Incidence {
    pub table: CoalgebraTable,
    /// `phis[k][a] = |(→X_k)_a|` for `k ≤ ℓ`.
    pub phis: Vec<Vec<i64>>,
}

impl Incidence {
    /// Refuses unless completeness and tightness are certified, since the
    /// alternating sum is exact only then.
    pub fn new(x: &FinSSet) -> Result<Self> {
        let tight = check_mobius(x);
        if !tight.report.passed() {
            return Err(Error::Inconclusive(format!(
                "Möbius condition not certified: {}",
                tight.report.lines().join("; ")
            )));
        }
        let ell = tight.stable_from.expect("certified tightness has a bound");
        let table = comult(x)?;
        let phis = (0..=ell).map(|k| phi_counts(x, k)).collect();
        Ok(Incidence { table, phis })
    }

    pub fn phi(&self, k: usize) -> QVec {
        match self.phis.get(k) {
            Some(c) => QVec::from_ints(c.iter().copied()),
            None => QVec::zero(self.table.len()),
        }
    }

    fn signed_sum(&self, parity: Option<usize>) -> QVec {
        let mut out = vec![0i64; self.table.len()];
        for (k, c) in self.phis.iter().enumerate() {
            let sign = match parity {
                None => {
                    if k % 2 == 0 {
                        1
                    } else {
                        -1
                    }
                }
                Some(p) if k % 2 == p => 1,
                Some(_) => 0,
            };
            for (o, v) in out.iter_mut().zip(c) {
                *o += sign * v;
            }
        }
        QVec::from_ints(out)
    }

    /// `μ = Φ_even - Φ_odd`.
    pub fn mobius(&self) -> QVec {
        self.signed_sum(None)
    }

    /// `ζ * μ = ε = μ * ζ`, and `ζ * Φ_even = ε + ζ * Φ_odd`.
    pub fn verify_inversion(&self) -> Result<Report> {
        let t = &self.table;
        let (zeta, eps, mu) = (t.zeta(), t.counit_vec(), self.mobius());
        let mut report = Report::new("inversion", 2);
        let zm = t.convolve(&zeta, &mu)?;
        let mz = t.convolve(&mu, &zeta)?;
        let even = t.convolve(&zeta, &self.signed_sum(Some(0)))?;
        let odd = eps.add(&t.convolve(&zeta, &self.signed_sum(Some(1)))?)?;
        for a in 0..t.len() {
            if zm.get(a) != eps.get(a) {
                report.fail("inversion:zeta*mu", 2, vec![t.basis[a].clone()]);
            }
            if mz.get(a) != eps.get(a) {
                report.fail("inversion:mu*zeta", 2, vec![t.basis[a].clone()]);
            }
            if even.get(a) != odd.get(a) {
                report.fail("inversion:sign-free", 2, vec![t.basis[a].clone()]);
            }
        }
        Ok(report)
    }
}

pub fn phi(x: &FinSSet, k: usize) -> Result<QVec> {
    Ok(Incidence::new(x)?.phi(k))
}

pub fn mobius(x: &FinSSet) -> Result<QVec> {
    Ok(Incidence::new(x)?.mobius())
}

pub fn verify_inversion(x: &FinSSet) -> Result<Report> {
    Incidence::new(x)?.verify_inversion()
}

/// `δ_b ↦ δ_{F b}` for a cULF map, with the homomorphism check.
#[derive(Clone, Debug)]
pub struct Pushforward {
    pub arrows: Vec<usize>,
    pub report: Report,
}

impl Pushforward {
    pub fn apply(&self, v: &QVec, cod_len: usize) -> QVec {
        let mut out = QVec::zero(cod_len);
        for (b, &fb) in self.arrows.iter().enumerate() {
            let sum = out.get(fb) + v.get(b);
            out.set(fb, sum);
        }
        out
    }
}

pub fn culf_pushforward(f: &SSetMap) -> Result<Pushforward> {
    if !check_culf(f)? {
        return Err(Error::precondition("map is not cULF"));
    }
    let dom = CoalgebraTable::new(f.dom())?;
    let cod = CoalgebraTable::new(f.cod())?;
    let f1 = f.component(1);
    let mut report = Report::new("homomorphism", 2);
    for b in 0..dom.len() {
        let mut pushed = PairMultiset::new();
        for (&(l, r), &m) in &dom.comult[b] {
            *pushed.entry((f1[l], f1[r])).or_insert(0) += m;
        }
        if pushed != cod.comult[f1[b]] {
            report.fail("homomorphism:comult", 2, vec![dom.basis[b].clone()]);
        }
        if dom.counit[b] != cod.counit[f1[b]] {
            report.fail("homomorphism:counit", 1, vec![dom.basis[b].clone()]);
        }
    }
    Ok(Pushforward {
        arrows: f1.to_vec(),
        report,
    })
}

/// `|(→Y_k)_b| = |(→X_k)_{F b}|` for every arrow `b` and `k ≤ cap`.
pub fn check_phi_pullback(f: &SSetMap) -> Report {
    let (y, x) = (f.dom(), f.cod());
    let mut report = Report::new("phi-pullback", y.cap() as isize);
    let f1 = f.component(1);
    for k in 0..=y.cap() {
        let (py, px) = (phi_counts(y, k), phi_counts(x, k));
        for b in 0..y.len(1) {
            if py[b] != px[f1[b]] {
                report.fail("phi-pullback", k as isize, vec![y.name(1, b).to_string()]);
            }
        }
    }
    report
}

/// The coalgebra on a closed registry, comultiplying an interval by its
/// midpoint subdivisions.
#[derive(Clone, Debug)]
pub struct RegistryCoalgebra {
    pub table: CoalgebraTable,
    pub names: Vec<String>,
    /// `profiles[c][r]`: nondegenerate `r`-simplices with the longest edge.
    pub profiles: Vec<Vec<usize>>,
    /// For each entry, the basis index of `I(b)` for each of its arrows `b`.
    pub arrow_class: Vec<Vec<usize>>,
    underlying: Vec<FinSSet>,
    longest: Vec<usize>,
}

impl RegistryCoalgebra {
    pub fn new(r: &Registry) -> Result<Self> {
        let basis: Vec<String> = r.entries().map(|(d, _)| d.clone()).collect();
        let pos: HashMap<&str, usize> = basis
            .iter()
            .enumerate()
            .map(|(i, d)| (d.as_str(), i))
            .collect();
        let mut names = Vec::new();
        let mut profiles = Vec::new();
        let mut arrow_class = Vec::new();
        let mut underlying = Vec::new();
        let mut longest = Vec::new();
        let mut comult = Vec::new();
        let mut counit = Vec::new();
        for (d, entry) in r.entries() {
            let class = &entry.class;
            let classes = r.subintervals(d)?;
            let idx = classes
                .iter()
                .map(|c| {
                    pos.get(c.digest.as_str()).copied().ok_or_else(|| {
                        Error::Registry(format!(
                            "registry is not closed: {} lacks a subinterval",
                            class.name
                        ))
                    })
                })
                .collect::<Result<Vec<usize>>>()?;
            let x = class.canonical.underlying()?;
            let a = class.canonical.longest_edge();
            let mut pairs = PairMultiset::new();
            for s in 0..x.len(2) {
                if x.face(2, 1, s) == a {
                    *pairs
                        .entry((idx[x.face(2, 2, s)], idx[x.face(2, 0, s)]))
                        .or_insert(0) += 1;
                }
            }
            comult.push(pairs);
            counit.push(x.degen_table(0, 0).contains(&a));
            names.push(class.name.clone());
            profiles.push(certify_mobius_interval(class)?.profile);
            arrow_class.push(idx);
            underlying.push(x);
            longest.push(a);
        }
        Ok(RegistryCoalgebra {
            table: CoalgebraTable {
                basis,
                comult,
                counit,
            },
            names,
            profiles,
            arrow_class,
            underlying,
            longest,
        })
    }

    pub fn index(&self, digest: &str) -> Option<usize> {
        self.table.basis.iter().position(|d| d == digest)
    }

    /// `μ_R(c) = Σ_r (-1)^r |(→A_r)_a|`.
    pub fn mobius(&self) -> QVec {
        QVec::from_ints(self.profiles.iter().map(|p| {
            p.iter()
                .enumerate()
                .map(|(r, &n)| if r % 2 == 0 { n as i64 } else { -(n as i64) })
                .sum()
        }))
    }

    /// `ζ_R * μ_R = ε_R = μ_R * ζ_R` inside the registry.
    pub fn verify_inversion(&self) -> Result<Report> {
        let t = &self.table;
        let (zeta, eps, mu) = (t.zeta(), t.counit_vec(), self.mobius());
        let zm = t.convolve(&zeta, &mu)?;
        let mz = t.convolve(&mu, &zeta)?;
        let mut report = Report::new("universal-inversion", 2);
        for c in 0..t.len() {
            if zm.get(c) != eps.get(c) || mz.get(c) != eps.get(c) {
                report.fail("universal-inversion", 2, vec![self.names[c].clone()]);
            }
        }
        Ok(report)
    }

    /// The square `U_3 → U_2 ×_{U_0} U_1` over `U_2 → U_1 ×_{U_0} U_1`,
    /// fibrewise over each entry `A`: for each subdivision `τ ∈ (A_2)_a`, the
    /// 3-simplices with `d_1 σ = τ` are counted against the 2-subdivisions of
    /// the registry entry classifying the lower piece `d_2 τ`. The mirror
    /// square (`d_2 σ = τ` against the upper piece `d_0 τ`) is checked too.
    pub fn check_decomposition_fragment(&self) -> Report {
        let mut report = Report::new("registry-decomposition", 3);
        let n2: Vec<usize> = (0..self.table.len())
            .map(|c| {
                let x = &self.underlying[c];
                (0..x.len(2))
                    .filter(|&s| x.long_edge(2, s) == self.longest[c])
                    .count()
            })
            .collect();
        for c in 0..self.table.len() {
            let x = &self.underlying[c];
            let mut over_d1 = vec![0usize; x.len(2)];
            let mut over_d2 = vec![0usize; x.len(2)];
            for s in 0..x.len(3) {
                over_d1[x.face(3, 1, s)] += 1;
                over_d2[x.face(3, 2, s)] += 1;
            }
            for t in (0..x.len(2)).filter(|&t| x.long_edge(2, t) == self.longest[c]) {
                let lower = self.arrow_class[c][x.face(2, 2, t)];
                let upper = self.arrow_class[c][x.face(2, 0, t)];
                if over_d1[t] != n2[lower] {
                    report.fail(
                        "registry-decomposition:lower",
                        3,
                        vec![self.names[c].clone(), x.name(2, t).into()],
                    );
                }
                if over_d2[t] != n2[upper] {
                    report.fail(
                        "registry-decomposition:upper",
                        3,
                        vec![self.names[c].clone(), x.name(2, t).into()],
                    );
                }
            }
        }
        report
    }
}

/// The classifying map `a ↦ [I(a)]` and its checks.
#[derive(Clone, Debug)]
pub struct Classification {
    /// Registry basis index of `I(a)` for each arrow `a`.
    pub classes: Vec<usize>,
    pub report: Report,
}

/// Classifies every arrow of a Möbius-certified `X` into a closed registry,
/// checking the coalgebra homomorphism property and `μ_X = μ_R ∘ classify`.
pub fn classify(x: &FinSSet, rc: &RegistryCoalgebra) -> Result<Classification> {
    let inc = Incidence::new(x)?;
    let classes = arrow_classes(x)?
        .into_iter()
        .enumerate()
        .map(|(a, c)| {
            rc.index(&c.digest).ok_or_else(|| {
                Error::Registry(format!(
                    "interval {} of arrow `{}` is not in the registry",
                    c.name,
                    x.name(1, a)
                ))
            })
        })
        .collect::<Result<Vec<usize>>>()?;
    let mut report = Report::new("classify", 2);
    let (mu_x, mu_r) = (inc.mobius(), rc.mobius());
    for a in 0..inc.table.len() {
        let mut pushed = PairMultiset::new();
        for (&(l, r), &m) in &inc.table.comult[a] {
            *pushed.entry((classes[l], classes[r])).or_insert(0) += m;
        }
        if pushed != rc.table.comult[classes[a]] {
            report.fail("classify:comult", 2, vec![inc.table.basis[a].clone()]);
        }
        if inc.table.counit[a] != rc.table.counit[classes[a]] {
            report.fail("classify:counit", 1, vec![inc.table.basis[a].clone()]);
        }
        if mu_x.get(a) != mu_r.get(classes[a]) {
            report.fail("classify:mobius", 2, vec![inc.table.basis[a].clone()]);
        }
    }
    Ok(Classification { classes, report })
}

/// `μ_R` with the inversion check inside the registry.
pub fn universal_mobius(r: &Registry) -> Result<(QVec, Report)> {
    let rc = RegistryCoalgebra::new(r)?;
    Ok((rc.mobius(), rc.verify_inversion()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::{divisors, poset_nerve, truncated_naturals};
    use crate::interval::factorisation_interval;
    use crate::presheaf::dec_bot;

    fn divisor_nerve(n: u64) -> FinSSet {
        let p = divisors(n).validate().unwrap();
        poset_nerve(&p, p.height() + 3).unwrap()
    }

    fn q(v: i64) -> Q {
        Q::from_integer(v.into())
    }

    #[test]
    fn comultiplication_of_one_to_six() {
        let x = divisor_nerve(6);
        let t = comult(&x).unwrap();
        let a = x.id(1, "1-6").unwrap();
        let terms: Vec<(String, String)> = t.comult[a]
            .keys()
            .map(|&(l, r)| (x.name(1, l).to_string(), x.name(1, r).to_string()))
            .collect();
        assert_eq!(terms.len(), 4);
        assert!(terms.contains(&("1-3".into(), "3-6".into())));
        let e = x.id(1, "2-2").unwrap();
        assert_eq!(t.comult[e], PairMultiset::from([((e, e), 1)]));
        assert!(t.counit[e] && !t.counit[a]);
        assert!(t.check_laws().passed());
    }

    #[test]
    fn zeta_squared_counts_factorisations() {
        let x = divisor_nerve(6);
        let t = CoalgebraTable::new(&x).unwrap();
        let zz = t.convolve(&t.zeta(), &t.zeta()).unwrap();
        assert_eq!(zz.get(x.id(1, "1-6").unwrap()), &q(4));
        assert_eq!(zz.get(x.id(1, "3-3").unwrap()), &q(1));
        let e = t.counit_vec();
        let f = QVec::from_ints((0..t.len() as i64).map(|i| i * 7 - 3));
        assert_eq!(t.convolve(&e, &f).unwrap(), f);
        assert_eq!(t.convolve(&f, &e).unwrap(), f);
    }

    #[test]
    fn mobius_of_twelve() {
        let x = divisor_nerve(12);
        let inc = Incidence::new(&x).unwrap();
        let a = x.id(1, "1-12").unwrap();
        assert_eq!(inc.phi(1).get(a), &q(1));
        assert_eq!(inc.phi(2).get(a), &q(4));
        assert_eq!(inc.phi(3).get(a), &q(3));
        assert_eq!(inc.mobius().get(a), &q(0));
        assert_eq!(inc.mobius().get(x.id(1, "1-6").unwrap()), &q(1));
        assert_eq!(inc.mobius().get(x.id(1, "4-4").unwrap()), &q(1));
        assert!(inc.verify_inversion().unwrap().passed());
    }

    #[test]
    fn truncated_naturals_mobius() {
        let m = truncated_naturals(5).validate().unwrap();
        let x = m.nerve(m.default_cap().unwrap()).unwrap();
        let mu = mobius(&x).unwrap();
        let expect = [1, -1, 0, 0, 0, 0];
        for (n, e) in expect.iter().enumerate() {
            assert_eq!(mu.get(x.id(1, &n.to_string()).unwrap()), &q(*e));
        }
        assert!(verify_inversion(&x).unwrap().passed());
    }

    #[test]
    fn uncertified_input_is_refused() {
        let x = divisor_nerve(6).with_stable_from(None);
        assert!(matches!(Incidence::new(&x), Err(Error::Inconclusive(_))));
    }

    #[test]
    fn pushforward_along_decalage_and_interval() {
        let x = divisor_nerve(6);
        let (_, counit) = dec_bot(&x).unwrap();
        let p = culf_pushforward(&counit).unwrap();
        assert!(p.report.passed());
        let (_, embed) = factorisation_interval(&x, x.id(1, "1-6").unwrap()).unwrap();
        assert!(culf_pushforward(&embed).unwrap().report.passed());
        assert!(check_phi_pullback(&embed).passed());
    }

    #[test]
    fn registry_coalgebra_of_diamond() {
        let x = divisor_nerve(6);
        let mut r = Registry::new();
        r.insert(
            &factorisation_interval(&x, x.id(1, "1-6").unwrap())
                .unwrap()
                .0,
        )
        .unwrap();
        r.close().unwrap();
        let rc = RegistryCoalgebra::new(&r).unwrap();
        assert_eq!(rc.table.len(), 3);
        assert!(rc.table.check_laws().passed());
        let diamond = (0..3).find(|&c| rc.profiles[c] == vec![0, 1, 2]).unwrap();
        let triv = rc.names.iter().position(|n| n == "I_triv").unwrap();
        let chain = 3 - diamond - triv;
        let expect = PairMultiset::from([
            ((triv, diamond), 1),
            ((chain, chain), 2),
            ((diamond, triv), 1),
        ]);
        assert_eq!(rc.table.comult[diamond], expect);
        let mu = rc.mobius();
        assert_eq!(
            (mu.get(triv), mu.get(chain), mu.get(diamond)),
            (&q(1), &q(-1), &q(1))
        );
        assert!(rc.verify_inversion().unwrap().passed());
        assert!(rc.check_decomposition_fragment().passed());
        let cls = classify(&x, &rc).unwrap();
        assert!(cls.report.passed());
        assert_eq!(cls.classes[x.id(1, "1-6").unwrap()], diamond);
    }
}
