//! Decision procedures for the axioms, all reduced to finite pullback squares.
//!
//! Every report records the largest degree it inspected. A finding's degree
//! is the largest level occurring in its square, so the verdict for the
//! truncation at `n` is read off from the findings of degree at most `n`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::presheaf::{dec_bot, dec_top, FinSSet, FinXiSet, SSetMap, XiSetMap};
use crate::pullback::{pullback_failure, PullbackFailure, Square};
use crate::simplex::{free_generators, generic_generators, pushout_generic_free};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub verdict: Verdict,
    pub check: String,
    pub degree: isize,
    pub witness: Vec<String>,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = if self.witness.is_empty() {
            "-".to_string()
        } else {
            self.witness.join(",")
        };
        write!(
            f,
            "{} {} degree={} witness={}",
            self.verdict, self.check, self.degree, w
        )
    }
}

/// The outcome of one check: failures and inconclusive findings, plus the
/// verified range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub check: String,
    pub verified_up_to: isize,
    pub findings: Vec<Finding>,
}

impl Report {
    pub fn new(check: impl Into<String>, verified_up_to: isize) -> Self {
        Report {
            check: check.into(),
            verified_up_to,
            findings: Vec::new(),
        }
    }

    pub fn verdict(&self) -> Verdict {
        self.findings
            .iter()
            .map(|f| f.verdict)
            .max()
            .unwrap_or(Verdict::Pass)
    }

    pub fn passed(&self) -> bool {
        self.verdict() == Verdict::Pass
    }

    pub fn fail(&mut self, check: impl Into<String>, degree: isize, witness: Vec<String>) {
        self.findings.push(Finding {
            verdict: Verdict::Fail,
            check: check.into(),
            degree,
            witness,
        });
    }

    pub fn inconclusive(&mut self, degree: isize, why: impl Into<String>) {
        self.findings.push(Finding {
            verdict: Verdict::Inconclusive,
            check: self.check.clone(),
            degree,
            witness: vec![why.into()],
        });
    }

    /// Absorbs another report's findings, relabelling them as sub-checks.
    pub fn absorb(&mut self, other: Report, degree_shift: isize) {
        for mut f in other.findings {
            f.degree += degree_shift;
            if f.check != self.check {
                f.check = format!("{}:{}", self.check, f.check);
            }
            self.findings.push(f);
        }
    }

    /// Degrees with at least one failure.
    pub fn failing_degrees(&self) -> BTreeSet<isize> {
        self.findings
            .iter()
            .filter(|f| f.verdict == Verdict::Fail)
            .map(|f| f.degree)
            .collect()
    }

    /// The verdict restricted to findings of degree at most `n`.
    pub fn verdict_up_to(&self, n: isize) -> Verdict {
        self.findings
            .iter()
            .filter(|f| f.degree <= n)
            .map(|f| f.verdict)
            .max()
            .unwrap_or(Verdict::Pass)
    }

    pub fn lines(&self) -> Vec<String> {
        if self.findings.is_empty() {
            return vec![format!(
                "PASS {} degree={} witness=-",
                self.check, self.verified_up_to
            )];
        }
        self.findings.iter().map(|f| f.to_string()).collect()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.lines() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Level names for a square's corners: `P`, `A`, `B`.
struct Corners<'a> {
    p: &'a [String],
    a: &'a [String],
    b: &'a [String],
}

fn test_square(
    report: &mut Report,
    check: &str,
    degree: isize,
    sq: Square<'_>,
    names: Corners<'_>,
) -> Result<()> {
    match pullback_failure(&sq)? {
        None => {}
        Some(PullbackFailure::NotInjective { p1, p2 }) => report.fail(
            check,
            degree,
            vec![names.p[p1].clone(), names.p[p2].clone()],
        ),
        Some(PullbackFailure::NotSurjective { a, b }) => {
            report.fail(check, degree, vec![names.a[a].clone(), names.b[b].clone()])
        }
    }
    Ok(())
}

/// `X_k → X_1 ×_{X_0} ⋯ ×_{X_0} X_1` is a bijection for `2 ≤ k ≤ cap`.
pub fn check_segal(x: &FinSSet) -> Report {
    let mut report = Report::new("segal", x.cap() as isize);
    let sources = x.face_table(1, 1);
    let targets = x.face_table(1, 0);
    let mut out_edges: HashMap<usize, Vec<usize>> = HashMap::new();
    for e in 0..x.len(1) {
        out_edges.entry(sources[e]).or_default().push(e);
    }
    for k in 2..=x.cap() {
        let edges = x.principal_edge_tables(k);
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::with_capacity(x.len(k));
        let mut duplicate = None;
        for s in 0..x.len(k) {
            let key: Vec<usize> = edges.iter().map(|t| t[s]).collect();
            if let Some(&t) = seen.get(&key) {
                duplicate = Some((t, s));
                break;
            }
            seen.insert(key, s);
        }
        if let Some((t, s)) = duplicate {
            report.fail(
                "segal",
                k as isize,
                vec![x.name(k, t).into(), x.name(k, s).into()],
            );
            continue;
        }
        // number of composable strings of k edges
        let mut ending = vec![0u128; x.len(0)];
        for e in 0..x.len(1) {
            ending[targets[e]] += 1;
        }
        for _ in 1..k {
            let mut next = vec![0u128; x.len(0)];
            for e in 0..x.len(1) {
                next[targets[e]] = next[targets[e]].saturating_add(ending[sources[e]]);
            }
            ending = next;
        }
        let strings = ending.iter().fold(0u128, |a, &b| a.saturating_add(b));
        if strings != seen.len() as u128 {
            let missing = find_missing_string(x, k, &seen, &out_edges);
            let witness = missing.iter().map(|&e| x.name(1, e).to_string()).collect();
            report.fail("segal", k as isize, witness);
        }
    }
    report
}

fn find_missing_string(
    x: &FinSSet,
    k: usize,
    seen: &HashMap<Vec<usize>, usize>,
    out_edges: &HashMap<usize, Vec<usize>>,
) -> Vec<usize> {
    fn go(
        x: &FinSSet,
        k: usize,
        prefix: &mut Vec<usize>,
        seen: &HashMap<Vec<usize>, usize>,
        out_edges: &HashMap<usize, Vec<usize>>,
    ) -> bool {
        if prefix.len() == k {
            return !seen.contains_key(prefix);
        }
        let v = x.face(1, 0, *prefix.last().unwrap());
        for &e in out_edges.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
            prefix.push(e);
            if go(x, k, prefix, seen, out_edges) {
                return true;
            }
            prefix.pop();
        }
        false
    }
    for e in 0..x.len(1) {
        let mut prefix = vec![e];
        if go(x, k, &mut prefix, seen, out_edges) {
            return prefix;
        }
    }
    Vec::new()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecompMethod {
    Decalage,
    Direct,
}

/// Both decalages Segal and both counits cULF.
pub fn check_decomposition(x: &FinSSet, method: DecompMethod) -> Result<Report> {
    if x.cap() < 3 {
        return Err(Error::CapTooSmall {
            needed: 3,
            have: x.cap() as isize,
        });
    }
    // both methods presuppose a simplicial set
    let identities = x.validate();
    if !identities.is_valid() {
        let mut report = Report::new("decomp", x.cap() as isize);
        for v in identities.violations {
            report.fail(
                format!("decomp:identity:{}", v.identity),
                v.degree,
                vec![v.witness],
            );
        }
        return Ok(report);
    }
    match method {
        DecompMethod::Direct => check_decomposition_direct(x),
        DecompMethod::Decalage => {
            let mut report = Report::new("decomp", x.cap() as isize);
            for (label, (dec, counit)) in [("top", dec_top(x)?), ("bot", dec_bot(x)?)] {
                let mut seg = check_segal(&dec);
                seg.check = format!("dec_{label}-segal");
                for f in seg.findings.iter_mut() {
                    f.check = seg.check.clone();
                }
                report.absorb(seg, 1);
                let mut culf = check_map_class(&counit, MapClass::Culf)?;
                culf.check = format!("dec_{label}-counit");
                for f in culf.findings.iter_mut() {
                    f.check = culf.check.clone();
                }
                report.absorb(culf, 1);
            }
            Ok(report)
        }
    }
}

fn check_decomposition_direct(x: &FinSSet) -> Result<Report> {
    let mut report = Report::new("decomp", x.cap() as isize);
    for m in 0..x.cap() {
        for f in free_generators(m) {
            for g in generic_generators(m) {
                let (f2, g2) = pushout_generic_free(&g, &f)?;
                let q = g2.tgt();
                if q.max(f.tgt()) > x.cap() {
                    continue;
                }
                let pa = x.act_table(&f2);
                let pb = x.act_table(&g2);
                let ac = x.act_table(&g);
                let bc = x.act_table(&f);
                let sq = Square {
                    pa: &pa,
                    pb: &pb,
                    ac: &ac,
                    bc: &bc,
                };
                let label = format!("pushout[{:?}|{:?}]", g.values(), f.values()).replace(' ', "");
                test_square(
                    &mut report,
                    &format!("decomp:{label}"),
                    q.max(f.tgt()) as isize,
                    sq,
                    Corners {
                        p: x.names(q),
                        a: x.names(g.tgt()),
                        b: x.names(f.tgt()),
                    },
                )?;
            }
        }
    }
    Ok(report)
}

/// Verdicts of both methods on each truncation `3..=cap`.
pub fn decomposition_agreement(x: &FinSSet) -> Result<Vec<(usize, Verdict, Verdict)>> {
    (3..=x.cap())
        .map(|n| {
            let t = x.truncate(n)?;
            let a = check_decomposition(&t, DecompMethod::Decalage)?.verdict();
            let b = check_decomposition(&t, DecompMethod::Direct)?.verdict();
            Ok((n, a, b))
        })
        .collect()
}

/// `s_0: X_0 → X_1` is injective.
pub fn check_complete(x: &FinSSet) -> bool {
    complete_report(x).passed()
}

pub fn complete_report(x: &FinSSet) -> Report {
    let mut report = Report::new("complete", 1);
    if x.cap() == 0 {
        return report;
    }
    let mut seen = HashMap::new();
    for (v, &e) in x.degen_table(0, 0).iter().enumerate() {
        if let Some(&w) = seen.get(&e) {
            report.fail(
                "complete",
                1,
                vec![x.name(0, w).into(), x.name(0, v).into()],
            );
            break;
        }
        seen.insert(e, v);
    }
    report
}

/// Every degeneracy map up to the cap is injective.
pub fn all_degeneracies_injective(x: &FinSSet) -> bool {
    (0..x.cap()).all(|k| {
        (0..=k).all(|j| {
            let mut t = x.degen_table(k, j).to_vec();
            t.sort_unstable();
            t.windows(2).all(|w| w[0] != w[1])
        })
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapClass {
    Conservative,
    Ulf,
    Culf,
}

/// Cartesian naturality squares on degeneracies (conservative), inner faces
/// (ULF), or both (cULF).
pub fn check_map_class(f: &SSetMap, class: MapClass) -> Result<Report> {
    let (y, x) = (f.dom(), f.cod());
    if y.cap() != x.cap() {
        return Err(Error::CapMismatch(y.cap() as isize, x.cap() as isize));
    }
    let name = match class {
        MapClass::Conservative => "conservative",
        MapClass::Ulf => "ulf",
        MapClass::Culf => "culf",
    };
    let mut report = Report::new(name, x.cap() as isize);
    if class != MapClass::Ulf {
        for k in 0..x.cap() {
            for j in 0..=k {
                let sq = Square {
                    pa: f.component(k),
                    pb: y.degen_table(k, j),
                    ac: x.degen_table(k, j),
                    bc: f.component(k + 1),
                };
                let corners = Corners {
                    p: y.names(k),
                    a: x.names(k),
                    b: y.names(k + 1),
                };
                test_square(
                    &mut report,
                    &format!("{name}:s{j}"),
                    k as isize + 1,
                    sq,
                    corners,
                )?;
            }
        }
    }
    if class != MapClass::Conservative {
        for k in 2..=x.cap() {
            for i in 1..k {
                let sq = Square {
                    pa: f.component(k),
                    pb: y.face_table(k, i),
                    ac: x.face_table(k, i),
                    bc: f.component(k - 1),
                };
                let corners = Corners {
                    p: y.names(k),
                    a: x.names(k),
                    b: y.names(k - 1),
                };
                test_square(
                    &mut report,
                    &format!("{name}:d{i}"),
                    k as isize,
                    sq,
                    corners,
                )?;
            }
        }
    }
    Ok(report)
}

pub fn check_culf(f: &SSetMap) -> Result<bool> {
    Ok(check_map_class(f, MapClass::Culf)?.passed())
}

/// Cartesian on every face and degeneracy map.
pub fn check_sset_cartesian(f: &SSetMap) -> Result<Report> {
    let mut report = check_map_class(f, MapClass::Culf)?;
    report.check = "cartesian".into();
    let (y, x) = (f.dom(), f.cod());
    for k in 1..=x.cap() {
        for i in [0, k] {
            let sq = Square {
                pa: f.component(k),
                pb: y.face_table(k, i),
                ac: x.face_table(k, i),
                bc: f.component(k - 1),
            };
            let corners = Corners {
                p: y.names(k),
                a: x.names(k),
                b: y.names(k - 1),
            };
            test_square(
                &mut report,
                &format!("cartesian:d{i}"),
                k as isize,
                sq,
                corners,
            )?;
        }
    }
    Ok(report)
}

/// The flanking squares: `s_{⊥-1}` against `d_⊤` and `s_{⊤+1}` against `d_⊥`,
/// with the extra coface `A_0 → A_{-1}` serving as both outer faces.
pub fn check_flanked(a: &FinXiSet) -> Result<Report> {
    let mut report = Report::new("flanked", a.cap());
    for n in 0..a.cap() {
        let m = (n + 2) as usize; // representative degree of A_n
        let (pn, an1, bn1) = (a.names(n), a.names(n - 1), a.names(n + 1));
        let sbot_n = a.degen_rep_table(n, 0);
        let stop_n = a.degen_rep_table(n, m);
        let sbot_lo = a.degen_rep_table(n - 1, 0);
        let stop_lo = a.degen_rep_table(n - 1, m - 1);
        let dtop_n = a.face_table(n, n as usize);
        let dbot_n = a.face_table(n, 0);
        let dtop_hi = a.face_table(n + 1, n as usize + 1);
        let dbot_hi = a.face_table(n + 1, 0);
        test_square(
            &mut report,
            "flanked:sbot/dtop",
            n + 1,
            Square {
                pa: dtop_n,
                pb: sbot_n,
                ac: sbot_lo,
                bc: dtop_hi,
            },
            Corners {
                p: pn,
                a: an1,
                b: bn1,
            },
        )?;
        test_square(
            &mut report,
            "flanked:stop/dbot",
            n + 1,
            Square {
                pa: dbot_n,
                pb: stop_n,
                ac: stop_lo,
                bc: dbot_hi,
            },
            Corners {
                p: pn,
                a: an1,
                b: bn1,
            },
        )?;
    }
    Ok(report)
}

/// The four families of squares that follow from flanking.
pub fn check_flanked_bonus(a: &FinXiSet) -> Result<Report> {
    let mut report = Report::new("flanked-bonus", a.cap());
    for n in 0..a.cap() {
        let m = (n + 2) as usize;
        let (an, an1, bn1) = (a.names(n), a.names(n - 1), a.names(n + 1));
        let sbot_n = a.degen_rep_table(n, 0);
        let stop_n = a.degen_rep_table(n, m);
        let sbot_lo = a.degen_rep_table(n - 1, 0);
        let stop_lo = a.degen_rep_table(n - 1, m - 1);
        for i in 0..=n as usize {
            test_square(
                &mut report,
                &format!("flanked-bonus:sbot/d{i}"),
                n + 1,
                Square {
                    pa: a.face_table(n, i),
                    pb: sbot_n,
                    ac: sbot_lo,
                    bc: a.face_table(n + 1, i + 1),
                },
                Corners {
                    p: an,
                    a: an1,
                    b: bn1,
                },
            )?;
            test_square(
                &mut report,
                &format!("flanked-bonus:stop/d{i}"),
                n + 1,
                Square {
                    pa: a.face_table(n, i),
                    pb: stop_n,
                    ac: stop_lo,
                    bc: a.face_table(n + 1, i),
                },
                Corners {
                    p: an,
                    a: an1,
                    b: bn1,
                },
            )?;
        }
        // degeneracies s_j for -1 ≤ j ≤ n, by representative index r = j + 1
        for r in 0..=(n + 1) as usize {
            test_square(
                &mut report,
                &format!("flanked-bonus:sbot/s{}", r as isize - 1),
                n + 1,
                Square {
                    pa: a.degen_rep_table(n - 1, r),
                    pb: sbot_lo,
                    ac: sbot_n,
                    bc: a.degen_rep_table(n, r + 1),
                },
                Corners {
                    p: an1,
                    a: an,
                    b: an,
                },
            )?;
            test_square(
                &mut report,
                &format!("flanked-bonus:stop/s{}", r as isize - 1),
                n + 1,
                Square {
                    pa: a.degen_rep_table(n - 1, r),
                    pb: stop_lo,
                    ac: stop_n,
                    bc: a.degen_rep_table(n, r),
                },
                Corners {
                    p: an1,
                    a: an,
                    b: an,
                },
            )?;
        }
    }
    Ok(report)
}

/// Bijective in degree `-1`.
pub fn check_wide(g: &XiSetMap) -> bool {
    let c = g.component(-1);
    let mut seen = vec![false; g.cod().len(-1)];
    c.len() == seen.len() && c.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
}

/// Every naturality square against every generator of Ξ is a pullback.
pub fn check_cartesian(g: &XiSetMap) -> Result<Report> {
    let (b, a) = (g.dom(), g.cod());
    let mut report = Report::new("cartesian", a.cap());
    for k in -1..=a.cap() {
        if k >= 0 {
            for i in 0..=k as usize {
                test_square(
                    &mut report,
                    &format!("cartesian:d{i}"),
                    k,
                    Square {
                        pa: g.component(k),
                        pb: b.face_table(k, i),
                        ac: a.face_table(k, i),
                        bc: g.component(k - 1),
                    },
                    Corners {
                        p: b.names(k),
                        a: a.names(k),
                        b: b.names(k - 1),
                    },
                )?;
            }
        }
        if k < a.cap() {
            for r in 0..=(k + 2) as usize {
                test_square(
                    &mut report,
                    &format!("cartesian:s[{r}]"),
                    k + 1,
                    Square {
                        pa: g.component(k),
                        pb: b.degen_rep_table(k, r),
                        ac: a.degen_rep_table(k, r),
                        bc: g.component(k + 1),
                    },
                    Corners {
                        p: b.names(k),
                        a: a.names(k),
                        b: b.names(k + 1),
                    },
                )?;
            }
        }
    }
    Ok(report)
}

/// Fibre sizes of `s_0` and `d_1`. All fibres of finite sets are finite, so
/// this never fails; the sizes are kept for reporting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFiniteness {
    pub max_s0_fiber: usize,
    pub max_d1_fiber: usize,
}

pub fn check_locally_finite(x: &FinSSet) -> LocalFiniteness {
    let max_fiber = |table: &[usize], n: usize| {
        let mut counts = vec![0usize; n];
        for &y in table {
            counts[y] += 1;
        }
        counts.into_iter().max().unwrap_or(0)
    };
    LocalFiniteness {
        max_s0_fiber: if x.cap() >= 1 {
            max_fiber(x.degen_table(0, 0), x.len(1))
        } else {
            0
        },
        max_d1_fiber: if x.cap() >= 2 {
            max_fiber(x.face_table(2, 1), x.len(1))
        } else {
            0
        },
    }
}

/// Tightness with its per-arrow dimension bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TightnessReport {
    pub report: Report,
    /// `bounds[a]` is the largest `r` with a nondegenerate `r`-simplex of long edge `a`.
    pub bounds: Vec<usize>,
    pub stable_from: Option<usize>,
}

/// Needs `stable_from = ℓ ≤ cap - 2`, which is then verified on every level
/// above `ℓ`; otherwise the verdict is inconclusive.
pub fn check_tight(x: &FinSSet) -> TightnessReport {
    let mut report = Report::new("tight", x.cap() as isize);
    let Some(ell) = x.stable_from() else {
        report.inconclusive(x.cap() as isize, "stable_from-undeclared");
        return TightnessReport {
            report,
            bounds: Vec::new(),
            stable_from: None,
        };
    };
    if ell + 2 > x.cap() {
        report.inconclusive(x.cap() as isize, format!("stable_from={ell}-above-cap-2"));
        return TightnessReport {
            report,
            bounds: Vec::new(),
            stable_from: None,
        };
    }
    for k in (ell + 1)..=x.cap() {
        if let Some(s) = (0..x.len(k)).find(|&s| !x.is_degenerate(k, s)) {
            report.fail("tight:stable", k as isize, vec![x.name(k, s).into()]);
        }
    }
    if !report.passed() {
        return TightnessReport {
            report,
            bounds: Vec::new(),
            stable_from: None,
        };
    }
    let mut bounds = vec![0usize; if x.cap() >= 1 { x.len(1) } else { 0 }];
    for r in 1..=ell.min(x.cap()) {
        for s in x.nondegenerate(r) {
            let a = x.long_edge(r, s);
            bounds[a] = bounds[a].max(r);
        }
    }
    TightnessReport {
        report,
        bounds,
        stable_from: Some(ell),
    }
}

/// Complete, locally finite and tight.
pub fn check_mobius(x: &FinSSet) -> TightnessReport {
    let mut report = Report::new("mobius", x.cap() as isize);
    let complete = complete_report(x);
    let incomplete = !complete.passed();
    report.absorb(complete, 0);
    let _ = check_locally_finite(x);
    let tight = check_tight(x);
    let TightnessReport {
        report: t,
        bounds,
        stable_from,
    } = tight;
    report.absorb(t, 0);
    if incomplete {
        return TightnessReport {
            report,
            bounds: Vec::new(),
            stable_from: None,
        };
    }
    TightnessReport {
        report,
        bounds,
        stable_from,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presheaf::{counit_eps, i_star, u_star, unit_eta, RawSSet};
    use std::sync::Arc;

    fn chain(n: usize, cap: usize) -> FinSSet {
        FinSSet::representable(n, cap).unwrap()
    }

    /// Vertices 0,1,2 with edges 01 and 12 and nothing else nondegenerate,
    /// built as the 1-skeleton of Δ[2] without the edge 02.
    fn spine(cap: usize) -> FinSSet {
        let full = chain(2, cap);
        let keep = |name: &str| {
            let v: Vec<usize> = name.split('-').map(|c| c.parse().unwrap()).collect();
            !(v.contains(&0) && v.contains(&2))
        };
        let raw = full.to_raw();
        let kept: Vec<Vec<usize>> = (0..=cap)
            .map(|k| {
                (0..full.len(k))
                    .filter(|&s| keep(full.name(k, s)))
                    .collect()
            })
            .collect();
        let pos: Vec<HashMap<usize, usize>> = kept
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, &s)| (s, i)).collect())
            .collect();
        let restrict = |k: usize, t: &Vec<usize>, tk: usize| -> Vec<usize> {
            kept[k].iter().map(|&s| pos[tk][&t[s]]).collect()
        };
        FinSSet::from_raw(RawSSet {
            cap,
            stable_from: Some(1),
            names: kept
                .iter()
                .enumerate()
                .map(|(k, l)| l.iter().map(|&s| full.name(k, s).to_string()).collect())
                .collect(),
            faces: raw
                .faces
                .iter()
                .enumerate()
                .map(|(k, ts)| ts.iter().map(|t| restrict(k, t, k - 1)).collect())
                .collect(),
            degens: raw
                .degens
                .iter()
                .enumerate()
                .map(|(k, ts)| ts.iter().map(|t| restrict(k, t, k + 1)).collect())
                .collect(),
        })
        .unwrap()
    }

    #[test]
    fn chains_and_point_are_segal() {
        assert!(check_segal(&FinSSet::point(4)).passed());
        assert!(check_segal(&chain(2, 4)).passed());
    }

    #[test]
    fn spine_fails_segal_at_two() {
        let x = spine(4);
        assert!(x.validate().is_valid());
        let r = check_segal(&x);
        assert_eq!(r.failing_degrees().into_iter().next(), Some(2));
        let f = &r.findings[0];
        assert_eq!(f.witness, vec!["0-1".to_string(), "1-2".to_string()]);
    }

    #[test]
    fn spine_decomposition_methods_agree() {
        let x = spine(5);
        for (_, a, b) in decomposition_agreement(&x).unwrap() {
            assert_eq!(a, b);
        }
        let direct = check_decomposition(&x, DecompMethod::Direct).unwrap();
        let dec = check_decomposition(&x, DecompMethod::Decalage).unwrap();
        assert_eq!(direct.verdict(), dec.verdict());
    }

    #[test]
    fn chain_passes_decomposition_both_ways() {
        let x = chain(2, 5);
        assert!(check_decomposition(&x, DecompMethod::Direct)
            .unwrap()
            .passed());
        assert!(check_decomposition(&x, DecompMethod::Decalage)
            .unwrap()
            .passed());
    }

    #[test]
    fn completeness() {
        assert!(check_complete(&chain(2, 3)));
        assert!(check_complete(&FinSSet::point(3)));
        assert!(all_degeneracies_injective(&chain(2, 4)));
    }

    #[test]
    fn counits_are_culf() {
        let x = chain(2, 5);
        let (_, c) = dec_bot(&x).unwrap();
        assert!(check_culf(&c).unwrap());
        let eps = counit_eps(&x).unwrap();
        assert!(check_culf(&eps).unwrap());
        let id = SSetMap::identity(Arc::new(x));
        assert!(check_culf(&id).unwrap());
    }

    #[test]
    fn flanked_examples() {
        let x = chain(2, 6);
        let ux = u_star(&x).unwrap();
        assert!(check_flanked(&ux).unwrap().passed());
        assert!(check_flanked_bonus(&ux).unwrap().passed());
        let xi = FinXiSet::representable(1, 3).unwrap();
        assert!(check_flanked(&xi).unwrap().passed());
        assert!(check_flanked_bonus(&xi).unwrap().passed());
        let eta = unit_eta(&ux).unwrap();
        assert!(check_cartesian(&eta).unwrap().passed());
        assert!(check_wide(&XiSetMap::identity(Arc::new(ux.clone()))));
        assert!(check_segal(&i_star(&ux).unwrap()).passed());
    }

    #[test]
    fn planted_flanking_violation() {
        let x = chain(1, 5);
        let ux = u_star(&x).unwrap();
        let mut raw = ux.to_raw();
        // send s_{⊥-1} of every element of A_{-1} to one element
        let t = &mut raw.degens[0][0];
        let first = t[0];
        t.iter_mut().for_each(|v| *v = first);
        let bad = FinXiSet::from_raw(raw).unwrap();
        let report = check_flanked(&bad);
        assert!(report.map(|r| !r.passed()).unwrap_or(true));
    }

    #[test]
    fn tightness_bounds() {
        let x = chain(1, 4);
        let t = check_mobius(&x);
        assert!(t.report.passed(), "{}", t.report);
        let e = x.lookup(1, "0-1").unwrap();
        assert_eq!(t.bounds[e], 1);
        let p = check_mobius(&FinSSet::point(3));
        assert!(p.report.passed());
        assert!(p.bounds.iter().all(|&b| b == 0));
        let undeclared = chain(1, 4).with_stable_from(None);
        assert_eq!(
            check_mobius(&undeclared).report.verdict(),
            Verdict::Inconclusive
        );
    }

    #[test]
    fn report_lines_format() {
        let r = check_segal(&spine(3));
        assert!(r.lines()[0].starts_with("FAIL segal degree=2 witness=0-1,1-2"));
        let ok = check_segal(&FinSSet::point(3));
        assert_eq!(
            ok.lines(),
            vec!["PASS segal degree=3 witness=-".to_string()]
        );
    }
}
