//! Algebraic intervals, factorisation intervals and the registry of interval
//! classes.
//!
//! An interval is stored as a Ξ-set with a singleton in degree `-1`. Its
//! longest edge is `s_{⊥-1} s_{⊤+1}` of that point. Intervals are compared by
//! a canonical relabelling whose serialization is hashed.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::axioms::{
    check_decomposition, check_flanked, check_mobius, check_segal, complete_report, DecompMethod,
    Report,
};
use crate::error::{Error, Result};
use crate::io::{parse_xiset, read_file, write_file, write_xiset};
use crate::presheaf::{i_star, u_star, FinSSet, FinXiSet, RawXiSet, SSetMap, XiSetMap};
use crate::structure::{canonical_labelling, find_isomorphism, Structure};

/// A reduced Ξ-set, intended to be complete, flanked and a decomposition space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicInterval {
    pub data: FinXiSet,
    /// Source object and arrow, when built as a factorisation interval.
    pub provenance: Option<(String, String)>,
}

impl AlgebraicInterval {
    pub fn new(data: FinXiSet) -> Result<Self> {
        if data.cap() < 0 {
            return Err(Error::CapTooSmall {
                needed: 0,
                have: data.cap(),
            });
        }
        if data.len(-1) != 1 {
            return Err(Error::invalid(format!(
                "an interval has exactly one element in degree -1, found {}",
                data.len(-1)
            )));
        }
        Ok(AlgebraicInterval {
            data,
            provenance: None,
        })
    }

    pub fn cap(&self) -> isize {
        self.data.cap()
    }

    /// The longest edge, as an element of degree 1 of the underlying simplicial set.
    pub fn longest_edge(&self) -> usize {
        self.data.sbot(0, self.data.stop(-1, 0))
    }

    pub fn underlying(&self) -> Result<FinSSet> {
        i_star(&self.data)
    }

    /// Completeness, flanking, Segal and the decomposition axiom, each on its
    /// verified range.
    pub fn validate(&self) -> Result<Report> {
        let x = self.underlying()?;
        let mut report = Report::new("interval", self.cap());
        report.absorb(complete_report(&x), 0);
        report.absorb(check_flanked(&self.data)?, 0);
        report.absorb(check_segal(&x), 0);
        if x.cap() >= 3 {
            report.absorb(check_decomposition(&x, DecompMethod::Decalage)?, 0);
        }
        Ok(report)
    }

    /// The largest `r` with a nondegenerate `r`-simplex in the underlying
    /// simplicial set. Needs a declared `stable_from` within the cap.
    pub fn top_dimension(&self) -> Result<usize> {
        let ell = self
            .data
            .stable_from()
            .ok_or_else(|| Error::Inconclusive("interval has no declared stable_from".into()))?;
        if ell as isize > self.cap() {
            return Err(Error::Inconclusive(format!(
                "stable_from {ell} lies above cap {}",
                self.cap()
            )));
        }
        Ok((1..=ell)
            .rev()
            .find(|&r| {
                (0..self.data.len(r as isize)).any(|x| !self.data.is_degenerate(r as isize, x))
            })
            .unwrap_or(0))
    }
}

/// The Ξ-set of pairs `(b, x)` with `x ∈ A_n` lying over `base[b] ∈ A_{-1}`.
/// Also returns, per level, the `(b, x)` behind each new element.
fn fiber_over(
    a: &FinXiSet,
    base: &[(String, usize)],
    plain: bool,
) -> Result<(FinXiSet, Vec<Vec<(usize, usize)>>)> {
    let cap = a.cap();
    let long: Vec<Vec<usize>> = (-1..=cap)
        .map(|k| (0..a.len(k)).map(|x| a.long_edge(k, x)).collect())
        .collect();
    let mut elems: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut names: Vec<Vec<String>> = Vec::new();
    for k in -1..=cap {
        let l = (k + 1) as usize;
        let mut level = Vec::new();
        let mut level_names = Vec::new();
        for (b, (bname, over)) in base.iter().enumerate() {
            for x in 0..a.len(k) {
                if long[l][x] == *over {
                    level.push((b, x));
                    level_names.push(if plain {
                        a.name(k, x).to_string()
                    } else {
                        format!("{bname}@{}", a.name(k, x))
                    });
                }
            }
        }
        elems.push(level);
        names.push(level_names);
    }
    let index: Vec<HashMap<(usize, usize), usize>> = elems
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, &p)| (p, i)).collect())
        .collect();
    let map = |l: usize, tgt: usize, table: &[usize]| -> Vec<usize> {
        elems[l]
            .iter()
            .map(|&(b, x)| index[tgt][&(b, table[x])])
            .collect()
    };
    let mut faces = Vec::new();
    let mut degens = Vec::new();
    for k in -1..=cap {
        let l = (k + 1) as usize;
        faces.push(if k >= 0 {
            (0..=k as usize)
                .map(|i| map(l, l - 1, a.face_table(k, i)))
                .collect()
        } else {
            vec![]
        });
        degens.push(if k < cap {
            (0..=(k + 2) as usize)
                .map(|r| map(l, l + 1, a.degen_rep_table(k, r)))
                .collect()
        } else {
            vec![]
        });
    }
    let out = FinXiSet::from_raw(RawXiSet {
        cap,
        stable_from: a.stable_from(),
        names,
        faces,
        degens,
    })?;
    // from_raw sorts each level by name; realign the element lists
    let elems = elems
        .into_iter()
        .enumerate()
        .map(|(l, level)| {
            let k = l as isize - 1;
            let mut sorted = vec![(0, 0); level.len()];
            for p in level {
                let name = if plain {
                    a.name(k, p.1).to_string()
                } else {
                    format!("{}@{}", base[p.0].0, a.name(k, p.1))
                };
                sorted[out.id(k, &name).expect("name survives")] = p;
            }
            sorted
        })
        .collect();
    Ok((out, elems))
}

/// Factors `g: B → A` as a wide map `B → A'` followed by a cartesian map
/// `A' → A`, where `A'_n = B_{-1} ×_{A_{-1}} A_n`.
pub fn wide_cartesian_factor(g: &XiSetMap) -> Result<(XiSetMap, XiSetMap)> {
    let (b, a) = (g.dom(), g.cod());
    let base: Vec<(String, usize)> = (0..b.len(-1))
        .map(|y| (b.name(-1, y).to_string(), g.component(-1)[y]))
        .collect();
    let (mid, elems) = fiber_over(a, &base, false)?;
    let mid = Arc::new(mid);
    let lookup: Vec<HashMap<(usize, usize), usize>> = elems
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, &p)| (p, i)).collect())
        .collect();
    let wide_components = (-1..=b.cap())
        .map(|k| {
            let l = (k + 1) as usize;
            (0..b.len(k))
                .map(|y| lookup[l][&(b.long_edge(k, y), g.component(k)[y])])
                .collect()
        })
        .collect();
    let cart_components = elems
        .iter()
        .map(|l| l.iter().map(|&(_, x)| x).collect())
        .collect();
    let wide = XiSetMap::new(b.clone(), mid.clone(), wide_components)?;
    let cartesian = XiSetMap::new(mid, a.clone(), cart_components)?;
    Ok((wide, cartesian))
}

/// `I(a)_k = { σ ∈ X_{k+2} : long edge σ = a }` without precondition checks.
fn raw_interval(x: &FinSSet, a: usize) -> Result<(FinXiSet, Vec<Vec<usize>>)> {
    raw_interval_in(&u_star(x)?, a)
}

fn raw_interval_in(ux: &FinXiSet, a: usize) -> Result<(FinXiSet, Vec<Vec<usize>>)> {
    let (data, elems) = fiber_over(ux, &[(ux.name(-1, a).to_string(), a)], true)?;
    Ok((
        data,
        elems
            .into_iter()
            .map(|l| l.into_iter().map(|(_, s)| s).collect())
            .collect(),
    ))
}

/// The factorisation interval of `a ∈ X_1`, with its map `i^* I(a) → X`
/// given by `d_⊤ d_⊥` on the ambient simplices. The interval has cap
/// `X.cap - 2`.
pub fn factorisation_interval(x: &FinSSet, a: usize) -> Result<(AlgebraicInterval, SSetMap)> {
    check_interval_input(x)?;
    if a >= x.len(1) {
        return Err(Error::UnknownSimplex {
            degree: 1,
            id: format!("#{a}"),
        });
    }
    interval_with_embedding(x, &u_star(x)?, a)
}

/// Factorisation intervals of every arrow, in arrow order.
pub fn factorisation_intervals(x: &FinSSet) -> Result<Vec<(AlgebraicInterval, SSetMap)>> {
    check_interval_input(x)?;
    let ux = u_star(x)?;
    (0..x.len(1))
        .map(|a| interval_with_embedding(x, &ux, a))
        .collect()
}

fn check_interval_input(x: &FinSSet) -> Result<()> {
    if x.cap() < 3 {
        return Err(Error::CapTooSmall {
            needed: 3,
            have: x.cap() as isize,
        });
    }
    if !crate::axioms::check_complete(x) {
        return Err(Error::precondition(
            "factorisation intervals need a complete simplicial set",
        ));
    }
    Ok(())
}

fn interval_with_embedding(
    x: &FinSSet,
    ux: &FinXiSet,
    a: usize,
) -> Result<(AlgebraicInterval, SSetMap)> {
    let (data, elems) = raw_interval_in(ux, a)?;
    let cap = data.cap() as usize;
    let components = (0..=cap)
        .map(|k| {
            elems[k + 1]
                .iter()
                .map(|&s| x.face(k + 1, k + 1, x.face(k + 2, 0, s)))
                .collect()
        })
        .collect();
    let mut interval = AlgebraicInterval::new(data)?;
    interval.provenance = Some((String::new(), x.name(1, a).to_string()));
    let embed = SSetMap::new(
        Arc::new(interval.underlying()?),
        Arc::new(x.truncate(cap)?),
        components,
    )?;
    Ok((interval, embed))
}

/// An interval in canonical form with its content digest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalClass {
    pub name: String,
    pub digest: String,
    pub canonical: AlgebraicInterval,
    pub top_dimension: usize,
}

/// Rebuilds the interval with cap `max(L + 2, 3)` and `stable_from = L`.
/// Extension goes through the skeletal extension of the underlying
/// simplicial set, where the interval is recovered as `I(a)`.
pub fn normalize_cap(a: &AlgebraicInterval) -> Result<AlgebraicInterval> {
    let top = a.top_dimension()?;
    let cap = (top as isize + 2).max(3);
    let data = if a.cap() >= cap {
        a.data.truncate(cap)?.with_stable_from(Some(top))
    } else {
        let x = a
            .underlying()?
            .with_stable_from(Some(top))
            .extend(cap as usize + 2)?;
        raw_interval(&x, a.longest_edge())?
            .0
            .with_stable_from(Some(top))
    };
    Ok(AlgebraicInterval {
        data,
        provenance: a.provenance.clone(),
    })
}

fn relabel(a: &FinXiSet, perm: &[Vec<usize>]) -> Result<FinXiSet> {
    let width = a
        .level_sizes()
        .into_iter()
        .max()
        .unwrap_or(1)
        .saturating_sub(1)
        .to_string()
        .len();
    let cap = a.cap();
    let mut names = Vec::new();
    let mut faces = Vec::new();
    let mut degens = Vec::new();
    let permute = |l: usize, tgt: usize, table: &[usize]| {
        let mut out = vec![0; table.len()];
        for (x, &y) in table.iter().enumerate() {
            out[perm[l][x]] = perm[tgt][y];
        }
        out
    };
    for k in -1..=cap {
        let l = (k + 1) as usize;
        names.push((0..a.len(k)).map(|j| format!("n{k}_{j:0width$}")).collect());
        faces.push(if k >= 0 {
            (0..=k as usize)
                .map(|i| permute(l, l - 1, a.face_table(k, i)))
                .collect()
        } else {
            vec![]
        });
        degens.push(if k < cap {
            (0..=(k + 2) as usize)
                .map(|r| permute(l, l + 1, a.degen_rep_table(k, r)))
                .collect()
        } else {
            vec![]
        });
    }
    FinXiSet::from_raw(RawXiSet {
        cap,
        stable_from: a.stable_from(),
        names,
        faces,
        degens,
    })
}

pub fn digest_of(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Canonical form: cap normalised, simplices renamed `n<k>_<j>` by a
/// canonical labelling, digest the SHA-256 of the XISET serialization.
pub fn canonicalize(a: &AlgebraicInterval) -> Result<IntervalClass> {
    let normal = normalize_cap(a)?;
    let top_dimension = normal.data.stable_from().unwrap_or(0);
    let perm = canonical_labelling(&Structure::from_xiset(&normal.data));
    let data = relabel(&normal.data, &perm)?;
    let digest = digest_of(&write_xiset(&data));
    let name = if data.level_sizes().iter().all(|&n| n == 1) {
        "I_triv".to_string()
    } else {
        format!("I_{}", &digest[..8])
    };
    Ok(IntervalClass {
        name,
        digest,
        canonical: AlgebraicInterval {
            data,
            provenance: None,
        },
        top_dimension,
    })
}

/// A levelwise bijection commuting with every structure map, as
/// `perm[k + 1][x] = y`.
pub fn intervals_isomorphic(
    a: &AlgebraicInterval,
    b: &AlgebraicInterval,
) -> Result<Option<Vec<Vec<usize>>>> {
    if a.cap() != b.cap() {
        return Err(Error::CapMismatch(a.cap(), b.cap()));
    }
    Ok(find_isomorphism(
        &Structure::from_xiset(&a.data),
        &Structure::from_xiset(&b.data),
    ))
}

/// Isomorphism of truncated simplicial sets, as `perm[k][x] = y`.
pub fn ssets_isomorphic(x: &FinSSet, y: &FinSSet) -> Result<Option<Vec<Vec<usize>>>> {
    if x.cap() != y.cap() {
        return Err(Error::CapMismatch(x.cap() as isize, y.cap() as isize));
    }
    Ok(find_isomorphism(
        &Structure::from_sset(x),
        &Structure::from_sset(y),
    ))
}

/// A wide map `Δ[k] → A`, stored as a `k`-simplex of `i^*A` whose long edge
/// is the longest edge of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdividedInterval {
    pub k: usize,
    pub target: String,
    pub widemap: usize,
}

pub fn subdivisions(
    c: &IntervalClass,
    k: usize,
    nondegenerate: bool,
) -> Result<Vec<SubdividedInterval>> {
    if k as isize > c.canonical.cap() {
        return Err(Error::CapTooSmall {
            needed: k as isize,
            have: c.canonical.cap(),
        });
    }
    let x = c.canonical.underlying()?;
    let a = c.canonical.longest_edge();
    let pool: Vec<usize> = if nondegenerate {
        x.nondegenerate(k)
    } else {
        (0..x.len(k)).collect()
    };
    Ok(pool
        .into_iter()
        .filter(|&s| x.long_edge(k, s) == a)
        .map(|s| SubdividedInterval {
            k,
            target: c.digest.clone(),
            widemap: s,
        })
        .collect())
}

/// Outcome of Möbius certification: the check report, and the number of
/// nondegenerate `r`-simplices with the longest edge for `r = 0..=L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusCertificate {
    pub report: Report,
    pub profile: Vec<usize>,
    pub total: usize,
}

impl MobiusCertificate {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

pub fn certify_mobius_interval(c: &IntervalClass) -> Result<MobiusCertificate> {
    let x = c.canonical.underlying()?;
    let report = check_mobius(&x).report;
    let mut profile = Vec::new();
    for r in 0..=c.top_dimension {
        profile.push(subdivisions(c, r, true)?.len());
    }
    let total = profile.iter().sum();
    Ok(MobiusCertificate {
        report,
        profile,
        total,
    })
}

/// Classes of `I(a)` for every arrow `a` of `X`. `X` is extended first when
/// its cap leaves no room to certify the intervals' top dimension.
pub fn arrow_classes(x: &FinSSet) -> Result<Vec<IntervalClass>> {
    let ell = x
        .stable_from()
        .ok_or_else(|| Error::Inconclusive("no declared stable_from".into()))?;
    let x = if x.cap() < ell + 3 {
        x.extend(ell + 3)?
    } else {
        x.clone()
    };
    if !crate::axioms::check_complete(&x) {
        return Err(Error::precondition(
            "factorisation intervals need a complete simplicial set",
        ));
    }
    let ux = u_star(&x)?;
    (0..x.len(1))
        .map(|a| {
            let (data, _) = raw_interval_in(&ux, a)?;
            canonicalize(&AlgebraicInterval::new(data)?)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegistryEntry {
    pub class: IntervalClass,
    pub mobius: bool,
}

/// A content-addressed set of interval classes, keyed by digest.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Registry {
    entries: BTreeMap<String, RegistryEntry>,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, digest: &str) -> Option<&RegistryEntry> {
        self.entries.get(digest)
    }

    pub fn contains(&self, digest: &str) -> bool {
        self.entries.contains_key(digest)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&String, &RegistryEntry)> {
        self.entries.iter()
    }

    /// Digest for a name or a digest prefix of at least 8 characters.
    pub fn resolve(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(d, e)| e.class.name == key || (key.len() >= 8 && d.starts_with(key)))
            .map(|(d, _)| d.as_str())
    }

    pub fn insert(&mut self, a: &AlgebraicInterval) -> Result<String> {
        self.insert_class(canonicalize(a)?)
    }

    /// Inserts a class after Möbius certification; duplicates are ignored.
    pub fn insert_class(&mut self, class: IntervalClass) -> Result<String> {
        let digest = class.digest.clone();
        if self.entries.contains_key(&digest) {
            return Ok(digest);
        }
        let cert = certify_mobius_interval(&class)?;
        if !cert.passed() {
            return Err(Error::Registry(format!(
                "interval {} is not a certified Möbius interval",
                class.name
            )));
        }
        self.entries.insert(
            digest.clone(),
            RegistryEntry {
                class,
                mobius: true,
            },
        );
        Ok(digest)
    }

    /// Digests of `I(b)` for every arrow `b` of the entry, in arrow order.
    pub fn subintervals(&self, digest: &str) -> Result<Vec<IntervalClass>> {
        let entry = self
            .get(digest)
            .ok_or_else(|| Error::Registry(format!("unknown digest {digest}")))?;
        let x = entry.class.canonical.underlying()?;
        arrow_classes(&x.extend(entry.class.top_dimension + 4)?)
    }

    /// Inserts subintervals until nothing new appears. Returns the number added.
    pub fn close(&mut self) -> Result<usize> {
        let mut todo: Vec<String> = self.entries.keys().cloned().collect();
        let mut added = 0;
        while let Some(d) = todo.pop() {
            for class in self.subintervals(&d)? {
                if !self.contains(&class.digest) {
                    let new = self.insert_class(class)?;
                    todo.push(new);
                    added += 1;
                }
            }
        }
        Ok(added)
    }

    pub fn is_closed(&self) -> Result<bool> {
        for d in self.entries.keys() {
            if self
                .subintervals(d)?
                .iter()
                .any(|c| !self.contains(&c.digest))
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Writes `index.tsv` and one `<digest>.xiset` per entry.
    pub fn save(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|e| Error::Io {
            path: dir.display().to_string(),
            message: e.to_string(),
        })?;
        let mut index = String::new();
        for (d, e) in &self.entries {
            index.push_str(&format!(
                "{d}\t{}\t{}\t{}\n",
                e.class.name,
                u8::from(e.mobius),
                e.class.canonical.cap()
            ));
            write_file(
                &dir.join(format!("{d}.xiset")),
                &write_xiset(&e.class.canonical.data),
            )?;
        }
        write_file(&dir.join("index.tsv"), &index)
    }

    /// Reads a registry directory; a missing directory is an empty registry.
    /// Each file's digest is recomputed and must match its index line.
    pub fn load(dir: &Path) -> Result<Registry> {
        let index_path = dir.join("index.tsv");
        if !index_path.exists() {
            return Ok(Registry::new());
        }
        let text = read_file(&index_path)?;
        let mut entries = BTreeMap::new();
        for (n, line) in text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
        {
            let bad = |m: &str| Error::Parse {
                path: index_path.display().to_string(),
                line: n + 1,
                message: m.to_string(),
            };
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 4 {
                return Err(bad("expected four tab-separated fields"));
            }
            let path = dir.join(format!("{}.xiset", fields[0]));
            let body = read_file(&path)?;
            if digest_of(&body) != fields[0] {
                return Err(bad("digest does not match file contents"));
            }
            let data = parse_xiset(&body, &path.display().to_string())?;
            let top_dimension = data
                .stable_from()
                .ok_or_else(|| bad("entry lacks stable_from"))?;
            let canonical = AlgebraicInterval::new(data)?;
            let class = IntervalClass {
                name: fields[1].to_string(),
                digest: fields[0].to_string(),
                canonical,
                top_dimension,
            };
            entries.insert(
                fields[0].to_string(),
                RegistryEntry {
                    class,
                    mobius: fields[2] == "1",
                },
            );
        }
        Ok(Registry { entries })
    }
}
