//! Posets, monoids and finite categories, and their nerves.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::presheaf::{guard_level, valid_identifier, FinSSet, RawSSet};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PosetSpec {
    pub elements: Vec<String>,
    pub le: Vec<(String, String)>,
}

/// A finite monoid, possibly with undefined products (`None`). A partial
/// table models a truncation such as `{0, …, n}` under `+`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MonoidSpec {
    pub elements: Vec<String>,
    pub unit: String,
    pub table: Vec<Vec<Option<usize>>>,
}

/// Identities are `(object, arrow)`; arrows `(name, source, target)`;
/// composites `(first, second, result)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CategorySpec {
    pub objects: Vec<String>,
    pub identities: Vec<(String, String)>,
    pub arrows: Vec<(String, String, String)>,
    pub composites: Vec<(String, String, String)>,
}

/// A validated category whose composition may be partial. Strings whose
/// composite is defined form the nerve.
#[derive(Clone, Debug)]
pub struct Category {
    objects: Vec<String>,
    arrows: Vec<String>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    ident: Vec<usize>,
    comp: HashMap<(usize, usize), usize>,
    /// Joiner for simplex names.
    sep: &'static str,
}

fn check_ids<'a>(ids: impl IntoIterator<Item = &'a String>) -> Result<()> {
    let mut seen = BTreeSet::new();
    for id in ids {
        if !valid_identifier(id) {
            return Err(Error::InvalidIdentifier(id.clone()));
        }
        if !seen.insert(id) {
            return Err(Error::invalid(format!("duplicate identifier `{id}`")));
        }
    }
    Ok(())
}

/// A validated finite poset.
#[derive(Clone, Debug)]
pub struct Poset {
    elements: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl PosetSpec {
    pub fn validate(&self) -> Result<Poset> {
        check_ids(&self.elements)?;
        let n = self.elements.len();
        let pos: HashMap<&str, usize> = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in &self.le {
            let i = *pos
                .get(a.as_str())
                .ok_or_else(|| Error::invalid(format!("unknown element `{a}`")))?;
            let j = *pos
                .get(b.as_str())
                .ok_or_else(|| Error::invalid(format!("unknown element `{b}`")))?;
            leq[i][j] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::invalid(format!(
                        "antisymmetry fails for `{}` and `{}`",
                        self.elements[i], self.elements[j]
                    )));
                }
            }
        }
        Ok(Poset {
            elements: self.elements.clone(),
            leq,
        })
    }
}

impl Poset {
    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    /// The closed interval `[x, y]` as a poset.
    pub fn interval(&self, x: usize, y: usize) -> Poset {
        let keep: Vec<usize> = (0..self.elements.len())
            .filter(|&z| self.leq[x][z] && self.leq[z][y])
            .collect();
        Poset {
            elements: keep.iter().map(|&z| self.elements[z].clone()).collect(),
            leq: keep
                .iter()
                .map(|&a| keep.iter().map(|&b| self.leq[a][b]).collect())
                .collect(),
        }
    }

    /// Number of steps in the longest strict chain.
    pub fn height(&self) -> usize {
        let n = self.elements.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (0..n).filter(|&j| self.leq[j][i]).count());
        let mut best = vec![0usize; n];
        for &i in &order {
            for &j in &order {
                if j != i && self.leq[j][i] {
                    best[i] = best[i].max(best[j] + 1);
                }
            }
        }
        best.into_iter().max().unwrap_or(0)
    }

    pub fn to_category(&self) -> Category {
        let n = self.elements.len();
        let mut arrows = Vec::new();
        let mut src = Vec::new();
        let mut tgt = Vec::new();
        let mut index = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                if self.leq[i][j] {
                    index.insert((i, j), arrows.len());
                    arrows.push(format!("{}-{}", self.elements[i], self.elements[j]));
                    src.push(i);
                    tgt.push(j);
                }
            }
        }
        let ident = (0..n).map(|i| index[&(i, i)]).collect();
        let mut comp = HashMap::new();
        for (&(i, j), &f) in &index {
            for k in 0..n {
                if let Some(&g) = index.get(&(j, k)) {
                    comp.insert((f, g), index[&(i, k)]);
                }
            }
        }
        Category {
            objects: self.elements.clone(),
            arrows,
            src,
            tgt,
            ident,
            comp,
            sep: ".",
        }
    }
}

impl MonoidSpec {
    /// Checks unit and associativity laws and the finite-decomposition
    /// property: no non-unit factorisations of the unit, no non-unit
    /// idempotents, and bounded length of non-unit strings.
    pub fn validate(&self) -> Result<Category> {
        check_ids(&self.elements)?;
        let n = self.elements.len();
        let e = self
            .elements
            .iter()
            .position(|x| *x == self.unit)
            .ok_or_else(|| Error::invalid(format!("unit `{}` is not an element", self.unit)))?;
        if self.table.len() != n || self.table.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("multiplication table has the wrong shape"));
        }
        let name = |i: usize| self.elements[i].as_str();
        for x in 0..n {
            if self.table[e][x] != Some(x) || self.table[x][e] != Some(x) {
                return Err(Error::invalid(format!(
                    "`{}` is not a unit for `{}`",
                    name(e),
                    name(x)
                )));
            }
        }
        let mul = |a: Option<usize>, b: Option<usize>| match (a, b) {
            (Some(a), Some(b)) => self.table[a][b],
            _ => None,
        };
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let l = mul(mul(Some(x), Some(y)), Some(z));
                    let r = mul(Some(x), mul(Some(y), Some(z)));
                    if l != r {
                        return Err(Error::invalid(format!(
                            "associativity fails for ({}, {}, {})",
                            name(x),
                            name(y),
                            name(z)
                        )));
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if self.table[x][y] == Some(e) && (x != e || y != e) {
                    return Err(Error::invalid(format!(
                        "finite-decomposition property fails: {}·{} is the unit",
                        name(x),
                        name(y)
                    )));
                }
            }
            if x != e && self.table[x][x] == Some(x) {
                return Err(Error::invalid(format!(
                    "finite-decomposition property fails: `{}` is a non-unit idempotent",
                    name(x)
                )));
            }
        }
        let mut arrows = self.elements.clone();
        arrows.iter_mut().for_each(|a| a.shrink_to_fit());
        let mut comp = HashMap::new();
        for x in 0..n {
            for y in 0..n {
                if let Some(z) = self.table[x][y] {
                    comp.insert((x, y), z);
                }
            }
        }
        let cat = Category {
            objects: vec!["*".to_string()],
            arrows,
            src: vec![0; n],
            tgt: vec![0; n],
            ident: vec![e],
            comp,
            sep: ".",
        };
        if cat.longest_nonidentity_string().is_none() {
            return Err(Error::invalid(
                "finite-decomposition property fails: non-unit factorisations have unbounded length",
            ));
        }
        Ok(cat)
    }
}

impl CategorySpec {
    pub fn validate(&self) -> Result<Category> {
        check_ids(&self.objects)?;
        let ob: HashMap<&str, usize> = self
            .objects
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let obj = |s: &str| {
            ob.get(s)
                .copied()
                .ok_or_else(|| Error::invalid(format!("unknown object `{s}`")))
        };
        let mut arrows = Vec::new();
        let mut src = Vec::new();
        let mut tgt = Vec::new();
        let mut ident = vec![usize::MAX; self.objects.len()];
        for (o, f) in &self.identities {
            let i = obj(o)?;
            if ident[i] != usize::MAX {
                return Err(Error::invalid(format!("object `{o}` has two identities")));
            }
            ident[i] = arrows.len();
            arrows.push(f.clone());
            src.push(i);
            tgt.push(i);
        }
        if let Some(i) = ident.iter().position(|&f| f == usize::MAX) {
            return Err(Error::invalid(format!(
                "object `{}` has no identity",
                self.objects[i]
            )));
        }
        for (f, s, t) in &self.arrows {
            arrows.push(f.clone());
            src.push(obj(s)?);
            tgt.push(obj(t)?);
        }
        check_ids(&arrows)?;
        let ar: HashMap<&str, usize> = arrows
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let arr = |s: &str| {
            ar.get(s)
                .copied()
                .ok_or_else(|| Error::invalid(format!("unknown arrow `{s}`")))
        };
        let mut comp = HashMap::new();
        for f in 0..arrows.len() {
            comp.insert((ident[src[f]], f), f);
            comp.insert((f, ident[tgt[f]]), f);
        }
        for (f, g, h) in &self.composites {
            let (fi, gi, hi) = (arr(f)?, arr(g)?, arr(h)?);
            if tgt[fi] != src[gi] {
                return Err(Error::invalid(format!(
                    "`{f}` and `{g}` are not composable"
                )));
            }
            if src[hi] != src[fi] || tgt[hi] != tgt[gi] {
                return Err(Error::invalid(format!(
                    "`{h}` has the wrong endpoints for `{f}` then `{g}`"
                )));
            }
            if let Some(&old) = comp.get(&(fi, gi)) {
                if old != hi {
                    return Err(Error::invalid(format!(
                        "composite of `{f}` then `{g}` given inconsistently"
                    )));
                }
            }
            comp.insert((fi, gi), hi);
        }
        let n = arrows.len();
        for f in 0..n {
            for g in 0..n {
                if tgt[f] == src[g] && !comp.contains_key(&(f, g)) {
                    return Err(Error::invalid(format!(
                        "composite of `{}` then `{}` is missing",
                        arrows[f], arrows[g]
                    )));
                }
            }
        }
        for f in 0..n {
            for g in 0..n {
                let Some(&fg) = comp.get(&(f, g)) else {
                    continue;
                };
                for h in 0..n {
                    if let Some(&gh) = comp.get(&(g, h)) {
                        if comp[&(fg, h)] != comp[&(f, gh)] {
                            return Err(Error::invalid(format!(
                                "associativity fails for ({}, {}, {})",
                                arrows[f], arrows[g], arrows[h]
                            )));
                        }
                    }
                }
            }
        }
        Ok(Category {
            objects: self.objects.clone(),
            arrows,
            src,
            tgt,
            ident,
            comp,
            sep: ".",
        })
    }
}

impl Category {
    fn is_identity(&self, f: usize) -> bool {
        self.ident[self.src[f]] == f
    }

    /// Longest string of composable non-identities with defined composite;
    /// `None` when unbounded.
    pub fn longest_nonidentity_string(&self) -> Option<usize> {
        // states: (composite so far); edges append a non-identity arrow
        let n = self.arrows.len();
        let mut memo: Vec<Option<usize>> = vec![None; n];
        let mut on_stack = vec![false; n];
        fn go(
            c: &Category,
            f: usize,
            memo: &mut [Option<usize>],
            on_stack: &mut [bool],
        ) -> Option<usize> {
            if let Some(v) = memo[f] {
                return Some(v);
            }
            if on_stack[f] {
                return None;
            }
            on_stack[f] = true;
            let mut best = 0;
            for g in 0..c.arrows.len() {
                if c.is_identity(g) || c.tgt[f] != c.src[g] {
                    continue;
                }
                if let Some(&h) = c.comp.get(&(f, g)) {
                    best = best.max(1 + go(c, h, memo, on_stack)?);
                }
            }
            on_stack[f] = false;
            memo[f] = Some(best);
            Some(best)
        }
        let mut best = 0;
        for f in 0..n {
            if !self.is_identity(f) {
                best = best.max(1 + go(self, f, &mut memo, &mut on_stack)?);
            }
        }
        Some(best)
    }

    /// The nerve truncated at `cap`. Simplices of degree `k ≥ 1` are strings
    /// of `k` arrows whose composite is defined.
    pub fn nerve(&self, cap: usize) -> Result<FinSSet> {
        if cap < 2 {
            return Err(Error::CapTooSmall {
                needed: 2,
                have: cap as isize,
            });
        }
        // level k: (string, composite)
        let mut levels: Vec<Vec<(Vec<usize>, Option<usize>)>> = Vec::with_capacity(cap + 1);
        levels.push((0..self.objects.len()).map(|o| (vec![o], None)).collect());
        levels.push((0..self.arrows.len()).map(|f| (vec![f], Some(f))).collect());
        for k in 2..=cap {
            let mut next = Vec::new();
            for (s, c) in &levels[k - 1] {
                let c = c.unwrap();
                for g in 0..self.arrows.len() {
                    if self.tgt[c] == self.src[g] {
                        if let Some(&h) = self.comp.get(&(c, g)) {
                            let mut t = s.clone();
                            t.push(g);
                            next.push((t, Some(h)));
                        }
                    }
                }
            }
            guard_level(k as isize, next.len())?;
            levels.push(next);
        }
        let lookup: Vec<HashMap<&[usize], usize>> = levels
            .iter()
            .map(|l| {
                l.iter()
                    .enumerate()
                    .map(|(i, (s, _))| (s.as_slice(), i))
                    .collect()
            })
            .collect();
        let names: Vec<Vec<String>> = levels
            .iter()
            .enumerate()
            .map(|(k, l)| {
                l.iter()
                    .map(|(s, _)| {
                        if k == 0 {
                            self.objects[s[0]].clone()
                        } else {
                            s.iter()
                                .map(|&f| self.arrows[f].as_str())
                                .collect::<Vec<_>>()
                                .join(self.sep)
                        }
                    })
                    .collect()
            })
            .collect();
        let faces = (0..=cap)
            .map(|k| {
                if k == 0 {
                    return vec![];
                }
                (0..=k)
                    .map(|i| {
                        levels[k]
                            .iter()
                            .map(|(s, _)| {
                                if k == 1 {
                                    let f = s[0];
                                    return if i == 0 { self.tgt[f] } else { self.src[f] };
                                }
                                let mut t = s.clone();
                                if i == 0 {
                                    t.remove(0);
                                } else if i == k {
                                    t.pop();
                                } else {
                                    let h = self.comp[&(t[i - 1], t[i])];
                                    t.splice(i - 1..=i, [h]);
                                }
                                lookup[k - 1][t.as_slice()]
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let degens = (0..=cap)
            .map(|k| {
                if k == cap {
                    return vec![];
                }
                (0..=k)
                    .map(|j| {
                        levels[k]
                            .iter()
                            .map(|(s, _)| {
                                if k == 0 {
                                    return lookup[1][[self.ident[s[0]]].as_slice()];
                                }
                                let obj = if j == 0 {
                                    self.src[s[0]]
                                } else {
                                    self.tgt[s[j - 1]]
                                };
                                let mut t = s.clone();
                                t.insert(j, self.ident[obj]);
                                lookup[k + 1][t.as_slice()]
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        FinSSet::from_raw(RawSSet {
            cap,
            stable_from: self.longest_nonidentity_string(),
            names,
            faces,
            degens,
        })
    }

    /// Cap with headroom for checks two degrees above the top nondegenerate level.
    pub fn default_cap(&self) -> Option<usize> {
        self.longest_nonidentity_string().map(|l| (l + 3).max(3))
    }
}

/// Nerve of a poset with simplices named by their chains, `x0-x1-…`.
pub fn poset_nerve(p: &Poset, cap: usize) -> Result<FinSSet> {
    let x = p.to_category().nerve(cap)?;
    // rename strings of relations `a-b.b-c` to chains `a-b-c`
    let mut raw = x.to_raw();
    for level in raw.names.iter_mut().skip(1) {
        for name in level.iter_mut() {
            let rels: Vec<&str> = name.split('.').collect();
            let mut chain: Vec<&str> = vec![rels[0]];
            for r in &rels[1..] {
                chain.push(r.rsplit_once('-').map(|(_, b)| b).unwrap_or(r));
            }
            *name = chain.join("-");
        }
    }
    FinSSet::from_raw(raw)
}

pub fn divisors(n: u64) -> PosetSpec {
    let elements: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    let mut le = Vec::new();
    for &a in &elements {
        for &b in &elements {
            if a != b && b % a == 0 {
                le.push((a.to_string(), b.to_string()));
            }
        }
    }
    PosetSpec {
        elements: elements.iter().map(u64::to_string).collect(),
        le,
    }
}

/// Subsets of `{1, …, n}`; the empty set is `0`, others list their members.
pub fn boolean(n: usize) -> PosetSpec {
    let name = |mask: usize| {
        if mask == 0 {
            "0".to_string()
        } else {
            (0..n)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| (b + 1).to_string())
                .collect()
        }
    };
    let mut le = Vec::new();
    for a in 0..1usize << n {
        for b in 0..1usize << n {
            if a != b && a & b == a {
                le.push((name(a), name(b)));
            }
        }
    }
    PosetSpec {
        elements: (0..1 << n).map(name).collect(),
        le,
    }
}

/// The chain `0 < 1 < … < n`.
pub fn chain(n: usize) -> PosetSpec {
    PosetSpec {
        elements: (0..=n).map(|i| i.to_string()).collect(),
        le: (0..n)
            .map(|i| (i.to_string(), (i + 1).to_string()))
            .collect(),
    }
}

/// `{0, …, n}` under addition, undefined past `n`.
pub fn truncated_naturals(n: usize) -> MonoidSpec {
    MonoidSpec {
        elements: (0..=n).map(|i| i.to_string()).collect(),
        unit: "0".to_string(),
        table: (0..=n)
            .map(|a| (0..=n).map(|b| (a + b <= n).then_some(a + b)).collect())
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{check_complete, check_segal};

    #[test]
    fn chain_nerve_sizes() {
        let x = poset_nerve(&chain(1).validate().unwrap(), 3).unwrap();
        assert_eq!(x.level_sizes(), vec![2, 3, 4, 5]);
        assert_eq!(x.stable_from(), Some(1));
        assert!(x.validate().is_valid());
        assert!(x.id(2, "0-0-1").is_some());
    }

    #[test]
    fn antisymmetry_violation_names_the_pair() {
        let spec = PosetSpec {
            elements: vec!["a".into(), "b".into()],
            le: vec![("a".into(), "b".into()), ("b".into(), "a".into())],
        };
        let err = spec.validate().unwrap_err().to_string();
        assert!(err.contains("`a`") && err.contains("`b`"), "{err}");
    }

    #[test]
    fn divisor_lattice_nondegenerate_counts() {
        let p = divisors(12).validate().unwrap();
        assert_eq!(p.height(), 3);
        let x = poset_nerve(&p, 5).unwrap();
        assert_eq!(x.nondegenerate(1).len(), 12);
        let a = x.id(1, "1-12").unwrap();
        let top = x
            .nondegenerate(3)
            .into_iter()
            .filter(|&s| x.long_edge(3, s) == a)
            .count();
        assert_eq!(top, 3);
    }

    #[test]
    fn trivial_monoid_is_a_point() {
        let m = MonoidSpec {
            elements: vec!["e".into()],
            unit: "e".into(),
            table: vec![vec![Some(0)]],
        };
        let x = m.validate().unwrap().nerve(3).unwrap();
        assert_eq!(x.level_sizes(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn max_monoid_is_rejected() {
        let m = MonoidSpec {
            elements: vec!["0".into(), "1".into()],
            unit: "0".into(),
            table: vec![vec![Some(0), Some(1)], vec![Some(1), Some(1)]],
        };
        let err = m.validate().unwrap_err().to_string();
        assert!(err.contains("idempotent"), "{err}");
    }

    #[test]
    fn cyclic_group_is_rejected() {
        let m = MonoidSpec {
            elements: vec!["0".into(), "1".into()],
            unit: "0".into(),
            table: vec![vec![Some(0), Some(1)], vec![Some(1), Some(0)]],
        };
        assert!(m.validate().is_err());
    }

    #[test]
    fn truncated_naturals_nerve() {
        let m = truncated_naturals(6).validate().unwrap();
        let x = m.nerve(8).unwrap();
        assert_eq!(x.stable_from(), Some(6));
        assert!(x.validate().is_valid());
        assert!(check_complete(&x));
        // (1, 6) and (6, 1) cannot be composed, so not Segal
        assert!(!check_segal(&x).passed());
    }

    #[test]
    fn two_object_category_matches_poset() {
        let spec = CategorySpec {
            objects: vec!["x".into(), "y".into()],
            identities: vec![("x".into(), "1x".into()), ("y".into(), "1y".into())],
            arrows: vec![("f".into(), "x".into(), "y".into())],
            composites: vec![],
        };
        let x = spec.validate().unwrap().nerve(3).unwrap();
        let y = poset_nerve(&chain(1).validate().unwrap(), 3).unwrap();
        assert_eq!(x.level_sizes(), y.level_sizes());
        let sx = crate::structure::Structure::from_sset(&x);
        let sy = crate::structure::Structure::from_sset(&y);
        assert!(crate::structure::find_isomorphism(&sx, &sy).is_some());
    }

    #[test]
    fn missing_composite_is_reported() {
        let spec = CategorySpec {
            objects: vec!["x".into(), "y".into(), "z".into()],
            identities: vec![
                ("x".into(), "1x".into()),
                ("y".into(), "1y".into()),
                ("z".into(), "1z".into()),
            ],
            arrows: vec![
                ("f".into(), "x".into(), "y".into()),
                ("g".into(), "y".into(), "z".into()),
            ],
            composites: vec![],
        };
        assert!(spec.validate().unwrap_err().to_string().contains("missing"));
    }
}
