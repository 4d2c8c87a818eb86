//! Isomorphism search and canonical labelling for finite multi-sorted sets
//! with labelled unary maps.
//!
//! Presheaves are flattened to such structures: one sort per level, one map
//! per structure-map table. Both algorithms run colour refinement first and
//! then branch on the first non-singleton cell.

use crate::presheaf::{FinSSet, FinXiSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnaryMap {
    pub src: usize,
    pub tgt: usize,
    pub table: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Structure {
    pub sizes: Vec<usize>,
    pub maps: Vec<UnaryMap>,
}

impl Structure {
    pub fn from_sset(x: &FinSSet) -> Self {
        let cap = x.cap();
        let mut maps = Vec::new();
        for k in 0..=cap {
            if k > 0 {
                for i in 0..=k {
                    maps.push(UnaryMap {
                        src: k,
                        tgt: k - 1,
                        table: x.face_table(k, i).to_vec(),
                    });
                }
            }
            if k < cap {
                for j in 0..=k {
                    maps.push(UnaryMap {
                        src: k,
                        tgt: k + 1,
                        table: x.degen_table(k, j).to_vec(),
                    });
                }
            }
        }
        Structure {
            sizes: x.level_sizes(),
            maps,
        }
    }

    /// Sort `l` is Ξ-degree `l - 1`.
    pub fn from_xiset(a: &FinXiSet) -> Self {
        let cap = a.cap();
        let mut maps = Vec::new();
        for k in -1..=cap {
            let l = (k + 1) as usize;
            if k >= 0 {
                for i in 0..=k as usize {
                    maps.push(UnaryMap {
                        src: l,
                        tgt: l - 1,
                        table: a.face_table(k, i).to_vec(),
                    });
                }
            }
            if k < cap {
                for r in 0..=(k + 2) as usize {
                    maps.push(UnaryMap {
                        src: l,
                        tgt: l + 1,
                        table: a.degen_rep_table(k, r).to_vec(),
                    });
                }
            }
        }
        Structure {
            sizes: a.level_sizes(),
            maps,
        }
    }

    fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.sizes
            .iter()
            .map(|s| {
                let o = acc;
                acc += s;
                o
            })
            .collect()
    }

    fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Tables relabelled by `perm[sort][old] = new`, concatenated.
    fn serialize(&self, perm: &[Vec<usize>]) -> Vec<u32> {
        let mut out: Vec<u32> = self.sizes.iter().map(|&s| s as u32).collect();
        for m in &self.maps {
            let mut relabelled = vec![0u32; m.table.len()];
            for (x, &y) in m.table.iter().enumerate() {
                relabelled[perm[m.src][x]] = perm[m.tgt][y] as u32;
            }
            out.extend(relabelled);
        }
        out
    }

    pub fn is_isomorphism(&self, other: &Structure, perm: &[Vec<usize>]) -> bool {
        self.sizes == other.sizes
            && self.maps.len() == other.maps.len()
            && self.maps.iter().zip(&other.maps).all(|(m, n)| {
                m.src == n.src
                    && m.tgt == n.tgt
                    && m.table
                        .iter()
                        .enumerate()
                        .all(|(x, &y)| n.table[perm[m.src][x]] == perm[m.tgt][y])
            })
    }
}

/// Adjacency of the flattened element graph.
struct Graph {
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<(u32, usize)>>,
}

impl Graph {
    /// Disjoint union of the given structures, which must share map labels.
    fn build(parts: &[&Structure]) -> (Graph, Vec<u32>) {
        let n: usize = parts.iter().map(|s| s.total()).sum();
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        let mut colours = Vec::with_capacity(n);
        let mut base = 0;
        for s in parts {
            let off = s.offsets();
            for (sort, &size) in s.sizes.iter().enumerate() {
                colours.extend(std::iter::repeat(sort as u32).take(size));
            }
            for (label, m) in s.maps.iter().enumerate() {
                for (x, &y) in m.table.iter().enumerate() {
                    let gx = base + off[m.src] + x;
                    let gy = base + off[m.tgt] + y;
                    out[gx].push(gy);
                    inn[gy].push((label as u32, gx));
                }
            }
            base += s.total();
        }
        (Graph { out, inn }, colours)
    }

    /// Refine to the coarsest equitable partition below `colours`.
    fn refine(&self, colours: &mut [u32]) {
        let mut count = distinct(colours);
        loop {
            let sigs: Vec<(u32, Vec<u32>, Vec<(u32, u32)>)> = (0..colours.len())
                .map(|e| {
                    let out = self.out[e].iter().map(|&t| colours[t]).collect();
                    let mut inn: Vec<(u32, u32)> =
                        self.inn[e].iter().map(|&(l, s)| (l, colours[s])).collect();
                    inn.sort_unstable();
                    (colours[e], out, inn)
                })
                .collect();
            let mut ranked: Vec<&(u32, Vec<u32>, Vec<(u32, u32)>)> = sigs.iter().collect();
            ranked.sort();
            ranked.dedup();
            for (e, sig) in sigs.iter().enumerate() {
                colours[e] = ranked.binary_search(&sig).unwrap() as u32;
            }
            if ranked.len() == count {
                return;
            }
            count = ranked.len();
        }
    }
}

fn distinct(colours: &[u32]) -> usize {
    let mut c = colours.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn individualize(colours: &[u32], chosen: &[usize]) -> Vec<u32> {
    let mut next: Vec<u32> = colours.iter().map(|&c| 2 * c + 1).collect();
    for &x in chosen {
        next[x] -= 1;
    }
    next
}

/// The first colour (in colour order) held by more than one element.
fn first_open_cell(colours: &[u32]) -> Option<u32> {
    let mut counts = vec![0usize; colours.len()];
    for &c in colours {
        counts[c as usize] += 1;
    }
    counts.iter().position(|&n| n > 1).map(|c| c as u32)
}

/// A canonical relabelling: `perm[sort][old] = new`. Isomorphic structures
/// yield identical relabelled tables.
pub fn canonical_labelling(s: &Structure) -> Vec<Vec<usize>> {
    let (graph, mut colours) = Graph::build(&[s]);
    graph.refine(&mut colours);
    let mut best: Option<(Vec<u32>, Vec<Vec<usize>>)> = None;
    canon_search(s, &graph, colours, &mut best);
    best.map(|b| b.1).unwrap_or_default()
}

fn canon_search(
    s: &Structure,
    graph: &Graph,
    colours: Vec<u32>,
    best: &mut Option<(Vec<u32>, Vec<Vec<usize>>)>,
) {
    match first_open_cell(&colours) {
        None => {
            let perm = leaf_permutation(s, &colours);
            let ser = s.serialize(&perm);
            if best.as_ref().map_or(true, |(b, _)| ser < *b) {
                *best = Some((ser, perm));
            }
        }
        Some(cell) => {
            for x in (0..colours.len()).filter(|&x| colours[x] == cell) {
                let mut next = individualize(&colours, &[x]);
                graph.refine(&mut next);
                canon_search(s, graph, next, best);
            }
        }
    }
}

fn leaf_permutation(s: &Structure, colours: &[u32]) -> Vec<Vec<usize>> {
    let off = s.offsets();
    s.sizes
        .iter()
        .enumerate()
        .map(|(sort, &size)| {
            let block = &colours[off[sort]..off[sort] + size];
            let min = block.iter().copied().min().unwrap_or(0);
            block.iter().map(|&c| (c - min) as usize).collect()
        })
        .collect()
}

/// A structure-preserving bijection `a → b`, as `perm[sort][x] = y`.
pub fn find_isomorphism(a: &Structure, b: &Structure) -> Option<Vec<Vec<usize>>> {
    if a.sizes != b.sizes
        || a.maps.len() != b.maps.len()
        || a.maps
            .iter()
            .zip(&b.maps)
            .any(|(m, n)| m.src != n.src || m.tgt != n.tgt)
    {
        return None;
    }
    let (graph, mut colours) = Graph::build(&[a, b]);
    graph.refine(&mut colours);
    let split = a.total();
    let perm = iso_search(&graph, colours, split)?;
    let (oa, ob) = (a.offsets(), b.offsets());
    let result: Vec<Vec<usize>> = a
        .sizes
        .iter()
        .enumerate()
        .map(|(sort, &size)| {
            (0..size)
                .map(|x| perm[oa[sort] + x] - split - ob[sort])
                .collect()
        })
        .collect();
    a.is_isomorphism(b, &result).then_some(result)
}

fn iso_search(graph: &Graph, colours: Vec<u32>, split: usize) -> Option<Vec<usize>> {
    let n = colours.len();
    let mut balance = vec![0i64; n];
    for (e, &c) in colours.iter().enumerate() {
        balance[c as usize] += if e < split { 1 } else { -1 };
    }
    if balance.iter().any(|&b| b != 0) {
        return None;
    }
    let mut counts = vec![0usize; n];
    for &c in &colours[..split] {
        counts[c as usize] += 1;
    }
    match counts.iter().position(|&k| k > 1) {
        None => {
            let mut by_colour = vec![usize::MAX; n];
            for e in split..n {
                by_colour[colours[e] as usize] = e;
            }
            Some((0..split).map(|e| by_colour[colours[e] as usize]).collect())
        }
        Some(cell) => {
            let cell = cell as u32;
            let x = (0..split).find(|&e| colours[e] == cell)?;
            for y in (split..n).filter(|&e| colours[e] == cell) {
                let mut next = individualize(&colours, &[x, y]);
                graph.refine(&mut next);
                if let Some(found) = iso_search(graph, next, split) {
                    return Some(found);
                }
            }
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Structure {
        Structure {
            sizes: vec![n],
            maps: vec![UnaryMap {
                src: 0,
                tgt: 0,
                table: (0..n).map(|i| (i + 1) % n).collect(),
            }],
        }
    }

    fn relabel(s: &Structure, perm: &[Vec<usize>]) -> Structure {
        let maps = s
            .maps
            .iter()
            .map(|m| {
                let mut t = vec![0; m.table.len()];
                for (x, &y) in m.table.iter().enumerate() {
                    t[perm[m.src][x]] = perm[m.tgt][y];
                }
                UnaryMap {
                    src: m.src,
                    tgt: m.tgt,
                    table: t,
                }
            })
            .collect();
        Structure {
            sizes: s.sizes.clone(),
            maps,
        }
    }

    #[test]
    fn cycles_are_canonically_equal_under_relabelling() {
        let c = cycle(6);
        let shuffled = relabel(&c, &[vec![3, 0, 5, 1, 4, 2]]);
        let p = canonical_labelling(&c);
        let q = canonical_labelling(&shuffled);
        assert_eq!(c.serialize(&p), shuffled.serialize(&q));
        assert!(find_isomorphism(&c, &shuffled).is_some());
    }

    #[test]
    fn distinct_cycle_structures_are_separated() {
        // one 6-cycle vs two 3-cycles
        let a = cycle(6);
        let b = Structure {
            sizes: vec![6],
            maps: vec![UnaryMap {
                src: 0,
                tgt: 0,
                table: vec![1, 2, 0, 4, 5, 3],
            }],
        };
        assert!(find_isomorphism(&a, &b).is_none());
        assert_ne!(
            a.serialize(&canonical_labelling(&a)),
            b.serialize(&canonical_labelling(&b))
        );
    }

    #[test]
    fn two_sorted_structure() {
        // a bipartite incidence: edges with source and target vertices
        let a = Structure {
            sizes: vec![3, 2],
            maps: vec![
                UnaryMap {
                    src: 1,
                    tgt: 0,
                    table: vec![0, 1],
                },
                UnaryMap {
                    src: 1,
                    tgt: 0,
                    table: vec![1, 2],
                },
            ],
        };
        let b = relabel(&a, &[vec![2, 0, 1], vec![1, 0]]);
        let iso = find_isomorphism(&a, &b).unwrap();
        assert!(a.is_isomorphism(&b, &iso));
        // the same path with its edges listed in the other order
        let rev = Structure {
            sizes: vec![3, 2],
            maps: vec![
                UnaryMap {
                    src: 1,
                    tgt: 0,
                    table: vec![1, 0],
                },
                UnaryMap {
                    src: 1,
                    tgt: 0,
                    table: vec![2, 1],
                },
            ],
        };
        assert!(find_isomorphism(&a, &rev).is_some());
        let star = Structure {
            sizes: vec![3, 2],
            maps: vec![
                UnaryMap {
                    src: 1,
                    tgt: 0,
                    table: vec![0, 0],
                },
                UnaryMap {
                    src: 1,
                    tgt: 0,
                    table: vec![1, 2],
                },
            ],
        };
        assert!(find_isomorphism(&a, &star).is_none());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_structure() -> impl Strategy<Value = Structure> {
            (1usize..6, 1usize..6).prop_flat_map(|(n0, n1)| {
                (
                    proptest::collection::vec(0..n0, n1),
                    proptest::collection::vec(0..n0, n1),
                    proptest::collection::vec(0..n1, n0),
                )
                    .prop_map(move |(f, g, h)| Structure {
                        sizes: vec![n0, n1],
                        maps: vec![
                            UnaryMap {
                                src: 1,
                                tgt: 0,
                                table: f,
                            },
                            UnaryMap {
                                src: 1,
                                tgt: 0,
                                table: g,
                            },
                            UnaryMap {
                                src: 0,
                                tgt: 1,
                                table: h,
                            },
                        ],
                    })
            })
        }

        fn arb_perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
            Just((0..n).collect::<Vec<_>>()).prop_shuffle()
        }

        proptest! {
            #[test]
            fn canonical_form_is_relabelling_invariant(
                (s, p0, p1) in arb_structure().prop_flat_map(|s| {
                    let (a, b) = (s.sizes[0], s.sizes[1]);
                    (Just(s), arb_perm(a), arb_perm(b))
                })
            ) {
                let t = relabel(&s, &[p0, p1]);
                prop_assert_eq!(
                    s.serialize(&canonical_labelling(&s)),
                    t.serialize(&canonical_labelling(&t))
                );
                let iso = find_isomorphism(&s, &t);
                prop_assert!(iso.is_some());
            }

            #[test]
            fn canonical_equality_matches_isomorphism(a in arb_structure(), b in arb_structure()) {
                let same = a.sizes == b.sizes
                    && a.serialize(&canonical_labelling(&a)) == b.serialize(&canonical_labelling(&b));
                prop_assert_eq!(same, find_isomorphism(&a, &b).is_some());
            }
        }
    }
}
