use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use decomp_core::axioms::{check_decomposition, check_segal, DecompMethod};
use decomp_core::incidence::{mobius, verify_inversion};
use decomp_core::ingest::{poset_nerve, Poset, PosetSpec};

fn rota(
    p: &Poset,
    x: usize,
    y: usize,
    memo: &mut HashMap<(usize, usize), BigRational>,
) -> BigRational {
    if let Some(v) = memo.get(&(x, y)) {
        return v.clone();
    }
    let v = if x == y {
        BigRational::one()
    } else {
        let mut s = BigRational::zero();
        for z in 0..p.elements().len() {
            if z != y && p.leq(x, z) && p.leq(z, y) {
                s += rota(p, x, z, memo);
            }
        }
        -s
    };
    memo.insert((x, y), v.clone());
    v
}

// relations only go from lower to higher index, so antisymmetry is automatic
fn random_poset() -> impl Strategy<Value = Poset> {
    (1usize..6).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let elements: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
            let mut le = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if bits[i * n + j] {
                        le.push((elements[i].clone(), elements[j].clone()));
                    }
                }
            }
            PosetSpec { elements, le }.validate().unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn poset_nerves_are_decomposition_spaces(p in random_poset()) {
        let x = poset_nerve(&p, p.height() + 3).unwrap();
        prop_assert!(check_segal(&x).passed());
        prop_assert!(check_decomposition(&x, DecompMethod::Direct).unwrap().passed());
        prop_assert!(check_decomposition(&x, DecompMethod::Decalage).unwrap().passed());
    }

    #[test]
    fn mobius_matches_recursion(p in random_poset()) {
        let x = poset_nerve(&p, p.height() + 3).unwrap();
        let mu = mobius(&x).unwrap();
        let mut memo = HashMap::new();
        for a in 0..x.len(1) {
            let (s, t) = x.name(1, a).split_once('-').unwrap();
            let want = rota(&p, p.index(s).unwrap(), p.index(t).unwrap(), &mut memo);
            prop_assert_eq!(mu.get(a), &want);
        }
        prop_assert!(verify_inversion(&x).unwrap().passed());
    }
}
