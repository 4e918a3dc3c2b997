//! Small named instances used across the test and acceptance suites:
//! thin categories built from reachability of a DAG, one-object monoid
//! categories, and finite semirings.

use std::collections::{BTreeMap, BTreeSet};

use crate::fincat::{FinCategory, RawCategory, Subcategory};
use crate::semiring::{FinSemiring, RawSemiring};

/// Thin category from a DAG: one morphism `x_y` per ordered pair with `y`
/// reachable from `x` (plus identities). Composition is forced by
/// thinness, so the result is automatically associative.
pub fn thin_from_dag(objects: &[&str], arrows: &[(&str, &str)]) -> FinCategory {
    let n = objects.len();
    let index: BTreeMap<&str, usize> = objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let mut reach = vec![vec![false; n]; n];
    for &(a, b) in arrows {
        reach[index[a]][index[b]] = true;
    }
    // Transitive closure.
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                if !reach[i][j] {
                    continue;
                }
                let row_j = reach[j].clone();
                for (k, &jk) in row_j.iter().enumerate() {
                    if jk && !reach[i][k] {
                        reach[i][k] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    for (i, row) in reach.iter().enumerate() {
        assert!(!row[i], "dag has a cycle through {}", objects[i]);
    }
    let name = |i: usize, j: usize| format!("{}_{}", objects[i], objects[j]);
    let mut morphisms = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if reach[i][j] {
                morphisms.push((name(i, j), objects[i].to_string(), objects[j].to_string()));
            }
        }
    }
    let mut composites = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if !reach[i][j] {
                continue;
            }
            for (k, &jk) in reach[j].iter().enumerate() {
                if jk {
                    assert!(reach[i][k], "reachability is transitive");
                    composites.push((name(i, j), name(j, k), name(i, k)));
                }
            }
        }
    }
    RawCategory {
        objects: objects.iter().map(|s| s.to_string()).collect(),
        morphisms,
        composites,
        ..Default::default()
    }
    .validate()
    .expect("dag categories are valid")
}

/// Three objects `X → Z → Y` with `u: X→Z`, `d: Z→Y`, `n = d∘u`.
pub fn p1() -> FinCategory {
    RawCategory {
        objects: vec!["X".into(), "Z".into(), "Y".into()],
        morphisms: vec![
            ("u".into(), "X".into(), "Z".into()),
            ("d".into(), "Z".into(), "Y".into()),
            ("n".into(), "X".into(), "Y".into()),
        ],
        composites: vec![("u".into(), "d".into(), "n".into())],
        ..Default::default()
    }
    .validate()
    .expect("p1 is valid")
}

/// Cospan `X → Y ← Z` with `n: X→Y`, `d: Z→Y` and no other arrows.
pub fn p2() -> FinCategory {
    RawCategory {
        objects: vec!["X".into(), "Z".into(), "Y".into()],
        morphisms: vec![
            ("n".into(), "X".into(), "Y".into()),
            ("d".into(), "Z".into(), "Y".into()),
        ],
        composites: vec![],
        ..Default::default()
    }
    .validate()
    .expect("p2 is valid")
}

/// One object, one morphism.
pub fn terminal() -> FinCategory {
    RawCategory {
        objects: vec!["pt".into()],
        ..Default::default()
    }
    .validate()
    .expect("terminal is valid")
}

/// One-object group of order two: `{e, g}` with `g∘g = e`.
pub fn z2_group() -> FinCategory {
    RawCategory {
        objects: vec!["pt".into()],
        morphisms: vec![
            ("e".into(), "pt".into(), "pt".into()),
            ("g".into(), "pt".into(), "pt".into()),
        ],
        identities: [("pt".to_string(), "e".to_string())].into_iter().collect(),
        composites: vec![("g".into(), "g".into(), "e".into())],
    }
    .validate()
    .expect("z2 is valid")
}

/// One-object category of the multiplicative monoid `(Z/n, ×)`. Morphism
/// names are the digits; the identity is `1`.
pub fn mul_monoid_category(n: usize) -> FinCategory {
    assert!(n >= 2);
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut composites = Vec::new();
    for a in 0..n {
        for b in 0..n {
            composites.push((names[a].clone(), names[b].clone(), names[(a * b) % n].clone()));
        }
    }
    RawCategory {
        objects: vec!["pt".into()],
        morphisms: names
            .iter()
            .map(|s| (s.clone(), "pt".to_string(), "pt".to_string()))
            .collect(),
        identities: [("pt".to_string(), "1".to_string())].into_iter().collect(),
        composites,
    }
    .validate()
    .expect("modular monoid is valid")
}

/// One-object category of the Boolean monoid `({0,1}, ∧)`.
pub fn bool_and_monoid_category() -> FinCategory {
    mul_monoid_category(2)
}

/// The subcategory generated by the named morphisms.
pub fn sigma_generated(cat: &FinCategory, gens: &[&str]) -> Subcategory {
    let set: BTreeSet<_> = gens
        .iter()
        .map(|g| cat.morphism(g).expect("generator exists"))
        .collect();
    cat.subcategory_generated(&set).expect("generators close")
}

/// `Z/n` with modular addition and multiplication.
pub fn zmod_semiring(n: usize) -> FinSemiring {
    assert!(n >= 2);
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let table = |f: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<String>> {
        (0..n)
            .map(|a| (0..n).map(|b| names[f(a, b)].clone()).collect())
            .collect()
    };
    RawSemiring {
        elements: names.clone(),
        add: table(&|a, b| (a + b) % n),
        mul: table(&|a, b| (a * b) % n),
        zero: "0".into(),
        one: "1".into(),
    }
    .validate()
    .expect("zmod is a semiring")
}

/// The Boolean semiring `({0,1}, ∨, ∧)`.
pub fn boolean_semiring() -> FinSemiring {
    RawSemiring {
        elements: vec!["0".into(), "1".into()],
        add: vec![
            vec!["0".into(), "1".into()],
            vec!["1".into(), "1".into()],
        ],
        mul: vec![
            vec!["0".into(), "0".into()],
            vec!["0".into(), "1".into()],
        ],
        zero: "0".into(),
        one: "1".into(),
    }
    .validate()
    .expect("boolean semiring is valid")
}

/// A poset or monoid instance of the acceptance corpus: a category plus
/// the generators of the inverted subcategory.
#[derive(Debug, Clone)]
pub struct Instance {
    pub name: &'static str,
    pub category: FinCategory,
    pub sigma: Subcategory,
}

impl Instance {
    fn poset(name: &'static str, category: FinCategory, gens: &[&str]) -> Instance {
        let sigma = sigma_generated(&category, gens);
        Instance {
            name,
            category,
            sigma,
        }
    }
}

/// Thin instances: posets on up to five objects with up to two inverted
/// arrows. Every instance here passes the move-connectivity discharge,
/// i.e. its localization is again thin.
pub fn poset_instances() -> Vec<Instance> {
    let chain4 = || thin_from_dag(&["a", "b", "c", "e"], &[("a", "b"), ("b", "c"), ("c", "e")]);
    let chain5 = || {
        thin_from_dag(
            &["a", "b", "c", "e", "f"],
            &[("a", "b"), ("b", "c"), ("c", "e"), ("e", "f")],
        )
    };
    let diamond = || {
        thin_from_dag(
            &["a", "b", "c", "e"],
            &[("a", "b"), ("a", "c"), ("b", "e"), ("c", "e")],
        )
    };
    let span = || thin_from_dag(&["x", "z", "y"], &[("z", "x"), ("z", "y")]);
    let fence = || {
        thin_from_dag(
            &["a", "b", "c", "x", "y"],
            &[("a", "x"), ("b", "x"), ("b", "y"), ("c", "y")],
        )
    };
    let cospan_tail = || {
        thin_from_dag(
            &["w", "x", "y", "z"],
            &[("w", "x"), ("x", "z"), ("y", "z")],
        )
    };
    vec![
        Instance::poset("p1/d", p1(), &["d"]),
        Instance::poset("p1/u", p1(), &["u"]),
        Instance::poset("p1/ud", p1(), &["u", "d"]),
        Instance::poset("p2/ids", p2(), &[]),
        Instance::poset("p2/d", p2(), &["d"]),
        Instance::poset("p2/n", p2(), &["n"]),
        Instance::poset("p2/nd", p2(), &["n", "d"]),
        Instance::poset("span/zx", span(), &["z_x"]),
        Instance::poset("span/both", span(), &["z_x", "z_y"]),
        Instance::poset("chain4/bc", chain4(), &["b_c"]),
        Instance::poset("chain4/ab+ce", chain4(), &["a_b", "c_e"]),
        Instance::poset("chain5/bc+ce", chain5(), &["b_c", "c_e"]),
        Instance::poset("chain5/ce", chain5(), &["c_e"]),
        Instance::poset("diamond/be", diamond(), &["b_e"]),
        Instance::poset("diamond/ab+ce", diamond(), &["a_b", "c_e"]),
        Instance::poset("diamond/ids", diamond(), &[]),
        Instance::poset("fence/bx", fence(), &["b_x"]),
        Instance::poset("fence/bx+by", fence(), &["b_x", "b_y"]),
        Instance::poset("cospan_tail/yz", cospan_tail(), &["y_z"]),
        Instance::poset("cospan_tail/wx+yz", cospan_tail(), &["w_x", "y_z"]),
        Instance::poset("terminal/id", terminal(), &[]),
    ]
}

/// Commutative one-object instances: multiplicative monoids modulo `n`
/// with a cyclic inverted submonoid, plus the order-two group.
pub fn monoid_instances() -> Vec<Instance> {
    let inst = |name: &'static str, n: usize, g: &str| {
        let category = mul_monoid_category(n);
        let sigma = sigma_generated(&category, &[g]);
        Instance {
            name,
            category,
            sigma,
        }
    };
    let mut out = vec![
        inst("z6x/2", 6, "2"),
        inst("z6x/3", 6, "3"),
        inst("z6x/5", 6, "5"),
        inst("z6x/4", 6, "4"),
        inst("z4x/2", 4, "2"),
        inst("z4x/3", 4, "3"),
        inst("z5x/2", 5, "2"),
        inst("z3x/0", 3, "0"),
        inst("z2x/0", 2, "0"),
        inst("z2x/1", 2, "1"),
    ];
    let z2 = z2_group();
    let sigma = sigma_generated(&z2, &["g"]);
    out.push(Instance {
        name: "z2group/g",
        category: z2,
        sigma,
    });
    out
}

/// The non-thin-localization counterexample: a crossed square whose two
/// inverted diagonals create a zigzag loop that is not equal to the
/// identity. The move-connectivity discharge rejects it, which is exactly
/// why the preorder backend cannot be applied blindly. Inverting a bare
/// composite is the other trap: see `walking_retract_sigma`.
pub fn crossed_square() -> (FinCategory, Subcategory) {
    let cat = thin_from_dag(
        &["a", "b", "c", "e"],
        &[("a", "c"), ("a", "e"), ("b", "c"), ("b", "e")],
    );
    let sigma = sigma_generated(&cat, &["b_c", "a_e"]);
    (cat, sigma)
}

/// Inverting the composite `n = d∘u` without its factors turns the chain
/// poset into the walking retract: `u · l_n · d` is a non-identity
/// idempotent on the middle object, so the localization is not thin and
/// the preorder backend is rejected by the discharge.
pub fn walking_retract_sigma() -> (FinCategory, Subcategory) {
    let cat = p1();
    let sigma = sigma_generated(&cat, &["n"]);
    (cat, sigma)
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_large_enough() {
        assert!(poset_instances().len() + monoid_instances().len() >= 20);
    }

    #[test]
    fn poset_instances_are_thin() {
        for inst in poset_instances() {
            assert!(inst.category.is_thin(), "{} should be thin", inst.name);
            inst.sigma.validate(&inst.category).unwrap();
        }
    }

    #[test]
    fn monoid_instances_are_one_object() {
        for inst in monoid_instances() {
            assert!(inst.category.is_one_object());
            inst.sigma.validate(&inst.category).unwrap();
        }
    }
}
