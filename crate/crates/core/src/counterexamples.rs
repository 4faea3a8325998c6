//! Finite checks of the identities behind the failure of residual finiteness
//! for finite sets and for the simplex category.
//!
//! All composites are computed through composition tables of finite
//! categories, not by applying functions directly.

use thiserror::Error;

use crate::category::{FiniteCategory, Mor};
use crate::congruence::find_derivation;
use crate::constructions::{labeled_fset_generated, labeled_simplex_full_subcategory, LabeledCategory, MapLabel};
use crate::enumeration::enumerate_functors;
use crate::functor::FpFunctor;
use crate::quiver::{Path, Presentation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CounterexampleError {
    #[error("bad parameters: {0}")]
    BadParameters(String),
}

/// Sign of a permutation given as 1-based values.
pub fn permutation_sign(values: &[usize]) -> i8 {
    let mut seen = vec![false; values.len()];
    let mut sign = 1;
    for start in 0..values.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = values[i] - 1;
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

fn compose_chain(cat: &LabeledCategory<MapLabel>, chain: &[&MapLabel]) -> Vec<usize> {
    // chain lists maps in application order
    let c = cat.category();
    let mut acc = cat.morphism(chain[0]).expect("map is a morphism");
    for label in &chain[1..] {
        let next = cat.morphism(label).expect("map is a morphism");
        acc = c.compose(next, acc).expect("maps are composable");
    }
    cat.label(acc).values.clone()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FsetReport {
    pub n: usize,
    /// Morphism count of the subcategory generated by `i`, `π` and `c`.
    pub morphisms: usize,
    pub f: Vec<usize>,
    pub g: Vec<usize>,
    pub i: Vec<usize>,
    pub pi: Vec<usize>,
    pub c: Vec<usize>,
    /// `π ∘ i`.
    pub pi_i: Vec<usize>,
    /// `π ∘ c ∘ i`.
    pub pi_c_i: Vec<usize>,
    pub sign_c: i8,
}

impl FsetReport {
    pub fn passed(&self) -> bool {
        self.pi_i == self.f && self.pi_c_i == self.g && self.sign_c == 1
    }
}

/// Checks `f = π ∘ i` and `g = π ∘ c ∘ i` on `{1,2,3}` and `{1..n}`, where
/// `g` is the 3-cycle, `c` the 3-cycle on `{1..n}` fixing `4..n`, `i` the
/// inclusion and `π` sends every `j >= 4` to `3`; also checks that `c` is
/// even.
pub fn verify_fset_identities(n: usize) -> Result<FsetReport, CounterexampleError> {
    if n < 5 {
        return Err(CounterexampleError::BadParameters(format!("need n >= 5, got {n}")));
    }
    let small = 0;
    let big = 1;
    let i = MapLabel {
        dom: small,
        cod: big,
        values: vec![1, 2, 3],
    };
    let pi = MapLabel {
        dom: big,
        cod: small,
        values: (1..=n).map(|j| j.min(3)).collect(),
    };
    let c = MapLabel {
        dom: big,
        cod: big,
        values: (1..=n).map(|j| if j <= 3 { j % 3 + 1 } else { j }).collect(),
    };
    let cat = labeled_fset_generated(&[3, n], vec![i.clone(), pi.clone(), c.clone()]);
    debug_assert!(cat.category().is_valid());
    Ok(FsetReport {
        n,
        morphisms: cat.category().morphisms(),
        f: vec![1, 2, 3],
        g: vec![2, 3, 1],
        pi_i: compose_chain(&cat, &[&i, &pi]),
        pi_c_i: compose_chain(&cat, &[&i, &c, &pi]),
        sign_c: permutation_sign(&c.values),
        i: i.values,
        pi: pi.values,
        c: c.values,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexReport {
    pub n: usize,
    pub y: usize,
    pub z: usize,
    pub f: Vec<usize>,
    pub g: Vec<usize>,
    pub i: Vec<usize>,
    pub r: Vec<usize>,
    pub pi_y: Vec<usize>,
    pub pi_z: Vec<usize>,
    /// `r ∘ π_z ∘ i`.
    pub r_pi_z_i: Vec<usize>,
    /// `r ∘ π_y ∘ i`.
    pub r_pi_y_i: Vec<usize>,
}

impl SimplexReport {
    pub fn passed(&self) -> bool {
        self.r_pi_z_i == self.f && self.r_pi_y_i == self.g
    }
}

/// Simplex full subcategory on `[1]` and `[n]`.
pub fn simplex_scenario_category(n: usize) -> LabeledCategory<MapLabel> {
    labeled_simplex_full_subcategory(&[1, n])
}

fn simplex_check(cat: &LabeledCategory<MapLabel>, n: usize, y: usize, z: usize) -> SimplexReport {
    let (small, big) = (0, 1);
    let pi = |w: usize| MapLabel {
        dom: big,
        cod: big,
        values: (0..=n).map(|j| if j == 0 { 0 } else { w }).collect(),
    };
    let i = MapLabel {
        dom: small,
        cod: big,
        values: vec![0, 1],
    };
    let r = MapLabel {
        dom: big,
        cod: small,
        values: (0..=n).map(|j| usize::from(j > y)).collect(),
    };
    let (pi_y, pi_z) = (pi(y), pi(z));
    SimplexReport {
        n,
        y,
        z,
        f: vec![0, 1],
        g: vec![0, 0],
        r_pi_z_i: compose_chain(cat, &[&i, &pi_z, &r]),
        r_pi_y_i: compose_chain(cat, &[&i, &pi_y, &r]),
        i: i.values,
        r: r.values,
        pi_y: pi_y.values,
        pi_z: pi_z.values,
    }
}

/// Checks `id = r ∘ π_z ∘ i` and `const_0 = r ∘ π_y ∘ i` on `[1]`.
pub fn verify_simplex_identities(n: usize, y: usize, z: usize) -> Result<SimplexReport, CounterexampleError> {
    if n < 2 || y < 1 || y >= z || z > n {
        return Err(CounterexampleError::BadParameters(format!(
            "need n >= 2 and 1 <= y < z <= n, got n={n}, y={y}, z={z}"
        )));
    }
    Ok(simplex_check(&simplex_scenario_category(n), n, y, z))
}

/// Every pair `1 <= y < z <= n`, sharing one category.
pub fn verify_simplex_all(n: usize) -> Result<Vec<SimplexReport>, CounterexampleError> {
    if n < 2 {
        return Err(CounterexampleError::BadParameters(format!("need n >= 2, got {n}")));
    }
    let cat = simplex_scenario_category(n);
    Ok((1..=n)
        .flat_map(|y| (y + 1..=n).map(move |z| (y, z)))
        .map(|(y, z)| simplex_check(&cat, n, y, z))
        .collect())
}

/// Bound on the order searched for in [`collapse_demo`].
pub const MAX_ORDER: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorCollapse {
    pub functor: FpFunctor,
    /// Images of `p^0, ..., p^(order-1)`.
    pub images: Vec<Mor>,
    pub distinct: usize,
    pub collapsed: bool,
    pub separates: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollapseReport {
    /// Least `k >= 1` with `p^k` congruent to the identity, if found.
    pub order: Option<usize>,
    pub prime_order: bool,
    pub functors: Vec<FunctorCollapse>,
    /// Functors with a smaller image that fail to collapse a subgroup of
    /// prime order (none are possible).
    pub violations: usize,
}

impl CollapseReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

fn is_prime(k: usize) -> bool {
    k >= 2 && (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0)
}

/// For every functor into `target`, records how the cyclic subgroup
/// generated by the loop `p` is mapped, and whether `p` and `q` stay apart.
pub fn collapse_demo(
    target: &FiniteCategory,
    presentation: &Presentation,
    p: &Path,
    q: &Path,
) -> Result<CollapseReport, CounterexampleError> {
    if p.source() != p.target() {
        return Err(CounterexampleError::BadParameters("p must be a loop".into()));
    }
    presentation
        .quiver()
        .check_path(p)
        .and_then(|_| presentation.quiver().check_path(q))
        .map_err(|e| CounterexampleError::BadParameters(e.to_string()))?;
    let id = Path::identity(p.source());
    let longest = presentation
        .relations()
        .iter()
        .map(|(l, r)| l.len().max(r.len()))
        .max()
        .unwrap_or(0);
    let mut order = None;
    for k in 1..=MAX_ORDER {
        let power = p.power(k).expect("loop");
        let stage = power.len() + longest;
        if find_derivation(presentation, &power, &id, stage)
            .map_err(|e| CounterexampleError::BadParameters(e.to_string()))?
            .is_some()
        {
            order = Some(k);
            break;
        }
    }
    let prime_order = order.is_some_and(is_prime);
    let mut report = CollapseReport {
        order,
        prime_order,
        functors: Vec::new(),
        violations: 0,
    };
    for functor in enumerate_functors(presentation, target) {
        let eval = |path: &Path| functor.evaluate(target, path).expect("typed path");
        let images: Vec<Mor> = (0..order.unwrap_or(1))
            .map(|k| eval(&p.power(k).expect("loop")))
            .collect();
        let mut distinct = images.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let identity = target.identity(functor.object(p.source()));
        let collapsed = images.iter().all(|&f| f == identity);
        let smaller = order.is_some_and(|k| distinct.len() < k);
        if smaller && prime_order && !collapsed {
            report.violations += 1;
        }
        report.functors.push(FunctorCollapse {
            separates: eval(p) != eval(q),
            functor,
            distinct: distinct.len(),
            images,
            collapsed,
        });
    }
    Ok(report)
}
