use crate::category::{FiniteCategory, Mor};
use crate::permutations;

/// Object relabeling plus every morphism relabeling that keeps identities at
/// `0..n` (in object order) and sorts the rest by `(dom, cod)`.
fn relabelings(cat: &FiniteCategory) -> Vec<(Vec<usize>, Vec<Mor>)> {
    let n = cat.objects();
    let m = cat.morphisms();
    let mut out = Vec::new();
    for sigma in permutations(n) {
        let mut others: Vec<Mor> = (0..m).filter(|&f| !cat.is_identity(f)).collect();
        others.sort_by_key(|&f| (sigma[cat.dom(f)], sigma[cat.cod(f)], f));
        // blocks of equal relabeled (dom, cod)
        let mut blocks: Vec<Vec<Mor>> = Vec::new();
        for &f in &others {
            let key = (sigma[cat.dom(f)], sigma[cat.cod(f)]);
            match blocks.last_mut() {
                Some(block) if (sigma[cat.dom(block[0])], sigma[cat.cod(block[0])]) == key => block.push(f),
                _ => blocks.push(vec![f]),
            }
        }
        let block_perms: Vec<Vec<Vec<usize>>> = blocks.iter().map(|b| permutations(b.len())).collect();
        let mut choice = vec![0; blocks.len()];
        loop {
            let mut perm = vec![0; m];
            for x in 0..n {
                perm[cat.identity(x)] = sigma[x];
            }
            let mut next = n;
            for (b, block) in blocks.iter().enumerate() {
                for &k in &block_perms[b][choice[b]] {
                    perm[block[k]] = next;
                    next += 1;
                }
            }
            out.push((sigma.clone(), perm));
            // odometer over block permutations
            let mut i = 0;
            while i < blocks.len() {
                choice[i] += 1;
                if choice[i] < block_perms[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == blocks.len() {
                break;
            }
        }
    }
    out
}

fn key_of(cat: &FiniteCategory, sigma: &[usize], perm: &[Mor]) -> Vec<usize> {
    let m = cat.morphisms();
    let mut key = vec![0; 2 * m + m * m];
    for f in 0..m {
        key[perm[f]] = sigma[cat.dom(f)];
        key[m + perm[f]] = sigma[cat.cod(f)];
    }
    for g in 0..m {
        for f in 0..m {
            // undefined sorts below every morphism
            key[2 * m + perm[g] * m + perm[f]] = cat.compose(g, f).map_or(0, |h| perm[h] + 1);
        }
    }
    key
}

/// Lexicographically least `(dom, cod, comp)` encoding over all relabelings;
/// equal keys exactly for isomorphic categories.
pub fn canonical_key(cat: &FiniteCategory) -> Vec<usize> {
    canonical_form(cat).0
}

/// The canonical key together with the relabeled category realizing it.
pub fn canonical_form(cat: &FiniteCategory) -> (Vec<usize>, FiniteCategory) {
    let (best_sigma, best_perm, key) = relabelings(cat)
        .into_iter()
        .map(|(sigma, perm)| {
            let key = key_of(cat, &sigma, &perm);
            (sigma, perm, key)
        })
        .min_by(|a, b| a.2.cmp(&b.2))
        .expect("at least one relabeling");
    (key, cat.relabel(&best_sigma, &best_perm))
}

pub fn is_isomorphic(a: &FiniteCategory, b: &FiniteCategory) -> bool {
    a.objects() == b.objects() && a.morphisms() == b.morphisms() && canonical_key(a) == canonical_key(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{group_category, product_category};
    use crate::GroupTable;

    #[test]
    fn relabeled_copies_share_a_key() {
        let s3 = group_category(&GroupTable::symmetric(3));
        let perm = vec![3, 5, 0, 1, 4, 2];
        let moved = s3.relabel(&[0], &perm);
        assert_eq!(canonical_key(&s3), canonical_key(&moved));
        assert!(is_isomorphic(&s3, &moved));
    }

    #[test]
    fn z6_is_not_s3() {
        let z6 = group_category(&GroupTable::cyclic(6));
        let s3 = group_category(&GroupTable::symmetric(3));
        assert!(!is_isomorphic(&z6, &s3));
        let z2 = group_category(&GroupTable::cyclic(2));
        let z3 = group_category(&GroupTable::cyclic(3));
        assert!(is_isomorphic(&product_category(&z2, &z3).category, &z6));
    }

    #[test]
    fn canonical_form_is_valid_and_isomorphic() {
        let z3 = group_category(&GroupTable::cyclic(3));
        let (key, form) = canonical_form(&z3);
        assert!(form.is_valid());
        assert!(form.is_normalized());
        assert_eq!(canonical_key(&form), key);
    }
}
