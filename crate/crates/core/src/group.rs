//! Finite groups as multiplication tables.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("a group has at least one element")]
    Empty,
    #[error("multiplication table has {found} entries, expected {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("table entry {value} out of range for order {order}")]
    IndexOutOfRange { value: usize, order: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("({0} * {1}) * {2} != {0} * ({1} * {2})")]
    NotAssociative(usize, usize, usize),
}

/// Elements are `0..order`; `mul[a * order + b]` is `a * b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupTable {
    order: usize,
    mul: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl GroupTable {
    /// Validates the group axioms and derives identity and inverses.
    pub fn new(order: usize, mul: Vec<usize>) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::Empty);
        }
        if mul.len() != order * order {
            return Err(GroupError::SizeMismatch {
                expected: order * order,
                found: mul.len(),
            });
        }
        if let Some(&value) = mul.iter().find(|&&v| v >= order) {
            return Err(GroupError::IndexOutOfRange { value, order });
        }
        let at = |a: usize, b: usize| mul[a * order + b];
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| at(e, a) == a && at(a, e) == a))
            .ok_or(GroupError::NoIdentity)?;
        let inverse = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| at(a, b) == identity && at(b, a) == identity)
                    .ok_or(GroupError::NoInverse(a))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GroupTable {
            order,
            mul,
            identity,
            inverse,
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// Integers mod `n` under addition; element `k` is the residue `k`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group of order 0");
        let mul = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        GroupTable {
            order: n,
            mul,
            identity: 0,
            inverse: (0..n).map(|k| (n - k) % n).collect(),
        }
    }

    /// Symmetric group on `k` points; elements are permutations in
    /// lexicographic order, product `a * b` applies `b` first.
    pub fn symmetric(k: usize) -> Self {
        let perms = crate::permutations(k);
        let index = |p: &[usize]| perms.iter().position(|q| q == p).expect("permutation");
        let order = perms.len();
        let mut mul = Vec::with_capacity(order * order);
        for a in &perms {
            for b in &perms {
                let ab: Vec<usize> = (0..k).map(|i| a[b[i]]).collect();
                mul.push(index(&ab));
            }
        }
        GroupTable::new(order, mul).expect("symmetric group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[usize] {
        &self.mul
    }

    /// Exhaustively re-checks associativity, identity and inverse laws.
    pub fn satisfies_laws(&self) -> bool {
        GroupTable::new(self.order, self.mul.clone()).is_ok_and(|g| g.identity == self.identity && g.inverse == self.inverse)
    }

    /// The same group with elements renamed by `perm` (old index -> new index).
    pub fn relabel(&self, perm: &[usize]) -> GroupTable {
        let n = self.order;
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[perm[a] * n + perm[b]] = perm[self.op(a, b)];
            }
        }
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[perm[a]] = perm[self.inverse[a]];
        }
        GroupTable {
            order: n,
            mul,
            identity: perm[self.identity],
            inverse,
        }
    }

    /// Relabels so the identity is element 0, keeping the remaining order.
    pub fn identity_first(&self) -> GroupTable {
        let mut perm = vec![0; self.order];
        let mut next = 1;
        for (a, slot) in perm.iter_mut().enumerate() {
            if a == self.identity {
                *slot = 0;
            } else {
                *slot = next;
                next += 1;
            }
        }
        self.relabel(&perm)
    }

    /// Order of the element `a`.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.op(x, a);
            k += 1;
        }
        k
    }
}
