//! Finite categories given by explicit composition tables.
//!
//! Objects are `0..n` and morphisms `0..m`. `compose(g, f)` is `g ∘ f`
//! (first `f`, then `g`) and is defined exactly when `cod(f) == dom(g)`.
//! Constructors only check index ranges; the category laws are checked by
//! [`FiniteCategory::validate`], so corrupted tables can be represented and
//! diagnosed.

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::group::GroupTable;

pub type Obj = usize;
pub type Mor = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("table `{table}` has {found} entries, expected {expected}")]
    LengthMismatch {
        table: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("table `{table}` entry {position} is {value}, out of range 0..{bound}")]
    IndexOutOfRange {
        table: &'static str,
        position: usize,
        value: usize,
        bound: usize,
    },
    #[error("line {line}: {message}")]
    Dump { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteCategory {
    objects: usize,
    dom: Vec<Obj>,
    cod: Vec<Obj>,
    id: Vec<Mor>,
    /// `comp[g * m + f]` is `g ∘ f`.
    comp: Vec<Option<Mor>>,
}

/// Which law a [`Violation`] breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Law {
    IdentityShape,
    Totality,
    IdentityLaw,
    Associativity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `id(object)` does not have domain and codomain `object`.
    IdentityShape { object: Obj, identity: Mor },
    /// `g ∘ f` is composable but undefined.
    MissingComposite { g: Mor, f: Mor },
    /// `g ∘ f` is defined although `cod(f) != dom(g)`.
    SpuriousComposite { g: Mor, f: Mor },
    /// `g ∘ f` is defined but not a morphism `dom(f) -> cod(g)`.
    CompositeType { g: Mor, f: Mor, result: Mor },
    /// `identity ∘ f != f` or `f ∘ identity != f`.
    IdentityLaw { identity: Mor, morphism: Mor, found: Mor },
    /// `h ∘ (g ∘ f) != (h ∘ g) ∘ f`.
    Associativity { h: Mor, g: Mor, f: Mor, left: Mor, right: Mor },
}

impl Violation {
    pub fn law(&self) -> Law {
        match self {
            Violation::IdentityShape { .. } => Law::IdentityShape,
            Violation::MissingComposite { .. }
            | Violation::SpuriousComposite { .. }
            | Violation::CompositeType { .. } => Law::Totality,
            Violation::IdentityLaw { .. } => Law::IdentityLaw,
            Violation::Associativity { .. } => Law::Associativity,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::IdentityShape { object, identity } => {
                write!(f, "identity: id({object}) = {identity} is not an endomorphism of {object}")
            }
            Violation::MissingComposite { g, f: m } => write!(f, "totality: {g} o {m} is composable but undefined"),
            Violation::SpuriousComposite { g, f: m } => {
                write!(f, "totality: {g} o {m} is defined but not composable")
            }
            Violation::CompositeType { g, f: m, result } => {
                write!(f, "totality: {g} o {m} = {result} has the wrong domain or codomain")
            }
            Violation::IdentityLaw {
                identity,
                morphism,
                found,
            } => write!(f, "identity law: identity {identity} with {morphism} gives {found}"),
            Violation::Associativity { h, g, f: m, left, right } => {
                write!(f, "associativity: {h} o ({g} o {m}) = {left} but ({h} o {g}) o {m} = {right}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Every morphism has a two-sided inverse under the table.
    pub is_groupoid: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn laws(&self) -> Vec<Law> {
        let mut laws: Vec<Law> = self.violations.iter().map(Violation::law).collect();
        laws.sort();
        laws.dedup();
        laws
    }
}

/// Invertible endomorphisms of one object, as a group table over `elements`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomorphismGroup {
    pub group: GroupTable,
    /// `elements[i]` is the morphism playing group element `i`.
    pub elements: Vec<Mor>,
}

impl FiniteCategory {
    /// Builds a category from raw tables, checking only lengths and index
    /// ranges.
    pub fn from_tables(
        objects: usize,
        dom: Vec<Obj>,
        cod: Vec<Obj>,
        id: Vec<Mor>,
        comp: Vec<Option<Mor>>,
    ) -> Result<Self, CategoryError> {
        let m = dom.len();
        let expect_len = |table, expected, found| {
            if expected == found {
                Ok(())
            } else {
                Err(CategoryError::LengthMismatch { table, expected, found })
            }
        };
        expect_len("cod", m, cod.len())?;
        expect_len("id", objects, id.len())?;
        expect_len("comp", m * m, comp.len())?;
        let in_range = |table, values: &mut dyn Iterator<Item = usize>, bound| {
            for (position, value) in values.enumerate() {
                if value >= bound {
                    return Err(CategoryError::IndexOutOfRange {
                        table,
                        position,
                        value,
                        bound,
                    });
                }
            }
            Ok(())
        };
        in_range("dom", &mut dom.iter().copied(), objects)?;
        in_range("cod", &mut cod.iter().copied(), objects)?;
        in_range("id", &mut id.iter().copied(), m)?;
        in_range("comp", &mut comp.iter().map(|c| c.unwrap_or(0)), m.max(1))?;
        Ok(FiniteCategory {
            objects,
            dom,
            cod,
            id,
            comp,
        })
    }

    /// Tables known to be in range; used by trusted constructions.
    pub(crate) fn from_tables_unchecked(
        objects: usize,
        dom: Vec<Obj>,
        cod: Vec<Obj>,
        id: Vec<Mor>,
        comp: Vec<Option<Mor>>,
    ) -> Self {
        debug_assert!(Self::from_tables(objects, dom.clone(), cod.clone(), id.clone(), comp.clone()).is_ok());
        FiniteCategory {
            objects,
            dom,
            cod,
            id,
            comp,
        }
    }

    /// One object, one morphism.
    pub fn terminal() -> Self {
        FiniteCategory {
            objects: 1,
            dom: vec![0],
            cod: vec![0],
            id: vec![0],
            comp: vec![Some(0)],
        }
    }

    pub fn objects(&self) -> usize {
        self.objects
    }

    pub fn morphisms(&self) -> usize {
        self.dom.len()
    }

    pub fn dom(&self, f: Mor) -> Obj {
        self.dom[f]
    }

    pub fn cod(&self, f: Mor) -> Obj {
        self.cod[f]
    }

    pub fn identity(&self, x: Obj) -> Mor {
        self.id[x]
    }

    pub fn identities(&self) -> &[Mor] {
        &self.id
    }

    pub fn is_identity(&self, f: Mor) -> bool {
        self.id[self.dom[f]] == f
    }

    /// `g ∘ f`, if defined in the table.
    pub fn compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        self.comp[g * self.morphisms() + f]
    }

    pub fn composable(&self, g: Mor, f: Mor) -> bool {
        self.cod[f] == self.dom[g]
    }

    pub fn hom(&self, x: Obj, y: Obj) -> Vec<Mor> {
        (0..self.morphisms())
            .filter(|&f| self.dom[f] == x && self.cod[f] == y)
            .collect()
    }

    /// `hom_sets()[x * n + y]` lists the morphisms `x -> y` in index order.
    pub fn hom_sets(&self) -> Vec<Vec<Mor>> {
        let n = self.objects;
        let mut homs = vec![Vec::new(); n * n];
        for f in 0..self.morphisms() {
            homs[self.dom[f] * n + self.cod[f]].push(f);
        }
        homs
    }

    /// Two-sided inverse of `f`, if any.
    pub fn inverse(&self, f: Mor) -> Option<Mor> {
        let (x, y) = (self.dom[f], self.cod[f]);
        (0..self.morphisms()).find(|&g| {
            self.dom[g] == y
                && self.cod[g] == x
                && self.compose(g, f) == Some(self.id[x])
                && self.compose(f, g) == Some(self.id[y])
        })
    }

    /// Whether some invertible morphism connects `x` and `y`.
    pub fn isomorphic_objects(&self, x: Obj, y: Obj) -> bool {
        x == y
            || (0..self.morphisms())
                .any(|f| self.dom[f] == x && self.cod[f] == y && self.inverse(f).is_some())
    }

    /// Checks every category law and reports all violations.
    pub fn validate(&self) -> ValidationReport {
        let m = self.morphisms();
        let mut violations = Vec::new();
        for x in 0..self.objects {
            let i = self.id[x];
            if self.dom[i] != x || self.cod[i] != x {
                violations.push(Violation::IdentityShape { object: x, identity: i });
            }
        }
        for g in 0..m {
            for f in 0..m {
                match (self.composable(g, f), self.compose(g, f)) {
                    (true, None) => violations.push(Violation::MissingComposite { g, f }),
                    (false, Some(_)) => violations.push(Violation::SpuriousComposite { g, f }),
                    (true, Some(result)) => {
                        if self.dom[result] != self.dom[f] || self.cod[result] != self.cod[g] {
                            violations.push(Violation::CompositeType { g, f, result });
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for f in 0..m {
            let left = self.id[self.cod[f]];
            if let Some(found) = self.compose(left, f) {
                if found != f {
                    violations.push(Violation::IdentityLaw {
                        identity: left,
                        morphism: f,
                        found,
                    });
                }
            }
            let right = self.id[self.dom[f]];
            if let Some(found) = self.compose(f, right) {
                if found != f {
                    violations.push(Violation::IdentityLaw {
                        identity: right,
                        morphism: f,
                        found,
                    });
                }
            }
        }
        for g in 0..m {
            for f in 0..m {
                if !self.composable(g, f) {
                    continue;
                }
                let Some(gf) = self.compose(g, f) else { continue };
                for h in 0..m {
                    if !self.composable(h, g) {
                        continue;
                    }
                    let Some(hg) = self.compose(h, g) else { continue };
                    if let (Some(left), Some(right)) = (self.compose(h, gf), self.compose(hg, f)) {
                        if left != right {
                            violations.push(Violation::Associativity { h, g, f, left, right });
                        }
                    }
                }
            }
        }
        let is_groupoid = (0..m).all(|f| self.inverse(f).is_some());
        ValidationReport {
            violations,
            is_groupoid,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// Renames objects and morphisms; `obj_perm[old] = new`, `mor_perm[old] = new`.
    pub fn relabel(&self, obj_perm: &[Obj], mor_perm: &[Mor]) -> FiniteCategory {
        let n = self.objects;
        let m = self.morphisms();
        let mut dom = vec![0; m];
        let mut cod = vec![0; m];
        let mut id = vec![0; n];
        let mut comp = vec![None; m * m];
        for f in 0..m {
            dom[mor_perm[f]] = obj_perm[self.dom[f]];
            cod[mor_perm[f]] = obj_perm[self.cod[f]];
        }
        for x in 0..n {
            id[obj_perm[x]] = mor_perm[self.id[x]];
        }
        for g in 0..m {
            for f in 0..m {
                comp[mor_perm[g] * m + mor_perm[f]] = self.compose(g, f).map(|h| mor_perm[h]);
            }
        }
        FiniteCategory {
            objects: n,
            dom,
            cod,
            id,
            comp,
        }
    }

    /// Morphism relabeling putting identities first (in object order) and the
    /// other morphisms after them in their original order.
    pub fn identities_first_permutation(&self) -> Vec<Mor> {
        let m = self.morphisms();
        let mut perm = vec![usize::MAX; m];
        for (x, &i) in self.id.iter().enumerate() {
            if perm[i] == usize::MAX {
                perm[i] = x;
            }
        }
        let mut next = self.id.iter().filter(|&&i| perm[i] != usize::MAX).count();
        for slot in perm.iter_mut() {
            if *slot == usize::MAX {
                *slot = next;
                next += 1;
            }
        }
        perm
    }

    /// Whether `id(x) == x` for every object.
    pub fn is_normalized(&self) -> bool {
        self.id.iter().enumerate().all(|(x, &i)| x == i)
    }

    /// The identities-first relabeling and the permutation used.
    pub fn normalized(&self) -> (FiniteCategory, Vec<Mor>) {
        let perm = self.identities_first_permutation();
        let objects: Vec<Obj> = (0..self.objects).collect();
        (self.relabel(&objects, &perm), perm)
    }

    /// Canonical textual dump (identities listed first).
    pub fn dump(&self) -> String {
        let normal;
        let cat = if self.is_normalized() {
            self
        } else {
            normal = self.normalized().0;
            &normal
        };
        let m = cat.morphisms();
        let mut out = String::new();
        writeln!(out, "category n={} m={}", cat.objects, m).unwrap();
        let line = |out: &mut String, name: &str, values: &[usize]| {
            out.push_str(name);
            for v in values {
                write!(out, " {v}").unwrap();
            }
            out.push('\n');
        };
        line(&mut out, "dom", &cat.dom);
        line(&mut out, "cod", &cat.cod);
        line(&mut out, "id", &cat.id);
        out.push_str("comp\n");
        for g in 0..m {
            let row: Vec<String> = (0..m)
                .map(|f| match cat.compose(g, f) {
                    Some(h) => h.to_string(),
                    None => "-".to_string(),
                })
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the output of [`FiniteCategory::dump`]. Laws are not checked.
    pub fn parse_dump(text: &str) -> Result<FiniteCategory, CategoryError> {
        let err = |line: usize, message: &str| CategoryError::Dump {
            line,
            message: message.to_string(),
        };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
        let (ln, header) = lines.next().ok_or_else(|| err(1, "empty input"))?;
        let mut parts = header.split_whitespace();
        if parts.next() != Some("category") {
            return Err(err(ln, "expected `category n=<objects> m=<morphisms>`"));
        }
        let mut field = |prefix: &str| -> Result<usize, CategoryError> {
            parts
                .next()
                .and_then(|p| p.strip_prefix(prefix))
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| err(ln, "expected `category n=<objects> m=<morphisms>`"))
        };
        let n = field("n=")?;
        let m = field("m=")?;
        let mut indices = |name: &str, expected: usize| -> Result<Vec<usize>, CategoryError> {
            let (ln, line) = lines.next().ok_or_else(|| err(0, &format!("missing `{name}` line")))?;
            let mut words = line.split_whitespace();
            if words.next() != Some(name) {
                return Err(err(ln, &format!("expected `{name}` line")));
            }
            let values = words
                .map(|w| w.parse::<usize>().map_err(|_| err(ln, &format!("bad index `{w}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            if values.len() != expected {
                return Err(err(ln, &format!("expected {expected} entries")));
            }
            Ok(values)
        };
        let dom = indices("dom", m)?;
        let cod = indices("cod", m)?;
        let id = indices("id", n)?;
        let (ln, comp_header) = lines.next().ok_or_else(|| err(0, "missing `comp` line"))?;
        if comp_header != "comp" {
            return Err(err(ln, "expected `comp`"));
        }
        let mut comp = Vec::with_capacity(m * m);
        for _ in 0..m {
            let (ln, row) = lines.next().ok_or_else(|| err(0, "missing composition row"))?;
            let before = comp.len();
            for w in row.split_whitespace() {
                comp.push(if w == "-" {
                    None
                } else {
                    Some(w.parse::<usize>().map_err(|_| err(ln, &format!("bad entry `{w}`")))?)
                });
            }
            if comp.len() - before != m {
                return Err(err(ln, &format!("expected {m} entries")));
            }
        }
        if let Some((ln, _)) = lines.next() {
            return Err(err(ln, "trailing content"));
        }
        FiniteCategory::from_tables(n, dom, cod, id, comp)
    }

    /// The group of invertible endomorphisms of `x`.
    pub fn automorphism_group(&self, x: Obj) -> AutomorphismGroup {
        let elements: Vec<Mor> = (0..self.morphisms())
            .filter(|&f| self.dom[f] == x && self.cod[f] == x && self.inverse(f).is_some())
            .collect();
        let k = elements.len();
        let position = |f: Mor| elements.iter().position(|&e| e == f).expect("closed under composition");
        let mut mul = Vec::with_capacity(k * k);
        for &a in &elements {
            for &b in &elements {
                mul.push(position(self.compose(a, b).expect("endomorphisms compose")));
            }
        }
        let group = GroupTable::new(k, mul).expect("automorphisms of an object in a valid category form a group");
        AutomorphismGroup { group, elements }
    }

    /// Full subcategory on `objects` (in the given order).
    pub fn full_subcategory(&self, objects: &[Obj]) -> (FiniteCategory, Vec<Mor>) {
        let position = |x: Obj| objects.iter().position(|&y| y == x);
        let morphisms: Vec<Mor> = (0..self.morphisms())
            .filter(|&f| position(self.dom[f]).is_some() && position(self.cod[f]).is_some())
            .collect();
        let new_index = |f: Mor| morphisms.iter().position(|&g| g == f).expect("in subcategory");
        let k = morphisms.len();
        let mut comp = vec![None; k * k];
        for (gi, &g) in morphisms.iter().enumerate() {
            for (fi, &f) in morphisms.iter().enumerate() {
                comp[gi * k + fi] = self.compose(g, f).map(new_index);
            }
        }
        let cat = FiniteCategory {
            objects: objects.len(),
            dom: morphisms.iter().map(|&f| position(self.dom[f]).unwrap()).collect(),
            cod: morphisms.iter().map(|&f| position(self.cod[f]).unwrap()).collect(),
            id: objects.iter().map(|&x| new_index(self.id[x])).collect(),
            comp,
        };
        (cat, morphisms)
    }
}

/// Free-function form of [`FiniteCategory::validate`].
pub fn validate_finite_category(category: &FiniteCategory) -> ValidationReport {
    category.validate()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_element(comp_ea: Mor) -> FiniteCategory {
        // morphisms e = 0 (identity), a = 1 with a ∘ a = a
        FiniteCategory::from_tables(1, vec![0, 0], vec![0, 0], vec![0], vec![Some(0), Some(comp_ea), Some(1), Some(1)])
            .unwrap()
    }

    #[test]
    fn terminal_is_valid_groupoid() {
        let report = FiniteCategory::terminal().validate();
        assert!(report.is_valid());
        assert!(report.is_groupoid);
    }

    #[test]
    fn corrupted_identity_row() {
        assert!(two_element(1).is_valid());
        let report = two_element(0).validate();
        assert!(!report.is_valid());
        assert!(report.laws().contains(&Law::IdentityLaw));
    }

    #[test]
    fn chain_is_valid_not_groupoid() {
        // 0 < 1: id0 = 0, id1 = 1, u = 2 : 0 -> 1
        let cat = FiniteCategory::from_tables(
            2,
            vec![0, 1, 0],
            vec![0, 1, 1],
            vec![0, 1],
            vec![
                Some(0), None, None, //
                None, Some(1), Some(2), //
                Some(2), None, None,
            ],
        )
        .unwrap();
        let report = cat.validate();
        assert!(report.is_valid(), "{:?}", report.violations);
        assert!(!report.is_groupoid);
    }

    #[test]
    fn malformed_tables_are_range_errors() {
        assert!(matches!(
            FiniteCategory::from_tables(1, vec![0], vec![1], vec![0], vec![Some(0)]),
            Err(CategoryError::IndexOutOfRange { table: "cod", .. })
        ));
        assert!(matches!(
            FiniteCategory::from_tables(1, vec![0], vec![0], vec![0], vec![]),
            Err(CategoryError::LengthMismatch { table: "comp", .. })
        ));
        assert!(matches!(
            FiniteCategory::from_tables(1, vec![0], vec![0], vec![0], vec![Some(4)]),
            Err(CategoryError::IndexOutOfRange { table: "comp", .. })
        ));
    }

    #[test]
    fn spurious_and_missing_composites() {
        let mut cat = FiniteCategory::terminal();
        cat.comp[0] = None;
        assert_eq!(cat.validate().laws(), vec![Law::Totality]);
    }

    #[test]
    fn dump_is_bit_exact_and_parses_back() {
        let cat = two_element(1);
        let text = cat.dump();
        assert_eq!(text, "category n=1 m=2\ndom 0 0\ncod 0 0\nid 0\ncomp\n0 1\n1 1\n");
        assert_eq!(FiniteCategory::parse_dump(&text).unwrap(), cat);
    }

    #[test]
    fn dump_lists_identities_first() {
        let cat = two_element(1);
        // swap morphism labels so the identity is 1
        let swapped = cat.relabel(&[0], &[1, 0]);
        assert_eq!(swapped.identity(0), 1);
        assert_eq!(swapped.dump(), cat.dump());
    }

    #[test]
    fn dump_marks_undefined_entries() {
        let chain = FiniteCategory::from_tables(
            2,
            vec![0, 1],
            vec![0, 1],
            vec![0, 1],
            vec![Some(0), None, None, Some(1)],
        )
        .unwrap();
        assert_eq!(chain.dump(), "category n=2 m=2\ndom 0 1\ncod 0 1\nid 0 1\ncomp\n0 -\n- 1\n");
    }

    #[test]
    fn parse_dump_errors_carry_lines() {
        let err = FiniteCategory::parse_dump("category n=1 m=1\ndom 0\ncod x\n").unwrap_err();
        assert!(matches!(err, CategoryError::Dump { line: 3, .. }));
    }
}
