//! Stern-Brocot tree built from mediants, and its image under
//! `k/l -> (k + l)/(l - k)`, whose nodes are the tori slopes of the toric
//! domain.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;

use crate::catalogue::{resonance_data, ResonanceLabel};
use crate::toric::torus_point;
use crate::{Error, Result};

/// Deepest level whose numerators and denominators are guaranteed to fit.
pub const MAX_DEPTH: u32 = 30;

/// Reduced fraction with nonnegative denominator; `1/0` is the infinity
/// node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: i64,
    den: i64,
}

impl Fraction {
    pub const INFINITY: Fraction = Fraction { num: 1, den: 0 };
    pub const ZERO: Fraction = Fraction { num: 0, den: 1 };
    pub const ONE: Fraction = Fraction { num: 1, den: 1 };

    /// Reduces and moves the sign to the numerator. Any `n/0` with `n != 0`
    /// is the infinity node.
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return if num == 0 {
                Err(Error::domain("0/0 is not a fraction"))
            } else {
                Ok(Self::INFINITY)
            };
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = n.checked_neg().ok_or(Error::Overflow("fraction sign"))?;
            d = d.checked_neg().ok_or(Error::Overflow("fraction sign"))?;
        }
        Ok(Self { num: n, den: d })
    }

    pub fn integer(n: i64) -> Self {
        Self { num: n, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den == 0
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_infinite() {
            f64::INFINITY
        } else {
            self.num as f64 / self.den as f64
        }
    }

    fn finite(self, op: &str) -> Result<Self> {
        if self.is_infinite() {
            Err(Error::domain(format!("{op} of the infinity node")))
        } else {
            Ok(self)
        }
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        let (a, b) = (self.finite("sum")?, rhs.finite("sum")?);
        let ov = || Error::Overflow("fraction addition");
        let n = a
            .num
            .checked_mul(b.den)
            .and_then(|x| b.num.checked_mul(a.den).and_then(|y| x.checked_add(y)))
            .ok_or_else(ov)?;
        let d = a.den.checked_mul(b.den).ok_or_else(ov)?;
        Self::new(n, d)
    }

    pub fn checked_neg(self) -> Result<Self> {
        let a = self.finite("negation")?;
        Ok(Self {
            num: a
                .num
                .checked_neg()
                .ok_or(Error::Overflow("fraction negation"))?,
            den: a.den,
        })
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        self.checked_add(rhs.checked_neg()?)
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        let (a, b) = (self.finite("product")?, rhs.finite("product")?);
        let ov = || Error::Overflow("fraction multiplication");
        Self::new(
            a.num.checked_mul(b.num).ok_or_else(ov)?,
            a.den.checked_mul(b.den).ok_or_else(ov)?,
        )
    }

    /// Division by zero yields the infinity node.
    pub fn checked_div(self, rhs: Self) -> Result<Self> {
        let (a, b) = (self.finite("quotient")?, rhs.finite("quotient")?);
        let ov = || Error::Overflow("fraction division");
        if b.num == 0 && a.num == 0 {
            return Err(Error::domain("0/0 is not a fraction"));
        }
        Self::new(
            a.num.checked_mul(b.den).ok_or_else(ov)?,
            a.den.checked_mul(b.num).ok_or_else(ov)?,
        )
    }

    pub fn abs(self) -> Self {
        Self {
            num: self.num.abs(),
            den: self.den,
        }
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fraction {
    /// The infinity node sorts above every finite value.
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            _ => (i128::from(self.num) * i128::from(other.den))
                .cmp(&(i128::from(other.num) * i128::from(self.den))),
        }
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("∞")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Root-to-node path; `false` is the left (even) child.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TreePath {
    pub bits: Vec<bool>,
}

impl TreePath {
    pub fn root() -> Self {
        Self::default()
    }

    /// The path to entry `index` of level `depth`, most significant bit
    /// first.
    pub fn from_index(depth: u32, index: u64) -> Result<Self> {
        if depth > MAX_DEPTH {
            return Err(Error::domain(format!("depth {depth} exceeds {MAX_DEPTH}")));
        }
        if index >> depth != 0 {
            return Err(Error::domain(format!(
                "index {index} outside level {depth}"
            )));
        }
        let bits = (0..depth).rev().map(|i| (index >> i) & 1 == 1).collect();
        Ok(Self { bits })
    }

    pub fn index(&self) -> u64 {
        self.bits
            .iter()
            .fold(0, |acc, &b| (acc << 1) | u64::from(b))
    }

    pub fn depth(&self) -> usize {
        self.bits.len()
    }
}

impl std::str::FromStr for TreePath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|ch| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::domain(format!("path digit {other:?} is not 0 or 1"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { bits })
    }
}

impl fmt::Display for TreePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeLevel {
    pub depth: u32,
    pub nodes: Vec<Fraction>,
}

pub fn mediant(f: Fraction, g: Fraction) -> Result<Fraction> {
    if f.den == 0 && g.den == 0 {
        return Err(Error::domain("mediant of two infinity nodes"));
    }
    let ov = || Error::Overflow("mediant");
    Fraction::new(
        f.num.checked_add(g.num).ok_or_else(ov)?,
        f.den.checked_add(g.den).ok_or_else(ov)?,
    )
}

/// Level `n` obtained by repeatedly inserting mediants between consecutive
/// entries of `0/1, 1/0`. Memory grows like `2^n`; use [`level_iter`] for
/// deep levels.
pub fn stern_brocot_level(n: u32) -> Result<TreeLevel> {
    if n > MAX_DEPTH {
        return Err(Error::domain(format!("depth {n} exceeds {MAX_DEPTH}")));
    }
    let mut seq = vec![Fraction::ZERO, Fraction::INFINITY];
    let mut fresh = Vec::new();
    for _ in 0..=n {
        let mut next = Vec::with_capacity(2 * seq.len() - 1);
        fresh.clear();
        for w in seq.windows(2) {
            let m = mediant(w[0], w[1])?;
            next.push(w[0]);
            next.push(m);
            fresh.push(m);
        }
        next.push(*seq.last().expect("boundary labels present"));
        seq = next;
    }
    Ok(TreeLevel {
        depth: n,
        nodes: fresh,
    })
}

/// Descends from `1/1`, narrowing `(low, high)` bounds with mediants.
pub fn node_at(path: &TreePath) -> Result<Fraction> {
    let (mut low, mut high) = (Fraction::ZERO, Fraction::INFINITY);
    let mut node = Fraction::ONE;
    for &right in &path.bits {
        if right {
            low = node;
        } else {
            high = node;
        }
        node = mediant(low, high)?;
    }
    Ok(node)
}

/// Streams level `n` left to right without materializing it.
pub fn level_iter(n: u32) -> Result<impl Iterator<Item = (TreePath, Fraction)>> {
    if n > MAX_DEPTH {
        return Err(Error::domain(format!("depth {n} exceeds {MAX_DEPTH}")));
    }
    Ok((0..1u64 << n).map(move |i| {
        let path = TreePath::from_index(n, i).expect("index within level");
        let node = node_at(&path).expect("levels up to MAX_DEPTH fit in i64");
        (path, node)
    }))
}

/// `(k + l)/(l - k)`, reduced; `(1, 1)` maps to the infinity node.
pub fn transform_node(k: i64, l: i64) -> Result<Fraction> {
    if k < 1 || l < 1 {
        return Err(Error::domain(format!(
            "({k},{l}): entries must be positive"
        )));
    }
    if k.gcd(&l) != 1 {
        return Err(Error::domain(format!("({k},{l}) is not coprime")));
    }
    let ov = || Error::Overflow("tree transform");
    Fraction::new(
        k.checked_add(l).ok_or_else(ov)?,
        l.checked_sub(k).ok_or_else(ov)?,
    )
}

pub fn transform_fraction(f: Fraction) -> Result<Fraction> {
    transform_node(f.num, f.den)
}

pub fn new_tree_level(n: u32) -> Result<TreeLevel> {
    let level = stern_brocot_level(n)?;
    let nodes = level
        .nodes
        .into_iter()
        .map(transform_fraction)
        .collect::<Result<Vec<_>>>()?;
    Ok(TreeLevel { depth: n, nodes })
}

/// `|transform_node(k, l) - (1 - g')/(1 + g')|` in exact arithmetic, where
/// `g' = -k/l` is the boundary slope at the `T_{k,l}` point. Both sides are
/// the infinity node for `(1, 1)`, which counts as an exact match.
pub fn slope_cross_check(k: u32, l: u32) -> Result<f64> {
    let label = ResonanceLabel::new(k, l)?;
    let slope = torus_point(k, l, resonance_data(label).c_kl)?.slope;
    let tree = transform_node(i64::from(k), i64::from(l))?;
    let one = Fraction::ONE;
    let rhs = one
        .checked_sub(slope)?
        .checked_div(one.checked_add(slope)?)?;
    Ok(match (tree.is_infinite(), rhs.is_infinite()) {
        (true, true) => 0.0,
        (false, false) => tree.checked_sub(rhs)?.abs().to_f64(),
        _ => f64::INFINITY,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fr(n: i64, d: i64) -> Fraction {
        Fraction::new(n, d).unwrap()
    }

    fn frs(pairs: &[(i64, i64)]) -> Vec<Fraction> {
        pairs.iter().map(|&(n, d)| fr(n, d)).collect()
    }

    #[test]
    fn fraction_normalizes() {
        assert_eq!(fr(4, 2), fr(2, 1));
        assert_eq!(fr(3, -1), fr(-3, 1));
        assert_eq!(fr(-3, 0), Fraction::INFINITY);
        assert!(Fraction::new(0, 0).is_err());
        assert_eq!(Fraction::INFINITY.to_string(), "∞");
        assert_eq!(fr(-3, 1).to_string(), "-3/1");
        assert!(fr(1, 2) < fr(2, 3) && fr(5, 1) < Fraction::INFINITY);
    }

    #[test]
    fn fraction_overflow_is_reported() {
        let big = Fraction::integer(i64::MAX);
        assert!(matches!(
            big.checked_add(Fraction::ONE),
            Err(Error::Overflow(_))
        ));
        assert!(matches!(
            fr(1, i64::MAX).checked_mul(fr(1, 2)),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn mediant_examples() {
        assert_eq!(
            mediant(Fraction::ZERO, Fraction::INFINITY).unwrap(),
            fr(1, 1)
        );
        assert_eq!(mediant(fr(1, 2), fr(1, 1)).unwrap(), fr(2, 3));
        assert_eq!(mediant(fr(1, 1), Fraction::INFINITY).unwrap(), fr(2, 1));
        assert!(mediant(Fraction::INFINITY, Fraction::INFINITY).is_err());
    }

    #[test]
    fn level_examples() {
        assert_eq!(stern_brocot_level(0).unwrap().nodes, frs(&[(1, 1)]));
        assert_eq!(
            stern_brocot_level(2).unwrap().nodes,
            frs(&[(1, 3), (2, 3), (3, 2), (3, 1)])
        );
        assert_eq!(
            stern_brocot_level(3).unwrap().nodes,
            frs(&[
                (1, 4),
                (2, 5),
                (3, 5),
                (3, 4),
                (4, 3),
                (5, 3),
                (5, 2),
                (4, 1)
            ])
        );
        assert!(stern_brocot_level(31).is_err());
    }

    #[test]
    fn node_at_examples() {
        let at = |s: &str| node_at(&s.parse().unwrap()).unwrap();
        assert_eq!(at(""), fr(1, 1));
        assert_eq!(at("0"), fr(1, 2));
        assert_eq!(at("1"), fr(2, 1));
        assert_eq!(at("01"), fr(2, 3));
        assert!("012".parse::<TreePath>().is_err());
    }

    #[test]
    fn streaming_matches_levels() {
        for n in 0..=10 {
            let level = stern_brocot_level(n).unwrap();
            let streamed: Vec<_> = level_iter(n).unwrap().map(|(_, f)| f).collect();
            assert_eq!(streamed, level.nodes);
        }
        let p = TreePath::from_index(3, 0b011).unwrap();
        assert_eq!(p.to_string(), "011");
        assert_eq!(p.index(), 3);
    }

    #[test]
    fn transform_examples() {
        assert_eq!(transform_node(1, 1).unwrap(), Fraction::INFINITY);
        assert_eq!(transform_node(1, 2).unwrap(), fr(3, 1));
        assert_eq!(transform_node(2, 1).unwrap(), fr(-3, 1));
        assert_eq!(transform_node(1, 3).unwrap(), fr(2, 1));
        assert!(transform_node(2, 4).is_err());
    }

    #[test]
    fn new_tree_examples() {
        assert_eq!(new_tree_level(0).unwrap().nodes, vec![Fraction::INFINITY]);
        assert_eq!(new_tree_level(1).unwrap().nodes, frs(&[(3, 1), (-3, 1)]));
        assert_eq!(
            new_tree_level(2).unwrap().nodes,
            frs(&[(2, 1), (5, 1), (-5, 1), (-2, 1)])
        );
        assert_eq!(
            new_tree_level(3).unwrap().nodes,
            frs(&[
                (5, 3),
                (7, 3),
                (4, 1),
                (7, 1),
                (-7, 1),
                (-4, 1),
                (-7, 3),
                (-5, 3)
            ])
        );
    }

    #[test]
    fn slope_examples() {
        assert_eq!(slope_cross_check(2, 1).unwrap(), 0.0);
        assert_eq!(slope_cross_check(1, 2).unwrap(), 0.0);
        assert_eq!(slope_cross_check(3, 2).unwrap(), 0.0);
        assert_eq!(slope_cross_check(1, 1).unwrap(), 0.0);
        assert!(slope_cross_check(2, 2).is_err());
    }
}
