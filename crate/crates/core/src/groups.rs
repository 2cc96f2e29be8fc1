//! Finite subgroups of SO(4) acting freely on S^3.
//!
//! Every group here is presented through the double cover
//! `phi(a,b): h -> a * h * conj(b)` of SO(4) by pairs of unit quaternions,
//! with `(a,b)` identified with `(-a,-b)`. Identifying C^2 with the
//! quaternions via `(z1, z2) <-> z1 + z2 j`, the image `phi(S^1 x S^3)` is
//! U(2) and `phi(1 x S^3)` is SU(2); an element `phi(e^{i alpha}, e^{i beta})`
//! acts as `diag(e^{i(alpha-beta)}, e^{i(alpha+beta)})`.
//!
//! The seven families: lens spaces `L(q,p)`, the products
//! `phi(L(1,2m) x K)` for `K` one of the binary dihedral, tetrahedral,
//! octahedral or icosahedral groups, and two diagonal (index two and index
//! three) subgroups of such products. Each family has an orientation-reversed
//! conjugate obtained by switching left and right multiplication.
//!
//! Elements are floating-point quaternion pairs. All coordinates that occur
//! are cosines and sines of rational multiples of pi with denominators a few
//! thousand at most, so distinct elements are separated by far more than
//! accumulated float noise; canonicalization and dedup use a 1e-9 tolerance.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;

use crate::exactnum::gcd;
use crate::hj::CyclicType;
use crate::{Error, Result};

/// Tolerance under which two coordinates (or angles) denote the same value.
pub const MATCH_TOL: f64 = 1e-9;

/// Threshold for picking the sign-canonicalization pivot; safely below the
/// smallest nonzero coordinate magnitude occurring at the orders considered.
const PIVOT_TOL: f64 = 1e-6;

const TWO_PI: f64 = 2.0 * PI;

/// A quaternion `w + x i + y j + z k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quat {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quat {
    pub const ONE: Quat = Quat::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quat = Quat::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quat = Quat::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quat = Quat::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Quat {
        Quat { w, x, y, z }
    }

    /// The circle element `cos t + sin t i`.
    pub fn cis(t: f64) -> Quat {
        Quat::new(t.cos(), t.sin(), 0.0, 0.0)
    }

    pub fn conj(&self) -> Quat {
        Quat::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn neg(&self) -> Quat {
        Quat::new(-self.w, -self.x, -self.y, -self.z)
    }

    pub fn mul(&self, o: &Quat) -> Quat {
        Quat::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }

    pub fn norm(&self) -> f64 {
        (self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// Principal rotation angle in `[0, pi]`: `acos` of the real part.
    pub fn principal_angle(&self) -> f64 {
        self.w.clamp(-1.0, 1.0).acos()
    }

    fn coords(&self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    fn normalized(&self) -> Quat {
        let n = self.norm();
        Quat::new(self.w / n, self.x / n, self.y / n, self.z / n)
    }
}

/// One element of a group: the pair `(left, right)` representing
/// `phi(left, right)`, stored as the canonical representative of
/// `(a,b) ~ (-a,-b)` (first coordinate of `left` above the pivot threshold is
/// made positive).
#[derive(Debug, Clone, Copy)]
pub struct GroupElement {
    left: Quat,
    right: Quat,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement {
        left: Quat::ONE,
        right: Quat::ONE,
    };

    /// Canonicalizes the pair; both quaternions must be (near) unit.
    pub fn new(left: Quat, right: Quat) -> GroupElement {
        let mut left = left.normalized();
        let mut right = right.normalized();
        for c in left.coords() {
            if c.abs() > PIVOT_TOL {
                if c < 0.0 {
                    left = left.neg();
                    right = right.neg();
                }
                break;
            }
        }
        GroupElement { left, right }
    }

    pub fn left(&self) -> Quat {
        self.left
    }

    pub fn right(&self) -> Quat {
        self.right
    }

    /// Group law inherited from phi: `phi(a,b) . phi(c,d) = phi(ac, bd)`.
    pub fn compose(&self, o: &GroupElement) -> GroupElement {
        GroupElement::new(self.left.mul(&o.left), self.right.mul(&o.right))
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement::new(self.left.conj(), self.right.conj())
    }

    /// The element of the orientation-reversed conjugate group: left and
    /// right multiplication switched.
    pub fn swapped(&self) -> GroupElement {
        GroupElement::new(self.right, self.left)
    }

    pub fn is_identity(&self) -> bool {
        let (r, s) = self.rotation_numbers();
        r.abs() < MATCH_TOL && s.abs() < MATCH_TOL
    }

    /// Rotation numbers `(r, s) = (alpha - beta, alpha + beta) mod 2pi` from
    /// the principal angles of the two quaternions. For U(2) elements this is
    /// the pair of eigenvalue arguments of the induced 2x2 unitary matrix, up
    /// to the representative ambiguity (simultaneous conjugation with swap),
    /// under which everything derived from these angles is invariant.
    pub fn rotation_numbers(&self) -> (f64, f64) {
        let a = self.left.principal_angle();
        let b = self.right.principal_angle();
        (snap_angle(a - b), snap_angle(a + b))
    }
}

/// Reduces to `[0, 2pi)` and snaps values within tolerance of `2pi` to 0.
fn snap_angle(t: f64) -> f64 {
    let t = t.rem_euclid(TWO_PI);
    if TWO_PI - t < MATCH_TOL {
        0.0
    } else {
        t
    }
}

fn cmp_f64(a: f64, b: f64) -> Ordering {
    a.partial_cmp(&b).expect("group coordinates are finite")
}

/// Lexicographic order on the 8 coordinates, with coordinates within
/// `MATCH_TOL` treated as equal. Coordinates of distinct group elements are
/// either separated by far more than the tolerance or equal up to float
/// noise far below it, so this is a consistent total order on any data the
/// crate produces (an exact comparator is not: it would order elements by
/// noise like `sin(pi) = 1.2e-16` inside a fuzzy-equal coordinate run).
pub(crate) fn cmp_elements(a: &GroupElement, b: &GroupElement) -> Ordering {
    let (ka, kb) = (element_coords(a), element_coords(b));
    for i in 0..8 {
        if (ka[i] - kb[i]).abs() > MATCH_TOL {
            return cmp_f64(ka[i], kb[i]);
        }
    }
    Ordering::Equal
}

fn element_coords(g: &GroupElement) -> [f64; 8] {
    let l = g.left.coords();
    let r = g.right.coords();
    [l[0], l[1], l[2], l[3], r[0], r[1], r[2], r[3]]
}

fn sort_dedup(mut v: Vec<GroupElement>) -> Vec<GroupElement> {
    v.sort_unstable_by(cmp_elements);
    v.dedup_by(|a, b| cmp_elements(a, b) == Ordering::Equal);
    v
}

/// The seven group families. Parameter conditions (checked by `validate`):
/// `gcd(q,p) = 1`; `gcd(m,2n) = 1` for the dihedral product; `gcd(m,6) = 1`
/// for the tetrahedral and octahedral products; `gcd(m,30) = 1` for the
/// icosahedral product; `m` even with `gcd(m,n) = 1` for the index-two
/// diagonal; `gcd(m,6) = 3` for the index-three diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Cyclic { q: i64, p: i64 },
    DihedralProduct { m: i64, n: i64 },
    TetrahedralProduct { m: i64 },
    OctahedralProduct { m: i64 },
    IcosahedralProduct { m: i64 },
    IndexTwoDiagonal { m: i64, n: i64 },
    IndexThreeDiagonal { m: i64 },
}

/// Names a group: a family with parameters, plus the orientation-reversal
/// flag for the conjugate `phi(b,a)` groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    pub family: Family,
    pub reversed: bool,
}

impl GroupSpec {
    pub fn new(family: Family) -> GroupSpec {
        GroupSpec {
            family,
            reversed: false,
        }
    }

    pub fn reversed_of(family: Family) -> GroupSpec {
        GroupSpec {
            family,
            reversed: true,
        }
    }

    /// Table parameter conditions.
    pub fn validate(&self) -> bool {
        match self.family {
            Family::Cyclic { q, p } => p >= 1 && gcd(q.rem_euclid(p.max(1)), p) == 1,
            Family::DihedralProduct { m, n } => m >= 1 && n >= 1 && gcd(m, 2 * n) == 1,
            Family::TetrahedralProduct { m } | Family::OctahedralProduct { m } => {
                m >= 1 && gcd(m, 6) == 1
            }
            Family::IcosahedralProduct { m } => m >= 1 && gcd(m, 30) == 1,
            Family::IndexTwoDiagonal { m, n } => {
                m >= 2 && n >= 1 && m % 2 == 0 && gcd(m, n) == 1
            }
            Family::IndexThreeDiagonal { m } => m >= 3 && gcd(m, 6) == 3,
        }
    }

    /// Group order; reversal-invariant.
    pub fn order(&self) -> Result<i64> {
        if !self.validate() {
            return Err(Error::Domain(format!("invalid group parameters: {self}")));
        }
        Ok(match self.family {
            Family::Cyclic { p, .. } => p,
            Family::DihedralProduct { m, n } | Family::IndexTwoDiagonal { m, n } => 4 * m * n,
            Family::TetrahedralProduct { m } | Family::IndexThreeDiagonal { m } => 24 * m,
            Family::OctahedralProduct { m } => 48 * m,
            Family::IcosahedralProduct { m } => 120 * m,
        })
    }

    /// The orientation-reversed conjugate. Cyclic reversal lands back in
    /// U(2), so it is returned as the unreversed `L(p-q, p)`.
    pub fn reverse(&self) -> GroupSpec {
        let s = self.normalized();
        match s.family {
            Family::Cyclic { q, p } => {
                let q = (p - q).rem_euclid(p.max(1));
                GroupSpec::new(Family::Cyclic { q, p })
            }
            f => GroupSpec {
                family: f,
                reversed: !s.reversed,
            },
        }
    }

    /// Folds a reversed cyclic spec into its equivalent unreversed form
    /// `L(p-q, p)`; any other spec is returned unchanged.
    pub fn normalized(&self) -> GroupSpec {
        match self.family {
            Family::Cyclic { q, p } if self.reversed && p >= 1 => {
                GroupSpec::new(Family::Cyclic {
                    q: (p - q).rem_euclid(p),
                    p,
                })
            }
            _ => *self,
        }
    }

    /// For specs whose group is in fact cyclic (the `Cyclic` family, and the
    /// degenerate `n = 1` dihedral and index-two products, which are the lens
    /// spaces `L(2m+1, 4m)`), the lens type with any reversal folded in.
    pub fn cyclic_group_type(&self) -> Option<CyclicType> {
        let s = self.normalized();
        let (q, p) = match s.family {
            Family::Cyclic { q, p } => (q, p),
            Family::DihedralProduct { m, n: 1 } | Family::IndexTwoDiagonal { m, n: 1 } => {
                (2 * m + 1, 4 * m)
            }
            _ => return None,
        };
        let t = CyclicType::new(q, p).ok()?;
        Some(if s.reversed { t.reversed() } else { t })
    }

    /// SU(2) membership: every element has determinant 1 as a U(2) matrix.
    /// Holds exactly for `L(p-1, p)` (including the trivial group) and the
    /// unreversed product families with `m = 1`. Meaningful on valid specs.
    pub fn is_in_su2(&self) -> bool {
        if let Some(t) = self.cyclic_group_type() {
            return t.is_trivial() || t.q() == t.p() - 1;
        }
        let s = self.normalized();
        if s.reversed {
            return false;
        }
        match s.family {
            Family::DihedralProduct { m, .. }
            | Family::TetrahedralProduct { m }
            | Family::OctahedralProduct { m }
            | Family::IcosahedralProduct { m } => m == 1,
            Family::IndexTwoDiagonal { .. } | Family::IndexThreeDiagonal { .. } => false,
            Family::Cyclic { .. } => unreachable!("handled via cyclic_group_type"),
        }
    }

    /// U(2) membership: everything except the reversed non-cyclic groups.
    pub fn is_in_u2(&self) -> bool {
        !self.normalized().reversed
    }

    /// The parameter `m` of the non-cyclic families (their intersection with
    /// the central circle is `L(1,2m)`); `None` for the cyclic family.
    pub fn m_parameter(&self) -> Option<i64> {
        match self.family {
            Family::Cyclic { .. } => None,
            Family::DihedralProduct { m, .. }
            | Family::TetrahedralProduct { m }
            | Family::OctahedralProduct { m }
            | Family::IcosahedralProduct { m }
            | Family::IndexTwoDiagonal { m, .. }
            | Family::IndexThreeDiagonal { m } => Some(m),
        }
    }

    /// Splits a genuinely non-cyclic unreversed spec into `(m, c)` with
    /// `c = |Γ|/(4m)`, the modulus of every congruence table. Cyclic and
    /// reversed specs are rejected, and so are the degenerate `n = 1`
    /// products: those are cyclic groups in disguise, and their resolutions
    /// have no central curve for the tables to describe.
    pub(crate) fn noncyclic_params(&self) -> Result<(i64, i64)> {
        if !self.validate() {
            return Err(Error::Domain(format!("invalid group parameters: {self}")));
        }
        let s = self.normalized();
        if s.reversed {
            return Err(Error::Domain(format!(
                "{s} is not a subgroup of U(2); reverse it first"
            )));
        }
        match (s.m_parameter(), s.cyclic_group_type()) {
            (None, _) => Err(Error::Domain(format!("{s} is cyclic; no central curve"))),
            (_, Some(t)) => Err(Error::Domain(format!(
                "{s} is conjugate to the cyclic {t}; no central curve"
            ))),
            (Some(m), None) => Ok((m, s.order()? / (4 * m))),
        }
    }

    /// Parses the spec grammar `["~"] family`, with
    /// `family := L(q,p) | D(m,n) | T(m) | O(m) | I(m) | I2(m,n) | I3(m)`.
    /// Whitespace-insensitive. Purely syntactic: parameter validity is left
    /// to `validate`.
    pub fn parse(s: &str) -> Result<GroupSpec> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("expected [~]NAME(args), got {s:?}"));
        let (reversed, body) = match compact.strip_prefix('~') {
            Some(rest) => (true, rest),
            None => (false, compact.as_str()),
        };
        let open = body.find('(').ok_or_else(bad)?;
        let close = body.strip_suffix(')').ok_or_else(bad)?;
        let name = &body[..open];
        let args: Vec<i64> = close[open + 1..]
            .split(',')
            .map(|a| a.parse::<i64>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        let family = match (name, args.as_slice()) {
            ("L", &[q, p]) => Family::Cyclic { q, p },
            ("D", &[m, n]) => Family::DihedralProduct { m, n },
            ("T", &[m]) => Family::TetrahedralProduct { m },
            ("O", &[m]) => Family::OctahedralProduct { m },
            ("I", &[m]) => Family::IcosahedralProduct { m },
            ("I2", &[m, n]) => Family::IndexTwoDiagonal { m, n },
            ("I3", &[m]) => Family::IndexThreeDiagonal { m },
            _ => return Err(bad()),
        };
        Ok(GroupSpec { family, reversed })
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.reversed {
            write!(f, "~")?;
        }
        match self.family {
            Family::Cyclic { q, p } => write!(f, "L({q},{p})"),
            Family::DihedralProduct { m, n } => write!(f, "D({m},{n})"),
            Family::TetrahedralProduct { m } => write!(f, "T({m})"),
            Family::OctahedralProduct { m } => write!(f, "O({m})"),
            Family::IcosahedralProduct { m } => write!(f, "I({m})"),
            Family::IndexTwoDiagonal { m, n } => write!(f, "I2({m},{n})"),
            Family::IndexThreeDiagonal { m } => write!(f, "I3({m})"),
        }
    }
}

/// The binary dihedral group of order 4n: `<e^{i pi/n}, j>`.
fn binary_dihedral(n: i64) -> Vec<Quat> {
    let mut v = Vec::with_capacity(4 * n as usize);
    for k in 0..2 * n {
        let c = Quat::cis(PI * k as f64 / n as f64);
        v.push(c);
        v.push(c.mul(&Quat::J));
    }
    v
}

/// The binary tetrahedral group: the 24 Hurwitz units.
fn binary_tetrahedral() -> Vec<Quat> {
    let mut v = vec![
        Quat::ONE,
        Quat::ONE.neg(),
        Quat::I,
        Quat::I.neg(),
        Quat::J,
        Quat::J.neg(),
        Quat::K,
        Quat::K.neg(),
    ];
    for sw in [0.5, -0.5] {
        for sx in [0.5, -0.5] {
            for sy in [0.5, -0.5] {
                for sz in [0.5, -0.5] {
                    v.push(Quat::new(sw, sx, sy, sz));
                }
            }
        }
    }
    v
}

/// The binary octahedral group: Hurwitz units plus the 24 quaternions with
/// exactly two coordinates `+-1/sqrt(2)`.
fn binary_octahedral() -> Vec<Quat> {
    let mut v = binary_tetrahedral();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..4 {
        for j in (i + 1)..4 {
            for si in [h, -h] {
                for sj in [h, -h] {
                    let mut c = [0.0; 4];
                    c[i] = si;
                    c[j] = sj;
                    v.push(Quat::new(c[0], c[1], c[2], c[3]));
                }
            }
        }
    }
    v
}

/// The binary icosahedral group: Hurwitz units plus the 96 even coordinate
/// permutations of `(0, +-1, +-1/g, +-g)/2` with `g` the golden ratio.
fn binary_icosahedral() -> Vec<Quat> {
    let mut v = binary_tetrahedral();
    let g = (1.0 + 5.0f64.sqrt()) / 2.0;
    let base = [0.0, 0.5, 0.5 / g, 0.5 * g];
    for perm in even_permutations() {
        for signs in 0..8u32 {
            let mut c = [0.0; 4];
            let mut bit = 0;
            for (slot, &src) in perm.iter().enumerate() {
                if src == 0 {
                    c[slot] = 0.0;
                } else {
                    let s = if signs >> bit & 1 == 1 { -1.0 } else { 1.0 };
                    c[slot] = s * base[src];
                    bit += 1;
                }
            }
            v.push(Quat::new(c[0], c[1], c[2], c[3]));
        }
    }
    v
}

/// The 12 even permutations of (0,1,2,3).
fn even_permutations() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(12);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let mut seen = [false; 4];
                    p.iter().for_each(|&i| seen[i] = true);
                    if !seen.iter().all(|&s| s) {
                        continue;
                    }
                    let mut inversions = 0;
                    for i in 0..4 {
                        for j in (i + 1)..4 {
                            if p[i] > p[j] {
                                inversions += 1;
                            }
                        }
                    }
                    if inversions % 2 == 0 {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn polyhedral_table(family: &Family) -> Option<Vec<Quat>> {
    match *family {
        Family::DihedralProduct { n, .. } => Some(binary_dihedral(n)),
        Family::TetrahedralProduct { .. } => Some(binary_tetrahedral()),
        Family::OctahedralProduct { .. } => Some(binary_octahedral()),
        Family::IcosahedralProduct { .. } => Some(binary_icosahedral()),
        _ => None,
    }
}

/// Coset index of `d` in the binary dihedral group: 0 on the cyclic part,
/// 1 on the j-coset.
fn dihedral_coset(d: &Quat) -> i64 {
    if d.y.abs() < 0.5 && d.z.abs() < 0.5 {
        0
    } else {
        1
    }
}

/// Coset index of `t` in T* modulo the quaternion subgroup Q8, valued in
/// Z/3 through powers of `omega = (1+i+j+k)/2`.
fn tetrahedral_coset(t: &Quat) -> i64 {
    let in_q8 = |q: &Quat| q.coords().iter().any(|c| c.abs() > 0.9);
    if in_q8(t) {
        return 0;
    }
    let omega = Quat::new(0.5, 0.5, 0.5, 0.5);
    if in_q8(&t.mul(&omega.conj())) {
        1
    } else {
        2
    }
}

/// A finite generating set. Product families use the left circle generator
/// plus the standard generators of the right factor; diagonal families use
/// the circle/right generators of even index plus one mixed-coset element.
/// Reversed specs swap left and right in every generator.
pub fn generators(spec: &GroupSpec) -> Result<Vec<GroupElement>> {
    let s = spec.normalized();
    if !s.validate() {
        return Err(Error::Domain(format!("invalid group parameters: {spec}")));
    }
    let gens = generators_unchecked(&s)?;
    Ok(gens)
}

fn generators_unchecked(s: &GroupSpec) -> Result<Vec<GroupElement>> {
    check_positive(s)?;
    let mf = |m: i64| m as f64;
    let gens: Vec<GroupElement> = match s.family {
        Family::Cyclic { q, p } => {
            // acts as diag(e^{2 pi i/p}, e^{2 pi i q/p})
            vec![GroupElement::new(
                Quat::cis(PI * mf(q + 1) / mf(p)),
                Quat::cis(PI * mf(q - 1) / mf(p)),
            )]
        }
        Family::DihedralProduct { m, n } => vec![
            GroupElement::new(Quat::cis(PI / mf(m)), Quat::ONE),
            GroupElement::new(Quat::ONE, Quat::cis(PI / mf(n))),
            GroupElement::new(Quat::ONE, Quat::J),
        ],
        Family::TetrahedralProduct { m } => vec![
            GroupElement::new(Quat::cis(PI / mf(m)), Quat::ONE),
            GroupElement::new(Quat::ONE, Quat::I),
            GroupElement::new(Quat::ONE, Quat::new(0.5, 0.5, 0.5, 0.5)),
        ],
        Family::OctahedralProduct { m } => {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            vec![
                GroupElement::new(Quat::cis(PI / mf(m)), Quat::ONE),
                GroupElement::new(Quat::ONE, Quat::new(0.5, 0.5, 0.5, 0.5)),
                GroupElement::new(Quat::ONE, Quat::new(h, h, 0.0, 0.0)),
            ]
        }
        Family::IcosahedralProduct { m } => {
            let g = (1.0 + 5.0f64.sqrt()) / 2.0;
            vec![
                GroupElement::new(Quat::cis(PI / mf(m)), Quat::ONE),
                GroupElement::new(Quat::ONE, Quat::new(0.5, 0.5, 0.5, 0.5)),
                GroupElement::new(Quat::ONE, Quat::new(0.5 * g, 0.5 / g, 0.5, 0.0)),
            ]
        }
        Family::IndexTwoDiagonal { m, n } => vec![
            GroupElement::new(Quat::cis(PI / mf(m)), Quat::ONE),
            GroupElement::new(Quat::ONE, Quat::cis(PI / mf(n))),
            GroupElement::new(Quat::cis(PI / mf(2 * m)), Quat::J),
        ],
        Family::IndexThreeDiagonal { m } => vec![
            GroupElement::new(Quat::cis(PI / mf(m)), Quat::ONE),
            GroupElement::new(Quat::ONE, Quat::I),
            GroupElement::new(
                Quat::cis(PI / mf(3 * m)),
                Quat::new(0.5, 0.5, 0.5, 0.5),
            ),
        ],
    };
    Ok(if s.reversed {
        gens.iter().map(GroupElement::swapped).collect()
    } else {
        gens
    })
}

fn check_positive(s: &GroupSpec) -> Result<()> {
    let ok = match s.family {
        Family::Cyclic { p, .. } => p >= 1,
        Family::DihedralProduct { m, n } | Family::IndexTwoDiagonal { m, n } => m >= 1 && n >= 1,
        Family::TetrahedralProduct { m }
        | Family::OctahedralProduct { m }
        | Family::IcosahedralProduct { m }
        | Family::IndexThreeDiagonal { m } => m >= 1,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "group parameters of {s} must be positive"
        )))
    }
}

/// All elements of the group named by the spec, as canonical representatives
/// sorted by coordinates. The construction is the closure of the generators:
/// powers for cyclic groups, the full product set for the product families,
/// and homomorphism matching for the diagonal families.
pub fn enumerate(spec: &GroupSpec) -> Result<Vec<GroupElement>> {
    let s = spec.normalized();
    if !s.validate() {
        return Err(Error::Domain(format!("invalid group parameters: {spec}")));
    }
    let order = s.order()? as usize;
    let elements = enumerate_unchecked(&s)?;
    if elements.len() > 10 * order {
        return Err(Error::ClosureOverflow { cap: 10 * order });
    }
    Ok(elements)
}

/// Element construction without parameter validation; used by the freeness
/// check, which must be able to enumerate deliberately invalid parameter
/// choices. The constructions below are closed under the group law for any
/// positive parameters.
///
/// Each SO(4) element is built exactly once: the pair `(k, d)` and its
/// antipode `(k + half, -d)` name the same element, so `k` runs over half
/// its period. Dedup in `sort_dedup` is then a safety net, not a mechanism.
fn enumerate_unchecked(s: &GroupSpec) -> Result<Vec<GroupElement>> {
    check_positive(s)?;
    let mf = |m: i64| m as f64;
    let mut v: Vec<GroupElement> = Vec::new();
    match s.family {
        Family::Cyclic { q, p } => {
            for k in 0..p {
                v.push(GroupElement::new(
                    Quat::cis(PI * mf(k * (q + 1)) / mf(p)),
                    Quat::cis(PI * mf(k * (q - 1)) / mf(p)),
                ));
            }
        }
        Family::DihedralProduct { m, .. }
        | Family::TetrahedralProduct { m }
        | Family::OctahedralProduct { m }
        | Family::IcosahedralProduct { m } => {
            let table = polyhedral_table(&s.family).expect("product family");
            for k in 0..m {
                let left = Quat::cis(PI * mf(k) / mf(m));
                for d in &table {
                    v.push(GroupElement::new(left, *d));
                }
            }
        }
        Family::IndexTwoDiagonal { m, n } => {
            let table = binary_dihedral(n);
            for k in 0..2 * m {
                let left = Quat::cis(PI * mf(k) / mf(2 * m));
                for d in &table {
                    if (k + dihedral_coset(d)) % 2 == 0 {
                        v.push(GroupElement::new(left, *d));
                    }
                }
            }
        }
        Family::IndexThreeDiagonal { m } => {
            let table = binary_tetrahedral();
            for k in 0..3 * m {
                let left = Quat::cis(PI * mf(k) / mf(3 * m));
                for t in &table {
                    if k.rem_euclid(3) == tetrahedral_coset(t) {
                        v.push(GroupElement::new(left, *t));
                    }
                }
            }
        }
    }
    if s.reversed {
        v = v.iter().map(GroupElement::swapped).collect();
    }
    Ok(sort_dedup(v))
}

/// Deterministic breadth-first closure of a generating set under the group
/// law, capped at `cap` elements. Serves as the independent oracle that the
/// generator lists generate exactly the enumerated groups.
pub fn closure_of(gens: &[GroupElement], cap: usize) -> Result<Vec<GroupElement>> {
    let mut elements = vec![GroupElement::IDENTITY];
    let mut queue = vec![GroupElement::IDENTITY];
    let mut head = 0;
    while head < queue.len() {
        let f = queue[head];
        head += 1;
        for g in gens {
            let h = f.compose(g);
            if let Err(pos) = elements.binary_search_by(|e| cmp_elements(e, &h)) {
                elements.insert(pos, h);
                queue.push(h);
                if elements.len() > cap {
                    return Err(Error::ClosureOverflow { cap });
                }
            }
        }
    }
    Ok(elements)
}

/// Checks freeness of the action on S^3: every non-identity element of the
/// constructed closure must avoid eigenvalue 1, i.e. have both rotation
/// numbers nonzero mod 2pi. Runs on specs failing `validate` too (that is
/// its purpose); only nonpositive parameters are rejected.
pub fn is_free_on_s3(spec: &GroupSpec) -> Result<bool> {
    let elements = enumerate_unchecked(&spec.normalized())?;
    Ok(elements.iter().all(|g| {
        let (r, s) = g.rotation_numbers();
        g.is_identity() || (r.abs() > MATCH_TOL && s.abs() > MATCH_TOL)
    }))
}

/// Rotation-number histogram: enumerated elements grouped by their `(r, s)`
/// pair within tolerance, with counts. Sorted by angle pair.
pub fn eigenangle_histogram(spec: &GroupSpec) -> Result<Vec<((f64, f64), usize)>> {
    let mut pairs: Vec<(f64, f64)> = enumerate(spec)?
        .iter()
        .map(GroupElement::rotation_numbers)
        .collect();
    // same tolerance-first ordering as for elements: never order by noise
    pairs.sort_unstable_by(|a, b| {
        if (a.0 - b.0).abs() > MATCH_TOL {
            cmp_f64(a.0, b.0)
        } else if (a.1 - b.1).abs() > MATCH_TOL {
            cmp_f64(a.1, b.1)
        } else {
            Ordering::Equal
        }
    });
    let mut hist: Vec<((f64, f64), usize)> = Vec::new();
    for pair in pairs {
        match hist.last_mut() {
            Some((key, count))
                if (key.0 - pair.0).abs() < MATCH_TOL && (key.1 - pair.1).abs() < MATCH_TOL =>
            {
                *count += 1;
            }
            _ => hist.push((pair, 1)),
        }
    }
    Ok(hist)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> GroupSpec {
        GroupSpec::parse(s).unwrap()
    }

    #[test]
    fn parse_display_roundtrip() {
        for s in [
            "L(1,5)", "L(-2,7)", "D(3,2)", "T(5)", "O(1)", "I(7)", "I2(2,3)", "I3(9)",
            "~D(3,2)", "~T(1)", "~I2(4,1)",
        ] {
            let g = spec(s);
            assert_eq!(g.to_string(), s);
        }
        assert_eq!(spec(" ~ D ( 3 , 2 ) "), spec("~D(3,2)"));
        for bad in ["", "D(3", "D(3,2", "X(1)", "D(a,2)", "T()", "T(1,2)", "L(1)"] {
            assert!(GroupSpec::parse(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn validate_table_conditions() {
        assert!(spec("D(1,2)").validate());
        assert!(!spec("D(2,2)").validate());
        assert!(spec("I2(2,3)").validate());
        assert!(!spec("I2(3,2)").validate());
        assert!(!spec("I2(2,2)").validate());
        assert!(spec("I3(3)").validate());
        assert!(spec("I3(9)").validate());
        assert!(!spec("I3(5)").validate());
        assert!(!spec("I3(6)").validate());
        assert!(spec("T(5)").validate());
        assert!(!spec("T(3)").validate());
        assert!(spec("I(7)").validate());
        assert!(!spec("I(5)").validate());
        assert!(spec("L(3,7)").validate());
        assert!(!spec("L(2,4)").validate());
        assert!(spec("L(0,1)").validate());
    }

    #[test]
    fn orders() {
        let cases = [
            ("L(1,2)", 2),
            ("D(1,2)", 8),
            ("D(3,2)", 24),
            ("T(1)", 24),
            ("O(1)", 48),
            ("I(1)", 120),
            ("I2(2,1)", 8),
            ("I2(2,3)", 24),
            ("I3(3)", 72),
            ("~T(1)", 24),
        ];
        for (s, n) in cases {
            assert_eq!(spec(s).order().unwrap(), n, "{s}");
        }
        assert!(spec("D(2,2)").order().is_err());
    }

    #[test]
    fn enumerate_counts_match_orders() {
        for s in [
            "L(1,2)", "L(3,7)", "L(5,8)", "D(1,2)", "D(3,2)", "D(1,3)", "T(1)", "O(1)",
            "I(1)", "I2(2,1)", "I2(2,3)", "I2(4,3)", "I3(3)", "I3(9)", "~D(3,2)", "~I3(3)",
            "~L(2,5)", "D(3,1)", "I2(2,5)",
        ] {
            let g = spec(s);
            assert_eq!(
                enumerate(&g).unwrap().len() as i64,
                g.order().unwrap(),
                "{s}"
            );
        }
    }

    #[test]
    fn enumerations_are_closed_groups() {
        for s in ["D(3,2)", "I2(2,3)", "I3(3)", "T(1)", "~D(1,2)", "L(3,8)"] {
            let els = enumerate(&spec(s)).unwrap();
            let find = |g: &GroupElement| {
                els.binary_search_by(|e| cmp_elements(e, g)).is_ok()
            };
            for a in &els {
                assert!(find(&a.inverse()), "{s}: inverse escapes");
                for b in &els {
                    assert!(find(&a.compose(b)), "{s}: product escapes");
                }
            }
        }
    }

    #[test]
    fn generator_closure_agrees_with_enumeration() {
        for s in [
            "L(3,7)", "D(3,2)", "D(1,3)", "T(1)", "O(1)", "I(1)", "I2(2,3)", "I2(2,1)",
            "I3(3)", "~I2(2,3)", "~D(3,2)", "~I3(3)",
        ] {
            let g = spec(s);
            let cap = 10 * g.order().unwrap() as usize;
            let closed = closure_of(&generators(&g).unwrap(), cap).unwrap();
            let listed = enumerate(&g).unwrap();
            assert_eq!(closed.len(), listed.len(), "{s}");
            for (a, b) in closed.iter().zip(&listed) {
                assert_eq!(cmp_elements(a, b), Ordering::Equal, "{s}");
            }
        }
    }

    #[test]
    fn polyhedral_tables_are_closed() {
        for (name, table) in [
            ("D*12", binary_dihedral(3)),
            ("T*", binary_tetrahedral()),
            ("O*", binary_octahedral()),
            ("I*", binary_icosahedral()),
        ] {
            let find = |q: &Quat| {
                table.iter().any(|t| {
                    (t.w - q.w).abs() < 1e-9
                        && (t.x - q.x).abs() < 1e-9
                        && (t.y - q.y).abs() < 1e-9
                        && (t.z - q.z).abs() < 1e-9
                })
            };
            for a in &table {
                assert!((a.norm() - 1.0).abs() < 1e-12, "{name}: non-unit");
                for b in &table {
                    assert!(find(&a.mul(b)), "{name}: not closed");
                }
            }
        }
        assert_eq!(binary_dihedral(3).len(), 12);
        assert_eq!(binary_tetrahedral().len(), 24);
        assert_eq!(binary_octahedral().len(), 48);
        assert_eq!(binary_icosahedral().len(), 120);
    }

    #[test]
    fn rotation_number_conventions() {
        // phi(-1, 1) rotates both planes by pi
        let g = GroupElement::new(Quat::ONE.neg(), Quat::ONE);
        let (r, s) = g.rotation_numbers();
        assert!((r - PI).abs() < 1e-12 && (s - PI).abs() < 1e-12);
        // phi(e^{i a}, 1) -> (a, a)
        let a = 0.7;
        let g = GroupElement::new(Quat::cis(a), Quat::ONE);
        let (r, s) = g.rotation_numbers();
        assert!((r - a).abs() < 1e-12 && (s - a).abs() < 1e-12);
        // phi(1, e^{i b}) -> (-b mod 2pi, b)
        let b = 1.1;
        let g = GroupElement::new(Quat::ONE, Quat::cis(b));
        let (r, s) = g.rotation_numbers();
        assert!((r - (TWO_PI - b)).abs() < 1e-12 && (s - b).abs() < 1e-12);
    }

    #[test]
    fn canonicalization_handles_negation() {
        let a = Quat::cis(2.0);
        let b = Quat::new(0.5, -0.5, 0.5, 0.5);
        let g = GroupElement::new(a, b);
        let h = GroupElement::new(a.neg(), b.neg());
        assert_eq!(cmp_elements(&g, &h), Ordering::Equal);
        let (r1, s1) = g.rotation_numbers();
        let (r2, s2) = h.rotation_numbers();
        assert!((r1 - r2).abs() < 1e-12 && (s1 - s2).abs() < 1e-12);
    }

    #[test]
    fn rotation_numbers_match_unitary_eigenvalues() {
        // for U(2) elements (left a circle element), (r,s) must match the
        // eigenvalue arguments of the 2x2 matrix of z -> a z conj(b), up to
        // the joint-conjugation-with-swap ambiguity
        use num_complex::Complex64;
        let to_c2 = |q: &Quat| (Complex64::new(q.w, q.x), Complex64::new(q.y, q.z));
        for s in ["L(3,7)", "D(3,2)", "I2(2,3)", "D(1,3)"] {
            for g in enumerate(&spec(s)).unwrap() {
                let act = |h: &Quat| g.left().mul(&h.mul(&g.right().conj()));
                // columns are the images of the basis 1, j under z1 + z2 j
                let (m11, m21) = to_c2(&act(&Quat::ONE));
                let (m12, m22) = to_c2(&act(&Quat::J));
                let tr = m11 + m22;
                let det = m11 * m22 - m12 * m21;
                let disc = (tr * tr - det * 4.0).sqrt();
                let l1 = (tr + disc) / 2.0;
                let l2 = (tr - disc) / 2.0;
                let (r, s_) = g.rotation_numbers();
                let got = canon_pair(l1.arg(), l2.arg());
                let want = canon_pair(r, s_);
                // sqrt of the near-zero discriminant at double eigenvalues
                // amplifies float noise to ~1e-8
                assert!(
                    (got.0 - want.0).abs() < 1e-6 && (got.1 - want.1).abs() < 1e-6,
                    "{s}: {got:?} vs {want:?}"
                );
            }
        }
    }

    /// Canonical form of an eigenangle pair under swap and joint negation.
    fn canon_pair(a: f64, b: f64) -> (f64, f64) {
        let n = |t: f64| snap_angle(t);
        let cands = [
            (n(a), n(b)),
            (n(b), n(a)),
            (n(-a), n(-b)),
            (n(-b), n(-a)),
        ];
        let mut best = cands[0];
        for c in &cands[1..] {
            if c.0 < best.0 - 1e-12 || ((c.0 - best.0).abs() < 1e-12 && c.1 < best.1 - 1e-12) {
                best = *c;
            }
        }
        best
    }

    #[test]
    fn su2_membership() {
        assert!(spec("T(1)").is_in_su2());
        assert!(spec("D(1,2)").is_in_su2());
        assert!(spec("D(1,1)").is_in_su2());
        assert!(spec("I(1)").is_in_su2());
        assert!(!spec("~T(1)").is_in_su2());
        assert!(!spec("D(3,2)").is_in_su2());
        assert!(!spec("I2(2,1)").is_in_su2());
        assert!(!spec("I2(2,3)").is_in_su2());
        assert!(!spec("I3(3)").is_in_su2());
        for p in 2..12 {
            assert!(spec(&format!("L({},{p})", p - 1)).is_in_su2());
            assert!(spec(&format!("~L(1,{p})")).is_in_su2());
            if p > 2 {
                assert!(!spec(&format!("L(1,{p})")).is_in_su2());
            }
        }
        assert!(spec("L(0,1)").is_in_su2());
        // element-level determinant scan agrees with the closed rule
        for s in ["T(1)", "D(1,3)", "D(3,2)", "L(4,5)", "L(1,5)", "I2(2,3)", "I3(3)"] {
            let g = spec(s);
            let all_det_one = enumerate(&g).unwrap().iter().all(|e| {
                let (r, s_) = e.rotation_numbers();
                snap_angle(r + s_).abs() < 1e-9
            });
            assert_eq!(all_det_one, g.is_in_su2(), "{s}");
        }
    }

    #[test]
    fn freeness_accepts_valid_and_rejects_invalid() {
        for valid in ["D(1,2)", "L(1,5)", "I3(3)", "T(5)", "I2(2,3)", "~D(3,2)"] {
            assert!(is_free_on_s3(&spec(valid)).unwrap(), "{valid}");
        }
        for invalid in ["D(3,3)", "L(2,4)", "T(2)", "I2(3,2)", "I3(4)", "I2(4,2)"] {
            assert!(!is_free_on_s3(&spec(invalid)).unwrap(), "{invalid}");
        }
        assert!(is_free_on_s3(&spec("L(1,0)")).is_err());
    }

    #[test]
    fn reverse_and_normalize() {
        assert_eq!(spec("L(1,3)").reverse(), spec("L(2,3)"));
        assert_eq!(spec("L(2,3)").reverse(), spec("L(1,3)"));
        assert_eq!(spec("T(1)").reverse(), spec("~T(1)"));
        assert_eq!(spec("~T(1)").reverse(), spec("T(1)"));
        assert_eq!(spec("~L(1,3)").normalized(), spec("L(2,3)"));
        assert_eq!(spec("~L(1,3)").reverse(), spec("L(1,3)"));
        for s in ["D(3,2)", "I2(2,3)", "L(3,7)", "~I3(9)"] {
            let g = spec(s);
            assert_eq!(g.reverse().reverse().normalized(), g.normalized(), "{s}");
        }
    }

    #[test]
    fn cyclic_group_types_of_degenerate_families() {
        let t = spec("D(3,1)").cyclic_group_type().unwrap();
        assert_eq!((t.q(), t.p()), (7, 12));
        let t = spec("I2(2,1)").cyclic_group_type().unwrap();
        assert_eq!((t.q(), t.p()), (5, 8));
        let t = spec("~D(3,1)").cyclic_group_type().unwrap();
        assert_eq!((t.q(), t.p()), (5, 12));
        assert!(spec("D(3,2)").cyclic_group_type().is_none());
        let t = spec("~L(1,4)").cyclic_group_type().unwrap();
        assert_eq!((t.q(), t.p()), (3, 4));
        // the degenerate groups are those lens spaces up to conjugacy: same
        // rotation-number classes with the same multiplicities
        for (s, l) in [("D(3,1)", "L(7,12)"), ("I2(2,1)", "L(5,8)"), ("D(1,1)", "L(3,4)")] {
            let a = class_histogram(&spec(s));
            let b = class_histogram(&spec(l));
            assert_eq!(a.len(), b.len(), "{s} vs {l}");
            for ((pa, ca), (pb, cb)) in a.iter().zip(&b) {
                assert_eq!(ca, cb, "{s} vs {l}");
                assert!(
                    (pa.0 - pb.0).abs() < 1e-9 && (pa.1 - pb.1).abs() < 1e-9,
                    "{s} vs {l}: {pa:?} != {pb:?}"
                );
            }
        }
    }

    /// Histogram with keys reduced modulo the swap/joint-negation ambiguity
    /// of rotation numbers; invariant under SO(4) conjugation.
    fn class_histogram(g: &GroupSpec) -> Vec<((f64, f64), usize)> {
        let mut pairs: Vec<(f64, f64)> = enumerate(g)
            .unwrap()
            .iter()
            .map(|e| {
                let (r, s) = e.rotation_numbers();
                canon_pair(r, s)
            })
            .collect();
        pairs.sort_unstable_by(|a, b| {
            if (a.0 - b.0).abs() > MATCH_TOL {
                cmp_f64(a.0, b.0)
            } else if (a.1 - b.1).abs() > MATCH_TOL {
                cmp_f64(a.1, b.1)
            } else {
                Ordering::Equal
            }
        });
        let mut hist: Vec<((f64, f64), usize)> = Vec::new();
        for p in pairs {
            match hist.last_mut() {
                Some((k, c)) if (k.0 - p.0).abs() < MATCH_TOL && (k.1 - p.1).abs() < MATCH_TOL => {
                    *c += 1
                }
                _ => hist.push((p, 1)),
            }
        }
        hist
    }

    #[test]
    fn histogram_smallest_cases() {
        // L(1,2): identity and the antipodal map
        let h = eigenangle_histogram(&spec("L(1,2)")).unwrap();
        assert_eq!(h.len(), 2);
        assert_eq!(h[0].1, 1);
        assert_eq!(h[1].1, 1);
        assert!(h[0].0 .0.abs() < 1e-12 && h[0].0 .1.abs() < 1e-12);
        assert!((h[1].0 .0 - PI).abs() < 1e-12 && (h[1].0 .1 - PI).abs() < 1e-12);
        // D(1,2): the binary dihedral group of order 8. Identity, the
        // antipodal map, and six elements of eigenvalue pair {i, -i}: the
        // j-coset (4) plus the order-4 circle elements (2).
        let h = eigenangle_histogram(&spec("D(1,2)")).unwrap();
        let total: usize = h.iter().map(|e| e.1).sum();
        assert_eq!(total, 8);
        assert_eq!(h.len(), 3);
        assert!(h.iter().any(|&((r, s), c)| {
            c == 6 && (r - 3.0 * PI / 2.0).abs() < 1e-9 && (s - PI / 2.0).abs() < 1e-9
        }));
    }
}
