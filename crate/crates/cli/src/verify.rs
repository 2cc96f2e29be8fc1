//! The `verify` subcommand: re-runs the crate's cross-checks from a shipped
//! binary, so a build can be validated in the field without the test harness.
//! Every check pits two independent routes to the same quantity against each
//! other (closed form vs defining sum, table vs character average, and so on)
//! over all admissible specs up to the requested group order. Checks report a
//! deterministic detail string; no timing, so identical runs byte-match.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use spaceform_core::eta::{eta_bruteforce, eta_cyclic_closed, eta_report};
use spaceform_core::exactnum::{eisenstein_lhs, eisenstein_rhs, gcd, integer, rational, to_f64};
use spaceform_core::groups::{eigenangle_histogram, enumerate, is_free_on_s3, Family, GroupSpec};
use spaceform_core::hj::{hj_expand, CyclicType};
use spaceform_core::index::{n_correction, n_cyclic, n_via_correction_formula, ReversalVariant};
use spaceform_core::moduli::{compare_deformations, h1_dim_bruteforce, h1_dim_closed};
use spaceform_core::ricci::{ht_check, Verdict};
use spaceform_core::topology::{ell, signature_bookkeeping};

pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn(i64) -> Result<String, String>;

pub const CHECKS: &[(&str, Check)] = &[
    ("eta-route-agreement", eta_route_agreement),
    ("cyclic-eta-defining-sum", cyclic_eta_defining_sum),
    ("eta-reference-values", eta_reference_values),
    ("index-correction-two-routes", index_correction_two_routes),
    ("cyclic-reversal-relations", cyclic_reversal_relations),
    ("h1-two-routes", h1_two_routes),
    ("eisenstein-identity", eisenstein_identity),
    ("hitchin-thorpe-wall", hitchin_thorpe_wall),
    ("deformation-count-vs-bound", deformation_count_vs_bound),
    ("connected-sum-counts", connected_sum_counts),
    ("enumeration-and-histograms", enumeration_and_histograms),
    ("hj-reconstruction", hj_reconstruction),
];

pub fn run_check(name: &'static str, check: Check, max_order: i64) -> CheckResult {
    match check(max_order) {
        Ok(detail) => CheckResult {
            name,
            passed: true,
            detail,
        },
        Err(detail) => CheckResult {
            name,
            passed: false,
            detail,
        },
    }
}

/// Fails the check with a message instead of panicking.
macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        // An empty then-branch keeps float comparisons in their natural
        // direction (negating `<` reads as `>=`, which is wrong under NaN).
        if $cond {
        } else {
            return Err(format!($($arg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn lens(q: i64, p: i64) -> CyclicType {
    CyclicType::new(q, p).expect("coprime by construction")
}

fn cyclic(q: i64, p: i64) -> GroupSpec {
    GroupSpec::new(Family::Cyclic { q, p })
}

/// Every unreversed non-cyclic spec with group order at most `max_order`,
/// degenerate n = 1 products included.
fn product_specs(max_order: i64) -> Vec<GroupSpec> {
    let mut out = Vec::new();
    let mut m = 1;
    while 4 * m <= max_order {
        let mut n = 1;
        while 4 * m * n <= max_order {
            if gcd(m, 2 * n) == 1 {
                out.push(GroupSpec::new(Family::DihedralProduct { m, n }));
            }
            if m % 2 == 0 && gcd(m, n) == 1 {
                out.push(GroupSpec::new(Family::IndexTwoDiagonal { m, n }));
            }
            n += 1;
        }
        m += 1;
    }
    for m in 1..=max_order / 24 {
        if gcd(m, 6) == 1 {
            out.push(GroupSpec::new(Family::TetrahedralProduct { m }));
            if 48 * m <= max_order {
                out.push(GroupSpec::new(Family::OctahedralProduct { m }));
            }
        }
        if gcd(m, 30) == 1 && 120 * m <= max_order {
            out.push(GroupSpec::new(Family::IcosahedralProduct { m }));
        }
        if gcd(m, 6) == 3 {
            out.push(GroupSpec::new(Family::IndexThreeDiagonal { m }));
        }
    }
    out
}

fn genuine(specs: &[GroupSpec]) -> Vec<GroupSpec> {
    specs
        .iter()
        .copied()
        .filter(|s| s.cyclic_group_type().is_none())
        .collect()
}

/// The defining eta sum for every L(q,p) with a fixed p, sharing one
/// cotangent table; independent of the quaternion-enumeration path.
fn cotangent_sums(p: i64) -> Vec<(i64, f64)> {
    let cots: Vec<f64> = (0..p as usize)
        .map(|j| {
            if j == 0 {
                0.0
            } else {
                1.0 / (PI * j as f64 / p as f64).tan()
            }
        })
        .collect();
    let mut out = Vec::new();
    for q in 1..p {
        if gcd(q, p) != 1 {
            continue;
        }
        let mut idx = 0usize;
        let mut sum = 0.0;
        for cot in cots.iter().skip(1) {
            idx += q as usize;
            if idx >= p as usize {
                idx -= p as usize;
            }
            sum += cot * cots[idx];
        }
        out.push((q, sum / p as f64));
    }
    out
}

fn eta_route_agreement(max_order: i64) -> Result<String, String> {
    let products = product_specs(max_order);
    for s in &products {
        let report = eta_report(s).map_err(err)?;
        let closed = to_f64(&report.closed_form);
        ensure!(
            (closed - report.brute_force).abs() < 1e-8,
            "{s}: closed form {closed} vs brute force {}",
            report.brute_force
        );
        let via = report
            .via_quotient
            .as_ref()
            .ok_or_else(|| format!("{s}: quotient route missing"))?;
        ensure!(*via == report.closed_form, "{s}: quotient route differs");
    }
    let dense_cap = max_order.min(400);
    let mut dense = 0usize;
    for p in 2..=dense_cap {
        for q in 1..p {
            if gcd(q, p) != 1 {
                continue;
            }
            let closed = to_f64(&eta_cyclic_closed(&lens(q, p)).map_err(err)?);
            let brute = eta_bruteforce(&cyclic(q, p)).map_err(err)?;
            ensure!(
                (closed - brute).abs() < 1e-8,
                "L({q},{p}): closed {closed} vs brute {brute}"
            );
            dense += 1;
        }
    }
    let mut swept = 0usize;
    for p in 2..=max_order {
        for (q, direct) in cotangent_sums(p) {
            let closed = to_f64(&eta_cyclic_closed(&lens(q, p)).map_err(err)?);
            ensure!(
                (closed - direct).abs() < 1e-8,
                "L({q},{p}): closed {closed} vs cotangent sum {direct}"
            );
            swept += 1;
        }
    }
    Ok(format!(
        "closed/brute/quotient agree on {} product specs; closed form matches group \
         enumeration on {dense} and the defining sum on {swept} cyclic types",
        products.len()
    ))
}

fn cyclic_eta_defining_sum(max_order: i64) -> Result<String, String> {
    let cap = max_order.min(100);
    let mut checked = 0usize;
    for p in 2..=cap {
        for (q, direct) in cotangent_sums(p) {
            let closed = to_f64(&eta_cyclic_closed(&lens(q, p)).map_err(err)?);
            ensure!(
                (closed - direct).abs() < 1e-9,
                "L({q},{p}): {closed} vs {direct}"
            );
            checked += 1;
        }
    }
    Ok(format!(
        "closed cyclic eta within 1e-9 of the defining cotangent sum on {checked} types, p <= {cap}"
    ))
}

fn eta_reference_values(max_order: i64) -> Result<String, String> {
    let frozen = [
        ((1, 2), rational(0, 1)),
        ((1, 4), rational(1, 2)),
        ((2, 3), rational(-2, 9)),
    ];
    for ((q, p), want) in frozen {
        let got = eta_cyclic_closed(&lens(q, p)).map_err(err)?;
        ensure!(got == want, "L({q},{p}): got {got}, want {want}");
        let brute = eta_bruteforce(&cyclic(q, p)).map_err(err)?;
        ensure!(
            (brute - to_f64(&want)).abs() < 1e-9,
            "L({q},{p}): brute force drifted to {brute}"
        );
    }
    let m_cap = (max_order / 2).clamp(1, 50);
    for m in 1..=m_cap {
        let want = rational(2 * m * m + 1, 3 * m) - integer(1);
        let got = eta_cyclic_closed(&lens(1, 2 * m)).map_err(err)?;
        ensure!(got == want, "L(1,{}): got {got}, want {want}", 2 * m);
    }
    Ok(format!(
        "0, 1/2, -2/9 at L(1,2), L(1,4), L(2,3) exactly; (2m^2+1)/(3m) - 1 at L(1,2m) for m <= {m_cap}"
    ))
}

fn index_correction_two_routes(max_order: i64) -> Result<String, String> {
    let specs = genuine(&product_specs(max_order));
    for s in &specs {
        let table = n_correction(s, ReversalVariant::default()).map_err(err)?;
        let oracle = n_via_correction_formula(s).map_err(err)?;
        ensure!(
            table == oracle,
            "{s}: table {table} vs correction formula {oracle}"
        );
    }
    let mut tetra = "";
    if max_order >= 24 {
        let t1 = GroupSpec::new(Family::TetrahedralProduct { m: 1 });
        ensure!(
            n_correction(&t1, ReversalVariant::default()).map_err(err)? == 13,
            "N(T(1)) != 13 by table"
        );
        ensure!(
            n_via_correction_formula(&t1).map_err(err)? == 13,
            "N(T(1)) != 13 by correction formula"
        );
        tetra = "; N = 13 at the binary tetrahedral quotient by both routes";
    }
    Ok(format!(
        "table and deformation-complex routes for N agree on {} non-cyclic specs{tetra}",
        specs.len()
    ))
}

fn cyclic_reversal_relations(max_order: i64) -> Result<String, String> {
    let cap = max_order.min(200);
    let mut pairs = 0usize;
    for p in 3..=cap {
        ensure!(
            n_cyclic(&lens(1, p)).map_err(err)? == -n_cyclic(&lens(p - 1, p)).map_err(err)? - 10,
            "L(1,{p}): q = 1 reversal relation fails"
        );
        pairs += 1;
        for q in 2..p - 1 {
            if gcd(q, p) != 1 {
                continue;
            }
            ensure!(
                n_cyclic(&lens(q, p)).map_err(err)?
                    == -n_cyclic(&lens(p - q, p)).map_err(err)? - 12,
                "L({q},{p}): interior reversal relation fails"
            );
            pairs += 1;
        }
    }
    Ok(format!(
        "N(L(q,p)) = -N(L(p-q,p)) - 12 (interior q) and N(L(1,p)) = -N(L(p-1,p)) - 10 \
         hold exactly on {pairs} pairs, p <= {cap}"
    ))
}

fn h1_two_routes(max_order: i64) -> Result<String, String> {
    let specs = genuine(&product_specs(max_order));
    for s in &specs {
        let closed = h1_dim_closed(s).map_err(err)?;
        let brute = h1_dim_bruteforce(s).map_err(err)?;
        ensure!(
            closed == brute,
            "{s}: table {closed} vs character average {brute}"
        );
    }
    let mut rigid = 0usize;
    for s in product_specs(max_order) {
        if s.m_parameter() == Some(1) {
            ensure!(
                h1_dim_bruteforce(&s).map_err(err)? == 0,
                "{s}: m = 1 quotient should be rigid"
            );
            rigid += 1;
        }
    }
    Ok(format!(
        "table and character-average H1 dimensions agree on {} non-cyclic specs; \
         all {rigid} m = 1 specs are rigid",
        specs.len()
    ))
}

fn eisenstein_identity(max_order: i64) -> Result<String, String> {
    let cap = max_order.min(60);
    let mut checked = 0usize;
    for n in 1..=cap {
        for k in 0..2 * n {
            let lhs = eisenstein_lhs(n, k);
            let rhs = to_f64(&eisenstein_rhs(n, k));
            ensure!(
                (lhs - rhs).abs() < 1e-9,
                "n = {n}, k = {k}: sum {lhs} vs sawtooth form {rhs}"
            );
            checked += 1;
        }
    }
    Ok(format!(
        "sine-cotangent sum equals its sawtooth closed form on {checked} (n,k) pairs, n <= {cap}"
    ))
}

fn hitchin_thorpe_wall(max_order: i64) -> Result<String, String> {
    let mut specs = product_specs(max_order);
    specs.push(cyclic(1, 1));
    for p in 2..=max_order {
        for q in 1..p {
            if gcd(q, p) == 1 {
                specs.push(cyclic(q, p));
            }
        }
    }
    let mut on_wall = 0usize;
    for (i, s) in specs.iter().enumerate() {
        let base = ht_check(s, 0).map_err(err)?;
        if s.is_in_su2() {
            ensure!(
                base.verdict == Verdict::Equality,
                "{s}: SU(2) spec should sit on the wall"
            );
            on_wall += 1;
        } else {
            ensure!(
                base.verdict == Verdict::Violated,
                "{s}: non-SU(2) spec should violate"
            );
        }
        ensure!(
            ht_check(s, 1).map_err(err)?.verdict == Verdict::Violated,
            "{s}: one blowup should violate"
        );
        if i % 97 == 0 {
            for blowups in [2, 3, 11] {
                ensure!(
                    ht_check(s, blowups).map_err(err)?.verdict == Verdict::Violated,
                    "{s}: {blowups} blowups should violate"
                );
            }
        }
    }
    Ok(format!(
        "equality exactly on {on_wall} SU(2) specs, violation on the other {}, \
         and violation with blowups >= 1 throughout",
        specs.len() - on_wall
    ))
}

fn deformation_count_vs_bound(max_order: i64) -> Result<String, String> {
    let mut equal = 0usize;
    let mut above = 0usize;
    for s in &product_specs(max_order) {
        let report = compare_deformations(s, None).map_err(err)?;
        if s.is_in_su2() {
            ensure!(
                report.difference == 0,
                "{s}: SU(2) count should match the bound, difference {}",
                report.difference
            );
            equal += 1;
        } else {
            ensure!(
                report.difference > 0,
                "{s}: count should exceed the bound, difference {}",
                report.difference
            );
            above += 1;
        }
    }
    for p in 2..=max_order {
        for q in 1..p {
            if gcd(q, p) != 1 {
                continue;
            }
            let report = compare_deformations(&cyclic(q, p), None).map_err(err)?;
            if q == p - 1 {
                ensure!(
                    report.difference == 0,
                    "L({q},{p}): difference {}",
                    report.difference
                );
                equal += 1;
            } else {
                ensure!(
                    report.difference > 0,
                    "L({q},{p}): difference {}",
                    report.difference
                );
                above += 1;
            }
        }
    }
    Ok(format!(
        "deformation count matches the bound on {equal} SU(2) specs and exceeds it on \
         {above} others (cyclic types under the documented h0 defaults)"
    ))
}

fn connected_sum_counts(_max_order: i64) -> Result<String, String> {
    ensure!(ell(1, 1, 1).map_err(err)? == 3, "ell_1(1,1) != 3");
    ensure!(ell(1, 1, 2).map_err(err)? == 4, "ell_1(1,2) != 4");
    ensure!(ell(2, 2, 1).map_err(err)? == 4, "ell_2(2,1) != 4");
    let mut checked = 0usize;
    for family in [1u8, 2u8] {
        for m in 1..=30 {
            for n in 1..=30 {
                let Ok(count) = ell(family, m, n) else {
                    continue;
                };
                let (tau_x, tau_y) = signature_bookkeeping(family, m, n).map_err(err)?;
                ensure!(
                    -tau_x - tau_y == count,
                    "family {family}, m = {m}, n = {n}: signatures sum to {} against {count}",
                    -tau_x - tau_y
                );
                checked += 1;
            }
        }
    }
    Ok(format!(
        "ell_1(1,1) = 3, ell_1(1,2) = 4, ell_2(2,1) = 4; -tau_X - tau_Y = ell on \
         {checked} valid triples with m, n <= 30"
    ))
}

/// One histogram row: a rotation-number pair and its multiplicity.
type HistRow = ((f64, f64), usize);

/// Canonical key for a rotation-number pair: order and joint sign of the two
/// angles are representative choices, so quotient them out before comparing.
fn canon_pair(a: f64, b: f64) -> (i64, i64) {
    let snap = |t: f64| {
        let mut r = t.rem_euclid(TAU);
        if TAU - r < 1e-6 {
            r = 0.0;
        }
        (r / TAU * 1e6).round() as i64
    };
    let ordered = |x: i64, y: i64| if x <= y { (x, y) } else { (y, x) };
    let plus = ordered(snap(a), snap(b));
    let minus = ordered(snap(-a), snap(-b));
    plus.min(minus)
}

fn canon_hist(rows: &[HistRow]) -> BTreeMap<(i64, i64), usize> {
    let mut map = BTreeMap::new();
    for &((a, b), count) in rows {
        *map.entry(canon_pair(a, b)).or_insert(0usize) += count;
    }
    map
}

// The expected histograms are the published eigenvalue decompositions of the
// groups, row by row: a set of angle pairs and its multiplicity.

fn dihedral_table(n: i64) -> Vec<HistRow> {
    let mut rows: Vec<HistRow> = (1..=2 * n)
        .map(|k| {
            let t = PI * k as f64 / n as f64;
            ((t, -t), 1)
        })
        .collect();
    rows.push(((PI / 2.0, -PI / 2.0), 2 * n as usize));
    rows
}

fn tetrahedral_table() -> Vec<HistRow> {
    vec![
        ((0.0, 0.0), 1),
        ((PI, PI), 1),
        ((PI / 3.0, -PI / 3.0), 8),
        ((2.0 * PI / 3.0, -2.0 * PI / 3.0), 8),
        ((PI / 2.0, -PI / 2.0), 6),
    ]
}

fn octahedral_table() -> Vec<HistRow> {
    vec![
        ((0.0, 0.0), 1),
        ((PI, PI), 1),
        ((PI / 3.0, -PI / 3.0), 8),
        ((2.0 * PI / 3.0, -2.0 * PI / 3.0), 8),
        ((PI / 4.0, -PI / 4.0), 6),
        ((PI / 2.0, -PI / 2.0), 6),
        ((3.0 * PI / 4.0, -3.0 * PI / 4.0), 6),
        ((PI / 2.0, -PI / 2.0), 12),
    ]
}

fn icosahedral_table() -> Vec<HistRow> {
    let mut rows = vec![
        ((0.0, 0.0), 1),
        ((PI, PI), 1),
        ((PI / 3.0, -PI / 3.0), 20),
        ((2.0 * PI / 3.0, -2.0 * PI / 3.0), 20),
    ];
    for k in 1..=4 {
        let t = PI * k as f64 / 5.0;
        rows.push(((t, -t), 12));
    }
    rows.push(((PI / 2.0, -PI / 2.0), 30));
    rows
}

fn index_two_table(m: i64, n: i64) -> Vec<HistRow> {
    let mut rows = Vec::new();
    for l in 0..m {
        let sign = PI * l as f64; // the (-1)^l scalar
        for k in 0..2 * n {
            let a = PI * (l as f64 / m as f64 + k as f64 / n as f64) + sign;
            let b = PI * (l as f64 / m as f64 - k as f64 / n as f64) + sign;
            rows.push(((a, b), 1));
        }
        let half = PI * (2 * l + 1) as f64 / (2 * m) as f64;
        rows.push((
            (half + PI / 2.0 + sign, half - PI / 2.0 + sign),
            2 * n as usize,
        ));
    }
    rows
}

fn index_three_table(m: i64) -> Vec<HistRow> {
    let mut rows = Vec::new();
    for r in 0..m {
        for sign in [0.0, PI] {
            let central = PI * r as f64 / m as f64 + sign;
            let third = PI * (3 * r + 1) as f64 / (3 * m) as f64 + sign;
            let third_sq = PI * (3 * r + 2) as f64 / (3 * m) as f64 + sign;
            rows.push(((central, central), 1));
            rows.push(((central + PI / 2.0, central - PI / 2.0), 3));
            rows.push(((third + PI / 3.0, third - PI / 3.0), 2));
            rows.push(((third + 2.0 * PI / 3.0, third - 2.0 * PI / 3.0), 2));
            rows.push(((third_sq + 2.0 * PI / 3.0, third_sq - 2.0 * PI / 3.0), 4));
        }
    }
    rows
}

fn enumeration_and_histograms(max_order: i64) -> Result<String, String> {
    let mut counted = 0usize;
    for s in product_specs(max_order) {
        let size = enumerate(&s).map_err(err)?.len() as i64;
        let order = s.order().map_err(err)?;
        ensure!(size == order, "{s}: enumerated {size} elements, order {order}");
        counted += 1;
    }
    let cap = max_order.min(300);
    for p in 2..=cap {
        for q in 1..p {
            if gcd(q, p) != 1 {
                continue;
            }
            ensure!(
                enumerate(&cyclic(q, p)).map_err(err)?.len() as i64 == p,
                "L({q},{p}): wrong element count"
            );
            counted += 1;
        }
    }

    let hist_cases: Vec<(GroupSpec, Vec<HistRow>)> = vec![
        (
            GroupSpec::new(Family::DihedralProduct { m: 1, n: 1 }),
            dihedral_table(1),
        ),
        (
            GroupSpec::new(Family::DihedralProduct { m: 1, n: 2 }),
            dihedral_table(2),
        ),
        (
            GroupSpec::new(Family::TetrahedralProduct { m: 1 }),
            tetrahedral_table(),
        ),
        (
            GroupSpec::new(Family::OctahedralProduct { m: 1 }),
            octahedral_table(),
        ),
        (
            GroupSpec::new(Family::IcosahedralProduct { m: 1 }),
            icosahedral_table(),
        ),
        (
            GroupSpec::new(Family::IndexTwoDiagonal { m: 2, n: 1 }),
            index_two_table(2, 1),
        ),
        (
            GroupSpec::new(Family::IndexTwoDiagonal { m: 2, n: 3 }),
            index_two_table(2, 3),
        ),
        (
            GroupSpec::new(Family::IndexThreeDiagonal { m: 3 }),
            index_three_table(3),
        ),
        (
            GroupSpec::new(Family::IndexThreeDiagonal { m: 9 }),
            index_three_table(9),
        ),
    ];
    let mut matched = 0usize;
    for (s, expected) in &hist_cases {
        if s.order().map_err(err)? > max_order {
            continue;
        }
        let got = canon_hist(&eigenangle_histogram(s).map_err(err)?);
        let want = canon_hist(expected);
        ensure!(
            got == want,
            "{s}: histogram differs from the eigenvalue decomposition"
        );
        matched += 1;
    }

    let broken = [
        Family::Cyclic { q: 2, p: 4 },
        Family::DihedralProduct { m: 3, n: 3 },
        Family::TetrahedralProduct { m: 2 },
        Family::IndexTwoDiagonal { m: 4, n: 2 },
        Family::IndexThreeDiagonal { m: 4 },
    ];
    for family in broken {
        let s = GroupSpec::new(family);
        ensure!(!s.validate(), "{s} should fail validation");
        ensure!(
            !is_free_on_s3(&s).map_err(err)?,
            "{s} should fix a point on S^3"
        );
    }
    Ok(format!(
        "element counts match the family orders on {counted} specs; {matched} histograms \
         match the eigenvalue decompositions; freeness rejects {} invalid parameter sets",
        broken.len()
    ))
}

fn hj_reconstruction(max_order: i64) -> Result<String, String> {
    let cap = max_order.min(500);
    let mut checked = 0usize;
    for p in 2..=cap {
        for q in 1..p {
            if gcd(q, p) != 1 {
                continue;
            }
            let string = hj_expand(&lens(q, p)).map_err(err)?;
            ensure!(
                string.continued_fraction() == rational(p, q),
                "L({q},{p}): string {:?} does not rebuild p/q",
                string.coefficients()
            );
            checked += 1;
        }
        let single = hj_expand(&lens(1, p)).map_err(err)?;
        ensure!(
            single.coefficients() == [p],
            "L(1,{p}): expected the single coefficient [{p}]"
        );
        let twos = hj_expand(&lens(p - 1, p)).map_err(err)?;
        ensure!(
            twos.length() == p - 1 && twos.coefficients().iter().all(|&e| e == 2),
            "L({},{p}): expected a string of {} twos",
            p - 1,
            p - 1
        );
        checked += 2;
    }
    Ok(format!(
        "continued fractions rebuild p/q exactly on {checked} checks, p <= {cap}, \
         with the [p] and all-2 edge strings confirmed"
    ))
}
