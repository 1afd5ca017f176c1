//! Named verification checks over the whole library. Every check recomputes
//! an artifact from scratch and compares it against a recorded expectation;
//! the expectations that describe artifacts (bases, counts, orbit
//! representatives) can be swapped for the contents of a golden file.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use permiso_core::{
    a2_growth_polynomial, a2_series, aut_group_a3, classify_seeds, exotic, omega_decode,
    omega_encode, run_extension, run_group_extension, series_formula, AbWord, ClassMap, Error,
    GenConfig, MembershipCheck, PatternClass, Permutation, SeedBijection, SeedGroup, ShadowSet,
    Symmetry,
};

/// Per-level ceiling for every run a check makes.
const CAP: usize = 50_000_000;

fn cfg() -> GenConfig {
    GenConfig { cap: CAP, check: MembershipCheck::ShadowMembership }
}

fn pm(s: &str) -> Permutation {
    s.parse().expect("fixed word parses")
}

fn words(perms: &[Permutation]) -> String {
    if perms.is_empty() {
        "(empty)".to_string()
    } else {
        perms.iter().map(Permutation::to_string).collect::<Vec<_>>().join(" ")
    }
}

fn numbers(values: &[u64]) -> String {
    values.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub expected: String,
    pub actual: String,
    pub millis: u128,
}

/// A check passes exactly when its recomputed artifact renders to the same
/// string as the expectation. Failures inside the computation itself render
/// as an error message, which can never match.
fn run_check(
    name: &str,
    expected: String,
    body: impl FnOnce() -> Result<String, Error>,
) -> CheckResult {
    let start = Instant::now();
    let actual = body().unwrap_or_else(|e| format!("error: {e}"));
    CheckResult {
        name: name.to_string(),
        passed: expected == actual,
        expected,
        actual,
        millis: start.elapsed().as_millis(),
    }
}

/// Expected artifacts in a serializable form, for regression pinning outside
/// the binary. `verify --golden FILE` checks the library against a stored
/// copy instead of the built-in expectations.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GoldenFile {
    pub schema: u32,
    /// Basis words of each map's class, keyed by map name.
    pub bases: BTreeMap<String, Vec<String>>,
    /// Labels of the canonical seed orbit representatives.
    pub orbit_representatives: Vec<String>,
    /// Level counts of the enumerated classes, keyed by map name.
    pub counts: BTreeMap<String, Vec<u64>>,
    /// Level counts of the class preserved by the whole backbone group.
    pub group_counts: Vec<u64>,
}

fn formula_counts() -> BTreeMap<String, Vec<u64>> {
    let mut counts = BTreeMap::new();
    for (id, up_to) in [(2u8, 10usize), (3, 10), (5, 8), (6, 8)] {
        let vals: Vec<u64> = (1..=up_to)
            .map(|n| u64::try_from(series_formula(id, n).expect("index in range")).expect("fits"))
            .collect();
        counts.insert(format!("f{id}"), vals);
    }
    counts
}

fn closed_group_counts() -> Vec<u64> {
    (1..=9u64).map(|n| match n { 1 => 1, 2 => 2, 3 => 6, 4 => 12, n => 4 * n - 6 }).collect()
}

pub fn golden() -> GoldenFile {
    let mut bases = BTreeMap::new();
    for m in ClassMap::all() {
        let entries = m.basis().iter().map(Permutation::to_string).collect();
        bases.insert(m.name().to_string(), entries);
    }
    GoldenFile {
        schema: 1,
        bases,
        orbit_representatives: (1..=6).map(|i| format!("h{i}")).collect(),
        counts: formula_counts(),
        group_counts: closed_group_counts(),
    }
}

/// Lengths 2 through 7 exhaustively: the only distinct permutations with
/// equal shadows are 12/21, the four nonmonotone of length three, and the
/// two crossings.
pub fn check_smith() -> CheckResult {
    let expected = "12=21 132=213=231=312 2413=3142".to_string();
    run_check("smith refinement", expected, || {
        let mut everything = PatternClass::from_basis(&[]);
        everything.generate_to(7, &cfg())?;
        let mut rendered = Vec::new();
        for n in 2..=7 {
            let mut by_shadow: HashMap<Vec<Permutation>, Vec<Permutation>> = HashMap::new();
            for p in everything.level(n)? {
                by_shadow.entry(p.shadow()?.elements().to_vec()).or_default().push(p.clone());
            }
            let mut tied: Vec<Vec<Permutation>> =
                by_shadow.into_values().filter(|group| group.len() > 1).collect();
            for group in &mut tied {
                group.sort();
            }
            tied.sort();
            for group in tied {
                rendered.push(
                    group.iter().map(Permutation::to_string).collect::<Vec<_>>().join("="),
                );
            }
        }
        Ok(rendered.join(" "))
    })
}

fn render_bases(bases: &BTreeMap<String, Vec<String>>) -> String {
    ClassMap::all()
        .iter()
        .map(|m| {
            let body = match bases.get(m.name()) {
                Some(v) if v.is_empty() => "(empty)".to_string(),
                Some(v) => v.join(" "),
                None => "(missing)".to_string(),
            };
            format!("{}: {}", m.name(), body)
        })
        .collect::<Vec<_>>()
        .join("; ")
}

/// Each named seed, run out to length 7, must land on the recorded basis.
pub fn check_tables(golden: Option<&GoldenFile>) -> CheckResult {
    let expected = match golden {
        Some(g) => render_bases(&g.bases),
        None => render_bases(&self::golden().bases),
    };
    run_check("table reproduction", expected, || {
        let mut out = Vec::new();
        for m in ClassMap::all() {
            let run = run_extension(&m.seed(), 7, CAP)?;
            out.push(format!("{}: {}", m.name(), words(run.basis())));
        }
        Ok(out.join("; "))
    })
}

/// The 96 seeds fall into six symmetry orbits with the named representatives.
pub fn check_orbits(golden: Option<&GoldenFile>) -> CheckResult {
    let reps = match golden {
        Some(g) => g.orbit_representatives.clone(),
        None => (1..=6).map(|i| format!("h{i}")).collect(),
    };
    let expected = format!("6 orbits, 96 seeds, representatives {}", reps.join(" "));
    run_check("seed orbits", expected, || {
        let orbits = classify_seeds();
        for orbit in &orbits {
            if !orbit.members.contains(&orbit.representative) {
                return Ok(format!(
                    "orbit of {} misses its own representative",
                    orbit.representative.label()
                ));
            }
            if (1..=6).contains(&orbit.rep_index)
                && orbit.representative != SeedBijection::h(orbit.rep_index)
            {
                return Ok(format!("representative h{} is not the named seed", orbit.rep_index));
            }
        }
        let mut members: Vec<SeedBijection> =
            orbits.iter().flat_map(|o| o.members.iter().cloned()).collect();
        members.sort();
        members.dedup();
        let mut labels: Vec<String> =
            orbits.iter().map(|o| o.representative.label()).collect();
        labels.sort();
        Ok(format!(
            "{} orbits, {} seeds, representatives {}",
            orbits.len(),
            members.len(),
            labels.join(" ")
        ))
    })
}

fn render_counts(counts: &BTreeMap<String, Vec<u64>>) -> String {
    counts
        .iter()
        .map(|(name, vals)| format!("{name}: {}", numbers(vals)))
        .collect::<Vec<_>>()
        .join("; ")
}

/// Enumerated level counts match the recorded series, the closed forms, and
/// (for f2) the recurrence.
pub fn check_series(golden: Option<&GoldenFile>) -> CheckResult {
    let expected_counts = match golden {
        Some(g) => g.counts.clone(),
        None => formula_counts(),
    };
    let expected = render_counts(&expected_counts);
    run_check("series agreement", expected, || {
        let mut enumerated: BTreeMap<String, Vec<u64>> = BTreeMap::new();
        for (m, up_to) in
            [(ClassMap::F2, 10), (ClassMap::F3, 10), (ClassMap::F5, 8), (ClassMap::F6, 8)]
        {
            let mut class = m.avoidance_class();
            class.generate_to(up_to, &cfg())?;
            enumerated.insert(m.name().to_string(), class.counts().values());
        }
        for (name, vals) in &enumerated {
            let id: u8 = name[1..].parse().expect("map names end in a digit");
            for (i, &v) in vals.iter().enumerate() {
                if series_formula(id, i + 1)? != u128::from(v) {
                    return Ok(format!(
                        "formula and enumeration disagree for {name} at length {}",
                        i + 1
                    ));
                }
            }
        }
        let by_recurrence = a2_series(10)?;
        let by_count: Vec<u128> = enumerated["f2"].iter().map(|&v| u128::from(v)).collect();
        if by_recurrence != by_count {
            return Ok("recurrence and enumeration disagree for f2".to_string());
        }
        Ok(render_counts(&enumerated))
    })
}

/// Every map agrees with its own engine run through length 7 and commutes
/// with the shadow through length 8.
pub fn check_maps() -> CheckResult {
    let claim =
        "all six maps match their engine tables through length 7 and respect shadows through length 8";
    run_check("map engine agreement", claim.to_string(), || {
        for m in ClassMap::all() {
            let run = run_extension(&m.seed(), 7, CAP)?;
            for n in 1..=7 {
                for (p, image) in run.pairs_at(n)? {
                    if m.apply(&p)? != image {
                        return Ok(format!("{m} disagrees with its engine at {p}"));
                    }
                }
            }
            let mut class = m.avoidance_class();
            class.generate_to(8, &cfg())?;
            for n in 2..=8 {
                for p in class.level(n)? {
                    let mapped: Result<Vec<Permutation>, Error> =
                        p.shadow()?.elements().iter().map(|q| m.apply(q)).collect();
                    let image_of_shadow = ShadowSet::from_elements(mapped?)?;
                    if image_of_shadow != m.apply(p)?.shadow()? {
                        return Ok(format!("{m} breaks the shadow of {p}"));
                    }
                }
            }
        }
        Ok(claim.to_string())
    })
}

/// The exotic map is an involution of its wedge through length 9, respects
/// shadows through length 8, and the letter encoding round-trips both ways.
pub fn check_exotic() -> CheckResult {
    let claim = "the exotic map is a shadow-respecting involution and 45367821 maps to 43256718";
    run_check("exotic map", claim.to_string(), || {
        let mut wedge = PatternClass::from_basis(&[pm("132"), pm("312")]);
        wedge.generate_to(9, &cfg())?;
        for n in 1..=9 {
            for p in wedge.level(n)? {
                if exotic(&exotic(p)?)? != *p {
                    return Ok(format!("not an involution at {p}"));
                }
                if omega_decode(&omega_encode(p))? != *p {
                    return Ok(format!("encoding does not round-trip at {p}"));
                }
            }
        }
        for n in 2..=8 {
            for p in wedge.level(n)? {
                let mapped: Result<Vec<Permutation>, Error> =
                    p.shadow()?.elements().iter().map(exotic).collect();
                if ShadowSet::from_elements(mapped?)? != exotic(p)?.shadow()? {
                    return Ok(format!("shadow broken at {p}"));
                }
            }
        }
        for len in 0..=8u32 {
            for mask in 0..(1u16 << len) {
                let letters: Vec<bool> = (0..len).map(|i| mask >> i & 1 == 1).collect();
                let word = AbWord::new(letters);
                if omega_encode(&omega_decode(&word)?) != word {
                    return Ok(format!("word {word} does not round-trip"));
                }
            }
        }
        let probe = pm("45367821");
        if omega_encode(&probe).to_string() != "abaaabb" {
            return Ok(format!("45367821 encodes to {}", omega_encode(&probe)));
        }
        let decoded = omega_decode(&"bbaaaba".parse::<AbWord>()?)?;
        if decoded != pm("43256718") {
            return Ok(format!("bbaaaba decodes to {decoded}"));
        }
        let image = exotic(&probe)?;
        if image != pm("43256718") {
            return Ok(format!("45367821 maps to {image}"));
        }
        Ok(claim.to_string())
    })
}

/// f6 squares to reverse-complement on its class, and the three commuting
/// involutions on the f3 class generate a group of order eight.
pub fn check_structure() -> CheckResult {
    let claim = "f6 squares to rc through length 8 and the f3 automorphisms form an elementary abelian group of order 8";
    run_check("structure", claim.to_string(), || {
        let rc = Symmetry::REVERSE.then(Symmetry::COMPLEMENT);
        let mut class = ClassMap::F6.avoidance_class();
        class.generate_to(8, &cfg())?;
        for n in 1..=8 {
            for p in class.level(n)? {
                if ClassMap::F6.apply(&ClassMap::F6.apply(p)?)? != rc.apply(p) {
                    return Ok(format!("f6 squared differs from rc at {p}"));
                }
            }
        }
        let tables = aut_group_a3(7)?;
        if tables.len() != 8 {
            return Ok(format!("found {} automorphism tables", tables.len()));
        }
        for a in &tables {
            if !a.compose(a).is_identity() {
                return Ok(format!("{} does not square to the identity", a.name));
            }
            for b in &tables {
                let ab = a.compose(b);
                if ab.pairs != b.compose(a).pairs {
                    return Ok(format!("{} and {} do not commute", a.name, b.name));
                }
                if !tables.iter().any(|t| t.pairs == ab.pairs) {
                    return Ok(format!("the product of {} and {} left the group", a.name, b.name));
                }
            }
        }
        Ok(claim.to_string())
    })
}

/// What level `n` of the group extension must be: monotone sums and skews,
/// plus the two crossings at length four.
fn sum_skew_level(n: usize) -> Result<Vec<Permutation>, Error> {
    let mut out = Vec::new();
    if n == 1 {
        out.push(Permutation::increasing(1)?);
    }
    for k in 1..n {
        let inc_k = Permutation::increasing(k)?;
        let dec_k = Permutation::decreasing(k)?;
        let inc_m = Permutation::increasing(n - k)?;
        let dec_m = Permutation::decreasing(n - k)?;
        out.push(inc_k.direct_sum(&dec_m)?);
        out.push(dec_k.direct_sum(&inc_m)?);
        out.push(inc_k.skew_sum(&dec_m)?);
        out.push(dec_k.skew_sum(&inc_m)?);
    }
    if n == 4 {
        out.push(pm("2413"));
        out.push(pm("3142"));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// The full backbone group, run to length 9, keeps exactly the sum and skew
/// levels above.
pub fn check_group(golden: Option<&GoldenFile>) -> CheckResult {
    let expected_counts = match golden {
        Some(g) => g.group_counts.clone(),
        None => closed_group_counts(),
    };
    let suffix = "with levels of monotone sums and skews";
    let expected = format!("counts {} {suffix}", numbers(&expected_counts));
    run_check("group extension", expected, || {
        let run = run_group_extension(&SeedGroup::aut_r(), 9, CAP)?;
        for n in 1..=9 {
            if run.level(n)? != sum_skew_level(n)? {
                return Ok(format!("level {n} deviates from the sum and skew families"));
            }
        }
        Ok(format!("counts {} {suffix}", numbers(&run.counts().values())))
    })
}

/// The growth bound from the discriminant and the complete list of simple
/// members of the f2 class through length 9.
pub fn check_growth() -> CheckResult {
    let claim =
        "growth bound within 1e-4 of 5.90425; simple members 2413 3142 24153 31524 35142 42513";
    run_check("growth and simples", claim.to_string(), || {
        let bound = permiso_core::growth_rate_bound(&a2_growth_polynomial())?;
        if (bound - 5.90425).abs() > 1e-4 {
            return Ok(format!("growth bound came out {bound:.6}"));
        }
        let mut class = ClassMap::F2.avoidance_class();
        class.generate_to(9, &cfg())?;
        let mut simples = Vec::new();
        for n in 3..=9 {
            for p in class.level(n)? {
                if p.is_simple() {
                    simples.push(p.clone());
                }
            }
        }
        let want: Vec<Permutation> =
            ["2413", "3142", "24153", "31524", "35142", "42513"].iter().map(|s| pm(s)).collect();
        if simples != want {
            return Ok(format!("simple members came out {}", words(&simples)));
        }
        Ok(claim.to_string())
    })
}

/// Pins the resolutions of the recorded discrepancies: the atom series head,
/// the length-five counts of f5 and f6, and the corrected f5 basis entries.
pub fn check_regressions() -> CheckResult {
    let claim = "series head, length-five counts, and corrected basis entries all hold";
    run_check("regressions", claim.to_string(), || {
        let head = a2_series(5)?;
        if head != [1, 2, 6, 24, 102] {
            return Ok(format!("f2 series head came out {head:?}"));
        }
        if series_formula(5, 5)? != 48 {
            return Ok("f5 count at length five is not 48".to_string());
        }
        if series_formula(6, 5)? != 46 {
            return Ok("f6 count at length five is not 46".to_string());
        }
        let mut f5 = ClassMap::F5.avoidance_class();
        f5.generate_to(5, &cfg())?;
        if f5.level(5)?.len() != 48 {
            return Ok(format!("enumeration found {} members of length five", f5.level(5)?.len()));
        }
        let basis = ClassMap::F5.basis();
        if !basis.contains(&pm("31452")) {
            return Ok("31452 missing from the f5 basis".to_string());
        }
        if !basis.contains(&pm("14523")) {
            return Ok("14523 missing from the f5 basis".to_string());
        }
        if basis.contains(&pm("14253")) {
            return Ok("14253 crept into the f5 basis".to_string());
        }
        if "32452".parse::<Permutation>().is_ok() {
            return Ok("32452 parsed as a permutation".to_string());
        }
        if !pm("14253").shadow()?.contains(&pm("1324")) {
            return Ok("14253 does not cover 1324".to_string());
        }
        let run = run_extension(&SeedBijection::h(5), 5, CAP)?;
        let engine_fives: Vec<&Permutation> =
            run.basis().iter().filter(|p| p.len() == 5).collect();
        if !engine_fives.contains(&&pm("31452")) || !engine_fives.contains(&&pm("14523")) {
            return Ok("the engine disagrees with the corrected entries".to_string());
        }
        Ok(claim.to_string())
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    Smith,
    Tables,
    Maps,
    Series,
    Group,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Smith => "smith",
            Suite::Tables => "tables",
            Suite::Maps => "maps",
            Suite::Series => "series",
            Suite::Group => "group",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub suite: String,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub fn run_suite(suite: Suite, golden: Option<&GoldenFile>) -> VerificationReport {
    let checks = match suite {
        Suite::Smith => vec![check_smith()],
        Suite::Tables => vec![check_tables(golden)],
        Suite::Maps => vec![check_maps(), check_exotic(), check_structure()],
        Suite::Series => vec![check_series(golden), check_growth(), check_regressions()],
        Suite::Group => vec![check_orbits(golden), check_group(golden)],
        Suite::All => vec![
            check_smith(),
            check_tables(golden),
            check_orbits(golden),
            check_series(golden),
            check_maps(),
            check_exotic(),
            check_structure(),
            check_group(golden),
            check_growth(),
            check_regressions(),
        ],
    };
    VerificationReport { schema: 1, suite: suite.name().to_string(), checks }
}
