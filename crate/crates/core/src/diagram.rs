//! The transition diagram behind faithfulness of the `VB_2` action.
//!
//! Nine sign-pattern boxes cover every vector reachable from `(0,2,0,1)` by a
//! freely reduced word. Each arrow says that a generator maps one box into
//! another, and carries the closed-form image valid on its source box.
//! σ-arrows strictly increase the L1 norm and ρ-arrows preserve it, so a
//! reduced nonempty word can never return to its start vector.
//!
//! Sampling here is evidence, not proof: every sample checks the closed form
//! against the general action exactly, but the regions are infinite.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::action::Quad;
use crate::error::Error;
use crate::par;
use crate::word::{BraidWord, LetterKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SignSymbol {
    Zero,
    Plus,
    Minus,
    PlusZero,
    MinusZero,
}

impl SignSymbol {
    pub fn contains(self, x: &BigInt) -> bool {
        match self {
            SignSymbol::Zero => x.is_zero(),
            SignSymbol::Plus => x.is_positive(),
            SignSymbol::Minus => x.is_negative(),
            SignSymbol::PlusZero => !x.is_negative(),
            SignSymbol::MinusZero => !x.is_positive(),
        }
    }

    fn allows_zero(self) -> bool {
        matches!(self, SignSymbol::Zero | SignSymbol::PlusZero | SignSymbol::MinusZero)
    }
}

impl fmt::Display for SignSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignSymbol::Zero => "0",
            SignSymbol::Plus => "+",
            SignSymbol::Minus => "-",
            SignSymbol::PlusZero => "+0",
            SignSymbol::MinusZero => "-0",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignPattern(pub [SignSymbol; 4]);

impl SignPattern {
    pub fn matches(&self, q: &Quad) -> bool {
        self.0.iter().zip(q.entries()).all(|(s, x)| s.contains(x))
    }

    /// A random member of the region. Magnitudes are 1, small, or up to 10⁶;
    /// `+0` and `-0` coordinates are zero a quarter of the time.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Quad {
        let mut draw = |s: SignSymbol| -> BigInt {
            let magnitude: i64 = match rng.random_range(0..4) {
                0 => 1,
                1 => rng.random_range(1..=10),
                _ => rng.random_range(1..=1_000_000),
            };
            match s {
                SignSymbol::Zero => 0.into(),
                SignSymbol::Plus => magnitude.into(),
                SignSymbol::Minus => (-magnitude).into(),
                SignSymbol::PlusZero | SignSymbol::MinusZero if rng.random_range(0..4) == 0 => 0.into(),
                SignSymbol::PlusZero => magnitude.into(),
                SignSymbol::MinusZero => (-magnitude).into(),
            }
        };
        let [s1, s2, s3, s4] = self.0;
        Quad { a: draw(s1), b: draw(s2), c: draw(s3), d: draw(s4) }
    }

    /// Whether any symbol admits zero.
    pub fn has_boundary(&self) -> bool {
        self.0.iter().any(|s| s.allows_zero())
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a},{b},{c},{d})")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BoxId {
    B1,
    B2,
    B3,
    B4,
    B5,
    B6,
    B7,
    B8,
    B9,
}

impl BoxId {
    pub const ALL: [BoxId; 9] =
        [BoxId::B1, BoxId::B2, BoxId::B3, BoxId::B4, BoxId::B5, BoxId::B6, BoxId::B7, BoxId::B8, BoxId::B9];

    pub fn pattern(self) -> SignPattern {
        use SignSymbol::*;
        SignPattern(match self {
            BoxId::B1 => [Zero, Plus, Zero, Plus],
            BoxId::B2 => [Plus, Zero, Zero, Plus],
            BoxId::B3 => [Minus, Zero, Zero, Plus],
            BoxId::B4 => [Zero, Plus, Plus, Zero],
            BoxId::B5 => [Zero, Plus, Minus, Zero],
            BoxId::B6 => [Minus, Minus, PlusZero, Plus],
            BoxId::B7 => [Plus, Minus, MinusZero, Plus],
            BoxId::B8 => [PlusZero, Plus, Minus, Minus],
            BoxId::B9 => [MinusZero, Plus, Plus, Minus],
        })
    }
}

impl fmt::Display for BoxId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Every box whose pattern contains `q`.
pub fn classify(q: &Quad) -> Vec<BoxId> {
    BoxId::ALL.into_iter().filter(|b| b.pattern().matches(q)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ArrowLabel {
    Case(u8),
    Rho,
}

impl fmt::Display for ArrowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArrowLabel::Case(k) => write!(f, "{k}"),
            ArrowLabel::Rho => f.write_str("rho"),
        }
    }
}

pub type ClosedForm = fn(&Quad) -> Quad;

#[derive(Clone, Copy)]
pub struct Arrow {
    pub label: ArrowLabel,
    pub source: BoxId,
    pub generator: LetterKind,
    pub target: BoxId,
    /// Image of a source-box member under `generator`.
    pub closed_form: ClosedForm,
}

impl Arrow {
    pub fn name(&self) -> String {
        format!("{}: {} -{}-> {}", self.label, self.source, generator_symbol(self.generator), self.target)
    }
}

impl fmt::Debug for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

pub fn generator_symbol(kind: LetterKind) -> &'static str {
    match kind {
        LetterKind::SigmaPositive => "s",
        LetterKind::SigmaNegative => "S",
        LetterKind::Rho => "r",
    }
}

fn q(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Quad {
    Quad { a, b, c, d }
}

// Closed forms, one per numbered arrow.
fn case1(x: &Quad) -> Quad {
    q(-&x.b, 0.into(), 0.into(), &x.b + &x.d)
}
fn case2(x: &Quad) -> Quad {
    q(x.b.clone(), 0.into(), 0.into(), &x.b + &x.d)
}
fn case3(x: &Quad) -> Quad {
    q(x.a.clone(), x.a.clone(), 0.into(), &x.d - &x.a)
}
fn case4(x: &Quad) -> Quad {
    q(x.a.clone(), -&x.a, 0.into(), &x.a + &x.d)
}
fn case5(x: &Quad) -> Quad {
    q(&x.c - &x.b, 0.into(), 0.into(), x.b.clone())
}
fn case6(x: &Quad) -> Quad {
    q(&x.b + &x.c, 0.into(), 0.into(), x.b.clone())
}
fn case7(x: &Quad) -> Quad {
    q(x.b.clone(), x.c.clone(), x.c.clone(), &x.b - &x.c)
}
fn case8(x: &Quad) -> Quad {
    q(-&x.b, -&x.c, x.c.clone(), &x.b + &x.c)
}
fn case9(x: &Quad) -> Quad {
    q(x.a.clone(), &x.a + &x.b - &x.c, x.c.clone(), &x.c + &x.d - &x.a)
}
fn case10(x: &Quad) -> Quad {
    q(&x.c - &x.b, x.d.clone(), &x.a - &x.d, x.b.clone())
}
fn case11(x: &Quad) -> Quad {
    q(&x.a + &x.b, &x.d - &x.a + &x.c, &x.c + &x.d, &x.b + &x.a - &x.c)
}
fn case12(x: &Quad) -> Quad {
    q(x.a.clone(), &x.b + &x.c - &x.a, x.c.clone(), &x.a - &x.c + &x.d)
}
fn case13(x: &Quad) -> Quad {
    q(&x.b + &x.c, x.d.clone(), &x.d + &x.a, x.b.clone())
}
fn case14(x: &Quad) -> Quad {
    q(&x.a - &x.b, &x.d + &x.a - &x.c, &x.c - &x.d, &x.b - &x.a + &x.c)
}
fn swap_pairs(x: &Quad) -> Quad {
    x.act_rho()
}

/// The fourteen σ-arrows followed by the five ρ-arrows.
pub fn arrow_table() -> Vec<Arrow> {
    use BoxId::*;
    use LetterKind::{Rho, SigmaNegative as Inv, SigmaPositive as Sig};
    let numbered: [(BoxId, LetterKind, BoxId, ClosedForm); 14] = [
        (B1, Inv, B3, case1),
        (B1, Sig, B2, case2),
        (B3, Inv, B6, case3),
        (B2, Sig, B7, case4),
        (B5, Inv, B3, case5),
        (B4, Sig, B2, case6),
        (B5, Sig, B7, case7),
        (B4, Inv, B6, case8),
        (B6, Inv, B6, case9),
        (B8, Inv, B6, case10),
        (B8, Sig, B7, case11),
        (B7, Sig, B7, case12),
        (B9, Sig, B7, case13),
        (B9, Inv, B6, case14),
    ];
    let mut table: Vec<Arrow> = numbered
        .into_iter()
        .enumerate()
        .map(|(k, (source, generator, target, closed_form))| Arrow {
            label: ArrowLabel::Case(k as u8 + 1),
            source,
            generator,
            target,
            closed_form,
        })
        .collect();
    for (source, target) in [(B1, B1), (B2, B4), (B3, B5), (B6, B8), (B7, B9)] {
        table.push(Arrow { label: ArrowLabel::Rho, source, generator: Rho, target, closed_form: swap_pairs });
    }
    table
}

/// The arrow leaving `source` with label `generator`, if the diagram has one.
pub fn find_arrow(table: &[Arrow], source: BoxId, generator: LetterKind) -> Option<&Arrow> {
    table.iter().find(|a| a.source == source && a.generator == generator)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub input: Quad,
    pub image: Quad,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowReport {
    pub arrow: String,
    pub samples: usize,
    /// Samples with at least one zero coordinate.
    pub boundary_samples: usize,
    pub failures: usize,
    pub first_counterexample: Option<Counterexample>,
}

impl ArrowReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Checks one sampled source member against every claim the arrow makes.
#[allow(clippy::result_large_err)]
pub fn check_arrow_on(arrow: &Arrow, input: &Quad) -> Result<Quad, Counterexample> {
    let image = input.act(arrow.generator);
    let fail = |reason: String| Counterexample { input: input.clone(), image: image.clone(), reason };
    if !arrow.source.pattern().matches(input) {
        return Err(fail(format!("input is not in {}", arrow.source.pattern())));
    }
    let closed = (arrow.closed_form)(input);
    if closed != image {
        return Err(fail(format!("closed form gives ({closed})")));
    }
    if !arrow.target.pattern().matches(&image) {
        return Err(fail(format!("image is not in {}", arrow.target.pattern())));
    }
    let (before, after) = (input.l1_norm(), image.l1_norm());
    match arrow.generator {
        LetterKind::Rho if after != before => Err(fail(format!("norm changed from {before} to {after}"))),
        LetterKind::SigmaPositive | LetterKind::SigmaNegative if after <= before => {
            Err(fail(format!("norm did not increase: {before} -> {after}")))
        }
        _ if image.even_sum() != input.even_sum() => Err(fail("b + d not conserved".into())),
        _ => Ok(image),
    }
}

pub fn verify_arrow<R: Rng + ?Sized>(arrow: &Arrow, samples: usize, rng: &mut R) -> ArrowReport {
    let pattern = arrow.source.pattern();
    let mut report =
        ArrowReport { arrow: arrow.name(), samples, boundary_samples: 0, failures: 0, first_counterexample: None };
    for _ in 0..samples {
        let input = pattern.sample(rng);
        if input.entries().iter().any(|x| x.is_zero()) {
            report.boundary_samples += 1;
        }
        if let Err(cx) = check_arrow_on(arrow, &input) {
            report.failures += 1;
            report.first_counterexample.get_or_insert(cx);
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MissingSuccessor {
    pub reached_by: String,
    pub at: BoxId,
    pub generator: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub pairs_checked: usize,
    pub missing: Vec<MissingSuccessor>,
}

impl ClosureReport {
    pub fn closed(&self) -> bool {
        self.missing.is_empty()
    }
}

const GENERATORS: [LetterKind; 3] = [LetterKind::SigmaPositive, LetterKind::SigmaNegative, LetterKind::Rho];

/// Every arrow into a box must be continuable by every generator that does
/// not cancel its label, and the start box must have all three.
pub fn verify_closure_of(table: &[Arrow]) -> ClosureReport {
    let mut report = ClosureReport { pairs_checked: 0, missing: Vec::new() };
    let mut demands: Vec<(String, BoxId, Option<LetterKind>)> = vec![("start".into(), BoxId::B1, None)];
    demands.extend(table.iter().map(|a| (a.name(), a.target, Some(a.generator))));
    for (reached_by, at, incoming) in demands {
        for g in GENERATORS {
            if incoming.is_some_and(|i| i.inverse() == g) {
                continue;
            }
            report.pairs_checked += 1;
            if find_arrow(table, at, g).is_none() {
                report.missing.push(MissingSuccessor {
                    reached_by: reached_by.clone(),
                    at,
                    generator: generator_symbol(g).into(),
                });
            }
        }
    }
    report
}

pub fn verify_closure() -> ClosureReport {
    verify_closure_of(&arrow_table())
}

/// A quad whose σ-image has smaller norm, so norm growth is a property of the
/// diagram regions and not of σ itself. `(-1,0,0,2) · σ = (0,1,0,1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NegativeControl {
    pub input: Quad,
    pub image: Quad,
    pub norm_before: BigInt,
    pub norm_after: BigInt,
}

impl NegativeControl {
    pub fn confirmed(&self) -> bool {
        self.norm_after < self.norm_before
    }
}

pub fn negative_control() -> NegativeControl {
    let input = Quad::new(-1, 0, 0, 2);
    let image = input.act_sigma();
    NegativeControl { norm_before: input.l1_norm(), norm_after: image.l1_norm(), input, image }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramReport {
    pub seed: u64,
    pub samples_per_arrow: usize,
    pub arrows: Vec<ArrowReport>,
    pub closure: ClosureReport,
    pub negative_control: NegativeControl,
}

impl DiagramReport {
    pub fn passed(&self) -> bool {
        self.arrows.iter().all(ArrowReport::passed) && self.closure.closed() && self.negative_control.confirmed()
    }
}

/// Verifies every arrow (independent random stream per arrow), the closure
/// property, and the negative control.
pub fn verify_diagram(samples_per_arrow: usize, seed: u64) -> DiagramReport {
    let table = arrow_table();
    let arrows = par::map_indexed(table.len(), |k| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k as u64);
        verify_arrow(&table[k], samples_per_arrow, &mut rng)
    });
    DiagramReport { seed, samples_per_arrow, arrows, closure: verify_closure(), negative_control: negative_control() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathStep {
    pub letter: String,
    pub arrow: String,
    pub vector: Quad,
    pub norm: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum Certificate {
    /// The word freely reduces to the empty word.
    Trivial,
    Nontrivial {
        start: Quad,
        image: Quad,
        /// Boxes visited, starting with `B1`.
        path: Vec<BoxId>,
        steps: Vec<PathStep>,
    },
    /// A step left the diagram. This would contradict faithfulness.
    Violation { step: usize, reason: String },
}

impl Certificate {
    pub fn is_nontrivial(&self) -> bool {
        matches!(self, Certificate::Nontrivial { .. })
    }

    /// L1 norms along the path, starting with the start vector's.
    pub fn norms(&self) -> Vec<BigInt> {
        match self {
            Certificate::Nontrivial { start, steps, .. } => {
                std::iter::once(start.l1_norm()).chain(steps.iter().map(|s| s.norm.clone())).collect()
            }
            _ => Vec::new(),
        }
    }
}

/// Certifies that a `VB_2` word is nontrivial starting from `(0,2,0,1)`.
pub fn certify_nontrivial(word: &BraidWord) -> Result<Certificate, Error> {
    certify_nontrivial_from(word, &Quad::new(0, 2, 0, 1))
}

/// As [`certify_nontrivial`], from any `(0,x,0,y)` with `x ≠ y` positive.
pub fn certify_nontrivial_from(word: &BraidWord, start: &Quad) -> Result<Certificate, Error> {
    if word.strands() != 2 {
        return Err(Error::Config(format!("certificates need a 2-strand word, got {}", word.strands())));
    }
    if !BoxId::B1.pattern().matches(start) || start.b == start.d {
        return Err(Error::BadStartVector);
    }
    let reduced = word.free_reduce();
    if reduced.is_empty() {
        return Ok(Certificate::Trivial);
    }
    let table = arrow_table();
    let mut current = start.clone();
    let mut at = BoxId::B1;
    let mut path = vec![at];
    let mut steps = Vec::with_capacity(reduced.len());
    for (k, letter) in reduced.letters().iter().enumerate() {
        let violation = |reason: String| Ok(Certificate::Violation { step: k + 1, reason });
        let Some(arrow) = find_arrow(&table, at, letter.kind) else {
            return violation(format!("no arrow from {at} labelled {letter}"));
        };
        let image = match check_arrow_on(arrow, &current) {
            Ok(image) => image,
            Err(cx) => return violation(format!("arrow {}: {}", arrow.name(), cx.reason)),
        };
        at = arrow.target;
        path.push(at);
        steps.push(PathStep {
            letter: letter.to_string(),
            arrow: arrow.label.to_string(),
            norm: image.l1_norm(),
            vector: image.clone(),
        });
        current = image;
    }
    if &current == start {
        return Ok(Certificate::Violation { step: reduced.len(), reason: "word fixes the start vector".into() });
    }
    if !classify(&current).contains(&at) {
        return Ok(Certificate::Violation { step: reduced.len(), reason: format!("final vector not in {at}") });
    }
    Ok(Certificate::Nontrivial { start: start.clone(), image: current, path, steps })
}
