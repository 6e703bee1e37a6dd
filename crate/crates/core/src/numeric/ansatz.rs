//! Exhaustive elimination over the sixteen sign rules
//! `(N,M)⊙(n,m) = (±Nn ± Mm, ±Nm ± Mn)`.
//!
//! Each candidate is bilinear, so every identity that is multilinear in its
//! arguments (distributivity, associativity, isomorphism) holds for all
//! pairs exactly when it holds on basis elements. The sample sets always
//! contain the basis tuples, which makes the verdicts exact; the random
//! exact-rational samples and the fixed witness `(1,1)` produce readable
//! counterexamples.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::linalg::{self, Matrix};
use super::pair::PairNumber;
use crate::rational::{self, Rational};
use crate::report::Verdict;
use crate::rng::substream;

/// Bound on numerators and denominators of random samples.
pub const SAMPLE_BOUND: i64 = 1000;

/// The four independent signs `[s1, s2, s3, s4]` of
/// `(s1·Nn + s2·Mm, s3·Nm + s4·Mn)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SignAssignment(pub [i8; 4]);

impl SignAssignment {
    /// The rule `(Nn − Mm, Nm + Mn)`.
    pub const STANDARD: SignAssignment = SignAssignment([1, -1, 1, 1]);

    /// All sixteen assignments; bit `k` of the index set means `s_{k+1} = −1`.
    pub fn all() -> Vec<SignAssignment> {
        (0u8..16)
            .map(|bits| {
                let mut signs = [1i8; 4];
                for (k, s) in signs.iter_mut().enumerate() {
                    if bits & (1 << k) != 0 {
                        *s = -1;
                    }
                }
                SignAssignment(signs)
            })
            .collect()
    }

    /// `det L_x = s1·s3·(n² − s1·s2·s3·s4·m²)` for left multiplication by
    /// `x = (n, m)`, so the product of the signs decides the form of Δ.
    pub fn delta_form(&self) -> DeltaForm {
        if self.0.iter().map(|&s| s as i32).product::<i32>() < 0 {
            DeltaForm::SumOfSquares
        } else {
            DeltaForm::DifferenceOfSquares
        }
    }

    fn sign(&self, k: usize, q: Rational) -> Rational {
        if self.0[k] < 0 {
            -q
        } else {
            q
        }
    }
}

impl fmt::Display for SignAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<&str> = self
            .0
            .iter()
            .map(|&s| if s > 0 { "+" } else { "-" })
            .collect();
        write!(f, "({})", s.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaForm {
    /// `Δ = n² + m²`
    SumOfSquares,
    /// `Δ = n² − m²`
    DifferenceOfSquares,
}

/// One candidate multiplication rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CandidateAlgebra {
    pub signs: SignAssignment,
}

impl CandidateAlgebra {
    pub fn new(signs: SignAssignment) -> Self {
        CandidateAlgebra { signs }
    }

    pub fn multiply(&self, a: &PairNumber, b: &PairNumber) -> PairNumber {
        let s = &self.signs;
        PairNumber::new(
            s.sign(0, &a.n * &b.n) + s.sign(1, &a.m * &b.m),
            s.sign(2, &a.n * &b.m) + s.sign(3, &a.m * &b.n),
        )
    }

    /// Matrix of `y ↦ x ⊙ y` in the basis `(1,0), (0,1)`.
    fn left_matrix(&self, x: &PairNumber) -> Matrix<Rational> {
        self.columns(|b| self.multiply(x, b))
    }

    /// Matrix of `y ↦ y ⊙ x`.
    fn right_matrix(&self, x: &PairNumber) -> Matrix<Rational> {
        self.columns(|b| self.multiply(b, x))
    }

    fn columns(&self, f: impl Fn(&PairNumber) -> PairNumber) -> Matrix<Rational> {
        let c0 = f(&PairNumber::from_ints(1, 0));
        let c1 = f(&PairNumber::from_ints(0, 1));
        vec![vec![c0.n, c1.n], vec![c0.m, c1.m]]
    }

    /// Two-sided unity, found by solving the linear conditions
    /// `e ⊙ b = b` and `b ⊙ e = b` over both basis elements.
    pub fn unity(&self) -> Option<PairNumber> {
        let basis = basis();
        let mut rows: Matrix<Rational> = Vec::new();
        let mut rhs = Vec::new();
        for b in &basis {
            // e ⊙ b = e1 (b0 ⊙ b) + e2 (b1 ⊙ b)
            let l0 = self.multiply(&basis[0], b);
            let l1 = self.multiply(&basis[1], b);
            rows.push(vec![l0.n.clone(), l1.n.clone()]);
            rows.push(vec![l0.m.clone(), l1.m.clone()]);
            rhs.push(b.n.clone());
            rhs.push(b.m.clone());
            let r0 = self.multiply(b, &basis[0]);
            let r1 = self.multiply(b, &basis[1]);
            rows.push(vec![r0.n.clone(), r1.n.clone()]);
            rows.push(vec![r0.m.clone(), r1.m.clone()]);
            rhs.push(b.n.clone());
            rhs.push(b.m.clone());
        }
        let e = linalg::solve(&rows, &rhs)?;
        Some(PairNumber::new(e[0].clone(), e[1].clone()))
    }
}

fn basis() -> [PairNumber; 2] {
    [PairNumber::from_ints(1, 0), PairNumber::from_ints(0, 1)]
}

/// A failed identity together with the elements that violate it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub property: String,
    pub elements: Vec<PairNumber>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateVerdict {
    pub signs: SignAssignment,
    pub rule: String,
    pub delta_form: DeltaForm,
    pub distributive: bool,
    pub associative: bool,
    pub unity: Option<PairNumber>,
    pub invertible: bool,
    pub witnesses: Vec<Witness>,
}

impl CandidateVerdict {
    pub fn passes_associativity_unity(&self) -> bool {
        self.associative && self.unity.is_some()
    }

    pub fn survives(&self) -> bool {
        self.passes_associativity_unity() && self.invertible
    }
}

/// Counterexamples recorded for one candidate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateFailures {
    pub signs: SignAssignment,
    pub witnesses: Vec<Witness>,
}

/// A survivor together with the componentwise sign map `(n,m) ↦ (σ₁n, σ₂m)`
/// carrying it onto the standard rule, if one exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsomorphismLink {
    pub signs: SignAssignment,
    pub map_to_standard: Option<[i8; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurvivorReport {
    pub trials: usize,
    pub seed: u64,
    pub total_candidates: usize,
    pub pass_associativity_unity: Vec<SignAssignment>,
    pub pass_invertibility: Vec<SignAssignment>,
    pub isomorphism_classes: usize,
    pub classes: Vec<Vec<SignAssignment>>,
    pub links_to_standard: Vec<IsomorphismLink>,
    pub witness_failures: Vec<CandidateFailures>,
    pub candidates: Vec<CandidateVerdict>,
    pub verdict: Verdict,
}

/// Runs every filter on every candidate. `trial_count` random samples are
/// drawn per filter per candidate, from per-candidate substreams of `seed`.
pub fn ansatz_search(trial_count: usize, seed: u64) -> SurvivorReport {
    let trial_count = trial_count.max(1);
    let candidates: Vec<CandidateVerdict> = SignAssignment::all()
        .into_par_iter()
        .enumerate()
        .map(|(idx, signs)| examine(CandidateAlgebra::new(signs), trial_count, seed, idx as u64))
        .collect();

    let pass_associativity_unity: Vec<SignAssignment> = candidates
        .iter()
        .filter(|c| c.passes_associativity_unity())
        .map(|c| c.signs)
        .collect();
    let pass_invertibility: Vec<SignAssignment> = candidates
        .iter()
        .filter(|c| c.survives())
        .map(|c| c.signs)
        .collect();

    let classes = isomorphism_classes(&pass_invertibility);
    let links_to_standard = pass_invertibility
        .iter()
        .map(|&signs| IsomorphismLink {
            signs,
            map_to_standard: find_sign_isomorphism(
                CandidateAlgebra::new(signs),
                CandidateAlgebra::new(SignAssignment::STANDARD),
            ),
        })
        .collect();
    let witness_failures = candidates
        .iter()
        .filter(|c| !c.witnesses.is_empty())
        .map(|c| CandidateFailures {
            signs: c.signs,
            witnesses: c.witnesses.clone(),
        })
        .collect();

    let verdict = Verdict::from_bool(
        pass_invertibility.contains(&SignAssignment::STANDARD) && classes.len() == 1,
    );
    SurvivorReport {
        trials: trial_count,
        seed,
        total_candidates: candidates.len(),
        pass_associativity_unity,
        pass_invertibility,
        isomorphism_classes: classes.len(),
        classes,
        links_to_standard,
        witness_failures,
        candidates,
        verdict,
    }
}

fn random_pair(rng: &mut impl rand::Rng) -> PairNumber {
    PairNumber::new(
        rational::random(rng, SAMPLE_BOUND),
        rational::random(rng, SAMPLE_BOUND),
    )
}

fn random_nonzero_pair(rng: &mut impl rand::Rng) -> PairNumber {
    loop {
        let p = random_pair(rng);
        if !p.is_zero() {
            return p;
        }
    }
}

fn basis_triples() -> Vec<[PairNumber; 3]> {
    let b = basis();
    let mut out = Vec::with_capacity(8);
    for x in &b {
        for y in &b {
            for z in &b {
                out.push([x.clone(), y.clone(), z.clone()]);
            }
        }
    }
    out
}

fn examine(alg: CandidateAlgebra, trials: usize, seed: u64, stream: u64) -> CandidateVerdict {
    let mut rng = substream(seed, stream);
    let witness_one = PairNumber::from_ints(1, 1);
    let mut triples = basis_triples();
    triples.push([
        witness_one.clone(),
        witness_one.clone(),
        witness_one.clone(),
    ]);
    triples.extend((0..trials).map(|_| {
        [
            random_pair(&mut rng),
            random_pair(&mut rng),
            random_pair(&mut rng),
        ]
    }));

    let mut witnesses = Vec::new();

    let distributive_failure = triples.iter().find(|[a, b, c]| {
        let sum = a.add(b);
        alg.multiply(c, &sum) != alg.multiply(c, a).add(&alg.multiply(c, b))
            || alg.multiply(&sum, c) != alg.multiply(a, c).add(&alg.multiply(b, c))
    });
    if let Some(t) = distributive_failure {
        witnesses.push(Witness {
            property: "distributivity".into(),
            elements: t.to_vec(),
        });
    }

    let associative_failure = triples.iter().find(|[a, b, c]| {
        alg.multiply(&alg.multiply(a, b), c) != alg.multiply(a, &alg.multiply(b, c))
    });
    if let Some(t) = associative_failure {
        witnesses.push(Witness {
            property: "associativity".into(),
            elements: t.to_vec(),
        });
    }

    let mut unity = alg.unity();
    if let Some(e) = &unity {
        // cross-check the symbolic solution on the samples
        let bad = triples
            .iter()
            .map(|t| &t[0])
            .find(|a| alg.multiply(e, a) != **a || alg.multiply(a, e) != **a);
        if let Some(a) = bad {
            witnesses.push(Witness {
                property: "unity".into(),
                elements: vec![e.clone(), a.clone()],
            });
            unity = None;
        }
    } else {
        witnesses.push(Witness {
            property: "unity".into(),
            elements: Vec::new(),
        });
    }

    let mut samples = vec![witness_one];
    samples.extend(basis());
    samples.extend((0..trials).map(|_| random_nonzero_pair(&mut rng)));
    let invert_failure = samples
        .iter()
        .find(|x| !invertible_at(&alg, x, unity.as_ref()));
    if let Some(x) = invert_failure {
        witnesses.push(Witness {
            property: "invertibility".into(),
            elements: vec![x.clone()],
        });
    }

    CandidateVerdict {
        signs: alg.signs,
        rule: rule_text(alg.signs),
        delta_form: alg.signs.delta_form(),
        distributive: distributive_failure.is_none(),
        associative: associative_failure.is_none(),
        unity,
        invertible: invert_failure.is_none(),
        witnesses,
    }
}

/// Left and right multiplication by `x` must be bijective, and when a unity
/// exists the solution of `x ⊙ y = 1` must also satisfy `y ⊙ x = 1`.
fn invertible_at(alg: &CandidateAlgebra, x: &PairNumber, unity: Option<&PairNumber>) -> bool {
    let left = alg.left_matrix(x);
    let right = alg.right_matrix(x);
    let zero = Rational::from_integer(0.into());
    if linalg::determinant(&left) == zero || linalg::determinant(&right) == zero {
        return false;
    }
    match unity {
        Some(e) => {
            let Some(y) = linalg::solve(&left, &[e.n.clone(), e.m.clone()]) else {
                return false;
            };
            let y = PairNumber::new(y[0].clone(), y[1].clone());
            alg.multiply(&y, x) == *e
        }
        None => true,
    }
}

fn rule_text(signs: SignAssignment) -> String {
    let sym = |k: usize| if signs.0[k] > 0 { "+" } else { "-" };
    format!(
        "({}Nn {} Mm, {}Nm {} Mn)",
        if signs.0[0] > 0 { "" } else { "-" },
        sym(1),
        if signs.0[2] > 0 { "" } else { "-" },
        sym(3)
    )
}

fn sign_map(map: [i8; 2], x: &PairNumber) -> PairNumber {
    let flip = |s: i8, q: &Rational| if s < 0 { -q } else { q.clone() };
    PairNumber::new(flip(map[0], &x.n), flip(map[1], &x.m))
}

/// Looks for a componentwise sign map `φ` with `φ(a ⊙_from b) = φ(a) ⊙_to φ(b)`.
/// Both sides are bilinear, so checking the four basis pairs is exact.
pub fn find_sign_isomorphism(from: CandidateAlgebra, to: CandidateAlgebra) -> Option<[i8; 2]> {
    const MAPS: [[i8; 2]; 4] = [[1, 1], [1, -1], [-1, 1], [-1, -1]];
    let b = basis();
    MAPS.into_iter().find(|&map| {
        b.iter().all(|x| {
            b.iter().all(|y| {
                sign_map(map, &from.multiply(x, y))
                    == to.multiply(&sign_map(map, x), &sign_map(map, y))
            })
        })
    })
}

fn isomorphism_classes(survivors: &[SignAssignment]) -> Vec<Vec<SignAssignment>> {
    let mut classes: Vec<Vec<SignAssignment>> = Vec::new();
    for &s in survivors {
        let alg = CandidateAlgebra::new(s);
        match classes
            .iter_mut()
            .find(|class| find_sign_isomorphism(alg, CandidateAlgebra::new(class[0])).is_some())
        {
            Some(class) => class.push(s),
            None => classes.push(vec![s]),
        }
    }
    classes
}
