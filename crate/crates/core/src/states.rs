//! State families: generalized GHZ, Schmidt pairs, GHZ-type and W-type
//! tripartite states, slot-assigned products, Haar-random states, and the
//! samplers used for class-membership sweeps.
//!
//! All randomness flows through seeded ChaCha8 generators; restart and sample
//! streams are derived deterministically so outputs are reproducible.

use num_complex::Complex;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{mix, permute_qubits, pure_to_density, DensityMatrix, PureState};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Identifier of the RNG algorithm recorded in output metadata.
pub const RNG_ALGORITHM: &str = "chacha8";

/// cos(alpha)|0000> + sin(alpha)|1111>, alpha in [0, pi/4].
pub fn generalized_ghz<T: Scalar>(alpha: T) -> Result<PureState<T>> {
    if alpha < T::zero() || alpha > T::FRAC_PI_4() + T::NORM_EPS {
        return Err(Error::ParameterRange {
            name: "alpha",
            value: alpha.to_f64().unwrap_or(f64::NAN),
            range: "[0, pi/4]",
        });
    }
    let zero = Complex::new(T::zero(), T::zero());
    let mut amps = vec![zero; 16];
    amps[0] = Complex::new(alpha.cos(), T::zero());
    amps[15] = Complex::new(alpha.sin(), T::zero());
    Ok(PureState::from_normalized(4, amps))
}

/// cos(alpha)|01> - sin(alpha)|10> on two qubits.
pub fn schmidt_pair<T: Scalar>(alpha: T) -> PureState<T> {
    let zero = Complex::new(T::zero(), T::zero());
    let mut amps = vec![zero; 4];
    amps[0b01] = Complex::new(alpha.cos(), T::zero());
    amps[0b10] = Complex::new(-alpha.sin(), T::zero());
    PureState::from_normalized(2, amps)
}

/// Three-qubit GHZ-type state
/// sqrt(K) (cos(delta)|000> + sin(delta) e^{i phi} |pA>|pB>|pC>) with
/// |pX> = cos(x)|0> + sin(x)|1> and
/// K = (1 + 2 cos(delta) sin(delta) cos(alpha) cos(beta) cos(gamma)
/// cos(phi))^{-1}.
pub fn ghz_type3<T: Scalar>(delta: T, alpha: T, beta: T, gamma: T, phi: T) -> Result<PureState<T>> {
    let eps = T::NORM_EPS;
    if delta <= T::zero() || delta > T::FRAC_PI_4() + eps {
        return Err(Error::ParameterRange {
            name: "delta",
            value: delta.to_f64().unwrap_or(f64::NAN),
            range: "(0, pi/4]",
        });
    }
    for (name, v) in [("alpha", alpha), ("beta", beta), ("gamma", gamma)] {
        if v <= T::zero() || v > T::FRAC_PI_2() + eps {
            return Err(Error::ParameterRange {
                name,
                value: v.to_f64().unwrap_or(f64::NAN),
                range: "(0, pi/2]",
            });
        }
    }
    if phi < T::zero() || phi >= T::lit(2.0) * T::PI() {
        return Err(Error::ParameterRange {
            name: "phi",
            value: phi.to_f64().unwrap_or(f64::NAN),
            range: "[0, 2*pi)",
        });
    }
    let (cd, sd) = (delta.cos(), delta.sin());
    let denom = T::one()
        + T::lit(2.0) * cd * sd * alpha.cos() * beta.cos() * gamma.cos() * phi.cos();
    assert!(
        denom > T::zero(),
        "normalization denominator must stay positive in the stated ranges"
    );
    let root_k = (T::one() / denom).sqrt();
    let pa = [alpha.cos(), alpha.sin()];
    let pb = [beta.cos(), beta.sin()];
    let pc = [gamma.cos(), gamma.sin()];
    let phase = Complex::new(phi.cos(), phi.sin());
    let mut amps = vec![Complex::new(T::zero(), T::zero()); 8];
    for (idx, amp) in amps.iter_mut().enumerate() {
        let (b1, b2, b3) = ((idx >> 2) & 1, (idx >> 1) & 1, idx & 1);
        let branch = phase.scale(sd * pa[b1] * pb[b2] * pc[b3]);
        let base = if idx == 0 {
            Complex::new(cd, T::zero())
        } else {
            Complex::new(T::zero(), T::zero())
        };
        *amp = (base + branch).scale(root_k);
    }
    let state = PureState::from_normalized(3, amps);
    debug_assert!((state.norm_sq() - T::one()).abs() < T::NORM_EPS);
    Ok(state)
}

/// Three-qubit W-type state
/// sqrt(a)|001> + sqrt(b)|010> + sqrt(c)|100> + sqrt(d)|000>,
/// a, b, c > 0 and d = 1 - (a+b+c) >= 0.
pub fn w_type3<T: Scalar>(a: T, b: T, c: T) -> Result<PureState<T>> {
    for (name, v) in [("a", a), ("b", b), ("c", c)] {
        if v <= T::zero() {
            return Err(Error::ParameterRange {
                name,
                value: v.to_f64().unwrap_or(f64::NAN),
                range: "(0, 1)",
            });
        }
    }
    let d = T::one() - (a + b + c);
    if d < -T::NORM_EPS {
        return Err(Error::ParameterRange {
            name: "a+b+c",
            value: (a + b + c).to_f64().unwrap_or(f64::NAN),
            range: "<= 1",
        });
    }
    let d = d.max(T::zero());
    let zero = Complex::new(T::zero(), T::zero());
    let mut amps = vec![zero; 8];
    amps[0b001] = Complex::new(a.sqrt(), T::zero());
    amps[0b010] = Complex::new(b.sqrt(), T::zero());
    amps[0b100] = Complex::new(c.sqrt(), T::zero());
    amps[0b000] = Complex::new(d.sqrt(), T::zero());
    Ok(PureState::from_normalized(3, amps))
}

/// Tensor product of sub-states assigned to qubit slots; the slot lists must
/// partition {1,2,3,4}. The assembled state is reordered to global qubit
/// order.
pub fn product<T: Scalar>(parts: &[(PureState<T>, Vec<usize>)]) -> Result<PureState<T>> {
    let mut seen = [false; 4];
    let mut order: Vec<usize> = Vec::with_capacity(4);
    for (state, slots) in parts {
        if state.qubits() != slots.len() {
            return Err(Error::BadSlotAssignment(format!(
                "part with {} qubits assigned {} slots",
                state.qubits(),
                slots.len()
            )));
        }
        for &s in slots {
            if !(1..=4).contains(&s) {
                return Err(Error::BadSlotAssignment(format!("slot {s} outside 1..=4")));
            }
            if seen[s - 1] {
                return Err(Error::BadSlotAssignment(format!("slot {s} assigned twice")));
            }
            seen[s - 1] = true;
            order.push(s);
        }
    }
    if order.len() != 4 {
        return Err(Error::BadSlotAssignment(
            "slots must cover all of 1..=4".into(),
        ));
    }
    let mut assembled = parts[0].0.clone();
    for (state, _) in &parts[1..] {
        assembled = assembled.tensor(state)?;
    }
    // local position m holds global qubit order[m]; permute_qubits sends the
    // bit at position m to position perm[m], so we need perm = order here:
    // new[(i_{perm[0]}, ...)] = old[...] places local bit m at the global
    // slot when perm is the inverse assignment.
    let mut perm = [0usize; 4];
    for (m, &g) in order.iter().enumerate() {
        perm[g - 1] = m + 1;
    }
    permute_qubits(&assembled, perm)
}

/// Haar-distributed pure state on `qubits` qubits from an existing generator.
pub fn haar_pure_with<T: Scalar, R: Rng>(qubits: usize, rng: &mut R) -> PureState<T> {
    let dim = 1usize << qubits;
    let mut amps: Vec<Complex<T>> = Vec::with_capacity(dim);
    let mut norm_sq = T::zero();
    for _ in 0..dim {
        let re = T::lit(gauss(rng));
        let im = T::lit(gauss(rng));
        norm_sq += re * re + im * im;
        amps.push(Complex::new(re, im));
    }
    let inv = T::one() / norm_sq.sqrt();
    PureState::from_normalized(qubits, amps.into_iter().map(|a| a.scale(inv)).collect())
}

/// Seeded Haar-random four-qubit pure state; identical seeds give identical
/// states.
pub fn haar_random_pure<T: Scalar>(seed: u64) -> PureState<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    haar_pure_with(4, &mut rng)
}

/// Standard normal via Box-Muller; keeps the byte stream identical across
/// float widths.
fn gauss<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Dirichlet(1,...,1) weights.
fn dirichlet<R: Rng>(rng: &mut R, k: usize) -> Vec<f64> {
    let mut w: Vec<f64> = (0..k)
        .map(|_| -(rng.gen_range(f64::MIN_POSITIVE..1.0)).ln())
        .collect();
    let sum: f64 = w.iter().sum();
    for x in &mut w {
        *x /= sum;
    }
    w
}

/// Random-state constructions for each separability class.
pub mod sample {
    use super::*;

    /// Product of four Haar single-qubit states.
    pub fn fully_separable_pure<T: Scalar, R: Rng>(rng: &mut R) -> PureState<T> {
        let parts: Vec<(PureState<T>, Vec<usize>)> = (1..=4)
            .map(|q| (haar_pure_with(1, rng), vec![q]))
            .collect();
        product(&parts).expect("slots partition 1..=4")
    }

    /// Haar two-qubit state on the given pair, Haar singles elsewhere.
    pub fn tri_separable_pure<T: Scalar, R: Rng>(pair: (usize, usize), rng: &mut R) -> PureState<T> {
        let mut parts: Vec<(PureState<T>, Vec<usize>)> =
            vec![(haar_pure_with(2, rng), vec![pair.0, pair.1])];
        for q in 1..=4 {
            if q != pair.0 && q != pair.1 {
                parts.push((haar_pure_with(1, rng), vec![q]));
            }
        }
        product(&parts).expect("slots partition 1..=4")
    }

    /// Haar two-qubit states on both halves of the partition.
    pub fn bi_separable_2x2_pure<T: Scalar, R: Rng>(
        partition: ((usize, usize), (usize, usize)),
        rng: &mut R,
    ) -> PureState<T> {
        let ((p1, p2), (q1, q2)) = partition;
        product(&[
            (haar_pure_with(2, rng), vec![p1, p2]),
            (haar_pure_with(2, rng), vec![q1, q2]),
        ])
        .expect("slots partition 1..=4")
    }

    /// Which genuinely tripartite family backs a 1-3 split sample.
    #[derive(Debug, Clone, Copy, PartialEq, Eq)]
    pub enum TripartiteKind {
        GhzType,
        WType,
    }

    /// Haar single qubit at `singleton`, a random GHZ-type or W-type state on
    /// the remaining triple.
    pub fn bi_separable_1x3_pure<T: Scalar, R: Rng>(
        singleton: usize,
        kind: TripartiteKind,
        rng: &mut R,
    ) -> PureState<T> {
        let triple: Vec<usize> = (1..=4).filter(|&q| q != singleton).collect();
        let part3: PureState<T> = match kind {
            TripartiteKind::GhzType => {
                let delta = T::lit(rng.gen_range(1e-6..=std::f64::consts::FRAC_PI_4));
                let alpha = T::lit(rng.gen_range(1e-6..=std::f64::consts::FRAC_PI_2));
                let beta = T::lit(rng.gen_range(1e-6..=std::f64::consts::FRAC_PI_2));
                let gamma = T::lit(rng.gen_range(1e-6..=std::f64::consts::FRAC_PI_2));
                let phi = T::lit(rng.gen_range(0.0..std::f64::consts::TAU));
                ghz_type3(delta, alpha, beta, gamma, phi).expect("parameters in range")
            }
            TripartiteKind::WType => {
                let w = dirichlet(rng, 4);
                w_type3(
                    T::lit(w[0].max(1e-9)),
                    T::lit(w[1].max(1e-9)),
                    T::lit(w[2].max(1e-9)),
                )
                .expect("parameters in range")
            }
        };
        product(&[
            (haar_pure_with(1, rng), vec![singleton]),
            (part3, triple),
        ])
        .expect("slots partition 1..=4")
    }

    /// Haar four-qubit state (genuine-entanglement candidate).
    pub fn genuine_haar<T: Scalar, R: Rng>(rng: &mut R) -> PureState<T> {
        haar_pure_with(4, rng)
    }

    /// Convex mixture of up to `max_terms` draws from a pure-state sampler,
    /// Dirichlet-uniform weights.
    pub fn mixture_of<T: Scalar, R: Rng, F>(
        rng: &mut R,
        max_terms: usize,
        mut draw: F,
    ) -> DensityMatrix<T>
    where
        F: FnMut(&mut R) -> PureState<T>,
    {
        let k = rng.gen_range(1..=max_terms.max(1));
        let weights = dirichlet(rng, k);
        let terms: Vec<(T, PureState<T>)> = weights
            .into_iter()
            .map(|w| (T::lit(w.max(1e-12)), draw(rng)))
            .collect();
        let total: T = terms.iter().map(|(w, _)| *w).sum();
        let normalized: Vec<(T, PureState<T>)> = terms
            .into_iter()
            .map(|(w, s)| (w / total, s))
            .collect();
        mix(&normalized).expect("weights normalized")
    }

    /// Random full-rank mixed state: mixture of k <= 4 Haar pure states.
    pub fn random_mixed<T: Scalar, R: Rng>(rng: &mut R) -> DensityMatrix<T> {
        mixture_of(rng, 4, |r| haar_pure_with(4, r))
    }
}

/// JSON state specification consumed by the CLI.
///
/// Three forms are accepted:
/// `{"type":"family","name":"gghz","params":{"alpha":0.3927}}`,
/// `{"type":"pure","amplitudes":[[re,im], ... 16 pairs]}`, and
/// `{"type":"mixed","terms":[{"p":0.5,"state":{...}}, ...]}`.
/// Families `schmidt_pair`, `ghz3`, `w3` describe fewer than four qubits and
/// are only valid inside the `parts` of a `product` family.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum StateSpec {
    Family {
        name: FamilyName,
        #[serde(default, skip_serializing_if = "std::collections::BTreeMap::is_empty")]
        params: std::collections::BTreeMap<String, f64>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        parts: Vec<PartSpec>,
    },
    Pure {
        amplitudes: Vec<[f64; 2]>,
    },
    Mixed {
        terms: Vec<MixtureTerm>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyName {
    Gghz,
    SchmidtPair,
    Ghz3,
    W3,
    Product,
    HaarPure,
    Mixture,
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct PartSpec {
    pub slots: Vec<usize>,
    pub state: Box<StateSpec>,
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct MixtureTerm {
    pub p: f64,
    pub state: StateSpec,
}

/// A realized state specification: pure or mixed.
#[derive(Debug, Clone)]
pub enum BuiltState<T> {
    Pure(PureState<T>),
    Mixed(DensityMatrix<T>),
}

impl<T: Scalar> BuiltState<T> {
    pub fn density(&self) -> DensityMatrix<T> {
        match self {
            BuiltState::Pure(psi) => pure_to_density(psi),
            BuiltState::Mixed(rho) => rho.clone(),
        }
    }

    pub fn as_pure(&self) -> Option<&PureState<T>> {
        match self {
            BuiltState::Pure(psi) => Some(psi),
            BuiltState::Mixed(_) => None,
        }
    }
}

impl StateSpec {
    /// Parses a JSON document.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::BadSpec(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    /// Builds the state; the result must describe exactly four qubits.
    pub fn build<T: Scalar>(&self) -> Result<BuiltState<T>> {
        let built = self.build_any()?;
        let qubits = match &built {
            BuiltState::Pure(psi) => psi.qubits(),
            BuiltState::Mixed(rho) => rho.qubits(),
        };
        if qubits != 4 {
            return Err(Error::BadSpec(format!(
                "state describes {qubits} qubits; the top-level state must have 4"
            )));
        }
        Ok(built)
    }

    fn param(
        params: &std::collections::BTreeMap<String, f64>,
        key: &str,
    ) -> Result<f64> {
        params
            .get(key)
            .copied()
            .ok_or_else(|| Error::BadSpec(format!("missing parameter {key:?}")))
    }

    fn build_any<T: Scalar>(&self) -> Result<BuiltState<T>> {
        match self {
            StateSpec::Pure { amplitudes } => {
                let qubits = match amplitudes.len() {
                    2 => 1,
                    4 => 2,
                    8 => 3,
                    16 => 4,
                    n => {
                        return Err(Error::BadSpec(format!(
                            "amplitude list length {n} is not a power of two up to 16"
                        )))
                    }
                };
                for (i, [re, im]) in amplitudes.iter().enumerate() {
                    if !re.is_finite() || !im.is_finite() {
                        return Err(Error::BadSpec(format!(
                            "amplitude {i} is not finite"
                        )));
                    }
                }
                let amps: Vec<Complex<T>> = amplitudes
                    .iter()
                    .map(|[re, im]| Complex::new(T::lit(*re), T::lit(*im)))
                    .collect();
                Ok(BuiltState::Pure(PureState::new(qubits, amps)?))
            }
            StateSpec::Mixed { terms } => {
                if terms.is_empty() {
                    return Err(Error::BadSpec("mixed state needs at least one term".into()));
                }
                let mut collected: Vec<(T, PureState<T>)> = Vec::with_capacity(terms.len());
                for term in terms {
                    if !term.p.is_finite() {
                        return Err(Error::BadSpec("mixture weight is not finite".into()));
                    }
                    match term.state.build_any::<T>()? {
                        BuiltState::Pure(psi) => collected.push((T::lit(term.p), psi)),
                        BuiltState::Mixed(_) => {
                            return Err(Error::BadSpec(
                                "mixture terms must be pure states".into(),
                            ))
                        }
                    }
                }
                Ok(BuiltState::Mixed(mix(&collected)?))
            }
            StateSpec::Family { name, params, parts } => match name {
                FamilyName::Gghz => {
                    let alpha = Self::param(params, "alpha")?;
                    Ok(BuiltState::Pure(generalized_ghz(T::lit(alpha))?))
                }
                FamilyName::SchmidtPair => {
                    let alpha = Self::param(params, "alpha")?;
                    Ok(BuiltState::Pure(schmidt_pair(T::lit(alpha))))
                }
                FamilyName::Ghz3 => {
                    let delta = Self::param(params, "delta")?;
                    let alpha = Self::param(params, "alpha")?;
                    let beta = Self::param(params, "beta")?;
                    let gamma = Self::param(params, "gamma")?;
                    let phi = params.get("phi").copied().unwrap_or(0.0);
                    Ok(BuiltState::Pure(ghz_type3(
                        T::lit(delta),
                        T::lit(alpha),
                        T::lit(beta),
                        T::lit(gamma),
                        T::lit(phi),
                    )?))
                }
                FamilyName::W3 => {
                    let a = Self::param(params, "a")?;
                    let b = Self::param(params, "b")?;
                    let c = Self::param(params, "c")?;
                    Ok(BuiltState::Pure(w_type3(T::lit(a), T::lit(b), T::lit(c))?))
                }
                FamilyName::HaarPure => {
                    let seed = Self::param(params, "seed")? as u64;
                    Ok(BuiltState::Pure(haar_random_pure(seed)))
                }
                FamilyName::Product => {
                    if parts.is_empty() {
                        return Err(Error::BadSpec("product family needs parts".into()));
                    }
                    let mut collected: Vec<(PureState<T>, Vec<usize>)> =
                        Vec::with_capacity(parts.len());
                    for part in parts {
                        match part.state.build_any::<T>()? {
                            BuiltState::Pure(psi) => {
                                collected.push((psi, part.slots.clone()))
                            }
                            BuiltState::Mixed(_) => {
                                return Err(Error::BadSpec(
                                    "product parts must be pure states".into(),
                                ))
                            }
                        }
                    }
                    Ok(BuiltState::Pure(product(&collected)?))
                }
                FamilyName::Mixture => Err(Error::BadSpec(
                    "use {\"type\":\"mixed\",\"terms\":[...]} for mixtures".into(),
                )),
            },
        }
    }
}
