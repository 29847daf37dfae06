use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NoiseKind {
    Depolarizing,
    Dephasing,
    Flip,
    Custom,
}

/// Single-qudit Weyl channel `ρ ↦ Σ q_{a,b} W(a,b) ρ W(a,b)†`.
#[derive(Clone, Debug, PartialEq)]
pub struct NoiseModel {
    d: u32,
    kind: NoiseKind,
    p: f64,
    /// Weight of every `(a, b)` with `q > 0`, identity included, sorted by key.
    entries: Vec<((u32, u32), f64)>,
    /// Non-identity errors and their running weight totals, for sampling.
    errors: Vec<(u32, u32)>,
    cumulative: Vec<f64>,
}

const SUM_TOLERANCE: f64 = 1e-12;

fn check_p(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(format!("p = {p} is outside [0, 1]")));
    }
    Ok(())
}

fn check_d(d: u32) -> Result<()> {
    crate::tableau::check_dimension(d)
}

impl NoiseModel {
    /// Weight `p/(d²−1)` on each non-identity pair.
    pub fn depolarizing(p: f64, d: u32) -> Result<Self> {
        check_p(p)?;
        check_d(d)?;
        let w = p / (d * d - 1) as f64;
        let table = (0..d).flat_map(|a| (0..d).map(move |b| (a, b))).filter(|&k| k != (0, 0)).map(|k| (k, w));
        Self::build(d, NoiseKind::Depolarizing, p, table.collect())
    }

    /// Weight `p/(d−1)` on each `Z^b`, `b ≠ 0`.
    pub fn dephasing(p: f64, d: u32) -> Result<Self> {
        check_p(p)?;
        check_d(d)?;
        let w = p / (d - 1) as f64;
        Self::build(d, NoiseKind::Dephasing, p, (1..d).map(|b| ((0, b), w)).collect())
    }

    /// Weight `p/(d−1)` on each `X^a`, `a ≠ 0`.
    pub fn dit_flip(p: f64, d: u32) -> Result<Self> {
        check_p(p)?;
        check_d(d)?;
        let w = p / (d - 1) as f64;
        Self::build(d, NoiseKind::Flip, p, (1..d).map(|a| ((a, 0), w)).collect())
    }

    /// Arbitrary mixture; duplicate keys are merged and the weights must sum to 1.
    pub fn custom(d: u32, table: &[((u32, u32), f64)]) -> Result<Self> {
        check_d(d)?;
        let mut identity = 0.0;
        let mut rest = Vec::new();
        for &((a, b), q) in table {
            if a >= d || b >= d {
                return Err(Error::InvalidProbability(format!("W({a},{b}) is not a d = {d} Weyl operator")));
            }
            if !(0.0..=1.0).contains(&q) {
                return Err(Error::InvalidProbability(format!("weight {q} for W({a},{b})")));
            }
            if (a, b) == (0, 0) {
                identity += q;
            } else {
                rest.push(((a, b), q));
            }
        }
        Self::build(d, NoiseKind::Custom, 1.0 - identity, rest)
    }

    /// Mixture given as `d²` weights in `(a, b)` order, `a` major.
    pub fn weyl_mix(d: u32, weights: &[f64]) -> Result<Self> {
        check_d(d)?;
        if weights.len() != (d * d) as usize {
            return Err(Error::InvalidProbability(format!("{} weights for d² = {}", weights.len(), d * d)));
        }
        let table: Vec<_> = weights.iter().enumerate().map(|(i, &q)| ((i as u32 / d, i as u32 % d), q)).collect();
        Self::custom(d, &table)
    }

    fn build(d: u32, kind: NoiseKind, p: f64, table: Vec<((u32, u32), f64)>) -> Result<Self> {
        let identity = 1.0 - p;
        let mut merged: std::collections::BTreeMap<(u32, u32), f64> = std::collections::BTreeMap::new();
        for (k, q) in table {
            *merged.entry(k).or_insert(0.0) += q;
        }
        let total: f64 = identity + merged.values().sum::<f64>();
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::InvalidProbability(format!("weights sum to {total}, not 1")));
        }
        let mut entries = Vec::new();
        if identity > 0.0 {
            entries.push(((0, 0), identity));
        }
        let mut errors = Vec::new();
        let mut cumulative = Vec::new();
        let mut acc = 0.0;
        for (k, q) in merged {
            if q > 0.0 {
                entries.push((k, q));
                errors.push(k);
                acc += q;
                cumulative.push(acc);
            }
        }
        Ok(NoiseModel { d, kind, p, entries, errors, cumulative })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn kind(&self) -> NoiseKind {
        self.kind
    }

    pub fn entries(&self) -> &[((u32, u32), f64)] {
        &self.entries
    }

    pub fn weight(&self, a: u32, b: u32) -> f64 {
        self.entries.iter().find(|(k, _)| *k == (a, b)).map_or(0.0, |(_, q)| *q)
    }

    /// Total error probability `1 − q_{0,0}`.
    pub fn error_probability(&self) -> f64 {
        self.p
    }

    /// Non-identity pairs with positive weight.
    pub fn support(&self) -> &[(u32, u32)] {
        &self.errors
    }

    /// Draws `(a, b)` with one uniform variate; `(0, 0)` means no error.
    pub fn sample(&self, rng: &mut impl Rng) -> (u32, u32) {
        if self.errors.is_empty() {
            return (0, 0);
        }
        let u: f64 = rng.gen();
        if u >= self.p {
            return (0, 0);
        }
        let i = self.cumulative.partition_point(|&c| c <= u);
        self.errors.get(i).copied().unwrap_or((0, 0))
    }

    /// The same named channel at another strength.
    pub fn with_probability(&self, p: f64) -> Result<Self> {
        match self.kind {
            NoiseKind::Depolarizing => Self::depolarizing(p, self.d),
            NoiseKind::Dephasing => Self::dephasing(p, self.d),
            NoiseKind::Flip => Self::dit_flip(p, self.d),
            NoiseKind::Custom => {
                Err(Error::Unsupported("a custom Weyl mixture has no single strength parameter".into()))
            }
        }
    }

    /// Parses `DEPOL(p)`, `DEPHASE(p)`, `FLIP(p)` or `WEYLMIX(q00:q01:…)`.
    pub fn parse(spec: &str, d: u32) -> std::result::Result<Self, String> {
        let (name, rest) = spec.split_once('(').ok_or_else(|| format!("malformed noise model '{spec}'"))?;
        let args = rest.strip_suffix(')').ok_or_else(|| format!("missing ')' in '{spec}'"))?;
        let num = |s: &str| s.trim().parse::<f64>().map_err(|_| format!("bad probability '{s}'"));
        let model = match name {
            "DEPOL" => Self::depolarizing(num(args)?, d),
            "DEPHASE" => Self::dephasing(num(args)?, d),
            "FLIP" => Self::dit_flip(num(args)?, d),
            "WEYLMIX" => {
                let weights: Vec<f64> = args.split(':').map(num).collect::<std::result::Result<_, _>>()?;
                Self::weyl_mix(d, &weights)
            }
            other => return Err(format!("unknown noise model '{other}'")),
        };
        model.map_err(|e| e.to_string())
    }
}

impl fmt::Display for NoiseModel {
    /// Circuit-file spelling; floats use the shortest round-trip form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.error_probability();
        match self.kind {
            NoiseKind::Depolarizing => write!(f, "DEPOL({p})"),
            NoiseKind::Dephasing => write!(f, "DEPHASE({p})"),
            NoiseKind::Flip => write!(f, "FLIP({p})"),
            NoiseKind::Custom => {
                let d = self.d;
                let weights: Vec<String> = (0..d)
                    .flat_map(|a| (0..d).map(move |b| (a, b)))
                    .map(|(a, b)| self.weight(a, b).to_string())
                    .collect();
                write!(f, "WEYLMIX({})", weights.join(":"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn named_channels() {
        let m = NoiseModel::depolarizing(0.0, 3).unwrap();
        assert_eq!(m.entries(), &[((0, 0), 1.0)]);
        assert_eq!(m.error_probability(), 0.0);

        let m = NoiseModel::depolarizing(0.4, 3).unwrap();
        assert_eq!(m.support().len(), 8);
        for &(a, b) in m.support() {
            assert!((m.weight(a, b) - 0.05).abs() < 1e-15);
        }
        let m = NoiseModel::dephasing(0.3, 5).unwrap();
        assert_eq!(m.support(), &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        let m = NoiseModel::dit_flip(1.0, 3).unwrap();
        assert_eq!(m.support(), &[(1, 0), (2, 0)]);
        assert_eq!(m.weight(0, 0), 0.0);
    }

    #[test]
    fn invalid_inputs() {
        assert!(matches!(NoiseModel::depolarizing(1.5, 3), Err(Error::InvalidProbability(_))));
        assert!(matches!(NoiseModel::dephasing(-0.1, 3), Err(Error::InvalidProbability(_))));
        assert!(NoiseModel::custom(3, &[((0, 0), 0.5), ((1, 1), 0.4)]).is_err());
        assert!(NoiseModel::custom(3, &[((0, 0), 0.5), ((3, 0), 0.5)]).is_err());
        assert!(NoiseModel::weyl_mix(2, &[1.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn custom_merges_duplicates() {
        let m = NoiseModel::custom(3, &[((0, 0), 0.5), ((1, 2), 0.25), ((1, 2), 0.25)]).unwrap();
        assert_eq!(m.entries(), &[((0, 0), 0.5), ((1, 2), 0.5)]);
        assert!(m.with_probability(0.1).is_err());
    }

    #[test]
    fn text_round_trip() {
        for m in [
            NoiseModel::depolarizing(0.1, 3).unwrap(),
            NoiseModel::dephasing(0.25, 4).unwrap(),
            NoiseModel::dit_flip(1.0, 2).unwrap(),
            NoiseModel::weyl_mix(2, &[0.7, 0.1, 0.1, 0.1]).unwrap(),
        ] {
            let text = m.to_string();
            assert_eq!(NoiseModel::parse(&text, m.d()).unwrap(), m, "{text}");
        }
        assert!(NoiseModel::parse("BOGUS(0.1)", 3).is_err());
        assert!(NoiseModel::parse("DEPOL(x)", 3).is_err());
    }

    #[test]
    fn sampling_frequencies() {
        let m = NoiseModel::depolarizing(0.5, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let n = 10_000;
        let hits = (0..n).filter(|_| m.sample(&mut rng) != (0, 0)).count() as f64;
        let sigma = (n as f64 * 0.25).sqrt();
        assert!((hits - 5000.0).abs() < 3.0 * sigma);
    }
}
