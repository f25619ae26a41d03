//! Surrogate regression models: Gaussian process with a rational quadratic
//! kernel and ε-SVR with an RBF kernel.
//!
//! Both fit on standardised responses and predict in the original units.
//! Training rows are put into a canonical order before fitting, so the
//! result does not depend on how the caller ordered them.

mod gp;
mod svr;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::design::DesignMatrix;
use crate::error::{DoeError, Result};

pub use gp::{GpConfig, GpModel, GridPoint, RationalQuadratic};
pub use svr::{SvrConfig, SvrModel, SvrTrace};

#[derive(Debug, Clone, PartialEq)]
pub struct TrainingSet {
    inputs: DesignMatrix,
    responses: Vec<f64>,
}

impl TrainingSet {
    pub fn new(inputs: DesignMatrix, responses: Vec<f64>) -> Result<Self> {
        if inputs.size() != responses.len() {
            return Err(DoeError::LengthMismatch {
                left: inputs.size(),
                right: responses.len(),
            });
        }
        if let Some(i) = responses.iter().position(|v| !v.is_finite()) {
            return Err(DoeError::Fit(format!("response {i} is not finite ({})", responses[i])));
        }
        Ok(Self { inputs, responses })
    }

    pub fn inputs(&self) -> &DesignMatrix {
        &self.inputs
    }

    pub fn responses(&self) -> &[f64] {
        &self.responses
    }

    pub fn len(&self) -> usize {
        self.responses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.responses.is_empty()
    }

    /// Rows sorted lexicographically by coordinates, then response.
    pub(crate) fn canonical(&self) -> TrainingSet {
        let d = self.inputs.dim();
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| {
            let (pa, pb) = (self.inputs.point(a), self.inputs.point(b));
            pa.iter()
                .zip(pb)
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| *o != Ordering::Equal)
                .unwrap_or_else(|| self.responses[a].total_cmp(&self.responses[b]))
        });
        let mut data = Vec::with_capacity(self.len() * d);
        for &i in &order {
            data.extend_from_slice(self.inputs.point(i));
        }
        TrainingSet {
            inputs: DesignMatrix::from_flat(d, data).expect("rows come from a valid design"),
            responses: order.iter().map(|&i| self.responses[i]).collect(),
        }
    }
}

/// Affine map to zero mean and unit (population) variance. Constant
/// responses keep a unit scale so they map to zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Standardizer {
    pub mean: f64,
    pub scale: f64,
}

impl Standardizer {
    pub fn fit(values: &[f64]) -> Self {
        let n = values.len().max(1) as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        let sd = var.sqrt();
        let scale = if sd > 1e-12 * mean.abs().max(1.0) { sd } else { 1.0 };
        Self { mean, scale }
    }

    #[inline]
    pub fn forward(&self, v: f64) -> f64 {
        (v - self.mean) / self.scale
    }

    #[inline]
    pub fn inverse(&self, z: f64) -> f64 {
        z * self.scale + self.mean
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MetamodelKind {
    Gp,
    Svr,
}

impl fmt::Display for MetamodelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MetamodelKind::Gp => "gp",
            MetamodelKind::Svr => "svr",
        })
    }
}

impl FromStr for MetamodelKind {
    type Err = DoeError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gp" | "kriging" => Ok(MetamodelKind::Gp),
            "svr" => Ok(MetamodelKind::Svr),
            other => Err(DoeError::InvalidArgument(format!(
                "unknown metamodel `{other}` (expected gp or svr)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetamodelConfig {
    pub kind: MetamodelKind,
    pub gp: GpConfig,
    pub svr: SvrConfig,
}

impl MetamodelConfig {
    pub fn new(kind: MetamodelKind) -> Self {
        Self {
            kind,
            gp: GpConfig::default(),
            svr: SvrConfig::default(),
        }
    }

    pub fn fit(&self, train: &TrainingSet) -> Result<Metamodel> {
        match self.kind {
            MetamodelKind::Gp => GpModel::fit(train, &self.gp).map(Metamodel::Gp),
            MetamodelKind::Svr => SvrModel::fit(train, &self.svr).map(Metamodel::Svr),
        }
    }

    /// One line per hyperparameter, as written to run metadata.
    pub fn describe(&self) -> Vec<String> {
        let list = |v: &[f64]| v.iter().map(f64::to_string).collect::<Vec<_>>().join(",");
        match self.kind {
            MetamodelKind::Gp => vec![
                "metamodel = gp (rational quadratic kernel)".into(),
                format!("gp_length_scales = {}", list(&self.gp.length_scales)),
                format!("gp_mixtures = {}", list(&self.gp.mixtures)),
                format!("gp_signal_variance = {}", self.gp.signal_variance),
                format!("gp_jitter = {:e}..{:e} (x10 per attempt)", self.gp.jitter_start, self.gp.jitter_max),
            ],
            MetamodelKind::Svr => vec![
                "metamodel = svr (rbf kernel)".into(),
                format!("svr_c = {}", self.svr.c),
                format!("svr_epsilon = {}", self.svr.epsilon),
                match self.svr.gamma {
                    Some(g) => format!("svr_gamma = {g}"),
                    None => "svr_gamma = 1/dim".into(),
                },
                format!("svr_tolerance = {}", self.svr.tolerance),
            ],
        }
    }
}

#[derive(Debug, Clone)]
pub enum Metamodel {
    Gp(GpModel),
    Svr(SvrModel),
}

impl Metamodel {
    pub fn predict(&self, x: &[f64]) -> f64 {
        match self {
            Metamodel::Gp(m) => m.predict(x),
            Metamodel::Svr(m) => m.predict(x),
        }
    }

    pub fn predict_many(&self, points: &DesignMatrix) -> Vec<f64> {
        points.points().map(|p| self.predict(p)).collect()
    }

    pub fn describe(&self) -> String {
        match self {
            Metamodel::Gp(m) => m.describe(),
            Metamodel::Svr(m) => m.describe(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn training_set_validation() {
        let x = DesignMatrix::from_rows(1, &[[0.1], [0.2]]).unwrap();
        assert!(matches!(
            TrainingSet::new(x.clone(), vec![1.0]),
            Err(DoeError::LengthMismatch { left: 2, right: 1 })
        ));
        assert!(TrainingSet::new(x, vec![1.0, f64::NAN]).is_err());
    }

    #[test]
    fn standardizer_round_trip_and_constant_guard() {
        let s = Standardizer::fit(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(s.mean, 2.5);
        assert!((s.scale - 1.25f64.sqrt()).abs() < 1e-15);
        assert!((s.inverse(s.forward(7.3)) - 7.3).abs() < 1e-12);
        let c = Standardizer::fit(&[5.0; 4]);
        assert_eq!(c.scale, 1.0);
        assert_eq!(c.forward(5.0), 0.0);
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("gp".parse::<MetamodelKind>().unwrap(), MetamodelKind::Gp);
        assert_eq!("svr".parse::<MetamodelKind>().unwrap(), MetamodelKind::Svr);
        assert!("rf".parse::<MetamodelKind>().is_err());
    }

    fn shuffled(t: &TrainingSet, perm: &[usize]) -> TrainingSet {
        let d = t.inputs().dim();
        let mut data = Vec::new();
        for &i in perm {
            data.extend_from_slice(t.inputs().point(i));
        }
        TrainingSet::new(
            DesignMatrix::from_flat(d, data).unwrap(),
            perm.iter().map(|&i| t.responses()[i]).collect(),
        )
        .unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn row_order_does_not_change_predictions(
            seed in 0u64..1000,
            perm in Just((0..9usize).collect::<Vec<_>>()).prop_shuffle(),
            probe in proptest::collection::vec(0.0f64..=1.0, 2),
        ) {
            let x = crate::oneshot::random_lhs(9, 2, seed).unwrap();
            let y: Vec<f64> = x.points().map(|p| (3.0 * p[0]).sin() + p[1] * p[1]).collect();
            let t = TrainingSet::new(x, y).unwrap();
            let p = shuffled(&t, &perm);
            for kind in [MetamodelKind::Gp, MetamodelKind::Svr] {
                let cfg = MetamodelConfig::new(kind);
                let a = cfg.fit(&t).unwrap().predict(&probe);
                let b = cfg.fit(&p).unwrap().predict(&probe);
                prop_assert!((a - b).abs() <= 1e-10, "{kind}: {a} vs {b}");
            }
        }
    }
}
