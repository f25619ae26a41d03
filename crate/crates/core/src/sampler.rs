//! Names for every design method, shared by the experiment runner and the
//! command line.

use std::fmt;
use std::str::FromStr;

use crate::adaptive::AdaptiveMethod;
use crate::error::{DoeError, Result};
use crate::lowdiscrepancy::SequenceKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    RandomLhs,
    SfLhs,
    Preoptimized,
    Halton,
    Sobol,
    Mip,
    Mipt,
    FpPlhs,
    MqPlhs,
}

/// How a method builds designs of growing size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodFamily {
    /// A fresh design for every size.
    OneShot,
    /// Prefixes of one infinite sequence.
    Sequence(SequenceKind),
    /// One point at a time on top of an initial design.
    Adaptive(AdaptiveMethod),
}

impl Method {
    pub const ALL: [Method; 9] = [
        Method::RandomLhs,
        Method::SfLhs,
        Method::Preoptimized,
        Method::Halton,
        Method::Sobol,
        Method::Mip,
        Method::Mipt,
        Method::FpPlhs,
        Method::MqPlhs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::RandomLhs => "lhs",
            Method::SfLhs => "sflhs",
            Method::Preoptimized => "preoptimized",
            Method::Halton => "halton",
            Method::Sobol => "sobol",
            Method::Mip => "mip",
            Method::Mipt => "mipt",
            Method::FpPlhs => "fpplhs",
            Method::MqPlhs => "mqplhs",
        }
    }

    pub fn family(self) -> MethodFamily {
        match self {
            Method::RandomLhs | Method::SfLhs | Method::Preoptimized => MethodFamily::OneShot,
            Method::Halton => MethodFamily::Sequence(SequenceKind::Halton),
            Method::Sobol => MethodFamily::Sequence(SequenceKind::Sobol),
            Method::Mip => MethodFamily::Adaptive(AdaptiveMethod::Mip),
            Method::Mipt => MethodFamily::Adaptive(AdaptiveMethod::Mipt),
            Method::FpPlhs => MethodFamily::Adaptive(AdaptiveMethod::FpPlhs),
            Method::MqPlhs => MethodFamily::Adaptive(AdaptiveMethod::MqPlhs),
        }
    }

    /// Stable numeric tag used when deriving per-method seeds.
    pub(crate) fn code(self) -> u64 {
        Method::ALL.iter().position(|m| *m == self).expect("listed") as u64
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = DoeError;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        let alias = match key.as_str() {
            "random-lhs" | "random_lhs" => Some(Method::RandomLhs),
            "sflhs-baseline" | "sf-lhs" => Some(Method::SfLhs),
            "mc-intersite-proj" => Some(Method::Mip),
            "mc-intersite-proj-th" => Some(Method::Mipt),
            _ => None,
        };
        alias
            .or_else(|| Method::ALL.into_iter().find(|m| m.name() == key))
            .ok_or_else(|| {
                let names: Vec<&str> = Method::ALL.iter().map(|m| m.name()).collect();
                DoeError::InvalidArgument(format!("unknown method `{s}` (expected one of {})", names.join(", ")))
            })
    }
}
