//! Parameter bundles, dimensionless groups and the scheme taxonomy.
//!
//! Every formula in the crate depends on the oscillator only through
//! ω₀ = √(k/m), the rest energy mc², the quantum ħ and the dimensionless
//! energy ε = Ẽ/mc². The default unit system is m = k = ħ = 1 with the
//! speed of light left free.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Above this ε the first-order relativistic expansions are flagged.
pub const WEAK_EPSILON_WARN: f64 = 0.1;

/// At and above this ε the branch points of the weak-relativistic momentum
/// reach the real axis and the weak-relativistic expansions are rejected.
pub const WEAK_EPSILON_LIMIT: f64 = 0.5;

/// Mass, spring constant, speed of light and quantum of action.
///
/// `hbar = 0` is accepted and expresses the classical limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorParams {
    mass: f64,
    stiffness: f64,
    light_speed: f64,
    hbar: f64,
    omega0: f64,
}

impl OscillatorParams {
    pub fn new(mass: f64, stiffness: f64, light_speed: f64, hbar: f64) -> Result<Self> {
        for (name, value) in [("m", mass), ("k", stiffness), ("c", light_speed)] {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::NonPositiveParameter { name, value });
            }
        }
        if !hbar.is_finite() || hbar < 0.0 {
            return Err(Error::NonPositiveParameter {
                name: "hbar",
                value: hbar,
            });
        }
        let omega0 = (stiffness / mass).sqrt();
        if !omega0.is_finite() || omega0 <= 0.0 {
            return Err(Error::NonPositiveParameter {
                name: "omega0",
                value: omega0,
            });
        }
        Ok(Self {
            mass,
            stiffness,
            light_speed,
            hbar,
            omega0,
        })
    }

    /// m = k = ħ = 1 with the given speed of light.
    pub fn natural(light_speed: f64) -> Result<Self> {
        Self::new(1.0, 1.0, light_speed, 1.0)
    }

    /// Natural units with c chosen so that ħω₀/mc² equals `ratio`.
    pub fn with_level_ratio(ratio: f64) -> Result<Self> {
        if !ratio.is_finite() || ratio <= 0.0 {
            return Err(Error::NonPositiveParameter {
                name: "hbar*omega0/mc^2",
                value: ratio,
            });
        }
        Self::natural(ratio.recip().sqrt())
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn stiffness(&self) -> f64 {
        self.stiffness
    }

    pub fn light_speed(&self) -> f64 {
        self.light_speed
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    /// mc²
    pub fn rest_energy(&self) -> f64 {
        self.mass * self.light_speed * self.light_speed
    }

    /// ħω₀, the non-relativistic level spacing.
    pub fn quantum_energy(&self) -> f64 {
        self.hbar * self.omega0
    }

    /// ħω₀/mc², the dimensionless level-spacing parameter.
    pub fn level_ratio(&self) -> f64 {
        self.quantum_energy() / self.rest_energy()
    }

    /// √(mk) = mω₀
    pub fn sqrt_mk(&self) -> f64 {
        (self.mass * self.stiffness).sqrt()
    }

    pub fn with_hbar(&self, hbar: f64) -> Result<Self> {
        Self::new(self.mass, self.stiffness, self.light_speed, hbar)
    }

    pub fn with_light_speed(&self, light_speed: f64) -> Result<Self> {
        Self::new(self.mass, self.stiffness, light_speed, self.hbar)
    }

    /// Speed of light that puts the energy `e_tilde` at the given ε.
    pub fn light_speed_for_epsilon(&self, e_tilde: f64, epsilon: f64) -> Result<f64> {
        if !(epsilon > 0.0) || !(e_tilde > 0.0) {
            return Err(Error::ParameterOutOfRange(format!(
                "need positive energy and epsilon, got E = {e_tilde}, eps = {epsilon}"
            )));
        }
        Ok((e_tilde / (epsilon * self.mass)).sqrt())
    }
}

/// How far an energy sits into the relativistic regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// ε ≤ 0.1
    Weak,
    /// 0.1 < ε < ½: expansions still defined but their error is no longer small.
    Marginal,
    /// ε ≥ ½
    Beyond,
}

/// Mechanical energy in excess of the rest energy together with ε = Ẽ/mc².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyPoint {
    e_tilde: f64,
    epsilon: f64,
}

impl EnergyPoint {
    pub fn new(params: &OscillatorParams, e_tilde: f64) -> Result<Self> {
        if !e_tilde.is_finite() || e_tilde <= 0.0 {
            return Err(Error::NonPositiveEnergy(e_tilde));
        }
        Ok(Self {
            e_tilde,
            epsilon: e_tilde / params.rest_energy(),
        })
    }

    pub fn e_tilde(&self) -> f64 {
        self.e_tilde
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn regime(&self) -> Regime {
        if self.epsilon >= WEAK_EPSILON_LIMIT {
            Regime::Beyond
        } else if self.epsilon > WEAK_EPSILON_WARN {
            Regime::Marginal
        } else {
            Regime::Weak
        }
    }

    /// True whenever the soft ε > 0.1 warning applies (including ε ≥ ½).
    pub fn warn(&self) -> bool {
        self.regime() != Regime::Weak
    }

    /// Rejects ε ≥ ½ for the weak-relativistic expansions.
    pub fn require_weak(&self) -> Result<()> {
        if self.epsilon >= WEAK_EPSILON_LIMIT {
            Err(Error::EpsilonOutOfRange {
                epsilon: self.epsilon,
                limit: WEAK_EPSILON_LIMIT,
            })
        } else {
            Ok(())
        }
    }
}

/// Convenience wrapper for [`EnergyPoint::new`].
pub fn energy_point(params: &OscillatorParams, e_tilde: f64) -> Result<EnergyPoint> {
    EnergyPoint::new(params, e_tilde)
}

/// Convenience wrapper for [`OscillatorParams::new`].
pub fn make_params(mass: f64, stiffness: f64, light_speed: f64, hbar: f64) -> Result<OscillatorParams> {
    OscillatorParams::new(mass, stiffness, light_speed, hbar)
}

/// Which construction produced an action value or an energy level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchemeTag {
    ClassicalSho,
    ClassicalWrPdx,
    ClassicalWrXdp,
    ClassicalFullRelPdx,
    ClassicalFullRelXdp,
    QuantumShoPdx,
    QuantumShoXdp,
    QuantumWrPdx,
    QuantumWrXdp,
    QuantumAhoPdx,
    JwkbWr,
    RayleighSchrodinger,
}

impl SchemeTag {
    pub const ALL: [SchemeTag; 12] = [
        SchemeTag::ClassicalSho,
        SchemeTag::ClassicalWrPdx,
        SchemeTag::ClassicalWrXdp,
        SchemeTag::ClassicalFullRelPdx,
        SchemeTag::ClassicalFullRelXdp,
        SchemeTag::QuantumShoPdx,
        SchemeTag::QuantumShoXdp,
        SchemeTag::QuantumWrPdx,
        SchemeTag::QuantumWrXdp,
        SchemeTag::QuantumAhoPdx,
        SchemeTag::JwkbWr,
        SchemeTag::RayleighSchrodinger,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SchemeTag::ClassicalSho => "ClassicalSHO",
            SchemeTag::ClassicalWrPdx => "ClassicalWR_pdx",
            SchemeTag::ClassicalWrXdp => "ClassicalWR_xdp",
            SchemeTag::ClassicalFullRelPdx => "ClassicalFullRel_pdx",
            SchemeTag::ClassicalFullRelXdp => "ClassicalFullRel_xdp",
            SchemeTag::QuantumShoPdx => "QuantumSHO_pdx",
            SchemeTag::QuantumShoXdp => "QuantumSHO_xdp",
            SchemeTag::QuantumWrPdx => "QuantumWR_pdx",
            SchemeTag::QuantumWrXdp => "QuantumWR_xdp",
            SchemeTag::QuantumAhoPdx => "QuantumAHO_pdx",
            SchemeTag::JwkbWr => "JWKB_WR",
            SchemeTag::RayleighSchrodinger => "RayleighSchrodinger",
        }
    }

    /// The closed form each scheme evaluates, in plain text. ε = Ẽ/mc²,
    /// r = ħω₀/mc², q = ε/(2+ε), g = (δ/k²)ħω₀.
    pub fn formula(self) -> &'static str {
        match self {
            SchemeTag::ClassicalSho => "J = E/w0",
            SchemeTag::ClassicalWrPdx => "J = (E/w0)(1 + 3eps/16)",
            SchemeTag::ClassicalWrXdp => {
                "J = (E/w0)[2/(1+sqrt(1-2eps))]^(1/2) [1 - (1/8)(p2/p4)^2 - ...]"
            }
            SchemeTag::ClassicalFullRelPdx => {
                "J = (E/w0) sqrt(1+eps/2) [1 - q/8 - q^2/64 - ...]"
            }
            SchemeTag::ClassicalFullRelXdp => {
                "J = (E/w0) sqrt(1+eps/2) [1 - eps/16 + 7eps^2/256 + eps^3/128 ...]"
            }
            SchemeTag::QuantumShoPdx | SchemeTag::QuantumShoXdp => {
                "J = E/w0 - hbar/2;  E_n = (n+1/2) hbar w0"
            }
            SchemeTag::QuantumWrPdx => {
                "E_n = [(n+1/2) - (3/16){(n+5/3)^2 - 25/9} r] hbar w0"
            }
            SchemeTag::QuantumWrXdp => "E_n = [(n+1/2) - (3/16) r {(n+1/2)^2 + 4}] hbar w0",
            SchemeTag::QuantumAhoPdx => {
                "E_n = hbar w0 [N + (3/2) g N^2],  N = n + 1/2 + (3/8) g"
            }
            SchemeTag::JwkbWr => "(E/w0)(1 + 3eps/16) = (n+1/2) hbar",
            SchemeTag::RayleighSchrodinger => {
                "dE_n = -(3/16) hbar w0 [(n+1/2)^2 + 1/4] r"
            }
        }
    }

    /// Schemes that yield an energy spectrum.
    pub fn has_spectrum(self) -> bool {
        matches!(
            self,
            SchemeTag::QuantumShoPdx
                | SchemeTag::QuantumShoXdp
                | SchemeTag::QuantumWrPdx
                | SchemeTag::QuantumWrXdp
                | SchemeTag::QuantumAhoPdx
                | SchemeTag::JwkbWr
                | SchemeTag::RayleighSchrodinger
        )
    }
}

impl fmt::Display for SchemeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchemeTag {
    type Err = Error;

    /// Accepts the canonical names and the short CLI spellings
    /// (`sho`, `wr-pdx`, `wr-xdp`, `aho`, `jwkb`, `rs`, ...).
    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        let tag = match key.as_str() {
            "classicalsho" | "classical-sho" => SchemeTag::ClassicalSho,
            "classicalwr-pdx" | "classical-wr-pdx" => SchemeTag::ClassicalWrPdx,
            "classicalwr-xdp" | "classical-wr-xdp" => SchemeTag::ClassicalWrXdp,
            "classicalfullrel-pdx" | "fullrel-pdx" => SchemeTag::ClassicalFullRelPdx,
            "classicalfullrel-xdp" | "fullrel-xdp" => SchemeTag::ClassicalFullRelXdp,
            "quantumsho-pdx" | "sho" | "sho-pdx" => SchemeTag::QuantumShoPdx,
            "quantumsho-xdp" | "sho-xdp" => SchemeTag::QuantumShoXdp,
            "quantumwr-pdx" | "wr-pdx" => SchemeTag::QuantumWrPdx,
            "quantumwr-xdp" | "wr-xdp" => SchemeTag::QuantumWrXdp,
            "quantumaho-pdx" | "aho" => SchemeTag::QuantumAhoPdx,
            "jwkb-wr" | "jwkb" => SchemeTag::JwkbWr,
            "rayleighschrodinger" | "rs" => SchemeTag::RayleighSchrodinger,
            _ => return Err(Error::UnknownForm(s.to_string())),
        };
        Ok(tag)
    }
}
