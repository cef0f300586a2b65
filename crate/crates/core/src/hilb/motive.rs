//! The formal decomposition `h(S^[n]) = ⊕_μ h(S^(μ))(l(μ) - n)`.

use std::fmt;

use serde::Serialize;

use super::partition::{multiplicities, orbit_representatives, SetPartition};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MotiveSummand {
    pub representative: SetPartition,
    pub shape: Vec<usize>,
    /// `l(μ) - n`, never positive.
    pub twist: i64,
}

impl MotiveSummand {
    pub fn length(&self) -> usize {
        self.shape.len()
    }

    /// `S^(μ)` as a product of symmetric powers, one per distinct part size.
    pub fn variety(&self) -> String {
        let mult = multiplicities(&self.shape);
        if mult.values().all(|&k| k == 1) {
            return match self.length() {
                1 => "S".to_string(),
                l => format!("S^{l}"),
            };
        }
        let factors: Vec<String> = mult
            .iter()
            .rev()
            .map(|(_, &k)| if k == 1 { "S".to_string() } else { format!("S^({k})") })
            .collect();
        factors.join(" × ")
    }

    fn shape_label(&self) -> String {
        let parts: Vec<String> = self.shape.iter().map(ToString::to_string).collect();
        format!("({})", parts.join(","))
    }
}

impl fmt::Display for MotiveSummand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h({})", self.variety())?;
        if self.twist != 0 {
            write!(f, "({})", self.twist)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormalMotive {
    pub n: usize,
    pub summands: Vec<MotiveSummand>,
}

impl FormalMotive {
    /// The projector onto `h^i(S^[n])` assembled from the summands, with the
    /// normalising constants `m_μ` kept symbolic.
    pub fn projector_formula(&self, i: usize) -> String {
        let terms: Vec<String> = self
            .summands
            .iter()
            .filter_map(|s| {
                let shift = 2 * (self.n - s.length());
                let k = i.checked_sub(shift)?;
                if k > 4 * s.length() {
                    return None;
                }
                let mu = s.shape_label();
                Some(format!(
                    "(1/m_{mu}) Γ̂_{mu} ∘ π^{k}_{{{}}} ∘ ᵗΓ̂_{mu}",
                    s.variety()
                ))
            })
            .collect();
        let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        format!("π^{i}_{{S^[{}]}} = {rhs}", self.n)
    }
}

impl fmt::Display for FormalMotive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.summands.iter().map(ToString::to_string).collect();
        write!(f, "h(S^[{}]) = {}", self.n, parts.join(" ⊕ "))
    }
}

/// One summand per `S_n`-orbit of set partitions of `{1..n}`.
pub fn dcm_decomposition(n: usize) -> FormalMotive {
    let summands = orbit_representatives(n)
        .into_iter()
        .map(|mu| {
            let shape = mu.shape();
            let twist = mu.len() as i64 - n as i64;
            MotiveSummand {
                representative: mu,
                shape,
                twist,
            }
        })
        .collect();
    FormalMotive { n, summands }
}
