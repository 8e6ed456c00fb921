//! Parameter bundles for the bound operations.
//!
//! Every field is a ball so that published table entries, which are decimal
//! or rational literals, enter the formulas without a lossy detour through
//! `f64`. Constructors reject values that would make a formula meaningless
//! (poles, logs of nonpositive numbers); soft validity windows are reported
//! as condition margins by the operations instead.

use crate::numerics::CertifiedReal;
use crate::{Error, Result};

fn gate(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Domain(what.to_string()))
    }
}

/// Knobs of the general σ-interpolated strip estimate.
#[derive(Debug, Clone)]
pub struct KParams {
    pub k1: CertifiedReal,
    pub k2: CertifiedReal,
    pub k3: CertifiedReal,
    pub k4: CertifiedReal,
    pub q0: CertifiedReal,
    pub delta_r: CertifiedReal,
}

impl KParams {
    pub fn new(
        k1: CertifiedReal,
        k2: CertifiedReal,
        k3: CertifiedReal,
        k4: CertifiedReal,
        q0: CertifiedReal,
        delta_r: CertifiedReal,
    ) -> Result<Self> {
        gate(k1.mid_f64() > 0.0, "k1 must be positive")?;
        gate(k2.mid_f64() > 0.0, "k2 must be positive")?;
        gate(k3.mid_f64() >= 0.0, "k3 must be nonnegative")?;
        gate(k4.mid_f64() > 0.0, "k4 must be positive")?;
        gate(q0.mid_f64() > 0.5, "Q0 must exceed 1/2")?;
        gate(delta_r.mid_f64() > 0.0, "delta_r must be positive")?;
        Ok(Self {
            k1,
            k2,
            k3,
            k4,
            q0,
            delta_r,
        })
    }
}

/// Parameters of the conditional (verified-zeros) log-derivative constant.
/// `t_hi` is the verification horizon T; the resulting bound covers
/// t in [t0, T - 1/2].
#[derive(Debug, Clone)]
pub struct RhParams {
    pub sigma0: CertifiedReal,
    pub eps: CertifiedReal,
    pub sigma1: CertifiedReal,
    pub eta: CertifiedReal,
    pub t0: CertifiedReal,
    pub t_hi: CertifiedReal,
}

impl RhParams {
    pub fn new(
        sigma0: CertifiedReal,
        eps: CertifiedReal,
        sigma1: CertifiedReal,
        eta: CertifiedReal,
        t0: CertifiedReal,
        t_hi: CertifiedReal,
    ) -> Result<Self> {
        gate(sigma0.mid_f64() > 0.5, "sigma0 must exceed 1/2")?;
        gate(eps.mid_f64() > 0.0, "eps must be positive")?;
        gate(sigma1.mid_f64() > 1.0, "sigma1 must exceed 1")?;
        gate(eta.mid_f64() > 0.0, "eta must be positive")?;
        gate(t0.mid_f64() >= 3.0, "t0 must be at least 3")?;
        gate(t_hi.mid_f64() > t0.mid_f64(), "horizon must exceed t0")?;
        Ok(Self {
            sigma0,
            eps,
            sigma1,
            eta,
            t0,
            t_hi,
        })
    }

    /// The standard horizon: the height to which the zeros have been
    /// verified on the critical line.
    pub fn with_default_horizon(
        sigma0: CertifiedReal,
        eps: CertifiedReal,
        sigma1: CertifiedReal,
        eta: CertifiedReal,
        t0: CertifiedReal,
    ) -> Result<Self> {
        let prec = sigma0.prec();
        Self::new(
            sigma0,
            eps,
            sigma1,
            eta,
            t0,
            crate::numerics::Constants::h0_ball(prec),
        )
    }
}

/// Parameters of the zero-free-strip log-derivative constant.
#[derive(Debug, Clone)]
pub struct HParams {
    pub d: CertifiedReal,
    pub beta: CertifiedReal,
    pub eps1: CertifiedReal,
    pub sigma1: CertifiedReal,
    pub eta: CertifiedReal,
    pub t0: CertifiedReal,
}

impl HParams {
    pub fn new(
        d: CertifiedReal,
        beta: CertifiedReal,
        eps1: CertifiedReal,
        sigma1: CertifiedReal,
        eta: CertifiedReal,
        t0: CertifiedReal,
    ) -> Result<Self> {
        gate(d.mid_f64() > 0.0, "d must be positive")?;
        gate(
            beta.mid_f64() > 0.0 && beta.mid_f64() < 1.0,
            "beta must lie in (0, 1)",
        )?;
        gate(eps1.mid_f64() > 0.0, "eps1 must be positive")?;
        gate(sigma1.mid_f64() > 1.0, "sigma1 must exceed 1")?;
        gate(eta.mid_f64() > 0.0, "eta must be positive")?;
        gate(t0.mid_f64() > 1.0, "t0 must exceed 1")?;
        Ok(Self {
            d,
            beta,
            eps1,
            sigma1,
            eta,
            t0,
        })
    }
}

/// An ascending ladder of (strip width, constant) pairs used to telescope
/// a product of strip estimates across widening strips.
#[derive(Debug, Clone)]
pub struct LadderTable {
    entries: Vec<(CertifiedReal, CertifiedReal)>,
}

impl LadderTable {
    pub fn new(entries: Vec<(CertifiedReal, CertifiedReal)>) -> Result<Self> {
        let mut prev = f64::NEG_INFINITY;
        for (w, q) in &entries {
            let wm = w.mid_f64();
            if !(wm > 0.0) || !(q.mid_f64() > 0.0) {
                return Err(Error::LadderOrder(
                    "ladder entries must have positive width and constant".into(),
                ));
            }
            if wm <= prev {
                return Err(Error::LadderOrder(format!(
                    "ladder widths must be strictly increasing (saw {wm} after {prev})"
                )));
            }
            prev = wm;
        }
        Ok(Self { entries })
    }

    pub fn empty() -> Self {
        Self {
            entries: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(CertifiedReal, CertifiedReal)] {
        &self.entries
    }

    /// Width of the narrowest (first) strip, which bounds the validity
    /// region of anything telescoped through the ladder.
    pub fn first_width(&self) -> Option<&CertifiedReal> {
        self.entries.first().map(|(w, _)| w)
    }
}

/// Parameters of the reciprocal estimates. With `asymptotic` off the
/// target is the log t coefficient; on, the coefficient of the
/// slower-growing composite power.
#[derive(Debug, Clone)]
pub struct ReciprocalParams {
    pub d1: CertifiedReal,
    pub sigma1: CertifiedReal,
    pub eta: CertifiedReal,
    pub t0: CertifiedReal,
    pub ladder: LadderTable,
    pub asymptotic: bool,
}

impl ReciprocalParams {
    pub fn new(
        d1: CertifiedReal,
        sigma1: CertifiedReal,
        eta: CertifiedReal,
        t0: CertifiedReal,
        ladder: LadderTable,
        asymptotic: bool,
    ) -> Result<Self> {
        gate(d1.mid_f64() > 0.0, "d1 must be positive")?;
        gate(sigma1.mid_f64() > 1.0, "sigma1 must exceed 1")?;
        gate(eta.mid_f64() > 0.0, "eta must be positive")?;
        gate(t0.mid_f64() >= 13.0, "t0 must be at least 13")?;
        Ok(Self {
            d1,
            sigma1,
            eta,
            t0,
            ladder,
            asymptotic,
        })
    }
}
