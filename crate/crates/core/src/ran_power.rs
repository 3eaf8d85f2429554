//! Base-station and C-RAN power aggregation.
//!
//! A base station draws BBU + RU + PA power through a power system whose
//! active cooling, mains supply and DC-DC stages each lose a fixed
//! fraction, so the wall power is the component sum divided by
//! `(1 - σ_ac)(1 - σ_ms)(1 - σ_dc)`. Annealer refrigeration has its own
//! cooling plant and is added after the loss denominator.
//!
//! In a C-RAN the baseband pool and every remote radio head carry their
//! own power system, and each RRH adds a fronthaul link whose power is
//! linear in the carried load.

use serde::{Deserialize, Serialize};

use crate::error::{fraction_below_one, non_negative, positive, ModelError, Result};
use crate::workload::TaskMap;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerSystemLosses {
    pub sigma_ac: f64,
    pub sigma_ms: f64,
    pub sigma_dc: f64,
}

impl Default for PowerSystemLosses {
    fn default() -> Self {
        PowerSystemLosses {
            sigma_ac: 0.09,
            sigma_ms: 0.07,
            sigma_dc: 0.06,
        }
    }
}

impl PowerSystemLosses {
    pub const NONE: PowerSystemLosses = PowerSystemLosses {
        sigma_ac: 0.0,
        sigma_ms: 0.0,
        sigma_dc: 0.0,
    };

    pub fn validate(&self) -> Result<()> {
        fraction_below_one("sigma_ac", self.sigma_ac)?;
        fraction_below_one("sigma_ms", self.sigma_ms)?;
        fraction_below_one("sigma_dc", self.sigma_dc)?;
        Ok(())
    }

    /// Fraction of wall power that reaches the load.
    pub fn efficiency(&self) -> f64 {
        (1.0 - self.sigma_ac) * (1.0 - self.sigma_ms) * (1.0 - self.sigma_dc)
    }

    /// Wall power needed to deliver `load` watts.
    pub fn gross_up(&self, load: f64) -> f64 {
        load / self.efficiency()
    }
}

/// Per-antenna radio constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadioConstants {
    /// RU power per transceiver chain.
    pub ru_watts_per_chain: f64,
    /// Power per PA including feeder; one PA per antenna.
    pub pa_watts: f64,
}

impl Default for RadioConstants {
    fn default() -> Self {
        RadioConstants {
            ru_watts_per_chain: 10.8,
            pa_watts: 102.6,
        }
    }
}

impl RadioConstants {
    pub fn validate(&self) -> Result<()> {
        non_negative("ru_watts_per_chain", self.ru_watts_per_chain)?;
        non_negative("pa_watts", self.pa_watts)?;
        Ok(())
    }
}

/// BBU power split by task.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct BbuPower {
    /// Dynamic watts per task.
    pub per_task: TaskMap<f64>,
    pub leakage: f64,
    /// Draw that bypasses the power-system losses (annealer refrigeration).
    pub refrigeration: f64,
}

impl BbuPower {
    /// A BBU with no task breakdown, e.g. a measured figure.
    pub fn from_watts(watts: f64) -> Self {
        BbuPower {
            leakage: watts,
            ..Default::default()
        }
    }

    /// Watts that pass through the power system.
    pub fn conditioned(&self) -> f64 {
        self.per_task.sum() + self.leakage
    }

    pub fn total(&self) -> f64 {
        self.conditioned() + self.refrigeration
    }

    pub fn merged(&self, other: &BbuPower) -> BbuPower {
        BbuPower {
            per_task: self.per_task.map(|t, w| w + other.per_task[t]),
            leakage: self.leakage + other.leakage,
            refrigeration: self.refrigeration + other.refrigeration,
        }
    }

    fn validate(&self) -> Result<()> {
        for (_, w) in self.per_task.iter() {
            non_negative("bbu task power", w)?;
        }
        non_negative("bbu leakage", self.leakage)?;
        non_negative("refrigeration", self.refrigeration)?;
        Ok(())
    }
}

/// Per-component watts of a base station or a C-RAN.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerBreakdown {
    pub bbu: BbuPower,
    pub ru: f64,
    pub pa: f64,
    pub power_system_overhead: f64,
    pub fronthaul: f64,
    pub total: f64,
}

impl PowerBreakdown {
    pub fn bbu_total(&self) -> f64 {
        self.bbu.total()
    }

    /// Component sum; equals `total` up to rounding.
    pub fn component_sum(&self) -> f64 {
        self.bbu.total() + self.ru + self.pa + self.power_system_overhead + self.fronthaul
    }
}

/// Power of one base station with `antennas` transceiver chains and PAs.
pub fn bs_power(
    bbu: &BbuPower,
    antennas: u32,
    radio: &RadioConstants,
    losses: &PowerSystemLosses,
) -> Result<PowerBreakdown> {
    if antennas == 0 {
        return Err(ModelError::range("antennas", ">= 1", 0.0));
    }
    losses.validate()?;
    radio.validate()?;
    bbu.validate()?;
    let ru = antennas as f64 * radio.ru_watts_per_chain;
    let pa = antennas as f64 * radio.pa_watts;
    let load = bbu.conditioned() + ru + pa;
    let gross = losses.gross_up(load);
    Ok(PowerBreakdown {
        bbu: *bbu,
        ru,
        pa,
        power_system_overhead: gross - load,
        fronthaul: 0.0,
        total: gross + bbu.refrigeration,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FronthaulLink {
    pub capacity_bps: f64,
    pub load_bps: f64,
    /// Power drawn at full capacity.
    pub p_max_w: f64,
}

impl FronthaulLink {
    /// Fiber link of 500 Mb/s drawing 37 W at capacity.
    pub const FIBER_500M: FronthaulLink = FronthaulLink {
        capacity_bps: 500e6,
        load_bps: 500e6,
        p_max_w: 37.0,
    };

    /// A fiber link of `capacity_bps`, fully loaded, with the same W per bit/s
    /// as [`FronthaulLink::FIBER_500M`].
    pub fn fiber_at_capacity(capacity_bps: f64) -> Self {
        let rho = Self::FIBER_500M.p_max_w / Self::FIBER_500M.capacity_bps;
        FronthaulLink {
            capacity_bps,
            load_bps: capacity_bps,
            p_max_w: rho * capacity_bps,
        }
    }

    pub fn with_load(self, load_bps: f64) -> Self {
        FronthaulLink { load_bps, ..self }
    }

    /// Watts per bit/s.
    pub fn rho(&self) -> f64 {
        self.p_max_w / self.capacity_bps
    }

    pub fn validate(&self) -> Result<()> {
        positive("capacity_bps", self.capacity_bps)?;
        positive("p_max_w", self.p_max_w)?;
        non_negative("load_bps", self.load_bps)?;
        if self.load_bps > self.capacity_bps {
            return Err(ModelError::FronthaulOverload {
                load: self.load_bps,
                capacity: self.capacity_bps,
            });
        }
        Ok(())
    }
}

pub fn fronthaul_power(link: &FronthaulLink) -> Result<f64> {
    link.validate()?;
    Ok(link.rho() * link.load_bps)
}

/// One remote radio head of a C-RAN.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RrhSite {
    /// Baseband processing kept at the site (low Layer 1).
    pub processing: BbuPower,
    pub ru: f64,
    pub pa: f64,
    pub losses: PowerSystemLosses,
    pub link: FronthaulLink,
}

impl RrhSite {
    pub fn radio_head(
        processing: BbuPower,
        antennas: u32,
        radio: &RadioConstants,
        losses: PowerSystemLosses,
        link: FronthaulLink,
    ) -> Self {
        RrhSite {
            processing,
            ru: antennas as f64 * radio.ru_watts_per_chain,
            pa: antennas as f64 * radio.pa_watts,
            losses,
            link,
        }
    }

    /// A site that draws a fixed `watts` and nothing else.
    pub fn fixed(watts: f64, losses: PowerSystemLosses, link: FronthaulLink) -> Self {
        RrhSite {
            processing: BbuPower::from_watts(watts),
            ru: 0.0,
            pa: 0.0,
            losses,
            link,
        }
    }
}

/// C-RAN power: the shared pool plus every RRH with its fronthaul link.
pub fn cran_power(
    pool: &BbuPower,
    pool_losses: &PowerSystemLosses,
    rrhs: &[RrhSite],
) -> Result<PowerBreakdown> {
    if rrhs.is_empty() {
        return Err(ModelError::Empty("rrh list"));
    }
    pool_losses.validate()?;
    pool.validate()?;

    let pool_load = pool.conditioned();
    let pool_gross = pool_losses.gross_up(pool_load);
    let mut out = PowerBreakdown {
        bbu: *pool,
        ru: 0.0,
        pa: 0.0,
        power_system_overhead: pool_gross - pool_load,
        fronthaul: 0.0,
        total: pool_gross + pool.refrigeration,
    };

    for site in rrhs {
        site.losses.validate()?;
        site.processing.validate()?;
        non_negative("rrh ru", site.ru)?;
        non_negative("rrh pa", site.pa)?;
        let fh = fronthaul_power(&site.link)?;
        let load = site.processing.conditioned() + site.ru + site.pa;
        let gross = site.losses.gross_up(load);
        out.bbu = out.bbu.merged(&site.processing);
        out.ru += site.ru;
        out.pa += site.pa;
        out.power_system_overhead += gross - load;
        out.fronthaul += fh;
        out.total += gross + site.processing.refrigeration + fh;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn radio_only_without_losses() {
        let b = bs_power(
            &BbuPower::default(),
            1,
            &RadioConstants::default(),
            &PowerSystemLosses::NONE,
        )
        .unwrap();
        assert_relative_eq!(b.total, 113.4, max_relative = 1e-12);
        assert_eq!(b.power_system_overhead, 0.0);
    }

    #[test]
    fn zero_losses_sum_components() {
        let bbu = BbuPower::from_watts(1234.5);
        let b = bs_power(&bbu, 4, &RadioConstants::default(), &PowerSystemLosses::NONE).unwrap();
        assert_relative_eq!(b.total, 1234.5 + 4.0 * 10.8 + 4.0 * 102.6, max_relative = 1e-12);
    }

    #[test]
    fn default_losses() {
        let l = PowerSystemLosses::default();
        assert_relative_eq!(l.efficiency(), 0.91 * 0.93 * 0.94, max_relative = 1e-15);
        let b = bs_power(&BbuPower::from_watts(1000.0), 2, &RadioConstants::default(), &l).unwrap();
        assert_relative_eq!(b.total * l.efficiency(), 1000.0 + 2.0 * 113.4, max_relative = 1e-12);
        assert_relative_eq!(b.component_sum(), b.total, max_relative = 1e-12);
    }

    #[test]
    fn refrigeration_bypasses_losses() {
        let bbu = BbuPower {
            refrigeration: 25_000.0,
            ..BbuPower::from_watts(1000.0)
        };
        let l = PowerSystemLosses::default();
        let b = bs_power(&bbu, 1, &RadioConstants::default(), &l).unwrap();
        assert_relative_eq!(b.total, (1000.0 + 113.4) / l.efficiency() + 25_000.0, max_relative = 1e-12);
    }

    #[test]
    fn rejects_bad_inputs() {
        let r = RadioConstants::default();
        let bad = PowerSystemLosses {
            sigma_ac: 1.0,
            ..Default::default()
        };
        assert!(bs_power(&BbuPower::default(), 1, &r, &bad).is_err());
        assert!(bs_power(&BbuPower::default(), 0, &r, &Default::default()).is_err());
        assert!(bs_power(&BbuPower::from_watts(-1.0), 1, &r, &Default::default()).is_err());
    }

    #[test]
    fn fronthaul() {
        assert_relative_eq!(fronthaul_power(&FronthaulLink::FIBER_500M).unwrap(), 37.0, max_relative = 1e-12);
        assert_eq!(fronthaul_power(&FronthaulLink::FIBER_500M.with_load(0.0)).unwrap(), 0.0);
        // 37 W / 500 Mb/s * 100 Gb/s
        assert_relative_eq!(
            fronthaul_power(&FronthaulLink::fiber_at_capacity(100e9)).unwrap(),
            7400.0,
            max_relative = 1e-12
        );
        let over = FronthaulLink::FIBER_500M.with_load(600e6);
        assert!(matches!(
            fronthaul_power(&over),
            Err(ModelError::FronthaulOverload { .. })
        ));
    }

    #[test]
    fn cran_all_zero() {
        let site = RrhSite::fixed(0.0, PowerSystemLosses::default(), FronthaulLink::FIBER_500M.with_load(0.0));
        let b = cran_power(&BbuPower::default(), &PowerSystemLosses::default(), &[site]).unwrap();
        assert_eq!(b.total, 0.0);
        assert!(cran_power(&BbuPower::default(), &PowerSystemLosses::default(), &[]).is_err());
    }

    #[test]
    fn cran_is_pool_plus_sites() {
        let l = PowerSystemLosses::default();
        let link = FronthaulLink::fiber_at_capacity(10e9);
        let sites: Vec<_> = [100.0, 250.0, 75.0]
            .iter()
            .map(|&w| RrhSite::radio_head(BbuPower::from_watts(w), 8, &RadioConstants::default(), l, link))
            .collect();
        let pool = BbuPower::from_watts(5000.0);
        let all = cran_power(&pool, &l, &sites).unwrap();
        let pool_only = l.gross_up(5000.0);
        let singles: f64 = sites
            .iter()
            .map(|s| cran_power(&BbuPower::default(), &l, std::slice::from_ref(s)).unwrap().total)
            .sum();
        assert_relative_eq!(all.total, pool_only + singles, max_relative = 1e-12);
        assert_relative_eq!(all.component_sum(), all.total, max_relative = 1e-12);
        assert_relative_eq!(all.fronthaul, 3.0 * 740.0, max_relative = 1e-12);
    }
}
