//! Report builders behind each subcommand.

use std::f64::consts::PI;

use actionvar_core::classical::{
    action_fullrel, action_quadrature, action_wr_pdx, action_wr_xdp, action_wr_xdp_first_order, frequency_from_action,
    frequency_wr,
};
use actionvar_core::oracles::{diagonalize_levels, jwkb_levels_wr, rk4_period, rs_shift_p4, HamiltonianSpec};
use actionvar_core::quantum::{
    correction_wr_pdx, correction_wr_xdp, eigenvalues_aho, eigenvalues_sho, eigenvalues_wr_pdx, eigenvalues_wr_xdp,
    Form, SpectrumEntry,
};
use actionvar_core::{EnergyPoint, OscillatorParams, SchemeTag};

use crate::config::RunConfig;
use crate::error::{CliError, Result};
use crate::format::{Cell, Column, Table};

/// Smallest basis used for the diagonalization oracle.
pub const MIN_BASIS: usize = 256;

/// RK4 steps per unperturbed period.
const STEPS_PER_PERIOD: f64 = 2000.0;

const RK4_REFINE: f64 = 1e-14;

/// Mechanical energy at which the classical tables are evaluated. Every
/// reported value is normalized, so the choice only fixes c through ε.
const TABLE_ENERGY: f64 = 1.0;

pub fn oracle_basis(n_max: usize) -> usize {
    (4 * n_max).max(MIN_BASIS).next_power_of_two()
}

fn at_epsilon(params: &OscillatorParams, eps: f64) -> Result<(OscillatorParams, EnergyPoint)> {
    let c = params.light_speed_for_epsilon(TABLE_ENERGY, eps)?;
    let p = params.with_light_speed(c)?;
    let ep = EnergyPoint::new(&p, TABLE_ENERGY)?;
    Ok((p, ep))
}

fn num(x: f64) -> Cell {
    Cell::Num(x)
}

/// J_C/(Ẽ/ω₀) from the four schemes at each ε, with quadrature oracles.
pub fn cmd_table1(cfg: &RunConfig) -> Result<Table> {
    let unit = "E/w0";
    let columns = vec![
        Column::new("eps", ""),
        Column::scheme("fullrel_pdx", unit, SchemeTag::ClassicalFullRelPdx),
        Column::scheme("fullrel_xdp", unit, SchemeTag::ClassicalFullRelXdp),
        Column::scheme("wr_pdx", unit, SchemeTag::ClassicalWrPdx),
        Column::scheme("wr_xdp", unit, SchemeTag::ClassicalWrXdp),
        Column::scheme("wr_xdp_series", unit, SchemeTag::ClassicalWrXdp),
        Column::new("oracle_fullrel", unit),
        Column::new("oracle_wr", unit),
        Column::new("max_pairwise_dev", unit),
        Column::new("dev_fullrel_pdx_oracle", unit),
        Column::new("dev_wr_pdx_oracle", unit),
    ];
    let mut rows = Vec::with_capacity(cfg.epsilon_list.len());
    for &eps in &cfg.epsilon_list {
        if eps == 0.0 {
            let mut row = vec![num(0.0)];
            row.extend([1.0; 7].map(num));
            row.extend([0.0; 3].map(num));
            rows.push(row);
            continue;
        }
        let (p, ep) = at_epsilon(&cfg.params, eps)?;
        let scale = TABLE_ENERGY / p.omega0();
        let fr_pdx = action_fullrel(&p, &ep, SchemeTag::ClassicalFullRelPdx, 3)?.j_value / scale;
        let fr_xdp = action_fullrel(&p, &ep, SchemeTag::ClassicalFullRelXdp, 4)?.j_value / scale;
        let wr_pdx = action_wr_pdx(&p, &ep)?.j_value / scale;
        let wr_xdp = action_wr_xdp_first_order(&p, &ep)?.j_value / scale;
        let wr_series = action_wr_xdp(&p, &ep, 8)?.j_value / scale;
        let oracle_fr = action_quadrature(&HamiltonianSpec::full_rel(p), TABLE_ENERGY)? / scale;
        let oracle_wr = action_quadrature(&HamiltonianSpec::weak_rel(p), TABLE_ENERGY)? / scale;
        let four = [fr_pdx, fr_xdp, wr_pdx, wr_xdp];
        let max_dev = four
            .iter()
            .flat_map(|a| four.iter().map(move |b| (a - b).abs()))
            .fold(0.0, f64::max);
        rows.push(vec![
            num(eps),
            num(fr_pdx),
            num(fr_xdp),
            num(wr_pdx),
            num(wr_xdp),
            num(wr_series),
            num(oracle_fr),
            num(oracle_wr),
            num(max_dev),
            num(fr_pdx - oracle_fr),
            num(wr_pdx - oracle_wr),
        ]);
    }
    Ok(Table { columns, rows })
}

/// Level corrections (Ẽₙ − (n+½)ħω₀)/ħω₀ from the four schemes against the
/// diagonalization oracle.
pub fn cmd_table2(cfg: &RunConfig) -> Result<Table> {
    let unit = "hbar w0";
    let columns = vec![
        Column::new("n", ""),
        Column::scheme("quantum_pdx", unit, SchemeTag::QuantumWrPdx),
        Column::scheme("quantum_xdp", unit, SchemeTag::QuantumWrXdp),
        Column::scheme("jwkb", unit, SchemeTag::JwkbWr),
        Column::scheme("rs", unit, SchemeTag::RayleighSchrodinger),
        Column::new("oracle", unit),
        Column::new("dev_pdx", unit),
        Column::new("dev_xdp", unit),
        Column::new("dev_jwkb", unit),
        Column::new("dev_rs", unit),
        Column::new("pdx_over_n2", unit),
        Column::new("xdp_over_n2", unit),
        Column::new("jwkb_over_n2", unit),
        Column::new("rs_over_n2", unit),
    ];
    let r = cfg.level_ratio;
    let levels = match cfg.relativistic() {
        Some(p) => Some((p, diagonalize_levels(&HamiltonianSpec::weak_rel(p), cfg.n_max, oracle_basis(cfg.n_max))?)),
        None => None,
    };
    let mut rows = Vec::with_capacity(cfg.n_max + 1);
    for n in 0..=cfg.n_max {
        let nh = n as f64 + 0.5;
        let corr = match &levels {
            Some((p, lv)) => {
                let hw = p.quantum_energy();
                [
                    correction_wr_pdx(n, r),
                    correction_wr_xdp(n, r),
                    jwkb_levels_wr(p, n)?.correction / hw,
                    rs_shift_p4(p, n) / hw,
                    lv.energies[n] / hw - nh,
                ]
            }
            None => [0.0; 5],
        };
        let oracle = corr[4];
        let mut row = vec![Cell::Int(n)];
        row.extend(corr.map(num));
        row.extend(corr[..4].iter().map(|c| num(c - oracle)));
        if n == 0 {
            row.extend([Cell::Empty; 4]);
        } else {
            let n2 = (n * n) as f64;
            row.extend(corr[..4].iter().map(|c| num(c / n2)));
        }
        rows.push(row);
    }
    Ok(Table { columns, rows })
}

fn rk4_omega(spec: &HamiltonianSpec) -> Result<f64> {
    let t0 = 2.0 * PI / spec.params.omega0();
    Ok(2.0 * PI / rk4_period(spec, TABLE_ENERGY, t0 / STEPS_PER_PERIOD, RK4_REFINE)?)
}

/// ω/ω₀ from the first-order law, from differentiating the tabulated action
/// and from RK4 trajectories, with the fractional shift (ω₀/ω − 1)/ε.
pub fn cmd_frequency(cfg: &RunConfig) -> Result<Table> {
    let unit = "w0";
    let columns = vec![
        Column::new("eps", ""),
        Column::scheme("omega_first_order", unit, SchemeTag::ClassicalWrPdx),
        Column::scheme("omega_fullrel_table", unit, SchemeTag::ClassicalFullRelPdx),
        Column::new("omega_rk4_wr", unit),
        Column::new("omega_rk4_fullrel", unit),
        Column::new("shift_first_order", ""),
        Column::new("shift_fullrel_table", ""),
        Column::new("shift_rk4_wr", ""),
        Column::new("shift_rk4_fullrel", ""),
    ];
    let mut rows = Vec::with_capacity(cfg.epsilon_list.len());
    for &eps in &cfg.epsilon_list {
        if eps == 0.0 {
            let mut row = vec![num(0.0)];
            row.extend([1.0; 4].map(num));
            row.extend([0.375; 4].map(num));
            rows.push(row);
            continue;
        }
        let (p, ep) = at_epsilon(&cfg.params, eps)?;
        let w0 = p.omega0();
        let first = frequency_wr(&p, &ep)?;
        let table = frequency_from_action(
            |e| Ok(action_fullrel(&p, &EnergyPoint::new(&p, e)?, SchemeTag::ClassicalFullRelPdx, 3)?.j_value),
            TABLE_ENERGY,
        )?;
        let rk4_wr = rk4_omega(&HamiltonianSpec::weak_rel(p))?;
        let rk4_fr = rk4_omega(&HamiltonianSpec::full_rel(p))?;
        let omegas = [first, table, rk4_wr, rk4_fr];
        let mut row = vec![num(eps)];
        row.extend(omegas.map(|w| num(w / w0)));
        row.extend(omegas.map(|w| num((w0 / w - 1.0) / eps)));
        rows.push(row);
    }
    Ok(Table { columns, rows })
}

fn spectrum_entry(cfg: &RunConfig, scheme: SchemeTag, n: usize) -> Result<SpectrumEntry> {
    let p = &cfg.params;
    let unperturbed = || SpectrumEntry::new(p, n, (n as f64 + 0.5) * p.quantum_energy(), scheme);
    let rel = cfg.relativistic();
    let entry = match scheme {
        SchemeTag::QuantumShoPdx => eigenvalues_sho(p, n, Form::Pdx)?,
        SchemeTag::QuantumShoXdp => eigenvalues_sho(p, n, Form::Xdp)?,
        SchemeTag::QuantumWrPdx => rel.map_or_else(unperturbed, |p| eigenvalues_wr_pdx(&p, n)),
        SchemeTag::QuantumWrXdp => rel.map_or_else(unperturbed, |p| eigenvalues_wr_xdp(&p, n)),
        SchemeTag::QuantumAhoPdx => eigenvalues_aho(p, cfg.delta, n),
        SchemeTag::JwkbWr => match rel {
            Some(p) => jwkb_levels_wr(&p, n)?,
            None => unperturbed(),
        },
        SchemeTag::RayleighSchrodinger => match rel {
            Some(p) => SpectrumEntry::new(&p, n, (n as f64 + 0.5) * p.quantum_energy() + rs_shift_p4(&p, n), scheme),
            None => unperturbed(),
        },
        other => return Err(CliError::UnknownScheme(other.name().to_string())),
    };
    Ok(entry)
}

/// Levels 0..=n_max of one scheme next to the diagonalization oracle.
pub fn cmd_levels(cfg: &RunConfig, scheme: SchemeTag) -> Result<Table> {
    if !scheme.has_spectrum() {
        return Err(CliError::UnknownScheme(scheme.name().to_string()));
    }
    let p = cfg.params;
    if p.hbar() <= 0.0 {
        return Err(CliError::ConfigInvalid("levels need hbar > 0".to_string()));
    }
    let unit = "hbar w0";
    let columns = vec![
        Column::new("n", ""),
        Column::scheme("energy", unit, scheme),
        Column::new("correction", unit),
        Column::new("oracle_energy", unit),
        Column::new("rel_diff", ""),
        Column::new("within_tol", ""),
    ];
    let oracle_spec = match scheme {
        SchemeTag::QuantumAhoPdx => HamiltonianSpec::quartic(p, cfg.delta),
        SchemeTag::QuantumShoPdx | SchemeTag::QuantumShoXdp => HamiltonianSpec::sho(p),
        _ => match cfg.relativistic() {
            Some(p) => HamiltonianSpec::weak_rel(p),
            None => HamiltonianSpec::sho(p),
        },
    };
    let oracle = diagonalize_levels(&oracle_spec, cfg.n_max, oracle_basis(cfg.n_max))?;
    let hw = p.quantum_energy();
    let mut rows = Vec::with_capacity(cfg.n_max + 1);
    for n in 0..=cfg.n_max {
        let entry = spectrum_entry(cfg, scheme, n)?;
        let reference = oracle.energies[n];
        let rel_diff = ((entry.energy - reference) / reference).abs();
        rows.push(vec![
            Cell::Int(n),
            num(entry.energy / hw),
            num(entry.correction / hw),
            num(reference / hw),
            num(rel_diff),
            Cell::Flag(rel_diff <= cfg.tolerance),
        ]);
    }
    Ok(Table { columns, rows })
}
