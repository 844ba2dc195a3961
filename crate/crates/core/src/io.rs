//! CSV and JSON round-trips for the f64 instantiations of the domain types.
//!
//! Floats are written with Rust's shortest round-trip formatting, so a
//! written file parses back to bit-identical values and equal inputs always
//! produce byte-identical files.

use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::curve::DiscreteMeasure2D;
use crate::error::{Error, Result};
use crate::incidence::{Line, LineFamily};
use crate::measure::DiscreteMeasure1D;
use crate::wavepacket::Tube;

/// JSON sidecar carried next to a measure CSV.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct MeasureSidecar {
    pub resolution: f64,
    pub total_mass: f64,
}

pub fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Parse(format!("json encode: {e}")))?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

fn parse_field<T: std::str::FromStr>(field: &str, line_no: usize) -> Result<T> {
    field
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("line {line_no}: bad field {field:?}")))
}

pub fn write_measure_1d_csv(
    mu: &DiscreteMeasure1D<f64>,
    csv_path: &Path,
    sidecar_path: &Path,
) -> Result<()> {
    let mut out = String::from("position,weight\n");
    for &(p, w) in mu.atoms() {
        out.push_str(&format!("{p},{w}\n"));
    }
    fs::write(csv_path, out)?;
    write_json(
        &MeasureSidecar {
            resolution: mu.resolution(),
            total_mass: mu.total_mass(),
        },
        sidecar_path,
    )
}

pub fn read_measure_1d_csv(csv_path: &Path, sidecar_path: &Path) -> Result<DiscreteMeasure1D<f64>> {
    let sidecar: MeasureSidecar = serde_json::from_str(&fs::read_to_string(sidecar_path)?)
        .map_err(|e| Error::Parse(format!("sidecar: {e}")))?;
    let text = fs::read_to_string(csv_path)?;
    let mut atoms = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if i == 0 || line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split(',');
        let p: f64 = parse_field(parts.next().unwrap_or(""), i + 1)?;
        let w: f64 = parse_field(parts.next().unwrap_or(""), i + 1)?;
        atoms.push((p, w));
    }
    DiscreteMeasure1D::from_atoms(atoms, sidecar.resolution)
}

pub fn write_measure_2d_csv(
    mu: &DiscreteMeasure2D<f64>,
    csv_path: &Path,
    sidecar_path: &Path,
) -> Result<()> {
    let mut out = String::from("x,y,weight\n");
    for &(p, w) in mu.atoms() {
        out.push_str(&format!("{},{},{w}\n", p[0], p[1]));
    }
    fs::write(csv_path, out)?;
    write_json(
        &MeasureSidecar {
            resolution: mu.resolution(),
            total_mass: mu.total_mass(),
        },
        sidecar_path,
    )
}

pub fn read_measure_2d_csv(csv_path: &Path, sidecar_path: &Path) -> Result<DiscreteMeasure2D<f64>> {
    let sidecar: MeasureSidecar = serde_json::from_str(&fs::read_to_string(sidecar_path)?)
        .map_err(|e| Error::Parse(format!("sidecar: {e}")))?;
    let text = fs::read_to_string(csv_path)?;
    let mut atoms = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if i == 0 || line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split(',');
        let x: f64 = parse_field(parts.next().unwrap_or(""), i + 1)?;
        let y: f64 = parse_field(parts.next().unwrap_or(""), i + 1)?;
        let w: f64 = parse_field(parts.next().unwrap_or(""), i + 1)?;
        atoms.push(([x, y], w));
    }
    DiscreteMeasure2D::from_atoms(atoms, sidecar.resolution)
}

pub fn tubes_to_csv(tubes: &[Tube]) -> String {
    let mut out =
        String::from("theta_index,center_x,center_y,dir_x,dir_y,coeff_re,coeff_im,lambda_class\n");
    for t in tubes {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            t.theta_index,
            t.center[0],
            t.center[1],
            t.direction[0],
            t.direction[1],
            t.coefficient.0,
            t.coefficient.1,
            t.lambda_class
        ));
    }
    out
}

pub fn write_tubes_csv(tubes: &[Tube], path: &Path) -> Result<()> {
    fs::write(path, tubes_to_csv(tubes))?;
    Ok(())
}

/// Reads tubes back; `width`/`length`/`slot` are reconstructed from the
/// radius (they are derived quantities of the run scale).
pub fn read_tubes_csv(path: &Path, radius: f64) -> Result<Vec<Tube>> {
    let text = fs::read_to_string(path)?;
    let mut tubes = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if i == 0 || line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 8 {
            return Err(Error::Parse(format!("line {}: expected 8 fields", i + 1)));
        }
        tubes.push(Tube {
            theta_index: parse_field(fields[0], i + 1)?,
            center: [parse_field(fields[1], i + 1)?, parse_field(fields[2], i + 1)?],
            direction: [parse_field(fields[3], i + 1)?, parse_field(fields[4], i + 1)?],
            width: radius.sqrt(),
            length: radius,
            coefficient: (parse_field(fields[5], i + 1)?, parse_field(fields[6], i + 1)?),
            lambda_class: parse_field(fields[7], i + 1)?,
            slot: (0, 0),
        });
    }
    Ok(tubes)
}

pub fn lines_to_csv(family: &LineFamily) -> String {
    let mut out = String::from("angle,offset\n");
    for l in &family.lines {
        out.push_str(&format!("{},{}\n", l.angle, l.offset));
    }
    out
}

pub fn write_lines_csv(family: &LineFamily, path: &Path) -> Result<()> {
    fs::write(path, lines_to_csv(family))?;
    Ok(())
}

pub fn read_lines_csv(path: &Path, delta: f64) -> Result<LineFamily> {
    let text = fs::read_to_string(path)?;
    let mut lines = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if i == 0 || line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split(',');
        lines.push(Line {
            angle: parse_field(parts.next().unwrap_or(""), i + 1)?,
            offset: parse_field(parts.next().unwrap_or(""), i + 1)?,
        });
    }
    Ok(LineFamily::new_unchecked(lines, delta))
}
