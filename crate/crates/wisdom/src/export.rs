//! Region maps as CSV for ternary plots.

use std::io::Write;
use std::path::Path;

use wisdom_core::orderings::HypertriangleCell;
use wisdom_core::region::RegionMap;

use crate::error::{CliError, Result};

pub const REGION_HEADER: [&str; 6] = ["b1", "b2", "b3", "membership", "consistency", "hypertriangle"];

/// `"2-1-3"` for the cell `x_2 >= x_1 >= x_3`, `"none"` for the barycentre.
pub fn hypertriangle_label(cell: &HypertriangleCell) -> String {
    match cell {
        HypertriangleCell::Ordering(tau) => tau
            .to_one_based()
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("-"),
        HypertriangleCell::Degenerate => "none".to_string(),
    }
}

/// Writes one row per lattice point in lexicographic barycentric order.
/// Coordinates are `k_i / resolution` in shortest round-trip form, so a
/// re-export is byte-identical.
pub fn write_region_csv<W: Write>(map: &RegionMap, out: W) -> Result<(), csv::Error> {
    assert_eq!(map.sigma2.len(), 3, "CSV export is for three individuals");
    let mut w = csv::Writer::from_writer(out);
    w.write_record(REGION_HEADER)?;
    let r = map.resolution as f64;
    for p in &map.points {
        let b: Vec<String> = p.lattice.iter().map(|&k| (k as f64 / r).to_string()).collect();
        w.write_record([
            b[0].as_str(),
            b[1].as_str(),
            b[2].as_str(),
            p.membership.as_str(),
            p.consistency.as_str(),
            hypertriangle_label(&p.cell).as_str(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// [`write_region_csv`] to a file. Only three-individual maps can be
/// exported.
pub fn export_region_csv(map: &RegionMap, path: &Path) -> Result<()> {
    if map.sigma2.len() != 3 {
        return Err(CliError::schema(
            "sigma2",
            format!(
                "region export needs exactly 3 individuals, found {}",
                map.sigma2.len()
            ),
        ));
    }
    let file = std::fs::File::create(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    write_region_csv(map, std::io::BufWriter::new(file)).map_err(|source| CliError::Csv {
        path: path.to_path_buf(),
        source,
    })
}
