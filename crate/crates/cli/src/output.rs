use std::fs::File;
use std::path::{Path, PathBuf};

use crate::error::{CliError, CliResult};

/// 17 significant digits, enough to round-trip any `f64`; `-0` prints as `0`.
pub fn fmt_num(v: f64) -> String {
    format!("{:.16e}", v + 0.0)
}

/// A CSV file with a fixed header; rows are written in call order.
pub struct Table {
    path: PathBuf,
    writer: csv::Writer<File>,
    width: usize,
}

impl Table {
    pub fn create(path: &Path, header: &[&str]) -> CliResult<Self> {
        let mut writer = csv::Writer::from_path(path).map_err(CliError::csv(path))?;
        writer.write_record(header).map_err(CliError::csv(path))?;
        Ok(Self {
            path: path.to_path_buf(),
            writer,
            width: header.len(),
        })
    }

    pub fn row(&mut self, cells: &[String]) -> CliResult<()> {
        debug_assert_eq!(cells.len(), self.width);
        self.writer
            .write_record(cells)
            .map_err(CliError::csv(&self.path))
    }

    pub fn finish(mut self) -> CliResult<PathBuf> {
        self.writer.flush().map_err(CliError::io(&self.path))?;
        Ok(self.path)
    }
}

/// `out.csv` → `out.gp`.
pub fn plot_script_path(csv: &Path) -> PathBuf {
    csv.with_extension("gp")
}

/// A gnuplot script drawing columns of the CSV as coloured point maps over
/// `(x, y)`; `panels` are `(column number, title)`.
pub fn write_plot_script(csv: &Path, panels: &[(usize, &str)]) -> CliResult<PathBuf> {
    let script = plot_script_path(csv);
    let name = csv
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let png = Path::new(&name).with_extension("png");
    let mut text = format!(
        "# gnuplot script for {name}; run `gnuplot {}` next to the CSV\n\
         set datafile separator ','\n\
         set terminal pngcairo size {},500\n\
         set output '{}'\n\
         set size ratio -1\n\
         set xlabel 'x'\n\
         set ylabel 'y'\n\
         set palette rgbformulae 33,13,10\n\
         set multiplot layout 1,{}\n",
        script
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default(),
        500 * panels.len(),
        png.display(),
        panels.len()
    );
    for (column, title) in panels {
        text.push_str(&format!(
            "set title '{title}'\nplot '{name}' every ::1 using 1:2:{column} with points pt 5 ps 1.5 palette notitle\n"
        ));
    }
    text.push_str("unset multiplot\n");
    std::fs::write(&script, text).map_err(CliError::io(&script))?;
    Ok(script)
}
