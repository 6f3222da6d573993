use crate::args::{PlotArgs, Style};
use crate::commands::{create, read_record};
use crate::error::CliError;
use qcollapse_core::tdse::fit_power_law;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];
const DASHES: [&str; 6] = ["", "8 4", "2 3", "8 3 2 3", "12 4", "4 2"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Profile,
    Record,
}

struct Curve {
    label: String,
    points: Vec<(f64, f64)>,
    markers: bool,
}

#[derive(Debug, Clone, Copy)]
struct Axis {
    lo: f64,
    hi: f64,
    log: bool,
}

impl Axis {
    fn padded(self, fraction: f64) -> Self {
        let f = (self.hi / self.lo).powf(fraction);
        Axis { lo: self.lo / f, hi: self.hi * f, ..self }
    }

    fn fit(values: impl Iterator<Item = f64>, log: bool) -> Self {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in values {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if log {
            if hi <= lo {
                hi = lo * 10.0;
            }
            Axis { lo, hi, log }
        } else {
            if hi <= lo {
                hi = lo + 1.0;
            }
            let step = nice_step((hi - lo) / 5.0);
            Axis { lo: (lo / step).floor() * step, hi: (hi / step).ceil() * step, log }
        }
    }

    /// Position in `[0, 1]`.
    fn unit(&self, v: f64) -> f64 {
        if self.log {
            (v.log10() - self.lo.log10()) / (self.hi.log10() - self.lo.log10())
        } else {
            (v - self.lo) / (self.hi - self.lo)
        }
    }

    fn ticks(&self) -> Vec<f64> {
        if self.log {
            let (a, b) = (self.lo.log10().floor() as i32, self.hi.log10().ceil() as i32);
            let every = ((b - a) / 8 + 1).max(1);
            let mantissas: &[f64] = if self.hi / self.lo < 1e3 { &[1.0, 2.0, 5.0] } else { &[1.0] };
            let inside = |v: &f64| *v >= self.lo * (1.0 - 1e-12) && *v <= self.hi * (1.0 + 1e-12);
            (a..=b)
                .filter(|k| (k - a) % every == 0)
                .flat_map(|k| mantissas.iter().map(move |m| m * 10f64.powi(k)))
                .filter(inside)
                .collect()
        } else {
            let step = nice_step((self.hi - self.lo) / 5.0);
            let n = ((self.hi - self.lo) / step).round() as i64;
            (0..=n).map(|k| self.lo + k as f64 * step).collect()
        }
    }

    fn label(&self, v: f64) -> String {
        if self.log && !(1e-3..1e5).contains(&v) {
            let e = v.log10().floor() as i32;
            let m = (v / 10f64.powi(e)).round();
            if m == 1.0 {
                format!("1e{e}")
            } else {
                format!("{m}e{e}")
            }
        } else {
            let s = format!("{:.6}", if v.abs() < 1e-12 { 0.0 } else { v });
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        }
    }
}

fn nice_step(raw: f64) -> f64 {
    let mag = 10f64.powf(raw.log10().floor());
    let f = raw / mag;
    mag * if f <= 1.0 {
        1.0
    } else if f <= 2.0 {
        2.0
    } else if f <= 5.0 {
        5.0
    } else {
        10.0
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

struct Figure<'a> {
    width: f64,
    height: f64,
    title: Option<&'a str>,
    x_label: &'a str,
    y_label: &'a str,
    x: Axis,
    y: Axis,
    mono: bool,
    legend_left: bool,
}

impl Figure<'_> {
    fn render(&self, curves: &[Curve]) -> String {
        let (ml, mr, mt, mb) = (72.0, 20.0, if self.title.is_some() { 36.0 } else { 16.0 }, 52.0);
        let (pw, ph) = (self.width - ml - mr, self.height - mt - mb);
        let px = |v: f64| ml + self.x.unit(v) * pw;
        let py = |v: f64| mt + (1.0 - self.y.unit(v)) * ph;
        let mut s = String::new();
        let _ = writeln!(
            s,
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\" font-family=\"serif\" font-size=\"13\">",
            w = self.width,
            h = self.height
        );
        let _ = writeln!(s, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>");
        if let Some(t) = self.title {
            let _ = writeln!(
                s,
                "<text x=\"{:.1}\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">{}</text>",
                ml + pw / 2.0,
                escape(t)
            );
        }
        let _ = writeln!(s, "<g stroke=\"#bbbbbb\" stroke-width=\"0.5\">");
        for t in self.x.ticks() {
            let _ = writeln!(s, "<line x1=\"{0:.2}\" y1=\"{1:.2}\" x2=\"{0:.2}\" y2=\"{2:.2}\"/>", px(t), mt, mt + ph);
        }
        for t in self.y.ticks() {
            let _ = writeln!(s, "<line x1=\"{1:.2}\" y1=\"{0:.2}\" x2=\"{2:.2}\" y2=\"{0:.2}\"/>", py(t), ml, ml + pw);
        }
        let _ = writeln!(s, "</g>");
        let _ =
            writeln!(s, "<rect x=\"{ml}\" y=\"{mt}\" width=\"{pw}\" height=\"{ph}\" fill=\"none\" stroke=\"black\"/>");
        for t in self.x.ticks() {
            let _ = writeln!(
                s,
                "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>",
                px(t),
                mt + ph + 18.0,
                self.x.label(t)
            );
        }
        for t in self.y.ticks() {
            let _ = writeln!(
                s,
                "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{}</text>",
                ml - 6.0,
                py(t) + 4.0,
                self.y.label(t)
            );
        }
        let _ = writeln!(
            s,
            "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\">{}</text>",
            ml + pw / 2.0,
            self.height - 12.0,
            escape(self.x_label)
        );
        let _ = writeln!(
            s,
            "<text x=\"18\" y=\"{0:.1}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {0:.1})\">{1}</text>",
            mt + ph / 2.0,
            escape(self.y_label)
        );
        let _ = writeln!(
            s,
            "<clipPath id=\"plot\"><rect x=\"{ml}\" y=\"{mt}\" width=\"{pw}\" height=\"{ph}\"/></clipPath>"
        );
        for (k, c) in curves.iter().enumerate() {
            let color = if self.mono { "black" } else { PALETTE[k % PALETTE.len()] };
            if c.markers {
                let _ = writeln!(s, "<g fill=\"{color}\" clip-path=\"url(#plot)\">");
                for &(x, y) in &c.points {
                    let _ = writeln!(s, "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2.5\"/>", px(x), py(y));
                }
                let _ = writeln!(s, "</g>");
            } else {
                let dash = if self.mono { DASHES[k % DASHES.len()] } else { "" };
                let pts: Vec<String> = c.points.iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
                let _ = writeln!(
                    s,
                    "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"{} clip-path=\"url(#plot)\" points=\"{}\"/>",
                    if dash.is_empty() { String::new() } else { format!(" stroke-dasharray=\"{dash}\"") },
                    pts.join(" ")
                );
            }
        }
        let lx = if self.legend_left { ml + 12.0 } else { ml + pw - 150.0 };
        for (k, c) in curves.iter().enumerate() {
            let y = mt + 18.0 + 18.0 * k as f64;
            let color = if self.mono { "black" } else { PALETTE[k % PALETTE.len()] };
            if c.markers {
                let _ =
                    writeln!(s, "<circle cx=\"{:.1}\" cy=\"{:.1}\" r=\"2.5\" fill=\"{color}\"/>", lx + 14.0, y - 4.0);
            } else {
                let dash = if self.mono { DASHES[k % DASHES.len()] } else { "" };
                let _ = writeln!(
                    s,
                    "<line x1=\"{lx:.1}\" y1=\"{0:.1}\" x2=\"{1:.1}\" y2=\"{0:.1}\" stroke=\"{color}\" stroke-width=\"1.5\"{2}/>",
                    y - 4.0,
                    lx + 28.0,
                    if dash.is_empty() { String::new() } else { format!(" stroke-dasharray=\"{dash}\"") }
                );
            }
            let _ = writeln!(s, "<text x=\"{:.1}\" y=\"{y:.1}\">{}</text>", lx + 34.0, escape(&c.label));
        }
        s.push_str("</svg>\n");
        s
    }
}

fn kind_of(path: &Path) -> Result<Kind, CliError> {
    let mut rd = csv::Reader::from_path(path).map_err(|e| CliError::validation(format!("{}: {e}", path.display())))?;
    let header: Vec<String> = rd
        .headers()
        .map_err(|e| CliError::validation(format!("{}: {e}", path.display())))?
        .iter()
        .map(str::to_string)
        .collect();
    match header.join(",").as_str() {
        "xi,re_R,im_R,abs2_R,re_dR,im_dR" => Ok(Kind::Profile),
        "t,norm,r_mean,fidelity" => Ok(Kind::Record),
        other => Err(CliError::validation(format!("{}: unrecognised CSV header `{other}`", path.display()))),
    }
}

fn read_profile(path: &Path) -> Result<Vec<(f64, f64)>, CliError> {
    let bad = |m: String| CliError::validation(format!("{}: {m}", path.display()));
    let mut rd = csv::Reader::from_path(path).map_err(|e| bad(e.to_string()))?;
    let mut out = Vec::new();
    for row in rd.records() {
        let row = row.map_err(|e| bad(e.to_string()))?;
        let num = |k: usize| row[k].parse::<f64>().map_err(|_| bad(format!("bad number `{}`", &row[k])));
        out.push((num(0)?, num(3)?));
    }
    Ok(out)
}

/// `profile_gamma0.5` becomes `γ = 0.5`; other stems are used as they are.
fn default_label(path: &Path) -> String {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    match stem.rfind("gamma") {
        Some(k) if stem[k + 5..].parse::<f64>().is_ok() => format!("γ = {}", &stem[k + 5..]),
        _ => stem,
    }
}

pub fn plot(a: &PlotArgs) -> Result<String, CliError> {
    if !a.labels.is_empty() && a.labels.len() != a.inputs.len() {
        return Err(CliError::validation(format!("{} labels for {} inputs", a.labels.len(), a.inputs.len())));
    }
    let kinds = a.inputs.iter().map(|p| kind_of(p)).collect::<Result<Vec<_>, _>>()?;
    let kind = kinds[0];
    if kinds.iter().any(|&k| k != kind) {
        return Err(CliError::validation("cannot mix profile and record CSVs in one plot"));
    }
    if a.style == Style::Fig1 && kind != Kind::Profile {
        return Err(CliError::validation("--style fig1 plots profile CSVs"));
    }
    let label = |k: usize| a.labels.get(k).cloned().unwrap_or_else(|| default_label(&a.inputs[k]));
    let mut curves = Vec::new();
    let mut report = String::new();
    let (x_label, y_label, logy) = match kind {
        Kind::Profile => {
            for (k, p) in a.inputs.iter().enumerate() {
                let pts: Vec<(f64, f64)> =
                    read_profile(p)?.into_iter().filter(|(x, y)| *x > 0.0 && y.is_finite()).collect();
                curves.push(Curve { label: label(k), points: pts, markers: false });
            }
            ("ξ", "|R(ξ)|²", false)
        }
        Kind::Record => {
            let mut negative = true;
            for (k, p) in a.inputs.iter().enumerate() {
                let (t, r) = read_record(p)?;
                negative &= t.iter().all(|&t| t < 0.0);
                let pts: Vec<(f64, f64)> =
                    t.iter().zip(&r).filter(|(t, r)| **t != 0.0 && **r > 0.0).map(|(t, r)| (t.abs(), *r)).collect();
                let (ts, rs): (Vec<f64>, Vec<f64>) = pts.iter().cloned().unzip();
                let fit = fit_power_law(&ts, &rs)?;
                let _ = writeln!(report, "{}: nu = {:.6}, prefactor = {:.6}", p.display(), fit.exponent, fit.prefactor);
                let (lo, hi) = ts.iter().fold((f64::INFINITY, 0.0f64), |(l, h), &t| (l.min(t), h.max(t)));
                let line = (0..=64)
                    .map(|j| {
                        let t = lo * (hi / lo).powf(j as f64 / 64.0);
                        (t, fit.prefactor * t.powf(fit.exponent))
                    })
                    .collect();
                curves.push(Curve { label: label(k), points: pts, markers: true });
                curves.push(Curve { label: format!("fit, ν = {:.4}", fit.exponent), points: line, markers: false });
            }
            (if negative { "−t" } else { "|t|" }, "⟨r⟩", true)
        }
    };
    if curves.iter().all(|c| c.points.is_empty()) {
        return Err(CliError::validation("nothing to plot"));
    }
    let all = || curves.iter().flat_map(|c| c.points.iter());
    let fig = Figure {
        width: a.width.unwrap_or(640) as f64,
        height: a.height.unwrap_or(440) as f64,
        title: a.title.as_deref(),
        x_label,
        y_label,
        x: if logy { Axis::fit(all().map(|p| p.0), true).padded(0.03) } else { Axis::fit(all().map(|p| p.0), true) },
        y: if logy { Axis::fit(all().map(|p| p.1), true).padded(0.03) } else { Axis::fit(all().map(|p| p.1), false) },
        mono: a.style == Style::Fig1,
        legend_left: kind == Kind::Record,
    };
    if fig.width < 200.0 || fig.height < 150.0 {
        return Err(CliError::validation("plot must be at least 200 x 150"));
    }
    let out = a.out.clone().unwrap_or_else(|| PathBuf::from("plot.svg"));
    let mut w = create(&out)?;
    w.write_all(fig.render(&curves).as_bytes())?;
    w.flush()?;
    let _ = writeln!(report, "wrote {}", out.display());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_axis_spans_decades() {
        let a = Axis::fit([0.01, 100.0].into_iter(), true);
        assert_eq!(a.ticks(), [0.01, 0.1, 1.0, 10.0, 100.0]);
        assert!((a.unit(1.0) - 0.5).abs() < 1e-12);
        let b = Axis::fit([0.1, 0.9].into_iter(), true);
        assert_eq!(b.ticks(), [0.1, 0.2, 0.5]);
        assert_eq!(b.label(0.2), "0.2");
        assert_eq!(Axis::fit([1e-6, 1.0].into_iter(), true).label(1e-6), "1e-6");
    }

    #[test]
    fn linear_axis_has_round_ticks() {
        let a = Axis::fit([0.0, 0.93].into_iter(), false);
        assert_eq!((a.lo, a.hi), (0.0, 1.0));
        assert_eq!(a.ticks().len(), 6);
        assert_eq!(a.label(0.2), "0.2");
    }

    #[test]
    fn labels_from_sweep_names() {
        assert_eq!(default_label(Path::new("out/profile_gamma0.5.csv")), "γ = 0.5");
        assert_eq!(default_label(Path::new("run.csv")), "run");
    }
}
