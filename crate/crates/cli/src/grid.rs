use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

/// `start:stop:count[:log]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub scale: Scale,
}

impl GridSpec {
    pub fn points(&self) -> Vec<f64> {
        let last = self.count - 1;
        (0..self.count)
            .map(|i| {
                if i == 0 {
                    return self.start;
                }
                if i == last {
                    return self.stop;
                }
                let t = i as f64 / last as f64;
                match self.scale {
                    Scale::Linear => self.start + (self.stop - self.start) * t,
                    Scale::Log => (self.start.ln() + (self.stop.ln() - self.start.ln()) * t).exp(),
                }
            })
            .collect()
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.count)?;
        if self.scale == Scale::Log {
            write!(f, ":log")?;
        }
        Ok(())
    }
}

fn number(field: &str, text: &str) -> Result<f64, String> {
    let v: f64 = text
        .trim()
        .parse()
        .map_err(|_| format!("{field} `{text}` is not a number"))?;
    if !v.is_finite() {
        return Err(format!("{field} must be finite"));
    }
    Ok(v)
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(format!("grid `{s}` must look like start:stop:count[:log]"));
        }
        let start = number("start", parts[0])?;
        let stop = number("stop", parts[1])?;
        let count: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| format!("count `{}` is not a positive integer", parts[2]))?;
        let scale = match parts.get(3).map(|p| p.trim()) {
            None | Some("lin") | Some("linear") => Scale::Linear,
            Some("log") => Scale::Log,
            Some(other) => return Err(format!("unknown grid scale `{other}`")),
        };
        if count < 2 {
            return Err("grid count must be at least 2".into());
        }
        if !(start < stop) {
            return Err(format!("grid start {start} must be below stop {stop}"));
        }
        if scale == Scale::Log && !(start > 0.0) {
            return Err("a log grid needs a positive start".into());
        }
        Ok(GridSpec {
            start,
            stop,
            count,
            scale,
        })
    }
}

/// `lo:hi` with `0 < lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub lo: f64,
    pub hi: f64,
}

impl FromStr for Window {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (lo, hi) = s
            .split_once(':')
            .ok_or_else(|| format!("window `{s}` must look like lo:hi"))?;
        let lo = number("window start", lo)?;
        let hi = number("window end", hi)?;
        if !(lo > 0.0 && lo < hi) {
            return Err(format!("window needs 0 < lo < hi, got {lo}:{hi}"));
        }
        Ok(Window { lo, hi })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_grid() {
        let g: GridSpec = "0.9:2.0:111".parse().unwrap();
        let p = g.points();
        assert_eq!(p.len(), 111);
        assert_eq!(p[0], 0.9);
        assert_eq!(p[110], 2.0);
        assert!((p[10] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn log_grid() {
        let g: GridSpec = "1e-8:1e-4:5:log".parse().unwrap();
        let p = g.points();
        assert!((p[1] / 1e-7 - 1.0).abs() < 1e-12);
        assert_eq!(g.to_string(), "0.00000001:0.0001:5:log");
    }

    #[test]
    fn rejects_bad_grids() {
        for bad in ["1:2", "2:1:5", "1:2:1", "0:1:5:log", "a:1:3", "1:2:3:cubic", "1:inf:3"] {
            assert!(bad.parse::<GridSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn windows() {
        let w: Window = "1e-12:1e-9".parse().unwrap();
        assert_eq!((w.lo, w.hi), (1e-12, 1e-9));
        assert!("1e-9:1e-12".parse::<Window>().is_err());
        assert!("0:1".parse::<Window>().is_err());
        assert!("1".parse::<Window>().is_err());
    }
}
