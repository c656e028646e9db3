/// `v` rounded to `digits` significant digits, in positional notation for
/// moderate magnitudes and scientific notation otherwise. Trailing zeros
/// are dropped; the output depends only on `v` and `digits`.
pub fn format_significant(v: f64, digits: usize) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exponent) = sci.split_once('e').expect("scientific format has an exponent");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    if (-5..digits as i32).contains(&exponent) {
        let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
        trim_zeros(format!("{v:.decimals$}"))
    } else {
        format!("{}e{exponent}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// CSV document with a header, data rows and `#` trailer lines.
pub struct Table {
    digits: usize,
    columns: usize,
    text: String,
    trailer: Vec<String>,
}

pub enum Cell {
    Num(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

fn quote(field: &str) -> String {
    if field.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

impl Table {
    pub fn new(header: &[&str], digits: usize) -> Self {
        let mut text = header.join(",");
        text.push('\n');
        Table {
            digits,
            columns: header.len(),
            text,
            trailer: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns);
        let fields: Vec<String> = cells
            .into_iter()
            .map(|c| match c {
                Cell::Num(v) => format_significant(v, self.digits),
                Cell::Text(t) => quote(&t),
            })
            .collect();
        self.text.push_str(&fields.join(","));
        self.text.push('\n');
    }

    pub fn num(&self, v: f64) -> String {
        format_significant(v, self.digits)
    }

    pub fn note(&mut self, key: &str, value: impl Into<String>) {
        self.trailer.push(format!("# {key}={}", value.into()));
    }

    pub fn finish(mut self) -> String {
        for line in self.trailer {
            self.text.push_str(&line);
            self.text.push('\n');
        }
        self.text
    }
}
