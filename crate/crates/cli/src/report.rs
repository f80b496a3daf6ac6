//! Deterministic report rendering. The structured format is
//! line-delimited records with stable field names: a record kind
//! followed by tab-separated `field=value` pairs. Every numeric value is
//! exact unless its field name says `estimate`.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    records: Vec<(String, Vec<(String, String)>)>,
    text: Vec<String>,
    warnings: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    /// One structured record; fields keep their given order.
    pub fn record(&mut self, kind: &str, fields: &[(&str, String)]) {
        self.records.push((
            kind.to_string(),
            fields.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        ));
    }

    /// One human-readable line.
    pub fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    /// Record and line together, for the common case.
    pub fn both(&mut self, kind: &str, fields: &[(&str, String)], text: impl Into<String>) {
        self.record(kind, fields);
        self.line(text);
    }

    pub fn warn(&mut self, s: impl Into<String>) {
        self.warnings.push(s.into());
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Text => {
                for w in &self.warnings {
                    out.push_str(&format!("warning: {w}\n"));
                }
                for l in &self.text {
                    out.push_str(l);
                    out.push('\n');
                }
            }
            Format::Structured => {
                out.push_str("status\tok\n");
                for w in &self.warnings {
                    out.push_str(&format!("warning\tmsg={}\n", sanitize(w)));
                }
                for (kind, fields) in &self.records {
                    out.push_str(kind);
                    for (k, v) in fields {
                        out.push('\t');
                        out.push_str(k);
                        out.push('=');
                        out.push_str(&sanitize(v));
                    }
                    out.push('\n');
                }
            }
        }
        out
    }
}

/// Values never contain tabs or newlines; enforced here so records stay
/// one line each.
fn sanitize(v: &str) -> String {
    v.replace(['\t', '\n'], " ")
}

/// Parse structured output back into (kind, fields) records; the
/// round-trip is part of the output contract.
#[cfg(test)]
pub fn parse_structured(text: &str) -> Vec<(String, Vec<(String, String)>)> {
    let mut out = Vec::new();
    for line in text.lines() {
        let mut parts = line.split('\t');
        let kind = parts.next().unwrap_or_default().to_string();
        let fields = parts
            .filter_map(|p| p.split_once('=').map(|(k, v)| (k.to_string(), v.to_string())))
            .collect();
        out.push((kind, fields));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structured_round_trip() {
        let mut r = Report::new();
        r.warn("ambiguous");
        r.both("char", &[("name", "C".into()), ("value", "1".into())], "chi(C) = 1");
        let rendered = r.render(Format::Structured);
        let parsed = parse_structured(&rendered);
        assert_eq!(parsed[0].0, "status");
        assert_eq!(parsed[1], ("warning".into(), vec![("msg".into(), "ambiguous".into())]));
        assert_eq!(
            parsed[2],
            (
                "char".into(),
                vec![("name".into(), "C".into()), ("value".into(), "1".into())]
            )
        );
        // byte-identical on repeat
        assert_eq!(rendered, r.render(Format::Structured));
    }
}
