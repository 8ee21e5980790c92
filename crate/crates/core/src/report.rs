use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

/// Relative width of the band in which a margin counts as "on the boundary".
pub const BOUNDARY_RTOL: f64 = 1e-12;

/// One inequality `lhs < rhs` (or `lhs ≤ rhs`) with its signed margin `rhs − lhs`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityEntry {
    #[serde(skip)]
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub pass: bool,
    pub strict: bool,
    /// `|margin| ≤ 1e-12 · max(|lhs|, |rhs|)`; for non-strict entries this
    /// is the equality case.
    pub boundary: bool,
    /// Entries that do not take part in [`InequalityReport::passed`].
    #[serde(skip_serializing_if = "is_true")]
    pub required: bool,
}

fn is_true(b: &bool) -> bool {
    *b
}

impl InequalityEntry {
    /// `lhs < rhs`; passes only for a strictly positive margin.
    pub fn strict(name: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        let margin = rhs - lhs;
        InequalityEntry {
            name: name.into(),
            lhs,
            rhs,
            margin,
            pass: margin > 0.0,
            strict: true,
            boundary: on_boundary(lhs, rhs, margin),
            required: true,
        }
    }

    /// `lhs ≤ rhs`; a margin within the boundary band counts as equality.
    pub fn non_strict(name: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        let margin = rhs - lhs;
        let boundary = on_boundary(lhs, rhs, margin);
        InequalityEntry {
            name: name.into(),
            lhs,
            rhs,
            margin,
            pass: margin >= 0.0 || boundary,
            strict: false,
            boundary,
            required: true,
        }
    }

    /// Measures the boundary band against `scale` instead of
    /// `max(|lhs|, |rhs|)`, for entries whose sides are sums with cancellation.
    pub fn with_scale(mut self, scale: f64) -> Self {
        self.boundary = self.margin.abs() <= BOUNDARY_RTOL * scale;
        if !self.strict {
            self.pass = self.margin >= 0.0 || self.boundary;
        }
        self
    }

    pub fn informational(mut self) -> Self {
        self.required = false;
        self
    }
}

fn on_boundary(lhs: f64, rhs: f64, margin: f64) -> bool {
    margin.abs() <= BOUNDARY_RTOL * lhs.abs().max(rhs.abs())
}

/// Named inequality entries in a fixed order. Serializes as a JSON object
/// keyed by entry name.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct InequalityReport {
    entries: Vec<InequalityEntry>,
}

impl InequalityReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, entry: InequalityEntry) {
        self.entries.push(entry);
    }

    pub fn entries(&self) -> &[InequalityEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&InequalityEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// All required entries pass.
    pub fn passed(&self) -> bool {
        self.entries.iter().filter(|e| e.required).all(|e| e.pass)
    }

    pub fn min_margin(&self) -> f64 {
        self.entries
            .iter()
            .filter(|e| e.required)
            .map(|e| e.margin)
            .fold(f64::INFINITY, f64::min)
    }
}

impl FromIterator<InequalityEntry> for InequalityReport {
    fn from_iter<I: IntoIterator<Item = InequalityEntry>>(iter: I) -> Self {
        InequalityReport {
            entries: iter.into_iter().collect(),
        }
    }
}

impl Serialize for InequalityReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.entries.len()))?;
        for e in &self.entries {
            map.serialize_entry(&e.name, e)?;
        }
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strict_zero_margin_fails_on_boundary() {
        let e = InequalityEntry::strict("x", 1.0, 1.0);
        assert!(!e.pass);
        assert!(e.boundary);
        assert_eq!(e.margin, 0.0);
    }

    #[test]
    fn non_strict_equality_passes() {
        let e = InequalityEntry::non_strict("x", 4.0, 4.0 * (1.0 + 1e-14));
        assert!(e.pass && e.boundary);
        let e = InequalityEntry::non_strict("x", 4.0 * (1.0 + 1e-14), 4.0);
        assert!(e.pass && e.boundary);
        let e = InequalityEntry::non_strict("x", 5.0, 4.0);
        assert!(!e.pass && !e.boundary);
    }

    #[test]
    fn informational_entries_do_not_gate() {
        let r: InequalityReport = [
            InequalityEntry::strict("a", 0.0, 1.0),
            InequalityEntry::strict("b", 2.0, 1.0).informational(),
        ]
        .into_iter()
        .collect();
        assert!(r.passed());
        assert_eq!(r.min_margin(), 1.0);
    }

    #[test]
    fn serializes_as_named_object() {
        let r: InequalityReport = [InequalityEntry::strict("first", 3.5, 38.5)]
            .into_iter()
            .collect();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["first"]["margin"], 35.0);
        assert_eq!(v["first"]["pass"], true);
        assert!(v["first"].get("required").is_none());
    }
}
