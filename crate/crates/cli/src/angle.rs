use serde::Deserialize;

/// Parses "1.2", "1.2rad", "90deg" or "90 deg". Bare numbers are radians.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let (num, scale) = if let Some(v) = t.strip_suffix("deg") {
        (v, std::f64::consts::PI / 180.0)
    } else if let Some(v) = t.strip_suffix("rad") {
        (v, 1.0)
    } else {
        (t, 1.0)
    };
    let x: f64 = num.trim().parse().map_err(|_| format!("'{s}' is not an angle (e.g. 1.57, 1.57rad, 90deg)"))?;
    if !x.is_finite() {
        return Err(format!("angle '{s}' is not finite"));
    }
    Ok(x * scale)
}

/// Angle in a config file: a bare number (radians) or a string with a unit.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum AngleValue {
    Radians(f64),
    Text(String),
}

impl AngleValue {
    pub fn radians(&self) -> Result<f64, String> {
        match self {
            AngleValue::Radians(x) if x.is_finite() => Ok(*x),
            AngleValue::Radians(x) => Err(format!("angle {x} is not finite")),
            AngleValue::Text(s) => parse_angle(s),
        }
    }

    /// For values that are not angles (a gain sweep): numbers only.
    pub fn plain(&self) -> Result<f64, String> {
        match self {
            AngleValue::Radians(x) => Ok(*x),
            AngleValue::Text(s) => s.trim().parse().map_err(|_| format!("'{s}' is not a number")),
        }
    }
}
