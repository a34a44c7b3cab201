//! JSON emission with fixed 17-significant-digit floats, so that every f64
//! round-trips bit-exactly through its decimal form.

use serde::Serialize;
use std::io;

struct Sig17Formatter;

impl serde_json::ser::Formatter for Sig17Formatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        // {:.16e} prints one leading digit plus 16 fractional digits.
        write!(writer, "{value:.16e}")
    }
}

/// Serializes `value` to a JSON string with 17-significant-digit floats.
pub fn to_json_string<T: Serialize>(value: &T) -> crate::Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Sig17Formatter);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(out).expect("serde_json emits valid UTF-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_carry_17_digits() {
        let s = to_json_string(&0.5f64).unwrap();
        assert_eq!(s, "5.0000000000000000e-1");
        let parsed: f64 = serde_json::from_str(&s).unwrap();
        assert_eq!(parsed, 0.5);
    }

    #[test]
    fn irrational_round_trips_exactly() {
        let x = std::f64::consts::FRAC_PI_4;
        let s = to_json_string(&x).unwrap();
        let parsed: f64 = serde_json::from_str(&s).unwrap();
        assert_eq!(parsed.to_bits(), x.to_bits());
    }
}
