//! Number formatting shared by the CSV writers and the CLI.

/// Six decimal places, round-half-even on exact binary ties, never `-0`.
pub fn real(x: f64) -> String {
    let s = format!("{x:.6}");
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}
