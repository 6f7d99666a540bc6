//! Canonical JSON output: object keys sorted, so identical reports are
//! byte-identical.

use serde::Serialize;
use serde_json::Value;

/// Pretty JSON with keys sorted at every level.
pub fn to_canonical_string<T: Serialize>(value: &T) -> serde_json::Result<String> {
    // serde_json's default `Map` is a BTreeMap, so a round trip through
    // `Value` sorts every object.
    let v: Value = serde_json::to_value(value)?;
    serde_json::to_string_pretty(&v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Unsorted {
        zeta: u32,
        alpha: u32,
        mid: Inner,
    }

    #[derive(Serialize)]
    struct Inner {
        y: u8,
        b: u8,
    }

    #[test]
    fn keys_sorted_recursively() {
        let s = to_canonical_string(&Unsorted {
            zeta: 1,
            alpha: 2,
            mid: Inner { y: 3, b: 4 },
        })
        .unwrap();
        let a = s.find("alpha").unwrap();
        let m = s.find("mid").unwrap();
        let z = s.find("zeta").unwrap();
        assert!(a < m && m < z);
        assert!(s.find("\"b\"").unwrap() < s.find("\"y\"").unwrap());
    }
}
