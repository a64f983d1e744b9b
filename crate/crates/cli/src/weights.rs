//! Symbolic names for weights, used only when rendering.

use nahm_core::parse::parse_rational_q;
use num_rational::BigRational;
use num_traits::Zero;

#[derive(Clone, Debug, Default)]
pub struct WeightNames {
    table: Vec<(String, BigRational)>,
}

/// Parses `name=value` with an exact rational value.
pub fn parse_pair(s: &str) -> Result<(String, BigRational), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("expected name=value, got {:?}", s))?;
    let name = name.trim();
    if name.is_empty() {
        return Err("empty weight name".into());
    }
    let value = parse_rational_q(value.trim()).map_err(|e| e.to_string())?;
    Ok((name.to_string(), value))
}

impl WeightNames {
    pub fn new(table: Vec<(String, BigRational)>) -> Self {
        WeightNames { table }
    }

    /// A name for `w`: an entry of the table, or a small multiple or
    /// fraction of one.
    pub fn symbol(&self, w: &BigRational) -> Option<String> {
        if let Some((n, _)) = self.table.iter().find(|(_, v)| v == w) {
            return Some(n.clone());
        }
        for k in 2..=12i64 {
            let k_q = BigRational::from_integer(k.into());
            for (n, v) in self.table.iter().filter(|(_, v)| !v.is_zero()) {
                if &(v / &k_q) == w {
                    return Some(format!("{}/{}", n, k));
                }
                if &(v * &k_q) == w {
                    return Some(format!("{}*{}", k, n));
                }
            }
        }
        None
    }

    pub fn render(&self, w: &BigRational) -> String {
        match self.symbol(w) {
            Some(s) => format!("{} (= {})", s, w),
            None => w.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn names_multiples_and_fractions() {
        let names = WeightNames::new(vec![parse_pair("a=1/5").unwrap(), parse_pair("b = 1/3").unwrap()]);
        assert_eq!(names.symbol(&q(1, 5)).as_deref(), Some("a"));
        assert_eq!(names.symbol(&q(1, 10)).as_deref(), Some("a/2"));
        assert_eq!(names.symbol(&q(2, 3)).as_deref(), Some("2*b"));
        assert_eq!(names.symbol(&q(3, 7)), None);
        assert_eq!(names.render(&q(1, 3)), "b (= 1/3)");
    }

    #[test]
    fn rejects_malformed_pairs() {
        assert!(parse_pair("a").is_err());
        assert!(parse_pair("=1/2").is_err());
        assert!(parse_pair("a=1//2").is_err());
    }
}
