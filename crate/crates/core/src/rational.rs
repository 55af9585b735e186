//! Exact rationals, serialized as `"p/q"` strings.

use num_rational::Ratio;
use serde::Serializer;

pub type Rational = Ratio<i128>;

pub fn int(v: impl Into<i128>) -> Rational {
    Rational::from_integer(v.into())
}

pub fn frac(p: impl Into<i128>, q: impl Into<i128>) -> Rational {
    Rational::new(p.into(), q.into())
}

/// `C(m, 2)` as a rational; accepts non-integral `m`.
pub fn choose2(m: Rational) -> Rational {
    m * (m - int(1)) / int(2)
}

pub fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub(crate) fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(r)
}

pub(crate) fn serialize_opt<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.collect_str(r),
        None => s.serialize_none(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_forms() {
        assert_eq!(frac(4, 66).to_string(), "2/33");
        assert_eq!(int(114).to_string(), "114");
        assert_eq!(frac(-3, 6).to_string(), "-1/2");
        assert_eq!(choose2(int(12)), int(66));
        assert_eq!(choose2(frac(5, 2)), frac(15, 8));
    }
}
