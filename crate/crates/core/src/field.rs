use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jacobi::JacobiParams;

/// Ground field of the projective space: real, complex or quaternionic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    R,
    C,
    H,
}

impl Field {
    pub const ALL: [Field; 3] = [Field::R, Field::C, Field::H];

    /// Real dimension of the field: 1, 2 or 4.
    pub fn delta(self) -> usize {
        match self {
            Field::R => 1,
            Field::C => 2,
            Field::H => 4,
        }
    }

    /// Jacobi parameters `alpha = (delta(m-1)-2)/2`, `beta = (delta-2)/2` attached
    /// to the projective space of dimension `m - 1` over this field.
    pub fn jacobi_params(self, m: usize) -> Result<JacobiParams> {
        if m < 2 {
            return Err(Error::Parameter(format!("m must be at least 2, got {m}")));
        }
        let d = self.delta() as f64;
        JacobiParams::new((d * (m as f64 - 1.0) - 2.0) / 2.0, (d - 2.0) / 2.0)
    }

    /// Half the real codimension exponent, `delta(m-1)/2`, which is also `alpha + 1`.
    pub fn half_exponent(self, m: usize) -> f64 {
        self.delta() as f64 * (m as f64 - 1.0) / 2.0
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Field::R => "R",
            Field::C => "C",
            Field::H => "H",
        };
        f.write_str(s)
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "R" | "r" => Ok(Field::R),
            "C" | "c" => Ok(Field::C),
            "H" | "h" => Ok(Field::H),
            other => Err(Error::Parameter(format!(
                "unknown field {other:?}, expected one of R, C, H"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameters_per_field() {
        let r = Field::R.jacobi_params(3).unwrap();
        assert_eq!((r.alpha(), r.beta()), (0.0, -0.5));
        let c = Field::C.jacobi_params(3).unwrap();
        assert_eq!((c.alpha(), c.beta()), (1.0, 0.0));
        let h = Field::H.jacobi_params(3).unwrap();
        assert_eq!((h.alpha(), h.beta()), (3.0, 1.0));
        assert!(Field::C.jacobi_params(1).is_err());
    }

    #[test]
    fn parses_tags() {
        for f in Field::ALL {
            assert_eq!(f.to_string().parse::<Field>().unwrap(), f);
        }
        assert!("Q".parse::<Field>().is_err());
    }
}
