//! Named real and complex groups resolved to their split Lie type.
//!
//! Only the split type matters for the growth constant, so every real form
//! of a given complex group maps to the same entry. Forms of `D4` can carry
//! an explicit marker `1D4`, `2D4`, `3D4` or `6D4` for the field-degree
//! classification.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::real::Real;
use crate::rootsys::{gamma_of_type, ratio_r, Family, LieType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Field {
    Real,
    Complex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupDescriptor {
    /// The name as given, trimmed.
    pub name: String,
    pub field: Option<Field>,
    /// Split type, or the twisted type for raw twisted input.
    pub lie_type: LieType,
    /// `1`, `2`, `3` or `6` for marked forms of `D4`.
    pub d4_form: Option<u8>,
}

/// Fixed table of recognized descriptor shapes, for error messages and
/// the `gamma` command's help.
pub const CATALOG: &[(&str, &str)] = &[
    ("SL(n,R), SL(n,C), SLn(R)", "A_{n-1}, n >= 2"),
    ("SU(p,q)", "A_{p+q-1}"),
    (
        "SO(n,R), SO(n,C), SO(p,q)",
        "B_{(n-1)/2} for odd n >= 3, D_{n/2} for even n >= 6",
    ),
    ("Sp(2n,R), Sp(2n,C), Sp(p,q)", "C_n, respectively C_{p+q}"),
    (
        "E6(R), E7(C), F4(R), G2(C), ...",
        "the exceptional type named",
    ),
    (
        "D4(C)",
        "D4, flagged: lattices may come from triality forms",
    ),
    ("raw types: A1, B3, 2E6, 3D4, 6D4, ...", "as written"),
];

fn catalog_listing() -> String {
    CATALOG
        .iter()
        .map(|(k, v)| format!("{k} -> {v}"))
        .collect::<Vec<_>>()
        .join("; ")
}

fn unknown(name: &str) -> Error {
    Error::validation(format!(
        "unknown group '{name}'; known forms: {}",
        catalog_listing()
    ))
}

fn parse_field(s: &str) -> Option<Field> {
    match s.trim() {
        "R" | "r" | "ℝ" => Some(Field::Real),
        "C" | "c" | "ℂ" => Some(Field::Complex),
        _ => None,
    }
}

/// `(head, args)` for names like `SO(2,3)`; `SL3(R)` gives `("SL3", ["R"])`.
fn split_call(s: &str) -> Option<(&str, Vec<&str>)> {
    let open = s.find('(')?;
    let inner = s[open + 1..].strip_suffix(')')?;
    Some((&s[..open], inner.split(',').map(str::trim).collect()))
}

fn orthogonal(n: usize, name: &str) -> Result<LieType> {
    match n {
        3 => LieType::untwisted(Family::A, 1),
        n if n >= 5 && n % 2 == 1 => LieType::untwisted(Family::B, (n - 1) / 2),
        6 => LieType::untwisted(Family::A, 3),
        n if n >= 8 && n % 2 == 0 => LieType::untwisted(Family::D, n / 2),
        _ => Err(Error::validation(format!(
            "'{name}': SO(n) is simple only for n = 3 or n >= 5"
        ))),
    }
}

impl FromStr for GroupDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let name = s.trim();
        let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
        // marked D4 forms, including the sextic one that LieType lacks
        let marker = compact.trim_start_matches('^');
        for (prefix, form) in [
            ("1D4", 1u8),
            ("2D4", 2),
            ("3D4", 3),
            ("6D4", 6),
            ("¹D₄", 1),
            ("²D₄", 2),
            ("³D₄", 3),
            ("⁶D₄", 6),
        ] {
            if marker == prefix {
                let twist = if form == 6 { 1 } else { form };
                return Ok(GroupDescriptor {
                    name: name.to_string(),
                    field: None,
                    lie_type: LieType::new(Family::D, 4, twist)?,
                    d4_form: Some(form),
                });
            }
        }
        if let Some((head, args)) = split_call(&compact) {
            let upper = head.to_ascii_uppercase();
            let nums: Vec<usize> = args.iter().filter_map(|a| a.parse().ok()).collect();
            let field = args.last().and_then(|a| parse_field(a));
            let family_degree = |prefix: &str| -> Option<usize> {
                upper
                    .strip_prefix(prefix)
                    .filter(|r| !r.is_empty())
                    .and_then(|r| r.parse().ok())
            };
            let lie_type = if upper == "SL" && args.len() == 2 && field.is_some() && nums.len() == 1
            {
                sl(nums[0], name)?
            } else if let (Some(d), 1, Some(_)) = (family_degree("SL"), args.len(), field) {
                sl(d, name)?
            } else if upper == "SU" && nums.len() == 2 {
                sl(nums[0] + nums[1], name)?
            } else if upper == "SO" && args.len() == 2 && field.is_some() && nums.len() == 1 {
                orthogonal(nums[0], name)?
            } else if upper == "SO" && nums.len() == 2 {
                orthogonal(nums[0] + nums[1], name)?
            } else if upper == "SP" && args.len() == 2 && field.is_some() && nums.len() == 1 {
                if nums[0] < 2 || nums[0] % 2 == 1 {
                    return Err(Error::validation(format!(
                        "'{name}': Sp(2n) needs an even degree >= 2"
                    )));
                }
                symplectic(nums[0] / 2)?
            } else if upper == "SP" && nums.len() == 2 {
                symplectic(nums[0] + nums[1])?
            } else if let (1, Some(_)) = (args.len(), field) {
                let t: LieType = head.parse().map_err(|_| unknown(name))?;
                if t.is_twisted() {
                    return Err(Error::validation(format!(
                        "'{name}': give the split type with a field"
                    )));
                }
                t
            } else {
                return Err(unknown(name));
            };
            return Ok(GroupDescriptor {
                name: name.to_string(),
                field,
                lie_type,
                d4_form: None,
            });
        }
        let lie_type: LieType = compact.parse().map_err(|_| unknown(name))?;
        Ok(GroupDescriptor {
            name: name.to_string(),
            field: None,
            lie_type,
            d4_form: None,
        })
    }
}

fn sl(d: usize, name: &str) -> Result<LieType> {
    if d < 2 {
        return Err(Error::validation(format!("'{name}': SL(d) needs d >= 2")));
    }
    LieType::untwisted(Family::A, d - 1)
}

fn symplectic(n: usize) -> Result<LieType> {
    // Sp(2) = SL(2)
    if n == 1 {
        LieType::untwisted(Family::A, 1)
    } else {
        LieType::untwisted(Family::C, n)
    }
}

impl GroupDescriptor {
    pub fn split_type(&self) -> LieType {
        self.lie_type.untwisted_form()
    }

    /// Set for complex `D4`, whose lattices include the triality forms.
    pub fn warning(&self) -> Option<String> {
        let t = self.split_type();
        (t.family() == Family::D && t.rank() == 4 && self.field == Some(Field::Complex)).then(|| {
            "lattices in D4(C) can be forms of type 6D4, for which the growth constant is known only conditionally on GRH"
                .to_string()
        })
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupGamma {
    pub split_type: LieType,
    pub r: Rational64,
    pub gamma: Real,
    pub warning: Option<String>,
}

pub fn gamma_of_group(g: &GroupDescriptor, digits: u32) -> GroupGamma {
    let t = g.split_type();
    GroupGamma {
        split_type: t,
        r: ratio_r(t),
        gamma: gamma_of_type(t, digits),
        warning: g.warning(),
    }
}

/// Degrees `[E:k]` of a Galois extension over which the form becomes inner.
pub fn inner_form_degree(g: &GroupDescriptor) -> Result<BTreeSet<u8>> {
    let t = g.lie_type;
    if let Some(form) = g.d4_form {
        if t.family() != Family::D || t.rank() != 4 {
            return Err(Error::validation(format!("D4 form marker on {t}")));
        }
        return Ok(BTreeSet::from([form]));
    }
    Ok(BTreeSet::from([t.twist()]))
}

/// Every degree a form of the given split type can need.
pub fn admissible_degrees(t: LieType) -> BTreeSet<u8> {
    let t = t.untwisted_form();
    if t.family() == Family::D && t.rank() == 4 {
        BTreeSet::from([1, 2, 3, 6])
    } else if t.admissible_twists().contains(&2) {
        BTreeSet::from([1, 2])
    } else {
        BTreeSet::from([1])
    }
}

/// One representative name per catalog shape, used by tests and self-checks.
pub fn catalog_samples() -> Vec<&'static str> {
    vec![
        "SL(2,R)", "SL2(C)", "SL(5,R)", "SU(2,1)", "SU(3,3)", "SO(3,R)", "SO(2,3)", "SO(7,C)",
        "SO(6,R)", "SO(4,4)", "SO(10,C)", "Sp(2,R)", "Sp(4,R)", "Sp(2,1)", "Sp(8,C)", "E6(R)",
        "E7(C)", "E8(R)", "F4(R)", "G2(C)", "D4(C)", "F4", "2E6", "3D4", "6D4",
    ]
}
