use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::QcsError;
use crate::fock::{mean_photon, FockVector};
use crate::measures;
use crate::witnesses;

/// A witness or measure that can be tabulated over a sweep.
///
/// Text form is `name` or `name:order`, e.g. `hoa:2`, `hos:4`, `a3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Quantity {
    /// `D(l)`
    Hoa(usize),
    /// Hong-Mandel witness `S(n)`
    Hos(usize),
    /// raw `<(Delta X)^n>`
    HmMoment(usize),
    /// `D_h(l-1)`
    Hosps(usize),
    A3,
    /// `B(n)`
    Klyshko(usize),
    NegativityPaper,
    NegativityExact,
    ConcurrencePaper,
    ConcurrenceExact,
    Anticlassicality,
    AnticlassicalityExclVacuum,
    MeanPhoton,
    /// `p_n`
    Probability(usize),
}

/// One evaluated cell; `A3` with degenerate moment matrices is kept as a
/// sentinel rather than aborting a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Value(f64),
    Singular,
}

impl Quantity {
    /// Every witness and measure at its customary orders.
    pub fn full_set() -> Vec<Quantity> {
        use Quantity::*;
        let mut v = vec![
            Hoa(1),
            Hoa(2),
            Hoa(3),
            Hoa(4),
            Hos(2),
            Hos(4),
            Hos(6),
            Hosps(2),
            Hosps(3),
            Hosps(4),
            A3,
        ];
        v.extend((0..3).map(Klyshko));
        v.extend([
            NegativityPaper,
            NegativityExact,
            ConcurrencePaper,
            ConcurrenceExact,
            Anticlassicality,
            AnticlassicalityExclVacuum,
            MeanPhoton,
        ]);
        v
    }

    /// Parses a comma-separated list; `all` expands to [`Quantity::full_set`].
    pub fn parse_list(s: &str) -> Result<Vec<Quantity>, String> {
        let mut out = Vec::new();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            if item == "all" {
                out.extend(Quantity::full_set());
            } else {
                out.push(item.parse()?);
            }
        }
        if out.is_empty() {
            return Err("no quantities given".into());
        }
        Ok(out)
    }

    pub fn evaluate(&self, state: &FockVector) -> Result<Cell, QcsError> {
        use Quantity::*;
        let value = match *self {
            Hoa(l) => witnesses::hoa(state, l),
            Hos(n) => witnesses::hos_witness(state, n)?,
            HmMoment(n) => witnesses::hm_quadrature_moment(state, n)?,
            Hosps(l) => witnesses::hosps(state, l),
            A3 => match witnesses::agarwal_tara(state) {
                Ok(v) => v,
                Err(QcsError::SingularMomentMatrix { .. }) => return Ok(Cell::Singular),
                Err(e) => return Err(e),
            },
            Klyshko(n) => witnesses::klyshko(state, n),
            NegativityPaper => measures::negativity_potential_paper(state),
            NegativityExact => measures::log_negativity_exact(&measures::beamsplit(state)),
            ConcurrencePaper => measures::concurrence_paper(state),
            ConcurrenceExact => measures::concurrence_exact(&measures::beamsplit(state)),
            Anticlassicality => measures::anticlassicality(state, false)?.0,
            AnticlassicalityExclVacuum => measures::anticlassicality(state, true)?.0,
            MeanPhoton => mean_photon(state),
            Probability(n) => state.amp(n).norm_sqr(),
        };
        Ok(Cell::Value(value))
    }
}

impl FromStr for Quantity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use Quantity::*;
        let (name, order) = match s.split_once(':') {
            Some((n, o)) => {
                let o = o
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| format!("bad order in quantity `{s}`"))?;
                (n.trim(), Some(o))
            }
            None => (s.trim(), None),
        };
        let needs = |o: Option<usize>| {
            o.ok_or_else(|| format!("quantity `{name}` needs an order, e.g. `{name}:2`"))
        };
        let bare = |q: Quantity| match order {
            None => Ok(q),
            Some(_) => Err(format!("quantity `{name}` takes no order")),
        };
        match name {
            "hoa" => {
                let l = needs(order)?;
                if l == 0 {
                    return Err("hoa order must be >= 1".into());
                }
                Ok(Hoa(l))
            }
            "hos" | "hm_moment" => {
                let n = needs(order)?;
                if n < 2 || !n.is_multiple_of(2) || n > witnesses::MAX_QUADRATURE_ORDER {
                    return Err(format!("{name} order must be even and in 2..=8, got {n}"));
                }
                Ok(if name == "hos" { Hos(n) } else { HmMoment(n) })
            }
            "hosps" => {
                let l = needs(order)?;
                if l == 0 {
                    return Err("hosps order must be >= 1".into());
                }
                Ok(Hosps(l))
            }
            "klyshko" => Ok(Klyshko(needs(order)?)),
            "p" => Ok(Probability(needs(order)?)),
            "a3" => bare(A3),
            "negativity_paper" => bare(NegativityPaper),
            "negativity_exact" => bare(NegativityExact),
            "concurrence_paper" => bare(ConcurrencePaper),
            "concurrence_exact" => bare(ConcurrenceExact),
            "anticlassicality" => bare(Anticlassicality),
            "anticlassicality_excl_vacuum" | "a1" => bare(AnticlassicalityExclVacuum),
            "mean_photon" => bare(MeanPhoton),
            other => Err(format!("unknown quantity `{other}`")),
        }
    }
}

impl TryFrom<String> for Quantity {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Quantity> for String {
    fn from(q: Quantity) -> String {
        q.to_string()
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Quantity::*;
        match *self {
            Hoa(l) => write!(f, "hoa:{l}"),
            Hos(n) => write!(f, "hos:{n}"),
            HmMoment(n) => write!(f, "hm_moment:{n}"),
            Hosps(l) => write!(f, "hosps:{l}"),
            A3 => f.write_str("a3"),
            Klyshko(n) => write!(f, "klyshko:{n}"),
            NegativityPaper => f.write_str("negativity_paper"),
            NegativityExact => f.write_str("negativity_exact"),
            ConcurrencePaper => f.write_str("concurrence_paper"),
            ConcurrenceExact => f.write_str("concurrence_exact"),
            Anticlassicality => f.write_str("anticlassicality"),
            AnticlassicalityExclVacuum => f.write_str("anticlassicality_excl_vacuum"),
            MeanPhoton => f.write_str("mean_photon"),
            Probability(n) => write!(f, "p:{n}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form_round_trips() {
        for q in Quantity::full_set()
            .into_iter()
            .chain([Quantity::HmMoment(8), Quantity::Probability(3)])
        {
            assert_eq!(q.to_string().parse::<Quantity>().unwrap(), q);
        }
        assert_eq!(
            "a1".parse::<Quantity>().unwrap(),
            Quantity::AnticlassicalityExclVacuum
        );
    }

    #[test]
    fn rejects_bad_identifiers() {
        for bad in [
            "hoa", "hoa:0", "hos:3", "hos:10", "a3:1", "wigner", "hoa:x", "hosps:0",
        ] {
            assert!(bad.parse::<Quantity>().is_err(), "{bad}");
        }
        assert!(Quantity::parse_list("").is_err());
        assert_eq!(Quantity::parse_list("hoa:1, a3").unwrap().len(), 2);
        assert_eq!(Quantity::parse_list("all").unwrap(), Quantity::full_set());
    }

    #[test]
    fn singular_a3_becomes_sentinel() {
        let one = FockVector::fock(1, 3).unwrap();
        assert_eq!(Quantity::A3.evaluate(&one).unwrap(), Cell::Singular);
        assert_eq!(Quantity::Hoa(1).evaluate(&one).unwrap(), Cell::Value(-1.0));
    }
}
