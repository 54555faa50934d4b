//! Divisor-class bookkeeping for standard cyclic coverings.
//!
//! A standard degree-n cyclic covering of a smooth surface is rebuilt from
//! building data: a line-bundle class L (for a fixed generator of the
//! character group) and branch divisors B_f indexed by epimorphisms
//! f: Z/n -> Z/m_f, subject to the identity
//!
//! ```text
//!   n L = sum over f of (n / m_f) * f_value * B_f.
//! ```
//!
//! The covering is non-normal over multiple components of the branch
//! divisors; the three-step normalization procedure rewrites the data so
//! that every branch component has multiplicity one, changing L and moving
//! components between epimorphisms but never changing the covering's
//! normalization.
//!
//! Divisor classes are formal integer combinations of named symbols.  A
//! symbol may stand for a non-primitive class (a degree-b plane curve, a
//! strict transform); the optional `classes` map records such expansions so
//! the building identity can be validated exactly.

use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// Formal integer combination of named divisor-class symbols.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DivisorClass {
    coeffs: BTreeMap<String, i64>,
}

impl DivisorClass {
    pub fn zero() -> Self {
        DivisorClass::default()
    }

    pub fn of(symbol: &str, mult: i64) -> Self {
        let mut dc = DivisorClass::zero();
        dc.add_symbol(symbol, mult);
        dc
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (String, i64)>) -> Self {
        let mut dc = DivisorClass::zero();
        for (s, m) in pairs {
            dc.add_symbol(&s, m);
        }
        dc
    }

    pub fn add_symbol(&mut self, symbol: &str, mult: i64) {
        if mult == 0 {
            return;
        }
        let e = self.coeffs.entry(symbol.to_string()).or_insert(0);
        *e += mult;
        if *e == 0 {
            self.coeffs.remove(symbol);
        }
    }

    pub fn coeff(&self, symbol: &str) -> i64 {
        self.coeffs.get(symbol).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &i64)> {
        self.coeffs.iter()
    }

    pub fn add(&self, other: &DivisorClass) -> DivisorClass {
        let mut out = self.clone();
        for (s, &m) in other.iter() {
            out.add_symbol(s, m);
        }
        out
    }

    pub fn sub(&self, other: &DivisorClass) -> DivisorClass {
        let mut out = self.clone();
        for (s, &m) in other.iter() {
            out.add_symbol(s, -m);
        }
        out
    }

    pub fn scale(&self, k: i64) -> DivisorClass {
        let mut out = DivisorClass::zero();
        if k == 0 {
            return out;
        }
        for (s, &m) in self.iter() {
            out.add_symbol(s, m * k);
        }
        out
    }

    /// All multiplicities nonnegative (a legal branch divisor).
    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|&m| m >= 0)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (s, &m) in &self.coeffs {
            if first {
                if m < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{}", if m < 0 { " - " } else { " + " })?;
            }
            let a = m.abs();
            if a == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{a} {s}")?;
            }
        }
        Ok(())
    }
}

/// An epimorphism Z/n -> Z/m, recorded by the modulus m and the image
/// `value` of the fixed generator (coprime to m).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Epimorphism {
    pub modulus: u64,
    pub value: u64,
}

impl Epimorphism {
    pub fn new(modulus: u64, value: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::BadEpimorphism(format!(
                "modulus {modulus} must be at least 2"
            )));
        }
        if value == 0 || value >= modulus {
            return Err(Error::BadEpimorphism(format!(
                "value {value} outside 1..{modulus}"
            )));
        }
        if crate::enriques::gcd(value, modulus) != 1 {
            return Err(Error::BadEpimorphism(format!(
                "value {value} does not generate Z/{modulus}"
            )));
        }
        Ok(Epimorphism { modulus, value })
    }

    /// Smallest nonnegative representative of the image of the k-th power
    /// of the generator.
    pub fn value_at(&self, k: u64) -> u64 {
        (k % self.modulus) * self.value % self.modulus
    }
}

/// Returns 0 when f(chi^i) + f(chi^j) < m_f as smallest nonnegative
/// representatives, else 1: the correction exponent in the ring structure
/// of the covering.
pub fn epsilon_factor(f: &Epimorphism, i: u64, j: u64) -> u8 {
    u8::from(f.value_at(i) + f.value_at(j) >= f.modulus)
}

/// A branch divisor attached to an epimorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub epi: Epimorphism,
    pub divisor: DivisorClass,
}

/// Building data of a standard cyclic covering of degree n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringData {
    pub n: u64,
    pub l: DivisorClass,
    pub branches: Vec<Branch>,
    /// Expansion of non-primitive symbols in a common reference basis,
    /// applied before checking the building identity.
    pub classes: BTreeMap<String, DivisorClass>,
}

impl CoveringData {
    /// Validates branch data and the building identity.
    pub fn new(
        n: u64,
        l: DivisorClass,
        branches: Vec<Branch>,
        classes: BTreeMap<String, DivisorClass>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("covering degree n >= 1".into()));
        }
        for b in &branches {
            if n % b.epi.modulus != 0 {
                return Err(Error::BadEpimorphism(format!(
                    "modulus {} does not divide n = {n}",
                    b.epi.modulus
                )));
            }
        }
        let data = CoveringData {
            n,
            l,
            branches,
            classes,
        };
        let residual = data.identity_residual();
        if !residual.is_zero() {
            return Err(Error::BuildingDataViolation(residual.to_string()));
        }
        Ok(data)
    }

    /// Substitutes recorded symbol expansions into a class.
    pub fn expand(&self, dc: &DivisorClass) -> DivisorClass {
        let mut out = DivisorClass::zero();
        for (s, &m) in dc.iter() {
            match self.classes.get(s) {
                Some(cls) => out = out.add(&cls.scale(m)),
                None => out.add_symbol(s, m),
            }
        }
        out
    }

    /// n L - sum of (n/m_f) f_value B_f, after symbol expansion.  Zero for
    /// legal building data.
    pub fn identity_residual(&self) -> DivisorClass {
        self.expand(&self.raw_residual())
    }

    /// The same residual without symbol expansion; each normalization step
    /// preserves it exactly.
    pub fn raw_residual(&self) -> DivisorClass {
        let mut acc = self.l.scale(self.n as i64);
        for b in &self.branches {
            let factor = (self.n / b.epi.modulus) as i64 * b.epi.value as i64;
            acc = acc.sub(&b.divisor.scale(factor));
        }
        acc
    }

    /// The class of the k-th character eigen-bundle:
    /// k L - sum over f of floor(k f_value / m_f) B_f, for 0 <= k <= n.
    /// At k = n this is the zero class modulo the building identity.
    pub fn character_bundle(&self, k: u64) -> Result<DivisorClass> {
        if k > self.n {
            return Err(Error::InvalidParameter(format!(
                "character index {k} exceeds n = {}",
                self.n
            )));
        }
        let mut acc = self.l.scale(k as i64);
        for b in &self.branches {
            let coeff = (k * b.epi.value / b.epi.modulus) as i64;
            acc = acc.sub(&b.divisor.scale(coeff));
        }
        Ok(acc)
    }

    fn sort_and_merge(&mut self) {
        let mut merged: BTreeMap<Epimorphism, DivisorClass> = BTreeMap::new();
        for b in self.branches.drain(..) {
            let entry = merged.entry(b.epi).or_insert_with(DivisorClass::zero);
            *entry = entry.add(&b.divisor);
        }
        self.branches = merged
            .into_iter()
            .filter(|(_, d)| !d.is_zero())
            .map(|(epi, divisor)| Branch { epi, divisor })
            .collect();
    }

    /// Runs the three-step normalization until every branch component has
    /// multiplicity one.  Branch divisors must be effective.
    ///
    /// Step 1 reduces a multiplicity r >= m_f by the Euclidean division
    /// r = s m_f + r'; step 2 (gcd(r, m_f) = e > 1) moves the component to
    /// the composed epimorphism onto Z/(m_f / e) with multiplicity r / e;
    /// step 3 (gcd(r, m_f) = 1) moves it, with multiplicity one, to the
    /// epimorphism rescaled by r.  Each step subtracts the matching
    /// multiple of the component from L, so the building identity is
    /// preserved verbatim.
    pub fn normalize(&self) -> Result<CoveringData> {
        for b in &self.branches {
            if !b.divisor.is_effective() {
                return Err(Error::InvalidParameter(format!(
                    "branch divisor {} has negative multiplicities",
                    b.divisor
                )));
            }
        }
        let mut data = self.clone();
        data.sort_and_merge();
        let mut budget = 100_000u64;
        loop {
            let Some((idx, symbol, r)) = data.first_multiple_component() else {
                break;
            };
            let epi = data.branches[idx].epi;
            let (m, v) = (epi.modulus, epi.value);
            if r >= m {
                // Step 1: Euclidean division r = s m + r'.
                let s = r / m;
                data.l = data
                    .l
                    .sub(&DivisorClass::of(&symbol, (v * s) as i64));
                data.branches[idx]
                    .divisor
                    .add_symbol(&symbol, -((s * m) as i64));
            } else {
                let e = crate::enriques::gcd(r, m);
                if e > 1 {
                    // Step 2: compose with Z/m -> Z/(m/e).
                    let m2 = m / e;
                    let v2 = v % m2;
                    let q1 = v / m2;
                    let r2 = r / e;
                    data.l = data
                        .l
                        .sub(&DivisorClass::of(&symbol, (q1 * r2) as i64));
                    data.branches[idx].divisor.add_symbol(&symbol, -(r as i64));
                    let target = Epimorphism::new(m2, v2)?;
                    data.push_component(target, &symbol, r2 as i64);
                } else {
                    // Step 3: rescale the epimorphism by r.
                    let v3 = (r * v) % m;
                    let q2 = (r * v) / m;
                    data.l = data.l.sub(&DivisorClass::of(&symbol, q2 as i64));
                    data.branches[idx].divisor.add_symbol(&symbol, -(r as i64));
                    let target = Epimorphism::new(m, v3)?;
                    data.push_component(target, &symbol, 1);
                }
            }
            data.sort_and_merge();
            budget -= 1;
            if budget == 0 {
                return Err(Error::BudgetExhausted("normalize"));
            }
        }
        debug_assert_eq!(
            self.raw_residual(),
            data.raw_residual(),
            "normalization must preserve the building identity"
        );
        Ok(data)
    }

    fn first_multiple_component(&self) -> Option<(usize, String, u64)> {
        for (idx, b) in self.branches.iter().enumerate() {
            for (s, &m) in b.divisor.iter() {
                if m >= 2 {
                    return Some((idx, s.clone(), m as u64));
                }
            }
        }
        None
    }

    fn push_component(&mut self, epi: Epimorphism, symbol: &str, mult: i64) {
        for b in &mut self.branches {
            if b.epi == epi {
                b.divisor.add_symbol(symbol, mult);
                return;
            }
        }
        self.branches.push(Branch {
            epi,
            divisor: DivisorClass::of(symbol, mult),
        });
    }
}

/// Building data of the n-cyclic multiple plane of a degree-b curve:
/// with beta = ceil(b/n),
///
/// ```text
///   n L = B + (beta n - b) H_inf,   L = beta H,
/// ```
///
/// over the symbols H, B, H_inf with B standing for b H and H_inf for H.
pub fn multiple_plane_data(b: u64, n: u64) -> Result<CoveringData> {
    if b == 0 || n == 0 {
        return Err(Error::InvalidParameter("need b, n >= 1".into()));
    }
    if n == 1 {
        // Degree-one covering: the plane itself, no branch data.
        return CoveringData::new(1, DivisorClass::zero(), vec![], BTreeMap::new());
    }
    let beta = b.div_ceil(n);
    let extra = (beta * n - b) as i64;
    let mut divisor = DivisorClass::of("B", 1);
    divisor.add_symbol("H_inf", extra);
    let mut classes = BTreeMap::new();
    classes.insert("B".to_string(), DivisorClass::of("H", b as i64));
    classes.insert("H_inf".to_string(), DivisorClass::of("H", 1));
    CoveringData::new(
        n,
        DivisorClass::of("H", beta as i64),
        vec![Branch {
            epi: Epimorphism::new(n, 1)?,
            divisor,
        }],
        classes,
    )
}

/// The k-th eigen-bundle class on the resolved plane:
///
/// ```text
///   ceil(kb/n) H - sum over singular points P of floor(k c_P / n) . E_P
/// ```
///
/// with `c_P` the exceptional multiplicities of the pulled-back branch
/// curve at P.  Exceptional symbols are named `E_<point>_<index>`.
pub fn resolved_plane_bundle(
    b: u64,
    n: u64,
    singular: &[(String, Vec<i64>)],
    k: u64,
) -> DivisorClass {
    let beta = b.div_ceil(n);
    let ceil_kb = (k * b).div_ceil(n) as i64;
    // The H-coefficient also reads beta k - floor(k (beta n - b) / n).
    let alt = (beta * k) as i64 - ((k * (beta * n - b)) / n) as i64;
    debug_assert_eq!(ceil_kb, alt);
    let mut out = DivisorClass::of("H", ceil_kb);
    for (name, coeffs) in singular {
        for (alpha, &c) in coeffs.iter().enumerate() {
            let floored = (k as i64 * c).div_euclid(n as i64);
            out.add_symbol(&format!("E_{name}_{}", alpha + 1), -floored);
        }
    }
    out
}
