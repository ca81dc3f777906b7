use num_bigint::BigInt;
use num_integer::Integer;

use crate::cones::sigma_decompose_with;
use crate::error::{Error, Result};
use crate::exactnum::rat::factorial;
use crate::exactnum::{bernoulli_poly, CoeffElem, CoeffRing, Matrix, Rat, Ring};
use crate::exec::Exec;
use serde::{Deserialize, Serialize};

use crate::pairing::{pair_combo, CoeffDoc, RingDoc, SchwartzFn};

/// A Dirichlet character modulo `f`, stored by its values on `0..f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirichletChar {
    modulus: u64,
    values: Vec<CoeffElem>,
}

fn units(f: u64) -> Vec<u64> {
    (1..=f).filter(|&a| a.gcd(&f) == 1).map(|a| a % f).collect()
}

impl DirichletChar {
    /// Validates that `values` (indexed by residue) is a character.
    pub fn new(modulus: u64, values: Vec<CoeffElem>) -> Result<Self> {
        if modulus == 0 || values.len() as u64 != modulus {
            return Err(Error::InvalidCharacter(format!(
                "{} values for modulus {modulus}",
                values.len()
            )));
        }
        let ring = values[0].ring().clone();
        let values: Vec<CoeffElem> = values.iter().map(|v| v.lift(&ring)).collect::<Result<_>>()?;
        let f = modulus;
        for a in 0..f {
            let unit = a.gcd(&f) == 1 || f == 1;
            if !unit && !values[a as usize].vanishes() {
                return Err(Error::InvalidCharacter(format!("nonzero value at {a}, not a unit mod {f}")));
            }
            if unit && values[a as usize].vanishes() {
                return Err(Error::InvalidCharacter(format!("zero value at the unit {a} mod {f}")));
            }
        }
        if values[(1 % f) as usize] != ring.one() {
            return Err(Error::InvalidCharacter("value at 1 is not 1".into()));
        }
        let us = units(f);
        for &a in &us {
            for &b in &us {
                let ab = (a * b % f) as usize;
                if values[ab] != values[a as usize].times(&values[b as usize]) {
                    return Err(Error::InvalidCharacter(format!("not multiplicative at {a} * {b} mod {f}")));
                }
            }
        }
        Ok(DirichletChar { modulus, values })
    }

    /// The principal character modulo `f`.
    pub fn principal(f: u64) -> Self {
        let q = CoeffRing::rationals();
        let values = (0..f)
            .map(|a| if a.gcd(&f) == 1 || f == 1 { q.one() } else { q.zero() })
            .collect();
        DirichletChar { modulus: f, values }
    }

    /// Builds a character from exponents: `a -> zeta_m^exps[a]`, zero where
    /// `exps[a]` is `None`.
    pub fn from_exponents(modulus: u64, m: u32, exps: &[Option<i64>]) -> Result<Self> {
        let ring = CoeffRing::new(m, None)?;
        let values = exps
            .iter()
            .map(|e| e.map_or_else(|| ring.zero(), |k| ring.zeta_pow(k)))
            .collect();
        DirichletChar::new(modulus, values)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn ring(&self) -> &CoeffRing {
        self.values[0].ring()
    }

    pub fn values(&self) -> &[CoeffElem] {
        &self.values
    }

    pub fn eval(&self, n: i64) -> CoeffElem {
        let f = self.modulus as i64;
        self.values[n.rem_euclid(f) as usize].clone()
    }

    pub fn is_trivial(&self) -> bool {
        let one = self.ring().one();
        units(self.modulus).iter().all(|&a| self.values[a as usize] == one)
    }

    /// Smallest `c | f` such that the character is trivial on units `= 1 mod c`.
    pub fn conductor(&self) -> u64 {
        let f = self.modulus;
        let one = self.ring().one();
        let us = units(f);
        (1..=f)
            .filter(|c| f.is_multiple_of(*c))
            .find(|&c| us.iter().filter(|&&a| a % c == 1 % c).all(|&a| self.values[a as usize] == one))
            .unwrap_or(f)
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus
    }

    /// Whether `chi(-1) = -1`.
    pub fn is_odd(&self) -> bool {
        self.eval(-1) == self.ring().one().negated()
    }

    /// The same character read modulo a multiple `big` of the modulus.
    pub fn induce(&self, big: u64) -> Result<DirichletChar> {
        if !big.is_multiple_of(self.modulus) {
            return Err(Error::InvalidCharacter(format!(
                "{big} is not a multiple of the modulus {}",
                self.modulus
            )));
        }
        let values = (0..big)
            .map(|a| {
                if a.gcd(&big) == 1 || big == 1 {
                    self.values[(a % self.modulus) as usize].clone()
                } else {
                    self.ring().zero()
                }
            })
            .collect();
        Ok(DirichletChar { modulus: big, values })
    }

    /// The character as a Schwartz function on `Q` with period `f` and support `Z`.
    pub fn to_schwartz(&self) -> SchwartzFn {
        SchwartzFn::from_fn(1, 1, self.modulus, self.ring(), |c| self.values[c[0] as usize].clone())
            .expect("valid shape")
    }
}

fn mul_order(a: u64, f: u64) -> u64 {
    let mut x = a % f;
    let mut k = 1;
    while x != 1 % f {
        x = x * a % f;
        k += 1;
    }
    k
}

/// Every Dirichlet character modulo `f`, over `Q(zeta_e)` with `e` the exponent
/// of `(Z/f)^*`. Order is deterministic (principal character first).
pub fn all_characters(f: u64) -> Result<Vec<DirichletChar>> {
    if f == 0 {
        return Err(Error::InvalidCharacter("modulus 0".into()));
    }
    if f == 1 {
        return Ok(vec![DirichletChar::principal(1)]);
    }
    let us = units(f);
    let e = us.iter().fold(1u64, |acc, &a| acc.lcm(&mul_order(a, f)));
    // Greedy generating set.
    let mut gens: Vec<u64> = Vec::new();
    let mut span: Vec<u64> = vec![1];
    for &a in &us {
        if span.contains(&a) {
            continue;
        }
        gens.push(a);
        let mut grown = span.clone();
        let mut frontier = span.clone();
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = x * g % f;
                if !grown.contains(&y) {
                    grown.push(y);
                    frontier.push(y);
                }
            }
        }
        span = grown;
    }
    let orders: Vec<u64> = gens.iter().map(|&g| mul_order(g, f)).collect();
    let mut out = Vec::new();
    let mut choice = vec![0u64; gens.len()];
    loop {
        // chi(g_i) = zeta_e^(choice_i * e / ord_i); extend along words and
        // keep the assignment only if it is well defined.
        let mut exps: Vec<Option<i64>> = vec![None; f as usize];
        exps[1] = Some(0);
        let mut frontier = vec![1u64];
        let mut ok = true;
        while let Some(x) = frontier.pop() {
            let ex = exps[x as usize].expect("visited");
            for (i, &g) in gens.iter().enumerate() {
                let y = (x * g % f) as usize;
                let v = (ex + (choice[i] * (e / orders[i])) as i64).rem_euclid(e as i64);
                match exps[y] {
                    Some(w) if w != v => ok = false,
                    Some(_) => {}
                    None => {
                        exps[y] = Some(v);
                        frontier.push(y as u64);
                    }
                }
            }
        }
        if ok {
            out.push(DirichletChar::from_exponents(f, e as u32, &exps)?);
        }
        let mut i = 0;
        loop {
            if i == gens.len() {
                return Ok(out);
            }
            choice[i] += 1;
            if choice[i] < orders[i] {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// `L(chi, 1 - r) = -(f^(r-1) / r) sum_{n=1}^{f} chi(n) B_r(n / f)`.
pub fn dirichlet_l_closed(chi: &DirichletChar, r: u32) -> Result<CoeffElem> {
    if r == 0 {
        return Err(Error::InvalidCharacter("r must be at least 1".into()));
    }
    let f = chi.modulus();
    let fr = Rat::from_integer(BigInt::from(f));
    let mut acc = chi.ring().zero();
    for n in 1..=f {
        let c = chi.eval(n as i64);
        if c.vanishes() {
            continue;
        }
        let b = bernoulli_poly(r, &(Rat::from_integer(BigInt::from(n)) / &fr));
        acc = acc.plus(&c.scale(&b));
    }
    let k = -num_traits::pow(fr, (r - 1) as usize) / Rat::from_integer(BigInt::from(r));
    Ok(acc.scale(&k))
}

/// `L(chi, 1 - r)` through the one-dimensional cone pipeline: decompose the
/// cocycle at the identity, pair with `chi`, and read off the coefficient of
/// `z^(r-1)` times `(r-1)!`. Requires `r - 1 <= dmax`.
pub fn dirichlet_l_via_cocycle(chi: &DirichletChar, r: u32, dmax: u32) -> Result<CoeffElem> {
    if r == 0 {
        return Err(Error::InvalidCharacter("r must be at least 1".into()));
    }
    if r - 1 > dmax {
        return Err(Error::TruncationTooSmall { have: dmax + 1, need: r });
    }
    let combo = sigma_decompose_with(&[Matrix::identity(1)], Exec::Sequential)?;
    let q = pair_combo(&combo, &chi.to_schwartz(), dmax, Exec::Sequential)?;
    let k = Rat::from_integer(factorial(r - 1));
    let coeff = match q.reduce_to_power_series() {
        Ok(s) => s.coeff(&[r - 1])?,
        Err(Error::NotDivisible { .. }) => q.laurent_coeff_1d(i64::from(r) - 1)?,
        Err(e) => return Err(e),
    };
    Ok(coeff.scale(&k))
}

/// `1 - chi(p) p^(r-1)` for every prime `p` dividing `big` but not the
/// modulus: the factor relating values at an imprimitive modulus.
pub fn euler_correction(chi: &DirichletChar, big: u64, r: u32) -> CoeffElem {
    let mut acc = chi.ring().one();
    let mut m = big;
    let mut p = 2;
    while m > 1 {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            if !chi.modulus().is_multiple_of(p) {
                let pr = Rat::from_integer(num_traits::pow(BigInt::from(p), (r - 1) as usize));
                let factor = chi.ring().one().minus(&chi.eval(p as i64).scale(&pr));
                acc = acc.times(&factor);
            }
        }
        p += 1;
    }
    acc
}

/// A character as JSON. With `values` (one per residue `0..modulus`) the
/// table is validated; otherwise `index` picks from [`all_characters`], the
/// principal character being index 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharDoc {
    #[serde(default = "one_u64")]
    pub modulus: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<CoeffDoc>>,
}

fn one_u64() -> u64 {
    1
}

impl Default for CharDoc {
    /// The trivial character, giving the Riemann zeta function.
    fn default() -> Self {
        CharDoc { modulus: 1, index: None, ring: None, values: None }
    }
}

impl CharDoc {
    pub fn to_char(&self) -> Result<DirichletChar> {
        match &self.values {
            Some(vs) => {
                let ring = self.ring.clone().unwrap_or_default().to_ring()?;
                let values = vs.iter().map(|v| v.to_elem(&ring)).collect::<Result<Vec<_>>>()?;
                DirichletChar::new(self.modulus, values)
            }
            None => {
                let all = all_characters(self.modulus)?;
                let i = self.index.unwrap_or(0);
                all.get(i).cloned().ok_or_else(|| {
                    Error::InvalidCharacter(format!(
                        "index {i} but there are {} characters mod {}",
                        all.len(),
                        self.modulus
                    ))
                })
            }
        }
    }

    pub fn of(chi: &DirichletChar) -> Self {
        CharDoc {
            modulus: chi.modulus(),
            index: None,
            ring: Some(RingDoc::of(chi.ring())),
            values: Some(chi.values().iter().map(CoeffDoc::of).collect()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn chi3() -> DirichletChar {
        let q = CoeffRing::rationals();
        DirichletChar::new(3, vec![q.zero(), q.one(), q.from_int(-1)]).unwrap()
    }

    #[test]
    fn validation() {
        let q = CoeffRing::rationals();
        assert!(DirichletChar::new(3, vec![q.zero(), q.one(), q.one()]).is_ok());
        assert!(DirichletChar::new(3, vec![q.one(), q.one(), q.one()]).is_err());
        assert!(DirichletChar::new(5, vec![q.zero(), q.one(), q.from_int(-1), q.one(), q.from_int(-1)]).is_err());
        assert!(DirichletChar::new(5, vec![q.zero(), q.one(), q.from_int(-1), q.from_int(-1), q.one()]).is_ok());
    }

    #[test]
    fn character_groups_have_the_right_size() {
        for (f, phi) in [(1, 1), (2, 1), (3, 2), (4, 2), (5, 4), (7, 6), (8, 4), (9, 6), (12, 4)] {
            let all = all_characters(f).unwrap();
            assert_eq!(all.len(), phi, "modulus {f}");
            assert!(all[0].is_trivial());
            for (i, a) in all.iter().enumerate() {
                for b in &all[i + 1..] {
                    assert_ne!(a, b);
                }
            }
        }
        // mod 8 every character is real; conductors 1, 4, 8, 8
        let mut conds: Vec<u64> = all_characters(8).unwrap().iter().map(|c| c.conductor()).collect();
        conds.sort();
        assert_eq!(conds, vec![1, 4, 8, 8]);
    }

    #[test]
    fn json_forms() {
        let doc: CharDoc = serde_json::from_str(r#"{"modulus": 3, "values": [0, 1, -1]}"#).unwrap();
        assert_eq!(doc.to_char().unwrap(), chi3());
        let doc: CharDoc = serde_json::from_str(r#"{"modulus": 4, "index": 1}"#).unwrap();
        assert!(doc.to_char().unwrap().is_odd());
        let doc: CharDoc = serde_json::from_str(r#"{"modulus": 4, "index": 2}"#).unwrap();
        assert!(doc.to_char().is_err());
        let back: CharDoc = serde_json::from_str(&serde_json::to_string(&CharDoc::of(&chi3())).unwrap()).unwrap();
        assert_eq!(back.to_char().unwrap(), chi3());
    }

    #[test]
    fn closed_form_values() {
        let one = DirichletChar::principal(1);
        assert_eq!(dirichlet_l_closed(&one, 1).unwrap().as_rat().unwrap(), rat(-1, 2));
        assert_eq!(dirichlet_l_closed(&one, 2).unwrap().as_rat().unwrap(), rat(-1, 12));
        assert_eq!(dirichlet_l_closed(&one, 4).unwrap().as_rat().unwrap(), rat(1, 120));
        assert_eq!(dirichlet_l_closed(&chi3(), 1).unwrap().as_rat().unwrap(), rat(1, 3));
    }

    #[test]
    fn routes_agree_on_small_examples() {
        for chi in [DirichletChar::principal(1), chi3()] {
            for r in 1..=3 {
                assert_eq!(
                    dirichlet_l_via_cocycle(&chi, r, 4).unwrap(),
                    dirichlet_l_closed(&chi, r).unwrap(),
                    "{chi:?} r={r}"
                );
            }
        }
        assert!(matches!(
            dirichlet_l_via_cocycle(&chi3(), 5, 2),
            Err(Error::TruncationTooSmall { .. })
        ));
    }
}
