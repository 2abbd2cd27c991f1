//! The first Mayr-Meyer ideal J(1,d) and the ideals around its primary decomposition.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Coeff, FieldSpec};
use crate::ideal::Ideal;
use crate::monomial::{MonomialOrder, VarSet};
use crate::parse::parse_polynomial_list;
use crate::poly::{Bidegree, Polynomial};
use crate::ring::{Ring, RingSpec};

pub const FULL_VARS: [&str; 12] = ["s", "f", "s1", "f1", "c1", "c2", "c3", "c4", "b1", "b2", "b3", "b4"];
pub const SHORT_VARS: [&str; 10] = ["s", "f", "c1", "c2", "c3", "c4", "b1", "b2", "b3", "b4"];
/// Variable order `s > f > c4 > c3 > b4 > b3` for the lex leading-term check.
pub const LEMMA_VARS: [&str; 6] = ["s", "f", "c4", "c3", "b4", "b3"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    /// All 12 variables and all 11 generators.
    Full,
    /// Drops `s1, f1` and the two generators that define them.
    Shortened,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// The root-of-unity family replaced by the single generator `b1^d - b2^d`.
    Combined,
    /// One component per `d'`-th root of unity `alpha`.
    Split,
}

/// `d = d' * i` with `i` the largest power of the characteristic dividing `d`.
pub fn char_split(d: u32, field: FieldSpec) -> (u32, u32) {
    let p = field.characteristic();
    if p == 0 {
        return (d, 1);
    }
    let (mut dp, mut i) = (d as u64, 1u64);
    while dp % p == 0 {
        dp /= p;
        i *= p;
    }
    (dp as u32, i as u32)
}

#[derive(Clone, Debug)]
pub struct Component {
    /// Row of the decomposition, 1..=6.
    pub row: u8,
    pub alpha: Option<Coeff>,
    pub ideal: Ideal,
}

#[derive(Clone, Debug)]
pub struct MayrMeyer {
    pub d: u32,
    pub d_prime: u32,
    pub i: u32,
    pub field: FieldSpec,
    pub profile: Profile,
    ring: Ring,
}

impl MayrMeyer {
    pub fn new(d: u32, field: FieldSpec, profile: Profile) -> Result<Self> {
        if d == 0 {
            return Err(Error::Unsupported("d must be positive".into()));
        }
        let vars: &[&str] = match profile {
            Profile::Full => &FULL_VARS,
            Profile::Shortened => &SHORT_VARS,
        };
        let (d_prime, i) = char_split(d, field);
        Ok(MayrMeyer {
            d,
            d_prime,
            i,
            field,
            profile,
            ring: RingSpec::new(vars, field, MonomialOrder::GrevLex)?,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn polys(&self, text: &str) -> Vec<Polynomial> {
        parse_polynomial_list(text, &self.ring).expect("well-formed built-in ideal")
    }

    pub fn poly(&self, text: &str) -> Polynomial {
        self.polys(text).pop().expect("one polynomial")
    }

    fn ideal(&self, text: &str) -> Ideal {
        Ideal::new(&self.ring, self.polys(text)).expect("same ring")
    }

    /// The generators every component shares in the full profile.
    fn head(&self) -> &'static str {
        match self.profile {
            Profile::Full => "s1 - s*c1, f1 - s*c4, ",
            Profile::Shortened => "",
        }
    }

    fn vars(&self, names: &[&str]) -> VarSet {
        self.ring.var_set(names).expect("known variables")
    }

    /// Generators of J(1,e) in this ring (11 in the full profile, 9 shortened).
    pub fn generators_of_degree(&self, e: u32) -> Vec<Polynomial> {
        self.polys(&format!(
            "{}c1*(s - f*b1^{e}), c2*(s - f*b2^{e}), c3*(s - f*b3^{e}), c4*(s - f*b4^{e}), \
             f*c1 - s*c2, f*c4 - s*c3, s*(c3 - c2), f*(c2*b1 - c3*b4), f*c2*(b2 - b3)",
            self.head()
        ))
    }

    pub fn generators(&self) -> Vec<Polynomial> {
        self.generators_of_degree(self.d)
    }

    pub fn j(&self) -> Ideal {
        Ideal::new(&self.ring, self.generators()).expect("same ring")
    }

    /// Blocks `{s, f}` and `{c1..c4}`.
    pub fn blocks(&self) -> Vec<VarSet> {
        vec![self.vars(&["s", "f"]), self.vars(&["c1", "c2", "c3", "c4"])]
    }

    pub fn b_vars(&self) -> VarSet {
        self.vars(&["b1", "b2", "b3", "b4"])
    }

    /// `d'`-th roots of unity; needs `Fp` with `p ≡ 1 (mod d')`.
    pub fn split_alphas(&self) -> Result<Vec<Coeff>> {
        match self.field {
            FieldSpec::PrimeField(p) if (p - 1) % self.d_prime as u64 == 0 => {
                Ok(self.field.roots_of_unity(self.d_prime as u64))
            }
            _ => Err(Error::Unsupported(format!(
                "split mode needs Fp with p = 1 mod {}, not {}",
                self.d_prime, self.field
            ))),
        }
    }

    pub fn row1(&self) -> Ideal {
        self.ideal(&format!("{}c1, c2, c3, c4", self.head()))
    }

    fn row2_with(&self, last: &str) -> Ideal {
        let d = self.d;
        self.ideal(&format!(
            "{}c4 - c1, c3 - c2, c1 - c2*b1^{d}, s - f*b1^{d}, b1 - b4, b2 - b3, {last}",
            self.head()
        ))
    }

    pub fn row2_combined(&self) -> Ideal {
        let d = self.d;
        self.row2_with(&format!("b1^{d} - b2^{d}"))
    }

    pub fn row2_split(&self, alpha: &Coeff) -> Ideal {
        let i = self.i;
        self.row2_with(&format!("b1^{i} - {alpha}*b2^{i}"))
    }

    pub fn row3(&self) -> Ideal {
        self.ideal(&format!("{}s, f", self.head()))
    }

    pub fn row4(&self) -> Ideal {
        let d = self.d;
        self.ideal(&format!("{}s, c1, c2, c4, b3^{d}, b4", self.head()))
    }

    pub fn row5(&self) -> Ideal {
        let d = self.d;
        self.ideal(&format!("{}s, c1, c4, b3^{d}, b2 - b3, c2*b1 - c3*b4", self.head()))
    }

    /// The embedded component.
    pub fn row6(&self) -> Ideal {
        self.ideal(&format!("{}{}, c1 - c4, c2 - c3, b2 - b3, b1 - b4", self.head(), self.l_text()))
    }

    fn l_text(&self) -> String {
        let d = self.d;
        format!("s^2, f^2, c4*(s - f*b4^{d}), c3*(s - f*b3^{d}), s*c3 - f*c4, c3^2, c4^2")
    }

    /// Row 6 without the two defining generators of `s1, f1`.
    pub fn l_full(&self) -> Ideal {
        self.ideal(&format!("{}, c1 - c4, c2 - c3, b2 - b3, b1 - b4", self.l_text()))
    }

    /// Components in decomposition order; the row-2 family expands in split mode.
    pub fn components(&self, mode: Mode) -> Result<Vec<Component>> {
        let plain = |row, ideal| Component { row, alpha: None, ideal };
        let mut out = vec![plain(1, self.row1())];
        match mode {
            Mode::Combined => out.push(plain(2, self.row2_combined())),
            Mode::Split => {
                for a in self.split_alphas()? {
                    out.push(Component {
                        row: 2,
                        alpha: Some(a.clone()),
                        ideal: self.row2_split(&a),
                    });
                }
            }
        }
        out.push(plain(3, self.row3()));
        out.push(plain(4, self.row4()));
        out.push(plain(5, self.row5()));
        out.push(plain(6, self.row6()));
        Ok(out)
    }

    /// `b1^d - b2^d` as a polynomial.
    pub fn b_difference(&self, e: u32) -> Polynomial {
        self.poly(&format!("b1^{e} - b2^{e}"))
    }

    /// `J + (s c2 (b1^d - b2^d))`.
    pub fn minimal_intersection(&self) -> Ideal {
        let mut gens = self.generators();
        gens.push(self.poly(&format!("s*c2*(b1^{0} - b2^{0})", self.d)));
        Ideal::new(&self.ring, gens).expect("same ring")
    }

    /// The two generators the radical adds to `J(1,d')`.
    pub fn radical_extras(&self) -> Vec<Polynomial> {
        let e = self.d_prime;
        self.polys(&format!("f*b3*(c3 - c2), f*b3*c2*(b1^{e} - b2^{e})"))
    }

    pub fn radical_generators(&self) -> Vec<Polynomial> {
        let mut gens = self.generators_of_degree(self.d_prime);
        gens.extend(self.radical_extras());
        gens
    }

    /// `J(1,d') + f b3 (c3 - c2, c2 (b1^d' - b2^d'))`.
    pub fn radical(&self) -> Ideal {
        Ideal::new(&self.ring, self.radical_generators()).expect("same ring")
    }

    /// Radicals of the five minimal components; the row-2 primes are combined
    /// through `b1^d' - b2^d'` or listed per root.
    pub fn radical_rows(&self, mode: Mode) -> Result<Vec<Component>> {
        let (d, e, h) = (self.d, self.d_prime, self.head());
        let plain = |row, text: String| Component {
            row,
            alpha: None,
            ideal: self.ideal(&text),
        };
        let row2 = |last: String| {
            format!("{h}c4 - c1, c3 - c2, c1 - c2*b1^{d}, s - f*b1^{d}, b1 - b4, b2 - b3, {last}")
        };
        let mut out = vec![plain(1, format!("{h}c1, c2, c3, c4"))];
        match mode {
            Mode::Combined => out.push(plain(2, row2(format!("b1^{e} - b2^{e}")))),
            Mode::Split => {
                for a in self.split_alphas()? {
                    out.push(Component {
                        row: 2,
                        ideal: self.ideal(&row2(format!("b1 - {a}*b2"))),
                        alpha: Some(a),
                    });
                }
            }
        }
        out.push(plain(3, format!("{h}s, f")));
        out.push(plain(4, format!("{h}s, c1, c2, c4, b3, b4")));
        out.push(plain(5, format!("{h}s, c1, c4, b2, b3, c2*b1 - c3*b4")));
        Ok(out)
    }

    /// The associated primes with the given root for row 2.
    pub fn associated_primes(&self, alpha: &Coeff) -> Vec<Ideal> {
        let (d, h) = (self.d, self.head());
        vec![
            self.ideal(&format!("{h}c1, c2, c3, c4")),
            self.ideal(&format!(
                "{h}c4 - c1, c3 - c2, c1 - c2*b1^{d}, s - f*b1^{d}, b1 - b4, b2 - b3, b1 - {alpha}*b2"
            )),
            self.ideal(&format!("{h}s, f")),
            self.ideal(&format!("{h}s, c1, c2, c4, b3, b4")),
            self.ideal(&format!("{h}s, c1, c4, b2, b3, c2*b1 - c3*b4")),
            self.ideal(&format!("{h}s, f, c1, c2, c3, c4, b2 - b3, b1 - b4")),
        ]
    }

    /// `c4 (s - f b3^d)`: in every minimal component but not in J.
    pub fn embedded_witness(&self) -> Polynomial {
        self.poly(&format!("c4*(s - f*b3^{})", self.d))
    }

    /// `s (c4 - c1)`, the element whose certificates need degree 2d - 1.
    pub fn certificate_target(&self) -> Polynomial {
        self.poly("s*(c4 - c1)")
    }

    pub fn target_bidegree(&self) -> Bidegree {
        Bidegree(vec![1, 1])
    }

    /// Named members of J: `s(c1 - c4)`, `s f c2 (b1^d - b2^d)`, `s c2^2 (b1^d - b2^d)`.
    pub fn identities(&self) -> Vec<(&'static str, Polynomial)> {
        let d = self.d;
        vec![
            ("s*(c1 - c4)", self.poly("s*(c1 - c4)")),
            ("s*f*c2*(b1^d - b2^d)", self.poly(&format!("s*f*c2*(b1^{d} - b2^{d})"))),
            ("s*c2^2*(b1^d - b2^d)", self.poly(&format!("s*c2^2*(b1^{d} - b2^{d})"))),
        ]
    }
}

/// The six-variable setting of the primaryness argument for the last component.
#[derive(Clone, Debug)]
pub struct LastComponent {
    pub d: u32,
    ring: Ring,
}

impl LastComponent {
    pub fn new(d: u32, field: FieldSpec) -> Result<Self> {
        Ok(LastComponent {
            d,
            ring: RingSpec::new(&LEMMA_VARS, field, MonomialOrder::GrevLex)?,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    fn ideal(&self, text: &str) -> Ideal {
        Ideal::new(&self.ring, parse_polynomial_list(text, &self.ring).expect("well-formed")).expect("same ring")
    }

    pub fn l(&self) -> Ideal {
        let d = self.d;
        self.ideal(&format!("s^2, f^2, c4*(s - f*b4^{d}), c3*(s - f*b3^{d}), s*c3 - f*c4, c3^2, c4^2"))
    }

    pub fn f(&self) -> Polynomial {
        self.ring.var("f").expect("f")
    }

    pub fn expected_colon(&self) -> Ideal {
        self.ideal(&format!("s^2, f, c4 - c3*b3^{}, s*c3, c3^2", self.d))
    }

    pub fn expected_sum(&self) -> Ideal {
        self.ideal("s^2, f, s*c4, s*c3, c3^2, c4^2")
    }

    pub fn expected_leading_ideal(&self) -> Ideal {
        self.ideal("s^2, f^2, s*c4, s*c3, c3^2, c4^2, f*c4")
    }

    pub fn radical(&self) -> Ideal {
        self.ideal("s, f, c3, c4")
    }
}
