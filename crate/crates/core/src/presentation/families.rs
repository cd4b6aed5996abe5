//! Alphabets, relation lists and letter assignments for the eight
//! presentation families.
//!
//! Relations are emitted in printed order. A chained display
//! `a = b = ... = z` becomes the relations `a = z`, `b = z`, ... so each
//! chain of `t` terms contributes `t - 1` relations.

use std::fmt;
use std::str::FromStr;

use crate::error::PresentationError;
use crate::iperm::{half_index, named_generator, Generator};
use crate::monoid::MonoidFamily;

use super::{Alphabet, Assignment, Presentation, Relation, Word};

/// The eight relation families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationFamilyId {
    /// `<A | R>` for ODI.
    R,
    /// `<C | U>` for OCI, relations R1–R5 and R11.
    U,
    /// `<B | V>` for ODI on a minimum generating set.
    V,
    /// `<B̄ | V̄>` for MDI.
    Vbar,
    /// `<B̄' | V̄'>` for MDI on a minimum generating set.
    VbarPrime,
    /// `<D | Q>` for OPDI.
    Q,
    /// `<D0 | Q0>` for CI, relations Q1–Q5.
    Q0,
    /// `<D' | Q'>` for OPDI on a minimum generating set.
    QPrime,
}

impl RelationFamilyId {
    pub const ALL: [RelationFamilyId; 8] = [
        RelationFamilyId::R,
        RelationFamilyId::V,
        RelationFamilyId::Vbar,
        RelationFamilyId::VbarPrime,
        RelationFamilyId::Q,
        RelationFamilyId::QPrime,
        RelationFamilyId::U,
        RelationFamilyId::Q0,
    ];

    /// The monoid the family presents.
    pub fn target(self) -> MonoidFamily {
        match self {
            RelationFamilyId::R | RelationFamilyId::V => MonoidFamily::ODI,
            RelationFamilyId::U => MonoidFamily::OCI,
            RelationFamilyId::Vbar | RelationFamilyId::VbarPrime => MonoidFamily::MDI,
            RelationFamilyId::Q | RelationFamilyId::QPrime => MonoidFamily::OPDI,
            RelationFamilyId::Q0 => MonoidFamily::CI,
        }
    }
}

impl fmt::Display for RelationFamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RelationFamilyId::R => "R",
            RelationFamilyId::U => "U",
            RelationFamilyId::V => "V",
            RelationFamilyId::Vbar => "Vbar",
            RelationFamilyId::VbarPrime => "VbarPrime",
            RelationFamilyId::Q => "Q",
            RelationFamilyId::Q0 => "Q0",
            RelationFamilyId::QPrime => "QPrime",
        };
        f.write_str(s)
    }
}

impl FromStr for RelationFamilyId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "r" => Ok(RelationFamilyId::R),
            "u" => Ok(RelationFamilyId::U),
            "v" => Ok(RelationFamilyId::V),
            "vbar" => Ok(RelationFamilyId::Vbar),
            "vbarprime" | "vbar'" | "vbarp" => Ok(RelationFamilyId::VbarPrime),
            "q" => Ok(RelationFamilyId::Q),
            "q0" => Ok(RelationFamilyId::Q0),
            "qprime" | "q'" | "qp" => Ok(RelationFamilyId::QPrime),
            _ => Err(format!("unknown relation family {s:?}")),
        }
    }
}

fn check_degree(n: u32) -> Result<(), PresentationError> {
    if n < 4 {
        Err(PresentationError::DegreeTooSmall(n))
    } else {
        Ok(())
    }
}

fn e(i: u32) -> String {
    format!("e_{i}")
}

/// Letter names of the family's alphabet, in printed order.
pub fn build_alphabet(family: RelationFamilyId, n: u32) -> Result<Alphabet, PresentationError> {
    check_degree(n)?;
    let k = half_index(n);
    let p = n.div_ceil(2);
    let mut names: Vec<String> = Vec::new();
    let xs = |names: &mut Vec<String>| names.extend((1..=k).map(|i| format!("x_{i}")));
    let ys = |names: &mut Vec<String>| names.extend((1..=k).map(|i| format!("y_{i}")));
    match family {
        RelationFamilyId::R => {
            names.extend(["x".into(), "y".into()]);
            names.extend((1..=n).map(e));
            xs(&mut names);
            ys(&mut names);
        }
        RelationFamilyId::U => {
            names.extend(["x".into(), "y".into()]);
            names.extend((1..=n).map(e));
        }
        RelationFamilyId::V | RelationFamilyId::Vbar => {
            if family == RelationFamilyId::Vbar {
                names.push("h".into());
            }
            names.extend(["x".into(), "y".into()]);
            names.extend((2..n).map(e));
            xs(&mut names);
            ys(&mut names);
        }
        RelationFamilyId::VbarPrime => {
            names.extend(["h".into(), "x".into()]);
            names.extend((2..=p).map(e));
            xs(&mut names);
            ys(&mut names);
        }
        RelationFamilyId::Q | RelationFamilyId::Q0 => {
            names.push("g".into());
            names.extend((1..=n).map(e));
            if family == RelationFamilyId::Q {
                xs(&mut names);
            }
        }
        RelationFamilyId::QPrime => {
            names.extend(["g".into(), e(1)]);
            xs(&mut names);
        }
    }
    Alphabet::new(names)
}

/// Letters map to the named generators with the same names.
pub fn build_assignment(family: RelationFamilyId, n: u32) -> Result<Assignment, PresentationError> {
    let alphabet = build_alphabet(family, n)?;
    let images = alphabet
        .names()
        .iter()
        .map(|name| {
            let kind = Generator::parse(name)
                .ok_or_else(|| PresentationError::UnknownLetter(name.clone()))?;
            Ok(named_generator(kind, n)?)
        })
        .collect::<Result<_, PresentationError>>()?;
    Assignment::new(alphabet, n, images)
}

/// The full relation list of the family in degree `n`.
pub fn build_relations(
    family: RelationFamilyId,
    n: u32,
) -> Result<Presentation, PresentationError> {
    let alphabet = build_alphabet(family, n)?;
    let mut b = Builder::new(&alphabet, n);
    match family {
        RelationFamilyId::R => emit_r(&mut b, false),
        RelationFamilyId::U => emit_r(&mut b, true),
        RelationFamilyId::V => emit_v(&mut b),
        RelationFamilyId::Vbar => {
            emit_v(&mut b);
            b.rel("Vbar_0", b.w().s("h").s("h"), b.w());
            emit_vbar_conjugations(&mut b);
            emit_vbar_u0(&mut b);
        }
        RelationFamilyId::VbarPrime => emit_vbar_prime(&mut b),
        RelationFamilyId::Q => emit_q(&mut b, false),
        RelationFamilyId::Q0 => emit_q(&mut b, true),
        RelationFamilyId::QPrime => emit_q_prime(&mut b),
    }
    let relations = b.finish()?;
    Presentation::new(format!("{family}(n={n})"), alphabet, relations)
}

/// The conjugation relations `h a = v h` and the relation `u0 h = v0` that
/// extend `<B | V>` by the reflection `h`. Words are over the alphabet of
/// [`RelationFamilyId::Vbar`].
pub fn vbar_extension_parts(n: u32) -> Result<(Vec<Relation>, Relation), PresentationError> {
    let alphabet = build_alphabet(RelationFamilyId::Vbar, n)?;
    let mut b = Builder::new(&alphabet, n);
    emit_vbar_conjugations(&mut b);
    let conj = b.finish()?;
    let mut b = Builder::new(&alphabet, n);
    emit_vbar_u0(&mut b);
    let u0 = b.finish()?.pop().expect("one relation");
    Ok((conj, u0))
}

/// The word families `W1 = {y^r x_i x^s}` and `W2 = {y^r y_i x^s}` over the
/// alphabet of [`RelationFamilyId::R`], with their index constraints.
pub fn odi_rank_two_forms(n: u32) -> Result<Vec<Word>, PresentationError> {
    let alphabet = build_alphabet(RelationFamilyId::R, n)?;
    let b = Builder::new(&alphabet, n);
    let k = half_index(n);
    let mut out = Vec::new();
    for r in 0..n {
        for s in 0..n {
            for i in 1..=k {
                if s < i && i + r < n {
                    out.push(b.w().pow("y", r).s(&format!("x_{i}")).pow("x", s).word());
                }
            }
        }
    }
    for r in 0..n {
        for s in 0..n {
            for i in 1..=k {
                if r < i && i + s < n {
                    out.push(b.w().pow("y", r).s(&format!("y_{i}")).pow("x", s).word());
                }
            }
        }
    }
    Ok(out)
}

/// Closed-form relation count of the family, evaluated exactly.
pub fn relation_count_formula(family: RelationFamilyId, n: u32) -> Result<u64, PresentationError> {
    check_degree(n)?;
    let n = n as i64;
    let s: i64 = if n % 2 == 0 { 1 } else { -1 };
    // Every formula is scaled by 4 to keep the arithmetic integral.
    let scaled = match family {
        RelationFamilyId::R => 2 * (5 * n * n - (1 + 2 * s) * n - s + 5),
        RelationFamilyId::U => 2 * (n * n + 3 * n + 8),
        RelationFamilyId::V => 2 * (5 * n * n - (1 + 2 * s) * n - s - 3),
        RelationFamilyId::Vbar => 10 * n * n + 2 * (2 - 2 * s) * n - (3 + 5 * s),
        RelationFamilyId::VbarPrime => 8 * n * n + (7 - s) * n - 8 * s - 4,
        RelationFamilyId::Q => 6 * n * n + 2 * (1 - s) * n + 6 - (1 + s),
        RelationFamilyId::Q0 => 2 * (n * n + 3 * n + 4),
        RelationFamilyId::QPrime => 6 * n * n - 2 * (3 + s) * n + 10 - (1 + s),
    };
    debug_assert_eq!(scaled % 4, 0, "{family} at n={n}");
    Ok((scaled / 4) as u64)
}

/// Word builder resolving letter names against an alphabet.
#[derive(Clone)]
struct WordBuf<'a> {
    alphabet: &'a Alphabet,
    names: Vec<String>,
}

impl<'a> WordBuf<'a> {
    fn s(mut self, name: &str) -> Self {
        self.names.push(name.to_string());
        self
    }

    fn pow(mut self, name: &str, k: u32) -> Self {
        for _ in 0..k {
            self.names.push(name.to_string());
        }
        self
    }

    /// `e_a e_{a+1} ... e_b`, empty when `a > b`.
    fn e_range(self, a: u32, b: u32) -> Self {
        self.e_set((a..=b).collect::<Vec<_>>())
    }

    /// `e_a ... e_b` with `e_skip` left out.
    fn e_range_without(self, a: u32, b: u32, skip: u32) -> Self {
        self.e_set((a..=b).filter(|&j| j != skip).collect::<Vec<_>>())
    }

    fn e_set(mut self, indices: impl IntoIterator<Item = u32>) -> Self {
        self.names.extend(indices.into_iter().map(e));
        self
    }

    /// `word` repeated `k` times.
    fn rep(mut self, word: &WordBuf<'_>, k: u32) -> Self {
        for _ in 0..k {
            self.names.extend(word.names.iter().cloned());
        }
        self
    }

    fn then(self, word: &WordBuf<'_>) -> Self {
        self.rep(word, 1)
    }

    fn word(&self) -> Word {
        self.alphabet
            .word(&self.names)
            .expect("family words only use letters of their alphabet")
    }
}

struct Builder<'a> {
    alphabet: &'a Alphabet,
    n: u32,
    k: u32,
    relations: Vec<(String, Vec<String>, Vec<String>)>,
}

impl<'a> Builder<'a> {
    fn new(alphabet: &'a Alphabet, n: u32) -> Self {
        Builder {
            alphabet,
            n,
            k: half_index(n),
            relations: Vec::new(),
        }
    }

    fn w(&self) -> WordBuf<'a> {
        WordBuf {
            alphabet: self.alphabet,
            names: Vec::new(),
        }
    }

    fn rel(&mut self, tag: impl Into<String>, lhs: WordBuf<'_>, rhs: WordBuf<'_>) {
        self.relations.push((tag.into(), lhs.names, rhs.names));
    }

    /// `terms[0] = ... = terms[t-1]`, emitted as each term equal to the last.
    fn chain(&mut self, tag: impl Into<String>, terms: Vec<WordBuf<'_>>) {
        let tag = tag.into();
        let (last, rest) = terms.split_last().expect("non-empty chain");
        for t in rest {
            self.rel(tag.clone(), t.clone(), last.clone());
        }
    }

    fn finish(self) -> Result<Vec<Relation>, PresentationError> {
        self.relations
            .into_iter()
            .map(|(tag, l, r)| {
                Ok(Relation::new(
                    self.alphabet.word(&l)?,
                    self.alphabet.word(&r)?,
                    tag,
                ))
            })
            .collect()
    }
}

fn xi(i: u32) -> String {
    format!("x_{i}")
}

fn yi(i: u32) -> String {
    format!("y_{i}")
}

/// R1–R11, or only R1–R5 and R11 when `only_u`.
fn emit_r(b: &mut Builder<'_>, only_u: bool) {
    let (n, k) = (b.n, b.k);
    for i in 1..=n {
        b.rel(
            format!("R_1[i={i}]"),
            b.w().s(&e(i)).s(&e(i)),
            b.w().s(&e(i)),
        );
    }
    b.rel("R_2", b.w().s("x").s("y"), b.w().s(&e(n)));
    b.rel("R_2", b.w().s("y").s("x"), b.w().s(&e(1)));
    b.rel("R_3", b.w().s("x").s(&e(1)), b.w().s("x"));
    b.rel("R_3", b.w().s(&e(1)).s("y"), b.w().s("y"));
    for i in 1..=n {
        for j in i + 1..=n {
            b.rel(
                format!("R_4[i={i},j={j}]"),
                b.w().s(&e(i)).s(&e(j)),
                b.w().s(&e(j)).s(&e(i)),
            );
        }
    }
    for i in 1..n {
        b.rel(
            format!("R_5[i={i}]"),
            b.w().s(&e(i)).s("x"),
            b.w().s("x").s(&e(i + 1)),
        );
    }
    if !only_u {
        for i in 1..=k {
            b.rel(
                format!("R_6[i={i}]"),
                b.w().s(&xi(i)).s(&yi(i)),
                b.w().e_range_without(2, n, i + 1),
            );
            b.rel(
                format!("R_6[i={i}]"),
                b.w().s(&yi(i)).s(&xi(i)),
                b.w().e_range_without(2, n, n - i + 1),
            );
        }
        for i in 1..=k {
            for j in (2..=n).filter(|&j| j != n - i + 1) {
                let tag = format!("R_7[i={i},j={j}]");
                b.rel(tag.clone(), b.w().s(&xi(i)).s(&e(j)), b.w().s(&xi(i)));
                b.rel(tag, b.w().s(&e(j)).s(&yi(i)), b.w().s(&yi(i)));
            }
        }
        for i in 1..=k {
            for j in (2..=n).filter(|&j| j != i + 1) {
                let tag = format!("R_8[i={i},j={j}]");
                b.rel(tag.clone(), b.w().s(&e(j)).s(&xi(i)), b.w().s(&xi(i)));
                b.rel(tag, b.w().s(&yi(i)).s(&e(j)), b.w().s(&yi(i)));
            }
        }
        for i in 1..=k {
            let tag = format!("R_9[i={i}]");
            let xw = b
                .w()
                .pow("x", n - 2 * i)
                .e_range(n - 2 * i + 1, n - i)
                .e_range(n - i + 2, n);
            b.chain(
                tag.clone(),
                vec![b.w().s(&e(1)).s(&xi(i)), b.w().s(&xi(i)).s(&e(1)), xw],
            );
            let yw = b
                .w()
                .pow("y", n - 2 * i)
                .e_range(1, i)
                .e_range(i + 2, 2 * i);
            b.chain(
                tag,
                vec![b.w().s(&e(1)).s(&yi(i)), b.w().s(&yi(i)).s(&e(1)), yw],
            );
        }
        for i in 1..=k {
            b.chain(
                format!("R_10[i={i}]"),
                vec![
                    b.w().s(&xi(i)).s(&e(n - i + 1)),
                    b.w().s(&e(i + 1)).s(&xi(i)),
                    b.w().s(&yi(i)).s(&e(i + 1)),
                    b.w().s(&e(n - i + 1)).s(&yi(i)),
                    b.w().e_range(2, n),
                ],
            );
        }
    }
    b.rel("R_11", b.w().s("x").e_range(2, n), b.w().e_range(1, n));
}

/// V1–V14 over any alphabet containing B.
fn emit_v(b: &mut Builder<'_>) {
    let (n, k) = (b.n, b.k);
    let xy = b.w().s("x").s("y");
    let yx = b.w().s("y").s("x");
    for i in 2..n {
        b.rel(
            format!("V_1[i={i}]"),
            b.w().s(&e(i)).s(&e(i)),
            b.w().s(&e(i)),
        );
    }
    b.rel("V_2", b.w().s("x").s("y").s("x"), b.w().s("x"));
    b.rel("V_2", b.w().s("y").s("x").s("y"), b.w().s("y"));
    b.rel(
        "V_3",
        b.w().s("y").pow("x", 2).s("y"),
        b.w().s("x").pow("y", 2).s("x"),
    );
    for i in 2..n {
        for j in i + 1..n {
            b.rel(
                format!("V_4[i={i},j={j}]"),
                b.w().s(&e(i)).s(&e(j)),
                b.w().s(&e(j)).s(&e(i)),
            );
        }
    }
    for i in 2..n {
        let tag = format!("V_5[i={i}]");
        b.rel(tag.clone(), xy.clone().s(&e(i)), b.w().s(&e(i)).then(&xy));
        b.rel(tag, yx.clone().s(&e(i)), b.w().s(&e(i)).then(&yx));
    }
    for i in 2..n - 1 {
        b.rel(
            format!("V_6[i={i}]"),
            b.w().s("x").s(&e(i + 1)),
            b.w().s(&e(i)).s("x"),
        );
    }
    b.rel("V_7", b.w().pow("x", 2).s("y"), b.w().s(&e(n - 1)).s("x"));
    b.rel("V_7", b.w().s("y").pow("x", 2), b.w().s("x").s(&e(2)));
    b.rel(
        "V_8",
        yx.clone().e_range(2, n - 1).then(&xy),
        b.w().s("x").e_range(2, n - 1).then(&xy),
    );
    // V9
    for i in 1..=k {
        b.rel(
            format!("V_9[i={i}]"),
            b.w().s(&xi(i)).s(&yi(i)),
            b.w().e_range_without(2, n - 1, i + 1).then(&xy),
        );
    }
    b.rel(
        "V_9[i=1]",
        b.w().s(&yi(1)).s(&xi(1)),
        b.w().e_range(2, n - 1),
    );
    for i in 2..=k {
        b.rel(
            format!("V_9[i={i}]"),
            b.w().s(&yi(i)).s(&xi(i)),
            b.w().e_range_without(2, n - 1, n - i + 1).then(&xy),
        );
    }
    for i in 1..=k {
        for j in (2..n).filter(|&j| j != n - i + 1) {
            let tag = format!("V_10[i={i},j={j}]");
            b.rel(tag.clone(), b.w().s(&xi(i)).s(&e(j)), b.w().s(&xi(i)));
            b.rel(tag, b.w().s(&e(j)).s(&yi(i)), b.w().s(&yi(i)));
        }
    }
    for i in 1..=k {
        for j in (2..n).filter(|&j| j != i + 1) {
            let tag = format!("V_11[i={i},j={j}]");
            b.rel(tag.clone(), b.w().s(&e(j)).s(&xi(i)), b.w().s(&xi(i)));
            b.rel(tag, b.w().s(&yi(i)).s(&e(j)), b.w().s(&yi(i)));
        }
    }
    for i in 2..=k {
        let tag = format!("V_12[i={i}]");
        b.chain(
            tag.clone(),
            vec![
                b.w().s(&xi(i)).then(&xy),
                xy.clone().s(&xi(i)),
                b.w().s(&xi(i)),
            ],
        );
        b.chain(
            tag,
            vec![
                xy.clone().s(&yi(i)),
                b.w().s(&yi(i)).then(&xy),
                b.w().s(&yi(i)),
            ],
        );
    }
    b.rel("V_12[i=1]", xy.clone().s(&xi(1)), b.w().s(&xi(1)));
    b.rel("V_12[i=1]", b.w().s(&yi(1)).then(&xy), b.w().s(&yi(1)));
    // V13
    b.chain(
        "V_13[i=1]",
        vec![
            yx.clone().s(&xi(1)),
            b.w().s(&xi(1)).then(&yx),
            b.w().pow("x", n - 2).s(&e(n - 1)),
        ],
    );
    for i in 2..=k {
        let rhs = b
            .w()
            .pow("x", n - 2 * i)
            .e_range(n - 2 * i + 1, n - i)
            .e_range(n - i + 2, n - 1)
            .then(&xy);
        b.chain(
            format!("V_13[i={i}]"),
            vec![yx.clone().s(&xi(i)), b.w().s(&xi(i)).then(&yx), rhs],
        );
    }
    for i in 1..=k {
        let rhs = b
            .w()
            .pow("y", n - 2 * i + 1)
            .s("x")
            .e_range(2, i)
            .e_range(i + 2, 2 * i);
        b.chain(
            format!("V_13[i={i}]"),
            vec![yx.clone().s(&yi(i)), b.w().s(&yi(i)).then(&yx), rhs],
        );
    }
    // V14
    let tail = b.w().e_range(2, n - 1).then(&xy);
    b.chain(
        "V_14[i=1]",
        vec![
            b.w().s(&xi(1)).then(&xy),
            b.w().s(&e(2)).s(&xi(1)),
            b.w().s(&yi(1)).s(&e(2)),
            xy.clone().s(&yi(1)),
            tail.clone(),
        ],
    );
    for i in 2..=k {
        b.chain(
            format!("V_14[i={i}]"),
            vec![
                b.w().s(&xi(i)).s(&e(n - i + 1)),
                b.w().s(&e(i + 1)).s(&xi(i)),
                b.w().s(&yi(i)).s(&e(i + 1)),
                b.w().s(&e(n - i + 1)).s(&yi(i)),
                tail.clone(),
            ],
        );
    }
}

fn emit_vbar_conjugations(b: &mut Builder<'_>) {
    let (n, k) = (b.n, b.k);
    let p = n.div_ceil(2);
    b.rel("Vbar_1", b.w().s("h").s("x"), b.w().s("y").s("h"));
    for i in 2..=p {
        b.rel(
            format!("Vbar_1[i={i}]"),
            b.w().s("h").s(&e(i)),
            b.w().s(&e(n - i + 1)).s("h"),
        );
    }
    for i in 1..=k {
        let tag = format!("Vbar_1[i={i}]");
        b.rel(
            tag.clone(),
            b.w().s("h").s(&xi(i)),
            b.w().pow("y", n - i - 1).s(&xi(i)).pow("x", i - 1).s("h"),
        );
        b.rel(
            tag,
            b.w().s("h").s(&yi(i)),
            b.w().pow("y", i - 1).s(&yi(i)).pow("x", n - i - 1).s("h"),
        );
    }
}

fn emit_vbar_u0(b: &mut Builder<'_>) {
    let n = b.n;
    b.rel(
        "Vbar_2",
        b.w().e_range(2, n - 1).s("x").s("y").s("h"),
        b.w().pow("x", n - 1),
    );
}

fn emit_vbar_prime(b: &mut Builder<'_>) {
    let (n, k) = (b.n, b.k);
    let p = n.div_ceil(2);
    let q = n / 2;
    let xh = b.w().s("x").s("h");
    let hx = b.w().s("h").s("x");
    let xh2 = b.w().rep(&xh, 2);
    let hx2 = b.w().rep(&hx, 2);
    // h e_j h, standing for e_{n-j+1}
    fn he<'a>(b: &Builder<'a>, j: u32) -> WordBuf<'a> {
        b.w().s("h").s(&e(j)).s("h")
    }
    // e_2 ... e_p h e_2 ... e_q h, standing for e_2 ... e_{n-1}
    let mid = b.w().e_range(2, p).s("h").e_range(2, q).s("h");

    for i in 2..=p {
        b.rel(
            format!("V'_1[i={i}]"),
            b.w().s(&e(i)).s(&e(i)),
            b.w().s(&e(i)),
        );
    }
    b.rel("V'_2", b.w().rep(&xh, 2).s("x"), b.w().s("x"));
    b.rel(
        "V'_3",
        b.w().s("x").s("h").pow("x", 2).s("h").s("x").s("h"),
        b.w().s("h").s("x").s("h").pow("x", 2).s("h").s("x"),
    );
    for i in 2..=p {
        for j in i + 1..=p {
            b.rel(
                format!("V'_4[i={i},j={j}]"),
                b.w().s(&e(i)).s(&e(j)),
                b.w().s(&e(j)).s(&e(i)),
            );
        }
    }
    for i in 2..=p {
        for j in 2..=q {
            b.rel(
                format!("V'_4[i={i},j={j}]"),
                b.w().s(&e(i)).then(&he(b, j)),
                he(b, j).s(&e(i)),
            );
        }
    }
    for i in 2..=p {
        let tag = format!("V'_5[i={i}]");
        b.rel(tag.clone(), xh2.clone().s(&e(i)), b.w().s(&e(i)).then(&xh2));
        b.rel(tag, hx2.clone().s(&e(i)), b.w().s(&e(i)).then(&hx2));
    }
    for i in 2..=k {
        b.rel(
            format!("V'_6[i={i}]"),
            b.w().s("x").s(&e(i + 1)),
            b.w().s(&e(i)).s("x"),
        );
    }
    b.rel("V'_6", b.w().s("x").then(&he(b, q)), b.w().s(&e(p)).s("x"));
    for i in 2..=(n - 2) / 2 {
        b.rel(
            format!("V'_6[i={i}]"),
            b.w().s("x").then(&he(b, i)),
            he(b, i + 1).s("x"),
        );
    }
    b.rel("V'_7", b.w().s("x").then(&xh2), he(b, 2).s("x"));
    b.rel("V'_7", hx2.clone().s("x"), b.w().s("x").s(&e(2)));
    b.rel(
        "V'_8",
        hx2.clone().e_range(2, p).s("h").e_range(2, q).then(&hx2),
        b.w().s("x").e_range(2, p).s("h").e_range(2, q).then(&hx2),
    );
    // V'9
    for i in 1..=k {
        b.rel(
            format!("V'_9[i={i}]"),
            b.w().s(&xi(i)).s(&yi(i)),
            b.w()
                .e_range_without(2, p, i + 1)
                .s("h")
                .e_range(2, q)
                .s("h")
                .then(&xh2),
        );
    }
    b.rel("V'_9[i=1]", b.w().s(&yi(1)).s(&xi(1)), mid.clone());
    for i in 2..=k {
        b.rel(
            format!("V'_9[i={i}]"),
            b.w().s(&yi(i)).s(&xi(i)),
            b.w()
                .e_range(2, p)
                .s("h")
                .e_range_without(2, q, i)
                .s("h")
                .then(&xh2),
        );
    }
    // V'10
    for i in 1..=k {
        for j in 2..=p {
            let tag = format!("V'_10[i={i},j={j}]");
            b.rel(tag.clone(), b.w().s(&xi(i)).s(&e(j)), b.w().s(&xi(i)));
            b.rel(tag, b.w().s(&e(j)).s(&yi(i)), b.w().s(&yi(i)));
        }
        for j in (2..=q).filter(|&j| j != i) {
            let tag = format!("V'_10[i={i},j={j}]");
            b.rel(
                tag.clone(),
                b.w().s(&xi(i)).then(&he(b, j)),
                b.w().s(&xi(i)),
            );
            b.rel(tag, he(b, j).s(&yi(i)), b.w().s(&yi(i)));
        }
    }
    // V'11
    for i in 1..=k {
        for j in (2..=p).filter(|&j| j != i + 1) {
            let tag = format!("V'_11[i={i},j={j}]");
            b.rel(tag.clone(), b.w().s(&e(j)).s(&xi(i)), b.w().s(&xi(i)));
            b.rel(tag, b.w().s(&yi(i)).s(&e(j)), b.w().s(&yi(i)));
        }
        for j in 2..=q {
            let tag = format!("V'_11[i={i},j={j}]");
            b.rel(tag.clone(), he(b, j).s(&xi(i)), b.w().s(&xi(i)));
            b.rel(tag, b.w().s(&yi(i)).then(&he(b, j)), b.w().s(&yi(i)));
        }
    }
    // V'12
    for i in 2..=k {
        let tag = format!("V'_12[i={i}]");
        b.chain(
            tag.clone(),
            vec![
                b.w().s(&xi(i)).then(&xh2),
                xh2.clone().s(&xi(i)),
                b.w().s(&xi(i)),
            ],
        );
        b.chain(
            tag,
            vec![
                xh2.clone().s(&yi(i)),
                b.w().s(&yi(i)).then(&xh2),
                b.w().s(&yi(i)),
            ],
        );
    }
    b.rel("V'_12[i=1]", xh2.clone().s(&xi(1)), b.w().s(&xi(1)));
    b.rel("V'_12[i=1]", b.w().s(&yi(1)).then(&xh2), b.w().s(&yi(1)));
    // V'13
    b.chain(
        "V'_13[i=1]",
        vec![
            hx2.clone().s(&xi(1)),
            b.w().s(&xi(1)).then(&hx2),
            b.w().pow("x", n - 2).then(&he(b, 2)),
        ],
    );
    for i in 2..=k {
        let rhs = b
            .w()
            .pow("x", n - 2 * i)
            .e_range(n - 2 * i + 1, p)
            .s("h")
            .e_range_without(2, q, i)
            .s("h")
            .then(&xh2);
        b.chain(
            format!("V'_13[i={i}]"),
            vec![hx2.clone().s(&xi(i)), b.w().s(&xi(i)).then(&hx2), rhs],
        );
    }
    for i in 1..=k {
        let rhs = b
            .w()
            .s("h")
            .pow("x", n - 2 * i + 1)
            .s("h")
            .s("x")
            .e_range_without(2, p, i + 1)
            .s("h")
            .e_range(n - 2 * i + 1, q)
            .s("h");
        b.chain(
            format!("V'_13[i={i}]"),
            vec![hx2.clone().s(&yi(i)), b.w().s(&yi(i)).then(&hx2), rhs],
        );
    }
    // V'14
    let tail = mid.clone().then(&xh2);
    b.chain(
        "V'_14[i=1]",
        vec![
            b.w().s(&xi(1)).then(&xh2),
            b.w().s(&e(2)).s(&xi(1)),
            b.w().s(&yi(1)).s(&e(2)),
            xh2.clone().s(&yi(1)),
            tail.clone(),
        ],
    );
    for i in 2..=k {
        b.chain(
            format!("V'_14[i={i}]"),
            vec![
                b.w().s(&xi(i)).then(&he(b, i)),
                b.w().s(&e(i + 1)).s(&xi(i)),
                b.w().s(&yi(i)).s(&e(i + 1)),
                he(b, i).s(&yi(i)),
                tail.clone(),
            ],
        );
    }
    // V̄'0 – V̄'2
    b.rel("Vbar'_0", b.w().s("h").s("h"), b.w());
    if n % 2 == 1 {
        b.rel(
            format!("Vbar'_1[i={p}]"),
            b.w().s("h").s(&e(p)),
            b.w().s(&e(p)).s("h"),
        );
    }
    for i in 1..=k {
        let tag = format!("Vbar'_1[i={i}]");
        b.rel(
            tag.clone(),
            b.w().s("h").s(&xi(i)),
            b.w()
                .s("h")
                .pow("x", n - i - 1)
                .s("h")
                .s(&xi(i))
                .pow("x", i - 1)
                .s("h"),
        );
        b.rel(
            tag,
            b.w().s("h").s(&yi(i)),
            b.w()
                .s("h")
                .pow("x", i - 1)
                .s("h")
                .s(&yi(i))
                .pow("x", n - i - 1)
                .s("h"),
        );
    }
    b.rel(
        "Vbar'_2",
        b.w().e_range(2, p).s("h").e_range(2, q).then(&hx2),
        b.w().pow("x", n - 1),
    );
}

/// Q1–Q10, or only Q1–Q5 when `only_q0`.
fn emit_q(b: &mut Builder<'_>, only_q0: bool) {
    let (n, k) = (b.n, b.k);
    b.rel("Q_1", b.w().pow("g", n), b.w());
    for i in 1..=n {
        b.rel(
            format!("Q_2[i={i}]"),
            b.w().s(&e(i)).s(&e(i)),
            b.w().s(&e(i)),
        );
    }
    for i in 1..=n {
        for j in i + 1..=n {
            b.rel(
                format!("Q_3[i={i},j={j}]"),
                b.w().s(&e(i)).s(&e(j)),
                b.w().s(&e(j)).s(&e(i)),
            );
        }
    }
    b.rel("Q_4", b.w().s("g").s(&e(1)), b.w().s(&e(n)).s("g"));
    for i in 1..n {
        b.rel(
            format!("Q_4[i={i}]"),
            b.w().s("g").s(&e(i + 1)),
            b.w().s(&e(i)).s("g"),
        );
    }
    b.rel("Q_5", b.w().s("g").e_range(1, n), b.w().e_range(1, n));
    if only_q0 {
        return;
    }
    for i in 1..=k {
        b.chain(
            format!("Q_6[i={i}]"),
            vec![
                b.w().s(&e(1)).s(&xi(i)),
                b.w().s(&xi(i)).s(&e(1)),
                b.w()
                    .pow("g", n - 2 * i)
                    .e_range(1, n - i)
                    .e_range(n - i + 2, n),
            ],
        );
    }
    for i in 1..=k {
        for j in (2..=n).filter(|&j| j != n - i + 1) {
            b.rel(
                format!("Q_7[i={i},j={j}]"),
                b.w().s(&xi(i)).s(&e(j)),
                b.w().s(&xi(i)),
            );
        }
    }
    for i in 1..=k {
        for j in (2..=n).filter(|&j| j != i + 1) {
            b.rel(
                format!("Q_8[i={i},j={j}]"),
                b.w().s(&e(j)).s(&xi(i)),
                b.w().s(&xi(i)),
            );
        }
    }
    for i in 1..=k {
        b.chain(
            format!("Q_9[i={i}]"),
            vec![
                b.w().s(&xi(i)).s(&e(n - i + 1)),
                b.w().s(&e(i + 1)).s(&xi(i)),
                b.w().e_range(2, n),
            ],
        );
    }
    for i in 1..=k {
        let xg = b.w().s(&xi(i)).pow("g", i);
        b.rel(
            format!("Q_10[i={i}]"),
            b.w().rep(&xg, 2),
            b.w().e_range_without(2, n, i + 1),
        );
    }
}

fn emit_q_prime(b: &mut Builder<'_>) {
    let (n, k) = (b.n, b.k);
    let e1 = e(1);
    // e_1 g^{n-1}
    let eg = b.w().s(&e1).pow("g", n - 1);
    // g^{n-j+1} e_1 g^{j-1}, standing for e_j
    fn ej<'a>(b: &Builder<'a>, j: u32) -> WordBuf<'a> {
        b.w().pow("g", b.n - j + 1).s(&e(1)).pow("g", j - 1)
    }

    b.rel("Q'_1", b.w().pow("g", n), b.w());
    b.rel("Q'_2", b.w().s(&e1).s(&e1), b.w().s(&e1));
    for i in 1..=n {
        for j in i + 1..=n {
            b.rel(
                format!("Q'_3[i={i},j={j}]"),
                b.w().s(&e1).pow("g", n - j + i).s(&e1).pow("g", n - i + j),
                b.w().pow("g", n - j + i).s(&e1).pow("g", n - i + j).s(&e1),
            );
        }
    }
    b.rel("Q'_5", b.w().s("g").rep(&eg, n), b.w().rep(&eg, n));
    for i in 1..=k {
        b.chain(
            format!("Q'_6[i={i}]"),
            vec![
                b.w().s(&e1).s(&xi(i)),
                b.w().s(&xi(i)).s(&e1),
                // e_1 ... e_{n-i} e_{n-i+2} ... e_n after substituting
                // e_j = g^{n-j+1} e_1 g^{j-1}; the skipped e_{n-i+1} leaves
                // the factor g^{n-2}.
                b.w()
                    .pow("g", n - 2 * i)
                    .rep(&eg, n - i - 1)
                    .s(&e1)
                    .pow("g", n - 2)
                    .rep(&eg, i - 1),
            ],
        );
    }
    for i in 1..=k {
        for j in (2..=n).filter(|&j| j != n - i + 1) {
            b.rel(
                format!("Q'_7[i={i},j={j}]"),
                b.w().s(&xi(i)).then(&ej(b, j)),
                b.w().s(&xi(i)),
            );
        }
    }
    for i in 1..=k {
        for j in (2..=n).filter(|&j| j != i + 1) {
            b.rel(
                format!("Q'_8[i={i},j={j}]"),
                ej(b, j).s(&xi(i)),
                b.w().s(&xi(i)),
            );
        }
    }
    for i in 1..=k {
        b.chain(
            format!("Q'_9[i={i}]"),
            vec![
                b.w().s(&xi(i)).pow("g", i).s(&e1).pow("g", n - i),
                b.w().pow("g", n - i).s(&e1).pow("g", i).s(&xi(i)),
                b.w().pow("g", n - 1).rep(&eg, n - 1),
            ],
        );
    }
    for i in 1..=k {
        let xg = b.w().s(&xi(i)).pow("g", i);
        // At i = 1 the printed prefix g^{n-1} (e_1 g^{n-1})^{-1} e_1 g^{n-2}
        // collapses to g^{n-2}.
        let rhs = if i == 1 {
            b.w().pow("g", n - 2).rep(&eg, n - 2)
        } else {
            b.w()
                .pow("g", n - 1)
                .rep(&eg, i - 2)
                .s(&e1)
                .pow("g", n - 2)
                .rep(&eg, n - i - 1)
        };
        b.rel(format!("Q'_10[i={i}]"), b.w().rep(&xg, 2), rhs);
    }
}
