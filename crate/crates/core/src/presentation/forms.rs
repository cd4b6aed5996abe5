//! Explicit sets of forms: one word per class of the presented monoid.

use std::collections::HashMap;

use crate::congruence::{normal_forms, EnumerationResult};
use crate::iperm::half_index;

use super::families::{build_alphabet, odi_rank_two_forms, RelationFamilyId};
use super::{Alphabet, Word};
use crate::error::PresentationError;

/// A finite set of words over an alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormsSet {
    pub alphabet: Alphabet,
    pub words: Vec<Word>,
}

impl FormsSet {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn render(&self) -> Vec<String> {
        self.words.iter().map(|w| self.alphabet.render(w)).collect()
    }
}

/// Builds the forms set of `family` in degree `n` from an enumeration of the
/// base presentation it depends on:
///
/// * `R` takes `<C | U>` and returns `W0 ∪ W1 ∪ W2`;
/// * `Vbar` takes `<B | V>` and returns `W' ∪ {w h : w ∈ W'_2}`;
/// * `Q` takes `<D0 | Q0>` and returns its normal forms `g^m e_{i1}...e_{ik}`
///   together with the words `g^r x_i g^s`.
pub fn build_forms(
    family: RelationFamilyId,
    n: u32,
    enumeration: &EnumerationResult,
) -> Result<FormsSet, PresentationError> {
    let base = match family {
        RelationFamilyId::R => RelationFamilyId::U,
        RelationFamilyId::Vbar => RelationFamilyId::V,
        RelationFamilyId::Q => RelationFamilyId::Q0,
        other => return Err(PresentationError::NoForms(other.to_string())),
    };
    let base_alphabet = build_alphabet(base, n)?;
    if enumeration.alphabet() != &base_alphabet {
        return Err(PresentationError::AlphabetMismatch(format!(
            "{family} forms need an enumeration of {base}(n={n})"
        )));
    }
    let base_forms = normal_forms(enumeration)
        .map_err(|_| PresentationError::Forms(format!("enumeration of {base}(n={n}) is capped")))?;
    let alphabet = build_alphabet(family, n)?;
    let lift = |w: &Word| -> Result<Word, PresentationError> {
        alphabet.word(w.iter().map(|&id| base_alphabet.name(id)))
    };
    let mut words = Vec::new();
    match family {
        RelationFamilyId::R => {
            for w in &base_forms.words {
                words.push(lift(w)?);
            }
            words.extend(odi_rank_two_forms(n)?);
        }
        RelationFamilyId::Vbar => {
            let w1 = vbar_fixed_forms(&base_alphabet, n)?;
            let mut chosen = base_forms.words.clone();
            let mut fixed = vec![false; chosen.len()];
            for w in &w1 {
                let c = enumeration
                    .word_class(w)
                    .map_err(|e| PresentationError::Forms(e.to_string()))?;
                if fixed[c] {
                    return Err(PresentationError::Forms(format!(
                        "two prescribed words share the class of {}",
                        base_alphabet.render(w)
                    )));
                }
                fixed[c] = true;
                chosen[c] = w.clone();
            }
            let h = alphabet.id("h")?;
            for w in &chosen {
                words.push(lift(w)?);
            }
            for (w, _) in chosen.iter().zip(&fixed).filter(|(_, &f)| !f) {
                let mut w = lift(w)?;
                w.0.push(h);
                words.push(w);
            }
        }
        RelationFamilyId::Q => {
            let g = base_alphabet.id("g")?;
            for w in &base_forms.words {
                let m = w.iter().take_while(|&&l| l == g).count();
                let rest = &w[m..];
                let shaped = rest.windows(2).all(|p| p[0] < p[1]) && !rest.contains(&g);
                if !shaped {
                    return Err(PresentationError::Forms(format!(
                        "normal form {} is not of the shape g^m e_i1 ... e_ik",
                        base_alphabet.render(w)
                    )));
                }
                words.push(lift(w)?);
            }
            for r in 0..n {
                for i in 1..=half_index(n) {
                    for s in 0..n {
                        let mut names = vec!["g".to_string(); r as usize];
                        names.push(format!("x_{i}"));
                        names.extend(std::iter::repeat_n("g".to_string(), s as usize));
                        words.push(alphabet.word(names)?);
                    }
                }
            }
        }
        _ => unreachable!(),
    }
    let mut seen = HashMap::new();
    for (i, w) in words.iter().enumerate() {
        if let Some(j) = seen.insert(w.clone(), i) {
            return Err(PresentationError::Forms(format!(
                "word {} listed twice (positions {j} and {i})",
                alphabet.render(w)
            )));
        }
    }
    Ok(FormsSet { alphabet, words })
}

/// The `1 + n^2` prescribed words `W'_1` over the alphabet of `<B | V>`.
pub fn vbar_fixed_forms(alphabet: &Alphabet, n: u32) -> Result<Vec<Word>, PresentationError> {
    let e_run = |from: u32| (from..n).map(|j| format!("e_{j}")).collect::<Vec<_>>();
    let pow = |l: &str, k: u32| vec![l.to_string(); k as usize];
    let mut u0 = e_run(2);
    u0.extend(["x".to_string(), "y".to_string()]);
    // e_{i+1} ... e_{n-1} x y^i u0
    let left = |i: u32| [e_run(i + 1), vec!["x".into()], pow("y", i), u0.clone()].concat();
    // x^{j-1} e_{j+1} ... e_{n-1} x y
    let right = |j: u32| [pow("x", j - 1), e_run(j + 1), vec!["x".into(), "y".into()]].concat();
    let mut out = vec![[vec!["y".to_string(), "x".to_string()], u0.clone()].concat()];
    for i in 1..n {
        for j in 1..n {
            out.push([left(i), right(j)].concat());
        }
    }
    for i in 1..n {
        out.push([left(i), pow("x", n - 1)].concat());
    }
    let top = [pow("y", n - 1), u0.clone()].concat();
    for j in 1..n {
        out.push([top.clone(), right(j)].concat());
    }
    out.push([top, pow("x", n - 1)].concat());
    out.into_iter().map(|w| alphabet.word(w)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_forms_count() {
        for n in 4..=7 {
            let b = build_alphabet(RelationFamilyId::V, n).unwrap();
            assert_eq!(vbar_fixed_forms(&b, n).unwrap().len() as u32, 1 + n * n);
        }
    }
}
