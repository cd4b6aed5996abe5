//! Presentation edits that preserve the presented monoid: adding and
//! deleting consequences, eliminating a defined generator, and extending a
//! presentation by an involution acting by conjugation.

use std::fmt;
use std::str::FromStr;

use crate::congruence::{is_consequence, EnumerationCaps};
use crate::error::{CongruenceError, PresentationError};

use super::families::{build_relations, RelationFamilyId};
use super::{Alphabet, Presentation, Relation, Word};

/// Whether an added or deleted relation is first proved to be a consequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Checked(EnumerationCaps),
    Unchecked,
}

fn require_consequence(
    p: &Presentation,
    rel: &Relation,
    check: Check,
) -> Result<(), PresentationError> {
    let Check::Checked(caps) = check else {
        return Ok(());
    };
    match is_consequence(p, rel, caps) {
        Ok(true) => Ok(()),
        Ok(false) => Err(PresentationError::NotAConsequence(p.render_relation(rel))),
        Err(CongruenceError::Indeterminate) => {
            Err(PresentationError::Indeterminate(p.render_relation(rel)))
        }
        Err(e) => Err(PresentationError::BadShape(e.to_string())),
    }
}

/// Appends `rel`, which in checked mode must already follow from `p`.
pub fn add_relation(
    p: &Presentation,
    rel: Relation,
    check: Check,
) -> Result<Presentation, PresentationError> {
    require_consequence(p, &rel, check)?;
    let mut relations = p.relations.clone();
    relations.push(rel);
    Presentation::new(p.label.clone(), p.alphabet.clone(), relations)
}

/// Removes relation `index`, which in checked mode must follow from the rest.
pub fn delete_relation(
    p: &Presentation,
    index: usize,
    check: Check,
) -> Result<Presentation, PresentationError> {
    if index >= p.relations.len() {
        return Err(PresentationError::NoSuchRelation(index));
    }
    let mut rest = p.relations.clone();
    let rel = rest.remove(index);
    let q = Presentation::new(p.label.clone(), p.alphabet.clone(), rest)?;
    require_consequence(&q, &rel, check)?;
    Ok(q)
}

/// Drops `letter`, substituting `replacement` (a word over `p`'s alphabet)
/// for each occurrence. Relations whose sides become identical are dropped.
pub fn eliminate_generator(
    p: &Presentation,
    letter: &str,
    replacement: &Word,
) -> Result<Presentation, PresentationError> {
    let b = p.alphabet.id(letter)?;
    p.alphabet.check(replacement)?;
    if replacement.contains(&b) {
        return Err(PresentationError::SelfReferentialReplacement(letter.into()));
    }
    let alphabet = Alphabet::new(p.alphabet.names().iter().filter(|n| *n != letter).cloned())?;
    let shift = |id: usize| if id > b { id - 1 } else { id };
    let substitute = |w: &Word| -> Word {
        let mut out = Vec::with_capacity(w.len());
        for &id in w.iter() {
            if id == b {
                out.extend(replacement.iter().map(|&r| shift(r)));
            } else {
                out.push(shift(id));
            }
        }
        Word(out)
    };
    let relations = p
        .relations
        .iter()
        .map(|r| Relation::new(substitute(&r.lhs), substitute(&r.rhs), r.tag.clone()))
        .filter(|r| r.lhs != r.rhs)
        .collect();
    Presentation::new(format!("{} - {letter}", p.label), alphabet, relations)
}

/// `new_letter` followed by the letters of `base`.
pub fn extension_alphabet(
    base: &Alphabet,
    new_letter: &str,
) -> Result<Alphabet, PresentationError> {
    Alphabet::new(std::iter::once(new_letter.to_string()).chain(base.names().iter().cloned()))
}

/// Base relations, then `b b = 1`, then the conjugation relations
/// `b a = v b`, then `u0 b = v0`. The supplied relations are words over
/// [`extension_alphabet`]; `v` and `u0` must avoid `b`.
pub fn build_extension_presentation(
    base: &Presentation,
    new_letter: &str,
    conj_relations: &[Relation],
    u0_relation: &Relation,
) -> Result<Presentation, PresentationError> {
    let alphabet = extension_alphabet(&base.alphabet, new_letter)?;
    let b = 0;
    for r in conj_relations.iter().chain([u0_relation]) {
        alphabet.check(&r.lhs)?;
        alphabet.check(&r.rhs)?;
    }
    let free_of_b = |w: &[usize]| !w.contains(&b);
    let render =
        |r: &Relation| format!("{} = {}", alphabet.render(&r.lhs), alphabet.render(&r.rhs));
    for r in conj_relations {
        let ok = r.lhs.len() == 2
            && r.lhs[0] == b
            && r.lhs[1] != b
            && r.rhs.last() == Some(&b)
            && free_of_b(&r.rhs[..r.rhs.len() - 1]);
        if !ok {
            return Err(PresentationError::BadShape(format!(
                "expected {new_letter} a = v {new_letter}, got {}",
                render(r)
            )));
        }
    }
    let ok = u0_relation.lhs.last() == Some(&b)
        && free_of_b(&u0_relation.lhs[..u0_relation.lhs.len() - 1]);
    if !ok {
        return Err(PresentationError::BadShape(format!(
            "expected u0 {new_letter} = v0, got {}",
            render(u0_relation)
        )));
    }
    let mut relations: Vec<Relation> = base
        .relations
        .iter()
        .map(|r| {
            let lift = |w: &Word| Word(w.iter().map(|&id| id + 1).collect());
            Relation::new(lift(&r.lhs), lift(&r.rhs), r.tag.clone())
        })
        .collect();
    relations.push(Relation::new(
        Word(vec![b, b]),
        Word::empty(),
        format!("{new_letter}^2"),
    ));
    relations.extend(conj_relations.iter().cloned());
    relations.push(u0_relation.clone());
    Presentation::new(
        format!("{} + {new_letter}", base.label),
        alphabet,
        relations,
    )
}

/// The two directed elimination chains.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TietzeChain {
    /// From `<A | R>`: eliminate `e_n := x y`, then `e_1 := y x`.
    Odi,
    /// From `<D | Q>`: add `e_i = g^{n-i+1} e_1 g^{i-1}` for `2 <= i <= n`,
    /// then eliminate each such `e_i`.
    Opdi,
}

impl fmt::Display for TietzeChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TietzeChain::Odi => "odi",
            TietzeChain::Opdi => "opdi",
        })
    }
}

impl FromStr for TietzeChain {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "odi" => Ok(TietzeChain::Odi),
            "opdi" => Ok(TietzeChain::Opdi),
            _ => Err(format!("unknown chain {s:?}, expected odi or opdi")),
        }
    }
}

impl TietzeChain {
    pub fn start(self) -> RelationFamilyId {
        match self {
            TietzeChain::Odi => RelationFamilyId::R,
            TietzeChain::Opdi => RelationFamilyId::Q,
        }
    }
}

/// Every intermediate presentation of the chain in degree `n`, starting
/// with the original. Added relations are verified when `check` asks for it.
pub fn elimination_chain(
    chain: TietzeChain,
    n: u32,
    check: Check,
) -> Result<Vec<Presentation>, PresentationError> {
    let start = build_relations(chain.start(), n)?;
    let mut stages = vec![start.clone()];
    match chain {
        TietzeChain::Odi => {
            let en = format!("e_{n}");
            let p = eliminate_generator(&start, &en, &start.alphabet.parse_word("x y")?)?;
            stages.push(p.clone());
            let p = eliminate_generator(&p, "e_1", &p.alphabet.parse_word("y x")?)?;
            stages.push(p);
        }
        TietzeChain::Opdi => {
            let defining = |alphabet: &Alphabet, i: u32| -> Result<Word, PresentationError> {
                let mut names = vec!["g"; (n - i + 1) as usize];
                names.push("e_1");
                names.extend(std::iter::repeat_n("g", (i - 1) as usize));
                alphabet.word(names)
            };
            let mut p = start;
            for i in 2..=n {
                let rel = Relation::new(
                    p.alphabet.word([format!("e_{i}")])?,
                    defining(&p.alphabet, i)?,
                    format!("T1[i={i}]"),
                );
                // Once one definition is in place the rest follow from it,
                // so only the first is worth an enumeration.
                let c = if i == 2 { check } else { Check::Unchecked };
                p = add_relation(&p, rel, c)?;
            }
            stages.push(p.clone());
            for i in 2..=n {
                let repl = defining(&p.alphabet, i)?;
                p = eliminate_generator(&p, &format!("e_{i}"), &repl)?;
                stages.push(p.clone());
            }
        }
    }
    Ok(stages)
}
