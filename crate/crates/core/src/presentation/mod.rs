//! Monoid presentations: alphabets, words, relations, the relation families
//! for the dihedral inverse monoids, and the edits that transform one
//! presentation into another.

mod families;
mod forms;
mod tietze;

use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{PermError, PresentationError};
use crate::iperm::PartialPerm;

pub use families::{
    build_alphabet, build_assignment, build_relations, odi_rank_two_forms, relation_count_formula,
    vbar_extension_parts, RelationFamilyId,
};
pub use forms::{build_forms, vbar_fixed_forms, FormsSet};
pub use tietze::{
    add_relation, build_extension_presentation, delete_relation, eliminate_generator,
    elimination_chain, extension_alphabet, Check, TietzeChain,
};

/// A letter of an alphabet: dense id plus display name.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub id: usize,
    pub name: String,
}

/// An ordered list of uniquely named letters with ids `0..len`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
    ) -> Result<Self, PresentationError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(PresentationError::DuplicateLetter(name.clone()));
            }
        }
        Ok(Alphabet { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, id: usize) -> &str {
        &self.names[id]
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.names.iter().enumerate().map(|(id, name)| Letter {
            id,
            name: name.clone(),
        })
    }

    pub fn id(&self, name: &str) -> Result<usize, PresentationError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| PresentationError::UnknownLetter(name.to_string()))
    }

    /// Parses a word from letter names.
    pub fn word<S: AsRef<str>>(
        &self,
        names: impl IntoIterator<Item = S>,
    ) -> Result<Word, PresentationError> {
        names
            .into_iter()
            .map(|n| self.id(n.as_ref()))
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }

    /// Parses a space-separated word, e.g. `"x y e_3"`; `""` is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word, PresentationError> {
        self.word(text.split_whitespace())
    }

    pub fn render(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .map(|&id| self.names[id].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn check(&self, w: &Word) -> Result<(), PresentationError> {
        match w.iter().find(|&&id| id >= self.len()) {
            Some(&id) => Err(PresentationError::BadLetterId(id)),
            None => Ok(()),
        }
    }
}

/// A word as a sequence of letter ids; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl Deref for Word {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

/// A relation `lhs = rhs` with a source tag such as `R_7[i=2,j=5]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
    pub tag: String,
}

impl Relation {
    pub fn new(lhs: Word, rhs: Word, tag: impl Into<String>) -> Self {
        Relation {
            lhs,
            rhs,
            tag: tag.into(),
        }
    }

    /// Equality of both sides, ignoring the tag.
    pub fn same_sides(&self, other: &Relation) -> bool {
        self.lhs == other.lhs && self.rhs == other.rhs
    }
}

/// A monoid presentation `<alphabet | relations>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub label: String,
    pub alphabet: Alphabet,
    pub relations: Vec<Relation>,
}

impl Presentation {
    pub fn new(
        label: impl Into<String>,
        alphabet: Alphabet,
        relations: Vec<Relation>,
    ) -> Result<Self, PresentationError> {
        for r in &relations {
            alphabet.check(&r.lhs)?;
            alphabet.check(&r.rhs)?;
        }
        Ok(Presentation {
            label: label.into(),
            alphabet,
            relations,
        })
    }

    pub fn render_relation(&self, r: &Relation) -> String {
        format!(
            "{} = {}",
            self.alphabet.render(&r.lhs),
            self.alphabet.render(&r.rhs)
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&PresentationFile::from(self))
            .expect("presentation serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, PresentationError> {
        let file: PresentationFile =
            serde_json::from_str(text).map_err(|e| PresentationError::Parse(e.to_string()))?;
        file.try_into()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: <{}>", self.label, self.alphabet.names().join(", "))?;
        for r in &self.relations {
            writeln!(f, "  ({}) {}", r.tag, self.render_relation(r))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PresentationFile {
    label: String,
    letters: Vec<String>,
    relations: Vec<RelationFile>,
}

#[derive(Serialize, Deserialize)]
struct RelationFile {
    lhs: Vec<String>,
    rhs: Vec<String>,
    #[serde(default)]
    tag: String,
}

impl From<&Presentation> for PresentationFile {
    fn from(p: &Presentation) -> Self {
        let names = |w: &Word| {
            w.iter()
                .map(|&id| p.alphabet.name(id).to_string())
                .collect()
        };
        PresentationFile {
            label: p.label.clone(),
            letters: p.alphabet.names().to_vec(),
            relations: p
                .relations
                .iter()
                .map(|r| RelationFile {
                    lhs: names(&r.lhs),
                    rhs: names(&r.rhs),
                    tag: r.tag.clone(),
                })
                .collect(),
        }
    }
}

impl TryFrom<PresentationFile> for Presentation {
    type Error = PresentationError;

    fn try_from(file: PresentationFile) -> Result<Self, Self::Error> {
        let alphabet = Alphabet::new(file.letters)?;
        let relations = file
            .relations
            .into_iter()
            .map(|r| {
                Ok(Relation::new(
                    alphabet.word(&r.lhs)?,
                    alphabet.word(&r.rhs)?,
                    r.tag,
                ))
            })
            .collect::<Result<_, PresentationError>>()?;
        Presentation::new(file.label, alphabet, relations)
    }
}

/// Images of the letters of an alphabet as partial permutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub alphabet: Alphabet,
    pub degree: u32,
    images: Vec<PartialPerm>,
}

impl Assignment {
    pub fn new(
        alphabet: Alphabet,
        degree: u32,
        images: Vec<PartialPerm>,
    ) -> Result<Self, PresentationError> {
        if images.len() != alphabet.len() {
            return Err(PresentationError::AlphabetMismatch(format!(
                "{} letters but {} images",
                alphabet.len(),
                images.len()
            )));
        }
        if let Some(f) = images.iter().find(|f| f.degree() != degree) {
            return Err(PermError::DegreeMismatch(degree, f.degree()).into());
        }
        Ok(Assignment {
            alphabet,
            degree,
            images,
        })
    }

    pub fn image(&self, letter: usize) -> &PartialPerm {
        &self.images[letter]
    }

    pub fn images(&self) -> &[PartialPerm] {
        &self.images
    }

    /// Restriction to a sub-alphabet, matching letters by name.
    pub fn restrict_to(&self, alphabet: &Alphabet) -> Result<Assignment, PresentationError> {
        let images = alphabet
            .names()
            .iter()
            .map(|name| Ok(self.images[self.alphabet.id(name)?].clone()))
            .collect::<Result<_, PresentationError>>()?;
        Assignment::new(alphabet.clone(), self.degree, images)
    }
}

/// Left-to-right product of the letter images; the empty word gives the identity.
pub fn evaluate(w: &[usize], a: &Assignment) -> PartialPerm {
    w.iter().fold(PartialPerm::identity(a.degree), |acc, &l| {
        acc.then(&a.images[l])
    })
}

/// Outcome of evaluating both sides of every relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub checked: usize,
    /// Tags and rendered text of the relations that fail.
    pub failing: Vec<(String, String)>,
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.failing.is_empty()
    }
}

pub fn check_relations_hold(
    p: &Presentation,
    a: &Assignment,
) -> Result<RelationReport, PresentationError> {
    if p.alphabet != a.alphabet {
        return Err(PresentationError::AlphabetMismatch(format!(
            "presentation {:?} vs assignment {:?}",
            p.alphabet.names(),
            a.alphabet.names()
        )));
    }
    let failing = p
        .relations
        .iter()
        .filter(|r| evaluate(&r.lhs, a) != evaluate(&r.rhs, a))
        .map(|r| (r.tag.clone(), p.render_relation(r)))
        .collect();
    Ok(RelationReport {
        checked: p.relations.len(),
        failing,
    })
}
