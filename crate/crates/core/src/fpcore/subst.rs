use super::presentation::Presentation;
use super::word::Word;
use super::FpError;

/// A map on generators, extended to words. It is a homomorphism of the
/// presented groups only if every source relator maps to a consequence of the
/// target relators; [`super::check_homomorphism`] decides that when it can.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionMap {
    source: Presentation,
    target: Presentation,
    images: Vec<Word>,
}

impl SubstitutionMap {
    pub fn new(
        source: Presentation,
        target: Presentation,
        images: Vec<Word>,
    ) -> Result<Self, FpError> {
        if images.len() != source.num_generators() {
            return Err(FpError::ImageCount {
                expected: source.num_generators(),
                got: images.len(),
            });
        }
        for (g, w) in images.iter().enumerate() {
            if let Some(i) = w.max_generator() {
                if i >= target.num_generators() {
                    return Err(FpError::ImageOutOfRange {
                        generator: g,
                        index: i,
                    });
                }
            }
        }
        Ok(SubstitutionMap {
            source,
            target,
            images,
        })
    }

    /// Images given as DSL words over the target's generator names.
    pub fn from_strs(
        source: Presentation,
        target: Presentation,
        images: &[&str],
    ) -> Result<Self, FpError> {
        let ws = images
            .iter()
            .map(|s| super::parse_word(s, target.generators()))
            .collect::<Result<Vec<_>, _>>()?;
        SubstitutionMap::new(source, target, ws)
    }

    pub fn identity(p: Presentation) -> Self {
        let images = (0..p.num_generators()).map(Word::generator).collect();
        SubstitutionMap {
            source: p.clone(),
            target: p,
            images,
        }
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn target(&self) -> &Presentation {
        &self.target
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn apply(&self, w: &Word) -> Word {
        substitute(self, w)
    }

    /// `other ∘ self`: first this map, then `other`.
    pub fn then(&self, other: &SubstitutionMap) -> SubstitutionMap {
        SubstitutionMap {
            source: self.source.clone(),
            target: other.target.clone(),
            images: self.images.iter().map(|w| other.apply(w)).collect(),
        }
    }
}

pub fn substitute(m: &SubstitutionMap, w: &Word) -> Word {
    let mut out = Word::identity();
    for l in w.letters() {
        let img = &m.images[l.generator()];
        if l.is_inverse() {
            out = out.mul(&img.inverse());
        } else {
            out = out.mul(img);
        }
    }
    out
}
