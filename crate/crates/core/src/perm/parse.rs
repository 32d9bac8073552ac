use serde::{Deserialize, Serialize};

use super::group::PermGroup;
use super::permutation::Permutation;
use crate::error::{Error, Result};

/// A generator in a group-spec file: cycle notation or an image array.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorSpec {
    Cycles(String),
    Images(Vec<u32>),
}

/// `{ "degree": n, "generators": ["(0 1)(2 3 4)", [1, 0, 2, ..], ..] }`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpecFile {
    pub degree: usize,
    pub generators: Vec<GeneratorSpec>,
}

impl GroupSpecFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn permutations(&self) -> Result<Vec<Permutation>> {
        self.generators
            .iter()
            .map(|g| match g {
                GeneratorSpec::Cycles(s) => Permutation::parse_cycles(self.degree, s),
                GeneratorSpec::Images(images) => {
                    if images.len() != self.degree {
                        return Err(Error::DegreeMismatch {
                            expected: self.degree,
                            found: images.len(),
                        });
                    }
                    Permutation::from_images(images.clone())
                }
            })
            .collect()
    }

    pub fn to_group(&self) -> Result<PermGroup> {
        PermGroup::new(self.degree, self.permutations()?)
    }

    /// Spec for a group's generators in cycle notation.
    pub fn from_group(group: &PermGroup) -> Self {
        GroupSpecFile {
            degree: group.degree(),
            generators: group
                .generators()
                .iter()
                .map(|g| GeneratorSpec::Cycles(g.to_string()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_generator_forms() {
        let spec =
            GroupSpecFile::from_json(r#"{"degree": 4, "generators": ["(0 1)", [1, 2, 3, 0]]}"#)
                .unwrap();
        assert_eq!(spec.to_group().unwrap().order_u64(), 24);
    }

    #[test]
    fn rejects_bad_input() {
        let bad_len = GroupSpecFile::from_json(r#"{"degree": 4, "generators": [[1, 0]]}"#).unwrap();
        assert!(bad_len.permutations().is_err());
        let bad_point = GroupSpecFile::from_json(r#"{"degree": 3, "generators": ["(0 7)"]}"#).unwrap();
        assert!(bad_point.permutations().is_err());
        assert!(GroupSpecFile::from_json("{").is_err());
    }
}
