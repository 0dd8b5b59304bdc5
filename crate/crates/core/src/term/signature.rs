//! Base theories: generator declarations, the chosen involution and relation names.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `(wires, real parameter count)` of the generators every backend knows about.
pub fn builtin_arity(name: &str) -> Option<(usize, usize)> {
    Some(match name {
        "x" | "j" | "v" | "s" | "h" | "k" | "t" => (1, 0),
        "z" => (1, 1),
        "omega" => (0, 0),
        "phase" => (0, 1),
        _ => return None,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GeneratorDecl {
    pub name: String,
    pub wires: usize,
    #[serde(default)]
    pub real_params: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Signature {
    pub name: String,
    pub generators: Vec<GeneratorDecl>,
    pub involution: String,
    #[serde(default)]
    pub relations: Vec<String>,
    /// generator name -> backend name -> builtin key
    #[serde(default)]
    pub backend_keys: BTreeMap<String, BTreeMap<String, String>>,
}

const SHIPPED: [(&str, &str); 5] = [
    ("x", include_str!("../../data/sig/x.sig")),
    ("mobit", include_str!("../../data/sig/mobit.sig")),
    ("v", include_str!("../../data/sig/v.sig")),
    ("quantum", include_str!("../../data/sig/quantum.sig")),
    ("pi", include_str!("../../data/sig/pi.sig")),
];

impl Signature {
    pub fn from_json(text: &str) -> Result<Self> {
        let sig: Signature =
            serde_json::from_str(text).map_err(|e| Error::Invalid(format!("signature: {e}")))?;
        sig.validate()?;
        Ok(sig)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// One of the shipped signatures: `x`, `mobit`, `v`, `quantum`, `pi`
    /// (a trailing `.sig` is ignored).
    pub fn shipped(name: &str) -> Result<Self> {
        let key = name.strip_suffix(".sig").unwrap_or(name);
        let (_, text) = SHIPPED
            .iter()
            .find(|(n, _)| *n == key)
            .ok_or_else(|| Error::Invalid(format!("no shipped signature `{name}`")))?;
        Signature::from_json(text)
    }

    pub fn shipped_names() -> Vec<&'static str> {
        SHIPPED.iter().map(|(n, _)| *n).collect()
    }

    pub fn validate(&self) -> Result<()> {
        for (k, g) in self.generators.iter().enumerate() {
            if self.generators[..k].iter().any(|h| h.name == g.name) {
                return Err(Error::Invalid(format!("generator `{}` declared twice", g.name)));
            }
        }
        match self.generators.iter().find(|g| g.name == self.involution) {
            Some(g) if g.wires == 1 && g.real_params == 0 => {}
            Some(_) => {
                return Err(Error::Invalid(format!(
                    "involution `{}` must be a 1-wire generator without parameters",
                    self.involution
                )))
            }
            None => return Err(Error::Invalid(format!("involution `{}` is not declared", self.involution))),
        }
        for name in self.backend_keys.keys() {
            if self.decl(name).is_none() {
                return Err(Error::Invalid(format!("backend key for undeclared generator `{name}`")));
            }
        }
        Ok(())
    }

    pub fn decl(&self, name: &str) -> Option<&GeneratorDecl> {
        self.generators.iter().find(|g| g.name == name)
    }

    pub fn arity(&self, name: &str) -> Option<(usize, usize)> {
        self.decl(name).map(|g| (g.wires, g.real_params))
    }

    /// The builtin semantic key used for `generator` on `backend`; defaults to the name itself.
    pub fn backend_key<'a>(&'a self, generator: &'a str, backend: &str) -> &'a str {
        self.backend_keys
            .get(generator)
            .and_then(|m| m.get(backend))
            .map(String::as_str)
            .unwrap_or(generator)
    }

    /// Generators other than the involution, which the circuit language writes as `x`.
    pub fn proper_generators(&self) -> impl Iterator<Item = &GeneratorDecl> {
        self.generators.iter().filter(move |g| g.name != self.involution)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_signatures_validate() {
        for name in Signature::shipped_names() {
            let sig = Signature::shipped(name).unwrap();
            assert_eq!(sig.name, name);
            let back = Signature::from_json(&sig.to_json()).unwrap();
            assert_eq!(back, sig);
        }
    }

    #[test]
    fn invalid_signatures() {
        let dup = r#"{"name":"d","generators":[{"name":"x","wires":1},{"name":"x","wires":1}],"involution":"x"}"#;
        assert!(Signature::from_json(dup).is_err());
        let wide = r#"{"name":"w","generators":[{"name":"x","wires":2}],"involution":"x"}"#;
        assert!(Signature::from_json(wide).is_err());
        let missing = r#"{"name":"m","generators":[],"involution":"x"}"#;
        assert!(Signature::from_json(missing).is_err());
    }
}
