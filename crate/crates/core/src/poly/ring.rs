use std::fmt;
use std::sync::Arc;

use super::{format_polynomial, parse_polynomial, Polynomial};
use crate::error::{Error, Result};
use crate::field::ScalarField;

/// `field[vars] / (relations)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: ScalarField,
    vars: Vec<String>,
    relations: Vec<Polynomial>,
}

impl PolyRing {
    pub fn new(field: ScalarField, vars: Vec<String>) -> Result<Arc<Self>> {
        Self::with_relations(field, vars, Vec::new())
    }

    pub fn with_relations(
        field: ScalarField,
        vars: Vec<String>,
        relations: Vec<Polynomial>,
    ) -> Result<Arc<Self>> {
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::Invalid(format!("variable `{v}` declared twice")));
            }
        }
        for r in &relations {
            if r.field() != &field || r.nvars() != vars.len() {
                return Err(Error::RingMismatch("relation outside the declared ring".into()));
            }
        }
        let relations = relations.into_iter().filter(|r| !r.is_zero()).collect();
        Ok(Arc::new(PolyRing { field, vars, relations }))
    }

    /// Convenience constructor from text: `PolyRing::parse(QQ, &["x","y"], &["x*y"])`.
    pub fn parse(field: ScalarField, vars: &[&str], relations: &[&str]) -> Result<Arc<Self>> {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let rels = relations
            .iter()
            .map(|r| parse_polynomial(r, &field, &names))
            .collect::<Result<Vec<_>>>()?;
        Self::with_relations(field, names, rels)
    }

    pub fn field(&self) -> &ScalarField {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.relations.is_empty()
    }

    /// The ambient polynomial ring, relations dropped.
    pub fn ambient(&self) -> Arc<PolyRing> {
        Arc::new(PolyRing { field: self.field.clone(), vars: self.vars.clone(), relations: Vec::new() })
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars.iter().position(|v| v == name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn var(&self, name: &str) -> Result<Polynomial> {
        Ok(Polynomial::var(&self.field, self.nvars(), self.var_index(name)?))
    }

    pub fn var_at(&self, i: usize) -> Polynomial {
        Polynomial::var(&self.field, self.nvars(), i)
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(&self.field, self.nvars())
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(&self.field, self.nvars())
    }

    pub fn constant(&self, n: i64) -> Polynomial {
        Polynomial::from_i64(&self.field, self.nvars(), n)
    }

    pub fn poly(&self, text: &str) -> Result<Polynomial> {
        parse_polynomial(text, &self.field, &self.vars)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        f.field() == &self.field && f.nvars() == self.nvars()
    }

    pub fn check(&self, f: &Polynomial) -> Result<()> {
        if self.contains(f) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("polynomial does not belong to {self}")))
        }
    }

    pub fn fmt_poly(&self, f: &Polynomial) -> String {
        format_polynomial(f, &self.vars)
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self.vars.join(","))?;
        if !self.relations.is_empty() {
            let rels: Vec<String> = self.relations.iter().map(|r| self.fmt_poly(r)).collect();
            write!(f, " mod ({})", rels.join(", "))?;
        }
        Ok(())
    }
}
