use std::sync::Arc;

use super::IdealHandle;
use crate::error::{Error, Result};
use crate::poly::{MonomialOrder, PolyRing, Polynomial};

/// A ring map `source -> target` given by one image per source variable.
#[derive(Clone, Debug)]
pub struct RingMap {
    source: Arc<PolyRing>,
    target: Arc<PolyRing>,
    images: Vec<Polynomial>,
}

impl RingMap {
    /// Checks that every source relation maps into the target relations.
    pub fn new(source: &Arc<PolyRing>, target: &Arc<PolyRing>, images: Vec<Polynomial>) -> Result<Self> {
        if images.len() != source.nvars() {
            return Err(Error::Arity { expected: source.nvars(), got: images.len() });
        }
        if source.field() != target.field() {
            return Err(Error::RingMismatch("ring maps must preserve the coefficient field".into()));
        }
        for img in &images {
            target.check(img)?;
        }
        let map = RingMap { source: source.clone(), target: target.clone(), images };
        let zero = IdealHandle::zero(target);
        for (i, r) in source.relations().iter().enumerate() {
            if !zero.member(&map.apply_unchecked(r))? {
                return Err(Error::Precondition(format!(
                    "ill-defined map: relation #{i} `{}` does not map to zero",
                    source.fmt_poly(r)
                )));
            }
        }
        Ok(map)
    }

    pub fn parse(source: &Arc<PolyRing>, target: &Arc<PolyRing>, images: &[&str]) -> Result<Self> {
        let imgs = images.iter().map(|s| target.poly(s)).collect::<Result<Vec<_>>>()?;
        Self::new(source, target, imgs)
    }

    pub fn identity(ring: &Arc<PolyRing>) -> Self {
        let images = (0..ring.nvars()).map(|i| ring.var_at(i)).collect();
        RingMap { source: ring.clone(), target: ring.clone(), images }
    }

    pub fn source(&self) -> &Arc<PolyRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PolyRing> {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    fn apply_unchecked(&self, f: &Polynomial) -> Polynomial {
        f.substitute(&self.images).expect("images checked at construction")
    }

    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        self.source.check(f)?;
        Ok(self.apply_unchecked(f))
    }

    /// `φ⁻¹(J)`: eliminate the target variables from the graph ideal
    /// `(x_i - φ(x_i)) + J + target relations` in `k[target vars, source vars]`.
    pub fn contract(&self, j: &IdealHandle) -> Result<IdealHandle> {
        if j.ring() != &self.target {
            return Err(Error::RingMismatch("ideal does not live in the target ring".into()));
        }
        let nt = self.target.nvars();
        let ns = self.source.nvars();
        let n = nt + ns;
        let tmap: Vec<usize> = (0..nt).collect();
        let mut vars: Vec<String> = self.target.vars().iter().map(|v| format!("{v}'")).collect();
        vars.extend(self.source.vars().iter().cloned());
        let graph_ring = PolyRing::new(self.source.field().clone(), vars)?;
        let mut gens: Vec<Polynomial> = j.all_generators().iter().map(|g| g.remap(n, &tmap)).collect();
        for (i, img) in self.images.iter().enumerate() {
            gens.push(&graph_ring.var_at(nt + i) - &img.remap(n, &tmap));
        }
        let big = IdealHandle::new(&graph_ring, gens)?.with_budget(j.budget());
        let basis = big.groebner(MonomialOrder::Block(nt))?;
        let keep: Vec<usize> = (nt..n).collect();
        let out = basis.iter().filter_map(|g| g.restrict(&keep)).collect();
        Ok(IdealHandle::new(&self.source, out)?.with_budget(j.budget()))
    }
}

pub fn contract_map(map: &RingMap, j: &IdealHandle) -> Result<IdealHandle> {
    map.contract(j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ScalarField;

    #[test]
    fn contraction_examples() {
        let q = ScalarField::Rationals;
        let r = PolyRing::parse(q.clone(), &["x", "y"], &[]).unwrap();
        let id = RingMap::identity(&r);
        let j = IdealHandle::parse(&r, &["x"]).unwrap();
        assert!(id.contract(&j).unwrap().equals(&j).unwrap());

        let ks = PolyRing::parse(q.clone(), &["s"], &[]).unwrap();
        let kx = PolyRing::parse(q.clone(), &["x"], &[]).unwrap();
        let phi = RingMap::parse(&ks, &kx, &["x^2"]).unwrap();
        let c = phi.contract(&IdealHandle::parse(&kx, &["x - 2"]).unwrap()).unwrap();
        assert!(c.equals(&IdealHandle::parse(&ks, &["s - 4"]).unwrap()).unwrap());

        let src = PolyRing::parse(q.clone(), &["s", "t", "u"], &["s*u - t^2 + t"]).unwrap();
        let phi = RingMap::parse(&src, &r, &["x", "x*y", "x*y^2 - y"]).unwrap();
        let c = phi.contract(&IdealHandle::parse(&r, &["x", "y - 1"]).unwrap()).unwrap();
        assert!(c.member(&src.poly("s").unwrap()).unwrap());
        assert!(c.member(&src.poly("t").unwrap()).unwrap());
    }

    #[test]
    fn ill_defined_map_is_rejected() {
        let q = ScalarField::Rationals;
        let src = PolyRing::parse(q.clone(), &["s"], &["s^2"]).unwrap();
        let tgt = PolyRing::parse(q, &["x"], &[]).unwrap();
        assert!(RingMap::parse(&src, &tgt, &["x"]).is_err());
    }
}
