//! The identity suite: every identity is evaluated as a table of
//! polynomials and must be the exact zero polynomial.
//!
//! Identities involving curvature are checked in the form valid for an
//! arbitrary connection: the R̃ terms below vanish for frame-derived
//! connections, recovering the flat-case statements.

use serde::Serialize;

use super::calculus::{algebraic_bracket, apply_curvature, directional, jacobi_form, lie_bracket_fields};
use super::{Connection, Frame};
use crate::index;
use crate::poly::Poly;
use crate::rational::rat;
use crate::tensor::{TensorField, VectorForm};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub statement: String,
    pub holds: bool,
    /// Number of nonzero components of `lhs − rhs` over all probes.
    pub nonzero_components: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub tilde_flat: bool,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn get(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Deterministic quadratic vector fields used as X, Y, Z and ξ.
pub fn probe_fields(n: usize, count: usize) -> Vec<TensorField> {
    (0..count)
        .map(|k| {
            let comps = (0..n)
                .map(|i| {
                    let v = |j: usize| Poly::var(n, j % n);
                    let c = Poly::constant(n, rat((i + 2 * k + 1) as i64));
                    let lin = v(i + k).scale(&rat(k as i64 - 1));
                    let quad = &v(i + 1) * &v(i + 2 * k + 1);
                    &(&c + &lin) + &quad.scale(&rat(if (i + k) % 2 == 0 { 1 } else { -2 }))
                })
                .collect();
            TensorField::vector(comps).expect("probe components share one chart")
        })
        .collect()
}

struct Tally {
    nonzero: usize,
}

impl Tally {
    fn new() -> Self {
        Tally { nonzero: 0 }
    }

    fn add(&mut self, t: &TensorField) {
        self.nonzero += t.nonzero().len();
    }

    fn add_poly(&mut self, p: &Poly) {
        if !p.is_zero() {
            self.nonzero += 1;
        }
    }

    fn finish(self, name: &str, statement: &str) -> IdentityCheck {
        IdentityCheck {
            name: name.into(),
            statement: statement.into(),
            holds: self.nonzero == 0,
            nonzero_components: self.nonzero,
        }
    }
}

fn lin(parts: &[(i64, &TensorField)]) -> TensorField {
    let mut acc = parts[0].1.scale(&rat(parts[0].0));
    for (c, t) in &parts[1..] {
        acc = acc.add(&t.scale(&rat(*c)));
    }
    acc
}

impl Connection {
    /// Runs every identity. With a frame, the parallel-bracket hypothesis fields
    /// (∇̃-parallel X, Y) are the frame columns.
    pub fn identity_suite(&self, frame: Option<&Frame>) -> IdentityReport {
        assert!(self.truncation().is_none(), "identity suite runs on base connections");
        let n = self.dim();
        let tor = self.torsion();
        let t = tor.field();
        let rt = self.curvature_tilde();
        let rh = self.curvature_hat();
        let nt = self.nabla_tilde(t); // N[i; l, a, b] = (∇̃_l T)^i_{ab}
        let jf = jacobi_form(&tor);
        let j = jf.tensor();
        let probes = probe_fields(n, 3);

        let mut checks = Vec::new();
        let nab_t: Vec<TensorField> = probes.iter().map(|y| self.nabla_tilde(y)).collect();
        let nab_h: Vec<TensorField> = probes.iter().map(|y| self.nabla_hat(y)).collect();

        // Covariant-derivative relations on vector fields.
        let mut e11 = [Tally::new(), Tally::new(), Tally::new(), Tally::new()];
        for (xi, x) in probes.iter().enumerate() {
            for (yi, y) in probes.iter().enumerate() {
                let txy = algebraic_bracket(&tor, x, y).expect("same chart");
                let lxy = lie_bracket_fields(x, y).expect("same chart");
                let tx_y = directional(&nab_t[yi], x);
                let ty_x = directional(&nab_t[xi], y);
                let hx_y = directional(&nab_h[yi], x);
                let hy_x = directional(&nab_h[xi], y);
                e11[0].add(&lin(&[(1, &tx_y), (-1, &hx_y), (1, &txy)]));
                e11[1].add(&lin(&[(1, &tx_y), (-1, &ty_x), (-1, &lxy), (1, &txy)]));
                e11[2].add(&lin(&[(1, &hx_y), (-1, &ty_x), (-1, &lxy)]));
                e11[3].add(&lin(&[(1, &tx_y), (1, &ty_x), (-1, &hx_y), (-1, &hy_x)]));
            }
        }
        let [a, b, c, d] = e11;
        checks.push(a.finish("tilde-minus-hat", "∇̃_X Y − ∇̂_X Y = −T(X,Y)"));
        checks.push(b.finish("tilde-antisymmetrized", "∇̃_X Y − ∇̃_Y X = [X,Y] − T(X,Y)"));
        checks.push(c.finish("hat-tilde-bracket", "∇̂_X Y − ∇̃_Y X = [X,Y]"));
        checks.push(d.finish("symmetric-parts-agree", "∇̃_X Y + ∇̃_Y X = ∇̂_X Y + ∇̂_Y X"));

        // Bracket of parallel fields.
        if let Some(f) = frame {
            let mut tally = Tally::new();
            let cols: Vec<TensorField> = (0..n).map(|a| f.column(a)).collect();
            for x in &cols {
                for y in &cols {
                    let br = lie_bracket_fields(x, y).expect("same chart");
                    let nb = self.nabla_tilde(&br);
                    for z in &probes {
                        let lhs = directional(&nb, z);
                        tally.add(&lhs.sub(&apply_curvature(&rh, x, y, z)));
                    }
                }
            }
            checks.push(tally.finish("parallel-bracket", "∇̃_Z[X,Y] = R̂(X,Y)Z for ∇̃-parallel X, Y"));
        }
        {
            // Both sides are tensorial in Z, so coordinate fields suffice;
            // both are antisymmetric in (X, Y), so unordered pairs suffice.
            let basis: Vec<TensorField> = (0..n)
                .map(|l| {
                    let comps = (0..n)
                        .map(|i| Poly::constant(self.nvars(), rat(i64::from(i == l))))
                        .collect();
                    TensorField::vector(comps).expect("one chart")
                })
                .collect();
            let mut tally = Tally::new();
            for (xi, x) in probes.iter().enumerate() {
                for (yi, y) in probes.iter().enumerate().skip(xi + 1) {
                    let br = lie_bracket_fields(x, y).expect("same chart");
                    let nb = self.nabla_tilde(&br);
                    let nxy = self.nabla_tilde(&directional(&nab_t[yi], x));
                    let nyx = self.nabla_tilde(&directional(&nab_t[xi], y));
                    for z in &basis {
                        let zx = directional(&nab_t[xi], z);
                        let zy = directional(&nab_t[yi], z);
                        let lhs = directional(&nb, z).sub(&apply_curvature(&rh, x, y, z));
                        let rhs = lin(&[
                            (1, &directional(&nxy, z)),
                            (-1, &directional(&nyx, z)),
                            (1, &algebraic_bracket(&tor, &zx, y).expect("same chart")),
                            (1, &algebraic_bracket(&tor, x, &zy).expect("same chart")),
                            (1, &apply_curvature(&rt, y, z, x)),
                            (1, &apply_curvature(&rt, z, x, y)),
                        ]);
                        tally.add(&lhs.sub(&rhs));
                    }
                }
            }
            checks.push(tally.finish(
                "parallel-bracket-general",
                "∇̃_Z[X,Y] − R̂(X,Y)Z = ∇̃_Z∇̃_X Y − ∇̃_Z∇̃_Y X + T(∇̃_Z X,Y) + T(X,∇̃_Z Y) + R̃(Y,Z)X + R̃(Z,X)Y",
            ));
        }

        let ng = |i: usize, l: usize, a: usize, b: usize| nt.get(&[i, l, a, b]);
        let jg = |i: usize, x: usize, y: usize, z: usize| j.get(&[i, x, y, z]);
        let rtg = |i: usize, x: usize, y: usize, z: usize| rt.get(i, x, y, z);
        let rhg = |i: usize, x: usize, y: usize, z: usize| rh.get(i, x, y, z);
        let cyc_rt = |i: usize, x: usize, y: usize, z: usize| {
            &(rtg(i, x, y, z) + rtg(i, y, z, x)) + rtg(i, z, x, y)
        };

        let mut tallies: Vec<Tally> = (0..5).map(|_| Tally::new()).collect();
        for idx in index::all(n, 4) {
            let (i, x, y, z) = (idx[0], idx[1], idx[2], idx[3]);
            // cyclic sum of ∇̃T
            let cyc = &(ng(i, x, y, z) + ng(i, z, x, y)) + ng(i, y, z, x);
            tallies[0].add_poly(&(&(&cyc + jg(i, x, y, z)) - &cyc_rt(i, x, y, z)));
            // R̂ through ∇̃T
            let rhs16 = &(&(ng(i, x, z, y) + ng(i, y, x, z)) - jg(i, x, y, z)) + rtg(i, x, y, z);
            tallies[1].add_poly(&(rhg(i, x, y, z) - &rhs16));
            // single-term form
            let rhs4 = &(ng(i, z, x, y) - rtg(i, y, z, x)) - rtg(i, z, x, y);
            tallies[2].add_poly(&(rhg(i, x, y, z) - &rhs4));
            // Bianchi
            let bianchi = &(rhg(i, x, y, z) + rhg(i, z, x, y)) + rhg(i, y, z, x);
            tallies[3].add_poly(&(&(&bianchi + jg(i, x, y, z)) + &cyc_rt(i, x, y, z)));
            // R̂ − R̃ expansion, (r, j, k) = (x, y, z)
            let (r, jj, k) = (x, y, z);
            let mut quad = Poly::zero(self.nvars());
            for a in 0..n {
                quad.sub_assign_ref(&(t.get(&[i, a, r]) * t.get(&[a, k, jj])));
                quad.add_product(t.get(&[i, a, k]), t.get(&[a, r, jj]));
                quad.sub_assign_ref(&(t.get(&[i, a, jj]) * t.get(&[a, r, k])));
            }
            let rhs18 = &(ng(i, r, k, jj) - ng(i, jj, k, r)) + &quad;
            tallies[4].add_poly(&(&(rhg(i, r, jj, k) - rtg(i, r, jj, k)) - &rhs18));
        }
        let mut it = tallies.into_iter();
        checks.push(it.next().unwrap().finish(
            "cyclic-nabla-torsion",
            "Σ_cyc (∇̃_X T)(Y,Z) = −J(X,Y,Z) + Σ_cyc R̃(X,Y)Z",
        ));
        checks.push(it.next().unwrap().finish(
            "hat-curvature-from-nabla-torsion",
            "R̂(X,Y)Z = (∇̃_X T)(Z,Y) + (∇̃_Y T)(X,Z) − J(X,Y,Z) + R̃(X,Y)Z",
        ));
        let single = it.next().unwrap();
        let bianchi = it.next().unwrap();
        let difference = it.next().unwrap();

        // Coordinate form via [∇̃]T.
        {
            let box_t = self.box_nabla(&VectorForm::wrap_unchecked(t.clone()));
            let mut tally = Tally::new();
            for idx in index::all(n, 4) {
                let (i, r, k, jj) = (idx[0], idx[1], idx[2], idx[3]);
                let mut rhs = cyc_rt(i, r, k, jj);
                for a in 0..n {
                    rhs.add_product(t.get(&[a, r, k]), t.get(&[i, a, jj]));
                    rhs.add_product(t.get(&[a, jj, r]), t.get(&[i, a, k]));
                    rhs.add_product(t.get(&[a, k, jj]), t.get(&[i, a, r]));
                }
                tally.add_poly(&(box_t.get(&idx) - &rhs));
            }
            checks.push(tally.finish(
                "cyclic-nabla-torsion-coordinates",
                "[∇̃_r T^i_{kj}]_{[rkj]} = T^a_{rk}T^i_{aj} + T^a_{jr}T^i_{ak} + T^a_{kj}T^i_{ar} + Σ_cyc R̃^i_{rk,j}",
            ));
        }
        checks.push(difference.finish(
            "hat-minus-tilde-curvature",
            "R̂^i_{rj,k} − R̃^i_{rj,k} = [∇̃_r T^i_{kj}]_{[rj]} − T^i_{ar}T^a_{kj} + T^i_{ak}T^a_{rj} − T^i_{aj}T^a_{rk}",
        ));
        checks.push(single.finish(
            "hat-curvature-single-term",
            "R̂(X,Y)Z = (∇̃_Z T)(X,Y) − R̃(Y,Z)X − R̃(Z,X)Y",
        ));
        checks.push(bianchi.finish(
            "bianchi",
            "R̂(X,Y)Z + R̂(Z,X)Y + R̂(Y,Z)X = −J(X,Y,Z) − Σ_cyc R̃(X,Y)Z",
        ));

        // Second covariant derivatives do not commute: torsion and R̃.
        {
            let mut tally = Tally::new();
            for (pi, xi) in probes.iter().enumerate() {
                let n1 = &nab_t[pi];
                let n2 = self.nabla_tilde(n1);
                for idx in index::all(n, 3) {
                    let (i, k, jj) = (idx[0], idx[1], idx[2]);
                    let mut acc = n2.get(&[i, k, jj]) - n2.get(&[i, jj, k]);
                    for a in 0..n {
                        acc.sub_assign_ref(&(t.get(&[a, k, jj]) * n1.get(&[i, a])));
                        acc.add_product(rt.get(i, k, jj, a), xi.get(&[a]));
                    }
                    tally.add_poly(&acc);
                }
            }
            checks.push(tally.finish(
                "commutator",
                "∇̃_k∇̃_j ξ^i − ∇̃_j∇̃_k ξ^i = T^a_{kj} ∇̃_a ξ^i − R̃^i_{kj,a} ξ^a",
            ));
        }

        IdentityReport {
            tilde_flat: rt.is_zero(),
            checks,
        }
    }
}
