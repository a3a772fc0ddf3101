//! The (ℂℤ_n, Φ_s)-Majid bimodule structure on the arrow space ℂZ^n_1.
//!
//! Arrows are X_1, …, X_n with X_i: g^{i−1} → g^i. Tables are indexed by the
//! group exponent a and the *source* k = i − 1 of the arrow acted on.

use serde::Serialize;

use crate::cocycle::{CocycleParams, Parameters};
use crate::cyclotomic::{CycloNum, RootOfUnity};
use crate::error::Result;

/// One entry of an action table: the acted-on arrow lands on X_target
/// with the given scalar.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Action {
    /// Arrow index in 1..=n.
    pub target: u32,
    pub scalar: RootOfUnity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowBimodule {
    params: Parameters,
    left: Vec<Vec<Action>>,
    right: Vec<Vec<Action>>,
}

/// First failing identity found by [`ArrowBimodule::quasi_axiom_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomWitness {
    pub identity: String,
    pub e: u32,
    pub f: u32,
    pub arrow: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BimoduleReport {
    pub passed: bool,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<AxiomWitness>,
}

fn arrow_index(n: u32, i: i64) -> u32 {
    let r = i.rem_euclid(n as i64) as u32;
    if r == 0 {
        n
    } else {
        r
    }
}

impl ArrowBimodule {
    /// g·X_i = X_{i+1} (i < n), g·X_n = 𝕢^s X_1, and X_i·g = ĥ X_{i+1},
    /// extended to all g^a by quasi-associativity.
    pub fn build(params: Parameters) -> Self {
        let n = params.n;
        let qq_s = params.cocycle().qq().pow(params.s as i64);
        let left_gen: Vec<RootOfUnity> = (0..n)
            .map(|k| if k == n - 1 { qq_s } else { RootOfUnity::one(n) })
            .collect();
        let right_gen = vec![params.hbar(); n as usize];
        Self::from_generator_actions(params, &left_gen, &right_gen)
    }

    /// Extends generator actions g·X_{k+1} = left_gen[k]·X_{k+2} and
    /// X_{k+1}·g = right_gen[k]·X_{k+2} to all powers of g, via
    /// g.(g^a.X) = Φ(g,g^a,·)/Φ(g,g^a,·) g^{a+1}.X and the mirror rule.
    pub fn from_generator_actions(
        params: Parameters,
        left_gen: &[RootOfUnity],
        right_gen: &[RootOfUnity],
    ) -> Self {
        let n = params.n as usize;
        assert_eq!(left_gen.len(), n, "one left scalar per arrow");
        assert_eq!(right_gen.len(), n, "one right scalar per arrow");
        let phi = params.cocycle();
        let conductor = params.conductor();
        let one = RootOfUnity::one(conductor);
        let mut left = vec![vec![one; n]; n];
        let mut right = vec![vec![one; n]; n];
        for a in 0..n.saturating_sub(1) {
            for k in 0..n {
                let (a_i, k_i) = (a as i64, k as i64);
                let l = phi.phi(1, a_i, k_i)
                    * phi.phi(1, a_i, k_i + 1).inv()
                    * left[a][k]
                    * left_gen[(k + a) % n];
                left[a + 1][k] = l.lift(conductor);
                let r = phi.phi(k_i + 1, a_i, 1)
                    * phi.phi(k_i, a_i, 1).inv()
                    * right[a][k]
                    * right_gen[(k + a) % n];
                right[a + 1][k] = r.lift(conductor);
            }
        }
        let wrap = |table: Vec<Vec<RootOfUnity>>| -> Vec<Vec<Action>> {
            table
                .into_iter()
                .enumerate()
                .map(|(a, row)| {
                    row.into_iter()
                        .enumerate()
                        .map(|(k, scalar)| Action {
                            target: arrow_index(n as u32, (k + 1 + a) as i64),
                            scalar,
                        })
                        .collect()
                })
                .collect()
        };
        ArrowBimodule {
            params,
            left: wrap(left),
            right: wrap(right),
        }
    }

    pub fn params(&self) -> Parameters {
        self.params
    }

    pub fn n(&self) -> u32 {
        self.params.n
    }

    pub fn cocycle(&self) -> CocycleParams {
        self.params.cocycle()
    }

    /// ĥ = 𝕢^{−s}λ^{−1}, the scalar of X_i·g.
    pub fn deformation(&self) -> RootOfUnity {
        self.params.hbar()
    }

    /// g^a · X_i.
    pub fn act_left(&self, a: i64, arrow: i64) -> Action {
        let n = self.n() as i64;
        self.left[a.rem_euclid(n) as usize][(arrow - 1).rem_euclid(n) as usize]
    }

    /// X_i · g^a.
    pub fn act_right(&self, arrow: i64, a: i64) -> Action {
        let n = self.n() as i64;
        self.right[a.rem_euclid(n) as usize][(arrow - 1).rem_euclid(n) as usize]
    }

    /// Overwrites one left-action entry; used to build corrupted controls.
    pub fn set_left(&mut self, a: i64, arrow: i64, action: Action) {
        let n = self.n() as i64;
        self.left[a.rem_euclid(n) as usize][(arrow - 1).rem_euclid(n) as usize] = action;
    }

    pub fn set_right(&mut self, arrow: i64, a: i64, action: Action) {
        let n = self.n() as i64;
        self.right[a.rem_euclid(n) as usize][(arrow - 1).rem_euclid(n) as usize] = action;
    }

    /// δ_L(X_i) = g^i ⊗ X_i.
    pub fn left_coaction(&self, arrow: i64) -> u32 {
        arrow.rem_euclid(self.n() as i64) as u32
    }

    /// δ_R(X_i) = X_i ⊗ g^{i−1}.
    pub fn right_coaction(&self, arrow: i64) -> u32 {
        (arrow - 1).rem_euclid(self.n() as i64) as u32
    }

    /// h ▷ X_1 = (h.X_1).h^{−1} for h = g^a.
    pub fn projective_action(&self, a: i64) -> RootOfUnity {
        let first = self.act_left(a, 1);
        let second = self.act_right(first.target as i64, -a);
        debug_assert_eq!(second.target, 1);
        first.scalar * second.scalar
    }

    /// The same scalar computed in the twisted group algebra:
    /// g^a = c^{−1} g^{∗a} with g^{∗a} = c·g^a, and g^{∗a} acts by λ^a.
    pub fn projective_action_twisted(&self, a: u32) -> Result<RootOfUnity> {
        let c = self.cocycle().twisted_power(a)?;
        Ok(c.inv() * self.params.lambda().pow(a as i64))
    }

    /// Checks quasi-associativity of the left, right and mixed actions for all e, f and all
    /// arrows, the unit action, and that both actions are bicomodule maps
    /// (g^a acting on X_i lands in the isotypic component of X_{i+a}).
    pub fn quasi_axiom_check(&self) -> BimoduleReport {
        let n = self.n() as i64;
        let phi = self.cocycle();
        let mut checked = 0;
        let fail = |identity: &str, e: i64, f: i64, arrow: i64, checked: usize| BimoduleReport {
            passed: false,
            checked,
            witness: Some(AxiomWitness {
                identity: identity.to_string(),
                e: e as u32,
                f: f as u32,
                arrow: arrow as u32,
            }),
        };
        for i in 1..=n {
            checked += 2;
            let (l0, r0) = (self.act_left(0, i), self.act_right(i, 0));
            if l0.target as i64 != i || !l0.scalar.is_one() || r0.target as i64 != i || !r0.scalar.is_one() {
                return fail("unit", 0, 0, i, checked);
            }
        }
        for e in 0..n {
            for i in 1..=n {
                checked += 2;
                let expected = arrow_index(n as u32, i + e);
                let l = self.act_left(e, i);
                let r = self.act_right(i, e);
                // δ_L(e.m) = e·g^i ⊗ e.m and δ_R(e.m) = e.m ⊗ e·g^{i−1}.
                if l.target != expected
                    || self.left_coaction(l.target as i64) as i64 != (e + i).rem_euclid(n)
                    || self.right_coaction(l.target as i64) as i64 != (e + i - 1).rem_euclid(n)
                {
                    return fail("left bicomodule map", e, 0, i, checked);
                }
                if r.target != expected
                    || self.left_coaction(r.target as i64) as i64 != (i + e).rem_euclid(n)
                    || self.right_coaction(r.target as i64) as i64 != (i - 1 + e).rem_euclid(n)
                {
                    return fail("right bicomodule map", e, 0, i, checked);
                }
            }
        }
        for e in 0..n {
            for f in 0..n {
                for i in 1..=n {
                    let (g, h) = (i, i - 1);
                    checked += 3;
                    // e.(f.m) = Φ(e,f,g)/Φ(e,f,h) (ef).m
                    let inner = self.act_left(f, i);
                    let outer = self.act_left(e, inner.target as i64);
                    let lhs = (outer.scalar * inner.scalar, outer.target);
                    let direct = self.act_left(e + f, i);
                    let rhs = (
                        phi.phi(e, f, g) * phi.phi(e, f, h).inv() * direct.scalar,
                        direct.target,
                    );
                    if lhs != rhs {
                        return fail("left quasi-associativity", e, f, i, checked);
                    }
                    // (m.e).f = Φ(h,e,f)/Φ(g,e,f) m.(ef)
                    let inner = self.act_right(i, e);
                    let outer = self.act_right(inner.target as i64, f);
                    let lhs = (outer.scalar * inner.scalar, outer.target);
                    let direct = self.act_right(i, e + f);
                    let rhs = (
                        phi.phi(h, e, f) * phi.phi(g, e, f).inv() * direct.scalar,
                        direct.target,
                    );
                    if lhs != rhs {
                        return fail("right quasi-associativity", e, f, i, checked);
                    }
                    // (e.m).f = Φ(e,h,f)/Φ(e,g,f) e.(m.f)
                    let el = self.act_left(e, i);
                    let lhs_r = self.act_right(el.target as i64, f);
                    let lhs = (lhs_r.scalar * el.scalar, lhs_r.target);
                    let mr = self.act_right(i, f);
                    let rhs_l = self.act_left(e, mr.target as i64);
                    let rhs = (
                        phi.phi(e, h, f) * phi.phi(e, g, f).inv() * rhs_l.scalar * mr.scalar,
                        rhs_l.target,
                    );
                    if lhs != rhs {
                        return fail("middle quasi-associativity", e, f, i, checked);
                    }
                }
            }
        }
        BimoduleReport {
            passed: true,
            checked,
            witness: None,
        }
    }

    /// Action tables as JSON rows keyed by ("g^a", "X_i").
    pub fn to_json(&self) -> serde_json::Value {
        let n = self.n() as i64;
        let rows = |left: bool| -> Vec<serde_json::Value> {
            let mut out = Vec::new();
            for a in 0..n {
                for i in 1..=n {
                    let act = if left { self.act_left(a, i) } else { self.act_right(i, a) };
                    out.push(serde_json::json!({
                        "g": format!("g^{a}"),
                        "arrow": format!("X_{i}"),
                        "target": format!("X_{}", act.target),
                        "coeff": act.scalar.to_cyclo(),
                    }));
                }
            }
            out
        };
        serde_json::json!({
            "n": self.params.n,
            "s": self.params.s,
            "q_exp": self.params.q_exp,
            "conductor": self.params.conductor(),
            "deformation": self.deformation().to_cyclo(),
            "left": rows(true),
            "right": rows(false),
        })
    }

    pub fn scalar_value(action: &Action) -> CycloNum {
        action.scalar.to_cyclo()
    }
}
