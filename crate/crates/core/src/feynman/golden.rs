//! Worked examples: the graphs `Γ_j`, the element `α = 2 Σ_{j≥2} F(Γ_j)`,
//! and the genus-zero weight function `f`.

use super::catalog::ModelFormCatalog;
use super::rules::map_f;
use crate::error::{EngineError, Result};
use crate::exactpoly::{qi, PolyForm, SimplexShape};
use crate::graphkernel::{DecoratedGraph, Item};
use crate::mogmodel::HClass;
use crate::totalization::StratifiedElement;

/// `Γ_j`: external vertex 1 joined to one internal vertex decorated `a^j b^j`.
pub fn gamma_j(g: u32, j: u8) -> Result<DecoratedGraph> {
    let items = [Item::Edge(0, 1), Item::Deco(1, HClass::A(j)), Item::Deco(1, HClass::B(j))];
    let (odd, gr) = DecoratedGraph::from_items(g, &[1], 1, &items)?;
    if odd {
        return Err(EngineError::InvalidGraph("unexpected reordering sign for Γ_j".into()));
    }
    Ok(gr)
}

/// `α = 2 Σ_{j=2}^g F(Γ_j)`.
pub fn example_alpha(cat: &ModelFormCatalog) -> Result<StratifiedElement> {
    let g = cat.genus();
    if g < 2 {
        return Err(EngineError::InvalidArgument(format!("the example needs genus ≥ 2, got {g}")));
    }
    let mut acc = StratifiedElement::zero(cat.geometry(), [1].into_iter().collect());
    for j in 2..=g as u8 {
        acc = acc.add_scaled(&map_f(&gamma_j(g, j)?, cat)?, &qi(2))?;
    }
    Ok(acc)
}

/// `Γ_r` of the genus-zero model: one internal vertex decorated by `ν`
/// joined to each of the external vertices `1..r`.
pub fn genus0_star_graph(r: u32) -> Result<DecoratedGraph> {
    let ext: Vec<u32> = (1..=r).collect();
    let center = r as usize;
    let mut items: Vec<Item> = (0..r as usize).map(|v| Item::Edge(v, center)).collect();
    items.push(Item::Deco(center, HClass::Nu));
    Ok(DecoratedGraph::from_items(0, &ext, 1, &items)?.1)
}

/// The closed form
/// `f = Σ_{j=0}^r (t^{(j+1)} − t^{(j)}) Π_{k≤j} t^{(k)} Π_{k>j} (t^{(k)} − 1)`
/// (with `t^{(0)} = 0`, `t^{(r+1)} = 1`) as a polynomial on `Δ^r`.
pub fn genus0_f(r: usize) -> Result<PolyForm> {
    if r == 0 {
        return Err(EngineError::InvalidArgument("f needs r ≥ 1".into()));
    }
    let shape = SimplexShape::new(vec![r]);
    let t = |k: usize| -> PolyForm {
        match k {
            0 => PolyForm::zero(shape.clone()),
            k if k == r + 1 => PolyForm::one(shape.clone()),
            k => PolyForm::var(shape.clone(), 0, k - 1),
        }
    };
    let one = PolyForm::one(shape.clone());
    let mut acc = PolyForm::zero(shape.clone());
    for j in 0..=r {
        let mut term = t(j + 1).sub(&t(j))?;
        for k in 1..=j {
            term = term.wedge(&t(k))?;
        }
        for k in j + 1..=r {
            term = term.wedge(&t(k).sub(&one)?)?;
        }
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// `f` by direct symbolic integration: for each position of the integration
/// variable `t` among `t^{(1)} ≤ … ≤ t^{(r)}`, the integrand
/// `Π_j (t^{(j)} − 1_{t < t^{(j)}})` is a polynomial on `Δ^{r+1}`, which is
/// integrated over `t` with the engine's fiber integration.
pub fn genus0_f_direct(r: usize) -> Result<PolyForm> {
    if r == 0 {
        return Err(EngineError::InvalidArgument("f needs r ≥ 1".into()));
    }
    let shape = SimplexShape::new(vec![r + 1]);
    let mut acc = PolyForm::zero(SimplexShape::new(vec![r]));
    for pos in 0..=r {
        // Variable `pos` is t; the others are t^{(1)}, …, t^{(r)} in order.
        let mut integrand = PolyForm::dvar(shape.clone(), 0, pos);
        let mut var = 0;
        for k in 0..=r {
            if k == pos {
                continue;
            }
            let mut factor = PolyForm::var(shape.clone(), 0, k);
            var += 1;
            if pos < k {
                factor = factor.sub(&PolyForm::one(shape.clone()))?;
            }
            integrand = integrand.wedge(&factor)?;
        }
        debug_assert_eq!(var, r);
        let mut retained = vec![vec![true; r + 1]];
        retained[0][pos] = false;
        acc = acc.add(&integrand.fiber_integrate(&retained)?)?;
    }
    Ok(acc)
}
