//! The verification campaigns behind each subcommand.

use crate::report::VerificationReport;
use anyhow::{bail, Context, Result};
use framedconf::bvalgebra::Gen;
use framedconf::exactpoly::qi;
use framedconf::feynman::{
    build_catalog, enumerate_graphs, example_alpha, gamma_j, internal_labels, map_a, map_f, map_f_sum, partition_z,
    GraphBounds, ModelFormCatalog,
};
use framedconf::graphkernel::{coaction, differential, DecoratedGraph, GraphSum, PartitionFunction, ZTriv};
use framedconf::mogmodel::cohomology_ranks;
use framedconf::totalization::{
    check_continuity, describe_face, stokes_defect, total_coaction, total_d, ContinuityReport, StratifiedElement,
    Stratum, StratumValue,
};
use rayon::prelude::*;
use std::collections::BTreeSet;

/// Bounds of a sweep over graphs with external vertices.
#[derive(Clone, Copy, Debug)]
pub struct SweepBounds {
    /// Genus of the surface.
    pub genus: u32,
    /// External vertices range over `1..=max_ext`.
    pub max_ext: u32,
    /// Internal vertices range over `min_internal..=max_internal`.
    pub max_internal: usize,
    /// Maximal number of edges.
    pub max_edges: usize,
    /// Maximal number of decorations per vertex.
    pub max_decos: usize,
}

impl SweepBounds {
    fn describe(&self) -> String {
        format!(
            "g = {}, ≤ {} external, ≤ {} internal vertices, ≤ {} edges, ≤ {} decorations per vertex",
            self.genus, self.max_ext, self.max_internal, self.max_edges, self.max_decos
        )
    }

    /// Every rooted graph within the bounds, in a fixed order.
    fn graphs(&self, min_internal: usize, decorate_external: bool) -> Vec<DecoratedGraph> {
        let mut out = Vec::new();
        for n_ext in 1..=self.max_ext {
            let ext: Vec<u32> = (1..=n_ext).collect();
            for internal in min_internal..=self.max_internal {
                let mut b = GraphBounds::new(self.genus, &ext, internal, self.max_edges, self.max_decos);
                b.rooted = true;
                b.decorate_external = decorate_external;
                out.extend(enumerate_graphs(&b));
            }
        }
        out
    }
}

/// Runs `test` on every item in parallel and returns the number of items and
/// the first failure in item order, if any.
fn sweep<T: Sync>(items: &[T], test: impl Fn(&T) -> Result<Option<String>> + Sync) -> Result<(usize, Option<String>)> {
    let results: Vec<Option<String>> = items.par_iter().map(&test).collect::<Result<_>>()?;
    Ok((items.len(), results.into_iter().flatten().next()))
}

fn continuity_counterexample(r: &ContinuityReport, x: &StratifiedElement) -> Option<String> {
    r.violations.first().map(|v| {
        format!(
            "stratum {} at the {} (merged stratum {})",
            v.stratum.to_text(x.geometry()),
            describe_face(v.face),
            v.merged.to_text(x.geometry())
        )
    })
}

fn catalog(genus: u32) -> Result<ModelFormCatalog> {
    build_catalog(genus).with_context(|| format!("building the model forms of genus {genus}"))
}

fn pull(x: &StratifiedElement, target: &[u32]) -> Result<StratifiedElement> {
    Ok(x.pull_back_to(target, &[1, 2].into_iter().collect())?)
}

// ==== model forms ====

/// Continuity of every model form, `dη`, `dω` and the collapse of `ω`.
pub fn verify_model(genus: u32) -> Result<VerificationReport> {
    let cat = catalog(genus)?;
    let mut report = VerificationReport::new(format!("verify-model --genus {genus}"));
    let mut forms =
        vec![("nu".to_string(), cat.nu()), ("eta".to_string(), cat.eta()), ("omega".to_string(), cat.omega())];
    for k in 1..=genus as usize {
        forms.push((format!("a{k}"), cat.a(k)));
        forms.push((format!("b{k}"), cat.b(k)));
    }
    for (name, x) in forms {
        let r = check_continuity(x);
        let detail = format!("{} face equations, {} nonzero strata", r.faces_checked, x.values().len());
        report.check(&format!("continuity {name}"), r.passed(), detail, continuity_counterexample(&r, x));
    }

    let expected_eta = cat.nu().scale(&qi(2)).sub(&cat.sum_ab().scale(&qi(2)))?;
    report.check("d eta", total_d(cat.eta()) == expected_eta, "dη = 2ν − 2Σ a^k b^k", None);

    let mut expected_omega = pull(cat.nu(), &[1])?.add(&pull(cat.nu(), &[2])?)?;
    for k in 1..=genus as usize {
        expected_omega = expected_omega
            .sub(&pull(cat.a(k), &[1])?.wedge(&pull(cat.b(k), &[2])?)?)?
            .sub(&pull(cat.a(k), &[2])?.wedge(&pull(cat.b(k), &[1])?)?)?;
    }
    report.check(
        "d omega",
        total_d(cat.omega()) == expected_omega,
        "dω = π₁*ν + π₂*ν − Σ(π₁*a^k π₂*b^k + π₂*a^k π₁*b^k)",
        None,
    );

    let t = total_coaction(cat.omega(), &[1, 2].into_iter().collect(), 7)?;
    let zero = StratifiedElement::zero(cat.geometry(), [7].into_iter().collect());
    let eta7 = cat.eta().relabel(&[(1, 7)].into_iter().collect())?;
    let one = StratifiedElement::one(cat.geometry(), [7].into_iter().collect());
    let ok = t.part(&[], &zero) == eta7 && t.part(&[Gen::w(1, 2)], &zero) == one && t.parts.len() == 2;
    report.check("coaction omega", ok, "Δ₁₂ω = η⊗1 + 1⊗ω₁₂", None);
    Ok(report)
}

// ==== partition function ====

/// `Z(Γ) = Z_triv(Γ)` on every closed connected graph within the bounds.
pub fn partition(genus: u32, max_vertices: usize, max_edges: usize, max_decos: usize) -> Result<VerificationReport> {
    let cat = catalog(genus)?;
    let mut report = VerificationReport::new(format!(
        "partition --genus {genus} --max-vertices {max_vertices} --max-edges {max_edges} --max-decos {max_decos}"
    ));
    let mut graphs = Vec::new();
    for n in 1..=max_vertices {
        let mut b = GraphBounds::new(genus, &[], n, max_edges, max_decos);
        b.connected = true;
        graphs.extend(enumerate_graphs(&b));
    }
    let values: Vec<_> =
        graphs.par_iter().map(|gr| Ok((partition_z(gr, &cat)?, ZTriv.eval(gr)))).collect::<Result<Vec<_>>>()?;
    let mut first = None;
    for (gr, (z, triv)) in graphs.iter().zip(&values) {
        if z != triv && first.is_none() {
            first = Some(format!("{gr}: Z = {z}, Z_triv = {triv}"));
        }
        report.entry(gr.to_text(), z.to_string());
    }
    let detail = format!("{} closed connected graphs, ≤ {max_vertices} vertices, ≤ {max_edges} edges", graphs.len());
    report.check("Z = Z_triv", first.is_none(), detail, first);
    Ok(report)
}

// ==== cohomology ====

/// The Betti numbers of `Mo_g(1)`.
fn betti_oracle(genus: u32) -> Vec<usize> {
    match genus {
        0 => vec![1, 0, 0, 1],
        1 => vec![1, 3, 3, 1],
        g => vec![1, 2 * g as usize, 2 * g as usize, 1],
    }
}

/// Dimensions, ranks and Betti numbers of `Mo_g(r)`.
pub fn cohomology(genus: u32, points: u32) -> Result<VerificationReport> {
    if points > 3 {
        bail!("cohomology is limited to at most 3 points, got {points}");
    }
    let mut report = VerificationReport::new(format!("cohomology --genus {genus} --points {points}"));
    let c = cohomology_ranks(genus, points);
    let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    report.entry("dims", format!("({})", join(&c.dims)));
    report.entry("ranks", format!("({})", join(&c.ranks)));
    report.entry("betti", format!("({})", join(&c.betti)));
    report.check(
        "euler characteristic",
        c.euler_from_dims() == c.euler_from_betti(),
        format!("χ = {} from dimensions and from Betti numbers", c.euler_from_dims()),
        Some(format!("{} ≠ {}", c.euler_from_dims(), c.euler_from_betti())),
    );
    if points == 1 {
        let expected = betti_oracle(genus);
        report.check(
            "betti numbers",
            c.betti == expected,
            format!("({}) matches the reference ({})", join(&c.betti), join(&expected)),
            Some(format!("computed ({}), expected ({})", join(&c.betti), join(&expected))),
        );
    }
    Ok(report)
}

// ==== graph complex ====

/// `d² = 0` on every graph within the bounds, decorated external vertices
/// and closed graphs included.
pub fn d_squared(b: SweepBounds) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(format!(
        "d-squared --genus {} --max-ext {} --max-internal {} --max-edges {} --max-decos {}",
        b.genus, b.max_ext, b.max_internal, b.max_edges, b.max_decos
    ));
    let mut graphs = b.graphs(0, true);
    for internal in 1..=b.max_internal {
        let mut closed = GraphBounds::new(b.genus, &[], internal, b.max_edges, b.max_decos);
        closed.connected = true;
        graphs.extend(enumerate_graphs(&closed));
    }
    let (n, first) = sweep(&graphs, |gr| {
        let once = differential(&GraphSum::graph(gr), &ZTriv);
        Ok((!differential(&once, &ZTriv).is_zero()).then(|| gr.to_text()))
    })?;
    report.check("d^2 = 0", first.is_none(), format!("{n} graphs, {}", b.describe()), first);
    Ok(report)
}

// ==== Feynman rules ====

/// The Stokes formula for `A(Γ)`, integrating over the internal vertices.
pub fn stokes(b: SweepBounds) -> Result<VerificationReport> {
    let cat = catalog(b.genus)?;
    let mut report = VerificationReport::new(format!(
        "stokes --genus {} --max-ext {} --max-internal {} --max-edges {} --max-decos {}",
        b.genus, b.max_ext, b.max_internal, b.max_edges, b.max_decos
    ));
    let graphs = b.graphs(1, false);
    let (n, first) = sweep(&graphs, |gr| {
        let defect = stokes_defect(&map_a(gr, &cat)?, &internal_labels(gr))?;
        Ok((!defect.is_zero()).then(|| gr.to_text()))
    })?;
    report.check(
        "stokes",
        first.is_none(),
        format!("d∫A(Γ) = ∫dA(Γ) − Σ∫∂A(Γ) on {n} graphs, {}", b.describe()),
        first,
    );
    Ok(report)
}

/// `F(dΓ) = dF(Γ)`.
pub fn chainmap(b: SweepBounds) -> Result<VerificationReport> {
    let cat = catalog(b.genus)?;
    let mut report = VerificationReport::new(format!(
        "chainmap --genus {} --max-ext {} --max-internal {} --max-edges {} --max-decos {}",
        b.genus, b.max_ext, b.max_internal, b.max_edges, b.max_decos
    ));
    let graphs = b.graphs(0, false);
    let (n, first) = sweep(&graphs, |gr| {
        let lhs = map_f_sum(&differential(&GraphSum::graph(gr), &ZTriv), &cat)?;
        Ok((lhs != total_d(&map_f(gr, &cat)?)).then(|| gr.to_text()))
    })?;
    report.check("chain map", first.is_none(), format!("F(dΓ) = dF(Γ) on {n} graphs, {}", b.describe()), first);
    Ok(report)
}

/// Nonempty subsets of `ext`, in lexicographic order of bitmasks.
fn nonempty_subsets(ext: &[u32]) -> Vec<Vec<u32>> {
    (1u32..1 << ext.len())
        .map(|mask| ext.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect())
        .collect()
}

/// `F` intertwines the graph coaction with the coaction of stratified
/// elements, for every nonempty collapsed set of external vertices.
pub fn coaction_check(b: SweepBounds, decorate_external: bool) -> Result<VerificationReport> {
    let cat = catalog(b.genus)?;
    let mut report = VerificationReport::new(format!(
        "coaction --genus {} --max-ext {} --max-internal {} --max-edges {} --max-decos {}{}",
        b.genus,
        b.max_ext,
        b.max_internal,
        b.max_edges,
        b.max_decos,
        if decorate_external { " --decorate-external" } else { "" }
    ));
    let graphs = b.graphs(0, decorate_external);
    let cases: Vec<(&DecoratedGraph, Vec<u32>)> =
        graphs.iter().flat_map(|gr| nonempty_subsets(gr.ext()).into_iter().map(move |s| (gr, s))).collect();
    let (n, first) = sweep(&cases, |(gr, group)| {
        let new = gr.ext().iter().max().copied().unwrap_or(0) + 1;
        let f = map_f(gr, &cat)?;
        let gt = coaction(&GraphSum::graph(gr), group, new)?;
        let tt = total_coaction(&f, &group.iter().copied().collect(), new)?;
        let zero = StratifiedElement::zero(cat.geometry(), tt.outer.clone());
        let monos: BTreeSet<Vec<Gen>> =
            gt.terms().map(|((_, m), _)| m.clone()).chain(tt.parts.keys().cloned()).collect();
        for m in monos {
            if map_f_sum(&gt.left_part(&m), &cat)? != tt.part(&m, &zero) {
                return Ok(Some(format!("{gr}, collapsing {group:?}")));
            }
        }
        Ok(None)
    })?;
    let detail = format!("{n} (graph, collapsed set) pairs on {} graphs, {}", graphs.len(), b.describe());
    report.check("coaction", first.is_none(), detail, first);
    Ok(report)
}

/// Parses a graph file: one graph per line; blank lines and lines starting
/// with `#` are skipped.
pub fn read_graphs(text: &str) -> Result<Vec<DecoratedGraph>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| DecoratedGraph::parse(l.trim()).with_context(|| format!("line {}", i + 1)))
        .collect()
}

/// `F(Γ)` for every graph of a file, with a continuity check of each image.
/// Returns the report and the dumps of the images.
pub fn integrate(path: &str, text: &str) -> Result<(VerificationReport, Vec<String>)> {
    let graphs = read_graphs(text)?;
    if graphs.is_empty() {
        bail!("{path} contains no graphs");
    }
    let mut report = VerificationReport::new(format!("integrate {path}"));
    let mut dumps = Vec::new();
    for gr in &graphs {
        let cat = catalog(gr.genus())?;
        let f = map_f(gr, &cat)?;
        let r = check_continuity(&f);
        let degrees: Vec<String> = f.degrees().iter().map(usize::to_string).collect();
        report.entry(gr.to_text(), format!("{} nonzero strata, degrees {{{}}}", f.values().len(), degrees.join(",")));
        let detail = format!("{} face equations", r.faces_checked);
        report.check(&format!("continuity {}", gr.to_text()), r.passed(), detail, continuity_counterexample(&r, &f));
        dumps.push(f.dump());
    }
    Ok((report, dumps))
}

// ==== worked example ====

fn has_value(x: &StratifiedElement, stratum: &str, text: &str) -> Result<bool> {
    let s = Stratum::parse(x.geometry(), stratum)?;
    Ok(x.value(&s) == StratumValue::parse(&s.shape(), text)?)
}

/// The graphs `Γ_j` (external vertex joined to an internal vertex decorated
/// `a^j b^j`) and `α = 2 Σ_{j≥2} F(Γ_j)`, checked end to end, including the
/// printed bulk value of `F(Γ_j)`.
pub fn golden(genus: u32) -> Result<VerificationReport> {
    if genus < 2 {
        bail!("the worked example needs genus ≥ 2, got {genus}");
    }
    let cat = catalog(genus)?;
    let mut report = VerificationReport::new(format!("golden --genus {genus}"));
    let zeros = vec!["0"; genus as usize].join(",");
    let bulk = format!("({zeros} | 1->0)");
    let handle = |h: u32| {
        let sizes: Vec<&str> = (1..=genus).map(|k| if k == h { "1" } else { "0" }).collect();
        format!("({} | 1->{h}.1)", sizes.join(","))
    };
    for j in 1..=genus {
        let f = map_f(&gamma_j(genus, j as u8)?, &cat)?;
        let expected = cat.nu().sub(&cat.a(j as usize).wedge(cat.b(j as usize))?)?;
        report.check(&format!("dF(Gamma_{j})"), total_d(&f) == expected, "dF(Γ_j) = ν − a^j b^j", None);
        if j == 1 {
            report.check("F(Gamma_1)", f.is_zero(), "F(Γ_1) = 0", None);
            continue;
        }
        let r = check_continuity(&f);
        report.check(
            &format!("continuity F(Gamma_{j})"),
            r.passed(),
            format!("{} face equations", r.faces_checked),
            continuity_counterexample(&r, &f),
        );
        let value = |s: &str| f.value(&Stratum::parse(f.geometry(), s).unwrap()).to_text();
        let continuous = format!("w(1,_u {j}) * (1/2) + w(1,_o {j}) * (1/2) + w(1,_u 1) * (-1/2)");
        report.check(
            &format!("bulk F(Gamma_{j})"),
            has_value(&f, &bulk, &continuous)?,
            "½(ω_1⎵j + ω_1‾j − ω_1⎵1), the value forced by continuity",
            Some(value(&bulk)),
        );
        let printed = format!("w(1,_u {j}) * (1/2) + w(1,_o {j}) * (-1/2) + w(1,_u 1) * (-1/2)");
        report.check(
            &format!("printed bulk F(Gamma_{j})"),
            has_value(&f, &bulk, &printed)?,
            "½(ω_1⎵j − ω_1‾j − ω_1⎵1) as printed; this value is discontinuous at the ‾j end of handle j",
            Some(value(&bulk)),
        );
        report.check(
            &format!("handle 1 F(Gamma_{j})"),
            has_value(&f, &handle(1), "w(*,1) * (-1/2 + t1.1)")?,
            "ω_*1 (t − ½) on handle 1",
            Some(value(&handle(1))),
        );
        report.check(
            &format!("handle {j} F(Gamma_{j})"),
            has_value(&f, &handle(j), &format!("w(*,1) * (1/2 - t{j}.1)"))?,
            format!("ω_*1 (½ − t) on handle {j}"),
            Some(value(&handle(j))),
        );
    }
    let alpha = example_alpha(&cat)?;
    let mut expected = cat.nu().scale(&qi(2 * genus as i64 - 2));
    for j in 2..=genus as usize {
        expected = expected.sub(&cat.a(j).wedge(cat.b(j))?.scale(&qi(2)))?;
    }
    report.check("d alpha", total_d(&alpha) == expected, "dα = (2g − 2)ν − 2Σ_{j≥2} a^j b^j", None);
    Ok(report)
}
