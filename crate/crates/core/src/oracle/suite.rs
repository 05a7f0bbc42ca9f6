//! The full cross-check suite run by `mtensor verify`.

use crate::adjoint::{adjoint, check_vanishing, surface_adjoint};
use crate::algebra::rational::rat;
use crate::algebra::ExactScalar;
use crate::polytope::linalg::Point;
use crate::polytope::{nonface_subspaces, polygon_nonface_subspaces, Polytope};
use crate::tensor::{
    e_elem, facet_form_product, form_derivative_at_zero, multisets, surface_tensor,
    surface_tensors, volume_tensor, IndexMultiset, Method, TensorError,
};

use super::{moment_gf_series, triangulation_independence};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl CheckResult {
    fn new(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: if ok {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            detail: detail.into(),
        }
    }

    fn skipped(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: CheckStatus::Skipped,
            detail: detail.into(),
        }
    }

    pub fn failed(&self) -> bool {
        self.status == CheckStatus::Fail
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteOptions {
    pub max_r: usize,
    pub max_s: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            max_r: 4,
            max_s: 3,
            seed: 0,
        }
    }
}

pub fn run_suite(p: &Polytope, opts: SuiteOptions) -> Result<Vec<CheckResult>, TensorError> {
    let mut out = Vec::new();
    let d = p.dim();
    let m = p.num_vertices();
    let simplex_facets = p.facets().iter().all(|f| f.is_simplex(d));

    let closed = p.area_vector_sum_exact().iter().all(ExactScalar::is_zero);
    out.push(CheckResult::new(
        "closedness",
        closed,
        "sum of V(F)·u_F over facets",
    ));

    let methods: Vec<Method> = if simplex_facets {
        Method::ALL.to_vec()
    } else {
        vec![Method::Series, Method::Definitional]
    };
    let names: Vec<&str> = methods.iter().map(|m| m.as_str()).collect();
    let ss: Vec<usize> = (0..=opts.max_s).collect();
    for r in 0..=opts.max_r {
        let reference = surface_tensors(p, r, &ss, Method::Definitional)?;
        let mut disagree: Vec<Vec<&str>> = vec![Vec::new(); ss.len()];
        for &method in methods.iter().filter(|&&m| m != Method::Definitional) {
            for (si, t) in surface_tensors(p, r, &ss, method)?.iter().enumerate() {
                if !t.same_entries(&reference[si]) {
                    disagree[si].push(method.as_str());
                }
            }
        }
        for (s, bad) in disagree.into_iter().enumerate() {
            let detail = if bad.is_empty() {
                format!("{} agree", names.join(", "))
            } else {
                format!("differs from definitional: {}", bad.join(", "))
            };
            out.push(CheckResult::new(
                format!("surface tensor r={r} s={s}"),
                bad.is_empty(),
                detail,
            ));
        }
    }

    let half_area = ExactScalar::checked_sum(p.facets().iter().map(|f| f.volume()))?
        .scale(&crate::algebra::rational::frac(1, 2));
    let rank0 = surface_tensor(p, 0, 0, Method::Series)?.get(&[], &[]);
    out.push(CheckResult::new(
        "rank zero is half the surface area",
        rank0 == half_area,
        format!("{rank0}"),
    ));

    let series = moment_gf_series(p, opts.max_r);
    let mut moment_ok = true;
    for r in 0..=opts.max_r {
        moment_ok &= series.volume_tensors[r].same_entries(&volume_tensor(p, r)?);
    }
    out.push(CheckResult::new(
        "moment series matches barycentric moments",
        moment_ok,
        format!("ranks 0..={}", opts.max_r),
    ));

    let tri = triangulation_independence(p, opts.max_r);
    out.push(CheckResult::new(
        "triangulation independence",
        tri.identical,
        match tri.mismatch {
            None => format!("{} apices, degree {}", tri.apices.len(), opts.max_r),
            Some(a) => format!("apex {a} gives a different series"),
        },
    ));

    let ad = adjoint(p, None);
    let ad_deg = ad.degree().unwrap_or(0) as usize;
    let ad_ok = ad_deg + d < m && ad.constant_term() == rat(1);
    out.push(CheckResult::new(
        "adjoint degree and normalization",
        ad_ok,
        format!("degree {ad_deg}, bound {}", (m - d).saturating_sub(1)),
    ));
    let sa = surface_adjoint(p, 0);
    let sa_deg = sa.degree().unwrap_or(0) as usize;
    out.push(CheckResult::new(
        "surface adjoint degree",
        sa_deg <= m - d,
        format!("degree {sa_deg}, bound {}", m - d),
    ));

    let vanishing = match d {
        2 => {
            let mut certs = Vec::new();
            for nf in polygon_nonface_subspaces(p)? {
                certs.push(check_vanishing(&ad, &nf, None, opts.seed));
            }
            Some(certs)
        }
        3 => {
            let mut certs = Vec::new();
            for fi in 0..p.facets().len() {
                for nf in nonface_subspaces(p, fi)? {
                    for term in &sa.terms {
                        certs.push(check_vanishing(&term.poly, &nf, None, opts.seed));
                    }
                }
            }
            Some(certs)
        }
        _ => None,
    };
    out.push(match vanishing {
        Some(certs) => CheckResult::new(
            "vanishing on non-face subspaces",
            certs.iter().all(|c| c.passed && c.is_proof),
            format!("{} certificates", certs.len()),
        ),
        None => CheckResult::skipped(
            "vanishing on non-face subspaces",
            "non-face enumeration is implemented for dim <= 3",
        ),
    });

    if simplex_facets {
        let mut ok = true;
        let mut count = 0;
        for fi in 0..p.facets().len() {
            let lf = facet_form_product(p, fi);
            let rows: Vec<Point> = p
                .facet(fi)
                .vertex_ids()
                .iter()
                .map(|&k| p.vertices()[k].clone())
                .collect();
            for k in 1..=d {
                for key in multisets(d, k) {
                    let i = IndexMultiset::new(key);
                    let sign = if k % 2 == 0 { rat(1) } else { rat(-1) };
                    ok &= form_derivative_at_zero(&lf, &i) == sign * e_elem(&i, &rows)?;
                    count += 1;
                }
            }
        }
        out.push(CheckResult::new(
            "derivatives of L_F match elementary symmetric functions",
            ok,
            format!("{count} multi-indices"),
        ));
    } else {
        out.push(CheckResult::skipped(
            "derivatives of L_F match elementary symmetric functions",
            "some facet is not a simplex",
        ));
    }
    Ok(out)
}
