//! Built-in identity suite: every published equality the library
//! reproduces, checked analytically.

use indefinite_core::constants::{self, ket_2, ket_3, ket_4, ket_5, ket_a, ket_b};
use indefinite_core::contextuality::{
    builtin, check_admissible, classify_gadget, enumerate_two_valued_states, is_unital, propagate,
    verify_coordinatization, GadgetClass, PartialAssignment, Value,
};
use indefinite_core::linalg::{
    born_probability, compose, eigenvalue_multisets_match, eigenvalues, is_orthonormal_context,
    projector_from_state, verify_conjugation, Matrix, StateVector, UnitaryMatrix, EPS_MAT,
};
use indefinite_core::optics::{forward_paths, network_unitary, three_port_network};
use indefinite_core::qrng::{
    apply_morphism, build_vi_state, merge_postprocess, merged_complement_projector, outcome_distribution,
    sample, universal_measurement_check, Alphabet, Basis, Distribution, MeasurementSetup, StreamMeta,
    SymbolStream,
};
use indefinite_core::Complex64;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyItem {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Inputs of the suite. `ux` is taken as a raw matrix so a test hook can
/// perturb it.
pub struct Fixture {
    pub ux: Matrix,
}

impl Fixture {
    pub fn standard() -> Self {
        Self { ux: constants::u_x().into_matrix() }
    }

    /// Adds `delta` to entry `(0, 0)` of `U_x`.
    pub fn perturbed(delta: f64) -> Self {
        let mut ux = constants::u_x().into_matrix();
        ux[(0, 0)] += Complex64::new(delta, 0.0);
        Self { ux }
    }

    fn ux(&self) -> Result<UnitaryMatrix, String> {
        UnitaryMatrix::new(self.ux.clone()).map_err(|e| e.to_string())
    }
}

type Check = Result<(bool, String), String>;
type Item<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

fn close_probs(got: &[f64], want: &[f64], tol: f64) -> (bool, String) {
    let ok = got.len() == want.len() && got.iter().zip(want).all(|(a, b)| (a - b).abs() < tol);
    (ok, format!("{got:?}"))
}

fn diff_item(got: &Matrix, want: &Matrix, tol: f64) -> (bool, String) {
    let d = got.max_abs_diff(want);
    (d < tol, format!("max deviation {d:.3e}"))
}

fn show_spectrum(ev: &[Complex64]) -> String {
    let mut re: Vec<f64> = ev.iter().map(|z| z.re).collect();
    re.sort_by(f64::total_cmp);
    let parts: Vec<String> = re.iter().map(|x| format!("{x:.6}")).collect();
    format!("{{{}}}", parts.join(","))
}

fn setup_probs(prepared: StateVector, u: UnitaryMatrix) -> Result<Vec<f64>, String> {
    let s = MeasurementSetup::standard(prepared, u).map_err(|e| e.to_string())?;
    Ok(outcome_distribution(&s))
}

fn err<E: ToString>(e: E) -> String {
    e.to_string()
}

/// The coloring of the TIFS sub-hypergraph with `v(a) = 1`, `v(b) = 0`.
const TIFS_ONES: [&str; 11] = ["a", "3", "7", "8", "11", "13", "17", "18", "25", "26", "28"];

pub fn run_suite(f: &Fixture) -> Vec<VerifyItem> {
    let items: Vec<Item<'_>> = vec![
        ("U_x is unitary", Box::new(|| {
            let r = f.ux.unitarity_residual();
            Ok((r < EPS_MAT, format!("residual {r:.3e}")))
        })),
        ("projector of e0 is diag(1,0,0)", Box::new(|| {
            let p = projector_from_state(&ket_a()).map_err(err)?;
            let want = Matrix::from_real(3, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]).map_err(err)?;
            Ok(diff_item(p.as_matrix(), &want, 1e-12))
        })),
        ("E_b matches its printed matrix", Box::new(|| {
            let p = projector_from_state(&ket_b()).map_err(err)?;
            Ok(diff_item(p.as_matrix(), &constants::projector_b_printed(), 1e-12))
        })),
        ("E_3 matches its printed matrix", Box::new(|| {
            let p = projector_from_state(&ket_3()).map_err(err)?;
            Ok(diff_item(p.as_matrix(), &constants::projector_3_printed(), 1e-12))
        })),
        ("Tr(E_a E_b) = Tr(E_a E_3) = 1/2, Tr(E_a E_2) = 0", Box::new(|| {
            let ea = projector_from_state(&ket_a()).map_err(err)?;
            let p = |k: &StateVector| -> Result<f64, String> {
                born_probability(&ea, &projector_from_state(k).map_err(err)?).map_err(err)
            };
            let got = [p(&ket_b())?, p(&ket_3())?, p(&ket_2())?];
            Ok(close_probs(&got, &[0.5, 0.5, 0.0], 1e-12))
        })),
        ("U' U_x matches its printed matrix", Box::new(|| {
            let prod = compose(&constants::u_prime(), &f.ux()?).map_err(err)?;
            Ok(diff_item(prod.as_matrix(), constants::u_prime_u_x().as_matrix(), 1e-12))
        })),
        ("V^dagger = V^T for the real conjugator", Box::new(|| {
            let v = constants::v_conjugator();
            Ok(diff_item(v.adjoint().as_matrix(), &v.as_matrix().transpose(), 1e-15))
        })),
        ("V^T U_x V = U' U_x", Box::new(|| {
            let ok = verify_conjugation(&constants::v_conjugator(), &f.ux()?, &constants::u_prime_u_x());
            Ok((ok, String::new()))
        })),
        ("eigenvalues of U_x and U' U_x are {-1,1,1}", Box::new(|| {
            let want = [Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)];
            let a = eigenvalues(&f.ux).map_err(err)?;
            let b = eigenvalues(constants::u_prime_u_x().as_matrix()).map_err(err)?;
            let ok = eigenvalue_multisets_match(&a, &want, 1e-8) && eigenvalue_multisets_match(&b, &want, 1e-8);
            Ok((ok, format!("U_x {} U'U_x {}", show_spectrum(&a), show_spectrum(&b))))
        })),
        ("rows of U_x form an orthonormal context", Box::new(|| {
            let rows: Vec<StateVector> = (0..3)
                .map(|r| StateVector::new(f.ux.row(r).to_vec()))
                .collect::<Result<_, _>>()
                .map_err(err)?;
            Ok((is_orthonormal_context(&rows), String::new()))
        })),
        ("{b,2,3} is an orthonormal context", Box::new(|| {
            Ok((is_orthonormal_context(&[ket_b(), ket_2(), ket_3()]), String::new()))
        })),
        ("E_{2,3} = E_2 + E_3 matches its printed matrix", Box::new(|| {
            let e23 = merged_complement_projector(&[ket_b(), ket_2(), ket_3()], 0).map_err(err)?;
            Ok(diff_item(e23.as_matrix(), &constants::projector_23_printed(), 1e-12))
        })),
        ("E_b + E_{2,3} = I", Box::new(|| {
            let e23 = merged_complement_projector(&[ket_b(), ket_2(), ket_3()], 0).map_err(err)?;
            let eb = projector_from_state(&ket_b()).map_err(err)?;
            let sum = eb.as_matrix().add(e23.as_matrix()).map_err(err)?;
            Ok(diff_item(&sum, &Matrix::identity(3), 1e-12))
        })),
        ("value-indefinite state of (1/2,1/4,1/4) is (1/sqrt2,1/2,1/2)", Box::new(|| {
            let d = Distribution::new(vec![0.5, 0.25, 0.25]).map_err(err)?;
            let psi = build_vi_state(&d);
            let got: Vec<f64> = psi.amplitudes().iter().map(|z| z.re).collect();
            Ok(close_probs(&got, &[std::f64::consts::FRAC_1_SQRT_2, 0.5, 0.5], 1e-12))
        })),
        ("U_x on e1 gives (1/2, 0, 1/2)", Box::new(|| {
            Ok(close_probs(&setup_probs(StateVector::basis(3, 1), f.ux()?)?, &[0.5, 0.0, 0.5], 1e-12))
        })),
        ("U_x on e0 gives (1/4, 1/2, 1/4)", Box::new(|| {
            Ok(close_probs(&setup_probs(StateVector::basis(3, 0), f.ux()?)?, &[0.25, 0.5, 0.25], 1e-12))
        })),
        ("splitter network on |a> gives (1/2, 1/4, 1/4)", Box::new(|| {
            let u = network_unitary(&three_port_network()).map_err(err)?;
            Ok(close_probs(&setup_probs(ket_a(), u)?, &[0.5, 0.25, 0.25], 1e-12))
        })),
        ("U' U_x on e0 gives (1/2, 1/2, 0)", Box::new(|| {
            let base = MeasurementSetup::standard(StateVector::basis(3, 0), f.ux()?).map_err(err)?;
            let merged = merge_postprocess(&constants::u_prime(), &base).map_err(err)?;
            Ok(close_probs(&outcome_distribution(&merged), &[0.5, 0.5, 0.0], 1e-12))
        })),
        ("measuring in the images of U reproduces the target law", Box::new(|| {
            let d = Distribution::new(vec![0.5, 0.25, 0.25]).map_err(err)?;
            let u = f.ux()?;
            let s = MeasurementSetup::new(build_vi_state(&d), u.clone(), Basis::ImagesOf(u)).map_err(err)?;
            Ok(close_probs(&outcome_distribution(&s), d.probs(), 1e-12))
        })),
        ("U_x is universal for (1/2, 1/4, 1/4)", Box::new(|| {
            let d = Distribution::new(vec![0.5, 0.25, 0.25]).map_err(err)?;
            Ok((universal_measurement_check(&d, &f.ux()?), String::new()))
        })),
        ("10^6 draws of U_x on e1 never yield symbol 1", Box::new(|| {
            let s = MeasurementSetup::standard(StateVector::basis(3, 1), f.ux()?).map_err(err)?;
            let counts = sample(&s, 1_000_000, 1).counts();
            Ok((counts[1] == 0, format!("counts {counts:?}")))
        })),
        ("morphism maps [0,1,2,0] to [1,0,0,1]", Box::new(|| {
            let meta = StreamMeta { seed: 0, generator: String::new(), count: 4, setup: String::new(), dust_events: 0 };
            let s = SymbolStream { alphabet: Alphabet::Ternary, symbols: vec![0, 1, 2, 0], meta };
            let out = apply_morphism(&s).map_err(err)?;
            Ok((out.symbols == [1, 0, 0, 1], format!("{:?}", out.symbols)))
        })),
        ("2-to-1 merge of U|a> is (1,1,0)/sqrt2", Box::new(|| {
            let s = MeasurementSetup::standard(ket_a(), constants::u_network()).map_err(err)?;
            let merged = merge_postprocess(&constants::u_prime_two_to_one(), &s).map_err(err)?;
            let want = StateVector::from_real(&[1.0, 1.0, 0.0]).map_err(err)?;
            Ok((merged.output_state().equal_up_to_phase(&want, 1e-12), String::new()))
        })),
        ("splitter network realizes |b><a| + |2><4| + |3><5|", Box::new(|| {
            let net = three_port_network();
            let u = network_unitary(&net).map_err(err)?;
            let pairs = [(ket_a(), ket_b()), (ket_4(), ket_2()), (ket_5(), ket_3())];
            let mut ok = true;
            for (input, output) in &pairs {
                let by_matrix = u.apply(input).map_err(err)?;
                let by_paths = forward_paths(&net, input).map_err(err)?;
                ok &= by_matrix.equal_up_to_phase(output, 1e-10) && by_paths.equal_up_to_phase(output, 1e-10);
            }
            Ok((ok, String::new()))
        })),
        ("splitter transmissivities are {2/3, 3/4, 2/3}", Box::new(|| {
            let t: Vec<f64> = three_port_network().splitters().map(|s| s.transmissivity()).collect();
            Ok(close_probs(&t, &[2.0 / 3.0, 0.75, 2.0 / 3.0], 1e-12))
        })),
        ("coordinatization of a,b,2,3,4,5 is orthogonal", Box::new(|| {
            let h = builtin::full();
            let v = verify_coordinatization(&h, &builtin::coordinatization(&h));
            Ok((v.is_empty(), format!("{} violations", v.len())))
        })),
        ("TIFS coloring with v(a)=1, v(b)=0 is admissible", Box::new(|| {
            let h = builtin::tifs();
            let values = h
                .labels()
                .iter()
                .map(|l| if TIFS_ONES.contains(&l.as_str()) { Value::One } else { Value::Zero })
                .collect();
            let a = PartialAssignment::from_values(&h, values).map_err(err)?;
            let v = check_admissible(&h, &a).map_err(err)?;
            Ok((v.is_empty(), format!("{} violations", v.len())))
        })),
        ("all-zero context {3,21,23} is flagged", Box::new(|| {
            let h = builtin::full();
            let a = PartialAssignment::from_labels(&h, &[("3", Value::Zero), ("21", Value::Zero), ("23", Value::Zero)])
                .map_err(err)?;
            let v = check_admissible(&h, &a).map_err(err)?;
            let c = h.find_context(&["3", "21", "23"]);
            let ok = v.iter().filter(|x| x.kind.is_contradiction()).count() == 1
                && v.iter().any(|x| x.kind.is_contradiction() && Some(x.context) == c);
            Ok((ok, String::new()))
        })),
        ("v(a)=1 yields the star {a:1,1:0,2:0,4:0,5:0}", Box::new(|| {
            let h = builtin::full();
            let seed = PartialAssignment::from_labels(&h, &[("a", Value::One)]).map_err(err)?;
            let out = propagate(&h, &seed);
            let mut got: Vec<(String, Value)> = out
                .assignment()
                .values()
                .iter()
                .enumerate()
                .filter(|(_, x)| x.is_definite())
                .map(|(v, x)| (h.label(v).to_string(), *x))
                .collect();
            got.sort();
            let mut want: Vec<(String, Value)> = [("a", Value::One), ("1", Value::Zero), ("2", Value::Zero), ("4", Value::Zero), ("5", Value::Zero)]
                .iter()
                .map(|(l, x)| (l.to_string(), *x))
                .collect();
            want.sort();
            Ok((!out.is_contradiction() && got == want, format!("{} definite", got.len())))
        })),
        ("TIFS with v(a)=v(b)=1 contradicts at {3,21,23}", Box::new(|| {
            let h = builtin::tifs();
            let seed = PartialAssignment::from_labels(&h, &[("a", Value::One), ("b", Value::One)]).map_err(err)?;
            let c = propagate(&h, &seed).contradiction_context();
            Ok((c.is_some() && c == h.find_context(&["3", "21", "23"]), c.map(|c| h.context_labels(c).join(",")).unwrap_or_default()))
        })),
        ("TITS with v(a)=1, v(b)=0 contradicts at {6,7,b}", Box::new(|| {
            let h = builtin::tits();
            let seed = PartialAssignment::from_labels(&h, &[("a", Value::One), ("b", Value::Zero)]).map_err(err)?;
            let c = propagate(&h, &seed).contradiction_context();
            Ok((c.is_some() && c == h.find_context(&["6", "7", "b"]), c.map(|c| h.context_labels(c).join(",")).unwrap_or_default()))
        })),
        ("gadget classes: TIFS, TITS, both (a,b), both (a,3)", Box::new(|| {
            let full = builtin::full();
            let got = [
                classify_gadget(&builtin::tifs(), "a", "b").map_err(err)?,
                classify_gadget(&builtin::tits(), "a", "b").map_err(err)?,
                classify_gadget(&full, "a", "b").map_err(err)?,
                classify_gadget(&full, "a", "3").map_err(err)?,
            ];
            let want = [GadgetClass::Tifs, GadgetClass::Tits, GadgetClass::Both, GadgetClass::Both];
            Ok((got == want, format!("{got:?}")))
        })),
        ("8 two-valued states, each with v(1)=1 and v(a)=0", Box::new(|| {
            let h = builtin::full();
            let states = enumerate_two_valued_states(&h);
            let ok = states.len() == 8
                && states.iter().all(|s| {
                    s.get(&h, "1") == Ok(Value::One) && s.get(&h, "a") == Ok(Value::Zero)
                });
            Ok((ok, format!("{} states", states.len())))
        })),
        ("full set is not unital, a has no witness", Box::new(|| {
            let h = builtin::full();
            let u = is_unital(&h);
            let a = h.vertex("a").map_err(err)?;
            Ok((!u.unital && u.witnesses[a].is_none(), String::new()))
        })),
        ("TIFS sub-hypergraph has a state with v(a)=1", Box::new(|| {
            let h = builtin::tifs();
            let u = is_unital(&h);
            let a = h.vertex("a").map_err(err)?;
            Ok((u.witnesses[a].is_some(), String::new()))
        })),
    ];
    items
        .into_iter()
        .map(|(name, check)| {
            let (passed, detail) = check().unwrap_or_else(|e| (false, e));
            VerifyItem { name: name.to_string(), passed, detail }
        })
        .collect()
}
