use neqslab_core::scattering::slab_coefficients;
use neqslab_core::waves::{Polarization, C};
use neqslab_core::{DielectricModel, Oscillator, SlabSpec, Thickness};

#[test]
fn scan_integrand() {
    let model = DielectricModel::drude_lorentz(1.0, vec![Oscillator{omega0:1.2e14, omega_p:1.8e14, gamma:8.0e13}]).unwrap();
    let slab = SlabSpec::new(model.clone(), Thickness::Finite(2e-6)).unwrap();
    let z_a = 3e-6;
    let omega = 2e13f64;
    let oc = omega / C;
    println!("oc = {oc:.4e}");
    for pol in Polarization::BOTH {
        for u in [683593.75f64, 683695.0, 683797.2, 683900.0, 684000.65, 500000.0, 1000000.0] {
            let k = oc.hypot(u);
            let (rho, _) = slab_coefficients(&slab, pol, omega, k).unwrap();
            let dot = match pol { Polarization::Te => 1.0, Polarization::Tm => (2.0*k*k-oc*oc)/(oc*oc) };
            let v = u * dot * (rho.conj() * (-2.0*u*z_a).exp()).im;
            println!("{pol:?} u={u:.6e} k={k:.6e} rho=({:.6e},{:.6e}) f={v:.9e}", rho.re, rho.im);
        }
    }
}

#[test]
fn reproduce_stuck_integral() {
    use neqslab_core::quadrature::integrate_adaptive;
    let model = DielectricModel::drude_lorentz(1.0, vec![Oscillator{omega0:1.2e14, omega_p:1.8e14, gamma:8.0e13}]).unwrap();
    let slab = SlabSpec::new(model.clone(), Thickness::Finite(2e-6)).unwrap();
    let z_a = 3e-6;
    let omega = 2e13f64;
    let oc = omega / C;
    let umax = 30.0 / (2.0 * z_a);
    for pol in Polarization::BOTH {
        let r = integrate_adaptive::<1,_>(|u: f64| {
            let k = oc.hypot(u);
            let (rho, _) = slab_coefficients(&slab, pol, omega, k).unwrap();
            let dot = match pol { Polarization::Te => 1.0, Polarization::Tm => (2.0*k*k-oc*oc)/(oc*oc) };
            Ok([u * dot * (rho.conj() * (-2.0*u*z_a).exp()).im])
        }, 0.0, umax, &[], 1e-9, 1e-20, 4000, "i3-repro");
        println!("{pol:?}: {r:?}");
    }
}
