#include <array>

#include "homsim/scenario.hpp"

namespace homsim::cli {

namespace {

constexpr const char* kHomGaussianDip = R"JSON({
  "kind": "hom-scan",
  "name": "hom-gaussian-dip",
  "comment": "Two identical independent gaussian photons: visibility-1 dip, plateau at 1/2.",
  "grid": {"n": 256, "center": 0.0, "span": 40.0},
  "state": {
    "type": "separable",
    "photon1": {"type": "gaussian", "sigma": 1.0},
    "photon2": {"type": "gaussian", "sigma": 1.0},
    "phase": 0.0
  },
  "tau_grid": {"n": 256, "center": 0.0, "span": 30.0}
}
)JSON";

constexpr const char* kHomPhaseIndependence = R"JSON({
  "kind": "hom-scan",
  "name": "hom-phase-independence",
  "comment": "The dip does not depend on the photons' relative phase.",
  "grid": {"n": 256, "center": 0.0, "span": 40.0},
  "state": {
    "type": "separable",
    "photon1": {"type": "gaussian", "sigma": 1.0},
    "photon2": {"type": "gaussian", "sigma": 1.0}
  },
  "tau_grid": {"n": 256, "center": 0.0, "span": 30.0},
  "phases": [0.0, 1.0471975511965976, 3.141592653589793]
}
)JSON";

constexpr const char* kHomAntisymmetric = R"JSON({
  "kind": "hom-scan",
  "name": "hom-antisymmetric",
  "comment": "Exchange-antisymmetric pair: coincidence 1 at zero delay.",
  "grid": {"n": 256, "center": 0.0, "span": 40.0},
  "state": {
    "type": "pm",
    "f_plus": {"type": "gaussian", "sigma": 1.0},
    "f_minus": {"type": "hermite1", "sigma": 1.0},
    "convention": "half-difference"
  },
  "tau_grid": {"n": 64, "center": 0.0, "span": 16.0}
}
)JSON";

constexpr const char* kClassicalTriple = R"JSON({
  "kind": "classical-dip",
  "name": "classical-triple",
  "comment": "Coherent inputs with a random relative phase: C(0) = 1/2, 0, 1 for the three distributions.",
  "grid": {"n": 256, "center": 0.0, "span": 40.0},
  "alpha": {"type": "gaussian", "sigma": 1.0},
  "t_grid": {"n": 256, "center": 0.0, "span": 30.0},
  "cases": [
    {"name": "uniform", "dist": {"type": "uniform"}},
    {"name": "binary-0-pi", "dist": {"type": "two-point", "phi_a": 0.0, "phi_b": 3.141592653589793}},
    {"name": "binary-quadrature", "dist": {"type": "two-point", "phi_a": 1.5707963267948966, "phi_b": 4.71238898038469}}
  ],
  "second_order": true
}
)JSON";

constexpr const char* kWignerConsistencyGaussian = R"JSON({
  "kind": "wigner-map",
  "name": "wigner-consistency-gaussian",
  "comment": "Displaced gaussian: the coincidence map reconstructs the Wigner map.",
  "grid": {"n": 256, "center": 0.0, "span": 40.0},
  "f_minus": {"type": "gaussian", "sigma": 1.0, "center": 0.78125, "delay": -0.7},
  "f_plus": {"type": "gaussian", "sigma": 1.2},
  "mu_grid": {"n": 64, "center": 0.78125, "span": 10.0},
  "tau_grid": {"n": 64, "center": 0.7, "span": 10.0},
  "compare_hom": true
}
)JSON";

constexpr const char* kWignerConsistencyTimeCat = R"JSON({
  "kind": "wigner-map",
  "name": "wigner-consistency-time-cat",
  "comment": "Two delays in superposition: lobes on the tau axis, fringes in between.",
  "grid": {"n": 512, "center": 0.0, "span": 40.0},
  "f_minus": {
    "type": "superposition",
    "components": [
      {"weight": [1.0, 0.0], "state": {"type": "gaussian", "sigma": 1.0, "delay": -1.5}},
      {"weight": [1.0, 0.0], "state": {"type": "gaussian", "sigma": 1.0, "delay": 1.5}}
    ]
  },
  "f_plus": {"type": "gaussian", "sigma": 1.2},
  "mu_grid": {"n": 64, "center": 0.0, "span": 10.0},
  "tau_grid": {"n": 96, "center": 0.0, "span": 7.5},
  "compare_hom": true
}
)JSON";

constexpr const char* kWignerConsistencyFrequencyCat = R"JSON({
  "kind": "wigner-map",
  "name": "wigner-consistency-frequency-cat",
  "comment": "Two carrier frequencies in superposition: lobes on the mu axis.",
  "grid": {"n": 512, "center": 0.0, "span": 40.0},
  "f_minus": {
    "type": "superposition",
    "components": [
      {"weight": [1.0, 0.0], "state": {"type": "gaussian", "sigma": 1.0, "center": -3.125}},
      {"weight": [1.0, 0.0], "state": {"type": "gaussian", "sigma": 1.0, "center": 3.125}}
    ]
  },
  "f_plus": {"type": "gaussian", "sigma": 1.2},
  "mu_grid": {"n": 128, "center": 0.0, "span": 10.0},
  "tau_grid": {"n": 96, "center": 0.0, "span": 6.0},
  "compare_hom": true
}
)JSON";

constexpr const char* kPumpGaussianGeometry = R"JSON({
  "kind": "pump-state",
  "name": "pump-gaussian-geometry",
  "comment": "Tilted, displaced pump beam: phase-space peak at the closed-form center.",
  "device": {"length": 20.0, "group_velocity": 1.0, "pump_frequency": 50.0, "degeneracy_angle": 0.2, "light_speed": 10.0},
  "beams": [{"waist": 1.5, "angle": 0.26, "position": 1.5, "amplitude": [1.0, 0.0]}],
  "z_samples": 1024,
  "out_grid": {"n": 512, "center": 0.0, "span": 40.0},
  "wigner": {
    "mu_grid": {"n": 128, "center": 0.0, "span": 10.0},
    "tau_grid": {"n": 128, "center": 0.0, "span": 12.0}
  },
  "closed_form_check": true
}
)JSON";

constexpr const char* kWitnessSeparable = R"JSON({
  "kind": "coincidence-map",
  "name": "witness-separable",
  "comment": "Separable pair: the witness must stay silent everywhere on the map.",
  "grid": {"n": 128, "center": 0.0, "span": 24.0},
  "state": {
    "type": "separable",
    "photon1": {"type": "gaussian", "sigma": 1.0, "center": -0.5},
    "photon2": {"type": "gaussian", "sigma": 1.4, "center": 0.5, "delay": 0.8},
    "phase": 0.9
  },
  "mu_grid": {"n": 24, "center": 0.0, "span": 4.5},
  "tau_grid": {"n": 24, "center": 0.0, "span": 8.0},
  "schmidt": true
}
)JSON";

constexpr const char* kWitnessFrequencyCat = R"JSON({
  "kind": "wigner-map",
  "name": "witness-frequency-cat",
  "comment": "Frequency cat with lobes six amplitude-FWHMs apart: deep negativity fires the witness.",
  "grid": {"n": 512, "center": 0.0, "span": 64.0},
  "f_minus": {
    "type": "superposition",
    "components": [
      {"weight": [1.0, 0.0], "state": {"type": "gaussian", "sigma": 1.0, "center": -7.0625}},
      {"weight": [1.0, 0.0], "state": {"type": "gaussian", "sigma": 1.0, "center": 7.0625}}
    ]
  },
  "mu_grid": {"n": 64, "center": 0.0, "span": 8.0},
  "tau_grid": {"n": 1024, "center": 0.0, "span": 10.0}
}
)JSON";

constexpr const char* kWignerMarginals = R"JSON({
  "kind": "wigner-map",
  "name": "wigner-marginals",
  "comment": "Marginals of the phase-space map return the spectral and temporal densities.",
  "grid": {"n": 256, "center": 0.0, "span": 40.0},
  "f_minus": {"type": "gaussian", "sigma": 1.0, "center": 0.78125, "delay": -0.7},
  "mu_grid": {"n": 128, "center": 0.78125, "span": 20.0},
  "tau_grid": {"n": 128, "center": 0.7, "span": 16.0},
  "marginals": true
}
)JSON";

constexpr const char* kCombCavityHom = R"JSON({
  "kind": "comb-readout",
  "name": "comb-cavity-hom",
  "comment": "Facet cavity at R = 0.3: dip plus satellites at half the roundtrip time.",
  "readout": {
    "grid": {"n": 1024, "center": 0.0, "span": 64.0},
    "state_a": {"type": "gaussian", "sigma": 2.0},
    "state_b": {"type": "cavity-gaussian", "sigma": 8.0, "cavity": {"reflectivity": 0.3, "roundtrip_time": 6.283185307179586, "detuning": "resonant"}},
    "tau_grid": {"n": 512, "center": 0.0, "span": 16.0}
  }
}
)JSON";

constexpr const char* kCombAntiResonant = R"JSON({
  "kind": "comb-readout",
  "name": "comb-anti-resonant",
  "comment": "Anti-resonant comb: delay revivals alternate between coincidence 0 and 1.",
  "readout": {
    "grid": {"n": 2048, "center": 0.0, "span": 51.2},
    "state_a": {"type": "gaussian", "sigma": 2.0},
    "state_b": {"type": "comb", "label": "one", "spacing": 1.0, "tooth_width": 0.2, "envelope_width": 4.0},
    "tau_grid": {"n": 512, "center": 0.0, "span": 16.0}
  }
}
)JSON";

constexpr const char* kGkpGates = R"JSON({
  "kind": "comb-readout",
  "name": "gkp-gates",
  "comment": "Comb-encoded qubit: tooth-spacing displacements act as the logical flips.",
  "gates": {
    "grid": {"n": 16384, "center": 0.0, "span": 102.4},
    "periodic_grid": {"n": 16384, "center": 0.0, "span": 64.0},
    "spacing": 1.0,
    "tooth_width": 0.05,
    "envelope_width": 8.0
  }
}
)JSON";

constexpr const char* kSpectrogramGaussian = R"JSON({
  "kind": "spectrogram",
  "name": "spectrogram-gaussian",
  "comment": "Windowed-Fourier map of a delayed gaussian; cross-checked against the interferometer.",
  "grid": {"n": 256, "center": 0.0, "span": 40.0},
  "signal": {"type": "gaussian", "sigma": 1.0, "delay": 0.3},
  "window": {"type": "gaussian", "sigma": 1.0},
  "mu_grid": {"n": 48, "center": 0.0, "span": 7.5},
  "tau_grid": {"n": 48, "center": 0.0, "span": 10.0},
  "cross_check": true
}
)JSON";

constexpr std::array<CatalogEntry, 15> kCatalog = {{
    {"hom-gaussian-dip", "Textbook dip of two identical gaussian photons", kHomGaussianDip},
    {"hom-phase-independence", "Dip invariance under the pair's relative phase", kHomPhaseIndependence},
    {"hom-antisymmetric", "Antisymmetric pair peaks at coincidence 1", kHomAntisymmetric},
    {"classical-triple", "Coherent-state analog with three phase distributions", kClassicalTriple},
    {"wigner-consistency-gaussian", "Coincidence map vs direct Wigner map, gaussian", kWignerConsistencyGaussian},
    {"wigner-consistency-time-cat", "Coincidence map vs direct Wigner map, time cat", kWignerConsistencyTimeCat},
    {"wigner-consistency-frequency-cat", "Coincidence map vs direct Wigner map, frequency cat",
     kWignerConsistencyFrequencyCat},
    {"pump-gaussian-geometry", "Pump tilt/offset steer the phase-space peak", kPumpGaussianGeometry},
    {"witness-separable", "Separable fixture keeps the witness silent", kWitnessSeparable},
    {"witness-frequency-cat", "Well-separated cat fires the witness with deep negativity",
     kWitnessFrequencyCat},
    {"wigner-marginals", "Phase-space marginals return both densities", kWignerMarginals},
    {"comb-cavity-hom", "Cavity comb trace with echo satellites", kCombCavityHom},
    {"comb-anti-resonant", "Offset comb alternating between bunching and antibunching", kCombAntiResonant},
    {"gkp-gates", "Displacement gates on the comb-encoded qubit", kGkpGates},
    {"spectrogram-gaussian", "Spectrogram map plus interferometer cross-check", kSpectrogramGaussian},
}};

}  // namespace

std::span<const CatalogEntry> scenario_catalog() { return {kCatalog.data(), kCatalog.size()}; }

}  // namespace homsim::cli
