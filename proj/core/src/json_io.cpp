#include "qinstr/json_io.hpp"

namespace qinstr {

json encode_matrix(const Matrix& m) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      entries.push_back({m(i, j).real(), m(i, j).imag()});
  return json{{"dim", m.rows()}, {"entries", entries}};
}

Matrix decode_matrix(const json& j) {
  const int dim = j.at("dim").get<int>();
  const auto& entries = j.at("entries");
  if (static_cast<int>(entries.size()) != dim * dim)
    throw ValidationError("decode_matrix: entry count does not match dim^2");
  Matrix m(dim, dim);
  int idx = 0;
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c, ++idx)
      m(r, c) = Complex(entries[idx][0].get<double>(), entries[idx][1].get<double>());
  return m;
}

json encode_vector(const Vector& v) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    entries.push_back({v(i).real(), v(i).imag()});
  return json{{"dim", v.size()}, {"entries", entries}};
}

Vector decode_vector(const json& j) {
  const int dim = j.at("dim").get<int>();
  const auto& entries = j.at("entries");
  if (static_cast<int>(entries.size()) != dim)
    throw ValidationError("decode_vector: entry count does not match dim");
  Vector v(dim);
  for (int i = 0; i < dim; ++i)
    v(i) = Complex(entries[i][0].get<double>(), entries[i][1].get<double>());
  return v;
}

json encode_povm(const POVM& p) {
  json effects = json::array();
  for (const auto& e : p.effects) effects.push_back(encode_matrix(e));
  return json{{"outcomes", p.outcomes}, {"effects", effects}};
}

POVM decode_povm(const json& j, const NumericConfig& cfg) {
  std::vector<double> outcomes = j.at("outcomes").get<std::vector<double>>();
  std::vector<Matrix> effects;
  for (const auto& e : j.at("effects")) effects.push_back(decode_matrix(e));
  return POVM(std::move(outcomes), std::move(effects), cfg);
}

json encode_instrument(const KrausInstrument& instr) {
  json sets = json::array();
  for (const auto& set : instr.kraus_sets) {
    json one = json::array();
    for (const auto& k : set) one.push_back(encode_matrix(k));
    sets.push_back(one);
  }
  return json{{"outcomes", instr.outcomes}, {"kraus", sets}};
}

KrausInstrument decode_instrument(const json& j, const NumericConfig& cfg) {
  std::vector<double> outcomes = j.at("outcomes").get<std::vector<double>>();
  std::vector<std::vector<Matrix>> sets;
  for (const auto& set : j.at("kraus")) {
    std::vector<Matrix> one;
    for (const auto& k : set) one.push_back(decode_matrix(k));
    sets.push_back(std::move(one));
  }
  return KrausInstrument(std::move(outcomes), std::move(sets), cfg);
}

json encode_model(const MeasurementModel& m) {
  return json{{"system_dim", m.system_dim},
              {"ancilla_dim", m.ancilla_dim},
              {"ancilla_state", encode_matrix(m.ancilla_state.matrix)},
              {"unitary", encode_matrix(m.unitary)},
              {"meter", encode_matrix(m.meter.matrix)},
              {"meter_label", m.meter.label}};
}

MeasurementModel decode_model(const json& j, const NumericConfig& cfg) {
  return MeasurementModel(
      j.at("system_dim").get<int>(), j.at("ancilla_dim").get<int>(),
      DensityOperator(decode_matrix(j.at("ancilla_state")), cfg),
      decode_matrix(j.at("unitary")),
      Observable(decode_matrix(j.at("meter")), j.value("meter_label", "M"), cfg), cfg);
}

json encode_gate_implementation(const GateImplementation& impl) {
  return json{{"ancilla_dim", impl.ancilla_dim},
              {"unitary", encode_matrix(impl.unitary)},
              {"ancilla_vector", encode_vector(impl.ancilla_vector)}};
}

GateImplementation decode_gate_implementation(const json& j, const NumericConfig& cfg) {
  return GateImplementation(j.at("ancilla_dim").get<int>(),
                            decode_matrix(j.at("unitary")),
                            decode_vector(j.at("ancilla_vector")), cfg);
}

json encode_chain_report(const ChainReport& r) {
  json links = json::array();
  for (const auto& l : r.links)
    links.push_back(
        {{"name", l.name}, {"lhs", l.lhs}, {"rhs", l.rhs}, {"slack", l.slack}});
  return json{{"links", links}, {"holds", r.holds}, {"terms", r.terms}};
}

json encode_way_report(const WayReport& r) {
  return json{{"achieved_noise_sq", r.achieved_noise_sq},
              {"bound", r.bound},
              {"margin", r.margin},
              {"numerator", r.numerator},
              {"delta_l1_sq", r.delta_l1_sq},
              {"delta_l2_sq", r.delta_l2_sq},
              {"conservation_residual", r.conservation_residual},
              {"meter_residual", r.meter_residual}};
}

json encode_noise_assessment(const NoiseAssessment& a) {
  return json{{"mean_noise", a.mean_noise},
              {"rms_noise", a.rms_noise},
              {"noise_stddev", a.noise_stddev},
              {"mean_noise_operator", encode_matrix(a.mean_noise_operator.matrix)}};
}

json encode_fidelity_report(const FidelityReport& r) {
  return json{{"f0_sq", r.f0_sq},
              {"f1_sq", r.f1_sq},
              {"gate_fidelity", r.gate_fidelity},
              {"worst_state", encode_vector(r.worst_state)},
              {"cb_lower_bound", r.cb_lower_bound}};
}

namespace {
const char* scenario_name(BoundScenario s) {
  switch (s) {
    case BoundScenario::Coherent: return "coherent";
    case BoundScenario::Number: return "number";
    case BoundScenario::Thermal: return "thermal";
    case BoundScenario::SpinEntangled: return "spin_entangled";
    case BoundScenario::SpinSeparable: return "spin_separable";
  }
  return "unknown";
}
}  // namespace

json encode_bound_report(const BoundReport& r) {
  json j{{"scenario", scenario_name(r.scenario)},
         {"parameter", r.parameter},
         {"floor", r.floor},
         {"delta_lx_sq", r.delta_lx_sq}};
  if (r.achieved_error) j["achieved_error"] = *r.achieved_error;
  return j;
}

}  // namespace qinstr
