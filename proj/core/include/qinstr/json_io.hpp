#pragma once

#include <nlohmann/json.hpp>

#include "qinstr/gate_audit.hpp"
#include "qinstr/uncertainty.hpp"

namespace qinstr {

using json = nlohmann::json;

// Canonical matrix format: {"dim": d, "entries": [[re, im], ...]} row-major.
json encode_matrix(const Matrix& m);
Matrix decode_matrix(const json& j);

json encode_vector(const Vector& v);
Vector decode_vector(const json& j);

json encode_povm(const POVM& p);
POVM decode_povm(const json& j, const NumericConfig& cfg = {});

// {"outcomes": [...], "kraus": [[matrix, ...], ...]}
json encode_instrument(const KrausInstrument& instr);
KrausInstrument decode_instrument(const json& j, const NumericConfig& cfg = {});

json encode_model(const MeasurementModel& m);
MeasurementModel decode_model(const json& j, const NumericConfig& cfg = {});

json encode_gate_implementation(const GateImplementation& impl);
GateImplementation decode_gate_implementation(const json& j, const NumericConfig& cfg = {});

json encode_chain_report(const ChainReport& r);
json encode_way_report(const WayReport& r);
json encode_noise_assessment(const NoiseAssessment& a);
json encode_fidelity_report(const FidelityReport& r);
json encode_bound_report(const BoundReport& r);

}  // namespace qinstr
