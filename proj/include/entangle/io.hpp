#pragma once

// JSON serialization: classification reports, theorem checks, and the state
// and channel file formats.

#include <string>
#include <variant>

#include <json.hpp>

#include "entangle/channels.hpp"
#include "entangle/cmoe.hpp"
#include "entangle/criteria.hpp"

namespace entangle::io {

inline constexpr const char* kReportSchema = "entangle-hierarchy/report/v1";

nlohmann::json to_json(const Verdict& v);
nlohmann::json to_json(const Spectrum& s);
nlohmann::json to_json(const ClassificationReport& r);
nlohmann::json to_json(const TheoremCheck& c);
nlohmann::json to_json(const ChannelClassification& c);

/// {"dims", "kind": "density"|"pure", "re", "im"}, row-major.
nlohmann::json state_to_json(const QuantumState& rho);
nlohmann::json state_to_json(const PureVector& psi);
/// {"d_a", "d_b", "d_c", "re", "im"}, row-major (d_b d_c) x d_a.
nlohmann::json channel_to_json(const ChannelIsometry& v);

using LoadedState = std::variant<QuantumState, PureVector>;

/// Parses a state file. "kind" defaults to "density" when the array length is
/// the squared dimension and "pure" when it equals the dimension. A missing
/// "im" array means all imaginary parts are zero. Throws InvariantError or
/// UsageError on malformed input.
LoadedState parse_state(const nlohmann::json& j, const Tolerances& tol = {});
LoadedState load_state_file(const std::string& path, const Tolerances& tol = {});

ChannelIsometry parse_channel(const nlohmann::json& j, const Tolerances& tol = {});
ChannelIsometry load_channel_file(const std::string& path, const Tolerances& tol = {});

}  // namespace entangle::io
