// File formats and report envelopes.
//
// Form/instance file (JSON): {"base_dim": n, "field": "Q"|"Fp:<p>",
// "a": [a1,a2,a3], "l": l, "M": [six upper-triangular entry strings in the
// shared grammar, order 11,12,13,22,23,33]} plus optional "tag" and "seed"
// for builder instances.
//
// Algebra dump (JSON): basis labels, summand degrees, and the 4x4 structure
// table as polynomial strings; produced by cliff-dump, consumed by
// reconstruct and pointwise-check.
//
// Reports are wrapped in an envelope whose body (everything except timing)
// is canonically serialized; identical inputs give byte-identical bodies.
#pragma once

#include <optional>

#include "conicliff/conicgeom.hpp"
#include "conicliff/reconstruct.hpp"

namespace conicliff {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LoadedForm {
    TwistedQuadraticForm form;
    std::optional<InstanceTag> tag;
    std::optional<std::uint64_t> seed;
};

nlohmann::json form_to_json(const TwistedQuadraticForm& q,
                            std::optional<InstanceTag> tag = std::nullopt,
                            std::optional<std::uint64_t> seed = std::nullopt);
LoadedForm parse_form_json(const nlohmann::json& j);
LoadedForm read_form_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

nlohmann::json algebra_to_json(const EvenCliffordAlgebra& a);
AlgebraWithSplitting parse_algebra_json(const nlohmann::json& j);
AlgebraWithSplitting read_algebra_file(const std::string& path);

// Deterministic serialization: sorted keys, no whitespace.
std::string canonical_dump(const nlohmann::json& j);

// Envelope body carries schema_version, command, input digest, verdict,
// findings and constants; body_digest is FNV-1a over the canonical body and
// timing_ms sits outside the digest.
nlohmann::json wrap_report(const Report& rep, const std::string& command,
                           const std::string& input_digest, double timing_ms);

// Human-readable rendering of an envelope (the --pretty view).
std::string render_pretty(const nlohmann::json& envelope);

inline constexpr int kSchemaVersion = 1;

}  // namespace conicliff
