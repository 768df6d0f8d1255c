// Machine-readable verdicts shared by every verification operation. The CLI
// wraps these in an envelope with schema version, input digest and timing;
// the digest covers only the deterministic body.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace conicliff {

enum class Verdict { Pass, Fail, Error };

std::string verdict_name(Verdict v);

struct Finding {
    std::string kind;        // stable machine tag, e.g. "degree-pattern"
    std::string message;     // human-readable one-liner
    nlohmann::json data;     // structured payload (witness points, matrices, ...)
};

class Report {
public:
    explicit Report(std::string check) : check_(std::move(check)) {}

    const std::string& check() const { return check_; }
    Verdict verdict() const { return verdict_; }
    bool passed() const { return verdict_ == Verdict::Pass; }
    const std::vector<Finding>& findings() const { return findings_; }
    nlohmann::json& constants() { return constants_; }
    const nlohmann::json& constants() const { return constants_; }

    // info does not affect the verdict; fail/error escalate it (error wins).
    void info(std::string kind, std::string message, nlohmann::json data = {});
    void fail(std::string kind, std::string message, nlohmann::json data = {});
    void error(std::string kind, std::string message, nlohmann::json data = {});
    void merge(const Report& sub);   // absorbs findings, escalates verdict

    nlohmann::json to_json() const;

private:
    std::string check_;
    Verdict verdict_ = Verdict::Pass;
    std::vector<Finding> findings_;
    nlohmann::json constants_ = nlohmann::json::object();
};

// FNV-1a 64-bit over a byte string, rendered as 16 hex digits. Used for the
// deterministic report digests; stability matters, cryptography does not.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace conicliff
