#include "conicliff/report.hpp"

namespace conicliff {

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Error: return "error";
    }
    return "error";
}

void Report::info(std::string kind, std::string message, nlohmann::json data) {
    findings_.push_back({std::move(kind), std::move(message), std::move(data)});
}

void Report::fail(std::string kind, std::string message, nlohmann::json data) {
    findings_.push_back({std::move(kind), std::move(message), std::move(data)});
    if (verdict_ == Verdict::Pass) verdict_ = Verdict::Fail;
}

void Report::error(std::string kind, std::string message, nlohmann::json data) {
    findings_.push_back({std::move(kind), std::move(message), std::move(data)});
    verdict_ = Verdict::Error;
}

void Report::merge(const Report& sub) {
    for (const auto& f : sub.findings_)
        findings_.push_back({sub.check_ + "/" + f.kind, f.message, f.data});
    if (sub.verdict_ == Verdict::Error)
        verdict_ = Verdict::Error;
    else if (sub.verdict_ == Verdict::Fail && verdict_ == Verdict::Pass)
        verdict_ = Verdict::Fail;
    for (auto it = sub.constants_.begin(); it != sub.constants_.end(); ++it)
        constants_[it.key()] = it.value();
}

nlohmann::json Report::to_json() const {
    nlohmann::json fs = nlohmann::json::array();
    for (const auto& f : findings_) {
        nlohmann::json j{{"kind", f.kind}, {"message", f.message}};
        if (!f.data.is_null()) j["data"] = f.data;
        fs.push_back(std::move(j));
    }
    return nlohmann::json{{"check", check_},
                          {"verdict", verdict_name(verdict_)},
                          {"findings", std::move(fs)},
                          {"constants", constants_}};
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

}  // namespace conicliff
