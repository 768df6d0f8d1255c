#include "conicliff/io.hpp"

#include <fstream>
#include <sstream>

namespace conicliff {

namespace {

constexpr std::pair<std::size_t, std::size_t> kUpperSlots[6] = {
    {0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("bad JSON in " + path + ": " + e.what());
    }
    return j;
}

}  // namespace

nlohmann::json form_to_json(const TwistedQuadraticForm& q, std::optional<InstanceTag> tag,
                            std::optional<std::uint64_t> seed) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["base_dim"] = q.twist().base_dim;
    j["field"] = q.field().name();
    j["a"] = q.twist().a;
    j["l"] = q.twist().l;
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [i, k] : kUpperSlots) entries.push_back(q.matrix().at(i, k).to_string());
    j["M"] = std::move(entries);
    if (tag) j["tag"] = instance_tag_name(*tag);
    if (seed) j["seed"] = *seed;
    return j;
}

LoadedForm parse_form_json(const nlohmann::json& j) {
    try {
        SplitTwist twist;
        twist.base_dim = j.at("base_dim").get<std::uint32_t>();
        const Field field = Field::parse(j.at("field").get<std::string>());
        const auto a = j.at("a");
        if (!a.is_array() || a.size() != 3) throw IoError("\"a\" must be a 3-array");
        for (int i = 0; i < 3; ++i) twist.a[i] = a[i].get<int>();
        twist.l = j.at("l").get<int>();
        const auto entries = j.at("M");
        if (!entries.is_array() || entries.size() != 6)
            throw IoError("\"M\" must list the six upper-triangular entries");
        PolyMatrix m(3, 3, field, twist.nvars());
        for (std::size_t s = 0; s < 6; ++s) {
            HomogeneousPoly e =
                parse_poly(entries[s].get<std::string>(), field, twist.nvars());
            m.at(kUpperSlots[s].first, kUpperSlots[s].second) = e;
            m.at(kUpperSlots[s].second, kUpperSlots[s].first) = e;
        }
        LoadedForm out{TwistedQuadraticForm::make(twist, std::move(m)), std::nullopt,
                       std::nullopt};
        if (j.contains("tag")) out.tag = parse_instance_tag(j.at("tag").get<std::string>());
        if (j.contains("seed")) out.seed = j.at("seed").get<std::uint64_t>();
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("bad form file: ") + e.what());
    } catch (const PolyError& e) {
        throw IoError(std::string("bad form file: ") + e.what());
    } catch (const FieldError& e) {
        throw IoError(std::string("bad form file: ") + e.what());
    }
}

LoadedForm read_form_file(const std::string& path) {
    return parse_form_json(load_json(path));
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << j.dump(2) << "\n";
}

nlohmann::json algebra_to_json(const EvenCliffordAlgebra& a) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "even_clifford_algebra";
    j["field"] = a.field.name();
    j["base_dim"] = a.twist.base_dim;
    j["basis"] = kEvenBasisLabels;
    j["summand_degrees"] = a.summand_degrees;
    nlohmann::json table = nlohmann::json::array();
    for (std::size_t i = 0; i < 4; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t k = 0; k < 4; ++k) {
            nlohmann::json comps = nlohmann::json::array();
            for (std::size_t c = 0; c < 4; ++c) comps.push_back(a.product[i][k][c].to_string());
            row.push_back(std::move(comps));
        }
        table.push_back(std::move(row));
    }
    j["table"] = std::move(table);
    j["twist"] = {{"a", a.twist.a}, {"l", a.twist.l}};
    return j;
}

AlgebraWithSplitting parse_algebra_json(const nlohmann::json& j) {
    try {
        AlgebraWithSplitting r{Field::parse(j.at("field").get<std::string>()),
                               j.at("base_dim").get<std::uint32_t>() + 1,
                               {},
                               {},
                               std::nullopt};
        const auto degs = j.at("summand_degrees");
        if (!degs.is_array() || degs.size() != 4)
            throw IoError("\"summand_degrees\" must be a 4-array");
        for (int i = 0; i < 4; ++i) r.summand_degrees[i] = degs[i].get<int>();
        const auto table = j.at("table");
        if (!table.is_array() || table.size() != 4)
            throw IoError("\"table\" must be a 4x4 array of 4-component products");
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t k = 0; k < 4; ++k) {
                const auto comps = table[i][k];
                if (!comps.is_array() || comps.size() != 4)
                    throw IoError("table entries must have 4 components");
                for (std::size_t c = 0; c < 4; ++c)
                    r.product[i][k][c] =
                        parse_poly(comps[c].get<std::string>(), r.field, r.nvars);
            }
        if (j.contains("twist")) {
            SplitTwist t;
            t.base_dim = r.nvars - 1;
            for (int i = 0; i < 3; ++i) t.a[i] = j["twist"]["a"][i].get<int>();
            t.l = j["twist"]["l"].get<int>();
            r.source_twist = t;
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("bad algebra dump: ") + e.what());
    } catch (const PolyError& e) {
        throw IoError(std::string("bad algebra dump: ") + e.what());
    } catch (const FieldError& e) {
        throw IoError(std::string("bad algebra dump: ") + e.what());
    }
}

AlgebraWithSplitting read_algebra_file(const std::string& path) {
    return parse_algebra_json(load_json(path));
}

std::string canonical_dump(const nlohmann::json& j) {
    // nlohmann objects iterate in sorted key order; compact dump is canonical.
    return j.dump();
}

nlohmann::json wrap_report(const Report& rep, const std::string& command,
                           const std::string& input_digest, double timing_ms) {
    nlohmann::json body = rep.to_json();
    body.erase("check");
    body["schema_version"] = kSchemaVersion;
    body["command"] = command;
    body["input_digest"] = input_digest;
    nlohmann::json envelope = body;
    envelope["body_digest"] = fnv1a_hex(canonical_dump(body));
    envelope["timing_ms"] = timing_ms;
    return envelope;
}

std::string render_pretty(const nlohmann::json& envelope) {
    std::ostringstream os;
    os << "command : " << envelope.value("command", "?") << "\n"
       << "verdict : " << envelope.value("verdict", "?") << "\n"
       << "digest  : " << envelope.value("body_digest", "?") << "\n";
    if (envelope.contains("constants") && !envelope["constants"].empty())
        os << "constants: " << envelope["constants"].dump() << "\n";
    if (envelope.contains("findings")) {
        for (const auto& f : envelope["findings"]) {
            os << "  [" << f.value("kind", "?") << "] " << f.value("message", "") << "\n";
            if (f.contains("data")) os << "      " << f["data"].dump() << "\n";
        }
    }
    os << "timing  : " << envelope.value("timing_ms", 0.0) << " ms\n";
    return os.str();
}

}  // namespace conicliff
