#include "nbarrier/json_io.hpp"

#include <set>
#include <sstream>

#include "nbarrier/errors.hpp"
#include "nbarrier/format.hpp"

namespace nbarrier {

namespace {

// Pull every expected key out of `doc`, complaining about unknown keys,
// missing required keys, and non-numeric values.
class StrictReader {
public:
    explicit StrictReader(const json& doc) : doc_(doc) {
        if (!doc.is_object()) {
            throw ConfigError("configuration must be a JSON object");
        }
    }

    double required(const char* key) {
        seen_.insert(key);
        auto it = doc_.find(key);
        if (it == doc_.end()) {
            throw ConfigError(std::string("missing required key '") + key + "'");
        }
        return as_number(key, *it);
    }

    std::optional<double> optional(const char* key) {
        seen_.insert(key);
        auto it = doc_.find(key);
        if (it == doc_.end()) return std::nullopt;
        return as_number(key, *it);
    }

    void finish() const {
        for (const auto& item : doc_.items()) {
            if (!seen_.count(item.key())) {
                throw ConfigError("unknown key '" + item.key() + "'");
            }
        }
    }

private:
    static double as_number(const char* key, const json& value) {
        if (!value.is_number()) {
            throw ConfigError(std::string("key '") + key + "' must be a number");
        }
        return value.get<double>();
    }

    const json& doc_;
    std::set<std::string> seen_;
};

} // namespace

ConfigKind detect_config(const json& doc) {
    if (!doc.is_object()) {
        throw ConfigError("configuration must be a JSON object");
    }
    if (doc.contains("a1")) return ConfigKind::SCALED;
    if (doc.contains("c33")) return ConfigKind::THREE_SPECIES;
    return ConfigKind::UNSCALED;
}

ScaledConfig parse_scaled_config(const json& doc) {
    StrictReader r(doc);
    ScaledConfig cfg;
    cfg.params.a1 = r.required("a1");
    cfg.params.a2 = r.required("a2");
    cfg.params.d = r.required("d");
    cfg.params.k = r.optional("k").value_or(1.0);
    cfg.weights.alpha = r.optional("alpha").value_or(1.0);
    cfg.weights.beta = r.optional("beta").value_or(1.0);
    cfg.theta = r.optional("theta");
    r.finish();
    return cfg;
}

UnscaledConfig parse_unscaled_config(const json& doc) {
    StrictReader r(doc);
    UnscaledConfig cfg;
    cfg.params.d1 = r.required("d1");
    cfg.params.d2 = r.required("d2");
    cfg.params.sigma1 = r.required("sigma1");
    cfg.params.sigma2 = r.required("sigma2");
    cfg.params.c11 = r.required("c11");
    cfg.params.c12 = r.required("c12");
    cfg.params.c21 = r.required("c21");
    cfg.params.c22 = r.required("c22");
    cfg.weights.alpha = r.optional("alpha").value_or(1.0);
    cfg.weights.beta = r.optional("beta").value_or(1.0);
    r.finish();
    return cfg;
}

ThreeSpeciesParams parse_three_config(const json& doc) {
    StrictReader r(doc);
    ThreeSpeciesParams p{};
    p.d1 = r.required("d1");
    p.d2 = r.required("d2");
    p.d3 = r.required("d3");
    p.sigma1 = r.required("sigma1");
    p.sigma2 = r.required("sigma2");
    p.sigma3 = r.required("sigma3");
    p.c11 = r.required("c11");
    p.c12 = r.required("c12");
    p.c13 = r.required("c13");
    p.c21 = r.required("c21");
    p.c22 = r.required("c22");
    p.c23 = r.required("c23");
    p.c31 = r.required("c31");
    p.c32 = r.required("c32");
    p.c33 = r.required("c33");
    r.finish();
    return p;
}

json to_json(const BoundPair& b) {
    return json{{"quantity", b.quantity}, {"lower", b.lower}, {"upper", b.upper}};
}

json to_json(const Barrier& b) {
    return json{
        {"direction", to_string(b.direction)},
        {"case_tag", to_string(b.case_tag)},
        {"lambda1", b.lambda1},
        {"lambda2", b.lambda2},
        {"eta", b.eta},
        {"alpha", b.weights.alpha},
        {"beta", b.weights.beta},
    };
}

json to_json(const TangentSolution& t) {
    return json{
        {"lambda2", t.lambda2},
        {"tangency", json{{"u", t.u_t}, {"v", t.v_t}}},
        {"mu0", t.mu0},
        {"mu1", t.mu1},
        {"mu2", t.mu2},
        {"disc", t.disc},
        {"lambda1", t.lambda1},
        {"eta", t.eta},
        {"d_window", json{{"min", t.d_window[0]}, {"max", t.d_window[1]}}},
        {"rejected",
         json{{"lambda2", t.lambda2_rejected}, {"u", t.u_rejected}, {"v", t.v_rejected}}},
    };
}

json to_json(const ThreeSpeciesVerdict& v) {
    return json{
        {"phi1", v.phi1},
        {"phi2", v.phi2},
        {"h1", v.h1},
        {"h2", v.h2},
        {"h3", v.h3},
        {"h3_lhs", v.h3_lhs},
        {"h3_rhs", v.h3_rhs},
        {"margins", json{{"h1", v.margins.h1}, {"h2", v.margins.h2}, {"h3", v.margins.h3}}},
        {"verdict", to_string(v.verdict)},
    };
}

json to_json(const VerificationReport& r) {
    json checks = json::array();
    for (const BoundCheck& c : r.checks) {
        checks.push_back(json{
            {"name", c.name},
            {"type", c.is_lower ? "lower" : "upper"},
            {"bound", c.bound},
            {"observed", c.observed},
            {"margin", c.margin},
            {"pass", c.pass},
        });
    }
    return json{
        {"quantity", r.quantity},
        {"min_q", r.min_q},
        {"max_q", r.max_q},
        {"slack", r.slack},
        {"h", r.h},
        {"bc_ok", r.bc_ok},
        {"bc_error", r.bc_error},
        {"tangent_applicable", r.tangent_applicable},
        {"checks", checks},
        {"all_pass", r.all_pass},
        {"note", r.note},
    };
}

json profile_sidecar(const WaveProfile& profile, double L, int N,
                     const std::string& config_hash) {
    return json{
        {"theta", profile.theta},
        {"residual", profile.meta.residual},
        {"iterations", profile.meta.iterations},
        {"method", profile.meta.method},
        {"eps_bc", profile.meta.eps_bc},
        {"L", L},
        {"N", N},
        {"config_hash", config_hash},
    };
}

std::string profile_csv(const WaveProfile& profile) {
    std::string out = "x,u,v\n";
    for (size_t i = 0; i < profile.grid.size(); ++i) {
        out += format_double(profile.grid[i]);
        out += ',';
        out += format_double(profile.u[i]);
        out += ',';
        out += format_double(profile.v[i]);
        out += '\n';
    }
    return out;
}

WaveProfile parse_profile_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "x,u,v") {
        throw ConfigError("profile CSV must start with header 'x,u,v'");
    }
    WaveProfile prof;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        double vals[3];
        for (int j = 0; j < 3; ++j) {
            if (!std::getline(row, cell, ',')) {
                throw ConfigError("profile CSV row " + std::to_string(lineno) +
                                  " has fewer than 3 columns");
            }
            try {
                vals[j] = std::stod(cell);
            } catch (const std::exception&) {
                throw ConfigError("profile CSV row " + std::to_string(lineno) +
                                  " has a non-numeric cell '" + cell + "'");
            }
        }
        prof.grid.push_back(vals[0]);
        prof.u.push_back(vals[1]);
        prof.v.push_back(vals[2]);
    }
    if (prof.grid.size() < 2) {
        throw ConfigError("profile CSV contains fewer than 2 rows");
    }
    return prof;
}

std::string sweep_csv(const std::vector<double>& values,
                      const std::vector<ThreeSpeciesVerdict>& verdicts) {
    std::string out = "value,phi1,phi2,h1,h2,h3,margin_h1,margin_h2,margin_h3,verdict\n";
    for (size_t i = 0; i < verdicts.size(); ++i) {
        const ThreeSpeciesVerdict& v = verdicts[i];
        out += format_double(values[i]);
        out += ',' + format_double(v.phi1);
        out += ',' + format_double(v.phi2);
        out += v.h1 ? ",true" : ",false";
        out += v.h2 ? ",true" : ",false";
        out += v.h3 ? ",true" : ",false";
        out += ',' + format_double(v.margins.h1);
        out += ',' + format_double(v.margins.h2);
        out += ',' + format_double(v.margins.h3);
        out += ',';
        out += to_string(v.verdict);
        out += '\n';
    }
    return out;
}

} // namespace nbarrier
