#include "nlveh/config.hpp"

#include <string>

#include "nlveh/errors.hpp"

namespace nlveh::config {
namespace {

ParamBounds bounds_from_json(const json& j, const char* key, ParamBounds fallback) {
    if (!j.contains(key)) return fallback;
    const json& b = j.at(key);
    if (!b.is_array() || b.size() != 2 || !b[0].is_number() || !b[1].is_number()) {
        throw ConfigError(std::string("bounds.") + key + " must be a [lo, hi] pair");
    }
    return {b[0].get<double>(), b[1].get<double>()};
}

template <typename T>
T integer(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number_integer()) throw ConfigError(std::string("'") + key + "' must be an integer");
    const auto v = j.at(key).get<long long>();
    if (v < 0) throw ConfigError(std::string("'") + key + "' must be non-negative");
    return static_cast<T>(v);
}


}  // namespace

double quantity(const json& j, const char* key, units::Dimension dim, std::optional<double> fallback) {
    if (!j.is_object() || !j.contains(key)) {
        if (fallback) return *fallback;
        throw ConfigError(std::string("missing required key '") + key + "'");
    }
    const json& v = j.at(key);
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return units::parse(v.get<std::string>(), dim);
    throw ConfigError(std::string("'") + key + "' must be a number or a unit string");
}

void check_schema(const json& doc) {
    if (doc.is_object() && doc.contains("schema") && doc.at("schema") != kSchema) {
        throw ConfigError("unsupported schema '" + doc.at("schema").dump() + "', expected \"" + kSchema + "\"");
    }
}

Material material_from_json(const json& j) {
    try {
        return Material(quantity(j, "E", units::Dimension::pressure));
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
}

BeamGeometry beam_from_json(const json& j) {
    using units::Dimension;
    try {
        return BeamGeometry(quantity(j, "L", Dimension::length), quantity(j, "b", Dimension::length),
                            quantity(j, "e", Dimension::length));
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
}

HShapeGeometry hshape_from_json(const json& j) {
    using units::Dimension;
    const BeamGeometry main = beam_from_json(j.contains("beam") ? j.at("beam") : j);
    try {
        return HShapeGeometry(main, quantity(j, "a", Dimension::length), quantity(j, "l1", Dimension::length),
                              quantity(j, "l3", Dimension::length));
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
}

HarvesterParams harvester_from_json(const json& j) {
    using units::Dimension;
    HarvesterParams p{};
    p.m = quantity(j, "m", Dimension::mass);
    p.f0 = quantity(j, "f0", Dimension::frequency);
    if (j.contains("xi_m")) {
        p.xi_m = quantity(j, "xi_m", Dimension::none);
    } else {
        const double q = quantity(j, "Q", Dimension::none, 100.0);
        if (!(q > 0.0)) throw ConfigError("Q must be positive");
        p.xi_m = 0.5 / q;
    }
    p.xi_e = quantity(j, "xi_e", Dimension::none, p.xi_m);
    if (j.contains("alpha")) {
        const double alpha = quantity(j, "alpha", Dimension::none);
        const double e = quantity(j, "e", Dimension::length);
        if (!(alpha >= 0.0 && alpha <= 1.0) || !(e > 0.0)) throw ConfigError("need 0 <= alpha <= 1 and e > 0");
        p.beta = alpha / (2.0 * e * e);
    } else {
        p.beta = quantity(j, "beta", Dimension::none, 0.0);
    }
    try {
        p.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    return p;
}

OptSpec opt_spec_from_json(const json& j) {
    using units::Dimension;
    OptSpec s;
    if (j.contains("mode")) {
        const std::string mode = j.at("mode").get<std::string>();
        if (mode == "linear") {
            s.mode = OptMode::linear;
        } else if (mode == "nonlinear") {
            s.mode = OptMode::nonlinear;
        } else {
            throw ConfigError("mode must be 'linear' or 'nonlinear', got '" + mode + "'");
        }
    }
    s.m = quantity(j, "m", Dimension::mass, s.m);
    s.q = quantity(j, "Q", Dimension::none, s.q);
    if (j.contains("bounds")) {
        const json& b = j.at("bounds");
        s.f0 = bounds_from_json(b, "f0", s.f0);
        s.xi_e = bounds_from_json(b, "xi_e", s.xi_e);
        s.beta = bounds_from_json(b, "beta", s.beta);
    }
    s.restarts = integer<std::size_t>(j, "restarts", s.restarts);
    s.seed = integer<std::uint64_t>(j, "seed", s.seed);
    s.max_evaluations = integer<std::size_t>(j, "max_evaluations", s.max_evaluations);
    s.diameter_tolerance = quantity(j, "diameter_tolerance", Dimension::none, s.diameter_tolerance);
    if (j.contains("spectral_anchor")) s.spectral_anchor = j.at("spectral_anchor").get<bool>();
    try {
        s.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    return s;
}

SizingSpec sizing_spec_from_json(const json& j) {
    using units::Dimension;
    const Material mat = material_from_json(j.contains("material") ? j.at("material") : j);
    SizingSpec s{quantity(j, "f0", Dimension::frequency),
                 quantity(j, "beta", Dimension::none),
                 quantity(j, "m", Dimension::mass),
                 mat,
                 quantity(j, "b", Dimension::length),
                 quantity(j, "e", Dimension::length),
                 quantity(j, "l1", Dimension::length),
                 quantity(j, "l3", Dimension::length),
                 integer<int>(j, "beam_count", 2)};
    try {
        s.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    return s;
}

CoilSpec coil_from_json(const json& j) {
    using units::Dimension;
    CoilSpec c{integer<int>(j, "N", 0), quantity(j, "l", Dimension::length),
               quantity(j, "B", Dimension::flux_density), quantity(j, "m", Dimension::mass), 0.0};
    if (j.contains("omega")) {
        c.omega = quantity(j, "omega", Dimension::none);
    } else {
        c.omega = 2.0 * 3.14159265358979323846 * quantity(j, "f", Dimension::frequency);
    }
    try {
        c.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    return c;
}

json to_json(const SpringLaw& law) {
    return {{"k0_N_per_m", law.k0()},
            {"k3_N_per_m3", law.k3()},
            {"alpha", law.alpha()},
            {"beta_per_m2", law.beta()},
            {"e_m", law.thickness()}};
}

json to_json(const HarvesterParams& p) {
    return {{"m_kg", p.m}, {"f0_Hz", p.f0}, {"xi_m", p.xi_m}, {"xi_e", p.xi_e}, {"beta_per_m2", p.beta}, {"Q", p.q()}};
}

json to_json(const OptResult& r, bool include_history) {
    json out{{"best_params", to_json(r.best_params)},
             {"best_power_W", r.best_power},
             {"best_power_uW_per_g", r.best_power_uw_per_g()},
             {"evaluations", r.evaluations},
             {"diverged_evaluations", r.diverged_evaluations},
             {"converged", r.converged}};
    if (include_history) {
        json h = json::array();
        for (const auto& e : r.history) {
            h.push_back({{"start", e.start},
                         {"f0_Hz", e.params.f0},
                         {"xi_e", e.params.xi_e},
                         {"beta_per_m2", e.params.beta},
                         {"power_W", e.power},
                         {"diverged", e.diverged}});
        }
        out["history"] = std::move(h);
    }
    return out;
}

json to_json(const SizingResult& r) {
    json out{{"L_m", r.length},
             {"a_m", r.holding_length ? json(*r.holding_length) : json(nullptr)},
             {"k0_EH_N_per_m", r.k0_eh},
             {"k0_N_per_m", r.k0},
             {"k_trac_N_per_m", r.k_trac},
             {"k_parr_N_per_m", r.k_parr},
             {"k3_N_per_m3", r.k3},
             {"alpha", r.alpha},
             {"achieved_f0_Hz", r.achieved_f0},
             {"achieved_beta_per_m2", r.achieved_beta},
             {"notes", r.notes}};
    return out;
}

json to_json(const SweepResult& r) {
    const Bandwidth bw = bandwidth_metrics(r);
    const SweepPoint& pk = r.peak();
    return {{"direction", r.direction == SweepDirection::up ? "up" : "down"},
            {"peak", {{"f_Hz", pk.f}, {"X_m", pk.amplitude}, {"P_W", pk.power}}},
            {"jump_frequency_Hz", r.jump_frequency ? json(*r.jump_frequency) : json(nullptr)},
            {"jump_ratio", r.jump_ratio},
            {"bandwidth", {{"f_low_Hz", bw.f_low}, {"f_high_Hz", bw.f_high}, {"width_Hz", bw.width}}}};
}

json to_json(const ComparisonReport& r) {
    return {{"source", r.label},
            {"linear", to_json(r.linear)},
            {"nonlinear", to_json(r.nonlinear)},
            {"improvement_percent", r.improvement_percent}};
}

}  // namespace nlveh::config
