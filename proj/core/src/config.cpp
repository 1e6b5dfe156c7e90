#include "netcrypt/config.hpp"

#include <fstream>
#include <sstream>

namespace netcrypt {

namespace {

using nlohmann::json;

mpq_class decimal_to_rational(const std::string& s) {
    auto dot = s.find('.');
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    if (digits.empty() || digits == "-" || digits == "+")
        throw ConfigError("bad rational literal: " + s);
    mpq_class q;
    try {
        q = mpq_class(mpz_class(digits), mpz_class(1));
    } catch (const std::invalid_argument&) {
        throw ConfigError("bad rational literal: " + s);
    }
    mpz_class den = 1;
    for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    q /= den;
    q.canonicalize();
    return q;
}

RMat matrix_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.empty() || !j[0].is_array())
        throw ConfigError(std::string(what) + ": expected an array of rows");
    RMat m(j.size(), j[0].size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_array() || j[i].size() != m.cols())
            throw ConfigError(std::string(what) + ": ragged rows");
        for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = rational_from_json(j[i][k]);
    }
    return m;
}

json matrix_to_json(const RMat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(rational_to_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

RVec vector_from_json(const json& j, const char* what) {
    if (!j.is_array()) throw ConfigError(std::string(what) + ": expected an array");
    RVec v;
    for (const auto& e : j) v.push_back(rational_from_json(e));
    return v;
}

json vector_to_json(const RVec& v) {
    json a = json::array();
    for (const auto& q : v) a.push_back(rational_to_json(q));
    return a;
}

std::vector<unsigned> dims_from_json(const json& j, const char* what) {
    if (!j.is_array()) throw ConfigError(std::string(what) + ": expected an array");
    std::vector<unsigned> v;
    for (const auto& e : j) {
        if (!e.is_number_unsigned()) throw ConfigError(std::string(what) + ": expected unsigned");
        v.push_back(e.get<unsigned>());
    }
    return v;
}

const json& need(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ConfigError(std::string("missing config key: ") + key);
    return *it;
}

}  // namespace

mpq_class rational_from_json(const json& j) {
    if (j.is_number_integer()) return mpq_class(mpz_class(std::to_string(j.get<long long>())));
    if (!j.is_string()) throw ConfigError("rationals must be strings or integers: " + j.dump());
    std::string s = j.get<std::string>();
    if (s.find('.') != std::string::npos) return decimal_to_rational(s);
    mpq_class q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0)
        throw ConfigError("bad rational literal: " + s);
    q.canonicalize();
    return q;
}

json rational_to_json(const mpq_class& q) { return q.get_str(); }

RunConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("config root must be an object");
    RunConfig c;

    const json& jp = need(j, "plant");
    c.plant.A = matrix_from_json(need(jp, "A"), "plant.A");
    c.plant.B = matrix_from_json(need(jp, "B"), "plant.B");
    c.plant.C = matrix_from_json(need(jp, "C"), "plant.C");
    c.plant.gamma1 = rational_from_json(need(jp, "gamma1"));
    c.plant.gamma2 = rational_from_json(need(jp, "gamma2"));
    c.plant.state_dims = dims_from_json(need(jp, "state_dims"), "plant.state_dims");
    c.plant.input_dims = dims_from_json(need(jp, "input_dims"), "plant.input_dims");
    c.plant.output_dims = dims_from_json(need(jp, "output_dims"), "plant.output_dims");

    const json& jg = need(j, "gains");
    c.gains.phi = matrix_from_json(need(jg, "phi"), "gains.phi");
    c.gains.varphi = matrix_from_json(need(jg, "varphi"), "gains.varphi");
    c.gains.varphi_o = matrix_from_json(need(jg, "varphi_o"), "gains.varphi_o");
    c.gains.gamma1 = jg.contains("gamma1") ? rational_from_json(jg["gamma1"]) : c.plant.gamma1;
    c.gains.gamma2 = jg.contains("gamma2") ? rational_from_json(jg["gamma2"]) : c.plant.gamma2;

    const json& jq = need(j, "grid");
    c.grid.n = need(jq, "n").get<unsigned>();
    c.grid.m = need(jq, "m").get<unsigned>();

    c.paillier_bits = j.value("paillier_bits", 64u);
    c.rsa_bits = j.value("rsa_bits", 256u);
    c.x0 = vector_from_json(need(j, "x0"), "x0");
    c.zeta0 = vector_from_json(need(j, "zeta0"), "zeta0");
    c.horizon = j.value("horizon", 51u);
    c.seed = j.value("seed", std::uint64_t{1});

    if (j.contains("flags")) {
        const json& jf = j["flags"];
        c.flags.shadow = jf.value("shadow", c.flags.shadow);
        c.flags.abort_on_mismatch = jf.value("abort_on_mismatch", c.flags.abort_on_mismatch);
        c.flags.rerandomize = jf.value("rerandomize", c.flags.rerandomize);
        c.flags.record_timings = jf.value("record_timings", c.flags.record_timings);
        c.flags.trace_ciphertexts = jf.value("trace_ciphertexts", c.flags.trace_ciphertexts);
    }

    try {
        c.plant.validate();
        c.gains.validate();
        c.grid.validate();
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    return c;
}

json config_to_json(const RunConfig& c) {
    json j;
    j["plant"] = {{"A", matrix_to_json(c.plant.A)},
                  {"B", matrix_to_json(c.plant.B)},
                  {"C", matrix_to_json(c.plant.C)},
                  {"gamma1", rational_to_json(c.plant.gamma1)},
                  {"gamma2", rational_to_json(c.plant.gamma2)},
                  {"state_dims", c.plant.state_dims},
                  {"input_dims", c.plant.input_dims},
                  {"output_dims", c.plant.output_dims}};
    j["gains"] = {{"phi", matrix_to_json(c.gains.phi)},
                  {"varphi", matrix_to_json(c.gains.varphi)},
                  {"varphi_o", matrix_to_json(c.gains.varphi_o)},
                  {"gamma1", rational_to_json(c.gains.gamma1)},
                  {"gamma2", rational_to_json(c.gains.gamma2)}};
    j["grid"] = {{"n", c.grid.n}, {"m", c.grid.m}};
    j["paillier_bits"] = c.paillier_bits;
    j["rsa_bits"] = c.rsa_bits;
    j["x0"] = vector_to_json(c.x0);
    j["zeta0"] = vector_to_json(c.zeta0);
    j["horizon"] = c.horizon;
    j["seed"] = c.seed;
    j["flags"] = {{"shadow", c.flags.shadow},
                  {"abort_on_mismatch", c.flags.abort_on_mismatch},
                  {"rerandomize", c.flags.rerandomize},
                  {"record_timings", c.flags.record_timings},
                  {"trace_ciphertexts", c.flags.trace_ciphertexts}};
    return j;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("bad JSON in " + path + ": " + e.what());
    }
    return config_from_json(j);
}

void save_config_file(const RunConfig& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write config file: " + path);
    out << config_to_json(c).dump(2) << '\n';
}

void apply_override(json& j, const std::string& kv) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("override must look like path.to.key=value: " + kv);
    std::string path = kv.substr(0, eq);
    std::string value = kv.substr(eq + 1);

    json* node = &j;
    std::stringstream ps(path);
    std::string part, prev;
    bool first = true;
    while (std::getline(ps, part, '.')) {
        if (part.empty()) throw ConfigError("bad override path: " + path);
        if (!first) node = &(*node)[prev];
        prev = part;
        first = false;
    }

    json parsed = json::parse(value, nullptr, false);
    // Unquoted words (e.g. a bare fraction "1/10") fall back to strings.
    (*node)[prev] = parsed.is_discarded() ? json(value) : parsed;
}

}  // namespace netcrypt
