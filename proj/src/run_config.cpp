#include "nsbound/run_config.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace nsbound {

std::string to_string(Injection inj) {
    switch (inj) {
        case Injection::none: return "none";
        case Injection::energy_bump: return "energy_bump";
        case Injection::trilinear_flip: return "trilinear_flip";
    }
    return "unknown";
}

bool RunConfig::operator==(const RunConfig& o) const { return serialize_config(*this) == serialize_config(o); }

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& v, int line) {
    std::size_t used = 0;
    double out = 0.0;
    try {
        out = std::stod(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != v.size()) throw ConfigError("expected a number, got '" + v + "'", line);
    return out;
}

long long parse_int(const std::string& v, int line) {
    std::size_t used = 0;
    long long out = 0;
    try {
        out = std::stoll(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != v.size()) throw ConfigError("expected an integer, got '" + v + "'", line);
    return out;
}

bool parse_bool(const std::string& v, int line) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("expected a boolean, got '" + v + "'", line);
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

using Setter = std::function<void(RunConfig&, const std::string&, int)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"n", [](RunConfig& c, const std::string& v, int l) { c.sim.n = static_cast<int>(parse_int(v, l)); }},
        {"box_length", [](RunConfig& c, const std::string& v, int l) { c.sim.box_length = parse_double(v, l); }},
        {"horizon", [](RunConfig& c, const std::string& v, int l) { c.sim.horizon = parse_double(v, l); }},
        {"initial_data",
         [](RunConfig& c, const std::string& v, int l) {
             try {
                 c.sim.kind = parse_initial_kind(v);
             } catch (const std::invalid_argument& e) {
                 throw ConfigError(e.what(), l);
             }
         }},
        {"seed",
         [](RunConfig& c, const std::string& v, int l) {
             const long long s = parse_int(v, l);
             if (s < 0) throw ConfigError("seed must be nonnegative", l);
             c.sim.seed = static_cast<std::uint64_t>(s);
         }},
        {"delta", [](RunConfig& c, const std::string& v, int l) { c.sim.delta = parse_double(v, l); }},
        {"k_max", [](RunConfig& c, const std::string& v, int l) { c.sim.k_max = parse_double(v, l); }},
        {"c_cfl", [](RunConfig& c, const std::string& v, int l) { c.sim.c_cfl = parse_double(v, l); }},
        {"alpha", [](RunConfig& c, const std::string& v, int l) { c.sim.alpha = parse_double(v, l); }},
        {"t_min", [](RunConfig& c, const std::string& v, int l) { c.sim.t_min = parse_double(v, l); }},
        {"output_stride",
         [](RunConfig& c, const std::string& v, int l) { c.sim.output_stride = static_cast<int>(parse_int(v, l)); }},
        {"dtau_max", [](RunConfig& c, const std::string& v, int l) { c.sim.dtau_max = parse_double(v, l); }},
        {"sharpness", [](RunConfig& c, const std::string& v, int l) { c.sim.sharpness = parse_double(v, l); }},
        {"linear_only", [](RunConfig& c, const std::string& v, int l) { c.sim.linear_only = parse_bool(v, l); }},
        {"epsilon", [](RunConfig& c, const std::string& v, int l) { c.epsilon = parse_double(v, l); }},
        {"burn_in", [](RunConfig& c, const std::string& v, int l) { c.burn_in = parse_double(v, l); }},
        {"decay_reference",
         [](RunConfig& c, const std::string& v, int l) {
             if (v == "none") c.decay_reference.reset();
             else c.decay_reference = parse_double(v, l);
         }},
        {"check_l2", [](RunConfig& c, const std::string& v, int l) { c.check_l2 = parse_bool(v, l); }},
        {"check_h1", [](RunConfig& c, const std::string& v, int l) { c.check_h1 = parse_bool(v, l); }},
        {"check_h2", [](RunConfig& c, const std::string& v, int l) { c.check_h2 = parse_bool(v, l); }},
        {"check_decay", [](RunConfig& c, const std::string& v, int l) { c.check_decay = parse_bool(v, l); }},
        {"check_blowup", [](RunConfig& c, const std::string& v, int l) { c.check_blowup = parse_bool(v, l); }},
        {"check_routes", [](RunConfig& c, const std::string& v, int l) { c.check_routes = parse_bool(v, l); }},
        {"out_dir", [](RunConfig& c, const std::string& v, int) { c.out_dir = v; }},
        {"strict", [](RunConfig& c, const std::string& v, int l) { c.strict = parse_bool(v, l); }},
        {"sweep_alpha",
         [](RunConfig& c, const std::string& v, int l) {
             c.sweep_alpha.clear();
             for (const auto& x : split_list(v)) c.sweep_alpha.push_back(parse_double(x, l));
         }},
        {"sweep_delta",
         [](RunConfig& c, const std::string& v, int l) {
             c.sweep_delta.clear();
             for (const auto& x : split_list(v)) c.sweep_delta.push_back(parse_double(x, l));
         }},
        {"sweep_n",
         [](RunConfig& c, const std::string& v, int l) {
             c.sweep_n.clear();
             for (const auto& x : split_list(v)) c.sweep_n.push_back(static_cast<int>(parse_int(x, l)));
         }},
        {"inject",
         [](RunConfig& c, const std::string& v, int l) {
             if (v == "none") c.inject = Injection::none;
             else if (v == "energy_bump") c.inject = Injection::energy_bump;
             else if (v == "trilinear_flip") c.inject = Injection::trilinear_flip;
             else throw ConfigError("unknown injection '" + v + "'", l);
         }},
    };
    return table;
}

}  // namespace

void validate_config(const RunConfig& c) {
    try {
        c.sim.validate();
        for (double a : c.sweep_alpha) validate_alpha(a);
        for (double d : c.sweep_delta) {
            if (!(d >= 0.0)) throw std::invalid_argument("sweep_delta entries must be nonnegative");
        }
        for (int n : c.sweep_n) {
            if (n < 8 || n % 2 != 0) throw std::invalid_argument("sweep_n entries must be even and >= 8");
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what(), 0);
    }
    if (!(c.epsilon >= 0.0)) throw ConfigError("epsilon must be nonnegative", 0);
    if (!(c.burn_in >= 0.0)) throw ConfigError("burn_in must be nonnegative", 0);
    if (c.decay_reference && !(*c.decay_reference >= 0.0)) throw ConfigError("decay_reference must be nonnegative", 0);
    if (c.out_dir.empty()) throw ConfigError("out_dir must not be empty", 0);
}

RunConfig parse_config(const std::string& text) {
    RunConfig c;
    std::set<std::string> seen;
    std::stringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        if (key.empty()) throw ConfigError("missing key", line);
        if (value.empty()) throw ConfigError("missing value for '" + key + "'", line);
        const auto it = setters().find(key);
        if (it == setters().end()) throw ConfigError("unknown key '" + key + "'", line);
        if (!seen.insert(key).second) throw ConfigError("duplicate key '" + key + "'", line);
        it->second(c, value, line);
    }
    validate_config(c);
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open config " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
    std::ostringstream o;
    auto list = [](const auto& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ",";
            if constexpr (std::is_same_v<std::decay_t<decltype(v[i])>, int>) s += std::to_string(v[i]);
            else s += fmt(v[i]);
        }
        return s;
    };
    auto b = [](bool x) { return x ? "true" : "false"; };
    o << "n = " << c.sim.n << '\n'
      << "box_length = " << fmt(c.sim.box_length) << '\n'
      << "horizon = " << fmt(c.sim.horizon) << '\n'
      << "initial_data = " << to_string(c.sim.kind) << '\n'
      << "seed = " << c.sim.seed << '\n'
      << "delta = " << fmt(c.sim.delta) << '\n'
      << "k_max = " << fmt(c.sim.k_max) << '\n'
      << "c_cfl = " << fmt(c.sim.c_cfl) << '\n'
      << "alpha = " << fmt(c.sim.alpha) << '\n'
      << "t_min = " << fmt(c.sim.t_min) << '\n'
      << "output_stride = " << c.sim.output_stride << '\n'
      << "dtau_max = " << fmt(c.sim.dtau_max) << '\n'
      << "sharpness = " << fmt(c.sim.sharpness) << '\n'
      << "linear_only = " << b(c.sim.linear_only) << '\n'
      << "epsilon = " << fmt(c.epsilon) << '\n'
      << "burn_in = " << fmt(c.burn_in) << '\n'
      << "decay_reference = " << (c.decay_reference ? fmt(*c.decay_reference) : std::string("none")) << '\n'
      << "check_l2 = " << b(c.check_l2) << '\n'
      << "check_h1 = " << b(c.check_h1) << '\n'
      << "check_h2 = " << b(c.check_h2) << '\n'
      << "check_decay = " << b(c.check_decay) << '\n'
      << "check_blowup = " << b(c.check_blowup) << '\n'
      << "check_routes = " << b(c.check_routes) << '\n'
      << "out_dir = " << c.out_dir << '\n'
      << "strict = " << b(c.strict) << '\n'
      << "inject = " << to_string(c.inject) << '\n';
    // Empty lists are omitted: a key with no value is a syntax error.
    if (!c.sweep_alpha.empty()) o << "sweep_alpha = " << list(c.sweep_alpha) << '\n';
    if (!c.sweep_delta.empty()) o << "sweep_delta = " << list(c.sweep_delta) << '\n';
    if (!c.sweep_n.empty()) o << "sweep_n = " << list(c.sweep_n) << '\n';
    return o.str();
}

std::uint64_t config_hash(const RunConfig& config) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : serialize_config(config)) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace nsbound
