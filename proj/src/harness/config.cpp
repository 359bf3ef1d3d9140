#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sphull/error.hpp"
#include "sphull/harness.hpp"

namespace sphull::harness {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) {
        cur = trim(cur);
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    double x;
    auto r = std::from_chars(v.data(), v.data() + v.size(), x);
    if (r.ec != std::errc() || r.ptr != v.data() + v.size())
        fail(ErrorKind::Validation, "config key '" + key + "': '" + v + "' is not a number");
    return x;
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
    std::uint64_t x;
    auto r = std::from_chars(v.data(), v.data() + v.size(), x);
    if (r.ec != std::errc() || r.ptr != v.data() + v.size())
        fail(ErrorKind::Validation, "config key '" + key + "': '" + v + "' is not a nonnegative integer");
    return x;
}

std::size_t to_count(const std::string& key, const std::string& v) {
    // accepts 1e5 style counts
    const double x = to_double(key, v);
    if (!(x >= 0) || x != std::floor(x) || x > 1e15)
        fail(ErrorKind::Validation, "config key '" + key + "': '" + v + "' is not a count");
    return static_cast<std::size_t>(x);
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    fail(ErrorKind::Validation, "config key '" + key + "': '" + v + "' is not a boolean");
}

}  // namespace

void ExperimentConfig::validate() const {
    if (laws.empty()) fail(ErrorKind::Validation, "config: [law] spec is required");
    for (const auto& l : laws) (void)parse_law(l);
    if (d < 2 || d > 6) fail(ErrorKind::Validation, "config: d must lie in 2..6");
    if (n_list.empty()) fail(ErrorKind::Validation, "config: n_list is required");
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1]) fail(ErrorKind::Validation, "config: n_list must be strictly increasing");
    if (replications < 2) fail(ErrorKind::Validation, "config: replications must be >= 2");
    quadrature.validate();
    if (!(epsilon > 0 && epsilon < 1)) fail(ErrorKind::Validation, "config: epsilon must lie in (0,1)");
    if (format != "csv" && format != "json") fail(ErrorKind::Validation, "config: format must be csv or json");
    if (workers < 1) fail(ErrorKind::Validation, "config: workers must be >= 1");
}

std::string ExperimentConfig::canonical() const {
    std::ostringstream os;
    os << "laws=";
    for (const auto& l : laws) os << parse_law(l).spec_string() << ';';
    os << "\nd=" << d << "\nn_list=";
    for (auto n : n_list) os << n << ',';
    os << "\nquantities=";
    for (auto q : quantities) os << to_string(q) << ',';
    os << "\nformulas=";
    for (auto f : formulas) os << to_string(f) << ',';
    os << "\nreplications=" << replications << "\nseed=" << master_seed << "\nrel_tol=" << fmt(quadrature.rel_tol)
       << "\nabs_tol=" << fmt(quadrature.abs_tol) << "\nmax_nodes=" << quadrature.max_nodes
       << "\nepsilon=" << fmt(epsilon) << "\nnorming=" << (norming == NormingSource::FBased ? "f" : "q") << "\nverify=" << verify << "\nformat=" << format << '\n';
    return os.str();
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig c;
    std::string section;
    std::istringstream is(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(ErrorKind::Validation, "config line " + std::to_string(lineno) + ": bad section");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "law" && section != "experiment" && section != "quadrature" && section != "output")
                fail(ErrorKind::Validation, "config: unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(ErrorKind::Validation, "config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        const std::string where = section + "." + key;
        if (section == "law" && key == "spec") {
            for (const auto& s : split(val, ';')) c.laws.push_back(s);
        } else if (section == "experiment" && key == "d") {
            c.d = static_cast<int>(to_count(where, val));
        } else if (section == "experiment" && key == "n_list") {
            c.n_list.clear();
            for (const auto& s : split(val, ',')) c.n_list.push_back(to_count(where, s));
        } else if (section == "experiment" && key == "quantities") {
            c.quantities.clear();
            for (const auto& s : split(val, ',')) c.quantities.push_back(quantity_from_string(s));
        } else if (section == "experiment" && key == "formulas") {
            c.formulas.clear();
            for (const auto& s : split(val, ',')) c.formulas.push_back(formula_from_string(s));
        } else if (section == "experiment" && key == "replications") {
            c.replications = to_count(where, val);
        } else if (section == "experiment" && key == "seed") {
            c.master_seed = to_uint(where, val);
        } else if (section == "experiment" && key == "epsilon") {
            c.epsilon = to_double(where, val);
        } else if (section == "experiment" && key == "norming") {
            if (val != "f" && val != "q") fail(ErrorKind::Validation, "config key '" + where + "' must be f or q");
            c.norming = val == "f" ? NormingSource::FBased : NormingSource::QQuadrature;
        } else if (section == "experiment" && key == "verify") {
            c.verify = to_bool(where, val);
        } else if (section == "experiment" && key == "workers") {
            c.workers = static_cast<unsigned>(to_count(where, val));
        } else if (section == "quadrature" && key == "rel_tol") {
            c.quadrature.rel_tol = to_double(where, val);
        } else if (section == "quadrature" && key == "abs_tol") {
            c.quadrature.abs_tol = to_double(where, val);
        } else if (section == "quadrature" && key == "max_nodes") {
            c.quadrature.max_nodes = to_count(where, val);
        } else if (section == "output" && key == "dir") {
            c.out_dir = val;
        } else if (section == "output" && key == "format") {
            c.format = val;
        } else {
            fail(ErrorKind::Validation, "config: unknown key '" + where + "'");
        }
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Io, "cannot read config '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string version_string() {
#ifdef SPHULL_VERSION
    return std::string("sphull ") + SPHULL_VERSION;
#else
    return "sphull dev";
#endif
}

std::string run_id(const ExperimentConfig& cfg) {
    // FNV-1a 64
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : cfg.canonical() + version_string()) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace sphull::harness
