#include "sbl/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace sbl {

const std::vector<CheckKind>& all_checks() {
    static const std::vector<CheckKind> v = {CheckKind::decompose, CheckKind::ground,
                                             CheckKind::excited,   CheckKind::hvz,
                                             CheckKind::pullthrough, CheckKind::convergence};
    return v;
}

std::string check_name(CheckKind kind) {
    switch (kind) {
        case CheckKind::decompose: return "decompose";
        case CheckKind::ground: return "ground";
        case CheckKind::excited: return "excited";
        case CheckKind::hvz: return "hvz";
        case CheckKind::pullthrough: return "pullthrough";
        case CheckKind::convergence: return "convergence";
    }
    return "unknown";
}

std::optional<CheckKind> check_from_name(const std::string& name) {
    for (CheckKind k : all_checks())
        if (check_name(k) == name) return k;
    return std::nullopt;
}

ModelParams SweepConfig::params() const {
    return ModelParams{eta, alpha, CouplingFamily(coupling), ModeSet(modes, label)};
}

namespace {

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
    std::ostringstream os;
    os << origin << ":" << line << ": " << msg;
    throw ConfigError(os.str());
}

[[noreturn]] void fail_whole(const std::string& origin, const std::string& msg) {
    throw ConfigError(origin + ": " + msg);
}

std::string strip(const std::string& s) {
    const std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> tokens_of(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

double parse_double(const std::string& tok, const std::string& origin, int line) {
    try {
        std::size_t idx = 0;
        const double v = std::stod(tok, &idx);
        if (idx != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        fail(origin, line, "'" + tok + "' is not a number");
    }
}

long parse_long(const std::string& tok, const std::string& origin, int line) {
    try {
        std::size_t idx = 0;
        const long v = std::stol(tok, &idx);
        if (idx != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        fail(origin, line, "'" + tok + "' is not an integer");
    }
}

// Amplitude grammar: "1.5", "1.5+0.3i", "-2e-3-0.4i", "0.3i", "i", "(re,im)".
Complex parse_complex(const std::string& tok, const std::string& origin, int line) {
    if (tok.empty()) fail(origin, line, "empty amplitude");
    if (tok.front() == '(') {
        if (tok.back() != ')') fail(origin, line, "unterminated amplitude '" + tok + "'");
        const std::string inner = tok.substr(1, tok.size() - 2);
        const std::size_t comma = inner.find(',');
        if (comma == std::string::npos)
            fail(origin, line, "amplitude '" + tok + "' needs a comma");
        return {parse_double(strip(inner.substr(0, comma)), origin, line),
                parse_double(strip(inner.substr(comma + 1)), origin, line)};
    }
    if (tok.back() == 'i') {
        const std::string body = tok.substr(0, tok.size() - 1);
        std::size_t split = std::string::npos;
        for (std::size_t p = body.size(); p-- > 1;) {
            if ((body[p] == '+' || body[p] == '-') && body[p - 1] != 'e' && body[p - 1] != 'E') {
                split = p;
                break;
            }
        }
        auto imag_part = [&](const std::string& s) {
            if (s.empty() || s == "+") return 1.0;
            if (s == "-") return -1.0;
            return parse_double(s, origin, line);
        };
        if (split == std::string::npos) return {0.0, imag_part(body)};
        return {parse_double(body.substr(0, split), origin, line),
                imag_part(body.substr(split))};
    }
    return {parse_double(tok, origin, line), 0.0};
}

bool axis_name_ok(const std::string& name) {
    if (name == "eta" || name == "coupling_scale") return true;
    if (name.size() > 5 && name.compare(0, 5, "alpha") == 0) {
        for (std::size_t p = 5; p < name.size(); ++p)
            if (!std::isdigit(static_cast<unsigned char>(name[p]))) return false;
        return true;
    }
    return false;
}

}  // namespace

SweepConfig parse_config_text(const std::string& text, const std::string& origin) {
    SweepConfig cfg;
    cfg.checks = {CheckKind::decompose, CheckKind::ground};

    enum class Sec { none, modes, coupling, sweep, schedule };
    Sec sec = Sec::none;
    std::vector<int> coupling_lines;
    std::set<std::string> keys_seen;
    bool checks_customized = false;

    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        const std::size_t hash = s.find('#');
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = strip(s);
        if (s.empty()) continue;

        if (s.front() == '[') {
            if (s.back() != ']') fail(origin, line, "unterminated section header");
            std::istringstream hs(strip(s.substr(1, s.size() - 2)));
            std::string word;
            hs >> word;
            std::string arg;
            hs >> arg;
            std::string extra;
            if (hs >> extra) fail(origin, line, "trailing text in section header");
            if (word == "modes") {
                if (!arg.empty()) fail(origin, line, "[modes] takes no argument");
                if (!cfg.modes.empty()) fail(origin, line, "duplicate [modes] section");
                sec = Sec::modes;
            } else if (word == "coupling") {
                if (arg.empty()) fail(origin, line, "[coupling] needs an index");
                const long k = parse_long(arg, origin, line);
                if (k != static_cast<long>(cfg.coupling.size()) + 1)
                    fail(origin, line,
                         "coupling sections must be numbered consecutively from 1");
                cfg.coupling.emplace_back();
                coupling_lines.push_back(line);
                sec = Sec::coupling;
            } else if (word == "sweep") {
                if (arg.empty()) fail(origin, line, "[sweep] needs an axis name");
                if (!axis_name_ok(arg))
                    fail(origin, line, "unknown sweep axis '" + arg +
                                           "' (eta, coupling_scale, or alpha<K>)");
                for (const auto& ax : cfg.axes)
                    if (ax.name == arg) fail(origin, line, "duplicate sweep axis '" + arg + "'");
                cfg.axes.push_back({arg, {}});
                sec = Sec::sweep;
            } else if (word == "schedule") {
                if (!arg.empty()) fail(origin, line, "[schedule] takes no argument");
                sec = Sec::schedule;
            } else {
                fail(origin, line, "unknown section '" + word + "'");
            }
            continue;
        }

        const std::size_t eq = s.find('=');
        if (eq != std::string::npos) {
            sec = Sec::none;
            const std::string key = strip(s.substr(0, eq));
            const std::string value = strip(s.substr(eq + 1));
            if (key.empty()) fail(origin, line, "missing key before '='");
            if (!keys_seen.insert(key).second)
                fail(origin, line, "duplicate key '" + key + "'");
            if (value.empty()) fail(origin, line, "key '" + key + "' has no value");

            if (key == "label") {
                cfg.label = value;
            } else if (key == "eta") {
                cfg.eta = parse_double(value, origin, line);
            } else if (key == "alpha") {
                for (const auto& t : tokens_of(value))
                    cfg.alpha.push_back(parse_double(t, origin, line));
                if (cfg.alpha.empty() || cfg.alpha.size() % 2 != 0)
                    fail(origin, line, "alpha needs a positive even number of coefficients");
            } else if (key == "n_max") {
                const long v = parse_long(value, origin, line);
                if (v < 0) fail(origin, line, "n_max must be nonnegative");
                cfg.n_max = static_cast<int>(v);
            } else if (key == "seed") {
                try {
                    std::size_t idx = 0;
                    cfg.seed = std::stoull(value, &idx);
                    if (idx != value.size()) throw std::invalid_argument(value);
                } catch (const std::exception&) {
                    fail(origin, line, "'" + value + "' is not a seed value");
                }
            } else if (key == "checks") {
                cfg.checks.clear();
                checks_customized = true;
                for (const auto& t : tokens_of(value)) {
                    auto k = check_from_name(t);
                    if (!k) fail(origin, line, "unknown check '" + t + "'");
                    if (std::find(cfg.checks.begin(), cfg.checks.end(), *k) != cfg.checks.end())
                        fail(origin, line, "check '" + t + "' listed twice");
                    cfg.checks.push_back(*k);
                }
            } else if (key == "workers") {
                const long v = parse_long(value, origin, line);
                if (v < 0) fail(origin, line, "workers must be nonnegative");
                cfg.workers = static_cast<int>(v);
            } else if (key == "solver_tol") {
                cfg.solver_tol = parse_double(value, origin, line);
                if (!(cfg.solver_tol > 0)) fail(origin, line, "solver_tol must be positive");
            } else if (key == "dense_threshold") {
                const long v = parse_long(value, origin, line);
                if (v < 1) fail(origin, line, "dense_threshold must be at least 1");
                cfg.dense_threshold = static_cast<std::size_t>(v);
            } else if (key == "pullthrough_tol") {
                cfg.pullthrough_tol = parse_double(value, origin, line);
                if (!(cfg.pullthrough_tol > 0))
                    fail(origin, line, "pullthrough_tol must be positive");
            } else if (key == "output") {
                cfg.output = value;
            } else {
                fail(origin, line, "unknown key '" + key + "'");
            }
            continue;
        }

        const std::vector<std::string> toks = tokens_of(s);
        switch (sec) {
            case Sec::none:
                fail(origin, line, "expected 'key = value' or a section header");
            case Sec::modes: {
                if (toks.empty() || toks.size() > 3)
                    fail(origin, line, "mode rows are 'energy [weight [tag]]'");
                Mode mode;
                mode.energy = parse_double(toks[0], origin, line);
                if (toks.size() > 1) mode.weight = parse_double(toks[1], origin, line);
                if (toks.size() > 2) {
                    if (toks[2] == "discrete")
                        mode.tag = ModeTag::discrete;
                    else if (toks[2] == "essential")
                        mode.tag = ModeTag::essential;
                    else
                        fail(origin, line, "mode tag must be 'discrete' or 'essential'");
                }
                const int idx = static_cast<int>(cfg.modes.size()) + 1;
                if (!(mode.energy > 0))
                    fail(origin, line,
                         "mode " + std::to_string(idx) + " has nonpositive energy");
                if (!(mode.weight > 0))
                    fail(origin, line,
                         "mode " + std::to_string(idx) + " has nonpositive weight");
                cfg.modes.push_back(mode);
                break;
            }
            case Sec::coupling:
                for (const auto& t : toks)
                    cfg.coupling.back().push_back(parse_complex(t, origin, line));
                break;
            case Sec::sweep:
                for (const auto& t : toks)
                    cfg.axes.back().values.push_back(parse_double(t, origin, line));
                break;
            case Sec::schedule:
                for (const auto& t : toks) {
                    const long v = parse_long(t, origin, line);
                    if (v < 0) fail(origin, line, "schedule entries must be nonnegative");
                    cfg.schedule.push_back(static_cast<int>(v));
                }
                break;
        }
    }

    if (cfg.modes.empty()) fail_whole(origin, "config has no [modes] section");
    if (cfg.alpha.empty()) fail_whole(origin, "config sets no alpha coefficients");
    if (cfg.coupling.size() != cfg.alpha.size()) {
        std::ostringstream os;
        os << "coupling sections (" << cfg.coupling.size()
           << ") do not match the interaction order (" << cfg.alpha.size() << ")";
        fail_whole(origin, os.str());
    }
    for (std::size_t i = 0; i < cfg.coupling.size(); ++i) {
        if (cfg.coupling[i].size() != cfg.modes.size()) {
            std::ostringstream os;
            os << "coupling " << i + 1 << " has " << cfg.coupling[i].size()
               << " amplitudes for " << cfg.modes.size() << " modes";
            fail(origin, coupling_lines[i], os.str());
        }
    }
    for (const auto& ax : cfg.axes) {
        if (ax.values.empty())
            fail_whole(origin, "sweep axis '" + ax.name + "' has no values");
        if (ax.name.compare(0, 5, "alpha") == 0 && ax.name != "alpha") {
            const long k = std::stol(ax.name.substr(5));
            if (k < 1 || k > static_cast<long>(cfg.alpha.size()))
                fail_whole(origin, "sweep axis '" + ax.name +
                                       "' is outside the interaction order");
        }
    }
    for (std::size_t t = 1; t < cfg.schedule.size(); ++t)
        if (cfg.schedule[t] <= cfg.schedule[t - 1])
            fail_whole(origin, "schedule must increase strictly");
    if (checks_customized && cfg.checks.empty())
        fail_whole(origin, "checks must name at least one check");

    ModelParams params = cfg.params();
    params.validate();
    HypothesisReport report = validate_hypotheses(params);
    if (!report.check(1).pass)
        fail_whole(origin, "model structure: " + report.check(1).reason);
    return cfg;
}

SweepConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), path);
}

}  // namespace sbl
