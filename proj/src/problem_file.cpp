#include "loglap/problem_file.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace loglap {

namespace {

struct Section {
    std::string name;
    int line = 0;
    // key -> (value, line); insertion order kept separately for error reports
    std::map<std::string, std::pair<std::string, int>> entries;
    std::vector<std::string> order;
};

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<Section> tokenize(const std::string& text, const std::string& origin,
                              std::vector<std::string>& errors) {
    std::vector<Section> sections;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']') {
                errors.push_back(origin + ":" + std::to_string(lineno) +
                                 ": malformed section header '" + t + "'");
                continue;
            }
            sections.push_back({trim(t.substr(1, t.size() - 2)), lineno, {}, {}});
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos) {
            errors.push_back(origin + ":" + std::to_string(lineno) +
                             ": expected 'key = value', got '" + t + "'");
            continue;
        }
        if (sections.empty()) {
            errors.push_back(origin + ":" + std::to_string(lineno) +
                             ": key outside any section");
            continue;
        }
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        auto& sec = sections.back();
        if (sec.entries.count(key))
            errors.push_back(origin + ":" + std::to_string(lineno) +
                             ": duplicate key '" + key + "'");
        sec.entries[key] = {val, lineno};
        sec.order.push_back(key);
    }
    return sections;
}

class SectionReader {
public:
    SectionReader(const Section& sec, const std::string& origin,
                  std::vector<std::string>& errors)
        : sec_(sec), origin_(origin), errors_(errors) {}

    bool has(const std::string& key) const { return sec_.entries.count(key) > 0; }

    std::string raw(const std::string& key, const std::string& fallback = "") {
        consumed_.push_back(key);
        auto it = sec_.entries.find(key);
        return it == sec_.entries.end() ? fallback : it->second.first;
    }

    double number(const std::string& key, double fallback, bool required = false) {
        consumed_.push_back(key);
        auto it = sec_.entries.find(key);
        if (it == sec_.entries.end()) {
            if (required) fail("missing required key '" + key + "'", sec_.line);
            return fallback;
        }
        return parse_double(it->second.first, it->second.second);
    }

    std::vector<double> number_list(const std::string& key, bool required = false) {
        consumed_.push_back(key);
        std::vector<double> out;
        auto it = sec_.entries.find(key);
        if (it == sec_.entries.end()) {
            if (required) fail("missing required key '" + key + "'", sec_.line);
            return out;
        }
        std::istringstream ss(it->second.first);
        std::string item;
        while (std::getline(ss, item, ','))
            out.push_back(parse_double(trim(item), it->second.second));
        if (out.empty())
            fail("empty list for key '" + key + "'", it->second.second);
        return out;
    }

    void finish() {
        for (const auto& key : sec_.order)
            if (std::find(consumed_.begin(), consumed_.end(), key) == consumed_.end())
                fail("unknown key '" + key + "' in section [" + sec_.name + "]",
                     sec_.entries.at(key).second);
    }

    void fail(const std::string& msg, int line) {
        errors_.push_back(origin_ + ":" + std::to_string(line) + ": " + msg);
    }

    const Section& section() const { return sec_; }

private:
    double parse_double(const std::string& s, int line) {
        try {
            std::size_t pos = 0;
            double v = std::stod(s, &pos);
            if (pos != s.size()) throw std::invalid_argument("trailing junk");
            return v;
        } catch (const std::exception&) {
            fail("cannot parse number '" + s + "'", line);
            return 0.0;
        }
    }

    const Section& sec_;
    const std::string& origin_;
    std::vector<std::string>& errors_;
    std::vector<std::string> consumed_;
};

KernelSpec::Kind kernel_kind(const std::string& s, SectionReader& r, int line) {
    if (s == "gaussian") return KernelSpec::Kind::Gaussian;
    if (s == "laplace") return KernelSpec::Kind::Laplace;
    if (s == "tophat") return KernelSpec::Kind::TopHat;
    r.fail("unknown kernel kind '" + s + "' (gaussian|laplace|tophat)", line);
    return KernelSpec::Kind::Gaussian;
}

NonlinearitySpec::Kind nonlinearity_kind(const std::string& s, SectionReader& r, int line) {
    if (s == "tanh-linear") return NonlinearitySpec::Kind::TanhLinear;
    if (s == "sine") return NonlinearitySpec::Kind::Sine;
    r.fail("unknown nonlinearity kind '" + s + "' (tanh-linear|sine)", line);
    return NonlinearitySpec::Kind::TanhLinear;
}

} // namespace

RunConfig parse_problem_text(const std::string& text, const std::string& origin) {
    std::vector<std::string> errors;
    auto sections = tokenize(text, origin, errors);

    RunConfig cfg;
    int n_components = 0;

    auto find_section = [&](const std::string& name) -> const Section* {
        for (const auto& s : sections)
            if (s.name == name) return &s;
        return nullptr;
    };

    if (const Section* s = find_section("grid")) {
        SectionReader r(*s, origin, errors);
        cfg.spec.grid_length = r.number("L", 80.0);
        cfg.spec.grid_count = static_cast<Eigen::Index>(r.number("n", 4096));
        r.finish();
    }
    if (const Section* s = find_section("system")) {
        SectionReader r(*s, origin, errors);
        n_components = static_cast<int>(r.number("N", 0, true));
        cfg.spec.rho = r.number("rho", 1.0);
        r.finish();
    } else {
        errors.push_back(origin + ": missing [system] section");
    }

    cfg.spec.n_components = std::max(n_components, 0);
    for (int m = 1; m <= n_components; ++m) {
        const Section* s = find_section("component." + std::to_string(m));
        if (!s) {
            errors.push_back(origin + ": missing section [component." +
                             std::to_string(m) + "]");
            continue;
        }
        SectionReader r(*s, origin, errors);
        double a = r.number("a", 0.0);
        double b = r.number("b", 0.0, true);
        if (b == 0.0)
            r.fail("component " + std::to_string(m) +
                       ": drift b must be nonzero (the symbol lower bound "
                       "degenerates without it)",
                   s->line);
        cfg.spec.symbols.push_back(b != 0.0 ? SymbolParams(a, b) : SymbolParams(a, 1.0));
        cfg.spec.epsilons.push_back(r.number("epsilon", 0.0));

        KernelSpec k;
        k.kind = kernel_kind(r.raw("kernel", "gaussian"), r, s->line);
        k.width = r.number("kernel.width", 1.0);
        k.amplitude = r.number("kernel.amplitude", 1.0);
        cfg.spec.kernels.push_back(std::move(k));

        SourceSpec src;
        std::string skind = r.raw("source", "gaussian");
        if (skind == "gaussian") src.kind = SourceSpec::Kind::Gaussian;
        else if (skind == "difference-of-gaussians")
            src.kind = SourceSpec::Kind::DifferenceOfGaussians;
        else
            r.fail("unknown source kind '" + skind +
                       "' (gaussian|difference-of-gaussians)",
                   s->line);
        src.center = r.number("source.center", 0.0);
        src.width = r.number("source.width", 1.0);
        src.amplitude = r.number("source.amplitude", 1.0);
        src.center2 = r.number("source.center2", 0.0);
        src.width2 = r.number("source.width2", 1.0);
        src.amplitude2 = r.number("source.amplitude2", 0.0);
        cfg.spec.sources.push_back(std::move(src));

        NonlinearitySpec::Component nc;
        nc.kind = nonlinearity_kind(r.raw("nonlinearity", "tanh-linear"), r, s->line);
        nc.alpha = r.number("nonlinearity.alpha", 0.0);
        auto w = r.number_list("nonlinearity.w", true);
        nc.weights = Eigen::Map<Eigen::VectorXd>(w.data(),
                                                 static_cast<Eigen::Index>(w.size()));
        if (static_cast<int>(w.size()) != n_components)
            r.fail("nonlinearity.w must list exactly N = " +
                       std::to_string(n_components) + " weights",
                   s->line);
        cfg.spec.nonlinearity.components.push_back(std::move(nc));
        r.finish();
    }

    if (const Section* s = find_section("solver")) {
        SectionReader r(*s, origin, errors);
        cfg.tol = r.number("tol", 1e-12);
        cfg.max_iter = static_cast<int>(r.number("max_iter", 200));
        cfg.seed = static_cast<std::uint64_t>(r.number("seed", 1));
        cfg.probe_pairs = static_cast<int>(r.number("probe_pairs", 100));
        r.finish();
    }
    if (const Section* s = find_section("sweep")) {
        SectionReader r(*s, origin, errors);
        cfg.sweep_eps = r.number_list("eps", true);
        r.finish();
    }
    if (const Section* s = find_section("continuity")) {
        SectionReader r(*s, origin, errors);
        cfg.continuity_alpha_offsets = r.number_list("alpha_offsets", true);
        cfg.continuity_component = static_cast<int>(r.number("component", 1));
        r.finish();
    }

    static const char* known[] = {"grid", "system", "solver", "sweep", "continuity"};
    for (const auto& s : sections) {
        bool ok = std::find(std::begin(known), std::end(known), s.name) != std::end(known);
        if (!ok && s.name.rfind("component.", 0) == 0) {
            int idx = 0;
            try { idx = std::stoi(s.name.substr(10)); } catch (...) {}
            ok = idx >= 1 && idx <= n_components;
        }
        if (!ok)
            errors.push_back(origin + ":" + std::to_string(s.line) +
                             ": unknown section [" + s.name + "]");
    }

    if (errors.empty()) {
        try {
            cfg.spec.validate();
        } catch (const std::exception& e) {
            errors.push_back(e.what());
        }
    }
    if (!errors.empty()) {
        std::string joined;
        for (const auto& e : errors) joined += e + "\n";
        throw ParseError(joined);
    }
    return cfg;
}

RunConfig parse_problem(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot read problem file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_problem_text(ss.str(), path.string());
}

namespace {
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
} // namespace

std::string serialize_problem(const RunConfig& cfg) {
    std::ostringstream out;
    out << "[grid]\nL = " << fmt(cfg.spec.grid_length)
        << "\nn = " << cfg.spec.grid_count << "\n\n";
    out << "[system]\nN = " << cfg.spec.n_components
        << "\nrho = " << fmt(cfg.spec.rho) << "\n\n";
    for (int m = 0; m < cfg.spec.n_components; ++m) {
        const auto um = static_cast<std::size_t>(m);
        out << "[component." << m + 1 << "]\n";
        out << "a = " << fmt(cfg.spec.symbols[um].a) << "\n";
        out << "b = " << fmt(cfg.spec.symbols[um].b) << "\n";
        out << "epsilon = " << fmt(cfg.spec.epsilons[um]) << "\n";
        const auto& k = cfg.spec.kernels[um];
        const char* kk = k.kind == KernelSpec::Kind::Gaussian ? "gaussian"
                         : k.kind == KernelSpec::Kind::Laplace ? "laplace"
                                                               : "tophat";
        out << "kernel = " << kk << "\n";
        out << "kernel.width = " << fmt(k.width) << "\n";
        out << "kernel.amplitude = " << fmt(k.amplitude) << "\n";
        const auto& s = cfg.spec.sources[um];
        out << "source = "
            << (s.kind == SourceSpec::Kind::Gaussian ? "gaussian"
                                                     : "difference-of-gaussians")
            << "\n";
        out << "source.center = " << fmt(s.center) << "\n";
        out << "source.width = " << fmt(s.width) << "\n";
        out << "source.amplitude = " << fmt(s.amplitude) << "\n";
        if (s.kind == SourceSpec::Kind::DifferenceOfGaussians) {
            out << "source.center2 = " << fmt(s.center2) << "\n";
            out << "source.width2 = " << fmt(s.width2) << "\n";
            out << "source.amplitude2 = " << fmt(s.amplitude2) << "\n";
        }
        const auto& nc = cfg.spec.nonlinearity.components[um];
        out << "nonlinearity = "
            << (nc.kind == NonlinearitySpec::Kind::TanhLinear ? "tanh-linear" : "sine")
            << "\n";
        out << "nonlinearity.alpha = " << fmt(nc.alpha) << "\n";
        out << "nonlinearity.w = ";
        for (Eigen::Index i = 0; i < nc.weights.size(); ++i)
            out << (i ? ", " : "") << fmt(nc.weights[i]);
        out << "\n\n";
    }
    out << "[solver]\ntol = " << fmt(cfg.tol) << "\nmax_iter = " << cfg.max_iter
        << "\nseed = " << cfg.seed << "\nprobe_pairs = " << cfg.probe_pairs << "\n";
    if (!cfg.sweep_eps.empty()) {
        out << "\n[sweep]\neps = ";
        for (std::size_t i = 0; i < cfg.sweep_eps.size(); ++i)
            out << (i ? ", " : "") << fmt(cfg.sweep_eps[i]);
        out << "\n";
    }
    if (!cfg.continuity_alpha_offsets.empty()) {
        out << "\n[continuity]\nalpha_offsets = ";
        for (std::size_t i = 0; i < cfg.continuity_alpha_offsets.size(); ++i)
            out << (i ? ", " : "") << fmt(cfg.continuity_alpha_offsets[i]);
        out << "\ncomponent = " << cfg.continuity_component << "\n";
    }
    return out.str();
}

std::uint64_t file_hash(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace loglap
