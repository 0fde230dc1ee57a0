#include "markoff/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "markoff/elimination.hpp"
#include "markoff/pipeline.hpp"

namespace markoff {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kSchema = "mrsolve.records/1";

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::istringstream is(s);
    for (std::string p; std::getline(is, p, sep);) parts.push_back(trim(p));
    return parts;
}

long parse_long(const std::string& key, const std::string& text) {
    size_t used = 0;
    long v = 0;
    try {
        v = std::stol(text, &used);
    } catch (const std::exception&) {
        throw ConfigError(key + ": '" + text + "' is not an integer");
    }
    if (used != text.size()) throw ConfigError(key + ": '" + text + "' is not an integer");
    return v;
}

std::vector<long> parse_long_list(const std::string& key, const std::string& text) {
    std::vector<long> out;
    for (const auto& p : split(text, ',')) out.push_back(parse_long(key, p));
    return out;
}

std::pair<long, long> parse_range(const std::string& key, const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() == 1) {
        const long v = parse_long(key, parts[0]);
        return {v, v};
    }
    if (parts.size() != 2) throw ConfigError(key + ": expected lo:hi, got '" + text + "'");
    return {parse_long(key, parts[0]), parse_long(key, parts[1])};
}

std::vector<Coeffs> parse_tuple_list(const std::string& text) {
    std::vector<Coeffs> out;
    if (text == "all") return out;
    for (const auto& p : split(text, ';')) {
        try {
            out.push_back(parse_coeffs(p));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("tuples: ") + e.what());
        }
    }
    return out;
}

OutputMode parse_output(const std::string& text) {
    if (text == "human") return OutputMode::Human;
    if (text == "records") return OutputMode::Records;
    throw ConfigError("output: expected human or records, got '" + text + "'");
}

std::string join_longs(const std::vector<long>& v, const char* sep = ",") {
    std::string s;
    for (size_t n = 0; n < v.size(); ++n) {
        if (n != 0) s += sep;
        s += std::to_string(v[n]);
    }
    return s;
}

std::string decimal5(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.5g", v);
    return buf;
}

std::string bracket_list(const std::vector<long>& v) { return "[" + join_longs(v, ", ") + "]"; }

// Left-aligned columns separated by two spaces; no trailing blanks.
void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
    std::vector<size_t> width;
    for (const auto& r : rows) {
        if (width.size() < r.size()) width.resize(r.size(), 0);
        for (size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    }
    for (const auto& r : rows) {
        std::string line;
        for (size_t c = 0; c < r.size(); ++c) {
            line += r[c];
            if (c + 1 < r.size()) line += std::string(width[c] - r[c].size() + 2, ' ');
        }
        out << line << '\n';
    }
}

SequenceParams params_of(const RunConfig& config) {
    if (!config.P || !config.Q) throw ConfigError("--P and --Q are required");
    return validate_params(*config.P, *config.Q, config.kind);
}

std::vector<Coeffs> selected_tuples(const RunConfig& config) {
    if (config.tuples.empty()) {
        // lexicographic, so (1,1,5,5) precedes (1,2,3,6)
        std::vector<Coeffs> all(kAdmissibleTuples.begin(), kAdmissibleTuples.end());
        std::sort(all.begin(), all.end());
        return all;
    }
    return config.tuples;
}

// distinct bases of the selected tuples, in first-seen order
std::vector<Coeffs> selected_bases(const RunConfig& config) {
    std::vector<Coeffs> out;
    for (const auto& t : selected_tuples(config)) {
        const Coeffs base = tuple_from_coeffs(t).base;
        if (std::find(out.begin(), out.end(), base) == out.end()) out.push_back(base);
    }
    return out;
}

SearchLimits limits_of(const RunConfig& config) {
    SearchLimits l;
    l.moduli = config.moduli;
    l.x_max = config.x_max;
    l.diagonal_window = config.diagonal_window;
    return l;
}

ordered_json params_json(const SequenceParams& p) {
    ordered_json j;
    j["P"] = p.P;
    j["Q"] = p.Q;
    j["kind"] = kind_name(p.kind);
    return j;
}

ordered_json coeffs_json(const Coeffs& c) { return ordered_json::array({c[0], c[1], c[2], c[3]}); }

ordered_json record(const std::string& command, const ordered_json& params,
                    const ordered_json& tuple, const ordered_json& perm, const std::string& stage,
                    ordered_json payload) {
    ordered_json r;
    r["schema"] = kSchema;
    r["command"] = command;
    r["params"] = params;
    r["tuple"] = tuple;
    r["perm"] = perm;
    r["stage"] = stage;
    r["payload"] = std::move(payload);
    return r;
}

ordered_json triple_json(const ValueTriple& v) {
    return ordered_json::array({v[0].get_str(), v[1].get_str(), v[2].get_str()});
}

ordered_json index_triple_json(const Triple& t) {
    ordered_json j;
    j["index"] = ordered_json::array({t.index[0], t.index[1], t.index[2]});
    j["value"] = triple_json(t.value);
    return j;
}

ordered_json quad_json(const QuadElem& q) {
    ordered_json j;
    j["exact"] = q.to_string();
    j["decimal"] = decimal5(q.to_double());
    return j;
}

ordered_json certificate_json(const EliminationCertificate& cert) {
    ordered_json j;
    j["variant"] = cert.variant_name();
    std::visit(
        [&j](const auto& c) {
            using C = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<C, DefinitenessCert>) {
                j["r"] = c.r.get_str();
                j["N"] = c.discriminant.get_str();
            } else if constexpr (std::is_same_v<C, FormModularCert>) {
                j["r"] = c.r.get_str();
                j["modulus"] = c.modulus;
            } else if constexpr (std::is_same_v<C, ModularCert>) {
                j["gap"] = c.gap;
                j["modulus"] = c.modulus;
            } else if constexpr (std::is_same_v<C, DiagonalCert>) {
                j["offset"] = c.offset;
                j["window"] = c.window;
                j["region_modulus"] = c.region_modulus;
                j["region_signs"] = c.region_signs;
                ordered_json rows = ordered_json::array();
                for (const auto& [i, m] : c.rows) rows.push_back(ordered_json::array({i, m}));
                j["rows"] = rows;
            } else if constexpr (std::is_same_v<C, NormFormCert>) {
                j["r"] = c.r.get_str();
                j["N"] = c.N.get_str();
                j["M"] = c.M.get_str();
                j["unit"] = ordered_json::array({c.x1.get_str(), c.y1.get_str()});
                ordered_json reps = ordered_json::array();
                for (const auto& [x, y] : c.representatives) {
                    reps.push_back(ordered_json::array({x.get_str(), y.get_str()}));
                }
                j["representatives"] = reps;
            } else if constexpr (std::is_same_v<C, QuarticSearchCert>) {
                j["x_max"] = c.x_max;
                ordered_json curves = ordered_json::array();
                for (size_t n = 0; n < c.curves.size(); ++n) {
                    ordered_json cj;
                    cj["curve"] = c.curves[n].to_string();
                    cj["parity"] = c.curves[n].parity ? ordered_json(*c.curves[n].parity)
                                                      : ordered_json(nullptr);
                    ordered_json pts = ordered_json::array();
                    for (const auto& p : c.points[n]) {
                        pts.push_back(ordered_json::array({p.x.get_str(), p.y.get_str()}));
                    }
                    cj["points"] = pts;
                    curves.push_back(cj);
                }
                j["curves"] = curves;
            } else {
                j["gap"] = c.gap;
                ordered_json classes = ordered_json::array();
                for (const auto& cl : c.classes) {
                    ordered_json cj;
                    cj["parity"] = cl.parity;
                    cj["quadratic"] = ordered_json::array(
                        {cl.a2.get_str(), cl.a1.get_str(), cl.a0.get_str()});
                    ordered_json roots = ordered_json::array();
                    for (const auto& r : cl.roots) roots.push_back(r.get_str());
                    cj["roots"] = roots;
                    classes.push_back(cj);
                }
                j["classes"] = classes;
            }
        },
        cert.detail);
    return j;
}

// i in 1..index_bound not eliminated by stage (I)
std::vector<long> surviving_indices(const SequenceParams& params, const MarkoffTuple& t,
                                    long bound, const SearchLimits& limits) {
    std::vector<long> out;
    TermTable tt(params);
    for (long i = 1; i <= bound; ++i) {
        if (quad_solvable(t, tt[static_cast<int>(i)], limits).status !=
            QuadSolvability::Status::Unsolvable) {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<MarkoffTuple> bound_rows(const Coeffs& requested) {
    if (is_admissible(requested)) return permutations_of(requested);
    return {tuple_from_coeffs(requested)};
}

}  // namespace

// ---- configuration ------------------------------------------------------------

RunConfig parse_config(const std::string& text, RunConfig c) {
    std::istringstream is(text);
    int line_no = 0;
    for (std::string line; std::getline(is, line);) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "P") {
            c.P = parse_long(key, value);
        } else if (key == "Q") {
            c.Q = parse_long(key, value);
        } else if (key == "kind") {
            try {
                c.kind = parse_kind(value);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(std::string("kind: ") + e.what());
            }
        } else if (key == "tuples") {
            c.tuples = parse_tuple_list(value);
        } else if (key == "moduli") {
            c.moduli = parse_long_list(key, value);
        } else if (key == "xmax") {
            c.x_max = parse_long(key, value);
        } else if (key == "nmax") {
            c.n_max = parse_long(key, value);
        } else if (key == "envelope") {
            c.envelope = value;
        } else if (key == "window") {
            c.diagonal_window = parse_long(key, value);
        } else if (key == "output") {
            c.output = parse_output(value);
        } else if (key == "p_range") {
            c.p_range = parse_range(key, value);
        } else if (key == "e_range") {
            c.e_range = parse_range(key, value);
        } else {
            throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
    }
    return c;
}

RunConfig load_config(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), std::move(base));
}

std::string serialize_config(const RunConfig& c) {
    std::ostringstream os;
    if (c.P) os << "P = " << *c.P << '\n';
    if (c.Q) os << "Q = " << *c.Q << '\n';
    os << "kind = " << kind_name(c.kind) << '\n';
    os << "tuples = ";
    if (c.tuples.empty()) {
        os << "all";
    } else {
        for (size_t n = 0; n < c.tuples.size(); ++n) {
            if (n != 0) os << ';';
            os << format_coeffs(c.tuples[n], "", "");
        }
    }
    os << '\n';
    os << "moduli = " << join_longs(c.moduli) << '\n';
    os << "xmax = " << c.x_max << '\n';
    os << "nmax = " << c.n_max << '\n';
    os << "envelope = " << c.envelope << '\n';
    os << "window = " << c.diagonal_window << '\n';
    os << "output = " << (c.output == OutputMode::Human ? "human" : "records") << '\n';
    os << "p_range = " << c.p_range.first << ':' << c.p_range.second << '\n';
    os << "e_range = " << c.e_range.first << ':' << c.e_range.second << '\n';
    return os.str();
}

void check_config(const RunConfig& c) {
    if (c.x_max < 1) throw ConfigError("xmax must be at least 1");
    if (c.n_max < 1) throw ConfigError("nmax must be at least 1");
    if (c.diagonal_window < 0) throw ConfigError("window must be non-negative");
    if (c.moduli.empty()) throw ConfigError("moduli must not be empty");
    for (long m : c.moduli) {
        if (m < 2) throw ConfigError("moduli must be at least 2");
    }
    for (const auto& t : c.tuples) {
        try {
            tuple_from_coeffs(t);
        } catch (const TupleNotInA& e) {
            throw ConfigError(e.what());
        }
    }
    if (c.p_range.first > c.p_range.second || c.p_range.first < 1) {
        throw ConfigError("p_range must be lo:hi with 1 <= lo <= hi");
    }
    if (c.e_range.first > c.e_range.second || c.e_range.first < 1) {
        throw ConfigError("e_range must be lo:hi with 1 <= lo <= hi");
    }
}

// ---- commands ------------------------------------------------------------------

int cmd_bounds(const RunConfig& config, std::ostream& out) {
    check_config(config);
    const SequenceParams params = params_of(config);
    const GrowthEnvelope env = resolve_envelope(params, config.envelope);
    const SearchLimits limits = limits_of(config);
    const bool human = config.output == OutputMode::Human;
    const char* b_name = params.kind == Kind::U ? "B0" : "B1";
    const char* c_name = params.kind == Kind::U ? "C0" : "C1";

    std::vector<std::vector<std::string>> rows;
    rows.push_back({"tuple", b_name, "decimal", "argmin", "zero diagonals", c_name, "[i]"});
    for (const auto& requested : selected_tuples(config)) {
        for (const auto& t : bound_rows(requested)) {
            const BoundReport rep = bound_report(params, t, env);
            const auto alive = surviving_indices(params, t, rep.index_bound, limits);
            if (human) {
                rows.push_back({format_coeffs(t.coeffs(), "[", "]"), rep.value.to_string(),
                                decimal5(rep.decimal), bracket_list(rep.argmin),
                                rep.zero_diagonals.empty() ? "-"
                                                           : bracket_list(rep.zero_diagonals),
                                std::to_string(rep.index_bound), bracket_list(alive)});
                continue;
            }
            ordered_json payload;
            payload["B"] = quad_json(rep.value);
            payload["target"] = quad_json(rep.target);
            payload["argmin"] = rep.argmin;
            payload["zero_diagonals"] = rep.zero_diagonals;
            payload["rhs_coeff"] = quad_json(rep.rhs_coeff);
            payload["C"] = rep.index_bound;
            payload["surviving"] = alive;
            out << record("bounds", params_json(params), coeffs_json(t.base),
                          coeffs_json(t.coeffs()), "bound", std::move(payload))
                       .dump()
                << '\n';
        }
    }
    if (human) {
        out << "P=" << params.P << " Q=" << params.Q << " kind=" << kind_name(params.kind)
            << " envelope=" << env.name << '\n';
        print_table(out, rows);
    }
    return kExitOk;
}

int cmd_solve(const RunConfig& config, std::ostream& out) {
    check_config(config);
    const SequenceParams params = params_of(config);
    ResolveConfig rc;
    rc.envelope = config.envelope;
    rc.limits = limits_of(config);
    const bool human = config.output == OutputMode::Human;
    const ordered_json pj = params_json(params);

    std::vector<std::vector<std::string>> rows;
    rows.push_back({"(a,b,c,d)", "solutions"});
    std::vector<std::string> open;
    for (const auto& base : selected_bases(config)) {
        const ResolutionReport rep = resolve(params, base, rc);
        rows.push_back({format_coeffs(base), format_solution_set(rep.solutions)});
        for (const auto& u : rep.unresolved) {
            std::string line = u.tuple.to_string();
            if (u.diagonal) {
                line += " diagonal k-i-j=" + std::to_string(*u.diagonal);
            } else {
                line += " i=" + std::to_string(u.i);
                if (u.gap) line += " k-j=" + std::to_string(*u.gap);
            }
            open.push_back(line + ": " + u.reason);
        }
        if (human) continue;

        const ordered_json bj = coeffs_json(base);
        for (const auto& perm : rep.permutations) {
            const ordered_json tj = coeffs_json(perm.tuple.coeffs());
            ordered_json bound;
            bound["B"] = quad_json(perm.bound.value);
            bound["zero_diagonals"] = perm.bound.zero_diagonals;
            bound["C"] = perm.bound.index_bound;
            bound["surviving"] = perm.surviving;
            out << record("solve", pj, bj, tj, "bound", std::move(bound)).dump() << '\n';
            for (const auto& c : perm.cases) {
                ordered_json payload;
                payload["i"] = c.i;
                payload["gap"] = c.gap ? ordered_json(*c.gap) : ordered_json(nullptr);
                payload["diagonal"] = c.diagonal ? ordered_json(*c.diagonal) : ordered_json(nullptr);
                payload["status"] = status_name(c.status);
                payload["certificate"] =
                    c.certificate ? certificate_json(*c.certificate) : ordered_json(nullptr);
                ordered_json sols = ordered_json::array();
                for (const auto& s : c.solutions) sols.push_back(index_triple_json(s));
                payload["solutions"] = sols;
                payload["note"] = c.note;
                out << record("solve", pj, bj, tj, c.stage, std::move(payload)).dump() << '\n';
            }
        }
        for (const auto& s : rep.solutions) {
            ordered_json payload;
            payload["value"] = triple_json(s);
            out << record("solve", pj, bj, nullptr, "solution", std::move(payload)).dump() << '\n';
        }
        ordered_json summary;
        ordered_json sols = ordered_json::array();
        for (const auto& s : rep.solutions) sols.push_back(triple_json(s));
        summary["solutions"] = sols;
        summary["unresolved"] = rep.unresolved.size();
        summary["complete"] = rep.complete();
        out << record("solve", pj, bj, nullptr, "summary", std::move(summary)).dump() << '\n';
    }
    if (human) {
        print_table(out, rows);
        if (!open.empty()) {
            out << "unresolved:\n";
            for (const auto& line : open) out << "  " << line << '\n';
        }
    }
    return open.empty() ? kExitOk : kExitUnresolved;
}

int cmd_classify_zero(const RunConfig& config, std::ostream& out) {
    check_config(config);
    const bool human = config.output == OutputMode::Human;
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"kind", "P", "Q", "e", "I"});
    for (Kind kind : {Kind::U, Kind::V}) {
        for (long P = config.p_range.first; P <= config.p_range.second; ++P) {
            for (long Q = -P - 1; Q <= P - 1; ++Q) {
                SequenceParams params;
                try {
                    params = validate_params(P, Q, kind);
                } catch (const InvalidParams&) {
                    continue;
                }
                for (long e = config.e_range.first; e <= config.e_range.second; ++e) {
                    for (long I : b_zero_cases(params, e, 1, kind)) {
                        if (human) {
                            rows.push_back({kind_name(kind), std::to_string(P), std::to_string(Q),
                                            std::to_string(e), std::to_string(I)});
                            continue;
                        }
                        ordered_json payload;
                        payload["e"] = e;
                        payload["I"] = I;
                        out << record("classify-zero", params_json(params), nullptr, nullptr,
                                      "zero-case", std::move(payload))
                                   .dump()
                            << '\n';
                    }
                }
            }
        }
    }
    if (human) print_table(out, rows);
    return kExitOk;
}

int cmd_oracle(const RunConfig& config, std::ostream& out) {
    check_config(config);
    const SequenceParams params = params_of(config);
    const bool human = config.output == OutputMode::Human;
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"(a,b,c,d)", "solutions"});
    for (const auto& base : selected_bases(config)) {
        const auto sols = brute_force_oracle(params, base, config.n_max);
        if (human) {
            rows.push_back({format_coeffs(base), format_solution_set(sols)});
            continue;
        }
        ordered_json payload;
        payload["n_max"] = config.n_max;
        ordered_json arr = ordered_json::array();
        for (const auto& s : sols) arr.push_back(triple_json(s));
        payload["solutions"] = arr;
        out << record("oracle", params_json(params), coeffs_json(base), nullptr, "oracle",
                      std::move(payload))
                   .dump()
            << '\n';
    }
    if (human) print_table(out, rows);
    return kExitOk;
}

// ---- command line ----------------------------------------------------------------

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Solve Markoff-Rosenberger equations in Lucas sequences", "mrsolve"};
    app.fallthrough();
    app.require_subcommand(1);

    std::optional<long> P, Q;
    std::string kind, xmax, moduli, nmax, config_path, output, envelope, window, p_range, e_range;
    std::vector<std::string> tuples;
    app.add_option("--P", P, "sequence parameter P");
    app.add_option("--Q", Q, "sequence parameter Q");
    app.add_option("--kind", kind, "U (first kind) or V (second kind)");
    app.add_option("--tuple", tuples, "coefficient tuple a,b,c,d (repeatable)");
    app.add_option("--xmax", xmax, "quartic search radius");
    app.add_option("--moduli", moduli, "comma-separated moduli for the congruence stages");
    app.add_option("--nmax", nmax, "largest index for the oracle");
    app.add_option("--config", config_path, "key = value configuration file");
    app.add_option("--output", output, "human or records");
    app.add_option("--envelope", envelope, "default, hand, or lower,upper,lower_shift,upper_shift");
    app.add_option("--window", window, "exact search window on zero diagonals");
    app.add_option("--p-range", p_range, "P range lo:hi for classify-zero");
    app.add_option("--e-range", e_range, "e range lo:hi for classify-zero");

    auto* bounds = app.add_subcommand("bounds", "B, C and the indices surviving stage (I)");
    auto* solve = app.add_subcommand("solve", "resolve every selected tuple");
    auto* classify = app.add_subcommand("classify-zero", "parameters where the B-bound vanishes");
    auto* oracle = app.add_subcommand("oracle", "exhaustive search over small indices");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitInvalid;
    }

    RunConfig config;
    try {
        if (!config_path.empty()) config = load_config(config_path, config);
        std::string flags;
        if (P) flags += "P = " + std::to_string(*P) + "\n";
        if (Q) flags += "Q = " + std::to_string(*Q) + "\n";
        if (!kind.empty()) flags += "kind = " + kind + "\n";
        if (!tuples.empty()) {
            std::string joined;
            for (const auto& t : tuples) joined += (joined.empty() ? "" : ";") + t;
            flags += "tuples = " + joined + "\n";
        }
        if (!xmax.empty()) flags += "xmax = " + xmax + "\n";
        if (!moduli.empty()) flags += "moduli = " + moduli + "\n";
        if (!nmax.empty()) flags += "nmax = " + nmax + "\n";
        if (!output.empty()) flags += "output = " + output + "\n";
        if (!envelope.empty()) flags += "envelope = " + envelope + "\n";
        if (!window.empty()) flags += "window = " + window + "\n";
        if (!p_range.empty()) flags += "p_range = " + p_range + "\n";
        if (!e_range.empty()) flags += "e_range = " + e_range + "\n";
        config = parse_config(flags, config);

        if (bounds->parsed()) return cmd_bounds(config, out);
        if (solve->parsed()) return cmd_solve(config, out);
        if (classify->parsed()) return cmd_classify_zero(config, out);
        if (oracle->parsed()) return cmd_oracle(config, out);
    } catch (const std::exception& e) {
        err << "mrsolve: " << e.what() << '\n';
        return kExitInvalid;
    }
    return kExitInvalid;
}

}  // namespace markoff
