#include "qsuper/cli.hpp"

#include "qsuper/algebra.hpp"
#include "qsuper/errors.hpp"
#include "qsuper/verify.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

namespace qsuper {

namespace {

using nlohmann::json;

void set_fault(FaultInjection& f, const std::string& name) {
    if (name == "flip_q_alpha") f.flip_q_alpha = true;
    else if (name == "drop_h0_delta") f.drop_h0_delta = true;
    else if (name == "flip_boson_disorder") f.flip_boson_disorder = true;
    else throw ConfigError("unknown negative control '" + name + "'");
}

std::vector<std::string> active_faults(const FaultInjection& f) {
    std::vector<std::string> out;
    if (f.flip_q_alpha) out.push_back("flip_q_alpha");
    if (f.drop_h0_delta) out.push_back("drop_h0_delta");
    if (f.flip_boson_disorder) out.push_back("flip_boson_disorder");
    return out;
}

template <typename T>
T get_as(const json& j, const std::string& key) {
    const json& v = j.at(key);
    if constexpr (std::is_same_v<T, bool>) {
        if (!v.is_boolean()) throw ConfigError("config key '" + key + "' must be a boolean");
    } else if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer()) throw ConfigError("config key '" + key + "' must be an integer");
        if constexpr (std::is_unsigned_v<T>) {
            if (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0)
                throw ConfigError("config key '" + key + "' must be non-negative");
        }
    } else if constexpr (std::is_floating_point_v<T>) {
        if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
    } else {
        if (!v.is_string()) throw ConfigError("config key '" + key + "' must be a string");
    }
    return v.get<T>();
}

std::vector<std::string> string_list(const json& j, const std::string& key) {
    const json& v = j.at(key);
    if (!v.is_array()) throw ConfigError("config key '" + key + "' must be an array of strings");
    std::vector<std::string> out;
    for (const auto& e : v) {
        if (!e.is_string()) throw ConfigError("config key '" + key + "' must be an array of strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

Deformation parse_q(const json& v) {
    if (!v.is_object()) throw ConfigError("config key 'q' must be an object {\"nu\": x} or {\"real\": x}");
    bool has_nu = v.contains("nu"), has_real = v.contains("real");
    if (has_nu == has_real) throw ConfigError("q needs exactly one of 'nu' or 'real'");
    if (v.size() != 1) throw ConfigError("q has unknown keys");
    if (has_nu) return Deformation::from_nu(get_as<double>(v, "nu"));
    return Deformation::from_real(get_as<double>(v, "real"));
}

std::string fnv1a64(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

std::string status_of(const RelationReport& r) {
    if (!r.applicable) return "n/a";
    if (r.pass) return "pass";
    return r.gating ? "FAIL" : "fail (info)";
}

int parse_index(const std::string& text, const std::string& id) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(text, &used);
    } catch (const std::exception&) {
        throw ConfigError("bad generator id '" + id + "'");
    }
    if (used != text.size()) throw ConfigError("bad generator id '" + id + "'");
    return v;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot write '" + path + "'");
    f << text;
}

} // namespace

std::vector<std::string> RunConfig::selected_suites() const { return suites.empty() ? suite_names() : suites; }

RunConfig run_config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    static const std::set<std::string> known = {
        "M", "N", "sites", "lines", "nmax", "ordering", "line_orderings", "q", "tol", "suites",
        "negative_controls", "dimension_cap", "cross_line_normal_ordered", "random_q", "seed", "parallel",
        "report_json", "report_markdown"};
    for (const auto& [k, v] : j.items()) {
        if (!known.count(k)) throw ConfigError("unknown config key '" + k + "'");
    }
    RunConfig rc;
    LatticeConfig& c = rc.lattice;
    if (j.contains("M")) c.M = get_as<int>(j, "M");
    if (j.contains("N")) c.N = get_as<int>(j, "N");
    if (j.contains("sites")) c.sites = get_as<int>(j, "sites");
    if (j.contains("lines")) c.lines = get_as<int>(j, "lines");
    if (j.contains("nmax")) c.n_max = get_as<int>(j, "nmax");
    if (j.contains("ordering")) c.ordering = parse_ordering(get_as<std::string>(j, "ordering"));
    if (j.contains("line_orderings")) {
        c.line_orderings.clear();
        for (const auto& s : string_list(j, "line_orderings")) c.line_orderings.push_back(parse_ordering(s));
    }
    if (j.contains("q")) c.q = parse_q(j.at("q"));
    if (j.contains("tol")) c.tol = get_as<double>(j, "tol");
    if (j.contains("dimension_cap")) c.dimension_cap = get_as<std::size_t>(j, "dimension_cap");
    if (j.contains("cross_line_normal_ordered"))
        c.cross_line_normal_ordered = get_as<bool>(j, "cross_line_normal_ordered");
    if (j.contains("negative_controls")) {
        const json& v = j.at("negative_controls");
        if (v.is_boolean()) {
            if (v.get<bool>()) c.faults.flip_q_alpha = true;
        } else {
            for (const auto& name : string_list(j, "negative_controls")) set_fault(c.faults, name);
        }
    }
    if (j.contains("suites")) rc.suites = string_list(j, "suites");
    if (j.contains("random_q")) rc.random_q = get_as<int>(j, "random_q");
    if (j.contains("seed")) rc.seed = get_as<std::uint64_t>(j, "seed");
    if (j.contains("parallel")) rc.parallel = get_as<bool>(j, "parallel");
    if (j.contains("report_json")) rc.report_json = get_as<std::string>(j, "report_json");
    if (j.contains("report_markdown")) rc.report_markdown = get_as<std::string>(j, "report_markdown");
    return rc;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config '" + path + "'");
    json j;
    try {
        j = json::parse(f);
    } catch (const json::exception& e) {
        throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
    return run_config_from_json(j);
}

json config_to_json(const RunConfig& rc) {
    const LatticeConfig& c = rc.lattice;
    json j;
    j["M"] = c.M;
    j["N"] = c.N;
    j["sites"] = c.sites;
    j["lines"] = c.lines;
    j["nmax"] = c.n_max;
    j["ordering"] = to_string(c.ordering);
    j["line_orderings"] = json::array();
    for (auto o : c.line_orderings) j["line_orderings"].push_back(to_string(o));
    if (auto nu = c.q.nu()) j["q"] = {{"nu", *nu}};
    else j["q"] = {{"real", c.q.value().real()}};
    j["tol"] = c.tol;
    j["suites"] = rc.selected_suites();
    j["negative_controls"] = active_faults(c.faults);
    j["dimension_cap"] = c.dimension_cap;
    j["cross_line_normal_ordered"] = c.cross_line_normal_ordered;
    j["random_q"] = rc.random_q;
    j["seed"] = rc.seed;
    return j;
}

std::string config_hash(const RunConfig& cfg) { return fnv1a64(config_to_json(cfg).dump()); }

void validate(const RunConfig& cfg) {
    cfg.lattice.validate();
    cartan_data(cfg.lattice.M, cfg.lattice.N);
    if (cfg.random_q < 0) throw ConfigError("random_q must be >= 0");
    for (const auto& s : cfg.selected_suites()) suite_by_name(s);
    (void)cfg.lattice.dimension();
}

std::vector<RelationReport> run_verification(const RunConfig& cfg) {
    validate(cfg);
    auto names = cfg.selected_suites();
    auto reports = run_suites(cfg.lattice, names, cfg.parallel);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> nu(0.05, 0.45);
    for (int i = 0; i < cfg.random_q; ++i) {
        auto more = run_suites(cfg.lattice.with_q(Deformation::from_nu(nu(rng))), names, cfg.parallel);
        reports.insert(reports.end(), more.begin(), more.end());
    }
    return reports;
}

int exit_code_for(const std::vector<RelationReport>& reports) {
    return all_pass(reports) ? kExitPass : kExitRelationFailure;
}

json report_to_json(const RunConfig& cfg, const std::vector<RelationReport>& reports) {
    json rows = json::array();
    std::size_t passed = 0, failed = 0, info_failed = 0, skipped = 0;
    double worst = 0.0, worst_ratio = 0.0;
    for (const auto& r : reports) {
        json params = json::object();
        for (const auto& [k, v] : r.params) params[k] = v;
        rows.push_back({{"id", r.id},
                        {"equation", r.equation},
                        {"suite", r.suite},
                        {"params", params},
                        {"projector", {{"margin", r.projector.margin}, {"headroom", r.projector.headroom}}},
                        {"residual", r.residual},
                        {"tolerance", r.tolerance},
                        {"pass", r.pass},
                        {"gating", r.gating},
                        {"applicable", r.applicable},
                        {"note", r.note},
                        {"wall_ms", r.wall_ms}});
        if (!r.applicable) ++skipped;
        else if (r.pass) ++passed;
        else if (r.gating) ++failed;
        else ++info_failed;
        if (r.applicable && r.gating) {
            worst = std::max(worst, r.residual);
            worst_ratio = std::max(worst_ratio, r.residual / r.tolerance);
        }
    }
    json j;
    j["schema_version"] = kReportSchemaVersion;
    j["config"] = config_to_json(cfg);
    j["config_hash"] = config_hash(cfg);
    j["summary"] = {{"total", reports.size()},
                    {"passed", passed},
                    {"failed", failed},
                    {"informational_failed", info_failed},
                    {"not_applicable", skipped},
                    {"worst_gating_residual", worst},
                    {"worst_residual_over_tolerance", worst_ratio},
                    {"pass", all_pass(reports)},
                    {"exit_code", exit_code_for(reports)}};
    j["reports"] = std::move(rows);
    return j;
}

std::string markdown_summary(const std::vector<RelationReport>& reports) {
    std::ostringstream os;
    os << "| relation | eq. | residual | projector | pass |\n";
    os << "|---|---|---|---|---|\n";
    for (const auto& r : reports) {
        std::string label = r.id;
        if (!r.params.empty()) {
            label += " (";
            for (std::size_t i = 0; i < r.params.size(); ++i) {
                if (i) label += ", ";
                label += r.params[i].first == "q" ? r.params[i].second : r.params[i].first + "=" + r.params[i].second;
            }
            label += ")";
        }
        os << "| " << label << " | " << r.equation << " | " << (r.applicable ? sci(r.residual) : "-") << " | "
           << r.projector.str() << " | " << status_of(r) << " |\n";
    }
    return os.str();
}

SparseOperator generator_by_id(const FockBasis& basis, const std::string& id, bool deformed) {
    const LatticeConfig& cfg = basis.config();
    if (id.rfind("CW:", 0) == 0) return cartan_weyl_generator(basis, RootLabel::parse(id.substr(3), cfg.M, cfg.N));

    auto cartan = cartan_data(cfg.M, cfg.N);
    auto gens = chevalley_generators(basis, deformed);
    if (id == "Gamma") return central_charge_operator(gens, cartan);

    auto colon = id.find(':');
    if (colon == std::string::npos) throw ConfigError("unknown generator id '" + id + "'");
    std::string head = id.substr(0, colon);
    int alpha = parse_index(id.substr(colon + 1), id);
    if (alpha < 0 || alpha >= cartan.size())
        throw ConfigError("generator id '" + id + "' names a node outside 0.." + std::to_string(cartan.R));
    auto a = static_cast<std::size_t>(alpha);
    if (head == "E+") return gens.Ep[a];
    if (head == "E-") return gens.Em[a];
    if (head == "H") return gens.H[a];
    throw ConfigError("unknown generator id '" + id + "'");
}

void write_operator(std::ostream& os, const SparseOperator& op) {
    auto entries = op.entries();
    os << op.dim() << ' ' << entries.size() << '\n';
    char buf[96];
    for (const auto& e : entries) {
        std::snprintf(buf, sizeof buf, "%zu %zu %.17g %.17g\n", e.row + 1, e.col + 1, e.value.real() + 0.0,
                      e.value.imag() + 0.0);
        os << buf;
    }
}

std::string format_operator(const SparseOperator& op) {
    std::ostringstream os;
    write_operator(os, op);
    return os.str();
}

SparseOperator read_operator(std::istream& is) {
    std::size_t dim = 0, nnz = 0;
    if (!(is >> dim >> nnz)) throw ConfigError("operator file: missing 'dim nnz' header");
    std::vector<Entry> entries;
    entries.reserve(nnz);
    for (std::size_t k = 0; k < nnz; ++k) {
        std::size_t row = 0, col = 0;
        std::string re, im;
        if (!(is >> row >> col >> re >> im)) throw ConfigError("operator file: truncated at entry " + std::to_string(k + 1));
        if (row < 1 || col < 1 || row > dim || col > dim)
            throw ConfigError("operator file: index out of range at entry " + std::to_string(k + 1));
        auto number = [&](const std::string& text) {
            char* end = nullptr;
            const double v = std::strtod(text.c_str(), &end);
            if (end != text.c_str() + text.size())
                throw ConfigError("operator file: bad number '" + text + "' at entry " + std::to_string(k + 1));
            return v;
        };
        entries.push_back({row - 1, col - 1, Complex{number(re), number(im)}});
    }
    return SparseOperator::from_entries(dim, entries);
}

std::string catalog_text() {
    std::ostringstream os;
    for (const auto& e : relation_catalog()) {
        os << std::left << std::setw(15) << e.suite << std::setw(22) << e.id << std::setw(20) << e.equation
           << e.summary << (e.gating ? "" : "  [informational]") << '\n';
    }
    return os.str();
}

namespace {

struct LatticeFlags {
    std::string config;
    int M = 0, N = 0, sites = 0, lines = 0, nmax = 0;
    std::string ordering;
    std::vector<std::string> line_orderings;
    double nu = 0.0, real_q = 0.0, tol = 0.0;
    std::size_t dimension_cap = 0;
    bool bare_cross_line = false;

    CLI::Option *o_M{}, *o_N{}, *o_sites{}, *o_lines{}, *o_nmax{}, *o_ordering{}, *o_line_orderings{}, *o_nu{},
        *o_real{}, *o_tol{}, *o_cap{}, *o_bare{};

    void attach(CLI::App* app) {
        app->add_option("-c,--config", config, "JSON config file (default: $QSUPER_CONFIG)");
        o_M = app->add_option("-M", M, "fermionic flavors");
        o_N = app->add_option("-N", N, "bosonic flavors");
        o_sites = app->add_option("-S,--sites", sites, "sites per line (even)");
        o_lines = app->add_option("-K,--lines", lines, "number of lines");
        o_nmax = app->add_option("--nmax", nmax, "boson occupation cutoff");
        o_ordering = app->add_option("--ordering", ordering, "sea or empty");
        o_line_orderings = app->add_option("--line-orderings", line_orderings, "ordering per line")->delimiter(',');
        o_nu = app->add_option("--nu", nu, "q = exp(i pi nu)");
        o_real = app->add_option("--real-q", real_q, "positive real q");
        o_nu->excludes(o_real);
        o_tol = app->add_option("--tol", tol, "residual tolerance");
        o_cap = app->add_option("--dimension-cap", dimension_cap, "largest basis dimension allowed");
        o_bare = app->add_flag("--bare-cross-line", bare_cross_line, "cross-line disorder uses bare n");
    }

    RunConfig load() const {
        RunConfig rc;
        std::string path = config;
        if (path.empty()) {
            if (const char* env = std::getenv(kConfigEnvVar); env && *env) path = env;
        }
        if (!path.empty()) rc = load_run_config(path);
        LatticeConfig& c = rc.lattice;
        if (o_M->count()) c.M = M;
        if (o_N->count()) c.N = N;
        if (o_sites->count()) c.sites = sites;
        if (o_lines->count()) c.lines = lines;
        if (o_nmax->count()) c.n_max = nmax;
        if (o_ordering->count()) c.ordering = parse_ordering(ordering);
        if (o_line_orderings->count()) {
            c.line_orderings.clear();
            for (const auto& s : line_orderings) c.line_orderings.push_back(parse_ordering(s));
        }
        if (o_nu->count()) c.q = Deformation::from_nu(nu);
        if (o_real->count()) c.q = Deformation::from_real(real_q);
        if (o_tol->count()) c.tol = tol;
        if (o_cap->count()) c.dimension_cap = dimension_cap;
        if (o_bare->count()) c.cross_line_normal_ordered = false;
        return rc;
    }
};

int cmd_verify(const RunConfig& rc, bool quiet, std::ostream& out) {
    auto reports = run_verification(rc);
    int code = exit_code_for(reports);
    std::string md = markdown_summary(reports);
    if (!rc.report_json.empty()) write_text(rc.report_json, report_to_json(rc, reports).dump(2) + "\n");
    if (!rc.report_markdown.empty()) write_text(rc.report_markdown, md);
    if (!quiet) out << md << '\n';
    auto summary = report_to_json(rc, reports)["summary"];
    out << (code == kExitPass ? "PASS" : "FAIL") << ": " << summary["passed"].get<std::size_t>() << " passed, "
        << summary["failed"].get<std::size_t>() << " failed, " << summary["informational_failed"].get<std::size_t>()
        << " informational failures, " << summary["not_applicable"].get<std::size_t>()
        << " not applicable; worst residual/tolerance " << sci(summary["worst_residual_over_tolerance"].get<double>())
        << "; config " << config_hash(rc) << '\n';
    return code;
}

} // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lattice realizations of the quantum affine superalgebra, checked relation by relation"};
    app.require_subcommand(1);

    LatticeFlags vflags;
    std::vector<std::string> suites, faults;
    bool negative = false, quiet = false, serial = false;
    std::string json_out, md_out;
    int random_q = -1;
    std::uint64_t seed = 0;
    auto* verify = app.add_subcommand("verify", "run relation suites and report residuals");
    vflags.attach(verify);
    auto* o_suite = verify->add_option("--suite", suites, "suite to run (repeatable)")->delimiter(',');
    auto* o_neg = verify->add_flag("--negative-controls", negative, "corrupt the q_alpha map; must fail");
    auto* o_fault = verify->add_option("--fault", faults, "named negative control (repeatable)")->delimiter(',');
    auto* o_json = verify->add_option("--json", json_out, "write the JSON report here");
    auto* o_md = verify->add_option("--markdown", md_out, "write the markdown summary here");
    auto* o_rq = verify->add_option("--random-q", random_q, "extra runs at random nu");
    auto* o_seed = verify->add_option("--seed", seed, "seed for --random-q");
    verify->add_flag("--serial", serial, "run suites one after another");
    verify->add_flag("-q,--quiet", quiet, "print only the summary line");

    LatticeFlags eflags;
    std::string id, output;
    bool undeformed = false;
    auto* exporter = app.add_subcommand("export", "write one generator as a coordinate list");
    eflags.attach(exporter);
    exporter->add_option("id", id, "E+:a, E-:a, H:a, Gamma or CW:<root>[:m=k]")->required();
    exporter->add_option("-o,--output", output, "output file (default stdout)");
    exporter->add_flag("--undeformed", undeformed, "oscillator instead of anyonic generators");

    auto* list = app.add_subcommand("list", "print the relation catalog");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitConfigError;
    }

    try {
        if (list->parsed()) {
            out << catalog_text();
            return kExitPass;
        }
        if (verify->parsed()) {
            RunConfig rc = vflags.load();
            if (o_suite->count()) rc.suites = suites;
            if (o_neg->count()) rc.lattice.faults.flip_q_alpha = true;
            if (o_fault->count())
                for (const auto& f : faults) set_fault(rc.lattice.faults, f);
            if (o_json->count()) rc.report_json = json_out;
            if (o_md->count()) rc.report_markdown = md_out;
            if (o_rq->count()) rc.random_q = random_q;
            if (o_seed->count()) rc.seed = seed;
            if (serial) rc.parallel = false;
            return cmd_verify(rc, quiet, out);
        }
        RunConfig rc = eflags.load();
        validate(rc);
        auto basis = build_basis(rc.lattice);
        auto op = generator_by_id(basis, id, !undeformed);
        if (output.empty()) {
            write_operator(out, op);
        } else {
            std::ofstream f(output);
            if (!f) throw ConfigError("cannot write '" + output + "'");
            write_operator(f, op);
        }
        return kExitPass;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const InstanceTooLarge& e) {
        err << e.what() << '\n';
        return kExitTooLarge;
    } catch (const OperatorError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    }
}

} // namespace qsuper
