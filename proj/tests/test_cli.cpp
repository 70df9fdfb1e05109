#include "doctest.h"

#include "qsuper/cli.hpp"
#include "qsuper/errors.hpp"
#include "qsuper/verify.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <sys/wait.h>

using namespace qsuper;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    args.insert(args.begin(), "qsuper");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("qsuper_test_" + name);
}

void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream f(p);
    f << text;
}

std::string read_text(const std::filesystem::path& p) {
    std::ifstream f(p);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("config parsing: defaults and every key") {
    const auto d = run_config_from_json(json::object());
    CHECK(d.lattice.M == 2);
    CHECK(d.lattice.N == 1);
    CHECK(d.selected_suites() == suite_names());
    CHECK_FALSE(d.negative_controls());

    const auto j = json::parse(R"({
        "M": 2, "N": 2, "sites": 4, "lines": 1, "nmax": 1, "ordering": "empty",
        "q": {"real": 1.3}, "tol": 1e-9, "suites": ["quantum", "serre"],
        "negative_controls": ["drop_h0_delta"], "dimension_cap": 500000,
        "cross_line_normal_ordered": false, "random_q": 2, "seed": 7, "parallel": false,
        "report_json": "r.json", "report_markdown": "r.md"})");
    const auto c = run_config_from_json(j);
    CHECK(c.lattice.N == 2);
    CHECK(c.lattice.sites == 4);
    CHECK(c.lattice.n_max == 1);
    CHECK(c.lattice.ordering == Ordering::empty);
    CHECK(c.lattice.q.describe() == "q=1.3");
    CHECK(c.lattice.tol == 1e-9);
    CHECK(c.suites == std::vector<std::string>{"quantum", "serre"});
    CHECK(c.lattice.faults.drop_h0_delta);
    CHECK_FALSE(c.lattice.faults.flip_q_alpha);
    CHECK(c.lattice.dimension_cap == 500000);
    CHECK_FALSE(c.lattice.cross_line_normal_ordered);
    CHECK(c.random_q == 2);
    CHECK(c.seed == 7);
    CHECK_FALSE(c.parallel);
    CHECK(c.report_json == "r.json");

    const auto b = run_config_from_json(json::parse(R"({"negative_controls": true})"));
    CHECK(b.lattice.faults.flip_q_alpha);
    const auto lo = run_config_from_json(json::parse(R"({"lines": 2, "line_orderings": ["sea", "empty"]})"));
    CHECK(lo.lattice.line_orderings == std::vector<Ordering>{Ordering::sea, Ordering::empty});
}

TEST_CASE("config parsing rejects malformed input") {
    for (const char* bad : {
             R"({"q": {"nu": 0.3, "real": 1.3}})",
             R"({"q": {}})",
             R"({"q": 0.3})",
             R"({"Q": 1})",
             R"({"M": "two"})",
             R"({"M": 2.5})",
             R"({"suites": "quantum"})",
             R"({"ordering": "full"})",
             R"({"negative_controls": ["no_such_fault"]})",
             R"([1, 2])",
         }) {
        CAPTURE(bad);
        CHECK_THROWS_AS(run_config_from_json(json::parse(bad)), ConfigError);
    }
    CHECK_THROWS_AS(load_run_config("/nonexistent/qsuper.json"), ConfigError);
    const auto p = temp_file("broken.json");
    write_text(p, "{ not json");
    CHECK_THROWS_AS(load_run_config(p.string()), ConfigError);
    std::filesystem::remove(p);
}

TEST_CASE("validation happens before any basis is built") {
    RunConfig c;
    c.lattice.M = 1;
    c.lattice.N = 1;
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = RunConfig{};
    c.lattice.sites = 3;
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = RunConfig{};
    c.suites = {"nonsense"};
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = RunConfig{};
    c.lattice.M = 3;
    c.lattice.N = 3;
    c.lattice.sites = 4;
    CHECK_THROWS_AS(validate(c), InstanceTooLarge);
    CHECK_NOTHROW(validate(RunConfig{}));
}

TEST_CASE("config hash is stable, round-trips, and ignores output paths") {
    RunConfig a;
    a.lattice.N = 2;
    a.suites = {"quantum"};
    const auto h = config_hash(a);
    CHECK(h.size() == 16);
    CHECK(h.find_first_not_of("0123456789abcdef") == std::string::npos);
    CHECK(config_hash(run_config_from_json(config_to_json(a))) == h);
    CHECK(config_to_json(run_config_from_json(config_to_json(a))) == config_to_json(a));

    auto b = a;
    b.report_json = "elsewhere.json";
    b.report_markdown = "elsewhere.md";
    b.parallel = false;
    CHECK(config_hash(b) == h);

    auto c = a;
    c.lattice.q = Deformation::from_nu(0.31);
    CHECK(config_hash(c) != h);
    c = a;
    c.lattice.faults.flip_boson_disorder = true;
    CHECK(config_hash(c) != h);
    c = a;
    c.seed = 2;
    CHECK(config_hash(c) != h);
}

TEST_CASE("exit codes") {
    CHECK(cli({"verify", "-q"}).code == kExitPass);
    CHECK(cli({"verify", "-q", "--negative-controls", "--suite", "coproduct"}).code == kExitRelationFailure);
    CHECK(cli({"verify", "-q", "--fault", "drop_h0_delta", "--suite", "quantum"}).code == kExitRelationFailure);
    CHECK(cli({"verify", "-M", "1", "-N", "1"}).code == kExitConfigError);
    CHECK(cli({"verify", "--suite", "nonsense"}).code == kExitConfigError);
    CHECK(cli({"verify", "--nu", "0.3", "--real-q", "1.3"}).code == kExitConfigError);
    CHECK(cli({"verify", "--no-such-flag"}).code == kExitConfigError);
    CHECK(cli({"verify", "-c", "/nonexistent/qsuper.json"}).code == kExitConfigError);
    const auto big = cli({"verify", "-M", "3", "-N", "3", "-S", "4"});
    CHECK(big.code == kExitTooLarge);
    CHECK_FALSE(big.err.empty());
    CHECK(cli({"--help"}).code == kExitPass);
    CHECK(cli({"export", "Nope:1"}).code == kExitConfigError);
    CHECK(cli({"export", "E+:9"}).code == kExitConfigError);
}

TEST_CASE("the installed binary reports the same exit codes") {
    const std::string bin = QSUPER_CLI_PATH;
    auto status = [&](const std::string& args) {
        const int raw = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    CHECK(status("verify -q --suite oscillators") == kExitPass);
    CHECK(status("verify -q --suite coproduct --negative-controls") == kExitRelationFailure);
    CHECK(status("verify -M 1 -N 1") == kExitConfigError);
    CHECK(status("verify -M 3 -N 3 -S 4") == kExitTooLarge);
}

TEST_CASE("command-line flags override the config file; the environment supplies a default") {
    const auto p = temp_file("cfg.json");
    write_text(p, R"({"N": 2, "q": {"real": 1.3}, "suites": ["quantum"]})");
    const auto json_out = temp_file("report.json");

    auto r = cli({"verify", "-q", "-c", p.string(), "--json", json_out.string()});
    CHECK(r.code == kExitPass);
    auto rep = json::parse(read_text(json_out));
    CHECK(rep["config"]["N"] == 2);
    CHECK(rep["config"]["q"]["real"] == 1.3);

    r = cli({"verify", "-q", "-c", p.string(), "-N", "1", "--nu", "0.2", "--json", json_out.string()});
    CHECK(r.code == kExitPass);
    rep = json::parse(read_text(json_out));
    CHECK(rep["config"]["N"] == 1);
    CHECK(rep["config"]["q"]["nu"] == 0.2);
    CHECK(rep["config"]["suites"] == json::array({"quantum"}));

    ::setenv(kConfigEnvVar, p.string().c_str(), 1);
    r = cli({"verify", "-q", "--json", json_out.string()});
    ::unsetenv(kConfigEnvVar);
    CHECK(r.code == kExitPass);
    rep = json::parse(read_text(json_out));
    CHECK(rep["config"]["N"] == 2);

    std::filesystem::remove(p);
    std::filesystem::remove(json_out);
}

TEST_CASE("JSON report and markdown summary") {
    RunConfig c;
    c.suites = {"oscillators", "quantum", "serre"};
    const auto reports = run_verification(c);
    const auto j = report_to_json(c, reports);
    CHECK(j["schema_version"] == kReportSchemaVersion);
    CHECK(j["config_hash"] == config_hash(c));
    CHECK(j["reports"].size() == reports.size());
    const auto& s = j["summary"];
    for (const char* key : {"total", "passed", "failed", "informational_failed", "not_applicable",
                            "worst_gating_residual", "worst_residual_over_tolerance", "pass", "exit_code"})
        CHECK(s.contains(key));
    CHECK(s["total"] == reports.size());
    CHECK(s["pass"] == true);
    CHECK(s["exit_code"] == exit_code_for(reports));
    CHECK(s["worst_residual_over_tolerance"].get<double>() <= 1.0);
    for (const auto& r : j["reports"]) {
        for (const char* key : {"id", "equation", "suite", "params", "projector", "residual", "tolerance", "pass",
                                "gating", "applicable", "note", "wall_ms"})
            CHECK(r.contains(key));
        CHECK(r["projector"].contains("margin"));
        CHECK(r["projector"].contains("headroom"));
    }

    const auto md = markdown_summary(reports);
    CHECK(md.rfind("| relation | eq. | residual | projector | pass |", 0) == 0);
    CHECK(md.find("eq9-alphaM") != std::string::npos);
    CHECK(md.find("fail (info)") != std::string::npos);
    CHECK(md.find("| FAIL |") == std::string::npos);

    const auto md_out = temp_file("summary.md");
    const auto r = cli({"verify", "-q", "--suite", "oscillators", "--markdown", md_out.string()});
    CHECK(r.code == kExitPass);
    CHECK(read_text(md_out).find("eq49a") != std::string::npos);
    CHECK(r.out.rfind("PASS: ", 0) == 0);
    std::filesystem::remove(md_out);
}

TEST_CASE("verbose output is the table followed by the summary line") {
    const auto r = cli({"verify", "--suite", "coproduct", "--negative-controls"});
    CHECK(r.code == kExitRelationFailure);
    CHECK(r.out.find("| relation |") != std::string::npos);
    CHECK(r.out.find("| FAIL |") != std::string::npos);
    CHECK(r.out.find("FAIL: ") != std::string::npos);
    CHECK(r.out.find("config ") != std::string::npos);
}

TEST_CASE("random_q adds deterministic runs at other deformations") {
    RunConfig c;
    c.suites = {"oscillators"};
    const auto base = run_verification(c).size();
    c.random_q = 2;
    c.seed = 11;
    const auto a = run_verification(c);
    const auto b = run_verification(c);
    CHECK(a.size() == 3 * base);
    REQUIRE(a.size() == b.size());
    std::set<std::string> qs;
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].id == b[i].id);
        CHECK(a[i].residual == b[i].residual);
        CHECK(a[i].params == b[i].params);
        if (a[i].applicable) CHECK(a[i].pass);
        qs.insert(a[i].param("q"));
    }
    CHECK(qs.size() == 3);
}

TEST_CASE("export writes a 1-based coordinate list") {
    const auto r = cli({"export", "H:1"});
    REQUIRE(r.code == kExitPass);
    std::istringstream is(r.out);
    const auto H = read_operator(is);
    CHECK(H.is_diagonal());
    CHECK(H.dim() == 144);
    for (auto v : H.diagonal_values()) {
        CHECK(v.real() == std::round(v.real()));
        CHECK(v.imag() == 0.0);
    }
    std::istringstream header(r.out);
    std::size_t dim = 0, nnz = 0;
    header >> dim >> nnz;
    CHECK(dim == 144);
    CHECK(nnz == H.nnz());
}

TEST_CASE("export at q = 1 matches the undeformed generator") {
    for (const char* id : {"E+:1", "E-:2", "E+:0", "Gamma"}) {
        CAPTURE(id);
        const auto a = cli({"export", id, "--real-q", "1"});
        const auto b = cli({"export", id, "--undeformed"});
        REQUIRE(a.code == kExitPass);
        REQUIRE(b.code == kExitPass);
        std::istringstream sa(a.out), sb(b.out);
        CHECK(residual_norm(read_operator(sa) - read_operator(sb)) <= 1e-14);
    }
}

TEST_CASE("export to a file and read back exactly") {
    const auto p = temp_file("op.txt");
    REQUIRE(cli({"export", "E+:2", "-N", "2", "--nu", "0.27", "-o", p.string()}).code == kExitPass);
    std::ifstream f(p);
    const auto op = read_operator(f);
    LatticeConfig c;
    c.N = 2;
    c.q = Deformation::from_nu(0.27);
    const auto basis = build_basis(c);
    const auto direct = generator_by_id(basis, "E+:2", true);
    CHECK(residual_norm(op - direct) == 0.0);
    CHECK(format_operator(op) == format_operator(direct));
    std::filesystem::remove(p);
}

TEST_CASE("generator ids") {
    const auto basis = build_basis(LatticeConfig{});
    const auto gens = chevalley_generators(basis, true);
    CHECK(residual_norm(generator_by_id(basis, "E+:1", true) - gens.Ep[1]) == 0.0);
    CHECK(residual_norm(generator_by_id(basis, "E-:0", true) - gens.Em[0]) == 0.0);
    CHECK(residual_norm(generator_by_id(basis, "H:2", true) - gens.H[2]) == 0.0);
    const auto plain = chevalley_generators(basis, false);
    CHECK(residual_norm(generator_by_id(basis, "CW:eps1-eps2", false) - plain.Ep[1]) <= 1e-14);
    CHECK(residual_norm(generator_by_id(basis, "CW:eps2-delta1:m=0", false) - plain.Ep[2]) <= 1e-14);
    CHECK(generator_by_id(basis, "CW:h1:m=1", false).nnz() > 0);
    CHECK(generator_by_id(basis, "Gamma", true).is_diagonal());
    for (const char* bad : {"", "E+", "E+:x", "E+:3", "H:-1", "CW:", "CW:eps1-eps9", "CW:h1:m=x", "X:1"}) {
        CAPTURE(bad);
        CHECK_THROWS(generator_by_id(basis, bad, true));
    }
}

TEST_CASE("read_operator rejects malformed files") {
    for (const char* bad : {"", "2", "2 1\n3 1 1 0\n", "2 2\n1 1 1 0\n", "2 1\n1 1 x 0\n"}) {
        CAPTURE(bad);
        std::istringstream is(bad);
        CHECK_THROWS_AS(read_operator(is), ConfigError);
    }
    std::istringstream ok("2 1\n1 2 0.5 -0.25\n");
    const auto op = read_operator(ok);
    CHECK(op.coeff(0, 1) == Complex{0.5, -0.25});
}

TEST_CASE("negative zero is written as zero") {
    const std::vector<Entry> e = {{0, 0, Complex{2.0, -0.0}}, {1, 1, Complex{-0.0, 1.0}}};
    const auto op = SparseOperator::from_entries(2, e);
    CHECK(format_operator(op).find("-0") == std::string::npos);
}

TEST_CASE("list prints the catalog with equation tags") {
    const auto r = cli({"list"});
    CHECK(r.code == kExitPass);
    CHECK(r.out == catalog_text());
    CHECK(r.out.find("eq7c") != std::string::npos);
    CHECK(r.out.find("Eq. (7c)") != std::string::npos);
    CHECK(r.out.find("eq9-alpha0-cyclic") != std::string::npos);
    CHECK(r.out.find("eq9-alpha0-skip") != std::string::npos);
    CHECK(r.out.find("[informational]") != std::string::npos);
    std::size_t lines = 0;
    for (char ch : r.out) lines += ch == '\n';
    CHECK(lines == relation_catalog().size());
}
