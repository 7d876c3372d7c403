#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <unistd.h>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "brlkit/errors.hpp"
#include "brlkit/io.hpp"
#include "cli.hpp"
#include "support/test_systems.hpp"

using namespace brlkit;
using namespace brlkit::testing;
using nlohmann::json;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("brlkit_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(reinterpret_cast<uintptr_t>(this)));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name, const std::string& content) const {
    const auto full = path / name;
    std::ofstream out(full);
    out << content;
    return full.string();
  }
};

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = brlkit::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json strip_elapsed(const std::string& text) {
  json doc = json::parse(text);
  doc.erase("elapsed_ms");
  return doc;
}

}  // namespace

TEST_CASE("system file round trip is bit-exact") {
  Rng rng(101);
  const SystemRealization sys = random_stable(rng, 4, 2, 3, 0.9);
  const SystemRealization back = parse_system_string(to_json_string(sys));
  CHECK(back.n_state == sys.n_state);
  CHECK((back.A.array() == sys.A.array()).all());
  CHECK((back.B.array() == sys.B.array()).all());
  CHECK((back.C.array() == sys.C.array()).all());
  CHECK((back.D.array() == sys.D.array()).all());
}

TEST_CASE("empty-state files parse to F = D") {
  const std::string text = R"({"n_state": 0, "n_in": 2, "n_out": 1,
    "A": [], "B": [], "C": [[]], "D": [[1.5, [0, -2]]]})";
  const SystemRealization sys = parse_system_string(text);
  CHECK(sys.n_state == 0);
  CHECK(sys.D(0, 0) == Complex(1.5, 0.0));
  CHECK(sys.D(0, 1) == Complex(0.0, -2.0));
  const TransferSample sample = eval_transfer(sys, Complex(0.3, 0.2));
  CHECK((sample.value - sys.D).norm() == 0.0);
}

TEST_CASE("schema violations name the offending field") {
  SUBCASE("wrong row count") {
    const std::string text = R"({"n_state": 2, "n_in": 3, "n_out": 1,
      "A": [[0, 0, 0], [0, 0, 0]], "B": [[0,0,0],[0,0,0]], "C": [[0, 0]], "D": [[0,0,0]]})";
    try {
      parse_system_string(text);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SchemaError);
      CHECK(std::string(e.what()).find("\"A\"") != std::string::npos);
    }
  }
  SUBCASE("bad entry shape") {
    const std::string text = R"({"n_state": 1, "n_in": 1, "n_out": 1,
      "A": [[[1, 2, 3]]], "B": [[1]], "C": [[1]], "D": [[0]]})";
    try {
      parse_system_string(text);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SchemaError);
      CHECK(std::string(e.what()).find("row 0, col 0") != std::string::npos);
    }
  }
  SUBCASE("missing matrix") {
    const std::string text = R"({"n_state": 0, "n_in": 0, "n_out": 0, "A": [], "B": [], "C": []})";
    CHECK_THROWS_AS(parse_system_string(text), Error);
  }
  SUBCASE("invalid JSON is a schema error") {
    CHECK_THROWS_AS(parse_system_string("{"), Error);
  }
}

TEST_CASE("real entries and [re, im] pairs are interchangeable on input") {
  const std::string text = R"({"n_state": 1, "n_in": 1, "n_out": 1,
    "A": [[[0.5, 0]]], "B": [[1]], "C": [[1.0]], "D": [[[0, 0.25]]]})";
  const SystemRealization sys = parse_system_string(text);
  CHECK(sys.A(0, 0) == Complex(0.5, 0.0));
  CHECK(sys.D(0, 0) == Complex(0.0, 0.25));
}

TEST_CASE("CLI eval") {
  TempDir dir;
  const std::string path = dir.file("sys.json",
                                    R"({"n_state": 1, "n_in": 1, "n_out": 1,
      "A": [[2]], "B": [[1]], "C": [[1]], "D": [[0]]})");
  const CliResult r = run_cli({"eval", path, "--z", "0.25", "--json"});
  CHECK(r.code == 0);
  const json report = json::parse(r.out);
  CHECK(report["command"] == "eval");
  CHECK(report["result"]["value"][0][0][0].get<double>() == doctest::Approx(0.5));

  // singular resolvent: 1/z = spec(A)
  const CliResult bad = run_cli({"eval", path, "--z", "0.5"});
  CHECK(bad.code == 3);
}

TEST_CASE("CLI determinism modulo elapsed_ms") {
  TempDir dir;
  Rng rng(102);
  const SystemRealization sys = random_stable(rng, 3, 2, 2, 0.7);
  const std::string path = dir.file("sys.json", to_json_string(sys));
  const CliResult a = run_cli({"classify", path, "--json"});
  const CliResult b = run_cli({"classify", path, "--json"});
  CHECK(a.code == b.code);
  CHECK(strip_elapsed(a.out) == strip_elapsed(b.out));
}

TEST_CASE("CLI kyp-solve and kyp-strict") {
  TempDir dir;
  Rng rng(103);
  SystemRealization sys = random_stable(rng, 3, 2, 2, 0.75);
  sys = scale_io(sys, 0.6 / sample_norm(sys, 1024, 1.0));
  const std::string path = dir.file("sys.json", to_json_string(sys));

  const CliResult solve = run_cli({"kyp-solve", path, "--json", "--tol", "1e-11"});
  CHECK(solve.code == 0);
  const json cert = json::parse(solve.out)["result"];
  CHECK(cert["mode"] == "standard");
  CHECK(cert["margin"].get<double>() >= -1e-9);

  const CliResult strict = run_cli({"kyp-strict", path, "--json", "--tol", "1e-11"});
  CHECK(strict.code == 0);
  const json scert = json::parse(strict.out)["result"];
  CHECK(scert["mode"] == "strict");
  CHECK(scert["margin"].get<double>() > 0.0);
  CHECK(scert["epsilon"].get<double>() > 0.0);

  // kyp-check accepts the emitted certificate as its H input
  const std::string hpath = dir.file("cert.json", scert.dump());
  const CliResult check = run_cli({"kyp-check", path, "--h-file", hpath, "--json"});
  CHECK(check.code == 0);
  CHECK(json::parse(check.out)["result"]["holds"].get<bool>());

  // an infeasible instance exits 1
  SystemRealization loud = scale_io(sys, 5.0 / sample_norm(sys, 512, 1.0));
  const std::string loud_path = dir.file("loud.json", to_json_string(loud));
  const CliResult infeasible = run_cli({"kyp-solve", loud_path});
  CHECK(infeasible.code == 1);
}

TEST_CASE("CLI similarity") {
  TempDir dir;
  Rng rng(104);
  const SystemRealization a = random_minimal_stable(rng, 3, 2, 2, 0.8);
  const SystemRealization b = transform_system(a, random_well_conditioned(rng, 3, 20.0));
  const std::string pa = dir.file("a.json", to_json_string(a));
  const std::string pb = dir.file("b.json", to_json_string(b));
  const CliResult r = run_cli({"similarity", pa, pb, "--json"});
  CHECK(r.code == 0);
  const json report = json::parse(r.out);
  CHECK(report["result"]["valid"].get<bool>());
  CHECK(report["result"]["residuals"]["r_inv"].get<double>() <= 1e-8);

  // non-minimal pair without --reduce is refused with exit 1
  Matrix A2 = Matrix::Zero(2, 2);
  A2(0, 0) = 0.5;
  A2(1, 1) = 0.25;
  Matrix B2(2, 1), C2(1, 2), D2(1, 1);
  B2 << 1, 0;
  C2 << 1, 0;
  D2 << 0;
  const SystemRealization padded = SystemRealization::make(A2, B2, C2, D2);
  const SystemRealization scalar = scalar_system(0.5, 1.0, 1.0, 0.0);
  const std::string pp = dir.file("p.json", to_json_string(padded));
  const std::string ps = dir.file("s.json", to_json_string(scalar));
  CHECK(run_cli({"similarity", pp, ps}).code == 1);
  CHECK(run_cli({"similarity", pp, ps, "--reduce"}).code == 0);
}

TEST_CASE("CLI hinf") {
  TempDir dir;
  const std::string unstable = dir.file("unstable.json",
                                        R"({"n_state": 1, "n_in": 1, "n_out": 1,
      "A": [[2]], "B": [[1]], "C": [[1]], "D": [[0]]})");
  const CliResult r = run_cli({"hinf", unstable, "--json"});
  CHECK(r.code == 1);
  CHECK(r.err.find("spectral radius 2") != std::string::npos);
  const json report = json::parse(r.out);
  CHECK(report["result"]["classification"] == "unstable");

  const std::string scalar = dir.file("scalar.json",
                                      R"({"n_state": 1, "n_in": 1, "n_out": 1,
      "A": [[0.5]], "B": [[1]], "C": [[1]], "D": [[0]]})");
  const CliResult c = run_cli({"hinf", scalar, "--json", "--certify", "--tol", "1e-7",
                               "--samples", "4096"});
  CHECK(c.code == 0);
  const json bound = json::parse(c.out)["result"]["bound"];
  CHECK(bound["lower"].get<double>() <= 2.0 + 1e-12);
  CHECK(bound["upper"].get<double>() >= 2.0 - 1e-12);
  CHECK(bound["upper"].get<double>() - bound["lower"].get<double>() <= 1e-6);
  CHECK(json::parse(c.out)["result"]["classification"] == "outside");
}

TEST_CASE("CLI probe") {
  const CliResult shift = run_cli({"probe", "--kind", "shift", "--n", "3", "--json"});
  CHECK(shift.code == 0);
  const json sys = json::parse(shift.out)["result"]["system"];
  CHECK(sys["n_state"] == 3);
  CHECK(sys["A"][1][0][0].get<double>() == 1.0);

  const CliResult div = run_cli({"probe", "--kind", "divergence", "--n", "10", "--json"});
  CHECK(div.code == 0);
  const json result = json::parse(div.out)["result"];
  CHECK(result["growth_ratio"].get<double>() == doctest::Approx(2.0).epsilon(1e-5));

  CHECK(run_cli({"probe", "--kind", "nonsense", "--n", "3"}).code == 2);
}

TEST_CASE("CLI usage and IO errors exit 2") {
  CHECK(run_cli({"no-such-command"}).code == 2);
  CHECK(run_cli({"eval", "/nonexistent.json", "--z", "0.5"}).code == 2);
  TempDir dir;
  const std::string bad = dir.file("bad.json", "{ not json");
  CHECK(run_cli({"classify", bad}).code == 2);
}

TEST_CASE("CLI simulate and moments") {
  TempDir dir;
  const std::string path = dir.file("sys.json",
                                    R"({"n_state": 1, "n_in": 1, "n_out": 1,
      "A": [[0.5]], "B": [[1]], "C": [[1]], "D": [[0]]})");
  const std::string input = dir.file("input.json",
                                     R"({"x0": [0], "inputs": [[1], [1], [1]]})");
  const CliResult sim = run_cli({"simulate", path, "--input", input, "--json"});
  CHECK(sim.code == 0);
  const json traj = json::parse(sim.out)["result"];
  CHECK(traj["states"][3][0][0].get<double>() == doctest::Approx(1.75));

  const CliResult imp = run_cli({"simulate", path, "--impulse", "0", "--steps", "4", "--json"});
  CHECK(imp.code == 0);

  const CliResult mom = run_cli({"moments", path, "--count", "3", "--json"});
  CHECK(mom.code == 0);
  CHECK(json::parse(mom.out)["result"]["coefficients"][1][0][0][0].get<double>() ==
        doctest::Approx(1.0));
}

TEST_CASE("CLI minimal writes a reduced system") {
  TempDir dir;
  const std::string path = dir.file("padded.json",
                                    R"({"n_state": 2, "n_in": 1, "n_out": 1,
      "A": [[0.5, 0], [0, 0.25]], "B": [[1], [0]], "C": [[1, 0]], "D": [[0]]})");
  const std::string out_path = (dir.path / "reduced.json").string();
  const CliResult r = run_cli({"minimal", path, "--out", out_path, "--json"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["result"]["reduced_dim"] == 1);
  const SystemRealization reduced = parse_system_file(out_path);
  CHECK(reduced.n_state == 1);
}

TEST_CASE("BRLKIT_TOL environment override reaches the tolerance default") {
  TempDir dir;
  Rng rng(105);
  const SystemRealization sys = random_minimal_stable(rng, 2, 1, 1, 0.6);
  const std::string path = dir.file("sys.json", to_json_string(sys));
  ::setenv("BRLKIT_TOL", "0.5", 1);
  const CliResult loose = run_cli({"similarity", path, path, "--json"});
  ::unsetenv("BRLKIT_TOL");
  CHECK(loose.code == 0);
}
