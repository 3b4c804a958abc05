#include "helpers.hpp"

#include "susylab/cli/commands.hpp"
#include "susylab/cli/config.hpp"
#include "susylab/cli/output.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace susylab;
using namespace susylab::cli;
namespace fs = std::filesystem;

namespace {

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("susylab_cli_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string file(const std::string& name, const std::string& text) const {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const fs::path& p) { return Json::parse(slurp(p)); }

const char* kSmallWitten = R"(
[model]
family = witten
potential = quartic_double_well(1)
gamma = 1

[analysis]
lo = -2.5
hi = 2.5

[grid]
lo = -2.5
hi = 2.5
spacing_over_h = 0.05

[solver]
h = 0.2
k = 4

[sde]
n_traj = 4
dt = 0.01
t_end = 1
stride = 10
seed = 5
x0 = -1
h = 0.5
)";

}  // namespace

TEST_CASE("config parsing") {
  const auto c = ExperimentConfig::parse("; note\n[a]\nx = 1, 2 3\ny = 2.5\nn = 7\nb = true\n[b]\nseed = 4\n");
  CHECK(c.reals("a", "x") == std::vector<double>{1, 2, 3});
  CHECK(c.real("a", "y") == 2.5);
  CHECK(c.integer("a", "n") == 7);
  CHECK(c.flag("a", "b", false));
  CHECK(c.real("a", "missing", 9.0) == 9.0);
  CHECK_ERROR_KIND(c.real("a", "missing"), ErrorKind::ConfigError);
  CHECK_ERROR_KIND(c.integer("a", "y"), ErrorKind::ConfigError);
  auto d = c;
  d.override_seed(11);
  CHECK(d.u64("b", "seed", 0) == 11);
  CHECK(!d.has("a", "seed"));
  CHECK_ERROR_KIND(ExperimentConfig::load("/nonexistent/file.cfg"), ErrorKind::IoError);
}

TEST_CASE("config hash is canonical") {
  const auto a = ExperimentConfig::parse("[m]\nx = 1\ny = 2\n");
  const auto b = ExperimentConfig::parse("; comment\n[m]\ny = 2\n\nx = 1\n");
  const auto c = ExperimentConfig::parse("[m]\nx = 1\ny = 3\n");
  CHECK(a.hash() == b.hash());
  CHECK(a.hash() != c.hash());
  CHECK(a.hash().size() == 16);
  CHECK(a.canonical() == "m.x=1\nm.y=2\n");
  // FNV-1a 64 reference values
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("schema validation") {
  CHECK_ERROR_KIND(validate(ExperimentConfig::parse(""), "spectrum"), ErrorKind::ConfigError);
  auto cfg = ExperimentConfig::parse(kSmallWitten);
  CHECK_NOTHROW(validate(cfg, "spectrum"));
  cfg.set("solver", "hh", "1");
  try {
    validate(cfg, "spectrum");
    FAIL("expected a ConfigError");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("[solver] hh") != std::string::npos);
  }
  CHECK_ERROR_KIND(validate(cfg, "no-such-command"), ErrorKind::ConfigError);
  CHECK(required_sections("evolve") == std::vector<std::string>{"model", "grid", "solver", "evolution"});
}

TEST_CASE("output helpers") {
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(-2) == "-2");
  const auto t = csv_table({"a", "b"}, {{1, 0.5}, {2, 1e-20}}, "00ff");
  CHECK(t == "# config_hash=00ff\na,b\n1,0.5\n2,9.9999999999999995e-21\n");
  Scratch s;
  atomic_write(s.dir / "x.txt", "hello");
  CHECK(slurp(s.dir / "x.txt") == "hello");
  CHECK(std::distance(fs::directory_iterator(s.dir), fs::directory_iterator()) == 1);
  CHECK(complex_json({1, -2}) == Json::array({1.0, -2.0}));
}

TEST_CASE("exit codes") {
  CHECK(exit_code_for(ErrorKind::ConfigError) == 2);
  CHECK(exit_code_for(ErrorKind::InvalidArgument) == 2);
  CHECK(exit_code_for(ErrorKind::IoError) == 2);
  CHECK(exit_code_for(ErrorKind::MemoryCap) == 2);
  CHECK(exit_code_for(ErrorKind::NoConvergence) == 3);
  CHECK(exit_code_for(ErrorKind::NonMorse) == 3);
  CHECK(exit_code_for(ErrorKind::TooFewTransitions) == 3);
}

TEST_CASE("run reports validation failures with exit code 2") {
  Scratch s;
  const auto empty = s.file("empty.cfg", "");
  const auto out = (s.dir / "out").string();
  CHECK(run({"spectrum", empty, out, std::nullopt, 1}) == 2);
  const auto err = read_json(s.dir / "out" / "error.json");
  CHECK(err["error"] == "ConfigError");
  CHECK(err["exit_code"] == 2);
  CHECK(err["message"].get<std::string>().find("missing sections: model, grid, solver") != std::string::npos);
  CHECK(!fs::exists(s.dir / "out" / "metadata.json"));
  CHECK(run({"spectrum", (s.dir / "absent.cfg").string(), out, std::nullopt, 1}) == 2);
}

TEST_CASE("run reports numerical failures with exit code 3") {
  Scratch s;
  const auto cfg = s.file("flat.cfg", "[model]\nfamily = witten\npotential = polynomial(0, 1)\n[analysis]\nlo = -1\nhi = 1\n");
  CHECK(run({"analyze-potential", cfg, (s.dir / "out").string(), std::nullopt, 1}) == 3);
  CHECK(read_json(s.dir / "out" / "error.json")["error"] == "NoConvergence");
}

TEST_CASE("commands are deterministic") {
  Scratch s;
  const auto cfg = s.file("w.cfg", kSmallWitten);
  const auto a = s.dir / "a", b = s.dir / "b";
  for (const auto& out : {a, b}) {
    REQUIRE(run({"analyze-potential", cfg, out.string(), std::nullopt, 1}) == 0);
    REQUIRE(run({"spectrum", cfg, out.string(), std::nullopt, 1}) == 0);
    REQUIRE(run({"sde", cfg, out.string(), std::nullopt, 1}) == 0);
  }
  for (const char* f : {"critical_points.json", "spectrum.csv", "projection.json", "ensemble.bin", "ensemble.json"})
    CHECK(slurp(a / f) == slurp(b / f));
  const auto hash = ExperimentConfig::parse(kSmallWitten).hash();
  const auto csv = slurp(a / "spectrum.csv");
  CHECK(csv.rfind("# config_hash=" + hash + "\n", 0) == 0);
  CHECK(read_json(a / "metadata.json")["config_hash"] == hash);
  CHECK(!fs::exists(a / "error.json"));

  const auto cp = read_json(a / "critical_points.json");
  CHECK(cp.dump().find("\"index\"") != std::string::npos);

  const auto c = s.dir / "c";
  REQUIRE(run({"sde", cfg, c.string(), std::uint64_t{99}, 1}) == 0);
  CHECK(slurp(a / "ensemble.bin") != slurp(c / "ensemble.bin"));
}
