#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "swivel/cli/app.hpp"
#include "swivel/cli/classical_oracle.hpp"
#include "swivel/cli/claims.hpp"
#include "swivel/cli/report.hpp"
#include "swivel/cli/sweep.hpp"
#include "swivel/version.hpp"
#include "test_helpers.hpp"

using namespace swivel;
using swivel::testing::diag;

namespace {

struct Result {
  int code = 0;
  std::string out, err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "swivel");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("swivel_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

struct Row {
  double param = 0.0;
  double value = 0.0;
  std::string certified, hash, error;
};

std::vector<Row> parse_csv(const std::string& text) {
  std::vector<Row> rows;
  std::istringstream in(text);
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      CHECK(line == "param,value,certified,optimum_params_hash,error");
      header = true;
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    while (f.size() < 5) f.emplace_back();
    rows.push_back({std::strtod(f[0].c_str(), nullptr), std::strtod(f[1].c_str(), nullptr), f[2], f[3], f[4]});
  }
  return rows;
}

std::string write_instance(const Instance& inst, const std::string& name) {
  InstanceRecord r;
  r.dims = {inst.channel().dim_in(), inst.channel().dim_out()};
  r.labels = {"in", "out"};
  r.rho = inst.rho().matrix();
  r.sigma = inst.sigma().matrix();
  r.kraus = inst.channel().kraus();
  const std::string path = temp_path(name);
  save_instance_file(r, path);
  return path;
}

}  // namespace

TEST_CASE("list-claims names every criterion") {
  const Result r = run_cli({"list-claims"});
  CHECK(r.code == 0);
  for (const char* id : {"thm-monotone", "thm-monotone-tilde", "reduction", "prop-lim-a-1", "non-negativity",
                         "cor-recover", "thm-rel-ent-other", "cmi-suite", "prop-zhang", "appendix-a", "appendix-c",
                         "oracle-equivalence", "combos"}) {
    CHECK(r.out.find(std::string(id) + "\t") != std::string::npos);
    CHECK(cli::has_claim(id));
  }
  CHECK(cli::claim_list().size() == 13);
}

TEST_CASE("gen is deterministic and round-trips") {
  const std::string a = temp_path("gen_a.json"), b = temp_path("gen_b.json");
  REQUIRE(run_cli({"gen", "--dims", "2,2", "--kraus", "2", "--seed", "7", "-o", a}).code == 0);
  REQUIRE(run_cli({"gen", "--dims", "2,2", "--kraus", "2", "--seed", "7", "-o", b}).code == 0);
  CHECK(slurp(a) == slurp(b));
  const InstanceRecord rec = load_instance_file(a);
  CHECK(to_json(rec) == slurp(a));
  CHECK(rec.seed == 7);
  CHECK(rec.kraus.size() == 2);
  CHECK_FALSE(rec.input_digest.empty());
  CHECK(rec.tool_version == std::string(kVersion));
  const Instance inst = to_instance(rec);
  CHECK(inst.channel().dim_in() == 2);

  CHECK(run_cli({"gen", "--dims", "2,2", "--seed", "8"}).out != slurp(a));

  const Result t = run_cli({"gen", "--tripartite", "2,2,2", "--seed", "9"});
  REQUIRE(t.code == 0);
  const InstanceRecord tr = instance_from_json(t.out);
  CHECK(tr.labels == std::vector<std::string>{"A", "B", "C"});
  CHECK(tr.dims == std::vector<int>{2, 2, 2});
  const Instance ti = to_instance(tr);
  CHECK(ti.channel().dim_in() == 8);
  CHECK(ti.channel().dim_out() == 4);

  ::setenv("SWIVEL_SEED", "7", 1);
  CHECK(run_cli({"gen", "--dims", "2,2", "--kraus", "2"}).out == slurp(a));
  ::unsetenv("SWIVEL_SEED");

  CHECK(run_cli({"gen", "--dims", "2,x"}).code == 2);
  CHECK(run_cli({"gen", "--dims", "2,2", "--bipartite", "2,2"}).code == 2);
  CHECK(run_cli({"gen", "--dims", "2,2", "-o", "/nonexistent/dir/x.json"}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST_CASE("sweep on a commuting instance follows the scalar formula") {
  const std::vector<double> p = swivel::testing::random_distribution(3, 1);
  const std::vector<double> q = swivel::testing::random_distribution(3, 2);
  const auto ch = swivel::testing::random_stochastic(2, 3, 3);
  const Instance inst(DensityOperator(diag(p)), PositiveOperator(diag(q)), swivel::testing::classical_channel(ch));
  const std::string path = write_instance(inst, "classical.json");

  const Result r = run_cli({"sweep", "delta_prime", "--instance", path});
  REQUIRE(r.code == 0);
  const std::vector<Row> rows = parse_csv(r.out);
  REQUIRE(rows.size() == 20);
  for (const Row& row : rows) {
    CHECK(std::abs(row.value - oracle::delta_prime(p, q, ch, row.param)) <= 1e-10);
    CHECK(row.error.empty());
  }
  CHECK(r.out.find("# input_digest ") != std::string::npos);
  CHECK(r.out.find(std::string("# swivel ") + std::string(kVersion)) != std::string::npos);
  CHECK(run_cli({"sweep", "delta_prime", "--instance", path}).out == r.out);

  const Result t = run_cli({"sweep", "delta_tilde_prime", "--instance", path, "--grid", "0.5,2,inf"});
  REQUIRE(t.code == 0);
  const std::vector<Row> trows = parse_csv(t.out);
  REQUIRE(trows.size() == 3);
  CHECK(std::isinf(trows[2].param));
  for (const Row& row : trows) CHECK(std::abs(row.value - oracle::delta_tilde_prime(p, q, ch, row.param)) <= 1e-10);

  const Result tq = run_cli({"sweep", "trace_quantity", "--instance", path});
  REQUIRE(tq.code == 0);
  for (const Row& row : parse_csv(tq.out))
    CHECK(std::abs(row.value - oracle::trace_quantity(p, q, ch, row.param)) <= 1e-10);

  CHECK(run_cli({"sweep", "delta_prime", "--instance", path, "--grid", "0.5,1,1.5"}).code == 2);
  CHECK(run_cli({"sweep", "delta_prime", "--instance", path, "--grid", "0.9999995"}).code == 2);
  CHECK(run_cli({"sweep", "nonsense", "--instance", path}).code == 2);
  CHECK(run_cli({"sweep", "delta_prime", "--instance", path, "--budget", "4"}).code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("sweep reduces to Renyi divergences for the trace channel") {
  const Instance inst = cli::trace_channel_instance(5);
  const std::string path = write_instance(inst, "trace.json");
  const double lt = std::log(inst.sigma().op().trace());
  const Result r = run_cli({"sweep", "delta_prime", "--instance", path, "--grid", "0.3:0.9:0.3", "--budget", "2x1024"});
  REQUIRE(r.code == 0);
  const std::vector<Row> rows = parse_csv(r.out);
  REQUIRE(rows.size() == 3);
  for (const Row& row : rows) CHECK(std::abs(row.value - renyi_rel(inst.rho(), inst.sigma(), row.param) - lt) <= 1e-8);
  std::filesystem::remove(path);

  // Generated Tr_A instance through the generator flags.
  const Result g = run_cli({"sweep", "recovery_curves", "--bipartite", "2,2", "--seed", "3", "--grid", "-1,0,1"});
  REQUIRE(g.code == 0);
  const std::vector<Row> c = parse_csv(g.out);
  REQUIRE(c.size() == 3);
  for (const Row& row : c) CHECK(row.certified == "1");
  const Result g2 = run_cli({"sweep", "recovery_curves", "--bipartite", "2,2", "--seed", "3", "--grid", "-1,0,1",
                             "--curve", "d2"});
  REQUIRE(g2.code == 0);
  CHECK(g2.out != g.out);
}

TEST_CASE("sweep over CMI and combo quantities") {
  const Result r = run_cli({"sweep", "cmi_prime", "--tripartite", "2,2,2", "--seed", "4", "--grid", "0.5,2",
                            "--budget", "2x1024"});
  REQUIRE(r.code == 0);
  for (const Row& row : parse_csv(r.out)) CHECK(row.value >= -1e-6);

  const std::string combo = temp_path("combo.json");
  {
    std::ofstream f(combo);
    f << combo_to_json(cmi_combo(2, 2, 2));
  }
  const Result l = run_cli({"sweep", "l_prime", "--tripartite", "2,2,2", "--seed", "4", "--combo", combo, "--grid",
                            "0.5,2", "--budget", "2x1024"});
  REQUIRE(l.code == 0);
  const std::vector<Row> lr = parse_csv(l.out), cr = parse_csv(r.out);
  REQUIRE(lr.size() == cr.size());
  for (std::size_t i = 0; i < lr.size(); ++i) CHECK(std::abs(lr[i].value - cr[i].value) <= 1e-8);
  CHECK(run_cli({"sweep", "l_prime", "--tripartite", "2,2,2", "--seed", "4"}).code == 2);
  std::filesystem::remove(combo);
}

TEST_CASE("verify reports") {
  const Result unknown = run_cli({"verify", "unknown-claim"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("UnknownClaim") != std::string::npos);
  CHECK_THROWS_AS(cli::run_claim("unknown-claim", {}), Error);

  const Result z = run_cli({"verify", "prop-zhang", "--trials", "50", "--seed", "2"});
  CHECK(z.code == 0);
  const nlohmann::json zj = nlohmann::json::parse(z.out);
  CHECK(zj.at("claim_id") == "prop-zhang");
  CHECK(zj.at("trials") == 50);
  CHECK(zj.at("passes") == 50);
  CHECK(zj.at("seeds").size() == 50);
  CHECK(zj.contains("worst_violation"));
  CHECK(zj.contains("tool_version"));
  CHECK(zj.contains("input_digest"));
  CHECK(z.err.rfind("PASS prop-zhang", 0) == 0);

  const Result m = run_cli({"verify", "thm-monotone", "--trials", "50", "--seed", "1", "--jobs", "2"});
  CHECK(m.code == 0);
  CHECK(nlohmann::json::parse(m.out).at("worst_violation").get<double>() <= 1e-5);

  // A negative tolerance on the primary check cannot be met.
  CHECK(run_cli({"verify", "appendix-a", "--trials", "2", "--tolerance", "-1"}).code == 1);
}

TEST_CASE("parallel and serial verification agree") {
  auto strip = [](const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    j.erase("wall_time_s");
    return j.dump();
  };
  const Result s = run_cli({"verify", "thm-rel-ent-other", "--trials", "6", "--seed", "3", "--jobs", "1"});
  const Result p = run_cli({"verify", "thm-rel-ent-other", "--trials", "6", "--seed", "3", "--jobs", "3"});
  REQUIRE(s.code == 0);
  CHECK(strip(s.out) == strip(p.out));

  const std::string out = temp_path("report.json");
  REQUIRE(run_cli({"verify", "appendix-c", "--trials", "3", "--seed", "3", "-o", out}).code == 0);
  CHECK(nlohmann::json::parse(slurp(out)).at("trials") == 3);
  std::filesystem::remove(out);

  ::setenv("SWIVEL_SEED", "3", 1);
  const Result e = run_cli({"verify", "thm-rel-ent-other", "--trials", "6"});
  ::unsetenv("SWIVEL_SEED");
  CHECK(strip(e.out) == strip(s.out));
}

TEST_CASE("report formatting") {
  CHECK(cli::format_double(0.1) == "0.1");
  CHECK(cli::format_double(std::nan("")) == "nan");
  CHECK(cli::format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(std::strtod(cli::format_double(1.0 / 3.0).c_str(), nullptr) == 1.0 / 3.0);
  CHECK(cli::parse_grid("0:0.2:0.1").size() == 3);
  CHECK(std::isinf(cli::parse_grid("inf").at(0)));
  CHECK_THROWS_AS(cli::parse_grid("a,b"), Error);
}
