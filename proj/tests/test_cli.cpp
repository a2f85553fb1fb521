#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "rgg/experiments.hpp"

namespace fs = std::filesystem;

namespace {

struct CommandResult {
  int exit_code;
  std::string output;
};

CommandResult run_command(const std::string& cmd) {
  const std::string full = cmd + " 2>&1";
  FILE* pipe = popen(full.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string write_temp(const std::string& name, const std::string& content) {
  const fs::path dir = fs::temp_directory_path() / "rgglab_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream f(p);
  f << content;
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

const std::string kBin = RGGLAB_BIN;

}  // namespace

TEST_CASE("version prints the tool identity") {
  const CommandResult r = run_command(kBin + " version");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("rgglab") != std::string::npos);
}

TEST_CASE("validate: empty text reports the missing experiment") {
  const std::string cfg = write_temp("empty.json", "");
  const CommandResult r = run_command(kBin + " validate " + cfg);
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("experiment") != std::string::npos);
}

TEST_CASE("validate: coupling rejects p above one half, naming p") {
  const std::string cfg = write_temp(
      "badp.json",
      R"({"experiment":"coupling","seed":1,"n":6,"p":0.7,"d":64,"trials":3,"mc_budget":1000})");
  const CommandResult r = run_command(kBin + " validate " + cfg);
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("p") != std::string::npos);
  CHECK(r.output.find("1/2") != std::string::npos);
}

TEST_CASE("validate: a correct config yields an empty report") {
  const std::string cfg = write_temp(
      "ok.json",
      R"({"experiment":"power","seed":3,"n":12,"p":0.2,"d":8,"z":3.0,"trials":200})");
  const CommandResult r = run_command(kBin + " validate " + cfg);
  CHECK(r.exit_code == 0);
  CHECK(r.output == "ok\n");
}

TEST_CASE("run: missing n exits 2 and names n") {
  const std::string cfg = write_temp(
      "missing_n.json",
      R"({"experiment":"power","seed":3,"p":0.2,"d":8,"z":3.0,"trials":200})");
  const CommandResult r = run_command(kBin + " run " + cfg);
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("n missing") != std::string::npos);
}

TEST_CASE("run: tv_curve with n=6 exits 2 citing the size cap") {
  const std::string cfg = write_temp(
      "big_n.json",
      R"({"experiment":"tv_curve","seed":3,"n":6,"p":0.5,"d":10,"trials":1000})");
  const CommandResult r = run_command(kBin + " run " + cfg);
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("n <= 5") != std::string::npos);
}

TEST_CASE("run: identical config twice gives byte-identical outputs") {
  const fs::path out1 = fs::temp_directory_path() / "rgglab_cli_test" / "out1";
  const fs::path out2 = fs::temp_directory_path() / "rgglab_cli_test" / "out2";
  fs::remove_all(out1);
  fs::remove_all(out2);
  auto cfg_text = [&](const fs::path& out) {
    return std::string(R"({"experiment":"tv_curve","seed":11,"n":3,"p":0.5,)") +
           R"("d_grid":[3,50],"trials":20000,"output_path":")" + out.string() + "\"}";
  };
  const std::string c1 = write_temp("det1.json", cfg_text(out1));
  const std::string c2 = write_temp("det2.json", cfg_text(out2));
  CHECK(run_command(kBin + " run " + c1).exit_code == 0);
  CHECK(run_command(kBin + " run --threads 4 " + c2).exit_code == 0);
  const std::string a = slurp((out1 / "tv_curve-11.csv").string());
  const std::string b = slurp((out2 / "tv_curve-11.csv").string());
  CHECK(a == b);
  CHECK(a.find("n,p,d,trials,tv,bound,kl") == 0);
}

TEST_CASE("run: worker count does not change coupling bytes") {
  const fs::path out1 = fs::temp_directory_path() / "rgglab_cli_test" / "cout1";
  const fs::path out2 = fs::temp_directory_path() / "rgglab_cli_test" / "cout2";
  fs::remove_all(out1);
  fs::remove_all(out2);
  auto cfg_text = [&](const fs::path& out) {
    return std::string(R"({"experiment":"coupling","seed":5,"n":5,"p":0.25,)") +
           R"("d":80,"trials":40,"mc_budget":4000,"output_path":")" + out.string() +
           "\"}";
  };
  const std::string c1 = write_temp("cp1.json", cfg_text(out1));
  const std::string c2 = write_temp("cp2.json", cfg_text(out2));
  CHECK(run_command(kBin + " run --threads 1 " + c1).exit_code == 0);
  CHECK(run_command(kBin + " run --threads 8 " + c2).exit_code == 0);
  CHECK(slurp((out1 / "coupling-5.csv").string()) ==
        slurp((out2 / "coupling-5.csv").string()));
  CHECK(slurp((out1 / "coupling-5.json").string()) ==
        slurp((out2 / "coupling-5.json").string()));
}

TEST_CASE("run: power csv carries the contract columns") {
  const fs::path out = fs::temp_directory_path() / "rgglab_cli_test" / "pout";
  fs::remove_all(out);
  const std::string cfg = write_temp(
      "power.json",
      std::string(R"({"experiment":"power","seed":9,"n":12,"p":0.2,"d":8,"z":3.0,)") +
          R"("trials":300,"output_path":")" + out.string() + "\"}");
  const CommandResult r = run_command(kBin + " run " + cfg);
  CHECK(r.exit_code == 0);
  const std::string csv = slurp((out / "power-9.csv").string());
  CHECK(csv.find("n,p,d,z,trials,power,fp") == 0);
}

TEST_CASE("run: every experiment produces its contract header") {
  const fs::path out = fs::temp_directory_path() / "rgglab_cli_test" / "all";
  fs::remove_all(out);
  struct Case {
    std::string name;
    std::string cfg;
    std::string header;
  };
  const std::vector<Case> cases = {
      {"sample",
       R"({"experiment":"sample","seed":1,"sampler":"geo","n":4,"p":0.3,"d":6,"trials":5)",
       "trial,edges"},
      {"qprobe", R"({"experiment":"qprobe","seed":2,"d":16,"p":0.3,"trials":10000)",
       "d,p,trials,q,q_stderr,p_squared"},
      {"diffusion",
       R"({"experiment":"diffusion","seed":3,"d":32,"p":0.2,"particles":500,"steps":2,"z_samples":200)",
       "step,discrepancy,noise_floor,weight_sum"},
      {"anticap",
       R"({"experiment":"anticap","seed":4,"m":6,"p":0.2,"d_grid":[24,48],"trials":20,"mc_samples":100)",
       "d,m,p,trials,paths,mean,mean_stderr,std,q05,q50,q95"},
      {"martingale",
       R"({"experiment":"martingale","seed":5,"k":5,"j":2,"p":0.2,"d":24,"trials":10,"mc_samples":50)",
       "d,k,j,p,traces,paths,mean_Rk,mean_Rk_stderr,std_Rk,std_Rk_stderr"},
  };
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const Case& c = cases[i];
    const std::string cfg = write_temp(
        c.name + ".json", c.cfg + R"(,"output_path":")" + out.string() + "\"}");
    const CommandResult r = run_command(kBin + " run " + cfg);
    CHECK(r.exit_code == 0);
    const std::string csv =
        slurp((out / (c.name + "-" + std::to_string(i + 1) + ".csv")).string());
    CHECK(csv.find(c.header) == 0);
  }
  // The geo sample run also writes canonical serializations.
  const std::string graphs = slurp((out / "sample-1.graphs.txt").string());
  CHECK(graphs.find("4\n") == 0);
}

TEST_CASE("run: exhausted Monte Carlo budget exits 3") {
  const std::string cfg = write_temp(
      "exhaust.json",
      R"({"experiment":"coupling","seed":6,"n":10,"p":0.5,"d":24,"trials":50,)"
      R"("eps":0.05,"mc_budget":40,"min_accept":30})");
  const CommandResult r = run_command(kBin + " run " + cfg);
  CHECK(r.exit_code == 3);
  CHECK(r.output.find("accepted") != std::string::npos);
}

TEST_CASE("library-level validation mirrors the CLI report") {
  const auto issues = rgg::validate_config("{\"experiment\":\"qprobe\",\"seed\":0}");
  bool saw_d = false, saw_p = false, saw_trials = false;
  for (const auto& i : issues) {
    if (i.parameter == "d") saw_d = true;
    if (i.parameter == "p") saw_p = true;
    if (i.parameter == "trials") saw_trials = true;
  }
  CHECK(saw_d);
  CHECK(saw_p);
  CHECK(saw_trials);
}
