#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "hamclust/json_io.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::temp_directory_path() / ("hamclust_cli_" + std::to_string(::getpid()));

struct Outcome {
  int code;
  std::string out;
};

Outcome cluster(const std::string& args) {
  fs::create_directories(kWork);
  const std::string cmd = "cd '" + kWork.string() + "' && '" CLUSTER_BINARY "' " + args + " 2>&1";
  std::FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) out += buf;
  const int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void put(const std::string& name, const std::string& text) {
  fs::create_directories(kWork);
  std::ofstream(kWork / name) << text;
}

const std::string kIris = HAMCLUST_DATA_DIR "/iris.csv";

}  // namespace

TEST_CASE("sa writes a result document with the clustering scores") {
  const auto r = cluster("sa --data " + kIris + " --objective combined --seed 7 --output sa7");
  REQUIRE(r.code == 0);
  const auto doc = hamclust::read_json_file(kWork / "sa7" / "results.json");
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["protocol"] == "sa");
  CHECK(doc["config"]["seed"] == "7");
  const auto& m = doc["methods"][0]["metrics"];
  CHECK(m.contains("rand_index"));
  CHECK(m.contains("silhouette"));
  CHECK(fs::exists(kWork / "sa7" / "summary.csv"));
  CHECK(fs::exists(kWork / "sa7" / "heatmap.csv"));
  CHECK(fs::exists(kWork / "sa7" / "metadata.json"));

  const auto again = cluster("sa --data " + kIris + " --objective combined --seed 7 --output sa7b --threads 2");
  REQUIRE(again.code == 0);
  CHECK(slurp(kWork / "sa7" / "results.json") == slurp(kWork / "sa7b" / "results.json"));
}

TEST_CASE("export reports auxiliaries for the quartic objective") {
  put("tiny.csv", "a,b\n0,1\n1,2\n3,1\n5,5\n4,0\n");
  const auto r = cluster("export --objective inter --data tiny.csv --label-column '' --output ex");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("auxiliary") != std::string::npos);
  const auto aux = hamclust::read_json_file(kWork / "ex" / "qubo.aux.json");
  CHECK(aux["num_auxiliary"].get<int>() > 0);
  const auto form = hamclust::load_qubo(kWork / "ex" / "qubo.json");
  CHECK(form.num_vars() == 5 + aux["num_auxiliary"].get<std::size_t>());

  const auto quad = cluster("export --objective combined --data tiny.csv --label-column '' --qubo c/q.json");
  REQUIRE(quad.code == 0);
  CHECK(hamclust::read_json_file(kWork / "c" / "q.aux.json")["num_auxiliary"] == 0);
  CHECK(cluster("export --data tiny.csv --label-column ''").code == 2);
}

TEST_CASE("exact prints the metric-by-method table") {
  const auto r = cluster("exact --data " + kIris + " --exclude-label 0 --preprocessing l2 --subsample 10 --trials 4 "
                         "--output ex4");
  REQUIRE(r.code == 0);
  for (const char* row : {"| RI |", "| SS |", "| Dist Centroid |", "| Intra |", "| Inter |"}) {
    CHECK(r.out.find(row) != std::string::npos);
  }
  CHECK(r.out.find("intra-star") != std::string::npos);
  CHECK(r.out.find(" ± ") != std::string::npos);
  const auto doc = hamclust::read_json_file(kWork / "ex4" / "results.json");
  CHECK(doc["trials"].size() == 24);
}

TEST_CASE("flags override the config file") {
  put("run.cfg", "protocol = single\nseed = 1\nobjectives = combined\nkmeans = false\nsynthetic = gaussian\n"
                 "gaussian_counts = 10,10\n");
  REQUIRE(cluster("run -c run.cfg --seed 9 --output ov").code == 0);
  const auto doc = hamclust::read_json_file(kWork / "ov" / "results.json");
  CHECK(doc["config"]["seed"] == "9");
  CHECK(doc["dataset"]["num_points"] == 20);
  CHECK(doc["methods"].size() == 1);

  CHECK(cluster("run -c run.cfg --protocol kcluster --set k=3 --output ov3").code == 0);
  CHECK(hamclust::read_json_file(kWork / "ov3" / "results.json")["protocol"] == "kcluster");
  CHECK(cluster("sa -c run.cfg").code == 2);
}

TEST_CASE("exit codes separate config, data and solver failures") {
  CHECK(cluster("sa --data " + kIris + " --objective bogus").code == 2);
  CHECK(cluster("sa --data " + kIris + " --synthetic gaussian").code == 2);
  CHECK(cluster("sa").code == 2);
  CHECK(cluster("frobnicate").code == 2);
  CHECK(cluster("sa --data missing.csv").code == 3);
  put("ragged.csv", "a,b\n1,2\n3\n");
  const auto ragged = cluster("sa --data ragged.csv --label-column ''");
  CHECK(ragged.code == 3);
  CHECK(ragged.out.find(":3") != std::string::npos);
  put("odd.json", R"({"cardinality": {"C": 1, "lambda": 1}})");
  CHECK(cluster("run --synthetic gaussian --counts 5,5 --objective combined --constraints odd.json").code == 4);
  CHECK(cluster("--help").code == 0);
}

TEST_CASE("synth writes a labeled CSV") {
  REQUIRE(cluster("synth --seed 3 --counts 4,6 --csv g.csv").code == 0);
  const auto text = slurp(kWork / "g.csv");
  CHECK(text.rfind("x0,x1,class\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 11);
}
