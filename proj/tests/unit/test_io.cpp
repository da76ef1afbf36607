#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <random>

#include "hamclust/config.hpp"
#include "hamclust/csv.hpp"
#include "hamclust/error.hpp"
#include "hamclust/json_io.hpp"
#include "hamclust/kmeans.hpp"
#include "hamclust/metrics.hpp"
#include "hamclust/preprocess.hpp"
#include "hamclust/run.hpp"
#include "hamclust/synthetic.hpp"
#include "support/oracles.hpp"

using namespace hamclust;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("hamclust_io_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

fs::path write(const std::string& name, const std::string& text) {
  const auto p = scratch(name);
  std::ofstream(p) << text;
  return p;
}

Dataset column(std::initializer_list<double> xs) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(xs.size()), 1);
  Eigen::Index i = 0;
  for (double x : xs) m(i++, 0) = x;
  return Dataset(m);
}

template <class F>
std::string error_text(F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("preprocessing") {
  const auto mm = preprocess(column({0, 5, 10}), Preprocessing::minmax);
  CHECK(mm(0, 0) == 0.0);
  CHECK(mm(1, 0) == 0.5);
  CHECK(mm(2, 0) == 1.0);
  CHECK(preprocess(column({3, 3, 3}), Preprocessing::minmax).points().isZero(0.0));
  CHECK(preprocess(column({3, 3, 3}), Preprocessing::zscore).points().isZero(0.0));

  const auto z = preprocess(column({-1, 1}), Preprocessing::zscore);
  CHECK(z(0, 0) == -1.0);
  CHECK(z(1, 0) == 1.0);

  const auto data = oracle::random_dataset(40, 3, 8, 5.0);
  const auto zs = preprocess(data, Preprocessing::zscore);
  for (Eigen::Index k = 0; k < 3; ++k) {
    const auto c = zs.points().col(k);
    CHECK(std::abs(c.mean()) < 1e-12);
    CHECK(c.squaredNorm() / 40.0 == doctest::Approx(1.0).epsilon(1e-12));
  }

  const auto px = preprocess(column({0, 51, 255}), Preprocessing::pixel255);
  CHECK(px(1, 0) == doctest::Approx(0.2));
  CHECK(px(2, 0) == 1.0);

  Eigen::MatrixXd rows(3, 2);
  rows << 3, 4, 0, 0, -2, 0;
  const auto l2 = preprocess(Dataset(rows), Preprocessing::l2);
  CHECK(l2(0, 0) == doctest::Approx(0.6));
  CHECK(l2(0, 1) == doctest::Approx(0.8));
  CHECK(l2(1, 0) == 0.0);
  CHECK(l2(2, 0) == -1.0);

  CHECK(preprocess(data, Preprocessing::none).points() == data.points());
  CHECK(parse_preprocessing("zscore") == Preprocessing::zscore);
  CHECK_THROWS_AS(parse_preprocessing("whiten"), ConfigError);
}

TEST_CASE("csv loading") {
  const auto plain = load_csv(write("plain.csv", "1,2\n3,4\n5,6\n"), {.header = false});
  CHECK(plain.size() == 3);
  CHECK(plain.dim() == 2);
  CHECK(plain(2, 1) == 6.0);
  CHECK_FALSE(plain.has_labels());

  const auto labeled = load_csv(write("labeled.csv", "a,class,b\n1,0,2\n3,1,4\n\n5,1,6\n"), {.label_column = "class"});
  CHECK(labeled.dim() == 2);
  CHECK(labeled.labels() == std::vector<int>{0, 1, 1});
  CHECK(labeled(1, 1) == 4.0);
  CHECK(labeled.name() == "labeled");

  const auto named = load_csv(write("named.csv", "x,species\n1,virginica\n2,setosa\n3,virginica\n"),
                              {.label_column = "1"});
  CHECK(named.labels() == std::vector<int>{0, 1, 0});

  const auto quoted = load_csv(write("quoted.csv", "\"x, one\",\"y\"\n\"1.5\",2\n3,\"4\"\n"));
  CHECK(quoted(0, 0) == 1.5);
  CHECK(split_csv_record("\"a \"\"b\"\"\",c") == std::vector<std::string>{"a \"b\"", "c"});
  CHECK_THROWS_AS(split_csv_record("\"open,1"), DataError);

  const auto ragged = error_text([] { load_csv(write("ragged.csv", "a,b\n1,2\n3\n"), {}); });
  CHECK(ragged.find(":3") != std::string::npos);
  const auto text = error_text([] { load_csv(write("text.csv", "a,b\n1,2\n3,zz\n"), {}); });
  CHECK(text.find(":3") != std::string::npos);
  CHECK_THROWS_AS(load_csv(write("text2.csv", "a,b\n1,2\n3,zz\n"), {}), DataError);
  CHECK_THROWS_AS(load_csv(scratch("missing.csv"), {}), DataError);
  CHECK_THROWS_AS(load_csv(write("nolabel.csv", "a,b\n1,2\n3,4\n"), {.label_column = "class"}), DataError);

  auto data = oracle::random_dataset(9, 3, 2).with_points(oracle::random_dataset(9, 3, 2).points() / 3.0);
  data = Dataset(data.points(), std::vector<int>{0, 1, 2, 0, 1, 2, 0, 1, 2});
  save_csv(data, scratch("round.csv"));
  const auto back = load_csv(scratch("round.csv"), {.label_column = "class"});
  CHECK(back.points() == data.points());
  CHECK(back.labels() == data.labels());
}

TEST_CASE("json text form") {
  nlohmann::json doc = {{"zeta", 1}, {"alpha", {0.1, 1.0 / 3.0, -0.0}}, {"mid", nlohmann::json::object()}};
  CHECK(dump_json(doc) ==
        "{\n  \"alpha\": [\n    0.10000000000000001,\n    0.33333333333333331,\n    0\n  ],\n  \"mid\": {},\n"
        "  \"zeta\": 1\n}\n");
  CHECK_THROWS_AS(dump_json(nlohmann::json(std::nan(""))), DataError);
  CHECK_THROWS_AS(read_json_file(write("broken.json", "{\"a\": ")), DataError);
}

TEST_CASE("QUBO documents") {
  PolynomialBuilder b(2);
  b.add({0, 1}, 1.0);
  const auto form = spin_to_binary(b.build());
  CHECK(dump_json(qubo_to_json(form)) ==
        "{\n  \"linear\": [\n    -2,\n    -2\n  ],\n  \"num_vars\": 2,\n  \"offset\": 1,\n  \"quadratic\": [\n"
        "    {\n      \"c\": 4,\n      \"i\": 0,\n      \"j\": 1\n    }\n  ]\n}\n");

  CHECK(dump_json(qubo_to_json(BinaryQuadraticForm())) ==
        "{\n  \"linear\": [],\n  \"num_vars\": 0,\n  \"offset\": 0,\n  \"quadratic\": []\n}\n");
  CHECK(qubo_from_json(qubo_to_json(BinaryQuadraticForm())) == BinaryQuadraticForm());

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto poly = oracle::random_polynomial(7, 20, 2, seed);
    const auto f = spin_to_binary(poly);
    const auto path = scratch("q" + std::to_string(seed) + ".json");
    export_qubo(f, path);
    CHECK(load_qubo(path) == f);
  }

  CHECK_THROWS_AS(qubo_from_json({{"num_vars", 1}}), DataError);
  CHECK_THROWS_AS(qubo_from_json(nlohmann::json::parse(
                      R"({"num_vars": 2, "offset": 0, "linear": [0, 0], "quadratic": [{"i": 1, "j": 0, "c": 1}]})")),
                  DataError);
}

TEST_CASE("constraint documents") {
  const auto doc = nlohmann::json::parse(R"({
    "labels": [[0, 1], {"index": 3, "spin": -1}],
    "label_lambda": 2.5,
    "cardinality": {"C": 0, "lambda": 4},
    "links": [{"i": 1, "j": 2, "q": 1}, {"i": 0, "j": 3, "q": -1}]
  })");
  const auto cs = constraints_from_json(doc, 4);
  CHECK(cs.labels() == std::vector<Label>{{0, 1}, {3, -1}});
  CHECK(*cs.label_lambda() == 2.5);
  CHECK(cs.cardinality()->target == 0);
  CHECK(cs.links().size() == 2);
  CHECK_FALSE(cs.link_lambda());
  CHECK(constraints_from_json(constraints_to_json(cs), 4) == cs);

  CHECK_THROWS_AS(constraints_from_json(nlohmann::json::parse(R"({"lables": []})"), 4), DataError);
  CHECK_THROWS_AS(constraints_from_json(nlohmann::json::parse(R"({"cardinality": {"C": 1, "lambda": 1}})"), 4),
                  SolverError);
  CHECK_THROWS_AS(constraints_from_json(nlohmann::json::parse(R"({"cardinality": {"C": 0}})"), 4), DataError);
  CHECK_THROWS_AS(constraints_from_json(nlohmann::json::parse(R"({"links": [{"i": 0, "j": 9, "q": 1}]})"), 4),
                  DataError);
}

TEST_CASE("run config text form") {
  const RunConfig defaults;
  CHECK(serialize(parse_run_config(serialize(defaults))) == serialize(defaults));

  const std::string text =
      "# comment\nprotocol = sa\n data=iris.csv   \nobjectives = combined, inter\nseed = 7 # trailing\n"
      "grid = 0.1,0.25\nbeta_final = 12.5\nexclude_label = 0\ngaussian_means = 0,0;3,1\n";
  const auto c = parse_run_config(text);
  CHECK(c.protocol == Protocol::sa);
  CHECK(c.data == "iris.csv");
  CHECK(c.objectives == std::vector<ObjectiveKind>{ObjectiveKind::combined, ObjectiveKind::inter});
  CHECK(c.seed == 7);
  CHECK(c.grid == std::vector<double>{0.1, 0.25});
  CHECK(c.solver.schedule.beta_final == 12.5);
  CHECK(*c.exclude_label == 0);
  CHECK(c.gaussian.means[1](0) == 3.0);
  const auto once = serialize(c);
  CHECK(serialize(parse_run_config(once)) == once);
  CHECK(parse_run_config("objectives = all\n").objectives.size() == 5);

  CHECK(error_text([] { parse_run_config("seed = 1\nbogus = 2\n"); }).find("line 2") != std::string::npos);
  CHECK_THROWS_AS(parse_run_config("seed = 1\nseed = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("seed = -1\n"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("sweeps\n"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("objectives = combined,combined\n"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("protocol = qa\n"), ConfigError);

  RunConfig both;
  both.data = "x.csv";
  both.synthetic = "gaussian";
  CHECK_THROWS_AS(validate(both), ConfigError);
  CHECK_THROWS_AS(validate(RunConfig{}), ConfigError);
}

TEST_CASE("thread count resolution") {
  RunConfig c;
  ::unsetenv("CLUSTER_THREADS");
  CHECK(resolve_threads(c) == 1);
  ::setenv("CLUSTER_THREADS", "3", 1);
  CHECK(resolve_threads(c) == 3);
  c.threads = 2;
  CHECK(resolve_threads(c) == 2);
  c.threads = 0;
  ::setenv("CLUSTER_THREADS", "many", 1);
  CHECK_THROWS_AS(resolve_threads(c), ConfigError);
  ::unsetenv("CLUSTER_THREADS");
}

TEST_CASE("gaussian generator") {
  const auto a = generate_gaussian(fig8_like_gaussian(4));
  const auto b = generate_gaussian(fig8_like_gaussian(4));
  CHECK(a.points() == b.points());
  CHECK(a.size() == 150);
  CHECK(a.labels()[74] == 0);
  CHECK(a.labels()[75] == 1);
  CHECK(generate_gaussian(fig8_like_gaussian(5)).points() != a.points());

  GaussianSpec still;
  still.means = {Eigen::Vector3d(1, 2, 3), Eigen::Vector3d(-1, 0, 0)};
  still.covariances = {Eigen::Matrix3d::Zero(), Eigen::Matrix3d::Zero()};
  still.counts = {4, 3};
  const auto s = generate_gaussian(still);
  for (std::size_t i = 0; i < 4; ++i) CHECK(s.point(i) == Eigen::RowVector3d(1, 2, 3));
  for (std::size_t i = 4; i < 7; ++i) CHECK(s.point(i) == Eigen::RowVector3d(-1, 0, 0));

  GaussianSpec big;
  Eigen::Matrix2d cov;
  cov << 2.0, 0.6, 0.6, 0.5;
  big.means = {Eigen::Vector2d(1.0, -2.0)};
  big.covariances = {cov};
  big.counts = {40000};
  const auto g = generate_gaussian(big);
  const Eigen::RowVector2d mean = g.points().colwise().mean();
  const Eigen::MatrixXd centered = g.points().rowwise() - mean;
  const Eigen::Matrix2d sample = centered.transpose() * centered / 39999.0;
  CHECK((mean - Eigen::RowVector2d(1.0, -2.0)).cwiseAbs().maxCoeff() < 0.03);
  CHECK((sample - cov).cwiseAbs().maxCoeff() < 0.05);

  GaussianSpec bad = big;
  bad.covariances[0](0, 1) = 5.0;
  CHECK_THROWS_AS(generate_gaussian(bad), ConfigError);
  bad.covariances[0] << 1.0, 2.0, 2.0, 1.0;
  CHECK_THROWS_AS(generate_gaussian(bad), ConfigError);
  bad = big;
  bad.counts = {0};
  CHECK_THROWS_AS(generate_gaussian(bad), ConfigError);
  bad = big;
  bad.counts = {1, 2};
  CHECK_THROWS_AS(generate_gaussian(bad), ConfigError);
}

TEST_CASE("default gaussian overlap leaves k-means in its calibrated band") {
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto data = generate_gaussian(fig8_like_gaussian(seed));
    KMeansOptions o;
    o.seed = seed;
    total += rand_index(data.labels(), kmeans(data, o).labels);
  }
  CHECK(total / 20.0 >= 0.65);
  CHECK(total / 20.0 <= 0.80);
}

TEST_CASE("runs are reproducible and carry the result schema") {
  RunConfig c;
  c.synthetic = "gaussian";
  c.gaussian.counts = {12, 12};
  c.objectives = {ObjectiveKind::combined, ObjectiveKind::intra_star};
  c.seed = 11;
  c.solver.schedule.sweeps = 300;
  c.solver.schedule.restarts = 3;
  const auto first = execute(c);
  c.threads = 3;
  const auto second = execute(c);
  CHECK(dump_json(first.results) == dump_json(second.results));
  CHECK(first.tables == second.tables);
  CHECK(first.results["schema_version"] == 1);
  CHECK(first.results["protocol"] == "single");
  CHECK(first.results["methods"][0]["metrics"].contains("rand_index"));
  CHECK(first.results["methods"][0]["metrics"].contains("silhouette"));
  CHECK(first.results["methods"][2]["method"] == "kmeans");

  c.objectives = {ObjectiveKind::combined};
  c.constraints = write("must.json", R"({"links": [{"i": 0, "j": 23, "q": 1}], "labels": [[5, -1]]})").string();
  const auto constrained = execute(c);
  CHECK(constrained.results["methods"][0]["constraints_satisfied"] == true);
  const auto& labels = constrained.results["methods"][0]["labels"];
  CHECK(labels[0] == labels[23]);

  c.constraints = write("odd.json", R"({"cardinality": {"C": 1, "lambda": 1}})").string();
  CHECK_THROWS_AS(execute(c), SolverError);
  c.constraints.clear();

  c.protocol = Protocol::kcluster;
  c.k = 3;
  const auto tree = execute(c);
  CHECK(tree.results["methods"][0]["nodes"].size() == 5);
  CHECK(dump_json(execute(c).results) == dump_json(tree.results));

  c.protocol = Protocol::constraint_sweep;
  c.grid = {0.0, 0.5};
  c.trials = 2;
  const auto sweep = execute(c);
  CHECK(sweep.results["sweeps"][0]["points"].size() == 2);
  CHECK(sweep.tables[0].first == "sweep.csv");

  c.protocol = Protocol::exact;
  c.trials = 3;
  c.subsample = 8;
  const auto exact = execute(c);
  CHECK(exact.results["methods"].size() == 2);
  CHECK(exact.report.find("RI") != std::string::npos);

  const auto dir = scratch("run_out");
  write_outputs(exact, dir, {{"started_at", "now"}});
  CHECK(fs::exists(dir / "results.json"));
  CHECK(fs::exists(dir / "metadata.json"));
  CHECK(fs::exists(dir / "trials.csv"));
  CHECK(read_json_file(dir / "results.json") == exact.results);
}
