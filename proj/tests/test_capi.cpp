#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include <json.hpp>

#include "esig.h"

using nlohmann::json;

namespace {

std::string take(char* s) {
  std::string out(s ? s : "");
  esig_free_string(s);
  return out;
}

}  // namespace

TEST_CASE("version and suites") {
  CHECK(std::string(esig_version()) == "0.1.0");
  char* out = nullptr;
  REQUIRE(esig_suites(&out) == ESIG_OK);
  const auto suites = json::parse(take(out));
  CHECK(suites.size() == 10);
}

TEST_CASE("model lifecycle and evaluations") {
  esig_model* model = nullptr;
  REQUIRE(esig_model_create(R"({"kind":"fbm","hurst":0.75,"horizon":1.0})", &model) == ESIG_OK);
  double v = 0.0;
  CHECK(esig_model_cov_d12(model, 0.0, 1.0, &v) == ESIG_OK);
  CHECK(v == doctest::Approx(0.375));
  CHECK(esig_model_var(model, 0.5, &v) == ESIG_OK);
  CHECK(v == doctest::Approx(std::pow(0.5, 1.5)));
  CHECK(esig_model_inc_cov(model, 0, 1, 0, 1, &v) == ESIG_OK);
  CHECK(v == doctest::Approx(1.0));

  CHECK(esig_model_cov_d12(model, 0.4, 0.4, &v) == ESIG_ERR_DOMAIN);
  CHECK(std::string(esig_last_error()).find("diagonal") != std::string::npos);
  esig_model_free(model);
}

TEST_CASE("invalid model parameters") {
  esig_model* model = nullptr;
  CHECK(esig_model_create(R"({"kind":"fbm","hurst":0.2})", &model) ==
        ESIG_ERR_INVALID_ARGUMENT);
  CHECK(esig_model_create(R"({"kind":"nope"})", &model) == ESIG_ERR_INVALID_ARGUMENT);
  CHECK(esig_model_create("{not json", &model) == ESIG_ERR_BAD_JSON);
}

TEST_CASE("diagram enumeration and scalar") {
  char* out = nullptr;
  REQUIRE(esig_enumerate_pairings(4, 0, &out) == ESIG_OK);
  const auto diagrams = json::parse(take(out));
  CHECK(diagrams.size() == 3);

  esig_model* model = nullptr;
  REQUIRE(esig_model_create(R"({"kind":"fbm","hurst":0.4,"horizon":1.0})", &model) == ESIG_OK);
  double value = 0.0, err = 0.0;
  REQUIRE(esig_diagram_scalar(model, R"({"n":2,"pairs":[[1,2]]})", 0.0, 1.0, nullptr, &value,
                              &err) == ESIG_OK);
  CHECK(value == doctest::Approx(0.5).epsilon(1e-12));
  // Singles are not allowed in the scalar entry point.
  CHECK(esig_diagram_scalar(model, R"({"n":3,"pairs":[[1,2]]})", 0.0, 1.0, nullptr, &value,
                            &err) == ESIG_ERR_INVALID_ARGUMENT);
  esig_model_free(model);
}

TEST_CASE("run compute document") {
  const json cfg{{"subcommand", "compute"},
                 {"model", {{"kind", "bm"}, {"horizon", 1.0}}},
                 {"dim", 1},
                 {"s", 0.0},
                 {"t", 1.0},
                 {"level", 4},
                 {"chaos", 0}};
  char* out = nullptr;
  REQUIRE(esig_run(cfg.dump().c_str(), &out) == ESIG_OK);
  const auto doc = json::parse(take(out));
  CHECK(doc.at("word_values").at("1,1").get<double>() == doctest::Approx(0.5));
  CHECK(doc.at("word_values").at("1,1,1,1").get<double>() == doctest::Approx(0.125));
  CHECK(doc.at("config").at("subcommand") == "compute");
  CHECK(doc.contains("version"));
}

TEST_CASE("run kernel document") {
  const json cfg{{"subcommand", "compute"},
                 {"model", {{"kind", "fbm"}, {"hurst", 0.4}, {"horizon", 1.0}}},
                 {"dim", 1},
                 {"level", 3},
                 {"chaos", 1},
                 {"word", {1, 1, 1}},
                 {"free_times", {0.5}}};
  char* out = nullptr;
  REQUIRE(esig_run(cfg.dump().c_str(), &out) == ESIG_OK);
  const auto doc = json::parse(take(out));
  REQUIRE(doc.at("terms").size() == 3);
  // One of the kernels is the leading consecutive pair, valued u^{2H}/2.
  bool found = false;
  for (const auto& term : doc.at("terms")) {
    if (term.at("diagram").at("pairs") == json::parse("[[1,2]]")) {
      CHECK(term.at("values")[0].at("value").get<double>() ==
            doctest::Approx(0.5 * std::pow(0.5, 0.8)).epsilon(1e-10));
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("run rejects unknown subcommands") {
  char* out = nullptr;
  CHECK(esig_run(R"({"subcommand":"explode"})", &out) == ESIG_ERR_INVALID_ARGUMENT);
  CHECK(esig_run("puree", &out) == ESIG_ERR_BAD_JSON);
}

TEST_CASE("run sample document is seed-reproducible") {
  const json cfg{{"subcommand", "sample"},
                 {"model", {{"kind", "bm"}, {"horizon", 1.0}}},
                 {"dim", 1},
                 {"level", 2},
                 {"grid_cells", 8},
                 {"paths", 500},
                 {"seed", 31}};
  char* out1 = nullptr;
  char* out2 = nullptr;
  REQUIRE(esig_run(cfg.dump().c_str(), &out1) == ESIG_OK);
  REQUIRE(esig_run(cfg.dump().c_str(), &out2) == ESIG_OK);
  const std::string a = take(out1), b = take(out2);
  CHECK(a == b);
}
