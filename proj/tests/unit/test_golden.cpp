// Runs every tests/golden/*.json through the CLI and checks the listed JSON
// pointers. "{golden}" in an argument expands to the golden directory.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "angulab/cli/app.hpp"
#include "angulab/relations.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kGoldenDir = ANGULAB_GOLDEN_DIR;

std::vector<fs::path> golden_files() {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(kGoldenDir)) {
    if (e.path().extension() == ".json") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

json run_golden(const json& spec) {
  std::vector<std::string> args{"angulab"};
  for (std::string a : spec["args"]) {
    const auto pos = a.find("{golden}");
    if (pos != std::string::npos) a.replace(pos, 8, kGoldenDir.string());
    args.push_back(a);
  }
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = angulab::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  INFO(err.str());
  REQUIRE(code == 0);
  return json::parse(out.str());
}

}  // namespace

TEST_CASE("golden reports") {
  const auto files = golden_files();
  REQUIRE(!files.empty());
  for (const auto& path : files) {
    SUBCASE(path.filename().string().c_str()) {
      std::ifstream in(path);
      const json spec = json::parse(in);
      REQUIRE(spec.contains("basis"));
      const json doc = run_golden(spec);
      CHECK(doc["schema_version"] == 1);
      for (const auto& e : spec["expect"]) {
        const json::json_pointer ptr(e["pointer"].get<std::string>());
        INFO(path.filename().string(), " ", ptr.to_string());
        REQUIRE(doc.contains(ptr));
        if (e.contains("equals")) {
          CHECK(doc[ptr] == e["equals"]);
        } else {
          const double got = doc[ptr].get<double>();
          CHECK(std::abs(got - e["value"].get<double>()) <= e["tol"].get<double>());
        }
      }
    }
  }
}

TEST_CASE("every registry relation has a golden file") {
  std::set<std::string> covered;
  for (const auto& path : golden_files()) {
    std::ifstream in(path);
    const json spec = json::parse(in);
    const auto& args = spec["args"];
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
      if (args[i] != "--relations") continue;
      std::stringstream list(args[i + 1].get<std::string>());
      for (std::string name; std::getline(list, name, ',');) covered.insert(name);
    }
  }
  for (const auto& name : angulab::relations::registry()) {
    INFO(name);
    CHECK(covered.count(name) == 1);
  }
}
